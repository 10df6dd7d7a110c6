//! `blcrack`: keys, ciphertexts, the square-code attack and dimension tables
//! from the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{ArgAction, Args, Parser, Subcommand};

use blcrack::attack::{attack_decrypt, classify_within, probe, recover_l, AttackOptions};
use blcrack::experiment::{dim_table, ExperimentConfig};
use blcrack::io;
use blcrack::rng::{stream_rng, streams};
use blcrack::scheme::{keygen, BlParams, Preset};

#[derive(Parser)]
#[command(name = "blcrack", version, about = "Bogdanov-Lee scheme and square-code key recovery")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a key pair.
    Keygen(KeygenArgs),
    /// Encrypt an integer message under a public key.
    Encrypt {
        #[arg(long)]
        public: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        message: i64,
        /// Noise rate; defaults to the key's eta.
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decrypt with the secret key; prints the plaintext.
    Decrypt {
        #[arg(long)]
        secret: PathBuf,
        #[arg(long)]
        ct: PathBuf,
    },
    /// Key recovery and secret-free decryption.
    #[command(subcommand)]
    Attack(AttackCmd),
    /// Report dim <C_I^2> for a position set and per-position verdicts.
    Distinguish {
        #[arg(long)]
        public: PathBuf,
        /// Comma-separated 1-based positions.
        #[arg(long, value_delimiter = ',', required = true)]
        positions: Vec<usize>,
    },
    /// Seeded experiments.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
}

#[derive(Args)]
struct KeygenArgs {
    #[arg(long, value_parser = parse_preset, required_unless_present_all = ["q", "n", "k", "ell"])]
    preset: Option<Preset>,
    #[arg(long, conflicts_with = "preset")]
    q: Option<u64>,
    #[arg(long, conflicts_with = "preset")]
    n: Option<usize>,
    #[arg(long, conflicts_with = "preset")]
    k: Option<usize>,
    #[arg(long, conflicts_with = "preset")]
    ell: Option<usize>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out_secret: PathBuf,
    #[arg(long)]
    out_public: PathBuf,
}

#[derive(Subcommand)]
enum AttackCmd {
    /// Recover the secret set L from a public key; writes a transcript.
    RecoverL {
        #[arg(long)]
        public: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = true, action = ArgAction::Set)]
        ell_known: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decrypt using only the public key and a recovered L.
    Decrypt {
        #[arg(long)]
        public: PathBuf,
        /// Transcript from `recover-l` or a `{"L": [...]}` file.
        #[arg(long)]
        l: PathBuf,
        #[arg(long)]
        ct: PathBuf,
    },
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// CSV of measured vs predicted square-code dimensions.
    DimTable {
        #[arg(long, value_parser = parse_preset)]
        preset: Preset,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse()
}

fn seed_or_entropy(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::random::<u64>();
        eprintln!("seed: {s}");
        s
    })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn load<T, E: std::error::Error + Send + Sync + 'static>(
    path: &Path,
    parse: impl FnOnce(&str) -> Result<T, E>,
) -> Result<T> {
    parse(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Keygen(a) => {
            let mut params = match a.preset {
                Some(p) => p.params(),
                None => BlParams::new(a.q.unwrap(), a.n.unwrap(), a.k.unwrap(), a.ell.unwrap()),
            };
            if let Some(eta) = a.eta {
                params = params.with_eta(eta);
            }
            let seed = seed_or_entropy(a.seed);
            let (sk, pk) = keygen(&params, &mut stream_rng(seed, streams::KEYGEN))?;
            write(&a.out_secret, &io::secret_key_to_json(&sk))?;
            write(&a.out_public, &io::public_key_to_json(&pk))?;
        }
        Command::Encrypt { public, message, eta, seed, out } => {
            let pk = load(&public, io::public_key_from_json)?;
            let eta = eta.unwrap_or(pk.params.eta);
            if !(0.0..1.0).contains(&eta) {
                bail!("noise rate must lie in [0, 1), got {eta}");
            }
            let seed = seed_or_entropy(seed);
            let m = pk.field().elem_i64(message);
            let ct = pk.encrypt_with_rate(m, eta, &mut stream_rng(seed, streams::ENCRYPT));
            write(&out, &io::ciphertext_to_json(&ct))?;
        }
        Command::Decrypt { secret, ct } => {
            let sk = load(&secret, io::secret_key_from_json)?;
            let ct = load(&ct, io::ciphertext_from_json)?;
            println!("{}", sk.decrypt(&ct)?);
        }
        Command::Attack(AttackCmd::RecoverL { public, seed, ell_known, out }) => {
            let pk = load(&public, io::public_key_from_json)?;
            let seed = seed_or_entropy(seed);
            let opts = AttackOptions { ell_known, ..AttackOptions::default() };
            let t = recover_l(&pk, &mut stream_rng(seed, streams::ATTACK), opts);
            write(&out, &io::transcript_to_json(&t))?;
            match t.status {
                blcrack::attack::AttackStatus::Success => {
                    let l: Vec<String> = t.recovered_l.iter().map(|p| (p + 1).to_string()).collect();
                    println!("L = {{{}}} ({} resamples, {} probes)", l.join(","), t.resamples, t.probes.len());
                }
                blcrack::attack::AttackStatus::Failed(why) => bail!("attack failed: {why}"),
            }
        }
        Command::Attack(AttackCmd::Decrypt { public, l, ct }) => {
            let pk = load(&public, io::public_key_from_json)?;
            let n = pk.n();
            let l = load(&l, |s| io::positions_from_json(s, Some(n)))?;
            let ct = load(&ct, io::ciphertext_from_json)?;
            if ct.len() != n {
                bail!("ciphertext has length {}, public key has n = {n}", ct.len());
            }
            println!("{}", attack_decrypt(&pk, &l, &ct)?);
        }
        Command::Distinguish { public, positions } => {
            let pk = load(&public, io::public_key_from_json)?;
            if let Some(&p) = positions.iter().find(|&&p| p == 0 || p > pk.n()) {
                bail!("position {p} outside 1..={}", pk.n());
            }
            let zero_based: Vec<usize> = positions.iter().map(|p| p - 1).collect();
            let base = probe(&pk, &zero_based)?;
            println!(
                "|I| = {}  d_I = {}  2k-1 = {}  overlap = {}",
                base.size(),
                base.dim,
                2 * pk.k() - 1,
                base.overlap
            );
            let c = classify_within(&pk, &zero_based, Some(pk.params.ell))
                .map_err(|e| anyhow!("no per-position verdicts: {e}"))?;
            for (&p, r) in c.base.positions.iter().zip(&c.removals) {
                let verdict = if c.in_l.contains(&p) { "in_L" } else { "not_in_L" };
                println!("{} {verdict} d={}", p + 1, r.dim);
            }
        }
        Command::Experiment(ExperimentCmd::DimTable { preset, trials, seed, out }) => {
            let seed = seed_or_entropy(seed);
            let cfg = ExperimentConfig { params: preset.params(), trials: trials as usize, seed };
            write(&out, &dim_table(&cfg)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
