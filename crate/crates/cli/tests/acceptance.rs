//! Acceptance suite. Runs every criterion in order and prints one
//! `PASS`/`FAIL` line each; exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use blcrack::attack::oracle::{oracle_lemma1_generators, oracle_lemma2_relations, prop5_report};
use blcrack::attack::{attack_decrypt, classify_within, recover_l, restricted_square_dim, AttackOptions};
use blcrack::experiment::{dim_table, ExperimentConfig};
use blcrack::io;
use blcrack::rng::{indexed_rng, stream_rng, WorkbenchRng};
use blcrack::scheme::{keygen, BlParams, Preset, PublicKey, SecretKey};
use blcrack::{Field, GrsSpec, LinearCode};
use rand::seq::index::sample;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn FnOnce() -> Outcome + 'a>);

fn rng(criterion: u64, i: usize) -> WorkbenchRng {
    indexed_rng(0xACCE_9700 + criterion, 0, i as u64)
}

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// `I` with exactly `j` positions from `L` and `size - j` from outside.
fn plant(sk: &SecretKey, j: usize, size: usize, rng: &mut WorkbenchRng) -> Vec<usize> {
    let mask = sk.in_l_mask();
    let outside: Vec<usize> = (0..sk.n()).filter(|&i| !mask[i]).collect();
    let mut pos: Vec<usize> = sample(rng, sk.l.len(), j).into_iter().map(|i| sk.l[i]).collect();
    pos.extend(sample(rng, outside.len(), size - j).into_iter().map(|i| outside[i]));
    pos.sort_unstable();
    pos
}

fn c1_grs_square() -> Outcome {
    let start = Instant::now();
    let mut ok = 0;
    for i in 0..200 {
        let mut r = rng(1, i);
        let f = Field::new(if i % 2 == 0 { 257 } else { 65537 }).unwrap();
        let n: usize = r.gen_range(2..=120);
        let k = r.gen_range(1..=n.div_ceil(2));
        let code = GrsSpec::random(f, n, k, &mut r).unwrap().generator().unwrap();
        ok += usize::from(code.square_dim() == 2 * k - 1);
    }
    let t = start.elapsed();
    check(ok == 200 && t < Duration::from_secs(10), format!("{ok}/200 exact, {:.2}s (limit 10s)", t.as_secs_f64()))
}

fn c2_dual_square() -> Outcome {
    let mut ok = 0;
    for i in 0..100 {
        let mut r = rng(2, i);
        let f = Field::new(if i % 2 == 0 { 257 } else { 65537 }).unwrap();
        let n = r.gen_range(4..=120);
        let k = r.gen_range(n / 2 + 1..n);
        let code = GrsSpec::random(f, n, k, &mut r).unwrap().generator().unwrap();
        ok += usize::from(code.dual().square_dim() == 2 * (n - k) - 1);
    }
    check(ok == 100, format!("{ok}/100 exact"))
}

fn c3_random_control() -> Outcome {
    let f = Field::new(1009).unwrap();
    let mut ok = 0;
    for i in 0..100 {
        let k = i % 9 + 1;
        let code = LinearCode::random(f, k, 100, &mut rng(3, i));
        ok += usize::from(code.square_dim() == (k * (k + 1) / 2).min(100));
    }
    check(ok >= 95, format!("{ok}/100 match min(k(k+1)/2, n) (need >= 95)"))
}

fn c4_dimension_formula() -> Outcome {
    let mut parts = Vec::new();
    let mut all = true;
    for preset in Preset::ALL {
        let params = preset.params();
        let (k, ell) = (params.k, params.ell);
        let mut ok = 0;
        for i in 0..100 {
            let mut r = rng(4, i + 1000 * preset as usize);
            let (sk, pk) = keygen(&params, &mut r).unwrap();
            let j = r.gen_range(0..ell);
            let outside = params.n - 3 * ell;
            let size = r.gen_range(2 * k + j..=(3 * k).min(outside + j));
            let pos = plant(&sk, j, size, &mut r);
            ok += usize::from(restricted_square_dim(&pk, &pos).unwrap() == 2 * k - 1 + j);
        }
        all &= ok == 100;
        parts.push(format!("{} {ok}/100", preset.name()));
    }
    check(all, parts.join(", "))
}

fn c5_removal_law() -> Outcome {
    let params = Preset::Medium.params();
    let (k, ell) = (params.k, params.ell);
    let (mut probes, mut errors) = (0, 0);
    for i in 0..50 {
        let mut r = rng(5, i);
        let (sk, pk) = keygen(&params, &mut r).unwrap();
        let j = r.gen_range(0..ell);
        let pos = plant(&sk, j, 2 * k + ell, &mut r);
        let mask = sk.in_l_mask();
        match classify_within(&pk, &pos, Some(ell)) {
            Ok(c) => {
                probes += c.removals.len();
                errors += c.in_l.iter().filter(|&&p| !mask[p]).count();
                errors += c.not_in_l.iter().filter(|&&p| mask[p]).count();
            }
            Err(_) => errors += pos.len(),
        }
    }
    check(errors == 0, format!("{probes} removal probes on 50 keys, {errors} misclassified"))
}

struct Recovered {
    sk: SecretKey,
    pk: PublicKey,
    l: Option<Vec<usize>>,
}

fn run_recovery(preset: Preset, seeds: usize) -> (Vec<Recovered>, Duration) {
    let params = preset.params();
    let mut out = Vec::new();
    let mut slowest = Duration::ZERO;
    for s in 0..seeds {
        let (sk, pk) = keygen(&params, &mut stream_rng(s as u64, 1)).unwrap();
        let start = Instant::now();
        let t = recover_l(&pk, &mut stream_rng(s as u64, 3), AttackOptions::default());
        slowest = slowest.max(start.elapsed());
        let l = t.succeeded().then_some(t.recovered_l);
        out.push(Recovered { sk, pk, l });
    }
    (out, slowest)
}

fn c6_key_recovery(keys: &mut Vec<Recovered>) -> Outcome {
    let mut parts = Vec::new();
    let mut all = true;
    for (preset, seeds) in [(Preset::Small, 50), (Preset::Medium, 50), (Preset::Large, 10)] {
        let (rec, slowest) = run_recovery(preset, seeds);
        let ok = rec.iter().filter(|r| r.l.as_ref() == Some(&r.sk.l)).count();
        all &= ok == seeds;
        if preset == Preset::Large {
            all &= slowest < Duration::from_secs(300);
            parts.push(format!("large {ok}/{seeds} (slowest {:.1}s, limit 300s)", slowest.as_secs_f64()));
        } else {
            parts.push(format!("{} {ok}/{seeds}", preset.name()));
        }
        keys.extend(rec);
    }
    check(all, parts.join(", "))
}

fn c7_message_recovery(keys: &[Recovered]) -> Outcome {
    let (mut total, mut ok) = (0, 0);
    for (i, key) in keys.iter().enumerate() {
        let Some(l) = &key.l else { continue };
        let f = key.pk.field();
        let mut r = rng(7, i);
        for _ in 0..100 {
            let m = f.random(&mut r);
            let ct = key.pk.encrypt_with_rate(m, 0.0, &mut r);
            total += 1;
            let a = attack_decrypt(&key.pk, l, &ct).ok();
            ok += usize::from(a == Some(m) && key.sk.decrypt(&ct).ok() == a);
        }
    }
    check(total == 100 * keys.len() && ok == total, format!("{ok}/{total} ciphertexts over {} keys", keys.len()))
}

fn c8_honest_correctness() -> Outcome {
    let params = Preset::Large.params();
    let (sk, pk) = keygen(&params, &mut rng(8, 0)).unwrap();
    let f = pk.field();
    let mut r = rng(8, 1);
    let exact = (0..1000)
        .filter(|_| {
            let m = f.random(&mut r);
            sk.decrypt(&pk.encrypt_with_rate(m, 0.0, &mut r)).unwrap() == m
        })
        .count();
    let ell = params.ell as f64;
    let eta = 0.2 / ell;
    let trials = 1000;
    let failures = (0..trials)
        .filter(|_| {
            let m = f.random(&mut r);
            sk.decrypt(&pk.encrypt_with_rate(m, eta, &mut r)).unwrap() != m
        })
        .count();
    let bound = eta * ell;
    let limit = bound + 3.0 * (bound * (1.0 - bound) / trials as f64).sqrt();
    let rate = failures as f64 / trials as f64;
    let support = 1.0 - (1.0 - eta).powf(ell + 1.0);
    check(
        exact == 1000 && rate <= limit,
        format!(
            "eta=0: {exact}/1000 exact; large, eta*ell={bound:.2}: failure rate {rate:.3} \
             <= {limit:.3} (support prediction {support:.3})"
        ),
    )
}

fn c9_oracles() -> Outcome {
    let params = Preset::Small.params();
    let (k, ell) = (params.k, params.ell);
    let (mut l1, mut l2, mut p5) = (0, 0, 0);
    for i in 0..50 {
        let mut r = rng(9, i);
        let (sk, _) = keygen(&params, &mut r).unwrap();
        let j = r.gen_range(0..ell);
        let pos = plant(&sk, j, 3 * k, &mut r);
        l1 += usize::from(oracle_lemma1_generators(&sk, &pos).unwrap());
        let rep = prop5_report(&sk, &pos).unwrap();
        p5 += usize::from(rep.holds() && rep.rank == 2 * k - 1 + j);
        // the relation range t in [ell+|J|+2, 2ell] needs |J| <= ell-2
        let j2 = r.gen_range(0..ell - 1);
        let pos2 = plant(&sk, j2, 3 * k, &mut r);
        l2 += usize::from(oracle_lemma2_relations(&sk, &pos2).unwrap());
    }
    check(l1 == 50 && l2 == 50 && p5 == 50, format!("lemma1 {l1}/50, lemma2 {l2}/50, prop5 {p5}/50"))
}

fn cli(dir: &Path, args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_blcrack"))
        .current_dir(dir)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.success() {
        Ok(())
    } else {
        Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)))
    }
}

fn cli_run(dir: &Path) -> Result<Vec<Vec<u8>>, String> {
    cli(dir, &["keygen", "--preset", "small", "--seed", "7", "--out-secret", "sk.json", "--out-public", "pk.json"])?;
    cli(dir, &["encrypt", "--public", "pk.json", "--message", "42", "--seed", "9", "--out", "ct.json"])?;
    cli(dir, &["attack", "recover-l", "--public", "pk.json", "--seed", "11", "--out", "l.json"])?;
    cli(dir, &["experiment", "dim-table", "--preset", "small", "--trials", "20", "--seed", "5", "--out", "t.csv"])?;
    ["sk.json", "pk.json", "ct.json", "l.json", "t.csv"]
        .iter()
        .map(|f| std::fs::read(dir.join(f)).map_err(|e| format!("{f}: {e}")))
        .collect()
}

fn c10_determinism() -> Outcome {
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    let first = cli_run(a.path())?;
    let second = cli_run(b.path())?;
    let cli_same = first == second;

    let params = BlParams::new(101, 30, 5, 3);
    let lib = || {
        let (sk, pk) = keygen(&params, &mut stream_rng(3, 1)).unwrap();
        let ct = pk.encrypt(pk.field().elem(5), &mut stream_rng(3, 2));
        let t = recover_l(&pk, &mut stream_rng(3, 3), AttackOptions::default());
        let csv = dim_table(&ExperimentConfig { params, trials: 5, seed: 3 }).unwrap();
        [
            io::secret_key_to_json(&sk),
            io::public_key_to_json(&pk),
            io::ciphertext_to_json(&ct),
            io::transcript_to_json(&t),
            csv,
        ]
    };
    let lib_same = lib() == lib();
    check(
        cli_same && lib_same,
        format!("cli artifacts identical: {cli_same}, library artifacts identical: {lib_same}"),
    )
}

fn main() {
    let mut keys = Vec::new();
    let criteria: Vec<Criterion> = vec![
        ("C1 GRS square dimension 2k-1", Box::new(c1_grs_square)),
        ("C2 GRS dual square dimension 2(n-k)-1", Box::new(c2_dual_square)),
        ("C3 random-code square dimension", Box::new(c3_random_control)),
        ("C4 restricted square dimension 2k-1+|J|", Box::new(c4_dimension_formula)),
        ("C5 removal classification", Box::new(c5_removal_law)),
    ];
    let mut failed = run_all(criteria);
    let c6 = run_one("C6 end-to-end key recovery", || c6_key_recovery(&mut keys));
    let c7 = run_one("C7 message recovery without the secret key", || c7_message_recovery(&keys));
    failed += usize::from(!c6) + usize::from(!c7);
    let rest: Vec<Criterion> = vec![
        ("C8 honest decryption correctness", Box::new(c8_honest_correctness)),
        ("C9 secret-key oracles", Box::new(c9_oracles)),
        ("C10 determinism", Box::new(c10_determinism)),
    ];
    failed += run_all(rest);
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn run_all(criteria: Vec<Criterion>) -> usize {
    criteria.into_iter().map(|(name, f)| usize::from(!run_one(name, f))).sum()
}

fn run_one(name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(d) => {
            println!("PASS {name}: {d} [{secs:.1}s]");
            true
        }
        Err(d) => {
            println!("FAIL {name}: {d} [{secs:.1}s]");
            false
        }
    }
}
