//! Browser demo. Each operation returns a JSON string; the `#[wasm_bindgen]`
//! wrappers only convert errors into JS values.

use blcrack::attack::{attack_decrypt, recover_l, restricted_square_dim, AttackOptions};
use blcrack::rng::{stream_rng, streams};
use blcrack::scheme::{keygen, BlParams};
use blcrack::{Field, GrsSpec, LinearCode};
use rand::seq::index::sample;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Larger parameters freeze the page.
const MAX_N: usize = 400;

fn params(q: u64, n: usize, k: usize, ell: usize) -> Result<BlParams, String> {
    if n > MAX_N {
        return Err(format!("n = {n} is above the demo limit of {MAX_N}"));
    }
    let p = BlParams::new(q, n, k, ell);
    p.validate().map_err(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))?;
    Ok(p)
}

fn one_based(v: &[usize]) -> Value {
    json!(v.iter().map(|p| p + 1).collect::<Vec<_>>())
}

/// Square dimension of the public code restricted to sets holding
/// `j = 0, 1, ..., 3*ell` secret positions and a fixed number outside.
pub fn dimension_profile(q: u64, n: usize, k: usize, ell: usize, seed: u64) -> Result<String, String> {
    let p = params(q, n, k, ell)?;
    let mut rng = stream_rng(seed, streams::EXPERIMENT);
    let (sk, pk) = keygen(&p, &mut rng).map_err(|e| e.to_string())?;
    let mask = sk.in_l_mask();
    let outside: Vec<usize> = (0..n).filter(|&i| !mask[i]).collect();
    let free = (2 * k + ell).min(outside.len());
    let mut base: Vec<usize> = sample(&mut rng, outside.len(), free).into_iter().map(|i| outside[i]).collect();
    let mut points = Vec::new();
    for j in 0..=sk.l.len() {
        if j > 0 {
            base.push(sk.l[j - 1]);
        }
        let dim = restricted_square_dim(&pk, &base).map_err(|e| e.to_string())?;
        let applies = j < ell && free >= 2 * k;
        points.push(json!({
            "j": j,
            "I_size": base.len(),
            "measured": dim,
            "predicted": if applies { json!(2 * k - 1 + j) } else { Value::Null },
        }));
    }
    Ok(json!({ "k": k, "ell": ell, "outside": free, "points": points }).to_string())
}

/// Generates a key, recovers `L` from the public key alone and decrypts one
/// noise-free ciphertext with it.
pub fn attack_demo(q: u64, n: usize, k: usize, ell: usize, seed: u64, message: u64) -> Result<String, String> {
    let p = params(q, n, k, ell)?;
    let (sk, pk) = keygen(&p, &mut stream_rng(seed, streams::KEYGEN)).map_err(|e| e.to_string())?;
    let t = recover_l(&pk, &mut stream_rng(seed, streams::ATTACK), AttackOptions::default());
    let m = pk.field().elem(message);
    let ct = pk.encrypt_with_rate(m, 0.0, &mut stream_rng(seed, streams::ENCRYPT));
    let recovered = if t.succeeded() {
        attack_decrypt(&pk, &t.recovered_l, &ct).ok().map(|v| v.value())
    } else {
        None
    };
    Ok(json!({
        "planted_L": one_based(&sk.l),
        "recovered_L": one_based(&t.recovered_l),
        "success": t.succeeded() && t.recovered_l == sk.l,
        "resamples": t.resamples,
        "probes": t.probes.len(),
        "message": m.value(),
        "decrypted": recovered,
    })
    .to_string())
}

/// Square dimensions of a GRS code and a random code of the same length, for
/// `k = 1..=max_k`.
pub fn square_curve(q: u64, n: usize, max_k: usize, seed: u64) -> Result<String, String> {
    if n > MAX_N {
        return Err(format!("n = {n} is above the demo limit of {MAX_N}"));
    }
    if max_k == 0 || max_k >= n {
        return Err(format!("need 1 <= max_k < n, got max_k = {max_k}, n = {n}"));
    }
    let f = Field::new(q).map_err(|e| e.to_string())?;
    let mut rng = stream_rng(seed, streams::EXPERIMENT);
    let mut rows = Vec::new();
    for k in 1..=max_k {
        let grs = GrsSpec::random(f, n, k, &mut rng)
            .and_then(|s| s.generator())
            .map_err(|e| e.to_string())?;
        let random = LinearCode::random(f, k, n, &mut rng);
        rows.push(json!({
            "k": k,
            "grs": grs.square_dim(),
            "grs_predicted": (2 * k - 1).min(n),
            "random": random.square_dim(),
            "random_predicted": (k * (k + 1) / 2).min(n),
        }));
    }
    Ok(json!({ "n": n, "q": q.to_string(), "rows": rows }).to_string())
}

#[wasm_bindgen(js_name = dimensionProfile)]
pub fn dimension_profile_js(q: u64, n: usize, k: usize, ell: usize, seed: u64) -> Result<String, JsValue> {
    dimension_profile(q, n, k, ell, seed).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = attackDemo)]
pub fn attack_demo_js(q: u64, n: usize, k: usize, ell: usize, seed: u64, message: u64) -> Result<String, JsValue> {
    attack_demo(q, n, k, ell, seed, message).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = squareCurve)]
pub fn square_curve_js(q: u64, n: usize, max_k: usize, seed: u64) -> Result<String, JsValue> {
    square_curve(q, n, max_k, seed).map_err(|e| JsValue::from_str(&e))
}
