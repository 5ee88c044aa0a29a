//! Brute-force search for an order-3, dimension-2 real tensor with
//! `Q/Z ≥ 1.05`, using only the grid oracles: the circle grid for `Z` and
//! the grid on S³ of the embedded tensor for `Q`.
//!
//! ```text
//! cargo run --release -p qzspec --example derive_witness -- [out.json] [seed] [samples]
//! ```

use qzspec::witness::{WitnessArchive, WitnessMeta};
use qzspec::TensorFile;
use qzspec_core::embed::embed;
use qzspec_core::qspec::gaussian_tensor;
use qzspec_core::zsolve::{grid_oracle_n2, grid_oracle_n3plus, DEFAULT_RESOLUTION};
use qzspec_core::{ComplexSymTensor, SymTensor, Variant};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TARGET: f64 = 1.05;

fn oracle_q_z(t: &SymTensor) -> (f64, f64) {
    let z = grid_oracle_n2(t).unwrap().iter().fold(0.0f64, |r, p| r.max(p.lambda.abs()));
    let e = embed(&ComplexSymTensor::from_real(t.clone()), Variant::General).unwrap();
    let q = grid_oracle_n3plus(&e.target, DEFAULT_RESOLUTION)
        .unwrap()
        .iter()
        .fold(f64::NEG_INFINITY, |r, p| r.max(p.lambda));
    (q, z)
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let out = args.get(1).cloned().unwrap_or_else(|| "witness_m3n2.json".into());
    let seed: u64 = args.get(2).map_or(2024, |s| s.parse().expect("seed"));
    let samples: usize = args.get(3).map_or(2000, |s| s.parse().expect("samples"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(f64, f64, f64, SymTensor, usize)> = None;
    for k in 0..samples {
        let t = gaussian_tensor(3, 2, &mut rng).unwrap();
        let (q, z) = oracle_q_z(&t);
        if z < 1e-8 {
            continue;
        }
        let ratio = q / z;
        if best.as_ref().is_none_or(|b| ratio > b.0) {
            println!("sample {k}: Q {q:.12} Z {z:.12} Q/Z {ratio:.9}");
            best = Some((ratio, q, z, t, k));
        }
    }
    let (ratio, q, z, t, k) = best.expect("at least one sample");
    println!("best after {samples} samples: Q/Z = {ratio:.9} (sample {k})");
    if ratio < TARGET {
        eprintln!("no sample reached {TARGET}");
        std::process::exit(1);
    }
    let archive = WitnessArchive {
        tensor: TensorFile::from_real(&t),
        metadata: WitnessMeta {
            ratio,
            q,
            z,
            family: "gaussian".into(),
            seed,
            budget: samples,
        },
    };
    std::fs::write(&out, archive.to_json()).unwrap();
    println!("wrote {out}");
}
