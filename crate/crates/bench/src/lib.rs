//! Fixtures shared by the benchmarks.

use std::path::PathBuf;

use holocount::algebra::SkewMatrix;
use holocount::format::{parse, InstanceFile};
use holocount::planar::Instance;
use holocount::random::{random_nae_instance, random_skew, rng};

/// One of the shipped instance files.
pub fn shipped(name: &str) -> InstanceFile {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../instances")
        .join(name);
    let text = std::fs::read_to_string(&path).expect("shipped instance exists");
    parse(&text)
        .expect("shipped instance parses")
        .into_instance()
        .expect("counting instance")
}

/// Random planar NAE instance with `6 * clause_pairs` edges.
pub fn nae_instance(clause_pairs: usize, seed: u64) -> Instance {
    let mut r = rng(seed);
    random_nae_instance(&mut r, clause_pairs, clause_pairs)
}

pub fn skew(n: usize, seed: u64) -> SkewMatrix {
    random_skew(&mut rng(seed), n)
}
