#![allow(dead_code)]

use std::path::PathBuf;

use prl_core::zeros::ZeroTable;

pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The large generated table shipped next to the bundled fixture.
pub fn large_table() -> ZeroTable {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/zeros10000.txt");
    ZeroTable::load(&path).expect("data/zeros10000.txt")
}
