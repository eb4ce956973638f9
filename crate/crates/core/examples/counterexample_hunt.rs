//! Counts inverse monoids by size and looks for E-unitary monoids that are
//! not F-inverse.
//!
//! ```text
//! cargo run --release --example counterexample_hunt -- 6
//! ```

use std::time::Instant;

use imw_core::corpus::inverse_monoids_of_size;
use imw_core::inverse::{is_e_unitary, is_f_inverse};

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    for n in 1..=max {
        let start = Instant::now();
        let all = inverse_monoids_of_size(n);
        let e_unitary: Vec<_> = all.iter().filter(|m| is_e_unitary(m).is_ok()).collect();
        let hits: Vec<_> = e_unitary.iter().filter(|m| is_f_inverse(m).is_err()).collect();
        println!(
            "n={n}: {} inverse monoids, {} E-unitary, {} E-unitary but not F-inverse ({:.2?})",
            all.len(),
            e_unitary.len(),
            hits.len(),
            start.elapsed()
        );
        for m in hits {
            println!("  {:?}", m.monoid().rows());
        }
    }
}
