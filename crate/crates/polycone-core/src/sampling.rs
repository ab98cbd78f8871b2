//! Deterministic low-discrepancy rational sequences.
//!
//! Van der Corput radical inverses in coprime bases give reproducible
//! rational sample points in `(0,1)^d`; the seed offsets the index so that
//! different seeds give disjoint streams.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::scalar::Rational;

const BASES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Radical inverse of `i` in the given base, as an exact rational in `[0,1)`.
pub fn radical_inverse(mut i: u64, base: u64) -> Rational {
    let mut num = BigInt::zero();
    let mut den = BigInt::from(1u64);
    while i > 0 {
        num = num * base + BigInt::from(i % base);
        den *= base;
        i /= base;
    }
    Rational::new(num, den)
}

/// Deterministic stream of rational points in the open unit cube.
#[derive(Clone, Debug)]
pub struct LowDiscrepancy {
    index: u64,
}

impl LowDiscrepancy {
    pub fn new(seed: u64) -> Self {
        // spread seeds far apart; index 0 (all zeros) is skipped
        LowDiscrepancy {
            index: seed.wrapping_mul(0x9e37_79b9) % (1 << 40),
        }
    }

    /// Next point in `(0,1)^dim` (coordinates never 0 or 1).
    pub fn next_point(&mut self, dim: usize) -> Vec<Rational> {
        assert!(dim <= BASES.len(), "sampling dimension too large");
        loop {
            self.index += 1;
            let p: Vec<Rational> = (0..dim)
                .map(|j| radical_inverse(self.index, BASES[j]))
                .collect();
            if p.iter().all(|c| !c.is_zero()) {
                return p;
            }
        }
    }
}
