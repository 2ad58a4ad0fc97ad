//! Shared helpers for unit tests.

use crate::matcore::{CMat, GenClass, Rng};

pub fn m2(a: f64, b: f64, c: f64, d: f64) -> CMat {
    CMat::from_real_rows(&[&[a, b], &[c, d]]).unwrap()
}

/// Random feasible (size, rank, index) triple for the class.
pub fn feasible_shape(class: GenClass, rng: &mut Rng) -> (usize, usize, usize) {
    let m = rng.usize_in(2, 6);
    match class {
        GenClass::Nilpotent => (m, 0, rng.usize_in(1, m)),
        GenClass::Ep | GenClass::HermitianPsd => {
            let r = rng.usize_in(1, m);
            (m, r, if r == m { 0 } else { 1 })
        }
        _ => {
            let r = rng.usize_in(0, m);
            let k = if r == m { 0 } else { rng.usize_in(1, m - r) };
            (m, r, k)
        }
    }
}
