use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// Outcome of sampling the trace ratio
/// `tr((ad x)^i) tr((ad y)^j) / tr((ad x)^i (ad y)^j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceInvariant<F: Field> {
    /// All samples with a nonzero denominator agreed on this value.
    Value(F),
    /// Two samples gave different values.
    NotWellDefined(F, F),
}

fn trace<F: Field>(m: &Matrix<F>) -> F {
    (0..m.rows()).fold(F::zero(), |acc, i| acc.add(m.get(i, i)))
}

fn matrix_pow<F: Field>(m: &Matrix<F>, e: u32) -> Matrix<F> {
    let mut acc = Matrix::identity(m.rows());
    for _ in 0..e {
        acc = acc.mul(m).expect("square");
    }
    acc
}

/// Samples the trace ratio at `samples` random pairs of integer vectors.
///
/// Fails with [`Error::DegenerateTrace`] when every denominator vanishes.
pub fn c_invariant<F: Field>(
    l: &LieAlgebra<F>,
    i: u32,
    j: u32,
    samples: usize,
    seed: u64,
) -> Result<TraceInvariant<F>> {
    let n = l.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Option<F> = None;
    for _ in 0..samples {
        let mut draw = || -> Vec<F> { (0..n).map(|_| F::from_i64(rng.gen_range(-9..=9))).collect() };
        let x = draw();
        let y = draw();
        let ax = matrix_pow(&l.adjoint_matrix(&x)?, i);
        let ay = matrix_pow(&l.adjoint_matrix(&y)?, j);
        let den = trace(&ax.mul(&ay)?);
        if den.is_zero() {
            continue;
        }
        let val = trace(&ax).mul(&trace(&ay)).div(&den)?;
        match &found {
            None => found = Some(val),
            Some(v) if *v != val => return Ok(TraceInvariant::NotWellDefined(v.clone(), val)),
            _ => {}
        }
    }
    found.map(TraceInvariant::Value).ok_or(Error::DegenerateTrace)
}
