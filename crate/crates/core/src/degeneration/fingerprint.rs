use std::fmt;

use crate::cohomology::{coboundary_ranks, profile_from_ranks, Module};
use crate::field::Field;
use crate::liealg::{LieAlgebra, Subspace};

/// Every invariant used by the obstruction battery, for one algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantFingerprint {
    pub n: usize,
    pub lower_central: Vec<usize>,
    pub derived_series: Vec<usize>,
    pub upper_central: Vec<usize>,
    /// `h_0, ..., h_n`, adjoint coefficients.
    pub h: Vec<usize>,
    /// `b_0, ..., b_n`, trivial coefficients.
    pub b: Vec<usize>,
    /// `z_0, ..., z_n`, adjoint cocycles.
    pub z: Vec<usize>,
    pub derived_dim: usize,
    pub center_dim: usize,
    pub nilpotency: Option<usize>,
    pub solvability: Option<usize>,
    pub derivation_dim: usize,
    pub orbit_dim: usize,
}

fn dims<F: Field>(s: &[Subspace<F>]) -> Vec<usize> {
    s.iter().map(Subspace::dim).collect()
}

impl InvariantFingerprint {
    pub fn compute<F: Field>(l: &LieAlgebra<F>) -> Self {
        let n = l.dim();
        let (adj, triv) = rayon::join(
            || coboundary_ranks(l, Module::Adjoint),
            || coboundary_ranks(l, Module::Trivial),
        );
        let adj = profile_from_ranks(n, Module::Adjoint, &adj);
        let triv = profile_from_ranks(n, Module::Trivial, &triv);
        let lcs = l.lower_central_series();
        let ds = l.derived_series();
        let ucs = l.upper_central_series();
        let derivation_dim = adj.z.get(1).copied().unwrap_or(0);
        InvariantFingerprint {
            n,
            derived_dim: lcs.get(1).map_or(n, Subspace::dim),
            center_dim: ucs.get(1).map_or(0, Subspace::dim),
            nilpotency: l.nilpotency_class(),
            solvability: l.solvability_class(),
            lower_central: dims(&lcs),
            derived_series: dims(&ds),
            upper_central: dims(&ucs),
            h: adj.h,
            b: triv.h,
            z: adj.z,
            derivation_dim,
            orbit_dim: n * n - derivation_dim,
        }
    }

    /// `Z^j` for any `j ≥ 0`; the upper central series is constant after it stabilizes.
    pub fn upper_central_dim(&self, j: usize) -> usize {
        self.upper_central
            .get(j)
            .or(self.upper_central.last())
            .copied()
            .unwrap_or(0)
    }

    /// Cross-identities that hold for every Lie algebra; returns the first failure.
    pub fn consistency_error(&self) -> Option<String> {
        let n = self.n;
        let alt = |v: &[usize]| -> i64 {
            v.iter()
                .enumerate()
                .map(|(j, &x)| if j % 2 == 0 { x as i64 } else { -(x as i64) })
                .sum()
        };
        if n > 0 && alt(&self.h) != 0 {
            return Some("alternating sum of h is nonzero".into());
        }
        if n > 0 && alt(&self.b) != 0 {
            return Some("alternating sum of b is nonzero".into());
        }
        if self.h.first() != Some(&self.center_dim) {
            return Some("h_0 differs from dim Z".into());
        }
        if n > 0 && self.b.get(1) != Some(&(n - self.derived_dim)) {
            return Some("b_1 differs from n - dim[g,g]".into());
        }
        if self.orbit_dim + self.derivation_dim != n * n {
            return Some("orbit dimension is not n^2 - dim Der".into());
        }
        if n > 0 && self.h.get(1).copied() != self.derivation_dim.checked_sub(n - self.center_dim) {
            return Some("h_1 differs from the outer derivation count".into());
        }
        if let (Some(nc), Some(sc)) = (self.nilpotency, self.solvability) {
            if sc > nc {
                return Some("solvability class exceeds nilpotency class".into());
            }
        }
        None
    }

    /// `h_0 .. h_n | b_1 .. b_n | n s dim O`.
    pub fn table_row(&self) -> String {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        format!(
            "{} | {} | {} {} {}",
            join(&self.h),
            join(self.b.get(1..).unwrap_or(&[])),
            class_str(self.nilpotency),
            class_str(self.solvability),
            self.orbit_dim
        )
    }
}

pub(crate) fn class_str(c: Option<usize>) -> String {
    c.map_or_else(|| "-".to_string(), |c| c.to_string())
}

impl fmt::Display for InvariantFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.table_row())
    }
}
