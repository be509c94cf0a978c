use std::fmt;

use super::fingerprint::{class_str, InvariantFingerprint};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::liealg::{c_invariant, LieAlgebra, TraceInvariant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriterionVerdict {
    Obstructed,
    Passed,
    Unknown,
}

/// One necessary condition for `λ →deg μ`, evaluated on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    /// `orbit`, `der`, `h{j}`, `b{j}`, `z{j}`, `derived`, `center`, `ucs{j}`, `n`, `s`, ...
    pub id: String,
    pub source: String,
    pub target: String,
    pub verdict: CriterionVerdict,
    /// The relation that was violated, e.g. `15>13`.
    pub violated: Option<String>,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violated {
            Some(v) => write!(f, "{} {}", self.id, v),
            None => write!(f, "{} {} vs {}", self.id, self.source, self.target),
        }
    }
}

/// Ordered list of evaluated criteria for a candidate degeneration.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ObstructionReport {
    pub entries: Vec<CriterionResult>,
}

impl ObstructionReport {
    pub fn is_obstructed(&self) -> bool {
        self.first_obstruction().is_some()
    }

    pub fn first_obstruction(&self) -> Option<&CriterionResult> {
        self.entries.iter().find(|e| e.verdict == CriterionVerdict::Obstructed)
    }

    pub fn obstructions(&self) -> impl Iterator<Item = &CriterionResult> {
        self.entries.iter().filter(|e| e.verdict == CriterionVerdict::Obstructed)
    }

    /// The entry with this id, if it was evaluated.
    pub fn get(&self, id: &str) -> Option<&CriterionResult> {
        self.entries.iter().find(|e| e.id == id)
    }

    fn push(&mut self, id: impl Into<String>, src: String, dst: String, violated: Option<String>) {
        self.entries.push(CriterionResult {
            id: id.into(),
            source: src,
            target: dst,
            verdict: if violated.is_some() {
                CriterionVerdict::Obstructed
            } else {
                CriterionVerdict::Passed
            },
            violated,
        });
    }

    /// Requires `src ≤ dst`.
    fn le(&mut self, id: impl Into<String>, src: usize, dst: usize) {
        let v = (src > dst).then(|| format!("{src}>{dst}"));
        self.push(id, src.to_string(), dst.to_string(), v);
    }

    /// Requires `src ≥ dst`, `None` meaning infinity.
    fn ge_class(&mut self, id: &str, src: Option<usize>, dst: Option<usize>) {
        let ok = match (src, dst) {
            (_, None) => src.is_none(),
            (None, Some(_)) => true,
            (Some(a), Some(b)) => a >= b,
        };
        let (s, d) = (class_str(src), class_str(dst));
        let v = (!ok).then(|| format!("{s}<{d}"));
        self.push(id, s, d, v);
    }

    fn extend_prefixed(&mut self, prefix: &str, other: ObstructionReport) {
        for mut e in other.entries {
            e.id = format!("{prefix}{}", e.id);
            self.entries.push(e);
        }
    }
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.obstructions().map(ToString::to_string).collect();
        if parts.is_empty() {
            f.write_str("passed")
        } else {
            f.write_str(&parts.join("; "))
        }
    }
}

/// Evaluates the invariant inequalities for `src →deg dst`.
///
/// Strictness of orbit and derivation dimensions is only demanded when the
/// fingerprints differ, so a trivial degeneration is never excluded.
pub fn obstruction_battery(src: &InvariantFingerprint, dst: &InvariantFingerprint) -> Result<ObstructionReport> {
    if src.n != dst.n {
        return Err(Error::DimensionMismatch {
            expected: src.n,
            got: dst.n,
        });
    }
    let n = src.n;
    let same = src == dst;
    let mut r = ObstructionReport::default();
    let (so, d_o) = (src.orbit_dim, dst.orbit_dim);
    let v = (!same && so <= d_o).then(|| format!("{so}<={d_o}"));
    r.push("orbit", so.to_string(), d_o.to_string(), v);
    let (sd, dd) = (src.derivation_dim, dst.derivation_dim);
    let v = (!same && sd >= dd).then(|| format!("{sd}>={dd}"));
    r.push("der", sd.to_string(), dd.to_string(), v);
    for j in 0..=n {
        r.le(format!("h{j}"), src.h[j], dst.h[j]);
    }
    for j in 0..=n {
        r.le(format!("b{j}"), src.b[j], dst.b[j]);
    }
    for j in 0..=n {
        r.le(format!("z{j}"), src.z[j], dst.z[j]);
    }
    // dim[μ,μ] ≤ dim[λ,λ]
    let (a, b) = (src.derived_dim, dst.derived_dim);
    r.push("derived", a.to_string(), b.to_string(), (b > a).then(|| format!("{a}<{b}")));
    r.le("center", src.center_dim, dst.center_dim);
    let depth = src.upper_central.len().max(dst.upper_central.len());
    for j in 1..depth {
        r.le(format!("ucs{j}"), src.upper_central_dim(j), dst.upper_central_dim(j));
    }
    r.ge_class("n", src.nilpotency, dst.nilpotency);
    r.ge_class("s", src.solvability, dst.solvability);
    Ok(r)
}

/// If `g →deg h` for nilpotent `g`, then `g/Z(g) →deg h/Z(h) ⊕ C^d` with
/// `d = dim Z(h) - dim Z(g)`. Applied recursively to the quotients.
pub fn central_quotient_obstruction<F: Field>(src: &LieAlgebra<F>, dst: &LieAlgebra<F>) -> Result<ObstructionReport> {
    central_quotient_obstruction_with(src, dst, &InvariantFingerprint::compute)
}

pub(crate) fn central_quotient_obstruction_with<F: Field>(
    src: &LieAlgebra<F>,
    dst: &LieAlgebra<F>,
    fp: &dyn Fn(&LieAlgebra<F>) -> InvariantFingerprint,
) -> Result<ObstructionReport> {
    if src.dim() != dst.dim() {
        return Err(Error::DimensionMismatch {
            expected: src.dim(),
            got: dst.dim(),
        });
    }
    if src.nilpotency_class().is_none() || dst.nilpotency_class().is_none() {
        return Err(Error::NotNilpotent);
    }
    let mut report = ObstructionReport::default();
    quotient_step(src, dst, "zq:", fp, &mut report)?;
    Ok(report)
}

fn quotient_step<F: Field>(
    src: &LieAlgebra<F>,
    dst: &LieAlgebra<F>,
    prefix: &str,
    fp: &dyn Fn(&LieAlgebra<F>) -> InvariantFingerprint,
    report: &mut ObstructionReport,
) -> Result<()> {
    let (zs, zd) = (src.center().dim(), dst.center().dim());
    let v = (zd < zs).then(|| format!("{zs}>{zd}"));
    let blocked = v.is_some();
    report.push(format!("{prefix}d"), zs.to_string(), zd.to_string(), v);
    if blocked || zs == src.dim() {
        return Ok(());
    }
    let q1 = src.central_quotient();
    let q2 = dst.central_quotient().direct_sum_abelian(zd - zs);
    let battery = obstruction_battery(&fp(&q1), &fp(&q2))?;
    let stop = battery.is_obstructed();
    report.extend_prefixed(prefix, battery);
    if !stop && !q1.is_abelian() {
        quotient_step(&q1, &q2, &format!("{prefix}zq:"), fp, report)?;
    }
    Ok(())
}

/// Compares the trace invariants `c_ij` for `1 ≤ i ≤ j ≤ 3`; differing
/// well-defined values obstruct.
pub fn trace_obstruction<F: Field>(src: &LieAlgebra<F>, dst: &LieAlgebra<F>, seed: u64) -> Result<ObstructionReport> {
    let mut r = ObstructionReport::default();
    for i in 1..=3u32 {
        for j in i..=3u32 {
            let id = format!("c{i}{j}");
            let a = c_invariant(src, i, j, 24, seed);
            let b = c_invariant(dst, i, j, 24, seed ^ 0x5bd1_e995);
            match (a, b) {
                (Ok(TraceInvariant::Value(x)), Ok(TraceInvariant::Value(y))) => {
                    let v = (x != y).then(|| format!("{x}!={y}"));
                    r.push(id, x.to_string(), y.to_string(), v);
                }
                (a, b) => r.entries.push(CriterionResult {
                    id,
                    source: describe(a),
                    target: describe(b),
                    verdict: CriterionVerdict::Unknown,
                    violated: None,
                }),
            }
        }
    }
    Ok(r)
}

fn describe<F: Field>(x: Result<TraceInvariant<F>>) -> String {
    match x {
        Ok(TraceInvariant::Value(v)) => v.to_string(),
        Ok(TraceInvariant::NotWellDefined(..)) => "not constant".into(),
        Err(_) => "degenerate".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn alg(n: usize, br: &[(usize, usize, usize)]) -> LieAlgebra<Rational> {
        let v: Vec<_> = br.iter().map(|&(i, j, k)| (i, j, vec![(k, Rational::from(1))])).collect();
        LieAlgebra::from_brackets(n, "x", &v).unwrap()
    }

    #[test]
    fn trivial_pair_passes() {
        let n4 = alg(4, &[(1, 2, 3), (1, 3, 4)]);
        let fp = InvariantFingerprint::compute(&n4);
        assert!(!obstruction_battery(&fp, &fp).unwrap().is_obstructed());
        assert!(!central_quotient_obstruction(&n4, &n4).unwrap().is_obstructed());
    }

    #[test]
    fn reverse_direction_is_obstructed() {
        let n4 = alg(4, &[(1, 2, 3), (1, 3, 4)]);
        let n3c = alg(4, &[(1, 2, 3)]);
        let (a, b) = (InvariantFingerprint::compute(&n4), InvariantFingerprint::compute(&n3c));
        assert!(!obstruction_battery(&a, &b).unwrap().is_obstructed());
        let r = obstruction_battery(&b, &a).unwrap();
        assert_eq!(r.first_obstruction().unwrap().id, "orbit");
        assert_eq!(r.get("n").unwrap().violated.as_deref(), Some("2<3"));
    }

    #[test]
    fn dimension_mismatch() {
        let a = InvariantFingerprint::compute(&alg(3, &[(1, 2, 3)]));
        let b = InvariantFingerprint::compute(&alg(4, &[(1, 2, 3)]));
        assert!(matches!(obstruction_battery(&a, &b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn non_nilpotent_quotient_rule() {
        let r2 = alg(2, &[(1, 2, 2)]);
        assert!(matches!(central_quotient_obstruction(&r2, &r2), Err(Error::NotNilpotent)));
    }
}
