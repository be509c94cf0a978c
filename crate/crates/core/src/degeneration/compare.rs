use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use super::abelian::{abelian_lower_bound, has_abelian_subalgebra};
use super::certificate::{verify_all, DegenerationCertificate, Verdict};
use super::fingerprint::InvariantFingerprint;
use super::ideal::ideal_property_r;
use super::obstruction::{central_quotient_obstruction_with, obstruction_battery, trace_obstruction};
use crate::catalog::{AlgebraRef, AnyAlgebra, Catalog};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::liealg::LieAlgebra;

/// Verified degenerations as a directed graph on canonical reference strings.
#[derive(Clone, Debug, Default)]
pub struct CertStore {
    nodes: Vec<String>,
    index: HashMap<String, usize>,
    /// `(source, target, certificate id)`.
    edges: Vec<(usize, usize, String)>,
    failed: Vec<(String, String)>,
}

impl CertStore {
    /// Verifies the catalog's certificates; failures are kept aside, not used.
    pub fn verified(catalog: &Catalog) -> Result<Self> {
        Self::from_certificates(catalog.certificates(), catalog)
    }

    pub fn from_certificates(certs: &[DegenerationCertificate], catalog: &Catalog) -> Result<Self> {
        let mut store = CertStore::default();
        for (c, v) in certs.iter().zip(verify_all(certs, catalog)) {
            match v {
                Ok(Verdict::Ok) => {
                    let s = store.node(&catalog.canonical(&c.source)?.to_string());
                    let t = store.node(&catalog.canonical(&c.target)?.to_string());
                    store.edges.push((s, t, c.id.clone()));
                }
                Ok(other) => store.failed.push((c.id.clone(), other.to_string())),
                Err(e) => store.failed.push((c.id.clone(), e.to_string())),
            }
        }
        Ok(store)
    }

    fn node(&mut self, key: &str) -> usize {
        if let Some(&i) = self.index.get(key) {
            return i;
        }
        self.nodes.push(key.to_string());
        self.index.insert(key.to_string(), self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    /// Certificates that did not verify, with the reason.
    pub fn failed(&self) -> &[(String, String)] {
        &self.failed
    }

    /// `(source, target, certificate id)` for every verified certificate.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, &str)> {
        self.edges
            .iter()
            .map(|(s, t, id)| (self.nodes[*s].as_str(), self.nodes[*t].as_str(), id.as_str()))
    }

    /// Certificate ids along a shortest chain `from → … → to`.
    pub fn path(&self, from: &str, to: &str) -> Option<Vec<String>> {
        let (&a, &b) = (self.index.get(from)?, self.index.get(to)?);
        let mut prev: Vec<Option<usize>> = vec![None; self.nodes.len()];
        let mut seen = vec![false; self.nodes.len()];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            if u == b {
                let mut ids = Vec::new();
                let mut cur = b;
                while cur != a {
                    let e = prev[cur].unwrap();
                    ids.push(self.edges[e].2.clone());
                    cur = self.edges[e].0;
                }
                ids.reverse();
                return Some(ids);
            }
            for (e, (s, t, _)) in self.edges.iter().enumerate() {
                if *s == u && !seen[*t] {
                    seen[*t] = true;
                    prev[*t] = Some(e);
                    queue.push_back(*t);
                }
            }
        }
        None
    }

    fn closure_from(&self, start: &str, forward: bool) -> BTreeSet<String> {
        let mut out = BTreeSet::from([start.to_string()]);
        let Some(&a) = self.index.get(start) else { return out };
        let mut stack = vec![a];
        let mut seen = vec![false; self.nodes.len()];
        seen[a] = true;
        while let Some(u) = stack.pop() {
            for (s, t, _) in &self.edges {
                let (from, to) = if forward { (*s, *t) } else { (*t, *s) };
                if from == u && !seen[to] {
                    seen[to] = true;
                    out.insert(self.nodes[to].clone());
                    stack.push(to);
                }
            }
        }
        out
    }

    /// Algebras known to degenerate to `r`, including `r`.
    pub fn ancestors(&self, r: &str) -> BTreeSet<String> {
        self.closure_from(r, false)
    }

    /// Algebras `r` is known to degenerate to, including `r`.
    pub fn descendants(&self, r: &str) -> BTreeSet<String> {
        self.closure_from(r, true)
    }
}

/// Outcome of [`Comparator::compare`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    /// A chain of verified certificates; empty for a trivial degeneration.
    Degenerates { certificates: Vec<String> },
    /// `reason` obstructs `via.0 → via.1`, which would follow from `src → dst`.
    Obstructed { reason: String, via: Option<(String, String)> },
    Unknown,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comparison::Degenerates { certificates } if certificates.is_empty() => {
                f.write_str("DEGENERATES trivial")
            }
            Comparison::Degenerates { certificates } => {
                let ids: Vec<String> = certificates.iter().map(|c| format!("cert:{c}")).collect();
                write!(f, "DEGENERATES {}", ids.join(","))
            }
            Comparison::Obstructed { reason, via: None } => write!(f, "OBSTRUCTED {reason}"),
            Comparison::Obstructed {
                reason,
                via: Some((a, b)),
            } => write!(f, "OBSTRUCTED {reason} (via {a} -> {b})"),
            Comparison::Unknown => f.write_str("UNKNOWN"),
        }
    }
}

struct Info {
    algebra: AnyAlgebra,
    fingerprint: InvariantFingerprint,
    ideal: Mutex<Option<Option<bool>>>,
    abelian: Mutex<HashMap<usize, bool>>,
}

/// Largest dimension for which abelian subalgebras are decided exactly.
const ABELIAN_MAX_DIM: usize = 6;

/// Tri-state comparison with cached invariants.
pub struct Comparator<'a> {
    catalog: &'a Catalog,
    store: &'a CertStore,
    info: Mutex<HashMap<String, Arc<Info>>>,
    quotient_fps: Mutex<HashMap<String, InvariantFingerprint>>,
    direct: Mutex<HashMap<(String, String), Option<String>>>,
}

fn table_key<F: Field>(l: &LieAlgebra<F>) -> String {
    let mut s = format!("{}:", l.dim());
    for c in l.constants() {
        s.push_str(&c.to_string());
        s.push(',');
    }
    s
}

impl<'a> Comparator<'a> {
    pub fn new(catalog: &'a Catalog, store: &'a CertStore) -> Self {
        Comparator {
            catalog,
            store,
            info: Mutex::new(HashMap::new()),
            quotient_fps: Mutex::new(HashMap::new()),
            direct: Mutex::new(HashMap::new()),
        }
    }

    pub fn store(&self) -> &CertStore {
        self.store
    }

    /// Canonical string of a fully bound reference.
    pub fn key(&self, r: &AlgebraRef) -> Result<String> {
        let c = self.catalog.canonical(r)?;
        let e = self.catalog.entry(&c.label)?;
        if c.bindings.len() != e.params.len() {
            return Err(Error::Binding(format!("{c} has unbound parameters")));
        }
        Ok(c.to_string())
    }

    fn info(&self, key: &str) -> Result<Arc<Info>> {
        if let Some(i) = self.info.lock().unwrap().get(key) {
            return Ok(i.clone());
        }
        let algebra = self.catalog.get_concrete(&AlgebraRef::parse(key)?)?;
        let fingerprint = algebra.fingerprint();
        let i = Arc::new(Info {
            algebra,
            fingerprint,
            ideal: Mutex::new(None),
            abelian: Mutex::new(HashMap::new()),
        });
        self.info.lock().unwrap().insert(key.to_string(), i.clone());
        Ok(i)
    }

    pub fn fingerprint(&self, r: &AlgebraRef) -> Result<InvariantFingerprint> {
        Ok(self.info(&self.key(r)?)?.fingerprint.clone())
    }

    fn ideal(&self, i: &Info) -> Option<bool> {
        let mut slot = i.ideal.lock().unwrap();
        if slot.is_none() {
            *slot = Some(i.algebra.as_rational().map(|l| ideal_property_r(l).exists()));
        }
        slot.unwrap()
    }

    fn has_abelian(&self, i: &Info, l: &LieAlgebra<Rational>, k: usize) -> bool {
        if let Some(&r) = i.abelian.lock().unwrap().get(&k) {
            return r;
        }
        let r = has_abelian_subalgebra(l, k);
        i.abelian.lock().unwrap().insert(k, r);
        r
    }

    fn quotient_fp<F: Field>(&self, l: &LieAlgebra<F>) -> InvariantFingerprint {
        let key = table_key(l);
        if let Some(fp) = self.quotient_fps.lock().unwrap().get(&key) {
            return fp.clone();
        }
        let fp = InvariantFingerprint::compute(l);
        self.quotient_fps.lock().unwrap().insert(key, fp.clone());
        fp
    }

    /// The first criterion obstructing `a → b` itself, if any.
    pub fn direct_obstruction(&self, a: &str, b: &str) -> Result<Option<String>> {
        let k = (a.to_string(), b.to_string());
        if let Some(r) = self.direct.lock().unwrap().get(&k) {
            return Ok(r.clone());
        }
        let r = self.compute_direct(a, b)?;
        self.direct.lock().unwrap().insert(k, r.clone());
        Ok(r)
    }

    fn compute_direct(&self, a: &str, b: &str) -> Result<Option<String>> {
        let (ia, ib) = (self.info(a)?, self.info(b)?);
        if ia.algebra.dim() != ib.algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: ia.algebra.dim(),
                got: ib.algebra.dim(),
            });
        }
        if a == b {
            return Ok(None);
        }
        let battery = obstruction_battery(&ia.fingerprint, &ib.fingerprint)?;
        if let Some(e) = battery.first_obstruction() {
            return Ok(Some(e.to_string()));
        }
        let nilpotent = ia.fingerprint.nilpotency.is_some() && ib.fingerprint.nilpotency.is_some();
        if nilpotent {
            let report = match (&ia.algebra, &ib.algebra) {
                (AnyAlgebra::Rational(x), AnyAlgebra::Rational(y)) => {
                    central_quotient_obstruction_with(x, y, &|l| self.quotient_fp(l))?
                }
                _ => central_quotient_obstruction_with(&ia.algebra.to_quad(), &ib.algebra.to_quad(), &|l| {
                    self.quotient_fp(l)
                })?,
            };
            if let Some(e) = report.first_obstruction() {
                return Ok(Some(e.to_string()));
            }
        }
        if self.ideal(&ia) == Some(true) && self.ideal(&ib) == Some(false) {
            return Ok(Some("I source has the ideal, target has none".into()));
        }
        if ia.fingerprint.nilpotency.is_none() && ib.fingerprint.nilpotency.is_none() {
            let report = match (&ia.algebra, &ib.algebra) {
                (AnyAlgebra::Rational(x), AnyAlgebra::Rational(y)) => trace_obstruction(x, y, 0x7ace)?,
                _ => trace_obstruction(&ia.algebra.to_quad(), &ib.algebra.to_quad(), 0x7ace)?,
            };
            if let Some(e) = report.first_obstruction() {
                return Ok(Some(e.to_string()));
            }
        }
        if let (Some(x), Some(y)) = (ia.algebra.as_rational(), ib.algebra.as_rational()) {
            if x.dim() <= ABELIAN_MAX_DIM {
                let k = abelian_lower_bound(x);
                if !self.has_abelian(&ib, y, k) {
                    return Ok(Some(format!("a source has a {k}-dim abelian subalgebra, target none")));
                }
            }
        }
        Ok(None)
    }

    /// DEGENERATES via certificates, OBSTRUCTED directly or by transitivity
    /// through verified edges, UNKNOWN otherwise.
    pub fn compare(&self, src: &AlgebraRef, dst: &AlgebraRef) -> Result<Comparison> {
        let (a, b) = (self.key(src)?, self.key(dst)?);
        self.compare_keys(&a, &b)
    }

    pub fn compare_keys(&self, a: &str, b: &str) -> Result<Comparison> {
        if a == b {
            return Ok(Comparison::Degenerates {
                certificates: Vec::new(),
            });
        }
        if let Some(path) = self.store.path(a, b) {
            return Ok(Comparison::Degenerates { certificates: path });
        }
        if let Some(reason) = self.direct_obstruction(a, b)? {
            return Ok(Comparison::Obstructed { reason, via: None });
        }
        for x in self.store.ancestors(a) {
            for y in self.store.descendants(b) {
                if (x.as_str(), y.as_str()) == (a, b) {
                    continue;
                }
                if let Some(reason) = self.direct_obstruction(&x, &y)? {
                    return Ok(Comparison::Obstructed {
                        reason,
                        via: Some((x, y)),
                    });
                }
            }
        }
        Ok(Comparison::Unknown)
    }
}
