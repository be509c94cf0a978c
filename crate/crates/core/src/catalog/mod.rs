//! The library of algebras, named sets, expected invariant tables and the
//! shipped certificate corpus.

mod entry;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use entry::{parse_entry, BracketLine, CatalogEntry, ParamSpec, Term};

use crate::degeneration::{parse_certificate, DegenerationCertificate, InvariantFingerprint};
use crate::error::{Error, ParseError, Result};
use crate::field::{eval_expr, parse_expr, Expr, Field, QuadExt, Rational, RationalFunction};
use crate::liealg::LieAlgebra;

mod embedded {
    include!(concat!(env!("OUT_DIR"), "/embedded.rs"));
}

/// A catalog label together with parameter bindings, written `label(a=1/2,b=3)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraRef {
    pub label: String,
    pub bindings: Vec<(String, Expr)>,
}

impl AlgebraRef {
    pub fn new(label: impl Into<String>) -> Self {
        AlgebraRef {
            label: label.into(),
            bindings: Vec::new(),
        }
    }

    pub fn with(mut self, name: &str, value: Expr) -> Self {
        self.bindings.retain(|(n, _)| n != name);
        self.bindings.push((name.to_string(), value));
        self
    }

    /// Accepts `label`, `label(a=v, b=v)` and `label (a=v)`. A trailing
    /// parenthesized group without `=` is part of the label.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some(open) = text.find('(') {
            if text.ends_with(')') && text[open..].contains('=') {
                let label = text[..open].trim();
                let inner = &text[open + 1..text.len() - 1];
                let mut r = AlgebraRef::new(label);
                for part in inner.split(',') {
                    let (name, value) = part
                        .split_once('=')
                        .ok_or_else(|| Error::Binding(format!("expected `name=value`, found `{}`", part.trim())))?;
                    let value = parse_expr(value.trim()).map_err(Error::Parse)?;
                    r = r.with(name.trim(), value);
                }
                if label.is_empty() {
                    return Err(Error::UnknownLabel(text.to_string()));
                }
                return Ok(r);
            }
        }
        if text.is_empty() {
            return Err(Error::UnknownLabel(String::new()));
        }
        Ok(AlgebraRef::new(text))
    }

    pub fn is_bound(&self) -> bool {
        !self.bindings.is_empty()
    }
}

impl fmt::Display for AlgebraRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)?;
        if !self.bindings.is_empty() {
            let parts: Vec<String> = self.bindings.iter().map(|(n, v)| format!("{n}={v}")).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

/// A concrete algebra over one of the two number fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyAlgebra {
    Rational(LieAlgebra<Rational>),
    Quad(LieAlgebra<QuadExt>),
}

impl AnyAlgebra {
    pub fn dim(&self) -> usize {
        match self {
            AnyAlgebra::Rational(l) => l.dim(),
            AnyAlgebra::Quad(l) => l.dim(),
        }
    }

    pub fn label(&self) -> &str {
        match self {
            AnyAlgebra::Rational(l) => &l.label,
            AnyAlgebra::Quad(l) => &l.label,
        }
    }

    pub fn fingerprint(&self) -> InvariantFingerprint {
        match self {
            AnyAlgebra::Rational(l) => InvariantFingerprint::compute(l),
            AnyAlgebra::Quad(l) => InvariantFingerprint::compute(l),
        }
    }

    pub fn is_lie(&self) -> bool {
        match self {
            AnyAlgebra::Rational(l) => l.is_lie(),
            AnyAlgebra::Quad(l) => l.is_lie(),
        }
    }

    pub fn to_quad(&self) -> LieAlgebra<QuadExt> {
        match self {
            AnyAlgebra::Rational(l) => l.map_field(QuadExt::from_rational),
            AnyAlgebra::Quad(l) => l.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&LieAlgebra<Rational>> {
        match self {
            AnyAlgebra::Rational(l) => Some(l),
            AnyAlgebra::Quad(_) => None,
        }
    }
}

/// Result of [`Catalog::get`].
#[derive(Clone, Debug)]
pub enum Instance {
    Concrete(AnyAlgebra),
    /// A one-parameter family over `Q(a)`.
    Symbolic(LieAlgebra<RationalFunction<Rational>>),
}

/// Invariants of a (possibly generic) catalog reference.
#[derive(Clone, Debug)]
pub struct FamilyFingerprint {
    pub fingerprint: InvariantFingerprint,
    /// False if some specialization disagreed with the majority.
    pub stable: bool,
    /// The specializations used; empty for a fully bound reference.
    pub samples: Vec<AlgebraRef>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSet {
    pub name: String,
    pub members: Vec<AlgebraRef>,
    pub graph: Option<Vec<AlgebraRef>>,
}

impl AlgebraSet {
    /// Concrete nodes for degeneration diagrams.
    pub fn graph_nodes(&self) -> &[AlgebraRef] {
        self.graph.as_deref().unwrap_or(&self.members)
    }
}

/// One row of an expected invariant table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedRow {
    pub reference: String,
    pub h: Vec<usize>,
    /// `b_1, ..., b_n`.
    pub b: Vec<usize>,
    pub nilpotency: Option<usize>,
    pub solvability: Option<usize>,
    pub orbit_dim: usize,
}

impl ExpectedRow {
    pub fn from_fingerprint(reference: impl Into<String>, fp: &InvariantFingerprint) -> Self {
        ExpectedRow {
            reference: reference.into(),
            h: fp.h.clone(),
            b: fp.b[1..].to_vec(),
            nilpotency: fp.nilpotency,
            solvability: fp.solvability,
            orbit_dim: fp.orbit_dim,
        }
    }

    pub fn matches(&self, fp: &InvariantFingerprint) -> bool {
        self.h == fp.h
            && fp.b.get(1..) == Some(&self.b[..])
            && self.nilpotency == fp.nilpotency
            && self.solvability == fp.solvability
            && self.orbit_dim == fp.orbit_dim
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn class(c: Option<usize>) -> String {
    c.map_or_else(|| "-".to_string(), |c| c.to_string())
}

/// Tab-separated, in the column order of the expected tables.
impl fmt::Display for ExpectedRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.reference,
            join(&self.h),
            join(&self.b),
            class(self.nilpotency),
            class(self.solvability),
            self.orbit_dim
        )
    }
}

fn parse_class(s: &str, line: usize) -> Result<Option<usize>> {
    if s == "-" {
        return Ok(None);
    }
    s.parse()
        .map(Some)
        .map_err(|_| Error::Parse(ParseError::new(line, 1, format!("invalid class `{s}`"))))
}

fn parse_usizes(s: &str, line: usize) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|x| {
            x.parse()
                .map_err(|_| Error::Parse(ParseError::new(line, 1, format!("invalid count `{x}`"))))
        })
        .collect()
}

/// Tab-separated `ref  h_0..h_n  b_1..b_n  n  s  dimO`, `#` comments.
pub fn parse_expected(text: &str) -> Result<Vec<ExpectedRow>> {
    let mut rows = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
        if cols.len() != 6 {
            return Err(Error::Parse(ParseError::new(line_no, 1, "expected 6 tab-separated columns")));
        }
        rows.push(ExpectedRow {
            reference: cols[0].to_string(),
            h: parse_usizes(cols[1], line_no)?,
            b: parse_usizes(cols[2], line_no)?,
            nilpotency: parse_class(cols[3], line_no)?,
            solvability: parse_class(cols[4], line_no)?,
            orbit_dim: cols[5]
                .parse()
                .map_err(|_| Error::Parse(ParseError::new(line_no, 1, "invalid orbit dimension")))?,
        });
    }
    Ok(rows)
}

fn parse_sets(text: &str) -> Result<Vec<AlgebraSet>> {
    let mut sets: Vec<AlgebraSet> = Vec::new();
    let mut current: Option<(bool, String)> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(h) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            let (kind, name) = h
                .split_once(' ')
                .ok_or_else(|| Error::Parse(ParseError::new(ln + 1, 1, "expected `[set NAME]` or `[graph NAME]`")))?;
            let is_graph = match kind {
                "set" => false,
                "graph" => true,
                _ => return Err(Error::Parse(ParseError::new(ln + 1, 2, format!("unknown block `{kind}`")))),
            };
            let name = name.trim().to_string();
            if !is_graph {
                sets.push(AlgebraSet {
                    name: name.clone(),
                    members: Vec::new(),
                    graph: None,
                });
            } else {
                let s = sets
                    .iter_mut()
                    .find(|s| s.name == name)
                    .ok_or_else(|| Error::UnknownSet(name.clone()))?;
                s.graph = Some(Vec::new());
            }
            current = Some((is_graph, name));
            continue;
        }
        let (is_graph, name) = current
            .as_ref()
            .ok_or_else(|| Error::Parse(ParseError::new(ln + 1, 1, "member outside a block")))?;
        let r = AlgebraRef::parse(line)?;
        let s = sets.iter_mut().find(|s| &s.name == name).expect("block registered");
        if *is_graph {
            s.graph.as_mut().expect("graph block").push(r);
        } else {
            s.members.push(r);
        }
    }
    Ok(sets)
}

/// An immutable collection of algebras, sets, expected tables and certificates.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    index: HashMap<String, usize>,
    sets: Vec<AlgebraSet>,
    expected: BTreeMap<String, Vec<ExpectedRow>>,
    certificates: Vec<DegenerationCertificate>,
}

const SAMPLE_POINTS: usize = 7;

impl Catalog {
    /// The embedded catalog, or the directory named by `LIEVAR_CATALOG`.
    pub fn load() -> Result<Self> {
        match std::env::var_os("LIEVAR_CATALOG") {
            Some(dir) => Self::from_dir(Path::new(&dir)),
            None => Self::embedded(),
        }
    }

    pub fn embedded() -> Result<Self> {
        let algebras: Vec<(String, String)> = embedded::ALGEBRAS
            .iter()
            .map(|(n, t)| (n.to_string(), t.to_string()))
            .collect();
        let certs: Vec<(String, String)> = embedded::CERTS
            .iter()
            .map(|(n, t)| (n.to_string(), t.to_string()))
            .collect();
        let expected: Vec<(String, String)> = embedded::EXPECTED
            .iter()
            .map(|(n, t)| (n.to_string(), t.to_string()))
            .collect();
        Self::from_sources(&algebras, embedded::SETS, &expected, &certs)
    }

    /// Reads `algebras/*.lie`, `certs/*.cert`, `expected/*.tsv` and `sets.txt`
    /// (each optional) below `dir`.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        let read_all = |sub: &str, ext: &str| -> Result<Vec<(String, String)>> {
            let d = dir.join(sub);
            if !d.is_dir() {
                return Ok(Vec::new());
            }
            let mut files: Vec<_> = std::fs::read_dir(&d)
                .map_err(|e| Error::Io(format!("{}: {e}", d.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == ext))
                .collect();
            files.sort();
            files
                .into_iter()
                .map(|p| {
                    let text = std::fs::read_to_string(&p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                    Ok((p.file_name().unwrap().to_string_lossy().into_owned(), text))
                })
                .collect()
        };
        let sets = match std::fs::read_to_string(dir.join("sets.txt")) {
            Ok(s) => s,
            Err(_) => String::new(),
        };
        Self::from_sources(
            &read_all("algebras", "lie")?,
            &sets,
            &read_all("expected", "tsv")?,
            &read_all("certs", "cert")?,
        )
    }

    fn from_sources(
        algebras: &[(String, String)],
        sets: &str,
        expected: &[(String, String)],
        certs: &[(String, String)],
    ) -> Result<Self> {
        let mut cat = Catalog::default();
        for (file, text) in algebras {
            let e = parse_entry(text).map_err(|e| with_file(e, file))?;
            cat.insert(e)?;
        }
        cat.sets = parse_sets(sets)?;
        for s in &cat.sets {
            for r in s.members.iter().chain(s.graph.iter().flatten()) {
                cat.entry(&r.label)?;
            }
        }
        for (file, text) in expected {
            let name = file.trim_end_matches(".tsv").to_string();
            cat.expected.insert(name, parse_expected(text).map_err(|e| with_file(e, file))?);
        }
        for (file, text) in certs {
            let mut c = parse_certificate(text).map_err(|e| with_file(e, file))?;
            if c.id.is_empty() {
                c.id = file.trim_end_matches(".cert").to_string();
            }
            cat.certificates.push(c);
        }
        Ok(cat)
    }

    /// Adds an entry; names and aliases must be unique.
    pub fn insert(&mut self, e: CatalogEntry) -> Result<()> {
        let idx = self.entries.len();
        for key in std::iter::once(&e.name).chain(&e.aliases) {
            if self.index.insert(key.clone(), idx).is_some() {
                return Err(Error::Consistency(format!("duplicate catalog label `{key}`")));
            }
        }
        self.entries.push(e);
        Ok(())
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn entry(&self, label: &str) -> Result<&CatalogEntry> {
        self.index
            .get(label)
            .map(|&i| &self.entries[i])
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn sets(&self) -> &[AlgebraSet] {
        &self.sets
    }

    pub fn set(&self, name: &str) -> Result<&AlgebraSet> {
        self.sets
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownSet(name.to_string()))
    }

    pub fn expected(&self, set: &str) -> Option<&[ExpectedRow]> {
        self.expected.get(set).map(Vec::as_slice)
    }

    pub fn certificates(&self) -> &[DegenerationCertificate] {
        &self.certificates
    }

    pub fn add_certificate(&mut self, c: DegenerationCertificate) {
        self.certificates.push(c);
    }

    /// Canonical form of a reference: the entry name replaces an alias.
    pub fn canonical(&self, r: &AlgebraRef) -> Result<AlgebraRef> {
        let e = self.entry(&r.label)?;
        Ok(AlgebraRef {
            label: e.name.clone(),
            bindings: r.bindings.clone(),
        })
    }

    /// Instantiates a reference. With all parameters bound the result is
    /// concrete; with none bound and a single parameter it is symbolic.
    /// Warnings report bindings at excluded values.
    pub fn get(&self, r: &AlgebraRef) -> Result<(Instance, Vec<String>)> {
        let e = self.entry(&r.label)?;
        for (name, _) in &r.bindings {
            if e.param(name).is_none() {
                return Err(Error::Binding(format!("{} has no parameter `{name}`", e.name)));
            }
        }
        if e.params.is_empty() || r.bindings.len() == e.params.len() {
            return self.concrete(e, &r.bindings).map(|(a, w)| (Instance::Concrete(a), w));
        }
        if !r.bindings.is_empty() {
            return Err(Error::Binding(format!(
                "{} needs all of its parameters bound or none",
                e.name
            )));
        }
        if e.params.len() > 1 {
            return Err(Error::Binding(format!(
                "{} has several parameters; symbolic instantiation supports one",
                e.name
            )));
        }
        let p = e.params[0].name.clone();
        let a = e.instantiate::<RationalFunction<Rational>>(&|s| (s == p).then(RationalFunction::var))?;
        Ok((Instance::Symbolic(a), Vec::new()))
    }

    /// Like [`Catalog::get`] but requires a concrete result.
    pub fn get_concrete(&self, r: &AlgebraRef) -> Result<AnyAlgebra> {
        match self.get(r)?.0 {
            Instance::Concrete(a) => Ok(a),
            Instance::Symbolic(_) => Err(Error::Binding(format!("{r} has unbound parameters"))),
        }
    }

    fn concrete(&self, e: &CatalogEntry, bindings: &[(String, Expr)]) -> Result<(AnyAlgebra, Vec<String>)> {
        let mut warnings = Vec::new();
        let needs_w = e.field == "Q(w)"
            || bindings.iter().any(|(_, v)| v.symbols().iter().any(|s| s == "w"))
            || e.brackets.iter().any(|b| b.terms.iter().any(|t| t.coef.symbols().iter().any(|s| s == "w")));
        for (name, v) in bindings {
            if v.symbols().iter().any(|s| s != "w") {
                return Err(Error::Binding(format!("value of `{name}` must be a constant")));
            }
        }
        let values: Vec<(String, QuadExt)> = bindings
            .iter()
            .map(|(n, v)| Ok((n.clone(), eval_expr::<QuadExt>(v, &|s| (s == "w").then(QuadExt::omega))?)))
            .collect::<Result<_>>()?;
        for (name, val) in &values {
            let spec = e.param(name).expect("checked");
            for x in &spec.exclude {
                if eval_expr::<QuadExt>(x, &|s| (s == "w").then(QuadExt::omega))? == *val {
                    warnings.push(format!("{}: {name} = {val} is an excluded value", e.name));
                }
            }
        }
        let lookup = |s: &str| values.iter().find(|(n, _)| n == s).map(|(_, v)| v.clone());
        let mut alg = if needs_w {
            AnyAlgebra::Quad(e.instantiate::<QuadExt>(&|s| if s == "w" { Some(QuadExt::omega()) } else { lookup(s) })?)
        } else {
            AnyAlgebra::Rational(e.instantiate::<Rational>(&|s| lookup(s).map(|v| v.a))?)
        };
        let label = AlgebraRef {
            label: e.name.clone(),
            bindings: bindings.to_vec(),
        }
        .to_string();
        match &mut alg {
            AnyAlgebra::Rational(l) => l.label = label,
            AnyAlgebra::Quad(l) => l.label = label,
        }
        Ok((alg, warnings))
    }

    /// Rational values of a parameter that random specialization must avoid.
    fn avoided(spec: &ParamSpec) -> Vec<Rational> {
        spec.exclude
            .iter()
            .chain(&spec.special)
            .filter_map(|x| eval_expr::<Rational>(x, &|_| None).ok())
            .collect()
    }

    /// Fingerprint of a reference. Unbound parameters are specialized at
    /// seven seeded random rationals away from excluded and special values;
    /// the majority fingerprint is returned.
    pub fn fingerprint(&self, r: &AlgebraRef) -> Result<FamilyFingerprint> {
        let e = self.entry(&r.label)?;
        let free: Vec<&ParamSpec> = e
            .params
            .iter()
            .filter(|p| !r.bindings.iter().any(|(n, _)| *n == p.name))
            .collect();
        if free.is_empty() {
            let fp = self.get_concrete(r)?.fingerprint();
            return Ok(FamilyFingerprint {
                fingerprint: fp,
                stable: true,
                samples: Vec::new(),
            });
        }
        let seed = r.to_string().bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
        });
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut samples = Vec::new();
        while samples.len() < SAMPLE_POINTS {
            let mut s = r.clone();
            for p in &free {
                let avoid = Self::avoided(p);
                let v = loop {
                    let v = Rational::new(rng.gen_range(-97..=97), rng.gen_range(1..=13)).expect("nonzero denominator");
                    if !avoid.contains(&v) {
                        break v;
                    }
                };
                s = s.with(&p.name, parse_expr(&v.to_string()).expect("rational literal"));
            }
            if self.get_concrete(&s).is_ok() && !samples.contains(&s) {
                samples.push(s);
            }
        }
        let fps: Vec<InvariantFingerprint> = samples
            .par_iter()
            .map(|s| self.get_concrete(s).map(|a| a.fingerprint()))
            .collect::<Result<_>>()?;
        let mut counts: Vec<(usize, &InvariantFingerprint)> = Vec::new();
        for fp in &fps {
            match counts.iter_mut().find(|(_, f)| *f == fp) {
                Some((c, _)) => *c += 1,
                None => counts.push((1, fp)),
            }
        }
        let (_, best) = counts.iter().max_by_key(|(c, _)| *c).expect("samples");
        Ok(FamilyFingerprint {
            fingerprint: (*best).clone(),
            stable: counts.len() == 1,
            samples,
        })
    }
}

fn with_file(e: Error, file: &str) -> Error {
    match e {
        Error::Parse(p) => Error::Parse(ParseError {
            message: format!("{file}: {}", p.message),
            ..p
        }),
        other => Error::Consistency(format!("{file}: {other}")),
    }
}
