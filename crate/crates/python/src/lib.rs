//! Python module `lievar_py`.

use pyo3::exceptions::{PyKeyError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use lievar::catalog::{AlgebraRef, AnyAlgebra, Catalog as CoreCatalog};
use lievar::degeneration::{parse_certificate, CertStore, Comparator, InvariantFingerprint, Verdict};
use lievar::hasse;
use lievar::{Error, Rational};

fn err(e: Error) -> PyErr {
    match e {
        Error::UnknownLabel(_) | Error::UnknownSet(_) => PyKeyError::new_err(e.to_string()),
        Error::Parse(_) | Error::Binding(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Structure constants over Q or Q(w), w^2 = w - 1.
#[pyclass(name = "LieAlgebra", module = "lievar_py", frozen)]
pub struct PyLieAlgebra {
    inner: AnyAlgebra,
}

#[pymethods]
impl PyLieAlgebra {
    /// `brackets` holds `(i, j, [(k, "coef"), ...])` with 1-based indices and rational coefficients.
    #[new]
    #[pyo3(signature = (dim, brackets, label = "L"))]
    fn new(dim: usize, brackets: Vec<(usize, usize, Vec<(usize, String)>)>, label: &str) -> PyResult<Self> {
        let mut rows = Vec::new();
        for (i, j, terms) in brackets {
            let terms = terms
                .into_iter()
                .map(|(k, c)| {
                    c.trim()
                        .parse::<Rational>()
                        .map(|c| (k, c))
                        .map_err(|_| PyValueError::new_err(format!("invalid rational `{c}`")))
                })
                .collect::<PyResult<Vec<_>>>()?;
            rows.push((i, j, terms));
        }
        let l = lievar::liealg::LieAlgebra::from_brackets(dim, label, &rows).map_err(err)?;
        Ok(PyLieAlgebra {
            inner: AnyAlgebra::Rational(l),
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    fn is_lie(&self) -> bool {
        self.inner.is_lie()
    }

    /// Nonzero constants `(i, j, k, value)` with `i < j`, 1-based.
    fn brackets(&self) -> Vec<(usize, usize, usize, String)> {
        fn collect<F: lievar::Field>(l: &lievar::liealg::LieAlgebra<F>) -> Vec<(usize, usize, usize, String)> {
            let n = l.dim();
            let mut out = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    for k in 0..n {
                        let c = l.constant(i, j, k);
                        if !c.is_zero() {
                            out.push((i + 1, j + 1, k + 1, c.to_string()));
                        }
                    }
                }
            }
            out
        }
        match &self.inner {
            AnyAlgebra::Rational(l) => collect(l),
            AnyAlgebra::Quad(l) => collect(l),
        }
    }

    fn invariants(&self) -> Invariants {
        Invariants::from(self.inner.fingerprint())
    }

    fn __repr__(&self) -> String {
        format!("LieAlgebra('{}', dim={})", self.inner.label(), self.inner.dim())
    }
}

/// Degeneration invariants of one algebra.
#[pyclass(module = "lievar_py", frozen, get_all)]
pub struct Invariants {
    pub h: Vec<usize>,
    pub b: Vec<usize>,
    pub z: Vec<usize>,
    pub center_dim: usize,
    pub derived_dim: usize,
    pub derivation_dim: usize,
    pub orbit_dim: usize,
    pub nilpotency: Option<usize>,
    pub solvability: Option<usize>,
}

impl From<InvariantFingerprint> for Invariants {
    fn from(fp: InvariantFingerprint) -> Self {
        Invariants {
            h: fp.h,
            b: fp.b,
            z: fp.z,
            center_dim: fp.center_dim,
            derived_dim: fp.derived_dim,
            derivation_dim: fp.derivation_dim,
            orbit_dim: fp.orbit_dim,
            nilpotency: fp.nilpotency,
            solvability: fp.solvability,
        }
    }
}

#[pymethods]
impl Invariants {
    fn __repr__(&self) -> String {
        format!(
            "Invariants(h={:?}, b={:?}, n={:?}, s={:?}, orbit_dim={})",
            self.h, self.b, self.nilpotency, self.solvability, self.orbit_dim
        )
    }
}

/// The shipped catalog of algebras, sets and certificates.
#[pyclass(name = "Catalog", module = "lievar_py", frozen)]
pub struct PyCatalog {
    inner: CoreCatalog,
    store: CertStore,
}

#[pymethods]
impl PyCatalog {
    #[new]
    fn new() -> PyResult<Self> {
        let inner = CoreCatalog::load().map_err(err)?;
        let store = CertStore::verified(&inner).map_err(err)?;
        Ok(PyCatalog { inner, store })
    }

    fn labels(&self) -> Vec<String> {
        self.inner.entries().iter().map(|e| e.name.clone()).collect()
    }

    fn sets(&self) -> Vec<String> {
        self.inner.sets().iter().map(|s| s.name.clone()).collect()
    }

    fn set_members(&self, name: &str) -> PyResult<Vec<String>> {
        let s = self.inner.set(name).map_err(err)?;
        Ok(s.members.iter().map(ToString::to_string).collect())
    }

    /// Concrete algebra for a reference such as `g_I(a=1-w)`.
    fn get(&self, reference: &str) -> PyResult<PyLieAlgebra> {
        let r = AlgebraRef::parse(reference).map_err(err)?;
        Ok(PyLieAlgebra {
            inner: self.inner.get_concrete(&r).map_err(err)?,
        })
    }

    /// Invariants of a reference; unbound parameters are sampled.
    fn invariants(&self, reference: &str) -> PyResult<Invariants> {
        let r = AlgebraRef::parse(reference).map_err(err)?;
        Ok(self.inner.fingerprint(&r).map_err(err)?.fingerprint.into())
    }

    /// `"OK"` or the failure, for certificate text.
    fn verify(&self, text: &str) -> PyResult<String> {
        let c = parse_certificate(text).map_err(err)?;
        Ok(match c.verify(&self.inner) {
            Ok(Verdict::Ok) => "OK".into(),
            Ok(v) => format!("FAIL {v}"),
            Err(e) => format!("FAIL {e}"),
        })
    }

    /// `(id, verdict)` for the shipped corpus.
    fn verify_all(&self) -> Vec<(String, String)> {
        let certs = self.inner.certificates();
        certs
            .iter()
            .zip(lievar::degeneration::verify_all(certs, &self.inner))
            .map(|(c, v)| {
                let v = match v {
                    Ok(v) => v.to_string(),
                    Err(e) => format!("FAIL {e}"),
                };
                (c.id.clone(), v)
            })
            .collect()
    }

    /// `DEGENERATES ...`, `OBSTRUCTED ...` or `UNKNOWN`.
    fn compare(&self, src: &str, dst: &str) -> PyResult<String> {
        let cmp = Comparator::new(&self.inner, &self.store);
        let a = AlgebraRef::parse(src).map_err(err)?;
        let b = AlgebraRef::parse(dst).map_err(err)?;
        Ok(cmp.compare(&a, &b).map_err(err)?.to_string())
    }

    /// DOT text of a set's degeneration diagram.
    #[pyo3(signature = (set, reduce = true, show_unknown = false))]
    fn hasse(&self, set: &str, reduce: bool, show_unknown: bool) -> PyResult<String> {
        let cmp = Comparator::new(&self.inner, &self.store);
        let mut g = hasse::build(self.inner.set(set).map_err(err)?, &cmp).map_err(err)?;
        if reduce {
            g = hasse::transitive_reduction(&g).map_err(err)?;
        }
        Ok(hasse::emit_dot(&g, show_unknown))
    }
}

#[pymodule]
fn lievar_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLieAlgebra>()?;
    m.add_class::<Invariants>()?;
    m.add_class::<PyCatalog>()?;
    Ok(())
}
