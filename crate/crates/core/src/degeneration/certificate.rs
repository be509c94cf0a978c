use std::fmt;

use rayon::prelude::*;

use super::action::{apply_base_change, psg_limit_with_inverse};
use crate::catalog::{AlgebraRef, AnyAlgebra, Catalog};
use crate::error::{Error, ParseError, Result};
use crate::field::{eval_expr, parse_expr, Expr, Field, QuadExt, Rational, RationalFunction};
use crate::liealg::LieAlgebra;
use crate::linalg::Matrix;

/// Whether the printed matrix is `g_t` or `g_t⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixKind {
    G,
    GInverse,
}

impl MatrixKind {
    fn keyword(self) -> &'static str {
        match self {
            MatrixKind::G => "g",
            MatrixKind::GInverse => "g_inverse",
        }
    }
}

/// A one-parameter-subgroup degeneration `source → target`, stored with its
/// scalar expressions verbatim so that printing round-trips.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationCertificate {
    pub id: String,
    pub notes: Vec<String>,
    pub source: AlgebraRef,
    pub target: AlgebraRef,
    pub kind: MatrixKind,
    /// Rows of expressions in `t` (and `w`).
    pub matrix: Vec<Vec<Expr>>,
    /// Base-field matrix applied to the limit before comparison.
    pub post_iso: Option<Vec<Vec<Expr>>>,
}

/// Outcome of a verification that ran to completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    /// First differing constant `c_ij^k` (1-based), limit value vs target value.
    Mismatch {
        index: (usize, usize, usize),
        got: String,
        expected: String,
    },
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Ok => f.write_str("OK"),
            Verdict::Mismatch {
                index: (i, j, k),
                got,
                expected,
            } => write!(f, "MISMATCH c[{i},{j}]^{k}: limit {got}, target {expected}"),
        }
    }
}

fn parse_row(line: &str, line_no: usize) -> Result<Vec<Expr>> {
    let mut row = Vec::new();
    let mut col = 0;
    for tok in line.split_whitespace() {
        let off = line[col..].find(tok).expect("token in line") + col;
        col = off + tok.len();
        row.push(parse_expr(tok).map_err(|e| e.at_line(line_no, off))?);
    }
    Ok(row)
}

fn check_symbols(rows: &[Vec<Expr>], allowed: &[&str], line_no: usize) -> Result<()> {
    for e in rows.iter().flatten() {
        if let Some(s) = e.symbols().into_iter().find(|s| !allowed.contains(&s.as_str())) {
            return Err(Error::Parse(ParseError::new(line_no, 1, format!("unexpected symbol `{s}`"))));
        }
    }
    Ok(())
}

/// Parses the certificate text format.
pub fn parse_certificate(text: &str) -> Result<DegenerationCertificate> {
    let mut id = String::new();
    let mut notes = Vec::new();
    let mut source = None;
    let mut target = None;
    let mut kind = None;
    let mut matrix: Vec<Vec<Expr>> = Vec::new();
    let mut post: Option<Vec<Vec<Expr>>> = None;
    let mut matrix_line = 0;
    let mut post_line = 0;
    let mut last_line = 0;
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        last_line = line_no;
        let line = raw.trim_end();
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let header = line.split_once(':').filter(|(k, _)| {
            matches!(k.trim(), "id" | "notes" | "source" | "target" | "matrix" | "postiso")
        });
        if let Some((key, value)) = header {
            let value = value.trim();
            let err = |m: &str| Error::Parse(ParseError::new(line_no, 1, m));
            match key.trim() {
                "id" => id = value.to_string(),
                "notes" => notes.push(value.to_string()),
                "source" => source = Some(AlgebraRef::parse(value).map_err(|e| relabel(e, line_no))?),
                "target" => target = Some(AlgebraRef::parse(value).map_err(|e| relabel(e, line_no))?),
                "matrix" => {
                    if kind.is_some() {
                        return Err(err("duplicate `matrix:` header"));
                    }
                    kind = Some(match value {
                        "g" => MatrixKind::G,
                        "g_inverse" => MatrixKind::GInverse,
                        _ => return Err(err("expected `matrix: g` or `matrix: g_inverse`")),
                    });
                    matrix_line = line_no;
                }
                _ => {
                    if kind.is_none() || post.is_some() {
                        return Err(err("`postiso:` must follow the matrix"));
                    }
                    post = Some(Vec::new());
                    post_line = line_no;
                }
            }
            continue;
        }
        let row = parse_row(line, line_no)?;
        match (&mut post, kind) {
            (Some(p), _) => p.push(row),
            (None, Some(_)) => matrix.push(row),
            (None, None) => {
                return Err(Error::Parse(ParseError::new(line_no, 1, "matrix row before `matrix:` header")))
            }
        }
    }
    let missing = |what: &str| Error::Parse(ParseError::new(last_line.max(1), 1, format!("missing `{what}:`")));
    let source = source.ok_or_else(|| missing("source"))?;
    let target = target.ok_or_else(|| missing("target"))?;
    let kind = kind.ok_or_else(|| missing("matrix"))?;
    let n = matrix.len();
    if n == 0 || matrix.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(ParseError::new(matrix_line, 1, "matrix must be square and non-empty")));
    }
    check_symbols(&matrix, &["t", "w"], matrix_line)?;
    if let Some(p) = &post {
        if p.len() != n || p.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(ParseError::new(post_line, 1, format!("postiso must be {n}x{n}"))));
        }
        check_symbols(p, &["w"], post_line)?;
    }
    Ok(DegenerationCertificate {
        id,
        notes,
        source,
        target,
        kind,
        matrix,
        post_iso: post,
    })
}

fn relabel(e: Error, line: usize) -> Error {
    match e {
        Error::Parse(p) => Error::Parse(ParseError { span: crate::error::Span { line, col: p.span.col }, ..p }),
        other => other,
    }
}

fn write_rows(f: &mut fmt::Formatter<'_>, rows: &[Vec<Expr>]) -> fmt::Result {
    for r in rows {
        let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
        writeln!(f, "{}", cells.join(" "))?;
    }
    Ok(())
}

impl fmt::Display for DegenerationCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.id.is_empty() {
            writeln!(f, "id: {}", self.id)?;
        }
        for n in &self.notes {
            writeln!(f, "notes: {n}")?;
        }
        writeln!(f, "source: {}", self.source)?;
        writeln!(f, "target: {}", self.target)?;
        writeln!(f, "matrix: {}", self.kind.keyword())?;
        write_rows(f, &self.matrix)?;
        if let Some(p) = &self.post_iso {
            writeln!(f, "postiso:")?;
            write_rows(f, p)?;
        }
        Ok(())
    }
}

fn uses_w(rows: &[Vec<Expr>]) -> bool {
    rows.iter().flatten().any(|e| e.symbols().iter().any(|s| s == "w"))
}

impl DegenerationCertificate {
    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    /// `g_t` and `g_t⁻¹` over `F(t)`; `w` resolves to `omega` when given.
    pub fn matrices<F: Field>(
        &self,
        omega: Option<F>,
    ) -> Result<(Matrix<RationalFunction<F>>, Matrix<RationalFunction<F>>)> {
        let resolve = |s: &str| match s {
            "t" => Some(RationalFunction::var()),
            "w" => omega.clone().map(RationalFunction::constant),
            _ => None,
        };
        let rows = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|e| eval_expr(e, &resolve)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_rows(rows)?;
        let inv = m.inverse()?;
        Ok(match self.kind {
            MatrixKind::G => (m, inv),
            MatrixKind::GInverse => (inv, m),
        })
    }

    fn post_matrix<F: Field>(&self, omega: Option<F>) -> Result<Option<Matrix<F>>> {
        let Some(p) = &self.post_iso else { return Ok(None) };
        let resolve = |s: &str| (s == "w").then(|| omega.clone()).flatten();
        let rows = p
            .iter()
            .map(|r| r.iter().map(|e| eval_expr(e, &resolve)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(Matrix::from_rows(rows)?))
    }

    /// The limit algebra after the post-isomorphism.
    pub fn limit<F: Field>(&self, source: &LieAlgebra<F>, omega: Option<F>) -> Result<LieAlgebra<F>> {
        if source.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: source.dim(),
                got: self.dim(),
            });
        }
        let (g, g_inv) = self.matrices(omega.clone())?;
        let mut lim = psg_limit_with_inverse(source, &g, &g_inv)?;
        if let Some(p) = self.post_matrix(omega)? {
            lim = apply_base_change(&lim, &p)?;
        }
        Ok(lim)
    }

    /// Checks that the limit equals the target's structure constants exactly.
    pub fn verify(&self, catalog: &Catalog) -> Result<Verdict> {
        let src = catalog.get_concrete(&self.source)?;
        let dst = catalog.get_concrete(&self.target)?;
        let quad = uses_w(&self.matrix)
            || self.post_iso.as_deref().is_some_and(uses_w)
            || matches!(src, AnyAlgebra::Quad(_))
            || matches!(dst, AnyAlgebra::Quad(_));
        if quad {
            compare(&self.limit(&src.to_quad(), Some(QuadExt::omega()))?, &dst.to_quad())
        } else {
            let (AnyAlgebra::Rational(s), AnyAlgebra::Rational(d)) = (&src, &dst) else {
                unreachable!("rational case")
            };
            compare(&self.limit::<Rational>(s, None)?, d)
        }
    }
}

fn compare<F: Field>(got: &LieAlgebra<F>, want: &LieAlgebra<F>) -> Result<Verdict> {
    let n = want.dim();
    if got.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: got.dim(),
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let (a, b) = (got.constant(i, j, k), want.constant(i, j, k));
                if a != b {
                    return Ok(Verdict::Mismatch {
                        index: (i + 1, j + 1, k + 1),
                        got: a.to_string(),
                        expected: b.to_string(),
                    });
                }
            }
        }
    }
    Ok(Verdict::Ok)
}

/// Verifies certificates concurrently; results are in input order.
pub fn verify_all(certs: &[DegenerationCertificate], catalog: &Catalog) -> Vec<Result<Verdict>> {
    certs.par_iter().map(|c| c.verify(catalog)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEIS: &str = "id: shrink\nnotes: contraction\nsource: n_3\ntarget: C^3\nmatrix: g\nt^-1 0 0\n0 t^-1 0\n0 0 t^-1\n";

    #[test]
    fn round_trip() {
        let c = parse_certificate(HEIS).unwrap();
        assert_eq!(c.kind, MatrixKind::G);
        assert_eq!(c.to_string(), HEIS);
        assert_eq!(parse_certificate(&c.to_string()).unwrap(), c);
        let text = "source: g_I (a=-2)\ntarget: g_C\nmatrix: g_inverse\n1 0\n0 t^4/2\npostiso:\n0 1\n1 0\n";
        let c = parse_certificate(text).unwrap();
        assert_eq!(c.source.to_string(), "g_I(a=-2)");
        assert!(c.post_iso.is_some());
        assert_eq!(parse_certificate(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn parse_errors() {
        let e = parse_certificate("source: a\ntarget: b\nmatrix: g\n1 0\n0 )\n").unwrap_err();
        match e {
            Error::Parse(p) => assert_eq!((p.span.line, p.span.col), (5, 3)),
            other => panic!("{other:?}"),
        }
        assert!(parse_certificate("source: a\ntarget: b\nmatrix: g\n1 0\n").is_err());
        assert!(parse_certificate("source: a\ntarget: b\nmatrix: h\n1\n").is_err());
        assert!(parse_certificate("source: a\ntarget: b\nmatrix: g\ns\n").is_err());
    }
}
