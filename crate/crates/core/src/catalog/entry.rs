use std::fmt::Write as _;

use crate::error::{Error, ParseError, Result};
use crate::field::{eval_expr, parse_expr, Expr, Field};
use crate::liealg::{LieAlgebra, Metadata};

/// A family parameter with the values that must be avoided (`exclude`) and
/// the values where invariants jump (`special`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: String,
    pub exclude: Vec<Expr>,
    pub special: Vec<Expr>,
}

/// One `coef x<k>` summand of a bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coef: Expr,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketLine {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<Term>,
}

/// One algebra as stored in a catalog file.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CatalogEntry {
    pub comments: Vec<String>,
    pub name: String,
    pub aliases: Vec<String>,
    pub dim: usize,
    pub field: String,
    pub params: Vec<ParamSpec>,
    pub flags: Vec<String>,
    pub notes: Vec<String>,
    pub brackets: Vec<BracketLine>,
}

impl CatalogEntry {
    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag)
    }

    pub fn is_type_one(&self) -> bool {
        self.has_flag("type1")
    }

    pub fn is_excluded(&self) -> bool {
        self.has_flag("excluded")
    }

    pub fn param(&self, name: &str) -> Option<&ParamSpec> {
        self.params.iter().find(|p| p.name == name)
    }

    /// Builds the algebra with every identifier resolved by `resolve`.
    pub fn instantiate<F: Field>(&self, resolve: &dyn Fn(&str) -> Option<F>) -> Result<LieAlgebra<F>> {
        let n = self.dim;
        let mut l = LieAlgebra::<F>::abelian(n);
        let mut seen = std::collections::HashSet::new();
        for b in &self.brackets {
            if !seen.insert((b.i.min(b.j), b.i.max(b.j))) {
                return Err(Error::Consistency(format!(
                    "bracket [x{}, x{}] given twice in {}",
                    b.i, b.j, self.name
                )));
            }
            let mut v = vec![F::zero(); n];
            for t in &b.terms {
                v[t.k - 1] = v[t.k - 1].add(&eval_expr(&t.coef, resolve)?);
            }
            if b.i > b.j {
                v = v.iter().map(F::neg).collect();
                l.set_bracket(b.j - 1, b.i - 1, &v);
            } else {
                l.set_bracket(b.i - 1, b.j - 1, &v);
            }
        }
        l.label = self.name.clone();
        l.params = self.params.iter().map(|p| p.name.clone()).collect();
        l.meta = Metadata {
            type_one: l.is_type_one(),
            notes: self.notes.clone(),
        };
        Ok(l)
    }

    pub fn serialize(&self) -> String {
        let mut s = String::new();
        for c in &self.comments {
            let _ = writeln!(s, "#{c}");
        }
        let _ = writeln!(s, "name: {}", self.name);
        for a in &self.aliases {
            let _ = writeln!(s, "alias: {a}");
        }
        let _ = writeln!(s, "dim: {}", self.dim);
        let _ = writeln!(s, "field: {}", self.field);
        for p in &self.params {
            let mut parts = Vec::new();
            let list = |v: &[Expr]| v.iter().map(Expr::to_string).collect::<Vec<_>>().join(", ");
            if !p.exclude.is_empty() {
                parts.push(format!("exclude: {}", list(&p.exclude)));
            }
            if !p.special.is_empty() {
                parts.push(format!("special: {}", list(&p.special)));
            }
            if parts.is_empty() {
                let _ = writeln!(s, "params: {}", p.name);
            } else {
                let _ = writeln!(s, "params: {} ({})", p.name, parts.join("; "));
            }
        }
        if !self.flags.is_empty() {
            let _ = writeln!(s, "flags: {}", self.flags.join(", "));
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        for b in &self.brackets {
            let terms: Vec<String> = b
                .terms
                .iter()
                .map(|t| {
                    if t.coef.is_product() {
                        format!("{} x{}", t.coef, t.k)
                    } else {
                        format!("({}) x{}", t.coef, t.k)
                    }
                })
                .collect();
            let _ = writeln!(s, "bracket {} {} = {}", b.i, b.j, terms.join(" + "));
        }
        s
    }
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse(ParseError::new(line, col, msg))
}

fn parse_index(tok: &str, line: usize, col: usize, dim: usize) -> Result<usize> {
    let v: usize = tok
        .parse()
        .map_err(|_| err(line, col, format!("expected a basis index, found `{tok}`")))?;
    if v == 0 || v > dim {
        return Err(err(line, col, format!("index {v} out of range 1..={dim}")));
    }
    Ok(v)
}

fn parse_scalar(text: &str, line: usize, col: usize) -> Result<Expr> {
    parse_expr(text).map_err(|e| Error::Parse(e.at_line(line, col - 1)))
}

/// `coef x<k> + coef x<k> ...`; a missing coefficient means 1.
fn parse_terms(rhs: &str, line: usize, col0: usize, dim: usize) -> Result<Vec<Term>> {
    let bytes = rhs.as_bytes();
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut seg_start = 0;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'x' if depth == 0
                && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)
                && (i == 0 || !(bytes[i - 1].is_ascii_alphanumeric() || bytes[i - 1] == b'_')) =>
            {
                let mut e = i + 1;
                while e < bytes.len() && bytes[e].is_ascii_digit() {
                    e += 1;
                }
                let k = parse_index(&rhs[i + 1..e], line, col0 + i + 1, dim)?;
                let seg = &rhs[seg_start..i];
                let lead = seg.len() - seg.trim_start().len();
                let mut c = seg.trim();
                let mut negate = false;
                if terms.is_empty() {
                    if c.starts_with('+') {
                        return Err(err(line, col0 + seg_start + lead, "leading `+`"));
                    }
                } else if let Some(rest) = c.strip_prefix('+') {
                    c = rest.trim_start();
                } else if let Some(rest) = c.strip_prefix('-') {
                    c = rest.trim_start();
                    negate = true;
                } else {
                    return Err(err(line, col0 + seg_start + lead, "expected `+` or `-` between terms"));
                }
                let coef = match c {
                    "" => Expr::int(1),
                    "-" => Expr::int(-1),
                    _ => {
                        let at = col0 + seg_start + lead + (seg.trim().len() - c.len());
                        parse_scalar(c, line, at)?
                    }
                };
                let coef = if negate {
                    match coef {
                        Expr::Int(n) => Expr::Int(-n),
                        other => Expr::Neg(Box::new(other)),
                    }
                } else {
                    coef
                };
                terms.push(Term { coef, k });
                seg_start = e;
                i = e;
                continue;
            }
            _ => {}
        }
        i += 1;
    }
    let tail = rhs[seg_start..].trim();
    if !tail.is_empty() {
        return Err(err(line, col0 + seg_start, format!("dangling text `{tail}` after last term")));
    }
    if terms.is_empty() {
        return Err(err(line, col0, "empty bracket right-hand side"));
    }
    Ok(terms)
}

fn parse_param(text: &str, line: usize, col: usize) -> Result<ParamSpec> {
    let (name, rest) = match text.find('(') {
        Some(p) => (text[..p].trim(), Some(&text[p..])),
        None => (text.trim(), None),
    };
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') || name == "w" {
        return Err(err(line, col, format!("invalid parameter name `{name}`")));
    }
    let mut spec = ParamSpec {
        name: name.to_string(),
        exclude: Vec::new(),
        special: Vec::new(),
    };
    if let Some(rest) = rest {
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.trim_end().strip_suffix(')'))
            .ok_or_else(|| err(line, col, "unbalanced parameter options"))?;
        for part in inner.split(';') {
            let (key, vals) = part
                .split_once(':')
                .ok_or_else(|| err(line, col, format!("expected `key: values` in `{}`", part.trim())))?;
            let vals: Vec<Expr> = vals
                .split(',')
                .map(|v| parse_scalar(v.trim(), line, col))
                .collect::<Result<_>>()?;
            match key.trim() {
                "exclude" => spec.exclude = vals,
                "special" => spec.special = vals,
                other => return Err(err(line, col, format!("unknown parameter option `{other}`"))),
            }
        }
    }
    Ok(spec)
}

/// Parses one catalog file.
pub fn parse_entry(text: &str) -> Result<CatalogEntry> {
    let mut e = CatalogEntry::default();
    let mut dim: Option<usize> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(c) = raw.trim_start().strip_prefix('#') {
            e.comments.push(c.to_string());
            continue;
        }
        let indent = raw.len() - raw.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix("bracket") {
            let n = dim.ok_or_else(|| err(line, 1, "`dim:` must precede brackets"))?;
            let (lhs, rhs) = rest
                .split_once('=')
                .ok_or_else(|| err(line, indent + 1, "expected `=` in bracket line"))?;
            let idx: Vec<&str> = lhs.split_whitespace().collect();
            if idx.len() != 2 {
                return Err(err(line, indent + 8, "expected two basis indices"));
            }
            let i = parse_index(idx[0], line, indent + 9, n)?;
            let j = parse_index(idx[1], line, indent + 9, n)?;
            if i == j {
                return Err(err(line, indent + 9, "bracket of a basis vector with itself"));
            }
            let rhs_col = indent + "bracket".len() + lhs.len() + 2;
            let terms = parse_terms(rhs, line, rhs_col, n)?;
            if e.brackets.iter().any(|b| (b.i, b.j) == (i, j) || (b.i, b.j) == (j, i)) {
                return Err(err(line, 1, format!("bracket [x{i}, x{j}] given twice")));
            }
            e.brackets.push(BracketLine { i, j, terms });
            continue;
        }
        let (key, value) = trimmed
            .split_once(':')
            .ok_or_else(|| err(line, indent + 1, format!("unrecognized line `{trimmed}`")))?;
        let value = value.trim();
        let vcol = indent + key.len() + 2 + (trimmed[key.len() + 1..].len() - trimmed[key.len() + 1..].trim_start().len());
        match key.trim() {
            "name" => e.name = value.to_string(),
            "alias" => e.aliases.push(value.to_string()),
            "dim" => {
                let d = value
                    .parse()
                    .map_err(|_| err(line, vcol, format!("invalid dimension `{value}`")))?;
                dim = Some(d);
                e.dim = d;
            }
            "field" => {
                if value != "Q" && value != "Q(w)" {
                    return Err(err(line, vcol, format!("unsupported field `{value}`")));
                }
                e.field = value.to_string();
            }
            "params" => e.params.push(parse_param(value, line, vcol)?),
            "flags" => e.flags.extend(value.split(',').map(|f| f.trim().to_string()).filter(|f| !f.is_empty())),
            "note" => e.notes.push(value.to_string()),
            other => return Err(err(line, indent + 1, format!("unknown key `{other}`"))),
        }
    }
    if e.name.is_empty() {
        return Err(err(1, 1, "missing `name:`"));
    }
    if dim.is_none() {
        return Err(err(1, 1, "missing `dim:`"));
    }
    if e.field.is_empty() {
        e.field = "Q".into();
    }
    let known: Vec<&str> = e.params.iter().map(|p| p.name.as_str()).collect();
    for b in &e.brackets {
        for t in &b.terms {
            for s in t.coef.symbols() {
                if s != "w" && !known.contains(&s.as_str()) {
                    return Err(Error::Binding(format!("undeclared parameter `{s}` in {}", e.name)));
                }
            }
        }
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    const N3: &str = "name: n_3\ndim: 3\nfield: Q\nbracket 1 2 = 1 x3\n";

    #[test]
    fn heisenberg() {
        let e = parse_entry(N3).unwrap();
        let l = e.instantiate::<Rational>(&|_| None).unwrap();
        assert_eq!(*l.constant(0, 1, 2), Rational::from(1));
        assert_eq!(*l.constant(1, 0, 2), Rational::from(-1));
        assert_eq!(e.serialize(), N3);
    }

    #[test]
    fn parametric_round_trip() {
        let text = "# sample\nname: fam\nalias: f\ndim: 7\nfield: Q\nparams: a (exclude: 0; special: -2, w, 1-w)\nflags: type1\nnote: test\nbracket 2 5 = (1-a) x7\nbracket 3 4 = a x7\nbracket 1 2 = 1 x3 + -1/2 x4\n";
        let e = parse_entry(text).unwrap();
        assert_eq!(e.serialize(), text);
        assert_eq!(parse_entry(&e.serialize()).unwrap(), e);
        let l = e
            .instantiate::<Rational>(&|s| (s == "a").then(|| Rational::from(-2)))
            .unwrap();
        assert_eq!(*l.constant(1, 4, 6), Rational::from(3));
    }

    #[test]
    fn flexible_terms() {
        let e = parse_entry("name: t\ndim: 3\nbracket 1 2 = x1 - 2 x2 + x3\n").unwrap();
        let coefs: Vec<String> = e.brackets[0].terms.iter().map(|t| t.coef.to_string()).collect();
        assert_eq!(coefs, ["1", "-2", "1"]);
    }

    #[test]
    fn errors_carry_positions() {
        let bad = "name: bad\ndim: 7\nbracket 1 8 = 1 x9\n";
        match parse_entry(bad) {
            Err(Error::Parse(p)) => assert_eq!(p.span.line, 3),
            other => panic!("{other:?}"),
        }
        let bad = "name: bad\ndim: 3\nbracket 1 2 = 1 x3\nbracket 2 1 = 1 x3\n";
        assert!(matches!(parse_entry(bad), Err(Error::Parse(_))));
        let bad = "name: bad\ndim: 3\nbracket 1 2 = b x3\n";
        assert!(matches!(parse_entry(bad), Err(Error::Binding(_))));
        let bad = "name: bad\ndim: 3\nbracket 1 2 = (1 x3\n";
        assert!(parse_entry(bad).is_err());
    }
}
