//! Multivariate polynomials over `Q` and Buchberger's algorithm, enough to
//! decide solvability of small polynomial systems over `C`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::field::{Field, Rational};

/// Exponent vector, ordered by graded reverse lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(vec![0; nvars]), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(e), Rational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_nonzero_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().unwrap().degree() == 0
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.neg());
        }
        r
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut r = Self::zero(self.nvars);
        for (m, x) in &self.terms {
            r.add_term(m.clone(), x.mul(c));
        }
        r
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        let mut r = Self::zero(self.nvars);
        for (k, x) in &self.terms {
            r.add_term(k.mul(m), x.mul(c));
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.nvars);
        for (m, c) in &o.terms {
            r = r.add(&self.mul_term(m, c));
        }
        r
    }

    /// Value at a rational point.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (m, c)| {
            let v = m
                .0
                .iter()
                .zip(x)
                .fold(c.clone(), |v, (e, xi)| v.mul(&xi.pow(*e)));
            acc.add(&v)
        })
    }

    fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Full reduction modulo `g`.
    pub fn reduce(&self, g: &[MPoly]) -> Self {
        let mut p = self.clone();
        let mut r = Self::zero(self.nvars);
        while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let div = g.iter().find(|q| q.leading().is_some_and(|(lm, _)| lm.divides(&m)));
            match div {
                Some(q) => {
                    let (lm, lc) = q.leading().unwrap();
                    let f = c.div(lc).expect("nonzero");
                    p = p.sub(&q.mul_term(&m.div(lm), &f));
                }
                None => {
                    p.terms.remove(&m);
                    r.add_term(m, c);
                }
            }
        }
        r
    }
}

fn s_poly(f: &MPoly, g: &MPoly) -> MPoly {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(gm);
    f.mul_term(&l.div(fm), &fc.inv().unwrap())
        .sub(&g.mul_term(&l.div(gm), &gc.inv().unwrap()))
}

/// Reduced Groebner basis of the ideal generated by `gens`.
pub fn groebner_basis(gens: &[MPoly]) -> Vec<MPoly> {
    let mut g: Vec<MPoly> = Vec::new();
    for f in gens {
        let r = f.reduce(&g);
        if !r.is_zero() {
            g.push(r.monic());
        }
    }
    if g.iter().any(MPoly::is_nonzero_constant) {
        return vec![g.into_iter().find(MPoly::is_nonzero_constant).unwrap().monic()];
    }
    let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let (li, lj) = (g[i].leading().unwrap().0, g[j].leading().unwrap().0);
        if li.coprime(lj) {
            continue;
        }
        let r = s_poly(&g[i], &g[j]).reduce(&g);
        if r.is_zero() {
            continue;
        }
        if r.is_nonzero_constant() {
            return vec![r.monic()];
        }
        g.push(r.monic());
        let k = g.len() - 1;
        pairs.extend((0..k).map(|i| (i, k)));
    }
    // inter-reduce
    let mut out: Vec<MPoly> = Vec::new();
    for (idx, p) in g.iter().enumerate() {
        let lm = p.leading().unwrap().0;
        let redundant = g.iter().enumerate().any(|(j, q)| {
            let lq = q.leading().unwrap().0;
            j != idx && lq.divides(lm) && (lq != lm || j < idx)
        });
        if !redundant {
            out.push(p.clone());
        }
    }
    let snapshot = out.clone();
    for (i, p) in out.iter_mut().enumerate() {
        let others: Vec<MPoly> = snapshot.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.clone()).collect();
        *p = p.reduce(&others).monic();
    }
    out.sort_by(|a, b| b.leading().unwrap().0.cmp(a.leading().unwrap().0));
    out
}

/// True iff the polynomials have no common zero over `C`.
pub fn is_inconsistent(gens: &[MPoly]) -> bool {
    groebner_basis(gens).iter().any(MPoly::is_nonzero_constant)
}
