//! Brute-force membership by exact elimination over the bounded span of
//! canonicalized multiples.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::coeff::{Domain, Scalar};
use crate::engine::Side;
use crate::error::{Error, Result};
use crate::freering::{Letter, NcPoly, SortKey, Word};
use crate::presentation::{Presentation, TermKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleAnswer {
    Yes,
    NoWithinBound,
}

/// Sparse row indexed by ordered column keys; the largest key leads.
pub type Row<K = SortKey> = BTreeMap<K, Scalar>;

/// Rows in echelon form keyed by their leading column; leading entries are
/// normalized (positive over the integers, one over the rationals).
#[derive(Debug, Clone)]
pub struct SpanMatrix<K = SortKey> {
    domain: Domain,
    pivots: BTreeMap<K, Row<K>>,
    pub rows_seen: usize,
}

fn axpy<K: Ord + Clone>(y: &mut Row<K>, a: &Scalar, x: &Row<K>) {
    for (k, v) in x {
        let e = y.entry(k.clone()).or_insert_with(Scalar::zero);
        *e += a * v;
        if e.is_zero() {
            y.remove(k);
        }
    }
}

fn scaled<K: Ord + Clone>(a: &Scalar, x: &Row<K>) -> Row<K> {
    x.iter().map(|(k, v)| (k.clone(), a * v)).filter(|(_, v)| !v.is_zero()).collect()
}

impl<K: Ord + Clone> SpanMatrix<K> {
    pub fn new(domain: Domain) -> Self {
        SpanMatrix { domain, pivots: BTreeMap::new(), rows_seen: 0 }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a row, keeping the echelon form by unimodular two-row steps.
    pub fn insert(&mut self, mut r: Row<K>) -> Result<()> {
        self.rows_seen += 1;
        while let Some((k, a)) = r.last_key_value().map(|(k, v)| (k.clone(), v.clone())) {
            let Some(p) = self.pivots.remove(&k) else {
                let u = self.domain.normalizing_unit(&a);
                self.pivots.insert(k, scaled(&u, &r));
                return Ok(());
            };
            let b = p[&k].clone();
            let (g, s, t) = self.domain.bezout(&b, &a)?;
            let mut np = scaled(&s, &p);
            axpy(&mut np, &t, &r);
            let mut rest = scaled(&(&a / &g), &p);
            axpy(&mut rest, &-(&b / &g), &r);
            debug_assert!(!rest.contains_key(&k));
            self.pivots.insert(k, np);
            r = rest;
        }
        Ok(())
    }

    /// Whether `target` is an integral (or rational) combination of the rows.
    pub fn contains(&self, target: &Row<K>) -> bool {
        let mut r = target.clone();
        while let Some((k, a)) = r.last_key_value().map(|(k, v)| (k.clone(), v.clone())) {
            let Some(p) = self.pivots.get(&k) else { return false };
            let b = &p[&k];
            if !self.domain.divides(b, &a) {
                return false;
            }
            axpy(&mut r, &-(&a / b), p);
        }
        true
    }
}

pub fn row_of(p: &Presentation, f: &NcPoly) -> Row {
    f.iter().map(|(t, c)| (p.order.key(t), c.clone())).collect()
}

fn words(letters: &[Letter], max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for &l in letters {
                let mut w = out[i].clone();
                w.push(l);
                out.push(w);
            }
        }
        start = end;
    }
    out
}

/// Coefficient letters: the `v` block when every `X_i x_j` rewrites, else none.
fn coefficient_letters(p: &Presentation) -> Result<(Vec<Letter>, Vec<Letter>)> {
    let effective = p.alphabet.nv() == 0 || p.is_effective()?;
    Ok(p.letters().partition(|&l| effective && p.alphabet.is_v(l)))
}

/// The span of all canonical multiples of `gens` of degree at most `bound`,
/// plus torsion rows `c_τ·τ` for every column with a nonzero proper Szekeres ideal.
pub fn span_matrix(p: &Presentation, gens: &[NcPoly], side: Side, bound: u32) -> Result<SpanMatrix> {
    let (coeff, graded) = coefficient_letters(p)?;
    let all: Vec<Letter> = p.letters().collect();
    let bound = bound as usize;
    let mut m = SpanMatrix::new(p.domain);
    let mut columns: BTreeMap<SortKey, ()> = BTreeMap::new();
    for f in gens {
        let d = f.max_degree();
        if d > bound {
            continue;
        }
        let room = bound - d;
        let (lefts, rights) = match side {
            Side::Restricted => (words(&coeff, room), words(&graded, room)),
            Side::Left => (words(&all, room), vec![Vec::new()]),
            Side::Bilateral => (words(&all, room), words(&all, room)),
        };
        for lam in &lefts {
            for rho in rights.iter().filter(|r| lam.len() + r.len() <= room) {
                let c = p.canonical_rep(&f.mul_words(lam, rho))?;
                for (t, _) in c.iter() {
                    columns.insert(p.order.key(t), ());
                }
                if !c.is_zero() {
                    m.insert(row_of(p, &c))?;
                }
            }
        }
    }
    if !p.is_free() {
        for k in columns.keys() {
            let class = p.classify_term(&k.term)?;
            if class.kind == TermKind::R {
                m.insert(BTreeMap::from([(k.clone(), class.generator)]))?;
            }
        }
    }
    Ok(m)
}

/// Whether `g` lies in the bounded span of the multiples of `gens` on `side`.
pub fn oracle_member(p: &Presentation, g: &NcPoly, gens: &[NcPoly], side: Side, bound: u32) -> Result<OracleAnswer> {
    let g = p.canonical_rep(g)?;
    let Some(t) = g.lead_term() else { return Ok(OracleAnswer::Yes) };
    if t.degree() > bound as usize {
        return Err(Error::BoundTooSmall);
    }
    let m = span_matrix(p, gens, side, bound)?;
    Ok(if m.contains(&row_of(p, &g)) { OracleAnswer::Yes } else { OracleAnswer::NoWithinBound })
}
