use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{Alphabet, Letter, SortKey, Term, TermOrder};
use crate::coeff::Scalar;
use crate::error::{Error, Result};

/// Finite sum of monomials, kept strictly descending under a term order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NcPoly {
    mons: Vec<(Term, Scalar)>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly { mons: Vec::new() }
    }

    pub fn monomial(c: Scalar, t: Term) -> Self {
        if c.is_zero() {
            NcPoly::zero()
        } else {
            NcPoly { mons: vec![(t, c)] }
        }
    }

    pub fn term(t: Term) -> Self {
        NcPoly::monomial(Scalar::one(), t)
    }

    pub fn constant(c: Scalar) -> Self {
        NcPoly::monomial(c, Term::ring(Vec::new()))
    }

    /// Sums like terms and sorts.
    pub fn from_terms(ord: &TermOrder, it: impl IntoIterator<Item = (Term, Scalar)>) -> Self {
        let mut m: BTreeMap<SortKey, Scalar> = BTreeMap::new();
        for (t, c) in it {
            *m.entry(ord.key(&t)).or_insert_with(Scalar::zero) += c;
        }
        Self::from_sorted_map(m)
    }

    pub fn from_sorted_map(m: BTreeMap<SortKey, Scalar>) -> Self {
        NcPoly { mons: m.into_iter().rev().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k.term, c)).collect() }
    }

    /// Trusts the caller that `mons` is strictly descending with nonzero coefficients.
    pub fn from_descending(mons: Vec<(Term, Scalar)>) -> Self {
        NcPoly { mons }
    }

    pub fn is_zero(&self) -> bool {
        self.mons.is_empty()
    }

    pub fn len(&self) -> usize {
        self.mons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mons.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Term, Scalar)> {
        self.mons.iter()
    }

    pub fn monomials(&self) -> &[(Term, Scalar)] {
        &self.mons
    }

    pub fn into_monomials(self) -> Vec<(Term, Scalar)> {
        self.mons
    }

    pub fn lead(&self) -> Option<&(Term, Scalar)> {
        self.mons.first()
    }

    pub fn lead_term(&self) -> Option<&Term> {
        self.mons.first().map(|(t, _)| t)
    }

    pub fn lead_coeff(&self) -> Option<&Scalar> {
        self.mons.first().map(|(_, c)| c)
    }

    pub fn coeff_of(&self, t: &Term) -> Scalar {
        self.mons.iter().find(|(s, _)| s == t).map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero)
    }

    pub fn max_degree(&self) -> usize {
        self.mons.iter().map(|(t, _)| t.degree()).max().unwrap_or(0)
    }

    /// Module position carried by the terms (0 for ring elements).
    pub fn position(&self) -> u32 {
        self.mons.iter().map(|(t, _)| t.pos).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly { mons: self.mons.iter().map(|(t, d)| (t.clone(), d * c)).collect() }
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly { mons: self.mons.iter().map(|(t, d)| (t.clone(), -d)).collect() }
    }

    pub fn add(&self, ord: &TermOrder, other: &NcPoly) -> NcPoly {
        self.add_scaled(ord, other, &Scalar::one())
    }

    pub fn sub(&self, ord: &TermOrder, other: &NcPoly) -> NcPoly {
        self.add_scaled(ord, other, &-Scalar::one())
    }

    /// `self + c * other`, by merging the two descending lists.
    pub fn add_scaled(&self, ord: &TermOrder, other: &NcPoly, c: &Scalar) -> NcPoly {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.mons.len() + other.mons.len());
        let (mut i, mut j) = (0, 0);
        while i < self.mons.len() || j < other.mons.len() {
            let pick = if i == self.mons.len() {
                std::cmp::Ordering::Less
            } else if j == other.mons.len() {
                std::cmp::Ordering::Greater
            } else {
                ord.compare(&self.mons[i].0, &other.mons[j].0)
            };
            match pick {
                std::cmp::Ordering::Greater => {
                    out.push(self.mons[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((other.mons[j].0.clone(), &other.mons[j].1 * c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = &self.mons[i].1 + &other.mons[j].1 * c;
                    if !s.is_zero() {
                        out.push((self.mons[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        NcPoly { mons: out }
    }

    /// `left * self * right` for words; the order is multiplicative, so no re-sort.
    pub fn mul_words(&self, left: &[Letter], right: &[Letter]) -> NcPoly {
        NcPoly { mons: self.mons.iter().map(|(t, c)| (t.mul_words(left, right), c.clone())).collect() }
    }

    /// The same polynomial with every term moved to position `pos`.
    pub fn at_position(&self, pos: u32) -> NcPoly {
        NcPoly { mons: self.mons.iter().map(|(t, c)| (Term::new(t.word.clone(), pos), c.clone())).collect() }
    }

    /// Free product; at most one operand may carry a module position.
    pub fn mul(&self, ord: &TermOrder, other: &NcPoly) -> Result<NcPoly> {
        let (p, q) = (self.position(), other.position());
        if p > 0 && q > 0 {
            return Err(Error::BothPositioned);
        }
        let pos = p.max(q);
        let mut m: BTreeMap<SortKey, Scalar> = BTreeMap::new();
        for (t, c) in &self.mons {
            for (s, d) in &other.mons {
                let mut w = t.word.clone();
                w.extend_from_slice(&s.word);
                *m.entry(ord.key(&Term::new(w, pos))).or_insert_with(Scalar::zero) += c * d;
            }
        }
        Ok(Self::from_sorted_map(m))
    }

    pub fn is_sorted(&self, ord: &TermOrder) -> bool {
        self.mons.windows(2).all(|w| ord.compare(&w[0].0, &w[1].0) == std::cmp::Ordering::Greater)
            && self.mons.iter().all(|(_, c)| !c.is_zero())
    }

    pub fn fmt(&self, a: &Alphabet) -> String {
        if self.mons.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (t, c)) in self.mons.iter().enumerate() {
            let neg = c < &Scalar::zero();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let body = a.fmt_term(t);
            let bare = t.word.is_empty() && t.pos == 0;
            if abs.is_one() {
                s.push_str(&body);
            } else if bare {
                s.push_str(&abs.to_string());
            } else {
                s.push_str(&format!("{abs}*{body}"));
            }
        }
        s
    }
}
