use std::collections::BTreeMap;

use num_traits::Zero;

use super::{GenRef, GeneratorSet, Mode, Side};
use crate::coeff::Scalar;
use crate::error::Result;
use crate::freering::{occurrences, NcPoly, SortKey, Term, Word};

/// One reduction step `coeff · λ ⋆ F[gen] ⋆ ρ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub coeff: Scalar,
    pub gen: usize,
    pub lam: Word,
    pub rho: Word,
}

/// `f = nf + Σ coeff · λ ⋆ F[gen] ⋆ ρ` in `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub nf: NcPoly,
    pub quotients: Vec<Quotient>,
}

struct Candidate {
    gen: usize,
    lam: Word,
    rho: Word,
    mult: NcPoly,
}

impl<'p> GeneratorSet<'p> {
    /// Cofactor pairs `(λ, ρ)` under which `F[k]` may lead `t` on the given side.
    fn cofactors(&self, k: usize, t: &Term, side: Side) -> Vec<(Word, Word)> {
        let g = &self.gens[k];
        if g.pos() != t.pos {
            return Vec::new();
        }
        let mut out = Vec::new();
        let restricted = |out: &mut Vec<(Word, Word)>| {
            let (ups, om) = self.view.split(&t.word);
            if let Some(lam) = ups.strip_suffix(g.ups.as_slice()) {
                if let Some(rho) = self.view.left_div(&g.om, om) {
                    out.push((lam.to_vec(), rho));
                }
            }
        };
        match side {
            Side::Restricted => restricted(&mut out),
            Side::Left => {
                if let Some(mu) = t.word.strip_suffix(g.lead.word.as_slice()) {
                    out.push((mu.to_vec(), Vec::new()));
                }
            }
            Side::Bilateral => {
                restricted(&mut out);
                let n = g.lead.word.len();
                for o in occurrences(&t.word, &g.lead.word) {
                    let c = (t.word[..o].to_vec(), t.word[o + n..].to_vec());
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
        }
        out
    }

    fn candidates(&self, t: &Term, side: Side) -> Result<Vec<Candidate>> {
        let mut out = Vec::new();
        for k in 0..self.gens.len() {
            for (lam, rho) in self.cofactors(k, t, side) {
                if let Some(mult) = self.reducer(&GenRef::F(k), &lam, &rho, t.pos)? {
                    if mult.lead_term() == Some(t) {
                        out.push(Candidate { gen: k, lam, rho, mult });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Whether `F[k]` has a multiple on `side` led by `t` with leading coefficient dividing `c`.
    pub fn divides_term(&self, k: usize, t: &Term, c: &Scalar, side: Side) -> Result<bool> {
        for (lam, rho) in self.cofactors(k, t, side) {
            if let Some(m) = self.reducer(&GenRef::F(k), &lam, &rho, t.pos)? {
                if let Some((lt, lc)) = m.lead() {
                    if lt == t && self.p.domain.divides(lc, c) {
                        return Ok(true);
                    }
                }
            }
        }
        Ok(false)
    }

    /// Full normal form of `f` modulo the generators, with its quotients.
    pub fn normal_form(&self, f: &NcPoly, mode: Mode, side: Side) -> Result<Reduction> {
        let dom = self.p.domain;
        let f = self.p.canonical_rep(f)?;
        let mut work: BTreeMap<SortKey, Scalar> = BTreeMap::new();
        for (t, c) in f.iter() {
            work.insert(self.p.order.key(t), c.clone());
        }
        let mut out = Vec::new();
        let mut quotients = Vec::new();
        let mut last: Option<SortKey> = None;
        while let Some((k, mut a)) = work.pop_last() {
            debug_assert!(last.as_ref().is_none_or(|l| k < *l), "reduction must strictly decrease the current term");
            last = Some(k.clone());
            let t = k.term;
            let tor = self.torsion(&t)?;
            a = dom.canon_rem(&a, &tor);
            if a.is_zero() {
                continue;
            }
            let cands = self.candidates(&t, side)?;
            if cands.is_empty() {
                out.push((t, a));
                continue;
            }
            let lc = |c: &Candidate| c.mult.lead_coeff().expect("nonzero").clone();
            let mut steps: Vec<(usize, Scalar)> = Vec::new();
            match mode {
                Mode::Weak => {
                    let mut lcs: Vec<Scalar> = cands.iter().map(lc).collect();
                    if !tor.is_zero() {
                        lcs.push(tor.clone());
                    }
                    let (g, comb) = dom.strong_ideal_basis(&lcs)?;
                    let rem = dom.canon_rem(&a, &g);
                    let q = (&a - &rem) / &g;
                    for (i, s) in comb.iter().take(cands.len()).enumerate() {
                        if !s.is_zero() && !q.is_zero() {
                            steps.push((i, &q * s));
                        }
                    }
                    a = rem;
                }
                Mode::Strong => {
                    let exact = cands.iter().position(|c| {
                        let (g, _, _) = dom.bezout(&lc(c), &tor).expect("nonzero lc");
                        dom.divides(&g, &a)
                    });
                    if let Some(i) = exact {
                        let (g, s, _) = dom.bezout(&lc(&cands[i]), &tor)?;
                        steps.push((i, &a / &g * s));
                        a = Scalar::zero();
                    } else {
                        for (i, c) in cands.iter().enumerate() {
                            let r = lc(c);
                            let rem = dom.canon_rem(&a, &r);
                            let q = (&a - &rem) / &r;
                            if !q.is_zero() {
                                steps.push((i, q));
                            }
                            a = dom.canon_rem(&rem, &tor);
                        }
                    }
                }
            }
            for (i, q) in steps {
                let c = &cands[i];
                for (u, d) in c.mult.iter().skip(1) {
                    *work.entry(self.p.order.key(u)).or_insert_with(Scalar::zero) -= &q * d;
                }
                quotients.push(Quotient { coeff: q, gen: c.gen, lam: c.lam.clone(), rho: c.rho.clone() });
            }
            if !a.is_zero() {
                out.push((t, a));
            }
        }
        Ok(Reduction { nf: NcPoly::from_descending(out), quotients })
    }

    /// Recombines `nf + Σ quotients` and compares with `f` in `A`.
    pub fn check_reduction(&self, f: &NcPoly, r: &Reduction, pos: u32) -> Result<bool> {
        let mut acc = r.nf.clone();
        for q in &r.quotients {
            match self.reducer(&GenRef::F(q.gen), &q.lam, &q.rho, pos)? {
                Some(m) => acc = acc.add_scaled(&self.p.order, &m, &q.coeff),
                None => return Ok(false),
            }
        }
        Ok(self.p.canonical_rep(&acc)? == self.p.canonical_rep(f)?)
    }
}
