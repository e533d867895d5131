//! Effectively given rings `A = Q/I`: relation sets, validation, canonical
//! representatives and the N/L/R term partition.

mod format;

pub use format::{parse_file, PresentationFile};

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::coeff::{Domain, Scalar};
use crate::error::{Error, Result};
use crate::freering::{occurrences, Alphabet, Letter, NcPoly, SortKey, Term, TermOrder, Word};

/// Class of a term with respect to the relation ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TermKind {
    /// No relation leads the term: it is free in `A`.
    N,
    /// The Szekeres generator is a unit: the term never survives.
    L,
    /// A proper nonzero ideal: the term survives with torsion.
    R,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermClass {
    pub kind: TermKind,
    /// Szekeres generator `c_τ`, with `0` for class N.
    pub generator: Scalar,
}

/// One finding of [`Presentation::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A C relation tail term outside `Σ_{l≤i} a X_l + a_0`.
    OreShape { relation: usize, term: Term },
    /// A C relation not led by its `X_i x_j` term.
    LeadingTerm { relation: usize, expected: Option<Term>, found: Option<Term> },
    /// A G0 relation containing a graded letter.
    CoefficientRing { relation: usize, term: Term },
    /// An H relation whose leading term is not `υω` with `ω` nonempty.
    RelationShape { relation: usize, term: Term },
    /// Some graded letter has weight zero.
    NonSequentialOrder,
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::OreShape { .. } => "OreShape",
            Violation::LeadingTerm { .. } => "LeadingTerm",
            Violation::CoefficientRing { .. } => "CoefficientRing",
            Violation::RelationShape { .. } => "RelationShape",
            Violation::NonSequentialOrder => "NonSequentialOrder",
        }
    }

    pub fn describe(&self, a: &Alphabet) -> String {
        let t = |t: &Option<Term>| t.as_ref().map(|t| a.fmt_term(t)).unwrap_or_else(|| "none".into());
        match self {
            Violation::OreShape { relation, term } => {
                format!("OreShape: C[{relation}] has tail term {}", a.fmt_term(term))
            }
            Violation::LeadingTerm { relation, expected, found } => {
                format!("LeadingTerm: C[{relation}] leads with {} instead of {}", t(found), t(expected))
            }
            Violation::CoefficientRing { relation, term } => {
                format!("CoefficientRing: G0[{relation}] contains {}", a.fmt_term(term))
            }
            Violation::RelationShape { relation, term } => {
                format!("RelationShape: H[{relation}] leads with {}", a.fmt_term(term))
            }
            Violation::NonSequentialOrder => "NonSequentialOrder: a graded letter has weight 0".to_string(),
        }
    }
}

/// A presentation `A = D⟨v ⊔ V⟩ / (G0 ⊔ C ⊔ H)` together with its saturated relation basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub order: TermOrder,
    pub domain: Domain,
    pub rank: u32,
    pub g0: Vec<NcPoly>,
    pub c: Vec<NcPoly>,
    pub h: Vec<NcPoly>,
    saturated: Option<u32>,
    basis: Vec<NcPoly>,
}

impl Presentation {
    pub fn new(
        alphabet: Alphabet,
        order: TermOrder,
        domain: Domain,
        g0: Vec<NcPoly>,
        c: Vec<NcPoly>,
        h: Vec<NcPoly>,
    ) -> Self {
        let free = g0.is_empty() && c.is_empty() && h.is_empty();
        Presentation {
            alphabet,
            order,
            domain,
            rank: 1,
            g0,
            c,
            h,
            saturated: if free { Some(u32::MAX) } else { None },
            basis: Vec::new(),
        }
    }

    /// The free monoid ring itself, under the default order.
    pub fn free(alphabet: Alphabet, domain: Domain) -> Self {
        let order = TermOrder::default_for(alphabet.nv(), alphabet.big.len());
        Presentation::new(alphabet, order, domain, Vec::new(), Vec::new(), Vec::new())
    }

    pub fn with_rank(mut self, rank: u32) -> Self {
        self.rank = rank;
        self
    }

    /// The same ring and order with no relations.
    pub fn ambient(&self) -> Presentation {
        Presentation::new(self.alphabet.clone(), self.order.clone(), self.domain, vec![], vec![], vec![])
            .with_rank(self.rank)
    }

    pub fn relations(&self) -> impl Iterator<Item = &NcPoly> {
        self.g0.iter().chain(self.c.iter()).chain(self.h.iter())
    }

    pub fn is_free(&self) -> bool {
        self.relations().next().is_none()
    }

    /// Degree up to which the relation basis is known to be a Gröbner basis.
    pub fn saturated_bound(&self) -> Option<u32> {
        self.saturated
    }

    /// The saturated relation basis (empty before saturation).
    pub fn basis(&self) -> &[NcPoly] {
        &self.basis
    }

    /// Installs a relation basis that is a Gröbner basis up to `bound`.
    pub fn with_basis(mut self, basis: Vec<NcPoly>, bound: u32) -> Self {
        self.basis = basis;
        self.saturated = Some(bound);
        self
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.alphabet.len() as Letter
    }

    pub fn parse(&self, text: &str) -> Result<NcPoly> {
        crate::freering::parse_poly(text, &self.alphabet, &self.order, self.domain, self.rank)
    }

    pub fn fmt(&self, f: &NcPoly) -> String {
        f.fmt(&self.alphabet)
    }

    /// Unit multiple with positive (integers) or unit (rationals) leading coefficient.
    pub fn normalize(&self, f: &NcPoly) -> NcPoly {
        match f.lead_coeff() {
            Some(c) => f.scale(&self.domain.normalizing_unit(c)),
            None => NcPoly::zero(),
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let is_v = |l: Letter| self.alphabet.is_v(l);
        for (i, f) in self.g0.iter().enumerate() {
            if let Some((t, _)) = f.iter().find(|(t, _)| t.word.iter().any(|&l| !is_v(l))) {
                out.push(Violation::CoefficientRing { relation: i, term: t.clone() });
            }
        }
        for v in self.order.validate(&self.c) {
            if v.relation == usize::MAX {
                continue;
            }
            out.push(Violation::LeadingTerm { relation: v.relation, expected: v.expected, found: v.found });
        }
        for (i, f) in self.c.iter().enumerate() {
            let Some(lead) = f.lead_term() else { continue };
            let xi = lead.word.first().copied().filter(|&l| !is_v(l));
            let Some(xi) = xi else { continue };
            for (t, _) in f.iter().skip(1) {
                let k = t.word.iter().position(|&l| !is_v(l)).unwrap_or(t.word.len());
                let ore = match &t.word[k..] {
                    [] => true,
                    [x] => *x <= xi,
                    _ => false,
                };
                if !ore {
                    out.push(Violation::OreShape { relation: i, term: t.clone() });
                }
            }
        }
        for (i, f) in self.h.iter().enumerate() {
            let Some(lead) = f.lead_term() else { continue };
            let k = lead.word.iter().position(|&l| !is_v(l)).unwrap_or(lead.word.len());
            if k == lead.word.len() || lead.word[k..].iter().any(|&l| is_v(l)) {
                out.push(Violation::RelationShape { relation: i, term: lead.clone() });
            }
        }
        if !self.order.is_sequential_on_graded() {
            out.push(Violation::NonSequentialOrder);
        }
        out
    }

    fn check_ready(&self) -> Result<u32> {
        self.saturated.ok_or(Error::NotSaturated)
    }

    /// Basis elements whose leading word occurs in `w`, with the offset of each occurrence.
    fn divisors(&self, w: &[Letter]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, g) in self.basis.iter().enumerate() {
            if let Some(t) = g.lead_term() {
                for o in occurrences(w, &t.word) {
                    out.push((i, o));
                }
            }
        }
        out
    }

    /// Szekeres generator of a term: gcd of the leading coefficients of the
    /// relations whose leading word divides it.
    pub fn szekeres(&self, t: &Term) -> Result<Scalar> {
        let bound = self.check_ready()?;
        if t.degree() > bound as usize {
            return Err(Error::SaturationInsufficient { degree: t.degree(), bound: bound as usize });
        }
        let mut g = Scalar::zero();
        for (i, _) in self.divisors(&t.word) {
            g = self.domain.gcd(&g, self.basis[i].lead_coeff().expect("nonzero relation"));
            if self.domain.is_unit(&g) {
                break;
            }
        }
        Ok(g)
    }

    pub fn classify_term(&self, t: &Term) -> Result<TermClass> {
        let g = self.szekeres(t)?;
        let kind = if g.is_zero() {
            TermKind::N
        } else if self.domain.is_unit(&g) {
            TermKind::L
        } else {
            TermKind::R
        };
        Ok(TermClass { kind, generator: g })
    }

    /// Canonical representative of the class of `f` modulo the relation ideal.
    pub fn canonical_rep(&self, f: &NcPoly) -> Result<NcPoly> {
        if self.is_free() {
            return Ok(f.clone());
        }
        let bound = self.check_ready()? as usize;
        let mut work: BTreeMap<SortKey, Scalar> = BTreeMap::new();
        for (t, c) in f.iter() {
            *work.entry(self.order.key(t)).or_insert_with(Scalar::zero) += c;
        }
        let mut out: Vec<(Term, Scalar)> = Vec::new();
        while let Some((k, c)) = work.pop_last() {
            if c.is_zero() {
                continue;
            }
            let t = k.term;
            if t.degree() > bound {
                return Err(Error::SaturationInsufficient { degree: t.degree(), bound });
            }
            let divs = self.divisors(&t.word);
            if divs.is_empty() {
                out.push((t, c));
                continue;
            }
            let lcs: Vec<Scalar> =
                divs.iter().map(|&(i, _)| self.basis[i].lead_coeff().expect("nonzero").clone()).collect();
            let (g, comb) = self.domain.strong_ideal_basis(&lcs)?;
            let r = self.domain.canon_rem(&c, &g);
            let q = (&c - &r) / &g;
            if !q.is_zero() {
                for (&(i, o), s) in divs.iter().zip(comb.iter()) {
                    if s.is_zero() {
                        continue;
                    }
                    let g = &self.basis[i];
                    let len = g.lead_term().expect("nonzero").word.len();
                    let m = -(&q * s);
                    for (u, d) in g.iter().skip(1) {
                        let w = u.mul_words(&t.word[..o], &t.word[o + len..]);
                        let key = self.order.key(&Term::new(w.word, t.pos));
                        *work.entry(key).or_insert_with(Scalar::zero) += &m * d;
                    }
                }
            }
            if !r.is_zero() {
                out.push((t, r));
            }
        }
        Ok(NcPoly::from_descending(out))
    }

    pub fn canonical_term(&self, t: &Term) -> Result<NcPoly> {
        self.canonical_rep(&NcPoly::term(t.clone()))
    }

    /// Whether every canonical term has the shape `υω` (coefficient block, then graded block).
    pub fn is_effective(&self) -> Result<bool> {
        for xi in self.alphabet.big_letters() {
            for xj in self.alphabet.v_letters() {
                if self.classify_term(&Term::ring(vec![xi, xj]))?.kind != TermKind::L {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether all the given letters pairwise commute in `A`.
    pub fn letters_commute(&self, letters: &[Letter]) -> Result<bool> {
        for (k, &a) in letters.iter().enumerate() {
            for &b in &letters[k + 1..] {
                let ab = self.canonical_term(&Term::ring(vec![a, b]))?;
                let ba = self.canonical_term(&Term::ring(vec![b, a]))?;
                if ab != ba {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `ρ ⋆ x_j = Σ a_{ρjυ} υ`, grouped by the graded word `υ`, largest first.
    pub fn structure_constants(&self, rho: &[Letter], xj: Letter) -> Result<Vec<(NcPoly, Word)>> {
        let mut w = rho.to_vec();
        w.push(xj);
        let p = self.canonical_term(&Term::ring(w))?;
        let mut groups: Vec<(Word, Vec<(Term, Scalar)>)> = Vec::new();
        for (t, c) in p.iter() {
            let k = t.word.iter().position(|&l| !self.alphabet.is_v(l)).unwrap_or(t.word.len());
            let (ups, om) = t.word.split_at(k);
            let entry = (Term::ring(ups.to_vec()), c.clone());
            match groups.iter_mut().find(|(o, _)| o == om) {
                Some((_, v)) => v.push(entry),
                None => groups.push((om.to_vec(), vec![entry])),
            }
        }
        let mut out: Vec<(NcPoly, Word)> =
            groups.into_iter().map(|(om, v)| (NcPoly::from_terms(&self.order, v), om)).collect();
        out.sort_by(|a, b| self.order.cmp_words(&b.1, &a.1));
        Ok(out)
    }

    /// Saturates the relation basis up to degree `bound` by bilateral completion in the free ring.
    pub fn saturate(&self, bound: u32) -> Result<Presentation> {
        if self.is_free() {
            return Ok(self.clone());
        }
        let ambient = self.ambient();
        let gens: Vec<NcPoly> = self.relations().cloned().collect();
        let res = crate::engine::saturate_relations(&ambient, &gens, bound)?;
        let reach = if res.complete { u32::MAX } else { bound };
        Ok(Presentation { basis: res.basis, saturated: Some(reach), ..self.clone() })
    }

    /// Saturates only if the current basis does not already reach `bound`.
    pub fn ensure_saturated(&self, bound: u32) -> Result<Presentation> {
        match self.saturated {
            Some(b) if b >= bound => Ok(self.clone()),
            _ => self.saturate(bound),
        }
    }
}
