//! Normal forms, restricted S-pairs, restricted and bilateral completion,
//! bounded enumeration and syzygy liftings.

mod complete;
mod pairs;
mod reduce;

pub use complete::{
    enumerate, saturate_relations, Completion, GBResult, LiftRecord, Membership, Saturation, Stats, Status,
};
pub use pairs::{Case, Leg, SyzGen};
pub use reduce::{Quotient, Reduction};

use std::cell::{Cell, RefCell};
use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::coeff::Scalar;
use crate::error::Result;
use crate::freering::{Letter, NcPoly, Term, Word};
use crate::presentation::Presentation;

/// Which multiples a reduction or completion may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `a·λ ⋆ g ⋆ ρ` with `λ` over coefficient letters and `ρ` over graded letters.
    Restricted,
    /// `μ ⋆ g` for arbitrary words `μ`.
    Left,
    /// `μ ⋆ g ⋆ ρ` for arbitrary words.
    Bilateral,
}

/// Coefficient handling during reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// One Bézout step against all divisors at once.
    Weak,
    /// Successive division with canonical remainder by single divisors.
    Strong,
}

/// How graded words divide each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Gamma {
    /// Free monoid: `ω | ω'` iff `ω` is a prefix of `ω'`.
    Free,
    /// Graded letters commute in the ring: divisibility is multiset inclusion.
    Commutative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum GammaChoice {
    #[default]
    Auto,
    Free,
    Commutative,
}

/// Split of the alphabet into coefficient letters and graded letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct View {
    coeff: Vec<bool>,
    pub gamma: Gamma,
    pub effective: bool,
}

impl View {
    /// Coefficient letters are `v` when every `X_i x_j` rewrites; otherwise every letter is graded.
    pub fn new(p: &Presentation, choice: GammaChoice) -> Result<View> {
        let effective = p.alphabet.nv() == 0 || p.is_effective()?;
        let coeff: Vec<bool> = p.letters().map(|l| effective && p.alphabet.is_v(l)).collect();
        let graded: Vec<Letter> = p.letters().filter(|&l| !coeff[l as usize]).collect();
        let gamma = match choice {
            GammaChoice::Free => Gamma::Free,
            GammaChoice::Commutative => Gamma::Commutative,
            GammaChoice::Auto if graded.len() >= 2 && p.letters_commute(&graded)? => Gamma::Commutative,
            GammaChoice::Auto => Gamma::Free,
        };
        Ok(View { coeff, gamma, effective })
    }

    pub fn is_coeff(&self, l: Letter) -> bool {
        self.coeff[l as usize]
    }

    pub fn coeff_letters(&self) -> Vec<Letter> {
        (0..self.coeff.len() as Letter).filter(|&l| self.is_coeff(l)).collect()
    }

    pub fn graded_letters(&self) -> Vec<Letter> {
        (0..self.coeff.len() as Letter).filter(|&l| !self.is_coeff(l)).collect()
    }

    /// `(υ, ω)`: the maximal coefficient prefix and the rest.
    pub fn split<'a>(&self, w: &'a [Letter]) -> (&'a [Letter], &'a [Letter]) {
        let k = w.iter().position(|&l| !self.is_coeff(l)).unwrap_or(w.len());
        w.split_at(k)
    }

    /// `ρ` with `a ∘ ρ = b` in Γ.
    pub fn left_div(&self, a: &[Letter], b: &[Letter]) -> Option<Word> {
        match self.gamma {
            Gamma::Free => b.strip_prefix(a).map(<[Letter]>::to_vec),
            Gamma::Commutative => multiset_diff(b, a),
        }
    }

    /// Least common multiple in Γ with both cofactors, when it exists.
    pub fn lcm(&self, a: &[Letter], b: &[Letter]) -> Option<(Word, Word, Word)> {
        match self.gamma {
            Gamma::Free => {
                if let Some(r) = b.strip_prefix(a) {
                    Some((b.to_vec(), r.to_vec(), Vec::new()))
                } else {
                    a.strip_prefix(b).map(|r| (a.to_vec(), Vec::new(), r.to_vec()))
                }
            }
            Gamma::Commutative => {
                let l = multiset_lcm(a, b);
                let ra = multiset_diff(&l, a)?;
                let rb = multiset_diff(&l, b)?;
                Some((l, ra, rb))
            }
        }
    }
}

/// `big − small` for sorted words, if `small ⊆ big`.
pub fn multiset_diff(big: &[Letter], small: &[Letter]) -> Option<Word> {
    let mut out = Vec::new();
    let mut j = 0;
    for &l in big {
        if j < small.len() && small[j] == l {
            j += 1;
        } else {
            out.push(l);
        }
    }
    (j == small.len()).then_some(out)
}

pub fn multiset_lcm(a: &[Letter], b: &[Letter]) -> Word {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            out.push(b[j]);
            j += 1;
        } else {
            out.push(a[i]);
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reference to a module generator or to a ring relation lifted to a position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenRef {
    F(usize),
    H(usize),
}

/// A nonzero canonical element with its leading factorization `γ υ ω e_ι`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gen {
    pub poly: NcPoly,
    pub lead: Term,
    pub lc: Scalar,
    pub ups: Word,
    pub om: Word,
}

impl Gen {
    pub fn new(poly: NcPoly, view: &View) -> Option<Gen> {
        let (lead, lc) = poly.lead().cloned()?;
        let (u, o) = view.split(&lead.word);
        let (ups, om) = (u.to_vec(), o.to_vec());
        Some(Gen { poly, lead, lc, ups, om })
    }

    pub fn pos(&self) -> u32 {
        self.lead.pos
    }
}

type MultKey = (GenRef, Word, Word, u32);

/// Module generators `F` over a presentation, with the relation basis `H`
/// lifted to every position.
#[derive(Debug)]
pub struct GeneratorSet<'p> {
    pub p: &'p Presentation,
    pub view: View,
    pub bound: u32,
    pub gens: Vec<Gen>,
    pub hrel: Vec<Gen>,
    cache: RefCell<HashMap<MultKey, NcPoly>>,
    szekeres: RefCell<HashMap<Word, Scalar>>,
    exhausted: Cell<bool>,
    truncated: Cell<bool>,
}

impl<'p> GeneratorSet<'p> {
    pub fn new(p: &'p Presentation, gamma: GammaChoice, bound: u32) -> Result<Self> {
        let view = View::new(p, gamma)?;
        let hrel = p.basis().iter().filter_map(|h| Gen::new(h.clone(), &view)).collect();
        Ok(GeneratorSet {
            p,
            view,
            bound,
            gens: Vec::new(),
            hrel,
            cache: RefCell::new(HashMap::new()),
            szekeres: RefCell::new(HashMap::new()),
            exhausted: Cell::new(false),
            truncated: Cell::new(false),
        })
    }

    /// Canonicalizes `polys` and keeps the nonzero ones, in order.
    pub fn from_polys(p: &'p Presentation, polys: &[NcPoly], gamma: GammaChoice, bound: u32) -> Result<Self> {
        let mut s = GeneratorSet::new(p, gamma, bound)?;
        for f in polys {
            let c = p.canonical_rep(f)?;
            if !c.is_zero() {
                s.push(c);
            }
        }
        Ok(s)
    }

    pub fn push(&mut self, f: NcPoly) -> usize {
        let g = Gen::new(f, &self.view).expect("nonzero generator");
        self.gens.push(g);
        self.gens.len() - 1
    }

    pub fn polys(&self) -> Vec<NcPoly> {
        self.gens.iter().map(|g| g.poly.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Whether some multiple was skipped for exceeding the bound.
    pub fn exhausted(&self) -> bool {
        self.exhausted.get()
    }

    pub(crate) fn mark_exhausted(&self) {
        self.exhausted.set(true);
    }

    pub fn gen(&self, r: &GenRef) -> &Gen {
        match r {
            GenRef::F(i) => &self.gens[*i],
            GenRef::H(i) => &self.hrel[*i],
        }
    }

    fn poly_at(&self, r: &GenRef, pos: u32) -> NcPoly {
        match r {
            GenRef::F(i) => self.gens[*i].poly.clone(),
            GenRef::H(i) => self.hrel[*i].poly.at_position(pos),
        }
    }

    /// Whether `λ ⋆ g ⋆ ρ` stays within the degree bound.
    pub fn within_bound(&self, r: &GenRef, lam: &[Letter], rho: &[Letter]) -> bool {
        lam.len() + self.gen(r).poly.max_degree() + rho.len() <= self.bound as usize
    }

    /// Canonical `λ ⋆ g ⋆ ρ`, or `None` when it exceeds the bound.
    pub fn multiple(&self, r: &GenRef, lam: &[Letter], rho: &[Letter], pos: u32) -> Result<Option<NcPoly>> {
        if !self.within_bound(r, lam, rho) {
            self.mark_exhausted();
            return Ok(None);
        }
        self.cached(r, lam, rho, pos).map(Some)
    }

    /// Canonical `λ ⋆ g ⋆ ρ` for reduction, limited only by the saturation reach
    /// of the presentation; `None` (and a truncation mark) beyond it.
    pub fn reducer(&self, r: &GenRef, lam: &[Letter], rho: &[Letter], pos: u32) -> Result<Option<NcPoly>> {
        let reach = if self.p.is_free() { usize::MAX } else { self.p.saturated_bound().unwrap_or(0) as usize };
        if lam.len() + self.gen(r).poly.max_degree() + rho.len() > reach {
            self.truncated.set(true);
            return Ok(None);
        }
        self.cached(r, lam, rho, pos).map(Some)
    }

    fn cached(&self, r: &GenRef, lam: &[Letter], rho: &[Letter], pos: u32) -> Result<NcPoly> {
        let key = (r.clone(), lam.to_vec(), rho.to_vec(), pos);
        if let Some(v) = self.cache.borrow().get(&key) {
            return Ok(v.clone());
        }
        let v = self.p.canonical_rep(&self.poly_at(r, pos).mul_words(lam, rho))?;
        self.cache.borrow_mut().insert(key, v.clone());
        Ok(v)
    }

    /// Whether a reduction skipped a multiple since the last call, clearing the mark.
    pub fn take_truncated(&self) -> bool {
        self.truncated.replace(false)
    }

    /// Szekeres generator of a term of `A`, cached by word.
    pub fn torsion(&self, t: &Term) -> Result<Scalar> {
        if self.p.is_free() {
            return Ok(Scalar::zero());
        }
        if let Some(c) = self.szekeres.borrow().get(&t.word) {
            return Ok(c.clone());
        }
        let c = self.p.szekeres(t)?;
        self.szekeres.borrow_mut().insert(t.word.clone(), c.clone());
        Ok(c)
    }

    /// Canonical `Σ c·λ ⋆ g ⋆ ρ` over `legs`; `None` if a leg exceeds the bound.
    pub fn eval_legs(&self, legs: &[Leg], pos: u32) -> Result<Option<NcPoly>> {
        let mut acc = NcPoly::zero();
        for l in legs {
            match self.multiple(&l.gen, &l.lam, &l.rho, pos)? {
                Some(m) => acc = acc.add_scaled(&self.p.order, &m, &l.coeff),
                None => return Ok(None),
            }
        }
        Ok(Some(self.p.canonical_rep(&acc)?))
    }
}
