use std::collections::{BTreeMap, HashSet};

use num_traits::Signed;
use serde::Serialize;

use super::pairs::GcdPair;
use super::{Gamma, GammaChoice, GenRef, GeneratorSet, Leg, Mode, Quotient, Reduction, Side, SyzGen};
use crate::error::{Error, Result};
use crate::freering::{Letter, NcPoly, SortKey, Term, Word};
use crate::presentation::{Presentation, TermKind};

/// Outcome of a bounded completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Every pair and closure test stayed within the bound.
    Complete,
    /// Some multiple was skipped for exceeding the bound.
    BoundExhausted,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    /// Compatible placements of leading terms, before any filtering.
    pub naive_pairs: usize,
    /// Size of the restricted Gebauer–Möller set of the reported basis.
    pub gm_size: usize,
    /// S-polynomials and gcd combinations evaluated.
    pub pairs_processed: usize,
    /// Gcd combinations queued.
    pub gcd_pairs: usize,
    /// Bilateral closure products evaluated.
    pub closure_tests: usize,
    /// Nonzero normal forms adjoined.
    pub additions: usize,
}

/// `S(σ) = Σ quotients + residual`, each quotient led strictly below `w(σ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftRecord {
    pub syz: SyzGen,
    pub quotients: Vec<Quotient>,
    pub residual: NcPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// Reduces to zero; the quotients form a representation.
    Yes(Reduction),
    /// Nonzero normal form modulo a complete basis.
    No(NcPoly),
    /// Nonzero normal form modulo an incomplete basis.
    Unknown(NcPoly),
}

/// A snapshot of a completion run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GBResult {
    pub side: Side,
    pub status: Status,
    pub bound: u32,
    pub gamma: Gamma,
    /// Minimal, tail-reduced, normalized basis.
    pub basis: Vec<NcPoly>,
    /// Every element adjoined during completion, in order.
    pub working: Vec<NcPoly>,
    pub stats: Stats,
    /// Strong restricted basis, when requested.
    pub strong: Option<Vec<NcPoly>>,
    /// Syzygy liftings, when requested.
    pub lifts: Option<Vec<LiftRecord>>,
}

/// Relation basis produced by bilateral completion in the free ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Saturation {
    pub basis: Vec<NcPoly>,
    pub complete: bool,
}

enum Task {
    Pair(Box<SyzGen>),
    Gcd(GcdPair),
}

type QueueKey = (SortKey, u8, Vec<(u8, usize)>, u64);

fn leg_ids(legs: &[Leg]) -> Vec<(u8, usize)> {
    legs.iter()
        .map(|l| match l.gen {
            GenRef::F(i) => (0, i),
            GenRef::H(i) => (1, i),
        })
        .collect()
}

/// Bounded restricted or bilateral completion over a saturated presentation.
pub struct Completion<'p> {
    pub set: GeneratorSet<'p>,
    pub side: Side,
    queue: BTreeMap<QueueKey, Task>,
    seq: u64,
    tested: HashSet<(usize, Word, Letter)>,
    stats: Stats,
    status: Option<Status>,
}

impl<'p> Completion<'p> {
    pub fn new(p: &'p Presentation, polys: &[NcPoly], side: Side, gamma: GammaChoice, bound: u32) -> Result<Self> {
        let set = GeneratorSet::new(p, gamma, bound)?;
        let mut c = Completion {
            set,
            side,
            queue: BTreeMap::new(),
            seq: 0,
            tested: HashSet::new(),
            stats: Stats::default(),
            status: None,
        };
        for f in polys {
            c.insert(f)?;
        }
        Ok(c)
    }

    /// Reduces `f` and adjoins its normal form when nonzero.
    fn insert(&mut self, f: &NcPoly) -> Result<bool> {
        let r = self.set.normal_form(f, Mode::Strong, Side::Restricted)?;
        if r.nf.is_zero() {
            return Ok(false);
        }
        let n = self.set.push(self.set.p.normalize(&r.nf));
        self.stats.additions += 1;
        for s in self.set.pairs_for(n)? {
            if s.w.degree() > self.set.bound as usize {
                self.set.mark_exhausted();
                continue;
            }
            if let Some(g) = self.set.gcd_pair(&s)? {
                self.stats.gcd_pairs += 1;
                self.enqueue(s.w.clone(), 1, leg_ids(&g.legs), Task::Gcd(g));
            }
            self.enqueue(s.w.clone(), 0, leg_ids(&s.legs), Task::Pair(Box::new(s)));
        }
        Ok(true)
    }

    fn enqueue(&mut self, w: Term, rank: u8, ids: Vec<(u8, usize)>, t: Task) {
        self.seq += 1;
        self.queue.insert((self.set.p.order.key(&w), rank, ids, self.seq), t);
    }

    fn drain(&mut self) -> Result<()> {
        while let Some((_, task)) = self.queue.pop_first() {
            let s = match &task {
                Task::Pair(s) => self.set.spoly(s)?,
                Task::Gcd(g) => self.set.eval_legs(&g.legs, g.w.pos)?,
            };
            self.stats.pairs_processed += 1;
            if let Some(s) = s {
                self.insert(&s)?;
            }
        }
        Ok(())
    }

    /// Canonical graded words `ρ < Ω` up to the bound.
    fn words_below(&self, omega: &Term) -> Result<Vec<Word>> {
        let ord = &self.set.p.order;
        if !ord.is_sequential_on_graded() {
            return Err(Error::NonSequentialOrder(ord.describe()));
        }
        let graded = self.set.view.graded_letters();
        let cap = ord.weight_of_word(&omega.word);
        let max_len = (self.set.bound as usize).saturating_sub(1);
        let mut out = vec![Vec::new()];
        let mut frontier = vec![Vec::new()];
        while let Some(w) = frontier.pop() {
            if w.len() >= max_len || ord.weight_of_word(&w) >= cap {
                continue;
            }
            for &x in &graded {
                let mut n = w.clone();
                n.push(x);
                if ord.cmp_words(&n, &omega.word) != std::cmp::Ordering::Less {
                    continue;
                }
                if self.set.p.classify_term(&Term::ring(n.clone()))?.kind == TermKind::L {
                    continue;
                }
                out.push(n.clone());
                frontier.push(n);
            }
        }
        out.sort_by(|a, b| ord.cmp_words(a, b));
        Ok(out)
    }

    /// Left closure by graded letters and right closure by coefficient letters.
    /// Returns whether anything was adjoined.
    fn closure_tests(&mut self) -> Result<bool> {
        let mut added = false;
        let n = self.set.len();
        let graded = self.set.view.graded_letters();
        for k in 0..n {
            for &x in &graded {
                if !self.tested.insert((k, vec![x], Letter::MAX)) {
                    continue;
                }
                self.stats.closure_tests += 1;
                let pos = self.set.gens[k].pos();
                if let Some(m) = self.set.multiple(&GenRef::F(k), &[x], &[], pos)? {
                    added |= self.insert(&m)?;
                }
            }
        }
        let coeff = self.set.view.coeff_letters();
        if coeff.is_empty() || n == 0 {
            return Ok(added);
        }
        let ord = self.set.p.order.clone();
        let omega = self.set.gens.iter().map(|g| g.lead.clone()).max_by(|a, b| ord.compare(a, b)).expect("nonempty");
        let rhos = self.words_below(&omega)?;
        for k in 0..n {
            for &xj in &coeff {
                for rho in &rhos {
                    if !self.tested.insert((k, rho.clone(), xj)) {
                        continue;
                    }
                    if rho.len() + 1 > self.set.bound as usize {
                        self.set.mark_exhausted();
                        continue;
                    }
                    let g = self.set.gens[k].poly.clone();
                    for (a, _) in self.set.p.structure_constants(rho, xj)? {
                        self.stats.closure_tests += 1;
                        if g.max_degree() + a.max_degree() > self.set.bound as usize {
                            self.set.mark_exhausted();
                            continue;
                        }
                        let prod = g.mul(&ord, &a)?;
                        added |= self.insert(&prod)?;
                    }
                }
            }
        }
        Ok(added)
    }

    /// Runs to saturation of the pair queue (and closure tests, bilaterally).
    pub fn run(&mut self) -> Result<Status> {
        loop {
            self.drain()?;
            if self.side != Side::Bilateral || !self.closure_tests()? {
                break;
            }
        }
        let st = if self.set.exhausted() { Status::BoundExhausted } else { Status::Complete };
        self.status = Some(st);
        Ok(st)
    }

    pub fn status(&self) -> Option<Status> {
        self.status
    }

    fn subset(&self, idx: &[usize]) -> GeneratorSet<'p> {
        let mut s = self.empty_set();
        s.gens = idx.iter().map(|&i| self.set.gens[i].clone()).collect();
        s
    }

    fn empty_set(&self) -> GeneratorSet<'p> {
        GeneratorSet {
            p: self.set.p,
            view: self.set.view.clone(),
            bound: self.set.bound,
            gens: Vec::new(),
            hrel: self.set.hrel.clone(),
            cache: Default::default(),
            szekeres: Default::default(),
            exhausted: Default::default(),
            truncated: Default::default(),
        }
    }

    /// Minimal subset on the completion's side, tail-reduced and normalized.
    pub fn minimal_basis(&self) -> Result<Vec<NcPoly>> {
        let side = if self.side == Side::Bilateral { Side::Bilateral } else { Side::Restricted };
        let ord = &self.set.p.order;
        let gens = &self.set.gens;
        let mut idx: Vec<usize> = (0..gens.len()).collect();
        idx.sort_by(|&a, &b| {
            ord.compare(&gens[a].lead, &gens[b].lead).then(gens[a].lc.abs().cmp(&gens[b].lc.abs())).then(a.cmp(&b))
        });
        let mut kept: Vec<usize> = Vec::new();
        for k in idx {
            let g = &gens[k];
            let mut redundant = false;
            for &j in &kept {
                if self.set.divides_term(j, &g.lead, &g.lc, side)? {
                    redundant = true;
                    break;
                }
            }
            if !redundant {
                kept.push(k);
            }
        }
        let mut out = Vec::with_capacity(kept.len());
        for &k in &kept {
            let others: Vec<usize> = kept.iter().copied().filter(|&j| j != k).collect();
            let sub = self.subset(&others);
            let g = &gens[k].poly;
            let tail = NcPoly::from_descending(g.monomials()[1..].to_vec());
            let r = sub.normal_form(&tail, Mode::Strong, side)?;
            let lead = NcPoly::from_descending(g.monomials()[..1].to_vec());
            out.push(self.set.p.normalize(&lead.add(ord, &r.nf)));
        }
        Ok(out)
    }

    /// The reported basis as a generator set over the same presentation and view.
    pub fn basis_set(&self, basis: &[NcPoly]) -> GeneratorSet<'p> {
        let mut s = self.empty_set();
        for f in basis {
            s.push(f.clone());
        }
        s
    }

    fn stats_for(&self, basis: &[NcPoly]) -> Result<Stats> {
        let mut s = self.stats.clone();
        (s.naive_pairs, s.gm_size) = self.basis_set(basis).pair_stats()?;
        Ok(s)
    }

    /// Counters of the run, with pair statistics of the reported basis.
    pub fn stats(&self) -> Result<Stats> {
        self.stats_for(&self.minimal_basis()?)
    }

    pub fn result(&self) -> Result<GBResult> {
        let status = self.status.unwrap_or(Status::BoundExhausted);
        let basis = self.minimal_basis()?;
        Ok(GBResult {
            side: self.side,
            status,
            bound: self.set.bound,
            gamma: self.set.view.gamma,
            stats: self.stats_for(&basis)?,
            basis,
            working: self.set.polys(),
            strong: None,
            lifts: None,
        })
    }

    /// Membership by weak restricted reduction against the working basis.
    pub fn member(&self, g: &NcPoly) -> Result<Membership> {
        self.set.take_truncated();
        let r = self.set.normal_form(g, Mode::Weak, Side::Restricted)?;
        let truncated = self.set.take_truncated();
        Ok(if r.nf.is_zero() {
            Membership::Yes(r)
        } else if self.status == Some(Status::Complete) && !truncated {
            Membership::No(r.nf)
        } else {
            Membership::Unknown(r.nf)
        })
    }

    /// One lifting per Gebauer–Möller generator of the working basis.
    pub fn liftings(&self) -> Result<Vec<LiftRecord>> {
        if self.status != Some(Status::Complete) {
            return Err(Error::IncompleteResult);
        }
        let mut out = Vec::new();
        for syz in self.set.spairs_restricted()? {
            let s = self.set.spoly(&syz)?.ok_or(Error::IncompleteResult)?;
            let r = self.set.normal_form(&s, Mode::Weak, Side::Restricted)?;
            out.push(LiftRecord { syz, quotients: r.quotients, residual: r.nf });
        }
        Ok(out)
    }

    /// Checks `S(lift(σ)) = 0` by evaluation and that every correction term lies below `w(σ)`.
    pub fn check_lift(&self, l: &LiftRecord) -> Result<bool> {
        if !l.residual.is_zero() || !self.set.is_homogeneous(&l.syz) {
            return Ok(false);
        }
        let ord = &self.set.p.order;
        let pos = l.syz.w.pos;
        for q in &l.quotients {
            match self.set.reducer(&GenRef::F(q.gen), &q.lam, &q.rho, pos)? {
                Some(m) if m.lead_term().is_some_and(|t| ord.compare(t, &l.syz.w).is_lt()) => {}
                _ => return Ok(false),
            }
        }
        let Some(s) = self.set.spoly(&l.syz)? else { return Ok(false) };
        let r = Reduction { nf: l.residual.clone(), quotients: l.quotients.clone() };
        self.set.check_reduction(&s, &r, pos)
    }
}

/// Saturates `gens` by bilateral completion in the free ring `ambient`.
pub fn saturate_relations(ambient: &Presentation, gens: &[NcPoly], bound: u32) -> Result<Saturation> {
    let mut c = Completion::new(ambient, gens, Side::Bilateral, GammaChoice::Auto, bound)?;
    let st = c.run()?;
    let basis = c.minimal_basis()?;
    let complete = st == Status::Complete || overlaps_resolve(ambient, &basis)?;
    Ok(Saturation { basis, complete })
}

/// Whether every overlap and inclusion of leading words of a monic basis
/// resolves to zero under two-sided reduction in the free ring.
fn overlaps_resolve(ambient: &Presentation, basis: &[NcPoly]) -> Result<bool> {
    let dom = ambient.domain;
    if basis.iter().any(|g| !dom.is_unit(g.lead_coeff().expect("nonzero"))) {
        return Ok(false);
    }
    let bound = 2 * basis.iter().map(NcPoly::max_degree).max().unwrap_or(0) as u32;
    let set = GeneratorSet::from_polys(ambient, basis, GammaChoice::Free, bound)?;
    let ord = &ambient.order;
    let lead = |g: &NcPoly| g.lead().cloned().expect("nonzero");
    let check = |f: NcPoly| -> Result<bool> { Ok(set.normal_form(&f, Mode::Strong, Side::Bilateral)?.nf.is_zero()) };
    for (i, a) in basis.iter().enumerate() {
        let (ta, ca) = lead(a);
        for (j, b) in basis.iter().enumerate() {
            let (tb, cb) = lead(b);
            let (wa, wb) = (&ta.word, &tb.word);
            if ta.pos != tb.pos {
                continue;
            }
            for k in 1..wa.len().min(wb.len()) {
                if wa[wa.len() - k..] == wb[..k] {
                    let s = a
                        .mul_words(&[], &wb[k..])
                        .scale(&cb)
                        .sub(ord, &b.mul_words(&wa[..wa.len() - k], &[]).scale(&ca));
                    if !check(s)? {
                        return Ok(false);
                    }
                }
            }
            if i != j && wb.len() <= wa.len() {
                for o in crate::freering::occurrences(wa, wb) {
                    let s = a.scale(&cb).sub(ord, &b.mul_words(&wa[..o], &wa[o + wb.len()..]).scale(&ca));
                    if !check(s)? {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(!set.exhausted())
}

/// Completes at each bound of a strictly increasing stream, stopping after the first complete snapshot.
pub fn enumerate<'a>(
    p: &'a Presentation,
    polys: &'a [NcPoly],
    side: Side,
    gamma: GammaChoice,
    bounds: impl IntoIterator<Item = u32> + 'a,
) -> impl Iterator<Item = Result<GBResult>> + 'a {
    let mut prev: Option<u32> = None;
    let mut done = false;
    bounds.into_iter().enumerate().map_while(move |(i, b)| {
        if done {
            return None;
        }
        if prev.is_some_and(|q| b <= q) {
            done = true;
            return Some(Err(Error::NonMonotoneStream(i)));
        }
        prev = Some(b);
        let step = (|| {
            let q = p.ensure_saturated(b)?;
            let mut c = Completion::new(&q, polys, side, gamma, b)?;
            c.run()?;
            c.result()
        })();
        done = !matches!(&step, Ok(r) if r.status == Status::BoundExhausted);
        Some(step)
    })
}

#[derive(Serialize)]
struct LiftDoc {
    case: &'static str,
    w: String,
    legs: [String; 2],
    quotients: Vec<String>,
    residual: String,
}

#[derive(Serialize)]
struct ResultDoc<'a> {
    side: Side,
    status: Status,
    bound: u32,
    gamma: Gamma,
    basis: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    strong_basis: Option<Vec<String>>,
    stats: &'a Stats,
    #[serde(skip_serializing_if = "Option::is_none")]
    lifts: Option<Vec<LiftDoc>>,
}

fn fmt_product(p: &Presentation, coeff: &crate::coeff::Scalar, lam: &[Letter], gen: String, rho: &[Letter]) -> String {
    let a = &p.alphabet;
    let mut parts = vec![coeff.to_string()];
    if !lam.is_empty() {
        parts.push(a.fmt_word(lam));
    }
    parts.push(gen);
    if !rho.is_empty() {
        parts.push(a.fmt_word(rho));
    }
    parts.join("*")
}

fn gen_name(r: &GenRef) -> String {
    match r {
        GenRef::F(i) => format!("F{i}"),
        GenRef::H(i) => format!("H{i}"),
    }
}

impl GBResult {
    /// Stable pretty-printed JSON document.
    pub fn to_json(&self, p: &Presentation) -> String {
        let fmt_all = |v: &[NcPoly]| v.iter().map(|f| p.fmt(f)).collect::<Vec<_>>();
        let lifts = self.lifts.as_ref().map(|ls| {
            ls.iter()
                .map(|l| LiftDoc {
                    case: l.syz.case.tag(),
                    w: p.alphabet.fmt_term(&l.syz.w),
                    legs: l.syz.legs.clone().map(|g| fmt_product(p, &g.coeff, &g.lam, gen_name(&g.gen), &g.rho)),
                    quotients: l
                        .quotients
                        .iter()
                        .map(|q| fmt_product(p, &q.coeff, &q.lam, format!("F{}", q.gen), &q.rho))
                        .collect(),
                    residual: p.fmt(&l.residual),
                })
                .collect()
        });
        let doc = ResultDoc {
            side: self.side,
            status: self.status,
            bound: self.bound,
            gamma: self.gamma,
            basis: fmt_all(&self.basis),
            strong_basis: self.strong.as_deref().map(fmt_all),
            stats: &self.stats,
            lifts,
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }
}
