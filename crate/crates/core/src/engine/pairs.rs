use num_traits::Zero;

use super::{Gamma, Gen, GenRef, GeneratorSet};
use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::freering::{Letter, NcPoly, Term, Word};

/// Which configuration of leading terms produced a syzygy generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    A1,
    A2,
    A3,
    A4,
    /// Relation overlap not aligned with the coefficient/graded split.
    AOverlap,
    /// Relation pair through a commutative least common multiple.
    ALcm,
    B1,
    B3,
    /// Generator pair through a commutative least common multiple.
    BLcm,
}

impl Case {
    pub fn tag(self) -> &'static str {
        match self {
            Case::A1 => "A.1",
            Case::A2 => "A.2",
            Case::A3 => "A.3",
            Case::A4 => "A.4",
            Case::AOverlap => "A.o",
            Case::ALcm => "A.l",
            Case::B1 => "B.1",
            Case::B3 => "B.3",
            Case::BLcm => "B.l",
        }
    }
}

/// `coeff · λ ⋆ gen ⋆ ρ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Leg {
    pub coeff: Scalar,
    pub gen: GenRef,
    pub lam: Word,
    pub rho: Word,
}

/// Homogeneous syzygy `legs[0] − legs[1]` of leading monomials at valuation `w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SyzGen {
    pub legs: [Leg; 2],
    pub w: Term,
    pub case: Case,
}

/// A gcd combination `Σ legs` at `w` whose leading coefficient generates the pair's ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct GcdPair {
    pub legs: Vec<Leg>,
    pub w: Term,
}

fn concat(parts: &[&[Letter]]) -> Word {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

impl<'p> GeneratorSet<'p> {
    fn is_graded_commutator(&self, h: &Gen) -> bool {
        let m = h.poly.monomials();
        m.len() == 2
            && m.iter().all(|(t, _)| t.word.len() == 2 && t.word.iter().all(|&l| !self.view.is_coeff(l)))
            && m[0].0.word[0] == m[1].0.word[1]
            && m[0].0.word[1] == m[1].0.word[0]
            && m[0].0.word[0] != m[0].0.word[1]
            && (&m[0].1 + &m[1].1).is_zero()
    }

    /// The leading term of `λ ⋆ g ⋆ ρ` before any rewriting.
    fn naive(&self, g: &Gen, lam: &[Letter], rho: &[Letter]) -> Term {
        let om = match self.view.gamma {
            Gamma::Free => concat(&[&g.om, rho]),
            Gamma::Commutative => {
                let mut w = concat(&[&g.om, rho]);
                w.sort_unstable();
                w
            }
        };
        Term::new(concat(&[lam, &g.ups, &om]), g.pos())
    }

    fn coeffs(&self, a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        let l = self.p.domain.lcm(a, b);
        (&l / a, &l / b)
    }

    /// `B(F[i], F[j])` when the leading terms of `F[i]`, `F[j]` admit a common restricted multiple.
    pub(crate) fn pair_ff(&self, i: usize, j: usize) -> Option<SyzGen> {
        let (gi, gj) = (&self.gens[i], &self.gens[j]);
        if gi.pos() != gj.pos() {
            return None;
        }
        let (lam_i, lam_j) = if let Some(l) = gj.ups.strip_suffix(gi.ups.as_slice()) {
            (l.to_vec(), Vec::new())
        } else {
            (Vec::new(), gi.ups.strip_suffix(gj.ups.as_slice())?.to_vec())
        };
        let (_, rho_i, rho_j) = self.view.lcm(&gi.om, &gj.om)?;
        // Orient so that g1's ω left-divides g2's ω.
        let (a, la, ra, b, lb, rb) = if rho_j.is_empty() || !rho_i.is_empty() && !rho_j.is_empty() && i < j {
            (i, lam_i, rho_i, j, lam_j, rho_j)
        } else {
            (j, lam_j, rho_j, i, lam_i, rho_i)
        };
        let (g1, g2) = (&self.gens[a], &self.gens[b]);
        let case = if !ra.is_empty() && !rb.is_empty() {
            Case::BLcm
        } else if g2.ups.ends_with(&g1.ups) {
            Case::B3
        } else {
            Case::B1
        };
        let w = self.naive(g1, &la, &ra);
        let (c1, c2) = self.coeffs(&g1.lc, &g2.lc);
        Some(SyzGen {
            legs: [
                Leg { coeff: c2, gen: GenRef::F(b), lam: lb, rho: rb },
                Leg { coeff: c1, gen: GenRef::F(a), lam: la, rho: ra },
            ],
            w,
            case,
        })
    }

    /// `B(F[i], h)` for every admissible placement of the relation `h` against `F[i]`.
    pub(crate) fn pairs_fh(&self, i: usize, hj: usize) -> Result<Vec<SyzGen>> {
        let f = &self.gens[i];
        let h = &self.hrel[hj];
        if self.view.gamma == Gamma::Commutative && !h.om.is_empty() {
            if self.is_graded_commutator(h) {
                return Ok(Vec::new());
            }
            return Ok(self.pair_fh_lcm(i, hj)?.into_iter().collect());
        }
        let t = &f.lead.word;
        let u = &h.lead.word;
        let unit = self.p.domain.is_unit(&h.lc);
        let (tl, ul) = (t.len() as isize, u.len() as isize);
        let mut out = Vec::new();
        for s in -ul..=tl {
            let touches = s < tl && s + ul > 0;
            let adjacent = s == tl || s + ul == 0;
            if !(touches || adjacent && !unit) {
                continue;
            }
            let left = (-s).max(0) as usize;
            let right = (s + ul - tl).max(0) as usize;
            let lam = &u[..left];
            let rho = &u[u.len() - right..];
            if !lam.iter().all(|&l| self.view.is_coeff(l)) || !rho.iter().all(|&l| !self.view.is_coeff(l)) {
                continue;
            }
            if self.view.gamma == Gamma::Commutative && !rho.is_empty() {
                continue;
            }
            let lo = s.max(0) as usize;
            let hi = (s + ul).min(tl) as usize;
            if t[lo..hi] != u[left..left + (hi - lo)] {
                continue;
            }
            let w = Term::new(concat(&[lam, t, rho]), f.pos());
            let hstart = (left as isize + s) as usize;
            let hl = w.word[..hstart].to_vec();
            let hr = w.word[hstart + u.len()..].to_vec();
            let aligned = s + h.ups.len() as isize == f.ups.len() as isize;
            let case = if aligned { self.a_case(f, h) } else { Case::AOverlap };
            let (cf, ch) = self.coeffs(&f.lc, &h.lc);
            out.push(SyzGen {
                legs: [
                    Leg { coeff: ch, gen: GenRef::H(hj), lam: hl, rho: hr },
                    Leg { coeff: cf, gen: GenRef::F(i), lam: lam.to_vec(), rho: rho.to_vec() },
                ],
                w,
                case,
            });
        }
        Ok(out)
    }

    fn a_case(&self, f: &Gen, h: &Gen) -> Case {
        let om_f_h = self.view.left_div(&f.om, &h.om).is_some();
        let om_h_f = self.view.left_div(&h.om, &f.om).is_some();
        if om_f_h && f.ups.ends_with(&h.ups) {
            Case::A1
        } else if om_h_f && h.ups.ends_with(&f.ups) {
            Case::A2
        } else if om_f_h && h.ups.ends_with(&f.ups) {
            Case::A3
        } else if om_h_f && f.ups.ends_with(&h.ups) {
            Case::A4
        } else {
            Case::ALcm
        }
    }

    fn pair_fh_lcm(&self, i: usize, hj: usize) -> Result<Option<SyzGen>> {
        let f = &self.gens[i];
        let h = &self.hrel[hj];
        let (lam_f, lam_h) = if let Some(l) = h.ups.strip_suffix(f.ups.as_slice()) {
            (l.to_vec(), Vec::new())
        } else if let Some(l) = f.ups.strip_suffix(h.ups.as_slice()) {
            (Vec::new(), l.to_vec())
        } else {
            return Ok(None);
        };
        let Some((_, rho_f, rho_h)) = self.view.lcm(&f.om, &h.om) else { return Ok(None) };
        let w = self.naive(f, &lam_f, &rho_f);
        if w.degree() > self.bound as usize || w.degree() > self.p.saturated_bound().unwrap_or(0) as usize {
            self.mark_exhausted();
            return Ok(None);
        }
        if self.torsion(&w)?.is_zero() {
            return Ok(None);
        }
        let (cf, ch) = self.coeffs(&f.lc, &h.lc);
        Ok(Some(SyzGen {
            legs: [
                Leg { coeff: ch, gen: GenRef::H(hj), lam: lam_h, rho: rho_h },
                Leg { coeff: cf, gen: GenRef::F(i), lam: lam_f, rho: rho_f },
            ],
            w,
            case: self.a_case(f, h),
        }))
    }

    /// Syzygy generators involving `F[n]` and earlier generators or relations.
    pub(crate) fn pairs_for(&self, n: usize) -> Result<Vec<SyzGen>> {
        let mut out: Vec<SyzGen> = (0..n).filter_map(|i| self.pair_ff(i, n)).collect();
        for j in 0..self.hrel.len() {
            out.extend(self.pairs_fh(n, j)?);
        }
        Ok(out)
    }

    /// The restricted Gebauer–Möller set of the current generators.
    pub fn spairs_restricted(&self) -> Result<Vec<SyzGen>> {
        let mut out = Vec::new();
        for n in 0..self.gens.len() {
            out.extend(self.pairs_for(n)?);
        }
        Ok(out)
    }

    /// Evaluates the S-polynomial `S(σ)`; `None` if a leg exceeds the bound.
    pub fn spoly(&self, s: &SyzGen) -> Result<Option<NcPoly>> {
        for l in &s.legs {
            let ok = match l.gen {
                GenRef::F(i) => i < self.gens.len(),
                GenRef::H(i) => i < self.hrel.len(),
            };
            if !ok || self.naive(self.gen(&l.gen), &l.lam, &l.rho).pos != s.w.pos {
                return Err(Error::LegMismatch);
            }
        }
        let neg = Leg { coeff: -s.legs[1].coeff.clone(), ..s.legs[1].clone() };
        self.eval_legs(&[s.legs[0].clone(), neg], s.w.pos)
    }

    /// Both legs place their generator's leading term at `w` before rewriting.
    pub fn is_homogeneous(&self, s: &SyzGen) -> bool {
        s.legs.iter().all(|l| match l.gen {
            GenRef::F(_) => self.naive(self.gen(&l.gen), &l.lam, &l.rho) == s.w,
            GenRef::H(_) => {
                let g = self.gen(&l.gen);
                Term::new(concat(&[&l.lam, &g.lead.word, &l.rho]), s.w.pos) == s.w
                    || self.view.gamma == Gamma::Commutative
            }
        })
    }

    /// A gcd combination for the pair, when its leading coefficients do not divide each other.
    pub(crate) fn gcd_pair(&self, s: &SyzGen) -> Result<Option<GcdPair>> {
        let dom = self.p.domain;
        if dom.is_field() || s.w.degree() > self.bound as usize {
            return Ok(None);
        }
        let tor = self.torsion(&s.w)?;
        let lcs: Vec<Scalar> = s
            .legs
            .iter()
            .map(|l| match l.gen {
                GenRef::F(_) => dom.canon_rem(&self.gen(&l.gen).lc, &tor),
                GenRef::H(_) => tor.clone(),
            })
            .collect();
        if lcs.iter().any(Zero::is_zero) || lcs.iter().any(|a| lcs.iter().all(|b| dom.divides(a, b))) {
            return Ok(None);
        }
        let (_, comb) = dom.strong_ideal_basis(&lcs)?;
        let legs = s
            .legs
            .iter()
            .zip(comb)
            .filter(|(l, _)| matches!(l.gen, GenRef::F(_)))
            .map(|(l, c)| Leg { coeff: c, ..l.clone() })
            .collect();
        Ok(Some(GcdPair { legs, w: s.w.clone() }))
    }

    /// `(naive_pairs, gm_size)`.
    pub fn pair_stats(&self) -> Result<(usize, usize)> {
        Ok((self.naive_pairs(), self.spairs_restricted()?.len()))
    }

    /// Number of compatible placements of leading words over all same-position pairs.
    pub fn naive_pairs(&self) -> usize {
        let mut n = 0;
        let all: Vec<&Gen> = self.gens.iter().collect();
        for (k, a) in all.iter().enumerate() {
            for b in &all[k + 1..] {
                if a.pos() == b.pos() {
                    n += placements(&a.lead.word, &b.lead.word);
                    if self.view.gamma == Gamma::Commutative {
                        n += 1;
                    }
                }
            }
            for h in &self.hrel {
                n += placements(&a.lead.word, &h.lead.word);
                if self.view.gamma == Gamma::Commutative {
                    n += 1;
                }
            }
        }
        n
    }
}

/// Relative offsets at which `u` intersects or touches `t` and agrees with it.
fn placements(t: &[Letter], u: &[Letter]) -> usize {
    let (tl, ul) = (t.len() as isize, u.len() as isize);
    (-ul..=tl)
        .filter(|&s| {
            let lo = s.max(0);
            let hi = (s + ul).min(tl);
            (lo..hi).all(|p| t[p as usize] == u[(p - s) as usize])
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn placement_count() {
        assert_eq!(placements(&[0], &[1]), 2);
        assert_eq!(placements(&[0, 1], &[1, 0]), 4);
    }
}
