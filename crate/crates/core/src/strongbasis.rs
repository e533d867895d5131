//! Strong restricted bases from restricted Gröbner bases over the integers.

use crate::engine::{GenRef, GeneratorSet, Leg};
use crate::error::{Error, Result};
use crate::freering::{NcPoly, Word};

/// Divisor data at one basis element `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongStep {
    /// Elements `h` with `ω_h | ω_g`, with cofactors `t` such that `ω_h ∘ t = ω_g`.
    pub divisors: Vec<(GenRef, Word)>,
    /// Generator of the ideal of leading coefficients of the module divisors.
    pub ideal: crate::coeff::Scalar,
    /// Bézout coefficients over the module divisors.
    pub combination: Vec<crate::coeff::Scalar>,
    /// `Σ γ_h h ★ t_h`.
    pub element: NcPoly,
}

fn fmt_lead(s: &GeneratorSet<'_>, k: usize) -> String {
    let g = &s.gens[k];
    s.p.fmt(&NcPoly::monomial(g.lc.clone(), g.lead.clone()))
}

/// The combination step at `F[k]`.
pub fn strong_step(s: &GeneratorSet<'_>, k: usize) -> Result<StrongStep> {
    let g = &s.gens[k];
    if !g.ups.is_empty() {
        return Err(Error::NonScalarLeadingCoefficient(fmt_lead(s, k)));
    }
    let mut divisors = Vec::new();
    let mut legs = Vec::new();
    for (i, h) in s.gens.iter().enumerate() {
        if h.pos() != g.pos() {
            continue;
        }
        if let Some(t) = s.view.left_div(&h.om, &g.om) {
            if !h.ups.is_empty() {
                return Err(Error::NonScalarLeadingCoefficient(fmt_lead(s, i)));
            }
            divisors.push((GenRef::F(i), t.clone()));
            legs.push((i, t));
        }
    }
    for (j, h) in s.hrel.iter().enumerate() {
        if h.ups.is_empty() {
            if let Some(t) = s.view.left_div(&h.om, &g.om) {
                divisors.push((GenRef::H(j), t));
            }
        }
    }
    let lcs: Vec<_> = legs.iter().map(|(i, _)| s.gens[*i].lc.clone()).collect();
    let (ideal, combination) = s.p.domain.strong_ideal_basis(&lcs)?;
    let legs: Vec<Leg> = legs
        .into_iter()
        .zip(&combination)
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|((i, t), c)| Leg { coeff: c.clone(), gen: GenRef::F(i), lam: Vec::new(), rho: t })
        .collect();
    let element = s
        .eval_legs(&legs, g.pos())?
        .ok_or(Error::SaturationInsufficient { degree: g.lead.degree(), bound: s.bound as usize })?;
    Ok(StrongStep { divisors, ideal, combination, element })
}

/// Union of the combination steps over all basis elements, normalized and deduplicated.
pub fn strong_restricted_basis(s: &GeneratorSet<'_>) -> Result<Vec<NcPoly>> {
    let mut out: Vec<NcPoly> = Vec::new();
    for k in 0..s.len() {
        let e = s.p.normalize(&strong_step(s, k)?.element);
        if !e.is_zero() && !out.contains(&e) {
            out.push(e);
        }
    }
    out.sort_by(|a, b| {
        let (ta, tb) = (a.lead_term().expect("nonzero"), b.lead_term().expect("nonzero"));
        s.p.order.compare(ta, tb)
    });
    Ok(out)
}
