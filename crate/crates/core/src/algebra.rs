//! Products of canonical representatives: the ring multiplication `★`, the
//! twisted product `⋄`, graded products and tails, and leading forms.

use num_traits::Zero;

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::freering::{Letter, NcPoly, Term, Word};
use crate::presentation::Presentation;

/// `c · τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Scalar,
    pub term: Term,
}

impl Monomial {
    pub fn new(coeff: Scalar, term: Term) -> Self {
        Monomial { coeff, term }
    }

    pub fn poly(&self) -> NcPoly {
        NcPoly::monomial(self.coeff.clone(), self.term.clone())
    }
}

/// Leading data of a nonzero element: `T`, the scalar `γ` and word `υ` of the
/// leading term, its graded part `ω`, and the coefficient `c(f, ω)` collecting
/// every term with graded part `ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leading {
    pub term: Term,
    pub gamma: Scalar,
    pub ups: Word,
    pub omega: Word,
    /// Ring element over the coefficient letters.
    pub coeff: NcPoly,
    /// `c(f, ω) · ω`.
    pub monomial: NcPoly,
}

fn split<'a>(p: &Presentation, w: &'a [Letter]) -> (&'a [Letter], &'a [Letter]) {
    let k = w.iter().position(|&l| !p.alphabet.is_v(l)).unwrap_or(w.len());
    w.split_at(k)
}

/// `f ★ g`: the canonical form of the free product.
pub fn star_mul(p: &Presentation, f: &NcPoly, g: &NcPoly) -> Result<NcPoly> {
    p.canonical_rep(&f.mul(&p.order, g)?)
}

/// `f ⋄ g`: coefficient blocks multiply in order, graded blocks in swapped order.
pub fn diamond_mul(p: &Presentation, f: &NcPoly, g: &NcPoly) -> Result<NcPoly> {
    if f.position() > 0 {
        return Err(Error::BothPositioned);
    }
    let pos = g.position();
    let mut out = Vec::new();
    for (t1, c1) in f.iter() {
        let (u1, o1) = split(p, &t1.word);
        for (t2, c2) in g.iter() {
            let (u2, o2) = split(p, &t2.word);
            let w: Word = u1.iter().chain(u2).chain(o2).chain(o1).copied().collect();
            out.push((Term::new(w, pos), c1 * c2));
        }
    }
    p.canonical_rep(&NcPoly::from_terms(&p.order, out))
}

fn free_product(l: &Monomial, g: &Monomial, r: &Monomial) -> Monomial {
    let t = g.term.mul_words(&l.term.word, &r.term.word);
    let pos = l.term.pos.max(g.term.pos).max(r.term.pos);
    Monomial::new(&l.coeff * &g.coeff * &r.coeff, Term::new(t.word, pos))
}

/// `l ∗ g ∗ r`: the free product when it survives as the leading monomial of
/// `l ★ g ★ r`, zero otherwise.
pub fn graded_mul(p: &Presentation, l: &Monomial, g: &Monomial, r: &Monomial) -> Result<Option<Monomial>> {
    let m = free_product(l, g, r);
    let star = p.canonical_rep(&m.poly())?;
    Ok(match star.lead() {
        Some((t, c)) if *t == m.term => Some(Monomial::new(c.clone(), t.clone())),
        _ => None,
    })
}

/// `l ★ g ★ r − l ∗ g ∗ r`.
pub fn tail(p: &Presentation, l: &Monomial, g: &Monomial, r: &Monomial) -> Result<NcPoly> {
    let star = p.canonical_rep(&free_product(l, g, r).poly())?;
    Ok(match graded_mul(p, l, g, r)? {
        Some(m) => star.sub(&p.order, &m.poly()),
        None => star,
    })
}

pub fn leading(p: &Presentation, f: &NcPoly) -> Result<Leading> {
    let (term, gamma) = f.lead().cloned().ok_or(Error::ZeroPolynomial)?;
    let (u, o) = split(p, &term.word);
    let (ups, omega) = (u.to_vec(), o.to_vec());
    let coeff = NcPoly::from_terms(
        &p.order,
        f.iter().filter_map(|(t, c)| {
            let (tu, to) = split(p, &t.word);
            (t.pos == term.pos && to == omega.as_slice()).then(|| (Term::ring(tu.to_vec()), c.clone()))
        }),
    );
    let monomial = NcPoly::from_terms(
        &p.order,
        coeff.iter().map(|(t, c)| {
            let w: Word = t.word.iter().chain(&omega).copied().collect();
            (Term::new(w, term.pos), c.clone())
        }),
    );
    debug_assert!(!gamma.is_zero());
    Ok(Leading { term, gamma, ups, omega, coeff, monomial })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;
    use crate::presentation::parse_file;

    fn wex() -> Presentation {
        let src = "[presentation]\nv = x1 x2\nV = X1\nG0: x2*x1\nC: X1*x1 - x2*X1; X1*x2 - x1*X1\n";
        parse_file(src).unwrap().presentation.saturate(6).unwrap()
    }

    fn mono(p: &Presentation, c: i64, w: &[&str]) -> Monomial {
        Monomial::new(int(c), Term::ring(p.alphabet.word(w)))
    }

    #[test]
    fn star_examples() {
        let p = wex();
        let x = |s: &str| p.parse(s).unwrap();
        assert!(star_mul(&p, &x("x2"), &x("x1")).unwrap().is_zero());
        assert_eq!(p.fmt(&star_mul(&p, &x("X1"), &x("x1")).unwrap()), "x2*X1");
        assert_eq!(star_mul(&p, &x("X1 + x1"), &x("1")).unwrap(), x("X1 + x1"));
    }

    #[test]
    fn diamond_examples() {
        let p = wex();
        let x = |s: &str| p.parse(s).unwrap();
        assert_eq!(p.fmt(&diamond_mul(&p, &x("2*X1"), &x("3*X1")).unwrap()), "6*X1^2");
        assert_eq!(p.fmt(&diamond_mul(&p, &x("x1"), &x("X1")).unwrap()), "x1*X1");
        assert!(diamond_mul(&p, &x("x1*X1"), &x("x2*X1")).unwrap().is_zero());
    }

    #[test]
    fn graded_and_tail() {
        let p = wex();
        let one = mono(&p, 1, &[]);
        let x1 = mono(&p, 1, &["X1"]);
        let v1 = mono(&p, 1, &["x1"]);
        assert_eq!(graded_mul(&p, &one, &x1, &v1).unwrap(), None);
        assert_eq!(p.fmt(&tail(&p, &one, &x1, &v1).unwrap()), "x2*X1");
        assert_eq!(graded_mul(&p, &one, &x1, &one).unwrap(), Some(x1.clone()));
        assert!(tail(&p, &one, &x1, &one).unwrap().is_zero());
    }

    #[test]
    fn leading_examples() {
        let p = wex();
        let f = p.parse("2*x1*X1 - x2*X1").unwrap();
        let l = leading(&p, &f).unwrap();
        assert_eq!(p.alphabet.fmt_term(&l.term), "x2*X1");
        assert_eq!(l.gamma, int(-1));
        assert_eq!(p.fmt(&l.coeff), "-x2 + 2*x1");
        assert_eq!(l.omega, p.alphabet.word(&["X1"]));
        let g = p.parse("x2*x1").unwrap();
        let free = p.ambient();
        let l = leading(&free, &g).unwrap();
        assert_eq!((l.ups.len(), l.omega.len(), l.gamma), (2, 0, int(1)));
        assert_eq!(leading(&p, &NcPoly::zero()), Err(Error::ZeroPolynomial));
    }
}
