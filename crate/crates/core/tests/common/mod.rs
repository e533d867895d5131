#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use wgb_core::coeff::{int, Scalar};
use wgb_core::freering::{Letter, NcPoly, Term, Word};
use wgb_core::presentation::{parse_file, Presentation};

pub const WEX_RELATIONS: &str = "\
[presentation]
v = x1 x2
V = X1
[ideal]
F: x2*x1; X1*x1 - x2*X1; X1*x2 - x1*X1
";

pub const WEX: &str = "\
[presentation]
v = x1 x2
V = X1
G0: x2*x1
C:  X1*x1 - x2*X1; X1*x2 - x1*X1
";

pub const ZXY: &str = "\
[presentation]
V = X Y
H: Y*X - X*Y
[ideal]
F: 2*X; 3*Y
";

pub const TORSION: &str = "\
[presentation]
V = X Y
H: 2*X; 3*Y; X*Y; Y*X
";

pub const FREE_XY: &str = "[presentation]\nV = X Y\n";

pub const WEYL: &str = "[presentation]\nv = x\nV = X\nC: X*x - x*X - 1\n";

pub const POLY_XX: &str = "[presentation]\nv = x\nV = X\nC: X*x - x*X\n";

/// Parses and saturates a presentation file.
pub fn load(src: &str, bound: u32) -> (Presentation, Vec<NcPoly>) {
    let f = parse_file(src).unwrap();
    (f.presentation.saturate(bound).unwrap(), f.ideal)
}

pub fn sorted_strings(p: &Presentation, v: &[NcPoly]) -> Vec<String> {
    let mut s: Vec<String> = v.iter().map(|f| p.fmt(f)).collect();
    s.sort();
    s
}

pub fn random_word<R: Rng>(rng: &mut R, letters: &[Letter], max_len: usize) -> Word {
    if letters.is_empty() {
        return Vec::new();
    }
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| *letters.choose(rng).unwrap()).collect()
}

pub fn random_coeff<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let c = rng.gen_range(-5..=5);
        if c != 0 {
            return int(c);
        }
    }
}

/// A random polynomial with at most `terms` terms of degree at most `deg`.
pub fn random_poly<R: Rng>(rng: &mut R, p: &Presentation, deg: usize, terms: usize) -> NcPoly {
    let letters: Vec<Letter> = p.letters().collect();
    let n = rng.gen_range(1..=terms);
    let mons = (0..n).map(|_| (Term::ring(random_word(rng, &letters, deg)), random_coeff(rng)));
    NcPoly::from_terms(&p.order, mons)
}

/// A random canonical polynomial that is nonzero when possible.
pub fn random_canonical<R: Rng>(rng: &mut R, p: &Presentation, deg: usize, terms: usize) -> NcPoly {
    for _ in 0..20 {
        let f = p.canonical_rep(&random_poly(rng, p, deg, terms)).unwrap();
        if !f.is_zero() {
            return f;
        }
    }
    NcPoly::zero()
}

/// Presentations used for randomized instances, with small alphabets.
pub fn instance_pool() -> Vec<&'static str> {
    vec![ZXY_RING, FREE_XY, WEX, POLY_XX, WEYL]
}

pub const ZXY_RING: &str = "[presentation]\nV = X Y\nH: Y*X - X*Y\n";

/// The instance pool saturated at degree 6, built once per test binary.
pub fn saturated_pool() -> &'static [Presentation] {
    static POOL: std::sync::OnceLock<Vec<Presentation>> = std::sync::OnceLock::new();
    POOL.get_or_init(|| instance_pool().into_iter().map(|s| load(s, 6).0).collect())
}

pub fn seeded(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}
