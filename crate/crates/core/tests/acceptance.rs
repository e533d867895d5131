mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::*;
use num_integer::Integer;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use wgb_core::algebra::{diamond_mul, star_mul, tail, Monomial};
use wgb_core::coeff::{Domain, Scalar};
use wgb_core::engine::{Completion, GammaChoice, GenRef, GeneratorSet, Membership, Mode, Side, Stats, Status};
use wgb_core::freering::{Letter, NcPoly, Term, Word};
use wgb_core::oracle::{oracle_member, OracleAnswer, Row, SpanMatrix};
use wgb_core::presentation::Presentation;

const CRITERION_1_LIMIT: Duration = Duration::from_secs(5);
const CRITERION_2_LIMIT: Duration = Duration::from_secs(1);
const CRITERION_1_STATS: (usize, usize) = (59, 0);
const CRITERION_2_STATS: (usize, usize) = (24, 3);
const ORACLE_INSTANCES: usize = 60;
const ORACLE_BOUND: u32 = 4;
const ORACLE_RETRY: u32 = 2;
const COMBINATIONS: usize = 100;
const KERNEL_INSTANCES: usize = 20;
const KERNEL_DEGREE: usize = 4;

type Outcome = Result<String, String>;

fn e<T>(r: wgb_core::Result<T>) -> Result<T, String> {
    r.map_err(|err| err.to_string())
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Results shared between criteria.
#[derive(Default)]
struct Ledger {
    lifts_checked: usize,
    lift_failures: Vec<String>,
    stats: Vec<(String, (usize, usize))>,
    c4_checked: usize,
    c4_failures: Vec<String>,
    c4_bases: usize,
}

impl Ledger {
    fn record_stats(&mut self, label: String, s: &Stats) {
        self.stats.push((label, (s.naive_pairs, s.gm_size)));
    }

    fn record_lifts(&mut self, label: &str, c: &Completion<'_>) -> Result<(), String> {
        for l in e(c.liftings())? {
            self.lifts_checked += 1;
            if !e(c.check_lift(&l))? {
                self.lift_failures.push(format!("{label}: {l:?}"));
            }
        }
        Ok(())
    }
}

fn lead_monomials(p: &Presentation, v: &[NcPoly]) -> Vec<String> {
    let mut out: Vec<String> =
        v.iter().map(|g| p.fmt(&NcPoly::from_descending(vec![g.lead().unwrap().clone()]))).collect();
    out.sort();
    out
}

fn criterion_1(ledger: &mut Ledger) -> Outcome {
    let (q, f) = load(WEX_RELATIONS, 6);
    let start = Instant::now();
    let mut c = e(Completion::new(&q, &f, Side::Bilateral, GammaChoice::Auto, 6))?;
    let status = e(c.run())?;
    let r = e(c.result())?;
    let elapsed = start.elapsed();
    let mut want: Vec<NcPoly> = f.clone();
    for j in 1..=4 {
        want.push(e(q.parse(&format!("x1*x2^{j}*X1")))?);
    }
    let norm = |v: &[NcPoly]| sorted_strings(&q, &v.iter().map(|g| q.normalize(g)).collect::<Vec<_>>());
    let (got, want) = (norm(&r.basis), norm(&want));
    ledger.record_stats("criterion 1".into(), &r.stats);
    check(got == want, || format!("basis {got:?}, expected {want:?}"))?;
    check(status == Status::BoundExhausted, || format!("status {status:?}"))?;
    check(elapsed < CRITERION_1_LIMIT, || format!("took {elapsed:?}"))?;
    check(c.liftings().is_err(), || "liftings on an incomplete result".into())?;
    Ok(format!("{} elements, bound_exhausted, {:.2?}", got.len(), elapsed))
}

fn criterion_2(ledger: &mut Ledger) -> Outcome {
    let (p, f) = load(ZXY, 4);
    let start = Instant::now();
    let mut c = e(Completion::new(&p, &f, Side::Restricted, GammaChoice::Auto, 4))?;
    let status = e(c.run())?;
    let strong = e(wgb_core::strongbasis::strong_restricted_basis(&c.set))?;
    let xy = e(p.parse("X*Y"))?;
    let x = e(p.parse("X"))?;
    let yes = e(c.member(&xy))?;
    let no = e(c.member(&x))?;
    let elapsed = start.elapsed();
    let r = e(c.result())?;
    ledger.record_stats("criterion 2".into(), &r.stats);
    ledger.record_lifts("criterion 2", &c)?;
    let leads = lead_monomials(&p, &strong);
    check(status == Status::Complete, || format!("status {status:?}"))?;
    check(leads == ["2*X", "3*Y", "X*Y"], || format!("strong leads {leads:?}"))?;
    match &yes {
        Membership::Yes(red) => check(e(c.set.check_reduction(&xy, red, 0))?, || "bad representation".into())?,
        other => return Err(format!("member X*Y: {other:?}")),
    }
    check(matches!(no, Membership::No(_)), || format!("member X: {no:?}"))?;
    check(elapsed < CRITERION_2_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("strong leads {leads:?}, X*Y yes, X no, {elapsed:.2?}"))
}

fn coeff_letters(set: &GeneratorSet<'_>) -> Vec<Letter> {
    set.view.coeff_letters()
}

fn graded_letters(set: &GeneratorSet<'_>) -> Vec<Letter> {
    set.view.graded_letters()
}

/// `Σ a_i ρ_i ⋄ g_i` with monomial coefficients `a_i` and graded words `ρ_i`, within `max_deg`.
fn combination<R: Rng>(rng: &mut R, set: &GeneratorSet<'_>, gens: &[NcPoly], max_deg: usize) -> Result<NcPoly, String> {
    let p = set.p;
    let (cl, gl) = (coeff_letters(set), graded_letters(set));
    let mut acc = NcPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let g = gens.choose(rng).unwrap();
        let room = max_deg.saturating_sub(g.max_degree());
        let a = random_word(rng, &cl, room.min(1));
        let rho = random_word(rng, &gl, (room - a.len()).min(2));
        let m = NcPoly::monomial(random_coeff(rng), Term::ring([a, rho].concat()));
        acc = acc.add(&p.order, &e(diamond_mul(p, &m, g))?);
    }
    e(p.canonical_rep(&acc))
}

fn criterion_3(ledger: &mut Ledger) -> Outcome {
    let pool = saturated_pool();
    let mut rng = seeded(3);
    let (mut compared, mut unknown, mut retried, mut instances) = (0, 0, 0, 0);
    let mut failures = Vec::new();
    for inst in 0..ORACLE_INSTANCES {
        let p = &pool[inst % pool.len()];
        let n = rng.gen_range(1..=3);
        let gens: Vec<NcPoly> = (0..n).map(|_| random_canonical(&mut rng, p, 2, 2)).filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            continue;
        }
        instances += 1;
        let mut c = e(Completion::new(p, &gens, Side::Restricted, GammaChoice::Auto, ORACLE_BOUND))?;
        let status = e(c.run())?;
        let r = e(c.result())?;
        let label = format!("instance {inst} [{}]", gens.iter().map(|g| p.fmt(g)).collect::<Vec<_>>().join("; "));
        ledger.record_stats(format!("criterion 3 {label}"), &r.stats);
        let mut probes = Vec::new();
        for _ in 0..2 {
            probes.push(random_canonical(&mut rng, p, 3, 3));
            probes.push(combination(&mut rng, &c.set, &gens, ORACLE_BOUND as usize)?);
        }
        for g in probes.iter().filter(|g| g.max_degree() <= ORACLE_BOUND as usize) {
            let verdict = match e(c.member(g))? {
                Membership::Yes(_) => true,
                Membership::No(_) => false,
                Membership::Unknown(_) => {
                    unknown += 1;
                    continue;
                }
            };
            compared += 1;
            let mut oracle = e(oracle_member(p, g, &gens, Side::Restricted, ORACLE_BOUND))? == OracleAnswer::Yes;
            if verdict && !oracle {
                retried += 1;
                oracle =
                    e(oracle_member(p, g, &gens, Side::Restricted, ORACLE_BOUND + ORACLE_RETRY))? == OracleAnswer::Yes;
            }
            if verdict != oracle {
                failures.push(format!("{label}: {} engine {verdict} oracle {oracle}", p.fmt(g)));
            }
        }
        if status == Status::Complete {
            ledger.record_lifts(&label, &c)?;
            criterion_4_on(ledger, &mut rng, &c, &r.basis, &label)?;
        }
    }
    check(instances >= 50, || format!("only {instances} instances"))?;
    check(failures.is_empty(), || format!("{} disagreements, first: {}", failures.len(), failures[0]))?;
    Ok(format!("{instances} instances, {compared} verdicts agree, {unknown} unknown skipped, {retried} rechecked at +{ORACLE_RETRY}"))
}

fn criterion_4_on<R: Rng>(
    ledger: &mut Ledger,
    rng: &mut R,
    c: &Completion<'_>,
    basis: &[NcPoly],
    label: &str,
) -> Result<(), String> {
    ledger.c4_bases += 1;
    let set = c.basis_set(basis);
    for _ in 0..COMBINATIONS {
        let f = combination(rng, &set, basis, 6)?;
        ledger.c4_checked += 1;
        let nf = e(set.normal_form(&f, Mode::Weak, Side::Restricted))?.nf;
        if !nf.is_zero() {
            ledger.c4_failures.push(format!("{label}: {} has normal form {}", set.p.fmt(&f), set.p.fmt(&nf)));
        }
    }
    Ok(())
}

fn criterion_4(ledger: &Ledger) -> Outcome {
    check(ledger.c4_bases > 0, || "no complete restricted bases".into())?;
    check(ledger.c4_failures.is_empty(), || {
        format!("{} nonzero, first: {}", ledger.c4_failures.len(), ledger.c4_failures[0])
    })?;
    Ok(format!("{} combinations over {} bases reduce to 0", ledger.c4_checked, ledger.c4_bases))
}

fn criterion_5(ledger: &Ledger) -> Outcome {
    check(ledger.lifts_checked > 0, || "no liftings".into())?;
    check(ledger.lift_failures.is_empty(), || {
        format!("{} failed, first: {}", ledger.lift_failures.len(), ledger.lift_failures[0])
    })?;
    Ok(format!("{} liftings verified", ledger.lifts_checked))
}

/// A restricted placement `λ ⋆ F[i] ⋆ ρ`.
type Place = (usize, Word, Word);

fn words(letters: &[Letter], max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        frontier =
            frontier.iter().flat_map(|w: &Word| letters.iter().map(move |&l| [w.as_slice(), &[l]].concat())).collect();
        out.extend(frontier.iter().cloned());
    }
    out
}

fn is_canonical(p: &Presentation, w: &[Letter]) -> Result<bool, String> {
    let t = Term::ring(w.to_vec());
    Ok(e(p.canonical_term(&t))? == NcPoly::term(t))
}

/// Checks that every homogeneous syzygy of leading monomials up to `KERNEL_DEGREE`
/// lies in the span of shifted GM generators; returns (valuations, kernel vectors).
fn kernel_in_gm_span(set: &GeneratorSet<'_>) -> Result<(usize, usize), String> {
    let p = set.p;
    let (cl, gl) = (coeff_letters(set), graded_letters(set));
    let mut canon: BTreeMap<Word, bool> = BTreeMap::new();
    let mut canonical = |w: &Word| -> Result<bool, String> {
        if let Some(&b) = canon.get(w) {
            return Ok(b);
        }
        let b = is_canonical(p, w)?;
        canon.insert(w.clone(), b);
        Ok(b)
    };
    let mut places: BTreeMap<Term, Vec<(Place, Scalar)>> = BTreeMap::new();
    for (i, g) in set.gens.iter().enumerate() {
        let room = KERNEL_DEGREE.saturating_sub(g.lead.degree());
        for lam in words(&cl, room) {
            for rho in words(&gl, room - lam.len()) {
                if !canonical(&lam)? || !canonical(&rho)? {
                    continue;
                }
                let w = Term::ring([lam.as_slice(), &g.ups, &g.om, &rho].concat());
                places.entry(w).or_default().push(((i, lam.clone(), rho), g.lc.clone()));
            }
        }
    }
    let mut spans: BTreeMap<Term, SpanMatrix<Place>> = BTreeMap::new();
    for s in e(set.spairs_restricted())? {
        let room = KERNEL_DEGREE.saturating_sub(s.w.degree());
        for lam in words(&cl, room) {
            'shift: for rho in words(&gl, room - lam.len()) {
                let w = Term::ring([lam.as_slice(), &s.w.word, &rho].concat());
                let mut row: Row<Place> = BTreeMap::new();
                for (k, leg) in s.legs.iter().enumerate() {
                    let GenRef::F(i) = leg.gen else { continue };
                    let (l2, r2) = ([lam.as_slice(), &leg.lam].concat(), [leg.rho.as_slice(), &rho].concat());
                    if !canonical(&l2)? || !canonical(&r2)? {
                        continue 'shift;
                    }
                    let c = if k == 0 { leg.coeff.clone() } else { -leg.coeff.clone() };
                    let entry = row.entry((i, l2, r2)).or_insert_with(Scalar::zero);
                    *entry += c;
                }
                row.retain(|_, v| !v.is_zero());
                if !row.is_empty() {
                    e(spans.entry(w).or_insert_with(|| SpanMatrix::new(Domain::Int)).insert(row))?;
                }
            }
        }
    }
    let (mut valuations, mut vectors) = (0, 0);
    let empty = SpanMatrix::new(Domain::Int);
    for (w, ps) in &places {
        let t = e(set.torsion(w))?;
        let mut kernel: Vec<Row<Place>> = Vec::new();
        for (a, (pa, ca)) in ps.iter().enumerate() {
            for (pb, cb) in &ps[a + 1..] {
                let g = ca.numer().gcd(cb.numer());
                let g = Scalar::from_integer(g);
                kernel.push(BTreeMap::from([(pa.clone(), cb / &g), (pb.clone(), -(ca / &g))]));
            }
            if !t.is_zero() {
                let g = Scalar::from_integer(ca.numer().gcd(t.numer()));
                kernel.push(BTreeMap::from([(pa.clone(), &t / &g)]));
            }
        }
        if kernel.is_empty() {
            continue;
        }
        valuations += 1;
        let span = spans.get(w).unwrap_or(&empty);
        for v in &kernel {
            vectors += 1;
            if !span.contains(v) {
                let show: Vec<String> = v
                    .iter()
                    .map(|((i, l, r), c)| format!("{c}*[{}]F{i}[{}]", p.alphabet.fmt_word(l), p.alphabet.fmt_word(r)))
                    .collect();
                return Err(format!("valuation {}: {} not spanned", p.alphabet.fmt_term(w), show.join(" + ")));
            }
        }
    }
    Ok((valuations, vectors))
}

fn criterion_6(ledger: &mut Ledger) -> Outcome {
    let pool = saturated_pool();
    let mut rng = seeded(6);
    let (mut valuations, mut vectors, mut instances) = (0, 0, 0);
    while instances < KERNEL_INSTANCES {
        let p = &pool[instances % pool.len()];
        let n = rng.gen_range(2..=3);
        let gens: Vec<NcPoly> = (0..n).map(|_| random_canonical(&mut rng, p, 2, 2)).filter(|g| !g.is_zero()).collect();
        if gens.len() < 2 {
            continue;
        }
        let set = e(GeneratorSet::from_polys(p, &gens, GammaChoice::Free, 2 * KERNEL_DEGREE as u32))?;
        let label = gens.iter().map(|g| p.fmt(g)).collect::<Vec<_>>().join("; ");
        let (naive, gm) = e(set.pair_stats())?;
        ledger.stats.push((format!("criterion 6 [{label}]"), (naive, gm)));
        let (v, k) = kernel_in_gm_span(&set).map_err(|m| format!("[{label}] {m}"))?;
        valuations += v;
        vectors += k;
        instances += 1;
    }
    Ok(format!("{instances} instances, {vectors} kernel vectors at {valuations} valuations spanned"))
}

fn count_failures(n: usize, mut f: impl FnMut(usize) -> Result<bool, String>) -> Result<usize, String> {
    let mut bad = 0;
    for k in 0..n {
        if !f(k)? {
            bad += 1;
        }
    }
    Ok(bad)
}

fn criterion_7() -> Outcome {
    let pool = saturated_pool();
    let pick = |k: usize| &pool[k % pool.len()];
    let star = count_failures(200, |k| {
        let (p, mut rng) = (pick(k), seeded(7_000 + k as u64));
        let (f, g, h) =
            (random_poly(&mut rng, p, 2, 3), random_poly(&mut rng, p, 2, 3), random_poly(&mut rng, p, 2, 3));
        Ok(e(star_mul(p, &e(star_mul(p, &f, &g))?, &h))? == e(star_mul(p, &f, &e(star_mul(p, &g, &h))?))?)
    })?;
    let diamond = count_failures(200, |k| {
        let (p, mut rng) = (pick(k), seeded(7_200 + k as u64));
        let cl: Vec<Letter> = p.alphabet.v_letters().collect();
        let gl: Vec<Letter> = p.alphabet.big_letters().collect();
        let a = NcPoly::monomial(random_coeff(&mut rng), Term::ring(random_word(&mut rng, &cl, 2)));
        let rho = random_word(&mut rng, &gl, 2);
        let f = random_canonical(&mut rng, p, 2, 3);
        let lhs = e(diamond_mul(p, &a.mul_words(&[], &rho), &f))?;
        let rhs = e(star_mul(p, &a, &e(star_mul(p, &f, &NcPoly::term(Term::ring(rho))))?))?;
        Ok(lhs == rhs)
    })?;
    let tails = count_failures(100, |k| {
        let (p, mut rng) = (pick(k), seeded(7_400 + k as u64));
        let letters: Vec<Letter> = p.letters().collect();
        let mut mono = || Monomial::new(random_coeff(&mut rng), Term::ring(random_word(&mut rng, &letters, 2)));
        let (l, g, r) = (mono(), mono(), mono());
        let top = Term::ring([l.term.word.as_slice(), &g.term.word, &r.term.word].concat());
        Ok(e(tail(p, &l, &g, &r))?.iter().all(|(t, _)| p.order.compare(t, &top).is_lt()))
    })?;
    let order = count_failures(500, |k| {
        let (p, mut rng) = (pick(k), seeded(7_500 + k as u64));
        let letters: Vec<Letter> = p.letters().collect();
        let (a, b) = (random_word(&mut rng, &letters, 3), random_word(&mut rng, &letters, 3));
        let (u, v) = (random_word(&mut rng, &letters, 2), random_word(&mut rng, &letters, 2));
        let ctx = |w: &[Letter]| Term::ring([u.as_slice(), w, &v].concat());
        Ok(p.order.compare(&ctx(&a), &ctx(&b)) == p.order.compare(&Term::ring(a.clone()), &Term::ring(b.clone())))
    })?;
    let canonical = count_failures(200, |k| {
        let (p, mut rng) = (pick(k), seeded(8_000 + k as u64));
        let (f, g) = (random_poly(&mut rng, p, 3, 4), random_poly(&mut rng, p, 3, 4));
        let (cf, cg) = (e(p.canonical_rep(&f))?, e(p.canonical_rep(&g))?);
        Ok(e(p.canonical_rep(&cf))? == cf
            && e(p.canonical_rep(&f.add(&p.order, &g)))? == cf.add(&p.order, &cg)
            && e(p.canonical_rep(&e(f.mul(&p.order, &g))?))? == e(p.canonical_rep(&e(cf.mul(&p.order, &cg))?))?)
    })?;
    let counts = [("star", star), ("diamond", diamond), ("tail", tails), ("order", order), ("canonical", canonical)];
    let bad: Vec<String> = counts.iter().filter(|(_, n)| *n > 0).map(|(s, n)| format!("{s}: {n}")).collect();
    check(bad.is_empty(), || format!("failures {}", bad.join(", ")))?;
    Ok("200 star, 200 diamond, 100 tail, 500 order, 200 canonical samples".into())
}

fn criterion_8(ledger: &Ledger) -> Outcome {
    let over: Vec<&(String, (usize, usize))> = ledger.stats.iter().filter(|(_, (n, g))| g > n).collect();
    check(over.is_empty(), || format!("gm > naive on {}: {:?}", over.len(), over[0]))?;
    let find = |name: &str| ledger.stats.iter().find(|(l, _)| l == name).map(|(_, s)| *s);
    let (s1, s2) = (find("criterion 1"), find("criterion 2"));
    check(s1 == Some(CRITERION_1_STATS), || format!("criterion 1 stats {s1:?}, golden {CRITERION_1_STATS:?}"))?;
    check(s2 == Some(CRITERION_2_STATS), || format!("criterion 2 stats {s2:?}, golden {CRITERION_2_STATS:?}"))?;
    Ok(format!("{} runs; goldens (naive, gm) {:?} and {:?}", ledger.stats.len(), CRITERION_1_STATS, CRITERION_2_STATS))
}

fn main() {
    let mut ledger = Ledger::default();
    let results = [
        (1, criterion_1(&mut ledger)),
        (2, criterion_2(&mut ledger)),
        (3, criterion_3(&mut ledger)),
        (4, criterion_4(&ledger)),
        (5, criterion_5(&ledger)),
        (6, criterion_6(&mut ledger)),
        (7, criterion_7()),
        (8, criterion_8(&ledger)),
    ];
    let mut failed = false;
    for (n, r) in &results {
        match r {
            Ok(detail) => println!("criterion {n}: PASS ({detail})"),
            Err(why) => {
                failed = true;
                println!("criterion {n}: FAIL ({why})");
            }
        }
    }
    if failed {
        std::process::exit(1);
    }
}
