//! `wgb`: restricted and bilateral Gröbner bases for modules over quotients of
//! free monoid rings.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wgb_core::coeff::Scalar;
use wgb_core::engine::{Completion, GBResult, GammaChoice, LiftRecord, Membership, Mode, Quotient, Side, Status};
use wgb_core::freering::{Letter, NcPoly};
use wgb_core::oracle::{oracle_member, OracleAnswer};
use wgb_core::presentation::{parse_file, Presentation, PresentationFile};
use wgb_core::strongbasis::strong_restricted_basis;
use wgb_core::Error;

const EXIT_BOUND: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "wgb", version, about = "Restricted and bilateral Gröbner bases over free monoid ring quotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the presentation and its term order.
    Validate(FileArg),
    /// Saturate the relations up to a degree bound and print the relation basis.
    Saturate(BoundArgs),
    /// Normal form of a polynomial modulo the completed ideal.
    Nf(NfArgs),
    /// Complete the ideal generators up to a degree bound.
    Gb(GbArgs),
    /// Decide membership of a polynomial by completion.
    Member(MemberArgs),
    /// Decide membership by brute-force elimination over the bounded span.
    OracleMember(MemberArgs),
    /// Print the syzygy liftings of a complete basis.
    Syz(RunArgs),
    /// Print pair statistics of the completed basis.
    Stats(RunArgs),
}

#[derive(Args, Debug)]
struct FileArg {
    /// Presentation file.
    file: PathBuf,
}

#[derive(Args, Debug)]
struct BoundArgs {
    /// Presentation file.
    file: PathBuf,
    /// Degree bound: every term of total degree at most this value.
    #[arg(long)]
    bound: u32,
    /// Emit JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug, Clone)]
struct EngineArgs {
    /// Restricted, left or bilateral multiples.
    #[arg(long, value_enum, default_value_t = SideArg::Restricted)]
    side: SideArg,
    /// How graded words divide each other.
    #[arg(long, value_enum, default_value_t = GammaArg::Auto)]
    gamma: GammaArg,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Presentation file.
    file: PathBuf,
    /// Degree bound: every term of total degree at most this value.
    #[arg(long)]
    bound: u32,
    #[command(flatten)]
    engine: EngineArgs,
    /// Emit JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct GbArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Also extract a strong restricted basis.
    #[arg(long)]
    strong: bool,
    /// Include syzygy liftings (requires a complete result).
    #[arg(long)]
    lifts: bool,
}

#[derive(Args, Debug)]
struct MemberArgs {
    /// Presentation file.
    file: PathBuf,
    /// Query polynomial.
    #[arg(long)]
    poly: String,
    /// Degree bound: every term of total degree at most this value.
    #[arg(long, default_value_t = 6)]
    bound: u32,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Args, Debug)]
struct NfArgs {
    #[command(flatten)]
    query: MemberArgs,
    /// Coefficient handling in the final reduction.
    #[arg(long, value_enum, default_value_t = ModeArg::Strong)]
    mode: ModeArg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SideArg {
    Restricted,
    Left,
    Bilateral,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GammaArg {
    Auto,
    Free,
    Commutative,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Weak,
    Strong,
}

impl EngineArgs {
    fn side(&self) -> Side {
        match self.side {
            SideArg::Restricted => Side::Restricted,
            SideArg::Left => Side::Left,
            SideArg::Bilateral => Side::Bilateral,
        }
    }

    fn gamma(&self) -> GammaChoice {
        match self.gamma {
            GammaArg::Auto => GammaChoice::Auto,
            GammaArg::Free => GammaChoice::Free,
            GammaArg::Commutative => GammaChoice::Commutative,
        }
    }
}

fn load(path: &PathBuf) -> Result<PresentationFile, String> {
    let src = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_file(&src).map_err(|e| format!("{}:{e}", path.display()))
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::Complete => 0,
        Status::BoundExhausted => EXIT_BOUND,
    }
}

fn fmt_product(p: &Presentation, coeff: &Scalar, lam: &[Letter], body: &str, rho: &[Letter]) -> String {
    let mut s = format!("{coeff}");
    if !lam.is_empty() {
        write!(s, "*{}", p.alphabet.fmt_word(lam)).unwrap();
    }
    write!(s, "*({body})").unwrap();
    if !rho.is_empty() {
        write!(s, "*{}", p.alphabet.fmt_word(rho)).unwrap();
    }
    s
}

fn fmt_quotients(p: &Presentation, basis: &[NcPoly], qs: &[Quotient]) -> Vec<String> {
    qs.iter().map(|q| fmt_product(p, &q.coeff, &q.lam, &p.fmt(&basis[q.gen]), &q.rho)).collect()
}

fn print_lifts(p: &Presentation, basis: &[NcPoly], lifts: &[LiftRecord]) {
    for l in lifts {
        println!("{} at {}", l.syz.case.tag(), p.alphabet.fmt_term(&l.syz.w));
        if l.quotients.is_empty() {
            println!("  0");
        }
        for q in fmt_quotients(p, basis, &l.quotients) {
            println!("  {q}");
        }
    }
}

fn print_result(p: &Presentation, r: &GBResult) {
    println!("status: {}", if r.status == Status::Complete { "complete" } else { "bound_exhausted" });
    println!("basis:");
    for f in &r.basis {
        println!("  {}", p.fmt(f));
    }
    if let Some(s) = &r.strong {
        println!("strong basis:");
        for f in s {
            println!("  {}", p.fmt(f));
        }
    }
    if let Some(l) = &r.lifts {
        println!("lifts:");
        print_lifts(p, &r.working, l);
    }
}

struct Run {
    file: PresentationFile,
    presentation: Presentation,
}

impl Run {
    fn new(path: &PathBuf, bound: u32) -> Result<Run, String> {
        let file = load(path)?;
        let presentation = file.presentation.ensure_saturated(bound).map_err(|e| e.to_string())?;
        Ok(Run { file, presentation })
    }

    fn complete(&self, e: &EngineArgs, bound: u32) -> Result<Completion<'_>, Error> {
        let mut c = Completion::new(&self.presentation, &self.file.ideal, e.side(), e.gamma(), bound)?;
        c.run()?;
        Ok(c)
    }
}

fn cmd_validate(a: &FileArg) -> Result<u8, String> {
    let f = load(&a.file)?;
    let p = &f.presentation;
    let v = p.validate();
    if v.is_empty() {
        println!("ok");
        return Ok(0);
    }
    for x in &v {
        println!("{}", x.describe(&p.alphabet));
    }
    Ok(1)
}

fn cmd_saturate(a: &BoundArgs) -> Result<u8, String> {
    let f = load(&a.file)?;
    let p = f.presentation.saturate(a.bound).map_err(|e| e.to_string())?;
    let complete = p.saturated_bound() == Some(u32::MAX);
    let basis: Vec<String> = p.basis().iter().map(|f| p.fmt(f)).collect();
    if a.json {
        let status = if complete { "complete" } else { "bound_exhausted" };
        let doc = serde_json::json!({ "status": status, "bound": a.bound, "basis": basis });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        println!("status: {}", if complete { "complete" } else { "bound_exhausted" });
        println!("basis:");
        for b in &basis {
            println!("  {b}");
        }
    }
    Ok(if complete { 0 } else { EXIT_BOUND })
}

fn cmd_gb(g: &GbArgs) -> Result<u8, String> {
    let a = &g.run;
    let run = Run::new(&a.file, a.bound)?;
    let p = &run.presentation;
    let c = run.complete(&a.engine, a.bound).map_err(|e| e.to_string())?;
    let mut r = c.result().map_err(|e| e.to_string())?;
    if g.strong {
        r.strong = Some(strong_restricted_basis(&c.set).map_err(|e| e.to_string())?);
    }
    if g.lifts && r.status != Status::Complete {
        eprintln!("error: {}", Error::IncompleteResult);
        return Ok(EXIT_BOUND);
    }
    if g.lifts {
        r.lifts = Some(c.liftings().map_err(|e| e.to_string())?);
    }
    if a.json {
        println!("{}", r.to_json(p));
    } else {
        print_result(p, &r);
    }
    Ok(status_code(r.status))
}

fn cmd_syz(a: &RunArgs) -> Result<u8, String> {
    let run = Run::new(&a.file, a.bound)?;
    let p = &run.presentation;
    let c = run.complete(&a.engine, a.bound).map_err(|e| e.to_string())?;
    if c.status() != Some(Status::Complete) {
        eprintln!("error: {}", Error::IncompleteResult);
        return Ok(EXIT_BOUND);
    }
    let lifts = c.liftings().map_err(|e| e.to_string())?;
    if a.json {
        let mut r = c.result().map_err(|e| e.to_string())?;
        r.lifts = Some(lifts);
        println!("{}", r.to_json(p));
    } else {
        print_lifts(p, &c.set.polys(), &lifts);
    }
    Ok(0)
}

fn cmd_stats(a: &RunArgs) -> Result<u8, String> {
    let run = Run::new(&a.file, a.bound)?;
    let c = run.complete(&a.engine, a.bound).map_err(|e| e.to_string())?;
    let s = c.stats().map_err(|e| e.to_string())?;
    if a.json {
        let r = c.result().map_err(|e| e.to_string())?;
        println!("{}", r.to_json(&run.presentation));
    } else {
        println!("naive_pairs: {}", s.naive_pairs);
        println!("gm_size: {}", s.gm_size);
        println!("pairs_processed: {}", s.pairs_processed);
        println!("gcd_pairs: {}", s.gcd_pairs);
    }
    Ok(status_code(c.status().unwrap_or(Status::BoundExhausted)))
}

fn cmd_member(a: &MemberArgs) -> Result<u8, String> {
    let run = Run::new(&a.file, a.bound)?;
    let p = &run.presentation;
    let g = p.parse(&a.poly).map_err(|e| e.to_string())?;
    let c = run.complete(&a.engine, a.bound).map_err(|e| e.to_string())?;
    match c.member(&g).map_err(|e| e.to_string())? {
        Membership::Yes(r) => {
            println!("Yes");
            let terms = fmt_quotients(p, &c.set.polys(), &r.quotients);
            let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            println!("{} = {rhs}", p.fmt(&p.canonical_rep(&g).map_err(|e| e.to_string())?));
            Ok(0)
        }
        Membership::No(nf) => {
            println!("No");
            println!("normal form: {}", p.fmt(&nf));
            Ok(0)
        }
        Membership::Unknown(nf) => {
            println!("Unknown");
            println!("normal form: {}", p.fmt(&nf));
            Ok(EXIT_BOUND)
        }
    }
}

fn cmd_oracle(a: &MemberArgs) -> Result<u8, String> {
    let run = Run::new(&a.file, a.bound)?;
    let p = &run.presentation;
    let g = p.parse(&a.poly).map_err(|e| e.to_string())?;
    let ans = oracle_member(p, &g, &run.file.ideal, a.engine.side(), a.bound).map_err(|e| e.to_string())?;
    println!("{}", if ans == OracleAnswer::Yes { "Yes" } else { "NoWithinBound" });
    Ok(0)
}

fn cmd_nf(a: &NfArgs) -> Result<u8, String> {
    let q = &a.query;
    let run = Run::new(&q.file, q.bound)?;
    let p = &run.presentation;
    let g = p.parse(&q.poly).map_err(|e| e.to_string())?;
    let c = run.complete(&q.engine, q.bound).map_err(|e| e.to_string())?;
    let mode = match a.mode {
        ModeArg::Weak => Mode::Weak,
        ModeArg::Strong => Mode::Strong,
    };
    let r = c.set.normal_form(&g, mode, Side::Restricted).map_err(|e| e.to_string())?;
    println!("{}", p.fmt(&r.nf));
    Ok(status_code(c.status().unwrap_or(Status::BoundExhausted)))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = match &cli.command {
        Command::Validate(a) => cmd_validate(a),
        Command::Saturate(a) => cmd_saturate(a),
        Command::Nf(a) => cmd_nf(a),
        Command::Gb(a) => cmd_gb(a),
        Command::Member(a) => cmd_member(a),
        Command::OracleMember(a) => cmd_oracle(a),
        Command::Syz(a) => cmd_syz(a),
        Command::Stats(a) => cmd_stats(a),
    };
    match out {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
