//! `fewbraid`: monodromy computations, Euclid words and verification suites.
//!
//! Every subcommand except `diagram` prints a JSON report with a `schema`
//! field. Exit status: 0 success, 1 verification failure, 2 usage error,
//! 3 numerical failure, 4 I/O error.

mod diagram;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fewbraid::annular::{default_cut, wreath_image};
use fewbraid::error::{TrackError, TropicalError, WitnessError};
use fewbraid::loops::{CoefficientLoop, FewnomialSupport};
use fewbraid::monodromy::{braid_readout, is_nonsingular, surjectivity_witness, track, TrackParams};
use fewbraid::simple::{bullet_support, euclid_word, shift_word, simple_braid, Expr, ShiftMode, Support};
use fewbraid::tropical::{
    default_epsilon, ell_j_loop, gamma_loop, is_tropical_condition, monomial_loop, realize, tau_loop, CoefficientPair, RealizeSide, TrinomialSupport,
};
use fewbraid::{AnnularWord, ArtinWord, GarsideNormalForm};
use num_integer::Integer;
use serde_json::{json, Value};

use diagram::{Diagram, Style};

#[derive(Parser)]
#[command(name = "fewbraid", version, about = "Braid monodromy of univariate fewnomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Track the roots along a loop and read off the braid.
    Monodromy(MonodromyArgs),
    /// Word over b_{k,j}, b_{l,j} evaluating to b_{lcm(k,l),1}.
    Euclid(EuclidArgs),
    /// Check b_J . b_J' = b_{J . J'} for given or all sparse supports.
    VerifySwap(SwapArgs),
    /// Check that a support-shifting word evaluates to the target.
    VerifyShift(ShiftArgs),
    /// Loops realising b_1, ..., b_d and t for a support.
    Witness(WitnessArgs),
    /// Image of a pulled back braid in Z/b wr B_d.
    Wreath(WreathArgs),
    /// Garside normal form of a braid word.
    NormalForm(NormalFormArgs),
    /// SVG or ASCII diagram of a braid word.
    Diagram(DiagramArgs),
    /// Coefficient loop of a trinomial, optionally realised.
    TropLoop(TropLoopArgs),
}

#[derive(Args)]
struct Output {
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Tracking {
    /// Tolerance profile: default, fine or coarse.
    #[arg(long, env = "FEWBRAID_TOLERANCE", default_value = "default")]
    profile: String,
    /// Start of the argument window [a, a + 2 pi); defaults to -2 pi / d.
    #[arg(long, allow_hyphen_values = true)]
    cut: Option<f64>,
}

impl Tracking {
    fn params(&self) -> Result<TrackParams, Failure> {
        TrackParams::profile(&self.profile).ok_or_else(|| Failure::Usage(format!("unknown tolerance profile {:?}", self.profile)))
    }

    fn cut(&self, d: usize) -> f64 {
        self.cut.unwrap_or_else(|| default_cut(d))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LoopKind {
    Gamma,
    Ell,
    Tau,
    Monomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Side {
    First,
    Second,
}

impl From<Side> for RealizeSide {
    fn from(s: Side) -> Self {
        match s {
            Side::First => RealizeSide::First,
            Side::Second => RealizeSide::Second,
        }
    }
}

#[derive(Args)]
struct LoopArgs {
    #[arg(long = "loop", value_enum, default_value = "gamma")]
    kind: LoopKind,
    /// Index of the ell loop.
    #[arg(long, default_value_t = 1)]
    j: usize,
    /// Half-width of the loop around the discriminant; defaults to 0.1 / d.
    #[arg(long)]
    eps: Option<f64>,
    /// Rescaling parameter: a number > 1, or e, e^2, e3, ...
    #[arg(long, default_value = "e", value_parser = parse_t)]
    t: f64,
    #[arg(long, value_enum, default_value = "first")]
    side: Side,
}

#[derive(Args)]
struct MonodromyArgs {
    /// Exponents, e.g. 0,3,7.
    #[arg(long, value_delimiter = ',', required = true)]
    support: Vec<usize>,
    #[command(flatten)]
    lp: LoopArgs,
    #[command(flatten)]
    tracking: Tracking,
    /// Expected braid, e.g. "B1"; defaults to the one the loop is built for.
    #[arg(long)]
    expect: Option<String>,
    /// Dump the root trajectories as JSON.
    #[arg(long)]
    trajectories: Option<PathBuf>,
    /// Write a diagram of the braid.
    #[arg(long)]
    diagram: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "svg")]
    format: Style,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct EuclidArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
    #[arg(long)]
    d: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SwapArgs {
    #[arg(long)]
    d: Option<usize>,
    /// First support, e.g. 1,5.
    #[arg(long, value_delimiter = ',')]
    j: Vec<usize>,
    /// Second support.
    #[arg(long, value_delimiter = ',')]
    jp: Vec<usize>,
    /// Check every pair of sparse supports for 3 <= d <= max-d.
    #[arg(long, conflicts_with_all = ["d", "j", "jp"])]
    max_d: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ShiftArgs {
    #[arg(long)]
    d: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    from: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    to: Vec<usize>,
    #[arg(long, value_parser = parse_mode, default_value = "adjacent")]
    mode: ShiftMode,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    support: Vec<usize>,
    #[command(flatten)]
    tracking: Tracking,
    /// Dump the loops as JSON.
    #[arg(long)]
    loops: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct WreathArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    b: usize,
    /// Annular word on d strands, e.g. "r1 b2 t".
    #[arg(long, allow_hyphen_values = true)]
    word: String,
    /// Second word; checks the multiplication law on the pair.
    #[arg(long)]
    with: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct NormalFormArgs {
    /// Strands of an Artin word.
    #[arg(long, conflicts_with = "annular")]
    n: Option<usize>,
    /// Read the word as an annular word on this many strands and embed it.
    #[arg(long)]
    annular: Option<usize>,
    /// Artin letters such as 1,2,-1, or annular letters such as "b1 t".
    #[arg(long, allow_hyphen_values = true)]
    word: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct DiagramArgs {
    #[arg(long, conflicts_with = "d")]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    word: String,
    #[arg(long, value_enum, default_value = "svg")]
    format: Style,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct TropLoopArgs {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    d: usize,
    #[command(flatten)]
    lp: LoopArgs,
    /// Keep the loop as constructed instead of realising it.
    #[arg(long)]
    raw: bool,
    #[arg(long, default_value_t = 16)]
    samples: usize,
    #[command(flatten)]
    output: Output,
}

enum Failure {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Numerical(_) => 3,
            Failure::Io(_) => 4,
        }
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

impl From<TrackError> for Failure {
    fn from(e: TrackError) -> Self {
        match e {
            TrackError::InvalidLoop(_) | TrackError::Annular(_) => usage(e),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

impl From<TropicalError> for Failure {
    fn from(e: TropicalError) -> Self {
        match e {
            TropicalError::OnDiscriminant { .. } => Failure::Numerical(e.to_string()),
            _ => usage(e),
        }
    }
}

impl From<WitnessError> for Failure {
    fn from(e: WitnessError) -> Self {
        match e {
            WitnessError::Track(t) => t.into(),
            _ => usage(e),
        }
    }
}

fn parse_t(s: &str) -> Result<f64, String> {
    let e = std::f64::consts::E;
    let power = match s.strip_prefix('e') {
        Some("") => Some(1.0),
        Some(rest) => Some(rest.trim_start_matches('^').parse::<f64>().map_err(|_| format!("cannot read {s:?}"))?),
        None => None,
    };
    let t = match power {
        Some(k) => e.powf(k),
        None => s.parse::<f64>().map_err(|_| format!("cannot read {s:?}"))?,
    };
    if t > 1.0 {
        Ok(t)
    } else {
        Err(format!("t = {t} must exceed 1"))
    }
}

fn parse_mode(s: &str) -> Result<ShiftMode, String> {
    s.parse::<ShiftMode>().map_err(|e| e.to_string())
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn write(path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(output: &Output, report: &Value) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialise");
    text.push('\n');
    write(&output.out, &text)
}

/// The loop on the trinomial `{0, p, d}` and the braid it is built for.
fn trinomial_loop(sup: &TrinomialSupport, args: &LoopArgs, realised: bool) -> Result<(CoefficientLoop, AnnularWord), Failure> {
    let d = sup.d();
    let eps = args.eps.unwrap_or_else(|| default_epsilon(d));
    let (lp, expected) = match args.kind {
        LoopKind::Gamma => (gamma_loop(sup, eps)?, AnnularWord::gen_b(1, d).map_err(usage)?.invert()),
        LoopKind::Ell => (ell_j_loop(sup, eps, args.j)?, AnnularWord::gen_b(args.j, d).map_err(usage)?),
        LoopKind::Tau => (tau_loop(sup, eps)?, AnnularWord::gen_tau(d).map_err(usage)?),
        LoopKind::Monomial => return Err(usage("the monomial loop is not a trinomial loop")),
    };
    let lp = if realised { realize(&lp, sup, args.t, args.side.into())? } else { lp };
    Ok((lp, expected))
}

fn loop_report(args: &LoopArgs, d: usize) -> Value {
    json!({
        "kind": args.kind.to_possible_value().map(|v| v.get_name().to_string()),
        "j": (args.kind == LoopKind::Ell).then_some(args.j),
        "eps": args.eps.unwrap_or_else(|| default_epsilon(d)),
        "t": args.t,
        "side": args.side.to_possible_value().map(|v| v.get_name().to_string()),
    })
}

fn monodromy_cmd(args: &MonodromyArgs) -> Result<bool, Failure> {
    let sup = FewnomialSupport::new(args.support.clone()).map_err(usage)?;
    let d = sup.d();
    let (lp, expected) = if args.lp.kind == LoopKind::Monomial {
        (monomial_loop(d)?.embed(&sup)?, AnnularWord::gen_tau(d).map_err(usage)?)
    } else {
        // non-reduced trinomials: the loop of the reduced support, pulled back
        let (red, g) = sup.reduce();
        let &[0, p, dr] = red.exponents() else {
            return Err(usage(format!("loop {:?} needs a trinomial support, got {sup}", args.lp.kind)));
        };
        let tri = TrinomialSupport::new(p, dr)?;
        let (lp, expected) = trinomial_loop(&tri, &args.lp, true)?;
        (lp.pullback(g), expected.pullback(g).map_err(usage)?)
    };
    let expected = match &args.expect {
        Some(w) => AnnularWord::parse(d, w).map_err(usage)?,
        None => expected,
    };
    let params = args.tracking.params()?;
    let a = args.tracking.cut(d);
    let traj = track(&lp, &params)?;
    let word = braid_readout(&traj, a)?;
    let ok = word.equal_annular(&expected).map_err(usage)?;
    if let Some(path) = &args.trajectories {
        let text = serde_json::to_string(&traj.to_json()).expect("trajectories serialise");
        write(&Some(path.clone()), &text)?;
    }
    if let Some(path) = &args.diagram {
        write(&Some(path.clone()), &Diagram::annular(&word).render(args.format))?;
    }
    emit(
        &args.output,
        &json!({
            "schema": "fewbraid.monodromy/1",
            "support": sup.exponents(),
            "loop": loop_report(&args.lp, d),
            "profile": args.tracking.profile,
            "cut": a,
            "segments": lp.segments.len(),
            "samples": traj.samples(),
            "braid": word,
            "text": word.to_string(),
            "expected": expected.to_string(),
            "normal_form": GarsideNormalForm::of_word(&word.embed()),
            "verdict": verdict(ok),
        }),
    )?;
    Ok(ok)
}

fn euclid_cmd(args: &EuclidArgs) -> Result<bool, Failure> {
    let (k, l, d) = (args.k, args.l, args.d);
    let gw = euclid_word(k, l, d).map_err(usage)?;
    let checks = gw.verify().map_err(usage)?;
    let value = gw.evaluate().map_err(usage)?;
    let q = k.lcm(&l);
    let want = Expr::atom(q, 1).eval(d, &mut |_| unreachable!("no steps")).map_err(usage)?;
    let ok = checks.ok && value.equal_annular(&want).map_err(usage)?;
    emit(
        &args.output,
        &json!({
            "schema": "fewbraid.euclid/1",
            "k": k,
            "l": l,
            "d": d,
            "q": q,
            "branch": gw.branch,
            "word": gw.to_json().map_err(usage)?,
            "text": gw.to_string(),
            "checks": checks,
            "evaluation_letters": value.len(),
            "normal_form": GarsideNormalForm::of_word(&value.embed()),
            "target": want.to_string(),
            "verdict": verdict(ok),
        }),
    )?;
    Ok(ok)
}

fn sparse_supports(d: usize) -> Vec<Support> {
    (1u64..1 << d).filter_map(|mask| Support::new(d, (1..=d).filter(|j| mask >> (j - 1) & 1 == 1).collect()).ok()).filter(Support::is_sparse).collect()
}

fn swap_holds(j: &Support, jp: &Support) -> Result<(Support, bool), Failure> {
    let out = bullet_support(j, jp).map_err(usage)?;
    let lhs = AnnularWord::bullet(&simple_braid(j).map_err(usage)?, &simple_braid(jp).map_err(usage)?).map_err(usage)?;
    Ok((out.clone(), lhs.equal_annular(&simple_braid(&out).map_err(usage)?).map_err(usage)?))
}

fn swap_cmd(args: &SwapArgs) -> Result<bool, Failure> {
    let report = if let Some(max_d) = args.max_d {
        if !(3..=16).contains(&max_d) {
            return Err(usage("--max-d must lie in 3..=16"));
        }
        let mut pairs = 0usize;
        let mut failures = Vec::new();
        for d in 3..=max_d {
            let all = sparse_supports(d);
            for j in &all {
                for jp in &all {
                    pairs += 1;
                    if !swap_holds(j, jp)?.1 {
                        failures.push(json!({ "d": d, "j": j.indices(), "jp": jp.indices() }));
                    }
                }
            }
        }
        json!({ "schema": "fewbraid.verify_swap/1", "max_d": max_d, "pairs": pairs, "failures": failures, "verdict": verdict(failures.is_empty()) })
    } else {
        let d = args.d.ok_or_else(|| usage("give --d with --j and --jp, or --max-d"))?;
        let j = Support::new(d, args.j.clone()).map_err(usage)?;
        let jp = Support::new(d, args.jp.clone()).map_err(usage)?;
        let (out, ok) = swap_holds(&j, &jp)?;
        json!({ "schema": "fewbraid.verify_swap/1", "d": d, "j": j.indices(), "jp": jp.indices(), "result": out.indices(), "pairs": 1, "verdict": verdict(ok) })
    };
    let ok = report["verdict"] == "PASS";
    emit(&args.output, &report)?;
    Ok(ok)
}

fn shift_cmd(args: &ShiftArgs) -> Result<bool, Failure> {
    let from = Support::new(args.d, args.from.clone()).map_err(usage)?;
    let to = Support::new(args.d, args.to.clone()).map_err(usage)?;
    let gw = shift_word(&from, args.mode, &to).map_err(usage)?;
    let checks = gw.verify().map_err(usage)?;
    let value = gw.evaluate().map_err(usage)?;
    let ok = checks.ok && value.equal_annular(&simple_braid(&to).map_err(usage)?).map_err(usage)?;
    emit(
        &args.output,
        &json!({
            "schema": "fewbraid.verify_shift/1",
            "d": args.d,
            "from": from.indices(),
            "to": to.indices(),
            "mode": args.mode,
            "word": gw.to_json().map_err(usage)?,
            "checks": checks,
            "verdict": verdict(ok),
        }),
    )?;
    Ok(ok)
}

fn witness_cmd(args: &WitnessArgs) -> Result<bool, Failure> {
    let sup = FewnomialSupport::new(args.support.clone()).map_err(usage)?;
    let d = sup.d();
    let params = args.tracking.params()?;
    let loops = surjectivity_witness(&sup, args.tracking.cut(d), &params)?;
    let ok = loops.iter().all(|w| w.verified);
    if let Some(path) = &args.loops {
        let all: Vec<Value> = loops.iter().map(|w| json!({ "target": w.target, "loop": w.lp.to_json(1) })).collect();
        write(&Some(path.clone()), &serde_json::to_string(&all).expect("loops serialise"))?;
    }
    emit(
        &args.output,
        &json!({
            "schema": "fewbraid.witness/1",
            "support": sup.exponents(),
            "profile": args.tracking.profile,
            "loops": loops,
            "verdict": verdict(ok),
        }),
    )?;
    Ok(ok)
}

fn wreath_cmd(args: &WreathArgs) -> Result<bool, Failure> {
    let image = |text: &str| -> Result<_, Failure> {
        let w = AnnularWord::parse(args.d, text).map_err(usage)?;
        let up = w.pullback(args.b).map_err(usage)?;
        wreath_image(&up, &w, args.b).map_err(usage)
    };
    let x = image(&args.word)?;
    let mut report = json!({ "schema": "fewbraid.wreath/1", "d": args.d, "b": args.b, "word": args.word, "image": x });
    let mut ok = true;
    if let Some(other) = &args.with {
        let y = image(other)?;
        let xy = image(&format!("{} {}", args.word, other))?;
        ok = xy.equal(&x.mul(&y).map_err(usage)?).map_err(usage)?;
        report["with"] = json!(other);
        report["product"] = json!(xy);
    }
    report["verdict"] = json!(verdict(ok));
    emit(&args.output, &report)?;
    Ok(ok)
}

fn artin_letters(text: &str) -> Result<Vec<i32>, Failure> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i32>().map_err(|_| usage(format!("cannot read letter {s:?}"))))
        .collect()
}

fn read_word(n: Option<usize>, annular: Option<usize>, text: &str) -> Result<Result<ArtinWord, AnnularWord>, Failure> {
    match (n, annular) {
        (Some(n), None) => Ok(Ok(ArtinWord::new(n, artin_letters(text)?).map_err(usage)?)),
        (None, Some(d)) => Ok(Err(AnnularWord::parse(d, text).map_err(usage)?)),
        _ => Err(usage("give exactly one of the strand counts")),
    }
}

fn normal_form_cmd(args: &NormalFormArgs) -> Result<bool, Failure> {
    let w = match read_word(args.n, args.annular, &args.word)? {
        Ok(w) => w,
        Err(a) => a.embed(),
    };
    let nf = GarsideNormalForm::of_word(&w);
    emit(
        &args.output,
        &json!({
            "schema": "fewbraid.normal_form/1",
            "strands": w.strands(),
            "word": w.letters(),
            "delta_power": nf.inf,
            "factors": nf.factors,
            "text": nf.to_string(),
        }),
    )?;
    Ok(true)
}

fn diagram_cmd(args: &DiagramArgs) -> Result<bool, Failure> {
    let diagram = match read_word(args.n, args.d, &args.word)? {
        Ok(w) => Diagram::artin(&w),
        Err(a) => Diagram::annular(&a),
    };
    write(&args.output.out, &diagram.render(args.format))?;
    Ok(true)
}

fn trop_loop_cmd(args: &TropLoopArgs) -> Result<bool, Failure> {
    let tri = TrinomialSupport::new(args.p, args.d)?;
    let (lp, expected) = trinomial_loop(&tri, &args.lp, !args.raw)?;
    let samples = lp.samples(args.samples.max(1));
    let singular = samples.iter().filter(|c| !is_nonsingular(c, &lp.support)).count();
    let base = lp.base_point();
    let pair = CoefficientPair::new(base[1] / base[0], base[2] / base[0])?;
    let ok = singular == 0;
    emit(
        &args.output,
        &json!({
            "schema": "fewbraid.trop_loop/1",
            "p": args.p,
            "d": args.d,
            "loop": loop_report(&args.lp, args.d),
            "realised": !args.raw,
            "expected": expected.to_string(),
            "base_is_tropical_condition": is_tropical_condition(&pair, &tri),
            "singular_samples": singular,
            "coefficients": lp.to_json(args.samples.max(1)),
            "verdict": verdict(ok),
        }),
    )?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Monodromy(a) => monodromy_cmd(a),
        Command::Euclid(a) => euclid_cmd(a),
        Command::VerifySwap(a) => swap_cmd(a),
        Command::VerifyShift(a) => shift_cmd(a),
        Command::Witness(a) => witness_cmd(a),
        Command::Wreath(a) => wreath_cmd(a),
        Command::NormalForm(a) => normal_form_cmd(a),
        Command::Diagram(a) => diagram_cmd(a),
        Command::TropLoop(a) => trop_loop_cmd(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            let (Failure::Usage(m) | Failure::Numerical(m) | Failure::Io(m)) = &f;
            eprintln!("fewbraid: {m}");
            ExitCode::from(f.code())
        }
    }
}
