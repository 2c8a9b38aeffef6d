use std::sync::Arc;

use btrack_core::calculus::{
    self, binomial_report, ContinuityVerdict, HyperOffset, NumberFormat, ProbeField, Report, SumTheoremVerdict,
    TransferVerdict,
};
use btrack_core::expr::{eval, Binding, Var};
use btrack_core::omega::{hs_compare, hs_null_quotient_demo, AgreementPolicy, Verdict};
use btrack_core::{
    parse, Backend, Error, ExactRational, Expr, FieldConfig, HyperNat, HyperSeq, LcNumber, RatFunc, Result, Tag,
};

use crate::args::{BackendKind, Command, Options};
use crate::render;

type Q = ExactRational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

/// What a command produced: human text, the JSON report, and the exit code.
pub struct Outcome {
    pub human: String,
    pub report: Report,
    pub exit: i32,
}

impl Outcome {
    fn new(report: Report, exit: i32) -> Outcome {
        Outcome { human: render::report(&report), report, exit }
    }

    fn line(human: impl Into<String>, report: Report, exit: i32) -> Outcome {
        Outcome { human: format!("{}\n", human.into()), report, exit }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Undecided(_) => EXIT_UNDECIDED,
        Error::NoTransfer(_) | Error::Unsupported(_) => EXIT_UNSUPPORTED,
        _ => EXIT_INPUT,
    }
}

pub fn remedy(e: &Error) -> &'static str {
    match e {
        Error::Undecided(_) => {
            "raise --cutoff or --truncation, or give a closed form; questions that hinge on a free ultrafilter stay undecided"
        }
        Error::NoTransfer(_) => "transcendental functions need --backend lc or --backend omega",
        Error::Unsupported(_) => "choose a backend that supports this command (see --help)",
        Error::Parse(_) => "expressions use + - * / ^, sin cos exp log sqrt abs, and the variables x, n, k",
        Error::Domain(_) | Error::DivisionByZero | Error::NegativeLeading(_) => {
            "choose a point or interval inside the function's domain"
        }
        Error::NotDifferentiable(_) => "difference quotients disagree; the function has no derivative at this point",
        Error::NoSignChange(..) => "choose an interval whose endpoint values have opposite signs",
        Error::NonNumericValue(_) => "the function is undefined at a subdivision point; narrow the interval",
        Error::InvalidConfig(_) => "check the flags and the BTRACK_CONFIG file",
        Error::NotCauchy(_) => "only convergent sequences name a real",
        Error::NotFinite(_) => "standard parts exist only for finite elements",
        _ => "see btrack --help",
    }
}

/// Backends the command line can name elements of.
trait Field: ProbeField {
    /// Element denoted by an expression: `x` is `eps` (lc), the index
    /// sequence (omega) or the indeterminate (ratfunc).
    fn element(cfg: &Arc<FieldConfig>, text: &str) -> Result<Self>;

    /// Standard part, whether it is exact, and its error bound.
    fn standard(&self) -> Result<(Q, bool, Q)> {
        Ok((self.st()?, true, Q::zero()))
    }
}

impl Field for LcNumber {
    fn element(cfg: &Arc<FieldConfig>, text: &str) -> Result<Self> {
        eval(&parse(&text.replace("eps", "x"))?, cfg, &Binding::x(LcNumber::eps(cfg)))
    }
}

impl Field for RatFunc {
    fn element(cfg: &Arc<FieldConfig>, text: &str) -> Result<Self> {
        eval(&parse(text)?, cfg, &Binding::x(RatFunc::x(cfg)))
    }
}

impl Field for HyperSeq {
    fn element(cfg: &Arc<FieldConfig>, text: &str) -> Result<Self> {
        HyperSeq::from_expr(cfg, &parse(text)?.substitute(Var::X, &Expr::var(Var::N)))
    }

    fn standard(&self) -> Result<(Q, bool, Q)> {
        let est = self.st_estimate()?;
        Ok((est.value, est.exact, est.error))
    }
}

fn expr(text: &str) -> Result<Expr> {
    Ok(parse(text)?)
}

/// A standard rational written as a constant expression (`3`, `-1/3`, `0.25`).
fn rational(text: &str) -> Result<Q> {
    match parse(text)?.fold() {
        Expr::Num(q) => Ok(q),
        e => Err(Error::Domain(format!("`{e}` is not a standard rational"))),
    }
}

fn only(kind: BackendKind, wanted: BackendKind, verb: &str) -> Result<()> {
    if kind != wanted {
        return Err(Error::Unsupported(format!("{verb} runs only on the {wanted:?} backend").to_lowercase()));
    }
    Ok(())
}

pub fn run(command: &Command, opts: &Options, cfg: FieldConfig) -> Result<Outcome> {
    let cfg = Arc::new(cfg);
    let fmt = opts.decimal.map_or(NumberFormat::Exact, NumberFormat::Decimal);
    let omega_default = matches!(
        command,
        Command::EulerExp { .. }
            | Command::Binom { .. }
            | Command::Hsum { .. }
            | Command::Hprod { .. }
            | Command::Sumthm { .. }
            | Command::Ultrademo { .. }
    );
    let kind = opts.backend.unwrap_or(if omega_default { BackendKind::Omega } else { BackendKind::Lc });
    macro_rules! dispatch {
        ($f:ident($($arg:expr),*)) => {
            match kind {
                BackendKind::Lc => $f::<LcNumber>($($arg),*),
                BackendKind::Omega => $f::<HyperSeq>($($arg),*),
                BackendKind::Ratfunc => $f::<RatFunc>($($arg),*),
            }
        };
    }
    match command {
        Command::Derive { f, at } => dispatch!(derive(&cfg, fmt, f, at)),
        Command::Cont { f, at, value } => dispatch!(cont(&cfg, fmt, f, at, value.as_deref())),
        Command::Ucont { f, interval } => {
            only(kind, BackendKind::Lc, "ucont")?;
            let r = calculus::uniform_continuity_probe(
                &expr(f)?,
                &rational(&interval[0])?,
                &rational(&interval[1])?,
                &cfg,
            )?;
            Ok(Outcome::new(r.report(fmt), continuity_exit(r.verdict)))
        }
        Command::Classify { expr } => dispatch!(classify(&cfg, expr)),
        Command::Compare { a, b } => match kind {
            BackendKind::Omega => compare_sequences(&cfg, a, b),
            BackendKind::Lc => compare::<LcNumber>(&cfg, a, b),
            BackendKind::Ratfunc => compare::<RatFunc>(&cfg, a, b),
        },
        Command::St { expr } => dispatch!(standard_part(&cfg, fmt, expr)),
        Command::EulerExp { k, z, count } => {
            only(kind, BackendKind::Omega, "euler-exp")?;
            let e = calculus::euler_exp(&rational(k)?, &rational(z)?, &HyperNat::parse(&cfg, count)?)?;
            Ok(Outcome::new(e.report(fmt), EXIT_OK))
        }
        Command::Binom { k, z, terms, count } => {
            only(kind, BackendKind::Omega, "binom")?;
            let (k, z, count) = (rational(k)?, rational(z)?, HyperNat::parse(&cfg, count)?);
            let t = calculus::euler_binomial_expand(&k, &z, &count, *terms)?;
            Ok(Outcome::new(binomial_report(&k, &z, &count, &t, fmt), EXIT_OK))
        }
        Command::Hsum { term, count } | Command::Hprod { term, count } => {
            only(kind, BackendKind::Omega, "hsum/hprod")?;
            let count = HyperNat::parse(&cfg, count)?;
            let h = if matches!(command, Command::Hsum { .. }) {
                calculus::hyperfinite_sum(&expr(term)?, &count)?
            } else {
                calculus::hyperfinite_product(&expr(term)?, &count)?
            };
            let exit = match &h.analysis.classification {
                Ok(_) => EXIT_OK,
                Err(e) => exit_code(e),
            };
            Ok(Outcome::new(h.report(fmt), exit))
        }
        Command::Ivt { f, interval, digits } => {
            let r = calculus::ivt_root(&expr(f)?, &rational(&interval[0])?, &rational(&interval[1])?, *digits, &cfg)?;
            let human = if r.exact_hit { format!("{} (exact hit)", r.decimal) } else { r.decimal.clone() };
            Ok(Outcome::line(human, r.report(), EXIT_OK))
        }
        Command::Sumthm { term, at, offset, count } => {
            only(kind, BackendKind::Omega, "sumthm")?;
            let r = calculus::sum_theorem_probe(
                &expr(term)?,
                &rational(at)?,
                &HyperOffset::parse(offset)?,
                &HyperNat::parse(&cfg, count)?,
            )?;
            let exit = if r.verdict == SumTheoremVerdict::Undecided { EXIT_UNDECIDED } else { EXIT_OK };
            Ok(Outcome::new(r.report(fmt), exit))
        }
        Command::Transfer { lhs, rhs, at } => dispatch!(transfer(&cfg, fmt, lhs, rhs, at)),
        Command::Ultrademo { seq } => {
            only(kind, BackendKind::Omega, "ultrademo")?;
            ultrademo(&cfg, seq)
        }
    }
}

fn continuity_exit(v: ContinuityVerdict) -> i32 {
    if v == ContinuityVerdict::Undecided {
        EXIT_UNDECIDED
    } else {
        EXIT_OK
    }
}

fn derive<B: Field>(cfg: &Arc<FieldConfig>, fmt: NumberFormat, f: &str, at: &str) -> Result<Outcome> {
    let d = calculus::derivative::<B>(&expr(f)?, &rational(at)?, cfg)?;
    Ok(Outcome::line(fmt.show(&d.value), d.report(fmt), EXIT_OK))
}

fn cont<B: Field>(
    cfg: &Arc<FieldConfig>,
    fmt: NumberFormat,
    f: &str,
    at: &str,
    value: Option<&str>,
) -> Result<Outcome> {
    let (f, x0) = (expr(f)?, rational(at)?);
    let r = match value {
        Some(v) => calculus::continuity_at_with_value::<B>(&f, &x0, &rational(v)?, cfg)?,
        None => calculus::continuity_at::<B>(&f, &x0, cfg)?,
    };
    Ok(Outcome::new(r.report(fmt), continuity_exit(r.verdict)))
}

fn classify<B: Field>(cfg: &Arc<FieldConfig>, text: &str) -> Result<Outcome> {
    let x = B::element(cfg, text)?;
    let c = x.classify()?;
    let report = Report::new("classify", render::class(&c))
        .input("expr", text)
        .input("backend", B::NAME)
        .value("element", &x)
        .value("tag", format!("{:?}", c.tag))
        .value("sign", c.sign.word());
    Ok(Outcome::line(render::class(&c), report, EXIT_OK))
}

fn standard_part<B: Field>(cfg: &Arc<FieldConfig>, fmt: NumberFormat, text: &str) -> Result<Outcome> {
    let x = B::element(cfg, text)?;
    let report = Report::new("st", "Finite").input("expr", text).input("backend", B::NAME).value("element", &x);
    let (value, exact, error) = x.standard()?;
    let tol = &cfg.st_tolerance;
    let report = report
        .value("st", fmt.show(&value))
        .value("exact", exact)
        .value("error", fmt.show(&error))
        .tolerance("st_tolerance", tol);
    let human = if exact {
        fmt.show(&value)
    } else {
        let digits = match fmt {
            NumberFormat::Decimal(d) => d,
            NumberFormat::Exact => (-tol.to_f64().log10()).ceil().max(0.0) as u32 + 3,
        };
        format!("≈ {} (± {tol})", value.to_decimal(digits))
    };
    Ok(Outcome::line(human, report, EXIT_OK))
}

fn order_words(a: Result<btrack_core::Classification>, b: Result<btrack_core::Classification>) -> Option<String> {
    let (a, b) = (a.ok()?, b.ok()?);
    let word = |t: Tag| format!("{t}");
    Some(if a.tag == b.tag { format!("both {}", word(a.tag)) } else { format!("{} vs {}", word(a.tag), word(b.tag)) })
}

fn compare<B: Field>(cfg: &Arc<FieldConfig>, a: &str, b: &str) -> Result<Outcome> {
    let (x, y) = (B::element(cfg, a)?, B::element(cfg, b)?);
    let d = x.sub(&y)?.classify()?;
    let verdict = match d.sign {
        btrack_core::Sign::Negative => "Less",
        btrack_core::Sign::Zero => "Equal",
        btrack_core::Sign::Positive => "Greater",
    };
    let words = order_words(x.classify(), y.classify());
    let report = Report::new("compare", verdict)
        .input("a", a)
        .input("b", b)
        .input("backend", B::NAME)
        .value("difference", render::class(&d));
    let human = match &words {
        Some(w) => format!("{verdict} ({w})"),
        None => verdict.to_string(),
    };
    Ok(Outcome::line(human, report, EXIT_OK))
}

fn compare_sequences(cfg: &Arc<FieldConfig>, a: &str, b: &str) -> Result<Outcome> {
    let (x, y) = (HyperSeq::element(cfg, a)?, HyperSeq::element(cfg, b)?);
    let r = hs_compare(&x, &y, &AgreementPolicy::from_config(cfg));
    let verdict = format!("{:?}", r.verdict);
    let mut report = Report::new("compare", verdict.clone())
        .input("a", a)
        .input("b", b)
        .input("backend", HyperSeq::NAME)
        .value("dominance_pattern", &r.dominance_pattern)
        .value("reason", &r.reason)
        .value("exception_set", format!("{:?}", r.exception_set))
        .value("agreement", AgreementPolicy::from_config(cfg).mode())
        .tolerance("cutoff", cfg.sequence_cutoff);
    if let Some(from) = r.sign_constant_from {
        report = report.value("sign_constant_from", from);
    }
    let (human, exit) = match r.verdict {
        Verdict::Undecided => (format!("Undecided\nreason: {}", r.reason), EXIT_UNDECIDED),
        _ => match order_words(x.classify(), y.classify()) {
            Some(w) => (format!("{verdict} ({w})"), EXIT_OK),
            None => (verdict, EXIT_OK),
        },
    };
    Ok(Outcome::line(human, report, exit))
}

fn transfer<B: Field>(
    cfg: &Arc<FieldConfig>,
    fmt: NumberFormat,
    lhs: &str,
    rhs: &str,
    at: &[String],
) -> Result<Outcome> {
    let points = if at.is_empty() {
        B::transfer_points(cfg)
    } else {
        at.iter().map(|p| Ok((p.clone(), B::element(cfg, p)?))).collect::<Result<Vec<_>>>()?
    };
    let r = calculus::transfer_check::<B>(&expr(lhs)?, &expr(rhs)?, &points, cfg);
    let exit = match r.verdict {
        TransferVerdict::Pass | TransferVerdict::Fail => EXIT_OK,
        TransferVerdict::NoTransfer => EXIT_UNSUPPORTED,
        TransferVerdict::Error => {
            r.points.iter().filter_map(|p| p.error.as_ref()).map(exit_code).max().unwrap_or(EXIT_INPUT)
        }
    };
    Ok(Outcome::new(r.report(fmt), exit))
}

fn ultrademo(cfg: &Arc<FieldConfig>, text: &str) -> Result<Outcome> {
    let s = HyperSeq::element(cfg, text)?;
    let q = hs_null_quotient_demo(&s)?;
    let mut report = Report::new("ultrademo", "Cauchy")
        .input("seq", text)
        .value("sequence", &q.sequence)
        .value("represented_real", &q.represented_real)
        .value("coset_witness", &q.coset_witness)
        .value("witness_class", &q.witness_class)
        .value("dominance_pattern", &q.dominance_pattern)
        .tolerance("st_tolerance", &q.tolerance);
    if let Some(e) = &q.exact {
        report = report.value("exact", e);
    }
    for (i, line) in q.explanation.iter().enumerate() {
        report = report.probe([("step", (i + 1).to_string()), ("explanation", line.clone())]);
    }
    let mut human = render::report(&Report { probes: Vec::new(), ..report.clone() });
    human.push('\n');
    for line in &q.explanation {
        human.push_str(line);
        human.push('\n');
    }
    Ok(Outcome { human, report, exit: EXIT_OK })
}
