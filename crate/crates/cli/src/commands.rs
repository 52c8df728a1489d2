use std::fmt::Write as _;

use arithdyn::dynamics::{
    check_divisibility_sequence, check_orbit_divisibility, check_orbit_rigid, check_rigid, count_multdep,
    largest_squarefree_factor, CountConfig, DivisibilityCheck, OrbitTable, RigidCheck, SquarefreeFactor,
    DEFAULT_MAX_BITS,
};
use arithdyn::exactmath::{parse_rational, FactorEffort, GaussianRational, Rational};
use arithdyn::multdep::{mult_rank, test_dependence, Status};
use arithdyn::poly::{abc_check, radical, squarefree_decompose, Polynomial, QPoly, Scalar};
use arithdyn::structure::{
    build_hat, classify_leveque_case, common_iterate_search, exceptional_exponents, exceptional_form,
    exceptional_pairs_from_sets, leveque_profile, make_standard_pair, scan_separated_solutions,
    verify_semiconjugacy, ExceptionalForm, LeVequeCase, PairParams, DEFAULT_COMMON_ITERATE_MAXDEG,
};
use num_bigint::BigInt;
use num_traits::{One, Pow};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Config;
use crate::report::{quote, Report};
use crate::{
    AbcArgs, Cli, Command, CommonIterateArgs, CountArgs, DomainArg, ExceptionalArgs, HatArgs, KindArg, LevequeArgs,
    MultdepArgs, OrbitArgs, PpdArgs, RdsArgs, ScanArgs, SqfreeArgs, StandardPairArgs, ValuesArgs, VerifyArgs,
};

pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

const DEFAULT_PRIME_BOUND: u64 = 100_000;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Budget(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Budget(m) => m,
        }
    }
}

impl From<arithdyn::Error> for CliError {
    fn from(e: arithdyn::Error) -> Self {
        if e.is_budget() {
            CliError::Budget(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

type Res = Result<Report, CliError>;

pub struct Context {
    pub domain: DomainArg,
    pub seed: u64,
    pub config: Config,
}

impl Context {
    pub fn new(cli: &Cli, config: Config) -> Result<Self, CliError> {
        let domain = match (cli.domain, config.domain.as_deref()) {
            (Some(d), _) => d,
            (None, None | Some("q")) => DomainArg::Q,
            (None, Some("qi")) => DomainArg::Qi,
            (None, Some(other)) => return Err(CliError::Usage(format!("config: unknown domain {other:?}"))),
        };
        if let Some(t) = cli.threads.or(config.threads) {
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build_global()
                .map_err(|e| CliError::Usage(format!("cannot start {t} threads: {e}")))?;
        }
        Ok(Context { domain, seed: cli.seed.or(config.seed).unwrap_or(0), config })
    }

    fn require_q(&self, what: &str) -> Result<(), CliError> {
        match self.domain {
            DomainArg::Q => Ok(()),
            DomainArg::Qi => Err(CliError::Domain(format!("{what} works over Q only"))),
        }
    }

    fn max_bits(&self, flag: Option<u64>) -> u64 {
        flag.or(self.config.max_bits).unwrap_or(DEFAULT_MAX_BITS)
    }
}

/// Runs `body::<F>` for the field selected by `--domain`.
macro_rules! by_domain {
    ($ctx:expr, $body:ident($($arg:expr),*)) => {
        match $ctx.domain {
            DomainArg::Q => $body::<Rational>($($arg),*),
            DomainArg::Qi => $body::<GaussianRational>($($arg),*),
        }
    };
}

pub fn run(command: &Command, ctx: &Context) -> Res {
    match command {
        Command::Orbit(a) => orbit(a, ctx),
        Command::Multdep(a) => multdep(a, ctx),
        Command::Rank(a) => rank(a, ctx),
        Command::Leveque(a) => by_domain!(ctx, leveque(a)),
        Command::Classify(a) => by_domain!(ctx, classify(a)),
        Command::Exceptional(a) => by_domain!(ctx, exceptional(a)),
        Command::Hat(a) => by_domain!(ctx, hat(a)),
        Command::VerifySemiconj(a) => by_domain!(ctx, verify(a)),
        Command::CommonIterate(a) => by_domain!(ctx, common_iterate(a, ctx)),
        Command::StandardPair(a) => by_domain!(ctx, standard_pair(a)),
        Command::ScanSolutions(a) => by_domain!(ctx, scan(a)),
        Command::RdsCheck(a) => rds_check(a, ctx),
        Command::Ppd(a) => ppd(a, ctx),
        Command::Sqfree(a) => sqfree(a, ctx),
        Command::Count(a) => count(a, ctx),
        Command::AbcCheck(a) => by_domain!(ctx, abc(a)),
    }
}

fn poly<F: Scalar>(text: &str) -> Result<Polynomial<F>, CliError> {
    text.parse().map_err(|e: arithdyn::Error| CliError::Domain(format!("{text:?}: {e}")))
}

fn scalar<F: Scalar>(text: &str) -> Result<F, CliError> {
    arithdyn::poly::parse_scalar(text).map_err(|e| CliError::Domain(format!("{text:?}: {e}")))
}

fn rational(text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e| CliError::Domain(format!("{text:?}: {e}")))
}

fn integer(text: &str) -> Result<BigInt, CliError> {
    text.trim().parse().map_err(|_| CliError::Domain(format!("{text:?} is not an integer")))
}

fn rationals(texts: &[String]) -> Result<Vec<Rational>, CliError> {
    texts.iter().map(|t| rational(t)).collect()
}

fn csv_rows<I: IntoIterator<Item = Vec<String>>>(header: &[&str], rows: I) -> String {
    let mut out = header.join(",") + "\n";
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| quote(c)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn orbit(a: &OrbitArgs, ctx: &Context) -> Res {
    ctx.require_q("orbit")?;
    let f: QPoly = poly(&a.f)?;
    let t = OrbitTable::new(&f, &rational(&a.x0)?, a.n, ctx.max_bits(a.max_bits))?;
    #[derive(Serialize)]
    struct Out {
        f: String,
        x0: String,
        values: Vec<String>,
        preperiodic: Option<(usize, usize)>,
    }
    let values: Vec<String> = t.values().iter().map(ToString::to_string).collect();
    let mut text = String::new();
    for (m, v) in values.iter().enumerate() {
        writeln!(text, "f^{}({}) = {v}", m + 1, t.x0()).unwrap();
    }
    if let Some((k, m)) = t.preperiodic() {
        writeln!(text, "preperiodic: f^{m}(x0) = f^{k}(x0)").unwrap();
    }
    let csv = csv_rows(&["m", "value"], values.iter().enumerate().map(|(m, v)| vec![(m + 1).to_string(), v.clone()]));
    let out = Out { f: f.to_string(), x0: t.x0().to_string(), values, preperiodic: t.preperiodic() };
    Ok(Report::new(&out, text, csv))
}

#[derive(Serialize)]
struct DependenceOut {
    status: Status,
    k: Option<Vec<i64>>,
    rank: Option<usize>,
}

fn random_tuple(n: usize, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let v = [2i64, 3, 5, 7].iter().fold(Rational::one(), |acc, &p| {
                acc * Pow::pow(Rational::from_integer(p.into()), rng.gen_range(-3i32..=3))
            });
            if rng.gen_bool(0.5) {
                -v
            } else {
                v
            }
        })
        .collect()
}

fn multdep(a: &MultdepArgs, ctx: &Context) -> Res {
    ctx.require_q("multdep")?;
    let values = match a.random {
        Some(n) => random_tuple(n, ctx.seed),
        None => rationals(&a.values)?,
    };
    if values.is_empty() {
        return Err(CliError::Usage("no values given".into()));
    }
    let v = test_dependence(&values);
    let k = v.relation.map(|r| r.k);
    let status = match v.status {
        Status::Dependent => "dependent",
        Status::Independent => "independent",
        Status::Undefined => "undefined (a value is zero)",
    };
    let shown: Vec<String> = values.iter().map(ToString::to_string).collect();
    let mut text = format!("values: {}\nstatus: {status}\n", shown.join(" "));
    if let Some(k) = &k {
        let ks: Vec<String> = k.iter().map(ToString::to_string).collect();
        writeln!(text, "relation k: {}", ks.join(" ")).unwrap();
    }
    if let Some(r) = v.rank {
        writeln!(text, "rank: {r}").unwrap();
    }
    let out = DependenceOut { status: v.status, k, rank: v.rank };
    let csv = csv_rows(
        &["index", "value", "k"],
        shown.iter().enumerate().map(|(i, s)| {
            vec![(i + 1).to_string(), s.clone(), out.k.as_ref().map_or(String::new(), |k| k[i].to_string())]
        }),
    );
    Ok(Report::new(&out, text, csv))
}

fn rank(a: &ValuesArgs, ctx: &Context) -> Res {
    ctx.require_q("rank")?;
    let r = mult_rank(&rationals(&a.values)?)?;
    #[derive(Serialize)]
    struct Out {
        rank: usize,
    }
    Ok(Report::fields(&Out { rank: r }, format!("rank: {r}\n")))
}

fn leveque<F: Scalar>(a: &LevequeArgs) -> Res {
    let f: Polynomial<F> = poly(&a.f)?;
    let p = leveque_profile(&f, a.m)?;
    #[derive(Serialize)]
    struct Out {
        f: String,
        m: u64,
        profile: Vec<u64>,
        satisfies: bool,
    }
    let out = Out { f: f.to_string(), m: a.m, profile: p.expanded(), satisfies: p.satisfies() };
    let text = format!(
        "reduced multiplicities: {:?}\nLeVeque condition: {}\n",
        out.profile,
        if out.satisfies { "holds" } else { "fails" }
    );
    Ok(Report::fields(&out, text))
}

#[derive(Serialize)]
struct FormOut {
    s: usize,
    c: String,
    p: String,
    m: u64,
    c_is_power: bool,
}

impl FormOut {
    fn new<F: Scalar>(form: &ExceptionalForm<F>) -> Self {
        FormOut { s: form.s, c: form.c.to_string(), p: form.p.to_string(), m: form.m, c_is_power: form.c_is_power }
    }

    fn describe(&self) -> String {
        let c = if self.c == "1" { String::new() } else { format!("({})*", self.c) };
        let x = match self.s {
            0 => String::new(),
            1 => "X*".to_string(),
            s => format!("X^{s}*"),
        };
        format!("{c}{x}({})^{}", self.p, self.m)
    }
}

fn classify<F: Scalar>(a: &LevequeArgs) -> Res {
    let f: Polynomial<F> = poly(&a.f)?;
    #[derive(Serialize, Default)]
    struct Out {
        case: &'static str,
        m: u64,
        #[serde(skip_serializing_if = "Option::is_none")]
        form: Option<FormOut>,
        #[serde(skip_serializing_if = "Option::is_none")]
        square: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        j: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        profile: Option<Vec<u64>>,
    }
    let (out, text) = match classify_leveque_case(&f, a.m)? {
        LeVequeCase::ExceptionalForm(form) => {
            let form = FormOut::new(&form);
            let text = format!("ExceptionalForm\nf = {}\n", form.describe());
            (Out { case: "ExceptionalForm", m: a.m, form: Some(form), ..Default::default() }, text)
        }
        LeVequeCase::SquareIterateExceptional { square, form } => {
            let form = FormOut::new(&form);
            let text = format!("SquareIterateExceptional\nf^2 = {square}\n    = {}\n", form.describe());
            let out = Out {
                case: "SquareIterateExceptional",
                m: a.m,
                form: Some(form),
                square: Some(square.to_string()),
                ..Default::default()
            };
            (out, text)
        }
        LeVequeCase::LeVequeIterate { j, profile } => {
            let text = format!("LeVequeIterate\nj = {j}\nreduced multiplicities of f^{j}: {:?}\n", profile.expanded());
            let out =
                Out { case: "LeVequeIterate", m: a.m, j: Some(j), profile: Some(profile.expanded()), ..Default::default() };
            (out, text)
        }
    };
    Ok(Report::fields(&out, text))
}

fn exceptional<F: Scalar>(a: &ExceptionalArgs) -> Res {
    let f: Polynomial<F> = poly(&a.f)?;
    let ef = exceptional_exponents(&f)?;
    #[derive(Serialize)]
    struct Out {
        e_f: Vec<u64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        e_g: Option<Vec<u64>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        pairs: Option<Vec<(u64, u64)>>,
    }
    let mut out = Out { e_f: ef.iter().copied().collect(), e_g: None, pairs: None };
    let mut text = format!("E(f) = {:?}\n", out.e_f);
    if let Some(g) = &a.g {
        let g: Polynomial<F> = poly(g)?;
        let eg = exceptional_exponents(&g)?;
        let pairs: Vec<(u64, u64)> = exceptional_pairs_from_sets(&ef, &eg).into_iter().collect();
        let eg: Vec<u64> = eg.into_iter().collect();
        writeln!(text, "E(g) = {eg:?}\nE(f, g) = {pairs:?}").unwrap();
        out.e_g = Some(eg);
        out.pairs = Some(pairs);
    }
    let mut csv = String::from("set,k,l\n");
    for e in &out.e_f {
        writeln!(csv, "f,,{e}").unwrap();
    }
    for e in out.e_g.iter().flatten() {
        writeln!(csv, "g,{e},").unwrap();
    }
    for (k, l) in out.pairs.iter().flatten() {
        writeln!(csv, "pair,{k},{l}").unwrap();
    }
    Ok(Report::new(&out, text, csv))
}

fn hat_of<F: Scalar>(f: &Polynomial<F>, l: u64) -> Result<(ExceptionalForm<F>, Polynomial<F>), CliError> {
    let form = exceptional_form(f, l)?
        .ok_or_else(|| CliError::Domain(format!("f is not of the form c*X^s*p(X)^{l}")))?;
    let hat = build_hat(&form)?;
    Ok((form, hat))
}

fn hat<F: Scalar>(a: &HatArgs) -> Res {
    let f: Polynomial<F> = poly(&a.f)?;
    let (form, hat) = hat_of(&f, a.l)?;
    #[derive(Serialize)]
    struct Out {
        f: String,
        l: u64,
        form: FormOut,
        hat: String,
    }
    let out = Out { f: f.to_string(), l: a.l, form: FormOut::new(&form), hat: hat.to_string() };
    let text = format!("f = {}\nf̂ = {}\n", out.form.describe(), out.hat);
    Ok(Report::fields(&out, text))
}

fn verify<F: Scalar>(a: &VerifyArgs) -> Res {
    let f: Polynomial<F> = poly(&a.f)?;
    let hat = match &a.hat {
        Some(h) => poly(h)?,
        None => hat_of(&f, u64::from(a.l))?.1,
    };
    let holds = verify_semiconjugacy(&f, &hat, a.l, a.n)?;
    #[derive(Serialize)]
    struct Out {
        f: String,
        hat: String,
        l: u32,
        n: usize,
        holds: bool,
    }
    let out = Out { f: f.to_string(), hat: hat.to_string(), l: a.l, n: a.n, holds };
    let text = format!(
        "f^{n}(X^{l}) {} f̂^{n}(X)^{l}  with f̂ = {}\n",
        if holds { "=" } else { "≠" },
        out.hat,
        n = a.n,
        l = a.l
    );
    Ok(Report::fields(&out, text))
}

fn common_iterate<F: Scalar>(a: &CommonIterateArgs, ctx: &Context) -> Res {
    let f: Polynomial<F> = poly(&a.f)?;
    let g: Polynomial<F> = poly(&a.g)?;
    let maxdeg = a.maxdeg.or(ctx.config.maxdeg).unwrap_or(DEFAULT_COMMON_ITERATE_MAXDEG);
    let found = common_iterate_search(&f, &g, maxdeg)?;
    #[derive(Serialize)]
    struct Out {
        found: bool,
        n: Option<usize>,
        m: Option<usize>,
        maxdeg: u64,
    }
    let out = Out { found: found.is_some(), n: found.map(|p| p.0), m: found.map(|p| p.1), maxdeg };
    let text = match found {
        Some((n, m)) => format!("f^{n} = g^{m}\n"),
        None => format!("no common iterate of degree ≤ {maxdeg}\n"),
    };
    Ok(Report::fields(&out, text))
}

fn standard_pair<F: Scalar>(a: &StandardPairArgs) -> Res {
    let need = |v: Option<u32>, name: &str| v.ok_or_else(|| CliError::Usage(format!("--{name} is required")));
    let aa: F = scalar(&a.a)?;
    let params = match a.kind {
        KindArg::First => PairParams::First { m: need(a.m, "m")?, r: need(a.r, "r")?, a: aa, p: poly(&a.p)? },
        KindArg::Second => PairParams::Second { a: aa, b: scalar(&a.b)?, p: poly(&a.p)? },
        KindArg::Third => PairParams::Third { m: need(a.m, "m")?, n: need(a.n, "n")?, a: aa },
        KindArg::Fourth => PairParams::Fourth { m: need(a.m, "m")?, n: need(a.n, "n")?, a: aa, b: scalar(&a.b)? },
        KindArg::Fifth => PairParams::Fifth { a: aa },
        KindArg::Specific => PairParams::Specific { m: need(a.m, "m")?, n: need(a.n, "n")?, a: aa },
    };
    let pair = make_standard_pair(params, a.switched)?;
    #[derive(Serialize)]
    struct Out {
        kind: String,
        switched: bool,
        f1: String,
        g1: String,
    }
    let out = Out { kind: format!("{:?}", pair.kind()), switched: a.switched, f1: pair.f1.to_string(), g1: pair.g1.to_string() };
    let text = format!("{}{}\nf1 = {}\ng1 = {}\n", out.kind, if a.switched { " (switched)" } else { "" }, out.f1, out.g1);
    Ok(Report::fields(&out, text))
}

fn scan<F: Scalar>(a: &ScanArgs) -> Res {
    let f: Polynomial<F> = poly(&a.f)?;
    let g: Polynomial<F> = poly(&a.g)?;
    let sols = scan_separated_solutions(&f, &g, a.height)?;
    #[derive(Serialize)]
    struct Out {
        height: i64,
        solutions: Vec<(i64, i64)>,
    }
    let mut text = format!("{} solutions of f(x) = g(y) with |x|, |y| ≤ {}\n", sols.len(), a.height);
    for (x, y) in &sols {
        writeln!(text, "({x}, {y})").unwrap();
    }
    let csv = csv_rows(&["x", "y"], sols.iter().map(|(x, y)| vec![x.to_string(), y.to_string()]));
    Ok(Report::new(&Out { height: a.height, solutions: sols }, text, csv))
}

#[derive(Serialize)]
struct ViolationOut {
    p: u64,
    first: (usize, u32),
    conflict: (usize, u32),
}

fn rds_check(a: &RdsArgs, ctx: &Context) -> Res {
    ctx.require_q("rds-check")?;
    let bound = a.prime_bound.or(ctx.config.prime_bound).unwrap_or(DEFAULT_PRIME_BOUND);
    let (div, rigid, n): (DivisibilityCheck, RigidCheck, usize) = match (&a.f, &a.sequence) {
        (_, Some(seq)) => {
            let terms: Vec<BigInt> = seq.split(',').map(integer).collect::<Result<_, _>>()?;
            (check_divisibility_sequence(&terms)?, check_rigid(&terms, bound)?, terms.len())
        }
        (Some(f), None) => {
            let f: QPoly = poly(f)?;
            let x0 = integer(&a.x0)?;
            (check_orbit_divisibility(&f, &x0, a.n)?, check_orbit_rigid(&f, &x0, a.n, bound)?, a.n)
        }
        (None, None) => return Err(CliError::Usage("give a polynomial or --sequence".into())),
    };
    #[derive(Serialize)]
    struct Out {
        n: usize,
        prime_bound: u64,
        divisibility: bool,
        divisibility_violation: Option<(usize, usize)>,
        rigid: bool,
        rigid_violation: Option<ViolationOut>,
        primes_seen: usize,
    }
    let out = Out {
        n,
        prime_bound: bound,
        divisibility: div.holds(),
        divisibility_violation: div.violation,
        rigid: rigid.holds(),
        rigid_violation: rigid.violation.as_ref().map(|v| ViolationOut { p: v.p, first: v.first, conflict: v.conflict }),
        primes_seen: rigid.exponents.len(),
    };
    let mut text = String::new();
    match div.violation {
        None => writeln!(text, "divisibility: holds for {n} terms").unwrap(),
        Some((m, k)) => writeln!(text, "divisibility: a_{m} does not divide a_{k}").unwrap(),
    }
    match &rigid.violation {
        None => writeln!(text, "rigidity: holds for primes ≤ {bound} ({} primes divide some term)", out.primes_seen).unwrap(),
        Some(v) => writeln!(
            text,
            "rigidity: v_{}(a_{}) = {} but v_{}(a_{}) = {}",
            v.p, v.first.0, v.first.1, v.p, v.conflict.0, v.conflict.1
        )
        .unwrap(),
    }
    Ok(Report::fields(&out, text))
}

fn ppd(a: &PpdArgs, ctx: &Context) -> Res {
    ctx.require_q("ppd")?;
    let f: QPoly = poly(&a.f)?;
    let t = OrbitTable::new(&f, &rational(&a.x0)?, a.n, ctx.max_bits(a.max_bits))?;
    let parts: Vec<BigInt> = (1..=a.n).map(|m| t.primitive_part(m)).collect::<Result<_, _>>()?;
    #[derive(Serialize)]
    struct Part {
        m: usize,
        primitive_part: String,
        has_primitive_divisor: bool,
    }
    #[derive(Serialize)]
    struct Out {
        f: String,
        x0: String,
        parts: Vec<Part>,
        missing: Vec<usize>,
    }
    let parts: Vec<Part> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| Part { m: i + 1, primitive_part: p.to_string(), has_primitive_divisor: !p.is_one() })
        .collect();
    let missing: Vec<usize> = parts.iter().filter(|p| !p.has_primitive_divisor).map(|p| p.m).collect();
    let mut text = String::new();
    for p in &parts {
        let shown = if p.primitive_part.len() > 60 {
            format!("{}… ({} digits)", &p.primitive_part[..40], p.primitive_part.len())
        } else {
            p.primitive_part.clone()
        };
        writeln!(text, "m = {:>3}  primitive part {shown}", p.m).unwrap();
    }
    writeln!(text, "terms without a primitive prime divisor: {missing:?}").unwrap();
    let csv = csv_rows(
        &["m", "primitive_part", "has_primitive_divisor"],
        parts.iter().map(|p| vec![p.m.to_string(), p.primitive_part.clone(), p.has_primitive_divisor.to_string()]),
    );
    let out = Out { f: f.to_string(), x0: t.x0().to_string(), parts, missing };
    Ok(Report::new(&out, text, csv))
}

fn sqfree(a: &SqfreeArgs, ctx: &Context) -> Res {
    if a.integer {
        return sqfree_integer(a, ctx);
    }
    by_domain!(ctx, sqfree_poly(a))
}

fn sqfree_poly<F: Scalar>(a: &SqfreeArgs) -> Res {
    let f: Polynomial<F> = poly(&a.input)?;
    let d = squarefree_decompose(&f)?;
    let rad = radical(&f)?;
    #[derive(Serialize)]
    struct Part {
        factor: String,
        multiplicity: u32,
    }
    #[derive(Serialize)]
    struct Out {
        content: String,
        parts: Vec<Part>,
        radical: String,
    }
    let parts: Vec<Part> = d.parts.iter().map(|(g, e)| Part { factor: g.to_string(), multiplicity: *e }).collect();
    let mut text = format!("content {}\n", d.content);
    for p in &parts {
        writeln!(text, "({})^{}", p.factor, p.multiplicity).unwrap();
    }
    writeln!(text, "radical {rad}").unwrap();
    let csv = csv_rows(&["factor", "multiplicity"], parts.iter().map(|p| vec![p.factor.clone(), p.multiplicity.to_string()]));
    Ok(Report::new(&Out { content: d.content.to_string(), parts, radical: rad.to_string() }, text, csv))
}

fn sqfree_integer(a: &SqfreeArgs, ctx: &Context) -> Res {
    let v = integer(&a.input)?;
    let defaults = FactorEffort::default();
    let effort = FactorEffort {
        trial_bound: a.trial_bound.or(ctx.config.trial_bound).unwrap_or(defaults.trial_bound),
        rho_iterations: a.rho_iterations.or(ctx.config.rho_iterations).unwrap_or(defaults.rho_iterations),
        rho_attempts: a.rho_attempts.or(ctx.config.rho_attempts).unwrap_or(defaults.rho_attempts),
    };
    #[derive(Serialize)]
    struct Out {
        value: String,
        complete: bool,
        radical: String,
        cofactor: Option<String>,
    }
    let (out, exit) = match largest_squarefree_factor(&v, &effort)? {
        SquarefreeFactor::Complete(r) => {
            (Out { value: v.to_string(), complete: true, radical: r.to_string(), cofactor: None }, 0)
        }
        SquarefreeFactor::Partial { known, cofactor } => (
            Out { value: v.to_string(), complete: false, radical: known.to_string(), cofactor: Some(cofactor.to_string()) },
            EXIT_BUDGET,
        ),
    };
    let text = match &out.cofactor {
        None => format!("radical {}\n", out.radical),
        Some(c) => format!("partial: radical of the factored part {}, unfactored cofactor {c}\n", out.radical),
    };
    Ok(Report::fields(&out, text).with_exit(exit))
}

fn count(a: &CountArgs, ctx: &Context) -> Res {
    ctx.require_q("count")?;
    let n = a.n.unwrap_or(a.fs.len().max(a.xs.len()));
    let spread = |v: &[String], name: &str| -> Result<Vec<String>, CliError> {
        match v.len() {
            1 => Ok(vec![v[0].clone(); n]),
            len if len == n => Ok(v.to_vec()),
            len => Err(CliError::Usage(format!("{len} values for --{name}, expected 1 or {n}"))),
        }
    };
    let fs: Vec<QPoly> = spread(&a.fs, "f")?.iter().map(|s| poly(s)).collect::<Result<_, _>>()?;
    let xs = rationals(&spread(&a.xs, "x")?)?;
    let defaults = CountConfig::default();
    let config = CountConfig {
        budget: a.budget.or(ctx.config.budget).unwrap_or(defaults.budget),
        max_bits: ctx.max_bits(a.max_bits),
        rank_filter: a.rank_filter,
        threads: None,
    };
    let report = count_multdep(&fs, &xs, a.big_n, &config)?;
    let summary = report.summary();
    #[derive(Serialize)]
    struct Cert {
        m: Vec<usize>,
        k: Vec<i64>,
    }
    #[derive(Serialize)]
    struct Out<S> {
        #[serde(flatten)]
        summary: S,
        rank_filter: bool,
        certificates: Vec<Cert>,
    }
    let csv = report.to_csv();
    let text = format!(
        "count {}  (N = {}, n = {}, count/N^(n-1) = {:.4}, count·log N/N^n = {:.4})\n{csv}",
        summary.count, summary.big_n, summary.n, summary.ratio_polynomial, summary.ratio_log
    );
    let out = Out {
        summary,
        rank_filter: a.rank_filter,
        certificates: report.certificates.into_iter().map(|(m, r)| Cert { m, k: r.k }).collect(),
    };
    Ok(Report::new(&out, text, csv))
}

fn abc<F: Scalar>(a: &AbcArgs) -> Res {
    let pa: Polynomial<F> = poly(&a.a)?;
    let pb: Polynomial<F> = poly(&a.b)?;
    let r = abc_check(&pa, &pb)?;
    let c = -(&pa + &pb);
    #[derive(Serialize)]
    struct Out {
        c: String,
        rad_degree: usize,
        max_degree: usize,
        holds: bool,
    }
    let out = Out { c: c.to_string(), rad_degree: r.rad_degree, max_degree: r.max_degree, holds: r.holds() };
    let text = format!(
        "C = {}\ndeg rad(ABC) = {}, max deg = {}: {}\n",
        out.c,
        r.rad_degree,
        r.max_degree,
        if out.holds { "deg rad(ABC) ≥ max deg + 1" } else { "VIOLATED" }
    );
    Ok(Report::fields(&out, text))
}
