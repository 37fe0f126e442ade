//! Argument handling and output rendering for the `hyperwild` binary.
//! [`run_cli`] is the whole program minus process I/O.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use hyperwild::classifier::{classify, verify_consistency, Classification, ClassificationReport, Verification};
use hyperwild::counting::{
    count_curve, count_twisted_fixed, naive_twisted_oracle, CountConfig, DEFAULT_COSET_BUDGET, DEFAULT_CURVE_BUDGET,
    DEFAULT_NAIVE_BUDGET,
};
use hyperwild::exact::render::render_value;
use hyperwild::group::{build_group, character_table, CharacterTable, Variant};
use hyperwild::padic::{BaseField, InputPolynomial, SingleCluster};
use hyperwild::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Pairs checked by `verify` when no `--p/--n` is given.
pub const VERIFY_SUITE: [(u64, u32); 5] = [(3, 1), (5, 1), (7, 1), (3, 3), (5, 3)];

#[derive(Debug, Parser)]
#[command(name = "hyperwild", version, about = "Galois representations of y^2 = f(x) with maximal wild inertia")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    Inertia,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Curve,
    Twisted,
    TwistedNaive,
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Threads for counting loops; results do not depend on it.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Default for every enumeration budget.
    #[arg(long, env = "HYPERWILD_BUDGET")]
    budget: Option<u128>,
    #[arg(long)]
    curve_budget: Option<u128>,
    #[arg(long)]
    coset_budget: Option<u128>,
    #[arg(long)]
    naive_budget: Option<u128>,
}

impl Common {
    fn config(&self) -> CountConfig {
        CountConfig {
            curve_budget: self.curve_budget.or(self.budget).unwrap_or(DEFAULT_CURVE_BUDGET),
            coset_budget: self.coset_budget.or(self.budget).unwrap_or(DEFAULT_COSET_BUDGET),
            naive_budget: self.naive_budget.or(self.budget).unwrap_or(DEFAULT_NAIVE_BUDGET),
            ..CountConfig::default()
        }
        .with_workers(self.workers)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate the hypotheses and classify the representation.
    Classify {
        #[arg(long)]
        p: u64,
        /// `x^5-5` or a JSON coefficient list, constant term first.
        #[arg(long)]
        f: String,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Print the character table of the inertia or full group.
    Chartab {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "inertia")]
        group: GroupArg,
        #[command(flatten)]
        common: Common,
    },
    /// Count points on y^2 = x^p - x, or fixed points of sigma*Frob.
    Count {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        p: u64,
        /// Degree of the field for `curve`.
        #[arg(long)]
        m: Option<usize>,
        /// Inertia degree for `twisted` and `twisted-naive`.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Compare predicted and counted traces of sigma*Frob.
    Verify {
        #[arg(long, requires = "n")]
        p: Option<u64>,
        #[arg(long, requires = "p")]
        n: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
}

fn error_json(code: &str, message: &str) -> String {
    pretty(&json!({ "error": { "code": code, "message": message } }))
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output always serializes");
    s.push('\n');
    s
}

fn fail(e: &Error) -> (i32, String) {
    let code = match e {
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    };
    (code, error_json(e.code(), &e.to_string()))
}

/// Runs one command. `argv[0]` is the program name. Returns the exit code
/// and everything that should go to standard output.
pub fn run_cli<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (EXIT_OK, e.to_string()),
                _ => (EXIT_INPUT, error_json("usage", e.render().to_string().trim())),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(e) => fail(&e),
    }
}

fn dispatch(cmd: Command) -> hyperwild::Result<(i32, String)> {
    match cmd {
        Command::Classify { p, f, n, common } => {
            let f = InputPolynomial::parse(p, &f)?;
            let k = BaseField::new(p, n)?;
            let c = classify(&f, &k, &common.config())?;
            let code = match &c {
                Classification::Refused(_) => EXIT_REFUSED,
                Classification::Classified(r) if !r.is_consistent() => EXIT_INTERNAL,
                Classification::Classified(_) => EXIT_OK,
            };
            let out = match common.format {
                Format::Json => pretty(&c),
                Format::Text => classification_text(&c),
            };
            Ok((code, out))
        }
        Command::Chartab { p, group, common } => {
            let variant = match group {
                GroupArg::Inertia => Variant::Inertia,
                GroupArg::Full => Variant::Full,
            };
            let t = character_table(&build_group(p, variant)?)?;
            let out = match common.format {
                Format::Json => pretty(&t),
                Format::Text => table_text(&t),
            };
            Ok((EXIT_OK, out))
        }
        Command::Count { mode, p, m, n, common } => {
            let cfg = common.config();
            let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Error::Usage(format!("--{flag} is required for this mode")));
            let (value, text) = match mode {
                Mode::Curve => {
                    let r = count_curve(p, need(m, "m")?, &cfg)?;
                    let text = format!("affine = {}, total = {}, trace = {}\n", r.affine, r.total, r.trace);
                    (serde_json::to_value(r), text)
                }
                Mode::Twisted | Mode::TwistedNaive => {
                    let n = need(n, "n")?;
                    let r = if mode == Mode::Twisted {
                        count_twisted_fixed(p, n, &cfg)?
                    } else {
                        naive_twisted_oracle(p, n, &cfg)?
                    };
                    let text = format!(
                        "affineSolutions = {}, A = {}, traceSigmaFrob = {}\n",
                        r.affine_solutions, r.a, r.trace_sigma_frob
                    );
                    (serde_json::to_value(r), text)
                }
            };
            let value = value.map_err(|e| Error::Internal(e.to_string()))?;
            Ok((EXIT_OK, if common.format == Format::Json { pretty(&value) } else { text }))
        }
        Command::Verify { p, n, common } => {
            let pairs: Vec<(u64, u32)> = match (p, n) {
                (Some(p), Some(n)) => vec![(p, n)],
                _ => VERIFY_SUITE.to_vec(),
            };
            let cfg = common.config();
            let mut results = Vec::new();
            let mut all_match = true;
            for (p, n) in pairs {
                let v = verify_consistency(p, n, &cfg)?;
                all_match &= !matches!(v, Verification::Checked { matches: false, .. });
                results.push((p, n, v));
            }
            let out = match common.format {
                Format::Json => pretty(
                    &results
                        .iter()
                        .map(|(p, n, v)| json!({ "p": p, "n": n, "verification": v }))
                        .collect::<Vec<_>>(),
                ),
                Format::Text => results
                    .iter()
                    .map(|(p, n, v)| format!("p = {p}, n = {n}: {}\n", verification_text(v)))
                    .collect(),
            };
            Ok((if all_match { EXIT_OK } else { EXIT_INTERNAL }, out))
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verification_text(v: &Verification) -> String {
    match v {
        Verification::Checked { trace_sigma_frob_counted, trace_sigma_frob_predicted, matches } => format!(
            "counted {trace_sigma_frob_counted}, predicted {}, {}",
            render_value(trace_sigma_frob_predicted),
            if *matches { "match" } else { "MISMATCH" }
        ),
        Verification::NotApplicable => "not applicable (n even)".into(),
        Verification::Skipped { reason } => format!("skipped ({reason})"),
    }
}

fn classification_text(c: &Classification) -> String {
    let (input, a) = match c {
        Classification::Classified(r) => (&r.input, &r.assumptions),
        Classification::Refused(r) => (&r.input, &r.assumptions),
    };
    let mut out = format!("p = {}, f = {}, n = {}\n", input.p, input.f, input.n);
    let cluster = match &a.single_cluster {
        SingleCluster::Yes(w) => format!("yes (w = {w})"),
        SingleCluster::No => "no".into(),
        SingleCluster::NotComputed => "not computed".into(),
    };
    out += &format!(
        "discriminant valuation: {}\nsquarefree: {}\nirreducibility: {:?}\ngcd(v, p-1) = 1: {}\nsingle cluster: {cluster}\nmaximal inertia: {}\n",
        a.disc_valuation.map_or("-".into(), |v| v.to_string()),
        yes_no(a.squarefree),
        a.irreducibility,
        yes_no(a.gcd_condition),
        yes_no(a.maximal_inertia),
    );
    match c {
        Classification::Refused(r) => out += &format!("refused: {}\n", r.failures.join(", ")),
        Classification::Classified(r) => out += &report_text(r),
    }
    out
}

fn report_text(r: &ClassificationReport) -> String {
    let mut out = String::new();
    let g = &r.groups.inertia;
    out += &format!("inertia group: order {}, b = {}, {} classes\n", g.order, g.b, g.class_count);
    if let Some(g) = &r.groups.full {
        out += &format!("full group: order {}, b = {}, {} classes\n", g.order, g.b, g.class_count);
    }
    out += &format!("chi(Frob) = {}\n", render_value(&r.chi.frobenius_value));
    out += &format!(
        "psi = {} on the {:?} group, dimension {}, faithful: {}\n",
        r.psi.row.label,
        r.psi.group,
        r.psi.row.dimension,
        yes_no(r.psi.row.faithful)
    );
    if let Some(t) = &r.psi.trace_sigma_phi {
        out += &format!("tr psi(sigma phi) = {}\n", render_value(t));
    }
    let eig: Vec<String> = r
        .eigenvalues
        .values
        .iter()
        .map(|e| format!("{} x{}", render_value(&e.value), e.multiplicity))
        .collect();
    out += &format!("Frobenius eigenvalues: {}\n", eig.join(", "));
    out += &match r.conductor {
        hyperwild::padic::Conductor::Computed { exponent, shift } => {
            format!("conductor exponent: N = {exponent} (Eisenstein after x -> x + {shift})\n")
        }
        hyperwild::padic::Conductor::NotComputed => "conductor exponent: not computed\n".into(),
    };
    out += &format!("verification: {}\n", verification_text(&r.verification));
    out
}

fn table_text(t: &CharacterTable) -> String {
    let mut grid: Vec<Vec<String>> = Vec::new();
    let mut header = vec!["".to_string(), "dim".to_string(), "faithful".to_string()];
    header.extend(t.classes.classes.iter().map(|c| format!("{}[{}]", c.representative, c.size)));
    grid.push(header);
    for row in &t.rows {
        let mut line = vec![row.label.clone(), row.dimension.to_string(), yes_no(row.faithful).to_string()];
        line.extend(row.values.iter().map(render_value));
        grid.push(line);
    }
    let widths: Vec<usize> = (0..grid[0].len())
        .map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = format!(
        "{:?} group, p = {}, b = {}, order {}\n",
        t.group.variant(),
        t.group.p(),
        t.group.b(),
        t.order()
    );
    for r in grid {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
            .collect();
        out += cells.join("  ").trim_end();
        out.push('\n');
    }
    out
}
