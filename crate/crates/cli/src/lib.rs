//! The `saito` command-line tool. [`run`] is the whole program; `main` only
//! wires it to the process streams.

pub mod problem;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use saito_core::depth::{
    depth, depth_via_dim, depth_via_search, find_regular_sequence, grade_via_koszul,
    is_regular_sequence, preferred_order, QuotientContext, RegularityVerdict, SearchOptions,
};
use saito_core::exterior::{omega_of, wedge, ExteriorForm};
use saito_core::groebner::Ideal;
use saito_core::polyring::{
    parse_polynomial, parse_polynomial_list, MonomialOrder, Polynomial, RingSpec,
};
use saito_core::saito::{
    check_exactness, divide, divide_inductive_with, kernel_generators, localize_divide,
    DivisionStatus, ExactnessVerdict, LocalizeOutcome, DEFAULT_N_CAP,
};

use problem::{parse_order, parse_ring, ProblemFile};
use report::{Outcome, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] saito_core::Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "saito",
    version,
    about = "Exterior division, depth and exactness over polynomial rings"
)]
struct Cli {
    /// Print reports as JSON
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Inline {
    /// Comma-separated ring variables
    #[arg(long)]
    ring: Option<String>,
    /// Monomial order: grevlex or lex
    #[arg(long)]
    order: Option<String>,
    /// Comma-separated ideal generators
    #[arg(long)]
    ideal: Option<String>,
    /// Comma-separated generators of the quotient ideal J
    #[arg(long)]
    quotient: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DepthMethodArg {
    Auto,
    Dim,
    Koszul,
    Search,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print Ω = ω₁∧…∧ω_k, and Ω∧η when η is given
    Wedge { file: PathBuf },
    /// Print Ω and the generators of its coefficient ideal
    Omega { file: PathBuf },
    /// Depth of an ideal (I(Ω) when only a problem file is given)
    Depth {
        file: Option<PathBuf>,
        #[command(flatten)]
        inline: Inline,
        #[arg(long, value_enum, default_value = "auto")]
        method: DepthMethodArg,
    },
    /// Check or search for a regular sequence
    Regseq {
        file: Option<PathBuf>,
        #[command(flatten)]
        inline: Inline,
        /// Sequence to check
        #[arg(long, conflicts_with = "find", required_unless_present = "find")]
        check: Option<String>,
        /// Length of a sequence to search for inside the ideal
        #[arg(long)]
        find: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Solve η = Σ ω_j∧γ_j
    Divide {
        file: PathBuf,
        /// Use the inductive construction instead of a single module lift
        #[arg(long)]
        inductive: bool,
        /// Print the recursion trace (with --inductive)
        #[arg(long, requires = "inductive")]
        trace: bool,
        /// Regular sequence for --inductive; searched for when omitted
        #[arg(long)]
        regseq: Option<String>,
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Find the least n with aⁿη = Σ ω_j∧γ_j
    LocalizeDivide {
        file: PathBuf,
        #[arg(long)]
        element: Option<String>,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Decide whether im A = Ker B in degree p
    CheckExact {
        file: PathBuf,
        #[arg(long)]
        p: Option<usize>,
    },
    /// Generators of Ker B in degree p
    Kernel {
        file: PathBuf,
        #[arg(long)]
        p: Option<usize>,
    },
}

fn load(path: &Path) -> Result<ProblemFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    ProblemFile::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn context(ring: &RingSpec, quotient: &[Polynomial]) -> Result<QuotientContext, CliError> {
    if quotient.is_empty() {
        Ok(QuotientContext::polynomial_ring(ring))
    } else {
        Ok(QuotientContext::new(ring, quotient.to_vec())?)
    }
}

fn forms_required(pf: &ProblemFile) -> Result<usize, CliError> {
    pf.rank
        .ok_or_else(|| CliError::Input("`rank:` is required".into()))
}

fn eta_required(pf: &ProblemFile) -> Result<&ExteriorForm, CliError> {
    pf.eta
        .as_ref()
        .ok_or_else(|| CliError::Input("`eta:` is required".into()))
}

fn degree_required(flag: Option<usize>, pf: &ProblemFile) -> Result<usize, CliError> {
    flag.or(pf.p)
        .ok_or_else(|| CliError::Input("the degree p is required (`--p` or `p:`)".into()))
}

fn search_options(seed: Option<u64>) -> SearchOptions {
    let mut opts = SearchOptions::default();
    if let Some(s) = seed {
        opts.seed = s;
    }
    opts
}

/// Ring, quotient and ideal for `depth` and `regseq`: inline flags override
/// the problem file, and the ideal defaults to `I(Ω)`.
fn ideal_source(
    file: &Option<PathBuf>,
    inline: &Inline,
) -> Result<(QuotientContext, Option<Ideal>, Option<u64>), CliError> {
    let pf = file.as_deref().map(load).transpose()?;
    let ring = match (&inline.ring, &pf) {
        (Some(vars), _) => {
            let order = match &inline.order {
                Some(o) => parse_order(o).map_err(CliError::Input)?,
                None => MonomialOrder::default(),
            };
            parse_ring(vars, order).map_err(|e| CliError::Input(format!("--ring: {e}")))?
        }
        (None, Some(pf)) => pf.ring.clone(),
        (None, None) => return Err(CliError::Input("give a problem file or --ring".into())),
    };
    let parse_list = |flag: &str, s: &str| {
        parse_polynomial_list(s, &ring).map_err(|e| CliError::Input(format!("--{flag}: {e}")))
    };
    let quotient = match (&inline.quotient, &pf) {
        (Some(q), _) => parse_list("quotient", q)?,
        (None, Some(pf)) if inline.ring.is_none() => pf.quotient.clone(),
        _ => Vec::new(),
    };
    let ctx = context(&ring, &quotient)?;
    let ideal = match (&inline.ideal, &pf) {
        (Some(i), _) => Some(Ideal::new(&ring, parse_list("ideal", i)?)?),
        (None, Some(pf)) if inline.ring.is_none() && !pf.omegas.is_empty() => {
            let pkg = omega_of(&ring, forms_required(pf)?, &pf.omegas)?;
            Some(pkg.coeff_ideal)
        }
        _ => None,
    };
    Ok((ctx, ideal, pf.and_then(|p| p.seed)))
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Wedge { file } => {
            let pf = load(file)?;
            let pkg = omega_of(&pf.ring, forms_required(&pf)?, &pf.omegas)?;
            let mut r = Report::new("wedge", Outcome::Success);
            r.field("Omega", &pkg.omega);
            if let Some(eta) = &pf.eta {
                r.field("Omega^eta", wedge(&pkg.omega, eta)?);
            }
            Ok(r)
        }
        Command::Omega { file } => {
            let pf = load(file)?;
            let pkg = omega_of(&pf.ring, forms_required(&pf)?, &pf.omegas)?;
            let mut r = Report::new("omega", Outcome::Success);
            r.field("k", pkg.k())
                .field("Omega", &pkg.omega)
                .list("I(Omega)", pkg.coeff_ideal.generators());
            Ok(r)
        }
        Command::Depth {
            file,
            inline,
            method,
        } => {
            let (ctx, ideal, seed) = ideal_source(file, inline)?;
            let ideal = ideal.ok_or_else(|| {
                CliError::Input("no ideal given (--ideal or omega entries)".into())
            })?;
            let rep = match method {
                DepthMethodArg::Auto => depth(&ideal, &ctx),
                DepthMethodArg::Dim => {
                    if !ctx.is_polynomial_ring() {
                        return Err(CliError::Input(
                            "the dimension formula needs an empty quotient".into(),
                        ));
                    }
                    depth_via_dim(&ideal)
                }
                DepthMethodArg::Koszul => grade_via_koszul(&ideal, &ctx),
                DepthMethodArg::Search => {
                    depth_via_search(&ideal, &ctx, ctx.ring().nvars(), &search_options(seed))
                }
            };
            let mut r = Report::new("depth", Outcome::Success);
            r.field("depth", rep.value)
                .field("method", rep.method.name());
            if let Some(w) = &rep.witness {
                r.list("witness", w);
            }
            Ok(r)
        }
        Command::Regseq {
            file,
            inline,
            check,
            find,
            seed,
        } => {
            let (ctx, ideal, file_seed) = ideal_source(file, inline)?;
            if let Some(seq) = check {
                let seq = parse_polynomial_list(seq, ctx.ring())
                    .map_err(|e| CliError::Input(format!("--check: {e}")))?;
                if seq.is_empty() {
                    return Err(CliError::Input("--check needs a nonempty sequence".into()));
                }
                let verdict = is_regular_sequence(&seq, &ctx);
                let mut r = match verdict {
                    RegularityVerdict::Regular => {
                        Report::new("regseq", Outcome::Success).headline("REGULAR")
                    }
                    _ => Report::new("regseq", Outcome::Negative).headline("NOT REGULAR"),
                };
                r.list("sequence", &seq);
                match verdict {
                    RegularityVerdict::Regular => {}
                    RegularityVerdict::NotProper => {
                        r.field("reason", "the sequence generates the unit ideal");
                    }
                    RegularityVerdict::ZeroDivisor { index } => {
                        r.field(
                            "reason",
                            format!("element {index} is a zero divisor modulo its predecessors"),
                        );
                    }
                }
                return Ok(r);
            }
            let len = find.expect("clap enforces --check or --find");
            if len == 0 {
                return Err(CliError::Input("--find needs a positive length".into()));
            }
            let ideal = ideal.ok_or_else(|| {
                CliError::Input("no ideal given (--ideal or omega entries)".into())
            })?;
            let opts = search_options(seed.or(file_seed));
            Ok(match find_regular_sequence(&ideal, &ctx, len, &opts) {
                Some(seq) => {
                    let mut r = Report::new("regseq", Outcome::Success).headline("FOUND");
                    r.list("sequence", &seq);
                    r
                }
                None => {
                    let mut r = Report::new("regseq", Outcome::Negative).headline("NOT FOUND");
                    r.field(
                        "reason",
                        format!("search budget exhausted for length {len}"),
                    );
                    r
                }
            })
        }
        Command::Divide {
            file,
            inductive,
            trace,
            regseq,
            cap,
            seed,
        } => {
            let pf = load(file)?;
            forms_required(&pf)?;
            let eta = eta_required(&pf)?;
            let ctx = context(&pf.ring, &pf.quotient)?;
            let cap = cap.or(pf.cap).unwrap_or(DEFAULT_N_CAP);
            let mut seq_used = None;
            let result = if *inductive {
                let pkg = omega_of(&pf.ring, eta.rank(), &pf.omegas)?;
                let seq = match regseq {
                    Some(s) => parse_polynomial_list(s, &pf.ring)
                        .map_err(|e| CliError::Input(format!("--regseq: {e}")))?,
                    None if pf.omegas.is_empty() => Vec::new(),
                    None => {
                        let candidates =
                            Ideal::new(&pf.ring, preferred_order(pkg.coeff_ideal.generators()))?;
                        let opts = search_options(seed.or(pf.seed));
                        match find_regular_sequence(&candidates, &ctx, eta.degree() + 1, &opts) {
                            Some(s) => s,
                            None => {
                                let mut r = Report::new("divide", Outcome::Negative)
                                    .headline("INCONCLUSIVE");
                                r.field(
                                    "reason",
                                    format!(
                                        "no regular sequence of length {} found in I(Omega)",
                                        eta.degree() + 1
                                    ),
                                );
                                return Ok(r);
                            }
                        }
                    }
                };
                seq_used = Some(seq.clone());
                divide_inductive_with(&pf.omegas, eta, &seq, &ctx, cap)?
            } else {
                divide(&pf.omegas, eta, &ctx)?
            };
            let mut r = match result.status {
                DivisionStatus::Solved => {
                    Report::new("divide", Outcome::Success).headline("SOLVED")
                }
                DivisionStatus::NoSolution => {
                    let ob = result
                        .obstruction_form()
                        .expect("no-solution carries an obstruction");
                    Report::new("divide", Outcome::Negative)
                        .headline(format!("NO SOLUTION; obstruction: {ob}"))
                }
                DivisionStatus::InconclusiveBudget => Report::new("divide", Outcome::Negative)
                    .headline("INCONCLUSIVE; exponent budget exhausted"),
            };
            r.field("method", if *inductive { "inductive" } else { "lift" });
            if let Some(seq) = &seq_used {
                r.list("regseq", seq);
            }
            for (j, g) in result.gammas.iter().enumerate() {
                r.field(format!("gamma[{}]", j + 1), g);
            }
            if *trace {
                if let Some(t) = &result.trace {
                    r.block("trace", &t.to_string());
                }
            }
            Ok(r)
        }
        Command::LocalizeDivide { file, element, cap } => {
            let pf = load(file)?;
            forms_required(&pf)?;
            let eta = eta_required(&pf)?;
            let ctx = context(&pf.ring, &pf.quotient)?;
            let a = match element {
                Some(s) => parse_polynomial(s, &pf.ring)
                    .map_err(|e| CliError::Input(format!("--element: {e}")))?,
                None => pf.element.clone().ok_or_else(|| {
                    CliError::Input("the element is required (`--element` or `element:`)".into())
                })?,
            };
            let cap = cap.or(pf.cap).unwrap_or(DEFAULT_N_CAP);
            Ok(match localize_divide(&a, &pf.omegas, eta, &ctx, cap)? {
                LocalizeOutcome::Found(loc) => {
                    let mut r = Report::new("localize-divide", Outcome::Success).headline("FOUND");
                    r.field("element", &a).field("n", loc.n);
                    for (j, g) in loc.gammas.iter().enumerate() {
                        r.field(format!("gamma[{}]", j + 1), g);
                    }
                    if let Some(c) = &loc.construction {
                        r.field("completion.minor", c.minor)
                            .field("completion.n1", c.n1)
                            .field("completion.n2", c.n2);
                    }
                    r
                }
                LocalizeOutcome::BudgetExhausted { cap } => {
                    let mut r = Report::new("localize-divide", Outcome::Negative)
                        .headline("BUDGET EXHAUSTED");
                    r.field("element", &a).field("cap", cap);
                    r
                }
            })
        }
        Command::CheckExact { file, p } => {
            let pf = load(file)?;
            forms_required(&pf)?;
            let p = degree_required(*p, &pf)?;
            let ctx = context(&pf.ring, &pf.quotient)?;
            let rep = check_exactness(&pf.omegas, p, &ctx)?;
            let outcome = if rep.is_exact() {
                Outcome::Success
            } else {
                Outcome::Negative
            };
            let mut r = Report::new("check-exact", outcome).headline(rep.to_string());
            r.field("depth", rep.depth.value)
                .field(
                    "condition",
                    if rep.condition_holds {
                        "holds"
                    } else {
                        "fails"
                    },
                )
                .field("kernel.count", rep.kernel.len());
            for (i, eta) in rep.kernel.iter().enumerate() {
                r.field(format!("kernel[{}]", i + 1), eta);
            }
            match &rep.verdict {
                ExactnessVerdict::Exact => {
                    for (i, c) in rep.certificates.iter().enumerate() {
                        for (j, g) in c.gammas.iter().enumerate() {
                            r.field(format!("certificate[{}].gamma[{}]", i + 1, j + 1), g);
                        }
                    }
                }
                ExactnessVerdict::NotExact { index, witness, .. } => {
                    let ob = rep.certificates[*index]
                        .obstruction_form()
                        .expect("unsolved lift");
                    r.field("witness", witness).field("obstruction", ob);
                }
            }
            Ok(r)
        }
        Command::Kernel { file, p } => {
            let pf = load(file)?;
            forms_required(&pf)?;
            let p = degree_required(*p, &pf)?;
            let ctx = context(&pf.ring, &pf.quotient)?;
            let ker = kernel_generators(&pf.omegas, p, &ctx)?;
            let mut r = Report::new("kernel", Outcome::Success);
            r.field("p", p).field("kernel.count", ker.len());
            for (i, eta) in ker.iter().enumerate() {
                r.field(format!("kernel[{}]", i + 1), eta);
            }
            Ok(r)
        }
    }
}

/// Runs the tool on `args` (including the program name) and returns the exit
/// code: 0 success, 1 negative answer or exhausted budget, 2 input error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return 0;
                }
                _ => 2,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let text = if cli.json {
                report.to_json()
            } else {
                report.to_text()
            };
            let _ = out.write_all(text.as_bytes());
            report.outcome.exit_code()
        }
        Err(e) => {
            if cli.json {
                let v = serde_json::json!({ "error": e.to_string(), "exit_code": 2 });
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&v).expect("plain JSON")
                );
            }
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
