use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use bfsyz::cache::MatrixCache;
use bfsyz::exactalg::{format_rational, RankMode};
use bfsyz::fhmaps::{fh_rank_report, minors_generate_check, phi_matrix, power_generators_with, Normalization};
use bfsyz::homres::{
    coker_hilbert, conjecture_scan, ix_betti, koszul_complex, phi_resolution, power_betti, power_regularity_prediction,
    regularity_formula, regularity_report, verify_explicit_betti, verify_ia3_resolution, verify_power_betti,
    BettiTable, ComplexReport, RowConvention, ScanStatus,
};
use bfsyz::polyring::{initial_ideal_jab, GradedIdeal};
use bfsyz::session::{DEFAULT_MEM_MB, DEFAULT_SEED};
use bfsyz::sl2rep::{char_identity_sides, classical_hermite_triple_24, hw_triple, hw_vectors_2_2};
use bfsyz::{Error, Session, Status};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const EXIT_USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "bfsyz", version, about = "Syzygies of powers of binary forms, computed exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Rank computation mode.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,

    /// Seed for the modular prime pool.
    #[arg(long, global = true, env = "BFSYZ_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Directory for cached matrices.
    #[arg(long, global = true, env = "BFSYZ_CACHE")]
    cache: Option<PathBuf>,

    /// Write the report here instead of stdout; timings go to `<path>.log`.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Memory budget for a single elimination, in MiB.
    #[arg(long, global = true, env = "BFSYZ_MEM_MB", default_value_t = DEFAULT_MEM_MB)]
    mem_mb: u64,

    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exact,
    Modular,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BettiTarget {
    Ix,
    Iab,
    IabPow,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ComplexTarget {
    Koszul,
    Be,
    PhiPower,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Norm {
    Coef,
    Form,
}

type Pos = clap::builder::RangedU64ValueParser<usize>;

fn pos() -> Pos {
    Pos::new().range(1..)
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank of the Foulkes-Howe map α_k.
    FhRank {
        #[arg(long, value_parser = pos())]
        a: usize,
        #[arg(long, value_parser = pos())]
        b: usize,
        #[arg(long)]
        k: usize,
    },
    /// The generators P_0..P_d of I_(a,b).
    Gens {
        #[arg(long, value_parser = pos())]
        a: usize,
        #[arg(long, value_parser = pos())]
        b: usize,
        #[arg(long, value_enum, default_value_t = Norm::Coef)]
        normalization: Norm,
    },
    /// Graded Betti table with the matching closed-form check.
    Betti {
        #[arg(long, value_enum)]
        target: BettiTarget,
        #[arg(long, value_parser = pos())]
        a: usize,
        #[arg(long, value_parser = pos())]
        b: usize,
        /// Power of I_(a,b) for `iab-pow`; defaults to b-1.
        #[arg(long, value_parser = pos())]
        j: Option<usize>,
    },
    /// Regularity of I_(a,b) from its Betti table and from J_(a,b).
    Reg {
        #[arg(long, value_parser = pos())]
        a: usize,
        #[arg(long, value_parser = pos())]
        b: usize,
        /// Skip the Betti table and use the initial ideal only.
        #[arg(long)]
        no_direct: bool,
    },
    /// The monomial ideal J_(a,b) and Hilbert functions of S/I and S/J.
    InitialIdeal {
        #[arg(long, value_parser = pos())]
        a: usize,
        #[arg(long, value_parser = pos())]
        b: usize,
    },
    /// Whether the maximal minors of ω span the degree b+1 part of I(X).
    MinorsCheck {
        #[arg(long, value_parser = pos())]
        a: usize,
        #[arg(long, value_parser = pos())]
        b: usize,
    },
    /// The matrix of linear syzygies of P_0..P_d.
    Phi {
        #[arg(long, value_parser = pos())]
        a: usize,
        #[arg(long, value_parser = pos())]
        b: usize,
    },
    /// Termwise q-character identity between the two complexes.
    CharCheck {
        #[arg(long, value_parser = pos())]
        a: usize,
        #[arg(long, value_parser = pos())]
        b: usize,
        /// Single index; all of 0..b-1 when omitted.
        #[arg(long)]
        i: Option<usize>,
    },
    /// Highest-weight scalars of α_2 for a = b = 2.
    HwTriple {
        #[arg(long, default_value_t = 2)]
        a: usize,
        #[arg(long, default_value_t = 2)]
        b: usize,
    },
    /// dim Sym^(ak)(Sym^b U) - rank α_k.
    CokerHf {
        #[arg(long, value_parser = pos())]
        a: usize,
        #[arg(long, value_parser = pos())]
        b: usize,
        #[arg(long)]
        kmax: usize,
    },
    /// Regularity of I_(a,b)^j against the predicted formula.
    ConjectureScan {
        #[arg(long, value_parser = pos())]
        a: usize,
        #[arg(long, value_parser = pos())]
        b: usize,
        #[arg(long, value_parser = pos())]
        jmax: usize,
    },
    /// Degreewise homology of an explicit complex.
    Exactness {
        #[arg(long, value_enum)]
        target: ComplexTarget,
        /// Variables of the Koszul complex.
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2, value_parser = pos())]
        a: usize,
        #[arg(long, default_value_t = 2, value_parser = pos())]
        b: usize,
        /// Last degree checked; defaults to d+b (or n+2 for Koszul).
        #[arg(long)]
        kmax: Option<i64>,
    },
    /// Runs every acceptance criterion and prints a manifest.
    Repro,
}

/// Report body plus an optional plain-text rendering.
struct Outcome {
    status: Status,
    params: Value,
    result: Value,
    text: Option<String>,
}

impl Outcome {
    fn new(status: Status, params: Value, result: impl serde::Serialize) -> Self {
        Outcome {
            status,
            params,
            result: serde_json::to_value(result).expect("serializable report"),
            text: None,
        }
    }

    fn with_text(mut self, t: String) -> Self {
        self.text = Some(t);
        self
    }
}

fn status_of(s: Option<bool>) -> Status {
    match s {
        Some(true) => Status::Verified,
        Some(false) => Status::Mismatch,
        None => Status::Inconclusive,
    }
}

fn table_text(t: &BettiTable) -> String {
    t.render(RowConvention::Row)
}

fn dispatch(cmd: &Command, s: &Session) -> bfsyz::Result<Outcome> {
    Ok(match *cmd {
        Command::FhRank { a, b, k } => {
            let r = fh_rank_report(a, b, k, s)?;
            Outcome::new(r.status, json!({"a": a, "b": b, "k": k}), r)
        }
        Command::Gens { a, b, normalization } => {
            let norm = match normalization {
                Norm::Coef => Normalization::Coefficient,
                Norm::Form => Normalization::Form,
            };
            let g = power_generators_with(a, b, norm)?;
            let ring = g.ring();
            let polys: Vec<_> = g.gens.iter().map(|p| p.to_json(&ring)).collect();
            let text = g
                .gens
                .iter()
                .enumerate()
                .map(|(j, p)| format!("P{j} = {}\n", p.render(&ring)))
                .collect();
            Outcome::new(
                Status::Verified,
                json!({"a": a, "b": b, "normalization": norm.tag()}),
                json!({"generators": polys}),
            )
            .with_text(text)
        }
        Command::Betti { target, a, b, j } => betti(target, a, b, j, s)?,
        Command::Reg { a, b, no_direct } => {
            let r = regularity_report(a, b, !no_direct, s)?;
            Outcome::new(r.status, json!({"a": a, "b": b, "direct": !no_direct}), r)
        }
        Command::InitialIdeal { a, b } => {
            let j = initial_ideal_jab(a, b)?;
            let labels: Vec<String> = (0..=b).map(|i| format!("u{i}")).collect();
            let gens: Vec<String> = j.generators().iter().map(|m| m.render(&labels)).collect();
            let r = regularity_report(a, b, false, s)?;
            let hf = j.quotient_hf(r.hf_checked_through);
            let text = format!(
                "J generators: {}\nHF(S/J): {:?}\nHF(S/I) agrees through degree {}: {}\n",
                gens.join(", "),
                hf,
                r.hf_checked_through,
                r.hf_agree
            );
            Outcome::new(
                Status::from_bool(r.hf_agree),
                json!({"a": a, "b": b}),
                json!({"generators": gens, "hf_quotient": hf, "regularity": r}),
            )
            .with_text(text)
        }
        Command::MinorsCheck { a, b } => {
            let r = minors_generate_check(a, b, s)?;
            Outcome::new(r.status, json!({"a": a, "b": b}), r)
        }
        Command::Phi { a, b } => {
            let phi = phi_matrix(a, b)?;
            let gens = bfsyz::fhmaps::power_generators(a, b)?;
            let ring = gens.ring();
            let residues_zero = phi.syzygy_residues(&gens).iter().all(|p| p.is_zero());
            let rows: Vec<Vec<String>> = (0..phi.rows())
                .map(|r| (0..phi.cols()).map(|c| phi.matrix.entry(r, c).render(&ring)).collect())
                .collect();
            let skew = if b == 2 {
                phi.skew_scaling().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            } else {
                None
            };
            let status = Status::from_bool(residues_zero && (b != 2 || skew.is_some()));
            let text = rows.iter().map(|r| format!("[{}]\n", r.join(", "))).collect();
            Outcome::new(
                status,
                json!({"a": a, "b": b}),
                json!({
                    "rows": phi.rows(),
                    "cols": phi.cols(),
                    "entries": rows,
                    "column_weights": phi.weights,
                    "syzygies": residues_zero,
                    "kernel_rank": phi.kernel_rank,
                    "kernel_det_twist": phi.kernel_det_twist,
                    "skew_scaling": skew,
                }),
            )
            .with_text(text)
        }
        Command::CharCheck { a, b, i } => {
            let range: Vec<usize> = match i {
                Some(i) if i < b => vec![i],
                Some(i) => return Err(Error::arg(format!("i = {i} must be below b = {b}"))),
                None => (0..b).collect(),
            };
            let mut rows = Vec::new();
            let mut ok = true;
            for i in range {
                let (l, r) = char_identity_sides(i, a, b)?;
                let eq = l == r && l.is_palindromic();
                ok &= eq;
                rows.push(json!({"i": i, "lhs": l, "rhs": r, "equal": eq}));
            }
            Outcome::new(Status::from_bool(ok), json!({"a": a, "b": b, "i": i}), json!({"checks": rows}))
        }
        Command::HwTriple { a, b } => {
            if (a, b) != (2, 2) {
                return Err(Error::arg("highest-weight vectors are tabulated for a = b = 2 only"));
            }
            let m = bfsyz::fhmaps::foulkes_howe_with(2, 2, 2, Normalization::Form, s)?;
            let (v, w) = hw_vectors_2_2();
            let pairs: Vec<_> = v.into_iter().zip(w).collect();
            let t = hw_triple(&m.matrix, &m.source, &m.target, &pairs)?;
            let reference = classical_hermite_triple_24();
            let proportional = t.iter().zip(&reference).all(|(x, y)| x * &reference[0] == y * &t[0]);
            let fmt = |v: &[bfsyz::exactalg::Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
            Outcome::new(
                Status::from_bool(!proportional),
                json!({"a": 2, "b": 2, "k": 2, "normalization": "form"}),
                json!({"triple": fmt(&t), "reference": fmt(&reference), "proportional": proportional}),
            )
        }
        Command::CokerHf { a, b, kmax } => {
            let r = coker_hilbert(a, b, kmax, s)?;
            Outcome::new(r.status, json!({"a": a, "b": b, "kmax": kmax}), r)
        }
        Command::ConjectureScan { a, b, jmax } => {
            let r = conjecture_scan(a, b, jmax, s)?;
            let status = r.rows.iter().fold(Status::Verified, |st, row| {
                st.and(match row.status {
                    ScanStatus::Matches => Status::Verified,
                    ScanStatus::Differs => Status::Mismatch,
                    ScanStatus::Inconclusive => Status::Inconclusive,
                })
            });
            let mut text = String::from("evidence only; the formula is conjectural\n j  reg  predicted  status\n");
            for row in &r.rows {
                let reg = row.regularity.map_or("?".to_string(), |x| x.to_string());
                let st = serde_json::to_value(row.status).expect("serializable");
                text += &format!("{:>2} {:>4} {:>10}  {}\n", row.j, reg, row.predicted, st.as_str().unwrap_or(""));
            }
            Outcome::new(status, json!({"a": a, "b": b, "jmax": jmax}), r).with_text(text)
        }
        Command::Exactness { target, n, a, b, kmax } => exactness(target, n, a, b, kmax, s)?,
        Command::Repro => {
            let m = bfsyz::repro::run(s);
            let text = m
                .criteria
                .iter()
                .map(|c| {
                    let v = if c.status == Status::Verified { "PASS" } else { "FAIL" };
                    format!("criterion {:>2} {v} {} ({})\n", c.id, c.name, c.detail)
                })
                .collect();
            Outcome::new(m.status, json!({}), m).with_text(text)
        }
    })
}

fn betti(target: BettiTarget, a: usize, b: usize, j: Option<usize>, s: &Session) -> bfsyz::Result<Outcome> {
    match target {
        BettiTarget::Ix => {
            let t = ix_betti(a, b, s)?;
            let text = table_text(&t);
            if a >= 2 && b >= 2 {
                let r = verify_explicit_betti(a, b, &t)?;
                Ok(Outcome::new(r.status, json!({"target": "ix", "a": a, "b": b}), json!({"table": t.to_json(), "check": r}))
                    .with_text(text))
            } else {
                let st = if t.complete { Status::Verified } else { Status::Inconclusive };
                Ok(Outcome::new(st, json!({"target": "ix", "a": a, "b": b}), json!({"table": t.to_json()})).with_text(text))
            }
        }
        BettiTarget::Iab => {
            let t = power_betti(a, b, 1, s)?;
            let text = table_text(&t);
            let params = json!({"target": "iab", "a": a, "b": b});
            if b == 3 {
                let r = verify_ia3_resolution(a, s)?;
                return Ok(Outcome::new(r.status, params, json!({"table": t.to_json(), "check": r})).with_text(text));
            }
            let reg = t.regularity();
            let st = status_of(reg.map(|r| r == regularity_formula(a, b)));
            Ok(Outcome::new(
                st,
                params,
                json!({"table": t.to_json(), "regularity": reg, "expected_regularity": regularity_formula(a, b)}),
            )
            .with_text(text))
        }
        BettiTarget::IabPow => {
            let j = j.unwrap_or(b.saturating_sub(1).max(1));
            let t = power_betti(a, b, j, s)?;
            let text = table_text(&t);
            let params = json!({"target": "iab-pow", "a": a, "b": b, "j": j});
            if j + 1 == b && a >= 2 {
                let r = verify_power_betti(a, b, &t)?;
                return Ok(Outcome::new(r.status, params, json!({"table": t.to_json(), "check": r})).with_text(text));
            }
            let reg = t.regularity();
            let predicted = power_regularity_prediction(a, b, j);
            let st = if t.complete && !t.has_unknown() { Status::Verified } else { Status::Inconclusive };
            Ok(Outcome::new(
                st,
                params,
                json!({"table": t.to_json(), "regularity": reg, "predicted_regularity": predicted, "label": "evidence"}),
            )
            .with_text(text))
        }
    }
}

fn exactness(target: ComplexTarget, n: usize, a: usize, b: usize, kmax: Option<i64>, s: &Session) -> bfsyz::Result<Outcome> {
    let (label, complex, expected, k_max, params) = match target {
        ComplexTarget::Koszul => {
            if n == 0 {
                return Err(Error::arg("n must be positive"));
            }
            let k = kmax.unwrap_or(n as i64 + 2);
            let expected = (0..=k).map(|d| (d, usize::from(d == 0))).collect();
            (format!("koszul n={n}"), koszul_complex(n)?, expected, k, json!({"target": "koszul", "n": n}))
        }
        ComplexTarget::Be | ComplexTarget::PhiPower => {
            if matches!(target, ComplexTarget::Be) && b != 2 {
                return Err(Error::arg("the Buchsbaum-Eisenbud complex needs b = 2"));
            }
            let k = kmax.unwrap_or((a * b + b) as i64);
            let (c, _) = phi_resolution(a, b, k)?;
            let gens = bfsyz::fhmaps::power_generators(a, b)?;
            let ideal = GradedIdeal::new(b + 1, gens.gens)?.power(b - 1)?;
            let hf = ideal.hilbert_function(k.max(0) as usize);
            let expected = hf.iter().enumerate().map(|(d, &h)| (d as i64, h)).collect();
            let name = if b == 2 { "buchsbaum-eisenbud" } else { "phi-power" };
            (format!("{name} a={a} b={b}"), c, expected, k, json!({"target": name, "a": a, "b": b}))
        }
    };
    let ex = complex.exactness_check(0, k_max, &s.rank)?;
    let r = ComplexReport::new(&label, &complex, ex, expected);
    let mut text = format!("{label}, degrees 0..={k_max}\n");
    for (p, tw) in r.twists.iter().enumerate() {
        let parts: Vec<String> = tw.iter().map(|(d, c)| format!("S(-{d})^{c}")).collect();
        text += &format!("F{p}: {}\n", parts.join(" + "));
    }
    for h in &r.exactness.homology {
        text += &format!("H at position {} degree {}: {}\n", h.position, h.degree, h.homology);
    }
    Ok(Outcome::new(r.status, json!({"params": params, "kmax": k_max}), r).with_text(text))
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Argument(_) | Error::Parse(_) => EXIT_USAGE,
        Error::Resource { .. } => Status::Inconclusive.exit_code() as u8,
        _ => Status::Mismatch.exit_code() as u8,
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::FhRank { .. } => "fh-rank",
        Command::Gens { .. } => "gens",
        Command::Betti { .. } => "betti",
        Command::Reg { .. } => "reg",
        Command::InitialIdeal { .. } => "initial-ideal",
        Command::MinorsCheck { .. } => "minors-check",
        Command::Phi { .. } => "phi",
        Command::CharCheck { .. } => "char-check",
        Command::HwTriple { .. } => "hw-triple",
        Command::CokerHf { .. } => "coker-hf",
        Command::ConjectureScan { .. } => "conjecture-scan",
        Command::Exactness { .. } => "exactness",
        Command::Repro => "repro",
    }
}

fn unix_now() -> f64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0.0, |d| d.as_secs_f64())
}

fn run(cli: Cli) -> Result<u8, (u8, String)> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global()
            .map_err(|e| (EXIT_USAGE, e.to_string()))?;
    }
    let mode = match cli.mode {
        Mode::Exact => RankMode::Exact,
        Mode::Modular => RankMode::Modular,
        Mode::Auto => RankMode::Auto,
    };
    let mut session = Session::new(mode, cli.seed).with_mem_mb(cli.mem_mb);
    if let Some(dir) = &cli.cache {
        let cache = MatrixCache::open(dir).map_err(|e| (EXIT_USAGE, e.to_string()))?;
        session = session.with_cache(cache);
    }
    let started = unix_now();
    let clock = Instant::now();
    let name = command_name(&cli.command);
    let outcome = dispatch(&cli.command, &session).map_err(|e| (exit_for(&e), e.to_string()))?;
    let report = json!({
        "command": name,
        "params": outcome.params,
        "mode": format!("{:?}", session.mode()).to_lowercase(),
        "seed": session.seed,
        "primes": session.primes(),
        "version": bfsyz::VERSION,
        "status": outcome.status,
        "result": outcome.result,
    });
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Format::Text => {
            let mut t = format!("bfsyz {name} {}\nstatus: {}\n", outcome.params, report["status"].as_str().unwrap_or(""));
            t += &outcome
                .text
                .unwrap_or_else(|| serde_json::to_string_pretty(&outcome.result).expect("serializable") + "\n");
            t
        }
    };
    match &cli.output {
        Some(path) => {
            std::fs::write(path, &body).map_err(|e| (EXIT_USAGE, e.to_string()))?;
            let mut log = path.clone().into_os_string();
            log.push(".log");
            let line = format!(
                "command={name} started={started:.3} elapsed_s={:.3} status={}\n",
                clock.elapsed().as_secs_f64(),
                report["status"].as_str().unwrap_or("")
            );
            std::fs::write(PathBuf::from(log), line).map_err(|e| (EXIT_USAGE, e.to_string()))?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).map_err(|e| (EXIT_USAGE, e.to_string()))?;
        }
    }
    Ok(outcome.status.exit_code() as u8)
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
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
