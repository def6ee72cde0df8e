//! Command-line front end. `run` parses arguments, executes one command and
//! writes its report; the `bianchi` binary is a thin wrapper around it.
//!
//! Exit codes: 0 success, 1 a verified property turned out false, 2 usage,
//! precondition or capacity errors.

use std::io::Write;
use std::num::NonZeroUsize;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::certify::{
    certify_noncongruence, class_number, power_subgroup_status, verify_appendix_a, verify_lemma_6_1, AbelianGroup,
    SubgroupDescriptor,
};
use crate::error::Error;
use crate::ideals::{factor_ideal, parse_ideal, split_type, DEFAULT_FACTOR_BOUND};
use crate::indexcalc::{
    index_formula, verify_filtration, verify_multiplicativity, verify_surjectivity, verify_wohlfahrt_closure,
};
use crate::quadring::make_ring;
use crate::resring::Limits;
use crate::sweep::{run_sweep, Suite, SweepConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "bianchi", version, about = "Finite-quotient computations for PSL(2) over imaginary quadratic integers")]
struct Cli {
    /// Largest explicit matrix group that may be enumerated.
    #[arg(long, global = true, default_value_t = Limits::default().group_elements)]
    cap: usize,
    /// Largest quotient ring O/I that may be built.
    #[arg(long, global = true, default_value_t = Limits::default().ring_elements)]
    ring_cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for sweeps: a positive integer or "auto".
    #[arg(long, global = true, default_value = "1")]
    parallelism: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct DArg {
    /// Squarefree integer defining O_d.
    #[arg(short = 'd', allow_negative_numbers = true)]
    d: i64,
}

#[derive(Args, Debug)]
struct IdealArgs {
    #[command(flatten)]
    d: DArg,
    /// "(g1, g2, ...)" with elements like 1+w, or "hnf:a,b,c".
    #[arg(long)]
    ideal: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// How a rational prime decomposes in O_d.
    Split {
        #[command(flatten)]
        d: DArg,
        #[arg(short = 'p')]
        p: u64,
    },
    /// Class number of O_d (d < 0).
    Classnum {
        #[command(flatten)]
        d: DArg,
    },
    /// Closed-form |SL(2, O/I)| with a brute-force count when feasible.
    Index(IdealArgs),
    /// Prime ideal factorisation.
    Factor(IdealArgs),
    /// Whether S, T_1, T_w generate SL(2, O/I).
    VerifySurjectivity(IdealArgs),
    /// The layer P^m / P^{m+1} of the congruence filtration.
    VerifyFiltration {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(short = 'm', default_value_t = 1)]
        m: u32,
    },
    /// Index multiplicativity over two coprime ideals (give --ideal twice).
    VerifyMultiplicativity {
        #[command(flatten)]
        d: DArg,
        #[arg(long, num_args = 1, required = true)]
        ideal: Vec<String>,
    },
    /// Normal closure of T_1^m, T_w^m in SL(2, O/(mn)) against the mod-m kernel.
    VerifyWohlfahrt {
        #[command(flatten)]
        d: DArg,
        #[arg(short = 'm')]
        m: u64,
        #[arg(short = 'n')]
        n: u64,
    },
    /// PSL(2, O/2) and its square subgroup.
    VerifyLemma61 {
        #[command(flatten)]
        d: DArg,
    },
    /// The layer mod a ramified prime q >= 5 and its conjugation relations.
    VerifyAppendixA {
        #[command(flatten)]
        d: DArg,
        #[arg(short = 'q')]
        q: u64,
    },
    /// Non-congruence certificate for an index-q normal subgroup.
    Certify {
        #[command(flatten)]
        d: DArg,
        #[arg(short = 'q')]
        q: u64,
        /// Index of the subgroup S (omit for S = B_d).
        #[arg(long, requires_all = ["level", "free_rank"])]
        index: Option<u64>,
        /// Level of S.
        #[arg(long, requires = "index")]
        level: Option<u64>,
        /// Free rank of the abelianization of S.
        #[arg(long, requires = "index")]
        free_rank: Option<u32>,
        /// Torsion invariants of the abelianization of S, comma separated.
        #[arg(long, value_delimiter = ',', requires = "index")]
        torsion: Vec<u64>,
    },
    /// Congruence status of B_d^2, B_d' and PE_d^2.
    PowerStatus {
        #[command(flatten)]
        d: DArg,
        /// Known |B_d / B_d^2|, used when nothing else decides.
        #[arg(long)]
        square_index: Option<u64>,
    },
    /// Run a verification suite.
    Sweep {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, allow_negative_numbers = true, requires = "d_max")]
        d_min: Option<i64>,
        #[arg(long, allow_negative_numbers = true, requires = "d_min")]
        d_max: Option<i64>,
        #[arg(long, default_value_t = 36)]
        norm_bound: u64,
    },
}

/// A report ready for output plus whether it verified.
struct Outcome {
    json: serde_json::Value,
    text: String,
    csv: Option<String>,
    ok: bool,
}

fn outcome(report: impl Serialize, text: String, ok: bool) -> Outcome {
    Outcome { json: serde_json::to_value(report).expect("reports serialize"), text, csv: None, ok }
}

fn parallelism(s: &str) -> Result<usize, Error> {
    if s == "auto" {
        return Ok(std::thread::available_parallelism().map(NonZeroUsize::get).unwrap_or(1));
    }
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(Error::parse(s, "parallelism must be a positive integer or \"auto\"")),
    }
}

fn execute(cli: &Cli) -> Result<Outcome, Error> {
    let limits = Limits { ring_elements: cli.ring_cap, group_elements: cli.cap };
    if cli.cap == 0 || cli.ring_cap == 0 {
        return Err(Error::Precondition("caps must be positive".into()));
    }
    let threads = parallelism(&cli.parallelism)?;
    Ok(match &cli.command {
        Command::Split { d, p } => {
            let st = split_type(&make_ring(d.d)?, *p)?;
            let primes: Vec<String> = st.primes().iter().map(|p| p.generators_string()).collect();
            let text = format!("{p} is {} in O_{}: {}", st.name(), d.d, primes.join(", "));
            outcome(st, text, true)
        }
        Command::Classnum { d } => {
            let h = class_number(d.d)?;
            outcome(serde_json::json!({ "d": d.d, "class_number": h }), format!("h({}) = {h}", d.d), true)
        }
        Command::Index(a) => {
            let ring = make_ring(a.d.d)?;
            let r = index_formula(&ring, &parse_ideal(&ring, &a.ideal)?, limits)?;
            let text = format!(
                "|SL(2, O/{})| = {} (oracle: {})",
                r.ideal.generators_string(),
                r.closed_form,
                r.oracle.map_or("not computed".into(), |o| o.to_string())
            );
            let ok = r.oracle.is_none() || r.matches;
            outcome(r, text, ok)
        }
        Command::Factor(a) => {
            let ring = make_ring(a.d.d)?;
            let ideal = parse_ideal(&ring, &a.ideal)?;
            let f = factor_ideal(&ring, &ideal, DEFAULT_FACTOR_BOUND)?;
            let parts: Vec<String> =
                f.factors.iter().map(|p| format!("{}^{}", p.prime.generators_string(), p.exponent)).collect();
            let text = format!("{} = {}", ideal.generators_string(), parts.join(" * "));
            outcome(f, text, true)
        }
        Command::VerifySurjectivity(a) => {
            let ring = make_ring(a.d.d)?;
            let r = verify_surjectivity(&ring, &parse_ideal(&ring, &a.ideal)?, limits)?;
            let text = format!(
                "<S, T_1, T_w> has order {} of |SL| = {} (closed form {}): {}",
                r.closure_order,
                r.sl_order,
                r.closed_form,
                if r.surjective { "surjective" } else { "NOT surjective" }
            );
            let ok = r.surjective;
            outcome(r, text, ok)
        }
        Command::VerifyFiltration { ideal, m } => {
            let ring = make_ring(ideal.d.d)?;
            let r = verify_filtration(&ring, &parse_ideal(&ring, &ideal.ideal)?, *m, limits)?;
            let text = format!(
                "layer m={} of {}: kernel order {} (expected {}), elementary abelian: {}, witnesses generate: {}",
                r.m,
                r.prime.generators_string(),
                r.kernel_order,
                r.expected,
                r.elementary_abelian,
                r.witnesses_generate
            );
            let ok = r.ok;
            outcome(r, text, ok)
        }
        Command::VerifyMultiplicativity { d, ideal } => {
            if ideal.len() != 2 {
                return Err(Error::Precondition("verify-multiplicativity needs exactly two --ideal values".into()));
            }
            let ring = make_ring(d.d)?;
            let a = parse_ideal(&ring, &ideal[0])?;
            let b = parse_ideal(&ring, &ideal[1])?;
            let r = verify_multiplicativity(&ring, &a, &b, limits)?;
            let text = format!(
                "{} * {} = {}: {} * {} vs {}: {}",
                r.a.generators_string(),
                r.b.generators_string(),
                r.product.generators_string(),
                r.index_a,
                r.index_b,
                r.index_product,
                if r.holds { "multiplicative" } else { "NOT multiplicative" }
            );
            let ok = r.holds;
            outcome(r, text, ok)
        }
        Command::VerifyWohlfahrt { d, m, n } => {
            let r = verify_wohlfahrt_closure(&make_ring(d.d)?, *m, *n, limits)?;
            let text = format!(
                "SL(2, O/({})) of order {}: closure {} vs kernel {}: {}",
                m * n,
                r.ambient_order,
                r.closure_order,
                r.kernel_order,
                if r.equal { "equal" } else { "DIFFERENT" }
            );
            let ok = r.equal;
            outcome(r, text, ok)
        }
        Command::VerifyLemma61 { d } => {
            let r = verify_lemma_6_1(d.d, limits)?;
            let mut text = format!(
                "PSL(2, O_{}/2), 2 {}: order {}, [G:G^2] = {}, [G:G'] = {}",
                r.d, r.branch, r.order, r.square_index, r.derived_index
            );
            for c in &r.checks {
                text.push_str(&format!("\n  {} {}", if c.holds { "ok  " } else { "FAIL" }, c.name));
            }
            let ok = r.holds;
            outcome(r, text, ok)
        }
        Command::VerifyAppendixA { d, q } => {
            let r = verify_appendix_a(d.d, *q, limits)?;
            let mut text = format!(
                "q = {} ramified in O_{}, x = {}: layer order {}, |PSL| = {}, [G:G'] = {}",
                r.q, r.d, r.x, r.layer_order, r.psl_order, r.derived_index
            );
            for c in &r.relations {
                text.push_str(&format!("\n  {} {}", if c.holds { "ok  " } else { "FAIL" }, c.name));
            }
            let ok = r.holds;
            outcome(r, text, ok)
        }
        Command::Certify { d, q, index, level, free_rank, torsion } => {
            let desc = match index {
                None => SubgroupDescriptor::Bianchi,
                Some(g) => SubgroupDescriptor::Custom {
                    index: *g,
                    level: level.expect("clap enforces"),
                    abelianization: AbelianGroup::new(free_rank.expect("clap enforces"), torsion),
                },
            };
            let c = certify_noncongruence(d.d, *q, &desc)?;
            let mut text = format!("{} (d = {}, q = {}): {}", c.subgroup.name, c.d, c.q, c.verdict);
            for h in &c.hypotheses {
                text.push_str(&format!("\n  {} {} {}", if h.checked { "ok  " } else { "FAIL" }, h.name, h.witness));
            }
            outcome(c, text, true)
        }
        Command::PowerStatus { d, square_index } => {
            let r = power_subgroup_status(d.d, *square_index)?;
            let lines: Vec<String> = r.items.iter().map(|i| format!("{}: {} [{}]", i.subgroup, i.verdict, i.rule)).collect();
            outcome(&r, lines.join("\n"), true)
        }
        Command::Sweep { suite, d_min, d_max, norm_bound } => {
            let cfg = SweepConfig {
                suite: suite.parse::<Suite>()?,
                d_range: d_min.zip(*d_max),
                norm_bound: *norm_bound,
                limits,
                parallelism: threads,
            };
            let r = run_sweep(&cfg)?;
            let mut csv = String::from("suite,d,item,status\n");
            let mut text = String::new();
            for it in &r.items {
                csv.push_str(&format!("{},{},\"{}\",{}\n", it.suite, it.d, it.item, it.status));
                text.push_str(&format!("{:<16} {:>5}  {:<28} {}\n", it.suite, it.d, it.item, it.status));
            }
            text.push_str(&format!("pass {}  fail {}  skip {}", r.summary.pass, r.summary.fail, r.summary.skip));
            let ok = r.all_passed();
            let mut o = outcome(r, text, ok);
            o.csv = Some(csv);
            o
        }
    })
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => EXIT_FALSE,
        _ => EXIT_USAGE,
    }
}

/// Runs one command line (`args[0]` is the program name).
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                EXIT_OK
            } else {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            };
        }
    };
    let result = execute(&cli);
    let o = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let body = match cli.format {
        Format::Json => serde_json::to_string(&o.json).expect("json"),
        Format::Text => o.text,
        Format::Csv => match o.csv {
            Some(c) => c.trim_end().to_string(),
            None => {
                let _ = writeln!(err, "error: --format csv is only available for sweep");
                return EXIT_USAGE;
            }
        },
    };
    if writeln!(out, "{body}").is_err() {
        return EXIT_USAGE;
    }
    if o.ok {
        EXIT_OK
    } else {
        EXIT_FALSE
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("bianchi").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn split_inert() {
        let (code, out, _) = call(&["split", "-d", "-3", "-p", "2"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["type"], "inert");
    }

    #[test]
    fn index_json() {
        let (code, out, _) = call(&["index", "-d", "-1", "--ideal", "(3)"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"closed_form\":720"), "{out}");
        assert!(out.contains("\"oracle\":720"));
        assert!(out.contains("\"match\":true"));
    }

    #[test]
    fn lemma61_split_branch() {
        let (code, out, _) = call(&["verify-lemma61", "-d", "-7"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"branch\":\"split\""));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["split", "-d", "-4", "-p", "2"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["split", "-d", "-1", "-p", "2", "--bogus"]).0, 2);
        assert_eq!(call(&["index", "-d", "-1", "--ideal", "(3)", "--format", "csv"]).0, 2);
        let (code, _, err) = call(&["verify-multiplicativity", "-d", "-1", "--ideal", "(3)", "--ideal", "(3)"]);
        assert_eq!(code, 2);
        assert!(err.contains("not coprime"), "{err}");
        assert_eq!(call(&["sweep", "--parallelism", "0", "--suite", "certificates"]).0, 2);
    }

    #[test]
    fn capacity_exits_two() {
        let (code, _, err) = call(&["verify-surjectivity", "-d", "-1", "--ideal", "(3)", "--cap", "100"]);
        assert_eq!(code, 2);
        assert!(err.contains("capacity"));
    }

    #[test]
    fn certify_custom_and_text() {
        let (code, out, _) = call(&[
            "certify", "-d", "-2", "-q", "5", "--index", "12", "--level", "2", "--free-rank", "1", "--format", "text",
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with("S (d = -2, q = 5): non-congruence"), "{out}");
    }
}
