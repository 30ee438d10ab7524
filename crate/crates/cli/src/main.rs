//! Command-line front end for the symquery laboratory.
//!
//! Exit status: 0 when the command succeeds and, for `verify`, `classify`
//! and `det`, the checked property holds; 1 when the property fails; 2 on
//! usage or parameter errors.

use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use num_traits::Zero;
use serde_json::{json, Value};

use symquery::algos::{verify_exact, Algorithm, BranchTrace, VerificationReport};
use symquery::classical::d_complexity;
use symquery::identities::{binom_det, binom_det_closed};
use symquery::polydeg::{classify_deg2, degree_with_witness, qe_lower_bound};
use symquery::symfun::from_string;
use symquery::{parse_rational, BitString, Rational, SymPartialFn};

#[derive(Parser)]
#[command(name = "symquery", version)]
#[command(about = "Exact quantum query complexity of symmetric partial Boolean functions")]
struct Cli {
    /// Print one JSON document instead of a table
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact or approximate polynomial degree, with a witness polynomial
    Degree {
        /// Function: a literal like 0***1 or a family like DJ:8,1
        #[arg(long = "fn", value_name = "SPEC")]
        function: String,
        /// Error tolerance as p/q or a decimal, 0 <= eps < 1/2
        #[arg(long, default_value = "0")]
        eps: String,
    },
    /// Run an algorithm on one input and list every measurement branch
    Run {
        #[command(flatten)]
        alg: AlgArgs,
        /// Input bits, e.g. 11000000
        #[arg(long)]
        input: String,
    },
    /// Check an algorithm on every promised input
    Verify {
        #[command(flatten)]
        alg: AlgArgs,
        /// Function to check against (defaults to the algorithm's promise)
        #[arg(long = "fn", value_name = "SPEC")]
        function: Option<String>,
    },
    /// Deterministic classical query complexity D(f)
    Classical {
        #[arg(long = "fn", value_name = "SPEC")]
        function: String,
    },
    /// Match a function against the exact-degree <= 2 families
    Classify {
        #[arg(long = "fn", value_name = "SPEC")]
        function: String,
    },
    /// Compare the binomial determinant with its closed form
    Det {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// List function constructors and algorithms with their parameter ranges
    Families,
}

#[derive(clap::Args)]
struct AlgArgs {
    /// One of xquery, dj, dhw, f1, f3, grover1, dw1, dw2, dw, f2, f4
    #[arg(long)]
    alg: String,
    /// Input length (m for xquery)
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
}

impl AlgArgs {
    fn build(&self) -> Result<Algorithm> {
        Ok(Algorithm::from_id(&self.alg, self.n, self.k, self.l)?)
    }
}

/// What a command prints and whether its property held.
struct Report {
    json: Value,
    text: String,
    holds: bool,
}

fn parse_fn(spec: &str) -> Result<SymPartialFn> {
    from_string(spec).with_context(|| format!("invalid --fn `{spec}`"))
}

/// 12 significant digits.
fn format_probability(p: f64) -> String {
    if p == 0.0 || !p.is_finite() {
        return format!("{p}");
    }
    // Round first so that 0.99999999999999 counts as 1.
    let rounded: f64 = format!("{p:.11e}").parse().unwrap_or(p);
    let decimals = (11 - rounded.abs().log10().floor() as i64).max(0) as usize;
    format!("{p:.decimals$}")
}

fn json_probability(p: f64) -> Value {
    json!(format_probability(p).parse::<f64>().unwrap_or(p))
}

fn table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn branch_json(b: &BranchTrace) -> Value {
    json!({
        "path": b.path.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "probability": json_probability(b.probability),
        "output": b.output.to_string(),
        "queries": b.queries,
    })
}

fn branch_table(rows: &[(Option<&BitString>, &BranchTrace)]) -> String {
    let with_input = rows.iter().any(|(x, _)| x.is_some());
    let cells: Vec<[String; 5]> = rows
        .iter()
        .map(|(x, b)| {
            [
                x.map(|x| x.to_string()).unwrap_or_default(),
                b.path.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" "),
                format_probability(b.probability),
                b.output.to_string(),
                b.queries.to_string(),
            ]
        })
        .collect();
    let header = ["input", "path", "probability", "output", "queries"];
    let skip = usize::from(!with_input);
    let widths: Vec<usize> = (0..5)
        .map(|c| cells.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    let mut line = |cols: [&str; 5]| {
        let parts: Vec<String> = (skip..5).map(|c| format!("{:<w$}", cols[c], w = widths[c])).collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(header);
    for r in &cells {
        line([&r[0], &r[1], &r[2], &r[3], &r[4]]);
    }
    out
}

fn cmd_degree(function: &str, eps: &str) -> Result<Report> {
    let f = parse_fn(function)?;
    let eps: Rational = parse_rational(eps).context("invalid --eps")?;
    let (deg, witness) = degree_with_witness(&f, &eps)?;
    let lb = qe_lower_bound(&f)?;
    let coeffs: Vec<String> = witness.coeffs().iter().map(|c| c.to_string()).collect();
    Ok(Report {
        json: json!({
            "command": "degree",
            "function": f.to_string(),
            "eps": eps.to_string(),
            "degree": deg,
            "witness": coeffs,
            "qe_lower_bound": lb,
        }),
        text: table(&[
            ("function", f.to_string()),
            ("eps", eps.to_string()),
            ("degree", deg.to_string()),
            ("witness", format!("{witness}  (c_0 .. c_{deg})")),
            ("qe_lower_bound", lb.to_string()),
        ]),
        holds: true,
    })
}

fn cmd_run(args: &AlgArgs, input: &str) -> Result<Report> {
    let alg = args.build()?;
    let x: BitString = input.parse().with_context(|| format!("invalid --input `{input}`"))?;
    let run = alg.run(&x)?;
    let promised = alg
        .promise()?
        .map(|f| f.eval(&x).ok().flatten().is_some());
    let mut text = table(&[
        ("algorithm", alg.to_string()),
        ("input", x.to_string()),
        ("branches", run.branches.len().to_string()),
        ("total_probability", format_probability(run.total_probability())),
    ]);
    if promised == Some(false) {
        text.push_str("note: input is outside the promise; outputs are not constrained\n");
    }
    text.push('\n');
    let rows: Vec<_> = run.branches.iter().map(|b| (None, b)).collect();
    text.push_str(&branch_table(&rows));
    Ok(Report {
        json: json!({
            "command": "run",
            "algorithm": alg.to_string(),
            "input": x.to_string(),
            "in_promise": promised,
            "total_probability": json_probability(run.total_probability()),
            "branches": run.branches.iter().map(branch_json).collect::<Vec<_>>(),
        }),
        text,
        holds: true,
    })
}

fn verification_json(rep: &VerificationReport, lower_bound: Option<usize>) -> Value {
    json!({
        "command": "verify",
        "algorithm": rep.algorithm.to_string(),
        "function": rep.function.to_string(),
        "inputs_checked": rep.inputs_checked,
        "all_exact": rep.all_exact,
        "worst_case_queries": rep.worst_case_queries,
        "query_budget": rep.query_budget,
        "within_budget": rep.within_budget(),
        "qe_lower_bound": lower_bound,
        "max_probability_deviation": rep.max_probability_deviation,
        "failure_count": rep.failure_count,
        "failures": rep.failures.iter().map(|f| {
            let mut v = branch_json(&f.branch);
            v["input"] = json!(f.input.to_string());
            v
        }).collect::<Vec<_>>(),
    })
}

fn cmd_verify(args: &AlgArgs, function: Option<&str>) -> Result<Report> {
    let alg = args.build()?;
    let f = match function {
        Some(spec) => parse_fn(spec)?,
        None => alg.default_domain()?,
    };
    let rep = verify_exact(&alg, &f)?;
    let lower_bound = if alg.outputs_bits() {
        Some(qe_lower_bound(&f)?)
    } else {
        None
    };
    let mut text = table(&[
        ("algorithm", alg.to_string()),
        ("function", f.to_string()),
        ("inputs_checked", rep.inputs_checked.to_string()),
        ("all_exact", rep.all_exact.to_string()),
        ("worst_case_queries", rep.worst_case_queries.to_string()),
        ("query_budget", rep.query_budget.to_string()),
        (
            "qe_lower_bound",
            lower_bound.map_or("n/a".to_string(), |b| b.to_string()),
        ),
        ("max_probability_deviation", format!("{:e}", rep.max_probability_deviation)),
        ("failure_count", rep.failure_count.to_string()),
    ]);
    if !rep.failures.is_empty() {
        text.push_str("\nfailures\n");
        let rows: Vec<_> = rep.failures.iter().map(|f| (Some(&f.input), &f.branch)).collect();
        text.push_str(&branch_table(&rows));
    }
    Ok(Report {
        json: verification_json(&rep, lower_bound),
        text,
        holds: rep.holds(),
    })
}

fn cmd_classical(function: &str) -> Result<Report> {
    let f = parse_fn(function)?;
    let d = d_complexity(&f)?;
    Ok(Report {
        json: json!({ "command": "classical", "function": f.to_string(), "d_complexity": d }),
        text: table(&[("function", f.to_string()), ("d_complexity", d.to_string())]),
        holds: true,
    })
}

fn cmd_classify(function: &str) -> Result<Report> {
    let f = parse_fn(function)?;
    let class = classify_deg2(&f)?;
    let (family, transform) = match class {
        Some(c) => (json!(c.family.to_string()), json!(c.transform.name())),
        None => (Value::Null, Value::Null),
    };
    let shown = class.map_or("none".to_string(), |c| format!("{} via {}", c.family, c.transform));
    Ok(Report {
        json: json!({
            "command": "classify",
            "function": f.to_string(),
            "family": family,
            "transform": transform,
        }),
        text: table(&[("function", f.to_string()), ("family", shown)]),
        holds: class.is_some(),
    })
}

fn cmd_det(n: usize, k: usize) -> Result<Report> {
    let lhs = binom_det(n, k)?;
    let rhs = binom_det_closed(n, k)?;
    let matches = lhs == rhs;
    Ok(Report {
        json: json!({
            "command": "det",
            "n": n,
            "k": k,
            "determinant": lhs.to_string(),
            "closed_form": rhs.to_string(),
            "match": matches,
            "nonzero": !lhs.is_zero(),
        }),
        text: table(&[
            ("n", n.to_string()),
            ("k", k.to_string()),
            ("determinant", lhs.to_string()),
            ("closed_form", rhs.to_string()),
            ("match", matches.to_string()),
        ]),
        holds: matches,
    })
}

const FAMILIES: &[(&str, &str)] = &[
    ("literal", "[01*]{2,}: the value vector b_0 .. b_n"),
    ("DJ:n,k", "n even, 0 <= k < n/2: 1 at n/2, 0 at |x| <= k or |x| >= n-k"),
    ("F1:n,k", "0 < k <= n: 0 at 0, 1 at k"),
    ("F2:n,k", "0 < k < n: 0 at 0, 1 at k and k+1"),
    ("F3:n,l", "0 < l < n: 0 at 0 and n, 1 at l"),
    ("F4:n", "n > 1: 0 at 0 and n, 1 at floor(n/2) and ceil(n/2)"),
    ("DW:n,k,l", "0 <= k < l <= n: 0 at k, 1 at l"),
    ("EXACT:n,k", "0 <= k <= n: 1 iff |x| = k"),
    ("THRESHOLD:n,k", "0 <= k <= n: 1 iff |x| >= k"),
    ("OR:n", "1 iff |x| >= 1"),
    ("AND:n", "1 iff |x| = n"),
    ("PARITY:n", "1 iff |x| is odd"),
    ("MAJ:n", "1 iff |x| > n/2"),
];

const ALGORITHMS: &[(&str, &str)] = &[
    ("xquery --n m", "m >= 1, 1 query: (0,0) only if |x| != m/2, else a pair with x_i != x_j"),
    ("dj --n --k", "n even, k < n/2, k+1 queries: DJ:n,k"),
    ("dhw --n --k", "ceil(n/2) <= k <= n, 1 query: F1:n,k"),
    ("f1 --n", "n odd >= 3, 2 queries: F1:n,floor(n/2)"),
    ("f3 --n", "n odd >= 3, 2 queries: F3:n,ceil(n/2)"),
    ("grover1 --n", "n >= 1, 1 query: an index i with x_i = 1 when |x| = n/4"),
    ("dw1 --n", "4 | n, 2 queries: DW:n,n/4,3n/4"),
    ("dw2 --n", "4 | n, 2 queries: DW:n,0,n/4"),
    ("dw --n --k --l", "2 queries via padding: 0 < k < n/3, l >= max((2n+k)/3, 3k), l-k even; or k = 0, n/4 <= l < floor(n/2)"),
    ("f2 --n --k", "n/4 <= k < n, <= 4 queries: F2:n,k"),
    ("f4 --n", "n odd >= 5, <= 5 queries: F4:n"),
];

fn cmd_families() -> Report {
    let entry = |(name, desc): &(&str, &str)| json!({ "name": name, "description": desc });
    let mut text = String::from("functions (--fn)\n");
    text.push_str(&table(
        &FAMILIES.iter().map(|(n, d)| (*n, d.to_string())).collect::<Vec<_>>(),
    ));
    text.push_str("\nalgorithms (--alg)\n");
    text.push_str(&table(
        &ALGORITHMS.iter().map(|(n, d)| (*n, d.to_string())).collect::<Vec<_>>(),
    ));
    Report {
        json: json!({
            "command": "families",
            "functions": FAMILIES.iter().map(entry).collect::<Vec<_>>(),
            "algorithms": ALGORITHMS.iter().map(entry).collect::<Vec<_>>(),
        }),
        text,
        holds: true,
    }
}

fn execute(command: &Command) -> Result<Report> {
    match command {
        Command::Degree { function, eps } => cmd_degree(function, eps),
        Command::Run { alg, input } => cmd_run(alg, input),
        Command::Verify { alg, function } => cmd_verify(alg, function.as_deref()),
        Command::Classical { function } => cmd_classical(function),
        Command::Classify { function } => cmd_classify(function),
        Command::Det { n, k } => cmd_det(*n, *k),
        Command::Families => Ok(cmd_families()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable"));
            } else {
                print!("{}", report.text);
            }
            if report.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
