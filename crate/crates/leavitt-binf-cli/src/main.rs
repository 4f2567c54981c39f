//! Command-line runner: parse a quiver, run the identity suites, print
//! cohomology tables, or evaluate one cup/brace expression, with
//! deterministic text or JSON reports.
//!
//! Exit codes: 0 all checks passed, 1 some identity failed, 2 usage or
//! parse error, 3 sink quiver or exhausted computation budget.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use leavitt_binf::binfverify::{check_brace_axioms, check_rho_morphism, HatBrace, SgBrace};
use leavitt_binf::hatcomplex::{
    brace_hat, cohomology_dims, cup_hat, hat_equals, rho, rho_inv, HatElement,
};
use leavitt_binf::leavitt::{LeavittElement, LeavittMonomial};
use leavitt_binf::quiver::Path as QPath;
use leavitt_binf::report::SuiteReport;
use leavitt_binf::sgcomplex::{brace_sg, cup_sg, SgElement};
use leavitt_binf::transfer::{check_binf_morphism, check_retract_suite, check_transfer_suite};
use leavitt_binf::{parse_quiver, CalcError, Field, Quiver};

const GRAMMAR: &str = "Expression grammar for `brace`:
  expr   := term { 'u' term }                    cup product, left-associative
  term   := atom [ '{' [ expr { ',' expr } ] '}' ]   brace arguments
  atom   := [ 's^-1' ] word                      's^-1' selects the shifted copy
  word   := 'e(' vertex ')' | letter { '.' letter }
  letter := arrow [ '*' ]                        '*' marks a ghost letter

Ghost letters must precede real letters. Ghost letters are written
first-applied first; real letters are written last-applied first, so
`a*.b.c` is the ghost arrow a against the path that applies c, then b.
An empty brace `x { }` echoes x. The cup product is the standalone
token `u`, so an arrow named `u` cannot appear as a bare word.";

#[derive(Parser)]
#[command(
    name = "leavitt-binf",
    version,
    about = "Exact identity suites for the two-copy and parallel-path complexes of a quiver",
    after_long_help = GRAMMAR
)]
struct Cli {
    /// Quiver description file (vertices, then `name: src -> tgt` arrows).
    #[arg(long, global = true, value_name = "PATH")]
    quiver: Option<PathBuf>,

    /// Coefficient field: Q, or F<p> with p prime.
    #[arg(long, global = true, default_value = "Q", value_parser = parse_field)]
    field: Field,

    /// Letter-length bound for enumerated monomials and tensors.
    #[arg(long = "max-len", global = true, default_value_t = 2, value_name = "N")]
    max_len: usize,

    /// Truncation level for cohomology tables.
    #[arg(long = "max-level", global = true, default_value_t = 4, value_name = "N")]
    max_level: usize,

    /// Cap on p+q for the comparison-identity grid and on brace arities.
    #[arg(long = "pq-cap", global = true, default_value_t = 2, value_name = "N")]
    pq_cap: usize,

    /// Cap on morphism arity.
    #[arg(long = "k-cap", global = true, default_value_t = 2, value_name = "N")]
    k_cap: usize,

    /// Accepted for interface stability; every suite enumerates its
    /// instances deterministically, so no randomness is consumed.
    #[arg(long, global = true, default_value_t = 0, value_name = "N")]
    seed: u64,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the brace axiom suites on both complexes.
    Axioms,
    /// Run the retract, transferred-structure, comparison-map and
    /// comparison-identity suites.
    Morphism,
    /// Print cohomology dimensions of the two-copy complex per degree.
    Cohomology {
        /// Lowest degree row.
        #[arg(long = "min-deg", default_value_t = -3, allow_negative_numbers = true)]
        min_deg: i64,
        /// Highest degree row.
        #[arg(long = "max-deg", default_value_t = 3, allow_negative_numbers = true)]
        max_deg: i64,
    },
    /// Evaluate a cup/brace expression in the two-copy complex and
    /// cross-check it through the comparison map.
    Brace {
        /// Expression; see --help for the grammar.
        expression: String,
    },
}

fn parse_field(s: &str) -> Result<Field, String> {
    if s == "Q" {
        return Ok(Field::Q);
    }
    if let Some(rest) = s.strip_prefix('F') {
        let p: u64 = rest.parse().map_err(|_| format!("invalid field '{}'", s))?;
        return Field::fp(p);
    }
    Err(format!("invalid field '{}': expected Q or F<p>", s))
}

/// Failures that abort a run, split by exit code.
enum Abort {
    /// Bad input: missing/malformed file, expression, or element. Exit 2.
    Usage(String),
    /// Structural limit: sink quiver or exhausted budget. Exit 3.
    Blocked(String),
}

impl From<CalcError> for Abort {
    fn from(e: CalcError) -> Abort {
        match e {
            CalcError::SinkQuiver { .. }
            | CalcError::RaiseCapExceeded { .. }
            | CalcError::BudgetExceeded { .. } => Abort::Blocked(e.to_string()),
            other => Abort::Usage(other.to_string()),
        }
    }
}

#[derive(Serialize, Clone, Copy)]
#[serde(rename_all = "camelCase")]
struct Bounds {
    max_len: usize,
    max_level: usize,
    pq_cap: usize,
    k_cap: usize,
}

#[derive(Serialize)]
struct CexJson {
    inputs: Vec<String>,
    lhs: String,
    rhs: String,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CheckJson {
    check: String,
    quiver: String,
    field: String,
    bounds: Bounds,
    instances: usize,
    failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_counterexample: Option<CexJson>,
}

#[derive(Serialize)]
struct RowJson {
    degree: i64,
    dim: usize,
    level: usize,
    stabilized: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CohomologyJson {
    check: String,
    quiver: String,
    field: String,
    bounds: Bounds,
    rows: Vec<RowJson>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct BraceJson {
    check: String,
    quiver: String,
    field: String,
    bounds: Bounds,
    expression: String,
    value: String,
    parallel_form: String,
    bridge: String,
}

struct Run {
    report: String,
    all_ok: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out_path = cli.out.clone();
    match run(cli) {
        Ok(run) => {
            if let Some(path) = out_path {
                if let Err(e) = std::fs::write(&path, run.report.as_bytes()) {
                    eprintln!("error: cannot write {}: {}", path.display(), e);
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", run.report);
            }
            ExitCode::from(if run.all_ok { 0 } else { 1 })
        }
        Err(Abort::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(Abort::Blocked(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(3)
        }
    }
}

fn load_quiver(cli: &Cli) -> Result<(Quiver, String), Abort> {
    let path = cli
        .quiver
        .as_ref()
        .ok_or_else(|| Abort::Usage("--quiver PATH is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Abort::Usage(format!("cannot read {}: {}", path.display(), e)))?;
    let q = parse_quiver(&text).map_err(|e| Abort::Usage(format!("{}", e)))?;
    Ok((q, path.display().to_string()))
}

fn run(cli: Cli) -> Result<Run, Abort> {
    let _ = cli.seed;
    let (q, quiver_name) = load_quiver(&cli)?;
    let bounds = Bounds {
        max_len: cli.max_len,
        max_level: cli.max_level,
        pq_cap: cli.pq_cap,
        k_cap: cli.k_cap,
    };
    match &cli.command {
        Command::Axioms => {
            let suites = run_axioms(&q, &cli)?;
            Ok(render_suites(&cli, &quiver_name, bounds, suites))
        }
        Command::Morphism => {
            let suites = run_morphism(&q, &cli)?;
            Ok(render_suites(&cli, &quiver_name, bounds, suites))
        }
        Command::Cohomology { min_deg, max_deg } => {
            let mut rows = Vec::new();
            if min_deg <= max_deg {
                rows = cohomology_dims(&q, cli.field, *min_deg, *max_deg, cli.max_level)?;
            }
            let report = match cli.format {
                Format::Json => {
                    let doc = CohomologyJson {
                        check: "cohomology".into(),
                        quiver: quiver_name,
                        field: cli.field.to_string(),
                        bounds,
                        rows: rows
                            .iter()
                            .map(|r| RowJson {
                                degree: r.degree,
                                dim: r.dim,
                                level: r.level,
                                stabilized: r.stabilized,
                            })
                            .collect(),
                    };
                    to_json(&doc)
                }
                Format::Text => {
                    let mut s = String::new();
                    for r in &rows {
                        s.push_str(&format!(
                            "degree {}: dim {} (level {}, {})\n",
                            r.degree,
                            r.dim,
                            r.level,
                            if r.stabilized { "stabilized" } else { "not stabilized" }
                        ));
                    }
                    if rows.is_empty() {
                        s.push_str("empty degree range\n");
                    }
                    s
                }
            };
            Ok(Run { report, all_ok: true })
        }
        Command::Brace { expression } => run_brace(&q, &cli, &quiver_name, bounds, expression),
    }
}

fn run_axioms(q: &Quiver, cli: &Cli) -> Result<Vec<SuiteReport>, Abort> {
    let hat = HatBrace { q, field: cli.field };
    let sg = SgBrace { q, field: cli.field };
    let mut suites = check_brace_axioms(&hat, cli.max_len, cli.pq_cap)?;
    for s in &mut suites {
        s.name = format!("{} (hat)", s.name);
    }
    let mut sg_suites = check_brace_axioms(&sg, cli.max_len, cli.pq_cap)?;
    for s in &mut sg_suites {
        s.name = format!("{} (sg)", s.name);
    }
    suites.extend(sg_suites);
    Ok(suites)
}

fn run_morphism(q: &Quiver, cli: &Cli) -> Result<Vec<SuiteReport>, Abort> {
    let mut suites = check_retract_suite(q, cli.field, cli.max_len)?;
    suites.extend(check_transfer_suite(q, cli.field, cli.max_len, cli.k_cap)?);
    suites.extend(check_rho_morphism(q, cli.field, cli.max_len, cli.k_cap)?);
    // Argument monomials carry one letter fewer than the evaluation
    // bound, keeping the grid and the tensor side at matched depth.
    let arg_letters = cli.max_len.saturating_sub(1).max(1);
    for p in 1..cli.pq_cap.max(1) {
        for qn in 1..cli.pq_cap.max(1) {
            if p + qn > cli.pq_cap {
                continue;
            }
            let mut r = check_binf_morphism(q, cli.field, p, qn, arg_letters, cli.max_len)?;
            r.name = format!("binf-morphism p={} q={}", p, qn);
            suites.push(r);
        }
    }
    Ok(suites)
}

fn render_suites(cli: &Cli, quiver_name: &str, bounds: Bounds, suites: Vec<SuiteReport>) -> Run {
    let all_ok = suites.iter().all(|s| s.passed());
    let report = match cli.format {
        Format::Json => {
            let docs: Vec<CheckJson> = suites
                .iter()
                .map(|s| CheckJson {
                    check: s.name.clone(),
                    quiver: quiver_name.to_string(),
                    field: cli.field.to_string(),
                    bounds,
                    instances: s.instances,
                    failures: s.failures,
                    first_counterexample: s.first_counterexample.as_ref().map(|c| CexJson {
                        inputs: c.inputs.clone(),
                        lhs: c.lhs.clone(),
                        rhs: c.rhs.clone(),
                    }),
                })
                .collect();
            to_json(&docs)
        }
        Format::Text => {
            let mut s = String::new();
            for r in &suites {
                s.push_str(&format!(
                    "{}: instances={} failures={} {}\n",
                    r.name,
                    r.instances,
                    r.failures,
                    if r.passed() { "ok" } else { "FAILED" }
                ));
                if let Some(c) = &r.first_counterexample {
                    for input in &c.inputs {
                        s.push_str(&format!("  input: {}\n", input));
                    }
                    s.push_str(&format!("  lhs: {}\n  rhs: {}\n", c.lhs, c.rhs));
                }
            }
            let failed = suites.iter().filter(|r| !r.passed()).count();
            if failed == 0 {
                s.push_str(&format!("result: ok ({} suites)\n", suites.len()));
            } else {
                s.push_str(&format!("result: FAILED ({} of {} suites)\n", failed, suites.len()));
            }
            s
        }
    };
    Run { report, all_ok }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

// ---- brace expression evaluation ----

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Comma,
    Cup,
    Shift,
    Word(String),
}

fn tokenize(src: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut cur = String::new();
    fn flush(cur: &mut String, out: &mut Vec<Token>) {
        if cur.is_empty() {
            return;
        }
        out.push(match cur.as_str() {
            "u" => Token::Cup,
            "s^-1" => Token::Shift,
            w => Token::Word(w.to_string()),
        });
        cur.clear();
    }
    for ch in src.chars() {
        match ch {
            '{' => {
                flush(&mut cur, &mut out);
                out.push(Token::Open);
            }
            '}' => {
                flush(&mut cur, &mut out);
                out.push(Token::Close);
            }
            ',' => {
                flush(&mut cur, &mut out);
                out.push(Token::Comma);
            }
            c if c.is_whitespace() => flush(&mut cur, &mut out),
            c => cur.push(c),
        }
    }
    flush(&mut cur, &mut out);
    out
}

/// Parsed expression tree, evaluated once per complex.
enum Expr {
    Atom(HatElement),
    Brace(Box<Expr>, Vec<Expr>),
    Cup(Box<Expr>, Box<Expr>),
}

struct ExprParser<'a> {
    toks: Vec<Token>,
    pos: usize,
    q: &'a Quiver,
    field: Field,
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn parse_expr(&mut self) -> Result<Expr, String> {
        let mut acc = self.parse_term()?;
        while self.peek() == Some(&Token::Cup) {
            self.pos += 1;
            let rhs = self.parse_term()?;
            acc = Expr::Cup(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Expr, String> {
        let atom = self.parse_atom()?;
        if self.peek() != Some(&Token::Open) {
            return Ok(atom);
        }
        self.pos += 1;
        let mut args = Vec::new();
        if self.peek() != Some(&Token::Close) {
            args.push(self.parse_expr()?);
            while self.peek() == Some(&Token::Comma) {
                self.pos += 1;
                args.push(self.parse_expr()?);
            }
        }
        if self.peek() != Some(&Token::Close) {
            return Err("expected '}' after brace arguments".into());
        }
        self.pos += 1;
        Ok(Expr::Brace(Box::new(atom), args))
    }

    fn parse_atom(&mut self) -> Result<Expr, String> {
        let shifted = if self.peek() == Some(&Token::Shift) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.toks.get(self.pos).cloned() {
            Some(Token::Word(w)) => {
                self.pos += 1;
                let m = self.word_to_monomial(&w)?;
                let e = LeavittElement::monomial(self.field, m);
                Ok(Expr::Atom(if shifted {
                    HatElement::from_shifted(e)
                } else {
                    HatElement::from_plain(e)
                }))
            }
            other => Err(format!("expected a monomial, found {:?}", other)),
        }
    }

    fn word_to_monomial(&self, w: &str) -> Result<LeavittMonomial, String> {
        if let Some(inner) = w.strip_prefix("e(").and_then(|r| r.strip_suffix(')')) {
            let v = self
                .q
                .vertex_id(inner)
                .ok_or_else(|| format!("unknown vertex '{}'", inner))?;
            return Ok(LeavittMonomial::idempotent(v));
        }
        let mut ghost: Vec<_> = Vec::new();
        let mut real_written: Vec<_> = Vec::new();
        for letter in w.split('.') {
            let (name, starred) = match letter.strip_suffix('*') {
                Some(n) => (n, true),
                None => (letter, false),
            };
            let a = self
                .q
                .arrow_id(name)
                .ok_or_else(|| format!("unknown arrow '{}'", name))?;
            if starred {
                if !real_written.is_empty() {
                    return Err(format!("ghost letters must precede real letters in '{}'", w));
                }
                ghost.push(a);
            } else {
                real_written.push(a);
            }
        }
        real_written.reverse();
        let top_of = |arrows: &[_]| -> Result<_, String> {
            QPath::from_arrows(self.q, arrows.to_vec())
                .ok_or_else(|| format!("letters of '{}' do not compose", w))
        };
        let (gp, rp) = match (ghost.is_empty(), real_written.is_empty()) {
            (true, true) => return Err("a word needs at least one letter".into()),
            (false, true) => {
                let gp = top_of(&ghost)?;
                let t = gp.target(self.q);
                (gp, QPath::trivial(t))
            }
            (true, false) => {
                let rp = top_of(&real_written)?;
                let t = rp.target(self.q);
                (QPath::trivial(t), rp)
            }
            (false, false) => (top_of(&ghost)?, top_of(&real_written)?),
        };
        LeavittMonomial::new(self.q, gp, rp)
            .ok_or_else(|| format!("ghost and real legs of '{}' do not share a target", w))
    }
}

fn eval_hat(q: &Quiver, e: &Expr) -> Result<HatElement, CalcError> {
    match e {
        Expr::Atom(x) => Ok(x.clone()),
        Expr::Cup(a, b) => Ok(cup_hat(q, &eval_hat(q, a)?, &eval_hat(q, b)?)),
        Expr::Brace(host, args) => {
            let h = eval_hat(q, host)?;
            let mut ys = Vec::new();
            for a in args {
                ys.push(eval_hat(q, a)?);
            }
            brace_hat(q, &h, &ys)
        }
    }
}

fn eval_sg(q: &Quiver, e: &Expr) -> Result<SgElement, CalcError> {
    match e {
        Expr::Atom(x) => rho_inv(q, x),
        Expr::Cup(a, b) => cup_sg(q, &eval_sg(q, a)?, &eval_sg(q, b)?),
        Expr::Brace(host, args) => {
            let h = eval_sg(q, host)?;
            let mut ys = Vec::new();
            for a in args {
                ys.push(eval_sg(q, a)?);
            }
            brace_sg(q, &h, &ys)
        }
    }
}

fn run_brace(
    q: &Quiver,
    cli: &Cli,
    quiver_name: &str,
    bounds: Bounds,
    expression: &str,
) -> Result<Run, Abort> {
    let mut parser =
        ExprParser { toks: tokenize(expression), pos: 0, q, field: cli.field };
    let expr = parser.parse_expr().map_err(Abort::Usage)?;
    if parser.pos != parser.toks.len() {
        return Err(Abort::Usage(format!(
            "trailing tokens after expression: {:?}",
            &parser.toks[parser.pos..]
        )));
    }
    let value = eval_hat(q, &expr)?;
    let parallel = eval_sg(q, &expr)?;
    let bridged = rho(q, &parallel);
    let ok = hat_equals(q, &bridged, &value)?;
    let bridge = if ok { "ok" } else { "mismatch" };
    let report = match cli.format {
        Format::Json => to_json(&BraceJson {
            check: "brace".into(),
            quiver: quiver_name.to_string(),
            field: cli.field.to_string(),
            bounds,
            expression: expression.to_string(),
            value: value.render(q),
            parallel_form: parallel.render(q),
            bridge: bridge.into(),
        }),
        Format::Text => format!(
            "expression: {}\nvalue: {}\nparallel form: {}\nrho bridge: {}\n",
            expression,
            value.render(q),
            parallel.render(q),
            bridge
        ),
    };
    Ok(Run { report, all_ok: ok })
}
