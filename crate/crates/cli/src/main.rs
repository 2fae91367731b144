use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use relfree::acceptance;
use relfree::graded::{self, BuildOptions, DehnIndex, FreeOracle};
use relfree::homo::{kernel_witness, psi_infinity, surjectivity_witness};
use relfree::lpp::{self, Catalog, LppAssignment};
use relfree::verbal::{self, ParamSet, VerbalWord};
use relfree::vkd::{self, Certificate};
use relfree::{Alphabet, Error, Word};

#[derive(Parser)]
#[command(name = "relfree", version, about = "Words, verbal identities, graded presentations and diagram certificates")]
struct Cli {
    #[command(flatten)]
    cfg: RunConfig,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct RunConfig {
    /// Parameter file with `h = ..`, `d = ..`, `n = ..`
    #[arg(long, global = true)]
    params: Option<PathBuf>,
    #[arg(long, global = true)]
    h: Option<u64>,
    #[arg(long, global = true)]
    d: Option<u64>,
    #[arg(long, global = true)]
    n: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Toy)]
    mode: Mode,
    /// Assignment used in ledger mode; the solved catalog when omitted
    #[arg(long, global = true)]
    ledger: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget_dehn: u64,
    /// Pair length L for the graded construction
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    budget_pairs: u64,
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    conjugator_cap: u64,
    #[arg(long, global = true, default_value_t = acceptance::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Toy,
    Ledger,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Kv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Free-group word operations
    #[command(subcommand)]
    Word(WordCmd),
    /// The verbal words v0..v6, w1, w2
    #[command(subcommand)]
    Verbal(VerbalCmd),
    /// The parameter inequality ledger
    #[command(subcommand)]
    Lpp(LppCmd),
    /// Periods, graded presentations and Dehn's algorithm
    #[command(subcommand)]
    Graded(GradedCmd),
    /// The endomorphism psi and its witnesses
    #[command(subcommand)]
    Endo(EndoCmd),
    /// Diagram certificates
    #[command(subcommand)]
    Vkd(VkdCmd),
    /// Run the acceptance suite
    Report {
        /// Run only this criterion
        #[arg(long)]
        criterion: Option<usize>,
    },
}

#[derive(Subcommand)]
enum WordCmd {
    /// Free reduction
    Reduce { word: String },
    /// Least rotation of the cyclic core
    Cyclic { word: String },
    /// Primitive root and exponent of the cyclic core
    Root { word: String },
    /// Conjugacy in the free group
    Conj { u: String, v: String },
    /// Exponent sums per generator
    Abel { word: String },
}

#[derive(Subcommand)]
enum VerbalCmd {
    /// Build v0..v6, w1 or w2
    Make {
        which: VerbalWord,
        #[arg(long, default_value = "a1")]
        x: String,
        #[arg(long, default_value = "a2")]
        y: String,
    },
    /// Unreduced letter count from lengths of x and y
    Length {
        which: VerbalWord,
        #[arg(long, default_value_t = 1)]
        x_len: u64,
        #[arg(long, default_value_t = 1)]
        y_len: u64,
    },
}

#[derive(Subcommand)]
enum LppCmd {
    /// Solve the catalog by the least parameter principle
    Solve { catalog: Option<PathBuf> },
    /// Check an assignment against the catalog
    Verify {
        catalog: Option<PathBuf>,
        #[arg(long)]
        assign: PathBuf,
    },
    /// Print the catalog
    Catalog { catalog: Option<PathBuf> },
}

#[derive(Subcommand)]
enum GradedCmd {
    /// Periods of length i against the free-group oracle
    Periods {
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 2)]
        alphabet: u32,
    },
    /// Build a presentation up to rank `top`
    Build {
        #[arg(long, default_value_t = 1)]
        top: usize,
        #[arg(long, default_value_t = 2)]
        alphabet: u32,
    },
    /// Dehn's algorithm with its step trace
    Dehn {
        word: String,
        #[arg(long)]
        relators: PathBuf,
    },
    /// Longest piece and the small cancellation ratio
    Pieces {
        #[arg(long)]
        relators: PathBuf,
    },
}

#[derive(Subcommand)]
enum EndoCmd {
    /// Kernel and surjectivity identities
    Check,
    /// Apply psi to a word
    Apply {
        word: String,
        #[arg(long, default_value_t = 2)]
        alphabet: u32,
    },
}

#[derive(Subcommand)]
enum VkdCmd {
    /// Check a certificate file
    Check {
        cert: PathBuf,
        #[arg(long)]
        relators: PathBuf,
    },
    /// Emit a disk certificate from a successful Dehn reduction
    Certify {
        word: String,
        #[arg(long)]
        relators: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    Fail,
    Indeterminate,
}

/// What a command prints: text lines and key=value fields.
struct Out {
    status: Status,
    text: Vec<String>,
    kv: Vec<(String, String)>,
}

impl Out {
    fn new(status: Status) -> Self {
        Out { status, text: Vec::new(), kv: Vec::new() }
    }

    fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.text.push(s.into());
        self
    }

    fn field(&mut self, k: impl Into<String>, v: impl ToString) -> &mut Self {
        self.kv.push((k.into(), v.to_string()));
        self
    }

    /// Same content in both formats.
    fn both(&mut self, k: &str, v: impl ToString) -> &mut Self {
        let v = v.to_string();
        self.line(format!("{k}: {v}"));
        self.field(k, v)
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CmdResult = Result<Out, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn word(s: &str) -> Result<Word, Failure> {
    Word::parse_inferred(s).map_err(|e| Failure::Usage(format!("bad word `{s}`: {e}")))
}

fn catalog(path: &Option<PathBuf>) -> Result<Catalog, Failure> {
    match path {
        Some(p) => Ok(read(p)?.parse()?),
        None => Ok(Catalog::builtin()),
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

impl RunConfig {
    fn param_set(&self) -> Result<ParamSet, Failure> {
        if self.mode == Mode::Ledger {
            let cat = Catalog::builtin();
            let assign: LppAssignment = match &self.ledger {
                Some(p) => read(p)?.parse()?,
                None => lpp::solve(&cat)?,
            };
            let report = lpp::verify(&assign, &cat)?;
            if !report.passed() {
                let failed: Vec<&str> =
                    report.failed_preconditions().into_iter().chain(report.failed_items()).collect();
                return Err(Failure::Domain(Error::InvalidParams(format!(
                    "ledger mode needs an assignment passing verify; failed: {}",
                    failed.join(", ")
                ))));
            }
            return Ok(assign.param_set()?);
        }
        if let Some(p) = &self.params {
            return Ok(read(p)?.parse()?);
        }
        Ok(ParamSet::new(self.h.unwrap_or(20), self.d.unwrap_or(2), self.n.unwrap_or(3))?)
    }

    fn build_options(&self) -> BuildOptions {
        BuildOptions {
            pair_budget: self.budget_pairs as usize,
            dehn_budget: self.budget_dehn as usize,
            conjugator_cap: self.conjugator_cap as usize,
            ..BuildOptions::default()
        }
    }
}

fn run_word(cmd: &WordCmd) -> CmdResult {
    let mut out = Out::new(Status::Ok);
    match cmd {
        WordCmd::Reduce { word: w } => {
            let w = word(w)?;
            out.line(w.to_string()).field("word", &w).field("length", w.len());
        }
        WordCmd::Cyclic { word: w } => {
            let c = word(w)?.canonical_cyclic();
            out.line(c.to_string()).field("cyclic", c);
        }
        WordCmd::Root { word: w } => {
            let core = word(w)?.cyclic_reduce().0;
            let (root, k) = core.primitive_root()?;
            out.line(format!("{root} ^ {k}")).field("root", root).field("exponent", k);
        }
        WordCmd::Conj { u, v } => {
            let (u, v) = (word(u)?, word(v)?);
            let yes = u.conjugate_in_free(&v);
            out.status = if yes { Status::Ok } else { Status::Fail };
            out.line(if yes { "YES" } else { "NO" }).field("conjugate", if yes { "YES" } else { "NO" });
        }
        WordCmd::Abel { word: w } => {
            let sums = word(w)?.abelianization();
            let shown: Vec<String> = sums.iter().map(|s| s.to_string()).collect();
            out.line(shown.join(" "));
            for (i, s) in sums.iter().enumerate() {
                out.field(format!("a{}", i + 1), s);
            }
        }
    }
    Ok(out)
}

fn run_verbal(cmd: &VerbalCmd, cfg: &RunConfig) -> CmdResult {
    let p = cfg.param_set()?;
    let mut out = Out::new(Status::Ok);
    match cmd {
        VerbalCmd::Make { which, x, y } => {
            let (x, y) = (word(x)?, word(y)?);
            let rank = x.alphabet().rank().max(y.alphabet().rank());
            let ab = Alphabet::new(rank)?;
            let w = verbal::make(*which, &x.widen(ab)?, &y.widen(ab)?, &p)?;
            out.line(w.to_string()).field("word", &w).field("length", w.len()).field("runs", w.runs().len());
        }
        VerbalCmd::Length { which, x_len, y_len } => {
            let len = verbal::word_length_symbolic(*which, &(*x_len).into(), &(*y_len).into(), &p);
            out.line(len.to_string()).field("length", len);
        }
    }
    Ok(out)
}

fn run_lpp(cmd: &LppCmd) -> CmdResult {
    match cmd {
        LppCmd::Solve { catalog: c } => {
            let cat = catalog(c)?;
            let a = lpp::solve(&cat)?;
            let mut out = Out::new(Status::Ok);
            for l in a.to_string().lines() {
                out.line(l);
                if let Some((k, v)) = l.split_once(" = ") {
                    out.field(k.trim(), v.trim());
                }
            }
            Ok(out)
        }
        LppCmd::Verify { catalog: c, assign } => {
            let cat = catalog(c)?;
            let a: LppAssignment = read(assign)?.parse()?;
            let report = lpp::verify(&a, &cat)?;
            let mut out = Out::new(if report.passed() { Status::Ok } else { Status::Fail });
            out.text.extend(report.to_string().lines().map(String::from));
            for p in &report.preconditions {
                out.field(format!("precondition.{}", p.name.replace(' ', "_")), verdict(p.pass));
            }
            for i in &report.items {
                out.field(format!("item.{}", i.id), verdict(i.pass));
            }
            let failed: Vec<&str> = report.failed_preconditions().into_iter().chain(report.failed_items()).collect();
            out.field("failed", failed.join(","));
            out.field("status", verdict(report.passed()));
            Ok(out)
        }
        LppCmd::Catalog { catalog: c } => {
            let cat = catalog(c)?;
            let mut out = Out::new(Status::Ok);
            for item in cat.items() {
                out.line(format!("{} | {} | {}", item.id, item.source, item.anchor));
                out.field(format!("item.{}", item.id), &item.source);
            }
            Ok(out)
        }
    }
}

fn run_graded(cmd: &GradedCmd, cfg: &RunConfig) -> CmdResult {
    let mut out = Out::new(Status::Ok);
    match cmd {
        GradedCmd::Periods { rank, alphabet } => {
            let set = graded::periods_rank(Alphabet::new(*alphabet)?, *rank, &FreeOracle);
            for p in &set.periods {
                out.line(p.to_string());
            }
            let shown: Vec<String> = set.periods.iter().map(Word::to_string).collect();
            out.field("periods", shown.join(",")).field("count", set.periods.len());
            if !set.indeterminate.is_empty() {
                out.status = Status::Indeterminate;
                out.field("indeterminate", set.indeterminate.len());
            }
        }
        GradedCmd::Build { top, alphabet } => {
            let p = cfg.param_set()?;
            let b = graded::build(Alphabet::new(*alphabet)?, p, *top, &cfg.build_options())?;
            out.text.extend(b.presentation.to_string().lines().map(String::from));
            for (i, (rank, report)) in b.presentation.ranks.iter().zip(&b.ranks).enumerate() {
                let r = i + 1;
                out.field(format!("rank.{r}.periods"), rank.periods.len());
                out.field(format!("rank.{r}.relators"), rank.relators.len());
                out.field(format!("rank.{r}.discarded_pairs"), report.discarded_pairs);
                let undecided = report.undecided_periods.len() + report.undecided_pairs.len();
                out.field(format!("rank.{r}.undecided"), undecided);
                if undecided > 0 {
                    out.status = Status::Indeterminate;
                }
            }
        }
        GradedCmd::Dehn { word: w, relators } => {
            let rels = graded::parse_relators(&read(relators)?)?;
            let w = align(word(w)?, &rels)?;
            let trace = DehnIndex::new(&rels)?.trace(&w, cfg.budget_dehn as usize)?;
            for s in &trace.steps {
                out.line(format!(
                    "step at {}: relator {}{} rotation {} matched {}",
                    s.position,
                    s.relator,
                    if s.inverted { " inverted" } else { "" },
                    s.rotation,
                    s.matched
                ));
            }
            out.line(trace.output.to_string());
            out.field("steps", trace.steps.len())
                .field("word", &trace.output)
                .field("trivial", trace.output.is_empty());
        }
        GradedCmd::Pieces { relators } => {
            let rels = graded::parse_relators(&read(relators)?)?;
            let s = graded::piece_stats(&rels)?;
            out.both("max_piece", s.max_piece).both("min_length", s.min_len).both("lambda", s.lambda);
        }
    }
    Ok(out)
}

/// Widens `w` or the relators to a common alphabet.
fn align(w: Word, rels: &[Word]) -> Result<Word, Failure> {
    match rels.first() {
        Some(r) if r.alphabet().rank() >= w.alphabet().rank() => Ok(w.widen(r.alphabet())?),
        Some(r) => Err(Failure::Usage(format!(
            "word uses generators beyond the relators' alphabet of rank {}",
            r.alphabet().rank()
        ))),
        None => Ok(w),
    }
}

fn run_endo(cmd: &EndoCmd, cfg: &RunConfig) -> CmdResult {
    let p = cfg.param_set()?;
    let mut out = Out::new(Status::Ok);
    match cmd {
        EndoCmd::Check => {
            let k = kernel_witness(&p)?;
            let s = surjectivity_witness(&p)?;
            out.line(format!("kernel identity psi(U) = w1(a1, a2): {}", verdict(k.check)));
            out.line(format!("surjectivity identity a2 Tail(a1, v1) = w2(a1, a2): {}", verdict(s.check)));
            out.line(format!("|U| = {} < (n+h)h: {}", k.u.len(), verdict(k.length_bound)));
            out.line(format!("U != 1 in the limit group: {}", k.group_claim));
            out.field("kernel", verdict(k.check))
                .field("surjectivity", verdict(s.check))
                .field("length_bound", verdict(k.length_bound))
                .field("u_length", k.u.len())
                .field("zero_exponent_sums", verdict(k.zero_exponent_sums && s.zero_exponent_sums))
                .field("preimage", verdict(s.preimage_check))
                .field("group_claim", k.group_claim);
            if !(k.passed() && s.passed()) {
                out.status = Status::Fail;
            }
        }
        EndoCmd::Apply { word: w, alphabet } => {
            let psi = psi_infinity(*alphabet, &p)?;
            let w = word(w)?.widen(psi.alphabet())?;
            let image = psi.apply(&w)?;
            out.line(image.to_string()).field("image", &image).field("length", image.len());
        }
    }
    Ok(out)
}

fn run_vkd(cmd: &VkdCmd, cfg: &RunConfig) -> CmdResult {
    let mut out = Out::new(Status::Ok);
    match cmd {
        VkdCmd::Check { cert, relators } => {
            let cert: Certificate = read(cert)?.parse()?;
            let rels = graded::parse_relators(&read(relators)?)?;
            let report = vkd::check_certificate(&cert, &rels)?;
            match &report.verdict {
                Ok(()) => {
                    out.line("ACCEPT").field("verdict", "ACCEPT");
                }
                Err(reason) => {
                    out.status = Status::Fail;
                    out.line(format!("REJECT: {reason}")).field("verdict", "REJECT").field("reason", reason);
                }
            }
            for w in &report.warnings {
                out.line(format!("warning: {w}"));
            }
            out.field("warnings", report.warnings.len());
        }
        VkdCmd::Certify { word: w, relators } => {
            let rels = graded::parse_relators(&read(relators)?)?;
            let w = align(word(w)?, &rels)?;
            let trace = DehnIndex::new(&rels)?.trace(&w, cfg.budget_dehn as usize)?;
            if !trace.output.is_empty() {
                out.status = Status::Fail;
                out.line(format!("Dehn's algorithm stops at {}", trace.output)).field("reduced", &trace.output);
                return Ok(out);
            }
            let cert = vkd::certify_dehn_trace(&trace, &rels)?;
            out.text.extend(cert.to_string().lines().map(String::from));
            out.field("faces", cert.faces.len()).field("edges", cert.edges.len());
        }
    }
    Ok(out)
}

fn run_report(criterion: Option<usize>, cfg: &RunConfig) -> CmdResult {
    let acfg = acceptance::Config { seed: cfg.seed, dehn_budget: cfg.budget_dehn as usize };
    let outcomes = match criterion {
        Some(id) => vec![acceptance::run(id, &acfg).ok_or_else(|| Failure::Usage(format!("no criterion {id}")))?],
        None => acceptance::run_all(&acfg),
    };
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let mut out = Out::new(if passed == outcomes.len() { Status::Ok } else { Status::Fail });
    for o in &outcomes {
        out.line(o.to_string());
        out.field(format!("criterion.{}.name", o.id), o.name);
        out.field(format!("criterion.{}.status", o.id), verdict(o.passed));
        out.field(format!("criterion.{}.detail", o.id), &o.detail);
    }
    out.line(format!("{passed}/{} criteria passed", outcomes.len()));
    out.field("seed", cfg.seed).field("passed", passed).field("failed", outcomes.len() - passed);
    Ok(out)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::TooLarge { .. } | Error::BudgetExceeded(_) | Error::OracleBudgetExceeded { .. } => 3,
        Error::Parse(_) | Error::InvalidLetter { .. } | Error::InvalidParams(_) | Error::InvalidIndex(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = &cli.cfg;
    let result = match &cli.cmd {
        Cmd::Word(c) => run_word(c),
        Cmd::Verbal(c) => run_verbal(c, cfg),
        Cmd::Lpp(c) => run_lpp(c),
        Cmd::Graded(c) => run_graded(c, cfg),
        Cmd::Endo(c) => run_endo(c, cfg),
        Cmd::Vkd(c) => run_vkd(c, cfg),
        Cmd::Report { criterion } => run_report(*criterion, cfg),
    };
    match result {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let lines: Vec<String> = match cfg.output {
                Output::Text => out.text,
                Output::Kv => out.kv.iter().map(|(k, v)| format!("{k}={v}")).collect(),
            };
            for l in lines {
                if writeln!(stdout, "{l}").is_err() {
                    break;
                }
            }
            ExitCode::from(match out.status {
                Status::Ok => 0,
                Status::Fail => 1,
                Status::Indeterminate => 3,
            })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("usage: relfree [OPTIONS] <word|verbal|lpp|graded|endo|vkd|report> ...");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            let code = exit_code(&e);
            if code == 3 {
                println!("INDETERMINATE: {e}");
            }
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}
