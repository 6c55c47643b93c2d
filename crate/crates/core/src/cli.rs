//! The `domkit` command line.
//!
//! Exit status: 0 on success, 1 on a mathematical negative (identity fails,
//! certificate invalid, element not a member), 2 on usage or input errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::certify::{build_first_nontrivial, verify_lemma31_scan, InstanceFamily, MetabelianCertifier};
use crate::dominion::{closure_checks, dominion_report, find_witness, FamilySpec, TestFamily, DEFAULT_MAX_ORDER};
use crate::error::{Error, Result};
use crate::fingroup::{check_identity, read_cayley, write_cayley, ElementSet, FiniteGroup, HomEnumerator, HomStrategy};
use crate::nil2::{collect, realize_finite, Nil2Element, Nil2Params};
use crate::word::{basic_commutator_identities, random_word, GeneratorId, Word};

#[derive(Debug, Parser)]
#[command(name = "domkit", version, about = "Commutator calculus and dominions in finite groups")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; 1 forces sequential execution.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Keyvalue,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Free-group words.
    #[command(subcommand)]
    Word(WordCmd),
    /// Class-two nilpotent groups K(a0,b0,k0).
    #[command(subcommand)]
    Nil2(Nil2Cmd),
    /// Finite groups given by Cayley tables.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Dominions relative to a family of targets.
    #[command(subcommand)]
    Dominion(DominionCmd),
    /// Replayable membership certificates.
    #[command(subcommand)]
    Certify(CertifyCmd),
}

#[derive(Debug, Subcommand)]
pub enum WordCmd {
    /// Print the freely reduced form.
    Reduce { word: String },
    /// Decide equality in the free group.
    Equal { lhs: String, rhs: String },
    /// Exhaustively check `lhs = rhs` in a finite group.
    CheckIdentity {
        lhs: String,
        rhs: String,
        #[arg(long)]
        group: PathBuf,
    },
    /// Check the basic commutator identities on random substitutions.
    Identities {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Nil2Op {
    Mul,
    Inv,
    Pow,
    Comm,
}

#[derive(Debug, Args)]
pub struct ParamsArg {
    /// Moduli `a0,b0,k0`.
    #[arg(long)]
    pub params: String,
}

#[derive(Debug, Subcommand)]
pub enum Nil2Cmd {
    /// Normal form of a word in x, y.
    Collect {
        word: String,
        #[command(flatten)]
        params: ParamsArg,
    },
    /// Group operation on collected words; `pow` takes an integer second
    /// argument.
    Op {
        #[arg(value_enum)]
        op: Nil2Op,
        args: Vec<String>,
        #[command(flatten)]
        params: ParamsArg,
    },
    /// Order of an element (0 when infinite).
    Order {
        word: String,
        #[command(flatten)]
        params: ParamsArg,
    },
    /// Membership in `<x^p, y^p>`.
    Member {
        word: String,
        #[arg(long)]
        prime: u64,
        #[command(flatten)]
        params: ParamsArg,
    },
    /// Write the Cayley table of a finite K-group.
    Realize {
        #[command(flatten)]
        params: ParamsArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Presentation,
    Table,
}

impl From<StrategyArg> for HomStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Auto => HomStrategy::Auto,
            StrategyArg::Presentation => HomStrategy::Presentation,
            StrategyArg::Table => HomStrategy::Table,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum GroupCmd {
    /// Order, center, derived length and related invariants.
    Info { group: PathBuf },
    /// Check the group axioms and any attached presentation.
    Validate { group: PathBuf },
    /// The derived series down to its stable term.
    DerivedSeries { group: PathBuf },
    /// Enumerate homomorphisms into a target group.
    Homs {
        group: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
    },
    /// Quotient by the normal closure of the given elements.
    Quotient {
        group: PathBuf,
        /// Comma-separated element indices or names.
        #[arg(long)]
        normal_gens: String,
    },
}

#[derive(Debug, Args)]
pub struct DominionArgs {
    #[arg(long)]
    pub group: PathBuf,
    /// Comma-separated generators of `H` (indices or names).
    #[arg(long)]
    pub subgroup: String,
    #[command(flatten)]
    pub family: FamilyArgs,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Family file; defaults to the group and all of its quotients.
    #[arg(long)]
    pub family: Option<PathBuf>,
    /// Order cap for quotient closure.
    #[arg(long)]
    pub max_order: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum DominionCmd {
    /// Per-element classification of the dominion over-approximation.
    Approx {
        #[command(flatten)]
        args: DominionArgs,
    },
    /// First agreeing pair separating an element.
    Witness {
        #[command(flatten)]
        args: DominionArgs,
        #[arg(long)]
        element: String,
    },
    /// Closure-operator checks over every subgroup.
    Closure {
        #[arg(long)]
        group: PathBuf,
        #[command(flatten)]
        family: FamilyArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum CertifyCmd {
    /// Nontrivial dominion instance in K(a0,b0,k0) at a prime p.
    Nil2 {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long)]
        prime: u64,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// The commutator-chain certificate for `[x,y,z]`.
    Metabelian {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
        /// Generators of `H`; defaults to `x, [x,y], [x,z]`.
        #[arg(long)]
        subgroup: Option<String>,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Exhaustive scan of the three-term exchange property.
    Lemma31 {
        #[arg(long)]
        group: PathBuf,
    },
}

/// Report lines in both formats plus the exit status.
struct Report {
    negative: bool,
    text: String,
    kv: Vec<(String, String)>,
}

impl Report {
    fn new() -> Self {
        Report {
            negative: false,
            text: String::new(),
            kv: Vec::new(),
        }
    }

    fn line(&mut self, label: &str, key: &str, value: impl ToString) {
        let v = value.to_string();
        writeln!(self.text, "{label}: {v}").unwrap();
        self.kv.push((key.to_string(), v));
    }

    fn raw(text: String, kv: String, negative: bool) -> Self {
        Report {
            negative,
            text,
            kv: kv
                .lines()
                .filter_map(|l| l.split_once('='))
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Keyvalue => self.kv.iter().map(|(k, v)| format!("{k}={v}\n")).collect(),
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                RunOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                RunOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> RunOutput {
    let outcome = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| execute(&cli.command)),
            Err(e) => Err(Error::Precondition(format!("thread pool: {e}"))),
        },
        None => execute(&cli.command),
    };
    let report = match outcome {
        Ok(r) => r,
        Err(e) => {
            let code = match e {
                Error::Disagreement(_) => 1,
                _ => 2,
            };
            return RunOutput {
                code,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            };
        }
    };
    let body = report.render(cli.format);
    let code = if report.negative { 1 } else { 0 };
    match &cli.out {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => RunOutput {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => RunOutput {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {}: {e}\n", path.display()),
            },
        },
        None => RunOutput {
            code,
            stdout: body,
            stderr: String::new(),
        },
    }
}

fn execute(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Word(c) => word_cmd(c),
        Command::Nil2(c) => nil2_cmd(c),
        Command::Group(c) => group_cmd(c),
        Command::Dominion(c) => dominion_cmd(c),
        Command::Certify(c) => certify_cmd(c),
    }
}

fn parse_word(text: &str) -> Result<Word> {
    Ok(Word::parse(text)?)
}

fn word_cmd(cmd: &WordCmd) -> Result<Report> {
    let mut r = Report::new();
    match cmd {
        WordCmd::Reduce { word } => {
            let w = parse_word(word)?;
            writeln!(r.text, "{w}").unwrap();
            r.kv.push(("word".into(), w.to_string()));
            r.kv.push(("length".into(), w.length().to_string()));
        }
        WordCmd::Equal { lhs, rhs } => {
            let (u, v) = (parse_word(lhs)?, parse_word(rhs)?);
            let eq = u == v;
            r.line("lhs", "lhs", &u);
            r.line("rhs", "rhs", &v);
            r.line("equal", "equal", eq);
            r.negative = !eq;
        }
        WordCmd::CheckIdentity { lhs, rhs, group } => {
            let g = read_cayley(group)?;
            let (u, v) = (parse_word(lhs)?, parse_word(rhs)?);
            let rep = check_identity(&g, &u, &v)?;
            let vars: Vec<String> = rep.variables.iter().map(|x| x.to_string()).collect();
            r.line("identity", "identity", format!("{u} = {v}"));
            r.line("variables", "variables", vars.join(","));
            r.line("assignments checked", "assignments_checked", rep.assignments_checked);
            r.line("holds", "holds", rep.holds);
            if let Some(ce) = &rep.counterexample {
                let parts: Vec<String> = vars
                    .iter()
                    .zip(ce)
                    .map(|(x, &a)| format!("{x}={}", g.name(a)))
                    .collect();
                r.line("counterexample", "counterexample", parts.join(" "));
            }
            r.negative = !rep.holds;
        }
        WordCmd::Identities { seed, count } => {
            let names = ["x", "y", "z", "w"].map(Word::gen);
            let mut failures = 0usize;
            let mut tally: BTreeMap<&'static str, usize> = BTreeMap::new();
            for (label, l, rr) in basic_commutator_identities(&names[0], &names[1], &names[2], &names[3]) {
                if l != rr {
                    failures += 1;
                }
                *tally.entry(label).or_default() += 1;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let vars: Vec<GeneratorId> = ["a", "b", "c"].iter().map(|n| GeneratorId::new(*n).expect("valid")).collect();
            for _ in 0..*count {
                let ws: Vec<Word> = (0..4).map(|_| random_word(&mut rng, &vars, 4, 3)).collect();
                for (label, l, rr) in basic_commutator_identities(&ws[0], &ws[1], &ws[2], &ws[3]) {
                    if l != rr {
                        failures += 1;
                    }
                    *tally.entry(label).or_default() += 1;
                }
            }
            r.line("seed", "seed", seed);
            r.line("substitutions", "substitutions", count);
            for (label, n) in &tally {
                let key = label.split(':').next().unwrap_or(label);
                r.line(label, &format!("checked.{key}"), n);
            }
            r.line("failures", "failures", failures);
            r.negative = failures > 0;
        }
    }
    Ok(r)
}

fn params_of(p: &ParamsArg) -> Result<Nil2Params> {
    Ok(Nil2Params::parse(&p.params)?)
}

fn nil2_cmd(cmd: &Nil2Cmd) -> Result<Report> {
    let mut r = Report::new();
    match cmd {
        Nil2Cmd::Collect { word, params } => {
            let p = params_of(params)?;
            let e = collect(&parse_word(word)?, &p)?;
            r.line("normal form", "normal_form", &e);
        }
        Nil2Cmd::Op { op, args, params } => {
            let p = params_of(params)?;
            let arity = match op {
                Nil2Op::Inv => 1,
                _ => 2,
            };
            if args.len() != arity {
                return Err(Error::Arity {
                    op: match op {
                        Nil2Op::Mul => "mul",
                        Nil2Op::Inv => "inv",
                        Nil2Op::Pow => "pow",
                        Nil2Op::Comm => "comm",
                    },
                    expected: arity,
                    got: args.len(),
                });
            }
            let a = collect(&parse_word(&args[0])?, &p)?;
            let out: Nil2Element = match op {
                Nil2Op::Mul => a.mul(&collect(&parse_word(&args[1])?, &p)?)?,
                Nil2Op::Inv => a.inv(),
                Nil2Op::Comm => a.commutator(&collect(&parse_word(&args[1])?, &p)?)?,
                Nil2Op::Pow => {
                    let n: i64 = args[1]
                        .trim()
                        .parse()
                        .map_err(|_| Error::Precondition(format!("expected an integer exponent, found {:?}", args[1])))?;
                    a.pow(n)
                }
            };
            r.line("result", "result", &out);
        }
        Nil2Cmd::Order { word, params } => {
            let p = params_of(params)?;
            let e = collect(&parse_word(word)?, &p)?;
            r.line("element", "element", &e);
            let o = e.order();
            r.line("order", "order", if o == 0 { "infinite".to_string() } else { o.to_string() });
        }
        Nil2Cmd::Member { word, prime, params } => {
            let p = params_of(params)?;
            let e = collect(&parse_word(word)?, &p)?;
            let m = e.member_subgroup_p(*prime)?;
            r.line("element", "element", &e);
            r.line("subgroup", "subgroup", format!("<x^{prime}, y^{prime}>"));
            r.line("member", "member", m);
            r.negative = !m;
        }
        Nil2Cmd::Realize { params } => {
            let p = params_of(params)?;
            let g = realize_finite(&p)?;
            let table = write_cayley(&g);
            r.text = table.clone();
            r.kv.push(("order".into(), g.order().to_string()));
            r.kv.push(("params".into(), p.to_string()));
            r.kv.push(("table_lines".into(), table.lines().count().to_string()));
        }
    }
    Ok(r)
}

/// Element by index or by name.
fn resolve(g: &FiniteGroup, token: &str) -> Result<usize> {
    let t = token.trim();
    if let Some(a) = g.find_element(t) {
        return Ok(a);
    }
    match t.parse::<usize>() {
        Ok(a) if a < g.order() => Ok(a),
        Ok(a) => Err(Error::ElementOutOfRange(a)),
        Err(_) => Err(Error::Precondition(format!("no element named {t:?}"))),
    }
}

/// Splits on commas outside parentheses so names like `(1,0,2)` survive.
fn resolve_list(g: &FiniteGroup, list: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in list.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            out.push(resolve(g, &cur)?);
            cur.clear();
        } else {
            cur.push(c);
        }
    }
    if !cur.trim().is_empty() {
        out.push(resolve(g, &cur)?);
    }
    Ok(out)
}

fn names(g: &FiniteGroup, s: &ElementSet) -> String {
    let v: Vec<String> = s.iter().map(|a| g.name(a)).collect();
    format!("{{{}}}", v.join(", "))
}

fn group_cmd(cmd: &GroupCmd) -> Result<Report> {
    let mut r = Report::new();
    match cmd {
        GroupCmd::Info { group } => {
            let g = read_cayley(group)?;
            let ds = g.derived_series();
            r.line("order", "order", g.order());
            r.line("abelian", "abelian", g.is_abelian());
            r.line("center order", "center_order", g.center().len());
            r.line("derived subgroup order", "derived_order", ds.term(1).len());
            r.line(
                "solvable length",
                "solvable_length",
                ds.solvable_length.map_or("unsolvable".to_string(), |l| l.to_string()),
            );
            let exponent = (0..g.order()).map(|a| g.element_order(a)).fold(1usize, num_integer::lcm);
            r.line("exponent", "exponent", exponent);
            r.line("normal subgroups", "normal_subgroups", g.normal_subgroups().len());
            if let Some(gens) = g.generators() {
                let v: Vec<String> = gens.iter().map(|&a| g.name(a)).collect();
                r.line("generators", "generators", v.join(" "));
            }
            r.line("presentation", "presentation", g.presentation().is_some());
        }
        GroupCmd::Validate { group } => match read_cayley(group) {
            Ok(g) => {
                r.line("valid", "valid", true);
                r.line("order", "order", g.order());
            }
            Err(e @ (Error::Io { .. } | Error::File { .. } | Error::Parse(_))) => return Err(e),
            Err(e) => {
                r.line("valid", "valid", false);
                r.line("reason", "reason", e);
                r.negative = true;
            }
        },
        GroupCmd::DerivedSeries { group } => {
            let g = read_cayley(group)?;
            let ds = g.derived_series();
            for (k, t) in ds.terms.iter().enumerate() {
                r.line(&format!("term {k} order"), &format!("term.{k}.order"), t.len());
            }
            r.line(
                "solvable length",
                "solvable_length",
                ds.solvable_length.map_or("unsolvable".to_string(), |l| l.to_string()),
            );
        }
        GroupCmd::Homs {
            group,
            target,
            strategy,
        } => {
            let g = read_cayley(group)?;
            let t = read_cayley(target)?;
            let e = HomEnumerator::new(&g, &t, (*strategy).into())?;
            let gens: Vec<usize> = e.generators().to_vec();
            let gn: Vec<String> = gens.iter().map(|&a| g.name(a)).collect();
            r.line("generators", "generators", gn.join(" "));
            r.line("method", "method", if e.uses_presentation() { "presentation" } else { "table" });
            let mut rows = Vec::new();
            e.for_each(|images| {
                let v: Vec<String> = gens.iter().map(|&a| t.name(images[a])).collect();
                rows.push(v.join(" "));
                std::ops::ControlFlow::Continue(())
            });
            r.line("count", "count", rows.len());
            for (i, row) in rows.iter().enumerate() {
                r.line(&format!("hom {i}"), &format!("hom.{i}"), row);
            }
        }
        GroupCmd::Quotient { group, normal_gens } => {
            let g = read_cayley(group)?;
            let seeds = resolve_list(&g, normal_gens)?;
            let n = g.normal_closure(&seeds);
            let (q, _) = g.quotient(&n)?;
            let table = write_cayley(&q);
            writeln!(r.text, "# quotient by a normal subgroup of order {}", n.len()).unwrap();
            r.text.push_str(&table);
            r.kv.push(("kernel_order".into(), n.len().to_string()));
            r.kv.push(("order".into(), q.order().to_string()));
        }
    }
    Ok(r)
}

fn family_for(args: &FamilyArgs, g: &Arc<FiniteGroup>) -> Result<TestFamily> {
    let mut spec = match &args.family {
        Some(path) => FamilySpec::read(path)?,
        None => FamilySpec::quotient_closed_self(DEFAULT_MAX_ORDER),
    };
    if let Some(m) = args.max_order {
        spec.max_order = m;
    }
    spec.build(Some(g))
}

fn load(path: &Path) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(read_cayley(path)?))
}

fn dominion_cmd(cmd: &DominionCmd) -> Result<Report> {
    match cmd {
        DominionCmd::Approx { args } => {
            let g = load(&args.group)?;
            let fam = family_for(&args.family, &g)?;
            let gens = resolve_list(&g, &args.subgroup)?;
            let h = g.generated_subgroup(&gens);
            let rep = dominion_report(&g, &h, &fam, &[])?;
            Ok(Report::raw(rep.render_text(), rep.render_keyvalue(), false))
        }
        DominionCmd::Witness { args, element } => {
            let g = load(&args.group)?;
            let fam = family_for(&args.family, &g)?;
            let gens = resolve_list(&g, &args.subgroup)?;
            let h = g.generated_subgroup(&gens);
            let a = resolve(&g, element)?;
            let mut r = Report::new();
            r.line("relative to family", "relative_to", fam.describe());
            r.line("element", "element", g.name(a));
            match find_witness(&g, &h, &fam, a)? {
                Some(w) => {
                    let t = &fam.targets()[w.target];
                    r.line("witness", "witness", true);
                    r.line("target", "target", w.target);
                    r.line("target order", "target_order", t.order());
                    r.line("f index", "f_index", w.f_index);
                    r.line("g index", "g_index", w.g_index);
                    r.line("f(element)", "f_image", t.name(w.f[a]));
                    r.line("g(element)", "g_image", t.name(w.g[a]));
                    let fg: Vec<String> = gens.iter().map(|&s| t.name(w.f[s])).collect();
                    r.line("images of subgroup generators", "subgroup_images", fg.join(" "));
                }
                None => {
                    r.line("witness", "witness", false);
                    r.negative = true;
                }
            }
            Ok(r)
        }
        DominionCmd::Closure { group, family } => {
            let g = load(group)?;
            let fam = family_for(family, &g)?;
            let samples = g.all_subgroups();
            let rep = closure_checks(&g, &fam, &samples)?;
            let mut r = Report::new();
            r.line("relative to family", "relative_to", fam.describe());
            r.line("samples", "samples", samples.len());
            r.line("monotone pairs checked", "monotone_pairs", rep.monotone_pairs_checked);
            for (i, (s, d)) in rep.samples.iter().zip(&rep.dominions).enumerate() {
                writeln!(r.text, "sample {i}: {} -> {}", names(&g, s), names(&g, d)).unwrap();
                r.kv.push((format!("sample.{i}"), format!("{}->{}", s.len(), d.len())));
            }
            for v in &rep.violations {
                r.line("violation", "violation", format!("{v:?}"));
            }
            r.line("holds", "holds", rep.holds());
            r.negative = !rep.holds();
            Ok(r)
        }
    }
}

fn certify_cmd(cmd: &CertifyCmd) -> Result<Report> {
    match cmd {
        CertifyCmd::Nil2 { params, prime, family } => {
            let p = params_of(params)?;
            let custom = |g: &Arc<FiniteGroup>| family_for(family, g);
            let fam = if family.family.is_none() {
                InstanceFamily::QuotientClosed(family.max_order.unwrap_or(DEFAULT_MAX_ORDER))
            } else {
                InstanceFamily::Custom(&custom)
            };
            let rep = build_first_nontrivial(&p, *prime, fam)?;
            Ok(Report::raw(rep.render_text(), rep.render_keyvalue(), !rep.nontrivial()))
        }
        CertifyCmd::Metabelian {
            group,
            d,
            x,
            y,
            z,
            subgroup,
            family,
        } => {
            let g = load(group)?;
            let fam = family_for(family, &g)?;
            let (x, y, z) = (resolve(&g, x)?, resolve(&g, y)?, resolve(&g, z)?);
            let h = match subgroup {
                Some(list) => g.generated_subgroup(&resolve_list(&g, list)?),
                None => g.generated_subgroup(&[x, g.commutator(x, y), g.commutator(x, z)]),
            };
            let cert = MetabelianCertifier::new(&g, &fam, *d)?.certify(&h, x, y, z)?;
            Ok(Report::raw(cert.render_text(), cert.render_keyvalue(), !cert.is_valid()))
        }
        CertifyCmd::Lemma31 { group } => {
            let g = read_cayley(group)?;
            let rep = verify_lemma31_scan(&g);
            Ok(Report::raw(rep.render_text(), rep.render_keyvalue(), rep.violations > 0))
        }
    }
}
