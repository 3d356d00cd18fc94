use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use twsda::analysis::classes::subset_sample;
use twsda::analysis::enumerate::{cross_check_with, enumerate_accepted_with, EnumLimits};
use twsda::analysis::numbers::bound_exponent;
use twsda::analysis::oracles::ORACLES;
use twsda::analysis::{class_upper_bound, count_classes, oracle_by_name, LanguageOracle};
use twsda::constructions::{builtin, BUILTINS};
use twsda::format::{parse_machine_unvalidated, snapshot};
use twsda::{export_machine, parse_machine, run, Budget, InputClass, Machine, RunOutcome, Tracing, Verdict, Word};

macro_rules! outln {
    ($($arg:tt)*) => {
        writeln!(io::stdout().lock(), $($arg)*)
    };
}

const ACCEPT: u8 = 0;
const REJECT: u8 = 1;
const ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "twsda", version, about = "Run, trace and check tree-walking-storage automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MachineArg {
    /// Machine file, or `builtin:NAME`.
    machine: String,
    /// Step budget; required for machines that are not real-time.
    #[arg(long)]
    max_steps: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a machine file and print its diagnostics.
    Validate { file: String },
    /// Run a machine on a word.
    Run {
        #[command(flatten)]
        m: MachineArg,
        /// Input word; `λ` or an empty string for the empty word.
        word: String,
    },
    /// Print every step of a run.
    Trace {
        #[command(flatten)]
        m: MachineArg,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Append the tree after each step.
        #[arg(long)]
        snapshots: bool,
    },
    /// List accepted words up to a length.
    Enum {
        #[command(flatten)]
        m: MachineArg,
        #[arg(long)]
        max_len: usize,
    },
    /// Compare a machine with a reference language on all short words.
    Check {
        #[command(flatten)]
        m: MachineArg,
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        max_len: usize,
    },
    /// Partition a sample into equivalence classes.
    Classes {
        #[arg(long)]
        oracle: String,
        /// File with one word per line, or `subsets:L` for the built-in
        /// subset sample.
        #[arg(long)]
        sample: String,
        #[arg(long)]
        ell: usize,
        /// Extension symbols, comma separated; defaults to the whole
        /// alphabet.
        #[arg(long, value_delimiter = ',')]
        ext: Vec<String>,
    },
    /// Upper bound on the number of equivalence classes.
    Bound {
        #[arg(long)]
        states: u64,
        #[arg(long)]
        tree_symbols: u64,
        #[arg(long)]
        ell: u32,
    },
    /// Print a machine in file format.
    Export {
        #[command(flatten)]
        m: MachineArg,
    },
}

fn load(reference: &str) -> Result<Machine> {
    if let Some(name) = reference.strip_prefix("builtin:") {
        return builtin(name).ok_or_else(|| anyhow!("unknown builtin `{name}` (known: {})", BUILTINS.join(", ")));
    }
    let text = fs::read_to_string(reference).with_context(|| format!("reading {reference}"))?;
    parse_machine(&text).map_err(|e| anyhow!("{reference}:\n{e}"))
}

fn oracle(name: &str) -> Result<LanguageOracle> {
    oracle_by_name(name).ok_or_else(|| anyhow!("unknown oracle `{name}` (known: {})", ORACLES.join(", ")))
}

impl MachineArg {
    fn load(&self) -> Result<(Machine, Budget)> {
        let m = load(&self.machine)?;
        let budget = match (self.max_steps, m.real_time()) {
            (Some(b), _) => Budget::Steps(b),
            (None, true) => Budget::Default,
            (None, false) => bail!("machine is not real-time; pass --max-steps"),
        };
        Ok((m, budget))
    }

    fn limits(&self) -> EnumLimits {
        EnumLimits { step_budget: self.max_steps.unwrap_or(0), ..EnumLimits::default() }
    }
}

fn verdict_line(m: &Machine, out: &RunOutcome) -> (String, u8) {
    let steps = out.steps_taken;
    match out.verdict {
        Verdict::Accepted => (format!("ACCEPT steps={steps}"), ACCEPT),
        Verdict::Rejected => (format!("REJECT steps={steps}"), REJECT),
        Verdict::WellFormednessViolation => {
            let why = out
                .violation
                .as_ref()
                .map(|v| format!("{} at {}: {}", m.action_name(v.action), v.node_type, v.reason))
                .unwrap_or_default();
            (format!("REJECT steps={steps} violation: {why}"), REJECT)
        }
        Verdict::BudgetExhausted => (format!("BUDGET steps={steps}"), ERROR),
    }
}

fn parse_word(m: &Machine, text: &str) -> Result<Word> {
    m.input_alphabet().parse_word(text).with_context(|| format!("bad word `{text}`"))
}

fn read_sample(spec: &str, oracle: &LanguageOracle) -> Result<Vec<Word>> {
    if let Some(ell) = spec.strip_prefix("subsets:") {
        let ell: usize = ell.parse().context("subsets:L needs a number")?;
        if ell > 2 {
            bail!("subsets:{ell} is too large (at most 2)");
        }
        return Ok(subset_sample(ell));
    }
    let text = fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| oracle.alphabet().parse_word(l).with_context(|| format!("bad sample word `{l}`")))
        .collect()
}

fn execute(command: Command) -> Result<u8> {
    match command {
        Command::Validate { file } => {
            let text = fs::read_to_string(&file).with_context(|| format!("reading {file}"))?;
            let diagnostics = match parse_machine_unvalidated(&text) {
                Ok(parsed) => parsed.diagnostics(),
                Err(e) => e.diagnostics,
            };
            if diagnostics.is_empty() {
                outln!("OK")?;
                return Ok(ACCEPT);
            }
            for d in &diagnostics {
                outln!("{d}")?;
            }
            Ok(REJECT)
        }
        Command::Run { m, word } => {
            let (machine, budget) = m.load()?;
            let w = parse_word(&machine, &word)?;
            let out = run(&machine, &w, budget, Tracing::Off)?;
            let (line, code) = verdict_line(&machine, &out);
            outln!("{line}")?;
            Ok(code)
        }
        Command::Trace { m, word, snapshots } => {
            let (machine, budget) = m.load()?;
            let w = parse_word(&machine, &word)?;
            let tracing = if snapshots { Tracing::StepsWithSnapshots } else { Tracing::Steps };
            let out = run(&machine, &w, budget, tracing)?;
            for r in out.trace.as_deref().unwrap_or_default() {
                let input = match r.consumed {
                    InputClass::Lambda => "λ",
                    other => machine.input_name(other),
                };
                let mut line = format!(
                    "step={} state={} in={input} act={} ptr={} nodes={}",
                    r.step_index,
                    machine.state_name(r.state_before),
                    machine.action_name(r.action),
                    r.pointer_after,
                    r.node_count_after,
                );
                if let Some(tree) = &r.snapshot {
                    line.push_str(" tree=");
                    line.push_str(&snapshot(&machine, tree));
                }
                outln!("{line}")?;
            }
            let (line, code) = verdict_line(&machine, &out);
            outln!("{line}")?;
            Ok(code)
        }
        Command::Enum { m, max_len } => {
            let (machine, _) = m.load()?;
            for w in enumerate_accepted_with(&machine, max_len, m.limits())? {
                outln!("{}", machine.input_alphabet().render_word(&w))?;
            }
            Ok(ACCEPT)
        }
        Command::Check { m, oracle: name, max_len } => {
            let (machine, _) = m.load()?;
            let o = oracle(&name)?;
            let report = cross_check_with(&machine, &o, max_len, m.limits())?;
            if report.is_clean() {
                outln!("OK")?;
                return Ok(ACCEPT);
            }
            for mm in &report.mismatches {
                outln!(
                    "{} machine={:?} oracle={}",
                    o.alphabet().render_word(&mm.word),
                    mm.machine,
                    if mm.oracle { "member" } else { "non-member" }
                )?;
            }
            outln!("mismatches={} of {}", report.mismatch_count, report.words_checked)?;
            Ok(REJECT)
        }
        Command::Classes { oracle: name, sample, ell, ext } => {
            let o = oracle(&name)?;
            let ext = if ext.is_empty() {
                o.alphabet().symbols().collect()
            } else {
                ext.iter()
                    .map(|s| o.alphabet().parse_word(s).ok().filter(|w| w.len() == 1).map(|w| w[0]))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| anyhow!("extension symbols must be single symbols of {}", o.alphabet()))?
            };
            let words = read_sample(&sample, &o)?;
            let p = count_classes(&o, &words, ell, &ext);
            outln!("classes={}", p.count())?;
            for class in &p.classes {
                let rendered: Vec<String> = class.iter().map(|w| o.alphabet().render_word(w)).collect();
                outln!("{}", rendered.join(" | "))?;
            }
            Ok(ACCEPT)
        }
        Command::Bound { states, tree_symbols, ell } => {
            if states == 0 || tree_symbols == 0 {
                bail!("--states and --tree-symbols must be at least 1");
            }
            if ell > 12 {
                bail!("--ell {ell} is too large to print");
            }
            let exponent = bound_exponent(states, tree_symbols) * f64::from(1u32 << ell);
            let log2 = if exponent.fract() == 0.0 { format!("{exponent}") } else { format!("{exponent:.6}") };
            outln!("2^{log2}")?;
            outln!("{}", class_upper_bound(states, tree_symbols, ell))?;
            Ok(ACCEPT)
        }
        Command::Export { m } => {
            let machine = load(&m.machine)?;
            write!(io::stdout().lock(), "{}", export_machine(&machine))?;
            Ok(ACCEPT)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ERROR)
        }
    }
}
