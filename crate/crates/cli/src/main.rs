use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use roughfca::fca::{build_lattice, enumerate_concepts, export_dot, implication_basis, load_cxt, render_implications};
use roughfca::pipeline::{
    parse_threshold, prepare, process_class, render_report, run_pipeline, ClassOutcome, PipelineConfig,
};
use roughfca::rules::{read_rules, render_if_then, validate_rules, Verdict};
use roughfca::table::{load_schema, load_table, load_table_inferred, Code};

#[derive(Parser)]
#[command(
    name = "roughfca",
    version,
    about = "Rough-set rule mining with concept-lattice analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every stage and write all artifacts to the output directory.
    Run(RunArgs),
    /// Print the validated rules of one decision class.
    Rules {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        class: Code,
        /// Also list candidates that failed validation.
        #[arg(long)]
        all: bool,
    },
    /// Write the concept lattice of one class's validated rules as DOT.
    Lattice {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        class: Code,
        /// Output file, `-` for stdout.
        #[arg(long)]
        dot: PathBuf,
    },
    /// Score a rule file against a test table.
    Validate {
        /// Rules as JSON lines.
        #[arg(long)]
        rules: PathBuf,
        /// Test table CSV.
        #[arg(long)]
        test: PathBuf,
        /// `0.6`, `60%` or `3/5`.
        #[arg(long)]
        threshold: String,
        #[arg(long)]
        schema: Option<PathBuf>,
        /// Print the report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// List the concepts and implication basis of a Burmeister context file.
    Concepts {
        #[arg(long)]
        context: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Overrides `[split] seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides `[split] ratio`.
    #[arg(long)]
    ratio: Option<f64>,
}

impl RunArgs {
    fn load(&self) -> Result<PipelineConfig> {
        let mut cfg =
            PipelineConfig::load(&self.config).with_context(|| format!("reading config {}", self.config.display()))?;
        if let Some(seed) = self.seed {
            cfg.split.seed = seed;
        }
        if let Some(ratio) = self.ratio {
            cfg.split.ratio = Some(ratio);
        }
        Ok(cfg)
    }

    fn class(&self, class: Code) -> Result<ClassOutcome> {
        let cfg = self.load()?;
        let data = prepare(&cfg)?;
        let d = data.train.decision_attribute()?;
        if !data.train.attribute(d).contains(class) {
            bail!("class {class} is not in the decision domain");
        }
        Ok(process_class(&data, class, &cfg.filter, cfg.threshold)?)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Run(args) => {
            let report = run_pipeline(&args.load()?)?;
            out.write_all(render_report(&report).as_bytes())?;
        }
        Command::Rules { run, class, all } => {
            let outcome = run.class(class)?;
            let shown = if all { &outcome.candidates } else { &outcome.kept };
            if shown.is_empty() {
                writeln!(out, "no rules for {}", outcome.label)?;
            }
            for rule in shown {
                let v = outcome.validation.rules.iter().find(|v| v.rule == rule.id);
                write!(out, "{}", render_if_then(rule, v))?;
            }
        }
        Command::Lattice { run, class, dot } => {
            let outcome = run.class(class)?;
            let Some(analysis) = outcome.analysis else {
                bail!("{} has no validated rules, so there is no lattice", outcome.label);
            };
            let text = export_dot(&analysis.lattice);
            if dot == Path::new("-") {
                out.write_all(text.as_bytes())?;
            } else {
                std::fs::write(&dot, text).with_context(|| format!("writing {}", dot.display()))?;
                writeln!(out, "{} concepts written to {}", analysis.lattice.len(), dot.display())?;
            }
        }
        Command::Validate {
            rules,
            test,
            threshold,
            schema,
            json,
        } => {
            let threshold = parse_threshold(&threshold)?;
            let file = File::open(&rules).with_context(|| format!("opening {}", rules.display()))?;
            let rules = read_rules(BufReader::new(file))?;
            let table = match schema {
                Some(s) => load_table(&test, &load_schema(s)?)?,
                None => load_table_inferred(&test)?,
            };
            let report = validate_rules(&rules, &table, threshold)?;
            if json {
                serde_json::to_writer_pretty(&mut out, &report)?;
                writeln!(out)?;
            } else {
                for (rule, v) in rules.iter().zip(&report.rules) {
                    write!(out, "{}", render_if_then(rule, Some(v)))?;
                    let verdict = match v.verdict {
                        Verdict::Kept => "kept",
                        Verdict::Discarded(_) => "discarded",
                    };
                    writeln!(out, "{} {verdict}", " ".repeat(rule.id.len() + 2))?;
                }
                writeln!(out, "{} of {} rules kept", report.kept_count(), report.rules.len())?;
            }
        }
        Command::Concepts { context } => {
            let ctx = load_cxt(&context)?;
            let concepts = enumerate_concepts(&ctx);
            let lattice = build_lattice(&ctx, concepts)?;
            writeln!(out, "{} concepts", lattice.len())?;
            for (i, c) in lattice.concepts().iter().enumerate() {
                writeln!(
                    out,
                    "c{i}: {{{}}} | {{{}}}",
                    ctx.object_names(&c.extent).join(", "),
                    ctx.attribute_names(&c.intent).join(", ")
                )?;
            }
            let basis = implication_basis(&ctx);
            writeln!(out, "\n{} implications", basis.len())?;
            out.write_all(render_implications(&basis, ctx.attributes()).as_bytes())?;
        }
    }
    Ok(())
}
