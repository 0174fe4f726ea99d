//! End-to-end runs: load, discretize, split, then per decision class induce,
//! filter and validate rules and analyse the survivors with FCA.

mod config;
mod report;

pub use config::{parse_threshold, InputConfig, PipelineConfig, SplitConfig};
pub use report::{render_report, ClassReport, FunnelCounts, RunReport};

use std::fs;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fca::{
    build_lattice, chief_factors, enumerate_concepts, export_dot, implication_basis, render_chief_factors,
    render_implications, rules_to_context, ChiefFactorReport, ConceptLattice, FormalContext, Implication,
};
use crate::rules::{
    induce_rules, render_if_then, validate_rules, write_rules, DecisionRule, Induction, RuleFilter, ValidationReport,
};
use crate::table::{
    discretize, load_schema, load_table, load_table_inferred, split_train_test, AttributeSchema, Code, DecisionTable,
    DiscretizationSpec, RawTable,
};
use crate::Rational;

/// Name of the marker file present in the output directory while a run is
/// in progress or after it failed.
pub const INCOMPLETE_MARKER: &str = "INCOMPLETE";

fn stage<T>(name: &'static str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        e @ Error::Stage { .. } => e,
        e => Error::Stage {
            stage: name,
            source: Box::new(e),
        },
    })
}

/// Training and test tables of a run.
#[derive(Clone, Debug)]
pub struct PreparedData {
    pub train: DecisionTable,
    pub test: DecisionTable,
}

/// Reorders and checks `table`'s columns against `schema`, matching by name.
fn conform(table: DecisionTable, schema: Vec<AttributeSchema>) -> Result<DecisionTable> {
    let mut columns = Vec::with_capacity(schema.len());
    for a in &schema {
        let i = table.attribute_index(&a.name)?;
        if table.attribute(i).kind != a.kind {
            return Err(Error::Schema(format!(
                "attribute `{}` has kind {:?} in the schema",
                a.name, a.kind
            )));
        }
        columns.push(i);
    }
    let rows = (0..table.len())
        .map(|o| columns.iter().map(|&a| table.value(o, a)).collect())
        .collect();
    DecisionTable::new(table.objects().to_vec(), schema, rows)
}

/// Reads the input table, discretizing raw values when a spec is given.
pub fn load_input(input: &InputConfig) -> Result<DecisionTable> {
    let schema = stage("load", input.schema.as_ref().map(load_schema).transpose())?;
    match &input.discretization {
        Some(spec_path) => {
            let raw = stage("load", RawTable::load(&input.table))?;
            let spec = stage("discretize", DiscretizationSpec::load(spec_path))?;
            let table = stage("discretize", discretize(&raw, &spec))?;
            match schema {
                Some(schema) => stage("discretize", conform(table, schema)),
                None => Ok(table),
            }
        }
        None => stage(
            "load",
            match schema {
                Some(schema) => load_table(&input.table, &schema),
                None => load_table_inferred(&input.table),
            },
        ),
    }
}

/// Loads the input and splits it. Without a split ratio both sides are the
/// whole table.
pub fn prepare(config: &PipelineConfig) -> Result<PreparedData> {
    stage("config", config.validate())?;
    let table = load_input(&config.input)?;
    stage("load", table.decision_attribute())?;
    match config.split.ratio {
        Some(ratio) => {
            let (train, test) = stage("split", split_train_test(&table, ratio, config.split.seed))?;
            Ok(PreparedData { train, test })
        }
        None => Ok(PreparedData {
            train: table.clone(),
            test: table,
        }),
    }
}

/// Classes named in the config, or every code of the decision domain.
pub fn classes_to_process(config: &PipelineConfig, train: &DecisionTable) -> Result<Vec<Code>> {
    let d = train.decision_attribute()?;
    let domain = &train.attribute(d).domain;
    match &config.input.classes {
        None => Ok(domain.clone()),
        Some(cs) => {
            if let Some(&c) = cs.iter().find(|c| !domain.contains(c)) {
                return Err(Error::Stage {
                    stage: "config",
                    source: Box::new(Error::UnknownClass(c)),
                });
            }
            Ok(cs.clone())
        }
    }
}

/// Lattice-side results for one class.
#[derive(Clone, Debug)]
pub struct ClassAnalysis {
    pub context: FormalContext,
    pub lattice: ConceptLattice,
    pub implications: Vec<Implication>,
    pub chief: ChiefFactorReport,
}

/// In-memory results for one class.
#[derive(Clone, Debug)]
pub struct ClassOutcome {
    pub class: Code,
    pub label: String,
    /// `None` when the class has no training members.
    pub induction: Option<Induction>,
    pub candidates: Vec<DecisionRule>,
    pub validation: ValidationReport,
    pub kept: Vec<DecisionRule>,
    pub analysis: Option<ClassAnalysis>,
}

impl ClassOutcome {
    pub fn counts(&self) -> FunnelCounts {
        FunnelCounts {
            generated: self.induction.as_ref().map_or(0, |i| i.rules.len()),
            filtered: self.candidates.len(),
            validated: self.kept.len(),
        }
    }
}

pub fn analyse_rules(kept: &[DecisionRule]) -> Result<ClassAnalysis> {
    let context = stage("context", rules_to_context(kept))?;
    let concepts = enumerate_concepts(&context);
    let lattice = stage("lattice", build_lattice(&context, concepts))?;
    let implications = implication_basis(&context);
    let chief = chief_factors(&implications);
    Ok(ClassAnalysis {
        context,
        lattice,
        implications,
        chief,
    })
}

fn class_label(table: &DecisionTable, d: usize, class: Code) -> String {
    let a = table.attribute(d);
    match a.label(class) {
        Some(l) => format!("{} = {} ({l})", a.name, class),
        None => format!("{} = {}", a.name, class),
    }
}

/// Runs every in-memory stage for one class.
pub fn process_class(
    data: &PreparedData,
    class: Code,
    filter: &RuleFilter,
    threshold: Rational,
) -> Result<ClassOutcome> {
    let d = stage("induce", data.train.decision_attribute())?;
    let label = class_label(&data.train, d, class);
    let empty = ValidationReport {
        threshold,
        rules: Vec::new(),
    };
    if data.train.objects_with(d, class).is_clear() {
        return Ok(ClassOutcome {
            class,
            label,
            induction: None,
            candidates: Vec::new(),
            validation: empty,
            kept: Vec::new(),
            analysis: None,
        });
    }
    let induction = stage("induce", induce_rules(&data.train, class))?;
    let candidates = filter.apply(induction.rules.clone());
    let validation = if candidates.is_empty() {
        empty
    } else {
        stage("validate", validate_rules(&candidates, &data.test, threshold))?
    };
    let kept = validation.apply(&candidates);
    let analysis = if kept.is_empty() {
        None
    } else {
        Some(analyse_rules(&kept)?)
    };
    Ok(ClassOutcome {
        class,
        label,
        induction: Some(induction),
        candidates,
        validation,
        kept,
        analysis,
    })
}

fn write_file(root: &Path, rel: &str, content: &[u8], written: &mut Vec<String>) -> Result<()> {
    let path = root.join(rel);
    fs::write(&path, content).map_err(|e| Error::io(&path, e))?;
    written.push(rel.to_string());
    Ok(())
}

fn rules_jsonl(rules: &[DecisionRule]) -> Vec<u8> {
    let mut buf = Vec::new();
    write_rules(rules, &mut buf).expect("writing to memory");
    buf
}

fn rules_text(outcome: &ClassOutcome) -> String {
    outcome
        .kept
        .iter()
        .map(|r| {
            let v = outcome.validation.rules.iter().find(|v| v.rule == r.id);
            render_if_then(r, v)
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Writes the artifacts of one class under `class_<k>/` and returns their
/// paths relative to `root`. A class without training members gets none.
fn write_class(root: &Path, outcome: &ClassOutcome) -> Result<Vec<String>> {
    let mut written = Vec::new();
    let Some(induction) = &outcome.induction else {
        return Ok(written);
    };
    let dir = format!("class_{}", outcome.class);
    let full = root.join(&dir);
    fs::create_dir_all(&full).map_err(|e| Error::io(&full, e))?;
    let rel = |name: &str| format!("{dir}/{name}");

    write_file(
        root,
        &rel("generated.jsonl"),
        &rules_jsonl(&induction.rules),
        &mut written,
    )?;
    write_file(
        root,
        &rel("candidates.jsonl"),
        &rules_jsonl(&outcome.candidates),
        &mut written,
    )?;
    let mut validation = serde_json::to_string_pretty(&outcome.validation).expect("report serializes");
    validation.push('\n');
    write_file(root, &rel("validation.json"), validation.as_bytes(), &mut written)?;
    write_file(root, &rel("rules.jsonl"), &rules_jsonl(&outcome.kept), &mut written)?;
    write_file(root, &rel("rules.txt"), rules_text(outcome).as_bytes(), &mut written)?;
    if let Some(a) = &outcome.analysis {
        let names = a.context.attributes();
        write_file(root, &rel("context.cxt"), a.context.to_cxt().as_bytes(), &mut written)?;
        write_file(
            root,
            &rel("lattice.dot"),
            export_dot(&a.lattice).as_bytes(),
            &mut written,
        )?;
        write_file(
            root,
            &rel("implications.txt"),
            render_implications(&a.implications, names).as_bytes(),
            &mut written,
        )?;
        write_file(
            root,
            &rel("chief_factors.txt"),
            render_chief_factors(&a.chief, names).as_bytes(),
            &mut written,
        )?;
    }
    Ok(written)
}

/// Clears what an earlier run left behind so stale classes cannot leak into
/// this run's output.
fn reset_output(root: &Path) -> Result<()> {
    fs::create_dir_all(root).map_err(|e| Error::io(root, e))?;
    for entry in fs::read_dir(root).map_err(|e| Error::io(root, e))? {
        let entry = entry.map_err(|e| Error::io(root, e))?;
        let name = entry.file_name().to_string_lossy().into_owned();
        let path = entry.path();
        if name.starts_with("class_") && path.is_dir() {
            fs::remove_dir_all(&path).map_err(|e| Error::io(&path, e))?;
        } else if name == "report.json" || name == "report.txt" {
            fs::remove_file(&path).map_err(|e| Error::io(&path, e))?;
        }
    }
    Ok(())
}

/// Full run. Artifacts go to the configured output directory; while the run
/// is in progress, and after a failure, it holds an `INCOMPLETE` marker.
pub fn run_pipeline(config: &PipelineConfig) -> Result<RunReport> {
    let root = config.output_dir.as_path();
    stage("config", config.validate())?;
    stage("write", reset_output(root))?;
    let marker = root.join(INCOMPLETE_MARKER);
    stage(
        "write",
        fs::write(&marker, "run in progress\n").map_err(|e| Error::io(&marker, e)),
    )?;

    let result = run_into(config, root);
    match &result {
        Ok(_) => stage("write", fs::remove_file(&marker).map_err(|e| Error::io(&marker, e)))?,
        Err(e) => {
            let _ = fs::write(&marker, format!("run failed: {e}\n"));
        }
    }
    result
}

fn run_into(config: &PipelineConfig, root: &Path) -> Result<RunReport> {
    let data = prepare(config)?;
    let classes = classes_to_process(config, &data.train)?;
    let outcomes: Vec<ClassOutcome> = classes
        .par_iter()
        .map(|&c| process_class(&data, c, &config.filter, config.threshold))
        .collect::<Result<_>>()?;

    let mut class_reports = Vec::with_capacity(outcomes.len());
    for outcome in outcomes {
        let artifacts = stage("write", write_class(root, &outcome))?;
        class_reports.push(ClassReport {
            class: outcome.class,
            label: outcome.label.clone(),
            train_members: outcome.induction.as_ref().map_or(0, |i| i.members),
            conflicts: outcome
                .induction
                .as_ref()
                .map_or_else(Vec::new, |i| i.conflicts.clone()),
            counts: outcome.counts(),
            artifacts,
            candidates: outcome.candidates,
            validation: outcome.validation.rules,
        });
    }
    let report = RunReport::new(
        config.threshold,
        config.split.ratio,
        config.split.seed,
        data.train.len(),
        data.test.len(),
        class_reports,
    );
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    let json_path = root.join("report.json");
    stage(
        "write",
        fs::write(&json_path, json).map_err(|e| Error::io(&json_path, e)),
    )?;
    let txt_path = root.join("report.txt");
    stage(
        "write",
        fs::write(&txt_path, render_report(&report)).map_err(|e| Error::io(&txt_path, e)),
    )?;
    Ok(report)
}
