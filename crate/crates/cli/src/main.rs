//! `strataflow` command-line front end.
//!
//! Stdout carries only deterministic, line-oriented results. A short run
//! report (input digests and wall time) goes to stderr.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};
use strataflow::flows::{
    build_stratified_poset, class_names, enumerate_component, write_diagram, ComponentSignature,
};
use strataflow::poset::{parse_poset, to_dot, write_poset, PosetDocument};
use strataflow::{
    check_cell_complex, core, homology, order_complex, weak_reduce, ElementId, FinitePoset,
    FlowError, HomologyProfile, OverflowError, PosetError,
};
use thiserror::Error;

const MAX_CODIM: u32 = 3;

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Poset {
        path: PathBuf,
        #[source]
        source: PosetError,
    },
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Overflow(#[from] OverflowError),
    #[error("--codim-max {0} is out of range (at most {MAX_CODIM})")]
    CodimRange(u32),
    #[error("case study differs from the expected values: {0}")]
    Mismatch(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::CodimRange(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "strataflow", version, about = "Finite-space reductions and the stratified space of annulus flows")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Core,
    Weak,
}

#[derive(Subcommand)]
enum Command {
    /// Remove beat points (core) or beat and weak points (weak).
    Reduce {
        #[arg(long, value_enum)]
        mode: Mode,
        file: PathBuf,
        /// Write the reduced poset here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integral homology of the order complex.
    Homology { file: PathBuf },
    /// Enumerate flow classes and write diagrams plus the component poset.
    Enumerate {
        #[arg(long)]
        codim_max: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Full pipeline on the annulus component.
    CaseStudy,
    /// Graphviz rendering of a poset file.
    ExportDot {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Stderr summary of one invocation.
struct RunReport {
    command: &'static str,
    inputs: Vec<(PathBuf, String)>,
    stages: Vec<String>,
    start: Instant,
}

impl RunReport {
    fn new(command: &'static str) -> Self {
        RunReport {
            command,
            inputs: Vec::new(),
            stages: Vec::new(),
            start: Instant::now(),
        }
    }

    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = fs::read(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let digest: String = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
        self.inputs.push((path.to_path_buf(), digest));
        String::from_utf8(bytes).map_err(|e| CliError::Io {
            path: path.to_path_buf(),
            source: std::io::Error::new(std::io::ErrorKind::InvalidData, e),
        })
    }

    fn stage(&mut self, line: impl Into<String>) {
        self.stages.push(line.into());
    }

    fn emit(&self) {
        eprintln!("command: {}", self.command);
        for (path, digest) in &self.inputs {
            eprintln!("input: {} sha256={digest}", path.display());
        }
        for s in &self.stages {
            eprintln!("stage: {s}");
        }
        eprintln!("wall_time: {:.3}s", self.start.elapsed().as_secs_f64());
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_poset(report: &mut RunReport, path: &Path) -> Result<PosetDocument, CliError> {
    let text = report.read(path)?;
    parse_poset(&text).map_err(|source| CliError::Poset {
        path: path.to_path_buf(),
        source,
    })
}

/// Codimension labels restricted to the elements still present.
fn labels_for(p: &FinitePoset, codim: &BTreeMap<ElementId, u32>) -> Option<BTreeMap<ElementId, u32>> {
    let kept: BTreeMap<ElementId, u32> = p
        .ids()
        .filter_map(|id| codim.get(id).map(|&c| (id.clone(), c)))
        .collect();
    (!kept.is_empty()).then_some(kept)
}

fn betti_line(h: &HomologyProfile) -> String {
    h.betti.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn reduce(report: &mut RunReport, mode: Mode, file: &Path, out: Option<&Path>) -> Result<String, CliError> {
    let doc = read_poset(report, file)?;
    let (reduced, trace) = match mode {
        Mode::Core => core(&doc.poset),
        Mode::Weak => weak_reduce(&doc.poset),
    };
    report.stage(format!("{} -> {} elements", trace.initial_size, trace.final_size));
    let mut stdout: String = trace.lines().map(|l| l + "\n").collect();
    let text = write_poset(&reduced, labels_for(&reduced, &doc.codim).as_ref());
    match out {
        Some(path) => write_file(path, &text)?,
        None => stdout.push_str(&text),
    }
    Ok(stdout)
}

fn homology_of(report: &mut RunReport, file: &Path) -> Result<String, CliError> {
    let doc = read_poset(report, file)?;
    let h = homology(&order_complex(&doc.poset))?;
    report.stage(format!("betti {}", betti_line(&h)));
    Ok(h.to_string())
}

fn enumerate(report: &mut RunReport, codim_max: u32, out: &Path) -> Result<String, CliError> {
    if codim_max > MAX_CODIM {
        return Err(CliError::CodimRange(codim_max));
    }
    let e = enumerate_component(&ComponentSignature::annulus(), codim_max)?;
    let sp = build_stratified_poset(&e)?;
    fs::create_dir_all(out).map_err(|source| CliError::Io {
        path: out.to_path_buf(),
        source,
    })?;
    let mut stdout = String::new();
    for (id, class) in class_names(&e) {
        let name = format!("{id}.flow");
        let text = format!(
            "# codim {} q=({},{})\n{}",
            class.codimension(),
            class.q.0,
            class.q.1,
            write_diagram(&class.diagram)
        );
        write_file(&out.join(&name), &text)?;
        stdout.push_str(&format!("wrote {name}\n"));
    }
    write_file(&out.join("component.poset"), &write_poset(sp.poset(), Some(&sp.codim_map())))?;
    stdout.push_str("wrote component.poset\n");
    let sizes: Vec<String> = e.strata_sizes().iter().map(ToString::to_string).collect();
    stdout.push_str(&format!("strata: {}\n", sizes.join(" ")));
    stdout.push_str(&format!("classes: {}\n", e.total()));
    report.stage(format!("{} candidates, {} valid", e.candidates, e.valid_candidates));
    Ok(stdout)
}

fn case_study(report: &mut RunReport) -> Result<String, CliError> {
    let e = enumerate_component(&ComponentSignature::annulus(), MAX_CODIM)?;
    report.stage(format!("enumerate: {} candidates, {} valid", e.candidates, e.valid_candidates));
    let sp = build_stratified_poset(&e)?;
    let cells = check_cell_complex(&sp);
    let p = sp.poset();
    let (core_space, _) = core(p);
    let (weak_space, _) = weak_reduce(p);
    let h_full = homology(&order_complex(p))?;
    let h = homology(&order_complex(&weak_space))?;
    report.stage("stratify, check, reduce, homology".to_string());

    let strata = e.strata_sizes();
    let cell_ok = cells.passed() && cells.graded();
    let mut out = String::new();
    let sizes: Vec<String> = strata.iter().map(ToString::to_string).collect();
    out.push_str(&format!("strata: {}\n", sizes.join(" ")));
    out.push_str(&format!("cell_complex: {}\n", if cell_ok { "pass" } else { "fail" }));
    out.push_str(&format!("core: {}\n", core_space.len()));
    out.push_str(&format!("weak_min: {}\n", weak_space.len()));
    out.push_str(&format!("H: {}\n", betti_line(&h)));
    out.push_str(&format!("H_full: {}\n", betti_line(&h_full)));

    let mut mismatches = Vec::new();
    let checks = [
        ("strata", strata == [3, 8, 12, 6], "3 8 12 6"),
        ("cell_complex", cell_ok, "pass"),
        ("core", core_space.len() == 12, "12"),
        ("weak_min", weak_space.len() == 8, "8"),
        ("H", h.nonzero_betti() == [1, 0, 2] && h.is_torsion_free(), "1 0 2"),
    ];
    for (name, ok, want) in checks {
        if ok {
            out.push_str(&format!("check {name}: ok\n"));
        } else {
            out.push_str(&format!("check {name}: mismatch (expected {want})\n"));
            mismatches.push(name);
        }
    }
    print!("{out}");
    if mismatches.is_empty() {
        Ok(String::new())
    } else {
        Err(CliError::Mismatch(mismatches.join(", ")))
    }
}

fn export_dot(report: &mut RunReport, file: &Path, out: Option<&Path>) -> Result<String, CliError> {
    let doc = read_poset(report, file)?;
    let text = to_dot(&doc.poset, labels_for(&doc.poset, &doc.codim).as_ref());
    match out {
        Some(path) => {
            write_file(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, result) = match &cli.command {
        Command::Reduce { mode, file, out } => {
            let mut r = RunReport::new("reduce");
            let res = reduce(&mut r, *mode, file, out.as_deref());
            (r, res)
        }
        Command::Homology { file } => {
            let mut r = RunReport::new("homology");
            let res = homology_of(&mut r, file);
            (r, res)
        }
        Command::Enumerate { codim_max, out } => {
            let mut r = RunReport::new("enumerate");
            let res = enumerate(&mut r, *codim_max, out);
            (r, res)
        }
        Command::CaseStudy => {
            let mut r = RunReport::new("case-study");
            let res = case_study(&mut r);
            (r, res)
        }
        Command::ExportDot { file, out } => {
            let mut r = RunReport::new("export-dot");
            let res = export_dot(&mut r, file, out.as_deref());
            (r, res)
        }
    };
    let code = match result {
        Ok(stdout) => {
            print!("{stdout}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    };
    name.emit();
    code
}
