//! Report documents written to standard output, as JSON or CSV.

use serde::Serialize;

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One computed count with full provenance: configuration, mode, method, and
/// the convention flags it was produced under.
#[derive(Clone, Serialize)]
pub struct CountReport {
    pub configuration: String,
    pub mode: String,
    pub method: String,
    pub edge_interaction: String,
    pub candidates: String,
    pub count: String,
    pub elapsed_ms: u64,
    pub artifact_version: String,
    pub cached: bool,
}

impl CountReport {
    pub fn csv_header() -> &'static str {
        "configuration,mode,method,edge_interaction,candidates,count,elapsed_ms,artifact_version,cached"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.configuration,
            self.mode,
            self.method,
            self.edge_interaction,
            self.candidates,
            self.count,
            self.elapsed_ms,
            self.artifact_version,
            self.cached
        )
    }
}

#[derive(Serialize)]
pub struct CountDocument {
    pub command: String,
    pub status: String,
    pub report: CountReport,
}

#[derive(Serialize)]
pub struct SequenceDocument {
    pub command: String,
    pub status: String,
    pub name: String,
    pub n: u32,
    pub value: String,
    pub artifact_version: String,
}

#[derive(Serialize)]
pub struct PolyDocument {
    pub command: String,
    pub status: String,
    pub family: String,
    pub n: u32,
    pub degree: usize,
    pub monic: bool,
    /// Exact coefficients, ascending by degree.
    pub coefficients: Vec<String>,
    /// The count equals 2^(m-2)/(n-1)! times this polynomial at m.
    pub normalization: String,
    pub artifact_version: String,
}

#[derive(Clone, Serialize)]
pub struct CheckRow {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct VerifyDocument {
    pub command: String,
    pub status: String,
    pub suite: String,
    pub rows: Vec<CheckRow>,
    pub all_pass: bool,
    pub artifact_version: String,
}

#[derive(Serialize)]
pub struct CrossValidateDocument {
    pub command: String,
    pub status: String,
    pub n_max: u32,
    pub reports: Vec<CountReport>,
    pub conjecture: Vec<CheckRow>,
    pub artifact_version: String,
}

#[derive(Serialize)]
pub struct RenderDocument {
    pub command: String,
    pub status: String,
    pub target: String,
    pub path: String,
    pub bytes: usize,
    pub artifact_version: String,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OutputFormat {
    Json,
    Csv,
}

pub fn emit_json<T: Serialize>(doc: &T) {
    println!("{}", serde_json::to_string_pretty(doc).expect("report serialization"));
}

pub fn emit_count(format: OutputFormat, doc: &CountDocument) {
    match format {
        OutputFormat::Json => emit_json(doc),
        OutputFormat::Csv => {
            println!("{}", CountReport::csv_header());
            println!("{}", doc.report.csv_row());
        }
    }
}

pub fn emit_check_rows(format: OutputFormat, doc: &VerifyDocument) {
    match format {
        OutputFormat::Json => emit_json(doc),
        OutputFormat::Csv => {
            println!("suite,label,lhs,rhs,pass");
            for r in &doc.rows {
                println!("{},{},{},{},{}", doc.suite, r.label, r.lhs, r.rhs, r.pass);
            }
        }
    }
}
