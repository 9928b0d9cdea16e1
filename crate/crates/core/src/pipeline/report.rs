use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use super::{emit_tfn_svg, PipelineError, ReportFormat, RunOutput, TopicReport};

pub const CSV_HEADER: [&str; 8] = [
    "topic_id",
    "top_terms",
    "prevalence",
    "tfn_a",
    "tfn_m",
    "tfn_b",
    "positivity",
    "negativity",
];

/// Rounds to six decimal places.
pub fn round6(x: f64) -> f64 {
    let r = (x * 1e6).round() / 1e6;
    // avoid emitting "-0.0"
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

impl TopicReport {
    fn rounded(&self) -> Self {
        let mut r = self.clone();
        for t in &mut r.top_terms {
            t.weight = round6(t.weight);
        }
        r.prevalence = round6(r.prevalence);
        r.tfn.a = round6(r.tfn.a);
        r.tfn.m = round6(r.tfn.m);
        r.tfn.b = round6(r.tfn.b);
        r.sigma = round6(r.sigma);
        r.positivity = round6(r.positivity);
        r.negativity = round6(r.negativity);
        r
    }
}

impl RunOutput {
    /// Copy with every reported number rounded to six decimals, as written
    /// to JSON.
    pub fn rounded(&self) -> Self {
        Self {
            config: self.config.clone(),
            metadata: self.metadata.clone(),
            reports: self.reports.iter().map(TopicReport::rounded).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.rounded()).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        reports_to_csv(&self.reports)
    }
}

pub fn reports_to_csv(reports: &[TopicReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in reports {
        let terms: Vec<&str> = r.top_terms.iter().map(|t| t.term.as_str()).collect();
        w.write_record([
            r.topic.to_string(),
            terms.join(";"),
            fmt6(r.prevalence),
            fmt6(r.tfn.a),
            fmt6(r.tfn.m),
            fmt6(r.tfn.b),
            fmt6(r.positivity),
            fmt6(r.negativity),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn fmt6(x: f64) -> String {
    format!("{:.6}", round6(x))
}

/// Writes the run as JSON (config, metadata and reports) or as a CSV table.
pub fn emit_report(output: &RunOutput, format: ReportFormat, path: impl AsRef<Path>) -> Result<(), PipelineError> {
    let path = path.as_ref();
    let body = match format {
        ReportFormat::Json => output.to_json(),
        ReportFormat::Csv => output.to_csv(),
    };
    let io_err = |source| PipelineError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut f = BufWriter::new(File::create(path).map_err(io_err)?);
    f.write_all(body.as_bytes()).map_err(io_err)?;
    f.flush().map_err(io_err)
}

/// Parses a JSON report written by [`emit_report`].
pub fn read_json_report(path: impl AsRef<Path>) -> Result<RunOutput, PipelineError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| PipelineError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| PipelineError::Report(e.to_string()))
}

/// Topics drawn when no explicit selection is given.
pub const DEFAULT_SVG_TOPICS: usize = 5;

/// Writes the report, and the SVG when enabled, into `config.out`.
/// Returns the written paths.
pub fn write_outputs(output: &RunOutput) -> Result<Vec<PathBuf>, PipelineError> {
    let config = &output.config;
    std::fs::create_dir_all(&config.out).map_err(|source| PipelineError::Io {
        path: config.out.clone(),
        source,
    })?;
    let name = match config.report {
        ReportFormat::Json => "report.json",
        ReportFormat::Csv => "report.csv",
    };
    let report = config.out.join(name);
    emit_report(output, config.report, &report)?;
    let mut written = vec![report];

    if config.svg {
        // reports are already ordered by prevalence
        let selection = match &config.svg_topics {
            Some(sel) => sel.clone(),
            None => output
                .reports
                .iter()
                .take(DEFAULT_SVG_TOPICS)
                .map(|r| r.topic)
                .collect(),
        };
        let path = config.out.join("tfn.svg");
        emit_tfn_svg(&output.reports, &path, &selection, config.ramp)?;
        written.push(path);
    }
    Ok(written)
}
