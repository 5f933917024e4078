//! Report structure and rendering. Text output is byte-stable for a fixed
//! scenario and version as long as timings are disabled; the structured
//! format round-trips through serde.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum TaskStatus {
    Ok,
    Failed,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct TaskReport {
    pub index: usize,
    pub operation: String,
    pub inputs: BTreeMap<String, String>,
    pub lines: Vec<String>,
    pub status: TaskStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub valid_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<u64>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub version: String,
    pub truncation: usize,
    pub tasks: Vec<TaskReport>,
}

impl Report {
    pub fn all_ok(&self) -> bool {
        self.tasks.iter().all(|t| t.status == TaskStatus::Ok)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Text => emit_text(report),
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

fn emit_text(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("orbispace report (v{})\n", report.version));
    out.push_str(&format!("truncation {}\n", report.truncation));
    out.push_str(&format!("tasks {}\n", report.tasks.len()));
    for task in &report.tasks {
        out.push('\n');
        let mut header = format!("[{}] {}", task.index, task.operation);
        for (k, v) in &task.inputs {
            header.push_str(&format!(" {k}={v}"));
        }
        out.push_str(&header);
        out.push('\n');
        for line in &task.lines {
            out.push_str(&format!("    {line}\n"));
        }
        if let Some(d) = task.valid_degree {
            out.push_str(&format!("    valid through degree {d}\n"));
        }
        if let Some(ms) = task.timing_ms {
            out.push_str(&format!("    time {ms} ms\n"));
        }
        match &task.status {
            TaskStatus::Ok => out.push_str("    ok\n"),
            TaskStatus::Failed => {
                let why = task.error.as_deref().unwrap_or("unspecified failure");
                out.push_str(&format!("    FAILED: {why}\n"));
            }
        }
    }
    out
}
