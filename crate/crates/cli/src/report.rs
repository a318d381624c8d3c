use serde_json::{json, Value};

use crate::pipeline::Options;
use crate::Format;

pub const TOOL: &str = "pearlhom";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// A command result. JSON is the contract; the text form renders the same
/// content for people.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub source: String,
    pub digest: String,
    pub quotient_digest: Option<String>,
    pub pipeline: Vec<String>,
    pub status: Status,
    pub results: Value,
    pub text: Vec<String>,
}

impl Report {
    pub fn new(command: &str, opts: &Options, pipeline: Vec<String>) -> Self {
        Report {
            command: command.into(),
            source: opts.source.describe(),
            digest: opts.digest.clone(),
            quotient_digest: opts.quotient.as_ref().map(|(_, d)| d.clone()),
            pipeline,
            status: Status::Pass,
            results: Value::Null,
            text: Vec::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut input = json!({ "source": self.source, "sha256": self.digest });
        if let Some(q) = &self.quotient_digest {
            input["quotient_sha256"] = json!(q);
        }
        json!({
            "tool": TOOL,
            "version": VERSION,
            "command": self.command,
            "input": input,
            "pipeline": self.pipeline,
            "status": self.status.as_str(),
            "results": self.results,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = format!("{TOOL} {VERSION} {}\n", self.command);
                out += &format!("input: {} (sha256 {})\n", self.source, self.digest);
                if let Some(q) = &self.quotient_digest {
                    out += &format!("subsystem sha256 {q}\n");
                }
                out += &format!("pipeline: {}\n", self.pipeline.join(" -> "));
                for line in &self.text {
                    out += line;
                    out.push('\n');
                }
                out += &format!("status: {}\n", self.status.as_str());
                out
            }
        }
    }
}
