//! Command reports: `key: value` lines, or one `report-v1` JSON object.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "report-v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    BudgetExceeded,
    Error,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::BudgetExceeded => "budget-exceeded",
            Status::Error => "error",
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug)]
pub struct Report {
    command: Vec<String>,
    files: Vec<(&'static str, String, String)>,
    result: Vec<(String, Value)>,
    status: Status,
    exit: u8,
}

impl Report {
    pub fn new(command: Vec<String>) -> Report {
        Report {
            command,
            files: Vec::new(),
            result: Vec::new(),
            status: Status::Ok,
            exit: 0,
        }
    }

    /// Records the digest of a file read or written by the command.
    pub fn file(&mut self, role: &'static str, path: &str, bytes: &[u8]) {
        self.files.push((role, path.to_string(), sha256_hex(bytes)));
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.result.push((key.into(), value.into()));
    }

    pub fn finish(&mut self, status: Status, exit: u8) {
        self.status = status;
        self.exit = exit;
    }

    pub fn exit(&self) -> u8 {
        self.exit
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("schema: {SCHEMA}\ncommand: {}\n", self.command.join(" "));
        for (role, path, digest) in &self.files {
            out.push_str(&format!("{role}: {path} sha256:{digest}\n"));
        }
        for (key, value) in &self.result {
            let text = match value {
                Value::String(s) => s.clone(),
                Value::Null => "none".to_string(),
                other => other.to_string(),
            };
            out.push_str(&format!("{key}: {text}\n"));
        }
        out.push_str(&format!("status: {}\nexit: {}\n", self.status.as_str(), self.exit));
        out
    }

    pub fn to_json(&self) -> String {
        let files: Vec<Value> = self
            .files
            .iter()
            .map(|(role, path, digest)| json!({ "role": role, "path": path, "sha256": digest }))
            .collect();
        let result: Map<String, Value> = self.result.iter().cloned().collect();
        let doc = json!({
            "schema": SCHEMA,
            "command": self.command,
            "files": files,
            "result": result,
            "status": self.status.as_str(),
            "exit": self.exit,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_carry_the_same_fields() {
        let mut r = Report::new(vec!["solve".into(), "--game".into(), "regret".into()]);
        r.file("input", "x.ssp", b"abc");
        r.set("decision", true);
        r.set("value", Value::Null);
        r.finish(Status::Ok, 0);
        assert_eq!(
            r.to_text(),
            "schema: report-v1\ncommand: solve --game regret\n\
             input: x.ssp sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad\n\
             decision: true\nvalue: none\nstatus: ok\nexit: 0\n"
        );
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema"], "report-v1");
        assert_eq!(v["result"]["decision"], true);
        assert_eq!(v["files"][0]["role"], "input");
    }
}
