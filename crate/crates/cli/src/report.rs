use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// A single numeric or boolean result and the operation that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub op: &'static str,
    pub name: String,
    pub value: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Inputs {
    pub p: u32,
    pub h: u32,
    pub m: usize,
    pub kind: String,
    pub modulus: Vec<u32>,
    pub seed: u64,
    pub options: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub version: &'static str,
    pub inputs: Inputs,
    pub claims: Vec<Claim>,
    pub results: BTreeMap<String, Value>,
    pub pass: bool,
    /// Set when the command declined to run, e.g. over budget.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refused: Option<String>,
    pub timing_ms: u128,
}

impl Report {
    pub fn new(command: &str, inputs: Inputs) -> Self {
        Report {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION"),
            inputs,
            claims: Vec::new(),
            results: BTreeMap::new(),
            pass: true,
            refused: None,
            timing_ms: 0,
        }
    }

    pub fn claim(&mut self, op: &'static str, name: &str, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("serializable claim");
        self.claims.push(Claim { op, name: name.to_string(), value });
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("serializable result");
        self.results.insert(key.to_string(), value);
    }

    pub fn require(&mut self, ok: bool) {
        self.pass &= ok;
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let i = &self.inputs;
        let _ = writeln!(out, "{}  p={} h={} m={} kind={} seed={}", self.command, i.p, i.h, i.m, i.kind, i.seed);
        let op_w = self.claims.iter().map(|c| c.op.len()).max().unwrap_or(0);
        let name_w = self.claims.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.claims {
            let _ = writeln!(out, "  {:op_w$}  {:name_w$}  {}", c.op, c.name, c.value);
        }
        let verdict = match (&self.refused, self.pass) {
            (Some(_), _) => "REFUSED",
            (None, true) => "PASS",
            (None, false) => "FAIL",
        };
        let _ = writeln!(out, "{verdict}");
        out
    }
}
