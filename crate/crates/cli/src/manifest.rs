use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FileHash {
    pub path: String,
    pub sha256: String,
}

impl FileHash {
    pub fn of(path: &Path, bytes: &[u8]) -> Self {
        FileHash { path: path.display().to_string(), sha256: sha256_hex(bytes) }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(64);
    for b in Sha256::digest(bytes).iter() {
        let _ = write!(s, "{b:02x}");
    }
    s
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub ell1: Option<usize>,
    pub ell2: Option<usize>,
    pub log2: bool,
    pub max_path: Option<usize>,
    pub seed: u64,
    pub root: usize,
    pub jobs: Option<usize>,
}

/// A realised quantity and the bound it must respect, if any.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Realised {
    pub value: u64,
    pub bound: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<FileHash>,
    pub outputs: Vec<FileHash>,
    pub parameters: Parameters,
    pub realised: BTreeMap<String, Realised>,
    /// Only verifiers that actually ran appear here.
    pub verdicts: BTreeMap<String, Verdict>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    /// Milliseconds; filled by `bench` after the verdict pass.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub timings_ms: BTreeMap<String, f64>,
}

impl RunManifest {
    pub fn realise(&mut self, name: &str, value: usize, bound: Option<usize>) {
        self.realised.insert(name.to_string(), Realised { value: value as u64, bound: bound.map(|b| b as u64) });
    }

    pub fn verdict(&mut self, name: &str, outcome: Result<(), String>) {
        match outcome {
            Ok(()) => {
                self.verdicts.insert(name.to_string(), Verdict::Pass);
            }
            Err(why) => {
                self.verdicts.insert(name.to_string(), Verdict::Fail);
                self.failures.push(format!("{name}: {why}"));
            }
        }
    }

    /// Bound checks count as verdicts too.
    pub fn check_bounds(&mut self) {
        let over: Vec<(String, u64, u64)> = self
            .realised
            .iter()
            .filter_map(|(k, r)| r.bound.filter(|&b| r.value > b).map(|b| (k.clone(), r.value, b)))
            .collect();
        let any_bound = self.realised.values().any(|r| r.bound.is_some());
        if !any_bound {
            return;
        }
        if over.is_empty() {
            self.verdict("bounds", Ok(()));
        } else {
            let msg = over.iter().map(|(k, v, b)| format!("{k} = {v} > {b}")).collect::<Vec<_>>().join(", ");
            self.verdict("bounds", Err(msg));
        }
    }

    pub fn failed(&self) -> bool {
        self.verdicts.values().any(|&v| v == Verdict::Fail)
    }
}

/// Markdown table of realised values against their bounds.
pub fn render_report(manifests: &[(String, RunManifest)]) -> String {
    let mut s = String::from("| run | command | quantity | realised | bound | ok |\n|---|---|---|---|---|---|\n");
    for (name, m) in manifests {
        for (q, r) in &m.realised {
            let (bound, ok) = match r.bound {
                Some(b) => (b.to_string(), if r.value <= b { "yes" } else { "no" }),
                None => ("-".to_string(), "-"),
            };
            let _ = writeln!(s, "| {name} | {} | {q} | {} | {bound} | {ok} |", m.command, r.value);
        }
    }
    s.push_str("\n| run | verifier | verdict |\n|---|---|---|\n");
    for (name, m) in manifests {
        for (v, verdict) in &m.verdicts {
            let word = match verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "FAIL",
            };
            let _ = writeln!(s, "| {name} | {v} | {word} |");
        }
    }
    s
}
