//! Run manifest and rendering of results as text or JSON.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Fixed-point with six decimals, trailing zeros removed.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{x:.6}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.') } else { &s };
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(role: &str, path: &str, bytes: &[u8]) -> Self {
        Self { role: role.into(), path: path.into(), sha256: hex::encode(Sha256::digest(bytes)) }
    }
}

/// Echoed at the top of every output.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: String,
    pub flags: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub seed: Option<u64>,
}

impl RunManifest {
    pub fn text(&self) -> String {
        let mut out = format!("# {} {}\n# subcommand: {}\n", self.tool, self.version, self.subcommand);
        out.push_str(&format!("# flags: {}\n", self.flags.join(" ")));
        for i in &self.inputs {
            out.push_str(&format!("# input {} {} sha256:{}\n", i.role, i.path, i.sha256));
        }
        match self.seed {
            Some(s) => out.push_str(&format!("# seed: {s}\n")),
            None => out.push_str("# seed: none\n"),
        }
        out
    }
}

/// A subcommand's result in both renderings.
#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub json: Value,
}

impl Report {
    pub fn render(&self, manifest: &RunManifest, json: bool) -> String {
        if json {
            #[derive(Serialize)]
            struct Document<'a> {
                manifest: &'a RunManifest,
                result: &'a Value,
            }
            // Going through `Value` sorts every object's keys.
            let doc = serde_json::to_value(Document { manifest, result: &self.json }).expect("documents serialize");
            let mut s = serde_json::to_string_pretty(&doc).expect("documents serialize");
            s.push('\n');
            s
        } else {
            let mut s = manifest.text();
            s.push_str(&self.text);
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
    }
}

/// Accumulates `key value` text lines.
#[derive(Default)]
pub struct Lines(String);

impl Lines {
    pub fn kv(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.0.push_str(&format!("{key} {value}\n"));
        self
    }

    pub fn line(&mut self, line: impl AsRef<str>) -> &mut Self {
        self.0.push_str(line.as_ref());
        self.0.push('\n');
        self
    }

    pub fn finish(&mut self) -> String {
        std::mem::take(&mut self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(num(0.875), "0.875");
        assert_eq!(num(5.0 / 3.0), "1.666667");
        assert_eq!(num(1.0), "1");
        assert_eq!(num(-0.0000001), "0");
        assert_eq!(num(-2.5), "-2.5");
        assert_eq!(num(1e-7), "0");
        assert_eq!(num(123456.0), "123456");
    }
}
