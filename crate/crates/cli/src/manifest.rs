use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Provenance written at the top of every output file.
pub struct Manifest {
    pub command: String,
    pub digest: String,
    pub seed: Option<u64>,
    pub version: &'static str,
    pub timestamp: String,
}

impl Manifest {
    /// `config` holds every flag and the contents of every input file, so
    /// the digest identifies the run independently of the machine.
    pub fn new(command: &str, config: &Value, seed: Option<u64>) -> Self {
        let canonical = serde_json::to_string(config).expect("json values serialize");
        Self {
            command: command.to_string(),
            digest: hex::encode(Sha256::digest(canonical.as_bytes())),
            seed,
            version: env!("CARGO_PKG_VERSION"),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    pub fn pairs(&self) -> Vec<(String, String)> {
        let mut out = vec![
            ("command".to_string(), self.command.clone()),
            ("config_sha256".to_string(), self.digest.clone()),
        ];
        if let Some(s) = self.seed {
            out.push(("seed".into(), s.to_string()));
        }
        out.push(("version".into(), format!("ipolar {}", self.version)));
        out.push(("timestamp".into(), self.timestamp.clone()));
        out
    }

    pub fn csv_header(&self) -> String {
        self.pairs().iter().map(|(k, v)| format!("# {k}: {v}\n")).collect()
    }

    pub fn json(&self) -> Value {
        json!({
            "command": self.command,
            "config_sha256": self.digest,
            "seed": self.seed,
            "version": format!("ipolar {}", self.version),
            "timestamp": self.timestamp,
        })
    }
}

/// Hash of a file's bytes, for inclusion in a config digest.
pub fn content_digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}
