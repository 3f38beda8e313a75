//! Reports: a JSON object with a fixed header and a command-specific result.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Definite,
    Inconclusive,
    Rejected,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Definite => "definite",
            Status::Inconclusive => "inconclusive",
            Status::Rejected => "rejected",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Definite => 0,
            Status::Inconclusive => 2,
            Status::Rejected => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    pub seed: u64,
    pub prime: Option<u64>,
    pub degree_cap: usize,
    pub amax: Option<i64>,
    pub bmax: Option<i64>,
}

impl Default for Flags {
    fn default() -> Self {
        Flags { seed: 0, prime: None, degree_cap: orbitcat_core::tilde::DEFAULT_DEGREE_CAP, amax: None, bmax: None }
    }
}

impl Flags {
    pub fn to_json(&self) -> Value {
        json!({ "seed": self.seed, "prime": self.prime, "degree_cap": self.degree_cap, "amax": self.amax, "bmax": self.bmax })
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub status: Status,
    pub value: Value,
}

impl Report {
    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.value).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

pub fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}
