//! Exit-code classification and the JSON run report.

use std::fmt;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};
use subcover::poly::ClassTest;
use subcover::{Error, SolutionCover, Stats};

/// Error kinds that map to the documented exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Precondition {
        reason: String,
        witness: Option<Vec<usize>>,
    },
    Verification(String),
    Other,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure::Usage(msg.into())
    }

    pub fn verification(msg: impl Into<String>) -> Self {
        Failure::Verification(msg.into())
    }

    pub fn classify(err: &anyhow::Error) -> Self {
        if let Some(f) = err.downcast_ref::<Failure>() {
            return match f {
                Failure::Usage(m) => Failure::Usage(m.clone()),
                Failure::Precondition { reason, witness } => Failure::Precondition {
                    reason: reason.clone(),
                    witness: witness.clone(),
                },
                Failure::Verification(m) => Failure::Verification(m.clone()),
                Failure::Other => Failure::Other,
            };
        }
        match err.downcast_ref::<Error>() {
            Some(Error::Precondition { reason, witness }) => Failure::Precondition {
                reason: reason.clone(),
                witness: witness.clone(),
            },
            Some(
                e @ (Error::NoApplicableAlgorithm(_)
                | Error::CapExceeded { .. }
                | Error::PatternTooLarge { .. }
                | Error::NotBipartite(..)),
            ) => Failure::Precondition {
                reason: e.to_string(),
                witness: None,
            },
            Some(e @ (Error::Parse { .. } | Error::Params(_) | Error::Layout(_))) => {
                Failure::Usage(e.to_string())
            }
            Some(_) | None => Failure::Other,
        }
    }

    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Precondition { .. } => 3,
            Failure::Verification(_) => 4,
            Failure::Other => 1,
        }
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            Failure::Precondition {
                witness: Some(w), ..
            } => Some(w),
            _ => None,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage: {m}"),
            Failure::Precondition { reason, .. } => write!(f, "precondition violated: {reason}"),
            Failure::Verification(m) => write!(f, "verification failed: {m}"),
            Failure::Other => f.write_str("failed"),
        }
    }
}

impl std::error::Error for Failure {}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

pub fn one_based(items: &[usize]) -> Vec<usize> {
    items.iter().map(|v| v + 1).collect()
}

/// Class test as reported on the command line (1-based witness).
#[derive(Clone, Debug, Serialize)]
pub struct ClassEvidence {
    pub property: String,
    pub holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl From<&ClassTest> for ClassEvidence {
    fn from(t: &ClassTest) -> Self {
        ClassEvidence {
            property: t.property.clone(),
            holds: t.holds,
            witness: t.witness.as_deref().map(one_based),
            note: t.note.clone(),
        }
    }
}

/// The `--json` report of `solve` and `verify`. Vertices are 1-based.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub input_digest: Option<String>,
    pub algorithm: Option<String>,
    pub s: Option<usize>,
    pub measure: Option<String>,
    pub witness: Option<Vec<usize>>,
    pub witness_file: Option<String>,
    pub stats: Option<Stats>,
    pub class_evidence: Vec<ClassEvidence>,
    pub warnings: Vec<String>,
    pub wall_time_ms: f64,
    pub exit_code: u8,
    pub error: Option<String>,
    pub precondition_witness: Option<Vec<usize>>,
}

impl RunReport {
    pub fn new(argv: &[String], input_digest: Option<String>) -> Self {
        RunReport {
            command: argv.to_vec(),
            input_digest,
            algorithm: None,
            s: None,
            measure: None,
            witness: None,
            witness_file: None,
            stats: None,
            class_evidence: Vec::new(),
            warnings: Vec::new(),
            wall_time_ms: 0.0,
            exit_code: 0,
            error: None,
            precondition_witness: None,
        }
    }

    pub fn succeed(&mut self, sol: &SolutionCover, start: Instant) {
        self.algorithm = Some(sol.algorithm().to_string());
        self.measure = Some(sol.measure().to_string());
        self.witness = Some(one_based(&sol.vertices().to_vec()));
        self.stats = Some(sol.provenance.stats.clone());
        self.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    }

    pub fn fail(&mut self, err: &anyhow::Error, start: Instant) {
        let failure = Failure::classify(err);
        self.exit_code = failure.code();
        self.error = Some(format!("{err:#}"));
        self.precondition_witness = failure.witness().map(one_based);
        self.measure = None;
        self.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub command: Vec<String>,
    pub property: String,
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}
