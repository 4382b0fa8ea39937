use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

pub const EXIT_INVALID: u8 = 2;
pub const EXIT_CHECK_FAILED: u8 = 3;
pub const EXIT_UNDECIDED: u8 = 4;

/// A command failure with its process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INVALID, message: message.into() }
    }

    pub fn check_failed(message: impl Into<String>) -> Self {
        Failure { code: EXIT_CHECK_FAILED, message: message.into() }
    }

    pub fn undecided(message: impl Into<String>) -> Self {
        Failure { code: EXIT_UNDECIDED, message: message.into() }
    }

    /// Prefixes the message with the offending input.
    pub fn context(self, what: &str) -> Self {
        Failure { message: format!("{what}: {}", self.message), ..self }
    }
}

impl From<lpa_core::Error> for Failure {
    fn from(e: lpa_core::Error) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::invalid(e.to_string())
    }
}

pub type CmdResult<T = ()> = Result<T, Failure>;

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "state", rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error { code: u8, message: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub results: Value,
    pub status: Status,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            seed: None,
            results: Value::Null,
            status: Status::Ok,
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.to_string(), value.to_string());
    }

    /// Records a failure while keeping the results gathered so far.
    pub fn fail(&mut self, f: Failure) {
        if matches!(self.status, Status::Ok) {
            self.status = Status::Error { code: f.code, message: f.message };
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Ok => 0,
            Status::Error { code, .. } => code,
        }
    }
}

/// Writes through a sibling temporary file so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> CmdResult {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = Path::new(&tmp);
    let mut f = std::fs::File::create(tmp).map_err(|e| Failure::invalid(format!("{}: {e}", tmp.display())))?;
    f.write_all(contents.as_bytes())?;
    f.write_all(b"\n")?;
    f.sync_all()?;
    std::fs::rename(tmp, path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    Ok(())
}
