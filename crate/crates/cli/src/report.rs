use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Target {
    pub group: String,
    pub p: u32,
    pub d: u32,
    pub block: Option<usize>,
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} p={} d={}", self.group, self.p, self.d)?;
        if let Some(b) = self.block {
            write!(f, " block {b}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub target: Target,
    pub status: Status,
    pub witnesses: Vec<String>,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl CheckRecord {
    pub fn line(&self) -> String {
        let mut s = format!("{} {} [{}]", self.status.tag(), self.name, self.target);
        if let Some(w) = self.witnesses.first() {
            s.push_str(": ");
            s.push_str(w);
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub version: String,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new(checks: Vec<CheckRecord>) -> VerificationReport {
        VerificationReport {
            version: env!("CARGO_PKG_VERSION").to_string(),
            checks,
        }
    }

    /// 0 when everything passed, 1 on any failure, 2 when only skips remain.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            1
        } else if self.checks.iter().any(|c| c.status == Status::Skipped) {
            2
        } else {
            0
        }
    }

    pub fn summary(&self) -> String {
        let mut out: String = self.checks.iter().map(|c| c.line() + "\n").collect();
        let count = |s| self.checks.iter().filter(|c| c.status == s).count();
        out.push_str(&format!(
            "{} passed, {} failed, {} skipped\n",
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skipped)
        ));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}
