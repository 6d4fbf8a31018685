//! Report entries with a three-valued status, rendered as text or
//! serialized by the front-end.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "witness")]
pub enum Status {
    Certified,
    Rejected(String),
    Bounded,
}

impl Status {
    /// Rejection dominates, then bounded evidence.
    pub fn combine<'a>(it: impl IntoIterator<Item = &'a Status>) -> Status {
        let mut out = Status::Certified;
        for s in it {
            match s {
                Status::Rejected(_) => return s.clone(),
                Status::Bounded => out = Status::Bounded,
                Status::Certified => {}
            }
        }
        out
    }

    pub fn from_bool(ok: bool, witness: impl FnOnce() -> String) -> Status {
        if ok {
            Status::Certified
        } else {
            Status::Rejected(witness())
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Status::Certified => "certified",
            Status::Rejected(_) => "rejected",
            Status::Bounded => "bounded-evidence",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Certified => 0,
            Status::Rejected(_) => 2,
            Status::Bounded => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub claim: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub title: String,
    pub lines: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub fixture: String,
    pub config: crate::pipeline::Config,
    pub entries: Vec<Entry>,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: &str, fixture: &str, config: &crate::pipeline::Config) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            fixture: fixture.into(),
            config: config.clone(),
            entries: Vec::new(),
            sections: Vec::new(),
        }
    }

    pub fn push(&mut self, claim: &str, status: Status, detail: impl Into<String>) {
        self.entries.push(Entry { claim: claim.into(), status, detail: detail.into() });
    }

    pub fn check(&mut self, claim: &str, ok: bool, detail: impl Into<String>) {
        let detail = detail.into();
        let status = Status::from_bool(ok, || detail.clone());
        self.push(claim, status, detail);
    }

    pub fn section(&mut self, title: &str, lines: Vec<String>) {
        self.sections.push(Section { title: title.into(), lines });
    }

    pub fn overall(&self) -> Status {
        Status::combine(self.entries.iter().map(|e| &e.status))
    }

    pub fn exit_code(&self) -> i32 {
        self.overall().exit_code()
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("lcsc report (schema {})\ncommand: {}\nfixture: {}\n", self.schema_version, self.command, self.fixture);
        out.push_str(&format!(
            "config: depth={} levels={} tol={:e} seed={}\n",
            self.config.depth, self.config.levels, self.config.tol, self.config.seed
        ));
        for s in &self.sections {
            out.push_str(&format!("\n== {} ==\n", s.title));
            for l in &s.lines {
                out.push_str(l);
                out.push('\n');
            }
        }
        out.push_str("\n== verdicts ==\n");
        for e in &self.entries {
            out.push_str(&format!("[{}] {}: {}\n", e.status.tag(), e.claim, e.detail));
            if let Status::Rejected(w) = &e.status {
                if w != &e.detail {
                    out.push_str(&format!("    witness: {w}\n"));
                }
            }
        }
        out.push_str(&format!("\noverall: {}\n", self.overall().tag()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combine_order() {
        let s = [Status::Certified, Status::Bounded, Status::Rejected("w".into())];
        assert_eq!(Status::combine(&s), Status::Rejected("w".into()));
        assert_eq!(Status::combine(&s[..2]), Status::Bounded);
        assert_eq!(Status::combine(&[]), Status::Certified);
    }
}
