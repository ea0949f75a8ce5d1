//! Pass/fail records shared by the checks, the identities report and the CLI.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), checked: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one comparison.
    pub fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Records one comparison of two displayable values.
    pub fn expect_eq<T: PartialEq + std::fmt::Display>(&mut self, label: &str, got: &T, want: &T) {
        self.expect(got == want, || format!("{label}: {got} ≠ {want}"));
    }

    pub fn absorb(&mut self, o: CheckReport) {
        self.checked += o.checked;
        self.failures.extend(o.failures.into_iter().map(|f| format!("{}: {f}", o.name)));
    }
}
