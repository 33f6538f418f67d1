//! Oracles shared by the focused suites and the acceptance target.

#![allow(dead_code)]

pub mod appendix;
pub mod character;
pub mod klr;
pub mod paths;

/// Number of checks run and the description of every one that failed.
#[derive(Debug, Default)]
pub struct Report {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    pub fn fail(&mut self, msg: String) {
        self.checked += 1;
        self.failures.push(msg);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Panics with the first few failures.
    pub fn assert_passed(&self) {
        assert!(
            self.passed(),
            "{} of {} checks failed:\n{}",
            self.failures.len(),
            self.checked,
            self.failures.iter().take(20).cloned().collect::<Vec<_>>().join("\n")
        );
    }
}
