//! Structured check reports shared by every law suite.
//!
//! A [`Report`] is a titled list of [`Check`]s; each check counts the
//! instances it evaluated and keeps the first few failing instances as
//! concrete [`Witness`]es. Reports render to a stable plain-text form
//! and serialize to JSON.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::weight::{format_weight, Weight};

/// Witnesses kept per check; failures beyond this are only counted.
pub const MAX_WITNESSES: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    pub witnesses: Vec<Witness>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            instances: 0,
            failures: 0,
            witnesses: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Counts one instance; records a witness when `lhs != rhs`.
    pub fn expect_eq<T: PartialEq + Render>(
        &mut self,
        input: impl FnOnce() -> String,
        lhs: &T,
        rhs: &T,
    ) -> bool {
        let ok = lhs == rhs;
        self.expect(ok, || Witness {
            input: input(),
            lhs: lhs.render(),
            rhs: rhs.render(),
        })
    }

    pub fn expect(&mut self, ok: bool, witness: impl FnOnce() -> Witness) -> bool {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
        ok
    }

    /// Counts a failure that is not an equation, e.g. an evaluation error.
    pub fn fail(&mut self, input: impl Into<String>, reason: impl Into<String>) {
        self.expect(false, || Witness {
            input: input.into(),
            lhs: reason.into(),
            rhs: String::new(),
        });
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("reports serialize")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {}", self.title)?;
        for c in &self.checks {
            if c.passed() {
                writeln!(f, "PASS  {}  ({} instances)", c.name, c.instances)?;
            } else {
                writeln!(
                    f,
                    "FAIL  {}  ({} instances, {} failures)",
                    c.name, c.instances, c.failures
                )?;
                for w in &c.witnesses {
                    writeln!(f, "      input: {}", w.input)?;
                    writeln!(f, "      lhs:   {}", w.lhs)?;
                    if !w.rhs.is_empty() {
                        writeln!(f, "      rhs:   {}", w.rhs)?;
                    }
                }
            }
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

/// Compact human-readable rendering used in witnesses.
pub trait Render {
    fn render(&self) -> String;
}

macro_rules! render_via_display {
    ($($t:ty),*) => {
        $(impl Render for $t {
            fn render(&self) -> String {
                self.to_string()
            }
        })*
    };
}

render_via_display!(u8, u16, u32, u64, usize, i32, i64, bool, char, String, str);

impl Render for () {
    fn render(&self) -> String {
        "*".to_string()
    }
}

impl Render for Weight {
    fn render(&self) -> String {
        format_weight(self)
    }
}

impl<T: Render + ?Sized> Render for &T {
    fn render(&self) -> String {
        (**self).render()
    }
}

impl<A: Render, B: Render> Render for (A, B) {
    fn render(&self) -> String {
        format!("({},{})", self.0.render(), self.1.render())
    }
}

impl<T: Render> Render for Option<T> {
    fn render(&self) -> String {
        match self {
            Some(x) => x.render(),
            None => "⊥".to_string(),
        }
    }
}

impl<T: Render> Render for Vec<T> {
    fn render(&self) -> String {
        let parts: Vec<String> = self.iter().map(Render::render).collect();
        format!("[{}]", parts.join(", "))
    }
}

impl<T: Render> Render for BTreeSet<T> {
    fn render(&self) -> String {
        let parts: Vec<String> = self.iter().map(Render::render).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl<K: Render, V: Render> Render for BTreeMap<K, V> {
    fn render(&self) -> String {
        let parts: Vec<String> = self
            .iter()
            .map(|(k, v)| format!("{}*{}", v.render(), k.render()))
            .collect();
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witnesses_are_capped_but_counted() {
        let mut c = Check::new("eq");
        for i in 0..10u32 {
            c.expect_eq(|| i.to_string(), &i, &(i + 1));
        }
        assert_eq!(c.instances, 10);
        assert_eq!(c.failures, 10);
        assert_eq!(c.witnesses.len(), MAX_WITNESSES);
        assert_eq!(c.witnesses[0].lhs, "0");
        assert_eq!(c.witnesses[0].rhs, "1");
    }

    #[test]
    fn text_rendering() {
        let mut r = Report::new("demo");
        let mut ok = Check::new("ok");
        ok.expect_eq(String::new, &1u8, &1u8);
        r.push(ok);
        let mut bad = Check::new("bad");
        bad.expect_eq(|| "x".into(), &1u8, &2u8);
        r.push(bad);
        r.note("hello");
        let text = r.to_string();
        assert_eq!(
            text,
            "# demo\nPASS  ok  (1 instances)\nFAIL  bad  (1 instances, 1 failures)\n      input: x\n      lhs:   1\n      rhs:   2\nnote: hello\n"
        );
        assert!(!r.passed());
        assert_eq!(r.to_json()["checks"][1]["failures"], 1);
    }
}
