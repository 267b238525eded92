//! Law-check reports shared by every verifier.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::base::{BaseCategory, GradedMorphism};
use crate::json::morphism_to_json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undetermined,
}

/// The offending tuple of a failed check, with the two unequal sides when there are any.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Witness {
    pub tuple: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Witness {
    pub fn tuple<I, S>(items: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        Witness { tuple: items.into_iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn sides(mut self, base: &BaseCategory, lhs: &GradedMorphism, rhs: &GradedMorphism) -> Self {
        self.lhs = Some(morphism_to_json(base, lhs));
        self.rhs = Some(morphism_to_json(base, rhs));
        self
    }
}

/// One law, aggregated over all instances that were checked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub law: String,
    pub anchor: String,
    pub status: Status,
    pub instances: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    pub fn new(law: impl Into<String>, anchor: impl Into<String>) -> Self {
        Check { law: law.into(), anchor: anchor.into(), status: Status::Pass, instances: 0, witness: None }
    }

    pub fn count(&mut self) {
        self.instances += 1;
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Records a failure; only the first witness is kept.
    pub fn fail(&mut self, w: Witness) {
        if self.status != Status::Fail {
            self.status = Status::Fail;
            self.witness = Some(w);
        }
    }

    pub fn undetermined(&mut self, w: Witness) {
        if self.status == Status::Pass {
            self.status = Status::Undetermined;
            self.witness = Some(w);
        }
    }

    /// Records one instance comparing two morphisms.
    pub fn compare(
        &mut self,
        base: &BaseCategory,
        tuple: impl FnOnce() -> Vec<String>,
        lhs: &GradedMorphism,
        rhs: &GradedMorphism,
    ) -> bool {
        self.count();
        if lhs == rhs {
            return true;
        }
        if self.status != Status::Fail {
            self.fail(Witness { tuple: tuple(), ..Default::default() }.sides(base, lhs, rhs));
        }
        false
    }

    /// Records one boolean instance.
    pub fn expect(&mut self, ok: bool, witness: impl FnOnce() -> Witness) -> bool {
        self.count();
        if !ok {
            self.fail(witness());
        }
        ok
    }

    /// Folds another tally of the same law into this one, keeping the earliest witness.
    pub fn absorb(&mut self, other: Check) {
        self.instances += other.instances;
        match other.status {
            Status::Pass => {}
            Status::Fail => {
                if let Some(w) = other.witness {
                    self.fail(w);
                }
            }
            Status::Undetermined => {
                if let Some(w) = other.witness {
                    self.undetermined(w);
                }
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn verdict(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.passed() {
            Status::Pass
        } else {
            Status::Undetermined
        }
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    pub fn check(&self, law: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.law == law)
    }

    /// Law ids of all checks that did not pass.
    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed()).map(|c| c.law.as_str()).collect()
    }
}

/// Compares two computed sides of a law instance; a computation error counts as a failure.
pub fn instance(
    base: &BaseCategory,
    tuple: impl FnOnce() -> Vec<String>,
    sides: impl FnOnce() -> crate::Result<(GradedMorphism, GradedMorphism)>,
) -> Option<Witness> {
    match sides() {
        Ok((l, r)) if l == r => None,
        Ok((l, r)) => Some(Witness { tuple: tuple(), ..Default::default() }.sides(base, &l, &r)),
        Err(e) => Some(Witness { tuple: tuple(), ..Default::default() }.note(e.to_string())),
    }
}

/// Boolean version of [`instance`].
pub fn holds(tuple: impl FnOnce() -> Vec<String>, ok: impl FnOnce() -> crate::Result<bool>) -> Option<Witness> {
    match ok() {
        Ok(true) => None,
        Ok(false) => Some(Witness { tuple: tuple(), ..Default::default() }),
        Err(e) => Some(Witness { tuple: tuple(), ..Default::default() }.note(e.to_string())),
    }
}

/// Evaluates every instance in parallel, then tallies in input order so the
/// recorded witness does not depend on scheduling.
pub fn sweep<T, F>(law: &str, anchor: &str, items: &[T], f: F) -> Check
where
    T: Sync,
    F: Fn(&T) -> Option<Witness> + Sync + Send,
{
    use rayon::prelude::*;
    let outcomes: Vec<Option<Witness>> = items.par_iter().map(f).collect();
    let mut check = Check::new(law, anchor);
    for o in outcomes {
        check.count();
        if let Some(w) = o {
            check.fail(w);
        }
    }
    check
}

/// Like [`instance`], for laws checked over many sub-instances: the closure
/// returns the first unequal pair, or `None` when all agree.
pub fn mismatch(
    base: &BaseCategory,
    tuple: impl FnOnce() -> Vec<String>,
    first: impl FnOnce() -> crate::Result<Option<(GradedMorphism, GradedMorphism)>>,
) -> Option<Witness> {
    match first() {
        Ok(None) => None,
        Ok(Some((l, r))) => Some(Witness { tuple: tuple(), ..Default::default() }.sides(base, &l, &r)),
        Err(e) => Some(Witness { tuple: tuple(), ..Default::default() }.note(e.to_string())),
    }
}
