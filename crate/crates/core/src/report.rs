//! Residual bookkeeping shared by the relation checkers.

use crate::scalar::Real;

/// Whether a relation was checked on the whole space or under the
/// boundary-safe two-sided projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Full,
    Window,
}

impl Scope {
    pub fn tag(self) -> &'static str {
        match self {
            Scope::Full => "full",
            Scope::Window => "window",
        }
    }
}

/// One identity `LHS = RHS` evaluated as `max |LHS - RHS|`.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationCheck<T> {
    pub name: String,
    pub scope: Scope,
    pub residual: T,
    pub tolerance: T,
}

impl<T: Real> RelationCheck<T> {
    pub fn new(name: impl Into<String>, scope: Scope, residual: T, tolerance: T) -> Self {
        Self {
            name: name.into(),
            scope,
            residual,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.residual.is_finite() && self.residual <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RelationReport<T> {
    pub checks: Vec<RelationCheck<T>>,
}

impl<T: Real> RelationReport<T> {
    pub fn push(&mut self, check: RelationCheck<T>) {
        self.checks.push(check);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(RelationCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck<T>> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn max_residual(&self) -> T {
        self.checks.iter().fold(T::zero(), |m, c| m.max(c.residual))
    }

    pub fn find(&self, name: &str, scope: Scope) -> Option<&RelationCheck<T>> {
        self.checks.iter().find(|c| c.name == name && c.scope == scope)
    }
}
