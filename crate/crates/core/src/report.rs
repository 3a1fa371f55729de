use std::fmt;

use serde::{Deserialize, Serialize};

use crate::name::MorphismName;

/// Reports keep at most this many violations.
pub const MAX_VIOLATIONS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    Functionality,
    AssociativityEqual,
    AssociativityExistence,
    IdentityMissing,
    IdentityNonneutral,
    IdentityNonunique,
    /// An arrow or composite sits in the wrong hom-class.
    Typing,
    /// A composable pair has no table entry.
    CompositionMissing,
    /// A map that must be total leaves something out.
    Totality,
    IdentityPreservation,
    CompositionPreservation,
    Naturality,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Functionality => "functionality",
            Self::AssociativityEqual => "associativity-equal",
            Self::AssociativityExistence => "associativity-existence",
            Self::IdentityMissing => "identity-missing",
            Self::IdentityNonneutral => "identity-nonneutral",
            Self::IdentityNonunique => "identity-nonunique",
            Self::Typing => "typing",
            Self::CompositionMissing => "composition-missing",
            Self::Totality => "totality",
            Self::IdentityPreservation => "identity-preservation",
            Self::CompositionPreservation => "composition-preservation",
            Self::Naturality => "naturality",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Up to three morphism names involved.
    pub witnesses: Vec<MorphismName>,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
    /// Set when violations were dropped past [`MAX_VIOLATIONS`].
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub truncated: bool,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self {
            ok: true,
            violations: Vec::new(),
            truncated: false,
        }
    }

    pub fn push(
        &mut self,
        kind: ViolationKind,
        witnesses: &[&MorphismName],
        message: impl Into<String>,
    ) {
        self.ok = false;
        if self.violations.len() >= MAX_VIOLATIONS {
            self.truncated = true;
            return;
        }
        self.violations.push(Violation {
            kind,
            witnesses: witnesses.iter().take(3).map(|w| (*w).clone()).collect(),
            message: message.into(),
        });
    }

    pub fn is_full(&self) -> bool {
        self.violations.len() >= MAX_VIOLATIONS
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub fn of_kind(&self, kind: ViolationKind) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.kind == kind)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        for v in other.violations {
            if self.is_full() {
                self.truncated = true;
                break;
            }
            self.ok = false;
            self.violations.push(v);
        }
        if other.truncated || !other.ok {
            self.ok = false;
        }
        self.truncated |= other.truncated;
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return f.write_str("ok");
        }
        writeln!(f, "{} violation(s)", self.violations.len())?;
        for v in &self.violations {
            let w: Vec<&str> = v.witnesses.iter().map(|n| n.as_str()).collect();
            writeln!(f, "  [{}] ({}) {}", v.kind, w.join(", "), v.message)?;
        }
        if self.truncated {
            writeln!(f, "  ... further violations omitted")?;
        }
        Ok(())
    }
}
