use std::borrow::Borrow;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NameError {
    #[error("name is empty")]
    Empty,
    #[error("name `{0}` must not begin with a digit")]
    LeadingDigit(String),
    #[error("name `{0}` contains `{1}`; only letters, digits and `_` are allowed")]
    BadChar(String, char),
}

/// Checks the token rule shared by morphism and object names.
pub fn check_token(s: &str) -> Result<(), NameError> {
    let mut chars = s.chars();
    match chars.next() {
        None => return Err(NameError::Empty),
        Some(c) if c.is_ascii_digit() => return Err(NameError::LeadingDigit(s.to_string())),
        _ => {}
    }
    if let Some(bad) = s.chars().find(|c| !(c.is_ascii_alphanumeric() || *c == '_')) {
        return Err(NameError::BadChar(s.to_string(), bad));
    }
    Ok(())
}

macro_rules! token_name {
    ($(#[$meta:meta])* $ty:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(try_from = "String", into = "String")]
        pub struct $ty(String);

        impl $ty {
            pub fn new(s: impl Into<String>) -> Result<Self, NameError> {
                let s = s.into();
                check_token(&s)?;
                Ok(Self(s))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl TryFrom<String> for $ty {
            type Error = NameError;
            fn try_from(s: String) -> Result<Self, NameError> {
                Self::new(s)
            }
        }

        impl TryFrom<&str> for $ty {
            type Error = NameError;
            fn try_from(s: &str) -> Result<Self, NameError> {
                Self::new(s)
            }
        }

        impl From<$ty> for String {
            fn from(n: $ty) -> String {
                n.0
            }
        }

        impl Borrow<str> for $ty {
            fn borrow(&self) -> &str {
                &self.0
            }
        }

        impl AsRef<str> for $ty {
            fn as_ref(&self) -> &str {
                &self.0
            }
        }

        impl PartialEq<str> for $ty {
            fn eq(&self, other: &str) -> bool {
                self.0 == other
            }
        }

        impl PartialEq<&str> for $ty {
            fn eq(&self, other: &&str) -> bool {
                self.0 == *other
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{:?}", self.0)
            }
        }
    };
}

token_name!(
    /// Name of a morphism: letters, digits and `_`, not starting with a digit.
    MorphismName
);
token_name!(
    /// Name of an object in the objects-and-arrows presentation.
    ObjectName
);

/// Builds a name from a literal known to be well formed.
///
/// Panics on a malformed literal; intended for fixtures and generators.
pub fn mname(s: &str) -> MorphismName {
    MorphismName::new(s).unwrap_or_else(|e| panic!("bad morphism name literal: {e}"))
}

pub fn oname(s: &str) -> ObjectName {
    ObjectName::new(s).unwrap_or_else(|e| panic!("bad object name literal: {e}"))
}
