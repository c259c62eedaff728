use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// Ordered variable context of a polynomial ring. The declared order is the
/// canonical variable order for monomial comparison and printing. Cheap to
/// clone; equality compares the name lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vars(Arc<Vec<String>>);

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Vars {
    pub fn new(names: &[&str]) -> Result<Self> {
        Self::from_vec(names.iter().map(|s| s.to_string()).collect())
    }

    pub fn from_vec(names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::BadVars("empty variable list".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::BadVars(format!("`{n}` is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::BadVars(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Vars(Arc::new(names)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|s| s.as_str())
    }

    /// Context-mismatch check used at the public operation boundaries.
    pub fn same_as(&self, other: &Vars) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::VarMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_names() {
        assert!(Vars::new(&["x", "y2", "rho"]).is_ok());
        assert!(Vars::new(&[]).is_err());
        assert!(Vars::new(&["x", "x"]).is_err());
        assert!(Vars::new(&["2x"]).is_err());
        assert!(Vars::new(&["a b"]).is_err());
    }

    #[test]
    fn equality_is_by_content() {
        let a = Vars::new(&["x", "y"]).unwrap();
        let b = Vars::new(&["x", "y"]).unwrap();
        let c = Vars::new(&["y", "x"]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.same_as(&c).is_err());
    }
}
