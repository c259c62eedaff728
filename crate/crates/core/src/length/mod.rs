use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::{rat_display, Rat};
use crate::vars::Vars;
use std::fmt;

/// Module lengths at localized primes, with three back-ends:
/// staircase counts at coordinate primes, intersection multiplicities of
/// plane curves at rational points, and Smith normal form over Q[t]
/// localized at (t). Lengths are exact; infinity is a first-class value so
/// callers can distinguish "not finite" from "failed".

mod pid;
mod plane;
mod staircase;

pub use pid::{check_chi, check_det_length, pid_coker_length, ChiReport, DetReport, PIDMatrix};
pub use plane::{common_rational_points, plane_mult, rational_roots};
pub use staircase::coord_local_length;

/// A length: a nonnegative integer or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn is_finite(&self) -> bool {
        matches!(self, Length::Finite(_))
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self {
            Length::Finite(n) => Some(*n),
            Length::Infinite => None,
        }
    }

    pub fn add(self, other: Length) -> Length {
        match (self, other) {
            (Length::Finite(a), Length::Finite(b)) => {
                Length::Finite(a.checked_add(b).expect("length overflow"))
            }
            _ => Length::Infinite,
        }
    }

    pub fn scale(self, k: u64) -> Length {
        match self {
            Length::Finite(n) => Length::Finite(n.checked_mul(k).expect("length overflow")),
            Length::Infinite => {
                if k == 0 {
                    Length::Finite(0)
                } else {
                    Length::Infinite
                }
            }
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => write!(f, "∞"),
        }
    }
}

/// A prime generated by a subset of the variables. Members are kept sorted
/// and distinct.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoordinatePrime {
    vars: Vars,
    members: Vec<usize>,
}

impl CoordinatePrime {
    pub fn new(vars: &Vars, members: &[usize]) -> Result<CoordinatePrime> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::BadVars("a coordinate prime needs at least one variable".into()));
        }
        if let Some(&bad) = members.iter().find(|&&i| i >= vars.len()) {
            return Err(Error::BadVars(format!(
                "variable index {bad} out of range for context {vars}"
            )));
        }
        Ok(CoordinatePrime {
            vars: vars.clone(),
            members,
        })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, var: usize) -> bool {
        self.members.binary_search(&var).is_ok()
    }

    pub fn height(&self) -> usize {
        self.members.len()
    }

    pub fn generators(&self) -> Vec<Poly> {
        self.members.iter().map(|&i| Poly::var(&self.vars, i)).collect()
    }
}

impl fmt::Display for CoordinatePrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.members.iter().map(|&i| self.vars.name(i)).collect();
        write!(f, "({})", names.join(","))
    }
}

/// A rational point of the plane, standing for the maximal ideal
/// (first variable - x, second variable - y) in a two-variable context.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PointPrime {
    pub x: Rat,
    pub y: Rat,
}

impl PointPrime {
    pub fn new(x: Rat, y: Rat) -> PointPrime {
        PointPrime { x, y }
    }

    pub fn origin() -> PointPrime {
        PointPrime {
            x: Rat::from_integer(0.into()),
            y: Rat::from_integer(0.into()),
        }
    }
}

impl fmt::Display for PointPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", rat_display(&self.x), rat_display(&self.y))
    }
}
