use crate::error::{Error, Result};
use crate::mono::Mono;
use crate::poly::Poly;
use crate::rat::{rat_display, Rat};
use crate::vars::Vars;
use num_traits::{One, Zero};
use std::fmt;

/// Nonzero ring element in factored canonical form: `unit * prod f_i^{e_i}`
/// with every `f_i` primitive (coprime integer coefficients, positive leading
/// coefficient), nonconstant, irreducible, pairwise distinct, exponents
/// positive, and the list sorted canonically. Irreducibility is verified
/// automatically for single variables and for polynomials of total degree 1;
/// anything else must come through the asserting constructor and is the
/// caller's claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredElement {
    vars: Vars,
    unit: Rat,
    factors: Vec<(Poly, u32)>,
}

/// Element of the fraction field in factored canonical form; same invariants
/// as [`FactoredElement`] except exponents are nonzero integers of either
/// sign. Always reduced: a factor appears once, with its net exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FracElement {
    vars: Vars,
    unit: Rat,
    factors: Vec<(Poly, i64)>,
}

fn rat_pow(base: &Rat, e: i64) -> Rat {
    let exp: i32 = e.unsigned_abs().try_into().expect("exponent too large");
    let mag = base.pow(exp);
    if e < 0 {
        mag.recip()
    } else {
        mag
    }
}

/// Shared canonicalization: absorbs constants and contents into the unit,
/// checks irreducibility, merges repeated factors, sorts.
fn normalize(
    vars: &Vars,
    unit: Rat,
    raw: Vec<(Poly, i64)>,
    asserted: bool,
) -> Result<(Rat, Vec<(Poly, i64)>)> {
    if unit.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut unit = unit;
    let mut merged: Vec<(Poly, i64)> = Vec::new();
    for (p, e) in raw {
        if e == 0 {
            continue;
        }
        vars.same_as(p.vars())?;
        if p.is_zero() {
            return Err(Error::ZeroElement);
        }
        if let Some(c) = p.as_constant() {
            unit *= rat_pow(&c, e);
            continue;
        }
        let (content, prim) = p.primitive_part()?;
        unit *= rat_pow(&content, e);
        // A monomial is a visible product of coordinate primes: split it.
        let parts: Vec<(Poly, i64)> = match prim.as_monomial() {
            Some((m, _)) => m
                .pairs()
                .iter()
                .map(|&(i, k)| (Poly::var(vars, i), e * i64::from(k)))
                .collect(),
            None => vec![(prim, e)],
        };
        for (part, e) in parts {
            let auto_ok = part.as_var().is_some() || part.total_degree() == Some(1);
            if !auto_ok && !asserted {
                return Err(Error::UnverifiedIrreducible(part.to_string()));
            }
            match merged.iter_mut().find(|(q, _)| *q == part) {
                Some((_, acc)) => *acc += e,
                None => merged.push((part, e)),
            }
        }
    }
    merged.retain(|&(_, e)| e != 0);
    merged.sort_by(|(a, _), (b, _)| b.cmp(a));
    Ok((unit, merged))
}

impl FactoredElement {
    pub fn new(vars: &Vars, unit: Rat, factors: Vec<(Poly, u32)>) -> Result<Self> {
        Self::build(vars, unit, factors, false)
    }

    /// Accepts factors of degree >= 2 on the caller's assertion that they are
    /// irreducible. Everything else is still canonicalized and checked.
    pub fn new_asserted(vars: &Vars, unit: Rat, factors: Vec<(Poly, u32)>) -> Result<Self> {
        Self::build(vars, unit, factors, true)
    }

    fn build(vars: &Vars, unit: Rat, factors: Vec<(Poly, u32)>, asserted: bool) -> Result<Self> {
        let raw = factors.into_iter().map(|(p, e)| (p, e as i64)).collect();
        let (unit, merged) = normalize(vars, unit, raw, asserted)?;
        let factors = merged
            .into_iter()
            .map(|(p, e)| {
                debug_assert!(e > 0);
                (p, e as u32)
            })
            .collect();
        Ok(FactoredElement {
            vars: vars.clone(),
            unit,
            factors,
        })
    }

    pub fn unit_elem(vars: &Vars, unit: Rat) -> Result<Self> {
        Self::new(vars, unit, Vec::new())
    }

    pub fn one(vars: &Vars) -> Self {
        FactoredElement {
            vars: vars.clone(),
            unit: Rat::one(),
            factors: Vec::new(),
        }
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        FactoredElement {
            vars: vars.clone(),
            unit: Rat::one(),
            factors: vec![(Poly::var(vars, i), 1)],
        }
    }

    pub fn monomial(vars: &Vars, unit: Rat, m: &Mono) -> Result<Self> {
        Self::new(
            vars,
            unit,
            m.pairs().iter().map(|&(i, e)| (Poly::var(vars, i), e)).collect(),
        )
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn unit(&self) -> &Rat {
        &self.unit
    }

    pub fn factors(&self) -> &[(Poly, u32)] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// All factors are single variables.
    pub fn is_monomial(&self) -> bool {
        self.factors.iter().all(|(p, _)| p.as_var().is_some())
    }

    /// Monomial view `(unit, mono)` when all factors are single variables.
    pub fn as_mono(&self) -> Option<(Rat, Mono)> {
        let mut pairs = Vec::with_capacity(self.factors.len());
        for (p, e) in &self.factors {
            pairs.push((p.as_var()?, *e));
        }
        Some((self.unit.clone(), Mono::from_pairs(&pairs)))
    }

    /// Exponent of the canonical factor `gen` (0 when absent).
    pub fn exp_of(&self, gen: &Poly) -> u32 {
        self.factors
            .iter()
            .find(|(p, _)| p == gen)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn expand(&self) -> Poly {
        let mut out = Poly::constant(&self.vars, self.unit.clone());
        for (p, e) in &self.factors {
            out = out.mul_ref(&p.pow(*e));
        }
        out
    }

    pub fn mul(&self, other: &FactoredElement) -> Result<FactoredElement> {
        self.vars.same_as(&other.vars)?;
        let mut factors: Vec<(Poly, u32)> = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Self::build(&self.vars, self.unit.clone() * other.unit.clone(), factors, true)
    }

    pub fn pow(&self, k: u32) -> FactoredElement {
        if k == 0 {
            return Self::one(&self.vars);
        }
        FactoredElement {
            vars: self.vars.clone(),
            unit: self.unit.pow(k as i32),
            factors: self.factors.iter().map(|(p, e)| (p.clone(), e * k)).collect(),
        }
    }

    pub fn to_frac(&self) -> FracElement {
        FracElement {
            vars: self.vars.clone(),
            unit: self.unit.clone(),
            factors: self.factors.iter().map(|(p, e)| (p.clone(), *e as i64)).collect(),
        }
    }

    /// Distinct variable indices appearing in the factors.
    pub fn var_indices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(p, _)| p.var_indices())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn fmt_factors(factors: &[(Poly, u32)]) -> String {
        factors
            .iter()
            .map(|(p, e)| {
                let base = if p.as_monomial().is_some() {
                    // single-variable factor: print bare
                    p.to_string()
                } else {
                    format!("({p})")
                };
                if *e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for FactoredElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", rat_display(&self.unit));
        }
        let tail = Self::fmt_factors(&self.factors);
        if self.unit.is_one() {
            write!(f, "{tail}")
        } else if self.unit == -Rat::one() {
            write!(f, "-{tail}")
        } else {
            write!(f, "{}*{tail}", rat_display(&self.unit))
        }
    }
}

impl FracElement {
    pub fn new_asserted(vars: &Vars, unit: Rat, factors: Vec<(Poly, i64)>) -> Result<Self> {
        let (unit, factors) = normalize(vars, unit, factors, true)?;
        Ok(FracElement {
            vars: vars.clone(),
            unit,
            factors,
        })
    }

    pub fn new(vars: &Vars, unit: Rat, factors: Vec<(Poly, i64)>) -> Result<Self> {
        let (unit, factors) = normalize(vars, unit, factors, false)?;
        Ok(FracElement {
            vars: vars.clone(),
            unit,
            factors,
        })
    }

    pub fn one(vars: &Vars) -> Self {
        FracElement {
            vars: vars.clone(),
            unit: Rat::one(),
            factors: Vec::new(),
        }
    }

    /// `num / den`, reduced by exponent cancellation.
    pub fn ratio(num: &FactoredElement, den: &FactoredElement) -> Result<FracElement> {
        num.vars.same_as(&den.vars)?;
        num.to_frac().mul(&den.to_frac().inv())
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn unit(&self) -> &Rat {
        &self.unit
    }

    pub fn factors(&self) -> &[(Poly, i64)] {
        &self.factors
    }

    pub fn is_monomial(&self) -> bool {
        self.factors.iter().all(|(p, _)| p.as_var().is_some())
    }

    pub fn exp_of(&self, gen: &Poly) -> i64 {
        self.factors
            .iter()
            .find(|(p, _)| p == gen)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &FracElement) -> Result<FracElement> {
        self.vars.same_as(&other.vars)?;
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Self::new_asserted(&self.vars, self.unit.clone() * other.unit.clone(), factors)
    }

    pub fn inv(&self) -> FracElement {
        FracElement {
            vars: self.vars.clone(),
            unit: self.unit.recip(),
            factors: self.factors.iter().map(|(p, e)| (p.clone(), -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> FracElement {
        if k == 0 {
            return Self::one(&self.vars);
        }
        FracElement {
            vars: self.vars.clone(),
            unit: rat_pow(&self.unit, k),
            factors: self.factors.iter().map(|(p, e)| (p.clone(), e * k)).collect(),
        }
    }

    /// Numerator part (factors with positive exponent); carries the unit.
    pub fn num_part(&self) -> FactoredElement {
        FactoredElement {
            vars: self.vars.clone(),
            unit: self.unit.clone(),
            factors: self
                .factors
                .iter()
                .filter(|(_, e)| *e > 0)
                .map(|(p, e)| (p.clone(), *e as u32))
                .collect(),
        }
    }

    /// Denominator part (factors with negative exponent, flipped); unit 1.
    pub fn den_part(&self) -> FactoredElement {
        FactoredElement {
            vars: self.vars.clone(),
            unit: Rat::one(),
            factors: self
                .factors
                .iter()
                .filter(|(_, e)| *e < 0)
                .map(|(p, e)| (p.clone(), e.unsigned_abs() as u32))
                .collect(),
        }
    }
}

impl fmt::Display for FracElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num_part();
        let den = self.den_part();
        if den.factors.is_empty() {
            return write!(f, "{num}");
        }
        let den_str = FactoredElement::fmt_factors(&den.factors);
        let den_str = if den.factors.len() > 1 {
            format!("({den_str})")
        } else {
            den_str
        };
        write!(f, "{num}/{den_str}")
    }
}
