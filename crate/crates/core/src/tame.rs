//! Tame symbol of a pair of rational functions at coordinate primes, and its
//! composition with div into the group of height-two cycles.

use crate::cycle::{Cycle, PrimeRep};
use crate::error::{Error, Result};
use crate::factored::FracElement;
use crate::length::CoordinatePrime;
use crate::poly::Poly;
use crate::primes::HeightOnePrime;

/// One tame-symbol value: the residue of the unit
/// (-1)^{mn} alpha^n / beta^m at the prime, where m, n are the orders of
/// alpha and beta there.
#[derive(Debug, Clone)]
pub struct TameEntry {
    pub prime: HeightOnePrime,
    pub ord_alpha: i64,
    pub ord_beta: i64,
    /// A rational function in the variables away from the prime; the sign
    /// sits in its unit.
    pub residue: FracElement,
}

/// Tame-symbol values at every coordinate prime where either argument has a
/// nonzero order, in variable order.
#[derive(Debug, Clone)]
pub struct TameOutput {
    pub entries: Vec<TameEntry>,
}

/// Reduce a unit at the coordinate prime (var i) by substituting the
/// variable to zero factor by factor.
fn residue_at(gamma: &FracElement, i: usize, negate: bool) -> Result<FracElement> {
    let vars = gamma.vars();
    let mut factors = Vec::with_capacity(gamma.factors().len());
    for (p, e) in gamma.factors() {
        let q = p.subst_zero(i);
        if q.is_zero() {
            return Err(Error::ResidueVanishes(format!(
                "{} vanishes modulo ({})",
                p,
                vars.name(i)
            )));
        }
        factors.push((q, *e));
    }
    let unit = if negate { -gamma.unit().clone() } else { gamma.unit().clone() };
    FracElement::new_asserted(vars, unit, factors)
}

pub fn tame(alpha: &FracElement, beta: &FracElement) -> Result<TameOutput> {
    alpha.vars().same_as(beta.vars())?;
    let vars = alpha.vars();
    let mut entries = Vec::new();
    for i in 0..vars.len() {
        let gen = Poly::var(vars, i);
        let m = alpha.exp_of(&gen);
        let n = beta.exp_of(&gen);
        if m == 0 && n == 0 {
            continue;
        }
        // unit at the prime: the generator's exponents cancel, mn - nm = 0
        let gamma = alpha.pow(n).mul(&beta.pow(-m))?;
        let negate = (m & 1 == 1) && (n & 1 == 1);
        let residue = residue_at(&gamma, i, negate)?;
        entries.push(TameEntry {
            prime: HeightOnePrime::new(gen)?,
            ord_alpha: m,
            ord_beta: n,
            residue,
        });
    }
    Ok(TameOutput { entries })
}

/// Sum of the divisors of the tame residues, each taken over the quotient by
/// its prime and re-embedded on the pair of coordinates. The result is zero
/// whenever the symbol is defined; returning the computed sum keeps that a
/// checked fact rather than an assumption.
pub fn gersten_compose(alpha: &FracElement, beta: &FracElement) -> Result<Cycle> {
    let vars = alpha.vars();
    if vars.len() < 2 {
        return Err(Error::Precondition(
            "the composed target needs at least two variables".into(),
        ));
    }
    let out = tame(alpha, beta)?;
    let mut total = Cycle::zero(vars, vars.len() - 2);
    for entry in &out.entries {
        let i = entry
            .prime
            .as_var()
            .expect("tame output primes are coordinate");
        for (p, e) in entry.residue.factors() {
            let j = p.as_var().ok_or_else(|| {
                Error::NonMonomialLocalization(format!(
                    "residue factor {} at {} is not a coordinate",
                    p, entry.prime
                ))
            })?;
            let q = CoordinatePrime::new(vars, &[i, j])?;
            total.add_term(PrimeRep::coordinate(q), *e)?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_frac;
    use crate::vars::Vars;
    use num_traits::One;

    fn frac(vars: &Vars, s: &str) -> FracElement {
        parse_frac(vars, s).unwrap()
    }

    fn entry_strings(out: &TameOutput) -> Vec<String> {
        out.entries
            .iter()
            .map(|e| format!("{}: {}", e.prime, e.residue))
            .collect()
    }

    #[test]
    fn crossed_coordinates() {
        let vars = Vars::new(&["x", "y"]).unwrap();
        let out = tame(&frac(&vars, "x"), &frac(&vars, "y")).unwrap();
        assert_eq!(entry_strings(&out), vec!["(x): 1/y", "(y): x"]);
    }

    #[test]
    fn equal_arguments_give_sign() {
        let vars = Vars::new(&["x", "y"]).unwrap();
        let out = tame(&frac(&vars, "x"), &frac(&vars, "x")).unwrap();
        assert_eq!(entry_strings(&out), vec!["(x): -1"]);
    }

    #[test]
    fn mixed_orders() {
        let vars = Vars::new(&["x", "y", "z"]).unwrap();
        let out = tame(&frac(&vars, "x^2*y"), &frac(&vars, "z")).unwrap();
        assert_eq!(
            entry_strings(&out),
            vec!["(x): 1/z^2", "(y): 1/z", "(z): x^2*y"]
        );
    }

    #[test]
    fn negative_orders() {
        let vars = Vars::new(&["x", "y"]).unwrap();
        let out = tame(&frac(&vars, "1/x"), &frac(&vars, "y")).unwrap();
        assert_eq!(entry_strings(&out), vec!["(x): y", "(y): 1/x"]);
        assert_eq!(out.entries[0].ord_alpha, -1);
        // odd negative orders still flip the sign
        let out = tame(&frac(&vars, "1/x"), &frac(&vars, "x*y")).unwrap();
        assert_eq!(out.entries[0].residue.to_string(), "-y");
    }

    #[test]
    fn swapped_residues_multiply_to_one() {
        let vars = Vars::new(&["x", "y", "z"]).unwrap();
        let pairs = [
            ("x^3*y^2/z", "x*y*z^2"),
            ("x*y", "y*z"),
            ("x^2/y^3", "z"),
        ];
        for (a, b) in pairs {
            let ab = tame(&frac(&vars, a), &frac(&vars, b)).unwrap();
            let ba = tame(&frac(&vars, b), &frac(&vars, a)).unwrap();
            assert_eq!(ab.entries.len(), ba.entries.len());
            for (e1, e2) in ab.entries.iter().zip(ba.entries.iter()) {
                assert_eq!(e1.prime, e2.prime);
                let prod = e1.residue.mul(&e2.residue).unwrap();
                assert!(prod.unit().is_one() && prod.factors().is_empty(), "{}", prod);
            }
        }
    }

    #[test]
    fn multiplicative_in_first_argument() {
        let vars = Vars::new(&["x", "y", "z"]).unwrap();
        let a1 = frac(&vars, "x^2*y");
        let a2 = frac(&vars, "y/z^3");
        let b = frac(&vars, "x*z");
        let combined = tame(&a1.mul(&a2).unwrap(), &b).unwrap();
        let t1 = tame(&a1, &b).unwrap();
        let t2 = tame(&a2, &b).unwrap();
        for e in &combined.entries {
            let find = |t: &TameOutput| {
                t.entries
                    .iter()
                    .find(|f| f.prime == e.prime)
                    .map(|f| f.residue.clone())
                    .unwrap_or_else(|| FracElement::one(&vars))
            };
            let expect = find(&t1).mul(&find(&t2)).unwrap();
            assert_eq!(e.residue.to_string(), expect.to_string());
        }
    }

    #[test]
    fn vanishing_residue_rejected() {
        let vars = Vars::new(&["x", "y"]).unwrap();
        // a reducible factor slipped in by assertion vanishes modulo (x)
        let bad = FracElement::new_asserted(
            &vars,
            crate::rat::Rat::one(),
            vec![(crate::parse::parse_poly(&vars, "x*y + x").unwrap(), 1)],
        )
        .unwrap();
        assert!(matches!(
            tame(&bad, &frac(&vars, "x")),
            Err(Error::ResidueVanishes(_))
        ));
    }

    #[test]
    fn linear_factor_keeps_residue() {
        let vars = Vars::new(&["x", "y", "z"]).unwrap();
        let a = frac(&vars, "y + z");
        let out = tame(&a, &frac(&vars, "x")).unwrap();
        assert_eq!(entry_strings(&out), vec!["(x): (y + z)"]);
        // composing needs monomial residues
        assert!(matches!(
            gersten_compose(&a, &frac(&vars, "x")),
            Err(Error::NonMonomialLocalization(_))
        ));
    }

    #[test]
    fn composition_vanishes() {
        let vars = Vars::new(&["x", "y"]).unwrap();
        let c = gersten_compose(&frac(&vars, "x"), &frac(&vars, "y")).unwrap();
        assert!(c.is_zero());
        let c = gersten_compose(&frac(&vars, "x"), &frac(&vars, "x")).unwrap();
        assert!(c.is_zero());
        let vars = Vars::new(&["x", "y", "z"]).unwrap();
        let c = gersten_compose(&frac(&vars, "x^2*y/z"), &frac(&vars, "x*z")).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn composition_needs_two_variables() {
        let vars = Vars::new(&["x"]).unwrap();
        assert!(matches!(
            gersten_compose(&frac(&vars, "x"), &frac(&vars, "x")),
            Err(Error::Precondition(_))
        ));
    }
}
