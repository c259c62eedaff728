//! Cycles on the spectrum of a polynomial ring and the two operations the
//! calculus is built from: the divisor of a (fraction of) factored elements
//! on an integral closed subscheme, and intersection of a principal divisor
//! with a cycle. Coefficients are integers; each cycle is homogeneous in
//! dimension, tracked as its grade.

use crate::error::{Error, Result};
use crate::factored::{FactoredElement, FracElement};
use crate::length::{common_rational_points, coord_local_length, plane_mult, rational_roots, CoordinatePrime, Length, PointPrime};
use crate::poly::Poly;
use crate::primes::HeightOnePrime;
use crate::vars::Vars;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// The primes that can appear as cycle components. The representation is
/// closed under the supported operations; anything that would leave it is
/// reported as unsupported rather than approximated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeRep {
    /// The zero ideal: the class of the whole ring.
    Unit,
    /// Generated by a subset of the variables.
    Coordinate(CoordinatePrime),
    /// Principal, with a non-monomial irreducible generator.
    Principal(HeightOnePrime),
    /// A rational point of the plane (two-variable contexts only).
    Point(PointPrime),
}

impl PrimeRep {
    /// Canonical form of a height-one prime: single variables become
    /// coordinate primes.
    pub fn principal(p: HeightOnePrime) -> PrimeRep {
        match p.as_var() {
            Some(i) => {
                let q = CoordinatePrime::new(p.vars(), &[i]).expect("variable index is valid");
                PrimeRep::Coordinate(q)
            }
            None => PrimeRep::Principal(p),
        }
    }

    /// Canonical form of a coordinate prime: in the plane, the full
    /// coordinate prime is the origin.
    pub fn coordinate(q: CoordinatePrime) -> PrimeRep {
        if q.vars().len() == 2 && q.height() == 2 {
            PrimeRep::Point(PointPrime::origin())
        } else {
            PrimeRep::Coordinate(q)
        }
    }

    /// Dimension of the component in an n-variable context.
    pub fn dimension(&self, n: usize) -> usize {
        match self {
            PrimeRep::Unit => n,
            PrimeRep::Coordinate(q) => n - q.height(),
            PrimeRep::Principal(_) => n - 1,
            PrimeRep::Point(_) => 0,
        }
    }

    /// Whether the element lies in the prime.
    pub fn contains(&self, x: &FactoredElement) -> bool {
        match self {
            PrimeRep::Unit => false,
            PrimeRep::Coordinate(q) => x.factors().iter().any(|(f, _)| match f.as_var() {
                Some(i) => q.contains(i),
                None => f.in_coordinate_ideal(q.members()),
            }),
            PrimeRep::Principal(p) => x.exp_of(p.generator()) > 0,
            PrimeRep::Point(at) => {
                let point = vec![at.x.clone(), at.y.clone()];
                x.expand().eval(&point).is_zero()
            }
        }
    }

    fn rank(&self) -> u8 {
        match self {
            PrimeRep::Unit => 0,
            PrimeRep::Coordinate(_) => 1,
            PrimeRep::Principal(_) => 2,
            PrimeRep::Point(_) => 3,
        }
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, vars: &Vars) -> fmt::Result {
        match self {
            PrimeRep::Unit => write!(f, "[A]"),
            PrimeRep::Coordinate(q) => write!(f, "[A/{q}]"),
            PrimeRep::Principal(p) => write!(f, "[A/{p}]"),
            PrimeRep::Point(at) => {
                let gx = Poly::var(vars, 0).sub_ref(&Poly::constant(vars, at.x.clone()));
                let gy = Poly::var(vars, 1).sub_ref(&Poly::constant(vars, at.y.clone()));
                write!(f, "[A/({gx},{gy})]")
            }
        }
    }
}

impl Ord for PrimeRep {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank()).then_with(|| match (self, other) {
            (PrimeRep::Unit, PrimeRep::Unit) => std::cmp::Ordering::Equal,
            (PrimeRep::Coordinate(a), PrimeRep::Coordinate(b)) => a.members().cmp(b.members()),
            (PrimeRep::Principal(a), PrimeRep::Principal(b)) => a.cmp(b),
            (PrimeRep::Point(a), PrimeRep::Point(b)) => a.cmp(b),
            _ => unreachable!("equal ranks"),
        })
    }
}

impl PartialOrd for PrimeRep {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// An integer combination of components of one dimension.
#[derive(Debug, Clone, Eq)]
pub struct Cycle {
    vars: Vars,
    grade: usize,
    terms: BTreeMap<PrimeRep, i64>,
}

impl PartialEq for Cycle {
    fn eq(&self, other: &Self) -> bool {
        // zero cycles of different grades are still both zero
        self.vars == other.vars
            && self.terms == other.terms
            && (self.grade == other.grade || self.terms.is_empty())
    }
}

impl Cycle {
    pub fn zero(vars: &Vars, grade: usize) -> Cycle {
        Cycle {
            vars: vars.clone(),
            grade,
            terms: BTreeMap::new(),
        }
    }

    /// The class of the whole ring.
    pub fn fundamental(vars: &Vars) -> Cycle {
        let mut c = Cycle::zero(vars, vars.len());
        c.terms.insert(PrimeRep::Unit, 1);
        c
    }

    pub fn from_terms(vars: &Vars, grade: usize, terms: Vec<(PrimeRep, i64)>) -> Result<Cycle> {
        let mut c = Cycle::zero(vars, grade);
        for (rep, coeff) in terms {
            c.add_term(rep, coeff)?;
        }
        Ok(c)
    }

    /// Adds `coeff` times the component, checking it has the right
    /// dimension.
    pub fn add_term(&mut self, rep: PrimeRep, coeff: i64) -> Result<()> {
        if rep.dimension(self.vars.len()) != self.grade {
            return Err(Error::GradeMismatch {
                left: self.grade,
                right: rep.dimension(self.vars.len()),
            });
        }
        if coeff == 0 {
            return Ok(());
        }
        let new = self
            .coefficient_of(&rep)
            .checked_add(coeff)
            .expect("coefficient overflow");
        if new == 0 {
            self.terms.remove(&rep);
        } else {
            self.terms.insert(rep, new);
        }
        Ok(())
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PrimeRep, i64)> {
        self.terms.iter().map(|(r, &c)| (r, c))
    }

    pub fn coefficient_of(&self, rep: &PrimeRep) -> i64 {
        self.terms.get(rep).copied().unwrap_or(0)
    }

    pub fn try_add(&self, other: &Cycle) -> Result<Cycle> {
        self.merge(other, 1)
    }

    pub fn try_sub(&self, other: &Cycle) -> Result<Cycle> {
        self.merge(other, -1)
    }

    fn merge(&self, other: &Cycle, sign: i64) -> Result<Cycle> {
        self.vars.same_as(&other.vars)?;
        if self.grade != other.grade && !self.is_zero() && !other.is_zero() {
            return Err(Error::GradeMismatch {
                left: self.grade,
                right: other.grade,
            });
        }
        let grade = if self.is_zero() { other.grade } else { self.grade };
        let mut out = Cycle::zero(&self.vars, grade);
        for (rep, c) in self.terms() {
            out.add_term(rep.clone(), c)?;
        }
        for (rep, c) in other.terms() {
            out.add_term(rep.clone(), sign.checked_mul(c).expect("coefficient overflow"))?;
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Cycle {
        let mut out = Cycle::zero(&self.vars, self.grade);
        if k == 0 {
            return out;
        }
        for (rep, c) in self.terms() {
            out.add_term(rep.clone(), c.checked_mul(k).expect("coefficient overflow"))
                .expect("same dimension");
        }
        out
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (rep, coeff)) in self.terms.iter().enumerate() {
            let mag = coeff.unsigned_abs();
            if k == 0 {
                if *coeff < 0 {
                    write!(f, "-")?;
                }
            } else if *coeff < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{mag}*")?;
            rep.fmt_with(f, &self.vars)?;
        }
        Ok(())
    }
}

pub fn cycle_add(a: &Cycle, b: &Cycle) -> Result<Cycle> {
    a.try_add(b)
}

pub fn cycle_sub(a: &Cycle, b: &Cycle) -> Result<Cycle> {
    a.try_sub(b)
}

pub fn cycle_scale(a: &Cycle, k: i64) -> Cycle {
    a.scale(k)
}

fn length_coeff(l: Length) -> Result<i64> {
    match l {
        Length::Finite(n) => Ok(i64::try_from(n).expect("length fits a coefficient")),
        Length::Infinite => Err(Error::Precondition(
            "a divisor coefficient came out infinite, the element vanishes on the component".into(),
        )),
    }
}

/// The divisor cycle of a factored element on the component cut out by the
/// prime: the codimension-one cycle whose coefficient at each prime above
/// the base is the length of the localized quotient.
pub fn div_cycle(base: &PrimeRep, x: &FactoredElement) -> Result<Cycle> {
    let vars = x.vars().clone();
    let n = vars.len();
    let dim = base.dimension(n);
    if dim == 0 {
        return Err(Error::Unsupported(
            "a zero-dimensional component has no divisors".into(),
        ));
    }
    if base.contains(x) {
        return Err(Error::ElementInPrime);
    }
    let grade = dim - 1;
    let mut out = Cycle::zero(&vars, grade);
    if x.is_unit() {
        return Ok(out);
    }
    match base {
        PrimeRep::Unit => {
            for (fac, e) in x.factors() {
                let p = HeightOnePrime::new_asserted(fac.clone())?;
                out.add_term(PrimeRep::principal(p), i64::from(*e))?;
            }
            Ok(out)
        }
        PrimeRep::Coordinate(q) => {
            if x.is_monomial() {
                for (fac, _) in x.factors() {
                    let w = fac.as_var().expect("monomial element has variable factors");
                    debug_assert!(!q.contains(w));
                    let mut members = q.members().to_vec();
                    members.push(w);
                    let above = CoordinatePrime::new(&vars, &members)?;
                    let mut gens: Vec<FactoredElement> = q
                        .generators()
                        .into_iter()
                        .map(|g| FactoredElement::new(&vars, crate::rat::rat_int(1), vec![(g, 1)]))
                        .collect::<Result<_>>()?;
                    gens.push(x.clone());
                    let len = coord_local_length(&above, &gens)?;
                    out.add_term(PrimeRep::coordinate(above), length_coeff(len)?)?;
                }
                Ok(out)
            } else if n == 2 {
                // the base is an axis of the plane; restrict and read off
                // root multiplicities
                debug_assert_eq!(q.height(), 1);
                let axis = q.members()[0];
                let free = 1 - axis;
                let image = x.expand().subst_zero(axis);
                debug_assert!(!image.is_zero());
                if image.as_constant().is_some() {
                    return Ok(out);
                }
                let (roots, residual) = rational_roots(&image, free)?;
                if residual > 0 {
                    return Err(Error::IrrationalIntersection(format!(
                        "the restriction {image} keeps a factor of degree {residual} with no rational root"
                    )));
                }
                for (root, mult) in roots {
                    let at = if axis == 0 {
                        PointPrime::new(crate::rat::rat_int(0), root)
                    } else {
                        PointPrime::new(root, crate::rat::rat_int(0))
                    };
                    out.add_term(PrimeRep::Point(at), i64::from(mult))?;
                }
                Ok(out)
            } else {
                Err(Error::Unsupported(format!(
                    "cannot decompose the divisor of the non-monomial element {x} on [A/{q}] outside the plane"
                )))
            }
        }
        PrimeRep::Principal(p) => {
            if n != 2 {
                return Err(Error::Unsupported(format!(
                    "cannot decompose divisors on the non-coordinate component [A/{p}] outside the plane"
                )));
            }
            let g = p.generator();
            let xp = x.expand();
            let points = common_rational_points(g, &xp)?;
            for at in points {
                let len = plane_mult(g, &xp, &at)?;
                out.add_term(PrimeRep::Point(at), length_coeff(len)?)?;
            }
            Ok(out)
        }
        PrimeRep::Point(_) => unreachable!("points have dimension zero"),
    }
}

/// Divisor of a fraction: divisor of the numerator minus divisor of the
/// denominator.
pub fn div_frac(base: &PrimeRep, x: &FracElement) -> Result<Cycle> {
    let num = div_cycle(base, &x.num_part())?;
    let den = div_cycle(base, &x.den_part())?;
    num.try_sub(&den)
}

/// Divisor of a fraction given as a pair of factored elements.
pub fn div_pair(base: &PrimeRep, num: &FactoredElement, den: &FactoredElement) -> Result<Cycle> {
    div_frac(base, &FracElement::ratio(num, den)?)
}

/// Intersection of the principal divisor of `u` with a cycle: on components
/// where `u` vanishes identically the contribution is zero, elsewhere it is
/// the divisor of `u` on the component, weighted by the coefficient.
pub fn cap(u: &FactoredElement, alpha: &Cycle) -> Result<Cycle> {
    u.vars().same_as(alpha.vars())?;
    if alpha.grade() == 0 {
        return Err(Error::GradeMismatch {
            left: alpha.grade(),
            right: 1,
        });
    }
    let mut out = Cycle::zero(alpha.vars(), alpha.grade() - 1);
    for (rep, coeff) in alpha.terms() {
        if rep.contains(u) {
            continue;
        }
        let part = div_cycle(rep, u)?;
        out = out.try_add(&part.scale(coeff))?;
    }
    Ok(out)
}
