use super::{Length, PointPrime};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Intersection multiplicities of plane curves at rational points, and the
/// enumeration of rational common points via resultants.

fn require_plane(p: &Poly) -> Result<()> {
    if p.vars().len() != 2 {
        return Err(Error::BadVars(format!(
            "plane computations need exactly two variables, got {}",
            p.vars()
        )));
    }
    Ok(())
}

/// Multiplicity of the intersection of the curves f = 0 and g = 0 at a
/// rational point, infinite when a common component passes through it.
///
/// The computation translates the point to the origin and runs the standard
/// reduction: order of vanishing along an axis for axis factors, and a
/// Euclidean descent on the restrictions to the axis otherwise. Every step
/// preserves the multiplicity, and each extraction of the vertical axis
/// strictly drops it, so the recursion terminates.
pub fn plane_mult(f: &Poly, g: &Poly, at: &PointPrime) -> Result<Length> {
    require_plane(f)?;
    f.vars().same_as(g.vars())?;
    let f0 = f.translate(0, &at.x).translate(1, &at.y);
    let g0 = g.translate(0, &at.x).translate(1, &at.y);
    Ok(mult_origin(f0, g0))
}

/// Order of vanishing at 0 of the restriction to the first axis, i.e. of
/// p(x, 0) as a univariate polynomial. `None` when the restriction is zero.
fn axis_order(p: &Poly) -> Option<u32> {
    let r = p.subst_zero(1);
    if r.is_zero() {
        None
    } else {
        r.min_degree_in(0)
    }
}

fn mult_origin(mut f: Poly, mut g: Poly) -> Length {
    let origin = vec![Rat::zero(), Rat::zero()];
    let mut total: u64 = 0;
    loop {
        if f.is_zero() || g.is_zero() {
            return Length::Infinite;
        }
        if !f.eval(&origin).is_zero() || !g.eval(&origin).is_zero() {
            return Length::Finite(total);
        }
        match (axis_order(&f), axis_order(&g)) {
            (None, None) => {
                // both divisible by the second variable: common component
                return Length::Infinite;
            }
            (None, Some(k)) => {
                // f = y * h; the axis contributes ord of g's restriction
                total += u64::from(k);
                f = f
                    .div_exact(&Poly::var(f.vars(), 1))
                    .expect("vanishing restriction means divisibility");
            }
            (Some(k), None) => {
                total += u64::from(k);
                g = g
                    .div_exact(&Poly::var(g.vars(), 1))
                    .expect("vanishing restriction means divisibility");
            }
            (Some(_), Some(_)) => {
                // drop the higher restriction degree against the lower one
                let mut rf = f.subst_zero(1);
                let mut rg = g.subst_zero(1);
                if rf.degree_in(0) > rg.degree_in(0) {
                    std::mem::swap(&mut f, &mut g);
                    std::mem::swap(&mut rf, &mut rg);
                }
                let df = rf.degree_in(0).unwrap();
                let dg = rg.degree_in(0).unwrap();
                let cf = rf.coeffs_in_var(0).last().unwrap().as_constant().unwrap();
                let cg = rg.coeffs_in_var(0).last().unwrap().as_constant().unwrap();
                let shift = crate::mono::Mono::var_pow(0, dg - df);
                g = g.sub_ref(&f.mul_mono(&shift, &(cg / cf)));
            }
        }
    }
}

/// All rational common zeros of f and g, certified complete: errors rather
/// than silently dropping candidates it cannot resolve over the rationals.
pub fn common_rational_points(f: &Poly, g: &Poly) -> Result<Vec<PointPrime>> {
    require_plane(f)?;
    f.vars().same_as(g.vars())?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::Precondition(
            "the intersection of a zero polynomial is not finite".into(),
        ));
    }
    if f.as_constant().is_some() || g.as_constant().is_some() {
        return Ok(Vec::new());
    }
    let f_has = (f.involves_var(0), f.involves_var(1));
    let g_has = (g.involves_var(0), g.involves_var(1));

    // both free of the same variable: the zero sets are unions of parallel
    // lines, so the intersection is empty or positive-dimensional
    for v in 0..2 {
        let free = |has: (bool, bool)| if v == 0 { !has.0 } else { !has.1 };
        if free(f_has) && free(g_has) {
            let other = 1 - v;
            let r = crate::resultant::resultant(f, g, other)?;
            return if r.is_zero() {
                Err(Error::Precondition(
                    "the curves share a component, the intersection is not finite".into(),
                ))
            } else {
                Ok(Vec::new())
            };
        }
    }

    // resultants in each direction give complete candidate lists for the
    // other coordinate
    let res_y = crate::resultant::resultant(f, g, 1)?; // poly in x
    let res_x = crate::resultant::resultant(f, g, 0)?; // poly in y
    if res_y.is_zero() || res_x.is_zero() {
        return Err(Error::Precondition(
            "the curves share a component, the intersection is not finite".into(),
        ));
    }
    let xs = coordinate_candidates(&res_y, 0)?;
    let ys = coordinate_candidates(&res_x, 1)?;

    let mut out = Vec::new();
    for a in &xs {
        for b in &ys {
            let point = vec![a.clone(), b.clone()];
            if f.eval(&point).is_zero() && g.eval(&point).is_zero() {
                out.push(PointPrime::new(a.clone(), b.clone()));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Rational roots of a resultant, with the guarantee that no root was
/// missed: a nonconstant residual after extraction is rejected, because an
/// unresolved factor could hide a coordinate of a common point.
fn coordinate_candidates(r: &Poly, var: usize) -> Result<Vec<Rat>> {
    let (roots, residual_degree) = rational_roots(r, var)?;
    if residual_degree > 0 {
        return Err(Error::IrrationalIntersection(format!(
            "cannot certify the candidate coordinates: {r} keeps a factor of degree {residual_degree} with no rational root"
        )));
    }
    Ok(roots.into_iter().map(|(root, _)| root).collect())
}

/// Rational roots of a univariate polynomial with their multiplicities,
/// together with the degree of the part left after dividing all of them
/// out.
///
/// Roots are found by trial division over divisors of the extreme integer
/// coefficients; coefficients too large to factor by trial division are
/// reported as unsupported rather than risking a missed root.
pub fn rational_roots(p: &Poly, var: usize) -> Result<(Vec<(Rat, u32)>, usize)> {
    if p.is_zero() {
        return Err(Error::ZeroElement);
    }
    for i in p.var_indices() {
        if i != var {
            return Err(Error::BadVars(format!(
                "expected a polynomial in {} alone, got {p}",
                p.vars().name(var)
            )));
        }
    }
    let (_, prim) = p.primitive_part()?;
    let mut coeffs: Vec<BigInt> = prim
        .coeffs_in_var(var)
        .iter()
        .map(|c| {
            let r = c.as_constant().unwrap_or_else(Rat::zero);
            debug_assert!(r.is_integer());
            r.to_integer()
        })
        .collect();
    let mut roots: Vec<(Rat, u32)> = Vec::new();
    // factor out powers of the variable itself
    let k = coeffs.iter().take_while(|c| c.is_zero()).count();
    if k > 0 {
        roots.push((Rat::zero(), k as u32));
        coeffs.drain(..k);
    }

    // candidates p/q with p | constant term, q | leading term
    let lead = coeffs.last().unwrap().clone();
    let konst = coeffs.first().unwrap().clone();
    if coeffs.len() > 1 {
        let ps = divisors_checked(&konst)?;
        let qs = divisors_checked(&lead)?;
        let mut candidates: Vec<Rat> = Vec::new();
        for num in &ps {
            for den in &qs {
                let c = Rat::new(num.clone(), den.clone());
                candidates.push(c.clone());
                candidates.push(-c);
            }
        }
        candidates.sort();
        candidates.dedup();
        for c in candidates {
            // divide out (x - c) as often as it goes
            let mut mult = 0u32;
            while coeffs.len() > 1 && eval_coeffs(&coeffs, &c).is_zero() {
                coeffs = deflate(&coeffs, &c);
                mult += 1;
            }
            if mult > 0 {
                roots.push((c, mult));
            }
            if coeffs.len() <= 1 {
                break;
            }
        }
    }
    roots.sort();
    Ok((roots, coeffs.len().saturating_sub(1)))
}

fn eval_coeffs(coeffs: &[BigInt], at: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * at + Rat::from_integer(c.clone());
    }
    acc
}

/// Synthetic division by (x - c); the division is exact by construction, so
/// the rational intermediate values are cleared back to integers through the
/// primitive part of the quotient.
fn deflate(coeffs: &[BigInt], c: &Rat) -> Vec<BigInt> {
    let n = coeffs.len();
    let mut out: Vec<Rat> = vec![Rat::zero(); n - 1];
    let mut carry = Rat::zero();
    for i in (1..n).rev() {
        let q = Rat::from_integer(coeffs[i].clone()) + carry;
        out[i - 1] = q.clone();
        carry = q * c;
    }
    // clear denominators and content
    let mut denom_lcm = BigInt::one();
    for r in &out {
        denom_lcm = denom_lcm.lcm(r.denom());
    }
    let ints: Vec<BigInt> = out.iter().map(|r| (r * Rat::from_integer(denom_lcm.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return ints;
    }
    ints.iter().map(|c| c / &g).collect()
}

const DIVISOR_TRIAL_CAP: u64 = 10_000;

/// All positive divisors, via trial division up to the square root; errors
/// when the square root exceeds the trial cap, since then the divisor list
/// could be incomplete.
fn divisors_checked(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Err(Error::ZeroElement);
    }
    let cap = BigInt::from(DIVISOR_TRIAL_CAP * DIVISOR_TRIAL_CAP);
    if n > cap {
        return Err(Error::Unsupported(format!(
            "coefficient {n} is too large for the rational root search"
        )));
    }
    let n: u64 = n.try_into().expect("bounded by cap");
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d != n / d {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::rat::{rat, rat_int};
    use crate::vars::Vars;

    fn ctx() -> Vars {
        Vars::new(&["x", "y"]).unwrap()
    }

    fn pp(s: &str) -> Poly {
        parse_poly(&ctx(), s).unwrap()
    }

    fn origin_mult(f: &str, g: &str) -> Length {
        plane_mult(&pp(f), &pp(g), &PointPrime::origin()).unwrap()
    }

    #[test]
    fn transverse_lines() {
        assert_eq!(origin_mult("x", "y"), Length::Finite(1));
        assert_eq!(origin_mult("y - x", "y + x"), Length::Finite(1));
    }

    #[test]
    fn tangency_counts_double() {
        assert_eq!(origin_mult("y - x^2", "y"), Length::Finite(2));
        assert_eq!(origin_mult("y - x^2", "y - x"), Length::Finite(1));
    }

    #[test]
    fn away_from_the_point_is_zero() {
        assert_eq!(origin_mult("y - 1", "x"), Length::Finite(0));
    }

    #[test]
    fn common_component_is_infinite() {
        assert_eq!(origin_mult("x*y", "x*(y + 1)"), Length::Infinite);
        assert_eq!(origin_mult("y", "y"), Length::Infinite);
        assert_eq!(origin_mult("y - x", "2*y - 2*x"), Length::Infinite);
    }

    #[test]
    fn translated_point() {
        let at = PointPrime::new(rat_int(1), rat_int(1));
        let m = plane_mult(&pp("y - x^2"), &pp("y - x"), &at).unwrap();
        assert_eq!(m, Length::Finite(1));
    }

    #[test]
    fn higher_multiplicity() {
        // cusp against its tangent line
        assert_eq!(origin_mult("y^2 - x^3", "y"), Length::Finite(3));
        // two smooth branches meeting a line
        assert_eq!(origin_mult("y^2 - x^2 - x^3", "x"), Length::Finite(2));
    }

    #[test]
    fn point_enumeration() {
        let f = pp("y - x^2");
        let g = pp("y - x");
        let pts = common_rational_points(&f, &g).unwrap();
        assert_eq!(
            pts,
            vec![
                PointPrime::new(rat_int(0), rat_int(0)),
                PointPrime::new(rat_int(1), rat_int(1)),
            ]
        );
    }

    #[test]
    fn vertical_line_cases() {
        let f = pp("x - 2");
        let g = pp("y - 3");
        let pts = common_rational_points(&f, &g).unwrap();
        assert_eq!(pts, vec![PointPrime::new(rat_int(2), rat_int(3))]);
        // two distinct vertical lines never meet
        let pts = common_rational_points(&pp("x"), &pp("x - 1")).unwrap();
        assert!(pts.is_empty());
        // the same vertical line twice is not finite
        assert!(common_rational_points(&pp("x"), &pp("2*x")).is_err());
    }

    #[test]
    fn irrational_intersection_is_refused() {
        // y = x^2 meets y = 2 at x = ±sqrt 2
        let r = common_rational_points(&pp("y - x^2"), &pp("y - 2"));
        assert!(matches!(r, Err(Error::IrrationalIntersection(_))));
    }

    #[test]
    fn bezout_total_on_a_conic() {
        let f = pp("x^2 + y^2 - 2");
        let g = pp("y - x");
        let pts = common_rational_points(&f, &g).unwrap();
        assert_eq!(pts.len(), 2);
        let total: u64 = pts
            .iter()
            .map(|p| plane_mult(&f, &g, p).unwrap().as_finite().unwrap())
            .sum();
        assert_eq!(total, 2);
    }

    #[test]
    fn root_extraction() {
        let v = Vars::new(&["t"]).unwrap();
        let p = parse_poly(&v, "2*t^3 - 3*t^2 + t").unwrap(); // t(2t - 1)(t - 1)
        let (roots, residual) = rational_roots(&p, 0).unwrap();
        assert_eq!(roots, vec![(rat_int(0), 1), (rat(1, 2), 1), (rat_int(1), 1)]);
        assert_eq!(residual, 0);
        let q = parse_poly(&v, "t^2 - 2").unwrap();
        let (roots, residual) = rational_roots(&q, 0).unwrap();
        assert!(roots.is_empty());
        assert_eq!(residual, 2);
        let r = parse_poly(&v, "t^3 - 2*t").unwrap(); // t(t^2 - 2)
        let (roots, residual) = rational_roots(&r, 0).unwrap();
        assert_eq!(roots, vec![(rat_int(0), 1)]);
        assert_eq!(residual, 2);
    }

    #[test]
    fn repeated_roots_carry_multiplicity() {
        let v = Vars::new(&["t"]).unwrap();
        let p = parse_poly(&v, "t^2 - 2*t + 1").unwrap();
        let (roots, residual) = rational_roots(&p, 0).unwrap();
        assert_eq!(roots, vec![(rat_int(1), 2)]);
        assert_eq!(residual, 0);
        let q = parse_poly(&v, "t^5 - t^4").unwrap(); // t^4 (t - 1)
        let (roots, residual) = rational_roots(&q, 0).unwrap();
        assert_eq!(roots, vec![(rat_int(0), 4), (rat_int(1), 1)]);
        assert_eq!(residual, 0);
    }
}
