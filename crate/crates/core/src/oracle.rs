//! Independent recomputation routes. Each oracle shares only the input
//! preprocessing with the main engine and then counts, eliminates, or
//! truncates by a different algorithm, so agreement between the two is a
//! genuine cross-check and not an identity.

use crate::commutativity::Commutator;
use crate::cycle::{Cycle, PrimeRep};
use crate::error::{Error, Result};
use crate::factored::FactoredElement;
use crate::length::{common_rational_points, plane_mult};
use crate::length::{CoordinatePrime, Length, PIDMatrix};
use crate::poly::Poly;
use crate::primes::{make_witness, HeightOnePrime};
use crate::rat::{rat_int, Rat};
use crate::vars::Vars;
use num_traits::{One, Zero};

/// Hard cap on the cell count of a direct sweep.
const SWEEP_CELL_CAP: u64 = 10_000_000;

/// Length by sweeping the whole box below the pure-power bounds and testing
/// each exponent vector for membership, one cell at a time. No
/// inclusion-exclusion and no minimal-generator reduction.
pub fn enumeration_length(at: &CoordinatePrime, gens: &[FactoredElement]) -> Result<Length> {
    let k = at.height();
    let mut monomials: Vec<Vec<u32>> = Vec::new();
    for g in gens {
        at.vars().same_as(g.vars())?;
        let mut exps = vec![0u32; k];
        let mut in_ideal = false;
        for (f, e) in g.factors() {
            match f.as_var() {
                Some(i) => {
                    if let Ok(slot) = at.members().binary_search(&i) {
                        exps[slot] = exps[slot].checked_add(*e).expect("exponent overflow");
                        in_ideal = true;
                    }
                }
                None => {
                    if f.in_coordinate_ideal(at.members()) {
                        return Err(Error::NonMonomialLocalization(format!(
                            "generator factor {f} lies in {at} but is not a monomial"
                        )));
                    }
                }
            }
        }
        if !in_ideal {
            return Ok(Length::Finite(0));
        }
        monomials.push(exps);
    }
    if monomials.is_empty() {
        return Ok(Length::Infinite);
    }

    // box bounds straight off the raw generator list
    let mut bound = vec![0u32; k];
    for i in 0..k {
        let mut best: Option<u32> = None;
        for m in &monomials {
            let pure = m
                .iter()
                .enumerate()
                .all(|(j, &e)| if j == i { e > 0 } else { e == 0 });
            if pure {
                best = Some(best.map_or(m[i], |b| b.min(m[i])));
            }
        }
        match best {
            Some(b) => bound[i] = b,
            None => return Ok(Length::Infinite),
        }
    }

    let cells: u64 = bound.iter().map(|&b| u64::from(b)).product();
    if cells > SWEEP_CELL_CAP {
        return Err(Error::Unsupported(format!(
            "direct sweep over {cells} cells"
        )));
    }
    // a cell survives when no generator divides it
    let mut count = 0u64;
    let mut pt = vec![0u32; k];
    loop {
        let covered = monomials
            .iter()
            .any(|m| pt.iter().zip(m).all(|(a, b)| a >= b));
        if !covered {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == k {
                return Ok(Length::Finite(count));
            }
            pt[i] += 1;
            if pt[i] < bound[i] {
                break;
            }
            pt[i] = 0;
            i += 1;
        }
    }
}

/// Divisor of a monomial element over a coordinate component, with every
/// coefficient recomputed by the sweep. Bases needing curve machinery are
/// out of scope here.
pub fn div_by_enumeration(base: &PrimeRep, x: &FactoredElement) -> Result<Cycle> {
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
    let mut out = Cycle::zero(&vars, dim - 1);
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
        PrimeRep::Coordinate(q) if x.is_monomial() => {
            for (fac, _) in x.factors() {
                let w = fac.as_var().expect("monomial element has variable factors");
                let mut members = q.members().to_vec();
                members.push(w);
                let above = CoordinatePrime::new(&vars, &members)?;
                let mut gens: Vec<FactoredElement> = q
                    .generators()
                    .into_iter()
                    .map(|g| FactoredElement::new(&vars, rat_int(1), vec![(g, 1)]))
                    .collect::<Result<_>>()?;
                gens.push(x.clone());
                match enumeration_length(&above, &gens)? {
                    Length::Finite(l) => out.add_term(
                        PrimeRep::coordinate(above),
                        i64::try_from(l).expect("length fits a coefficient"),
                    )?,
                    Length::Infinite => {
                        return Err(Error::Precondition(
                            "a divisor coefficient came out infinite, the element vanishes on the component"
                                .into(),
                        ))
                    }
                }
            }
            Ok(out)
        }
        _ => Err(Error::Unsupported(format!(
            "the sweep route only splits divisors of monomials over coordinate components, not {x} over {base:?}"
        ))),
    }
}

/// Intersection with a principal divisor, coefficients via the sweep.
pub fn cap_by_enumeration(u: &FactoredElement, alpha: &Cycle) -> Result<Cycle> {
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
        let part = div_by_enumeration(rep, u)?;
        out = out.try_add(&part.scale(coeff))?;
    }
    Ok(out)
}

/// Both iterated intersections and their difference, every length taken by
/// the sweep.
pub fn commutator_by_enumeration(
    u: &FactoredElement,
    v: &FactoredElement,
) -> Result<Commutator> {
    u.vars().same_as(v.vars())?;
    let fund = Cycle::fundamental(u.vars());
    let uv = cap_by_enumeration(u, &cap_by_enumeration(v, &fund)?)?;
    let vu = cap_by_enumeration(v, &cap_by_enumeration(u, &fund)?)?;
    let difference = uv.try_sub(&vu)?;
    Ok(Commutator { uv, vu, difference })
}

/// The witness side of the difference formula, every divisor taken by the
/// sweep.
pub fn witness_rhs_by_enumeration(
    u: &FactoredElement,
    v: &FactoredElement,
) -> Result<Cycle> {
    let witness = make_witness(u, v)?;
    let mut total = Cycle::zero(u.vars(), 0);
    for e in &witness {
        let base = PrimeRep::principal(e.prime.clone());
        let plus = div_by_enumeration(&base, &e.num)?;
        let minus = div_by_enumeration(&base, &e.den)?;
        total = total.try_add(&plus.try_sub(&minus)?)?;
    }
    Ok(total)
}

/// Determinant by fraction-free elimination: every intermediate entry stays
/// a polynomial and every division is exact.
fn bareiss_det(vars: &Vars, mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(vars);
    }
    let mut negate = false;
    let mut prev = Poly::one(vars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Poly::zero(vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k]
                    .mul_ref(&m[i][j])
                    .sub_ref(&m[i][k].mul_ref(&m[k][j]));
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
            m[i][k] = Poly::zero(vars);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.scale(&-Rat::one())
    } else {
        det
    }
}

/// Resultant as the determinant of the coefficient matrix of the pair, in
/// the same conventions as the elimination engine.
pub fn sylvester_resultant(f: &Poly, g: &Poly, var: usize) -> Result<Poly> {
    f.vars().same_as(g.vars())?;
    let vars = f.vars().clone();
    let cf = f.coeffs_in_var(var);
    let cg = g.coeffs_in_var(var);
    if cf.is_empty() || cg.is_empty() {
        let other = if cf.is_empty() { &cg } else { &cf };
        if other.len() <= 1 {
            return Err(Error::ResultantBothConstant(format!(
                "res({f}, {g}) with respect to {}",
                vars.name(var)
            )));
        }
        return Ok(Poly::zero(&vars));
    }
    let m = cf.len() - 1;
    let n = cg.len() - 1;
    if m == 0 && n == 0 {
        return Err(Error::ResultantBothConstant(format!(
            "res({f}, {g}) with respect to {}",
            vars.name(var)
        )));
    }
    if m == 0 {
        return Ok(cf[0].pow(n as u32));
    }
    if n == 0 {
        return Ok(cg[0].pow(m as u32));
    }
    let size = m + n;
    let mut s = vec![vec![Poly::zero(&vars); size]; size];
    for i in 0..n {
        for j in 0..=m {
            s[i][i + j] = cf[m - j].clone();
        }
    }
    for i in 0..m {
        for j in 0..=n {
            s[n + i][i + j] = cg[n - j].clone();
        }
    }
    Ok(bareiss_det(&vars, s))
}

/// Order of vanishing at `vars[var] = a` by repeated synthetic division.
pub fn order_at(p: &Poly, var: usize, a: &Rat) -> Result<u32> {
    if p.is_zero() {
        return Err(Error::ZeroElement);
    }
    let vars = p.vars().clone();
    let mut coeffs = p.coeffs_in_var(var);
    let mut ord = 0u32;
    loop {
        let d = coeffs.len() - 1;
        // b[k] = coeffs[k] + a * b[k + 1]; b[0] is the remainder and b[1..]
        // the quotient by (var - a)
        let mut b = vec![Poly::zero(&vars); coeffs.len()];
        b[d] = coeffs[d].clone();
        for k in (0..d).rev() {
            b[k] = coeffs[k].add_ref(&b[k + 1].scale(a));
        }
        if !b[0].is_zero() {
            return Ok(ord);
        }
        ord += 1;
        b.remove(0);
        coeffs = b;
    }
}

/// One vertical line of a plane intersection: x-coordinate, total
/// multiplicity of the points above it, order of the eliminant there.
pub struct PlaneOrderReport {
    pub per_line: Vec<(Rat, u64, u32)>,
    pub eliminant_degree: u32,
    pub matches: bool,
}

/// Cross-check of plane multiplicities against vanishing orders of the
/// eliminant in the second variable. `None` when a leading coefficient is
/// not constant or the curves share a component; the order identity then
/// loses points to infinity or stops making sense.
pub fn plane_order_matches(f: &Poly, g: &Poly) -> Result<Option<PlaneOrderReport>> {
    f.vars().same_as(g.vars())?;
    if f.vars().len() != 2 {
        return Err(Error::BadVars(format!(
            "plane computations need exactly two variables, got {}",
            f.vars()
        )));
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroElement);
    }
    if f.as_constant().is_some() || g.as_constant().is_some() {
        return Ok(Some(PlaneOrderReport {
            per_line: Vec::new(),
            eliminant_degree: 0,
            matches: true,
        }));
    }
    let lead_constant = |p: &Poly| {
        p.coeffs_in_var(1)
            .last()
            .and_then(Poly::as_constant)
            .is_some()
    };
    if !lead_constant(f) || !lead_constant(g) {
        return Ok(None);
    }
    let eliminant = sylvester_resultant(f, g, 1)?;
    if eliminant.is_zero() {
        return Ok(None);
    }
    let points = common_rational_points(f, g)?;
    let mut lines: Vec<(Rat, u64)> = Vec::new();
    for at in &points {
        let mult = match plane_mult(f, g, at)? {
            Length::Finite(l) => l,
            Length::Infinite => {
                return Err(Error::Precondition(
                    "an infinite multiplicity on curves with no shared component".into(),
                ))
            }
        };
        match lines.iter_mut().find(|(a, _)| *a == at.x) {
            Some((_, total)) => *total += mult,
            None => lines.push((at.x.clone(), mult)),
        }
    }
    let mut per_line = Vec::with_capacity(lines.len());
    let mut all_match = true;
    let mut accounted: u64 = 0;
    for (a, total) in lines {
        let ord = order_at(&eliminant, 0, &a)?;
        all_match &= u64::from(ord) == total;
        accounted += u64::from(ord);
        per_line.push((a, total, ord));
    }
    // the certified point list covers every root, so the orders exhaust the
    // eliminant degree
    let degree = eliminant.degree_in(0).unwrap_or(0);
    all_match &= accounted == u64::from(degree);
    Ok(Some(PlaneOrderReport {
        per_line,
        eliminant_degree: degree,
        matches: all_match,
    }))
}

fn rank_over_q(mut rows: Vec<Vec<Rat>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].clone();
        for i in rank + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone() / inv.clone();
            for j in col..width {
                let s = rows[rank][j].clone() * factor.clone();
                rows[i][j] -= s;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn truncated_codim(m: &PIDMatrix, cut: u32) -> usize {
    let r = m.rows();
    let c = m.cols();
    let n = cut as usize;
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(c * n);
    for j in 0..c {
        let col: Vec<Vec<Poly>> = (0..r).map(|i| m.entry(i, j).coeffs_in_var(0)).collect();
        for k in 0..n {
            let mut vec = vec![Rat::zero(); r * n];
            for (i, coeffs) in col.iter().enumerate() {
                for (d, cpoly) in coeffs.iter().enumerate() {
                    let slot = k + d;
                    if slot < n {
                        vec[i * n + slot] = cpoly.as_constant().expect("univariate coefficients");
                    }
                }
            }
            rows.push(vec);
        }
    }
    r * n - rank_over_q(rows)
}

/// Colength of the cokernel by linear algebra on truncations: the dimension
/// of the quotient modulo a high power of the variable, taken at two
/// consecutive cutoffs. Finite lengths sit strictly below the first cutoff,
/// so a stable dimension is the length and a growing one means infinite.
pub fn pid_length_by_truncation(m: &PIDMatrix) -> Length {
    let maxdeg = (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .filter_map(|(i, j)| m.entry(i, j).degree_in(0))
        .max()
        .unwrap_or(0);
    let cut = m.rows() as u32 * maxdeg + 1;
    let d1 = truncated_codim(m, cut);
    let d2 = truncated_codim(m, cut + 1);
    if d1 == d2 {
        Length::Finite(d1 as u64)
    } else {
        Length::Infinite
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::div_cycle;
    use crate::length::{coord_local_length, pid_coker_length};
    use crate::parse::{parse_factored, parse_poly};
    use crate::resultant::resultant;
    use crate::vars::Vars;

    fn ctx3() -> Vars {
        Vars::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn sweep_agrees_with_staircase() {
        let v = ctx3();
        let at = CoordinatePrime::new(&v, &[0, 1]).unwrap();
        for gens in [
            vec!["x^2", "y^3"],
            vec!["x^2", "x*y", "y^3"],
            vec!["x^2", "x*y"],
            vec!["x^3*z", "2*y^2", "x*y*z^2"],
            vec!["z^3", "x^2"],
        ] {
            let gens: Vec<FactoredElement> =
                gens.iter().map(|s| parse_factored(&v, s).unwrap()).collect();
            assert_eq!(
                enumeration_length(&at, &gens).unwrap(),
                coord_local_length(&at, &gens).unwrap()
            );
        }
    }

    #[test]
    fn sweep_div_agrees_with_engine() {
        let v = ctx3();
        let base = PrimeRep::coordinate(CoordinatePrime::new(&v, &[2]).unwrap());
        let x = parse_factored(&v, "x^2*y^3").unwrap();
        let ours = div_by_enumeration(&base, &x).unwrap();
        let theirs = div_cycle(&base, &x).unwrap();
        assert_eq!(ours.to_string(), theirs.to_string());
        assert_eq!(ours.to_string(), "2*[A/(x,z)] + 3*[A/(y,z)]");
    }

    #[test]
    fn sweep_commutator_on_shifted_pair() {
        let v = ctx3();
        let u = parse_factored(&v, "x*z").unwrap();
        let w = parse_factored(&v, "x*y").unwrap();
        let c = commutator_by_enumeration(&u, &w).unwrap();
        assert_eq!(c.uv.to_string(), "1*[A/(x,y)] + 1*[A/(y,z)]");
        assert_eq!(c.vu.to_string(), "1*[A/(x,z)] + 1*[A/(y,z)]");
        assert_eq!(c.difference.to_string(), "1*[A/(x,y)] - 1*[A/(x,z)]");
        let rhs = witness_rhs_by_enumeration(&u, &w).unwrap();
        assert_eq!(rhs.to_string(), c.difference.to_string());
    }

    #[test]
    fn determinant_route_matches_elimination() {
        let v = Vars::new(&["x", "y"]).unwrap();
        for (f, g) in [
            ("y - x", "y - 2*x"),
            ("y^2 - x^3", "y - x^2"),
            ("x^2 + y^2 - 1", "x*y - 1"),
            ("(y - x)*(y + x)", "y - 3*x^2"),
            ("y^3 - 2*x*y + 5", "x^2*y^2 - y - x"),
        ] {
            let f = parse_poly(&v, f).unwrap();
            let g = parse_poly(&v, g).unwrap();
            let det = sylvester_resultant(&f, &g, 1).unwrap();
            let prs = resultant(&f, &g, 1).unwrap();
            assert_eq!(det.to_string(), prs.to_string(), "res of {f} and {g}");
        }
    }

    #[test]
    fn determinant_route_flags_shared_factors() {
        let v = Vars::new(&["x", "y"]).unwrap();
        let f = parse_poly(&v, "(y - x)*(y + x)").unwrap();
        let g = parse_poly(&v, "(y - x)*(y - 2*x)").unwrap();
        assert!(sylvester_resultant(&f, &g, 1).unwrap().is_zero());
    }

    #[test]
    fn vanishing_order_by_division() {
        let v = Vars::new(&["x"]).unwrap();
        let p = parse_poly(&v, "x^3*(x - 1)^2*(x + 2)").unwrap();
        assert_eq!(order_at(&p, 0, &rat_int(0)).unwrap(), 3);
        assert_eq!(order_at(&p, 0, &rat_int(1)).unwrap(), 2);
        assert_eq!(order_at(&p, 0, &rat_int(-2)).unwrap(), 1);
        assert_eq!(order_at(&p, 0, &rat_int(5)).unwrap(), 0);
    }

    #[test]
    fn eliminant_orders_match_multiplicities() {
        let v = Vars::new(&["x", "y"]).unwrap();
        let f = parse_poly(&v, "y - x^2").unwrap();
        let g = parse_poly(&v, "y*(y - x)").unwrap();
        let report = plane_order_matches(&f, &g).unwrap().unwrap();
        assert!(report.matches);
        // tangency at the origin plus the crossing at (1, 1)
        assert_eq!(report.eliminant_degree, 4);
        let origin = report
            .per_line
            .iter()
            .find(|(a, _, _)| a.is_zero())
            .unwrap();
        assert_eq!((origin.1, origin.2), (3, 3));
    }

    #[test]
    fn vertical_tangent_is_out_of_scope() {
        let v = Vars::new(&["x", "y"]).unwrap();
        // leading coefficient in y is x
        let f = parse_poly(&v, "x*y - 1").unwrap();
        let g = parse_poly(&v, "y - x").unwrap();
        assert!(plane_order_matches(&f, &g).unwrap().is_none());
    }

    #[test]
    fn truncation_agrees_with_normal_form() {
        let v = Vars::new(&["t"]).unwrap();
        let p = |s: &str| parse_poly(&v, s).unwrap();
        let m = PIDMatrix::new(&v, vec![vec![p("t^2"), p("t")], vec![p("0"), p("t^3")]]).unwrap();
        assert_eq!(pid_length_by_truncation(&m), Length::Finite(5));
        assert_eq!(pid_coker_length(&m), Length::Finite(5));

        let unit = PIDMatrix::new(&v, vec![vec![p("1 + t")]]).unwrap();
        assert_eq!(pid_length_by_truncation(&unit), Length::Finite(0));

        let singular =
            PIDMatrix::new(&v, vec![vec![p("t"), p("t^2")], vec![p("t^2"), p("t^3")]]).unwrap();
        assert_eq!(pid_length_by_truncation(&singular), Length::Infinite);
        assert_eq!(pid_coker_length(&singular), Length::Infinite);
    }

    #[test]
    fn truncation_sees_unit_content() {
        let v = Vars::new(&["t"]).unwrap();
        let p = |s: &str| parse_poly(&v, s).unwrap();
        // entries with nonzero constant term only present a torsion-free
        // quotient after localization
        let m = PIDMatrix::new(&v, vec![vec![p("2 + t"), p("1")], vec![p("t^4"), p("3 + t^2")]])
            .unwrap();
        assert_eq!(pid_length_by_truncation(&m), pid_coker_length(&m));
    }
}
