//! Commutator cycles for pairs of elements, and exact verification of the
//! identities that exhibit the commutator as a sum of principal divisors on
//! height-one subvarieties.

use crate::cycle::{cap, cycle_scale, cycle_sub, div_frac, Cycle, PrimeRep};
use crate::error::{Error, Result};
use crate::factored::{FactoredElement, FracElement};
use crate::length::{coord_local_length, CoordinatePrime, Length};
use crate::primes::{
    alpha_sequence, make_witness, support_partition, valuation, HeightOnePrime, Witness,
    WitnessEntry,
};
use crate::rat::Rat;
use crate::vars::Vars;
use num_traits::One;

/// Both iterated intersection products of a pair and their difference.
#[derive(Debug, Clone)]
pub struct Commutator {
    /// (u)∩(v)∩[A]
    pub uv: Cycle,
    /// (v)∩(u)∩[A]
    pub vu: Cycle,
    /// uv - vu
    pub difference: Cycle,
}

/// (x)∩(y)∩[A] for a pair of elements.
fn nested_cap(x: &FactoredElement, y: &FactoredElement) -> Result<Cycle> {
    let fund = Cycle::fundamental(x.vars());
    cap(x, &cap(y, &fund)?)
}

pub fn commutator(u: &FactoredElement, v: &FactoredElement) -> Result<Commutator> {
    if u.vars() != v.vars() {
        return Err(Error::VarMismatch {
            left: u.vars().to_string(),
            right: v.vars().to_string(),
        });
    }
    let uv = nested_cap(u, v)?;
    let vu = nested_cap(v, u)?;
    let difference = cycle_sub(&uv, &vu)?;
    Ok(Commutator { uv, vu, difference })
}

/// div(p, num/den) for a height-one prime.
fn div_on_prime(p: &HeightOnePrime, frac: &FracElement) -> Result<Cycle> {
    div_frac(&PrimeRep::principal(p.clone()), frac)
}

/// Sum a list of cycles; the zero cycle adopts the grade of the first
/// nonzero summand.
fn cycle_total(vars: &Vars, parts: &[Cycle]) -> Result<Cycle> {
    let mut total = Cycle::zero(vars, 0);
    for c in parts {
        total = total.try_add(c)?;
    }
    Ok(total)
}

/// The commutator compared against the sum of the divisors of its witness
/// fractions, one per shared height-one prime.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub commutator: Commutator,
    pub witness: Witness,
    /// div(p_i, a_i/b_i) per shared prime, in witness order.
    pub per_prime: Vec<(HeightOnePrime, Cycle)>,
    pub rhs_total: Cycle,
    /// a_i * u^{m_i} = b_i * v^{n_i} holds for every entry.
    pub sound: bool,
    /// difference == rhs_total
    pub equal: bool,
}

pub fn verify_witness_formula(
    u: &FactoredElement,
    v: &FactoredElement,
) -> Result<WitnessReport> {
    let comm = commutator(u, v)?;
    let part = support_partition(u, v)?;
    // A pair with no shared prime commutes exactly; the witness sum is empty.
    let witness: Witness = if part.both.is_empty() {
        Vec::new()
    } else {
        make_witness(u, v)?
    };
    let mut sound = true;
    let mut per_prime = Vec::with_capacity(witness.len());
    for e in &witness {
        let lhs = e.num.mul(&u.pow(e.order_v))?.expand();
        let rhs = e.den.mul(&v.pow(e.order_u))?.expand();
        sound &= lhs == rhs;
        per_prime.push((e.prime.clone(), div_on_prime(&e.prime, &e.fraction()?)?));
    }
    let rhs_total = cycle_total(u.vars(), &per_prime.iter().map(|(_, c)| c.clone()).collect::<Vec<_>>())?;
    let equal = comm.difference == rhs_total;
    Ok(WitnessReport { commutator: comm, witness, per_prime, rhs_total, sound, equal })
}

/// Length bookkeeping at one height-two coordinate prime: the signed sum of
/// lengths over the one-sided support primes matches the coefficient the
/// witness divisors put on that component.
#[derive(Debug, Clone)]
pub struct LocalBalanceReport {
    pub at: CoordinatePrime,
    /// (q_l, t_l, ℓ(A/(q_l,u)) at the chosen prime), over primes in v only.
    pub plus_terms: Vec<(HeightOnePrime, u32, u64)>,
    /// (q'_k, s_k, ℓ(A/(q'_k,v)) at the chosen prime), over primes in u only.
    pub minus_terms: Vec<(HeightOnePrime, u32, u64)>,
    pub lhs: i64,
    pub rhs: i64,
    pub matches: bool,
}

/// ℓ(A/(q, x)) localized at a coordinate prime.
fn side_length(
    at: &CoordinatePrime,
    q: &HeightOnePrime,
    x: &FactoredElement,
) -> Result<u64> {
    let q_elem = FactoredElement::new_asserted(q.vars(), Rat::one(), vec![(q.generator().clone(), 1)])?;
    match coord_local_length(at, &[q_elem, x.clone()])? {
        Length::Finite(n) => Ok(n),
        // x avoids q, so the localized quotient is a proper quotient of a
        // one-dimensional ring; an infinite answer means a bad input pair.
        Length::Infinite => Err(Error::Precondition(format!(
            "length of A/({}, {}) at {} is not finite",
            q, x, at
        ))),
    }
}

pub fn verify_local_balance(
    u: &FactoredElement,
    v: &FactoredElement,
    at: &CoordinatePrime,
) -> Result<LocalBalanceReport> {
    if at.height() != 2 {
        return Err(Error::Precondition(format!(
            "local balance is a statement at height-two primes, got height {}",
            at.height()
        )));
    }
    let part = support_partition(u, v)?;
    let mut plus_terms = Vec::new();
    let mut minus_terms = Vec::new();
    let mut lhs: i64 = 0;
    for (q, t) in &part.only_v {
        let len = side_length(at, q, u)?;
        lhs += i64::from(*t) * i64::try_from(len).expect("length overflow");
        plus_terms.push((q.clone(), *t, len));
    }
    for (q, s) in &part.only_u {
        let len = side_length(at, q, v)?;
        lhs -= i64::from(*s) * i64::try_from(len).expect("length overflow");
        minus_terms.push((q.clone(), *s, len));
    }
    let rhs_cycle = if part.both.is_empty() {
        Cycle::zero(u.vars(), 0)
    } else {
        let witness = make_witness(u, v)?;
        let mut parts = Vec::new();
        for e in &witness {
            parts.push(div_on_prime(&e.prime, &e.fraction()?)?);
        }
        cycle_total(u.vars(), &parts)?
    };
    let rhs = rhs_cycle.coefficient_of(&PrimeRep::coordinate(at.clone()));
    Ok(LocalBalanceReport { at: at.clone(), plus_terms, minus_terms, lhs, rhs, matches: lhs == rhs })
}

/// The commutator of a pair with equal orders at every shared prime,
/// compared against divisors of powers of the single reduced ratio.
#[derive(Debug, Clone)]
pub struct EqualOrdersReport {
    pub commutator: Commutator,
    /// Numerator of the reduced ratio v/u.
    pub num: FactoredElement,
    /// Denominator of the reduced ratio v/u.
    pub den: FactoredElement,
    /// div(p_i, (num/den)^{n_i}) per shared prime.
    pub per_prime: Vec<(HeightOnePrime, u32, Cycle)>,
    pub rhs_total: Cycle,
    pub equal: bool,
}

pub fn verify_equal_orders(
    u: &FactoredElement,
    v: &FactoredElement,
) -> Result<EqualOrdersReport> {
    let part = support_partition(u, v)?;
    if part.both.is_empty() {
        return Err(Error::Precondition("the pair shares no height-one prime".into()));
    }
    for (p, n, m) in &part.both {
        if n != m {
            return Err(Error::Precondition(format!(
                "orders at {} differ ({} vs {})",
                p, n, m
            )));
        }
    }
    let comm = commutator(u, v)?;
    let ratio = FracElement::ratio(v, u)?;
    let num = ratio.num_part();
    let den = ratio.den_part();
    let mut per_prime = Vec::new();
    let mut parts = Vec::new();
    for (p, n, _) in &part.both {
        let c = div_on_prime(p, &ratio.pow(i64::from(*n)))?;
        parts.push(c.clone());
        per_prime.push((p.clone(), *n, c));
    }
    let rhs_total = cycle_total(u.vars(), &parts)?;
    let equal = comm.difference == rhs_total;
    Ok(EqualOrdersReport { commutator: comm, num, den, per_prime, rhs_total, equal })
}

/// The commutator of a pair meeting in exactly one height-one prime,
/// compared against the single witness divisor.
#[derive(Debug, Clone)]
pub struct SinglePrimeReport {
    pub commutator: Commutator,
    pub entry: WitnessEntry,
    pub rhs: Cycle,
    pub equal: bool,
}

pub fn verify_single_prime(
    u: &FactoredElement,
    v: &FactoredElement,
) -> Result<SinglePrimeReport> {
    let part = support_partition(u, v)?;
    if part.both.len() != 1 {
        return Err(Error::Precondition(format!(
            "expected exactly one shared prime, found {}",
            part.both.len()
        )));
    }
    let report = verify_witness_formula(u, v)?;
    let entry = report.witness[0].clone();
    let rhs = report.rhs_total;
    let equal = report.commutator.difference == rhs;
    Ok(SinglePrimeReport { commutator: report.commutator, entry, rhs, equal })
}

/// Check that the listed auxiliary primes are distinct, carry positive
/// orders, and avoid the support of both elements.
fn check_extra(
    u: &FactoredElement,
    v: &FactoredElement,
    extra: &[(HeightOnePrime, u32)],
) -> Result<()> {
    for (i, (j, lam)) in extra.iter().enumerate() {
        if *lam == 0 {
            return Err(Error::Precondition(format!("auxiliary prime {} has order zero", j)));
        }
        if valuation(j, u) != 0 || valuation(j, v) != 0 {
            return Err(Error::Precondition(format!(
                "auxiliary prime {} lies in the support of the pair",
                j
            )));
        }
        if extra[..i].iter().any(|(k, _)| k == j) {
            return Err(Error::Precondition(format!("auxiliary prime {} repeats", j)));
        }
    }
    Ok(())
}

/// Product of prime powers as a factored element.
fn prime_power_product(vars: &Vars, parts: &[(HeightOnePrime, u32)]) -> Result<FactoredElement> {
    let factors = parts.iter().map(|(p, e)| (p.generator().clone(), *e)).collect();
    FactoredElement::new_asserted(vars, Rat::one(), factors)
}

/// Divide out a factored element exactly; the quotient must be integral.
fn exact_quotient(num: &FracElement, den: &FracElement) -> Result<FactoredElement> {
    let q = num.mul(&den.inv())?;
    if !q.den_part().is_unit() {
        return Err(Error::Precondition(format!("quotient {} is not integral", q)));
    }
    Ok(q.num_part())
}

/// A pair with equal orders at every shared prime, rewritten through a
/// perturbed ratio: the numerator gains auxiliary prime factors, the
/// denominator is forced by exactness, and the resulting commutator equals
/// the sum of divisors of the original ratio's powers on the auxiliary
/// primes alone.
#[derive(Debug, Clone)]
pub struct PairSwapReport {
    /// Perturbed numerator: only-v primes to their orders times the extras.
    pub a: FactoredElement,
    /// u*a/v, supported on only-u primes and the extras.
    pub b: FactoredElement,
    /// Commutator of (b, a).
    pub swap: Commutator,
    /// div(J_h, (v/u)^{λ_h}) per auxiliary prime.
    pub per_extra: Vec<(HeightOnePrime, u32, Cycle)>,
    pub rhs_total: Cycle,
    pub equal: bool,
}

pub fn verify_pair_swap(
    u: &FactoredElement,
    v: &FactoredElement,
    extra: &[(HeightOnePrime, u32)],
) -> Result<PairSwapReport> {
    let part = support_partition(u, v)?;
    if part.both.is_empty() {
        return Err(Error::Precondition("the pair shares no height-one prime".into()));
    }
    for (p, n, m) in &part.both {
        if n != m {
            return Err(Error::Precondition(format!(
                "orders at {} differ ({} vs {})",
                p, n, m
            )));
        }
    }
    check_extra(u, v, extra)?;
    let mut a_parts = part.only_v.clone();
    a_parts.extend(extra.iter().cloned());
    let a = prime_power_product(u.vars(), &a_parts)?;
    let b = exact_quotient(&u.to_frac().mul(&a.to_frac())?, &v.to_frac())?;
    debug_assert_eq!(u.mul(&a)?.expand(), v.mul(&b)?.expand());
    let swap = commutator(&b, &a)?;
    let ratio = FracElement::ratio(v, u)?;
    let mut per_extra = Vec::new();
    let mut parts = Vec::new();
    for (j, lam) in extra {
        let c = div_on_prime(j, &ratio.pow(i64::from(*lam)))?;
        parts.push(c.clone());
        per_extra.push((j.clone(), *lam, c));
    }
    let rhs_total = cycle_total(u.vars(), &parts)?;
    let equal = swap.difference == rhs_total;
    Ok(PairSwapReport { a, b, swap, per_extra, rhs_total, equal })
}

/// The commutator of (u^{m_1}, v^{n_1}) split into three differences using
/// the leading witness fraction a_1/b_1, together with the auxiliary-prime
/// identities that make the middle terms cancel.
#[derive(Debug, Clone)]
pub struct ThreeTermReport {
    /// Order of u at the leading shared prime.
    pub n1: u32,
    /// Order of v at the leading shared prime.
    pub m1: u32,
    /// Numerator of the leading witness fraction, extras included.
    pub a1: FactoredElement,
    /// u^{m_1}*a_1/v^{n_1}, supported on only-u primes and the extras.
    pub b1: FactoredElement,
    /// Commutator of (u^{m_1}, v^{n_1}).
    pub lhs: Commutator,
    /// Commutator of (u^{m_1}, a_1).
    pub t1: Cycle,
    /// Commutator of (b_1, v^{n_1}); a coprime pair, so it vanishes.
    pub t2: Cycle,
    /// (a_1)∩(v^{n_1})∩[A] - (b_1)∩(u^{m_1})∩[A].
    pub t3: Cycle,
    /// lhs == t1 + t2 + t3
    pub split_matches: bool,
    pub t2_vanishes: bool,
    /// Commutator of (b_1, a_1); supported on the extras alone.
    pub swap_lhs: Cycle,
    /// (v^{n_1})∩(a_1)∩[A] - (u^{m_1})∩(b_1)∩[A]; same support.
    pub cross_lhs: Cycle,
    /// Σ div(J_h, v^{n_1 λ_h}/u^{m_1 λ_h}) over the auxiliary primes.
    pub extra_rhs: Cycle,
    pub swap_matches: bool,
    pub cross_matches: bool,
    /// m_1 n_1 times the witness sum for the original pair.
    pub scaled_rhs: Cycle,
    /// lhs == scaled_rhs
    pub total_matches: bool,
}

pub fn verify_three_term(
    u: &FactoredElement,
    v: &FactoredElement,
    extra: &[(HeightOnePrime, u32)],
) -> Result<ThreeTermReport> {
    let data = alpha_sequence(u, v)?;
    let r = data.order.len();
    if r < 2 {
        return Err(Error::Precondition(format!(
            "the split needs at least two shared primes, found {}",
            r
        )));
    }
    if data.tie_block == r {
        return Err(Error::Precondition(
            "all order ratios agree; use the equal-orders route instead".into(),
        ));
    }
    check_extra(u, v, extra)?;
    let (_, n1, m1) = data.order[0];

    // a_1 vanishes to order α_j on the trailing shared primes, to order
    // n_1 t_l on the only-v primes, and to order λ_h on the extras.
    let mut a_parts: Vec<(HeightOnePrime, u32)> = Vec::new();
    for (j, (p, _, _)) in data.order.iter().enumerate().skip(data.tie_block) {
        let alpha = u32::try_from(data.alpha[j]).expect("alpha is positive past the tie block");
        a_parts.push((p.clone(), alpha));
    }
    let part = support_partition(u, v)?;
    for (q, t) in &part.only_v {
        a_parts.push((q.clone(), n1 * t));
    }
    a_parts.extend(extra.iter().cloned());
    let a1 = prime_power_product(u.vars(), &a_parts)?;
    let b1 = exact_quotient(
        &u.to_frac().pow(i64::from(m1)).mul(&a1.to_frac())?,
        &v.to_frac().pow(i64::from(n1)),
    )?;

    let um = u.pow(m1);
    let vn = v.pow(n1);
    let lhs = commutator(&um, &vn)?;
    let t1 = commutator(&um, &a1)?.difference;
    let t2 = commutator(&b1, &vn)?.difference;
    let t3 = cycle_sub(&nested_cap(&a1, &vn)?, &nested_cap(&b1, &um)?)?;
    let split_matches = lhs.difference == t1.try_add(&t2)?.try_add(&t3)?;
    let t2_vanishes = t2.is_zero();

    let swap_lhs = commutator(&b1, &a1)?.difference;
    let cross_lhs = cycle_sub(&nested_cap(&vn, &a1)?, &nested_cap(&um, &b1)?)?;
    let mut parts = Vec::new();
    for (j, lam) in extra {
        let k = i64::from(*lam);
        let frac = v
            .to_frac()
            .pow(i64::from(n1) * k)
            .mul(&u.to_frac().pow(-i64::from(m1) * k))?;
        parts.push(div_on_prime(j, &frac)?);
    }
    let extra_rhs = cycle_total(u.vars(), &parts)?;
    let swap_matches = swap_lhs == extra_rhs;
    let cross_matches = cross_lhs == extra_rhs;

    let witness_rhs = verify_witness_formula(u, v)?.rhs_total;
    let scaled_rhs = cycle_scale(&witness_rhs, i64::from(m1) * i64::from(n1));
    let total_matches = lhs.difference == scaled_rhs;

    Ok(ThreeTermReport {
        n1,
        m1,
        a1,
        b1,
        lhs,
        t1,
        t2,
        t3,
        split_matches,
        t2_vanishes,
        swap_lhs,
        cross_lhs,
        extra_rhs,
        swap_matches,
        cross_matches,
        scaled_rhs,
        total_matches,
    })
}

/// Length additivity at one height-two coordinate prime: filtering by the
/// one-sided support primes splits the length of the quotient by their
/// power product.
#[derive(Debug, Clone)]
pub struct SymbolicPowerReport {
    pub at: CoordinatePrime,
    /// Product of only-v primes to their orders in v.
    pub v_product: FactoredElement,
    /// Product of only-u primes to their orders in u.
    pub u_product: FactoredElement,
    /// ℓ(A/(v_product, u)) at the chosen prime.
    pub v_lhs: Length,
    /// Σ t_l ℓ(A/(q_l, u)) at the chosen prime.
    pub v_rhs: Length,
    pub v_matches: bool,
    /// ℓ(A/(u_product, v)) at the chosen prime.
    pub u_lhs: Length,
    /// Σ s_k ℓ(A/(q'_k, v)) at the chosen prime.
    pub u_rhs: Length,
    pub u_matches: bool,
}

pub fn verify_symbolic_power_lengths(
    u: &FactoredElement,
    v: &FactoredElement,
    at: &CoordinatePrime,
) -> Result<SymbolicPowerReport> {
    if at.height() != 2 {
        return Err(Error::Precondition(format!(
            "length additivity is a statement at height-two primes, got height {}",
            at.height()
        )));
    }
    let part = support_partition(u, v)?;
    let v_product = prime_power_product(u.vars(), &part.only_v)?;
    let u_product = prime_power_product(u.vars(), &part.only_u)?;

    let v_lhs = coord_local_length(at, &[v_product.clone(), u.clone()])?;
    let mut v_rhs = Length::Finite(0);
    for (q, t) in &part.only_v {
        v_rhs = v_rhs.add(Length::Finite(side_length(at, q, u)?).scale(u64::from(*t)));
    }
    let u_lhs = coord_local_length(at, &[u_product.clone(), v.clone()])?;
    let mut u_rhs = Length::Finite(0);
    for (q, s) in &part.only_u {
        u_rhs = u_rhs.add(Length::Finite(side_length(at, q, v)?).scale(u64::from(*s)));
    }
    Ok(SymbolicPowerReport {
        at: at.clone(),
        v_product,
        u_product,
        v_matches: v_lhs == v_rhs,
        v_lhs,
        v_rhs,
        u_matches: u_lhs == u_rhs,
        u_lhs,
        u_rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_factored, parse_poly};
    use crate::vars::Vars;

    fn elem(vars: &Vars, s: &str) -> FactoredElement {
        parse_factored(vars, s).unwrap()
    }

    fn prime(vars: &Vars, s: &str) -> HeightOnePrime {
        HeightOnePrime::new(parse_poly(vars, s).unwrap()).unwrap()
    }

    fn coord(vars: &Vars, members: &[usize]) -> CoordinatePrime {
        CoordinatePrime::new(vars, members).unwrap()
    }

    #[test]
    fn commutator_of_shifted_pair() {
        let vars = Vars::new(&["x", "y", "z"]).unwrap();
        let u = elem(&vars, "x*z");
        let v = elem(&vars, "x*y");
        let c = commutator(&u, &v).unwrap();
        assert_eq!(c.uv.to_string(), "1*[A/(x,y)] + 1*[A/(y,z)]");
        assert_eq!(c.vu.to_string(), "1*[A/(x,z)] + 1*[A/(y,z)]");
        assert_eq!(c.difference.to_string(), "1*[A/(x,y)] - 1*[A/(x,z)]");
    }

    #[test]
    fn witness_formula_small() {
        let vars = Vars::new(&["x", "y", "z"]).unwrap();
        let u = elem(&vars, "x*z");
        let v = elem(&vars, "x*y");
        let rep = verify_witness_formula(&u, &v).unwrap();
        assert!(rep.sound);
        assert!(rep.equal);
        assert_eq!(rep.witness.len(), 1);
        assert_eq!(rep.witness[0].fraction().unwrap().to_string(), "y/z");
        assert_eq!(rep.rhs_total.to_string(), "1*[A/(x,y)] - 1*[A/(x,z)]");
    }

    #[test]
    fn witness_formula_three_shared_primes() {
        let vars = Vars::new(&["x", "w", "rho", "y", "z"]).unwrap();
        let u = elem(&vars, "x^2*w^3*rho*z^2");
        let v = elem(&vars, "x^4*w^6*rho^3*y");
        let rep = verify_witness_formula(&u, &v).unwrap();
        assert!(rep.sound);
        assert!(rep.equal);
        assert_eq!(
            rep.commutator.difference.to_string(),
            "2*[A/(x,y)] - 8*[A/(x,z)] + 3*[A/(w,y)] - 12*[A/(w,z)] + 1*[A/(rho,y)] - 6*[A/(rho,z)]"
        );
    }

    #[test]
    fn witness_formula_coprime_pair_is_trivial() {
        let vars = Vars::new(&["x", "y", "z"]).unwrap();
        let u = elem(&vars, "x^2");
        let v = elem(&vars, "y*z");
        let rep = verify_witness_formula(&u, &v).unwrap();
        assert!(rep.witness.is_empty());
        assert!(rep.equal);
        assert!(rep.commutator.difference.is_zero());
    }

    #[test]
    fn witness_formula_in_the_plane() {
        let vars = Vars::new(&["x", "y"]).unwrap();
        // shared irreducible factor x, plus a transversal piece each
        let u = elem(&vars, "x*y");
        let v = elem(&vars, "x*(x + y)");
        let rep = verify_witness_formula(&u, &v).unwrap();
        assert!(rep.sound);
        assert!(rep.equal);
    }

    #[test]
    fn local_balance_at_both_interesting_primes() {
        let vars = Vars::new(&["x", "w", "rho", "y", "z"]).unwrap();
        let u = elem(&vars, "x^2*w^3*rho*z^2");
        let v = elem(&vars, "x^4*w^6*rho^3*y");
        // the only-v prime (y) and only-u prime (z) balance out here
        let rep = verify_local_balance(&u, &v, &coord(&vars, &[3, 4])).unwrap();
        assert_eq!(rep.lhs, 0);
        assert_eq!(rep.rhs, 0);
        assert!(rep.matches);
        // a mixed prime picks up the witness coefficient
        let rep = verify_local_balance(&u, &v, &coord(&vars, &[0, 3])).unwrap();
        assert_eq!(rep.lhs, 2);
        assert!(rep.matches);
        let rep = verify_local_balance(&u, &v, &coord(&vars, &[0, 4])).unwrap();
        assert_eq!(rep.lhs, -8);
        assert!(rep.matches);
    }

    #[test]
    fn local_balance_rejects_wrong_height() {
        let vars = Vars::new(&["x", "y", "z"]).unwrap();
        let u = elem(&vars, "x*z");
        let v = elem(&vars, "x*y");
        assert!(matches!(
            verify_local_balance(&u, &v, &coord(&vars, &[0])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn equal_orders_route() {
        let vars = Vars::new(&["x", "y", "z"]).unwrap();
        let u = elem(&vars, "x^2*z");
        let v = elem(&vars, "x^2*y");
        let rep = verify_equal_orders(&u, &v).unwrap();
        assert_eq!(rep.num.to_string(), "y");
        assert_eq!(rep.den.to_string(), "z");
        assert!(rep.equal);
        assert_eq!(
            rep.rhs_total.to_string(),
            "2*[A/(x,y)] - 2*[A/(x,z)]"
        );
    }

    #[test]
    fn equal_orders_rejects_skew_pair() {
        let vars = Vars::new(&["x", "y", "z"]).unwrap();
        let u = elem(&vars, "x*z");
        let v = elem(&vars, "x^2*y");
        assert!(matches!(
            verify_equal_orders(&u, &v),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn single_prime_route() {
        let vars = Vars::new(&["x", "y", "z"]).unwrap();
        let u = elem(&vars, "x*z");
        let v = elem(&vars, "x*y");
        let rep = verify_single_prime(&u, &v).unwrap();
        assert_eq!(rep.entry.prime.to_string(), "(x)");
        assert!(rep.equal);
        let u = elem(&vars, "x*y*z");
        let v = elem(&vars, "x*y^2");
        assert!(matches!(
            verify_single_prime(&u, &v),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn pair_swap_with_one_extra_prime() {
        let vars = Vars::new(&["x", "y", "z", "w"]).unwrap();
        let u = elem(&vars, "x*z");
        let v = elem(&vars, "x*y");
        let rep = verify_pair_swap(&u, &v, &[(prime(&vars, "w"), 2)]).unwrap();
        assert_eq!(rep.a.to_string(), "y*w^2");
        assert_eq!(rep.b.to_string(), "z*w^2");
        assert!(rep.equal);
        assert_eq!(
            rep.rhs_total.to_string(),
            "2*[A/(y,w)] - 2*[A/(z,w)]"
        );
    }

    #[test]
    fn pair_swap_with_no_extras_vanishes() {
        let vars = Vars::new(&["x", "y", "z"]).unwrap();
        let u = elem(&vars, "x*z");
        let v = elem(&vars, "x*y");
        let rep = verify_pair_swap(&u, &v, &[]).unwrap();
        assert!(rep.swap.difference.is_zero());
        assert!(rep.equal);
    }

    #[test]
    fn pair_swap_rejects_extras_in_support() {
        let vars = Vars::new(&["x", "y", "z"]).unwrap();
        let u = elem(&vars, "x*z");
        let v = elem(&vars, "x*y");
        assert!(matches!(
            verify_pair_swap(&u, &v, &[(prime(&vars, "y"), 1)]),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            verify_pair_swap(&u, &v, &[(prime(&vars, "x"), 0)]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn three_term_split_three_shared_primes() {
        let vars = Vars::new(&["x", "w", "rho", "y", "z"]).unwrap();
        let u = elem(&vars, "x^2*w^3*rho*z^2");
        let v = elem(&vars, "x^4*w^6*rho^3*y");
        let rep = verify_three_term(&u, &v, &[]).unwrap();
        assert_eq!((rep.n1, rep.m1), (2, 4));
        assert_eq!(rep.a1.to_string(), "rho^2*y^2");
        assert_eq!(rep.b1.to_string(), "z^8");
        assert!(rep.split_matches);
        assert!(rep.t2_vanishes);
        assert!(rep.swap_matches);
        assert!(rep.cross_matches);
        assert!(rep.total_matches);
        assert_eq!(
            rep.t1.to_string(),
            "-16*[A/(x,rho)] - 24*[A/(w,rho)] + 8*[A/(rho,y)] - 16*[A/(rho,z)]"
        );
        assert!(rep.swap_lhs.is_zero());
        assert!(rep.cross_lhs.is_zero());
    }

    #[test]
    fn three_term_split_with_extra_prime() {
        let vars = Vars::new(&["x", "w", "y", "z", "s"]).unwrap();
        let u = elem(&vars, "x*w^2*z");
        let v = elem(&vars, "x^2*w*y");
        let rep = verify_three_term(&u, &v, &[(prime(&vars, "s"), 1)]).unwrap();
        assert_eq!((rep.n1, rep.m1), (2, 1));
        assert_eq!(rep.a1.to_string(), "x^3*y^2*s");
        assert_eq!(rep.b1.to_string(), "z*s");
        assert!(rep.split_matches);
        assert!(rep.t2_vanishes);
        assert!(rep.swap_matches);
        assert!(rep.cross_matches);
        assert!(rep.total_matches);
        assert_eq!(
            rep.extra_rhs.to_string(),
            "3*[A/(x,s)] + 2*[A/(y,s)] - 1*[A/(z,s)]"
        );
    }

    #[test]
    fn three_term_rejects_degenerate_shapes() {
        let vars = Vars::new(&["x", "y", "z"]).unwrap();
        // one shared prime only
        let u = elem(&vars, "x*z");
        let v = elem(&vars, "x*y");
        assert!(matches!(
            verify_three_term(&u, &v, &[]),
            Err(Error::Precondition(_))
        ));
        // all ratios equal, so the tie block is everything
        let u = elem(&vars, "x*y*z");
        let v = elem(&vars, "x^2*y^2");
        assert!(matches!(
            verify_three_term(&u, &v, &[]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn symbolic_power_lengths_split() {
        let vars = Vars::new(&["x", "w", "rho", "y", "z"]).unwrap();
        let u = elem(&vars, "x^2*w^3*rho*z^2");
        let v = elem(&vars, "x^4*w^6*rho^3*y");
        let rep = verify_symbolic_power_lengths(&u, &v, &coord(&vars, &[3, 4])).unwrap();
        assert_eq!(rep.v_lhs, Length::Finite(2));
        assert!(rep.v_matches);
        assert_eq!(rep.u_lhs, Length::Finite(2));
        assert!(rep.u_matches);
    }

    #[test]
    fn symbolic_power_lengths_partial_support() {
        let vars = Vars::new(&["x", "y", "z"]).unwrap();
        let u = elem(&vars, "z");
        let v = elem(&vars, "x^2*y^3");
        // only (x) contributes at (x,z); the (y) term localizes away
        let rep = verify_symbolic_power_lengths(&u, &v, &coord(&vars, &[0, 2])).unwrap();
        assert_eq!(rep.v_lhs, Length::Finite(2));
        assert_eq!(rep.v_rhs, Length::Finite(2));
        assert!(rep.v_matches);
        assert_eq!(rep.u_lhs, Length::Finite(2));
        assert!(rep.u_matches);
    }
}
