use crate::error::{Error, Result};
use crate::factored::{FactoredElement, FracElement};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::vars::Vars;
use num_traits::One;

/// Height-one primes of the polynomial ring, their valuations on factored
/// elements, and the data attached to a pair (u, v): the partition of the
/// combined support, the witness fractions a_i/b_i, and the alpha sequence
/// controlling the three-term decomposition.

/// A height-one prime (f) given by its irreducible generator. Generators are
/// kept primitive with a positive leading coefficient, so equal primes have
/// equal generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HeightOnePrime {
    gen: Poly,
}

impl HeightOnePrime {
    /// Accepts a generator that the library can see is irreducible
    /// (a variable, or any polynomial of total degree one).
    pub fn new(gen: Poly) -> Result<HeightOnePrime> {
        let f = FactoredElement::new(&gen.vars().clone(), Rat::one(), vec![(gen, 1)])?;
        Self::from_single_factor(f)
    }

    /// Accepts any nonconstant generator, trusting the caller's word that it
    /// is irreducible.
    pub fn new_asserted(gen: Poly) -> Result<HeightOnePrime> {
        let f = FactoredElement::new_asserted(&gen.vars().clone(), Rat::one(), vec![(gen, 1)])?;
        Self::from_single_factor(f)
    }

    fn from_single_factor(f: FactoredElement) -> Result<HeightOnePrime> {
        match f.factors() {
            [(gen, 1)] => Ok(HeightOnePrime { gen: gen.clone() }),
            _ => Err(Error::ConstantFactor(
                "a prime generator must be a single nonconstant polynomial".into(),
            )),
        }
    }

    pub fn generator(&self) -> &Poly {
        &self.gen
    }

    pub fn vars(&self) -> &Vars {
        self.gen.vars()
    }

    /// Index of the variable when the generator is a coordinate.
    pub fn as_var(&self) -> Option<usize> {
        self.gen.as_var()
    }
}

impl std::fmt::Display for HeightOnePrime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.gen)
    }
}

/// Order of vanishing of a factored element at `p`: the exponent of p's
/// generator among the factors. Factored elements are products of primes, so
/// no division is needed; the element must be nonzero by construction.
pub fn valuation(p: &HeightOnePrime, f: &FactoredElement) -> u32 {
    f.exp_of(p.generator())
}

/// Valuation extended to the fraction field.
pub fn valuation_frac(p: &HeightOnePrime, f: &FracElement) -> i64 {
    f.exp_of(p.generator())
}

/// The height-one support of a pair (u, v), split by which of the two
/// elements each prime divides.
#[derive(Debug, Clone)]
pub struct SupportPartition {
    /// Primes dividing both, with (prime, ord_u, ord_v).
    pub both: Vec<(HeightOnePrime, u32, u32)>,
    /// Primes dividing u only, with their order in u.
    pub only_u: Vec<(HeightOnePrime, u32)>,
    /// Primes dividing v only, with their order in v.
    pub only_v: Vec<(HeightOnePrime, u32)>,
}

pub fn support_partition(u: &FactoredElement, v: &FactoredElement) -> Result<SupportPartition> {
    u.vars().same_as(v.vars())?;
    let mut both = Vec::new();
    let mut only_u = Vec::new();
    let mut only_v = Vec::new();
    for (f, e) in u.factors() {
        let p = HeightOnePrime { gen: f.clone() };
        let m = valuation(&p, v);
        if m > 0 {
            both.push((p, *e, m));
        } else {
            only_u.push((p, *e));
        }
    }
    for (f, e) in v.factors() {
        if u.exp_of(f) == 0 {
            only_v.push((HeightOnePrime { gen: f.clone() }, *e));
        }
    }
    Ok(SupportPartition { both, only_u, only_v })
}

/// One witness fraction: at a prime p with n = ord_p(u), m = ord_p(v), the
/// reduced form a/b of v^n / u^m. Both a and b are products of primes other
/// than p, and a * u^m = b * v^n in the ring.
#[derive(Debug, Clone)]
pub struct WitnessEntry {
    pub prime: HeightOnePrime,
    pub order_u: u32,
    pub order_v: u32,
    pub num: FactoredElement,
    pub den: FactoredElement,
}

impl WitnessEntry {
    pub fn fraction(&self) -> Result<FracElement> {
        FracElement::ratio(&self.num, &self.den)
    }
}

/// The full witness for a pair: one entry per prime dividing both u and v.
pub type Witness = Vec<WitnessEntry>;

/// Builds the witness fractions a_i/b_i = reduced(v^{n_i} / u^{m_i}) for
/// every prime p_i dividing both u and v, where n_i = ord_{p_i}(u) and
/// m_i = ord_{p_i}(v). Cancellation removes p_i itself (the exponents
/// n_i * m_i match on both sides) along with any other shared primes.
pub fn make_witness(u: &FactoredElement, v: &FactoredElement) -> Result<Witness> {
    let part = support_partition(u, v)?;
    let mut out = Vec::with_capacity(part.both.len());
    for (p, n, m) in &part.both {
        let frac = v.to_frac().pow(*n as i64).mul(&u.to_frac().pow(-(*m as i64)))?;
        debug_assert_eq!(frac.exp_of(p.generator()), 0);
        out.push(WitnessEntry {
            prime: p.clone(),
            order_u: *n,
            order_v: *m,
            num: frac.num_part(),
            den: frac.den_part(),
        });
    }
    Ok(out)
}

/// Shared-prime data ordered for the three-term decomposition.
#[derive(Debug, Clone)]
pub struct AlphaData {
    /// The shared primes with (prime, n_i, m_i), sorted so that the ratios
    /// n_i/m_i are nonincreasing; ties keep the canonical prime order.
    pub order: Vec<(HeightOnePrime, u32, u32)>,
    /// Number of leading entries whose ratio equals the first ratio.
    pub tie_block: usize,
    /// alpha_j = n_1 * m_j - m_1 * n_j for each j (zero exactly on the tie
    /// block, nonnegative everywhere).
    pub alpha: Vec<i64>,
}

/// Sorts the shared primes by descending ratio n_i/m_i and records the
/// cross-multiplied differences against the top entry.
pub fn alpha_sequence(u: &FactoredElement, v: &FactoredElement) -> Result<AlphaData> {
    let part = support_partition(u, v)?;
    if part.both.is_empty() {
        return Err(Error::Precondition(
            "the pair has no shared prime, so there is nothing to order".into(),
        ));
    }
    let mut order = part.both;
    // ratio n/m descending; compare n_i/m_i vs n_j/m_j by cross-multiplying
    order.sort_by(|(pi, ni, mi), (pj, nj, mj)| {
        let lhs = u64::from(*ni) * u64::from(*mj);
        let rhs = u64::from(*nj) * u64::from(*mi);
        // descending generator order puts single variables in context order
        rhs.cmp(&lhs).then_with(|| pj.cmp(pi))
    });
    let (_, n1, m1) = order[0].clone();
    let alpha: Vec<i64> = order
        .iter()
        .map(|(_, nj, mj)| i64::from(n1) * i64::from(*mj) - i64::from(m1) * i64::from(*nj))
        .collect();
    let tie_block = alpha.iter().take_while(|a| **a == 0).count();
    debug_assert!(alpha.iter().all(|a| *a >= 0));
    Ok(AlphaData { order, tie_block, alpha })
}
