//! Seeded instance generators for the randomized suites. Every function
//! draws only from the caller's RNG, so a fixed seed reproduces the exact
//! instance stream.

use crate::error::Result;
use crate::factored::{FactoredElement, FracElement};
use crate::length::PIDMatrix;
use crate::mono::Mono;
use crate::poly::Poly;
use crate::rat::Rat;
use crate::vars::Vars;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;

fn shuffled_indices(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    idx
}

fn var_power_product(
    vars: &Vars,
    parts: &[(usize, u32)],
) -> Result<FactoredElement> {
    let factors = parts.iter().map(|&(i, e)| (Poly::var(vars, i), e)).collect();
    FactoredElement::new(vars, Rat::one(), factors)
}

/// Monomial pair sharing one to four primes, with up to two one-sided
/// primes on each side; exponents run 1 to 5.
pub fn monomial_pair(
    rng: &mut impl Rng,
    vars: &Vars,
) -> Result<(FactoredElement, FactoredElement)> {
    let n = vars.len();
    let idx = shuffled_indices(rng, n);
    let shared = rng.random_range(1..=n.min(4));
    let rest = n - shared;
    let a = rng.random_range(0..=rest.min(2));
    let b = rng.random_range(0..=(rest - a).min(2));
    let mut fu = Vec::new();
    let mut fv = Vec::new();
    for &i in &idx[..shared] {
        fu.push((i, rng.random_range(1..=5)));
        fv.push((i, rng.random_range(1..=5)));
    }
    for &i in &idx[shared..shared + a] {
        fu.push((i, rng.random_range(1..=5)));
    }
    for &i in &idx[shared + a..shared + a + b] {
        fv.push((i, rng.random_range(1..=5)));
    }
    Ok((var_power_product(vars, &fu)?, var_power_product(vars, &fv)?))
}

/// Monomial pair with disjoint supports.
pub fn coprime_pair(
    rng: &mut impl Rng,
    vars: &Vars,
) -> Result<(FactoredElement, FactoredElement)> {
    let n = vars.len();
    let idx = shuffled_indices(rng, n);
    let a = rng.random_range(1..=(n - 1).min(3));
    let b = rng.random_range(1..=(n - a).min(3));
    let fu: Vec<_> = idx[..a].iter().map(|&i| (i, rng.random_range(1..=5))).collect();
    let fv: Vec<_> = idx[a..a + b].iter().map(|&i| (i, rng.random_range(1..=5))).collect();
    Ok((var_power_product(vars, &fu)?, var_power_product(vars, &fv)?))
}

/// Monomial pair whose orders agree at every shared prime.
pub fn equal_orders_pair(
    rng: &mut impl Rng,
    vars: &Vars,
) -> Result<(FactoredElement, FactoredElement)> {
    let n = vars.len();
    let idx = shuffled_indices(rng, n);
    let shared = rng.random_range(1..=n.min(4));
    let rest = n - shared;
    let a = rng.random_range(0..=rest.min(2));
    let b = rng.random_range(0..=(rest - a).min(2));
    let mut fu = Vec::new();
    let mut fv = Vec::new();
    for &i in &idx[..shared] {
        let e = rng.random_range(1..=5);
        fu.push((i, e));
        fv.push((i, e));
    }
    for &i in &idx[shared..shared + a] {
        fu.push((i, rng.random_range(1..=5)));
    }
    for &i in &idx[shared + a..shared + a + b] {
        fv.push((i, rng.random_range(1..=5)));
    }
    Ok((var_power_product(vars, &fu)?, var_power_product(vars, &fv)?))
}

/// Monomial pair with at least two shared primes whose order ratios are not
/// all equal, so the leading tie block is proper.
pub fn distinct_ratio_pair(
    rng: &mut impl Rng,
    vars: &Vars,
) -> Result<(FactoredElement, FactoredElement)> {
    let n = vars.len();
    assert!(n >= 2, "needs at least two variables");
    let idx = shuffled_indices(rng, n);
    let shared = rng.random_range(2..=n.min(4));
    let orders: Vec<(u32, u32)> = loop {
        let o: Vec<(u32, u32)> = (0..shared)
            .map(|_| (rng.random_range(1..=5), rng.random_range(1..=5)))
            .collect();
        let distinct = o.iter().any(|&(ni, mi)| {
            o.iter()
                .any(|&(nj, mj)| u64::from(ni) * u64::from(mj) != u64::from(nj) * u64::from(mi))
        });
        if distinct {
            break o;
        }
    };
    let rest = n - shared;
    let a = rng.random_range(0..=rest.min(2));
    let b = rng.random_range(0..=(rest - a).min(2));
    let mut fu = Vec::new();
    let mut fv = Vec::new();
    for (k, &i) in idx[..shared].iter().enumerate() {
        fu.push((i, orders[k].0));
        fv.push((i, orders[k].1));
    }
    for &i in &idx[shared..shared + a] {
        fu.push((i, rng.random_range(1..=5)));
    }
    for &i in &idx[shared + a..shared + a + b] {
        fv.push((i, rng.random_range(1..=5)));
    }
    Ok((var_power_product(vars, &fu)?, var_power_product(vars, &fv)?))
}

fn one_frac(rng: &mut impl Rng, vars: &Vars) -> Result<FracElement> {
    let units = [(1, 1), (-1, 1), (2, 1), (1, 2), (-3, 2)];
    let (p, q) = units[rng.random_range(0..units.len())];
    let unit = Rat::new(p.into(), q.into());
    let mut factors = Vec::new();
    for i in 0..vars.len() {
        if rng.random_bool(0.4) {
            continue;
        }
        let e = rng.random_range(-4..=4i64);
        if e != 0 {
            factors.push((Poly::var(vars, i), e));
        }
    }
    FracElement::new(vars, unit, factors)
}

/// Pair of monomial rational functions with unit coefficients and exponents
/// between -4 and 4.
pub fn frac_pair(rng: &mut impl Rng, vars: &Vars) -> Result<(FracElement, FracElement)> {
    Ok((one_frac(rng, vars)?, one_frac(rng, vars)?))
}

/// Distinct primitive lines through the origin, as (coefficient of x,
/// coefficient of y) with a sign convention.
fn line_pool(rng: &mut impl Rng, count: usize) -> Vec<(i64, i64)> {
    let mut pool: Vec<(i64, i64)> = Vec::new();
    while pool.len() < count {
        let s = rng.random_range(-3..=3i64);
        let t = rng.random_range(-3..=3i64);
        if s == 0 && t == 0 {
            continue;
        }
        let g = num_integer::gcd(s.abs(), t.abs());
        let (mut s, mut t) = (s / g, t / g);
        if s < 0 || (s == 0 && t < 0) {
            s = -s;
            t = -t;
        }
        if !pool.contains(&(s, t)) {
            pool.push((s, t));
        }
    }
    pool
}

/// Pair of products of rational lines and parabolas through the origin,
/// sharing at least one factor. All pairwise intersection points are
/// rational by construction.
pub fn plane_pair(
    rng: &mut impl Rng,
    vars: &Vars,
) -> Result<(FactoredElement, FactoredElement)> {
    assert!(vars.len() == 2, "plane pairs live in two variables");
    let x = Poly::var(vars, 0);
    let y = Poly::var(vars, 1);
    let n_lines = rng.random_range(2..=4);
    let mut pool: Vec<Poly> = line_pool(rng, n_lines)
        .into_iter()
        .map(|(s, t)| x.scale(&Rat::from_integer(s.into())).add_ref(&y.scale(&Rat::from_integer(t.into()))))
        .collect();
    let n_conics = rng.random_range(0..=2);
    let mut seen = Vec::new();
    while seen.len() < n_conics {
        let a = rng.random_range(1..=3i64) * if rng.random_bool(0.5) { 1 } else { -1 };
        if seen.contains(&a) {
            continue;
        }
        seen.push(a);
        // y - a*x^2 meets every pool member in rational points only
        pool.push(y.sub_ref(&x.mul_ref(&x).scale(&Rat::from_integer(a.into()))));
    }
    let shared = rng.random_range(0..pool.len());
    let mut fu = vec![(pool[shared].clone(), rng.random_range(1..=2u32))];
    let mut fv = vec![(pool[shared].clone(), rng.random_range(1..=2u32))];
    for (i, p) in pool.iter().enumerate() {
        if i == shared {
            continue;
        }
        if rng.random_bool(0.5) {
            fu.push((p.clone(), rng.random_range(1..=2)));
        }
        if rng.random_bool(0.5) {
            fv.push((p.clone(), rng.random_range(1..=2)));
        }
    }
    Ok((
        FactoredElement::new_asserted(vars, Rat::one(), fu)?,
        FactoredElement::new_asserted(vars, Rat::one(), fv)?,
    ))
}

fn one_pid_poly(rng: &mut impl Rng, vars: &Vars, max_deg: u32) -> Poly {
    let deg = rng.random_range(0..=max_deg);
    let mut p = Poly::zero(vars);
    for k in 0..=deg {
        let c = rng.random_range(-3..=3i64);
        if c != 0 {
            p = p.add_ref(&Poly::monomial(vars, Mono::var_pow(0, k), Rat::from_integer(c.into())));
        }
    }
    p
}

/// Square presentation matrix over one variable (entries of degree at most
/// 4, some zero) together with a nonzero element of order at most 2.
pub fn pid_instance(rng: &mut impl Rng, vars: &Vars) -> Result<(PIDMatrix, Poly)> {
    assert!(vars.len() == 1, "presentation matrices live over one variable");
    let r = rng.random_range(1..=4usize);
    let mut rows = Vec::with_capacity(r);
    for _ in 0..r {
        let mut row = Vec::with_capacity(r);
        for _ in 0..r {
            if rng.random_bool(0.15) {
                row.push(Poly::zero(vars));
            } else {
                row.push(one_pid_poly(rng, vars, 4));
            }
        }
        rows.push(row);
    }
    let m = PIDMatrix::new(vars, rows)?;
    let ord = rng.random_range(0..=2);
    let mut x = Poly::zero(vars);
    while x.is_zero() || x.min_degree_in(0) != Some(ord) {
        let c = rng.random_range(-3..=3i64);
        let tail = one_pid_poly(rng, vars, 2);
        x = Poly::monomial(vars, Mono::var_pow(0, ord), Rat::from_integer(c.max(1).into()))
            .add_ref(&tail.mul_mono(&Mono::var_pow(0, ord + 1), &Rat::one()));
    }
    Ok((m, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::support_partition;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn vars6() -> Vars {
        Vars::new(&["x1", "x2", "x3", "x4", "x5", "x6"]).unwrap()
    }

    #[test]
    fn seeded_streams_reproduce() {
        let vars = vars6();
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let (u1, v1) = monomial_pair(&mut r1, &vars).unwrap();
            let (u2, v2) = monomial_pair(&mut r2, &vars).unwrap();
            assert_eq!(u1.to_string(), u2.to_string());
            assert_eq!(v1.to_string(), v2.to_string());
        }
    }

    #[test]
    fn pair_shapes_hold() {
        let vars = vars6();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let (u, v) = monomial_pair(&mut rng, &vars).unwrap();
            let part = support_partition(&u, &v).unwrap();
            assert!(!part.both.is_empty() && part.both.len() <= 4);

            let (u, v) = coprime_pair(&mut rng, &vars).unwrap();
            assert!(support_partition(&u, &v).unwrap().both.is_empty());

            let (u, v) = equal_orders_pair(&mut rng, &vars).unwrap();
            for (_, n, m) in support_partition(&u, &v).unwrap().both {
                assert_eq!(n, m);
            }

            let (u, v) = distinct_ratio_pair(&mut rng, &vars).unwrap();
            let data = crate::primes::alpha_sequence(&u, &v).unwrap();
            assert!(data.order.len() >= 2);
            assert!(data.tie_block < data.order.len());
        }
    }

    #[test]
    fn plane_pairs_share_a_factor() {
        let vars = Vars::new(&["x", "y"]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let (u, v) = plane_pair(&mut rng, &vars).unwrap();
            let part = support_partition(&u, &v).unwrap();
            assert!(!part.both.is_empty());
        }
    }

    #[test]
    fn pid_instances_are_well_formed() {
        let vars = Vars::new(&["t"]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let (m, x) = pid_instance(&mut rng, &vars).unwrap();
            assert!(m.rows() <= 4 && m.rows() == m.cols());
            assert!(!x.is_zero());
            assert!(x.min_degree_in(0).unwrap() <= 2);
        }
    }
}
