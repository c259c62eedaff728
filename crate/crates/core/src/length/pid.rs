use super::Length;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::vars::Vars;
use num_traits::Zero;
use std::fmt;

/// Finitely presented modules over Q[t] localized at (t), given by a
/// presentation matrix. Lengths come from the Smith normal form: the
/// cokernel is the direct sum of Q[t]/(d_i), and localizing keeps only the
/// t-power part of each d_i, so the length is the sum of the t-orders.

/// A presentation matrix with univariate polynomial entries, row-major. The
/// cokernel of the map it defines is the module presented.
#[derive(Debug, Clone)]
pub struct PIDMatrix {
    vars: Vars,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

/// Internal dense univariate representation: ascending coefficients, no
/// trailing zero.
type Univ = Vec<Rat>;

fn to_univ(p: &Poly) -> Univ {
    let mut c: Vec<Rat> = p
        .coeffs_in_var(0)
        .iter()
        .map(|q| q.as_constant().expect("univariate entry"))
        .collect();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    c
}

fn from_univ(vars: &Vars, c: &Univ) -> Poly {
    let mut out = Poly::zero(vars);
    for (k, coeff) in c.iter().enumerate() {
        if !coeff.is_zero() {
            out = out.add_ref(&Poly::monomial(vars, crate::mono::Mono::var_pow(0, k as u32), coeff.clone()));
        }
    }
    out
}

fn udeg(p: &Univ) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

fn utrim(p: &mut Univ) {
    while p.last().is_some_and(|x| x.is_zero()) {
        p.pop();
    }
}

fn umul(a: &Univ, b: &Univ) -> Univ {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let prod = x * y;
            out[i + j] += prod;
        }
    }
    utrim(&mut out);
    out
}

fn usub(a: &Univ, b: &Univ) -> Univ {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), Rat::zero());
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    utrim(&mut out);
    out
}

/// Division with remainder by a nonzero divisor.
fn udiv_rem(a: &Univ, b: &Univ) -> (Univ, Univ) {
    let db = udeg(b).expect("division by zero");
    let mut r = a.clone();
    let mut q: Univ = Vec::new();
    while let Some(dr) = udeg(&r) {
        if dr < db {
            break;
        }
        let k = dr - db;
        let c = &r[dr] / &b[db];
        if q.len() < k + 1 {
            q.resize(k + 1, Rat::zero());
        }
        q[k] = c.clone();
        let mut shifted = vec![Rat::zero(); k];
        shifted.extend(b.iter().map(|x| x * &c));
        r = usub(&r, &shifted);
    }
    utrim(&mut q);
    (q, r)
}

/// Order of vanishing at t = 0: index of the lowest nonzero coefficient.
fn uord(p: &Univ) -> Option<u64> {
    p.iter().position(|c| !c.is_zero()).map(|i| i as u64)
}

/// Rescales a group of entries by one nonzero rational so all coefficients
/// become integers with no common factor. Multiplying a row by a scalar is
/// a unit operation on the presentation, so invariant orders are untouched;
/// without it the Euclidean sweeps blow coefficients up.
fn primitive_scale(ps: &mut [Univ]) {
    use num_integer::Integer;
    let mut den_lcm = num_bigint::BigInt::from(1);
    let mut num_gcd = num_bigint::BigInt::from(0);
    for p in ps.iter() {
        for c in p.iter() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
    }
    if num_gcd.is_zero() {
        return;
    }
    let s = Rat::new(den_lcm, num_gcd);
    if s == Rat::from_integer(1.into()) {
        return;
    }
    for p in ps.iter_mut() {
        for c in p.iter_mut() {
            *c = &*c * &s;
        }
    }
}

impl PIDMatrix {
    /// Builds a matrix from rows of entries; every entry must be a
    /// polynomial in the single variable of the context.
    pub fn new(vars: &Vars, rows: Vec<Vec<Poly>>) -> Result<PIDMatrix> {
        if vars.len() != 1 {
            return Err(Error::BadVars(format!(
                "presentation matrices live over one variable, got {vars}"
            )));
        }
        let r = rows.len();
        if r == 0 {
            return Err(Error::Precondition("a presentation matrix needs at least one row".into()));
        }
        let c = rows[0].len();
        if c == 0 {
            return Err(Error::Precondition("a presentation matrix needs at least one column".into()));
        }
        let mut entries = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(Error::Precondition("ragged rows in a presentation matrix".into()));
            }
            for e in row {
                vars.same_as(e.vars())?;
                entries.push(e.clone());
            }
        }
        Ok(PIDMatrix {
            vars: vars.clone(),
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    fn univ_grid(&self) -> Vec<Vec<Univ>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| to_univ(self.entry(i, j))).collect())
            .collect()
    }

    /// Diagonal of the Smith normal form: monic entries d_1 | d_2 | ...,
    /// padded with zeros up to min(rows, cols).
    pub fn smith_diagonal(&self) -> Vec<Poly> {
        let mut m = self.univ_grid();
        let (r, c) = (self.rows, self.cols);
        let n = r.min(c);
        let mut diag: Vec<Univ> = Vec::with_capacity(n);
        let mut top = 0usize;
        while top < n {
            for row in m.iter_mut().skip(top) {
                primitive_scale(&mut row[top..]);
            }
            // find a nonzero entry of minimal degree in the remaining block
            let mut pivot: Option<(usize, usize, usize)> = None;
            for i in top..r {
                for j in top..c {
                    if let Some(d) = udeg(&m[i][j]) {
                        if pivot.map_or(true, |(_, _, pd)| d < pd) {
                            pivot = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = pivot else {
                break; // block is zero
            };
            m.swap(top, pi);
            for row in m.iter_mut() {
                row.swap(top, pj);
            }
            // clear the pivot row and column by Euclidean steps; a nonzero
            // remainder becomes the new, smaller pivot on the next sweep
            let mut dirty = true;
            while dirty {
                dirty = false;
                for row in m.iter_mut().skip(top) {
                    primitive_scale(&mut row[top..]);
                }
                for i in (top + 1)..r {
                    if m[i][top].is_empty() {
                        continue;
                    }
                    let (q, rem) = udiv_rem(&m[i][top], &m[top][top]);
                    for j in top..c {
                        let sub = umul(&q, &m[top][j]);
                        m[i][j] = usub(&m[i][j], &sub);
                    }
                    debug_assert_eq!(m[i][top], rem);
                    if !rem.is_empty() {
                        m.swap(top, i);
                        dirty = true;
                    }
                }
                for j in (top + 1)..c {
                    if m[top][j].is_empty() {
                        continue;
                    }
                    let (q, rem) = udiv_rem(&m[top][j], &m[top][top]);
                    for i in top..r {
                        let sub = umul(&q, &m[i][top]);
                        m[i][j] = usub(&m[i][j], &sub);
                    }
                    debug_assert_eq!(m[top][j], rem);
                    if !rem.is_empty() {
                        for row in m.iter_mut() {
                            row.swap(top, j);
                        }
                        dirty = true;
                    }
                }
            }
            diag.push(m[top][top].clone());
            top += 1;
        }
        while diag.len() < n {
            diag.push(Vec::new());
        }
        // enforce the divisibility chain: replace (a, b) by (gcd, lcm)
        for i in 0..diag.len() {
            for j in (i + 1)..diag.len() {
                if diag[i].is_empty() {
                    diag.swap(i, j);
                    continue;
                }
                if diag[j].is_empty() {
                    continue;
                }
                let (_, rem) = udiv_rem(&diag[j], &diag[i]);
                if !rem.is_empty() {
                    let g = ugcd(diag[i].clone(), diag[j].clone());
                    let prod = umul(&diag[i], &diag[j]);
                    let (l, lr) = udiv_rem(&prod, &g);
                    debug_assert!(lr.is_empty());
                    diag[i] = g;
                    diag[j] = l;
                }
            }
        }
        // monic normalization
        diag.iter()
            .map(|d| {
                if d.is_empty() {
                    return Poly::zero(&self.vars);
                }
                let lc = d.last().unwrap().clone();
                let monic: Univ = d.iter().map(|c| c / &lc).collect();
                from_univ(&self.vars, &monic)
            })
            .collect()
    }
}

fn ugcd(mut a: Univ, mut b: Univ) -> Univ {
    while !b.is_empty() {
        let (_, mut r) = udiv_rem(&a, &b);
        primitive_scale(std::slice::from_mut(&mut r));
        a = b;
        b = r;
    }
    a
}

/// Multiplicative inverse of a power series with nonzero constant term,
/// modulo t^n.
fn series_inv(u: &[Rat], n: usize) -> Vec<Rat> {
    let u0 = u[0].clone();
    debug_assert!(!u0.is_zero());
    let mut b = vec![Rat::zero(); n];
    b[0] = Rat::from_integer(1.into()) / u0.clone();
    for k in 1..n {
        let mut acc = Rat::zero();
        for j in 1..=k.min(u.len() - 1) {
            if !u[j].is_zero() && !b[k - j].is_zero() {
                acc += &u[j] * &b[k - j];
            }
        }
        if !acc.is_zero() {
            b[k] = -(acc / u0.clone());
        }
    }
    b
}

/// Product of two truncated series, modulo t^n.
fn series_mul(a: &[Rat], b: &[Rat], n: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Rank of the matrix over the fraction field together with the t-orders of
/// its invariant factors over the localization at (t), in nondecreasing
/// order.
///
/// Works by t-adic elimination modulo t^cut with cut = rows * maxdeg + 1:
/// the pivot of minimal order t^e * unit divides every remaining entry, so
/// one pass isolates it and the reduced block drops out exactly. Truncation
/// is harmless because every partial sum of invariant orders is the order
/// of a gcd of minors, and a nonzero minor has degree at most rows * maxdeg.
/// Each elimination with a pivot of order e costs e trusted coefficients,
/// and the running sum of orders stays below the cut whenever the data is
/// finite, so the trusted window never empties early.
fn coker_orders(m: &PIDMatrix) -> (usize, Vec<u64>) {
    let (r, c) = (m.rows, m.cols);
    let maxdeg = m
        .entries
        .iter()
        .map(|e| e.degree_in(0).map_or(0, |d| d as usize))
        .max()
        .unwrap_or(0);
    let cut = r * maxdeg + 1;

    let mut g: Vec<Vec<Vec<Rat>>> = Vec::with_capacity(r);
    for i in 0..r {
        let mut row = Vec::with_capacity(c);
        for j in 0..c {
            let coeffs = m.entry(i, j).coeffs_in_var(0);
            let mut window = vec![Rat::zero(); cut];
            for (k, p) in coeffs.iter().enumerate().take(cut) {
                window[k] = p.as_constant().expect("univariate entry");
            }
            row.push(window);
        }
        g.push(row);
    }

    let mut live_rows: Vec<usize> = (0..r).collect();
    let mut live_cols: Vec<usize> = (0..c).collect();
    let mut prec = cut;
    let mut orders: Vec<u64> = Vec::new();
    while !live_rows.is_empty() && !live_cols.is_empty() && prec > 0 {
        let mut best: Option<(usize, usize, usize)> = None;
        for (ri, &i) in live_rows.iter().enumerate() {
            for (cj, &j) in live_cols.iter().enumerate() {
                if let Some(o) = g[i][j][..prec].iter().position(|x| !x.is_zero()) {
                    if best.is_none_or(|(_, _, b)| o < b) {
                        best = Some((ri, cj, o));
                    }
                }
            }
        }
        let Some((ri, cj, e)) = best else {
            break;
        };
        orders.push(e as u64);
        let pi = live_rows[ri];
        let pj = live_cols[cj];
        let inv = series_inv(&g[pi][pj][e..], cut - e);
        for &k in &live_rows {
            if k == pi || g[k][pj][..prec].iter().all(|x| x.is_zero()) {
                continue;
            }
            // factor = entry / pivot; the pivot order is minimal, so the
            // shifted entry is a genuine series
            let factor = series_mul(&g[k][pj][e..], &inv, cut - e);
            for &l in &live_cols {
                if l == pj {
                    continue;
                }
                let sub = series_mul(&factor, &g[pi][l], cut);
                for (slot, s) in sub.into_iter().enumerate() {
                    if !s.is_zero() {
                        g[k][l][slot] -= s;
                    }
                }
            }
        }
        live_rows.remove(ri);
        live_cols.remove(cj);
        prec -= e;
    }
    (orders.len(), orders)
}

impl fmt::Display for PIDMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.entry(i, j).to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Length of the cokernel over the localization at (t): infinite when the
/// matrix has a nonzero cokernel rank, otherwise the sum of the t-orders of
/// the invariant factors.
pub fn pid_coker_length(m: &PIDMatrix) -> Length {
    let (rank, orders) = coker_orders(m);
    if rank < m.rows() {
        return Length::Infinite;
    }
    Length::Finite(orders.iter().sum())
}

/// Report for the additivity check of the Euler form of multiplication by
/// an element on a presented module: the length of the quotient minus the
/// length of the kernel equals the order of the element times the rank.
#[derive(Debug, Clone)]
pub struct ChiReport {
    pub len_quotient: u64,
    pub len_kernel: u64,
    pub chi: i64,
    pub rank: usize,
    pub ord_x: u64,
    pub matches: bool,
}

/// Computes chi(x on coker m) two ways. The quotient length goes through an
/// augmented presentation (append x times the identity), the kernel length
/// through the invariant factors of m itself, and the prediction is
/// ord(x) * rank.
pub fn check_chi(m: &PIDMatrix, x: &Poly) -> Result<ChiReport> {
    m.vars().same_as(x.vars())?;
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let ux = to_univ(x);
    let ord_x = uord(&ux).expect("nonzero element");

    // quotient: coker [m | x I]
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row: Vec<Poly> = (0..m.cols()).map(|j| m.entry(i, j).clone()).collect();
        for k in 0..m.rows() {
            row.push(if k == i { x.clone() } else { Poly::zero(m.vars()) });
        }
        rows.push(row);
    }
    let augmented = PIDMatrix::new(m.vars(), rows)?;
    let len_quotient = match pid_coker_length(&augmented) {
        Length::Finite(n) => n,
        Length::Infinite => {
            return Err(Error::Precondition(
                "the quotient by the element is not finite length".into(),
            ))
        }
    };

    // kernel: on each torsion factor Q[t]/(t^e u), multiplication by x
    // (order o) has kernel of length min(e, o); the free part is torsion
    // free, so it contributes nothing
    let (matrix_rank, torsion) = coker_orders(m);
    let rank = m.rows() - matrix_rank;
    let len_kernel: u64 = torsion.iter().map(|&e| e.min(ord_x)).sum();

    let chi = len_quotient as i64 - len_kernel as i64;
    let predicted = ord_x as i64 * rank as i64;
    Ok(ChiReport {
        len_quotient,
        len_kernel,
        chi,
        rank,
        ord_x,
        matches: chi == predicted,
    })
}

/// Report for the determinant route to the cokernel length of an injective
/// square matrix: the length equals ord of the determinant, tested through
/// a claimed fraction a/b with det * b = a.
#[derive(Debug, Clone)]
pub struct DetReport {
    pub det: Poly,
    pub coker_length: u64,
    pub ord_a: u64,
    pub ord_b: u64,
    pub fraction_matches: bool,
    pub length_matches: bool,
}

/// Verifies that det(m) equals a/b as elements of the fraction field and
/// that the cokernel length equals ord(a) - ord(b). The determinant comes
/// from fraction-free elimination, the length from the invariant factors:
/// independent routes to the same number.
pub fn check_det_length(m: &PIDMatrix, a: &Poly, b: &Poly) -> Result<DetReport> {
    m.vars().same_as(a.vars())?;
    m.vars().same_as(b.vars())?;
    if m.rows() != m.cols() {
        return Err(Error::Precondition(format!(
            "the determinant route needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroElement);
    }
    let det = bareiss_det(m);
    if det.is_zero() {
        return Err(Error::ZeroDeterminant);
    }
    let coker_length = match pid_coker_length(m) {
        Length::Finite(n) => n,
        Length::Infinite => return Err(Error::ZeroDeterminant),
    };
    let ord_a = u64::from(a.min_degree_in(0).unwrap_or(0));
    let ord_b = u64::from(b.min_degree_in(0).unwrap_or(0));
    let fraction_matches = det.mul_ref(b) == *a;
    let length_matches = ord_a >= ord_b && coker_length == ord_a - ord_b;
    Ok(DetReport {
        det,
        coker_length,
        ord_a,
        ord_b,
        fraction_matches,
        length_matches,
    })
}

/// Fraction-free determinant; every division is exact.
fn bareiss_det(m: &PIDMatrix) -> Poly {
    let n = m.rows();
    let vars = m.vars().clone();
    let mut a: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| m.entry(i, j).clone()).collect())
        .collect();
    let mut sign = false;
    let mut prev = Poly::one(&vars);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return Poly::zero(&vars),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = a[k][k].mul_ref(&a[i][j]).sub_ref(&a[i][k].mul_ref(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("fraction-free elimination divides exactly");
            }
        }
        for i in (k + 1)..n {
            a[i][k] = Poly::zero(&vars);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        det.neg_ref()
    } else {
        det
    }
}
