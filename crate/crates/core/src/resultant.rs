use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::Rat;
use num_traits::One;

/// Resultants of bivariate polynomials with respect to one variable, via the
/// subresultant polynomial remainder sequence. Coefficients stay exact; the
/// intermediate-swell control is the classical g/h bookkeeping.

/// Dense univariate polynomial over Q(other vars), represented as
/// coefficient vectors of `Poly` in ascending degree. Invariant: no trailing
/// zero coefficient (so `deg` is `coeffs.len() - 1`), empty means zero.
#[derive(Debug, Clone)]
struct UPoly {
    coeffs: Vec<Poly>,
}

impl UPoly {
    fn from_poly(p: &Poly, var: usize) -> UPoly {
        let mut coeffs = p.coeffs_in_var(var);
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn deg(&self) -> usize {
        debug_assert!(!self.is_zero());
        self.coeffs.len() - 1
    }

    fn lc(&self) -> &Poly {
        self.coeffs.last().expect("leading coefficient of zero")
    }

    fn scale(&self, c: &Poly) -> UPoly {
        if c.is_zero() {
            return UPoly { coeffs: Vec::new() };
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
        }
    }

    fn shift(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let vars = self.coeffs[0].vars().clone();
        let mut coeffs = vec![Poly::zero(&vars); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    fn sub(&self, other: &UPoly) -> UPoly {
        let mut coeffs = self.coeffs.clone();
        for (i, c) in other.coeffs.iter().enumerate() {
            if i < coeffs.len() {
                coeffs[i] = coeffs[i].sub_ref(c);
            } else {
                coeffs.push(c.neg_ref());
            }
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    /// Exact division of every coefficient by `d`. Panics if not exact; the
    /// subresultant recurrences guarantee exactness at every call site.
    fn div_exact(&self, d: &Poly) -> UPoly {
        UPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.div_exact(d).expect("inexact division in remainder sequence"))
                .collect(),
        }
    }
}

/// Pseudo-remainder: `prem(A, B) = lc(B)^(deg A - deg B + 1) * A  mod  B`,
/// with the full power multiplied in up front so every step divides exactly.
fn prem(a: &UPoly, b: &UPoly) -> UPoly {
    debug_assert!(!b.is_zero() && a.deg() >= b.deg());
    let d = a.deg() - b.deg();
    let mut r = a.scale(&b.lc().pow((d + 1) as u32));
    while !r.is_zero() && r.deg() >= b.deg() {
        let k = r.deg() - b.deg();
        let q = r.lc().div_exact(b.lc()).expect("pseudo-remainder leading division");
        r = r.sub(&b.scale(&q).shift(k));
    }
    r
}

/// Resultant of `f` and `g` with respect to `vars[var]`, computed over the
/// polynomial ring in the remaining variables.
///
/// Conventions: if exactly one argument is constant in `var`, say `f = c`,
/// the result is `c^(deg g)`; both constant is an error (no elimination to
/// perform). The zero polynomial resolves to a zero resultant when the other
/// argument has positive degree, and is an error otherwise.
pub fn resultant(f: &Poly, g: &Poly, var: usize) -> Result<Poly> {
    f.vars().same_as(g.vars())?;
    let vars = f.vars().clone();
    let fa = UPoly::from_poly(f, var);
    let ga = UPoly::from_poly(g, var);
    if fa.is_zero() || ga.is_zero() {
        let other = if fa.is_zero() { &ga } else { &fa };
        if other.is_zero() || other.deg() == 0 {
            return Err(Error::ResultantBothConstant(format!(
                "res({f}, {g}) with respect to {}",
                vars.name(var)
            )));
        }
        return Ok(Poly::zero(&vars));
    }
    if fa.deg() == 0 && ga.deg() == 0 {
        return Err(Error::ResultantBothConstant(format!(
            "res({f}, {g}) with respect to {}",
            vars.name(var)
        )));
    }
    if fa.deg() == 0 {
        return Ok(fa.coeffs[0].pow(ga.deg() as u32));
    }
    if ga.deg() == 0 {
        return Ok(ga.coeffs[0].pow(fa.deg() as u32));
    }

    // Subresultant PRS. `s` tracks the sign from degree swaps, `g_`/`h_` the
    // running content factors.
    let (mut a, mut b) = (fa, ga);
    let mut s = Rat::one();
    if a.deg() < b.deg() {
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let mut g_ = Poly::one(&vars);
    let mut h_ = Poly::one(&vars);
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        let r = prem(&a, &b);
        if r.is_zero() {
            // b has positive degree here, so the inputs share a factor.
            return Ok(Poly::zero(&vars));
        }
        a = b;
        let divisor = g_.mul_ref(&h_.pow(delta as u32));
        b = r.div_exact(&divisor);
        g_ = a.lc().clone();
        h_ = if delta == 0 {
            h_
        } else if delta == 1 {
            g_.clone()
        } else {
            // h = g^delta / h^(delta-1)
            g_.pow(delta as u32)
                .div_exact(&h_.pow((delta - 1) as u32))
                .expect("content recurrence division")
        };
        if b.deg() == 0 {
            // res = s * h^(1 - deg a) * lc(b)^(deg a), with the negative power
            // an exact division.
            let da = a.deg();
            let num = b.coeffs[0].pow(da as u32);
            let res = if da <= 1 {
                num.mul_ref(&h_.pow((1 - da) as u32))
            } else {
                num.div_exact(&h_.pow((da - 1) as u32))
                    .expect("final content division")
            };
            return Ok(res.scale(&s));
        }
    }
}

/// Resultant normalized to have a positive leading rational coefficient
/// (zero stays zero). Useful when only the root set matters.
pub fn resultant_normalized(f: &Poly, g: &Poly, var: usize) -> Result<Poly> {
    let r = resultant(f, g, var)?;
    if r.is_zero() {
        return Ok(r);
    }
    let (_, prim) = r.primitive_part()?;
    Ok(prim)
}
