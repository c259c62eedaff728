use crate::error::{Error, Result};
use crate::mono::Mono;
use crate::rat::{rat_display, Rat};
use crate::vars::Vars;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Sparse multivariate polynomial over `Rat` in a fixed variable context.
/// Terms live in a map keyed by graded-lex monomial order; no zero
/// coefficient is ever stored, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    vars: Vars,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero(vars: &Vars) -> Self {
        Poly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rat::one())
    }

    pub fn constant(vars: &Vars, c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Mono::one(), c);
        }
        p
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of context");
        Self::monomial(vars, Mono::var(i), Rat::one())
    }

    pub fn var_named(vars: &Vars, name: &str) -> Result<Self> {
        match vars.index_of(name) {
            Some(i) => Ok(Self::var(vars, i)),
            None => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown variable `{name}` in context {vars}"),
            }),
        }
    }

    pub fn monomial(vars: &Vars, m: Mono, c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            if let Some(i) = m.var_indices().max() {
                assert!(i < vars.len(), "variable index out of context");
            }
            p.terms.insert(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.is_one() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Single term `c * m`, if any.
    pub fn as_monomial(&self) -> Option<(&Mono, &Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Exactly one variable to the first power with coefficient 1.
    pub fn as_var(&self) -> Option<usize> {
        let (m, c) = self.as_monomial()?;
        if c.is_one() {
            m.as_var()
        } else {
            None
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn iter_desc(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter().rev()
    }

    /// Leading term under graded lex.
    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(var)).max()
    }

    pub fn min_degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(var)).min()
    }

    pub fn involves_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    pub fn var_indices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().flat_map(|m| m.var_indices()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(acc) => {
                *acc += c;
                if acc.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn assert_same_vars(&self, other: &Poly) {
        assert!(
            self.vars == other.vars,
            "variable contexts differ: {} vs {}",
            self.vars,
            other.vars
        );
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.vars.same_as(&other.vars)?;
        Ok(self.add_ref(other))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.vars.same_as(&other.vars)?;
        Ok(self.sub_ref(other))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.vars.same_as(&other.vars)?;
        Ok(self.mul_ref(other))
    }

    pub fn add_ref(&self, other: &Poly) -> Poly {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &Poly) -> Poly {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul_ref(&self, other: &Poly) -> Poly {
        self.assert_same_vars(other);
        let mut out = Poly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn neg_ref(&self) -> Poly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        if k.is_zero() {
            return Poly::zero(&self.vars);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= k.clone();
        }
        out
    }

    pub fn mul_mono(&self, m: &Mono, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        let mut out = Poly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            out.terms.insert(ma.mul(m), ca * c);
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Substitutes `var := 0`.
    pub fn subst_zero(&self, var: usize) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            if m.exp(var) == 0 {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Substitutes `var := var + shift`.
    pub fn translate(&self, var: usize, shift: &Rat) -> Poly {
        if shift.is_zero() {
            return self.clone();
        }
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            let rest = m.without_var(var);
            // (x + a)^e expanded with a Pascal row.
            let mut binom = Rat::one();
            let mut apow = Rat::one();
            // k runs from e down to 0 over x^k * a^(e-k) * C(e, k).
            // Build coefficients iteratively from k = e.
            let mut row: Vec<Rat> = Vec::with_capacity(e as usize + 1);
            for k in (0..=e).rev() {
                row.push(binom.clone() * apow.clone());
                // next: k-1
                if k > 0 {
                    binom = binom * Rat::from_integer(BigInt::from(k)) / Rat::from_integer(BigInt::from(e - k + 1));
                    apow *= shift.clone();
                }
            }
            for (idx, k) in (0..=e).rev().enumerate() {
                let mono = rest.mul(&Mono::var_pow(var, k));
                out.add_term(mono, c.clone() * row[idx].clone());
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len(), "point arity mismatch");
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(i, e) in m.pairs() {
                let mut p = Rat::one();
                for _ in 0..e {
                    p *= point[i].clone();
                }
                v *= p;
            }
            total += v;
        }
        total
    }

    /// Every term contains some variable from `members`; equivalently the
    /// polynomial lies in the coordinate ideal they generate.
    pub fn in_coordinate_ideal(&self, members: &[usize]) -> bool {
        self.terms
            .keys()
            .all(|m| members.iter().any(|&i| m.exp(i) > 0))
    }

    /// Splits into `unit * primitive` where the primitive part has coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn primitive_part(&self) -> Result<(Rat, Poly)> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut numer_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c.numer() * (&denom_lcm / c.denom());
            numer_gcd = numer_gcd.gcd(&scaled);
        }
        let mut unit = Rat::new(numer_gcd.clone(), denom_lcm.clone());
        let mut prim = self.scale(&unit.recip());
        let lead_negative = prim
            .leading()
            .map(|(_, c)| c.numer().is_negative())
            .unwrap_or(false);
        if lead_negative {
            unit = -unit;
            prim = prim.neg_ref();
        }
        Ok((unit, prim))
    }

    /// Exact multivariate division; `None` when the quotient does not exist.
    pub fn div_exact(&self, g: &Poly) -> Option<Poly> {
        self.assert_same_vars(g);
        assert!(!g.is_zero(), "division by zero polynomial");
        let (gm, gc) = g.leading().unwrap();
        let gm = gm.clone();
        let gc = gc.clone();
        let mut rem = self.clone();
        let mut q = Poly::zero(&self.vars);
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.try_div(&gm)?;
            let c = rc / &gc;
            q.add_term(m.clone(), c.clone());
            rem = rem.sub_ref(&g.mul_mono(&m, &c));
        }
        Some(q)
    }

    /// Coefficients of this polynomial viewed as univariate in `var`; entry
    /// `k` is the coefficient of `var^k`, a polynomial free of `var`.
    pub fn coeffs_in_var(&self, var: usize) -> Vec<Poly> {
        let deg = match self.degree_in(var) {
            None => return Vec::new(),
            Some(d) => d,
        };
        let mut out = vec![Poly::zero(&self.vars); deg as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            out[e].add_term(m.without_var(var), c.clone());
        }
        out
    }

    pub fn from_coeffs_in_var(vars: &Vars, var: usize, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            out = out.add_ref(&c.mul_mono(&Mono::var_pow(var, k as u32), &Rat::one()));
        }
        out
    }

    fn fmt_mono(&self, m: &Mono) -> String {
        m.pairs()
            .iter()
            .map(|&(i, e)| {
                if e == 1 {
                    self.vars.name(i).to_string()
                } else {
                    format!("{}^{}", self.vars.name(i), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Canonical total order used to sort factor lists: descending comparison of
/// the term sequences, monomials first (so single variables sort in context
/// order: x before y before z).
impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.assert_same_vars(other);
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (Some((ma, ca)), Some((mb, cb))) => match ma.cmp(mb).then_with(|| ca.cmp(cb)) {
                    Ordering::Equal => {}
                    ord => return ord,
                },
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (None, None) => return Ordering::Equal,
            }
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.iter_desc().enumerate() {
            let neg = c.numer().is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{}", rat_display(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", self.fmt_mono(m))?;
            } else {
                write!(f, "{}*{}", rat_display(&mag), self.fmt_mono(m))?;
            }
        }
        Ok(())
    }
}
