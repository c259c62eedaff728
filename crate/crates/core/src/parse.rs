use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::factored::{FactoredElement, FracElement};
use crate::length::{CoordinatePrime, PointPrime};
use crate::poly::Poly;
use crate::primes::HeightOnePrime;
use crate::rat::Rat;
use crate::vars::Vars;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Hand-rolled recursive-descent parsers for the text formats: polynomials
/// (`3/2*x^2*y - z`, `*` optional between factors), factored elements
/// (`2*(x+y)^2*z`, nonlinear factors are taken as asserted-irreducible),
/// fraction-field elements (`rho^2*y^2/z^8`), and cycles
/// (`1*[A/(x,y)] - 2*[A/(y,z)]`). Errors carry the byte position.

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

impl Lexer {
    fn new(s: &str) -> Result<Lexer> {
        let bytes = s.as_bytes();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            let start = i;
            match c {
                ' ' | '\t' | '\n' | '\r' => {
                    i += 1;
                    continue;
                }
                '+' => toks.push((Tok::Plus, start)),
                '-' => toks.push((Tok::Minus, start)),
                '*' => toks.push((Tok::Star, start)),
                '^' => toks.push((Tok::Caret, start)),
                '/' => toks.push((Tok::Slash, start)),
                '(' => toks.push((Tok::LParen, start)),
                ')' => toks.push((Tok::RParen, start)),
                '[' => toks.push((Tok::LBracket, start)),
                ']' => toks.push((Tok::RBracket, start)),
                ',' => toks.push((Tok::Comma, start)),
                '0'..='9' => {
                    let mut j = i;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    let text = &s[i..j];
                    toks.push((Tok::Int(text.parse().unwrap()), start));
                    i = j;
                    continue;
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut j = i;
                    while j < bytes.len() && ((bytes[j] as char).is_ascii_alphanumeric() || bytes[j] == b'_') {
                        j += 1;
                    }
                    toks.push((Tok::Ident(s[i..j].to_string()), start));
                    i = j;
                    continue;
                }
                other => return Err(err(start, format!("unexpected character `{other}`"))),
            }
            i += 1;
        }
        let end = bytes.len();
        toks.push((Tok::End, end));
        Ok(Lexer { toks, at: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<()> {
        if self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(err(self.pos(), format!("expected {what}")))
        }
    }
}

fn starts_atom(t: &Tok) -> bool {
    matches!(t, Tok::Int(_) | Tok::Ident(_) | Tok::LParen)
}

struct PolyParser<'a> {
    vars: &'a Vars,
    lx: Lexer,
}

impl<'a> PolyParser<'a> {
    fn expr(&mut self) -> Result<Poly> {
        let mut sign = Rat::one();
        match self.lx.peek() {
            Tok::Minus => {
                self.lx.bump();
                sign = -sign;
            }
            Tok::Plus => {
                self.lx.bump();
            }
            _ => {}
        }
        let mut acc = self.term()?.scale(&sign);
        loop {
            match self.lx.peek() {
                Tok::Plus => {
                    self.lx.bump();
                    acc = acc.add_ref(&self.term()?);
                }
                Tok::Minus => {
                    self.lx.bump();
                    acc = acc.sub_ref(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.lx.peek() {
                Tok::Star => {
                    self.lx.bump();
                    acc = acc.mul_ref(&self.factor()?);
                }
                t if starts_atom(t) => {
                    acc = acc.mul_ref(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.lx.peek() == &Tok::Caret {
            self.lx.bump();
            let pos = self.lx.pos();
            match self.lx.bump() {
                Tok::Int(n) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| err(pos, "exponent out of range"))?;
                    Ok(base.pow(e))
                }
                _ => Err(err(pos, "expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let pos = self.lx.pos();
        match self.lx.bump() {
            Tok::Int(n) => {
                // Rational literal: `/` immediately followed by an integer.
                if self.lx.peek() == &Tok::Slash && matches!(self.lx.peek2(), Tok::Int(_)) {
                    self.lx.bump();
                    let dpos = self.lx.pos();
                    if let Tok::Int(d) = self.lx.bump() {
                        if d == BigInt::from(0) {
                            return Err(err(dpos, "zero denominator"));
                        }
                        return Ok(Poly::constant(self.vars, Rat::new(n, d)));
                    }
                    unreachable!();
                }
                Ok(Poly::constant(self.vars, Rat::from_integer(n)))
            }
            Tok::Ident(name) => match self.vars.index_of(&name) {
                Some(i) => Ok(Poly::var(self.vars, i)),
                None => Err(err(pos, format!("unknown variable `{name}` in context {}", self.vars))),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                self.lx.expect(&Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(err(pos, "expected a number, variable, or `(`")),
        }
    }
}

pub fn parse_poly(vars: &Vars, s: &str) -> Result<Poly> {
    let mut p = PolyParser {
        vars,
        lx: Lexer::new(s)?,
    };
    let out = p.expr()?;
    if p.lx.peek() != &Tok::End {
        return Err(err(p.lx.pos(), "unexpected trailing input"));
    }
    Ok(out)
}

/// One multiplicative side of a factored/fraction expression, as raw
/// `(poly, exponent)` pairs plus a unit.
fn parse_product(p: &mut PolyParser<'_>, allow_negative_exp: bool) -> Result<(Rat, Vec<(Poly, i64)>)> {
    let mut unit = Rat::one();
    match p.lx.peek() {
        Tok::Minus => {
            p.lx.bump();
            unit = -unit;
        }
        Tok::Plus => {
            p.lx.bump();
        }
        _ => {}
    }
    let mut factors: Vec<(Poly, i64)> = Vec::new();
    loop {
        if !starts_atom(p.lx.peek()) {
            if factors.is_empty() && unit.is_one() {
                return Err(err(p.lx.pos(), "expected an element"));
            }
            return Ok((unit, factors));
        }
        let base = p.atom()?;
        let mut e: i64 = 1;
        if p.lx.peek() == &Tok::Caret {
            p.lx.bump();
            let mut neg = false;
            if p.lx.peek() == &Tok::Minus {
                if !allow_negative_exp {
                    return Err(err(p.lx.pos(), "negative exponents are only allowed in fractions"));
                }
                p.lx.bump();
                neg = true;
            }
            let pos = p.lx.pos();
            match p.lx.bump() {
                Tok::Int(n) => {
                    e = i64::try_from(n).map_err(|_| err(pos, "exponent out of range"))?;
                    if neg {
                        e = -e;
                    }
                }
                _ => return Err(err(pos, "expected an integer exponent")),
            }
        }
        factors.push((base, e));
        // Optional `*` between factors.
        if p.lx.peek() == &Tok::Star {
            p.lx.bump();
            if !starts_atom(p.lx.peek()) {
                return Err(err(p.lx.pos(), "expected a factor after `*`"));
            }
        }
    }
}

/// Factors: units fold together; top-level sums fall back to a single
/// polynomial factor (so `x + y` parses as the one linear factor `x+y`).
pub fn parse_factored(vars: &Vars, s: &str) -> Result<FactoredElement> {
    let mut p = PolyParser {
        vars,
        lx: Lexer::new(s)?,
    };
    let (unit, factors) = parse_product(&mut p, false)?;
    match p.lx.peek() {
        Tok::End => {
            let factors = factors
                .into_iter()
                .map(|(poly, e)| (poly, e as u32))
                .collect();
            FactoredElement::new_asserted(vars, unit, factors)
        }
        Tok::Plus | Tok::Minus => {
            // Whole input is a single polynomial written as a sum.
            let poly = parse_poly(vars, s)?;
            FactoredElement::new_asserted(vars, Rat::one(), vec![(poly, 1)])
        }
        _ => Err(err(p.lx.pos(), "unexpected trailing input")),
    }
}

pub fn parse_frac(vars: &Vars, s: &str) -> Result<FracElement> {
    let mut p = PolyParser {
        vars,
        lx: Lexer::new(s)?,
    };
    let (unit, mut factors) = parse_product(&mut p, true)?;
    match p.lx.peek() {
        Tok::Slash => {
            p.lx.bump();
            let (den_unit, den_factors) = parse_product(&mut p, true)?;
            if p.lx.peek() != &Tok::End {
                return Err(err(p.lx.pos(), "unexpected trailing input"));
            }
            let unit = unit / den_unit;
            factors.extend(den_factors.into_iter().map(|(poly, e)| (poly, -e)));
            FracElement::new_asserted(vars, unit, factors)
        }
        Tok::End => FracElement::new_asserted(vars, unit, factors),
        Tok::Plus | Tok::Minus => {
            let poly = parse_poly(vars, s)?;
            FracElement::new_asserted(vars, Rat::one(), vec![(poly, 1)])
        }
        _ => Err(err(p.lx.pos(), "unexpected trailing input")),
    }
}

/// One `[A/(...)]` component. The generator list is classified into the
/// supported shapes: variables give a coordinate prime, a single irreducible
/// gives a principal one, and a pair `x - a, y - b` in the plane gives a
/// point.
fn parse_component(p: &mut PolyParser<'_>) -> Result<crate::cycle::PrimeRep> {
    use crate::cycle::PrimeRep;
    let vars = p.vars;
    p.lx.expect(&Tok::LBracket, "`[`")?;
    let pos = p.lx.pos();
    match p.lx.bump() {
        Tok::Ident(name) if name == "A" => {}
        _ => return Err(err(pos, "expected `A`")),
    }
    if p.lx.peek() == &Tok::RBracket {
        p.lx.bump();
        return Ok(PrimeRep::Unit);
    }
    p.lx.expect(&Tok::Slash, "`/`")?;
    p.lx.expect(&Tok::LParen, "`(`")?;
    let mut gens = vec![p.expr()?];
    while p.lx.peek() == &Tok::Comma {
        p.lx.bump();
        gens.push(p.expr()?);
    }
    let after = p.lx.pos();
    p.lx.expect(&Tok::RParen, "`)`")?;
    p.lx.expect(&Tok::RBracket, "`]`")?;

    if let Some(members) = gens
        .iter()
        .map(Poly::as_var)
        .collect::<Option<Vec<usize>>>()
    {
        let q = CoordinatePrime::new(vars, &members).map_err(|e| err(after, e.to_string()))?;
        return Ok(PrimeRep::coordinate(q));
    }
    if gens.len() == 1 {
        let prime = HeightOnePrime::new_asserted(gens.pop().unwrap())
            .map_err(|e| err(after, e.to_string()))?;
        return Ok(PrimeRep::principal(prime));
    }
    if vars.len() == 2 && gens.len() == 2 {
        let a = Poly::var(vars, 0).sub_ref(&gens[0]).as_constant();
        let b = Poly::var(vars, 1).sub_ref(&gens[1]).as_constant();
        if let (Some(a), Some(b)) = (a, b) {
            return Ok(PrimeRep::Point(PointPrime::new(a, b)));
        }
    }
    Err(err(after, "unsupported component shape"))
}

/// Cycle in the emitted format: `1*[A/(x,y)] - 2*[A/(y,z)]`, or `0`.
pub fn parse_cycle(vars: &Vars, s: &str) -> Result<Cycle> {
    let mut p = PolyParser {
        vars,
        lx: Lexer::new(s)?,
    };
    if matches!(p.lx.peek(), Tok::Int(n) if n.is_zero()) && p.lx.peek2() == &Tok::End {
        return Ok(Cycle::zero(vars, 0));
    }
    let mut terms: Vec<(crate::cycle::PrimeRep, i64)> = Vec::new();
    let mut sign: i64 = 1;
    if p.lx.peek() == &Tok::Minus {
        p.lx.bump();
        sign = -1;
    }
    loop {
        let mut coeff: i64 = 1;
        if let Tok::Int(n) = p.lx.peek() {
            let pos = p.lx.pos();
            coeff = i64::try_from(n.clone()).map_err(|_| err(pos, "coefficient out of range"))?;
            p.lx.bump();
            p.lx.expect(&Tok::Star, "`*`")?;
        }
        terms.push((parse_component(&mut p)?, sign * coeff));
        match p.lx.bump() {
            Tok::Plus => sign = 1,
            Tok::Minus => sign = -1,
            Tok::End => break,
            _ => return Err(err(p.lx.pos(), "expected `+`, `-`, or end of cycle")),
        }
    }
    let n = vars.len();
    let grade = terms[0].0.dimension(n);
    let mut out = Cycle::zero(vars, grade);
    for (rep, c) in terms {
        out.add_term(rep, c)?;
    }
    Ok(out)
}

/// Standalone rational number, e.g. `-3/2`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let mut lx = Lexer::new(s)?;
    let mut neg = false;
    match lx.peek() {
        Tok::Minus => {
            lx.bump();
            neg = true;
        }
        Tok::Plus => {
            lx.bump();
        }
        _ => {}
    }
    let pos = lx.pos();
    let n = match lx.bump() {
        Tok::Int(n) => n,
        _ => return Err(err(pos, "expected an integer")),
    };
    let mut val = Rat::from_integer(n);
    if lx.peek() == &Tok::Slash {
        lx.bump();
        let dpos = lx.pos();
        match lx.bump() {
            Tok::Int(d) if d != BigInt::from(0) => val /= Rat::from_integer(d),
            _ => return Err(err(dpos, "expected a nonzero denominator")),
        }
    }
    if lx.peek() != &Tok::End {
        return Err(err(lx.pos(), "unexpected trailing input"));
    }
    Ok(if neg { -val } else { val })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn ctx() -> Vars {
        Vars::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn poly_round_trip() {
        let v = ctx();
        for s in ["3/2*x^2*y + 1", "-x^2 + y", "x*y*z", "0", "x - 2", "7"] {
            let p = parse_poly(&v, s).unwrap();
            assert_eq!(p.to_string(), s, "round trip of `{s}`");
            assert_eq!(parse_poly(&v, &p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn implicit_multiplication() {
        let v = ctx();
        assert_eq!(
            parse_poly(&v, "3/2 x^2 y").unwrap(),
            parse_poly(&v, "3/2*x^2*y").unwrap()
        );
        assert_eq!(parse_poly(&v, "2(x + y)").unwrap(), parse_poly(&v, "2*x + 2*y").unwrap());
    }

    #[test]
    fn error_positions() {
        let v = ctx();
        match parse_poly(&v, "x + q") {
            Err(Error::Parse { pos, msg }) => {
                assert_eq!(pos, 4);
                assert!(msg.contains("unknown variable `q`"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_poly(&v, "x + ") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn factored_forms() {
        let v = ctx();
        let f = parse_factored(&v, "x^2*z").unwrap();
        assert_eq!(f.to_string(), "x^2*z");
        let g = parse_factored(&v, "-3*(x+y)^2*z").unwrap();
        assert_eq!(g.unit(), &rat_int(-3));
        assert_eq!(g.factors().len(), 2);
        // bare sum falls back to one factor
        let h = parse_factored(&v, "x + y").unwrap();
        assert_eq!(h.factors().len(), 1);
        // nonlinear bare factor is accepted as asserted
        let k = parse_factored(&v, "(y - x^2)").unwrap();
        assert_eq!(k.factors().len(), 1);
    }

    #[test]
    fn frac_forms() {
        let v = Vars::new(&["x", "w", "rho", "y", "z"]).unwrap();
        let f = parse_frac(&v, "rho^2*y^2/z^8").unwrap();
        assert_eq!(f.to_string(), "rho^2*y^2/z^8");
        let g = parse_frac(&v, "y/(x^2*w^3*z^6)").unwrap();
        assert_eq!(g.to_string(), "y/(x^2*w^3*z^6)");
        let h = parse_frac(&v, "x^-2*y").unwrap();
        assert_eq!(h.to_string(), "y/x^2");
        assert_eq!(parse_frac(&v, "y/z").unwrap().exp_of(&Poly::var(&v, 4)), -1);
    }

    #[test]
    fn negative_exponent_rejected_outside_fractions() {
        let v = ctx();
        assert!(parse_factored(&v, "x^-2").is_err());
    }

    #[test]
    fn cycle_round_trip() {
        let v = ctx();
        for s in [
            "1*[A/(x,y)] + 1*[A/(y,z)]",
            "2*[A/(x,y)] - 8*[A/(x,z)]",
            "-3*[A/(x)]",
            "1*[A]",
            "2*[A/(z)] + 1*[A/(x^2 - y)]",
            "0",
        ] {
            let c = parse_cycle(&v, s).unwrap();
            assert_eq!(c.to_string(), s, "round trip of `{s}`");
        }
        // non-canonical input lands on the canonical rendering
        let c = parse_cycle(&v, "1*[A/(y - x^2)] + 2*[A/(z)]").unwrap();
        assert_eq!(c.to_string(), "2*[A/(z)] + 1*[A/(x^2 - y)]");
        let plane = Vars::new(&["x", "y"]).unwrap();
        for s in ["1*[A/(x,y)]", "-1*[A/(x,y - 3)] + 2*[A/(x - 1,y + 1/2)]"] {
            let c = parse_cycle(&plane, s).unwrap();
            assert_eq!(c.to_string(), s, "round trip of `{s}`");
        }
    }

    #[test]
    fn cycle_rejects_mixed_dimensions() {
        let v = ctx();
        assert!(matches!(
            parse_cycle(&v, "1*[A/(x,y)] + 1*[A/(z)]"),
            Err(Error::GradeMismatch { .. })
        ));
        assert!(parse_cycle(&v, "1*[A/(x,q)]").is_err());
    }

    #[test]
    fn rat_literals() {
        assert_eq!(parse_rat("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat("4").unwrap(), rat_int(4));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
