use std::cmp::Ordering;

/// Monomial as a sparse exponent vector: `(variable index, exponent)` pairs
/// sorted by index, exponents strictly positive. The empty list is 1.
///
/// `Ord` is graded lexicographic with respect to the declared variable order:
/// higher total degree wins, ties go to the monomial with the larger exponent
/// on the earliest differing variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Mono {
    exps: Vec<(usize, u32)>,
}

impl Mono {
    pub fn one() -> Self {
        Mono { exps: Vec::new() }
    }

    pub fn var(i: usize) -> Self {
        Mono { exps: vec![(i, 1)] }
    }

    pub fn var_pow(i: usize, e: u32) -> Self {
        if e == 0 {
            Mono::one()
        } else {
            Mono { exps: vec![(i, e)] }
        }
    }

    /// Builds from arbitrary pairs; repeated indices accumulate, zeros drop.
    pub fn from_pairs(pairs: &[(usize, u32)]) -> Self {
        let mut v: Vec<(usize, u32)> = Vec::new();
        for &(i, e) in pairs {
            if e == 0 {
                continue;
            }
            match v.iter_mut().find(|(j, _)| *j == i) {
                Some((_, acc)) => *acc += e,
                None => v.push((i, e)),
            }
        }
        v.sort_unstable_by_key(|&(i, _)| i);
        Mono { exps: v }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps
            .iter()
            .find(|(j, _)| *j == i)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|(_, e)| *e as u64).sum()
    }

    pub fn pairs(&self) -> &[(usize, u32)] {
        &self.exps
    }

    pub fn var_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().map(|(i, _)| *i)
    }

    /// The single variable, if this monomial is exactly one variable to the
    /// first power.
    pub fn as_var(&self) -> Option<usize> {
        match self.exps.as_slice() {
            [(i, 1)] => Some(*i),
            _ => None,
        }
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut v = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(i, e)), Some(&&(j, f))) => match i.cmp(&j) {
                    Ordering::Less => {
                        v.push((i, e));
                        a.next();
                    }
                    Ordering::Greater => {
                        v.push((j, f));
                        b.next();
                    }
                    Ordering::Equal => {
                        v.push((i, e + f));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&p), None) => {
                    v.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    v.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Mono { exps: v }
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.exps.iter().all(|&(i, e)| other.exp(i) >= e)
    }

    pub fn try_div(&self, other: &Mono) -> Option<Mono> {
        if !other.divides(self) {
            return None;
        }
        let mut v = Vec::with_capacity(self.exps.len());
        for &(i, e) in &self.exps {
            let rem = e - other.exp(i);
            if rem > 0 {
                v.push((i, rem));
            }
        }
        Some(Mono { exps: v })
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        let mut idx: Vec<usize> = self.var_indices().chain(other.var_indices()).collect();
        idx.sort_unstable();
        idx.dedup();
        Mono {
            exps: idx
                .into_iter()
                .map(|i| (i, self.exp(i).max(other.exp(i))))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Mono {
        if k == 0 {
            return Mono::one();
        }
        Mono {
            exps: self.exps.iter().map(|&(i, e)| (i, e * k)).collect(),
        }
    }

    /// Drops every exponent on `var` (used when passing to a quotient ring).
    pub fn without_var(&self, var: usize) -> Mono {
        Mono {
            exps: self.exps.iter().copied().filter(|&(i, _)| i != var).collect(),
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Equal degree: walk indices ascending; the first variable where the
        // exponents differ decides, larger exponent on it means larger monomial.
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(i, e)), Some(&&(j, f))) => match i.cmp(&j) {
                    Ordering::Less => return Ordering::Greater, // self has the earlier var
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        match e.cmp(&f) {
                            Ordering::Equal => {}
                            ord => return ord,
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (None, None) => return Ordering::Equal,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x = Mono::var(0);
        let y = Mono::var(1);
        let x2 = Mono::var_pow(0, 2);
        let xy = x.mul(&y);
        let y2 = Mono::var_pow(1, 2);
        // x^2 > x*y > y^2 > x > y > 1
        assert!(x2 > xy && xy > y2);
        assert!(y2 > x);
        assert!(x > y);
        assert!(y > Mono::one());
    }

    #[test]
    fn zero_exponents_are_not_stored() {
        let m = Mono::from_pairs(&[(2, 0), (0, 1), (0, 2)]);
        assert_eq!(m.pairs(), &[(0, 3)]);
        assert_eq!(Mono::var_pow(1, 0), Mono::one());
    }

    #[test]
    fn division_and_lcm() {
        let m = Mono::from_pairs(&[(0, 2), (1, 1)]);
        let d = Mono::var(0);
        assert_eq!(m.try_div(&d).unwrap(), Mono::from_pairs(&[(0, 1), (1, 1)]));
        assert!(m.try_div(&Mono::var(2)).is_none());
        assert_eq!(
            Mono::var_pow(0, 2).lcm(&Mono::from_pairs(&[(0, 1), (1, 3)])),
            Mono::from_pairs(&[(0, 2), (1, 3)])
        );
    }
}
