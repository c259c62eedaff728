use super::{CoordinatePrime, Length};
use crate::error::{Error, Result};
use crate::factored::FactoredElement;

/// Length of the localization at a coordinate prime modulo an ideal whose
/// generators become monomials there.
///
/// Localizing at q = (some variables) turns each generator into a unit times
/// a monomial in the members of q, provided every non-monomial factor lies
/// outside q (then it is a unit). The quotient is the localized ring of the
/// member variables modulo a monomial ideal, and its length is the number of
/// exponent vectors under the staircase: finite exactly when the ideal
/// contains a pure power of each member.
pub fn coord_local_length(at: &CoordinatePrime, gens: &[FactoredElement]) -> Result<Length> {
    let k = at.height();
    let mut monomials: Vec<Vec<u32>> = Vec::new();
    for g in gens {
        at.vars().same_as(g.vars())?;
        // exponents of the member variables surviving localization
        let mut exps = vec![0u32; k];
        let mut in_ideal = false;
        for (f, e) in g.factors() {
            match f.as_var() {
                Some(i) => {
                    if let Ok(slot) = at.members().binary_search(&i) {
                        exps[slot] = exps[slot]
                            .checked_add(*e)
                            .expect("exponent overflow");
                        in_ideal = true;
                    }
                    // a variable outside q is a unit in the localization
                }
                None => {
                    if f.in_coordinate_ideal(at.members()) {
                        return Err(Error::NonMonomialLocalization(format!(
                            "generator factor {f} lies in {at} but is not a monomial"
                        )));
                    }
                    // otherwise the factor is a unit in the localization
                }
            }
        }
        if !in_ideal {
            // the generator is a unit, so the ideal is everything
            return Ok(Length::Finite(0));
        }
        monomials.push(exps);
    }
    if monomials.is_empty() {
        return Ok(Length::Infinite);
    }

    // drop generators that are multiples of another
    let mut minimal: Vec<Vec<u32>> = Vec::new();
    monomials.sort();
    monomials.dedup();
    for m in &monomials {
        if !monomials
            .iter()
            .any(|o| o != m && o.iter().zip(m).all(|(a, b)| a <= b))
        {
            minimal.push(m.clone());
        }
    }

    // finite only if each member has a pure power among the generators;
    // the minimal such power bounds the staircase box
    let mut bound = vec![0u32; k];
    for i in 0..k {
        let mut best: Option<u32> = None;
        for m in &minimal {
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

    // inclusion-exclusion over subsets of generators: monomials in the box
    // divisible by the subset's lcm, with alternating signs, subtracted from
    // the box volume to leave the staircase count
    assert!(
        minimal.len() <= 24,
        "too many minimal generators for inclusion-exclusion"
    );
    let mut count: i128 = 0;
    for mask in 0u32..(1u32 << minimal.len()) {
        let mut lcm = vec![0u32; k];
        for (j, m) in minimal.iter().enumerate() {
            if mask & (1 << j) != 0 {
                for i in 0..k {
                    lcm[i] = lcm[i].max(m[i]);
                }
            }
        }
        let mut cells: i128 = 1;
        for i in 0..k {
            cells *= i128::from(bound[i].saturating_sub(lcm[i]));
        }
        if mask.count_ones() % 2 == 0 {
            count += cells;
        } else {
            count -= cells;
        }
    }
    assert!(count >= 0, "inclusion-exclusion undercounted");
    Ok(Length::Finite(count as u64))
}
