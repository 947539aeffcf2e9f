//! Division and a small Buchberger completion. The relation systems here
//! have two or three generators in a handful of variables, so no pair
//! selection strategy beyond the coprime-leading-term criterion is needed.

use num_traits::One;

use super::poly::{Coeff, GradedPoly};

fn monic(p: &GradedPoly) -> GradedPoly {
    match p.leading() {
        Some((_, c)) => p.scale(&(Coeff::one() / c)),
        None => GradedPoly::zero(),
    }
}

/// Fully reduces `p` modulo `basis` (each element monic). Returns the
/// remainder and the number of division steps taken.
///
/// Terms are processed from the largest down; a division step only adds
/// smaller terms, so each monomial is divided at most once and the step
/// count is bounded by the number of monomials below the leading one.
pub fn reduce(p: &GradedPoly, basis: &[GradedPoly]) -> (GradedPoly, usize) {
    let mut rem = p.clone();
    let mut steps = 0;
    let mut ceiling = None;
    loop {
        let next = rem
            .terms()
            .filter(|(m, _)| ceiling.as_ref().map_or(true, |top| *m < top))
            .find_map(|(m, c)| {
                basis.iter().find_map(|b| {
                    let (lm, _) = b.leading()?;
                    m.div(lm).map(|q| (m.clone(), c.clone(), q, b))
                })
            });
        let Some((m, c, q, b)) = next else {
            return (rem, steps);
        };
        rem = &rem - &b.mul_term(&c, &q);
        steps += 1;
        ceiling = Some(m);
    }
}

fn s_poly(a: &GradedPoly, b: &GradedPoly) -> GradedPoly {
    let (la, ca) = a.leading().expect("nonzero");
    let (lb, cb) = b.leading().expect("nonzero");
    let l = la.lcm(lb);
    let one = Coeff::one();
    &a.mul_term(&(&one / ca), &l.div(la).expect("lcm")) - &b.mul_term(&(&one / cb), &l.div(lb).expect("lcm"))
}

/// Reduced Groebner basis of the ideal generated by `gens`.
pub fn groebner(gens: &[GradedPoly]) -> Vec<GradedPoly> {
    let mut basis: Vec<GradedPoly> = Vec::new();
    for g in gens {
        let (r, _) = reduce(g, &basis);
        if !r.is_zero() {
            basis.push(monic(&r));
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let (li, _) = basis[i].leading().expect("nonzero");
        let (lj, _) = basis[j].leading().expect("nonzero");
        if li.is_coprime(lj) {
            continue;
        }
        let (r, _) = reduce(&s_poly(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            basis.push(monic(&r));
            let k = basis.len() - 1;
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    interreduce(basis)
}

fn interreduce(mut basis: Vec<GradedPoly>) -> Vec<GradedPoly> {
    // drop elements whose leading term is divisible by another's
    let mut k = 0;
    while k < basis.len() {
        let (lk, _) = basis[k].leading().expect("nonzero");
        // leading terms are pairwise distinct, so divisibility is strict
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(j, b)| j != k && lk.div(b.leading().expect("nonzero").0).is_some());
        if redundant {
            basis.remove(k);
        } else {
            k += 1;
        }
    }
    let mut out = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let others: Vec<GradedPoly> = basis.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, b)| b.clone()).collect();
        let (r, _) = reduce(&basis[k], &others);
        out.push(monic(&r));
    }
    out.sort_by(|a, b| a.leading().expect("nonzero").0.cmp(b.leading().expect("nonzero").0));
    out
}
