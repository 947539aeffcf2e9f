//! Rational points on the zero sets of each preset's relations. A
//! polynomial and its normal form must agree at every such point, which
//! checks soundness without trusting the Groebner code.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use strataforge::rewrite::{GradedPoly, Preset, Var};

pub type Point = BTreeMap<Var, BigRational>;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn small<R: Rng>(rng: &mut R) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=4)))
}

pub fn evaluate(p: &GradedPoly, at: &Point) -> BigRational {
    let mut total = BigRational::zero();
    for (m, c) in p.terms() {
        let mut term = c.clone();
        for &(v, e) in m.powers() {
            let x = at.get(&v).unwrap_or_else(|| panic!("no value for {v}"));
            for _ in 0..e {
                term *= x;
            }
        }
        total += term;
    }
    total
}

/// A random point satisfying every relation of `preset` with `n` markings.
pub fn sample<R: Rng>(preset: Preset, n: u32, rng: &mut R) -> Point {
    let mut at = Point::new();
    at.insert(Var::Kappa1, small(rng));
    at.insert(Var::Kappa2, small(rng));
    match preset {
        Preset::Plane(d) => {
            // psi_i = (d - 3) z_i + zeta,  lambda1 = zeta
            let zeta = small(rng);
            at.insert(Var::ZetaPlain, zeta.clone());
            at.insert(Var::Lambda1, zeta.clone());
            for i in 1..=n {
                let z = small(rng);
                at.insert(Var::Psi(i), &q(i64::from(d) - 3) * &z + &zeta);
                at.insert(Var::Z(i), z);
            }
        }
        Preset::Trigonal(_) => {
            // zeta_i is a root of t^2 + cE1 t + cE2, z_i = +-s with c2 = -s^2
            let (r1, r2, s) = (small(rng), small(rng), small(rng));
            at.insert(Var::CE(1), -(&r1 + &r2));
            at.insert(Var::CE(2), &r1 * &r2);
            at.insert(Var::C2, -(&s * &s));
            at.insert(Var::Lambda1, small(rng));
            for i in 1..=n {
                let zeta = if rng.gen_bool(0.5) { r1.clone() } else { r2.clone() };
                let z = if rng.gen_bool(0.5) { s.clone() } else { -s.clone() };
                at.insert(Var::Psi(i), &zeta - &(&q(2) * &z));
                at.insert(Var::Zeta(i), zeta);
                at.insert(Var::Z(i), z);
            }
        }
        Preset::Tetragonal(g) => {
            // all z_i = s; zeta_i is a root of the cubic specialised at zeta - psi = 2s
            let s = small(rng);
            let roots = [small(rng), small(rng), small(rng)];
            let e1 = &roots[0] + &roots[1] + &roots[2];
            let e2 = &roots[0] * &roots[1] + &roots[0] * &roots[2] + &roots[1] * &roots[2];
            let e3 = &roots[0] * &roots[1] * &roots[2];
            let two_s = &q(2) * &s;
            let (a2p, a3p) = (small(rng), small(rng));
            // t^3 - (a1 + (g+3)/2 * 2s) t^2 + 1/2 (a2 + a2p 2s) t - (a3 + a3p 2s)
            at.insert(Var::A1, &e1 - &(&q(i64::from(g) + 3) * &s));
            at.insert(Var::A2, &(&q(2) * &e2) - &(&a2p * &two_s));
            at.insert(Var::A3, &e3 - &(&a3p * &two_s));
            at.insert(Var::A2p, a2p);
            at.insert(Var::A3p, a3p);
            at.insert(Var::C2, -(&s * &s));
            at.insert(Var::Lambda1, small(rng));
            for i in 1..=n {
                let zeta = roots[rng.gen_range(0..3)].clone();
                at.insert(Var::Psi(i), &zeta - &two_s);
                at.insert(Var::Zeta(i), zeta);
                at.insert(Var::Z(i), s.clone());
            }
        }
    }
    at
}

/// A random polynomial in the preset's symbols with `n` markings, weighted
/// degree at most `max_degree`.
pub fn random_poly<R: Rng>(preset: Preset, n: u32, max_degree: u32, rng: &mut R) -> GradedPoly {
    let universe = preset.universe(n);
    let mut p = GradedPoly::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let target = rng.gen_range(0..=max_degree);
        let mut term = GradedPoly::constant(small(rng));
        let mut deg = 0;
        while deg < target {
            let fits: Vec<Var> = universe.iter().copied().filter(|v| deg + v.degree() <= target).collect();
            if fits.is_empty() {
                break;
            }
            let v = fits[rng.gen_range(0..fits.len())];
            deg += v.degree();
            term = &term * &GradedPoly::var(v);
        }
        p = &p + &term;
    }
    if p.is_zero() {
        GradedPoly::constant(BigRational::one())
    } else {
        p
    }
}
