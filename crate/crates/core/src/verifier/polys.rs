//! Exact forms of the polynomials whose maxima the claims are about.
//!
//! Every builder returns a [`Polynomial`] with rational coefficients. The
//! functions that the analysis writes with `1 − a₁` (or `1 − ℓb_p`) are
//! homogenized by substituting the sum of the remaining variables, so they
//! agree with the written forms on the constraint set and are homogeneous
//! everywhere.

use num_traits::One;

use crate::constructions::{compositions, n_of_ell, FamilyChoice};
use crate::error::{invalid, Result};
use crate::hypergraph::for_each_subset;
use crate::poly::Polynomial;
use crate::rational::{binom_q, int, pow, ratio, Rational};

fn factorial(m: u32) -> i64 {
    (1..=m as i64).product()
}

/// `Σ_m Π_i x_{offset+i}^{m_i} / m_i!` over the given multiplicity types.
fn type_sum(nvars: usize, offset: usize, types: &[Vec<u32>]) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for m in types {
        let mut exps = vec![0u16; nvars];
        let mut den = 1i64;
        for (i, &mi) in m.iter().enumerate() {
            exps[offset + i] = mi as u16;
            den *= factorial(mi);
        }
        p.add_term(exps, ratio(1, den));
    }
    p
}

/// Elementary symmetric polynomial `e_k` in the listed variables.
pub fn elementary(nvars: usize, vars: &[usize], k: usize) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for_each_subset(vars.len(), k, |s| {
        let mut exps = vec![0u16; nvars];
        for &i in s {
            exps[vars[i]] = 1;
        }
        p.add_term(exps, Rational::one());
    });
    p
}

fn sum_of(nvars: usize, vars: &[usize]) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for &v in vars {
        p = &p + &Polynomial::var(nvars, v);
    }
    p
}

/// The symmetric quintic `g(c₁,…,c_L)` whose uniform maximum is
/// `(1/120)(1 − 5/L³ + 4/L⁴)c⁵`: every monomial of degree 5 with all
/// exponents at most 3, weighted by `1/Π mᵢ!`.
pub fn g_polynomial(l: usize) -> Result<Polynomial> {
    if l < 1 {
        return invalid("g needs at least one variable");
    }
    Ok(type_sum(l, 0, &compositions(l, 5, 3)))
}

/// The limiting edge polynomial `g_N(a) = Σ_m Π aᵢ^{mᵢ}/mᵢ!` of a family, so
/// that `g_N(1/ℓ,…,1/ℓ) = N(ℓ)/120`.
pub fn family_g_polynomial(choice: FamilyChoice, ell: usize) -> Result<Polynomial> {
    Ok(type_sum(ell, 0, &choice.edge_types(ell)?))
}

/// The quartic `h(a₂,…,a_ℓ)` on `ℓ − 1` variables: degree-4 monomials with
/// exponents at most 3, weighted by `1/Π mᵢ!`. Zero when `ℓ = 2`.
pub fn h_polynomial(ell: usize) -> Result<Polynomial> {
    if ell < 2 {
        return invalid(format!("ℓ must be at least 2, got {ell}"));
    }
    Ok(type_sum(ell - 1, 0, &compositions(ell - 1, 4, 3)))
}

/// `ρ²[a₁ρ² − 4ρ³ + (⅔ρ − a₁)S² − ⅓S³]` with `S` the sum of `rest`.
fn rho_part(nvars: usize, a1: usize, rest: &[usize], rho: usize) -> Polynomial {
    let r = Polynomial::var(nvars, rho);
    let a = Polynomial::var(nvars, a1);
    let s = sum_of(nvars, rest);
    let s2 = s.pow(2);
    let r2 = r.pow(2);
    let inner = &(&(&a * &r2) - &r.pow(3).scale(&int(4)))
        + &(&(&(&r.scale(&ratio(2, 3)) - &a) * &s2) - &s.pow(3).scale(&ratio(1, 3)));
    &r2 * &inner
}

/// `f(a₁,…,a_ℓ,ρ) = g(a) + ρ²[a₁ρ² − 4ρ³ + (⅔ρ − a₁)S² − ⅓S³]` with
/// `S = a₂ + … + a_ℓ` (equal to `1 − a₁` on the simplex). Variable `ℓ` is `ρ`.
pub fn f_polynomial(ell: usize) -> Result<Polynomial> {
    FamilyChoice::Alpha.check_ell(ell)?;
    let n = ell + 1;
    let g = type_sum(n, 0, &compositions(ell, 5, 3));
    let rest: Vec<usize> = (1..ell).collect();
    Ok(&g + &rho_part(n, 0, &rest, ell))
}

/// `F(a₁,…,a_{ℓq},ρ)`: the block-1 bound, `g_N` on the other blocks, and
/// every 5-set of parts that is not inside one block. For ALPHA the block-1
/// bound is `f`; the other families carry no `ρ` term. Variable `ℓq` is `ρ`.
pub fn big_f_polynomial(choice: FamilyChoice, ell: usize, q: usize) -> Result<Polynomial> {
    choice.check_ell(ell)?;
    if q == 0 {
        return invalid("q must be at least 1");
    }
    let parts = ell * q;
    let n = parts + 1;
    let types = choice.edge_types(ell)?;
    let mut p = Polynomial::zero(n);
    for b in 0..q {
        p = &p + &type_sum(n, b * ell, &types);
    }
    if choice == FamilyChoice::Alpha {
        let rest: Vec<usize> = (1..ell).collect();
        p = &p + &rho_part(n, 0, &rest, parts);
    }
    let all: Vec<usize> = (0..parts).collect();
    p = &p + &elementary(n, &all, 5);
    for b in 0..q {
        let block: Vec<usize> = (b * ell..(b + 1) * ell).collect();
        p = &p - &elementary(n, &block, 5);
    }
    Ok(p)
}

/// `H(b₁,…,b_q)`, the value of `F` when every part of block `p` has weight
/// `b_p` and `ρ = 0`. The term `C(ℓ,4) b_p⁴(1 − ℓb_p)` is written as
/// `C(ℓ,4) ℓ b_p⁴ Σ_{p'≠p} b_{p'}`, equal on `Σ b = 1/ℓ`.
pub fn big_h_polynomial(choice: FamilyChoice, ell: usize, q: usize) -> Result<Polynomial> {
    if q == 0 {
        return invalid("q must be at least 1");
    }
    let n_ell = n_of_ell(choice, ell)?;
    let l = int(ell as i64);
    let l64 = ell as u64;
    let c2 = binom_q(l64, 2);
    let c3 = binom_q(l64, 3);
    let c4 = binom_q(l64, 4);
    let mut p = Polynomial::zero(q);
    for exps in compositions(q, 5, 5) {
        let mut profile: Vec<u32> = exps.iter().copied().filter(|&e| e > 0).collect();
        profile.sort_unstable_by(|a, b| b.cmp(a));
        let coef = match profile.as_slice() {
            [5] => &n_ell / int(120) * pow(&l, 5),
            [4, 1] => &c4 * &l,
            [3, 2] => &c3 * &c2,
            [3, 1, 1] => &c3 * pow(&l, 2),
            [2, 2, 1] => &c2 * &c2 * &l,
            [2, 1, 1, 1] => &c2 * pow(&l, 3),
            [1, 1, 1, 1, 1] => pow(&l, 5),
            _ => unreachable!("profiles of 5"),
        };
        p.add_term(exps.iter().map(|&e| e as u16).collect(), coef);
    }
    Ok(p)
}

/// The univariate bound
/// `f(a₁) = (1/120)[1 − 5/L³ + 4/L⁴](1−a₁)⁵ + (1/24)[1 − 1/L³](1−a₁)⁴a₁
///          + (1/12)a₁²(1−a₁)² + 1/1728` with `L = ℓ − 1`.
pub fn f_a1_polynomial(ell: usize) -> Result<Polynomial> {
    if ell < 2 {
        return invalid(format!("ℓ must be at least 2, got {ell}"));
    }
    let l = int(ell as i64 - 1);
    let one = Rational::one();
    let c5 = (&one - int(5) / pow(&l, 3) + int(4) / pow(&l, 4)) / int(120);
    let c4 = (&one - &one / pow(&l, 3)) / int(24);
    let a = Polynomial::var(1, 0);
    let u = &Polynomial::constant(1, one.clone()) - &a;
    let mut p = u.pow(5).scale(&c5);
    p = &p + &(&u.pow(4) * &a).scale(&c4);
    p = &p + &(&a.pow(2) * &u.pow(2)).scale(&ratio(1, 12));
    Ok(&p + &Polynomial::constant(1, ratio(1, 1728)))
}

/// `ρ²[a₁ρ² − 4ρ³ + (⅔ρ − a₁)(1−a₁)² − ⅓(1−a₁)³]`.
pub fn rho_block(a1: &Rational, rho: &Rational) -> Rational {
    let u = Rational::one() - a1;
    let inner = a1 * pow(rho, 2) - int(4) * pow(rho, 3) + (ratio(2, 3) * rho - a1) * pow(&u, 2)
        - pow(&u, 3) / int(3);
    pow(rho, 2) * inner
}

/// `h(a₁) = −21a₁³ + 32a₁² + 8a₁ − 16`, the sign test for the `ρ`-block.
pub fn rho_sign(a1: &Rational) -> Rational {
    int(-21) * pow(a1, 3) + int(32) * pow(a1, 2) + int(8) * a1 - int(16)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::n_of_ell_q;
    use crate::rational::binom;
    use num_traits::Zero;

    fn uniform(n: usize, v: Rational) -> Vec<Rational> {
        vec![v; n]
    }

    #[test]
    fn g_two_variables() {
        // (1/12)c₁³c₂² + (1/12)c₂³c₁²
        let g = g_polynomial(2).unwrap();
        assert_eq!(g.term_count(), 2);
        let x = [ratio(1, 2), ratio(1, 2)];
        assert_eq!(g.eval_exact(&x), ratio(1, 192));
    }

    #[test]
    fn family_g_at_uniform() {
        for c in FamilyChoice::ALL {
            for ell in 2..7 {
                if c.check_ell(ell).is_err() {
                    continue;
                }
                let g = family_g_polynomial(c, ell).unwrap();
                let x = uniform(ell, ratio(1, ell as i64));
                assert_eq!(g.eval_exact(&x), n_of_ell(c, ell).unwrap() / int(120));
            }
        }
    }

    #[test]
    fn h_examples() {
        assert!(h_polynomial(2).unwrap().is_zero());
        let h = h_polynomial(3).unwrap();
        assert_eq!(h.eval_exact(&[ratio(1, 2), ratio(1, 2)]), ratio(7, 192));
    }

    #[test]
    fn f_is_g_at_zero_rho() {
        for ell in 2..6 {
            let f = f_polynomial(ell).unwrap();
            let mut x = uniform(ell, ratio(1, ell as i64));
            x.push(Rational::zero());
            let alpha = crate::constructions::alpha(ell).unwrap();
            assert_eq!(f.eval_exact(&x), alpha / int(120));
        }
    }

    #[test]
    fn big_f_and_h_at_uniform() {
        for c in FamilyChoice::ALL {
            for ell in [2usize, 3, 5] {
                if c.check_ell(ell).is_err() {
                    continue;
                }
                for q in 1..4 {
                    let target = n_of_ell_q(c, ell, q).unwrap() / int(120);
                    let lq = (ell * q) as i64;
                    let f = big_f_polynomial(c, ell, q).unwrap();
                    let mut x = uniform(ell * q, ratio(1, lq));
                    x.push(Rational::zero());
                    assert_eq!(f.eval_exact(&x), target, "{c} ℓ={ell} q={q}");
                    let h = big_h_polynomial(c, ell, q).unwrap();
                    assert_eq!(h.eval_exact(&uniform(q, ratio(1, lq))), target);
                }
            }
        }
    }

    #[test]
    fn f_a1_endpoints() {
        for ell in 2..8 {
            let f = f_a1_polynomial(ell).unwrap();
            assert_eq!(f.eval_exact(&[Rational::one()]), ratio(1, 1728));
        }
        let f2 = f_a1_polynomial(2).unwrap();
        let a = ratio(11, 15);
        let expect = ratio(11 * 11 * 16, 12 * 15i64.pow(4)) + ratio(1, 1728);
        assert_eq!(f2.eval_exact(&[a]), expect);
    }

    #[test]
    fn rho_block_examples() {
        assert_eq!(rho_block(&ratio(1, 2), &Rational::zero()), Rational::zero());
        assert_eq!(rho_block(&Rational::one(), &ratio(1, 4)), Rational::zero());
        assert!(rho_sign(&ratio(11, 15)) < Rational::zero());
        assert!(rho_sign(&Rational::one()) > Rational::zero());
    }

    #[test]
    fn cross_block_count_matches_binomials() {
        // the cross part of F at uniform: (C(ℓq,5) − qC(ℓ,5)) / (ℓq)⁵
        let (ell, q) = (3usize, 3usize);
        let n = ell * q;
        let all: Vec<usize> = (0..n).collect();
        let e5 = elementary(n, &all, 5);
        assert_eq!(
            e5.term_count(),
            binom(n as u64, 5).try_into().unwrap_or(0usize)
        );
    }
}
