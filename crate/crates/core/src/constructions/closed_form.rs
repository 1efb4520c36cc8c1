use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::rational::{binom, from_big, int, pow, ratio, Rational};

use super::FamilyChoice;

/// `α = 1 − 5/ℓ³ + 4/ℓ⁴`.
pub fn alpha(ell: usize) -> Result<Rational> {
    if ell < 2 {
        return invalid(format!("ℓ must be at least 2, got {ell}"));
    }
    let l = int(ell as i64);
    Ok(Rational::one() - int(5) / pow(&l, 3) + int(4) / pow(&l, 4))
}

/// The limiting density of `G(ℓ,t)` for the chosen family.
pub fn n_of_ell(choice: FamilyChoice, ell: usize) -> Result<Rational> {
    choice.check_ell(ell)?;
    Ok(match choice {
        FamilyChoice::Alpha => alpha(ell)?,
        FamilyChoice::Complement => Rational::one() - Rational::one() / pow(&int(ell as i64), 4),
        FamilyChoice::N12_125 => ratio(12, 125),
        FamilyChoice::N96_625 => ratio(96, 625),
        FamilyChoice::N252_625 => ratio(252, 625),
    })
}

/// `N(ℓ,q) = 1 − 10/(ℓq) + 35/(ℓ²q²) − 50/(ℓ³q³) + (10/ℓ − 35/ℓ² + 50/ℓ³ − 1 + N(ℓ))/q⁴`.
pub fn n_of_ell_q(choice: FamilyChoice, ell: usize, q: usize) -> Result<Rational> {
    if q == 0 {
        return invalid("q must be at least 1");
    }
    let n = n_of_ell(choice, ell)?;
    let l = int(ell as i64);
    let q = int(q as i64);
    let lq = &l * &q;
    let q4 = pow(&q, 4);
    Ok(
        Rational::one() - int(10) / &lq + int(35) / pow(&lq, 2) - int(50) / pow(&lq, 3)
            + (int(10) / &l - int(35) / pow(&l, 2) + int(50) / pow(&l, 3) - Rational::one() + n)
                / q4,
    )
}

/// `ℓ³(1−N(ℓ))(q³+q²+q+1) − 10ℓ²(q²+q+1) + 35ℓ(q+1) − 50`.
pub fn condition7_lhs(choice: FamilyChoice, ell: usize, q: usize) -> Result<Rational> {
    if q == 0 {
        return invalid("q must be at least 1");
    }
    let n = n_of_ell(choice, ell)?;
    let l = int(ell as i64);
    let q = int(q as i64);
    let one = Rational::one();
    let q2 = &q * &q;
    let q3 = &q2 * &q;
    Ok(
        pow(&l, 3) * (&one - n) * (&q3 + &q2 + &q + &one)
            - int(10) * pow(&l, 2) * (&q2 + &q + &one)
            + int(35) * &l * (&q + &one)
            - int(50),
    )
}

/// `q = 1` or the left side above is nonnegative.
pub fn condition7(choice: FamilyChoice, ell: usize, q: usize) -> Result<bool> {
    let lhs = condition7_lhs(choice, ell, q)?;
    Ok(q == 1 || !lhs.is_negative())
}

/// `|E(G(ℓ,t))|`, summed over edge types: `Σ_m Π_i C(t, m_i)`.
pub fn base_edge_count(choice: FamilyChoice, ell: usize, t: usize) -> Result<BigInt> {
    let types = choice.edge_types(ell)?;
    let mut total = BigInt::zero();
    for m in &types {
        let mut c = BigInt::one();
        for &mi in m {
            c *= binom(t as u64, mi as u64);
        }
        total += c;
    }
    Ok(total)
}

/// `q|E(G(ℓ,t))| + (C(ℓq,5) − q C(ℓ,5)) t⁵`.
pub fn layered_edge_count(choice: FamilyChoice, ell: usize, q: usize, t: usize) -> Result<BigInt> {
    if q == 0 {
        return invalid("q must be at least 1");
    }
    let base = base_edge_count(choice, ell, t)?;
    let q_big = BigInt::from(q);
    let cross = binom((ell * q) as u64, 5) - &q_big * binom(ell as u64, 5);
    Ok(q_big * base + cross * BigInt::from(t).pow(5))
}

/// Coefficients (constant term first) of `t ↦ |E(G(ℓ,t))|`, recovered by
/// exact interpolation through `t = 1..=8`.
pub fn edge_count_polynomial(choice: FamilyChoice, ell: usize) -> Result<Vec<Rational>> {
    let points: Vec<(Rational, Rational)> = (1..=8)
        .map(|t| Ok((int(t as i64), from_big(base_edge_count(choice, ell, t)?))))
        .collect::<Result<_>>()?;
    Ok(interpolate(&points))
}

/// `c₀(ℓ)`: minus the `t⁴` coefficient of the ALPHA edge count, so that
/// `|E(G(ℓ,t))| = (α/120)(ℓt)⁵ − c₀(ℓ)t⁴ + O(t³)`.
pub fn c0(ell: usize) -> Result<Rational> {
    let coefs = edge_count_polynomial(FamilyChoice::Alpha, ell)?;
    Ok(-coefs[4].clone())
}

/// `(|E(G(ℓ,t))| + ℓ⁴t⁴/12) / (ℓt)⁵ ≥ (N(ℓ) + 1/(ℓ⁵t)) / 120`.
pub fn boosted_density_holds(choice: FamilyChoice, ell: usize, t: usize) -> Result<bool> {
    if t == 0 {
        return invalid("t must be at least 1");
    }
    let edges = from_big(base_edge_count(choice, ell, t)?);
    let l = int(ell as i64);
    let tt = int(t as i64);
    let lhs = (edges + pow(&l, 4) * pow(&tt, 4) / int(12)) / pow(&(&l * &tt), 5);
    let rhs = (n_of_ell(choice, ell)? + Rational::one() / (pow(&l, 5) * &tt)) / int(120);
    Ok(lhs >= rhs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoostThreshold {
    /// Smallest `t₁` such that the inequality holds for all `t₁ ≤ t ≤ t_max`.
    pub t1: Option<usize>,
    pub t_max: usize,
    /// Every `t ≤ t_max` where it fails.
    pub failures: Vec<usize>,
}

pub fn boosted_density_threshold(
    choice: FamilyChoice,
    ell: usize,
    t_max: usize,
) -> Result<BoostThreshold> {
    let mut failures = Vec::new();
    for t in 1..=t_max {
        if !boosted_density_holds(choice, ell, t)? {
            failures.push(t);
        }
    }
    let t1 = match failures.last() {
        None if t_max >= 1 => Some(1),
        Some(&last) if last < t_max => Some(last + 1),
        _ => None,
    };
    Ok(BoostThreshold {
        t1,
        t_max,
        failures,
    })
}

/// Monomial coefficients of the interpolating polynomial through `points`.
fn interpolate(points: &[(Rational, Rational)]) -> Vec<Rational> {
    let n = points.len();
    // Vandermonde system, solved by Gauss-Jordan elimination.
    let mut a: Vec<Vec<Rational>> = points
        .iter()
        .map(|(x, y)| {
            let mut row: Vec<Rational> = (0..n as u32).map(|k| pow(x, k)).collect();
            row.push(y.clone());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("distinct nodes");
        a.swap(col, piv);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v /= &p;
        }
        for row in 0..n {
            if row != col && !a[row][col].is_zero() {
                let f = a[row][col].clone();
                let pivot_row = a[col].clone();
                for (v, pv) in a[row].iter_mut().zip(pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n].clone()).collect()
}
