//! The five monotonicity cases for `q ↦ N(ℓ,q)` and the cubic forms of the
//! condition on `N(ℓ,q)`, all checked in exact arithmetic at integer `q`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::constructions::{condition7_lhs, n_of_ell, n_of_ell_q, FamilyChoice};
use crate::error::{invalid, Error, Result};
use crate::rational::{display, from_big, int, pow, ratio, to_f64, Rational};

use super::ClaimReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    A,
    B,
    C,
    D,
    E,
}

pub fn case_of(choice: FamilyChoice) -> Case {
    match choice {
        FamilyChoice::Alpha => Case::A,
        FamilyChoice::Complement => Case::B,
        FamilyChoice::N12_125 => Case::C,
        FamilyChoice::N96_625 => Case::D,
        FamilyChoice::N252_625 => Case::E,
    }
}

impl Case {
    pub const ALL: [Case; 5] = [Case::A, Case::B, Case::C, Case::D, Case::E];

    pub fn id(self) -> &'static str {
        match self {
            Case::A => "case_a",
            Case::B => "case_b",
            Case::C => "case_c",
            Case::D => "case_d",
            Case::E => "case_e",
        }
    }

    pub fn family(self) -> FamilyChoice {
        match self {
            Case::A => FamilyChoice::Alpha,
            Case::B => FamilyChoice::Complement,
            Case::C => FamilyChoice::N12_125,
            Case::D => FamilyChoice::N96_625,
            Case::E => FamilyChoice::N252_625,
        }
    }

    /// Smallest `q` of the case's validity region.
    pub fn min_q(self, ell: usize) -> usize {
        match self {
            Case::A => 2 * ell * ell + 2 * ell,
            Case::B => 10 * ell * ell * ell,
            Case::C | Case::D => 2,
            Case::E => 3,
        }
    }

    /// The closed-form numerator of `dN(ℓ,q)/dq` and the constant `s` with
    /// `dN/dq = numerator / (s q⁵)`.
    pub fn derivative_numerator(self, ell: usize, q: &Rational) -> (Rational, Rational) {
        let l = int(ell as i64);
        let (q2, q3) = (pow(q, 2), pow(q, 3));
        match self {
            Case::A | Case::B => {
                let c = if self == Case::A {
                    int(-16) - int(40) * pow(&l, 3) + int(140) * pow(&l, 2) - int(180) * &l
                } else {
                    int(4) - int(40) * pow(&l, 3) + int(140) * pow(&l, 2) - int(200) * &l
                };
                let num =
                    int(10) * pow(&l, 3) * &q3 - int(70) * pow(&l, 2) * &q2 + int(150) * &l * q + c;
                (num, pow(&l, 4))
            }
            Case::C => (
                int(250) * &q3 - int(350) * &q2 + int(150) * q - int(48),
                int(125),
            ),
            Case::D | Case::E => {
                let c = if self == Case::D { 384 } else { 1008 };
                (
                    int(1250) * &q3 - int(1750) * &q2 + int(750) * q - int(c),
                    int(625),
                )
            }
        }
    }

    /// `h′(q) = 30ℓ³q² − 140ℓ²q + 150ℓ` for cases a and b.
    fn numerator_slope(ell: usize, q: &Rational) -> Rational {
        let l = int(ell as i64);
        int(30) * pow(&l, 3) * pow(q, 2) - int(140) * pow(&l, 2) * q + int(150) * &l
    }

    /// The cubic `f_i(q)` equal to the condition's left side.
    pub fn condition_cubic(self, ell: usize, q: &Rational) -> Rational {
        let l = int(ell as i64);
        let (l2, l3) = (pow(&l, 2), pow(&l, 3));
        let (q2, q3) = (pow(q, 2), pow(q, 3));
        match self {
            Case::A => {
                ((int(5) * &l - int(4)) * &q3
                    + (int(5) * &l - int(10) * &l3 - int(4)) * &q2
                    + (int(5) * &l - int(10) * &l3 + int(35) * &l2 - int(4)) * q
                    + (int(-45) * &l - int(10) * &l3 + int(35) * &l2 - int(4)))
                    / &l
            }
            Case::B => {
                (q3.clone()
                    - (int(10) * &l3 - int(1)) * &q2
                    - (int(10) * &l3 - int(35) * &l2 - int(1)) * q
                    + (int(1) - int(10) * &l3 + int(35) * &l2 - int(50) * &l))
                    / &l
            }
            Case::C => int(113) * &q3 - int(137) * &q2 + int(38) * q - int(12),
            Case::D => (int(529) * &q3 - int(721) * &q2 + int(154) * q - int(96)) / int(5),
            Case::E => (int(373) * &q3 - int(877) * &q2 - int(2) * q - int(252)) / int(5),
        }
    }

    /// Where `f_i > 0` is anchored, and from where `f_i` is increasing.
    pub fn condition_anchor(self, ell: usize) -> (usize, usize) {
        match self {
            Case::A => (2 * ell * ell + 2 * ell, 2 * ell * ell + 2 * ell),
            Case::B => (10 * ell * ell * ell, 7 * ell * ell * ell),
            Case::C | Case::D => (2, 1),
            Case::E => (3, 2),
        }
    }
}

/// `dN(ℓ,q)/dq` differentiated term by term from the closed form of `N(ℓ,q)`.
fn n_derivative(choice: FamilyChoice, ell: usize, q: &Rational) -> Result<Rational> {
    let l = int(ell as i64);
    let tail = int(10) / &l - int(35) / pow(&l, 2) + int(50) / pow(&l, 3) - int(1)
        + n_of_ell(choice, ell)?;
    Ok(
        int(10) / (&l * pow(q, 2)) - int(70) / (pow(&l, 2) * pow(q, 3))
            + int(150) / (pow(&l, 3) * pow(q, 4))
            - int(4) * tail / pow(q, 5),
    )
}

/// A polynomial in `q` stored as integer coefficients (lowest first) over a
/// positive common denominator, so that sweeps over many `q` avoid rational
/// normalisation.
#[derive(Debug, PartialEq)]
struct IntPoly {
    coeffs: Vec<BigInt>,
    den: BigInt,
}

impl IntPoly {
    /// Lagrange interpolation through `q = 1..=degree+1`.
    fn interpolate(degree: usize, f: impl Fn(usize) -> Result<Rational>) -> Result<Self> {
        let nodes: Vec<i64> = (1..=degree as i64 + 1).collect();
        let mut c = vec![Rational::zero(); degree + 1];
        for (i, &xi) in nodes.iter().enumerate() {
            let yi = f(xi as usize)?;
            // basis polynomial Π_{j≠i} (q − x_j)/(x_i − x_j)
            let mut basis = vec![Rational::one()];
            for (j, &xj) in nodes.iter().enumerate() {
                if i == j {
                    continue;
                }
                let inv = ratio(1, xi - xj);
                let mut next = vec![Rational::zero(); basis.len() + 1];
                for (k, b) in basis.iter().enumerate() {
                    next[k + 1] += b * &inv;
                    next[k] -= b * &inv * int(xj);
                }
                basis = next;
            }
            for (k, b) in basis.iter().enumerate() {
                c[k] += b * &yi;
            }
        }
        let mut den = BigInt::one();
        for v in &c {
            if !(&den % v.denom()).is_zero() {
                den *= v.denom();
            }
        }
        let coeffs = c
            .iter()
            .map(|v| (v * from_big(den.clone())).to_integer())
            .collect();
        Ok(IntPoly { coeffs, den })
    }

    /// `den · p(q)`, which has the sign of `p(q)`.
    fn scaled(&self, q: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    fn value(&self, q: usize) -> Rational {
        Rational::new(self.scaled(&BigInt::from(q)), self.den.clone())
    }

    fn same_polynomial(&self, other: &IntPoly) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| a * &other.den == b * &self.den)
    }
}

/// Exact checks over integer `q ∈ [q_lo, q_hi]`, which must lie in the case's
/// region: the derivative numerator is nonnegative and matches the
/// derivative of `N(ℓ,q)`; the cubic `f_i` equals the condition's left side,
/// is positive, and increases; `N(ℓ,·)` is nondecreasing from `q = 2`
/// (from `q = 3` when `ℓ = 2`, together with `N(2,2) ≤ N(2,q)`); and the
/// anchor values `f_i > 0`, `h′(2) > 0`, `h(2) > 0` or `h(3) > 0` hold.
/// `achieved_max` holds the least numerator value seen.
///
/// Each quantity is interpolated once into integer form and the interpolant
/// is checked against the closed form at both ends of the range; identities
/// between two cubics are coefficient comparisons.
pub fn verify_case_derivatives(
    choice: FamilyChoice,
    ell: usize,
    q_lo: usize,
    q_hi: usize,
) -> Result<ClaimReport> {
    choice.check_ell(ell)?;
    if q_lo > q_hi {
        return invalid(format!("empty range {q_lo}..{q_hi}"));
    }
    let case = case_of(choice);
    let min_q = case.min_q(ell);
    if q_lo < min_q {
        return Err(Error::Refused(format!(
            "{}: q = {q_lo} is outside the region q ≥ {min_q}",
            case.id()
        )));
    }
    let mut rep = ClaimReport::new(
        case.id(),
        format!("{choice}, ℓ={ell}, q={q_lo}..{q_hi}"),
        &Rational::from_integer(0.into()),
        0.0,
    );
    let numerator = |q: usize| Ok(case.derivative_numerator(ell, &int(q as i64)).0);
    let (_, scale) = case.derivative_numerator(ell, &int(1));
    let num = IntPoly::interpolate(3, numerator)?;
    let deriv = IntPoly::interpolate(3, |q| {
        let qr = int(q as i64);
        Ok(n_derivative(choice, ell, &qr)? * &scale * pow(&qr, 5))
    })?;
    let cubic = IntPoly::interpolate(3, |q| Ok(case.condition_cubic(ell, &int(q as i64))))?;
    let lhs = IntPoly::interpolate(3, |q| condition7_lhs(choice, ell, q))?;
    // q⁴ N(ℓ,q) is a quartic in q
    let quartic = |q: usize| Ok(n_of_ell_q(choice, ell, q)? * pow(&int(q as i64), 4));
    let n_poly = IntPoly::interpolate(4, quartic)?;

    let mut faithful = true;
    for q in [q_lo, q_hi] {
        let qr = int(q as i64);
        faithful &= num.value(q) == numerator(q)?;
        faithful &= cubic.value(q) == case.condition_cubic(ell, &qr);
        faithful &= lhs.value(q) == condition7_lhs(choice, ell, q)?;
        faithful &= n_poly.value(q) == quartic(q)?;
        faithful &= deriv.value(q) == n_derivative(choice, ell, &qr)? * &scale * pow(&qr, 5);
    }
    rep.require(faithful, "interpolants disagree with the closed forms");
    rep.require(
        num.same_polynomial(&deriv),
        "numerator disagrees with dN/dq",
    );
    rep.require(
        cubic.same_polynomial(&lhs),
        "f_i differs from the condition's left side",
    );

    let mut least: Option<BigInt> = None;
    let (mut negative, mut cubic_bad) = (0usize, 0usize);
    for qi in q_lo..=q_hi {
        let q = BigInt::from(qi);
        let v = num.scaled(&q);
        if v.is_negative() {
            negative += 1;
        }
        if least.as_ref().map_or(true, |m| v < *m) {
            least = Some(v);
        }
        if !cubic.scaled(&q).is_positive() {
            cubic_bad += 1;
        }
    }
    rep.samples = q_hi - q_lo + 1;
    let least = Rational::new(least.expect("nonempty range"), num.den.clone());
    rep.achieved_max = to_f64(&least);
    rep.slack = rep.achieved_max;
    rep.require(
        negative == 0,
        format!("{negative} negative numerators; least {}", display(&least)),
    );
    rep.require(
        cubic_bad == 0,
        format!("{cubic_bad} points where f_i is not positive"),
    );

    let (anchor, rising_from) = case.condition_anchor(ell);
    let fa = case.condition_cubic(ell, &int(anchor as i64));
    rep.require(
        fa.is_positive(),
        format!("f_i({anchor}) = {}", display(&fa)),
    );
    let mut prev = cubic.scaled(&BigInt::from(rising_from));
    let mut dips = 0usize;
    for qi in rising_from + 1..=q_hi.max(rising_from + 1) {
        let v = cubic.scaled(&BigInt::from(qi));
        if v < prev {
            dips += 1;
        }
        prev = v;
    }
    rep.require(
        dips == 0,
        format!("f_i increasing from q = {rising_from}: {dips} decreases"),
    );

    if matches!(case, Case::A | Case::B) {
        let two = int(2);
        let slope = Case::numerator_slope(ell, &two);
        rep.require(slope.is_positive(), format!("h′(2) = {}", display(&slope)));
        let base_q = if ell == 2 { 3 } else { 2 };
        let (hb, _) = case.derivative_numerator(ell, &int(base_q));
        rep.require(hb.is_positive(), format!("h({base_q}) = {}", display(&hb)));
    }
    // N(q) = P(q) / (den q⁴), so N(q+1) ≥ N(q) iff P(q+1) q⁴ ≥ P(q) (q+1)⁴
    let start = if ell == 2 { 3 } else { 2 };
    let mut falls = 0usize;
    let mut prev = n_poly.scaled(&BigInt::from(start));
    for qi in start + 1..=q_hi {
        let v = n_poly.scaled(&BigInt::from(qi));
        if &v * BigInt::from(qi - 1).pow(4) < &prev * BigInt::from(qi).pow(4) {
            falls += 1;
        }
        prev = v;
    }
    rep.require(
        falls == 0,
        format!("N(ℓ,q) nondecreasing from q = {start}: {falls} decreases"),
    );
    if ell == 2 {
        let p2 = n_poly.scaled(&BigInt::from(2));
        let mut below = 0usize;
        for qi in q_lo..=q_hi {
            if n_poly.scaled(&BigInt::from(qi)) * BigInt::from(16) < &p2 * BigInt::from(qi).pow(4) {
                below += 1;
            }
        }
        rep.require(below == 0, format!("N(2,2) ≤ N(2,q): {below} exceptions"));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchors() {
        assert_eq!(Case::C.condition_cubic(5, &int(2)), int(420));
        assert!(Case::E.condition_cubic(5, &int(3)).is_positive());
        let (c, s) = Case::C.derivative_numerator(5, &int(2));
        assert_eq!((c, s), (int(2000 - 1400 + 300 - 48), int(125)));
    }

    #[test]
    fn refuses_outside_region() {
        assert!(matches!(
            verify_case_derivatives(FamilyChoice::Alpha, 2, 3, 20),
            Err(Error::Refused(_))
        ));
        assert!(matches!(
            verify_case_derivatives(FamilyChoice::N252_625, 5, 2, 20),
            Err(Error::Refused(_))
        ));
    }

    #[test]
    fn case_c_small_range() {
        let r = verify_case_derivatives(FamilyChoice::N12_125, 5, 2, 50).unwrap();
        assert!(r.pass, "{:?}", r.notes);
    }

    #[test]
    fn interpolant_recovers_polynomial() {
        let p = IntPoly::interpolate(3, |q| {
            let q = int(q as i64);
            Ok(ratio(2, 3) * pow(&q, 3) - ratio(1, 2) * &q + int(7))
        })
        .unwrap();
        let q = int(1000);
        assert_eq!(
            p.value(1000),
            ratio(2, 3) * pow(&q, 3) - ratio(1, 2) * &q + int(7)
        );
        let other = IntPoly::interpolate(3, |q| Ok(int(q as i64))).unwrap();
        assert!(!p.same_polynomial(&other));
        assert!(other.same_polynomial(&IntPoly::interpolate(3, |q| Ok(int(q as i64))).unwrap()));
    }
}
