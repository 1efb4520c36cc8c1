//! Multivariate polynomials with exact rational coefficients.
//!
//! Construction and exact evaluation use `BigRational`; [`Polynomial::compile`]
//! produces a float form for the ascent routines.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::lagrangian::ascent::Objective;
use crate::rational::{int, pow, to_f64, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(exps, Rational::one());
        p
    }

    /// Adds `coef * Π x_i^{exps_i}`, merging with an existing equal monomial.
    pub fn add_term(&mut self, exps: Vec<u16>, coef: Rational) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coef);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &Rational)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// `Some(d)` when every monomial has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval_exact(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.nvars);
        let mut acc = Rational::zero();
        for (exps, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in exps.iter().enumerate() {
                if e > 0 {
                    t *= pow(&x[v], e as u32);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (exps, c) in &self.terms {
            let e = exps[var];
            if e == 0 {
                continue;
            }
            let mut ne = exps.clone();
            ne[var] -= 1;
            out.add_term(ne, c * int(e as i64));
        }
        out
    }

    /// Coefficients `c_0, c_1, ...` of `p(x + εd)` as a polynomial in `ε`.
    pub fn restrict_to_line(&self, x: &[Rational], d: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.nvars);
        assert_eq!(d.len(), self.nvars);
        let mut out = vec![Rational::zero(); self.degree() as usize + 1];
        for (exps, c) in &self.terms {
            let mut uni = vec![c.clone()];
            for (v, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    // multiply by (x_v + ε d_v)
                    let mut next = vec![Rational::zero(); uni.len() + 1];
                    for (k, a) in uni.iter().enumerate() {
                        next[k] += a * &x[v];
                        next[k + 1] += a * &d[v];
                    }
                    uni = next;
                }
            }
            for (k, a) in uni.into_iter().enumerate() {
                out[k] += a;
            }
        }
        out
    }

    pub fn compile(&self) -> CompiledPolynomial {
        let mut coefs = Vec::with_capacity(self.terms.len());
        let mut offsets = vec![0u32];
        let mut factors = Vec::new();
        for (exps, c) in &self.terms {
            coefs.push(to_f64(c));
            for (v, &e) in exps.iter().enumerate() {
                if e > 0 {
                    factors.push((v as u16, e));
                }
            }
            offsets.push(factors.len() as u32);
        }
        CompiledPolynomial {
            nvars: self.nvars,
            coefs,
            offsets,
            factors,
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u16> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

/// Float evaluation form of a [`Polynomial`].
#[derive(Clone, Debug)]
pub struct CompiledPolynomial {
    nvars: usize,
    coefs: Vec<f64>,
    offsets: Vec<u32>,
    factors: Vec<(u16, u16)>,
}

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    fn from(v: f64) -> Dd {
        Dd { hi: v, lo: 0.0 }
    }

    /// Error-free `a + b`.
    fn sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let bb = s - a;
        Dd {
            hi: s,
            lo: (a - (s - bb)) + (b - bb),
        }
    }

    fn renorm(hi: f64, lo: f64) -> Dd {
        let s = hi + lo;
        Dd {
            hi: s,
            lo: lo - (s - hi),
        }
    }

    fn add(self, o: Dd) -> Dd {
        let s = Dd::sum(self.hi, o.hi);
        Dd::renorm(s.hi, s.lo + self.lo + o.lo)
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        Dd::renorm(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl CompiledPolynomial {
    fn term_factors(&self, t: usize) -> &[(u16, u16)] {
        &self.factors[self.offsets[t] as usize..self.offsets[t + 1] as usize]
    }

    /// `p(x + dx) − p(x)` evaluated in double-double arithmetic, so the result
    /// carries rounding error relative to the difference rather than to
    /// `p(x)`. The shifted point `x + dx` is kept unrounded.
    pub fn difference(&self, x: &[f64], dx: &[f64]) -> f64 {
        let y: Vec<Dd> = x.iter().zip(dx).map(|(&a, &b)| Dd::sum(a, b)).collect();
        let mut acc = Dd::ZERO;
        for (t, &c) in self.coefs.iter().enumerate() {
            let (mut py, mut px) = (Dd::from(c), Dd::from(c));
            for &(v, e) in self.term_factors(t) {
                for _ in 0..e {
                    py = py.mul(y[v as usize]);
                    px = px.mul(Dd::from(x[v as usize]));
                }
            }
            acc = acc.add(py).add(px.neg());
        }
        acc.hi + acc.lo
    }
}

impl Objective for CompiledPolynomial {
    fn dim(&self) -> usize {
        self.nvars
    }

    fn value(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (t, &c) in self.coefs.iter().enumerate() {
            let mut p = c;
            for &(v, e) in self.term_factors(t) {
                p *= x[v as usize].powi(e as i32);
            }
            acc += p;
        }
        acc
    }

    fn gradient(&self, x: &[f64], grad: &mut [f64]) {
        grad.iter_mut().for_each(|g| *g = 0.0);
        let mut vals = [0.0f64; 16];
        let mut prefix = [0.0f64; 17];
        for (t, &c) in self.coefs.iter().enumerate() {
            let fs = self.term_factors(t);
            let k = fs.len();
            if k == 0 {
                continue;
            }
            if k > 16 {
                // rare: fall back to quotient-free direct products
                for (i, &(v, e)) in fs.iter().enumerate() {
                    let mut p = c * e as f64 * x[v as usize].powi(e as i32 - 1);
                    for (j, &(w, f)) in fs.iter().enumerate() {
                        if j != i {
                            p *= x[w as usize].powi(f as i32);
                        }
                    }
                    grad[v as usize] += p;
                }
                continue;
            }
            prefix[0] = c;
            for (i, &(v, e)) in fs.iter().enumerate() {
                vals[i] = x[v as usize].powi(e as i32);
                prefix[i + 1] = prefix[i] * vals[i];
            }
            let mut suffix = 1.0;
            for i in (0..k).rev() {
                let (v, e) = fs[i];
                let d = e as f64 * x[v as usize].powi(e as i32 - 1);
                grad[v as usize] += prefix[i] * d * suffix;
                suffix *= vals[i];
            }
        }
    }
}
