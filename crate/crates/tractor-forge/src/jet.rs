//! Dense truncated multivariate Taylor expansions ("jets") over real coordinates.
//!
//! A [`Jet`] stores the Taylor coefficients f_a = (partial^a f)(p) / a! of a
//! complex-valued function of `nvars` real variables, for all multi-indices
//! `a` with |a| <= `order`, laid out in graded order (all coefficients of total
//! degree d before any of degree d+1). The graded layout makes truncation to a
//! lower order a prefix slice, so mixed-order arithmetic just shortens the
//! result: binary operations are valid to the minimum of the operand orders,
//! and each derivative lowers the validity order by one.
//!
//! Complex holomorphic coordinates are *not* variables here; they are handled
//! upstream by seeding z = x + iy as a jet with complex linear coefficients.
//! Because the underlying variables are real, complex conjugation of a jet is
//! coefficient-wise conjugation.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, RwLock};

use num_complex::Complex64;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

fn binom(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of multi-indices over `nvars` variables with total degree <= `order`;
/// equivalently the coefficient count of a jet.
pub fn jet_len(nvars: usize, order: usize) -> usize {
    binom(nvars + order, order)
}

/// Shared per-(nvars, order) lookup data: the multi-index enumeration, the
/// multiplication pair table, and the index maps used by derivatives.
struct JetTable {
    /// rank -> exponent vector, graded order (degree-major).
    exps: Vec<Vec<u8>>,
    /// exponent vector -> rank.
    rank: HashMap<Vec<u8>, u32>,
    /// rank -> total degree.
    degs: Vec<u8>,
    /// prefix_len[k] = number of multi-indices of degree <= k.
    prefix_len: Vec<usize>,
    /// (ia, ib, itarget) for every pair with deg(a) + deg(b) <= order.
    prod: Vec<(u32, u32, u32)>,
    /// up[v][r] = rank of exps[r] + e_v, for ranks r of degree < order.
    up: Vec<Vec<u32>>,
}

fn gen_degree(out: &mut Vec<Vec<u8>>, cur: &mut Vec<u8>, pos: usize, remaining: usize) {
    if pos + 1 == cur.len() {
        cur[pos] = remaining as u8;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    for k in (0..=remaining).rev() {
        cur[pos] = k as u8;
        gen_degree(out, cur, pos + 1, remaining - k);
    }
    cur[pos] = 0;
}

impl JetTable {
    fn build(nvars: usize, order: usize) -> JetTable {
        assert!(nvars >= 1, "jets need at least one variable");
        let mut exps = Vec::with_capacity(jet_len(nvars, order));
        let mut cur = vec![0u8; nvars];
        let mut prefix_len = Vec::with_capacity(order + 1);
        for d in 0..=order {
            gen_degree(&mut exps, &mut cur, 0, d);
            prefix_len.push(exps.len());
        }
        let rank: HashMap<Vec<u8>, u32> = exps
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let degs: Vec<u8> = exps
            .iter()
            .map(|e| e.iter().map(|&x| x as usize).sum::<usize>() as u8)
            .collect();

        let mut prod = Vec::new();
        let mut sum = vec![0u8; nvars];
        for (ia, ea) in exps.iter().enumerate() {
            let budget = order - degs[ia] as usize;
            for ib in 0..prefix_len[budget] {
                for v in 0..nvars {
                    sum[v] = ea[v] + exps[ib][v];
                }
                prod.push((ia as u32, ib as u32, rank[&sum]));
            }
        }

        let mut up = vec![Vec::new(); nvars];
        if order > 0 {
            let below = prefix_len[order - 1];
            for (v, col) in up.iter_mut().enumerate() {
                col.reserve(below);
                for r in 0..below {
                    let mut e = exps[r].clone();
                    e[v] += 1;
                    col.push(rank[&e]);
                }
            }
        }

        JetTable { exps, rank, degs, prefix_len, prod, up }
    }
}

static TABLES: Lazy<RwLock<HashMap<(usize, usize), Arc<JetTable>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

fn table(nvars: usize, order: usize) -> Arc<JetTable> {
    if let Some(t) = TABLES.read().unwrap().get(&(nvars, order)) {
        return Arc::clone(t);
    }
    let t = Arc::new(JetTable::build(nvars, order));
    TABLES
        .write()
        .unwrap()
        .entry((nvars, order))
        .or_insert(t)
        .clone()
}

#[derive(Clone, PartialEq)]
pub struct Jet {
    nvars: usize,
    order: usize,
    /// Taylor coefficients in the graded layout of the (nvars, order) table.
    coeffs: Vec<Complex64>,
}

const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

impl Jet {
    pub fn constant(nvars: usize, order: usize, value: Complex64) -> Jet {
        let mut coeffs = vec![C_ZERO; jet_len(nvars, order)];
        coeffs[0] = value;
        Jet { nvars, order, coeffs }
    }

    pub fn zero(nvars: usize, order: usize) -> Jet {
        Jet::constant(nvars, order, C_ZERO)
    }

    /// The coordinate function x_var seeded at basepoint value `value`:
    /// constant term `value`, unit linear coefficient in slot `var`.
    pub fn variable(nvars: usize, order: usize, var: usize, value: f64) -> Jet {
        let mut j = Jet::constant(nvars, order, Complex64::new(value, 0.0));
        if order >= 1 {
            j.coeffs[1 + var] = C_ONE;
        }
        j
    }

    /// A jet with the given constant term and prescribed complex linear
    /// coefficients — used to seed z = x + iy against real variables.
    pub fn linear(nvars: usize, order: usize, value: Complex64, linear: &[(usize, Complex64)]) -> Jet {
        let mut j = Jet::constant(nvars, order, value);
        if order >= 1 {
            for &(var, c) in linear {
                j.coeffs[1 + var] = c;
            }
        }
        j
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Value of the function at the basepoint.
    pub fn value(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// First derivative with respect to variable `var`, read directly from the
    /// linear coefficient (valid whenever order >= 1).
    pub fn linear_coeff(&self, var: usize) -> Complex64 {
        if self.order == 0 {
            C_ZERO
        } else {
            self.coeffs[1 + var]
        }
    }

    /// Taylor coefficient for the multi-index `exps` (i.e. partial^a f / a!).
    pub fn taylor_coeff(&self, exps: &[u8]) -> Complex64 {
        assert_eq!(exps.len(), self.nvars);
        let deg: usize = exps.iter().map(|&x| x as usize).sum();
        if deg > self.order {
            return C_ZERO;
        }
        let t = table(self.nvars, self.order);
        self.coeffs[t.rank[exps] as usize]
    }

    /// The mixed partial derivative partial^a f at the basepoint (Taylor
    /// coefficient times a!).
    pub fn partial(&self, exps: &[u8]) -> Complex64 {
        let mut fact = 1.0;
        for &e in exps {
            for k in 2..=e as usize {
                fact *= k as f64;
            }
        }
        self.taylor_coeff(exps) * fact
    }

    /// Restrict validity to `order` (prefix slice); returns self unchanged if
    /// already at or below it.
    pub fn truncated(&self, order: usize) -> Jet {
        if order >= self.order {
            return self.clone();
        }
        let len = jet_len(self.nvars, order);
        Jet { nvars: self.nvars, order, coeffs: self.coeffs[..len].to_vec() }
    }

    fn binop(&self, rhs: &Jet, f: impl Fn(Complex64, Complex64) -> Complex64) -> Jet {
        assert_eq!(self.nvars, rhs.nvars, "jet variable counts differ");
        let order = self.order.min(rhs.order);
        let len = jet_len(self.nvars, order);
        let coeffs = (0..len).map(|i| f(self.coeffs[i], rhs.coeffs[i])).collect();
        Jet { nvars: self.nvars, order, coeffs }
    }

    pub fn scale(&self, c: Complex64) -> Jet {
        let coeffs = self.coeffs.iter().map(|&a| a * c).collect();
        Jet { nvars: self.nvars, order: self.order, coeffs }
    }

    pub fn scale_re(&self, t: f64) -> Jet {
        self.scale(Complex64::new(t, 0.0))
    }

    fn mul_jet(&self, rhs: &Jet) -> Jet {
        assert_eq!(self.nvars, rhs.nvars, "jet variable counts differ");
        let order = self.order.min(rhs.order);
        let t = table(self.nvars, order);
        let mut coeffs = vec![C_ZERO; jet_len(self.nvars, order)];
        for &(ia, ib, it) in &t.prod {
            coeffs[it as usize] += self.coeffs[ia as usize] * rhs.coeffs[ib as usize];
        }
        Jet { nvars: self.nvars, order, coeffs }
    }

    /// Derivative with respect to variable `var`; the result is valid to one
    /// order less. Fails once the validity budget is exhausted.
    pub fn derivative(&self, var: usize) -> Result<Jet> {
        if self.order == 0 {
            return Err(Error::depth(format!("d/dx_{var} of an order-0 jet")));
        }
        let order = self.order - 1;
        let t = table(self.nvars, self.order);
        let len = jet_len(self.nvars, order);
        let mut coeffs = vec![C_ZERO; len];
        // Taylor coefficients: (df)_b = f_{b+e_v} * (b_v + 1).
        for (r, c) in coeffs.iter_mut().enumerate() {
            let src = t.up[var][r] as usize;
            *c = self.coeffs[src] * ((t.exps[r][var] + 1) as f64);
        }
        Ok(Jet { nvars: self.nvars, order, coeffs })
    }

    /// Coefficient-wise complex conjugate. This equals the jet of the
    /// conjugated function because the variables are real.
    pub fn conj(&self) -> Jet {
        let coeffs = self.coeffs.iter().map(|a| a.conj()).collect();
        Jet { nvars: self.nvars, order: self.order, coeffs }
    }

    pub fn re(&self) -> Jet {
        (self + &self.conj()).scale_re(0.5)
    }

    pub fn im(&self) -> Jet {
        let i2 = Complex64::new(0.0, -0.5);
        (self - &self.conj()).scale(i2)
    }

    /// The nilpotent part self - value (zero constant term).
    fn nilpotent(&self) -> Jet {
        let mut u = self.clone();
        u.coeffs[0] = C_ZERO;
        u
    }

    /// Reciprocal via the geometric series on the nilpotent part:
    /// 1/(c(1+u)) = (1/c) sum (-u)^k. Requires a nonzero constant term.
    pub fn recip(&self) -> Result<Jet> {
        let c = self.value();
        if c.norm() < 1e-300 {
            return Err(Error::DivisionByZeroConstant { magnitude: c.norm() });
        }
        let u = self.nilpotent().scale(c.inv());
        let mut acc = Jet::constant(self.nvars, self.order, C_ONE);
        let mut pw = Jet::constant(self.nvars, self.order, C_ONE);
        let mut sign = -1.0;
        for _ in 1..=self.order {
            pw = pw.mul_jet(&u);
            acc += &pw.scale_re(sign);
            sign = -sign;
        }
        Ok(acc.scale(c.inv()))
    }

    pub fn div(&self, rhs: &Jet) -> Result<Jet> {
        Ok(self * &rhs.recip()?)
    }

    /// exp(self) = exp(c) * sum u^k / k! over the nilpotent part u.
    pub fn exp(&self) -> Jet {
        let u = self.nilpotent();
        let mut acc = Jet::constant(self.nvars, self.order, C_ONE);
        let mut pw = Jet::constant(self.nvars, self.order, C_ONE);
        let mut fact = 1.0;
        for k in 1..=self.order {
            pw = pw.mul_jet(&u);
            fact *= k as f64;
            acc += &pw.scale_re(1.0 / fact);
        }
        acc.scale(self.value().exp())
    }

    /// Principal-branch logarithm: ln(c) + sum (-1)^{k+1} w^k / k with
    /// w = self/c - 1. Requires a nonzero constant term.
    pub fn ln(&self) -> Result<Jet> {
        let c = self.value();
        if c.norm() < 1e-300 {
            return Err(Error::DivisionByZeroConstant { magnitude: c.norm() });
        }
        let w = self.nilpotent().scale(c.inv());
        let mut acc = Jet::constant(self.nvars, self.order, c.ln());
        let mut pw = Jet::constant(self.nvars, self.order, C_ONE);
        let mut sign = 1.0;
        for k in 1..=self.order {
            pw = pw.mul_jet(&w);
            acc += &pw.scale_re(sign / k as f64);
            sign = -sign;
        }
        Ok(acc)
    }

    /// Real power via exp(t ln self); branch is principal at the basepoint.
    pub fn powf(&self, t: f64) -> Result<Jet> {
        Ok(self.ln()?.scale_re(t).exp())
    }

    pub fn sqrt(&self) -> Result<Jet> {
        self.powf(0.5)
    }

    /// Integer power by repeated squaring; negative exponents go through the
    /// reciprocal and need a nonzero constant term.
    pub fn powi(&self, k: i32) -> Result<Jet> {
        if k < 0 {
            return self.recip()?.powi(-k);
        }
        let mut acc = Jet::constant(self.nvars, self.order, C_ONE);
        let mut base = self.clone();
        let mut k = k as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_jet(&base);
            }
            base = base.mul_jet(&base);
            k >>= 1;
        }
        Ok(acc)
    }

    /// Composition g(f) where `outer` is a univariate jet expanded at f's
    /// basepoint value. Valid to the smaller of the two orders.
    pub fn compose(outer: &Jet, inner: &Jet) -> Jet {
        assert_eq!(outer.nvars, 1, "outer jet of a composition must be univariate");
        let order = outer.order.min(inner.order);
        let u = inner.truncated(order).nilpotent();
        // Horner evaluation of sum_k g_k u^k; outer coefficients are already
        // Taylor-normalized, and univariate rank k is just degree k.
        let mut acc = Jet::constant(inner.nvars, order, outer.coeffs[order]);
        for k in (0..order).rev() {
            acc = acc.mul_jet(&u) + Jet::constant(inner.nvars, order, outer.coeffs[k]);
        }
        acc
    }

    /// Largest coefficient magnitude — the distance from the zero jet.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Jet(nvars={}, order={}, value={:.6}{:+.6}i, max|c|={:.3e})",
            self.nvars,
            self.order,
            self.value().re,
            self.value().im,
            self.max_abs()
        )
    }
}

macro_rules! jet_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Jet {
            type Output = Jet;
            fn $method(self, rhs: &Jet) -> Jet {
                self.binop(rhs, |a, b| a $op b)
            }
        }
        impl $trait for Jet {
            type Output = Jet;
            fn $method(self, rhs: Jet) -> Jet {
                (&self).binop(&rhs, |a, b| a $op b)
            }
        }
        impl $trait<&Jet> for Jet {
            type Output = Jet;
            fn $method(self, rhs: &Jet) -> Jet {
                (&self).binop(rhs, |a, b| a $op b)
            }
        }
        impl $trait<Jet> for &Jet {
            type Output = Jet;
            fn $method(self, rhs: Jet) -> Jet {
                self.binop(&rhs, |a, b| a $op b)
            }
        }
    };
}

jet_binop!(Add, add, +);
jet_binop!(Sub, sub, -);

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        self.mul_jet(rhs)
    }
}
impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        self.mul_jet(&rhs)
    }
}
impl Mul<&Jet> for Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        self.mul_jet(rhs)
    }
}
impl Mul<Jet> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        self.mul_jet(&rhs)
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale_re(-1.0)
    }
}
impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale_re(-1.0)
    }
}

impl AddAssign<&Jet> for Jet {
    fn add_assign(&mut self, rhs: &Jet) {
        *self = (&*self) + rhs;
    }
}
impl SubAssign<&Jet> for Jet {
    fn sub_assign(&mut self, rhs: &Jet) {
        *self = (&*self) - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Polynomial (x + 2y)^3 - xy + 4 seeded at (0.7, -0.3): every Taylor
    /// coefficient must be exact.
    #[test]
    fn polynomial_exactness() {
        let (x0, y0) = (0.7, -0.3);
        let x = Jet::variable(2, 5, 0, x0);
        let y = Jet::variable(2, 5, 1, y0);
        let s = &x + &y.scale_re(2.0);
        let f = s.powi(3).unwrap() - &x * &y + Jet::constant(2, 5, c(4.0, 0.0));

        let s0 = x0 + 2.0 * y0;
        assert_relative_eq!(f.value().re, s0.powi(3) - x0 * y0 + 4.0, max_relative = 1e-14);
        // d/dx = 3 s^2 - y, d/dy = 6 s^2 - x
        assert_relative_eq!(f.linear_coeff(0).re, 3.0 * s0 * s0 - y0, max_relative = 1e-14);
        assert_relative_eq!(f.linear_coeff(1).re, 6.0 * s0 * s0 - x0, max_relative = 1e-14);
        // d3/dx2dy = 12, stored as Taylor coefficient 12 / (2! 1!) = 6.
        assert_relative_eq!(f.taylor_coeff(&[2, 1]).re, 6.0, max_relative = 1e-14);
        assert_relative_eq!(f.partial(&[2, 1]).re, 12.0, max_relative = 1e-14);
        // Degree-4 coefficients of a cubic vanish.
        assert!(f.taylor_coeff(&[2, 2]).norm() < 1e-14);
    }

    #[test]
    fn mixed_order_truncation() {
        let a = Jet::variable(2, 3, 0, 0.5);
        let b = Jet::variable(2, 5, 1, 0.25);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!(a.derivative(0).unwrap().order(), 2);
    }

    #[test]
    fn depth_exhaustion_is_an_error() {
        let a = Jet::variable(1, 2, 0, 1.0);
        let d2 = a.derivative(0).unwrap().derivative(0).unwrap();
        assert!(matches!(d2.derivative(0), Err(Error::DepthExceeded { .. })));
    }

    #[test]
    fn reciprocal_round_trip() {
        let x = Jet::variable(3, 6, 0, 0.4);
        let y = Jet::variable(3, 6, 1, -1.1);
        let a = Jet::constant(3, 6, c(2.0, 0.5)) + &x * &x + y.scale(c(0.0, 1.0));
        let inv = a.recip().unwrap();
        let prod = &a * &inv - Jet::constant(3, 6, C_ONE);
        assert!(prod.max_abs() < 1e-13, "a * 1/a != 1: {}", prod.max_abs());
    }

    #[test]
    fn zero_constant_division_fails() {
        let x = Jet::variable(2, 4, 0, 0.0);
        assert!(matches!(x.recip(), Err(Error::DivisionByZeroConstant { .. })));
        assert!(matches!(x.ln(), Err(Error::DivisionByZeroConstant { .. })));
    }

    #[test]
    fn exp_ln_round_trip() {
        let x = Jet::variable(2, 6, 0, 0.3);
        let y = Jet::variable(2, 6, 1, 0.8);
        let a = Jet::constant(2, 6, c(1.5, 0.7)) + &x * &y + x.scale_re(0.25);
        let diff = a.ln().unwrap().exp() - &a;
        assert!(diff.max_abs() < 1e-12, "exp(ln a) != a: {}", diff.max_abs());
        let diff2 = a.exp().ln().unwrap() - &a;
        assert!(diff2.max_abs() < 1e-12);
    }

    #[test]
    fn powf_matches_integer_power() {
        let x = Jet::variable(2, 5, 0, 1.2);
        let y = Jet::variable(2, 5, 1, 0.1);
        let a = Jet::constant(2, 5, c(0.9, 0.2)) + x + y.scale_re(3.0);
        let via_f = a.powf(2.0).unwrap();
        let via_i = a.powi(2).unwrap();
        assert!((via_f - via_i).max_abs() < 1e-12);
        // Square root squares back.
        let r = a.sqrt().unwrap();
        assert!((&r * &r - &a).max_abs() < 1e-12);
    }

    #[test]
    fn conjugation_against_complex_seed() {
        // z = x + iy as a jet over the two real variables.
        let zx = Jet::variable(2, 4, 0, 0.6);
        let zy = Jet::variable(2, 4, 1, -0.2);
        let z = &zx + &zy.scale(c(0.0, 1.0));
        let zz = &z * &z;
        // conj(z^2) = conj(z)^2
        let lhs = zz.conj();
        let rhs = &z.conj() * &z.conj();
        assert!((lhs - rhs).max_abs() < 1e-15);
        // |z|^2 = z conj(z) has real coefficients up to roundoff on the diagonal value.
        let abs2 = &z * &z.conj();
        assert!(abs2.value().im.abs() < 1e-15);
        assert_relative_eq!(abs2.value().re, 0.36 + 0.04, max_relative = 1e-14);
    }

    /// Jet first derivatives of a transcendental expression against
    /// Richardson-extrapolated central differences.
    #[test]
    fn derivative_matches_finite_differences() {
        let f = |x: f64, y: f64| (x.exp() + 2.0) / (1.0 + y * y) + (x * y).exp();
        let (x0, y0) = (0.35, -0.6);
        let jx = Jet::variable(2, 3, 0, x0);
        let jy = Jet::variable(2, 3, 1, y0);
        let jf = (jx.exp() + Jet::constant(2, 3, c(2.0, 0.0)))
            .div(&(Jet::constant(2, 3, C_ONE) + &jy * &jy))
            .unwrap()
            + (&jx * &jy).exp();

        let central = |g: &dyn Fn(f64) -> f64, h: f64| (g(h) - g(-h)) / (2.0 * h);
        let richardson = |g: &dyn Fn(f64) -> f64| {
            let h = 1e-4;
            let d1 = central(g, h);
            let d2 = central(g, h / 2.0);
            (4.0 * d2 - d1) / 3.0
        };
        let dfdx = richardson(&|h| f(x0 + h, y0));
        let dfdy = richardson(&|h| f(x0, y0 + h));
        assert_relative_eq!(jf.linear_coeff(0).re, dfdx, max_relative = 1e-9);
        assert_relative_eq!(jf.linear_coeff(1).re, dfdy, max_relative = 1e-9);
    }

    #[test]
    fn compose_univariate() {
        // g(t) = 1/(1+t) expanded at t0 = f(p); f = x + y^2.
        let x = Jet::variable(2, 4, 0, 0.2);
        let y = Jet::variable(2, 4, 1, 0.5);
        let f = &x + &(&y * &y);
        let t = Jet::variable(1, 4, 0, f.value().re);
        let g = Jet::constant(1, 4, C_ONE).div(&(Jet::constant(1, 4, C_ONE) + t)).unwrap();
        let composed = Jet::compose(&g, &f);
        let direct = Jet::constant(2, 4, C_ONE)
            .div(&(Jet::constant(2, 4, C_ONE) + &f))
            .unwrap();
        assert!((composed - direct).max_abs() < 1e-13);
    }

    fn small_jet(seed: &[f64]) -> Jet {
        // Deterministic order-3, two-variable jet from 10 raw values.
        let len = jet_len(2, 3);
        let mut j = Jet::zero(2, 3);
        for i in 0..len {
            j.coeffs[i] = c(seed[i % seed.len()] + i as f64 * 0.01, seed[(i + 3) % seed.len()]);
        }
        j
    }

    proptest! {
        #[test]
        fn multiplication_commutes_and_associates(
            a in proptest::collection::vec(-1.0f64..1.0, 4..8),
            b in proptest::collection::vec(-1.0f64..1.0, 4..8),
            d in proptest::collection::vec(-1.0f64..1.0, 4..8),
        ) {
            let (ja, jb, jd) = (small_jet(&a), small_jet(&b), small_jet(&d));
            prop_assert!(((&ja * &jb) - (&jb * &ja)).max_abs() < 1e-12);
            let lhs = (&ja * &jb) * &jd;
            let rhs = &ja * (&jb * &jd);
            prop_assert!((lhs - rhs).max_abs() < 1e-11);
        }

        #[test]
        fn distributivity_holds(
            a in proptest::collection::vec(-1.0f64..1.0, 4..8),
            b in proptest::collection::vec(-1.0f64..1.0, 4..8),
            d in proptest::collection::vec(-1.0f64..1.0, 4..8),
        ) {
            let (ja, jb, jd) = (small_jet(&a), small_jet(&b), small_jet(&d));
            let lhs = &ja * &(&jb + &jd);
            let rhs = (&ja * &jb) + (&ja * &jd);
            prop_assert!((lhs - rhs).max_abs() < 1e-12);
        }
    }
}
