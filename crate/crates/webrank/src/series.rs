//! Truncated bivariate power series and 1-form jets.
//!
//! Series are truncated by total degree: a series of order `N` stores every
//! coefficient of bidegree `(i, j)` with `i + j <= N` and nothing above.
//! Every operation records the valid order of its output (the minimum of the
//! operand orders for ring operations, one less for derivatives, one more
//! for potentials); consumers are expected to check it.

use num::BigRational;

use crate::field::{CoefficientField, Scalar};
use crate::poly::Poly2;
use crate::{Error, Result};

/// Ordered pair of local coordinate symbols, centered at the basepoint.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct VarPair {
    pub x: char,
    pub y: char,
}

impl VarPair {
    pub const XY: VarPair = VarPair { x: 'x', y: 'y' };
    pub const PQ: VarPair = VarPair { x: 'p', y: 'q' };

    fn axis(&self, var: char) -> Result<usize> {
        if var == self.x {
            Ok(0)
        } else if var == self.y {
            Ok(1)
        } else {
            Err(Error::Validation(format!(
                "unknown variable '{var}' (series variables are {}, {})",
                self.x, self.y
            )))
        }
    }
}

pub(crate) fn tri(m: usize) -> usize {
    m * (m + 1) / 2
}

fn idx(i: usize, j: usize) -> usize {
    tri(i + j) + j
}

/// Structural-zero flag plus approximate magnitude of a residual series.
#[derive(Clone, Copy, Debug)]
pub struct ResidualEntry {
    /// Every stored coefficient is a structural zero.
    pub zero: bool,
    /// Largest coefficient magnitude (0.0 when `zero`).
    pub magnitude: f64,
}

impl ResidualEntry {
    pub fn passes(&self, field: &CoefficientField) -> bool {
        if field.is_exact() {
            self.zero
        } else {
            self.zero || self.magnitude <= field.residual_tolerance()
        }
    }
}

/// Bivariate power series truncated at a total-degree order.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<K: Scalar> {
    vars: VarPair,
    order: usize,
    coeffs: Vec<K>,
}

impl<K: Scalar> TruncatedSeries<K> {
    pub fn zero(vars: VarPair, order: usize) -> Self {
        TruncatedSeries {
            vars,
            order,
            coeffs: vec![K::zero(); tri(order + 1)],
        }
    }

    pub fn constant(vars: VarPair, order: usize, value: K) -> Self {
        let mut s = Self::zero(vars, order);
        s.coeffs[0] = value;
        s
    }

    pub fn monomial(vars: VarPair, order: usize, i: usize, j: usize, value: K) -> Self {
        let mut s = Self::zero(vars, order);
        if i + j <= order {
            s.coeffs[idx(i, j)] = value;
        }
        s
    }

    /// A recentered polynomial: substitute `x -> x0 + X`, `y -> y0 + Y` and
    /// truncate at `order`. This is how every ambient expression enters the
    /// local chart.
    pub fn from_poly(
        poly: &Poly2,
        basepoint: &(BigRational, BigRational),
        vars: VarPair,
        order: usize,
        field: &CoefficientField,
    ) -> Self {
        let shifted = poly.recenter(basepoint);
        let mut s = Self::zero(vars, order);
        for ((i, j), c) in shifted.terms() {
            let (i, j) = (*i as usize, *j as usize);
            if i + j <= order {
                s.coeffs[idx(i, j)] = K::from_rational(c, field);
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vars(&self) -> VarPair {
        self.vars
    }

    pub fn coeff(&self, i: usize, j: usize) -> &K {
        &self.coeffs[idx(i, j)]
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, value: K) {
        self.coeffs[idx(i, j)] = value;
    }

    pub fn constant_term(&self) -> &K {
        &self.coeffs[0]
    }

    /// Iterate stored terms as `(i, j, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &K)> {
        let order = self.order;
        (0..=order).flat_map(move |d| (0..=d).map(move |j| (d - j, j, &self.coeffs[tri(d) + j])))
    }

    pub fn is_structurally_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Least total degree with a nonzero coefficient (`None` for zero).
    pub fn valuation(&self) -> Option<usize> {
        for d in 0..=self.order {
            if (tri(d)..tri(d + 1)).any(|k| !self.coeffs[k].is_zero()) {
                return Some(d);
            }
        }
        None
    }

    pub fn residual(&self) -> ResidualEntry {
        let zero = self.is_structurally_zero();
        let magnitude = if zero {
            0.0
        } else {
            self.coeffs.iter().map(|c| c.magnitude()).fold(0.0, f64::max)
        };
        ResidualEntry { zero, magnitude }
    }

    pub fn max_magnitude(&self) -> f64 {
        self.residual().magnitude
    }

    /// Unit test: nonzero constant term (above tolerance in float mode).
    pub fn is_unit(&self, field: &CoefficientField) -> bool {
        !self.coeffs[0].is_negligible(field)
    }

    pub fn truncated(&self, order: usize) -> Self {
        let order = order.min(self.order);
        TruncatedSeries {
            vars: self.vars,
            order,
            coeffs: self.coeffs[..tri(order + 1)].to_vec(),
        }
    }

    fn check_vars(&self, rhs: &Self) -> Result<()> {
        if self.vars != rhs.vars {
            return Err(Error::VariableMismatch(format!(
                "({}, {}) vs ({}, {})",
                self.vars.x, self.vars.y, rhs.vars.x, rhs.vars.y
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_vars(rhs)?;
        let order = self.order.min(rhs.order);
        let mut coeffs = Vec::with_capacity(tri(order + 1));
        for k in 0..tri(order + 1) {
            coeffs.push(self.coeffs[k].add(&rhs.coeffs[k]));
        }
        Ok(TruncatedSeries { vars: self.vars, order, coeffs })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_vars(rhs)?;
        let order = self.order.min(rhs.order);
        let mut coeffs = Vec::with_capacity(tri(order + 1));
        for k in 0..tri(order + 1) {
            coeffs.push(self.coeffs[k].sub(&rhs.coeffs[k]));
        }
        Ok(TruncatedSeries { vars: self.vars, order, coeffs })
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            vars: self.vars,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, factor: &K) -> Self {
        TruncatedSeries {
            vars: self.vars,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.mul(factor)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_vars(rhs)?;
        let order = self.order.min(rhs.order);
        let mut out = Self::zero(self.vars, order);
        for d1 in 0..=order {
            for j1 in 0..=d1 {
                let a = &self.coeffs[tri(d1) + j1];
                if a.is_zero() {
                    continue;
                }
                for d2 in 0..=(order - d1) {
                    for j2 in 0..=d2 {
                        let b = &rhs.coeffs[tri(d2) + j2];
                        if b.is_zero() {
                            continue;
                        }
                        let k = tri(d1 + d2) + j1 + j2;
                        out.coeffs[k] = out.coeffs[k].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Term-wise partial derivative; the valid order drops by one.
    pub fn derivative(&self, var: char) -> Result<Self> {
        let axis = self.vars.axis(var)?;
        let order = self.order.saturating_sub(1);
        let mut out = Self::zero(self.vars, order);
        for (i, j, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            match axis {
                0 if i >= 1 && i - 1 + j <= order => {
                    let mut f = c.clone();
                    for _ in 1..i {
                        f = f.add(c);
                    }
                    out.coeffs[idx(i - 1, j)] = f;
                }
                1 if j >= 1 && i + j - 1 <= order => {
                    let mut f = c.clone();
                    for _ in 1..j {
                        f = f.add(c);
                    }
                    out.coeffs[idx(i, j - 1)] = f;
                }
                _ => {}
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse of a unit, to the same order.
    pub fn invert_unit(&self, field: &CoefficientField) -> Result<Self> {
        if !self.is_unit(field) {
            return Err(Error::Singularity(
                "series has zero constant term and cannot be inverted".into(),
            ));
        }
        let c0 = self.coeffs[0].clone();
        let inv_c0 = K::one().div(&c0);
        // s = c0 (1 - w) with val(w) >= 1; 1/s = (1/c0) * sum w^n.
        let mut w = self.scale(&inv_c0).neg();
        w.coeffs[0] = K::zero();
        let one = Self::constant(self.vars, self.order, K::one());
        let mut acc = one.clone();
        let mut p = one;
        for _ in 0..self.order {
            p = p.mul(&w)?;
            acc = acc.add(&p)?;
        }
        Ok(acc.scale(&inv_c0))
    }

    /// Swap the two variables (used by chart flips).
    pub fn transposed(&self) -> Self {
        let mut out = Self::zero(self.vars, self.order);
        for (i, j, c) in self.terms() {
            out.coeffs[idx(j, i)] = c.clone();
        }
        out
    }

    /// Horner evaluation of `sum coeffs[m] * self^m`; requires the constant
    /// term of `self` to vanish so truncation is stable.
    pub fn compose_univariate(&self, coeffs: &[K]) -> Result<TruncatedSeries<K>> {
        debug_assert!(
            self.coeffs[0].is_zero() || self.coeffs[0].magnitude() < 1e-12,
            "composition argument must vanish at the basepoint"
        );
        let mut acc = Self::zero(self.vars, self.order);
        for c in coeffs.iter().rev() {
            acc = acc.mul(self)?;
            acc.coeffs[0] = acc.coeffs[0].add(c);
        }
        Ok(acc)
    }

    /// Express `self` as a univariate series in `u`: find `h` with
    /// `self = h(u)` up to the common order. Errors when `self` is not
    /// constant on the level sets of `u` (to the available order).
    pub fn express_univariate(&self, u: &Self, field: &CoefficientField) -> Result<Vec<K>> {
        self.check_vars(u)?;
        let order = self.order.min(u.order);
        if !u.coeffs[0].is_negligible(field) {
            return Err(Error::Internal(
                "univariate re-expression needs a coordinate vanishing at the basepoint".into(),
            ));
        }
        let mut rem = self.truncated(order);
        let mut h = Vec::with_capacity(order + 1);
        h.push(rem.coeffs[0].clone());
        rem.coeffs[0] = K::zero();
        // Powers of u truncated at the working order.
        let mut upow = TruncatedSeries::constant(self.vars, order, K::one());
        for m in 1..=order {
            upow = upow.mul(u)?;
            // The degree-m slice of rem must be proportional to the degree-m
            // slice of u^m (which is (linear part of u)^m).
            let lead_range = tri(m)..tri(m + 1);
            let mut pivot: Option<usize> = None;
            for k in lead_range.clone() {
                if !upow.coeffs[k].is_negligible(field)
                    && pivot.map_or(true, |p| upow.coeffs[k].abs_gt(&upow.coeffs[p]))
                {
                    pivot = Some(k);
                }
            }
            let Some(p) = pivot else {
                return Err(Error::Regularity(
                    "coordinate has vanishing linear part; cannot re-express".into(),
                ));
            };
            let hm = rem.coeffs[p].div(&upow.coeffs[p]);
            if !hm.is_zero() {
                rem = rem.sub(&upow.scale(&hm))?;
            }
            // Everything of degree m must now cancel.
            for k in lead_range {
                if !rem.coeffs[k].is_negligible(field) {
                    return Err(Error::Internal(format!(
                        "series is not a function of the given coordinate \
                         (degree-{m} residual {:.3e})",
                        rem.coeffs[k].magnitude()
                    )));
                }
                rem.coeffs[k] = K::zero();
            }
            h.push(hm);
        }
        Ok(h)
    }
}

/// A 1-form jet `a dx + b dy` with components sharing variables and order.
#[derive(Clone, Debug, PartialEq)]
pub struct OneFormJet<K: Scalar> {
    pub a: TruncatedSeries<K>,
    pub b: TruncatedSeries<K>,
}

impl<K: Scalar> OneFormJet<K> {
    pub fn new(a: TruncatedSeries<K>, b: TruncatedSeries<K>) -> Result<Self> {
        a.check_vars(&b)?;
        let order = a.order().min(b.order());
        Ok(OneFormJet {
            a: a.truncated(order),
            b: b.truncated(order),
        })
    }

    pub fn zero(vars: VarPair, order: usize) -> Self {
        OneFormJet {
            a: TruncatedSeries::zero(vars, order),
            b: TruncatedSeries::zero(vars, order),
        }
    }

    /// Exterior derivative of a function jet: `df = f_x dx + f_y dy`.
    pub fn d(f: &TruncatedSeries<K>) -> Result<Self> {
        let vars = f.vars();
        Ok(OneFormJet {
            a: f.derivative(vars.x)?,
            b: f.derivative(vars.y)?,
        })
    }

    pub fn order(&self) -> usize {
        self.a.order()
    }

    pub fn vars(&self) -> VarPair {
        self.a.vars()
    }

    pub fn truncated(&self, order: usize) -> Self {
        OneFormJet {
            a: self.a.truncated(order),
            b: self.b.truncated(order),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        Ok(OneFormJet {
            a: self.a.add(&rhs.a)?,
            b: self.b.add(&rhs.b)?,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        Ok(OneFormJet {
            a: self.a.sub(&rhs.a)?,
            b: self.b.sub(&rhs.b)?,
        })
    }

    pub fn neg(&self) -> Self {
        OneFormJet {
            a: self.a.neg(),
            b: self.b.neg(),
        }
    }

    pub fn scale(&self, factor: &K) -> Self {
        OneFormJet {
            a: self.a.scale(factor),
            b: self.b.scale(factor),
        }
    }

    /// Multiply by a function jet.
    pub fn scale_series(&self, f: &TruncatedSeries<K>) -> Result<Self> {
        Ok(OneFormJet {
            a: self.a.mul(f)?,
            b: self.b.mul(f)?,
        })
    }

    /// Coefficient of `dx ∧ dy` in `self ∧ rhs`.
    pub fn wedge(&self, rhs: &Self) -> Result<TruncatedSeries<K>> {
        self.a.mul(&rhs.b)?.sub(&self.b.mul(&rhs.a)?)
    }

    /// Contraction with the vector field `cx ∂x + cy ∂y`.
    pub fn contract(&self, cx: &TruncatedSeries<K>, cy: &TruncatedSeries<K>) -> Result<TruncatedSeries<K>> {
        self.a.mul(cx)?.add(&self.b.mul(cy)?)
    }

    /// Coefficient of `dx ∧ dy` in the exterior derivative (`b_x - a_y`);
    /// structurally zero iff the form is closed to the truncation.
    pub fn curl(&self) -> Result<TruncatedSeries<K>> {
        let vars = self.vars();
        self.b.derivative(vars.x)?.sub(&self.a.derivative(vars.y)?)
    }

    /// Regular at the basepoint: the constant coefficients do not both vanish.
    pub fn is_regular(&self, field: &CoefficientField) -> bool {
        !self.a.constant_term().is_negligible(field) || !self.b.constant_term().is_negligible(field)
    }

    /// Potential `u` with `u(0) = 0` and `du = self`, one order higher.
    /// Fails when the closedness residual is nonzero (exact mode) or above
    /// tolerance (float mode).
    pub fn potential(&self, field: &CoefficientField) -> Result<TruncatedSeries<K>> {
        let res = self.curl()?.residual();
        if !res.passes(field) {
            return Err(Error::NotClosed(format!(
                "closedness residual {:.3e} of the 1-form ({})",
                res.magnitude,
                if field.is_exact() { "exact mode" } else { "float mode" }
            )));
        }
        let order = self.order() + 1;
        let vars = self.vars();
        let mut u = TruncatedSeries::zero(vars, order);
        // Integrate a in x; pick up the pure-y terms of b.
        for (i, j, c) in self.a.terms() {
            if c.is_zero() {
                continue;
            }
            let denom = K::from_int((i + 1) as i64, field);
            u.set_coeff(i + 1, j, c.div(&denom));
        }
        for (i, j, c) in self.b.terms() {
            if i == 0 && !c.is_zero() {
                let denom = K::from_int((j + 1) as i64, field);
                u.set_coeff(0, j + 1, c.div(&denom));
            }
        }
        Ok(u)
    }
}

/// First integral of a regular 1-form jet, computed by the transport
/// recursion. The result has order `form.order() + 1`, vanishes at the
/// basepoint and is a submersion (its differential is regular).
///
/// When the leaf through the basepoint is vertical (`b(0)` not a unit) the
/// recursion runs in the flipped chart; `flipped` records the choice.
pub struct FirstIntegral<K: Scalar> {
    pub u: TruncatedSeries<K>,
    pub flipped: bool,
}

pub fn first_integral<K: Scalar>(
    form: &OneFormJet<K>,
    field: &CoefficientField,
) -> Result<FirstIntegral<K>> {
    if !form.is_regular(field) {
        return Err(Error::Regularity(
            "1-form vanishes at the basepoint; no first integral".into(),
        ));
    }
    // Prefer the chart whose denominator has the larger constant term.
    let flip = if K::EXACT {
        form.b.constant_term().is_zero()
    } else {
        form.a.constant_term().abs_gt(form.b.constant_term())
    };
    let (num, den) = if flip { (&form.b, &form.a) } else { (&form.a, &form.b) };
    let mut ratio = num.mul(&den.invert_unit(field)?)?;
    if flip {
        // Solve the flipped transport in transposed coordinates and
        // transpose the result back at the end.
        ratio = ratio.transposed();
    }
    let n = form.order();
    let vars = form.vars();
    // Solve u_x = r u_y with u(0, y) = y by ascending x-degree (or the
    // flipped transport when the denominator is the a-component).
    let mut u = TruncatedSeries::zero(vars, n + 1);
    u.set_coeff(0, 1, K::one());
    for i in 0..=n {
        for j in 0..=(n - i) {
            // [r * u_y]_(i,j)
            let mut acc = K::zero();
            for i1 in 0..=i {
                for j1 in 0..=j {
                    let r = if i1 + j1 <= ratio.order() {
                        ratio.coeff(i1, j1)
                    } else {
                        continue;
                    };
                    if r.is_zero() {
                        continue;
                    }
                    let (i2, j2) = (i - i1, j - j1);
                    // u_y coefficient at (i2, j2) is (j2+1) * u[(i2, j2+1)]
                    let uc = u.coeff(i2, j2 + 1);
                    if uc.is_zero() {
                        continue;
                    }
                    let mut t = r.mul(uc);
                    let reps = (j2 + 1) as i64;
                    t = t.mul(&K::from_int(reps, field));
                    acc = acc.add(&t);
                }
            }
            let denom = K::from_int((i + 1) as i64, field);
            u.set_coeff(i + 1, j, acc.div(&denom));
        }
    }
    if flip {
        u = u.transposed();
    }
    Ok(FirstIntegral { u, flipped: flip })
}

/// Power-series Newton iteration for roots of a polynomial with series
/// coefficients. `coeffs[m]` is the coefficient of `t^m`; each seed must be
/// a simple root of the constant-term polynomial. Convergence is quadratic
/// in the jet order, so `ceil(log2(order + 1)) + 1` sweeps suffice.
pub fn newton_algebraic_roots<K: Scalar>(
    coeffs: &[TruncatedSeries<K>],
    seeds: &[K],
    field: &CoefficientField,
) -> Result<Vec<TruncatedSeries<K>>> {
    if coeffs.is_empty() {
        return Err(Error::Validation("empty polynomial".into()));
    }
    let vars = coeffs[0].vars();
    let order = coeffs.iter().map(|c| c.order()).min().unwrap();
    let deriv: Vec<TruncatedSeries<K>> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(m, c)| c.scale(&K::from_int(m as i64, field)))
        .collect();
    let const_poly: Vec<K> = coeffs.iter().map(|c| c.constant_term().clone()).collect();
    let const_deriv: Vec<K> = deriv.iter().map(|c| c.constant_term().clone()).collect();

    let eval_series = |poly: &[TruncatedSeries<K>], t: &TruncatedSeries<K>| -> Result<TruncatedSeries<K>> {
        let mut acc = TruncatedSeries::zero(vars, order);
        for c in poly.iter().rev() {
            acc = acc.mul(t)?.add(&c.truncated(order))?;
        }
        Ok(acc)
    };
    let eval_scalar = |poly: &[K], t: &K| -> K {
        let mut acc = K::zero();
        for c in poly.iter().rev() {
            acc = acc.mul(t).add(c);
        }
        acc
    };

    let mut out = Vec::with_capacity(seeds.len());
    for seed in seeds {
        // Polish / validate the seed on the constant-term polynomial.
        let mut t0 = seed.clone();
        if K::EXACT {
            if !eval_scalar(&const_poly, &t0).is_zero() {
                return Err(Error::DegenerateBasepoint(
                    "seed is not a root of the constant-term polynomial".into(),
                ));
            }
        } else {
            for _ in 0..12 {
                let d = eval_scalar(&const_deriv, &t0);
                if d.is_negligible(field) {
                    break;
                }
                let f = eval_scalar(&const_poly, &t0);
                t0 = t0.sub(&f.div(&d));
            }
        }
        let d0 = eval_scalar(&const_deriv, &t0);
        if d0.is_negligible(field) {
            return Err(Error::DegenerateBasepoint(
                "seed is a multiple root of the constant-term polynomial".into(),
            ));
        }
        if !K::EXACT && !eval_scalar(&const_poly, &t0).is_negligible(field) {
            return Err(Error::DegenerateBasepoint(
                "seed does not converge to a root of the constant-term polynomial".into(),
            ));
        }

        let mut t = TruncatedSeries::constant(vars, order, t0);
        let sweeps = usize::BITS as usize - (order + 1).leading_zeros() as usize + 1;
        for _ in 0..sweeps {
            let f = eval_series(coeffs, &t)?;
            let df = eval_series(&deriv, &t)?;
            t = t.sub(&f.mul(&df.invert_unit(field)?)?)?;
        }
        let res = eval_series(coeffs, &t)?.residual();
        if !res.passes(field) {
            return Err(Error::Internal(format!(
                "Newton iteration did not reach a root to the truncation (residual {:.3e})",
                res.magnitude
            )));
        }
        out.push(t);
    }
    Ok(out)
}

/// Coefficients of `exp(lambda t)` up to degree `n`.
pub fn exp_series<K: Scalar>(lambda: &K, n: usize, field: &CoefficientField) -> Vec<K> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(K::one());
    for m in 1..=n {
        let prev = out[m - 1].clone();
        out.push(prev.mul(lambda).div(&K::from_int(m as i64, field)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{BigInt, BigRational};

    fn exact() -> CoefficientField {
        CoefficientField::exact()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn s(order: usize) -> TruncatedSeries<BigRational> {
        TruncatedSeries::zero(VarPair::XY, order)
    }

    fn x(order: usize) -> TruncatedSeries<BigRational> {
        TruncatedSeries::monomial(VarPair::XY, order, 1, 0, q(1, 1))
    }

    fn y(order: usize) -> TruncatedSeries<BigRational> {
        TruncatedSeries::monomial(VarPair::XY, order, 0, 1, q(1, 1))
    }

    fn one(order: usize) -> TruncatedSeries<BigRational> {
        TruncatedSeries::constant(VarPair::XY, order, q(1, 1))
    }

    #[test]
    fn telescoping_product() {
        // (1+x)(1-x) = 1 - x^2 at order 4
        let p = one(4).add(&x(4)).unwrap();
        let m = one(4).sub(&x(4)).unwrap();
        let prod = p.mul(&m).unwrap();
        let mut expect = s(4);
        expect.set_coeff(0, 0, q(1, 1));
        expect.set_coeff(2, 0, q(-1, 1));
        assert_eq!(prod, expect);
    }

    #[test]
    fn additive_identity() {
        let a = x(3).add(&y(3)).unwrap().mul(&x(3)).unwrap();
        assert_eq!(a.add(&s(3)).unwrap(), a);
    }

    #[test]
    fn binomial_square() {
        let sum = x(2).add(&y(2)).unwrap();
        let sq = sum.mul(&sum).unwrap();
        let mut expect = s(2);
        expect.set_coeff(2, 0, q(1, 1));
        expect.set_coeff(1, 1, q(2, 1));
        expect.set_coeff(0, 2, q(1, 1));
        assert_eq!(sq, expect);
    }

    #[test]
    fn invert_one_is_one() {
        assert_eq!(one(5).invert_unit(&exact()).unwrap(), one(5));
    }

    #[test]
    fn invert_geometric_series() {
        // 1/(1-x) = 1 + x + x^2 + x^3 at order 3
        let v = one(3).sub(&x(3)).unwrap().invert_unit(&exact()).unwrap();
        let mut expect = s(3);
        for i in 0..=3 {
            expect.set_coeff(i, 0, q(1, 1));
        }
        assert_eq!(v, expect);
    }

    #[test]
    fn invert_two_plus_y() {
        // Oracle: multiply back and compare with 1. Frozen coefficients:
        // 1/2 - y/4 + y^2/8.
        let f = TruncatedSeries::constant(VarPair::XY, 2, q(2, 1)).add(&y(2)).unwrap();
        let inv = f.invert_unit(&exact()).unwrap();
        assert_eq!(inv.coeff(0, 0), &q(1, 2));
        assert_eq!(inv.coeff(0, 1), &q(-1, 4));
        assert_eq!(inv.coeff(0, 2), &q(1, 8));
        let back = f.mul(&inv).unwrap();
        assert_eq!(back, one(2));
    }

    #[test]
    fn invert_is_an_involution() {
        // invert(invert(s)) == s (truncated) for assorted unit series.
        let samples = [
            one(4).add(&x(4)).unwrap().add(&y(4).scale(&q(3, 2))).unwrap(),
            TruncatedSeries::constant(VarPair::XY, 5, q(-2, 3))
                .add(&x(5).mul(&y(5)).unwrap())
                .unwrap(),
        ];
        for f in samples {
            let ff = f.invert_unit(&exact()).unwrap().invert_unit(&exact()).unwrap();
            assert_eq!(ff, f);
        }
    }

    #[test]
    fn power_rule() {
        // d/dx (x^2 y) = 2 x y
        let f = TruncatedSeries::monomial(VarPair::XY, 4, 2, 1, q(1, 1));
        let d = f.derivative('x').unwrap();
        assert_eq!(d.coeff(1, 1), &q(2, 1));
        assert_eq!(d.order(), 3);
    }

    #[test]
    fn derivative_of_constant_vanishes() {
        let c = TruncatedSeries::constant(VarPair::XY, 3, q(7, 2));
        assert!(c.derivative('y').unwrap().is_structurally_zero());
    }

    #[test]
    fn unknown_variable_rejected() {
        assert!(x(3).derivative('z').is_err());
    }

    #[test]
    fn variable_mismatch_rejected() {
        let a = TruncatedSeries::<BigRational>::zero(VarPair::XY, 3);
        let b = TruncatedSeries::<BigRational>::zero(VarPair::PQ, 3);
        assert!(matches!(a.add(&b), Err(Error::VariableMismatch(_))));
    }

    #[test]
    fn potential_of_dy() {
        let f = OneFormJet::new(s(3), one(3)).unwrap();
        let u = f.potential(&exact()).unwrap();
        assert_eq!(u, y(4));
    }

    #[test]
    fn potential_of_d_xy() {
        // y dx + x dy integrates to xy
        let f = OneFormJet::new(y(3), x(3)).unwrap();
        let u = f.potential(&exact()).unwrap();
        let mut expect = s(4);
        expect.set_coeff(1, 1, q(1, 1));
        assert_eq!(u, expect);
    }

    #[test]
    fn potential_of_geometric_form_is_log() {
        // (1 - x + x^2 - x^3) dx -> x - x^2/2 + x^3/3 - x^4/4 (log(1+x) jet);
        // oracle: term-wise integration.
        let mut a = s(3);
        for i in 0..=3 {
            a.set_coeff(i, 0, q(if i % 2 == 0 { 1 } else { -1 }, 1));
        }
        let u = OneFormJet::new(a, s(3)).unwrap().potential(&exact()).unwrap();
        for i in 1..=4 {
            assert_eq!(u.coeff(i, 0), &q(if i % 2 == 1 { 1 } else { -1 }, i as i64));
        }
    }

    #[test]
    fn potential_rejects_non_closed() {
        // y dx is not closed.
        let f = OneFormJet::new(y(3), s(3)).unwrap();
        assert!(matches!(f.potential(&exact()), Err(Error::NotClosed(_))));
    }

    #[test]
    fn potential_inverts_exterior_derivative() {
        // potential(d f) = f for f vanishing at the basepoint (order loss).
        let f = x(5)
            .mul(&y(5))
            .unwrap()
            .add(&x(5).scale(&q(2, 3)))
            .unwrap()
            .add(&y(5).mul(&y(5)).unwrap().mul(&y(5)).unwrap())
            .unwrap();
        let df = OneFormJet::d(&f).unwrap();
        let back = df.potential(&exact()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn mixed_partials_commute() {
        // Pseudo-random exact series; d/dx d/dy = d/dy d/dx.
        let mut seed = 9u64;
        for _ in 0..10 {
            let mut f = s(6);
            for d in 0..=6usize {
                for j in 0..=d {
                    seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let v = ((seed >> 33) % 19) as i64 - 9;
                    f.set_coeff(d - j, j, q(v, 1 + (d as i64)));
                }
            }
            let xy = f.derivative('x').unwrap().derivative('y').unwrap();
            let yx = f.derivative('y').unwrap().derivative('x').unwrap();
            assert_eq!(xy, yx);
        }
    }

    #[test]
    fn newton_square_root_branch() {
        // F(t) = t^2 - (1+x), seed 1 -> 1 + x/2 - x^2/8 + x^3/16;
        // oracle: square the output and compare with 1+x.
        let f0 = one(6).add(&x(6)).unwrap().neg();
        let coeffs = [f0, s(6), one(6)];
        let roots = newton_algebraic_roots(&coeffs, &[q(1, 1)], &exact()).unwrap();
        let r = &roots[0];
        assert_eq!(r.coeff(0, 0), &q(1, 1));
        assert_eq!(r.coeff(1, 0), &q(1, 2));
        assert_eq!(r.coeff(2, 0), &q(-1, 8));
        assert_eq!(r.coeff(3, 0), &q(1, 16));
        let sq = r.mul(r).unwrap();
        assert_eq!(sq, one(6).add(&x(6)).unwrap());
    }

    #[test]
    fn newton_linear_case_returns_input() {
        // F(t) = t - s has the single root s.
        let target = x(5).add(&y(5).scale(&q(7, 3))).unwrap().add(&one(5).scale(&q(2, 1))).unwrap();
        let coeffs = [target.neg(), one(5)];
        let roots = newton_algebraic_roots(&coeffs, &[q(2, 1)], &exact()).unwrap();
        assert_eq!(roots[0], target);
    }

    #[test]
    fn newton_vieta_relations() {
        // t^2 - p t - q around (p, q) = (0, 1): branches with constant terms
        // +-1, summing to p and multiplying to -q.
        let vars = VarPair::PQ;
        let p = TruncatedSeries::monomial(vars, 6, 1, 0, q(1, 1));
        let qq = TruncatedSeries::monomial(vars, 6, 0, 1, q(1, 1))
            .add(&TruncatedSeries::constant(vars, 6, q(1, 1)))
            .unwrap();
        let coeffs = [qq.neg(), p.neg(), TruncatedSeries::constant(vars, 6, q(1, 1))];
        let roots = newton_algebraic_roots(&coeffs, &[q(1, 1), q(-1, 1)], &exact()).unwrap();
        let sum = roots[0].add(&roots[1]).unwrap();
        assert_eq!(sum, p);
        let prod = roots[0].mul(&roots[1]).unwrap();
        assert_eq!(prod, qq.neg());
    }

    #[test]
    fn newton_rejects_multiple_root() {
        // F(t) = t^2 - x^... constant part t^2: seed 0 is a double root.
        let coeffs = [x(4).neg(), s(4), one(4)];
        assert!(matches!(
            newton_algebraic_roots(&coeffs, &[q(0, 1)], &exact()),
            Err(Error::DegenerateBasepoint(_))
        ));
    }

    #[test]
    fn first_integral_solves_transport() {
        // omega = d(x^2 + y^2) at basepoint away from origin is encoded
        // locally as (2 + 2x) dx + (4 + 2y) dy (basepoint (1, 2)); u must
        // satisfy du ^ omega = 0.
        let a = TruncatedSeries::constant(VarPair::XY, 6, q(2, 1)).add(&x(6).scale(&q(2, 1))).unwrap();
        let b = TruncatedSeries::constant(VarPair::XY, 6, q(4, 1)).add(&y(6).scale(&q(2, 1))).unwrap();
        let form = OneFormJet::new(a, b).unwrap();
        let fi = first_integral(&form, &exact()).unwrap();
        let du = OneFormJet::d(&fi.u).unwrap();
        let w = du.wedge(&form.truncated(du.order())).unwrap();
        assert!(w.is_structurally_zero());
        assert!(fi.u.constant_term().is_zero());
    }

    #[test]
    fn first_integral_flips_vertical_chart() {
        // omega = dx has a vertical leaf; the flipped chart must be used and
        // u = x works.
        let form = OneFormJet::new(one(4), s(4)).unwrap();
        let fi = first_integral(&form, &exact()).unwrap();
        assert!(fi.flipped);
        assert_eq!(fi.u, x(5));
    }

    #[test]
    fn compose_and_express_univariate_roundtrip() {
        let u = x(6).add(&y(6).scale(&q(1, 2))).unwrap().add(&x(6).mul(&y(6)).unwrap()).unwrap();
        let coeffs = vec![q(0, 1), q(3, 1), q(-1, 2), q(5, 7)];
        let f = u.compose_univariate(&coeffs).unwrap();
        let back = f.express_univariate(&u, &exact()).unwrap();
        assert_eq!(&back[..4], &coeffs[..]);
        assert!(back[4..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn express_univariate_rejects_independent_function() {
        let u = x(5);
        let f = y(5);
        assert!(f.express_univariate(&u, &exact()).is_err());
    }
}
