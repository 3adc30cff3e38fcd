//! Univariate polynomials over a scalar field, plus exact bivariate and
//! trivariate polynomials over the rationals (ambient, non-truncated data:
//! input expressions, curve equations, adjoints).

use std::collections::BTreeMap;
use std::fmt;

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::field::{CoefficientField, Scalar};

/// Dense univariate polynomial, ascending coefficients, trailing zeros
/// trimmed (the zero polynomial stores nothing).
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<K: Scalar> {
    coeffs: Vec<K>,
}

impl<K: Scalar> UniPoly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> K {
        self.coeffs.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(t).add(c);
        }
        acc
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for m in 0..n {
            out.push(self.coeff(m).add(&rhs.coeff(m)));
        }
        Self::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for m in 0..n {
            out.push(self.coeff(m).sub(&rhs.coeff(m)));
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn scale(&self, f: &K) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul(f)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self, field: &CoefficientField) -> Self {
        let mut out = Vec::new();
        for (m, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.mul(&K::from_int(m as i64, field)));
        }
        Self::new(out)
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self, field: &CoefficientField) -> Self {
        let mut out = vec![K::zero()];
        for (m, c) in self.coeffs.iter().enumerate() {
            out.push(c.div(&K::from_int((m + 1) as i64, field)));
        }
        Self::new(out)
    }

    /// Composition `self(rhs)`, truncated at degree `order`.
    pub fn compose_truncated(&self, rhs: &Self, order: usize) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(rhs);
            acc.coeffs.truncate(order + 1);
            if acc.coeffs.is_empty() {
                acc.coeffs.push(c.clone());
            } else {
                acc.coeffs[0] = acc.coeffs[0].add(c);
            }
        }
        Self::new(acc.coeffs)
    }

    /// Synthetic division by `(t - r)`: returns the quotient and remainder.
    pub fn divide_linear(&self, r: &K) -> (Self, K) {
        if self.is_zero() {
            return (Self::zero(), K::zero());
        }
        let mut q = vec![K::zero(); self.coeffs.len() - 1];
        let mut carry = K::zero();
        for m in (0..self.coeffs.len()).rev() {
            let v = self.coeffs[m].add(&carry);
            if m == 0 {
                return (Self::new(q), v);
            }
            q[m - 1] = v.clone();
            carry = v.mul(r);
        }
        unreachable!()
    }

    pub fn truncate_many(&self, keep: usize) -> Self {
        Self::new(self.coeffs.iter().take(keep).cloned().collect())
    }

    pub fn max_magnitude(&self) -> f64 {
        self.coeffs.iter().map(|c| c.magnitude()).fold(0.0, f64::max)
    }
}

impl<K: Scalar> fmt::Display for UniPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match m {
                0 => write!(f, "{}", c.render())?,
                1 => write!(f, "{}*t", c.render())?,
                _ => write!(f, "{}*t^{}", c.render(), m)?,
            }
        }
        Ok(())
    }
}

/// Monic remainder-based Euclid over the rationals.
pub fn rational_gcd(a: &UniPoly<BigRational>, b: &UniPoly<BigRational>) -> UniPoly<BigRational> {
    let field = CoefficientField::exact();
    let mut f = a.clone();
    let mut g = b.clone();
    while !g.is_zero() {
        let r = rational_rem(&f, &g, &field);
        f = g;
        g = r;
    }
    if let Some(lc) = f.leading().cloned() {
        f.scale(&(BigRational::one() / lc))
    } else {
        f
    }
}

fn rational_rem(
    f: &UniPoly<BigRational>,
    g: &UniPoly<BigRational>,
    _field: &CoefficientField,
) -> UniPoly<BigRational> {
    let gd = g.degree().expect("division by zero polynomial");
    let glc = g.leading().unwrap().clone();
    let mut r = f.clone();
    while let Some(rd) = r.degree() {
        if rd < gd {
            break;
        }
        let factor = r.leading().unwrap() / &glc;
        let mut sub = vec![BigRational::zero(); rd - gd];
        sub.push(factor);
        let sub = UniPoly::new(sub);
        r = r.sub(&sub.mul(g));
    }
    r
}

/// Number of distinct real roots by a Sturm chain.
pub fn sturm_real_root_count(f: &UniPoly<BigRational>) -> usize {
    let field = CoefficientField::exact();
    if f.degree().map_or(true, |d| d == 0) {
        return 0;
    }
    let mut chain = vec![f.clone(), f.derivative(&field)];
    loop {
        let n = chain.len();
        let r = rational_rem(&chain[n - 2], &chain[n - 1], &field).neg();
        if r.is_zero() {
            break;
        }
        chain.push(r);
    }
    let signs_at = |at_pos_infinity: bool| -> Vec<i8> {
        chain
            .iter()
            .filter_map(|p| p.degree().map(|d| (d, p.leading().unwrap())))
            .map(|(d, lc)| {
                let mut s: i8 = if lc.is_positive() { 1 } else { -1 };
                if !at_pos_infinity && d % 2 == 1 {
                    s = -s;
                }
                s
            })
            .collect()
    };
    let variations = |signs: Vec<i8>| -> usize {
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let v_neg = variations(signs_at(false));
    let v_pos = variations(signs_at(true));
    v_neg.saturating_sub(v_pos)
}

/// True when the polynomial is squarefree (gcd with its derivative is
/// constant).
pub fn is_squarefree(f: &UniPoly<BigRational>) -> bool {
    let field = CoefficientField::exact();
    match f.degree() {
        None => false,
        Some(0) => true,
        Some(_) => rational_gcd(f, &f.derivative(&field)).degree() == Some(0),
    }
}

/// All complex roots of a real-coefficient polynomial by the
/// Durand–Kerner iteration at `f64` precision. Used for reporting and for
/// seeding high-precision refinement; not a certified computation.
pub fn durand_kerner(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lc = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| Complex64::new(c / lc, 0.0)).collect();
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..300 {
        let mut delta: f64 = 0.0;
        let snapshot = roots.clone();
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, r) in snapshot.iter().enumerate() {
                if j != i {
                    denom *= snapshot[i] - r;
                }
            }
            if denom.norm() == 0.0 {
                continue;
            }
            let step = eval(snapshot[i]) / denom;
            roots[i] = snapshot[i] - step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 {
            break;
        }
    }
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    roots
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued-fraction convergents); `None` when the tail never gets close.
pub fn rational_candidate(x: f64, max_den: u64, tol: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e18 {
            break;
        }
        let ai = BigInt::from(a as i64);
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        if q2 > BigInt::from(max_den) {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let approx = p1.to_f64().unwrap_or(f64::NAN) / q1.to_f64().unwrap_or(f64::NAN);
        if (approx - x).abs() <= tol * x.abs().max(1.0) {
            return Some(BigRational::new(p1, q1));
        }
        let frac = v - a;
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    None
}

/// Sparse exact bivariate polynomial over the rationals.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly2::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn variable(axis: usize) -> Self {
        let mut p = Poly2::zero();
        if axis == 0 {
            p.add_term(1, 0, BigRational::one());
        } else {
            p.add_term(0, 1, BigRational::one());
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), c) in rhs.terms() {
            out.add_term(*i, *j, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), c) in rhs.terms() {
            out.add_term(*i, *j, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly2::zero().sub(self)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Poly2::zero();
        for ((i1, j1), c1) in self.terms() {
            for ((i2, j2), c2) in rhs.terms() {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Poly2::constant(BigRational::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, f: &BigRational) -> Self {
        let mut out = Poly2::zero();
        for ((i, j), c) in self.terms() {
            out.add_term(*i, *j, c * f);
        }
        out
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for ((i, j), c) in self.terms() {
            let mut t = c.clone();
            for _ in 0..*i {
                t *= x;
            }
            for _ in 0..*j {
                t *= y;
            }
            acc += t;
        }
        acc
    }

    pub fn derivative(&self, axis: usize) -> Self {
        let mut out = Poly2::zero();
        for ((i, j), c) in self.terms() {
            match axis {
                0 if *i > 0 => out.add_term(i - 1, *j, c * BigRational::from_integer(BigInt::from(*i))),
                1 if *j > 0 => out.add_term(*i, j - 1, c * BigRational::from_integer(BigInt::from(*j))),
                _ => {}
            }
        }
        out
    }

    /// Substitute `x -> x0 + x`, `y -> y0 + y` (recentering at a basepoint).
    pub fn recenter(&self, basepoint: &(BigRational, BigRational)) -> Self {
        let x = Poly2::variable(0).add(&Poly2::constant(basepoint.0.clone()));
        let y = Poly2::variable(1).add(&Poly2::constant(basepoint.1.clone()));
        let mut out = Poly2::zero();
        for ((i, j), c) in self.terms() {
            out = out.add(&x.pow(*i).mul(&y.pow(*j)).scale(c));
        }
        out
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            if !c.is_one() || (*i == 0 && *j == 0) {
                parts.push(crate::field::render_rational(c));
            }
            for (var, e) in [('x', *i), ('y', *j)] {
                match e {
                    0 => {}
                    1 => parts.push(var.to_string()),
                    _ => parts.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Sparse exact trivariate polynomial over the rationals (projective curve
/// equations and related ambient data).
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Poly3 {
    terms: BTreeMap<(u32, u32, u32), BigRational>,
}

impl Poly3 {
    pub fn zero() -> Self {
        Poly3::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly3::zero();
        p.add_term(0, 0, 0, c);
        p
    }

    pub fn monomial(i: u32, j: u32, k: u32, c: BigRational) -> Self {
        let mut p = Poly3::zero();
        p.add_term(i, j, k, c);
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, k: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j, k)).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j, k));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(i, j, k)| i + j + k).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|(i, j, k)| i + j + k);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Poly3::zero();
        for ((i1, j1, k1), c1) in self.terms() {
            for ((i2, j2, k2), c2) in rhs.terms() {
                out.add_term(i1 + i2, j1 + j2, k1 + k2, c1 * c2);
            }
        }
        out
    }

    pub fn derivative(&self, axis: usize) -> Self {
        let mut out = Poly3::zero();
        for ((i, j, k), c) in self.terms() {
            let (e, di, dj, dk) = match axis {
                0 => (*i, 1u32, 0u32, 0u32),
                1 => (*j, 0, 1, 0),
                _ => (*k, 0, 0, 1),
            };
            if e > 0 {
                out.add_term(i - di, j - dj, k - dk, c * BigRational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Affine slice `z = 1` as a bivariate polynomial in `(x, y)`.
    pub fn affine_xy(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for ((i, j, _k), c) in self.terms() {
            out.add_term(*i, *j, c.clone());
        }
        out
    }

    /// Substitute `y -> p x + q z`, `z -> z`, read off coefficients of `x^m`
    /// in the chart `z = 1`. The result is the line-section polynomial: a
    /// univariate polynomial in `x` whose coefficients are polynomials in
    /// the dual coordinates `(p, q)`.
    pub fn line_section(&self) -> Vec<Poly2> {
        let deg = self.total_degree() as usize;
        let mut out = vec![Poly2::zero(); deg + 1];
        for ((i, j, _k), c) in self.terms() {
            // y^j -> sum_t C(j,t) p^t q^(j-t) x^t
            let mut binom = BigRational::one();
            for t in 0..=*j {
                let xm = (*i + t) as usize;
                if xm < out.len() {
                    out[xm].add_term(t, j - t, c * &binom);
                }
                // next binomial coefficient C(j, t+1)
                binom = binom * BigRational::from_integer(BigInt::from(j - t))
                    / BigRational::from_integer(BigInt::from(t + 1));
            }
        }
        while out.last().map_or(false, |p| p.is_zero()) {
            out.pop();
        }
        out
    }

    /// Swap the x and y variables (fallback chart support).
    pub fn swap_xy(&self) -> Self {
        let mut out = Poly3::zero();
        for ((i, j, k), c) in self.terms() {
            out.add_term(*j, *i, *k, c.clone());
        }
        out
    }

    /// The common weighted degree of all monomials under integer weights,
    /// or `None` when the polynomial is not weighted-homogeneous.
    pub fn weighted_degree(&self, w: (i64, i64, i64)) -> Option<i64> {
        let mut deg = None;
        for ((i, j, k), _) in self.terms() {
            let d = *i as i64 * w.0 + *j as i64 * w.1 + *k as i64 * w.2;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Restriction to the parametrized line `(x, y, z) = (a t + b, c t + d, 1)`
    /// as a univariate polynomial in `t`.
    pub fn restrict_to_line(
        &self,
        a: &BigRational,
        b: &BigRational,
        c: &BigRational,
        d: &BigRational,
    ) -> UniPoly<BigRational> {
        let xt = UniPoly::new(vec![b.clone(), a.clone()]);
        let yt = UniPoly::new(vec![d.clone(), c.clone()]);
        let mut acc = UniPoly::zero();
        for ((i, j, _k), coeff) in self.terms() {
            let mut term = UniPoly::constant(coeff.clone());
            for _ in 0..*i {
                term = term.mul(&xt);
            }
            for _ in 0..*j {
                term = term.mul(&yt);
            }
            acc = acc.add(&term);
        }
        acc
    }
}

impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j, k), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            if !c.is_one() || (*i == 0 && *j == 0 && *k == 0) {
                parts.push(crate::field::render_rational(c));
            }
            for (var, e) in [('x', *i), ('y', *j), ('z', *k)] {
                match e {
                    0 => {}
                    1 => parts.push(var.to_string()),
                    _ => parts.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn gcd_and_squarefree() {
        // (t-1)^2 (t+2) is not squarefree; (t-1)(t+2) is.
        let f = UniPoly::new(vec![q(2, 1), q(-3, 1), q(0, 1), q(1, 1)]); // t^3 - 3t + 2 = (t-1)^2 (t+2)
        assert!(!is_squarefree(&f));
        let g = UniPoly::new(vec![q(-2, 1), q(1, 1), q(1, 1)]); // (t-1)(t+2)
        assert!(is_squarefree(&g));
        let gcd = rational_gcd(&f, &g);
        assert_eq!(gcd.degree(), Some(1));
    }

    #[test]
    fn sturm_counts_real_roots() {
        // t^2 - 2: two real roots; t^2 + 1: none; (t-1)(t-2)(t-3): three.
        let f = UniPoly::new(vec![q(-2, 1), q(0, 1), q(1, 1)]);
        assert_eq!(sturm_real_root_count(&f), 2);
        let g = UniPoly::new(vec![q(1, 1), q(0, 1), q(1, 1)]);
        assert_eq!(sturm_real_root_count(&g), 0);
        let h = UniPoly::new(vec![q(-6, 1), q(11, 1), q(-6, 1), q(1, 1)]);
        assert_eq!(sturm_real_root_count(&h), 3);
    }

    #[test]
    fn durand_kerner_finds_roots() {
        // (t-1)(t-2)(t+3) = t^3 - 7t + 6
        let roots = durand_kerner(&[6.0, -7.0, 0.0, 1.0]);
        let mut reals: Vec<f64> = roots.iter().map(|z| z.re).collect();
        reals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((reals[0] + 3.0).abs() < 1e-10);
        assert!((reals[1] - 1.0).abs() < 1e-10);
        assert!((reals[2] - 2.0).abs() < 1e-10);
        assert!(roots.iter().all(|z| z.im.abs() < 1e-10));
    }

    #[test]
    fn rational_candidates_recover_fractions() {
        assert_eq!(rational_candidate(0.5, 100, 1e-9), Some(q(1, 2)));
        assert_eq!(rational_candidate(-2.0 / 3.0, 100, 1e-9), Some(q(-2, 3)));
        assert_eq!(rational_candidate(std::f64::consts::SQRT_2, 50, 1e-12), None);
    }

    #[test]
    fn poly2_recenter_matches_evaluation() {
        // p(x, y) = x^2 y - 3/2 y + 1 recentered at (1, 2): constant term is
        // p(1, 2).
        let mut p = Poly2::zero();
        p.add_term(2, 1, q(1, 1));
        p.add_term(0, 1, q(-3, 2));
        p.add_term(0, 0, q(1, 1));
        let bp = (q(1, 1), q(2, 1));
        let r = p.recenter(&bp);
        let c00 = r
            .terms()
            .find(|((i, j), _)| *i == 0 && *j == 0)
            .map(|(_, c)| c.clone())
            .unwrap();
        assert_eq!(c00, p.eval(&bp.0, &bp.1));
    }

    #[test]
    fn line_section_of_conic() {
        // x^2 - yz, line y = px + qz, z = 1: x^2 - px - q.
        let mut f = Poly3::zero();
        f.add_term(2, 0, 0, q(1, 1));
        f.add_term(0, 1, 1, q(-1, 1));
        let sec = f.line_section();
        assert_eq!(sec.len(), 3);
        assert_eq!(sec[2], Poly2::constant(q(1, 1)));
        assert_eq!(sec[1], Poly2::variable(0).scale(&q(-1, 1)));
        assert_eq!(sec[0], Poly2::variable(1).scale(&q(-1, 1)));
    }

    #[test]
    fn weighted_degree_detects_invariance() {
        // x^2 + yz is weighted-homogeneous for (1, 2, 0) with degree 2.
        let mut f = Poly3::zero();
        f.add_term(2, 0, 0, q(1, 1));
        f.add_term(0, 1, 1, q(1, 1));
        assert_eq!(f.weighted_degree((1, 2, 0)), Some(2));
        assert_eq!(f.weighted_degree((1, 1, 0)), None);
    }
}
