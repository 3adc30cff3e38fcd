//! Coefficient fields: exact rationals and correctly rounded big floats.
//!
//! Every germ, matrix and report in the crate is generic over a [`Scalar`].
//! The exact-rational scalar performs no rounding anywhere; the big-float
//! scalar wraps `astro-float` at a configurable mantissa precision and is
//! used where constant terms are algebraic numbers (dual-web slopes).

use astro_float::{BigFloat, RoundingMode, Sign, WORD_BIT_SIZE};
use num::bigint::Sign as IntSign;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::fmt;

use crate::{Error, Result};

/// Minimum ratio between the last accepted and the first rejected pivot of a
/// floating kernel computation. Spectra with a smaller relative gap at the
/// cut are rejected as numerically ambiguous.
pub const MIN_GAP_RATIO: f64 = 1e6;

pub const DEFAULT_PRECISION_BITS: u32 = 256;
pub const DEFAULT_RANK_GAP_TOLERANCE: f64 = 1e-30;

const RM: RoundingMode = RoundingMode::ToEven;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldMode {
    ExactRational,
    BigFloat,
}

/// Arithmetic mode shared by a whole computation: exact rationals, or big
/// floats with a mantissa precision and a rank-gap/residual tolerance.
#[derive(Clone, Debug)]
pub struct CoefficientField {
    pub mode: FieldMode,
    /// Mantissa precision in bits (big-float mode only, at least 128).
    pub precision_bits: u32,
    /// Threshold below which a residual or pivot counts as zero, relative to
    /// the leading scale (big-float mode only, strictly positive).
    pub rank_gap_tolerance: f64,
}

impl CoefficientField {
    pub fn exact() -> Self {
        CoefficientField {
            mode: FieldMode::ExactRational,
            precision_bits: 0,
            rank_gap_tolerance: 0.0,
        }
    }

    pub fn big_float(precision_bits: u32, rank_gap_tolerance: f64) -> Result<Self> {
        if precision_bits < 128 {
            return Err(Error::Validation(format!(
                "big-float precision must be at least 128 bits, got {precision_bits}"
            )));
        }
        if !(rank_gap_tolerance > 0.0) {
            return Err(Error::Validation(
                "big-float rank_gap_tolerance must be strictly positive".into(),
            ));
        }
        Ok(CoefficientField {
            mode: FieldMode::BigFloat,
            precision_bits,
            rank_gap_tolerance,
        })
    }

    pub fn big_float_default() -> Self {
        Self::big_float(DEFAULT_PRECISION_BITS, DEFAULT_RANK_GAP_TOLERANCE).unwrap()
    }

    pub fn is_exact(&self) -> bool {
        self.mode == FieldMode::ExactRational
    }

    /// Residual tolerance for zero tests: 0 in exact mode (only structural
    /// zeros pass), the configured tolerance otherwise.
    pub fn residual_tolerance(&self) -> f64 {
        if self.is_exact() {
            0.0
        } else {
            self.rank_gap_tolerance
        }
    }
}

/// A field element the whole toolkit can compute with.
///
/// Implementations must be immutable values; all operations are pure.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// True when arithmetic is exact (no rounding anywhere).
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Division; the caller guarantees `rhs` is nonzero.
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    fn from_rational(q: &BigRational, field: &CoefficientField) -> Self;
    fn from_int(n: i64, field: &CoefficientField) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)), field)
    }

    /// Approximate value as `f64` (for reporting; may under/overflow).
    fn to_f64(&self) -> f64;
    /// `|self|` as `f64`; exact zero maps to 0.0.
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
    /// True when `|self| > |rhs|` (pivot selection).
    fn abs_gt(&self, rhs: &Self) -> bool;
    /// Total comparison where defined (used for deterministic ordering).
    fn cmp_order(&self, rhs: &Self) -> std::cmp::Ordering;

    /// Exact rational value when the scalar is exact.
    fn to_rational(&self) -> Option<BigRational>;

    /// Canonical rendering: `p` or `p/q` for rationals, decimal for floats.
    fn render(&self) -> String;

    /// Zero test against the field tolerance: structural zero in exact mode,
    /// magnitude below tolerance in float mode.
    fn is_negligible(&self, field: &CoefficientField) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= field.residual_tolerance()
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        <BigRational as Zero>::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }

    fn from_rational(q: &BigRational, _field: &CoefficientField) -> Self {
        q.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            // Out of f64 range; recover the sign at least.
            if self.is_positive() {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            }
        })
    }

    fn abs_gt(&self, rhs: &Self) -> bool {
        self.abs() > rhs.abs()
    }

    fn cmp_order(&self, rhs: &Self) -> std::cmp::Ordering {
        self.cmp(rhs)
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn render(&self) -> String {
        render_rational(self)
    }
}

/// Canonical `p/q` rendering (plain `p` for integers).
pub fn render_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Arbitrary-precision binary float with per-value mantissa precision.
///
/// A thin wrapper over `astro_float::BigFloat`; binary operations round to
/// the larger of the operand precisions.
#[derive(Clone, Debug)]
pub struct MpFloat {
    v: BigFloat,
    prec: usize,
}

impl MpFloat {
    pub fn with_bits(v: BigFloat, bits: usize) -> Self {
        MpFloat { v, prec: bits.max(WORD_BIT_SIZE) }
    }

    pub fn precision_bits(&self) -> usize {
        self.prec
    }

    fn join(&self, rhs: &Self) -> usize {
        self.prec.max(rhs.prec)
    }

    fn abs_value(&self) -> BigFloat {
        let mut a = self.v.clone();
        a.set_sign(Sign::Pos);
        a
    }

    /// Base-2 exponent of the value (None for zero).
    pub fn exponent(&self) -> Option<i32> {
        if self.v.is_zero() {
            None
        } else {
            self.v.exponent().map(|e| e as i32)
        }
    }

    pub fn from_f64(x: f64, bits: usize) -> Self {
        MpFloat::with_bits(BigFloat::from_f64(x, bits), bits)
    }

    /// Nonnegative square root via Newton iteration (used by root polishing).
    pub fn sqrt(&self) -> Self {
        let p = self.prec + WORD_BIT_SIZE;
        MpFloat::with_bits(self.v.sqrt(p, RM), self.prec)
    }
}

fn bigint_to_bigfloat(n: &BigInt, bits: usize) -> BigFloat {
    if n.is_zero() {
        return BigFloat::new(bits);
    }
    let (sign, words) = n.to_u64_digits();
    let s = if sign == IntSign::Minus { Sign::Neg } else { Sign::Pos };
    // from_words treats the little-endian words as a binary fraction scaled
    // by 2^e, so e = total word bits recovers the integer value.
    let e = (words.len() * WORD_BIT_SIZE) as astro_float::Exponent;
    let f = BigFloat::from_words(&words, s, e);
    let mut f = f;
    // Keep full integer precision if it exceeds the target; rounding happens
    // at the first arithmetic operation.
    let _ = f.set_precision(bits.max(words.len() * WORD_BIT_SIZE), RM);
    f
}

impl PartialEq for MpFloat {
    fn eq(&self, other: &Self) -> bool {
        self.v.cmp(&other.v) == Some(0)
    }
}

impl fmt::Display for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

impl Scalar for MpFloat {
    const EXACT: bool = false;

    fn zero() -> Self {
        MpFloat::with_bits(BigFloat::new(WORD_BIT_SIZE), WORD_BIT_SIZE)
    }
    fn one() -> Self {
        MpFloat::with_bits(BigFloat::from_i8(1, WORD_BIT_SIZE), WORD_BIT_SIZE)
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        MpFloat::with_bits(self.v.add(&rhs.v, p, RM), p)
    }
    fn sub(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        MpFloat::with_bits(self.v.sub(&rhs.v, p, RM), p)
    }
    fn mul(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        MpFloat::with_bits(self.v.mul(&rhs.v, p, RM), p)
    }
    fn div(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        debug_assert!(!rhs.v.is_zero(), "division by float zero");
        MpFloat::with_bits(self.v.div(&rhs.v, p, RM), p)
    }
    fn neg(&self) -> Self {
        MpFloat::with_bits(self.v.neg(), self.prec)
    }

    fn from_rational(q: &BigRational, field: &CoefficientField) -> Self {
        let bits = if field.precision_bits >= 128 {
            field.precision_bits as usize
        } else {
            DEFAULT_PRECISION_BITS as usize
        };
        let work = bits + WORD_BIT_SIZE;
        let num = bigint_to_bigfloat(q.numer(), work);
        let den = bigint_to_bigfloat(q.denom(), work);
        let mut v = num.div(&den, work, RM);
        let _ = v.set_precision(bits, RM);
        MpFloat::with_bits(v, bits)
    }

    fn to_f64(&self) -> f64 {
        if self.v.is_zero() {
            return 0.0;
        }
        let Some((words, _n, sign, exp, _)) = self.v.as_raw_parts() else {
            return f64::NAN;
        };
        let top = *words.last().unwrap() as f64;
        let next = if words.len() > 1 { words[words.len() - 2] as f64 } else { 0.0 };
        let scale = 2f64.powi(WORD_BIT_SIZE as i32);
        let frac = top / scale + next / (scale * scale);
        let v = frac * 2f64.powi(exp);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    fn abs_gt(&self, rhs: &Self) -> bool {
        matches!(self.abs_value().cmp(&rhs.abs_value()), Some(c) if c > 0)
    }

    fn cmp_order(&self, rhs: &Self) -> std::cmp::Ordering {
        match self.v.cmp(&rhs.v) {
            Some(c) if c < 0 => std::cmp::Ordering::Less,
            Some(c) if c > 0 => std::cmp::Ordering::Greater,
            _ => std::cmp::Ordering::Equal,
        }
    }

    fn to_rational(&self) -> Option<BigRational> {
        None
    }

    fn render(&self) -> String {
        format!("{}", self.to_f64())
    }
}
