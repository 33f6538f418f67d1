//! Laurent polynomials in `q`, quantum integers and graded dimension tables.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum QError {
    #[error("Laurent polynomial is not divisible by the given divisor")]
    NonDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("coefficient {coeff} at degree {degree} is negative")]
    NegativeCoefficient { degree: i64, coeff: i64 },
    #[error("window too narrow to deconvolve")]
    WindowTooNarrow,
}

/// An element of `Z[q, q^-1]`, stored sparsely without zero coefficients.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentInt {
    terms: BTreeMap<i64, i64>,
}

impl LaurentInt {
    pub fn zero() -> Self {
        LaurentInt::default()
    }

    pub fn one() -> Self {
        LaurentInt::monomial(0, 1)
    }

    pub fn monomial(degree: i64, coeff: i64) -> Self {
        let mut p = LaurentInt::zero();
        p.add_term(degree, coeff);
        p
    }

    pub fn constant(c: i64) -> Self {
        LaurentInt::monomial(0, c)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = LaurentInt::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    pub fn add_term(&mut self, degree: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(degree).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&degree);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, degree: i64) -> i64 {
        self.terms.get(&degree).copied().unwrap_or(0)
    }

    /// `(degree, coefficient)` pairs in increasing degree.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&d, &c)| (d, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentInt { terms: self.terms.iter().map(|(&d, &c)| (d + k, c)).collect() }
    }

    /// The substitution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        LaurentInt { terms: self.terms.iter().map(|(&d, &c)| (-d, c)).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return LaurentInt::zero();
        }
        LaurentInt { terms: self.terms.iter().map(|(&d, &c)| (d, c * k)).collect() }
    }

    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(LaurentInt::one(), |acc, _| &acc * self)
    }

    /// Exact division in `Z[q, q^-1]`.
    pub fn exact_div(&self, divisor: &LaurentInt) -> Result<LaurentInt, QError> {
        let (dlo, dhi) = match (divisor.min_degree(), divisor.max_degree()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(QError::DivisionByZero),
        };
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = LaurentInt::zero();
        while let Some(rhi) = rem.max_degree() {
            let rlo = rem.min_degree().unwrap_or(rhi);
            if rhi - rlo < dhi - dlo {
                return Err(QError::NonDivisible);
            }
            let c = rem.coeff(rhi);
            if c % lead != 0 {
                return Err(QError::NonDivisible);
            }
            let q = c / lead;
            let s = rhi - dhi;
            quot.add_term(s, q);
            for (d, dc) in divisor.terms() {
                rem.add_term(d + s, -q * dc);
            }
        }
        Ok(quot)
    }
}

impl fmt::Debug for LaurentInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (d, c)) in self.terms().rev().enumerate() {
            let sign = if c < 0 { "-" } else if idx > 0 { "+" } else { "" };
            if idx > 0 {
                f.write_str(" ")?;
            }
            f.write_str(sign)?;
            if idx > 0 {
                f.write_str(" ")?;
            }
            let a = c.abs();
            match (d, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "q^{d}")?,
                _ => write!(f, "{a}q^{d}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentInt {
    type Output = LaurentInt;
    fn add(self, rhs: &LaurentInt) -> LaurentInt {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentInt {
    type Output = LaurentInt;
    fn add(mut self, rhs: LaurentInt) -> LaurentInt {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentInt> for LaurentInt {
    fn add_assign(&mut self, rhs: &LaurentInt) {
        for (d, c) in rhs.terms() {
            self.add_term(d, c);
        }
    }
}

impl SubAssign<&LaurentInt> for LaurentInt {
    fn sub_assign(&mut self, rhs: &LaurentInt) {
        for (d, c) in rhs.terms() {
            self.add_term(d, -c);
        }
    }
}

impl Sub for &LaurentInt {
    type Output = LaurentInt;
    fn sub(self, rhs: &LaurentInt) -> LaurentInt {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentInt {
    type Output = LaurentInt;
    fn sub(mut self, rhs: LaurentInt) -> LaurentInt {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentInt {
    type Output = LaurentInt;
    fn neg(self) -> LaurentInt {
        self.scale(-1)
    }
}

impl Neg for LaurentInt {
    type Output = LaurentInt;
    fn neg(self) -> LaurentInt {
        self.scale(-1)
    }
}

impl Mul for &LaurentInt {
    type Output = LaurentInt;
    fn mul(self, rhs: &LaurentInt) -> LaurentInt {
        let mut out = LaurentInt::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Mul for LaurentInt {
    type Output = LaurentInt;
    fn mul(self, rhs: LaurentInt) -> LaurentInt {
        &self * &rhs
    }
}

/// The quantum integer `[n]`, with `[0] = 0` and `[-n] = -[n]`.
pub fn qint(n: i64) -> LaurentInt {
    let a = n.abs();
    let sign = n.signum();
    LaurentInt::from_terms((0..a).map(|r| (a - 1 - 2 * r, sign)))
}

/// `[n]! = [n][n-1]...[1]`.
pub fn qfactorial(n: u32) -> LaurentInt {
    (1..=n as i64).fold(LaurentInt::one(), |acc, k| &acc * &qint(k))
}

/// The quantum binomial coefficient, computed as an exact quotient of factorials.
pub fn qbinom(n: u32, k: u32) -> Result<GradedMult, QError> {
    assert!(k <= n, "qbinom needs k <= n");
    let den = &qfactorial(n - k) * &qfactorial(k);
    let quot = qfactorial(n).exact_div(&den)?;
    GradedMult::try_from(quot)
}

/// A Laurent polynomial with nonnegative coefficients: graded multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradedMult(LaurentInt);

impl GradedMult {
    pub fn as_laurent(&self) -> &LaurentInt {
        &self.0
    }

    pub fn into_laurent(self) -> LaurentInt {
        self.0
    }
}

impl TryFrom<LaurentInt> for GradedMult {
    type Error = QError;
    fn try_from(p: LaurentInt) -> Result<Self, QError> {
        if let Some((degree, coeff)) = p.terms().find(|&(_, c)| c < 0) {
            return Err(QError::NegativeCoefficient { degree, coeff });
        }
        Ok(GradedMult(p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DimValue {
    Exactly(i64),
    Unknown,
}

impl DimValue {
    pub fn exact(self) -> Option<i64> {
        match self {
            DimValue::Exactly(n) => Some(n),
            DimValue::Unknown => None,
        }
    }

    pub fn is_known(self) -> bool {
        matches!(self, DimValue::Exactly(_))
    }
}

/// Dimensions over the degree window `[lo, hi]`; anything outside is unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimTable {
    lo: i64,
    values: Vec<DimValue>,
}

impl DimTable {
    pub fn new(lo: i64, values: Vec<DimValue>) -> Self {
        DimTable { lo, values }
    }

    pub fn filled(lo: i64, hi: i64, v: DimValue) -> Self {
        assert!(lo <= hi, "empty window");
        DimTable { lo, values: alloc::vec![v; (hi - lo + 1) as usize] }
    }

    pub fn zeros(lo: i64, hi: i64) -> Self {
        DimTable::filled(lo, hi, DimValue::Exactly(0))
    }

    pub fn from_fn(lo: i64, hi: i64, mut f: impl FnMut(i64) -> DimValue) -> Self {
        DimTable { lo, values: (lo..=hi).map(&mut f).collect() }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.values.len() as i64 - 1
    }

    pub fn get(&self, d: i64) -> DimValue {
        if d < self.lo || d > self.hi() {
            return DimValue::Unknown;
        }
        self.values[(d - self.lo) as usize]
    }

    pub fn set(&mut self, d: i64, v: DimValue) {
        assert!(d >= self.lo && d <= self.hi(), "degree outside window");
        self.values[(d - self.lo) as usize] = v;
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, DimValue)> + '_ {
        self.values.iter().enumerate().map(|(k, &v)| (self.lo + k as i64, v))
    }

    /// Restriction (or extension with unknowns) to another window.
    pub fn window(&self, lo: i64, hi: i64) -> DimTable {
        DimTable::from_fn(lo, hi, |d| self.get(d))
    }

    /// Per degree `d`: `sum_e coeff_e * self(d - e)`.
    pub fn convolve(&self, coeff: &LaurentInt) -> DimTable {
        DimTable::from_fn(self.lo, self.hi(), |d| {
            let mut total = 0i64;
            for (e, c) in coeff.terms() {
                match self.get(d - e) {
                    DimValue::Exactly(v) => total += c * v,
                    DimValue::Unknown => return DimValue::Unknown,
                }
            }
            DimValue::Exactly(total)
        })
    }

    /// Inverts convolution by `[2]`: finds `h` with `self(d) = h(d-1) + h(d+1)`.
    ///
    /// Solves from the bottom of the window; the two lowest degrees must be known zeros,
    /// which forces `h` to vanish below the window.
    pub fn deconvolve_q2(&self) -> Result<DimTable, QError> {
        let lo = self.lo;
        let hi = self.hi();
        if hi - lo < 1 || self.get(lo) != DimValue::Exactly(0) || self.get(lo + 1) != DimValue::Exactly(0) {
            return Err(QError::WindowTooNarrow);
        }
        let mut h = DimTable::filled(lo, hi, DimValue::Unknown);
        // g(lo) = g(lo+1) = 0 with h >= 0 forces h to vanish up to lo + 2.
        for d in lo..=(lo + 2).min(hi) {
            h.set(d, DimValue::Exactly(0));
        }
        for d in (lo + 3)..=hi {
            // h(d) = g(d - 1) - h(d - 2)
            let v = match (self.get(d - 1), h.get(d - 2)) {
                (DimValue::Exactly(g), DimValue::Exactly(p)) => DimValue::Exactly(g - p),
                _ => DimValue::Unknown,
            };
            h.set(d, v);
        }
        Ok(h)
    }

    pub fn all_known(&self) -> bool {
        self.values.iter().all(|v| v.is_known())
    }
}

/// Per degree `d`: `a(d) + sum_e coeff_e * b(d - e)`.
pub fn dim_add(a: &DimTable, b: &DimTable, coeff: &LaurentInt) -> DimTable {
    assert_eq!((a.lo(), a.hi()), (b.lo(), b.hi()), "dim_add needs a shared window");
    let scaled = b.convolve(coeff);
    DimTable::from_fn(a.lo(), a.hi(), |d| match (a.get(d), scaled.get(d)) {
        (DimValue::Exactly(x), DimValue::Exactly(y)) => DimValue::Exactly(x + y),
        _ => DimValue::Unknown,
    })
}
