//! Exact truncated Laurent series in `q` with arbitrary-precision integer
//! coefficients.
//!
//! A [`TruncSeries`] stores a dense coefficient window together with two
//! bookkeeping exponents:
//!
//! * `offset` — the lowest exponent the window covers; every exponent below
//!   it is known to have coefficient zero;
//! * `prec` — the exclusive exactness bound: coefficients of `q^e` are exact
//!   for all `e < prec` and unknown at `prec` and beyond.
//!
//! The invariant `prec > offset` always holds, and `coeffs.len() ==
//! (prec - offset)`. Truncation bookkeeping is pessimistic and explicit:
//!
//! * addition keeps `min` of the operand precisions,
//! * multiplication yields `offset = a.offset + b.offset` and
//!   `prec = min(a.prec + b.offset, b.prec + a.offset)` (the other factor's
//!   valuation eats precision),
//! * inversion of a series with valuation `v` yields `offset = -v` and
//!   `prec = a.prec - 2v`.
//!
//! Multiplication is schoolbook convolution, `O(N^2)` in the window length;
//! the orders used throughout this crate (a few hundred) make anything
//! fancier pointless.
//!
//! Also provided here:
//!
//! * [`Monomial`] — a signed scaled power `sign * scale * q^mag_exp`, the only
//!   shape of "free parameter" any identity in this crate needs;
//! * the q-Pochhammer constructors [`poch_finite`], [`poch_inf`],
//!   [`poch_inf_base`] and [`poch_mod`];
//! * [`inv_poch_finite_table`] / [`poch_finite_table`] — shared tables of
//!   `1/(q)_n` and `(q)_n`;
//! * [`equal_to_order`] — the verification predicate used by every identity
//!   checker, reporting the first mismatching exponent on failure.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{QError, Result};

/// A signed, scaled power of `q`: `sign * scale * q^mag_exp`.
///
/// `sign` is `+1` or `-1`, `scale` is a nonnegative integer (1 for every
/// identity instance in this crate — it is the only admissible free
/// parameter shape, kept for completeness).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Monomial {
    /// `+1` or `-1`.
    pub sign: i8,
    /// Exponent of `q`; may be negative (Laurent monomial).
    pub mag_exp: i64,
    /// Nonnegative integer magnitude.
    pub scale: u32,
}

impl Monomial {
    /// `scale * sign * q^mag_exp` with explicit components.
    ///
    /// Panics if `sign` is not `+1` or `-1`.
    pub fn new(sign: i8, mag_exp: i64, scale: u32) -> Self {
        assert!(sign == 1 || sign == -1, "monomial sign must be +1 or -1");
        Monomial { sign, mag_exp, scale }
    }

    /// The monomial `q`.
    pub fn q() -> Self {
        Monomial::new(1, 1, 1)
    }

    /// The monomial `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Monomial::new(1, e, 1)
    }

    /// The monomial `-q^e`.
    pub fn neg_q_pow(e: i64) -> Self {
        Monomial::new(-1, e, 1)
    }

    /// Numerical coefficient (`sign * scale`) as a big integer.
    pub fn coefficient(&self) -> BigInt {
        let mut c = BigInt::from(self.scale);
        if self.sign < 0 {
            c = -c;
        }
        c
    }

    /// Coefficient and exponent of the `n`-th power of this monomial.
    pub fn term_pow(&self, n: u32) -> (BigInt, i64) {
        let mut c = BigInt::from(self.scale).pow(n);
        if self.sign < 0 && n % 2 == 1 {
            c = -c;
        }
        (c, self.mag_exp * i64::from(n))
    }
}

/// Dense truncated Laurent series with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    offset: i64,
    coeffs: Vec<BigInt>,
}

impl TruncSeries {
    fn from_parts(offset: i64, coeffs: Vec<BigInt>) -> Self {
        debug_assert!(!coeffs.is_empty(), "series window must be nonempty");
        let mut s = TruncSeries { offset, coeffs };
        s.normalize();
        s
    }

    /// Drop leading known-zero coefficients, raising `offset` (a zero prefix
    /// carries no information beyond what `offset` already asserts). The
    /// window is never emptied: an identically-zero series keeps one slot.
    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == 0 {
            return;
        }
        let keep = if lead == self.coeffs.len() { lead - 1 } else { lead };
        if keep > 0 {
            self.coeffs.drain(..keep);
            self.offset += keep as i64;
        }
    }

    /// The zero series, exact below order `prec`.
    pub fn zero(prec: i64) -> Self {
        TruncSeries { offset: prec - 1, coeffs: vec![BigInt::zero()] }
    }

    /// The constant series 1 to order `prec` (requires `prec >= 1` so the
    /// constant term is inside the window).
    pub fn one(prec: i64) -> Self {
        Self::constant(BigInt::one(), prec)
    }

    /// A constant series to order `prec` (requires `prec >= 1`).
    pub fn constant(c: BigInt, prec: i64) -> Self {
        assert!(prec >= 1, "constant series needs prec >= 1, got {prec}");
        let mut coeffs = vec![BigInt::zero(); prec as usize];
        coeffs[0] = c;
        TruncSeries::from_parts(0, coeffs)
    }

    /// Series with given coefficient window starting at exponent `offset`.
    pub fn from_coeffs(offset: i64, coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "coefficient window must be nonempty");
        TruncSeries::from_parts(offset, coeffs)
    }

    /// The single term `coeff * q^exp`, exact below `prec` (needs `exp < prec`).
    pub fn term(coeff: BigInt, exp: i64, prec: i64) -> Self {
        assert!(exp < prec, "term exponent {exp} must lie below prec {prec}");
        let len = (prec - exp) as usize;
        let mut coeffs = vec![BigInt::zero(); len];
        coeffs[0] = coeff;
        TruncSeries::from_parts(exp, coeffs)
    }

    /// Lowest exponent covered by the window; all lower coefficients are zero.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Exclusive exactness bound: coefficients are exact for exponents `< prec`.
    pub fn prec(&self) -> i64 {
        self.offset + self.coeffs.len() as i64
    }

    /// Coefficient of `q^exp` (zero below the window).
    ///
    /// Panics if `exp >= prec` — that coefficient is not certified.
    pub fn coeff(&self, exp: i64) -> BigInt {
        assert!(
            exp < self.prec(),
            "coefficient of q^{exp} is beyond certified precision {}",
            self.prec()
        );
        if exp < self.offset {
            BigInt::zero()
        } else {
            self.coeffs[(exp - self.offset) as usize].clone()
        }
    }

    /// True if every certified coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coefficients for the exponent range `from..to` (certified range only).
    pub fn coeff_range(&self, from: i64, to: i64) -> Vec<BigInt> {
        (from..to).map(|e| self.coeff(e)).collect()
    }

    /// Restrict to a lower precision (no-op when `new_prec >= prec`).
    pub fn truncated(&self, new_prec: i64) -> Self {
        if new_prec >= self.prec() {
            return self.clone();
        }
        if new_prec <= self.offset {
            return TruncSeries::zero(new_prec);
        }
        let len = (new_prec - self.offset) as usize;
        TruncSeries::from_parts(self.offset, self.coeffs[..len].to_vec())
    }

    /// Pointwise sum; precision drops to the weaker operand's.
    pub fn add(&self, rhs: &TruncSeries) -> TruncSeries {
        self.combine(rhs, false)
    }

    /// Pointwise difference; precision drops to the weaker operand's.
    pub fn sub(&self, rhs: &TruncSeries) -> TruncSeries {
        self.combine(rhs, true)
    }

    fn combine(&self, rhs: &TruncSeries, negate: bool) -> TruncSeries {
        let offset = self.offset.min(rhs.offset);
        let prec = self.prec().min(rhs.prec());
        let len = (prec - offset) as usize;
        let mut coeffs = vec![BigInt::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.offset + i as i64;
            if e < prec {
                coeffs[(e - offset) as usize] += c;
            }
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            let e = rhs.offset + i as i64;
            if e < prec {
                let slot = &mut coeffs[(e - offset) as usize];
                if negate {
                    *slot -= c;
                } else {
                    *slot += c;
                }
            }
        }
        TruncSeries::from_parts(offset, coeffs)
    }

    /// Negation (precision unchanged).
    pub fn neg(&self) -> TruncSeries {
        TruncSeries {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Schoolbook product with pessimistic truncation bookkeeping:
    /// `offset = a.offset + b.offset`,
    /// `prec = min(a.prec + b.offset, b.prec + a.offset)`.
    ///
    /// Fails with [`QError::InsufficientPrecision`] when the resulting window
    /// would be empty (possible only for deeply negative offsets).
    pub fn mul(&self, rhs: &TruncSeries) -> Result<TruncSeries> {
        let offset = self.offset + rhs.offset;
        let prec = (self.prec() + rhs.offset).min(rhs.prec() + self.offset);
        if prec <= offset {
            return Err(QError::InsufficientPrecision { requested: offset + 1, available: prec });
        }
        let len = (prec - offset) as usize;
        let mut coeffs = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            let bound = (len - i).min(rhs.coeffs.len());
            for (j, b) in rhs.coeffs.iter().enumerate().take(bound) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Ok(TruncSeries::from_parts(offset, coeffs))
    }

    /// Multiply by the single term `coeff * q^exp` (exact shift+scale).
    pub fn mul_term(&self, coeff: &BigInt, exp: i64) -> TruncSeries {
        if coeff.is_zero() {
            return TruncSeries::zero(self.prec() + exp);
        }
        TruncSeries {
            offset: self.offset + exp,
            coeffs: self.coeffs.iter().map(|c| c * coeff).collect(),
        }
    }

    /// In-place `self += coeff * q^shift * other`, truncating to `self`'s
    /// precision. The shifted operand must certify at least that precision.
    pub fn add_assign_shifted(&mut self, other: &TruncSeries, coeff: &BigInt, shift: i64) {
        let prec = self.prec();
        debug_assert!(
            other.prec() + shift >= prec,
            "shifted summand certifies less than the accumulator"
        );
        if coeff.is_zero() {
            return;
        }
        let lo = other.offset + shift;
        if lo >= prec {
            return;
        }
        if lo < self.offset {
            let grow = (self.offset - lo) as usize;
            let mut front = vec![BigInt::zero(); grow];
            front.append(&mut self.coeffs);
            self.coeffs = front;
            self.offset = lo;
        }
        let one = BigInt::one();
        let neg_one = -BigInt::one();
        for (i, c) in other.coeffs.iter().enumerate() {
            let e = lo + i as i64;
            if e >= prec {
                break;
            }
            if c.is_zero() {
                continue;
            }
            let slot = &mut self.coeffs[(e - self.offset) as usize];
            if *coeff == one {
                *slot += c;
            } else if *coeff == neg_one {
                *slot -= c;
            } else {
                *slot += c * coeff;
            }
        }
    }

    /// Multiplicative inverse. Requires the lowest nonzero coefficient to be
    /// `+1` or `-1`. For input valuation `v` the result has `offset = -v` and
    /// `prec = self.prec() - 2v` (the information-theoretic bound).
    pub fn invert(&self) -> Result<TruncSeries> {
        if self.is_zero() {
            return Err(QError::NotInvertible("series is zero to its precision".into()));
        }
        // normalize() keeps offset at the true valuation for nonzero series.
        let v = self.offset;
        let lead = &self.coeffs[0];
        if !lead.is_one() && *lead != -BigInt::one() {
            return Err(QError::NotInvertible(format!(
                "lowest nonzero coefficient is {lead} at q^{v}, not a unit"
            )));
        }
        let out_prec = self.prec() - 2 * v;
        let out_offset = -v;
        if out_prec <= out_offset {
            return Err(QError::InsufficientPrecision {
                requested: out_offset + 1,
                available: out_prec,
            });
        }
        let len = (out_prec - out_offset) as usize;
        let mut inv = vec![BigInt::zero(); len];
        // Work on the unit part u = self * q^{-v}; invert by the standard
        // recurrence b_n = lead * ( [n == 0] - sum_{k=1..n} a_k b_{n-k} ),
        // using that 1/lead == lead for lead = +-1.
        inv[0] = lead.clone();
        for n in 1..len {
            let mut acc = BigInt::zero();
            for k in 1..=n.min(self.coeffs.len() - 1) {
                let a = &self.coeffs[k];
                if !a.is_zero() && !inv[n - k].is_zero() {
                    acc += a * &inv[n - k];
                }
            }
            if !acc.is_zero() {
                inv[n] = -(lead * acc);
            }
        }
        Ok(TruncSeries::from_parts(out_offset, inv))
    }

    /// Integer power by binary exponentiation; `pow(0)` is 1 at this series'
    /// precision.
    pub fn pow(&self, e: u32) -> Result<TruncSeries> {
        let mut result = TruncSeries::one(self.prec().max(1));
        let mut base = self.clone();
        let mut e = e;
        if e == 0 {
            return Ok(result);
        }
        loop {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base)?;
        }
        Ok(result)
    }

    /// Substitute `q -> q^k` (`k >= 1`); offset and precision scale by `k`,
    /// and in-between exponents are known-zero.
    pub fn substitute_power(&self, k: i64) -> TruncSeries {
        assert!(k >= 1, "substitution power must be >= 1, got {k}");
        if k == 1 {
            return self.clone();
        }
        let offset = self.offset * k;
        let prec = self.prec() * k;
        let len = (prec - offset) as usize;
        let mut coeffs = vec![BigInt::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[i * k as usize] = c.clone();
            }
        }
        TruncSeries::from_parts(offset, coeffs)
    }
}

/// First point of disagreement between two series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// Smallest exponent whose coefficients differ.
    pub exponent: i64,
    /// Coefficient on the left side.
    pub lhs: BigInt,
    /// Coefficient on the right side.
    pub rhs: BigInt,
}

/// Compare coefficients of `q^e` for every `e < n`.
///
/// Returns `None` when the series agree, or the first mismatch. Fails with
/// [`QError::InsufficientPrecision`] when `n` exceeds either precision.
pub fn equal_to_order(a: &TruncSeries, b: &TruncSeries, n: i64) -> Result<Option<Mismatch>> {
    let available = a.prec().min(b.prec());
    if n > available {
        return Err(QError::InsufficientPrecision { requested: n, available });
    }
    let lo = a.offset().min(b.offset());
    for e in lo..n {
        let ca = a.coeff(e);
        let cb = b.coeff(e);
        if ca != cb {
            return Ok(Some(Mismatch { exponent: e, lhs: ca, rhs: cb }));
        }
    }
    Ok(None)
}

/// The factor `1 - t * q^extra` as a series exact below `prec`.
fn one_minus_shifted(t: &Monomial, extra: i64, prec: i64) -> TruncSeries {
    let e = t.mag_exp + extra;
    let c = t.coefficient();
    if c.is_zero() || e >= prec {
        return TruncSeries::one(prec.max(1));
    }
    if e == 0 {
        return TruncSeries::constant(BigInt::one() - c, prec);
    }
    let offset = e.min(0);
    let len = (prec - offset) as usize;
    let mut coeffs = vec![BigInt::zero(); len];
    coeffs[(0 - offset) as usize] = BigInt::one();
    coeffs[(e - offset) as usize] = -c;
    TruncSeries::from_parts(offset, coeffs)
}

/// Finite q-Pochhammer symbol `(t)_n = prod_{k=1..n} (1 - t q^{k-1})`,
/// truncated to `prec`. For `n = 0` this is the empty product 1.
///
/// `t.mag_exp` may be negative; the result is then a Laurent object with a
/// negative offset, computed exactly (internal working precision is inflated
/// to absorb the pessimistic truncation bookkeeping).
pub fn poch_finite(t: &Monomial, n: u32, prec: i64) -> TruncSeries {
    // Total negative valuation over all factors; each multiplication by a
    // factor with offset o (< 0) costs |o| of precision.
    let mut slack = 0i64;
    for k in 1..=i64::from(n) {
        let e = t.mag_exp + (k - 1);
        if e < 0 {
            slack += -e;
        }
    }
    let work = prec + slack;
    let mut acc = TruncSeries::one(work.max(1));
    for k in 1..=i64::from(n) {
        let f = one_minus_shifted(t, k - 1, work);
        acc = acc.mul(&f).expect("finite Pochhammer window stays nonempty");
    }
    acc.truncated(prec)
}

/// Infinite q-Pochhammer symbol `(t)_inf = prod_{k>=1} (1 - t q^{k-1})`,
/// truncated to `prec`. Requires `t.mag_exp >= 1` (q-adic convergence).
pub fn poch_inf(t: &Monomial, prec: i64) -> Result<TruncSeries> {
    poch_inf_base(t, 1, prec)
}

/// Infinite product `prod_{k>=0} (1 - t q^{k*base})` truncated to `prec`;
/// the base-`q^base` Pochhammer symbol `(t; q^base)_inf`. Requires
/// `t.mag_exp >= 1` and `base >= 1`.
pub fn poch_inf_base(t: &Monomial, base: i64, prec: i64) -> Result<TruncSeries> {
    if t.mag_exp < 1 {
        return Err(QError::Divergent(format!(
            "factor monomial has exponent {} < 1",
            t.mag_exp
        )));
    }
    if base < 1 {
        return Err(QError::Divergent(format!("modulus step {base} < 1")));
    }
    let mut acc = TruncSeries::one(prec.max(1));
    let mut k = 0i64;
    while t.mag_exp + k * base < prec {
        let f = one_minus_shifted(t, k * base, prec);
        acc = acc.mul(&f).expect("nonnegative offsets keep the window intact");
        k += 1;
    }
    Ok(acc)
}

/// Modular infinite Pochhammer `(q^a; q^m)_inf` truncated to `prec`.
/// Requires `a >= 1` and `m >= 1`.
pub fn poch_mod(a: i64, m: i64, prec: i64) -> Result<TruncSeries> {
    if a < 1 {
        return Err(QError::Divergent(format!("base exponent {a} < 1")));
    }
    poch_inf_base(&Monomial::q_pow(a), m, prec)
}

/// Table of the finite Euler factors `(q)_0, (q)_1, ..., (q)_{n_max}`, each
/// truncated to `prec`.
pub fn poch_finite_table(n_max: usize, prec: i64) -> Vec<TruncSeries> {
    let mut table = Vec::with_capacity(n_max + 1);
    table.push(TruncSeries::one(prec.max(1)));
    for n in 1..=n_max {
        let f = one_minus_shifted(&Monomial::q(), n as i64 - 1, prec);
        let next = table[n - 1].mul(&f).expect("offset-zero product");
        table.push(next);
    }
    table
}

/// Table of the inverse Euler factors `1/(q)_0, ..., 1/(q)_{n_max}`, each
/// truncated to `prec`. Built incrementally via
/// `1/(q)_n = 1/(q)_{n-1} * (1 + q^n + q^{2n} + ...)`.
pub fn inv_poch_finite_table(n_max: usize, prec: i64) -> Vec<TruncSeries> {
    let prec = prec.max(1);
    let mut table = Vec::with_capacity(n_max + 1);
    table.push(TruncSeries::one(prec));
    for n in 1..=n_max as i64 {
        let len = prec as usize;
        let mut geom = vec![BigInt::zero(); len];
        let mut e = 0i64;
        while e < prec {
            geom[e as usize] = BigInt::one();
            e += n;
        }
        let geom = TruncSeries::from_coeffs(0, geom);
        let next = table[(n - 1) as usize].mul(&geom).expect("offset-zero product");
        table.push(next);
    }
    table
}

impl fmt::Display for TruncSeries {
    /// Human-readable rendering `c0 + c1*q + c2*q^2 + ... + O(q^N)`,
    /// skipping zero terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.offset + i as i64;
            let mag = c.abs();
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let unit_mag = mag.is_one();
            match (e, unit_mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}*q^{e}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.prec())
    }
}
