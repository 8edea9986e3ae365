//! Classical single-sum identities: Rogers-Ramanujan, Andrews-Gordon, the
//! two Euler expansions, an auxiliary bilateral-index sum, the q-binomial
//! theorem, Jacobi's triple product, and the false/partial theta building
//! blocks `h_b`.
//!
//! Every checker expands both sides independently to the requested order and
//! returns an [`IdentityReport`]. Left sides are summed term by term with
//! explicit stopping bounds derived from the term's minimal exponent; right
//! sides are assembled from Pochhammer products. Nothing is shared between
//! the two sides beyond the series kernel, so agreement is meaningful
//! evidence.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Map};

use crate::error::{QError, Result};
use crate::report::{compare_series, IdentityReport};
use crate::series::{
    inv_poch_finite_table, poch_finite, poch_finite_table, poch_inf, poch_inf_base, poch_mod,
    Monomial, TruncSeries,
};

fn validate_order(order: i64) -> Result<()> {
    if order < 1 {
        return Err(QError::InvalidOrder(order));
    }
    Ok(())
}

/// The bilateral theta-like series
/// `h_b = sum_{n in Z} eps_b(n) q^{b n(n+1)/2 - n}` truncated to `prec`,
/// where `eps_b(n) = (-1)^n` for odd `b`, and `+1` for `n >= 0`, `-1` for
/// `n < 0` when `b` is even.
///
/// First members: `h_1 = 0`, `h_2 = 1`, `h_3 = (q)_inf`; for larger `b`
/// these are the false (even `b`) and partial (odd `b`) theta functions that
/// appear as knot-series evaluations.
pub fn h_series(b: i64, prec: i64) -> Result<TruncSeries> {
    if b < 1 {
        return Err(QError::BadParameter(format!("h-series index must be >= 1, got {b}")));
    }
    validate_order(prec)?;
    let exponent = |n: i64| -> i64 { b * n * (n + 1) / 2 - n };
    let sign = |n: i64| -> i64 {
        if b % 2 == 1 {
            if n.rem_euclid(2) == 0 {
                1
            } else {
                -1
            }
        } else if n >= 0 {
            1
        } else {
            -1
        }
    };
    let mut coeffs = vec![BigInt::zero(); prec as usize];
    let mut n = 0i64;
    while exponent(n) < prec {
        coeffs[exponent(n) as usize] += sign(n);
        n += 1;
    }
    let mut n = -1i64;
    while exponent(n) < prec {
        coeffs[exponent(n) as usize] += sign(n);
        n -= 1;
    }
    Ok(TruncSeries::from_coeffs(0, coeffs))
}

/// Rogers-Ramanujan identity for `s` in `{0, 1}`:
/// `sum_{n>=0} q^{n^2 + s n} / (q)_n = 1 / ((q^{1+s}; q^5)_inf (q^{4-s}; q^5)_inf)`.
pub fn rr_check(s: u32, order: i64) -> Result<IdentityReport> {
    let start = Instant::now();
    validate_order(order)?;
    if s > 1 {
        return Err(QError::BadParameter(format!("shift must be 0 or 1, got {s}")));
    }
    let s = i64::from(s);

    let mut n_max = 0i64;
    while (n_max + 1) * (n_max + 1 + s) < order {
        n_max += 1;
    }
    let inv = inv_poch_finite_table(n_max as usize, order);
    let mut lhs = TruncSeries::zero(order);
    let one = BigInt::one();
    for n in 0..=n_max {
        lhs.add_assign_shifted(&inv[n as usize], &one, n * (n + s));
    }

    let rhs = poch_mod(1 + s, 5, order)?
        .mul(&poch_mod(4 - s, 5, order)?)?
        .invert()?;

    let mut params = Map::new();
    params.insert("s".into(), json!(s));
    compare_series("rr", params, order, &lhs, &rhs, start)
}

/// Andrews-Gordon identity for `k >= 2`, `1 <= i <= k`:
///
/// `sum q^{N_1^2+...+N_{k-1}^2 + N_i+...+N_{k-1}} / ((q)_{n_1}...(q)_{n_{k-1}})
///  = (q^i; q^{2k+1})_inf (q^{2k+1-i}; q^{2k+1})_inf (q^{2k+1}; q^{2k+1})_inf / (q)_inf`,
///
/// where the left side runs over nonincreasing `N_1 >= ... >= N_{k-1} >= 0`
/// and `n_j = N_j - N_{j+1}` (with `N_k = 0`). The case `k = 2` recovers the
/// Rogers-Ramanujan pair: `(k, i) = (2, 2)` is [`rr_check`] with `s = 0` and
/// `(2, 1)` is `s = 1`.
pub fn ag_check(k: u32, i: u32, order: i64) -> Result<IdentityReport> {
    let start = Instant::now();
    validate_order(order)?;
    if k < 2 {
        return Err(QError::BadParameter(format!("modulus index must be >= 2, got {k}")));
    }
    if i < 1 || i > k {
        return Err(QError::BadParameter(format!(
            "residue index must satisfy 1 <= i <= {k}, got {i}"
        )));
    }
    let depth = (k - 1) as usize;
    let inv = inv_poch_finite_table(isqrt_below(order), order);
    let mut lhs = TruncSeries::zero(order);
    let one = BigInt::one();

    // Choose N_1, ..., N_{k-1} left to right. The denominator factor
    // (q)_{N_{j-1} - N_j} becomes known when N_j is chosen; the final factor
    // (q)_{N_{k-1} - N_k} = (q)_{N_{k-1}} is attached at the leaf. Running
    // exponent includes the square and (for j >= i) linear part of each
    // chosen entry, so the `break` prunes on a monotone partial exponent.
    #[allow(clippy::too_many_arguments)]
    fn descend(
        level: usize,
        depth: usize,
        i: usize,
        prev: i64,
        exp: i64,
        partial: &TruncSeries,
        inv: &[TruncSeries],
        order: i64,
        lhs: &mut TruncSeries,
        one: &BigInt,
    ) {
        if level == depth {
            let term = partial.mul(&inv[prev as usize]).expect("offset-zero product");
            lhs.add_assign_shifted(&term, one, exp);
            return;
        }
        for nj in 0..=prev {
            let linear = if level + 1 >= i { nj } else { 0 };
            let e = exp + nj * nj + linear;
            if e >= order {
                break;
            }
            if level == 0 {
                descend(1, depth, i, nj, e, partial, inv, order, lhs, one);
            } else {
                let next = partial
                    .mul(&inv[(prev - nj) as usize])
                    .expect("offset-zero product");
                descend(level + 1, depth, i, nj, e, &next, inv, order, lhs, one);
            }
        }
    }

    let cap = isqrt_below(order) as i64;
    let unit = TruncSeries::one(order);
    descend(0, depth, i as usize, cap, 0, &unit, &inv, order, &mut lhs, &one);

    let m = i64::from(2 * k + 1);
    let rhs = poch_mod(i64::from(i), m, order)?
        .mul(&poch_mod(m - i64::from(i), m, order)?)?
        .mul(&poch_mod(m, m, order)?)?
        .mul(&poch_inf(&Monomial::q(), order)?.invert()?)?;

    let mut params = Map::new();
    params.insert("k".into(), json!(k));
    params.insert("i".into(), json!(i));
    compare_series("ag", params, order, &lhs, &rhs, start)
}

/// Largest `r` with `r^2 < bound`, as a table size.
fn isqrt_below(bound: i64) -> usize {
    let mut r = 0i64;
    while (r + 1) * (r + 1) < bound {
        r += 1;
    }
    r as usize
}

/// Euler's expansion `sum_{n>=0} t^n q^{n(n-1)/2} / (q)_n = (-t)_inf` at
/// `t = q^m` (`m >= 1`).
pub fn euler1_check(m: i64, order: i64) -> Result<IdentityReport> {
    let start = Instant::now();
    validate_order(order)?;
    if m < 1 {
        return Err(QError::Divergent(format!("substitution exponent {m} < 1")));
    }
    let mut n_max = 0i64;
    while m * (n_max + 1) + n_max * (n_max + 1) / 2 < order {
        n_max += 1;
    }
    let inv = inv_poch_finite_table(n_max as usize, order);
    let mut lhs = TruncSeries::zero(order);
    let one = BigInt::one();
    for n in 0..=n_max {
        lhs.add_assign_shifted(&inv[n as usize], &one, m * n + n * (n - 1) / 2);
    }
    let rhs = poch_inf(&Monomial::new(-1, m, 1), order)?;
    let mut params = Map::new();
    params.insert("m".into(), json!(m));
    compare_series("euler1", params, order, &lhs, &rhs, start)
}

/// Euler's expansion `sum_{n>=0} t^n / (q)_n = 1 / (t)_inf` at `t = q^m`
/// (`m >= 1`).
pub fn euler2_check(m: i64, order: i64) -> Result<IdentityReport> {
    let start = Instant::now();
    validate_order(order)?;
    if m < 1 {
        return Err(QError::Divergent(format!("substitution exponent {m} < 1")));
    }
    let n_max = if m == 0 { 0 } else { (order - 1) / m };
    let inv = inv_poch_finite_table(n_max as usize, order);
    let mut lhs = TruncSeries::zero(order);
    let one = BigInt::one();
    for n in 0..=n_max {
        if m * n >= order {
            break;
        }
        lhs.add_assign_shifted(&inv[n as usize], &one, m * n);
    }
    let rhs = poch_inf(&Monomial::q_pow(m), order)?.invert()?;
    let mut params = Map::new();
    params.insert("m".into(), json!(m));
    compare_series("euler2", params, order, &lhs, &rhs, start)
}

/// Shifted-index Durfee-style expansion, valid for every integer `a`:
/// `sum_n q^{n(n+a)} / ((q)_n (q)_{n+a}) = 1 / (q)_inf`,
/// summing over `n >= max(0, -a)` so both subscripts are nonnegative.
pub fn andy_check(a: i64, order: i64) -> Result<IdentityReport> {
    let start = Instant::now();
    validate_order(order)?;
    let n_lo = 0i64.max(-a);
    let mut n_max = n_lo;
    while (n_max + 1) * (n_max + 1 + a) < order {
        n_max += 1;
    }
    let table_top = (n_max + n_max.max(n_max + a)).max(0) as usize;
    let inv = inv_poch_finite_table(table_top, order);
    let mut lhs = TruncSeries::zero(order);
    let one = BigInt::one();
    for n in n_lo..=n_max {
        let e = n * (n + a);
        if e >= order {
            continue;
        }
        let term = inv[n as usize]
            .mul(&inv[(n + a) as usize])
            .expect("offset-zero product");
        lhs.add_assign_shifted(&term, &one, e);
    }
    let rhs = poch_inf(&Monomial::q(), order)?.invert()?;
    let mut params = Map::new();
    params.insert("a".into(), json!(a));
    compare_series("andy", params, order, &lhs, &rhs, start)
}

/// Finite q-binomial theorem, certified as an exact polynomial identity:
///
/// `(t)_K = sum_{j=0..K} [K choose j]_q (-t)^j q^{j(j-1)/2}`.
///
/// Both sides are polynomials (Laurent polynomials for negative `t`
/// exponents); they are expanded past a bound strictly exceeding every
/// occurring degree, so series agreement certifies polynomial equality.
pub fn qbt_check(t: &Monomial, cap_k: u32) -> Result<IdentityReport> {
    let start = Instant::now();
    let k = i64::from(cap_k);
    let span = k * (k + t.mag_exp.abs()) + k * (k - 1) / 2 + 4;
    let prec = span + 1;

    let lhs = poch_finite(t, cap_k, prec);

    // For Laurent parameters the term shifts can be negative; the binomial
    // factors carry enough extra precision that every shifted summand still
    // certifies the full accumulator window.
    let mut min_shift: i64 = 0;
    for j in 0..=k {
        min_shift = min_shift.min(t.mag_exp * j + j * (j - 1) / 2);
    }
    let work = prec + (-min_shift).max(0);

    let table = poch_finite_table(cap_k as usize, work);
    let mut rhs = TruncSeries::zero(prec);
    for j in 0..=cap_k {
        let binom = table[cap_k as usize].mul(
            &table[j as usize]
                .mul(&table[(cap_k - j) as usize])?
                .invert()?,
        )?;
        let (tc, te) = t.term_pow(j);
        let coef = if j % 2 == 1 { -tc } else { tc };
        let shift = te + i64::from(j) * (i64::from(j) - 1) / 2;
        rhs.add_assign_shifted(&binom, &coef, shift);
    }

    let order = lhs.prec().min(rhs.prec());
    let mut params = Map::new();
    params.insert("t".into(), json!(monomial_label(t)));
    params.insert("k".into(), json!(cap_k));
    compare_series("qbt", params, order, &lhs, &rhs, start)
}

/// Render a monomial the way the command line accepts it.
pub fn monomial_label(t: &Monomial) -> String {
    let sign = if t.sign < 0 { "-" } else { "" };
    let scale = if t.scale == 1 { String::new() } else { format!("{}*", t.scale) };
    match t.mag_exp {
        0 => format!("{sign}{}", t.scale),
        1 => format!("{sign}{scale}q"),
        e => format!("{sign}{scale}q^{e}"),
    }
}

/// Jacobi triple product for integer parameters `(alpha, beta, sigma)` with
/// `alpha >= 1`, `alpha` and `beta` of equal parity, `(alpha - |beta|)/2 >= 1`,
/// and `sigma` in `{+1, -1}`:
///
/// `sum_{n in Z} sigma^n q^{(alpha n^2 + beta n)/2}
///   = (-sigma q^{(alpha+beta)/2}; q^alpha)_inf
///     (-sigma q^{(alpha-beta)/2}; q^alpha)_inf
///     (q^alpha; q^alpha)_inf`.
pub fn jtp_check(alpha: i64, beta: i64, sigma: i8, order: i64) -> Result<IdentityReport> {
    let start = Instant::now();
    validate_order(order)?;
    if sigma != 1 && sigma != -1 {
        return Err(QError::BadParameter(format!("sign must be +1 or -1, got {sigma}")));
    }
    if (alpha - beta).rem_euclid(2) != 0 {
        return Err(QError::NonIntegralExponent(format!(
            "alpha = {alpha} and beta = {beta} have different parity"
        )));
    }
    if alpha < 1 || (alpha - beta.abs()) / 2 < 1 {
        return Err(QError::Divergent(format!(
            "need (alpha - |beta|)/2 >= 1, got alpha = {alpha}, beta = {beta}"
        )));
    }

    let exponent = |n: i64| (alpha * n * n + beta * n) / 2;
    let term_sign = |n: i64| -> BigInt {
        if sigma == 1 || n.rem_euclid(2) == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    };
    let mut coeffs = vec![BigInt::zero(); order as usize];
    let mut n = 0i64;
    while exponent(n) < order {
        coeffs[exponent(n) as usize] += term_sign(n);
        n += 1;
    }
    let mut n = -1i64;
    while exponent(n) < order {
        coeffs[exponent(n) as usize] += term_sign(n);
        n -= 1;
    }
    let lhs = TruncSeries::from_coeffs(0, coeffs);

    let rhs = poch_inf_base(&Monomial::new(-sigma, (alpha + beta) / 2, 1), alpha, order)?
        .mul(&poch_inf_base(&Monomial::new(-sigma, (alpha - beta) / 2, 1), alpha, order)?)?
        .mul(&poch_mod(alpha, alpha, order)?)?;

    let mut params = Map::new();
    params.insert("alpha".into(), json!(alpha));
    params.insert("beta".into(), json!(beta));
    params.insert("sigma".into(), json!(sigma));
    compare_series("jtp", params, order, &lhs, &rhs, start)
}

/// Product form of `h_b` for odd `b >= 3`, via the triple product at
/// `(alpha, beta, sigma) = (b, b-2, -1)`:
///
/// `h_b = (q; q^b)_inf (q^{b-1}; q^b)_inf (q^b; q^b)_inf`.
pub fn h_odd_product_check(b: i64, order: i64) -> Result<IdentityReport> {
    let start = Instant::now();
    validate_order(order)?;
    if b < 3 || b % 2 == 0 {
        return Err(QError::BadParameter(format!(
            "product form requires odd index >= 3, got {b}"
        )));
    }
    let lhs = h_series(b, order)?;
    let rhs = poch_mod(1, b, order)?
        .mul(&poch_mod(b - 1, b, order)?)?
        .mul(&poch_mod(b, b, order)?)?;
    let mut params = Map::new();
    params.insert("b".into(), json!(b));
    compare_series("h-odd", params, order, &lhs, &rhs, start)
}

/// Unilateral form of the even-index false theta `h_{2p}` for `p >= 1`:
///
/// `h_{2p} = sum_{n>=0} q^{p n^2 + (p-1) n} (1 - q^{2n+1})`.
pub fn h_even_unilateral_check(p: i64, order: i64) -> Result<IdentityReport> {
    let start = Instant::now();
    validate_order(order)?;
    if p < 1 {
        return Err(QError::BadParameter(format!("even index parameter must be >= 1, got {p}")));
    }
    let mut coeffs = vec![BigInt::zero(); order as usize];
    let mut n = 0i64;
    loop {
        let e = p * n * n + (p - 1) * n;
        if e >= order {
            break;
        }
        coeffs[e as usize] += 1;
        if e + 2 * n + 1 < order {
            coeffs[(e + 2 * n + 1) as usize] -= 1;
        }
        n += 1;
    }
    let lhs = TruncSeries::from_coeffs(0, coeffs);
    let rhs = h_series(2 * p, order)?;
    let mut params = Map::new();
    params.insert("p".into(), json!(p));
    compare_series("h-even", params, order, &lhs, &rhs, start)
}

/// Negative-subscript Pochhammer reduction, certified as an exact Laurent
/// polynomial identity for all `a, b >= 0`:
///
/// `(q^{-a-b})_a (q)_b = (-1)^a q^{-a(a+1)/2 - ab} (q)_{a+b}`.
///
/// Both sides are expanded with enough working precision to cover their full
/// exponent spread, so agreement certifies exact equality.
pub fn negab_check(a: u32, b: u32) -> Result<IdentityReport> {
    let start = Instant::now();
    let (ai, bi) = (i64::from(a), i64::from(b));
    // exponent spread: lowest about -a(a+b), highest about (a+b)(a+b+1)/2
    let work = ai * (ai + bi) + (ai + bi) * (ai + bi + 1) / 2 + 8;

    let lhs = poch_finite(&Monomial::q_pow(-ai - bi), a, work)
        .mul(&poch_finite(&Monomial::q(), b, work))?;

    let coef = if a % 2 == 1 { -BigInt::one() } else { BigInt::one() };
    let shift = -ai * (ai + 1) / 2 - ai * bi;
    let rhs = poch_finite(&Monomial::q(), a + b, work).mul_term(&coef, shift);

    let order = lhs.prec().min(rhs.prec());
    let mut params = Map::new();
    params.insert("a".into(), json!(a));
    params.insert("b".into(), json!(b));
    compare_series("negab", params, order, &lhs, &rhs, start)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(s: &TruncSeries, n: i64) -> Vec<i64> {
        (0..n).map(|e| i64::try_from(&s.coeff(e)).unwrap()).collect()
    }

    #[test]
    fn h_small_indices() {
        assert!(h_series(1, 20).unwrap().is_zero());
        let h2 = h_series(2, 20).unwrap();
        assert!(equal_small(&h2, &[1]));
        // h_3 = (q)_inf: 1 - q - q^2 + q^5 + q^7 - q^12
        let h3 = h_series(3, 13).unwrap();
        assert_eq!(coeffs(&h3, 13), vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]);
        let h4 = h_series(4, 11).unwrap();
        assert_eq!(coeffs(&h4, 11), vec![1, -1, 0, 1, 0, 0, -1, 0, 0, 0, 1]);
        let h5 = h_series(5, 14).unwrap();
        assert_eq!(coeffs(&h5, 14), vec![1, -1, 0, 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 1]);
    }

    fn equal_small(s: &TruncSeries, head: &[i64]) -> bool {
        (0..s.prec()).all(|e| {
            let want = head.get(e as usize).copied().unwrap_or(0);
            s.coeff(e) == BigInt::from(want)
        })
    }

    #[test]
    fn rr_verifies_to_modest_order() {
        for s in [0, 1] {
            let r = rr_check(s, 40).unwrap();
            assert!(r.verified, "s = {s}: {}", r.to_text());
        }
        assert!(rr_check(2, 10).is_err());
        assert!(rr_check(0, 0).is_err());
    }

    #[test]
    fn ag_specializes_to_rr() {
        let a = ag_check(2, 2, 40).unwrap();
        let b = rr_check(0, 40).unwrap();
        assert!(a.verified && b.verified);
        let c = ag_check(3, 2, 40).unwrap();
        assert!(c.verified, "{}", c.to_text());
    }

    #[test]
    fn euler_expansions() {
        assert!(euler1_check(1, 60).unwrap().verified);
        assert!(euler2_check(2, 60).unwrap().verified);
        assert!(matches!(euler1_check(0, 10), Err(QError::Divergent(_))));
    }

    #[test]
    fn shifted_durfee_all_small_offsets() {
        for a in -3..=3 {
            let r = andy_check(a, 50).unwrap();
            assert!(r.verified, "a = {a}: {}", r.to_text());
        }
    }

    #[test]
    fn qbt_small_instances() {
        for e in 1..=3 {
            let r = qbt_check(&Monomial::q_pow(e), 5).unwrap();
            assert!(r.verified, "t = q^{e}: {}", r.to_text());
        }
        // negative exponent exercises the Laurent window
        let r = qbt_check(&Monomial::q_pow(-2), 4).unwrap();
        assert!(r.verified, "{}", r.to_text());
    }

    #[test]
    fn jtp_instances_and_parity_guard() {
        let r = jtp_check(3, 1, -1, 60).unwrap();
        assert!(r.verified, "{}", r.to_text());
        assert!(matches!(jtp_check(3, 2, 1, 10), Err(QError::NonIntegralExponent(_))));
        assert!(matches!(jtp_check(3, 3, 1, 10), Err(QError::Divergent(_))));
    }

    #[test]
    fn h_product_and_unilateral_forms() {
        assert!(h_odd_product_check(5, 60).unwrap().verified);
        assert!(h_even_unilateral_check(2, 60).unwrap().verified);
        assert!(h_odd_product_check(4, 10).is_err());
    }

    #[test]
    fn negative_subscript_reduction() {
        let r = negab_check(1, 0).unwrap();
        assert!(r.verified, "{}", r.to_text());
        // spot-check the interesting corner: lhs lowest term is -q^{-1}
        let lhs = poch_finite(&Monomial::q_pow(-1), 1, 6);
        assert_eq!(lhs.coeff(-1), BigInt::from(-1));
        for (a, b) in [(0, 0), (2, 1), (3, 2)] {
            let r = negab_check(a, b).unwrap();
            assert!(r.verified, "a = {a}, b = {b}: {}", r.to_text());
        }
    }

    use crate::series::equal_to_order;

    #[test]
    fn h3_equals_euler_product() {
        let h3 = h_series(3, 80).unwrap();
        let prod = poch_inf(&Monomial::q(), 80).unwrap();
        assert!(equal_to_order(&h3, &prod, 80).unwrap().is_none());
    }
}
