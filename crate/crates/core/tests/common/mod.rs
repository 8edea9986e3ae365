//! Independent oracles shared by the integration suites.
//!
//! Everything in this module recomputes expected values from first
//! principles — direct combinatorial counting and dictionary-backed
//! polynomial arithmetic over `i64 -> BigInt` maps — without touching the
//! truncated-series kernel under test.  Agreement between these oracles and
//! the engine is what the suites certify.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic generator for every randomized sweep in the suites.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Partition numbers `p(0), ..., p(n)` by the classic dynamic program over
/// largest allowed part.
pub fn partition_counts(n: usize) -> Vec<BigInt> {
    let mut table = vec![BigInt::zero(); n + 1];
    table[0] = BigInt::one();
    for part in 1..=n {
        for total in part..=n {
            let prev = table[total - part].clone();
            table[total] += prev;
        }
    }
    table
}

/// Partitions of `0..order` into parts whose residue mod `modulus` lies in
/// `residues` (counted by the same dynamic program, restricted part set).
pub fn mod_partition_counts(order: usize, modulus: usize, residues: &[usize]) -> Vec<BigInt> {
    let mut table = vec![BigInt::zero(); order];
    if order == 0 {
        return table;
    }
    table[0] = BigInt::one();
    for part in 1..order {
        if !residues.contains(&(part % modulus)) {
            continue;
        }
        for total in part..order {
            let prev = table[total - part].clone();
            table[total] += prev;
        }
    }
    table
}

/// Number of partitions of `n` into parts `>= min_part` with pairwise
/// difference `>= 2`, by explicit recursion over the smallest part.
pub fn gap_partition_count(n: i64, min_part: i64) -> u64 {
    if n == 0 {
        return 1;
    }
    if n < min_part {
        return 0;
    }
    let mut total = 0;
    let mut k = min_part;
    while k <= n {
        total += gap_partition_count(n - k, k + 2);
        k += 1;
    }
    total
}

/// Coefficients of the bilateral sum
/// `sum_{j in Z} sigma^j q^{(alpha j^2 + beta j)/2}` for exponents
/// `0 <= e < order`, by direct enumeration of both tails.
pub fn theta_coeffs(alpha: i64, beta: i64, sigma: i64, order: i64) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order as usize];
    let mut add = |j: i64| {
        let doubled = alpha * j * j + beta * j;
        assert_eq!(doubled.rem_euclid(2), 0, "non-integral exponent at j = {j}");
        let e = doubled / 2;
        if 0 <= e && e < order {
            if sigma < 0 && j.rem_euclid(2) == 1 {
                out[e as usize] -= 1;
            } else {
                out[e as usize] += 1;
            }
        }
    };
    // |j| beyond this bound puts (alpha j^2 + beta j)/2 past any order used
    // by the suites (alpha >= 1, order <= 200, |beta| < alpha).
    for j in -400..=400 {
        add(j);
    }
    out
}

// ---------------------------------------------------------------------------
// Dictionary-backed exact polynomial arithmetic.  Deliberately naive: plain
// maps, quadratic products, no pruning, no shared code with the engine.
// ---------------------------------------------------------------------------

/// Sparse exact polynomial: exponent -> coefficient.
pub type Poly = BTreeMap<i64, BigInt>;

/// Product of two polynomials, keeping exponents in `[lo, hi)`.
pub fn poly_mul(a: &Poly, b: &Poly, lo: i64, hi: i64) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        if ca.is_zero() {
            continue;
        }
        for (eb, cb) in b {
            let e = ea + eb;
            if lo <= e && e < hi {
                let entry = out.entry(e).or_insert_with(BigInt::zero);
                *entry += ca * cb;
            }
        }
    }
    out
}

/// `(q)_m = (1-q)(1-q^2)...(1-q^m)` as an exact polynomial dictionary.
pub fn poly_poch_finite(m: i64, hi: i64) -> Poly {
    let mut s = Poly::from([(0, BigInt::one())]);
    for j in 1..=m {
        let f = Poly::from([(0, BigInt::one()), (j, -BigInt::one())]);
        s = poly_mul(&s, &f, 0, hi + 200);
    }
    s
}

/// Inverse of a polynomial with constant term `+-1`, to exponents `< hi`.
pub fn poly_invert(a: &Poly, hi: i64) -> Poly {
    let lead = a.get(&0).expect("unit constant term").clone();
    let mut inv = Poly::from([(0, lead.clone())]);
    for n in 1..hi {
        let mut acc = BigInt::zero();
        for k in 1..=n {
            if let (Some(ak), Some(inm)) = (a.get(&k), inv.get(&(n - k))) {
                acc += ak * inm;
            }
        }
        if !acc.is_zero() {
            inv.insert(n, -&lead * acc);
        }
    }
    inv
}

/// `(q)_inf` truncated below `hi`, by multiplying out the factors.
pub fn poly_poch_inf(hi: i64) -> Poly {
    let mut s = Poly::from([(0, BigInt::one())]);
    for j in 1..hi {
        let f = Poly::from([(0, BigInt::one()), (j, -BigInt::one())]);
        s = poly_mul(&s, &f, 0, hi);
    }
    s
}

/// Unpruned expansion of both sides of the depth-`n` single-sum-to-chain
/// exchange identity, compared coefficientwise on `[lo, order)`.
///
/// Left side: `sum_{a >= 0} (-1)^{n a} q^{n a(a+1)/2 - a + a sum(c)}
/// / ((q)_a prod_k (q)_{a+c_k})`, a term vanishing whenever some
/// `a + c_k < 0`.  Right side: `1/(q)_inf` times the alternating chain sum
/// over `0 <= P_1 <= ... <= P_{n-2}` with per-level exponent
/// `P_d(P_d+1)/2 + c[d] P_d` and denominators `(q)_{P_d - P_{d-1}}
/// (q)_{c[d-1] + P_d}`.  Every lattice point with `a < amax` (resp.
/// `P_{n-2} < pmax`) is visited — no pruning — so `amax`/`pmax` only need to
/// exceed the point where exponents pass `order`.
///
/// Returns the mismatching exponents with both coefficients; empty means the
/// two sides agree on the whole window.
pub fn lemma_brute_mismatches(
    n: usize,
    c: &[i64],
    order: i64,
    lo: i64,
    amax: i64,
    pmax: i64,
) -> Vec<(i64, BigInt, BigInt)> {
    assert_eq!(c.len(), n - 1);
    let hi = order;
    let work = order + 60;

    // Every denominator subscript either is an `a < amax`, a `P < pmax`, or
    // one of those plus an entry of `c`; precompute all inverses up front.
    let c_abs = c.iter().map(|x| x.abs()).max().unwrap_or(0);
    let top = (amax.max(pmax) + c_abs) as usize;
    let inv: Vec<Poly> = (0..=top as i64)
        .map(|m| poly_invert(&poly_poch_finite(m, work), work))
        .collect();

    let csum: i64 = c.iter().sum();
    let mut lhs = Poly::new();
    for a in 0..amax {
        if c.iter().any(|&ck| a + ck < 0) {
            continue;
        }
        let e0 = (n as i64) * a * (a + 1) / 2 - a + a * csum;
        let mut term = inv[a as usize].clone();
        for &ck in c {
            term = poly_mul(&term, &inv[(a + ck) as usize], 0, work);
        }
        let negate = ((n as i64) * a) % 2 != 0;
        for (e, co) in &term {
            let ee = e + e0;
            if lo <= ee && ee < hi {
                let entry = lhs.entry(ee).or_insert_with(BigInt::zero);
                if negate {
                    *entry -= co;
                } else {
                    *entry += co;
                }
            }
        }
    }

    // All nondecreasing chains 0 <= P_1 <= ... <= P_m < pmax.
    let m = n - 2;
    let mut chains: Vec<Vec<i64>> = Vec::new();
    fn grow(chain: &mut Vec<i64>, depth: usize, m: usize, prev: i64, pmax: i64, out: &mut Vec<Vec<i64>>) {
        if depth == m {
            out.push(chain.clone());
            return;
        }
        for p in prev..pmax {
            chain.push(p);
            grow(chain, depth + 1, m, p, pmax, out);
            chain.pop();
        }
    }
    grow(&mut Vec::new(), 0, m, 0, pmax, &mut chains);

    let mut inner = Poly::new();
    for chain in &chains {
        let mut exp = 0i64;
        let mut ok = true;
        let mut term = Poly::from([(0, BigInt::one())]);
        let mut prev = 0i64;
        for (d, &p) in chain.iter().enumerate() {
            // c is 0-indexed: position d of the chain (1-based d+1) reads
            // c[d+1] in the exponent and c[d] in the denominator.
            exp += p * (p + 1) / 2 + c[d + 1] * p;
            if c[d] + p < 0 {
                ok = false;
                break;
            }
            term = poly_mul(&term, &inv[(p - prev) as usize], 0, work);
            term = poly_mul(&term, &inv[(c[d] + p) as usize], 0, work);
            prev = p;
        }
        if !ok {
            continue;
        }
        let negate = chain.iter().sum::<i64>() % 2 != 0;
        for (e, co) in &term {
            let ee = e + exp;
            if lo <= ee && ee < hi + 40 {
                let entry = inner.entry(ee).or_insert_with(BigInt::zero);
                if negate {
                    *entry -= co;
                } else {
                    *entry += co;
                }
            }
        }
    }

    let infq_inv = poly_invert(&poly_poch_inf(work), work);
    let mut rhs = Poly::new();
    for (e1, c1) in &inner {
        for (e2, c2) in &infq_inv {
            let e = e1 + e2;
            if lo <= e && e < hi {
                let entry = rhs.entry(e).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
    }

    let zero = BigInt::zero();
    let mut mismatches = Vec::new();
    for e in lo..hi {
        let l = lhs.get(&e).unwrap_or(&zero);
        let r = rhs.get(&e).unwrap_or(&zero);
        if l != r {
            mismatches.push((e, l.clone(), r.clone()));
        }
    }
    mismatches
}
