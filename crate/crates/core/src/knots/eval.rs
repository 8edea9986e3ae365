//! Exact evaluation of lattice multisums.
//!
//! Two independent evaluators are provided on purpose:
//!
//! * [`eval_multisum`] — the production path: variables are ordered by a
//!   maximum-cardinality-search heuristic over the coupling graph, the sum
//!   is computed depth-first with per-level exponent pruning, and suffix
//!   series are memoized on the exact interface they depend on (accumulated
//!   cross-term weights plus partially-formed denominator subscripts).
//!   Identical suffixes collapse, which turns the chain-shaped coupling
//!   graphs of the shipped knots into near-linear work.
//! * [`eval_multisum_box`] — the cross-check: a plain odometer over the full
//!   box of candidate exponents with no pruning and no sharing beyond
//!   skipping terms that provably land past the truncation order. Slower by
//!   orders of magnitude, structurally too simple to be wrong in the same
//!   way.
//!
//! Both return the bare multisum `S`; [`phi_series`] applies the
//! `(q)_inf^crossings` normalization and [`rhs_series`] builds the expected
//! `prod h_b` evaluation for comparison.

use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::One;

use crate::classical::h_series;
use crate::error::{QError, Result};
use crate::knots::spec::MultisumSpec;
use crate::series::{inv_poch_finite_table, poch_inf, Monomial, TruncSeries};

fn validate_order(order: i64) -> Result<()> {
    if order < 1 {
        return Err(QError::InvalidOrder(order));
    }
    Ok(())
}

/// Largest value a variable can take before its own exponent contribution
/// `(A2[i][i] s^2 + L2[i] s)/2` alone reaches `prec`. All other
/// contributions are nonnegative, so larger values cannot affect the window.
fn var_cap(a2ii: i64, l2i: i64, prec: i64) -> i64 {
    let mut s = 0i64;
    while (a2ii * (s + 1) * (s + 1) + l2i * (s + 1)) / 2 < prec {
        s += 1;
    }
    s
}

/// Variable elimination order: maximum cardinality search over the coupling
/// graph (variables are coupled when they share a quadratic cross term or a
/// denominator set). Starts from a maximum-degree variable; subsequent picks
/// maximize adjacency to the already-chosen set, breaking ties by the
/// smallest count of still-unchosen neighbors, then by index. On the
/// chain-shaped graphs of the shipped specs this yields a frontier of one
/// variable, keeping the memo interface small.
pub fn eval_order(spec: &MultisumSpec) -> Vec<usize> {
    let n = spec.dim();
    if n == 0 {
        return Vec::new();
    }
    let mut adj = vec![vec![false; n]; n];
    for (i, row) in adj.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            if i != j && spec.a2[i][j] > 0 {
                *slot = true;
            }
        }
    }
    for set in &spec.denom_sets {
        for (ai, &a) in set.iter().enumerate() {
            for &b in set.iter().skip(ai + 1) {
                if a != b {
                    adj[a][b] = true;
                    adj[b][a] = true;
                }
            }
        }
    }
    let degree =
        |i: usize| -> usize { (0..n).filter(|&j| adj[i][j]).count() };

    let mut chosen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut first = 0usize;
    for i in 1..n {
        if degree(i) > degree(first) {
            first = i;
        }
    }
    chosen[first] = true;
    order.push(first);
    while order.len() < n {
        let mut best: Option<(usize, usize, usize)> = None; // (conn, remaining-deg, idx)
        for i in 0..n {
            if chosen[i] {
                continue;
            }
            let conn = (0..n).filter(|&j| chosen[j] && adj[i][j]).count();
            let remaining = (0..n).filter(|&j| !chosen[j] && adj[i][j]).count();
            let better = match best {
                None => true,
                Some((bc, br, _)) => conn > bc || (conn == bc && remaining < br),
            };
            if better {
                best = Some((conn, remaining, i));
            }
        }
        let (_, _, pick) = best.expect("some variable remains");
        chosen[pick] = true;
        order.push(pick);
    }
    order
}

struct Evaluator<'t> {
    n: usize,
    a2: Vec<Vec<i64>>,
    l2: Vec<i64>,
    sign: Vec<bool>,
    /// Denominator variable sets in eval-order positions (empty sets dropped).
    denoms: Vec<Vec<usize>>,
    /// Denominators whose last variable sits at this depth.
    attach: Vec<Vec<usize>>,
    /// Denominators begun strictly before this depth and not yet attached.
    straddle: Vec<Vec<usize>>,
    prec: i64,
    inv: &'t [TruncSeries],
    memo: HashMap<(usize, Vec<i64>, Vec<i64>), Rc<TruncSeries>>,
}

impl Evaluator<'_> {
    /// Sum over all assignments of the variables at positions `depth..n`,
    /// given the cross-term weights `lambda[j]` contributed by the fixed
    /// prefix and the partial subscripts `offs` of denominators already
    /// begun. The result depends only on those values, which is what makes
    /// memoization sound.
    fn suffix(
        &mut self,
        depth: usize,
        lambda: &[i64],
        offs: &HashMap<usize, i64>,
    ) -> Result<Rc<TruncSeries>> {
        if depth == self.n {
            return Ok(Rc::new(TruncSeries::one(self.prec)));
        }
        let key = (
            depth,
            lambda[depth..].to_vec(),
            self.straddle[depth]
                .iter()
                .map(|d| offs.get(d).copied().unwrap_or(0))
                .collect::<Vec<i64>>(),
        );
        if let Some(hit) = self.memo.get(&key) {
            return Ok(Rc::clone(hit));
        }

        let one = BigInt::one();
        let neg_one = -BigInt::one();
        let mut acc = TruncSeries::zero(self.prec);
        let mut s = 0i64;
        loop {
            let own2 = self.a2[depth][depth] * s * s + self.l2[depth] * s;
            debug_assert!(own2 % 2 == 0, "per-variable parity invariant violated");
            let own = own2 / 2 + lambda[depth] * s;
            if own >= self.prec {
                break;
            }

            let mut lam2 = lambda.to_vec();
            for (j, slot) in lam2.iter_mut().enumerate().skip(depth + 1) {
                *slot += self.a2[depth][j] * s;
            }
            let mut offs2 = offs.clone();
            for (di, set) in self.denoms.iter().enumerate() {
                if set.contains(&depth) && *set.last().expect("nonempty") > depth {
                    *offs2.entry(di).or_insert(0) += s;
                }
            }
            let child = self.suffix(depth + 1, &lam2, &offs2)?;

            let coef = if self.sign[depth] && s % 2 == 1 { &neg_one } else { &one };
            if self.attach[depth].is_empty() {
                acc.add_assign_shifted(&child, coef, own);
            } else {
                let mut term = (*child).clone();
                for di in &self.attach[depth] {
                    let arg = offs.get(di).copied().unwrap_or(0) + s;
                    if arg > 0 {
                        term = term.mul(&self.inv[arg as usize])?;
                    }
                }
                acc.add_assign_shifted(&term, coef, own);
            }
            s += 1;
        }

        let rc = Rc::new(acc);
        self.memo.insert(key, Rc::clone(&rc));
        Ok(rc)
    }
}

/// Evaluate the bare multisum `S` of a spec as a power series exact below
/// `prec`, using the memoized depth-first enumeration.
pub fn eval_multisum(spec: &MultisumSpec, prec: i64) -> Result<TruncSeries> {
    spec.validate()?;
    validate_order(prec)?;
    let n = spec.dim();
    if n == 0 {
        return Ok(TruncSeries::one(prec));
    }
    let order = eval_order(spec);

    // Re-index everything by eval-order position.
    let pos_of = {
        let mut p = vec![0usize; n];
        for (d, &v) in order.iter().enumerate() {
            p[v] = d;
        }
        p
    };
    let a2: Vec<Vec<i64>> = (0..n)
        .map(|d| (0..n).map(|e| spec.a2[order[d]][order[e]]).collect())
        .collect();
    let l2: Vec<i64> = (0..n).map(|d| spec.l2[order[d]]).collect();
    let sign: Vec<bool> = (0..n).map(|d| spec.sign_vec[order[d]] == 1).collect();
    let denoms: Vec<Vec<usize>> = spec
        .denom_sets
        .iter()
        .filter(|set| !set.is_empty())
        .map(|set| {
            let mut v: Vec<usize> = set.iter().map(|&i| pos_of[i]).collect();
            v.sort_unstable();
            v
        })
        .collect();

    let mut attach = vec![Vec::new(); n];
    let mut straddle = vec![Vec::new(); n];
    for (di, set) in denoms.iter().enumerate() {
        let first = *set.first().expect("nonempty");
        let last = *set.last().expect("nonempty");
        attach[last].push(di);
        for entry in straddle.iter_mut().take(last + 1).skip(first + 1) {
            entry.push(di);
        }
    }

    let caps: Vec<i64> = (0..n).map(|d| var_cap(a2[d][d], l2[d], prec)).collect();
    let max_arg = denoms
        .iter()
        .map(|set| set.iter().map(|&d| caps[d]).sum::<i64>())
        .max()
        .unwrap_or(0);
    let inv = inv_poch_finite_table(max_arg as usize, prec);

    let mut ev = Evaluator {
        n,
        a2,
        l2,
        sign,
        denoms,
        attach,
        straddle,
        prec,
        inv: &inv,
        memo: HashMap::new(),
    };
    let lambda = vec![0i64; n];
    let result = ev.suffix(0, &lambda, &HashMap::new())?;
    Ok((*result).clone())
}

/// Evaluate the bare multisum `S` by brute force: every point of the box
/// `prod [0, cap_i]` is visited by an odometer; a term's series product is
/// formed only when its exponent lands inside the window (terms beyond it
/// are exactly zero there). No other shortcut is taken.
pub fn eval_multisum_box(spec: &MultisumSpec, prec: i64) -> Result<TruncSeries> {
    spec.validate()?;
    validate_order(prec)?;
    let n = spec.dim();
    if n == 0 {
        return Ok(TruncSeries::one(prec));
    }
    let caps: Vec<i64> = (0..n).map(|i| var_cap(spec.a2[i][i], spec.l2[i], prec)).collect();
    let denoms: Vec<&Vec<usize>> = spec.denom_sets.iter().filter(|s| !s.is_empty()).collect();
    let max_arg = denoms
        .iter()
        .map(|set| set.iter().map(|&i| caps[i]).sum::<i64>())
        .max()
        .unwrap_or(0);
    let inv = inv_poch_finite_table(max_arg as usize, prec);

    let exponent2 = |s: &[i64]| -> i64 {
        let mut e2 = 0i64;
        for i in 0..n {
            e2 += spec.a2[i][i] * s[i] * s[i] + spec.l2[i] * s[i];
            for j in (i + 1)..n {
                e2 += 2 * spec.a2[i][j] * s[i] * s[j];
            }
        }
        e2
    };

    let one = BigInt::one();
    let neg_one = -BigInt::one();
    let mut acc = TruncSeries::zero(prec);
    let mut s = vec![0i64; n];
    loop {
        let e2 = exponent2(&s);
        debug_assert!(e2 % 2 == 0, "per-variable parity invariant violated");
        let e = e2 / 2;
        if e < prec {
            let mut term = TruncSeries::one(prec);
            for set in &denoms {
                let arg: i64 = set.iter().map(|&i| s[i]).sum();
                if arg > 0 {
                    term = term.mul(&inv[arg as usize])?;
                }
            }
            let parity: i64 = (0..n).filter(|&i| spec.sign_vec[i] == 1).map(|i| s[i]).sum();
            let coef = if parity % 2 == 1 { &neg_one } else { &one };
            acc.add_assign_shifted(&term, coef, e);
        }

        // odometer step
        let mut d = 0;
        loop {
            if d == n {
                return Ok(acc);
            }
            if s[d] < caps[d] {
                s[d] += 1;
                break;
            }
            s[d] = 0;
            d += 1;
        }
    }
}

/// The normalized knot series `(q)_inf^crossings * S`, truncated to `prec`.
pub fn phi_series(spec: &MultisumSpec, prec: i64) -> Result<TruncSeries> {
    let s = eval_multisum(spec, prec)?;
    let euler = poch_inf(&Monomial::q(), prec)?;
    Ok(euler.pow(spec.crossings)?.mul(&s)?.truncated(prec))
}

/// The expected evaluation `prod_b h_b` for a target list, truncated to
/// `prec`; the empty product is 1.
pub fn rhs_series(target: &[u32], prec: i64) -> Result<TruncSeries> {
    let mut acc = TruncSeries::one(prec.max(1));
    for &b in target {
        acc = acc.mul(&h_series(i64::from(b), prec)?)?;
    }
    Ok(acc)
}
