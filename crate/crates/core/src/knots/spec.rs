//! Lattice multisum specifications.
//!
//! A [`MultisumSpec`] describes a sum over nonnegative integer vectors
//! `s = (s_1, ..., s_n)`:
//!
//! ```text
//!   S = sum_s  (-1)^{sum of s_i over flagged i}
//!              * q^{ (s^T A2 s + L2 . s) / 2 }
//!              / prod_D (q)_{ sum_{i in D} s_i }
//! ```
//!
//! where `A2` is a symmetric matrix with nonnegative integer entries (the
//! quadratic form, stored doubled so every exponent is a half of an integer
//! combination), `L2` the doubled linear form, and each denominator set `D`
//! selects the variables whose running sum subscripts one Euler factor.
//! Empty denominator sets are allowed and contribute `(q)_0 = 1`.
//!
//! Integrality is guaranteed by a per-variable parity invariant
//! (`A2[i][i] + L2[i]` even), and convergence as a power series by a
//! per-variable growth invariant (`A2[i][i] > 0` or `L2[i] > 0`) together
//! with nonnegativity of every variable's own exponent contribution.
//!
//! Specs serialize to a small versioned JSON schema so they can be shipped
//! next to the crate, loaded from disk, and diffed.

use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};

/// Name-independent fingerprint of a multisum: quadratic form, linear form,
/// sign flags, sorted nonempty denominator sets, and crossing count.
pub type CanonicalParts = (Vec<Vec<i64>>, Vec<i64>, Vec<u8>, Vec<Vec<usize>>, u32);

/// A multisum over a lattice of nonnegative integer vectors, with quadratic
/// exponent, per-variable sign flags, and Euler-factor denominators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultisumSpec {
    /// Schema identifier for the JSON form; currently always 1.
    pub schema_version: u32,
    /// Human-readable variable names, one per lattice dimension.
    #[serde(rename = "vars")]
    pub var_names: Vec<String>,
    /// Doubled quadratic form: exponent contribution `(s^T A2 s) / 2`.
    /// Symmetric with nonnegative integer entries.
    #[serde(rename = "A2")]
    pub a2: Vec<Vec<i64>>,
    /// Doubled linear form: exponent contribution `(L2 . s) / 2`.
    #[serde(rename = "L2")]
    pub l2: Vec<i64>,
    /// Per-variable sign flags (0 or 1): flagged variables contribute
    /// `(-1)^{s_i}` to each term.
    #[serde(rename = "sign")]
    pub sign_vec: Vec<u8>,
    /// Denominator sets: each entry lists variable indices whose sum
    /// subscripts one Euler factor `(q)_{...}`. May be empty.
    #[serde(rename = "denoms")]
    pub denom_sets: Vec<Vec<usize>>,
    /// Number of crossings of the underlying diagram; the normalization
    /// prefactor is `(q)_inf` to this power.
    pub crossings: u32,
    /// Indices `b` of the expected evaluation `prod h_b`; empty means the
    /// expected value is the constant 1.
    pub target: Vec<u32>,
}

impl MultisumSpec {
    /// Build and validate a spec (`schema_version` is set to 1).
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        var_names: Vec<String>,
        a2: Vec<Vec<i64>>,
        l2: Vec<i64>,
        sign_vec: Vec<u8>,
        denom_sets: Vec<Vec<usize>>,
        crossings: u32,
        target: Vec<u32>,
    ) -> Result<Self> {
        let spec = MultisumSpec {
            schema_version: 1,
            var_names,
            a2,
            l2,
            sign_vec,
            denom_sets,
            crossings,
            target,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Number of lattice variables.
    pub fn dim(&self) -> usize {
        self.var_names.len()
    }

    /// Check every structural invariant; every constructor and loader calls
    /// this before the spec is used.
    pub fn validate(&self) -> Result<()> {
        let n = self.var_names.len();
        let fail = |msg: String| Err(QError::MalformedSpec(msg));
        if self.schema_version != 1 {
            return fail(format!("unsupported schema_version {}", self.schema_version));
        }
        if self.a2.len() != n || self.a2.iter().any(|row| row.len() != n) {
            return fail(format!("quadratic form must be {n}x{n}"));
        }
        if self.l2.len() != n {
            return fail(format!("linear form must have {n} entries"));
        }
        if self.sign_vec.len() != n {
            return fail(format!("sign vector must have {n} entries"));
        }
        if let Some(bad) = self.sign_vec.iter().find(|&&b| b > 1) {
            return fail(format!("sign flags must be 0 or 1, found {bad}"));
        }
        for i in 0..n {
            for j in 0..n {
                if self.a2[i][j] < 0 {
                    return fail(format!(
                        "quadratic form entry ({i},{j}) is negative: {}",
                        self.a2[i][j]
                    ));
                }
                if self.a2[i][j] != self.a2[j][i] {
                    return fail(format!("quadratic form is not symmetric at ({i},{j})"));
                }
            }
        }
        for (i, name) in self.var_names.iter().enumerate() {
            if (self.a2[i][i] + self.l2[i]) % 2 != 0 {
                return fail(format!(
                    "variable {name}: A2[{i}][{i}] + L2[{i}] = {} is odd, exponents \
                     would be half-integral",
                    self.a2[i][i] + self.l2[i]
                ));
            }
            if self.a2[i][i] <= 0 && self.l2[i] <= 0 {
                return Err(QError::NoGrowthDirection { var: name.clone() });
            }
            if self.l2[i] < -self.a2[i][i] {
                return fail(format!(
                    "variable {name}: L2[{i}] = {} < -A2[{i}][{i}], own exponent \
                     contribution can go negative",
                    self.l2[i]
                ));
            }
        }
        for (d, set) in self.denom_sets.iter().enumerate() {
            for &idx in set {
                if idx >= n {
                    return fail(format!(
                        "denominator set {d} references variable index {idx} (dim {n})"
                    ));
                }
            }
        }
        Ok(())
    }

    /// Parse and validate a spec from its JSON form. Parse failures carry
    /// the position reported by the JSON parser.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let spec: MultisumSpec = serde_json::from_str(text)
            .map_err(|e| QError::MalformedSpec(format!("JSON parse error: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    /// Serialize to the stable JSON form.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("spec serialization cannot fail")
    }

    /// Structural fingerprint ignoring variable names and cosmetic
    /// differences: denominator sets are sorted and empty sets dropped
    /// (`(q)_0 = 1` contributes nothing). Two specs with equal fingerprints
    /// denote the same multisum under positional variable identification.
    pub fn canonical_parts(&self) -> CanonicalParts {
        let mut denoms: Vec<Vec<usize>> = self
            .denom_sets
            .iter()
            .filter(|s| !s.is_empty())
            .map(|s| {
                let mut v = s.clone();
                v.sort_unstable();
                v
            })
            .collect();
        denoms.sort();
        (
            self.a2.clone(),
            self.l2.clone(),
            self.sign_vec.clone(),
            denoms,
            self.crossings,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> MultisumSpec {
        MultisumSpec::new(
            vec!["a".into(), "b".into()],
            vec![vec![2, 1], vec![1, 2]],
            vec![0, 0],
            vec![0, 0],
            vec![vec![0], vec![1], vec![0, 1], vec![]],
            3,
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn json_round_trip() {
        let s = tiny();
        let text = s.to_json_string();
        assert!(text.starts_with("{\"schema_version\":1,\"vars\":"));
        let back = MultisumSpec::from_json_str(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn rejects_parity_violation() {
        let mut s = tiny();
        s.l2[0] = 1;
        assert!(matches!(s.validate(), Err(QError::MalformedSpec(_))));
    }

    #[test]
    fn rejects_flat_direction() {
        let mut s = tiny();
        s.a2[0][0] = 0;
        s.a2[0][1] = 0;
        s.a2[1][0] = 0;
        assert!(matches!(
            s.validate(),
            Err(QError::NoGrowthDirection { .. })
        ));
    }

    #[test]
    fn rejects_unknown_schema_version() {
        let bumped = tiny()
            .to_json_string()
            .replacen("\"schema_version\":1", "\"schema_version\":2", 1);
        assert!(matches!(
            MultisumSpec::from_json_str(&bumped),
            Err(QError::MalformedSpec(_))
        ));
    }

    #[test]
    fn canonical_drops_empty_denoms() {
        let s = tiny();
        let (_, _, _, denoms, _) = s.canonical_parts();
        assert_eq!(denoms, vec![vec![0], vec![0, 1], vec![1]]);
    }
}
