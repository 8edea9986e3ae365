//! Built-in catalog of multisum descriptions for small alternating knots.
//!
//! Each entry packages the quadratic form `A2`, linear form `L2`, sign flags,
//! and denominator sets of a nested `q`-hypergeometric sum
//!
//! ```text
//!   S = Σ_{s ≥ 0} (−1)^{σ·s} q^{(sᵀ A2 s + L2·s)/2} / ∏_D (q)_{s_D}
//! ```
//!
//! together with the crossing number `c` and a *target*: the list of moduli
//! `[b_1, …, b_r]` such that
//!
//! ```text
//!   (q)_∞^c · S  =  h_{b_1} · h_{b_2} ⋯ h_{b_r}
//! ```
//!
//! where `h_b` is the bilateral theta-quotient implemented by
//! [`crate::classical::h_series`].  An empty target means the product is `1`
//! (the unknot value).
//!
//! Fixed entries cover the prime alternating knots used as worked examples
//! (`5_1` … `8_4` and several mirrors, with `m` marking a mirror image).  Two
//! parametric families are generated on demand: `T2p` (the `(2, 2p+1)` torus
//! knots) and `Kp_pos` (a twist-knot family), both indexed by `p ≥ 1`.

use std::time::Instant;

use serde_json::{Map, Value};

use crate::error::{QError, Result};
use crate::knots::eval::{phi_series, rhs_series};
use crate::knots::spec::MultisumSpec;
use crate::report::{compare_series, IdentityReport};

/// Builds a catalog entry from a compact single-letter-variable description.
///
/// `vars` lists the summation variables as characters; `diag` and `lin` give
/// the nonzero diagonal of `A2` and entries of `L2`; `sign` lists variables
/// carrying a `(−1)^s` factor; `cross` lists symmetric off-diagonal pairs of
/// `A2` (all with entry 1); `denom_pairs` lists the two-variable denominator
/// sets.  A singleton denominator `(q)_{s_v}` is added automatically for
/// every variable.
#[allow(clippy::too_many_arguments)]
fn mk(
    vars: &str,
    diag: &[(char, i64)],
    lin: &[(char, i64)],
    sign: &str,
    cross: &[(char, char)],
    denom_pairs: &[(char, char)],
    crossings: u32,
    target: &[u32],
) -> MultisumSpec {
    let chars: Vec<char> = vars.chars().collect();
    let idx = |c: char| -> usize {
        chars
            .iter()
            .position(|&v| v == c)
            .unwrap_or_else(|| panic!("catalog entry references unknown variable '{c}'"))
    };
    let n = chars.len();
    let names: Vec<String> = chars.iter().map(|c| c.to_string()).collect();
    let mut a2 = vec![vec![0i64; n]; n];
    for &(c, v) in diag {
        a2[idx(c)][idx(c)] = v;
    }
    for &(u, v) in cross {
        let (i, j) = (idx(u), idx(v));
        a2[i][j] = 1;
        a2[j][i] = 1;
    }
    let mut l2 = vec![0i64; n];
    for &(c, v) in lin {
        l2[idx(c)] = v;
    }
    let mut sign_vec = vec![0u8; n];
    for c in sign.chars() {
        sign_vec[idx(c)] = 1;
    }
    let mut denom_sets: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    for &(u, v) in denom_pairs {
        let (i, j) = (idx(u), idx(v));
        denom_sets.push(if i < j { vec![i, j] } else { vec![j, i] });
    }
    MultisumSpec::new(names, a2, l2, sign_vec, denom_sets, crossings, target.to_vec())
        .expect("catalog entry must satisfy the structural invariants")
}

/// The `(2, 2p+1)` torus-knot family: one central variable `a` tied to a
/// chain `b_1, …, b_{2p}`, with `(−1)^a` sign and target `[2p + 1]`.
fn t2p_spec(p: u32) -> MultisumSpec {
    let m = 2 * p as usize;
    let n = m + 1;
    let pp = p as i64;
    let mut names = vec!["a".to_string()];
    for k in 1..=m {
        names.push(format!("b{k}"));
    }
    let mut a2 = vec![vec![0i64; n]; n];
    a2[0][0] = 2 * pp + 1;
    a2[0][1..=m].fill(1);
    for row in a2.iter_mut().skip(1) {
        row[0] = 1;
    }
    for k in 1..m {
        a2[k][k + 1] = 1;
        a2[k + 1][k] = 1;
    }
    let mut l2 = vec![2i64; n];
    l2[0] = 2 * pp - 1;
    let mut sign_vec = vec![0u8; n];
    sign_vec[0] = 1;
    let mut denom_sets: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    for k in 1..=m {
        denom_sets.push(vec![0, k]);
    }
    MultisumSpec::new(names, a2, l2, sign_vec, denom_sets, 2 * p + 1, vec![2 * p + 1])
        .expect("torus-family entry must satisfy the structural invariants")
}

/// The positive twist-knot family: variables `a`, `b` and a chain
/// `c_1, …, c_{2p−1}`, no sign factor, target `[2p]`.
fn kp_spec(p: u32) -> MultisumSpec {
    let m = 2 * p as usize - 1;
    let n = m + 2;
    let pp = p as i64;
    let mut names = vec!["a".to_string(), "b".to_string()];
    for k in 1..=m {
        names.push(format!("c{k}"));
    }
    let mut a2 = vec![vec![0i64; n]; n];
    a2[0][0] = 2 * pp;
    a2[1][1] = 2;
    for k in 1..=m {
        a2[0][k + 1] = 1;
        a2[k + 1][0] = 1;
    }
    a2[1][2] = 1;
    a2[2][1] = 1;
    for k in 1..m {
        a2[k + 1][k + 2] = 1;
        a2[k + 2][k + 1] = 1;
    }
    let mut l2 = vec![2i64; n];
    l2[0] = 2 * (pp - 1);
    l2[1] = 0;
    let sign_vec = vec![0u8; n];
    let mut denom_sets: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    denom_sets.push(vec![1, 2]);
    for k in 1..=m {
        denom_sets.push(vec![0, k + 1]);
    }
    MultisumSpec::new(names, a2, l2, sign_vec, denom_sets, 2 * p + 1, vec![2 * p])
        .expect("twist-family entry must satisfy the structural invariants")
}

/// Keys of all catalog entries, in verification-table order.  The two family
/// keys (`T2p`, `Kp_pos`) require a parameter `p ≥ 1` when instantiated.
pub fn catalog_names() -> Vec<&'static str> {
    vec![
        "m3_1", "5_1", "5_2", "6_2", "7_1", "7_2", "7_4", "7_7", "m7_7", "8_2", "8_4", "m8_4",
        "T2p", "Kp_pos",
    ]
}

/// Returns the multisum description for a catalog entry.
///
/// Fixed entries reject a parameter; the `T2p` / `Kp_pos` families require
/// `p ≥ 1`.  Unknown keys produce [`QError::UnknownKnot`].
pub fn knot_spec(name: &str, p: Option<u32>) -> Result<MultisumSpec> {
    let family = matches!(name, "T2p" | "Kp_pos");
    if family {
        let p = p.ok_or_else(|| {
            QError::BadParameter(format!("catalog entry '{name}' requires a parameter p >= 1"))
        })?;
        if p < 1 {
            return Err(QError::BadParameter(format!(
                "catalog entry '{name}' requires p >= 1, got {p}"
            )));
        }
        return Ok(match name {
            "T2p" => t2p_spec(p),
            _ => kp_spec(p),
        });
    }
    if p.is_some() {
        return Err(QError::BadParameter(format!(
            "catalog entry '{name}' does not take a parameter"
        )));
    }
    Ok(match name {
        "m3_1" => mk(
            "abc",
            &[('b', 2), ('c', 2)],
            &[('a', 2)],
            "",
            &[('a', 'b'), ('a', 'c')],
            &[('a', 'b'), ('a', 'c')],
            3,
            &[],
        ),
        "5_1" => mk(
            "abcde",
            &[('a', 5)],
            &[('a', 3), ('b', 2), ('c', 2), ('d', 2), ('e', 2)],
            "a",
            &[
                ('a', 'b'),
                ('a', 'c'),
                ('a', 'd'),
                ('a', 'e'),
                ('b', 'c'),
                ('c', 'd'),
                ('d', 'e'),
            ],
            &[('a', 'b'), ('a', 'c'), ('a', 'd'), ('a', 'e')],
            5,
            &[5],
        ),
        "5_2" => mk(
            "abcde",
            &[('a', 4), ('b', 2)],
            &[('a', 2), ('c', 2), ('d', 2), ('e', 2)],
            "",
            &[
                ('a', 'c'),
                ('a', 'd'),
                ('a', 'e'),
                ('b', 'c'),
                ('c', 'd'),
                ('d', 'e'),
            ],
            &[('b', 'c'), ('a', 'c'), ('a', 'd'), ('a', 'e')],
            5,
            &[4],
        ),
        "6_2" => mk(
            "abcdef",
            &[('f', 4), ('e', 3)],
            &[('f', 2), ('e', 1), ('a', 2), ('b', 2), ('c', 2), ('d', 2)],
            "e",
            &[
                ('a', 'b'),
                ('a', 'f'),
                ('b', 'c'),
                ('b', 'f'),
                ('c', 'd'),
                ('c', 'e'),
                ('c', 'f'),
                ('d', 'e'),
            ],
            &[('a', 'f'), ('b', 'f'), ('c', 'e'), ('c', 'f'), ('d', 'e')],
            6,
            &[3, 4],
        ),
        "7_1" => mk(
            "abcdefg",
            &[('a', 7)],
            &[
                ('a', 5),
                ('b', 2),
                ('c', 2),
                ('d', 2),
                ('e', 2),
                ('f', 2),
                ('g', 2),
            ],
            "a",
            &[
                ('a', 'b'),
                ('a', 'c'),
                ('a', 'd'),
                ('a', 'e'),
                ('a', 'f'),
                ('a', 'g'),
                ('b', 'c'),
                ('c', 'd'),
                ('d', 'e'),
                ('e', 'f'),
                ('f', 'g'),
            ],
            &[
                ('a', 'b'),
                ('a', 'c'),
                ('a', 'd'),
                ('a', 'e'),
                ('a', 'f'),
                ('a', 'g'),
            ],
            7,
            &[7],
        ),
        "7_2" => mk(
            "abcdefg",
            &[('a', 6), ('b', 2)],
            &[
                ('a', 4),
                ('c', 2),
                ('d', 2),
                ('e', 2),
                ('f', 2),
                ('g', 2),
            ],
            "",
            &[
                ('b', 'c'),
                ('a', 'c'),
                ('a', 'd'),
                ('a', 'e'),
                ('a', 'f'),
                ('a', 'g'),
                ('c', 'd'),
                ('d', 'e'),
                ('e', 'f'),
                ('f', 'g'),
            ],
            &[
                ('b', 'c'),
                ('a', 'c'),
                ('a', 'd'),
                ('a', 'e'),
                ('a', 'f'),
                ('a', 'g'),
            ],
            7,
            &[6],
        ),
        "7_4" => mk(
            "abcdefg",
            &[('f', 4), ('g', 4)],
            &[
                ('f', 2),
                ('g', 2),
                ('a', 2),
                ('b', 2),
                ('c', 2),
                ('d', 2),
                ('e', 2),
            ],
            "",
            &[
                ('a', 'b'),
                ('a', 'g'),
                ('b', 'c'),
                ('b', 'g'),
                ('c', 'd'),
                ('c', 'f'),
                ('c', 'g'),
                ('d', 'e'),
                ('d', 'f'),
                ('e', 'f'),
            ],
            &[
                ('a', 'g'),
                ('b', 'g'),
                ('c', 'f'),
                ('c', 'g'),
                ('d', 'f'),
                ('e', 'f'),
            ],
            7,
            &[4, 4],
        ),
        "7_7" => mk(
            "abcdefg",
            &[('e', 3), ('f', 3), ('g', 3)],
            &[
                ('e', 1),
                ('f', 1),
                ('g', 1),
                ('a', 2),
                ('b', 2),
                ('c', 2),
                ('d', 2),
            ],
            "efg",
            &[
                ('a', 'b'),
                ('a', 'd'),
                ('a', 'e'),
                ('a', 'f'),
                ('b', 'f'),
                ('c', 'd'),
                ('c', 'g'),
                ('d', 'e'),
                ('d', 'g'),
            ],
            &[
                ('a', 'e'),
                ('d', 'e'),
                ('a', 'f'),
                ('b', 'f'),
                ('c', 'g'),
                ('d', 'g'),
            ],
            7,
            &[3, 3, 3],
        ),
        "m7_7" => mk(
            "abcdefg",
            &[('d', 2), ('e', 3), ('f', 3), ('g', 2)],
            &[('e', 1), ('f', 1), ('a', 2), ('b', 2), ('c', 2)],
            "ef",
            &[
                ('a', 'b'),
                ('a', 'd'),
                ('a', 'e'),
                ('b', 'c'),
                ('b', 'e'),
                ('b', 'f'),
                ('c', 'f'),
                ('c', 'g'),
            ],
            &[
                ('a', 'd'),
                ('a', 'e'),
                ('b', 'e'),
                ('b', 'f'),
                ('c', 'f'),
                ('c', 'g'),
            ],
            7,
            &[3, 3],
        ),
        "8_2" => mk(
            "abcdefgh",
            &[('a', 6), ('b', 3)],
            &[
                ('a', 4),
                ('b', 1),
                ('c', 2),
                ('d', 2),
                ('e', 2),
                ('f', 2),
                ('g', 2),
                ('h', 2),
            ],
            "b",
            &[
                ('a', 'd'),
                ('a', 'e'),
                ('a', 'f'),
                ('a', 'g'),
                ('a', 'h'),
                ('b', 'c'),
                ('b', 'd'),
                ('c', 'd'),
                ('d', 'e'),
                ('e', 'f'),
                ('f', 'g'),
                ('g', 'h'),
            ],
            &[
                ('b', 'c'),
                ('b', 'd'),
                ('a', 'd'),
                ('a', 'e'),
                ('a', 'f'),
                ('a', 'g'),
                ('a', 'h'),
            ],
            8,
            &[3, 6],
        ),
        "8_4" => mk(
            "abcdefgh",
            &[
                ('e', 3),
                ('c', 2),
                ('d', 2),
                ('f', 2),
                ('g', 2),
                ('h', 2),
            ],
            &[('e', 1), ('a', 2), ('b', 2)],
            "e",
            &[
                ('a', 'e'),
                ('b', 'e'),
                ('a', 'b'),
                ('b', 'c'),
                ('b', 'd'),
                ('a', 'f'),
                ('a', 'g'),
                ('a', 'h'),
            ],
            &[
                ('a', 'e'),
                ('a', 'f'),
                ('a', 'g'),
                ('a', 'h'),
                ('b', 'c'),
                ('b', 'd'),
                ('b', 'e'),
            ],
            8,
            &[3],
        ),
        "m8_4" => mk(
            "abcdefgh",
            &[('g', 5), ('h', 4)],
            &[
                ('g', 3),
                ('h', 2),
                ('a', 2),
                ('b', 2),
                ('c', 2),
                ('d', 2),
                ('e', 2),
                ('f', 2),
            ],
            "g",
            &[
                ('a', 'b'),
                ('a', 'h'),
                ('b', 'c'),
                ('b', 'h'),
                ('c', 'd'),
                ('c', 'g'),
                ('c', 'h'),
                ('d', 'e'),
                ('d', 'g'),
                ('e', 'f'),
                ('e', 'g'),
                ('f', 'g'),
            ],
            &[
                ('a', 'h'),
                ('b', 'h'),
                ('c', 'g'),
                ('c', 'h'),
                ('d', 'g'),
                ('e', 'g'),
                ('f', 'g'),
            ],
            8,
            &[4, 5],
        ),
        _ => return Err(QError::UnknownKnot(name.to_string())),
    })
}

/// Verifies one catalog entry to order `q^order`: evaluates the normalized
/// diagram series `(q)_∞^c · S` and compares it against the target product of
/// `h`-series.
pub fn verify_knot(name: &str, p: Option<u32>, order: i64) -> Result<IdentityReport> {
    let start = Instant::now();
    let spec = knot_spec(name, p)?;
    let lhs = phi_series(&spec, order)?;
    let rhs = rhs_series(&spec.target, order)?;
    let mut params = Map::new();
    params.insert("name".to_string(), Value::String(name.to_string()));
    params.insert(
        "p".to_string(),
        match p {
            Some(v) => Value::Number(v.into()),
            None => Value::Null,
        },
    );
    compare_series("knot", params, order, &lhs, &rhs, start)
}

/// Shipped planar-diagram fixtures and the hand-checked reference matrices
/// used to validate the construction pipeline end to end.
pub mod shipped {
    use super::*;
    use crate::knots::diagram::{Diagram, ReferenceForm};

    /// Checkerboard-colored diagram of the twist knot `7_2`.
    pub const DIAGRAM_7_2_JSON: &str = include_str!("../../data/diagram_7_2.json");
    /// The same diagram with the two checkerboard colors exchanged (the
    /// mirror image of `7_2`).
    pub const DIAGRAM_M7_2_JSON: &str = include_str!("../../data/diagram_m7_2.json");
    /// Checkerboard-colored diagram of the left-handed trefoil.
    pub const DIAGRAM_M3_1_JSON: &str = include_str!("../../data/diagram_m3_1.json");

    /// Parses the shipped `7_2` diagram.
    pub fn diagram_7_2() -> Diagram {
        Diagram::from_json_str(DIAGRAM_7_2_JSON).expect("shipped 7_2 diagram is valid")
    }

    /// Parses the shipped mirror `7_2` diagram.
    pub fn diagram_m7_2() -> Diagram {
        Diagram::from_json_str(DIAGRAM_M7_2_JSON).expect("shipped m7_2 diagram is valid")
    }

    /// Parses the shipped mirror-trefoil diagram.
    pub fn diagram_m3_1() -> Diagram {
        Diagram::from_json_str(DIAGRAM_M3_1_JSON).expect("shipped m3_1 diagram is valid")
    }

    /// Independently transcribed quadratic/linear forms for the shipped
    /// diagrams, face by face, in doubled form (so that the term exponent is
    /// `(sᵀ Q2 s + L2·s)/2`).  Used by the construction diff: a clean build
    /// reproduces `7_2` exactly, while `m7_2` differs in a single diagonal
    /// entry of the transcription.
    pub fn reference_form(name: &str) -> Option<ReferenceForm> {
        let order: Vec<String> = ["c", "d", "e", "f", "g", "h", "a", "b"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        match name {
            "7_2" => Some(ReferenceForm {
                order,
                q2: vec![
                    vec![0, 1, 0, 0, 0, 2, 1, 1],
                    vec![1, 0, 1, 0, 0, 0, 1, 0],
                    vec![0, 1, 0, 1, 0, 0, 1, 0],
                    vec![0, 0, 1, 0, 1, 0, 1, 0],
                    vec![0, 0, 0, 1, 0, 1, 1, 0],
                    vec![2, 0, 0, 0, 1, 0, 1, 1],
                    vec![1, 1, 1, 1, 1, 1, 6, 0],
                    vec![1, 0, 0, 0, 0, 1, 0, 2],
                ],
                l2: vec![2, 2, 2, 2, 2, 2, 4, 0],
            }),
            "m7_2" => Some(ReferenceForm {
                order,
                q2: vec![
                    vec![3, 0, 0, 0, 0, 0, 1, 1],
                    vec![0, 2, 0, 0, 0, 0, 1, 0],
                    vec![0, 0, 2, 0, 0, 0, 1, 0],
                    vec![0, 0, 0, 2, 0, 0, 1, 0],
                    vec![0, 0, 0, 0, 2, 0, 1, 0],
                    vec![0, 0, 0, 0, 0, 2, 1, 1],
                    vec![1, 1, 1, 1, 1, 1, 0, 1],
                    vec![1, 0, 0, 0, 0, 1, 1, 0],
                ],
                l2: vec![1, 0, 0, 0, 0, 1, 2, 2],
            }),
            _ => None,
        }
    }

    /// Hand transcription of the fully expanded multisum display for the
    /// mirror `7_2` diagram (seven variables, the distinguished face already
    /// removed).  The `(−1)^c` sign factor — forced by the odd linear
    /// coefficient of `c` — is included.  Differs from the output of the
    /// automatic construction only by a harmless relabeling of variables.
    pub fn mirror_7_2_expanded_spec() -> MultisumSpec {
        super::mk(
            "abcdefg",
            &[('c', 3), ('d', 2), ('e', 2), ('f', 2), ('g', 2)],
            &[('a', 2), ('b', 2), ('c', 1)],
            "c",
            &[
                ('a', 'b'),
                ('a', 'c'),
                ('a', 'd'),
                ('a', 'e'),
                ('a', 'f'),
                ('a', 'g'),
                ('b', 'c'),
            ],
            &[
                ('a', 'c'),
                ('a', 'd'),
                ('a', 'e'),
                ('a', 'f'),
                ('a', 'g'),
                ('b', 'c'),
            ],
            7,
            &[],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_lists_fourteen_entries() {
        let names = catalog_names();
        assert_eq!(names.len(), 14);
        assert!(names.contains(&"7_2"));
        assert!(names.contains(&"T2p"));
        assert!(names.contains(&"Kp_pos"));
    }

    #[test]
    fn all_fixed_entries_instantiate() {
        for name in catalog_names() {
            if matches!(name, "T2p" | "Kp_pos") {
                continue;
            }
            let spec = knot_spec(name, None).expect("fixed entry instantiates");
            assert!(spec.dim() >= 3, "{name} has at least three variables");
        }
    }

    #[test]
    fn family_parameter_handling() {
        assert!(matches!(
            knot_spec("T2p", None),
            Err(QError::BadParameter(_))
        ));
        assert!(matches!(
            knot_spec("Kp_pos", Some(0)),
            Err(QError::BadParameter(_))
        ));
        assert!(matches!(
            knot_spec("5_1", Some(2)),
            Err(QError::BadParameter(_))
        ));
        assert!(matches!(
            knot_spec("9_99", None),
            Err(QError::UnknownKnot(_))
        ));
        let t1 = knot_spec("T2p", Some(1)).unwrap();
        assert_eq!(t1.dim(), 3);
        assert_eq!(t1.target, vec![3]);
        let k2 = knot_spec("Kp_pos", Some(2)).unwrap();
        assert_eq!(k2.dim(), 5);
        assert_eq!(k2.target, vec![4]);
        assert_eq!(k2.crossings, 5);
    }

    #[test]
    fn trefoil_mirror_matches_torus_family_shape() {
        // `m3_1` and `T2p` at p = 1 describe the two trefoil chiralities;
        // both have three variables and crossing number 3.
        let m = knot_spec("m3_1", None).unwrap();
        let t = knot_spec("T2p", Some(1)).unwrap();
        assert_eq!(m.dim(), t.dim());
        assert_eq!(m.crossings, t.crossings);
        assert_eq!(m.target, Vec::<u32>::new());
        assert_eq!(t.target, vec![3]);
    }

    #[test]
    fn small_entries_verify_at_low_order() {
        for (name, p) in [("m3_1", None), ("5_2", None), ("T2p", Some(1))] {
            let report = verify_knot(name, p, 12).expect("verification runs");
            assert!(report.verified, "{name} verifies to order 12");
        }
    }

    #[test]
    fn shipped_diagrams_parse_and_validate() {
        let d = shipped::diagram_7_2();
        assert_eq!(d.faces.len(), 9);
        assert_eq!(d.edges.len(), 14);
        assert_eq!(d.vertices.len(), 7);
        let m = shipped::diagram_m3_1();
        assert_eq!(m.faces.len(), 5);
        assert_eq!(m.edges.len(), 6);
        assert_eq!(m.vertices.len(), 3);
        assert!(shipped::reference_form("7_2").is_some());
        assert!(shipped::reference_form("m7_2").is_some());
        assert!(shipped::reference_form("5_1").is_none());
    }

    #[test]
    fn expanded_mirror_fixture_validates() {
        let spec = shipped::mirror_7_2_expanded_spec();
        assert_eq!(spec.dim(), 7);
        assert_eq!(spec.crossings, 7);
        assert_eq!(spec.sign_vec.iter().sum::<u8>(), 1);
    }
}
