//! Checkerboard-colored knot diagrams and the construction that turns one
//! into a lattice multisum specification.
//!
//! A [`Diagram`] records the combinatorics of an alternating knot diagram:
//! faces two-colored `A`/`B` with a single exterior face `X`, edges as
//! unordered pairs of opposite-colored faces, and crossings as cyclic
//! quadruples of faces (colors alternating around each crossing).
//!
//! [`build_from_diagram`] derives, for the set of non-exterior faces,
//!
//! * a doubled quadratic form `Q2` with `Q2[F][F] = e(F)` for `A`-faces and
//!   `0` for `B`-faces, `Q2[F][G]` = the number of crossings shared by two
//!   `B`-faces, the number of edges shared by a mixed pair, and `0` for two
//!   `A`-faces (`e(F)` counts the edges bordering `F`, exterior included);
//! * a doubled linear form `L2` with `L2[F] = e(F) - 2` for `A`-faces and
//!   `2` for `B`-faces;
//! * a distinguished face `F*` — in the color class opposite the exterior,
//!   chosen to share an edge with as many faces of the exterior's class as
//!   possible, smallest face id on ties — which is pinned to zero along
//!   with the exterior;
//! * one denominator set per edge, holding the edge's adjacent faces that
//!   remain free variables (possibly none).
//!
//! The term exponent of the resulting multisum is
//! `(s^T Q2 s + L2 . s) / 2` and the sign weight of a face is `L2[F] mod 2`.
//! Mirroring a diagram swaps the two colors; [`mirror`] implements exactly
//! that, and the construction then produces the mirror knot's multisum.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};
use crate::knots::spec::MultisumSpec;

/// One face of a checkerboard-colored diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagFace {
    /// Unique face identifier (single letters in the shipped data).
    pub id: String,
    /// Checkerboard color, `"A"` or `"B"`.
    pub color: String,
    /// True for the unique unbounded face.
    #[serde(default)]
    pub exterior: bool,
}

/// One edge: an arc of the knot between consecutive crossings, bordered by
/// exactly two faces of opposite colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagEdge {
    /// Unique edge identifier.
    pub id: String,
    /// The two bordering faces.
    pub faces: Vec<String>,
}

/// One crossing: the four incident faces in cyclic order around the
/// crossing (colors must alternate).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagVertex {
    /// Unique crossing identifier.
    pub id: String,
    /// The four incident faces in cyclic order.
    pub faces: Vec<String>,
}

/// A validated checkerboard diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    /// Schema identifier for the JSON form; currently always 1.
    pub schema_version: u32,
    pub faces: Vec<DiagFace>,
    pub edges: Vec<DiagEdge>,
    pub vertices: Vec<DiagVertex>,
}

impl Diagram {
    /// Parse and validate a diagram from its JSON form.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let d: Diagram = serde_json::from_str(text)
            .map_err(|e| QError::MalformedDiagram(format!("JSON parse error: {e}")))?;
        d.validate()?;
        Ok(d)
    }

    /// Serialize to the stable JSON form.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("diagram serialization cannot fail")
    }

    /// The mirror diagram: identical combinatorics with the two checkerboard
    /// colors exchanged. Applying it twice returns the original diagram.
    pub fn mirror(&self) -> Diagram {
        let mut m = self.clone();
        for f in &mut m.faces {
            f.color = if f.color == "A" { "B".into() } else { "A".into() };
        }
        m
    }

    fn color_of(&self, id: &str) -> Option<&str> {
        self.faces.iter().find(|f| f.id == id).map(|f| f.color.as_str())
    }

    /// Check every structural invariant of a checkerboard diagram.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(QError::MalformedDiagram(msg));
        if self.schema_version != 1 {
            return fail(format!("unsupported schema_version {}", self.schema_version));
        }
        let mut ids = BTreeSet::new();
        for f in &self.faces {
            if !ids.insert(f.id.as_str()) {
                return fail(format!("duplicate face id {}", f.id));
            }
            if f.color != "A" && f.color != "B" {
                return fail(format!("face {} has color {:?}, expected A or B", f.id, f.color));
            }
        }
        let exteriors: Vec<_> = self.faces.iter().filter(|f| f.exterior).collect();
        if exteriors.len() != 1 {
            return fail(format!("expected exactly one exterior face, found {}", exteriors.len()));
        }

        let mut edge_pairs: BTreeMap<(String, String), usize> = BTreeMap::new();
        let mut edge_ids = BTreeSet::new();
        for e in &self.edges {
            if !edge_ids.insert(e.id.as_str()) {
                return fail(format!("duplicate edge id {}", e.id));
            }
            if e.faces.len() != 2 || e.faces[0] == e.faces[1] {
                return fail(format!("edge {} must join two distinct faces", e.id));
            }
            let (ca, cb) = match (self.color_of(&e.faces[0]), self.color_of(&e.faces[1])) {
                (Some(a), Some(b)) => (a, b),
                _ => return fail(format!("edge {} references an unknown face", e.id)),
            };
            if ca == cb {
                return fail(format!("edge {} joins two {ca}-colored faces", e.id));
            }
            *edge_pairs.entry(sorted_pair(&e.faces[0], &e.faces[1])).or_insert(0) += 1;
        }

        let mut corner_pairs: BTreeMap<(String, String), usize> = BTreeMap::new();
        let mut vertex_ids = BTreeSet::new();
        for v in &self.vertices {
            if !vertex_ids.insert(v.id.as_str()) {
                return fail(format!("duplicate crossing id {}", v.id));
            }
            if v.faces.len() != 4 {
                return fail(format!("crossing {} must list four faces", v.id));
            }
            let colors: Vec<&str> = v
                .faces
                .iter()
                .map(|f| self.color_of(f))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| {
                    QError::MalformedDiagram(format!("crossing {} references an unknown face", v.id))
                })?;
            if colors[0] != colors[2] || colors[1] != colors[3] || colors[0] == colors[1] {
                return fail(format!("crossing {} colors do not alternate", v.id));
            }
            for i in 0..4 {
                let a = &v.faces[i];
                let b = &v.faces[(i + 1) % 4];
                *corner_pairs.entry(sorted_pair(a, b)).or_insert(0) += 1;
            }
        }

        // Each edge runs between two crossings, so its face pair must occur
        // as a corner of exactly two crossings; conversely every corner
        // belongs to an edge.
        let doubled: BTreeMap<(String, String), usize> =
            edge_pairs.iter().map(|(k, v)| (k.clone(), 2 * v)).collect();
        if doubled != corner_pairs {
            return fail(
                "edge multiset does not match the crossing corners \
                 (each edge must appear at exactly two crossings)"
                    .into(),
            );
        }

        // Sphere condition.
        let euler =
            self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64;
        if euler != 2 {
            return fail(format!("V - E + F = {euler}, expected 2"));
        }
        Ok(())
    }
}

fn sorted_pair(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Output of the diagram-to-multisum construction, keeping both the full
/// (unrestricted) forms over all non-exterior faces and the restricted
/// [`MultisumSpec`] in which the exterior and `F*` are pinned to zero.
#[derive(Debug, Clone)]
pub struct Construction {
    /// All non-exterior faces, in diagram order; row/column order of
    /// `q_matrix` and `l2`.
    pub face_order: Vec<String>,
    /// Doubled quadratic form over `face_order` (includes `F*`).
    pub q_matrix: Vec<Vec<i64>>,
    /// Doubled linear form over `face_order` (includes `F*`).
    pub l2: Vec<i64>,
    /// The distinguished face pinned to zero alongside the exterior.
    pub f_star: String,
    /// The restricted multisum over the remaining free faces.
    pub spec: MultisumSpec,
}

/// Run the construction on a validated diagram.
pub fn build_from_diagram(d: &Diagram) -> Result<Construction> {
    d.validate()?;
    let exterior = d
        .faces
        .iter()
        .find(|f| f.exterior)
        .expect("validated diagram has an exterior")
        .id
        .clone();
    let ext_color = d.color_of(&exterior).expect("exterior face exists").to_string();

    let interior: Vec<&DiagFace> = d.faces.iter().filter(|f| !f.exterior).collect();
    let idx_of: BTreeMap<&str, usize> = interior
        .iter()
        .enumerate()
        .map(|(i, f)| (f.id.as_str(), i))
        .collect();
    let n = interior.len();

    // e(F): edges bordering each face, exterior included.
    let mut edge_count: BTreeMap<&str, i64> = d.faces.iter().map(|f| (f.id.as_str(), 0)).collect();
    for e in &d.edges {
        for f in &e.faces {
            *edge_count.get_mut(f.as_str()).expect("validated face id") += 1;
        }
    }

    // Shared crossings and shared edges per interior face pair.
    let mut shared_vertices = vec![vec![0i64; n]; n];
    for v in &d.vertices {
        let members: Vec<usize> = v
            .faces
            .iter()
            .filter_map(|f| idx_of.get(f.as_str()).copied())
            .collect();
        for (ai, &a) in members.iter().enumerate() {
            for &b in members.iter().skip(ai + 1) {
                if a != b {
                    shared_vertices[a][b] += 1;
                    shared_vertices[b][a] += 1;
                }
            }
        }
    }
    let mut shared_edges = vec![vec![0i64; n]; n];
    for e in &d.edges {
        if let (Some(&a), Some(&b)) = (
            idx_of.get(e.faces[0].as_str()),
            idx_of.get(e.faces[1].as_str()),
        ) {
            shared_edges[a][b] += 1;
            shared_edges[b][a] += 1;
        }
    }

    let is_a = |i: usize| interior[i].color == "A";
    let mut q_matrix = vec![vec![0i64; n]; n];
    let mut l2 = vec![0i64; n];
    for i in 0..n {
        if is_a(i) {
            q_matrix[i][i] = edge_count[interior[i].id.as_str()];
            l2[i] = edge_count[interior[i].id.as_str()] - 2;
        } else {
            q_matrix[i][i] = 0;
            l2[i] = 2;
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            q_matrix[i][j] = match (is_a(i), is_a(j)) {
                (true, true) => 0,
                (false, false) => shared_vertices[i][j],
                _ => shared_edges[i][j],
            };
        }
    }

    // F*: interior face of the color opposite the exterior, sharing an edge
    // with as many faces of the exterior's class as possible; ties go to the
    // smallest face id.
    let mut best: Option<(usize, usize)> = None; // (neighbor count, index)
    for (i, f) in interior.iter().enumerate() {
        if f.color == ext_color {
            continue;
        }
        let mut neighbors: BTreeSet<&str> = BTreeSet::new();
        for e in &d.edges {
            let (u, v) = (e.faces[0].as_str(), e.faces[1].as_str());
            let other = if u == f.id { Some(v) } else if v == f.id { Some(u) } else { None };
            if let Some(o) = other {
                if d.color_of(o) == Some(ext_color.as_str()) {
                    neighbors.insert(o);
                }
            }
        }
        let count = neighbors.len();
        let better = match best {
            None => true,
            Some((bc, bi)) => {
                count > bc || (count == bc && interior[i].id < interior[bi].id)
            }
        };
        if better {
            best = Some((count, i));
        }
    }
    let (_, f_star_idx) = best.ok_or_else(|| {
        QError::MalformedDiagram(format!(
            "no interior face of the color opposite the exterior ({ext_color})"
        ))
    })?;
    let f_star = interior[f_star_idx].id.clone();

    // Restrict to the free faces: drop the exterior (already excluded) and F*.
    let free: Vec<usize> = (0..n).filter(|&i| i != f_star_idx).collect();
    let var_names: Vec<String> = free.iter().map(|&i| interior[i].id.clone()).collect();
    let a2: Vec<Vec<i64>> = free
        .iter()
        .map(|&i| free.iter().map(|&j| q_matrix[i][j]).collect())
        .collect();
    let l2_r: Vec<i64> = free.iter().map(|&i| l2[i]).collect();
    let sign_vec: Vec<u8> = free.iter().map(|&i| (l2[i] % 2) as u8).collect();

    let free_idx_of: BTreeMap<&str, usize> = var_names
        .iter()
        .enumerate()
        .map(|(i, f)| (f.as_str(), i))
        .collect();
    let denom_sets: Vec<Vec<usize>> = d
        .edges
        .iter()
        .map(|e| {
            let mut set: Vec<usize> = e
                .faces
                .iter()
                .filter_map(|f| free_idx_of.get(f.as_str()).copied())
                .collect();
            set.sort_unstable();
            set
        })
        .collect();

    let spec = MultisumSpec::new(
        var_names,
        a2,
        l2_r,
        sign_vec,
        denom_sets,
        d.vertices.len() as u32,
        Vec::new(),
    )?;

    Ok(Construction {
        face_order: interior.iter().map(|f| f.id.clone()).collect(),
        q_matrix,
        l2,
        f_star,
        spec,
    })
}

/// A hand-transcribed reference for the full (unrestricted) forms of a
/// diagram: face order, doubled quadratic matrix, and doubled linear vector.
/// Used to cross-validate [`build_from_diagram`] output.
#[derive(Debug, Clone)]
pub struct ReferenceForm {
    /// Face order of the reference rows/columns.
    pub order: Vec<String>,
    /// Doubled quadratic form (same convention as [`Construction::q_matrix`]).
    pub q2: Vec<Vec<i64>>,
    /// Doubled linear form (same convention as [`Construction::l2`]).
    pub l2: Vec<i64>,
}

/// Compare a construction against a reference transcription, returning one
/// human-readable line per differing entry (empty when they agree). Entries
/// are addressed by face name, so the two sides may order faces differently.
pub fn diff_against_reference(c: &Construction, r: &ReferenceForm) -> Result<Vec<String>> {
    let ref_idx: BTreeMap<&str, usize> =
        r.order.iter().enumerate().map(|(i, f)| (f.as_str(), i)).collect();
    if r.order.len() != c.face_order.len()
        || c.face_order.iter().any(|f| !ref_idx.contains_key(f.as_str()))
    {
        return Err(QError::BadParameter(
            "reference face set does not match the construction".into(),
        ));
    }
    let mut diffs = Vec::new();
    for (i, fi) in c.face_order.iter().enumerate() {
        let ri = ref_idx[fi.as_str()];
        if c.l2[i] != r.l2[ri] {
            diffs.push(format!(
                "L2[{fi}]: built {}, reference {}",
                c.l2[i], r.l2[ri]
            ));
        }
        for (j, fj) in c.face_order.iter().enumerate() {
            let rj = ref_idx[fj.as_str()];
            if c.q_matrix[i][j] != r.q2[ri][rj] {
                diffs.push(format!(
                    "Q2[{fi}][{fj}]: built {}, reference {}",
                    c.q_matrix[i][j], r.q2[ri][rj]
                ));
            }
        }
    }
    Ok(diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::catalog::shipped;

    #[test]
    fn shipped_diagrams_validate() {
        for d in [shipped::diagram_7_2(), shipped::diagram_m7_2(), shipped::diagram_m3_1()] {
            d.validate().unwrap();
        }
    }

    #[test]
    fn mirror_is_an_involution() {
        let d = shipped::diagram_7_2();
        assert_eq!(d.mirror().mirror(), d);
        assert_eq!(d.mirror(), shipped::diagram_m7_2());
    }

    #[test]
    fn trefoil_mirror_construction() {
        let c = build_from_diagram(&shipped::diagram_m3_1()).unwrap();
        assert_eq!(c.f_star, "b");
        assert_eq!(c.spec.var_names, vec!["a", "c", "d"]);
        assert_eq!(c.spec.a2, vec![vec![0, 1, 1], vec![1, 2, 0], vec![1, 0, 2]]);
        assert_eq!(c.spec.l2, vec![2, 0, 0]);
        assert_eq!(c.spec.crossings, 3);
    }

    #[test]
    fn rejects_two_exteriors() {
        let mut d = shipped::diagram_m3_1();
        d.faces[0].exterior = true;
        d.faces[1].exterior = true;
        assert!(matches!(d.validate(), Err(QError::MalformedDiagram(_))));
    }

    #[test]
    fn rejects_monochrome_edge() {
        let mut d = shipped::diagram_m3_1();
        let a_color = d.faces.iter().find(|f| f.id == "a").unwrap().color.clone();
        for f in &mut d.faces {
            if f.id == "b" {
                f.color = a_color.clone();
            }
        }
        assert!(matches!(d.validate(), Err(QError::MalformedDiagram(_))));
    }
}
