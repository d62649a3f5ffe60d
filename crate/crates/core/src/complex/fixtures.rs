//! Named fixtures: the counterexample posets, a finite window of the
//! infinite positively-curved poset, and the genus-3 map with heptagonal
//! faces, plus the registry the CLI resolves `--fixture` names against.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::complex::{cube, icosahedron, tetrahedron, torus_grid, PolyMap};
use crate::error::{Error, Result};
use crate::poset::Poset;

/// A finite window cut from an infinite repeating poset. Local counts are
/// only faithful to the infinite pattern at `interior` elements (those at
/// Hasse-graph distance ≥ 2 from every truncation point); curvature should
/// only be read off there.
#[derive(Debug, Clone)]
pub struct Window {
    pub poset: Poset,
    pub interior: BTreeSet<String>,
    /// Marked elements: keys `v`, `e`, `x` (a vertex, an edge, a face).
    pub designated: BTreeMap<String, String>,
}

/// The rank-2 poset with one vertex, three edges over it, and one face over
/// all three edges. Its edge curvature R1 is 5/2 at every edge while the
/// ranked Euler characteristic is −1, so a positive average does not force
/// a positive Euler characteristic without the coverage hypothesis; it is
/// also the standard witness that R1 and the edge Ricci curvature differ
/// off the almost-polyhedral class (5/2 vs 2).
pub fn fig_counterexample() -> Poset {
    Poset::build(
        ["v", "e1", "e2", "e3", "s"],
        [
            ("v", "e1"),
            ("v", "e2"),
            ("v", "e3"),
            ("e1", "s"),
            ("e2", "s"),
            ("e3", "s"),
        ],
    )
    .expect("fixture is a valid poset")
}

/// An almost polyhedral poset that is not the face poset of a regular CW
/// complex: one face over two disjoint triangle boundaries, so the face's
/// lower boundary is disconnected.
pub fn fig_almost_polyhedral_non_cw() -> Poset {
    let mut covers: Vec<(String, String)> = Vec::new();
    for (tri, vs) in [("a", ["u1", "u2", "u3"]), ("b", ["w1", "w2", "w3"])] {
        for k in 0..3 {
            let edge = format!("{tri}{}{}", k + 1, (k + 1) % 3 + 1);
            covers.push((vs[k].to_string(), edge.clone()));
            covers.push((vs[(k + 1) % 3].to_string(), edge.clone()));
            covers.push((edge, "m".to_string()));
        }
    }
    let elements = [
        "u1", "u2", "u3", "w1", "w2", "w3", "a12", "a23", "a31", "b12", "b23", "b31", "m",
    ];
    Poset::build(elements, covers).expect("fixture is a valid poset")
}

/// The face poset of the CW complex with two vertices, two edges and one
/// disk (a circle split into two arcs, capped by a disk). It is a regular
/// CW complex but not almost polyhedral: the two edges share two vertices.
pub fn fig_cw_not_almost_polyhedral() -> Poset {
    Poset::build(
        ["u", "v", "a", "b", "s"],
        [
            ("u", "a"),
            ("v", "a"),
            ("u", "b"),
            ("v", "b"),
            ("a", "s"),
            ("b", "s"),
        ],
    )
    .expect("fixture is a valid poset")
}

/// A finite window of the infinite repeating rank-2 poset with everywhere
/// positive R0, R1, R2.
///
/// One period consists of a hexagonal face `sigma` over six edges: a
/// pendant edge `e` covering six private vertices, and five connector edges
/// `c1..c5` covering one vertex each; a further edge `r` over the single
/// vertex `v`, tied into the chain by two digon faces `d1 = {r, c1}` and
/// `d2 = {r, next period's c2}`. At interior elements this reproduces the
/// pattern's values: R0 = 3/2 at every vertex, R1(e) = 4 with Ric(e) = 2,
/// R2(d) = 9 at the digons, and the vertex curvature R* = 3 at `v`.
///
/// Designated elements are taken from the middle period.
pub fn fig_infinite_window(k: usize) -> Result<Window> {
    if k < 3 {
        return Err(Error::ParameterOutOfRange(format!(
            "window needs at least 3 periods, got {k}"
        )));
    }
    let mut elements: Vec<String> = Vec::new();
    let mut covers: Vec<(String, String)> = Vec::new();
    for j in 0..k {
        let p = |name: &str| format!("p{j}:{name}");
        for t in 1..=6 {
            elements.push(p(&format!("ve{t}")));
            covers.push((p(&format!("ve{t}")), p("e")));
        }
        for t in 1..=5 {
            elements.push(p(&format!("wc{t}")));
            covers.push((p(&format!("wc{t}")), p(&format!("c{t}"))));
        }
        elements.push(p("v"));
        covers.push((p("v"), p("r")));
        elements.push(p("e"));
        for t in 1..=5 {
            elements.push(p(&format!("c{t}")));
            covers.push((p(&format!("c{t}")), p("sigma")));
        }
        elements.push(p("r"));
        elements.push(p("sigma"));
        covers.push((p("e"), p("sigma")));
        elements.push(p("d1"));
        covers.push((p("r"), p("d1")));
        covers.push((p("c1"), p("d1")));
        if j + 1 < k {
            elements.push(p("d2"));
            covers.push((p("r"), p("d2")));
            covers.push((format!("p{}:c2", j + 1), p("d2")));
        }
    }
    let poset = Poset::build(elements, covers)?;

    // truncation-affected elements: the first period's c2 lost the digon
    // below it in the pattern, the last period's r lost its second digon
    let boundary = ["p0:c2".to_string(), format!("p{}:r", k - 1)];
    let interior = interior_by_distance(&poset, &boundary, 2);

    let mid = k / 2;
    let mut designated = BTreeMap::new();
    designated.insert("v".to_string(), format!("p{mid}:v"));
    designated.insert("e".to_string(), format!("p{mid}:e"));
    designated.insert("x".to_string(), format!("p{mid}:d1"));
    for d in designated.values() {
        debug_assert!(interior.contains(d), "designated element not interior");
    }
    Ok(Window {
        poset,
        interior,
        designated,
    })
}

/// Elements at undirected Hasse-graph distance ≥ `min_dist` from every
/// element of `boundary`.
fn interior_by_distance(poset: &Poset, boundary: &[String], min_dist: usize) -> BTreeSet<String> {
    let ids: Vec<String> = poset.elements().map(str::to_string).collect();
    let index: HashMap<&str, usize> = ids
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); ids.len()];
    for (lo, hi) in poset.cover_pairs() {
        let (a, b) = (index[lo.as_str()], index[hi.as_str()]);
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut dist = vec![usize::MAX; ids.len()];
    let mut queue = VecDeque::new();
    for b in boundary {
        let i = index[b.as_str()];
        dist[i] = 0;
        queue.push_back(i);
    }
    while let Some(i) = queue.pop_front() {
        if dist[i] >= min_dist {
            continue;
        }
        for &j in &adj[i] {
            if dist[j] == usize::MAX {
                dist[j] = dist[i] + 1;
                queue.push_back(j);
            }
        }
    }
    ids.into_iter()
        .enumerate()
        .filter(|&(i, _)| dist[i] == usize::MAX || dist[i] >= min_dist)
        .map(|(_, id)| id)
        .collect()
}

// ---------------------------------------------------------------------------
// The genus-3 regular maps from PSL(2,7)
// ---------------------------------------------------------------------------

/// 2×2 matrix over F_7, row major, normalized so that the first nonzero
/// entry is ≤ 3 (PSL identifies m with −m).
type Mat = [u8; 4];

const MOD: u8 = 7;

fn canon(mut m: Mat) -> Mat {
    for &x in &m {
        if x != 0 {
            if x > MOD / 2 {
                for e in m.iter_mut() {
                    *e = (MOD - *e) % MOD;
                }
            }
            break;
        }
    }
    m
}

fn mul(a: Mat, b: Mat) -> Mat {
    canon([
        (a[0] * b[0] + a[1] * b[2]) % MOD,
        (a[0] * b[1] + a[1] * b[3]) % MOD,
        (a[2] * b[0] + a[3] * b[2]) % MOD,
        (a[2] * b[1] + a[3] * b[3]) % MOD,
    ])
}

const IDENT: Mat = [1, 0, 0, 1];
/// Order 2: [[0,-1],[1,0]]
const GEN_A: Mat = [0, 6, 1, 0];
/// Order 3: [[0,-1],[1,-1]]
const GEN_B: Mat = [0, 6, 1, 6];

/// All 168 elements of PSL(2,7), sorted.
fn psl27() -> Vec<Mat> {
    let mut seen = BTreeSet::new();
    seen.insert(canon(IDENT));
    let mut queue = vec![canon(IDENT)];
    while let Some(g) = queue.pop() {
        for gen in [GEN_A, GEN_B] {
            let h = mul(g, gen);
            if seen.insert(h) {
                queue.push(h);
            }
        }
    }
    let group: Vec<Mat> = seen.into_iter().collect();
    assert_eq!(group.len(), 168, "PSL(2,7) closure");
    group
}

fn powers(g: Mat) -> Vec<Mat> {
    let mut out = vec![canon(IDENT)];
    let mut cur = g;
    while cur != canon(IDENT) {
        out.push(cur);
        cur = mul(cur, g);
    }
    out
}

/// Builds the regular map whose faces are the cosets of ⟨face_gen⟩ and
/// whose vertices are the cosets of ⟨vertex_gen⟩; the boundary of the face
/// at g walks the vertices g·face_gen^t·⟨vertex_gen⟩.
fn regular_map(face_gen: Mat, vertex_gen: Mat) -> PolyMap {
    let group = psl27();
    let face_sub = powers(face_gen);
    let vertex_sub = powers(vertex_gen);

    let coset_key = |g: Mat, sub: &[Mat]| -> Mat { sub.iter().map(|&h| mul(g, h)).min().unwrap() };

    // vertex ids in order of first appearance over the sorted group
    let mut vertex_id: HashMap<Mat, usize> = HashMap::new();
    for &g in &group {
        let key = coset_key(g, &vertex_sub);
        let next = vertex_id.len();
        vertex_id.entry(key).or_insert(next);
    }

    let mut faces: Vec<Vec<String>> = Vec::new();
    let mut seen_faces: BTreeSet<Mat> = BTreeSet::new();
    for &g in &group {
        let fkey = coset_key(g, &face_sub);
        if !seen_faces.insert(fkey) {
            continue;
        }
        let mut cycle = Vec::with_capacity(face_sub.len());
        let mut cur = fkey;
        for _ in 0..face_sub.len() {
            cycle.push(format!("v{}", vertex_id[&coset_key(cur, &vertex_sub)]));
            cur = mul(cur, face_gen);
        }
        faces.push(cycle);
    }
    PolyMap::new(faces).expect("regular map from PSL(2,7) is valid")
}

/// The {3,7} triangulation of the genus-3 surface: 24 vertices of degree 7,
/// 84 edges, 56 triangles, Euler characteristic −4.
pub fn klein_triangulation() -> PolyMap {
    // faces rotate by b (order 3), vertices by ab (order 7)
    regular_map(GEN_B, mul(GEN_A, GEN_B))
}

/// The dual {7,3} map: 56 vertices of degree 3, 84 edges, 24 heptagonal
/// faces, Euler characteristic −4, orientable. Every face has exactly 7
/// edges, so all three curvatures R0, Ric, R2 are negative everywhere.
pub fn klein_dual() -> PolyMap {
    regular_map(mul(GEN_A, GEN_B), GEN_B)
}

/// A fixture resolved by name.
#[derive(Debug, Clone)]
pub enum Fixture {
    Map(PolyMap),
    Poset(Poset),
    Window(Window),
}

pub const FIXTURE_NAMES: &[&str] = &[
    "tetrahedron",
    "cube",
    "icosahedron",
    "torus:MxN",
    "fig-counterexample",
    "fig-infinite:K",
    "fig-ap-noncw",
    "fig-cw-nonap",
    "klein-dual",
];

/// Resolves a fixture name as accepted by the CLI `--fixture` flag.
pub fn by_name(name: &str) -> Result<Fixture> {
    match name {
        "tetrahedron" => return Ok(Fixture::Map(tetrahedron())),
        "cube" => return Ok(Fixture::Map(cube())),
        "icosahedron" => return Ok(Fixture::Map(icosahedron())),
        "fig-counterexample" => return Ok(Fixture::Poset(fig_counterexample())),
        "fig-ap-noncw" => return Ok(Fixture::Poset(fig_almost_polyhedral_non_cw())),
        "fig-cw-nonap" => return Ok(Fixture::Poset(fig_cw_not_almost_polyhedral())),
        "klein-dual" => return Ok(Fixture::Map(klein_dual())),
        _ => {}
    }
    if let Some(size) = name.strip_prefix("torus:") {
        let dims: Vec<&str> = size.split('x').collect();
        if dims.len() == 2 {
            let m = dims[0].parse::<usize>();
            let n = dims[1].parse::<usize>();
            if let (Ok(m), Ok(n)) = (m, n) {
                return Ok(Fixture::Map(torus_grid(m, n)?));
            }
        }
        return Err(Error::ParameterOutOfRange(format!(
            "bad torus size `{size}`, expected MxN"
        )));
    }
    if let Some(size) = name.strip_prefix("fig-infinite:") {
        let k = size.parse::<usize>().map_err(|_| {
            Error::ParameterOutOfRange(format!("bad window size `{size}`, expected an integer"))
        })?;
        return Ok(Fixture::Window(fig_infinite_window(k)?));
    }
    Err(Error::ParameterOutOfRange(format!(
        "unknown fixture `{name}`; expected one of {}",
        FIXTURE_NAMES.join(", ")
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample_shape() {
        let p = fig_counterexample();
        let rf = p.rank().unwrap();
        assert_eq!(rf.f_vector(), vec![1, 3, 1]);
        assert_eq!(p.interval_cardinality("v", "s").unwrap(), 5);
    }

    #[test]
    fn window_parameter_range() {
        assert!(matches!(
            fig_infinite_window(2),
            Err(Error::ParameterOutOfRange(_))
        ));
    }

    #[test]
    fn window_designated_are_interior() {
        for k in [3, 4, 7] {
            let w = fig_infinite_window(k).unwrap();
            let rf = w.poset.rank().unwrap();
            assert_eq!(rf.max_rank(), 2);
            for d in w.designated.values() {
                assert!(w.interior.contains(d));
            }
            // truncation points are not interior
            assert!(!w.interior.contains("p0:c2"));
            assert!(!w.interior.contains(&format!("p{}:r", k - 1)));
        }
    }

    #[test]
    fn klein_dual_shape() {
        let m = klein_dual();
        assert_eq!(m.f_vector(), (56, 84, 24));
        assert_eq!(m.euler_characteristic(), -4);
        assert!(m.face_sizes().iter().all(|&s| s == 7));
        for v in m.vertex_names().map(str::to_string).collect::<Vec<_>>() {
            assert_eq!(m.vertex_degree(&v).unwrap(), 3);
        }
    }

    #[test]
    fn klein_triangulation_shape() {
        let m = klein_triangulation();
        assert_eq!(m.f_vector(), (24, 84, 56));
        assert_eq!(m.euler_characteristic(), -4);
        assert!(m.face_sizes().iter().all(|&s| s == 3));
        for v in m.vertex_names().map(str::to_string).collect::<Vec<_>>() {
            assert_eq!(m.vertex_degree(&v).unwrap(), 7);
        }
    }

    #[test]
    fn klein_dual_agrees_with_dualized_triangulation() {
        let direct = klein_dual();
        let via_dual = klein_triangulation().dual().unwrap();
        assert_eq!(via_dual.f_vector(), (56, 84, 24));
        assert!(direct.is_isomorphic(&via_dual));
    }

    #[test]
    fn registry_resolves_all_names() {
        assert!(matches!(by_name("cube"), Ok(Fixture::Map(_))));
        assert!(matches!(by_name("torus:4x5"), Ok(Fixture::Map(_))));
        assert!(matches!(by_name("fig-infinite:4"), Ok(Fixture::Window(_))));
        assert!(matches!(
            by_name("fig-counterexample"),
            Ok(Fixture::Poset(_))
        ));
        assert!(by_name("nonsense").is_err());
        assert!(by_name("torus:2x2").is_err());
    }
}
