//! Complexes and surface maps: simplicial 2-complexes, polygonal maps of
//! closed surfaces, their face posets, and dual maps.
//!
//! A [`PolyMap`] is given purely combinatorially, as faces listed by their
//! cyclic vertex sequences. Validation enforces the closed-surface
//! conditions (every edge in exactly two faces, every vertex link a single
//! cycle, connected) plus the polyhedral-map conditions that two faces meet
//! in at most one edge and every vertex has degree at least three. Under
//! these rules the face poset of any valid map is almost polyhedral and the
//! dual of any valid map is again valid.

pub mod fixtures;
pub mod random;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{Poset, RankFunction};

/// A finite simplicial complex of dimension ≤ 2, closed under subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex2 {
    /// Sorted vertex lists, grouped by dimension (index = cardinality − 1).
    simplices: [BTreeSet<Vec<String>>; 3],
}

impl SimplicialComplex2 {
    /// Builds a complex from any family of simplices (vertex sets of size
    /// 1–3); the downward closure is taken automatically.
    pub fn new<I, S>(simplices: I) -> Result<SimplicialComplex2>
    where
        I: IntoIterator<Item = Vec<S>>,
        S: Into<String>,
    {
        let mut by_dim: [BTreeSet<Vec<String>>; 3] = Default::default();
        for simplex in simplices {
            let mut verts: Vec<String> = simplex.into_iter().map(Into::into).collect();
            verts.sort();
            let before = verts.len();
            verts.dedup();
            if verts.len() != before {
                return Err(Error::InvalidComplex(format!(
                    "repeated vertex in simplex {:?}",
                    verts
                )));
            }
            if verts.is_empty() || verts.len() > 3 {
                return Err(Error::InvalidComplex(format!(
                    "simplex {:?} has {} vertices, expected 1-3",
                    verts,
                    verts.len()
                )));
            }
            by_dim[verts.len() - 1].insert(verts);
        }
        // downward closure
        let triangles: Vec<_> = by_dim[2].iter().cloned().collect();
        for t in triangles {
            for i in 0..3 {
                let mut edge = t.clone();
                edge.remove(i);
                by_dim[1].insert(edge);
            }
        }
        let edges: Vec<_> = by_dim[1].iter().cloned().collect();
        for e in edges {
            for v in &e {
                by_dim[0].insert(vec![v.clone()]);
            }
        }
        Ok(SimplicialComplex2 { simplices: by_dim })
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let raw: Vec<usize> = self.simplices.iter().map(BTreeSet::len).collect();
        let top = raw.iter().rposition(|&c| c > 0).map_or(0, |i| i + 1);
        raw[..top].to_vec()
    }

    pub fn to_json(&self) -> String {
        let doc = SimplicialJson {
            simplices: self
                .simplices
                .iter()
                .flat_map(|level| level.iter().cloned())
                .collect(),
        };
        serde_json::to_string(&doc).expect("complex serialization cannot fail")
    }

    pub fn from_json(text: &str) -> std::result::Result<SimplicialComplex2, String> {
        let doc: SimplicialJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
        SimplicialComplex2::new(doc.simplices).map_err(|e| e.to_string())
    }

    /// Face poset: elements are the simplices (ids: sorted vertices joined
    /// by `|`, with a longer separator if a vertex name contains `|`),
    /// covers are codimension-1 containments, rank is dimension.
    pub fn face_poset(&self) -> Result<(Poset, RankFunction)> {
        let sep = "|".repeat(
            1 + longest_pipe_run(
                self.simplices[0]
                    .iter()
                    .map(|s| s[0].as_str()),
            ),
        );
        let simplex_id = |verts: &[String]| verts.join(&sep);
        let mut elements = Vec::new();
        for dim in 0..3 {
            for s in &self.simplices[dim] {
                elements.push(simplex_id(s));
            }
        }
        let mut covers = Vec::new();
        for dim in 1..3 {
            for s in &self.simplices[dim] {
                for i in 0..s.len() {
                    let mut sub = s.clone();
                    sub.remove(i);
                    covers.push((simplex_id(&sub), simplex_id(s)));
                }
            }
        }
        let poset = Poset::build(elements, covers)?;
        let rf = poset.rank()?;
        Ok((poset, rf))
    }
}

/// A polygonal map of a closed surface: faces as cyclic vertex sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    faces: Vec<Vec<usize>>,
    vertices: Vec<String>,
    /// Unordered endpoint pairs (lo, hi), in first-appearance order.
    edges: Vec<(usize, usize)>,
    edge_index: HashMap<(usize, usize), usize>,
    /// The exactly-two faces of each edge.
    edge_faces: Vec<[usize; 2]>,
    degree: Vec<usize>,
}

/// On-disk form of a map: `{"faces": [["v1","v2",...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapJson {
    pub faces: Vec<Vec<String>>,
}

/// On-disk form of a simplicial complex: `{"simplices": [["a"], ["a","b"], ...]}`.
/// The downward closure is taken on load.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimplicialJson {
    pub simplices: Vec<Vec<String>>,
}

impl PolyMap {
    /// Validates and builds a map. Errors name the violated condition.
    pub fn new<I, F, S>(faces: I) -> Result<PolyMap>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let named: Vec<Vec<String>> = faces
            .into_iter()
            .map(|f| f.into_iter().map(Into::into).collect())
            .collect();
        if named.is_empty() {
            return Err(Error::InvalidMap("map has no faces".into()));
        }

        let mut vertices: Vec<String> = Vec::new();
        let mut vindex: HashMap<String, usize> = HashMap::new();
        let mut faces_idx: Vec<Vec<usize>> = Vec::with_capacity(named.len());
        for (fi, face) in named.iter().enumerate() {
            if face.len() < 3 {
                return Err(Error::InvalidMap(format!(
                    "face {fi} has {} vertices, need at least 3",
                    face.len()
                )));
            }
            let mut seen = BTreeSet::new();
            let mut cycle = Vec::with_capacity(face.len());
            for v in face {
                if !seen.insert(v.clone()) {
                    return Err(Error::InvalidMap(format!("face {fi} repeats vertex `{v}`")));
                }
                let vi = *vindex.entry(v.clone()).or_insert_with(|| {
                    vertices.push(v.clone());
                    vertices.len() - 1
                });
                cycle.push(vi);
            }
            faces_idx.push(cycle);
        }

        // Edge census: every edge must lie in exactly two faces.
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut edge_index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut incident: Vec<Vec<usize>> = Vec::new();
        for (fi, cycle) in faces_idx.iter().enumerate() {
            for k in 0..cycle.len() {
                let a = cycle[k];
                let b = cycle[(k + 1) % cycle.len()];
                let key = (a.min(b), a.max(b));
                let ei = *edge_index.entry(key).or_insert_with(|| {
                    edges.push(key);
                    incident.push(Vec::new());
                    edges.len() - 1
                });
                incident[ei].push(fi);
            }
        }
        let mut edge_faces = Vec::with_capacity(edges.len());
        for (ei, inc) in incident.iter().enumerate() {
            if inc.len() != 2 {
                let (a, b) = edges[ei];
                return Err(Error::InvalidMap(format!(
                    "edge {{{}, {}}} lies in {} face(s), need exactly 2",
                    vertices[a],
                    vertices[b],
                    inc.len()
                )));
            }
            edge_faces.push([inc[0], inc[1]]);
        }

        // Two distinct faces share at most one edge.
        let mut shared: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for ef in &edge_faces {
            let key = (ef[0].min(ef[1]), ef[0].max(ef[1]));
            if ef[0] == ef[1] {
                return Err(Error::InvalidMap(format!(
                    "face {} meets itself across an edge",
                    ef[0]
                )));
            }
            let c = shared.entry(key).or_insert(0);
            *c += 1;
            if *c > 1 {
                return Err(Error::InvalidMap(format!(
                    "faces {} and {} share more than one edge",
                    key.0, key.1
                )));
            }
        }

        let mut degree = vec![0usize; vertices.len()];
        for &(a, b) in &edges {
            degree[a] += 1;
            degree[b] += 1;
        }
        if let Some(v) = (0..vertices.len()).find(|&v| degree[v] < 3) {
            return Err(Error::InvalidMap(format!(
                "vertex `{}` has degree {}, need at least 3",
                vertices[v], degree[v]
            )));
        }

        let map = PolyMap {
            faces: faces_idx,
            vertices,
            edges,
            edge_index,
            edge_faces,
            degree,
        };
        map.check_links()?;
        map.check_connected()?;
        Ok(map)
    }

    /// Link of every vertex must be a single cycle: the corners at `v`
    /// chain into one closed walk through all neighbors of `v`.
    fn check_links(&self) -> Result<()> {
        // corners[v] = arcs (prev, next) contributed by each face containing v
        let mut corners: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.vertices.len()];
        for cycle in &self.faces {
            let n = cycle.len();
            for k in 0..n {
                let v = cycle[k];
                let prev = cycle[(k + n - 1) % n];
                let next = cycle[(k + 1) % n];
                corners[v].push((prev, next));
            }
        }
        for (v, arcs) in corners.iter().enumerate() {
            // slots per neighbor: each must appear in exactly two arcs
            let mut at: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (ai, &(p, q)) in arcs.iter().enumerate() {
                at.entry(p).or_default().push(ai);
                at.entry(q).or_default().push(ai);
            }
            if at.values().any(|l| l.len() != 2) {
                return Err(Error::InvalidMap(format!(
                    "link of vertex `{}` is not a cycle",
                    self.vertices[v]
                )));
            }
            // walk the arc cycle
            let mut visited = vec![false; arcs.len()];
            let mut current_arc = 0usize;
            let mut entry = arcs[0].0;
            let mut steps = 0usize;
            loop {
                visited[current_arc] = true;
                steps += 1;
                let (p, q) = arcs[current_arc];
                let exit = if entry == p { q } else { p };
                let slots = &at[&exit];
                let next_arc = if slots[0] == current_arc {
                    slots[1]
                } else {
                    slots[0]
                };
                if next_arc == 0 && visited[0] {
                    break;
                }
                if visited[next_arc] {
                    // closed early without covering all arcs
                    break;
                }
                entry = exit;
                current_arc = next_arc;
                if steps > arcs.len() {
                    break;
                }
            }
            if steps != arcs.len() || visited.iter().any(|&b| !b) {
                return Err(Error::InvalidMap(format!(
                    "link of vertex `{}` is not a single cycle",
                    self.vertices[v]
                )));
            }
        }
        Ok(())
    }

    fn check_connected(&self) -> Result<()> {
        let n = self.vertices.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidMap(
                "underlying graph is not connected".into(),
            ));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// (vertices, edges, faces)
    pub fn f_vector(&self) -> (usize, usize, usize) {
        (self.vertices.len(), self.edges.len(), self.faces.len())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn vertex_names(&self) -> impl Iterator<Item = &str> {
        self.vertices.iter().map(String::as_str)
    }

    pub fn vertex_degree(&self, v: &str) -> Result<usize> {
        let vi = self
            .vertices
            .iter()
            .position(|name| name == v)
            .ok_or_else(|| Error::UnknownIdentifier(v.to_string()))?;
        Ok(self.degree[vi])
    }

    /// Faces by vertex name, in input order.
    pub fn face_cycles(&self) -> Vec<Vec<String>> {
        self.faces
            .iter()
            .map(|f| f.iter().map(|&v| self.vertices[v].clone()).collect())
            .collect()
    }

    pub fn face_sizes(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn min_face_size(&self) -> usize {
        self.faces.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub(crate) fn faces_idx(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub(crate) fn edge_idx(&self, a: usize, b: usize) -> usize {
        self.edge_index[&(a.min(b), a.max(b))]
    }

    /// Separator for synthesized edge ids: one more `|` than the longest
    /// run of `|` inside any vertex name, so no vertex name can contain it
    /// and edge ids parse unambiguously.
    fn id_separator(&self) -> String {
        "|".repeat(1 + longest_pipe_run(self.vertices.iter().map(String::as_str)))
    }

    /// Prefix for synthesized face ids: the shortest run of `f` that no
    /// vertex name starts with (duals name their vertices `f0`, `f1`, ...).
    fn face_id_prefix(&self) -> String {
        let mut k = 1;
        loop {
            let prefix = "f".repeat(k);
            if !self.vertices.iter().any(|v| v.starts_with(&prefix)) {
                return prefix;
            }
            k += 1;
        }
    }

    fn edge_id(&self, e: usize, sep: &str) -> String {
        let (a, b) = self.edges[e];
        let (a, b) = (&self.vertices[a], &self.vertices[b]);
        if a <= b {
            format!("{a}{sep}{b}")
        } else {
            format!("{b}{sep}{a}")
        }
    }

    /// Face poset with ranks 0/1/2 for vertices/edges/faces. Vertices keep
    /// their names, edges become `u|v` (endpoints sorted), faces become
    /// `f0`, `f1`, ... in input order. When vertex names would collide with
    /// the synthesized ids, the separator and prefix grow (`||`, `ff`, ...)
    /// until they cannot.
    pub fn face_poset(&self) -> (Poset, RankFunction) {
        let sep = self.id_separator();
        let fp = self.face_id_prefix();
        let mut elements: Vec<String> = self.vertices.clone();
        for e in 0..self.edges.len() {
            elements.push(self.edge_id(e, &sep));
        }
        for fi in 0..self.faces.len() {
            elements.push(format!("{fp}{fi}"));
        }
        let mut covers = Vec::new();
        for e in 0..self.edges.len() {
            let (a, b) = self.edges[e];
            covers.push((self.vertices[a].clone(), self.edge_id(e, &sep)));
            covers.push((self.vertices[b].clone(), self.edge_id(e, &sep)));
        }
        for (fi, cycle) in self.faces.iter().enumerate() {
            for k in 0..cycle.len() {
                let a = cycle[k];
                let b = cycle[(k + 1) % cycle.len()];
                let e = self.edge_idx(a, b);
                covers.push((self.edge_id(e, &sep), format!("{fp}{fi}")));
            }
        }
        let poset = Poset::build(elements, covers).expect("face poset of a valid map");
        let rf = poset.rank().expect("face poset is ranked");
        (poset, rf)
    }

    /// The rotational order of faces around each vertex (well defined: the
    /// link of every vertex is a single cycle).
    fn vertex_face_cycles(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.vertices.len());
        for v in 0..self.vertices.len() {
            // faces containing v, keyed by the two edges at the corner
            let mut corner: HashMap<usize, (usize, usize)> = HashMap::new(); // face -> (edge, edge)
            for (fi, cycle) in self.faces.iter().enumerate() {
                let n = cycle.len();
                for k in 0..n {
                    if cycle[k] == v {
                        let e_prev = self.edge_idx(cycle[(k + n - 1) % n], v);
                        let e_next = self.edge_idx(v, cycle[(k + 1) % n]);
                        corner.insert(fi, (e_prev, e_next));
                    }
                }
            }
            let start = *corner.keys().min().unwrap();
            let mut cycle = Vec::with_capacity(corner.len());
            let mut face = start;
            let mut via = corner[&start].1;
            loop {
                cycle.push(face);
                let [f0, f1] = self.edge_faces[via];
                let next = if f0 == face { f1 } else { f0 };
                if next == start {
                    break;
                }
                let (e0, e1) = corner[&next];
                via = if e0 == via { e1 } else { e0 };
                face = next;
            }
            out.push(cycle);
        }
        out
    }

    /// The dual map: one vertex per face, one face per vertex star (in
    /// rotational order). Preserves the edge count and the Euler
    /// characteristic; the dual of the dual is isomorphic to the original.
    pub fn dual(&self) -> Result<PolyMap> {
        let stars = self.vertex_face_cycles();
        let faces: Vec<Vec<String>> = stars
            .into_iter()
            .map(|star| star.into_iter().map(|f| format!("f{f}")).collect())
            .collect();
        PolyMap::new(faces)
    }

    /// Canonical signature of the underlying combinatorial map (flag system
    /// with its three involutions, minimized over all starting flags). Two
    /// maps are isomorphic, up to relabeling and reflection, iff their
    /// signatures are equal.
    pub fn canonical_signature(&self) -> Vec<u32> {
        // flags: (face, position, side); side 0 pairs the corner with its
        // outgoing edge, side 1 with its incoming edge.
        let mut offset = Vec::with_capacity(self.faces.len());
        let mut total = 0usize;
        for f in &self.faces {
            offset.push(total);
            total += f.len();
        }
        let nflags = total * 2;
        let flag = |f: usize, i: usize, s: usize| (offset[f] + i) * 2 + s;

        // appearances of each edge as (face, position)
        let mut appearances: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for (fi, cycle) in self.faces.iter().enumerate() {
            for k in 0..cycle.len() {
                let e = self.edge_idx(cycle[k], cycle[(k + 1) % cycle.len()]);
                appearances.entry(e).or_default().push((fi, k));
            }
        }

        let mut s0 = vec![0u32; nflags];
        let mut s1 = vec![0u32; nflags];
        let mut s2 = vec![0u32; nflags];
        for (fi, cycle) in self.faces.iter().enumerate() {
            let n = cycle.len();
            for k in 0..n {
                let f0 = flag(fi, k, 0);
                let f1 = flag(fi, k, 1);
                // same vertex, same face, other edge
                s1[f0] = f1 as u32;
                s1[f1] = f0 as u32;
                // same edge, same face, other vertex
                let partner = flag(fi, (k + 1) % n, 1);
                s0[f0] = partner as u32;
                s0[partner] = f0 as u32;
                // same vertex, same edge, other face
                for (side, vtx, eidx) in [
                    (
                        0usize,
                        cycle[k],
                        self.edge_idx(cycle[k], cycle[(k + 1) % n]),
                    ),
                    (
                        1usize,
                        cycle[k],
                        self.edge_idx(cycle[(k + n - 1) % n], cycle[k]),
                    ),
                ] {
                    let apps = &appearances[&eidx];
                    let (gf, gk) = if apps[0] == (fi, if side == 0 { k } else { (k + n - 1) % n }) {
                        apps[1]
                    } else {
                        apps[0]
                    };
                    let gcycle = &self.faces[gf];
                    let gn = gcycle.len();
                    let other = if gcycle[gk] == vtx {
                        flag(gf, gk, 0)
                    } else {
                        flag(gf, (gk + 1) % gn, 1)
                    };
                    s2[flag(fi, k, side)] = other as u32;
                }
            }
        }

        let gens = [&s0, &s1, &s2];
        let mut best: Option<Vec<u32>> = None;
        for start in 0..nflags {
            let mut number = vec![u32::MAX; nflags];
            let mut order = Vec::with_capacity(nflags);
            number[start] = 0;
            order.push(start);
            let mut head = 0;
            while head < order.len() {
                let f = order[head];
                head += 1;
                for g in gens {
                    let t = g[f] as usize;
                    if number[t] == u32::MAX {
                        number[t] = order.len() as u32;
                        order.push(t);
                    }
                }
            }
            let mut enc = Vec::with_capacity(nflags * 3);
            for g in gens {
                for &f in &order {
                    enc.push(number[g[f] as usize]);
                }
            }
            if best.as_ref().is_none_or(|b| enc < *b) {
                best = Some(enc);
            }
        }
        best.unwrap_or_default()
    }

    pub fn is_isomorphic(&self, other: &PolyMap) -> bool {
        self.f_vector() == other.f_vector()
            && self.canonical_signature() == other.canonical_signature()
    }

    pub fn to_json(&self) -> String {
        let doc = MapJson {
            faces: self.face_cycles(),
        };
        serde_json::to_string(&doc).expect("map serialization cannot fail")
    }

    pub fn from_json(text: &str) -> std::result::Result<PolyMap, String> {
        let doc: MapJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
        PolyMap::new(doc.faces).map_err(|e| e.to_string())
    }
}

/// Boundary of the 3-simplex: 4 vertices, 6 edges, 4 triangles.
pub fn tetrahedron() -> PolyMap {
    PolyMap::new([
        vec!["v0", "v1", "v2"],
        vec!["v0", "v3", "v1"],
        vec!["v1", "v3", "v2"],
        vec!["v2", "v3", "v0"],
    ])
    .expect("tetrahedron is a valid map")
}

/// The cube surface: 8 vertices, 12 edges, 6 quadrilaterals.
pub fn cube() -> PolyMap {
    PolyMap::new([
        vec!["v0", "v3", "v2", "v1"],
        vec!["v4", "v5", "v6", "v7"],
        vec!["v0", "v1", "v5", "v4"],
        vec!["v1", "v2", "v6", "v5"],
        vec!["v2", "v3", "v7", "v6"],
        vec!["v3", "v0", "v4", "v7"],
    ])
    .expect("cube is a valid map")
}

/// The icosahedron: 12 vertices of degree 5, 30 edges, 20 triangles.
pub fn icosahedron() -> PolyMap {
    let u = |i: usize| format!("v{}", 1 + i % 5);
    let l = |i: usize| format!("v{}", 6 + i % 5);
    let mut faces: Vec<Vec<String>> = Vec::with_capacity(20);
    for i in 0..5 {
        faces.push(vec!["v0".into(), u(i), u(i + 1)]);
        faces.push(vec![u(i), l(i), u(i + 1)]);
        faces.push(vec![l(i), l(i + 1), u(i + 1)]);
        faces.push(vec!["v11".into(), l(i + 1), l(i)]);
    }
    PolyMap::new(faces).expect("icosahedron is a valid map")
}

/// The m×n quadrilateral torus grid (m, n ≥ 3): mn vertices of degree 4,
/// 2mn edges, mn squares, Euler characteristic 0.
pub fn torus_grid(m: usize, n: usize) -> Result<PolyMap> {
    if m < 3 || n < 3 {
        return Err(Error::ParameterOutOfRange(format!(
            "torus grid needs m, n >= 3, got {m}x{n}"
        )));
    }
    let v = |i: usize, j: usize| format!("v{}_{}", i % m, j % n);
    let mut faces = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            faces.push(vec![v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)]);
        }
    }
    PolyMap::new(faces)
}

/// Longest run of consecutive `|` characters over all the given names.
fn longest_pipe_run<'a>(names: impl Iterator<Item = &'a str>) -> usize {
    let mut longest = 0;
    for name in names {
        let mut run = 0;
        for c in name.chars() {
            if c == '|' {
                run += 1;
                longest = longest.max(run);
            } else {
                run = 0;
            }
        }
    }
    longest
}

/// Face poset of a simplicial 2-complex.
pub fn face_poset_of_simplicial(k: &SimplicialComplex2) -> Result<(Poset, RankFunction)> {
    k.face_poset()
}

/// Face poset of a polygonal surface map.
pub fn face_poset_of_map(m: &PolyMap) -> (Poset, RankFunction) {
    m.face_poset()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplicial_closure_and_f_vectors() {
        // single triangle with all faces
        let k = SimplicialComplex2::new(vec![vec!["a", "b", "c"]]).unwrap();
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
        // boundary of the 3-simplex
        let k = SimplicialComplex2::new(vec![
            vec!["a", "b", "c"],
            vec!["a", "b", "d"],
            vec!["a", "c", "d"],
            vec!["b", "c", "d"],
        ])
        .unwrap();
        assert_eq!(k.f_vector(), vec![4, 6, 4]);
        let (p, rf) = k.face_poset().unwrap();
        assert_eq!(rf.f_vector(), vec![4, 6, 4]);
        assert_eq!(p.len(), 14);
        // two triangles sharing an edge
        let k = SimplicialComplex2::new(vec![vec!["a", "b", "c"], vec!["b", "c", "d"]]).unwrap();
        assert_eq!(k.f_vector(), vec![4, 5, 2]);
    }

    #[test]
    fn generator_f_vectors() {
        assert_eq!(tetrahedron().f_vector(), (4, 6, 4));
        assert_eq!(cube().f_vector(), (8, 12, 6));
        assert_eq!(icosahedron().f_vector(), (12, 30, 20));
        assert_eq!(torus_grid(3, 3).unwrap().f_vector(), (9, 18, 9));
        assert_eq!(torus_grid(5, 4).unwrap().f_vector(), (20, 40, 20));
    }

    #[test]
    fn icosahedron_degrees() {
        let ico = icosahedron();
        for v in 0..12 {
            assert_eq!(ico.vertex_degree(&format!("v{v}")).unwrap(), 5);
        }
        assert!(ico.face_sizes().iter().all(|&s| s == 3));
    }

    #[test]
    fn torus_grid_degrees() {
        let t = torus_grid(3, 3).unwrap();
        for name in t.vertex_names().map(str::to_string).collect::<Vec<_>>() {
            assert_eq!(t.vertex_degree(&name).unwrap(), 4);
        }
        assert_eq!(t.euler_characteristic(), 0);
    }

    #[test]
    fn open_surface_rejected() {
        let err = PolyMap::new([vec!["a", "b", "c"]]).unwrap_err();
        assert!(matches!(err, Error::InvalidMap(msg) if msg.contains("1 face")));
    }

    #[test]
    fn pillowcase_rejected() {
        // two triangles glued along their whole boundary share three edges
        let err = PolyMap::new([vec!["a", "b", "c"], vec!["c", "b", "a"]]).unwrap_err();
        assert!(matches!(err, Error::InvalidMap(_)));
    }

    #[test]
    fn face_poset_of_cube() {
        let (p, rf) = cube().face_poset();
        assert_eq!(rf.f_vector(), vec![8, 12, 6]);
        assert_eq!(rf.max_rank(), 2);
        // every edge has two vertices and two faces
        for e in p.elements().filter(|id| id.contains('|')) {
            assert_eq!(p.lower_covers(e).unwrap().len(), 2);
            assert_eq!(p.upper_covers(e).unwrap().len(), 2);
        }
        let _ = rf;
    }

    #[test]
    fn dual_cube_is_octahedron() {
        let d = cube().dual().unwrap();
        assert_eq!(d.f_vector(), (6, 12, 8));
        assert!(d.face_sizes().iter().all(|&s| s == 3));
    }

    #[test]
    fn dual_icosahedron_is_dodecahedron() {
        let d = icosahedron().dual().unwrap();
        assert_eq!(d.f_vector(), (20, 30, 12));
        assert!(d.face_sizes().iter().all(|&s| s == 5));
    }

    #[test]
    fn tetrahedron_self_dual() {
        let t = tetrahedron();
        let d = t.dual().unwrap();
        assert_eq!(d.f_vector(), (4, 6, 4));
        assert!(t.is_isomorphic(&d));
    }

    #[test]
    fn dual_involution() {
        for m in [
            tetrahedron(),
            cube(),
            icosahedron(),
            torus_grid(3, 4).unwrap(),
        ] {
            let dd = m.dual().unwrap().dual().unwrap();
            assert_eq!(m.dual().unwrap().edge_count(), m.edge_count());
            assert_eq!(
                m.dual().unwrap().euler_characteristic(),
                m.euler_characteristic()
            );
            assert!(m.is_isomorphic(&dd), "double dual not isomorphic");
        }
    }

    #[test]
    fn cube_not_isomorphic_to_octahedron() {
        assert!(!cube().is_isomorphic(&cube().dual().unwrap()));
    }

    #[test]
    fn torus_parameter_range() {
        assert!(matches!(
            torus_grid(2, 5),
            Err(Error::ParameterOutOfRange(_))
        ));
    }

    #[test]
    fn map_json_round_trip() {
        let m = cube();
        let back = PolyMap::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn face_poset_of_dual_avoids_id_collisions() {
        // dual vertices are named f0, f1, ...; synthesized face ids must
        // not collide with them
        let octa = cube().dual().unwrap();
        let (p, rf) = octa.face_poset();
        assert_eq!(rf.f_vector(), vec![6, 12, 8]);
        let (p2, rf2) = octa.dual().unwrap().face_poset();
        assert_eq!(rf2.f_vector(), vec![8, 12, 6]);
        assert_eq!(p.len(), 26);
        assert_eq!(p2.len(), 26);
    }

    #[test]
    fn face_poset_with_pipes_in_vertex_names() {
        let m = PolyMap::new([
            vec!["a|b", "c", "d"],
            vec!["a|b", "e", "c"],
            vec!["c", "e", "d"],
            vec!["d", "e", "a|b"],
        ])
        .unwrap();
        let (_, rf) = m.face_poset();
        assert_eq!(rf.f_vector(), vec![4, 6, 4]);
    }
}
