//! Seeded random ensembles: ranked posets of rank 2 for the averaging
//! theorems, and surface triangulations (grown by face subdivisions and
//! mixed by edge flips) for the map lemmas. Generation is deterministic
//! per seed.

use std::collections::{BTreeSet, HashMap};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::PolyMap;
use crate::error::{Error, Result};
use crate::poset::Poset;

/// Cover densities for [`random_ranked_poset`]: the probability of each
/// optional vertex-under-edge cover and edge-under-face cover. Every edge
/// always covers at least one vertex and every face at least one edge.
#[derive(Debug, Clone, Copy)]
pub struct PosetDensity {
    pub vertex_cover: f64,
    pub edge_cover: f64,
}

impl Default for PosetDensity {
    fn default() -> Self {
        PosetDensity {
            vertex_cover: 0.5,
            edge_cover: 0.5,
        }
    }
}

/// A random ranked poset of rank exactly 2 with levels of the given sizes.
/// Every rank-1 element covers ≥ 1 rank-0 element and every rank-2 element
/// covers ≥ 1 rank-1 element, so the output is always a valid Hasse diagram
/// with ranks (vertices, edges, faces).
pub fn random_ranked_poset(
    seed: u64,
    n0: usize,
    n1: usize,
    n2: usize,
    density: PosetDensity,
) -> Result<Poset> {
    if n0 == 0 || n1 == 0 || n2 == 0 {
        return Err(Error::ParameterOutOfRange(
            "level sizes must be at least 1".into(),
        ));
    }
    for p in [density.vertex_cover, density.edge_cover] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ParameterOutOfRange(format!(
                "cover probability {p} outside [0, 1]"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut elements: Vec<String> = Vec::with_capacity(n0 + n1 + n2);
    for i in 0..n0 {
        elements.push(format!("v{i}"));
    }
    for i in 0..n1 {
        elements.push(format!("e{i}"));
    }
    for i in 0..n2 {
        elements.push(format!("f{i}"));
    }
    let mut covers: Vec<(String, String)> = Vec::new();
    for i in 0..n1 {
        let forced = rng.random_range(0..n0);
        for v in 0..n0 {
            if v == forced || rng.random_bool(density.vertex_cover) {
                covers.push((format!("v{v}"), format!("e{i}")));
            }
        }
    }
    for i in 0..n2 {
        let forced = rng.random_range(0..n1);
        for e in 0..n1 {
            if e == forced || rng.random_bool(density.edge_cover) {
                covers.push((format!("e{e}"), format!("f{i}")));
            }
        }
    }
    Poset::build(elements, covers)
}

/// The seed surface a random triangulation grows from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedSurface {
    /// Octahedron (the smallest triangulated sphere with flippable edges).
    Sphere,
    /// Diagonally triangulated 3×3 torus grid.
    Torus,
}

/// A random triangulation of the chosen surface: grown from the seed map by
/// `divisions` random 1→3 face subdivisions, then mixed by `flips` random
/// edge flips (a flip is skipped when it would break map validity). The
/// Euler characteristic and orientability of the seed are preserved.
pub fn random_map(
    seed: u64,
    surface: SeedSurface,
    divisions: usize,
    flips: usize,
) -> Result<PolyMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tri = Triangulation::seed(surface);
    for _ in 0..divisions {
        let f = rng.random_range(0..tri.faces.len());
        tri.subdivide(f);
    }
    for _ in 0..flips {
        let e = rng.random_range(0..tri.edge_list().len());
        tri.try_flip(e);
    }
    tri.into_map()
}

/// Consistently oriented triangulation under construction.
struct Triangulation {
    faces: Vec<[usize; 3]>,
    vertex_count: usize,
}

impl Triangulation {
    fn seed(surface: SeedSurface) -> Triangulation {
        match surface {
            SeedSurface::Sphere => Triangulation {
                // octahedron: poles 0/5, equator 1-2-3-4
                faces: vec![
                    [0, 1, 2],
                    [0, 2, 3],
                    [0, 3, 4],
                    [0, 4, 1],
                    [5, 2, 1],
                    [5, 3, 2],
                    [5, 4, 3],
                    [5, 1, 4],
                ],
                vertex_count: 6,
            },
            SeedSurface::Torus => {
                let m = 3;
                let n = 3;
                let v = |i: usize, j: usize| (i % m) * n + (j % n);
                let mut faces = Vec::with_capacity(2 * m * n);
                for i in 0..m {
                    for j in 0..n {
                        faces.push([v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
                        faces.push([v(i, j), v(i + 1, j + 1), v(i, j + 1)]);
                    }
                }
                Triangulation {
                    faces,
                    vertex_count: m * n,
                }
            }
        }
    }

    /// Sorted list of edges (deterministic between mutations).
    fn edge_list(&self) -> Vec<(usize, usize)> {
        let mut edges = BTreeSet::new();
        for f in &self.faces {
            for k in 0..3 {
                let a = f[k];
                let b = f[(k + 1) % 3];
                edges.insert((a.min(b), a.max(b)));
            }
        }
        edges.into_iter().collect()
    }

    fn edge_faces(&self) -> HashMap<(usize, usize), Vec<usize>> {
        let mut map: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (fi, f) in self.faces.iter().enumerate() {
            for k in 0..3 {
                let a = f[k];
                let b = f[(k + 1) % 3];
                map.entry((a.min(b), a.max(b))).or_default().push(fi);
            }
        }
        map
    }

    fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertex_count];
        for &(a, b) in self.edge_list().iter() {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// 1→3 subdivision: a new vertex inside face `f`.
    fn subdivide(&mut self, f: usize) {
        let [a, b, c] = self.faces[f];
        let w = self.vertex_count;
        self.vertex_count += 1;
        self.faces[f] = [a, b, w];
        self.faces.push([b, c, w]);
        self.faces.push([c, a, w]);
    }

    /// Flips edge `e` (by index into the sorted edge list) when legal:
    /// endpoints keep degree ≥ 3 and the new diagonal is not already an
    /// edge. Returns whether the flip happened.
    fn try_flip(&mut self, e: usize) -> bool {
        let edges = self.edge_list();
        let (u, v) = edges[e];
        let ef = self.edge_faces();
        let inc = &ef[&(u, v)];
        debug_assert_eq!(inc.len(), 2);
        let (t1, t2) = (inc[0], inc[1]);
        // orient so that t1 contains the directed edge u→v
        let (t1, t2) = if has_directed(&self.faces[t1], u, v) {
            (t1, t2)
        } else {
            (t2, t1)
        };
        debug_assert!(has_directed(&self.faces[t1], u, v));
        debug_assert!(has_directed(&self.faces[t2], v, u));
        let a = third(&self.faces[t1], u, v);
        let b = third(&self.faces[t2], u, v);
        if a == b {
            return false;
        }
        if ef.contains_key(&(a.min(b), a.max(b))) {
            return false;
        }
        let deg = self.degrees();
        if deg[u] <= 3 || deg[v] <= 3 {
            return false;
        }
        self.faces[t1] = [a, u, b];
        self.faces[t2] = [b, v, a];
        true
    }

    fn into_map(self) -> Result<PolyMap> {
        let faces: Vec<Vec<String>> = self
            .faces
            .iter()
            .map(|f| f.iter().map(|&v| format!("v{v}")).collect())
            .collect();
        PolyMap::new(faces)
    }
}

fn has_directed(face: &[usize; 3], u: usize, v: usize) -> bool {
    (0..3).any(|k| face[k] == u && face[(k + 1) % 3] == v)
}

fn third(face: &[usize; 3], u: usize, v: usize) -> usize {
    *face.iter().find(|&&x| x != u && x != v).unwrap()
}

/// Derives independent per-instance seeds from a master seed (splitmix64).
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(0x9E37_79B9_7F4A_7C15_u64.wrapping_mul(index.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_generation_is_deterministic() {
        let d = PosetDensity::default();
        let a = random_ranked_poset(7, 4, 6, 3, d).unwrap();
        let b = random_ranked_poset(7, 4, 6, 3, d).unwrap();
        assert_eq!(a, b);
        let c = random_ranked_poset(8, 4, 6, 3, d).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn poset_generation_has_rank_two() {
        for seed in 0..50 {
            let p = random_ranked_poset(seed, 3, 5, 2, PosetDensity::default()).unwrap();
            let rf = p.rank().unwrap();
            assert_eq!(rf.max_rank(), 2);
            assert_eq!(rf.f_vector(), vec![3, 5, 2]);
        }
    }

    #[test]
    fn poset_generation_rejects_bad_params() {
        assert!(random_ranked_poset(1, 0, 1, 1, PosetDensity::default()).is_err());
        let bad = PosetDensity {
            vertex_cover: 1.5,
            edge_cover: 0.5,
        };
        assert!(random_ranked_poset(1, 1, 1, 1, bad).is_err());
    }

    #[test]
    fn map_generation_is_deterministic_and_valid() {
        let a = random_map(11, SeedSurface::Sphere, 6, 20).unwrap();
        let b = random_map(11, SeedSurface::Sphere, 6, 20).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.euler_characteristic(), 2);
    }

    #[test]
    fn flips_preserve_euler_characteristic() {
        for seed in 0..20 {
            let sphere = random_map(seed, SeedSurface::Sphere, 5, 15).unwrap();
            assert_eq!(sphere.euler_characteristic(), 2);
            let torus = random_map(seed, SeedSurface::Torus, 5, 15).unwrap();
            assert_eq!(torus.euler_characteristic(), 0);
        }
    }
}
