//! Finite posets given by their cover relation (Hasse diagram), rank
//! functions, and the local incidence counts every curvature formula is
//! built from.
//!
//! Elements are opaque strings; the order of the `elements` list fixes the
//! iteration order of every report, so identical inputs produce identical
//! outputs. The cover relation is validated on construction: the input must
//! be a genuine Hasse diagram (acyclic, and with no pair that shortcuts a
//! longer path). Inputs with transitively redundant pairs are rejected, not
//! repaired, so level sizes and counts are never silently altered.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite poset represented by its Hasse diagram.
///
/// All values are immutable after construction; every operation is a pure
/// function of its inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    /// `upper[i]` lists j with element i ≺ element j, sorted.
    upper: Vec<Vec<usize>>,
    /// `lower[i]` lists j with element j ≺ element i, sorted.
    lower: Vec<Vec<usize>>,
}

/// The unique rank function of a ranked poset: minimal elements have rank 0
/// and covers raise rank by exactly one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankFunction {
    ranks: Vec<usize>,
    max_rank: usize,
    /// Element indices grouped by rank, each group in element order.
    levels: Vec<Vec<usize>>,
}

/// Local incidence counts at one element `x` of rank i:
/// `a` upper covers, `b` lower covers, `u = Σ_{y ≻ x} B(y)`,
/// `d = Σ_{z ≺ x} A(z)`, and `n` the number of parallel neighbors
/// (symmetric difference of the two same-rank neighbor sets).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LocalCounts {
    pub a: usize,
    pub b: usize,
    pub u: usize,
    pub d: usize,
    pub n: usize,
}

/// The two same-rank neighbor sets behind `N`: elements sharing an upper
/// cover with `x` and elements sharing a lower cover with `x`, with `x`
/// itself excluded from both before the symmetric difference is taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelNeighbors {
    pub shared_upper: BTreeSet<String>,
    pub shared_lower: BTreeSet<String>,
    pub count: usize,
}

/// One side-by-side equality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub lhs: u64,
    pub rhs: u64,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// The three counting identities at rank i:
/// `Σ A_i = Σ B_{i+1}`, `Σ U_i = Σ B_{i+1}²`, `Σ D_i = Σ A_{i-1}²`.
/// Sums over absent levels are zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountingIdentities {
    pub rank: usize,
    pub covers: IdentityCheck,
    pub upward: IdentityCheck,
    pub downward: IdentityCheck,
}

impl CountingIdentities {
    pub fn all_hold(&self) -> bool {
        self.covers.holds() && self.upward.holds() && self.downward.holds()
    }
}

/// On-disk form of a poset: `{"elements": [...], "covers": [["lower","upper"], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl Poset {
    /// Builds and validates a poset from an element list and cover pairs.
    ///
    /// Rejects duplicate elements, covers naming unknown elements, self
    /// covers, cycles, and pairs that are not covers of the induced order
    /// (a directed path of length ≥ 2 from lower to upper already exists).
    pub fn build<I, C, S, T>(elements: I, covers: C) -> Result<Poset>
    where
        I: IntoIterator<Item = S>,
        C: IntoIterator<Item = (T, T)>,
        S: Into<String>,
        T: AsRef<str>,
    {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(elements.len());
        for (i, id) in elements.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateElement(id.clone()));
            }
        }

        let n = elements.len();
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for (lo, hi) in covers {
            let (lo, hi) = (lo.as_ref(), hi.as_ref());
            let li = *index
                .get(lo)
                .ok_or_else(|| Error::UnknownIdentifier(lo.to_string()))?;
            let hi_i = *index
                .get(hi)
                .ok_or_else(|| Error::UnknownIdentifier(hi.to_string()))?;
            if li == hi_i {
                return Err(Error::SelfCover(lo.to_string()));
            }
            // covers form a set: repeated pairs collapse
            if seen.insert((li, hi_i)) {
                upper[li].push(hi_i);
                lower[hi_i].push(li);
            }
        }
        for adj in upper.iter_mut().chain(lower.iter_mut()) {
            adj.sort_unstable();
        }

        let poset = Poset {
            elements,
            index,
            upper,
            lower,
        };
        poset.check_acyclic()?;
        poset.check_hasse()?;
        Ok(poset)
    }

    fn check_acyclic(&self) -> Result<()> {
        // Kahn's algorithm; leftovers witness a cycle.
        let n = self.len();
        let mut indeg: Vec<usize> = self.lower.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut visited = 0usize;
        while let Some(i) = queue.pop_front() {
            visited += 1;
            for &j in &self.upper[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    queue.push_back(j);
                }
            }
        }
        if visited != n {
            let witness = (0..n).find(|&i| indeg[i] > 0).unwrap();
            return Err(Error::CycleDetected(self.elements[witness].clone()));
        }
        Ok(())
    }

    fn check_hasse(&self) -> Result<()> {
        // (a, b) is redundant iff b is reachable from some upper cover of a
        // other than b itself.
        for a in 0..self.len() {
            for &b in &self.upper[a] {
                for &c in &self.upper[a] {
                    if c != b && self.reachable(c, b) {
                        return Err(Error::NotACover {
                            lower: self.elements[a].clone(),
                            upper: self.elements[b].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn reachable(&self, from: usize, to: usize) -> bool {
        if from == to {
            return true;
        }
        let mut stack = vec![from];
        let mut seen = vec![false; self.len()];
        seen[from] = true;
        while let Some(i) = stack.pop() {
            for &j in &self.upper[i] {
                if j == to {
                    return true;
                }
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        false
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = &str> {
        self.elements.iter().map(String::as_str)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    /// All cover pairs (lower, upper) in element order.
    pub fn cover_pairs(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (i, ups) in self.upper.iter().enumerate() {
            for &j in ups {
                out.push((self.elements[i].clone(), self.elements[j].clone()));
            }
        }
        out
    }

    pub fn upper_covers(&self, id: &str) -> Result<Vec<&str>> {
        let i = self.idx(id)?;
        Ok(self.upper[i]
            .iter()
            .map(|&j| self.elements[j].as_str())
            .collect())
    }

    pub fn lower_covers(&self, id: &str) -> Result<Vec<&str>> {
        let i = self.idx(id)?;
        Ok(self.lower[i]
            .iter()
            .map(|&j| self.elements[j].as_str())
            .collect())
    }

    /// Finite posets are covering-finite by construction.
    pub fn is_covering_finite(&self) -> bool {
        true
    }

    pub(crate) fn idx(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownIdentifier(id.to_string()))
    }

    pub(crate) fn id(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub(crate) fn upper_idx(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    pub(crate) fn lower_idx(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    /// Computes the unique rank function, or reports the element at which
    /// rank propagation from the minimal elements conflicts.
    pub fn rank(&self) -> Result<RankFunction> {
        let n = self.len();
        let mut ranks: Vec<Option<usize>> = vec![None; n];
        let mut indeg: Vec<usize> = self.lower.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = VecDeque::new();
        for i in 0..n {
            if indeg[i] == 0 {
                ranks[i] = Some(0);
                queue.push_back(i);
            }
        }
        while let Some(i) = queue.pop_front() {
            let r = ranks[i].unwrap();
            for &j in &self.upper[i] {
                match ranks[j] {
                    None => ranks[j] = Some(r + 1),
                    Some(existing) if existing != r + 1 => {
                        return Err(Error::NotRanked {
                            witness: self.elements[j].clone(),
                        })
                    }
                    Some(_) => {}
                }
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    queue.push_back(j);
                }
            }
        }
        let ranks: Vec<usize> = ranks.into_iter().map(Option::unwrap).collect();
        let max_rank = ranks.iter().copied().max().unwrap_or(0);
        let mut levels = vec![Vec::new(); if n == 0 { 0 } else { max_rank + 1 }];
        for (i, &r) in ranks.iter().enumerate() {
            levels[r].push(i);
        }
        Ok(RankFunction {
            ranks,
            max_rank,
            levels,
        })
    }

    /// Order relation a ≤ b (reflexive, via the transitive closure of covers).
    pub fn leq(&self, a: &str, b: &str) -> Result<bool> {
        let ai = self.idx(a)?;
        let bi = self.idx(b)?;
        Ok(self.reachable(ai, bi))
    }

    /// Cardinality of the closed interval [a, b]; errors if a ≰ b.
    pub fn interval_cardinality(&self, a: &str, b: &str) -> Result<usize> {
        let ai = self.idx(a)?;
        let bi = self.idx(b)?;
        if !self.reachable(ai, bi) {
            return Err(Error::NotComparable {
                a: a.to_string(),
                b: b.to_string(),
            });
        }
        Ok(self.interval_idx(ai, bi).len())
    }

    /// Indices of all x with a ≤ x ≤ b (assumes a ≤ b).
    pub(crate) fn interval_idx(&self, a: usize, b: usize) -> Vec<usize> {
        let up = self.reach_set(a, true);
        let down = self.reach_set(b, false);
        (0..self.len()).filter(|&i| up[i] && down[i]).collect()
    }

    fn reach_set(&self, from: usize, upward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        seen[from] = true;
        let mut stack = vec![from];
        while let Some(i) = stack.pop() {
            let next = if upward {
                &self.upper[i]
            } else {
                &self.lower[i]
            };
            for &j in next {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen
    }

    /// Local counts at `x`. `n` follows the parallel-neighbor convention of
    /// [`Poset::parallel_neighbors`].
    pub fn local_counts(&self, rf: &RankFunction, x: &str) -> Result<LocalCounts> {
        let i = self.idx(x)?;
        rf.check(self);
        Ok(self.local_counts_idx(rf, i))
    }

    pub(crate) fn local_counts_idx(&self, rf: &RankFunction, i: usize) -> LocalCounts {
        let a = self.upper[i].len();
        let b = self.lower[i].len();
        let u = self.upper[i].iter().map(|&y| self.lower[y].len()).sum();
        let d = self.lower[i].iter().map(|&z| self.upper[z].len()).sum();
        let n = self.parallel_count_idx(rf, i);
        LocalCounts { a, b, u, d, n }
    }

    fn neighbor_sets_idx(&self, i: usize) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let mut via_upper = BTreeSet::new();
        for &y in &self.upper[i] {
            for &w in &self.lower[y] {
                if w != i {
                    via_upper.insert(w);
                }
            }
        }
        let mut via_lower = BTreeSet::new();
        for &z in &self.lower[i] {
            for &w in &self.upper[z] {
                if w != i {
                    via_lower.insert(w);
                }
            }
        }
        (via_upper, via_lower)
    }

    pub(crate) fn parallel_count_idx(&self, _rf: &RankFunction, i: usize) -> usize {
        let (up, down) = self.neighbor_sets_idx(i);
        up.symmetric_difference(&down).count()
    }

    /// The two neighbor sets of `x` (same-rank elements sharing an upper
    /// cover, resp. a lower cover, with `x`) and the size of their symmetric
    /// difference. `x` is excluded from both sets.
    pub fn parallel_neighbors(&self, rf: &RankFunction, x: &str) -> Result<ParallelNeighbors> {
        let i = self.idx(x)?;
        rf.check(self);
        let (up, down) = self.neighbor_sets_idx(i);
        let count = up.symmetric_difference(&down).count();
        Ok(ParallelNeighbors {
            shared_upper: up.iter().map(|&w| self.elements[w].clone()).collect(),
            shared_lower: down.iter().map(|&w| self.elements[w].clone()).collect(),
            count,
        })
    }

    /// Evaluates the three counting identities at rank `i`.
    pub fn counting_identities(&self, rf: &RankFunction, i: usize) -> CountingIdentities {
        rf.check(self);
        let level = |r: usize| -> &[usize] {
            if r < rf.levels.len() {
                &rf.levels[r]
            } else {
                &[]
            }
        };
        let this = level(i);
        let above = level(i + 1);
        let below = if i == 0 { &[][..] } else { level(i - 1) };

        let sum_a: u64 = this.iter().map(|&x| self.upper[x].len() as u64).sum();
        let sum_b_above: u64 = above.iter().map(|&y| self.lower[y].len() as u64).sum();
        let sum_u: u64 = this
            .iter()
            .map(|&x| {
                self.upper[x]
                    .iter()
                    .map(|&y| self.lower[y].len() as u64)
                    .sum::<u64>()
            })
            .sum();
        let sum_b_sq: u64 = above
            .iter()
            .map(|&y| {
                let b = self.lower[y].len() as u64;
                b * b
            })
            .sum();
        let sum_d: u64 = this
            .iter()
            .map(|&x| {
                self.lower[x]
                    .iter()
                    .map(|&z| self.upper[z].len() as u64)
                    .sum::<u64>()
            })
            .sum();
        let sum_a_sq: u64 = below
            .iter()
            .map(|&z| {
                let a = self.upper[z].len() as u64;
                a * a
            })
            .sum();

        CountingIdentities {
            rank: i,
            covers: IdentityCheck {
                lhs: sum_a,
                rhs: sum_b_above,
            },
            upward: IdentityCheck {
                lhs: sum_u,
                rhs: sum_b_sq,
            },
            downward: IdentityCheck {
                lhs: sum_d,
                rhs: sum_a_sq,
            },
        }
    }

    pub fn to_json(&self) -> String {
        let doc = PosetJson {
            elements: self.elements.clone(),
            covers: self.cover_pairs(),
        };
        serde_json::to_string(&doc).expect("poset serialization cannot fail")
    }

    pub fn from_json(text: &str) -> std::result::Result<Poset, String> {
        let doc: PosetJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
        Poset::build(doc.elements, doc.covers).map_err(|e| e.to_string())
    }
}

impl RankFunction {
    pub fn max_rank(&self) -> usize {
        self.max_rank
    }

    pub fn rank_of(&self, poset: &Poset, id: &str) -> Result<usize> {
        self.check(poset);
        Ok(self.ranks[poset.idx(id)?])
    }

    pub(crate) fn rank_idx(&self, i: usize) -> usize {
        self.ranks[i]
    }

    /// Element indices of rank `r`, in element order.
    pub(crate) fn level_idx(&self, r: usize) -> &[usize] {
        if r < self.levels.len() {
            &self.levels[r]
        } else {
            &[]
        }
    }

    /// Elements partitioned by rank.
    pub fn level_sets<'p>(&self, poset: &'p Poset) -> Vec<Vec<&'p str>> {
        self.check(poset);
        self.levels
            .iter()
            .map(|lvl| lvl.iter().map(|&i| poset.id(i)).collect())
            .collect()
    }

    /// Level sizes `(p₀, p₁, ..., p_r)`; empty for the empty poset.
    pub fn f_vector(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    fn check(&self, poset: &Poset) {
        assert_eq!(
            self.ranks.len(),
            poset.len(),
            "rank function used with a different poset"
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain2() -> Poset {
        Poset::build(["v", "e"], [("v", "e")]).unwrap()
    }

    #[test]
    fn empty_poset() {
        let p = Poset::build(Vec::<String>::new(), Vec::<(String, String)>::new()).unwrap();
        assert!(p.is_empty());
        let rf = p.rank().unwrap();
        assert!(rf.f_vector().is_empty());
        assert!(rf.level_sets(&p).is_empty());
    }

    #[test]
    fn two_chain() {
        let p = chain2();
        let rf = p.rank().unwrap();
        assert_eq!(rf.rank_of(&p, "v").unwrap(), 0);
        assert_eq!(rf.rank_of(&p, "e").unwrap(), 1);
        assert_eq!(rf.max_rank(), 1);
    }

    #[test]
    fn duplicate_element_rejected() {
        let err = Poset::build(["a", "a"], Vec::<(String, String)>::new()).unwrap_err();
        assert_eq!(err, Error::DuplicateElement("a".into()));
    }

    #[test]
    fn unknown_identifier_rejected() {
        let err = Poset::build(["a"], [("a", "b")]).unwrap_err();
        assert_eq!(err, Error::UnknownIdentifier("b".into()));
    }

    #[test]
    fn self_cover_rejected() {
        let err = Poset::build(["a"], [("a", "a")]).unwrap_err();
        assert_eq!(err, Error::SelfCover("a".into()));
    }

    #[test]
    fn cycle_rejected() {
        let err = Poset::build(["a", "b"], [("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, Error::CycleDetected(_)));
    }

    #[test]
    fn transitive_shortcut_rejected() {
        let err = Poset::build(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")]).unwrap_err();
        assert_eq!(
            err,
            Error::NotACover {
                lower: "a".into(),
                upper: "c".into()
            }
        );
    }

    #[test]
    fn rank_conflict_detected() {
        // w is minimal (rank 0) but also covered by the rank-2 element.
        let p = Poset::build(
            ["v", "e1", "s", "w"],
            [("v", "e1"), ("e1", "s"), ("w", "s")],
        )
        .unwrap();
        let err = p.rank().unwrap_err();
        assert_eq!(
            err,
            Error::NotRanked {
                witness: "s".into()
            }
        );
    }

    #[test]
    fn triangle_face_poset_ranks() {
        let p = Poset::build(
            ["a", "b", "c", "ab", "bc", "ca", "f"],
            [
                ("a", "ab"),
                ("b", "ab"),
                ("b", "bc"),
                ("c", "bc"),
                ("c", "ca"),
                ("a", "ca"),
                ("ab", "f"),
                ("bc", "f"),
                ("ca", "f"),
            ],
        )
        .unwrap();
        let rf = p.rank().unwrap();
        assert_eq!(rf.max_rank(), 2);
        assert_eq!(rf.f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn rank_is_idempotent_and_unique() {
        let p = chain2();
        let r1 = p.rank().unwrap();
        let r2 = p.rank().unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn empty_sum_convention() {
        let p = chain2();
        let rf = p.rank().unwrap();
        let top = p.local_counts(&rf, "e").unwrap();
        assert_eq!(top.a, 0);
        assert_eq!(top.u, 0);
        assert_eq!(top.b, 1);
        let bottom = p.parallel_neighbors(&rf, "v").unwrap();
        assert!(bottom.shared_upper.is_empty());
        assert!(bottom.shared_lower.is_empty());
        assert_eq!(bottom.count, 0);
    }

    #[test]
    fn interval_reflexive() {
        let p = chain2();
        assert_eq!(p.interval_cardinality("v", "v").unwrap(), 1);
        assert_eq!(p.interval_cardinality("v", "e").unwrap(), 2);
        let err = p.interval_cardinality("e", "v").unwrap_err();
        assert!(matches!(err, Error::NotComparable { .. }));
    }

    #[test]
    fn cube_local_counts() {
        let (p, rf) = crate::complex::cube().face_poset();
        let edge = p
            .elements()
            .find(|id| id.contains('|'))
            .unwrap()
            .to_string();
        let c = p.local_counts(&rf, &edge).unwrap();
        assert_eq!((c.a, c.b, c.u, c.d), (2, 2, 8, 6));
        // every quad face covers four edges
        for f in p.elements().filter(|id| id.starts_with('f')) {
            assert_eq!(p.lower_covers(f).unwrap().len(), 4);
        }
        // vertex below a face: the interval holds the vertex, two edges, the face
        assert_eq!(p.interval_cardinality("v0", "f0").unwrap(), 4);
    }

    #[test]
    fn tetrahedron_vertex_counts_and_neighbors() {
        let (p, rf) = crate::complex::tetrahedron().face_poset();
        let c = p.local_counts(&rf, "v0").unwrap();
        assert_eq!((c.a, c.b, c.u, c.d), (3, 0, 6, 0));
        // an edge's two neighbor sets coincide: the four adjacent edges
        let edge = p
            .elements()
            .find(|id| id.contains('|'))
            .unwrap()
            .to_string();
        let pn = p.parallel_neighbors(&rf, &edge).unwrap();
        assert_eq!(pn.shared_upper.len(), 4);
        assert_eq!(pn.shared_upper, pn.shared_lower);
        assert_eq!(pn.count, 0);
    }

    #[test]
    fn icosahedron_edge_counts() {
        let (p, rf) = crate::complex::icosahedron().face_poset();
        for e in p.elements().filter(|id| id.contains('|')) {
            let c = p.local_counts(&rf, e).unwrap();
            assert_eq!((c.u, c.d), (6, 10));
        }
    }

    #[test]
    fn counting_identity_values() {
        let (p, rf) = crate::complex::cube().face_poset();
        let ids = p.counting_identities(&rf, 1);
        assert_eq!(ids.covers.lhs, 24);
        assert_eq!(ids.covers.rhs, 24);
        assert!(ids.all_hold());
        let (p, rf) = crate::complex::tetrahedron().face_poset();
        let ids = p.counting_identities(&rf, 1);
        assert_eq!(ids.upward.lhs, 36);
        assert_eq!(ids.upward.rhs, 36);
        assert!(ids.all_hold());
    }

    #[test]
    fn identities_hold_on_empty() {
        let p = Poset::build(Vec::<String>::new(), Vec::<(String, String)>::new()).unwrap();
        let rf = p.rank().unwrap();
        for i in 0..3 {
            let ids = p.counting_identities(&rf, i);
            assert!(ids.all_hold());
            assert_eq!(ids.covers.lhs, 0);
        }
    }

    #[test]
    fn poset_json_round_trip() {
        let p = chain2();
        let js = p.to_json();
        let back = Poset::from_json(&js).unwrap();
        assert_eq!(back, p);
    }
}
