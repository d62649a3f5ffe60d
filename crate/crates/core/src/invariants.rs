//! Euler characteristics, theorem verifiers, and structural classifiers.
//!
//! Two Euler characteristics live here: the ranked one (alternating sum of
//! level sizes) and the order-complex one (alternating sum of chain
//! counts). They agree on face posets of regular CW complexes but not in
//! general. The verifiers evaluate both sides of each identity exactly and
//! return them, never just a boolean, so a failed verification is
//! diagnosable.

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::complex::PolyMap;
use crate::curvature;
use crate::error::{Error, Result};
use crate::poset::{Poset, RankFunction};
use crate::rational::Rational;

/// Ranked Euler characteristic: `Σ (−1)^i · p_(i)`.
pub fn ranked_euler_char(rf: &RankFunction) -> i64 {
    rf.f_vector()
        .iter()
        .enumerate()
        .map(|(i, &count)| {
            if i % 2 == 0 {
                count as i64
            } else {
                -(count as i64)
            }
        })
        .sum()
}

/// The order complex of a poset: one simplex per nonempty chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderComplex {
    /// `simplices_by_dim[d]` lists the chains of cardinality d+1, each as
    /// an ascending chain of element ids.
    pub simplices_by_dim: Vec<Vec<Vec<String>>>,
}

impl OrderComplex {
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices_by_dim.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &count)| {
                if d % 2 == 0 {
                    count as i64
                } else {
                    -(count as i64)
                }
            })
            .sum()
    }
}

/// Materializes the order complex by chain enumeration.
pub fn order_complex(poset: &Poset) -> OrderComplex {
    let n = poset.len();
    let below = strict_down_sets(poset);
    let mut by_dim: Vec<Vec<Vec<String>>> = Vec::new();
    // depth-first extension of chains downward from their maximum
    let mut stack: Vec<usize> = Vec::new();
    for top in 0..n {
        extend_chain(poset, &below, top, &mut stack, &mut by_dim);
    }
    for level in &mut by_dim {
        level.sort();
    }
    OrderComplex {
        simplices_by_dim: by_dim,
    }
}

fn extend_chain(
    poset: &Poset,
    below: &[Vec<u64>],
    current: usize,
    stack: &mut Vec<usize>,
    by_dim: &mut Vec<Vec<Vec<String>>>,
) {
    stack.push(current);
    let dim = stack.len() - 1;
    if by_dim.len() <= dim {
        by_dim.push(Vec::new());
    }
    let chain: Vec<String> = stack
        .iter()
        .rev()
        .map(|&i| poset.id(i).to_string())
        .collect();
    by_dim[dim].push(chain);
    for next in bits(&below[current]) {
        extend_chain(poset, below, next, stack, by_dim);
    }
    stack.pop();
}

/// Order-complex Euler characteristic by dynamic programming over chain
/// counts, without materializing simplices.
pub fn order_complex_euler(poset: &Poset) -> i64 {
    let n = poset.len();
    if n == 0 {
        return 0;
    }
    let below = strict_down_sets(poset);
    // chains_ending[i] = signed count Σ_L (−1)^(L−1) · #chains of length L with max i
    // computed as 1 − Σ_{j < i} chains_ending[j]
    let order = topo_order(poset);
    let mut signed = vec![0i64; n];
    let mut chi = 0i64;
    for &i in &order {
        let mut acc = 1i64;
        for j in bits(&below[i]) {
            acc -= signed[j];
        }
        signed[i] = acc;
        chi += acc;
    }
    chi
}

fn topo_order(poset: &Poset) -> Vec<usize> {
    let n = poset.len();
    let mut indeg: Vec<usize> = (0..n).map(|i| poset.lower_idx(i).len()).collect();
    let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    let mut head = 0;
    while head < queue.len() {
        let i = queue[head];
        head += 1;
        order.push(i);
        for &j in poset.upper_idx(i) {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                queue.push(j);
            }
        }
    }
    order
}

/// Bitset of the elements strictly below each element.
fn strict_down_sets(poset: &Poset) -> Vec<Vec<u64>> {
    let n = poset.len();
    let words = n.div_ceil(64);
    let mut below = vec![vec![0u64; words]; n];
    for &i in &topo_order(poset) {
        let mut acc = vec![0u64; words];
        for &z in poset.lower_idx(i) {
            acc[z / 64] |= 1 << (z % 64);
            for (w, b) in acc.iter_mut().zip(&below[z]) {
                *w |= b;
            }
        }
        below[i] = acc;
    }
    below
}

fn bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        let mut word = word;
        std::iter::from_fn(move || {
            if word == 0 {
                None
            } else {
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            }
        })
    })
}

/// Both sides of a verified identity, exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub theorem: String,
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
    pub witnesses: Vec<String>,
}

impl Verification {
    fn new(theorem: &str, lhs: Rational, rhs: Rational) -> Verification {
        Verification {
            theorem: theorem.to_string(),
            lhs,
            rhs,
            holds: lhs == rhs,
            witnesses: Vec::new(),
        }
    }
}

fn require_rank_at_most_2(rf: &RankFunction) -> Result<()> {
    if rf.max_rank() > 2 {
        return Err(Error::WrongPosetRank {
            expected: 2,
            actual: rf.max_rank(),
        });
    }
    Ok(())
}

fn curvature_sums(poset: &Poset, rf: &RankFunction) -> (Rational, Rational, Rational) {
    let mut s0 = Rational::ZERO;
    for &v in rf.level_idx(0) {
        let a = Rational::from(poset.upper_idx(v).len());
        s0 += Rational::from(1) + Rational::new(3, 2) * a - a * a;
    }
    let mut s1 = Rational::ZERO;
    for &e in rf.level_idx(1) {
        let c = poset.local_counts_idx(rf, e);
        s1 += Rational::from(1)
            + Rational::from(6) * Rational::from(c.a)
            + Rational::new(3, 2) * Rational::from(c.b)
            - Rational::from(c.u)
            - Rational::from(c.d);
    }
    let mut s2 = Rational::ZERO;
    for &s in rf.level_idx(2) {
        let b = Rational::from(poset.lower_idx(s).len());
        s2 += Rational::from(1) + Rational::from(6) * b - b * b;
    }
    (s0, s1, s2)
}

/// Gauss–Bonnet for the rank-indexed curvatures:
/// `Σ R0 − Σ R1 + Σ R2 = χ_gr`, an exact identity on every finite ranked
/// poset of rank ≤ 2.
pub fn verify_gauss_bonnet(poset: &Poset, rf: &RankFunction) -> Result<Verification> {
    require_rank_at_most_2(rf)?;
    let (s0, s1, s2) = curvature_sums(poset, rf);
    Ok(Verification::new(
        "gauss-bonnet",
        s0 - s1 + s2,
        Rational::from(ranked_euler_char(rf)),
    ))
}

/// Gauss–Bonnet with the edge Ricci curvature in place of R1, valid on
/// almost polyhedral posets (where R1 and Ric agree edgewise).
pub fn verify_gauss_bonnet_ric(poset: &Poset, rf: &RankFunction) -> Result<Verification> {
    let class = is_almost_polyhedral(poset, rf)?;
    if !class.verdict {
        let first = class
            .witnesses
            .first()
            .map(|w| w.describe())
            .unwrap_or_default();
        return Err(Error::NotAlmostPolyhedral(first));
    }
    let (s0, _, s2) = curvature_sums(poset, rf);
    let mut ric_sum = 0i64;
    for &e in rf.level_idx(1) {
        let c = poset.local_counts_idx(rf, e);
        ric_sum += c.a as i64 + c.b as i64 - c.n as i64;
    }
    Ok(Verification::new(
        "gauss-bonnet-ric",
        s0 - Rational::from(ric_sum) + s2,
        Rational::from(ranked_euler_char(rf)),
    ))
}

/// Stone's Gauss–Bonnet on a polyhedral surface: `Σ_v R*(v) = 2χ`.
pub fn verify_stone_gauss_bonnet(map: &PolyMap) -> Result<Verification> {
    let (poset, rf) = map.face_poset();
    let mut sum = Rational::ZERO;
    for v in map.vertex_names() {
        sum += curvature::stone_star_surface(&poset, &rf, v)?;
    }
    Ok(Verification::new(
        "gauss-bonnet-stone",
        sum,
        Rational::from(2 * map.euler_characteristic()),
    ))
}

/// One violation found by a classifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionWitness {
    pub condition: String,
    pub elements: Vec<String>,
    pub detail: String,
}

impl ConditionWitness {
    pub fn describe(&self) -> String {
        format!(
            "condition ({}) fails at [{}]: {}",
            self.condition,
            self.elements.join(", "),
            self.detail
        )
    }
}

/// Outcome of a named predicate with every violation it found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    pub predicate: String,
    pub verdict: bool,
    pub witnesses: Vec<ConditionWitness>,
}

impl ClassificationResult {
    fn from_witnesses(predicate: &str, witnesses: Vec<ConditionWitness>) -> ClassificationResult {
        ClassificationResult {
            predicate: predicate.to_string(),
            verdict: witnesses.is_empty(),
            witnesses,
        }
    }
}

fn require_rank_2(rf: &RankFunction) -> Result<()> {
    if rf.max_rank() != 2 {
        return Err(Error::WrongPosetRank {
            expected: 2,
            actual: rf.max_rank(),
        });
    }
    Ok(())
}

/// Pairs of same-level elements sharing ≥ 2 covers on the given side, found
/// by indexing shared covers per element rather than scanning all pairs.
fn pairs_sharing_two<F>(level: &[usize], neighbors: F) -> Vec<(usize, usize, usize)>
where
    F: Fn(usize) -> Vec<usize>,
{
    let mut shared: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut member: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &x in level {
        for c in neighbors(x) {
            member.entry(c).or_default().push(x);
        }
    }
    for group in member.values() {
        for i in 0..group.len() {
            for j in i + 1..group.len() {
                *shared.entry((group[i], group[j])).or_insert(0) += 1;
            }
        }
    }
    shared
        .into_iter()
        .filter(|&(_, count)| count >= 2)
        .map(|((a, b), count)| (a, b, count))
        .collect()
}

/// The almost-polyhedral conditions on a ranked poset of rank 2:
/// (1) every rank-1 element has exactly two lower covers;
/// (2) two rank-1 elements share at most one lower cover;
/// (3) two rank-1 elements share at most one upper cover;
/// (4) every interval from a rank-0 to a rank-2 element has cardinality 4.
pub fn is_almost_polyhedral(poset: &Poset, rf: &RankFunction) -> Result<ClassificationResult> {
    require_rank_2(rf)?;
    let mut witnesses = Vec::new();
    for &e in rf.level_idx(1) {
        let b = poset.lower_idx(e).len();
        if b != 2 {
            witnesses.push(ConditionWitness {
                condition: "1".into(),
                elements: vec![poset.id(e).to_string()],
                detail: format!("B1 = {b}, expected 2"),
            });
        }
    }
    for (a, b, count) in pairs_sharing_two(rf.level_idx(1), |x| poset.lower_idx(x).to_vec()) {
        witnesses.push(ConditionWitness {
            condition: "2".into(),
            elements: vec![poset.id(a).to_string(), poset.id(b).to_string()],
            detail: format!("{count} shared lower covers, expected at most 1"),
        });
    }
    for (a, b, count) in pairs_sharing_two(rf.level_idx(1), |x| poset.upper_idx(x).to_vec()) {
        witnesses.push(ConditionWitness {
            condition: "3".into(),
            elements: vec![poset.id(a).to_string(), poset.id(b).to_string()],
            detail: format!("{count} shared upper covers, expected at most 1"),
        });
    }
    // edges between each comparable (vertex, face) pair; the interval
    // [w, τ] is {w, τ} plus exactly those edges
    let mut between: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &s in rf.level_idx(2) {
        for &e in poset.lower_idx(s) {
            for &w in poset.lower_idx(e) {
                *between.entry((w, s)).or_insert(0) += 1;
            }
        }
    }
    for ((w, s), count) in between {
        if count != 2 {
            witnesses.push(ConditionWitness {
                condition: "4".into(),
                elements: vec![poset.id(w).to_string(), poset.id(s).to_string()],
                detail: format!("interval has cardinality {}, expected 4", count + 2),
            });
        }
    }
    Ok(ClassificationResult::from_witnesses(
        "almost-polyhedral",
        witnesses,
    ))
}

/// Recognizes face posets of closed-surface maps: every rank-1 element has
/// exactly two lower and two upper covers, every vertex-face interval has
/// cardinality 4, every vertex link is a single cycle, and the Hasse
/// diagram is connected.
pub fn is_polyhedral_map_poset(poset: &Poset, rf: &RankFunction) -> Result<ClassificationResult> {
    require_rank_2(rf)?;
    let mut witnesses = Vec::new();
    for &e in rf.level_idx(1) {
        let b = poset.lower_idx(e).len();
        let a = poset.upper_idx(e).len();
        if b != 2 || a != 2 {
            witnesses.push(ConditionWitness {
                condition: "edge-incidence".into(),
                elements: vec![poset.id(e).to_string()],
                detail: format!("B1 = {b}, A1 = {a}, expected 2 and 2"),
            });
        }
    }
    let mut between: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &s in rf.level_idx(2) {
        for &e in poset.lower_idx(s) {
            for &w in poset.lower_idx(e) {
                between.entry((w, s)).or_default().push(e);
            }
        }
    }
    for ((w, s), edges) in &between {
        if edges.len() != 2 {
            witnesses.push(ConditionWitness {
                condition: "interval".into(),
                elements: vec![poset.id(*w).to_string(), poset.id(*s).to_string()],
                detail: format!("{} edges in the interval, expected 2", edges.len()),
            });
        }
    }
    if witnesses.is_empty() {
        // vertex links: faces above v chain the edges above v into cycles
        for &v in rf.level_idx(0) {
            let edges_above: Vec<usize> = poset.upper_idx(v).to_vec();
            if edges_above.is_empty() {
                witnesses.push(ConditionWitness {
                    condition: "link".into(),
                    elements: vec![poset.id(v).to_string()],
                    detail: "isolated vertex".into(),
                });
                continue;
            }
            let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (&(w, s), edges) in &between {
                if w == v {
                    adjacency.entry(edges[0]).or_default().push(s);
                    adjacency.entry(edges[1]).or_default().push(s);
                }
            }
            let ok = edges_above
                .iter()
                .all(|e| adjacency.get(e).map(Vec::len) == Some(2))
                && single_cycle(&edges_above, &between, v);
            if !ok {
                witnesses.push(ConditionWitness {
                    condition: "link".into(),
                    elements: vec![poset.id(v).to_string()],
                    detail: "link of the vertex is not a single cycle".into(),
                });
            }
        }
    }
    if witnesses.is_empty() && !hasse_connected(poset) {
        witnesses.push(ConditionWitness {
            condition: "connected".into(),
            elements: Vec::new(),
            detail: "Hasse diagram is not connected".into(),
        });
    }
    Ok(ClassificationResult::from_witnesses(
        "polyhedral-map",
        witnesses,
    ))
}

fn single_cycle(
    edges_above: &[usize],
    between: &BTreeMap<(usize, usize), Vec<usize>>,
    v: usize,
) -> bool {
    // arcs: each face above v joins the two edges of its interval with v
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for (&(w, _s), edges) in between {
        if w == v && edges.len() == 2 {
            arcs.push((edges[0], edges[1]));
        }
    }
    if arcs.len() != edges_above.len() {
        return false;
    }
    let mut at: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (ai, &(p, q)) in arcs.iter().enumerate() {
        at.entry(p).or_default().push(ai);
        at.entry(q).or_default().push(ai);
    }
    if at.len() != edges_above.len() || at.values().any(|l| l.len() != 2) {
        return false;
    }
    let mut visited = vec![false; arcs.len()];
    let mut current = 0usize;
    let mut entry = arcs[0].0;
    let mut steps = 0usize;
    loop {
        visited[current] = true;
        steps += 1;
        let (p, q) = arcs[current];
        let exit = if entry == p { q } else { p };
        let slots = &at[&exit];
        let next = if slots[0] == current {
            slots[1]
        } else {
            slots[0]
        };
        if visited[next] {
            break;
        }
        entry = exit;
        current = next;
    }
    steps == arcs.len()
}

fn hasse_connected(poset: &Poset) -> bool {
    let n = poset.len();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for &j in poset.upper_idx(i).iter().chain(poset.lower_idx(i)) {
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Whether the map is orientable: faces can be given orientations so that
/// every shared edge is induced in opposite directions by its two faces.
/// Decided by propagating an orientation choice across shared edges.
pub fn orientable(map: &PolyMap) -> bool {
    let faces = map.faces_idx();
    let nf = faces.len();
    // sign[f]: None undecided, Some(false) as given, Some(true) reversed
    let mut sign: Vec<Option<bool>> = vec![None; nf];
    // for each edge: its two (face, direction) appearances
    let mut apps: BTreeMap<usize, Vec<(usize, bool)>> = BTreeMap::new();
    for (fi, cycle) in faces.iter().enumerate() {
        for k in 0..cycle.len() {
            let a = cycle[k];
            let b = cycle[(k + 1) % cycle.len()];
            let e = map.edge_idx(a, b);
            apps.entry(e).or_default().push((fi, a < b));
        }
    }
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); nf];
    for pair in apps.values() {
        let (f, df) = pair[0];
        let (g, dg) = pair[1];
        // opposite induced directions ⟺ equal flip states when df != dg
        let must_differ = df == dg;
        adj[f].push((g, must_differ));
        adj[g].push((f, must_differ));
    }
    for start in 0..nf {
        if sign[start].is_some() {
            continue;
        }
        sign[start] = Some(false);
        let mut stack = vec![start];
        while let Some(f) = stack.pop() {
            let sf = sign[f].unwrap();
            for &(g, must_differ) in &adj[f] {
                let expected = sf != must_differ;
                match sign[g] {
                    None => {
                        sign[g] = Some(expected);
                        stack.push(g);
                    }
                    Some(sg) if sg != expected => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// The everywhere-negative-curvature criterion on a surface map: R0, Ric
/// and R2 are negative at every cell iff every face has at least 7 edges.
/// `iff_holds` checks the equivalence itself and must always be true.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NegativityReport {
    pub all_negative: bool,
    pub min_face_size: usize,
    pub iff_holds: bool,
}

pub fn negativity_criterion(map: &PolyMap) -> Result<NegativityReport> {
    let (poset, rf) = map.face_poset();
    let mut all_negative = true;
    for &v in rf.level_idx(0) {
        if !curvature::r0(&poset, &rf, poset.id(v))?.is_negative() {
            all_negative = false;
        }
    }
    for &e in rf.level_idx(1) {
        if curvature::ric(&poset, &rf, poset.id(e))? >= 0 {
            all_negative = false;
        }
    }
    for &s in rf.level_idx(2) {
        if !curvature::r2(&poset, &rf, poset.id(s))?.is_negative() {
            all_negative = false;
        }
    }
    let min_face_size = map.min_face_size();
    Ok(NegativityReport {
        all_negative,
        min_face_size,
        iff_holds: all_negative == (min_face_size >= 7),
    })
}

/// The positive-average implication on a rank-2 poset: sufficiently covered
/// and R̄1 > 0 must force χ_gr > 0. When the poset is almost polyhedral
/// with Ā1 ≥ 2, the same implication with the average Ricci curvature is
/// checked as well.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveAverageReport {
    pub sufficiently_covered: bool,
    pub coverage_lhs: Rational,
    pub r1_average: Rational,
    pub chi_gr: i64,
    pub implication_holds: bool,
    pub ric_variant: Option<RicAverageCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RicAverageCheck {
    pub ric_average: Rational,
    pub implication_holds: bool,
}

pub fn positive_average_check(poset: &Poset, rf: &RankFunction) -> Result<PositiveAverageReport> {
    let coverage = curvature::is_sufficiently_covered(poset, rf)?;
    let avg = curvature::averages(poset, rf)?;
    let chi = ranked_euler_char(rf);
    let implication_holds = !(coverage.covered && avg.r1.is_positive()) || chi > 0;

    let class = is_almost_polyhedral(poset, rf)?;
    let two = Rational::from(2);
    let ric_variant = if class.verdict && avg.a1 >= two {
        let level = rf.level_idx(1);
        let mut sum = 0i64;
        for &e in level {
            let c = poset.local_counts_idx(rf, e);
            sum += c.a as i64 + c.b as i64 - c.n as i64;
        }
        let ric_average = Rational::from(sum) / Rational::from(level.len());
        Some(RicAverageCheck {
            ric_average,
            implication_holds: !ric_average.is_positive() || chi > 0,
        })
    } else {
        None
    };
    Ok(PositiveAverageReport {
        sufficiently_covered: coverage.covered,
        coverage_lhs: coverage.lhs,
        r1_average: avg.r1,
        chi_gr: chi,
        implication_holds,
        ric_variant,
    })
}

impl Serialize for PositiveAverageReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("sufficiently_covered", &self.sufficiently_covered)?;
        map.serialize_entry("coverage_lhs", &self.coverage_lhs)?;
        map.serialize_entry("r1_average", &self.r1_average)?;
        map.serialize_entry("r1_average_positive", &self.r1_average.is_positive())?;
        map.serialize_entry("chi_gr", &self.chi_gr)?;
        map.serialize_entry("chi_gr_positive", &(self.chi_gr > 0))?;
        map.serialize_entry("implication_holds", &self.implication_holds)?;
        map.serialize_entry("ric_variant", &self.ric_variant)?;
        map.end()
    }
}
