//! Curvature functions on ranked posets of rank 2, in exact rational
//! arithmetic.
//!
//! At the three ranks of a rank-2 poset:
//!
//! ```text
//! R0(v) = 1 + (3/2)·A0(v) − A0(v)²
//! R1(e) = 1 + 6·A1(e) + (3/2)·B1(e) − U1(e) − D1(e)
//! R2(σ) = 1 + 6·B2(σ) − B2(σ)²
//! ```
//!
//! together with the Forman-style curvature `A + B − N` at any rank (whose
//! rank-1 case is the combinatorial Ricci curvature of an edge), the
//! rank-1 averages, the sufficiently-covered inequality, and the two forms
//! of the Stone vertex curvature. The coefficients are tuned so that
//! `Σ R0 − Σ R1 + Σ R2` telescopes to the ranked Euler characteristic.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poset::{Poset, RankFunction};
use crate::rational::Rational;

/// The curvature families a report can evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurvatureKind {
    R0,
    R1,
    R2,
    Ric,
    /// Stone's vertex curvature, surface form: 2 − Σ_{σ>v} (1 − 2/B2(σ)).
    Stone,
    /// Stone's vertex curvature, poset form: 2 − A0(v) + Σ_{σ>v} 2/B2(σ).
    StoneGeneral,
}

impl CurvatureKind {
    pub const ALL: [CurvatureKind; 6] = [
        CurvatureKind::R0,
        CurvatureKind::R1,
        CurvatureKind::R2,
        CurvatureKind::Ric,
        CurvatureKind::Stone,
        CurvatureKind::StoneGeneral,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CurvatureKind::R0 => "r0",
            CurvatureKind::R1 => "r1",
            CurvatureKind::R2 => "r2",
            CurvatureKind::Ric => "ric",
            CurvatureKind::Stone => "stone",
            CurvatureKind::StoneGeneral => "stone-general",
        }
    }

    pub fn parse(name: &str) -> Result<CurvatureKind> {
        Self::ALL
            .iter()
            .copied()
            .find(|k| k.name() == name)
            .ok_or_else(|| {
                Error::ParameterOutOfRange(format!(
                    "unknown curvature kind `{name}`; expected one of r0, r1, r2, ric, stone, stone-general"
                ))
            })
    }

    /// The rank of the elements this curvature is defined at.
    pub fn rank(&self) -> usize {
        match self {
            CurvatureKind::R0 | CurvatureKind::Stone | CurvatureKind::StoneGeneral => 0,
            CurvatureKind::R1 | CurvatureKind::Ric => 1,
            CurvatureKind::R2 => 2,
        }
    }
}

fn require_poset_rank2(rf: &RankFunction) -> Result<()> {
    if rf.max_rank() != 2 {
        return Err(Error::WrongPosetRank {
            expected: 2,
            actual: rf.max_rank(),
        });
    }
    Ok(())
}

fn require_element_rank(
    poset: &Poset,
    rf: &RankFunction,
    id: &str,
    expected: usize,
) -> Result<usize> {
    let i = poset.idx(id)?;
    let actual = rf.rank_idx(i);
    if actual != expected {
        return Err(Error::WrongRank {
            element: id.to_string(),
            expected,
            actual,
        });
    }
    Ok(i)
}

fn r0_of(a: usize) -> Rational {
    let a = Rational::from(a);
    Rational::from(1) + Rational::new(3, 2) * a - a * a
}

fn r1_of(a: usize, b: usize, u: usize, d: usize) -> Rational {
    Rational::from(1)
        + Rational::from(6) * Rational::from(a)
        + Rational::new(3, 2) * Rational::from(b)
        - Rational::from(u)
        - Rational::from(d)
}

fn r2_of(b: usize) -> Rational {
    let b = Rational::from(b);
    Rational::from(1) + Rational::from(6) * b - b * b
}

/// R0 at a rank-0 element of a rank-2 poset.
pub fn r0(poset: &Poset, rf: &RankFunction, v: &str) -> Result<Rational> {
    require_poset_rank2(rf)?;
    let i = require_element_rank(poset, rf, v, 0)?;
    Ok(r0_of(poset.upper_idx(i).len()))
}

/// R1 at a rank-1 element of a rank-2 poset.
pub fn r1(poset: &Poset, rf: &RankFunction, e: &str) -> Result<Rational> {
    require_poset_rank2(rf)?;
    let i = require_element_rank(poset, rf, e, 1)?;
    let c = poset.local_counts_idx(rf, i);
    Ok(r1_of(c.a, c.b, c.u, c.d))
}

/// R2 at a rank-2 element of a rank-2 poset.
pub fn r2(poset: &Poset, rf: &RankFunction, s: &str) -> Result<Rational> {
    require_poset_rank2(rf)?;
    let i = require_element_rank(poset, rf, s, 2)?;
    Ok(r2_of(poset.lower_idx(i).len()))
}

/// Forman-style curvature `A(x) + B(x) − N(x)` at any element of a ranked
/// poset; at rank 1 this is the combinatorial Ricci curvature.
pub fn forman(poset: &Poset, rf: &RankFunction, x: &str) -> Result<i64> {
    let i = poset.idx(x)?;
    let c = poset.local_counts_idx(rf, i);
    Ok(c.a as i64 + c.b as i64 - c.n as i64)
}

/// Combinatorial Ricci curvature of an edge: `A1(e) + B1(e) − N1(e)`.
/// Alias of [`forman`] restricted to rank-1 elements.
pub fn ric(poset: &Poset, rf: &RankFunction, e: &str) -> Result<i64> {
    require_element_rank(poset, rf, e, 1)?;
    forman(poset, rf, e)
}

/// Rank-1 averages of a rank-2 poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Averages {
    pub r1: Rational,
    pub a1: Rational,
    pub b1: Rational,
}

/// Arithmetic means of R1, A1, B1 over the rank-1 level.
pub fn averages(poset: &Poset, rf: &RankFunction) -> Result<Averages> {
    let level = rf.level_idx(1);
    if level.is_empty() {
        return Err(Error::EmptyLevel(1));
    }
    require_poset_rank2(rf)?;
    let count = Rational::from(level.len());
    let mut sum_r1 = Rational::ZERO;
    let mut sum_a1 = Rational::ZERO;
    let mut sum_b1 = Rational::ZERO;
    for &i in level {
        let c = poset.local_counts_idx(rf, i);
        sum_r1 += r1_of(c.a, c.b, c.u, c.d);
        sum_a1 += Rational::from(c.a);
        sum_b1 += Rational::from(c.b);
    }
    Ok(Averages {
        r1: sum_r1 / count,
        a1: sum_a1 / count,
        b1: sum_b1 / count,
    })
}

/// Result of the sufficiently-covered test, with the evaluated left-hand
/// side `(Ā1 + B̄1)² − 6Ā1 − (3/2)B̄1 − 1` for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoverageCheck {
    pub lhs: Rational,
    pub covered: bool,
}

/// Whether the poset is sufficiently covered: the averages inequality
/// `(Ā1 + B̄1)² − 6Ā1 − (3/2)B̄1 − 1 ≥ 0`, evaluated exactly.
pub fn is_sufficiently_covered(poset: &Poset, rf: &RankFunction) -> Result<CoverageCheck> {
    let avg = averages(poset, rf)?;
    let s = avg.a1 + avg.b1;
    let lhs = s * s - Rational::from(6) * avg.a1 - Rational::new(3, 2) * avg.b1 - Rational::from(1);
    Ok(CoverageCheck {
        lhs,
        covered: !lhs.is_negative(),
    })
}

fn stone_terms(poset: &Poset, rf: &RankFunction, v: &str) -> Result<Vec<usize>> {
    require_poset_rank2(rf)?;
    let i = require_element_rank(poset, rf, v, 0)?;
    // all rank-2 elements order-above v (not just covers of covers)
    let mut sizes = Vec::new();
    for &s in rf.level_idx(2) {
        if poset.reachable(i, s) {
            sizes.push(poset.lower_idx(s).len());
        }
    }
    Ok(sizes)
}

/// Stone's vertex curvature, surface form: `2 − Σ_{σ>v} (1 − 2/B2(σ))`,
/// summed over all rank-2 elements above `v` in the order.
pub fn stone_star_surface(poset: &Poset, rf: &RankFunction, v: &str) -> Result<Rational> {
    let sizes = stone_terms(poset, rf, v)?;
    let mut sum = Rational::ZERO;
    for b2 in sizes {
        sum += Rational::from(1) - Rational::new(2, b2 as i64);
    }
    Ok(Rational::from(2) - sum)
}

/// Stone's vertex curvature, poset form: `2 − A0(v) + Σ_{σ>v} 2/B2(σ)`.
/// On polyhedral surfaces it agrees with the surface form.
pub fn stone_star_general(poset: &Poset, rf: &RankFunction, v: &str) -> Result<Rational> {
    let sizes = stone_terms(poset, rf, v)?;
    let i = poset.idx(v)?;
    let mut sum = Rational::ZERO;
    for b2 in sizes {
        sum += Rational::new(2, b2 as i64);
    }
    Ok(Rational::from(2) - Rational::from(poset.upper_idx(i).len()) + sum)
}

/// Per-element values of one curvature kind, in element order, with its
/// aggregates.
#[derive(Debug, Clone)]
pub struct KindSection {
    pub kind: CurvatureKind,
    pub values: Vec<(String, Rational)>,
    pub sum: Rational,
    pub all_negative: bool,
}

/// A full curvature report: one section per requested kind plus the rank-1
/// averages and the coverage verdict. Aggregates always equal the sums of
/// the reported per-element values.
#[derive(Debug, Clone)]
pub struct CurvatureReport {
    pub sections: Vec<KindSection>,
    pub averages: Averages,
    pub coverage: CoverageCheck,
}

/// Evaluates the requested curvature kinds at every element of the
/// appropriate rank, in element order. `restrict` limits reporting to a
/// subset of elements (used for window interiors); aggregates then range
/// over the reported elements only.
pub fn full_report(
    poset: &Poset,
    rf: &RankFunction,
    kinds: &[CurvatureKind],
    restrict: Option<&dyn Fn(&str) -> bool>,
) -> Result<CurvatureReport> {
    if rf.level_idx(1).is_empty() {
        return Err(Error::EmptyLevel(1));
    }
    require_poset_rank2(rf)?;
    let keep = |id: &str| restrict.is_none_or(|f| f(id));
    let mut sections = Vec::with_capacity(kinds.len());
    for &kind in kinds {
        let mut values = Vec::new();
        for &i in rf.level_idx(kind.rank()) {
            let id = poset.id(i);
            if !keep(id) {
                continue;
            }
            let value = match kind {
                CurvatureKind::R0 => r0(poset, rf, id)?,
                CurvatureKind::R1 => r1(poset, rf, id)?,
                CurvatureKind::R2 => r2(poset, rf, id)?,
                CurvatureKind::Ric => Rational::from(ric(poset, rf, id)?),
                CurvatureKind::Stone => stone_star_surface(poset, rf, id)?,
                CurvatureKind::StoneGeneral => stone_star_general(poset, rf, id)?,
            };
            values.push((id.to_string(), value));
        }
        let sum = values.iter().map(|(_, v)| *v).sum();
        let all_negative = !values.is_empty() && values.iter().all(|(_, v)| v.is_negative());
        sections.push(KindSection {
            kind,
            values,
            sum,
            all_negative,
        });
    }
    Ok(CurvatureReport {
        sections,
        averages: averages(poset, rf)?,
        coverage: is_sufficiently_covered(poset, rf)?,
    })
}

impl Serialize for KindSection {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Aggregates {
            sum: Rational,
        }
        #[derive(Serialize)]
        struct Verdicts {
            all_negative: bool,
        }
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("kind", self.kind.name())?;
        map.serialize_entry("values", &OrderedValues(&self.values))?;
        map.serialize_entry("aggregates", &Aggregates { sum: self.sum })?;
        map.serialize_entry(
            "verdicts",
            &Verdicts {
                all_negative: self.all_negative,
            },
        )?;
        map.end()
    }
}

/// Serializes per-element values as a JSON object in element order.
struct OrderedValues<'a>(&'a [(String, Rational)]);

impl Serialize for OrderedValues<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (id, value) in self.0 {
            map.serialize_entry(id, value)?;
        }
        map.end()
    }
}

impl Serialize for CurvatureReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("reports", &self.sections)?;
        map.serialize_entry("averages", &self.averages)?;
        map.serialize_entry("sufficiently_covered", &self.coverage)?;
        map.end()
    }
}
