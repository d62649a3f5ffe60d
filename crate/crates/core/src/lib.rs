//! Combinatorial curvature on ranked posets and polyhedral surface maps.
//!
//! The library represents finite posets by their Hasse diagrams, builds
//! face posets of simplicial complexes and polygonal surface maps, and
//! evaluates — in exact rational arithmetic — the rank-indexed curvatures
//! R0/R1/R2 of rank-2 posets, Forman's combinatorial Ricci curvature of
//! edges, and Stone's vertex curvature in both its surface and poset forms.
//! On top of those it provides exact verifiers for the discrete
//! Gauss–Bonnet identities, the positive-average and everywhere-negative
//! curvature theorems, and structural classifiers (almost polyhedral,
//! polyhedral-map recognition, orientability), together with seeded random
//! ensembles for property testing.

pub mod complex;
pub mod curvature;
pub mod error;
pub mod invariants;
pub mod poset;
pub mod rational;

pub use complex::fixtures::{self, Fixture, Window};
pub use complex::random::{self, PosetDensity, SeedSurface};
pub use complex::{
    cube, face_poset_of_map, face_poset_of_simplicial, icosahedron, tetrahedron, torus_grid,
    MapJson, PolyMap, SimplicialComplex2, SimplicialJson,
};
pub use curvature::{Averages, CoverageCheck, CurvatureKind, CurvatureReport, KindSection};
pub use error::{Error, Result};
pub use invariants::{
    ClassificationResult, ConditionWitness, NegativityReport, OrderComplex, PositiveAverageReport,
    Verification,
};
pub use poset::{
    CountingIdentities, LocalCounts, ParallelNeighbors, Poset, PosetJson, RankFunction,
};
pub use rational::Rational;
