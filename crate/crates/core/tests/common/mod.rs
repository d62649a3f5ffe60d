//! Brute-force oracles, written against the public cover-list API only, so
//! they stay independent of the library's internal count and chain
//! machinery.
#![allow(dead_code)] // each test target uses its own subset

use std::collections::BTreeSet;

use posetric::{Poset, RankFunction, Rational};

/// Local counts recomputed directly from the defining sums.
pub fn naive_counts(p: &Poset, x: &str) -> (usize, usize, usize, usize, usize) {
    let ups = p.upper_covers(x).unwrap();
    let downs = p.lower_covers(x).unwrap();
    let a = ups.len();
    let b = downs.len();
    let u: usize = ups.iter().map(|y| p.lower_covers(y).unwrap().len()).sum();
    let d: usize = downs.iter().map(|z| p.upper_covers(z).unwrap().len()).sum();

    let mut shares_upper = BTreeSet::new();
    for y in &ups {
        for w in p.lower_covers(y).unwrap() {
            if w != x {
                shares_upper.insert(w.to_string());
            }
        }
    }
    let mut shares_lower = BTreeSet::new();
    for z in &downs {
        for w in p.upper_covers(z).unwrap() {
            if w != x {
                shares_lower.insert(w.to_string());
            }
        }
    }
    let n = shares_upper.symmetric_difference(&shares_lower).count();
    (a, b, u, d, n)
}

/// R1 from the defining formula and naive counts.
pub fn naive_r1(p: &Poset, e: &str) -> Rational {
    let (a, b, u, d, _) = naive_counts(p, e);
    Rational::from(1)
        + Rational::from(6) * Rational::from(a)
        + Rational::new(3, 2) * Rational::from(b)
        - Rational::from(u)
        - Rational::from(d)
}

/// Ric from the defining formula and naive counts.
pub fn naive_ric(p: &Poset, e: &str) -> i64 {
    let (a, b, _, _, n) = naive_counts(p, e);
    a as i64 + b as i64 - n as i64
}

/// Order-complex Euler characteristic by recursive chain enumeration over
/// the order relation.
pub fn naive_order_complex_euler(p: &Poset) -> i64 {
    let ids: Vec<String> = p.elements().map(str::to_string).collect();
    fn extend(p: &Poset, ids: &[String], min_elem: &str, len: usize, chi: &mut i64) {
        *chi += if len % 2 == 1 { 1 } else { -1 };
        for next in ids {
            if next != min_elem && p.leq(next, min_elem).unwrap() {
                extend(p, ids, next, len + 1, chi);
            }
        }
    }
    let mut chi = 0;
    for top in &ids {
        extend(p, &ids, top, 1, &mut chi);
    }
    chi
}

/// Interval cardinality by scanning all elements with `leq`.
pub fn naive_interval(p: &Poset, a: &str, b: &str) -> usize {
    p.elements()
        .filter(|x| p.leq(a, x).unwrap() && p.leq(x, b).unwrap())
        .count()
}

/// Ranked Euler characteristic from the f-vector.
pub fn naive_chi_gr(rf: &RankFunction) -> i64 {
    rf.f_vector()
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}
