//! Root sets attached to parabolic cosets, and the intersections of them.
//!
//! For `J` a set of simple roots, `Phi_J(1)` is the set of negative roots
//! outside the root subsystem spanned by `J`, and `Phi_J(w) = w Phi_J(1)`.
//! A set `D` is `J`-quasi-parabolic when it is an intersection of some of the
//! `Phi_J(w)`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::roots::RootSet;
use crate::weyl::{SubsetJ, WeylGroup};

/// `Phi_J(w)` for a coset representative `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiJSet {
    pub j: SubsetJ,
    pub w: usize,
    pub roots: RootSet,
}

/// A root set together with elements whose `Phi_J` sets intersect to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiParabolicSet {
    pub j: SubsetJ,
    pub roots: RootSet,
    pub witnesses: Vec<usize>,
}

fn require_bitset(g: &WeylGroup) -> Result<()> {
    let n = g.root_system().num_roots();
    if n > 128 {
        return Err(Error::CapExceeded { what: "number of roots".into(), size: n as u128, cap: 128 });
    }
    Ok(())
}

/// Image of a root set under `w`.
pub fn act_on_set(g: &WeylGroup, w: usize, set: RootSet) -> RootSet {
    set.iter().map(|r| g.act_on_root(w, r)).collect()
}

/// All positive roots and all negative roots as bitsets.
pub fn positive_roots(g: &WeylGroup) -> RootSet {
    (0..g.root_system().num_positive()).collect()
}

pub fn negative_roots(g: &WeylGroup) -> RootSet {
    let rs = g.root_system();
    (rs.num_positive()..rs.num_roots()).collect()
}

/// Roots of the subsystem spanned by `J`, i.e. the orbit `W_J . J`.
pub fn subsystem(g: &WeylGroup, j: SubsetJ) -> RootSet {
    let mut out = RootSet::EMPTY;
    for v in g.parabolic(j) {
        for a in j.iter() {
            out.insert(g.act_on_root(v, g.root_system().simple_root(a)));
        }
    }
    out
}

/// `Phi_J(1)`.
pub fn phi_j_identity(g: &WeylGroup, j: SubsetJ) -> Result<RootSet> {
    require_bitset(g)?;
    Ok(negative_roots(g).difference(&subsystem(g, j)))
}

/// `Phi_J(w)` for an arbitrary `w`; only the coset `w W_J` matters.
pub fn phi_j(g: &WeylGroup, j: SubsetJ, w: usize) -> Result<PhiJSet> {
    let base = phi_j_identity(g, j)?;
    Ok(PhiJSet { j, w, roots: act_on_set(g, w, base) })
}

/// Table of `Phi_J(w)` indexed like `g.enumerate_wj(j)`.
pub fn phi_j_table(g: &WeylGroup, j: SubsetJ) -> Result<Vec<(usize, RootSet)>> {
    let base = phi_j_identity(g, j)?;
    Ok(g.enumerate_wj(j).into_iter().map(|w| (w, act_on_set(g, w, base))).collect())
}

fn sort_key(s: &RootSet) -> (usize, Vec<usize>) {
    (s.len(), s.indices())
}

/// Every `J`-quasi-parabolic set, sorted by size and then by the sorted list
/// of root indices.
pub fn enumerate_quasi_parabolic(g: &WeylGroup, j: SubsetJ) -> Result<Vec<QuasiParabolicSet>> {
    let table = phi_j_table(g, j)?;
    let mut generators: Vec<(usize, RootSet)> = Vec::new();
    let mut gen_seen = HashMap::new();
    for &(w, s) in &table {
        gen_seen.entry(s).or_insert_with(|| {
            generators.push((w, s));
        });
    }
    let mut found: HashMap<RootSet, Vec<usize>> = HashMap::new();
    let mut work: Vec<RootSet> = Vec::new();
    for &(w, s) in &generators {
        if let std::collections::hash_map::Entry::Vacant(e) = found.entry(s) {
            e.insert(vec![w]);
            work.push(s);
        }
    }
    while let Some(x) = work.pop() {
        for &(w, s) in &generators {
            let y = x.intersection(&s);
            if !found.contains_key(&y) {
                let mut wit = found[&x].clone();
                if !wit.contains(&w) {
                    wit.push(w);
                }
                found.insert(y, wit);
                work.push(y);
            }
        }
    }
    let mut out: Vec<QuasiParabolicSet> = found
        .into_iter()
        .map(|(roots, mut witnesses)| {
            witnesses.sort_unstable();
            QuasiParabolicSet { j, roots, witnesses }
        })
        .collect();
    out.sort_by_cached_key(|q| sort_key(&q.roots));
    Ok(out)
}

/// Intersection of every `Phi_J(w)` containing `d`; `None` if none does.
pub fn hull(g: &WeylGroup, j: SubsetJ, d: RootSet) -> Result<Option<RootSet>> {
    let mut acc: Option<RootSet> = None;
    for (_, s) in phi_j_table(g, j)? {
        if d.is_subset(&s) {
            acc = Some(acc.map_or(s, |a| a.intersection(&s)));
        }
    }
    Ok(acc)
}

pub fn is_quasi_parabolic(g: &WeylGroup, j: SubsetJ, d: RootSet) -> Result<bool> {
    Ok(hull(g, j, d)? == Some(d))
}

/// Re-intersects the witnesses' sets and compares with the stored roots.
pub fn verify_witnesses(g: &WeylGroup, q: &QuasiParabolicSet) -> Result<bool> {
    let base = phi_j_identity(g, q.j)?;
    let mut acc: Option<RootSet> = None;
    for &w in &q.witnesses {
        let s = act_on_set(g, w, base);
        acc = Some(acc.map_or(s, |a| a.intersection(&s)));
    }
    Ok(acc == Some(q.roots))
}

/// `W^J(D)`: elements of `W^J` whose `Phi_J` contains `d`.
pub fn wj_of_d(g: &WeylGroup, j: SubsetJ, d: RootSet) -> Result<Vec<usize>> {
    Ok(phi_j_table(g, j)?.into_iter().filter(|(_, s)| d.is_subset(s)).map(|(w, _)| w).collect())
}

/// `V^J(D) = V^J` intersected with `W^J(D)`.
pub fn vj_of_d(g: &WeylGroup, j: SubsetJ, d: RootSet) -> Result<Vec<usize>> {
    Ok(wj_of_d(g, j, d)?.into_iter().filter(|&w| g.in_vj(w, j)).collect())
}

/// Some `w` with `w(d)` inside the positive roots, smallest index first.
pub fn positivizing_witness(g: &WeylGroup, d: RootSet) -> Option<usize> {
    let pos = positive_roots(g);
    (0..g.order()).find(|&w| act_on_set(g, w, d).is_subset(&pos))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::RootSystem;

    fn group(s: &str) -> WeylGroup {
        WeylGroup::new(RootSystem::build(&s.parse().unwrap()).unwrap()).unwrap()
    }

    fn coeff_sets(g: &WeylGroup, s: RootSet) -> Vec<Vec<i32>> {
        s.iter().map(|r| g.root_system().root(r).coeffs.clone()).collect()
    }

    #[test]
    fn phi_trivial_cases() {
        let g = group("B2");
        assert_eq!(phi_j_identity(&g, SubsetJ::EMPTY).unwrap(), negative_roots(&g));
        assert_eq!(phi_j_identity(&g, SubsetJ::full(2)).unwrap(), RootSet::EMPTY);
    }

    #[test]
    fn phi_in_a2() {
        let g = group("A2");
        let s = phi_j_identity(&g, SubsetJ(1)).unwrap();
        let mut c = coeff_sets(&g, s);
        c.sort();
        assert_eq!(c, vec![vec![-1, -1], vec![0, -1]]);
    }

    #[test]
    fn quasi_parabolic_a1() {
        let g = group("A1");
        let qp = enumerate_quasi_parabolic(&g, SubsetJ::EMPTY).unwrap();
        let sets: Vec<Vec<Vec<i32>>> = qp.iter().map(|q| coeff_sets(&g, q.roots)).collect();
        assert_eq!(sets, vec![vec![], vec![vec![1]], vec![vec![-1]]]);
        let d: RootSet = [0].into_iter().collect();
        assert_eq!(wj_of_d(&g, SubsetJ::EMPTY, d).unwrap(), vec![1]);
    }

    #[test]
    fn quasi_parabolic_full_j() {
        let g = group("A2");
        let qp = enumerate_quasi_parabolic(&g, SubsetJ::full(2)).unwrap();
        assert_eq!(qp.len(), 1);
        assert!(qp[0].roots.is_empty());
    }

    #[test]
    fn witnesses_reproduce_sets() {
        let g = group("B3");
        for j in SubsetJ::all(3) {
            for q in enumerate_quasi_parabolic(&g, j).unwrap() {
                assert!(verify_witnesses(&g, &q).unwrap());
                assert!(is_quasi_parabolic(&g, j, q.roots).unwrap());
            }
        }
    }

    #[test]
    fn empty_d_gives_all_of_wj() {
        let g = group("C3");
        let j = SubsetJ(0b010);
        assert_eq!(wj_of_d(&g, j, RootSet::EMPTY).unwrap(), g.enumerate_wj(j));
    }
}
