//! Cross-checks against constructions that share no code with the library:
//! roots from Cartan matrices, lengths from breadth-first search in the
//! Cayley graph, coset representatives by brute force, normal forms by image
//! membership.

use std::collections::{BTreeSet, HashMap, VecDeque};

use spj_core::linalg::{rank_rational, Matrix};
use spj_core::special::SpecialModule;
use spj_core::{CartanType, Family, RootSystem, SubsetJ, WeylElement, WeylGroup};

const TYPES: [&str; 12] = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "A2xB2"];

/// `a[i][j] = <alpha_j, alpha_i^vee>`, chain `1 - 2 - ... - l` with the
/// special node last.
fn cartan_block(family: Family, l: usize) -> Vec<Vec<i32>> {
    let mut a = vec![vec![0; l]; l];
    for i in 0..l {
        a[i][i] = 2;
    }
    let link = |a: &mut Vec<Vec<i32>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match family {
        Family::A => (1..l).for_each(|i| link(&mut a, i - 1, i)),
        Family::B | Family::C => {
            (1..l.saturating_sub(1)).for_each(|i| link(&mut a, i - 1, i));
            if l >= 2 {
                link(&mut a, l - 2, l - 1);
                if family == Family::B {
                    a[l - 1][l - 2] = -2;
                } else {
                    a[l - 2][l - 1] = -2;
                }
            }
        }
        Family::D => {
            (1..l - 1).for_each(|i| link(&mut a, i - 1, i));
            link(&mut a, l - 3, l - 1);
        }
        _ => unreachable!(),
    }
    a
}

fn cartan(ct: &CartanType) -> Vec<Vec<i32>> {
    let n = ct.rank();
    let mut a = vec![vec![0; n]; n];
    let mut off = 0;
    for f in &ct.factors {
        let b = cartan_block(f.family, f.rank);
        for i in 0..f.rank {
            for j in 0..f.rank {
                a[off + i][off + j] = b[i][j];
            }
        }
        off += f.rank;
    }
    a
}

fn reflect(a: &[Vec<i32>], i: usize, beta: &[i32]) -> Vec<i32> {
    let pairing: i32 = (0..beta.len()).map(|j| a[i][j] * beta[j]).sum();
    let mut out = beta.to_vec();
    out[i] -= pairing;
    out
}

fn cartan_roots(a: &[Vec<i32>]) -> BTreeSet<Vec<i32>> {
    let n = a.len();
    let mut seen = BTreeSet::new();
    let mut queue: VecDeque<Vec<i32>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    while let Some(b) = queue.pop_front() {
        if !seen.insert(b.clone()) {
            continue;
        }
        for i in 0..n {
            queue.push_back(reflect(a, i, &b));
        }
    }
    seen
}

fn group(t: &str) -> WeylGroup {
    WeylGroup::new(RootSystem::build(&t.parse().unwrap()).unwrap()).unwrap()
}

#[test]
fn roots_match_cartan_closure() {
    for t in TYPES {
        let ct: CartanType = t.parse().unwrap();
        let rs = RootSystem::build(&ct).unwrap();
        let a = cartan(&ct);
        let oracle = cartan_roots(&a);
        let ours: BTreeSet<Vec<i32>> = rs.roots().iter().map(|r| r.coeffs.clone()).collect();
        assert_eq!(ours, oracle, "{t}");
        for idx in 0..rs.num_roots() {
            let c = &rs.root(idx).coeffs;
            assert_eq!(rs.is_positive(idx), c.iter().all(|&x| x >= 0), "{t}");
            for i in 0..rs.rank() {
                let image = rs.act_on_root(rs.reflection(i), idx);
                assert_eq!(rs.root(image).coeffs, reflect(&a, i, c), "{t}: s{} on {c:?}", i + 1);
            }
        }
    }
}

#[test]
fn highest_roots_have_maximal_height() {
    for t in TYPES {
        let ct: CartanType = t.parse().unwrap();
        let rs = RootSystem::build(&ct).unwrap();
        let oracle = cartan_roots(&cartan(&ct));
        for (f, lay) in rs.layout().iter().enumerate() {
            let range = lay.simple_range();
            let top = oracle
                .iter()
                .filter(|r| r.iter().enumerate().all(|(k, &x)| range.contains(&k) || x == 0))
                .max_by_key(|r| r.iter().sum::<i32>())
                .unwrap();
            assert_eq!(&rs.root(rs.highest_root(f)).coeffs, top, "{t}");
            for i in range {
                assert_eq!(rs.highest_root_coefficient(f, i).unwrap() as i32, top[i]);
            }
        }
    }
}

/// Word length of every element by search from the identity.
fn bfs_lengths(rs: &RootSystem) -> HashMap<WeylElement, u32> {
    let id = WeylElement::identity(rs.width());
    let mut dist = HashMap::from([(id.clone(), 0u32)]);
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        for s in rs.reflections() {
            let x = w.compose(s);
            if !dist.contains_key(&x) {
                dist.insert(x.clone(), d + 1);
                queue.push_back(x);
            }
        }
    }
    dist
}

#[test]
fn lengths_match_cayley_graph() {
    for t in TYPES {
        let g = group(t);
        let dist = bfs_lengths(g.root_system());
        assert_eq!(dist.len(), g.order(), "{t}");
        for w in 0..g.order() {
            assert_eq!(dist[g.element(w)], g.length(w), "{t}: {}", g.element(w));
        }
    }
}

#[test]
fn coset_representatives_by_brute_force() {
    for t in ["A3", "B3", "C3", "D4", "A2xB2"] {
        let g = group(t);
        let rs = g.root_system();
        let dist = bfs_lengths(rs);
        for j in SubsetJ::all(g.rank()) {
            // W_J by closure of its generators
            let mut wj = BTreeSet::from([WeylElement::identity(rs.width())]);
            loop {
                let next: BTreeSet<WeylElement> =
                    wj.iter().flat_map(|u| j.iter().map(move |s| u.compose(rs.reflection(s)))).collect();
                let before = wj.len();
                wj.extend(next);
                if wj.len() == before {
                    break;
                }
            }
            let mut reps = BTreeSet::new();
            let mut vj = BTreeSet::new();
            for w in g.elements() {
                let coset: Vec<WeylElement> = wj.iter().map(|u| w.compose(u)).collect();
                let min = coset.iter().min_by_key(|x| dist[*x]).unwrap().clone();
                if &min == w {
                    let descends_outside = j
                        .complement(g.rank())
                        .iter()
                        .all(|a| dist[&w.compose(rs.reflection(a))] < dist[w]);
                    if descends_outside {
                        vj.insert(w.clone());
                    }
                    reps.insert(min);
                }
            }
            let ours: BTreeSet<WeylElement> = g.enumerate_wj(j).iter().map(|&w| g.element(w).clone()).collect();
            let ours_v: BTreeSet<WeylElement> = g.enumerate_vj(j).iter().map(|&w| g.element(w).clone()).collect();
            assert_eq!(ours, reps, "{t} J={j}");
            assert_eq!(ours_v, vj, "{t} J={j}");
        }
    }
}

/// `e_w - sum c_v e_v` lies in the image of the boundary over the rationals.
#[test]
fn normal_forms_differ_from_generators_by_boundaries() {
    for t in ["A2", "A3", "B2", "B3", "C3"] {
        let g = group(t);
        for j in SubsetJ::all(g.rank()) {
            let m = SpecialModule::new(&g, j).unwrap();
            let d = m.boundary_matrix();
            let r = rank_rational(&d);
            let wj = m.wj();
            for (k, &w) in wj.iter().enumerate() {
                let nf = m.normal_form_of(w).unwrap();
                let mut v = Matrix::zeros(wj.len(), 1);
                v.set(k, 0, 1);
                for (c, &x) in m.vj().iter().enumerate() {
                    let pos = m.wj_position(x).unwrap();
                    v.set(pos, 0, v.get(pos, 0) - nf[c]);
                }
                assert_eq!(rank_rational(&d.hconcat(&v)), r, "{t} J={j} w={}", g.element(w));
            }
        }
    }
}

#[test]
fn weyl_orders_match_formulas() {
    let expect = [("A1", 2), ("A4", 120), ("B4", 384), ("C3", 48), ("D4", 192), ("A2xB2", 48)];
    for (t, n) in expect {
        assert_eq!(group(t).order(), n, "{t}");
    }
}
