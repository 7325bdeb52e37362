//! Weyl groups of classical type as groups of signed permutations.
//!
//! An element is a window `[w(1), ..., w(n)]` over the ambient coordinates of
//! the whole root system, each factor acting on its own block. Composition is
//! `(a * b)(j) = a(b(j))` and `w` maps the coordinate vector `e_j` to
//! `sgn(w(j)) e_|w(j)|`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots::{Family, RootSystem};

/// Default bound on `|W|` for full enumeration.
pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;

/// A signed permutation window.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeylElement(Vec<i8>);

impl WeylElement {
    pub fn identity(width: usize) -> Self {
        WeylElement((1..=width as i8).collect())
    }

    /// Wraps a window without validation; see [`WeylElement::checked`].
    pub fn from_window(window: Vec<i8>) -> Self {
        WeylElement(window)
    }

    /// Validates a window against the block structure of `rs`.
    pub fn checked(rs: &RootSystem, window: Vec<i8>) -> Result<Self> {
        if window.len() != rs.width() {
            return Err(Error::TypeMismatch);
        }
        for lay in rs.layout() {
            let range = lay.pos_range();
            let mut seen: Vec<i8> = window[range.clone()].iter().map(|v| v.abs()).collect();
            seen.sort_unstable();
            let expected: Vec<i8> = range.clone().map(|p| p as i8 + 1).collect();
            if seen != expected {
                return Err(Error::InvalidElement(format!("{window:?}")));
            }
            let negatives = window[range].iter().filter(|&&v| v < 0).count();
            let ok = match lay.factor.family {
                Family::A => negatives == 0,
                Family::D => negatives % 2 == 0,
                _ => true,
            };
            if !ok {
                return Err(Error::InvalidElement(format!("{window:?}")));
            }
        }
        Ok(WeylElement(window))
    }

    pub fn window(&self) -> &[i8] {
        &self.0
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    /// `w(j)` for a signed 1-based position `j`.
    pub fn apply_index(&self, j: i8) -> i8 {
        let v = self.0[j.unsigned_abs() as usize - 1];
        if j < 0 {
            -v
        } else {
            v
        }
    }

    /// `self * other`, i.e. `other` applied first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement(other.0.iter().map(|&j| self.apply_index(j)).collect())
    }

    pub fn inverse(&self) -> WeylElement {
        let mut out = vec![0i8; self.0.len()];
        for (j, &v) in self.0.iter().enumerate() {
            let j = j as i8 + 1;
            out[v.unsigned_abs() as usize - 1] = if v < 0 { -j } else { j };
        }
        WeylElement(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(j, &v)| v == j as i8 + 1)
    }

    /// Action on an ambient coordinate vector.
    pub fn apply_vector(&self, v: &[i32]) -> Vec<i32> {
        let mut out = vec![0i32; v.len()];
        for (j, &x) in v.iter().enumerate() {
            let t = self.0[j];
            let target = t.unsigned_abs() as usize - 1;
            out[target] = if t < 0 { -x } else { x };
        }
        out
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// `a * b` after checking that both live in the same ambient window.
pub fn multiply(a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
    if a.width() != b.width() {
        return Err(Error::TypeMismatch);
    }
    Ok(a.compose(b))
}

/// Length by the per-family inversion formulas.
pub fn length(rs: &RootSystem, w: &WeylElement) -> u32 {
    let mut total = 0u32;
    for lay in rs.layout() {
        let block = &w.window()[lay.pos_range()];
        // shift values to 1-based local labels
        let off = lay.first_pos as i8;
        let local: Vec<i8> = block.iter().map(|&v| if v < 0 { v + off } else { v - off }).collect();
        let n = local.len();
        let mut inv = 0u32;
        let mut neg_pairs = 0u32;
        for i in 0..n {
            for j in i + 1..n {
                if local[i] > local[j] {
                    inv += 1;
                }
                if local[i] + local[j] < 0 {
                    neg_pairs += 1;
                }
            }
        }
        let neg_sum: u32 = local.iter().filter(|&&v| v < 0).map(|&v| (-v) as u32).sum();
        total += match lay.factor.family {
            Family::A => inv,
            Family::B | Family::C => inv + neg_sum,
            Family::D => inv + neg_pairs,
            _ => unreachable!("only classical factors are built"),
        };
    }
    total
}

/// A subset `J` of the simple roots, as a bitmask over 0-based indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetJ(pub u32);

impl SubsetJ {
    pub const EMPTY: SubsetJ = SubsetJ(0);

    pub fn full(rank: usize) -> Self {
        SubsetJ(((1u64 << rank) - 1) as u32)
    }

    pub fn from_indices(indices: &[usize], rank: usize) -> Result<Self> {
        let mut m = 0u32;
        for &i in indices {
            if i >= rank {
                return Err(Error::IndexOutOfRange { index: i, rank });
            }
            m |= 1 << i;
        }
        Ok(SubsetJ(m))
    }

    /// Every subset of `{0, ..., rank-1}`, in bitmask order.
    pub fn all(rank: usize) -> impl Iterator<Item = SubsetJ> {
        (0..1u32 << rank).map(SubsetJ)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(&self, i: usize) -> SubsetJ {
        SubsetJ(self.0 | 1 << i)
    }

    pub fn without(&self, i: usize) -> SubsetJ {
        SubsetJ(self.0 & !(1 << i))
    }

    pub fn complement(&self, rank: usize) -> SubsetJ {
        SubsetJ(!self.0 & SubsetJ::full(rank).0)
    }

    pub fn is_subset(&self, other: &SubsetJ) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let m = self.0;
        (0..32).filter(move |i| m >> i & 1 == 1)
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// 1-based labels, as used in reports.
    pub fn labels(&self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl Serialize for SubsetJ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

impl fmt::Debug for SubsetJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SubsetJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

/// An element of `W^J` together with its `J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CosetRepJ {
    pub element: WeylElement,
    pub j: SubsetJ,
}

impl CosetRepJ {
    pub fn new(w: &WeylGroup, element: WeylElement, j: SubsetJ) -> Result<Self> {
        let idx = w.index_of(&element).ok_or_else(|| Error::InvalidElement(element.to_string()))?;
        if !w.in_wj(idx, j) {
            return Err(Error::NotCosetRep(element.to_string()));
        }
        Ok(CosetRepJ { element, j })
    }
}

/// The enumerated Weyl group with multiplication tables by simple reflections.
///
/// Elements are indexed in (length, window) order, so index 0 is the identity
/// and the last index is the longest element.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    rs: RootSystem,
    elements: Vec<WeylElement>,
    index: HashMap<WeylElement, usize>,
    lengths: Vec<u32>,
    left: Vec<Vec<u32>>,
    right: Vec<Vec<u32>>,
}

impl WeylGroup {
    pub fn new(rs: RootSystem) -> Result<Self> {
        Self::with_cap(rs, DEFAULT_ENUMERATION_CAP)
    }

    pub fn with_cap(rs: RootSystem, cap: u128) -> Result<Self> {
        let order: u128 = rs
            .cartan_type()
            .factors
            .iter()
            .map(|f| f.weyl_order().expect("classical"))
            .product();
        if order > cap {
            return Err(Error::CapExceeded { what: format!("|W({})|", rs.cartan_type()), size: order, cap });
        }
        let id = WeylElement::identity(rs.width());
        let mut seen: HashMap<WeylElement, ()> = HashMap::new();
        let mut elements = vec![id.clone()];
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for s in rs.reflections() {
                let sw = s.compose(&w);
                if !seen.contains_key(&sw) {
                    seen.insert(sw.clone(), ());
                    elements.push(sw.clone());
                    queue.push_back(sw);
                }
            }
        }
        debug_assert_eq!(elements.len() as u128, order);
        let mut keyed: Vec<(u32, WeylElement)> = elements.into_iter().map(|w| (length(&rs, &w), w)).collect();
        keyed.sort();
        let lengths: Vec<u32> = keyed.iter().map(|(l, _)| *l).collect();
        let elements: Vec<WeylElement> = keyed.into_iter().map(|(_, w)| w).collect();
        let index: HashMap<WeylElement, usize> =
            elements.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let table = |left: bool| -> Vec<Vec<u32>> {
            rs.reflections()
                .iter()
                .map(|s| {
                    elements
                        .iter()
                        .map(|w| {
                            let p = if left { s.compose(w) } else { w.compose(s) };
                            index[&p] as u32
                        })
                        .collect()
                })
                .collect()
        };
        let left = table(true);
        let right = table(false);
        Ok(WeylGroup { rs, elements, index, lengths, left, right })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn length(&self, i: usize) -> u32 {
        self.lengths[i]
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of `w_Delta`.
    pub fn longest(&self) -> usize {
        self.elements.len() - 1
    }

    /// `s_i * w`.
    pub fn left_mul(&self, s: usize, w: usize) -> usize {
        self.left[s][w] as usize
    }

    /// `w * s_i`.
    pub fn right_mul(&self, w: usize, s: usize) -> usize {
        self.right[s][w] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    /// `l(w s_i) < l(w)`, equivalently `w(alpha_i)` is negative.
    pub fn is_right_descent(&self, w: usize, s: usize) -> bool {
        self.lengths[self.right_mul(w, s)] < self.lengths[w]
    }

    /// `l(s_i w) < l(w)`.
    pub fn is_left_descent(&self, w: usize, s: usize) -> bool {
        self.lengths[self.left_mul(s, w)] < self.lengths[w]
    }

    pub fn left_descents(&self, w: usize) -> SubsetJ {
        SubsetJ((0..self.rank()).filter(|&s| self.is_left_descent(w, s)).fold(0, |m, s| m | 1 << s))
    }

    /// Image of root `idx` under element `w`.
    pub fn act_on_root(&self, w: usize, idx: usize) -> usize {
        self.rs.act_on_root(&self.elements[w], idx)
    }

    /// `w(J)` is positive.
    pub fn in_wj(&self, w: usize, j: SubsetJ) -> bool {
        j.iter().all(|s| !self.is_right_descent(w, s))
    }

    /// `w(J)` positive and `w(Delta - J)` negative.
    pub fn in_vj(&self, w: usize, j: SubsetJ) -> bool {
        (0..self.rank()).all(|s| self.is_right_descent(w, s) != j.contains(s))
    }

    /// Minimal representative of `w W_J`: strip right descents in `J`,
    /// smallest index first.
    pub fn project(&self, w: usize, j: SubsetJ) -> usize {
        let mut w = w;
        'outer: loop {
            for s in j.iter() {
                if self.is_right_descent(w, s) {
                    w = self.right_mul(w, s);
                    continue 'outer;
                }
            }
            return w;
        }
    }

    /// Same as [`WeylGroup::project`] but stripping the largest index first.
    pub fn project_reversed(&self, w: usize, j: SubsetJ) -> usize {
        let mut w = w;
        let idx: Vec<usize> = j.iter().collect();
        'outer: loop {
            for &s in idx.iter().rev() {
                if self.is_right_descent(w, s) {
                    w = self.right_mul(w, s);
                    continue 'outer;
                }
            }
            return w;
        }
    }

    /// Longest element `w_J` of `W_J`.
    pub fn longest_in(&self, j: SubsetJ) -> usize {
        let mut w = self.identity();
        'outer: loop {
            for s in j.iter() {
                if !self.is_right_descent(w, s) {
                    w = self.right_mul(w, s);
                    continue 'outer;
                }
            }
            return w;
        }
    }

    /// Elements of the parabolic subgroup `W_J`, in canonical order.
    pub fn parabolic(&self, j: SubsetJ) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for s in j.iter() {
                let ws = self.right_mul(w, s);
                if !seen[ws] {
                    seen[ws] = true;
                    queue.push_back(ws);
                }
            }
        }
        (0..self.order()).filter(|&w| seen[w]).collect()
    }

    pub fn enumerate_wj(&self, j: SubsetJ) -> Vec<usize> {
        (0..self.order()).filter(|&w| self.in_wj(w, j)).collect()
    }

    pub fn enumerate_vj(&self, j: SubsetJ) -> Vec<usize> {
        (0..self.order()).filter(|&w| self.in_vj(w, j)).collect()
    }

    /// `z^J = w_Delta w_J`.
    pub fn z_j(&self, j: SubsetJ) -> usize {
        self.mul(self.longest(), self.longest_in(j))
    }

    /// A reduced word `[i_1, ..., i_k]` with `w = s_{i_1} ... s_{i_k}`,
    /// peeling off the smallest left descent each time.
    pub fn reduced_word(&self, w: usize) -> Vec<usize> {
        let mut word = Vec::new();
        let mut w = w;
        while w != 0 {
            let s = (0..self.rank()).find(|&s| self.is_left_descent(w, s)).expect("nonidentity has a descent");
            word.push(s);
            w = self.left_mul(s, w);
        }
        word
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str) -> WeylGroup {
        WeylGroup::new(RootSystem::build(&s.parse().unwrap()).unwrap()).unwrap()
    }

    fn el(v: &[i8]) -> WeylElement {
        WeylElement::from_window(v.to_vec())
    }

    #[test]
    fn composition_convention() {
        let s1 = el(&[2, 1, 3]);
        let s2 = el(&[1, 3, 2]);
        assert_eq!(multiply(&s1, &s2).unwrap(), el(&[2, 3, 1]));
        let b1 = el(&[-1, 2]);
        assert_eq!(el(&[2, 1]).compose(&b1), el(&[-2, 1]));
        assert_eq!(multiply(&s1, &el(&[1, 2])), Err(Error::TypeMismatch));
    }

    #[test]
    fn lengths() {
        let b2 = RootSystem::build(&"B2".parse().unwrap()).unwrap();
        assert_eq!(length(&b2, &el(&[-1, -2])), 4);
        let a2 = RootSystem::build(&"A2".parse().unwrap()).unwrap();
        assert_eq!(length(&a2, &el(&[2, 3, 1])), 2);
        assert_eq!(length(&a2, &el(&[1, 2, 3])), 0);
    }

    #[test]
    fn orders() {
        assert_eq!(group("A1").order(), 2);
        assert_eq!(group("B2").order(), 8);
        assert_eq!(group("A2xA1").order(), 12);
        assert_eq!(group("D4").order(), 192);
    }

    #[test]
    fn cap_is_enforced() {
        let rs = RootSystem::build(&"A5".parse().unwrap()).unwrap();
        assert!(matches!(WeylGroup::with_cap(rs, 100), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn longest_elements() {
        let g = group("B2");
        assert_eq!(g.element(g.longest_in(SubsetJ::full(2))), &el(&[-1, -2]));
        assert_eq!(g.longest_in(SubsetJ::EMPTY), 0);
        let d5 = group("D5");
        assert_eq!(d5.element(d5.longest()), &el(&[1, -2, -3, -4, -5]));
    }

    #[test]
    fn projections_in_a2() {
        let g = group("A2");
        let j = SubsetJ(1);
        assert_eq!(g.element(g.project(g.longest(), j)), &el(&[2, 3, 1]));
        let s1 = g.index_of(&el(&[2, 1, 3])).unwrap();
        assert_eq!(g.project(s1, j), 0);
        assert_eq!(g.element(g.z_j(j)), &el(&[2, 3, 1]));
    }

    #[test]
    fn vj_in_a2() {
        let g = group("A2");
        let vj: Vec<&WeylElement> = g.enumerate_vj(SubsetJ(1)).into_iter().map(|w| g.element(w)).collect();
        assert_eq!(vj, vec![&el(&[1, 3, 2]), &el(&[2, 3, 1])]);
        assert_eq!(g.enumerate_vj(SubsetJ::EMPTY), vec![g.longest()]);
        assert_eq!(g.enumerate_vj(SubsetJ::full(2)), vec![0]);
    }

    #[test]
    fn reduced_word_multiplies_back() {
        let g = group("B3");
        for w in 0..g.order() {
            let word = g.reduced_word(w);
            assert_eq!(word.len() as u32, g.length(w));
            let mut x = 0;
            for &s in word.iter().rev() {
                x = g.left_mul(s, x);
            }
            assert_eq!(x, w);
        }
    }

    #[test]
    fn checked_rejects_bad_windows() {
        let rs = RootSystem::build(&"D4".parse().unwrap()).unwrap();
        assert!(WeylElement::checked(&rs, vec![-1, 2, 3, 4]).is_err());
        assert!(WeylElement::checked(&rs, vec![-1, -2, 3, 4]).is_ok());
        let a = RootSystem::build(&"A2".parse().unwrap()).unwrap();
        assert!(WeylElement::checked(&a, vec![1, 1, 3]).is_err());
        assert!(WeylElement::checked(&a, vec![-1, 2, 3]).is_err());
    }
}
