//! Classical root systems with explicit integer coordinates.
//!
//! Every irreducible factor is realized inside its own block of an ambient
//! lattice: `A_l` uses `l + 1` coordinates, `B_l`, `C_l`, `D_l` use `l`.
//! Weyl group elements act on that lattice as signed permutations of the
//! coordinates, which is how reflections are applied while the root list is
//! generated. Roots are then stored by their simple-root coefficients, so
//! positivity is a sign test and nothing ever touches floating point.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::weyl::WeylElement;

/// Family letter of an irreducible root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }

    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// One irreducible factor, e.g. `B3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub family: Family,
    pub rank: usize,
}

impl Factor {
    pub fn new(family: Family, rank: usize) -> Self {
        Factor { family, rank }
    }

    /// Number of ambient coordinates used by this factor.
    pub fn width(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    /// Classical count of positive roots.
    pub fn num_positive_roots(&self) -> Option<usize> {
        let l = self.rank;
        match self.family {
            Family::A => Some(l * (l + 1) / 2),
            Family::B | Family::C => Some(l * l),
            Family::D => Some(l * (l - 1)),
            _ => None,
        }
    }

    /// Classical order of the Weyl group.
    pub fn weyl_order(&self) -> Option<u128> {
        let l = self.rank as u128;
        let fact = |n: u128| (1..=n).product::<u128>();
        match self.family {
            Family::A => Some(fact(l + 1)),
            Family::B | Family::C => Some((1u128 << l) * fact(l)),
            Family::D => Some((1u128 << (l - 1)) * fact(l)),
            _ => None,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Ordered list of irreducible factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub factors: Vec<Factor>,
}

impl CartanType {
    pub fn new(factors: Vec<Factor>) -> Self {
        CartanType { factors }
    }

    pub fn irreducible(family: Family, rank: usize) -> Self {
        CartanType { factors: vec![Factor::new(family, rank)] }
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }

    pub fn is_classical(&self) -> bool {
        self.factors.iter().all(|f| f.family.is_classical())
    }

    /// Replaces `D2` by `A1xA1` and `D3` by `A3`.
    ///
    /// The signed-permutation model of `D_l` degenerates for `l < 4`, so these
    /// are rewritten before a root system is built.
    pub fn canonicalize(&self) -> CartanType {
        let mut out = Vec::with_capacity(self.factors.len() + 1);
        for &f in &self.factors {
            match (f.family, f.rank) {
                (Family::D, 2) => {
                    log::warn!("D2 canonicalized to A1xA1");
                    out.push(Factor::new(Family::A, 1));
                    out.push(Factor::new(Family::A, 1));
                }
                (Family::D, 3) => {
                    log::warn!("D3 canonicalized to A3");
                    out.push(Factor::new(Family::A, 3));
                }
                _ => out.push(f),
            }
        }
        CartanType { factors: out }
    }

    fn validate(&self) -> Result<()> {
        if self.factors.is_empty() {
            return Err(Error::ParseType(String::new()));
        }
        for f in &self.factors {
            if !f.family.is_classical() {
                return Err(Error::UnsupportedType(f.to_string()));
            }
            let min = if f.family == Family::D { 2 } else { 1 };
            if f.rank < min {
                return Err(Error::UnsupportedType(f.to_string()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, fac) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{fac}")?;
        }
        Ok(())
    }
}

impl FromStr for CartanType {
    type Err = Error;

    /// Parses strings such as `A2`, `B3`, `A2xC3` (also `A2×C3`, `A2*C3`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseType(s.to_string());
        let mut factors = Vec::new();
        for part in s.split(['x', 'X', '×', '*']) {
            let part = part.trim();
            let mut chars = part.chars();
            let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
                Some('A') => Family::A,
                Some('B') => Family::B,
                Some('C') => Family::C,
                Some('D') => Family::D,
                Some('E') => Family::E,
                Some('F') => Family::F,
                Some('G') => Family::G,
                _ => return Err(bad()),
            };
            let rank: usize = chars.as_str().trim().parse().map_err(|_| bad())?;
            if rank == 0 {
                return Err(bad());
            }
            factors.push(Factor::new(family, rank));
        }
        Ok(CartanType { factors })
    }
}

/// A root, stored by its coefficients on the global simple-root list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Root {
    pub coeffs: Vec<i32>,
    pub factor: usize,
}

impl Root {
    pub fn height(&self) -> i32 {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }
}

/// A set of roots, as a bitset over the root list of a [`RootSystem`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct RootSet(pub u128);

impl RootSet {
    pub const EMPTY: RootSet = RootSet(0);

    pub fn insert(&mut self, idx: usize) {
        self.0 |= 1u128 << idx;
    }

    pub fn remove(&mut self, idx: usize) {
        self.0 &= !(1u128 << idx);
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.0 >> idx & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(&self, other: &RootSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(&self, other: &RootSet) -> RootSet {
        RootSet(self.0 & other.0)
    }

    pub fn difference(&self, other: &RootSet) -> RootSet {
        RootSet(self.0 & !other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.0;
        (0..128).filter(move |i| bits >> i & 1 == 1)
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for RootSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = RootSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

/// Placement of one factor inside the global index spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorLayout {
    pub factor: Factor,
    /// First global simple-root index of the factor.
    pub first_simple: usize,
    /// First ambient coordinate (0-based) of the factor.
    pub first_pos: usize,
}

impl FactorLayout {
    pub fn simple_range(&self) -> std::ops::Range<usize> {
        self.first_simple..self.first_simple + self.factor.rank
    }

    pub fn pos_range(&self) -> std::ops::Range<usize> {
        self.first_pos..self.first_pos + self.factor.width()
    }
}

/// A classical root system with its Weyl group realized by signed permutations.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan: CartanType,
    layout: Vec<FactorLayout>,
    width: usize,
    roots: Vec<Root>,
    ambient: Vec<Vec<i32>>,
    lookup: HashMap<Vec<i32>, usize>,
    num_positive: usize,
    highest: Vec<usize>,
    reflections: Vec<WeylElement>,
}

fn dot(a: &[i32], b: &[i32]) -> i32 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl RootSystem {
    /// Builds the root system of a classical Cartan type.
    ///
    /// `D2` and `D3` are canonicalized first (see [`CartanType::canonicalize`]).
    pub fn build(ct: &CartanType) -> Result<RootSystem> {
        ct.validate()?;
        let ct = ct.canonicalize();
        let mut layout = Vec::new();
        let (mut first_simple, mut first_pos) = (0, 0);
        for &factor in &ct.factors {
            layout.push(FactorLayout { factor, first_simple, first_pos });
            first_simple += factor.rank;
            first_pos += factor.width();
        }
        let width = first_pos;
        let rank = first_simple;

        let mut simple_vecs = Vec::with_capacity(rank);
        let mut reflections = Vec::with_capacity(rank);
        let mut simple_factor = Vec::with_capacity(rank);
        for (fi, lay) in layout.iter().enumerate() {
            for i in 1..=lay.factor.rank {
                let (v, w) = simple_root_data(lay, i, width);
                simple_vecs.push(v);
                reflections.push(w);
                simple_factor.push(fi);
            }
        }

        // Orbit of the simple roots under the simple reflections, tracking
        // ambient vectors and simple-root coefficients side by side.
        let mut ambient: Vec<Vec<i32>> = Vec::new();
        let mut coeffs: Vec<Vec<i32>> = Vec::new();
        let mut factor_of: Vec<usize> = Vec::new();
        let mut lookup: HashMap<Vec<i32>, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..rank {
            let mut c = vec![0; rank];
            c[i] = 1;
            lookup.insert(simple_vecs[i].clone(), ambient.len());
            ambient.push(simple_vecs[i].clone());
            coeffs.push(c);
            factor_of.push(simple_factor[i]);
            queue.push_back(ambient.len() - 1);
        }
        while let Some(k) = queue.pop_front() {
            for i in 0..rank {
                let alpha = &simple_vecs[i];
                let beta = &ambient[k];
                let pairing = 2 * dot(beta, alpha) / dot(alpha, alpha);
                let image = reflections[i].apply_vector(beta);
                let expected: Vec<i32> =
                    beta.iter().zip(alpha).map(|(b, a)| b - pairing * a).collect();
                debug_assert_eq!(image, expected, "signed permutation is not the reflection");
                if !lookup.contains_key(&image) {
                    let mut c = coeffs[k].clone();
                    c[i] -= pairing;
                    lookup.insert(image.clone(), ambient.len());
                    ambient.push(image);
                    coeffs.push(c);
                    factor_of.push(factor_of[k]);
                    queue.push_back(ambient.len() - 1);
                }
            }
        }

        // Canonical order: simple roots, then positive roots by height, then
        // the negatives in the same order.
        let mut pos: Vec<usize> = (0..ambient.len()).filter(|&k| coeffs[k].iter().all(|&c| c >= 0)).collect();
        for k in 0..ambient.len() {
            let c = &coeffs[k];
            let nonneg = c.iter().all(|&x| x >= 0);
            let nonpos = c.iter().all(|&x| x <= 0);
            if nonneg == nonpos {
                return Err(Error::UnsupportedType(format!("{ct}: mixed-sign root {c:?}")));
            }
        }
        pos.sort_by(|&a, &b| {
            let ha: i32 = coeffs[a].iter().sum();
            let hb: i32 = coeffs[b].iter().sum();
            ha.cmp(&hb).then_with(|| coeffs[b].cmp(&coeffs[a]))
        });
        let num_positive = pos.len();
        let mut order = pos.clone();
        for &k in &pos {
            let neg: Vec<i32> = ambient[k].iter().map(|x| -x).collect();
            order.push(lookup[&neg]);
        }
        if order.len() != ambient.len() {
            return Err(Error::UnsupportedType(format!("{ct}: root list not closed under negation")));
        }
        if ambient.len() > 128 {
            log::warn!("{ct} has {} roots; root-set operations are unavailable", ambient.len());
        }

        let roots: Vec<Root> = order
            .iter()
            .map(|&k| Root { coeffs: coeffs[k].clone(), factor: factor_of[k] })
            .collect();
        let ambient: Vec<Vec<i32>> = order.iter().map(|&k| ambient[k].clone()).collect();
        let lookup: HashMap<Vec<i32>, usize> =
            ambient.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();

        let highest = (0..layout.len())
            .map(|fi| {
                (0..num_positive)
                    .filter(|&k| roots[k].factor == fi)
                    .max_by_key(|&k| roots[k].height())
                    .expect("every factor has a positive root")
            })
            .collect();

        Ok(RootSystem {
            cartan: ct,
            layout,
            width,
            roots,
            ambient,
            lookup,
            num_positive,
            highest,
            reflections,
        })
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan
    }

    pub fn layout(&self) -> &[FactorLayout] {
        &self.layout
    }

    pub fn rank(&self) -> usize {
        self.reflections.len()
    }

    /// Number of ambient coordinates, which is also the window length of
    /// every Weyl group element.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, idx: usize) -> &Root {
        &self.roots[idx]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    pub fn is_positive(&self, idx: usize) -> bool {
        idx < self.num_positive
    }

    /// Index of `-root`.
    pub fn negate(&self, idx: usize) -> usize {
        if idx < self.num_positive {
            idx + self.num_positive
        } else {
            idx - self.num_positive
        }
    }

    /// Index of the simple root `alpha_i` (0-based).
    pub fn simple_root(&self, i: usize) -> usize {
        i
    }

    pub fn ambient_vector(&self, idx: usize) -> &[i32] {
        &self.ambient[idx]
    }

    pub fn root_index(&self, ambient: &[i32]) -> Option<usize> {
        self.lookup.get(ambient).copied()
    }

    /// Index of the factor containing simple root `i`.
    pub fn factor_of_simple(&self, i: usize) -> usize {
        self.layout
            .iter()
            .position(|l| l.simple_range().contains(&i))
            .expect("simple index in range")
    }

    /// Root index of the highest root of a factor.
    pub fn highest_root(&self, factor: usize) -> usize {
        self.highest[factor]
    }

    /// Coefficient of `alpha_i` in the highest root of `factor`, i.e. the
    /// pairing of the fundamental coweight dual to `alpha_i` with that root.
    pub fn highest_root_coefficient(&self, factor: usize, i: usize) -> Result<u32> {
        let lay = self
            .layout
            .get(factor)
            .ok_or(Error::IndexOutOfFactor { factor, index: i })?;
        if !lay.simple_range().contains(&i) {
            return Err(Error::IndexOutOfFactor { factor, index: i });
        }
        Ok(self.roots[self.highest[factor]].coeffs[i] as u32)
    }

    /// Simple reflection `s_i` (0-based).
    pub fn reflection(&self, i: usize) -> &WeylElement {
        &self.reflections[i]
    }

    pub fn reflections(&self) -> &[WeylElement] {
        &self.reflections
    }

    /// Image of a root under a Weyl group element.
    pub fn act_on_root(&self, w: &WeylElement, idx: usize) -> usize {
        let image = w.apply_vector(&self.ambient[idx]);
        self.lookup[&image]
    }
}

/// Ambient vector and signed-permutation reflection of the `i`-th (1-based)
/// simple root of a factor.
///
/// For `B`, `C`, `D` the reflections `s_1, ..., s_{l-1}` swap the window
/// positions `l-i` and `l-i+1`, so their numbering runs against the
/// coordinates; `s_l` negates position 1 (`B`, `C`) or maps `1 -> -2`,
/// `2 -> -1` (`D`).
fn simple_root_data(lay: &FactorLayout, i: usize, width: usize) -> (Vec<i32>, WeylElement) {
    let o = lay.first_pos;
    let l = lay.factor.rank;
    let mut v = vec![0i32; width];
    let mut window: Vec<i8> = (1..=width as i8).collect();
    // positions below are 1-based within the factor
    let swap = |a: usize, b: usize, window: &mut Vec<i8>| {
        window.swap(o + a - 1, o + b - 1);
    };
    match lay.factor.family {
        Family::A => {
            v[o + i - 1] = 1;
            v[o + i] = -1;
            swap(i, i + 1, &mut window);
        }
        Family::B | Family::C | Family::D if i < l => {
            let a = l - i;
            v[o + a] = 1;
            v[o + a - 1] = -1;
            swap(a, a + 1, &mut window);
        }
        Family::B => {
            v[o] = 1;
            window[o] = -window[o];
        }
        Family::C => {
            v[o] = 2;
            window[o] = -window[o];
        }
        Family::D => {
            v[o] = 1;
            v[o + 1] = 1;
            window[o] = -(o as i8 + 2);
            window[o + 1] = -(o as i8 + 1);
        }
        _ => unreachable!("exceptional factors are rejected before construction"),
    }
    (v, WeylElement::from_window(window))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let ct: CartanType = "A2xC3".parse().unwrap();
        assert_eq!(ct.to_string(), "A2xC3");
        assert_eq!(ct.rank(), 5);
        assert!("Q2".parse::<CartanType>().is_err());
        assert!("A".parse::<CartanType>().is_err());
        assert!("A0".parse::<CartanType>().is_err());
    }

    #[test]
    fn exceptional_types_are_rejected() {
        let ct: CartanType = "E8".parse().unwrap();
        assert!(matches!(RootSystem::build(&ct), Err(Error::UnsupportedType(_))));
        let ct: CartanType = "A2xG2".parse().unwrap();
        assert!(matches!(RootSystem::build(&ct), Err(Error::UnsupportedType(_))));
        let ct = CartanType::irreducible(Family::D, 1);
        assert!(RootSystem::build(&ct).is_err());
    }

    #[test]
    fn small_d_types_are_canonicalized() {
        assert_eq!(rs("D2").cartan_type().to_string(), "A1xA1");
        assert_eq!(rs("D3").cartan_type().to_string(), "A3");
        assert_eq!(rs("D4").cartan_type().to_string(), "D4");
    }

    #[test]
    fn a1_has_two_roots() {
        let r = rs("A1");
        assert_eq!(r.num_roots(), 2);
        assert_eq!(r.num_positive(), 1);
        assert_eq!(r.root(0).coeffs, vec![1]);
    }

    #[test]
    fn a2_highest_root() {
        let r = rs("A2");
        assert_eq!(r.num_positive(), 3);
        assert_eq!(r.root(r.highest_root(0)).coeffs, vec![1, 1]);
    }

    #[test]
    fn b3_highest_root() {
        let r = rs("B3");
        assert_eq!(r.num_positive(), 9);
        assert_eq!(r.root(r.highest_root(0)).coeffs, vec![1, 2, 2]);
    }

    #[test]
    fn highest_root_coefficients() {
        let a = rs("A4");
        for i in 0..4 {
            assert_eq!(a.highest_root_coefficient(0, i).unwrap(), 1);
        }
        let c = rs("C4");
        assert_eq!(c.highest_root_coefficient(0, 3).unwrap(), 1);
        for i in 0..3 {
            assert_eq!(c.highest_root_coefficient(0, i).unwrap(), 2);
        }
        let b = rs("B4");
        assert_eq!(b.highest_root_coefficient(0, 0).unwrap(), 1);
        let d = rs("D5");
        let ones: Vec<usize> = (0..5).filter(|&i| d.highest_root_coefficient(0, i).unwrap() == 1).collect();
        assert_eq!(ones, vec![0, 3, 4]);
        let p = rs("A2xC3");
        assert_eq!(
            p.highest_root_coefficient(0, 3),
            Err(Error::IndexOutOfFactor { factor: 0, index: 3 })
        );
        assert_eq!(p.highest_root_coefficient(1, 4).unwrap(), 1);
    }

    #[test]
    fn negation_pairs_positive_and_negative() {
        let r = rs("D4");
        for k in 0..r.num_roots() {
            let n = r.negate(k);
            assert_ne!(r.is_positive(k), r.is_positive(n));
            let neg: Vec<i32> = r.root(k).coeffs.iter().map(|c| -c).collect();
            assert_eq!(r.root(n).coeffs, neg);
        }
    }

    #[test]
    fn simple_reflection_negates_its_root() {
        let r = rs("A2");
        assert_eq!(r.act_on_root(r.reflection(0), 0), r.negate(0));
        let image = r.act_on_root(r.reflection(0), 1);
        assert_eq!(r.root(image).coeffs, vec![1, 1]);
    }

    #[test]
    fn root_set_ops() {
        let a: RootSet = [1, 3, 5].into_iter().collect();
        let b: RootSet = [3, 5, 7].into_iter().collect();
        assert_eq!(a.intersection(&b).indices(), vec![3, 5]);
        assert_eq!(a.difference(&b).indices(), vec![1]);
        assert!(RootSet::EMPTY.is_subset(&a));
        assert_eq!(a.len(), 3);
    }
}
