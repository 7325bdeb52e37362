//! The order `<_J` on `W^J`, the group `W_Omega`, and explicit chains from
//! the longest element down to the identity that only use length-raising
//! left multiplications by simple reflections and left multiplications by
//! elements of `W_Omega`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots::{CartanType, Factor, Family, RootSystem};
use crate::weyl::{length, SubsetJ, WeylElement, WeylGroup};

/// Longest element of the parabolic subgroup generated by `j`, found by
/// climbing through right ascents. Works without enumerating `W`.
pub fn longest_of(rs: &RootSystem, j: SubsetJ) -> WeylElement {
    let mut w = WeylElement::identity(rs.width());
    let mut len = 0;
    'outer: loop {
        for s in j.iter() {
            let ws = w.compose(rs.reflection(s));
            let l = length(rs, &ws);
            if l > len {
                w = ws;
                len = l;
                continue 'outer;
            }
        }
        return w;
    }
}

/// `W_Omega`: the identity together with `w_{Delta - a_i} w_Delta` for every
/// `i` where the highest root has coefficient one, taken per factor and
/// multiplied out across factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaGroup {
    pub elements: Vec<WeylElement>,
    /// For each element, the simple indices (0-based) of its nontrivial
    /// factor components.
    pub labels: Vec<Vec<usize>>,
}

impl OmegaGroup {
    pub fn build(rs: &RootSystem) -> Result<Self> {
        let mut elements = vec![WeylElement::identity(rs.width())];
        let mut labels: Vec<Vec<usize>> = vec![Vec::new()];
        for (f, lay) in rs.layout().iter().enumerate() {
            let gens = factor_omega(rs, f)?;
            let mut next_e = Vec::new();
            let mut next_l = Vec::new();
            for (e, l) in elements.iter().zip(&labels) {
                next_e.push(e.clone());
                next_l.push(l.clone());
                for (i, u) in &gens {
                    next_e.push(u.compose(e));
                    let mut l2 = l.clone();
                    l2.push(*i);
                    next_l.push(l2);
                }
            }
            elements = next_e;
            labels = next_l;
            debug_assert!(lay.factor.rank > 0);
        }
        Ok(OmegaGroup { elements, labels })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, u: &WeylElement) -> bool {
        self.elements.contains(u)
    }

    pub fn is_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| self.contains(&a.compose(b))))
    }

    /// Element whose only nontrivial component is the generator of simple
    /// index `i`.
    pub fn generator(&self, i: usize) -> Option<&WeylElement> {
        self.labels.iter().position(|l| l == &[i]).map(|k| &self.elements[k])
    }
}

/// Nontrivial generators `(i, w_{Delta_f - a_i} w_{Delta_f})` of one factor,
/// as global elements.
pub fn factor_omega(rs: &RootSystem, f: usize) -> Result<Vec<(usize, WeylElement)>> {
    let lay = rs.layout()[f];
    let all: Vec<usize> = lay.simple_range().collect();
    let full = SubsetJ::from_indices(&all, rs.rank())?;
    let w_full = longest_of(rs, full);
    let mut out = Vec::new();
    for i in lay.simple_range() {
        if rs.highest_root_coefficient(f, i)? == 1 {
            out.push((i, longest_of(rs, full.without(i)).compose(&w_full)));
        }
    }
    Ok(out)
}

/// One step of a chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum StepKind {
    /// Left multiplication by `s_i`, raising the length by one.
    Weak { s: usize },
    /// Left multiplication by an element of `W_Omega`.
    Omega { u: WeylElement },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub kind: StepKind,
    pub from: WeylElement,
    pub to: WeylElement,
}

/// Checks every step of a chain and its endpoints.
pub fn validate_chain(
    rs: &RootSystem,
    omega: &OmegaGroup,
    steps: &[ChainStep],
    start: &WeylElement,
    end: &WeylElement,
) -> Result<()> {
    let mut cur = start.clone();
    for (k, st) in steps.iter().enumerate() {
        if st.from != cur {
            return Err(Error::InvalidChain(format!("step {k} starts at {} not {cur}", st.from)));
        }
        match &st.kind {
            StepKind::Weak { s } => {
                let expect = rs.reflection(*s).compose(&st.from);
                if expect != st.to || length(rs, &st.to) != length(rs, &st.from) + 1 {
                    return Err(Error::InvalidChain(format!("step {k}: s{} {} -> {} is not a weak step", s + 1, st.from, st.to)));
                }
            }
            StepKind::Omega { u } => {
                if !omega.contains(u) {
                    return Err(Error::NotOmegaElement(u.to_string()));
                }
                if u.compose(&st.from) != st.to {
                    return Err(Error::InvalidChain(format!("step {k}: {u} * {} != {}", st.from, st.to)));
                }
            }
        }
        cur = st.to.clone();
    }
    if &cur != end {
        return Err(Error::InvalidChain(format!("chain ends at {cur}, expected {end}")));
    }
    Ok(())
}

/// Chain builder on a single irreducible factor, in local coordinates.
struct Local<'a> {
    rs: &'a RootSystem,
    omega: &'a OmegaGroup,
    l: usize,
    cur: WeylElement,
    len: u32,
    steps: Vec<ChainStep>,
}

fn window(v: impl IntoIterator<Item = i64>) -> Vec<i8> {
    v.into_iter().map(|x| x as i8).collect()
}

impl<'a> Local<'a> {
    /// `s` is the 1-based index used by the classical constructions.
    fn weak(&mut self, s: usize) -> Result<()> {
        let to = self.rs.reflection(s - 1).compose(&self.cur);
        let lt = length(self.rs, &to);
        if lt != self.len + 1 {
            return Err(Error::InvalidChain(format!("s{s} * {} does not raise the length", self.cur)));
        }
        self.steps.push(ChainStep { kind: StepKind::Weak { s: s - 1 }, from: self.cur.clone(), to: to.clone() });
        self.cur = to;
        self.len = lt;
        Ok(())
    }

    fn omega_gen(&self, i: usize) -> Result<WeylElement> {
        self.omega
            .generator(i - 1)
            .cloned()
            .ok_or_else(|| Error::NotOmegaElement(format!("index {i}")))
    }

    fn omega(&mut self, u: &WeylElement) -> Result<()> {
        if !self.omega.contains(u) {
            return Err(Error::NotOmegaElement(u.to_string()));
        }
        let to = u.compose(&self.cur);
        self.steps.push(ChainStep { kind: StepKind::Omega { u: u.clone() }, from: self.cur.clone(), to: to.clone() });
        self.len = length(self.rs, &to);
        self.cur = to;
        Ok(())
    }

    fn expect(&self, w: &[i8], what: &str) -> Result<()> {
        if self.cur.window() != w {
            return Err(Error::InvalidChain(format!("{what}: reached {}, expected {:?}", self.cur, w)));
        }
        Ok(())
    }

    /// Type `A_m` descent from `[m+1, ..., 1]` to the identity on the first
    /// `m+1` positions, through the checkpoints `a_i`, `b_i`. Weak steps and
    /// the rotation `[i+1, ..., m+1, 1, ..., i]` are delegated, so the same
    /// routine serves the positive part of types `B`, `C`, `D`.
    fn type_a_descent(
        &mut self,
        m: usize,
        weak: &dyn Fn(&mut Self, usize) -> Result<()>,
        rotate: &dyn Fn(&mut Self, usize) -> Result<()>,
    ) -> Result<()> {
        let m = m as i64;
        let a = |i: i64| window((m + 2 - i..=m + 1).chain((1..=m + 1 - i).rev()));
        let b = |i: i64| window((1..=i).chain((i + 1..=m + 1).rev()));
        for i in 1..=m {
            self.expect(&a(i), "a_i")?;
            rotate(self, i as usize)?;
            self.expect(&b(i), "b_i")?;
            if i < m {
                for k in 1..=i {
                    for s in (i - k + 1)..=(m - k) {
                        weak(self, s as usize)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn chain_a(&mut self) -> Result<()> {
        let l = self.l;
        for i in 1..=l {
            let u = self.omega_gen(i)?;
            let expect = window((i as i64 + 1..=l as i64 + 1).chain(1..=i as i64));
            if u.window() != expect.as_slice() {
                return Err(Error::InvalidChain(format!("u_{i} = {u}, expected {expect:?}")));
            }
        }
        self.type_a_descent(l, &|b, s| b.weak(s), &|b, i| {
            let u = b.omega_gen(i)?;
            b.omega(&u)
        })
    }

    /// Left multiplication by `[l, 1, ..., l-1]`, expanded for the family.
    fn cycle(&mut self, family: Family) -> Result<()> {
        let l = self.l;
        let before = self.cur.clone();
        match family {
            Family::B => {
                for s in (1..=l).rev() {
                    self.weak(s)?;
                }
                let u = self.omega_gen(1)?;
                self.omega(&u)?;
            }
            Family::C => {
                let u = self.omega_gen(l)?;
                for s in (1..=l).rev() {
                    self.weak(s)?;
                }
                self.omega(&u)?;
                self.weak(l)?;
                self.omega(&u)?;
            }
            Family::D => {
                self.weak(l)?;
                for s in (1..=l - 2).rev() {
                    self.weak(s)?;
                }
                let u = self.omega_gen(1)?;
                self.omega(&u)?;
            }
            _ => unreachable!("cycle is only used for B, C, D"),
        }
        let c = WeylElement::from_window(window(std::iter::once(l as i64).chain(1..l as i64)));
        if self.cur != c.compose(&before) {
            return Err(Error::InvalidChain(format!("cycle expansion for {family:?} is not [l,1,...,l-1]")));
        }
        Ok(())
    }

    /// From `[l, ..., 1]` to the identity inside the positive elements.
    fn positive_descent(&mut self, family: Family) -> Result<()> {
        let l = self.l;
        if l < 2 {
            return Ok(());
        }
        // s_j of A_{l-1} is s_{l-j} here; the A_{l-1} rotation by i is the
        // cycle raised to the power l - i.
        self.type_a_descent(l - 1, &move |b, s| b.weak(l - s), &move |b, i| {
            for _ in 0..l - i {
                b.cycle(family)?;
            }
            Ok(())
        })
    }

    fn chain_b(&mut self) -> Result<()> {
        let l = self.l as i64;
        let u = self.omega_gen(1)?;
        let expect = window((1..l).chain(std::iter::once(-l)));
        if u.window() != expect.as_slice() {
            return Err(Error::InvalidChain(format!("B: Omega generator {u}")));
        }
        for i in 1..=l {
            let a = window((i..=l).map(|x| -x).chain((1..i).rev()));
            let b = window((i..l).map(|x| -x).chain(std::iter::once(l)).chain((1..i).rev()));
            self.expect(&a, "a_i")?;
            self.omega(&u)?;
            self.expect(&b, "b_i")?;
            if i < l {
                for s in 1..=(l - i) as usize {
                    self.weak(s)?;
                }
            }
        }
        self.positive_descent(Family::B)
    }

    fn chain_c(&mut self) -> Result<()> {
        let l = self.l as i64;
        let u = self.omega_gen(self.l)?;
        let expect = window((1..=l).rev().map(|x| -x));
        if u.window() != expect.as_slice() {
            return Err(Error::InvalidChain(format!("C: Omega generator {u}")));
        }
        self.expect(&window((1..=l).map(|x| -x)), "w_Delta")?;
        self.omega(&u)?;
        self.expect(&window((1..=l).rev()), "[l..1]")?;
        self.positive_descent(Family::C)
    }

    fn chain_d(&mut self) -> Result<()> {
        let l = self.l as i64;
        let u1 = self.omega_gen(1)?;
        let ul = self.omega_gen(self.l)?;
        let e1 = window(std::iter::once(-1).chain(2..l).chain(std::iter::once(-l)));
        let (el, start) = if l % 2 == 0 {
            (window((1..=l).rev().map(|x| -x)), window((1..=l).map(|x| -x)))
        } else {
            (
                window(std::iter::once(l).chain((1..l).rev().map(|x| -x))),
                window(std::iter::once(1).chain((2..=l).map(|x| -x))),
            )
        };
        if u1.window() != e1.as_slice() || ul.window() != el.as_slice() {
            return Err(Error::InvalidChain(format!("D: Omega generators {u1}, {ul}")));
        }
        self.expect(&start, "w_Delta")?;
        self.omega(&ul)?;
        self.expect(&window((1..=l).rev()), "[l..1]")?;
        self.positive_descent(Family::D)
    }
}

/// Chain for one irreducible factor in its own coordinates.
fn factor_chain(factor: Factor) -> Result<Vec<ChainStep>> {
    let rs = RootSystem::build(&CartanType::new(vec![factor]))?;
    let omega = OmegaGroup::build(&rs)?;
    let start = longest_of(&rs, SubsetJ::full(rs.rank()));
    let mut b = Local { rs: &rs, omega: &omega, l: factor.rank, len: length(&rs, &start), cur: start, steps: Vec::new() };
    match factor.family {
        Family::A => b.chain_a()?,
        Family::B => b.chain_b()?,
        Family::C => b.chain_c()?,
        Family::D => b.chain_d()?,
        _ => return Err(Error::UnsupportedType(factor.to_string())),
    }
    Ok(b.steps)
}

/// Chain from `w_Delta` to the identity for a product of classical factors,
/// handled factor by factor; the result is validated before it is returned.
pub fn weyllem2_chain(rs: &RootSystem) -> Result<Vec<ChainStep>> {
    let omega = OmegaGroup::build(rs)?;
    let w0 = longest_of(rs, SubsetJ::full(rs.rank()));
    let mut cur = w0.clone();
    let mut steps = Vec::new();
    for lay in rs.layout() {
        let off = lay.first_pos as i8;
        let shift = |v: i8| if v < 0 { v - off } else { v + off };
        let embed_block = |global: &WeylElement, local: &WeylElement| {
            let mut w = global.window().to_vec();
            for (k, &v) in local.window().iter().enumerate() {
                w[lay.first_pos + k] = shift(v);
            }
            WeylElement::from_window(w)
        };
        let id = WeylElement::identity(rs.width());
        for st in factor_chain(lay.factor)? {
            let kind = match st.kind {
                StepKind::Weak { s } => StepKind::Weak { s: s + lay.first_simple },
                StepKind::Omega { u } => StepKind::Omega { u: embed_block(&id, &u) },
            };
            let to = embed_block(&cur, &st.to);
            steps.push(ChainStep { kind, from: cur.clone(), to: to.clone() });
            cur = to;
        }
    }
    validate_chain(rs, &omega, &steps, &w0, &WeylElement::identity(rs.width()))?;
    Ok(steps)
}

pub fn weyllem2_chain_for(ct: &CartanType) -> Result<Vec<ChainStep>> {
    weyllem2_chain(&RootSystem::build(ct)?)
}

/// `w <_J w2` or `w = w2`, by search over projected length-raising moves.
pub fn leq_j(g: &WeylGroup, j: SubsetJ, w: usize, w2: usize) -> bool {
    distances_j(g, j, w)[w2].is_some()
}

/// Successors of `w` in `W^J`: `(s w)^J` whenever that raises the length.
pub fn successors_j(g: &WeylGroup, j: SubsetJ, w: usize) -> Vec<(usize, usize)> {
    (0..g.rank())
        .filter_map(|s| {
            let x = g.project(g.left_mul(s, w), j);
            (g.length(x) > g.length(w)).then_some((s, x))
        })
        .collect()
}

/// Breadth-first distances from `w` along successor moves.
pub fn distances_j(g: &WeylGroup, j: SubsetJ, w: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.order()];
    dist[w] = Some(0);
    let mut queue = VecDeque::from([w]);
    while let Some(x) = queue.pop_front() {
        let d = dist[x].expect("queued");
        for (_, y) in successors_j(g, j, x) {
            if dist[y].is_none() {
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// For `w` in `V^J` other than `z^J`: some `w'` in `V^J` above `w` and a
/// simple `s` lowering the projection of `s w` but not that of `s w'`.
pub fn weyllem1_witness(g: &WeylGroup, j: SubsetJ, w: usize) -> Result<(usize, usize)> {
    if !g.in_vj(w, j) {
        return Err(Error::NotCosetRep(g.element(w).to_string()));
    }
    let dist = distances_j(g, j, w);
    let mut above: Vec<(usize, usize)> = dist
        .iter()
        .enumerate()
        .filter_map(|(x, d)| d.map(|d| (d, x)))
        .filter(|&(_, x)| g.in_vj(x, j))
        .collect();
    above.sort_unstable();
    let lowers = |x: usize, s: usize| g.length(g.project(g.left_mul(s, x), j)) < g.length(x);
    for (_, x) in above {
        for s in 0..g.rank() {
            if lowers(w, s) && !lowers(x, s) {
                return Ok((x, s));
            }
        }
    }
    Err(Error::NoWitness(format!("{} for J = {j}", g.element(w))))
}

/// A chain of projections from `z^J` to `w`: the full chain for `W`, followed
/// by a reduced word of `w`, each step projected to `W^J`.
pub fn weyllem3_lift(g: &WeylGroup, j: SubsetJ, w: usize) -> Result<Vec<ChainStep>> {
    if !g.in_wj(w, j) {
        return Err(Error::NotCosetRep(g.element(w).to_string()));
    }
    let mut full: Vec<(Option<usize>, usize, usize)> = Vec::new();
    for st in weyllem2_chain(g.root_system())? {
        let from = g.index_of(&st.from).expect("chain element in W");
        let to = g.index_of(&st.to).expect("chain element in W");
        let kind = match st.kind {
            StepKind::Weak { s } => Some(s),
            StepKind::Omega { .. } => None,
        };
        full.push((kind, from, to));
    }
    let mut x = g.identity();
    for &s in g.reduced_word(w).iter().rev() {
        let y = g.left_mul(s, x);
        full.push((Some(s), x, y));
        x = y;
    }
    let id = WeylElement::identity(g.root_system().width());
    let steps = full
        .into_iter()
        .map(|(kind, from, to)| {
            let (pf, pt) = (g.project(from, j), g.project(to, j));
            let kind = match kind {
                Some(s) if g.length(pt) > g.length(pf) => StepKind::Weak { s },
                Some(_) => StepKind::Omega { u: id.clone() },
                None => {
                    let u = g.mul(to, g.inverse(from));
                    StepKind::Omega { u: g.element(u).clone() }
                }
            };
            ChainStep { kind, from: g.element(pf).clone(), to: g.element(pt).clone() }
        })
        .collect::<Vec<_>>();
    validate_lift(g, j, w, &steps)?;
    Ok(steps)
}

/// Checks a projected chain: starts at `z^J`, ends at `w`, and each step is
/// an `Omega` move on projections or a projected length-raising `s` move.
pub fn validate_lift(g: &WeylGroup, j: SubsetJ, w: usize, steps: &[ChainStep]) -> Result<()> {
    let omega = OmegaGroup::build(g.root_system())?;
    let idx = |x: &WeylElement| g.index_of(x).ok_or_else(|| Error::InvalidElement(x.to_string()));
    let mut cur = g.z_j(j);
    for (k, st) in steps.iter().enumerate() {
        let from = idx(&st.from)?;
        let to = idx(&st.to)?;
        if from != cur {
            return Err(Error::InvalidChain(format!("lift step {k} is not continuous")));
        }
        let ok = match &st.kind {
            StepKind::Weak { s } => {
                g.project(g.left_mul(*s, from), j) == to && g.length(to) > g.length(from)
            }
            StepKind::Omega { u } => {
                omega.contains(u) && g.project(g.mul(idx(u)?, from), j) == to
            }
        };
        if !ok {
            return Err(Error::InvalidChain(format!("lift step {k}: {:?} {} -> {}", st.kind, st.from, st.to)));
        }
        cur = to;
    }
    if cur != w {
        return Err(Error::InvalidChain(format!("lift ends at {}", g.element(cur))));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(&s.parse().unwrap()).unwrap()
    }

    fn group(s: &str) -> WeylGroup {
        WeylGroup::new(rs(s)).unwrap()
    }

    fn el(v: &[i8]) -> WeylElement {
        WeylElement::from_window(v.to_vec())
    }

    #[test]
    fn omega_orders() {
        assert_eq!(OmegaGroup::build(&rs("A4")).unwrap().order(), 5);
        assert_eq!(OmegaGroup::build(&rs("B3")).unwrap().order(), 2);
        assert_eq!(OmegaGroup::build(&rs("C3")).unwrap().order(), 2);
        assert_eq!(OmegaGroup::build(&rs("D4")).unwrap().order(), 4);
        assert_eq!(OmegaGroup::build(&rs("D5")).unwrap().order(), 4);
        let p = OmegaGroup::build(&rs("A2xB2")).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.is_closed());
    }

    #[test]
    fn omega_generators_match_classical_windows() {
        let b = OmegaGroup::build(&rs("B3")).unwrap();
        assert_eq!(b.generator(0).unwrap(), &el(&[1, 2, -3]));
        let c = OmegaGroup::build(&rs("C3")).unwrap();
        assert_eq!(c.generator(2).unwrap(), &el(&[-3, -2, -1]));
        let d = OmegaGroup::build(&rs("D5")).unwrap();
        assert_eq!(d.generator(4).unwrap(), &el(&[5, -4, -3, -2, -1]));
        assert_eq!(d.generator(3).unwrap(), &el(&[-5, -4, -3, -2, 1]));
    }

    #[test]
    fn a1_chain_is_one_omega_step() {
        let c = weyllem2_chain(&rs("A1")).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].kind, StepKind::Omega { u: el(&[2, 1]) });
    }

    #[test]
    fn b2_chain_follows_checkpoints() {
        let c = weyllem2_chain(&rs("B2")).unwrap();
        assert_eq!(c[0].from, el(&[-1, -2]));
        assert_eq!(c[0].to, el(&[-1, 2]));
        assert_eq!(c[1].kind, StepKind::Weak { s: 0 });
        assert_eq!(c[1].to, el(&[-2, 1]));
        assert_eq!(c[2].to, el(&[2, 1]));
    }

    #[test]
    fn c2_chain_starts_with_omega() {
        let c = weyllem2_chain(&rs("C2")).unwrap();
        assert_eq!(c[0].kind, StepKind::Omega { u: el(&[-2, -1]) });
        assert_eq!(c[0].to, el(&[2, 1]));
    }

    #[test]
    fn chains_for_all_small_types() {
        for t in ["A2", "A3", "A4", "A5", "B1", "B3", "B4", "C1", "C3", "C4", "D4", "D5", "A2xB2"] {
            weyllem2_chain(&rs(t)).unwrap_or_else(|e| panic!("{t}: {e}"));
        }
    }

    #[test]
    fn leq_in_a2() {
        let g = group("A2");
        let j = SubsetJ(1);
        let s2 = g.index_of(&el(&[1, 3, 2])).unwrap();
        let s1s2 = g.index_of(&el(&[2, 3, 1])).unwrap();
        assert!(leq_j(&g, j, s2, s1s2));
        assert!(!leq_j(&g, j, s1s2, s2));
        assert!(leq_j(&g, j, s2, s2));
    }

    #[test]
    fn witness_in_a2() {
        let g = group("A2");
        let j = SubsetJ(1);
        let s2 = g.index_of(&el(&[1, 3, 2])).unwrap();
        let (w2, s) = weyllem1_witness(&g, j, s2).unwrap();
        assert_eq!(g.element(w2), &el(&[2, 3, 1]));
        assert_eq!(s, 1);
    }

    #[test]
    fn lift_in_a2() {
        let g = group("A2");
        let j = SubsetJ(1);
        let s2 = g.index_of(&el(&[1, 3, 2])).unwrap();
        let steps = weyllem3_lift(&g, j, s2).unwrap();
        assert_eq!(steps[0].from, el(&[2, 3, 1]));
        assert_eq!(steps.last().unwrap().to, el(&[1, 3, 2]));
    }
}
