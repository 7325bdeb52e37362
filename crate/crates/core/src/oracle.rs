//! Brute-force model of `GL_n(F_q)` for small `n` and prime `q`.
//!
//! Cosets of the block upper triangular subgroups are identified with partial
//! flags of column spans. Functions on a coset space are vectors over `F_q`,
//! the special representation is the quotient by the functions pulled back
//! from the larger parabolics, and Hecke operators are evaluated by literally
//! summing translates.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hecke::{hecke_case, HeckeCase, HeckeModule};
use crate::linalg::{Matrix, PrimeField, RowEchelon};
use crate::roots::{CartanType, Family, RootSystem};
use crate::weyl::{SubsetJ, WeylGroup};

/// Bound on `q^{n^2}`, the number of matrices scanned to build the group.
pub const DEFAULT_MODEL_CAP: u128 = 1 << 20;

/// An `n x n` matrix over `F_q`, row-major.
pub type Mat = Vec<u8>;

#[derive(Debug, Clone)]
pub struct FiniteGroupModel {
    n: usize,
    q: u64,
    field: PrimeField,
    elements: Vec<Mat>,
    borel: Vec<Mat>,
    borel_gens: Vec<Mat>,
    weyl: WeylGroup,
}

/// Coset space `G / P_J` with chosen representatives.
#[derive(Debug, Clone)]
pub struct CosetSpace {
    j: SubsetJ,
    reps: Vec<Mat>,
    index: HashMap<Vec<u64>, usize>,
}

/// Quotient of the functions on `G / P_J` by the pulled-back functions.
#[derive(Debug, Clone)]
pub struct SpecialQuotient {
    cosets: CosetSpace,
    relations: RowEchelon,
    free: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub n: usize,
    pub q: u64,
    pub j: SubsetJ,
    pub num_cosets: usize,
    pub quotient_dim: usize,
    pub dim_invariants: usize,
    pub size_vj: usize,
    pub cell_classes_basis: bool,
    pub hecke_match: Vec<bool>,
    pub brudec_ok: bool,
}

impl FiniteGroupModel {
    pub fn build(n: usize, q: u64) -> Result<Self> {
        Self::with_cap(n, q, DEFAULT_MODEL_CAP)
    }

    pub fn with_cap(n: usize, q: u64, cap: u128) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooLarge(format!("n = {n} has no simple roots")));
        }
        let field = PrimeField::new(q)?;
        let total = (q as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
        if total > cap || (q as u128).pow(n as u32) > 64 {
            return Err(Error::TooLarge(format!("GL_{n}(F_{q})")));
        }
        let weyl = WeylGroup::new(RootSystem::build(&CartanType::irreducible(Family::A, n - 1))?)?;
        let mut m = FiniteGroupModel { n, q, field, elements: Vec::new(), borel: Vec::new(), borel_gens: Vec::new(), weyl };
        for code in 0..total as u64 {
            let a = m.decode(code);
            if m.det(&a) != 0 {
                m.elements.push(a);
            }
        }
        m.borel = m.elements.iter().filter(|a| m.is_upper(a)).cloned().collect();
        m.borel_gens = m.borel_generators();
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn borel(&self) -> &[Mat] {
        &self.borel
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    fn decode(&self, mut code: u64) -> Mat {
        let mut a = vec![0u8; self.n * self.n];
        for x in a.iter_mut() {
            *x = (code % self.q) as u8;
            code /= self.q;
        }
        a
    }

    fn is_upper(&self, a: &Mat) -> bool {
        (0..self.n).all(|r| (0..r).all(|c| a[r * self.n + c] == 0))
    }

    pub fn identity(&self) -> Mat {
        let mut a = vec![0u8; self.n * self.n];
        for i in 0..self.n {
            a[i * self.n + i] = 1;
        }
        a
    }

    pub fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        let n = self.n;
        let mut out = vec![0u8; n * n];
        for r in 0..n {
            for c in 0..n {
                let mut s = 0u64;
                for k in 0..n {
                    s += a[r * n + k] as u64 * b[k * n + c] as u64;
                }
                out[r * n + c] = (s % self.q) as u8;
            }
        }
        out
    }

    fn det(&self, a: &Mat) -> u64 {
        let f = self.field;
        let n = self.n;
        let mut m: Vec<Vec<u64>> = (0..n).map(|r| (0..n).map(|c| a[r * n + c] as u64).collect()).collect();
        let mut det = 1u64;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| m[r][c] != 0) else { return 0 };
            if p != c {
                m.swap(p, c);
                det = f.neg(det);
            }
            det = f.mul(det, m[c][c]);
            let inv = f.inv(m[c][c]);
            for r in c + 1..n {
                let factor = f.mul(m[r][c], inv);
                for k in c..n {
                    let v = f.mul(factor, m[c][k]);
                    m[r][k] = f.sub(m[r][k], v);
                }
            }
        }
        det
    }

    pub fn inverse(&self, a: &Mat) -> Mat {
        // the group is tiny; search
        let id = self.identity();
        self.elements.iter().find(|b| self.mul(a, b) == id).cloned().expect("invertible")
    }

    /// `I + t E_{ij}` (0-based `i`, `j`).
    pub fn root_element(&self, i: usize, j: usize, t: u8) -> Mat {
        let mut a = self.identity();
        a[i * self.n + j] = t;
        a
    }

    /// Permutation matrix with `P e_j = e_{w(j)}`.
    pub fn perm_matrix(&self, w: usize) -> Mat {
        let win = self.weyl.element(w).window();
        let mut a = vec![0u8; self.n * self.n];
        for (j, &v) in win.iter().enumerate() {
            a[(v as usize - 1) * self.n + j] = 1;
        }
        a
    }

    fn borel_generators(&self) -> Vec<Mat> {
        let gen = (1..self.q as u8)
            .find(|&t| (1..self.q - 1).all(|k| self.field_pow(t as u64, k) != 1))
            .unwrap_or(1);
        let mut gens = Vec::new();
        for i in 0..self.n {
            let mut d = self.identity();
            d[i * self.n + i] = gen;
            if d != self.identity() {
                gens.push(d);
            }
        }
        for i in 0..self.n - 1 {
            gens.push(self.root_element(i, i + 1, 1));
        }
        gens
    }

    fn field_pow(&self, base: u64, e: u64) -> u64 {
        (0..e).fold(1, |acc, _| self.field.mul(acc, base))
    }

    /// Closure of the chosen generators; must be the whole upper triangular
    /// group.
    pub fn borel_generated(&self) -> bool {
        let mut seen: HashSet<Mat> = HashSet::new();
        let id = self.identity();
        seen.insert(id.clone());
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            for g in &self.borel_gens {
                let y = self.mul(g, &x);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen.len() == self.borel.len()
    }

    /// Number of complete flags, `prod_{i=1}^{n} (q^i - 1)/(q - 1)`.
    pub fn flag_count(&self) -> u64 {
        (1..=self.n as u32).map(|i| (self.q.pow(i) - 1) / (self.q - 1)).product()
    }

    fn vector_code(&self, v: &[u64]) -> u32 {
        v.iter().rev().fold(0u32, |acc, &x| acc * self.q as u32 + x as u32)
    }

    /// Bitmask of the points in the span of the first `k` columns.
    fn span_mask(&self, a: &Mat, k: usize) -> u64 {
        let n = self.n;
        let q = self.q;
        let mut mask = 0u64;
        for combo in 0..q.pow(k as u32) {
            let mut coeff = combo;
            let mut v = vec![0u64; n];
            for c in 0..k {
                let t = coeff % q;
                coeff /= q;
                for (r, x) in v.iter_mut().enumerate() {
                    *x = (*x + t * a[r * n + c] as u64) % q;
                }
            }
            mask |= 1 << self.vector_code(&v);
        }
        mask
    }

    /// Key of the coset `a P_J`: the spans of the first `k` columns for each
    /// `k` with `alpha_k` outside `J`.
    pub fn coset_key(&self, a: &Mat, j: SubsetJ) -> Vec<u64> {
        (1..self.n).filter(|&k| !j.contains(k - 1)).map(|k| self.span_mask(a, k)).collect()
    }

    pub fn cosets(&self, j: SubsetJ) -> CosetSpace {
        let mut reps = Vec::new();
        let mut index = HashMap::new();
        for a in &self.elements {
            let key = self.coset_key(a, j);
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(key) {
                e.insert(reps.len());
                reps.push(a.clone());
            }
        }
        CosetSpace { j, reps, index }
    }

    /// Coset of `g * rep(x)`.
    pub fn act(&self, cs: &CosetSpace, g: &Mat, x: usize) -> usize {
        cs.index[&self.coset_key(&self.mul(g, &cs.reps[x]), cs.j)]
    }

    pub fn coset_of(&self, cs: &CosetSpace, a: &Mat) -> usize {
        cs.index[&self.coset_key(a, cs.j)]
    }

    /// The cell `P w P_J / P_J` as a set of cosets.
    pub fn cell(&self, cs: &CosetSpace, w: usize) -> BTreeSet<usize> {
        let x = self.coset_of(cs, &self.perm_matrix(w));
        self.borel.iter().map(|b| self.act(cs, b, x)).collect()
    }

    /// `U^w` as a set of matrices: products over the positive roots
    /// `e_i - e_j` with `w^{-1}(i) > w^{-1}(j)`, in a fixed order.
    pub fn unipotent_part(&self, w: usize) -> Vec<Mat> {
        let inv = self.weyl.element(self.weyl.inverse(w)).window().to_vec();
        let roots: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| inv[i] > inv[j])
            .collect();
        self.root_product(&roots)
    }

    fn root_product(&self, roots: &[(usize, usize)]) -> Vec<Mat> {
        let mut out = vec![self.identity()];
        for &(i, j) in roots {
            let mut next = Vec::new();
            for a in &out {
                for t in 0..self.q as u8 {
                    next.push(self.mul(a, &self.root_element(i, j, t)));
                }
            }
            out = next;
        }
        out
    }

    fn is_closed_set(&self, set: &[Mat]) -> bool {
        let s: HashSet<&Mat> = set.iter().collect();
        set.iter().all(|a| set.iter().all(|b| s.contains(&self.mul(a, b))))
    }

    /// Builds the quotient for `J`.
    pub fn special_quotient(&self, j: SubsetJ) -> SpecialQuotient {
        let cs = self.cosets(j);
        let n = cs.reps.len();
        let mut relations = RowEchelon::new(self.field, n);
        for a in j.complement(self.n - 1).iter() {
            let big = self.cosets(j.with(a));
            let mut fibers = vec![vec![0u64; n]; big.reps.len()];
            for (x, rep) in cs.reps.iter().enumerate() {
                fibers[self.coset_of(&big, rep)][x] = 1;
            }
            for f in fibers {
                relations.insert(f);
            }
        }
        let free: Vec<usize> = (0..n).filter(|c| !relations.pivots().contains(c)).collect();
        SpecialQuotient { cosets: cs, relations, free }
    }

    fn indicator(&self, sq: &SpecialQuotient, set: &BTreeSet<usize>) -> Vec<u64> {
        let mut f = vec![0u64; sq.cosets.reps.len()];
        for &x in set {
            f[x] = 1;
        }
        f
    }

    /// Quotient coordinates of a function.
    pub fn class(&self, sq: &SpecialQuotient, f: &[u64]) -> Vec<u64> {
        let r = sq.relations.reduce(f);
        sq.free.iter().map(|&c| r[c]).collect()
    }

    /// Matrix (columns = images of basis vectors) of `g` on the quotient.
    fn quotient_action(&self, sq: &SpecialQuotient, g: &Mat) -> Vec<Vec<u64>> {
        let d = sq.free.len();
        let mut cols = Vec::with_capacity(d);
        for &c in &sq.free {
            let mut f = vec![0u64; sq.cosets.reps.len()];
            f[self.act(&sq.cosets, g, c)] = 1;
            cols.push(self.class(sq, &f));
        }
        (0..d).map(|r| (0..d).map(|c| cols[c][r]).collect()).collect()
    }

    /// Basis of the vectors fixed by the upper triangular group.
    pub fn invariants(&self, sq: &SpecialQuotient) -> Vec<Vec<u64>> {
        let f = self.field;
        let d = sq.free.len();
        let mut rows = Vec::new();
        for g in &self.borel_gens {
            let m = self.quotient_action(sq, g);
            for (r, row) in m.into_iter().enumerate() {
                let mut row = row;
                row[r] = f.sub(row[r], 1);
                rows.push(row);
            }
        }
        f.nullspace(&rows, d)
    }

    /// Classes of the cell indicators for `w` in `V^J`, in canonical order.
    pub fn cell_classes(&self, sq: &SpecialQuotient) -> Vec<Vec<u64>> {
        self.weyl
            .enumerate_vj(sq.cosets.j)
            .into_iter()
            .map(|w| self.class(sq, &self.indicator(sq, &self.cell(&sq.cosets, w))))
            .collect()
    }

    fn is_invariant(&self, sq: &SpecialQuotient, v: &[u64]) -> bool {
        self.borel_gens.iter().all(|g| {
            let m = self.quotient_action(sq, g);
            self.field.mat_vec_row(v, &transpose(&m)) == v
        })
    }

    /// Matrix of `T_n` (`n` the permutation matrix of `w`) on the cell
    /// classes, by summing `u n^{-1} v` over `P / (P cap n^{-1} P n)`.
    pub fn hecke_via_sum(&self, sq: &SpecialQuotient, w: usize) -> Result<Matrix> {
        if !self.q.is_multiple_of(self.field.p()) {
            return Err(Error::NonPrimeCharacteristic(format!("q = {} not divisible by p", self.q)));
        }
        let nm = self.perm_matrix(w);
        let ninv = self.inverse(&nm);
        let borel: HashSet<&Mat> = self.borel.iter().collect();
        let stab: Vec<&Mat> = self
            .borel
            .iter()
            .filter(|b| borel.contains(&self.mul(&nm, &self.mul(b, &ninv))))
            .collect();
        let mut covered: HashSet<Mat> = HashSet::new();
        let mut reps = Vec::new();
        for u in &self.borel {
            if covered.contains(u) {
                continue;
            }
            for h in &stab {
                covered.insert(self.mul(u, h));
            }
            reps.push(u.clone());
        }
        let basis = self.cell_classes(sq);
        let vj = self.weyl.enumerate_vj(sq.cosets.j);
        let k = vj.len();
        let mut out = Matrix::zeros(k, k);
        for (r, &v) in vj.iter().enumerate() {
            let cell = self.cell(&sq.cosets, v);
            let mut f = vec![0u64; sq.cosets.reps.len()];
            for u in &reps {
                let g = self.mul(u, &ninv);
                for &x in &cell {
                    let y = self.act(&sq.cosets, &g, x);
                    f[y] = self.field.add(f[y], 1);
                }
            }
            let c = self
                .field
                .solve_combination(&basis, &self.class(sq, &f))
                .ok_or_else(|| Error::InvalidElement("Hecke image outside the cell span".into()))?;
            for (col, &x) in c.iter().enumerate() {
                out.set(r, col, x as i64);
            }
        }
        Ok(out)
    }

    /// Checks the cell decomposition and the case-by-case product identities
    /// for every `w` in `W^J` and every simple reflection.
    pub fn check_brudec(&self, j: SubsetJ) -> Result<bool> {
        let cs = self.cosets(j);
        let g = &self.weyl;
        let mut ok = true;
        // cells partition G / P_J, each a direct product
        let mut union = BTreeSet::new();
        let mut total = 0;
        for w in g.enumerate_wj(j) {
            let uw = self.unipotent_part(w);
            ok &= uw.len() as u64 == self.q.pow(g.length(w)) && self.is_closed_set(&uw);
            let wm = self.perm_matrix(w);
            let img: BTreeSet<usize> = uw.iter().map(|u| self.coset_of(&cs, &self.mul(u, &wm))).collect();
            ok &= img.len() == uw.len();
            ok &= img == self.cell(&cs, w);
            total += img.len();
            union.extend(img);
        }
        ok &= union.len() == cs.reps.len() && total == cs.reps.len();
        for w in g.enumerate_wj(j) {
            for s in 0..g.rank() {
                ok &= self.cell_pair(&cs, w, s)?;
            }
        }
        Ok(ok)
    }

    fn cell_pair(&self, cs: &CosetSpace, w: usize, s: usize) -> Result<bool> {
        let g = &self.weyl;
        let j = cs.j;
        let sm = self.perm_matrix(g.left_mul(s, g.identity()));
        let wm = self.perm_matrix(w);
        let us = self.unipotent_part(g.left_mul(s, g.identity()));
        let uw = self.unipotent_part(w);
        let target_w: BTreeSet<usize> = uw.iter().map(|u| self.coset_of(cs, &self.mul(u, &wm))).collect();
        // products x_1 x_2 ... w P_J as a set, plus whether the map is injective
        let image = |factors: &[&[Mat]], tail: &Mat| -> (BTreeSet<usize>, bool) {
            let mut prods = vec![self.identity()];
            for f in factors {
                prods = prods.iter().flat_map(|a| f.iter().map(move |b| self.mul(a, b))).collect();
            }
            let set: BTreeSet<usize> = prods.iter().map(|a| self.coset_of(cs, &self.mul(a, tail))).collect();
            let direct = set.len() == prods.len();
            (set, direct)
        };
        let single = |m: &Mat| vec![m.clone()];
        Ok(match hecke_case(g, j, w, s)? {
            HeckeCase::Fixed => us.iter().all(|u| {
                let (set, direct) = image(&[&single(u), &single(&sm), &uw], &wm);
                direct && set == target_w
            }),
            HeckeCase::Up => {
                let sw = g.left_mul(s, w);
                let swm = self.perm_matrix(sw);
                let usw = self.unipotent_part(sw);
                let target: BTreeSet<usize> = usw.iter().map(|u| self.coset_of(cs, &self.mul(u, &swm))).collect();
                let (set, direct) = image(&[&us, &single(&sm), &uw], &wm);
                direct && set == target && target.len() == usw.len()
            }
            HeckeCase::Down => {
                let sw = g.left_mul(s, w);
                let (bi, bj) = (s, s + 1);
                let inv = g.element(g.inverse(w)).window().to_vec();
                if inv[bi] < inv[bj] {
                    return Ok(false);
                }
                let roots: Vec<(usize, usize)> = (0..self.n)
                    .flat_map(|i| (i + 1..self.n).map(move |k| (i, k)))
                    .filter(|&(i, k)| inv[i] > inv[k] && (i, k) != (bi, bj))
                    .collect();
                let uprime = self.root_product(&roots);
                let conj: HashSet<Mat> =
                    self.unipotent_part(sw).iter().map(|u| self.mul(&sm, &self.mul(u, &sm))).collect();
                let as_set: HashSet<Mat> = uprime.iter().cloned().collect();
                let mut good = self.is_closed_set(&uprime) && as_set == conj;
                let swm = self.perm_matrix(sw);
                let usw = self.unipotent_part(sw);
                let target_sw: BTreeSet<usize> = usw.iter().map(|u| self.coset_of(cs, &self.mul(u, &swm))).collect();
                let id = self.identity();
                for u in &us {
                    if *u != id {
                        let (set, direct) = image(&[&us, &single(&sm), &single(u), &uprime], &wm);
                        good &= direct && set == target_w;
                    }
                    let (set, direct) = image(&[&single(u), &single(&sm), &uprime], &wm);
                    good &= direct && set == target_sw;
                }
                good
            }
        })
    }

    /// Full certification for one `J`.
    pub fn report(&self, j: SubsetJ) -> Result<OracleReport> {
        let sq = self.special_quotient(j);
        let inv = self.invariants(&sq);
        let classes = self.cell_classes(&sq);
        let vj = self.weyl.enumerate_vj(j);
        let independent = self.field.echelon(&classes, sq.free.len()).rank() == classes.len();
        let invariant = classes.iter().all(|c| self.is_invariant(&sq, c));
        let hm = HeckeModule::new(&self.weyl, j)?;
        let mut hecke_match = Vec::new();
        for s in 0..self.weyl.rank() {
            let summed = self.hecke_via_sum(&sq, self.weyl.left_mul(s, 0))?;
            let comb = hm.ts_matrix(s)?.entries.reduce(self.q);
            hecke_match.push(summed == comb);
        }
        Ok(OracleReport {
            n: self.n,
            q: self.q,
            j,
            num_cosets: sq.cosets.reps.len(),
            quotient_dim: sq.free.len(),
            dim_invariants: inv.len(),
            size_vj: vj.len(),
            cell_classes_basis: independent && invariant && inv.len() == vj.len(),
            hecke_match,
            brudec_ok: self.check_brudec(j)?,
        })
    }
}

impl CosetSpace {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

impl SpecialQuotient {
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn cosets(&self) -> &CosetSpace {
        &self.cosets
    }
}

fn transpose(m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let d = m.len();
    (0..d).map(|c| (0..d).map(|r| m[r][c]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        let m = FiniteGroupModel::build(2, 2).unwrap();
        assert_eq!(m.order(), 6);
        assert_eq!(m.cosets(SubsetJ::EMPTY).len(), 3);
        assert!(m.borel_generated());
        let m = FiniteGroupModel::build(2, 3).unwrap();
        assert_eq!(m.order(), 48);
        assert_eq!(m.cosets(SubsetJ::EMPTY).len(), 4);
        assert!(m.borel_generated());
    }

    #[test]
    fn gl3_cells() {
        let m = FiniteGroupModel::build(3, 2).unwrap();
        let cs = m.cosets(SubsetJ::EMPTY);
        assert_eq!(cs.len(), 21);
        assert_eq!(m.flag_count(), 21);
        let mut sizes: Vec<usize> = (0..6).map(|w| m.cell(&cs, w).len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 2, 4, 4, 8]);
    }

    #[test]
    fn steinberg_dimension() {
        for (n, q) in [(2, 2), (2, 3)] {
            let m = FiniteGroupModel::build(n, q).unwrap();
            let sq = m.special_quotient(SubsetJ::EMPTY);
            assert_eq!(m.invariants(&sq).len(), 1);
        }
    }

    #[test]
    fn gl3_invariants() {
        let m = FiniteGroupModel::build(3, 2).unwrap();
        let sq = m.special_quotient(SubsetJ(1));
        assert_eq!(m.invariants(&sq).len(), 2);
        let sq = m.special_quotient(SubsetJ::full(2));
        assert_eq!(m.invariants(&sq).len(), 1);
    }

    #[test]
    fn hecke_sum_in_gl2() {
        let m = FiniteGroupModel::build(2, 2).unwrap();
        let sq = m.special_quotient(SubsetJ::EMPTY);
        let t = m.hecke_via_sum(&sq, 1).unwrap();
        assert_eq!(t.to_rows(), vec![vec![1]]);
        let e = m.hecke_via_sum(&sq, 0).unwrap();
        assert_eq!(e, Matrix::identity(1));
    }

    #[test]
    fn hecke_sum_in_gl3() {
        let m = FiniteGroupModel::build(3, 2).unwrap();
        let sq = m.special_quotient(SubsetJ(1));
        let s1 = m.weyl().left_mul(0, 0);
        let s2 = m.weyl().left_mul(1, 0);
        assert_eq!(m.hecke_via_sum(&sq, s1).unwrap().to_rows(), vec![vec![0, 1], vec![0, 1]]);
        assert_eq!(m.hecke_via_sum(&sq, s2).unwrap().to_rows(), vec![vec![1, 0], vec![0, 0]]);
    }

    #[test]
    fn too_large_is_rejected() {
        assert!(matches!(FiniteGroupModel::build(5, 2), Err(Error::TooLarge(_))));
    }
}
