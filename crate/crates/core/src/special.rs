//! The cokernel of the coset boundary map and its standard basis.
//!
//! For `J` and each simple root `a` outside `J`, every element `w` of
//! `W^{J+a}` maps to the sum of the minimal representatives of the `W_J`
//! cosets inside `w W_{J+a}`. The cokernel of the sum of these maps is free
//! with basis the classes `g_w`, `w` in `V^J`; the normal form expresses any
//! `g_w` in that basis.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jcomb;
use crate::linalg::{rank_rational, smith_invariants, Matrix, PrimeField};
use crate::roots::RootSet;
use crate::weyl::{SubsetJ, WeylGroup};

/// Coefficient ring for rank computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientRing {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl CoefficientRing {
    pub fn field(&self) -> Result<Option<PrimeField>> {
        match self {
            CoefficientRing::PrimeField(p) => PrimeField::new(*p).map(Some),
            _ => Ok(None),
        }
    }

    fn rank(&self, m: &Matrix) -> Result<usize> {
        Ok(match self {
            CoefficientRing::PrimeField(p) => PrimeField::new(*p)?.rank(m),
            _ => rank_rational(m),
        })
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => f.write_str("Z"),
            CoefficientRing::Rationals => f.write_str("Q"),
            CoefficientRing::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for CoefficientRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Z" | "z" => Ok(CoefficientRing::Integers),
            "Q" | "q" => Ok(CoefficientRing::Rationals),
            t => {
                let digits = t.strip_prefix(['F', 'f']).unwrap_or(t);
                let p: u64 = digits.parse().map_err(|_| Error::NonPrimeCharacteristic(t.to_string()))?;
                PrimeField::new(p)?;
                Ok(CoefficientRing::PrimeField(p))
            }
        }
    }
}

/// Which basis a free vector is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BasisTag {
    WJ,
    WJAlpha(usize),
    VJ,
}

/// A finitely supported integer combination of Weyl group elements
/// (keys are indices into the enumerated group).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeVector {
    pub tag: BasisTag,
    pub coeffs: BTreeMap<usize, i64>,
}

impl FreeVector {
    pub fn new(tag: BasisTag) -> Self {
        FreeVector { tag, coeffs: BTreeMap::new() }
    }

    pub fn add_term(&mut self, w: usize, c: i64) {
        let e = self.coeffs.entry(w).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Coordinates on the `V^J` basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialVector {
    pub j: SubsetJ,
    pub coeffs: Vec<i64>,
}

/// Which simple root the normal form rewrites along.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaRule {
    Smallest,
    Largest,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleReport {
    pub ring: String,
    pub size_wj: usize,
    pub size_vj: usize,
    pub rank: usize,
    pub torsion_invariants: Vec<String>,
    pub vj_basis_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub size_wjd: usize,
    pub size_vjd: usize,
    pub rank_boundary: usize,
    pub kernel_dim: usize,
    pub composite_zero: bool,
    pub saturated: bool,
    pub exact: bool,
}

const NONE: usize = usize::MAX;

/// The boundary map and normal form for one `(W, J)`.
#[derive(Debug, Clone)]
pub struct SpecialModule<'g> {
    g: &'g WeylGroup,
    j: SubsetJ,
    wj: Vec<usize>,
    wj_pos: Vec<usize>,
    vj: Vec<usize>,
    vj_pos: Vec<usize>,
    alphas: Vec<usize>,
    /// per alpha: `W^{J+a}` in canonical order
    wja: Vec<Vec<usize>>,
    /// per alpha, per element of `W^{J+a}`: positions in `W^J` of its fiber
    fibers: Vec<Vec<Vec<usize>>>,
    nf: Vec<Vec<i64>>,
}

fn positions(order: usize, list: &[usize]) -> Vec<usize> {
    let mut pos = vec![NONE; order];
    for (i, &w) in list.iter().enumerate() {
        pos[w] = i;
    }
    pos
}

impl<'g> SpecialModule<'g> {
    pub fn new(g: &'g WeylGroup, j: SubsetJ) -> Result<Self> {
        let rank = g.rank();
        if !j.is_subset(&SubsetJ::full(rank)) {
            return Err(Error::IndexOutOfRange { index: 31 - j.0.leading_zeros() as usize, rank });
        }
        let wj = g.enumerate_wj(j);
        let vj = g.enumerate_vj(j);
        let wj_pos = positions(g.order(), &wj);
        let vj_pos = positions(g.order(), &vj);
        let alphas = j.complement(rank).indices();
        let mut wja = Vec::new();
        let mut fibers = Vec::new();
        for &a in &alphas {
            let ja = j.with(a);
            let list = g.enumerate_wj(ja);
            let pos = positions(g.order(), &list);
            let mut fib = vec![Vec::new(); list.len()];
            for (k, &w) in wj.iter().enumerate() {
                fib[pos[g.project(w, ja)]].push(k);
            }
            wja.push(list);
            fibers.push(fib);
        }
        let mut m = SpecialModule { g, j, wj, wj_pos, vj, vj_pos, alphas, wja, fibers, nf: Vec::new() };
        m.nf = m.normal_form_table(AlphaRule::Smallest)?;
        Ok(m)
    }

    pub fn group(&self) -> &'g WeylGroup {
        self.g
    }

    pub fn j(&self) -> SubsetJ {
        self.j
    }

    pub fn wj(&self) -> &[usize] {
        &self.wj
    }

    pub fn vj(&self) -> &[usize] {
        &self.vj
    }

    pub fn alphas(&self) -> &[usize] {
        &self.alphas
    }

    /// Position of `w` in `W^J`, if it is there.
    pub fn wj_position(&self, w: usize) -> Option<usize> {
        Some(self.wj_pos[w]).filter(|&p| p != NONE)
    }

    pub fn vj_position(&self, w: usize) -> Option<usize> {
        Some(self.vj_pos[w]).filter(|&p| p != NONE)
    }

    fn alpha_slot(&self, alpha: usize) -> Result<usize> {
        self.alphas.iter().position(|&a| a == alpha).ok_or(Error::BadAlpha(alpha))
    }

    /// `d(w)` for `w` in `W^{J+alpha}`.
    pub fn boundary(&self, alpha: usize, w: usize) -> Result<FreeVector> {
        let slot = self.alpha_slot(alpha)?;
        let k = self.wja[slot]
            .iter()
            .position(|&x| x == w)
            .ok_or_else(|| Error::NotCosetRep(self.g.element(w).to_string()))?;
        let mut v = FreeVector::new(BasisTag::WJ);
        for &p in &self.fibers[slot][k] {
            v.add_term(self.wj[p], 1);
        }
        Ok(v)
    }

    /// Column labels `(alpha, w)` of the boundary matrix.
    pub fn boundary_columns(&self) -> Vec<(usize, usize)> {
        self.alphas
            .iter()
            .zip(&self.wja)
            .flat_map(|(&a, list)| list.iter().map(move |&w| (a, w)))
            .collect()
    }

    /// Rows `W^J`, columns the concatenated `W^{J+a}`.
    pub fn boundary_matrix(&self) -> Matrix {
        let cols: usize = self.wja.iter().map(Vec::len).sum();
        let mut m = Matrix::zeros(self.wj.len(), cols);
        let mut c = 0;
        for fib in &self.fibers {
            for f in fib {
                for &r in f {
                    m.set(r, c, 1);
                }
                c += 1;
            }
        }
        m
    }

    /// The dual map, built from projections: the `a`-component of `w'` is
    /// the representative of `w' W_{J+a}`.
    pub fn dual_boundary(&self) -> Matrix {
        let cols = self.boundary_columns();
        let mut m = Matrix::zeros(cols.len(), self.wj.len());
        for (k, &w) in self.wj.iter().enumerate() {
            for (c, &(a, rep)) in cols.iter().enumerate() {
                if self.g.project(w, self.j.with(a)) == rep {
                    m.set(c, k, 1);
                }
            }
        }
        m
    }

    /// Normal forms of every `g_w`, `w` in `W^J`, processing longest first.
    pub fn normal_form_table(&self, rule: AlphaRule) -> Result<Vec<Vec<i64>>> {
        let n = self.vj.len();
        let mut table: Vec<Option<Vec<i64>>> = vec![None; self.wj.len()];
        for k in (0..self.wj.len()).rev() {
            let w = self.wj[k];
            if let Some(v) = self.vj_position(w) {
                let mut e = vec![0; n];
                e[v] = 1;
                table[k] = Some(e);
                continue;
            }
            let mut slots = (0..self.alphas.len()).filter(|&s| !self.g.is_right_descent(w, self.alphas[s]));
            let slot = match rule {
                AlphaRule::Smallest => slots.next(),
                AlphaRule::Largest => slots.next_back(),
            }
            .expect("an element of W^J outside V^J has an ascent outside J");
            let ja = self.j.with(self.alphas[slot]);
            debug_assert_eq!(self.g.project(w, ja), w);
            let fk = self.wja[slot].iter().position(|&x| x == w).expect("w lies in W^{J+a}");
            let mut acc = vec![0i64; n];
            for &other in &self.fibers[slot][fk] {
                if other == k {
                    continue;
                }
                let row = table[other].as_ref().expect("longer elements are done first");
                for (a, b) in acc.iter_mut().zip(row) {
                    *a = a.checked_sub(*b).ok_or_else(|| Error::Overflow("normal form".into()))?;
                }
            }
            table[k] = Some(acc);
        }
        Ok(table.into_iter().map(|r| r.expect("filled")).collect())
    }

    /// Normal form of `g_w` for `w` in `W^J`.
    pub fn normal_form_of(&self, w: usize) -> Result<&[i64]> {
        let k = self.wj_position(w).ok_or_else(|| Error::NotCosetRep(self.g.element(w).to_string()))?;
        Ok(&self.nf[k])
    }

    pub fn normal_form(&self, v: &FreeVector) -> Result<SpecialVector> {
        let mut acc = vec![0i64; self.vj.len()];
        for (&w, &c) in &v.coeffs {
            let row = self.normal_form_of(w)?;
            for (a, b) in acc.iter_mut().zip(row) {
                *a = b
                    .checked_mul(c)
                    .and_then(|x| a.checked_add(x))
                    .ok_or_else(|| Error::Overflow("normal form".into()))?;
            }
        }
        Ok(SpecialVector { j: self.j, coeffs: acc })
    }

    /// Rows `W^J`, columns `V^J`: the map to the cokernel in its basis.
    pub fn normal_form_matrix(&self) -> Matrix {
        Matrix::from_rows(self.nf.clone(), self.vj.len())
    }

    fn vj_indicator(&self) -> Matrix {
        let mut e = Matrix::zeros(self.wj.len(), self.vj.len());
        for (c, &w) in self.vj.iter().enumerate() {
            e.set(self.wj_pos[w], c, 1);
        }
        e
    }

    /// Rank and torsion of the cokernel, and whether the classes of `V^J`
    /// form a basis of it.
    pub fn build_report(&self, ring: CoefficientRing) -> Result<ModuleReport> {
        let d = self.boundary_matrix();
        let n = self.wj.len();
        let with_basis = d.hconcat(&self.vj_indicator());
        let (rank, torsion, basis_ok) = match ring {
            CoefficientRing::Integers => {
                let inv = smith_invariants(&d);
                let torsion: Vec<String> = inv.iter().filter(|x| !x.is_one()).map(BigInt::to_string).collect();
                let inv2 = smith_invariants(&with_basis);
                let unimodular = inv2.len() == n && inv2.iter().all(|x| x.is_one());
                (n - inv.len(), torsion, unimodular && inv.len() + self.vj.len() == n)
            }
            _ => {
                let r = ring.rank(&d)?;
                let r2 = ring.rank(&with_basis)?;
                (n - r, Vec::new(), r2 == n && r + self.vj.len() == n)
            }
        };
        Ok(ModuleReport {
            ring: ring.to_string(),
            size_wj: n,
            size_vj: self.vj.len(),
            rank,
            torsion_invariants: torsion,
            vj_basis_ok: basis_ok,
        })
    }

    /// `sigma(w') = sum over v in W_{Delta-J} of (-1)^l(v) (w' v)^J`.
    pub fn sigma(&self, w: usize) -> Result<FreeVector> {
        if self.vj_position(w).is_none() {
            return Err(Error::NotCosetRep(self.g.element(w).to_string()));
        }
        let mut out = FreeVector::new(BasisTag::WJ);
        for v in self.g.parabolic(self.j.complement(self.g.rank())) {
            let sign = if self.g.length(v).is_multiple_of(2) { 1 } else { -1 };
            out.add_term(self.g.project(self.g.mul(w, v), self.j), sign);
        }
        Ok(out)
    }

    /// Rows `sigma(w')` for `w'` in `V^J`, columns `W^J`.
    pub fn sigma_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.vj.len(), self.wj.len());
        for (r, &w) in self.vj.iter().enumerate() {
            for (&x, &c) in &self.sigma(w).expect("w in V^J").coeffs {
                m.set(r, self.wj_pos[x], c);
            }
        }
        m
    }

    /// Exactness of the boundary sequence restricted to the coset
    /// representatives whose root sets contain `d`.
    pub fn restricted_exactness(&self, d: RootSet, ring: CoefficientRing) -> Result<ExactnessReport> {
        if !jcomb::is_quasi_parabolic(self.g, self.j, d)? {
            return Err(Error::NotQuasiParabolic);
        }
        let rows: Vec<usize> = jcomb::wj_of_d(self.g, self.j, d)?;
        let row_pos: Vec<usize> = rows.iter().map(|&w| self.wj_pos[w]).collect();
        let mut local = vec![NONE; self.wj.len()];
        for (i, &p) in row_pos.iter().enumerate() {
            local[p] = i;
        }
        let mut cols: Vec<Vec<usize>> = Vec::new();
        for (slot, &a) in self.alphas.iter().enumerate() {
            let keep = jcomb::wj_of_d(self.g, self.j.with(a), d)?;
            for w in keep {
                let k = self.wja[slot].iter().position(|&x| x == w).expect("representative");
                let fib = &self.fibers[slot][k];
                // the fiber of a restricted generator stays inside W^J(D)
                let mapped: Vec<usize> = fib.iter().map(|&p| local[p]).collect();
                if mapped.contains(&NONE) {
                    return Ok(ExactnessReport {
                        size_wjd: rows.len(),
                        size_vjd: 0,
                        rank_boundary: 0,
                        kernel_dim: 0,
                        composite_zero: false,
                        saturated: false,
                        exact: false,
                    });
                }
                cols.push(mapped);
            }
        }
        let mut bd = Matrix::zeros(rows.len(), cols.len());
        for (c, col) in cols.iter().enumerate() {
            for &r in col {
                bd.set(r, c, 1);
            }
        }
        let nf = self.normal_form_matrix().select_rows(&row_pos);
        let composite_zero = bd.transpose().mul(&nf).is_zero();
        let rank_nf = ring.rank(&nf)?;
        let kernel_dim = rows.len() - rank_nf;
        let (rank_boundary, saturated) = match ring {
            CoefficientRing::Integers => {
                let inv = smith_invariants(&bd);
                (inv.len(), inv.iter().all(|x| x.is_one()))
            }
            _ => (ring.rank(&bd)?, true),
        };
        let size_vjd = rows.iter().filter(|&&w| self.vj_position(w).is_some()).count();
        Ok(ExactnessReport {
            size_wjd: rows.len(),
            size_vjd,
            rank_boundary,
            kernel_dim,
            composite_zero,
            saturated,
            exact: composite_zero && saturated && rank_boundary == kernel_dim,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::RootSystem;
    use crate::weyl::WeylElement;

    fn group(s: &str) -> WeylGroup {
        WeylGroup::new(RootSystem::build(&s.parse().unwrap()).unwrap()).unwrap()
    }

    fn idx(g: &WeylGroup, v: &[i8]) -> usize {
        g.index_of(&WeylElement::from_window(v.to_vec())).unwrap()
    }

    #[test]
    fn ring_parsing() {
        assert_eq!("Z".parse::<CoefficientRing>().unwrap(), CoefficientRing::Integers);
        assert_eq!("F3".parse::<CoefficientRing>().unwrap(), CoefficientRing::PrimeField(3));
        assert!("F4".parse::<CoefficientRing>().is_err());
    }

    #[test]
    fn boundary_in_a1() {
        let g = group("A1");
        let m = SpecialModule::new(&g, SubsetJ::EMPTY).unwrap();
        let v = m.boundary(0, 0).unwrap();
        assert_eq!(v.coeffs.keys().copied().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn boundary_in_a2() {
        let g = group("A2");
        let m = SpecialModule::new(&g, SubsetJ(1)).unwrap();
        let v = m.boundary(1, 0).unwrap();
        let expect = vec![0, idx(&g, &[1, 3, 2]), idx(&g, &[2, 3, 1])];
        assert_eq!(v.coeffs.keys().copied().collect::<Vec<_>>(), expect);
        assert!(v.coeffs.values().all(|&c| c == 1));
        assert_eq!(m.boundary(0, 0), Err(Error::BadAlpha(0)));
    }

    #[test]
    fn normal_form_in_a2() {
        let g = group("A2");
        let m = SpecialModule::new(&g, SubsetJ(1)).unwrap();
        assert_eq!(m.normal_form_of(0).unwrap(), &[-1, -1]);
        let d = m.boundary(1, 0).unwrap();
        assert!(m.normal_form(&d).unwrap().coeffs.iter().all(|&c| c == 0));
    }

    #[test]
    fn sigma_in_a2() {
        let g = group("A2");
        let m = SpecialModule::new(&g, SubsetJ(1)).unwrap();
        let s = m.sigma(idx(&g, &[2, 3, 1])).unwrap();
        let expect: BTreeMap<usize, i64> = [(0, -1), (idx(&g, &[2, 3, 1]), 1)].into_iter().collect();
        assert_eq!(s.coeffs, expect);
    }

    #[test]
    fn module_rank_in_a2() {
        let g = group("A2");
        let m = SpecialModule::new(&g, SubsetJ(1)).unwrap();
        let r = m.build_report(CoefficientRing::Integers).unwrap();
        assert_eq!(r.rank, 2);
        assert!(r.torsion_invariants.is_empty());
        assert!(r.vj_basis_ok);
    }

    #[test]
    fn full_j_has_rank_one() {
        let g = group("B2");
        let m = SpecialModule::new(&g, SubsetJ::full(2)).unwrap();
        assert!(m.alphas().is_empty());
        assert_eq!(m.build_report(CoefficientRing::Integers).unwrap().rank, 1);
    }

    #[test]
    fn exactness_for_empty_d() {
        let g = group("A3");
        for j in SubsetJ::all(3) {
            let m = SpecialModule::new(&g, j).unwrap();
            for ring in [CoefficientRing::Integers, CoefficientRing::PrimeField(2)] {
                assert!(m.restricted_exactness(RootSet::EMPTY, ring).unwrap().exact);
            }
        }
    }
}
