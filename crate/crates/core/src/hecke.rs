//! Hecke operators on the `V^J` basis in characteristic `p`.
//!
//! Vectors are rows and operators act on the right. For `w` in `V^J` and a
//! simple reflection `s`, the row of `g_w` under `T_s` is zero when
//! `(sw)^J = w`, the normal form of `g_{sw}` when the projection gets longer,
//! and `-g_w` when it gets shorter. An element `u` of `W_Omega` sends `g_w`
//! to `g_{(uw)^J}`.

use serde::Serialize;

use crate::chains::OmegaGroup;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, PrimeField, RowEchelon};
use crate::special::SpecialModule;
use crate::weyl::{SubsetJ, WeylElement, WeylGroup};

/// Default bound on the number of vectors `p^{|V^J|}` a line enumeration may
/// range over.
pub const DEFAULT_LINE_CAP: u128 = 1 << 20;

/// How `T_s` acts on `g_w` for `w` in `W^J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HeckeCase {
    /// `(sw)^J = w`: zero.
    Fixed,
    /// the projection gets longer: `g_{sw}`.
    Up,
    /// the projection gets shorter: `-g_w`.
    Down,
}

/// Classifies `(w, s)`; fails if none or more than one case applies.
pub fn hecke_case(g: &WeylGroup, j: SubsetJ, w: usize, s: usize) -> Result<HeckeCase> {
    let x = g.project(g.left_mul(s, w), j);
    let fixed = x == w;
    let up = g.length(x) > g.length(w);
    let down = g.length(x) < g.length(w);
    match (fixed, up, down) {
        (true, false, false) => Ok(HeckeCase::Fixed),
        (false, true, false) if x == g.left_mul(s, w) => Ok(HeckeCase::Up),
        (false, false, true) => Ok(HeckeCase::Down),
        _ => Err(Error::InvalidChain(format!("no unique case for w = {}, s{}", g.element(w), s + 1))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum OperatorTag {
    Ts { s: usize },
    Omega { u: WeylElement },
}

/// Integer matrix of an operator on the `V^J` basis, before reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeckeMatrix {
    pub tag: OperatorTag,
    pub j: SubsetJ,
    pub entries: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicityReport {
    pub is_simple: bool,
    pub zj_in_every_orbit: bool,
    pub generation_ok: bool,
    pub counterexample: Option<Vec<u64>>,
}

/// The invariants module of one `(W, J)` together with its operators.
pub struct HeckeModule<'g> {
    module: SpecialModule<'g>,
    omega: OmegaGroup,
    line_cap: u128,
}

impl<'g> HeckeModule<'g> {
    pub fn new(g: &'g WeylGroup, j: SubsetJ) -> Result<Self> {
        Ok(HeckeModule { module: SpecialModule::new(g, j)?, omega: OmegaGroup::build(g.root_system())?, line_cap: DEFAULT_LINE_CAP })
    }

    pub fn with_line_cap(mut self, cap: u128) -> Self {
        self.line_cap = cap;
        self
    }

    pub fn module(&self) -> &SpecialModule<'g> {
        &self.module
    }

    pub fn omega(&self) -> &OmegaGroup {
        &self.omega
    }

    fn g(&self) -> &'g WeylGroup {
        self.module.group()
    }

    pub fn dim(&self) -> usize {
        self.module.vj().len()
    }

    /// Position of `z^J` in the `V^J` basis.
    pub fn zj_position(&self) -> usize {
        self.module.vj_position(self.g().z_j(self.module.j())).expect("z^J lies in V^J")
    }

    pub fn ts_matrix(&self, s: usize) -> Result<HeckeMatrix> {
        let g = self.g();
        let j = self.module.j();
        if s >= g.rank() {
            return Err(Error::IndexOutOfRange { index: s, rank: g.rank() });
        }
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (r, &w) in self.module.vj().iter().enumerate() {
            match hecke_case(g, j, w, s)? {
                HeckeCase::Fixed => {}
                HeckeCase::Up => {
                    let row = self.module.normal_form_of(g.left_mul(s, w))?;
                    for (c, &x) in row.iter().enumerate() {
                        m.set(r, c, x);
                    }
                }
                HeckeCase::Down => m.set(r, r, -1),
            }
        }
        Ok(HeckeMatrix { tag: OperatorTag::Ts { s }, j, entries: m })
    }

    /// `T_s` checked against the characteristic of `field`.
    pub fn ts_matrix_mod(&self, s: usize, p: u64) -> Result<HeckeMatrix> {
        PrimeField::new(p)?;
        self.ts_matrix(s)
    }

    pub fn omega_matrix(&self, u: &WeylElement) -> Result<HeckeMatrix> {
        if !self.omega.contains(u) {
            return Err(Error::NotOmegaElement(u.to_string()));
        }
        let g = self.g();
        let j = self.module.j();
        let ui = g.index_of(u).ok_or_else(|| Error::NotOmegaElement(u.to_string()))?;
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (r, &w) in self.module.vj().iter().enumerate() {
            let row = self.module.normal_form_of(g.project(g.mul(ui, w), j))?;
            for (c, &x) in row.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        Ok(HeckeMatrix { tag: OperatorTag::Omega { u: u.clone() }, j, entries: m })
    }

    pub fn all_ts(&self) -> Result<Vec<HeckeMatrix>> {
        (0..self.g().rank()).map(|s| self.ts_matrix(s)).collect()
    }

    pub fn all_omega(&self) -> Result<Vec<HeckeMatrix>> {
        self.omega.elements.iter().map(|u| self.omega_matrix(u)).collect()
    }

    fn generators(&self, field: PrimeField, with_omega: bool) -> Result<Vec<Vec<Vec<u64>>>> {
        let mut mats: Vec<Vec<Vec<u64>>> =
            self.all_ts()?.iter().map(|m| field.reduce_matrix(&m.entries)).collect();
        if with_omega {
            for m in self.all_omega()? {
                mats.push(field.reduce_matrix(&m.entries));
            }
        }
        Ok(mats)
    }

    fn unit(&self, k: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.dim()];
        v[k] = 1;
        v
    }

    /// Whether every nonzero vector generates a submodule containing
    /// `g_{z^J}` under the `T_s` alone. Returns the first failing line.
    pub fn check_indeco(&self, p: u64) -> Result<(bool, Option<Vec<u64>>)> {
        let field = PrimeField::new(p)?;
        let n = self.dim();
        let size = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if size > self.line_cap {
            return Err(Error::CapExceeded { what: format!("{p}^{n} vectors"), size, cap: self.line_cap });
        }
        let gens = self.generators(field, false)?;
        let target = self.unit(self.zj_position());
        let num_lines = (size as u64 - 1) / (p - 1);
        // lines already known to generate g_{z^J}
        let mut good = vec![false; size as usize];
        good[line_code(field, &target)] = true;
        for k in 0..num_lines {
            let v = line_representative(k, n, p);
            if !reaches(field, &gens, v.clone(), &target, &mut good) {
                return Ok((false, Some(v)));
            }
        }
        Ok((true, None))
    }

    /// Span of the orbit of `g_{z^J}`; with or without the `W_Omega` operators.
    pub fn generated_dimension(&self, p: u64, with_omega: bool) -> Result<usize> {
        let field = PrimeField::new(p)?;
        let gens = self.generators(field, with_omega)?;
        Ok(spin(field, &gens, vec![self.unit(self.zj_position())]).rank())
    }

    pub fn check_simple(&self, p: u64) -> Result<SimplicityReport> {
        let (zj_in_every_orbit, counterexample) = self.check_indeco(p)?;
        let generation_ok = self.generated_dimension(p, true)? == self.dim();
        Ok(SimplicityReport {
            is_simple: zj_in_every_orbit && generation_ok,
            zj_in_every_orbit,
            generation_ok,
            counterexample,
        })
    }
}

/// The `k`-th vector of length `n` over `F_p` whose first nonzero entry is 1.
fn line_representative(k: u64, n: usize, p: u64) -> Vec<u64> {
    // lines with leading one at position `lead` number p^(n-1-lead)
    let mut k = k;
    for lead in 0..n {
        let tail = n - 1 - lead;
        let count = p.pow(tail as u32);
        if k < count {
            let mut v = vec![0u64; n];
            v[lead] = 1;
            for pos in (lead + 1..n).rev() {
                v[pos] = k % p;
                k /= p;
            }
            return v;
        }
        k -= count;
    }
    unreachable!("line index out of range")
}

/// Smallest subspace containing `start` and stable under `gens`.
pub fn spin(field: PrimeField, gens: &[Vec<Vec<u64>>], start: Vec<Vec<u64>>) -> RowEchelon {
    let n = start.first().map_or(0, Vec::len);
    let mut span = RowEchelon::new(field, n);
    let mut queue = Vec::new();
    for v in start {
        if span.insert(v.clone()) {
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        for m in gens {
            let w = field.mat_vec_row(&v, m);
            if span.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    span
}

/// Index of the line through a nonzero `v`: scale the first nonzero entry
/// to 1 and read the entries as base-`p` digits.
fn line_code(field: PrimeField, v: &[u64]) -> usize {
    let lead = v.iter().find(|&&x| x != 0).copied().expect("nonzero vector");
    let inv = field.inv(lead);
    v.iter().rev().fold(0usize, |acc, &x| acc * field.p() as usize + field.mul(x, inv) as usize)
}

/// Whether the submodule generated by `start` contains a line marked in
/// `good`; marks `start` on success.
fn reaches(field: PrimeField, gens: &[Vec<Vec<u64>>], start: Vec<u64>, target: &[u64], good: &mut [bool]) -> bool {
    let code = line_code(field, &start);
    if good[code] {
        return true;
    }
    let mut span = RowEchelon::new(field, start.len());
    span.insert(start.clone());
    let mut queue = vec![start];
    while let Some(v) = queue.pop() {
        for m in gens {
            let w = field.mat_vec_row(&v, m);
            if span.insert(w.clone()) {
                if good[line_code(field, &w)] || span.contains(target) {
                    good[code] = true;
                    return true;
                }
                queue.push(w);
            }
        }
    }
    false
}

/// Left descents of `z^J`.
pub fn fingerprint(g: &WeylGroup, j: SubsetJ) -> SubsetJ {
    g.left_descents(g.z_j(j))
}

/// Recovers `J` from the descent set of `z^J`: the complement is
/// `-w_Delta(J)`, so `J` is its image under `-w_Delta`.
pub fn recover_j(g: &WeylGroup, fp: SubsetJ) -> Result<SubsetJ> {
    let rs = g.root_system();
    let check = fp.complement(g.rank());
    let mut out = SubsetJ::EMPTY;
    for b in check.iter() {
        let image = rs.negate(g.act_on_root(g.longest(), rs.simple_root(b)));
        if image >= rs.rank() {
            return Err(Error::InvalidElement(format!("-w_Delta(alpha_{}) is not simple", b + 1)));
        }
        out = out.with(image);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::RootSystem;

    fn group(s: &str) -> WeylGroup {
        WeylGroup::new(RootSystem::build(&s.parse().unwrap()).unwrap()).unwrap()
    }

    fn rows(m: &HeckeMatrix) -> Vec<Vec<i64>> {
        m.entries.to_rows()
    }

    #[test]
    fn a2_ts_matrices() {
        let g = group("A2");
        let h = HeckeModule::new(&g, SubsetJ(1)).unwrap();
        assert_eq!(rows(&h.ts_matrix(0).unwrap()), vec![vec![0, 1], vec![0, -1]]);
        assert_eq!(rows(&h.ts_matrix(1).unwrap()), vec![vec![-1, 0], vec![0, 0]]);
    }

    #[test]
    fn steinberg_ts_is_minus_one() {
        let g = group("B2");
        let h = HeckeModule::new(&g, SubsetJ::EMPTY).unwrap();
        for s in 0..2 {
            assert_eq!(rows(&h.ts_matrix(s).unwrap()), vec![vec![-1]]);
        }
    }

    #[test]
    fn a2_omega_matrix() {
        let g = group("A2");
        let h = HeckeModule::new(&g, SubsetJ(1)).unwrap();
        let u = WeylElement::from_window(vec![3, 1, 2]);
        let m = h.omega_matrix(&u).unwrap();
        assert_eq!(m.entries.row(1), &[-1, -1]);
        let id = h.omega_matrix(&WeylElement::identity(3)).unwrap();
        assert_eq!(id.entries, Matrix::identity(2));
        let bad = WeylElement::from_window(vec![2, 1, 3]);
        assert!(matches!(h.omega_matrix(&bad), Err(Error::NotOmegaElement(_))));
    }

    #[test]
    fn a2_lines_and_simplicity() {
        let g = group("A2");
        let h = HeckeModule::new(&g, SubsetJ(1)).unwrap();
        assert_eq!(h.check_indeco(2).unwrap(), (true, None));
        let r = h.check_simple(2).unwrap();
        assert!(r.is_simple);
        assert_eq!(h.generated_dimension(2, false).unwrap(), 1);
    }

    #[test]
    fn line_representatives_are_distinct() {
        let (n, p) = (3, 3);
        let lines: Vec<Vec<u64>> = (0..13).map(|k| line_representative(k, n, p)).collect();
        let mut sorted = lines.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 13);
        assert!(lines.iter().all(|v| v.iter().find(|&&x| x != 0) == Some(&1)));
    }

    #[test]
    fn fingerprints_in_a2() {
        let g = group("A2");
        let f1 = fingerprint(&g, SubsetJ(0b01));
        let f2 = fingerprint(&g, SubsetJ(0b10));
        assert_ne!(f1, f2);
        assert_eq!(fingerprint(&g, SubsetJ::full(2)), SubsetJ::EMPTY);
        assert_eq!(fingerprint(&g, SubsetJ::EMPTY), SubsetJ::full(2));
        assert_eq!(recover_j(&g, f1).unwrap(), SubsetJ(0b01));
    }

    #[test]
    fn composite_characteristic_rejected() {
        let g = group("A1");
        let h = HeckeModule::new(&g, SubsetJ::EMPTY).unwrap();
        assert!(matches!(h.ts_matrix_mod(0, 4), Err(Error::NonPrimeCharacteristic(_))));
    }
}
