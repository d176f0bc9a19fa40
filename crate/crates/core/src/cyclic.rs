//! Modules over `F_p[G]` for `G = <sigma>` cyclic of order `p`.
//!
//! Everything is phrased through `tau = sigma - 1`, which is nilpotent of
//! index at most `p`. The indecomposables are the Jordan blocks `V_i` of
//! `tau`, `1 <= i <= p`; in the standard basis `e_1, ..., e_i` of a block,
//! `tau e_{k+1} = e_k`, so `e_1` spans the socle and `e_i` generates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfp::{is_zero_vector, Fp, Matrix, Subspace};

/// A finite-dimensional `F_p[G]`-module, given by the matrix of `sigma`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicModule {
    sigma: Matrix,
}

/// Block multiplicities `m_1..m_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JordanProfile {
    multiplicities: Vec<usize>,
}

impl JordanProfile {
    pub fn new(multiplicities: Vec<usize>) -> Self {
        JordanProfile { multiplicities }
    }

    /// Multiplicity of `V_i` (1-based block size).
    pub fn m(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.multiplicities.get(i - 1).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn dim(&self) -> usize {
        self.multiplicities
            .iter()
            .enumerate()
            .map(|(k, m)| (k + 1) * m)
            .sum()
    }

    pub fn block_count(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Block sizes in ascending order.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.multiplicities
            .iter()
            .enumerate()
            .flat_map(|(k, &m)| std::iter::repeat(k + 1).take(m))
            .collect()
    }
}

/// A concrete Jordan basis for `tau`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub profile: JordanProfile,
    /// Columns are the Jordan basis; block `V_i` contributes
    /// `tau^{i-1} g, ..., tau g, g` for its generator `g`.
    pub basis_change: Matrix,
    /// Block sizes in the column order of `basis_change`.
    pub blocks: Vec<usize>,
}

impl Decomposition {
    /// Column index of the first basis vector of each block.
    pub fn block_offsets(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .scan(0, |acc, &s| {
                let start = *acc;
                *acc += s;
                Some(start)
            })
            .collect()
    }

    /// Generator (last basis vector) of each block.
    pub fn generators(&self) -> Vec<Vec<u32>> {
        self.block_offsets()
            .iter()
            .zip(&self.blocks)
            .map(|(&o, &s)| self.basis_change.column(o + s - 1))
            .collect()
    }

    /// Socle vector (first basis vector) of each block.
    pub fn socles(&self) -> Vec<Vec<u32>> {
        self.block_offsets()
            .iter()
            .map(|&o| self.basis_change.column(o))
            .collect()
    }
}

/// `H^1(G, M) = ker(tau^{p-1}) / im(tau)`.
#[derive(Clone, Debug)]
pub struct H1 {
    pub dim: usize,
    /// Coset representatives forming a basis of the quotient.
    pub representatives: Vec<Vec<u32>>,
}

impl CyclicModule {
    pub fn new(sigma: Matrix) -> Result<Self> {
        let m = CyclicModule { sigma };
        m.validate_action()?;
        Ok(m)
    }

    /// The trivial module of dimension `d` (`sigma = 1`).
    pub fn trivial(field: Fp, d: usize) -> Self {
        CyclicModule {
            sigma: Matrix::identity(field, d),
        }
    }

    /// Direct sum of standard blocks `V_{sizes[0]} + V_{sizes[1]} + ...`.
    pub fn from_blocks(field: Fp, sizes: &[usize]) -> Result<Self> {
        let p = field.p() as usize;
        if let Some(&bad) = sizes.iter().find(|&&s| s == 0 || s > p) {
            return Err(Error::DimensionMismatch(format!(
                "block size {} outside 1..={}",
                bad, p
            )));
        }
        let mut sigma = Matrix::zeros(field, 0, 0);
        for &s in sizes {
            let mut block = Matrix::identity(field, s);
            for k in 1..s {
                block.set(k - 1, k, 1);
            }
            sigma = sigma.block_diag(&block);
        }
        Ok(CyclicModule { sigma })
    }

    /// The regular representation `F_p[G]^rank`.
    pub fn free(field: Fp, rank: usize) -> Self {
        let sizes = vec![field.p() as usize; rank];
        Self::from_blocks(field, &sizes).unwrap()
    }

    /// Checks `sigma^p = 1`.
    pub fn validate_action(&self) -> Result<()> {
        let sigma = &self.sigma;
        let field = sigma.field();
        let p = field.p();
        if !sigma.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "sigma is {}x{}, not square",
                sigma.rows(),
                sigma.cols()
            )));
        }
        let id = Matrix::identity(field, sigma.rows());
        if sigma.pow(p as usize) == id {
            return Ok(());
        }
        let detail = if sigma.inverse().is_none() {
            "sigma is singular".to_string()
        } else {
            let mut power = sigma.clone();
            let mut order = None;
            for k in 1..=4096usize {
                if power == id {
                    order = Some(k);
                    break;
                }
                power = power.mul(sigma);
            }
            match order {
                Some(k) => format!("sigma has order {}", k),
                None => "sigma has order > 4096".to_string(),
            }
        };
        Err(Error::NotAnAction { p, detail })
    }

    pub fn field(&self) -> Fp {
        self.sigma.field()
    }

    pub fn p(&self) -> u32 {
        self.field().p()
    }

    pub fn dim(&self) -> usize {
        self.sigma.rows()
    }

    pub fn sigma(&self) -> &Matrix {
        &self.sigma
    }

    pub fn tau(&self) -> Matrix {
        self.sigma
            .sub(&Matrix::identity(self.field(), self.dim()))
    }

    /// Matrix of `(sigma - 1)^k`.
    pub fn tau_power(&self, k: usize) -> Matrix {
        self.tau().pow(k)
    }

    /// Matrix of `1 + sigma + ... + sigma^{p-1}`, which equals `tau^{p-1}`.
    pub fn norm_operator(&self) -> Matrix {
        self.tau_power(self.p() as usize - 1)
    }

    /// `M^G = ker tau`.
    pub fn fixed_part(&self) -> Subspace {
        self.tau().kernel()
    }

    /// `(sigma - 1) M`.
    pub fn radical_part(&self) -> Subspace {
        self.tau().image()
    }

    /// `(sigma - 1)^{p-1} M`.
    pub fn norm_image(&self) -> Subspace {
        self.norm_operator().image()
    }

    /// `l(y) = max { t : tau^{t-1} y != 0 }`.
    pub fn length(&self, y: &[u32]) -> Result<usize> {
        if y.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a module of dimension {}",
                y.len(),
                self.dim()
            )));
        }
        if is_zero_vector(y) {
            return Err(Error::ZeroVector);
        }
        let tau = self.tau();
        let mut v = y.to_vec();
        let mut l = 0;
        while !is_zero_vector(&v) {
            v = tau.apply(&v);
            l += 1;
        }
        Ok(l)
    }

    /// Multiplicities from the rank sequence of `tau`:
    /// `m_i = r_{i-1} - 2 r_i + r_{i+1}` with `r_j = rank tau^j`.
    pub fn profile(&self) -> JordanProfile {
        let p = self.p() as usize;
        let tau = self.tau();
        let mut ranks = Vec::with_capacity(p + 2);
        let mut power = Matrix::identity(self.field(), self.dim());
        for _ in 0..=p + 1 {
            ranks.push(power.rank() as i64);
            power = power.mul(&tau);
        }
        let m = (1..=p)
            .map(|i| (ranks[i - 1] - 2 * ranks[i] + ranks[i + 1]) as usize)
            .collect();
        JordanProfile::new(m)
    }

    /// Jordan chain basis for `tau`, deepest chains chosen first.
    pub fn decompose(&self) -> Decomposition {
        let field = self.field();
        let d = self.dim();
        let p = self.p() as usize;
        let tau = self.tau();

        let mut kernels = Vec::with_capacity(p + 1);
        let mut power = Matrix::identity(field, d);
        for _ in 0..=p {
            kernels.push(power.kernel());
            power = power.mul(&tau);
        }

        // (generator, block size)
        let mut generators: Vec<(Vec<u32>, usize)> = Vec::new();
        let mut level: Vec<Vec<u32>> = Vec::new();
        for k in (1..=p).rev() {
            let carried: Vec<Vec<u32>> = level.iter().map(|v| tau.apply(v)).collect();
            let lower = kernels[k - 1]
                .sum(&Subspace::span(field, d, &carried))
                .unwrap();
            let fresh = lower.complement_in(&kernels[k]).unwrap();
            for g in &fresh {
                generators.push((g.clone(), k));
            }
            level = carried;
            level.extend(fresh);
        }

        generators.sort_by_key(|(_, size)| *size);
        let mut columns = Vec::with_capacity(d);
        let mut blocks = Vec::with_capacity(generators.len());
        for (g, size) in &generators {
            let mut chain = vec![g.clone()];
            for _ in 1..*size {
                let next = tau.apply(chain.last().unwrap());
                chain.push(next);
            }
            chain.reverse();
            columns.extend(chain);
            blocks.push(*size);
        }
        let basis_change = Matrix::from_columns(field, d, &columns).unwrap();

        let mut multiplicities = vec![0; p];
        for &s in &blocks {
            multiplicities[s - 1] += 1;
        }
        Decomposition {
            profile: JordanProfile::new(multiplicities),
            basis_change,
            blocks,
        }
    }

    pub fn is_free(&self) -> bool {
        let profile = self.profile();
        let p = self.p() as usize;
        (1..p).all(|i| profile.m(i) == 0)
    }

    /// `M = S + T` with `S` the sum of the `V_1` blocks and `T` the rest.
    pub fn split_semisimple(&self) -> (Subspace, Subspace) {
        let dec = self.decompose();
        let field = self.field();
        let mut s = Vec::new();
        let mut t = Vec::new();
        for (offset, &size) in dec.block_offsets().iter().zip(&dec.blocks) {
            for c in *offset..offset + size {
                let v = dec.basis_change.column(c);
                if size == 1 {
                    s.push(v);
                } else {
                    t.push(v);
                }
            }
        }
        (
            Subspace::span(field, self.dim(), &s),
            Subspace::span(field, self.dim(), &t),
        )
    }

    pub fn h1(&self) -> H1 {
        let kernel = self.norm_operator().kernel();
        let radical = self.radical_part();
        let representatives = radical.complement_in(&kernel).unwrap();
        H1 {
            dim: representatives.len(),
            representatives,
        }
    }

    /// Whether the line through the fixed vector `v` is a `V_1` direct summand.
    pub fn is_trivial_summand(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a module of dimension {}",
                v.len(),
                self.dim()
            )));
        }
        if is_zero_vector(v) {
            return Err(Error::ZeroVector);
        }
        if !is_zero_vector(&self.tau().apply(v)) {
            return Err(Error::NotFixed);
        }
        Ok(!self.radical_part().contains(v))
    }

    /// The module in the basis given by the columns of `basis`:
    /// `basis^{-1} sigma basis`.
    pub fn conjugate(&self, basis: &Matrix) -> Result<CyclicModule> {
        let inv = basis.inverse().ok_or_else(|| {
            Error::DimensionMismatch("change of basis is not invertible".into())
        })?;
        Ok(CyclicModule {
            sigma: inv.mul(&self.sigma).mul(basis),
        })
    }

    pub fn direct_sum(&self, other: &CyclicModule) -> Result<CyclicModule> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch {
                left: self.p(),
                right: other.p(),
            });
        }
        Ok(CyclicModule {
            sigma: self.sigma.block_diag(&other.sigma),
        })
    }

    /// Whether a subspace is stable under `sigma`.
    pub fn is_stable(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|v| s.contains(&self.sigma.apply(v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfp::{enumerate_subspaces, unit_vector};

    fn f(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    fn sigma(p: u32, rows: &[&[u32]]) -> Matrix {
        let cols = rows.len();
        Matrix::from_rows(f(p), cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn validate_action_examples() {
        assert!(CyclicModule::new(Matrix::identity(f(5), 3)).is_ok());
        assert!(CyclicModule::new(sigma(2, &[&[1, 1], &[0, 1]])).is_ok());
        let err = CyclicModule::new(sigma(2, &[&[0, 1], &[1, 1]])).unwrap_err();
        match err {
            Error::NotAnAction { p, detail } => {
                assert_eq!(p, 2);
                assert!(detail.contains("order 3"), "{}", detail);
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn tau_power_examples() {
        let m = CyclicModule::free(f(5), 1);
        assert_eq!(m.tau_power(0), Matrix::identity(f(5), 5));
        assert_eq!(m.tau_power(4).rank(), 1);
        assert!(m.tau_power(5).is_zero());
        // tau^{p-1} = 1 + sigma + ... + sigma^{p-1}
        let mut sum = Matrix::zeros(f(5), 5, 5);
        for k in 0..5 {
            sum = sum.add(&m.sigma().pow(k));
        }
        assert_eq!(sum, m.norm_operator());
        let v2 = CyclicModule::from_blocks(f(3), &[2]).unwrap();
        assert!(v2.tau_power(2).is_zero());
    }

    #[test]
    fn fixed_radical_norm_examples() {
        let t = CyclicModule::trivial(f(3), 4);
        assert!(t.fixed_part().is_full());
        assert!(t.radical_part().is_zero());

        let free = CyclicModule::free(f(3), 1);
        assert_eq!(free.fixed_part().dim(), 1);
        assert_eq!(free.fixed_part(), free.norm_image());

        let m = CyclicModule::from_blocks(f(2), &[1, 2]).unwrap();
        assert_eq!(m.fixed_part().dim(), 2);
        assert_eq!(m.radical_part().dim(), 1);
        assert_eq!(m.norm_image().dim(), 1);
    }

    #[test]
    fn length_examples() {
        let m = CyclicModule::from_blocks(f(3), &[2, 3]).unwrap();
        // basis: V_2 = e0 (socle), e1 (gen); V_3 = e2, e3, e4 (gen)
        assert_eq!(m.length(&unit_vector(5, 0)).unwrap(), 1);
        assert_eq!(m.length(&unit_vector(5, 1)).unwrap(), 2);
        assert_eq!(m.length(&unit_vector(5, 4)).unwrap(), 3);
        // gen of V_2 plus tau * gen of V_3
        assert_eq!(m.length(&[0, 1, 0, 1, 0]).unwrap(), 2);
        assert_eq!(m.length(&[0; 5]), Err(Error::ZeroVector));
    }

    #[test]
    fn decompose_examples() {
        let t = CyclicModule::trivial(f(5), 4);
        assert_eq!(t.decompose().profile.multiplicities(), &[4, 0, 0, 0, 0]);
        let free = CyclicModule::free(f(5), 1);
        assert_eq!(free.decompose().profile.m(5), 1);
        let m = CyclicModule::new(sigma(2, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        let dec = m.decompose();
        assert_eq!(dec.profile.multiplicities(), &[1, 1]);
        assert_eq!(dec.profile, m.profile());
        let standard = CyclicModule::from_blocks(f(2), &dec.blocks).unwrap();
        assert_eq!(&m.conjugate(&dec.basis_change).unwrap(), &standard);
    }

    #[test]
    fn freeness_examples() {
        assert!(CyclicModule::trivial(f(3), 0).is_free());
        assert!(!CyclicModule::trivial(f(3), 1).is_free());
        assert!(CyclicModule::from_blocks(f(2), &[2, 2]).unwrap().is_free());
    }

    #[test]
    fn split_semisimple_examples() {
        let t = CyclicModule::trivial(f(3), 3);
        let (s, tt) = t.split_semisimple();
        assert!(s.is_full() && tt.is_zero());
        let free = CyclicModule::free(f(3), 2);
        let (s, tt) = free.split_semisimple();
        assert!(s.is_zero() && tt.is_full());
        let m = CyclicModule::from_blocks(f(2), &[1, 2]).unwrap();
        let (s, tt) = m.split_semisimple();
        assert_eq!(s, Subspace::span(f(2), 3, &[unit_vector(3, 0)]));
        assert_eq!(
            tt,
            Subspace::span(f(2), 3, &[unit_vector(3, 1), unit_vector(3, 2)])
        );
    }

    #[test]
    fn h1_examples() {
        assert_eq!(CyclicModule::free(f(3), 2).h1().dim, 0);
        assert_eq!(CyclicModule::trivial(f(2), 1).h1().dim, 1);
        let m = CyclicModule::from_blocks(f(3), &[1, 2, 3]).unwrap();
        let h1 = m.h1();
        assert_eq!(h1.dim, 2);
        // direct kernel/image computation
        let k = m.norm_operator().kernel().dim();
        let r = m.radical_part().dim();
        assert_eq!(k - r, 2);
    }

    /// Exhaustive search for a sigma-stable complement of the line through v.
    fn has_stable_complement(m: &CyclicModule, v: &[u32]) -> bool {
        let line = Subspace::span(m.field(), m.dim(), &[v.to_vec()]);
        enumerate_subspaces(m.field(), m.dim(), m.dim() - 1)
            .unwrap()
            .into_iter()
            .any(|p| m.is_stable(&p) && line.intersect(&p).unwrap().is_zero())
    }

    #[test]
    fn trivial_summand_examples() {
        let free = CyclicModule::free(f(3), 1);
        let soc = free.norm_image().basis()[0].clone();
        assert!(!free.is_trivial_summand(&soc).unwrap());
        let t = CyclicModule::trivial(f(5), 2);
        assert!(t.is_trivial_summand(&[3, 1]).unwrap());
        let m = CyclicModule::from_blocks(f(2), &[1, 2]).unwrap();
        let v = [1, 1, 0];
        assert!(m.is_trivial_summand(&v).unwrap());
        assert!(has_stable_complement(&m, &v));
        assert_eq!(m.is_trivial_summand(&[0, 0, 1]), Err(Error::NotFixed));
        assert_eq!(m.is_trivial_summand(&[0, 0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn trivial_summand_matches_complement_search() {
        for (p, sizes) in [
            (2u32, vec![1, 1, 2]),
            (2, vec![2, 2]),
            (2, vec![1, 1, 1, 1]),
            (3, vec![1, 2]),
            (3, vec![3]),
            (3, vec![1, 1, 1]),
        ] {
            let m = CyclicModule::from_blocks(f(p), &sizes).unwrap();
            for v in m.fixed_part().enumerate_vectors().unwrap() {
                if is_zero_vector(&v) {
                    continue;
                }
                assert_eq!(
                    m.is_trivial_summand(&v).unwrap(),
                    has_stable_complement(&m, &v),
                    "p={} sizes={:?} v={:?}",
                    p,
                    sizes,
                    v
                );
            }
        }
    }
}
