//! Quadratic extensions `E = Q_ell(sqrt a) / Q_ell` at `p = 2`, `ell` odd.
//!
//! Degree 1 uses square classes computed on explicit representatives.
//! Degree 2 is the Hilbert-symbol group `Z/2` on both sides; the norm map is
//! evaluated on symbols `{e, i f}` by the projection formula
//! `N{e, i f} = {N e, f}`. Degrees `>= 3` vanish.

use crate::backends::hilbert::hilbert_symbol;
use crate::backends::padic::{is_prime, least_nonresidue, LocalFieldElement, QuadElement, QuadraticField};
use crate::backends::{zero_degree_model, DegreeTower};
use crate::cyclic::CyclicModule;
use crate::error::{Error, Result};
use crate::gfp::{Fp, Matrix};
use crate::model::{ExtensionModel, Flags};

pub const MAX_ELL: u64 = 97;
pub const MIN_TOWER_PRECISION: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AChoice {
    /// Least quadratic non-residue: unramified.
    U,
    /// `ell`: ramified.
    Ell,
    /// `u ell`: ramified.
    UEll,
}

impl AChoice {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "u" => Ok(AChoice::U),
            "ell" | "l" => Ok(AChoice::Ell),
            "uell" | "u*ell" | "ul" => Ok(AChoice::UEll),
            _ => Err(Error::Backend(format!(
                "unknown a choice '{}' (expected u, ell, uell)",
                s
            ))),
        }
    }

    pub fn value(self, ell: u64) -> i64 {
        let u = least_nonresidue(ell) as i64;
        match self {
            AChoice::U => u,
            AChoice::Ell => ell as i64,
            AChoice::UEll => u * ell as i64,
        }
    }
}

/// Explicit data for `E / F`: representatives, class maps and symbols.
#[derive(Clone, Debug)]
pub struct LocalExtension {
    pub e: QuadraticField,
    pub ell: u64,
    pub u: i64,
    pub a: i64,
    /// Representatives of the basis of `E*/E*^2`.
    pub a1_reps: [QuadElement; 2],
    /// Degree-2 generator `{e, i f}` of `k_2 E`.
    pub a2_gen: (QuadElement, i64),
}

impl LocalExtension {
    pub fn new(ell: u64, choice: AChoice, precision: u32) -> Result<Self> {
        if ell == 2 || !is_prime(ell) || ell > MAX_ELL {
            return Err(Error::Backend(format!(
                "ell must be an odd prime <= {}, got {}",
                MAX_ELL, ell
            )));
        }
        if precision < MIN_TOWER_PRECISION {
            return Err(Error::RaisePrecision(precision));
        }
        let a = choice.value(ell);
        let e = QuadraticField::new(ell, a, precision)?;
        let u = e.u() as i64;
        let uniformizer = if e.is_ramified() {
            e.sqrt_a()
        } else {
            e.from_int(ell as i64)
        };
        let a1_reps = [e.nonsquare_unit(), uniformizer];
        let mut ext = LocalExtension {
            e,
            ell,
            u,
            a,
            a1_reps,
            a2_gen: (a1_reps[0], u),
        };
        let gen = ext
            .a1_reps
            .iter()
            .flat_map(|x| [u, ell as i64].map(|f| (*x, f)))
            .find(|(x, f)| ext.symbol_e(x, &ext.e.from_int(*f)) == Ok(-1))
            .ok_or_else(|| Error::Backend("no symbol {e, i f} generates k_2 E".into()))?;
        ext.a2_gen = gen;
        Ok(ext)
    }

    pub fn precision(&self) -> u32 {
        self.e.precision()
    }

    pub fn base(&self, x: i64) -> Result<LocalFieldElement> {
        LocalFieldElement::from_integer(x, self.ell, self.precision())
    }

    pub fn class_f(&self, x: &LocalFieldElement) -> Vec<u32> {
        x.square_class().to_vec()
    }

    pub fn class_e(&self, x: &QuadElement) -> Result<Vec<u32>> {
        Ok(self.e.square_class(x)?.to_vec())
    }

    pub fn symbol_e(&self, x: &QuadElement, y: &QuadElement) -> Result<i8> {
        self.e.symbol(x, y)
    }

    pub fn symbol_f(&self, x: &LocalFieldElement, y: &LocalFieldElement) -> Result<i8> {
        hilbert_symbol(x, y)
    }

    /// Class in `k_2 F` (basis `{u, ell}`) of `{x, y}`.
    pub fn k2f_class(&self, x: i64, y: i64) -> Result<u32> {
        let s = self.symbol_f(&self.base(x)?, &self.base(y)?)?;
        Ok(u32::from(s == -1))
    }

    /// Class in `k_2 E` of `{x, y}`.
    pub fn k2e_class(&self, x: &QuadElement, y: &QuadElement) -> Result<u32> {
        Ok(u32::from(self.symbol_e(x, y)? == -1))
    }

    /// Basis of `F*/F*^2`.
    pub fn b1_basis(&self) -> [i64; 2] {
        [self.u, self.ell as i64]
    }
}

fn column_matrix(field: Fp, rows: usize, columns: &[Vec<u32>]) -> Result<Matrix> {
    Matrix::from_columns(field, rows, columns)
}

/// Degree-1 and degree-2 models of `E / F` and zero models above.
pub fn local_build_tower(
    ell: u64,
    choice: AChoice,
    n_max: usize,
    precision: u32,
) -> Result<DegreeTower> {
    let field = Fp::new(2)?;
    if n_max == 0 {
        return Err(Error::Backend("n_max must be at least 1".into()));
    }
    let x = LocalExtension::new(ell, choice, precision)?;
    let e = &x.e;
    let descriptor = format!("local ell={} a={} k={}", ell, x.a, precision);

    // degree 1
    for (j, rep) in x.a1_reps.iter().enumerate() {
        let mut expected = vec![0, 0];
        expected[j] = 1;
        if x.class_e(rep)? != expected {
            return Err(Error::Backend("degree-1 representatives are not a basis".into()));
        }
    }
    let sigma_cols = x
        .a1_reps
        .iter()
        .map(|r| x.class_e(&e.conj(r)))
        .collect::<Result<Vec<_>>>()?;
    let i_cols = x
        .b1_basis()
        .iter()
        .map(|&f| x.class_e(&e.from_int(f)))
        .collect::<Result<Vec<_>>>()?;
    let n_cols = x
        .a1_reps
        .iter()
        .map(|r| Ok(x.class_f(&e.norm_element(r)?)))
        .collect::<Result<Vec<_>>>()?;
    let a_class = x.class_f(&x.base(x.a)?);
    let xi_class = x.class_f(&x.base(-1)?);
    let cup_a1 = column_matrix(field, 2, &[a_class])?;
    let cup_xi1 = column_matrix(field, 2, &[xi_class])?;
    // a is a sum of two squares iff -1 is a norm from F(sqrt a)
    let minus_one_is_norm = x.k2f_class(x.a, -1)? == 0;
    let flags = Flags {
        a_sum_two_squares: minus_one_is_norm,
        xi_is_norm: minus_one_is_norm,
    };
    let degree1 = ExtensionModel::new(
        CyclicModule::new(column_matrix(field, 2, &sigma_cols)?)?,
        2,
        column_matrix(field, 2, &i_cols)?,
        column_matrix(field, 2, &n_cols)?,
        cup_a1.image(),
        cup_xi1.image(),
        flags,
        format!("{} n=1", descriptor),
    )?;

    // degree 2: B_2 spanned by {u, ell}, A_2 by {e, i f}
    if x.k2f_class(x.u, ell as i64)? != 1 {
        return Err(Error::Backend("{u, ell} does not generate k_2 F".into()));
    }
    let (e_gen, f_gen) = x.a2_gen;
    let f_elem = e.from_int(f_gen);
    let sigma2 = x.k2e_class(&e.conj(&e_gen), &f_elem)?;
    let i2 = x.k2e_class(&e.from_int(x.u), &e.from_int(ell as i64))?;
    let n2 = {
        let norm = e.norm_element(&e_gen)?;
        u32::from(x.symbol_f(&norm, &x.base(f_gen)?)? == -1)
    };
    let b1 = x.b1_basis();
    let cup_a2 = Matrix::from_rows(
        field,
        2,
        &[b1.iter().map(|&f| x.k2f_class(x.a, f)).collect::<Result<Vec<_>>>()?],
    )?;
    let cup_xi2 = Matrix::from_rows(
        field,
        2,
        &[b1.iter().map(|&f| x.k2f_class(-1, f)).collect::<Result<Vec<_>>>()?],
    )?;
    let degree2 = ExtensionModel::new(
        CyclicModule::new(Matrix::from_flat(field, 1, 1, &[sigma2 as i64])?)?,
        1,
        Matrix::from_flat(field, 1, 1, &[i2 as i64])?,
        Matrix::from_flat(field, 1, 1, &[n2 as i64])?,
        cup_a2.image(),
        cup_xi2.image(),
        flags,
        format!("{} n=2", descriptor),
    )?;

    let mut models = vec![degree1, degree2];
    models.truncate(n_max);
    for n in 3..=n_max {
        models.push(zero_degree_model(field, 0, &format!("{} n={}", descriptor, n))?);
    }
    let mut b_dims = vec![1, 2, 1];
    b_dims.resize(n_max.max(2) + 2, 0);
    b_dims.truncate(n_max + 2);
    let mut cup_a = vec![cup_a1, cup_a2];
    let mut cup_xi = vec![cup_xi1, cup_xi2];
    for n in 3..=n_max + 1 {
        cup_a.push(Matrix::zeros(field, b_dims[n], b_dims[n - 1]));
        cup_xi.push(Matrix::zeros(field, b_dims[n], b_dims[n - 1]));
    }
    cup_a.truncate(n_max + 1);
    cup_xi.truncate(n_max + 1);
    let root_class = x.class_e(&e.sqrt_a())?;
    Ok(DegreeTower {
        descriptor,
        field,
        n_max,
        models,
        b_dims,
        cup_a,
        cup_xi,
        root_class,
        cd: Some(2),
    })
}

/// `(sigma - 1){sqrt a, i f} = i{xi, f}` in `k_2 E` for each basis `f`
/// of `F*/F*^2`.
pub fn degree2_root_relation(x: &LocalExtension) -> Result<bool> {
    let e = &x.e;
    let root = e.sqrt_a();
    for f in x.b1_basis() {
        let fe = e.from_int(f);
        let lhs = (x.k2e_class(&e.conj(&root), &fe)? + x.k2e_class(&root, &fe)?) % 2;
        let rhs = x.k2f_class(-1, f)? * x.k2e_class(&e.from_int(x.u), &e.from_int(x.ell as i64))?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::{hereditary_check, hs_p2_ann_check, tower_consistency};
    use crate::checks::{criterion_p2, h90_holds};

    #[test]
    fn unramified_five() {
        let t = local_build_tower(5, AChoice::U, 3, 6).unwrap();
        let m = &t.models[0];
        assert!(m.module().tau().is_zero());
        // N(v) = u, N(ell) = ell^2
        assert_eq!(m.n().column(0), vec![1, 0]);
        assert_eq!(m.n().column(1), vec![0, 0]);
        let r = h90_holds(m).unwrap();
        assert!(r.verdict.is_fail());
        assert_eq!(r.witnesses[0].vector, vec![0, 1]);
        assert!(criterion_p2(m).unwrap().verdict.is_fail());
        assert!(h90_holds(&t.models[1]).unwrap().passed());
        assert!(h90_holds(&t.models[2]).unwrap().passed());
        assert!(hereditary_check(&t).unwrap().passed());
        assert!(tower_consistency(&t).passed());
    }

    #[test]
    fn ramified_three() {
        let t = local_build_tower(3, AChoice::Ell, 2, 6).unwrap();
        let m = &t.models[0];
        assert!(m.module().is_free());
        assert_eq!(m.module().sigma().column(1), vec![1, 1]);
        assert!(h90_holds(m).unwrap().passed());
        assert!(tower_consistency(&t).passed());
        for n in 1..=2 {
            assert!(hs_p2_ann_check(&t, n).unwrap().passed());
        }
    }

    #[test]
    fn root_relation_in_degree_two() {
        for ell in [3, 5, 7, 11, 13] {
            for c in [AChoice::U, AChoice::Ell, AChoice::UEll] {
                let x = LocalExtension::new(ell, c, 6).unwrap();
                assert!(degree2_root_relation(&x).unwrap(), "ell={} {:?}", ell, c);
            }
        }
    }

    #[test]
    fn preconditions() {
        assert!(matches!(local_build_tower(2, AChoice::U, 2, 6), Err(Error::Backend(_))));
        assert!(matches!(local_build_tower(101, AChoice::U, 2, 6), Err(Error::Backend(_))));
        assert_eq!(
            local_build_tower(5, AChoice::U, 2, 5).unwrap_err(),
            Error::RaisePrecision(5)
        );
    }
}
