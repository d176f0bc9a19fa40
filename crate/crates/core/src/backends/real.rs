//! `C / R` at `p = 2`.
//!
//! `k_n(C) = 0` for `n >= 1` and `k_*(R) = F_2[{-1}]`, so every `B_n` is
//! one-dimensional spanned by `{-1}^n`. Here `a = -1 = xi_2`.

use crate::backends::DegreeTower;
use crate::cyclic::CyclicModule;
use crate::error::{Error, Result};
use crate::gfp::{Fp, Matrix, Subspace};
use crate::model::{ExtensionModel, Flags};

/// Class of a nonzero integer in `R*/R*^2` (its sign).
pub fn real_square_class(x: i64) -> Result<u32> {
    if x == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(u32::from(x < 0))
}

/// Whether a real number is a sum of two real squares.
pub fn real_is_sum_of_two_squares(x: i64) -> bool {
    x >= 0
}

pub fn real_build_tower(n_max: usize) -> Result<DegreeTower> {
    let field = Fp::new(2)?;
    if n_max == 0 {
        return Err(Error::Backend("n_max must be at least 1".into()));
    }
    let a = -1;
    let xi = -1;
    let a_class = real_square_class(a)? as i64;
    let xi_class = real_square_class(xi)? as i64;
    // {-1} . {-1}^{n-1} = {-1}^n, nonzero in every degree
    let cup_a = vec![Matrix::from_flat(field, 1, 1, &[a_class])?; n_max + 1];
    let cup_xi = vec![Matrix::from_flat(field, 1, 1, &[xi_class])?; n_max + 1];
    let flags = Flags {
        a_sum_two_squares: real_is_sum_of_two_squares(a),
        xi_is_norm: real_is_sum_of_two_squares(xi),
    };
    let descriptor = "real".to_string();
    let mut models = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        models.push(ExtensionModel::new(
            CyclicModule::trivial(field, 0),
            1,
            Matrix::zeros(field, 0, 1),
            Matrix::zeros(field, 1, 0),
            cup_a[n - 1].image(),
            cup_xi[n - 1].image(),
            flags,
            format!("{} n={}", descriptor, n),
        )?);
    }
    debug_assert!(models.iter().all(|m| m.k_a() == &Subspace::full(field, 1)));
    Ok(DegreeTower {
        descriptor,
        field,
        n_max,
        models,
        b_dims: vec![1; n_max + 2],
        cup_a,
        cup_xi,
        root_class: Vec::new(),
        cd: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::h90_holds;

    #[test]
    fn h90_holds_in_every_degree() {
        let t = real_build_tower(4).unwrap();
        for m in &t.models {
            assert_eq!(m.a_dim(), 0);
            assert_eq!(m.b_dim(), 1);
            assert!(!m.flags().a_sum_two_squares);
            let r = h90_holds(m).unwrap();
            assert!(r.passed());
            assert!(m.k_a().is_full());
        }
        assert_eq!(t.cd, None);
    }

    #[test]
    fn sign_classes() {
        assert_eq!(real_square_class(-3).unwrap(), 1);
        assert_eq!(real_square_class(7).unwrap(), 0);
        assert!(real_square_class(0).is_err());
    }
}
