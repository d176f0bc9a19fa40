//! Quadratic Hilbert symbol over `Q_ell`.

use crate::backends::padic::{legendre, LocalFieldElement};
use crate::error::{Error, Result};

/// `(a, b)_ell` for odd `ell`:
/// `(-1)^(alpha beta (ell-1)/2) (u/ell)^beta (v/ell)^alpha`
/// with `a = ell^alpha u`, `b = ell^beta v`.
pub fn hilbert_symbol(a: &LocalFieldElement, b: &LocalFieldElement) -> Result<i8> {
    if a.ell() != b.ell() {
        return Err(Error::Backend("elements over different primes".into()));
    }
    let ell = a.ell();
    let alpha = a.valuation().rem_euclid(2);
    let beta = b.valuation().rem_euclid(2);
    let mut s: i8 = 1;
    if alpha * beta * ((ell as i64 - 1) / 2) % 2 == 1 {
        s = -s;
    }
    if beta == 1 {
        s *= legendre(a.unit_residue(), ell);
    }
    if alpha == 1 {
        s *= legendre(b.unit_residue(), ell);
    }
    Ok(s)
}

/// Symbol of two nonzero integers at the prime `ell`, including `ell = 2`.
pub fn hilbert_symbol_int(a: i64, b: i64, ell: u64) -> Result<i8> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroVector);
    }
    if ell == 2 {
        return Ok(hilbert_symbol_2(a, b));
    }
    let x = LocalFieldElement::from_integer(a, ell, 3)?;
    let y = LocalFieldElement::from_integer(b, ell, 3)?;
    hilbert_symbol(&x, &y)
}

fn split_two(mut x: i64) -> (u32, i64) {
    let mut v = 0;
    while x % 2 == 0 {
        x /= 2;
        v += 1;
    }
    (v, x)
}

/// `(a, b)_2 = (-1)^(e(u)e(v) + alpha w(v) + beta w(u))` with
/// `e(x) = (x-1)/2`, `w(x) = (x^2-1)/8` mod 2.
fn hilbert_symbol_2(a: i64, b: i64) -> i8 {
    let (alpha, u) = split_two(a);
    let (beta, v) = split_two(b);
    let eps = |x: i64| ((x.rem_euclid(8) - 1) / 2) as u32 % 2;
    let omega = |x: i64| {
        let r = x.rem_euclid(8);
        ((r * r - 1) / 8) as u32 % 2
    };
    let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Whether `a x^2 + b y^2 = z^2` has a primitive solution mod `ell^k`
/// (some coordinate a unit). Exhaustive search, independent of the symbol
/// formula: a primitive solution can be scaled so that `x`, `y` or `z` is 1,
/// and each case is a single loop against a table of squares.
pub fn norm_form_solvable(a: i64, b: i64, ell: u64, k: u32) -> bool {
    let m = ell.pow(k) as i64;
    let r = |x: i64| x.rem_euclid(m) as usize;
    let (a, b) = (a.rem_euclid(m), b.rem_euclid(m));
    let mut squares = vec![false; m as usize];
    let mut b_squares = vec![false; m as usize];
    for y in 0..m {
        let s = y * y % m;
        squares[s as usize] = true;
        b_squares[r(b * s)] = true;
    }
    (0..m).any(|t| {
        let s = t * t % m;
        // z = 1: b y^2 = 1 - a x^2
        b_squares[r(1 - a * s)]
            // x = 1: z^2 = a + b y^2
            || squares[r(a + b * s)]
            // y = 1: z^2 = a x^2 + b
            || squares[r(a * s + b)]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        assert_eq!(hilbert_symbol_int(2, 5, 5).unwrap(), -1);
        assert_eq!(hilbert_symbol_int(5, 5, 5).unwrap(), 1);
        assert_eq!(hilbert_symbol_int(1, 7, 3).unwrap(), 1);
        assert_eq!(hilbert_symbol_int(3, 3, 3).unwrap(), -1);
        assert!(hilbert_symbol_int(0, 3, 3).is_err());
    }

    #[test]
    fn two_adic_values() {
        // -1 is not a sum of two squares in Q_2
        assert_eq!(hilbert_symbol_int(-1, -1, 2).unwrap(), -1);
        assert_eq!(hilbert_symbol_int(2, 3, 2).unwrap(), -1);
        assert_eq!(hilbert_symbol_int(2, 7, 2).unwrap(), 1);
        assert_eq!(hilbert_symbol_int(5, 2, 2).unwrap(), -1);
    }

    #[test]
    fn oracle_reference_values() {
        assert!(!norm_form_solvable(2, 5, 5, 6));
        assert!(norm_form_solvable(5, 5, 5, 6));
        assert!(norm_form_solvable(1, 2, 5, 6));
    }

    #[test]
    fn symbol_matches_oracle_on_square_classes() {
        for ell in [3u64, 5, 7] {
            let u = crate::backends::padic::least_nonresidue(ell) as i64;
            let l = ell as i64;
            let classes = [1, u, l, u * l];
            for &a in &classes {
                for &b in &classes {
                    let s = hilbert_symbol_int(a, b, ell).unwrap();
                    assert_eq!(s == 1, norm_form_solvable(a, b, ell, 4), "({},{})_{}", a, b, ell);
                }
            }
        }
    }
}
