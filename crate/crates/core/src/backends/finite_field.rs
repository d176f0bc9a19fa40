//! Degree-`p` extensions of finite fields `F_{q^p} / F_q`.
//!
//! `F_{q^p}` is built as `F_r[x]/(f)` for a primitive polynomial `f`, so
//! `x` generates the multiplicative group. Classes mod `p`-th powers are
//! read off by raising to `(|group|)/p` and comparing with powers of a
//! fixed primitive `p`-th root of unity.

use crate::backends::{zero_degree_model, DegreeTower};
use crate::cyclic::CyclicModule;
use crate::error::{Error, Result};
use crate::gfp::{Fp, Matrix};
use crate::model::{ExtensionModel, Flags};

/// Largest `q^p` accepted.
pub const MAX_FIELD_SIZE: u64 = 10_000_000;

/// `GF(r^d)` as polynomials over `GF(r)` modulo a monic `modulus`.
#[derive(Clone, Debug)]
pub struct GaloisField {
    r: u64,
    d: usize,
    /// Low-to-high coefficients of the monic modulus, length `d + 1`.
    modulus: Vec<u64>,
}

pub type Element = Vec<u64>;

impl GaloisField {
    pub fn order(&self) -> u64 {
        self.r.pow(self.d as u32)
    }

    pub fn one(&self) -> Element {
        let mut e = vec![0; self.d];
        e[0] = 1;
        e
    }

    pub fn generator(&self) -> Element {
        let mut e = vec![0; self.d];
        if self.d > 1 {
            e[1] = 1;
        } else {
            e[0] = self.r - self.modulus[0] % self.r;
        }
        e
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Element {
        let r = self.r;
        let d = self.d;
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % r;
            }
        }
        for k in (d..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (j, &m) in self.modulus[..d].iter().enumerate() {
                let sub = c * m % r;
                prod[k - d + j] = (prod[k - d + j] + r - sub) % r;
            }
        }
        prod.truncate(d);
        prod
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> Element {
        let mut result = self.one();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    /// Searches monic polynomials of degree `d` for one whose root `x`
    /// has multiplicative order `r^d - 1`; such a quotient ring is a field.
    pub fn primitive(r: u64, d: usize) -> Result<GaloisField> {
        let order = r.pow(d as u32) - 1;
        let factors = prime_factors(order);
        let mut low = vec![0u64; d];
        loop {
            if low[0] != 0 {
                let mut modulus = low.clone();
                modulus.push(1);
                let field = GaloisField { r, d, modulus };
                let x = field.generator();
                if field.pow(&x, order) == field.one()
                    && factors
                        .iter()
                        .all(|&l| field.pow(&x, order / l) != field.one())
                {
                    return Ok(field);
                }
            }
            // next coefficient vector
            let mut k = 0;
            loop {
                if k == d {
                    return Err(Error::Backend(format!(
                        "no primitive polynomial of degree {} over GF({})",
                        d, r
                    )));
                }
                low[k] += 1;
                if low[k] < r {
                    break;
                }
                low[k] = 0;
                k += 1;
            }
        }
    }
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `q = r^e` with `r` prime, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let r = factors[0];
    let mut e = 0;
    let mut m = q;
    while m > 1 {
        m /= r;
        e += 1;
    }
    Some((r, e))
}

/// Discrete class of `z` in a cyclic group of order `group_order` modulo
/// `p`-th powers, relative to the root of unity `zeta`.
fn class_mod_p(
    field: &GaloisField,
    z: &[u64],
    group_order: u64,
    zeta: &[u64],
    p: u32,
) -> Result<u32> {
    let t = field.pow(z, group_order / p as u64);
    let mut power = field.one();
    for k in 0..p {
        if power == t {
            return Ok(k);
        }
        power = field.mul(&power, zeta);
    }
    Err(Error::Backend("element is not in the expected subgroup".into()))
}

/// Tower for `F_{q^p} / F_q`, `p | q - 1`.
///
/// Degree 1 is `E*/E*^p` over `F*/F*^p`, each one-dimensional; `k_n` vanishes
/// for `n >= 2`.
pub fn ff_build_tower(p: u32, q: u64, n_max: usize) -> Result<DegreeTower> {
    let field = Fp::new(p)?;
    if n_max == 0 {
        return Err(Error::Backend("n_max must be at least 1".into()));
    }
    let (r, e) = prime_power(q)
        .ok_or_else(|| Error::Backend(format!("q = {} is not a prime power", q)))?;
    if (q - 1) % p as u64 != 0 {
        return Err(Error::NoRootOfUnity { p, qm1: q - 1 });
    }
    let size = (q as u128).pow(p);
    if size > MAX_FIELD_SIZE as u128 {
        return Err(Error::Backend(format!(
            "q^p = {} exceeds {}",
            size, MAX_FIELD_SIZE
        )));
    }

    let big = GaloisField::primitive(r, (e * p) as usize)?;
    let group = big.order() - 1;
    let small_group = q - 1;
    let g = big.generator();
    let frob = |z: &[u64]| big.pow(z, q);
    let zeta = big.pow(&g, group / p as u64);
    let class_e = |z: &[u64]| class_mod_p(&big, z, group, &zeta, p);
    let class_f = |z: &[u64]| class_mod_p(&big, z, small_group, &zeta, p);

    // N(g) = g * g^q * ... * g^{q^{p-1}}
    let mut norm_g = big.one();
    let mut conj = g.clone();
    for _ in 0..p {
        norm_g = big.mul(&norm_g, &conj);
        conj = frob(&conj);
    }
    let h = norm_g;
    if frob(&h) != h {
        return Err(Error::Backend("norm of the generator is not in F".into()));
    }
    let h_generates = prime_factors(small_group)
        .iter()
        .all(|&l| big.pow(&h, small_group / l) != big.one());

    // a = h, so E = F(a^{1/p}) with a^{1/p} = g^{M/p}, M = |E*| / |F*|.
    let a = h.clone();
    let m_index = group / small_group;
    let root = big.pow(&g, m_index / p as u64);
    if big.pow(&root, p as u64) != a {
        return Err(Error::Backend("p-th root of a not found".into()));
    }
    // xi = sigma(root) / root, which fixes sigma = Frobenius as the generator
    // normalized by root^{sigma - 1} = xi.
    let root_inv = big.pow(&root, group - 1);
    let xi = big.mul(&frob(&root), &root_inv);
    if frob(&xi) != xi || xi == big.one() || big.pow(&xi, p as u64) != big.one() {
        return Err(Error::Backend("sigma(root)/root is not a primitive p-th root of unity in F".into()));
    }

    let h_class = class_f(&h)?;
    let in_b = |z: &[u64]| -> Result<u32> {
        // coordinate with respect to the basis class of h
        let c = class_f(z)?;
        Ok(field.mul(c, field.inv(h_class)))
    };
    let g_class = class_e(&g)?;
    let in_a = |z: &[u64]| -> Result<u32> {
        let c = class_e(z)?;
        Ok(field.mul(c, field.inv(g_class)))
    };

    let sigma = Matrix::from_flat(field, 1, 1, &[in_a(&frob(&g))? as i64])?;
    let i = Matrix::from_flat(field, 1, 1, &[in_a(&h)? as i64])?;
    let n = Matrix::from_flat(field, 1, 1, &[in_b(&h)? as i64])?;
    let a_class = in_b(&a)?;
    let xi_class = in_b(&xi)?;
    let cup_a1 = Matrix::from_flat(field, 1, 1, &[a_class as i64])?;
    let cup_xi1 = Matrix::from_flat(field, 1, 1, &[xi_class as i64])?;

    let descriptor = format!("ff p={} q={}", p, q);
    let flags = Flags {
        // every element of F is a norm when N(g) generates F*
        a_sum_two_squares: p == 2 && h_generates,
        xi_is_norm: h_generates,
    };
    let degree1 = ExtensionModel::new(
        CyclicModule::new(sigma)?,
        1,
        i,
        n,
        cup_a1.image(),
        cup_xi1.image(),
        flags,
        format!("{} n=1", descriptor),
    )?;

    let mut models = vec![degree1];
    for deg in 2..=n_max {
        models.push(zero_degree_model(field, 0, &format!("{} n={}", descriptor, deg))?);
    }
    let mut b_dims = vec![1, 1];
    b_dims.resize(n_max + 2, 0);
    let mut cup_a = vec![cup_a1];
    let mut cup_xi = vec![cup_xi1];
    for deg in 2..=n_max + 1 {
        cup_a.push(Matrix::zeros(field, b_dims[deg], b_dims[deg - 1]));
        cup_xi.push(Matrix::zeros(field, b_dims[deg], b_dims[deg - 1]));
    }
    Ok(DegreeTower {
        descriptor,
        field,
        n_max,
        models,
        b_dims,
        cup_a,
        cup_xi,
        root_class: vec![in_a(&root)?],
        cd: Some(1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn gf_343_has_primitive_element() {
        let f = GaloisField::primitive(7, 3).unwrap();
        assert_eq!(f.order(), 343);
        let g = f.generator();
        // order exactly 342
        assert_eq!(f.pow(&g, 342), f.one());
        for d in [2, 3, 19] {
            assert_ne!(f.pow(&g, 342 / d), f.one());
        }
    }

    #[test]
    fn p3_q7_shape() {
        let t = ff_build_tower(3, 7, 3).unwrap();
        let m = &t.models[0];
        assert_eq!((m.a_dim(), m.b_dim()), (1, 1));
        assert!(m.i().is_zero());
        assert!(m.norm_range().is_full());
        assert!(m.k_a().is_full());
        assert!(m.module().tau().is_zero());
        assert!(m.flags().xi_is_norm);
        for deg in 2..=3 {
            assert_eq!(t.models[deg - 1].a_dim(), 0);
            assert_eq!(t.models[deg - 1].b_dim(), 0);
        }
    }

    #[test]
    fn prime_power_q_supported() {
        // F_81 / F_9 at p = 2
        let t = ff_build_tower(2, 9, 2).unwrap();
        assert!(t.models[0].norm_range().is_full());
    }

    #[test]
    fn preconditions() {
        assert_eq!(
            ff_build_tower(3, 5, 1).unwrap_err(),
            Error::NoRootOfUnity { p: 3, qm1: 4 }
        );
        assert!(matches!(ff_build_tower(2, 6, 1), Err(Error::Backend(_))));
        assert!(matches!(ff_build_tower(2, 4001, 1), Err(Error::Backend(_))));
        assert!(matches!(ff_build_tower(3, 7, 0), Err(Error::Backend(_))));
    }
}
