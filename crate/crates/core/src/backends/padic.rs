//! Fixed-precision arithmetic in `Q_ell` and its quadratic extensions.
//!
//! Elements are kept as integral residues modulo `ell^k`. Whenever the
//! precision is too low to determine a valuation, the caller gets
//! [`Error::RaisePrecision`] instead of a guess.

use crate::error::{Error, Result};

/// Smallest precision accepted for single elements.
pub const MIN_PRECISION: u32 = 3;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn mod_pow(base: u128, mut e: u128, m: u128) -> u128 {
    let mut result = 1 % m;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    result
}

/// Legendre symbol `(x / ell)` for `x` coprime to the odd prime `ell`.
pub fn legendre(x: u64, ell: u64) -> i8 {
    let t = mod_pow(x as u128 % ell as u128, (ell as u128 - 1) / 2, ell as u128);
    if t == 1 {
        1
    } else {
        -1
    }
}

pub fn least_nonresidue(ell: u64) -> u64 {
    (2..ell).find(|&x| legendre(x, ell) == -1).unwrap_or(0)
}

fn check_ell_precision(ell: u64, precision: u32) -> Result<u128> {
    if ell == 2 || !is_prime(ell) {
        return Err(Error::Backend(format!("ell = {} is not an odd prime", ell)));
    }
    if precision < MIN_PRECISION {
        return Err(Error::RaisePrecision(precision));
    }
    let m = (ell as u128)
        .checked_pow(precision)
        .filter(|&m| m < 1 << 62)
        .ok_or_else(|| Error::Backend(format!("ell^{} too large", precision)))?;
    Ok(m)
}

/// Nonzero element `ell^valuation * unit` of `Q_ell`, `unit` known mod
/// `ell^precision`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalFieldElement {
    ell: u64,
    valuation: i64,
    unit: u64,
    precision: u32,
}

impl LocalFieldElement {
    pub fn new(ell: u64, valuation: i64, unit: u64, precision: u32) -> Result<Self> {
        let m = check_ell_precision(ell, precision)?;
        if unit % ell == 0 {
            return Err(Error::Backend(format!(
                "unit {} is divisible by {}",
                unit, ell
            )));
        }
        Ok(Self {
            ell,
            valuation,
            unit: (unit as u128 % m) as u64,
            precision,
        })
    }

    pub fn from_integer(x: i64, ell: u64, precision: u32) -> Result<Self> {
        let m = check_ell_precision(ell, precision)?;
        if x == 0 {
            return Err(Error::ZeroVector);
        }
        let mut v = 0;
        let mut y = x;
        while y % ell as i64 == 0 {
            y /= ell as i64;
            v += 1;
        }
        let unit = (y as i128).rem_euclid(m as i128) as u64;
        Self::new(ell, v, unit, precision)
    }

    /// Reads an integral residue mod `ell^precision`; zero cannot be
    /// decided at this precision.
    pub fn from_residue(value: u128, ell: u64, precision: u32) -> Result<Self> {
        let m = check_ell_precision(ell, precision)?;
        let mut y = value % m;
        if y == 0 {
            return Err(Error::RaisePrecision(precision));
        }
        let mut v = 0;
        while y % ell as u128 == 0 {
            y /= ell as u128;
            v += 1;
        }
        // the unit is only known mod ell^(precision - v)
        if precision - v < 1 {
            return Err(Error::RaisePrecision(precision));
        }
        Self::new(ell, v as i64, y as u64, precision - v)
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn unit_residue(&self) -> u64 {
        self.unit % self.ell
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ell != other.ell {
            return Err(Error::Backend("elements over different primes".into()));
        }
        let k = self.precision.min(other.precision);
        let m = (self.ell as u128).pow(k);
        let unit = (self.unit as u128 * other.unit as u128 % m) as u64;
        Self::new(self.ell, self.valuation + other.valuation, unit, k.max(MIN_PRECISION))
    }

    pub fn neg(&self) -> Self {
        let m = (self.ell as u128).pow(self.precision);
        Self {
            unit: ((m - self.unit as u128) % m) as u64,
            ..*self
        }
    }

    /// Even valuation and the unit is a square mod `ell` (Hensel).
    pub fn is_square(&self) -> bool {
        self.valuation % 2 == 0 && legendre(self.unit_residue(), self.ell) == 1
    }

    /// Coordinates in `Q_ell*/Q_ell*^2` with respect to the basis
    /// `{u, ell}`, `u` the least quadratic non-residue.
    pub fn square_class(&self) -> [u32; 2] {
        [
            u32::from(legendre(self.unit_residue(), self.ell) == -1),
            self.valuation.rem_euclid(2) as u32,
        ]
    }
}

/// Element `x + y t` of the residue field: `F_ell[t]/(t^2 - u)` for an
/// unramified extension, `F_ell` (with `y = 0`) for a ramified one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Residue {
    pub x: u64,
    pub y: u64,
}

/// `Q_ell(sqrt(a))` for `a` in `{u, ell, u ell}`. Elements `re + im sqrt(a)`
/// with integral `re, im` mod `ell^k`.
#[derive(Clone, Debug)]
pub struct QuadraticField {
    ell: u64,
    precision: u32,
    modulus: u128,
    a: i64,
    u: u64,
    ramified: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadElement {
    pub re: u128,
    pub im: u128,
}

impl QuadraticField {
    pub fn new(ell: u64, a: i64, precision: u32) -> Result<Self> {
        let modulus = check_ell_precision(ell, precision)?;
        let u = least_nonresidue(ell);
        let ell_i = ell as i64;
        let ramified = if a == u as i64 {
            false
        } else if a == ell_i || a == ell_i * u as i64 {
            true
        } else {
            return Err(Error::Backend(format!(
                "a = {} is not one of u, ell, u*ell",
                a
            )));
        };
        Ok(Self {
            ell,
            precision,
            modulus,
            a,
            u,
            ramified,
        })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn u(&self) -> u64 {
        self.u
    }

    pub fn is_ramified(&self) -> bool {
        self.ramified
    }

    /// Size of the residue field.
    pub fn residue_size(&self) -> u64 {
        if self.ramified {
            self.ell
        } else {
            self.ell * self.ell
        }
    }

    fn reduce(&self, x: i128) -> u128 {
        x.rem_euclid(self.modulus as i128) as u128
    }

    pub fn from_int(&self, x: i64) -> QuadElement {
        QuadElement {
            re: self.reduce(x as i128),
            im: 0,
        }
    }

    pub fn element(&self, re: i64, im: i64) -> QuadElement {
        QuadElement {
            re: self.reduce(re as i128),
            im: self.reduce(im as i128),
        }
    }

    pub fn sqrt_a(&self) -> QuadElement {
        self.element(0, 1)
    }

    pub fn mul(&self, x: &QuadElement, y: &QuadElement) -> QuadElement {
        let m = self.modulus;
        let a = self.reduce(self.a as i128);
        QuadElement {
            re: (x.re * y.re % m + a * (x.im * y.im % m) % m) % m,
            im: (x.re * y.im % m + x.im * y.re % m) % m,
        }
    }

    pub fn conj(&self, x: &QuadElement) -> QuadElement {
        QuadElement {
            re: x.re,
            im: (self.modulus - x.im) % self.modulus,
        }
    }

    pub fn neg(&self, x: &QuadElement) -> QuadElement {
        QuadElement {
            re: (self.modulus - x.re) % self.modulus,
            im: (self.modulus - x.im) % self.modulus,
        }
    }

    /// `re^2 - a im^2` mod `ell^k`.
    pub fn norm(&self, x: &QuadElement) -> u128 {
        let m = self.modulus;
        let a = self.reduce(self.a as i128);
        (x.re * x.re % m + m - a * (x.im * x.im % m) % m) % m
    }

    pub fn norm_element(&self, x: &QuadElement) -> Result<LocalFieldElement> {
        LocalFieldElement::from_residue(self.norm(x), self.ell, self.precision)
    }

    fn vl(&self, x: u128) -> Option<u32> {
        if x == 0 {
            return None;
        }
        let mut v = 0;
        let mut y = x;
        while y % self.ell as u128 == 0 {
            y /= self.ell as u128;
            v += 1;
        }
        Some(v)
    }

    fn residue_mod_ell(&self, x: u128) -> u64 {
        (x % self.ell as u128) as u64
    }

    /// Normalized valuation in `E` and the residue of the unit part with
    /// respect to the uniformizer `ell` (unramified) or `sqrt(a)` (ramified).
    pub fn decompose(&self, x: &QuadElement) -> Result<(u32, Residue)> {
        let ell = self.ell as u128;
        let (vr, vi) = (self.vl(x.re), self.vl(x.im));
        if vr.is_none() && vi.is_none() {
            return Err(Error::RaisePrecision(self.precision));
        }
        if !self.ramified {
            let w = vr.unwrap_or(u32::MAX).min(vi.unwrap_or(u32::MAX));
            let scale = ell.pow(w);
            return Ok((
                w,
                Residue {
                    x: self.residue_mod_ell(x.re / scale),
                    y: self.residue_mod_ell(x.im / scale),
                },
            ));
        }
        // a = ell c; x / a^m has residue (coefficient / ell^m) / c^m
        let c = (self.a / self.ell as i64) as u64;
        let even = vr.map(|v| 2 * v).unwrap_or(u32::MAX);
        let odd = vi.map(|v| 2 * v + 1).unwrap_or(u32::MAX);
        let w = even.min(odd);
        let m = w / 2;
        let coefficient = if w % 2 == 0 { x.re } else { x.im };
        let scaled = self.residue_mod_ell(coefficient / ell.pow(m));
        let c_m = mod_pow(c as u128, m as u128, ell) as u64;
        let c_inv = mod_pow(c_m as u128, ell - 2, ell) as u64;
        Ok((
            w,
            Residue {
                x: (scaled as u128 * c_inv as u128 % ell) as u64,
                y: 0,
            },
        ))
    }

    pub fn residue_mul(&self, a: Residue, b: Residue) -> Residue {
        let l = self.ell as u128;
        let (ax, ay, bx, by) = (a.x as u128, a.y as u128, b.x as u128, b.y as u128);
        Residue {
            x: ((ax * bx + self.u as u128 * (ay * by % l)) % l) as u64,
            y: ((ax * by + ay * bx) % l) as u64,
        }
    }

    pub fn residue_pow(&self, a: Residue, mut e: u64) -> Residue {
        let mut result = Residue { x: 1, y: 0 };
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.residue_mul(result, base);
            }
            base = self.residue_mul(base, base);
            e >>= 1;
        }
        result
    }

    pub fn residue_inv(&self, a: Residue) -> Residue {
        self.residue_pow(a, self.residue_size() - 2)
    }

    pub fn residue_is_square(&self, a: Residue) -> bool {
        self.residue_pow(a, (self.residue_size() - 1) / 2) == Residue { x: 1, y: 0 }
    }

    /// A unit of `E` whose residue is not a square.
    pub fn nonsquare_unit(&self) -> QuadElement {
        if self.ramified {
            return self.from_int(self.u as i64);
        }
        for re in 0..self.ell as i64 {
            let candidate = self.element(re, 1);
            let r = Residue {
                x: re as u64,
                y: 1,
            };
            if !self.residue_is_square(r) {
                return candidate;
            }
        }
        unreachable!("F_ell^2 has non-squares of the form x + t")
    }

    /// Coordinates in `E*/E*^2` with respect to `{nonsquare unit, uniformizer}`.
    pub fn square_class(&self, x: &QuadElement) -> Result<[u32; 2]> {
        let (w, r) = self.decompose(x)?;
        Ok([u32::from(!self.residue_is_square(r)), w % 2])
    }

    /// Tame symbol on `E`: `[(-1)^(vw) x0^w / y0^v]^((Q-1)/2)` for
    /// `x = pi^v x0`, `y = pi^w y0`.
    pub fn symbol(&self, x: &QuadElement, y: &QuadElement) -> Result<i8> {
        let (v, rx) = self.decompose(x)?;
        let (w, ry) = self.decompose(y)?;
        let mut t = self.residue_mul(
            self.residue_pow(rx, w as u64),
            self.residue_pow(self.residue_inv(ry), v as u64),
        );
        if (v as u64 * w as u64) % 2 == 1 {
            let minus_one = Residue {
                x: self.ell - 1,
                y: 0,
            };
            t = self.residue_mul(t, minus_one);
        }
        Ok(if self.residue_is_square(t) { 1 } else { -1 })
    }
}
