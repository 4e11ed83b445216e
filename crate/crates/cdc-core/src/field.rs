//! Finite field arithmetic.
//!
//! A [`FieldSpec`] describes F_{p^e} for a prime `p`: its elements are the
//! canonical integers in `[0, q)` obtained by packing the polynomial-basis
//! coordinates base `p`. For `e = 1` arithmetic is plain arithmetic mod `p`;
//! for `e > 1` it is polynomial arithmetic modulo a fixed irreducible
//! polynomial. The modulus is always the monic irreducible polynomial of
//! degree `e` with the smallest packed encoding, so two runs (or two
//! machines) agree on every element representation.
//!
//! An [`ExtensionField`] layers F_{q^m} on top of a base field F_q the same
//! way: elements are integers in `[0, q^m)` packing `m` base-field
//! coordinates base `q`, multiplication reduces modulo the smallest monic
//! irreducible of degree `m` over F_q. The coordinate map
//! [`ExtensionField::coords`] is the bijection used to expand extension
//! elements into columns over the base field.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported base field size q = p^e.
pub const FIELD_SIZE_CAP: u64 = 1 << 16;
/// Largest supported extension size q^m.
pub const EXTENSION_SIZE_CAP: u64 = 1 << 32;

/// A concrete finite field F_{p^e} with a fixed modulus polynomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
    e: u32,
    q: u64,
    /// Coefficients of the modulus, ascending degree, length `e + 1`, leading 1.
    /// For `e = 1` this is the trivial polynomial x.
    modulus: Vec<u64>,
}

impl FieldSpec {
    /// The field F_{p^e} with the default size cap.
    pub fn new(p: u64, e: u32) -> Result<Self> {
        Self::with_cap(p, e, FIELD_SIZE_CAP)
    }

    /// The field F_{p^e}, rejecting sizes above `cap`.
    pub fn with_cap(p: u64, e: u32, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::invalid("field exponent must be at least 1"));
        }
        let q = checked_pow(p, e, cap)?;
        if e == 1 {
            return Ok(FieldSpec {
                p,
                e,
                q,
                modulus: vec![0, 1],
            });
        }
        let prime = FieldSpec {
            p,
            e: 1,
            q: p,
            modulus: vec![0, 1],
        };
        let modulus = smallest_irreducible(&prime, e as usize);
        Ok(FieldSpec { p, e, q, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Field size q = p^e.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, ascending degree, leading coefficient 1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    #[inline]
    fn check(&self, a: u64) -> u64 {
        debug_assert!(a < self.q, "element {a} out of range for {self}");
        a
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.check(a);
        self.check(b);
        if self.e == 1 {
            return (a + b) % self.p;
        }
        self.digitwise(a, b, |x, y| (x + y) % self.p)
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        self.check(a);
        if self.e == 1 {
            return (self.p - a) % self.p;
        }
        self.digitwise(a, 0, |x, _| (self.p - x) % self.p)
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.check(a);
        self.check(b);
        if self.e == 1 {
            return (a + self.p - b) % self.p;
        }
        self.digitwise(a, b, |x, y| (x + self.p - y) % self.p)
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.check(a);
        self.check(b);
        if self.e == 1 {
            return (a * b) % self.p;
        }
        self.mul_ext(a, b)
    }

    /// a^exp by square-and-multiply; 0^0 = 1 by convention.
    pub fn pow(&self, a: u64, mut exp: u64) -> u64 {
        let mut base = self.check(a);
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if self.check(a) == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// Polynomial-basis coordinates of `a` over F_p, ascending, length `e`.
    pub fn coords(&self, a: u64) -> Vec<u64> {
        self.check(a);
        unpack(a, self.p, self.e as usize)
    }

    /// Inverse of [`FieldSpec::coords`].
    pub fn from_coords(&self, digits: &[u64]) -> u64 {
        assert_eq!(digits.len(), self.e as usize);
        pack(digits, self.p)
    }

    #[inline]
    fn digitwise(&self, a: u64, b: u64, f: impl Fn(u64, u64) -> u64) -> u64 {
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut shift = 1u64;
        for _ in 0..self.e {
            out += f(a % self.p, b % self.p) * shift;
            shift *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    fn mul_ext(&self, a: u64, b: u64) -> u64 {
        let e = self.e as usize;
        let mut fa = [0u64; 16];
        let mut fb = [0u64; 16];
        unpack_into(a, self.p, &mut fa[..e]);
        unpack_into(b, self.p, &mut fb[..e]);
        let mut conv = [0u64; 31];
        for (i, &x) in fa[..e].iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in fb[..e].iter().enumerate() {
                conv[i + j] = (conv[i + j] + x * y) % self.p;
            }
        }
        // reduce modulo the (monic) modulus
        for idx in (e..2 * e - 1).rev() {
            let c = conv[idx];
            if c != 0 {
                conv[idx] = 0;
                for j in 0..e {
                    let t = (c * self.modulus[j]) % self.p;
                    conv[idx - e + j] = (conv[idx - e + j] + self.p - t) % self.p;
                }
            }
        }
        pack(&conv[..e], self.p)
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.e)
        }
    }
}

/// The extension F_{q^m} of a base field F_q, with the coordinate expansion
/// map between extension elements and length-`m` vectors over the base.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtensionField {
    base: Arc<FieldSpec>,
    degree: u32,
    size: u64,
    /// Modulus over the base field, ascending degree, length `m + 1`, leading 1.
    modulus: Vec<u64>,
}

impl ExtensionField {
    pub fn new(base: &Arc<FieldSpec>, m: u32) -> Result<Self> {
        Self::with_cap(base, m, EXTENSION_SIZE_CAP)
    }

    pub fn with_cap(base: &Arc<FieldSpec>, m: u32, cap: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("extension degree must be at least 1"));
        }
        let size = checked_pow(base.q(), m, cap)?;
        let modulus = smallest_irreducible(base, m as usize);
        Ok(ExtensionField {
            base: Arc::clone(base),
            degree: m,
            size,
            modulus,
        })
    }

    pub fn base(&self) -> &Arc<FieldSpec> {
        &self.base
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Extension size q^m.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The i-th polynomial-basis element (the class of x^i), `i < m`.
    pub fn basis_element(&self, i: u32) -> u64 {
        assert!(i < self.degree);
        self.base.q().pow(i)
    }

    /// Base-field coordinates of `a`, ascending basis order, length `m`.
    pub fn coords(&self, a: u64) -> Vec<u64> {
        debug_assert!(a < self.size);
        unpack(a, self.base.q(), self.degree as usize)
    }

    /// Inverse of [`ExtensionField::coords`].
    pub fn from_coords(&self, digits: &[u64]) -> u64 {
        assert_eq!(digits.len(), self.degree as usize);
        pack(digits, self.base.q())
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.digitwise(a, b, |x, y| self.base.add(x, y))
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.digitwise(a, b, |x, y| self.base.sub(x, y))
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        self.digitwise(a, 0, |x, _| self.base.neg(x))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.size && b < self.size);
        let m = self.degree as usize;
        let q = self.base.q();
        let mut fa = [0u64; 32];
        let mut fb = [0u64; 32];
        unpack_into(a, q, &mut fa[..m]);
        unpack_into(b, q, &mut fb[..m]);
        let mut conv = [0u64; 63];
        for (i, &x) in fa[..m].iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in fb[..m].iter().enumerate() {
                if y != 0 {
                    conv[i + j] = self.base.add(conv[i + j], self.base.mul(x, y));
                }
            }
        }
        if m > 1 {
            for idx in (m..2 * m - 1).rev() {
                let c = conv[idx];
                if c != 0 {
                    conv[idx] = 0;
                    for j in 0..m {
                        if self.modulus[j] != 0 {
                            let t = self.base.mul(c, self.modulus[j]);
                            conv[idx - m + j] = self.base.sub(conv[idx - m + j], t);
                        }
                    }
                }
            }
        } else {
            // degree-1 extension: reduce x ≡ -modulus[0]
            let c = conv[1];
            conv[1] = 0;
            conv[0] = self
                .base
                .sub(conv[0], self.base.mul(c, self.modulus[0]));
        }
        pack(&conv[..m], q)
    }

    pub fn pow(&self, a: u64, mut exp: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// a^q, the Frobenius of the base field.
    pub fn frobenius(&self, a: u64) -> u64 {
        self.pow(a, self.base.q())
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.size - 2))
    }

    #[inline]
    fn digitwise(&self, a: u64, b: u64, f: impl Fn(u64, u64) -> u64) -> u64 {
        debug_assert!(a < self.size && b < self.size);
        let q = self.base.q();
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut shift = 1u64;
        for _ in 0..self.degree {
            out += f(a % q, b % q) * shift;
            shift *= q;
            a /= q;
            b /= q;
        }
        out
    }
}

impl fmt::Debug for ExtensionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.base, self.degree)
    }
}

/// Decompose a prime power q = p^e; fails if q is not a prime power.
pub fn prime_power_decompose(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::invalid(format!("{q} is not a prime power")));
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > q {
        return Ok((q, 1)); // q itself is prime
    }
    let mut rest = q;
    let mut e = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(Error::invalid(format!("{q} is not a prime power")));
    }
    Ok((p, e))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_pow(base: u64, exp: u32, cap: u64) -> Result<u64> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc *= base as u128;
        if acc > cap as u128 {
            return Err(Error::FieldTooLarge { size: acc, cap });
        }
    }
    Ok(acc as u64)
}

#[inline]
fn unpack_into(mut x: u64, radix: u64, out: &mut [u64]) {
    for slot in out.iter_mut() {
        *slot = x % radix;
        x /= radix;
    }
}

fn unpack(x: u64, radix: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    unpack_into(x, radix, &mut out);
    out
}

fn pack(digits: &[u64], radix: u64) -> u64 {
    let mut out = 0u64;
    for &d in digits.iter().rev() {
        out = out * radix + d;
    }
    out
}

/// Remainder of `f` modulo the monic polynomial `g`; coefficients live in `field`.
fn poly_rem_monic(field: &FieldSpec, f: &[u64], g: &[u64]) -> Vec<u64> {
    let dg = g.len() - 1;
    debug_assert_eq!(g[dg], 1);
    let mut r = f.to_vec();
    for df in (dg..r.len()).rev() {
        let lead = r[df];
        if lead != 0 {
            let shift = df - dg;
            for (j, &gj) in g.iter().enumerate().take(dg) {
                if gj != 0 {
                    let t = field.mul(lead, gj);
                    r[shift + j] = field.sub(r[shift + j], t);
                }
            }
            r[df] = 0;
        }
    }
    r.truncate(dg);
    r
}

/// Trial division irreducibility test: `f` (monic, degree >= 1) has no monic
/// divisor of degree between 1 and deg(f)/2.
fn is_irreducible(field: &FieldSpec, f: &[u64]) -> bool {
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    let q = field.q();
    for dg in 1..=deg / 2 {
        let count = q.pow(dg as u32);
        for packed in 0..count {
            let mut g = unpack(packed, q, dg);
            g.push(1);
            if poly_rem_monic(field, f, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible polynomial of degree `deg` over `field` with the
/// smallest packed coefficient encoding. Deterministic by construction.
fn smallest_irreducible(field: &FieldSpec, deg: usize) -> Vec<u64> {
    let q = field.q();
    let mut packed = 0u64;
    loop {
        let mut f = unpack(packed, q, deg);
        f.push(1);
        if is_irreducible(field, &f) {
            return f;
        }
        packed += 1;
        assert!(
            packed < q.saturating_pow(deg as u32),
            "no irreducible polynomial of degree {deg} found"
        );
    }
}
