//! Arithmetic in GF(2^k) for 1 <= k <= 16.
//!
//! Elements are bit vectors in the polynomial basis modulo a fixed primitive
//! polynomial per degree, so `t` generates the multiplicative group and
//! multiplication goes through log/antilog tables built once per degree.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const MAX_DEGREE: u8 = 16;

/// One primitive modulus per degree, bit `i` is the coefficient of `t^i`.
const MODULI: [u32; 17] = [
    0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443,
    0x8003, 0x1100B,
];

/// A field element: polynomial-basis coefficients packed into the low `k` bits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub u16);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl fmt::LowerHex for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

struct Tables {
    exp: Vec<u16>,
    log: Vec<u32>,
}

static TABLES: [OnceLock<Tables>; 17] = [const { OnceLock::new() }; 17];

fn clmul_reduce(mut a: u32, mut b: u32, k: u8, modulus: u32) -> u32 {
    let mut acc = 0u32;
    let top = 1u32 << k;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= modulus;
        }
    }
    acc
}

fn build_tables(k: u8) -> Tables {
    let modulus = MODULI[k as usize];
    let order = (1usize << k) - 1;
    let mut exp = vec![0u16; 2 * order.max(1)];
    let mut log = vec![0u32; order + 1];
    // t reduced mod the modulus; for k = 1 that is 1.
    let generator = clmul_reduce(1, 2, k, modulus);
    let mut cur = 1u32;
    for i in 0..order {
        exp[i] = cur as u16;
        assert!(
            i == 0 || cur != 1,
            "modulus {modulus:#x} for degree {k} is not primitive"
        );
        log[cur as usize] = i as u32;
        cur = clmul_reduce(cur, generator, k, modulus);
    }
    assert_eq!(cur, 1, "generator order mismatch for degree {k}");
    for i in order..2 * order {
        exp[i] = exp[i - order];
    }
    Tables { exp, log }
}

/// The field GF(2^k) with its canonical modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    k: u8,
}

impl Field {
    pub fn new(k: u8) -> Result<Field> {
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::DegreeLimit {
                requested: k as u32,
            });
        }
        Ok(Field { k })
    }

    /// GF(2^k) for a degree known to be valid.
    pub fn gf(k: u8) -> Field {
        Field::new(k).expect("field degree must be in 1..=16")
    }

    pub fn degree(&self) -> u8 {
        self.k
    }

    pub fn modulus(&self) -> u32 {
        MODULI[self.k as usize]
    }

    pub fn size(&self) -> usize {
        1usize << self.k
    }

    pub fn name(&self) -> String {
        format!("gf2_{}", self.k)
    }

    /// Parses `gf2_k`.
    pub fn from_name(name: &str) -> Result<Field> {
        let rest = name.trim().strip_prefix("gf2_").ok_or(Error::Syntax {
            line: 1,
            col: 1,
            msg: format!("expected field name gf2_<k>, found {name:?}"),
        })?;
        let k: u8 = rest.parse().map_err(|_| Error::Syntax {
            line: 1,
            col: 5,
            msg: format!("bad field degree {rest:?}"),
        })?;
        Field::new(k)
    }

    fn tables(&self) -> &'static Tables {
        TABLES[self.k as usize].get_or_init(|| build_tables(self.k))
    }

    /// All elements in increasing bit order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.size() as u32).map(|b| Fe(b as u16))
    }

    pub fn contains(&self, a: Fe) -> bool {
        (a.0 as usize) < self.size()
    }

    /// The class of `t`.
    pub fn generator(&self) -> Fe {
        Fe(self.tables().exp[1])
    }

    pub fn from_bits(&self, bits: u32) -> Result<Fe> {
        if (bits as usize) < self.size() {
            Ok(Fe(bits as u16))
        } else {
            Err(Error::IndexOutOfRange {
                index: bits as usize,
                limit: self.size(),
            })
        }
    }

    /// Parses a hex literal such as `0x3`; a bare `0` or `1` is accepted too.
    pub fn parse_hex(&self, s: &str) -> Result<Fe> {
        let s = s.trim();
        let digits = s
            .strip_prefix("0x")
            .or_else(|| s.strip_prefix("0X"))
            .unwrap_or(s);
        let bits = u32::from_str_radix(digits, 16).map_err(|_| Error::Syntax {
            line: 1,
            col: 1,
            msg: format!("bad hex scalar {s:?}"),
        })?;
        self.from_bits(bits)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let t = self.tables();
        Fe(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivideByZero);
        }
        let t = self.tables();
        let order = self.size() as u32 - 1;
        let l = t.log[a.0 as usize];
        Ok(Fe(t.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Square root, `a^(2^(k-1))`; Frobenius is a bijection on GF(2^k).
    pub fn sqrt(&self, a: Fe) -> Fe {
        let mut r = a;
        for _ in 1..self.k {
            r = self.square(r);
        }
        r
    }

    /// Inverse of the `t`-fold Frobenius, `a^(1/2^t)`.
    pub fn frobenius_inv(&self, a: Fe, times: u32) -> Fe {
        let mut r = a;
        for _ in 0..times {
            r = self.sqrt(r);
        }
        r
    }

    /// Roots of `a t^2 + b t + c` by exhaustive scan.
    ///
    /// Returns `NeedsExtension` when a genuine quadratic has no root here.
    pub fn quad_roots(&self, a: Fe, b: Fe, c: Fe) -> Result<Vec<Fe>> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::Degenerate("quadratic with a = b = 0"));
        }
        if a.is_zero() {
            return Ok(vec![self.div(c, b)?]);
        }
        let roots: Vec<Fe> = self
            .elements()
            .filter(|&r| {
                let v = self.add(self.mul(a, self.square(r)), self.add(self.mul(b, r), c));
                v.is_zero()
            })
            .collect();
        if roots.is_empty() {
            Err(Error::NeedsExtension { k: self.k })
        } else {
            Ok(roots)
        }
    }

    /// The degree-2k field together with the canonical embedding of this one.
    pub fn extend(&self) -> Result<FieldEmbedding> {
        let big_k = 2 * self.k as u32;
        if big_k > MAX_DEGREE as u32 {
            return Err(Error::DegreeLimit { requested: big_k });
        }
        let big = Field::gf(big_k as u8);
        FieldEmbedding::new(*self, big)
    }
}

/// Injective ring homomorphism GF(2^k) -> GF(2^K), `t` sent to a root of the
/// small modulus found by scanning the large field.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    pub small: Field,
    pub big: Field,
    root: Fe,
    powers: Vec<Fe>,
}

impl FieldEmbedding {
    pub fn new(small: Field, big: Field) -> Result<FieldEmbedding> {
        if !big.degree().is_multiple_of(small.degree()) {
            return Err(Error::DegreeLimit {
                requested: big.degree() as u32,
            });
        }
        let modulus = small.modulus();
        let k = small.degree() as u32;
        let eval = |r: Fe| {
            let mut acc = Fe::ZERO;
            for i in (0..=k).rev() {
                acc = big.mul(acc, r);
                if (modulus >> i) & 1 == 1 {
                    acc = big.add(acc, Fe::ONE);
                }
            }
            acc
        };
        let root = big
            .elements()
            .find(|&r| eval(r).is_zero())
            .ok_or(Error::NeedsExtension { k: small.degree() })?;
        let mut powers = Vec::with_capacity(k as usize);
        let mut p = Fe::ONE;
        for _ in 0..k {
            powers.push(p);
            p = big.mul(p, root);
        }
        Ok(FieldEmbedding {
            small,
            big,
            root,
            powers,
        })
    }

    pub fn root(&self) -> Fe {
        self.root
    }

    pub fn embed(&self, a: Fe) -> Fe {
        let mut acc = Fe::ZERO;
        for (i, &p) in self.powers.iter().enumerate() {
            if (a.0 >> i) & 1 == 1 {
                acc = self.big.add(acc, p);
            }
        }
        acc
    }

    pub fn embed_vec(&self, v: &[Fe]) -> Vec<Fe> {
        v.iter().map(|&a| self.embed(a)).collect()
    }
}

/// Irreducibility over GF(2) by trial division with all polynomials of degree
/// at most half the input degree.
pub fn is_irreducible_gf2(poly: u32) -> bool {
    let deg = 31 - poly.leading_zeros();
    if deg == 0 {
        return false;
    }
    for cand in 2u32..(1u32 << (deg / 2 + 1)) {
        let cdeg = 31 - cand.leading_zeros();
        if cdeg == 0 || cdeg > deg / 2 {
            continue;
        }
        let mut r = poly;
        while r != 0 && 31 - r.leading_zeros() >= cdeg {
            let shift = (31 - r.leading_zeros()) - cdeg;
            r ^= cand << shift;
        }
        if r == 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli_are_irreducible_with_right_degree() {
        for k in 1..=16u8 {
            let m = Field::gf(k).modulus();
            assert_eq!(31 - m.leading_zeros(), k as u32);
            assert!(is_irreducible_gf2(m), "degree {k}");
        }
    }

    #[test]
    fn gf4_generator_squares_to_g_plus_one() {
        let f = Field::gf(2);
        let g = f.generator();
        assert_eq!(g, Fe(0x2));
        assert_eq!(f.mul(g, g), Fe(0x3));
        assert_eq!(f.sqrt(Fe(0x3)), g);
    }

    #[test]
    fn add_is_self_inverse_and_inv_one() {
        let f = Field::gf(8);
        for a in f.elements() {
            assert_eq!(f.add(a, a), Fe::ZERO);
        }
        assert_eq!(f.inv(Fe::ONE).unwrap(), Fe::ONE);
        assert_eq!(f.inv(Fe::ZERO), Err(Error::DivideByZero));
        assert_eq!(f.div(Fe(3), Fe::ZERO), Err(Error::DivideByZero));
    }

    #[test]
    fn multiplication_matches_schoolbook() {
        for k in [1u8, 3, 8, 13] {
            let f = Field::gf(k);
            for a in (0..f.size() as u32).step_by(7) {
                for b in (0..f.size() as u32).step_by(11) {
                    let expect = clmul_reduce(a, b, k, f.modulus());
                    assert_eq!(f.mul(Fe(a as u16), Fe(b as u16)), Fe(expect as u16));
                }
            }
        }
    }

    #[test]
    fn quad_roots_cases() {
        let f2 = Field::gf(2);
        assert_eq!(
            f2.quad_roots(Fe(1), Fe(1), Fe(0)).unwrap(),
            vec![Fe(0), Fe(1)]
        );
        assert_eq!(f2.quad_roots(Fe(0), Fe(1), Fe(3)).unwrap(), vec![Fe(3)]);
        let f1 = Field::gf(1);
        assert_eq!(
            f1.quad_roots(Fe(1), Fe(1), Fe(1)),
            Err(Error::NeedsExtension { k: 1 })
        );
        assert!(f1.quad_roots(Fe(0), Fe(0), Fe(1)).is_err());
    }

    #[test]
    fn embedding_is_unital_and_multiplicative() {
        let f = Field::gf(2);
        let e = f.extend().unwrap();
        assert_eq!(e.big.degree(), 4);
        assert_eq!(e.embed(Fe::ZERO), Fe::ZERO);
        assert_eq!(e.embed(Fe::ONE), Fe::ONE);
        let g = f.generator();
        let eg = e.embed(g);
        assert_eq!(e.big.mul(eg, eg), e.embed(f.add(g, Fe::ONE)));
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(e.embed(f.mul(a, b)), e.big.mul(e.embed(a), e.embed(b)));
            }
        }
        assert!(Field::gf(9).extend().is_err());
    }

    #[test]
    fn parse_and_names() {
        let f = Field::from_name("gf2_8").unwrap();
        assert_eq!(f.degree(), 8);
        assert_eq!(f.parse_hex("0x1d").unwrap(), Fe(0x1d));
        assert!(f.parse_hex("0x100").is_err());
        assert!(Field::from_name("gf3_2").is_err());
        assert!(Field::new(17).is_err());
    }
}
