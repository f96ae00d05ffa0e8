//! Univariate polynomials over GF(2^k), just enough for minimal polynomials
//! and root splitting.

use super::field::{Fe, Field};
use super::linalg::Matrix;
use crate::error::Result;

/// Coefficients low degree first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Fe>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Fe>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> UniPoly {
        UniPoly {
            coeffs: vec![Fe::ONE],
        }
    }

    /// `t - r` (equal to `t + r` here).
    pub fn linear(r: Fe) -> UniPoly {
        UniPoly::new(vec![r, Fe::ONE])
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn eval(&self, f: &Field, x: Fe) -> Fe {
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, f: &Field, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &UniPoly, i: usize| p.coeffs.get(i).copied().unwrap_or(Fe::ZERO);
        UniPoly::new((0..n).map(|i| f.add(get(self, i), get(other, i))).collect())
    }

    pub fn mul(&self, f: &Field, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        UniPoly::new(out)
    }

    pub fn monic(&self, f: &Field) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let inv = f.inv(self.leading()).expect("nonzero leading coefficient");
        UniPoly::new(self.coeffs.iter().map(|&c| f.mul(c, inv)).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, f: &Field, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(divisor.leading()).expect("nonzero leading");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Fe::ZERO; self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let top = *rem.last().unwrap();
            let shift = rem.len() - 1 - dd;
            if !top.is_zero() {
                let c = f.mul(top, lead_inv);
                quot[shift] = f.add(quot[shift], c);
                for (i, &dc) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] = f.add(rem[shift + i], f.mul(c, dc));
                }
            }
            rem.pop();
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Formal derivative; even-degree terms vanish in characteristic 2.
    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| if i % 2 == 1 { c } else { Fe::ZERO })
                .collect(),
        )
    }
}

/// Monic gcd.
pub fn poly_gcd(f: &Field, a: &UniPoly, b: &UniPoly) -> UniPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = x.div_rem(f, &y);
        x = y;
        y = r;
    }
    x.monic(f)
}

/// Product of the distinct monic irreducible factors.
pub fn squarefree_part(f: &Field, p: &UniPoly) -> UniPoly {
    match p.degree() {
        None => return UniPoly::zero(),
        Some(0) => return UniPoly::one(),
        _ => {}
    }
    let dp = p.derivative();
    if dp.is_zero() {
        // p(t) = q(t)^2 with q's coefficients the square roots of the even ones.
        let q = UniPoly::new(p.coeffs.iter().step_by(2).map(|&c| f.sqrt(c)).collect());
        return squarefree_part(f, &q);
    }
    let g = poly_gcd(f, p, &dp);
    let (w, _) = p.div_rem(f, &g);
    let w = w.monic(f);
    let rg = squarefree_part(f, &g);
    // lcm(w, rad(g))
    let common = poly_gcd(f, &w, &rg);
    let (rest, _) = rg.div_rem(f, &common);
    w.mul(f, &rest).monic(f)
}

/// Distinct roots by exhaustive scan, in increasing bit order.
pub fn poly_roots(f: &Field, p: &UniPoly) -> Vec<Fe> {
    if p.is_zero() {
        return f.elements().collect();
    }
    f.elements().filter(|&x| p.eval(f, x).is_zero()).collect()
}

/// Monic least-degree annihilator of a square matrix, found from the first
/// linear dependence among `I, M, M^2, ...`.
pub fn min_poly(m: &Matrix) -> Result<UniPoly> {
    let f = m.field();
    let n = m.rows();
    m.require_square()?;
    let mut powers: Vec<Vec<Fe>> = Vec::new();
    let mut cur = Matrix::identity(f, n);
    loop {
        powers.push(cur.data().to_vec());
        // Columns are the flattened powers; a nullspace vector gives a relation.
        let stacked = Matrix::from_columns(f, n * n, &powers);
        let null = stacked.nullspace();
        if let Some(rel) = null.first() {
            let d = powers.len() - 1;
            debug_assert!(!rel[d].is_zero());
            return Ok(UniPoly::new(rel.to_vec()).monic(&f));
        }
        cur = cur.mul(m)?;
    }
}
