//! d-ideals as subspaces of an ambient d-algebra.

use std::sync::Arc;

use crate::dalgebra::{Algebra, AxiomReport, Morphism};
use crate::error::{Error, Result};
use crate::ground::{Fe, Subspace};

#[derive(Clone, Debug)]
pub struct DIdeal<'a> {
    ambient: &'a Algebra,
    space: Subspace,
}

impl PartialEq for DIdeal<'_> {
    fn eq(&self, other: &Self) -> bool {
        same_ambient(self.ambient, other.ambient) && self.space == other.space
    }
}

impl Eq for DIdeal<'_> {}

fn same_ambient(a: &Algebra, b: &Algebra) -> bool {
    std::ptr::eq(a, b) || a == b
}

impl<'a> DIdeal<'a> {
    /// Wraps a subspace after checking it is a two-sided d-ideal.
    pub fn from_subspace(ambient: &'a Algebra, space: Subspace) -> Result<DIdeal<'a>> {
        let ideal = DIdeal { ambient, space };
        if !ideal.verify().passed() {
            return Err(Error::NotDIdeal);
        }
        Ok(ideal)
    }

    pub fn zero(ambient: &'a Algebra) -> DIdeal<'a> {
        DIdeal {
            ambient,
            space: Subspace::zero(ambient.field(), ambient.dim()),
        }
    }

    pub fn whole(ambient: &'a Algebra) -> DIdeal<'a> {
        DIdeal {
            ambient,
            space: Subspace::full(ambient.field(), ambient.dim()),
        }
    }

    /// Least subspace containing `generators` that is stable under left
    /// multiplication and `d`. Right stability is then checked, not imposed.
    pub fn close(ambient: &'a Algebra, generators: &[Vec<Fe>]) -> Result<DIdeal<'a>> {
        let n = ambient.dim();
        let f = ambient.field();
        let mut space = Subspace::span(f, n, generators);
        loop {
            let basis = space.basis();
            let mut grown = basis.clone();
            for v in &basis {
                grown.push(ambient.apply_d(v));
                for i in 1..n {
                    grown.push(ambient.mul(&ambient.basis(i), v));
                }
            }
            let next = Subspace::span(f, n, &grown);
            if next.dim() == space.dim() {
                break;
            }
            space = next;
        }
        for v in space.basis() {
            for i in 1..n {
                let r = ambient.mul(&v, &ambient.basis(i));
                if !space.contains(&r) {
                    return Err(Error::TheoremViolation(format!(
                        "left d-ideal is not a right ideal: {} * {} escapes",
                        ambient.format_vec(&v),
                        ambient.label(i)
                    )));
                }
            }
        }
        Ok(DIdeal { ambient, space })
    }

    pub fn ambient(&self) -> &'a Algebra {
        self.ambient
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.dim() == 0
    }

    pub fn is_whole(&self) -> bool {
        self.space.dim() == self.ambient.dim()
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        self.space.contains(v)
    }

    /// Two-sided and d-closed, checked on the basis.
    pub fn verify(&self) -> AxiomReport {
        let a = self.ambient;
        let mut rep = AxiomReport::new();
        for (k, v) in self.space.basis().iter().enumerate() {
            let dv = a.apply_d(v);
            if !self.space.contains(&dv) {
                rep.fail("closed under d", vec![k], dv, vec![]);
            }
            for i in 0..a.dim() {
                let e = a.basis(i);
                let l = a.mul(&e, v);
                if !self.space.contains(&l) {
                    rep.fail("left ideal", vec![i, k], l, vec![]);
                }
                let r = a.mul(v, &e);
                if !self.space.contains(&r) {
                    rep.fail("right ideal", vec![k, i], r, vec![]);
                }
            }
        }
        rep
    }

    fn compatible(&self, other: &DIdeal<'_>) -> Result<()> {
        if same_ambient(self.ambient, other.ambient) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn sum(&self, other: &DIdeal<'_>) -> Result<DIdeal<'a>> {
        self.compatible(other)?;
        Ok(DIdeal {
            ambient: self.ambient,
            space: self.space.sum(&other.space),
        })
    }

    pub fn intersect(&self, other: &DIdeal<'_>) -> Result<DIdeal<'a>> {
        self.compatible(other)?;
        Ok(DIdeal {
            ambient: self.ambient,
            space: self.space.intersect(&other.space),
        })
    }

    /// Span of all products of basis vectors of `self` and `other`, in that order.
    pub fn product(&self, other: &DIdeal<'_>) -> Result<DIdeal<'a>> {
        self.compatible(other)?;
        let a = self.ambient;
        let mut prods = Vec::with_capacity(self.dim() * other.dim());
        for u in self.space.basis() {
            for v in other.space.basis() {
                prods.push(a.mul(&u, &v));
            }
        }
        Ok(DIdeal {
            ambient: a,
            space: Subspace::span(a.field(), a.dim(), &prods),
        })
    }

    /// `I^m`, with `I^0` the whole algebra.
    pub fn power(&self, m: usize) -> DIdeal<'a> {
        let mut acc = DIdeal::whole(self.ambient);
        for _ in 0..m {
            acc = acc.product(self).expect("same ambient");
        }
        acc
    }

    pub fn is_coprime(&self, other: &DIdeal<'_>) -> Result<bool> {
        Ok(self.sum(other)?.is_whole())
    }

    /// Least `m ≥ 1` with `I^m = 0`, or `None` if the powers stabilize nonzero.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let mut cur = self.clone();
        let mut m = 1;
        loop {
            if cur.is_zero() {
                return Some(m);
            }
            let next = cur.product(self).expect("same ambient");
            if next.dim() == cur.dim() {
                return None;
            }
            cur = next;
            m += 1;
        }
    }

    /// `A/I` with its projection.
    pub fn quotient(&self, ambient: &Arc<Algebra>) -> Result<(Arc<Algebra>, Morphism)> {
        if !same_ambient(ambient, self.ambient) {
            return Err(Error::AmbientMismatch);
        }
        ambient.quotient_by(&self.space)
    }
}
