//! The seven-dimensional noncommutative d-algebras `D(h,k,p)` and explicit
//! isomorphisms bringing any noncommutative seven-dimensional d-algebra to
//! `D(0,0,0)`.

use std::sync::Arc;

use crate::dalgebra::{Algebra, AxiomReport, Morphism};
use crate::error::{Error, Result};
use crate::ground::linalg::{is_zero_vec, vec_axpy};
use crate::ground::{Fe, Field, FieldEmbedding, Frame};
use crate::polyd::{quotient_to_dalgebra, PElem, PolyRing, Presentation, QuotientAlgebra};

pub use crate::dalgebra::verify_morphism;

/// `P(2,0)/(x₁² + hξ₁ξ₂, x₂² + kξ₁ξ₂, x₁x₂ + pξ₁ξ₂, ξ₁x₁, ξ₂x₂, ξ₁x₂ + ξ₂x₁)` at degree bound 4.
pub fn d_presentation(f: Field, h: Fe, k: Fe, p: Fe) -> Presentation {
    let ring = PolyRing::new(f, 2, 0).expect("two generators");
    let (x1, x2, xi1, xi2) = (ring.x(0), ring.x(1), ring.xi(0), ring.xi(1));
    let xi12 = ring.mul(&xi1, &xi2);
    let rels = vec![
        ring.mul(&x1, &x1).add(&f, &xi12.scale(&f, h)),
        ring.mul(&x2, &x2).add(&f, &xi12.scale(&f, k)),
        ring.mul(&x1, &x2).add(&f, &xi12.scale(&f, p)),
        ring.mul(&xi1, &x1),
        ring.mul(&xi2, &x2),
        ring.mul(&xi1, &x2).add(&f, &ring.mul(&xi2, &x1)),
    ];
    Presentation::new(ring, rels, 4).expect("nonzero relations")
}

pub fn make_d_quotient(f: Field, h: Fe, k: Fe, p: Fe) -> Result<QuotientAlgebra> {
    let q = quotient_to_dalgebra(&d_presentation(f, h, k, p))?;
    if q.algebra.dim() != 7 {
        return Err(Error::TheoremViolation(format!(
            "D(h,k,p) has dimension {}",
            q.algebra.dim()
        )));
    }
    Ok(q)
}

/// `D(h,k,p)` with basis `1, ξ₁, ξ₂, x₁, x₂, ξ₁ξ₂, ξ₁x₂`.
pub fn make_d(f: Field, h: Fe, k: Fe, p: Fe) -> Result<Arc<Algebra>> {
    Ok(make_d_quotient(f, h, k, p)?.algebra)
}

/// The homomorphism `D(h,k,p) → target` determined by the images of `x₁, x₂`,
/// checked to be an isomorphism.
pub fn d_morphism(
    f: Field,
    h: Fe,
    k: Fe,
    p: Fe,
    target: Arc<Algebra>,
    x1: Vec<Fe>,
    x2: Vec<Fe>,
) -> Result<Morphism> {
    let q = make_d_quotient(f, h, k, p)?;
    let m = q.hom_to(target, &[x1, x2], &[])?;
    let rep = m.verify();
    if !rep.passed() {
        return Err(Error::TheoremViolation(format!(
            "map out of D(h,k,p) is not an isomorphism: {rep}"
        )));
    }
    Ok(m)
}

/// Products read off in the basis `{1, v₁, v₂, v₃, w₁, w₂, w₃}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableCoefficients {
    pub a3: Fe,
    pub b3: Fe,
    pub g3: Fe,
    pub h3: Fe,
    pub k3: Fe,
    pub p3: Fe,
}

#[derive(Clone, Debug)]
pub struct CanonicalForm7 {
    pub h: Fe,
    pub k: Fe,
    pub p: Fe,
    /// Verified isomorphism `D(h,k,p) → A`.
    pub basis_change: Morphism,
    pub coefficients: TableCoefficients,
    pub witness: (usize, usize),
}

/// Runs the classification: from a noncommuting basis pair builds the basis
/// `{1, v₁, v₂, v₃, w₁, w₂, w₃}`, reads off the multiplication table and
/// returns parameters with an explicit isomorphism `D(h,k,p) → A`.
pub fn classify7(a: &Arc<Algebra>) -> Result<CanonicalForm7> {
    let f = a.field();
    if a.dim() != 7 {
        return Err(Error::NotApplicable(format!(
            "dimension {} is not 7",
            a.dim()
        )));
    }
    let (i, j) = a
        .is_commutative()
        .ok_or_else(|| Error::NotApplicable("algebra is commutative".into()))?;
    let (im, ker) = (a.im_d().dim(), a.ker_d().dim());
    if im != 3 || ker != 4 {
        return Err(Error::TheoremViolation(format!(
            "dim Im(d) = {im}, dim Ker(d) = {ker}"
        )));
    }
    let z1 = a.basis(i);
    let z2 = a.basis(j);
    let v1 = a.apply_d(&z1);
    let v2 = a.apply_d(&z2);
    let v3 = a.mul(&v1, &v2);
    let kframe = Frame::new(f, 7, vec![a.one(), v1.clone(), v2.clone(), v3.clone()])
        .map_err(|_| Error::TheoremViolation("d(a), d(b), d(a)d(b) are dependent".into()))?;
    let shift = |z: &[Fe]| -> Result<Vec<Fe>> {
        let sq = a.mul(z, z);
        let c = kframe
            .coords(&sq)
            .ok_or_else(|| Error::TheoremViolation("square escapes Ker(d)".into()))?;
        let mut w = z.to_vec();
        w[0] = f.add(w[0], f.sqrt(c[0]));
        Ok(w)
    };
    let w1 = shift(&z1)?;
    let w2 = shift(&z2)?;
    let w3 = a.mul(&v1, &w2);
    let basis = vec![
        a.one(),
        v1.clone(),
        v2.clone(),
        v3.clone(),
        w1.clone(),
        w2.clone(),
        w3.clone(),
    ];
    let frame = Frame::new(f, 7, basis.clone())
        .map_err(|_| Error::TheoremViolation("1, v, w do not form a basis".into()))?;
    let coords = |x: &[Fe]| frame.coords(x).expect("frame spans A");
    let at = |x: &[Fe], idx: usize| coords(x)[idx];
    let c = TableCoefficients {
        a3: at(&a.mul(&v1, &w1), 3),
        b3: at(&a.mul(&v2, &w2), 3),
        g3: at(&a.mul(&v2, &w1), 3),
        h3: at(&a.mul(&w1, &w1), 3),
        k3: at(&a.mul(&w2, &w2), 3),
        p3: at(&a.mul(&w1, &w2), 3),
    };
    let table = check_table(a, &basis, &c);
    if !table.passed() {
        return Err(Error::TheoremViolation(format!(
            "multiplication table: {table}"
        )));
    }
    let mut z1p = w1.clone();
    vec_axpy(&f, &mut z1p, c.g3, &v1);
    vec_axpy(&f, &mut z1p, c.a3, &v2);
    let mut z2p = w2.clone();
    vec_axpy(&f, &mut z2p, c.b3, &v1);
    let (h, k, p) = (c.h3, c.k3, f.add(c.p3, f.mul(c.a3, c.b3)));
    let basis_change = d_morphism(f, h, k, p, a.clone(), z1p, z2p)?;
    Ok(CanonicalForm7 {
        h,
        k,
        p,
        basis_change,
        coefficients: c,
        witness: (i, j),
    })
}

/// The multiplication table in the basis `[1, v₁, v₂, v₃, w₁, w₂, w₃]`, with
/// `v₃` and `w₃` annihilating everything but 1 and `w₃` central.
fn check_table(a: &Algebra, b: &[Vec<Fe>], c: &TableCoefficients) -> AxiomReport {
    let f = a.field();
    let mut rep = AxiomReport::new();
    let comb = |terms: &[(Fe, usize)]| {
        let mut out = a.zero();
        for &(s, idx) in terms {
            vec_axpy(&f, &mut out, s, &b[idx]);
        }
        out
    };
    let one = Fe::ONE;
    let (v1, v2, v3, w1, w2, w3) = (1, 2, 3, 4, 5, 6);
    let expect: Vec<((usize, usize), Vec<Fe>)> = vec![
        ((v1, v1), a.zero()),
        ((v2, v2), a.zero()),
        ((v1, v2), comb(&[(one, v3)])),
        ((v2, v1), comb(&[(one, v3)])),
        ((v1, w1), comb(&[(c.a3, v3)])),
        ((v2, w2), comb(&[(c.b3, v3)])),
        ((v1, w2), comb(&[(one, w3)])),
        ((v2, w1), comb(&[(c.g3, v3), (one, w3)])),
        ((w1, w1), comb(&[(c.h3, v3)])),
        ((w2, w2), comb(&[(c.k3, v3)])),
        ((w1, w2), comb(&[(c.p3, v3), (c.g3, w3)])),
        ((w2, w1), comb(&[(f.add(c.p3, one), v3), (c.g3, w3)])),
    ];
    for ((x, y), rhs) in expect {
        rep.check_eq("multiplication table", &[x, y], a.mul(&b[x], &b[y]), rhs);
    }
    for t in [v3, w3] {
        for x in 1..7 {
            let l = a.mul(&b[t], &b[x]);
            let r = a.mul(&b[x], &b[t]);
            if !is_zero_vec(&l) || !is_zero_vec(&r) {
                rep.fail("annihilates all but 1", vec![t, x], l, r);
            }
        }
    }
    rep
}

/// An isomorphism `D(0,0,q) → D(h,k,p)`.
pub fn reduce_to_q(f: Field, h: Fe, k: Fe, p: Fe) -> Result<(Fe, Morphism)> {
    let target = make_d(f, h, k, p)?;
    let (x1, x2) = (target.basis(3), target.basis(4));
    if h.is_zero() && k.is_zero() {
        return Ok((p, Morphism::identity(target)));
    }
    if k.is_zero() {
        // Swapping x₁ and x₂ identifies D(k,h,p+1) with D(h,k,p).
        let swapped = f.add(p, Fe::ONE);
        let swap = d_morphism(f, k, h, swapped, target, x2, x1)?;
        let (q, inner) = reduce_to_q(f, k, h, swapped)?;
        return Ok((q, swap.after(&inner)?));
    }
    let roots = f.quad_roots(k, Fe::ONE, h)?;
    let (alpha, beta) = match roots.as_slice() {
        [a, b] => (*a, *b),
        _ => {
            return Err(Error::TheoremViolation(
                "k t^2 + t + h has a repeated root".into(),
            ))
        }
    };
    let q = f.mul(alpha, k);
    let sp = f.sqrt(p);
    let image = |coef: Fe| {
        let mut u = x1.clone();
        vec_axpy(&f, &mut u, coef, &x2);
        let du = target.apply_d(&u);
        vec_axpy(&f, &mut u, sp, &du);
        u
    };
    let (i1, i2) = (image(alpha), image(beta));
    let m = d_morphism(f, Fe::ZERO, Fe::ZERO, q, target, i1, i2)?;
    Ok((q, m))
}

/// The isomorphism `D(0,0,0) → D(0,0,q)`, `x_i ↦ √q ξ_i + x_i`.
pub fn kill_q(f: Field, q: Fe) -> Result<Morphism> {
    let target = make_d(f, Fe::ZERO, Fe::ZERO, q)?;
    let sq = f.sqrt(q);
    let image = |x: usize, xi: usize| {
        let mut v = target.basis(x);
        vec_axpy(&f, &mut v, sq, &target.basis(xi));
        v
    };
    let (i1, i2) = (image(3, 1), image(4, 2));
    d_morphism(f, Fe::ZERO, Fe::ZERO, Fe::ZERO, target, i1, i2)
}

#[derive(Clone, Debug)]
pub struct Normalization {
    /// Verified isomorphism from the (possibly base-changed) input onto `D(0,0,0)`.
    pub morphism: Morphism,
    pub form: CanonicalForm7,
    pub q: Fe,
    /// Present when the field had to be doubled to find a root.
    pub extension: Option<FieldEmbedding>,
}

impl Normalization {
    pub fn doublings(&self) -> usize {
        usize::from(self.extension.is_some())
    }
}

fn normalize_over(a: &Arc<Algebra>) -> Result<Normalization> {
    let f = a.field();
    let form = classify7(a)?;
    let (q, reduce) = reduce_to_q(f, form.h, form.k, form.p)?;
    let kill = kill_q(f, q)?;
    let chain = form.basis_change.after(&reduce)?.after(&kill)?;
    let morphism = chain.inverse()?;
    let rep = morphism.verify();
    if !rep.passed() {
        return Err(Error::TheoremViolation(format!(
            "composed isomorphism fails: {rep}"
        )));
    }
    Ok(Normalization {
        morphism,
        form,
        q,
        extension: None,
    })
}

/// `A ≅ D(0,0,0)`, doubling the field once if a quadratic root is missing.
pub fn normalize7(a: &Arc<Algebra>) -> Result<Normalization> {
    match normalize_over(a) {
        Err(Error::NeedsExtension { .. }) => {
            let emb = a.field().extend()?;
            let big = Arc::new(a.embed(&emb)?);
            let mut n = normalize_over(&big)?;
            n.extension = Some(emb);
            Ok(n)
        }
        other => other,
    }
}

/// `D(h,k,p)` as an element-level description, for reports.
pub fn describe_relations(f: Field, h: Fe, k: Fe, p: Fe) -> Vec<PElem> {
    d_presentation(f, h, k, p).relations
}
