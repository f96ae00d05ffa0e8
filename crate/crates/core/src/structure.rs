//! Radical, characters, maximal ideals and the decomposition of a
//! finite-dimensional d-algebra into local factors.

use std::sync::Arc;

use crate::dalgebra::{Algebra, AxiomReport, Morphism};
use crate::error::{Error, Result};
use crate::ground::linalg::{is_zero_vec, vec_axpy};
use crate::ground::poly::{min_poly, poly_roots, squarefree_part};
use crate::ground::{Fe, Frame, Matrix, Subspace};
use crate::ideals::DIdeal;

/// Nilpotent elements of a commutative algebra. In characteristic 2 the map
/// `x ↦ x^(2^t)` is Frobenius-semilinear, so with `2^t ≥ dim K` the nilpotents
/// are the inverse-Frobenius image of the kernel of the matrix whose columns
/// are `b_i^(2^t)`.
pub fn nilradical_commutative(k: &Algebra) -> Result<Subspace> {
    if k.is_commutative().is_some() {
        return Err(Error::NotCommutative);
    }
    let n = k.dim();
    let f = k.field();
    let mut t = 0u32;
    while (1usize << t) < n {
        t += 1;
    }
    let cols: Vec<Vec<Fe>> = (0..n)
        .map(|i| {
            let mut v = k.basis(i);
            for _ in 0..t {
                v = k.mul(&v, &v);
            }
            v
        })
        .collect();
    let null = Matrix::from_columns(f, n, &cols).nullspace();
    let basis: Vec<Vec<Fe>> = null
        .iter()
        .map(|c| c.iter().map(|&x| f.frobenius_inv(x, t)).collect())
        .collect();
    Ok(Subspace::span(f, n, &basis))
}

/// Complete set of orthogonal primitive idempotents of a commutative algebra.
pub fn primitive_idempotents(k: &Algebra) -> Result<Vec<Vec<Fe>>> {
    if k.is_commutative().is_some() {
        return Err(Error::NotCommutative);
    }
    let f = k.field();
    let n = k.dim();
    let mut idems = vec![k.one()];
    for b in 0..n {
        let mut next = Vec::with_capacity(idems.len());
        for e in &idems {
            let x = k.mul(e, &k.basis(b));
            let piece: Vec<Vec<Fe>> = (0..n).map(|j| k.mul(e, &k.basis(j))).collect();
            let ek = Subspace::span(f, n, &piece);
            let frame = Frame::new(f, n, ek.basis())?;
            let cols: Vec<Vec<Fe>> = frame
                .vectors()
                .iter()
                .map(|v| frame.coords_unchecked(&k.mul(&x, v)))
                .collect();
            let op = Matrix::from_columns(f, frame.len(), &cols);
            let mp = min_poly(&op)?;
            let roots = poly_roots(&f, &mp);
            if squarefree_part(&f, &mp).degree() != Some(roots.len()) {
                return Err(Error::NonSplit { k: f.degree() });
            }
            if roots.len() < 2 {
                next.push(e.clone());
                continue;
            }
            for (j, &rj) in roots.iter().enumerate() {
                // Lagrange basis polynomial at x, inside eK with unit e.
                let mut u = e.clone();
                for (l, &rl) in roots.iter().enumerate() {
                    if l == j {
                        continue;
                    }
                    let mut factor = x.clone();
                    vec_axpy(&f, &mut factor, rl, e);
                    let scale = f.inv(f.add(rj, rl))?;
                    u = k.scale(scale, &k.mul(&u, &factor));
                }
                next.push(lift_idempotent(k, u));
            }
        }
        idems = next;
    }
    Ok(idems)
}

/// Repeated squaring until the element stops changing.
fn lift_idempotent(k: &Algebra, mut u: Vec<Fe>) -> Vec<Fe> {
    loop {
        let sq = k.mul(&u, &u);
        if sq == u {
            return u;
        }
        u = sq;
    }
}

/// An algebra homomorphism `A → F`, stored by its values on the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub functional: Vec<Fe>,
}

impl Character {
    pub fn eval(&self, a: &Algebra, v: &[Fe]) -> Fe {
        let f = a.field();
        self.functional
            .iter()
            .zip(v)
            .fold(Fe::ZERO, |acc, (&l, &x)| f.add(acc, f.mul(l, x)))
    }

    pub fn kernel(&self, a: &Algebra) -> Subspace {
        Subspace::kernel(&Matrix::from_rows(
            a.field(),
            a.dim(),
            std::slice::from_ref(&self.functional),
        ))
    }

    /// `λ(1) = 1`, multiplicative on basis pairs, `λ ∘ d = 0`.
    pub fn verify(&self, a: &Algebra) -> AxiomReport {
        let f = a.field();
        let mut rep = AxiomReport::new();
        let l = &self.functional;
        rep.check_eq("character unital", &[0], vec![l[0]], vec![Fe::ONE]);
        for i in 0..a.dim() {
            rep.check_eq(
                "character kills d",
                &[i],
                vec![self.eval(a, &a.dmat().column(i))],
                vec![Fe::ZERO],
            );
            for j in 0..a.dim() {
                let lhs = self.eval(a, a.basis_product(i, j));
                rep.check_eq(
                    "character multiplicative",
                    &[i, j],
                    vec![lhs],
                    vec![f.mul(l[i], l[j])],
                );
            }
        }
        rep
    }
}

/// `Ker(d)` as an algebra in its own right, with the unit first.
#[derive(Clone, Debug)]
pub struct CycleAlgebra {
    pub algebra: Algebra,
    /// Columns are the basis of `Ker(d)` in the coordinates of `A`.
    pub inclusion: Matrix,
}

impl CycleAlgebra {
    pub fn new(a: &Algebra) -> Result<CycleAlgebra> {
        let ker = a.ker_d();
        let unit = Subspace::span(a.field(), a.dim(), &[a.one()]);
        let mut vecs = vec![a.one()];
        vecs.extend(unit.extend_basis(&ker));
        let (algebra, inclusion) = a.subalgebra(vecs, None)?;
        Ok(CycleAlgebra { algebra, inclusion })
    }

    pub fn include(&self, v: &[Fe]) -> Vec<Fe> {
        self.inclusion.mul_vec(v).expect("length")
    }
}

/// Residue of `x` at the local factor cut out by `e`: the coefficient of `e`
/// in `x e`, written in `F·e ⊕ rad`.
fn residue(k: &Algebra, rad: &Subspace, e: &[Fe], x: &[Fe]) -> Result<Fe> {
    let mut vecs = vec![e.to_vec()];
    vecs.extend(rad.basis());
    let frame = Frame::new(k.field(), k.dim(), vecs)?;
    let xe = k.mul(x, e);
    let c = frame
        .coords(&xe)
        .ok_or_else(|| Error::TheoremViolation("local factor is not F plus its radical".into()))?;
    Ok(c[0])
}

/// Characters of `A`, one per primitive idempotent of `Ker(d)`, in the same order.
pub fn characters(a: &Algebra) -> Result<Vec<Character>> {
    let cyc = CycleAlgebra::new(a)?;
    let k = &cyc.algebra;
    let f = a.field();
    let rad = nilradical_commutative(k)?;
    let idems = primitive_idempotents(k)?;
    let mut out = Vec::with_capacity(idems.len());
    // Coordinates in K of the squares of A's basis vectors.
    let kframe = Frame::new(
        f,
        a.dim(),
        (0..k.dim()).map(|j| cyc.inclusion.column(j)).collect(),
    )?;
    let squares: Vec<Vec<Fe>> = (0..a.dim())
        .map(|i| {
            let e = a.basis(i);
            let sq = a.mul(&e, &e);
            kframe
                .coords(&sq)
                .ok_or_else(|| Error::TheoremViolation("square escapes Ker(d)".into()))
        })
        .collect::<Result<_>>()?;
    for e in &idems {
        let functional = squares
            .iter()
            .map(|sq| residue(k, &rad, e, sq).map(|c| f.sqrt(c)))
            .collect::<Result<Vec<Fe>>>()?;
        out.push(Character { functional });
    }
    Ok(out)
}

pub fn maximal_ideals(a: &Algebra) -> Result<Vec<DIdeal<'_>>> {
    characters(a)?
        .iter()
        .map(|ch| DIdeal::from_subspace(a, ch.kernel(a)))
        .collect()
}

pub fn jacobson_radical(a: &Algebra) -> Result<DIdeal<'_>> {
    let mut acc = DIdeal::whole(a);
    for m in maximal_ideals(a)? {
        acc = acc.intersect(&m)?;
    }
    Ok(acc)
}

pub fn is_local(a: &Algebra) -> Result<bool> {
    Ok(characters(a)?.len() == 1)
}

/// Checks the maximal-ideal correspondence between `A` and `Ker(d)`: every
/// character is a character, each `M ∩ Ker(d)` is a maximal ideal of `Ker(d)`,
/// the `M` are distinct and contain `Im(d)`.
pub fn check_correspondence(a: &Algebra) -> Result<AxiomReport> {
    let chars = characters(a)?;
    let ker = a.ker_d();
    let im = a.im_d();
    let mut rep = AxiomReport::new();
    let mut seen: Vec<Subspace> = Vec::new();
    for (j, ch) in chars.iter().enumerate() {
        rep.merge(ch.verify(a));
        let m = ch.kernel(a);
        if m.dim() + 1 != a.dim() {
            rep.fail("maximal ideal has codimension 1", vec![j], vec![], vec![]);
        }
        if !m.contains_subspace(&im) {
            rep.fail("Im(d) in maximal ideal", vec![j], vec![], vec![]);
        }
        let mk = m.intersect(&ker);
        if mk.dim() + 1 != ker.dim() {
            rep.fail("M ∩ Ker(d) maximal in Ker(d)", vec![j], vec![], vec![]);
        }
        if seen.contains(&m) {
            rep.fail("maximal ideals distinct", vec![j], vec![], vec![]);
        }
        seen.push(m);
    }
    let cyc = CycleAlgebra::new(a)?;
    let nk = primitive_idempotents(&cyc.algebra)?.len();
    if nk != chars.len() {
        rep.fail(
            "bijection with maximal ideals of Ker(d)",
            vec![nk, chars.len()],
            vec![],
            vec![],
        );
    }
    Ok(rep)
}

#[derive(Clone, Debug)]
pub struct Factor {
    pub algebra: Arc<Algebra>,
    pub projection: Morphism,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub idempotents: Vec<Vec<Fe>>,
    pub factors: Vec<Factor>,
}

impl Decomposition {
    /// Idempotent laws, locality of each factor, homomorphism property of each
    /// projection and bijectivity of their product.
    pub fn verify(&self, a: &Algebra) -> Result<AxiomReport> {
        let f = a.field();
        let mut rep = AxiomReport::new();
        let mut sum = a.zero();
        for (i, ei) in self.idempotents.iter().enumerate() {
            sum = a.add(&sum, ei);
            rep.check_eq("e_i^2 = e_i", &[i], a.mul(ei, ei), ei.clone());
            rep.check_eq("d(e_i) = 0", &[i], a.apply_d(ei), a.zero());
            for (j, ej) in self.idempotents.iter().enumerate() {
                if i != j {
                    rep.check_eq("e_i e_j = 0", &[i, j], a.mul(ei, ej), a.zero());
                }
            }
        }
        rep.check_eq("sum of idempotents is 1", &[], sum, a.one());
        let mut rows = Vec::new();
        for (i, fac) in self.factors.iter().enumerate() {
            if !is_local(&fac.algebra)? {
                rep.fail("factor is local", vec![i], vec![], vec![]);
            }
            let mut sub = fac.projection.verify_hom();
            for fl in &mut sub.failures {
                fl.axiom = format!("projection {i}: {}", fl.axiom);
            }
            rep.merge(sub);
            rows.extend(fac.projection.mat.row_vectors());
        }
        let stacked = Matrix::from_rows(f, a.dim(), &rows);
        if stacked.rows() != a.dim() || stacked.rank() != a.dim() {
            rep.fail(
                "A is isomorphic to the product of factors",
                vec![stacked.rows()],
                vec![],
                vec![],
            );
        }
        Ok(rep)
    }
}

/// `A ≅ e_1 A × ⋯ × e_k A` with each factor local.
pub fn decompose(a: &Arc<Algebra>) -> Result<Decomposition> {
    let cyc = CycleAlgebra::new(a)?;
    let f = a.field();
    let n = a.dim();
    let idempotents: Vec<Vec<Fe>> = primitive_idempotents(&cyc.algebra)?
        .iter()
        .map(|e| cyc.include(e))
        .collect();
    let mut factors = Vec::with_capacity(idempotents.len());
    for e in &idempotents {
        let ea: Vec<Vec<Fe>> = (0..n).map(|j| a.mul(e, &a.basis(j))).collect();
        let span = Subspace::span(f, n, &ea);
        let start = Subspace::span(f, n, std::slice::from_ref(e));
        let mut vecs = vec![e.clone()];
        vecs.extend(start.extend_basis(&span));
        let (fac, _) = a.subalgebra(vecs.clone(), None)?;
        let frame = Frame::new(f, n, vecs)?;
        let cols: Vec<Vec<Fe>> = ea.iter().map(|v| frame.coords_unchecked(v)).collect();
        let fac = Arc::new(fac);
        let projection = Morphism::new(
            a.clone(),
            fac.clone(),
            Matrix::from_columns(f, fac.dim(), &cols),
        )?;
        factors.push(Factor {
            algebra: fac,
            projection,
        });
    }
    if factors.len() > a.defect() {
        return Err(Error::TheoremViolation(format!(
            "{} local factors exceed defect {}",
            factors.len(),
            a.defect()
        )));
    }
    Ok(Decomposition {
        idempotents,
        factors,
    })
}

/// Basis `{1, v_1..v_f, w_1..w_f}` of a defect-one algebra with `v_i` spanning
/// `Im(d)`, `d(w_i) = v_i`, `v_i² = 0` and `w_i⁴ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectOneBasis {
    pub v: Vec<Vec<Fe>>,
    pub w: Vec<Vec<Fe>>,
}

impl DefectOneBasis {
    /// `[1, v.., w..]` as columns.
    pub fn matrix(&self, a: &Algebra) -> Matrix {
        let mut cols = vec![a.one()];
        cols.extend(self.v.iter().cloned());
        cols.extend(self.w.iter().cloned());
        Matrix::from_columns(a.field(), a.dim(), &cols)
    }
}

/// Shifts each `z_i` by `√a₀`, where `a₀` is the coefficient of 1 in `z_i²`
/// written in the basis `{1, v_1..v_f}` of `Ker(d)`.
pub fn defect_one_basis_from(a: &Algebra, z: &[Vec<Fe>]) -> Result<DefectOneBasis> {
    let f = a.field();
    let defect = a.defect();
    if defect != 1 {
        return Err(Error::WrongDefect(defect));
    }
    let v: Vec<Vec<Fe>> = z.iter().map(|zi| a.apply_d(zi)).collect();
    let mut kv = vec![a.one()];
    kv.extend(v.iter().cloned());
    let kframe = Frame::new(f, a.dim(), kv)?;
    if kframe.len() != a.ker_d().dim() {
        return Err(Error::Degenerate(
            "preimages do not span a complement of Ker(d)",
        ));
    }
    let mut w = Vec::with_capacity(z.len());
    for zi in z {
        let sq = a.mul(zi, zi);
        let c = kframe
            .coords(&sq)
            .ok_or_else(|| Error::TheoremViolation("z^2 escapes Ker(d)".into()))?;
        let mut wi = zi.clone();
        wi[0] = f.add(wi[0], f.sqrt(c[0]));
        w.push(wi);
    }
    for (i, vi) in v.iter().enumerate() {
        if !is_zero_vec(&a.mul(vi, vi)) {
            return Err(Error::TheoremViolation(format!("v_{i}^2 != 0")));
        }
    }
    for (i, wi) in w.iter().enumerate() {
        if !is_zero_vec(&a.pow(wi, 4)) {
            return Err(Error::TheoremViolation(format!("w_{i}^4 != 0")));
        }
    }
    Ok(DefectOneBasis { v, w })
}

/// [`defect_one_basis_from`] with `z_i` the standard basis vectors completing `Ker(d)`.
pub fn defect_one_basis(a: &Algebra) -> Result<DefectOneBasis> {
    let defect = a.defect();
    if defect != 1 {
        return Err(Error::WrongDefect(defect));
    }
    defect_one_basis_from(a, &a.ker_d().quotient_basis())
}
