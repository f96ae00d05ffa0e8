//! Finite-dimensional associative algebras with a square-zero derivation, given
//! by structure constants. The same type carries plain associative algebras in
//! sVec₂ (matrix algebras, say) and d-algebras; [`AlgebraKind`] selects which
//! axiom set is checked.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ground::linalg::{is_zero_vec, unit_vec, vec_add, vec_axpy};
use crate::ground::{Fe, Field, FieldEmbedding, Frame, Matrix, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    /// Associative, unital, Leibniz, d² = 0.
    Assoc,
    /// All of the above plus `ab = ba + d(b)d(a)`.
    DAlgebra,
}

/// One failed check with the basis indices that exhibit it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub axiom: String,
    pub witness: Vec<usize>,
    pub lhs: Vec<Fe>,
    pub rhs: Vec<Fe>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl AxiomReport {
    pub fn new() -> AxiomReport {
        AxiomReport::default()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, axiom: &str, witness: Vec<usize>, lhs: Vec<Fe>, rhs: Vec<Fe>) {
        self.failures.push(Failure {
            axiom: axiom.to_string(),
            witness,
            lhs,
            rhs,
        });
    }

    /// Records a failure when `lhs != rhs`.
    pub fn check_eq(&mut self, axiom: &str, witness: &[usize], lhs: Vec<Fe>, rhs: Vec<Fe>) {
        if lhs != rhs {
            self.fail(axiom, witness.to_vec(), lhs, rhs);
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }

    pub fn into_result(self) -> Result<()> {
        match self.failures.first() {
            None => Ok(()),
            Some(f) => Err(Error::AxiomFailure(format!(
                "{} at {:?}",
                f.axiom, f.witness
            ))),
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "passed")?;
        } else {
            write!(f, "FAILED ({} failures)", self.failures.len())?;
            for fl in self.failures.iter().take(8) {
                write!(f, "\n  {} at {:?}", fl.axiom, fl.witness)?;
            }
        }
        Ok(())
    }
}

/// Structure constants `e_i e_j = Σ_l mul[(i n + j) n + l] e_l` and a
/// differential whose column `j` is `d(e_j)`. Basis element 0 is the unit.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    n: usize,
    mul: Vec<Fe>,
    dmat: Matrix,
    labels: Vec<String>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Algebra(dim {} over {}, basis {:?})",
            self.n,
            self.field.name(),
            self.labels
        )
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| if i == 0 { "1".into() } else { format!("e{i}") })
        .collect()
}

impl Algebra {
    pub fn new(
        field: Field,
        n: usize,
        mul: Vec<Fe>,
        dmat: Matrix,
        labels: Option<Vec<String>>,
    ) -> Result<Algebra> {
        if n == 0 {
            return Err(Error::Degenerate("algebra of dimension 0"));
        }
        if mul.len() != n * n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n * n,
                got: mul.len(),
            });
        }
        if dmat.rows() != n || dmat.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: dmat.rows().max(dmat.cols()),
            });
        }
        if dmat.field() != field {
            return Err(Error::FieldMismatch {
                left: field.degree(),
                right: dmat.field().degree(),
            });
        }
        let labels = labels.unwrap_or_else(|| default_labels(n));
        if labels.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: labels.len(),
            });
        }
        Ok(Algebra {
            field,
            n,
            mul,
            dmat,
            labels,
        })
    }

    /// Builds from a product function on basis indices returning coordinate vectors.
    pub fn from_products(
        field: Field,
        n: usize,
        product: impl Fn(usize, usize) -> Vec<Fe>,
        dmat: Matrix,
        labels: Option<Vec<String>>,
    ) -> Result<Algebra> {
        let mut mul = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                let v = product(i, j);
                if v.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: v.len(),
                    });
                }
                mul.extend(v);
            }
        }
        Algebra::new(field, n, mul, dmat, labels)
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field) -> Algebra {
        Algebra::new(field, 1, vec![Fe::ONE], Matrix::zeros(field, 1, 1), None).unwrap()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Algebra> {
        if labels.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn structure_tensor(&self) -> &[Fe] {
        &self.mul
    }

    pub fn dmat(&self) -> &Matrix {
        &self.dmat
    }

    /// `e_i e_j` as a coordinate slice.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Fe] {
        let start = (i * self.n + j) * self.n;
        &self.mul[start..start + self.n]
    }

    pub fn basis(&self, i: usize) -> Vec<Fe> {
        unit_vec(self.n, i)
    }

    pub fn one(&self) -> Vec<Fe> {
        unit_vec(self.n, 0)
    }

    pub fn zero(&self) -> Vec<Fe> {
        vec![Fe::ZERO; self.n]
    }

    fn check_len(&self, a: &[Fe]) -> Result<()> {
        if a.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: a.len(),
            });
        }
        Ok(())
    }

    pub fn try_mul(&self, a: &[Fe], b: &[Fe]) -> Result<Vec<Fe>> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.mul(a, b))
    }

    /// Bilinear product; panics on length mismatch (see [`Algebra::try_mul`]).
    pub fn mul(&self, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        assert!(
            a.len() == self.n && b.len() == self.n,
            "vector length mismatch"
        );
        let f = self.field;
        let mut out = vec![Fe::ZERO; self.n];
        for (i, &ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                vec_axpy(&f, &mut out, f.mul(ai, bj), self.basis_product(i, j));
            }
        }
        out
    }

    pub fn try_apply_d(&self, a: &[Fe]) -> Result<Vec<Fe>> {
        self.dmat.mul_vec(a)
    }

    pub fn apply_d(&self, a: &[Fe]) -> Vec<Fe> {
        self.dmat.mul_vec(a).expect("vector length mismatch")
    }

    pub fn add(&self, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        vec_add(&self.field, a, b)
    }

    pub fn scale(&self, s: Fe, a: &[Fe]) -> Vec<Fe> {
        a.iter().map(|&x| self.field.mul(s, x)).collect()
    }

    pub fn pow(&self, a: &[Fe], e: u32) -> Vec<Fe> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Matrix of `x ↦ a x`.
    pub fn left_mul_matrix(&self, a: &[Fe]) -> Matrix {
        let cols: Vec<Vec<Fe>> = (0..self.n).map(|j| self.mul(a, &self.basis(j))).collect();
        Matrix::from_columns(self.field, self.n, &cols)
    }

    /// Matrix of `x ↦ x a`.
    pub fn right_mul_matrix(&self, a: &[Fe]) -> Matrix {
        let cols: Vec<Vec<Fe>> = (0..self.n).map(|j| self.mul(&self.basis(j), a)).collect();
        Matrix::from_columns(self.field, self.n, &cols)
    }

    pub fn verify_axioms(&self, kind: AlgebraKind) -> AxiomReport {
        let n = self.n;
        let mut rep = AxiomReport::new();
        let one = self.one();
        for j in 0..n {
            let e = self.basis(j);
            rep.check_eq("left unit", &[0, j], self.mul(&one, &e), e.clone());
            rep.check_eq("right unit", &[j, 0], self.mul(&e, &one), e);
        }
        let dd = self.dmat.mul(&self.dmat).expect("square");
        for j in 0..n {
            let col = dd.column(j);
            if !is_zero_vec(&col) {
                rep.fail("d^2 = 0", vec![j], col, self.zero());
            }
        }
        let d: Vec<Vec<Fe>> = (0..n).map(|j| self.dmat.column(j)).collect();
        for i in 0..n {
            for j in 0..n {
                let ab = self.basis_product(i, j).to_vec();
                let lhs = self.apply_d(&ab);
                let rhs = self.add(
                    &self.mul(&d[i], &self.basis(j)),
                    &self.mul(&self.basis(i), &d[j]),
                );
                rep.check_eq("Leibniz", &[i, j], lhs, rhs);
                if kind == AlgebraKind::DAlgebra {
                    let ba = self.basis_product(j, i);
                    let rhs = self.add(ba, &self.mul(&d[j], &d[i]));
                    rep.check_eq("d-commutativity", &[i, j], ab, rhs);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j);
                for k in 0..n {
                    let jk = self.basis_product(j, k);
                    let lhs = self.mul(ij, &self.basis(k));
                    let rhs = self.mul(&self.basis(i), jk);
                    rep.check_eq("associativity", &[i, j, k], lhs, rhs);
                }
            }
        }
        rep
    }

    /// A basis pair `(i, j)` with `e_i e_j != e_j e_i`.
    pub fn is_commutative(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.basis_product(i, j) != self.basis_product(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn ker_d(&self) -> Subspace {
        Subspace::kernel(&self.dmat)
    }

    pub fn im_d(&self) -> Subspace {
        Subspace::column_space(&self.dmat)
    }

    pub fn center(&self) -> Subspace {
        let n = self.n;
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            let l = self.left_mul_matrix(&self.basis(i));
            let r = self.right_mul_matrix(&self.basis(i));
            let diff = l.add(&r).expect("same shape");
            rows.extend(diff.row_vectors());
        }
        Subspace::kernel(&Matrix::from_rows(self.field, n, &rows))
    }

    pub fn defect(&self) -> usize {
        self.n - 2 * self.dmat.rank()
    }

    /// `{d(a), d(b), d(a)d(b)}` for the first noncommuting basis pair.
    pub fn noncommutativity_triple(&self) -> Option<((usize, usize), [Vec<Fe>; 3])> {
        let (i, j) = self.is_commutative()?;
        let da = self.dmat.column(i);
        let db = self.dmat.column(j);
        let dadb = self.mul(&da, &db);
        Some(((i, j), [da, db, dadb]))
    }

    /// `d(e_i)² = 0` for every basis vector, containments Im ⊆ Ker ⊆ Z,
    /// `dim Im < dim Ker`, and independence of the triple at a noncommuting pair.
    pub fn lemma_suite(&self) -> AxiomReport {
        let mut rep = AxiomReport::new();
        for i in 0..self.n {
            let di = self.dmat.column(i);
            let sq = self.mul(&di, &di);
            if !is_zero_vec(&sq) {
                rep.fail("d(a)^2 = 0", vec![i], sq, self.zero());
            }
        }
        let im = self.im_d();
        let ker = self.ker_d();
        let z = self.center();
        if !ker.contains_subspace(&im) {
            rep.fail("Im(d) in Ker(d)", vec![], vec![], vec![]);
        }
        if !z.contains_subspace(&ker) {
            rep.fail("Ker(d) in center", vec![], vec![], vec![]);
        }
        if im.dim() >= ker.dim() {
            rep.fail(
                "dim Im(d) < dim Ker(d)",
                vec![im.dim(), ker.dim()],
                vec![],
                vec![],
            );
        }
        if let Some(((i, j), triple)) = self.noncommutativity_triple() {
            let span = Subspace::span(self.field, self.n, &triple);
            if span.dim() < 3 {
                rep.fail(
                    "noncommuting pair gives independent triple",
                    vec![i, j],
                    vec![],
                    vec![],
                );
            } else {
                rep.note(format!(
                    "noncommuting pair ({}, {}) gives independent d(a), d(b), d(a)d(b)",
                    self.labels[i], self.labels[j]
                ));
            }
        }
        rep
    }

    /// Reports a contradiction if the algebra is noncommutative while
    /// `dim Im(d) <= 2` or `dim A <= 6`.
    pub fn small_dim_commutativity_check(&self) -> AxiomReport {
        let mut rep = AxiomReport::new();
        let im = self.im_d().dim();
        match self.is_commutative() {
            None => rep.note("commutative"),
            Some((i, j)) => {
                if im <= 2 {
                    rep.fail(
                        "theorem: dim Im(d) <= 2 implies commutative",
                        vec![i, j],
                        vec![],
                        vec![],
                    );
                }
                if self.n <= 6 {
                    rep.fail(
                        "theorem: dim A <= 6 implies commutative",
                        vec![i, j],
                        vec![],
                        vec![],
                    );
                }
                if im > 2 && self.n > 6 {
                    rep.note(format!(
                        "noncommutative with dim Im(d) = {im}; implication vacuous"
                    ));
                }
            }
        }
        rep
    }

    pub fn homology(&self) -> Result<Homology> {
        Homology::new(self)
    }

    /// Re-expresses the algebra in a new basis given as the columns of `p`
    /// (old coordinates). Column 0 must be the unit.
    pub fn change_basis(&self, p: &Matrix, labels: Option<Vec<String>>) -> Result<Algebra> {
        let n = self.n;
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.cols(),
            });
        }
        let pinv = p.inverse()?;
        let cols: Vec<Vec<Fe>> = (0..n).map(|j| p.column(j)).collect();
        for j in 0..n {
            let e = self.basis(j);
            if self.mul(&cols[0], &e) != e || self.mul(&e, &cols[0]) != e {
                return Err(Error::Degenerate("first new basis vector must be the unit"));
            }
        }
        let product = |i: usize, j: usize| pinv.mul_vec(&self.mul(&cols[i], &cols[j])).unwrap();
        let dmat = pinv.mul(&self.dmat)?.mul(p)?;
        Algebra::from_products(self.field, n, product, dmat, labels)
    }

    /// Subalgebra (or corner algebra `eAe`) spanned by `vectors`, whose first
    /// entry becomes the new unit. Returns the algebra and the inclusion matrix
    /// (columns are the vectors).
    pub fn subalgebra(
        &self,
        vectors: Vec<Vec<Fe>>,
        labels: Option<Vec<String>>,
    ) -> Result<(Algebra, Matrix)> {
        let m = vectors.len();
        let frame = Frame::new(self.field, self.n, vectors)?;
        let mut mul = Vec::with_capacity(m * m * m);
        for i in 0..m {
            for j in 0..m {
                let prod = self.mul(frame.vector(i), frame.vector(j));
                let c = frame
                    .coords(&prod)
                    .ok_or(Error::Degenerate("span is not closed under multiplication"))?;
                mul.extend(c);
            }
        }
        let mut dcols = Vec::with_capacity(m);
        for i in 0..m {
            let dv = self.apply_d(frame.vector(i));
            dcols.push(
                frame
                    .coords(&dv)
                    .ok_or(Error::Degenerate("span is not closed under d"))?,
            );
        }
        let dmat = Matrix::from_columns(self.field, m, &dcols);
        let alg = Algebra::new(self.field, m, mul, dmat, labels)?;
        Ok((alg, frame.matrix()))
    }

    /// `A × B` with basis `(1,1)`, then `(a_i, 0)` for `i ≥ 1`, then `(0, b_j)`.
    pub fn direct_product(&self, other: &Algebra) -> Result<Algebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.degree(),
                right: other.field.degree(),
            });
        }
        let (na, nb) = (self.n, other.n);
        let n = na + nb;
        let f = self.field;
        // Block algebra in the naive basis (a_0..a_{na-1}, b_0..b_{nb-1}).
        let block_product = |i: usize, j: usize| {
            let mut v = vec![Fe::ZERO; n];
            if i < na && j < na {
                v[..na].copy_from_slice(self.basis_product(i, j));
            } else if i >= na && j >= na {
                v[na..].copy_from_slice(other.basis_product(i - na, j - na));
            }
            v
        };
        let mut dmat = Matrix::zeros(f, n, n);
        for r in 0..na {
            for c in 0..na {
                dmat.set(r, c, self.dmat.get(r, c));
            }
        }
        for r in 0..nb {
            for c in 0..nb {
                dmat.set(na + r, na + c, other.dmat.get(r, c));
            }
        }
        let mut new_cols = Vec::with_capacity(n);
        let mut unit = unit_vec(n, 0);
        unit[na] = Fe::ONE;
        new_cols.push(unit);
        for i in 1..na {
            new_cols.push(unit_vec(n, i));
        }
        for j in 0..nb {
            new_cols.push(unit_vec(n, na + j));
        }
        let mut labels = vec!["1".to_string()];
        labels.extend(self.labels[1..].iter().map(|l| format!("({l},0)")));
        labels.extend(other.labels.iter().map(|l| format!("(0,{l})")));
        // The block algebra's unit is not at index 0, so build it raw and move.
        let mut mul = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                mul.extend(block_product(i, j));
            }
        }
        let raw = Algebra {
            field: f,
            n,
            mul,
            dmat,
            labels: default_labels(n),
        };
        raw.change_basis(&Matrix::from_columns(f, n, &new_cols), Some(labels))
    }

    /// Checks that `space` is a two-sided d-ideal.
    pub fn is_d_ideal(&self, space: &Subspace) -> bool {
        if space.ambient() != self.n {
            return false;
        }
        for v in space.basis() {
            if !space.contains(&self.apply_d(&v)) {
                return false;
            }
            for i in 0..self.n {
                let e = self.basis(i);
                if !space.contains(&self.mul(&e, &v)) || !space.contains(&self.mul(&v, &e)) {
                    return false;
                }
            }
        }
        true
    }

    /// `A / I` for a d-ideal `I`. Coset representatives are the unit followed by
    /// standard basis vectors completing `I + F·1`.
    pub fn quotient_by(self: &Arc<Self>, ideal: &Subspace) -> Result<(Arc<Algebra>, Morphism)> {
        if !self.is_d_ideal(ideal) {
            return Err(Error::NotDIdeal);
        }
        if ideal.contains(&self.one()) {
            return Err(Error::Degenerate("quotient by the whole algebra"));
        }
        let with_one = ideal.with_vectors(&[self.one()]);
        let mut reps = vec![self.one()];
        reps.extend(with_one.quotient_basis());
        let m = reps.len();
        let mut frame_vecs = reps.clone();
        frame_vecs.extend(ideal.basis());
        let frame = Frame::new(self.field, self.n, frame_vecs)?;
        let proj_vec = |v: &[Fe]| frame.coords_unchecked(v)[..m].to_vec();
        let product = |i: usize, j: usize| proj_vec(&self.mul(&reps[i], &reps[j]));
        let dcols: Vec<Vec<Fe>> = reps.iter().map(|r| proj_vec(&self.apply_d(r))).collect();
        let labels: Vec<String> = reps
            .iter()
            .map(|r| match r.iter().position(|c| !c.is_zero()) {
                Some(p) if r.iter().filter(|c| !c.is_zero()).count() == 1 => self.labels[p].clone(),
                _ => "?".into(),
            })
            .collect();
        let q = Arc::new(Algebra::from_products(
            self.field,
            m,
            product,
            Matrix::from_columns(self.field, m, &dcols),
            Some(labels),
        )?);
        let proj_cols: Vec<Vec<Fe>> = (0..self.n).map(|j| proj_vec(&self.basis(j))).collect();
        let proj = Morphism::new(
            self.clone(),
            q.clone(),
            Matrix::from_columns(self.field, m, &proj_cols),
        )?;
        Ok((q, proj))
    }

    /// Base change along a field embedding.
    pub fn embed(&self, emb: &FieldEmbedding) -> Result<Algebra> {
        if emb.small != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.degree(),
                right: emb.small.degree(),
            });
        }
        let mul = self.mul.iter().map(|&c| emb.embed(c)).collect();
        let dmat = self.dmat.map_entries(emb.big, |c| emb.embed(c));
        Algebra::new(emb.big, self.n, mul, dmat, Some(self.labels.clone()))
    }

    /// Renders a vector using the basis labels.
    pub fn format_vec(&self, v: &[Fe]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| {
                if c == Fe::ONE {
                    self.labels[i].clone()
                } else {
                    format!("{c}*{}", self.labels[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// `H = Ker(d)/Im(d)` with its induced (commutative) product.
#[derive(Clone, Debug)]
pub struct Homology {
    pub algebra: Algebra,
    /// Representatives in `A` of the basis of `H`; the first is the unit.
    pub reps: Vec<Vec<Fe>>,
    frame: Frame,
}

impl Homology {
    fn new(a: &Algebra) -> Result<Homology> {
        let ker = a.ker_d();
        let im = a.im_d();
        let base = im.with_vectors(&[a.one()]);
        let mut reps = vec![a.one()];
        reps.extend(base.extend_basis(&ker));
        let m = reps.len();
        let mut fv = reps.clone();
        fv.extend(im.basis());
        let frame = Frame::new(a.field, a.n, fv)?;
        let mut mul = Vec::with_capacity(m * m * m);
        for i in 0..m {
            for j in 0..m {
                let prod = a.mul(&reps[i], &reps[j]);
                let c = frame.coords(&prod).ok_or(Error::TheoremViolation(
                    "Ker(d) is not closed under multiplication".into(),
                ))?;
                mul.extend_from_slice(&c[..m]);
            }
        }
        let algebra = Algebra::new(a.field, m, mul, Matrix::zeros(a.field, m, m), None)?;
        Ok(Homology {
            algebra,
            reps,
            frame,
        })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Class of a cycle; `None` if `v` is not in `Ker(d)`.
    pub fn project(&self, v: &[Fe]) -> Option<Vec<Fe>> {
        self.frame.coords(v).map(|c| c[..self.reps.len()].to_vec())
    }
}

/// A linear map between algebras; `mat` has the images of the source basis
/// as columns.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub source: Arc<Algebra>,
    pub target: Arc<Algebra>,
    pub mat: Matrix,
}

impl Morphism {
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, mat: Matrix) -> Result<Morphism> {
        if mat.rows() != target.dim() || mat.cols() != source.dim() {
            return Err(Error::DimensionMismatch {
                expected: target.dim() * source.dim(),
                got: mat.rows() * mat.cols(),
            });
        }
        if source.field() != target.field() || mat.field() != source.field() {
            return Err(Error::FieldMismatch {
                left: source.field().degree(),
                right: target.field().degree(),
            });
        }
        Ok(Morphism {
            source,
            target,
            mat,
        })
    }

    pub fn identity(a: Arc<Algebra>) -> Morphism {
        let n = a.dim();
        let f = a.field();
        Morphism {
            source: a.clone(),
            target: a,
            mat: Matrix::identity(f, n),
        }
    }

    pub fn apply(&self, v: &[Fe]) -> Vec<Fe> {
        self.mat.mul_vec(v).expect("vector length mismatch")
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Morphism) -> Result<Morphism> {
        if first.target.dim() != self.source.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.source.dim(),
                got: first.target.dim(),
            });
        }
        Morphism::new(
            first.source.clone(),
            self.target.clone(),
            self.mat.mul(&first.mat)?,
        )
    }

    pub fn inverse(&self) -> Result<Morphism> {
        Morphism::new(
            self.target.clone(),
            self.source.clone(),
            self.mat.inverse()?,
        )
    }

    /// Unital, multiplicative on basis pairs, and commuting with the differentials.
    pub fn verify_hom(&self) -> AxiomReport {
        let mut rep = AxiomReport::new();
        let (s, t) = (&self.source, &self.target);
        rep.check_eq("unital", &[0], self.apply(&s.one()), t.one());
        let imgs: Vec<Vec<Fe>> = (0..s.dim()).map(|j| self.mat.column(j)).collect();
        for i in 0..s.dim() {
            rep.check_eq(
                "commutes with d",
                &[i],
                self.apply(&s.dmat().column(i)),
                t.apply_d(&imgs[i]),
            );
            for j in 0..s.dim() {
                rep.check_eq(
                    "multiplicative",
                    &[i, j],
                    self.apply(s.basis_product(i, j)),
                    t.mul(&imgs[i], &imgs[j]),
                );
            }
        }
        rep
    }

    /// [`Morphism::verify_hom`] plus bijectivity.
    pub fn verify(&self) -> AxiomReport {
        let mut rep = self.verify_hom();
        let (s, t) = (self.source.dim(), self.target.dim());
        let rank = self.mat.rank();
        if s != t || rank != s {
            rep.fail("bijective", vec![s, t, rank], vec![], vec![]);
        }
        rep
    }
}

/// Checks a morphism as a d-algebra isomorphism.
pub fn verify_morphism(m: &Morphism) -> AxiomReport {
    m.verify()
}
