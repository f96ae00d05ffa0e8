//! Lie algebras in sVec₂: a bracket tensor plus a square-zero differential.

use std::fmt;

use rand::Rng;

use crate::dalgebra::{Algebra, AxiomReport};
use crate::error::{Error, Result};
use crate::ground::linalg::{is_zero_vec, unit_vec, vec_add, vec_axpy};
use crate::ground::{Fe, Field, Matrix, Subspace};

/// `[e_i, e_j] = Σ_l bracket[(i n + j) n + l] e_l`; column `j` of `dmat` is `d(e_j)`.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra2 {
    field: Field,
    n: usize,
    bracket: Vec<Fe>,
    dmat: Matrix,
    labels: Vec<String>,
}

impl fmt::Debug for LieAlgebra2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LieAlgebra2(dim {} over {}, basis {:?})",
            self.n,
            self.field.name(),
            self.labels
        )
    }
}

impl LieAlgebra2 {
    pub fn new(
        field: Field,
        n: usize,
        bracket: Vec<Fe>,
        dmat: Matrix,
        labels: Option<Vec<String>>,
    ) -> Result<LieAlgebra2> {
        if bracket.len() != n * n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n * n,
                got: bracket.len(),
            });
        }
        if dmat.rows() != n || dmat.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: dmat.rows(),
            });
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| format!("v{}", i + 1)).collect());
        if labels.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: labels.len(),
            });
        }
        Ok(LieAlgebra2 {
            field,
            n,
            bracket,
            dmat,
            labels,
        })
    }

    pub fn abelian(field: Field, dmat: Matrix) -> Result<LieAlgebra2> {
        let n = dmat.rows();
        LieAlgebra2::new(field, n, vec![Fe::ZERO; n * n * n], dmat, None)
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

    pub fn dmat(&self) -> &Matrix {
        &self.dmat
    }

    pub fn bracket_tensor(&self) -> &[Fe] {
        &self.bracket
    }

    pub fn basis(&self, i: usize) -> Vec<Fe> {
        unit_vec(self.n, i)
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Fe] {
        let start = (i * self.n + j) * self.n;
        &self.bracket[start..start + self.n]
    }

    pub fn try_bracket(&self, x: &[Fe], y: &[Fe]) -> Result<Vec<Fe>> {
        if x.len() != self.n || y.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len().min(y.len()),
            });
        }
        Ok(self.bracket(x, y))
    }

    pub fn bracket(&self, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
        assert!(
            x.len() == self.n && y.len() == self.n,
            "vector length mismatch"
        );
        let f = self.field;
        let mut out = vec![Fe::ZERO; self.n];
        for (i, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if !b.is_zero() {
                    vec_axpy(&f, &mut out, f.mul(a, b), self.basis_bracket(i, j));
                }
            }
        }
        out
    }

    pub fn apply_d(&self, x: &[Fe]) -> Vec<Fe> {
        self.dmat.mul_vec(x).expect("vector length mismatch")
    }

    /// Matrix of `y ↦ [x, y]`.
    pub fn ad_matrix(&self, x: &[Fe]) -> Matrix {
        let cols: Vec<Vec<Fe>> = (0..self.n)
            .map(|j| self.bracket(x, &self.basis(j)))
            .collect();
        Matrix::from_columns(self.field, self.n, &cols)
    }

    pub fn ker_d(&self) -> Subspace {
        Subspace::kernel(&self.dmat)
    }

    pub fn im_d(&self) -> Subspace {
        Subspace::column_space(&self.dmat)
    }

    fn axiom3_report(&self) -> AxiomReport {
        let n = self.n;
        let mut rep = AxiomReport::new();
        let d: Vec<Vec<Fe>> = (0..n).map(|i| self.dmat.column(i)).collect();
        for i in 0..n {
            let x = self.basis(i);
            for j in 0..n {
                let y = self.basis(j);
                let xy = self.basis_bracket(i, j).to_vec();
                for k in 0..n {
                    let z = self.basis(k);
                    let yz = self.basis_bracket(j, k);
                    let xz = self.basis_bracket(i, k);
                    let mut lhs = self.bracket(&x, yz);
                    lhs = vec_add(&self.field, &lhs, &self.bracket(&y, xz));
                    lhs = vec_add(
                        &self.field,
                        &lhs,
                        &self.bracket(&d[j], &self.bracket(&d[i], &z)),
                    );
                    let rhs = self.bracket(&xy, &z);
                    rep.check_eq("axiom 3 (Jacobi)", &[i, j, k], lhs, rhs);
                }
            }
        }
        rep
    }

    /// Axioms 1 and 2 on basis pairs, axiom 3 on basis triples, axiom 4 on a
    /// basis of `Ker(d)`, and `d² = 0`.
    pub fn verify_lie(&self) -> AxiomReport {
        let n = self.n;
        let f = self.field;
        let mut rep = AxiomReport::new();
        let dd = self.dmat.mul(&self.dmat).expect("square");
        for j in 0..n {
            if !is_zero_vec(&dd.column(j)) {
                rep.fail("d^2 = 0", vec![j], dd.column(j), vec![Fe::ZERO; n]);
            }
        }
        let d: Vec<Vec<Fe>> = (0..n).map(|i| self.dmat.column(i)).collect();
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (self.basis(i), self.basis(j));
                let xy = self.basis_bracket(i, j).to_vec();
                let lhs = self.apply_d(&xy);
                let rhs = vec_add(&f, &self.bracket(&d[i], &y), &self.bracket(&x, &d[j]));
                rep.check_eq("axiom 1 (d is a derivation)", &[i, j], lhs, rhs);
                let mut sum = vec_add(&f, &xy, self.basis_bracket(j, i));
                sum = vec_add(&f, &sum, &self.bracket(&d[j], &d[i]));
                rep.check_eq("axiom 2 (antisymmetry)", &[i, j], sum, vec![Fe::ZERO; n]);
            }
        }
        rep.merge(self.axiom3_report());
        for (k, x) in self.ker_d().basis().iter().enumerate() {
            let xx = self.bracket(x, x);
            if !is_zero_vec(&xx) {
                rep.fail(
                    "axiom 4 ([x,x] = 0 on Ker(d))",
                    vec![k],
                    xx,
                    vec![Fe::ZERO; n],
                );
            }
        }
        rep.note("axiom 4 checked on a basis of Ker(d): x -> [x,x] is additive there and scales by squares");
        rep
    }

    /// `[[x,y],z] + [[z,x],y] + [[dz,dx],y] + [[dz,x],dy] + [[y,z],x] + [[y,dz],dx] + [[dy,z],dx] = 0`
    /// on basis triples, plus a failure if its verdict differs from the
    /// three-term Jacobi identity.
    pub fn jacobi_seven_term_check(&self) -> AxiomReport {
        let n = self.n;
        let f = self.field;
        let mut rep = AxiomReport::new();
        let d: Vec<Vec<Fe>> = (0..n).map(|i| self.dmat.column(i)).collect();
        let br = |a: &[Fe], b: &[Fe]| self.bracket(a, b);
        for i in 0..n {
            let x = self.basis(i);
            for j in 0..n {
                let y = self.basis(j);
                for k in 0..n {
                    let z = self.basis(k);
                    let (dx, dy, dz) = (&d[i], &d[j], &d[k]);
                    let terms = [
                        br(&br(&x, &y), &z),
                        br(&br(&z, &x), &y),
                        br(&br(dz, dx), &y),
                        br(&br(dz, &x), dy),
                        br(&br(&y, &z), &x),
                        br(&br(&y, dz), dx),
                        br(&br(dy, &z), dx),
                    ];
                    let mut sum = vec![Fe::ZERO; n];
                    for t in &terms {
                        sum = vec_add(&f, &sum, t);
                    }
                    rep.check_eq("seven-term Jacobi", &[i, j, k], sum, vec![Fe::ZERO; n]);
                }
            }
        }
        let three = self.axiom3_report().passed();
        if three != rep.passed() {
            rep.fail(
                "seven-term form agrees with axiom 3",
                vec![],
                vec![],
                vec![],
            );
        }
        rep
    }

    /// `ad_x ad_y + ad_y ad_x + ad_{dy} ad_{dx} = ad_{[x,y]}`.
    pub fn ad_identity_holds(&self, x: &[Fe], y: &[Fe]) -> bool {
        let (ax, ay) = (self.ad_matrix(x), self.ad_matrix(y));
        let (adx, ady) = (
            self.ad_matrix(&self.apply_d(x)),
            self.ad_matrix(&self.apply_d(y)),
        );
        let lhs = ax
            .mul(&ay)
            .and_then(|m| m.add(&ay.mul(&ax)?))
            .and_then(|m| m.add(&ady.mul(&adx)?))
            .expect("square");
        lhs == self.ad_matrix(&self.bracket(x, y))
    }

    /// The same Lie algebra with the bracket reindexed along a basis change
    /// (columns of `p` are the new basis in old coordinates).
    pub fn change_basis(&self, p: &Matrix, labels: Option<Vec<String>>) -> Result<LieAlgebra2> {
        let n = self.n;
        let pinv = p.inverse()?;
        let cols: Vec<Vec<Fe>> = (0..n).map(|j| p.column(j)).collect();
        let mut bracket = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                bracket.extend(pinv.mul_vec(&self.bracket(&cols[i], &cols[j]))?);
            }
        }
        let dmat = pinv.mul(&self.dmat)?.mul(p)?;
        LieAlgebra2::new(self.field, n, bracket, dmat, labels)
    }
}

/// `[x,y] = xy + yx + d(y)d(x)` on an associative algebra in sVec₂.
pub fn commutator_lie(a: &Algebra) -> LieAlgebra2 {
    let n = a.dim();
    let f = a.field();
    let mut bracket = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let mut v = vec_add(&f, a.basis_product(i, j), a.basis_product(j, i));
            v = vec_add(&f, &v, &a.mul(&a.dmat().column(j), &a.dmat().column(i)));
            bracket.extend(v);
        }
    }
    LieAlgebra2::new(f, n, bracket, a.dmat().clone(), Some(a.labels().to_vec()))
        .expect("shapes agree")
}

/// `End(V)` for `V = F^n` with differential `dV`: the matrix algebra with
/// `d(X) = dV·X + X·dV`, in the basis `1, E_ab` (all `(a,b) ≠ (1,1)`).
pub fn gl_object(f: Field, n: usize, dv: &Matrix) -> Result<Algebra> {
    if dv.rows() != n || dv.cols() != n {
        return Err(Error::BadDifferential);
    }
    if !dv.mul(dv)?.is_zero() {
        return Err(Error::BadDifferential);
    }
    let m = n * n;
    let idx = |a: usize, b: usize| a * n + b;
    let raw_product = |p: usize, q: usize| {
        let (a, b) = (p / n, p % n);
        let (c, e) = (q / n, q % n);
        let mut v = vec![Fe::ZERO; m];
        if b == c {
            v[idx(a, e)] = Fe::ONE;
        }
        v
    };
    let mut dmat = Matrix::zeros(f, m, m);
    for p in 0..m {
        let (a, b) = (p / n, p % n);
        // dV·E_ab has column b equal to column a of dV; E_ab·dV has row a equal to row b of dV.
        for r in 0..n {
            let c = dv.get(r, a);
            if !c.is_zero() {
                let t = idx(r, b);
                dmat.set(t, p, f.add(dmat.get(t, p), c));
            }
        }
        for s in 0..n {
            let c = dv.get(b, s);
            if !c.is_zero() {
                let t = idx(a, s);
                dmat.set(t, p, f.add(dmat.get(t, p), c));
            }
        }
    }
    let mut rawlabels = Vec::with_capacity(m);
    for a in 0..n {
        for b in 0..n {
            rawlabels.push(format!("E{}{}", a + 1, b + 1));
        }
    }
    let raw = Algebra::from_products(f, m, raw_product, Matrix::identity(f, m), None)?;
    let raw = Algebra::new(f, m, raw.structure_tensor().to_vec(), dmat, None)?;
    let mut cols = Vec::with_capacity(m);
    let mut ident = vec![Fe::ZERO; m];
    for a in 0..n {
        ident[idx(a, a)] = Fe::ONE;
    }
    cols.push(ident);
    let mut labels = vec!["1".to_string()];
    for p in 1..m {
        cols.push(unit_vec(m, p));
        labels.push(rawlabels[p].clone());
    }
    raw.change_basis(&Matrix::from_columns(f, m, &cols), Some(labels))
}

/// Nilpotent `n × n` Jordan block: ones on the superdiagonal.
pub fn jordan_block(f: Field, n: usize) -> Matrix {
    let mut m = Matrix::zeros(f, n, n);
    for i in 0..n.saturating_sub(1) {
        m.set(i, i + 1, Fe::ONE);
    }
    m
}

/// A uniformly random bracket satisfying axioms 1 and 2 for the given
/// differential: a random point of the solution space of those linear
/// constraints on the structure constants.
pub fn random_bracket_12(f: Field, dmat: &Matrix, rng: &mut impl Rng) -> Result<LieAlgebra2> {
    let n = dmat.rows();
    let unknowns = n * n * n;
    let var = |i: usize, j: usize, l: usize| (i * n + j) * n + l;
    let mut rows: Vec<Vec<Fe>> = Vec::new();
    // Axiom 1: d[e_i,e_j] + [d e_i, e_j] + [e_i, d e_j] = 0, coordinate l.
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let mut row = vec![Fe::ZERO; unknowns];
                for m in 0..n {
                    let c = dmat.get(l, m);
                    if !c.is_zero() {
                        row[var(i, j, m)] = f.add(row[var(i, j, m)], c);
                    }
                }
                for a in 0..n {
                    let c = dmat.get(a, i);
                    if !c.is_zero() {
                        row[var(a, j, l)] = f.add(row[var(a, j, l)], c);
                    }
                    let c = dmat.get(a, j);
                    if !c.is_zero() {
                        row[var(i, a, l)] = f.add(row[var(i, a, l)], c);
                    }
                }
                rows.push(row);
            }
        }
    }
    // Axiom 2: [e_i,e_j] + [e_j,e_i] + [d e_j, d e_i] = 0.
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let mut row = vec![Fe::ZERO; unknowns];
                row[var(i, j, l)] = f.add(row[var(i, j, l)], Fe::ONE);
                row[var(j, i, l)] = f.add(row[var(j, i, l)], Fe::ONE);
                for a in 0..n {
                    for b in 0..n {
                        let c = f.mul(dmat.get(a, j), dmat.get(b, i));
                        if !c.is_zero() {
                            row[var(a, b, l)] = f.add(row[var(a, b, l)], c);
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    let null = Matrix::from_rows(f, unknowns, &rows).nullspace();
    let mut bracket = vec![Fe::ZERO; unknowns];
    for v in &null {
        let c = Fe(rng.gen_range(0..f.size()) as u16);
        vec_axpy(&f, &mut bracket, c, v);
    }
    LieAlgebra2::new(f, n, bracket, dmat.clone(), None)
}
