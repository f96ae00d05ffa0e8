//! Small d-algebras used as examples and test inputs.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dalgebra::Algebra;
use crate::dim7::make_d;
use crate::ground::linalg::unit_vec;
use crate::ground::{Fe, Field, Matrix};
use crate::ideals::DIdeal;
use crate::polyd::{quotient_to_dalgebra, random_elem, PElem, PMono, PolyRing, Presentation};

pub fn random_fe(f: Field, rng: &mut impl Rng) -> Fe {
    Fe(rng.gen_range(0..f.size()) as u16)
}

pub fn random_vec(f: Field, n: usize, rng: &mut impl Rng) -> Vec<Fe> {
    (0..n).map(|_| random_fe(f, rng)).collect()
}

/// The same algebra in a random basis whose first vector is still the unit.
/// Returns the new algebra and the change-of-basis matrix (new basis as columns).
pub fn random_basis_change(a: &Algebra, rng: &mut impl Rng) -> (Algebra, Matrix) {
    let f = a.field();
    let n = a.dim();
    loop {
        let mut cols = vec![a.one()];
        for _ in 1..n {
            cols.push(random_vec(f, n, rng));
        }
        let p = Matrix::from_columns(f, n, &cols);
        if p.rank() == n {
            let b = a.change_basis(&p, None).expect("invertible, unit first");
            return (b, p);
        }
    }
}

/// `F[t]/(t^m)` with `d = 0`, basis `1, t, …, t^(m-1)`.
pub fn truncated(f: Field, m: usize) -> Algebra {
    let labels = (0..m)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        })
        .collect();
    Algebra::from_products(
        f,
        m,
        |i, j| {
            let mut v = vec![Fe::ZERO; m];
            if i + j < m {
                v[i + j] = Fe::ONE;
            }
            v
        },
        Matrix::zeros(f, m, m),
        Some(labels),
    )
    .expect("valid shape")
}

/// `F^m` with `d = 0`, basis `1, ε_1, …, ε_(m-1)` where `ε_i` is the `i`-th
/// coordinate idempotent.
pub fn split(f: Field, m: usize) -> Algebra {
    let labels = (0..m)
        .map(|i| {
            if i == 0 {
                "1".to_string()
            } else {
                format!("eps{i}")
            }
        })
        .collect();
    Algebra::from_products(
        f,
        m,
        |i, j| match (i, j) {
            (0, x) | (x, 0) => unit_vec(m, x),
            (a, b) if a == b => unit_vec(m, a),
            _ => vec![Fe::ZERO; m],
        },
        Matrix::zeros(f, m, m),
        Some(labels),
    )
    .expect("valid shape")
}

/// `F[x, ξ]/(x², ξx)` with `d(x) = ξ`: the smallest algebra with nonzero
/// differential, dimension 3 and defect 1. With `c ≠ 0` the first relation
/// becomes `x² + cξ`.
pub fn odd_line(f: Field, c: Fe) -> Algebra {
    let ring = PolyRing::new(f, 1, 0).expect("one generator");
    let (x, xi) = (ring.x(0), ring.xi(0));
    let rels = vec![
        ring.mul(&x, &x).add(&f, &xi.scale(&f, c)),
        ring.mul(&xi, &x),
    ];
    let p = Presentation::new(ring, rels, 3).expect("nonzero relations");
    (*quotient_to_dalgebra(&p).expect("bounded, d-closed").algebra).clone()
}

/// A random bounded presentation in one of a few small polynomial
/// d-algebras: every monomial of the top degree is a relation, plus a few
/// random low-degree elements and their differentials.
pub fn random_presentation(f: Field, rng: &mut impl Rng) -> Presentation {
    let (r, s, bound) =
        [(1, 0, 3), (0, 1, 3), (1, 1, 2), (0, 2, 3), (2, 0, 2)][rng.gen_range(0..5)];
    let ring = PolyRing::new(f, r, s).expect("small shape");
    let mut rels: Vec<PElem> = ring
        .monomials_up_to(bound)
        .into_iter()
        .filter(|m| m.degree() == bound)
        .map(PElem::mono)
        .collect();
    for _ in 0..rng.gen_range(0..3) {
        let g = random_elem(&ring, rng, bound - 1, 2);
        if g.is_zero() || g.coeff(&PMono::one(r, s)) != Fe::ZERO {
            continue;
        }
        let dg = ring.p_d(&g);
        rels.push(g);
        if !dg.is_zero() {
            rels.push(dg);
        }
    }
    Presentation::new(ring, rels, bound).expect("nonzero relations")
}

/// Named d-algebras of dimension at most 6: truncated polynomial and split
/// algebras, small quotients of polynomial d-algebras, products, quotients by
/// random d-ideals, random bounded presentations and random basis changes.
pub fn small_corpus(f: Field, seed: u64) -> Vec<(String, Algebra)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(String, Algebra)> = vec![("ground".into(), Algebra::ground(f))];
    for m in 2..=6 {
        out.push((format!("truncated({m})"), truncated(f, m)));
        out.push((format!("split({m})"), split(f, m)));
    }
    out.push(("odd_line".into(), odd_line(f, Fe::ZERO)));
    out.push(("odd_line(1)".into(), odd_line(f, Fe::ONE)));
    let bases = [
        ("truncated(2)", truncated(f, 2)),
        ("truncated(3)", truncated(f, 3)),
        ("split(2)", split(f, 2)),
        ("odd_line", odd_line(f, Fe::ZERO)),
    ];
    for (na, a) in &bases {
        for (nb, b) in &bases {
            if a.dim() + b.dim() <= 6 {
                out.push((
                    format!("{na} x {nb}"),
                    a.direct_product(b).expect("same field"),
                ));
            }
        }
    }
    let mut made = 0;
    while made < 16 {
        let p = random_presentation(f, &mut rng);
        if let Ok(q) = quotient_to_dalgebra(&p) {
            if q.algebra.dim() <= 6 {
                out.push((format!("presentation {made}"), (*q.algebra).clone()));
                made += 1;
            }
        }
    }
    let parents: Vec<Algebra> = out
        .iter()
        .map(|(_, a)| a.clone())
        .filter(|a| a.dim() >= 3)
        .collect();
    for (i, a) in parents.iter().take(12).enumerate() {
        let a = Arc::new(a.clone());
        let g = random_vec(f, a.dim(), &mut rng);
        let ideal = DIdeal::close(&a, &[g]).expect("d-algebra");
        if ideal.is_whole() {
            continue;
        }
        let (q, _) = ideal.quotient(&a).expect("proper d-ideal");
        out.push((format!("quotient {i}"), (*q).clone()));
    }
    let snapshot: Vec<(String, Algebra)> = out
        .iter()
        .filter(|(_, a)| a.dim() >= 3)
        .take(10)
        .cloned()
        .collect();
    for (name, a) in snapshot {
        let (b, _) = random_basis_change(&a, &mut rng);
        out.push((format!("{name} (rebased)"), b));
    }
    out
}

/// Random defect-one algebras: rebased `D(h,k,p)` and `odd_line` variants.
pub fn random_defect_one(f: Field, rng: &mut impl Rng) -> Algebra {
    let a = if rng.gen_bool(0.5) {
        let (h, k, p) = (random_fe(f, rng), random_fe(f, rng), random_fe(f, rng));
        (*make_d(f, h, k, p).expect("seven-dimensional")).clone()
    } else {
        odd_line(f, random_fe(f, rng))
    };
    random_basis_change(&a, rng).0
}
