//! End-to-end acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use svec2::corpus::{
    random_basis_change, random_defect_one, random_fe, random_vec, small_corpus, truncated,
};
use svec2::dalgebra::{verify_morphism, Algebra, AlgebraKind};
use svec2::dim7::{make_d, normalize7};
use svec2::ground::{Fe, Field, Matrix};
use svec2::ideals::DIdeal;
use svec2::lie2::{commutator_lie, gl_object, jordan_block, LieAlgebra2};
use svec2::pbw::{
    axiom_four_violation, confluence_test, standard_count, verify_pbw, StraightenCtx,
};
use svec2::polyd::{quotient_to_dalgebra, random_elem, PElem, PMono, PolyRing};
use svec2::shell::parse_presentation;
use svec2::structure::{decompose, defect_one_basis, is_local, jacobson_radical, maximal_ideals};

use common::{slow_mul, FreeWordOracle, JSpan};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(t: Instant, limit: Duration) -> Outcome {
    let e = t.elapsed();
    if e < limit {
        Ok(format!("{:.2}s", e.as_secs_f64()))
    } else {
        Err(format!(
            "took {:.2}s, limit {:.0}s",
            e.as_secs_f64(),
            limit.as_secs_f64()
        ))
    }
}

const D000: &str = "P(2,0) / [x1^2, x2^2, x1*x2, xi1*x1, xi2*x2, xi1*x2 + xi2*x1] @ deg 4";

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let f = Field::gf(8);
    let p = parse_presentation(D000, f).map_err(|e| e.to_string())?;
    let a = quotient_to_dalgebra(&p).map_err(|e| e.to_string())?.algebra;
    ensure!(
        a.verify_axioms(AlgebraKind::DAlgebra).passed(),
        "axioms fail"
    );
    let (i, j) = a.is_commutative().ok_or("no noncommutativity witness")?;
    ensure!(
        (a.label(i), a.label(j)) == ("x1", "x2"),
        "witness ({}, {})",
        a.label(i),
        a.label(j)
    );
    let xi12 = a.basis(a.index_of("xi1*xi2").ok_or("no xi1*xi2 label")?);
    ensure!(a.mul(&a.basis(j), &a.basis(i)) == xi12, "x2 x1 != xi1 xi2");
    ensure!(a.mul(&a.basis(i), &a.basis(j)) == a.zero(), "x1 x2 != 0");
    ensure!(
        a.im_d().dim() == 3 && a.ker_d().dim() == 4 && a.defect() == 1,
        "dims"
    );
    ensure!(is_local(&a).map_err(|e| e.to_string())?, "not local");
    let maxes = maximal_ideals(&a).map_err(|e| e.to_string())?;
    ensure!(
        maxes.len() == 1 && maxes[0].dim() == 6,
        "maximal ideals {:?}",
        maxes.iter().map(|m| m.dim()).collect::<Vec<_>>()
    );
    let time = within(t, Duration::from_secs(1))?;
    Ok(format!(
        "dim 7, Im 3, Ker 4, defect 1, unique maximal ideal of dim 6, {time}"
    ))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let f = Field::gf(8);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut doubled = 0;
    for trial in 0..100 {
        let (h, k, p) = (
            random_fe(f, &mut rng),
            random_fe(f, &mut rng),
            random_fe(f, &mut rng),
        );
        let a = make_d(f, h, k, p).map_err(|e| format!("make_d({h},{k},{p}): {e}"))?;
        ensure!(a.dim() == 7, "dimension {}", a.dim());
        ensure!(
            a.verify_axioms(AlgebraKind::DAlgebra).passed(),
            "axioms fail at trial {trial}"
        );
        let norm = normalize7(&a).map_err(|e| format!("normalize7({h},{k},{p}): {e}"))?;
        ensure!(norm.doublings() <= 1, "{} doublings", norm.doublings());
        doubled += norm.doublings();
        ensure!(
            verify_morphism(&norm.morphism).passed(),
            "morphism fails at trial {trial}"
        );
        let target = make_d(norm.morphism.target.field(), Fe::ZERO, Fe::ZERO, Fe::ZERO)
            .map_err(|e| e.to_string())?;
        ensure!(*norm.morphism.target == *target, "target is not D(0,0,0)");
    }
    let time = within(t, Duration::from_secs(30))?;
    Ok(format!(
        "100 parameter triples, {doubled} needed one doubling, {time}"
    ))
}

fn criterion_3() -> Outcome {
    let f = Field::gf(4);
    let corpus = small_corpus(f, 33);
    ensure!(corpus.len() >= 50, "corpus has {} algebras", corpus.len());
    for (name, a) in &corpus {
        ensure!(a.dim() <= 6, "{name} has dimension {}", a.dim());
        ensure!(
            a.verify_axioms(AlgebraKind::DAlgebra).passed(),
            "{name} fails axioms"
        );
        ensure!(a.is_commutative().is_none(), "{name} is noncommutative");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut extended: Vec<Algebra> = corpus.iter().map(|(_, a)| a.clone()).collect();
    for _ in 0..6 {
        let d = make_d(
            f,
            random_fe(f, &mut rng),
            random_fe(f, &mut rng),
            random_fe(f, &mut rng),
        )
        .map_err(|e| e.to_string())?;
        extended.push(random_basis_change(&d, &mut rng).0);
        extended.push(
            d.direct_product(&truncated(f, 2))
                .map_err(|e| e.to_string())?,
        );
    }
    let mut noncomm = 0;
    for a in &extended {
        if a.is_commutative().is_none() {
            continue;
        }
        noncomm += 1;
        ensure!(
            a.im_d().dim() >= 3,
            "noncommutative with dim Im {}",
            a.im_d().dim()
        );
        let (_, [da, db, dadb]) = a.noncommutativity_triple().ok_or("no triple exhibited")?;
        let m = Matrix::from_rows(f, a.dim(), &[da.clone(), db.clone(), dadb.clone()]);
        ensure!(m.rank() == 3, "triple is dependent");
        ensure!(a.mul(&da, &db) == dadb, "third vector is not d(a)d(b)");
    }
    Ok(format!(
        "{} algebras of dim <= 6 all commutative; {noncomm} larger noncommutative ones have dim Im >= 3 with independent triples",
        corpus.len()
    ))
}

fn criterion_4() -> Outcome {
    let f = Field::gf(4);
    let d = make_d(f, Fe::ZERO, Fe::ZERO, Fe::ZERO).map_err(|e| e.to_string())?;
    let a = Arc::new(
        d.direct_product(&truncated(f, 3))
            .map_err(|e| e.to_string())?,
    );
    let dec = decompose(&a).map_err(|e| e.to_string())?;
    ensure!(dec.factors.len() == 2, "{} factors", dec.factors.len());
    let mut defects: Vec<usize> = dec.factors.iter().map(|fa| fa.algebra.defect()).collect();
    defects.sort();
    ensure!(defects == [1, 3], "defects {defects:?}");
    ensure!(a.defect() == 4, "total defect {}", a.defect());
    let rep = dec.verify(&a).map_err(|e| e.to_string())?;
    ensure!(rep.passed(), "decomposition invariants: {rep}");
    let mut indices = Vec::new();
    for fa in &dec.factors {
        ensure!(
            is_local(&fa.algebra).map_err(|e| e.to_string())?,
            "factor not local"
        );
        let j = jacobson_radical(&fa.algebra).map_err(|e| e.to_string())?;
        let m = j.nilpotency_index().ok_or("radical not nilpotent")?;
        ensure!(m <= 7, "J^{m} first vanishes");
        indices.push(m);
    }
    Ok(format!(
        "2 local factors, defects {defects:?} (total 4), radical nilpotency indices {indices:?}"
    ))
}

fn sparse_generator(a: &Algebra, rng: &mut ChaCha8Rng) -> Vec<Fe> {
    let f = a.field();
    let mut v = vec![Fe::ZERO; a.dim()];
    for _ in 0..rng.gen_range(1..=2) {
        let i = rng.gen_range(0..a.dim());
        v[i] = Fe(rng.gen_range(1..f.size()) as u16);
    }
    v
}

fn criterion_5() -> Outcome {
    let f = Field::gf(2);
    let mut pool: Vec<Algebra> = small_corpus(f, 55)
        .into_iter()
        .map(|(_, a)| a)
        .filter(|a| a.dim() >= 2)
        .collect();
    pool.push((*make_d(f, Fe::ZERO, Fe::ONE, Fe::ZERO).map_err(|e| e.to_string())?).clone());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut coprime = 0;
    for trial in 0..200 {
        let a = &pool[rng.gen_range(0..pool.len())];
        let gi: Vec<Vec<Fe>> = (0..rng.gen_range(1..=2))
            .map(|_| sparse_generator(a, &mut rng))
            .collect();
        let gj: Vec<Vec<Fe>> = (0..rng.gen_range(1..=2))
            .map(|_| sparse_generator(a, &mut rng))
            .collect();
        let i = DIdeal::close(a, &gi).map_err(|e| e.to_string())?;
        let j = DIdeal::close(a, &gj).map_err(|e| e.to_string())?;
        for id in [&i, &j] {
            let rep = id.verify();
            ensure!(
                rep.passed(),
                "closure output is not a two-sided d-ideal at trial {trial}: {rep}"
            );
        }
        let ij = i.product(&j).map_err(|e| e.to_string())?;
        let ji = j.product(&i).map_err(|e| e.to_string())?;
        ensure!(ij == ji, "IJ != JI at trial {trial}");
        if i.is_coprime(&j).map_err(|e| e.to_string())? {
            coprime += 1;
            ensure!(
                ij == i.intersect(&j).map_err(|e| e.to_string())?,
                "IJ != I cap J for a coprime pair"
            );
        }
    }
    ensure!(coprime > 0, "no coprime pairs were generated");
    Ok(format!(
        "200 pairs with IJ = JI, {coprime} coprime pairs with IJ = I cap J, all closures verified"
    ))
}

fn criterion_6() -> Outcome {
    let f = Field::gf(4);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut dims = Vec::new();
    for _ in 0..20 {
        let a = random_defect_one(f, &mut rng);
        ensure!(a.defect() == 1, "defect {}", a.defect());
        let b = defect_one_basis(&a).map_err(|e| e.to_string())?;
        for v in &b.v {
            ensure!(a.mul(v, v) == a.zero(), "v^2 != 0");
        }
        for (w, v) in b.w.iter().zip(&b.v) {
            ensure!(a.pow(w, 4) == a.zero(), "w^4 != 0");
            ensure!(a.apply_d(w) == *v, "d(w) != v");
        }
        ensure!(b.matrix(&a).rank() == a.dim(), "not a basis");
        dims.push(a.dim());
    }
    Ok(format!(
        "20 algebras (dims {:?}) with v_i^2 = 0 and w_i^4 = 0",
        dims
    ))
}

fn random_mono(ring: &PolyRing, rng: &mut ChaCha8Rng, max_deg: usize) -> PMono {
    let monos: Vec<PMono> = ring.monomials_up_to(max_deg);
    monos[rng.gen_range(0..monos.len())].clone()
}

fn criterion_7() -> Outcome {
    let f = Field::gf(4);
    let ring = PolyRing::new(f, 2, 2).map_err(|e| e.to_string())?;
    let mut oracle = FreeWordOracle::new(f, 2, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let a = random_mono(&ring, &mut rng, 4);
        let b = random_mono(&ring, &mut rng, 4 - a.degree());
        let fast = ring
            .normal_mul(&PElem::mono(a.clone()), &PElem::mono(b.clone()))
            .map_err(|e| e.to_string())?;
        let slow = oracle.mono_product(&a, &b);
        ensure!(fast == slow, "{a} * {b}: normal_mul {fast}, oracle {slow}");
    }
    for _ in 0..200 {
        let x = random_elem(&ring, &mut rng, 2, 3);
        let y = random_elem(&ring, &mut rng, 2, 3);
        let z = random_elem(&ring, &mut rng, 2, 3);
        let l = ring.mul(&ring.mul(&x, &y), &z);
        let r = ring.mul(&x, &ring.mul(&y, &z));
        ensure!(l == r, "associativity fails");
        let lhs = ring.mul(&x, &y);
        let rhs = ring
            .mul(&y, &x)
            .add(&f, &ring.mul(&ring.p_d(&y), &ring.p_d(&x)));
        ensure!(lhs == rhs, "d-commutativity fails");
    }
    Ok("500 monomial pairs match the free-word oracle; 200 associativity and d-commutativity checks".into())
}

fn pbw_case(name: &str, l: &LieAlgebra2, bound: usize) -> Result<String, String> {
    ensure!(l.verify_lie().passed(), "{name}: not a Lie algebra");
    let ctx = StraightenCtx::new(l).map_err(|e| e.to_string())?;
    let rep = verify_pbw(&ctx, bound);
    ensure!(rep.passed(), "{name}: verify_pbw fails: {rep}");
    let span = JSpan::new(&ctx, bound);
    let mut counts = Vec::new();
    for d in 0..=bound {
        let s = standard_count(l.dim(), ctx.kk(), d);
        let u = span.u_dim(l.dim(), d);
        ensure!(
            s == u,
            "{name}: degree {d}: {s} standard words, oracle dim U {u}"
        );
        counts.push(s);
    }
    Ok(format!("{name} {counts:?}"))
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let f = Field::gf(1);
    let mut d = Matrix::zeros(f, 4, 4);
    d.set(0, 1, Fe::ONE);
    let abelian = LieAlgebra2::abelian(f, d).map_err(|e| e.to_string())?;
    let gl2 = commutator_lie(&gl_object(f, 2, &jordan_block(f, 2)).map_err(|e| e.to_string())?);
    let a = pbw_case("abelian", &abelian, 4)?;
    let b = pbw_case("gl2", &gl2, 4)?;
    let bad = StraightenCtx::new(&axiom_four_violation(f)).map_err(|e| e.to_string())?;
    ensure!(
        !verify_pbw(&bad, 4).passed(),
        "axiom-4 violation passes verify_pbw"
    );
    let time = within(t, Duration::from_secs(60))?;
    Ok(format!(
        "standard counts {a}; {b}; axiom-4 violation rejected; {time}"
    ))
}

fn criterion_9() -> Outcome {
    let f = Field::gf(1);
    let gl2 = commutator_lie(&gl_object(f, 2, &jordan_block(f, 2)).map_err(|e| e.to_string())?);
    let ctx = StraightenCtx::new(&gl2).map_err(|e| e.to_string())?;
    let alt = ctx.with_shifted_preimages(10).map_err(|e| e.to_string())?;
    ensure!(
        alt.preimages() != ctx.preimages(),
        "preimage choices coincide"
    );
    let first = confluence_test(&ctx, 1000, 6, 9).map_err(|e| e.to_string())?;
    ensure!(
        first.passed(),
        "{} discrepancies",
        first.discrepancies.len()
    );
    let fresh = StraightenCtx::new(&gl2).map_err(|e| e.to_string())?;
    let second = confluence_test(&fresh, 1000, 6, 9).map_err(|e| e.to_string())?;
    ensure!(
        first.to_kv() == second.to_kv(),
        "reports differ between runs"
    );
    Ok(format!(
        "1000 words, 3 strategies x 2 preimage sets, 0 discrepancies, checksum {:016x}",
        first.checksum
    ))
}

fn criterion_10() -> Outcome {
    for k in 1..=4u8 {
        let f = Field::gf(k);
        for a in f.elements() {
            ensure!(f.square(f.sqrt(a)) == a, "sqrt fails in GF(2^{k})");
            for b in f.elements() {
                ensure!(
                    f.mul(a, b) == slow_mul(f, a, b),
                    "mul disagrees with schoolbook in GF(2^{k})"
                );
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for k in 5..=16u8 {
        let f = Field::gf(k);
        for _ in 0..10_000 {
            let a = random_fe(f, &mut rng);
            ensure!(f.square(f.sqrt(a)) == a, "sqrt fails in GF(2^{k})");
        }
    }
    let mut extensions = 0;
    let mut checked = 0;
    for k in [1u8, 2, 3, 4, 8] {
        let f = Field::gf(k);
        for _ in 0..200 {
            let c = random_vec(f, 3, &mut rng);
            let (a, b, c0) = (c[0], c[1], c[2]);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let scan: Vec<Fe> = f
                .elements()
                .filter(|&r| {
                    f.add(f.add(f.mul(a, f.square(r)), f.mul(b, r)), c0)
                        .is_zero()
                })
                .collect();
            match f.quad_roots(a, b, c0) {
                Ok(roots) => {
                    ensure!(!scan.is_empty(), "roots reported where the scan finds none");
                    for r in &roots {
                        let v = f.add(f.add(f.mul(a, f.square(*r)), f.mul(b, *r)), c0);
                        ensure!(v.is_zero(), "reported root does not satisfy the polynomial");
                    }
                    ensure!(roots == scan, "roots differ from the scan");
                }
                Err(svec2::Error::NeedsExtension { .. }) => {
                    ensure!(scan.is_empty(), "NeedsExtension although a root exists");
                    extensions += 1;
                }
                Err(e) => return Err(e.to_string()),
            }
            checked += 1;
        }
    }
    Ok(format!(
        "sqrt exhaustive for k <= 4 and 10^4 samples for k <= 16; {checked} quadratics, {extensions} needing extension"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("D(0,0,0) suite", criterion_1),
        ("dimension-7 classification", criterion_2),
        ("small-dimension commutativity", criterion_3),
        ("local decomposition", criterion_4),
        ("ideal laws", criterion_5),
        ("defect-one structure", criterion_6),
        ("polynomial d-algebra oracle", criterion_7),
        ("PBW at desk scale", criterion_8),
        ("straightening confluence", criterion_9),
        ("field layer", criterion_10),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", n + 1);
            }
        }
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
