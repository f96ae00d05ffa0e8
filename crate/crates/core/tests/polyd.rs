mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use svec2::corpus::{random_presentation, small_corpus};
use svec2::dalgebra::AlgebraKind;
use svec2::ground::Field;
use svec2::polyd::{
    present, quotient_to_dalgebra, random_elem, Letter, PElem, PMono, PolyRing, Strategy as Rewrite,
};
use svec2::shell::greedy_generators;

use common::{FreeWordOracle, L};

fn to_oracle(l: Letter) -> L {
    match l {
        Letter::X(i) => L::X(i),
        Letter::Xi(i) => L::Xi(i),
        Letter::Y(j) => L::Y(j),
    }
}

fn random_word(ring: &PolyRing, rng: &mut ChaCha8Rng, len: usize) -> Vec<Letter> {
    (0..len)
        .map(|_| {
            let k = rng.gen_range(0..2 * ring.r + ring.s);
            if k < ring.r {
                Letter::X(k)
            } else if k < 2 * ring.r {
                Letter::Xi(k - ring.r)
            } else {
                Letter::Y(k - 2 * ring.r)
            }
        })
        .collect()
}

fn ring_strategy() -> impl Strategy<Value = PolyRing> {
    (1u8..=3, 0usize..=2, 0usize..=1)
        .prop_filter("nonempty", |(_, r, s)| r + s > 0)
        .prop_map(|(k, r, s)| PolyRing::new(Field::gf(k), r, s).unwrap())
}

#[test]
fn canonical_words_form_a_basis() {
    for (r, s) in [(1, 1), (2, 0), (1, 0)] {
        let f = Field::gf(1);
        let mut oracle = FreeWordOracle::new(f, r, s);
        let ring = PolyRing::new(f, r, s).unwrap();
        for m in ring.monomials_up_to(4) {
            let w = FreeWordOracle::mono_word(&m);
            let mut weight: Vec<usize> = w
                .iter()
                .map(|l| match l {
                    L::X(i) | L::Xi(i) => *i,
                    L::Y(j) => 100 + j,
                })
                .collect();
            weight.sort();
            assert_eq!(oracle.basis_defect(weight, w.len()), 0, "({r},{s}) {m}");
        }
    }
}

#[test]
fn reduction_matches_free_word_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (r, s) in [(1, 1), (2, 0)] {
        let f = Field::gf(1);
        let ring = PolyRing::new(f, r, s).unwrap();
        let mut oracle = FreeWordOracle::new(f, r, s);
        for _ in 0..60 {
            let len = rng.gen_range(0..=5);
            let w = random_word(&ring, &mut rng, len);
            let ow: Vec<L> = w.iter().map(|&l| to_oracle(l)).collect();
            let expected = oracle.reduce_word(&ow);
            for strat in [
                Rewrite::Leftmost,
                Rewrite::Rightmost,
                Rewrite::Random(rng.gen()),
            ] {
                assert_eq!(
                    ring.reduce_word(&w, strat),
                    expected,
                    "({r},{s}) {w:?} {strat:?}"
                );
            }
        }
    }
}

#[test]
fn monomial_products_match_oracle() {
    let f = Field::gf(1);
    let ring = PolyRing::new(f, 2, 0).unwrap();
    let mut oracle = FreeWordOracle::new(f, 2, 0);
    let monos = ring.monomials_up_to(2);
    for a in &monos {
        for b in &monos {
            let ours = ring.mul(&PElem::mono(a.clone()), &PElem::mono(b.clone()));
            assert_eq!(ours, oracle.mono_product(a, b), "{a} * {b}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(ring in ring_strategy(), seed in any::<u64>()) {
        let f = ring.field;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_elem(&ring, &mut rng, 3, 3);
        let b = random_elem(&ring, &mut rng, 3, 3);
        let c = random_elem(&ring, &mut rng, 2, 3);
        prop_assert_eq!(ring.mul(&ring.mul(&a, &b), &c), ring.mul(&a, &ring.mul(&b, &c)));
        prop_assert_eq!(ring.mul(&a, &b.add(&f, &c)), ring.mul(&a, &b).add(&f, &ring.mul(&a, &c)));
        prop_assert_eq!(ring.mul(&ring.one(), &a), a.clone());
        let d = |p: &PElem| ring.p_d(p);
        prop_assert!(d(&d(&a)).is_zero());
        prop_assert_eq!(d(&ring.mul(&a, &b)), ring.mul(&d(&a), &b).add(&f, &ring.mul(&a, &d(&b))));
        let twisted = ring.mul(&b, &a).add(&f, &ring.mul(&d(&b), &d(&a)));
        prop_assert_eq!(ring.mul(&a, &b), twisted);
    }

    #[test]
    fn strategies_agree(ring in ring_strategy(), seed in any::<u64>(), len in 0usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&ring, &mut rng, len);
        let left = ring.reduce_word(&w, Rewrite::Leftmost);
        prop_assert_eq!(&ring.reduce_word(&w, Rewrite::Rightmost), &left);
        prop_assert_eq!(&ring.reduce_word(&w, Rewrite::Random(seed)), &left);
        let mut prod = ring.one();
        for &l in &w {
            prod = ring.mul(&prod, &ring.letter(l));
        }
        prop_assert_eq!(prod, left);
    }

    #[test]
    fn monomial_keys_are_compatible_with_degree(ring in ring_strategy()) {
        let monos = ring.monomials_up_to(3);
        for pair in monos.windows(2) {
            prop_assert!(pair[0].key() < pair[1].key());
            prop_assert!(pair[0].degree() <= pair[1].degree());
        }
        prop_assert_eq!(monos[0].clone(), PMono::one(ring.r, ring.s));
    }

    #[test]
    fn random_quotients_are_dalgebras(seed in any::<u64>()) {
        let f = Field::gf(2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_presentation(f, &mut rng);
        let q = quotient_to_dalgebra(&p).unwrap();
        prop_assert!(q.algebra.verify_axioms(AlgebraKind::DAlgebra).passed());
        for rel in &p.relations {
            prop_assert!(q.reduce(rel).iter().all(|c| c.is_zero()));
        }
        for (k, m) in q.basis.iter().enumerate() {
            let coords = q.reduce(&PElem::mono(m.clone()));
            prop_assert_eq!(q.lift(&coords), PElem::mono(m.clone()));
            prop_assert_eq!(coords, q.algebra.basis(k));
        }
        let ring = p.ring;
        let a = random_elem(&ring, &mut rng, 3, 3);
        let b = random_elem(&ring, &mut rng, 3, 3);
        let lhs = q.reduce(&ring.mul(&a, &b));
        let rhs = q.algebra.mul(&q.reduce(&a), &q.reduce(&b));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(q.reduce(&ring.p_d(&a)), q.algebra.apply_d(&q.reduce(&a)));
    }
}

#[test]
fn presentations_round_trip() {
    let f = Field::gf(2);
    for (name, a) in small_corpus(f, 2)
        .into_iter()
        .filter(|(_, a)| a.dim() <= 6 && a.dim() > 1)
    {
        let gens = greedy_generators(&a);
        let a = Arc::new(a);
        let bound = (1..=a.dim() + 1)
            .find(|&b| {
                present(&a, &gens, b)
                    .and_then(|(p, _)| quotient_to_dalgebra(&p))
                    .map(|q| q.algebra.dim() == a.dim())
                    .unwrap_or(false)
            })
            .unwrap_or_else(|| panic!("{name}: no bound closes"));
        let (p, order) = present(&a, &gens, bound).unwrap();
        let q = quotient_to_dalgebra(&p).unwrap();
        let r = p.ring.r;
        let hom = q.hom_to(a.clone(), &order[..r], &order[r..]).unwrap();
        assert!(hom.verify().passed(), "{name}");
    }
}
