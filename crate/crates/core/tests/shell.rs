use std::io::Write;
use std::process::{Command as Proc, Stdio};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use svec2::corpus::{random_basis_change, random_defect_one, random_presentation, small_corpus};
use svec2::dalgebra::AlgebraKind;
use svec2::dim7::make_d;
use svec2::ground::{Fe, Field};
use svec2::lie2::{commutator_lie, gl_object, jordan_block};
use svec2::pbw::axiom_four_violation;
use svec2::shell::{
    exit_code, parse_presentation, print_algebra, print_lie, print_presentation, run, AlgebraFile,
    Command, Options, EXIT_AXIOM, EXIT_NEEDS_EXTENSION, EXIT_OK, EXIT_OTHER, EXIT_PARSE,
    EXIT_THEOREM,
};
use svec2::Error;

const FIELD_ROOT: &str = "P(0,1) / [y1^2 + y1 + 1] @ deg 2";

fn cli(args: &[&str], input: &str) -> (i32, String) {
    let mut child = Proc::new(env!("CARGO_BIN_EXE_svec2"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

#[test]
fn algebra_files_round_trip() {
    for (name, a) in small_corpus(Field::gf(3), 8) {
        let text = print_algebra(&a, AlgebraKind::DAlgebra);
        let file = AlgebraFile::parse(&text).unwrap();
        let (kind, b) = file.to_algebra().unwrap();
        assert_eq!(kind, AlgebraKind::DAlgebra, "{name}");
        assert_eq!(b.structure_tensor(), a.structure_tensor(), "{name}");
        assert_eq!(b.dmat(), a.dmat(), "{name}");
        assert_eq!(b.labels(), a.labels(), "{name}");
        assert_eq!(print_algebra(&b, kind), text, "{name}");
    }
}

#[test]
fn lie_files_round_trip() {
    let f = Field::gf(2);
    for l in [
        commutator_lie(&gl_object(f, 2, &jordan_block(f, 2)).unwrap()),
        axiom_four_violation(f),
    ] {
        let text = print_lie(&l);
        assert!(!text.contains("unit"));
        let back = AlgebraFile::parse(&text).unwrap().build_lie().unwrap();
        assert_eq!(back.bracket_tensor(), l.bracket_tensor());
        assert_eq!(back.dmat(), l.dmat());
        assert_eq!(print_lie(&back), text);
    }
    let bad = print_lie(&axiom_four_violation(f));
    assert!(AlgebraFile::parse(&bad).unwrap().to_lie().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn random_algebra_files_round_trip(seed in any::<u64>(), k in 1u8..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, _) = random_basis_change(&random_defect_one(Field::gf(k), &mut rng), &mut rng);
        let text = print_algebra(&a, AlgebraKind::DAlgebra);
        let (_, b) = AlgebraFile::parse(&text).unwrap().to_algebra().unwrap();
        prop_assert_eq!(b.structure_tensor(), a.structure_tensor());
        prop_assert_eq!(b.dmat(), a.dmat());
    }

    #[test]
    fn presentations_print_and_parse(seed in any::<u64>(), k in 1u8..=8) {
        let f = Field::gf(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_presentation(f, &mut rng);
        let text = print_presentation(&p);
        let back = parse_presentation(&text, f).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(print_presentation(&back), text);
    }
}

#[test]
fn parse_errors_carry_positions() {
    let f = Field::gf(2);
    for src in [
        "P(1,0) / [x1^2 + ] @ deg 2",
        "P(1,0) / [x1 x1 @ deg 2",
        "Q(1,0) / [] @ deg 1",
        "P(1,0) / [x1 - x1] @ deg 2",
    ] {
        assert!(
            matches!(parse_presentation(src, f), Err(Error::Syntax { .. })),
            "{src}"
        );
    }
    assert!(matches!(
        parse_presentation("P(1,0) / [x2] @ deg 2", f),
        Err(Error::IndexOutOfRange { .. })
    ));
    assert!(matches!(
        parse_presentation("P(0,1) / [9 y1] @ deg 2", f),
        Err(Error::Syntax { .. })
    ));
    let p = parse_presentation("P(1,1) / [x1^2 + 3 xi1 y1, (y1 + 1)^2] @ deg 3", f).unwrap();
    assert_eq!(p.relations.len(), 2);
}

#[test]
fn exit_codes_by_error_class() {
    assert_eq!(
        exit_code(&Error::TheoremViolation("x".into())),
        EXIT_THEOREM
    );
    assert_eq!(exit_code(&Error::BadDifferential), EXIT_AXIOM);
    assert_eq!(
        exit_code(&Error::NeedsExtension { k: 1 }),
        EXIT_NEEDS_EXTENSION
    );
    assert_eq!(
        exit_code(&Error::IndexOutOfRange { index: 3, limit: 2 }),
        EXIT_PARSE
    );
    assert_eq!(exit_code(&Error::DivideByZero), EXIT_OTHER);
}

#[test]
fn library_subcommands_on_the_family() {
    let f = Field::gf(3);
    let a = make_d(f, Fe::ZERO, Fe(5), Fe(2)).unwrap();
    let text = print_algebra(&a, AlgebraKind::DAlgebra);
    let opts = Options::default();
    for cmd in [
        Command::Check,
        Command::Invariants,
        Command::Decompose,
        Command::Classify7,
        Command::Present,
    ] {
        let rep = run(cmd, &opts, &text);
        assert_eq!(rep.code, EXIT_OK, "{}: {:?}", cmd.name(), rep.entries);
    }
    let inv = run(Command::Invariants, &opts, &text);
    assert_eq!(inv.get("dim"), Some("7"));
    assert_eq!(inv.get("defect"), Some("1"));
    let cls = run(Command::Classify7, &opts, &text);
    assert_eq!(cls.get("doublings"), Some("0"));
}

#[test]
fn cli_exit_codes() {
    let a = make_d(Field::gf(2), Fe::ZERO, Fe(1), Fe(3)).unwrap();
    let file = print_algebra(&a, AlgebraKind::DAlgebra);
    let (code, out) = cli(&["check", "--format", "kv"], &file);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("status=pass"));

    let (code, _) = cli(&["check"], "P(1,0) / [x1^2 +] @ deg 2");
    assert_eq!(code, 2);

    let broken = file.replacen("\nd\n0 0 0 0 0 0 0\n", "\nd\n1 0 0 0 0 0 0\n", 1);
    assert_ne!(broken, file);
    let (code, out) = cli(&["check"], &broken);
    assert_eq!(code, 3, "{out}");

    let (code, out) = cli(&["check", "--field", "1", "--format", "kv"], FIELD_ROOT);
    assert_eq!(code, 5, "{out}");
    assert!(out.contains("suggested_field=gf2_2"), "{out}");

    let small = make_d(Field::gf(1), Fe(1), Fe(1), Fe::ZERO).unwrap();
    let (code, out) = cli(
        &["classify7", "--format", "kv"],
        &print_algebra(&small, AlgebraKind::DAlgebra),
    );
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("doublings=1"), "{out}");

    let f = Field::gf(2);
    let lie = print_lie(&commutator_lie(
        &gl_object(f, 2, &jordan_block(f, 2)).unwrap(),
    ));
    let (code, out) = cli(&["pbw-verify", "--bound", "3", "--trials", "30"], &lie);
    assert_eq!(code, 0, "{out}");
    let (code, out) = cli(
        &[
            "confluence",
            "--trials",
            "50",
            "--seed",
            "4",
            "--format",
            "kv",
        ],
        &lie,
    );
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("discrepancies=0"), "{out}");
    let (code, _) = cli(&["pbw-verify"], &print_lie(&axiom_four_violation(f)));
    assert_eq!(code, 3);
}
