mod common;

use addiso_core::isometry::CodeMap;
use addiso_core::kspace::enumerate_subspaces;
use addiso_core::sweep::sweep_theorem;
use addiso_core::text::{
    field_descriptor, format_code, format_map, format_report, format_subspace, parse_code, parse_field, parse_map,
    parse_report, parse_subspace,
};
use addiso_core::{Error, FieldL, LMatrix, SweepParams};
use common::{ex2, ex3_image, f4, field, random_code, random_rows};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fields() -> Vec<FieldL> {
    vec![
        field(2, 1, 2),
        field(3, 1, 2),
        field(2, 2, 2),
        field(2, 1, 1),
        field(5, 1, 3),
        parse_field("GF(2)^3[1,0,1,1]").unwrap(),
        parse_field("GF(3^2)[2,2,1]^2").unwrap(),
    ]
}

#[test]
fn descriptors_round_trip() {
    for l in fields() {
        assert_eq!(parse_field(&field_descriptor(&l)).unwrap(), l);
    }
    assert_eq!(parse_field("GF(2)^3[1,0,1,1]").unwrap().modulus().len(), 4);
    assert_ne!(parse_field("GF(2)^3[1,0,1,1]").unwrap(), field(2, 1, 3));
}

#[test]
fn subspaces_round_trip() {
    for q in [2u64, 3, 4] {
        let kf = addiso_core::FieldK::with_order(q).unwrap();
        for s in enumerate_subspaces(&kf, 3, None).unwrap() {
            assert_eq!(parse_subspace(&kf, 3, &format_subspace(&s)).unwrap(), s);
        }
    }
}

#[test]
fn example_map_file() {
    let l = f4();
    let text = "# unextendible example\nfield GF(2)^2\nk 3\nm 3\ngenerator\n1 1 0\n2 2 0\n1 0 1\nimage\n1 1 0\n1 0 1\n2 2 0\n";
    let f = parse_map(text).unwrap();
    assert_eq!(f, CodeMap::new(ex2(&l), LMatrix::new(&l, 3, ex3_image(&l)).unwrap()).unwrap());
    assert_eq!(parse_map(&format_map(&f)).unwrap(), f);
}

#[test]
fn malformed_inputs_report_positions() {
    let cases = [
        ("field GF(2)^2\nk 1\nm 2\ngenerator\n1 7\n", 5, 3),
        ("field GF(2)^2\nk x\n", 2, 3),
        ("fld GF(2)^2\n", 1, 1),
        ("field GF(2)^2\nk 1\nm 2\ngenerator\n1 1\nextra\n", 6, 1),
        ("field GF(4)^2\nk 1\nm 1\ngenerator\n[1,4]\n", 5, 1),
    ];
    for (text, line, col) in cases {
        match parse_code(text) {
            Err(Error::Parse { line: l, col: c, .. }) => assert_eq!((l, c), (line, col), "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
}

#[test]
fn reports_round_trip() {
    let l = f4();
    let r = sweep_theorem(&l, &SweepParams::new(3, 2)).unwrap();
    assert!(!r.witnesses.is_empty());
    let text = format_report(&r);
    assert_eq!(parse_report(&text).unwrap(), r);
    assert_eq!(format_report(&parse_report(&text).unwrap()), text);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn codes_and_maps_round_trip(seed in any::<u64>(), which in 0usize..7, m in 1usize..5, k in 0usize..4) {
        let l = &fields()[which];
        let k = k.min(l.degree() * m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_code(&mut rng, l, k, m);
        prop_assert_eq!(&parse_code(&format_code(&a)).unwrap(), &a);
        let f = CodeMap::new(a, LMatrix::new(l, m, random_rows(&mut rng, l, k, m)).unwrap()).unwrap();
        prop_assert_eq!(parse_map(&format_map(&f)).unwrap(), f);
    }
}
