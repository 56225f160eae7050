mod common;

use std::fs;

use knotmod::acmoves::{ACMove, ACPresentation};
use knotmod::constructions::{realize_sum, realize_t_action, realize_t_minus_one, realize_trotter, KnotModuleSpec};
use knotmod::enumerate::{todd_coxeter, weight_one_certificate, Certificate};
use knotmod::intlinalg::IntMatrix;
use knotmod::laurent::LaurentPoly;
use knotmod::presentations::{Presentation, TietzeScript};
use knotmod::words::{gen, Generator, Word};
use rand::Rng;

fn read(name: &str) -> String {
    fs::read_to_string(common::corpus_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn pres(name: &str) -> Presentation {
    Presentation::parse(&read(name)).unwrap()
}

#[test]
fn corpus_files_parse_and_round_trip() {
    let mut seen = 0;
    for entry in fs::read_dir(common::corpus_dir()).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        match path.extension().and_then(|e| e.to_str()) {
            Some("pres") => {
                let p = Presentation::parse(&text).unwrap();
                assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p, "{}", path.display());
            }
            Some("mat") => {
                let m = IntMatrix::parse(&text).unwrap();
                assert_eq!(IntMatrix::parse(&m.to_text()).unwrap(), m);
            }
            Some("module") => {
                KnotModuleSpec::load(&path).unwrap();
            }
            Some("tietze") => {
                let s = TietzeScript::parse(&text).unwrap();
                assert_eq!(TietzeScript::parse(&s.to_text()).unwrap(), s);
            }
            _ => continue,
        }
        seen += 1;
    }
    assert!(seen >= 15, "only {seen} corpus files");
}

#[test]
fn bundled_presentations_are_current() {
    let m = |f: &str| IntMatrix::parse(&read(f)).unwrap();
    let cases = [
        ("trotter2.pres", realize_trotter(&m("trotter2.mat")).unwrap()),
        ("trotter_companion.pres", realize_trotter(&m("trotter_companion.mat")).unwrap()),
        ("tminus1_companion.pres", realize_t_minus_one(&m("tminus1_companion.mat")).unwrap()),
        ("taction_companion.pres", realize_t_action(&m("taction_companion.mat")).unwrap()),
        (
            "trefoil_sum.pres",
            realize_sum(&[LaurentPoly::from_coeffs(&[1, -1, 1]), LaurentPoly::from_coeffs(&[2, -1])]).unwrap(),
        ),
    ];
    for (file, result) in cases {
        assert_eq!(&pres(file), result.best_presentation(), "{file}");
    }
}

#[test]
fn corpus_knot_groups_have_weight_one() {
    for file in [
        "spun_trefoil.pres",
        "trotter2.pres",
        "trotter_companion.pres",
        "tminus1_companion.pres",
        "taction_companion.pres",
        "trefoil_sum.pres",
    ] {
        let cert = weight_one_certificate(&pres(file), &gen("t"), 200).unwrap();
        assert_eq!(cert, Certificate::Certified, "{file}");
    }
}

fn finite_balanced() -> Vec<ACPresentation> {
    let ac = |g: &[&str], r: &[&str]| {
        ACPresentation::new(g.iter().map(|n| gen(n)).collect(), r.iter().map(|w| Word::parse(w).unwrap()).collect())
            .unwrap()
    };
    vec![
        ac(&["a"], &["a^5"]),
        ac(&["a", "b"], &["a^2 b^-2", "a b a b^-1"]),
        ac(&["a", "b"], &["a^3", "a b a b^-2"]),
        ac(&["a", "b"], &["a b a^-1 b^-2", "b a b^-1 a^-2"]),
    ]
}

#[test]
fn moves_preserve_coset_indices() {
    let mut rng = common::rng(0xc05e7);
    let mut compared = 0;
    for start in finite_balanced() {
        let order = todd_coxeter(&start.to_presentation(), &[], 5000).unwrap().index();
        let mut state = start;
        for step in 0..40 {
            let n = state.relators().len();
            let gens = state.generators().to_vec();
            let mv = match rng.gen_range(0..4) {
                0 => ACMove::Invert(rng.gen_range(0..n)),
                1 => ACMove::Conjugate {
                    relator: rng.gen_range(0..n),
                    generator: gens[rng.gen_range(0..gens.len())].clone(),
                    sign: if rng.gen_bool(0.5) { 1 } else { -1 },
                },
                2 => ACMove::Multiply(rng.gen_range(0..n), rng.gen_range(0..n)),
                _ => ACMove::AddPair {
                    name: Generator::indexed("y", step),
                    word: common::random_word(&mut rng, &gens, 3),
                },
            };
            let Ok(next) = state.apply(&mv) else { continue };
            if next.total_length() > 40 {
                continue;
            }
            let index = todd_coxeter(&next.to_presentation(), &[], 5000).unwrap().index();
            if let (Some(a), Some(b)) = (order, index) {
                assert_eq!(a, b, "`{mv}` on {}", state.to_presentation());
                compared += 1;
            }
            state = next;
        }
    }
    assert!(compared > 50, "only {compared} comparisons closed");
}

#[test]
fn module_spec_files_resolve_matrices_relative_to_themselves() {
    let spec = KnotModuleSpec::load(&common::corpus_dir().join("tminus1_companion.module")).unwrap();
    assert!(matches!(spec, KnotModuleSpec::TMinusOneAction(_)));
    assert!(spec.order().unwrap().eq_up_to_unit(&LaurentPoly::from_coeffs(&[1, -1, 1])));
    let spec = KnotModuleSpec::load(&common::corpus_dir().join("trefoil_sum.module")).unwrap();
    assert!(spec.order().unwrap().eq_up_to_unit(&LaurentPoly::from_coeffs(&[2, -3, 3, -1])));
}
