use ghcat_core::cuntz_formal::{
    apply_rho, verify_intertwiners, verify_qsystem_isometry, FormalAlgebra, FormalElement, FormalError, Generator,
};
use ghcat_core::catalog_solution;
use num_complex::Complex64;
use proptest::prelude::*;

fn letter(n: usize) -> impl Strategy<Value = (Generator, bool)> {
    let g = prop_oneof![Just(Generator::S), (0..n).prop_map(Generator::T)];
    (g, any::<bool>())
}

fn monomial(n: usize) -> impl Strategy<Value = FormalElement> {
    (prop::collection::vec(letter(n), 0..4), 0..n, -2i32..3)
        .prop_map(|(ls, l, c)| FormalElement::word(&ls, l).scale(Complex64::new(c as f64 + 0.5, 1.0)))
}

fn element(n: usize) -> impl Strategy<Value = FormalElement> {
    prop::collection::vec(monomial(n), 1..3).prop_map(|ms| ms.iter().fold(FormalElement::zero(), |a, m| a.add(m)))
}

fn same(alg: &FormalAlgebra, x: &FormalElement, y: &FormalElement) -> Result<bool, FormalError> {
    let diff = x.sub(y);
    if diff.is_empty() {
        return Ok(true);
    }
    alg.is_zero(&diff, 1e-10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // The reduced form must not depend on the order in which products are associated.
    #[test]
    fn rewriting_is_associative(a in element(4), b in element(4), c in element(4)) {
        let alg = FormalAlgebra::from_solution(&catalog_solution("Z4-qsystem").unwrap());
        let left = alg.multiply(&alg.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = alg.multiply(&a, &alg.multiply(&b, &c).unwrap()).unwrap();
        prop_assert!(left.sub(&right).is_empty(), "({:?})", left.sub(&right));
    }

    #[test]
    fn adjoint_is_antimultiplicative(a in element(3), b in element(3)) {
        let alg = FormalAlgebra::from_solution(&catalog_solution("Z3-haagerup").unwrap());
        let ab = alg.multiply(&a, &b).unwrap();
        let lhs = alg.adjoint(&ab);
        let rhs = alg.multiply(&alg.adjoint(&b), &alg.adjoint(&a)).unwrap();
        prop_assert!(lhs.sub(&rhs).is_empty());
    }

    #[test]
    fn rho_is_multiplicative(a in monomial(3), b in monomial(3)) {
        let s = catalog_solution("Z3-haagerup").unwrap();
        let alg = FormalAlgebra::from_solution(&s);
        let ab = alg.multiply(&a, &b).unwrap();
        let lhs = apply_rho(&ab, &s).unwrap();
        let rhs = alg.multiply(&apply_rho(&a, &s).unwrap(), &apply_rho(&b, &s).unwrap()).unwrap();
        match same(&alg, &lhs, &rhs) {
            Ok(ok) => prop_assert!(ok),
            Err(FormalError::Undecidable) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn intertwiners_hold_on_catalog() {
    for name in ["Z3-haagerup", "Z3-accompanying", "Z4-qsystem", "Z4-accompanying", "Z2-a7"] {
        let r = verify_intertwiners(&catalog_solution(name).unwrap(), 1e-9).unwrap();
        assert!(r.passes(), "{name}: {r:?}");
    }
}

#[test]
fn isometry_requires_q1() {
    for name in ["Z3-haagerup", "Z4-qsystem"] {
        assert!(verify_qsystem_isometry(&catalog_solution(name).unwrap(), 1e-10).unwrap().passes(), "{name}");
    }
    let err = verify_qsystem_isometry(&catalog_solution("Z3-accompanying").unwrap(), 1e-10);
    assert!(matches!(err, Err(FormalError::Precondition(_))));
}

#[test]
fn perturbed_amplitudes_break_the_intertwiner() {
    let mut s = catalog_solution("Z3-haagerup").unwrap();
    let v = s.amp(0, 1, 2);
    s.set_amp(0, 1, 2, v + Complex64::new(1e-3, 0.0));
    let r = verify_intertwiners(&s, 1e-9).unwrap();
    assert!(!r.passes());
}
