use std::sync::Arc;

use super::*;
use crate::exactlin::quaternionic::omega;
use crate::exactlin::{Matrix, Ring, Scalar, Subspace, Vector};
use crate::flags::GeneralizedFlag;
use crate::liealg::{Family, MatrixLieSubalgebra};

const G: Ring = Ring::Gauss;

fn form(s: &str) -> Arc<RealForm> {
    build_real_form(s.parse().unwrap()).unwrap()
}

fn vec_g(v: &[(i64, i64)]) -> Vector {
    v.iter().map(|&(a, b)| Scalar::gauss(a, b)).collect()
}

fn stab_of(f: &Arc<RealForm>, members: &[Subspace]) -> (MatrixLieSubalgebra, RealSubalgebra) {
    let flag = GeneralizedFlag::new(members).unwrap();
    let pc = MatrixLieSubalgebra::flag_stabilizer(f.complex.clone(), &[&flag]).unwrap();
    let pr = f.intersect(&pc).unwrap();
    (pc, pr)
}

/// Dimension of the complex classical algebra, from the textbook formulas.
fn expected_dim(family: Family, n: usize) -> usize {
    match family {
        Family::GL => n * n,
        Family::SL => n * n - 1,
        Family::SO => n * (n - 1) / 2,
        Family::SP => n * (n + 1) / 2,
    }
}

#[test]
fn dimension_law_for_every_family() {
    let specs = [
        "sl(2,R)", "sl(4,R)", "sl(1,H)", "sl(2,H)", "su(1,1)", "su(2,2)", "su(0,3)", "so(2,2)",
        "so(3,1)", "so(4,0)", "so*(2)", "so*(4)", "sp(1,R)", "sp(2,R)", "sp(1,1)", "sp(2,0)",
        "gl(3,R)", "gl(2,H)", "u(1,2)", "u(4,0)",
    ];
    for s in specs {
        let f = form(s);
        let n = f.spec.complex_dim();
        assert_eq!(
            f.real.dim(),
            expected_dim(f.spec.complex_family(), n),
            "{s}"
        );
        assert_eq!(f.complex.dim(), f.real.dim(), "{s}");
    }
}

#[test]
fn unitary_forms_satisfy_their_equations() {
    let f = form("su(1,1)");
    let h = Matrix::from_ints(G, &[&[1, 0], &[0, -1]]);
    assert_eq!(f.real.dim(), 3);
    assert_eq!(f.forms[0].gram(), &h);
    for x in f.real.basis() {
        assert!((&(&x.adjoint() * &h) + &(&h * x)).is_zero());
        assert!(x.trace().is_zero());
    }
}

#[test]
fn quaternionic_forms_commute_with_j() {
    for s in ["sl(2,H)", "sp(1,1)", "so*(4)", "gl(1,H)"] {
        let f = form(s);
        let om = omega(f.spec.complex_dim() / 2);
        for x in f.real.basis() {
            assert_eq!(x * &om, &om * &x.conj(), "{s}");
        }
    }
}

#[test]
fn split_forms_are_real_matrices() {
    for s in ["sl(2,R)", "so(3,3)", "sp(2,R)"] {
        let f = form(s);
        for x in f.real.basis() {
            assert_eq!(&x.conj(), x, "{s}");
        }
    }
    let f = form("sl(2,R)");
    assert_eq!(f.tau.matrix, Matrix::identity(G, 2));
    assert_eq!(f.real.dim(), 3);
}

#[test]
fn kappa_on_the_unit_quaternion() {
    let f = form("so*(2)");
    let one = vec![Scalar::one(Ring::Quat)];
    assert_eq!(f.forms[0].value(&one, &one), Scalar::i_quat());
}

#[test]
fn complexification_of_su11_is_sl2() {
    let f = form("su(1,1)");
    let c = f.algebra().complexify().unwrap();
    assert!(c.is_whole());
    let zero = RealSubalgebra::new(f.clone(), &[]).unwrap();
    assert_eq!(zero.complexify().unwrap().dim(), 0);
}

#[test]
fn isotropic_line_in_su11() {
    let f = form("su(1,1)");
    let line = Subspace::span(G, 2, &[vec_g(&[(1, 0), (1, 0)])]).unwrap();
    let (pc, pr) = stab_of(&f, &[line]);
    assert_eq!(pr.dim(), 2);
    assert_eq!(pr.complexify().unwrap(), pc);
    let v = is_real_parabolic(&pr).unwrap();
    assert!(v.parabolic, "{v:?}");
    assert_eq!(v.trace_conditions, 0);
    assert_eq!(real_flag_count(&pr).unwrap(), 1);
}

#[test]
fn compact_form_has_no_proper_parabolics() {
    let f = form("su(2,0)");
    let (_, pr) = stab_of(&f, &[Subspace::coordinate(G, 2, &[0])]);
    assert_eq!(pr.dim(), 1);
    let v = is_real_parabolic(&pr).unwrap();
    assert!(!v.parabolic);
    assert_eq!(v.failing_stage().unwrap().name, "complex-parabolic");
    assert!(real_flag_count(&pr).is_err());
}

#[test]
fn whole_real_form_is_parabolic() {
    for s in ["su(1,2)", "so(2,2)", "sl(2,H)", "sp(1,1)"] {
        let v = is_real_parabolic(&form(s).algebra()).unwrap();
        assert!(v.parabolic, "{s}");
        assert!(v.complex_flags[0].is_trivial());
    }
}

#[test]
fn split_orthogonal_trichotomy_is_real() {
    let f = form("so(3,3)");
    let l = Subspace::coordinate(G, 6, &[0, 1]);
    let lp = f.forms[0].perp(&l).unwrap();
    let (_, pr) = stab_of(&f, &[l, lp]);
    assert_eq!(real_flag_count(&pr).unwrap(), 3);
}

#[test]
fn quaternionic_structure_collapses_the_trichotomy() {
    let f = form("so*(6)");
    // ⟨e0 + e3, e1 - e2⟩ is J-stable and isotropic
    let l = Subspace::span(
        G,
        6,
        &[
            vec_g(&[(1, 0), (0, 0), (0, 0), (1, 0), (0, 0), (0, 0)]),
            vec_g(&[(0, 0), (1, 0), (-1, 0), (0, 0), (0, 0), (0, 0)]),
        ],
    )
    .unwrap();
    let lp = f.complex.form().perp(&l).unwrap();
    let (_, pr) = stab_of(&f, &[l, lp]);
    let v = is_real_parabolic(&pr).unwrap();
    assert!(v.parabolic, "{v:?}");
    assert_eq!(v.complex_flags.len(), 3);
    assert_eq!(v.real_flag.as_ref().unwrap().ring(), Ring::Quat);
    assert_eq!(real_flag_count(&pr).unwrap(), 1);
}

#[test]
fn real_points_round_trip() {
    let s = Subspace::span(
        G,
        3,
        &[
            vec_g(&[(1, 0), (2, 0), (0, 0)]),
            vec_g(&[(0, 0), (0, 0), (1, 0)]),
        ],
    )
    .unwrap();
    let r = s.with_ring(Ring::Rat).unwrap();
    assert_eq!(r.with_ring(G).unwrap(), s);
    assert_eq!(r.with_ring(G).unwrap().with_ring(Ring::Rat).unwrap(), r);
}

#[test]
fn finite_unitary_flags_are_short() {
    let f = form("su(1,2)");
    let h = f.hermitian().unwrap();
    let line = Subspace::span(G, 3, &[vec_g(&[(1, 0), (1, 0), (0, 0)])]).unwrap();
    let lp = h.perp(&line).unwrap();
    let (_, pr) = stab_of(&f, &[line, lp]);
    let v = is_real_parabolic(&pr).unwrap();
    assert!(v.parabolic, "{v:?}");
    assert_eq!(v.trace_conditions, 0);
    assert!(isotropic_members(&v.complex_flags[0], &h).unwrap() <= 1);
}

#[test]
fn conjugations_square_correctly() {
    for s in ["sl(3,R)", "so(2,1)", "sp(1,R)"] {
        assert_eq!(form(s).tau.square_sign(), Some(1));
    }
    for s in ["sl(2,H)", "sp(1,1)", "so*(4)"] {
        let f = form(s);
        assert_eq!(f.j.as_ref().unwrap().square_sign(), Some(-1));
        assert_eq!(f.j.as_ref().unwrap().kind, ConjugationKind::Jstruct);
    }
}
