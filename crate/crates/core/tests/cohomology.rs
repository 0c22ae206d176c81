mod common;

use common::{Solution, SERIES_TOL};
use tzitzeica::cohomology::{
    closed_mod_ideal, finite_type_rank, phi_rep, phi_tilde, q_classical, translation_gauge, SampleTable,
};
use tzitzeica::jet::{OneFormModI, SystemParams};
use tzitzeica::recursion::{p_step, v5};
use tzitzeica::{DiffPoly, Scalar};

fn order(ps: &[&DiffPoly]) -> usize {
    ps.iter()
        .filter_map(|p| p.max_u_order().max(p.max_ub_order()))
        .max()
        .unwrap_or(0) as usize
}

fn closed_along_solutions(w: &OneFormModI) -> bool {
    let sol = Solution::random(-1.0, order(&[&w.p, &w.q]) + 6, 17);
    sol.closedness_residual(&w.p, &w.q, 2) < SERIES_TOL
}

#[test]
fn representatives_are_closed_along_solutions() {
    let params = SystemParams::tzitzeica();
    let q = q_classical();
    for (a, i) in [(DiffPoly::u(0), 1), (v5(), 3)] {
        for w in [phi_tilde(&params, &q, &a), phi_rep(&params, &a, i)] {
            assert!(closed_mod_ideal(&params, &w).is_zero());
            assert!(closed_along_solutions(&w), "{}", w);
        }
    }
}

#[test]
fn non_kernel_input_gives_a_non_closed_form() {
    let params = SystemParams::tzitzeica();
    let w = phi_tilde(&params, &q_classical(), &DiffPoly::u(1));
    assert!(!closed_mod_ideal(&params, &w).is_zero());
    assert!(!closed_along_solutions(&w));
}

#[test]
fn gauge_potentials_hold_along_solutions() {
    let params = SystemParams::tzitzeica();
    let p7 = p_step(&params, &DiffPoly::u(0)).unwrap().a_next;
    for p in [DiffPoly::u(0), v5(), p7] {
        let g = translation_gauge(&params, &p, 4).unwrap();
        let target = &phi_tilde(&params, &p, &q_classical()) - &g.phi_hat;
        let sol = Solution::random(-1.0, order(&[&g.g, &target.p, &target.q]) + 6, 23);
        assert!(sol.potential_residual(&g.g, &target.p, &target.q, 2) < SERIES_TOL);
        let wa = phi_tilde(&params, &p, &DiffPoly::u(0));
        assert!(sol.potential_residual(&g.a, &wa.p, &wa.q, 2) < SERIES_TOL);
        assert!(closed_along_solutions(&g.phi_hat));
    }
}

#[test]
fn rank_on_sampled_jets() {
    let params = SystemParams::tzitzeica();
    let p7 = p_step(&params, &DiffPoly::u(0)).unwrap().a_next;
    let t = SampleTable::random(20, 6, 77);
    let r = finite_type_rank(&t, &[DiffPoly::u(0), v5(), p7.clone()]).unwrap();
    assert_eq!(r.rank, 6);
    assert!(r.certificate.is_none());
    let combo = &v5().scale(&Scalar::frac(3, 2)) - &DiffPoly::u(0).scale(&Scalar::i());
    let r = finite_type_rank(&t, &[DiffPoly::u(0), v5(), combo]).unwrap();
    assert_eq!(r.rank, 4);
    let c = r.certificate.unwrap();
    assert_eq!(c.spanning, 2);
    assert_eq!(c.exact, Some(true));
}
