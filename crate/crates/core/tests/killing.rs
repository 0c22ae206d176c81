mod common;

use num_complex::Complex64;

use common::{Series, Solution, SERIES_TOL};
use tzitzeica::jet::SystemParams;
use tzitzeica::killing::{assemble_killing_field, build_connection, KillingChain, Mat3};
use tzitzeica::recursion::{p_step, v5};
use tzitzeica::DiffPoly;

type SMat = Vec<Vec<Series>>;

fn eval(sol: &Solution, m: &Mat3) -> SMat {
    m.e.iter()
        .map(|row| row.iter().map(|p| sol.eval(p)).collect())
        .collect()
}

fn mul(a: &SMat, b: &SMat) -> SMat {
    let deg = a[0][0].deg;
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| (0..3).fold(Series::zero(deg), |acc, k| acc.add(&a[i][k].mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

fn sub(a: &SMat, b: &SMat) -> SMat {
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| a[i][j].add(&b[i][j].scale(Complex64::new(-1.0, 0.0))))
                .collect()
        })
        .collect()
}

fn add(a: &SMat, b: &SMat) -> SMat {
    (0..3)
        .map(|i| (0..3).map(|j| a[i][j].add(&b[i][j])).collect())
        .collect()
}

fn bracket(a: &SMat, b: &SMat) -> SMat {
    sub(&mul(a, b), &mul(b, a))
}

fn size(a: &SMat, deg: usize) -> f64 {
    a.iter().flatten().map(|s| s.max_abs_up_to(deg)).fold(0.0, f64::max)
}

/// `∂X^m + [M₀, X^m] + [A₋₁, X^{m+1}]` and its `z̄` counterpart along a series solution.
fn check_killing_along_solution(seed: &DiffPoly) {
    let params = SystemParams::tzitzeica();
    let conn = build_connection(&params).unwrap();
    let chain = KillingChain::from_trace(&params, &p_step(&params, seed).unwrap()).unwrap();
    let x = assemble_killing_field(&chain, 0);
    let order = chain
        .fields()
        .iter()
        .filter_map(|(_, p)| p.max_u_order().max(p.max_ub_order()))
        .max()
        .unwrap() as usize;
    let sol = Solution::random(-1.0, order + 6, 31);
    let ev = |m: &Mat3| eval(&sol, m);
    for m in 1..=5 {
        let xm = ev(&x.get(m));
        let dz: SMat = xm.iter().map(|r| r.iter().map(Series::dz).collect()).collect();
        let dzb: SMat = xm.iter().map(|r| r.iter().map(Series::dzb).collect()).collect();
        let rz = add(
            &add(&dz, &bracket(&ev(&conn.zeta.get(0)), &xm)),
            &bracket(&ev(&conn.zeta.get(-1)), &ev(&x.get(m + 1))),
        );
        let rzb = add(
            &add(&dzb, &bracket(&ev(&conn.zetabar.get(0)), &xm)),
            &bracket(&ev(&conn.zetabar.get(1)), &ev(&x.get(m - 1))),
        );
        let scale = size(&dz, 2).max(size(&dzb, 2)).max(1e-300);
        assert!(
            size(&rz, 2) / scale < SERIES_TOL,
            "m = {}: dz residual {}",
            m,
            size(&rz, 2)
        );
        assert!(
            size(&rzb, 2) / scale < SERIES_TOL,
            "m = {}: dzb residual {}",
            m,
            size(&rzb, 2)
        );
    }
}

#[test]
fn killing_field_from_u0_is_parallel_along_solutions() {
    check_killing_along_solution(&DiffPoly::u(0));
}

#[test]
fn killing_field_from_the_quintic_is_parallel_along_solutions() {
    check_killing_along_solution(&v5());
}

#[test]
fn connection_is_flat_along_solutions() {
    let params = SystemParams::tzitzeica();
    let conn = build_connection(&params).unwrap();
    let sol = Solution::random(-1.0, 8, 2);
    let ev = |m: &Mat3| eval(&sol, m);
    for k in -2..=2 {
        let (mk, nk) = (ev(&conn.zeta.get(k)), ev(&conn.zetabar.get(k)));
        let dn: SMat = nk.iter().map(|r| r.iter().map(Series::dz).collect()).collect();
        let dm: SMat = mk.iter().map(|r| r.iter().map(Series::dzb).collect()).collect();
        let mut res = sub(&dn, &dm);
        for a in -1..=1 {
            res = add(&res, &bracket(&ev(&conn.zeta.get(a)), &ev(&conn.zetabar.get(k - a))));
        }
        assert!(size(&res, 3) < SERIES_TOL, "lambda^{}: {}", k, size(&res, 3));
    }
}
