//! Eigenspaces `g_0, …, g_5` of the order-six automorphism `τ(X) = R(−ᵗX)R⁻¹`.

use crate::algebra::{DiffPoly, Scalar};

use super::mat3::Mat3;

fn i() -> DiffPoly {
    DiffPoly::constant(Scalar::i())
}

fn z() -> DiffPoly {
    DiffPoly::zero()
}

/// `g_0 ∋ [[0,0,0],[0,0,−A],[0,A,0]]`.
pub fn g0(a: &DiffPoly) -> Mat3 {
    Mat3 {
        e: [[z(), z(), z()], [z(), z(), -a], [z(), a.clone(), z()]],
    }
}

/// `g_1 ∋ [[0,−B,−iB],[B,C,−iC],[iB,−iC,−C]]`.
pub fn g1(b: &DiffPoly, c: &DiffPoly) -> Mat3 {
    let (ib, ic) = (&i() * b, &i() * c);
    Mat3 {
        e: [[z(), -b, -&ib], [b.clone(), c.clone(), -&ic], [ib, -&ic, -c]],
    }
}

/// `g_2 ∋ [[0,F,−iF],[F,0,0],[−iF,0,0]]`.
pub fn g2(f: &DiffPoly) -> Mat3 {
    let fi = &i() * f;
    Mat3 {
        e: [[z(), f.clone(), -&fi], [f.clone(), z(), z()], [-&fi, z(), z()]],
    }
}

/// `g_3 ∋ diag(−2R, R, R)`.
pub fn g3(r: &DiffPoly) -> Mat3 {
    Mat3 {
        e: [
            [r.scale_int(-2), z(), z()],
            [z(), r.clone(), z()],
            [z(), z(), r.clone()],
        ],
    }
}

/// `g_4 ∋ [[0,S,iS],[S,0,0],[iS,0,0]]`.
pub fn g4(s: &DiffPoly) -> Mat3 {
    let si = &i() * s;
    Mat3 {
        e: [[z(), s.clone(), si.clone()], [s.clone(), z(), z()], [si, z(), z()]],
    }
}

/// `g_5 ∋ [[0,−T,iT],[T,V,iV],[−iT,iV,−V]]`.
pub fn g5(t: &DiffPoly, v: &DiffPoly) -> Mat3 {
    let (it, iv) = (&i() * t, &i() * v);
    Mat3 {
        e: [
            [z(), -t, it.clone()],
            [t.clone(), v.clone(), iv.clone()],
            [-&it, iv, -v],
        ],
    }
}

/// Coordinates `(A, B, C, F, R, S, T, V)` of the trace-free part of `m`.
pub fn coordinates(m: &Mat3) -> [DiffPoly; 8] {
    let e = &m.e;
    let half = Scalar::frac(1, 2);
    let quarter = Scalar::frac(1, 4);
    let i = i();
    let tr = m.trace().scale(&Scalar::frac(1, 3));
    let r = (&e[0][0] - &tr).scale(&-&half);
    let a = (&e[2][1] - &e[1][2]).scale(&half);
    let diff = (&e[1][1] - &e[2][2]).scale(&half);
    let sym = &i * &(&e[1][2] + &e[2][1]).scale(&half);
    let c = (&diff + &sym).scale(&half);
    let v = (&diff - &sym).scale(&half);
    let x1 = e[0][1].clone();
    let x2 = -&(&i * &e[0][2]);
    let x3 = e[1][0].clone();
    let x4 = -&(&i * &e[2][0]);
    let s = (&(&x1 + &x3) + &(&x2 + &x4)).scale(&quarter);
    let f = (&(&x1 + &x3) - &(&x2 + &x4)).scale(&quarter);
    let b = (&(&x3 - &x1) + &(&x4 - &x2)).scale(&quarter);
    let t = (&(&x3 - &x1) - &(&x4 - &x2)).scale(&quarter);
    [a, b, c, f, r, s, t, v]
}

/// Component of `m` in `g_j`, `j` taken mod 6.
pub fn eigenspace_project(m: &Mat3, j: i32) -> Mat3 {
    let [a, b, c, f, r, s, t, v] = coordinates(m);
    match j.rem_euclid(6) {
        0 => g0(&a),
        1 => g1(&b, &c),
        2 => g2(&f),
        3 => g3(&r),
        4 => g4(&s),
        _ => g5(&t, &v),
    }
}

/// Whether `m` lies in `g_j`.
pub fn in_eigenspace(m: &Mat3, j: i32) -> bool {
    &eigenspace_project(m, j) == m
}

/// Basis of `g_j` with unit coordinates.
pub fn basis(j: i32) -> Vec<Mat3> {
    let one = DiffPoly::one();
    match j.rem_euclid(6) {
        0 => vec![g0(&one)],
        1 => vec![g1(&one, &z()), g1(&z(), &one)],
        2 => vec![g2(&one)],
        3 => vec![g3(&one)],
        4 => vec![g4(&one)],
        _ => vec![g5(&one, &z()), g5(&z(), &one)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Matrix3;
    use num_complex::Complex64;
    use std::collections::HashMap;

    #[test]
    fn projection_is_idempotent_and_complete() {
        let g = basis(0).remove(0);
        assert_eq!(eigenspace_project(&g, 0), g);
        assert!(eigenspace_project(&g, 1).is_zero());
        let (one, i) = (Scalar::one(), Scalar::i());
        let m = Mat3::from_fn(|r, c| {
            DiffPoly::u(0)
                .scale_int((r * 3 + c) as i64 + 1)
                .scale(if r == c { &one } else { &i })
        });
        let m = &m - &Mat3::identity().mul_fn(&m.trace().scale(&Scalar::frac(1, 3)));
        let mut sum = Mat3::zero();
        for j in 0..6 {
            sum = &sum + &eigenspace_project(&m, j);
        }
        assert_eq!(sum, m);
    }

    #[test]
    fn brackets_respect_the_grading() {
        for i in 0..6 {
            for j in 0..6 {
                for x in basis(i) {
                    for y in basis(j) {
                        assert!(in_eigenspace(&x.bracket(&y), i + j), "[g{}, g{}]", i, j);
                    }
                }
            }
        }
    }

    #[test]
    fn blocks_are_eigenvectors_of_tau() {
        let (s, c) = (std::f64::consts::FRAC_PI_3.sin(), std::f64::consts::FRAC_PI_3.cos());
        let re = |x: f64| Complex64::new(x, 0.0);
        let rot = Matrix3::new(re(1.0), re(0.0), re(0.0), re(0.0), re(c), re(-s), re(0.0), re(s), re(c));
        let rinv = rot.transpose();
        let num = |m: &Mat3| Matrix3::from_fn(|r, k| m.e[r][k].eval_numeric(&HashMap::new(), 0.0).unwrap());
        let mu: Vec<Complex64> = (0..6)
            .map(|j| {
                let x = num(&basis(j)[0]);
                let tx = rot * (-x.transpose()) * rinv;
                let (r, k) = (0..9)
                    .map(|n| (n / 3, n % 3))
                    .find(|&(r, k)| x[(r, k)].norm() > 0.5)
                    .unwrap();
                let ev = tx[(r, k)] / x[(r, k)];
                for b in basis(j) {
                    let xb = num(&b);
                    assert!((rot * (-xb.transpose()) * rinv - xb * ev).norm() < 1e-12, "g{}", j);
                }
                ev
            })
            .collect();
        // a single primitive sixth root of unity
        let base = mu[1];
        assert!((base.powi(6) - re(1.0)).norm() < 1e-12 && (base.powi(3) + re(1.0)).norm() < 1e-12);
        for (j, m) in mu.iter().enumerate() {
            assert!((base.powi(j as i32) - m).norm() < 1e-12);
        }
    }
}
