//! Frozen values on small manifolds, computed once and cross-checked
//! against the brute-force state sums.

use num_complex::Complex64;
use tv4_core::tvr::DEFAULT_BUDGET;
use tv4_core::*;

const TOL: f64 = 1e-9;

const S2XS1: &str = "tets 2\n1:2130 0:1302 1:2130 0:2031\n1:1230 1:3012 0:3102 0:3102\n";
const TWO_TET_SPHERE: &str = "tets 2\n1:3120 0:1230 0:3012 1:2031\n1:2103 0:1302 1:2103 0:3120\n";
const TET_DOUBLE: &str = "tets 2\n1:0123 1:0123 1:0123 1:0123\n0:0123 0:0123 0:0123 0:0123\n";

fn d(a: i64, b: i64, k: u32) -> DyadicSqrt2 {
    DyadicSqrt2::new(a, b, k)
}

fn lens(p: u64, q: i64) -> Triangulation {
    generate_lens_space(p, q).unwrap()
}

#[test]
fn projective_space() {
    let t = lens(2, 1);
    let r1 = tv4_compute(&t, 1).unwrap();
    let r3 = tv4_compute(&t, 3).unwrap();
    assert_eq!(r1.normalized, d(2, -1, 2));
    assert_eq!(r3.normalized, d(2, 1, 2));
    assert_eq!(r1.polynomial.to_string(), "2z^-1 + 2");
    assert_eq!(r1.triple, [d(1, 0, 1), d(0, 0, 0), d(0, -1, 2)]);
}

#[test]
fn three_sphere_in_three_triangulations() {
    for text in [TWO_TET_SPHERE, TET_DOUBLE] {
        let t = parse_triangulation(text).unwrap();
        assert!(integral_h1(&t).is_trivial());
        for q in [1, 3, 5, 7] {
            assert_eq!(tv4_compute(&t, q).unwrap().normalized, d(1, 0, 2));
        }
    }
    let double = parse_triangulation(TET_DOUBLE).unwrap();
    assert_eq!(tv4_compute(&double, 1).unwrap().polynomial.to_string(), "8 + 28z^2");
    let one_tet = lens(1, 0);
    assert_eq!(tv4_compute(&one_tet, 1).unwrap().normalized, d(1, 0, 2));
}

#[test]
fn sphere_cross_circle() {
    let t = parse_triangulation(S2XS1).unwrap();
    assert_eq!(integral_h1(&t).to_string(), "Z");
    let r = tv4_compute(&t, 1).unwrap();
    assert_eq!(r.normalized, DyadicSqrt2::one());
    assert_eq!(r.triple, [d(1, 0, 1), d(1, 0, 1), d(0, 0, 0)]);
    let tv5 = tv_r_bruteforce(&t, 5, 1, DEFAULT_BUDGET).unwrap();
    assert!((tv5 - Complex64::new(1.0, 0.0)).norm() < TOL);
}

#[test]
fn small_lens_values() {
    let cases: [(u64, i64, DyadicSqrt2, &str); 6] = [
        (3, 1, d(1, 0, 2), "1"),
        (4, 1, d(1, 0, 1), "2"),
        (5, 2, d(1, 0, 2), "1"),
        (6, 1, d(2, 1, 2), "-2z^-1 + 2"),
        (8, 3, d(1, 0, 0), "4"),
        (12, 5, d(1, 0, 1), "2"),
    ];
    for (p, q, value, poly) in cases {
        let r = tv4_compute(&lens(p, q), 1).unwrap();
        assert_eq!(r.normalized, value, "L({p},{q})");
        assert_eq!(r.polynomial.to_string(), poly, "L({p},{q})");
    }
}

#[test]
fn tv5_separates_lens_spaces_that_tv4_does_not() {
    let (a, b) = (lens(5, 1), lens(5, 2));
    assert_eq!(tv4_compute(&a, 1).unwrap().normalized, tv4_compute(&b, 1).unwrap().normalized);
    let va = tv_r_bruteforce(&a, 5, 1, DEFAULT_BUDGET).unwrap();
    let vb = tv_r_bruteforce(&b, 5, 1, DEFAULT_BUDGET).unwrap();
    assert!((va - Complex64::new(0.5, 0.0)).norm() < TOL, "{va}");
    assert!(vb.norm() < TOL, "{vb}");
}

#[test]
fn lens_16_and_8_rows() {
    for (p, q, one) in [(16, 1, true), (16, 3, false), (16, 5, false), (16, 7, true), (8, 1, false), (8, 3, true)] {
        let value = tv4_compute(&lens(p, q), 1).unwrap().normalized;
        assert_eq!(value.is_one(), one, "L({p},{q}) = {value}");
        assert!(one || value.is_zero());
    }
}
