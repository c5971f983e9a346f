use approx::assert_relative_eq;
use proptest::prelude::*;
use su2frames::dist::{c3_distance, poly_frame_distance, r4_frame_distance, random_unit_quaternions};
use su2frames::forms::{forms, octa_forms, sign_flip, tetra_forms, tilde_forms, vierer_forms};
use su2frames::groups::{binary_octahedral, cached, elements};
use su2frames::quat::{cross, from_su2, to_su2_frame, to_su2_q2c};
use su2frames::recover::{norm_from_surface, norm_from_surface_branches, raw_candidates, recover_groupset};
use su2frames::{axisforms, Complex64, GroupKind, Quaternion, SU2Coord, SurfacePoint};

fn quat() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-2.0f64..2.0).prop_map(Quaternion::from_array)
}

fn unit_quat() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-1.0f64..1.0)
        .prop_filter("non-degenerate", |a| a.iter().map(|x| x * x).sum::<f64>() > 1e-2)
        .prop_map(|a| Quaternion::from_array(a).normalized().unwrap())
}

fn unit_vec() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-1.0f64..1.0)
        .prop_filter("non-degenerate", |a| a.iter().map(|x| x * x).sum::<f64>() > 1e-2)
        .prop_map(|a| {
            let n = a.iter().map(|x| x * x).sum::<f64>().sqrt();
            [a[0] / n, a[1] / n, a[2] / n]
        })
}

fn rel(a: Complex64, b: Complex64, scale: f64) -> f64 {
    (a - b).norm() / scale.max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn norm_is_multiplicative(p in quat(), q in quat()) {
        let lhs = (p * q).norm();
        let rhs = p.norm() * q.norm();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
    }

    #[test]
    fn left_multiplication_preserves_angles(r in unit_quat(), p in quat(), q in quat()) {
        prop_assert!(((r * p).dot(r * q) - p.dot(q)).abs() <= 1e-12 * (1.0 + p.norm() * q.norm()));
    }

    #[test]
    fn q2c_turns_products_into_matrix_products(p in quat(), q in quat()) {
        let lhs = to_su2_q2c(p * q);
        let rhs = to_su2_q2c(p).act_on(to_su2_q2c(q));
        prop_assert!(lhs.distance(rhs) <= 1e-12 * (1.0 + p.norm() * q.norm()));
    }

    #[test]
    fn rotations_are_automorphisms(r in unit_quat(), a in prop::array::uniform3(-1.0f64..1.0), b in prop::array::uniform3(-1.0f64..1.0)) {
        let lhs = r.rotate_vector(cross(a, b)).unwrap();
        let rhs = cross(r.rotate_vector(a).unwrap(), r.rotate_vector(b).unwrap());
        for i in 0..3 {
            prop_assert!((lhs[i] - rhs[i]).abs() <= 1e-12);
        }
    }

    #[test]
    fn rotation_is_two_to_one(r in unit_quat(), x in prop::array::uniform3(-1.0f64..1.0)) {
        prop_assert_eq!(r.rotate_vector(x).unwrap(), (-r).rotate_vector(x).unwrap());
    }

    #[test]
    fn forms_are_invariant_under_their_group(r in unit_quat(), idx in 0usize..48) {
        for kind in GroupKind::ALL {
            let g = cached(kind);
            let o = g.elements[idx % g.len()];
            let a = forms(kind, to_su2_frame(r * o));
            let b = forms(kind, to_su2_frame(r));
            prop_assert!(a.max_abs_diff(&b) <= 1e-10, "{:?}", kind);
        }
    }

    #[test]
    fn sign_flip_negates_h2(r in quat()) {
        prop_assume!(r.norm() > 0.1);
        let c = to_su2_frame(r);
        let h = octa_forms(c);
        let f = octa_forms(sign_flip(c));
        let n = r.norm_squared();
        prop_assert!(rel(f.h0, h.h0, n.powi(4)) <= 1e-12);
        prop_assert!(rel(f.h1, h.h1, n.powi(6)) <= 1e-12);
        prop_assert!(rel(f.h2, -h.h2, n.powi(9)) <= 1e-12);
        let twice = octa_forms(sign_flip(sign_flip(c)));
        prop_assert!(rel(twice.h0, h.h0, n.powi(4)) <= 1e-12);
        prop_assert!(rel(twice.h1, h.h1, n.powi(6)) <= 1e-12);
        prop_assert!(rel(twice.h2, h.h2, n.powi(9)) <= 1e-12);
    }

    #[test]
    fn forms_are_homogeneous(r in unit_quat(), lambda in 0.5f64..2.0) {
        let c = to_su2_frame(r);
        let h = octa_forms(c);
        let g = octa_forms(c.scale(lambda.into()));
        prop_assert!(rel(g.h0, h.h0 * lambda.powi(8), lambda.powi(8)) <= 1e-10);
        prop_assert!(rel(g.h1, h.h1 * lambda.powi(12), lambda.powi(12)) <= 1e-10);
        prop_assert!(rel(g.h2, h.h2 * lambda.powi(18), lambda.powi(18)) <= 1e-10);
    }

    #[test]
    fn forms_chain(r in unit_quat()) {
        let c = to_su2_frame(r);
        let f = vierer_forms(c);
        let g = tetra_forms(c);
        let h = octa_forms(c);
        let (t0, t1) = tilde_forms(c);
        let s3 = 3f64.sqrt();
        prop_assert!(rel(t0, f.h1 + Complex64::new(0.0, 2.0 * s3) * f.h0, 1.0) <= 1e-10);
        prop_assert!(rel(t1, f.h1 - Complex64::new(0.0, 2.0 * s3) * f.h0, 1.0) <= 1e-10);
        prop_assert!(rel(g.h0, f.h2, 1.0) <= 1e-10);
        prop_assert!(rel(g.h1, t0 * t1, 1.0) <= 1e-10);
        prop_assert!(rel(g.h2, (t0.powi(3) + t1.powi(3)) * 0.5, 1.0) <= 1e-10);
        prop_assert!(rel(h.h0, g.h1, 1.0) <= 1e-10);
        prop_assert!(rel(h.h1, g.h0 * g.h0, 1.0) <= 1e-10);
        prop_assert!(rel(h.h2, g.h0 * g.h2, 1.0) <= 1e-10);
    }

    #[test]
    fn norm_is_independent_of_root_choice(r in quat()) {
        prop_assume!(r.norm() > 0.1);
        let h = octa_forms(to_su2_frame(r));
        let n2 = r.norm_squared();
        for n in norm_from_surface_branches(&h) {
            prop_assert!((n - n2).abs() <= 1e-9 * n2);
        }
    }

    #[test]
    fn norm_scales_quadratically(r in unit_quat(), lambda in 0.5f64..2.0) {
        let h = octa_forms(to_su2_frame(r));
        let l = Complex64::from(lambda);
        let scaled = SurfacePoint::octa(h.h0 * l.powi(8), h.h1 * l.powi(12), h.h2 * l.powi(18));
        let a = norm_from_surface(&scaled);
        let b = lambda * lambda * norm_from_surface(&h);
        prop_assert!((a - b).abs() <= 1e-9 * b);
    }

    #[test]
    fn raw_branches_split_evenly(r in unit_quat()) {
        let c = to_su2_frame(r);
        prop_assume!((c.u * c.v).norm() > 1e-3);
        let set = recover_groupset(&octa_forms(c)).unwrap();
        prop_assert_eq!(set.raw_count, 96);
        prop_assert_eq!(set.raw_matching + set.raw_flipped, 96);
        if octa_forms(c).h2.norm() > 1e-6 {
            prop_assert_eq!(set.raw_matching, 48);
            prop_assert_eq!(set.raw_flipped, 48);
        }
        prop_assert_eq!(set.len(), 48);
        prop_assert_eq!(raw_candidates(&octa_forms(c)).len(), 96);
    }

    #[test]
    fn axis_forms_agree_with_pipeline(n in unit_vec(), alpha in -7.0f64..7.0) {
        prop_assume!(n[2] > -0.99);
        let a = axisforms::axis_forms(n, alpha).unwrap();
        let b = octa_forms(axisforms::axis_su2(n, alpha).unwrap());
        prop_assert!(a.max_abs_diff(&b) <= 1e-10);
        let c = axisforms::axis_forms(n, alpha + std::f64::consts::FRAC_PI_2).unwrap();
        prop_assert!(a.max_abs_diff(&c) <= 1e-10);
    }

    #[test]
    fn axis_linear_relations(n in unit_vec(), alpha in -7.0f64..7.0) {
        prop_assume!(n[2] > -0.99);
        let ctx = axisforms::AxisContext::new(n).unwrap();
        let h = axisforms::axis_forms(n, alpha).unwrap();
        let a = ctx.a;
        let (aw, bw) = ctx.fused_products(alpha);
        let a2 = a * a;
        let a6 = a2 * a2 * a2;
        let norm = 1.0 + h.max_abs();
        prop_assert!(rel(a2 * h.h0 - h.h1, 16.0 * a6, norm) <= 1e-10);
        // a³(w⁴ - w⁻⁴) = (a⁴w⁴ - a⁴w⁻⁴)/a
        if a.norm() > 1e-6 {
            let rhs = -(aw - bw) / a * (h.h1 - 32.0 * a6);
            prop_assert!(rel(h.h2, rhs, norm) <= 1e-10);
        }
    }

    #[test]
    fn r4_distance_is_a_frame_distance(qa in unit_quat(), qb in unit_quat(), idx in 0usize..48) {
        let o = binary_octahedral().elements[idx];
        let d = r4_frame_distance(qa, qb).unwrap();
        // the two minima run over the same set up to rounding of the products
        prop_assert!((r4_frame_distance(qa, qb * o).unwrap() - d).abs() <= 1e-14);
        prop_assert!((r4_frame_distance(qb, qa).unwrap() - d).abs() <= 1e-12);
        prop_assert!(d <= 2.0);
        prop_assert!(r4_frame_distance(qa, qa * o).unwrap() <= 1e-12);
        prop_assert!(poly_frame_distance(qa, qa * o).unwrap() <= 1e-9);
        let ha = octa_forms(to_su2_frame(qa));
        let hb = octa_forms(to_su2_frame(qb));
        let hbo = octa_forms(to_su2_frame(qb * o));
        prop_assert!((c3_distance(&ha, &hb) - c3_distance(&ha, &hbo)).abs() <= 1e-10);
    }
}

#[test]
fn groups_are_closed_nested_and_unit() {
    let v = elements(GroupKind::Vierer);
    let t = elements(GroupKind::BinaryTetrahedral);
    let o = elements(GroupKind::BinaryOctahedral);
    for g in [&v, &t, &o] {
        for x in g.iter() {
            assert!((x.norm() - 1.0).abs() <= 1e-12);
            for y in g.iter() {
                assert!(g.contains(*x * *y, 1e-9));
            }
        }
    }
    assert!(v.iter().all(|x| t.contains(*x, 1e-9)));
    assert!(t.iter().all(|x| o.contains(*x, 1e-9)));
}

#[test]
fn recovery_roundtrip_over_random_frames() {
    for q in random_unit_quaternions(10_000, 2024) {
        let c = to_su2_frame(q);
        let set = recover_groupset(&octa_forms(c)).unwrap();
        assert_eq!(set.len(), 48);
        assert!(set.distance_to(c) <= 1e-9, "{q}");
        for cand in &set.candidates {
            assert!((cand.norm_squared() - 1.0).abs() <= 1e-9);
            let r = from_su2(*cand);
            assert!(poly_frame_distance(q, r).unwrap() <= 1e-9, "{q} {r}");
        }
    }
}

#[test]
fn distance_zero_iff_polynomial_zero() {
    let qs = random_unit_quaternions(20_001, 99);
    for w in qs.windows(2).step_by(2) {
        let (a, b) = (w[0], w[1]);
        let d = r4_frame_distance(a, b).unwrap();
        let p = poly_frame_distance(a, b).unwrap();
        assert_eq!(d <= 1e-9, p <= 1e-9);
        assert!(d > 1e-9);
    }
    for o in binary_octahedral().iter() {
        assert!(r4_frame_distance(Quaternion::ONE, *o).unwrap() <= 1e-12);
        assert!(poly_frame_distance(Quaternion::ONE, *o).unwrap() <= 1e-9);
    }
}

#[test]
fn c3_triangle_inequality() {
    let qs = random_unit_quaternions(30_000, 5);
    let h: Vec<_> = qs.iter().map(|q| octa_forms(to_su2_frame(*q))).collect();
    for t in h.chunks(3) {
        let ab = c3_distance(&t[0], &t[1]);
        let bc = c3_distance(&t[1], &t[2]);
        let ac = c3_distance(&t[0], &t[2]);
        assert!(ac <= ab + bc + 1e-12);
    }
}

#[test]
fn ellipse_membership_500_samples() {
    let n = [0.3, -0.4, 0.5f64.sqrt() * 1.224_744_871_391_589];
    let len = n.iter().map(|x| x * x).sum::<f64>().sqrt();
    let n = [n[0] / len, n[1] / len, n[2] / len];
    let e = axisforms::ellipse_params(n).unwrap();
    let (major, minor) = e.semi_axes();
    for (alpha, h0, h1) in e.sample(500) {
        let f = axisforms::axis_forms(n, alpha).unwrap();
        assert!((f.h0 / e.scale0 - h0).norm() <= 1e-9);
        assert!((f.h1 / e.scale1 - h1).norm() <= 1e-9);
        // rotated into the ellipse frame the point satisfies x²/A² + y²/B² = 1
        let z = (h0 - e.center0) * Complex64::from_polar(1.0, 0.0);
        let t = 4.0 * (alpha + e.theta);
        assert_relative_eq!(z.re, major * t.cos(), epsilon = 1e-9);
        assert_relative_eq!(z.im, (e.p - 1.0 / e.p) * t.sin(), epsilon = 1e-9);
        assert!(minor >= 0.0);
    }
}

#[test]
fn unit_coord_examples_recover() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let c = SU2Coord::from_parts(h, 0.0, h, 0.0);
    let set = recover_groupset(&octa_forms(c)).unwrap();
    assert!(set.distance_to(c) <= 1e-9);
}
