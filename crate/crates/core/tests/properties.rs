use gauss_lucas::geometry::{convex_hull_2d, point_in_hull, recti_hull, recti_hull_grid, Point2};
use gauss_lucas::matching::matched_max_error;
use gauss_lucas::poly::{insert_coordinate, MultiPoly, UniPoly};
use gauss_lucas::roots::{cubic_derivative_roots, roots_all, CubicSpec};
use gauss_lucas::stability::{in_region, rotate_coords, ThetaVector};
use gauss_lucas::{format_poly, parse_poly, Complex64};
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = Complex64> {
    (-5.0..5.0f64, -5.0..5.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn multipoly(m: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..4, m), complex()), 1..8)
        .prop_map(move |terms| MultiPoly::from_terms(m, terms).unwrap())
}

fn close(a: Complex64, b: Complex64, scale: f64) -> bool {
    (a - b).norm() <= 1e-9 * scale.max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn derivative_is_linear(p in multipoly(3), q in multipoly(3), s in complex(), k in 1usize..=3) {
        let lhs = p.scale(s).unwrap().add(&q).unwrap().partial_derivative(k).unwrap();
        let rhs = p.partial_derivative(k).unwrap().scale(s).unwrap()
            .add(&q.partial_derivative(k).unwrap()).unwrap();
        let diff = lhs.sub(&rhs).unwrap();
        prop_assert!(diff.terms().all(|(_, c)| c.norm() <= 1e-12 * (1.0 + lhs.coeff_scale())));
    }

    #[test]
    fn restriction_commutes_with_differentiation(
        p in multipoly(3), k in 1usize..=3, a in complex(), b in complex(), w in complex()
    ) {
        let others = [a, b];
        let lhs = p.restrict(k, &others).unwrap().derivative().eval(w);
        let rhs = p.partial_derivative(k).unwrap().evaluate(&insert_coordinate(&others, k, w)).unwrap();
        let scale = p.partial_derivative(k).unwrap().evaluate_abs(&insert_coordinate(&others, k, w)).unwrap();
        prop_assert!(close(lhs, rhs, scale));
    }

    #[test]
    fn restriction_evaluates_like_the_full_polynomial(p in multipoly(4), k in 1usize..=4, z in prop::collection::vec(complex(), 4)) {
        let others: Vec<Complex64> = z.iter().enumerate().filter(|(j, _)| j + 1 != k).map(|(_, &c)| c).collect();
        let f = p.restrict(k, &others).unwrap();
        let direct = p.evaluate(&z).unwrap();
        prop_assert!(close(f.eval(z[k - 1]), direct, p.evaluate_abs(&z).unwrap()));
    }

    #[test]
    fn format_parse_round_trip(p in multipoly(3)) {
        let text = format_poly(&p);
        let back = parse_poly(&text, Some(3)).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn parser_is_total(bytes in prop::collection::vec(any::<u8>(), 0..40)) {
        let text = String::from_utf8_lossy(&bytes);
        let _ = parse_poly(&text, None);
    }

    #[test]
    fn parser_is_total_on_grammar_soup(s in "[z0-9^*+()i. e-]{0,30}") {
        if let Err(e) = parse_poly(&s, None) {
            prop_assert!(e.offset <= s.len());
        }
    }

    #[test]
    fn root_round_trip(roots in prop::collection::vec(complex(), 1..=8)) {
        let sep = roots.iter().enumerate()
            .flat_map(|(i, a)| roots[i + 1..].iter().map(move |b| (a - b).norm()))
            .fold(f64::INFINITY, f64::min);
        prop_assume!(sep > 0.1);
        let rs = roots_all(&UniPoly::from_roots(&roots), 1e-12).unwrap();
        prop_assert!(rs.converged);
        prop_assert_eq!(rs.degree(), roots.len());
        prop_assert!(matched_max_error(&rs.roots, &roots).unwrap() <= 1e-8);
    }

    #[test]
    fn real_coefficients_give_conjugate_roots(coeffs in prop::collection::vec(-5.0..5.0f64, 3..8)) {
        prop_assume!(coeffs.last().unwrap().abs() > 0.1);
        let rs = roots_all(&UniPoly::from_real(&coeffs), 1e-12).unwrap();
        prop_assume!(rs.converged);
        let conj: Vec<Complex64> = rs.roots.iter().map(|r| r.conj()).collect();
        prop_assert!(matched_max_error(&rs.roots, &conj).unwrap() <= 1e-6);
    }

    #[test]
    fn cubic_closed_form_matches_root_finder(a in -3.0..3.0f64, b in 0.05..3.0f64, c in -3.0..3.0f64) {
        let spec = CubicSpec::new(a, b, c).unwrap();
        let closed = cubic_derivative_roots(&spec).unwrap();
        prop_assume!(spec.discriminant().abs() > 1e-6);
        let rs = roots_all(&spec.derivative(), 1e-12).unwrap();
        prop_assert!(matched_max_error(&rs.roots, &closed.points).unwrap() <= 1e-9);
    }

    #[test]
    fn recti_hull_is_separately_convex_and_contains_input(
        pts in prop::collection::vec((0i32..6, 0i32..6), 1..8)
    ) {
        let rows: Vec<Vec<f64>> = pts.iter().map(|&(x, y)| vec![x as f64, y as f64]).collect();
        let grid = recti_hull_grid(&rows, 2).unwrap();
        prop_assert!(grid.is_separately_convex());
        let mut again = grid.clone();
        prop_assert!(!again.sweep());
        let bu = recti_hull(&rows, 2).unwrap();
        prop_assert_eq!(grid.rasterize_boxes(&bu), grid.occupied().to_vec());
        // idempotent: the hull of the box corners is the same set
        let corners = bu.corners();
        let bu2 = recti_hull(&corners, 2).unwrap();
        let probe = recti_hull_grid(&corners, 2).unwrap();
        prop_assert_eq!(probe.rasterize_boxes(&bu2), probe.rasterize_boxes(&bu));
    }

    #[test]
    fn recti_hull_is_monotone(
        pts in prop::collection::vec((0i32..5, 0i32..5), 1..6), extra in (0i32..5, 0i32..5)
    ) {
        let small: Vec<Vec<f64>> = pts.iter().map(|&(x, y)| vec![x as f64, y as f64]).collect();
        let mut big = small.clone();
        big.push(vec![extra.0 as f64, extra.1 as f64]);
        let hs = recti_hull(&small, 2).unwrap();
        let hb = recti_hull(&big, 2).unwrap();
        let grid = recti_hull_grid(&big, 2).unwrap();
        let s = grid.rasterize_boxes(&hs);
        let b = grid.rasterize_boxes(&hb);
        prop_assert!(s.iter().zip(&b).all(|(&x, &y)| !x || y));
    }

    #[test]
    fn convex_hull_ignores_order(mut pts in prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), 1..20), rot in 0usize..20) {
        let a: Vec<Point2> = pts.iter().map(|&(x, y)| Point2::new(x, y)).collect();
        let n = pts.len();
        pts.rotate_left(rot % n);
        pts.reverse();
        let b: Vec<Point2> = pts.iter().map(|&(x, y)| Point2::new(x, y)).collect();
        let (ha, hb) = (convex_hull_2d(&a).unwrap(), convex_hull_2d(&b).unwrap());
        prop_assert_eq!(ha.vertices(), hb.vertices());
        for p in &a {
            prop_assert!(point_in_hull(&ha, *p, 1e-9).is_contained());
        }
    }

    #[test]
    fn rotation_identity(p in multipoly(2), t1 in -3.0..3.0f64, t2 in -3.0..3.0f64, u in prop::collection::vec(complex(), 2)) {
        let theta = ThetaVector::new(vec![t1, t2]).unwrap();
        let q = rotate_coords(&p, &theta).unwrap();
        let z = theta.unrotate(&u);
        let scale = p.evaluate_abs(&z).unwrap();
        prop_assert!(close(q.evaluate(&u).unwrap(), p.evaluate(&z).unwrap(), scale));
    }

    #[test]
    fn region_excludes_its_boundary(t in -3.0..3.0f64, x in -5.0..5.0f64) {
        let theta = ThetaVector::new(vec![t]).unwrap();
        let lifted = theta.unrotate(&[Complex64::new(x, 1e-3)]);
        prop_assert!(in_region(&theta, &lifted).unwrap());
        let below = theta.unrotate(&[Complex64::new(x, -1e-3)]);
        prop_assert!(!in_region(&theta, &below).unwrap());
    }
}
