use flat_structure::*;
use surface_curves::*;

fn curves(g: u32, m: u32, norm: u64) -> Vec<MultiCurve> {
    reference_triangulation(Surface::new(g, m).unwrap()).unwrap().enumerate_curves(norm)
}

fn filling_pairs(g: u32, m: u32, norm: u64, limit: usize) -> Vec<(MultiCurve, MultiCurve)> {
    let cs = curves(g, m, norm);
    let mut out = Vec::new();
    for (k, a) in cs.iter().enumerate() {
        for b in &cs[k + 1..] {
            if out.len() < limit && fills(a, b).unwrap() {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

fn one() -> Rational {
    Rational::from(1)
}

#[test]
fn census_on_sampled_pairs() {
    for (g, m, norm) in [(0, 5, 16), (1, 2, 12), (0, 6, 16), (1, 3, 14)] {
        let pairs = filling_pairs(g, m, norm, 15);
        assert!(!pairs.is_empty(), "no filling pair on S({g},{m})");
        for (a, b) in pairs {
            let r = build(&a, &b, one(), one()).unwrap();
            r.check().unwrap();
            let i = intersection(&a, &b).unwrap();
            assert_eq!(r.rectangles.len() as u64, i);
            assert_eq!(area(&r), Rational::from(i as i128));
            let chi = 2 - 2 * g as i64;
            assert_eq!(r.gauss_bonnet_sum(), 2 * chi);
            assert_eq!(r.euler_characteristic(), chi);
            assert_eq!(r.singularities.iter().filter(|s| s.puncture).count(), m as usize);
            assert!(r.singularities.iter().all(|s| s.puncture || s.k >= 2));
        }
    }
}

#[test]
fn genus_two_pair_meeting_four_times() {
    let cs = curves(2, 0, 12);
    let (a, b) = cs
        .iter()
        .flat_map(|a| cs.iter().map(move |b| (a, b)))
        .find(|(a, b)| intersection(a, b).unwrap() == 4 && fills(a, b).unwrap())
        .unwrap();
    let r = build(a, b, one(), one()).unwrap();
    r.check().unwrap();
    assert_eq!(r.gauss_bonnet_sum(), -4);
    assert_eq!(r.euler_characteristic(), -2);
    assert_eq!(area(&r), Rational::from(4));
    assert!(cone_angles(&r).iter().all(|&k| k >= 3));
}

#[test]
fn non_filling_pairs_are_refused() {
    let cs = curves(0, 5, 12);
    let (a, b) = cs
        .iter()
        .flat_map(|a| cs.iter().map(move |b| (a, b)))
        .find(|(a, b)| a != b && !fills(a, b).unwrap())
        .unwrap();
    assert!(matches!(build(a, b, one(), one()), Err(FlatError::NotFilling)));
    assert!(matches!(build(a, a, one(), one()), Err(FlatError::NotFilling)));
}

#[test]
fn bad_weights_are_refused() {
    let (a, b) = filling_pairs(0, 5, 16, 1).remove(0);
    assert!(matches!(build(&a, &b, Rational::from(0), one()), Err(FlatError::NonPositiveWeight)));
    let tri = reference_triangulation(a.surface).unwrap();
    let doubled = tri.normalize(&a.coords.iter().map(|x| 2 * x).collect::<Vec<_>>()).unwrap();
    assert!(matches!(build(&doubled, &b, one(), one()), Err(FlatError::Weighted)));
}

#[test]
fn area_formula() {
    let (a, b) = filling_pairs(0, 5, 16, 1).remove(0);
    let i = intersection(&a, &b).unwrap() as i128;
    let r = build(&a, &b, Rational::from(2), Rational::from(3)).unwrap();
    assert_eq!(area(&r), Rational::from(6 * i));
    let half = Rational::new(1, 2);
    let r1 = build(&a, &b, half, Rational::from(3)).unwrap();
    let r2 = build(&a, &b, half * 2, Rational::from(3)).unwrap();
    assert_eq!(area(&r2), area(&r1) * 2);
    let (sa, sb) = stretch(half, Rational::from(3), 0.7).unwrap();
    assert_eq!(area(&build(&a, &b, sa, sb).unwrap()), area(&r1));
}

#[test]
fn length_bounds() {
    for (g, m, norm) in [(0, 5, 16), (1, 2, 12)] {
        let probes = curves(g, m, norm);
        for (a, b) in filling_pairs(g, m, norm, 8) {
            let r = build(&a, &b, Rational::new(3, 2), Rational::new(2, 5)).unwrap();
            let ab = intersection(&a, &b).unwrap() as i128;
            assert_eq!(q_length_bound(&r, &a).unwrap(), Rational::from(2) * r.b * Rational::from(ab));
            assert!(staircase_length(&r, &a).unwrap() <= Rational::from(2) * r.b * Rational::from(ab));
            for c in probes.iter().take(10) {
                let s = staircase(&r, c).unwrap();
                assert!(s.length <= q_length_bound(&r, c).unwrap());
                let shorter = r.a.min(r.b);
                assert!(s.length >= shorter * Rational::from((s.vertical_runs + s.horizontal_runs) as i128));
            }
            let empty = MultiCurve::empty(a.surface, a.coords.len());
            assert_eq!(q_length_bound(&r, &empty).unwrap(), Rational::from(0));
            assert_eq!(staircase_length(&r, &empty).unwrap(), Rational::from(0));
            let other = curves(1, 3, 12).remove(0);
            assert!(matches!(q_length_bound(&r, &other), Err(FlatError::MismatchedSurface)));
        }
    }
}

#[test]
fn swapping_the_pair_gives_an_isomorphic_complex() {
    let (a, b) = filling_pairs(0, 5, 16, 3).pop().unwrap();
    let (x, y) = (Rational::new(3, 2), Rational::from(5));
    let r = build(&a, &b, x, y).unwrap();
    let s = build(&b, &a, y, x).unwrap();
    assert_eq!(r.canonical_hash(), s.canonical_hash());
    assert_eq!(cone_angles(&r), cone_angles(&s));
    let t = build(&a, &b, x, y * 2).unwrap();
    assert_ne!(r.canonical_hash(), t.canonical_hash());
}

#[test]
fn complex_files_round_trip() {
    let (a, b) = filling_pairs(1, 2, 12, 1).remove(0);
    let r = build(&a, &b, Rational::new(1, 3), Rational::from(2)).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    assert!(text.contains(r#""a":"1/3""#) && text.contains(r#""b":"2""#));
    assert!(text.contains(r#""singularities":[{"k":"#));
    let back: RectangleComplex = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
    back.check().unwrap();
    let mut broken = r.clone();
    broken.gluings.pop();
    assert!(broken.check().is_err());
    let mut wrong = r;
    wrong.singularities[0].k += 1;
    assert!(wrong.check().is_err());
}
