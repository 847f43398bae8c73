use curve_graph::*;
use splitting::*;
use surface_curves::*;
use train_track::vertex_cycles;

fn universe() -> (Vec<MultiCurve>, Ball) {
    let cs = reference_triangulation(make_surface(0, 5).unwrap()).unwrap().enumerate_curves(16);
    let ball = Ball::new(&cs[0], 2, 16).unwrap();
    (cs, ball)
}

fn filling_pairs(cs: &[MultiCurve]) -> Vec<(MultiCurve, MultiCurve)> {
    let mut out = Vec::new();
    for (k, a) in cs.iter().enumerate() {
        for b in &cs[k + 1..] {
            if fills(a, b).unwrap() {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

fn q(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

#[test]
fn swapping_the_pair_rescales_a() {
    let (cs, ball) = universe();
    let pairs = filling_pairs(&cs);
    assert!(!pairs.is_empty());
    for (alpha, beta) in pairs.iter().take(10) {
        let ab = intersection(alpha, beta).unwrap() as i128;
        for a in [q(1, 3), q(1, 1), q(5, 2)] {
            for r in [q(1, 1), q(3, 1), q(8, 1)] {
                let left = l_set(alpha, beta, a, r, &ball).unwrap();
                let right = l_set(beta, alpha, (a * Rational::from(ab)).recip(), r, &ball).unwrap();
                assert_eq!(left, right);
            }
        }
    }
}

#[test]
fn l_sets_grow_with_r() {
    let (cs, ball) = universe();
    let (alpha, beta) = filling_pairs(&cs).remove(0);
    let mut prev: Vec<usize> = Vec::new();
    for r in 1..12 {
        let now = l_set(&alpha, &beta, q(1, 2), Rational::from(r), &ball).unwrap();
        assert!(prev.iter().all(|x| now.contains(x)));
        prev = now;
    }
}

#[test]
fn beta_belongs_for_small_a() {
    let (cs, ball) = universe();
    for (alpha, beta) in filling_pairs(&cs).iter().take(5) {
        let r = q(3, 1);
        let t = beta_threshold(alpha, beta, r).unwrap();
        let b = ball.index_of(beta).unwrap();
        assert!(l_set(alpha, beta, t, r, &ball).unwrap().contains(&b));
        assert!(l_set(alpha, beta, t / 7, r, &ball).unwrap().contains(&b));
        assert!(!l_set(alpha, beta, t * q(11, 10), r, &ball).unwrap().contains(&b));
    }
}

#[test]
fn non_filling_pairs_are_refused() {
    let (cs, ball) = universe();
    let (a, b) = cs
        .iter()
        .flat_map(|a| cs.iter().map(move |b| (a, b)))
        .find(|(a, b)| a != b && intersection(a, b).unwrap() == 0)
        .unwrap();
    assert!(matches!(l_set(a, b, q(1, 1), q(1, 1), &ball), Err(GraphError::NotFilling)));
}

#[test]
fn profile_is_finite_and_trivial_for_no_splits() {
    let s = make_surface(0, 5).unwrap();
    let pants = PantsDecomposition::standard(s).unwrap();
    let base = adapted_track(&pants).unwrap();
    let empty = SplittingSequence::new(base.clone());
    let any = phi(&base).unwrap();
    assert_eq!(lemma32_profile(&empty, &any, &pants).unwrap().r_squared, Rational::from(0));
    for seed in 0..6 {
        let g = random_splitting_sequence(&base, 20, seed).unwrap();
        let vc = vertex_cycles(&g.last().track).unwrap();
        let mu = transport(&g, &vc[0].measure).unwrap();
        let target = base.measure_to_normal(&mu).unwrap();
        if intersection(&target, &pants.curves).unwrap() == 0 {
            continue;
        }
        let seq = guided_splitting_sequence(&base, &mu, step_cap(20)).unwrap();
        let p = lemma32_profile(&seq, &target, &pants).unwrap();
        assert!(p.r.is_finite());
        assert_eq!(p.tracks, seq.len() + 1);
        assert!((p.r * p.r - *p.r_squared.numer() as f64 / *p.r_squared.denom() as f64).abs() < 1e-9);
        // a prefix without splits has level 0
        let shorter = seq.slice(0, 0);
        assert_eq!(lemma32_profile(&shorter, &target, &pants).unwrap().r, 0.0);
    }
}

#[test]
fn pants_extension() {
    let (cs, ball) = universe();
    for c in cs.iter().take(5) {
        let p = extend_to_pants(c, &ball).unwrap();
        assert!(p.curves().contains(c));
        assert_eq!(p.curves().len(), 2);
    }
}

#[test]
fn triple_centers_are_symmetric() {
    let (cs, ball) = universe();
    let mut triple = None;
    'search: for a in &cs {
        for b in &cs {
            for c in &cs {
                if fills(a, b).unwrap() && fills(b, c).unwrap() && fills(c, a).unwrap() {
                    triple = Some([a.clone(), b.clone(), c.clone()]);
                    break 'search;
                }
            }
        }
    }
    let [a, b, c] = triple.expect("a pairwise filling triple");
    let pants = [&a, &b, &c].map(|x| extend_to_pants(x, &ball).unwrap());
    let base = triple_center(&a, &b, &c, [&pants[0], &pants[1], &pants[2]], &ball).unwrap();
    let [x, y, z] = base.pants_intersections.map(|v| v as f64);
    let [wa, wb, wc] = base.weights;
    for prod in [wa * wb * x, wb * wc * y, wc * wa * z] {
        assert!((prod - 1.0).abs() < 1e-9);
    }
    let d = &ball.universe[base.center];
    for (w, p) in base.weights.iter().zip(&pants) {
        assert!(w * intersection(d, &p.curves).unwrap() as f64 <= base.value + TOLERANCE);
    }
    let swapped = triple_center(&b, &c, &a, [&pants[1], &pants[2], &pants[0]], &ball).unwrap();
    assert!((swapped.value - base.value).abs() < 1e-9);
    let mirrored = triple_center(&c, &b, &a, [&pants[2], &pants[1], &pants[0]], &ball).unwrap();
    assert!((mirrored.value - base.value).abs() < 1e-9);
}
