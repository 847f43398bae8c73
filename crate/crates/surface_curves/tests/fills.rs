use surface_curves::*;

fn curves(g: u32, m: u32, norm: u64) -> Vec<MultiCurve> {
    reference_triangulation(Surface::new(g, m).unwrap()).unwrap().enumerate_curves(norm)
}

#[test]
fn disjoint_pairs_never_fill() {
    for (g, m) in [(0, 5), (1, 2), (2, 0)] {
        let cs = curves(g, m, 10);
        for a in &cs {
            for b in &cs {
                if intersection(a, b).unwrap() == 0 {
                    assert!(!fills(a, b).unwrap());
                }
            }
        }
    }
}

#[test]
fn a_filling_pair_on_the_twice_punctured_torus() {
    let cs = curves(1, 2, 10);
    let pair = cs
        .iter()
        .flat_map(|a| cs.iter().map(move |b| (a, b)))
        .find(|(a, b)| fills(a, b).unwrap())
        .expect("some pair fills");
    let (a, b) = pair;
    let arr = realize(a, b).unwrap().arrangement().unwrap();
    let i = intersection(a, b).unwrap() as i64;
    // regions - crossings = Euler characteristic with punctures filled in
    assert_eq!(arr.regions.len() as i64 - i, 0);
}

#[test]
fn filling_complexes_satisfy_euler_count() {
    for (g, m) in [(0, 5), (1, 2), (2, 0)] {
        let s = Surface::new(g, m).unwrap();
        let cs = curves(g, m, if m == 0 { 14 } else { 12 });
        let mut seen = 0;
        for a in &cs {
            for b in &cs {
                if !fills(a, b).unwrap() {
                    continue;
                }
                seen += 1;
                let arr = realize(a, b).unwrap().arrangement().unwrap();
                let i = intersection(a, b).unwrap();
                assert_eq!(arr.crossings.len() as u64, i);
                let closed_chi = s.euler_characteristic() + m as i64;
                assert_eq!(arr.regions.len() as i64 - i as i64, closed_chi);
                let corners: usize = arr.regions.iter().map(|r| r.corners.len()).sum();
                assert_eq!(corners as u64, 4 * i);
            }
        }
        assert!(seen > 0, "no filling pair on {s}");
    }
}

#[test]
fn smallest_filling_pair_in_genus_two_meets_four_times() {
    let cs = curves(2, 0, 14);
    let least = cs
        .iter()
        .flat_map(|a| cs.iter().map(move |b| (a, b)))
        .filter(|(a, b)| fills(a, b).unwrap())
        .map(|(a, b)| intersection(a, b).unwrap())
        .min();
    assert_eq!(least, Some(4));
}
