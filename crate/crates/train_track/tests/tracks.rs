use surface_curves::{make_surface, standard_chart, Half, Surface, SwitchHalves, Traversal};
use train_track::*;

fn standard(g: u32, m: u32) -> EmbeddedTrack {
    EmbeddedTrack::standard(make_surface(g, m).unwrap()).unwrap()
}

fn cores(g: u32, m: u32) -> Vec<Vec<Traversal>> {
    standard_chart(make_surface(g, m).unwrap()).unwrap().0.pants_cores.clone()
}

const SURFACES: [(u32, u32); 6] = [(0, 5), (1, 2), (2, 0), (0, 6), (1, 3), (2, 1)];

#[test]
fn standard_tracks_are_complete() {
    for (g, m) in SURFACES {
        let t = standard(g, m);
        let d = validate_track(&t.track).unwrap();
        assert!(d.complete, "S({g},{m})");
        assert_eq!(d.switches as i64, 12 * g as i64 - 12 + 4 * m as i64);
        assert_eq!(d.branches as i64, 18 * g as i64 - 18 + 6 * m as i64);
        assert!(is_recurrent(&t.track).unwrap());
    }
    let t = standard(0, 5);
    assert_eq!((t.track.switch_count(), t.track.branch_count()), (8, 12));
}

#[test]
fn bad_tracks_are_rejected() {
    let t = standard(0, 5).track;
    let mut doubled = t.clone();
    doubled.switches[0].small_left = doubled.switches[1].large;
    assert!(matches!(validate_track(&doubled), Err(TrackError::InvalidTrack(_))));

    let mut wrong_cusps = t.clone();
    wrong_cusps.regions[0].cusps += 1;
    assert!(validate_track(&wrong_cusps).is_err());

    // a loop through one switch bounds a monogon without a puncture
    let s = Surface { genus: 0, punctures: 3 };
    let bigon = TrainTrack::with_punctures(
        s,
        vec![
            SwitchHalves { large: Half::new(0, 0), small_left: Half::new(1, 0), small_right: Half::new(2, 0) },
            SwitchHalves { large: Half::new(0, 1), small_left: Half::new(2, 1), small_right: Half::new(1, 1) },
        ],
        3,
        &[],
    );
    assert!(validate_track(&bigon).is_err());
}

#[test]
fn pasting_a_region_from_another_track_breaks_the_census() {
    let mut t = standard(1, 2).track;
    let extra = t.regions[0].clone();
    t.regions.push(extra);
    assert!(validate_track(&t).is_err());
}

#[test]
fn double_description_matches_support_search() {
    for (g, m) in [(0, 5), (1, 2), (0, 6)] {
        let t = standard(g, m).track;
        let fast = extreme_rays(&t.switch_matrix(), t.branch_count()).unwrap();
        let slow = extreme_rays_by_supports(&t.switch_matrix(), t.branch_count());
        assert_eq!(fast, slow, "S({g},{m})");
    }
}

#[test]
fn vertex_cycles_are_small_single_curves() {
    for (g, m) in SURFACES {
        let t = standard(g, m).track;
        let cycles = vertex_cycles(&t).unwrap();
        assert!(!cycles.is_empty());
        for c in &cycles {
            assert!(c.measure.iter().all(|&x| (0..=2).contains(&x)), "{:?}", c.measure);
            assert_eq!(counting_measure(&t, &c.curve).unwrap(), c.measure);
            assert!(t.satisfies_switch_conditions(&c.measure));
        }
    }
}

#[test]
fn vertex_cycle_count_snapshot() {
    let t = standard(0, 5).track;
    assert_eq!(vertex_cycles(&t).unwrap().len(), 4);
}

#[test]
fn pants_curves_are_vertex_cycles() {
    for (g, m) in SURFACES {
        let t = standard(g, m).track;
        let cycles = vertex_cycles(&t).unwrap();
        let cs = cores(g, m);
        assert_eq!(cs.len() as i64, 3 * g as i64 - 3 + m as i64);
        for core in cs {
            let mu = counting_measure(&t, &core).unwrap();
            assert!(cycles.iter().any(|c| c.measure == mu), "S({g},{m}) core {core:?}");
        }
    }
}

#[test]
fn sums_of_vertex_cycles_split_back_apart() {
    let t = standard(1, 2).track;
    let cycles = vertex_cycles(&t).unwrap();
    for a in &cycles {
        for b in &cycles {
            let sum: Vec<i128> = a.measure.iter().zip(&b.measure).map(|(x, y)| x + y).collect();
            let carried = measure_to_multicurve(&t, &sum).unwrap();
            if a == b {
                assert_eq!(carried.components, vec![(a.curve.clone(), 2)]);
            } else {
                let total: u64 = carried.components.iter().map(|c| c.1).sum();
                assert!(total >= 1);
                for (w, k) in &carried.components {
                    let mu = counting_measure(&t, w).unwrap();
                    assert!(t.satisfies_switch_conditions(&mu));
                    assert!(*k >= 1);
                }
                let back = carried.components.iter().fold(vec![0i128; sum.len()], |mut acc, (w, k)| {
                    for (x, y) in acc.iter_mut().zip(counting_measure(&t, w).unwrap()) {
                        *x += y * *k as i128;
                    }
                    acc
                });
                assert_eq!(back, sum);
            }
        }
    }
}

#[test]
fn counting_measure_edge_cases() {
    let t = standard(0, 5).track;
    assert_eq!(counting_measure(&t, &[]).unwrap(), vec![0; t.branch_count()]);
    // two branches that do not meet smoothly
    let s = t.switches[0];
    let illegal = [
        Traversal { branch: s.small_left.branch, forward: s.small_left.end == 1 },
        Traversal { branch: s.small_right.branch, forward: s.small_right.end == 0 },
    ];
    assert!(matches!(counting_measure(&t, &illegal), Err(TrackError::IllegalPath(_))));
}

#[test]
fn measures_must_satisfy_switch_conditions() {
    let t = standard(0, 5).track;
    let mut mu = vec![0i128; t.branch_count()];
    mu[t.switches[0].large.branch] = 1;
    assert!(matches!(measure_to_multicurve(&t, &mu), Err(TrackError::NotAMeasure(_))));
    assert!(measure_to_multicurve(&t, &[0; 3]).is_err());
    assert!(measure_to_multicurve(&t, &vec![0; t.branch_count()]).unwrap().is_empty());
}

#[test]
fn embedded_measures_give_normal_curves() {
    for (g, m) in [(0, 5), (1, 2), (0, 6)] {
        let t = standard(g, m);
        let zero = t.measure_to_normal(&vec![0; t.track.branch_count()]).unwrap();
        assert!(zero.is_empty());
        let cycles = vertex_cycles(&t.track).unwrap();
        for c in &cycles {
            let curve = t.measure_to_normal(&c.measure).unwrap();
            assert!(curve.is_simple_curve(), "S({g},{m}) {:?}", c.measure);
        }
        // a combination: components agree with the track-side reconstruction
        let mu: Vec<i128> = cycles.iter().take(3).fold(vec![0; t.track.branch_count()], |mut acc, c| {
            acc.iter_mut().zip(&c.measure).for_each(|(x, y)| *x += y);
            acc
        });
        let carried = measure_to_multicurve(&t.track, &mu).unwrap();
        let curve = t.measure_to_normal(&mu).unwrap();
        let weight: u64 = carried.components.iter().map(|c| c.1).sum();
        assert_eq!(curve.components.iter().map(|c| c.weight).sum::<u64>(), weight);
        assert_eq!(curve.components.len(), carried.components.len());
    }
}

#[test]
fn pants_cores_embed_as_pairwise_disjoint_curves() {
    let t = standard(1, 2);
    let curves: Vec<_> = cores(1, 2)
        .iter()
        .map(|w| t.measure_to_normal(&counting_measure(&t.track, w).unwrap()).unwrap())
        .collect();
    for a in &curves {
        assert!(a.is_simple_curve());
        for b in &curves {
            assert_eq!(surface_curves::intersection(a, b).unwrap(), 0);
        }
    }
}

#[test]
fn track_file_round_trip() {
    let t = standard(1, 2);
    let text = serde_json::to_string(&t.to_file()).unwrap();
    assert!(text.starts_with("{\"surface\":{\"g\":1,\"m\":2},\"switches\":[{\"large\":["), "{}", &text[..60]);
    let back: EmbeddedTrackFile = serde_json::from_str(&text).unwrap();
    assert_eq!(back, t.to_file());
    let _: Surface = back.track.surface;
}

#[test]
fn extremality_of_measures() {
    let t = standard(1, 2).track;
    let cycles = vertex_cycles(&t).unwrap();
    assert!(cycles.iter().all(|c| is_extreme(&t, &c.measure)));
    let doubled: Vec<i128> = cycles[0].measure.iter().map(|x| 2 * x).collect();
    assert!(is_extreme(&t, &doubled));
    let sum: Vec<i128> = cycles[0].measure.iter().zip(&cycles[1].measure).map(|(x, y)| x + y).collect();
    assert!(!is_extreme(&t, &sum));
    assert!(!is_extreme(&t, &vec![0; t.branch_count()]));
}
