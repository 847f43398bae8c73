use splitting::*;
use surface_curves::{make_surface, Half, Surface};
use train_track::{is_recurrent, validate_track, vertex_cycles, TrainTrack};

fn base(g: u32, m: u32) -> EmbeddedTrack {
    EmbeddedTrack::standard(make_surface(g, m).unwrap()).unwrap()
}

const SURFACES: [(u32, u32); 4] = [(0, 5), (1, 2), (2, 0), (0, 6)];

#[test]
fn large_branches_have_two_large_halves() {
    for (g, m) in SURFACES {
        let t = base(g, m).track;
        let large = large_branches(&t);
        assert!(!large.is_empty());
        for e in 0..t.branch_count() {
            let both = t.is_large_half(Half::new(e, 0)) && t.is_large_half(Half::new(e, 1));
            assert_eq!(large.contains(&e), both, "S({g},{m}) branch {e}");
        }
    }
}

#[test]
fn splitting_a_small_branch_fails() {
    let t = base(1, 2).track;
    let small = (0..t.branch_count()).find(|e| !large_branches(&t).contains(e)).unwrap();
    assert!(matches!(split(&t, small, Direction::Left), Err(SplitError::NotLargeBranch(_))));
    assert!(matches!(split(&t, 999, Direction::Right), Err(SplitError::NotLargeBranch(999))));
}

#[test]
fn splits_preserve_counts_and_census() {
    for (g, m) in SURFACES {
        let t = base(g, m).track;
        let before = validate_track(&t).unwrap();
        for e in large_branches(&t) {
            for d in [Direction::Left, Direction::Right] {
                let (t2, mtx) = split(&t, e, d).unwrap();
                let after = validate_track(&t2).unwrap();
                assert_eq!((after.switches, after.branches), (before.switches, before.branches));
                assert_eq!((after.trigons, after.punctured_monogons), (before.trigons, before.punctured_monogons));
                for (i, row) in mtx.iter().enumerate() {
                    for (j, &x) in row.iter().enumerate() {
                        assert!(x >= 0);
                        if i != e {
                            assert_eq!(x, (i == j) as i64);
                        }
                    }
                }
                // the split track is carried by the original
                if let Ok(cycles) = vertex_cycles(&t2) {
                    for c in cycles {
                        let pushed: Vec<i128> = mtx
                            .iter()
                            .map(|row| row.iter().zip(&c.measure).map(|(&a, &x)| a as i128 * x).sum())
                            .collect();
                        assert!(t.satisfies_switch_conditions(&pushed));
                    }
                }
            }
        }
    }
}

/// Two switches and three branches: a theta graph with one large branch.
fn theta() -> TrainTrack {
    let switches = vec![
        surface_curves::SwitchHalves { large: Half::new(0, 0), small_left: Half::new(1, 0), small_right: Half::new(2, 0) },
        surface_curves::SwitchHalves { large: Half::new(0, 1), small_left: Half::new(2, 1), small_right: Half::new(1, 1) },
    ];
    TrainTrack::with_punctures(Surface { genus: 0, punctures: 3 }, switches, 3, &[])
}

#[test]
fn worked_right_split() {
    let t = theta();
    assert_eq!(large_branches(&t), vec![0]);
    // west switch: NW = 2, SW = 1; east switch: NE = 2, SE = 1
    let (t2, m) = split(&t, 0, Direction::Right).unwrap();
    assert_eq!(m, vec![vec![1, 1, 1], vec![0, 1, 0], vec![0, 0, 1]]);
    assert_eq!(t2.switches[0].large, Half::new(2, 0));
    assert_eq!(t2.switches[1].large, Half::new(1, 1));
    // the diagonal is small at both ends now
    assert!(large_branches(&t2).is_empty());
    // a left split picks up NW and SE, which are the same two branches here
    let (t3, left) = split(&t, 0, Direction::Left).unwrap();
    assert_eq!(left, m);
    assert_eq!(t3.switches[0].large, Half::new(1, 0));
    assert_eq!(t3.switches[1].large, Half::new(2, 1));
}

#[test]
fn admissible_directions_follow_the_diagonal() {
    let t = theta();
    assert_eq!(admissible_directions(&t, 0, &[0, 0, 0]).unwrap(), vec![Direction::Left, Direction::Right]);
    assert_eq!(admissible_directions(&t, 0, &[2, 1, 1]).unwrap(), vec![Direction::Left, Direction::Right]);
    for d in [Direction::Left, Direction::Right] {
        assert_eq!(lift_measure(&t, Split { branch: 0, direction: d }, &[2, 1, 1]).unwrap()[0], 0);
    }
    assert!(matches!(admissible_directions(&t, 0, &[2, 1, 0]), Err(SplitError::NotAMeasure(_))));

    let s = base(1, 2);
    let mu = vertex_cycles(&s.track).unwrap().iter().fold(vec![0i128; s.track.branch_count()], |mut acc, c| {
        acc.iter_mut().zip(&c.measure).for_each(|(x, y)| *x += y);
        acc
    });
    for e in large_branches(&s.track) {
        let dirs = admissible_directions(&s.track, e, &mu).unwrap();
        assert!(!dirs.is_empty());
        for d in dirs {
            let lifted = lift_measure(&s.track, Split { branch: e, direction: d }, &mu).unwrap();
            let (t2, m) = split(&s.track, e, d).unwrap();
            assert!(t2.satisfies_switch_conditions(&lifted));
            let back: Vec<i128> =
                m.iter().map(|row| row.iter().zip(&lifted).map(|(&a, &x)| a as i128 * x).sum()).collect();
            assert_eq!(back, mu);
        }
    }
}

#[test]
fn random_sequences_stay_complete_and_recurrent() {
    for (g, m) in SURFACES {
        let seq = random_splitting_sequence(&base(g, m), 25, 7 + g as u64).unwrap();
        assert_eq!(seq.len(), 25);
        assert_eq!(seq.tracks.len(), 26);
        for t in &seq.tracks {
            assert!(validate_track(&t.track).unwrap().complete);
            assert!(is_recurrent(&t.track).unwrap());
        }
    }
}

#[test]
fn random_sequences_are_deterministic() {
    let b = base(1, 2);
    let a = random_splitting_sequence(&b, 30, 99).unwrap();
    let c = random_splitting_sequence(&b, 30, 99).unwrap();
    assert_eq!(a.moves, c.moves);
    let d = random_splitting_sequence(&b, 30, 100).unwrap();
    assert_ne!(a.moves, d.moves);
    assert!(random_splitting_sequence(&b, 0, 1).unwrap().is_empty());
}

#[test]
fn embedding_follows_the_splits() {
    for (g, m) in [(0, 5), (1, 2), (0, 6)] {
        let seq = random_splitting_sequence(&base(g, m), 30, 3).unwrap();
        for c in vertex_cycles(&seq.last().track).unwrap() {
            let here = seq.last().measure_to_normal(&c.measure).unwrap();
            let there = seq.first().measure_to_normal(&transport(&seq, &c.measure).unwrap()).unwrap();
            assert_eq!(here, there, "S({g},{m})");
            assert!(here.is_simple_curve());
        }
    }
}

#[test]
fn transport_composes() {
    let seq = random_splitting_sequence(&base(0, 6), 20, 11).unwrap();
    let b = seq.first().track.branch_count();
    let id: Vec<i128> = (0..b as i128).collect();
    assert!(transport(&seq.slice(0, 0), &vertex_cycles(&seq.first().track).unwrap()[0].measure).is_ok());
    for c in vertex_cycles(&seq.last().track).unwrap() {
        let whole = transport(&seq, &c.measure).unwrap();
        let parts = transport(&seq.slice(0, 8), &transport(&seq.slice(8, 20), &c.measure).unwrap()).unwrap();
        assert_eq!(whole, parts);
        assert!(seq.first().track.satisfies_switch_conditions(&whole));
    }
    assert!(matches!(transport(&seq, &id), Err(SplitError::NotAMeasure(_))));
}

#[test]
fn guided_sequences_find_the_curve() {
    for (g, m) in [(0, 5), (1, 2), (2, 0), (0, 6)] {
        let b = base(g, m);
        for (n, seed) in [(5, 1), (15, 2), (40, 3)] {
            let gen = random_splitting_sequence(&b, n, seed).unwrap();
            for c in vertex_cycles(&gen.last().track).unwrap() {
                let mu = transport(&gen, &c.measure).unwrap();
                let guided = guided_splitting_sequence(&b, &mu, step_cap(n))
                    .unwrap_or_else(|e| panic!("S({g},{m}) n={n}: {e}"));
                let last = guided.last();
                let target = b.measure_to_normal(&mu).unwrap();
                assert!(vertex_cycles(&last.track)
                    .unwrap()
                    .iter()
                    .any(|v| last.measure_to_normal(&v.measure).unwrap() == target));
            }
        }
    }
}

#[test]
fn vertex_cycles_need_no_guiding() {
    let b = base(1, 2);
    for c in vertex_cycles(&b.track).unwrap() {
        assert!(guided_splitting_sequence(&b, &c.measure, 0).unwrap().is_empty());
    }
    let zero = vec![0; b.track.branch_count()];
    assert!(guided_splitting_sequence(&b, &zero, 10).is_err());
}

#[test]
fn standard_pants_decompositions() {
    for (g, m) in SURFACES {
        let s = make_surface(g, m).unwrap();
        let p = PantsDecomposition::standard(s).unwrap();
        assert_eq!(p.curves().len() as i64, s.complexity());
        let t = adapted_track(&p).unwrap();
        assert!(validate_track(&t.track).unwrap().complete);
        let cycles: Vec<_> = vertex_cycles(&t.track)
            .unwrap()
            .iter()
            .map(|c| t.measure_to_normal(&c.measure).unwrap())
            .collect();
        for c in p.curves() {
            assert!(cycles.contains(&c));
        }
    }
    let t = adapted_track(&PantsDecomposition::standard(make_surface(0, 5).unwrap()).unwrap()).unwrap();
    assert_eq!((t.track.switch_count(), t.track.branch_count()), (8, 12));
}

#[test]
fn other_decompositions_are_refused() {
    let s = make_surface(0, 5).unwrap();
    let mut p = PantsDecomposition::standard(s).unwrap();
    let seq = random_splitting_sequence(&adapted_track(&p).unwrap(), 10, 5).unwrap();
    let other = seq.last().measure_to_normal(&vertex_cycles(&seq.last().track).unwrap()[0].measure).unwrap();
    p.curves = other.clone();
    assert!(matches!(PantsDecomposition::new(other), Err(SplitError::UnsupportedSurface(_))));
    assert!(matches!(adapted_track(&p), Err(SplitError::UnsupportedSurface(_))));
}

#[test]
fn sequence_file_round_trip() {
    let seq = random_splitting_sequence(&base(1, 2), 12, 4).unwrap();
    let text = serde_json::to_string(&seq.to_file()).unwrap();
    assert!(text.starts_with("{\"base\":{\"surface\":{\"g\":1,\"m\":2}},\"moves\":[{\"branch\":"));
    assert!(text.contains("\"dir\":\"L\"") || text.contains("\"dir\":\"R\""));
    let back = SplittingSequence::from_file(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back.moves, seq.moves);
    assert_eq!(back.last().track, seq.last().track);
    assert_eq!(back.last().paths, seq.last().paths);
}
