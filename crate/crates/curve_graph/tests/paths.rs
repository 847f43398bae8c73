use curve_graph::*;
use splitting::*;
use surface_curves::*;
use train_track::vertex_cycles;

fn base(g: u32, m: u32) -> EmbeddedTrack {
    EmbeddedTrack::standard(make_surface(g, m).unwrap()).unwrap()
}

/// A guided sequence towards a vertex cycle of a random descendant.
fn guided(b: &EmbeddedTrack, n: usize, seed: u64) -> (SplittingSequence, MultiCurve) {
    let g = random_splitting_sequence(b, n, seed).unwrap();
    let vc = vertex_cycles(&g.last().track).unwrap();
    let mu = transport(&g, &vc[seed as usize % vc.len()].measure).unwrap();
    let seq = guided_splitting_sequence(b, &mu, step_cap(n)).unwrap();
    (seq, b.measure_to_normal(&mu).unwrap())
}

fn ball_for(paths: &[&PathInGraph]) -> Ball {
    let center = paths[0].vertices[0].clone();
    let vs: Vec<&[MultiCurve]> = paths.iter().map(|p| p.vertices.as_slice()).collect();
    let extra = linking_curves(&center, &vs).unwrap();
    Ball::with_extra(&center, 3, 12, &extra).unwrap()
}

#[test]
fn phi_is_deterministic_and_a_vertex_cycle() {
    let b = base(0, 5);
    let seq = random_splitting_sequence(&b, 12, 3).unwrap();
    for t in &seq.tracks {
        let c = phi(t).unwrap();
        assert_eq!(c, phi(&t.clone()).unwrap());
        let cycles: Vec<MultiCurve> =
            vertex_cycles(&t.track).unwrap().iter().map(|v| t.measure_to_normal(&v.measure).unwrap()).collect();
        assert!(cycles.contains(&c));
        assert!(cycles.iter().all(|v| v.coords >= c.coords));
    }
}

#[test]
fn image_of_an_empty_sequence_is_one_vertex() {
    let b = base(1, 2);
    let img = phi_image(&SplittingSequence::new(b.clone())).unwrap();
    assert_eq!(img.vertices, vec![phi(&b).unwrap()]);
}

#[test]
fn image_ends_at_the_target() {
    let b = base(0, 5);
    for seed in 0..10 {
        let (seq, target) = guided(&b, 20, seed);
        let img = phi_image(&seq).unwrap();
        assert_eq!(img.vertices[0], phi(&b).unwrap());
        let last: Vec<MultiCurve> = vertex_cycles(&seq.last().track)
            .unwrap()
            .iter()
            .map(|v| seq.last().measure_to_normal(&v.measure).unwrap())
            .collect();
        assert!(last.contains(&target));
        assert!(img.vertices.windows(2).all(|w| w[0] != w[1]));
    }
}

#[test]
fn geodesic_and_constant_paths_have_constant_one() {
    let cs = reference_triangulation(make_surface(0, 5).unwrap()).unwrap().enumerate_curves(14);
    let extra = linking_curves(&cs[0], &[&cs]).unwrap();
    let ball = Ball::with_extra(&cs[0], 3, 14, &extra).unwrap();
    let far = (0..ball.len()).max_by_key(|&j| ball.graph_distance(ball.center, j).unwrap()).unwrap();
    // walk back along decreasing distance
    let d = ball.bfs(ball.center);
    let mut walk = vec![far];
    while d[*walk.last().unwrap()] > 0 {
        let v = *walk.last().unwrap();
        walk.push(*ball.adjacency[v].iter().find(|&&w| d[w] + 1 == d[v]).unwrap());
    }
    assert!(walk.len() >= 3);
    let geodesic = PathInGraph::new(walk.iter().map(|&i| ball.universe[i].clone()).collect());
    assert_eq!(unparam_qg_constant(&geodesic, &ball).unwrap().p, 1.0);
    let constant = PathInGraph::new(vec![cs[0].clone(); 4]);
    assert_eq!(constant.len(), 1);
    assert_eq!(unparam_qg_constant(&constant, &ball).unwrap().p, 1.0);
}

#[test]
fn images_are_quasi_geodesics_in_either_direction() {
    let b = base(0, 5);
    let images: Vec<PathInGraph> = (0..8).map(|s| phi_image(&guided(&b, 25, s).0).unwrap()).collect();
    let refs: Vec<&PathInGraph> = images.iter().collect();
    let ball = ball_for(&refs);
    for img in &images {
        let fit = unparam_qg_constant(img, &ball).unwrap();
        let back = unparam_qg_constant(&img.reversed(), &ball).unwrap();
        assert!(fit.p >= 1.0 && fit.p.is_finite());
        assert!((fit.p - back.p).abs() < 1e-6);
        let certified = *fit.certified.numer() as f64 / *fit.certified.denom() as f64;
        assert!(certified >= fit.p - 1e-9 && certified <= fit.p * (1.0 + 1e-5));
    }
}

#[test]
fn missing_distances_are_reported() {
    let cs = reference_triangulation(make_surface(0, 5).unwrap()).unwrap().enumerate_curves(12);
    let ball = Ball::new(&cs[0], 1, 12).unwrap();
    let outside = reference_triangulation(make_surface(0, 5).unwrap()).unwrap().enumerate_curves(20).pop().unwrap();
    let path = PathInGraph::new(vec![cs[0].clone(), outside]);
    assert!(matches!(unparam_qg_constant(&path, &ball), Err(GraphError::NotInUniverse)));
}

#[test]
fn degenerate_and_thin_triangles() {
    let b = base(0, 5);
    let (s1, x) = guided(&b, 20, 1);
    let (s2, y) = guided(&b, 20, 2);
    let a = joined_image(&s1, &x, &s2, &y).unwrap();
    let side_x = phi_image(&s1).unwrap();
    let side_y = phi_image(&s2).unwrap();
    let ball = ball_for(&[&a, &side_x, &side_y]);
    // the joined side lies on the other two
    let mut inside = vec![x.clone(), y.clone()];
    inside.extend(side_x.vertices.iter().cloned());
    inside.extend(side_y.vertices.iter().cloned());
    let union = PathInGraph::new(inside);
    assert_eq!(one_sided(&ball, &a.indices(&ball).unwrap(), &union.indices(&ball).unwrap()).unwrap(), 0);
    let delta = thin_triangle_delta(&side_x, &side_y, &a, &ball).unwrap();
    assert!(delta <= diameter(&a.indices(&ball).unwrap(), &ball).unwrap());
    assert_eq!(thin_triangle_delta(&a, &a, &a, &ball).unwrap(), 0);
    assert_eq!(hausdorff(&a, &a.reversed(), &ball).unwrap(), 0);
}
