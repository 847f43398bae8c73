use curve_graph::*;
use surface_curves::*;

fn curves(g: u32, m: u32, norm: u64) -> Vec<MultiCurve> {
    reference_triangulation(Surface::new(g, m).unwrap()).unwrap().enumerate_curves(norm)
}

#[test]
fn radius_zero_is_the_center() {
    let cs = curves(0, 5, 6);
    let ball = Ball::new(&cs[0], 0, 6).unwrap();
    assert_eq!(ball.members(), vec![ball.center]);
    assert_eq!(ball.boundary(), vec![ball.center]);
}

#[test]
fn neighbours_are_the_disjoint_curves() {
    let cs = curves(0, 5, 12);
    let ball = Ball::new(&cs[3], 1, 12).unwrap();
    for (i, c) in ball.universe.iter().enumerate() {
        let disjoint = i != ball.center && intersection(c, &cs[3]).unwrap() == 0;
        assert_eq!(ball.adjacency[ball.center].contains(&i), disjoint);
        assert_eq!(ball.layers[i] == Some(1), disjoint);
    }
    for (i, row) in ball.adjacency.iter().enumerate() {
        assert!(!row.contains(&i));
        for &j in row {
            assert!(ball.adjacency[j].contains(&i));
        }
    }
}

#[test]
fn center_outside_universe_is_refused() {
    let big = curves(0, 5, 14).into_iter().find(|c| c.coords.iter().sum::<u64>() > 6).unwrap();
    assert!(matches!(Ball::new(&big, 2, 6), Err(GraphError::CenterNotInUniverse)));
    assert!(Ball::with_extra(&big, 2, 6, std::slice::from_ref(&big)).is_ok());
}

#[test]
fn closed_surfaces_are_refused() {
    let cs = curves(2, 0, 8);
    assert!(Ball::new(&cs[0], 1, 8).is_err());
}

#[test]
fn ball_sizes_snapshot() {
    let cs = curves(0, 5, 6);
    let sizes: Vec<[usize; 4]> = cs
        .iter()
        .map(|c| [0, 1, 2, 3].map(|r| Ball::new(c, r, 6).unwrap().members().len()))
        .collect();
    assert_eq!(sizes, SNAPSHOT);
    let universes: Vec<usize> = [12, 14, 16].map(|m| Ball::new(&cs[0], 0, m).unwrap().len()).to_vec();
    assert_eq!(universes, [19, 29, 39]);
}

const SNAPSHOT: [[usize; 4]; 3] = [[1, 3, 3, 3], [1, 2, 3, 3], [1, 2, 3, 3]];

#[test]
fn metric_axioms_and_distance_bound() {
    let cs = curves(0, 5, 10);
    let extra = linking_curves(&cs[0], &[&cs]).unwrap();
    let ball = Ball::with_extra(&cs[0], 4, 10, &extra).unwrap();
    let n = cs.len();
    let idx: Vec<usize> = cs.iter().map(|c| ball.index_of(c).unwrap()).collect();
    for a in 0..n {
        for b in 0..n {
            let d = ball.graph_distance(idx[a], idx[b]).unwrap();
            assert_eq!(d, ball.graph_distance(idx[b], idx[a]).unwrap());
            assert_eq!(d == 0, a == b);
            let i = intersection(&cs[a], &cs[b]).unwrap();
            assert_eq!(d == 1, i == 0 && a != b);
            assert!(d as u64 <= i + 1, "d = {d}, i = {i}");
            for c in 0..n {
                let via = ball.graph_distance(idx[a], idx[c]).unwrap() + ball.graph_distance(idx[c], idx[b]).unwrap();
                assert!(d <= via);
            }
        }
    }
}

#[test]
fn certified_distances() {
    let cs = curves(0, 5, 10);
    let extra = linking_curves(&cs[0], &[&cs]).unwrap();
    let ball = Ball::with_extra(&cs[0], 4, 10, &extra).unwrap();
    for a in &cs {
        for b in &cs {
            let d = ball.distance(a, b).unwrap();
            let bfs = ball.graph_distance(ball.index_of(a).unwrap(), ball.index_of(b).unwrap()).unwrap();
            assert!(d.lower() <= bfs);
            if let Some(u) = d.upper() {
                assert!(u >= d.lower() && bfs <= u.max(bfs));
                assert!(bfs >= d.lower());
            }
            // a small universe can miss the witnessing path, never shorten it
            if let Distance::Exact(x) = d {
                assert!(x <= bfs);
                if x < 2 || bfs == 2 {
                    assert_eq!(x, bfs);
                }
            }
        }
    }
    let outside = curves(0, 5, 20).into_iter().find(|c| ball.index_of(c).is_none()).unwrap();
    assert!(matches!(ball.distance(&cs[0], &outside), Err(GraphError::NotInUniverse)));
}

#[test]
fn surgery_links_connect_far_curves() {
    let cs = curves(1, 2, 16);
    let far: Vec<MultiCurve> = cs.iter().rev().take(5).cloned().collect();
    let extra = linking_curves(&cs[0], &[&far]).unwrap();
    let ball = Ball::with_extra(&cs[0], 2, 0, &extra).unwrap();
    let dist = ball.bfs(ball.center);
    assert!(dist.iter().all(|&d| d != UNREACHED));
}
