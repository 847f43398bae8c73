use surface_curves::*;

#[test]
fn exceptional_surfaces() {
    assert!(matches!(make_surface(0, 4), Err(Error::Exceptional { .. })));
    assert!(matches!(make_surface(1, 1), Err(Error::Exceptional { .. })));
    assert_eq!(make_surface(2, 0).unwrap().complexity(), 3);
}

#[test]
fn euler_counts_for_small_complexity() {
    for g in 0..=3 {
        for m in 0..=9 {
            let Ok(s) = make_surface(g, m) else { continue };
            if s.complexity() > 6 {
                continue;
            }
            let t = reference_triangulation(s).unwrap();
            assert!(t.check_counts(), "{s}");
            let (g, m) = (g as i64, m as i64);
            let (e, f) = if m == 0 { (6 * g - 3, 4 * g - 2) } else { (6 * g - 6 + 3 * m, 4 * g - 4 + 2 * m) };
            assert_eq!(t.edge_count() as i64, e);
            assert_eq!(t.triangles().len() as i64, f);
        }
    }
}

#[test]
fn enumeration_snapshot() {
    let t = reference_triangulation(make_surface(0, 5).unwrap()).unwrap();
    assert_eq!(t.enumerate_curves(6).len(), 3);
    assert_eq!(t.enumerate_curves(12).len(), 19);
    let t = reference_triangulation(make_surface(1, 2).unwrap()).unwrap();
    assert_eq!(t.enumerate_curves(6).len(), 8);
    let t = reference_triangulation(make_surface(2, 0).unwrap()).unwrap();
    assert_eq!(t.enumerate_curves(6).len(), 12);
}

#[test]
fn weight_two_vector() {
    let t = reference_triangulation(make_surface(0, 5).unwrap()).unwrap();
    let c = t.normalize(&[2, 2, 0, 0, 0, 0, 0, 0, 0]).unwrap();
    assert_eq!(c.components.len(), 1);
    assert_eq!(c.components[0].weight, 2);
}

#[test]
fn peripheral_loops_are_dropped() {
    let t = reference_triangulation(make_surface(0, 5).unwrap()).unwrap();
    // the link of a puncture: one arc in every corner at that vertex
    let v = 1;
    let mut x = vec![0u64; t.edge_count()];
    for s in 0..t.side_count() {
        if t.corner_vertex(s) == v {
            x[s / 2] += 1;
            x[t.next(s) / 2] += 1;
        }
    }
    let x: Vec<u64> = x.iter().map(|k| k / 2).collect();
    let r = t.normalize_report(&x).unwrap();
    assert!(r.curve.is_empty());
    assert_eq!(r.dropped_peripheral, 1);
}

#[test]
fn curve_file_round_trip() {
    let t = reference_triangulation(make_surface(1, 2).unwrap()).unwrap();
    let c = &t.enumerate_curves(8)[3];
    let text = serde_json::to_string(&c.to_file()).unwrap();
    assert!(text.starts_with(r#"{"surface":{"g":1,"m":2},"coords":["#));
    let back: CurveFile = serde_json::from_str(&text).unwrap();
    assert_eq!(&t.curve_from_file(&back).unwrap(), c);
}

#[test]
fn normalize_is_idempotent_on_sums() {
    let t = reference_triangulation(make_surface(1, 2).unwrap()).unwrap();
    let cs = t.enumerate_curves(8);
    for a in &cs {
        for b in &cs {
            let x: Vec<u64> = a.coords.iter().zip(&b.coords).map(|(p, q)| p + 2 * q).collect();
            if let Ok(n) = t.normalize(&x) {
                assert_eq!(t.normalize(&n.coords).unwrap(), n);
            }
        }
    }
}
