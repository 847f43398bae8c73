//! Seeded experiments behind the `cc`, `seq` and `flat` commands and the
//! acceptance run.

use anyhow::{bail, Result};
use curve_graph::{
    delta_bound, diameter, grid, joined_image, l_path_family, l_set, lemma32_profile, linking_curves, phi_image,
    prop35_check, geodesic_family, thin_triangle_delta, tree, triple_center, extend_to_pants, unparam_qg_constant,
    Ball, CriterionInstance, PathInGraph, Rational,
};
use flat_structure::{area, build, q_length_bound, staircase, RectangleComplex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use splitting::{
    adapted_track, guided_splitting_sequence, random_splitting_sequence, step_cap, transport, EmbeddedTrack,
    PantsDecomposition, SplittingSequence,
};
use surface_curves::{fills, intersection, oracle_intersection, realize, reference_triangulation, MultiCurve, Surface};
use train_track::{
    counting_measure, extreme_rays_by_supports, is_extreme, validate_track, vertex_cycles, Diagnostics,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Splitting sequence guided towards a vertex cycle of a random
/// descendant, with the target and its generation length.
#[derive(Clone, Debug)]
pub struct GuidedSample {
    pub generated: usize,
    pub sequence: SplittingSequence,
    pub target: MultiCurve,
    pub measure: Vec<i128>,
}

pub fn guided_sample(base: &EmbeddedTrack, lengths: std::ops::RangeInclusive<usize>, seed: u64) -> Result<GuidedSample> {
    let mut r = rng(seed);
    let n = r.gen_range(lengths);
    let gen = random_splitting_sequence(base, n, r.gen())?;
    let cycles = vertex_cycles(&gen.last().track)?;
    let pick = &cycles[r.gen_range(0..cycles.len())];
    let measure = transport(&gen, &pick.measure)?;
    let sequence = guided_splitting_sequence(base, &measure, step_cap(n))?;
    let target = base.measure_to_normal(&measure)?;
    Ok(GuidedSample { generated: n, sequence, target, measure })
}

pub fn enumerate(surface: Surface, maxnorm: u64) -> Result<Vec<MultiCurve>> {
    Ok(reference_triangulation(surface)?.enumerate_curves(maxnorm))
}

/// A ball whose universe holds every curve up to `maxnorm` and is linked
/// through the given paths.
pub fn linked_ball(center: &MultiCurve, maxnorm: u64, paths: &[&[MultiCurve]]) -> Result<Ball> {
    let extra = linking_curves(center, paths)?;
    Ok(Ball::with_extra(center, 2, maxnorm, &extra)?)
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    if s.is_empty() {
        return f64::NAN;
    }
    s[s.len() / 2]
}

fn max(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

// ---------------------------------------------------------------- criteria

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub criterion: u32,
    pub name: &'static str,
    pub passed: bool,
    pub summary: String,
}

fn outcome(criterion: u32, name: &'static str, passed: bool, summary: String) -> Outcome {
    Outcome { criterion, name, passed, summary }
}

pub const CENSUS_SURFACES: [(u32, u32); 3] = [(0, 5), (1, 2), (2, 0)];

pub fn surface(g: u32, m: u32) -> Result<Surface> {
    Ok(surface_curves::make_surface(g, m)?)
}

pub fn census(s: Surface) -> Result<(Diagnostics, bool)> {
    let d = validate_track(&EmbeddedTrack::standard(s)?.track)?;
    let (g, m) = (s.genus as i64, s.punctures as i64);
    let ok = d.switches as i64 == 12 * g - 12 + 4 * m
        && d.branches as i64 == 18 * g - 18 + 6 * m
        && d.complete
        && d.trigons + d.punctured_monogons == d.regions
        && d.cone_dimension as i64 == 6 * g - 6 + 2 * m;
    Ok((d, ok))
}

pub fn criterion1() -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut passed = true;
    for (g, m) in CENSUS_SURFACES {
        let (d, ok) = census(surface(g, m)?)?;
        passed &= ok;
        parts.push(format!("S({g},{m}) {}sw/{}br/dim {}", d.switches, d.branches, d.cone_dimension));
    }
    Ok(outcome(1, "complete-track census", passed, parts.join(", ")))
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexCycleSurvey {
    pub surface: Surface,
    pub tracks: usize,
    pub max_count: usize,
    pub max_entry: i128,
    pub failures: Vec<String>,
    pub cross_checked: usize,
}

/// Vertex cycles of `samples` random descendants of the standard track.
pub fn vertex_cycle_survey(s: Surface, samples: usize, seed: u64, cross_check: usize) -> Result<VertexCycleSurvey> {
    let base = EmbeddedTrack::standard(s)?;
    let rows: Vec<(usize, i128, Vec<String>)> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut r = rng(seed.wrapping_add(k as u64));
            let n = r.gen_range(1..=40);
            let mut bad = Vec::new();
            let seq = match random_splitting_sequence(&base, n, r.gen()) {
                Ok(q) => q,
                Err(e) => return (0, 0, vec![format!("sample {k}: {e}")]),
            };
            let t = &seq.last().track;
            let cycles = match vertex_cycles(t) {
                Ok(c) => c,
                Err(e) => return (0, 0, vec![format!("sample {k}: {e}")]),
            };
            let mut top = 0;
            for c in &cycles {
                top = top.max(*c.measure.iter().max().unwrap_or(&0));
                if c.measure.iter().any(|&x| !(0..=2).contains(&x)) {
                    bad.push(format!("sample {k}: entry outside 0..=2"));
                }
                if counting_measure(t, &c.curve).ok().as_ref() != Some(&c.measure) {
                    bad.push(format!("sample {k}: counting measure differs"));
                }
                if !is_extreme(t, &c.measure) {
                    bad.push(format!("sample {k}: ray is not extreme"));
                }
            }
            if k < cross_check {
                let support: Vec<Vec<i128>> = extreme_rays_by_supports(&t.switch_matrix(), t.branch_count());
                let found: Vec<Vec<i128>> = cycles.iter().map(|c| c.measure.clone()).collect();
                if support != found {
                    bad.push(format!("sample {k}: {} rays, support search finds {}", found.len(), support.len()));
                }
            }
            (cycles.len(), top, bad)
        })
        .collect();
    Ok(VertexCycleSurvey {
        surface: s,
        tracks: samples,
        max_count: rows.iter().map(|r| r.0).max().unwrap_or(0),
        max_entry: rows.iter().map(|r| r.1).max().unwrap_or(0),
        failures: rows.into_iter().flat_map(|r| r.2).collect(),
        cross_checked: cross_check.min(samples),
    })
}

pub fn criterion2(seed: u64) -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut passed = true;
    for (g, m) in CENSUS_SURFACES {
        let v = vertex_cycle_survey(surface(g, m)?, 200, seed, 10)?;
        passed &= v.failures.is_empty() && v.max_entry <= 2;
        parts.push(format!("S({g},{m}) max {} cycles, {} failures", v.max_count, v.failures.len()));
    }
    Ok(outcome(2, "vertex cycles", passed, parts.join(", ")))
}

/// Transition matrices map vertex cycles of each track to measures on the
/// previous one; transported final cycles are measures on the base.
pub fn transport_soundness(s: Surface, samples: usize, length: usize, seed: u64) -> Result<Vec<String>> {
    let base = EmbeddedTrack::standard(s)?;
    let bad: Vec<Vec<String>> = (0..samples)
        .into_par_iter()
        .map(|k| -> Result<Vec<String>> {
            let seq = random_splitting_sequence(&base, length, seed.wrapping_add(k as u64))?;
            let mut bad = Vec::new();
            for step in 0..seq.len() {
                let one = seq.slice(step, step + 1);
                for c in vertex_cycles(&one.last().track)? {
                    let back = transport(&one, &c.measure)?;
                    if !one.first().track.satisfies_switch_conditions(&back) {
                        bad.push(format!("sequence {k} step {step}"));
                    }
                }
            }
            for c in vertex_cycles(&seq.last().track)? {
                if !base.track.satisfies_switch_conditions(&transport(&seq, &c.measure)?) {
                    bad.push(format!("sequence {k}: final cycle"));
                }
            }
            Ok(bad)
        })
        .collect::<Result<_>>()?;
    Ok(bad.into_iter().flatten().collect())
}

pub fn criterion3(seed: u64) -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut passed = true;
    for (g, m) in CENSUS_SURFACES {
        let bad = transport_soundness(surface(g, m)?, 100, 40, seed)?;
        passed &= bad.is_empty();
        parts.push(format!("S({g},{m}) {} violations", bad.len()));
    }
    Ok(outcome(3, "transport soundness", passed, parts.join(", ")))
}

#[derive(Clone, Debug, Serialize)]
pub struct GuidedRun {
    pub generated: usize,
    pub steps: usize,
    pub cap: usize,
    pub found: bool,
    pub error: Option<String>,
}

/// Guided sequences towards targets from random sequences of length up to
/// 40; each must end with the target as a vertex cycle within the cap.
pub fn guided_runs(s: Surface, samples: usize, seed: u64) -> Result<Vec<GuidedRun>> {
    let base = EmbeddedTrack::standard(s)?;
    (0..samples)
        .into_par_iter()
        .map(|k| -> Result<GuidedRun> {
            let mut r = rng(seed.wrapping_add(k as u64));
            let n = r.gen_range(1..=40);
            let gen = random_splitting_sequence(&base, n, r.gen())?;
            let cycles = vertex_cycles(&gen.last().track)?;
            let mu = transport(&gen, &cycles[r.gen_range(0..cycles.len())].measure)?;
            let target = base.measure_to_normal(&mu)?;
            Ok(match guided_splitting_sequence(&base, &mu, step_cap(n)) {
                Ok(seq) => {
                    let last = seq.last();
                    let mut found = false;
                    for v in vertex_cycles(&last.track)? {
                        found |= last.measure_to_normal(&v.measure)? == target;
                    }
                    GuidedRun { generated: n, steps: seq.len(), cap: step_cap(n), found, error: None }
                }
                Err(e) => GuidedRun { generated: n, steps: 0, cap: step_cap(n), found: false, error: Some(e.to_string()) },
            })
        })
        .collect()
}

pub fn criterion4(seed: u64) -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut passed = true;
    for (g, m) in CENSUS_SURFACES {
        let runs = guided_runs(surface(g, m)?, 100, seed)?;
        let failures = runs.iter().filter(|r| !r.found || r.steps > r.cap).count();
        let longest = runs.iter().map(|r| r.steps).max().unwrap_or(0);
        passed &= failures == 0;
        parts.push(format!("S({g},{m}) {failures} failures, longest {longest} steps"));
    }
    Ok(outcome(4, "guided realization", passed, parts.join(", ")))
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleSweep {
    pub surface: Surface,
    pub oracle_norm: u64,
    pub oracle_pairs: usize,
    pub small_curves: usize,
    pub engine_pairs: usize,
    pub mismatches: Vec<String>,
}

/// The brute-force oracle on every pair up to `oracle_norm`, and the two
/// intersection engines against each other on every pair of curves with
/// all coordinates at most `max_entry`.
pub fn oracle_sweep(s: Surface, oracle_norm: u64, max_entry: u64) -> Result<OracleSweep> {
    let tri = reference_triangulation(s)?;
    let low = tri.enumerate_curves(oracle_norm);
    let mut mismatches: Vec<String> = low
        .par_iter()
        .flat_map_iter(|a| {
            low.iter().filter_map(move |b| {
                let i = intersection(a, b).ok()?;
                let o = oracle_intersection(a, b);
                (o.as_ref().ok() != Some(&i)).then(|| format!("{:?} {:?}: {i} vs {o:?}", a.coords, b.coords))
            })
        })
        .collect();
    let small: Vec<MultiCurve> = tri
        .enumerate_curves(max_entry * tri.edge_count() as u64)
        .into_iter()
        .filter(|c| c.coords.iter().all(|&x| x <= max_entry))
        .collect();
    mismatches.par_extend(small.par_iter().flat_map_iter(|a| {
        small.iter().filter_map(move |b| {
            let i = intersection(a, b).ok()?;
            let j = intersection(b, a).ok()?;
            let k = realize(a, b).ok()?.crossing_count();
            (i != j || i != k).then(|| format!("{:?} {:?}: {i}/{j}/{k}", a.coords, b.coords))
        })
    }));
    // bilinearity on sums of disjoint pairs
    for (x, a) in small.iter().enumerate().take(40) {
        for b in small.iter().skip(x + 1).take(40) {
            if intersection(a, b)? != 0 {
                continue;
            }
            let sum: Vec<u64> = a.coords.iter().zip(&b.coords).map(|(p, q)| 2 * p + 3 * q).collect();
            let ab = tri.normalize(&sum)?;
            for c in small.iter().take(30) {
                if intersection(&ab, c)? != 2 * intersection(a, c)? + 3 * intersection(b, c)? {
                    mismatches.push(format!("bilinearity {:?} {:?} {:?}", a.coords, b.coords, c.coords));
                }
            }
        }
    }
    Ok(OracleSweep {
        surface: s,
        oracle_norm,
        oracle_pairs: low.len() * low.len(),
        small_curves: small.len(),
        engine_pairs: small.len() * small.len(),
        mismatches,
    })
}

pub fn criterion5() -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut passed = true;
    for (g, m, norm) in [(0, 5, 14), (1, 2, 12)] {
        let o = oracle_sweep(surface(g, m)?, norm, 6)?;
        passed &= o.mismatches.is_empty();
        parts.push(format!(
            "S({g},{m}) oracle {} pairs, engines {} pairs, {} mismatches",
            o.oracle_pairs,
            o.engine_pairs,
            o.mismatches.len()
        ));
    }
    Ok(outcome(5, "intersection oracle", passed, parts.join(", ")))
}

#[derive(Clone, Debug, Serialize)]
pub struct DistanceCheck {
    pub surface: Surface,
    pub universe: usize,
    pub pairs: usize,
    pub finite: usize,
    pub violations: Vec<String>,
}

/// `d <= i + 1`, `d = 1` exactly for disjoint pairs and the metric axioms
/// over all enumerated curves, in a universe holding a surgery path
/// between every pair.
pub fn distance_check(s: Surface, maxnorm: u64) -> Result<DistanceCheck> {
    let cs = enumerate(s, maxnorm)?;
    let pairs: Vec<[MultiCurve; 2]> =
        cs.iter().enumerate().flat_map(|(k, a)| cs[k + 1..].iter().map(move |b| [a.clone(), b.clone()])).collect();
    let paths: Vec<&[MultiCurve]> = pairs.iter().map(|p| p.as_slice()).collect();
    let ball = linked_ball(&cs[0], maxnorm, &paths)?;
    let idx: Vec<usize> = cs.iter().map(|c| ball.require(c)).collect::<curve_graph::Result<_>>()?;
    let n = cs.len();
    let rows: Vec<(usize, Vec<String>)> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut finite = 0;
            let mut bad = Vec::new();
            for b in 0..n {
                let Some(d) = ball.graph_distance(idx[a], idx[b]) else { continue };
                finite += 1;
                let i = intersection(&cs[a], &cs[b]).unwrap_or(u64::MAX);
                if d as u64 > i.saturating_add(1) {
                    bad.push(format!("d = {d} > i + 1 = {}", i + 1));
                }
                if (d == 1) != (i == 0 && a != b) || (d == 0) != (a == b) {
                    bad.push(format!("pair ({a},{b}): d = {d}, i = {i}"));
                }
                if Some(d) != ball.graph_distance(idx[b], idx[a]) {
                    bad.push(format!("pair ({a},{b}) asymmetric"));
                }
                for c in 0..n {
                    if let (Some(x), Some(y)) = (ball.graph_distance(idx[a], idx[c]), ball.graph_distance(idx[c], idx[b])) {
                        if d > x + y {
                            bad.push(format!("triangle ({a},{c},{b})"));
                        }
                    }
                }
            }
            (finite, bad)
        })
        .collect();
    Ok(DistanceCheck {
        surface: s,
        universe: ball.len(),
        pairs: n * n,
        finite: rows.iter().map(|r| r.0).sum(),
        violations: rows.into_iter().flat_map(|r| r.1).collect(),
    })
}

pub fn criterion6() -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut passed = true;
    for (g, m, norm) in [(0, 5, 16), (1, 2, 12)] {
        let c = distance_check(surface(g, m)?, norm)?;
        passed &= c.violations.is_empty() && c.finite == c.pairs;
        parts.push(format!("S({g},{m}) {} pairs ({} finite), {} violations", c.pairs, c.finite, c.violations.len()));
    }
    Ok(outcome(6, "distance bound", passed, parts.join(", ")))
}

#[derive(Clone, Debug, Serialize)]
pub struct QgRow {
    pub sample: usize,
    pub generated: usize,
    pub splits: usize,
    pub vertices: usize,
    pub p: Option<f64>,
    pub step_max: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct QgScan {
    pub maxnorm: u64,
    pub universe: usize,
    pub rows: Vec<QgRow>,
    pub p_max: f64,
    pub p_median: f64,
    /// Largest distance between images of consecutive tracks.
    pub d0_max: u32,
}

pub fn guided_samples(base: &EmbeddedTrack, samples: usize, seed: u64) -> Result<Vec<GuidedSample>> {
    (0..samples).into_par_iter().map(|k| guided_sample(base, 5..=40, seed.wrapping_add(k as u64))).collect()
}

/// Least quasi-geodesic constants of images of guided sequences.
pub fn qg_scan(samples: &[GuidedSample], maxnorm: u64) -> Result<QgScan> {
    let images: Vec<PathInGraph> = samples.iter().map(|s| phi_image(&s.sequence)).collect::<curve_graph::Result<_>>()?;
    let paths: Vec<&[MultiCurve]> = images.iter().map(|p| p.vertices.as_slice()).collect();
    let ball = linked_ball(&images[0].vertices[0], maxnorm, &paths)?;
    let rows: Vec<QgRow> = images
        .par_iter()
        .zip(samples)
        .enumerate()
        .map(|(k, (img, s))| {
            let idx = img.indices(&ball).unwrap_or_default();
            let step_max = idx.windows(2).filter_map(|w| ball.graph_distance(w[0], w[1])).max().unwrap_or(0);
            QgRow {
                sample: k,
                generated: s.generated,
                splits: s.sequence.len(),
                vertices: img.len(),
                p: unparam_qg_constant(img, &ball).ok().map(|f| f.p),
                step_max,
            }
        })
        .collect();
    let ps: Vec<f64> = rows.iter().filter_map(|r| r.p).collect();
    Ok(QgScan {
        maxnorm,
        universe: ball.len(),
        p_max: max(&ps),
        p_median: median(&ps),
        d0_max: rows.iter().map(|r| r.step_max).max().unwrap_or(0),
        rows,
    })
}

pub fn criterion7(seed: u64) -> Result<Outcome> {
    let base = EmbeddedTrack::standard(surface(0, 5)?)?;
    let samples = guided_samples(&base, 100, seed)?;
    let small = qg_scan(&samples, 12)?;
    let large = qg_scan(&samples, 24)?;
    let finite = small.rows.iter().chain(&large.rows).all(|r| r.p.is_some_and(f64::is_finite));
    let stable = |x: f64, y: f64| (x - y).abs() <= 0.1 * x;
    let passed = finite && stable(small.p_max, large.p_max) && stable(small.p_median, large.p_median);
    Ok(outcome(
        7,
        "quasi-geodesics",
        passed,
        format!(
            "p_emp max {:.4} / median {:.4} at maxnorm 12, {:.4} / {:.4} at 24; D0_emp {}",
            small.p_max, small.p_median, large.p_max, large.p_median, small.d0_max.max(large.d0_max)
        ),
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleRow {
    pub sample: usize,
    pub targets: [usize; 3],
    pub delta: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleScan {
    pub rows: Vec<TriangleRow>,
    pub universe: usize,
    pub delta_max: Option<u32>,
    pub attempts: usize,
}

/// Pool of guided targets and triples of them that pairwise fill (so are
/// at distance at least 3).
pub fn filling_triples(pool: &[GuidedSample], want: usize, seed: u64) -> Result<(Vec<[usize; 3]>, usize)> {
    let n = pool.len();
    let fill: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|a| (0..n).map(|b| a != b && fills(&pool[a].target, &pool[b].target).unwrap_or(false)).collect())
        .collect();
    let mut r = rng(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < want && attempts < 200 * want {
        attempts += 1;
        let t: Vec<usize> = (0..n).collect::<Vec<_>>().choose_multiple(&mut r, 3).copied().collect();
        if fill[t[0]][t[1]] && fill[t[1]][t[2]] && fill[t[2]][t[0]] {
            out.push([t[0], t[1], t[2]]);
        }
    }
    Ok((out, attempts))
}

pub fn triangle_sides(pool: &[GuidedSample], t: [usize; 3]) -> Result<[PathInGraph; 3]> {
    let side = |x: usize, y: usize| {
        joined_image(&pool[x].sequence, &pool[x].target, &pool[y].sequence, &pool[y].target)
    };
    Ok([side(t[0], t[1])?, side(t[1], t[2])?, side(t[2], t[0])?])
}

pub fn triangle_scan(pool: &[GuidedSample], triples: &[[usize; 3]], maxnorm: u64) -> Result<TriangleScan> {
    let sides: Vec<[PathInGraph; 3]> = triples.iter().map(|&t| triangle_sides(pool, t)).collect::<Result<_>>()?;
    let paths: Vec<&[MultiCurve]> = sides.iter().flat_map(|s| s.iter().map(|p| p.vertices.as_slice())).collect();
    let ball = linked_ball(&pool[0].target, maxnorm, &paths)?;
    let rows: Vec<TriangleRow> = sides
        .par_iter()
        .zip(triples)
        .enumerate()
        .map(|(k, (s, &t))| TriangleRow { sample: k, targets: t, delta: thin_triangle_delta(&s[0], &s[1], &s[2], &ball).ok() })
        .collect();
    Ok(TriangleScan {
        universe: ball.len(),
        delta_max: rows.iter().map(|r| r.delta).collect::<Option<Vec<_>>>().and_then(|v| v.into_iter().max()),
        rows,
        attempts: 0,
    })
}

pub fn criterion8(seed: u64) -> Result<Outcome> {
    let base = EmbeddedTrack::standard(surface(0, 5)?)?;
    let pool = guided_samples(&base, 60, seed)?;
    let (triples, _) = filling_triples(&pool, 50, seed)?;
    let scan = triangle_scan(&pool, &triples, 12)?;
    let deltas: Vec<u32> = scan.rows.iter().filter_map(|r| r.delta).collect();
    let mut hist = std::collections::BTreeMap::new();
    for d in &deltas {
        *hist.entry(*d).or_insert(0) += 1;
    }
    let passed = triples.len() == 50 && deltas.len() == 50;
    Ok(outcome(8, "thin triangles", passed, format!("{} triples, D3_emp distribution {hist:?}", triples.len())))
}

pub fn criterion9() -> Result<Outcome> {
    let b = delta_bound(1.0);
    let adjacency = tree(15, 2);
    let family = geodesic_family(&adjacency);
    let t = prop35_check(&CriterionInstance { adjacency, family, constant: 1.0 }, 0, 0);
    let g = prop35_check(&CriterionInstance { adjacency: grid(20, 20), family: l_path_family(20, 20), constant: 1.0 }, 20_000, 1);
    let grid_cond = g.violation.as_ref().map(|v| v.condition);
    let passed = b.kappa == 8.0 && b.delta == 73.0 && t.verified && grid_cond == Some(3);
    Ok(outcome(
        9,
        "hyperbolicity criterion machinery",
        passed,
        format!(
            "kappa1(1) = {}, delta(1) = {}; tree verified {}; grid violation of condition {:?} (measured {:?})",
            b.kappa,
            b.delta,
            t.verified,
            grid_cond,
            g.violation.map(|v| v.measured)
        ),
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatRow {
    pub surface: Surface,
    pub intersection: u64,
    pub a: String,
    pub b: String,
    pub angles: Vec<u32>,
    pub puncture_angles: Vec<u32>,
    pub failures: Vec<String>,
}

/// Builds complexes for random filling pairs and checks their census.
pub fn flat_survey(s: Surface, maxnorm: u64, samples: usize, probes: usize, seed: u64) -> Result<Vec<FlatRow>> {
    let cs = enumerate(s, maxnorm)?;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for a in 0..cs.len() {
        for b in a + 1..cs.len() {
            if fills(&cs[a], &cs[b])? {
                pairs.push((a, b));
            }
        }
    }
    if pairs.is_empty() {
        bail!("no filling pair up to norm {maxnorm}");
    }
    let mut r = rng(seed);
    let jobs: Vec<((usize, usize), Rational, Rational, Vec<usize>)> = (0..samples)
        .map(|_| {
            let p = pairs[r.gen_range(0..pairs.len())];
            let a = Rational::new(r.gen_range(1..=6), r.gen_range(1..=3));
            let b = Rational::new(r.gen_range(1..=6), r.gen_range(1..=3));
            let probe = (0..probes).map(|_| r.gen_range(0..cs.len())).collect();
            (p, a, b, probe)
        })
        .collect();
    jobs.par_iter()
        .map(|((x, y), a, b, probe)| -> Result<FlatRow> {
            let (alpha, beta) = (&cs[*x], &cs[*y]);
            let c: RectangleComplex = build(alpha, beta, *a, *b)?;
            let i = intersection(alpha, beta)?;
            let mut bad = Vec::new();
            if let Err(e) = c.check() {
                bad.push(e.to_string());
            }
            if c.rectangles.len() as u64 != i {
                bad.push(format!("{} rectangles, i = {i}", c.rectangles.len()));
            }
            if area(&c) != *a * *b * Rational::from(i as i128) {
                bad.push("area".into());
            }
            let closed_chi = 2 - 2 * s.genus as i64;
            if c.gauss_bonnet_sum() != 2 * closed_chi || c.euler_characteristic() != closed_chi {
                bad.push("Gauss-Bonnet".into());
            }
            for v in c.singularities.iter().filter(|v| !v.puncture && v.k < 2) {
                bad.push(format!("interior angle {}pi", v.k));
            }
            for &p in probe {
                let st = staircase(&c, &cs[p])?;
                if st.length > q_length_bound(&c, &cs[p])? {
                    bad.push("staircase above bound".into());
                }
            }
            Ok(FlatRow {
                surface: s,
                intersection: i,
                a: a.to_string(),
                b: b.to_string(),
                angles: flat_structure::cone_angles(&c),
                puncture_angles: c.singularities.iter().filter(|s| s.puncture).map(|s| s.k).collect(),
                failures: bad,
            })
        })
        .collect()
}

pub fn criterion10(seed: u64) -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut passed = true;
    for (g, m, norm) in [(0, 5, 16), (1, 2, 12)] {
        let rows = flat_survey(surface(g, m)?, norm, 50, 10, seed)?;
        let failures: usize = rows.iter().map(|r| r.failures.len()).sum();
        let all_pi = rows.iter().filter(|r| r.puncture_angles.iter().all(|&k| k == 1)).count();
        let bigons: usize = rows.iter().map(|r| r.puncture_angles.iter().filter(|&&k| k == 1).count()).sum();
        let punctures: usize = rows.iter().map(|r| r.puncture_angles.len()).sum();
        passed &= failures == 0;
        parts.push(format!(
            "S({g},{m}) 50 complexes, {failures} failures; {bigons}/{punctures} punctures in bigons (angle pi), \
             pairs with every puncture at pi {all_pi}/50"
        ));
    }
    Ok(outcome(10, "flat structures", passed, parts.join(", ")))
}

#[derive(Clone, Debug, Serialize)]
pub struct LSetSample {
    pub a: String,
    pub r: String,
    pub size: usize,
    pub symmetric: bool,
    pub diameter: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LSetScan {
    pub samples: Vec<LSetSample>,
    /// Largest `(diam - 1) / 2R` over a separately seeded calibration set.
    pub k_hat: f64,
    pub calibration_samples: usize,
    /// Every sample obeys `diam <= 2 k_hat R + 1`.
    pub validated: bool,
    pub profiles: Vec<Option<f64>>,
}

fn l_set_samples(cs: &[MultiCurve], pairs: &[(usize, usize)], ball: &Ball, samples: usize, seed: u64) -> Result<Vec<LSetSample>> {
    let mut r = rng(seed);
    let jobs: Vec<(usize, usize, Rational, Rational)> = (0..samples)
        .map(|_| {
            let (x, y) = pairs[r.gen_range(0..pairs.len())];
            (x, y, Rational::new(r.gen_range(1..=8), r.gen_range(1..=8)), Rational::from(r.gen_range(1..=8)))
        })
        .collect();
    jobs.par_iter()
        .map(|&(x, y, a, rr)| -> Result<LSetSample> {
            let (alpha, beta) = (&cs[x], &cs[y]);
            let ab = Rational::from(intersection(alpha, beta)? as i128);
            let set = l_set(alpha, beta, a, rr, ball)?;
            let swapped = l_set(beta, alpha, (a * ab).recip(), rr, ball)?;
            Ok(LSetSample {
                a: a.to_string(),
                r: rr.to_string(),
                size: set.len(),
                symmetric: set == swapped,
                diameter: diameter(&set, ball).ok(),
            })
        })
        .collect()
}

fn radius(row: &LSetSample) -> f64 {
    row.r.parse().unwrap_or(f64::NAN)
}

pub fn lset_scan(s: Surface, maxnorm: u64, samples: usize, calibration: usize, seed: u64) -> Result<LSetScan> {
    let cs = enumerate(s, maxnorm)?;
    let ball = linked_ball(&cs[0], maxnorm, &[&cs])?;
    let mut pairs = Vec::new();
    for a in 0..cs.len() {
        for b in a + 1..cs.len() {
            if fills(&cs[a], &cs[b])? {
                pairs.push((a, b));
            }
        }
    }
    if pairs.is_empty() {
        bail!("no filling pair up to norm {maxnorm}");
    }
    let calib = l_set_samples(&cs, &pairs, &ball, calibration, seed ^ 0x5eed)?;
    let k_hat = calib
        .iter()
        .filter_map(|row| row.diameter.map(|d| (d as f64 - 1.0).max(0.0) / (2.0 * radius(row))))
        .fold(0.0, f64::max);
    let rows = l_set_samples(&cs, &pairs, &ball, samples, seed)?;
    // an empty set has no diameter and nothing to bound
    let validated = rows
        .iter()
        .all(|row| row.diameter.map_or(row.size == 0, |d| d as f64 <= 2.0 * k_hat * radius(row) + 1.0 + 1e-9));
    Ok(LSetScan { samples: rows, k_hat, calibration_samples: calibration, validated, profiles: Vec::new() })
}

/// Levels of the profile of guided sequences against the standard pants
/// decomposition, for targets that meet it.
pub fn profiles(s: Surface, samples: usize, seed: u64) -> Result<Vec<Option<f64>>> {
    let pants = PantsDecomposition::standard(s)?;
    let base = adapted_track(&pants)?;
    let mut out = Vec::new();
    let mut k = 0u64;
    while out.len() < samples && k < 20 * samples as u64 {
        let g = guided_sample(&base, 5..=40, seed.wrapping_add(k))?;
        k += 1;
        if intersection(&g.target, &pants.curves)? == 0 {
            continue;
        }
        out.push(lemma32_profile(&g.sequence, &g.target, &pants).ok().map(|p| p.r));
    }
    Ok(out)
}

pub fn criterion11(seed: u64) -> Result<Outcome> {
    let s = surface(0, 5)?;
    let mut scan = lset_scan(s, 16, 50, 200, seed)?;
    scan.profiles = profiles(s, 50, seed)?;
    let symmetric = scan.samples.iter().filter(|x| x.symmetric).count();
    let finite = scan.profiles.iter().filter(|p| p.is_some_and(f64::is_finite)).count();
    let passed = symmetric == 50 && scan.validated && finite == 50 && scan.profiles.len() == 50;
    Ok(outcome(
        11,
        "L-set identities",
        passed,
        format!(
            "symmetry {symmetric}/50; k_hat = {:.4} from {} calibration samples (bound holds {}); profile finite {finite}/{}; max r* {:.4}",
            scan.k_hat,
            scan.calibration_samples,
            scan.validated,
            scan.profiles.len(),
            scan.profiles.iter().flatten().copied().fold(0.0, f64::max)
        ),
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct CenterRow {
    pub targets: [usize; 3],
    pub value: f64,
    pub center: MultiCurve,
    /// Distance from the center to each side of the triangle.
    pub side_distances: Vec<Option<u32>>,
}

/// Centers of pairwise filling triples of guided targets, with their
/// distance to the images of the three joining sequences.
pub fn center_scan(pool: &[GuidedSample], triples: &[[usize; 3]], maxnorm: u64) -> Result<Vec<CenterRow>> {
    let sides: Vec<[PathInGraph; 3]> = triples.iter().map(|&t| triangle_sides(pool, t)).collect::<Result<_>>()?;
    let paths: Vec<&[MultiCurve]> = sides.iter().flat_map(|s| s.iter().map(|p| p.vertices.as_slice())).collect();
    let ball = linked_ball(&pool[0].target, maxnorm, &paths)?;
    triples
        .iter()
        .zip(&sides)
        .map(|(&t, s)| -> Result<CenterRow> {
            let curves = t.map(|k| &pool[k].target);
            let pants = curves.map(|c| extend_to_pants(c, &ball));
            let [pa, pb, pc] = pants;
            let (pa, pb, pc) = (pa?, pb?, pc?);
            let center = triple_center(curves[0], curves[1], curves[2], [&pa, &pb, &pc], &ball)?;
            let side_distances = s
                .iter()
                .map(|p| {
                    let idx = p.indices(&ball).ok()?;
                    idx.iter().filter_map(|&v| ball.graph_distance(center.center, v)).min()
                })
                .collect();
            Ok(CenterRow { targets: t, value: center.value, center: ball.universe[center.center].clone(), side_distances })
        })
        .collect()
}

pub fn all_criteria(seed: u64) -> Vec<Outcome> {
    all_criteria_with(seed, &[], |_| ()).into_iter().map(|(o, _)| o).collect()
}

/// Runs the criteria in `only` (all when empty), with wall-clock seconds.
pub fn all_criteria_with(seed: u64, only: &[u32], mut starting: impl FnMut(u32)) -> Vec<(Outcome, f64)> {
    type Run = fn(u64) -> Result<Outcome>;
    let runs: [(u32, &'static str, Run); 11] = [
        (1, "complete-track census", |_| criterion1()),
        (2, "vertex cycles", criterion2),
        (3, "transport soundness", criterion3),
        (4, "guided realization", criterion4),
        (5, "intersection oracle", |_| criterion5()),
        (6, "distance bound", |_| criterion6()),
        (7, "quasi-geodesics", criterion7),
        (8, "thin triangles", criterion8),
        (9, "hyperbolicity criterion machinery", |_| criterion9()),
        (10, "flat structures", criterion10),
        (11, "L-set identities", criterion11),
    ];
    runs.iter()
        .filter(|(k, _, _)| only.is_empty() || only.contains(k))
        .map(|&(k, name, run)| {
            starting(k);
            let t = std::time::Instant::now();
            let o = run(seed).unwrap_or_else(|e| outcome(k, name, false, format!("error: {e}")));
            (o, t.elapsed().as_secs_f64())
        })
        .collect()
}
