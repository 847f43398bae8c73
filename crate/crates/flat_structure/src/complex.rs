//! The square-tiled surface of a filling pair: one rectangle per crossing,
//! sides glued along the two curves, cone points at the complementary
//! regions.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use surface_curves::{intersection, realize, MultiCurve, Surface};

use crate::error::{FlatError, Result};
use crate::rat::{self, Rational};

/// A rectangle side, named by the curve crossing it and the direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    AlphaIn,
    AlphaOut,
    BetaIn,
    BetaOut,
}

impl Side {
    /// Sides crossed by the first curve are parallel to the second.
    pub fn crossed_by_alpha(self) -> bool {
        matches!(self, Side::AlphaIn | Side::AlphaOut)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rectangle {
    /// `(strand, position)` of the crossing along each curve.
    pub alpha: (usize, usize),
    pub beta: (usize, usize),
    pub alpha_exits_left: bool,
    /// Singularity index at the corner in each quadrant
    /// (`2 * alpha_left + beta_left`).
    pub corners: [usize; 4],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    pub from: (usize, Side),
    pub to: (usize, Side),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Singularity {
    /// Cone angle in multiples of pi.
    pub k: u32,
    pub puncture: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RectangleComplex {
    pub surface: Surface,
    pub alpha: MultiCurve,
    pub beta: MultiCurve,
    #[serde(with = "rat")]
    pub a: Rational,
    #[serde(with = "rat")]
    pub b: Rational,
    pub rectangles: Vec<Rectangle>,
    pub gluings: Vec<Gluing>,
    pub singularities: Vec<Singularity>,
}

fn unit_weights(c: &MultiCurve) -> Result<()> {
    if c.components.iter().all(|k| k.weight == 1) {
        Ok(())
    } else {
        Err(FlatError::Weighted)
    }
}

/// Builds the complex with rectangles of height `a` (sides crossed by
/// `alpha`) and width `b` (sides crossed by `beta`).
pub fn build(alpha: &MultiCurve, beta: &MultiCurve, a: Rational, b: Rational) -> Result<RectangleComplex> {
    if a <= Rational::zero() || b <= Rational::zero() {
        return Err(FlatError::NonPositiveWeight);
    }
    if alpha.surface != beta.surface {
        return Err(FlatError::MismatchedSurface);
    }
    unit_weights(alpha)?;
    unit_weights(beta)?;
    let surface = alpha.surface;
    let r = realize(alpha, beta)?;
    let expected = intersection(alpha, beta)?;
    if r.crossing_count() != expected {
        return Err(FlatError::NotMinimalPosition { realized: r.crossing_count(), expected });
    }
    let arr = r.arrangement()?;
    let filling = arr
        .regions
        .iter()
        .all(|reg| reg.euler == 1 && !reg.corners.is_empty() && (surface.is_closed() || reg.vertices.len() <= 1));
    if !filling {
        return Err(FlatError::NotFilling);
    }
    let singularities = arr
        .regions
        .iter()
        .map(|reg| Singularity {
            k: (reg.corners.len() / 2) as u32,
            puncture: !surface.is_closed() && !reg.vertices.is_empty(),
        })
        .collect();

    let n = arr.crossings.len();
    let mut alpha_at = vec![(0, 0); n];
    let mut beta_at = vec![(0, 0); n];
    for (s, seq) in arr.alpha_order.iter().enumerate() {
        for (p, &x) in seq.iter().enumerate() {
            alpha_at[x] = (s, p);
        }
    }
    for (s, seq) in arr.beta_order.iter().enumerate() {
        for (p, &x) in seq.iter().enumerate() {
            beta_at[x] = (s, p);
        }
    }
    let rectangles = (0..n)
        .map(|x| Rectangle {
            alpha: alpha_at[x],
            beta: beta_at[x],
            alpha_exits_left: arr.crossings[x].alpha_exits_left,
            corners: arr.quadrant_region[x],
        })
        .collect();
    let mut gluings = Vec::with_capacity(2 * n);
    for (orders, (out, inn)) in [(&arr.alpha_order, (Side::AlphaOut, Side::AlphaIn)), (&arr.beta_order, (Side::BetaOut, Side::BetaIn))] {
        for seq in orders {
            for (p, &x) in seq.iter().enumerate() {
                gluings.push(Gluing { from: (x, out), to: (seq[(p + 1) % seq.len()], inn) });
            }
        }
    }
    Ok(RectangleComplex { surface, alpha: alpha.clone(), beta: beta.clone(), a, b, rectangles, gluings, singularities })
}

impl RectangleComplex {
    pub fn side_length(&self, side: Side) -> Rational {
        if side.crossed_by_alpha() {
            self.a
        } else {
            self.b
        }
    }

    /// Corners of a rectangle lying on one side, as quadrant indices.
    fn corners_on(&self, rect: usize, side: Side) -> [usize; 2] {
        let s = self.rectangles[rect].alpha_exits_left as usize;
        let q = |al: usize, bl: usize| 2 * al + bl;
        match side {
            Side::AlphaOut => [q(0, s), q(1, s)],
            Side::AlphaIn => [q(0, 1 - s), q(1, 1 - s)],
            Side::BetaOut => [q(1 - s, 0), q(1 - s, 1)],
            Side::BetaIn => [q(s, 0), q(s, 1)],
        }
    }

    /// Vertices of the complex: rectangle corners identified through the
    /// gluings, found without the region census.
    pub fn vertex_classes(&self) -> Vec<usize> {
        let n = self.rectangles.len();
        let mut parent: Vec<usize> = (0..4 * n).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for g in &self.gluings {
            let (x, y) = (self.corners_on(g.from.0, g.from.1), self.corners_on(g.to.0, g.to.1));
            // the side's two corners are matched by the curve-side they lie on
            for k in 0..2 {
                let (u, v) = (root(&mut parent, 4 * g.from.0 + x[k]), root(&mut parent, 4 * g.to.0 + y[k]));
                parent[u] = v;
            }
        }
        let mut label = HashMap::new();
        (0..4 * n)
            .map(|c| {
                let r = root(&mut parent, c);
                let k = label.len();
                *label.entry(r).or_insert(k)
            })
            .collect()
    }

    /// `V - E + F` of the cubical complex, with the punctures filled in.
    pub fn euler_characteristic(&self) -> i64 {
        let classes = self.vertex_classes();
        let v = classes.iter().max().map_or(0, |m| m + 1) as i64;
        let f = self.rectangles.len() as i64;
        v - self.gluings.len() as i64 + f
    }

    /// Checks the invariants of a built or loaded complex.
    pub fn check(&self) -> Result<()> {
        let n = self.rectangles.len();
        let bad = |m: String| Err(FlatError::Inconsistent(m));
        if self.gluings.len() != 2 * n {
            return bad(format!("{} gluings for {n} rectangles", self.gluings.len()));
        }
        let mut used = HashMap::new();
        for g in &self.gluings {
            for end in [g.from, g.to] {
                if end.0 >= n {
                    return bad(format!("gluing refers to rectangle {}", end.0));
                }
                *used.entry(end).or_insert(0) += 1;
            }
            if g.from.1.crossed_by_alpha() != g.to.1.crossed_by_alpha() {
                return bad("gluing mixes side classes".into());
            }
        }
        if used.len() != 4 * n || used.values().any(|&c| c != 1) {
            return bad("every side must be glued exactly once".into());
        }
        let classes = self.vertex_classes();
        let mut region_of = HashMap::new();
        for (c, &v) in classes.iter().enumerate() {
            let region = self.rectangles[c / 4].corners[c % 4];
            if *region_of.entry(v).or_insert(region) != region {
                return bad(format!("vertex {v} meets two regions"));
            }
        }
        if region_of.len() != self.singularities.len() {
            return bad(format!("{} vertices for {} singularities", region_of.len(), self.singularities.len()));
        }
        let mut corners = vec![0u32; self.singularities.len()];
        for r in &self.rectangles {
            for &s in &r.corners {
                corners[s] += 1;
            }
        }
        for (s, (sing, &c)) in self.singularities.iter().zip(&corners).enumerate() {
            if 2 * sing.k != c {
                return bad(format!("singularity {s}: {c} corners for angle {}pi", sing.k));
            }
            // interior points with k = 2 are regular
            if sing.k == 0 || (!sing.puncture && sing.k < 2) {
                return bad(format!("singularity {s} has angle {}pi", sing.k));
            }
        }
        let chi = 2 - 2 * self.surface.genus as i64;
        if self.euler_characteristic() != chi {
            return bad(format!("V - E + F = {}, expected {chi}", self.euler_characteristic()));
        }
        if self.gauss_bonnet_sum() != 2 * chi {
            return bad(format!("sum of 2 - k is {}, expected {}", self.gauss_bonnet_sum(), 2 * chi));
        }
        Ok(())
    }

    /// `sum (2 - k)` over all cone points, punctures included.
    pub fn gauss_bonnet_sum(&self) -> i64 {
        self.singularities.iter().map(|s| 2 - s.k as i64).sum()
    }

    /// Hash invariant under relabelling rectangles and exchanging the two
    /// side classes together with their lengths.
    pub fn canonical_hash(&self) -> u64 {
        let n = self.rectangles.len();
        let mut nbrs: Vec<Vec<(Rational, usize)>> = vec![Vec::new(); n];
        for g in &self.gluings {
            let len = self.side_length(g.from.1);
            nbrs[g.from.0].push((len, g.to.0));
            nbrs[g.to.0].push((len, g.from.0));
        }
        let digest = |v: &dyn Fn(&mut DefaultHasher)| {
            let mut h = DefaultHasher::new();
            v(&mut h);
            h.finish()
        };
        let mut color: Vec<u64> = self
            .rectangles
            .iter()
            .map(|r| {
                let mut ks: Vec<u32> = r.corners.iter().map(|&s| self.singularities[s].k).collect();
                ks.sort_unstable();
                digest(&|h| ks.hash(h))
            })
            .collect();
        for _ in 0..n.max(1) {
            let next: Vec<u64> = (0..n)
                .map(|i| {
                    let mut seen: Vec<(Rational, u64)> = nbrs[i].iter().map(|&(l, j)| (l, color[j])).collect();
                    seen.sort_unstable();
                    digest(&|h| (color[i], &seen).hash(h))
                })
                .collect();
            if distinct(&next) == distinct(&color) {
                color = next;
                break;
            }
            color = next;
        }
        color.sort_unstable();
        let mut ks: Vec<(u32, bool)> = self.singularities.iter().map(|s| (s.k, s.puncture)).collect();
        ks.sort_unstable();
        let mut ab = [self.a, self.b];
        ab.sort();
        digest(&|h| (&color, &ks, ab).hash(h))
    }
}

fn distinct(v: &[u64]) -> usize {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

/// `a b i(alpha, beta)`.
pub fn area(r: &RectangleComplex) -> Rational {
    r.a * r.b * Rational::from(r.rectangles.len() as i128)
}

/// Cone angles in multiples of pi at every vertex of the complex, sorted;
/// interior vertices with `k = 2` are regular points.
pub fn cone_angles(r: &RectangleComplex) -> Vec<u32> {
    let mut ks: Vec<u32> = r.singularities.iter().map(|s| s.k).collect();
    ks.sort_unstable();
    ks
}

fn same_surface(r: &RectangleComplex, c: &MultiCurve) -> Result<()> {
    if c.surface == r.surface {
        Ok(())
    } else {
        Err(FlatError::MismatchedSurface)
    }
}

/// `2 a i(alpha, c) + 2 b i(beta, c)`.
pub fn q_length_bound(r: &RectangleComplex, c: &MultiCurve) -> Result<Rational> {
    same_surface(r, c)?;
    let (x, y) = (intersection(&r.alpha, c)? as i128, intersection(&r.beta, c)? as i128);
    Ok(Rational::from(2) * (r.a * Rational::from(x) + r.b * Rational::from(y)))
}

/// A staircase representative of a curve: one vertical run of height `a`
/// across the band of rectangles around the first curve for each crossing
/// with it, one horizontal run of width `b` for each crossing with the
/// second.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Staircase {
    pub vertical_runs: u64,
    pub horizontal_runs: u64,
    #[serde(with = "rat")]
    pub length: Rational,
}

pub fn staircase(r: &RectangleComplex, c: &MultiCurve) -> Result<Staircase> {
    same_surface(r, c)?;
    let (v, h) = (intersection(&r.alpha, c)?, intersection(&r.beta, c)?);
    let length = r.a * Rational::from(v as i128) + r.b * Rational::from(h as i128);
    Ok(Staircase { vertical_runs: v, horizontal_runs: h, length })
}

pub fn staircase_length(r: &RectangleComplex, c: &MultiCurve) -> Result<Rational> {
    Ok(staircase(r, c)?.length)
}

/// Weights `(e^t a, e^-t b)`, with `e^t` replaced by a nearby rational.
pub fn stretch(a: Rational, b: Rational, t: f64) -> Result<(Rational, Rational)> {
    let e = Rational::approximate_float(t.exp()).filter(|e| *e > Rational::zero()).ok_or(FlatError::NonPositiveWeight)?;
    Ok((a * e, b / e))
}

/// Floating value of a rational, for reports.
pub fn approx(r: Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
