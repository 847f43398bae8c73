//! Finite pieces of the curve graph: a universe of curves with the
//! disjointness relation, and breadth-first distances inside it.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;
use surface_curves::{fills, intersection, reference_triangulation, surgery_path, MultiCurve, Surface};

use crate::error::{GraphError, Result};

/// Distance in the curve graph as far as a finite universe can tell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Distance {
    Exact(u32),
    /// Filling pair: at least 3, at most the universe path length.
    Between { lower: u32, upper: u32 },
    /// No path inside the universe.
    LowerBound(u32),
}

impl Distance {
    pub fn upper(self) -> Option<u32> {
        match self {
            Distance::Exact(d) | Distance::Between { upper: d, .. } => Some(d),
            Distance::LowerBound(_) => None,
        }
    }

    pub fn lower(self) -> u32 {
        match self {
            Distance::Exact(d) => d,
            Distance::Between { lower, .. } | Distance::LowerBound(lower) => lower,
        }
    }
}

pub const UNREACHED: u32 = u32::MAX;

pub struct Ball {
    pub surface: Surface,
    pub maxnorm: u64,
    pub universe: Vec<MultiCurve>,
    pub adjacency: Vec<Vec<usize>>,
    pub center: usize,
    pub radius: u32,
    /// Distance from the center for members within the radius.
    pub layers: Vec<Option<u32>>,
    index: HashMap<Vec<u64>, usize>,
    all_pairs: OnceLock<Vec<Vec<u32>>>,
}

fn check_curve(c: &MultiCurve) -> Result<()> {
    if c.is_simple_curve() {
        Ok(())
    } else {
        Err(GraphError::NotACurve)
    }
}

impl Ball {
    /// All curves up to `maxnorm`, with the center's BFS ball of `radius`.
    pub fn new(center: &MultiCurve, radius: u32, maxnorm: u64) -> Result<Self> {
        Self::with_extra(center, radius, maxnorm, &[])
    }

    /// Like [`Ball::new`], with `extra` curves added to the universe.
    pub fn with_extra(center: &MultiCurve, radius: u32, maxnorm: u64, extra: &[MultiCurve]) -> Result<Self> {
        let surface = center.surface;
        if surface.is_closed() {
            return Err(surface_curves::Error::ClosedSurface("ball").into());
        }
        check_curve(center)?;
        let mut universe = reference_triangulation(surface)?.enumerate_curves(maxnorm);
        let mut index: HashMap<Vec<u64>, usize> =
            universe.iter().enumerate().map(|(i, c)| (c.coords.clone(), i)).collect();
        for c in extra {
            if c.surface != surface {
                return Err(surface_curves::Error::MismatchedSurface.into());
            }
            check_curve(c)?;
            if !index.contains_key(&c.coords) {
                index.insert(c.coords.clone(), universe.len());
                universe.push(c.clone());
            }
        }
        let Some(&center) = index.get(&center.coords) else {
            return Err(GraphError::CenterNotInUniverse);
        };
        let n = universe.len();
        let rows: Vec<Result<Vec<usize>>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = Vec::new();
                for j in i + 1..n {
                    if intersection(&universe[i], &universe[j])? == 0 {
                        row.push(j);
                    }
                }
                Ok(row)
            })
            .collect();
        let mut adjacency = vec![Vec::new(); n];
        for (i, row) in rows.into_iter().enumerate() {
            for j in row? {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
        adjacency.iter_mut().for_each(|r| r.sort_unstable());
        let mut ball = Ball {
            surface,
            maxnorm,
            universe,
            adjacency,
            center,
            radius,
            layers: Vec::new(),
            index,
            all_pairs: OnceLock::new(),
        };
        ball.layers = ball.bfs(center).into_iter().map(|d| (d <= radius).then_some(d)).collect();
        Ok(ball)
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn index_of(&self, c: &MultiCurve) -> Option<usize> {
        self.index.get(&c.coords).copied()
    }

    pub fn require(&self, c: &MultiCurve) -> Result<usize> {
        self.index_of(c).ok_or(GraphError::NotInUniverse)
    }

    /// Universe members within the radius of the center.
    pub fn members(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.layers[i].is_some()).collect()
    }

    /// Members at exactly the radius, whose neighbourhoods are cut off.
    pub fn boundary(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.layers[i] == Some(self.radius)).collect()
    }

    /// BFS distances from `source` through the whole universe.
    pub fn bfs(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHED; self.len()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if dist[w] == UNREACHED {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    fn table(&self) -> &Vec<Vec<u32>> {
        self.all_pairs.get_or_init(|| (0..self.len()).into_par_iter().map(|i| self.bfs(i)).collect())
    }

    /// Path length inside the universe, if there is a path.
    pub fn graph_distance(&self, i: usize, j: usize) -> Option<u32> {
        let d = self.table()[i][j];
        (d != UNREACHED).then_some(d)
    }

    pub fn checked_distance(&self, i: usize, j: usize) -> Result<u32> {
        self.graph_distance(i, j).ok_or(GraphError::DistanceUnavailable(i, j))
    }

    /// Distance between two universe curves, exact where it can be
    /// certified: 1 for disjoint curves, 2 for intersecting curves that do
    /// not fill, and 3 for a filling pair joined by a universe path of
    /// length 3.
    pub fn distance(&self, a: &MultiCurve, b: &MultiCurve) -> Result<Distance> {
        let (i, j) = (self.require(a)?, self.require(b)?);
        if i == j {
            return Ok(Distance::Exact(0));
        }
        if intersection(a, b)? == 0 {
            return Ok(Distance::Exact(1));
        }
        if !fills(a, b)? {
            return Ok(Distance::Exact(2));
        }
        Ok(match self.graph_distance(i, j) {
            Some(3) => Distance::Exact(3),
            Some(d) => Distance::Between { lower: 3, upper: d },
            None => Distance::LowerBound(3),
        })
    }
}

/// Curves to add to a universe so that the given paths and the center lie
/// in one component: the path vertices, surgery paths between consecutive
/// vertices, and surgery paths from the center to the start of each path.
pub fn linking_curves(center: &MultiCurve, paths: &[&[MultiCurve]]) -> Result<Vec<MultiCurve>> {
    let mut out: Vec<MultiCurve> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut add = |cs: Vec<MultiCurve>, out: &mut Vec<MultiCurve>| {
        for c in cs {
            if seen.insert(c.coords.clone()) {
                out.push(c);
            }
        }
    };
    for path in paths {
        let Some(first) = path.first() else { continue };
        add(surgery_path(center, first)?, &mut out);
        add(path.to_vec(), &mut out);
        for w in path.windows(2) {
            add(surgery_path(&w[0], &w[1])?, &mut out);
        }
    }
    Ok(out)
}
