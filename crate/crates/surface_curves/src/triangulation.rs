use crate::surface::Surface;

/// An ideal triangulation (or a one-vertex triangulation of a closed
/// surface). Edge `e` has two sides `2e` and `2e+1`, glued to each other;
/// each triangle lists its three sides counter-clockwise.
///
/// Equivalently this is a trivalent ribbon graph: triangles are vertices,
/// sides are outgoing darts and `next` is the counter-clockwise rotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    surface: Surface,
    triangles: Vec<[usize; 3]>,
    triangle_of: Vec<usize>,
    slot_of: Vec<usize>,
    corner_vertex: Vec<usize>,
    vertex_count: usize,
}

impl Triangulation {
    /// Builds from triangles given as counter-clockwise side triples, and a
    /// labelling of corners by ideal vertex: `corner_vertex[s]` is the
    /// vertex at the corner between side `s` and `next(s)`.
    pub(crate) fn from_parts(
        surface: Surface,
        triangles: Vec<[usize; 3]>,
        corner_vertex: Vec<usize>,
    ) -> Self {
        let sides = triangles.len() * 3;
        let mut triangle_of = vec![usize::MAX; sides];
        let mut slot_of = vec![usize::MAX; sides];
        for (t, tri) in triangles.iter().enumerate() {
            for (k, &s) in tri.iter().enumerate() {
                triangle_of[s] = t;
                slot_of[s] = k;
            }
        }
        let vertex_count = corner_vertex.iter().copied().max().map_or(0, |v| v + 1);
        Triangulation { surface, triangles, triangle_of, slot_of, corner_vertex, vertex_count }
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn edge_count(&self) -> usize {
        self.triangles.len() * 3 / 2
    }

    pub fn side_count(&self) -> usize {
        self.triangles.len() * 3
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn triangle_of(&self, side: usize) -> usize {
        self.triangle_of[side]
    }

    /// Position (0, 1, 2) of a side inside its triangle.
    pub fn slot_of(&self, side: usize) -> usize {
        self.slot_of[side]
    }

    /// The glued partner side.
    pub fn mate(side: usize) -> usize {
        side ^ 1
    }

    pub fn edge_of(side: usize) -> usize {
        side / 2
    }

    /// Next side counter-clockwise in the same triangle.
    pub fn next(&self, side: usize) -> usize {
        let t = self.triangle_of[side];
        self.triangles[t][(self.slot_of[side] + 1) % 3]
    }

    pub fn prev(&self, side: usize) -> usize {
        let t = self.triangle_of[side];
        self.triangles[t][(self.slot_of[side] + 2) % 3]
    }

    /// Ideal vertex (puncture index, or 0 for the material vertex of a
    /// closed surface) at the corner between `side` and `next(side)`.
    pub fn corner_vertex(&self, side: usize) -> usize {
        self.corner_vertex[side]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Euler-count check: edge and triangle counts match the surface.
    pub fn check_counts(&self) -> bool {
        self.edge_count() == self.surface.edge_count()
            && self.triangles.len() == self.surface.triangle_count()
            && self.vertex_count == (self.surface.punctures as usize).max(1)
    }

    /// Is `coords` a valid normal-coordinate vector (parity and triangle
    /// inequalities in every triangle)? Returns the first offending triangle.
    pub fn check_coordinates(&self, coords: &[u64]) -> Result<(), String> {
        if coords.len() != self.edge_count() {
            return Err(format!("expected {} coordinates, got {}", self.edge_count(), coords.len()));
        }
        for (t, tri) in self.triangles.iter().enumerate() {
            let [x, y, z] = tri.map(|s| coords[s / 2]);
            if (x + y + z) % 2 == 1 {
                return Err(format!("odd coordinate sum in triangle {t}"));
            }
            if x > y + z || y > x + z || z > x + y {
                return Err(format!("triangle inequality fails in triangle {t}"));
            }
        }
        Ok(())
    }

    /// Number of normal arcs cutting off the corner between `side` and
    /// `next(side)`.
    pub fn corner_count(&self, coords: &[u64], side: usize) -> u64 {
        let a = coords[side / 2];
        let b = coords[self.next(side) / 2];
        let c = coords[self.prev(side) / 2];
        (a + b - c) / 2
    }

    /// Follows a normal arc that enters the triangle of `side` through that
    /// side at `pos` (positions counted from the corner with `next(side)`).
    /// Returns the exit side and the position on it.
    pub fn arc_exit(&self, coords: &[u64], side: usize, pos: u64) -> (usize, u64) {
        let c = self.corner_count(coords, side);
        if pos < c {
            let n = self.next(side);
            (n, coords[n / 2] - 1 - pos)
        } else {
            (self.prev(side), coords[side / 2] - 1 - pos)
        }
    }
}
