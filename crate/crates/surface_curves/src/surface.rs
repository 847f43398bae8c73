use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A connected orientable surface of finite type: `genus` handles and
/// `punctures` removed points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Surface {
    #[serde(rename = "g")]
    pub genus: u32,
    #[serde(rename = "m")]
    pub punctures: u32,
}

impl Surface {
    pub fn new(genus: u32, punctures: u32) -> Result<Self> {
        let s = Surface { genus, punctures };
        if s.complexity() < 2 {
            return Err(Error::Exceptional { genus, punctures });
        }
        Ok(s)
    }

    /// Number of curves in a pants decomposition.
    pub fn complexity(&self) -> i64 {
        3 * self.genus as i64 - 3 + self.punctures as i64
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.punctures as i64
    }

    pub fn is_closed(&self) -> bool {
        self.punctures == 0
    }

    /// Edge count of the reference triangulation.
    pub fn edge_count(&self) -> usize {
        let (g, m) = (self.genus as usize, self.punctures as usize);
        if m == 0 {
            6 * g - 3
        } else {
            6 * g + 3 * m - 6
        }
    }

    pub fn triangle_count(&self) -> usize {
        let (g, m) = (self.genus as usize, self.punctures as usize);
        if m == 0 {
            4 * g - 2
        } else {
            4 * g + 2 * m - 4
        }
    }

    /// Dimension of measured laminations, `6g-6+2m`.
    pub fn lamination_dimension(&self) -> usize {
        (6 * self.genus as i64 - 6 + 2 * self.punctures as i64) as usize
    }
}

impl std::fmt::Display for Surface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "S({},{})", self.genus, self.punctures)
    }
}

pub fn make_surface(genus: u32, punctures: u32) -> Result<Surface> {
    Surface::new(genus, punctures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exceptional_surfaces_rejected() {
        assert!(matches!(make_surface(0, 4), Err(Error::Exceptional { .. })));
        assert!(matches!(make_surface(1, 1), Err(Error::Exceptional { .. })));
        assert!(make_surface(0, 3).is_err());
        assert!(make_surface(1, 0).is_err());
    }

    #[test]
    fn genus_two_closed() {
        let s = make_surface(2, 0).unwrap();
        assert_eq!(s.complexity(), 3);
        assert_eq!(s.euler_characteristic(), -2);
        assert_eq!((s.edge_count(), s.triangle_count()), (9, 6));
    }
}
