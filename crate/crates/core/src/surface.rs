use serde::Serialize;

use crate::{Error, Result};

/// Topological type of a compact orientable surface: genus and number of
/// boundary components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceType {
    genus: u32,
    boundary_count: u32,
}

impl SurfaceType {
    pub const ONCE_HOLED_TORUS: SurfaceType = SurfaceType { genus: 1, boundary_count: 1 };

    pub fn new(genus: u32, boundary_count: u32) -> Result<Self> {
        if 2 * genus + boundary_count < 3 {
            return Err(Error::InvalidSurface { genus, boundary: boundary_count });
        }
        Ok(SurfaceType { genus, boundary_count })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn boundary_count(&self) -> u32 {
        self.boundary_count
    }

    /// Dimension 6g - 6 + 2r of the space of measured laminations.
    pub fn complexity(&self) -> u32 {
        6 * self.genus + 2 * self.boundary_count - 6
    }

    /// Number 3g - 3 + r of curves in a pants decomposition.
    pub fn pants_count(&self) -> u32 {
        3 * self.genus + self.boundary_count - 3
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_counts() {
        assert_eq!(SurfaceType::new(1, 1).unwrap().complexity(), 2);
        assert_eq!(SurfaceType::new(2, 0).unwrap().complexity(), 6);
        assert_eq!(SurfaceType::new(1, 2).unwrap().pants_count(), 2);
        assert_eq!(SurfaceType::new(0, 3).unwrap().pants_count(), 0);
        for g in 0..5 {
            for r in 0..6 {
                if let Ok(s) = SurfaceType::new(g, r) {
                    assert_eq!(s.complexity(), 2 * s.pants_count());
                }
            }
        }
    }

    #[test]
    fn rejects_small_surfaces() {
        assert!(SurfaceType::new(0, 2).is_err());
        assert!(SurfaceType::new(1, 0).is_err());
        assert!(SurfaceType::new(0, 0).is_err());
    }
}
