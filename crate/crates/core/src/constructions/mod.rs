//! Almost semidirect products, relaxed factor systems with their crossed
//! products, and gluings of group-indexed semilattice data.

mod almost_action;
mod factor_system;
mod gluing;

pub use almost_action::{almost_action_from_f_inverse, f_product, AlmostAction};
pub use factor_system::{
    crossed_product, factor_system_from_almost_action, factor_system_from_extension,
    iso_f_product_crossed, CrossedProduct, FactorSystem,
};
pub use gluing::{clifford_reconstruction, gluing, gluing_map_from_clifford, CliffordGluing, GluingMap};

use crate::error::{Error, Result};
use crate::inverse::{InverseMonoid, SemilatticeMonoid};
use crate::monoid::FiniteMonoid;

/// An inverse monoid whose elements are pairs `(y, g)` of a semilattice
/// element and a group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairMonoid {
    pub monoid: InverseMonoid,
    /// `pairs[i] = (y, g)` for element `i`.
    pub pairs: Vec<(usize, usize)>,
}

impl PairMonoid {
    fn build<F>(pairs: Vec<(usize, usize)>, y: &SemilatticeMonoid, g: &FiniteMonoid, mul: F) -> Result<Self>
    where
        F: Fn((usize, usize), (usize, usize)) -> (usize, usize),
    {
        let ny = y.len();
        let mut index = vec![usize::MAX; ny * g.len()];
        for (i, &(yi, gi)) in pairs.iter().enumerate() {
            index[gi * ny + yi] = i;
        }
        let n = pairs.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in &pairs {
            for &b in &pairs {
                let (py, pg) = mul(a, b);
                let idx = index[pg * ny + py];
                if idx == usize::MAX {
                    return Err(Error::Shape(format!("pair product ({py},{pg}) leaves the carrier")));
                }
                table.push(idx);
            }
        }
        let id = index[g.identity() * ny + y.top()];
        if id == usize::MAX {
            return Err(Error::Shape("(1,1) is not in the carrier".into()));
        }
        let labels = pairs
            .iter()
            .map(|&(yi, gi)| format!("({},{})", y.label(yi), g.label(gi)))
            .collect();
        let base = FiniteMonoid::from_flat(n, table, id)?.with_labels(labels)?;
        Ok(PairMonoid { monoid: InverseMonoid::new(base)?, pairs })
    }

    pub fn index_of(&self, y: usize, g: usize) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (y, g))
    }
}
