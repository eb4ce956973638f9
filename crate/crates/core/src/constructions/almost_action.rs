use crate::error::{Error, Result};
use crate::inverse::{idempotent_semilattice, is_f_inverse, InverseMonoid, SemilatticeMonoid};
use crate::iso::{brute_force_iso, witness_from_bijection, IsoWitness};
use crate::monoid::{quotient, FiniteMonoid};

use super::PairMonoid;

/// An almost action of a group on a semilattice:
///
/// * A1: `1·y = y`
/// * A2: `g·(y ∧ z) = g·y ∧ g·z`
/// * A3: `g·(h·y) = (gh)·y ∧ g·1`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostAction {
    group: FiniteMonoid,
    semilattice: SemilatticeMonoid,
    dot: Vec<usize>,
}

impl AlmostAction {
    /// `dot[g][y]` is `g·y`.
    pub fn new(group: FiniteMonoid, semilattice: SemilatticeMonoid, dot: Vec<Vec<usize>>) -> Result<Self> {
        group.require_group()?;
        let (ng, ny) = (group.len(), semilattice.len());
        if dot.len() != ng || dot.iter().any(|r| r.len() != ny) {
            return Err(Error::Shape(format!("action table must be {ng}x{ny}")));
        }
        let flat: Vec<usize> = dot.into_iter().flatten().collect();
        if let Some(p) = flat.iter().position(|&v| v >= ny) {
            return Err(Error::IndexOutOfRange { row: p / ny, col: p % ny, value: flat[p], n: ny });
        }
        let aa = AlmostAction { group, semilattice, dot: flat };
        aa.check_axioms()?;
        Ok(aa)
    }

    pub(crate) fn new_unchecked(group: FiniteMonoid, semilattice: SemilatticeMonoid, dot: Vec<usize>) -> Self {
        AlmostAction { group, semilattice, dot }
    }

    pub fn check_axioms(&self) -> Result<()> {
        let g1 = self.group.identity();
        let top = self.semilattice.top();
        for y in self.semilattice.elements() {
            if self.act(g1, y) != y {
                return Err(Error::AxiomViolation { axiom: 1, witness: vec![y] });
            }
        }
        for g in self.group.elements() {
            for y in self.semilattice.elements() {
                for z in self.semilattice.elements() {
                    let lhs = self.act(g, self.semilattice.meet(y, z));
                    let rhs = self.semilattice.meet(self.act(g, y), self.act(g, z));
                    if lhs != rhs {
                        return Err(Error::AxiomViolation { axiom: 2, witness: vec![g, y, z] });
                    }
                }
            }
        }
        for g in self.group.elements() {
            for h in self.group.elements() {
                let gh = self.group.mul(g, h);
                for y in self.semilattice.elements() {
                    let lhs = self.act(g, self.act(h, y));
                    let rhs = self.semilattice.meet(self.act(gh, y), self.act(g, top));
                    if lhs != rhs {
                        return Err(Error::AxiomViolation { axiom: 3, witness: vec![g, h, y] });
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn act(&self, g: usize, y: usize) -> usize {
        self.dot[g * self.semilattice.len() + y]
    }

    pub fn group(&self) -> &FiniteMonoid {
        &self.group
    }

    pub fn semilattice(&self) -> &SemilatticeMonoid {
        &self.semilattice
    }

    pub fn dot_rows(&self) -> Vec<Vec<usize>> {
        self.dot.chunks(self.semilattice.len()).map(<[usize]>::to_vec).collect()
    }

    /// `g·1`
    pub fn domain_bound(&self, g: usize) -> usize {
        self.act(g, self.semilattice.top())
    }
}

/// `F(Y,G) = {(y,g) : y ≤ g·1}` with `(y,g)(z,h) = (y ∧ g·z, gh)`.
///
/// Pairs are listed with `g` outer and `y` inner, both ascending.
pub fn f_product(aa: &AlmostAction) -> Result<PairMonoid> {
    let y = aa.semilattice();
    let g = aa.group();
    let mut pairs = Vec::new();
    for gi in g.elements() {
        for yi in y.elements() {
            if y.leq(yi, aa.domain_bound(gi)) {
                pairs.push((yi, gi));
            }
        }
    }
    PairMonoid::build(pairs, y, g, |(y1, g1), (y2, g2)| {
        (y.meet(y1, aa.act(g1, y2)), g.mul(g1, g2))
    })
}

/// Rebuilds an almost action from an F-inverse monoid: `G = M/σ`,
/// `Y = E(M)` and `g·y = s(g) y s(g)⁻¹` for the greatest element `s(g)` of
/// each σ-class.
///
/// The returned witness is `F(Y,G) → M`, found by brute-force search and
/// agreeing with the explicit map `(y,g) ↦ y s(g)`.
pub fn almost_action_from_f_inverse(m: &InverseMonoid, max_iso_n: usize) -> Result<(AlmostAction, IsoWitness)> {
    let selector = is_f_inverse(m).map_err(|w| Error::PreconditionFailed(format!("not F-inverse: {w}")))?;
    let (g, _) = quotient(m.monoid(), &selector.sigma)?;
    let (y, k) = idempotent_semilattice(m);
    let mut to_y = vec![usize::MAX; m.len()];
    for (i, &e) in k.values().iter().enumerate() {
        to_y[e] = i;
    }
    let mut dot = Vec::with_capacity(g.len() * y.len());
    for c in g.elements() {
        let s = selector.select(c);
        for yi in y.elements() {
            let conj = m.mul(m.mul(s, k.apply(yi)), m.inv(s));
            dot.push(to_y[conj]);
        }
    }
    let aa = AlmostAction::new_unchecked(g, y, dot);
    aa.check_axioms()?;
    let fy = f_product(&aa)?;

    let explicit: Vec<usize> = fy
        .pairs
        .iter()
        .map(|&(yi, c)| m.mul(k.apply(yi), selector.select(c)))
        .collect();
    witness_from_bijection(fy.monoid.monoid(), m.monoid(), explicit)
        .map_err(|e| Error::IsoCheckFailed(format!("(y,g) ↦ y s(g): {e}")))?;
    let witness = brute_force_iso(fy.monoid.monoid(), m.monoid(), max_iso_n)?
        .ok_or_else(|| Error::IsoNotFound("F(E(M), M/σ) vs M".into()))?;
    Ok((aa, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::tests::{ch2, m3, trivial, z2};

    #[test]
    fn trivial_action_is_valid() {
        let aa = AlmostAction::new(z2(), ch2(), vec![vec![0, 1], vec![0, 1]]).unwrap();
        let f = f_product(&aa).unwrap();
        assert_eq!(f.monoid.len(), 4);
        assert!(f.monoid.monoid().is_commutative());
    }

    #[test]
    fn collapsing_action_gives_m3() {
        let aa = AlmostAction::new(z2(), ch2(), vec![vec![0, 1], vec![1, 1]]).unwrap();
        let f = f_product(&aa).unwrap();
        assert_eq!(f.pairs, vec![(0, 0), (1, 0), (1, 1)]);
        assert_eq!(f.monoid.monoid().rows(), m3().monoid().rows());
        assert_eq!(f.monoid.monoid().label(2), "(e,g)");
    }

    #[test]
    fn a3_failure() {
        let err = AlmostAction::new(z2(), ch2(), vec![vec![0, 1], vec![0, 0]]).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { axiom: 3, .. }));
    }

    #[test]
    fn a1_failure() {
        let err = AlmostAction::new(z2(), ch2(), vec![vec![1, 1], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { axiom: 1, .. }));
    }

    #[test]
    fn trivial_group_gives_semilattice() {
        let aa = AlmostAction::new(trivial(), ch2(), vec![vec![0, 1]]).unwrap();
        assert_eq!(f_product(&aa).unwrap().monoid.monoid().rows(), ch2().monoid().rows());
    }

    #[test]
    fn extraction_from_m3() {
        let (aa, w) = almost_action_from_f_inverse(&m3(), 12).unwrap();
        assert_eq!(aa.dot_rows(), vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(w.a.len(), 3);
    }

    #[test]
    fn extraction_from_group() {
        let g = InverseMonoid::new(z2()).unwrap();
        let (aa, _) = almost_action_from_f_inverse(&g, 12).unwrap();
        assert_eq!(aa.semilattice().len(), 1);
        assert_eq!(aa.group().len(), 2);
    }
}
