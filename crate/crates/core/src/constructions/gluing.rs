use crate::error::{Error, Result};
use crate::inverse::{
    idempotent_semilattice, is_clifford, is_f_inverse, InverseMonoid, MaxSelector, SemilatticeMonoid,
};
use crate::iso::{brute_force_iso, verify_iso, IsoWitness};
use crate::monoid::{quotient, FiniteMonoid, MonoidMap};

use super::PairMonoid;

/// `f: G → Y` with `f(1) = ⊤` and `f(gh) ∧ f(g) = f(g) ∧ f(h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingMap {
    group: FiniteMonoid,
    semilattice: SemilatticeMonoid,
    f: Vec<usize>,
}

impl GluingMap {
    pub fn new(group: FiniteMonoid, semilattice: SemilatticeMonoid, f: Vec<usize>) -> Result<Self> {
        group.require_group()?;
        if f.len() != group.len() {
            return Err(Error::Shape(format!("gluing map needs {} values", group.len())));
        }
        if let Some(p) = f.iter().position(|&v| v >= semilattice.len()) {
            return Err(Error::IndexOutOfRange { row: p, col: 0, value: f[p], n: semilattice.len() });
        }
        if f[group.identity()] != semilattice.top() {
            return Err(Error::IdentityNotTop);
        }
        let gm = GluingMap { group, semilattice, f };
        if let Some((g, h)) = gm.condition_failure() {
            return Err(Error::GluingConditionViolation(g, h));
        }
        Ok(gm)
    }

    fn condition_failure(&self) -> Option<(usize, usize)> {
        let y = &self.semilattice;
        for g in self.group.elements() {
            for h in self.group.elements() {
                let gh = self.group.mul(g, h);
                if y.meet(self.f[gh], self.f[g]) != y.meet(self.f[g], self.f[h]) {
                    return Some((g, h));
                }
            }
        }
        None
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.f[g]
    }

    pub fn values(&self) -> &[usize] {
        &self.f
    }

    pub fn group(&self) -> &FiniteMonoid {
        &self.group
    }

    pub fn semilattice(&self) -> &SemilatticeMonoid {
        &self.semilattice
    }
}

/// `Gl(f) = {(y,g) : y ≤ f(g)}` with `(y,g)(z,h) = (y ∧ z, gh)`.
///
/// The result is checked to be Clifford and F-inverse, and the section
/// `s(g) = (f(g), g)` is checked to satisfy `(y,g) = (y,1)(f(g),g)`.
pub fn gluing(gm: &GluingMap) -> Result<PairMonoid> {
    let (y, g) = (&gm.semilattice, &gm.group);
    let mut pairs = Vec::new();
    for gi in g.elements() {
        for yi in y.elements() {
            if y.leq(yi, gm.apply(gi)) {
                pairs.push((yi, gi));
            }
        }
    }
    let gl = PairMonoid::build(pairs, y, g, |(y1, g1), (y2, g2)| (y.meet(y1, y2), g.mul(g1, g2)))?;
    if let Err(w) = is_clifford(&gl.monoid) {
        return Err(Error::TheoremViolation(format!("Gl(f) is not Clifford: {w}")));
    }
    if let Err(w) = is_f_inverse(&gl.monoid) {
        return Err(Error::TheoremViolation(format!("Gl(f) is not F-inverse: {w}")));
    }
    let one = g.identity();
    for (i, &(yi, gi)) in gl.pairs.iter().enumerate() {
        let ky = gl.index_of(yi, one).expect("(y,1) lies in Gl(f)");
        let s = gl.index_of(gm.apply(gi), gi).expect("(f(g),g) lies in Gl(f)");
        if gl.monoid.mul(ky, s) != i {
            return Err(Error::TheoremViolation(format!("(y,g) ≠ (y,1)(f(g),g) at element {i}")));
        }
    }
    Ok(gl)
}

/// The gluing data of an F-inverse Clifford monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordGluing {
    /// `f(g) = s(g) s(g)⁻¹` on `G = M/σ`, `Y = E(M)`.
    pub map: GluingMap,
    pub selector: MaxSelector,
    /// Inclusion `E(M) → M`.
    pub k: MonoidMap,
}

/// `f(g) = s(g) s(g)⁻¹` for the greatest element `s(g)` of each σ-class.
///
/// Also checks `s(g)⁻¹ = s(g⁻¹)` and `s(g) s(h) ≤ s(gh)`.
pub fn gluing_map_from_clifford(m: &InverseMonoid) -> Result<CliffordGluing> {
    let selector = is_f_inverse(m).map_err(|w| Error::PreconditionFailed(format!("not F-inverse: {w}")))?;
    is_clifford(m).map_err(|w| Error::PreconditionFailed(format!("not Clifford: {w}")))?;
    let (g, _) = quotient(m.monoid(), &selector.sigma)?;
    let (y, k) = idempotent_semilattice(m);
    let mut to_y = vec![usize::MAX; m.len()];
    for (i, &e) in k.values().iter().enumerate() {
        to_y[e] = i;
    }
    for c in g.elements() {
        let s = selector.select(c);
        let c_inv = g.unit_inverse(c).expect("M/σ is a group");
        if m.inv(s) != selector.select(c_inv) {
            return Err(Error::TheoremViolation(format!("s(g)⁻¹ ≠ s(g⁻¹) for class {c}")));
        }
        for d in g.elements() {
            let prod = m.mul(s, selector.select(d));
            if !m.leq(prod, selector.select(g.mul(c, d))) {
                return Err(Error::TheoremViolation(format!("s(g)s(h) ≰ s(gh) for classes {c}, {d}")));
            }
        }
    }
    let f = g.elements().map(|c| to_y[m.range_idempotent(selector.select(c))]).collect();
    let map = GluingMap::new(g, y, f)?;
    Ok(CliffordGluing { map, selector, k })
}

/// `φ(x) = (x x⁻¹, [x])` from `M` to `Gl(f)`, with inverse
/// `ψ(y,g) = k(y) s(g)`; confirmed by brute-force search.
pub fn clifford_reconstruction(m: &InverseMonoid, max_iso_n: usize) -> Result<IsoWitness> {
    let cg = gluing_map_from_clifford(m)?;
    let gl = gluing(&cg.map)?;
    let mut to_y = vec![usize::MAX; m.len()];
    for (i, &e) in cg.k.values().iter().enumerate() {
        to_y[e] = i;
    }
    let phi = m
        .elements()
        .map(|x| {
            gl.index_of(to_y[m.range_idempotent(x)], cg.selector.sigma.class_of(x))
                .ok_or_else(|| Error::IsoCheckFailed(format!("φ({x}) is not in Gl(f)")))
        })
        .collect::<Result<Vec<_>>>()?;
    let psi = gl
        .pairs
        .iter()
        .map(|&(yi, c)| m.mul(cg.k.apply(yi), cg.selector.select(c)))
        .collect();
    let witness = verify_iso(m.monoid(), gl.monoid.monoid(), phi, psi)
        .map_err(|e| Error::IsoCheckFailed(format!("φ/ψ: {e}")))?;
    brute_force_iso(m.monoid(), gl.monoid.monoid(), max_iso_n)?
        .ok_or_else(|| Error::IsoCheckFailed("brute-force search disagrees with φ/ψ".into()))?;
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::tests::{ch2, m3, trivial, z2};
    use crate::monoid::direct_product;

    #[test]
    fn top_map_gives_product() {
        let gm = GluingMap::new(z2(), ch2(), vec![0, 0]).unwrap();
        let gl = gluing(&gm).unwrap();
        let prod = direct_product(ch2().monoid(), &z2());
        assert!(brute_force_iso(gl.monoid.monoid(), &prod, 12).unwrap().is_some());
    }

    #[test]
    fn bottom_at_g_gives_m3() {
        let gm = GluingMap::new(z2(), ch2(), vec![0, 1]).unwrap();
        let gl = gluing(&gm).unwrap();
        assert_eq!(gl.monoid.monoid().rows(), m3().monoid().rows());
    }

    #[test]
    fn identity_must_be_top() {
        assert!(matches!(GluingMap::new(z2(), ch2(), vec![1, 0]), Err(Error::IdentityNotTop)));
    }

    #[test]
    fn trivial_group_gives_semilattice() {
        let gm = GluingMap::new(trivial(), ch2(), vec![0]).unwrap();
        assert_eq!(gluing(&gm).unwrap().monoid.monoid().rows(), ch2().monoid().rows());
    }

    #[test]
    fn m3_gluing_map() {
        let cg = gluing_map_from_clifford(&m3()).unwrap();
        assert_eq!(cg.map.values(), &[0, 1]);
        let w = clifford_reconstruction(&m3(), 12).unwrap();
        assert_eq!(w.forward.values(), &[0, 1, 2]);
    }

    #[test]
    fn group_reconstruction() {
        let g = InverseMonoid::new(z2()).unwrap();
        let w = clifford_reconstruction(&g, 12).unwrap();
        assert_eq!(w.b.len(), 2);
    }
}
