use crate::error::{Error, Result};
use crate::extension::{Extension, WsSplitting};
use crate::iso::{brute_force_iso, verify_iso, witness_from_bijection, IsoWitness};
use crate::monoid::{canonical_classes, FiniteMonoid};

use super::almost_action::{f_product, AlmostAction};

/// A relaxed factor system `(∼, ·, χ)` of `H` on `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSystem {
    h: FiniteMonoid,
    n: FiniteMonoid,
    /// `sim[h][n]` is the class of `n` under `∼_h`, numbered canonically.
    sim: Vec<Vec<usize>>,
    act: Vec<usize>,
    chi: Vec<usize>,
}

impl FactorSystem {
    /// Validates all eleven factor-system conditions.
    ///
    /// `sim[h]` labels the classes of `∼_h` (any labelling), `act[h][n]` is
    /// `h·n` and `chi[h1][h2]` is `χ(h1,h2)`.
    pub fn new(
        h: FiniteMonoid,
        n: FiniteMonoid,
        sim: Vec<Vec<usize>>,
        act: Vec<Vec<usize>>,
        chi: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let (nh, nn) = (h.len(), n.len());
        let shape_ok = sim.len() == nh
            && sim.iter().all(|r| r.len() == nn)
            && act.len() == nh
            && act.iter().all(|r| r.len() == nn)
            && chi.len() == nh
            && chi.iter().all(|r| r.len() == nh);
        if !shape_ok {
            return Err(Error::Shape(format!(
                "factor system tables must be sim {nh}x{nn}, act {nh}x{nn}, chi {nh}x{nh}"
            )));
        }
        let act: Vec<usize> = act.into_iter().flatten().collect();
        let chi: Vec<usize> = chi.into_iter().flatten().collect();
        if let Some(p) = act.iter().chain(&chi).position(|&v| v >= nn) {
            let v = act.iter().chain(&chi).nth(p).copied().unwrap_or_default();
            return Err(Error::IndexOutOfRange { row: p, col: 0, value: v, n: nn });
        }
        let sim = sim.iter().map(|labels| canonical_classes(labels).0).collect();
        let fs = FactorSystem { h, n, sim, act, chi };
        fs.check_conditions()?;
        Ok(fs)
    }

    pub fn acting(&self) -> &FiniteMonoid {
        &self.h
    }

    pub fn kernel(&self) -> &FiniteMonoid {
        &self.n
    }

    #[inline]
    pub fn sim(&self, h: usize, a: usize, b: usize) -> bool {
        self.sim[h][a] == self.sim[h][b]
    }

    pub fn sim_classes(&self) -> &[Vec<usize>] {
        &self.sim
    }

    #[inline]
    pub fn act(&self, h: usize, n: usize) -> usize {
        self.act[h * self.n.len() + n]
    }

    #[inline]
    pub fn chi(&self, h1: usize, h2: usize) -> usize {
        self.chi[h1 * self.h.len() + h2]
    }

    pub fn act_rows(&self) -> Vec<Vec<usize>> {
        self.act.chunks(self.n.len()).map(<[usize]>::to_vec).collect()
    }

    pub fn chi_rows(&self) -> Vec<Vec<usize>> {
        self.chi.chunks(self.h.len()).map(<[usize]>::to_vec).collect()
    }

    /// Pairs `(a, b)` with `a ∼_h b`.
    fn related_pairs(&self, h: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let nn = self.n.len();
        (0..nn).flat_map(move |a| (0..nn).filter(move |&b| self.sim(h, a, b)).map(move |b| (a, b)))
    }

    pub fn check_conditions(&self) -> Result<()> {
        let (h, n) = (&self.h, &self.n);
        let one_h = h.identity();
        let one_n = n.identity();
        let fail = |condition: u8, witness: Vec<usize>| Err(Error::ConditionViolation { condition, witness });

        // 1: ∼_1 is equality
        for (a, b) in self.related_pairs(one_h) {
            if a != b {
                return fail(1, vec![a, b]);
            }
        }
        for hi in h.elements() {
            for (a, b) in self.related_pairs(hi) {
                // 2: left multiplication
                for x in n.elements() {
                    if !self.sim(hi, n.mul(x, a), n.mul(x, b)) {
                        return fail(2, vec![hi, a, b, x]);
                    }
                }
                // 4: right multiplication by h·m
                for m in n.elements() {
                    let hm = self.act(hi, m);
                    if !self.sim(hi, n.mul(a, hm), n.mul(b, hm)) {
                        return fail(4, vec![hi, a, b, m]);
                    }
                }
                for h2 in h.elements() {
                    // 3: n1 χ(h,h2) ∼_{h h2} n2 χ(h,h2)
                    let c = self.chi(hi, h2);
                    let hh2 = h.mul(hi, h2);
                    if !self.sim(hh2, n.mul(a, c), n.mul(b, c)) {
                        return fail(3, vec![hi, h2, a, b]);
                    }
                    // 5: with a, b ∼_hi, act by h1 = h2 on the left
                    let h1 = h2;
                    let c = self.chi(h1, hi);
                    let h1hi = h.mul(h1, hi);
                    if !self.sim(h1hi, n.mul(self.act(h1, a), c), n.mul(self.act(h1, b), c)) {
                        return fail(5, vec![h1, hi, a, b]);
                    }
                }
            }
            // 6: h·(n1 n2) ∼_h (h·n1)(h·n2)
            for a in n.elements() {
                for b in n.elements() {
                    if !self.sim(hi, self.act(hi, n.mul(a, b)), n.mul(self.act(hi, a), self.act(hi, b))) {
                        return fail(6, vec![hi, a, b]);
                    }
                }
            }
            // 8: h·1 ∼_h 1
            if !self.sim(hi, self.act(hi, one_n), one_n) {
                return fail(8, vec![hi]);
            }
            // 10: χ(1,h) ∼_h 1 ∼_h χ(h,1)
            if !self.sim(hi, self.chi(one_h, hi), one_n) || !self.sim(hi, one_n, self.chi(hi, one_h)) {
                return fail(10, vec![hi]);
            }
        }
        // 7: χ(h1,h2)(h1h2·n) ∼_{h1h2} (h1·(h2·n))χ(h1,h2)
        for h1 in h.elements() {
            for h2 in h.elements() {
                let h12 = h.mul(h1, h2);
                let c = self.chi(h1, h2);
                for m in n.elements() {
                    let lhs = n.mul(c, self.act(h12, m));
                    let rhs = n.mul(self.act(h1, self.act(h2, m)), c);
                    if !self.sim(h12, lhs, rhs) {
                        return fail(7, vec![h1, h2, m]);
                    }
                }
            }
        }
        // 9: 1·n ∼_1 n
        for m in n.elements() {
            if !self.sim(one_h, self.act(one_h, m), m) {
                return fail(9, vec![m]);
            }
        }
        // 11: χ(x,y)χ(xy,z) ∼_{xyz} (x·χ(y,z))χ(x,yz)
        for x in h.elements() {
            for y in h.elements() {
                let xy = h.mul(x, y);
                for z in h.elements() {
                    let yz = h.mul(y, z);
                    let xyz = h.mul(xy, z);
                    let lhs = n.mul(self.chi(x, y), self.chi(xy, z));
                    let rhs = n.mul(self.act(x, self.chi(y, z)), self.chi(x, yz));
                    if !self.sim(xyz, lhs, rhs) {
                        return fail(11, vec![x, y, z]);
                    }
                }
            }
        }
        Ok(())
    }
}

/// `y ∼_g z` iff `y ∧ g·1 = z ∧ g·1`, with the almost action as `·` and
/// `χ(g,h) = g·1`.
pub fn factor_system_from_almost_action(aa: &AlmostAction) -> Result<FactorSystem> {
    let y = aa.semilattice();
    let g = aa.group();
    let sim = g
        .elements()
        .map(|gi| y.elements().map(|yi| y.meet(yi, aa.domain_bound(gi))).collect())
        .collect();
    let chi = g
        .elements()
        .map(|g1| g.elements().map(|_| aa.domain_bound(g1)).collect())
        .collect();
    FactorSystem::new(g.clone(), y.monoid().clone(), sim, aa.dot_rows(), chi)
}

/// The crossed product on `⨆_h N/∼_h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedProduct {
    pub monoid: FiniteMonoid,
    /// `elements[i] = (least representative n, h)`.
    pub elements: Vec<(usize, usize)>,
}

impl CrossedProduct {
    /// Index of the element `([n], h)`.
    pub fn index_of(&self, fs: &FactorSystem, n: usize, h: usize) -> usize {
        self.elements
            .iter()
            .position(|&(r, hh)| hh == h && fs.sim(h, r, n))
            .expect("every class has a representative")
    }
}

/// Builds `N ⋊_χ H` with `([n],h)([n'],h') = ([n (h·n') χ(h,h')], hh')`.
///
/// Elements are ordered by `h`, then by least representative. The product
/// is computed for every choice of representatives and must not depend on
/// the choice.
pub fn crossed_product(fs: &FactorSystem) -> Result<CrossedProduct> {
    let (h, n) = (fs.acting(), fs.kernel());
    let mut elements = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![vec![usize::MAX; n.len()]; h.len()];
    for hi in h.elements() {
        let classes = fs.sim_classes()[hi].iter().copied().max().map_or(0, |m| m + 1);
        for c in 0..classes {
            let reps: Vec<usize> = n.elements().filter(|&x| fs.sim_classes()[hi][x] == c).collect();
            for &r in &reps {
                index[hi][r] = elements.len();
            }
            elements.push((reps[0], hi));
            members.push(reps);
        }
    }
    let size = elements.len();
    let mut table = Vec::with_capacity(size * size);
    for (i, &(_, h1)) in elements.iter().enumerate() {
        for (j, &(_, h2)) in elements.iter().enumerate() {
            let h12 = h.mul(h1, h2);
            let c = fs.chi(h1, h2);
            let mut result = usize::MAX;
            for &a in &members[i] {
                for &b in &members[j] {
                    let p = n.mul(n.mul(a, fs.act(h1, b)), c);
                    let idx = index[h12][p];
                    if result == usize::MAX {
                        result = idx;
                    } else if result != idx {
                        return Err(Error::IllDefinedMultiplication(vec![h1, h2, a, b]));
                    }
                }
            }
            table.push(result);
        }
    }
    let id = index[h.identity()][n.identity()];
    let labels = elements
        .iter()
        .map(|&(r, hi)| format!("([{}],{})", n.label(r), h.label(hi)))
        .collect();
    let monoid = FiniteMonoid::from_flat(size, table, id)?.with_labels(labels)?;
    Ok(CrossedProduct { monoid, elements })
}

/// `φ(y,g) = ([y]_g, g)` with inverse `ψ([y]_g, g) = (y ∧ g·1, g)`.
///
/// The explicit maps are verified and the isomorphism is also confirmed by
/// an independent brute-force search.
pub fn iso_f_product_crossed(aa: &AlmostAction, max_iso_n: usize) -> Result<IsoWitness> {
    let fy = f_product(aa)?;
    let fs = factor_system_from_almost_action(aa)?;
    let cp = crossed_product(&fs)?;
    let y = aa.semilattice();
    let phi: Vec<usize> = fy.pairs.iter().map(|&(yi, g)| cp.index_of(&fs, yi, g)).collect();
    let psi: Vec<usize> = cp
        .elements
        .iter()
        .map(|&(r, g)| {
            fy.index_of(y.meet(r, aa.domain_bound(g)), g)
                .expect("y ∧ g·1 ≤ g·1 lies in F(Y,G)")
        })
        .collect();
    let witness = verify_iso(fy.monoid.monoid(), &cp.monoid, phi, psi)
        .map_err(|e| Error::IsoCheckFailed(format!("φ/ψ: {e}")))?;
    brute_force_iso(fy.monoid.monoid(), &cp.monoid, max_iso_n)?
        .ok_or_else(|| Error::IsoCheckFailed("brute-force search disagrees with φ/ψ".into()))?;
    Ok(witness)
}

/// Reads a factor system off a weakly Schreier extension with splitting `s`:
///
/// * `n₁ ∼_h n₂` iff `k(n₁) s(h) = k(n₂) s(h)`
/// * `h·n` is the least `n'` with `k(n') s(h) = s(h) k(n)`
/// * `χ(h₁,h₂)` is the least `n` with `k(n) s(h₁h₂) = s(h₁) s(h₂)`
///
/// Returns the validated system and the isomorphism `N ⋊_χ H → G`,
/// `([n],h) ↦ k(n) s(h)`, which is also confirmed by brute-force search.
pub fn factor_system_from_extension(
    ext: &Extension,
    split: &WsSplitting,
    max_iso_n: usize,
) -> Result<(FactorSystem, IsoWitness)> {
    let (h, n, g) = (&ext.quotient, &ext.kernel, &ext.middle);
    let k = |x: usize| ext.k.apply(x);
    let s = |x: usize| split.apply(x);
    let sim: Vec<Vec<usize>> = h
        .elements()
        .map(|hi| n.elements().map(|x| g.mul(k(x), s(hi))).collect())
        .collect();
    let mut act = Vec::with_capacity(h.len());
    for hi in h.elements() {
        let mut row = Vec::with_capacity(n.len());
        for x in n.elements() {
            let target = g.mul(s(hi), k(x));
            let found = n
                .elements()
                .find(|&y| g.mul(k(y), s(hi)) == target)
                .ok_or(Error::NoActionWitness { h: hi, n: x })?;
            row.push(found);
        }
        act.push(row);
    }
    let mut chi = Vec::with_capacity(h.len());
    for h1 in h.elements() {
        let mut row = Vec::with_capacity(h.len());
        for h2 in h.elements() {
            let target = g.mul(s(h1), s(h2));
            let s12 = s(h.mul(h1, h2));
            let found = n
                .elements()
                .find(|&y| g.mul(k(y), s12) == target)
                .ok_or(Error::NoChiWitness(h1, h2))?;
            row.push(found);
        }
        chi.push(row);
    }
    let fs = FactorSystem::new(h.clone(), n.clone(), sim, act, chi)?;
    let cp = crossed_product(&fs)?;
    let forward: Vec<usize> = cp.elements.iter().map(|&(r, hi)| g.mul(k(r), s(hi))).collect();
    let witness = witness_from_bijection(&cp.monoid, g, forward)
        .map_err(|e| Error::IsoCheckFailed(format!("([n],h) ↦ k(n)s(h): {e}")))?;
    brute_force_iso(&cp.monoid, g, max_iso_n)?
        .ok_or_else(|| Error::IsoNotFound("crossed product vs middle object".into()))?;
    Ok((fs, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::tests::{ch2, m3, trivial, z2};
    use crate::extension::{build_canonical_extension, is_weakly_schreier};

    fn collapsing() -> AlmostAction {
        AlmostAction::new(z2(), ch2(), vec![vec![0, 1], vec![1, 1]]).unwrap()
    }

    #[test]
    fn trivial_action_factor_system() {
        let aa = AlmostAction::new(z2(), ch2(), vec![vec![0, 1], vec![0, 1]]).unwrap();
        let fs = factor_system_from_almost_action(&aa).unwrap();
        assert_eq!(fs.sim_classes(), &[vec![0, 1], vec![0, 1]]);
        assert_eq!(fs.chi_rows(), vec![vec![0, 0], vec![0, 0]]);
        let cp = crossed_product(&fs).unwrap();
        assert_eq!(cp.monoid.len(), 4);
        assert!(cp.monoid.is_commutative());
    }

    #[test]
    fn collapsing_action_factor_system() {
        let fs = factor_system_from_almost_action(&collapsing()).unwrap();
        // 1 and e are identified at g since both meet g·1 = e to e.
        assert_eq!(fs.sim_classes()[1], vec![0, 0]);
        assert_eq!(fs.chi_rows()[1], vec![1, 1]);
        let cp = crossed_product(&fs).unwrap();
        assert_eq!(cp.elements, vec![(0, 0), (1, 0), (0, 1)]);
        assert!(brute_force_iso(&cp.monoid, m3().monoid(), 12).unwrap().is_some());
        let w = iso_f_product_crossed(&collapsing(), 12).unwrap();
        assert_eq!(w.forward.values(), &[0, 1, 2]);
    }

    #[test]
    fn altered_chi_is_rejected() {
        let aa = collapsing();
        let err = FactorSystem::new(
            z2(),
            ch2().monoid().clone(),
            vec![vec![0, 1], vec![0, 0]],
            aa.dot_rows(),
            vec![vec![0, 0], vec![1, 0]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::ConditionViolation { .. }), "{err:?}");
    }

    #[test]
    fn sim_at_identity_must_be_equality() {
        let err = FactorSystem::new(
            trivial(),
            ch2().monoid().clone(),
            vec![vec![0, 0]],
            vec![vec![0, 1]],
            vec![vec![0]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::ConditionViolation { condition: 1, .. }));
    }

    #[test]
    fn trivial_h_crossed_product_is_n() {
        let n = m3().monoid().clone();
        let fs = FactorSystem::new(trivial(), n.clone(), vec![vec![0, 1, 2]], vec![vec![0, 1, 2]], vec![vec![0]])
            .unwrap();
        assert_eq!(crossed_product(&fs).unwrap().monoid.rows(), n.rows());
    }

    #[test]
    fn extension_extraction_on_m3() {
        let ext = build_canonical_extension(&m3()).unwrap();
        let s = is_weakly_schreier(&ext).unwrap();
        let (fs, w) = factor_system_from_extension(&ext, &s, 12).unwrap();
        assert_eq!(fs.acting().len(), 2);
        assert_eq!(w.b.len(), 3);
    }

    #[test]
    fn group_extension_extraction() {
        let z2m = crate::inverse::InverseMonoid::new(z2()).unwrap();
        let ext = build_canonical_extension(&z2m).unwrap();
        let s = is_weakly_schreier(&ext).unwrap();
        let (fs, _) = factor_system_from_extension(&ext, &s, 12).unwrap();
        assert_eq!(fs.kernel().len(), 1);
        assert_eq!(fs.chi_rows(), vec![vec![0, 0], vec![0, 0]]);
    }
}
