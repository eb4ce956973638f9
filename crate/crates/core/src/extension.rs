//! Monoid extensions `N ↪ G ↠ H`, the canonical extension
//! `E(M) ↪ M ↠ M/σ` of an inverse monoid, weakly Schreier splittings and
//! the cosplitting `ℓ(m) = m m⁻¹`.

use crate::error::{Error, Result};
use crate::inverse::{idempotent_semilattice, is_f_inverse, min_group_congruence, InverseMonoid};
use crate::monoid::{quotient, FiniteMonoid, MonoidMap};

/// An extension `kernel ↪ middle ↠ quotient` with explicit maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub kernel: FiniteMonoid,
    pub middle: FiniteMonoid,
    pub quotient: FiniteMonoid,
    pub k: MonoidMap,
    pub q: MonoidMap,
}

impl Extension {
    /// Checks that `k` is an injective homomorphism, `q` a surjective one,
    /// and that `q⁻¹(1)` is exactly the image of `k`.
    pub fn new(
        kernel: FiniteMonoid,
        middle: FiniteMonoid,
        quotient: FiniteMonoid,
        k: Vec<usize>,
        q: Vec<usize>,
    ) -> Result<Self> {
        let k = MonoidMap::homomorphism(&kernel, &middle, k)?;
        let q = MonoidMap::homomorphism(&middle, &quotient, q)?;
        if !k.is_injective() {
            return Err(Error::InvalidExtension("kernel map is not injective".into()));
        }
        if !q.is_surjective_onto(&quotient) {
            return Err(Error::InvalidExtension("quotient map is not surjective".into()));
        }
        let mut in_image = vec![false; middle.len()];
        for &x in k.values() {
            in_image[x] = true;
        }
        for g in middle.elements() {
            if (q.apply(g) == quotient.identity()) != in_image[g] {
                return Err(Error::KernelMismatch(g));
            }
        }
        Ok(Extension { kernel, middle, quotient, k, q })
    }

    /// Members of `q⁻¹(h)` in increasing order.
    pub fn fiber(&self, h: usize) -> Vec<usize> {
        self.middle.elements().filter(|&g| self.q.apply(g) == h).collect()
    }
}

/// `E(M) ↪ M ↠ M/σ`.
///
/// Fails with [`Error::KernelMismatch`] naming an element of `q⁻¹(1)`
/// outside `E(M)` exactly when `M` is not E-unitary.
pub fn build_canonical_extension(m: &InverseMonoid) -> Result<Extension> {
    let (y, k) = idempotent_semilattice(m);
    let sigma = min_group_congruence(m)?;
    let (h, q) = quotient(m.monoid(), &sigma)?;
    Extension::new(
        y.monoid().clone(),
        m.monoid().clone(),
        h,
        k.values().to_vec(),
        q.values().to_vec(),
    )
}

/// A set-theoretic section `s` of `q` such that every `g` is `k(n)·s(q(g))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WsSplitting {
    pub section: MonoidMap,
}

impl WsSplitting {
    #[inline]
    pub fn apply(&self, h: usize) -> usize {
        self.section.apply(h)
    }
}

/// Members `x` of `fiber` such that every member is `k(n)·x` for some `n`.
pub fn splitting_candidates(ext: &Extension, fiber: &[usize]) -> Vec<usize> {
    let generated = |x: usize, y: usize| {
        ext.k.values().iter().any(|&kn| ext.middle.mul(kn, x) == y)
    };
    fiber
        .iter()
        .copied()
        .filter(|&x| fiber.iter().all(|&y| generated(x, y)))
        .collect()
}

/// Decides the weakly Schreier condition fiber by fiber, choosing the
/// least-index candidate in each fiber.
pub fn is_weakly_schreier(ext: &Extension) -> Result<WsSplitting> {
    let mut section = Vec::with_capacity(ext.quotient.len());
    for h in ext.quotient.elements() {
        let fiber = ext.fiber(h);
        match splitting_candidates(ext, &fiber).first() {
            Some(&x) => section.push(x),
            None => return Err(Error::EmptyCandidateFiber { class: h, fiber }),
        }
    }
    let section = MonoidMap::function(&ext.quotient, &ext.middle, section)?;
    for h in ext.quotient.elements() {
        assert_eq!(ext.q.apply(section.apply(h)), h, "q∘s = id");
    }
    Ok(WsSplitting { section })
}

/// Outcome of running both sides of the weakly Schreier / F-inverse
/// equivalence on the canonical extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WsReport {
    pub f_inverse: bool,
    pub weakly_schreier: bool,
    /// Set when both hold: the splitting equals the greatest-element selector
    /// and each fiber had exactly one candidate.
    pub splitting_is_max_selector: Option<bool>,
}

/// Runs the order-theoretic F-inverse test and the fiber search
/// independently and requires them to agree.
pub fn weakly_schreier_iff_f_inverse(m: &InverseMonoid) -> Result<WsReport> {
    let ext = build_canonical_extension(m)?;
    let selector = is_f_inverse(m);
    let splitting = is_weakly_schreier(&ext);
    match (&selector, &splitting) {
        (Ok(sel), Ok(split)) => {
            let unique = ext
                .quotient
                .elements()
                .all(|h| splitting_candidates(&ext, &ext.fiber(h)).len() == 1);
            let matches = ext.quotient.elements().all(|h| split.apply(h) == sel.select(h));
            if !(matches && unique) {
                return Err(Error::TheoremViolation(
                    "splitting differs from the greatest-element selector".into(),
                ));
            }
            Ok(WsReport { f_inverse: true, weakly_schreier: true, splitting_is_max_selector: Some(true) })
        }
        (Err(_), Err(_)) => Ok(WsReport {
            f_inverse: false,
            weakly_schreier: false,
            splitting_is_max_selector: None,
        }),
        (f, w) => Err(Error::TheoremViolation(format!(
            "F-inverse = {}, weakly Schreier = {}",
            f.is_ok(),
            w.is_ok()
        ))),
    }
}

/// The retraction `ℓ(m) = m m⁻¹` of the kernel map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cosplitting {
    pub ext: Extension,
    /// `ℓ` as a map into the kernel `E(M)`.
    pub ell: MonoidMap,
    pub is_homomorphism: bool,
}

pub fn cosplit_retraction(m: &InverseMonoid) -> Result<Cosplitting> {
    let ext = build_canonical_extension(m)?;
    let mut to_kernel = vec![usize::MAX; m.len()];
    for (n, &x) in ext.k.values().iter().enumerate() {
        to_kernel[x] = n;
    }
    let values: Vec<usize> = m.elements().map(|x| to_kernel[m.range_idempotent(x)]).collect();
    let ell = MonoidMap::function(&ext.middle, &ext.kernel, values)?;
    for n in ext.kernel.elements() {
        assert_eq!(ell.apply(ext.k.apply(n)), n, "ℓ∘k = id");
    }
    let is_homomorphism = ell.is_homomorphism(&ext.middle, &ext.kernel);
    Ok(Cosplitting { ext, ell, is_homomorphism })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inverse(rows: &[&[usize]]) -> InverseMonoid {
        InverseMonoid::new(FiniteMonoid::new(rows.iter().map(|r| r.to_vec()).collect(), 0).unwrap())
            .unwrap()
    }

    fn m3() -> InverseMonoid {
        inverse(&[&[0, 1, 2], &[1, 1, 2], &[2, 2, 1]])
    }

    #[test]
    fn group_extension_is_trivial_kernel() {
        let z3 = inverse(&[&[0, 1, 2], &[1, 2, 0], &[2, 0, 1]]);
        let ext = build_canonical_extension(&z3).unwrap();
        assert_eq!(ext.kernel.len(), 1);
        assert_eq!(ext.quotient.len(), 3);
        let s = is_weakly_schreier(&ext).unwrap();
        assert_eq!(s.section.values(), &[0, 1, 2]);
        let c = cosplit_retraction(&z3).unwrap();
        assert_eq!(c.ell.values(), &[0, 0, 0]);
        assert!(c.is_homomorphism);
    }

    #[test]
    fn m3_extension() {
        let m = m3();
        let ext = build_canonical_extension(&m).unwrap();
        assert_eq!(ext.k.values(), &[0, 1]);
        assert_eq!(ext.q.values(), &[0, 0, 1]);
        let s = is_weakly_schreier(&ext).unwrap();
        assert_eq!(s.section.values(), &[0, 2]);
        let r = weakly_schreier_iff_f_inverse(&m).unwrap();
        assert!(r.f_inverse && r.weakly_schreier);
        let c = cosplit_retraction(&m).unwrap();
        // ℓ(1) = 1, ℓ(e) = e, ℓ(t) = t t = e
        assert_eq!(c.ell.values(), &[0, 1, 1]);
        assert!(c.is_homomorphism);
    }

    #[test]
    fn zero_breaks_kernel_condition() {
        // Z2 with adjoined zero: σ is universal, so the non-idempotent 2 lies in q⁻¹(1).
        let m = inverse(&[&[0, 1, 2], &[1, 1, 1], &[2, 1, 0]]);
        assert!(matches!(build_canonical_extension(&m), Err(Error::KernelMismatch(2))));
    }

    #[test]
    fn extension_validation() {
        let z2 = FiniteMonoid::new(vec![vec![0, 1], vec![1, 0]], 0).unwrap();
        let t = FiniteMonoid::new(vec![vec![0]], 0).unwrap();
        assert!(Extension::new(t.clone(), z2.clone(), z2.clone(), vec![0], vec![0, 1]).is_ok());
        // q onto the trivial monoid has kernel all of Z2.
        assert!(matches!(
            Extension::new(t.clone(), z2.clone(), t.clone(), vec![0], vec![0, 0]),
            Err(Error::KernelMismatch(1))
        ));
    }
}
