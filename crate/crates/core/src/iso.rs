//! Certified isomorphisms: checking explicit maps, and a backtracking
//! search used as an independent oracle.

use crate::error::{Error, Result};
use crate::monoid::{FiniteMonoid, MonoidMap};

/// Default size bound for [`brute_force_iso`].
pub const DEFAULT_MAX_ISO_N: usize = 12;

/// A pair of mutually inverse homomorphisms between `a` and `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub a: FiniteMonoid,
    pub b: FiniteMonoid,
    pub forward: MonoidMap,
    pub backward: MonoidMap,
}

/// Checks that `forward` and `backward` are homomorphisms and two-sided
/// inverses of each other.
pub fn verify_iso(
    a: &FiniteMonoid,
    b: &FiniteMonoid,
    forward: Vec<usize>,
    backward: Vec<usize>,
) -> Result<IsoWitness> {
    let fwd = MonoidMap::function(a, b, forward)?;
    let bwd = MonoidMap::function(b, a, backward)?;
    for x in a.elements() {
        if bwd.apply(fwd.apply(x)) != x {
            return Err(Error::NotInverse(x));
        }
    }
    for y in b.elements() {
        if fwd.apply(bwd.apply(y)) != y {
            return Err(Error::NotInverse(y));
        }
    }
    let forward = MonoidMap::homomorphism(a, b, fwd.values().to_vec())?;
    let backward = MonoidMap::homomorphism(b, a, bwd.values().to_vec())?;
    Ok(IsoWitness { a: a.clone(), b: b.clone(), forward, backward })
}

/// Builds the witness for a bijective homomorphism given only one direction.
pub fn witness_from_bijection(a: &FiniteMonoid, b: &FiniteMonoid, forward: Vec<usize>) -> Result<IsoWitness> {
    if a.len() != b.len() {
        return Err(Error::Shape("sizes differ".into()));
    }
    let mut backward = vec![usize::MAX; b.len()];
    for (x, &y) in forward.iter().enumerate() {
        if y >= b.len() || backward[y] != usize::MAX {
            return Err(Error::NotInverse(x));
        }
        backward[y] = x;
    }
    verify_iso(a, b, forward, backward)
}

/// Cheap isomorphism invariant of one element: idempotency, index and
/// period of its monogenic subsemigroup, and number of generalized inverses.
pub type Profile = (bool, usize, usize, usize);

pub fn profile(m: &FiniteMonoid, x: usize) -> Profile {
    let (i, p) = m.index_period(x);
    (m.is_idempotent(x), i, p, m.generalized_inverse_count(x))
}

/// Sorted multiset of element profiles; equal for isomorphic monoids.
pub fn invariant_signature(m: &FiniteMonoid) -> Vec<Profile> {
    let mut v: Vec<Profile> = m.elements().map(|x| profile(m, x)).collect();
    v.sort_unstable();
    v
}

struct Search<'a> {
    a: &'a FiniteMonoid,
    b: &'a FiniteMonoid,
    pa: Vec<Profile>,
    pb: Vec<Profile>,
    map: Vec<usize>,
    used: Vec<bool>,
    assigned: Vec<usize>,
}

impl Search<'_> {
    /// Assigns `x ↦ y` and propagates all forced images of products of
    /// assigned elements. On failure the caller undoes via `undo_to`.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            if self.map[x] != usize::MAX {
                if self.map[x] != y {
                    return false;
                }
                continue;
            }
            if self.used[y] || self.pa[x] != self.pb[y] {
                return false;
            }
            self.map[x] = y;
            self.used[y] = true;
            self.assigned.push(x);
            let snapshot = self.assigned.clone();
            for &u in &snapshot {
                for (l, r) in [(x, u), (u, x)] {
                    let p = self.a.mul(l, r);
                    let t = self.b.mul(self.map[l], self.map[r]);
                    if self.map[p] == usize::MAX {
                        queue.push((p, t));
                    } else if self.map[p] != t {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        while self.assigned.len() > len {
            let x = self.assigned.pop().unwrap();
            self.used[self.map[x]] = false;
            self.map[x] = usize::MAX;
        }
    }

    fn solve(&mut self) -> bool {
        let Some(x) = self.a.elements().find(|&x| self.map[x] == usize::MAX) else {
            return true;
        };
        for y in self.b.elements() {
            if self.used[y] || self.pa[x] != self.pb[y] {
                continue;
            }
            let mark = self.assigned.len();
            if self.assign(x, y) && self.solve() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

/// Searches for an isomorphism `a → b`.
///
/// Identity is sent to identity, element profiles must match, and every
/// assignment propagates to products of already assigned elements.
/// Returns `Ok(None)` when the monoids are not isomorphic.
pub fn brute_force_iso(a: &FiniteMonoid, b: &FiniteMonoid, limit: usize) -> Result<Option<IsoWitness>> {
    let n = a.len().max(b.len());
    if n > limit {
        return Err(Error::SizeLimitExceeded { n, limit });
    }
    if a.len() != b.len() {
        return Ok(None);
    }
    let pa: Vec<Profile> = a.elements().map(|x| profile(a, x)).collect();
    let pb: Vec<Profile> = b.elements().map(|x| profile(b, x)).collect();
    let (mut sa, mut sb) = (pa.clone(), pb.clone());
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(None);
    }
    let mut search = Search {
        a,
        b,
        pa,
        pb,
        map: vec![usize::MAX; a.len()],
        used: vec![false; b.len()],
        assigned: Vec::new(),
    };
    if !search.assign(a.identity(), b.identity()) || !search.solve() {
        return Ok(None);
    }
    let forward = search.map;
    witness_from_bijection(a, b, forward)
        .map(Some)
        .map_err(|e| Error::IsoCheckFailed(format!("search produced an invalid map: {e}")))
}

/// Unpruned search over all bijections, for cross-checking the pruned
/// search on very small monoids.
pub fn exhaustive_iso(a: &FiniteMonoid, b: &FiniteMonoid) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let hom = perm[a.identity()] == b.identity()
            && a.elements().all(|x| {
                a.elements().all(|y| perm[a.mul(x, y)] == b.mul(perm[x], perm[y]))
            });
        if hom {
            return Some(perm);
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::direct_product;

    fn cyclic(n: usize) -> FiniteMonoid {
        FiniteMonoid::new(
            (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
            0,
        )
        .unwrap()
    }

    fn m3() -> FiniteMonoid {
        FiniteMonoid::new(vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 1]], 0).unwrap()
    }

    #[test]
    fn identity_and_inversion_witnesses() {
        let m = m3();
        assert!(verify_iso(&m, &m, vec![0, 1, 2], vec![0, 1, 2]).is_ok());
        let z3 = cyclic(3);
        assert!(verify_iso(&z3, &z3, vec![0, 2, 1], vec![0, 2, 1]).is_ok());
        let z2 = cyclic(2);
        assert!(verify_iso(&z2, &z2, vec![0, 1], vec![0, 1]).is_ok());
    }

    #[test]
    fn swapping_e_and_t_is_not_a_homomorphism() {
        let m = m3();
        assert!(matches!(
            verify_iso(&m, &m, vec![0, 2, 1], vec![0, 2, 1]),
            Err(Error::NotHomomorphism(..))
        ));
        assert!(matches!(
            verify_iso(&m, &m, vec![0, 2, 1], vec![0, 1, 2]),
            Err(Error::NotInverse(_))
        ));
    }

    #[test]
    fn klein_is_not_z4() {
        let k4 = direct_product(&cyclic(2), &cyclic(2));
        assert!(brute_force_iso(&k4, &cyclic(4), 12).unwrap().is_none());
        assert!(brute_force_iso(&k4, &k4, 12).unwrap().is_some());
        assert!(exhaustive_iso(&k4, &cyclic(4)).is_none());
    }

    #[test]
    fn relabelled_copy_is_found() {
        let m = direct_product(&m3(), &cyclic(2));
        let perm = [3, 0, 5, 1, 4, 2];
        let p = crate::monoid::permute(&m, &perm).unwrap();
        let w = brute_force_iso(&m, &p, 12).unwrap().unwrap();
        assert_eq!(w.forward.values().len(), 6);
    }

    #[test]
    fn size_limit() {
        let big = cyclic(13);
        assert!(matches!(
            brute_force_iso(&big, &big, DEFAULT_MAX_ISO_N),
            Err(Error::SizeLimitExceeded { n: 13, limit: 12 })
        ));
        assert_eq!(brute_force_iso(&cyclic(2), &cyclic(3), 12).unwrap(), None);
    }
}
