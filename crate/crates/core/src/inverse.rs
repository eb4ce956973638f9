//! Inverse monoid recognition, the idempotent semilattice, the natural
//! partial order, the minimal group congruence and the E-unitary,
//! F-inverse and Clifford predicates.

use std::fmt;

use crate::error::{Error, Result};
use crate::monoid::{generated_submonoid, quotient, Congruence, FiniteMonoid, MonoidMap};

/// A monoid in which every element has exactly one generalized inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InverseMonoid {
    base: FiniteMonoid,
    inv: Vec<usize>,
    idempotent: Vec<bool>,
}

impl InverseMonoid {
    /// Finds all generalized inverses of each element and succeeds iff each
    /// element has exactly one. Commutation of idempotents is cross-checked.
    pub fn new(base: FiniteMonoid) -> Result<Self> {
        let n = base.len();
        let mut inv = vec![usize::MAX; n];
        for x in base.elements() {
            for y in base.elements() {
                if base.mul(base.mul(x, y), x) == x && base.mul(base.mul(y, x), y) == y {
                    if inv[x] != usize::MAX {
                        return Err(Error::NonUniqueInverse(x, inv[x], y));
                    }
                    inv[x] = y;
                }
            }
            if inv[x] == usize::MAX {
                return Err(Error::NoInverse(x));
            }
        }
        let idempotent: Vec<bool> = base.elements().map(|x| base.is_idempotent(x)).collect();
        let idems = base.idempotents();
        for &e in &idems {
            for &f in &idems {
                if base.mul(e, f) != base.mul(f, e) {
                    return Err(Error::IdempotentsDoNotCommute(e, f));
                }
            }
        }
        Ok(InverseMonoid { base, inv, idempotent })
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.base
    }

    pub fn into_monoid(self) -> FiniteMonoid {
        self.base
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.base.mul(x, y)
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inv
    }

    #[inline]
    pub fn is_idempotent(&self, x: usize) -> bool {
        self.idempotent[x]
    }

    pub fn idempotents(&self) -> Vec<usize> {
        self.base.elements().filter(|&x| self.idempotent[x]).collect()
    }

    pub fn identity(&self) -> usize {
        self.base.identity()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        self.base.elements()
    }

    /// `x x⁻¹`
    pub fn range_idempotent(&self, x: usize) -> usize {
        self.mul(x, self.inv[x])
    }

    /// `x⁻¹ x`
    pub fn domain_idempotent(&self, x: usize) -> usize {
        self.mul(self.inv[x], x)
    }

    /// `x ≤ y` in the natural partial order.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        // x = e y for some idempotent e iff x = (x x⁻¹) y.
        self.mul(self.range_idempotent(x), y) == x
    }
}

/// A commutative monoid of idempotents, ordered by `e ≤ f` iff `e f = e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemilatticeMonoid {
    base: FiniteMonoid,
    leq: Vec<bool>,
}

impl SemilatticeMonoid {
    pub fn new(base: FiniteMonoid) -> Result<Self> {
        let n = base.len();
        if let Some(x) = base.elements().find(|&x| !base.is_idempotent(x)) {
            return Err(Error::NotASemilattice(format!("{x} is not idempotent")));
        }
        if let Some((x, y)) = base.commutativity_failure() {
            return Err(Error::NotASemilattice(format!("{x} and {y} do not commute")));
        }
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = base.mul(x, y) == x;
            }
        }
        Ok(SemilatticeMonoid { base, leq })
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.base
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.base.mul(x, y)
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.base.len() + y]
    }

    /// The identity, which is the greatest element.
    #[inline]
    pub fn top(&self) -> usize {
        self.base.identity()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        self.base.elements()
    }

    pub fn label(&self, x: usize) -> String {
        self.base.label(x)
    }
}

/// The idempotents of `m` as a semilattice, with their inclusion into `m`.
pub fn idempotent_semilattice(m: &InverseMonoid) -> (SemilatticeMonoid, MonoidMap) {
    let (sub, k) = generated_submonoid(m.monoid(), &m.idempotents())
        .expect("idempotents generate a submonoid");
    assert_eq!(
        sub.len(),
        m.idempotents().len(),
        "idempotents of an inverse monoid are closed under multiplication"
    );
    let y = SemilatticeMonoid::new(sub).expect("idempotents of an inverse monoid form a semilattice");
    (y, k)
}

/// The natural partial order as a dense boolean matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalOrder {
    n: usize,
    leq: Vec<bool>,
}

impl NaturalOrder {
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    /// All pairs `x < y`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if x != y && self.leq(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

/// Computes `x ≤ y` by an explicit scan for an idempotent `e` with
/// `x = e y`, then checks the partial order axioms.
pub fn natural_order(m: &InverseMonoid) -> Result<NaturalOrder> {
    let n = m.len();
    let idems = m.idempotents();
    let mut leq = vec![false; n * n];
    for x in m.elements() {
        for y in m.elements() {
            leq[x * n + y] = idems.iter().any(|&e| m.mul(e, y) == x);
        }
    }
    let order = NaturalOrder { n, leq };
    for x in 0..n {
        if !order.leq(x, x) {
            return Err(Error::OrderAxiomViolation(format!("{x} ≰ {x}")));
        }
        for y in 0..n {
            if x != y && order.leq(x, y) && order.leq(y, x) {
                return Err(Error::OrderAxiomViolation(format!("{x} ≤ {y} ≤ {x}")));
            }
            for z in 0..n {
                if order.leq(x, y) && order.leq(y, z) && !order.leq(x, z) {
                    return Err(Error::OrderAxiomViolation(format!("{x} ≤ {y} ≤ {z} but {x} ≰ {z}")));
                }
            }
        }
    }
    Ok(order)
}

/// σ: `a σ b` iff `e a = e b` for some idempotent `e`.
///
/// The relation is checked to be a congruence with a group quotient.
pub fn min_group_congruence(m: &InverseMonoid) -> Result<Congruence> {
    let n = m.len();
    let idems = m.idempotents();
    let related = |a: usize, b: usize| idems.iter().any(|&e| m.mul(e, a) == m.mul(e, b));
    let mut labels = vec![usize::MAX; n];
    for a in m.elements() {
        if labels[a] != usize::MAX {
            continue;
        }
        labels[a] = a;
        for b in (a + 1)..n {
            if related(a, b) {
                if labels[b] != usize::MAX {
                    return Err(Error::InternalCharacterizationFailure(format!(
                        "relation is not transitive at {a}, {b}"
                    )));
                }
                labels[b] = a;
            }
        }
    }
    // Every pair in a class must be related, not only pairs through the least member.
    for a in m.elements() {
        for b in m.elements() {
            if (labels[a] == labels[b]) != related(a, b) {
                return Err(Error::InternalCharacterizationFailure(format!(
                    "relation is not an equivalence at {a}, {b}"
                )));
            }
        }
    }
    let sigma = Congruence::new(m.monoid(), &labels)
        .map_err(|e| Error::InternalCharacterizationFailure(e.to_string()))?;
    let (q, _) = quotient(m.monoid(), &sigma)
        .map_err(|e| Error::InternalCharacterizationFailure(e.to_string()))?;
    if let Err(e) = q.require_group() {
        return Err(Error::InternalCharacterizationFailure(format!("quotient is not a group: {e}")));
    }
    Ok(sigma)
}

/// Witness that a monoid is not E-unitary: `x e` is idempotent, `e` is
/// idempotent, `x` is not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotEUnitary {
    pub x: usize,
    pub e: usize,
}

impl fmt::Display for NotEUnitary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x={} e={}: x*e is idempotent but x is not", self.x, self.e)
    }
}

pub fn is_e_unitary(m: &InverseMonoid) -> Result<(), NotEUnitary> {
    let idems = m.idempotents();
    for x in m.elements() {
        if m.is_idempotent(x) {
            continue;
        }
        for &e in &idems {
            if m.is_idempotent(m.mul(x, e)) {
                return Err(NotEUnitary { x, e });
            }
        }
    }
    Ok(())
}

/// The greatest element of each σ-class of an F-inverse monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxSelector {
    pub sigma: Congruence,
    /// `greatest[c]` is the greatest element of σ-class `c`.
    pub greatest: Vec<usize>,
}

impl MaxSelector {
    #[inline]
    pub fn select(&self, class: usize) -> usize {
        self.greatest[class]
    }
}

/// Witness that a σ-class has no greatest element: its maximal elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotFInverse {
    pub class: usize,
    pub members: Vec<usize>,
    pub maximal: Vec<usize>,
}

impl fmt::Display for NotFInverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sigma-class {} = {:?} has incomparable maximal elements {:?}",
            self.class, self.members, self.maximal
        )
    }
}

/// Maximal elements of `class` under the natural order.
pub fn maximal_elements(m: &InverseMonoid, class: &[usize]) -> Vec<usize> {
    class
        .iter()
        .copied()
        .filter(|&x| !class.iter().any(|&y| y != x && m.leq(x, y)))
        .collect()
}

/// F-inverse in the "greatest element per σ-class" reading.
///
/// In a finite monoid every σ-class has at least one maximal element, so
/// the failure witness lists the (two or more) maximal elements of the
/// offending class.
pub fn is_f_inverse(m: &InverseMonoid) -> Result<MaxSelector, NotFInverse> {
    let sigma = min_group_congruence(m).expect("sigma of a validated inverse monoid");
    let mut greatest = Vec::with_capacity(sigma.class_count());
    for (c, members) in sigma.classes().into_iter().enumerate() {
        match members.iter().copied().find(|&g| members.iter().all(|&x| m.leq(x, g))) {
            Some(g) => greatest.push(g),
            None => {
                let maximal = maximal_elements(m, &members);
                return Err(NotFInverse { class: c, members, maximal });
            }
        }
    }
    Ok(MaxSelector { sigma, greatest })
}

/// Witness that an idempotent is not central.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotClifford {
    pub idempotent: usize,
    pub element: usize,
}

impl fmt::Display for NotClifford {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "idempotent {} does not commute with {}",
            self.idempotent, self.element
        )
    }
}

/// Central idempotents, cross-checked against `x x⁻¹ = x⁻¹ x` for all `x`.
pub fn is_clifford(m: &InverseMonoid) -> Result<(), NotClifford> {
    let mut witness = None;
    'outer: for e in m.idempotents() {
        for x in m.elements() {
            if m.mul(e, x) != m.mul(x, e) {
                witness = Some(NotClifford { idempotent: e, element: x });
                break 'outer;
            }
        }
    }
    let symmetric = m.elements().all(|x| m.range_idempotent(x) == m.domain_idempotent(x));
    assert_eq!(
        witness.is_none(),
        symmetric,
        "central idempotents must agree with x x⁻¹ = x⁻¹ x"
    );
    match witness {
        Some(w) => Err(w),
        None => Ok(()),
    }
}
