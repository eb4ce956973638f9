//! Finite monoids as dense multiplication tables, together with maps,
//! congruences, quotients and products.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A finite monoid on the elements `0..n`.
///
/// Values of this type are only produced by [`FiniteMonoid::new`] (or by
/// constructions that go through it), so associativity and the identity
/// laws always hold.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteMonoid {
    n: usize,
    table: Vec<usize>,
    id: usize,
    labels: Option<Vec<String>>,
}

impl FiniteMonoid {
    /// Validates `table` (row `x`, column `y` holds `x*y`) and `id`.
    ///
    /// Associativity is checked over all triples.
    pub fn new(table: Vec<Vec<usize>>, id: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Shape("monoid must have at least one element".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (x, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "row {x} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (y, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::IndexOutOfRange { row: x, col: y, value: v, n });
                }
                flat.push(v);
            }
        }
        Self::from_flat(n, flat, id)
    }

    /// Like [`FiniteMonoid::new`] but takes a row-major `n*n` table.
    pub fn from_flat(n: usize, table: Vec<usize>, id: usize) -> Result<Self> {
        if n == 0 || table.len() != n * n {
            return Err(Error::Shape(format!(
                "expected {} entries for n={n}, got {}",
                n * n,
                table.len()
            )));
        }
        if let Some(pos) = table.iter().position(|&v| v >= n) {
            return Err(Error::IndexOutOfRange {
                row: pos / n,
                col: pos % n,
                value: table[pos],
                n,
            });
        }
        if id >= n {
            return Err(Error::IndexOutOfRange { row: id, col: id, value: id, n });
        }
        let m = FiniteMonoid { n, table, id, labels: None };
        for x in 0..n {
            if m.mul(id, x) != x || m.mul(x, id) != x {
                return Err(Error::NotIdentity(x));
            }
        }
        if let Some((x, y, z)) = m.associativity_failure() {
            return Err(Error::NotAssociative(x, y, z));
        }
        Ok(m)
    }

    fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Attaches display labels. The label count must match the element count.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::Shape(format!(
                "{} labels for {} elements",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false; monoids have an identity.
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.id
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.table[x * self.n..(x + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.table
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display label of `x`, falling back to the index.
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<usize> {
        self.elements().filter(|&x| self.is_idempotent(x)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_failure().is_none()
    }

    pub fn commutativity_failure(&self) -> Option<(usize, usize)> {
        for x in 0..self.n {
            for y in (x + 1)..self.n {
                if self.mul(x, y) != self.mul(y, x) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Two-sided inverse of `x` if `x` is a unit.
    pub fn unit_inverse(&self, x: usize) -> Option<usize> {
        self.elements()
            .find(|&y| self.mul(x, y) == self.id && self.mul(y, x) == self.id)
    }

    /// True when every element is a unit.
    pub fn is_group(&self) -> bool {
        self.elements().all(|x| self.unit_inverse(x).is_some())
    }

    /// Returns `self` when it is a group, otherwise the first non-unit.
    pub fn require_group(&self) -> Result<()> {
        match self.elements().find(|&x| self.unit_inverse(x).is_none()) {
            Some(x) => Err(Error::NotAGroup(x)),
            None => Ok(()),
        }
    }

    /// Index and period of the monogenic subsemigroup generated by `x`:
    /// the least `i >= 1`, `p >= 1` with `x^(i+p) = x^i`.
    pub fn index_period(&self, x: usize) -> (usize, usize) {
        let mut seen = vec![usize::MAX; self.n];
        let mut power = x;
        let mut k = 1;
        loop {
            if seen[power] != usize::MAX {
                let i = seen[power];
                return (i, k - i);
            }
            seen[power] = k;
            power = self.mul(power, x);
            k += 1;
        }
    }

    /// Number of `y` with `x*y*x = x` and `y*x*y = y`.
    pub fn generalized_inverse_count(&self, x: usize) -> usize {
        self.elements()
            .filter(|&y| self.mul(self.mul(x, y), x) == x && self.mul(self.mul(y, x), y) == y)
            .count()
    }
}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteMonoid")
            .field("n", &self.n)
            .field("id", &self.id)
            .field("table", &self.rows())
            .finish()
    }
}

/// Whether a [`MonoidMap`] was certified as a homomorphism or is only a
/// function between carriers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapKind {
    Function,
    Homomorphism,
}

/// A map between the carriers of two monoids, stored as the image of each
/// source index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonoidMap {
    values: Vec<usize>,
    kind: MapKind,
}

impl MonoidMap {
    /// A plain function; only totality and range are checked.
    pub fn function(source: &FiniteMonoid, target: &FiniteMonoid, values: Vec<usize>) -> Result<Self> {
        if values.len() != source.len() {
            return Err(Error::Shape(format!(
                "map has {} values for a source of size {}",
                values.len(),
                source.len()
            )));
        }
        if let Some(x) = values.iter().position(|&v| v >= target.len()) {
            return Err(Error::IndexOutOfRange {
                row: x,
                col: 0,
                value: values[x],
                n: target.len(),
            });
        }
        Ok(MonoidMap { values, kind: MapKind::Function })
    }

    /// A map that must preserve products and the identity.
    pub fn homomorphism(source: &FiniteMonoid, target: &FiniteMonoid, values: Vec<usize>) -> Result<Self> {
        let mut map = Self::function(source, target, values)?;
        map.check_homomorphism(source, target)?;
        map.kind = MapKind::Homomorphism;
        Ok(map)
    }

    pub fn identity(m: &FiniteMonoid) -> Self {
        MonoidMap { values: m.elements().collect(), kind: MapKind::Homomorphism }
    }

    pub fn check_homomorphism(&self, source: &FiniteMonoid, target: &FiniteMonoid) -> Result<()> {
        if self.values[source.identity()] != target.identity() {
            return Err(Error::IdentityNotPreserved);
        }
        for x in source.elements() {
            for y in source.elements() {
                if self.values[source.mul(x, y)] != target.mul(self.values[x], self.values[y]) {
                    return Err(Error::NotHomomorphism(x, y));
                }
            }
        }
        Ok(())
    }

    pub fn is_homomorphism(&self, source: &FiniteMonoid, target: &FiniteMonoid) -> bool {
        self.check_homomorphism(source, target).is_ok()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn is_injective(&self) -> bool {
        let set: BTreeSet<_> = self.values.iter().collect();
        set.len() == self.values.len()
    }

    pub fn is_surjective_onto(&self, target: &FiniteMonoid) -> bool {
        let set: BTreeSet<_> = self.values.iter().collect();
        set.len() == target.len()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MonoidMap) -> MonoidMap {
        let kind = if self.kind == MapKind::Homomorphism && other.kind == MapKind::Homomorphism {
            MapKind::Homomorphism
        } else {
            MapKind::Function
        };
        MonoidMap {
            values: self.values.iter().map(|&v| other.values[v]).collect(),
            kind,
        }
    }
}

/// A congruence stored as a canonical class vector: classes are numbered
/// in order of their least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    class_of: Vec<usize>,
    classes: usize,
}

/// Renumbers a labelling so that classes appear in order of first occurrence.
pub fn canonical_classes(labels: &[usize]) -> (Vec<usize>, usize) {
    let mut map = std::collections::HashMap::new();
    let mut out = Vec::with_capacity(labels.len());
    for &l in labels {
        let next = map.len();
        out.push(*map.entry(l).or_insert(next));
    }
    let count = map.len();
    (out, count)
}

impl Congruence {
    /// Validates compatibility of the partition given by `labels` (any
    /// labelling; it is renumbered canonically).
    pub fn new(m: &FiniteMonoid, labels: &[usize]) -> Result<Self> {
        if labels.len() != m.len() {
            return Err(Error::Shape(format!(
                "{} class labels for {} elements",
                labels.len(),
                m.len()
            )));
        }
        let (class_of, classes) = canonical_classes(labels);
        let c = Congruence { class_of, classes };
        if let Some((a, b, x)) = c.compatibility_failure(m) {
            return Err(Error::NotACongruence(a, b, x));
        }
        Ok(c)
    }

    fn compatibility_failure(&self, m: &FiniteMonoid) -> Option<(usize, usize, usize)> {
        // Compatibility only needs checking against a representative of each class.
        let mut rep = vec![usize::MAX; self.classes];
        for a in m.elements() {
            let c = self.class_of[a];
            if rep[c] == usize::MAX {
                rep[c] = a;
                continue;
            }
            let r = rep[c];
            for x in m.elements() {
                if self.class_of[m.mul(x, a)] != self.class_of[m.mul(x, r)]
                    || self.class_of[m.mul(a, x)] != self.class_of[m.mul(r, x)]
                {
                    return Some((r, a, x));
                }
            }
        }
        None
    }

    pub fn identity(m: &FiniteMonoid) -> Self {
        Congruence { class_of: m.elements().collect(), classes: m.len() }
    }

    pub fn universal(m: &FiniteMonoid) -> Self {
        Congruence { class_of: vec![0; m.len()], classes: 1 }
    }

    #[inline]
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class_vector(&self) -> &[usize] {
        &self.class_of
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Members of each class, in increasing order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.classes];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    /// Intersection of two congruences on the same monoid.
    pub fn intersect(&self, other: &Congruence) -> Congruence {
        let pairs: Vec<usize> = self
            .class_of
            .iter()
            .zip(&other.class_of)
            .map(|(&a, &b)| a * other.classes + b)
            .collect();
        let (class_of, classes) = canonical_classes(&pairs);
        Congruence { class_of, classes }
    }
}

/// The quotient `m/theta` together with the class map.
///
/// Element `c` of the quotient is class `c` of `theta`; its label is the
/// bracketed label of the class's least member.
pub fn quotient(m: &FiniteMonoid, theta: &Congruence) -> Result<(FiniteMonoid, MonoidMap)> {
    if theta.class_of.len() != m.len() {
        return Err(Error::Shape("congruence belongs to a different monoid".into()));
    }
    if let Some((a, b, x)) = theta.compatibility_failure(m) {
        return Err(Error::NotACongruence(a, b, x));
    }
    let k = theta.classes;
    let reps: Vec<usize> = theta.classes().iter().map(|c| c[0]).collect();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(theta.class_of(m.mul(a, b)));
        }
    }
    let labels = reps.iter().map(|&r| format!("[{}]", m.label(r))).collect();
    let q = FiniteMonoid::from_flat(k, table, theta.class_of(m.identity()))?.with_labels(labels)?;
    let map = MonoidMap::homomorphism(m, &q, theta.class_of.clone())?;
    Ok((q, map))
}

/// Componentwise product; `(a,b)` has index `a * |b| + b`.
pub fn direct_product(a: &FiniteMonoid, b: &FiniteMonoid) -> FiniteMonoid {
    let (na, nb) = (a.len(), b.len());
    let n = na * nb;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (xa, xb) = (x / nb, x % nb);
            let (ya, yb) = (y / nb, y % nb);
            table.push(a.mul(xa, ya) * nb + b.mul(xb, yb));
        }
    }
    let labels = (0..n)
        .map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb)))
        .collect();
    FiniteMonoid::from_flat(n, table, a.identity() * nb + b.identity())
        .and_then(|m| m.with_labels(labels))
        .expect("product of monoids is a monoid")
}

/// Projections of `direct_product(a, b)` onto its factors.
pub fn product_projections(a: &FiniteMonoid, b: &FiniteMonoid) -> (Vec<usize>, Vec<usize>) {
    let nb = b.len();
    let n = a.len() * nb;
    ((0..n).map(|x| x / nb).collect(), (0..n).map(|x| x % nb).collect())
}

/// Closure of `generators ∪ {1}` under multiplication, as a monoid in its
/// own right, with its inclusion into `m`.
///
/// Elements of the submonoid are the members of the closure in increasing
/// index order and keep their labels.
pub fn generated_submonoid(m: &FiniteMonoid, generators: &[usize]) -> Result<(FiniteMonoid, MonoidMap)> {
    if let Some(&g) = generators.iter().find(|&&g| g >= m.len()) {
        return Err(Error::IndexOutOfRange { row: g, col: 0, value: g, n: m.len() });
    }
    let mut members: BTreeSet<usize> = generators.iter().copied().collect();
    members.insert(m.identity());
    let mut frontier: Vec<usize> = members.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        let current: Vec<usize> = members.iter().copied().collect();
        for y in current {
            for p in [m.mul(x, y), m.mul(y, x)] {
                if members.insert(p) {
                    frontier.push(p);
                }
            }
        }
    }
    let elems: Vec<usize> = members.into_iter().collect();
    let mut pos = vec![usize::MAX; m.len()];
    for (i, &e) in elems.iter().enumerate() {
        pos[e] = i;
    }
    let k = elems.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &elems {
        for &b in &elems {
            table.push(pos[m.mul(a, b)]);
        }
    }
    let labels = elems.iter().map(|&e| m.label(e)).collect();
    let sub = FiniteMonoid::from_flat(k, table, pos[m.identity()])?.with_labels(labels)?;
    let emb = MonoidMap::homomorphism(&sub, m, elems)?;
    Ok((sub, emb))
}

/// Relabels `m` along the permutation `perm` (old index `x` becomes
/// `perm[x]`).
pub fn permute(m: &FiniteMonoid, perm: &[usize]) -> Result<FiniteMonoid> {
    let n = m.len();
    if perm.len() != n {
        return Err(Error::Shape("permutation length mismatch".into()));
    }
    let mut inv = vec![usize::MAX; n];
    for (x, &p) in perm.iter().enumerate() {
        if p >= n || inv[p] != usize::MAX {
            return Err(Error::Shape("not a permutation".into()));
        }
        inv[p] = x;
    }
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(perm[m.mul(inv[a], inv[b])]);
        }
    }
    let out = FiniteMonoid::from_flat(n, table, perm[m.identity()])?;
    match m.labels() {
        Some(l) => out.with_labels((0..n).map(|a| l[inv[a]].clone()).collect()),
        None => Ok(out),
    }
}
