//! Named test instances and exhaustive enumeration of small semilattices,
//! groups, almost actions, gluing maps and inverse monoids.

use std::collections::BTreeMap;

use crate::constructions::{f_product, factor_system_from_almost_action, AlmostAction, FactorSystem, GluingMap};
use crate::error::{Error, Result};
use crate::inverse::{InverseMonoid, SemilatticeMonoid};
use crate::iso::{brute_force_iso, invariant_signature, Profile};
use crate::monoid::{direct_product, generated_submonoid, FiniteMonoid};

/// Default search budget for enumerations.
pub const DEFAULT_BUDGET: u64 = 10_000_000;
/// Largest semilattice size accepted by [`enumerate_semilattices`].
pub const SEMILATTICE_BOUND: usize = 6;
/// Largest size accepted by [`enumerate_inverse_monoids`].
pub const INVERSE_MONOID_BOUND: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Monoid,
    Group,
    Semilattice,
    AlmostAction,
    GluingMap,
    FactorSystem,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Monoid => "monoid",
            Kind::Group => "group",
            Kind::Semilattice => "semilattice",
            Kind::AlmostAction => "almost-action",
            Kind::GluingMap => "gluing-map",
            Kind::FactorSystem => "factor-system",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Monoid(FiniteMonoid),
    AlmostAction(AlmostAction),
    GluingMap(GluingMap),
    FactorSystem(FactorSystem),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusInstance {
    pub name: String,
    pub kind: Kind,
    pub payload: Payload,
    /// Pinned predicate verdicts, keyed by report field name.
    pub expected: BTreeMap<String, bool>,
}

impl CorpusInstance {
    fn monoid(name: &str, kind: Kind, m: FiniteMonoid, expected: &[(&str, bool)]) -> Self {
        CorpusInstance {
            name: name.into(),
            kind,
            payload: Payload::Monoid(m),
            expected: expected.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        }
    }

    pub fn as_monoid(&self) -> Option<&FiniteMonoid> {
        match &self.payload {
            Payload::Monoid(m) => Some(m),
            _ => None,
        }
    }
}

fn labelled(rows: Vec<Vec<usize>>, labels: &[&str]) -> FiniteMonoid {
    FiniteMonoid::new(rows, 0)
        .and_then(|m| m.with_labels(labels.iter().map(|s| s.to_string()).collect()))
        .expect("builtin table is a monoid")
}

pub fn cyclic_group(n: usize) -> FiniteMonoid {
    let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let labels: Vec<String> = (0..n).map(|i| if i == 0 { "1".into() } else { format!("g{i}") }).collect();
    FiniteMonoid::new(rows, 0).and_then(|m| m.with_labels(labels)).expect("cyclic group")
}

pub fn klein_four() -> FiniteMonoid {
    let rows = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
    labelled(rows, &["1", "a", "b", "c"])
}

/// Permutations of three points, identity first, composed right to left.
pub fn symmetric_group_3() -> FiniteMonoid {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
    let rows = perms
        .iter()
        .map(|p| perms.iter().map(|q| index([p[q[0]], p[q[1]], p[q[2]]])).collect())
        .collect();
    labelled(rows, &["()", "(12)", "(01)", "(012)", "(021)", "(02)"])
}

/// The `n`-element chain `1 > e1 > … > e(n-1)`.
pub fn chain(n: usize) -> SemilatticeMonoid {
    let rows = (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect();
    let labels: Vec<String> = (0..n).map(|i| if i == 0 { "1".into() } else { format!("e{i}") }).collect();
    let m = FiniteMonoid::new(rows, 0).and_then(|m| m.with_labels(labels)).expect("chain");
    SemilatticeMonoid::new(m).expect("chain is a semilattice")
}

/// `{1, a, b, 0}` with `a ∧ b = 0`.
pub fn diamond() -> SemilatticeMonoid {
    let rows = vec![vec![0, 1, 2, 3], vec![1, 1, 3, 3], vec![2, 3, 2, 3], vec![3, 3, 3, 3]];
    SemilatticeMonoid::new(labelled(rows, &["1", "a", "b", "0"])).expect("diamond")
}

/// `{1, e, t}` where `{e, t}` is a copy of Z2 with identity `e`.
pub fn m3() -> FiniteMonoid {
    labelled(vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 1]], &["1", "e", "t"])
}

/// The five-element Brandt semigroup `{a, b, ab, ba, 0}` with an identity
/// adjoined.
pub fn brandt_monoid() -> FiniteMonoid {
    // Matrix units e12 = a, e21 = b, e11 = ab, e22 = ba.
    let units: [(usize, usize); 4] = [(0, 1), (1, 0), (0, 0), (1, 1)];
    let zero = 5;
    let mut rows = vec![vec![0; 6]; 6];
    for x in 0..6 {
        for y in 0..6 {
            rows[x][y] = match (x, y) {
                (0, y) => y,
                (x, 0) => x,
                (5, _) | (_, 5) => zero,
                (x, y) => {
                    let (i, j) = units[x - 1];
                    let (k, l) = units[y - 1];
                    if j == k {
                        1 + units.iter().position(|&u| u == (i, l)).unwrap()
                    } else {
                        zero
                    }
                }
            };
        }
    }
    labelled(rows, &["1", "a", "b", "ab", "ba", "0"])
}

/// The swap action of Z2 on the diamond, as an almost action (a genuine
/// action fixing the top).
pub fn diamond_swap_action() -> AlmostAction {
    let g = labelled(vec![vec![0, 1], vec![1, 0]], &["1", "g"]);
    AlmostAction::new(g, diamond(), vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]]).expect("swap is an action")
}

/// Seven-element submonoid of `D4 ⋊ Z2` generated by `(a,g)` and `(b,g)`:
/// E-unitary, not F-inverse, not Clifford.
pub fn m7() -> FiniteMonoid {
    let big = f_product(&diamond_swap_action()).expect("semidirect product");
    let ag = big.index_of(1, 1).unwrap();
    let bg = big.index_of(2, 1).unwrap();
    let (sub, _) = generated_submonoid(big.monoid.monoid(), &[ag, bg]).expect("submonoid");
    sub
}

fn z2_labelled() -> FiniteMonoid {
    labelled(vec![vec![0, 1], vec![1, 0]], &["1", "g"])
}

fn ch2_labelled() -> SemilatticeMonoid {
    SemilatticeMonoid::new(labelled(vec![vec![0, 1], vec![1, 1]], &["1", "e"])).unwrap()
}

/// Z2 acting on the 2-chain by collapsing everything to `e`.
pub fn collapsing_action() -> AlmostAction {
    AlmostAction::new(z2_labelled(), ch2_labelled(), vec![vec![0, 1], vec![1, 1]]).expect("almost action")
}

pub fn builtin_corpus() -> Vec<CorpusInstance> {
    let all = |v: bool| -> Vec<(&'static str, bool)> {
        vec![("inverse", true), ("e_unitary", v), ("f_inverse", v), ("clifford", v), ("weakly_schreier", v)]
    };
    let mut out = vec![
        CorpusInstance::monoid("T1", Kind::Group, cyclic_group(1), &all(true)),
        CorpusInstance::monoid("Z2", Kind::Group, cyclic_group(2), &all(true)),
        CorpusInstance::monoid("Z3", Kind::Group, cyclic_group(3), &all(true)),
        CorpusInstance::monoid("Z4", Kind::Group, cyclic_group(4), &all(true)),
        CorpusInstance::monoid("V4", Kind::Group, klein_four(), &all(true)),
        CorpusInstance::monoid("S3", Kind::Group, symmetric_group_3(), &all(true)),
        CorpusInstance::monoid("CH2", Kind::Semilattice, chain(2).monoid().clone(), &all(true)),
        CorpusInstance::monoid("CH3", Kind::Semilattice, chain(3).monoid().clone(), &all(true)),
        CorpusInstance::monoid("D4", Kind::Semilattice, diamond().monoid().clone(), &all(true)),
        CorpusInstance::monoid("M3", Kind::Monoid, m3(), &all(true)),
        CorpusInstance::monoid(
            "CH2xZ2",
            Kind::Monoid,
            direct_product(chain(2).monoid(), &cyclic_group(2)),
            &all(true),
        ),
        CorpusInstance::monoid(
            "Z2^0",
            Kind::Monoid,
            labelled(vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 0]], &["1", "0", "g"]),
            &[("inverse", true), ("e_unitary", false), ("clifford", true)],
        ),
        CorpusInstance::monoid(
            "B2^1",
            Kind::Monoid,
            brandt_monoid(),
            &[("inverse", true), ("e_unitary", false), ("clifford", false)],
        ),
        CorpusInstance::monoid(
            "M7",
            Kind::Monoid,
            m7(),
            &[
                ("inverse", true),
                ("e_unitary", true),
                ("f_inverse", false),
                ("clifford", false),
                ("weakly_schreier", false),
            ],
        ),
        CorpusInstance::monoid(
            "D4xZ2-swap",
            Kind::Monoid,
            f_product(&diamond_swap_action()).unwrap().monoid.into_monoid(),
            &[
                ("inverse", true),
                ("e_unitary", true),
                ("f_inverse", true),
                ("clifford", false),
                ("weakly_schreier", true),
            ],
        ),
    ];
    let aa = collapsing_action();
    out.push(CorpusInstance {
        name: "Z2-on-CH2-collapse-fs".into(),
        kind: Kind::FactorSystem,
        payload: Payload::FactorSystem(factor_system_from_almost_action(&aa).expect("factor system")),
        expected: BTreeMap::new(),
    });
    out.push(CorpusInstance {
        name: "Z2-on-CH2-collapse".into(),
        kind: Kind::AlmostAction,
        payload: Payload::AlmostAction(aa),
        expected: BTreeMap::new(),
    });
    out.push(CorpusInstance {
        name: "Z2-CH2-gluing".into(),
        kind: Kind::GluingMap,
        payload: Payload::GluingMap(GluingMap::new(z2_labelled(), ch2_labelled(), vec![0, 1]).expect("gluing map")),
        expected: BTreeMap::new(),
    });
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

/// Z1 to Z6, the Klein four-group and S3, by name.
pub fn small_groups() -> Vec<(String, FiniteMonoid)> {
    let mut out: Vec<(String, FiniteMonoid)> = (1..=6).map(|n| (format!("Z{n}"), cyclic_group(n))).collect();
    out.push(("V4".into(), klein_four()));
    out.push(("S3".into(), symmetric_group_3()));
    out
}

pub fn group_by_name(name: &str) -> Option<FiniteMonoid> {
    small_groups().into_iter().find(|(n, _)| n == name).map(|(_, g)| g)
}

const UNSET: usize = usize::MAX;

/// Backtracking over partially filled Cayley tables, with an associativity
/// check against every fully defined triple touching the last cell.
struct TableSearch {
    n: usize,
    table: Vec<usize>,
    cells: Vec<(usize, usize)>,
    values: Vec<usize>,
    symmetric: bool,
}

impl TableSearch {
    #[inline]
    fn get(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    fn consistent(&self, x: usize, y: usize) -> bool {
        let n = self.n;
        let v = self.get(x, y);
        for c in 0..n {
            // (x y) c = x (y c)
            let vc = self.get(v, c);
            let yc = self.get(y, c);
            if vc != UNSET && yc != UNSET {
                let rhs = self.get(x, yc);
                if rhs != UNSET && rhs != vc {
                    return false;
                }
            }
            // (c x) y = c (x y)
            let cx = self.get(c, x);
            let cv = self.get(c, v);
            if cx != UNSET && cv != UNSET {
                let lhs = self.get(cx, y);
                if lhs != UNSET && lhs != cv {
                    return false;
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                // (a b) y = a (b y) with a b = x
                if self.get(a, b) == x {
                    let by = self.get(b, y);
                    if by != UNSET {
                        let rhs = self.get(a, by);
                        if rhs != UNSET && rhs != v {
                            return false;
                        }
                    }
                }
                // (x a) b = x (a b) with a b = y
                if self.get(a, b) == y {
                    let xa = self.get(x, a);
                    if xa != UNSET {
                        let lhs = self.get(xa, b);
                        if lhs != UNSET && lhs != v {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn set(&mut self, x: usize, y: usize, v: usize) {
        self.table[x * self.n + y] = v;
        if self.symmetric {
            self.table[y * self.n + x] = v;
        }
    }

    fn run(&mut self, depth: usize, emit: &mut dyn FnMut(&[usize])) {
        if depth == self.cells.len() {
            emit(&self.table);
            return;
        }
        let (x, y) = self.cells[depth];
        for i in 0..self.values.len() {
            let v = self.values[i];
            self.set(x, y, v);
            if self.consistent(x, y) && (!self.symmetric || self.consistent(y, x)) {
                self.run(depth + 1, emit);
            }
        }
        self.set(x, y, UNSET);
    }
}

/// Keeps one representative per isomorphism class, in order of arrival.
#[derive(Default)]
struct Dedup {
    found: Vec<(Vec<Profile>, FiniteMonoid)>,
}

impl Dedup {
    fn insert(&mut self, m: FiniteMonoid) -> bool {
        let sig = invariant_signature(&m);
        let limit = m.len();
        let duplicate = self.found.iter().any(|(s, other)| {
            *s == sig
                && brute_force_iso(&m, other, limit)
                    .expect("sizes within limit")
                    .is_some()
        });
        if !duplicate {
            self.found.push((sig, m));
        }
        !duplicate
    }
}

fn semilattices_of_size(n: usize) -> Vec<SemilatticeMonoid> {
    let mut table = vec![UNSET; n * n];
    for x in 0..n {
        table[x] = x;
        table[x * n] = x;
        table[x * n + x] = x;
    }
    let cells = (1..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let mut search = TableSearch { n, table, cells, values: (1..n).collect(), symmetric: true };
    let mut dedup = Dedup::default();
    search.run(0, &mut |t| {
        let m = FiniteMonoid::from_flat(n, t.to_vec(), 0).expect("associative by construction");
        dedup.insert(m);
    });
    dedup
        .found
        .into_iter()
        .map(|(_, m)| {
            let labels = (0..n).map(|i| if i == 0 { "1".to_string() } else { format!("y{i}") }).collect();
            SemilatticeMonoid::new(m.with_labels(labels).unwrap()).expect("semilattice by construction")
        })
        .collect()
}

/// All semilattices with identity of size `1..=max_n`, up to isomorphism,
/// ordered by size and then by discovery order.
pub fn enumerate_semilattices(max_n: usize) -> Result<Vec<SemilatticeMonoid>> {
    if max_n > SEMILATTICE_BOUND {
        return Err(Error::BoundExceeded { requested: max_n, max: SEMILATTICE_BOUND });
    }
    Ok((1..=max_n).flat_map(semilattices_of_size).collect())
}

/// Inverse monoids of exactly `n` elements up to isomorphism. No size bound
/// is applied; beyond `n = 6` this is slow.
pub fn inverse_monoids_of_size(n: usize) -> Vec<InverseMonoid> {
    if n == 1 {
        return vec![InverseMonoid::new(cyclic_group(1).without_labels()).unwrap()];
    }
    let mut table = vec![UNSET; n * n];
    for x in 0..n {
        table[x] = x;
        table[x * n] = x;
    }
    let cells = (1..n).flat_map(|i| (1..n).map(move |j| (i, j))).collect();
    let mut search = TableSearch { n, table, cells, values: (0..n).collect(), symmetric: false };
    let mut dedup = Dedup::default();
    search.run(0, &mut |t| {
        let m = FiniteMonoid::from_flat(n, t.to_vec(), 0).expect("associative by construction");
        if let Ok(inv) = InverseMonoid::new(m) {
            dedup.insert(inv.into_monoid());
        }
    });
    dedup
        .found
        .into_iter()
        .map(|(_, m)| InverseMonoid::new(m).unwrap())
        .collect()
}

/// All inverse monoids of size `1..=max_n` up to isomorphism.
pub fn enumerate_inverse_monoids(max_n: usize) -> Result<Vec<InverseMonoid>> {
    if max_n > INVERSE_MONOID_BOUND {
        return Err(Error::BoundExceeded { requested: max_n, max: INVERSE_MONOID_BOUND });
    }
    Ok((1..=max_n).flat_map(inverse_monoids_of_size).collect())
}

/// Maps `Y → Y` preserving meets, in lexicographic order.
fn meet_preserving_maps(y: &SemilatticeMonoid) -> Vec<Vec<usize>> {
    let n = y.len();
    let mut out = Vec::new();
    let mut map = vec![0; n];
    loop {
        let ok = (0..n).all(|a| (0..n).all(|b| map[y.meet(a, b)] == y.meet(map[a], map[b])));
        if ok {
            out.push(map.clone());
        }
        // odometer, last position fastest
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            map[i] += 1;
            if map[i] < n {
                break;
            }
            map[i] = 0;
        }
    }
}

/// All almost actions of `g` on `y`, in lexicographic order of the action
/// table.
///
/// Rows other than the identity row range over the meet-preserving maps of
/// `y`; the product of those row counts is the search space charged
/// against `budget`.
pub fn enumerate_almost_actions(g: &FiniteMonoid, y: &SemilatticeMonoid, budget: u64) -> Result<Vec<AlmostAction>> {
    g.require_group()?;
    let rows = meet_preserving_maps(y);
    let others: Vec<usize> = g.elements().filter(|&x| x != g.identity()).collect();
    let space = (rows.len() as u128).pow(others.len() as u32);
    if space > budget as u128 {
        return Err(Error::BudgetExceeded { space, budget });
    }
    let ny = y.len();
    let mut assigned: Vec<Option<usize>> = vec![None; g.len()];
    let identity_row: Vec<usize> = y.elements().collect();
    let id_row_idx = rows.iter().position(|r| *r == identity_row).expect("identity preserves meets");
    assigned[g.identity()] = Some(id_row_idx);
    let top = y.top();

    fn a3_ok(
        g: &FiniteMonoid,
        y: &SemilatticeMonoid,
        rows: &[Vec<usize>],
        assigned: &[Option<usize>],
        last: usize,
        top: usize,
    ) -> bool {
        for a in g.elements() {
            for b in g.elements() {
                let ab = g.mul(a, b);
                if a != last && b != last && ab != last {
                    continue;
                }
                let (Some(ra), Some(rb), Some(rab)) = (assigned[a], assigned[b], assigned[ab]) else {
                    continue;
                };
                let (ra, rb, rab) = (&rows[ra], &rows[rb], &rows[rab]);
                for v in y.elements() {
                    if ra[rb[v]] != y.meet(rab[v], ra[top]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    let mut out = Vec::new();
    let mut stack = vec![0usize; others.len()];
    let mut depth = 0;
    if others.is_empty() {
        out.push(AlmostAction::new(g.clone(), y.clone(), vec![identity_row])?);
        return Ok(out);
    }
    loop {
        if stack[depth] == rows.len() {
            assigned[others[depth]] = None;
            stack[depth] = 0;
            if depth == 0 {
                break;
            }
            depth -= 1;
            stack[depth] += 1;
            continue;
        }
        let gi = others[depth];
        assigned[gi] = Some(stack[depth]);
        if a3_ok(g, y, &rows, &assigned, gi, top) {
            if depth + 1 == others.len() {
                let dot: Vec<Vec<usize>> = g.elements().map(|x| rows[assigned[x].unwrap()].clone()).collect();
                debug_assert!(dot.iter().all(|r| r.len() == ny));
                out.push(AlmostAction::new(g.clone(), y.clone(), dot)?);
                stack[depth] += 1;
            } else {
                depth += 1;
            }
        } else {
            stack[depth] += 1;
        }
    }
    Ok(out)
}

/// All gluing maps `g → y` (with `f(1) = ⊤`), in lexicographic order.
pub fn enumerate_gluing_maps(g: &FiniteMonoid, y: &SemilatticeMonoid, budget: u64) -> Result<Vec<GluingMap>> {
    g.require_group()?;
    let others: Vec<usize> = g.elements().filter(|&x| x != g.identity()).collect();
    let space = (y.len() as u128).pow(others.len() as u32);
    if space > budget as u128 {
        return Err(Error::BudgetExceeded { space, budget });
    }
    let mut f = vec![y.top(); g.len()];
    let mut out = Vec::new();
    let mut odometer = vec![0usize; others.len()];
    loop {
        for (slot, &x) in odometer.iter().zip(&others) {
            f[x] = *slot;
        }
        if let Ok(gm) = GluingMap::new(g.clone(), y.clone(), f.clone()) {
            out.push(gm);
        }
        let mut i = others.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            odometer[i] += 1;
            if odometer[i] < y.len() {
                break;
            }
            odometer[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inverse::{is_clifford, is_e_unitary, is_f_inverse};

    #[test]
    fn builtin_instances_validate() {
        for inst in builtin_corpus() {
            if let Some(m) = inst.as_monoid() {
                let inv = InverseMonoid::new(m.clone());
                assert_eq!(inv.is_ok(), inst.expected["inverse"], "{}", inst.name);
            }
        }
    }

    #[test]
    fn brandt_is_not_e_unitary() {
        let b = InverseMonoid::new(brandt_monoid()).unwrap();
        assert_eq!(b.inv(1), 2);
        let w = is_e_unitary(&b).unwrap_err();
        assert_eq!(w.x, 1);
        assert!(b.is_idempotent(w.e) && b.is_idempotent(b.mul(w.x, w.e)));
        // a·0 = 0 is idempotent, a is not
        assert!(b.is_idempotent(b.mul(1, 5)) && !b.is_idempotent(1));
    }

    #[test]
    fn m7_structure() {
        let m = InverseMonoid::new(m7()).unwrap();
        assert_eq!(m.len(), 7);
        let labels: Vec<String> = m.elements().map(|x| m.monoid().label(x)).collect();
        let idx = |l: &str| labels.iter().position(|x| x == l).unwrap();
        assert_eq!(m.inv(idx("(a,g)")), idx("(b,g)"));
        assert!(is_e_unitary(&m).is_ok());
        let w = is_f_inverse(&m).unwrap_err();
        let mut maximal: Vec<&str> = w.maximal.iter().map(|&x| labels[x].as_str()).collect();
        maximal.sort();
        assert_eq!(maximal, vec!["(a,g)", "(b,g)"]);
        let members: Vec<&str> = w.members.iter().map(|&x| labels[x].as_str()).collect();
        assert_eq!(members.len(), 3);
        assert!(members.contains(&"(0,g)"));
        let c = is_clifford(&m).unwrap_err();
        assert_eq!(labels[c.idempotent], "(a,1)");
        assert_eq!(labels[c.element], "(a,g)");
    }

    #[test]
    fn s3_is_nonabelian() {
        let s3 = symmetric_group_3();
        assert!(s3.is_group());
        assert!(s3.commutativity_failure().is_some());
        assert_eq!(klein_four().elements().filter(|&x| x != 0 && klein_four().mul(x, x) == 0).count(), 3);
    }

    #[test]
    fn small_semilattice_counts() {
        assert_eq!(enumerate_semilattices(1).unwrap().len(), 1);
        assert_eq!(enumerate_semilattices(2).unwrap().len(), 2);
        let four: Vec<_> = semilattices_of_size(4);
        assert_eq!(four.len(), 2);
        assert!(four.iter().any(|y| brute_force_iso(y.monoid(), diamond().monoid(), 4).unwrap().is_some()));
        assert!(four.iter().any(|y| brute_force_iso(y.monoid(), chain(4).monoid(), 4).unwrap().is_some()));
        assert!(matches!(enumerate_semilattices(7), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn small_inverse_monoid_counts() {
        assert_eq!(enumerate_inverse_monoids(1).unwrap().len(), 1);
        assert_eq!(enumerate_inverse_monoids(2).unwrap().len(), 3);
        let two = inverse_monoids_of_size(2);
        assert_eq!(two.len(), 2);
        assert!(two.iter().any(|m| m.monoid().is_group()));
        assert!(two.iter().any(|m| SemilatticeMonoid::new(m.monoid().clone()).is_ok()));
        for m in enumerate_inverse_monoids(4).unwrap() {
            let idems = m.idempotents();
            assert!(idems.iter().all(|&e| idems.iter().all(|&f| m.mul(e, f) == m.mul(f, e))));
        }
        assert!(matches!(enumerate_inverse_monoids(6), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn almost_actions_z1_and_z2() {
        let y = chain(2);
        assert_eq!(enumerate_almost_actions(&cyclic_group(1), &y, DEFAULT_BUDGET).unwrap().len(), 1);
        let all = enumerate_almost_actions(&cyclic_group(2), &y, DEFAULT_BUDGET).unwrap();
        let tables: Vec<_> = all.iter().map(|a| a.dot_rows()).collect();
        assert!(tables.contains(&vec![vec![0, 1], vec![0, 1]]));
        assert!(tables.contains(&vec![vec![0, 1], vec![1, 1]]));
    }

    #[test]
    fn gluing_maps_small() {
        assert_eq!(enumerate_gluing_maps(&cyclic_group(1), &chain(2), DEFAULT_BUDGET).unwrap().len(), 1);
        let z2 = enumerate_gluing_maps(&cyclic_group(2), &chain(2), DEFAULT_BUDGET).unwrap();
        let fs: Vec<_> = z2.iter().map(|g| g.values().to_vec()).collect();
        assert_eq!(fs, vec![vec![0, 0], vec![0, 1]]);
        let s3 = enumerate_gluing_maps(&symmetric_group_3(), &chain(2), DEFAULT_BUDGET).unwrap();
        assert!(s3.iter().any(|g| g.values() == [0, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            enumerate_gluing_maps(&cyclic_group(6), &chain(4), 100),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
