//! The acceptance run: eight criteria checked over the builtin corpus, all
//! inverse monoids of size at most 4, and every almost action and gluing
//! map of `Z2`, `Z3`, `Z4`, `V4` on semilattices of size at most 4.

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{
    clifford_reconstruction, crossed_product, f_product, factor_system_from_almost_action,
    factor_system_from_extension, gluing, gluing_map_from_clifford, iso_f_product_crossed, AlmostAction, GluingMap,
};
use crate::corpus::{
    builtin_corpus, cyclic_group, enumerate_almost_actions, enumerate_gluing_maps, enumerate_inverse_monoids,
    enumerate_semilattices, klein_four, Payload,
};
use crate::error::{Error, Result};
use crate::extension::{build_canonical_extension, is_weakly_schreier, weakly_schreier_iff_f_inverse};
use crate::inverse::{is_clifford, is_e_unitary, is_f_inverse, min_group_congruence, InverseMonoid};
use crate::iso::brute_force_iso;
use crate::report::{to_sorted_json, SCHEMA};

/// Isomorphism search bound used by the suite; `F(Y,G)` outputs on the
/// grid reach 16 elements.
pub const SUITE_MAX_ISO_N: usize = 16;
/// Largest monoid handed to the exhaustive congruence oracle.
pub const SIGMA_ORACLE_MAX_N: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub budget: u64,
    pub max_iso_n: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { budget: crate::corpus::DEFAULT_BUDGET, max_iso_n: SUITE_MAX_ISO_N }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub pass: bool,
    pub cases: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub inverse_monoids: usize,
    pub e_unitary: usize,
    pub not_e_unitary: Vec<String>,
    pub e_unitary_not_f_inverse: Vec<String>,
    pub almost_actions: usize,
    pub gluing_maps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub corpus: CorpusSummary,
    pub criteria: Vec<CriterionResult>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        to_sorted_json(self)
    }

    /// One `PASS`/`FAIL` line per criterion, followed by failure details.
    pub fn to_human(&self) -> String {
        let mut out = String::new();
        for c in &self.criteria {
            out.push_str(&format!(
                "[{}] criterion {}: {} ({} cases)\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.name,
                c.cases
            ));
            for f in &c.failures {
                out.push_str(&format!("    {f}\n"));
            }
        }
        out.push_str(&format!("suite: {}\n", if self.pass { "PASS" } else { "FAIL" }));
        out
    }
}

pub struct SuiteCorpus {
    pub monoids: Vec<(String, InverseMonoid)>,
    pub actions: Vec<(String, AlmostAction)>,
    pub gluings: Vec<(String, GluingMap)>,
}

/// Builds the corpus in a fixed order. Constructions that fail here are
/// left out of `monoids` and reported by criteria 3 and 4.
pub fn suite_corpus(budget: u64) -> Result<SuiteCorpus> {
    let mut monoids = Vec::new();
    let mut actions = Vec::new();
    let mut gluings = Vec::new();
    for inst in builtin_corpus() {
        match inst.payload {
            Payload::Monoid(m) => monoids.push((inst.name, InverseMonoid::new(m)?)),
            Payload::AlmostAction(aa) => actions.push((inst.name, aa)),
            Payload::GluingMap(gm) => gluings.push((inst.name, gm)),
            Payload::FactorSystem(fs) => {
                let cp = crossed_product(&fs)?;
                monoids.push((inst.name, InverseMonoid::new(cp.monoid)?));
            }
        }
    }
    let mut rank = [0usize; 5];
    for m in enumerate_inverse_monoids(4)? {
        let n = m.len();
        monoids.push((format!("inv{n}.{}", rank[n]), m));
        rank[n] += 1;
    }
    let groups = [
        ("Z2", cyclic_group(2)),
        ("Z3", cyclic_group(3)),
        ("Z4", cyclic_group(4)),
        ("V4", klein_four()),
    ];
    let semilattices = enumerate_semilattices(4)?;
    let mut ynames = Vec::new();
    for (i, y) in semilattices.iter().enumerate() {
        let rank = semilattices[..i].iter().filter(|z| z.len() == y.len()).count();
        ynames.push(format!("Y{}.{rank}", y.len()));
    }
    for (gname, g) in &groups {
        for (y, yname) in semilattices.iter().zip(&ynames) {
            for (j, aa) in enumerate_almost_actions(g, y, budget)?.into_iter().enumerate() {
                actions.push((format!("{gname}/{yname}/aa{j}"), aa));
            }
            for (j, gm) in enumerate_gluing_maps(g, y, budget)?.into_iter().enumerate() {
                gluings.push((format!("{gname}/{yname}/gl{j}"), gm));
            }
        }
    }
    for (name, aa) in &actions {
        if let Ok(f) = f_product(aa) {
            monoids.push((format!("F:{name}"), f.monoid));
        }
    }
    for (name, gm) in &gluings {
        if let Ok(gl) = gluing(gm) {
            monoids.push((format!("Gl:{name}"), gl.monoid));
        }
    }
    Ok(SuiteCorpus { monoids, actions, gluings })
}

fn criterion(id: u8, name: &str, cases: usize, failures: Vec<String>) -> CriterionResult {
    CriterionResult { id, name: name.into(), pass: failures.is_empty(), cases, failures }
}

fn collect<T: Sync>(items: &[(String, T)], check: impl Fn(&T) -> Result<(), String> + Sync) -> Vec<String> {
    items
        .par_iter()
        .map(|(name, x)| check(x).err().map(|e| format!("{name}: {e}")))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn check_extension_iff_e_unitary(m: &InverseMonoid) -> Result<(), String> {
    let ext = build_canonical_extension(m);
    if let Err(e) = &ext {
        if !matches!(e, Error::KernelMismatch(_)) {
            return Err(format!("unexpected extension error: {e}"));
        }
    }
    let eu = is_e_unitary(m).is_ok();
    if ext.is_ok() != eu {
        return Err(format!("extension exists = {}, E-unitary = {eu}", ext.is_ok()));
    }
    Ok(())
}

fn check_main_theorem(m: &InverseMonoid) -> Result<(), String> {
    let r = weakly_schreier_iff_f_inverse(m).map_err(|e| e.to_string())?;
    if r.f_inverse && r.splitting_is_max_selector != Some(true) {
        return Err("splitting is not the greatest-element selector".into());
    }
    Ok(())
}

fn check_action(aa: &AlmostAction, max_iso_n: usize) -> Result<(), String> {
    factor_system_from_almost_action(aa).map_err(|e| format!("factor system: {e}"))?;
    iso_f_product_crossed(aa, max_iso_n).map_err(|e| format!("F(Y,G) vs crossed product: {e}"))?;
    Ok(())
}

fn check_gluing(gm: &GluingMap, max_iso_n: usize) -> Result<(), String> {
    let gl = gluing(gm).map_err(|e| e.to_string())?;
    let m = &gl.monoid;
    is_f_inverse(m).map_err(|w| format!("Gl(f) not F-inverse: {w}"))?;
    is_clifford(m).map_err(|w| format!("Gl(f) not Clifford: {w}"))?;
    let cg = gluing_map_from_clifford(m).map_err(|e| e.to_string())?;
    let one = gm.group().identity();
    for g in gm.group().elements() {
        let fg = gm.apply(g);
        let class = cg.selector.sigma.class_of(gl.index_of(fg, g).expect("(f(g),g) ∈ Gl(f)"));
        let recovered = cg.k.apply(cg.map.apply(class));
        if Some(recovered) != gl.index_of(fg, one) {
            return Err(format!("recovered f differs at g={g}"));
        }
    }
    clifford_reconstruction(m, max_iso_n).map_err(|e| format!("reconstruction: {e}"))?;
    Ok(())
}

fn check_commutative(gm: &GluingMap) -> Result<(), String> {
    let gl = gluing(gm).map_err(|e| e.to_string())?;
    match gl.monoid.monoid().commutativity_failure() {
        Some((x, y)) => Err(format!("elements {x} and {y} do not commute")),
        None => Ok(()),
    }
}

/// Calls `visit` on every set partition of `0..n` as a restricted growth
/// string.
fn for_each_partition(n: usize, visit: &mut dyn FnMut(&[usize])) {
    fn go(labels: &mut Vec<usize>, n: usize, next: usize, visit: &mut dyn FnMut(&[usize])) {
        if labels.len() == n {
            visit(labels);
            return;
        }
        for c in 0..=next {
            labels.push(c);
            go(labels, n, next.max(c + 1), visit);
            labels.pop();
        }
    }
    go(&mut Vec::with_capacity(n), n, 0, visit);
}

/// Intersection of every congruence with a group quotient, found by
/// scanning all partitions; `related[a * n + b]`.
pub fn sigma_oracle(m: &InverseMonoid) -> Vec<bool> {
    let n = m.len();
    let mut related = vec![true; n * n];
    for_each_partition(n, &mut |p| {
        let compatible = (0..n).all(|a| {
            (0..n).all(|b| {
                p[a] != p[b] || (0..n).all(|c| p[m.mul(c, a)] == p[m.mul(c, b)] && p[m.mul(a, c)] == p[m.mul(b, c)])
            })
        });
        if !compatible {
            return;
        }
        // A finite monoid quotient is a group iff every class has a right inverse class.
        let one = p[m.identity()];
        let group = (0..n).all(|a| (0..n).any(|b| p[m.mul(a, b)] == one));
        if !group {
            return;
        }
        for a in 0..n {
            for b in 0..n {
                if p[a] != p[b] {
                    related[a * n + b] = false;
                }
            }
        }
    });
    related
}

fn check_sigma(m: &InverseMonoid) -> Result<(), String> {
    let sigma = min_group_congruence(m).map_err(|e| e.to_string())?;
    let oracle = sigma_oracle(m);
    let n = m.len();
    for a in 0..n {
        for b in 0..n {
            if oracle[a * n + b] != sigma.related(a, b) {
                return Err(format!("sigma and the oracle disagree on ({a},{b})"));
            }
        }
    }
    Ok(())
}

fn check_extraction(m: &InverseMonoid, max_iso_n: usize) -> Result<(), String> {
    let ext = build_canonical_extension(m).map_err(|e| e.to_string())?;
    let split = is_weakly_schreier(&ext).map_err(|e| e.to_string())?;
    let (fs, _) = factor_system_from_extension(&ext, &split, max_iso_n).map_err(|e| e.to_string())?;
    let cp = crossed_product(&fs).map_err(|e| e.to_string())?;
    match brute_force_iso(&cp.monoid, m.monoid(), max_iso_n) {
        Ok(Some(_)) => Ok(()),
        Ok(None) => Err("crossed product is not isomorphic to M".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// Criteria 1 to 7 over a prebuilt corpus.
pub fn evaluate(corpus: &SuiteCorpus, cfg: SuiteConfig) -> (CorpusSummary, Vec<CriterionResult>) {
    let n_iso = cfg.max_iso_n;
    let not_e_unitary: Vec<String> = corpus
        .monoids
        .iter()
        .filter(|(_, m)| is_e_unitary(m).is_err())
        .map(|(n, _)| n.clone())
        .collect();
    let e_unitary: Vec<(String, InverseMonoid)> =
        corpus.monoids.iter().filter(|(_, m)| is_e_unitary(m).is_ok()).cloned().collect();
    let not_f: Vec<String> =
        e_unitary.iter().filter(|(_, m)| is_f_inverse(m).is_err()).map(|(n, _)| n.clone()).collect();

    let mut out = Vec::new();

    let mut f1 = collect(&corpus.monoids, check_extension_iff_e_unitary);
    if !not_e_unitary.iter().any(|n| n == "B2^1") {
        f1.push("B2^1 is missing from the negative cases".into());
    }
    out.push(criterion(1, "canonical extension exists iff E-unitary", corpus.monoids.len(), f1));

    let mut f2 = collect(&e_unitary, check_main_theorem);
    if !not_f.iter().any(|n| n == "M7") {
        f2.push("M7 is missing from the E-unitary non-F-inverse cases".into());
    }
    out.push(criterion(2, "weakly Schreier iff F-inverse, splitting = greatest elements", e_unitary.len(), f2));

    let f3 = collect(&corpus.actions, |aa| check_action(aa, n_iso));
    out.push(criterion(3, "almost actions: factor system valid, F(Y,G) iso crossed product", corpus.actions.len(), f3));

    let f4 = collect(&corpus.gluings, |gm| check_gluing(gm, n_iso));
    out.push(criterion(4, "gluing maps: Gl(f) F-inverse Clifford, f recovered, round trip", corpus.gluings.len(), f4));

    let abelian: Vec<(String, GluingMap)> =
        corpus.gluings.iter().filter(|(_, gm)| gm.group().is_commutative()).cloned().collect();
    let f5 = collect(&abelian, check_commutative);
    out.push(criterion(5, "Gl(f) over an abelian group is commutative", abelian.len(), f5));

    let small: Vec<(String, InverseMonoid)> =
        corpus.monoids.iter().filter(|(_, m)| m.len() <= SIGMA_ORACLE_MAX_N).cloned().collect();
    let f6 = collect(&small, check_sigma);
    out.push(criterion(6, "sigma equals the intersection of all group congruences", small.len(), f6));

    let ws: Vec<(String, InverseMonoid)> = corpus
        .monoids
        .iter()
        .filter(|(_, m)| build_canonical_extension(m).is_ok_and(|ext| is_weakly_schreier(&ext).is_ok()))
        .cloned()
        .collect();
    let f7 = collect(&ws, |m| check_extraction(m, n_iso));
    out.push(criterion(7, "factor system from a weakly Schreier extension rebuilds M", ws.len(), f7));

    let summary = CorpusSummary {
        inverse_monoids: corpus.monoids.len(),
        e_unitary: e_unitary.len(),
        not_e_unitary,
        e_unitary_not_f_inverse: not_f,
        almost_actions: corpus.actions.len(),
        gluing_maps: corpus.gluings.len(),
    };
    (summary, out)
}

/// Builds the corpus, evaluates criteria 1 to 7, then repeats the whole run
/// and requires byte-identical JSON for criterion 8.
pub fn run_suite(cfg: SuiteConfig) -> Result<SuiteReport> {
    let first = {
        let corpus = suite_corpus(cfg.budget)?;
        evaluate(&corpus, cfg)
    };
    let second = {
        let corpus = suite_corpus(cfg.budget)?;
        evaluate(&corpus, cfg)
    };
    let bytes = |r: &(CorpusSummary, Vec<CriterionResult>)| to_sorted_json(r);
    let same = bytes(&first) == bytes(&second);
    let (corpus, mut criteria) = first;
    criteria.push(criterion(
        8,
        "two consecutive runs produce byte-identical JSON",
        2,
        if same { Vec::new() } else { vec!["outputs differ".into()] },
    ));
    let pass = criteria.iter().all(|c| c.pass);
    Ok(SuiteReport { schema: SCHEMA, corpus, criteria, pass })
}
