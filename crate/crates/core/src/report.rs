//! Analysis reports for a single monoid, in a tabular human form and a
//! sorted-key JSON form.
//!
//! JSON schema 1:
//!
//! | key | value |
//! |-----|-------|
//! | `schema` | `1` |
//! | `name`, `size`, `labels` | instance name, element count, element labels |
//! | `verdicts.<p>` | `{"holds": bool, "witness": null \| {"description", "elements"}}` for `inverse`, `e_unitary`, `f_inverse`, `clifford`, `weakly_schreier`; the last four are `null` when the monoid is not inverse |
//! | `idempotents` | indices of `E(M)` |
//! | `sigma_classes` | σ-classes as index lists |
//! | `natural_order` | strict pairs `[x, y]` with `x < y` |
//! | `max_selector` | greatest element of each σ-class, when F-inverse |
//! | `gluing_map` | `f(g)` as an element of `M` per σ-class, when F-inverse and Clifford |
//! | `maximal_reading_diverges` | some σ-class has two or more maximal elements |

use std::fmt::Write as _;

use serde::Serialize;

use crate::constructions::gluing_map_from_clifford;
use crate::error::{Error, Result};
use crate::extension::{build_canonical_extension, is_weakly_schreier, weakly_schreier_iff_f_inverse};
use crate::inverse::{is_clifford, is_e_unitary, is_f_inverse, min_group_congruence, natural_order, InverseMonoid};
use crate::monoid::FiniteMonoid;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub description: String,
    pub elements: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict { holds: true, witness: None }
    }

    fn fail(description: String, elements: Vec<usize>) -> Self {
        Verdict { holds: false, witness: Some(Witness { description, elements }) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub inverse: Verdict,
    pub e_unitary: Option<Verdict>,
    pub f_inverse: Option<Verdict>,
    pub clifford: Option<Verdict>,
    pub weakly_schreier: Option<Verdict>,
}

impl Verdicts {
    fn named(&self) -> [(&'static str, Option<&Verdict>); 5] {
        [
            ("inverse", Some(&self.inverse)),
            ("e_unitary", self.e_unitary.as_ref()),
            ("f_inverse", self.f_inverse.as_ref()),
            ("clifford", self.clifford.as_ref()),
            ("weakly_schreier", self.weakly_schreier.as_ref()),
        ]
    }

    /// The verdict stored under a JSON field name.
    pub fn get(&self, key: &str) -> Option<bool> {
        self.named().into_iter().find(|(k, _)| *k == key).and_then(|(_, v)| v.map(|v| v.holds))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub name: String,
    pub size: usize,
    pub labels: Vec<String>,
    pub verdicts: Verdicts,
    pub idempotents: Vec<usize>,
    pub sigma_classes: Option<Vec<Vec<usize>>>,
    pub natural_order: Option<Vec<(usize, usize)>>,
    pub max_selector: Option<Vec<usize>>,
    pub gluing_map: Option<Vec<usize>>,
    pub maximal_reading_diverges: Option<bool>,
}

impl AnalysisReport {
    /// True when every verdict is present and holds.
    pub fn all_hold(&self) -> bool {
        self.verdicts.named().iter().all(|(_, v)| v.is_some_and(|v| v.holds))
    }
}

fn names(m: &FiniteMonoid, xs: &[usize]) -> String {
    xs.iter().map(|&x| m.label(x)).collect::<Vec<_>>().join(", ")
}

/// Runs every predicate on `m`. Errors only on internal inconsistencies
/// (for instance the weakly Schreier and F-inverse verdicts disagreeing).
pub fn analyze(name: &str, m: &FiniteMonoid) -> Result<AnalysisReport> {
    let labels: Vec<String> = m.elements().map(|x| m.label(x)).collect();
    let mut report = AnalysisReport {
        schema: SCHEMA,
        name: name.to_string(),
        size: m.len(),
        labels,
        verdicts: Verdicts {
            inverse: Verdict::pass(),
            e_unitary: None,
            f_inverse: None,
            clifford: None,
            weakly_schreier: None,
        },
        idempotents: m.idempotents(),
        sigma_classes: None,
        natural_order: None,
        max_selector: None,
        gluing_map: None,
        maximal_reading_diverges: None,
    };
    let inv = match InverseMonoid::new(m.clone()) {
        Ok(inv) => inv,
        Err(e) => {
            let elements = match e {
                Error::NoInverse(x) => vec![x],
                Error::NonUniqueInverse(x, a, b) => vec![x, a, b],
                Error::IdempotentsDoNotCommute(e, f) => vec![e, f],
                other => return Err(other),
            };
            report.verdicts.inverse = Verdict::fail(format!("{e} [{}]", names(m, &elements)), elements);
            return Ok(report);
        }
    };

    let v = &mut report.verdicts;
    v.e_unitary = Some(match is_e_unitary(&inv) {
        Ok(()) => Verdict::pass(),
        Err(w) => Verdict::fail(
            format!("{} * {} is idempotent but {} is not", m.label(w.x), m.label(w.e), m.label(w.x)),
            vec![w.x, w.e],
        ),
    });
    let selector = is_f_inverse(&inv);
    v.f_inverse = Some(match &selector {
        Ok(_) => Verdict::pass(),
        Err(w) => Verdict::fail(
            format!(
                "sigma-class {{{}}} has incomparable maximal elements {}",
                names(m, &w.members),
                names(m, &w.maximal)
            ),
            w.maximal.clone(),
        ),
    });
    v.clifford = Some(match is_clifford(&inv) {
        Ok(()) => Verdict::pass(),
        Err(w) => Verdict::fail(
            format!("idempotent {} does not commute with {}", m.label(w.idempotent), m.label(w.element)),
            vec![w.idempotent, w.element],
        ),
    });
    v.weakly_schreier = Some(match build_canonical_extension(&inv) {
        Err(Error::KernelMismatch(x)) => Verdict::fail(
            format!("no canonical extension: {} is sigma-related to 1 but not idempotent", m.label(x)),
            vec![x],
        ),
        Err(e) => return Err(e),
        Ok(ext) => match is_weakly_schreier(&ext) {
            Ok(_) => Verdict::pass(),
            Err(Error::EmptyCandidateFiber { fiber, .. }) => Verdict::fail(
                format!("no splitting candidate in the fiber {{{}}}", names(m, &fiber)),
                fiber,
            ),
            Err(e) => return Err(e),
        },
    });
    let e_unitary = v.e_unitary.as_ref().is_some_and(|v| v.holds);
    let f_inverse = selector.is_ok();
    let clifford = v.clifford.as_ref().is_some_and(|v| v.holds);
    if f_inverse && !e_unitary {
        return Err(Error::TheoremViolation("F-inverse but not E-unitary".into()));
    }
    if e_unitary {
        weakly_schreier_iff_f_inverse(&inv)?;
    }

    let sigma = min_group_congruence(&inv)?;
    report.sigma_classes = Some(sigma.classes());
    report.natural_order = Some(natural_order(&inv)?.strict_pairs());
    report.maximal_reading_diverges = Some(selector.is_err());
    if let Ok(sel) = &selector {
        report.max_selector = Some(sel.greatest.clone());
    }
    if f_inverse && clifford {
        let cg = gluing_map_from_clifford(&inv)?;
        report.gluing_map = Some(cg.map.values().iter().map(|&y| cg.k.apply(y)).collect());
    }
    Ok(report)
}

pub fn emit_report(report: &AnalysisReport, format: Format) -> String {
    match format {
        Format::Json => to_sorted_json(report),
        Format::Human => human(report),
    }
}

/// Pretty JSON with object keys in sorted order.
pub fn to_sorted_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report serializes");
    let mut out = serde_json::to_string_pretty(&v).expect("value serializes");
    out.push('\n');
    out
}

fn human(r: &AnalysisReport) -> String {
    let label = |x: usize| r.labels[x].as_str();
    let set = |xs: &[usize]| format!("{{{}}}", xs.iter().map(|&x| label(x)).collect::<Vec<_>>().join(", "));
    let mut out = String::new();
    writeln!(out, "{} ({} elements)", r.name, r.size).unwrap();
    writeln!(out, "{:<17}{:<9}witness", "property", "verdict").unwrap();
    for (name, v) in r.verdicts.named() {
        let (verdict, witness) = match v {
            None => ("n/a", String::new()),
            Some(v) => (
                if v.holds { "yes" } else { "no" },
                v.witness.as_ref().map(|w| w.description.clone()).unwrap_or_default(),
            ),
        };
        writeln!(out, "{:<17}{:<9}{}", name, verdict, witness).unwrap();
    }
    writeln!(out, "{:<17}{}", "idempotents", set(&r.idempotents)).unwrap();
    if let Some(classes) = &r.sigma_classes {
        let s: Vec<String> = classes.iter().map(|c| set(c)).collect();
        writeln!(out, "{:<17}{}", "sigma classes", s.join(" ")).unwrap();
    }
    if let Some(pairs) = &r.natural_order {
        let s: Vec<String> = pairs.iter().map(|&(x, y)| format!("{} < {}", label(x), label(y))).collect();
        writeln!(out, "{:<17}{}", "natural order", if s.is_empty() { "trivial".into() } else { s.join(", ") })
            .unwrap();
    }
    if let Some(sel) = &r.max_selector {
        writeln!(out, "{:<17}{}", "max selector", set(sel)).unwrap();
    }
    if let Some(f) = &r.gluing_map {
        writeln!(out, "{:<17}{}", "gluing map", set(f)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{brandt_monoid, cyclic_group, m3, m7};

    #[test]
    fn m3_report() {
        let r = analyze("M3", &m3()).unwrap();
        assert!(r.all_hold());
        let json = emit_report(&r, Format::Json);
        assert!(json.contains("\"f_inverse\": {\n      \"holds\": true"));
        assert_eq!(r.max_selector, Some(vec![0, 2]));
        assert_eq!(r.gluing_map, Some(vec![0, 1]));
    }

    #[test]
    fn b21_human_report_prints_witness_pair() {
        let r = analyze("B2^1", &brandt_monoid()).unwrap();
        let w = r.verdicts.e_unitary.as_ref().unwrap().witness.as_ref().unwrap();
        assert_eq!(w.elements.len(), 2);
        let text = emit_report(&r, Format::Human);
        assert!(text.contains("e_unitary        no       a * ab is idempotent but a is not"), "{text}");
    }

    #[test]
    fn trivial_report() {
        let r = analyze("T1", &cyclic_group(1)).unwrap();
        assert!(r.all_hold());
        assert!(r.verdicts.named().iter().all(|(_, v)| v.unwrap().witness.is_none()));
    }

    #[test]
    fn m7_report() {
        let r = analyze("M7", &m7()).unwrap();
        assert_eq!(r.verdicts.get("e_unitary"), Some(true));
        assert_eq!(r.verdicts.get("f_inverse"), Some(false));
        assert_eq!(r.verdicts.get("weakly_schreier"), Some(false));
        assert_eq!(r.maximal_reading_diverges, Some(true));
        assert!(r.max_selector.is_none());
    }

    #[test]
    fn non_inverse_report() {
        let m = FiniteMonoid::new(vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 1]], 0).unwrap();
        let r = analyze("x", &m).unwrap();
        assert!(!r.verdicts.inverse.holds);
        assert!(r.verdicts.e_unitary.is_none());
        assert!(!r.all_hold());
    }

    #[test]
    fn json_keys_are_sorted() {
        let json = emit_report(&analyze("Z2", &cyclic_group(2)).unwrap(), Format::Json);
        let keys: Vec<&str> = json
            .lines()
            .filter(|l| l.starts_with("  \"") )
            .map(|l| l.trim().split('"').nth(1).unwrap())
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
