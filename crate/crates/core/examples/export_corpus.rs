//! Writes the builtin corpus to a directory: monoids as `.mtab`, almost
//! actions, gluing maps and factor systems as `.json`.
//!
//! ```text
//! cargo run --example export_corpus -- corpus/
//! ```

use std::fs;
use std::path::PathBuf;

use imw_core::corpus::{builtin_corpus, Payload};
use imw_core::docs::{AlmostActionDoc, FactorSystemDoc, GluingDoc};
use imw_core::mtab::write_mtab;
use imw_core::report::to_sorted_json;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "corpus".into()));
    fs::create_dir_all(&dir)?;
    for inst in builtin_corpus() {
        let (ext, text) = match &inst.payload {
            Payload::Monoid(m) => ("mtab", write_mtab(m)),
            Payload::AlmostAction(aa) => ("json", to_sorted_json(&AlmostActionDoc::from_action(aa))),
            Payload::GluingMap(gm) => ("json", to_sorted_json(&GluingDoc::from_map(gm))),
            Payload::FactorSystem(fs) => ("json", to_sorted_json(&FactorSystemDoc::from_system(fs))),
        };
        let path = dir.join(format!("{}.{ext}", inst.name));
        fs::write(&path, text)?;
        println!("{} ({})", path.display(), inst.kind.as_str());
    }
    Ok(())
}
