//! Named knot diagrams: a built-in mini-table and loaders for user tables
//! in CSV (`name,pd[,determinant]`) or JSON format. Every entry is
//! validated through the planarity/connectivity checks, and a declared
//! determinant is cross-checked against the one computed from the diagram.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pd::PDCode;
use crate::topology::extract_topology;

/// One named diagram, with an optional declared determinant.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KnotTableEntry {
    pub name: String,
    pub pd: PDCode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub determinant: Option<u64>,
}

impl KnotTableEntry {
    /// Checks the PD code through the topology extraction and, when a
    /// determinant is declared, compares it with the computed one.
    pub fn validate(&self) -> Result<()> {
        let topo = extract_topology(&self.pd)?;
        if let Some(want) = self.determinant {
            let got = topo.determinant();
            if got != want {
                return Err(Error::InvalidInput(format!(
                    "knot {}: declared determinant {want} but the diagram gives {got}",
                    self.name
                )));
            }
        }
        Ok(())
    }
}

/// PD text as accepted inside knot tables: the literal "unknot" names the
/// zero-crossing diagram; anything else goes through the regular parser.
pub fn parse_table_pd(text: &str) -> Result<PDCode> {
    if text.trim().eq_ignore_ascii_case("unknot") {
        Ok(PDCode::unknot())
    } else {
        PDCode::parse(text)
    }
}

fn entry(name: &str, pd_text: &str, determinant: u64) -> KnotTableEntry {
    KnotTableEntry {
        name: name.to_string(),
        pd: parse_table_pd(pd_text).expect("built-in PD code parses"),
        determinant: Some(determinant),
    }
}

/// The built-in table: the unknot and the standard minimal diagrams of the
/// knots with up to five crossings that appear throughout the test suite.
pub fn builtin_table() -> Vec<KnotTableEntry> {
    vec![
        entry("unknot", "unknot", 1),
        entry("trefoil", "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)", 3),
        entry("4_1", "X(4,2,5,1);X(8,6,1,5);X(6,3,7,4);X(2,7,3,8)", 5),
        entry(
            "5_1",
            "X(2,8,3,7);X(4,10,5,9);X(6,2,7,1);X(8,4,9,3);X(10,6,1,5)",
            5,
        ),
        entry(
            "5_2",
            "X(1,4,2,5);X(3,8,4,9);X(5,10,6,1);X(9,6,10,7);X(7,2,8,3)",
            7,
        ),
    ]
}

/// Looks a knot up by name, first in `extra` (a user table), then in the
/// built-in table. "3_1" is accepted as an alias for the trefoil.
pub fn find_knot(name: &str, extra: &[KnotTableEntry]) -> Result<KnotTableEntry> {
    let wanted = if name == "3_1" { "trefoil" } else { name };
    extra
        .iter()
        .chain(builtin_table().iter())
        .find(|e| e.name == wanted)
        .cloned()
        .ok_or_else(|| Error::InvalidInput(format!("unknown knot name: {name}")))
}

/// Loads a knot table from a CSV or JSON file (decided by extension, with
/// CSV as the default). Entries are validated and duplicate names rejected.
pub fn load_knot_table(path: &Path) -> Result<Vec<KnotTableEntry>> {
    let is_json = path
        .extension()
        .map(|e| e.eq_ignore_ascii_case("json"))
        .unwrap_or(false);
    let entries = if is_json {
        load_json(path)?
    } else {
        load_csv(path)?
    };
    let mut seen = std::collections::BTreeSet::new();
    for e in &entries {
        if !seen.insert(e.name.clone()) {
            return Err(Error::InvalidInput(format!(
                "duplicate knot name in table: {}",
                e.name
            )));
        }
        e.validate()
            .map_err(|err| Error::InvalidInput(format!("knot {}: {err}", e.name)))?;
    }
    Ok(entries)
}

/// CSV rows are `name,pd` or `name,pd,determinant`; a header row starting
/// with "name" is skipped.
fn load_csv(path: &Path) -> Result<Vec<KnotTableEntry>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 1;
        let record = record
            .map_err(|e| Error::InvalidInput(format!("{} line {line}: {e}", path.display())))?;
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        if i == 0 && record.get(0).map(|f| f.eq_ignore_ascii_case("name")) == Some(true) {
            continue;
        }
        if record.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "{} line {line}: expected `name,pd[,determinant]`",
                path.display()
            )));
        }
        let determinant = match record.get(2).filter(|f| !f.is_empty()) {
            Some(f) => Some(f.parse::<u64>().map_err(|e| {
                Error::InvalidInput(format!(
                    "{} line {line}: bad determinant: {e}",
                    path.display()
                ))
            })?),
            None => None,
        };
        out.push(KnotTableEntry {
            name: record.get(0).unwrap_or_default().to_string(),
            pd: parse_table_pd(record.get(1).unwrap_or_default())
                .map_err(|e| Error::InvalidInput(format!("{} line {line}: {e}", path.display())))?,
            determinant,
        });
    }
    Ok(out)
}

/// JSON tables are arrays of objects: {"name": ..., "pd": ..., "determinant"?}.
/// The pd field takes either the text form or the nested-array form.
fn load_json(path: &Path) -> Result<Vec<KnotTableEntry>> {
    #[derive(Deserialize)]
    struct RawEntry {
        name: String,
        pd: serde_json::Value,
        determinant: Option<u64>,
    }
    let text = std::fs::read_to_string(path)?;
    let raw: Vec<RawEntry> = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    raw.into_iter()
        .map(|r| {
            let pd = match &r.pd {
                serde_json::Value::String(s) => parse_table_pd(s),
                other => PDCode::parse(&serde_json::json!({ "pd": other }).to_string()),
            }
            .map_err(|e| Error::InvalidInput(format!("knot {}: {e}", r.name)))?;
            Ok(KnotTableEntry {
                name: r.name,
                pd,
                determinant: r.determinant,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn builtin_entries_validate() {
        let table = builtin_table();
        assert_eq!(table.len(), 5);
        for e in &table {
            e.validate().unwrap();
        }
    }

    #[test]
    fn find_by_name_and_alias() {
        assert_eq!(find_knot("5_2", &[]).unwrap().determinant, Some(7));
        assert_eq!(find_knot("3_1", &[]).unwrap().name, "trefoil");
        assert!(find_knot("6_1", &[]).is_err());
        let extra = vec![KnotTableEntry {
            name: "custom".into(),
            pd: PDCode::parse("X(1,1,2,2)").unwrap(),
            determinant: None,
        }];
        assert_eq!(find_knot("custom", &extra).unwrap().name, "custom");
    }

    #[test]
    fn csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("knots.csv");
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, "name,pd,determinant").unwrap();
        writeln!(f, "trefoil,\"X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)\",3").unwrap();
        writeln!(f, "kink,\"X(1,1,2,2)\"").unwrap();
        drop(f);
        let table = load_knot_table(&path).unwrap();
        assert_eq!(table.len(), 2);
        assert_eq!(table[0].name, "trefoil");
        assert_eq!(table[1].determinant, None);
    }

    #[test]
    fn csv_rejects_bad_determinant_and_duplicates() {
        let dir = tempfile::tempdir().unwrap();
        let bad_det = dir.path().join("bad.csv");
        std::fs::write(&bad_det, "trefoil,\"X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)\",5\n").unwrap();
        let err = load_knot_table(&bad_det).unwrap_err().to_string();
        assert!(err.contains("determinant"), "{err}");

        let dup = dir.path().join("dup.csv");
        std::fs::write(&dup, "a,\"X(1,1,2,2)\"\na,\"X(1,2,2,1)\"\n").unwrap();
        let err = load_knot_table(&dup).unwrap_err().to_string();
        assert!(err.contains("duplicate"), "{err}");
    }

    #[test]
    fn json_table_both_pd_forms() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("knots.json");
        std::fs::write(
            &path,
            r#"[
                {"name": "trefoil", "pd": "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)", "determinant": 3},
                {"name": "kink", "pd": [[1,1,2,2]]}
            ]"#,
        )
        .unwrap();
        let table = load_knot_table(&path).unwrap();
        assert_eq!(table.len(), 2);
        assert_eq!(table[1].pd.crossings().len(), 1);
    }
}
