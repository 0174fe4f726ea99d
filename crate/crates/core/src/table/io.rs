//! CSV decision tables and TOML schema files.
//!
//! Table layout:
//!
//! ```text
//! object,a1,a2,d
//! -,C,C,D
//! p1,1,2,1
//! p2,2,3,2
//! ```
//!
//! The first cell of the two header rows labels the object column and is
//! otherwise ignored. Empty cells and `?` are missing values and rejected.

use std::collections::{BTreeSet, HashSet};
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::Deserialize;

use super::{validate_schema, AttributeKind, AttributeSchema, Code, DecisionTable};
use crate::error::{Error, Result};

/// Loads a table whose columns must match `schema` by name and kind.
/// Columns are reordered into schema order.
pub fn load_table(path: impl AsRef<Path>, schema: &[AttributeSchema]) -> Result<DecisionTable> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_table(file, Some(schema))
}

/// Loads a table and infers each domain from the codes that occur.
pub fn load_table_inferred(path: impl AsRef<Path>) -> Result<DecisionTable> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_table(file, None)
}

pub fn read_table<R: Read>(reader: R, schema: Option<&[AttributeSchema]>) -> Result<DecisionTable> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut records = rdr.records();

    let header = records.next().ok_or_else(|| Error::Row {
        row: 1,
        message: "missing header row".into(),
    })??;
    let kinds = records.next().ok_or_else(|| Error::Row {
        row: 2,
        message: "missing attribute kind row".into(),
    })??;
    if header.len() < 2 {
        return Err(Error::Row {
            row: 1,
            message: "header needs an object column and at least one attribute".into(),
        });
    }
    if kinds.len() != header.len() {
        return Err(Error::Row {
            row: 2,
            message: format!("expected {} cells, found {}", header.len(), kinds.len()),
        });
    }
    let names: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let mut file_kinds = Vec::with_capacity(names.len());
    for (name, k) in names.iter().zip(kinds.iter().skip(1)) {
        let kind = AttributeKind::from_symbol(k).ok_or_else(|| Error::Row {
            row: 2,
            message: format!("attribute `{name}` has kind `{k}`, expected C or D"),
        })?;
        file_kinds.push(kind);
    }

    let mut ids = Vec::new();
    let mut seen = HashSet::new();
    let mut rows: Vec<Vec<Code>> = Vec::new();
    for (i, record) in records.enumerate() {
        let line = i + 3;
        let record = record?;
        if record.iter().all(|c| c.is_empty()) {
            continue;
        }
        if record.len() != header.len() {
            return Err(Error::Row {
                row: line,
                message: format!("expected {} cells, found {}", header.len(), record.len()),
            });
        }
        let id = &record[0];
        if id.is_empty() {
            return Err(Error::Row {
                row: line,
                message: "empty object id".into(),
            });
        }
        if !seen.insert(id.to_string()) {
            return Err(Error::DuplicateObject {
                row: line,
                id: id.to_string(),
            });
        }
        let mut row = Vec::with_capacity(names.len());
        for (cell, name) in record.iter().skip(1).zip(&names) {
            if cell.is_empty() || cell == "?" {
                return Err(Error::MissingValue {
                    row: line,
                    attribute: name.clone(),
                });
            }
            let code: Code = cell.parse().map_err(|_| Error::Row {
                row: line,
                message: format!("`{cell}` for attribute `{name}` is not a non-negative integer code"),
            })?;
            row.push(code);
        }
        ids.push(id.to_string());
        rows.push(row);
    }
    if ids.is_empty() {
        return Err(Error::NoObjects);
    }

    let (schema, order) = match schema {
        Some(schema) => {
            validate_schema(schema)?;
            if schema.len() != names.len() {
                return Err(Error::Schema(format!(
                    "file has {} attributes, schema has {}",
                    names.len(),
                    schema.len()
                )));
            }
            let mut order = Vec::with_capacity(schema.len());
            for attr in schema {
                let col = names
                    .iter()
                    .position(|n| *n == attr.name)
                    .ok_or_else(|| Error::Schema(format!("schema attribute `{}` missing from file", attr.name)))?;
                if file_kinds[col] != attr.kind {
                    return Err(Error::Schema(format!(
                        "attribute `{}` is {} in the file but {} in the schema",
                        attr.name,
                        file_kinds[col].symbol(),
                        attr.kind.symbol()
                    )));
                }
                order.push(col);
            }
            (schema.to_vec(), order)
        }
        None => {
            let schema = names
                .iter()
                .enumerate()
                .map(|(col, name)| {
                    let domain: BTreeSet<Code> = rows.iter().map(|r| r[col]).collect();
                    AttributeSchema::new(name.clone(), file_kinds[col], domain.into_iter().collect())
                })
                .collect();
            (schema, (0..names.len()).collect())
        }
    };

    // Check the domain here so errors carry file line numbers.
    for (i, row) in rows.iter().enumerate() {
        for (attr, &col) in schema.iter().zip(&order) {
            if !attr.contains(row[col]) {
                return Err(Error::DomainViolation {
                    row: i + 3,
                    attribute: attr.name.clone(),
                    code: row[col],
                });
            }
        }
    }
    let rows = rows
        .into_iter()
        .map(|r| order.iter().map(|&c| r[c]).collect())
        .collect();
    DecisionTable::new(ids, schema, rows)
}

pub fn save_table(table: &DecisionTable, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_table(table, file)
}

pub fn write_table<W: Write>(table: &DecisionTable, writer: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(writer);
    let mut header = vec!["object".to_string()];
    header.extend(table.schema().iter().map(|a| a.name.clone()));
    w.write_record(&header)?;
    let mut kinds = vec!["-".to_string()];
    kinds.extend(table.schema().iter().map(|a| a.kind.symbol().to_string()));
    w.write_record(&kinds)?;
    for o in 0..table.len() {
        let mut rec = vec![table.object_id(o).to_string()];
        rec.extend(table.row(o).iter().map(|v| v.to_string()));
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Error::io("<table writer>", e))?;
    Ok(())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SchemaFile {
    attribute: Vec<SchemaEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SchemaEntry {
    name: String,
    kind: String,
    domain: Vec<Code>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

/// Parses a schema file:
///
/// ```toml
/// [[attribute]]
/// name = "a1"
/// kind = "condition"          # or "decision", "C", "D"
/// domain = [1, 2, 3]
/// labels = ["always", "seldom", "never"]   # optional
/// ```
pub fn parse_schema(text: &str) -> Result<Vec<AttributeSchema>> {
    let file: SchemaFile = toml::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let schema = file
        .attribute
        .into_iter()
        .map(|e| {
            let kind = AttributeKind::from_symbol(&e.kind)
                .ok_or_else(|| Error::Schema(format!("attribute `{}` has unknown kind `{}`", e.name, e.kind)))?;
            Ok(AttributeSchema {
                name: e.name,
                kind,
                domain: e.domain,
                labels: e.labels,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    validate_schema(&schema)?;
    Ok(schema)
}

pub fn load_schema(path: impl AsRef<Path>) -> Result<Vec<AttributeSchema>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_schema(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::fixtures::medical;

    const MEDICAL: &str = "\
object,a1,a2,a3,a4,a5,a6,d
-,C,C,C,C,C,C,D
p1,1,2,2,3,5,3,1
p2,2,3,1,3,4,3,2
p3,3,1,2,3,6,3,1
p4,1,2,2,1,4,3,2
p5,3,1,2,1,5,3,2
p6,3,2,1,1,4,3,1
p7,1,1,2,2,4,3,2
p8,2,3,1,2,6,3,1
p9,1,1,3,3,5,3,1
p10,2,2,2,2,5,3,1
";

    #[test]
    fn loads_medical_table() {
        let schema = medical().schema().to_vec();
        let t = read_table(MEDICAL.as_bytes(), Some(&schema)).unwrap();
        assert_eq!(t, medical());
    }

    #[test]
    fn reorders_columns_into_schema_order() {
        let text = "object,d,a1\n-,D,C\nx,1,2\n";
        let schema = vec![
            AttributeSchema::condition("a1", vec![1, 2]),
            AttributeSchema::decision("d", vec![1]),
        ];
        let t = read_table(text.as_bytes(), Some(&schema)).unwrap();
        assert_eq!(t.row(0), &[2, 1]);
    }

    #[test]
    fn empty_data_section_is_an_error() {
        let err = read_table("object,a1,d\n-,C,D\n".as_bytes(), None).unwrap_err();
        assert!(matches!(err, Error::NoObjects));
        assert_eq!(err.to_string(), "no objects");
    }

    #[test]
    fn out_of_domain_code_reports_line_and_attribute() {
        let schema = vec![
            AttributeSchema::condition("a1", vec![1, 2, 3]),
            AttributeSchema::decision("d", vec![1, 2]),
        ];
        let err = read_table("object,a1,d\n-,C,D\np1,1,1\np2,9,2\n".as_bytes(), Some(&schema)).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("row 4") && msg.contains("`a1`"), "{msg}");
    }

    #[test]
    fn malformed_rows() {
        let dup = read_table("o,a\n-,C\nx,1\nx,2\n".as_bytes(), None).unwrap_err();
        assert!(matches!(dup, Error::DuplicateObject { row: 4, .. }));
        let short = read_table("o,a,b\n-,C,D\nx,1\n".as_bytes(), None).unwrap_err();
        assert!(matches!(short, Error::Row { row: 3, .. }));
        let missing = read_table("o,a,b\n-,C,D\nx,?,1\n".as_bytes(), None).unwrap_err();
        assert!(matches!(missing, Error::MissingValue { row: 3, .. }));
        let text = read_table("o,a\n-,C\nx,high\n".as_bytes(), None).unwrap_err();
        assert!(matches!(text, Error::Row { row: 3, .. }));
        let kind = read_table("o,a\n-,X\nx,1\n".as_bytes(), None).unwrap_err();
        assert!(matches!(kind, Error::Row { row: 2, .. }));
    }

    #[test]
    fn kind_mismatch_against_schema() {
        let schema = vec![AttributeSchema::decision("a", vec![1])];
        assert!(matches!(
            read_table("o,a\n-,C\nx,1\n".as_bytes(), Some(&schema)),
            Err(Error::Schema(_))
        ));
    }

    #[test]
    fn round_trip_bytes() {
        let t = medical();
        let mut buf = Vec::new();
        write_table(&t, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), MEDICAL);
        assert_eq!(read_table(buf.as_slice(), Some(t.schema())).unwrap(), t);
    }

    #[test]
    fn schema_file() {
        let text = r#"
[[attribute]]
name = "fever"
kind = "D"
domain = [1, 2]
labels = ["yes", "no"]

[[attribute]]
name = "cough"
kind = "condition"
domain = [1, 2, 3]
"#;
        let s = parse_schema(text).unwrap();
        assert_eq!(s[0].kind, AttributeKind::Decision);
        assert_eq!(s[0].label(1), Some("yes"));
        assert_eq!(s[1].domain, vec![1, 2, 3]);
        assert!(parse_schema("[[attribute]]\nname=\"a\"\nkind=\"C\"\ndomain=[]\n").is_err());
    }
}
