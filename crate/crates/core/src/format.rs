//! Wire formats: JSON term lists for classes, CSV and JSON for tables.
//!
//! Coefficients always travel as exact decimal strings (`"12"`, `"-3/4"`).

use std::io::{Read, Write};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index_set::{IndexSet, RingContext};
use crate::poly::{Class, Generators};
use crate::scalar::Scalar;
use crate::structure::StructureTable;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub indices: Vec<usize>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermListJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<String>,
    pub terms: Vec<TermJson>,
}

impl<G: Generators> From<&Class<G>> for TermListJson {
    fn from(c: &Class<G>) -> Self {
        TermListJson {
            n: c.context().n(),
            system: G::SYSTEM_TAG.map(str::to_owned),
            terms: c
                .terms()
                .map(|(s, v)| TermJson {
                    indices: s.to_vec(),
                    coeff: v.to_string(),
                })
                .collect(),
        }
    }
}

impl TermListJson {
    pub fn into_class<G: Generators>(self) -> Result<Class<G>> {
        if self.system.as_deref() != G::SYSTEM_TAG {
            return Err(Error::Parse(format!(
                "generator system {:?} does not match {:?}",
                self.system,
                G::SYSTEM_TAG
            )));
        }
        let ctx = RingContext::new(self.n)?;
        let terms = self
            .terms
            .into_iter()
            .map(|t| Ok((IndexSet::new(&t.indices)?, t.coeff.parse::<Scalar>()?)))
            .collect::<Result<Vec<_>>>()?;
        Class::from_terms(ctx, terms)
    }
}

pub fn class_to_json<G: Generators>(c: &Class<G>) -> String {
    serde_json::to_string_pretty(&TermListJson::from(c)).expect("term list serializes")
}

pub fn class_from_json<G: Generators>(s: &str) -> Result<Class<G>> {
    let list: TermListJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    list.into_class()
}

/// One line per term: right-aligned coefficient, then the index set.
pub fn class_to_text<G: Generators>(c: &Class<G>) -> String {
    let rows: Vec<(String, String)> = c
        .terms()
        .map(|(s, v)| {
            (
                v.to_string(),
                format!("{}_{{{}}}", G::SYMBOL, s.comma_joined()),
            )
        })
        .collect();
    if rows.is_empty() {
        return "0\n".to_owned();
    }
    let width = rows.iter().map(|(v, _)| v.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(v, m)| format!("{v:>width$}  {m}\n"))
        .collect()
}

/// Two-column CSV `indices,coeff` for a single class.
pub fn class_to_csv<G: Generators>(c: &Class<G>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["indices", "coeff"])
        .expect("in-memory write");
    for (s, v) in c.terms() {
        w.write_record([s.dash_joined(), v.to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    n: usize,
    #[serde(rename = "J")]
    j: String,
    #[serde(rename = "K")]
    k: String,
    #[serde(rename = "L")]
    l: String,
    c: String,
}

/// Writes `n,J,K,L,c` rows with dash-joined index sets, sorted by `(J, K, L)`.
pub fn write_table_csv<W: Write>(table: &StructureTable, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let n = table.context().n();
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    for (j, k, l, c) in table.rows() {
        w.serialize(CsvRow {
            n,
            j: j.dash_joined(),
            k: k.dash_joined(),
            l: l.dash_joined(),
            c: c.to_string(),
        })
        .map_err(csv_err)?;
    }
    if table.is_empty() {
        w.write_record(["n", "J", "K", "L", "c"]).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_table_csv<R: Read>(input: R) -> Result<StructureTable> {
    let mut r = csv::Reader::from_reader(input);
    let mut table: Option<StructureTable> = None;
    for row in r.deserialize::<CsvRow>() {
        let row = row.map_err(|e| Error::Parse(e.to_string()))?;
        let t = match &mut table {
            Some(t) => t,
            None => table.insert(StructureTable::new(RingContext::new(row.n)?)),
        };
        if t.context().n() != row.n {
            return Err(Error::Parse("rows disagree on n".into()));
        }
        let c: BigInt = row
            .c
            .parse()
            .map_err(|_| Error::InvalidCoefficient(row.c.clone()))?;
        t.insert(
            IndexSet::parse_list(&row.j)?,
            IndexSet::parse_list(&row.k)?,
            IndexSet::parse_list(&row.l)?,
            c,
        )?;
    }
    table.ok_or_else(|| Error::Parse("table has no rows, so n is unknown".into()))
}

#[derive(Debug, Serialize, Deserialize)]
struct EntryJson {
    #[serde(rename = "J")]
    j: Vec<usize>,
    #[serde(rename = "K")]
    k: Vec<usize>,
    #[serde(rename = "L")]
    l: Vec<usize>,
    c: serde_json::Value,
}

#[derive(Debug, Serialize, Deserialize)]
struct TableJson {
    n: usize,
    entries: Vec<EntryJson>,
}

/// JSON mirror of the CSV rows. `c` is a JSON integer when it fits in 64
/// bits and a decimal string otherwise.
pub fn table_to_json(table: &StructureTable) -> String {
    let entries = table
        .rows()
        .into_iter()
        .map(|(j, k, l, c)| EntryJson {
            j: j.to_vec(),
            k: k.to_vec(),
            l: l.to_vec(),
            c: i64::try_from(&c)
                .map(serde_json::Value::from)
                .unwrap_or_else(|_| serde_json::Value::from(c.to_string())),
        })
        .collect();
    let doc = TableJson {
        n: table.context().n(),
        entries,
    };
    serde_json::to_string_pretty(&doc).expect("table serializes")
}

pub fn table_from_json(s: &str) -> Result<StructureTable> {
    let doc: TableJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let mut table = StructureTable::new(RingContext::new(doc.n)?);
    for e in doc.entries {
        let c: BigInt = match &e.c {
            serde_json::Value::Number(x) => x.as_i64().map(BigInt::from),
            serde_json::Value::String(x) => x.parse().ok(),
            _ => None,
        }
        .ok_or_else(|| Error::InvalidCoefficient(e.c.to_string()))?;
        table.insert(
            IndexSet::new(&e.j)?,
            IndexSet::new(&e.k)?,
            IndexSet::new(&e.l)?,
            c,
        )?;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{OmegaClass, TautClass};
    use crate::structure::full_table_with_limit;

    fn ctx(n: usize) -> RingContext {
        RingContext::new(n).unwrap()
    }

    #[test]
    fn term_list_round_trip() {
        let c = ctx(5);
        let class = TautClass::from_terms(
            c,
            [
                (IndexSet::new(&[1, 2]).unwrap(), Scalar::ratio(-3, 4)),
                (IndexSet::new(&[4]).unwrap(), Scalar::from(7)),
            ],
        )
        .unwrap();
        let json = class_to_json(&class);
        assert!(json.contains("\"coeff\": \"-3/4\""));
        assert!(!json.contains("system"));
        assert_eq!(
            class_from_json::<crate::poly::Tautological>(&json).unwrap(),
            class
        );
        assert!(class_from_json::<crate::poly::Omega>(&json).is_err());

        let w = OmegaClass::basis_element(c, IndexSet::new(&[2]).unwrap()).unwrap();
        let json = class_to_json(&w);
        assert!(json.contains("\"system\": \"omega\""));
        assert_eq!(class_from_json::<crate::poly::Omega>(&json).unwrap(), w);
    }

    #[test]
    fn text_and_csv_rendering() {
        let c = ctx(4);
        let class = TautClass::from_terms(
            c,
            [
                (IndexSet::new(&[1, 2]).unwrap(), Scalar::from(-12)),
                (IndexSet::new(&[3]).unwrap(), Scalar::from(1)),
            ],
        )
        .unwrap();
        assert_eq!(class_to_text(&class), "-12  x_{1,2}\n  1  x_{3}\n");
        assert_eq!(class_to_csv(&class), "indices,coeff\n1-2,-12\n3,1\n");
        assert_eq!(class_to_text(&TautClass::zero(c)), "0\n");
    }

    #[test]
    fn table_round_trips() {
        let t = full_table_with_limit(ctx(4), 7).unwrap();
        let mut buf = Vec::new();
        write_table_csv(&t, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("n,J,K,L,c\n4,,,,1\n"));
        assert_eq!(read_table_csv(buf.as_slice()).unwrap(), t);
        assert_eq!(table_from_json(&table_to_json(&t)).unwrap(), t);
    }
}
