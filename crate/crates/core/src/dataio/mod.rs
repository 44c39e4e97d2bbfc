//! Tabular input: schema-driven CSV loading, supervised discretization and
//! indicator encoding with provenance back to the original variables.

mod binning;
mod encode;

pub use binning::{entropy_bin, BinSpec};
pub use encode::{encode, EncodedColumn, EncodedMatrix, EncodingPolicy};

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnKind {
    Numeric,
    Categorical,
    /// Count variable binarized at "at least one versus none". Declare the
    /// column as `numeric` instead to discretize it with entropy binning.
    BinaryCount,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnRole {
    Predictor,
    Outcome,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ColumnSchema {
    pub name: String,
    pub kind: ColumnKind,
    pub role: ColumnRole,
}

/// Parsed column data, in schema order.
#[derive(Debug, Clone)]
pub enum TableColumn {
    Numeric(Vec<f64>),
    Categorical(Vec<String>),
    Count(Vec<f64>),
    Outcome(Vec<u8>),
}

#[derive(Debug, Clone)]
pub struct Table {
    pub schema: Vec<ColumnSchema>,
    pub columns: Vec<TableColumn>,
    pub n_rows: usize,
    /// Rows discarded by listwise deletion of missing values.
    pub dropped_rows: usize,
}

impl Table {
    pub fn outcome_name(&self) -> &str {
        &self.schema[self.outcome_index()].name
    }

    pub fn outcome_index(&self) -> usize {
        self.schema
            .iter()
            .position(|c| c.role == ColumnRole::Outcome)
            .expect("schema validated to contain an outcome")
    }

    pub fn outcome_values(&self) -> &[u8] {
        match &self.columns[self.outcome_index()] {
            TableColumn::Outcome(v) => v,
            _ => unreachable!("outcome column is parsed as binary"),
        }
    }
}

/// Validates the schema invariants: unique names, exactly one outcome.
pub fn validate_schema(schema: &[ColumnSchema]) -> Result<()> {
    let mut names = std::collections::BTreeSet::new();
    for col in schema {
        if !names.insert(col.name.as_str()) {
            return Err(CoreError::Schema(format!("duplicate column `{}`", col.name)));
        }
    }
    let outcomes = schema.iter().filter(|c| c.role == ColumnRole::Outcome).count();
    if outcomes != 1 {
        return Err(CoreError::Schema(format!(
            "schema must declare exactly one outcome column, found {outcomes}"
        )));
    }
    Ok(())
}

/// Loads a CSV file against `schema`. Rows with a missing value in any schema
/// column are dropped (the count is recorded on the returned table).
pub fn load_table(path: &Path, schema: &[ColumnSchema]) -> Result<Table> {
    validate_schema(schema)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => CoreError::Data(format!(
                "cannot open `{}`: {e}",
                path.display()
            )),
            _ => CoreError::Csv(e),
        })?;
    let headers = reader.headers()?.clone();
    let mut positions = Vec::with_capacity(schema.len());
    for col in schema {
        let pos = headers
            .iter()
            .position(|h| h == col.name)
            .ok_or_else(|| {
                CoreError::Schema(format!("column `{}` not found in CSV header", col.name))
            })?;
        positions.push(pos);
    }

    let mut columns: Vec<TableColumn> = schema
        .iter()
        .map(|c| match (c.role, c.kind) {
            (ColumnRole::Outcome, _) => TableColumn::Outcome(Vec::new()),
            (_, ColumnKind::Numeric) => TableColumn::Numeric(Vec::new()),
            (_, ColumnKind::Categorical) => TableColumn::Categorical(Vec::new()),
            (_, ColumnKind::BinaryCount) => TableColumn::Count(Vec::new()),
        })
        .collect();

    let mut dropped = 0usize;
    let mut n_rows = 0usize;
    for record in reader.records() {
        let record = record?;
        if positions
            .iter()
            .any(|&p| record.get(p).map_or(true, |f| f.trim().is_empty()))
        {
            dropped += 1;
            continue;
        }
        for (slot, (col, &pos)) in columns.iter_mut().zip(schema.iter().zip(&positions)) {
            let raw = record.get(pos).unwrap().trim();
            match slot {
                TableColumn::Numeric(v) | TableColumn::Count(v) => {
                    let parsed: f64 = raw.parse().map_err(|_| {
                        CoreError::Data(format!(
                            "column `{}`: cannot parse `{raw}` as a number",
                            col.name
                        ))
                    })?;
                    v.push(parsed);
                }
                TableColumn::Categorical(v) => v.push(raw.to_string()),
                TableColumn::Outcome(v) => {
                    let parsed = match raw {
                        "0" => 0u8,
                        "1" => 1u8,
                        _ => {
                            return Err(CoreError::Data(format!(
                                "outcome column `{}` is non-binary: found `{raw}`",
                                col.name
                            )))
                        }
                    };
                    v.push(parsed);
                }
            }
        }
        n_rows += 1;
    }

    if n_rows == 0 {
        return Err(CoreError::Data("no usable rows after loading".into()));
    }
    Ok(Table {
        schema: schema.to_vec(),
        columns,
        n_rows,
        dropped_rows: dropped,
    })
}

/// Computes a BinSpec for every numeric predictor in the table.
pub fn bin_numeric_columns(table: &Table, max_bins: usize) -> Vec<BinSpec> {
    let target = table.outcome_values();
    let mut specs = Vec::new();
    for (schema, col) in table.schema.iter().zip(&table.columns) {
        if schema.role != ColumnRole::Predictor || schema.kind != ColumnKind::Numeric {
            continue;
        }
        if let TableColumn::Numeric(values) = col {
            specs.push(entropy_bin(&schema.name, values, target, max_bins));
        }
    }
    specs
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn schema() -> Vec<ColumnSchema> {
        vec![
            ColumnSchema {
                name: "x".into(),
                kind: ColumnKind::Numeric,
                role: ColumnRole::Predictor,
            },
            ColumnSchema {
                name: "y".into(),
                kind: ColumnKind::Categorical,
                role: ColumnRole::Outcome,
            },
        ]
    }

    fn write_csv(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn loads_and_drops_missing_rows() {
        let f = write_csv("x,y,extra\n1.5,0,a\n,1,b\n2.5,1,c\n");
        let t = load_table(f.path(), &schema()).unwrap();
        assert_eq!(t.n_rows, 2);
        assert_eq!(t.dropped_rows, 1);
    }

    #[test]
    fn unknown_schema_column_errors() {
        let f = write_csv("x,y\n1.0,0\n");
        let mut s = schema();
        s[0].name = "missing".into();
        assert!(matches!(
            load_table(f.path(), &s),
            Err(CoreError::Schema(_))
        ));
    }

    #[test]
    fn non_binary_outcome_errors() {
        let f = write_csv("x,y\n1.0,2\n");
        assert!(matches!(load_table(f.path(), &schema()), Err(CoreError::Data(_))));
    }

    #[test]
    fn duplicate_schema_names_rejected() {
        let mut s = schema();
        s[0].name = "y".into();
        assert!(validate_schema(&s).is_err());
    }
}
