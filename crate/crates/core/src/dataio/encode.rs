//! Indicator encoding of a loaded table under the three policies the
//! dual-run discovery strategy needs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{BinSpec, ColumnKind, ColumnRole, Table, TableColumn};
use crate::error::{CoreError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EncodingPolicy {
    DropFirst,
    DropLast,
    KeepAll,
}

impl EncodingPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            EncodingPolicy::DropFirst => "drop_first",
            EncodingPolicy::DropLast => "drop_last",
            EncodingPolicy::KeepAll => "keep_all",
        }
    }
}

/// One 0/1 instance column with provenance to its original variable.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EncodedColumn {
    pub name: String,
    pub source: String,
    pub values: Vec<u8>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EncodedMatrix {
    pub policy: EncodingPolicy,
    pub n_rows: usize,
    pub columns: Vec<EncodedColumn>,
}

impl EncodedMatrix {
    pub fn column(&self, name: &str) -> Option<&EncodedColumn> {
        self.columns.iter().find(|c| c.name == name)
    }

    pub fn column_names(&self) -> Vec<String> {
        self.columns.iter().map(|c| c.name.clone()).collect()
    }

    /// Instance name -> source variable, for every column.
    pub fn provenance(&self) -> BTreeMap<String, String> {
        self.columns
            .iter()
            .map(|c| (c.name.clone(), c.source.clone()))
            .collect()
    }

    /// Columns as f64 vectors, in order, for the covariance machinery.
    pub fn numeric_columns(&self) -> Vec<Vec<f64>> {
        self.columns
            .iter()
            .map(|c| c.values.iter().map(|&v| v as f64).collect())
            .collect()
    }
}

/// Expands each variable into its indicator instances under `policy`.
///
/// Groups with a single instance are always kept whole; the outcome becomes a
/// single 0/1 column under the drop policies and a complementary pair under
/// `keep_all`.
pub fn encode(table: &Table, bins: &[BinSpec], policy: EncodingPolicy) -> Result<EncodedMatrix> {
    let bin_map: BTreeMap<&str, &BinSpec> =
        bins.iter().map(|b| (b.source_column.as_str(), b)).collect();

    let mut columns: Vec<EncodedColumn> = Vec::new();
    for (schema, col) in table.schema.iter().zip(&table.columns) {
        if schema.role == ColumnRole::Outcome {
            let values = match col {
                TableColumn::Outcome(v) => v,
                _ => unreachable!(),
            };
            match policy {
                EncodingPolicy::KeepAll => {
                    for level in 0..2u8 {
                        columns.push(EncodedColumn {
                            name: format!("{}_{level}", schema.name),
                            source: schema.name.clone(),
                            values: values.iter().map(|&v| u8::from(v == level)).collect(),
                        });
                    }
                }
                _ => columns.push(EncodedColumn {
                    name: schema.name.clone(),
                    source: schema.name.clone(),
                    values: values.clone(),
                }),
            }
            continue;
        }

        let group = encode_predictor(schema.kind, &schema.name, col, &bin_map)?;
        let keep: Vec<EncodedColumn> = match policy {
            EncodingPolicy::KeepAll => group,
            _ if group.len() < 2 => group,
            EncodingPolicy::DropFirst => group.into_iter().skip(1).collect(),
            EncodingPolicy::DropLast => {
                let n = group.len();
                group.into_iter().take(n - 1).collect()
            }
        };
        columns.extend(keep);
    }

    Ok(EncodedMatrix { policy, n_rows: table.n_rows, columns })
}

/// Instance columns of one predictor, in canonical order: interval order for
/// binned numerics, lexicographic for categorical levels.
fn encode_predictor(
    kind: ColumnKind,
    name: &str,
    col: &TableColumn,
    bins: &BTreeMap<&str, &BinSpec>,
) -> Result<Vec<EncodedColumn>> {
    match (kind, col) {
        (ColumnKind::Numeric, TableColumn::Numeric(values)) => {
            let spec = bins.get(name).ok_or_else(|| {
                CoreError::Schema(format!("numeric predictor `{name}` has no BinSpec"))
            })?;
            let mut group = Vec::with_capacity(spec.n_bins());
            for (interval, instance) in spec.instance_names.iter().enumerate() {
                group.push(EncodedColumn {
                    name: instance.clone(),
                    source: name.to_string(),
                    values: values
                        .iter()
                        .map(|&v| u8::from(spec.interval_of(v) == interval))
                        .collect(),
                });
            }
            Ok(group)
        }
        (ColumnKind::Categorical, TableColumn::Categorical(values)) => {
            let mut levels: Vec<&String> = values.iter().collect();
            levels.sort();
            levels.dedup();
            Ok(levels
                .iter()
                .map(|level| EncodedColumn {
                    name: format!("{name}_{level}"),
                    source: name.to_string(),
                    values: values.iter().map(|v| u8::from(v == *level)).collect(),
                })
                .collect())
        }
        (ColumnKind::BinaryCount, TableColumn::Count(values)) => Ok(vec![EncodedColumn {
            name: name.to_string(),
            source: name.to_string(),
            values: values.iter().map(|&v| u8::from(v >= 1.0)).collect(),
        }]),
        _ => unreachable!("table columns are parsed according to schema kinds"),
    }
}
