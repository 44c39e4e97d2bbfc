//! Supervised entropy binning with the Fayyad-Irani MDL stopping criterion.
//!
//! Splits are accepted best-first (largest information gain over all open
//! segments), each gated by the MDL test, up to a hard cap of `max_bins - 1`
//! cuts. Candidate cut points are midpoints between adjacent distinct values.

use serde::{Deserialize, Serialize};

use crate::canon::format_bound;

/// Discretization of one numeric column: strictly increasing cut points and
/// the instance names of the resulting intervals, `name[lo,hi)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinSpec {
    pub source_column: String,
    pub cuts: Vec<f64>,
    pub instance_names: Vec<String>,
}

impl BinSpec {
    pub fn new(source_column: &str, cuts: Vec<f64>) -> Self {
        let mut bounds = vec![f64::NEG_INFINITY];
        bounds.extend_from_slice(&cuts);
        bounds.push(f64::INFINITY);
        let instance_names = bounds
            .windows(2)
            .map(|w| format!("{source_column}[{},{})", format_bound(w[0]), format_bound(w[1])))
            .collect();
        BinSpec { source_column: source_column.to_string(), cuts, instance_names }
    }

    /// Index of the interval containing `value`.
    pub fn interval_of(&self, value: f64) -> usize {
        self.cuts.iter().take_while(|&&c| value >= c).count()
    }

    pub fn n_bins(&self) -> usize {
        self.cuts.len() + 1
    }
}

fn entropy(pos: usize, total: usize) -> f64 {
    if total == 0 {
        return 0.0;
    }
    let mut e = 0.0;
    for count in [pos, total - pos] {
        if count > 0 {
            let p = count as f64 / total as f64;
            e -= p * p.log2();
        }
    }
    e
}

fn classes_present(pos: usize, total: usize) -> usize {
    usize::from(pos > 0) + usize::from(total - pos > 0)
}

/// Best split of the sorted segment `rows[start..end)`, if one passes the MDL
/// acceptance test. Returns (gain, cut, split_index).
fn best_split(rows: &[(f64, u8)], start: usize, end: usize) -> Option<(f64, f64, usize)> {
    let n = end - start;
    if n < 2 {
        return None;
    }
    let total_pos = rows[start..end].iter().filter(|&&(_, t)| t == 1).count();
    let parent_entropy = entropy(total_pos, n);
    if parent_entropy == 0.0 {
        return None;
    }

    // Gain-maximizing boundary first (ascending scan keeps the smallest cut
    // on ties), then a single MDL acceptance test on that winner.
    let mut best: Option<(f64, f64, usize, usize, usize)> = None;
    let mut left_pos = 0usize;
    for i in start..end - 1 {
        if rows[i].1 == 1 {
            left_pos += 1;
        }
        if rows[i].0 == rows[i + 1].0 {
            continue;
        }
        let left_n = i - start + 1;
        let right_n = n - left_n;
        let right_pos = total_pos - left_pos;
        let child_entropy = (left_n as f64 * entropy(left_pos, left_n)
            + right_n as f64 * entropy(right_pos, right_n))
            / n as f64;
        let gain = parent_entropy - child_entropy;
        if best.map_or(true, |(g, ..)| gain > g) {
            let cut = (rows[i].0 + rows[i + 1].0) / 2.0;
            best = Some((gain, cut, i + 1, left_pos, left_n));
        }
    }

    let (gain, cut, split, left_pos, left_n) = best?;
    let right_n = n - left_n;
    let right_pos = total_pos - left_pos;
    let k = classes_present(total_pos, n) as f64;
    let k1 = classes_present(left_pos, left_n) as f64;
    let k2 = classes_present(right_pos, right_n) as f64;
    let delta = (3f64.powf(k) - 2.0).log2()
        - (k * parent_entropy
            - k1 * entropy(left_pos, left_n)
            - k2 * entropy(right_pos, right_n));
    if gain > ((n as f64 - 1.0).log2() + delta) / n as f64 {
        Some((gain, cut, split))
    } else {
        None
    }
}

/// Recursive supervised binning of `values` against the binary `target`.
///
/// Constant columns and single-class targets yield a single bin (no cuts).
pub fn entropy_bin(column: &str, values: &[f64], target: &[u8], max_bins: usize) -> BinSpec {
    assert_eq!(values.len(), target.len(), "values and target must align");
    assert!(max_bins >= 2, "max_bins must be at least 2");

    let mut rows: Vec<(f64, u8)> = values.iter().copied().zip(target.iter().copied()).collect();
    rows.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("values must not be NaN"));

    // Open segments with their best accepted candidate split.
    let mut cuts: Vec<f64> = Vec::new();
    let mut open: Vec<(f64, f64, usize, usize, usize)> = Vec::new(); // gain, cut, split, start, end
    if let Some((g, c, s)) = best_split(&rows, 0, rows.len()) {
        open.push((g, c, s, 0, rows.len()));
    }
    while cuts.len() < max_bins - 1 && !open.is_empty() {
        // Best-first: highest gain wins; ties go to the smaller cut point.
        let idx = open
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| {
                a.0.partial_cmp(&b.0)
                    .unwrap()
                    .then(b.1.partial_cmp(&a.1).unwrap())
            })
            .map(|(i, _)| i)
            .unwrap();
        let (_, cut, split, start, end) = open.swap_remove(idx);
        cuts.push(cut);
        if let Some((g, c, s)) = best_split(&rows, start, split) {
            open.push((g, c, s, start, split));
        }
        if let Some((g, c, s)) = best_split(&rows, split, end) {
            open.push((g, c, s, split, end));
        }
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    BinSpec::new(column, cuts)
}
