//! Evaluation report: per-cell accuracies with CSV/JSON emission.

use serde::{Deserialize, Serialize};

use crate::classify::{Hyperparams, ModelKind};
use crate::error::Result;
use crate::features::FeatureSpace;

/// A report column: one feature space or a multi-view combination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Column {
    Single(FeatureSpace),
    Combo(Vec<FeatureSpace>),
}

impl Column {
    /// Lowercase key, e.g. `cne` or `cne-lm-bow`.
    pub fn key(&self) -> String {
        match self {
            Column::Single(s) => s.as_str().to_string(),
            Column::Combo(spaces) => spaces
                .iter()
                .map(|s| s.as_str())
                .collect::<Vec<_>>()
                .join("-"),
        }
    }

    /// Table label, e.g. `CNE` or `CNE-LM-BoW`.
    pub fn label(&self) -> String {
        match self {
            Column::Single(s) => s.label().to_string(),
            Column::Combo(spaces) => spaces
                .iter()
                .map(|s| s.label())
                .collect::<Vec<_>>()
                .join("-"),
        }
    }

    pub fn spaces(&self) -> &[FeatureSpace] {
        match self {
            Column::Single(s) => std::slice::from_ref(s),
            Column::Combo(spaces) => spaces,
        }
    }
}

/// A report row: one classifier or the cross-algorithm ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Row {
    Model(ModelKind),
    Ensemble,
}

impl Row {
    pub fn key(&self) -> String {
        match self {
            Row::Model(kind) => kind.as_str().to_string(),
            Row::Ensemble => "ensemble".to_string(),
        }
    }
}

/// Accuracy of one (row, column) cell across folds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub mean_accuracy: f64,
    pub fold_accuracies: Vec<f64>,
    /// Votes cast per test item in this cell (1 for single models).
    pub members: usize,
}

/// Configuration echoed into every report for reproducibility.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub k: usize,
    pub seed: u64,
    pub threshold: Option<f64>,
    pub standardize: bool,
    pub allow_pair_votes: bool,
    pub models: Vec<String>,
    pub spaces: Vec<String>,
    pub hyperparams: Hyperparams,
}

/// Cross-validation results over every requested cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub config: ConfigEcho,
    pub columns: Vec<Column>,
    pub rows: Vec<Row>,
    /// `cells[r][c]` is `None` where voting was skipped (two members
    /// without the pair rule).
    pub cells: Vec<Vec<Option<CellReport>>>,
}

impl EvalReport {
    /// Cell lookup by lowercase row/column keys.
    pub fn cell(&self, row: &str, column: &str) -> Option<&CellReport> {
        let r = self.rows.iter().position(|x| x.key() == row)?;
        let c = self.columns.iter().position(|x| x.key() == column)?;
        self.cells[r][c].as_ref()
    }

    /// Paper-style CSV: rows are classifiers, columns feature spaces.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("classifier");
        for column in &self.columns {
            out.push(',');
            out.push_str(&column.label());
        }
        out.push('\n');
        for (r, row) in self.rows.iter().enumerate() {
            out.push_str(&row.key());
            for cell in &self.cells[r] {
                out.push(',');
                match cell {
                    Some(c) => out.push_str(&format!("{:.4}", c.mean_accuracy)),
                    None => out.push_str("--"),
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn write_csv<W: std::io::Write>(&self, mut writer: W) -> Result<()> {
        writer.write_all(self.to_csv_string().as_bytes())?;
        Ok(())
    }

    pub fn write_json<W: std::io::Write>(&self, writer: W) -> Result<()> {
        serde_json::to_writer_pretty(writer, self)?;
        Ok(())
    }

    /// Aligned text table for terminal output.
    pub fn to_table_string(&self) -> String {
        let mut labels: Vec<String> = vec!["classifier".into()];
        labels.extend(self.columns.iter().map(|c| c.label()));
        let mut table: Vec<Vec<String>> = vec![labels];
        for (r, row) in self.rows.iter().enumerate() {
            let mut line = vec![row.key()];
            for cell in &self.cells[r] {
                line.push(match cell {
                    Some(c) => format!("{:.4}", c.mean_accuracy),
                    None => "--".into(),
                });
            }
            table.push(line);
        }
        let widths: Vec<usize> = (0..table[0].len())
            .map(|c| table.iter().map(|row| row[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &table {
            for (i, (field, width)) in row.iter().zip(&widths).enumerate() {
                if i > 0 {
                    out.push_str("  ");
                }
                out.push_str(&format!("{field:<width$}"));
            }
            while out.ends_with(' ') {
                out.pop();
            }
            out.push('\n');
        }
        out
    }
}
