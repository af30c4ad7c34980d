use std::fs;
use std::io::Write;
use std::path::Path;

use super::Dataset;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Which CSV column holds the class label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelColumn {
    /// Zero-based column index.
    Index(usize),
    #[default]
    Last,
}

impl LabelColumn {
    fn resolve(self, arity: usize) -> Option<usize> {
        match self {
            LabelColumn::Index(i) if i < arity => Some(i),
            LabelColumn::Index(_) => None,
            LabelColumn::Last => arity.checked_sub(1),
        }
    }
}

fn source_name(path: &Path) -> String {
    path.display().to_string()
}

/// Reads a comma-separated file. The label cell equal to `positive_token`
/// maps to `+1`, every other label to `-1`. A first row whose feature cells
/// are not all numeric is taken as a header.
pub fn load_csv(path: &Path, label_column: LabelColumn, positive_token: &str) -> Result<Dataset> {
    let name = source_name(path);
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let parse_err = |line: usize, column: usize, message: String| Error::Parse {
        source_name: name.clone(),
        line,
        column,
        message,
    };

    let mut records = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            parse_err(line, 0, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        records.push((line, rec));
    }
    let Some((_, first)) = records.first() else {
        return Err(parse_err(1, 0, "file contains no rows".into()));
    };
    let arity = first.len();
    let label_idx = label_column.resolve(arity).ok_or_else(|| {
        Error::config(format!(
            "label column {label_column:?} does not exist in {name} ({arity} columns)"
        ))
    })?;

    let is_header = first
        .iter()
        .enumerate()
        .any(|(k, cell)| k != label_idx && cell.parse::<f64>().is_err());
    let feature_names = is_header.then(|| {
        first
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != label_idx)
            .map(|(_, c)| c.to_string())
            .collect::<Vec<_>>()
    });
    let body = &records[usize::from(is_header)..];
    if body.is_empty() {
        return Err(parse_err(1, 0, "file contains a header but no data rows".into()));
    }

    let dim = arity - 1;
    let mut data = Vec::with_capacity(body.len() * dim);
    let mut labels = Vec::with_capacity(body.len());
    for (line, rec) in body {
        if rec.len() != arity {
            return Err(parse_err(
                *line,
                rec.len().min(arity) + 1,
                format!("expected {arity} columns, found {}", rec.len()),
            ));
        }
        for (k, cell) in rec.iter().enumerate() {
            if k == label_idx {
                labels.push(if cell == positive_token { 1.0 } else { -1.0 });
                continue;
            }
            let v: f64 = cell.parse().map_err(|_| {
                parse_err(*line, k + 1, format!("non-numeric feature cell '{cell}'"))
            })?;
            if !v.is_finite() {
                return Err(parse_err(*line, k + 1, format!("non-finite value '{cell}'")));
            }
            data.push(v);
        }
    }
    let features = Matrix::from_vec(labels.len(), dim, data)?;
    let mut ds = Dataset::new(features, labels)?;
    ds.feature_names = feature_names;
    Ok(ds)
}

/// Writes features followed by a label column holding `positive` / `negative`.
/// Values use the shortest representation that parses back to the same `f64`.
pub fn write_csv(ds: &Dataset, path: &Path, positive: &str, negative: &str) -> Result<()> {
    let mut out = String::new();
    if let Some(names) = &ds.feature_names {
        out.push_str(&names.join(","));
        out.push_str(",label\n");
    }
    for (row, &y) in ds.features.iter_rows().zip(&ds.labels) {
        for v in row {
            out.push_str(&format!("{v},"));
        }
        out.push_str(if y > 0.0 { positive } else { negative });
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Sparse `label index:value ...` lines with 1-based, strictly increasing
/// indices; missing entries are zero. Blank lines and `#` comments are skipped.
pub fn load_libsvm(path: &Path) -> Result<Dataset> {
    let name = source_name(path);
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let err = |line: usize, column: usize, message: String| Error::Parse {
        source_name: name.clone(),
        line,
        column,
        message,
    };

    let mut rows: Vec<Vec<(usize, f64)>> = Vec::new();
    let mut labels = Vec::new();
    let mut dim = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let label_tok = tokens.next().expect("non-empty line");
        let label = match label_tok.parse::<f64>() {
            Ok(v) if v == 1.0 => 1.0,
            Ok(v) if v == -1.0 => -1.0,
            _ => return Err(err(line, 1, format!("label '{label_tok}' is not +1 or -1"))),
        };
        let mut entries = Vec::new();
        let mut last = 0usize;
        for (k, tok) in tokens.enumerate() {
            let col = k + 2;
            let (idx, val) = tok
                .split_once(':')
                .ok_or_else(|| err(line, col, format!("expected index:value, got '{tok}'")))?;
            let idx: usize = idx
                .parse()
                .map_err(|_| err(line, col, format!("bad feature index '{idx}'")))?;
            if idx == 0 {
                return Err(err(line, col, "feature indices are 1-based".into()));
            }
            if idx <= last {
                return Err(err(
                    line,
                    col,
                    format!("feature index {idx} is duplicated or out of order"),
                ));
            }
            let val: f64 = val
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| err(line, col, format!("bad feature value '{val}'")))?;
            last = idx;
            entries.push((idx, val));
        }
        dim = dim.max(last);
        rows.push(entries);
        labels.push(label);
    }
    if rows.is_empty() {
        return Err(err(1, 0, "file contains no samples".into()));
    }
    let mut features = Matrix::zeros(rows.len(), dim);
    for (i, entries) in rows.iter().enumerate() {
        for &(idx, val) in entries {
            features.set(i, idx - 1, val);
        }
    }
    Dataset::new(features, labels)
}

pub fn write_libsvm(ds: &Dataset, path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    for (row, &y) in ds.features.iter_rows().zip(&ds.labels) {
        let mut line = String::from(if y > 0.0 { "+1" } else { "-1" });
        for (k, v) in row.iter().enumerate() {
            if *v != 0.0 {
                line.push_str(&format!(" {}:{v}", k + 1));
            }
        }
        line.push('\n');
        w.write_all(line.as_bytes()).map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}
