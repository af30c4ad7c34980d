//! `fetch-data`: obtain the raw UCI files, normalize them to
//! `features..., label` CSVs and check them against the pinned manifest.

use std::fs;
use std::path::{Path, PathBuf};

use awfk::data::{load_csv, write_csv, Dataset, LabelColumn};
use awfk::Matrix;
use sha2::{Digest, Sha256};

use crate::args::{FetchDataArgs, NamedDataset};
use crate::failure::{CliResult, Failure};
use crate::source::named_path;

const MANIFEST: &str = include_str!("../datasets.sha256");

const UCI_BASE: &str = "https://archive.ics.uci.edu/ml/machine-learning-databases";

impl NamedDataset {
    fn raw_name(self) -> &'static str {
        match self {
            NamedDataset::Ionosphere => "ionosphere.data",
            NamedDataset::BreastCancer => "wdbc.data",
        }
    }

    fn url(self) -> String {
        match self {
            NamedDataset::Ionosphere => format!("{UCI_BASE}/ionosphere/ionosphere.data"),
            NamedDataset::BreastCancer => format!("{UCI_BASE}/breast-cancer-wisconsin/wdbc.data"),
        }
    }
}

/// Expected SHA-256 of the normalized CSV, from the embedded manifest.
pub fn pinned_checksum(d: NamedDataset) -> Option<&'static str> {
    MANIFEST
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .filter_map(|l| l.split_once(char::is_whitespace))
        .find(|(_, name)| name.trim() == d.file_name())
        .map(|(sum, _)| sum)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn download(url: &str) -> CliResult<String> {
    let mut resp = ureq::get(url)
        .call()
        .map_err(|e| Failure::data(format!("download of {url} failed: {e}")))?;
    resp.body_mut()
        .read_to_string()
        .map_err(|e| Failure::data(format!("reading {url} failed: {e}")))
}

/// Drops column 0 (the wdbc sample id).
fn drop_first_column(ds: &Dataset) -> CliResult<Dataset> {
    let d = ds.dim() - 1;
    let mut data = Vec::with_capacity(ds.len() * d);
    for row in ds.features.iter_rows() {
        data.extend_from_slice(&row[1..]);
    }
    Ok(Dataset::new(Matrix::from_vec(ds.len(), d, data)?, ds.labels.clone())?)
}

/// Parses a raw UCI file and returns the normalized dataset.
fn normalize(d: NamedDataset, raw: &Path) -> CliResult<Dataset> {
    match d {
        NamedDataset::Ionosphere => Ok(load_csv(raw, LabelColumn::Last, "g")?),
        NamedDataset::BreastCancer => drop_first_column(&load_csv(raw, LabelColumn::Index(1), "M")?),
    }
}

fn fetch_one(d: NamedDataset, a: &FetchDataArgs) -> CliResult<()> {
    let target = named_path(&a.data_dir, d);
    if target.exists() && !a.force {
        println!("{}: already present (use --force to replace)", target.display());
        return Ok(());
    }
    let expected = pinned_checksum(d)
        .ok_or_else(|| Failure::config(format!("no manifest entry for {}", d.file_name())))?;
    fs::create_dir_all(&a.data_dir)
        .map_err(|e| Failure::data(format!("cannot create {}: {e}", a.data_dir.display())))?;

    let staging = a.data_dir.join(format!(".{}.raw", d.raw_name()));
    let raw: PathBuf = match &a.source_dir {
        Some(dir) => dir.join(d.raw_name()),
        None => {
            let text = download(&d.url())?;
            fs::write(&staging, text)
                .map_err(|e| Failure::data(format!("cannot write {}: {e}", staging.display())))?;
            staging.clone()
        }
    };
    let partial = a.data_dir.join(format!(".{}.partial", d.file_name()));
    let result = normalize(d, &raw).and_then(|ds| {
        let (pos, neg) = d.tokens();
        write_csv(&ds, &partial, pos, neg)?;
        let bytes = fs::read(&partial)
            .map_err(|e| Failure::data(format!("cannot read {}: {e}", partial.display())))?;
        let actual = sha256_hex(&bytes);
        if actual != expected {
            return Err(Failure::data(format!(
                "checksum mismatch for {}: expected {expected}, got {actual}",
                d.file_name()
            )));
        }
        fs::rename(&partial, &target)
            .map_err(|e| Failure::data(format!("cannot move into {}: {e}", target.display())))?;
        println!("{}: {} rows, sha256 ok", target.display(), ds.len());
        Ok(())
    });
    let _ = fs::remove_file(&staging);
    let _ = fs::remove_file(&partial);
    result
}

pub fn fetch_data_cmd(a: &FetchDataArgs) -> CliResult<()> {
    let targets = match a.only {
        Some(d) => vec![d],
        None => NamedDataset::all().to_vec(),
    };
    for d in targets {
        fetch_one(d, a)?;
    }
    Ok(())
}
