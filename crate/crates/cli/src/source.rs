//! Flag-to-value plumbing: dataset sources, kernels, solver settings, lists.

use std::path::{Path, PathBuf};

use awfk::data::{
    load_csv, load_libsvm, make_gaussians_with_outliers, make_random_dense, make_two_moons,
    Dataset, GaussianOutlierSpec, LabelColumn,
};
use awfk::solver::SvmConfig;
use awfk::{AwfkParams, Deformation, KernelSpec, Matrix, RbfParams};

use crate::args::{
    DataArgs, DeformationName, FileFormat, Generator, KernelArgs, KernelName, NamedDataset,
    SolverArgs,
};
use crate::failure::{CliResult, Failure};

impl NamedDataset {
    pub fn file_name(self) -> &'static str {
        match self {
            NamedDataset::Ionosphere => "ionosphere.csv",
            NamedDataset::BreastCancer => "breast_cancer.csv",
        }
    }

    /// Label tokens (positive, negative) in the normalized CSV.
    pub fn tokens(self) -> (&'static str, &'static str) {
        match self {
            NamedDataset::Ionosphere => ("g", "b"),
            NamedDataset::BreastCancer => ("M", "B"),
        }
    }

    pub fn all() -> [NamedDataset; 2] {
        [NamedDataset::Ionosphere, NamedDataset::BreastCancer]
    }
}

/// Human-readable description of where the rows came from, for reports.
pub fn describe(args: &DataArgs) -> String {
    if let Some(p) = &args.data {
        return p.display().to_string();
    }
    if let Some(d) = args.dataset {
        return d.file_name().trim_end_matches(".csv").to_string();
    }
    match args.generate {
        Some(Generator::Moons) => format!(
            "moons(n={}, noise={}, seed={})",
            args.n_samples, args.noise, args.data_seed
        ),
        Some(Generator::Gaussians) => format!(
            "gaussians(n_per_class={}, dim={}, separation={}, outliers={}, radius={}, seed={})",
            args.n_samples, args.dim, args.separation, args.n_outliers, args.outlier_radius, args.data_seed
        ),
        Some(Generator::Random) => format!(
            "random(n={}, dim={}, seed={})",
            args.n_samples, args.dim, args.data_seed
        ),
        None => "unknown".into(),
    }
}

fn parse_label_column(s: &str) -> CliResult<LabelColumn> {
    if s == "last" {
        return Ok(LabelColumn::Last);
    }
    s.parse()
        .map(LabelColumn::Index)
        .map_err(|_| Failure::config(format!("--label-column must be `last` or an index, got '{s}'")))
}

fn load_file(path: &Path, format: FileFormat, label: LabelColumn, positive: &str) -> CliResult<Dataset> {
    let sparse = match format {
        FileFormat::Csv => false,
        FileFormat::Libsvm => true,
        FileFormat::Auto => matches!(
            path.extension().and_then(|e| e.to_str()),
            Some("libsvm" | "svm")
        ),
    };
    let ds = if sparse {
        load_libsvm(path)?
    } else {
        load_csv(path, label, positive)?
    };
    Ok(ds)
}

pub fn named_path(data_dir: &Path, d: NamedDataset) -> PathBuf {
    data_dir.join(d.file_name())
}

pub fn load_dataset(args: &DataArgs) -> CliResult<Dataset> {
    if let Some(path) = &args.data {
        let label = parse_label_column(&args.label_column)?;
        return load_file(path, args.format, label, &args.positive);
    }
    if let Some(d) = args.dataset {
        let path = named_path(&args.data_dir, d);
        if !path.exists() {
            return Err(Failure::data(format!(
                "{} not found; run `awfk fetch-data --data-dir {}` first",
                path.display(),
                args.data_dir.display()
            )));
        }
        return load_file(&path, FileFormat::Csv, LabelColumn::Last, d.tokens().0);
    }
    let gen = args
        .generate
        .ok_or_else(|| Failure::config("one of --data, --dataset, --generate is required"))?;
    if args.n_samples == 0 {
        return Err(Failure::config("--n-samples must be >= 1"));
    }
    let ds = match gen {
        Generator::Moons => {
            if !(args.noise >= 0.0 && args.noise.is_finite()) {
                return Err(Failure::config("--noise must be >= 0"));
            }
            make_two_moons(args.n_samples, args.noise, args.data_seed)
        }
        Generator::Gaussians => {
            let spec = GaussianOutlierSpec {
                n_per_class: args.n_samples,
                dim: args.dim,
                separation: args.separation,
                cluster_std: args.cluster_std,
                n_outliers: args.n_outliers,
                outlier_radius: args.outlier_radius,
            };
            if args.dim == 0 || !(args.cluster_std > 0.0) || !(args.outlier_radius >= 0.0) {
                return Err(Failure::config(
                    "gaussians need --dim >= 1, --cluster-std > 0, --outlier-radius >= 0",
                ));
            }
            make_gaussians_with_outliers(&spec, args.data_seed)
        }
        Generator::Random => {
            if args.dim == 0 || args.n_samples < 2 {
                return Err(Failure::config("random data needs --dim >= 1 and --n-samples >= 2"));
            }
            make_random_dense(args.n_samples, args.dim, args.data_seed)
        }
    };
    Ok(ds)
}

/// How an RBF width was chosen, echoed into reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaChoice {
    Scale,
    Fixed(f64),
}

pub fn parse_gamma(s: &str) -> CliResult<GammaChoice> {
    if s == "scale" {
        return Ok(GammaChoice::Scale);
    }
    s.parse()
        .map(GammaChoice::Fixed)
        .map_err(|_| Failure::config(format!("--gamma must be a number or `scale`, got '{s}'")))
}

/// Builds the kernel; `scale` is resolved against `features` (the data the
/// model will actually see).
pub fn kernel_spec(args: &KernelArgs, features: &Matrix) -> CliResult<(KernelSpec, Option<GammaChoice>)> {
    match args.kernel {
        KernelName::Awfk => {
            let deformation = match args.deformation {
                DeformationName::Arcsinh => Deformation::Arcsinh,
                DeformationName::Identity => Deformation::Identity,
            };
            let p = AwfkParams::new(args.s, args.lambda, args.eta)?.with_deformation(deformation);
            Ok((KernelSpec::Awfk(p), None))
        }
        KernelName::Rbf => {
            let choice = parse_gamma(&args.gamma)?;
            let p = match choice {
                GammaChoice::Scale => RbfParams::scale_heuristic(features)?,
                GammaChoice::Fixed(g) => RbfParams::new(g)?,
            };
            Ok((KernelSpec::Rbf(p), Some(choice)))
        }
    }
}

pub fn solver_config(args: &SolverArgs) -> CliResult<SvmConfig> {
    let cfg = SvmConfig {
        c: args.c,
        kkt_tol: args.tol,
        max_iter: args.max_iter,
        shrink: !args.no_shrink,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// `a,b,c`, `linspace:start:stop:n` or `logspace:start_exp:stop_exp:n`.
pub fn parse_list(flag: &str, s: &str) -> CliResult<Vec<f64>> {
    let bad = |why: &str| Failure::config(format!("--{flag}: {why} in '{s}'"));
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let values = if let Some(rest) = s.strip_prefix("linspace:").or_else(|| s.strip_prefix("logspace:")) {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("expected start:stop:count"));
        }
        let (a, b) = (num(parts[0])?, num(parts[1])?);
        let n: usize = parts[2].trim().parse().map_err(|_| bad("count is not an integer"))?;
        if n == 0 {
            return Err(bad("count must be >= 1"));
        }
        let lin: Vec<f64> = (0..n)
            .map(|i| if n == 1 { a } else { a + (b - a) * i as f64 / (n - 1) as f64 })
            .collect();
        if s.starts_with("logspace:") {
            lin.into_iter().map(|e| 10f64.powf(e)).collect()
        } else {
            lin
        }
    } else {
        s.split(',').map(num).collect::<CliResult<Vec<f64>>>()?
    };
    if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
        return Err(bad("values must be finite"));
    }
    Ok(values)
}

/// `a..b` (half-open) or a comma-separated list of seeds.
pub fn parse_seeds(s: &str) -> CliResult<Vec<u64>> {
    let bad = || Failure::config(format!("--seeds must be `a..b` or a comma list, got '{s}'"));
    let seeds: Vec<u64> = if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        (a..b).collect()
    } else {
        s.split(',')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<CliResult<_>>()?
    };
    if seeds.is_empty() {
        return Err(bad());
    }
    Ok(seeds)
}

pub fn parse_range(flag: &str, s: &str) -> CliResult<(f64, f64)> {
    let v = parse_list(flag, s)?;
    match v[..] {
        [lo, hi] if lo < hi => Ok((lo, hi)),
        _ => Err(Failure::config(format!("--{flag} must be `min,max` with min < max, got '{s}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_list("x", "1, 2.5").unwrap(), vec![1.0, 2.5]);
        assert_eq!(parse_list("x", "linspace:0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        let l = parse_list("x", "logspace:-2:0:3").unwrap();
        assert!((l[0] - 0.01).abs() < 1e-15 && (l[1] - 0.1).abs() < 1e-15 && l[2] == 1.0);
        assert!(parse_list("x", "linspace:0:1").is_err());
        assert!(parse_list("x", "a,b").is_err());
    }

    #[test]
    fn seeds_and_ranges() {
        assert_eq!(parse_seeds("0..3").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_seeds("4,7").unwrap(), vec![4, 7]);
        assert!(parse_seeds("3..3").is_err());
        assert_eq!(parse_range("x", "-1,2").unwrap(), (-1.0, 2.0));
        assert!(parse_range("x", "2,1").is_err());
    }

    #[test]
    fn gamma() {
        assert_eq!(parse_gamma("scale").unwrap(), GammaChoice::Scale);
        assert_eq!(parse_gamma("0.5").unwrap(), GammaChoice::Fixed(0.5));
        assert_eq!(parse_gamma("auto").unwrap_err().code, 1);
    }
}
