//! Versioned plain-text model files.
//!
//! ```text
//! awfk-svm-model 1
//! kernel awfk
//! s 5.0000000000000000e-1
//! lambda 3.0000000000000000e0
//! eta 1.0000000000000000e-4
//! deformation arcsinh
//! c 1.0000000000000000e0
//! bias -1.2345678901234567e-1
//! iterations 812
//! objective 4.5000000000000000e1
//! converged true
//! n_features 2
//! n_support 3
//! mean <n_features values>        (optional)
//! std <n_features values>         (optional)
//! sv <dual coefficient> <n_features values>
//! ...
//! ```
//!
//! RBF models carry a `gamma` line instead of `s` / `lambda` / `eta` /
//! `deformation`. Reals are written with 17 significant digits, so a round
//! trip reproduces every value exactly.

use std::fs;
use std::path::Path;

use super::{SvmModel, TrainingMeta};
use crate::data::Standardization;
use crate::error::{Error, Result};
use crate::kernels::{AwfkParams, Deformation, KernelSpec, RbfParams};
use crate::matrix::Matrix;

pub const FORMAT_HEADER: &str = "awfk-svm-model 1";

/// A model together with the feature scaling its inputs need.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelFile {
    pub model: SvmModel,
    pub standardization: Option<Standardization>,
}

fn real(v: f64) -> String {
    format!("{v:.16e}")
}

fn reals(vs: &[f64]) -> String {
    vs.iter().map(|&v| real(v)).collect::<Vec<_>>().join(" ")
}

pub fn to_text(file: &ModelFile) -> String {
    let m = &file.model;
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(FORMAT_HEADER.to_string());
    line(format!("kernel {}", m.spec.name()));
    match &m.spec {
        KernelSpec::Rbf(p) => line(format!("gamma {}", real(p.gamma()))),
        KernelSpec::Awfk(p) => {
            line(format!("s {}", real(p.s())));
            line(format!("lambda {}", real(p.lambda())));
            line(format!("eta {}", real(p.eta())));
            line(format!("deformation {}", p.deformation().name()));
        }
    }
    line(format!("c {}", real(m.meta.c)));
    line(format!("bias {}", real(m.bias)));
    line(format!("iterations {}", m.meta.iterations));
    line(format!("objective {}", real(m.meta.objective)));
    line(format!("converged {}", m.meta.converged));
    line(format!("n_features {}", m.n_features()));
    line(format!("n_support {}", m.n_support()));
    if let Some(st) = &file.standardization {
        line(format!("mean {}", reals(&st.mean)));
        line(format!("std {}", reals(&st.std)));
    }
    for (row, coef) in m.support_vectors.iter_rows().zip(&m.dual_coefs) {
        if row.is_empty() {
            line(format!("sv {}", real(*coef)));
        } else {
            line(format!("sv {} {}", real(*coef), reals(row)));
        }
    }
    out
}

struct Lines<'a> {
    name: &'a str,
    iter: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
}

impl<'a> Lines<'a> {
    fn err(&self, line: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            source_name: self.name.to_string(),
            line,
            column: 0,
            message: message.into(),
        }
    }

    /// Next line, which must start with `key`; returns the rest and the line number.
    fn field(&mut self, key: &str) -> Result<(&'a str, usize)> {
        match self.iter.next() {
            Some((i, l)) => {
                let (k, rest) = l.split_once(' ').unwrap_or((l, ""));
                if k == key {
                    Ok((rest.trim(), i + 1))
                } else {
                    Err(self.err(i + 1, format!("expected '{key}', found '{k}'")))
                }
            }
            None => Err(self.err(0, format!("unexpected end of file, expected '{key}'"))),
        }
    }

    fn peek_key(&mut self) -> Option<&'a str> {
        self.iter
            .peek()
            .map(|(_, l)| l.split_once(' ').map_or(*l, |(k, _)| k))
    }

    fn real(&mut self, key: &str) -> Result<f64> {
        let (v, line) = self.field(key)?;
        v.parse()
            .map_err(|_| self.err(line, format!("bad number '{v}' for '{key}'")))
    }

    fn reals(&self, s: &str, line: usize) -> Result<Vec<f64>> {
        s.split_whitespace()
            .map(|t| t.parse().map_err(|_| self.err(line, format!("bad number '{t}'"))))
            .collect()
    }

    fn parsed<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let (v, line) = self.field(key)?;
        v.parse()
            .map_err(|_| self.err(line, format!("bad value '{v}' for '{key}'")))
    }
}

pub fn from_text(text: &str, name: &str) -> Result<ModelFile> {
    let mut lines = Lines {
        name,
        iter: text.lines().enumerate().peekable(),
    };
    match lines.iter.next() {
        Some((_, h)) if h.trim() == FORMAT_HEADER => {}
        Some((_, h)) => {
            return Err(lines.err(1, format!("unsupported model header '{h}'")));
        }
        None => return Err(lines.err(0, "empty model file")),
    }
    let (kernel, kline) = lines.field("kernel")?;
    let spec = match kernel {
        "rbf" => KernelSpec::Rbf(RbfParams::new(lines.real("gamma")?)?),
        "awfk" => {
            let s = lines.real("s")?;
            let lambda = lines.real("lambda")?;
            let eta = lines.real("eta")?;
            let (deformation, _) = lines.field("deformation")?;
            KernelSpec::Awfk(
                AwfkParams::new(s, lambda, eta)?.with_deformation(Deformation::from_name(deformation)?),
            )
        }
        other => return Err(lines.err(kline, format!("unknown kernel '{other}'"))),
    };
    let c = lines.real("c")?;
    let bias = lines.real("bias")?;
    let iterations: u64 = lines.parsed("iterations")?;
    let objective = lines.real("objective")?;
    let converged: bool = lines.parsed("converged")?;
    let n_features: usize = lines.parsed("n_features")?;
    let n_support: usize = lines.parsed("n_support")?;

    let standardization = if lines.peek_key() == Some("mean") {
        let (m, ml) = lines.field("mean")?;
        let mean = lines.reals(m, ml)?;
        let (s, sl) = lines.field("std")?;
        let std = lines.reals(s, sl)?;
        if mean.len() != n_features || std.len() != n_features {
            return Err(lines.err(sl, "standardization length does not match n_features"));
        }
        Some(Standardization {
            mean,
            std,
            fitted_on: 0,
        })
    } else {
        None
    };

    let mut coefs = Vec::with_capacity(n_support);
    let mut data = Vec::with_capacity(n_support * n_features);
    for _ in 0..n_support {
        let (rest, line) = lines.field("sv")?;
        let vals = lines.reals(rest, line)?;
        if vals.len() != n_features + 1 {
            return Err(lines.err(
                line,
                format!("support vector has {} values, expected {}", vals.len(), n_features + 1),
            ));
        }
        coefs.push(vals[0]);
        data.extend_from_slice(&vals[1..]);
    }
    if let Some((i, l)) = lines.iter.find(|(_, l)| !l.trim().is_empty()) {
        return Err(lines.err(i + 1, format!("trailing content '{l}'")));
    }

    Ok(ModelFile {
        model: SvmModel {
            support_vectors: Matrix::from_vec(n_support, n_features, data)?,
            dual_coefs: coefs,
            bias,
            spec,
            meta: TrainingMeta {
                iterations,
                objective,
                converged,
                c,
            },
        },
        standardization,
    })
}

pub fn write_model(file: &ModelFile, path: &Path) -> Result<()> {
    fs::write(path, to_text(file)).map_err(|e| Error::io(path, e))
}

pub fn read_model(path: &Path) -> Result<ModelFile> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    from_text(&text, &path.display().to_string())
}
