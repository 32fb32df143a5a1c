//! CSV emission. Floats use Rust's shortest round-trip formatting, so
//! identical inputs give byte-identical files.

use std::path::Path;

use num_complex::Complex64;

use crate::decomposition::FredholmReport;
use crate::error::Result;
use crate::spectral::{EigenvalueSet, GridMask};

pub fn write_string(path: &Path, content: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, content)?;
    Ok(())
}

/// Header: re,im,sigma_min,member — one row per grid point in output order.
pub fn mask_csv(mask: &GridMask) -> String {
    let mut out = String::from("re,im,sigma_min,member\n");
    for (i, z) in mask.window.points().enumerate() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            z.re,
            z.im,
            mask.sigma[i],
            if mask.member(i) { 1 } else { 0 }
        ));
    }
    out
}

/// Header: re,im,multiplicity.
pub fn eigenvalues_csv(set: &EigenvalueSet) -> String {
    let mut out = String::from("re,im,multiplicity\n");
    for &(z, m) in set.points() {
        out.push_str(&format!("{},{},{}\n", z.re, z.im, m));
    }
    out
}

/// Header: polygon,vertex,re,im with polygon in {inner, outer}.
pub fn polygon_csv(inner: &[Complex64], outer: &[Complex64]) -> String {
    let mut out = String::from("polygon,vertex,re,im\n");
    for (k, z) in inner.iter().enumerate() {
        out.push_str(&format!("inner,{},{},{}\n", k, z.re, z.im));
    }
    for (k, z) in outer.iter().enumerate() {
        out.push_str(&format!("outer,{},{},{}\n", k, z.re, z.im));
    }
    out
}

/// Header: lambda_re,lambda_im,n,sigma_raw,sigma_dropped,regular_raw,regular_dropped.
pub fn fredholm_csv(reports: &[FredholmReport]) -> String {
    let mut out =
        String::from("lambda_re,lambda_im,n,sigma_raw,sigma_dropped,regular_raw,regular_dropped\n");
    for rep in reports {
        for row in &rep.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                rep.lambda.re,
                rep.lambda.im,
                row.size,
                row.sigma_raw,
                row.sigma_dropped,
                if rep.regular_raw { 1 } else { 0 },
                if rep.regular_dropped { 1 } else { 0 }
            ));
        }
    }
    out
}
