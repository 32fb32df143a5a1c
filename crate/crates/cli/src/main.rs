//! spectrolab: twisted groupoid algebras to concrete matrices, and their
//! spectral sets. Validates model files, runs spectral computations and
//! decomposition comparisons, emits CSV (and optionally SVG).
//!
//! Exit codes: 0 success, 1 validation failure (first witness on stderr),
//! 2 malformed input (parse position on stderr).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use spectrolab_core::decomposition::{
    decomposition_compare, fredholm_indicator, SymbolSequence, TruncationFamily,
};
use spectrolab_core::grid::resolve_workers;
use spectrolab_core::groupoid::UnitSubset;
use spectrolab_core::io;
use spectrolab_core::kernel::Kernel;
use spectrolab_core::pseudodiff::{
    self, harper_bloch_eigenvalues, op_x, validate_twisted_action, HarperModel, Omega, Symbol,
    TwistedAction,
};
use spectrolab_core::spectral::{
    self, element_numerical_range, element_psp_grid, element_spectrum, essential_sigma,
    EigenvalueSet, SigmaSelector, SpectralRegion,
};
use spectrolab_core::{Error, GridWindow};

#[derive(Parser)]
#[command(name = "spectrolab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output directory for CSV/SVG results
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Worker thread count (falls back to SPECTROLAB_WORKERS, then all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed recorded in reports (all computations are deterministic)
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Also emit SVG renderings next to the CSV output
    #[arg(long, global = true)]
    svg: bool,
}

#[derive(Args, Clone)]
struct WindowArgs {
    #[arg(long)]
    xmin: Option<f64>,
    #[arg(long)]
    xmax: Option<f64>,
    #[arg(long)]
    ymin: Option<f64>,
    #[arg(long)]
    ymax: Option<f64>,
    /// Horizontal grid resolution
    #[arg(long, default_value_t = 201)]
    nx: usize,
    /// Vertical grid resolution
    #[arg(long, default_value_t = 201)]
    ny: usize,
}

impl WindowArgs {
    fn explicit(&self) -> Result<Option<GridWindow>, Error> {
        match (self.xmin, self.xmax, self.ymin, self.ymax) {
            (Some(a), Some(b), Some(c), Some(d)) => {
                Ok(Some(GridWindow::new(a, b, c, d, self.nx, self.ny)?))
            }
            (None, None, None, None) => Ok(None),
            _ => Err(Error::DegenerateWindow(
                "window needs all of --xmin --xmax --ymin --ymax".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate model files: groupoid axioms, cocycle identities, group
    /// tables, twisted actions. A cocycle file is checked against the most
    /// recent groupoid file on the command line.
    Validate { files: Vec<PathBuf> },
    /// Eigenvalues of the regular representation(s) of a kernel
    Spectrum {
        kernel: PathBuf,
        /// Base unit; default: one representative per orbit
        #[arg(long)]
        unit: Option<usize>,
        /// Compare the spectrum across all units and report constancy
        #[arg(long)]
        all_units: bool,
    },
    /// Epsilon-pseudospectrum grid of a kernel
    Psp {
        kernel: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        unit: Option<usize>,
        #[arg(long)]
        all_units: bool,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Numerical range polygons of a kernel
    Nr {
        kernel: PathBuf,
        #[arg(long, default_value_t = 360)]
        angles: usize,
        #[arg(long)]
        unit: Option<usize>,
        #[arg(long)]
        all_units: bool,
    },
    /// Polynomial hull region {λ : |p(λ)| <= ||p(H)||}
    Hull {
        kernel: PathBuf,
        /// Polynomial coefficients c0,c1,... (ascending powers), re:im pairs
        #[arg(long)]
        poly: String,
        #[arg(long)]
        unit: Option<usize>,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Region {λ : p(λ) in nr[p(H)]}
    Num {
        kernel: PathBuf,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 360)]
        angles: usize,
        #[arg(long)]
        unit: Option<usize>,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Essential Σ-spectrum through the reduction to an invariant subset
    Essential {
        kernel: PathBuf,
        /// Invariant unit subset, comma separated (e.g. "2,3,4")
        #[arg(long)]
        xinf: String,
        /// spectrum | psp | nr
        #[arg(long, default_value = "spectrum")]
        selector: String,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value_t = 360)]
        angles: usize,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Decomposition-principle report for a Z-model descriptor
    Decompose {
        model: PathBuf,
        /// Override the number of removed leading sites
        #[arg(long)]
        drop: Option<usize>,
        /// Override the size schedule, comma separated
        #[arg(long)]
        sizes: Option<String>,
        /// Regularity threshold
        #[arg(long, default_value_t = 1e-3)]
        tau: f64,
        /// Extra probe points "re,im" (repeatable)
        #[arg(long)]
        lambda: Vec<String>,
    },
    /// Toeplitz section: eigenvalues and the symbol curve
    Toeplitz {
        /// Symbol as JSON {"1":[1,0],"-2":[0.5,0]} or @path to such a file
        #[arg(long)]
        symbol: String,
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 512)]
        curve_samples: usize,
    },
    /// Discrete magnetic Harper model with its Bloch oracle
    Harper {
        /// Flux p/q
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 24)]
        n: usize,
    },
    /// Twisted pseudo-differential operator Op_x
    Opx {
        /// Group: z{n}, z{n}^2, d4, q8, or a path to a group file
        #[arg(long)]
        group: String,
        /// Unitary dual file for a custom group (shipped groups have theirs)
        #[arg(long)]
        dual: Option<PathBuf>,
        /// Full symbol file: {"entries":[{"unit":..,"irrep":..,"matrix":..}],
        /// "potential":{...}}
        #[arg(long)]
        symbol_file: Option<PathBuf>,
        /// Group kernel ψ as JSON {"<element-index>":[re,im],...} or @file;
        /// the symbol is Φ = F(ψ), x-independent
        #[arg(long)]
        hopping: Option<String>,
        /// Potential V as JSON {"<unit>":[re,im],...} or @file (added to Φ)
        #[arg(long)]
        potential: Option<String>,
        /// Coboundary twist Λ as JSON [[..[re,im]..]] indexed [element][unit], or @file
        #[arg(long)]
        lambda: Option<String>,
        /// Magnetic flux p/q (z{n}^2 groups only)
        #[arg(long)]
        magnetic: Option<String>,
        #[arg(long, default_value_t = 0)]
        unit: usize,
        #[arg(long)]
        all_units: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            report_error(&e);
            match e {
                Error::Json(_) => ExitCode::from(2),
                Error::Io(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn report_error(e: &Error) {
    if let Error::Json(je) = e {
        eprintln!(
            "parse error at line {}, column {}: {je}",
            je.line(),
            je.column()
        );
    } else {
        eprintln!("error: {e}");
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let workers = resolve_workers(cli.workers);
    match &cli.command {
        Command::Validate { files } => cmd_validate(files),
        Command::Spectrum {
            kernel,
            unit,
            all_units,
        } => cmd_spectrum(cli, kernel, *unit, *all_units),
        Command::Psp {
            kernel,
            eps,
            unit,
            all_units,
            window,
        } => cmd_psp(cli, kernel, *eps, *unit, *all_units, window, workers),
        Command::Nr {
            kernel,
            angles,
            unit,
            all_units,
        } => cmd_nr(cli, kernel, *angles, *unit, *all_units),
        Command::Hull {
            kernel,
            poly,
            unit,
            window,
        } => cmd_hull_num(cli, kernel, poly, None, *unit, window, workers),
        Command::Num {
            kernel,
            poly,
            angles,
            unit,
            window,
        } => cmd_hull_num(cli, kernel, poly, Some(*angles), *unit, window, workers),
        Command::Essential {
            kernel,
            xinf,
            selector,
            eps,
            angles,
            window,
        } => cmd_essential(cli, kernel, xinf, selector, *eps, *angles, window, workers),
        Command::Decompose {
            model,
            drop,
            sizes,
            tau,
            lambda,
        } => cmd_decompose(cli, model, *drop, sizes.as_deref(), *tau, lambda, workers),
        Command::Toeplitz {
            symbol,
            n,
            curve_samples,
        } => cmd_toeplitz(cli, symbol, *n, *curve_samples),
        Command::Harper { alpha, n } => cmd_harper(cli, alpha, *n),
        Command::Opx {
            group,
            dual,
            symbol_file,
            hopping,
            potential,
            lambda,
            magnetic,
            unit,
            all_units,
        } => cmd_opx(
            cli,
            group,
            dual.as_deref(),
            symbol_file.as_deref(),
            hopping.as_deref(),
            potential.as_deref(),
            lambda.as_deref(),
            magnetic.as_deref(),
            *unit,
            *all_units,
        ),
    }
}

// ---------------------------------------------------------------- validate

fn cmd_validate(files: &[PathBuf]) -> Result<ExitCode, Error> {
    if files.is_empty() {
        eprintln!("error: nothing to validate");
        return Ok(ExitCode::from(2));
    }
    let mut last_groupoid: Option<spectrolab_core::groupoid::FiniteGroupoid> = None;
    for path in files {
        let text = std::fs::read_to_string(path)?;
        let value: serde_json::Value = serde_json::from_str(&text)?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::InvalidModel("model file must be a JSON object".into()))?;
        if obj.contains_key("builder") || obj.contains_key("units") {
            let g = io::load_groupoid(path)?;
            println!(
                "{}: groupoid ok ({} units, {} arrows, {} orbits)",
                path.display(),
                g.n_units(),
                g.n_arrows(),
                g.orbits().len()
            );
            last_groupoid = Some(g);
        } else if obj.contains_key("kind") {
            let g = last_groupoid.as_ref().ok_or_else(|| {
                Error::InvalidModel("cocycle file needs a preceding groupoid file".into())
            })?;
            let omega = io::load_cocycle(path, g)?;
            let report = spectrolab_core::cocycle::validate_cocycle(g, &omega);
            if !report.ok {
                eprintln!(
                    "{}: cocycle INVALID, first violation {:?}, max modulus deviation {:.3e}",
                    path.display(),
                    report.first_violation,
                    report.max_modulus_deviation
                );
                return Ok(ExitCode::from(1));
            }
            println!(
                "{}: cocycle ok (max modulus deviation {:.3e}, max identity residual {:.3e})",
                path.display(),
                report.max_modulus_deviation,
                report.max_identity_residual
            );
        } else if obj.contains_key("groupoid") {
            let (carrier, kernel) = io::load_kernel(path)?;
            let _ = kernel;
            let report =
                spectrolab_core::cocycle::validate_cocycle(carrier.groupoid(), carrier.cocycle());
            if !report.ok {
                eprintln!(
                    "{}: kernel carrier INVALID, first violation {:?}",
                    path.display(),
                    report.first_violation
                );
                return Ok(ExitCode::from(1));
            }
            println!(
                "{}: kernel ok ({} arrows)",
                path.display(),
                carrier.groupoid().n_arrows()
            );
            last_groupoid = Some(carrier.groupoid().clone());
        } else if obj.contains_key("elements") {
            let file: io::GroupFile = serde_json::from_str(&text)?;
            let g = file.build()?;
            println!("{}: group ok (order {})", path.display(), g.order());
        } else if obj.contains_key("model") {
            let descriptor = io::load_model_descriptor(path)?;
            let _ = descriptor.family();
            println!("{}: model descriptor ok", path.display());
        } else {
            return Err(Error::InvalidModel(format!(
                "{}: unrecognized model file",
                path.display()
            )));
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------- spectral

fn unit_matrices(kernel: &Kernel, unit: Option<usize>) -> Result<Vec<usize>, Error> {
    let g = kernel.carrier().groupoid();
    match unit {
        Some(x) if x >= g.n_units() => Err(Error::UnknownUnit(x)),
        Some(x) => Ok(vec![x]),
        None => Ok(g.orbit_representatives()),
    }
}

fn write_out(cli: &Cli, name: &str, content: &str) -> Result<PathBuf, Error> {
    let path = cli.out.join(name);
    io::write_string(&path, content)?;
    Ok(path)
}

fn constancy_line(label: &str, max_distance: f64) {
    println!("constancy[{label}]: max pairwise distance {max_distance:.3e}");
}

fn cmd_spectrum(
    cli: &Cli,
    kernel_path: &Path,
    unit: Option<usize>,
    all_units: bool,
) -> Result<ExitCode, Error> {
    let (_, kernel) = io::load_kernel(kernel_path)?;
    let set = match unit {
        Some(x) => EigenvalueSet::from_points(spectral::spectrum_points(
            &kernel.regular_rep(x)?,
        )?),
        None => element_spectrum(&kernel)?,
    };
    let path = write_out(cli, "spectrum.csv", &io::eigenvalues_csv(&set))?;
    println!("wrote {}", path.display());
    if cli.svg {
        let svg = io::points_svg(&set.values());
        let p = write_out(cli, "spectrum.svg", &svg)?;
        println!("wrote {}", p.display());
    }
    if all_units {
        let g = kernel.carrier().groupoid();
        let mut max_d: f64 = 0.0;
        for orbit in g.orbits() {
            let spectra: Vec<Vec<Complex64>> = orbit
                .iter()
                .map(|&x| spectral::spectrum_points(&kernel.regular_rep(x)?))
                .collect::<Result<_, _>>()?;
            for i in 0..spectra.len() {
                for j in i + 1..spectra.len() {
                    max_d = max_d.max(
                        spectrolab_core::decomposition::hausdorff_points(
                            &spectra[i],
                            &spectra[j],
                        )?,
                    );
                }
            }
        }
        constancy_line("spectrum", max_d);
    }
    Ok(ExitCode::SUCCESS)
}

fn kernel_window(
    kernel: &Kernel,
    args: &WindowArgs,
    units: &[usize],
) -> Result<GridWindow, Error> {
    if let Some(w) = args.explicit()? {
        return Ok(w);
    }
    // auto-size from the numerical range of the first representation
    let rep = kernel.regular_rep(units[0])?;
    spectral::auto_window(&rep, args.nx, args.ny)
}

fn cmd_psp(
    cli: &Cli,
    kernel_path: &Path,
    eps: f64,
    unit: Option<usize>,
    all_units: bool,
    window: &WindowArgs,
    workers: usize,
) -> Result<ExitCode, Error> {
    let (_, kernel) = io::load_kernel(kernel_path)?;
    let units = unit_matrices(&kernel, unit)?;
    let w = kernel_window(&kernel, window, &units)?;
    let mask = match unit {
        Some(x) => spectral::matrix_pseudospectrum(&kernel.regular_rep(x)?, eps, &w, workers)?,
        None => element_psp_grid(&kernel, eps, &w, workers)?,
    };
    let path = write_out(cli, "psp.csv", &io::mask_csv(&mask))?;
    println!("wrote {}", path.display());
    if cli.svg {
        let p = write_out(cli, "psp.svg", &io::mask_svg(&mask))?;
        println!("wrote {}", p.display());
    }
    if all_units {
        let g = kernel.carrier().groupoid();
        let mut max_d: f64 = 0.0;
        for orbit in g.orbits() {
            let grids: Vec<Vec<f64>> = orbit
                .iter()
                .map(|&x| {
                    Ok::<_, Error>(
                        spectral::matrix_pseudospectrum(&kernel.regular_rep(x)?, eps, &w, workers)?
                            .sigma,
                    )
                })
                .collect::<Result<_, _>>()?;
            for i in 0..grids.len() {
                for j in i + 1..grids.len() {
                    let d = grids[i]
                        .iter()
                        .zip(grids[j].iter())
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0, f64::max);
                    max_d = max_d.max(d);
                }
            }
        }
        constancy_line("psp-sigma", max_d);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_nr(
    cli: &Cli,
    kernel_path: &Path,
    angles: usize,
    unit: Option<usize>,
    all_units: bool,
) -> Result<ExitCode, Error> {
    let (_, kernel) = io::load_kernel(kernel_path)?;
    let nr = match unit {
        Some(x) => spectral::numerical_range(&kernel.regular_rep(x)?, angles)?,
        None => element_numerical_range(&kernel, angles)?,
    };
    let path = write_out(cli, "nr.csv", &io::polygon_csv(&nr.inner, &nr.outer))?;
    println!("wrote {}", path.display());
    if cli.svg {
        let p = write_out(cli, "nr.svg", &io::polygons_svg(&nr.inner, &nr.outer))?;
        println!("wrote {}", p.display());
    }
    if all_units {
        let g = kernel.carrier().groupoid();
        let mut max_d: f64 = 0.0;
        for orbit in g.orbits() {
            let polys: Vec<Vec<Complex64>> = orbit
                .iter()
                .map(|&x| {
                    Ok::<_, Error>(spectral::numerical_range(&kernel.regular_rep(x)?, angles)?.inner)
                })
                .collect::<Result<_, _>>()?;
            for i in 0..polys.len() {
                for j in i + 1..polys.len() {
                    max_d = max_d.max(spectral::polygon_hausdorff(&polys[i], &polys[j]));
                }
            }
        }
        constancy_line("nr", max_d);
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_poly(spec: &str) -> Result<Vec<Complex64>, Error> {
    // "1,0;-3,0;2,0" = c0 + c1 λ + c2 λ², each term re,im
    let mut out = Vec::new();
    for term in spec.split(';') {
        let parts: Vec<&str> = term.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::InvalidModel(format!(
                "polynomial term '{term}' must be re,im"
            )));
        }
        let re: f64 = parts[0]
            .trim()
            .parse()
            .map_err(|_| Error::InvalidModel(format!("bad float '{}'", parts[0])))?;
        let im: f64 = parts[1]
            .trim()
            .parse()
            .map_err(|_| Error::InvalidModel(format!("bad float '{}'", parts[1])))?;
        out.push(Complex64::new(re, im));
    }
    Ok(out)
}

fn cmd_hull_num(
    cli: &Cli,
    kernel_path: &Path,
    poly: &str,
    num_angles: Option<usize>,
    unit: Option<usize>,
    window: &WindowArgs,
    workers: usize,
) -> Result<ExitCode, Error> {
    let (_, kernel) = io::load_kernel(kernel_path)?;
    let units = unit_matrices(&kernel, unit)?;
    let rep = kernel.regular_rep(units[0])?;
    let p = parse_poly(poly)?;
    let w = kernel_window(&kernel, window, &units)?;
    let (name, mask) = match num_angles {
        None => ("hull.csv", spectral::hull_region(&rep, &p, &w, workers)?),
        Some(angles) => (
            "num.csv",
            spectral::num_region(&rep, &p, &w, angles, workers)?,
        ),
    };
    let path = write_out(cli, name, &io::mask_csv(&mask))?;
    println!("wrote {}", path.display());
    if cli.svg {
        let svg_name = name.replace(".csv", ".svg");
        let p = write_out(cli, &svg_name, &io::mask_svg(&mask))?;
        println!("wrote {}", p.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_units(spec: &str) -> Result<UnitSubset, Error> {
    let mut units = Vec::new();
    for part in spec.split(',') {
        let x: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::InvalidModel(format!("bad unit '{part}'")))?;
        units.push(x);
    }
    Ok(UnitSubset::new(units))
}

#[allow(clippy::too_many_arguments)]
fn cmd_essential(
    cli: &Cli,
    kernel_path: &Path,
    xinf: &str,
    selector: &str,
    eps: f64,
    angles: usize,
    window: &WindowArgs,
    workers: usize,
) -> Result<ExitCode, Error> {
    let (_, kernel) = io::load_kernel(kernel_path)?;
    let subset = parse_units(xinf)?;
    let sel = match selector {
        "spectrum" => SigmaSelector::Spectrum,
        "psp" => SigmaSelector::Pseudospectrum { eps },
        "nr" => SigmaSelector::NumericalRange { angles },
        other => {
            return Err(Error::InvalidModel(format!(
                "unknown selector '{other}' (use spectrum | psp | nr)"
            )))
        }
    };
    let w = match sel {
        SigmaSelector::Pseudospectrum { .. } => {
            Some(kernel_window(&kernel, window, &[0])?)
        }
        _ => None,
    };
    let report = essential_sigma(&kernel, &subset, sel, w.as_ref(), workers)?;
    println!(
        "essential inclusion: {} (gap {:.3e})",
        if report.inclusion_ok { "ok" } else { "VIOLATED" },
        report.inclusion_gap
    );
    match &report.region {
        SpectralRegion::Points(set) => {
            let path = write_out(cli, "essential.csv", &io::eigenvalues_csv(set))?;
            println!("wrote {}", path.display());
        }
        SpectralRegion::Mask(mask) => {
            let path = write_out(cli, "essential.csv", &io::mask_csv(mask))?;
            println!("wrote {}", path.display());
        }
        SpectralRegion::Polygons { inner, outer } => {
            let path = write_out(cli, "essential.csv", &io::polygon_csv(inner, outer))?;
            println!("wrote {}", path.display());
        }
    }
    if report.inclusion_ok {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

// ------------------------------------------------------------- decompose

fn parse_sizes(spec: Option<&str>) -> Result<Option<Vec<usize>>, Error> {
    match spec {
        None => Ok(None),
        Some(s) => {
            let mut out = Vec::new();
            for part in s.split(',') {
                out.push(part.trim().parse().map_err(|_| {
                    Error::InvalidModel(format!("bad size '{part}'"))
                })?);
            }
            Ok(Some(out))
        }
    }
}

fn parse_lambda(spec: &str) -> Result<Complex64, Error> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::InvalidModel(format!("bad lambda '{spec}'")));
    }
    let re: f64 = parts[0].trim().parse().map_err(|_| {
        Error::InvalidModel(format!("bad float '{}'", parts[0]))
    })?;
    let im: f64 = parts[1].trim().parse().map_err(|_| {
        Error::InvalidModel(format!("bad float '{}'", parts[1]))
    })?;
    Ok(Complex64::new(re, im))
}

/// Deterministic probe set: points on the symbol curve plus points pushed
/// outward from the curve centroid, or spectrum-based probes for models
/// without a symbol.
fn probe_lambdas(family: &TruncationFamily) -> Result<Vec<Complex64>, Error> {
    match family.symbol() {
        Some(psi) => {
            let samples = psi.curve(64);
            let centroid: Complex64 =
                samples.iter().sum::<Complex64>() / Complex64::new(samples.len() as f64, 0.0);
            let mut probes = Vec::new();
            for k in (0..64).step_by(16) {
                let z = samples[k];
                probes.push(z);
                let dir = z - centroid;
                let dir = if dir.norm() < 1e-9 {
                    Complex64::new(1.0, 0.0)
                } else {
                    dir / dir.norm()
                };
                probes.push(z + dir * Complex64::new(0.35, 0.0));
            }
            Ok(probes)
        }
        None => {
            let n0 = family.sizes[0];
            let h = family.section(n0)?;
            let eigs = spectrolab_core::linalg::eigh_values(&h);
            let lo = eigs.first().copied().unwrap_or(-1.0);
            let hi = eigs.last().copied().unwrap_or(1.0);
            Ok(vec![
                Complex64::new(lo - 1.0, 0.0),
                Complex64::new(0.5 * (lo + hi), 0.0),
                Complex64::new(hi + 1.0, 0.0),
            ])
        }
    }
}

fn cmd_decompose(
    cli: &Cli,
    model_path: &Path,
    drop_override: Option<usize>,
    sizes: Option<&str>,
    tau: f64,
    extra_lambda: &[String],
    workers: usize,
) -> Result<ExitCode, Error> {
    let descriptor = io::load_model_descriptor(model_path)?;
    let drop = drop_override.unwrap_or_else(|| descriptor.drop_count());
    let mut family = descriptor.family()?;
    if let Some(sizes) = parse_sizes(sizes)? {
        family = TruncationFamily::new(family.model.clone(), sizes)?;
    }
    let mut probes = probe_lambdas(&family)?;
    for spec in extra_lambda {
        probes.push(parse_lambda(spec)?);
    }
    let mut reports = Vec::new();
    let mut agree = true;
    for &lambda in &probes {
        let rep = fredholm_indicator(&family, lambda, drop, tau)?;
        if let Some(d) = rep.curve_distance {
            if d >= 2.0 * tau && rep.regular_raw != rep.regular_dropped {
                agree = false;
            }
        }
        reports.push(rep);
    }
    let path = write_out(cli, "fredholm.csv", &io::fredholm_csv(&reports))?;
    println!("wrote {}", path.display());
    if let Some(psi) = family.symbol() {
        let curve = psi.curve(512);
        let mut csv = String::from("re,im\n");
        for z in &curve {
            csv.push_str(&format!("{},{}\n", z.re, z.im));
        }
        let path = write_out(cli, "symbol_curve.csv", &csv)?;
        println!("wrote {}", path.display());
    }
    let compare = decomposition_compare(&family, drop, SigmaSelector::Spectrum, None, workers)?;
    let mut summary = String::from("{\n  \"seed\": ");
    summary.push_str(&cli.seed.to_string());
    summary.push_str(",\n  \"drop\": ");
    summary.push_str(&drop.to_string());
    summary.push_str(",\n  \"tau\": ");
    summary.push_str(&tau.to_string());
    summary.push_str(",\n  \"classifications_agree_off_curve\": ");
    summary.push_str(if agree { "true" } else { "false" });
    summary.push_str(",\n  \"spectrum_hausdorff\": [");
    let rows: Vec<String> = compare
        .rows
        .iter()
        .map(|r| format!("[{},{}]", r.size, r.hausdorff))
        .collect();
    summary.push_str(&rows.join(","));
    summary.push_str("]\n}\n");
    let path = write_out(cli, "decompose_summary.json", &summary)?;
    println!("wrote {}", path.display());
    println!(
        "classifications agree off curve: {}",
        if agree { "yes" } else { "NO" }
    );
    if family.symbol().is_some() {
        println!(
            "note: the sigma_min classification is a proxy; finite sections of \
             non-normal Toeplitz operators approximate the full spectrum (symbol \
             curve plus winding region), not the essential spectrum. The analytic \
             symbol curve in symbol_curve.csv is the predicted essential spectrum."
        );
    }
    Ok(if agree {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn parse_inline_or_file(spec: &str) -> Result<String, Error> {
    if let Some(path) = spec.strip_prefix('@') {
        Ok(std::fs::read_to_string(path)?)
    } else {
        Ok(spec.to_string())
    }
}

fn cmd_toeplitz(
    cli: &Cli,
    symbol_spec: &str,
    n: usize,
    curve_samples: usize,
) -> Result<ExitCode, Error> {
    let text = parse_inline_or_file(symbol_spec)?;
    let table: io::SymbolTable = serde_json::from_str(&text)?;
    let psi = parse_symbol_table(&table)?;
    let t = spectrolab_core::decomposition::toeplitz(&psi, n)?;
    let eigs = EigenvalueSet::from_points(spectral::spectrum_points(&t)?);
    let path = write_out(cli, "toeplitz_spectrum.csv", &io::eigenvalues_csv(&eigs))?;
    println!("wrote {}", path.display());
    let curve = psi.curve(curve_samples.max(16));
    let mut csv = String::from("re,im\n");
    for z in &curve {
        csv.push_str(&format!("{},{}\n", z.re, z.im));
    }
    let path = write_out(cli, "symbol_curve.csv", &csv)?;
    println!("wrote {}", path.display());
    if cli.svg {
        let p = write_out(cli, "toeplitz_spectrum.svg", &io::points_svg(&eigs.values()))?;
        println!("wrote {}", p.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_symbol_table(table: &io::SymbolTable) -> Result<SymbolSequence, Error> {
    let mut pairs = Vec::new();
    for (k, v) in table {
        let offset: i64 = k
            .parse()
            .map_err(|_| Error::InvalidModel(format!("bad symbol offset '{k}'")))?;
        pairs.push((offset, Complex64::new(v[0], v[1])));
    }
    Ok(SymbolSequence::new(pairs))
}

fn parse_flux(spec: &str) -> Result<(i64, i64), Error> {
    let parts: Vec<&str> = spec.split('/').collect();
    if parts.len() != 2 {
        return Err(Error::InvalidModel(format!("flux '{spec}' must be p/q")));
    }
    let p: i64 = parts[0].trim().parse().map_err(|_| {
        Error::InvalidModel(format!("bad integer '{}'", parts[0]))
    })?;
    let q: i64 = parts[1].trim().parse().map_err(|_| {
        Error::InvalidModel(format!("bad integer '{}'", parts[1]))
    })?;
    Ok((p, q))
}

fn cmd_harper(cli: &Cli, alpha: &str, n: usize) -> Result<ExitCode, Error> {
    let (p, q) = parse_flux(alpha)?;
    let model = HarperModel::new(p, q, n)?;
    let h = model.matrix();
    let eigs = spectrolab_core::linalg::eigh_values(&h);
    let oracle = harper_bloch_eigenvalues(p, q, n)?;
    let ev: Vec<Complex64> = eigs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let or: Vec<Complex64> = oracle.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let d = spectrolab_core::decomposition::hausdorff_points(&ev, &or)?;
    let set = EigenvalueSet::from_points(ev);
    let path = write_out(cli, "harper_spectrum.csv", &io::eigenvalues_csv(&set))?;
    println!("wrote {}", path.display());
    let oracle_set = EigenvalueSet::from_points(or);
    let path = write_out(cli, "harper_bloch.csv", &io::eigenvalues_csv(&oracle_set))?;
    println!("wrote {}", path.display());
    println!("bloch oracle hausdorff distance: {d:.3e}");
    Ok(if d < 1e-8 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

// ------------------------------------------------------------------- opx

type LambdaTable = Vec<Vec<[f64; 2]>>;

#[allow(clippy::too_many_arguments)]
fn cmd_opx(
    cli: &Cli,
    group_name: &str,
    dual_path: Option<&Path>,
    symbol_file: Option<&Path>,
    hopping: Option<&str>,
    potential: Option<&str>,
    lambda: Option<&str>,
    magnetic: Option<&str>,
    unit: usize,
    all_units: bool,
) -> Result<ExitCode, Error> {
    let (group, dual) = match (io::shipped_group(group_name), dual_path) {
        (Some(group), Some(path)) => {
            let file: io::DualFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            let dual = file.build(&group)?;
            (group, dual)
        }
        (Some(_), None) => shipped_dual(group_name)?,
        (None, Some(path)) => {
            let gfile: io::GroupFile =
                serde_json::from_str(&std::fs::read_to_string(group_name)?)?;
            let group = gfile.build()?;
            let dfile: io::DualFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            let dual = dfile.build(&group)?;
            (group, dual)
        }
        (None, None) => {
            return Err(Error::InvalidModel(format!(
                "unknown group '{group_name}': use a shipped name or pass --dual with a group file"
            )))
        }
    };
    let ng = group.order();
    let action = group.translation_action();
    let n_points = ng;
    let ta = if let Some(flux) = magnetic {
        let (p, q) = parse_flux(flux)?;
        let torus_n = (ng as f64).sqrt().round() as usize;
        if torus_n * torus_n != ng || !group_name.to_lowercase().contains('^') {
            return Err(Error::InvalidModel(
                "--magnetic needs a z{n}^2 group".into(),
            ));
        }
        if torus_n % q.unsigned_abs() as usize != 0 {
            return Err(Error::FluxQuantization {
                q: q.unsigned_abs() as usize,
                n: torus_n,
            });
        }
        TwistedAction {
            group,
            n_points,
            action,
            omega: Omega::MagneticTorus {
                p,
                q,
                n: torus_n,
            },
        }
    } else if let Some(spec) = lambda {
        let text = parse_inline_or_file(spec)?;
        let table: LambdaTable = serde_json::from_str(&text)?;
        let lam: Vec<Vec<Complex64>> = table
            .iter()
            .map(|row| row.iter().map(|v| Complex64::new(v[0], v[1])).collect())
            .collect();
        TwistedAction::with_coboundary(group, action, n_points, lam)?
    } else {
        TwistedAction::untwisted(group, action, n_points)
    };
    let report = validate_twisted_action(&ta);
    if !report.ok {
        eprintln!(
            "twisted action INVALID: witness {:?}, residual {:.3e}",
            report.witness, report.max_residual
        );
        return Ok(ExitCode::from(1));
    }
    let mut symbol: Option<Symbol> = None;
    if let Some(path) = symbol_file {
        let file: io::SymbolFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        symbol = Some(file.build(&dual, n_points)?);
    }
    if let Some(spec) = hopping {
        let text = parse_inline_or_file(spec)?;
        let table: io::SymbolTable = serde_json::from_str(&text)?;
        let mut psi = vec![Complex64::new(0.0, 0.0); ng];
        for (k, v) in &table {
            let idx: usize = k
                .parse()
                .map_err(|_| Error::InvalidModel(format!("bad element index '{k}'")))?;
            if idx >= ng {
                return Err(Error::InvalidModel(format!("element {idx} out of range")));
            }
            psi[idx] = Complex64::new(v[0], v[1]);
        }
        let hop = Symbol::from_group_kernel(&dual, &psi, n_points);
        symbol = Some(match symbol {
            Some(s) => s.add(&hop),
            None => hop,
        });
    }
    if let Some(spec) = potential {
        let text = parse_inline_or_file(spec)?;
        let table: io::SymbolTable = serde_json::from_str(&text)?;
        let mut v = vec![Complex64::new(0.0, 0.0); n_points];
        for (k, val) in &table {
            let idx: usize = k
                .parse()
                .map_err(|_| Error::InvalidModel(format!("bad unit '{k}'")))?;
            if idx >= n_points {
                return Err(Error::InvalidModel(format!("unit {idx} out of range")));
            }
            v[idx] = Complex64::new(val[0], val[1]);
        }
        let vsym = Symbol::potential(&dual, &v);
        symbol = Some(match symbol {
            Some(s) => s.add(&vsym),
            None => vsym,
        });
    }
    let symbol = symbol.ok_or_else(|| {
        Error::InvalidModel("opx needs at least one of --hopping / --potential".into())
    })?;
    let m = op_x(&ta, &dual, &symbol, unit)?;
    let eigs = EigenvalueSet::from_points(spectral::spectrum_points(&m)?);
    let path = write_out(cli, "opx_spectrum.csv", &io::eigenvalues_csv(&eigs))?;
    println!("wrote {}", path.display());
    let mut csv = String::from("row,col,re,im\n");
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            let z = m[(i, j)];
            if z != Complex64::new(0.0, 0.0) {
                csv.push_str(&format!("{},{},{},{}\n", i, j, z.re, z.im));
            }
        }
    }
    let path = write_out(cli, "opx_matrix.csv", &csv)?;
    println!("wrote {}", path.display());
    if all_units {
        let base = eigs.values();
        let mut max_d: f64 = 0.0;
        for x in 0..ta.n_points {
            let mx = op_x(&ta, &dual, &symbol, x)?;
            let ex = spectral::spectrum_points(&mx)?;
            max_d = max_d
                .max(spectrolab_core::decomposition::hausdorff_points(&base, &ex)?);
        }
        constancy_line("opx-spectrum", max_d);
    }
    Ok(ExitCode::SUCCESS)
}

fn shipped_dual(
    name: &str,
) -> Result<(spectrolab_core::group::FiniteGroup, pseudodiff::DualData), Error> {
    let lower = name.trim().to_lowercase();
    if lower == "d4" {
        return Ok(pseudodiff::dihedral4_dual());
    }
    if lower == "q8" {
        return Ok(pseudodiff::quaternion8_dual());
    }
    if let Some(rest) = lower.strip_prefix('z') {
        if let Some(nstr) = rest.strip_suffix("^2") {
            if let Ok(n) = nstr.parse::<usize>() {
                if n >= 1 {
                    return Ok(pseudodiff::cyclic_squared_dual(n));
                }
            }
        } else if let Ok(n) = rest.parse::<usize>() {
            if n >= 1 {
                return Ok(pseudodiff::cyclic_dual(n));
            }
        }
    }
    Err(Error::InvalidModel(format!(
        "unknown group '{name}' (use z{{n}}, z{{n}}^2, d4, q8)"
    )))
}
