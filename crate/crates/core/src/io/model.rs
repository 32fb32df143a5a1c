//! JSON model schemas and loaders.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_complex::Complex64;
use serde::Deserialize;

use crate::cocycle::Cocycle;
use crate::error::{Error, Result};
use crate::group::{self, FiniteGroup};
use crate::groupoid::{
    build_pair_groupoid, build_transformation_groupoid, FiniteGroupoid, HaarSystem,
};
use crate::kernel::{Carrier, Kernel};
use crate::pseudodiff::Omega;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidModel(msg.into())
}

/// Inline value or a path to another JSON file.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RefOr<T> {
    Path(String),
    Inline(T),
}

#[derive(Clone, Debug, Deserialize)]
pub struct ArrowRecord {
    pub id: usize,
    pub d: usize,
    pub r: usize,
}

/// Groupoid model file: builder form or explicit tables.
#[derive(Clone, Debug, Deserialize)]
pub struct GroupoidFile {
    #[serde(default)]
    pub builder: Option<String>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub group: Option<RefOr<GroupFile>>,
    #[serde(default)]
    pub action: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub points: Option<usize>,
    #[serde(default)]
    pub units: Option<Vec<serde_json::Value>>,
    #[serde(default)]
    pub arrows: Option<Vec<ArrowRecord>>,
    #[serde(default)]
    pub compose: Option<Vec<[usize; 3]>>,
    #[serde(default)]
    pub inverse: Option<Vec<[usize; 2]>>,
}

impl GroupoidFile {
    pub fn build(&self, base: &Path) -> Result<FiniteGroupoid> {
        match self.builder.as_deref() {
            Some("pair") => {
                let n = self.n.ok_or_else(|| invalid("pair builder needs n"))?;
                if n == 0 {
                    return Err(invalid("pair builder needs n >= 1"));
                }
                Ok(build_pair_groupoid(n))
            }
            Some("transformation") => {
                let group = self
                    .group
                    .as_ref()
                    .ok_or_else(|| invalid("transformation builder needs a group"))?;
                let group = resolve_group(group, base)?;
                let action = self
                    .action
                    .clone()
                    .ok_or_else(|| invalid("transformation builder needs an action table"))?;
                let points = self
                    .points
                    .unwrap_or_else(|| action.first().map(|r| r.len()).unwrap_or(0));
                build_transformation_groupoid(&group, &action, points)
            }
            Some(other) => Err(invalid(format!("unknown builder '{other}'"))),
            None => self.build_explicit(),
        }
    }

    fn build_explicit(&self) -> Result<FiniteGroupoid> {
        let units = self
            .units
            .as_ref()
            .ok_or_else(|| invalid("explicit groupoid needs units"))?;
        let arrows = self
            .arrows
            .as_ref()
            .ok_or_else(|| invalid("explicit groupoid needs arrows"))?;
        let compose = self
            .compose
            .as_ref()
            .ok_or_else(|| invalid("explicit groupoid needs a compose table"))?;
        let inverse = self
            .inverse
            .as_ref()
            .ok_or_else(|| invalid("explicit groupoid needs an inverse table"))?;
        let n_arrows = arrows.len();
        let mut source = vec![0usize; n_arrows];
        let mut range = vec![0usize; n_arrows];
        let mut seen = vec![false; n_arrows];
        for rec in arrows {
            if rec.id >= n_arrows {
                return Err(invalid(format!("arrow id {} out of range", rec.id)));
            }
            if seen[rec.id] {
                return Err(invalid(format!("duplicate arrow id {}", rec.id)));
            }
            seen[rec.id] = true;
            source[rec.id] = rec.d;
            range[rec.id] = rec.r;
        }
        let mut inv = vec![usize::MAX; n_arrows];
        for &[a, b] in inverse {
            if a >= n_arrows || b >= n_arrows {
                return Err(invalid("inverse table index out of range"));
            }
            inv[a] = b;
        }
        if inv.iter().any(|&a| a == usize::MAX) {
            return Err(invalid("inverse table incomplete"));
        }
        let mut table = HashMap::new();
        for &[xi, eta, prod] in compose {
            if xi >= n_arrows || eta >= n_arrows || prod >= n_arrows {
                return Err(invalid("compose table index out of range"));
            }
            table.insert((xi, eta), prod);
        }
        // unit arrows: for each unit, the arrow that is a two-sided identity
        let n_units = units.len();
        let mut unit_arrow = vec![usize::MAX; n_units];
        for a in 0..n_arrows {
            if source[a] == range[a] && table.get(&(a, a)) == Some(&a) && inv[a] == a {
                let x = source[a];
                if x < n_units && unit_arrow[x] == usize::MAX {
                    unit_arrow[x] = a;
                }
            }
        }
        if unit_arrow.iter().any(|&a| a == usize::MAX) {
            return Err(invalid("could not identify a unit arrow for every unit"));
        }
        FiniteGroupoid::from_parts(n_units, source, range, inv, unit_arrow, table)
    }
}

/// Group file: element names plus multiplication table.
#[derive(Clone, Debug, Deserialize)]
pub struct GroupFile {
    pub elements: Vec<String>,
    pub mult: Vec<Vec<usize>>,
}

impl GroupFile {
    pub fn build(&self) -> Result<FiniteGroup> {
        FiniteGroup::from_table(self.elements.clone(), self.mult.clone())
    }
}

/// Resolve a group reference: shipped name ("z4", "z3^2", "d4", "q8"),
/// a path to a group file, or an inline table.
pub fn resolve_group(r: &RefOr<GroupFile>, base: &Path) -> Result<FiniteGroup> {
    match r {
        RefOr::Inline(f) => f.build(),
        RefOr::Path(s) => {
            if let Some(g) = shipped_group(s) {
                return Ok(g);
            }
            let path = base.join(s);
            let text = std::fs::read_to_string(&path)?;
            let file: GroupFile = serde_json::from_str(&text)?;
            file.build()
        }
    }
}

pub fn shipped_group(name: &str) -> Option<FiniteGroup> {
    let name = name.trim().to_lowercase();
    if name == "d4" {
        return Some(group::dihedral4());
    }
    if name == "q8" {
        return Some(group::quaternion8());
    }
    if let Some(rest) = name.strip_prefix('z') {
        if let Some(nstr) = rest.strip_suffix("^2") {
            if let Ok(n) = nstr.parse::<usize>() {
                if n >= 1 {
                    return Some(group::cyclic_squared(n));
                }
            }
        } else if let Ok(n) = rest.parse::<usize>() {
            if n >= 1 {
                return Some(group::cyclic(n));
            }
        }
    }
    None
}

/// Complex number encoded as [re, im].
pub type Cx = [f64; 2];

fn cx(v: Cx) -> Complex64 {
    Complex64::new(v[0], v[1])
}

/// Cocycle file.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CocycleFile {
    Trivial,
    Coboundary {
        /// sigma values keyed by arrow id; omitted arrows default to 1
        sigma: HashMap<String, Cx>,
    },
    Table {
        /// rows [xi, eta, re, im]
        values: Vec<(usize, usize, f64, f64)>,
    },
    Magnetic {
        /// flux p/q on the torus Z_n x Z_n
        alpha: [i64; 2],
        n: usize,
    },
}

impl CocycleFile {
    pub fn build(&self, g: &FiniteGroupoid) -> Result<Cocycle> {
        match self {
            CocycleFile::Trivial => Ok(Cocycle::Trivial),
            CocycleFile::Coboundary { sigma } => {
                let mut values = vec![Complex64::new(1.0, 0.0); g.n_arrows()];
                for (key, v) in sigma {
                    let a: usize = key
                        .parse()
                        .map_err(|_| invalid(format!("bad arrow id '{key}'")))?;
                    if a >= g.n_arrows() {
                        return Err(invalid(format!("sigma arrow {a} out of range")));
                    }
                    values[a] = cx(*v);
                }
                Cocycle::coboundary(g, values)
            }
            CocycleFile::Table { values } => {
                let mut table = HashMap::new();
                for &(xi, eta, re, im) in values {
                    table.insert((xi, eta), Complex64::new(re, im));
                }
                Ok(Cocycle::Table { values: table })
            }
            CocycleFile::Magnetic { alpha, n } => {
                let [p, q] = *alpha;
                let model = crate::pseudodiff::HarperModel::new(p, q, *n)?;
                let ta = model.twisted_action();
                let order = ta.group.order();
                if g.n_units() != order || g.n_arrows() != order * order {
                    return Err(invalid(
                        "magnetic cocycle needs the transformation groupoid of z{n}^2 acting on itself",
                    ));
                }
                let omega = match &ta.omega {
                    Omega::MagneticTorus { .. } => Cocycle::table_from(g, |xi, eta| {
                        let (x, a) = (eta / order, eta % order);
                        let b = xi % order;
                        ta.omega_x(x, a, b)
                    }),
                    _ => unreachable!(),
                };
                Ok(omega)
            }
        }
    }
}

/// Kernel file.
#[derive(Clone, Debug, Deserialize)]
pub struct KernelFile {
    pub groupoid: RefOr<GroupoidFile>,
    #[serde(default)]
    pub cocycle: Option<RefOr<CocycleFile>>,
    #[serde(default)]
    pub values: HashMap<String, Cx>,
}

pub fn load_groupoid(path: &Path) -> Result<FiniteGroupoid> {
    let text = std::fs::read_to_string(path)?;
    let file: GroupoidFile = serde_json::from_str(&text)?;
    let base = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    let g = file.build(&base)?;
    g.validate()?;
    Ok(g)
}

pub fn load_cocycle(path: &Path, g: &FiniteGroupoid) -> Result<Cocycle> {
    let text = std::fs::read_to_string(path)?;
    let file: CocycleFile = serde_json::from_str(&text)?;
    file.build(g)
}

fn resolve_groupoid(r: &RefOr<GroupoidFile>, base: &Path) -> Result<FiniteGroupoid> {
    match r {
        RefOr::Inline(f) => f.build(base),
        RefOr::Path(s) => load_groupoid(&base.join(s)),
    }
}

fn resolve_cocycle(
    r: &Option<RefOr<CocycleFile>>,
    g: &FiniteGroupoid,
    base: &Path,
) -> Result<Cocycle> {
    match r {
        None => Ok(Cocycle::Trivial),
        Some(RefOr::Inline(f)) => f.build(g),
        Some(RefOr::Path(s)) => load_cocycle(&base.join(s), g),
    }
}

/// Loads a kernel file, resolving groupoid/cocycle references relative to
/// the file location. Returns the carrier and the kernel.
pub fn load_kernel(path: &Path) -> Result<(Arc<Carrier>, Kernel)> {
    let text = std::fs::read_to_string(path)?;
    let file: KernelFile = serde_json::from_str(&text)?;
    let base: PathBuf = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    let g = resolve_groupoid(&file.groupoid, &base)?;
    g.validate()?;
    let omega = resolve_cocycle(&file.cocycle, &g, &base)?;
    let n_arrows = g.n_arrows();
    let haar = HaarSystem::counting(n_arrows);
    let carrier = Carrier::new(g, omega, haar)?;
    let mut values = vec![Complex64::new(0.0, 0.0); n_arrows];
    for (key, v) in &file.values {
        let a: usize = key
            .parse()
            .map_err(|_| invalid(format!("bad arrow id '{key}'")))?;
        if a >= n_arrows {
            return Err(invalid(format!("kernel arrow {a} out of range")));
        }
        values[a] = cx(*v);
    }
    let kernel = Kernel::new(carrier.clone(), values)?;
    Ok((carrier, kernel))
}

/// Unitary dual file: a complete list of irreps as matrix tables keyed by
/// element name (or decimal index).
#[derive(Clone, Debug, Deserialize)]
pub struct DualFile {
    pub irreps: Vec<IrrepFile>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct IrrepFile {
    pub dim: usize,
    pub matrices: HashMap<String, Vec<Vec<Cx>>>,
}

impl DualFile {
    pub fn build(&self, group: &crate::group::FiniteGroup) -> Result<crate::pseudodiff::DualData> {
        let n = group.order();
        let mut irreps = Vec::with_capacity(self.irreps.len());
        for (k, irr) in self.irreps.iter().enumerate() {
            let mut matrices = vec![None; n];
            for (key, rows) in &irr.matrices {
                let a = group
                    .element_by_name(key)
                    .or_else(|| key.parse::<usize>().ok().filter(|&i| i < n))
                    .ok_or_else(|| invalid(format!("irrep {k}: unknown element '{key}'")))?;
                if rows.len() != irr.dim || rows.iter().any(|r| r.len() != irr.dim) {
                    return Err(invalid(format!("irrep {k}: matrix for '{key}' is not {d}x{d}", d = irr.dim)));
                }
                let mut m = crate::matrix::ComplexMatrix::zeros(irr.dim, irr.dim);
                for (i, row) in rows.iter().enumerate() {
                    for (j, &v) in row.iter().enumerate() {
                        m[(i, j)] = cx(v);
                    }
                }
                matrices[a] = Some(m);
            }
            let matrices: Option<Vec<_>> = matrices.into_iter().collect();
            let matrices =
                matrices.ok_or_else(|| invalid(format!("irrep {k}: missing element matrices")))?;
            irreps.push(crate::pseudodiff::Irrep {
                dim: irr.dim,
                matrices,
            });
        }
        let dual = crate::pseudodiff::DualData { irreps };
        crate::pseudodiff::validate_dual(group, &dual)?;
        Ok(dual)
    }
}

/// Symbol file for the quantization: matrix blocks keyed by (unit, irrep
/// index), with omitted blocks zero, plus an optional potential added on
/// top as V(x)·Id.
#[derive(Clone, Debug, Deserialize)]
pub struct SymbolFile {
    #[serde(default)]
    pub entries: Vec<SymbolEntry>,
    #[serde(default)]
    pub potential: Option<HashMap<String, Cx>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct SymbolEntry {
    pub unit: usize,
    pub irrep: usize,
    pub matrix: Vec<Vec<Cx>>,
}

impl SymbolFile {
    pub fn build(
        &self,
        dual: &crate::pseudodiff::DualData,
        n_points: usize,
    ) -> Result<crate::pseudodiff::Symbol> {
        let mut entries: Vec<Vec<crate::matrix::ComplexMatrix>> = (0..n_points)
            .map(|_| {
                dual.irreps
                    .iter()
                    .map(|irr| crate::matrix::ComplexMatrix::zeros(irr.dim, irr.dim))
                    .collect()
            })
            .collect();
        for e in &self.entries {
            if e.unit >= n_points {
                return Err(invalid(format!("symbol unit {} out of range", e.unit)));
            }
            if e.irrep >= dual.irreps.len() {
                return Err(invalid(format!("symbol irrep {} out of range", e.irrep)));
            }
            let d = dual.irreps[e.irrep].dim;
            if e.matrix.len() != d || e.matrix.iter().any(|r| r.len() != d) {
                return Err(invalid(format!(
                    "symbol block ({}, {}) is not {d}x{d}",
                    e.unit, e.irrep
                )));
            }
            for (i, row) in e.matrix.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    entries[e.unit][e.irrep][(i, j)] = cx(v);
                }
            }
        }
        let mut symbol = crate::pseudodiff::Symbol::new(entries);
        if let Some(pot) = &self.potential {
            let mut v = vec![Complex64::new(0.0, 0.0); n_points];
            for (key, val) in pot {
                let x: usize = key
                    .parse()
                    .map_err(|_| invalid(format!("bad potential unit '{key}'")))?;
                if x >= n_points {
                    return Err(invalid(format!("potential unit {x} out of range")));
                }
                v[x] = cx(*val);
            }
            symbol = symbol.add(&crate::pseudodiff::Symbol::potential(dual, &v));
        }
        Ok(symbol)
    }
}

/// Symbol coefficients keyed by integer offset (as strings), [re, im] values.
pub type SymbolTable = HashMap<String, Cx>;

pub fn parse_symbol(table: &SymbolTable) -> Result<crate::decomposition::SymbolSequence> {
    let mut pairs = Vec::new();
    for (k, v) in table {
        let offset: i64 = k
            .parse()
            .map_err(|_| invalid(format!("bad symbol offset '{k}'")))?;
        pairs.push((offset, cx(*v)));
    }
    Ok(crate::decomposition::SymbolSequence::new(pairs))
}

/// Model descriptor for the decomposition commands.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum ModelDescriptor {
    Toeplitz {
        symbol: SymbolTable,
        #[serde(default)]
        drop: Option<usize>,
        #[serde(default)]
        sizes: Option<Vec<usize>>,
    },
    Circulant {
        symbol: SymbolTable,
        #[serde(default)]
        drop: Option<usize>,
        #[serde(default)]
        sizes: Option<Vec<usize>>,
    },
    Schrodinger {
        #[serde(default)]
        potential: Option<Vec<Cx>>,
        #[serde(default)]
        cos_potential: Option<CosPotential>,
        #[serde(default)]
        drop: Option<usize>,
        #[serde(default)]
        sizes: Option<Vec<usize>>,
    },
    Harper {
        alpha: [i64; 2],
        n: usize,
    },
}

#[derive(Clone, Debug, Deserialize)]
pub struct CosPotential {
    pub amplitude: f64,
    pub beta: f64,
    #[serde(default)]
    pub phase: f64,
}

pub fn load_model_descriptor(path: &Path) -> Result<ModelDescriptor> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

impl ModelDescriptor {
    pub fn drop_count(&self) -> usize {
        match self {
            ModelDescriptor::Toeplitz { drop, .. }
            | ModelDescriptor::Circulant { drop, .. }
            | ModelDescriptor::Schrodinger { drop, .. } => drop.unwrap_or(0),
            ModelDescriptor::Harper { .. } => 0,
        }
    }

    pub fn sizes(&self) -> Vec<usize> {
        let def = vec![64, 128, 256, 512];
        match self {
            ModelDescriptor::Toeplitz { sizes, .. }
            | ModelDescriptor::Circulant { sizes, .. }
            | ModelDescriptor::Schrodinger { sizes, .. } => sizes.clone().unwrap_or(def),
            ModelDescriptor::Harper { .. } => def,
        }
    }

    pub fn family(&self) -> Result<crate::decomposition::TruncationFamily> {
        use crate::decomposition::{PotentialKind, TruncationFamily, TruncationModel};
        match self {
            ModelDescriptor::Toeplitz { symbol, .. } => TruncationFamily::new(
                TruncationModel::Toeplitz(parse_symbol(symbol)?),
                self.sizes(),
            ),
            ModelDescriptor::Circulant { symbol, .. } => TruncationFamily::new(
                TruncationModel::Circulant(parse_symbol(symbol)?),
                self.sizes(),
            ),
            ModelDescriptor::Schrodinger {
                potential,
                cos_potential,
                ..
            } => {
                let kind = if let Some(cp) = cos_potential {
                    PotentialKind::AlmostPeriodic {
                        amplitude: cp.amplitude,
                        beta: cp.beta,
                        phase: cp.phase,
                    }
                } else {
                    PotentialKind::Compact(
                        potential
                            .clone()
                            .unwrap_or_default()
                            .into_iter()
                            .map(cx)
                            .collect(),
                    )
                };
                TruncationFamily::new(TruncationModel::Schrodinger(kind), self.sizes())
            }
            ModelDescriptor::Harper { .. } => Err(invalid(
                "harper models are not a truncation family; use the harper command",
            )),
        }
    }
}
