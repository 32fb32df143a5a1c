//! Model files (JSON) and result emission (CSV, SVG).
//!
//! Groupoid file: either a builder form
//!   {"builder":"pair","n":4}
//!   {"builder":"transformation","group":<group>,"action":[[...]],"points":3}
//! or explicit tables
//!   {"units":[...],"arrows":[{"id":..,"d":..,"r":..}],
//!    "compose":[[xi,eta,prod],...],"inverse":[[xi,inv],...]}.
//!
//! Cocycle file: {"kind":"trivial"} | {"kind":"coboundary","sigma":{...}} |
//! {"kind":"table","values":[[xi,eta,re,im],...]} |
//! {"kind":"magnetic","alpha":[p,q],"n":N}.
//!
//! Kernel file: {"groupoid":<ref>,"cocycle":<ref>,"values":{"<arrow>":[re,im]}}
//! where <ref> is an inline object or a path relative to the kernel file.
//! Omitted arrows are zero.

mod csv;
mod model;
mod svg;

pub use csv::{
    eigenvalues_csv, fredholm_csv, mask_csv, polygon_csv, write_string,
};
pub use model::{
    load_cocycle, load_groupoid, load_kernel, load_model_descriptor, shipped_group, CocycleFile,
    DualFile, GroupFile, GroupoidFile, KernelFile, ModelDescriptor, SymbolFile, SymbolTable,
};
pub use svg::{mask_svg, points_svg, polygons_svg};
