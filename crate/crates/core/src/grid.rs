//! Deterministic parallel evaluation over rectangular grids in the complex
//! plane. Grid points are independent work items; results are assembled in
//! fixed row-major order (y outer, x inner), so output is identical for any
//! worker count.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridWindow {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridWindow {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64, nx: usize, ny: usize) -> Result<Self> {
        if !(xmax > xmin) || !(ymax > ymin) {
            return Err(Error::DegenerateWindow(format!(
                "[{xmin},{xmax}]x[{ymin},{ymax}]"
            )));
        }
        if nx < 2 || ny < 2 {
            return Err(Error::DegenerateWindow(format!("resolution {nx}x{ny}")));
        }
        Ok(Self {
            xmin,
            xmax,
            ymin,
            ymax,
            nx,
            ny,
        })
    }

    /// Default 201x201 resolution.
    pub fn square(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self> {
        Self::new(xmin, xmax, ymin, ymax, 201, 201)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dx(&self) -> f64 {
        (self.xmax - self.xmin) / (self.nx - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        (self.ymax - self.ymin) / (self.ny - 1) as f64
    }

    /// Diagonal of one grid cell, the natural classification tolerance.
    pub fn cell_diagonal(&self) -> f64 {
        self.dx().hypot(self.dy())
    }

    /// Grid point at flat index (row-major, y outer).
    pub fn point(&self, idx: usize) -> Complex64 {
        let iy = idx / self.nx;
        let ix = idx % self.nx;
        Complex64::new(
            self.xmin + ix as f64 * self.dx(),
            self.ymin + iy as f64 * self.dy(),
        )
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }
}

/// Resolves a worker count: explicit value, then the SPECTROLAB_WORKERS
/// environment variable, then available parallelism.
pub fn resolve_workers(explicit: Option<usize>) -> usize {
    if let Some(w) = explicit {
        return w.max(1);
    }
    if let Ok(s) = std::env::var("SPECTROLAB_WORKERS") {
        if let Ok(w) = s.trim().parse::<usize>() {
            return w.max(1);
        }
    }
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Evaluates `f` at every grid point with `workers` threads. Rows are
/// distributed round-robin; each row lands in its own slot, so assembly
/// order is independent of scheduling.
pub fn evaluate_grid<F>(window: &GridWindow, workers: usize, f: F) -> Vec<f64>
where
    F: Fn(Complex64) -> f64 + Sync,
{
    let workers = workers.max(1).min(window.ny);
    if workers == 1 {
        return window.points().map(f).collect();
    }
    let mut rows: Vec<Vec<f64>> = vec![Vec::new(); window.ny];
    let row_refs: Vec<&mut Vec<f64>> = rows.iter_mut().collect();
    std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(workers);
        let mut chunks: Vec<Vec<(usize, &mut Vec<f64>)>> = (0..workers).map(|_| Vec::new()).collect();
        for (iy, slot) in row_refs.into_iter().enumerate() {
            chunks[iy % workers].push((iy, slot));
        }
        for chunk in chunks {
            let f = &f;
            handles.push(scope.spawn(move || {
                for (iy, slot) in chunk {
                    let mut row = Vec::with_capacity(window.nx);
                    for ix in 0..window.nx {
                        row.push(f(window.point(iy * window.nx + ix)));
                    }
                    *slot = row;
                }
            }));
        }
        for h in handles {
            h.join().expect("grid worker panicked");
        }
    });
    rows.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_order_is_row_major() {
        let w = GridWindow::new(0.0, 1.0, 0.0, 2.0, 3, 5).unwrap();
        assert_eq!(w.point(0), Complex64::new(0.0, 0.0));
        assert_eq!(w.point(1), Complex64::new(0.5, 0.0));
        assert_eq!(w.point(3), Complex64::new(0.0, 0.5));
        assert_eq!(w.len(), 15);
    }

    #[test]
    fn parallel_matches_sequential_bitwise() {
        let w = GridWindow::new(-1.3, 2.7, -0.9, 1.1, 37, 23).unwrap();
        let f = |z: Complex64| (z * z + Complex64::new(0.25, -0.1)).norm().sin();
        let seq = evaluate_grid(&w, 1, f);
        for workers in [2, 3, 7, 16] {
            let par = evaluate_grid(&w, workers, f);
            assert_eq!(seq, par, "worker count {workers} changed output");
        }
    }

    #[test]
    fn degenerate_window_rejected() {
        assert!(GridWindow::new(0.0, 0.0, 0.0, 1.0, 10, 10).is_err());
        assert!(GridWindow::new(0.0, 1.0, 0.0, 1.0, 1, 10).is_err());
    }
}
