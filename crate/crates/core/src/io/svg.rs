//! Minimal static SVG rendering of masks, polygons, and point sets.
//! CSV is the source of truth; these are quick-look pictures.

use num_complex::Complex64;

use crate::spectral::GridMask;

const SIZE: f64 = 600.0;

struct Frame {
    xmin: f64,
    ymin: f64,
    span: f64,
}

impl Frame {
    fn map(&self, z: Complex64) -> (f64, f64) {
        let x = (z.re - self.xmin) / self.span * SIZE;
        // SVG y grows downward
        let y = SIZE - (z.im - self.ymin) / self.span * SIZE;
        (x, y)
    }
}

fn frame_for(points: impl Iterator<Item = Complex64>) -> Frame {
    let mut xmin = f64::MAX;
    let mut xmax = f64::MIN;
    let mut ymin = f64::MAX;
    let mut ymax = f64::MIN;
    for z in points {
        xmin = xmin.min(z.re);
        xmax = xmax.max(z.re);
        ymin = ymin.min(z.im);
        ymax = ymax.max(z.im);
    }
    if xmin > xmax {
        xmin = -1.0;
        xmax = 1.0;
        ymin = -1.0;
        ymax = 1.0;
    }
    let span = ((xmax - xmin).max(ymax - ymin)).max(1e-9) * 1.05;
    Frame { xmin, ymin, span }
}

fn header() -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">\n<rect width=\"{s}\" height=\"{s}\" fill=\"white\"/>\n",
        s = SIZE
    )
}

pub fn mask_svg(mask: &GridMask) -> String {
    let frame = frame_for(mask.window.points());
    let mut out = header();
    let cw = SIZE / mask.window.nx as f64;
    let ch = SIZE / mask.window.ny as f64;
    for (i, z) in mask.window.points().enumerate() {
        if mask.member(i) {
            let (x, y) = frame.map(z);
            out.push_str(&format!(
                "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"#3366cc\"/>\n",
                x - cw / 2.0,
                y - ch / 2.0,
                cw,
                ch
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

pub fn polygons_svg(inner: &[Complex64], outer: &[Complex64]) -> String {
    let frame = frame_for(inner.iter().chain(outer.iter()).copied());
    let mut out = header();
    for (poly, color) in [(outer, "#cc3333"), (inner, "#3366cc")] {
        if poly.is_empty() {
            continue;
        }
        let pts: Vec<String> = poly
            .iter()
            .map(|&z| {
                let (x, y) = frame.map(z);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        out.push_str(&format!(
            "<polygon points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n",
            pts.join(" "),
            color
        ));
    }
    out.push_str("</svg>\n");
    out
}

pub fn points_svg(points: &[Complex64]) -> String {
    let frame = frame_for(points.iter().copied());
    let mut out = header();
    for &z in points {
        let (x, y) = frame.map(z);
        out.push_str(&format!(
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"#222222\"/>\n"
        ));
    }
    out.push_str("</svg>\n");
    out
}
