//! SVG fans of lines through the origin for planar equisector chains.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{IntVector, Rational};
use crate::sectioning::EquisectorSequence;

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub vectors: Vec<IntVector>,
    pub width: u32,
    pub height: u32,
    /// Coordinate units per pixel, used for the axis tick spacing.
    pub scale: f64,
    pub labels: bool,
}

impl PlotSpec {
    pub const DEFAULT_SCALE: f64 = 0.05;

    pub fn new(seq: &EquisectorSequence) -> Self {
        PlotSpec {
            vectors: seq.vectors.clone(),
            width: 520,
            height: 520,
            scale: Self::DEFAULT_SCALE,
            labels: true,
        }
    }
}

/// Slope of the line spanned by `v`, as in `y = (1/2)x` or `y = −(73/161)x`.
pub fn slope_label(v: &IntVector) -> String {
    let (x, y) = (&v.coords()[0], &v.coords()[1]);
    if x.is_zero() {
        return "x = 0".to_string();
    }
    let slope = Rational::new(y.clone(), x.clone());
    if slope.is_zero() {
        return "y = 0".to_string();
    }
    let sign = if slope.is_negative() { "\u{2212}" } else { "" };
    let mag = slope.abs();
    if mag.is_integer() {
        if mag.is_one() {
            format!("y = {sign}x")
        } else {
            format!("y = {sign}{}x", mag.numer())
        }
    } else {
        format!("y = {sign}({}/{})x", mag.numer(), mag.denom())
    }
}

/// `y/x` as a reduced fraction, or `inf` for vertical lines.
fn slope_attr(v: &IntVector) -> String {
    let (x, y) = (&v.coords()[0], &v.coords()[1]);
    if x.is_zero() {
        "inf".into()
    } else {
        let s = Rational::new(y.clone(), x.clone());
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Direction of `v` scaled so its larger coordinate has magnitude 1.
fn unit_box_direction(v: &IntVector) -> (f64, f64) {
    let (x, y) = (&v.coords()[0], &v.coords()[1]);
    let m: BigInt = x.abs().max(y.abs());
    let f = |c: &BigInt| Rational::new(c.clone(), m.clone()).to_f64().unwrap_or(0.0);
    (f(x), f(y))
}

/// Endpoints of the full line through the canvas center along `(dx, dy)`,
/// clipped to the canvas, in SVG pixel coordinates (y pointing down).
pub(crate) fn clip_line(dx: f64, dy: f64, width: f64, height: f64) -> ((f64, f64), (f64, f64)) {
    let (cx, cy) = (width / 2.0, height / 2.0);
    let tx = if dx != 0.0 {
        cx / dx.abs()
    } else {
        f64::INFINITY
    };
    let ty = if dy != 0.0 {
        cy / dy.abs()
    } else {
        f64::INFINITY
    };
    let t = tx.min(ty);
    ((cx + t * dx, cy - t * dy), (cx - t * dx, cy + t * dy))
}

pub fn render_svg(spec: &PlotSpec) -> Result<String> {
    if spec.width == 0 || spec.height == 0 {
        return Err(Error::InvalidArgument("canvas must be nonempty".into()));
    }
    if !(spec.scale.is_finite() && spec.scale > 0.0) {
        return Err(Error::InvalidArgument("scale must be positive".into()));
    }
    if spec.vectors.is_empty() {
        return Err(Error::InvalidArgument("nothing to plot".into()));
    }
    if let Some(v) = spec.vectors.iter().find(|v| v.dim() != 2) {
        return Err(Error::Unsupported(format!(
            "only planar sequences can be plotted, got dimension {}",
            v.dim()
        )));
    }
    for v in &spec.vectors {
        v.ensure_nonzero()?;
    }
    let (w, h) = (spec.width as f64, spec.height as f64);
    let (cx, cy) = (w / 2.0, h / 2.0);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">",
        spec.width, spec.height
    );
    out.push_str("<style>\n.axis{stroke:#b0b0b0;stroke-width:1;fill:none}\n.sector{stroke:#2f5d8a;stroke-width:1.5}\n.endpoint{stroke:#b03a2e;stroke-width:2.5}\ntext{font-family:serif;font-size:12px;fill:#222}\n</style>\n");
    let _ = writeln!(
        out,
        "<rect width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>",
        spec.width, spec.height
    );

    // Axes and ticks go into a single path so that <line> is reserved for the fan.
    let mut axis = format!("M0 {cy:.2} H{w:.2} M{cx:.2} 0 V{h:.2}");
    let step = 1.0 / spec.scale;
    if step >= 4.0 {
        let mut k = 1.0;
        while k * step <= cx.max(cy) {
            let d = k * step;
            for x in [cx + d, cx - d] {
                if (0.0..=w).contains(&x) {
                    let _ = write!(axis, " M{x:.2} {:.2} V{:.2}", cy - 3.0, cy + 3.0);
                }
            }
            for y in [cy + d, cy - d] {
                if (0.0..=h).contains(&y) {
                    let _ = write!(axis, " M{:.2} {y:.2} H{:.2}", cx - 3.0, cx + 3.0);
                }
            }
            k += 1.0;
        }
    }
    let _ = writeln!(out, "<path class=\"axis\" d=\"{axis}\"/>");

    let last = spec.vectors.len() - 1;
    out.push_str("<g class=\"fan\">\n");
    for (i, v) in spec.vectors.iter().enumerate() {
        let (dx, dy) = unit_box_direction(v);
        let ((x1, y1), (x2, y2)) = clip_line(dx, dy, w, h);
        let class = if i == 0 || i == last {
            "endpoint"
        } else {
            "sector"
        };
        let _ = writeln!(
            out,
            "<line class=\"{class}\" data-index=\"{i}\" data-slope=\"{}\" x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\"/>",
            slope_attr(v)
        );
    }
    out.push_str("</g>\n");

    if spec.labels {
        out.push_str("<g class=\"labels\">\n");
        for v in &spec.vectors {
            let (dx, dy) = unit_box_direction(v);
            let ((x1, y1), _) = clip_line(dx, dy, w, h);
            let lx = cx + 0.8 * (x1 - cx);
            let ly = cy + 0.8 * (y1 - cy);
            let anchor = if dx < -1e-9 { "end" } else { "start" };
            let _ = writeln!(
                out,
                "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"{anchor}\">{}</text>",
                lx + if anchor == "end" { -4.0 } else { 4.0 },
                ly - 4.0,
                slope_label(v)
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivec;

    #[test]
    fn slope_labels() {
        assert_eq!(slope_label(&ivec![2, 1]), "y = (1/2)x");
        assert_eq!(slope_label(&ivec![1, 1]), "y = x");
        assert_eq!(slope_label(&ivec![1, 7]), "y = 7x");
        assert_eq!(slope_label(&ivec![-2, 11]), "y = \u{2212}(11/2)x");
        assert_eq!(slope_label(&ivec![-161, 73]), "y = \u{2212}(73/161)x");
        assert_eq!(slope_label(&ivec![0, 3]), "x = 0");
        assert_eq!(slope_label(&ivec![-3, 0]), "y = 0");
        assert_eq!(slope_label(&ivec![1, -1]), "y = \u{2212}x");
    }

    #[test]
    fn clipping_hits_the_boundary() {
        let ((x1, y1), (x2, y2)) = clip_line(1.0, 0.5, 400.0, 200.0);
        assert_eq!((x1, y1), (400.0, 0.0));
        assert_eq!((x2, y2), (0.0, 200.0));
        let ((x1, y1), _) = clip_line(0.0, 1.0, 400.0, 200.0);
        assert_eq!((x1, y1), (200.0, 0.0));
    }

    #[test]
    fn rejects_bad_specs() {
        let mut spec = PlotSpec {
            vectors: vec![ivec![1, 2, 3]],
            width: 100,
            height: 100,
            scale: 0.1,
            labels: false,
        };
        assert!(matches!(render_svg(&spec), Err(Error::Unsupported(_))));
        spec.vectors = vec![ivec![1, 0]];
        spec.width = 0;
        assert!(render_svg(&spec).is_err());
    }

    #[test]
    fn perpendicular_pair() {
        let spec = PlotSpec {
            vectors: vec![ivec![1, 0], ivec![0, 1]],
            width: 200,
            height: 100,
            scale: 0.1,
            labels: true,
        };
        let svg = render_svg(&spec).unwrap();
        assert_eq!(svg.matches("<line ").count(), 2);
        assert!(svg.contains("x1=\"200.00\" y1=\"50.00\" x2=\"0.00\" y2=\"50.00\""));
        assert!(svg.contains("x1=\"100.00\" y1=\"0.00\" x2=\"100.00\" y2=\"100.00\""));
        assert!(svg.contains(">x = 0</text>"));
    }
}
