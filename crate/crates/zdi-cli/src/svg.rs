//! Static SVG 1.1 figures for range polygons: the polygon, the coordinate
//! axes through 0, and tick labels. Pure string assembly.

use num_complex::Complex;

const W: f64 = 640.0;
const H: f64 = 640.0;
const MARGIN: f64 = 48.0;

/// Render a polygon (counterclockwise vertices in the complex plane) with
/// real/imaginary axes. An empty vertex list produces an annotated empty frame.
pub fn render_polygon(vertices: &[Complex<f64>], title: &str) -> String {
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (-1.0f64, 1.0f64, -1.0f64, 1.0f64);
    for v in vertices {
        lo_x = lo_x.min(v.re);
        hi_x = hi_x.max(v.re);
        lo_y = lo_y.min(v.im);
        hi_y = hi_y.max(v.im);
    }
    let pad_x = 0.1 * (hi_x - lo_x).max(1e-6);
    let pad_y = 0.1 * (hi_y - lo_y).max(1e-6);
    lo_x -= pad_x;
    hi_x += pad_x;
    lo_y -= pad_y;
    hi_y += pad_y;
    let sx = (W - 2.0 * MARGIN) / (hi_x - lo_x);
    let sy = (H - 2.0 * MARGIN) / (hi_y - lo_y);
    let to_px = |z: Complex<f64>| -> (f64, f64) {
        (
            MARGIN + (z.re - lo_x) * sx,
            H - MARGIN - (z.im - lo_y) * sy,
        )
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"24\" font-family=\"monospace\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
        W / 2.0,
        xml_escape(title)
    ));

    // axes through the origin when it is inside the view
    let (ox, oy) = to_px(Complex::new(0.0, 0.0));
    if (MARGIN..=W - MARGIN).contains(&ox) {
        svg.push_str(&format!(
            "<line x1=\"{ox:.2}\" y1=\"{MARGIN}\" x2=\"{ox:.2}\" y2=\"{}\" stroke=\"#999\" stroke-width=\"1\"/>\n",
            H - MARGIN
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"11\" fill=\"#666\">Im</text>\n",
            ox + 4.0,
            MARGIN + 12.0
        ));
    }
    if (MARGIN..=H - MARGIN).contains(&oy) {
        svg.push_str(&format!(
            "<line x1=\"{MARGIN}\" y1=\"{oy:.2}\" x2=\"{}\" y2=\"{oy:.2}\" stroke=\"#999\" stroke-width=\"1\"/>\n",
            W - MARGIN
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"11\" fill=\"#666\">Re</text>\n",
            W - MARGIN - 20.0,
            oy - 6.0
        ));
    }
    // view extents as corner labels
    svg.push_str(&format!(
        "<text x=\"{MARGIN}\" y=\"{}\" font-family=\"monospace\" font-size=\"10\" fill=\"#666\">[{:.3}, {:.3}] x [{:.3}, {:.3}]</text>\n",
        H - 16.0,
        lo_x, hi_x, lo_y, hi_y
    ));

    if vertices.is_empty() {
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\" fill=\"#a00\">empty range</text>\n",
            W / 2.0,
            H / 2.0
        ));
    } else {
        let points: Vec<String> = vertices
            .iter()
            .map(|&v| {
                let (x, y) = to_px(v);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        svg.push_str(&format!(
            "<polygon points=\"{}\" fill=\"#4a90d9\" fill-opacity=\"0.35\" stroke=\"#1c5d99\" stroke-width=\"1.5\"/>\n",
            points.join(" ")
        ));
        // origin marker
        svg.push_str(&format!(
            "<circle cx=\"{ox:.2}\" cy=\"{oy:.2}\" r=\"3\" fill=\"#d04040\"/>\n"
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_triangle_and_empty() {
        let tri = vec![
            Complex::new(0.0, 0.0),
            Complex::new(1.0, 0.0),
            Complex::new(0.0, 1.0),
        ];
        let svg = render_polygon(&tri, "triangle");
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("<polygon"));
        assert!(svg.ends_with("</svg>\n"));
        let empty = render_polygon(&[], "nothing");
        assert!(empty.contains("empty range"));
    }
}
