//! Library side of the `zdi` CLI: JSON matrix and certificate documents,
//! report assembly, and SVG/CSV export. The binary in `main.rs` is a thin
//! dispatcher over these.

pub mod io;
pub mod report;
pub mod svg;

use zdi_core::range::RangePolygon;

/// CSV polygon export: `theta,support` sample rows followed by a
/// `vertex_re,vertex_im` block.
pub fn polygon_csv(poly: &RangePolygon<f64>) -> String {
    let mut out = String::from("theta,support\n");
    for &(theta, h) in &poly.support_samples {
        out.push_str(&format!("{theta},{h}\n"));
    }
    out.push_str("vertex_re,vertex_im\n");
    for v in &poly.vertices {
        out.push_str(&format!("{},{}\n", v.re, v.im));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_both_blocks() {
        let a = zdi_core::Matrix64::identity(2);
        let poly = zdi_core::range::range_polygon(&a, 1, 16).unwrap();
        let csv = polygon_csv(&poly);
        assert!(csv.starts_with("theta,support\n"));
        assert!(csv.contains("vertex_re,vertex_im\n"));
        assert_eq!(csv.lines().count(), 2 + 16 + poly.vertices.len());
    }
}
