use std::fmt::Write;

use super::Plane;

const SIZE: f64 = 400.0;
const RADIUS: f64 = 180.0;

/// Orthographic projection of sampled points, with the sphere's unit-circle
/// silhouette. Output depends only on the inputs.
pub fn render_svg(title: &str, plane: Plane, points: &[(f64, f64)]) -> String {
    let c = SIZE / 2.0;
    let (u, v) = match plane {
        Plane::Xy => ("x", "y"),
        Plane::Xz => ("x", "z"),
        Plane::Yz => ("y", "z"),
    };
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(svg, "<title>{}</title>", escape(title));
    let _ = writeln!(svg, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r##"<line x1="{:.3}" y1="{c:.3}" x2="{:.3}" y2="{c:.3}" stroke="#dddddd" stroke-width="1"/>"##,
        c - RADIUS,
        c + RADIUS
    );
    let _ = writeln!(
        svg,
        r##"<line x1="{c:.3}" y1="{:.3}" x2="{c:.3}" y2="{:.3}" stroke="#dddddd" stroke-width="1"/>"##,
        c - RADIUS,
        c + RADIUS
    );
    let _ = writeln!(
        svg,
        r##"<circle id="silhouette" cx="{c:.3}" cy="{c:.3}" r="{RADIUS:.3}" fill="none" stroke="#888888" stroke-width="1"/>"##
    );
    let _ = writeln!(
        svg,
        r##"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="12" fill="#555555">{u}</text>"##,
        c + RADIUS + 4.0,
        c + 4.0
    );
    let _ = writeln!(
        svg,
        r##"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="12" fill="#555555">{v}</text>"##,
        c - 4.0,
        c - RADIUS - 6.0
    );
    let coords: Vec<String> = points
        .iter()
        .map(|&(x, y)| format!("{:.3},{:.3}", c + RADIUS * x, c - RADIUS * y))
        .collect();
    let _ = writeln!(
        svg,
        r##"<polyline id="curve" fill="none" stroke="#c0392b" stroke-width="1.5" points="{}"/>"##,
        coords.join(" ")
    );
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_escaped() {
        let pts = [(0.0, 0.0), (1.0, 0.0), (0.0, -1.0)];
        let a = render_svg("a<b", Plane::Xy, &pts);
        assert_eq!(a, render_svg("a<b", Plane::Xy, &pts));
        assert!(a.contains("a&lt;b"));
        assert!(a.contains(r#"points="200.000,200.000 380.000,200.000 200.000,380.000""#));
    }
}
