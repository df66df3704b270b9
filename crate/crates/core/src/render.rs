//! Deterministic SVG pictures of apartments and enclosures.
//!
//! Root coordinates are drawn through a Cholesky factor of the Gram matrix, so
//! angles and lengths in the picture are the Euclidean ones.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::apartment::{enclosure_contains, ApartmentError, Point};
use crate::lexring::LinLex;
use crate::rootsystem::{root_datum, Phi, RootDatum};
use crate::scalar::ratio;
use crate::weyl::WeylGroup;
use crate::Q;

const W: f64 = 640.0;
const H: f64 = 640.0;

/// Plane embedding of root coordinates.
fn embed(rd: &RootDatum, v: &[f64]) -> (f64, f64) {
    match rd.rank {
        1 => (v[0] * (rd.gram[0][0] as f64).sqrt(), 0.0),
        _ => {
            let g = &rd.gram;
            let l11 = (g[0][0] as f64).sqrt();
            let l21 = g[1][0] as f64 / l11;
            let l22 = (g[1][1] as f64 - l21 * l21).sqrt();
            (l11 * v[0] + l21 * v[1], l22 * v[1])
        }
    }
}

struct Svg {
    body: String,
}

impl Svg {
    fn new(title: &str) -> Self {
        let mut body = String::new();
        let _ = writeln!(
            body,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(body, r#"<title>{title}</title>"#);
        let _ = writeln!(body, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
        Svg { body }
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64), style: &str) {
        let _ = writeln!(self.body, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" {style}/>"#, a.0, a.1, b.0, b.1);
    }

    fn circle(&mut self, c: (f64, f64), r: f64, style: &str) {
        let _ = writeln!(self.body, r#"<circle cx="{:.2}" cy="{:.2}" r="{r}" {style}/>"#, c.0, c.1);
    }

    fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, style: &str) {
        let _ = writeln!(self.body, r#"<rect x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{h:.2}" {style}/>"#);
    }

    fn text(&mut self, p: (f64, f64), s: &str, anchor: &str) {
        let _ = writeln!(self.body, r#"<text x="{:.2}" y="{:.2}" text-anchor="{anchor}">{s}</text>"#, p.0, p.1);
    }

    fn arrow(&mut self, a: (f64, f64), b: (f64, f64), colour: &str) {
        self.line(a, b, &format!(r#"stroke="{colour}" stroke-width="2""#));
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let len = (dx * dx + dy * dy).sqrt().max(1e-9);
        let (ux, uy) = (dx / len, dy / len);
        let p1 = (b.0 - 9.0 * ux + 4.5 * uy, b.1 - 9.0 * uy - 4.5 * ux);
        let p2 = (b.0 - 9.0 * ux - 4.5 * uy, b.1 - 9.0 * uy + 4.5 * ux);
        let _ = writeln!(
            self.body,
            r#"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{colour}"/>"#,
            b.0, b.1, p1.0, p1.1, p2.0, p2.1
        );
    }

    fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

fn f(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `Σ(2, Φ)` for rank one or two.
pub fn render_apartment(phi: Phi) -> String {
    let rd = root_datum(phi);
    match rd.rank {
        1 => render_a1(&rd),
        _ => render_rank2(&rd),
    }
}

/// The line `ⁿ*ℝ` with the real components `2nω₂ + ℝ` and the walls of the generators.
fn render_a1(rd: &RootDatum) -> String {
    let mut svg = Svg::new("Babel apartment of type A1, level 2");
    let y0 = H / 2.0;
    let step = W / 6.0;
    let centre = |k: i64| W / 2.0 + step * k as f64;
    svg.line((10.0, y0), (W - 10.0, y0), r##"stroke="#bbb" stroke-dasharray="4 4""##);
    for k in -2i64..=2 {
        // each component is a copy of ℝ; drawn as a bounded bar around its ω₂-part
        let x = centre(k);
        svg.rect(x - step * 0.4, y0 - 10.0, step * 0.8, 20.0, r##"fill="#cfe3f7" stroke="#2b6cb0""##);
        svg.circle((x, y0), 3.0, r#"fill="black""#);
        let label = if k == 0 { "ℝ".to_string() } else { format!("{}ω₂ + ℝ", 2 * k) };
        svg.text((x, y0 + 34.0), &label, "middle");
    }
    let g = WeylGroup::new(Phi::A1, 2);
    let zero = Point::<Q>::zero(1, 2);
    for (name, dy) in [("s", -40.0), ("w1", -62.0), ("w2", -84.0)] {
        let w = g.generator(name).expect("A1 generator");
        let image = g.act(&w, &zero);
        // the wall of a reflection is the midpoint between 0 and its image
        let mid = &image.coords[0].scale(&ratio(1, 2));
        let omega = f(mid.at(2)) / rd.coroot_scale::<Q>(0).to_f64().unwrap_or(1.0);
        let real = f(mid.at(1));
        let x = W / 2.0 + step * omega / 1.0 + real * step * 0.4;
        svg.line((x, y0 - 14.0), (x, y0 + dy + 6.0), r##"stroke="#c53030""##);
        svg.text((x, y0 + dy), &format!("{name}: {mid}"), "middle");
    }
    svg.text((W / 2.0, 24.0), "Σ(2, A1): components 2nω₂ + ℝ", "middle");
    svg.finish()
}

/// Nine components around `0` in the `ω₂` lattice, with the positive roots drawn in the middle one.
fn render_rank2(rd: &RootDatum) -> String {
    let mut svg = Svg::new(&format!("Babel apartment of type {}, level 2", rd.phi));
    let cell = W / 3.4;
    let scale = rd.coroot_scale::<Q>(0).to_f64().unwrap_or(1.0);
    let scale2 = rd.coroot_scale::<Q>(1).to_f64().unwrap_or(1.0);
    for i in -1i64..=1 {
        for j in -1i64..=1 {
            let cx = W / 2.0 + (i as f64) * cell * 1.05;
            let cy = H / 2.0 - (j as f64) * cell * 1.05;
            let shade = if i == 0 && j == 0 { "#fde8c8" } else { "#dbe9f6" };
            svg.rect(cx - cell / 2.0, cy - cell / 2.0, cell, cell, &format!(r##"fill="{shade}" stroke="#4a5568""##));
            let lam = [i as f64 * scale, j as f64 * scale2];
            svg.text((cx, cy + cell / 2.0 - 8.0), &format!("({}, {})ω₂ + V", lam[0], lam[1]), "middle");
        }
    }
    let unit = cell * 0.17 / (rd.gram[0][0] as f64).sqrt();
    let o = (W / 2.0, H / 2.0);
    for r in rd.positive_roots.iter() {
        let v: Vec<f64> = r.iter().map(|&x| x as f64).collect();
        let (x, y) = embed(rd, &v);
        let tip = (o.0 + x * unit, o.1 - y * unit);
        svg.arrow(o, tip, "#c53030");
        let lab = (o.0 + x * unit * 1.18, o.1 - y * unit * 1.18 + 4.0);
        svg.text(lab, &format!("{:?}", r), "middle");
    }
    svg.text((W / 2.0, 24.0), &format!("Σ(2, {}): components λω₂ + V over the coroot lattice", rd.phi), "middle");
    svg.finish()
}

/// Shades the `ω₂`-lattice points whose real component meets `cl(Ω)`, for rank two.
pub fn render_enclosure(rd: &RootDatum, omega: &[Point<Q>]) -> Result<String, ApartmentError> {
    if rd.rank != 2 {
        return Err(ApartmentError::PreconditionViolated("enclosure pictures need rank 2".into()));
    }
    let mut svg = Svg::new(&format!("Enclosure in Σ(2, {})", rd.phi));
    let step = [rd.coroot_scale::<Q>(0), rd.coroot_scale::<Q>(1)];
    let lo = |i: usize| omega.iter().map(|p| f(p.coords[i].at(2))).fold(f64::INFINITY, f64::min) - 2.0;
    let hi = |i: usize| omega.iter().map(|p| f(p.coords[i].at(2))).fold(f64::NEG_INFINITY, f64::max) + 2.0;
    let (lo0, hi0, lo1, hi1) = (lo(0), hi(0), lo(1), hi(1));
    let corners = [(lo0, lo1), (lo0, hi1), (hi0, lo1), (hi0, hi1)].map(|(a, b)| embed(rd, &[a, b]));
    let (xmin, xmax) = corners.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |m, c| (m.0.min(c.0), m.1.max(c.0)));
    let (ymin, ymax) = corners.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |m, c| (m.0.min(c.1), m.1.max(c.1)));
    let s = (W - 80.0) / (xmax - xmin).max(ymax - ymin);
    let at = |v: [f64; 2]| {
        let (x, y) = embed(rd, &v);
        (40.0 + (x - xmin) * s, H - 40.0 - (y - ymin) * s)
    };
    let grid = |l: f64, h: f64, st: f64| {
        let (a, b) = ((l / st).ceil() as i64, (h / st).floor() as i64);
        (a..=b).map(move |k| k as f64 * st)
    };
    let (s0, s1) = (f(&step[0]), f(&step[1]));
    let mut inside = 0;
    for u in grid(lo0, hi0, s0) {
        for v in grid(lo1, hi1, s1) {
            let z = Point::new(vec![lin(u), lin(v)]);
            let hit = enclosure_contains(rd, omega, &z)?;
            inside += hit as usize;
            let style = if hit { r##"fill="#2f855a""## } else { r##"fill="none" stroke="#a0aec0""## };
            svg.circle(at([u, v]), if hit { 5.0 } else { 3.0 }, style);
        }
    }
    for (k, p) in omega.iter().enumerate() {
        let c = at([f(p.coords[0].at(2)), f(p.coords[1].at(2))]);
        svg.circle(c, 7.0, r##"fill="none" stroke="#c53030" stroke-width="2""##);
        svg.text((c.0 + 10.0, c.1 - 10.0), &format!("Ω{}", k + 1), "start");
    }
    svg.text((W / 2.0, 20.0), &format!("ω₂-parts of components meeting cl(Ω): {inside}"), "middle");
    Ok(svg.finish())
}

fn lin(x: f64) -> LinLex<Q> {
    let q = Q::from_float(x).unwrap_or_default();
    LinLex::new(vec![ratio(0, 1), q])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite::figure4_omega;

    #[test]
    fn pictures_are_deterministic() {
        for phi in [Phi::A1, Phi::A2, Phi::B2] {
            assert_eq!(render_apartment(phi), render_apartment(phi));
        }
    }

    #[test]
    fn b2_has_nine_components_and_four_roots() {
        let svg = render_apartment(Phi::B2);
        assert_eq!(svg.matches("<rect").count(), 1 + 9);
        assert_eq!(svg.matches("<polygon").count(), 4);
    }

    #[test]
    fn a1_labels_generators() {
        let svg = render_apartment(Phi::A1);
        for s in ["s:", "w1:", "w2:", "4ω₂ + ℝ"] {
            assert!(svg.contains(s), "{s}");
        }
    }

    #[test]
    fn figure4_shading_contains_the_vertices() {
        let rd = root_datum(Phi::A2);
        let svg = render_enclosure(&rd, &figure4_omega()).unwrap();
        assert!(svg.contains("Ω2"));
        assert!(svg.matches(r##"fill="#2f855a""##).count() > 10);
        assert!(render_enclosure(&root_datum(Phi::A1), &[]).is_err());
    }
}
