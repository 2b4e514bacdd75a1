//! Semicircle diagrams in the `(b, t)` half-plane.
//!
//! Exact values travel in a JSON `<metadata>` block; decimals appear only in
//! the drawing itself, with 12 significant digits.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{floor_sqrt, format_rational, int, serde_rational, to_f64, Rational};
use crate::walls::{ExactRadical, WallCircle};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledWall {
    #[serde(flatten)]
    pub circle: WallCircle,
    pub label: String,
}

/// A Gieseker-chamber threshold `u > value` computed at one `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GiesekerMark {
    #[serde(with = "serde_rational")]
    pub b: Rational,
    pub u: ExactRadical,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallDiagram {
    pub walls: Vec<LabeledWall>,
    pub gieseker_u: Option<GiesekerMark>,
    #[serde(with = "range")]
    pub b_range: (Rational, Rational),
    #[serde(with = "range")]
    pub t_range: (Rational, Rational),
}

mod range {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &(Rational, Rational), s: S) -> std::result::Result<S::Ok, S::Error> {
        [format_rational(&r.0), format_rational(&r.1)].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<(Rational, Rational), D::Error> {
        let [lo, hi] = <[String; 2]>::deserialize(d)?;
        let p = |t: &str| crate::rational::parse_rational(t).map_err(serde::de::Error::custom);
        Ok((p(&lo)?, p(&hi)?))
    }
}

impl WallDiagram {
    /// A viewport with integer margins that contains every semicircle and
    /// the Gieseker mark.
    pub fn fit(walls: Vec<LabeledWall>, gieseker_u: Option<GiesekerMark>) -> Self {
        let mut b_lo: Option<Rational> = None;
        let mut b_hi: Option<Rational> = None;
        let mut t_hi = int(1);
        let mut widen = |lo: Rational, hi: Rational| {
            if b_lo.as_ref().is_none_or(|x| lo < *x) {
                b_lo = Some(lo);
            }
            if b_hi.as_ref().is_none_or(|x| hi > *x) {
                b_hi = Some(hi);
            }
        };
        for w in &walls {
            let reach = Rational::from_integer(floor_sqrt(&w.circle.radius_sq)) + int(1);
            widen(&w.circle.center_b - &reach, &w.circle.center_b + &reach);
            if reach > t_hi {
                t_hi = reach;
            }
        }
        if let Some(g) = &gieseker_u {
            widen(&g.b - int(1), &g.b + int(1));
            // u = a + √rad ≤ |a| + rad + 1
            let u_hi = g.u.a.abs() + &g.u.rad + int(1);
            let top = Rational::from_integer(floor_sqrt(&u_hi)) + int(1);
            if top > t_hi {
                t_hi = top;
            }
        }
        let b_range = (b_lo.unwrap_or_else(|| int(-1)), b_hi.unwrap_or_else(|| int(1)));
        WallDiagram { walls, gieseker_u, b_range, t_range: (Rational::zero(), t_hi) }
    }
}

/// `x` with 12 significant digits, trailing zeros removed.
fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 40.0;
const META_OPEN: &str = "<metadata id=\"wall-data\"><![CDATA[";
const META_CLOSE: &str = "]]></metadata>";

pub fn render_svg(diagram: &WallDiagram) -> Result<String> {
    let (b0, b1) = (to_f64(&diagram.b_range.0), to_f64(&diagram.b_range.1));
    let t1 = to_f64(&diagram.t_range.1);
    if b1 <= b0 || t1 <= 0.0 {
        return Err(Error::domain("empty viewport"));
    }
    let sx = WIDTH / (b1 - b0);
    let sy = HEIGHT / t1;
    let x = |b: f64| MARGIN + (b - b0) * sx;
    let y = |t: f64| MARGIN + HEIGHT - t * sy;
    let meta = serde_json::to_string(diagram).map_err(|e| Error::internal(e.to_string()))?;

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        num(WIDTH + 2.0 * MARGIN),
        num(HEIGHT + 2.0 * MARGIN),
        num(WIDTH + 2.0 * MARGIN),
        num(HEIGHT + 2.0 * MARGIN)
    ));
    s.push_str(&format!("{META_OPEN}{meta}{META_CLOSE}\n"));
    // axes: b along the bottom, t on the left edge of the viewport
    s.push_str(&format!(
        "<line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        num(x(b0)),
        num(y(0.0)),
        num(x(b1)),
        num(y(0.0))
    ));
    s.push_str(&format!(
        "<line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        num(x(b0)),
        num(y(0.0)),
        num(x(b0)),
        num(y(t1))
    ));
    s.push_str(&format!("<text x=\"{}\" y=\"{}\">b</text>\n", num(x(b1) - 10.0), num(y(0.0) + 20.0)));
    s.push_str(&format!("<text x=\"{}\" y=\"{}\">t</text>\n", num(x(b0) - 20.0), num(y(t1) + 10.0)));
    for w in &diagram.walls {
        let c = to_f64(&w.circle.center_b);
        let r = to_f64(&w.circle.radius_sq).sqrt();
        s.push_str(&format!(
            "<path class=\"wall\" d=\"M {} {} A {} {} 0 0 1 {} {}\" fill=\"none\" stroke=\"steelblue\"/>\n",
            num(x(c - r)),
            num(y(0.0)),
            num(r * sx),
            num(r * sy),
            num(x(c + r)),
            num(y(0.0))
        ));
        s.push_str(&format!("<text class=\"label\" x=\"{}\" y=\"{}\">{}</text>\n", num(x(c)), num(y(r) - 4.0), escape(&w.label)));
    }
    if let Some(g) = &diagram.gieseker_u {
        let t = g.u.to_f64().max(0.0).sqrt();
        s.push_str(&format!(
            "<line class=\"gieseker\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"firebrick\" stroke-dasharray=\"6 4\"/>\n",
            num(x(b0)),
            num(y(t)),
            num(x(b1)),
            num(y(t))
        ));
        s.push_str(&format!(
            "<text class=\"label\" x=\"{}\" y=\"{}\">Gieseker bound at b = {}</text>\n",
            num(x(b0) + 4.0),
            num(y(t) - 4.0),
            escape(&format_rational(&g.b))
        ));
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// The diagram embedded by [`render_svg`].
pub fn parse_svg_metadata(svg: &str) -> Result<WallDiagram> {
    let start = svg.find(META_OPEN).ok_or_else(|| Error::parse("no wall metadata in SVG"))? + META_OPEN.len();
    let len = svg[start..].find(META_CLOSE).ok_or_else(|| Error::parse("unterminated wall metadata"))?;
    serde_json::from_str(&svg[start..start + len]).map_err(|e| Error::parse(format!("wall metadata: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn one_wall() -> WallDiagram {
        let w = LabeledWall { circle: WallCircle { center_b: int(-2), radius_sq: rat(37, 10) }, label: "k=1".into() };
        WallDiagram::fit(vec![w], None)
    }

    #[test]
    fn significant_digits() {
        assert_eq!(num(1.0), "1");
        assert_eq!(num(-2.0 - 3.7f64.sqrt()), "-3.92353840617");
        assert_eq!(num(123456.7890123456), "123456.789012");
        assert_eq!(num(0.000123456789012345), "0.000123456789012");
    }

    #[test]
    fn empty_diagram_has_axes_only() {
        let svg = render_svg(&WallDiagram::fit(Vec::new(), None)).unwrap();
        assert_eq!(svg.matches("class=\"axis\"").count(), 2);
        assert!(!svg.contains("class=\"wall\""));
    }

    #[test]
    fn arc_endpoints() {
        let d = one_wall();
        assert_eq!(d.b_range, (int(-4), int(0)));
        let svg = render_svg(&d).unwrap();
        // b = −2 ∓ √3.7 at scale 200 px per unit from b = −4
        let lo = 40.0 + (-2.0 - 3.7f64.sqrt() + 4.0) * 200.0;
        let hi = 40.0 + (-2.0 + 3.7f64.sqrt() + 4.0) * 200.0;
        assert!(svg.contains(&format!("M {} 440 A", num(lo))));
        assert!(svg.contains(&format!("0 0 1 {} 440", num(hi))));
    }

    #[test]
    fn metadata_round_trip() {
        let mut d = one_wall();
        d.gieseker_u = Some(GiesekerMark { b: rat(-1, 10), u: ExactRadical::new(rat(7, 2), rat(1, 3)) });
        let svg = render_svg(&d).unwrap();
        assert_eq!(parse_svg_metadata(&svg).unwrap(), d);
        assert!(parse_svg_metadata("<svg/>").is_err());
    }
}
