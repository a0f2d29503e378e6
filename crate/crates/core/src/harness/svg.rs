use std::fmt::Write as _;
use std::path::Path;

use crate::geo::{Polygon, Scene, Vec2};

use super::HarnessError;

/// Pixels per meter.
const SCALE: f64 = 400.0;
const MARGIN: f64 = 20.0;
const EMPTY_SIDE: f64 = 400.0;

struct Frame {
    min: Vec2,
    max: Vec2,
}

impl Frame {
    fn of(scene: &Scene) -> Option<Frame> {
        let mut pts: Vec<Vec2> = vec![];
        for s in &scene.surfaces {
            pts.extend(&s.footprint.points);
        }
        for o in &scene.objects {
            pts.extend(o.world_footprint().points);
        }
        for a in &scene.agents {
            let r = a.reach[3];
            pts.push(Vec2::new(a.base.x - r, a.base.y - r));
            pts.push(Vec2::new(a.base.x + r, a.base.y + r));
        }
        for z in &scene.zones {
            pts.push(Vec2::new(z.point.x, z.point.y));
        }
        let first = *pts.first()?;
        let (min, max) = pts.iter().fold((first, first), |(lo, hi), p| {
            (
                Vec2::new(lo.x.min(p.x), lo.y.min(p.y)),
                Vec2::new(hi.x.max(p.x), hi.y.max(p.y)),
            )
        });
        Some(Frame { min, max })
    }

    fn size(&self) -> (f64, f64) {
        (
            (self.max.x - self.min.x) * SCALE + 2.0 * MARGIN,
            (self.max.y - self.min.y) * SCALE + 2.0 * MARGIN,
        )
    }

    /// Scene x to the right, scene y up.
    fn px(&self, p: Vec2) -> (f64, f64) {
        ((p.x - self.min.x) * SCALE + MARGIN, (self.max.y - p.y) * SCALE + MARGIN)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn polygon(out: &mut String, f: &Frame, poly: &Polygon, class: &str, fill: &str) {
    let pts: Vec<String> = poly
        .points
        .iter()
        .map(|p| {
            let (x, y) = f.px(*p);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(
        out,
        r#"  <polygon class="{class}" points="{}" fill="{fill}" stroke="black" stroke-width="1"/>"#,
        pts.join(" ")
    );
}

fn label(out: &mut String, f: &Frame, at: Vec2, text: &str) {
    let (x, y) = f.px(at);
    let _ = writeln!(
        out,
        r#"  <text x="{x:.2}" y="{y:.2}" font-family="sans-serif" font-size="10" text-anchor="middle">{}</text>"#,
        escape(text)
    );
}

fn centroid(poly: &Polygon) -> Vec2 {
    let n = poly.points.len().max(1) as f64;
    let (x, y) = poly.points.iter().fold((0.0, 0.0), |(x, y), p| (x + p.x, y + p.y));
    Vec2::new(x / n, y / n)
}

/// Top-down view: surfaces, object footprints, zones, and agents with one
/// circle per effort level's reach. Same scene, same bytes.
pub fn svg_string(scene: &Scene) -> String {
    let mut out = String::new();
    let Some(f) = Frame::of(scene) else {
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{EMPTY_SIDE}" height="{EMPTY_SIDE}" viewBox="0 0 {EMPTY_SIDE} {EMPTY_SIDE}">"#
        );
        let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
        out.push_str("</svg>\n");
        return out;
    };
    let (w, h) = f.size();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.2} {h:.2}">"#
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    for s in &scene.surfaces {
        let fill = if s.placeable { "#e8dcc0" } else { "#b0b0b0" };
        polygon(&mut out, &f, &s.footprint, "surface", fill);
        label(&mut out, &f, centroid(&s.footprint), &s.name);
    }
    for o in &scene.objects {
        let fp = o.world_footprint();
        polygon(&mut out, &f, &fp, "object", "#7fa7d9");
        label(&mut out, &f, centroid(&fp), &o.name);
    }
    for z in &scene.zones {
        let (x, y) = f.px(Vec2::new(z.point.x, z.point.y));
        let _ = writeln!(
            out,
            r#"  <circle class="zone" cx="{x:.2}" cy="{y:.2}" r="3" fill="green"/>"#
        );
        label(&mut out, &f, Vec2::new(z.point.x, z.point.y + 0.03), &z.name);
    }
    for a in &scene.agents {
        let (x, y) = f.px(a.base);
        for (e, r) in a.reach.iter().enumerate() {
            let _ = writeln!(
                out,
                r#"  <circle class="reach" data-effort="{}" cx="{x:.2}" cy="{y:.2}" r="{:.2}" fill="none" stroke="grey" stroke-dasharray="4 3"/>"#,
                e + 1,
                r * SCALE
            );
        }
        let _ = writeln!(
            out,
            r#"  <circle class="agent" cx="{x:.2}" cy="{y:.2}" r="6" fill="crimson"/>"#
        );
        label(&mut out, &f, Vec2::new(a.base.x, a.base.y - 0.04), &a.name);
    }
    out.push_str("</svg>\n");
    out
}

pub fn snapshot(scene: &Scene, path: &Path) -> Result<(), HarnessError> {
    std::fs::write(path, svg_string(scene))?;
    Ok(())
}
