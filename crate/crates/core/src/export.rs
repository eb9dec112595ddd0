//! CSV, JSON and SVG writers for scan rows.

use std::fmt::Write as _;
use std::io::{self, Write};

use serde::Serialize;

use crate::domain::{convex_lower, Region};
use crate::scan::{ScanRow, What};

pub const CSV_HEADER: &str = "xhat,yhat,in_region,m1,m3,m,F,index,n_complex,n_real,n_imag,max_real,stable";

/// 17 significant digits, empty for non-finite values; −0 prints as 0.
pub fn fmt_float(v: f64) -> String {
    if v.is_finite() {
        format!("{:.16e}", v + 0.0)
    } else {
        String::new()
    }
}

fn opt<T>(v: Option<T>, f: impl Fn(T) -> String) -> String {
    v.map(f).unwrap_or_default()
}

fn bit(b: bool) -> String {
    if b { "1" } else { "0" }.to_string()
}

pub fn csv_line(row: &ScanRow) -> String {
    let fields = [
        fmt_float(row.xhat),
        fmt_float(row.yhat),
        bit(row.in_region),
        opt(row.masses, |m| fmt_float(m.m1)),
        opt(row.masses, |m| fmt_float(m.m3)),
        opt(row.masses, |m| fmt_float(m.m)),
        fmt_float(row.f),
        opt(row.index, |i| i.to_string()),
        opt(row.klass, |k| k.0.to_string()),
        opt(row.klass, |k| k.1.to_string()),
        opt(row.klass, |k| k.2.to_string()),
        opt(row.max_real, fmt_float),
        opt(row.stable, bit),
    ];
    fields.join(",")
}

pub fn write_csv<W: Write + ?Sized>(rows: &[ScanRow], out: &mut W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", csv_line(row))?;
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanMeta {
    pub version: String,
    pub real_tol: f64,
    pub gap_tol: f64,
    pub grid: usize,
    pub region: String,
    pub what: What,
}

impl ScanMeta {
    pub fn new(region: Region, grid: usize, what: What, real_tol: f64, gap_tol: f64) -> Self {
        ScanMeta {
            version: env!("CARGO_PKG_VERSION").to_string(),
            real_tol,
            gap_tol,
            grid,
            region: region.name().to_string(),
            what,
        }
    }
}

#[derive(Serialize)]
struct ScanDocument<'a> {
    meta: &'a ScanMeta,
    rows: &'a [ScanRow],
}

pub fn write_json<W: Write + ?Sized>(meta: &ScanMeta, rows: &[ScanRow], out: &mut W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, &ScanDocument { meta, rows })?;
    writeln!(out)
}

/// Colors of the eigenvalue classes, keyed by (complex, real, imaginary).
pub const CLASS_COLORS: [((usize, usize, usize), &str); 9] = [
    ((8, 0, 0), "#ff00ff"),
    ((4, 2, 2), "#1f4fff"),
    ((4, 0, 4), "#ff9900"),
    ((0, 2, 6), "#00e5ff"),
    ((4, 4, 0), "#39ff14"),
    ((0, 4, 4), "#8a2be2"),
    ((0, 6, 2), "#8b5a2b"),
    ((0, 8, 0), "#808080"),
    ((0, 0, 8), "#e41a1c"),
];

const INDEX_COLORS: [(i8, &str); 2] = [(1, "#1f4fff"), (-1, "#e41a1c")];
const STABLE_COLOR: &str = "#e41a1c";

fn class_color(k: (usize, usize, usize)) -> &'static str {
    CLASS_COLORS.iter().find(|(c, _)| *c == k).map(|(_, s)| *s).unwrap_or("#000000")
}

fn gray(level: f64) -> String {
    let g = (255.0 * level.clamp(0.0, 1.0)).round() as u8;
    format!("#{g:02x}{g:02x}{g:02x}")
}

fn row_color(row: &ScanRow, what: What) -> Option<String> {
    match what {
        What::Index => row.index.map(|i| if i > 0 { INDEX_COLORS[0].1 } else { INDEX_COLORS[1].1 }.to_string()),
        What::Stability => match (row.stable, row.klass) {
            (Some(true), _) => Some(STABLE_COLOR.to_string()),
            (_, Some(k)) => Some(class_color(k).to_string()),
            _ => None,
        },
        // darker for larger m1
        What::Masses => row.masses.map(|m| gray(1.0 - m.m1)),
    }
}

const SIZE: f64 = 600.0;
const MARGIN: f64 = 50.0;
const LEGEND_W: f64 = 170.0;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * SIZE
    }

    fn py(&self, y: f64) -> f64 {
        MARGIN + (self.y1 - y) / (self.y1 - self.y0) * SIZE
    }
}

fn boundary_paths(region: Region, frame: &Frame) -> Vec<String> {
    let mut paths = Vec::new();
    for r in [region] {
        let Some(((xa, xb), _)) = r.bounding_box() else { continue };
        let samples = 200;
        let xs: Vec<f64> = (0..=samples).map(|i| xa + (xb - xa) * i as f64 / samples as f64).collect();
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for &x in &xs {
            if let Some((lo, hi)) = r.y_limits(x) {
                lower.push((x, lo));
                upper.push((x, hi));
            }
        }
        // closed outline: lower left to right, upper right to left
        let mut d = String::new();
        for (i, (x, y)) in lower.iter().chain(upper.iter().rev()).enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            let _ = write!(d, "{cmd}{:.2},{:.2} ", frame.px(*x), frame.py(*y));
        }
        d.push('Z');
        paths.push(d);
    }
    paths
}

/// Static SVG of a scan: one square per in-region cell, region outlines, and a legend.
pub fn write_svg<W: Write + ?Sized>(region: Region, what: What, rows: &[ScanRow], out: &mut W) -> io::Result<()> {
    let ((x0, x1), (y0, y1)) = region.bounding_box().unwrap_or(((0.0, 1.0), (0.0, 1.0)));
    let frame = Frame { x0, x1, y0, y1 };
    let n = (rows.len() as f64).sqrt().max(1.0);
    let cw = SIZE / n + 0.5;
    let width = SIZE + 2.0 * MARGIN + LEGEND_W;
    let height = SIZE + 2.0 * MARGIN;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<g shape-rendering="crispEdges">"#);
    for row in rows.iter().filter(|r| r.in_region) {
        if let Some(c) = row_color(row, what) {
            let _ = writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="{cw:.2}" height="{cw:.2}" fill="{c}"/>"#,
                frame.px(row.xhat) - cw / 2.0,
                frame.py(row.yhat) - cw / 2.0
            );
        }
    }
    let _ = writeln!(s, "</g>");
    for d in boundary_paths(region, &frame) {
        let _ = writeln!(s, r#"<path d="{d}" fill="none" stroke="black" stroke-width="1.5"/>"#);
    }
    if region == Region::ConvexC {
        // lower boundary drawn dashed as the 1+3 limit
        let mut d = String::new();
        for i in 0..=100 {
            let x = x0 + (x1 - x0) * i as f64 / 100.0;
            let cmd = if i == 0 { 'M' } else { 'L' };
            let _ = write!(d, "{cmd}{:.2},{:.2} ", frame.px(x), frame.py(convex_lower(x)));
        }
        let _ = writeln!(s, r#"<path d="{d}" fill="none" stroke="black" stroke-dasharray="4 3"/>"#);
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.0}" y="{:.0}" font-family="sans-serif" font-size="14" text-anchor="middle">x̂</text>"#,
        MARGIN + SIZE / 2.0,
        height - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.0}" font-family="sans-serif" font-size="14">ŷ</text>"#,
        MARGIN + SIZE / 2.0
    );
    for (v, px, anchor) in [(x0, frame.px(x0), "start"), (x1, frame.px(x1), "end")] {
        let _ = writeln!(
            s,
            r#"<text x="{px:.0}" y="{:.0}" font-family="sans-serif" font-size="11" text-anchor="{anchor}">{v:.3}</text>"#,
            MARGIN + SIZE + 16.0
        );
    }
    for (v, py) in [(y0, frame.py(y0)), (y1, frame.py(y1))] {
        let _ = writeln!(
            s,
            r#"<text x="{:.0}" y="{py:.0}" font-family="sans-serif" font-size="11" text-anchor="end">{v:.3}</text>"#,
            MARGIN - 4.0
        );
    }
    let entries: Vec<(String, String)> = match what {
        What::Index => INDEX_COLORS
            .iter()
            .map(|(i, c)| (format!("index {i:+}"), c.to_string()))
            .collect(),
        What::Stability => {
            let mut e: Vec<(String, String)> = CLASS_COLORS
                .iter()
                .filter(|(k, _)| rows.iter().any(|r| r.klass == Some(*k)))
                .map(|(k, c)| (format!("({},{},{})", k.0, k.1, k.2), c.to_string()))
                .collect();
            if rows.iter().any(|r| r.stable == Some(true)) {
                e.push(("stable".into(), STABLE_COLOR.to_string()));
            }
            e
        }
        What::Masses => vec![("m1 = 0".into(), gray(1.0)), ("m1 = 1".into(), gray(0.0))],
    };
    let lx = MARGIN + SIZE + 30.0;
    for (i, (label, color)) in entries.iter().enumerate() {
        let ly = MARGIN + 20.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<rect x="{lx:.0}" y="{ly:.0}" width="14" height="14" fill="{color}" stroke="black" stroke-width="0.5"/>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.0}" y="{:.0}" font-family="sans-serif" font-size="12">{label}</text>"#,
            lx + 20.0,
            ly + 12.0
        );
    }
    s.push_str("</svg>\n");
    out.write_all(s.as_bytes())
}
