//! Output formats for arrowed and naked patches.

use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use inductive_rotation::naked::{NakedTile, Shape};
use inductive_rotation::{ColourType, Patch};

/// Fill colours for T1..T4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Palette(pub [String; 4]);

impl Default for Palette {
    fn default() -> Self {
        Palette(["#000000", "#555555", "#aaaaaa", "#ffffff"].map(String::from))
    }
}

impl Palette {
    /// Parses `T1=#rrggbb,T3=#rrggbb`; unnamed colours keep their default.
    pub fn parse(spec: &str) -> Result<Palette> {
        let mut p = Palette::default();
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .with_context(|| format!("palette entry {part:?} is not T<n>=#rrggbb"))?;
            let colour: ColourType = k.trim().parse()?;
            let v = v.trim();
            if !(v.len() == 7 && v.starts_with('#') && v[1..].chars().all(|c| c.is_ascii_hexdigit())) {
                bail!("palette colour {v:?} is not #rrggbb");
            }
            p.0[colour.index()] = v.to_ascii_lowercase();
        }
        Ok(p)
    }

    fn fill(&self, c: ColourType) -> &str {
        &self.0[c.index()]
    }

    /// Chevron colour that stays visible on the tile.
    fn ink(&self, c: ColourType) -> &'static str {
        let hex = &self.0[c.index()][1..];
        let v = u32::from_str_radix(hex, 16).unwrap_or(0);
        let lum = ((v >> 16) & 255) * 3 + ((v >> 8) & 255) * 6 + (v & 255);
        if lum > 1280 {
            "#000000"
        } else {
            "#ffffff"
        }
    }
}

#[derive(Serialize)]
struct Anchor {
    x: i64,
    y: i64,
}

#[derive(Serialize)]
struct JsonTile {
    k: i64,
    m: i64,
    colour: String,
    arrow: String,
}

#[derive(Serialize)]
struct JsonArrowed {
    mode: &'static str,
    anchor: Anchor,
    cells: Vec<JsonTile>,
}

#[derive(Serialize)]
struct JsonRegion {
    shape: &'static str,
    orientation: u8,
    centre: [i64; 2],
    clipped: bool,
    cells: Vec<[i64; 2]>,
}

#[derive(Serialize)]
struct JsonNaked {
    mode: &'static str,
    anchor: Anchor,
    cells: Vec<JsonRegion>,
}

pub fn arrowed_json(patch: &Patch) -> Result<String> {
    let doc = JsonArrowed {
        mode: "arrowed",
        anchor: Anchor { x: 0, y: 0 },
        cells: patch
            .tiles()
            .map(|t| JsonTile {
                k: t.cell.k,
                m: t.cell.m,
                colour: t.colour.to_string(),
                arrow: t.arrow.to_string(),
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

pub fn naked_json(tiles: &[NakedTile]) -> Result<String> {
    let doc = JsonNaked {
        mode: "naked",
        anchor: Anchor { x: 0, y: 0 },
        cells: tiles
            .iter()
            .map(|t| JsonRegion {
                shape: t.shape.name(),
                orientation: t.orientation,
                centre: [t.centre.x, t.centre.y],
                clipped: t.clipped,
                cells: t.cells.iter().map(|c| [c.k, c.m]).collect(),
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

pub fn arrowed_text(patch: &Patch) -> String {
    let mut s = String::from("# k m colour arrow\n");
    for t in patch.tiles() {
        let _ = writeln!(s, "{} {} {} {}", t.cell.k, t.cell.m, t.colour, t.arrow);
    }
    s
}

pub fn naked_text(tiles: &[NakedTile]) -> String {
    let mut s = String::from("# shape orientation clipped cells(k,m)...\n");
    for t in tiles {
        let cells: Vec<String> = t.cells.iter().map(|c| format!("{},{}", c.k, c.m)).collect();
        let _ = writeln!(s, "{} {} {} {}", t.shape, t.orientation, t.clipped, cells.join(" "));
    }
    s
}

struct Frame {
    k0: i64,
    m1: i64,
    unit: i64,
    width: i64,
    height: i64,
}

impl Frame {
    fn new(cells: impl Iterator<Item = (i64, i64)>, unit: i64) -> Frame {
        let (mut k0, mut m0, mut k1, mut m1) = (i64::MAX, i64::MAX, i64::MIN, i64::MIN);
        for (k, m) in cells {
            k0 = k0.min(k);
            m0 = m0.min(m);
            k1 = k1.max(k + 1);
            m1 = m1.max(m + 1);
        }
        if k0 > k1 {
            (k0, m0, k1, m1) = (0, 0, 1, 1);
        }
        Frame {
            k0,
            m1,
            unit,
            width: (k1 - k0) * unit,
            height: (m1 - m0) * unit,
        }
    }

    /// Pixel position of the lattice point `(x, y)`; y grows downward in SVG.
    fn px(&self, x: i64, y: i64) -> (i64, i64) {
        ((x - self.k0) * self.unit, (self.m1 - y) * self.unit)
    }

    fn header(&self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
            w = self.width,
            h = self.height
        )
    }
}

pub fn arrowed_svg(patch: &Patch, palette: &Palette, unit: i64) -> String {
    let frame = Frame::new(patch.tiles().map(|t| (t.cell.k, t.cell.m)), unit);
    let mut s = frame.header();
    s.push_str("<g stroke=\"#808080\" stroke-width=\"0.5\">\n");
    for t in patch.tiles() {
        let (x, y) = frame.px(t.cell.k, t.cell.m + 1);
        let _ = writeln!(
            s,
            "<rect x=\"{x}\" y=\"{y}\" width=\"{unit}\" height=\"{unit}\" fill=\"{}\"/>",
            palette.fill(t.colour)
        );
    }
    s.push_str("</g>\n<g fill=\"none\" stroke-width=\"1.5\">\n");
    for t in patch.tiles() {
        let (x, y) = frame.px(t.cell.k, t.cell.m + 1);
        let h = unit / 2;
        let (cx, cy) = (x + h, y + h);
        let v = t.arrow.vector();
        // Chevron pointing along the diagonal towards the arrow's corner.
        let q = unit / 4;
        let (tx, ty) = (cx + v.x * q, cy - v.y * q);
        let (ax, ay) = (tx - v.x * q, ty);
        let (bx, by) = (tx, ty + v.y * q);
        let _ = writeln!(
            s,
            "<polyline points=\"{ax},{ay} {tx},{ty} {bx},{by}\" stroke=\"{}\"/>",
            palette.ink(t.colour)
        );
    }
    s.push_str("</g>\n</svg>\n");
    s
}

fn shape_fill(shape: Shape) -> &'static str {
    match shape {
        Shape::BigSquare => "#4477aa",
        Shape::SmallSquare => "#ee6677",
        Shape::Domino => "#228833",
        Shape::Chair => "#ccbb44",
    }
}

pub fn naked_svg(tiles: &[NakedTile], unit: i64) -> String {
    let frame = Frame::new(tiles.iter().flat_map(|t| t.cells.iter().map(|c| (c.k, c.m))), unit);
    let mut s = frame.header();
    for t in tiles {
        let opacity = if t.clipped { "0.4" } else { "1" };
        let _ = writeln!(
            s,
            "<g fill=\"{}\" fill-opacity=\"{opacity}\" data-shape=\"{}\" data-orientation=\"{}\">",
            shape_fill(t.shape),
            t.shape,
            t.orientation
        );
        for c in &t.cells {
            let (x, y) = frame.px(c.k, c.m + 1);
            let _ = writeln!(s, "<rect x=\"{x}\" y=\"{y}\" width=\"{unit}\" height=\"{unit}\"/>");
        }
        // Outline: cell edges not shared with another cell of the region.
        let mut d = String::new();
        for c in &t.cells {
            let edges = [
                ((0, 1), (c.k, c.m + 1), (c.k + 1, c.m + 1)),
                ((0, -1), (c.k, c.m), (c.k + 1, c.m)),
                ((1, 0), (c.k + 1, c.m), (c.k + 1, c.m + 1)),
                ((-1, 0), (c.k, c.m), (c.k, c.m + 1)),
            ];
            for ((dk, dm), a, b) in edges {
                if !t.cells.contains(&c.offset(dk, dm)) {
                    let (ax, ay) = frame.px(a.0, a.1);
                    let (bx, by) = frame.px(b.0, b.1);
                    let _ = write!(d, "M{ax} {ay}L{bx} {by}");
                }
            }
        }
        let _ = writeln!(s, "<path d=\"{d}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>");
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}
