//! Independent reference implementations used as test oracles. Nothing here
//! calls into the descent or enumeration code under test.
#![allow(dead_code)]

use std::collections::HashMap;

use inductive_rotation::{ArrowDir, ColourType};

/// Square of the construction: centre and clockwise quarter turns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sq {
    pub x: i64,
    pub y: i64,
    pub turns: u8,
}

fn rot(x: i64, y: i64, g: u8) -> (i64, i64) {
    (0..g).fold((x, y), |(a, b), _| (b, -a))
}

/// The squares of `P_n`, topmost first, by literal recursion.
pub fn squares(n: u32) -> Vec<Sq> {
    let mut p = vec![Sq { x: 0, y: 0, turns: 0 }];
    let u = [(-1, 0), (0, 1), (1, 0), (0, -1)];
    for level in 1..=n {
        let s = 1i64 << (level - 1);
        let mut next = Vec::with_capacity(p.len() * 4);
        for (g, (ux, uy)) in u.iter().enumerate() {
            for q in &p {
                let (x, y) = rot(q.x, q.y, g as u8);
                next.push(Sq {
                    x: x + s * ux,
                    y: y + s * uy,
                    turns: (q.turns + g as u8) % 4,
                });
            }
        }
        p = next;
    }
    p
}

/// Quadrant colours of the unrotated square, as the tiling is documented.
pub fn base_colour(local: (i64, i64)) -> ColourType {
    match (local.0 > 0, local.1 > 0) {
        (true, true) => ColourType::T3,
        (false, true) => ColourType::T1,
        (false, false) => ColourType::T2,
        (true, false) => ColourType::T4,
    }
}

pub fn arrow_of(v: (i64, i64)) -> ArrowDir {
    match (v.0 > 0, v.1 > 0) {
        (true, true) => ArrowDir::NE,
        (false, true) => ArrowDir::NW,
        (false, false) => ArrowDir::SW,
        (true, false) => ArrowDir::SE,
    }
}

/// Top view of `P_n` painted square by square: cell -> (colour, arrow, centre).
pub fn top_view(n: u32) -> HashMap<(i64, i64), (ColourType, ArrowDir, (i64, i64))> {
    let mut out = HashMap::new();
    for q in squares(n) {
        for (dx, dy) in [(0, 0), (-1, 0), (-1, -1), (0, -1)] {
            let cell = (q.x + dx, q.y + dy);
            out.entry(cell).or_insert_with(|| {
                // Doubled offset of the cell centre from the square centre.
                let v = (2 * dx + 1, 2 * dy + 1);
                // Undo the square's rotation: inverse of (x, y) -> (y, -x).
                let local = (0..q.turns).fold(v, |(a, b), _| (-b, a));
                (base_colour(local), arrow_of(v), (q.x, q.y))
            });
        }
    }
    out
}

/// Number of squares of `P_n` covering each cell.
pub fn cover_counts(n: u32) -> HashMap<(i64, i64), u32> {
    let mut out = HashMap::new();
    for q in squares(n) {
        for (dx, dy) in [(0, 0), (-1, 0), (-1, -1), (0, -1)] {
            *out.entry((q.x + dx, q.y + dy)).or_insert(0) += 1;
        }
    }
    out
}
