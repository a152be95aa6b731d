//! The naked tiling: the visible parts of the stacked big squares, with no
//! decoration. Derived either from the stacking directly or locally from the
//! arrows of the decorated tiling.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{top_square, Cell, Point, Window};
use crate::view::Patch;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    /// The whole 2x2 square.
    BigSquare,
    /// One cell.
    SmallSquare,
    /// Two edge-adjacent cells.
    Domino,
    /// Three cells forming an L.
    Chair,
}

impl Shape {
    pub const ALL: [Shape; 4] = [Shape::BigSquare, Shape::SmallSquare, Shape::Domino, Shape::Chair];

    pub fn name(self) -> &'static str {
        match self {
            Shape::BigSquare => "big-square",
            Shape::SmallSquare => "small-square",
            Shape::Domino => "domino",
            Shape::Chair => "chair",
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One visible region of a big square.
///
/// Orientation: for a small square the quadrant it occupies, for a domino the
/// side of the square it lies along, for a chair the missing quadrant, each
/// counted clockwise from north-east (quadrants NE=0, SE=1, SW=2, NW=3) or
/// north (sides N=0, E=1, S=2, W=3). Big squares have orientation 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct NakedTile {
    pub centre: Point,
    pub shape: Shape,
    pub orientation: u8,
    /// Sorted.
    pub cells: Vec<Cell>,
    /// Some cell of the big square lies outside the window, so the region
    /// may continue beyond it.
    pub clipped: bool,
}

/// Clockwise quadrant index of `cell` around the square centred at `centre`.
fn quadrant(centre: Point, cell: Cell) -> u8 {
    match (cell.k >= centre.x, cell.m >= centre.y) {
        (true, true) => 0,
        (true, false) => 1,
        (false, false) => 2,
        (false, true) => 3,
    }
}

fn square_cells(centre: Point) -> [Cell; 4] {
    [
        Cell::new(centre.x, centre.y),
        Cell::new(centre.x, centre.y - 1),
        Cell::new(centre.x - 1, centre.y - 1),
        Cell::new(centre.x - 1, centre.y),
    ]
}

/// Splits the visible quadrants of one square into edge-connected pieces
/// and classifies each.
fn classify(centre: Point, cells: &[Cell], clipped: bool) -> Result<Vec<NakedTile>> {
    let mut mask = 0u8;
    for &c in cells {
        mask |= 1 << quadrant(centre, c);
    }
    // Quadrants q and q+1 (mod 4) share an edge; q and q+2 only a corner.
    let mut pieces: Vec<u8> = Vec::new();
    let mut seen = 0u8;
    for q in 0..4u8 {
        if mask & (1 << q) == 0 || seen & (1 << q) != 0 {
            continue;
        }
        let mut piece = 0u8;
        let mut stack = vec![q];
        while let Some(x) = stack.pop() {
            if piece & (1 << x) != 0 {
                continue;
            }
            piece |= 1 << x;
            for y in [(x + 1) % 4, (x + 3) % 4] {
                if mask & (1 << y) != 0 {
                    stack.push(y);
                }
            }
        }
        seen |= piece;
        pieces.push(piece);
    }
    let all = square_cells(centre);
    pieces
        .into_iter()
        .map(|piece| {
            let qs: Vec<u8> = (0..4).filter(|q| piece & (1 << q) != 0).collect();
            let (shape, orientation) = match qs.len() {
                4 => (Shape::BigSquare, 0),
                1 => (Shape::SmallSquare, qs[0]),
                // Quadrants q, q+1 lie along side q+1 (NE+SE along E, ...).
                2 => {
                    let first = if qs == [0, 3] { 3 } else { qs[0] };
                    (Shape::Domino, (first + 1) % 4)
                }
                3 => (Shape::Chair, (0..4).find(|q| piece & (1 << q) == 0).unwrap_or(0)),
                n => return Err(Error::UnknownShape(n)),
            };
            let mut cells: Vec<Cell> = qs.iter().map(|&q| all[q as usize]).collect();
            cells.sort();
            Ok(NakedTile {
                centre,
                shape,
                orientation,
                cells,
                clipped,
            })
        })
        .collect()
}

fn build(groups: BTreeMap<Point, Vec<Cell>>, window: &Window) -> Result<Vec<NakedTile>> {
    let mut out = Vec::new();
    for (centre, cells) in groups {
        let clipped = square_cells(centre).iter().any(|c| !window.contains(*c));
        out.extend(classify(centre, &cells, clipped)?);
    }
    out.sort();
    Ok(out)
}

/// Groups the window's cells by the topmost square of `P_n` covering them.
pub fn visible_decomposition(n: u32, window: Window) -> Result<Vec<NakedTile>> {
    let mut groups: BTreeMap<Point, Vec<Cell>> = BTreeMap::new();
    for cell in window.cells() {
        let top = top_square(n, cell).ok_or(Error::OutsideSupport { level: n, cell })?;
        groups.entry(top.centre).or_default().push(cell);
    }
    build(groups, &window)
}

/// Rebuilds the naked tiling from arrows alone: each tile belongs to the
/// square centred at the corner its arrow points away from.
pub fn derive_naked_from_arrows(arrowed: &Patch) -> Result<Vec<NakedTile>> {
    let mut groups: BTreeMap<Point, Vec<Cell>> = BTreeMap::new();
    for t in arrowed.tiles() {
        let centre = t.source_centre();
        if !centre.is_odd() {
            return Err(Error::InconsistentArrows(t.cell));
        }
        groups.entry(centre).or_default().push(t.cell);
    }
    build(groups, &arrowed.window())
}

/// Tiles whose cells all lie at least `collar` cells inside the window, and
/// which are not clipped.
pub fn without_collar(tiles: &[NakedTile], window: &Window, collar: i64) -> Vec<NakedTile> {
    tiles
        .iter()
        .filter(|t| {
            !t.clipped
                && t.cells.iter().all(|c| {
                    (-collar..=collar).all(|dy| (-collar..=collar).all(|dx| window.contains(c.offset(dx, dy))))
                })
        })
        .cloned()
        .collect()
}

/// Number of unclipped tiles of each shape, in [`Shape::ALL`] order.
pub fn census(tiles: &[NakedTile]) -> [usize; 4] {
    let mut out = [0; 4];
    for t in tiles.iter().filter(|t| !t.clipped) {
        out[Shape::ALL.iter().position(|s| *s == t.shape).unwrap_or(0)] += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{enumerate_squares, DEFAULT_LEVEL_CAP};
    use crate::view::ArrowedTiling;

    #[test]
    fn domino_and_chair_orientations() {
        let c = Point::new(1, 0);
        let t = classify(c, &[Cell::new(1, 0), Cell::new(1, -1)], false).unwrap();
        assert_eq!((t[0].shape, t[0].orientation), (Shape::Domino, 1));
        let t = classify(c, &[Cell::new(1, 0), Cell::new(0, 0)], false).unwrap();
        assert_eq!((t[0].shape, t[0].orientation), (Shape::Domino, 0));
        let t = classify(c, &[Cell::new(1, 0), Cell::new(0, 0), Cell::new(0, -1)], false).unwrap();
        assert_eq!((t[0].shape, t[0].orientation), (Shape::Chair, 1));
        let t = classify(c, &[Cell::new(1, 0), Cell::new(0, -1)], false).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.iter().all(|x| x.shape == Shape::SmallSquare));
    }

    #[test]
    fn partition_of_window() {
        let w = Window::diamond(20);
        let tiles = visible_decomposition(7, w).unwrap();
        let mut cells: Vec<Cell> = tiles.iter().flat_map(|t| t.cells.clone()).collect();
        cells.sort();
        let mut expected: Vec<Cell> = w.cells().collect();
        expected.sort();
        assert_eq!(cells, expected);
    }

    #[test]
    fn arrows_reproduce_visibility() {
        let w = Window::square(24);
        let t = ArrowedTiling::default();
        let arrowed = Patch::from_fn(w, t.exec, |c| t.visible(8, c));
        assert_eq!(
            derive_naked_from_arrows(&arrowed).unwrap(),
            visible_decomposition(8, w).unwrap()
        );
    }

    #[test]
    fn unoccluded_squares_are_fully_visible() {
        let n = 5;
        let squares = enumerate_squares(n, DEFAULT_LEVEL_CAP).unwrap();
        for (i, s) in squares.iter().enumerate() {
            let overlapped = squares[..i]
                .iter()
                .any(|a| s.cells().iter().any(|c| a.covers(*c)));
            if !overlapped {
                for c in s.cells() {
                    assert_eq!(top_square(n, c).unwrap().centre, s.centre);
                }
            }
        }
    }

    #[test]
    fn single_arrow_fixes_its_centre() {
        use crate::decoration::{ArrowDir, ColourType, TileInstance, TileKind};
        let p = Patch::from_tiles([TileInstance::new(
            Cell::new(3, 4),
            TileKind::new(ColourType::T1, ArrowDir::NE),
        )]);
        let tiles = derive_naked_from_arrows(&p).unwrap();
        assert_eq!(tiles[0].centre, Point::new(3, 4));
        let bad = Patch::from_tiles([TileInstance::new(
            Cell::new(3, 3),
            TileKind::new(ColourType::T1, ArrowDir::NE),
        )]);
        assert_eq!(derive_naked_from_arrows(&bad), Err(Error::InconsistentArrows(Cell::new(3, 3))));
    }
}
