//! The decorated base square `R_0`: four coloured unit tiles with outward arrows.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::{Cell, Point, QuarterTurns, SquarePlacement, TopSquare};

/// Colour class of a unit tile. These are the four prototiles of the arrowed tiling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColourType {
    /// black
    T1,
    /// dark grey
    T2,
    /// light grey
    T3,
    /// white
    T4,
}

impl ColourType {
    pub const ALL: [ColourType; 4] = [ColourType::T1, ColourType::T2, ColourType::T3, ColourType::T4];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            ColourType::T1 => "T1",
            ColourType::T2 => "T2",
            ColourType::T3 => "T3",
            ColourType::T4 => "T4",
        }
    }
}

impl fmt::Display for ColourType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ColourType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ColourType::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown colour {s:?}")))
    }
}

/// Diagonal arrow direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrowDir {
    NE,
    NW,
    SW,
    SE,
}

impl ArrowDir {
    pub const ALL: [ArrowDir; 4] = [ArrowDir::NE, ArrowDir::NW, ArrowDir::SW, ArrowDir::SE];

    pub fn vector(self) -> Point {
        match self {
            ArrowDir::NE => Point::new(1, 1),
            ArrowDir::NW => Point::new(-1, 1),
            ArrowDir::SW => Point::new(-1, -1),
            ArrowDir::SE => Point::new(1, -1),
        }
    }

    /// Direction of the (nonzero, diagonal-signed) vector `v`.
    pub fn from_signs(v: Point) -> Option<ArrowDir> {
        match (v.x.signum(), v.y.signum()) {
            (1, 1) => Some(ArrowDir::NE),
            (-1, 1) => Some(ArrowDir::NW),
            (-1, -1) => Some(ArrowDir::SW),
            (1, -1) => Some(ArrowDir::SE),
            _ => None,
        }
    }

    pub fn rotate(self, turns: QuarterTurns) -> ArrowDir {
        ArrowDir::from_signs(turns.apply(self.vector())).expect("rotation keeps arrows diagonal")
    }

    /// Clockwise quarter turns taking the down-right arrow `(1,-1)` to this one.
    /// Substitution blocks are stored in this frame.
    pub fn turns_from_se(self) -> QuarterTurns {
        QuarterTurns::new(match self {
            ArrowDir::SE => 0,
            ArrowDir::SW => 1,
            ArrowDir::NW => 2,
            ArrowDir::NE => 3,
        })
    }

    pub fn from_turns_from_se(t: QuarterTurns) -> ArrowDir {
        ArrowDir::SE.rotate(t)
    }

    pub fn name(self) -> &'static str {
        match self {
            ArrowDir::NE => "NE",
            ArrowDir::NW => "NW",
            ArrowDir::SW => "SW",
            ArrowDir::SE => "SE",
        }
    }
}

impl fmt::Display for ArrowDir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ArrowDir {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ArrowDir::ALL
            .into_iter()
            .find(|a| a.name() == s.trim())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown arrow {s:?}")))
    }
}

/// Quadrant of the base square, in the square's own frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quadrant {
    NE,
    NW,
    SW,
    SE,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::NE, Quadrant::NW, Quadrant::SW, Quadrant::SE];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Direction pointing from the square centre through this quadrant's outer corner.
    pub fn outward(self) -> ArrowDir {
        match self {
            Quadrant::NE => ArrowDir::NE,
            Quadrant::NW => ArrowDir::NW,
            Quadrant::SW => ArrowDir::SW,
            Quadrant::SE => ArrowDir::SE,
        }
    }

    pub fn from_offset(v: Point) -> Option<Quadrant> {
        ArrowDir::from_signs(v).map(|a| match a {
            ArrowDir::NE => Quadrant::NE,
            ArrowDir::NW => Quadrant::NW,
            ArrowDir::SW => Quadrant::SW,
            ArrowDir::SE => Quadrant::SE,
        })
    }

    pub fn name(self) -> &'static str {
        self.outward().name()
    }
}

/// Colour of each quadrant of `R_0`. Arrows are not stored: each quadrant's arrow
/// is its outward direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseDecoration {
    colours: [ColourType; 4],
}

impl BaseDecoration {
    /// `colours` lists the colours of NE, NW, SW, SE.
    pub fn new(colours: [ColourType; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for c in colours {
            if std::mem::replace(&mut seen[c.index()], true) {
                return Err(Error::InvalidParameter(format!(
                    "quadrant colouring {colours:?} is not a bijection"
                )));
            }
        }
        Ok(BaseDecoration { colours })
    }

    /// All 24 quadrant colourings, in lexicographic order.
    pub fn all() -> Vec<BaseDecoration> {
        let mut out = Vec::with_capacity(24);
        for a in ColourType::ALL {
            for b in ColourType::ALL {
                for c in ColourType::ALL {
                    for d in ColourType::ALL {
                        if let Ok(base) = BaseDecoration::new([a, b, c, d]) {
                            out.push(base);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn colour(&self, q: Quadrant) -> ColourType {
        self.colours[q.index()]
    }

    pub fn quadrant_of(&self, colour: ColourType) -> Quadrant {
        Quadrant::ALL
            .into_iter()
            .find(|&q| self.colour(q) == colour)
            .expect("bijection")
    }

    pub fn colours(&self) -> [ColourType; 4] {
        self.colours
    }

    /// The colouring recovered by calibration and shipped with the crate.
    pub fn frozen() -> BaseDecoration {
        crate::config::parse_base_decoration(FROZEN_DECORATION)
            .expect("bundled decoration file is valid")
    }

    /// Colour and arrow of the tile seen through the top square `top`.
    pub fn decorate(&self, top: &TopSquare) -> TileKind {
        let q = Quadrant::from_offset(top.local_offset).expect("diagonal offset");
        TileKind {
            colour: self.colour(q),
            arrow: q.outward().rotate(top.orientation),
        }
    }
}

impl fmt::Display for BaseDecoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Quadrant::ALL
            .iter()
            .map(|q| format!("{}:{}", q.name(), self.colour(*q)))
            .collect();
        f.write_str(&parts.join(","))
    }
}

pub(crate) const FROZEN_DECORATION: &str = include_str!("../data/base_decoration.cfg");

/// A decorated tile type: colour plus arrow. There are 16 of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TileKind {
    pub colour: ColourType,
    pub arrow: ArrowDir,
}

impl TileKind {
    pub fn new(colour: ColourType, arrow: ArrowDir) -> Self {
        TileKind { colour, arrow }
    }

    pub fn rotate(self, turns: QuarterTurns) -> TileKind {
        TileKind {
            colour: self.colour,
            arrow: self.arrow.rotate(turns),
        }
    }

    /// Dense index in `0..16`.
    pub fn index(self) -> usize {
        self.colour.index() * 4 + self.arrow as usize
    }

    pub fn from_index(i: usize) -> TileKind {
        TileKind {
            colour: ColourType::ALL[i / 4],
            arrow: ArrowDir::ALL[i % 4],
        }
    }
}

impl fmt::Display for TileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.colour, self.arrow)
    }
}

/// One unit tile of the arrowed tiling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TileInstance {
    pub cell: Cell,
    pub colour: ColourType,
    pub arrow: ArrowDir,
}

impl TileInstance {
    pub fn new(cell: Cell, kind: TileKind) -> Self {
        TileInstance {
            cell,
            colour: kind.colour,
            arrow: kind.arrow,
        }
    }

    pub fn kind(&self) -> TileKind {
        TileKind::new(self.colour, self.arrow)
    }

    /// The vertex the arrow points at.
    pub fn arrow_vertex(&self) -> crate::geometry::Point {
        let c = self.cell.doubled_centre() + self.arrow.vector();
        Point::new(c.x / 2, c.y / 2)
    }

    /// Centre of the big square the tile was cut from: the corner opposite the arrow.
    pub fn source_centre(&self) -> Point {
        let c = self.cell.doubled_centre() - self.arrow.vector();
        Point::new(c.x / 2, c.y / 2)
    }
}

/// Decoration a square lends to one of its cells.
pub fn tile_at(square: &SquarePlacement, cell: Cell, base: &BaseDecoration) -> Result<TileInstance> {
    if !square.covers(cell) {
        return Err(Error::NotCovered(cell));
    }
    let offset = cell.doubled_centre() - square.centre.scale(2);
    let local = square.orientation.inverse().apply(offset);
    let q = Quadrant::from_offset(local).ok_or(Error::NotCovered(cell))?;
    Ok(TileInstance {
        cell,
        colour: base.colour(q),
        arrow: q.outward().rotate(square.orientation),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Address;

    fn square(c: (i64, i64), o: i64) -> SquarePlacement {
        SquarePlacement {
            centre: Point::new(c.0, c.1),
            orientation: QuarterTurns::new(o),
            depth: Address::default(),
        }
    }

    #[test]
    fn identity_placement() {
        let base = BaseDecoration::frozen();
        let t = tile_at(&square((0, 0), 0), Cell::new(0, 0), &base).unwrap();
        assert_eq!(t.arrow, ArrowDir::NE);
        assert_eq!(t.colour, base.colour(Quadrant::NE));
    }

    #[test]
    fn rotated_placement() {
        // Square centred (0,1) turned once clockwise; cell (0,0) lies to its
        // south-east, which undoes to the local north-east quadrant.
        let base = BaseDecoration::frozen();
        let t = tile_at(&square((0, 1), 1), Cell::new(0, 0), &base).unwrap();
        assert_eq!(t.colour, base.colour(Quadrant::NE));
        assert_eq!(t.arrow, Quadrant::NE.outward().rotate(QuarterTurns::new(1)));
        assert_eq!(t.arrow, ArrowDir::SE);
    }

    #[test]
    fn not_covered() {
        let base = BaseDecoration::frozen();
        assert_eq!(
            tile_at(&square((0, 0), 0), Cell::new(1, 0), &base),
            Err(Error::NotCovered(Cell::new(1, 0)))
        );
    }

    #[test]
    fn bijections() {
        assert_eq!(BaseDecoration::all().len(), 24);
        assert!(BaseDecoration::new([ColourType::T1; 4]).is_err());
    }

    #[test]
    fn arrow_frames() {
        for a in ArrowDir::ALL {
            assert_eq!(ArrowDir::from_turns_from_se(a.turns_from_se()), a);
            assert_eq!(a.rotate(QuarterTurns::new(4)), a);
        }
        assert_eq!(ArrowDir::NE.rotate(QuarterTurns::new(1)), ArrowDir::SE);
        for i in 0..16 {
            assert_eq!(TileKind::from_index(i).index(), i);
        }
    }

    #[test]
    fn source_centre_is_opposite_corner() {
        let t = TileInstance::new(Cell::new(0, 0), TileKind::new(ColourType::T1, ArrowDir::NE));
        assert_eq!(t.source_centre(), Point::new(0, 0));
        assert_eq!(t.arrow_vertex(), Point::new(1, 1));
    }
}
