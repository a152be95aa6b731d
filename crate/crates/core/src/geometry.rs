//! Squares of the recursive patch `P_n`: addresses, placements, stacking and coverage.
//!
//! `P_0` is the single square `Q = [-1,1]^2`. `P_n` is the union of four
//! copies of `P_{n-1}`: copy `g` is rotated by `g` clockwise quarter turns and
//! shifted by `2^{n-1} u_g` with `u = [(-1,0), (0,1), (1,0), (0,-1)]`. Copy 0
//! lies on top, copy 3 at the bottom.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Default largest level for which [`enumerate_squares`] materialises `P_n`.
pub const DEFAULT_LEVEL_CAP: u32 = 12;

/// Largest level the per-cell descent supports (doubled coordinates must fit in `i64`).
pub const MAX_QUERY_LEVEL: u32 = 60;

/// Copy offsets, in units of `2^{level-1}`.
pub(crate) const GROUP_SHIFT: [Point; 4] = [
    Point::new(-1, 0),
    Point::new(0, 1),
    Point::new(1, 0),
    Point::new(0, -1),
];

/// A lattice point (square centre, cell vertex) or an integer vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn diamond_norm(self) -> i64 {
        self.x.abs() + self.y.abs()
    }

    pub fn is_odd(self) -> bool {
        (self.x + self.y).rem_euclid(2) == 1
    }

    pub(crate) fn scale(self, s: i64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

/// The unit square `[k, k+1] x [m, m+1]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub k: i64,
    pub m: i64,
}

impl Cell {
    pub const fn new(k: i64, m: i64) -> Self {
        Cell { k, m }
    }

    /// Centre of the cell in doubled coordinates.
    pub fn doubled_centre(self) -> Point {
        Point::new(2 * self.k + 1, 2 * self.m + 1)
    }

    pub(crate) fn from_doubled_centre(p: Point) -> Cell {
        debug_assert!(p.x.rem_euclid(2) == 1 && p.y.rem_euclid(2) == 1);
        Cell::new((p.x - 1).div_euclid(2), (p.y - 1).div_euclid(2))
    }

    pub fn corners(self) -> [Point; 4] {
        [
            Point::new(self.k, self.m),
            Point::new(self.k + 1, self.m),
            Point::new(self.k + 1, self.m + 1),
            Point::new(self.k, self.m + 1),
        ]
    }

    /// The two corners with odd coordinate sum; these are the only possible square centres.
    pub fn odd_corners(self) -> [Point; 2] {
        if (self.k + self.m).rem_euclid(2) == 0 {
            [Point::new(self.k + 1, self.m), Point::new(self.k, self.m + 1)]
        } else {
            [Point::new(self.k, self.m), Point::new(self.k + 1, self.m + 1)]
        }
    }

    /// Largest diamond norm over the corners.
    pub fn outer_diamond_norm(self) -> i64 {
        self.corners().iter().map(|c| c.diamond_norm()).max().unwrap_or(0)
    }

    /// Squared distance from the origin to the farthest corner.
    pub fn outer_radius_sq(self) -> i64 {
        self.corners()
            .iter()
            .map(|c| c.x * c.x + c.y * c.y)
            .max()
            .unwrap_or(0)
    }

    pub fn offset(self, dk: i64, dm: i64) -> Cell {
        Cell::new(self.k + dk, self.m + dm)
    }

    /// Image of the cell under `turns` clockwise quarter turns about the origin.
    pub fn rotate(self, turns: QuarterTurns) -> Cell {
        Cell::from_doubled_centre(turns.apply(self.doubled_centre()))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k, self.m)
    }
}

/// Number of clockwise quarter turns, i.e. the power of `phi` (rotation by `-pi/2`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuarterTurns(u8);

impl QuarterTurns {
    pub const IDENTITY: QuarterTurns = QuarterTurns(0);

    pub fn new(n: i64) -> Self {
        QuarterTurns(n.rem_euclid(4) as u8)
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn inverse(self) -> Self {
        QuarterTurns::new(-(self.0 as i64))
    }

    pub fn then(self, other: QuarterTurns) -> Self {
        QuarterTurns::new(self.0 as i64 + other.0 as i64)
    }

    pub fn apply(self, p: Point) -> Point {
        match self.0 {
            0 => p,
            1 => Point::new(p.y, -p.x),
            2 => Point::new(-p.x, -p.y),
            _ => Point::new(-p.y, p.x),
        }
    }
}

impl std::ops::Add for QuarterTurns {
    type Output = QuarterTurns;
    fn add(self, o: QuarterTurns) -> QuarterTurns {
        self.then(o)
    }
}

impl std::ops::Sub for QuarterTurns {
    type Output = QuarterTurns;
    fn sub(self, o: QuarterTurns) -> QuarterTurns {
        self.then(o.inverse())
    }
}

/// Integer lattice spanned by two vectors. The default is `<(1,1), (1,-1)>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub a: Point,
    pub b: Point,
}

impl Default for Lattice {
    fn default() -> Self {
        Lattice {
            a: Point::new(1, 1),
            b: Point::new(1, -1),
        }
    }
}

impl Lattice {
    /// Exact membership by Cramer's rule.
    pub fn contains(&self, v: Point) -> bool {
        let det = self.a.x * self.b.y - self.a.y * self.b.x;
        if det == 0 {
            return false;
        }
        let s = v.x * self.b.y - v.y * self.b.x;
        let t = self.a.x * v.y - self.a.y * v.x;
        s % det == 0 && t % det == 0
    }

    /// Is `v` in `offset + scale * L`?
    pub fn contains_coset(&self, offset: Point, scale: i64, v: Point) -> bool {
        let d = v - offset;
        if scale == 0 {
            return d == Point::default();
        }
        if d.x % scale != 0 || d.y % scale != 0 {
            return false;
        }
        self.contains(Point::new(d.x / scale, d.y / scale))
    }

    pub fn point(&self, i: i64, j: i64) -> Point {
        self.a.scale(i) + self.b.scale(j)
    }
}

/// Word over `{0,1,2,3}` naming one square of `P_n`, outermost level first.
///
/// Digits are packed base 4 with the outermost digit most significant, so
/// comparing two equal-length words as integers is the stacking order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Address {
    word: u64,
    len: u8,
}

impl Address {
    pub const MAX_LEN: usize = 32;

    pub fn new(digits: &[u8]) -> Result<Self> {
        if digits.len() > Self::MAX_LEN {
            return Err(Error::InvalidParameter(format!(
                "address longer than {} digits",
                Self::MAX_LEN
            )));
        }
        let mut a = Address::default();
        for &d in digits {
            if d > 3 {
                return Err(Error::InvalidParameter(format!("address digit {d}")));
            }
            a = a.push(d);
        }
        Ok(a)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Digit at `index`, where index 0 is the outermost level.
    pub fn digit(&self, index: usize) -> u8 {
        assert!(index < self.len());
        ((self.word >> (2 * (self.len() - 1 - index))) & 3) as u8
    }

    pub fn digits(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len()).map(move |i| self.digit(i))
    }

    /// Appends an inner digit.
    pub(crate) fn push(self, d: u8) -> Address {
        Address {
            word: (self.word << 2) | d as u64,
            len: self.len + 1,
        }
    }

    /// Prepends an outer digit.
    pub(crate) fn prepend(self, d: u8) -> Address {
        Address {
            word: self.word | ((d as u64) << (2 * self.len as u32)),
            len: self.len + 1,
        }
    }
}

impl fmt::Debug for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Address[")?;
        for d in self.digits() {
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.digits() {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Relative height of two squares.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stacking {
    Above,
    Below,
    Equal,
}

/// Stacking order: the lexicographically smaller address lies above.
pub fn stack_compare(a: &Address, b: &Address) -> Result<Stacking> {
    if a.len != b.len {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(match a.word.cmp(&b.word) {
        Ordering::Less => Stacking::Above,
        Ordering::Greater => Stacking::Below,
        Ordering::Equal => Stacking::Equal,
    })
}

/// One 2x2 square of `P_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SquarePlacement {
    pub centre: Point,
    pub orientation: QuarterTurns,
    pub depth: Address,
}

impl SquarePlacement {
    pub fn covers(&self, cell: Cell) -> bool {
        cell.corners().contains(&self.centre)
    }

    /// The four cells of the square.
    pub fn cells(&self) -> [Cell; 4] {
        let c = self.centre;
        [
            Cell::new(c.x, c.y),
            Cell::new(c.x - 1, c.y),
            Cell::new(c.x - 1, c.y - 1),
            Cell::new(c.x, c.y - 1),
        ]
    }
}

/// Composes the level maps named by `address` and applies them to `Q`.
pub fn placement_of(address: &Address) -> SquarePlacement {
    let n = address.len();
    let mut centre = Point::default();
    let mut orientation = QuarterTurns::IDENTITY;
    for level in 1..=n {
        let g = address.digit(n - level);
        let turn = QuarterTurns::new(g as i64);
        centre = turn.apply(centre) + GROUP_SHIFT[g as usize].scale(1 << (level - 1));
        orientation = orientation + turn;
    }
    SquarePlacement {
        centre,
        orientation,
        depth: *address,
    }
}

/// All `4^n` squares of `P_n`, topmost first.
pub fn enumerate_squares(n: u32, cap: u32) -> Result<Vec<SquarePlacement>> {
    if n > cap || n as usize > Address::MAX_LEN {
        return Err(Error::LevelCap { level: n, cap });
    }
    let mut squares = vec![SquarePlacement {
        centre: Point::default(),
        orientation: QuarterTurns::IDENTITY,
        depth: Address::default(),
    }];
    for level in 1..=n {
        let mut next = Vec::with_capacity(squares.len() * 4);
        for g in 0..4u8 {
            let turn = QuarterTurns::new(g as i64);
            let shift = GROUP_SHIFT[g as usize].scale(1 << (level - 1));
            next.extend(squares.iter().map(|s| SquarePlacement {
                centre: turn.apply(s.centre) + shift,
                orientation: s.orientation + turn,
                depth: s.depth.prepend(g),
            }));
        }
        squares = next;
    }
    Ok(squares)
}

/// Is `centre` the centre of a square of `P_n`?
pub fn is_centre(n: u32, centre: Point) -> bool {
    if n == 0 {
        return centre == Point::default();
    }
    centre.is_odd() && centre.diamond_norm() <= (1i64 << n) - 1
}

/// Address of the square of `P_n` centred at `centre`, if any.
pub fn address_of(n: u32, centre: Point) -> Option<Address> {
    if !is_centre(n, centre) || n > MAX_QUERY_LEVEL {
        return None;
    }
    let mut p = centre;
    let mut digits = Vec::with_capacity(n as usize);
    for level in (1..=n).rev() {
        let half = 1i64 << (level - 1);
        let g = (0..4u8).find(|&g| {
            let local = QuarterTurns::new(-(g as i64))
                .apply(p - GROUP_SHIFT[g as usize].scale(half));
            is_centre(level - 1, local)
        })?;
        p = QuarterTurns::new(-(g as i64)).apply(p - GROUP_SHIFT[g as usize].scale(half));
        digits.push(g);
    }
    Address::new(&digits).ok()
}

/// Is the cell covered by at least one square of `P_n`?
pub fn is_covered(n: u32, cell: Cell) -> bool {
    if n == 0 {
        return (-1..=0).contains(&cell.k) && (-1..=0).contains(&cell.m);
    }
    cell.odd_corners().iter().any(|&c| is_centre(n, c))
}

/// Is the cell covered by two squares of `P_n` (its interior)?
pub fn is_double_covered(n: u32, cell: Cell) -> bool {
    n > 0 && cell.odd_corners().iter().all(|&c| is_centre(n, c))
}

/// The two squares covering an interior cell, topmost first.
pub fn covering_squares(n: u32, cell: Cell) -> Result<[SquarePlacement; 2]> {
    if !is_double_covered(n, cell) {
        return Err(Error::OutsideSupport { level: n, cell });
    }
    let [a, b] = cell.odd_corners().map(|c| {
        address_of(n, c)
            .map(|addr| placement_of(&addr))
            .ok_or(Error::OutsideSupport { level: n, cell })
    });
    let (a, b) = (a?, b?);
    Ok(match stack_compare(&a.depth, &b.depth)? {
        Stacking::Below => [b, a],
        _ => [a, b],
    })
}

/// A point with rational coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RationalPoint {
    pub x: Ratio<i64>,
    pub y: Ratio<i64>,
}

impl RationalPoint {
    pub fn new(x: Ratio<i64>, y: Ratio<i64>) -> Self {
        RationalPoint { x, y }
    }
}

fn within_one(d: Ratio<i64>) -> bool {
    let one = Ratio::from_integer(1);
    -one <= d && d <= one
}

/// Number of (closed) squares of `P_n` containing `p`.
///
/// Fails when a square that would contain `p` in a larger `P_n` is missing,
/// i.e. `p` is too close to the edge of the level-`n` support.
pub fn point_cover_count(n: u32, p: &RationalPoint) -> Result<usize> {
    if n == 0 {
        return Err(Error::PointOutsideSupport { level: n });
    }
    let xs = p.x.floor().to_integer() - 1..=(p.x.ceil().to_integer() + 1);
    let mut count = 0;
    for cx in xs {
        if !within_one(Ratio::from_integer(cx) - p.x) {
            continue;
        }
        let ys = p.y.floor().to_integer() - 1..=(p.y.ceil().to_integer() + 1);
        for cy in ys {
            if !within_one(Ratio::from_integer(cy) - p.y) {
                continue;
            }
            let c = Point::new(cx, cy);
            if !c.is_odd() {
                continue;
            }
            if !is_centre(n, c) {
                return Err(Error::PointOutsideSupport { level: n });
            }
            count += 1;
        }
    }
    Ok(count)
}

/// The topmost square of `P_n` over a cell, found by descending the recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TopSquare {
    pub centre: Point,
    pub orientation: QuarterTurns,
    /// Offset of the cell centre from the square centre in the square's own frame,
    /// one of `(+-1, +-1)` (doubled units).
    pub local_offset: Point,
}

/// Descends the recursion to find the topmost square over `cell`. `O(n)`.
///
/// Copies are tried in stacking order and the first one covering the cell wins.
pub fn top_square(n: u32, cell: Cell) -> Option<TopSquare> {
    if n > MAX_QUERY_LEVEL || !is_covered(n, cell) {
        return None;
    }
    let world = cell.doubled_centre();
    let mut p = world;
    let mut total = QuarterTurns::IDENTITY;
    for level in (1..=n).rev() {
        let shift = 1i64 << level;
        let mut found = false;
        for g in 0..4u8 {
            let inv = QuarterTurns::new(-(g as i64));
            let q = inv.apply(p - GROUP_SHIFT[g as usize].scale(shift));
            if covers_doubled(level - 1, q) {
                p = q;
                total = total + QuarterTurns::new(g as i64);
                found = true;
                break;
            }
        }
        if !found {
            return None;
        }
    }
    debug_assert!(p.x.abs() == 1 && p.y.abs() == 1);
    let arm = total.apply(p);
    let c = world - arm;
    Some(TopSquare {
        centre: Point::new(c.x / 2, c.y / 2),
        orientation: total,
        local_offset: p,
    })
}

fn covers_doubled(level: u32, q: Point) -> bool {
    if level == 0 {
        return q.x.abs() == 1 && q.y.abs() == 1;
    }
    is_covered(level, Cell::from_doubled_centre(q))
}

/// Bounding square of every cell `P_n` covers.
pub fn tile_window_bounds(n: u32) -> Window {
    Window::square(1i64 << n)
}

/// Cells, in integer coordinates. Rectangles are half-open `[k0, k1) x [m0, m1)`;
/// diamonds keep the cells lying entirely inside `|x - cx| + |y - cy| <= radius`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Window {
    Rect { k0: i64, m0: i64, k1: i64, m1: i64 },
    Diamond { centre: Point, radius: i64 },
}

impl Window {
    /// `[-r, r)^2`, centred on the origin.
    pub fn square(r: i64) -> Window {
        Window::Rect {
            k0: -r,
            m0: -r,
            k1: r,
            m1: r,
        }
    }

    /// Square of half-side `r` centred on the vertex `centre`.
    pub fn square_at(centre: Point, r: i64) -> Window {
        Window::Rect {
            k0: centre.x - r,
            m0: centre.y - r,
            k1: centre.x + r,
            m1: centre.y + r,
        }
    }

    pub fn diamond(radius: i64) -> Window {
        Window::Diamond {
            centre: Point::default(),
            radius,
        }
    }

    /// Bounding rectangle `(k0, m0, k1, m1)`, half-open.
    pub fn bounds(&self) -> (i64, i64, i64, i64) {
        match *self {
            Window::Rect { k0, m0, k1, m1 } => (k0, m0, k1.max(k0), m1.max(m0)),
            Window::Diamond { centre, radius } => {
                let r = radius.max(0);
                (centre.x - r, centre.y - r, centre.x + r, centre.y + r)
            }
        }
    }

    pub fn contains(&self, cell: Cell) -> bool {
        match *self {
            Window::Rect { k0, m0, k1, m1 } => {
                (k0..k1).contains(&cell.k) && (m0..m1).contains(&cell.m)
            }
            Window::Diamond { centre, radius } => {
                Cell::new(cell.k - centre.x, cell.m - centre.y).outer_diamond_norm() <= radius
            }
        }
    }

    /// Half-side of the largest centred square inside the window.
    pub fn inradius(&self) -> i64 {
        match *self {
            Window::Rect { k0, m0, k1, m1 } => ((k1 - k0).min(m1 - m0) / 2).max(0),
            Window::Diamond { radius, .. } => (radius / 2).max(0),
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let (k0, m0, k1, m1) = self.bounds();
        (m0..m1)
            .flat_map(move |m| (k0..k1).map(move |k| Cell::new(k, m)))
            .filter(move |c| self.contains(*c))
    }

    pub fn cell_count(&self) -> usize {
        self.cells().count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn addr(d: &[u8]) -> Address {
        Address::new(d).unwrap()
    }

    #[test]
    fn placement_examples() {
        let p = placement_of(&addr(&[0]));
        assert_eq!((p.centre, p.orientation.get()), (Point::new(-1, 0), 0));
        let p = placement_of(&addr(&[1]));
        assert_eq!((p.centre, p.orientation.get()), (Point::new(0, 1), 1));
        let p = placement_of(&addr(&[2, 3]));
        assert_eq!((p.centre, p.orientation.get()), (Point::new(2, 1), 1));
        assert_eq!(p.depth, addr(&[2, 3]));
    }

    #[test]
    fn small_levels() {
        let p0 = enumerate_squares(0, DEFAULT_LEVEL_CAP).unwrap();
        assert_eq!(p0.len(), 1);
        assert_eq!(p0[0].centre, Point::default());
        let p1: Vec<Point> = enumerate_squares(1, DEFAULT_LEVEL_CAP)
            .unwrap()
            .iter()
            .map(|s| s.centre)
            .collect();
        assert_eq!(
            p1,
            vec![
                Point::new(-1, 0),
                Point::new(0, 1),
                Point::new(1, 0),
                Point::new(0, -1)
            ]
        );
        let p2 = enumerate_squares(2, DEFAULT_LEVEL_CAP).unwrap();
        assert_eq!(p2.len(), 16);
        assert!(p2.iter().all(|s| s.centre.is_odd() && s.centre.diamond_norm() <= 3));
    }

    #[test]
    fn level_cap() {
        assert_eq!(
            enumerate_squares(13, DEFAULT_LEVEL_CAP),
            Err(Error::LevelCap { level: 13, cap: 12 })
        );
    }

    #[test]
    fn enumeration_is_sorted_top_first() {
        let sq = enumerate_squares(4, DEFAULT_LEVEL_CAP).unwrap();
        for w in sq.windows(2) {
            assert_eq!(stack_compare(&w[0].depth, &w[1].depth), Ok(Stacking::Above));
        }
        for s in &sq {
            assert_eq!(placement_of(&s.depth), *s);
            assert_eq!(address_of(4, s.centre), Some(s.depth));
        }
    }

    #[test]
    fn covering_examples() {
        let [top, below] = covering_squares(1, Cell::new(0, 0)).unwrap();
        assert_eq!((top.centre, top.depth), (Point::new(0, 1), addr(&[1])));
        assert_eq!((below.centre, below.depth), (Point::new(1, 0), addr(&[2])));
        let [top, below] = covering_squares(1, Cell::new(-1, -1)).unwrap();
        assert_eq!((top.centre, top.depth), (Point::new(-1, 0), addr(&[0])));
        assert_eq!((below.centre, below.depth), (Point::new(0, -1), addr(&[3])));
        assert!(matches!(
            covering_squares(1, Cell::new(1, 0)),
            Err(Error::OutsideSupport { .. })
        ));
    }

    #[test]
    fn point_counts() {
        let r = |n: i64, d: i64| Ratio::new(n, d);
        let pc = |x, y| point_cover_count(4, &RationalPoint::new(x, y)).unwrap();
        assert_eq!(pc(r(1, 2), r(1, 2)), 2);
        assert_eq!(pc(r(1, 1), r(1, 2)), 3);
        assert_eq!(pc(r(1, 1), r(0, 1)), 5);
        assert_eq!(pc(r(1, 1), r(1, 1)), 4);
        assert!(point_cover_count(1, &RationalPoint::new(r(3, 1), r(0, 1))).is_err());
    }

    #[test]
    fn stacking_examples() {
        assert_eq!(stack_compare(&addr(&[0, 3]), &addr(&[1, 0])), Ok(Stacking::Above));
        assert_eq!(stack_compare(&addr(&[2, 1]), &addr(&[2, 3])), Ok(Stacking::Above));
        assert_eq!(stack_compare(&addr(&[1, 2]), &addr(&[1, 2])), Ok(Stacking::Equal));
        assert_eq!(stack_compare(&addr(&[1, 2]), &addr(&[1])), Err(Error::LengthMismatch(2, 1)));
    }

    #[test]
    fn lattice_membership() {
        let l = Lattice::default();
        assert!(l.contains(Point::new(2, 0)));
        assert!(!l.contains(Point::new(1, 0)));
        assert!(l.contains_coset(Point::new(2, 0), 4, Point::new(6, 4)));
        assert!(!l.contains_coset(Point::new(2, 0), 4, Point::new(4, 0)));
    }

    #[test]
    fn top_square_matches_covering_pair() {
        for n in 1..=5 {
            let r = 1i64 << n;
            for m in -r..r {
                for k in -r..r {
                    let cell = Cell::new(k, m);
                    if let Ok([top, _]) = covering_squares(n, cell) {
                        let t = top_square(n, cell).unwrap();
                        assert_eq!(t.centre, top.centre);
                        assert_eq!(t.orientation, top.orientation);
                    }
                }
            }
        }
    }

    #[test]
    fn cell_rotation() {
        assert_eq!(Cell::new(0, 0).rotate(QuarterTurns::new(1)), Cell::new(0, -1));
        assert_eq!(Cell::new(3, -2).rotate(QuarterTurns::new(4)), Cell::new(3, -2));
    }
}
