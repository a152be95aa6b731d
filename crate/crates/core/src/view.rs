//! Top views of the decorated patches `R_n` and the limit tiling.

use crate::decoration::{BaseDecoration, TileInstance, TileKind};
use crate::error::{Error, Result};
use crate::geometry::{
    enumerate_squares, is_covered, is_double_covered, top_square, tile_window_bounds, Cell,
    QuarterTurns, Window, DEFAULT_LEVEL_CAP, MAX_QUERY_LEVEL,
};
use crate::par::Exec;

/// Finite patch of unit tiles on a window. Cells of the window may be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Patch {
    window: Window,
    k0: i64,
    m0: i64,
    width: usize,
    height: usize,
    tiles: Vec<Option<TileKind>>,
}

impl Patch {
    pub fn empty(window: Window) -> Patch {
        let (k0, m0, k1, m1) = window.bounds();
        let width = (k1 - k0) as usize;
        let height = (m1 - m0) as usize;
        Patch {
            window,
            k0,
            m0,
            width,
            height,
            tiles: vec![None; width * height],
        }
    }

    /// Evaluates `f` on every cell of the window, row-parallel under `exec`.
    pub fn from_fn<F>(window: Window, exec: Exec, f: F) -> Patch
    where
        F: Fn(Cell) -> Option<TileKind> + Sync + Send,
    {
        let mut p = Patch::empty(window);
        let (k0, m0, width) = (p.k0, p.m0, p.width);
        exec.fill_rows(&mut p.tiles, width, |row, out| {
            let m = m0 + row as i64;
            for (i, slot) in out.iter_mut().enumerate() {
                let cell = Cell::new(k0 + i as i64, m);
                if window.contains(cell) {
                    *slot = f(cell);
                }
            }
        });
        p
    }

    /// Builds a patch holding exactly `tiles`, on their bounding rectangle.
    pub fn from_tiles<I: IntoIterator<Item = TileInstance>>(tiles: I) -> Patch {
        let tiles: Vec<TileInstance> = tiles.into_iter().collect();
        let (mut k0, mut m0, mut k1, mut m1) = (i64::MAX, i64::MAX, i64::MIN, i64::MIN);
        for t in &tiles {
            k0 = k0.min(t.cell.k);
            m0 = m0.min(t.cell.m);
            k1 = k1.max(t.cell.k + 1);
            m1 = m1.max(t.cell.m + 1);
        }
        if tiles.is_empty() {
            return Patch::empty(Window::square(0));
        }
        let mut p = Patch::empty(Window::Rect { k0, m0, k1, m1 });
        for t in tiles {
            p.set(t.cell, Some(t.kind()));
        }
        p
    }

    pub fn window(&self) -> Window {
        self.window
    }

    fn index(&self, cell: Cell) -> Option<usize> {
        let dk = cell.k - self.k0;
        let dm = cell.m - self.m0;
        if dk < 0 || dm < 0 || dk as usize >= self.width || dm as usize >= self.height {
            return None;
        }
        Some(dm as usize * self.width + dk as usize)
    }

    pub fn get(&self, cell: Cell) -> Option<TileKind> {
        self.index(cell).and_then(|i| self.tiles[i])
    }

    pub fn tile(&self, cell: Cell) -> Option<TileInstance> {
        self.get(cell).map(|k| TileInstance::new(cell, k))
    }

    /// Panics if `cell` lies outside the bounding rectangle.
    pub fn set(&mut self, cell: Cell, kind: Option<TileKind>) {
        let i = self.index(cell).expect("cell inside patch bounds");
        self.tiles[i] = kind;
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.get(cell).is_some()
    }

    pub fn len(&self) -> usize {
        self.tiles.iter().filter(|t| t.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Tiles in row-major order, bottom row first.
    pub fn tiles(&self) -> impl Iterator<Item = TileInstance> + '_ {
        self.tiles.iter().enumerate().filter_map(move |(i, t)| {
            t.map(|kind| {
                let cell = Cell::new(
                    self.k0 + (i % self.width) as i64,
                    self.m0 + (i / self.width) as i64,
                );
                TileInstance::new(cell, kind)
            })
        })
    }

    /// Keeps the tiles inside `window`.
    pub fn restrict(&self, window: Window) -> Patch {
        Patch::from_fn(window, Exec::Sequential, |c| self.get(c))
    }

    /// First cell of `self` missing from, or different in, `other`.
    pub fn first_mismatch_in(&self, other: &Patch) -> Option<Cell> {
        self.tiles()
            .find(|t| other.get(t.cell) != Some(t.kind()))
            .map(|t| t.cell)
    }

    pub fn is_subpatch_of(&self, other: &Patch) -> bool {
        self.first_mismatch_in(other).is_none()
    }

    /// Image under `turns` clockwise quarter turns about the origin.
    pub fn rotate(&self, turns: QuarterTurns) -> Patch {
        Patch::from_tiles(self.tiles().map(|t| {
            TileInstance::new(t.cell.rotate(turns), t.kind().rotate(turns))
        }))
    }

    pub fn translate(&self, dk: i64, dm: i64) -> Patch {
        Patch::from_tiles(
            self.tiles()
                .map(|t| TileInstance::new(t.cell.offset(dk, dm), t.kind())),
        )
    }
}

/// Anything that can report the tile at a cell.
pub trait TileSource: Sync {
    fn tile_kind(&self, cell: Cell) -> Option<TileKind>;
}

impl TileSource for Patch {
    fn tile_kind(&self, cell: Cell) -> Option<TileKind> {
        self.get(cell)
    }
}

/// Radius of the diamond `S_n` occupies: `2^{n-2} - 1`.
pub fn central_radius(n: u32) -> i64 {
    if n < 2 {
        return -1;
    }
    (1i64 << (n - 2)) - 1
}

/// The arrowed tiling for one base decoration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArrowedTiling {
    pub base: BaseDecoration,
    pub exec: Exec,
}

impl Default for ArrowedTiling {
    fn default() -> Self {
        ArrowedTiling::new(BaseDecoration::frozen())
    }
}

impl ArrowedTiling {
    pub fn new(base: BaseDecoration) -> Self {
        ArrowedTiling {
            base,
            exec: Exec::default(),
        }
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    /// Tile of `R_n` at `cell`, including singly covered boundary cells.
    pub fn visible(&self, n: u32, cell: Cell) -> Option<TileKind> {
        top_square(n, cell).map(|t| self.base.decorate(&t))
    }

    /// Tile of `R_n` at an interior (doubly covered) cell, by descent.
    pub fn cell_query(&self, n: u32, cell: Cell) -> Result<TileInstance> {
        if n > MAX_QUERY_LEVEL || !is_double_covered(n, cell) {
            return Err(Error::OutsideSupport { level: n, cell });
        }
        self.visible(n, cell)
            .map(|k| TileInstance::new(cell, k))
            .ok_or(Error::OutsideSupport { level: n, cell })
    }

    /// `R_n` restricted to `window`; every cell of the window must be interior.
    pub fn top_view(&self, n: u32, window: Window) -> Result<Patch> {
        if let Some(cell) = window.cells().find(|&c| !is_double_covered(n, c)) {
            return Err(Error::OutsideSupport { level: n, cell });
        }
        Ok(Patch::from_fn(window, self.exec, |c| self.visible(n, c)))
    }

    /// The full `R_n`, painted square by square from the top of the stack down.
    /// Independent of the descent in [`top_square`].
    pub fn overlay(&self, n: u32) -> Result<Patch> {
        let squares = enumerate_squares(n, DEFAULT_LEVEL_CAP)?;
        let mut patch = Patch::empty(tile_window_bounds(n));
        for sq in &squares {
            for cell in sq.cells() {
                if patch.get(cell).is_none() {
                    let t = crate::decoration::tile_at(sq, cell, &self.base)?;
                    patch.set(cell, Some(t.kind()));
                }
            }
        }
        Ok(patch)
    }

    /// The overlay rendering restricted to `window`.
    pub fn overlay_view(&self, n: u32, window: Window) -> Result<Patch> {
        if let Some(cell) = window.cells().find(|&c| !is_double_covered(n, c)) {
            return Err(Error::OutsideSupport { level: n, cell });
        }
        Ok(self.overlay(n)?.restrict(window))
    }

    /// `R_n` by descent over its whole support.
    pub fn full_patch(&self, n: u32) -> Patch {
        Patch::from_fn(tile_window_bounds(n), self.exec, |c| {
            if is_covered(n, c) {
                self.visible(n, c)
            } else {
                None
            }
        })
    }

    /// `S_n`: `R_n` on the diamond of radius `2^{n-2} - 1`.
    pub fn central_patch(&self, n: u32) -> Patch {
        let r = central_radius(n).max(0);
        Patch::from_fn(Window::diamond(r), self.exec, |c| self.visible(n, c))
    }

    /// Smallest level whose central patch contains `cell`, and at least the
    /// `ceil(log2(|k|+|m|+2)) + 2` rule.
    pub fn stable_level(cell: Cell) -> u32 {
        let by_norm = ceil_log2((cell.k.abs() + cell.m.abs() + 2) as u64) + 2;
        let by_diamond = ceil_log2((cell.outer_diamond_norm() + 1) as u64) + 2;
        by_norm.max(by_diamond).max(2)
    }

    /// Tile of the limit tiling at `cell`, cross-checked against the next level.
    pub fn limit_tile(&self, cell: Cell) -> TileInstance {
        let mut n = Self::stable_level(cell);
        loop {
            let a = self.visible(n, cell);
            if n + 1 >= MAX_QUERY_LEVEL || a == self.visible(n + 1, cell) {
                let kind = a.expect("cell inside the central patch");
                return TileInstance::new(cell, kind);
            }
            n += 1;
        }
    }

    /// Level at which every cell of `window` has stabilised.
    pub fn window_level(window: &Window) -> u32 {
        let (k0, m0, k1, m1) = window.bounds();
        [
            Cell::new(k0, m0),
            Cell::new(k1 - 1, m0),
            Cell::new(k0, m1 - 1),
            Cell::new(k1 - 1, m1 - 1),
        ]
        .into_iter()
        .map(Self::stable_level)
        .max()
        .unwrap_or(2)
    }

    /// The limit tiling on `window`, read off a single stabilised level.
    pub fn limit_patch(&self, window: Window) -> Patch {
        let n = Self::window_level(&window);
        Patch::from_fn(window, self.exec, |c| self.visible(n, c))
    }
}

impl TileSource for ArrowedTiling {
    fn tile_kind(&self, cell: Cell) -> Option<TileKind> {
        Some(self.limit_tile(cell).kind())
    }
}

fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// Arrow forced on a cell whose diagonal lies on `x = y` or `x = -y`.
pub fn diagonal_arrow(cell: Cell) -> Option<crate::decoration::ArrowDir> {
    use crate::decoration::ArrowDir;
    if cell.k == cell.m {
        Some(ArrowDir::SE)
    } else if cell.k == -cell.m - 1 {
        Some(if cell.k < 0 { ArrowDir::NE } else { ArrowDir::SW })
    } else {
        None
    }
}

/// Vertices of `cell` not shared with any other tile of `patch`.
pub fn free_vertices(patch: &Patch, cell: Cell) -> Vec<crate::geometry::Point> {
    cell.corners()
        .into_iter()
        .filter(|v| {
            let around = [
                Cell::new(v.x, v.y),
                Cell::new(v.x - 1, v.y),
                Cell::new(v.x - 1, v.y - 1),
                Cell::new(v.x, v.y - 1),
            ];
            around.iter().all(|&c| c == cell || !patch.contains(c))
        })
        .collect()
}

/// `R_n \ bd(R_n)`: tiles all of whose vertices are shared with another tile.
pub fn interior(patch: &Patch) -> Patch {
    Patch::from_tiles(
        patch
            .tiles()
            .filter(|t| free_vertices(patch, t.cell).is_empty()),
    )
}
