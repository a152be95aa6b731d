//! Quantitative checks on windows of the tiling: the local metric, period
//! scans, the periodic packings of interior patches, patch frequencies and
//! repetitivity radii.

use std::collections::{HashMap, HashSet};
use std::f64::consts::{PI, SQRT_2};

use crate::decoration::TileKind;
use crate::error::{Error, Result};
use crate::geometry::{Cell, Lattice, Point, QuarterTurns, Window};
use crate::par::Exec;
use crate::view::{interior, ArrowedTiling, Patch};

/// How far two origin-anchored patches agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Agreement {
    /// Squared radius of the largest ball whose fully contained cells agree;
    /// `None` when the patches are identical.
    pub radius_sq: Option<i64>,
    /// A disagreeing cell attaining the radius.
    pub witness: Option<Cell>,
}

impl Agreement {
    pub fn radius(&self) -> f64 {
        self.radius_sq.map_or(f64::INFINITY, |r| (r as f64).sqrt())
    }

    /// `min(1/r, 1/sqrt 2)`, evaluated at zero shift, so an upper bound on the metric.
    pub fn distance(&self) -> f64 {
        (1.0 / self.radius()).min(1.0 / SQRT_2)
    }
}

/// Compares two patches anchored at the origin. A cell present in only one
/// of them counts as a disagreement.
pub fn agreement_radius(p1: &Patch, p2: &Patch) -> Agreement {
    let (a0, b0, a1, b1) = p1.window().bounds();
    let (c0, d0, c1, d1) = p2.window().bounds();
    let (k0, m0, k1, m1) = (a0.min(c0), b0.min(d0), a1.max(c1), b1.max(d1));
    let mut best: Option<(i64, Cell)> = None;
    for m in m0..m1 {
        for k in k0..k1 {
            let cell = Cell::new(k, m);
            if p1.get(cell) != p2.get(cell) {
                let r = cell.outer_radius_sq();
                if best.is_none_or(|(b, _)| r < b) {
                    best = Some((r, cell));
                }
            }
        }
    }
    Agreement {
        radius_sq: best.map(|b| b.0),
        witness: best.map(|b| b.1),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeriodVerdict {
    Period,
    /// A cell `c` with `p(c) != p(c + t)`, both inside the window.
    Broken(Cell),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeriodReport {
    pub t: (i64, i64),
    pub verdict: PeriodVerdict,
    pub window: Window,
}

impl PeriodReport {
    pub fn is_period(&self) -> bool {
        self.verdict == PeriodVerdict::Period
    }
}

/// Tests every translation `t` with `|t|_inf <= bound`, including zero.
/// Empty cells take part in the comparison, so sub-patches can be scanned.
pub fn find_periods(patch: &Patch, bound: i64, exec: Exec) -> Result<Vec<PeriodReport>> {
    let window = patch.window();
    if bound < 0 || window.inradius() < 4 * bound {
        return Err(Error::WindowTooSmall {
            inradius: window.inradius(),
            bound,
        });
    }
    let ts: Vec<(i64, i64)> = (-bound..=bound)
        .flat_map(|y| (-bound..=bound).map(move |x| (x, y)))
        .collect();
    let cells: Vec<Cell> = window.cells().collect();
    Ok(exec.map_slice(&ts, |&(dx, dy)| {
        let broken = cells.iter().find(|&&c| {
            let d = c.offset(dx, dy);
            window.contains(d) && patch.get(c) != patch.get(d)
        });
        PeriodReport {
            t: (dx, dy),
            verdict: broken.map_or(PeriodVerdict::Period, |&c| PeriodVerdict::Broken(c)),
            window,
        }
    }))
}

/// `R'_n`: the tiles of `R_n` without a free vertex.
pub fn interior_patch(tiling: &ArrowedTiling, n: u32) -> Patch {
    interior(&tiling.full_patch(n))
}

/// The cells one packing level places inside a window, after checking
/// every placed tile against the limit tiling.
#[derive(Clone, Debug)]
pub struct MnPacking {
    pub n: u32,
    pub window: Window,
    /// Window cells covered by each of the four families.
    pub families: [HashSet<Cell>; 4],
    pub tiles_checked: usize,
    pub window_cells: usize,
}

impl MnPacking {
    pub fn covered(&self) -> HashSet<Cell> {
        self.families.iter().flatten().copied().collect()
    }

    /// Fraction of window cells covered by the union of the four families.
    pub fn density(&self) -> f64 {
        self.covered().len() as f64 / self.window_cells as f64
    }
}

/// Translates of `phi^g R'_n` by `phi^g (2^n, 0) + 2^{n+1} Lambda`, g = 0..3,
/// intersected with `window` and compared tile by tile with the tiling.
pub fn mn_packing(tiling: &ArrowedTiling, n: u32, window: Window) -> Result<MnPacking> {
    if n == 0 || n > 6 {
        return Err(Error::InvalidParameter(format!("packing level {n} outside 1..=6")));
    }
    let reference = tiling.limit_patch(window);
    let base = interior_patch(tiling, n);
    let step = 1i64 << (n + 1);
    let lattice = Lattice::default();
    let (k0, m0, k1, m1) = window.bounds();
    let reach = (1i64 << n) + 2 * step + (k1 - k0).abs().max((m1 - m0).abs());
    let mut families: [HashSet<Cell>; 4] = Default::default();
    let mut checked = 0;
    for g in 0..4u8 {
        let turn = QuarterTurns::new(g as i64);
        let copy = base.rotate(turn);
        let offset = turn.apply(Point::new(1 << n, 0));
        let centre = Point::new((k0 + k1) / 2, (m0 + m1) / 2);
        // Lambda coordinates covering the window with margin.
        let span = reach / step + 2;
        let (ci, cj) = ((centre.x + centre.y) / (2 * step), (centre.x - centre.y) / (2 * step));
        for i in ci - span..=ci + span {
            for j in cj - span..=cj + span {
                let v = lattice.point(i, j);
                let (dx, dy) = (offset.x + step * v.x, offset.y + step * v.y);
                for t in copy.tiles() {
                    let cell = t.cell.offset(dx, dy);
                    if !window.contains(cell) {
                        continue;
                    }
                    checked += 1;
                    if reference.get(cell) != Some(t.kind()) {
                        return Err(Error::MismatchAgainstA {
                            level: n,
                            family: g as usize,
                            cell,
                        });
                    }
                    families[g as usize].insert(cell);
                }
            }
        }
    }
    Ok(MnPacking {
        n,
        window,
        families,
        tiles_checked: checked,
        window_cells: window.cell_count(),
    })
}

/// Cells whose diagonal lies on `x = y` or `x = -y`.
pub fn is_diagonal_cell(c: Cell) -> bool {
    c.k == c.m || c.k == -c.m - 1
}

/// Canonical text for a patch up to translation and rotation.
pub fn fingerprint(pattern: &Patch) -> String {
    (0..4)
        .map(|o| {
            let tiles = normalised(&pattern.rotate(QuarterTurns::new(o)));
            tiles
                .iter()
                .map(|(d, k)| format!("{},{}:{}", d.0, d.1, k))
                .collect::<Vec<_>>()
                .join(";")
        })
        .min()
        .unwrap_or_default()
}

fn normalised(p: &Patch) -> Vec<((i64, i64), TileKind)> {
    let mut tiles: Vec<_> = p.tiles().map(|t| ((t.cell.m, t.cell.k), t.kind())).collect();
    tiles.sort();
    let Some(&((m0, k0), _)) = tiles.first() else {
        return Vec::new();
    };
    tiles
        .into_iter()
        .map(|((m, k), kind)| ((k - k0, m - m0), kind))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyRecord {
    pub fingerprint: String,
    pub radius: i64,
    pub centre: Point,
    pub count: usize,
    /// `count / (pi r^2)`.
    pub frequency: f64,
}

/// Largest minus smallest normalised frequency.
pub fn frequency_spread(records: &[FrequencyRecord]) -> f64 {
    let lo = records.iter().map(|r| r.frequency).fold(f64::INFINITY, f64::min);
    let hi = records.iter().map(|r| r.frequency).fold(f64::NEG_INFINITY, f64::max);
    hi - lo
}

/// Counts copies of `pattern` (translations and the four rotations) lying
/// entirely inside the ball of radius `r` about each centre. Copies that
/// cover the same cells are counted once.
pub fn patch_frequency(
    source: &Patch,
    pattern: &Patch,
    r: i64,
    centres: &[Point],
    exec: Exec,
) -> Result<Vec<FrequencyRecord>> {
    if pattern.is_empty() {
        return Err(Error::InvalidParameter("empty pattern".into()));
    }
    let variants: Vec<Vec<((i64, i64), TileKind)>> = {
        let mut v: Vec<_> = (0..4)
            .map(|o| normalised(&pattern.rotate(QuarterTurns::new(o))))
            .collect();
        v.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
        v.dedup();
        v
    };
    let diameter = variants[0]
        .iter()
        .map(|((dk, dm), _)| (dk.abs() + 1).max(dm.abs() + 1))
        .max()
        .unwrap_or(1);
    if r < diameter {
        return Err(Error::InvalidParameter(format!("radius {r} below pattern diameter {diameter}")));
    }
    let fp = fingerprint(pattern);
    let r2 = r * r;
    let inside = |c: Cell, x: Point| {
        c.corners()
            .iter()
            .all(|v| (v.x - x.x).pow(2) + (v.y - x.y).pow(2) <= r2)
    };
    Ok(exec.map_slice(centres, |&x| {
        let mut seen: HashSet<Vec<Cell>> = HashSet::new();
        for m in x.y - r..x.y + r {
            for k in x.x - r..x.x + r {
                for var in &variants {
                    let placed: Option<Vec<Cell>> = var
                        .iter()
                        .map(|&((dk, dm), kind)| {
                            let c = Cell::new(k + dk, m + dm);
                            (inside(c, x) && source.get(c) == Some(kind)).then_some(c)
                        })
                        .collect();
                    if let Some(mut cells) = placed {
                        cells.sort();
                        seen.insert(cells);
                    }
                }
            }
        }
        FrequencyRecord {
            fingerprint: fp.clone(),
            radius: r,
            centre: x,
            count: seen.len(),
            frequency: seen.len() as f64 / (PI * (r as f64).powi(2)),
        }
    }))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Repetitivity {
    pub r: i64,
    /// Smallest half-side `R` such that every `2R x 2R` square in the window
    /// contains every `2r x 2r` square patch type found in the window.
    pub big_r: i64,
    pub patch_types: usize,
}

impl Repetitivity {
    pub fn ratio(&self) -> f64 {
        self.big_r as f64 / self.r as f64
    }
}

const EMPTY: u32 = u32::MAX;

/// Dense grid of ids over a rectangle.
struct Grid {
    k0: i64,
    m0: i64,
    w: usize,
    h: usize,
    ids: Vec<u32>,
}

impl Grid {
    fn from_patch(p: &Patch) -> Grid {
        let (k0, m0, k1, m1) = p.window().bounds();
        let (w, h) = ((k1 - k0) as usize, (m1 - m0) as usize);
        let mut ids = vec![EMPTY; w * h];
        for t in p.tiles() {
            ids[(t.cell.m - m0) as usize * w + (t.cell.k - k0) as usize] = t.kind().index() as u32;
        }
        Grid { k0, m0, w, h, ids }
    }
}

/// Ids of all `2^levels`-sided square blocks of the four rotated grids,
/// interned jointly so equal contents get equal ids.
fn block_ids(grids: &mut [Grid], levels: u32, exec: Exec) {
    for level in 1..=levels {
        let half = 1usize << (level - 1);
        let keys: Vec<Vec<[u32; 4]>> = grids
            .iter()
            .map(|g| {
                let rows: Vec<Vec<[u32; 4]>> = exec.map_range(0, g.h as i64, |y| {
                    let y = y as usize;
                    (0..g.w)
                        .map(|x| {
                            if x + half >= g.w || y + half >= g.h {
                                return [EMPTY; 4];
                            }
                            [
                                g.ids[y * g.w + x],
                                g.ids[y * g.w + x + half],
                                g.ids[(y + half) * g.w + x],
                                g.ids[(y + half) * g.w + x + half],
                            ]
                        })
                        .collect()
                });
                rows.into_iter().flatten().collect()
            })
            .collect();
        let mut table: HashMap<[u32; 4], u32> = HashMap::new();
        for (g, ks) in grids.iter_mut().zip(keys) {
            for (slot, key) in g.ids.iter_mut().zip(ks) {
                *slot = if key.contains(&EMPTY) {
                    EMPTY
                } else {
                    let next = table.len() as u32;
                    *table.entry(key).or_insert(next)
                };
            }
        }
    }
}

/// Estimates the repetitivity radius for `r`-patches (squares of side `2r`,
/// `r` a power of two) inside `window`, which must be fully tiled.
pub fn repetitivity_radius(patch: &Patch, r: i64, exec: Exec) -> Result<Repetitivity> {
    if r < 1 || r.count_ones() != 1 || r > 64 {
        return Err(Error::InvalidParameter(format!("patch radius {r} must be a power of two <= 64")));
    }
    let side = 2 * r;
    let levels = side.trailing_zeros();
    let mut grids: Vec<Grid> = (0..4)
        .map(|o| Grid::from_patch(&patch.rotate(QuarterTurns::new(o))))
        .collect();
    block_ids(&mut grids, levels, exec);
    let (w, h) = (grids[0].w, grids[0].h);
    if (w as i64) < side || (h as i64) < side {
        return Err(Error::SearchExhausted(0));
    }
    let (k0, m0) = (grids[0].k0, grids[0].m0);
    let aw = w - side as usize + 1;
    let ah = h - side as usize + 1;
    // Canonical type per anchor: smallest id among the four rotated copies.
    let mut types = vec![EMPTY; aw * ah];
    for y in 0..ah {
        for x in 0..aw {
            let (a, b) = (k0 + x as i64, m0 + y as i64);
            let mut best = EMPTY;
            for (o, g) in grids.iter().enumerate() {
                let turn = QuarterTurns::new(o as i64);
                let p = turn.apply(Point::new(a, b));
                let q = turn.apply(Point::new(a + side, b + side));
                let (gx, gy) = (p.x.min(q.x) - g.k0, p.y.min(q.y) - g.m0);
                best = best.min(g.ids[gy as usize * g.w + gx as usize]);
            }
            types[y * aw + x] = best;
        }
    }
    if types.contains(&EMPTY) {
        return Err(Error::InvalidParameter("window is not fully tiled".into()));
    }
    let mut dense: HashMap<u32, u32> = HashMap::new();
    for t in types.iter_mut() {
        let next = dense.len() as u32;
        *t = *dense.entry(*t).or_insert(next);
    }
    let n_types = dense.len();
    let all_present = |big_r: i64| -> bool {
        let s = (2 * (big_r - r) + 1) as usize;
        if s > aw || s > ah {
            return false;
        }
        let bands = (ah - s + 1) as i64;
        let ok = exec.map_range(0, bands, |y0| {
            let y0 = y0 as usize;
            let mut counts = vec![0u32; n_types];
            let mut distinct = 0usize;
            let column = |x: usize, counts: &mut Vec<u32>, distinct: &mut usize, add: bool| {
                for y in y0..y0 + s {
                    let t = types[y * aw + x] as usize;
                    if add {
                        if counts[t] == 0 {
                            *distinct += 1;
                        }
                        counts[t] += 1;
                    } else {
                        counts[t] -= 1;
                        if counts[t] == 0 {
                            *distinct -= 1;
                        }
                    }
                }
            };
            for x in 0..s {
                column(x, &mut counts, &mut distinct, true);
            }
            if distinct < n_types {
                return false;
            }
            for x in s..aw {
                column(x, &mut counts, &mut distinct, true);
                column(x - s, &mut counts, &mut distinct, false);
                if distinct < n_types {
                    return false;
                }
            }
            true
        });
        ok.into_iter().all(|b| b)
    };
    let max_r = r + (aw.min(ah) as i64 - 1) / 2;
    if !all_present(max_r) {
        return Err(Error::SearchExhausted(max_r));
    }
    let (mut lo, mut hi) = (r, max_r);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if all_present(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(Repetitivity {
        r,
        big_r: lo,
        patch_types: n_types,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoration::{ArrowDir, ColourType};

    #[test]
    fn identical_patches_have_infinite_radius() {
        let t = ArrowedTiling::default();
        let p = t.limit_patch(Window::square(8));
        let a = agreement_radius(&p, &p);
        assert_eq!(a.radius_sq, None);
        assert_eq!(a.distance(), 0.0);
    }

    #[test]
    fn difference_next_to_origin() {
        let t = ArrowedTiling::default();
        let p = t.limit_patch(Window::square(8));
        let mut q = p.clone();
        q.set(Cell::new(0, 0), Some(TileKind::new(ColourType::T4, ArrowDir::NW)));
        let a = agreement_radius(&p, &q);
        assert_eq!(a.radius_sq, Some(2));
        assert_eq!(a.distance(), 1.0 / SQRT_2);
        assert_eq!(agreement_radius(&q, &p), a);
    }

    #[test]
    fn zero_shift_is_always_a_period() {
        let t = ArrowedTiling::default();
        let p = t.limit_patch(Window::square(16));
        let reports = find_periods(&p, 2, Exec::Sequential).unwrap();
        assert_eq!(reports.len(), 25);
        for rep in reports {
            assert_eq!(rep.is_period(), rep.t == (0, 0));
        }
        assert!(matches!(
            find_periods(&p, 5, Exec::Sequential),
            Err(Error::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn interior_sizes() {
        let t = ArrowedTiling::default();
        for n in 1..=4u32 {
            assert_eq!(interior_patch(&t, n).len(), 2 * 4usize.pow(n) - (2usize << n));
        }
    }

    #[test]
    fn first_packing_level_matches() {
        let t = ArrowedTiling::default();
        let p = mn_packing(&t, 1, Window::square(32)).unwrap();
        assert!(p.tiles_checked > 0);
        assert!((p.density() - 0.5).abs() < 0.02);
    }

    #[test]
    fn fingerprint_ignores_rotation_and_translation() {
        let t = ArrowedTiling::default();
        let p = t.limit_patch(Window::square_at(Point::new(5, 3), 2));
        let q = p.rotate(QuarterTurns::new(3)).translate(7, -2);
        assert_eq!(fingerprint(&p), fingerprint(&q));
    }

    #[test]
    fn single_tile_frequencies_sum_to_cell_density() {
        let t = ArrowedTiling::default();
        let src = t.limit_patch(Window::square(40));
        let centres = [Point::new(0, 0), Point::new(6, -4)];
        let mut totals = [0usize; 2];
        for c in ColourType::ALL {
            let pat = Patch::from_tiles([crate::decoration::TileInstance::new(
                Cell::new(0, 0),
                TileKind::new(c, ArrowDir::SE),
            )]);
            let recs = patch_frequency(&src, &pat, 16, &centres, Exec::Sequential).unwrap();
            for (tot, rec) in totals.iter_mut().zip(&recs) {
                *tot += rec.count;
            }
        }
        let cells_inside = Window::square(40)
            .cells()
            .filter(|c| c.outer_radius_sq() <= 256)
            .count();
        assert_eq!(totals[0], cells_inside);
    }

    #[test]
    fn repetitivity_small() {
        let t = ArrowedTiling::default();
        let p = t.limit_patch(Window::square(64));
        let a = repetitivity_radius(&p, 1, Exec::default()).unwrap();
        let b = repetitivity_radius(&p, 2, Exec::default()).unwrap();
        assert!(a.big_r >= 1 && b.big_r >= a.big_r);
        assert!(repetitivity_radius(&p, 3, Exec::default()).is_err());
    }
}
