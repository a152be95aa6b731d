//! Verification suites. Each suite runs a set of named checks and reports
//! every outcome with a witness or a summary figure.
//!
//! A check that fails is a falsified claim. An `Err` from a suite means the
//! construction contradicted itself (for example an inconsistent block) and
//! the run should be treated as broken rather than failed.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{self, find_periods, is_diagonal_cell, mn_packing, PeriodVerdict};
use crate::decoration::{ArrowDir, ColourType, TileInstance, TileKind};
use crate::error::{Error, Result};
use crate::geometry::{
    enumerate_squares, point_cover_count, tile_window_bounds, Cell, Point, QuarterTurns,
    RationalPoint, Window, DEFAULT_LEVEL_CAP,
};
use crate::naked::{self, Shape};
use crate::par::Exec;
use crate::substitution::{
    self, apply_rule, apply_rule_n, coincidences, compose, infer_rule, infer_rule_from,
    primitivity_check, BlockPos, SubstitutionRule,
};
use crate::view::{diagonal_arrow, free_vertices, ArrowedTiling, Patch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    /// Centres of the stacked squares (CLI name `lemma1`).
    Centres,
    /// Double cover and point counts (CLI name `lemma2`).
    Cover,
    Arrows,
    Nesting,
    Substitution,
    Composition,
    LimitPeriodic,
    Periods,
    Coincidence,
    Naked,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Centres,
        Suite::Cover,
        Suite::Arrows,
        Suite::Nesting,
        Suite::Substitution,
        Suite::Composition,
        Suite::LimitPeriodic,
        Suite::Periods,
        Suite::Coincidence,
        Suite::Naked,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Centres => "lemma1",
            Suite::Cover => "lemma2",
            Suite::Arrows => "arrows",
            Suite::Nesting => "nesting",
            Suite::Substitution => "substitution",
            Suite::Composition => "composition",
            Suite::LimitPeriodic => "limitperiodic",
            Suite::Periods => "periods",
            Suite::Coincidence => "coincidence",
            Suite::Naked => "naked",
        }
    }
}

impl Suite {
    fn alias(self) -> Option<&'static str> {
        match self {
            Suite::Centres => Some("centres"),
            Suite::Cover => Some("cover"),
            _ => None,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s || x.alias() == Some(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Witness on failure, summary on success.
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{verdict} {}/{}: {}", self.suite, c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Scale of a verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Largest construction level for the level-indexed checks.
    pub level: u32,
    /// Window radius for window scans.
    pub radius: i64,
    /// Largest translation tested by the period scan.
    pub bound: i64,
    /// Number of sampled windows or points.
    pub samples: usize,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            level: 8,
            radius: 128,
            bound: 32,
            samples: 100,
            seed: 1,
            exec: Exec::default(),
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.level == 0 || self.level > DEFAULT_LEVEL_CAP {
            return Err(Error::InvalidParameter(format!(
                "level {} outside 1..={DEFAULT_LEVEL_CAP}",
                self.level
            )));
        }
        if !(16..=1024).contains(&self.radius) {
            return Err(Error::InvalidParameter(format!("radius {} outside 16..=1024", self.radius)));
        }
        if self.bound < 1 || 4 * self.bound > self.radius {
            return Err(Error::InvalidParameter(format!(
                "bound {} must be positive and at most radius/4",
                self.bound
            )));
        }
        if self.samples == 0 || self.samples > 100_000 {
            return Err(Error::InvalidParameter(format!("samples {} outside 1..=100000", self.samples)));
        }
        Ok(())
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let tiling = ArrowedTiling::default().with_exec(cfg.exec);
    match suite {
        Suite::Centres => centres(cfg),
        Suite::Cover => cover(cfg),
        Suite::Arrows => arrows(&tiling, cfg),
        Suite::Nesting => nesting(&tiling, cfg),
        Suite::Substitution => substitution_suite(&tiling, cfg),
        Suite::Composition => composition(&tiling, cfg),
        Suite::LimitPeriodic => limit_periodic(&tiling, cfg),
        Suite::Periods => periods(&tiling, cfg),
        Suite::Coincidence => coincidence(&tiling, cfg),
        Suite::Naked => naked_suite(&tiling, cfg),
    }
}

fn fmt_cell(c: Cell) -> String {
    format!("({}, {})", c.k, c.m)
}

fn centres(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Centres);
    // P_0 is the single square centred at the origin; the description starts at level 1.
    for n in 1..=cfg.level.min(10) {
        let squares = enumerate_squares(n, DEFAULT_LEVEL_CAP)?;
        let r = (1i64 << n) - 1;
        let mut seen = HashSet::new();
        let mut witness = None;
        for s in &squares {
            let c = s.centre;
            if !(c.is_odd() && c.diamond_norm() <= r) || !seen.insert(c) {
                witness.get_or_insert(c);
            }
        }
        let expected = (-r..=r)
            .flat_map(|x| (-r..=r).map(move |y| Point::new(x, y)))
            .filter(|p| p.is_odd() && p.diamond_norm() <= r)
            .count();
        let ok = witness.is_none() && squares.len() == expected && expected == 4usize.pow(n);
        let detail = match witness {
            Some(c) => format!("unexpected or repeated centre ({}, {})", c.x, c.y),
            None => format!("{} centres", squares.len()),
        };
        rep.check(format!("centres n={n}"), ok, detail);
    }
    Ok(rep)
}

/// Number of squares of `P_n` covering each cell, by enumeration.
fn cover_counts(n: u32) -> Result<HashMap<Cell, usize>> {
    let mut counts = HashMap::new();
    for s in enumerate_squares(n, DEFAULT_LEVEL_CAP)? {
        for c in s.cells() {
            *counts.entry(c).or_insert(0) += 1;
        }
    }
    Ok(counts)
}

fn cover(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Cover);
    for n in 1..=cfg.level.min(10) {
        let counts = cover_counts(n)?;
        let r = (1i64 << n) - 1;
        let bad = Window::diamond(r)
            .cells()
            .find(|c| counts.get(c).copied().unwrap_or(0) != 2);
        let interior = Window::diamond(r).cell_count();
        rep.check(
            format!("degree two n={n}"),
            bad.is_none(),
            bad.map_or(format!("{interior} interior cells"), |c| {
                format!("cell {} covered {} times", fmt_cell(c), counts.get(&c).copied().unwrap_or(0))
            }),
        );
    }
    let n = cfg.level.min(10).max(3);
    let reach = ((1i64 << n) - 1) / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut by_case = [0usize; 4];
    let mut witness = None;
    for _ in 0..cfg.samples.max(100) * 100 {
        let (x, y) = loop {
            let x: i64 = rng.random_range(-reach..=reach);
            let y: i64 = rng.random_range(-reach..=reach);
            if x.abs() + y.abs() <= reach {
                break (x, y);
            }
        };
        let kind: u8 = rng.random_range(0..3);
        let frac = |rng: &mut ChaCha8Rng| Ratio::new(rng.random_range(1..16), 16);
        let (px, py, expected, case) = match kind {
            0 => (Ratio::from(x) + frac(&mut rng), Ratio::from(y) + frac(&mut rng), 2, 0),
            1 => {
                if rng.random_bool(0.5) {
                    (Ratio::from(x), Ratio::from(y) + frac(&mut rng), 3, 1)
                } else {
                    (Ratio::from(x) + frac(&mut rng), Ratio::from(y), 3, 1)
                }
            }
            _ if (x + y).rem_euclid(2) == 0 => (Ratio::from(x), Ratio::from(y), 4, 2),
            _ => (Ratio::from(x), Ratio::from(y), 5, 3),
        };
        let got = point_cover_count(n, &RationalPoint::new(px, py))?;
        by_case[case] += 1;
        if got != expected {
            witness.get_or_insert(format!("point ({px}, {py}) covered {got} times, expected {expected}"));
        }
    }
    rep.check(
        format!("point counts n={n}"),
        witness.is_none(),
        witness.unwrap_or_else(|| {
            format!(
                "{} generic, {} edge, {} even vertex, {} odd vertex points",
                by_case[0], by_case[1], by_case[2], by_case[3]
            )
        }),
    );
    Ok(rep)
}

fn arrows(tiling: &ArrowedTiling, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Arrows);
    for n in 1..=cfg.level.min(10) {
        let full = tiling.full_patch(n);
        let mut boundary = 0;
        let mut outward_bad = None;
        let mut diag = 0;
        let mut diag_bad = None;
        for t in full.tiles() {
            let free = free_vertices(&full, t.cell);
            if !free.is_empty() {
                boundary += 1;
                if !free.contains(&t.arrow_vertex()) {
                    outward_bad.get_or_insert(t.cell);
                }
            }
            if let Some(a) = diagonal_arrow(t.cell) {
                diag += 1;
                if t.arrow != a {
                    diag_bad.get_or_insert(t.cell);
                }
            }
        }
        rep.check(
            format!("boundary outward n={n}"),
            outward_bad.is_none(),
            outward_bad.map_or(format!("{boundary} boundary tiles"), |c| {
                format!("tile at {} points inward", fmt_cell(c))
            }),
        );
        rep.check(
            format!("diagonals n={n}"),
            diag_bad.is_none(),
            diag_bad.map_or(format!("{diag} diagonal tiles"), |c| {
                format!("tile at {} has the wrong arrow", fmt_cell(c))
            }),
        );
    }
    Ok(rep)
}

/// `R_k` on a window, including singly covered cells.
pub fn level_patch(tiling: &ArrowedTiling, k: u32, window: Window) -> Patch {
    Patch::from_fn(window, tiling.exec, |c| tiling.visible(k, c))
}

fn nesting(tiling: &ArrowedTiling, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Nesting);
    let top = (cfg.level + 3).min(11);
    for n in 2..top {
        let (a, b) = (tiling.central_patch(n), tiling.central_patch(n + 1));
        let bad = a.first_mismatch_in(&b);
        rep.check(
            format!("S_{n} in S_{}", n + 1),
            bad.is_none(),
            bad.map_or(format!("{} tiles", a.len()), |c| format!("differs at {}", fmt_cell(c))),
        );
    }
    for n in 2..=cfg.level.min(9) {
        let bound = std::f64::consts::SQRT_2 / ((1i64 << (n - 1)) - 1) as f64;
        let window = tile_window_bounds(n + 1);
        let near = level_patch(tiling, n + 1, window);
        let mut worst: Option<(u32, f64)> = None;
        for k in n + 1..=top {
            let d = analysis::agreement_radius(&near, &level_patch(tiling, k, window)).distance();
            if d > bound + 1e-12 && worst.is_none() {
                worst = Some((k, d));
            }
        }
        rep.check(
            format!("d(R_{}, R_k) n={n}", n + 1),
            worst.is_none(),
            worst.map_or(format!("all k <= {top} within {bound:.5}"), |(k, d)| {
                format!("k={k}: d={d:.5} exceeds {bound:.5}")
            }),
        );
    }
    Ok(rep)
}

/// Does some block tile point straight at or away from its block's centre?
pub fn arrow_property_violation(rule: &SubstitutionRule) -> Option<(ColourType, BlockPos)> {
    for c in ColourType::ALL {
        for pos in BlockPos::ALL {
            let (dx, dy) = pos.offset();
            let d = Point::new(2 * dx - 1, 2 * dy - 1);
            let a = rule.entry(c, pos).arrow().vector();
            if a == d || a == Point::new(-d.x, -d.y) {
                return Some((c, pos));
            }
        }
    }
    None
}

/// Does `patch` contain a copy of `pattern` at offset `(dk, dm)` after `turns`?
fn occurs_at(patch: &Patch, pattern: &Patch, turns: QuarterTurns, dk: i64, dm: i64) -> bool {
    pattern
        .rotate(turns)
        .tiles()
        .all(|t| patch.get(t.cell.offset(dk, dm)) == Some(t.kind()))
}

/// Is there a copy of `R'_1` (any rotation) centred at the vertex `v`?
fn r1_copy_at(patch: &Patch, r1: &Patch, v: Point) -> bool {
    (0..4).any(|o| occurs_at(patch, r1, QuarterTurns::new(o), v.x, v.y))
}

fn substitution_suite(tiling: &ArrowedTiling, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Substitution);
    let rule = infer_rule(tiling, cfg.radius)?;
    rep.check("consistent", true, format!("no conflicting block with parents in radius {}", cfg.radius));
    rep.check(
        "T3 and T4 share a block",
        rule.block(ColourType::T3) == rule.block(ColourType::T4),
        "",
    );
    let r = 16;
    let rotated = tiling.limit_patch(Window::square(2 * r)).rotate(QuarterTurns::new(1));
    let conj = infer_rule_from(&rotated, Window::square(r), tiling.exec)?;
    rep.check("rotation equivariant", conj == rule, "rule read off the rotated tiling");
    match primitivity_check(&rule, 6) {
        Ok(k) => rep.check("primitive", k <= 3, format!("all colours after {k} steps")),
        Err(e) => rep.check("primitive", false, e.to_string()),
    }
    for k in 0..=cfg.level.min(6) {
        let report = substitution::fixed_point_check(tiling, &rule, k)?;
        rep.check(
            format!("fixed point k={k}"),
            report.passed(),
            report.first_mismatch.map_or(format!("{} cells", report.cells_checked), |c| {
                format!("differs at {}", fmt_cell(c))
            }),
        );
    }
    let arrow_bad = arrow_property_violation(&rule);
    rep.check(
        "block arrows avoid the block centre",
        arrow_bad.is_none(),
        arrow_bad.map_or(String::new(), |(c, p)| format!("{c} at {p}")),
    );
    let few = ColourType::ALL.into_iter().find(|&c| {
        let set: HashSet<ColourType> = rule.block(c).iter().map(|e| e.colour).collect();
        set.len() < 3
    });
    rep.check(
        "blocks have three colours",
        few.is_none(),
        few.map_or(String::new(), |c| format!("block of {c}")),
    );
    // Level-3 supertiles: R'_1 copies centred at the four interior points.
    let r1 = analysis::interior_patch(tiling, 1);
    let mut missing = None;
    for c in ColourType::ALL {
        let single = Patch::from_tiles([TileInstance::new(Cell::new(0, 0), TileKind::new(c, ArrowDir::SE))]);
        let big = apply_rule_n(&rule, &single, 3);
        for v in [(2, 4), (4, 2), (4, 6), (6, 4)] {
            if !r1_copy_at(&big, &r1, Point::new(v.0, v.1)) {
                missing.get_or_insert(format!("{c} supertile, vertex ({}, {})", v.0, v.1));
            }
        }
    }
    rep.check(
        "level-3 supertiles contain four R'_1",
        missing.is_none(),
        missing.unwrap_or_default(),
    );
    let seed = substitution::seed_patch(tiling);
    let single = Patch::from_tiles([TileInstance::new(
        Cell::new(0, 0),
        TileKind::new(ColourType::T1, ArrowDir::SE),
    )]);
    let big = apply_rule_n(&rule, &single, 4);
    let found = big.tiles().find_map(|t| {
        (0..4).find_map(|o| {
            let turn = QuarterTurns::new(o);
            let first = seed.rotate(turn).tiles().next()?.cell;
            let (dk, dm) = (t.cell.k - first.k, t.cell.m - first.m);
            occurs_at(&big, &seed, turn, dk, dm).then_some((dk, dm))
        })
    });
    rep.check(
        "seed occurs in fourth supertile of T1",
        found.is_some(),
        found.map_or(String::new(), |(k, m)| format!("offset ({k}, {m})")),
    );
    Ok(rep)
}

fn sample_centres(cfg: &VerifyConfig) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let reach = 4 * cfg.radius;
    (0..cfg.samples)
        .map(|_| Point::new(rng.random_range(-reach..=reach), rng.random_range(-reach..=reach)))
        .collect()
}

fn composition(tiling: &ArrowedTiling, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Composition);
    let rule = infer_rule(tiling, 16)?;
    let r1 = analysis::interior_patch(tiling, 1);
    let mut phase_fail = None;
    let mut vertex_fail = None;
    let mut unresolved = 0;
    let mut parents = 0;
    for (i, c) in sample_centres(cfg).into_iter().enumerate() {
        let radius = if i % 10 == 0 { 64 } else { 8 };
        let window = Window::Diamond { centre: c, radius };
        let patch = tiling.limit_patch(window);
        match compose(&rule, &patch, &tiling.base) {
            Ok(comp) => {
                unresolved += comp.unresolved();
                parents += comp.parents.len();
                let (px, py) = comp.phase;
                let context = tiling.limit_patch(Window::Diamond { centre: c, radius: radius + 4 });
                for p in &comp.parents {
                    let v = Point::new(px + 2 * p.cell.k + 1, py + 2 * p.cell.m + 1);
                    let ok = [(-1, -1), (1, -1), (-1, 1), (1, 1)]
                        .iter()
                        .any(|(dx, dy)| r1_copy_at(&context, &r1, Point::new(v.x + dx, v.y + dy)));
                    if !ok {
                        vertex_fail.get_or_insert(format!("block centre ({}, {})", v.x, v.y));
                    }
                }
                let back = comp.expand(&rule);
                if back.first_mismatch_in(&patch).is_some() {
                    phase_fail.get_or_insert(format!("re-expansion differs near ({}, {})", c.x, c.y));
                }
            }
            Err(e @ (Error::AmbiguousComposition(_) | Error::NoComposition)) => {
                phase_fail.get_or_insert(format!("window at ({}, {}): {e}", c.x, c.y));
            }
            Err(e) => return Err(e),
        }
    }
    rep.check(
        "unique phase",
        phase_fail.is_none(),
        phase_fail.unwrap_or_else(|| {
            format!("{} windows, {parents} parents, {unresolved} left as T3/T4", cfg.samples)
        }),
    );
    rep.check(
        "supertile centres are R'_1 vertices",
        vertex_fail.is_none(),
        vertex_fail.unwrap_or_default(),
    );
    let p = tiling.limit_patch(Window::square(24));
    let ok = compose(&rule, &apply_rule(&rule, &p), &tiling.base)
        .map(|c| c.phase == (0, 0) && c.resolved_patch().is_subpatch_of(&p))
        .unwrap_or(false);
    rep.check("compose inverts apply", ok, "window of half-side 24");
    Ok(rep)
}

/// Checks that a set of tiles is invariant under translation by `t` wherever
/// both ends lie in the window.
fn family_period_witness(
    reference: &Patch,
    family: &HashSet<Cell>,
    window: &Window,
    t: (i64, i64),
) -> Option<Cell> {
    let mut cells: Vec<&Cell> = family.iter().collect();
    cells.sort();
    cells.into_iter().copied().find(|&c| {
        let d = c.offset(t.0, t.1);
        window.contains(d) && (!family.contains(&d) || reference.get(c) != reference.get(d))
    })
}

fn limit_periodic(tiling: &ArrowedTiling, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::LimitPeriodic);
    let window = Window::square(cfg.radius);
    let reference = tiling.limit_patch(window);
    let top = cfg.level.min(5);
    let mut covered: HashSet<Cell> = HashSet::new();
    for n in 1..=top {
        let packing = mn_packing(tiling, n, window)?;
        rep.check(
            format!("M_{n} matches the tiling"),
            true,
            format!("{} placed tiles", packing.tiles_checked),
        );
        let p = 1i64 << (n + 1);
        let mut bad = None;
        for (g, fam) in packing.families.iter().enumerate() {
            for t in [(p, p), (p, -p)] {
                if let Some(c) = family_period_witness(&reference, fam, &window, t) {
                    bad.get_or_insert(format!("family {g}, t={t:?}, cell {}", fmt_cell(c)));
                }
            }
        }
        rep.check(
            format!("M_{n} families periodic"),
            bad.is_none(),
            bad.unwrap_or_else(|| format!("periods ({p}, {p}) and ({p}, -{p})")),
        );
        let union = packing.covered();
        let density = packing.density();
        let remaining = window.cell_count() - covered.len();
        let new = union.iter().filter(|c| !covered.contains(c)).count();
        let relative = new as f64 / remaining as f64;
        if n == 1 {
            rep.check(
                "M_1 density",
                (density - 0.5).abs() <= 0.02,
                format!("{density:.4}"),
            );
        } else {
            rep.check(
                format!("M_{n} covers half of the remaining tiles"),
                (relative - 0.5).abs() <= 0.02,
                format!("{relative:.4} of the remaining; absolute density {density:.4}"),
            );
        }
        covered.extend(union);
    }
    for big_n in 1..=top {
        let w = Window::square(1 << (big_n - 1));
        let mut cov = HashSet::new();
        for n in 1..=big_n {
            cov.extend(mn_packing(tiling, n, w)?.covered());
        }
        let hole = w.cells().find(|c| !cov.contains(c) && !is_diagonal_cell(*c));
        rep.check(
            format!("levels 1..{big_n} and diagonals cover the window"),
            hole.is_none(),
            hole.map_or(format!("{} cells", w.cell_count()), |c| format!("cell {} uncovered", fmt_cell(c))),
        );
    }
    let diagonal = window.cells().filter(|c| is_diagonal_cell(*c)).count() as f64
        / window.cell_count() as f64;
    rep.check(
        "diagonal residue is thin",
        diagonal <= 4.0 / cfg.radius as f64,
        format!("{diagonal:.5}"),
    );
    Ok(rep)
}

fn periods(tiling: &ArrowedTiling, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Periods);
    let patch = tiling.limit_patch(Window::square(cfg.radius));
    let reports = find_periods(&patch, cfg.bound, cfg.exec)?;
    let found: Vec<(i64, i64)> = reports
        .iter()
        .filter(|r| r.is_period() && r.t != (0, 0))
        .map(|r| r.t)
        .collect();
    let witnessed = reports
        .iter()
        .filter(|r| matches!(r.verdict, PeriodVerdict::Broken(_)))
        .count();
    rep.check(
        "no nontrivial period",
        found.is_empty(),
        if found.is_empty() {
            format!("{witnessed} translations broken, each with a witness cell")
        } else {
            format!("periods {found:?}")
        },
    );
    let m1 = mn_packing(tiling, 1, Window::square(32))?.covered();
    let sub = Patch::from_fn(Window::square(32), Exec::Sequential, |c| {
        if m1.contains(&c) {
            tiling.limit_tile(c).kind().into()
        } else {
            None
        }
    });
    let reports = find_periods(&sub, 8, cfg.exec)?;
    let has = |t| reports.iter().any(|r| r.t == t && r.is_period());
    rep.check(
        "M_1 has periods (4, 4) and (4, -4)",
        has((4, 4)) && has((4, -4)),
        "",
    );
    Ok(rep)
}

fn coincidence(tiling: &ArrowedTiling, _cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Coincidence);
    let rule = infer_rule(tiling, 16)?;
    let found = coincidences(&rule);
    let list = found
        .iter()
        .map(|(p, e)| format!("{p}={}/{}", e.colour, e.arrow()))
        .collect::<Vec<_>>()
        .join(" ");
    let at = |pos| found.iter().find(|(p, _)| *p == pos).map(|(_, e)| *e);
    rep.check(
        "upper right is T1 pointing (1,-1)",
        at(BlockPos::UR).is_some_and(|e| e.colour == ColourType::T1 && e.arrow() == ArrowDir::SE),
        list.clone(),
    );
    rep.check("lower left coincides", at(BlockPos::LL).is_some(), list);
    Ok(rep)
}

fn naked_suite(tiling: &ArrowedTiling, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Naked);
    let window = Window::square(cfg.radius);
    let n = ArrowedTiling::window_level(&window);
    let visible = naked::visible_decomposition(n, window)?;
    let mut cells: Vec<Cell> = visible.iter().flat_map(|t| t.cells.iter().copied()).collect();
    let total = cells.len();
    cells.sort();
    cells.dedup();
    rep.check(
        "partition",
        cells.len() == total && total == window.cell_count(),
        format!("{total} cells in {} regions", visible.len()),
    );
    let census = naked::census(&visible);
    rep.check(
        "all four shapes occur",
        census.iter().all(|&c| c > 0),
        Shape::ALL
            .iter()
            .zip(census)
            .map(|(s, c)| format!("{s}={c}"))
            .collect::<Vec<_>>()
            .join(" "),
    );
    let arrowed = tiling.limit_patch(window);
    let derived = naked::derive_naked_from_arrows(&arrowed)?;
    let a = naked::without_collar(&visible, &window, 2);
    let b = naked::without_collar(&derived, &window, 2);
    let diff = a.iter().zip(&b).position(|(x, y)| x != y);
    rep.check(
        "arrows reproduce the visible regions",
        a == b,
        match diff {
            Some(i) => format!("region at ({}, {}) differs", a[i].centre.x, a[i].centre.y),
            None if a.len() != b.len() => format!("{} vs {} regions", a.len(), b.len()),
            None => format!("{} regions compared", a.len()),
        },
    );
    let inner = Window::square(cfg.radius / 2);
    let local = naked::derive_naked_from_arrows(&arrowed.restrict(Window::square(cfg.radius / 2 + 2)))?;
    let x = naked::without_collar(&derived, &inner, 0);
    let y = naked::without_collar(&local, &inner, 0);
    rep.check(
        "derivation is local",
        x == y,
        format!("{} regions inside a half-size window", x.len()),
    );
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>(), Ok(s));
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn small_run_passes() {
        let cfg = VerifyConfig {
            level: 5,
            radius: 32,
            bound: 8,
            samples: 10,
            ..VerifyConfig::default()
        };
        for s in Suite::ALL {
            let rep = run_suite(s, &cfg).unwrap();
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn validation() {
        let cfg = VerifyConfig {
            bound: 64,
            ..VerifyConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
