//! The block substitution behind the arrowed tiling: inference, iteration,
//! composition (inverse substitution) and coincidences.
//!
//! The tile at cell `c` determines the 2x2 block at cells `2c + {0,1}^2`.
//! A rule stores, for each colour, the block of that colour drawn with its
//! arrow pointing down-right `(1,-1)`. Entries carry their colour and their
//! rotation relative to the parent, so the 16 oriented tile types share four
//! blocks.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use crate::config::parse_key_values;
use crate::decoration::{ArrowDir, BaseDecoration, ColourType, Quadrant, TileInstance, TileKind};
use crate::error::{Error, Result};
use crate::geometry::{Cell, Point, QuarterTurns, Window};
use crate::par::Exec;
use crate::view::{ArrowedTiling, Patch, TileSource};

/// Position inside a 2x2 block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockPos {
    LL,
    LR,
    UL,
    UR,
}

impl BlockPos {
    pub const ALL: [BlockPos; 4] = [BlockPos::LL, BlockPos::LR, BlockPos::UL, BlockPos::UR];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Cell offset inside the block.
    pub fn offset(self) -> (i64, i64) {
        match self {
            BlockPos::LL => (0, 0),
            BlockPos::LR => (1, 0),
            BlockPos::UL => (0, 1),
            BlockPos::UR => (1, 1),
        }
    }

    fn from_offset(dx: i64, dy: i64) -> BlockPos {
        match (dx, dy) {
            (0, 0) => BlockPos::LL,
            (1, 0) => BlockPos::LR,
            (0, 1) => BlockPos::UL,
            _ => BlockPos::UR,
        }
    }

    /// Position after turning the block about its centre.
    pub fn rotate(self, turns: QuarterTurns) -> BlockPos {
        let (dx, dy) = self.offset();
        let p = turns.apply(Point::new(2 * dx - 1, 2 * dy - 1));
        BlockPos::from_offset((p.x + 1) / 2, (p.y + 1) / 2)
    }

    pub fn name(self) -> &'static str {
        match self {
            BlockPos::LL => "LL",
            BlockPos::LR => "LR",
            BlockPos::UL => "UL",
            BlockPos::UR => "UR",
        }
    }
}

impl fmt::Display for BlockPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One entry of a block: colour and rotation relative to the parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleEntry {
    pub colour: ColourType,
    pub delta: QuarterTurns,
}

impl RuleEntry {
    /// Arrow of the entry when the parent points down-right.
    pub fn arrow(&self) -> ArrowDir {
        ArrowDir::from_turns_from_se(self.delta)
    }
}

/// A rotation-equivariant 2x2 block substitution on the four colours.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubstitutionRule {
    blocks: [[RuleEntry; 4]; 4],
}

impl SubstitutionRule {
    pub const SCALE: i64 = 2;

    /// `blocks[colour][position]`, positions in `BlockPos::ALL` order.
    pub fn new(blocks: [[RuleEntry; 4]; 4]) -> Self {
        SubstitutionRule { blocks }
    }

    pub fn entry(&self, colour: ColourType, pos: BlockPos) -> RuleEntry {
        self.blocks[colour.index()][pos.index()]
    }

    pub fn block(&self, colour: ColourType) -> [RuleEntry; 4] {
        self.blocks[colour.index()]
    }

    /// The block replacing a tile of type `kind`, by absolute position.
    pub fn image(&self, kind: TileKind) -> [TileKind; 4] {
        let turn = kind.arrow.turns_from_se();
        let mut out = [kind; 4];
        for pos in BlockPos::ALL {
            let e = self.entry(kind.colour, pos);
            out[pos.rotate(turn).index()] =
                TileKind::new(e.colour, ArrowDir::from_turns_from_se(turn + e.delta));
        }
        out
    }

    /// `m[a][b]`: number of tiles of colour `b` in the block of colour `a`.
    pub fn colour_matrix(&self) -> [[u64; 4]; 4] {
        let mut m = [[0u64; 4]; 4];
        for a in ColourType::ALL {
            for e in self.block(a) {
                m[a.index()][e.colour.index()] += 1;
            }
        }
        m
    }

    /// Plain-text form: one `colour.position=colour,delta` line per entry.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str("# block substitution; parent drawn with arrow (1,-1)\n");
        s.push_str("# colour.position=colour,clockwise quarter turns relative to the parent\n");
        let _ = writeln!(s, "scale={}", Self::SCALE);
        for c in ColourType::ALL {
            for pos in BlockPos::ALL {
                let e = self.entry(c, pos);
                let _ = writeln!(s, "{c}.{pos}={},{}", e.colour, e.delta.get());
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<SubstitutionRule> {
        let kv = parse_key_values(text)?;
        let bad = |msg: String| Error::Parse { line: 0, msg };
        if kv.get("scale").map(String::as_str) != Some("2") {
            return Err(bad("scale must be 2".into()));
        }
        let mut blocks = [[RuleEntry {
            colour: ColourType::T1,
            delta: QuarterTurns::IDENTITY,
        }; 4]; 4];
        for c in ColourType::ALL {
            for pos in BlockPos::ALL {
                let key = format!("{c}.{pos}");
                let v = kv.get(&key).ok_or_else(|| bad(format!("missing {key}")))?;
                let (col, delta) = v
                    .split_once(',')
                    .ok_or_else(|| bad(format!("{key}: expected colour,delta")))?;
                let delta: i64 = delta
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("{key}: bad delta {delta:?}")))?;
                if !(0..4).contains(&delta) {
                    return Err(bad(format!("{key}: delta {delta} out of range")));
                }
                blocks[c.index()][pos.index()] = RuleEntry {
                    colour: col.parse()?,
                    delta: QuarterTurns::new(delta),
                };
            }
        }
        Ok(SubstitutionRule { blocks })
    }
}

type PartialRule = [[Option<(RuleEntry, Cell)>; 4]; 4];

fn observe(partial: &mut PartialRule, parent: TileInstance, children: [TileKind; 4]) -> Result<()> {
    let turn = parent.arrow.turns_from_se();
    for abs in BlockPos::ALL {
        let child = children[abs.index()];
        let canonical = abs.rotate(turn.inverse());
        let entry = RuleEntry {
            colour: child.colour,
            delta: child.arrow.turns_from_se() - turn,
        };
        let slot = &mut partial[parent.colour.index()][canonical.index()];
        match slot {
            Some((e, _)) if *e != entry => {
                return Err(Error::InconsistentBlock {
                    cell: parent.cell,
                    colour: parent.colour,
                })
            }
            Some(_) => {}
            None => *slot = Some((entry, parent.cell)),
        }
    }
    Ok(())
}

fn merge(a: Result<PartialRule>, b: Result<PartialRule>) -> Result<PartialRule> {
    let (mut a, b) = (a?, b?);
    for (ca, cb) in a.iter_mut().zip(b.iter()) {
        for (sa, sb) in ca.iter_mut().zip(cb.iter()) {
            match (sa.as_ref(), sb) {
                (Some((ea, _)), Some((eb, cell))) if ea != eb => {
                    return Err(Error::InconsistentBlock {
                        cell: *cell,
                        colour: ColourType::ALL[0],
                    })
                }
                (None, Some(x)) => *sa = Some(*x),
                _ => {}
            }
        }
    }
    Ok(a)
}

fn block_of(source: &impl TileSource, c: Cell) -> Option<[TileKind; 4]> {
    let mut out = [TileKind::new(ColourType::T1, ArrowDir::SE); 4];
    for pos in BlockPos::ALL {
        let (dx, dy) = pos.offset();
        out[pos.index()] = source.tile_kind(Cell::new(2 * c.k + dx, 2 * c.m + dy))?;
    }
    Some(out)
}

/// Reads the rule off a tiling: every parent cell in `parents` with a complete
/// child block contributes. Fails on the first conflicting observation.
pub fn infer_rule_from(source: &impl TileSource, parents: Window, exec: Exec) -> Result<SubstitutionRule> {
    let (k0, m0, k1, m1) = parents.bounds();
    let scan = |exec: Exec| {
        exec.fold_range(
            m0,
            m1,
            || Ok([[None; 4]; 4]),
            |acc: Result<PartialRule>, m| {
                let mut acc = acc?;
                for k in k0..k1 {
                    let cell = Cell::new(k, m);
                    if !parents.contains(cell) {
                        continue;
                    }
                    let (Some(parent), Some(children)) = (source.tile_kind(cell), block_of(source, cell)) else {
                        continue;
                    };
                    observe(&mut acc, TileInstance::new(cell, parent), children)?;
                }
                Ok(acc)
            },
            merge,
        )
    };
    let partial = match scan(exec) {
        Ok(p) => p,
        // Parallel merges lose the offending colour; rescan in order for a precise witness.
        Err(_) if exec.is_parallel() => scan(Exec::Sequential)?,
        Err(e) => return Err(e),
    };
    let mut blocks = [[RuleEntry {
        colour: ColourType::T1,
        delta: QuarterTurns::IDENTITY,
    }; 4]; 4];
    for c in ColourType::ALL {
        for pos in BlockPos::ALL {
            let (e, _) = partial[c.index()][pos.index()].ok_or_else(|| {
                Error::InvalidParameter(format!("colour {c} never observed in the window"))
            })?;
            blocks[c.index()][pos.index()] = e;
        }
    }
    Ok(SubstitutionRule { blocks })
}

/// Infers the rule from the limit tiling, with parents in `[-r, r)^2`.
pub fn infer_rule(tiling: &ArrowedTiling, r: i64) -> Result<SubstitutionRule> {
    if r < 8 {
        return Err(Error::InvalidParameter(format!("inference radius {r} < 8")));
    }
    let children = tiling.limit_patch(Window::square(2 * r));
    infer_rule_from(&children, Window::square(r), tiling.exec)
}

/// Replaces every tile of `patch` by its block.
pub fn apply_rule(rule: &SubstitutionRule, patch: &Patch) -> Patch {
    Patch::from_tiles(patch.tiles().flat_map(|t| {
        let image = rule.image(t.kind());
        BlockPos::ALL.into_iter().map(move |pos| {
            let (dx, dy) = pos.offset();
            TileInstance::new(
                Cell::new(2 * t.cell.k + dx, 2 * t.cell.m + dy),
                image[pos.index()],
            )
        })
    }))
}

pub fn apply_rule_n(rule: &SubstitutionRule, patch: &Patch, k: u32) -> Patch {
    (0..k).fold(patch.clone(), |p, _| apply_rule(rule, &p))
}

/// The four-tile seed around the origin, read off the limit tiling.
pub fn seed_patch(tiling: &ArrowedTiling) -> Patch {
    Patch::from_tiles(
        [(-1, -1), (0, -1), (-1, 0), (0, 0)]
            .into_iter()
            .map(|(k, m)| tiling.limit_tile(Cell::new(k, m))),
    )
}

/// Does the seed consist of three `T2` tiles and one `T1` tile?
pub fn seed_has_expected_colours(seed: &Patch) -> bool {
    let count = |c| seed.tiles().filter(|t| t.colour == c).count();
    seed.len() == 4 && count(ColourType::T2) == 3 && count(ColourType::T1) == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointReport {
    pub iterations: u32,
    pub cells_checked: usize,
    pub first_mismatch: Option<Cell>,
}

impl FixedPointReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares `sigma^k(seed)` with the limit tiling on its whole support.
pub fn fixed_point_check(tiling: &ArrowedTiling, rule: &SubstitutionRule, k: u32) -> Result<FixedPointReport> {
    if k > 8 {
        return Err(Error::InvalidParameter(format!("{k} iterations exceeds 8")));
    }
    let image = apply_rule_n(rule, &seed_patch(tiling), k);
    let reference = tiling.limit_patch(Window::square(1 << k));
    Ok(FixedPointReport {
        iterations: k,
        cells_checked: image.len(),
        first_mismatch: image.first_mismatch_in(&reference),
    })
}

/// Set of tile types, as a bitmask over [`TileKind::index`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct KindSet(u16);

impl KindSet {
    pub fn single(k: TileKind) -> Self {
        KindSet(1 << k.index())
    }

    pub fn insert(&mut self, k: TileKind) {
        self.0 |= 1 << k.index();
    }

    pub fn contains(&self, k: TileKind) -> bool {
        self.0 & (1 << k.index()) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = TileKind> + '_ {
        (0..16).filter(|i| self.0 & (1 << i) != 0).map(TileKind::from_index)
    }

    pub fn unique(&self) -> Option<TileKind> {
        (self.len() == 1).then(|| self.iter().next()).flatten()
    }

    fn retain(&mut self, f: impl Fn(TileKind) -> bool) {
        for k in self.iter().collect::<Vec<_>>() {
            if !f(k) {
                self.0 &= !(1 << k.index());
            }
        }
    }
}

/// A parent tile recovered by composition; `candidates` holds every type whose
/// block matches. Types sharing a block stay ambiguous unless resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComposedTile {
    pub cell: Cell,
    pub candidates: KindSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    /// Block grid offset: blocks sit at `phase + 2c + {0,1}^2`.
    pub phase: (i64, i64),
    pub parents: Vec<ComposedTile>,
    /// Phases tested and whether each was consistent, in `(0,0),(1,0),(0,1),(1,1)` order.
    pub phase_validity: [bool; 4],
}

impl Composition {
    /// Parents with a single candidate type.
    pub fn resolved_patch(&self) -> Patch {
        Patch::from_tiles(
            self.parents
                .iter()
                .filter_map(|p| p.candidates.unique().map(|k| TileInstance::new(p.cell, k))),
        )
    }

    pub fn unresolved(&self) -> usize {
        self.parents.iter().filter(|p| p.candidates.len() != 1).count()
    }

    /// Re-expands the parents (any candidate; matching ones share a block).
    pub fn expand(&self, rule: &SubstitutionRule) -> Patch {
        let (px, py) = self.phase;
        Patch::from_tiles(self.parents.iter().flat_map(|p| {
            let kind = p.candidates.iter().next().expect("nonempty candidates");
            let image = rule.image(kind);
            BlockPos::ALL.into_iter().map(move |pos| {
                let (dx, dy) = pos.offset();
                TileInstance::new(
                    Cell::new(px + 2 * p.cell.k + dx, py + 2 * p.cell.m + dy),
                    image[pos.index()],
                )
            })
        }))
    }
}

pub const PHASES: [(i64, i64); 4] = [(0, 0), (1, 0), (0, 1), (1, 1)];

fn block_table(rule: &SubstitutionRule) -> HashMap<[TileKind; 4], KindSet> {
    let mut table: HashMap<[TileKind; 4], KindSet> = HashMap::new();
    for i in 0..16 {
        let kind = TileKind::from_index(i);
        table.entry(rule.image(kind)).or_default().insert(kind);
    }
    table
}

fn complete_blocks(patch: &Patch, phase: (i64, i64)) -> Vec<(Cell, [TileKind; 4])> {
    let (k0, m0, k1, m1) = patch.window().bounds();
    let (px, py) = phase;
    let lo_k = (k0 - px).div_euclid(2);
    let hi_k = (k1 - px).div_euclid(2) + 1;
    let lo_m = (m0 - py).div_euclid(2);
    let hi_m = (m1 - py).div_euclid(2) + 1;
    let mut out = Vec::new();
    for cm in lo_m..hi_m {
        'cells: for ck in lo_k..hi_k {
            let mut block = [TileKind::new(ColourType::T1, ArrowDir::SE); 4];
            for pos in BlockPos::ALL {
                let (dx, dy) = pos.offset();
                match patch.get(Cell::new(px + 2 * ck + dx, py + 2 * cm + dy)) {
                    Some(k) => block[pos.index()] = k,
                    None => continue 'cells,
                }
            }
            out.push((Cell::new(ck, cm), block));
        }
    }
    out
}

/// Inverse substitution: finds the unique block phase under which every
/// complete 2x2 block of `patch` is the image of some tile, and returns the
/// parent tiles. `base` is used to resolve parents whose blocks coincide.
pub fn compose(rule: &SubstitutionRule, patch: &Patch, base: &BaseDecoration) -> Result<Composition> {
    let table = block_table(rule);
    let mut validity = [false; 4];
    let mut winner = None;
    for (i, &phase) in PHASES.iter().enumerate() {
        let blocks = complete_blocks(patch, phase);
        let parents: Option<Vec<ComposedTile>> = blocks
            .iter()
            .map(|(cell, b)| {
                table.get(b).map(|&candidates| ComposedTile {
                    cell: *cell,
                    candidates,
                })
            })
            .collect();
        if let Some(parents) = parents.filter(|p| !p.is_empty()) {
            validity[i] = true;
            winner.get_or_insert((phase, parents));
        }
    }
    match validity.iter().filter(|v| **v).count() {
        0 => Err(Error::NoComposition),
        1 => {
            let (phase, mut parents) = winner.expect("one valid phase");
            resolve_by_square_mates(&mut parents, base);
            Ok(Composition {
                phase,
                parents,
                phase_validity: validity,
            })
        }
        n => Err(Error::AmbiguousComposition(n)),
    }
}

/// Narrows ambiguous parents using the other cells cut from the same big square.
///
/// A tile's arrow points away from its square's centre. All parents around
/// that centre whose arrows point away from it come from one square, so one
/// rotation of the base decoration must explain all their colours.
fn resolve_by_square_mates(parents: &mut [ComposedTile], base: &BaseDecoration) {
    let index: HashMap<Cell, usize> = parents.iter().enumerate().map(|(i, p)| (p.cell, i)).collect();
    loop {
        let mut changed = false;
        for i in 0..parents.len() {
            if parents[i].candidates.len() <= 1 {
                continue;
            }
            let arrows: Vec<ArrowDir> = parents[i].candidates.iter().map(|k| k.arrow).collect();
            if arrows.iter().any(|a| *a != arrows[0]) {
                continue;
            }
            let me = TileInstance::new(parents[i].cell, TileKind::new(ColourType::T1, arrows[0]));
            let centre = me.source_centre();
            let mates: Vec<(Point, KindSet)> = [
                Cell::new(centre.x, centre.y),
                Cell::new(centre.x - 1, centre.y),
                Cell::new(centre.x - 1, centre.y - 1),
                Cell::new(centre.x, centre.y - 1),
            ]
            .into_iter()
            .filter_map(|c| index.get(&c).map(|&j| (c, parents[j].candidates)))
            .filter(|(c, set)| {
                let away = ArrowDir::from_signs(c.doubled_centre() - centre.scale(2));
                set.iter().all(|k| Some(k.arrow) == away)
            })
            .map(|(c, set)| (c.doubled_centre() - centre.scale(2), set))
            .collect();
            let mut allowed = KindSet::default();
            for o in 0..4 {
                let turn = QuarterTurns::new(o);
                let colour_at = |offset: Point| {
                    let q = Quadrant::from_offset(turn.inverse().apply(offset)).expect("diagonal");
                    base.colour(q)
                };
                let consistent = mates.iter().all(|(off, set)| {
                    set.iter().any(|k| k.colour == colour_at(*off))
                });
                if consistent {
                    let off = parents[i].cell.doubled_centre() - centre.scale(2);
                    allowed.insert(TileKind::new(colour_at(off), arrows[0]));
                }
            }
            let before = parents[i].candidates;
            parents[i].candidates.retain(|k| allowed.contains(k));
            if parents[i].candidates.is_empty() {
                parents[i].candidates = before;
            } else if parents[i].candidates != before {
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}

/// Block positions where every colour's block holds the same entry.
pub fn coincidences(rule: &SubstitutionRule) -> Vec<(BlockPos, RuleEntry)> {
    BlockPos::ALL
        .into_iter()
        .filter_map(|pos| {
            let e = rule.entry(ColourType::T1, pos);
            ColourType::ALL
                .iter()
                .all(|&c| rule.entry(c, pos) == e)
                .then_some((pos, e))
        })
        .collect()
}

/// Smallest `k <= max_power` such that every level-`k` supertile contains all colours.
pub fn primitivity_check(rule: &SubstitutionRule, max_power: u32) -> Result<u32> {
    let m = rule.colour_matrix();
    let mut power = m;
    for k in 1..=max_power {
        if power.iter().all(|row| row.iter().all(|&x| x > 0)) {
            return Ok(k);
        }
        let mut next = [[0u64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                next[i][j] = (0..4).map(|l| power[i][l] * m[l][j]).sum();
            }
        }
        power = next;
    }
    Err(Error::NotPrimitive(max_power))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rule() -> (ArrowedTiling, SubstitutionRule) {
        let t = ArrowedTiling::default();
        let r = infer_rule(&t, 16).unwrap();
        (t, r)
    }

    #[test]
    fn block_rotation_cycles_clockwise() {
        let q = QuarterTurns::new(1);
        assert_eq!(BlockPos::UL.rotate(q), BlockPos::UR);
        assert_eq!(BlockPos::UR.rotate(q), BlockPos::LR);
        assert_eq!(BlockPos::LR.rotate(q), BlockPos::LL);
        assert_eq!(BlockPos::LL.rotate(q), BlockPos::UL);
    }

    #[test]
    fn t3_and_t4_share_a_block() {
        let (_, r) = rule();
        assert_eq!(r.block(ColourType::T3), r.block(ColourType::T4));
    }

    #[test]
    fn upper_right_is_black_pointing_down_right() {
        let (_, r) = rule();
        for c in ColourType::ALL {
            let e = r.entry(c, BlockPos::UR);
            assert_eq!((e.colour, e.arrow()), (ColourType::T1, ArrowDir::SE));
            assert_eq!(r.entry(c, BlockPos::LL).colour, ColourType::T2);
        }
    }

    #[test]
    fn text_roundtrip() {
        let (_, r) = rule();
        assert_eq!(SubstitutionRule::from_text(&r.to_text()), Ok(r));
        assert!(SubstitutionRule::from_text("scale=3").is_err());
    }

    #[test]
    fn seed_is_central_patch_of_its_image() {
        let (t, r) = rule();
        let seed = seed_patch(&t);
        assert!(seed_has_expected_colours(&seed));
        let image = apply_rule(&r, &seed);
        assert_eq!(image.len(), 16);
        assert!(seed.is_subpatch_of(&image));
    }

    #[test]
    fn area_quadruples() {
        let (t, r) = rule();
        let p = t.limit_patch(Window::diamond(9));
        assert_eq!(apply_rule(&r, &p).len(), 4 * p.len());
    }

    #[test]
    fn seed_occurs_in_fourth_supertile_of_t1() {
        let (t, r) = rule();
        let single = Patch::from_tiles([TileInstance::new(
            Cell::new(0, 0),
            TileKind::new(ColourType::T1, ArrowDir::SE),
        )]);
        let big = apply_rule_n(&r, &single, 4);
        assert_eq!(big.len(), 256);
        let seed = seed_patch(&t);
        let found = (0..4).any(|o| {
            let rotated = seed.rotate(QuarterTurns::new(o));
            let anchor = rotated.tiles().next().unwrap().cell;
            big.tiles().any(|bt| {
                let shifted = rotated.translate(bt.cell.k - anchor.k, bt.cell.m - anchor.m);
                shifted.is_subpatch_of(&big)
            })
        });
        assert!(found);
    }

    #[test]
    fn primitivity() {
        let (_, r) = rule();
        let k = primitivity_check(&r, 6).unwrap();
        assert!(k <= 3);
        for row in r.colour_matrix() {
            assert_eq!(row.iter().sum::<u64>(), 4);
        }
        let degenerate = SubstitutionRule::new(
            [[RuleEntry {
                colour: ColourType::T1,
                delta: QuarterTurns::IDENTITY,
            }; 4]; 4],
        );
        assert_eq!(primitivity_check(&degenerate, 6), Err(Error::NotPrimitive(6)));
    }

    #[test]
    fn coincidence_positions() {
        let (_, r) = rule();
        let found: Vec<BlockPos> = coincidences(&r).into_iter().map(|(p, _)| p).collect();
        assert!(found.contains(&BlockPos::UR));
        assert!(found.contains(&BlockPos::LL));
    }

    #[test]
    fn compose_inverts_apply() {
        let (t, r) = rule();
        let p = t.limit_patch(Window::square(12));
        let image = apply_rule(&r, &p);
        let comp = compose(&r, &image, &t.base).unwrap();
        assert_eq!(comp.phase, (0, 0));
        for parent in &comp.parents {
            assert!(parent.candidates.contains(p.get(parent.cell).unwrap()));
        }
        assert!(comp.resolved_patch().is_subpatch_of(&p));
        assert_eq!(comp.expand(&r), image);
    }

    #[test]
    fn compose_detects_shifted_phase() {
        let (t, r) = rule();
        let p = t.limit_patch(Window::square(16)).translate(1, 1);
        let comp = compose(&r, &p, &t.base).unwrap();
        assert_eq!(comp.phase, (1, 1));
    }

    #[test]
    fn inconsistent_source_is_reported() {
        let (t, _) = rule();
        let mut p = t.limit_patch(Window::square(24));
        let cell = Cell::new(2, 2);
        let k = p.get(cell).unwrap();
        let other = ColourType::ALL.into_iter().find(|c| *c != k.colour).unwrap();
        p.set(cell, Some(TileKind::new(other, k.arrow)));
        assert!(matches!(
            infer_rule_from(&p, Window::square(12), Exec::Sequential),
            Err(Error::InconsistentBlock { .. })
        ));
    }
}
