//! Recovers the quadrant colouring of the big squares from two observable
//! facts about the tiling: the colours of the four tiles around the origin,
//! and a block position whose entry is the same for every colour.

use crate::decoration::{ArrowDir, BaseDecoration, ColourType};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::substitution::{infer_rule, seed_patch, seed_has_expected_colours, BlockPos};
use crate::view::ArrowedTiling;

/// Block position and tile that every colour's block must share.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoincidenceAnchor {
    pub pos: BlockPos,
    pub colour: ColourType,
    pub arrow: ArrowDir,
}

impl Default for CoincidenceAnchor {
    fn default() -> Self {
        CoincidenceAnchor {
            pos: BlockPos::UR,
            colour: ColourType::T1,
            arrow: ArrowDir::SE,
        }
    }
}

/// Outcome of a calibration run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Calibration {
    /// Lexicographically smallest survivor.
    pub chosen: BaseDecoration,
    /// Every colouring consistent with the anchors, in lexicographic order.
    pub survivors: Vec<BaseDecoration>,
    /// Number of colourings examined.
    pub candidates: usize,
}

impl Calibration {
    pub fn is_unique(&self) -> bool {
        self.survivors.len() == 1
    }

    /// The colouring if it is the only survivor.
    pub fn unique(&self) -> Result<BaseDecoration> {
        if self.is_unique() {
            Ok(self.chosen)
        } else {
            Err(Error::AmbiguousAssignment(self.survivors.clone()))
        }
    }
}

/// Inference radius used while calibrating; large enough to see every colour.
pub const CALIBRATION_RADIUS: i64 = 8;

/// Does `base` satisfy both anchors?
pub fn satisfies(base: BaseDecoration, anchor: CoincidenceAnchor) -> bool {
    let tiling = ArrowedTiling::new(base).with_exec(Exec::Sequential);
    if !seed_has_expected_colours(&seed_patch(&tiling)) {
        return false;
    }
    match infer_rule(&tiling, CALIBRATION_RADIUS) {
        Ok(rule) => ColourType::ALL.iter().all(|&c| {
            let e = rule.entry(c, anchor.pos);
            e.colour == anchor.colour && e.arrow() == anchor.arrow
        }),
        Err(_) => false,
    }
}

/// Tests all 24 colourings against the anchors.
pub fn calibrate_with(anchor: CoincidenceAnchor, exec: Exec) -> Result<Calibration> {
    let all = BaseDecoration::all();
    let ok = exec.map_slice(&all, |&b| satisfies(b, anchor));
    let survivors: Vec<BaseDecoration> = all
        .iter()
        .zip(ok)
        .filter_map(|(b, ok)| ok.then_some(*b))
        .collect();
    let chosen = *survivors.first().ok_or(Error::NoConsistentAssignment)?;
    Ok(Calibration {
        chosen,
        survivors,
        candidates: all.len(),
    })
}

pub fn calibrate(exec: Exec) -> Result<Calibration> {
    calibrate_with(CoincidenceAnchor::default(), exec)
}
