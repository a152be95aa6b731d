//! Inductive rotation tilings: a square is rotated and stacked on itself to
//! build larger and larger overlapping patches whose visible top views
//! converge to a limit-periodic tiling of the plane.
//!
//! The crate computes the patches, their arrowed and naked decorations,
//! the 2x2 block substitution that generates the arrowed tiling, and the
//! quantitative checks (periods, repetitivity, frequencies) used to verify
//! it. Scans over windows run on rayon unless the `parallel` feature is off
//! or [`Exec::Sequential`] is requested.

pub mod analysis;
pub mod calibration;
pub mod config;
pub mod decoration;
pub mod error;
pub mod geometry;
pub mod naked;
pub mod par;
pub mod substitution;
pub mod verify;
pub mod view;

pub use calibration::{calibrate, Calibration};
pub use decoration::{ArrowDir, BaseDecoration, ColourType, TileInstance, TileKind};
pub use error::{Error, Result};
pub use geometry::{Address, Cell, Point, QuarterTurns, Window};
pub use par::Exec;
pub use substitution::{apply_rule, compose, infer_rule, SubstitutionRule};
pub use view::{ArrowedTiling, Patch, TileSource};
