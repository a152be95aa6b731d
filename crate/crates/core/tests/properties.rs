//! Property tests for the invariants of the construction and its views.

mod common;

use std::sync::OnceLock;

use proptest::prelude::*;

use inductive_rotation::analysis::agreement_radius;
use inductive_rotation::config::{parse_base_decoration, write_base_decoration};
use inductive_rotation::geometry::{
    address_of, placement_of, stack_compare, top_square, Stacking,
};
use inductive_rotation::naked::visible_decomposition;
use inductive_rotation::view::diagonal_arrow;
use inductive_rotation::{
    apply_rule, compose, infer_rule, Address, ArrowedTiling, BaseDecoration, Cell, Patch, Point,
    QuarterTurns, SubstitutionRule, Window,
};

fn tiling() -> &'static ArrowedTiling {
    static T: OnceLock<ArrowedTiling> = OnceLock::new();
    T.get_or_init(ArrowedTiling::default)
}

fn rule() -> &'static SubstitutionRule {
    static R: OnceLock<SubstitutionRule> = OnceLock::new();
    R.get_or_init(|| infer_rule(tiling(), 32).unwrap())
}

fn digits(max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..4, 1..=max)
}

fn window_at() -> impl Strategy<Value = Window> {
    (-5000i64..5000, -5000i64..5000, 3i64..12).prop_map(|(x, y, r)| Window::square_at(Point::new(x, y), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn address_roundtrip(d in digits(16)) {
        let a = Address::new(&d).unwrap();
        let s = placement_of(&a);
        prop_assert!(s.centre.is_odd());
        prop_assert_eq!(address_of(d.len() as u32, s.centre), Some(a));
    }

    #[test]
    fn stacking_is_antisymmetric(a in digits(10), b in digits(10)) {
        let n = a.len().min(b.len());
        let (a, b) = (Address::new(&a[..n]).unwrap(), Address::new(&b[..n]).unwrap());
        let ab = stack_compare(&a, &b).unwrap();
        let ba = stack_compare(&b, &a).unwrap();
        let flipped = match ab {
            Stacking::Above => Stacking::Below,
            Stacking::Below => Stacking::Above,
            Stacking::Equal => Stacking::Equal,
        };
        prop_assert_eq!(ba, flipped);
        prop_assert_eq!(ab == Stacking::Equal, a == b);
    }

    #[test]
    fn limit_tile_is_a_stable_visible_tile(k in -3000i64..3000, m in -3000i64..3000) {
        let cell = Cell::new(k, m);
        let n = ArrowedTiling::stable_level(cell);
        let t = tiling().limit_tile(cell);
        prop_assert_eq!(tiling().visible(n, cell), Some(t.kind()));
        prop_assert_eq!(tiling().visible(n + 2, cell), Some(t.kind()));
        prop_assert_eq!(top_square(n, cell).map(|s| s.centre), Some(t.source_centre()));
    }

    #[test]
    fn diagonal_arrows(k in -100_000i64..100_000) {
        for cell in [Cell::new(k, k), Cell::new(k, -k - 1)] {
            prop_assert_eq!(diagonal_arrow(cell), Some(tiling().limit_tile(cell).arrow));
        }
    }

    #[test]
    fn apply_quadruples_area(w in window_at()) {
        let p = tiling().limit_patch(w);
        let q = apply_rule(rule(), &p);
        prop_assert_eq!(q.len(), 4 * p.len());
        // The image is again a patch of the limit tiling.
        let q_ref = Patch::from_tiles(q.tiles().map(|t| tiling().limit_tile(t.cell)));
        prop_assert_eq!(q, q_ref);
    }

    #[test]
    fn apply_commutes_with_rotation(w in window_at(), g in 0i64..4) {
        let turn = QuarterTurns::new(g);
        let p = tiling().limit_patch(w);
        prop_assert_eq!(apply_rule(rule(), &p.rotate(turn)), apply_rule(rule(), &p).rotate(turn));
    }

    #[test]
    fn compose_inverts_apply(w in window_at()) {
        let p = tiling().limit_patch(w);
        let c = compose(rule(), &apply_rule(rule(), &p), &tiling().base).unwrap();
        prop_assert_eq!(c.phase, (0, 0));
        prop_assert_eq!(c.parents.len(), p.len());
        for parent in &c.parents {
            prop_assert!(parent.candidates.contains(p.get(parent.cell).unwrap()));
        }
        prop_assert_eq!(c.expand(rule()), apply_rule(rule(), &p));
    }

    #[test]
    fn four_turns_are_identity(w in window_at()) {
        let p = tiling().limit_patch(w);
        let once = p.rotate(QuarterTurns::new(1));
        prop_assert_ne!(&once, &p);
        prop_assert_eq!((0..3).fold(once, |q, _| q.rotate(QuarterTurns::new(1))), p);
    }

    #[test]
    fn naked_regions_partition_the_window(w in window_at()) {
        let n = ArrowedTiling::window_level(&w);
        let tiles = visible_decomposition(n, w).unwrap();
        let mut cells: Vec<Cell> = tiles.iter().flat_map(|t| t.cells.clone()).collect();
        cells.sort();
        let before = cells.len();
        cells.dedup();
        prop_assert_eq!(before, cells.len());
        let mut expected: Vec<Cell> = w.cells().collect();
        expected.sort();
        prop_assert_eq!(cells, expected);
    }

    #[test]
    fn agreement_is_symmetric_and_capped(a in 1u32..7, b in 1u32..7) {
        let w = Window::square(40);
        let pa = tiling().full_patch(a);
        let pb = tiling().limit_patch(w).restrict(Window::square(1 << b));
        let x = agreement_radius(&pa, &pb);
        let y = agreement_radius(&pb, &pa);
        prop_assert_eq!(x.radius_sq, y.radius_sq);
        prop_assert!(x.distance() <= 1.0 / 2f64.sqrt());
        prop_assert_eq!(agreement_radius(&pa, &pa).distance(), 0.0);
    }

    #[test]
    fn base_decoration_text_roundtrip(i in 0usize..24) {
        let base = BaseDecoration::all()[i];
        prop_assert_eq!(parse_base_decoration(&write_base_decoration(&base)).unwrap(), base);
    }
}

#[test]
fn rule_text_roundtrip() {
    let text = rule().to_text();
    assert_eq!(&SubstitutionRule::from_text(&text).unwrap(), rule());
}

#[test]
fn oracle_squares_are_distinct_and_odd() {
    let sq = common::squares(6);
    let mut centres: Vec<(i64, i64)> = sq.iter().map(|s| (s.x, s.y)).collect();
    assert!(centres.iter().all(|&(x, y)| (x + y).rem_euclid(2) == 1));
    centres.sort();
    centres.dedup();
    assert_eq!(centres.len(), sq.len());
}
