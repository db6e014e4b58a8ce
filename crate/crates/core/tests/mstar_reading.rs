//! Pins the reading of the ambiguous first edge family removed from
//! `M(C_2n)` to form `M*(C_2n)`. Only one candidate gives the expected
//! rooted number at `v_0`.

use pebble_core::families::{
    build_mstar_with_reading, mstar_removed_edges, MStarReading, MSTAR_READING,
};
use pebble_core::{
    build_mstar_mprime, middle_cycle_formula, rooted_number, MiddleVariant, Mode, VertexId,
};

fn f_v0(reading: MStarReading, n: usize) -> u64 {
    let g = build_mstar_with_reading(n, reading).unwrap();
    rooted_number(&g, VertexId(0), 1, Mode::Discover)
        .unwrap()
        .value
}

#[test]
fn only_one_reading_gives_ten() {
    assert_eq!(f_v0(MStarReading::VertexToNextInserted, 2), 10);
    assert_eq!(f_v0(MStarReading::PreviousInsertedToVertex, 2), 12);
    assert_eq!(MSTAR_READING, MStarReading::VertexToNextInserted);
    assert_eq!(middle_cycle_formula(2, true).unwrap(), 10);
}

#[test]
fn chosen_reading_matches_formula_at_n3() {
    assert_eq!(
        f_v0(MSTAR_READING, 3),
        middle_cycle_formula(3, true).unwrap()
    );
    assert_eq!(f_v0(MStarReading::PreviousInsertedToVertex, 3), 25);
}

#[test]
fn golden_edge_list() {
    // v_i at 2i, u_i at 2i+1; M(C_4) has 12 edges and three are removed
    assert_eq!(
        mstar_removed_edges(2, MSTAR_READING),
        vec![(2, 3), (3, 5), (5, 6)]
    );
    let g = build_mstar_mprime(2, MiddleVariant::MStar).unwrap();
    assert_eq!(
        g.edges(),
        vec![
            (0, 1),
            (0, 7),
            (1, 2),
            (1, 3),
            (1, 7),
            (3, 4),
            (4, 5),
            (5, 7),
            (6, 7)
        ]
    );
    assert_eq!(g.family(), "mstar:2");
}
