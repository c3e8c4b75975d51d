//! Iterated joins `R_n` with their statistics and the levels CSV.

use gpe::gpe::{make_baker, make_rotation_exchange};
use gpe::join::{join_sequence, levels_csv, JoinCaps};
use gpe::rational::rat;

fn main() {
    let baker = join_sequence(&make_baker(), 8, JoinCaps::default()).unwrap();
    print!("{}", levels_csv(&baker));

    let rot = make_rotation_exchange(&rat(2, 5)).unwrap();
    let levels = join_sequence(&rot, 10, JoinCaps::default()).unwrap();
    let counts: Vec<usize> = levels.iter().map(|l| l.atom_count()).collect();
    println!("rotation exchange alpha=2/5, |R_n| = {counts:?}");
    for c in &levels[2].cells {
        println!("  itinerary {:?}: {}", c.itinerary, c.region);
    }

    let capped = JoinCaps {
        max_cells: 100,
        ..JoinCaps::default()
    };
    if let Err(e) = join_sequence(&make_baker(), 12, capped) {
        println!("{e}");
    }
}
