//! Exact itinerary-cell counts by unfolding, checked against a grid.

use gpe::billiard::{count_itinerary_cells_series, first_return_partition, BilliardTable, DEFAULT_BUDGET};
use gpe::oracle::billiard_grid_itinerary_count;

fn main() {
    for (name, t) in [
        ("square", BilliardTable::unit_square()),
        ("right triangle", BilliardTable::right_triangle()),
    ] {
        let part = first_return_partition(&t).unwrap();
        let counts = count_itinerary_cells_series(&t, 12, DEFAULT_BUDGET).unwrap();
        println!("{name}: |P| = {}, |P_n| = {counts:?}", part.atoms.len());
        let rates: Vec<String> = counts
            .iter()
            .enumerate()
            .map(|(k, c)| format!("{:.3}", (*c as f64).ln() / (k + 1) as f64))
            .collect();
        println!("  log|P_n|/n = {rates:?}");
        let grid: Vec<usize> = (1..=3).map(|n| billiard_grid_itinerary_count(&t, n, 600)).collect();
        println!("  grid oracle n=1..3: {grid:?}");
    }
}
