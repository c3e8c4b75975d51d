//! Polygonal billiards: the ball map, its first-return partition, exact
//! itinerary counting and the singular set.

mod io;
mod partition;
mod phase;
mod report;
mod singular;
mod table;
mod unfold;

pub use io::{
    curves_dump, curves_dump_header, parse_table, print_table, singular_csv, singular_csv_header, TABLE_HEADER,
};
pub use partition::{first_return_partition, FirstReturnPartition, ReturnAtom, ReturnCurve};
pub use phase::{billiard_map, billiard_map_inverse, finsler_gap, finsler_length, orbit_sides, Bounce, PhasePoint};
pub use report::{as_gpe_report, AtomEvidence, GpeReport, DEFAULT_REPORT_GRID};
pub use singular::{singular_set, trace, Direction, SingularConfig, SingularCurve, SingularSet};
pub use table::BilliardTable;
pub use unfold::{count_itinerary_cells, count_itinerary_cells_series, for_each_corridor, Corridor, DEFAULT_BUDGET};
