//! Grid evidence that the billiard map is a polygon exchange, and table files.

use gpe::billiard::{as_gpe_report, parse_table, print_table, BilliardTable};

fn main() {
    let t = BilliardTable::right_triangle();
    print!("{}", as_gpe_report(&t, 150).unwrap().to_key_values());

    let kite = parse_table("table 1\nvertex 0 0\nvertex 2 0\nvertex 3/2 1\nvertex 1/2 3/2\n").unwrap();
    print!("{}", print_table(&kite));
    println!("perimeter {}", kite.perimeter());
}
