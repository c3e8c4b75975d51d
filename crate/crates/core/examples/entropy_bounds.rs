//! Growth estimates and the bound report for two systems.

use gpe::entropy::{check_bounds, regular_sample, BoundConfig, DEFAULT_SEED};
use gpe::gpe::{make_baker, make_three_rectangle_exchange};

fn main() {
    let cfg = BoundConfig::default();
    for (name, g, n) in [
        ("baker", make_baker(), 10),
        ("three rectangles", make_three_rectangle_exchange(), 30),
    ] {
        let sample = regular_sample(&g, 16, n, DEFAULT_SEED);
        let r = check_bounds(&g, n, &sample, &cfg).unwrap();
        println!("== {name}");
        print!("{}", r.to_key_values());
    }
}
