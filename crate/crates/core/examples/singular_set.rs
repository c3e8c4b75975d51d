//! The billiard singular set: sampled curves, Finsler lengths and their growth.

use gpe::billiard::{singular_set, BilliardTable, SingularConfig, DEFAULT_BUDGET};
use gpe::entropy::power_law_fit;
use gpe::oracle::corridor_singular_lengths;

fn main() {
    let t = BilliardTable::unit_square();
    let n = 12;
    let set = singular_set(&t, n, &SingularConfig::default()).unwrap();
    let closed = corridor_singular_lengths(&t, n, DEFAULT_BUDGET).unwrap();
    println!("generation  sampled      closed form");
    for (k, (a, b)) in set.generation_lengths.iter().zip(&closed).enumerate() {
        println!("{k:>10}  {a:<11.6}  {b:.6}");
    }
    let cum = set.cumulative_lengths();
    let fit = power_law_fit(&cum).unwrap();
    println!(
        "{} curves, total length {:.4}, fit c*n^alpha with c={:.3} alpha={:.3}",
        set.curves.len(),
        set.total_length(),
        fit.c,
        fit.alpha
    );
    println!("truncated: {}", set.truncated);
}
