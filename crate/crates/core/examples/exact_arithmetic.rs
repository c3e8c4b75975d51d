//! Exact rationals and certified square-root enclosures.

use gpe::rational::{decimal, parse_rational, rat, Rounding};
use gpe::Enclosure;

fn main() {
    let a = rat(1, 3) + rat(1, 6);
    println!("1/3 + 1/6 = {a}");
    let q = parse_rational("-7/21").unwrap();
    println!("parsed -7/21 as {q}");

    let r2 = Enclosure::sqrt(&rat(2, 1));
    println!("sqrt(2) in {r2}");
    println!(
        "  lo rounded down {}, hi rounded up {}",
        decimal(&r2.lo, 15, Rounding::Down),
        decimal(&r2.hi, 15, Rounding::Up)
    );
    println!("  width {}", decimal(&r2.width(), 3, Rounding::Up));

    // perfect squares are exact
    let five = Enclosure::sqrt(&rat(25, 1));
    assert!(five.is_exact());
    println!("sqrt(25) = {five}");
}
