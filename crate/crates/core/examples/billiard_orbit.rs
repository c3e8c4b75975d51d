//! The billiard ball map on the square and its time reversal.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use gpe::billiard::{billiard_map, billiard_map_inverse, finsler_length, BilliardTable, Bounce, PhasePoint};

fn main() {
    let t = BilliardTable::unit_square();
    let mut p = PhasePoint::new(1.0 / 3.0, FRAC_PI_2);
    for _ in 0..4 {
        let Bounce::Hit(q, side) = billiard_map(&t, p).unwrap() else {
            break;
        };
        println!("(s={:.6}, theta={:.6}) -> side {side}", q.s, q.theta);
        p = q;
    }

    let start = PhasePoint::new(0.25, FRAC_PI_4);
    let Bounce::Hit(q, _) = billiard_map(&t, start).unwrap() else {
        return;
    };
    let Bounce::Hit(back, _) = billiard_map_inverse(&t, q).unwrap() else {
        return;
    };
    println!(
        "T then T^-1: ({}, {}) -> ({}, {})",
        start.s, start.theta, back.s, back.theta
    );

    let corner = PhasePoint::new(0.25, 1f64.atan2(0.75));
    println!("aimed at (1,1): {:?}", billiard_map(&t, corner).unwrap());

    let curve = [PhasePoint::new(0.0, FRAC_PI_2), PhasePoint::new(1.0, FRAC_PI_2)];
    println!(
        "Finsler length of a horizontal unit segment at theta=pi/2: {}",
        finsler_length(&curve)
    );
}
