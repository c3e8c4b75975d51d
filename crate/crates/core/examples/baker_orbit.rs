//! Building a polygon exchange, validating it and following orbits.

use gpe::geom::ExactPoint;
use gpe::gpe::{make_baker, OrbitStatus};
use gpe::rational::rat;

fn main() {
    let g = make_baker();
    println!(
        "baker map: {} atoms, valid = {}",
        g.atom_count(),
        g.validate().is_valid()
    );
    println!("target atoms:");
    for q in &g.target().atoms {
        println!("  {q}");
    }

    let x = ExactPoint::new(rat(1, 3), rat(1, 5));
    let o = g.evaluate(&x, 6).unwrap();
    println!("orbit of {x}:");
    for (p, i) in o.points.iter().zip(&o.itinerary) {
        println!("  {p} in atom {i}");
    }

    let edge = ExactPoint::new(rat(1, 2), rat(1, 4));
    let hit = g.evaluate(&edge, 3).unwrap();
    assert_eq!(hit.status, OrbitStatus::SingularHit(0));
    println!("{edge} lies on an atom boundary: {:?}", hit.status);

    let inv = g.inverse().unwrap();
    let back = inv.evaluate(o.last(), 6).unwrap();
    println!("inverse orbit returns to {}", back.last());
}
