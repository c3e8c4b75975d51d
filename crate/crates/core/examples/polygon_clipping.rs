//! Convex clipping and intersection on exact rational polygons.

use gpe::geom::{clip_halfplane, intersect_convex, ConvexPolygon, ExactPoint};
use gpe::rational::{int, rat};

fn main() {
    let square = ConvexPolygon::unit_square();
    let tri = ConvexPolygon::new(vec![
        ExactPoint::from_ints(0, 0),
        ExactPoint::from_ints(2, 0),
        ExactPoint::from_ints(0, 2),
    ])
    .unwrap();

    let both = intersect_convex(&square, &tri).unwrap();
    println!("square ∩ triangle = {both}");
    println!("  area {} perimeter {}", both.area(), both.perimeter());

    // x + y <= 1/2 keeps a corner triangle
    let corner = clip_halfplane(&square, &[int(1), int(1)], &rat(1, 2)).unwrap();
    println!("x + y <= 1/2: {corner} (area {})", corner.area());

    // touching along an edge has zero area
    let right = ConvexPolygon::rectangle(int(1), int(0), int(2), int(1)).unwrap();
    println!("square ∩ shifted square = {:?}", intersect_convex(&square, &right));
}
