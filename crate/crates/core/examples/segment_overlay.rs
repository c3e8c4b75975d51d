//! Overlaying segments into an arrangement and measuring the union.

use gpe::geom::{overlay_segments, Arrangement, ExactPoint, Segment};

fn seg(a: (i64, i64), b: (i64, i64)) -> Segment {
    Segment::new(ExactPoint::from_ints(a.0, a.1), ExactPoint::from_ints(b.0, b.1)).unwrap()
}

fn main() {
    // two overlapping collinear pieces plus a segment ending on one of them
    let segs = vec![seg((0, 0), (2, 0)), seg((1, 0), (3, 0)), seg((1, 0), (1, 2))];
    for s in overlay_segments(&segs) {
        println!("piece {s}");
    }
    let arr = Arrangement::build(&segs);
    println!("union length {}", arr.length());
    println!(
        "vertices {:?}",
        arr.vertices().iter().map(|p| p.to_string()).collect::<Vec<_>>()
    );
    let t = arr.interior_vertices_on(&seg((0, 0), (3, 0)));
    println!("T-junctions inside the base line: {}", t.len());
}
