//! Lyapunov exponents along orbits of affine exchanges.

use gpe::entropy::{lyapunov, lyapunov_log_norms};
use gpe::geom::ExactPoint;
use gpe::gpe::{make_baker, make_quadrant_rotation, make_shear_exchange};
use gpe::rational::rat;

fn main() {
    let x = ExactPoint::new(rat(3, 7), rat(2, 9));
    for (name, g) in [
        ("baker", make_baker()),
        ("shear", make_shear_exchange()),
        ("quadrant rotation", make_quadrant_rotation()),
    ] {
        match lyapunov(&g, &x, 12) {
            Ok(v) => println!(
                "{name}: lambda_k/k = {:?}",
                v.iter().map(|l| format!("{l:.4}")).collect::<Vec<_>>()
            ),
            Err(e) => println!("{name}: {e}"),
        }
    }
    let bounds = lyapunov_log_norms(&make_shear_exchange(), &x, 4).unwrap();
    println!("shear log-norm enclosures: {bounds:?}");
}
