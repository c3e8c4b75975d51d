//! Printing and parsing the text description of a polygon exchange.

use gpe::gpe::{make_shear_exchange, parse_description, print_description};

fn main() {
    let g = make_shear_exchange();
    let text = print_description(&g);
    print!("{text}");
    let back = parse_description(&text).unwrap();
    assert_eq!(back, g);
    assert_eq!(print_description(&back), text);
    println!("round trip ok");

    let broken = "gpe 1\nflavor affine\nspace (0,0) (1,0) (1,1)\natom (0,0) (1,0) (1,1)\n";
    match parse_description(broken) {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("rejected: {e}"),
    }
}
