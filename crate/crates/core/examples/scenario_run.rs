//! Running and verifying a scenario from code.

use gpe::scenario::{run, verify, Scenario};

fn main() {
    let dir = std::env::temp_dir().join("gpe-scenario-example");
    let text = "scenario 1\nsystem rotation-exchange alpha=1/3\nmax_level 8\nout rotation\n";
    let s = Scenario::parse(text, &dir).unwrap();
    for line in run(&s).unwrap().lines {
        println!("{line}");
    }
    for c in verify(&s).unwrap() {
        println!("{}", c.line());
    }
}
