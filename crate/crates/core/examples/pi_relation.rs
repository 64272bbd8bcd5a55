//! The quasi-regular relation between H1 and H2, and what breaks it.

use thompson_pingpong::constructions::{haagerup_olesen_multisets, verify_pi_relation, ElementMultiset};
use thompson_pingpong::plmap::word::{g1, g2, x1, x2};
use thompson_pingpong::PlMap;

fn main() {
    let sets = haagerup_olesen_multisets();
    println!("H1 = {}", sets.h1);
    println!("H2 = {}", sets.h2);
    println!("equal: {:?}", verify_pi_relation(&sets.h1, &sets.h2).is_ok());
    let single = ElementMultiset::from_elements([PlMap::identity(), g1().compose(&x1()), g2().compose(&x2())]);
    match verify_pi_relation(&sets.h1, &single) {
        Ok(()) => println!("single identity: equal"),
        Err(w) => println!("single identity: {w}"),
    }
}
