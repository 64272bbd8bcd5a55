//! Free families of p-th powers for sets with disjoint supports.

use thompson_pingpong::constructions::{lemma_powerfree_construct, ConstructionKind, ElementMultiset};
use thompson_pingpong::pingpong::random_reduced_word_check;
use thompson_pingpong::plmap::word::{g1, x1};
use thompson_pingpong::Limits;

fn main() {
    let h = ElementMultiset::from_elements([g1(), x1()]);
    let res = lemma_powerfree_construct(&h, 3, &Limits::default()).unwrap();
    if let ConstructionKind::Powerfree { points, radius, d, power, .. } = &res.kind {
        let pts: Vec<String> = points.iter().map(|p| p.to_string()).collect();
        println!("points {}  radius {}  d {d}  power {power}", pts.join(","), radius);
    }
    println!("g = {}", res.g);
    println!("theta = {}", res.theta);
    for i in 0..res.per_h.len() {
        println!("family {}: free on words of length 8: {}", i + 1, random_reduced_word_check(&res.family(i), 8, 30, 1));
    }
    for blk in res.to_blocks() {
        print!("{blk}");
    }
}
