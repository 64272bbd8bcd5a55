//! Conjugate free families built around a point fixed by no element of E.

use thompson_pingpong::constructions::{find_common_support_point, haagerup_olesen_multisets, lemma_fixed_point_construct};
use thompson_pingpong::pingpong::exhaustive_reduced_word_check;
use thompson_pingpong::Limits;

fn main() {
    let e = haagerup_olesen_multisets().e;
    let p = find_common_support_point(&e).unwrap();
    println!("E = {e}");
    println!("p = {p}");
    let res = lemma_fixed_point_construct(&e, &p, 3, &Limits::default()).unwrap();
    println!("g = {}", res.g);
    println!("theta = {}", res.theta);
    for (i, per) in res.per_h.iter().enumerate() {
        let fam = res.family(i);
        println!("h = {}  rho = {}  words to length 4 free: {}", per.h, per.rho, exhaustive_reduced_word_check(&fam, 4));
    }
    res.verify().unwrap();
}
