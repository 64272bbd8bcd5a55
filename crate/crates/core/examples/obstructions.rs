//! Disjoint supports force commuting conjugates, and four conjugates by
//! centralizing elements always share a fixed point triple.

use thompson_pingpong::constructions::{disjoint_support_obstruction, four_conjugate_analysis};
use thompson_pingpong::plmap::word::{g1, r, x0, x1};
use thompson_pingpong::PlMap;

fn main() {
    let c1 = PlMap::identity();
    let c2 = x0().power(2).compose(&r());
    let rep = disjoint_support_obstruction(&g1(), &x1(), &c1, &c2).unwrap();
    println!("union covers {}  intersection {}  commute {}", rep.covers, rep.h2_intersection, rep.h2_conjugates_commute);

    let s = x0();
    let sr = s.compose(&r());
    let cs: Vec<PlMap> = (1..=4).map(|m| sr.power(m)).collect();
    let rep = four_conjugate_analysis(&g1(), &x1(), &r(), &s, &cs).unwrap();
    print!("{}", rep.to_block());
}
