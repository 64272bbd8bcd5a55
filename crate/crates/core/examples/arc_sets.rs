//! Arc sets on the circle: Boolean operations, neighborhoods and transport
//! by a map.

use thompson_pingpong::exact::rat;
use thompson_pingpong::plmap::word::x0;
use thompson_pingpong::ArcSet;

fn main() {
    let a: ArcSet = "[0,1/4),(1/2,3/4]".parse().expect("valid arc set");
    let b = ArcSet::closed(&rat(7, 8), &rat(9, 8));
    println!("A        = {a}");
    println!("B        = {b}");
    println!("A ∪ B    = {}", a.union(&b));
    println!("A ∩ B    = {}", a.intersection(&b));
    println!("A^c      = {}", a.complement());
    println!("closure  = {}", a.closure());
    println!("N_1/16 A = {}", a.neighborhood(&rat(1, 16)).unwrap());
    let c = ArcSet::closed(&rat(3, 8), &rat(7, 16));
    println!("sep(cl A, [3/8,7/16]) = {}", a.closure().separation(&c).unwrap());
    // x0 doubles [0,1/4]
    println!("x0(A)    = {}", x0().image(&a));
}
