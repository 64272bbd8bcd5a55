//! Return counts of a certified free pair against the free group, Kesten's
//! bound, and trace-moment lower bounds for ‖1 + λ(g1) + λ(g2)‖.

use thompson_pingpong::exact::rat;
use thompson_pingpong::plmap::word::{g1, g2, r, x0};
use thompson_pingpong::spectral::{
    free_group_oracle_counts, identity_return_counts, kesten_bound, moment_norm_lower_bound, WeightedElement,
    DEFAULT_BUDGET,
};
use thompson_pingpong::{free_power_search, Limits, PlMap};

fn main() {
    let (a, b) = (x0(), x0().conjugate(&r()));
    let (k, _, _) = free_power_search(&a, &b, &Limits::default()).unwrap();
    let counts = identity_return_counts(&[a, b.power(k as i64)], 10, DEFAULT_BUDGET).unwrap();
    println!("pair counts {:?}", counts.counts);
    println!("free counts {:?}", free_group_oracle_counts(2, 10));
    println!("kesten {}", kesten_bound(2, 6).unwrap());
    for l in [4usize, 8, 10] {
        println!("L = {l:>2}: c^(1/L)/4 = {:.4}", (counts.counts[l] as f64).powf(1.0 / l as f64) / 4.0);
    }

    let one = rat(1, 1);
    let t = WeightedElement::new([(one.clone(), PlMap::identity()), (one.clone(), g1()), (one, g2())]);
    print!("{}", moment_norm_lower_bound(&t, 6, DEFAULT_BUDGET, 4).unwrap());
}
