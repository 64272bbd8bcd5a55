//! Find b^k playing ping-pong with a, print the certificate and trace, and
//! check words in the pair.

use thompson_pingpong::pingpong::random_reduced_word_check;
use thompson_pingpong::plmap::word::{r, x0};
use thompson_pingpong::{free_power_search, verify_certificate, Limits};

fn main() {
    let limits = Limits::default();
    // torsion a against an element with one fixed point, then two
    // conjugate parabolic maps
    for (a, b) in [(r(), x0()), (x0(), x0().conjugate(&r()))] {
        let (k, cert, trace) = free_power_search(&a, &b, &limits).unwrap();
        let bk = b.power(k as i64);
        println!("k = {k}");
        print!("{}", cert.to_block(&a, &bk));
        print!("{trace}");
        assert!(verify_certificate(&a, &bk, &cert).unwrap().is_valid());
        for len in [6, 10] {
            println!("length {len}: free = {}", random_reduced_word_check(&[a.clone(), bk.clone()], len, 50, 7));
        }
    }
}
