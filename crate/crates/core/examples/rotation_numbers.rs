//! Rotation numbers and periodic orbits of elements of T.

use thompson_pingpong::plmap::{parse_word, Bindings};

fn main() {
    let b = Bindings::builtin();
    for w in ["r", "x0", "r x0", "r x1 x0^-1", "x2 r^3 g1"] {
        let f = parse_word(w, &b).unwrap();
        let rot = f.rotation_number(64).unwrap();
        let orbit = f.periodic_orbit_witness(&rot).unwrap();
        let pts: Vec<String> = orbit.iter().map(|p| p.to_string()).collect();
        println!("{w:>12}  rot {rot:<5} orbit {}", pts.join(" -> "));
        for m in [2, -3] {
            assert_eq!(f.power(m).rotation_number(64).unwrap(), rot.times(m));
        }
    }
}
