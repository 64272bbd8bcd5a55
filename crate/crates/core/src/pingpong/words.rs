use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{rat, CirclePoint};
use crate::plmap::PlMap;

/// Generator `gen` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

/// Points used to detect non-identity words before composing exactly.
fn probes() -> Vec<CirclePoint> {
    [(1, 3), (2, 7), (5, 11), (7, 13), (10, 17), (22, 23), (1, 29)]
        .iter()
        .map(|&(n, d)| CirclePoint::new(rat(n, d)))
        .collect()
}

struct Alphabet {
    maps: Vec<PlMap>,
    inverses: Vec<PlMap>,
    orders: Vec<Option<u64>>,
}

impl Alphabet {
    fn new(gens: &[PlMap], orders: &[Option<u64>]) -> Self {
        assert_eq!(gens.len(), orders.len(), "one order per generator");
        Alphabet {
            maps: gens.to_vec(),
            inverses: gens.iter().map(PlMap::inverse).collect(),
            orders: orders.to_vec(),
        }
    }

    fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for (gen, order) in self.orders.iter().enumerate() {
            out.push(Letter { gen, inverse: false });
            if order.is_none() {
                out.push(Letter { gen, inverse: true });
            }
        }
        out
    }

    fn map(&self, l: Letter) -> &PlMap {
        if l.inverse {
            &self.inverses[l.gen]
        } else {
            &self.maps[l.gen]
        }
    }

    /// May `l` stand next to a run of `run` copies of `nb`?
    fn allowed(&self, l: Letter, nb: Option<(Letter, u64)>) -> bool {
        let Some((nb, run)) = nb else { return true };
        if nb.gen != l.gen {
            return true;
        }
        match self.orders[l.gen] {
            Some(q) => run + 1 < q,
            None => nb.inverse == l.inverse,
        }
    }

    fn is_identity(&self, word: &[Letter]) -> bool {
        let pts = probes();
        let moved = pts.iter().any(|p| {
            let img = word.iter().rev().fold(p.clone(), |x, l| self.map(*l).evaluate(&x));
            &img != p
        });
        if moved {
            return false;
        }
        word.iter()
            .fold(PlMap::identity(), |acc, l| acc.compose(self.map(*l)))
            .is_identity()
    }
}

/// Depth-first search over normal-form words of length `1..=max_len`,
/// returning the first one that evaluates to the identity. Generators with
/// `Some(q)` are used with positive exponents below `q` only; the others
/// form freely reduced words.
pub fn find_relation(gens: &[PlMap], orders: &[Option<u64>], max_len: usize) -> Option<Vec<Letter>> {
    let alpha = Alphabet::new(gens, orders);
    let letters = alpha.letters();
    let pts = probes();
    // words grow on the left, so the probe images update with one evaluation
    fn dfs(
        alpha: &Alphabet,
        letters: &[Letter],
        word: &mut Vec<Letter>,
        run: u64,
        images: &[CirclePoint],
        pts: &[CirclePoint],
        max_len: usize,
    ) -> Option<Vec<Letter>> {
        if word.len() == max_len {
            return None;
        }
        let front = word.first().map(|l| (*l, run));
        for &l in letters {
            if !alpha.allowed(l, front) {
                continue;
            }
            let next: Vec<CirclePoint> = images.iter().map(|x| alpha.map(l).evaluate(x)).collect();
            word.insert(0, l);
            if next == pts && alpha.is_identity(word) {
                return Some(word.clone());
            }
            let new_run = match front {
                Some((f, r)) if f.gen == l.gen => r + 1,
                _ => 1,
            };
            if let Some(w) = dfs(alpha, letters, word, new_run, &next, pts, max_len) {
                return Some(w);
            }
            word.remove(0);
        }
        None
    }
    dfs(&alpha, &letters, &mut Vec::new(), 0, &pts, &pts, max_len)
}

/// True iff no freely reduced word of length `1..=max_len` is the identity.
pub fn exhaustive_reduced_word_check(gens: &[PlMap], max_len: usize) -> bool {
    find_relation(gens, &vec![None; gens.len()], max_len).is_none()
}

/// True iff no free-product normal form of length `1..=max_len` is the
/// identity (see [`find_relation`]).
pub fn exhaustive_normal_form_check(gens: &[PlMap], orders: &[Option<u64>], max_len: usize) -> bool {
    find_relation(gens, orders, max_len).is_none()
}

fn sample(alpha: &Alphabet, letters: &[Letter], rng: &mut ChaCha8Rng, length: usize) -> Option<Vec<Letter>> {
    let mut word: Vec<Letter> = Vec::with_capacity(length);
    let mut run = 0u64;
    for _ in 0..length {
        let last = word.last().map(|l| (*l, run));
        let choices: Vec<Letter> = letters.iter().copied().filter(|l| alpha.allowed(*l, last)).collect();
        if choices.is_empty() {
            return None;
        }
        let l = choices[rng.gen_range(0..choices.len())];
        run = match last {
            Some((p, r)) if p.gen == l.gen => r + 1,
            _ => 1,
        };
        word.push(l);
    }
    Some(word)
}

/// Samples `trials` normal-form words of exactly `length` letters; true iff
/// none is the identity. Deterministic in `seed`.
pub fn random_normal_form_check(
    gens: &[PlMap],
    orders: &[Option<u64>],
    length: usize,
    trials: usize,
    seed: u64,
) -> bool {
    let alpha = Alphabet::new(gens, orders);
    let letters = alpha.letters();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).all(|_| match sample(&alpha, &letters, &mut rng, length) {
        Some(w) => !alpha.is_identity(&w),
        None => true,
    })
}

/// Samples `trials` freely reduced words of exactly `length` letters over
/// `gens` and their inverses; true iff none is the identity.
pub fn random_reduced_word_check(gens: &[PlMap], length: usize, trials: usize, seed: u64) -> bool {
    random_normal_form_check(gens, &vec![None; gens.len()], length, trials, seed)
}
