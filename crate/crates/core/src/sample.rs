//! Seeded samplers for closed-path words and words trivial in the group.

use rand::Rng;

use crate::lgraph::{LabelledGraph, VertexId};
use crate::words::{Letter, Word};

/// A non-backtracking walk of `len` letters from `start`, stopping early
/// only at a dead end.
pub fn random_walk<R: Rng>(g: &LabelledGraph, rng: &mut R, start: VertexId, len: usize) -> Word {
    let mut v = start;
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    for _ in 0..len {
        let choices: Vec<usize> = g
            .out_darts(v)
            .iter()
            .copied()
            .filter(|&d| letters.last() != Some(&g.dart(d).label.inverse()))
            .collect();
        if choices.is_empty() {
            break;
        }
        let d = choices[rng.gen_range(0..choices.len())];
        letters.push(g.dart(d).label);
        v = g.dart(d).target;
    }
    Word(letters)
}

/// A freely reduced closed-path word at `start`: a random walk of at most
/// `walk_len` letters followed by a geodesic back. May be empty.
pub fn random_closed_word<R: Rng>(g: &LabelledGraph, rng: &mut R, start: VertexId, walk_len: usize) -> Word {
    let len = rng.gen_range(1..=walk_len.max(1));
    let out = random_walk(g, rng, start, len);
    let end = g.endpoint(start, &out).expect("walk lifts");
    out.concat(&g.shortest_path_word(end, start)).free_reduce()
}

/// Product of `1..=max_factors` conjugates `x c x^-1` of closed-path words
/// `c` (based anywhere), with `|x| <= max_conjugator`; freely reduced.
pub fn random_trivial_word<R: Rng>(
    g: &LabelledGraph,
    rng: &mut R,
    max_factors: usize,
    max_conjugator: usize,
    walk_len: usize,
) -> Word {
    let letters = g.alphabet().letter_count();
    let factors = rng.gen_range(1..=max_factors.max(1));
    let mut out = Word::empty();
    for _ in 0..factors {
        let v = rng.gen_range(0..g.vertex_count());
        let c = random_closed_word(g, rng, v, walk_len);
        let x_len = rng.gen_range(0..=max_conjugator);
        let x: Word = (0..x_len).map(|_| Letter::from_index(rng.gen_range(0..letters))).collect();
        out = out.concat(&x).concat(&c).concat(&x.invert());
    }
    out.free_reduce()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn closed_words_close() {
        let g = LabelledGraph::parse("alphabet a b c\nedge u v a\nedge u v b\nedge u v c\n").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let v = rng.gen_range(0..2);
            let w = random_closed_word(&g, &mut rng, v, 6);
            assert!(w.is_reduced());
            assert_eq!(g.endpoint(v, &w), Some(v));
            let t = random_trivial_word(&g, &mut rng, 5, 3, 6);
            assert!(t.is_reduced());
            // a, b, c all map to 1 in the integers.
            assert_eq!(t.exponent_sums(3).iter().sum::<i64>(), 0);
        }
    }
}
