#![allow(dead_code)]

use ftau_core::{CaretKind, Generator, Tree, Word};
use rand::Rng;

/// Uniformly shaped random tree: the left subtree size is uniform in `0..n`.
pub fn random_tree<R: Rng>(rng: &mut R, carets: usize) -> Tree {
    if carets == 0 {
        return Tree::Leaf;
    }
    let left = rng.gen_range(0..carets);
    let kind = if rng.gen_bool(0.5) {
        CaretKind::X
    } else {
        CaretKind::Y
    };
    Tree::caret(
        kind,
        random_tree(rng, left),
        random_tree(rng, carets - 1 - left),
    )
}

pub fn random_word<R: Rng>(rng: &mut R, max_len: usize, max_index: u32) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let index = rng.gen_range(0..=max_index);
            let g = if rng.gen_bool(0.5) {
                Generator::x(index)
            } else {
                Generator::y(index)
            };
            if rng.gen_bool(0.5) {
                g.inv()
            } else {
                g
            }
        })
        .collect()
}

/// All words of exactly `len` letters over `alphabet`, in lexicographic order.
pub fn all_words(alphabet: &[Generator], len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..len {
        out = out
            .iter()
            .flat_map(|w| alphabet.iter().map(move |g| w.concat(&Word(vec![*g]))))
            .collect();
    }
    out
}

/// Like [`random_tree`], with every caret of the right spine turned into an x-caret.
pub fn random_x_spined_tree<R: Rng>(rng: &mut R, carets: usize) -> Tree {
    fn straighten(t: Tree) -> Tree {
        match t {
            Tree::Leaf => Tree::Leaf,
            Tree::Caret(_, l, r) => Tree::x(*l, straighten(*r)),
        }
    }
    straighten(random_tree(rng, carets))
}
