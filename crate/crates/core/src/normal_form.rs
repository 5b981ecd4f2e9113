//! Seminormal diagrams, leaf-exponent words and the unique normal form.
//!
//! A word is seminormal when it reads
//! `x0^a0 y0^e0 x1^a1 y1^e1 ... xn^an yn^en  xm^-bm ... x0^-b0` with every
//! `e_i` in {0,1}. Diagrams are brought into the matching shape (target tree
//! without y-carets, source y-carets only directly above a leaf) by caret
//! pushing, then the word is read off leaf by leaf and shortened with two
//! rewrites until neither applies:
//!
//! * exposed cancellation: `x_i [indices >= i+2] x_i^-1` drops the pair and
//!   lowers the inner indices by one;
//! * hidden cancellation: `x_i y_i x_{i+2} u x_{i+1}^-1 x_i^-1` with every
//!   index of `u` at least `i+3` becomes `y_i u'`, `u'` lowered by two.

use std::fmt;

use crate::element::Element;
use crate::error::Result;
use crate::tree::{CaretKind, NodePath, Side, Tree};
use crate::word::{Generator, Word};

/// Exponent table of a seminormal word; trailing zero rows are trimmed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalFormWord {
    /// `a_i`, the power of `x_i` in the positive part.
    pos_x: Vec<u32>,
    /// `e_i`, whether `y_i` appears in the positive part.
    pos_y: Vec<bool>,
    /// `b_i`, the power of `x_i^-1` in the negative part.
    neg_x: Vec<u32>,
}

impl NormalFormWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn a(&self, i: usize) -> u32 {
        self.pos_x.get(i).copied().unwrap_or(0)
    }

    pub fn eps(&self, i: usize) -> bool {
        self.pos_y.get(i).copied().unwrap_or(false)
    }

    pub fn b(&self, i: usize) -> u32 {
        self.neg_x.get(i).copied().unwrap_or(0)
    }

    fn width(&self) -> usize {
        self.pos_x.len()
    }

    /// Highest index carrying a positive letter.
    pub fn n(&self) -> Option<usize> {
        (0..self.width())
            .rev()
            .find(|&i| self.a(i) > 0 || self.eps(i))
    }

    /// Highest index carrying a negative letter.
    pub fn m(&self) -> Option<usize> {
        (0..self.width()).rev().find(|&i| self.b(i) > 0)
    }

    pub fn is_identity(&self) -> bool {
        self.n().is_none() && self.m().is_none()
    }

    pub fn sum_a(&self) -> u64 {
        self.pos_x.iter().map(|&v| u64::from(v)).sum()
    }

    pub fn sum_eps(&self) -> u64 {
        self.pos_y.iter().filter(|&&e| e).count() as u64
    }

    pub fn sum_b(&self) -> u64 {
        self.neg_x.iter().map(|&v| u64::from(v)).sum()
    }

    pub fn len(&self) -> usize {
        (self.sum_a() + self.sum_eps() + self.sum_b()) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Builds the table from `(a_i, e_i)` and `b_i` rows.
    pub fn from_parts(positive: &[(u32, bool)], negative: &[u32]) -> Self {
        let w = positive.len().max(negative.len());
        let mut nf = NormalFormWord {
            pos_x: vec![0; w],
            pos_y: vec![false; w],
            neg_x: vec![0; w],
        };
        for (i, &(a, e)) in positive.iter().enumerate() {
            nf.pos_x[i] = a;
            nf.pos_y[i] = e;
        }
        nf.neg_x[..negative.len()].copy_from_slice(negative);
        nf.trim();
        nf
    }

    fn trim(&mut self) {
        while self.width() > 0 {
            let i = self.width() - 1;
            if self.pos_x[i] == 0 && !self.pos_y[i] && self.neg_x[i] == 0 {
                self.pos_x.pop();
                self.pos_y.pop();
                self.neg_x.pop();
            } else {
                break;
            }
        }
    }

    fn pad(&mut self, w: usize) {
        if self.width() < w {
            self.pos_x.resize(w, 0);
            self.pos_y.resize(w, false);
            self.neg_x.resize(w, 0);
        }
    }

    fn remove_rows(&mut self, at: usize, count: usize) {
        let end = (at + count).min(self.width());
        if at < end {
            self.pos_x.drain(at..end);
            self.pos_y.drain(at..end);
            self.neg_x.drain(at..end);
        }
    }

    pub fn to_word(&self) -> Word {
        let mut letters = Vec::new();
        for i in 0..self.width() {
            let idx = i as u32;
            letters.extend(std::iter::repeat_n(Generator::x(idx), self.a(i) as usize));
            if self.eps(i) {
                letters.push(Generator::y(idx));
            }
        }
        for i in (0..self.width()).rev() {
            letters.extend(std::iter::repeat_n(
                Generator::x(i as u32).inv(),
                self.b(i) as usize,
            ));
        }
        Word(letters)
    }

    /// `i a_i e_i b_i`, one row per index up to the highest nonzero one.
    pub fn table(&self) -> String {
        let mut out = String::from("i,a,eps,b\n");
        for i in 0..self.width() {
            out.push_str(&format!(
                "{i},{},{},{}\n",
                self.a(i),
                u8::from(self.eps(i)),
                self.b(i)
            ));
        }
        out
    }

    /// Exposed cancellation at index `i`.
    fn exposed_at(&self, i: usize) -> bool {
        self.a(i) > 0
            && self.b(i) > 0
            && self.a(i + 1) == 0
            && self.b(i + 1) == 0
            && !self.eps(i)
            && !self.eps(i + 1)
    }

    /// Hidden cancellation `x_i y_i x_{i+2} u x_{i+1}^-1 x_i^-1` at index `i`.
    fn hidden_at(&self, i: usize) -> bool {
        self.a(i) > 0
            && self.eps(i)
            && self.a(i + 1) == 0
            && !self.eps(i + 1)
            && self.a(i + 2) == 1
            && !self.eps(i + 2)
            && self.b(i + 2) == 0
            && self.b(i + 1) == 1
            && self.b(i) > 0
    }

    /// True when no rewrite applies.
    pub fn is_normal(&self) -> bool {
        (0..self.width()).all(|i| !self.exposed_at(i) && !self.hidden_at(i))
    }

    /// Applies the two cancellations, lowest index first, until neither applies.
    pub fn reduce_to_normal(mut self) -> Self {
        'outer: loop {
            for i in 0..self.width() {
                if self.exposed_at(i) {
                    self.pad(i + 2);
                    self.pos_x[i] -= 1;
                    self.neg_x[i] -= 1;
                    self.remove_rows(i + 1, 1);
                    self.trim();
                    continue 'outer;
                }
                if self.hidden_at(i) {
                    self.pad(i + 3);
                    self.pos_x[i] -= 1;
                    self.neg_x[i] -= 1;
                    self.remove_rows(i + 1, 2);
                    self.trim();
                    continue 'outer;
                }
            }
            return self;
        }
    }

    /// The unique normal form of the element.
    pub fn of_element(g: &Element) -> Self {
        seminormal_word(g).reduce_to_normal()
    }
}

impl fmt::Display for NormalFormWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_word().fmt(f)
    }
}

/// Normal form of the element represented by `w`.
pub fn normalize(w: &Word) -> NormalFormWord {
    NormalFormWord::of_element(&w.to_element())
}

/// Positive leaf-exponent word of a tree whose right spine is all x-carets.
///
/// Every caret off the right spine belongs to the leaf at the bottom of its
/// chain of left children; leaf `i` contributes one letter of index `i` per
/// caret in its chain, read from the top of the chain down.
pub fn leaf_exponent_word(t: &Tree) -> Word {
    // (leaf, depth, kind)
    fn go(
        t: &Tree,
        offset: usize,
        depth: usize,
        on_spine: bool,
        out: &mut Vec<(usize, usize, CaretKind)>,
    ) {
        if let Tree::Caret(k, l, r) = t {
            if !on_spine {
                out.push((offset, depth, *k));
            }
            go(l, offset, depth + 1, false, out);
            go(r, offset + l.leaves(), depth + 1, on_spine, out);
        }
    }
    let mut carets = Vec::new();
    go(t, 0, 0, true, &mut carets);
    carets.sort_by_key(|&(leaf, depth, _)| (leaf, depth));
    carets
        .into_iter()
        .map(|(leaf, _, kind)| Generator {
            family: kind,
            index: leaf as u32,
            inverse: false,
        })
        .collect()
}

/// The seminormal (not yet reduced) exponent table of `g`.
pub fn seminormal_word(g: &Element) -> NormalFormWord {
    let s = to_seminormal(g);
    let pos = leaf_exponent_word(s.source());
    let neg = leaf_exponent_word(s.target());
    let width = pos
        .0
        .iter()
        .chain(neg.0.iter())
        .map(|l| l.index as usize + 1)
        .max()
        .unwrap_or(0);
    let mut positive = vec![(0u32, false); width];
    for l in &pos.0 {
        let row = &mut positive[l.index as usize];
        match l.family {
            CaretKind::X => {
                debug_assert!(!row.1, "x letter after y in one index");
                row.0 += 1;
            }
            CaretKind::Y => {
                debug_assert!(!row.1, "two y letters in one index");
                row.1 = true;
            }
        }
    }
    let mut negative = vec![0u32; width];
    for l in &neg.0 {
        debug_assert_eq!(l.family, CaretKind::X, "target tree must be y-free");
        negative[l.index as usize] += 1;
    }
    NormalFormWord::from_parts(&positive, &negative)
}

/// Which tree caret pushing is working on; the source pass must never hand
/// a y-caret to the target tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pass {
    Target,
    Source,
}

/// A diagram for `g` whose trees both have x-only right spines.
pub fn with_x_spines(g: &Element) -> Element {
    let (mut source, mut target) = g.reduce().into_trees();
    straighten_spine(&mut source, &mut target);
    straighten_spine(&mut target, &mut source);
    Element::new(source, target).expect("carets are always added to both trees")
}

/// A diagram for `g` with x-only right spines, a y-free target tree, and
/// source y-carets whose left children are leaves. Exposed caret pairs are
/// removed at the end, which keeps all three properties.
pub fn to_seminormal(g: &Element) -> Element {
    let (mut source, mut target) = with_x_spines(g).into_trees();
    push_y_carets(&mut target, &mut source, Pass::Target);
    eliminate_y_carets(&mut target, &mut source);
    push_y_carets(&mut source, &mut target, Pass::Source);
    Element::new(source, target)
        .expect("carets are always added to both trees")
        .reduce()
}

/// Switches every y-caret of the right spine to x, mirroring added carets.
fn straighten_spine(tree: &mut Tree, partner: &mut Tree) {
    loop {
        let mut path = NodePath::root();
        let mut node = &*tree;
        let found = loop {
            match node {
                Tree::Leaf => break None,
                Tree::Caret(CaretKind::Y, _, _) => break Some(path),
                Tree::Caret(CaretKind::X, _, r) => {
                    node = r;
                    path = path.child(Side::R);
                }
            }
        };
        let Some(path) = found else { return };
        let (switched, added) = tree
            .switch_caret_type(&path)
            .expect("path addresses a caret");
        *tree = switched;
        if let Some(a) = added {
            partner.attach(a.leaf, Tree::caret(a.kind, Tree::Leaf, Tree::Leaf));
        }
    }
}

/// The y-caret to move next: one with a non-leaf left child, maximising the
/// index of its leftmost leaf, then depth.
fn next_y_to_push(t: &Tree) -> Option<(NodePath, usize)> {
    fn go(
        t: &Tree,
        offset: usize,
        path: &mut Vec<Side>,
        best: &mut Option<((usize, usize), Vec<Side>)>,
    ) {
        if let Tree::Caret(k, l, r) = t {
            if *k == CaretKind::Y && !l.is_leaf() {
                let key = (offset, path.len());
                if best.as_ref().is_none_or(|(b, _)| key > *b) {
                    *best = Some((key, path.clone()));
                }
            }
            path.push(Side::L);
            go(l, offset, path, best);
            path.pop();
            path.push(Side::R);
            go(r, offset + l.leaves(), path, best);
            path.pop();
        }
    }
    let mut best = None;
    go(t, 0, &mut Vec::new(), &mut best);
    best.map(|((offset, _), p)| (NodePath(p), offset))
}

fn push_y_carets(tree: &mut Tree, partner: &mut Tree, pass: Pass) {
    while let Some((path, offset)) = next_y_to_push(tree) {
        let node = tree.subtree_mut(&path).expect("path from search");
        if let Some((leaf, graft)) = push_once(node, pass) {
            partner.attach(offset + leaf, graft);
        }
    }
}

/// Moves the y-caret at the root of `node` one step down its left chain.
///
/// Returns the subtree added at a leaf (local leaf index), which has to be
/// mirrored on the partner tree.
fn push_once(node: &mut Tree, pass: Pass) -> Option<(usize, Tree)> {
    let Tree::Caret(CaretKind::Y, left, _) = node else {
        unreachable!("push target is a y-caret");
    };
    let added = match &mut **left {
        Tree::Caret(CaretKind::Y, _, _) => None,
        Tree::Caret(CaretKind::X, a, r) => {
            let leaf = a.leaves();
            let added = match &mut **r {
                // Subdivide the leaf with an x-caret, then two moves.
                Tree::Leaf => {
                    let g = Tree::x(Tree::Leaf, Tree::Leaf);
                    **r = g.clone();
                    Some((leaf, g))
                }
                Tree::Caret(CaretKind::X, _, _) => None,
                Tree::Caret(CaretKind::Y, b, _) => {
                    assert!(
                        b.is_leaf(),
                        "y-carets further right have leaf left children"
                    );
                    let g = match pass {
                        Pass::Target => Tree::y(Tree::Leaf, Tree::Leaf),
                        Pass::Source => Tree::x(Tree::Leaf, Tree::x(Tree::Leaf, Tree::Leaf)),
                    };
                    **b = g.clone();
                    if pass == Pass::Source {
                        b.basic_move_here();
                    }
                    let moved = r.basic_move_here();
                    debug_assert!(moved);
                    Some((leaf, g))
                }
            };
            let moved = left.basic_move_here();
            debug_assert!(moved);
            added
        }
        Tree::Leaf => unreachable!("push target has a non-leaf left child"),
    };
    let moved = node.basic_move_here();
    debug_assert!(moved);
    added
}

/// Removes every y-caret (each with a leaf left child) by hanging a y-caret
/// on that leaf and applying a basic move.
fn eliminate_y_carets(tree: &mut Tree, partner: &mut Tree) {
    fn find(t: &Tree, offset: usize, path: &mut Vec<Side>) -> Option<(NodePath, usize)> {
        let Tree::Caret(k, l, r) = t else { return None };
        if *k == CaretKind::Y {
            return Some((NodePath(path.clone()), offset));
        }
        path.push(Side::L);
        if let Some(hit) = find(l, offset, path) {
            return Some(hit);
        }
        path.pop();
        path.push(Side::R);
        let hit = find(r, offset + l.leaves(), path);
        path.pop();
        hit
    }
    while let Some((path, offset)) = find(tree, 0, &mut Vec::new()) {
        let node = tree.subtree_mut(&path).expect("path from search");
        let Tree::Caret(_, l, _) = node else {
            unreachable!()
        };
        debug_assert!(l.is_leaf());
        **l = Tree::y(Tree::Leaf, Tree::Leaf);
        let moved = node.basic_move_here();
        debug_assert!(moved);
        partner.attach(offset, Tree::y(Tree::Leaf, Tree::Leaf));
    }
}

/// One relator `lhs = rhs` and whether it holds in the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorCheck {
    pub family: &'static str,
    pub lhs: Word,
    pub rhs: Word,
    pub holds: bool,
}

pub fn check_relation(lhs: &Word, rhs: &Word) -> Result<bool> {
    lhs.to_element().equals(&rhs.to_element())
}

/// The infinite family of relators up to `max_index` and the ten relators
/// of the finite presentation on `x0, x1, y0, y1`.
pub fn presentation_relators(max_index: u32) -> Vec<(&'static str, Word, Word)> {
    use Generator as G;
    let mut out = Vec::new();
    for j in 0..=max_index {
        for i in 0..j {
            out.push((
                "1",
                Word(vec![G::x(j), G::x(i)]),
                Word(vec![G::x(i), G::x(j + 1)]),
            ));
            out.push((
                "2",
                Word(vec![G::x(j), G::y(i)]),
                Word(vec![G::y(i), G::x(j + 1)]),
            ));
            out.push((
                "3",
                Word(vec![G::y(j), G::x(i)]),
                Word(vec![G::x(i), G::y(j + 1)]),
            ));
            out.push((
                "4",
                Word(vec![G::y(j), G::y(i)]),
                Word(vec![G::y(i), G::y(j + 1)]),
            ));
        }
    }
    for i in 0..=max_index {
        out.push((
            "5",
            Word(vec![G::y(i), G::y(i)]),
            Word(vec![G::x(i), G::x(i + 1)]),
        ));
    }
    for (l, r) in [
        ("x2 x1", "x1 x3"),
        ("x3 x1", "x1 x4"),
        ("x2 y1", "y1 x3"),
        ("x3 y1", "y1 x4"),
        ("y2 x1", "x1 y3"),
        ("y3 x1", "x1 y4"),
        ("y2 y1", "y1 y3"),
        ("y3 y1", "y1 y4"),
        ("y0 y0", "x0 x1"),
        ("y1 y1", "x1 x2"),
    ] {
        out.push((
            "finite",
            l.parse().expect("literal"),
            r.parse().expect("literal"),
        ));
    }
    out
}

/// Checks every relator of [`presentation_relators`].
pub fn check_presentation(max_index: u32) -> Result<Vec<RelatorCheck>> {
    presentation_relators(max_index)
        .into_iter()
        .map(|(family, lhs, rhs)| {
            let holds = check_relation(&lhs, &rhs)?;
            Ok(RelatorCheck {
                family,
                lhs,
                rhs,
                holds,
            })
        })
        .collect()
}
