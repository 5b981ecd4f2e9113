//! Binary trees with x- and y-carets and the subdivisions of [0,1] they encode.
//!
//! A node at level `k` covers an interval of length `tau^k`. An x-caret sends
//! its left child to level `k+2` and its right child to level `k+1`; a
//! y-caret does the opposite. The two three-leaf trees `x(.,x(.,.))` and
//! `y(y(.,.),.)` give the same subdivision and exchanging one for the other
//! inside a tree is a *basic move*.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::parse::Cursor;
use crate::ztau::ZTau;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaretKind {
    X,
    Y,
}

impl CaretKind {
    pub fn flip(self) -> CaretKind {
        match self {
            CaretKind::X => CaretKind::Y,
            CaretKind::Y => CaretKind::X,
        }
    }

    /// Level offsets `(left, right)` of the children relative to the caret.
    pub fn child_offsets(self) -> (i64, i64) {
        match self {
            CaretKind::X => (2, 1),
            CaretKind::Y => (1, 2),
        }
    }

    fn letter(self) -> char {
        match self {
            CaretKind::X => 'x',
            CaretKind::Y => 'y',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf,
    Caret(CaretKind, Box<Tree>, Box<Tree>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    L,
    R,
}

/// Address of a node: the sequence of turns taken from the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct NodePath(pub Vec<Side>);

impl NodePath {
    pub fn root() -> Self {
        NodePath(Vec::new())
    }

    pub fn child(&self, side: Side) -> Self {
        let mut v = self.0.clone();
        v.push(side);
        NodePath(v)
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Side::L => "L",
                Side::R => "R",
            })?;
        }
        Ok(())
    }
}

impl FromStr for NodePath {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut cur = Cursor::new(s.trim());
        let mut v = Vec::new();
        while let Some(c) = cur.peek() {
            match c {
                'L' | 'l' => v.push(Side::L),
                'R' | 'r' => v.push(Side::R),
                _ => return Err(cur.error("`L` or `R`")),
            }
            cur.bump();
        }
        Ok(NodePath(v))
    }
}

/// A caret inserted at a leaf (indexed left to right, from 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AddedCaret {
    pub leaf: usize,
    pub kind: CaretKind,
}

/// Breakpoints `0 = p_0 < p_1 < ... < p_n = 1` and the level of every interval.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    pub breakpoints: Vec<ZTau>,
    pub levels: Vec<i64>,
}

impl Partition {
    /// True when every breakpoint of `coarser` is also a breakpoint of `self`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        let mine: HashSet<ZTau> = self.breakpoints.iter().copied().collect();
        coarser.breakpoints.iter().all(|p| mine.contains(p))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.breakpoints.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({p})")?;
        }
        Ok(())
    }
}

/// Result of [`Tree::common_refinement`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refinement {
    pub first: Tree,
    pub second: Tree,
    /// Subtree hung on each leaf of the first input.
    pub first_grafts: Vec<Tree>,
    /// Subtree hung on each leaf of the second input.
    pub second_grafts: Vec<Tree>,
}

impl Tree {
    pub fn leaf() -> Tree {
        Tree::Leaf
    }

    pub fn caret(kind: CaretKind, left: Tree, right: Tree) -> Tree {
        Tree::Caret(kind, Box::new(left), Box::new(right))
    }

    pub fn x(left: Tree, right: Tree) -> Tree {
        Tree::caret(CaretKind::X, left, right)
    }

    pub fn y(left: Tree, right: Tree) -> Tree {
        Tree::caret(CaretKind::Y, left, right)
    }

    /// Right-leaning chain of `n` x-carets.
    pub fn spine(n: usize) -> Tree {
        (0..n).fold(Tree::Leaf, |acc, _| Tree::x(Tree::Leaf, acc))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    pub fn kind(&self) -> Option<CaretKind> {
        match self {
            Tree::Leaf => None,
            Tree::Caret(k, _, _) => Some(*k),
        }
    }

    pub fn children(&self) -> Option<(&Tree, &Tree)> {
        match self {
            Tree::Leaf => None,
            Tree::Caret(_, l, r) => Some((l, r)),
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Caret(_, l, r) => l.leaves() + r.leaves(),
        }
    }

    pub fn carets(&self) -> usize {
        self.leaves() - 1
    }

    pub fn count_kind(&self, kind: CaretKind) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Caret(k, l, r) => {
                usize::from(*k == kind) + l.count_kind(kind) + r.count_kind(kind)
            }
        }
    }

    /// Levels of the leaves, left to right, with the root at level 0.
    pub fn leaf_levels(&self) -> Vec<i64> {
        fn walk(t: &Tree, level: i64, out: &mut Vec<i64>) {
            match t {
                Tree::Leaf => out.push(level),
                Tree::Caret(k, l, r) => {
                    let (dl, dr) = k.child_offsets();
                    walk(l, level + dl, out);
                    walk(r, level + dr, out);
                }
            }
        }
        let mut out = Vec::with_capacity(self.leaves());
        walk(self, 0, &mut out);
        out
    }

    /// The subdivision of [0,1] encoded by the tree.
    ///
    /// A lone leaf has no intervals listed: its breakpoints are `[0, 1]` and
    /// its level list is empty.
    pub fn partition(&self) -> Result<Partition> {
        if self.is_leaf() {
            return Ok(Partition {
                breakpoints: vec![ZTau::ZERO, ZTau::ONE],
                levels: Vec::new(),
            });
        }
        let levels = self.leaf_levels();
        let mut breakpoints = Vec::with_capacity(levels.len() + 1);
        let mut p = ZTau::ZERO;
        breakpoints.push(p);
        for &l in &levels {
            p = p.checked_add(ZTau::tau_pow(l)?)?;
            breakpoints.push(p);
        }
        debug_assert_eq!(p, ZTau::ONE);
        Ok(Partition {
            breakpoints,
            levels,
        })
    }

    pub fn subtree(&self, path: &NodePath) -> Option<&Tree> {
        let mut t = self;
        for side in &path.0 {
            let (l, r) = t.children()?;
            t = match side {
                Side::L => l,
                Side::R => r,
            };
        }
        Some(t)
    }

    pub fn subtree_mut(&mut self, path: &NodePath) -> Option<&mut Tree> {
        let mut t = self;
        for side in &path.0 {
            t = match t {
                Tree::Leaf => return None,
                Tree::Caret(_, l, r) => match side {
                    Side::L => l.as_mut(),
                    Side::R => r.as_mut(),
                },
            };
        }
        Some(t)
    }

    /// Number of leaves strictly to the left of the node at `path`.
    pub fn leaf_offset(&self, path: &NodePath) -> Option<usize> {
        let mut t = self;
        let mut offset = 0;
        for side in &path.0 {
            let (l, r) = t.children()?;
            t = match side {
                Side::L => l,
                Side::R => {
                    offset += l.leaves();
                    r
                }
            };
        }
        Some(offset)
    }

    /// Replaces leaf `i` with `subtree`.
    pub fn attach(&mut self, i: usize, subtree: Tree) {
        fn go(t: &mut Tree, i: usize, sub: &mut Option<Tree>) -> usize {
            match t {
                Tree::Leaf => {
                    if i == 0 {
                        *t = sub.take().expect("attached once");
                    }
                    1
                }
                Tree::Caret(_, l, r) => {
                    let nl = go(l, i, sub);
                    if sub.is_none() || i < nl {
                        return nl;
                    }
                    nl + go(r, i - nl, sub)
                }
            }
        }
        let mut sub = Some(subtree);
        go(self, i, &mut sub);
        assert!(sub.is_none(), "leaf index {i} out of range");
    }

    /// Hangs `grafts[i]` on leaf `i` for every leaf.
    pub fn graft(&self, grafts: &[Tree]) -> Tree {
        fn go(t: &Tree, grafts: &mut std::slice::Iter<'_, Tree>) -> Tree {
            match t {
                Tree::Leaf => grafts.next().expect("one graft per leaf").clone(),
                Tree::Caret(k, l, r) => {
                    let l = go(l, grafts);
                    let r = go(r, grafts);
                    Tree::caret(*k, l, r)
                }
            }
        }
        assert_eq!(grafts.len(), self.leaves(), "one graft per leaf");
        go(self, &mut grafts.iter())
    }

    /// Applies the basic move at the root of `self`, if its pattern is present.
    pub(crate) fn basic_move_here(&mut self) -> bool {
        let t = std::mem::replace(self, Tree::Leaf);
        match t {
            Tree::Caret(CaretKind::X, a, r) if r.kind() == Some(CaretKind::X) => {
                let Tree::Caret(_, b, c) = *r else {
                    unreachable!()
                };
                *self = Tree::Caret(CaretKind::Y, Box::new(Tree::Caret(CaretKind::Y, a, b)), c);
                true
            }
            Tree::Caret(CaretKind::Y, l, c) if l.kind() == Some(CaretKind::Y) => {
                let Tree::Caret(_, a, b) = *l else {
                    unreachable!()
                };
                *self = Tree::Caret(CaretKind::X, a, Box::new(Tree::Caret(CaretKind::X, b, c)));
                true
            }
            other => {
                *self = other;
                false
            }
        }
    }

    pub(crate) fn can_basic_move_here(&self) -> bool {
        match self {
            Tree::Caret(CaretKind::X, _, r) => r.kind() == Some(CaretKind::X),
            Tree::Caret(CaretKind::Y, l, _) => l.kind() == Some(CaretKind::Y),
            Tree::Leaf => false,
        }
    }

    /// Exchanges `x(A, x(B, C))` and `y(y(A, B), C)` at `path`.
    pub fn apply_basic_move(&self, path: &NodePath) -> Result<Tree> {
        let mut out = self.clone();
        let node = out
            .subtree_mut(path)
            .ok_or_else(|| Error::InvalidPath(path.to_string()))?;
        if node.basic_move_here() {
            Ok(out)
        } else {
            Err(Error::InvalidMove(path.to_string()))
        }
    }

    /// Every path at which a basic move applies, in preorder.
    pub fn basic_move_paths(&self) -> Vec<NodePath> {
        fn go(t: &Tree, path: &mut Vec<Side>, out: &mut Vec<NodePath>) {
            if let Tree::Caret(_, l, r) = t {
                if t.can_basic_move_here() {
                    out.push(NodePath(path.clone()));
                }
                path.push(Side::L);
                go(l, path, out);
                path.pop();
                path.push(Side::R);
                go(r, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Flips the type of the root caret, adding at most one caret.
    ///
    /// Descends along short-edge children until a basic move is possible,
    /// adding a caret of the bottom caret's type when the chain ends at a
    /// leaf, then applies the basic moves back up.
    pub(crate) fn switch_root(&self) -> (Tree, Option<AddedCaret>) {
        match self {
            Tree::Leaf => panic!("switch_root on a leaf"),
            Tree::Caret(CaretKind::X, l, r) => {
                let (r, added) = match r.kind() {
                    None => (
                        Tree::x(Tree::Leaf, Tree::Leaf),
                        Some(AddedCaret {
                            leaf: 0,
                            kind: CaretKind::X,
                        }),
                    ),
                    Some(CaretKind::X) => ((**r).clone(), None),
                    Some(CaretKind::Y) => r.switch_root(),
                };
                let added = added.map(|a| AddedCaret {
                    leaf: a.leaf + l.leaves(),
                    ..a
                });
                let mut t = Tree::caret(CaretKind::X, (**l).clone(), r);
                let moved = t.basic_move_here();
                debug_assert!(moved);
                (t, added)
            }
            Tree::Caret(CaretKind::Y, l, r) => {
                let (l, added) = match l.kind() {
                    None => (
                        Tree::y(Tree::Leaf, Tree::Leaf),
                        Some(AddedCaret {
                            leaf: 0,
                            kind: CaretKind::Y,
                        }),
                    ),
                    Some(CaretKind::Y) => ((**l).clone(), None),
                    Some(CaretKind::X) => l.switch_root(),
                };
                let mut t = Tree::caret(CaretKind::Y, l, (**r).clone());
                let moved = t.basic_move_here();
                debug_assert!(moved);
                (t, added)
            }
        }
    }

    /// Switches the type of the caret at `path`, returning the new tree and
    /// the caret that had to be added (leaf index in the whole tree), if any.
    pub fn switch_caret_type(&self, path: &NodePath) -> Result<(Tree, Option<AddedCaret>)> {
        let sub = self
            .subtree(path)
            .filter(|t| !t.is_leaf())
            .ok_or_else(|| Error::InvalidPath(path.to_string()))?;
        let offset = self.leaf_offset(path).expect("path checked above");
        let (switched, added) = sub.switch_root();
        let mut out = self.clone();
        *out.subtree_mut(path).expect("path checked above") = switched;
        Ok((
            out,
            added.map(|a| AddedCaret {
                leaf: a.leaf + offset,
                ..a
            }),
        ))
    }

    /// Extends both trees by grafting subtrees on their leaves until the two
    /// subdivisions coincide.
    ///
    /// Where the trees disagree on a caret type, one of the two carets is
    /// switched; the switch that adds no caret is preferred, then the one
    /// that adds an x-caret, then switching the caret of the second tree.
    pub fn common_refinement(&self, other: &Tree) -> Refinement {
        let (first_grafts, second_grafts) = merge(self, other);
        Refinement {
            first: self.graft(&first_grafts),
            second: other.graft(&second_grafts),
            first_grafts,
            second_grafts,
        }
    }

    /// Applies `y(y(A,B),C) -> x(A,x(B,C))` innermost-first until no
    /// occurrence remains.
    pub fn canonical_x_form(&self) -> Tree {
        match self {
            Tree::Leaf => Tree::Leaf,
            Tree::Caret(k, l, r) => {
                let mut t = Tree::caret(*k, l.canonical_x_form(), r.canonical_x_form());
                if *k == CaretKind::Y {
                    t.basic_move_here();
                }
                t
            }
        }
    }

    /// The right spine carets, from the root down.
    pub fn right_spine_kinds(&self) -> Vec<CaretKind> {
        let mut out = Vec::new();
        let mut t = self;
        while let Tree::Caret(k, _, r) = t {
            out.push(*k);
            t = r;
        }
        out
    }

    pub(crate) fn parse_from(cur: &mut Cursor<'_>) -> std::result::Result<Tree, ParseError> {
        cur.skip_ws();
        match cur.peek() {
            Some('.') => {
                cur.bump();
                Ok(Tree::Leaf)
            }
            Some(c @ ('x' | 'y' | 'X' | 'Y')) => {
                cur.bump();
                let kind = if c.eq_ignore_ascii_case(&'x') {
                    CaretKind::X
                } else {
                    CaretKind::Y
                };
                cur.skip_ws();
                cur.expect('(')?;
                let l = Tree::parse_from(cur)?;
                cur.skip_ws();
                cur.expect(',')?;
                let r = Tree::parse_from(cur)?;
                cur.skip_ws();
                cur.expect(')')?;
                Ok(Tree::caret(kind, l, r))
            }
            _ => Err(cur.error("`.`, `x(` or `y(`")),
        }
    }
}

/// Grafts for the leaves of `t` and of `u` that make the two subdivisions equal.
fn merge(t: &Tree, u: &Tree) -> (Vec<Tree>, Vec<Tree>) {
    match (t, u) {
        (Tree::Leaf, _) => (vec![u.clone()], vec![Tree::Leaf; u.leaves()]),
        (_, Tree::Leaf) => (vec![Tree::Leaf; t.leaves()], vec![t.clone()]),
        (Tree::Caret(kt, tl, tr), Tree::Caret(ku, ul, ur)) if kt == ku => {
            let (mut gt, mut gu) = merge(tl, ul);
            let (gt2, gu2) = merge(tr, ur);
            gt.extend(gt2);
            gu.extend(gu2);
            (gt, gu)
        }
        _ => {
            let (t2, add_t) = t.switch_root();
            let (u2, add_u) = u.switch_root();
            let rank = |a: &Option<AddedCaret>| match a {
                None => 0,
                Some(AddedCaret {
                    kind: CaretKind::X, ..
                }) => 1,
                Some(_) => 2,
            };
            if rank(&add_t) < rank(&add_u) {
                let (gt, gu) = merge(&t2, u);
                (fold_added(gt, add_t), gu)
            } else {
                let (gt, gu) = merge(t, &u2);
                (gt, fold_added(gu, add_u))
            }
        }
    }
}

/// Turns grafts for a tree with one extra caret into grafts for the tree
/// without it.
fn fold_added(mut grafts: Vec<Tree>, added: Option<AddedCaret>) -> Vec<Tree> {
    if let Some(AddedCaret { leaf, kind }) = added {
        let right = grafts.remove(leaf + 1);
        let left = std::mem::replace(&mut grafts[leaf], Tree::Leaf);
        grafts[leaf] = Tree::caret(kind, left, right);
    }
    grafts
}

/// Prints the grammar `.` / `x(T,T)` / `y(T,T)`.
impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => f.write_str("."),
            Tree::Caret(k, l, r) => write!(f, "{}({l},{r})", k.letter()),
        }
    }
}

impl FromStr for Tree {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let t = Tree::parse_from(&mut cur)?;
        cur.expect_end()?;
        Ok(t)
    }
}

// Compact preorder codes: two bits per node (0 leaf, 1 x-caret, 2 y-caret).
// A tree with c carets uses 2(2c+1) bits, so up to 15 carets fit in a u64.

fn code_bits(carets: usize) -> u32 {
    2 * (2 * carets as u32 + 1)
}

/// Codes of every tree with exactly `n` carets.
pub fn enumerate_codes(n: usize) -> Vec<u64> {
    assert!(n <= 15, "codes only fit 15 carets");
    let mut by_size: Vec<Vec<u64>> = vec![vec![0]];
    for c in 1..=n {
        let mut v = Vec::new();
        for k in 0..c {
            let rb = code_bits(c - 1 - k);
            let lb = code_bits(k);
            for kind in [1u64, 2] {
                for &l in &by_size[k] {
                    for &r in &by_size[c - 1 - k] {
                        v.push((kind << (lb + rb)) | (l << rb) | r);
                    }
                }
            }
        }
        by_size.push(v);
    }
    by_size.swap_remove(n)
}

pub fn decode(code: u64, carets: usize) -> Tree {
    fn go(code: u64, shift: &mut u32) -> Tree {
        *shift -= 2;
        match (code >> *shift) & 3 {
            0 => Tree::Leaf,
            k => {
                let l = go(code, shift);
                let r = go(code, shift);
                let kind = if k == 1 { CaretKind::X } else { CaretKind::Y };
                Tree::caret(kind, l, r)
            }
        }
    }
    let mut shift = code_bits(carets);
    go(code, &mut shift)
}

pub fn encode(t: &Tree) -> u64 {
    fn go(t: &Tree, acc: u64) -> u64 {
        match t {
            Tree::Leaf => acc << 2,
            Tree::Caret(k, l, r) => {
                let tag = if *k == CaretKind::X { 1 } else { 2 };
                go(r, go(l, (acc << 2) | tag))
            }
        }
    }
    assert!(t.carets() <= 15, "codes only fit 15 carets");
    go(t, 0)
}

/// Outcome of the exhaustive basic-move connectivity check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub max_carets: usize,
    pub trees: usize,
    /// Subdivisions realised by at least two distinct trees.
    pub shared_partitions: usize,
    /// Subdivisions whose trees are not all joined by basic moves.
    pub disconnected: usize,
    /// Subdivisions whose trees reach more than one canonical x-form.
    pub non_confluent: usize,
}

/// For every caret count up to `max_carets`, groups all trees by subdivision
/// and runs a breadth-first search over basic moves inside each group.
pub fn check_basic_move_connectivity(max_carets: usize) -> ConnectivityReport {
    use rayon::prelude::*;

    let mut report = ConnectivityReport {
        max_carets,
        ..Default::default()
    };
    for n in 0..=max_carets {
        let codes = enumerate_codes(n);
        report.trees += codes.len();
        let mut groups: HashMap<Vec<i64>, Vec<u64>> = HashMap::new();
        for &c in &codes {
            groups
                .entry(decode(c, n).leaf_levels())
                .or_default()
                .push(c);
        }
        let groups: Vec<Vec<u64>> = groups.into_values().filter(|g| g.len() > 1).collect();
        report.shared_partitions += groups.len();
        let (disconnected, non_confluent) = groups
            .par_iter()
            .map(|g| {
                let members: HashSet<u64> = g.iter().copied().collect();
                let mut seen = HashSet::from([g[0]]);
                let mut queue = VecDeque::from([g[0]]);
                while let Some(c) = queue.pop_front() {
                    let t = decode(c, n);
                    for p in t.basic_move_paths() {
                        let next = encode(&t.apply_basic_move(&p).expect("valid path"));
                        if seen.insert(next) {
                            queue.push_back(next);
                        }
                    }
                }
                let connected = seen == members;
                let canon: HashSet<u64> = g
                    .iter()
                    .map(|&c| encode(&decode(c, n).canonical_x_form()))
                    .collect();
                (usize::from(!connected), usize::from(canon.len() > 1))
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        report.disconnected += disconnected;
        report.non_confluent += non_confluent;
    }
    report
}
