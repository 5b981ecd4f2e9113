//! Group elements as tree-pair diagrams.
//!
//! `(source, target)` sends the j-th interval of the source subdivision
//! affinely onto the j-th interval of the target subdivision. Products
//! compose left to right: `g.multiply(h)` applies `g` first, so a word
//! `w1 w2 ... wk` acts as `wk(...w2(w1(p)))`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::parse::Cursor;
use crate::tree::{CaretKind, Tree};
use crate::ztau::ZTau;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    source: Tree,
    target: Tree,
}

/// Canonical description of a PL map: the points where the slope changes,
/// their images, and the slope exponent on each maximal linear piece.
///
/// Two elements are the same map exactly when their `PlMap`s are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlMap {
    pub knots: Vec<(ZTau, ZTau)>,
    pub slopes: Vec<i64>,
}

impl Element {
    pub fn new(source: Tree, target: Tree) -> Result<Element> {
        let (ls, lt) = (source.leaves(), target.leaves());
        if ls != lt {
            return Err(Error::LeafMismatch {
                source_leaves: ls,
                target_leaves: lt,
            });
        }
        Ok(Element { source, target })
    }

    pub fn identity() -> Element {
        Element {
            source: Tree::Leaf,
            target: Tree::Leaf,
        }
    }

    pub fn source(&self) -> &Tree {
        &self.source
    }

    pub fn target(&self) -> &Tree {
        &self.target
    }

    pub fn into_trees(self) -> (Tree, Tree) {
        (self.source, self.target)
    }

    pub fn carets(&self) -> usize {
        self.source.carets()
    }

    /// Composite map: `self` first, then `other`. The diagram is not reduced.
    pub fn multiply(&self, other: &Element) -> Element {
        let r = self.target.common_refinement(&other.source);
        Element {
            source: self.source.graft(&r.first_grafts),
            target: other.target.graft(&r.second_grafts),
        }
    }

    pub fn invert(&self) -> Element {
        Element {
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }

    /// Hangs the same subtree on leaf `leaf` of both trees; the map is unchanged.
    pub fn attach_both(&mut self, leaf: usize, subtree: Tree) {
        self.source.attach(leaf, subtree.clone());
        self.target.attach(leaf, subtree);
    }

    /// Image of `p` under the PL map.
    pub fn eval(&self, p: ZTau) -> Result<ZTau> {
        if p.signum() == Ordering::Less || p > ZTau::ONE {
            return Err(Error::OutOfRange(p.to_string()));
        }
        let src = self.source.partition()?;
        let dst = self.target.partition()?;
        let j = interval_index(&src.breakpoints, p);
        let exp = self.slope_exponent(j);
        let offset = p.checked_sub(src.breakpoints[j])?;
        dst.breakpoints[j].checked_add(offset.checked_mul(ZTau::tau_pow(exp)?)?)
    }

    /// Slope on the j-th source interval is `tau^exponent`.
    fn slope_exponent(&self, j: usize) -> i64 {
        let ls = self.source.leaf_levels();
        let lt = self.target.leaf_levels();
        lt[j] - ls[j]
    }

    /// Decides whether the two diagrams define the same map.
    ///
    /// Both maps are affine between consecutive points of the union of their
    /// source breakpoints, so agreement of values at those points together
    /// with agreement of slopes on the pieces between them is exact equality.
    pub fn equals(&self, other: &Element) -> Result<bool> {
        let a = self.source.partition()?;
        let b = other.source.partition()?;
        let mut points: Vec<ZTau> = a
            .breakpoints
            .iter()
            .chain(b.breakpoints.iter())
            .copied()
            .collect();
        points.sort();
        points.dedup();
        for &p in &points {
            if self.eval(p)? != other.eval(p)? {
                return Ok(false);
            }
        }
        let (la, lb) = (self.slope_table(), other.slope_table());
        for &p in &points[..points.len() - 1] {
            let ea = la[interval_index(&a.breakpoints, p)];
            let eb = lb[interval_index(&b.breakpoints, p)];
            if ea != eb {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn slope_table(&self) -> Vec<i64> {
        let ls = self.source.leaf_levels();
        let lt = self.target.leaf_levels();
        ls.iter().zip(&lt).map(|(s, t)| t - s).collect()
    }

    /// Exponents `(s0, s1)` with slope `tau^s0` at 0 and `tau^s1` at 1.
    pub fn boundary_slopes(&self) -> (i64, i64) {
        let ls = self.source.leaf_levels();
        let lt = self.target.leaf_levels();
        (lt[0] - ls[0], lt[lt.len() - 1] - ls[ls.len() - 1])
    }

    pub fn pl_map(&self) -> Result<PlMap> {
        let src = self.source.partition()?;
        let dst = self.target.partition()?;
        let exps = self.slope_table();
        let mut knots = vec![(ZTau::ZERO, ZTau::ZERO)];
        let mut slopes = vec![exps[0]];
        for j in 1..exps.len() {
            if exps[j] != exps[j - 1] {
                knots.push((src.breakpoints[j], dst.breakpoints[j]));
                slopes.push(exps[j]);
            }
        }
        knots.push((ZTau::ONE, ZTau::ONE));
        Ok(PlMap { knots, slopes })
    }

    pub fn is_identity(&self) -> bool {
        self.slope_table().iter().all(|&e| e == 0)
    }

    /// Removes exposed caret pairs: a caret whose children are the leaves
    /// `j, j+1` in both trees, with the same type in both.
    pub fn reduce(&self) -> Element {
        let mut out = self.clone();
        loop {
            let a = exposed_carets(&out.source);
            let b = exposed_carets(&out.target);
            let Some(&(j, _)) = a.iter().find(|c| b.contains(c)) else {
                return out;
            };
            collapse(&mut out.source, j);
            collapse(&mut out.target, j);
        }
    }
}

/// Rightmost `j` with `breakpoints[j] <= p`, clamped to the last interval.
fn interval_index(breakpoints: &[ZTau], p: ZTau) -> usize {
    let n = breakpoints.len() - 1;
    let j = breakpoints.partition_point(|b| *b <= p);
    j.saturating_sub(1).min(n - 1)
}

/// `(leaf index of the left child, type)` of every caret with two leaf children.
fn exposed_carets(t: &Tree) -> Vec<(usize, CaretKind)> {
    fn go(t: &Tree, offset: usize, out: &mut Vec<(usize, CaretKind)>) -> usize {
        match t {
            Tree::Leaf => 1,
            Tree::Caret(k, l, r) => {
                if l.is_leaf() && r.is_leaf() {
                    out.push((offset, *k));
                    return 2;
                }
                let nl = go(l, offset, out);
                nl + go(r, offset + nl, out)
            }
        }
    }
    let mut out = Vec::new();
    go(t, 0, &mut out);
    out
}

fn collapse(t: &mut Tree, j: usize) {
    fn go(t: &mut Tree, j: usize, offset: usize) -> (usize, bool) {
        match t {
            Tree::Leaf => (1, false),
            Tree::Caret(_, l, r) => {
                if offset == j && l.is_leaf() && r.is_leaf() {
                    *t = Tree::Leaf;
                    return (2, true);
                }
                let (nl, done) = go(l, j, offset);
                if done {
                    return (nl, true);
                }
                let (nr, done) = go(r, j, offset + nl);
                (nl + nr, done)
            }
        }
    }
    let (_, done) = go(t, j, 0);
    debug_assert!(done);
}

/// Prints `(SOURCE | TARGET)`.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} | {})", self.source, self.target)
    }
}

impl FromStr for Element {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        cur.skip_ws();
        cur.expect('(')?;
        let source = Tree::parse_from(&mut cur)?;
        cur.skip_ws();
        cur.expect('|')?;
        let target = Tree::parse_from(&mut cur)?;
        cur.skip_ws();
        cur.expect(')')?;
        cur.expect_end()?;
        Element::new(source, target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> Element {
        s.parse().unwrap()
    }

    fn pow(k: i64) -> ZTau {
        ZTau::tau_pow(k).unwrap()
    }

    const X0: &str = "(x(x(.,.),.) | x(.,x(.,.)))";
    const Y0: &str = "(x(y(.,.),.) | x(.,x(.,.)))";
    const X1: &str = "(x(.,x(x(.,.),.)) | x(.,x(.,x(.,.))))";

    #[test]
    fn evaluation() {
        let x0 = el(X0);
        assert_eq!(x0.eval(pow(4)).unwrap(), pow(2));
        assert_eq!(x0.eval(pow(2)).unwrap(), pow(1));
        let y0 = el(Y0);
        assert_eq!(y0.eval(pow(1)).unwrap(), ZTau::new(2, -2));
        for g in [x0.clone(), y0, el(X1), Element::identity()] {
            assert_eq!(g.eval(ZTau::ZERO).unwrap(), ZTau::ZERO);
            assert_eq!(g.eval(ZTau::ONE).unwrap(), ZTau::ONE);
        }
        assert!(matches!(
            x0.eval(ZTau::new(2, 0)),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            x0.eval(ZTau::new(0, -1)),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn inverse_evaluation() {
        let inv = el(X0).invert();
        assert_eq!(inv.eval(pow(1)).unwrap(), pow(2));
        assert_eq!(inv.eval(pow(2)).unwrap(), pow(4));
        assert_eq!(Element::identity().invert(), Element::identity());
        assert_eq!(el(Y0).invert().invert(), el(Y0));
    }

    #[test]
    fn products() {
        let x0 = el(X0);
        let y0 = el(Y0);
        let id = Element::identity();
        assert!(id.multiply(&y0).equals(&y0).unwrap());
        assert!(y0.multiply(&id).equals(&y0).unwrap());
        assert!(x0.multiply(&x0.invert()).is_identity());
        let yy = y0.multiply(&y0);
        let x0x1 = x0.multiply(&el(X1));
        assert!(yy.equals(&x0x1).unwrap());
        assert!(!x0.equals(&y0).unwrap());
        assert!(x0.equals(&x0).unwrap());
    }

    #[test]
    fn boundary_slope_exponents() {
        assert_eq!(Element::identity().boundary_slopes(), (0, 0));
        assert_eq!(el(X0).boundary_slopes(), (-2, 1));
        assert_eq!(el(Y0).boundary_slopes(), (-1, 1));
    }

    #[test]
    fn reduced_diagrams_of_one_element() {
        // Two different reduced diagrams: a basic move on both trees of x0 y1.
        let y1 = el("(x(.,x(y(.,.),.)) | x(.,x(.,x(.,.))))");
        let g = el(X0).multiply(&y1).reduce();
        let mut moved = g.clone();
        let paths = g.source().basic_move_paths();
        if let Some(p) = paths.first() {
            moved =
                Element::new(g.source().apply_basic_move(p).unwrap(), g.target().clone()).unwrap();
        }
        assert!(moved.equals(&g).unwrap());
        // Extra matched caret on both trees.
        let mut grown = g.clone();
        grown.attach_both(1, Tree::y(Tree::Leaf, Tree::Leaf));
        assert!(grown.equals(&g).unwrap());
        assert_eq!(grown.reduce(), g);
    }

    #[test]
    fn text_forms() {
        assert_eq!(el(X0).to_string(), X0);
        assert!(matches!(
            "(x(.,.) | .)".parse::<Element>(),
            Err(Error::LeafMismatch { .. })
        ));
        assert!(matches!(
            "(x(.,.) . )".parse::<Element>(),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn pl_maps() {
        let m = el(X0).pl_map().unwrap();
        assert_eq!(m.slopes, vec![-2, 0, 1]);
        assert_eq!(
            m.knots,
            vec![
                (ZTau::ZERO, ZTau::ZERO),
                (pow(4), pow(2)),
                (pow(2), pow(1)),
                (ZTau::ONE, ZTau::ONE)
            ]
        );
        assert_eq!(
            Element::identity().pl_map().unwrap(),
            el("(y(.,.) | y(.,.))").pl_map().unwrap()
        );
    }
}
