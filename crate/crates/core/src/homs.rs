//! Abelianisation onto Z^2 + Z/2 and the caret census test for the
//! commutator subgroup.

use std::fmt;
use std::ops::Add;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::tree::{CaretKind, Tree};
use crate::word::Word;

/// Coordinates in the basis `x1, y0, z` where `z = x1 y1^-1` has order two.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct AbelianImage {
    pub c_x1: i64,
    pub c_y0: i64,
    pub c_z: u8,
}

impl AbelianImage {
    pub fn is_zero(&self) -> bool {
        *self == AbelianImage::default()
    }
}

impl Add for AbelianImage {
    type Output = AbelianImage;

    fn add(self, o: AbelianImage) -> AbelianImage {
        AbelianImage {
            c_x1: self.c_x1 + o.c_x1,
            c_y0: self.c_y0 + o.c_y0,
            c_z: (self.c_z + o.c_z) % 2,
        }
    }
}

impl fmt::Display for AbelianImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.c_x1, self.c_y0, self.c_z)
    }
}

/// Image of a word. In the abelianisation every `x_i` with `i >= 1` equals
/// `x1` and every `y_i` with `i >= 1` equals `y1`; then `x0 = 2 y0 - x1` and
/// `y1 = x1 - z`.
pub fn abelianise(w: &Word) -> AbelianImage {
    let (mut a0, mut a1, mut b0, mut b1) = (0i64, 0i64, 0i64, 0i64);
    for g in w.letters() {
        let e = g.exponent();
        match (g.family, g.index) {
            (CaretKind::X, 0) => a0 += e,
            (CaretKind::X, _) => a1 += e,
            (CaretKind::Y, 0) => b0 += e,
            (CaretKind::Y, _) => b1 += e,
        }
    }
    AbelianImage {
        c_x1: -a0 + a1 + b1,
        c_y0: 2 * a0 + b0,
        c_z: b1.rem_euclid(2) as u8,
    }
}

/// Caret counts of one tree, split by position and type.
///
/// Right carets form the chain of right children from the root, the root
/// included. Left carets hang from the root along left children; interior
/// carets are all others.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct TreeCensus {
    /// Interior x-carets.
    pub n: usize,
    /// Interior y-carets.
    pub m: usize,
    /// Left x-carets.
    pub r: usize,
    /// Left y-carets.
    pub s: usize,
    /// Right carets, all x.
    pub right: usize,
}

impl TreeCensus {
    fn of(t: &Tree, which: &'static str) -> Result<TreeCensus> {
        fn count(t: &Tree, left: bool, c: &mut TreeCensus) {
            if let Tree::Caret(k, l, r) = t {
                match (k, left) {
                    (CaretKind::X, true) => c.r += 1,
                    (CaretKind::Y, true) => c.s += 1,
                    (CaretKind::X, false) => c.n += 1,
                    (CaretKind::Y, false) => c.m += 1,
                }
                count(l, left, c);
                count(r, false, c);
            }
        }
        let mut c = TreeCensus::default();
        let mut node = t;
        let mut first = true;
        while let Tree::Caret(k, l, r) = node {
            if *k == CaretKind::Y {
                return Err(Error::SpineNotNormalized(which));
            }
            c.right += 1;
            count(l, first, &mut c);
            first = false;
            node = r;
        }
        Ok(c)
    }

    pub fn total(&self) -> usize {
        self.n + self.m + self.r + self.s + self.right
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct CaretCensus {
    pub source: TreeCensus,
    pub target: TreeCensus,
}

/// Census of both trees; their right spines must be all x-carets.
pub fn census(g: &Element) -> Result<CaretCensus> {
    Ok(CaretCensus {
        source: TreeCensus::of(g.source(), "source")?,
        target: TreeCensus::of(g.target(), "target")?,
    })
}

/// Commutator subgroup membership read from the census: equal leftmost and
/// rightmost leaf levels, and even totals for the `x1` and `y1` components.
pub fn in_commutator(g: &Element) -> Result<bool> {
    let CaretCensus {
        source: c1,
        target: c2,
    } = census(g)?;
    let left = 2 * c1.r + c1.s == 2 * c2.r + c2.s;
    let right = c1.right == c2.right;
    let x_even = (c1.n + c1.r + c2.n + c2.r) % 2 == 0;
    let y_even = (c1.m + c2.m) % 2 == 0;
    Ok(left && right && x_even && y_even)
}
