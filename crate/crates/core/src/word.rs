//! Words in the generators `x_n`, `y_n` and their tree-pair diagrams.

use std::fmt;
use std::str::FromStr;

use crate::element::Element;
use crate::error::ParseError;
use crate::parse::Cursor;
use crate::tree::{CaretKind, Tree};

/// A letter `x_n`, `y_n` or one of their inverses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub family: CaretKind,
    pub index: u32,
    pub inverse: bool,
}

impl Generator {
    pub const fn x(index: u32) -> Self {
        Generator {
            family: CaretKind::X,
            index,
            inverse: false,
        }
    }

    pub const fn y(index: u32) -> Self {
        Generator {
            family: CaretKind::Y,
            index,
            inverse: false,
        }
    }

    pub const fn inv(self) -> Self {
        Generator {
            inverse: !self.inverse,
            ..self
        }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// The diagram of the letter.
    ///
    /// `x_n` pairs a spine of `n+1` carets carrying an extra x-caret on leaf
    /// `n` with a spine of `n+2` carets; `y_n` uses a y-caret for the extra
    /// one. Inverses swap the trees.
    pub fn element(self) -> Element {
        let n = self.index as usize;
        let mut source = Tree::spine(n + 1);
        source.attach(n, Tree::caret(self.family, Tree::Leaf, Tree::Leaf));
        let g = Element::new(source, Tree::spine(n + 2)).expect("equal leaf counts");
        if self.inverse {
            g.invert()
        } else {
            g
        }
    }

    /// The four positive generators `x0, x1, y0, y1` and their inverses.
    pub fn finite_set() -> [Generator; 8] {
        let pos = [
            Generator::x(0),
            Generator::x(1),
            Generator::y(0),
            Generator::y(1),
        ];
        [
            pos[0],
            pos[0].inv(),
            pos[1],
            pos[1].inv(),
            pos[2],
            pos[2].inv(),
            pos[3],
            pos[3].inv(),
        ]
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            CaretKind::X => 'x',
            CaretKind::Y => 'y',
        };
        write!(f, "{c}{}", self.index)?;
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

/// A finite sequence of letters, not necessarily freely reduced.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|g| g.inv()).collect())
    }

    /// Product of the letter diagrams, left to right. Not reduced.
    pub fn to_element(&self) -> Element {
        self.0
            .iter()
            .fold(Element::identity(), |acc, g| acc.multiply(&g.element()))
    }
}

impl From<Vec<Generator>> for Word {
    fn from(v: Vec<Generator>) -> Self {
        Word(v)
    }
}

impl FromIterator<Generator> for Word {
    fn from_iter<I: IntoIterator<Item = Generator>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Letters separated by single spaces; the empty word prints as `e`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Whitespace-separated tokens `("x"|"y") INDEX ["^-1"]`. A blank string or a
/// lone `e` is the empty word.
impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        cur.skip_ws();
        if cur.peek() == Some('e') {
            cur.bump();
            cur.expect_end()?;
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        loop {
            cur.skip_ws();
            if cur.at_end() {
                break;
            }
            let family = match cur.peek() {
                Some('x') => CaretKind::X,
                Some('y') => CaretKind::Y,
                _ => return Err(cur.error("a generator `x<n>` or `y<n>`")),
            };
            cur.bump();
            let start = cur.pos();
            let index = cur
                .digits("a generator index")?
                .parse()
                .map_err(|_| ParseError::new(start, "an index below 2^32", None))?;
            let inverse = if cur.eat('^') {
                cur.expect('-')?;
                cur.expect('1')?;
                true
            } else {
                false
            };
            if !matches!(cur.peek(), None | Some(' ' | '\t' | '\n' | '\r')) {
                return Err(cur.error("whitespace, `^-1` or end of input"));
            }
            letters.push(Generator {
                family,
                index,
                inverse,
            });
        }
        Ok(Word(letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn generator_diagrams() {
        assert_eq!(
            Generator::x(0).element().to_string(),
            "(x(x(.,.),.) | x(.,x(.,.)))"
        );
        assert_eq!(
            Generator::y(0).element().to_string(),
            "(x(y(.,.),.) | x(.,x(.,.)))"
        );
        assert_eq!(
            Generator::x(1).element().to_string(),
            "(x(.,x(x(.,.),.)) | x(.,x(.,x(.,.))))"
        );
        assert_eq!(
            Generator::y(2).inv().element().to_string(),
            "(x(.,x(.,x(.,x(.,.)))) | x(.,x(.,x(y(.,.),.))))"
        );
    }

    #[test]
    fn parse_and_print() {
        let word = w("x0 y12^-1  x3");
        assert_eq!(
            word.0,
            vec![Generator::x(0), Generator::y(12).inv(), Generator::x(3)]
        );
        assert_eq!(word.to_string(), "x0 y12^-1 x3");
        assert_eq!(w(""), Word::empty());
        assert_eq!(w("e"), Word::empty());
        assert_eq!(Word::empty().to_string(), "e");
        assert_eq!("x0 z1".parse::<Word>().unwrap_err().position, 3);
        assert_eq!("x0^2".parse::<Word>().unwrap_err().position, 3);
        assert_eq!("x".parse::<Word>().unwrap_err().position, 1);
        assert!("x1y1".parse::<Word>().is_err());
    }

    #[test]
    fn words_to_elements() {
        assert_eq!(w("").to_element(), Element::identity());
        let fig = w("y0 x1 y1").to_element().reduce();
        assert_eq!(fig.source().to_string(), "x(y(.,x(y(.,.),.)),.)");
        assert_eq!(fig.target(), &Tree::spine(4));
        // A basic move on the target exposes a y-caret matching the one in
        // the source, so the element also has a three-caret diagram.
        let small: Element = "(x(y(.,x(.,.)),.) | x(.,y(.,x(.,.))))".parse().unwrap();
        assert!(small.equals(&fig).unwrap());
        assert!(w("y0 y0")
            .to_element()
            .equals(&w("x0 x1").to_element())
            .unwrap());
        assert!(w("x0 x0^-1").to_element().is_identity());
        assert!(w("x1 x0")
            .to_element()
            .equals(&w("x0 x2").to_element())
            .unwrap());
    }

    #[test]
    fn inverse_words() {
        let word = w("x0 y1 x2^-1");
        assert_eq!(word.inverse().to_string(), "x2 y1^-1 x0^-1");
        assert!(word.concat(&word.inverse()).to_element().is_identity());
    }
}
