//! Word-length estimates from the normal form, exact word lengths by
//! breadth-first search, and distortion tables for the copies of F.

use std::collections::HashMap;
use std::io;

use rayon::prelude::*;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::normal_form::{to_seminormal, NormalFormWord};
use crate::word::{Generator, Word};

/// Largest radius accepted by [`bfs_ball`] unless a caller raises it.
pub const DEFAULT_CAP: u32 = 7;

/// `D(g)`: letters of the normal form plus the highest positive and negative
/// indices, an empty part contributing 0.
pub fn metric_d(nf: &NormalFormWord) -> u64 {
    let n = nf.n().unwrap_or(0) as u64;
    let m = nf.m().unwrap_or(0) as u64;
    nf.sum_a() + nf.sum_eps() + nf.sum_b() + n + m
}

/// The diagram read from a normal form, with exposed carets removed.
pub fn nf_element(nf: &NormalFormWord) -> Element {
    nf.to_word().to_element().reduce()
}

/// `N(g)`: carets in either tree of the normal-form diagram.
pub fn metric_n(g: &Element) -> usize {
    nf_element(&NormalFormWord::of_element(g)).source().carets()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricReport {
    pub d: u64,
    pub n: u64,
    pub exact_length: Option<u64>,
}

impl MetricReport {
    pub fn of(nf: &NormalFormWord, exact_length: Option<u64>) -> MetricReport {
        MetricReport {
            d: metric_d(nf),
            n: nf_element(nf).source().carets() as u64,
            exact_length,
        }
    }

    /// `D/48 <= N/12 <= |g| <= 2D <= 8N` and `D <= 4N`, in integers. Without an
    /// exact length only the length-free inequalities are checked.
    pub fn chain_holds(&self) -> bool {
        let (d, n) = (self.d, self.n);
        let free = d <= 4 * n;
        match self.exact_length {
            Some(l) => free && n <= 12 * l && l <= 2 * d,
            None => free,
        }
    }
}

/// One element of a ball: its normal form and a shortest word for it.
#[derive(Debug, Clone)]
pub struct BallEntry {
    pub nf: NormalFormWord,
    pub word: Word,
    pub length: u32,
}

/// All elements within a given distance of the identity.
#[derive(Debug, Clone)]
pub struct BfsBall {
    pub radius: u32,
    /// Entries in order of discovery.
    pub entries: Vec<BallEntry>,
    index: HashMap<String, usize>,
}

impl BfsBall {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, nf: &NormalFormWord) -> Option<&BallEntry> {
        self.index.get(&nf.to_string()).map(|&i| &self.entries[i])
    }

    pub fn length(&self, nf: &NormalFormWord) -> Option<u32> {
        self.get(nf).map(|e| e.length)
    }

    /// Number of entries at each distance.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.radius as usize + 1];
        for e in &self.entries {
            out[e.length as usize] += 1;
        }
        out
    }

    pub fn report(&self, e: &BallEntry) -> MetricReport {
        MetricReport::of(&e.nf, Some(u64::from(e.length)))
    }

    /// CSV with columns `word,nf,length,D,N,D_ratio,N_ratio`.
    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["word", "nf", "length", "D", "N", "D_ratio", "N_ratio"])
            .map_err(csv_err)?;
        for e in &self.entries {
            let r = self.report(e);
            w.write_record([
                e.word.to_string(),
                e.nf.to_string(),
                e.length.to_string(),
                r.d.to_string(),
                r.n.to_string(),
                ratio(r.d, u64::from(e.length)),
                ratio(r.n, u64::from(e.length)),
            ])
            .map_err(csv_err)?;
        }
        w.flush().map_err(|e| Error::Io(e.to_string()))
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn ratio(a: u64, b: u64) -> String {
    if b == 0 {
        String::new()
    } else {
        format!("{:.4}", a as f64 / b as f64)
    }
}

/// Breadth-first search from the identity over `alphabet`, keyed by normal
/// form. Each layer is expanded in parallel and merged in a fixed order, so
/// the result does not depend on scheduling.
pub fn bfs(alphabet: &[Word], radius: u32) -> BfsBall {
    let letters: Vec<Element> = alphabet.iter().map(Word::to_element).collect();
    let identity = NormalFormWord::identity();
    let mut index = HashMap::new();
    index.insert(identity.to_string(), 0);
    let mut entries = vec![BallEntry {
        nf: identity,
        word: Word::empty(),
        length: 0,
    }];
    let mut frontier: Vec<(usize, Element)> = vec![(0, Element::identity())];
    for length in 1..=radius {
        let found: Vec<Vec<(String, NormalFormWord, Element)>> = frontier
            .par_iter()
            .map(|(_, g)| {
                letters
                    .iter()
                    .map(|s| {
                        let h = g.multiply(s).reduce();
                        let nf = NormalFormWord::of_element(&h);
                        (nf.to_string(), nf, h)
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for ((parent, _), row) in frontier.iter().zip(found) {
            for ((key, nf, h), s) in row.into_iter().zip(alphabet) {
                if index.contains_key(&key) {
                    continue;
                }
                let i = entries.len();
                index.insert(key, i);
                entries.push(BallEntry {
                    nf,
                    word: entries[*parent].word.concat(s),
                    length,
                });
                next.push((i, h));
            }
        }
        frontier = next;
    }
    BfsBall {
        radius,
        entries,
        index,
    }
}

/// Ball over `x0, x1, y0, y1` and their inverses, refusing radii above `cap`.
pub fn bfs_ball(radius: u32, cap: u32) -> Result<BfsBall> {
    if radius > cap {
        return Err(Error::CapExceeded { radius, cap });
    }
    let alphabet: Vec<Word> = Generator::finite_set()
        .into_iter()
        .map(|g| Word(vec![g]))
        .collect();
    Ok(bfs(&alphabet, radius))
}

/// The three copies of F studied for distortion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subgroup {
    Fx,
    Fy,
    Fz,
}

impl Subgroup {
    /// The two standard generators as ambient words.
    pub fn generators(self) -> [Word; 2] {
        use Generator as G;
        match self {
            Subgroup::Fx => [Word(vec![G::x(0)]), Word(vec![G::x(1)])],
            Subgroup::Fy => [Word(vec![G::y(0)]), Word(vec![G::y(1)])],
            Subgroup::Fz => [Word(vec![G::y(0), G::y(2)]), Word(vec![G::y(2), G::y(4)])],
        }
    }

    /// Generators followed by their inverses, interleaved.
    pub fn alphabet(self) -> Vec<Word> {
        self.generators()
            .into_iter()
            .flat_map(|g| {
                let inv = g.inverse();
                [g, inv]
            })
            .collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            Subgroup::Fx => "fx",
            Subgroup::Fy => "fy",
            Subgroup::Fz => "fz",
        }
    }
}

impl std::str::FromStr for Subgroup {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "fx" => Ok(Subgroup::Fx),
            "fy" => Ok(Subgroup::Fy),
            "fz" => Ok(Subgroup::Fz),
            _ => Err(format!("unknown subgroup `{s}`, expected fx, fy or fz")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DistortionRow {
    /// A shortest subgroup word, spelled in the ambient generators.
    pub word: Word,
    pub nf: NormalFormWord,
    pub sub_length: u32,
    pub metrics: MetricReport,
    /// Carets of the reduced diagram built from `word`.
    pub diagram_carets: usize,
    /// Carets after bringing that diagram to seminormal shape.
    pub seminormal_carets: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioRange {
    pub min: f64,
    pub max: f64,
}

impl RatioRange {
    fn of(values: impl Iterator<Item = f64>) -> Option<RatioRange> {
        values.fold(None, |acc, v| {
            Some(match acc {
                None => RatioRange { min: v, max: v },
                Some(r) => RatioRange {
                    min: r.min.min(v),
                    max: r.max.max(v),
                },
            })
        })
    }
}

#[derive(Debug, Clone)]
pub struct DistortionReport {
    pub subgroup: Subgroup,
    pub radius: u32,
    pub rows: Vec<DistortionRow>,
}

impl DistortionReport {
    fn nontrivial(&self) -> impl Iterator<Item = &DistortionRow> {
        self.rows.iter().filter(|r| r.sub_length > 0)
    }

    /// Range of `D / subgroup length` over nontrivial rows.
    pub fn d_ratio(&self) -> Option<RatioRange> {
        RatioRange::of(
            self.nontrivial()
                .map(|r| r.metrics.d as f64 / f64::from(r.sub_length)),
        )
    }

    /// Range of `N / subgroup length` over nontrivial rows.
    pub fn n_ratio(&self) -> Option<RatioRange> {
        RatioRange::of(
            self.nontrivial()
                .map(|r| r.metrics.n as f64 / f64::from(r.sub_length)),
        )
    }

    /// Range of `ambient length / subgroup length` where the ambient length is known.
    pub fn exact_ratio(&self) -> Option<RatioRange> {
        RatioRange::of(self.nontrivial().filter_map(|r| {
            r.metrics
                .exact_length
                .map(|l| l as f64 / f64::from(r.sub_length))
        }))
    }

    pub fn summary(&self) -> String {
        let fmt = |r: Option<RatioRange>| match r {
            Some(r) => format!("{:.4}..{:.4}", r.min, r.max),
            None => "n/a".to_string(),
        };
        format!(
            "subgroup={} radius={} elements={} D/len={} N/len={} exact/len={}",
            self.subgroup.name(),
            self.radius,
            self.rows.len(),
            fmt(self.d_ratio()),
            fmt(self.n_ratio()),
            fmt(self.exact_ratio()),
        )
    }

    /// CSV with columns `word,nf,sub_length,D,N,ambient_length,D_ratio,N_ratio,diagram_carets,seminormal_carets`.
    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "word",
            "nf",
            "sub_length",
            "D",
            "N",
            "ambient_length",
            "D_ratio",
            "N_ratio",
            "diagram_carets",
            "seminormal_carets",
        ])
        .map_err(csv_err)?;
        for r in &self.rows {
            let len = u64::from(r.sub_length);
            w.write_record([
                r.word.to_string(),
                r.nf.to_string(),
                r.sub_length.to_string(),
                r.metrics.d.to_string(),
                r.metrics.n.to_string(),
                r.metrics
                    .exact_length
                    .map(|l| l.to_string())
                    .unwrap_or_default(),
                ratio(r.metrics.d, len),
                ratio(r.metrics.n, len),
                r.diagram_carets.to_string(),
                r.seminormal_carets.to_string(),
            ])
            .map_err(csv_err)?;
        }
        w.flush().map_err(|e| Error::Io(e.to_string()))
    }
}

/// Enumerates the subgroup ball of `radius` in its own generators and
/// compares with the ambient estimates and, when given, the ambient ball.
pub fn distortion_report(
    subgroup: Subgroup,
    radius: u32,
    cap: u32,
    ambient: Option<&BfsBall>,
) -> Result<DistortionReport> {
    // Subgroup words are longer than ambient ones by at most a factor two.
    if radius > 2 * cap + 2 {
        return Err(Error::CapExceeded { radius, cap });
    }
    let ball = bfs(&subgroup.alphabet(), radius);
    let rows = ball
        .entries
        .par_iter()
        .map(|e| {
            let g = e.word.to_element().reduce();
            let exact = ambient.and_then(|a| a.length(&e.nf)).map(u64::from);
            DistortionRow {
                word: e.word.clone(),
                nf: e.nf.clone(),
                sub_length: e.length,
                metrics: MetricReport::of(&e.nf, exact),
                diagram_carets: g.source().carets(),
                seminormal_carets: to_seminormal(&g).source().carets(),
            }
        })
        .collect();
    Ok(DistortionReport {
        subgroup,
        radius,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_form::normalize;

    fn nf(s: &str) -> NormalFormWord {
        normalize(&s.parse().unwrap())
    }

    #[test]
    fn estimates() {
        assert_eq!(metric_d(&nf("")), 0);
        assert_eq!(metric_d(&nf("y0 x1 y1")), 4);
        assert_eq!(metric_d(&nf("x0 x1")), 3);
        assert_eq!(metric_n(&Element::identity()), 0);
        assert_eq!(metric_n(&Generator::x(0).element()), 2);
        // The normal-form diagram has a spine target; a smaller diagram with
        // a y-caret in the target exists but is not the one read from the word.
        assert_eq!(
            metric_n(&"y0 x1 y1".parse::<Word>().unwrap().to_element()),
            4
        );
    }

    #[test]
    fn small_balls() {
        let b = bfs_ball(1, DEFAULT_CAP).unwrap();
        assert_eq!(b.len(), 9);
        let b = bfs_ball(2, DEFAULT_CAP).unwrap();
        assert_eq!(b.length(&nf("y0 y0")), Some(2));
        assert_eq!(b.length(&nf("x0 x1")), Some(2));
        assert!(b.entries.iter().all(|e| b.report(e).chain_holds()));
        assert!(matches!(
            bfs_ball(8, DEFAULT_CAP),
            Err(Error::CapExceeded { radius: 8, cap: 7 })
        ));
    }

    #[test]
    fn ball_csv() {
        let b = bfs_ball(1, DEFAULT_CAP).unwrap();
        let mut out = Vec::new();
        b.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 10);
        assert!(text.starts_with("word,nf,length,D,N,D_ratio,N_ratio\ne,e,0,0,0,,\n"));
    }

    #[test]
    fn subgroup_tables() {
        let r = distortion_report(Subgroup::Fx, 2, DEFAULT_CAP, None).unwrap();
        assert_eq!(r.rows.len(), 17);
        assert!(r.d_ratio().is_some());
        assert!(r.summary().starts_with("subgroup=fx radius=2 elements=17"));
    }
}
