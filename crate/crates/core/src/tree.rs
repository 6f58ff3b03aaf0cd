//! The legally colored `d`-regular tree.
//!
//! Vertices are reduced color words: the base vertex `x₀` is the empty word
//! and the edge `{w, w·c}` carries color `c`. Appending the last letter again
//! steps back toward `x₀`, so the vertex set is the free product of `d`
//! copies of `Z/2` and left multiplication by a word is a color-preserving
//! automorphism.

use std::borrow::Borrow;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::{Color, MAX_DEGREE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("degree {0} out of supported range 2..={max}", max = MAX_DEGREE)]
    DegreeOutOfRange(u8),
    #[error("color {color} out of range 1..={degree}")]
    ColorOutOfRange { color: Color, degree: u8 },
    #[error("word not reduced at position {0}")]
    NotReduced(usize),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(VertexAddr, VertexAddr),
    #[error("end period must be a nonempty cyclically reduced word of length at least 2")]
    BadPeriod,
    #[error("this construction needs colors 1, 2 and 3 (degree {0} < 3)")]
    NeedsThreeColors(u8),
    #[error("cannot parse word '{0}'")]
    Parse(String),
}

/// A vertex, as the reduced color word of the geodesic from `x₀`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexAddr(Vec<Color>);

#[allow(clippy::len_without_is_empty)]
impl VertexAddr {
    pub fn root() -> Self {
        VertexAddr(Vec::new())
    }

    /// Checks reducedness and, if `degree` is given, the color range.
    pub fn new(word: Vec<Color>, degree: Option<u8>) -> Result<Self, TreeError> {
        check_reduced(&word, degree)?;
        Ok(VertexAddr(word))
    }

    /// Wraps a word assumed reduced.
    pub(crate) fn from_reduced(word: Vec<Color>) -> Self {
        debug_assert!(check_reduced(&word, None).is_ok(), "{word:?} not reduced");
        VertexAddr(word)
    }

    /// Reduces an arbitrary product of generators.
    pub fn reduce(letters: impl IntoIterator<Item = Color>) -> Self {
        let mut v = VertexAddr::root();
        for c in letters {
            v.push_reduce(c);
        }
        v
    }

    pub fn word(&self) -> &[Color] {
        &self.0
    }

    pub fn into_word(self) -> Vec<Color> {
        self.0
    }

    /// Distance from `x₀`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    /// Color of the edge toward `x₀`.
    pub fn last(&self) -> Option<Color> {
        self.0.last().copied()
    }

    pub fn parent(&self) -> Option<VertexAddr> {
        if self.0.is_empty() {
            None
        } else {
            Some(VertexAddr(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    /// Neighbor across the edge of color `c`.
    pub fn reduce_append(&self, c: Color) -> VertexAddr {
        let mut v = self.clone();
        v.push_reduce(c);
        v
    }

    pub(crate) fn push_reduce(&mut self, c: Color) {
        if self.0.last() == Some(&c) {
            self.0.pop();
        } else {
            self.0.push(c);
        }
    }

    /// Reduced product `self · other` in the free product.
    pub fn mul(&self, other: &VertexAddr) -> VertexAddr {
        let mut v = self.clone();
        for &c in &other.0 {
            v.push_reduce(c);
        }
        v
    }

    /// The inverse word; every letter is an involution.
    pub fn inverse(&self) -> VertexAddr {
        VertexAddr(self.0.iter().rev().copied().collect())
    }

    pub fn is_prefix_of(&self, other: &VertexAddr) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Prefixes `x₀, c₁, c₁c₂, …, self`.
    pub fn prefixes(&self) -> impl Iterator<Item = VertexAddr> + '_ {
        (0..=self.0.len()).map(move |k| VertexAddr(self.0[..k].to_vec()))
    }

    /// Vertex list of the geodesic from `self` to `other`, both included.
    pub fn geodesic_to(&self, other: &VertexAddr) -> Vec<VertexAddr> {
        let l = lcp(&self.0, &other.0);
        let mut path = Vec::with_capacity(self.len() + other.len() - 2 * l + 1);
        for k in (l..=self.0.len()).rev() {
            path.push(VertexAddr(self.0[..k].to_vec()));
        }
        for k in l + 1..=other.0.len() {
            path.push(VertexAddr(other.0[..k].to_vec()));
        }
        path
    }
}

impl Borrow<[Color]> for VertexAddr {
    fn borrow(&self) -> &[Color] {
        &self.0
    }
}

fn check_reduced(word: &[Color], degree: Option<u8>) -> Result<(), TreeError> {
    if let Some(d) = degree {
        if let Some(&c) = word.iter().find(|&&c| c == 0 || c > d) {
            return Err(TreeError::ColorOutOfRange { color: c, degree: d });
        }
    }
    if let Some(i) = word.windows(2).position(|w| w[0] == w[1]) {
        return Err(TreeError::NotReduced(i + 1));
    }
    Ok(())
}

fn lcp(a: &[Color], b: &[Color]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Formats a color word: digits when every color is below 10, otherwise
/// comma-separated; the empty word is `-`.
pub fn format_word(word: &[Color]) -> String {
    if word.is_empty() {
        "-".to_string()
    } else if word.iter().all(|&c| c < 10) {
        word.iter().map(|c| c.to_string()).collect()
    } else {
        let parts: Vec<String> = word.iter().map(|c| c.to_string()).collect();
        parts.join(",")
    }
}

/// Parses the word literal syntax (`1213`, `1,2,1,3`, `-`). No reducedness
/// check is made here.
pub fn parse_word(text: &str) -> Result<Vec<Color>, TreeError> {
    let t = text.trim();
    let bad = || TreeError::Parse(text.to_string());
    if t == "-" || t.is_empty() {
        return Ok(Vec::new());
    }
    if t.contains(',') {
        t.split(',')
            .map(|p| p.trim().parse::<Color>().map_err(|_| bad()))
            .collect()
    } else {
        t.chars()
            .map(|ch| ch.to_digit(10).map(|d| d as Color).ok_or_else(bad))
            .collect()
    }
}

impl fmt::Display for VertexAddr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(&self.0))
    }
}

impl fmt::Debug for VertexAddr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for VertexAddr {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        VertexAddr::new(parse_word(s)?, None)
    }
}

/// Tree distance: `|u| + |v| − 2·lcp(u, v)`.
pub fn dist(u: &VertexAddr, v: &VertexAddr) -> usize {
    u.len() + v.len() - 2 * lcp(&u.0, &v.0)
}

/// An unoriented edge `{inner, inner·color}`, normalised so that `inner` is
/// the endpoint nearer to `x₀`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeAddr {
    inner: VertexAddr,
    color: Color,
}

impl EdgeAddr {
    pub fn new(vertex: VertexAddr, color: Color) -> Self {
        if vertex.last() == Some(color) {
            let inner = vertex.parent().expect("nonempty word");
            EdgeAddr { inner, color }
        } else {
            EdgeAddr { inner: vertex, color }
        }
    }

    pub fn from_endpoints(u: &VertexAddr, v: &VertexAddr) -> Result<Self, TreeError> {
        if dist(u, v) != 1 {
            return Err(TreeError::NotAdjacent(u.clone(), v.clone()));
        }
        Ok(if u.len() < v.len() {
            EdgeAddr::new(u.clone(), v.last().expect("longer endpoint"))
        } else {
            EdgeAddr::new(v.clone(), u.last().expect("longer endpoint"))
        })
    }

    pub fn inner(&self) -> &VertexAddr {
        &self.inner
    }

    pub fn outer(&self) -> VertexAddr {
        self.inner.reduce_append(self.color)
    }

    pub fn color(&self) -> Color {
        self.color
    }

    pub fn endpoints(&self) -> (VertexAddr, VertexAddr) {
        (self.inner.clone(), self.outer())
    }

    pub fn has_endpoint(&self, v: &VertexAddr) -> bool {
        *v == self.inner || *v == self.outer()
    }

    /// Distance between the nearest endpoints of two edges.
    pub fn distance(&self, other: &EdgeAddr) -> usize {
        let (a, b) = self.endpoints();
        let (c, e) = other.endpoints();
        [dist(&a, &c), dist(&a, &e), dist(&b, &c), dist(&b, &e)]
            .into_iter()
            .min()
            .expect("four distances")
    }
}

impl fmt::Display for EdgeAddr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.inner, self.outer())
    }
}

impl fmt::Debug for EdgeAddr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Edge({self})")
    }
}

impl FromStr for EdgeAddr {
    type Err = TreeError;

    /// `u/v` with two adjacent vertex words.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once('/').ok_or_else(|| TreeError::Parse(s.to_string()))?;
        EdgeAddr::from_endpoints(&a.parse()?, &b.parse()?)
    }
}

/// Which endpoint's component a half-tree is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Inner,
    Outer,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Inner => Side::Outer,
            Side::Outer => Side::Inner,
        }
    }
}

/// One of the two components of `T` minus the open edge `edge`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfTree {
    pub edge: EdgeAddr,
    pub side: Side,
}

impl HalfTree {
    pub fn new(edge: EdgeAddr, side: Side) -> Self {
        HalfTree { edge, side }
    }

    /// The half-tree of `edge` that contains `endpoint`.
    pub fn containing(edge: EdgeAddr, endpoint: &VertexAddr) -> Result<Self, TreeError> {
        let side = if *endpoint == edge.inner {
            Side::Inner
        } else if *endpoint == edge.outer() {
            Side::Outer
        } else {
            return Err(TreeError::NotAdjacent(edge.inner.clone(), endpoint.clone()));
        };
        Ok(HalfTree { edge, side })
    }

    /// The endpoint of the edge lying in this half-tree.
    pub fn root(&self) -> VertexAddr {
        match self.side {
            Side::Inner => self.edge.inner.clone(),
            Side::Outer => self.edge.outer(),
        }
    }

    pub fn contains(&self, v: &VertexAddr) -> bool {
        let below_outer = self.edge.outer().is_prefix_of(v);
        match self.side {
            Side::Outer => below_outer,
            Side::Inner => !below_outer,
        }
    }

    pub fn complement(&self) -> HalfTree {
        HalfTree {
            edge: self.edge.clone(),
            side: self.side.opposite(),
        }
    }

    /// Whether the end lies in the boundary of this half-tree.
    pub fn contains_end(&self, end: &End) -> bool {
        let depth = self.edge.inner.len() + 1;
        self.contains(&end.ray_vertex(depth))
    }
}

/// An eventually periodic end `preperiod · period^∞`, kept canonical
/// (shortest preperiod, primitive period).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct End {
    preperiod: Vec<Color>,
    period: Vec<Color>,
}

impl End {
    pub fn new(preperiod: Vec<Color>, period: Vec<Color>) -> Result<Self, TreeError> {
        let p = period.len();
        if p < 2 || (0..p).any(|i| period[i] == period[(i + 1) % p]) {
            return Err(TreeError::BadPeriod);
        }
        check_reduced(&preperiod, None)?;
        if preperiod.last() == Some(&period[0]) {
            return Err(TreeError::NotReduced(preperiod.len()));
        }
        let mut end = End { preperiod, period };
        end.canonicalize();
        Ok(end)
    }

    fn canonicalize(&mut self) {
        let p = self.period.len();
        if let Some(q) = (1..=p).find(|q| p.is_multiple_of(*q) && (0..p).all(|i| self.period[i] == self.period[i % q]))
        {
            self.period.truncate(q);
        }
        while let Some(&c) = self.preperiod.last() {
            if c != *self.period.last().expect("nonempty period") {
                break;
            }
            self.preperiod.pop();
            self.period.rotate_right(1);
        }
    }

    /// Canonical end for an eventually periodic sequence, given a finite
    /// prefix `word` long enough to contain the preperiod (at most
    /// `preperiod_bound` letters) followed by two full periods of a period
    /// dividing `period_bound`.
    pub fn from_prefix(word: &[Color], preperiod_bound: usize, period_bound: usize) -> Result<Self, TreeError> {
        assert!(word.len() >= preperiod_bound + 2 * period_bound, "prefix too short");
        let p = (1..=period_bound)
            .filter(|q| period_bound.is_multiple_of(*q))
            .find(|&q| (preperiod_bound..preperiod_bound + period_bound).all(|i| word[i] == word[i + q]))
            .expect("period_bound is a period");
        let start = (0..=preperiod_bound)
            .find(|&k| (k..preperiod_bound + period_bound).all(|i| word[i] == word[i + p]))
            .expect("preperiod_bound is a preperiod");
        End::new(word[..start].to_vec(), word[start..start + p].to_vec())
    }

    pub fn preperiod(&self) -> &[Color] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Color] {
        &self.period
    }

    pub fn letter(&self, i: usize) -> Color {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    /// First `n` letters of the infinite word.
    pub fn prefix(&self, n: usize) -> Vec<Color> {
        (0..n).map(|i| self.letter(i)).collect()
    }

    /// The `n`-th vertex of the ray `[x₀, ξ)`.
    pub fn ray_vertex(&self, n: usize) -> VertexAddr {
        VertexAddr(self.prefix(n))
    }
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.preperiod.is_empty() {
            write!(f, "{}", format_word(&self.preperiod))?;
        }
        write!(f, "({})^inf", format_word(&self.period))
    }
}

impl fmt::Debug for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "End({self})")
    }
}

/// The colored tree of a fixed degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tree {
    degree: u8,
}

impl Tree {
    pub fn new(degree: u8) -> Result<Self, TreeError> {
        if !(2..=MAX_DEGREE).contains(&degree) {
            return Err(TreeError::DegreeOutOfRange(degree));
        }
        Ok(Tree { degree })
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn vertex(&self, word: Vec<Color>) -> Result<VertexAddr, TreeError> {
        VertexAddr::new(word, Some(self.degree))
    }

    pub fn parse_vertex(&self, text: &str) -> Result<VertexAddr, TreeError> {
        self.vertex(parse_word(text)?)
    }

    /// `|S(n)| = d(d−1)^{n−1}` for `n ≥ 1`.
    pub fn sphere_size(&self, n: usize) -> u128 {
        if n == 0 {
            1
        } else {
            self.degree as u128 * (self.degree as u128 - 1).pow(n as u32 - 1)
        }
    }

    /// Reduced words of length `n` in lexicographic order.
    pub fn sphere(&self, n: usize) -> Sphere {
        Sphere {
            degree: self.degree,
            current: None,
            n,
            done: false,
        }
    }

    /// All vertices of `B(x₀, r)`, by increasing radius.
    pub fn ball(&self, r: usize) -> Vec<VertexAddr> {
        (0..=r).flat_map(|n| self.sphere(n)).collect()
    }

    pub fn hyp_ends_ray(&self, n: usize) -> Result<Vec<Color>, TreeError> {
        if self.degree < 3 {
            return Err(TreeError::NeedsThreeColors(self.degree));
        }
        Ok(hyp_ends_pattern(1, 2, 3, n))
    }
}

/// First `n` letters of `(ab)(ac)(ab)²(ac)(ab)³(ac)…`.
pub fn hyp_ends_pattern(a: Color, b: Color, c: Color, n: usize) -> Vec<Color> {
    let mut out = Vec::with_capacity(n);
    let mut block = 1;
    'outer: loop {
        for _ in 0..block {
            for x in [a, b] {
                if out.len() == n {
                    break 'outer;
                }
                out.push(x);
            }
        }
        for x in [a, c] {
            if out.len() == n {
                break 'outer;
            }
            out.push(x);
        }
        block += 1;
    }
    out
}

/// Lexicographic iterator over the reduced words of a fixed length.
#[derive(Clone, Debug)]
pub struct Sphere {
    degree: u8,
    current: Option<Vec<Color>>,
    n: usize,
    done: bool,
}

impl Sphere {
    fn fill_min(word: &mut Vec<Color>, n: usize) {
        while word.len() < n {
            let next = if word.last() == Some(&1) { 2 } else { 1 };
            word.push(next);
        }
    }
}

impl Iterator for Sphere {
    type Item = VertexAddr;

    fn next(&mut self) -> Option<VertexAddr> {
        if self.done {
            return None;
        }
        match self.current.as_mut() {
            None => {
                let mut w = Vec::with_capacity(self.n);
                Sphere::fill_min(&mut w, self.n);
                self.current = Some(w);
            }
            Some(w) => {
                let mut advanced = false;
                while let Some(c) = w.pop() {
                    let prev = w.last().copied();
                    let next = (c + 1..=self.degree).find(|&x| Some(x) != prev);
                    if let Some(x) = next {
                        w.push(x);
                        Sphere::fill_min(w, self.n);
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    self.done = true;
                    return None;
                }
            }
        }
        Some(VertexAddr(self.current.clone().expect("set above")))
    }
}
