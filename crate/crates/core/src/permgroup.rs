//! Finite permutation groups on the color set `{1..d}`.
//!
//! Groups are stored by their full element list, sorted lexicographically on
//! image sequences. Every "first witness" query scans that list, so answers
//! are deterministic.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::{Color, MAX_DEGREE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree {0} out of supported range 2..={max}", max = MAX_DEGREE)]
    DegreeOutOfRange(usize),
    #[error("generator of degree {found} given for a group of degree {expected}")]
    DegreeMismatch { expected: u8, found: u8 },
    #[error("image list {0:?} is not a bijection of 1..=d")]
    NotBijective(Vec<Color>),
    #[error("color {color} out of range 1..={degree}")]
    ColorOutOfRange { color: Color, degree: u8 },
    #[error("column {column}: {message}")]
    Parse { column: usize, message: String },
}

/// A permutation of `{1..d}`; `images[i - 1] = π(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<Color>,
}

impl Perm {
    pub fn identity(degree: u8) -> Self {
        Perm {
            images: (1..=degree).collect(),
        }
    }

    pub fn from_images(images: Vec<Color>) -> Result<Self, PermError> {
        let d = images.len();
        if !(2..=MAX_DEGREE as usize).contains(&d) {
            return Err(PermError::DegreeOutOfRange(d));
        }
        let mut seen = vec![false; d];
        for &c in &images {
            if c == 0 || c as usize > d || seen[c as usize - 1] {
                return Err(PermError::NotBijective(images));
            }
            seen[c as usize - 1] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation from disjoint cycles. Points may not repeat.
    pub fn from_cycles(degree: u8, cycles: &[Vec<Color>]) -> Result<Self, PermError> {
        if !(2..=MAX_DEGREE).contains(&degree) {
            return Err(PermError::DegreeOutOfRange(degree as usize));
        }
        let mut images: Vec<Color> = (1..=degree).collect();
        let mut used = vec![false; degree as usize];
        for cycle in cycles {
            for (i, &c) in cycle.iter().enumerate() {
                if c == 0 || c > degree {
                    return Err(PermError::ColorOutOfRange { color: c, degree });
                }
                if used[c as usize - 1] {
                    return Err(PermError::Parse {
                        column: 0,
                        message: format!("point {c} appears twice"),
                    });
                }
                used[c as usize - 1] = true;
                images[c as usize - 1] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    /// Parses cycle notation such as `(2 5)(3 4)`; `()` or an empty string is
    /// the identity. Columns in errors are 1-based.
    pub fn parse_cycles(degree: u8, text: &str) -> Result<Self, PermError> {
        let err = |column: usize, message: &str| PermError::Parse {
            column,
            message: message.to_string(),
        };
        let mut cycles: Vec<Vec<Color>> = Vec::new();
        let mut current: Option<Vec<Color>> = None;
        let mut seen = vec![false; degree as usize + 1];
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            let col = i + 1;
            match ch {
                '(' => {
                    if current.is_some() {
                        return Err(err(col, "nested '('"));
                    }
                    current = Some(Vec::new());
                    i += 1;
                }
                ')' => {
                    let cycle = current.take().ok_or_else(|| err(col, "unmatched ')'"))?;
                    if !cycle.is_empty() {
                        cycles.push(cycle);
                    }
                    i += 1;
                }
                c if c.is_whitespace() || c == ',' => i += 1,
                c if c.is_ascii_digit() => {
                    let cycle = current.as_mut().ok_or_else(|| err(col, "point outside of a cycle"))?;
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let digits: String = chars[start..i].iter().collect();
                    let point: usize = digits.parse().map_err(|_| err(col, "bad number"))?;
                    if point == 0 || point > degree as usize {
                        return Err(err(col, &format!("point {point} out of range 1..={degree}")));
                    }
                    if seen[point] {
                        return Err(err(col, &format!("point {point} appears twice")));
                    }
                    seen[point] = true;
                    cycle.push(point as Color);
                }
                other => return Err(err(col, &format!("unexpected character '{other}'"))),
            }
        }
        if current.is_some() {
            return Err(err(chars.len() + 1, "unterminated cycle"));
        }
        Perm::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> u8 {
        self.images.len() as u8
    }

    pub fn images(&self) -> &[Color] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, c: Color) -> Color {
        self.images[c as usize - 1]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&c| self.apply(c)).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &c) in self.images.iter().enumerate() {
            images[c as usize - 1] = i as Color + 1;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &c)| c as usize == i + 1)
    }

    pub fn fixes(&self, c: Color) -> bool {
        self.apply(c) == c
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut n = 1;
        while !p.is_identity() {
            p = p.compose(self);
            n += 1;
        }
        n
    }

    /// Disjoint cycles of length ≥ 2, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<Color>> {
        let d = self.degree();
        let mut seen = vec![false; d as usize + 1];
        let mut out = Vec::new();
        for start in 1..=d {
            if seen[start as usize] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize] = true;
            let mut c = self.apply(start);
            while c != start {
                seen[c as usize] = true;
                cycle.push(c);
                c = self.apply(c);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            let body: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}

/// A finite permutation group, stored with its full sorted element list.
#[derive(Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: u8,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {}, gens {})",
            self.degree,
            self.order(),
            self.generators_text()
        )
    }
}

/// Closure of `gens` under composition, returned sorted.
fn closure(degree: u8, gens: &[Perm]) -> Vec<Perm> {
    let id = Perm::identity(degree);
    let mut seen: BTreeSet<Perm> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.compose(&p);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.into_iter().collect()
}

impl PermGroup {
    pub fn from_generators(degree: u8, gens: Vec<Perm>) -> Result<Self, PermError> {
        if !(2..=MAX_DEGREE).contains(&degree) {
            return Err(PermError::DegreeOutOfRange(degree as usize));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let elements = closure(degree, &gens);
        Ok(PermGroup {
            degree,
            generators: gens,
            elements,
        })
    }

    /// Generators given as raw image lists (1-based).
    pub fn from_image_lists(degree: u8, gens: &[Vec<Color>]) -> Result<Self, PermError> {
        let perms = gens
            .iter()
            .map(|imgs| Perm::from_images(imgs.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_generators(degree, perms)
    }

    /// Parses `;`-separated generators in cycle notation, e.g. `(1 2);(1 2 3)`.
    pub fn parse(degree: u8, text: &str) -> Result<Self, PermError> {
        let mut gens = Vec::new();
        let mut offset = 0;
        for part in text.split(';') {
            if !part.trim().is_empty() {
                let p = Perm::parse_cycles(degree, part).map_err(|e| match e {
                    PermError::Parse { column, message } => PermError::Parse {
                        column: column + offset,
                        message,
                    },
                    other => other,
                })?;
                gens.push(p);
            }
            offset += part.chars().count() + 1;
        }
        Self::from_generators(degree, gens)
    }

    /// `Sym(d)` generated by a transposition and a `d`-cycle.
    pub fn symmetric(degree: u8) -> Self {
        let cycle: Vec<Color> = (1..=degree).collect();
        Self::from_generators(
            degree,
            vec![
                Perm::from_cycles(degree, &[vec![1, 2]]).expect("valid transposition"),
                Perm::from_cycles(degree, &[cycle]).expect("valid cycle"),
            ],
        )
        .expect("symmetric group")
    }

    /// Cyclic group generated by the `d`-cycle `(1 2 … d)`.
    pub fn cyclic(degree: u8) -> Self {
        let cycle: Vec<Color> = (1..=degree).collect();
        Self::from_generators(degree, vec![Perm::from_cycles(degree, &[cycle]).expect("valid cycle")])
            .expect("cyclic group")
    }

    /// Dihedral group of the `d`-gon on `{1..d}`.
    pub fn dihedral(degree: u8) -> Self {
        let cycle: Vec<Color> = (1..=degree).collect();
        let mut reflection = Vec::new();
        for i in 2..=degree {
            let j = degree + 2 - i;
            if i < j {
                reflection.push(vec![i, j]);
            }
        }
        Self::from_generators(
            degree,
            vec![
                Perm::from_cycles(degree, &reflection).expect("valid reflection"),
                Perm::from_cycles(degree, &[cycle]).expect("valid cycle"),
            ],
        )
        .expect("dihedral group")
    }

    /// Alternating group, generated by 3-cycles `(1 2 k)`.
    pub fn alternating(degree: u8) -> Self {
        let gens = (3..=degree)
            .map(|k| Perm::from_cycles(degree, &[vec![1, 2, k]]).expect("valid 3-cycle"))
            .collect();
        Self::from_generators(degree, gens).expect("alternating group")
    }

    pub fn trivial(degree: u8) -> Self {
        Self::from_generators(degree, Vec::new()).expect("trivial group")
    }

    fn from_sorted_elements(degree: u8, elements: Vec<Perm>) -> Self {
        let generators = elements.iter().filter(|p| !p.is_identity()).cloned().collect();
        PermGroup {
            degree,
            generators,
            elements,
        }
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Generators in the `;`-separated cycle form accepted by [`PermGroup::parse`].
    pub fn generators_text(&self) -> String {
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        parts.join(";")
    }

    fn check_color(&self, c: Color) -> Result<(), PermError> {
        if c == 0 || c > self.degree {
            Err(PermError::ColorOutOfRange {
                color: c,
                degree: self.degree,
            })
        } else {
            Ok(())
        }
    }

    pub fn orbit(&self, c: Color) -> BTreeSet<Color> {
        self.elements.iter().map(|p| p.apply(c)).collect()
    }

    /// Partition of `domain` into its intersections with `G`-orbits, sorted.
    pub fn orbits(&self, domain: &[Color]) -> Vec<Vec<Color>> {
        let domain: BTreeSet<Color> = domain.iter().copied().collect();
        let mut remaining = domain.clone();
        let mut out = Vec::new();
        while let Some(&c) = remaining.iter().next() {
            let part: Vec<Color> = self.orbit(c).intersection(&domain).copied().collect();
            for x in &part {
                remaining.remove(x);
            }
            out.push(part);
        }
        out
    }

    pub fn point_stabilizer(&self, c: Color) -> Result<PermGroup, PermError> {
        self.check_color(c)?;
        let elements = self.elements.iter().filter(|p| p.fixes(c)).cloned().collect();
        Ok(Self::from_sorted_elements(self.degree, elements))
    }

    fn all_colors(&self) -> Vec<Color> {
        (1..=self.degree).collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(1).len() == self.degree as usize
    }

    pub fn is_2transitive(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        let stab = self.point_stabilizer(1).expect("1 is a color");
        let rest: Vec<Color> = (2..=self.degree).collect();
        stab.orbits(&rest).len() <= 1
    }

    /// Finest `G`-invariant partition in which `a` and `b` share a block.
    pub fn minimal_block_system(&self, a: Color, b: Color) -> Vec<Vec<Color>> {
        let d = self.degree as usize;
        let mut parent: Vec<usize> = (0..=d).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        let mut queue = VecDeque::new();
        let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
        if ra != rb {
            parent[rb] = ra;
            queue.push_back((a, b));
        }
        while let Some((x, y)) = queue.pop_front() {
            for g in &self.generators {
                let (gx, gy) = (g.apply(x), g.apply(y));
                let (rx, ry) = (find(&mut parent, gx as usize), find(&mut parent, gy as usize));
                if rx != ry {
                    parent[ry] = rx;
                    queue.push_back((gx, gy));
                }
            }
        }
        let mut blocks: std::collections::BTreeMap<usize, Vec<Color>> = Default::default();
        for c in 1..=d {
            let r = find(&mut parent, c);
            blocks.entry(r).or_default().push(c as Color);
        }
        let mut out: Vec<Vec<Color>> = blocks.into_values().collect();
        out.sort();
        out
    }

    pub fn is_primitive(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        (2..=self.degree).all(|x| self.minimal_block_system(1, x).len() == 1)
    }

    pub fn is_generated_by_point_stabilizers(&self) -> bool {
        let mut gens: BTreeSet<Perm> = BTreeSet::new();
        for c in self.all_colors() {
            for p in &self.elements {
                if p.fixes(c) && !p.is_identity() {
                    gens.insert(p.clone());
                }
            }
        }
        let gens: Vec<Perm> = gens.into_iter().collect();
        closure(self.degree, &gens).len() == self.order()
    }

    pub fn is_cyclic_of_prime_order(&self) -> bool {
        let n = self.order();
        n >= 2 && (2..n).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
    }

    /// First element (in canonical order) with `π(a) = c` and `π(b) = e`.
    pub fn transporter(&self, (a, b): (Color, Color), (c, e): (Color, Color)) -> Option<&Perm> {
        self.elements.iter().find(|p| p.apply(a) == c && p.apply(b) == e)
    }

    /// First element (in canonical order) with `π(a) = c`.
    pub fn point_transporter(&self, a: Color, c: Color) -> Option<&Perm> {
        self.elements.iter().find(|p| p.apply(a) == c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(d: u8, s: &str) -> Perm {
        Perm::parse_cycles(d, s).unwrap()
    }

    #[test]
    fn generator_examples() {
        let s3 = PermGroup::parse(3, "(1 2);(1 2 3)").unwrap();
        assert_eq!(s3.order(), 6);
        let d5 = PermGroup::parse(5, "(2 5)(3 4);(1 2 3 4 5)").unwrap();
        assert_eq!(d5.order(), 10);
        assert_eq!(d5, PermGroup::dihedral(5));
        let c4 = PermGroup::parse(4, "(1 2 3 4)").unwrap();
        assert_eq!(c4.order(), 4);
    }

    #[test]
    fn elements_are_sorted_and_start_with_identity() {
        let g = PermGroup::symmetric(4);
        assert_eq!(g.order(), 24);
        assert!(g.elements()[0].is_identity());
        assert!(g.elements().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn degree_errors() {
        let p = Perm::identity(3);
        assert_eq!(
            PermGroup::from_generators(4, vec![p]),
            Err(PermError::DegreeMismatch { expected: 4, found: 3 })
        );
        assert!(matches!(
            Perm::from_images(vec![1, 1, 2]),
            Err(PermError::NotBijective(_))
        ));
        assert!(matches!(
            PermGroup::from_generators(1, vec![]),
            Err(PermError::DegreeOutOfRange(1))
        ));
    }

    #[test]
    fn orbit_examples() {
        let s3 = PermGroup::symmetric(3);
        assert_eq!(s3.orbits(&[1, 2, 3]), vec![vec![1, 2, 3]]);
        let stab = PermGroup::dihedral(5).point_stabilizer(1).unwrap();
        assert_eq!(stab.orbits(&[2, 3, 4, 5]), vec![vec![2, 5], vec![3, 4]]);
        assert_eq!(PermGroup::cyclic(4).orbits(&[1, 2, 3, 4]), vec![vec![1, 2, 3, 4]]);
        assert!(s3.orbits(&[]).is_empty());
    }

    #[test]
    fn stabilizer_examples() {
        let s = PermGroup::symmetric(3).point_stabilizer(1).unwrap();
        assert_eq!(s.order(), 2);
        assert!(s.elements().iter().all(|p| p.fixes(1)));
        let d = PermGroup::dihedral(5).point_stabilizer(1).unwrap();
        assert_eq!(d.elements(), &[Perm::identity(5), cyc(5, "(2 5)(3 4)")]);
        assert!(PermGroup::cyclic(5).point_stabilizer(1).unwrap().is_trivial());
        assert!(PermGroup::cyclic(5).point_stabilizer(6).is_err());
    }

    #[test]
    fn predicate_examples() {
        let d5 = PermGroup::dihedral(5);
        assert!(d5.is_transitive());
        assert!(!d5.is_2transitive());
        assert!(d5.is_primitive());
        assert!(d5.is_generated_by_point_stabilizers());
        assert!(!d5.is_cyclic_of_prime_order());

        let c5 = PermGroup::cyclic(5);
        assert!(c5.is_primitive());
        assert!(c5.is_cyclic_of_prime_order());
        assert!(!c5.is_generated_by_point_stabilizers());

        let c4 = PermGroup::cyclic(4);
        assert!(!c4.is_primitive());
        assert_eq!(c4.minimal_block_system(1, 3), vec![vec![1, 3], vec![2, 4]]);
    }

    #[test]
    fn transporter_examples() {
        let s3 = PermGroup::symmetric(3);
        assert_eq!(s3.transporter((1, 2), (1, 3)), Some(&cyc(3, "(2 3)")));
        let d5 = PermGroup::dihedral(5);
        assert_eq!(d5.transporter((1, 2), (1, 3)), None);
        assert_eq!(d5.transporter((1, 2), (1, 5)), Some(&cyc(5, "(2 5)(3 4)")));
    }

    #[test]
    fn cycle_text_round_trip() {
        assert_eq!(cyc(5, "(2 5)(3 4)").to_string(), "(2 5)(3 4)");
        assert_eq!(Perm::identity(4).to_string(), "()");
        assert_eq!(cyc(4, "").to_string(), "()");
        assert_eq!(cyc(4, "(3 1 2)").to_string(), "(1 2 3)");
        let g = PermGroup::parse(5, "(2 5)(3 4);(1 2 3 4 5)").unwrap();
        assert_eq!(PermGroup::parse(5, &g.generators_text()).unwrap(), g);
    }

    #[test]
    fn cycle_parse_errors_carry_columns() {
        match Perm::parse_cycles(3, "(1 2)(3 4)") {
            Err(PermError::Parse { column, .. }) => assert_eq!(column, 9),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(Perm::parse_cycles(3, "(1 2"), Err(PermError::Parse { .. })));
        assert!(matches!(
            Perm::parse_cycles(3, "(1 2)(2 3)"),
            Err(PermError::Parse { column: 7, .. })
        ));
        match PermGroup::parse(3, "(1 2);(1 x)") {
            Err(PermError::Parse { column, .. }) => assert_eq!(column, 10),
            other => panic!("unexpected {other:?}"),
        }
    }
}
