//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the algorithm under test for the quantity it is meant to check.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use arboru::element::TreeAutomorphism;
use arboru::{Perm, PermGroup, Portrait, VertexAddr};

pub type Word = Vec<u8>;

/// Free reduction of `u·v` for involutions.
pub fn concat_reduce(u: &[u8], v: &[u8]) -> Word {
    let mut out = u.to_vec();
    for &c in v {
        if out.last() == Some(&c) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    out
}

pub fn word_dist(u: &[u8], v: &[u8]) -> usize {
    let common = u.iter().zip(v).take_while(|(a, b)| a == b).count();
    u.len() + v.len() - 2 * common
}

/// All reduced words of length at most `r`, built letter by letter.
pub fn ball_words(d: u8, r: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Word> = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::new();
        for w in &frontier {
            for c in 1..=d {
                if w.last() != Some(&c) {
                    let mut x = w.clone();
                    x.push(c);
                    next.push(x);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn vertex(w: &[u8]) -> VertexAddr {
    VertexAddr::new(w.to_vec(), None).expect("reduced word")
}

/// Image of `w` under `g` via the crate, as a plain word.
pub fn image(g: &impl TreeAutomorphism, w: &[u8]) -> Word {
    g.apply(&vertex(w)).into_word()
}

/// Group closure by breadth-first search over image vectors.
pub fn closure(gens: &[Vec<u8>], d: u8) -> BTreeSet<Vec<u8>> {
    let id: Vec<u8> = (1..=d).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q: Vec<u8> = p.iter().map(|&x| g[x as usize - 1]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen
}

pub fn images_of(group: &PermGroup) -> Vec<Vec<u8>> {
    let d = group.degree();
    group
        .elements()
        .iter()
        .map(|p| (1..=d).map(|c| p.apply(c)).collect())
        .collect()
}

pub fn brute_two_transitive(elements: &[Vec<u8>], d: u8) -> bool {
    let reach: BTreeSet<(u8, u8)> = elements.iter().map(|p| (p[0], p[1])).collect();
    reach.len() == (d as usize) * (d as usize - 1)
}

fn set_partitions(points: &[u8]) -> Vec<Vec<Vec<u8>>> {
    let Some((&first, rest)) = points.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for part in set_partitions(rest) {
        for i in 0..part.len() {
            let mut p = part.clone();
            p[i].push(first);
            out.push(p);
        }
        let mut p = part;
        p.push(vec![first]);
        out.push(p);
    }
    out
}

/// Transitive and no nontrivial invariant partition, by enumerating all set
/// partitions.
pub fn brute_primitive(elements: &[Vec<u8>], d: u8) -> bool {
    let transitive = elements.iter().map(|p| p[0]).collect::<BTreeSet<_>>().len() == d as usize;
    if !transitive {
        return false;
    }
    let points: Vec<u8> = (1..=d).collect();
    !set_partitions(&points).into_iter().any(|blocks| {
        let nontrivial = blocks.len() > 1 && blocks.len() < d as usize;
        let canon = |bs: &[Vec<u8>]| {
            let mut v: Vec<Vec<u8>> = bs
                .iter()
                .map(|b| {
                    let mut b = b.clone();
                    b.sort();
                    b
                })
                .collect();
            v.sort();
            v
        };
        let base = canon(&blocks);
        nontrivial
            && elements.iter().all(|p| {
                let moved: Vec<Vec<u8>> = blocks
                    .iter()
                    .map(|b| b.iter().map(|&x| p[x as usize - 1]).collect())
                    .collect();
                canon(&moved) == base
            })
    })
}

/// Oracle classification from displacements over `B(x₀, r)`.
#[derive(Debug, PartialEq, Eq)]
pub enum BruteClass {
    Elliptic,
    Inversion,
    Hyperbolic(usize),
}

pub fn brute_classify(g: &impl TreeAutomorphism, r: usize) -> (BruteClass, Vec<Word>) {
    let ball = ball_words(g.degree(), r);
    let disp: Vec<usize> = ball.iter().map(|w| word_dist(w, &image(g, w))).collect();
    let min = *disp.iter().min().expect("nonempty");
    let minimizers: Vec<Word> = ball
        .iter()
        .zip(&disp)
        .filter(|(_, &dv)| dv == min)
        .map(|(w, _)| w.clone())
        .collect();
    let class = match min {
        0 => BruteClass::Elliptic,
        1 if minimizers.iter().any(|w| image(g, &image(g, w)) == *w) => BruteClass::Inversion,
        l => BruteClass::Hyperbolic(l),
    };
    (class, minimizers)
}

/// Tiny union-find.
pub struct Dsu(Vec<usize>);

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }

    pub fn count(&mut self) -> usize {
        (0..self.0.len()).filter(|&i| self.find(i) == i).count()
    }
}

/// Root-stabilizer orbits on the sphere of radius `n`, generated by portraits
/// with a single stabilizer generator at one vertex of `B(x₀, n − 1)`.
pub fn brute_sphere_orbits(group: &PermGroup, n: usize) -> usize {
    let d = group.degree();
    let sphere: Vec<Word> = ball_words(d, n).into_iter().filter(|w| w.len() == n).collect();
    let index: HashMap<Word, usize> = sphere.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut dsu = Dsu::new(sphere.len());
    for v in ball_words(d, n.saturating_sub(1)) {
        for p in group.elements() {
            if v.last().is_some_and(|&b| p.apply(b) != b) {
                continue;
            }
            let g = Portrait::new(d, VertexAddr::root(), [(vertex(&v), p.clone())]).expect("valid local");
            for (i, w) in sphere.iter().enumerate() {
                dsu.union(i, index[&image(&g, w)]);
            }
        }
    }
    dsu.count()
}

/// Plain cycles text built independently of `Perm`'s printer.
pub fn cycles_text(images: &[u8]) -> String {
    let mut seen = vec![false; images.len() + 1];
    let mut out = String::new();
    for start in 1..=images.len() as u8 {
        if seen[start as usize] || images[start as usize - 1] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x as usize] {
            seen[x as usize] = true;
            cycle.push(x.to_string());
            x = images[x as usize - 1];
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

pub fn perm(images: &[u8]) -> Perm {
    Perm::from_images(images.to_vec()).expect("bijection")
}
