//! Orbits of the root stabilizer `K = U(F)_{x₀}` on spheres.
//!
//! Two words `c₁…cₙ` and `d₁…dₙ` lie in one `K`-orbit iff `c₁, d₁` share an
//! `F`-orbit and, for every `k`, some `π ∈ F` sends `(cₖ, cₖ₊₁)` to
//! `(dₖ, dₖ₊₁)`: the local action at the `k`-th vertex is only constrained by
//! where the incoming color goes. An orbit is thus a realizable sequence of
//! `F`-orbits on ordered pairs, which a dynamic program over word positions
//! counts without enumerating the sphere.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::permgroup::PermGroup;
use crate::tree::{Tree, VertexAddr};
use crate::Color;

/// `F`-orbits on ordered pairs of distinct colors, as an index table.
struct PairOrbits {
    degree: u8,
    index: Vec<Option<usize>>,
    count: usize,
}

impl PairOrbits {
    fn new(group: &PermGroup) -> Self {
        let d = group.degree() as usize;
        let mut index = vec![None; (d + 1) * (d + 1)];
        let mut count = 0;
        for a in 1..=d {
            for b in 1..=d {
                if a == b || index[a * (d + 1) + b].is_some() {
                    continue;
                }
                for p in group.elements() {
                    let (x, y) = (p.apply(a as Color) as usize, p.apply(b as Color) as usize);
                    index[x * (d + 1) + y] = Some(count);
                }
                count += 1;
            }
        }
        PairOrbits {
            degree: group.degree(),
            index,
            count,
        }
    }

    fn of(&self, a: Color, b: Color) -> usize {
        self.index[a as usize * (self.degree as usize + 1) + b as usize].expect("distinct colors")
    }
}

fn color_orbit_index(group: &PermGroup) -> Vec<usize> {
    let d = group.degree();
    let mut idx = vec![usize::MAX; d as usize + 1];
    for (i, orbit) in group.orbits(&(1..=d).collect::<Vec<_>>()).into_iter().enumerate() {
        for c in orbit {
            idx[c as usize] = i;
        }
    }
    idx
}

/// Number of `K`-orbits on the sphere of radius `n`.
pub fn sphere_orbit_count(group: &PermGroup, n: usize) -> u128 {
    if n == 0 {
        return 1;
    }
    let d = group.degree();
    let pairs = PairOrbits::new(group);
    // State: set of possible current last colors (bitmask) ↦ number of orbit
    // sequences realized with exactly that set.
    let mut states: BTreeMap<u32, u128> = BTreeMap::new();
    for orbit in group.orbits(&(1..=d).collect::<Vec<_>>()) {
        let mask = orbit.iter().fold(0u32, |m, &c| m | 1 << c);
        *states.entry(mask).or_default() += 1;
    }
    for _ in 1..n {
        let mut next: BTreeMap<u32, u128> = BTreeMap::new();
        for (&mask, &count) in &states {
            let mut targets = vec![0u32; pairs.count];
            for a in (1..=d).filter(|&a| mask & (1 << a) != 0) {
                for b in (1..=d).filter(|&b| b != a) {
                    targets[pairs.of(a, b)] |= 1 << b;
                }
            }
            for t in targets.into_iter().filter(|&t| t != 0) {
                *next.entry(t).or_default() += count;
            }
        }
        states = next;
    }
    states.values().sum()
}

/// Signature determining the `K`-orbit of a word.
fn signature(pairs: &PairOrbits, colors: &[usize], w: &VertexAddr) -> Vec<usize> {
    let word = w.word();
    match word.first() {
        None => Vec::new(),
        Some(&c) => std::iter::once(colors[c as usize])
            .chain(word.windows(2).map(|p| pairs.of(p[0], p[1])))
            .collect(),
    }
}

/// Explicit `K`-orbit partition of the sphere of radius `n`; classes are
/// sorted internally and by their least word. Enumerates the sphere.
pub fn stabilizer_orbits_on_sphere(group: &PermGroup, n: usize) -> Vec<Vec<VertexAddr>> {
    let tree = Tree::new(group.degree()).expect("group degree is a valid tree degree");
    let pairs = PairOrbits::new(group);
    let colors = color_orbit_index(group);
    let mut classes: BTreeMap<Vec<usize>, Vec<VertexAddr>> = BTreeMap::new();
    for w in tree.sphere(n) {
        classes.entry(signature(&pairs, &colors, &w)).or_default().push(w);
    }
    let mut out: Vec<Vec<VertexAddr>> = classes.into_values().collect();
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Bounded,
    Growing,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Bounded => "bounded",
            Verdict::Growing => "growing",
        })
    }
}

/// Sphere orbit counts `o₁…o_N` as a finite proxy for the number of
/// boundary orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitGrowth {
    pub degree: u8,
    pub counts: Vec<u128>,
    pub verdict: Verdict,
    /// Whether the verdict matches `is_2transitive(F)` (bounded iff
    /// 2-transitive, for transitive `F`).
    pub matches_2transitive: bool,
}

impl OrbitGrowth {
    /// TSV with columns `n`, `o_n`, `|S_n|`.
    pub fn to_tsv(&self) -> String {
        let tree = Tree::new(self.degree).expect("valid degree");
        let mut out = String::from("n\to_n\tsphere\n");
        for (i, o) in self.counts.iter().enumerate() {
            let n = i + 1;
            writeln!(out, "{n}\t{o}\t{}", tree.sphere_size(n)).expect("write to string");
        }
        out
    }
}

/// `o_n` for `n = 1..=depth`; bounded iff the last two counts agree.
pub fn boundary_orbit_growth(group: &PermGroup, depth: usize) -> OrbitGrowth {
    let counts: Vec<u128> = (1..=depth).map(|n| sphere_orbit_count(group, n)).collect();
    let verdict = match counts.as_slice() {
        [.., a, b] if a == b => Verdict::Bounded,
        [_] | [] => Verdict::Bounded,
        _ => Verdict::Growing,
    };
    OrbitGrowth {
        degree: group.degree(),
        matches_2transitive: (verdict == Verdict::Bounded) == group.is_2transitive(),
        counts,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let counts = |g: &PermGroup, n: usize| (1..=n).map(|k| sphere_orbit_count(g, k)).collect::<Vec<_>>();
        assert_eq!(counts(&PermGroup::symmetric(3), 5), [1; 5]);
        assert_eq!(counts(&PermGroup::symmetric(5), 5), [1; 5]);
        assert_eq!(counts(&PermGroup::alternating(5), 5), [1; 5]);
        assert_eq!(counts(&PermGroup::dihedral(5), 4), [1, 2, 4, 8]);
        assert_eq!(counts(&PermGroup::cyclic(4), 4), [1, 3, 9, 27]);
        assert_eq!(counts(&PermGroup::cyclic(5), 4), [1, 4, 16, 64]);
        assert_eq!(sphere_orbit_count(&PermGroup::trivial(3), 3), 12);
    }

    #[test]
    fn partition_matches_count() {
        for g in [PermGroup::dihedral(5), PermGroup::cyclic(4), PermGroup::symmetric(4)] {
            for n in 0..=4 {
                let parts = stabilizer_orbits_on_sphere(&g, n);
                assert_eq!(parts.len() as u128, sphere_orbit_count(&g, n));
            }
        }
    }

    #[test]
    fn growth_verdicts() {
        let g = boundary_orbit_growth(&PermGroup::dihedral(5), 4);
        assert_eq!(g.verdict, Verdict::Growing);
        assert!(g.matches_2transitive);
        assert_eq!(g.to_tsv(), "n\to_n\tsphere\n1\t1\t5\n2\t2\t20\n3\t4\t80\n4\t8\t320\n");
        let s = boundary_orbit_growth(&PermGroup::symmetric(5), 4);
        assert_eq!(s.verdict, Verdict::Bounded);
        assert!(s.matches_2transitive);
    }
}
