//! Finite certificates for the transitivity propositions.

use std::collections::HashMap;

use super::HarnessError;
use crate::dynamics::{Classify, ElementClass};
use crate::element::{LineElement, Portrait, TreeAutomorphism};
use crate::permgroup::PermGroup;
use crate::tree::{hyp_ends_pattern, Tree, VertexAddr};
use crate::Color;

/// Ordered color pair.
pub type Pair = (Color, Color);

fn require_transitive(group: &PermGroup) -> Result<(), HarnessError> {
    if group.degree() < 3 {
        return Err(HarnessError::NeedsThreeColors(group.degree()));
    }
    if !group.is_transitive() {
        return Err(HarnessError::NotTransitive);
    }
    Ok(())
}

/// Obstruction to a hyperbolic element fixing the end of
/// `(ab)(ac)(ab)²(ac)…`: no `π ∈ F` fixes `a` and sends `b` to `c`, while a
/// translation of length `2N` fixing that end would map the midpoint of an
/// `(ab)^N(ac)(ab)^N` block (colors `a, c` around it) to a vertex with
/// colors `a, b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypEndsCertificate {
    pub a: Color,
    pub b: Color,
    pub c: Color,
    pub block: usize,
    /// Index on the ray of the block's midpoint vertex.
    pub midpoint: usize,
    /// Colors `(backward, forward)` at the midpoint and `2N` steps further.
    pub at_midpoint: Pair,
    pub at_image: Pair,
}

impl std::fmt::Display for HypEndsCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "colors a={} b={} c={}: no element fixes {} and maps {}->{}; N={} midpoint={} sees ({},{}) and its image ({},{})",
            self.a,
            self.b,
            self.c,
            self.a,
            self.b,
            self.c,
            self.block,
            self.midpoint,
            self.at_midpoint.0,
            self.at_midpoint.1,
            self.at_image.0,
            self.at_image.1
        )
    }
}

/// `None` iff `F` is 2-transitive; otherwise the first labeling `(a; b, c)`
/// without a transporter `(a,b) → (a,c)`, checked against the ray for block
/// size `block`.
pub fn check_hyp_ends_obstruction(group: &PermGroup, block: usize) -> Result<Option<HypEndsCertificate>, HarnessError> {
    require_transitive(group)?;
    let d = group.degree();
    let triple = (1..=d)
        .flat_map(|a| (1..=d).flat_map(move |b| (1..=d).map(move |c| (a, b, c))))
        .filter(|&(a, b, c)| a != b && b != c && a != c)
        .find(|&(a, b, c)| group.transporter((a, b), (a, c)).is_none());
    let Some((a, b, c)) = triple else {
        return Ok(None);
    };
    let n = block.max(1);
    let pattern: Vec<Color> = std::iter::repeat_n([a, b], n)
        .flatten()
        .chain([a, c])
        .chain(std::iter::repeat_n([a, b], n).flatten())
        .collect();
    let ray = hyp_ends_pattern(a, b, c, (n + 2) * (n + 3) * 2 + pattern.len());
    let start = ray
        .windows(pattern.len())
        .position(|w| w == pattern)
        .expect("every block size occurs on the ray");
    let midpoint = start + 2 * n + 1;
    let at_midpoint = (ray[midpoint - 1], ray[midpoint]);
    let at_image = (ray[midpoint + 2 * n - 1], ray[midpoint + 2 * n]);
    debug_assert_eq!(at_midpoint, (a, c));
    debug_assert_eq!(at_image, (a, b));
    Ok(Some(HypEndsCertificate {
        a,
        b,
        c,
        block: n,
        midpoint,
        at_midpoint,
        at_image,
    }))
}

/// Local constraint at line position `i` for a length-2 translation along the
/// periodic line `colors`: `(c_{i−1}, c_i) ↦ (c_{i+1}, c_{i+2})`.
fn step_constraint(colors: &[Color], i: usize) -> (Pair, Pair) {
    let p = colors.len();
    let c = |k: usize| colors[k % p];
    ((c(i + p - 1), c(i)), (c(i + 1), c(i + 2)))
}

/// Missing transporters for a length-2 translation along `colors`.
pub fn missing_length2_transporters(colors: &[Color], group: &PermGroup) -> Vec<(Pair, Pair)> {
    (0..colors.len())
        .map(|i| step_constraint(colors, i))
        .filter(|&(from, to)| group.transporter(from, to).is_none())
        .collect()
}

/// A length-2 translation along the periodic line with the given colors,
/// using the first transporter in `F` at each position.
pub fn length2_translation_along(colors: &[Color], group: &PermGroup) -> Option<LineElement> {
    let perms = (0..colors.len())
        .map(|i| {
            let (from, to) = step_constraint(colors, i);
            group.transporter(from, to).cloned()
        })
        .collect::<Option<Vec<_>>>()?;
    LineElement::new(group.degree(), colors.to_vec(), perms, 2).ok()
}

#[derive(Clone, Debug)]
pub enum SecondTrans {
    /// `b` has length 2 and `b²` agrees with the length-4 translation `h` on
    /// the line.
    Positive { b: LineElement, class: ElementClass },
    /// `h` is not the square of a length-2 translation along its axis.
    Negative { missing: Vec<(Pair, Pair)> },
}

impl SecondTrans {
    pub fn is_positive(&self) -> bool {
        matches!(self, SecondTrans::Positive { .. })
    }
}

impl std::fmt::Display for SecondTrans {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SecondTrans::Positive { class, .. } => write!(f, "b: {class}"),
            SecondTrans::Negative { missing } => {
                write!(f, "missing transporters")?;
                for ((a, b), (c, e)) in missing {
                    write!(f, " ({a},{b})->({c},{e})")?;
                }
                Ok(())
            }
        }
    }
}

/// Line colored `(1,2,1,3)`: the length-4 translation `h` with trivial local
/// actions is a square of a length-2 translation along the same axis exactly
/// when the needed transporters exist in `F`.
pub fn check_second_trans(group: &PermGroup) -> Result<SecondTrans, HarnessError> {
    require_transitive(group)?;
    let colors = [1, 2, 1, 3];
    let h = LineElement::uniform(group.degree(), colors.to_vec(), 4).expect("valid line");
    let Some(b) = length2_translation_along(&colors, group) else {
        return Ok(SecondTrans::Negative {
            missing: missing_length2_transporters(&colors, group),
        });
    };
    let class = b.classify();
    let square = b.power(2);
    let on_axis = (-12..=12).all(|i| {
        let x = h.line_vertex(i);
        square.apply(&x) == h.apply(&x)
    });
    if class.length() != 2 || !on_axis {
        return Err(HarnessError::Inconsistent(format!(
            "length-2 witness failed verification: {class}"
        )));
    }
    Ok(SecondTrans::Positive { b, class })
}

#[derive(Clone, Debug)]
pub struct EqualStabilizerLine {
    pub j: Color,
    pub k: Color,
    pub h: Portrait,
    pub class: ElementClass,
}

/// First pair `j < k` with `F_j = F_k`, together with the color-preserving
/// length-2 translation along the `(j,k)`-line. The translation is checked to
/// lie in `U(F) ∩ Aut(T)⁺` and to have the expected axis.
pub fn check_equal_stabilizer_line(group: &PermGroup) -> Result<Option<EqualStabilizerLine>, HarnessError> {
    let d = group.degree();
    let stabs: Vec<PermGroup> = (1..=d)
        .map(|c| group.point_stabilizer(c).expect("color in range"))
        .collect();
    let pair = (1..=d)
        .flat_map(|j| (j + 1..=d).map(move |k| (j, k)))
        .find(|&(j, k)| stabs[j as usize - 1].elements() == stabs[k as usize - 1].elements());
    let Some((j, k)) = pair else {
        return Ok(None);
    };
    let h = Portrait::left_translation(d, &VertexAddr::reduce([j, k]));
    let class = h.classify();
    let axis_ok = matches!(&class, ElementClass::Hyperbolic { attracting, .. }
        if attracting.preperiod().is_empty() && attracting.period() == [j, k]);
    if !(h.is_in_uf(group) && h.is_type_preserving() && class.length() == 2 && axis_ok) {
        return Err(HarnessError::Inconsistent(format!(
            "translation along ({j},{k}) failed verification: {class}"
        )));
    }
    Ok(Some(EqualStabilizerLine { j, k, h, class }))
}

/// Orbits of the type-preserving generators of `U(F)⁺` on `B(x₀, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub radius: usize,
    pub orbits: usize,
    /// The orbit of `x₀` is exactly the set of even-length words.
    pub root_orbit_even: bool,
}

/// Orbit structure under left translations by 2-letter words and the color
/// permutations of `F`, all of which lie in `U(F)⁺`; images leaving the ball
/// are discarded.
pub fn check_bipartition(group: &PermGroup, radius: usize) -> Bipartition {
    let d = group.degree();
    let tree = Tree::new(d).expect("valid degree");
    let ball = tree.ball(radius);
    let index: HashMap<&VertexAddr, usize> = ball.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut gens: Vec<Portrait> = tree.sphere(2).map(|w| Portrait::left_translation(d, &w)).collect();
    gens.extend(group.generators().iter().map(Portrait::color_permutation));
    let mut dsu = Dsu::new(ball.len());
    for (i, v) in ball.iter().enumerate() {
        for g in &gens {
            if let Some(&j) = index.get(&g.apply(v)) {
                dsu.union(i, j);
            }
        }
    }
    let root = dsu.find(0);
    let root_orbit_even = ball
        .iter()
        .enumerate()
        .all(|(i, v)| (dsu.find(i) == root) == (v.len() % 2 == 0));
    Bipartition {
        radius,
        orbits: dsu.components(),
        root_orbit_even,
    }
}

/// Minimal union-find.
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub(crate) fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}
