//! Elliptic/inversion/hyperbolic classification and the decompositions built
//! on edge and half-tree fixators.
//!
//! Classification is exact and needs only `x₀`, `g(x₀)` and `g²(x₀)`. With
//! `a = d(x₀, g x₀)` and `b = d(x₀, g² x₀)`:
//!
//! - a hyperbolic `g` of length `ℓ` at distance `δ` from `x₀` has
//!   `a = ℓ + 2δ` and `b = 2ℓ + 2δ`, so `b > a`;
//! - an elliptic `g` has `b ≤ a`, `a` even, and fixes the midpoint of
//!   `[x₀, g x₀]`;
//! - an inversion has `b < a`, `a` odd, and flips the middle edge.
//!
//! Ends of a hyperbolic portrait are read off the axis once it leaves the
//! support ball, where `g` repeats a single local action `ρ` and the axis
//! colors become periodic with period dividing `ℓ · ord(ρ)`.

mod contraction;
mod split;

use std::fmt;

use thiserror::Error;

pub use contraction::{conjugation_criterion, contraction_membership, half_tree_criterion, Contraction};
pub use split::{fixes_ray, generation_witness, mautner_sequence, tits_split, translation_mapping_edge, Factor, Sign};

use crate::element::{ConjugatedLine, LineElement, Portrait, TreeAutomorphism};
use crate::tree::{format_word, EdgeAddr, End, VertexAddr};
use crate::Color;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynamicsError {
    #[error("element is not hyperbolic ({0})")]
    NotHyperbolic(Box<ElementClass>),
    #[error("element does not fix both endpoints of {0}")]
    EdgeNotFixed(EdgeAddr),
    #[error("edges are at even distance {0}; a type-preserving translation needs odd distance")]
    EvenEdgeDistance(usize),
    #[error("F must be transitive and generated by point stabilizers")]
    PlusHypotheses,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u8, u8),
    #[error("element fixes no edge of the translation axis")]
    NoAxisEdgeFixed,
    #[error("element does not fix the ray toward {0}")]
    RayNotFixed(End),
}

/// Dynamical type of a tree automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementClass {
    Elliptic {
        fixed: VertexAddr,
    },
    Inversion {
        edge: EdgeAddr,
    },
    /// `axis` runs from a point `v` of `Min(g)` to `g(v)`.
    Hyperbolic {
        length: usize,
        axis: Vec<VertexAddr>,
        attracting: End,
        repelling: End,
    },
}

impl ElementClass {
    pub fn is_hyperbolic(&self) -> bool {
        matches!(self, ElementClass::Hyperbolic { .. })
    }

    /// Translation length, zero for non-hyperbolic elements.
    pub fn length(&self) -> usize {
        match self {
            ElementClass::Hyperbolic { length, .. } => *length,
            _ => 0,
        }
    }

    /// Edge colors along the stored axis segment.
    pub fn axis_colors(&self) -> Vec<Color> {
        match self {
            ElementClass::Hyperbolic { axis, .. } => axis.windows(2).map(|p| edge_color(&p[0], &p[1])).collect(),
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for ElementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementClass::Elliptic { fixed } => write!(f, "elliptic fixed={fixed}"),
            ElementClass::Inversion { edge } => write!(f, "inversion edge={edge}"),
            ElementClass::Hyperbolic {
                length,
                attracting,
                repelling,
                ..
            } => write!(
                f,
                "hyperbolic len={length} axis=({}) ends=+{attracting} -{repelling}",
                format_word(&self.axis_colors())
            ),
        }
    }
}

pub(crate) fn edge_color(a: &VertexAddr, b: &VertexAddr) -> Color {
    if b.len() > a.len() { b.last() } else { a.last() }.expect("adjacent vertices")
}

enum Kind {
    Elliptic(VertexAddr),
    Inversion(EdgeAddr),
    /// Length and the projection of `x₀` onto the axis.
    Hyperbolic(usize, VertexAddr),
}

fn displacement_kind<G: TreeAutomorphism>(g: &G) -> Kind {
    let x = VertexAddr::root();
    let gx = g.apply(&x);
    let ggx = g.apply(&gx);
    let a = gx.len();
    let b = ggx.len();
    if a == 0 {
        return Kind::Elliptic(x);
    }
    // Vertex at distance k from x₀ on [x₀, g x₀].
    let on_path = |k: usize| VertexAddr::reduce(gx.word()[..k].iter().copied());
    if b > a {
        let len = b - a;
        Kind::Hyperbolic(len, on_path((a - len) / 2))
    } else if a.is_multiple_of(2) {
        Kind::Elliptic(on_path(a / 2))
    } else {
        let u = on_path(a / 2);
        Kind::Inversion(EdgeAddr::new(u, gx.word()[a / 2]))
    }
}

fn axis_segment<G: TreeAutomorphism>(g: &G, v: &VertexAddr) -> Vec<VertexAddr> {
    v.geodesic_to(&g.apply(v))
}

/// Attracting end of a hyperbolic portrait with axis point `v` (the
/// projection of `x₀`) and translation length `len`.
fn portrait_attracting_end(g: &Portrait, v: &VertexAddr, len: usize) -> End {
    let segment = axis_segment(g, v);
    let delta = v.len();
    let i0 = g.support_hull().saturating_sub(delta);
    // Axis vertex a_i, i ≥ 0, via a_{i+len} = g(a_i).
    let axis_vertex = |i: usize| {
        let mut x = segment[i % len].clone();
        for _ in 0..i / len {
            x = g.apply(&x);
        }
        x
    };
    let rho = g.local_action(&axis_vertex(i0));
    let period = len * rho.order();
    let far = axis_vertex(i0 + 2 * period);
    End::from_prefix(far.word(), delta + i0, period).expect("axis word is eventually periodic beyond the hull")
}

/// Exact classification.
pub trait Classify {
    fn classify(&self) -> ElementClass;
}

impl Classify for Portrait {
    fn classify(&self) -> ElementClass {
        match displacement_kind(self) {
            Kind::Elliptic(fixed) => ElementClass::Elliptic { fixed },
            Kind::Inversion(edge) => ElementClass::Inversion { edge },
            Kind::Hyperbolic(length, v) => ElementClass::Hyperbolic {
                length,
                axis: axis_segment(self, &v),
                attracting: portrait_attracting_end(self, &v, length),
                repelling: portrait_attracting_end(&self.inverse(), &v, length),
            },
        }
    }
}

impl Classify for LineElement {
    fn classify(&self) -> ElementClass {
        ElementClass::Hyperbolic {
            length: self.shift(),
            axis: (0..=self.shift() as i64).map(|i| self.line_vertex(i)).collect(),
            attracting: self.attracting_end(),
            repelling: self.repelling_end(),
        }
    }
}

impl Classify for ConjugatedLine {
    fn classify(&self) -> ElementClass {
        let v = match displacement_kind(self) {
            Kind::Hyperbolic(_, v) => v,
            _ => unreachable!("conjugates of translations are hyperbolic"),
        };
        ElementClass::Hyperbolic {
            length: self.line().shift(),
            axis: axis_segment(self, &v),
            attracting: self.attracting_end(),
            repelling: self.repelling_end(),
        }
    }
}

pub fn classify<G: Classify>(g: &G) -> ElementClass {
    g.classify()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::Perm;

    fn v(s: &str) -> VertexAddr {
        s.parse().unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(Portrait::identity(3).classify().to_string(), "elliptic fixed=-");
        let a = Portrait::left_translation(3, &v("12"));
        assert_eq!(
            a.classify().to_string(),
            "hyperbolic len=2 axis=(12) ends=+(12)^inf -(21)^inf"
        );
        let b = Portrait::left_translation(3, &v("1"));
        assert_eq!(b.classify().to_string(), "inversion edge=-/1");
    }

    #[test]
    fn elliptic_away_from_root() {
        let rot = Portrait::new(3, v("-"), [(v("-"), Perm::parse_cycles(3, "(2 3)").unwrap())]).unwrap();
        let t = Portrait::left_translation(3, &v("12"));
        let g = rot.conjugate_by(&t);
        assert_eq!(g.classify(), ElementClass::Elliptic { fixed: v("12") });
    }

    #[test]
    fn hyperbolic_with_rotating_locals() {
        // x ↦ 12·π(x) with π = (2 3): axis colors alternate 12, 13.
        let p = Perm::parse_cycles(3, "(2 3)").unwrap();
        let g = Portrait::new(3, v("12"), [(v("-"), p)]).unwrap();
        let c = g.classify();
        assert_eq!(c.to_string(), "hyperbolic len=2 axis=(12) ends=+(1213)^inf -(3121)^inf");
        let ElementClass::Hyperbolic { attracting, length, .. } = &c else {
            unreachable!()
        };
        for n in 0..40 {
            assert_eq!(
                g.pow(n).apply(&v("-")).word(),
                &attracting.prefix(n as usize * length)[..]
            );
        }
    }

    #[test]
    fn line_classification() {
        let line = LineElement::uniform(3, vec![1, 2, 1, 3], 4).unwrap();
        assert_eq!(
            line.classify().to_string(),
            "hyperbolic len=4 axis=(1213) ends=+(1213)^inf -(3121)^inf"
        );
        let c = Portrait::left_translation(3, &v("2"));
        let g = line.conjugate_by(&c);
        let ElementClass::Hyperbolic { attracting, .. } = g.classify() else {
            panic!()
        };
        assert_eq!(attracting.to_string(), "2(1213)^inf");
    }
}
