use std::fmt;

use super::{Classify, DynamicsError, ElementClass};
use crate::element::{plus_hypotheses_hold, Portrait, TreeAutomorphism};
use crate::permgroup::PermGroup;
use crate::tree::{dist, EdgeAddr, End, HalfTree, Side, VertexAddr};

/// Splits an edge fixator `g` as `g = g₁ ∘ g₂`, where `g₁` fixes the half-tree
/// of the inner endpoint pointwise and `g₂` fixes the outer one. The factors
/// commute and both lie in `U(F)` whenever `g` does.
pub fn tits_split(g: &Portrait, e: &EdgeAddr) -> Result<(Portrait, Portrait), DynamicsError> {
    let (inner, outer) = e.endpoints();
    if g.apply(&inner) != inner || g.apply(&outer) != outer {
        return Err(DynamicsError::EdgeNotFixed(e.clone()));
    }
    let on_outer = |v: &VertexAddr| outer.is_prefix_of(v);
    let id = || crate::permgroup::Perm::identity(g.degree());

    let outer_support = g.support().filter(|v| on_outer(v)).cloned();
    let g1 = Portrait::from_local_actions(
        g.degree(),
        VertexAddr::root(),
        std::iter::once(outer.clone()).chain(outer_support),
        |v| if on_outer(v) { g.local_action(v) } else { id() },
    );
    let g2 = Portrait::from_local_actions(
        g.degree(),
        g.root_image().clone(),
        [VertexAddr::root(), outer.clone()]
            .into_iter()
            .chain(g.support().cloned()),
        |v| if on_outer(v) { id() } else { g.local_action(v) },
    );
    Ok((g1, g2))
}

/// Whether `g` fixes every vertex of the ray `[x₀, ξ)`. Exact: beyond the
/// support the ray is fixed iff the local action there fixes every period
/// color.
pub fn fixes_ray(g: &Portrait, xi: &End) -> bool {
    let m = (g.support_hull() + 1).max(xi.preperiod().len());
    let y = xi.ray_vertex(m);
    if !g.root_image().is_root() || g.apply(&y) != y {
        return false;
    }
    let rho = g.local_action(&y);
    xi.period().iter().all(|&c| rho.fixes(c))
}

/// The decomposition `g = t_j ∘ h_j` for `g` fixing the ray toward `ξ`:
/// `t_j` fixes the half-tree at `ray_vertex(ξ, j+1)` containing `ξ`, and
/// `h_j` fixes the other half-tree of that edge, in particular `B(x₀, j)`.
/// Returns `(t_j, h_j)`.
pub fn mautner_sequence(g: &Portrait, xi: &End, j: usize) -> Result<(Portrait, Portrait), DynamicsError> {
    if !fixes_ray(g, xi) {
        return Err(DynamicsError::RayNotFixed(xi.clone()));
    }
    let e = EdgeAddr::new(xi.ray_vertex(j), xi.letter(j));
    let (inner_fixing, outer_fixing) = tits_split(g, &e)?;
    Ok((outer_fixing, inner_fixing))
}

/// Which contraction group a factor belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    /// `U⁺_a`: fixes a half-tree containing the attracting end.
    Plus,
    /// `U⁻_a = U⁺_{a⁻¹}`.
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub element: Portrait,
    pub sign: Sign,
}

fn hyperbolic_axis(a: &Portrait) -> Result<(usize, Vec<VertexAddr>), DynamicsError> {
    match a.classify() {
        ElementClass::Hyperbolic { length, axis, .. } => Ok((length, axis)),
        other => Err(DynamicsError::NotHyperbolic(Box::new(other))),
    }
}

/// Writes an axis-edge fixator `g` as a product of elements of `U⁺_a` and
/// `U⁻_a` by splitting at a fixed axis edge. Identity factors are dropped;
/// the `+` factor comes first.
pub fn generation_witness(g: &Portrait, a: &Portrait) -> Result<Vec<Factor>, DynamicsError> {
    if g.degree() != a.degree() {
        return Err(DynamicsError::DegreeMismatch(g.degree(), a.degree()));
    }
    let (len, segment) = hyperbolic_axis(a)?;
    if g.is_identity() {
        return Ok(Vec::new());
    }
    let a_inv = a.inverse();
    // Axis vertex k ∈ ℤ, with a(axis(k)) = axis(k + len).
    let axis = |k: i64| {
        let q = k.div_euclid(len as i64);
        let r = k.rem_euclid(len as i64) as usize;
        let step = if q >= 0 { a } else { &a_inv };
        let mut x = segment[r].clone();
        for _ in 0..q.unsigned_abs() {
            x = step.apply(&x);
        }
        x
    };
    let window = (4 * g.support_hull() + 2 * segment[0].len() + 2 * len + 4) as i64;
    let mut order: Vec<i64> = (-window..=window).collect();
    order.sort_by_key(|k| (k.abs(), *k));
    for k in order {
        let (p, q) = (axis(k), axis(k + 1));
        if g.apply(&p) != p || g.apply(&q) != q {
            continue;
        }
        let e = EdgeAddr::from_endpoints(&p, &q).expect("consecutive axis vertices");
        let (inner_fixing, outer_fixing) = tits_split(g, &e)?;
        let attracting_outer = HalfTree::containing(e.clone(), &q).expect("q is an endpoint").side == Side::Outer;
        let (plus, minus) = if attracting_outer {
            (outer_fixing, inner_fixing)
        } else {
            (inner_fixing, outer_fixing)
        };
        let factors = [(plus, Sign::Plus), (minus, Sign::Minus)]
            .into_iter()
            .filter(|(f, _)| !f.is_identity())
            .map(|(element, sign)| Factor { element, sign })
            .collect();
        return Ok(factors);
    }
    Err(DynamicsError::NoAxisEdgeFixed)
}

/// A hyperbolic element of `U(F)⁺` carrying `e` onto `e'` (edges at odd
/// distance), oriented so that it translates along the geodesic through both.
///
/// With `e = {x, y}` and `e' = {x', y'}` listed in order along that geodesic,
/// the element is `v ↦ x'·π(x⁻¹·v)` for the first `π ∈ F` sending the color of
/// `e` to the color of `e'`. Its translation length is `dist(x, x')`.
pub fn translation_mapping_edge(e: &EdgeAddr, e2: &EdgeAddr, group: &PermGroup) -> Result<Portrait, DynamicsError> {
    if !plus_hypotheses_hold(group) {
        return Err(DynamicsError::PlusHypotheses);
    }
    let d = e.distance(e2);
    if d.is_multiple_of(2) {
        return Err(DynamicsError::EvenEdgeDistance(d));
    }
    let near = |edge: &EdgeAddr, other: &EdgeAddr| {
        let (u, v) = edge.endpoints();
        let (p, q) = other.endpoints();
        let du = dist(&u, &p).min(dist(&u, &q));
        let dv = dist(&v, &p).min(dist(&v, &q));
        if du < dv {
            (v, u)
        } else {
            (u, v)
        }
    };
    let (x, _) = near(e, e2);
    let (_, x2) = near(e2, e);
    let pi = group
        .point_transporter(e.color(), e2.color())
        .expect("transitive group")
        .clone();
    let degree = group.degree();
    let g = Portrait::left_translation(degree, &x2)
        .compose(&Portrait::color_permutation(&pi))
        .compose(&Portrait::left_translation(degree, &x.inverse()));
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::random::{random_edge_fixator, random_ray_fixator, rng_from_seed};
    use crate::permgroup::Perm;
    use crate::tree::Tree;

    fn v(s: &str) -> VertexAddr {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Perm {
        Perm::parse_cycles(3, s).unwrap()
    }

    #[test]
    fn split_identity_and_one_sided() {
        let e = EdgeAddr::new(v("-"), 1);
        let (a, b) = tits_split(&Portrait::identity(3), &e).unwrap();
        assert!(a.is_identity() && b.is_identity());

        // Supported deep in the outer half-tree: (identity, g) would be wrong
        // here; the inner-fixing factor carries it.
        let g = Portrait::new(3, v("-"), [(v("12"), p("(1 3)"))]).unwrap();
        let (g1, g2) = tits_split(&g, &e).unwrap();
        assert_eq!(g1, g);
        assert!(g2.is_identity());
    }

    #[test]
    fn split_two_sided() {
        let e = EdgeAddr::new(v("-"), 1);
        let g = Portrait::new(3, v("-"), [(v("-"), p("(2 3)"))]).unwrap();
        let (g1, g2) = tits_split(&g, &e).unwrap();
        assert_eq!(g1, Portrait::new(3, v("-"), [(v("1"), p("(2 3)"))]).unwrap());
        assert_eq!(
            g2,
            Portrait::new(3, v("-"), [(v("-"), p("(2 3)")), (v("1"), p("(2 3)"))]).unwrap()
        );
        assert_eq!(g1.compose(&g2), g);
        assert_eq!(g2.compose(&g1), g);
    }

    #[test]
    fn split_rejects_moved_edge() {
        let g = Portrait::left_translation(3, &v("12"));
        assert!(matches!(
            tits_split(&g, &EdgeAddr::new(v("-"), 1)),
            Err(DynamicsError::EdgeNotFixed(_))
        ));
    }

    #[test]
    fn split_random_edge_fixators() {
        let f = PermGroup::symmetric(4);
        let tree = Tree::new(4).unwrap();
        let ball = tree.ball(5);
        let mut rng = rng_from_seed(9);
        for e in [EdgeAddr::new(v("-"), 2), EdgeAddr::new(v("13"), 4)] {
            let h1 = HalfTree::new(e.clone(), Side::Inner);
            for _ in 0..10 {
                let g = random_edge_fixator(&f, &e, 3, &mut rng);
                let (g1, g2) = tits_split(&g, &e).unwrap();
                assert!(g1.is_in_uf(&f) && g2.is_in_uf(&f));
                for x in &ball {
                    assert_eq!(g1.apply(&g2.apply(x)), g.apply(x));
                    if h1.contains(x) {
                        assert_eq!(g1.apply(x), *x);
                    } else {
                        assert_eq!(g2.apply(x), *x);
                    }
                }
            }
        }
    }

    #[test]
    fn mautner_examples() {
        let xi = End::new(vec![], vec![1, 2]).unwrap();
        let (t, h) = mautner_sequence(&Portrait::identity(3), &xi, 3).unwrap();
        assert!(t.is_identity() && h.is_identity());

        let g = Portrait::new(3, v("-"), [(v("13"), p("(1 2)"))]).unwrap();
        let (t, h) = mautner_sequence(&g, &xi, 4).unwrap();
        assert!(h.is_identity());
        assert_eq!(t, g);

        let f = PermGroup::symmetric(3);
        let mut rng = rng_from_seed(1);
        for _ in 0..10 {
            let g = random_ray_fixator(&f, &xi, 5, &mut rng);
            for j in 0..9 {
                let (t, h) = mautner_sequence(&g, &xi, j).unwrap();
                assert_eq!(t.compose(&h), g);
                assert!(h.fixes_ball(j + 1));
            }
        }
    }

    #[test]
    fn generation_witness_examples() {
        let a = Portrait::left_translation(3, &v("12"));
        assert!(generation_witness(&Portrait::identity(3), &a).unwrap().is_empty());
        let g = Portrait::new(3, v("-"), [(v("-"), p("(2 3)"))]).unwrap();
        let factors = generation_witness(&g, &a).unwrap();
        let signs: Vec<Sign> = factors.iter().map(|f| f.sign).collect();
        assert_eq!(signs, [Sign::Plus, Sign::Minus]);
        assert_eq!(factors[0].element.compose(&factors[1].element), g);

        let plus_only = Portrait::new(3, v("-"), [(v("2"), p("(1 3)"))]).unwrap();
        let factors = generation_witness(&plus_only, &a).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].sign, Sign::Plus);
    }

    #[test]
    fn translation_between_edges() {
        let f = PermGroup::symmetric(3);
        let e = EdgeAddr::new(v("-"), 1);
        let e2 = EdgeAddr::new(v("12"), 1);
        let g = translation_mapping_edge(&e, &e2, &f).unwrap();
        assert_eq!(g.apply(&v("-")), v("12"));
        assert_eq!(g.apply(&v("1")), v("121"));
        assert_eq!(g.classify().length(), 2);
        assert!(g.is_in_uf_plus(&f).unwrap());

        assert_eq!(
            translation_mapping_edge(&e, &e2, &PermGroup::cyclic(5)),
            Err(DynamicsError::PlusHypotheses)
        );
        assert_eq!(
            translation_mapping_edge(&e, &EdgeAddr::new(v("1"), 2), &f),
            Err(DynamicsError::EvenEdgeDistance(0))
        );

        let d5 = PermGroup::dihedral(5);
        let g = translation_mapping_edge(&EdgeAddr::new(v("-"), 1), &EdgeAddr::new(v("1212"), 1), &d5).unwrap();
        assert!(g.locals().is_empty());
        assert_eq!(g.apply(&v("1")), v("12121"));
    }
}
