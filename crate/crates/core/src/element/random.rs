//! Seeded random elements of `U(F)` with prescribed fixed sets.
//!
//! Every generator picks effective local actions `τ(v) ∈ F` by a walk away
//! from a fixed anchor vertex: a vertex `v` reached from `w` along an edge of
//! color `b` gets a uniformly random `τ(v)` with `τ(v)(b) = τ(w)(b)`, plus any
//! extra fixed colors the caller asks for. Outside the walked region each
//! vertex copies the local action of the region vertex it hangs from.

use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Portrait, TreeAutomorphism};
use crate::permgroup::{Perm, PermGroup};
use crate::tree::{EdgeAddr, End, HalfTree, Tree, VertexAddr};
use crate::Color;

/// Deterministic generator used throughout the crate.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A half-tree fixator sample. `group_trivial` records that the whole
/// fixator is trivial (all point stabilizers of `F` are trivial), in which
/// case `element` is the identity.
#[derive(Clone, Debug)]
pub struct Fixator {
    pub element: Portrait,
    pub group_trivial: bool,
}

fn pick<'a, R: Rng + ?Sized>(group: &'a PermGroup, rng: &mut R, constraints: &[(Color, Color)]) -> &'a Perm {
    let options: Vec<&Perm> = group
        .elements()
        .iter()
        .filter(|p| constraints.iter().all(|&(a, b)| p.apply(a) == b))
        .collect();
    options
        .choose(rng)
        .copied()
        .expect("constraints are always met by the neighbour's local action")
}

fn edge_color(a: &VertexAddr, b: &VertexAddr) -> Color {
    if b.len() > a.len() { b.last() } else { a.last() }.expect("adjacent vertices")
}

fn neighbours(degree: u8, v: &VertexAddr) -> impl Iterator<Item = VertexAddr> + '_ {
    (1..=degree).map(move |c| v.reduce_append(c))
}

/// Local-action assignment on a finite subtree containing a fixed anchor.
struct TauWalk {
    degree: u8,
    anchor: VertexAddr,
    tau: HashMap<VertexAddr, Perm>,
}

impl TauWalk {
    /// Walks outward from `anchor` to distance `radius`. `frozen` vertices
    /// (and everything behind them) get the identity and are not expanded;
    /// `extra_fixed(v)` lists colors `τ(v)` must fix.
    fn run<R: Rng + ?Sized>(
        group: &PermGroup,
        anchor: VertexAddr,
        anchor_fixed: &[Color],
        radius: usize,
        frozen: impl Fn(&VertexAddr) -> bool,
        extra_fixed: impl Fn(&VertexAddr) -> Vec<Color>,
        rng: &mut R,
    ) -> TauWalk {
        let degree = group.degree();
        let mut tau = HashMap::new();
        let constraints: Vec<(Color, Color)> = anchor_fixed.iter().map(|&c| (c, c)).collect();
        tau.insert(anchor.clone(), pick(group, rng, &constraints).clone());
        let mut queue = VecDeque::from([(anchor.clone(), 0usize)]);
        while let Some((w, r)) = queue.pop_front() {
            if r == radius {
                continue;
            }
            for v in neighbours(degree, &w) {
                if tau.contains_key(&v) {
                    continue;
                }
                if frozen(&v) {
                    tau.insert(v, Perm::identity(degree));
                    continue;
                }
                let b = edge_color(&w, &v);
                let mut cons = vec![(b, tau[&w].apply(b))];
                cons.extend(extra_fixed(&v).into_iter().map(|c| (c, c)));
                let p = pick(group, rng, &cons).clone();
                tau.insert(v.clone(), p);
                queue.push_back((v, r + 1));
            }
        }
        TauWalk { degree, anchor, tau }
    }

    fn local(&self, v: &VertexAddr) -> &Perm {
        v.geodesic_to(&self.anchor)
            .iter()
            .find_map(|x| self.tau.get(x))
            .expect("anchor carries a local action")
    }

    fn image(&self, v: &VertexAddr) -> VertexAddr {
        let path = self.anchor.geodesic_to(v);
        let mut img = self.anchor.clone();
        for pair in path.windows(2) {
            let c = edge_color(&pair[0], &pair[1]);
            img.push_reduce(self.local(&pair[0]).apply(c));
        }
        img
    }

    fn into_portrait(self) -> Portrait {
        let mut candidates: Vec<VertexAddr> = vec![VertexAddr::root()];
        for v in self.tau.keys() {
            candidates.push(v.clone());
            candidates.extend(neighbours(self.degree, v));
        }
        let root = self.image(&VertexAddr::root());
        let p = Portrait::from_local_actions(self.degree, root, candidates, |v| self.local(v).clone());
        debug_assert_eq!(p.apply(&self.anchor), self.anchor);
        p
    }
}

/// Root fixed, uniformly random local actions in `F` on `B(x₀, depth−1)`.
pub fn random_vertex_stabilizer_element<R: Rng + ?Sized>(group: &PermGroup, depth: usize, rng: &mut R) -> Portrait {
    random_vertex_fixator(group, &VertexAddr::root(), depth, rng)
}

/// Fixes `v`, random local actions on `B(v, depth−1)`.
pub fn random_vertex_fixator<R: Rng + ?Sized>(
    group: &PermGroup,
    v: &VertexAddr,
    depth: usize,
    rng: &mut R,
) -> Portrait {
    if depth == 0 {
        return Portrait::identity(group.degree());
    }
    TauWalk::run(group, v.clone(), &[], depth - 1, |_| false, |_| Vec::new(), rng).into_portrait()
}

/// Fixes both endpoints of `e`, random local actions within distance
/// `depth−1` of its endpoints.
pub fn random_edge_fixator<R: Rng + ?Sized>(group: &PermGroup, e: &EdgeAddr, depth: usize, rng: &mut R) -> Portrait {
    if depth == 0 {
        return Portrait::identity(group.degree());
    }
    TauWalk::run(
        group,
        e.inner().clone(),
        &[e.color()],
        depth,
        |_| false,
        |_| Vec::new(),
        rng,
    )
    .into_portrait()
}

/// Fixes the half-tree `h` pointwise; random local actions within distance
/// `depth−1` of the opposite endpoint.
pub fn random_half_tree_fixator<R: Rng + ?Sized>(
    group: &PermGroup,
    h: &HalfTree,
    depth: usize,
    rng: &mut R,
) -> Fixator {
    let d = group.degree();
    let group_trivial = (1..=d).all(|c| group.point_stabilizer(c).expect("color in range").is_trivial());
    if depth == 0 || group_trivial {
        return Fixator {
            element: Portrait::identity(d),
            group_trivial,
        };
    }
    let anchor = h.complement().root();
    let element = TauWalk::run(
        group,
        anchor,
        &[h.edge.color()],
        depth - 1,
        |v| h.contains(v),
        |_| Vec::new(),
        rng,
    )
    .into_portrait();
    Fixator { element, group_trivial }
}

/// Fixes the ray `[x₀, ξ)` pointwise (hence fixes `ξ` and is elliptic);
/// random local actions on `B(x₀, depth−1)` off the ray.
pub fn random_ray_fixator<R: Rng + ?Sized>(group: &PermGroup, xi: &End, depth: usize, rng: &mut R) -> Portrait {
    let radius = depth.saturating_sub(1);
    // The last walked ray vertex must fix every later ray color, since the
    // ray beyond it copies its local action.
    let ray_fixed = |v: &VertexAddr| -> Vec<Color> {
        let n = v.len();
        if *v != xi.ray_vertex(n) {
            Vec::new()
        } else if n < radius {
            vec![xi.letter(n)]
        } else {
            let tail = xi.preperiod().len().max(n) + xi.period().len();
            (n..tail).map(|i| xi.letter(i)).collect()
        }
    };
    let anchor_fixed = ray_fixed(&VertexAddr::root());
    TauWalk::run(
        group,
        VertexAddr::root(),
        &anchor_fixed,
        radius,
        |_| false,
        ray_fixed,
        rng,
    )
    .into_portrait()
}

/// A general element: `left_translation(w) ∘ k`, with `|w|` uniform in
/// `0..=depth`, `w` uniform on that sphere, and `k` a random root stabilizer
/// of the given depth.
pub fn random_portrait<R: Rng + ?Sized>(group: &PermGroup, depth: usize, rng: &mut R) -> Portrait {
    let tree = Tree::new(group.degree()).expect("degree checked by the group");
    let len = rng.gen_range(0..=depth);
    let words: Vec<VertexAddr> = tree.sphere(len).collect();
    let w = words.choose(rng).expect("spheres are nonempty").clone();
    Portrait::left_translation(group.degree(), &w).compose(&random_vertex_stabilizer_element(group, depth, rng))
}

/// Uniform random word of length `n`.
pub fn random_word<R: Rng + ?Sized>(degree: u8, n: usize, rng: &mut R) -> VertexAddr {
    let mut v = VertexAddr::root();
    for _ in 0..n {
        let prev = v.last();
        let c = loop {
            let c = rng.gen_range(1..=degree);
            if Some(c) != prev {
                break c;
            }
        };
        v.push_reduce(c);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::Side;

    fn v(s: &str) -> VertexAddr {
        s.parse().unwrap()
    }

    #[test]
    fn vertex_stabilizer_fixes_root_and_lies_in_uf() {
        let f = PermGroup::dihedral(5);
        let mut rng = rng_from_seed(7);
        for _ in 0..20 {
            let g = random_vertex_stabilizer_element(&f, 3, &mut rng);
            assert!(g.root_image().is_root());
            assert!(g.is_in_uf(&f));
            assert!(g.support_hull() <= 2);
        }
    }

    #[test]
    fn half_tree_fixator_fixes_half_tree() {
        let f = PermGroup::symmetric(3);
        let h = HalfTree::new(EdgeAddr::new(v("-"), 1), Side::Outer);
        let tree = Tree::new(3).unwrap();
        let mut rng = rng_from_seed(3);
        for _ in 0..20 {
            let s = random_half_tree_fixator(&f, &h, 3, &mut rng);
            assert!(!s.group_trivial);
            let g = s.element;
            assert!(g.is_in_uf(&f));
            for x in tree.ball(5).into_iter().filter(|x| h.contains(x)) {
                assert_eq!(g.apply(&x), x);
            }
            let at_root = g.local_action(&v("-"));
            assert!(at_root.fixes(1));
        }
    }

    #[test]
    fn half_tree_fixator_on_far_side() {
        let f = PermGroup::symmetric(4);
        let h = HalfTree::new(EdgeAddr::new(v("21"), 3), Side::Inner);
        let tree = Tree::new(4).unwrap();
        let mut rng = rng_from_seed(11);
        let mut nontrivial = false;
        for _ in 0..10 {
            let g = random_half_tree_fixator(&f, &h, 3, &mut rng).element;
            nontrivial |= !g.is_identity();
            assert!(g.is_in_uf(&f));
            for x in tree.ball(6) {
                if h.contains(&x) {
                    assert_eq!(g.apply(&x), x);
                }
            }
        }
        assert!(nontrivial);
    }

    #[test]
    fn cyclic_prime_half_tree_fixators_trivial() {
        let f = PermGroup::cyclic(5);
        let h = HalfTree::new(EdgeAddr::new(v("-"), 2), Side::Inner);
        let s = random_half_tree_fixator(&f, &h, 4, &mut rng_from_seed(0));
        assert!(s.group_trivial);
        assert!(s.element.is_identity());
    }

    #[test]
    fn edge_and_ray_fixators() {
        let f = PermGroup::symmetric(4);
        let e = EdgeAddr::new(v("12"), 3);
        let xi = End::new(vec![], vec![1, 2]).unwrap();
        let mut rng = rng_from_seed(5);
        for _ in 0..10 {
            let g = random_edge_fixator(&f, &e, 3, &mut rng);
            assert_eq!(g.apply(e.inner()), *e.inner());
            assert_eq!(g.apply(&e.outer()), e.outer());
            let r = random_ray_fixator(&f, &xi, 4, &mut rng);
            for n in 0..12 {
                assert_eq!(r.apply(&xi.ray_vertex(n)), xi.ray_vertex(n));
            }
        }
    }

    #[test]
    fn seeds_reproduce() {
        let f = PermGroup::symmetric(3);
        let a = random_portrait(&f, 3, &mut rng_from_seed(42));
        let b = random_portrait(&f, 3, &mut rng_from_seed(42));
        assert_eq!(a, b);
    }
}
