//! Per-group invariant batteries, each comparing the toolkit against a
//! brute-force oracle.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::certificates::{
    check_bipartition, check_equal_stabilizer_line, check_hyp_ends_obstruction, check_second_trans, Dsu,
};
use super::{CheckResult, GroupSpec, Status, SuiteConfig};
use crate::dynamics::{
    conjugation_criterion, contraction_membership, generation_witness, half_tree_criterion, mautner_sequence,
    tits_split, Classify, ElementClass, Sign,
};
use crate::element::random::{
    random_edge_fixator, random_half_tree_fixator, random_portrait, random_ray_fixator, random_word, rng_from_seed,
};
use crate::element::{Portrait, TreeAutomorphism};
use crate::orbits::{boundary_orbit_growth, sphere_orbit_count, Verdict};
use crate::permgroup::PermGroup;
use crate::tree::{dist, EdgeAddr, End, HalfTree, Side, Tree, VertexAddr};

type Outcome = Result<String, String>;

struct Ctx<'a> {
    name: &'a str,
    group: &'a PermGroup,
    tree: Tree,
    depth: usize,
    samples: usize,
    rng: ChaCha8Rng,
    out: Vec<CheckResult>,
}

impl Ctx<'_> {
    fn record(&mut self, check: &str, outcome: Outcome) {
        let (status, detail) = match outcome {
            Ok(d) => (Status::Pass, d),
            Err(d) => (Status::Fail, d),
        };
        self.out.push(CheckResult::new(check, self.name, status, detail));
    }

    fn skip(&mut self, check: &str, why: &str) {
        self.out.push(CheckResult::new(check, self.name, Status::Skip, why));
    }

    /// Element sample depth, kept small so ball checks stay cheap.
    fn element_depth(&self) -> usize {
        self.depth.clamp(1, 3)
    }

    fn ball_radius(&self) -> usize {
        self.depth.min(5)
    }
}

pub(super) fn run_group(spec: &GroupSpec, group: &PermGroup, config: &SuiteConfig, seed: u64) -> Vec<CheckResult> {
    let mut ctx = Ctx {
        name: &spec.name,
        group,
        tree: Tree::new(group.degree()).expect("degree checked when building"),
        depth: config.depth,
        samples: config.samples,
        rng: rng_from_seed(seed),
        out: Vec::new(),
    };
    expectations(&mut ctx, spec);
    permgroup_battery(&mut ctx);
    element_battery(&mut ctx);
    dynamics_battery(&mut ctx);
    orbit_battery(&mut ctx);
    certificate_battery(&mut ctx);
    ctx.out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn expectations(ctx: &mut Ctx, spec: &GroupSpec) {
    let g = ctx.group;
    if let Some(order) = spec.expect_order {
        let outcome = if g.order() == order {
            Ok(format!("order={order}"))
        } else {
            Err(format!("order={} expected {order}", g.order()))
        };
        ctx.record("expect.order", outcome);
    }
    if let Some(two) = spec.expect_2transitive {
        let got = g.is_2transitive();
        let outcome = if got == two {
            Ok(format!("2transitive={}", yes_no(got)))
        } else {
            Err(format!("2transitive={} expected {}", yes_no(got), yes_no(two)))
        };
        ctx.record("expect.2transitive", outcome);
    }
    if let Some(prim) = spec.expect_primitive {
        let got = g.is_primitive();
        let outcome = if got == prim {
            Ok(format!("primitive={}", yes_no(got)))
        } else {
            Err(format!("primitive={} expected {}", yes_no(got), yes_no(prim)))
        };
        ctx.record("expect.primitive", outcome);
    }
    if let Some(expected) = &spec.expect_orbits {
        let got: Vec<u128> = (1..=expected.len()).map(|n| sphere_orbit_count(g, n)).collect();
        let outcome = if &got == expected {
            Ok(format!("o={got:?}"))
        } else {
            Err(format!("o={got:?} expected {expected:?}"))
        };
        ctx.record("expect.orbits", outcome);
    }
}

fn permgroup_battery(ctx: &mut Ctx) {
    let g = ctx.group;
    let d = g.degree();
    let outcome = (1..=d)
        .find(|&c| g.point_stabilizer(c).expect("in range").order() * g.orbit(c).len() != g.order())
        .map_or(Ok(format!("{d} colors")), |c| Err(format!("fails at color {c}")));
    ctx.record("permgroup.orbit_stabilizer", outcome);

    if d <= 6 {
        let all = (1..=d).all(|a| {
            (1..=d)
                .all(|b| a == b || (1..=d).all(|c| (1..=d).all(|e| c == e || g.transporter((a, b), (c, e)).is_some())))
        });
        let outcome = if all == g.is_2transitive() {
            Ok(format!("2transitive={}", yes_no(all)))
        } else {
            Err(format!("predicate {} vs transporter scan {}", g.is_2transitive(), all))
        };
        ctx.record("permgroup.transporters", outcome);
    }

    let (t2, p, t) = (g.is_2transitive(), g.is_primitive(), g.is_transitive());
    let outcome = if (!t2 || p) && (!p || t) {
        Ok(format!(
            "2transitive={} primitive={} transitive={}",
            yes_no(t2),
            yes_no(p),
            yes_no(t)
        ))
    } else {
        Err(format!("2transitive={t2} primitive={p} transitive={t}"))
    };
    ctx.record("permgroup.hierarchy", outcome);
}

fn element_battery(ctx: &mut Ctx) {
    let g = ctx.group;
    let depth = ctx.element_depth();
    let ball = ctx.tree.ball(ctx.ball_radius());
    let id = Portrait::identity(g.degree());

    let mut failure = None;
    for i in 0..ctx.samples {
        let [f, h, k] = [(); 3].map(|_| random_portrait(g, depth, &mut ctx.rng));
        let assoc = f.compose(&h).compose(&k) == f.compose(&h.compose(&k));
        let ident = id.compose(&f) == f && f.compose(&id) == f;
        let inv = f.compose(&f.inverse()).is_identity() && f.inverse().compose(&f).is_identity();
        let fh = f.compose(&h);
        let hom = ball.iter().all(|v| fh.apply(v) == f.apply(&h.apply(v)));
        if !(assoc && ident && inv && hom) {
            failure = Some(format!(
                "sample {i}: assoc={assoc} identity={ident} inverse={inv} apply={hom}"
            ));
            break;
        }
    }
    ctx.record(
        "element.group_laws",
        failure.map_or(
            Ok(format!("{} triples on B(x0,{})", ctx.samples, ctx.ball_radius())),
            Err,
        ),
    );

    let mut failure = None;
    for i in 0..ctx.samples {
        let f = random_portrait(g, depth, &mut ctx.rng);
        let images: Vec<VertexAddr> = ball.iter().map(|v| f.apply(v)).collect();
        let pairs_ok = (0..200).all(|_| {
            let a = ctx.rng.gen_range(0..ball.len());
            let b = ctx.rng.gen_range(0..ball.len());
            dist(&ball[a], &ball[b]) == dist(&images[a], &images[b])
        });
        let mut sorted = images.clone();
        sorted.sort();
        sorted.dedup();
        if !pairs_ok || sorted.len() != images.len() {
            failure = Some(format!("sample {i} is not an isometry on the ball"));
            break;
        }
        let h = random_portrait(g, depth, &mut ctx.rng);
        if !(f.compose(&h).is_in_uf(g) && f.inverse().is_in_uf(g)) {
            failure = Some(format!("sample {i}: U(F) not closed"));
            break;
        }
    }
    ctx.record(
        "element.isometry_and_closure",
        failure.map_or(Ok(format!("{} samples", ctx.samples)), Err),
    );

    let r = if g.degree() <= 4 { 3 } else { 2 };
    let words = ctx.tree.ball(r);
    let bad = words.iter().find_map(|w| {
        let lw = Portrait::left_translation(g.degree(), w);
        words.iter().find_map(|w2| {
            let lhs = lw.compose(&Portrait::left_translation(g.degree(), w2));
            (lhs != Portrait::left_translation(g.degree(), &w.mul(w2))).then(|| format!("{w}·{w2}"))
        })
    });
    ctx.record(
        "element.free_product_law",
        bad.map_or(Ok(format!("|w|,|w'| <= {r}")), |w| Err(format!("fails for {w}"))),
    );
}

/// Brute-force check of a classification over `B(x₀, hull + 2)`.
fn classify_oracle(g: &Portrait, tree: &Tree) -> Result<(), String> {
    let class = g.classify();
    let ball = tree.ball(g.support_hull() + 2);
    let disp = |v: &VertexAddr| dist(v, &g.apply(v));
    let min = ball.iter().map(disp).min().expect("nonempty ball");
    let flips = ball.iter().any(|v| disp(v) == 1 && g.apply(&g.apply(v)) == *v);
    match &class {
        ElementClass::Elliptic { fixed } => {
            if min != 0 || g.apply(fixed) != *fixed {
                return Err(format!("{class} but min displacement {min}"));
            }
        }
        ElementClass::Inversion { edge } => {
            let (u, w) = edge.endpoints();
            if min != 1 || !flips || g.apply(&u) != w || g.apply(&w) != u {
                return Err(format!("{class} but min displacement {min}"));
            }
        }
        ElementClass::Hyperbolic {
            length,
            axis,
            attracting,
            repelling,
        } => {
            if min != *length || flips || min == 0 {
                return Err(format!("{class} but min displacement {min}"));
            }
            if axis.iter().any(|v| disp(v) != *length) {
                return Err(format!("{class}: axis vertex not in Min(g)"));
            }
            let inv = g.inverse();
            let (mut fwd, mut back) = (axis[0].clone(), axis[0].clone());
            for n in 1..=6 {
                fwd = g.apply(&fwd);
                back = inv.apply(&back);
                if attracting.ray_vertex(fwd.len()) != fwd || repelling.ray_vertex(back.len()) != back {
                    return Err(format!("{class}: ends disagree with g^±{n}"));
                }
            }
        }
    }
    Ok(())
}

fn random_hyperbolic(group: &PermGroup, depth: usize, rng: &mut ChaCha8Rng) -> Portrait {
    for _ in 0..200 {
        let a = random_portrait(group, depth.max(2), rng);
        if a.classify().is_hyperbolic() {
            return a;
        }
    }
    Portrait::left_translation(group.degree(), &VertexAddr::reduce([1, 2]))
}

fn random_edge(tree: &Tree, rng: &mut ChaCha8Rng, max_depth: usize) -> EdgeAddr {
    let inner = random_word(tree.degree(), rng.gen_range(0..=max_depth), rng);
    let colors: Vec<u8> = (1..=tree.degree()).filter(|&c| Some(c) != inner.last()).collect();
    EdgeAddr::new(inner, *colors.choose(rng).expect("d >= 2"))
}

fn dynamics_battery(ctx: &mut Ctx) {
    let g = ctx.group;
    let depth = ctx.element_depth();
    let tree = ctx.tree;

    let mut failure = None;
    let mut hyperbolic = 0;
    for i in 0..ctx.samples {
        let f = random_portrait(g, depth, &mut ctx.rng);
        if let Err(e) = classify_oracle(&f, &tree) {
            failure = Some(format!("sample {i}: {e}"));
            break;
        }
        let class = f.classify();
        if class.is_hyperbolic() {
            hyperbolic += 1;
            if f.is_type_preserving() && class.length() % 2 == 1 {
                failure = Some(format!("sample {i}: type-preserving with odd length"));
                break;
            }
        }
    }
    ctx.record(
        "dynamics.classify",
        failure.map_or(Ok(format!("{} samples, {hyperbolic} hyperbolic", ctx.samples)), Err),
    );

    let ball = tree.ball(ctx.ball_radius() + 1);
    let mut failure = None;
    for i in 0..ctx.samples {
        let e = random_edge(&tree, &mut ctx.rng, 2);
        let f = random_edge_fixator(g, &e, depth, &mut ctx.rng);
        let (g1, g2) = match tits_split(&f, &e) {
            Ok(s) => s,
            Err(err) => {
                failure = Some(format!("sample {i}: {err}"));
                break;
            }
        };
        let t1 = HalfTree::new(e.clone(), Side::Inner);
        let ok = ball.iter().all(|v| {
            g1.apply(&g2.apply(v)) == f.apply(v)
                && if t1.contains(v) {
                    g1.apply(v) == *v
                } else {
                    g2.apply(v) == *v
                }
        });
        if !ok || !g1.is_in_uf(g) || !g2.is_in_uf(g) {
            failure = Some(format!("sample {i}: split of {f:?} at {e} wrong"));
            break;
        }
    }
    ctx.record(
        "dynamics.tits_split",
        failure.map_or(Ok(format!("{} edge fixators", ctx.samples)), Err),
    );

    let mut failure = None;
    let mut members = 0;
    for i in 0..ctx.samples {
        let a = random_hyperbolic(g, depth, &mut ctx.rng);
        let f = contraction_candidate(g, &a, depth, &mut ctx.rng);
        let half = half_tree_criterion(&f, &a);
        let conj = conjugation_criterion(&f, &a, 6);
        match (half, conj) {
            (Ok(h), Ok(c)) if h == c.is_some() => {
                members += h as usize;
            }
            (h, c) => {
                failure = Some(format!("sample {i}: half-tree {h:?} vs conjugation {c:?}"));
                break;
            }
        }
    }
    ctx.record(
        "dynamics.contraction_duality",
        failure.map_or(Ok(format!("{} pairs, {members} members", ctx.samples)), Err),
    );

    let mut failure = None;
    for i in 0..ctx.samples {
        let a = random_hyperbolic(g, depth, &mut ctx.rng);
        let ElementClass::Hyperbolic { axis, .. } = a.classify() else {
            unreachable!("random_hyperbolic")
        };
        let e = EdgeAddr::from_endpoints(&axis[0], &axis[1]).expect("axis edge");
        let f = random_edge_fixator(g, &e, depth, &mut ctx.rng);
        if let Err(msg) = verify_generation(&f, &a) {
            failure = Some(format!("sample {i}: {msg}"));
            break;
        }
    }
    ctx.record(
        "dynamics.generation_witness",
        failure.map_or(Ok(format!("{} axis-edge fixators", ctx.samples)), Err),
    );

    let mut failure = None;
    let check_ball = tree.ball(ctx.ball_radius() + 2);
    for i in 0..ctx.samples {
        let xi = random_end(&tree, &mut ctx.rng);
        let f = random_ray_fixator(g, &xi, depth + 1, &mut ctx.rng);
        if let Err(msg) = verify_mautner(&f, &xi, &check_ball, 8) {
            failure = Some(format!("sample {i}: {msg}"));
            break;
        }
    }
    ctx.record(
        "dynamics.mautner",
        failure.map_or(Ok(format!("{} ray fixators, j=0..8", ctx.samples)), Err),
    );
}

/// Either a random root stabilizer element or a random fixator of a
/// half-tree toward the attracting end, so both outcomes occur.
fn contraction_candidate(group: &PermGroup, a: &Portrait, depth: usize, rng: &mut ChaCha8Rng) -> Portrait {
    let ElementClass::Hyperbolic { attracting, .. } = a.classify() else {
        unreachable!("hyperbolic")
    };
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(0..=depth);
        let e = EdgeAddr::new(attracting.ray_vertex(k), attracting.letter(k));
        let h = HalfTree::new(e, Side::Outer);
        random_half_tree_fixator(group, &h, depth, rng).element
    } else {
        crate::element::random::random_vertex_stabilizer_element(group, depth, rng)
    }
}

pub(crate) fn verify_generation(f: &Portrait, a: &Portrait) -> Result<(), String> {
    let factors = generation_witness(f, a).map_err(|e| e.to_string())?;
    let product = factors
        .iter()
        .fold(Portrait::identity(f.degree()), |acc, x| acc.compose(&x.element));
    if product != *f {
        return Err("factors do not multiply to g".into());
    }
    let a_inv = a.inverse();
    for x in &factors {
        let base = if x.sign == Sign::Plus { a } else { &a_inv };
        let c = contraction_membership(&x.element, base).map_err(|e| e.to_string())?;
        if !c.member {
            return Err(format!("factor tagged {} is not contracted", x.sign));
        }
    }
    Ok(())
}

pub(crate) fn verify_mautner(f: &Portrait, xi: &End, ball: &[VertexAddr], max_j: usize) -> Result<(), String> {
    let hull = f.support_hull();
    for j in 0..=max_j {
        let (t, h) = mautner_sequence(f, xi, j).map_err(|e| e.to_string())?;
        if t.compose(&h) != *f {
            return Err(format!("j={j}: t_j h_j != g"));
        }
        let e = EdgeAddr::new(xi.ray_vertex(j), xi.letter(j));
        let xi_side = HalfTree::new(e, Side::Outer);
        for v in ball {
            if xi_side.contains(v) && t.apply(v) != *v {
                return Err(format!("j={j}: t_j moves {v}"));
            }
            if v.len() + hull <= j && h.apply(v) != *v {
                return Err(format!("j={j}: h_j moves {v}"));
            }
        }
    }
    Ok(())
}

pub(crate) fn random_end(tree: &Tree, rng: &mut ChaCha8Rng) -> End {
    loop {
        let pre = random_word(tree.degree(), rng.gen_range(0..=2), rng).into_word();
        let len = rng.gen_range(2..=3);
        let period = random_word(tree.degree(), len, rng).into_word();
        if let Ok(end) = End::new(pre, period) {
            return end;
        }
    }
}

/// `K`-orbits on the sphere by union-find over single-vertex generators.
pub(crate) fn union_find_sphere_orbits(group: &PermGroup, n: usize) -> usize {
    let tree = Tree::new(group.degree()).expect("valid degree");
    let sphere: Vec<VertexAddr> = tree.sphere(n).collect();
    let index: HashMap<&VertexAddr, usize> = sphere.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut dsu = Dsu::new(sphere.len());
    for v in tree.ball(n.saturating_sub(1)) {
        let stab = match v.last() {
            None => group.clone(),
            Some(b) => group.point_stabilizer(b).expect("in range"),
        };
        for sigma in stab.generators() {
            let gen = Portrait::new(group.degree(), VertexAddr::root(), [(v.clone(), sigma.clone())])
                .expect("stabilizer entry fixes the backward color");
            for (i, w) in sphere.iter().enumerate() {
                dsu.union(i, index[&gen.apply(w)]);
            }
        }
    }
    dsu.components()
}

fn orbit_battery(ctx: &mut Ctx) {
    let g = ctx.group;
    let growth = boundary_orbit_growth(g, ctx.depth.max(2));
    let color_orbits = g.orbits(&(1..=g.degree()).collect::<Vec<_>>()).len() as u128;
    let monotone = growth.counts.windows(2).all(|w| w[0] <= w[1]);
    let outcome = if growth.counts[0] != color_orbits {
        Err(format!("o_1={} but {color_orbits} color orbits", growth.counts[0]))
    } else if g.is_transitive() && !(monotone && growth.matches_2transitive) {
        Err(format!(
            "o={:?} verdict={} 2transitive={}",
            growth.counts,
            growth.verdict,
            yes_no(g.is_2transitive())
        ))
    } else {
        Ok(format!("o={:?} verdict={}", growth.counts, growth.verdict))
    };
    ctx.record("orbits.growth", outcome);
    if g.is_primitive() && !g.is_2transitive() && growth.verdict != Verdict::Growing {
        ctx.record("orbits.primitive_not_2transitive", Err("expected growth".into()));
    }

    let max_n = ctx.depth.min(if g.degree() <= 5 { 4 } else { 3 });
    let bad = (0..=max_n).find(|&n| union_find_sphere_orbits(g, n) as u128 != sphere_orbit_count(g, n));
    ctx.record(
        "orbits.union_find_oracle",
        bad.map_or(Ok(format!("n <= {max_n}")), |n| Err(format!("mismatch at n={n}"))),
    );
}

fn certificate_battery(ctx: &mut Ctx) {
    let g = ctx.group;
    let checks = [
        "harness.hyp_ends_obstruction",
        "harness.second_trans",
        "harness.equal_stabilizer_line",
        "harness.bipartition",
    ];
    if g.is_cyclic_of_prime_order() {
        for c in checks {
            ctx.skip(c, "U(F)+ trivial (F cyclic of prime order)");
        }
        return;
    }
    if !g.is_transitive() {
        for c in checks {
            ctx.skip(c, "F not transitive");
        }
        return;
    }
    let two = g.is_2transitive();

    let outcome = match check_hyp_ends_obstruction(g, 2) {
        Ok(None) if two => Ok("none (2-transitive)".to_string()),
        Ok(Some(cert)) if !two => Ok(cert.to_string()),
        Ok(other) => Err(format!("2transitive={} but got {other:?}", yes_no(two))),
        Err(e) => Err(e.to_string()),
    };
    ctx.record(checks[0], outcome);

    let outcome = match check_second_trans(g) {
        Ok(v) if v.is_positive() == two => Ok(format!(
            "{}{v}",
            if g.is_generated_by_point_stabilizers() {
                ""
            } else {
                "(F not generated by point stabilizers) "
            }
        )),
        Ok(v) => Err(format!("2transitive={} but {v}", yes_no(two))),
        Err(e) => Err(e.to_string()),
    };
    ctx.record(checks[1], outcome);

    let outcome = match check_equal_stabilizer_line(g) {
        Ok(Some(line)) if g.is_primitive() => Err(format!("primitive F with F_{} = F_{}", line.j, line.k)),
        Ok(Some(line)) => Ok(format!("F_{} = F_{}; h: {}", line.j, line.k, line.class)),
        Ok(None) => Ok("none".to_string()),
        Err(e) => Err(e.to_string()),
    };
    ctx.record(checks[2], outcome);

    if g.is_generated_by_point_stabilizers() {
        let r = ctx.depth.min(4);
        let b = check_bipartition(g, r);
        let outcome = if b.orbits == 2 && b.root_orbit_even {
            Ok(format!("2 orbits on B(x0,{r}), x0 orbit = even words"))
        } else {
            Err(format!("{} orbits, root orbit even={}", b.orbits, b.root_orbit_even))
        };
        ctx.record(checks[3], outcome);
    } else {
        ctx.skip(checks[3], "F not generated by point stabilizers");
    }
}
