//! Membership in the contraction group `U⁺_a = {g : a⁻ⁿ g aⁿ → 1}`.
//!
//! For a finite portrait `g` let `y` be the vertex at depth `hull(g) + 1` on
//! the ray toward the attracting end `ξ₊` of `a`. Every vertex below `y`
//! carries the local action of `y`, so `g` fixes a half-tree containing `ξ₊`
//! exactly when `g(y) = y` and that local action is trivial.
//!
//! The conjugate `a⁻ⁿ g aⁿ` fixes `B(x₀, R)` iff `g` fixes `B(aⁿx₀, R)`. Once
//! `nℓ ≥ hull(g) + 1 + R` that ball sits below `y`, and fixing it is
//! equivalent to the half-tree condition; both tests are therefore exact.

use super::{Classify, DynamicsError, ElementClass};
use crate::element::{Portrait, TreeAutomorphism};

/// Radius of the ball on which conjugates are compared with the identity.
pub const CONJUGATION_RADIUS: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub member: bool,
    /// Least `n` from which on every conjugate `a⁻ᵐ g aᵐ` checked fixes
    /// `B(x₀, 6)`; present for members only.
    pub witness: Option<usize>,
}

fn hyperbolic(a: &Portrait) -> Result<(usize, crate::tree::End), DynamicsError> {
    match a.classify() {
        ElementClass::Hyperbolic { length, attracting, .. } => Ok((length, attracting)),
        other => Err(DynamicsError::NotHyperbolic(Box::new(other))),
    }
}

fn check_degrees(g: &Portrait, a: &Portrait) -> Result<(), DynamicsError> {
    if g.degree() != a.degree() {
        return Err(DynamicsError::DegreeMismatch(g.degree(), a.degree()));
    }
    Ok(())
}

/// `g` fixes pointwise a half-tree containing the attracting end of `a`.
pub fn half_tree_criterion(g: &Portrait, a: &Portrait) -> Result<bool, DynamicsError> {
    check_degrees(g, a)?;
    let (_, xi) = hyperbolic(a)?;
    let y = xi.ray_vertex(g.support_hull() + 1);
    Ok(g.apply(&y) == y && g.local_action(&y).is_identity())
}

/// Conjugation-limit test: `a⁻ⁿ g aⁿ` fixes `B(x₀, radius)` for every `n`
/// from the returned witness up to `⌈(hull(g) + 1 + radius) / ℓ⌉`, past which
/// the answer can no longer change. `None` means `g ∉ U⁺_a`.
pub fn conjugation_criterion(g: &Portrait, a: &Portrait, radius: usize) -> Result<Option<usize>, DynamicsError> {
    check_degrees(g, a)?;
    let (len, _) = hyperbolic(a)?;
    let bound = (g.support_hull() + 1 + radius).div_ceil(len);
    let a_inv = a.inverse();
    let mut fixes = Vec::with_capacity(bound + 1);
    let mut conj = g.clone();
    for n in 0..=bound {
        if n > 0 {
            conj = a_inv.compose(&conj).compose(a);
        }
        fixes.push(conj.fixes_ball(radius));
    }
    if !fixes[bound] {
        return Ok(None);
    }
    let first = (0..=bound).rev().take_while(|&n| fixes[n]).last().expect("bound fixes");
    Ok(Some(first))
}

/// Both criteria; they agree on every finite portrait.
pub fn contraction_membership(g: &Portrait, a: &Portrait) -> Result<Contraction, DynamicsError> {
    let member = half_tree_criterion(g, a)?;
    let witness = conjugation_criterion(g, a, CONJUGATION_RADIUS)?;
    debug_assert_eq!(member, witness.is_some());
    Ok(Contraction { member, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::Perm;
    use crate::tree::VertexAddr;

    fn v(s: &str) -> VertexAddr {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        let a = Portrait::left_translation(3, &v("12"));
        let id = Portrait::identity(3);
        assert_eq!(
            contraction_membership(&id, &a).unwrap(),
            Contraction {
                member: true,
                witness: Some(0)
            }
        );

        let g = Portrait::new(3, v("-"), [(v("2"), Perm::parse_cycles(3, "(1 3)").unwrap())]).unwrap();
        let c = contraction_membership(&g, &a).unwrap();
        assert!(c.member);
        let n = c.witness.unwrap();
        assert!(a.pow(-(n as i64)).compose(&g).compose(&a.pow(n as i64)).fixes_ball(6));

        let s = Portrait::new(3, v("-"), [(v("-"), Perm::parse_cycles(3, "(1 3)").unwrap())]).unwrap();
        assert_eq!(
            contraction_membership(&s, &a).unwrap(),
            Contraction {
                member: false,
                witness: None
            }
        );
    }

    #[test]
    fn deep_support_on_the_ray_is_not_contracted() {
        // Trivial on B(x₀, 6) for small n, yet moves the ray far out.
        let a = Portrait::left_translation(3, &v("12"));
        let deep = v("1212121212");
        let g = Portrait::new(3, v("-"), [(deep, Perm::parse_cycles(3, "(1 3)").unwrap())]).unwrap();
        assert!(!contraction_membership(&g, &a).unwrap().member);
        assert_eq!(conjugation_criterion(&g, &a, 6).unwrap(), None);
    }

    #[test]
    fn requires_hyperbolic() {
        let e = Portrait::left_translation(3, &v("1"));
        assert!(matches!(
            contraction_membership(&Portrait::identity(3), &e),
            Err(DynamicsError::NotHyperbolic(_))
        ));
    }
}
