use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{check_degree, plus_hypotheses_hold, ElementError, TreeAutomorphism};
use crate::permgroup::{Perm, PermGroup};
use crate::tree::{End, VertexAddr};
use crate::{Color, MAX_DEGREE};

/// A tree automorphism given by its root image and finitely many relative
/// local permutations. Identity entries are never stored, so structural
/// equality is equality of automorphisms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Portrait {
    degree: u8,
    root: VertexAddr,
    locals: BTreeMap<VertexAddr, Perm>,
}

impl Portrait {
    pub fn new(
        degree: u8,
        root: VertexAddr,
        locals: impl IntoIterator<Item = (VertexAddr, Perm)>,
    ) -> Result<Self, ElementError> {
        check_degree(degree)?;
        let root = VertexAddr::new(root.into_word(), Some(degree))?;
        let mut map = BTreeMap::new();
        for (v, p) in locals {
            let v = VertexAddr::new(v.into_word(), Some(degree))?;
            if p.degree() != degree {
                return Err(ElementError::PermDegree {
                    vertex: v,
                    expected: degree,
                    found: p.degree(),
                });
            }
            if let Some(b) = v.last() {
                if !p.fixes(b) {
                    return Err(ElementError::BackwardColorMoved {
                        vertex: v,
                        perm: p,
                        color: b,
                    });
                }
            }
            if p.is_identity() {
                map.remove(&v);
            } else {
                map.insert(v, p);
            }
        }
        Ok(Portrait {
            degree,
            root,
            locals: map,
        })
    }

    pub fn identity(degree: u8) -> Self {
        Portrait {
            degree,
            root: VertexAddr::root(),
            locals: BTreeMap::new(),
        }
    }

    /// Left multiplication by the reduced word `w`: color preserving, so all
    /// local actions are trivial.
    pub fn left_translation(degree: u8, w: &VertexAddr) -> Self {
        Portrait {
            degree,
            root: w.clone(),
            locals: BTreeMap::new(),
        }
    }

    /// The color permutation `π` applied letterwise to every word.
    pub fn color_permutation(perm: &Perm) -> Self {
        let mut locals = BTreeMap::new();
        if !perm.is_identity() {
            locals.insert(VertexAddr::root(), perm.clone());
        }
        Portrait {
            degree: perm.degree(),
            root: VertexAddr::root(),
            locals,
        }
    }

    /// Builds a portrait from an effective local-action function. `candidates`
    /// must contain every vertex whose relative entry may be nontrivial.
    pub(crate) fn from_local_actions(
        degree: u8,
        root: VertexAddr,
        candidates: impl IntoIterator<Item = VertexAddr>,
        tau: impl Fn(&VertexAddr) -> Perm,
    ) -> Self {
        let mut locals = BTreeMap::new();
        let unique: BTreeSet<VertexAddr> = candidates.into_iter().collect();
        for v in unique {
            let t = tau(&v);
            let sigma = match v.parent() {
                None => t,
                Some(p) => tau(&p).inverse().compose(&t),
            };
            debug_assert!(v.last().is_none_or(|b| sigma.fixes(b)));
            if !sigma.is_identity() {
                locals.insert(v, sigma);
            }
        }
        Portrait { degree, root, locals }
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn root_image(&self) -> &VertexAddr {
        &self.root
    }

    pub fn locals(&self) -> &BTreeMap<VertexAddr, Perm> {
        &self.locals
    }

    pub fn support(&self) -> impl Iterator<Item = &VertexAddr> {
        self.locals.keys()
    }

    pub fn is_identity(&self) -> bool {
        self.root.is_root() && self.locals.is_empty()
    }

    /// Smallest `R` with the support, `x₀` and `g(x₀)` inside `B(x₀, R)`.
    pub fn support_hull(&self) -> usize {
        self.locals
            .keys()
            .map(|v| v.len())
            .chain(std::iter::once(self.root.len()))
            .max()
            .unwrap_or(0)
    }

    /// Whether every vertex of `B(x₀, r)` is fixed.
    pub fn fixes_ball(&self, r: usize) -> bool {
        self.root.is_root() && self.locals.keys().all(|v| v.len() >= r)
    }

    /// The vertex mapped to `target`.
    pub fn preimage(&self, target: &VertexAddr) -> VertexAddr {
        let path = self.root.geodesic_to(target);
        let mut p = VertexAddr::root();
        for pair in path.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            let color = if b.len() > a.len() { b.last() } else { a.last() }.expect("edge color");
            let c = self.local_action(&p).inverse().apply(color);
            p.push_reduce(c);
        }
        p
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Portrait) -> Portrait {
        assert_eq!(self.degree, other.degree, "degree mismatch in compose");
        if other.is_identity() {
            return self.clone();
        }
        if self.is_identity() {
            return other.clone();
        }
        let mut candidates: Vec<VertexAddr> = vec![VertexAddr::root()];
        candidates.extend(other.locals.keys().cloned());
        for s in self.locals.keys() {
            candidates.push(other.preimage(s));
            if let Some(p) = s.parent() {
                candidates.push(other.preimage(&p));
            }
        }
        let root = self.apply(&other.root);
        Portrait::from_local_actions(self.degree, root, candidates, |v| {
            self.local_action(&other.apply(v)).compose(&other.local_action(v))
        })
    }

    pub fn inverse(&self) -> Portrait {
        if self.locals.is_empty() {
            return Portrait::left_translation(self.degree, &self.root.inverse());
        }
        let mut candidates: Vec<VertexAddr> = vec![VertexAddr::root()];
        for s in self.locals.keys() {
            candidates.push(self.apply(s));
            if let Some(p) = s.parent() {
                candidates.push(self.apply(&p));
            }
        }
        let root = self.preimage(&VertexAddr::root());
        Portrait::from_local_actions(self.degree, root, candidates, |v| {
            self.local_action(&self.preimage(v)).inverse()
        })
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Portrait {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Portrait::identity(self.degree);
        let mut sq = base;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.compose(&sq);
            }
        }
        acc
    }

    /// `by ∘ self ∘ by⁻¹`.
    pub fn conjugate_by(&self, by: &Portrait) -> Portrait {
        by.compose(self).compose(&by.inverse())
    }

    /// Image of an eventually periodic end.
    pub fn map_end(&self, end: &End) -> End {
        let hull = self.support_hull();
        let pre = end.preperiod().len();
        let per = end.period().len();
        let need = 3 * hull + 1;
        let k = if need > pre { (need - pre).div_ceil(per) } else { 0 };
        let y = end.ray_vertex(pre + k * per);
        let image = self.apply(&y);
        let rho = self.local_action(&y);
        let period: Vec<Color> = end.period().iter().map(|&c| rho.apply(c)).collect();
        End::new(image.into_word(), period).expect("image of an end beyond the hull is reduced")
    }

    /// Every stored entry lies in `F`.
    pub fn is_in_uf(&self, group: &PermGroup) -> bool {
        group.degree() == self.degree && self.locals.values().all(|p| group.contains(p))
    }

    /// Membership in `U(F)⁺ = U(F) ∩ Aut(T)⁺`, licensed only when `F` is
    /// transitive and generated by point stabilizers.
    pub fn is_in_uf_plus(&self, group: &PermGroup) -> Result<bool, ElementError> {
        if group.degree() != self.degree {
            return Err(ElementError::GroupDegree {
                element: self.degree,
                group: group.degree(),
            });
        }
        if !plus_hypotheses_hold(group) {
            return Err(ElementError::PlusHypotheses);
        }
        Ok(self.is_in_uf(group) && self.is_type_preserving())
    }

    /// Even displacement of `x₀`, i.e. the bipartition is preserved.
    pub fn is_type_preserving(&self) -> bool {
        self.root.len().is_multiple_of(2)
    }
}

impl TreeAutomorphism for Portrait {
    fn degree(&self) -> u8 {
        self.degree
    }

    fn apply(&self, v: &VertexAddr) -> VertexAddr {
        let word = v.word();
        let mut out = self.root.clone();
        if self.locals.is_empty() {
            for &c in word {
                out.push_reduce(c);
            }
            return out;
        }
        // Running local action as an image table, indexed by color.
        let mut tau = [0 as Color; MAX_DEGREE as usize + 1];
        for c in 1..=self.degree {
            tau[c as usize] = c;
        }
        let absorb = |tau: &mut [Color; MAX_DEGREE as usize + 1], s: &Perm| {
            let prev = *tau;
            for c in 1..=self.degree {
                tau[c as usize] = prev[s.apply(c) as usize];
            }
        };
        if let Some(s) = self.locals.get(&[][..]) {
            absorb(&mut tau, s);
        }
        for k in 0..word.len() {
            out.push_reduce(tau[word[k] as usize]);
            if let Some(s) = self.locals.get(&word[..=k]) {
                absorb(&mut tau, s);
            }
        }
        out
    }

    fn local_action(&self, v: &VertexAddr) -> Perm {
        let word = v.word();
        let mut tau = Perm::identity(self.degree);
        for k in 0..=word.len() {
            if let Some(s) = self.locals.get(&word[..k]) {
                tau = tau.compose(s);
            }
        }
        tau
    }
}

impl fmt::Debug for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Portrait{{root: {}", self.root)?;
        for (v, p) in &self.locals {
            write!(f, ", {v}: {p}")?;
        }
        write!(f, "}}")
    }
}
