use std::fmt;

use super::{check_degree, plus_hypotheses_hold, ElementError, Portrait, TreeAutomorphism};
use crate::permgroup::{Perm, PermGroup};
use crate::tree::{End, VertexAddr};
use crate::Color;

/// A translation along the periodic colored line through `x₀`.
///
/// The line has vertices `ℓ_i` (`i ∈ ℤ`, `ℓ_0 = x₀`) and the edge
/// `{ℓ_i, ℓ_{i+1}}` has color `c_i = period_colors[i mod P]`. The element maps
/// `ℓ_i ↦ ℓ_{i+shift}` with local action `period_perms[i mod P]` at `ℓ_i`;
/// every branch hanging off `ℓ_i` is carried over with that same local
/// action. Such elements need infinitely many nontrivial locals and so have
/// no finite portrait in general.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LineElement {
    degree: u8,
    period_colors: Vec<Color>,
    period_perms: Vec<Perm>,
    shift: usize,
}

impl LineElement {
    pub fn new(
        degree: u8,
        period_colors: Vec<Color>,
        period_perms: Vec<Perm>,
        shift: usize,
    ) -> Result<Self, ElementError> {
        check_degree(degree)?;
        let p = period_colors.len();
        if p < 2
            || period_colors.iter().any(|&c| c == 0 || c > degree)
            || (0..p).any(|i| period_colors[i] == period_colors[(i + 1) % p])
        {
            return Err(ElementError::BadLineColors);
        }
        if period_perms.len() != p {
            return Err(ElementError::PeriodLength {
                expected: p,
                found: period_perms.len(),
            });
        }
        if shift == 0 || shift % 2 == 1 {
            return Err(ElementError::BadShift(shift));
        }
        let line = LineElement {
            degree,
            period_colors,
            period_perms,
            shift,
        };
        for (i, perm) in line.period_perms.iter().enumerate() {
            if perm.degree() != degree {
                return Err(ElementError::PermDegree {
                    vertex: line.line_vertex(i as i64),
                    expected: degree,
                    found: perm.degree(),
                });
            }
            let i = i as i64;
            let s = shift as i64;
            if perm.apply(line.color(i - 1)) != line.color(i - 1 + s) || perm.apply(line.color(i)) != line.color(i + s)
            {
                return Err(ElementError::LineConstraint { position: i as usize });
            }
        }
        Ok(line)
    }

    /// Translation by `shift` with trivial local actions; needs the color
    /// pattern to repeat with period dividing `shift`.
    pub fn uniform(degree: u8, period_colors: Vec<Color>, shift: usize) -> Result<Self, ElementError> {
        let perms = vec![Perm::identity(degree); period_colors.len()];
        LineElement::new(degree, period_colors, perms, shift)
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn period_colors(&self) -> &[Color] {
        &self.period_colors
    }

    pub fn period_perms(&self) -> &[Perm] {
        &self.period_perms
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn period(&self) -> usize {
        self.period_colors.len()
    }

    /// Color of the edge `{ℓ_i, ℓ_{i+1}}`.
    pub fn color(&self, i: i64) -> Color {
        self.period_colors[i.rem_euclid(self.period() as i64) as usize]
    }

    fn perm_at(&self, i: i64) -> &Perm {
        &self.period_perms[i.rem_euclid(self.period() as i64) as usize]
    }

    pub fn line_vertex(&self, i: i64) -> VertexAddr {
        let word: Vec<Color> = if i >= 0 {
            (0..i).map(|k| self.color(k)).collect()
        } else {
            (1..=-i).map(|k| self.color(-k)).collect()
        };
        VertexAddr::from_reduced(word)
    }

    /// Index of the nearest line vertex and the remaining off-line path.
    fn project<'a>(&self, v: &'a VertexAddr) -> (i64, &'a [Color]) {
        let w = v.word();
        if w.first() == Some(&self.color(0)) {
            let k = w
                .iter()
                .enumerate()
                .take_while(|(k, &c)| c == self.color(*k as i64))
                .count();
            (k as i64, &w[k..])
        } else if w.first() == Some(&self.color(-1)) {
            let k = w
                .iter()
                .enumerate()
                .take_while(|(k, &c)| c == self.color(-(*k as i64) - 1))
                .count();
            (-(k as i64), &w[k..])
        } else {
            (0, w)
        }
    }

    /// `self^k` for `k ≥ 1`.
    pub fn power(&self, k: usize) -> LineElement {
        assert!(k >= 1, "power must be positive");
        let s = self.shift as i64;
        let perms = (0..self.period() as i64)
            .map(|i| {
                let mut acc = Perm::identity(self.degree);
                for j in 0..k as i64 {
                    acc = self.perm_at(i + j * s).compose(&acc);
                }
                acc
            })
            .collect();
        LineElement {
            degree: self.degree,
            period_colors: self.period_colors.clone(),
            period_perms: perms,
            shift: self.shift * k,
        }
    }

    /// `by ∘ self ∘ by⁻¹`.
    pub fn conjugate_by(&self, by: &Portrait) -> ConjugatedLine {
        ConjugatedLine {
            conj: by.clone(),
            conj_inv: by.inverse(),
            line: self.clone(),
        }
    }

    /// End `ℓ_{+∞}`.
    pub fn attracting_end(&self) -> End {
        End::new(Vec::new(), self.period_colors.clone()).expect("line colors cyclically reduced")
    }

    /// End `ℓ_{−∞}`.
    pub fn repelling_end(&self) -> End {
        let period = (1..=self.period() as i64).map(|k| self.color(-k)).collect();
        End::new(Vec::new(), period).expect("line colors cyclically reduced")
    }

    pub fn is_in_uf(&self, group: &PermGroup) -> bool {
        group.degree() == self.degree && self.period_perms.iter().all(|p| group.contains(p))
    }

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
        Ok(self.is_in_uf(group) && self.shift.is_multiple_of(2))
    }
}

impl TreeAutomorphism for LineElement {
    fn degree(&self) -> u8 {
        self.degree
    }

    fn apply(&self, v: &VertexAddr) -> VertexAddr {
        let (i, rest) = self.project(v);
        let tau = self.perm_at(i);
        let mut out = self.line_vertex(i + self.shift as i64);
        for &c in rest {
            out.push_reduce(tau.apply(c));
        }
        out
    }

    fn local_action(&self, v: &VertexAddr) -> Perm {
        let (i, _) = self.project(v);
        self.perm_at(i).clone()
    }
}

impl fmt::Debug for LineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LineElement{{line: {}, shift: {}, perms: {:?}}}",
            crate::tree::format_word(&self.period_colors),
            self.shift,
            self.period_perms
        )
    }
}

/// A line translation conjugated by a portrait, `c ∘ line ∘ c⁻¹`.
#[derive(Clone, Debug)]
pub struct ConjugatedLine {
    conj: Portrait,
    conj_inv: Portrait,
    line: LineElement,
}

impl ConjugatedLine {
    pub fn line(&self) -> &LineElement {
        &self.line
    }

    pub fn conjugator(&self) -> &Portrait {
        &self.conj
    }

    pub fn attracting_end(&self) -> End {
        self.conj.map_end(&self.line.attracting_end())
    }

    pub fn repelling_end(&self) -> End {
        self.conj.map_end(&self.line.repelling_end())
    }
}

impl TreeAutomorphism for ConjugatedLine {
    fn degree(&self) -> u8 {
        self.line.degree
    }

    fn apply(&self, v: &VertexAddr) -> VertexAddr {
        self.conj.apply(&self.line.apply(&self.conj_inv.apply(v)))
    }

    fn local_action(&self, v: &VertexAddr) -> Perm {
        let u = self.conj_inv.apply(v);
        let lu = self.line.apply(&u);
        self.conj
            .local_action(&lu)
            .compose(&self.line.local_action(&u))
            .compose(&self.conj_inv.local_action(v))
    }
}
