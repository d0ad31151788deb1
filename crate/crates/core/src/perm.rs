//! Permutations of `{0..n-1}` stored as image sequences.
//!
//! Points are always `0..n-1`. The image sequence is the canonical form:
//! equality, hashing and ordering all go through it, so "lexicographically
//! least permutation" means least image sequence.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Degrees up to 16 stay inline; anything larger spills to the heap.
type Images = SmallVec<[u8; 16]>;

/// A bijection of `{0..n-1}`, `images[i]` being the image of point `i`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Images,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= u8::MAX as usize + 1, "degree beyond desk scale");
        Permutation {
            images: (0..degree).map(|i| i as u8).collect(),
        }
    }

    /// Builds a permutation from an image sequence, verifying bijectivity.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > u8::MAX as usize + 1 {
            return Err(Error::DegreeTooLarge {
                degree: n,
                max: u8::MAX as usize + 1,
            });
        }
        let mut seen = vec![false; n];
        for &img in images {
            if img >= n {
                return Err(Error::NotAPermutation {
                    degree: n,
                    reason: format!("image {img} out of range"),
                });
            }
            if seen[img] {
                return Err(Error::NotAPermutation {
                    degree: n,
                    reason: format!("image {img} repeated"),
                });
            }
            seen[img] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&i| i as u8).collect(),
        })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    /// Overlapping cycles are rejected.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(Error::Parse(format!(
                        "point {p} out of range for degree {degree}"
                    )));
                }
                if moved[p] {
                    return Err(Error::Parse(format!("point {p} appears in two cycles")));
                }
                moved[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i as u8 == img)
    }

    /// `self.compose(other)` applies `other` first: `x ↦ self(other(x))`.
    /// Written multiplicatively, `g.compose(&h)` is `gh` acting on the left.
    #[inline]
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&m| self.images[m as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = Images::from_elem(0, self.images.len());
        for (i, &img) in self.images.iter().enumerate() {
            inv[img as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// `g⁻¹ · self · g`, i.e. the action of `self` transported along `g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().compose(&self.compose(g))
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let mut base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Order of the permutation as a group element (lcm of cycle lengths).
    pub fn order(&self) -> usize {
        self.cycles_with_fixed()
            .into_iter()
            .map(|c| c.len())
            .fold(1, num_integer::lcm)
    }

    /// Nontrivial cycles, each rotated so its least point is first, sorted
    /// by least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles_with_fixed()
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect()
    }

    fn cycles_with_fixed(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Multiset of nontrivial cycle lengths, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self
            .cycles_with_fixed()
            .into_iter()
            .map(|c| c.len())
            .filter(|&l| l > 1)
            .collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// Moved points, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.apply(i) != i).collect()
    }

    /// True when the permutation is a single cycle through all points.
    pub fn is_full_cycle(&self) -> bool {
        let n = self.degree();
        if n == 0 {
            return false;
        }
        let mut p = self.apply(0);
        let mut len = 1;
        while p != 0 {
            p = self.apply(p);
            len += 1;
        }
        len == n
    }

    /// Parses disjoint-cycle notation, e.g. `(0 1 2)(3 4)`; `()` is the
    /// identity. Points not mentioned are fixed.
    pub fn parse_cycles(degree: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let mut cycles = Vec::new();
        let mut rest = s;
        if !rest.starts_with('(') && !rest.is_empty() {
            return Err(Error::Parse(format!("expected '(' in {s:?}")));
        }
        while let Some(open) = rest.find('(') {
            let close = rest[open..]
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {s:?}")))?
                + open;
            let body = &rest[open + 1..close];
            let points: Vec<usize> = body
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point {tok:?} in {s:?}")))
                })
                .collect::<Result<_>>()?;
            let mut sorted = points.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != points.len() {
                return Err(Error::Parse(format!("repeated point within a cycle in {s:?}")));
            }
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = &rest[close + 1..];
        }
        if !rest.trim().is_empty() {
            return Err(Error::Parse(format!("trailing input {rest:?}")));
        }
        Permutation::from_cycles(degree, &cycles)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Debug delegates to Display so witnesses print in cycle notation.
impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(degree: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(degree, s).unwrap()
    }

    #[test]
    fn identity_and_cycles() {
        let id = Permutation::identity(4);
        assert!(id.is_identity());
        assert_eq!(id.to_string(), "()");
        let p = perm(5, "(0 1 2)(3 4)");
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.apply(2), 0);
        assert_eq!(p.apply(4), 3);
        assert_eq!(p.to_string(), "(0 1 2)(3 4)");
        assert_eq!(p.order(), 6);
        assert_eq!(p.cycle_type(), vec![3, 2]);
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let a = perm(3, "(0 1)");
        let b = perm(3, "(1 2)");
        // (a·b)(2) = a(b(2)) = a(1) = 0
        assert_eq!(a.compose(&b).apply(2), 0);
    }

    #[test]
    fn support_and_full_cycle() {
        assert_eq!(perm(4, "(0 1)(2 3)").support(), vec![0, 1, 2, 3]);
        assert!(Permutation::identity(3).support().is_empty());
        assert!(perm(4, "(0 1 2 3)").is_full_cycle());
        assert!(!perm(4, "(0 1)(2 3)").is_full_cycle());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(&[0, 0, 1]).is_err());
        assert!(Permutation::from_images(&[0, 3, 1]).is_err());
        assert!(Permutation::parse_cycles(3, "(0 1)(1 2)").is_err());
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just(()).prop_perturb(move |_, mut rng| {
            let mut images: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = rng.random_range(0..=i);
                images.swap(i, j);
            }
            Permutation::from_images(&images).unwrap()
        })
    }

    proptest! {
        #[test]
        fn compose_inverse_is_identity(p in arb_perm(9)) {
            prop_assert!(p.compose(&p.inverse()).is_identity());
            prop_assert!(p.inverse().compose(&p).is_identity());
        }

        #[test]
        fn display_parse_round_trip(p in arb_perm(9)) {
            let parsed = Permutation::parse_cycles(9, &p.to_string()).unwrap();
            prop_assert_eq!(parsed, p);
        }

        #[test]
        fn conjugation_preserves_cycle_type(p in arb_perm(8), g in arb_perm(8)) {
            prop_assert_eq!(p.conjugate_by(&g).cycle_type(), p.cycle_type());
        }
    }
}
