//! The Klein four-group Z2×Z2 with the colour names used throughout the crate.
//!
//! Elements are two-bit values with XOR as addition: `R = 01`, `G = 10`,
//! `B = 11`. Every element is its own inverse, so chains need no edge
//! orientation.

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Gf4 {
    #[default]
    Zero = 0,
    R = 1,
    G = 2,
    B = 3,
}

impl Gf4 {
    pub const ALL: [Gf4; 4] = [Gf4::Zero, Gf4::R, Gf4::G, Gf4::B];
    pub const NONZERO: [Gf4; 3] = [Gf4::R, Gf4::G, Gf4::B];

    pub const fn from_bits(bits: u8) -> Gf4 {
        match bits & 3 {
            0 => Gf4::Zero,
            1 => Gf4::R,
            2 => Gf4::G,
            _ => Gf4::B,
        }
    }

    pub const fn bits(self) -> u8 {
        self as u8
    }

    pub const fn is_zero(self) -> bool {
        matches!(self, Gf4::Zero)
    }

    pub fn to_char(self) -> char {
        match self {
            Gf4::Zero => '0',
            Gf4::R => 'R',
            Gf4::G => 'G',
            Gf4::B => 'B',
        }
    }

    pub fn from_char(c: char) -> Result<Gf4> {
        match c {
            '0' => Ok(Gf4::Zero),
            'R' | 'r' => Ok(Gf4::R),
            'G' | 'g' => Ok(Gf4::G),
            'B' | 'b' => Ok(Gf4::B),
            other => Err(Error::Malformed(format!("`{other}` is not one of 0, R, G, B"))),
        }
    }

    /// Index of a non-zero element in `NONZERO`.
    pub(crate) fn colour_index(self) -> Option<usize> {
        match self {
            Gf4::Zero => None,
            c => Some(c as usize - 1),
        }
    }
}

impl Add for Gf4 {
    type Output = Gf4;

    // characteristic two
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf4) -> Gf4 {
        Gf4::from_bits(self.bits() ^ rhs.bits())
    }
}

impl AddAssign for Gf4 {
    fn add_assign(&mut self, rhs: Gf4) {
        *self = *self + rhs;
    }
}

impl std::iter::Sum for Gf4 {
    fn sum<I: Iterator<Item = Gf4>>(iter: I) -> Gf4 {
        iter.fold(Gf4::Zero, |a, b| a + b)
    }
}

impl fmt::Display for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A group automorphism of Z2×Z2: a permutation of the three non-zero
/// elements, fixing zero. All six permutations are automorphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ColourPerm {
    images: [Gf4; 3],
}

impl ColourPerm {
    pub const IDENTITY: ColourPerm = ColourPerm { images: [Gf4::R, Gf4::G, Gf4::B] };

    /// All six automorphisms, identity first, in a fixed order.
    pub fn all() -> [ColourPerm; 6] {
        use Gf4::{B, G, R};
        [
            ColourPerm { images: [R, G, B] },
            ColourPerm { images: [R, B, G] },
            ColourPerm { images: [G, R, B] },
            ColourPerm { images: [G, B, R] },
            ColourPerm { images: [B, R, G] },
            ColourPerm { images: [B, G, R] },
        ]
    }

    /// The permutation sending `R`, `G`, `B` to the given images.
    pub fn from_images(images: [Gf4; 3]) -> Result<ColourPerm> {
        let mut seen = [false; 3];
        for c in images {
            let i = c
                .colour_index()
                .ok_or_else(|| Error::Precondition("colour permutation cannot map to 0".into()))?;
            if seen[i] {
                return Err(Error::Precondition("colour permutation images repeat".into()));
            }
            seen[i] = true;
        }
        Ok(ColourPerm { images })
    }

    pub fn apply(&self, x: Gf4) -> Gf4 {
        match x.colour_index() {
            None => Gf4::Zero,
            Some(i) => self.images[i],
        }
    }

    pub fn inverse(&self) -> ColourPerm {
        let mut images = [Gf4::R; 3];
        for (i, img) in self.images.iter().enumerate() {
            images[img.colour_index().expect("non-zero image")] = Gf4::NONZERO[i];
        }
        ColourPerm { images }
    }

    pub fn images(&self) -> [Gf4; 3] {
        self.images
    }
}

/// A sequence of group elements, written with the characters `0RGB`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryString(pub Vec<Gf4>);

impl BoundaryString {
    pub fn parse(s: &str) -> Result<BoundaryString> {
        s.chars().map(Gf4::from_char).collect::<Result<Vec<_>>>().map(BoundaryString)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, x: Gf4) -> usize {
        self.0.iter().filter(|&&a| a == x).count()
    }

    pub fn nonzero_count(&self) -> usize {
        self.0.iter().filter(|a| !a.is_zero()).count()
    }

    pub fn map_colours(&self, p: &ColourPerm) -> BoundaryString {
        BoundaryString(self.0.iter().map(|&a| p.apply(a)).collect())
    }

    /// Parity congruences: for each non-zero `a`, the number of non-zero
    /// entries and the number of `a` entries agree modulo 2.
    pub fn satisfies_parity(&self) -> bool {
        let nz = self.nonzero_count() % 2;
        Gf4::NONZERO.iter().all(|&a| self.count(a) % 2 == nz)
    }
}

impl fmt::Display for BoundaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.0 {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for BoundaryString {
    type Output = Gf4;

    fn index(&self, i: usize) -> &Gf4 {
        &self.0[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn elem() -> impl Strategy<Value = Gf4> {
        (0u8..4).prop_map(Gf4::from_bits)
    }

    #[test]
    fn colour_sums() {
        assert_eq!(Gf4::R + Gf4::G, Gf4::B);
        assert_eq!(Gf4::G + Gf4::B, Gf4::R);
        assert_eq!(Gf4::R + Gf4::B, Gf4::G);
        for x in Gf4::ALL {
            assert_eq!(x + x, Gf4::Zero);
            assert_eq!(x + Gf4::Zero, x);
        }
    }

    #[test]
    fn perms_are_automorphisms() {
        for p in ColourPerm::all() {
            for x in Gf4::ALL {
                for y in Gf4::ALL {
                    assert_eq!(p.apply(x + y), p.apply(x) + p.apply(y));
                }
                assert_eq!(p.inverse().apply(p.apply(x)), x);
            }
        }
    }

    #[test]
    fn parity_examples() {
        assert!(BoundaryString::parse("RRGGBB").unwrap().satisfies_parity());
        assert!(BoundaryString::parse("RGB00").unwrap().satisfies_parity());
        assert!(!BoundaryString::parse("RRG00").unwrap().satisfies_parity());
        assert!(!BoundaryString::parse("RRRRR").unwrap().satisfies_parity());
    }

    proptest! {
        #[test]
        fn group_laws(a in elem(), b in elem(), c in elem()) {
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!((a + b) + c, a + (b + c));
        }

        #[test]
        fn display_round_trips(v in proptest::collection::vec(elem(), 0..12)) {
            let s = BoundaryString(v);
            prop_assert_eq!(BoundaryString::parse(&s.to_string()).unwrap(), s);
        }
    }
}
