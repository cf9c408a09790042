//! Coalitions as bitmasks and player permutations.

use std::fmt;

use crate::error::{Error, Result};

/// Exact coalition enumeration is capped at 24 players (2^24 claims).
pub const MAX_EXACT_PLAYERS: usize = 24;

/// A coalition of players, encoded as a bitmask. Player `i` (0-based)
/// is a member iff bit `i` is set. The empty coalition is allowed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coalition(u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn from_mask(mask: u32) -> Self {
        Coalition(mask)
    }

    /// The grand coalition of `n` players.
    pub fn grand(n: usize) -> Self {
        debug_assert!(n <= 32);
        if n == 32 {
            Coalition(u32::MAX)
        } else {
            Coalition((1u32 << n) - 1)
        }
    }

    pub fn singleton(player: usize) -> Self {
        Coalition(1 << player)
    }

    pub fn from_players<I: IntoIterator<Item = usize>>(players: I) -> Self {
        let mut mask = 0;
        for p in players {
            mask |= 1 << p;
        }
        Coalition(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, player: usize) -> bool {
        self.0 & (1 << player) != 0
    }

    pub fn insert(self, player: usize) -> Self {
        Coalition(self.0 | (1 << player))
    }

    pub fn remove(self, player: usize) -> Self {
        Coalition(self.0 & !(1 << player))
    }

    /// Members in increasing player order.
    pub fn players(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let p = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(p)
            }
        })
    }

    /// All 2^n coalitions of `n` players, in mask order.
    pub fn all(n: usize) -> impl Iterator<Item = Coalition> {
        debug_assert!(n <= MAX_EXACT_PLAYERS);
        (0..(1u32 << n)).map(Coalition)
    }

    /// Errors unless every member is a valid player index below `n`.
    pub fn check_players(self, n: usize) -> Result<()> {
        if n < 32 && self.0 >> n != 0 {
            Err(Error::InvalidCoalition { mask: self.0, n })
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coalition({:#b})", self.0)
    }
}

/// Displays 1-based member lists, e.g. `{1,3}`.
impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, p) in self.players().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p + 1)?;
        }
        write!(f, "}}")
    }
}

/// A bijection on player indices `0..n`. `rho.apply(x)[i] = x[rho(i)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// Validates that `map` is a bijection on `0..map.len()`.
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &i in &map {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation { n });
            }
            seen[i] = true;
        }
        Ok(Permutation(map))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// The transposition of players `a` and `b`.
    pub fn swap(n: usize, a: usize, b: usize) -> Result<Self> {
        if a >= n || b >= n {
            return Err(Error::InvalidPermutation { n });
        }
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(a, b);
        Ok(Permutation(map))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn map(&self) -> &[usize] {
        &self.0
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.0[i]
    }

    /// Coordinate permutation: `out[i] = values[rho(i)]`.
    pub fn apply<T: Clone>(&self, values: &[T]) -> Vec<T> {
        self.0.iter().map(|&i| values[i].clone()).collect()
    }

    /// Image of a coalition: `{rho(i) : i in s}`.
    pub fn image(&self, s: Coalition) -> Coalition {
        Coalition::from_players(s.players().map(|i| self.0[i]))
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coalition_members_round_trip() {
        let s = Coalition::from_players([0, 2]);
        assert_eq!(s.mask(), 0b101);
        assert_eq!(s.players().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(s.len(), 2);
        assert!(s.contains(2) && !s.contains(1));
        assert_eq!(format!("{s}"), "{1,3}");
    }

    #[test]
    fn empty_and_grand() {
        assert!(Coalition::EMPTY.is_empty());
        assert_eq!(Coalition::grand(3).mask(), 0b111);
        assert_eq!(Coalition::all(2).count(), 4);
    }

    #[test]
    fn out_of_range_coalition_rejected() {
        let s = Coalition::from_players([3]);
        assert_eq!(
            s.check_players(2),
            Err(Error::InvalidCoalition { mask: 0b1000, n: 2 })
        );
        assert!(s.check_players(4).is_ok());
    }

    #[test]
    fn permutation_must_be_bijection() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![1, 2]).is_err());
        assert!(Permutation::new(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn permutation_inverse_composes_to_identity() {
        let rho = Permutation::new(vec![2, 0, 1]).unwrap();
        let inv = rho.inverse();
        let x = [10, 20, 30];
        assert_eq!(inv.apply(&rho.apply(&x)), x.to_vec());
    }

    #[test]
    fn coalition_image_under_swap() {
        let rho = Permutation::swap(3, 0, 1).unwrap();
        let s = Coalition::from_players([0, 2]);
        assert_eq!(rho.image(s), Coalition::from_players([1, 2]));
    }
}
