//! Board squares in little-endian rank-file order (a1 = 0, h8 = 63).

use std::fmt;
use std::str::FromStr;

/// A square index in `0..64`, a1 = 0, b1 = 1, ..., h8 = 63.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square(u8);

impl Square {
    /// Build from a raw index. Panics outside `0..64`.
    #[inline]
    pub const fn from_index(index: u8) -> Square {
        assert!(index < 64);
        Square(index)
    }

    /// Build from 0-based file (a = 0) and rank (1st = 0).
    #[inline]
    pub const fn new(file: u8, rank: u8) -> Square {
        assert!(file < 8 && rank < 8);
        Square(rank * 8 + file)
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    /// 0-based file, a = 0 .. h = 7.
    #[inline]
    pub const fn file(self) -> u8 {
        self.0 % 8
    }

    /// 0-based rank, first rank = 0 .. eighth rank = 7.
    #[inline]
    pub const fn rank(self) -> u8 {
        self.0 / 8
    }

    /// Offset by (file delta, rank delta); `None` if off the board.
    #[inline]
    pub fn offset(self, df: i8, dr: i8) -> Option<Square> {
        let f = self.file() as i8 + df;
        let r = self.rank() as i8 + dr;
        if (0..8).contains(&f) && (0..8).contains(&r) {
            Some(Square::new(f as u8, r as u8))
        } else {
            None
        }
    }

    /// All 64 squares in index order.
    pub fn all() -> impl Iterator<Item = Square> {
        (0..64u8).map(Square)
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}",
            (b'a' + self.file()) as char,
            (b'1' + self.rank()) as char
        )
    }
}

/// Error parsing an algebraic square name.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid square name `{0}`")]
pub struct ParseSquareError(pub String);

impl FromStr for Square {
    type Err = ParseSquareError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        if bytes.len() == 2
            && (b'a'..=b'h').contains(&bytes[0])
            && (b'1'..=b'8').contains(&bytes[1])
        {
            Ok(Square::new(bytes[0] - b'a', bytes[1] - b'1'))
        } else {
            Err(ParseSquareError(s.to_owned()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corners() {
        assert_eq!(Square::from_index(0).to_string(), "a1");
        assert_eq!(Square::from_index(7).to_string(), "h1");
        assert_eq!(Square::from_index(56).to_string(), "a8");
        assert_eq!(Square::from_index(63).to_string(), "h8");
    }

    #[test]
    fn parse_round_trip() {
        for sq in Square::all() {
            assert_eq!(sq.to_string().parse::<Square>().unwrap(), sq);
        }
        assert!("i1".parse::<Square>().is_err());
        assert!("a9".parse::<Square>().is_err());
        assert!("e".parse::<Square>().is_err());
    }

    #[test]
    fn offsets() {
        let e4: Square = "e4".parse().unwrap();
        assert_eq!(e4.offset(0, 1), Some("e5".parse().unwrap()));
        assert_eq!(e4.offset(-4, 0), Some("a4".parse().unwrap()));
        assert_eq!(e4.offset(-5, 0), None);
        assert_eq!(e4.offset(0, 5), None);
    }
}
