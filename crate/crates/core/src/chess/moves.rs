//! Moves (plies) and castling rights.

use std::fmt;

use super::piece::{Color, PieceKind};
use super::square::Square;

/// Flag bits carried by a [`Move`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MoveFlags(u8);

impl MoveFlags {
    pub const NONE: MoveFlags = MoveFlags(0);
    pub const CAPTURE: MoveFlags = MoveFlags(1);
    pub const EN_PASSANT: MoveFlags = MoveFlags(1 << 1 | 1);
    pub const CASTLE_KING: MoveFlags = MoveFlags(1 << 2);
    pub const CASTLE_QUEEN: MoveFlags = MoveFlags(1 << 3);
    pub const DOUBLE_PUSH: MoveFlags = MoveFlags(1 << 4);

    #[inline]
    pub const fn is_capture(self) -> bool {
        self.0 & 1 != 0
    }

    #[inline]
    pub const fn is_en_passant(self) -> bool {
        self.0 & (1 << 1) != 0
    }

    #[inline]
    pub const fn is_castle(self) -> bool {
        self.0 & (1 << 2 | 1 << 3) != 0
    }

    #[inline]
    pub const fn is_castle_king(self) -> bool {
        self.0 & (1 << 2) != 0
    }

    #[inline]
    pub const fn is_castle_queen(self) -> bool {
        self.0 & (1 << 3) != 0
    }

    #[inline]
    pub const fn is_double_push(self) -> bool {
        self.0 & (1 << 4) != 0
    }
}

/// A single ply: one piece displaced, plus the bookkeeping flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub from: Square,
    pub to: Square,
    pub piece: PieceKind,
    pub promotion: Option<PieceKind>,
    pub flags: MoveFlags,
}

impl Move {
    pub fn new(
        from: Square,
        to: Square,
        piece: PieceKind,
        promotion: Option<PieceKind>,
        flags: MoveFlags,
    ) -> Move {
        debug_assert!(
            promotion.is_none() || (piece == PieceKind::Pawn && matches!(to.rank(), 0 | 7)),
            "promotion only on pawn moves to a back rank"
        );
        debug_assert!(!flags.is_castle() || piece == PieceKind::King);
        Move {
            from,
            to,
            piece,
            promotion,
            flags,
        }
    }

    /// Sort key giving the stable (from, to, promotion) move order.
    #[inline]
    pub fn ordering_key(&self) -> (u8, u8, u8) {
        (
            self.from.index() as u8,
            self.to.index() as u8,
            self.promotion.map(|k| k.index() as u8).unwrap_or(0),
        )
    }
}

impl fmt::Display for Move {
    /// Coordinate notation: `e2e4`, `e7e8q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.from, self.to)?;
        if let Some(kind) = self.promotion {
            write!(f, "{}", kind.letter().to_ascii_lowercase())?;
        }
        Ok(())
    }
}

/// The four castling rights, packed into one byte.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CastlingRights(u8);

impl CastlingRights {
    pub const NONE: CastlingRights = CastlingRights(0);
    pub const ALL: CastlingRights = CastlingRights(0b1111);

    #[inline]
    const fn bit(color: Color, king_side: bool) -> u8 {
        1 << (color.index() * 2 + if king_side { 0 } else { 1 })
    }

    #[inline]
    pub const fn has(self, color: Color, king_side: bool) -> bool {
        self.0 & Self::bit(color, king_side) != 0
    }

    #[inline]
    pub fn set(&mut self, color: Color, king_side: bool) {
        self.0 |= Self::bit(color, king_side);
    }

    #[inline]
    pub fn clear(&mut self, color: Color, king_side: bool) {
        self.0 &= !Self::bit(color, king_side);
    }

    #[inline]
    pub fn clear_color(&mut self, color: Color) {
        self.0 &= !(Self::bit(color, true) | Self::bit(color, false));
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Index in `0..16` for hashing.
    #[inline]
    pub const fn raw(self) -> u8 {
        self.0
    }

    /// True if every right in `self` is also present in `other`.
    #[inline]
    pub const fn subset_of(self, other: CastlingRights) -> bool {
        self.0 & !other.0 == 0
    }
}

impl fmt::Display for CastlingRights {
    /// FEN castling field: `KQkq` or `-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        if self.has(Color::White, true) {
            f.write_str("K")?;
        }
        if self.has(Color::White, false) {
            f.write_str("Q")?;
        }
        if self.has(Color::Black, true) {
            f.write_str("k")?;
        }
        if self.has(Color::Black, false) {
            f.write_str("q")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags() {
        assert!(MoveFlags::EN_PASSANT.is_capture());
        assert!(MoveFlags::EN_PASSANT.is_en_passant());
        assert!(!MoveFlags::CAPTURE.is_en_passant());
        assert!(MoveFlags::CASTLE_KING.is_castle());
        assert!(MoveFlags::CASTLE_QUEEN.is_castle());
        assert!(!MoveFlags::CASTLE_KING.is_castle_queen());
    }

    #[test]
    fn coordinate_notation() {
        let m = Move::new(
            "e7".parse().unwrap(),
            "e8".parse().unwrap(),
            PieceKind::Pawn,
            Some(PieceKind::Queen),
            MoveFlags::NONE,
        );
        assert_eq!(m.to_string(), "e7e8q");
    }

    #[test]
    fn castling_rights_fen() {
        let mut rights = CastlingRights::ALL;
        assert_eq!(rights.to_string(), "KQkq");
        rights.clear_color(Color::White);
        assert_eq!(rights.to_string(), "kq");
        rights.clear(Color::Black, false);
        assert_eq!(rights.to_string(), "k");
        assert!(rights.subset_of(CastlingRights::ALL));
        rights.clear_color(Color::Black);
        assert_eq!(rights.to_string(), "-");
    }
}
