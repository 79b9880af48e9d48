//! Full game state: board occupancy, side to move, castling rights,
//! en-passant target. Deliberately carries no halfmove clock or repetition
//! history, so positions are values and the move dynamics is memoryless.

use super::bitboard::Bitboard;
use super::moves::{CastlingRights, Move, MoveFlags};
use super::piece::{Color, Piece, PieceKind};
use super::square::Square;

/// An invariant the board state must satisfy; violations are reported by
/// [`Position::validate`] and the FEN parser.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantViolation {
    #[error("{color} has {count} kings, expected exactly 1")]
    KingCount { color: Color, count: u32 },
    #[error("{color} pawn on back rank at {square}")]
    PawnOnBackRank { color: Color, square: Square },
    #[error("{color} has {count} pawns, more than 8")]
    PawnCount { color: Color, count: u32 },
    #[error("{color} has {count} pieces, more than 16")]
    PieceCount { color: Color, count: u32 },
    #[error("en-passant square {square} invalid: {reason}")]
    EnPassant { square: Square, reason: String },
    #[error("castling right `{right}` without king and rook on their home squares")]
    CastlingPlacement { right: String },
    #[error("two pieces on square {square}")]
    OverlappingPieces { square: Square },
}

/// Attempt to apply a move that is not legal in the given position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("illegal move {mv} in position {fen}")]
pub struct IllegalMoveError {
    pub mv: String,
    pub fen: String,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Position {
    /// Piece sets indexed `[color][kind]`.
    pieces: [[Bitboard; 6]; 2],
    side_to_move: Color,
    castling: CastlingRights,
    en_passant: Option<Square>,
}

impl Position {
    /// The standard initial position.
    pub fn initial() -> Position {
        let mut pieces = [[Bitboard::EMPTY; 6]; 2];
        let back = [
            PieceKind::Rook,
            PieceKind::Knight,
            PieceKind::Bishop,
            PieceKind::Queen,
            PieceKind::King,
            PieceKind::Bishop,
            PieceKind::Knight,
            PieceKind::Rook,
        ];
        for (file, kind) in back.into_iter().enumerate() {
            pieces[0][kind.index()].insert(Square::new(file as u8, 0));
            pieces[1][kind.index()].insert(Square::new(file as u8, 7));
        }
        for file in 0..8 {
            pieces[0][PieceKind::Pawn.index()].insert(Square::new(file, 1));
            pieces[1][PieceKind::Pawn.index()].insert(Square::new(file, 6));
        }
        Position {
            pieces,
            side_to_move: Color::White,
            castling: CastlingRights::ALL,
            en_passant: None,
        }
    }

    /// Assemble from parts without validation. Callers outside the FEN parser
    /// should prefer [`Position::from_parts`].
    pub(crate) fn from_parts_unchecked(
        pieces: [[Bitboard; 6]; 2],
        side_to_move: Color,
        castling: CastlingRights,
        en_passant: Option<Square>,
    ) -> Position {
        Position {
            pieces,
            side_to_move,
            castling,
            en_passant,
        }
    }

    /// Assemble from parts, checking every type invariant.
    pub fn from_parts(
        pieces: [[Bitboard; 6]; 2],
        side_to_move: Color,
        castling: CastlingRights,
        en_passant: Option<Square>,
    ) -> Result<Position, InvariantViolation> {
        let pos = Position::from_parts_unchecked(pieces, side_to_move, castling, en_passant);
        pos.validate()?;
        Ok(pos)
    }

    #[inline]
    pub fn side_to_move(&self) -> Color {
        self.side_to_move
    }

    #[inline]
    pub fn castling(&self) -> CastlingRights {
        self.castling
    }

    #[inline]
    pub fn en_passant(&self) -> Option<Square> {
        self.en_passant
    }

    /// Squares holding pieces of `color` and `kind`.
    #[inline]
    pub fn piece_set(&self, color: Color, kind: PieceKind) -> Bitboard {
        self.pieces[color.index()][kind.index()]
    }

    /// All squares occupied by `color`.
    #[inline]
    pub fn occupied_by(&self, color: Color) -> Bitboard {
        let p = &self.pieces[color.index()];
        p[0] | p[1] | p[2] | p[3] | p[4] | p[5]
    }

    /// All occupied squares.
    #[inline]
    pub fn occupied(&self) -> Bitboard {
        self.occupied_by(Color::White) | self.occupied_by(Color::Black)
    }

    /// The piece on `sq`, if any.
    pub fn piece_at(&self, sq: Square) -> Option<Piece> {
        for color in Color::BOTH {
            for kind in PieceKind::ALL {
                if self.piece_set(color, kind).contains(sq) {
                    return Some(Piece::new(color, kind));
                }
            }
        }
        None
    }

    /// The kind of the `color` piece on `sq`, if any. Cheaper than
    /// [`Position::piece_at`] when the color is already known.
    #[inline]
    pub fn kind_at(&self, color: Color, sq: Square) -> Option<PieceKind> {
        let p = &self.pieces[color.index()];
        PieceKind::ALL.into_iter().find(|k| p[k.index()].contains(sq))
    }

    /// The square of `color`'s king. Panics if the king is absent, which a
    /// validated position rules out.
    #[inline]
    pub fn king_square(&self, color: Color) -> Square {
        self.piece_set(color, PieceKind::King)
            .first()
            .expect("position invariant: exactly one king per color")
    }

    /// Number of units (pieces and pawns) of `color` on the board.
    #[inline]
    pub fn unit_count(&self, color: Color) -> u32 {
        self.occupied_by(color).count()
    }

    /// Check every type invariant.
    pub fn validate(&self) -> Result<(), InvariantViolation> {
        // No two piece sets may overlap.
        let mut seen = Bitboard::EMPTY;
        for color in Color::BOTH {
            for kind in PieceKind::ALL {
                let set = self.piece_set(color, kind);
                let overlap = seen & set;
                if let Some(square) = overlap.first() {
                    return Err(InvariantViolation::OverlappingPieces { square });
                }
                seen |= set;
            }
        }
        for color in Color::BOTH {
            let kings = self.piece_set(color, PieceKind::King).count();
            if kings != 1 {
                return Err(InvariantViolation::KingCount {
                    color,
                    count: kings,
                });
            }
            let pawns = self.piece_set(color, PieceKind::Pawn);
            for square in pawns {
                if square.rank() == 0 || square.rank() == 7 {
                    return Err(InvariantViolation::PawnOnBackRank { color, square });
                }
            }
            if pawns.count() > 8 {
                return Err(InvariantViolation::PawnCount {
                    color,
                    count: pawns.count(),
                });
            }
            let total = self.unit_count(color);
            if total > 16 {
                return Err(InvariantViolation::PieceCount {
                    color,
                    count: total,
                });
            }
        }
        if let Some(ep) = self.en_passant {
            let (expected_rank, pusher) = match self.side_to_move {
                // White just to move: black double-pushed to rank 5, target on rank 6.
                Color::White => (5u8, Color::Black),
                Color::Black => (2u8, Color::White),
            };
            if ep.rank() != expected_rank {
                return Err(InvariantViolation::EnPassant {
                    square: ep,
                    reason: format!(
                        "must be on rank {} with {} to move",
                        expected_rank + 1,
                        self.side_to_move
                    ),
                });
            }
            if self.occupied().contains(ep) {
                return Err(InvariantViolation::EnPassant {
                    square: ep,
                    reason: "target square is occupied".to_owned(),
                });
            }
            let pawn_sq = Square::new(ep.file(), (ep.rank() as i8 - pusher.forward()) as u8);
            if !self.piece_set(pusher, PieceKind::Pawn).contains(pawn_sq) {
                return Err(InvariantViolation::EnPassant {
                    square: ep,
                    reason: format!("no {pusher} pawn on {pawn_sq}"),
                });
            }
        }
        for color in Color::BOTH {
            for king_side in [true, false] {
                if !self.castling.has(color, king_side) {
                    continue;
                }
                let back = color.back_rank();
                let king_ok = self
                    .piece_set(color, PieceKind::King)
                    .contains(Square::new(4, back));
                let rook_file = if king_side { 7 } else { 0 };
                let rook_ok = self
                    .piece_set(color, PieceKind::Rook)
                    .contains(Square::new(rook_file, back));
                if !king_ok || !rook_ok {
                    let right = match (color, king_side) {
                        (Color::White, true) => "K",
                        (Color::White, false) => "Q",
                        (Color::Black, true) => "k",
                        (Color::Black, false) => "q",
                    };
                    return Err(InvariantViolation::CastlingPlacement {
                        right: right.to_owned(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Apply a move known to come from [`legal_moves`](super::movegen::legal_moves)
    /// on this exact position. Produces garbage on other inputs; use
    /// [`Position::apply`] at trust boundaries.
    pub fn apply_unchecked(&self, m: Move) -> Position {
        let us = self.side_to_move;
        let them = us.opponent();
        let mut next = *self;
        next.en_passant = None;
        next.side_to_move = them;

        let us_sets = &mut next.pieces[us.index()];
        us_sets[m.piece.index()].remove(m.from);
        match m.promotion {
            Some(kind) => us_sets[kind.index()].insert(m.to),
            None => us_sets[m.piece.index()].insert(m.to),
        }

        if m.flags.is_en_passant() {
            let captured = Square::new(m.to.file(), (m.to.rank() as i8 - us.forward()) as u8);
            next.pieces[them.index()][PieceKind::Pawn.index()].remove(captured);
        } else if m.flags.is_capture() {
            let them_sets = &mut next.pieces[them.index()];
            for kind in PieceKind::ALL {
                them_sets[kind.index()].remove(m.to);
            }
        }

        if m.flags.is_castle() {
            let back = us.back_rank();
            let (rook_from, rook_to) = if m.flags.is_castle_king() {
                (Square::new(7, back), Square::new(5, back))
            } else {
                (Square::new(0, back), Square::new(3, back))
            };
            let rooks = &mut next.pieces[us.index()][PieceKind::Rook.index()];
            rooks.remove(rook_from);
            rooks.insert(rook_to);
        }

        if m.flags.is_double_push() {
            next.en_passant = Some(Square::new(
                m.from.file(),
                (m.from.rank() as i8 + us.forward()) as u8,
            ));
        }

        // Rights fall with the king, with a rook leaving home, or with a rook
        // captured at home.
        if m.piece == PieceKind::King {
            next.castling.clear_color(us);
        }
        for (color, king_side, corner) in [
            (Color::White, false, Square::new(0, 0)),
            (Color::White, true, Square::new(7, 0)),
            (Color::Black, false, Square::new(0, 7)),
            (Color::Black, true, Square::new(7, 7)),
        ] {
            if m.from == corner || m.to == corner {
                next.castling.clear(color, king_side);
            }
        }

        next
    }

    /// Apply `m` after checking it against the legal move list.
    pub fn apply(&self, m: Move) -> Result<Position, IllegalMoveError> {
        if super::movegen::legal_moves(self).contains(&m) {
            Ok(self.apply_unchecked(m))
        } else {
            Err(IllegalMoveError {
                mv: m.to_string(),
                fen: super::fen::to_fen(self),
            })
        }
    }
}

impl std::fmt::Debug for Position {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Position({})", super::fen::to_fen(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chess::fen::parse_fen;
    use crate::chess::movegen::legal_moves;

    #[test]
    fn initial_position_is_valid() {
        let pos = Position::initial();
        pos.validate().unwrap();
        assert_eq!(pos.side_to_move(), Color::White);
        assert_eq!(pos.unit_count(Color::White), 16);
        assert_eq!(pos.unit_count(Color::Black), 16);
        assert_eq!(pos.king_square(Color::White).to_string(), "e1");
    }

    #[test]
    fn double_push_sets_en_passant() {
        let pos = Position::initial();
        let m = legal_moves(&pos)
            .into_iter()
            .find(|m| m.to_string() == "e2e4")
            .unwrap();
        assert!(m.flags.is_double_push());
        let next = pos.apply(m).unwrap();
        assert_eq!(next.side_to_move(), Color::Black);
        assert_eq!(next.en_passant().unwrap().to_string(), "e3");
        next.validate().unwrap();
    }

    #[test]
    fn castling_displaces_rook_and_clears_rights() {
        let pos =
            parse_fen("r3k2r/pppppppp/8/8/8/8/PPPPPPPP/R3K2R w KQkq - 0 1").unwrap();
        let castle = legal_moves(&pos)
            .into_iter()
            .find(|m| m.flags.is_castle_king())
            .unwrap();
        let next = pos.apply(castle).unwrap();
        assert_eq!(next.king_square(Color::White).to_string(), "g1");
        assert!(next
            .piece_set(Color::White, PieceKind::Rook)
            .contains("f1".parse().unwrap()));
        assert!(!next.castling().has(Color::White, true));
        assert!(!next.castling().has(Color::White, false));
        assert!(next.castling().has(Color::Black, true));
    }

    #[test]
    fn promotion_swaps_pawn_for_piece() {
        let pos = parse_fen("8/P6k/8/8/8/8/8/K7 w - - 0 1").unwrap();
        let promo = legal_moves(&pos)
            .into_iter()
            .find(|m| m.promotion == Some(PieceKind::Queen))
            .unwrap();
        let next = pos.apply(promo).unwrap();
        assert_eq!(next.piece_set(Color::White, PieceKind::Pawn).count(), 0);
        assert_eq!(next.piece_set(Color::White, PieceKind::Queen).count(), 1);
    }

    #[test]
    fn rook_capture_clears_opponent_right() {
        // White rook takes the a8 rook; black loses the queen-side right.
        let pos = parse_fen("r3k2r/8/8/8/8/8/8/R3K2R w KQkq - 0 1").unwrap();
        let take = legal_moves(&pos)
            .into_iter()
            .find(|m| m.to_string() == "a1a8")
            .unwrap();
        let next = pos.apply(take).unwrap();
        assert!(!next.castling().has(Color::Black, false));
        assert!(next.castling().has(Color::Black, true));
        assert!(!next.castling().has(Color::White, false));
        assert!(next.castling().has(Color::White, true));
    }

    #[test]
    fn apply_rejects_illegal_move() {
        let pos = Position::initial();
        let bogus = Move::new(
            "e2".parse().unwrap(),
            "e5".parse().unwrap(),
            PieceKind::Pawn,
            None,
            MoveFlags::NONE,
        );
        assert!(pos.apply(bogus).is_err());
    }
}
