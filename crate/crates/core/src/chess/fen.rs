//! FEN codec (standard 6-field form).
//!
//! The halfmove and fullmove counters are accepted on input and emitted as
//! the fixed placeholders `0 1`: the position state deliberately excludes
//! them.

use super::bitboard::Bitboard;
use super::moves::CastlingRights;
use super::piece::{Color, Piece, PieceKind};
use super::position::{InvariantViolation, Position};
use super::square::Square;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FenError {
    #[error("expected 4 to 6 fields, found {0}")]
    FieldCount(usize),
    #[error("board field: {0}")]
    Board(String),
    #[error("side-to-move field: expected `w` or `b`, found `{0}`")]
    SideToMove(String),
    #[error("castling field: `{0}`")]
    Castling(String),
    #[error("en-passant field: `{0}`")]
    EnPassant(String),
    #[error("{counter} counter: `{value}` is not a number")]
    Counter { counter: &'static str, value: String },
    #[error(transparent)]
    Invariant(#[from] InvariantViolation),
}

/// Parse a FEN string. Accepts 4-field strings (counters omitted).
pub fn parse_fen(text: &str) -> Result<Position, FenError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if !(4..=6).contains(&fields.len()) {
        return Err(FenError::FieldCount(fields.len()));
    }

    let mut pieces = [[Bitboard::EMPTY; 6]; 2];
    let ranks: Vec<&str> = fields[0].split('/').collect();
    if ranks.len() != 8 {
        return Err(FenError::Board(format!(
            "expected 8 ranks, found {}",
            ranks.len()
        )));
    }
    for (i, rank_text) in ranks.iter().enumerate() {
        let rank = 7 - i as u8;
        let mut file = 0u8;
        for c in rank_text.chars() {
            if let Some(skip) = c.to_digit(10) {
                if skip == 0 || skip > 8 {
                    return Err(FenError::Board(format!("bad skip digit `{c}`")));
                }
                file += skip as u8;
            } else if let Some(piece) = Piece::from_fen_char(c) {
                if file >= 8 {
                    return Err(FenError::Board(format!(
                        "rank {} overflows the board",
                        rank + 1
                    )));
                }
                pieces[piece.color.index()][piece.kind.index()]
                    .insert(Square::new(file, rank));
                file += 1;
            } else {
                return Err(FenError::Board(format!("unexpected character `{c}`")));
            }
        }
        if file != 8 {
            return Err(FenError::Board(format!(
                "rank {} has {file} files, expected 8",
                rank + 1
            )));
        }
    }

    let side_to_move = match fields[1] {
        "w" => Color::White,
        "b" => Color::Black,
        other => return Err(FenError::SideToMove(other.to_owned())),
    };

    let mut castling = CastlingRights::NONE;
    if fields[2] != "-" {
        for c in fields[2].chars() {
            match c {
                'K' => castling.set(Color::White, true),
                'Q' => castling.set(Color::White, false),
                'k' => castling.set(Color::Black, true),
                'q' => castling.set(Color::Black, false),
                _ => return Err(FenError::Castling(format!("unexpected character `{c}`"))),
            }
        }
    }

    let en_passant = if fields[3] == "-" {
        None
    } else {
        Some(
            fields[3]
                .parse::<Square>()
                .map_err(|e| FenError::EnPassant(e.to_string()))?,
        )
    };

    for (index, counter) in [(4usize, "halfmove"), (5, "fullmove")] {
        if let Some(value) = fields.get(index) {
            value.parse::<u32>().map_err(|_| FenError::Counter {
                counter,
                value: (*value).to_owned(),
            })?;
        }
    }

    Ok(Position::from_parts(pieces, side_to_move, castling, en_passant)?)
}

/// Emit the canonical FEN for a position, counters as `0 1`.
pub fn to_fen(pos: &Position) -> String {
    let mut out = String::with_capacity(80);
    for rank in (0..8u8).rev() {
        let mut empty = 0;
        for file in 0..8u8 {
            match pos.piece_at(Square::new(file, rank)) {
                Some(piece) => {
                    if empty > 0 {
                        out.push(char::from_digit(empty, 10).unwrap());
                        empty = 0;
                    }
                    out.push(piece.fen_char());
                }
                None => empty += 1,
            }
        }
        if empty > 0 {
            out.push(char::from_digit(empty, 10).unwrap());
        }
        if rank > 0 {
            out.push('/');
        }
    }
    out.push(' ');
    out.push(match pos.side_to_move() {
        Color::White => 'w',
        Color::Black => 'b',
    });
    out.push(' ');
    out.push_str(&pos.castling().to_string());
    out.push(' ');
    match pos.en_passant() {
        Some(sq) => out.push_str(&sq.to_string()),
        None => out.push('-'),
    }
    out.push_str(" 0 1");
    out
}

pub const INITIAL_FEN: &str = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn start_string_round_trips() {
        let pos = parse_fen(INITIAL_FEN).unwrap();
        assert_eq!(pos, Position::initial());
        assert_eq!(to_fen(&pos), INITIAL_FEN);
    }

    #[test]
    fn counters_are_placeholders() {
        let pos = parse_fen("8/5k2/8/8/8/8/5K2/8 w - - 37 90").unwrap();
        assert_eq!(to_fen(&pos), "8/5k2/8/8/8/8/5K2/8 w - - 0 1");
    }

    #[test]
    fn two_kings_rejected() {
        let err = parse_fen("KK6/8/8/8/8/8/8/k7 w - - 0 1").unwrap_err();
        assert!(matches!(
            err,
            FenError::Invariant(InvariantViolation::KingCount { .. })
        ));
    }

    #[test]
    fn pawn_on_back_rank_rejected() {
        let err = parse_fen("P3k3/8/8/8/8/8/8/4K3 w - - 0 1").unwrap_err();
        assert!(matches!(
            err,
            FenError::Invariant(InvariantViolation::PawnOnBackRank { .. })
        ));
    }

    #[test]
    fn castling_right_requires_home_squares() {
        let err = parse_fen("4k3/8/8/8/8/8/8/4K2R w Q - 0 1").unwrap_err();
        assert!(matches!(
            err,
            FenError::Invariant(InvariantViolation::CastlingPlacement { .. })
        ));
    }

    #[test]
    fn en_passant_must_match_side() {
        // ep on rank 6 with black to move is inconsistent.
        let err = parse_fen("rnbqkbnr/ppp1pppp/8/3p4/8/8/PPPPPPPP/RNBQKBNR b KQkq d6 0 1");
        assert!(err.is_err());
        let ok = parse_fen("rnbqkbnr/pppppppp/8/8/3P4/8/PPP1PPPP/RNBQKBNR b KQkq d3 0 1");
        assert!(ok.is_ok());
    }

    #[test]
    fn malformed_fields_name_the_field() {
        assert!(matches!(
            parse_fen("8/8/8/8/8/8/8/8 x - - 0 1").unwrap_err(),
            FenError::SideToMove(_)
        ));
        assert!(matches!(
            parse_fen("8/8/8/8/8/8/8 w - - 0 1").unwrap_err(),
            FenError::Board(_)
        ));
        assert!(matches!(
            parse_fen("4k3/8/8/8/8/8/8/4K3 w - - zz 1").unwrap_err(),
            FenError::Counter { counter: "halfmove", .. }
        ));
    }
}
