//! Legal move generation.
//!
//! Pseudo-legal moves come from precomputed attack tables (leapers) and
//! classical blocker-scanned rays (sliders); king safety is settled by
//! applying each candidate and testing for attacks on the own king. The
//! returned list is sorted by (from, to, promotion) so move ordering is
//! identical across runs and platforms.

use std::sync::LazyLock;

use super::bitboard::Bitboard;
use super::moves::{Move, MoveFlags};
use super::piece::{Color, PieceKind};
use super::position::Position;
use super::square::Square;

/// Known upper bound on the number of legal moves in any chess position.
pub const MAX_LEGAL_MOVES: usize = 218;

#[derive(Clone, Copy)]
enum Direction {
    North,
    South,
    East,
    West,
    NorthEast,
    NorthWest,
    SouthEast,
    SouthWest,
}

impl Direction {
    const ALL: [Direction; 8] = [
        Direction::North,
        Direction::South,
        Direction::East,
        Direction::West,
        Direction::NorthEast,
        Direction::NorthWest,
        Direction::SouthEast,
        Direction::SouthWest,
    ];

    const fn index(self) -> usize {
        self as usize
    }

    fn delta(self) -> (i8, i8) {
        match self {
            Direction::North => (0, 1),
            Direction::South => (0, -1),
            Direction::East => (1, 0),
            Direction::West => (-1, 0),
            Direction::NorthEast => (1, 1),
            Direction::NorthWest => (-1, 1),
            Direction::SouthEast => (1, -1),
            Direction::SouthWest => (-1, -1),
        }
    }

    /// Rays pointing toward higher square indices scan blockers from the
    /// low end; the rest from the high end.
    fn ascending(self) -> bool {
        matches!(
            self,
            Direction::North | Direction::East | Direction::NorthEast | Direction::NorthWest
        )
    }
}

struct Tables {
    knight: [Bitboard; 64],
    king: [Bitboard; 64],
    /// Squares attacked by a pawn of the given color standing on the square.
    pawn_attacks: [[Bitboard; 64]; 2],
    rays: [[Bitboard; 64]; 8],
}

static TABLES: LazyLock<Tables> = LazyLock::new(|| {
    let mut knight = [Bitboard::EMPTY; 64];
    let mut king = [Bitboard::EMPTY; 64];
    let mut pawn_attacks = [[Bitboard::EMPTY; 64]; 2];
    let mut rays = [[Bitboard::EMPTY; 64]; 8];

    for sq in Square::all() {
        let i = sq.index();
        for (df, dr) in [
            (1, 2),
            (2, 1),
            (2, -1),
            (1, -2),
            (-1, -2),
            (-2, -1),
            (-2, 1),
            (-1, 2),
        ] {
            if let Some(t) = sq.offset(df, dr) {
                knight[i].insert(t);
            }
        }
        for df in -1..=1 {
            for dr in -1..=1 {
                if (df, dr) == (0, 0) {
                    continue;
                }
                if let Some(t) = sq.offset(df, dr) {
                    king[i].insert(t);
                }
            }
        }
        for color in Color::BOTH {
            for df in [-1, 1] {
                if let Some(t) = sq.offset(df, color.forward()) {
                    pawn_attacks[color.index()][i].insert(t);
                }
            }
        }
        for dir in Direction::ALL {
            let (df, dr) = dir.delta();
            let mut cur = sq;
            while let Some(t) = cur.offset(df, dr) {
                rays[dir.index()][i].insert(t);
                cur = t;
            }
        }
    }

    Tables {
        knight,
        king,
        pawn_attacks,
        rays,
    }
});

#[inline]
fn ray_attack(dir: Direction, from: Square, occupied: Bitboard) -> Bitboard {
    let ray = TABLES.rays[dir.index()][from.index()];
    let blockers = ray & occupied;
    match if dir.ascending() {
        blockers.first()
    } else {
        blockers.last()
    } {
        Some(first) => ray ^ TABLES.rays[dir.index()][first.index()],
        None => ray,
    }
}

/// Squares a rook on `from` attacks given the board occupancy.
#[inline]
pub fn rook_attacks(from: Square, occupied: Bitboard) -> Bitboard {
    ray_attack(Direction::North, from, occupied)
        | ray_attack(Direction::South, from, occupied)
        | ray_attack(Direction::East, from, occupied)
        | ray_attack(Direction::West, from, occupied)
}

/// Squares a bishop on `from` attacks given the board occupancy.
#[inline]
pub fn bishop_attacks(from: Square, occupied: Bitboard) -> Bitboard {
    ray_attack(Direction::NorthEast, from, occupied)
        | ray_attack(Direction::NorthWest, from, occupied)
        | ray_attack(Direction::SouthEast, from, occupied)
        | ray_attack(Direction::SouthWest, from, occupied)
}

#[inline]
pub fn knight_attacks(from: Square) -> Bitboard {
    TABLES.knight[from.index()]
}

#[inline]
pub fn king_attacks(from: Square) -> Bitboard {
    TABLES.king[from.index()]
}

#[inline]
pub fn pawn_attacks(color: Color, from: Square) -> Bitboard {
    TABLES.pawn_attacks[color.index()][from.index()]
}

/// Is `sq` attacked by any piece of `by`?
pub fn is_square_attacked(pos: &Position, sq: Square, by: Color) -> bool {
    // A pawn of `by` attacks sq iff a pawn of the other color standing on sq
    // would attack the pawn's square.
    if !(pawn_attacks(by.opponent(), sq) & pos.piece_set(by, PieceKind::Pawn)).is_empty() {
        return true;
    }
    if !(knight_attacks(sq) & pos.piece_set(by, PieceKind::Knight)).is_empty() {
        return true;
    }
    if !(king_attacks(sq) & pos.piece_set(by, PieceKind::King)).is_empty() {
        return true;
    }
    let occupied = pos.occupied();
    let diag = pos.piece_set(by, PieceKind::Bishop) | pos.piece_set(by, PieceKind::Queen);
    if !diag.is_empty() && !(bishop_attacks(sq, occupied) & diag).is_empty() {
        return true;
    }
    let ortho = pos.piece_set(by, PieceKind::Rook) | pos.piece_set(by, PieceKind::Queen);
    if !ortho.is_empty() && !(rook_attacks(sq, occupied) & ortho).is_empty() {
        return true;
    }
    false
}

/// Is the side to move in check?
pub fn in_check(pos: &Position) -> bool {
    let us = pos.side_to_move();
    is_square_attacked(pos, pos.king_square(us), us.opponent())
}

fn push_pawn_move(moves: &mut Vec<Move>, color: Color, from: Square, to: Square, flags: MoveFlags) {
    if to.rank() == color.promotion_rank() {
        for kind in PieceKind::PROMOTIONS {
            moves.push(Move::new(from, to, PieceKind::Pawn, Some(kind), flags));
        }
    } else {
        moves.push(Move::new(from, to, PieceKind::Pawn, None, flags));
    }
}

fn pseudo_legal_moves(pos: &Position) -> Vec<Move> {
    let us = pos.side_to_move();
    let them = us.opponent();
    let own = pos.occupied_by(us);
    let theirs = pos.occupied_by(them);
    let occupied = own | theirs;
    let mut moves = Vec::with_capacity(64);

    for from in pos.piece_set(us, PieceKind::Pawn) {
        let forward = us.forward();
        if let Some(one) = from.offset(0, forward) {
            if !occupied.contains(one) {
                push_pawn_move(&mut moves, us, from, one, MoveFlags::NONE);
                if from.rank() == us.pawn_rank() {
                    let two = from.offset(0, 2 * forward).expect("on the board");
                    if !occupied.contains(two) {
                        moves.push(Move::new(
                            from,
                            two,
                            PieceKind::Pawn,
                            None,
                            MoveFlags::DOUBLE_PUSH,
                        ));
                    }
                }
            }
        }
        for to in pawn_attacks(us, from) {
            if theirs.contains(to) {
                push_pawn_move(&mut moves, us, from, to, MoveFlags::CAPTURE);
            } else if pos.en_passant() == Some(to) {
                moves.push(Move::new(
                    from,
                    to,
                    PieceKind::Pawn,
                    None,
                    MoveFlags::EN_PASSANT,
                ));
            }
        }
    }

    let mut push_targets = |from: Square, piece: PieceKind, targets: Bitboard| {
        for to in targets & !own {
            let flags = if theirs.contains(to) {
                MoveFlags::CAPTURE
            } else {
                MoveFlags::NONE
            };
            moves.push(Move::new(from, to, piece, None, flags));
        }
    };

    for from in pos.piece_set(us, PieceKind::Knight) {
        push_targets(from, PieceKind::Knight, knight_attacks(from));
    }
    for from in pos.piece_set(us, PieceKind::Bishop) {
        push_targets(from, PieceKind::Bishop, bishop_attacks(from, occupied));
    }
    for from in pos.piece_set(us, PieceKind::Rook) {
        push_targets(from, PieceKind::Rook, rook_attacks(from, occupied));
    }
    for from in pos.piece_set(us, PieceKind::Queen) {
        push_targets(
            from,
            PieceKind::Queen,
            bishop_attacks(from, occupied) | rook_attacks(from, occupied),
        );
    }
    let king_from = pos.king_square(us);
    push_targets(king_from, PieceKind::King, king_attacks(king_from));

    // Castling: squares between king and rook empty, king neither in check
    // nor crossing an attacked square. The destination square is covered by
    // the common legality filter.
    let back = us.back_rank();
    if pos.castling().has(us, true) {
        let f1 = Square::new(5, back);
        let g1 = Square::new(6, back);
        if !occupied.contains(f1)
            && !occupied.contains(g1)
            && !is_square_attacked(pos, king_from, them)
            && !is_square_attacked(pos, f1, them)
        {
            moves.push(Move::new(
                king_from,
                g1,
                PieceKind::King,
                None,
                MoveFlags::CASTLE_KING,
            ));
        }
    }
    if pos.castling().has(us, false) {
        let b1 = Square::new(1, back);
        let c1 = Square::new(2, back);
        let d1 = Square::new(3, back);
        if !occupied.contains(b1)
            && !occupied.contains(c1)
            && !occupied.contains(d1)
            && !is_square_attacked(pos, king_from, them)
            && !is_square_attacked(pos, d1, them)
        {
            moves.push(Move::new(
                king_from,
                c1,
                PieceKind::King,
                None,
                MoveFlags::CASTLE_QUEEN,
            ));
        }
    }

    moves
}

/// All FIDE-legal moves for the side to move, sorted by
/// (from, to, promotion kind).
pub fn legal_moves(pos: &Position) -> Vec<Move> {
    debug_assert!(pos.validate().is_ok(), "invalid position: {pos:?}");
    let us = pos.side_to_move();
    let them = us.opponent();
    let mut moves = pseudo_legal_moves(pos);
    moves.retain(|&m| {
        let next = pos.apply_unchecked(m);
        !is_square_attacked(&next, next.king_square(us), them)
    });
    moves.sort_unstable_by_key(Move::ordering_key);
    moves
}

/// Number of legal moves without materializing the list.
pub fn count_legal_moves(pos: &Position) -> usize {
    let us = pos.side_to_move();
    let them = us.opponent();
    pseudo_legal_moves(pos)
        .into_iter()
        .filter(|&m| {
            let next = pos.apply_unchecked(m);
            !is_square_attacked(&next, next.king_square(us), them)
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chess::fen::parse_fen;

    #[test]
    fn initial_position_has_twenty_moves() {
        // 16 pawn pushes plus 4 knight moves.
        let moves = legal_moves(&Position::initial());
        assert_eq!(moves.len(), 20);
    }

    #[test]
    fn replies_to_e4_are_twenty() {
        let pos = Position::initial();
        let e4 = legal_moves(&pos)
            .into_iter()
            .find(|m| m.to_string() == "e2e4")
            .unwrap();
        assert_eq!(legal_moves(&pos.apply_unchecked(e4)).len(), 20);
    }

    #[test]
    fn checkmate_has_no_moves() {
        // Fool's mate.
        let pos = parse_fen("rnb1kbnr/pppp1ppp/8/4p3/6Pq/5P2/PPPPP2P/RNBQKBNR w KQkq - 0 3")
            .unwrap();
        assert!(legal_moves(&pos).is_empty());
        assert!(in_check(&pos));
    }

    #[test]
    fn stalemate_has_no_moves() {
        let pos = parse_fen("7k/5Q2/6K1/8/8/8/8/8 b - - 0 1").unwrap();
        assert!(legal_moves(&pos).is_empty());
        assert!(!in_check(&pos));
    }

    #[test]
    fn en_passant_capture_is_generated() {
        let pos = parse_fen("rnbqkbnr/ppp1p1pp/8/3pPp2/8/8/PPPP1PPP/RNBQKBNR w KQkq f6 0 3")
            .unwrap();
        let eps: Vec<Move> = legal_moves(&pos)
            .into_iter()
            .filter(|m| m.flags.is_en_passant())
            .collect();
        assert_eq!(eps.len(), 1);
        assert_eq!(eps[0].to_string(), "e5f6");
    }

    #[test]
    fn en_passant_pinned_is_rejected()
 {
        // Capturing e.p. would expose the white king on the 5th rank.
        let pos = parse_fen("8/8/8/K2pP2q/8/8/8/7k w - d6 0 1").unwrap();
        assert!(legal_moves(&pos).iter().all(|m| !m.flags.is_en_passant()));
    }

    #[test]
    fn castling_blocked_by_attack() {
        // Black rook on f8 covers f1; king-side castling is out.
        let pos = parse_fen("5r2/8/8/8/8/8/k7/R3K2R w KQ - 0 1").unwrap();
        let moves = legal_moves(&pos);
        assert!(moves.iter().all(|m| !m.flags.is_castle_king()));
        assert!(moves.iter().any(|m| m.flags.is_castle_queen()));
    }

    #[test]
    fn ordering_is_sorted() {
        let pos = parse_fen("r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1")
            .unwrap();
        let moves = legal_moves(&pos);
        let mut sorted = moves.clone();
        sorted.sort_by_key(Move::ordering_key);
        assert_eq!(moves, sorted);
    }
}
