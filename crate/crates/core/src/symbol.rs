//! Symbols and fixed-width symbol sets.
//!
//! Every alphabet is the cross product `char × mora × sync × position` plus the
//! two technical symbols `repeat` and `skip`. Symbols are dense indices into that
//! product, so a label is a plain bitset.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Sub};

/// Number of 64-bit words in a [`SymbolSet`].
const WORDS: usize = 8;

/// Largest alphabet a [`SymbolSet`] can describe.
pub const MAX_SYMBOLS: usize = WORDS * 64;

/// Attribute variants per segment character (2 mora × 2 sync × 3 positions).
pub const VARIANTS_PER_CHAR: usize = 12;

/// Number of technical symbols (`repeat`, `skip`).
pub const TECHNICAL_SYMBOLS: usize = 2;

/// Dense index of a symbol within an inventory's alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolId(pub u16);

impl SymbolId {
    pub const REPEAT: SymbolId = SymbolId(0);
    pub const SKIP: SymbolId = SymbolId(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_technical(self) -> bool {
        self.index() < TECHNICAL_SYMBOLS
    }
}

/// Index of a segment character in its inventory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharId(pub u16);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SegClass {
    Vowel,
    Consonant,
}

/// Position of a segment within its base string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Position {
    Initial,
    Medial,
    Final,
}

impl Position {
    pub const ALL: [Position; 3] = [Position::Initial, Position::Medial, Position::Final];

    fn index(self) -> usize {
        match self {
            Position::Initial => 0,
            Position::Medial => 1,
            Position::Final => 2,
        }
    }

    fn from_index(i: usize) -> Position {
        Position::ALL[i]
    }
}

/// A featured phonological segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub ch: CharId,
    pub class: SegClass,
    pub mora: bool,
    pub sync: bool,
    pub pos: Position,
}

/// One alphabet element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Repeat,
    Skip,
    Segment(Segment),
}

impl Symbol {
    pub fn is_technical(&self) -> bool {
        !matches!(self, Symbol::Segment(_))
    }

    pub fn segment(&self) -> Option<&Segment> {
        match self {
            Symbol::Segment(s) => Some(s),
            _ => None,
        }
    }
}

/// Symbol id for a segment with the given attributes. Class is implied by `ch`.
pub(crate) fn segment_id(ch: CharId, mora: bool, sync: bool, pos: Position) -> SymbolId {
    let offset = (mora as usize) * 6 + (sync as usize) * 3 + pos.index();
    SymbolId((TECHNICAL_SYMBOLS + ch.0 as usize * VARIANTS_PER_CHAR + offset) as u16)
}

/// Inverse of [`segment_id`]; returns `(char, mora, sync, pos)`.
pub(crate) fn decode_segment(id: SymbolId) -> (CharId, bool, bool, Position) {
    let k = id.index() - TECHNICAL_SYMBOLS;
    let ch = CharId((k / VARIANTS_PER_CHAR) as u16);
    let r = k % VARIANTS_PER_CHAR;
    (ch, r / 6 == 1, (r / 3) % 2 == 1, Position::from_index(r % 3))
}

/// Membership set over an alphabet of at most [`MAX_SYMBOLS`] symbols.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SymbolSet {
    words: [u64; WORDS],
}

impl SymbolSet {
    pub const fn empty() -> Self {
        SymbolSet { words: [0; WORDS] }
    }

    pub fn singleton(id: SymbolId) -> Self {
        let mut s = Self::empty();
        s.insert(id);
        s
    }

    /// The first `n` symbol ids.
    pub fn first_n(n: usize) -> Self {
        assert!(n <= MAX_SYMBOLS, "alphabet too large for SymbolSet");
        let mut s = Self::empty();
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * 64;
            if n >= lo + 64 {
                *w = u64::MAX;
            } else if n > lo {
                *w = (1u64 << (n - lo)) - 1;
            }
        }
        s
    }

    pub fn insert(&mut self, id: SymbolId) {
        let i = id.index();
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, id: SymbolId) {
        let i = id.index();
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, id: SymbolId) -> bool {
        let i = id.index();
        i < MAX_SYMBOLS && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersects(&self, other: &SymbolSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &SymbolSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = SymbolId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(SymbolId((i * 64 + tz) as u16))
            })
        })
    }

    /// Lowest member, if any.
    pub fn first(&self) -> Option<SymbolId> {
        self.iter().next()
    }
}

impl FromIterator<SymbolId> for SymbolSet {
    fn from_iter<T: IntoIterator<Item = SymbolId>>(iter: T) -> Self {
        let mut s = SymbolSet::empty();
        for id in iter {
            s.insert(id);
        }
        s
    }
}

impl BitAnd for SymbolSet {
    type Output = SymbolSet;
    fn bitand(mut self, rhs: SymbolSet) -> SymbolSet {
        self &= rhs;
        self
    }
}

impl BitAndAssign for SymbolSet {
    fn bitand_assign(&mut self, rhs: SymbolSet) {
        for (a, b) in self.words.iter_mut().zip(rhs.words) {
            *a &= b;
        }
    }
}

impl BitOr for SymbolSet {
    type Output = SymbolSet;
    fn bitor(mut self, rhs: SymbolSet) -> SymbolSet {
        self |= rhs;
        self
    }
}

impl BitOrAssign for SymbolSet {
    fn bitor_assign(&mut self, rhs: SymbolSet) {
        for (a, b) in self.words.iter_mut().zip(rhs.words) {
            *a |= b;
        }
    }
}

impl Sub for SymbolSet {
    type Output = SymbolSet;
    fn sub(mut self, rhs: SymbolSet) -> SymbolSet {
        for (a, b) in self.words.iter_mut().zip(rhs.words) {
            *a &= !b;
        }
        self
    }
}

impl fmt::Debug for SymbolSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|s| s.0)).finish()
    }
}
