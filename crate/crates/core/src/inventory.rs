//! Segment inventories: the declared table of transliterated characters, their
//! class, and any extra named character classes.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::symbol::{
    decode_segment, segment_id, CharId, Position, SegClass, Segment, Symbol, SymbolId, SymbolSet,
    MAX_SYMBOLS, TECHNICAL_SYMBOLS, VARIANTS_PER_CHAR,
};
use crate::Error;

/// Class names with a fixed meaning in every inventory.
pub const RESERVED_NAMES: &[&str] = &[
    "seg", "sigma", "vowel", "consonant", "mora", ":1", ":0", "initial", "medial", "final",
    "repeat", "skip",
];

#[derive(Clone, Debug, PartialEq, Eq)]
struct CharEntry {
    name: String,
    class: SegClass,
}

/// A segment inventory and the alphabet it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inventory {
    chars: Vec<CharEntry>,
    index: HashMap<String, CharId>,
    classes: BTreeMap<String, Vec<CharId>>,
}

#[derive(Default)]
pub struct InventoryBuilder {
    chars: Vec<(String, SegClass)>,
    classes: Vec<(String, Vec<String>)>,
}

impl InventoryBuilder {
    pub fn vowels<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.chars.extend(names.into_iter().map(|n| (n.into(), SegClass::Vowel)));
        self
    }

    pub fn consonants<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.chars.extend(names.into_iter().map(|n| (n.into(), SegClass::Consonant)));
        self
    }

    pub fn class<I, S>(mut self, name: impl Into<String>, members: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.classes.push((name.into(), members.into_iter().map(Into::into).collect()));
        self
    }

    pub fn build(self) -> Result<Inventory, Error> {
        let mut chars = Vec::new();
        let mut index = HashMap::new();
        for (name, class) in self.chars {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::Inventory(format!("invalid segment token {name:?}")));
            }
            if RESERVED_NAMES.contains(&name.as_str()) {
                return Err(Error::Inventory(format!("segment token {name:?} is a reserved class name")));
            }
            if index.insert(name.clone(), CharId(chars.len() as u16)).is_some() {
                return Err(Error::Inventory(format!("segment token {name:?} declared twice")));
            }
            chars.push(CharEntry { name, class });
        }
        let capacity = (MAX_SYMBOLS - TECHNICAL_SYMBOLS) / VARIANTS_PER_CHAR;
        if chars.len() > capacity {
            return Err(Error::Inventory(format!(
                "{} segment tokens declared; at most {capacity} are supported",
                chars.len()
            )));
        }
        let mut classes = BTreeMap::new();
        for (name, members) in self.classes {
            if RESERVED_NAMES.contains(&name.as_str()) || index.contains_key(&name) {
                return Err(Error::Inventory(format!("class name {name:?} clashes with a segment or reserved name")));
            }
            let ids = members
                .iter()
                .map(|m| index.get(m).copied().ok_or_else(|| Error::UnknownToken(m.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            if classes.insert(name.clone(), ids).is_some() {
                return Err(Error::Inventory(format!("class {name:?} declared twice")));
            }
        }
        let inv = Inventory { chars, index, classes };
        inv.check_unambiguous()?;
        Ok(inv)
    }
}

impl Inventory {
    pub fn builder() -> InventoryBuilder {
        InventoryBuilder::default()
    }

    /// Number of symbols in the alphabet, technical symbols included.
    pub fn alphabet_size(&self) -> usize {
        TECHNICAL_SYMBOLS + self.chars.len() * VARIANTS_PER_CHAR
    }

    pub fn num_chars(&self) -> usize {
        self.chars.len()
    }

    pub fn char_id(&self, token: &str) -> Option<CharId> {
        self.index.get(token).copied()
    }

    pub fn char_name(&self, ch: CharId) -> &str {
        &self.chars[ch.0 as usize].name
    }

    pub fn char_class(&self, ch: CharId) -> SegClass {
        self.chars[ch.0 as usize].class
    }

    pub fn chars(&self) -> impl Iterator<Item = CharId> {
        (0..self.chars.len() as u16).map(CharId)
    }

    pub fn symbol(&self, id: SymbolId) -> Symbol {
        match id {
            SymbolId::REPEAT => Symbol::Repeat,
            SymbolId::SKIP => Symbol::Skip,
            _ => {
                let (ch, mora, sync, pos) = decode_segment(id);
                Symbol::Segment(Segment { ch, class: self.char_class(ch), mora, sync, pos })
            }
        }
    }

    pub fn symbol_id(&self, sym: &Symbol) -> SymbolId {
        match sym {
            Symbol::Repeat => SymbolId::REPEAT,
            Symbol::Skip => SymbolId::SKIP,
            Symbol::Segment(s) => segment_id(s.ch, s.mora, s.sync, s.pos),
        }
    }

    pub fn segment(&self, ch: CharId, mora: bool, sync: bool, pos: Position) -> SymbolId {
        segment_id(ch, mora, sync, pos)
    }

    /// Character of a segment symbol; `None` for technical symbols.
    pub fn char_of(&self, id: SymbolId) -> Option<CharId> {
        (!id.is_technical()).then(|| decode_segment(id).0)
    }

    /// The full alphabet, technical symbols included.
    pub fn sigma(&self) -> SymbolSet {
        SymbolSet::first_n(self.alphabet_size())
    }

    /// All segment symbols.
    pub fn segments(&self) -> SymbolSet {
        self.sigma() - self.technical()
    }

    pub fn technical(&self) -> SymbolSet {
        [SymbolId::REPEAT, SymbolId::SKIP].into_iter().collect()
    }

    /// Every attribute variant of one character.
    pub fn char_variants(&self, ch: CharId) -> SymbolSet {
        self.segments_where(|s| s.ch == ch)
    }

    pub fn segments_where(&self, pred: impl Fn(&Segment) -> bool) -> SymbolSet {
        let mut out = SymbolSet::empty();
        for ch in self.chars() {
            for mora in [false, true] {
                for sync in [false, true] {
                    for pos in Position::ALL {
                        let seg = Segment { ch, class: self.char_class(ch), mora, sync, pos };
                        if pred(&seg) {
                            out.insert(segment_id(ch, mora, sync, pos));
                        }
                    }
                }
            }
        }
        out
    }

    /// `alphabet ∖ s`, over the full alphabet including technical symbols.
    pub fn complement(&self, s: &SymbolSet) -> SymbolSet {
        self.sigma() - *s
    }

    /// Resolve a named class, character token, or technical symbol to its set.
    pub fn named_set(&self, name: &str) -> Option<SymbolSet> {
        let set = match name {
            "seg" => self.segments(),
            "sigma" => self.sigma(),
            "vowel" => self.segments_where(|s| s.class == SegClass::Vowel),
            "consonant" => self.segments_where(|s| s.class == SegClass::Consonant),
            "mora" => self.segments_where(|s| s.mora),
            ":1" => self.segments_where(|s| s.sync),
            ":0" => self.segments_where(|s| !s.sync),
            "initial" => self.segments_where(|s| s.pos == Position::Initial),
            "medial" => self.segments_where(|s| s.pos == Position::Medial),
            "final" => self.segments_where(|s| s.pos == Position::Final),
            "repeat" => SymbolSet::singleton(SymbolId::REPEAT),
            "skip" => SymbolSet::singleton(SymbolId::SKIP),
            _ => {
                if let Some(ch) = self.char_id(name) {
                    self.char_variants(ch)
                } else {
                    let members = self.classes.get(name)?;
                    self.segments_where(|s| members.contains(&s.ch))
                }
            }
        };
        Some(set)
    }

    /// Split a surface string into inventory tokens by maximal munch.
    /// Whitespace separates tokens and is otherwise ignored.
    pub fn tokenize(&self, text: &str) -> Result<Vec<CharId>, Error> {
        let mut out = Vec::new();
        for word in text.split_whitespace() {
            let mut rest = word;
            while !rest.is_empty() {
                let best = self
                    .chars
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| rest.starts_with(c.name.as_str()))
                    .max_by_key(|(_, c)| c.name.len());
                match best {
                    Some((i, c)) => {
                        out.push(CharId(i as u16));
                        rest = &rest[c.name.len()..];
                    }
                    None => {
                        let bad: String = rest.chars().take(1).collect();
                        return Err(Error::UnknownToken(bad));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reject inventories where some token can also be spelled by a sequence of
    /// two or more other tokens, since maximal munch would then be ambiguous.
    fn check_unambiguous(&self) -> Result<(), Error> {
        for c in &self.chars {
            let s = c.name.as_str();
            // reachable[i]: s[..i] can be spelled by >= 1 tokens shorter than s
            let mut reachable = vec![false; s.len() + 1];
            reachable[0] = true;
            for i in 0..s.len() {
                if !reachable[i] || !s.is_char_boundary(i) {
                    continue;
                }
                for other in &self.chars {
                    let o = other.name.as_str();
                    if o.len() < s.len() && s[i..].starts_with(o) {
                        reachable[i + o.len()] = true;
                    }
                }
            }
            if reachable[s.len()] {
                return Err(Error::Inventory(format!(
                    "segment token {s:?} can also be spelled with shorter tokens"
                )));
            }
        }
        Ok(())
    }

    /// Render a symbol as `char<attrs>` or `repeat`/`skip`.
    pub fn format_symbol(&self, id: SymbolId) -> String {
        self.format_set(&SymbolSet::singleton(id))
    }

    /// Render a symbol set as a `|`-separated union of terms.
    ///
    /// A term is `repeat`, `skip`, `seg`, `sigma`, or a character followed by an
    /// optional attribute restriction such as `u<:0>` or `o<+mu,:0,med>`.
    pub fn format_set(&self, set: &SymbolSet) -> String {
        if set.is_empty() {
            return "{}".to_string();
        }
        if *set == self.sigma() {
            return "sigma".to_string();
        }
        let mut terms: Vec<String> = Vec::new();
        let segs = *set & self.segments();
        if segs == self.segments() {
            terms.push("seg".to_string());
        } else {
            for ch in self.chars() {
                let mine = segs & self.char_variants(ch);
                if !mine.is_empty() {
                    self.char_terms(ch, &mine, &mut terms);
                }
            }
        }
        if set.contains(SymbolId::REPEAT) {
            terms.push("repeat".to_string());
        }
        if set.contains(SymbolId::SKIP) {
            terms.push("skip".to_string());
        }
        terms.join("|")
    }

    fn char_terms(&self, ch: CharId, set: &SymbolSet, out: &mut Vec<String>) {
        // positions available for each (mora, sync) combination, as a 3-bit mask
        let mut pos = [[0u8; 2]; 2];
        for (m, row) in pos.iter_mut().enumerate() {
            for (s, mask) in row.iter_mut().enumerate() {
                for (k, p) in Position::ALL.iter().enumerate() {
                    if set.contains(segment_id(ch, m == 1, s == 1, *p)) {
                        *mask |= 1 << k;
                    }
                }
            }
        }
        let name = self.char_name(ch);
        let mut emit = |mora: Option<bool>, sync: Option<bool>, mask: u8| {
            if mask == 0 {
                return;
            }
            let mut attrs = Vec::new();
            if let Some(m) = mora {
                attrs.push(if m { "+mu" } else { "-mu" }.to_string());
            }
            if let Some(s) = sync {
                attrs.push(if s { ":1" } else { ":0" }.to_string());
            }
            if mask != 0b111 {
                let names = ["ini", "med", "fin"];
                let ps: Vec<&str> = (0..3).filter(|k| mask & (1 << k) != 0).map(|k| names[k]).collect();
                attrs.push(ps.join("/"));
            }
            let mut t = name.to_string();
            if !attrs.is_empty() {
                let _ = write!(t, "<{}>", attrs.join(","));
            }
            out.push(t);
        };
        let p = pos;
        if p[0][0] == p[0][1] && p[0][0] == p[1][0] && p[0][0] == p[1][1] {
            emit(None, None, p[0][0]);
        } else if p[0][0] == p[0][1] && p[1][0] == p[1][1] {
            emit(Some(false), None, p[0][0]);
            emit(Some(true), None, p[1][0]);
        } else if p[0][0] == p[1][0] && p[0][1] == p[1][1] {
            emit(None, Some(false), p[0][0]);
            emit(None, Some(true), p[0][1]);
        } else {
            for (m, row) in p.iter().enumerate() {
                for (s, mask) in row.iter().enumerate() {
                    emit(Some(m == 1), Some(s == 1), *mask);
                }
            }
        }
    }

    /// Parse the output of [`Inventory::format_set`].
    pub fn parse_set(&self, text: &str) -> Result<SymbolSet, Error> {
        let text = text.trim();
        if text == "{}" {
            return Ok(SymbolSet::empty());
        }
        let mut out = SymbolSet::empty();
        for term in text.split('|') {
            let term = term.trim();
            let (name, attrs) = match term.find('<') {
                Some(i) if term.ends_with('>') => (&term[..i], Some(&term[i + 1..term.len() - 1])),
                Some(_) => return Err(Error::Inventory(format!("malformed set term {term:?}"))),
                None => (term, None),
            };
            let mut set = match name {
                "seg" | "sigma" | "repeat" | "skip" if attrs.is_none() => self.named_set(name).unwrap(),
                _ => {
                    let ch = self.char_id(name).ok_or_else(|| Error::UnknownToken(name.to_string()))?;
                    self.char_variants(ch)
                }
            };
            for attr in attrs.into_iter().flat_map(|a| a.split(',')) {
                let restrict = match attr.trim() {
                    "+mu" => self.named_set("mora").unwrap(),
                    "-mu" => self.complement(&self.named_set("mora").unwrap()),
                    ":1" => self.named_set(":1").unwrap(),
                    ":0" => self.named_set(":0").unwrap(),
                    ps => {
                        let mut acc = SymbolSet::empty();
                        for p in ps.split('/') {
                            acc |= match p {
                                "ini" => self.named_set("initial").unwrap(),
                                "med" => self.named_set("medial").unwrap(),
                                "fin" => self.named_set("final").unwrap(),
                                _ => return Err(Error::Inventory(format!("unknown attribute {p:?}"))),
                            };
                        }
                        acc
                    }
                };
                set &= restrict;
            }
            out |= set;
        }
        Ok(out)
    }
}
