//! Named finite alphabets and words over them.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Index of an input symbol within its [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u16);

pub type Word = Vec<Symbol>;

/// Spellings that may never be used as symbol names.
pub const RESERVED: &[&str] = &["END", "lambda", "λ", "ROOT", "*", "->", "⋗"];

/// Unicode spellings accepted when reading words, mapped to ASCII names.
const ALIASES: &[(&str, &str)] = &[
    ("⊳₁", "b1"),
    ("⊳₂", "b2"),
    ("⊳", "b0"),
    ("¢", "cent"),
    ("α₀", "alpha0"),
    ("α₁", "alpha1"),
    ("α₂", "alpha2"),
    ("α₃", "alpha3"),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("duplicate symbol `{0}`")]
    Duplicate(String),
    #[error("`{0}` is reserved and cannot be a symbol name")]
    Reserved(String),
    #[error("symbol name `{0}` must be non-empty and free of whitespace and `#`")]
    BadName(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("the endmarker cannot occur inside an input word")]
    EndmarkerInInput,
    #[error("alphabet too large")]
    TooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet { names: Vec::new(), index: HashMap::new() };
        for name in names {
            let name = name.into();
            if RESERVED.contains(&name.as_str()) {
                return Err(AlphabetError::Reserved(name));
            }
            if name.is_empty() || name.contains(char::is_whitespace) || name.contains('#') {
                return Err(AlphabetError::BadName(name));
            }
            if alphabet.index.contains_key(&name) {
                return Err(AlphabetError::Duplicate(name));
            }
            if alphabet.names.len() >= u16::MAX as usize {
                return Err(AlphabetError::TooLarge);
            }
            alphabet.index.insert(name.clone(), Symbol(alphabet.names.len() as u16));
            alphabet.names.push(name);
        }
        Ok(alphabet)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, sym: Symbol) -> &str {
        self.names.get(sym.0 as usize).map_or("?", String::as_str)
    }

    pub fn get(&self, name: &str) -> Option<Symbol> {
        self.index.get(name).copied()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len()).map(|i| Symbol(i as u16))
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        (sym.0 as usize) < self.names.len()
    }

    /// True if every name is one character long, so words print without
    /// separators.
    pub fn is_compact(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Reads a word. `λ` or an empty string is the empty word. If the text
    /// contains whitespace it is split on it; otherwise symbols are matched
    /// greedily, longest spelling first.
    pub fn parse_word(&self, text: &str) -> Result<Word, AlphabetError> {
        let text = text.trim();
        if text.is_empty() || text == "λ" {
            return Ok(Vec::new());
        }
        if text.contains(char::is_whitespace) {
            return text.split_whitespace().map(|tok| self.token(tok)).collect();
        }
        let mut spellings: Vec<(&str, &str)> = self
            .names
            .iter()
            .map(|n| (n.as_str(), n.as_str()))
            .chain(ALIASES.iter().copied().filter(|(_, target)| self.index.contains_key(*target)))
            .chain([("END", "END"), ("⋗", "END")])
            .collect();
        spellings.sort_by_key(|(s, _)| std::cmp::Reverse(s.len()));
        let mut word = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let (spelling, target) = spellings.iter().find(|(s, _)| rest.starts_with(s)).ok_or_else(|| {
                AlphabetError::UnknownSymbol(rest.chars().next().map(String::from).unwrap_or_default())
            })?;
            if *target == "END" {
                return Err(AlphabetError::EndmarkerInInput);
            }
            word.push(self.index[*target]);
            rest = &rest[spelling.len()..];
        }
        Ok(word)
    }

    fn token(&self, tok: &str) -> Result<Symbol, AlphabetError> {
        if tok == "END" || tok == "⋗" {
            return Err(AlphabetError::EndmarkerInInput);
        }
        if let Some(s) = self.get(tok) {
            return Ok(s);
        }
        ALIASES
            .iter()
            .find(|(alias, _)| *alias == tok)
            .and_then(|(_, target)| self.get(target))
            .ok_or_else(|| AlphabetError::UnknownSymbol(tok.to_string()))
    }

    pub fn render_word(&self, word: &[Symbol]) -> String {
        if word.is_empty() {
            return "λ".to_string();
        }
        let sep = if self.is_compact() { "" } else { " " };
        word.iter().map(|&s| self.name(s)).collect::<Vec<_>>().join(sep)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(" "))
    }
}

/// Every word over an alphabet of `size` symbols with length at most
/// `max_len`, in length-then-lexicographic order.
pub fn words_up_to(size: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(move |len| {
        let total = (size as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
        let count = if size == 0 && len > 0 { 0 } else { total };
        (0..count).map(move |mut n| {
            let mut w = vec![Symbol(0); len];
            for slot in w.iter_mut().rev() {
                *slot = Symbol((n % size as u128) as u16);
                n /= size as u128;
            }
            w
        })
    })
}
