//! Free-group words, presentation files, and the simplicial presentation data
//! attached to a finite presentation.
//!
//! ## Presentation file format
//!
//! Line-oriented UTF-8, `#` starts a comment:
//!
//! ```text
//! p 2
//! generators x y
//! relator [x,y]
//! relator x^2 y^-1
//! ```
//!
//! Word grammar: juxtaposition is multiplication, `^<int>` is an (possibly
//! negative) exponent, `[u,v]` is the commutator `u v u^-1 v^-1`, parentheses
//! group subwords. Generator names are identifiers (`[A-Za-z_][A-Za-z0-9_]*`).

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// Dense generator index into a presentation's alphabet.
pub type GenId = u32;

/// A freely reduced word: (generator, nonzero exponent) pairs with distinct
/// adjacent generators. The empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<(GenId, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(g: GenId) -> Self {
        Word { letters: vec![(g, 1)] }
    }

    /// Build from arbitrary (generator, exponent) pairs, reducing freely.
    pub fn from_letters(letters: impl IntoIterator<Item = (GenId, i64)>) -> Self {
        let mut w = Word::identity();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    fn push(&mut self, g: GenId, e: i64) {
        if e == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some((lg, le)) if *lg == g => {
                *le += e;
                if *le == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push((g, e)),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[(GenId, i64)] {
        &self.letters
    }

    /// Total number of single-generator letters, counting |exponent|.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn concat(&self, rhs: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &rhs.letters {
            w.push(g, e);
        }
        w
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// Commutator [a,b] = a b a^-1 b^-1.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// Exponent sum of each generator appearing in the word.
    pub fn exponent_sums(&self) -> BTreeMap<GenId, i64> {
        let mut sums = BTreeMap::new();
        for &(g, e) in &self.letters {
            *sums.entry(g).or_insert(0) += e;
        }
        sums
    }

    /// Expand into single letters with exponent +-1.
    pub fn single_letters(&self) -> Vec<(GenId, i64)> {
        let mut out = Vec::new();
        for &(g, e) in &self.letters {
            let sign = if e < 0 { -1 } else { 1 };
            for _ in 0..e.unsigned_abs() {
                out.push((g, sign));
            }
        }
        out
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

/// Free reduction of an already-constructed word (idempotent).
pub fn reduce(w: &Word) -> Word {
    Word::from_letters(w.letters.iter().copied())
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(g, e) in self.word.letters() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let name = self
                .names
                .get(g as usize)
                .map(String::as_str)
                .unwrap_or("?");
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A finite presentation: prime, ordered generators, ordered relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub prime: u64,
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_id(&self, name: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g == name).map(|i| i as GenId)
    }

    /// Frattini-condition warnings: relators whose exponent sum at some
    /// generator is not divisible by p. Minimal pro-p presentations satisfy
    /// this; discrete-mode inputs need not, so this is advisory only.
    pub fn frattini_warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (idx, r) in self.relators.iter().enumerate() {
            let bad: Vec<&str> = r
                .exponent_sums()
                .iter()
                .filter(|&(_, &s)| s.rem_euclid(self.prime as i64) != 0)
                .map(|(&g, _)| self.generators[g as usize].as_str())
                .collect();
            if !bad.is_empty() {
                out.push(format!(
                    "relator {} lies outside the Frattini subgroup: exponent sum at {} not divisible by {}",
                    idx + 1,
                    bad.join(", "),
                    self.prime
                ));
            }
        }
        out
    }
}

/// Generator-wise word map: image of each generator in its domain alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMap {
    pub images: Vec<Word>,
}

impl GeneratorMap {
    pub fn identity(n: usize) -> Self {
        GeneratorMap { images: (0..n as GenId).map(Word::generator).collect() }
    }
}

/// Evaluate a generator-wise word map homomorphically, reducing the output.
pub fn apply_generator_map(map: &GeneratorMap, w: &Word) -> Result<Word> {
    let mut out = Word::identity();
    for &(g, e) in w.letters() {
        let img = map
            .images
            .get(g as usize)
            .ok_or_else(|| Error::UnknownGenerator(format!("generator id {g}")))?;
        out = out.concat(&img.pow(e));
    }
    Ok(out)
}

/// The 1-truncated simplicial data of a presentation: faces d0, d1 and
/// degeneracy s0 on the alphabet X ∪ Y (Y-generators appended after X).
///
/// d0(x) = x, d0(y) = 1, d1(x) = x, d1(y) = r_y, s0(x) = x.
#[derive(Clone, Debug)]
pub struct SimplicialPresentation {
    pub base: Presentation,
    /// On X ∪ Y, into words over X.
    pub d0: GeneratorMap,
    /// On X ∪ Y, into words over X.
    pub d1: GeneratorMap,
    /// On X, into words over X ∪ Y (the inclusion).
    pub s0: GeneratorMap,
}

impl SimplicialPresentation {
    pub fn num_x(&self) -> usize {
        self.base.num_generators()
    }

    pub fn num_y(&self) -> usize {
        self.base.relators.len()
    }

    /// Total alphabet size |X| + |Y|.
    pub fn num_xy(&self) -> usize {
        self.num_x() + self.num_y()
    }

    /// Names for the X ∪ Y alphabet (relator slots named y0, y1, ...).
    pub fn xy_names(&self) -> Vec<String> {
        let mut names = self.base.generators.clone();
        for i in 0..self.num_y() {
            names.push(format!("y{i}"));
        }
        names
    }
}

/// Build the face/degeneracy data of a presentation.
pub fn simplicialize(pres: &Presentation) -> SimplicialPresentation {
    let nx = pres.num_generators();
    let ny = pres.relators.len();
    let mut d0 = GeneratorMap::identity(nx);
    let mut d1 = GeneratorMap::identity(nx);
    for i in 0..ny {
        d0.images.push(Word::identity());
        d1.images.push(pres.relators[i].clone());
        let _ = i;
    }
    let s0 = GeneratorMap::identity(nx);
    SimplicialPresentation { base: pres.clone(), d0, d1, s0 }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
    line: usize,
    line_start: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Cursor { text: text.as_bytes(), pos: 0, line, line_start: 0 }
    }

    fn col(&self) -> usize {
        self.pos - self.line_start + 1
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { line: self.line, col: self.col(), msg: msg.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.pos += 1,
            _ => return None,
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        Some(String::from_utf8_lossy(&self.text[start..self.pos]).into_owned())
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }
}

/// Parse a word over the named generators; grammar documented at module level.
pub fn parse_word(text: &str, generators: &[String]) -> Result<Word> {
    let mut cur = Cursor::new(text, 1);
    let w = parse_word_seq(&mut cur, generators)?;
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err(cur.err("unexpected trailing input"));
    }
    Ok(w)
}

fn parse_word_seq(cur: &mut Cursor, generators: &[String]) -> Result<Word> {
    let mut w = Word::identity();
    loop {
        cur.skip_ws();
        match cur.peek() {
            None | Some(b')') | Some(b',') | Some(b']') => break,
            _ => {}
        }
        let atom = parse_atom(cur, generators)?;
        cur.skip_ws();
        let exp = if cur.peek() == Some(b'^') {
            cur.bump();
            cur.integer()?
        } else {
            1
        };
        w = w.concat(&atom.pow(exp));
    }
    Ok(w)
}

fn parse_atom(cur: &mut Cursor, generators: &[String]) -> Result<Word> {
    cur.skip_ws();
    match cur.peek() {
        Some(b'(') => {
            cur.bump();
            let w = parse_word_seq(cur, generators)?;
            cur.skip_ws();
            if cur.bump() != Some(b')') {
                return Err(cur.err("expected `)`"));
            }
            Ok(w)
        }
        Some(b'[') => {
            cur.bump();
            let a = parse_word_seq(cur, generators)?;
            cur.skip_ws();
            if cur.bump() != Some(b',') {
                return Err(cur.err("expected `,` in commutator"));
            }
            let b = parse_word_seq(cur, generators)?;
            cur.skip_ws();
            if cur.bump() != Some(b']') {
                return Err(cur.err("expected `]`"));
            }
            Ok(Word::commutator(&a, &b))
        }
        Some(b'1') => {
            cur.bump();
            Ok(Word::identity())
        }
        _ => {
            let name = cur.ident().ok_or_else(|| cur.err("expected generator, `(`, or `[`"))?;
            let id = generators
                .iter()
                .position(|g| *g == name)
                .ok_or(Error::UnknownGenerator(name))?;
            Ok(Word::generator(id as GenId))
        }
    }
}

/// Parse a presentation file; relators come out freely reduced.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut prime: Option<u64> = None;
    let mut generators: Vec<String> = Vec::new();
    let mut relators: Vec<Word> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(line, lineno + 1);
        let keyword = cur
            .ident()
            .ok_or_else(|| cur.err("expected `p`, `generators`, or `relator`"))?;
        match keyword.as_str() {
            "p" => {
                let v = cur.integer()?;
                if v < 2 || !is_prime(v as u64) {
                    return Err(Error::InvalidPrime(v.max(0) as u64));
                }
                prime = Some(v as u64);
            }
            "generators" => {
                while let Some(name) = cur.ident() {
                    if generators.contains(&name) {
                        return Err(cur.err(format!("duplicate generator `{name}`")));
                    }
                    generators.push(name);
                }
                cur.skip_ws();
                if cur.peek().is_some() {
                    return Err(cur.err("expected generator name"));
                }
            }
            "relator" => {
                let rest = line[cur.pos..].to_string();
                let mut wcur = Cursor::new(&rest, lineno + 1);
                wcur.line_start = 0;
                let w = parse_word_seq(&mut wcur, &generators)?;
                wcur.skip_ws();
                if wcur.peek().is_some() {
                    return Err(wcur.err("unexpected trailing input in relator"));
                }
                relators.push(w);
            }
            other => {
                return Err(cur.err(format!("unknown directive `{other}`")));
            }
        }
    }

    let prime = prime.ok_or(Error::InvalidPrime(0))?;
    Ok(Presentation { prime, generators, relators })
}
