use std::fmt;

use super::FreeGroupError;

/// A freely reduced word in the free group on generators `1..=rank`.
///
/// Letters are signed generator indices: `3` is the third generator and
/// `-3` its inverse. The empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<i32>,
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        Self {
            rank,
            letters: Vec::new(),
        }
    }

    /// The `i`th generator, 1-based.
    pub fn generator(rank: usize, i: usize) -> Result<Self, FreeGroupError> {
        Self::reduce(rank, &[i as i32])
    }

    /// Freely reduces `letters`.
    pub fn reduce(rank: usize, letters: &[i32]) -> Result<Self, FreeGroupError> {
        let mut out: Vec<i32> = Vec::with_capacity(letters.len());
        for &l in letters {
            if l == 0 || l.unsigned_abs() as usize > rank {
                return Err(FreeGroupError::GeneratorOutOfRange { letter: l, rank });
            }
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Ok(Self { rank, letters: out })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    fn check_rank(&self, other: &Self) -> Result<(), FreeGroupError> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(FreeGroupError::RankMismatch {
                expected: self.rank,
                found: other.rank,
            })
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FreeGroupError> {
        self.check_rank(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            if letters.last() == Some(&-l) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        Self {
            rank: self.rank,
            letters,
        }
    }

    /// `self * other`. Panics on a rank mismatch; see [`FreeWord::try_mul`].
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("words in the same free group")
    }

    pub fn pow(&self, n: i32) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::identity(self.rank);
        for _ in 0..n.unsigned_abs() {
            out = out.mul_unchecked(&base);
        }
        out
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    /// `g self g⁻¹`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.mul(self).mul(&g.inverse())
    }

    /// Splits `self = u c u⁻¹` with `c` cyclically reduced.
    pub fn cyclic_decomposition(&self) -> (Self, Self) {
        let l = &self.letters;
        let mut i = 0;
        while l.len() >= 2 * (i + 1) && l[i] == -l[l.len() - 1 - i] {
            i += 1;
        }
        let u = Self {
            rank: self.rank,
            letters: l[..i].to_vec(),
        };
        let c = Self {
            rank: self.rank,
            letters: l[i..l.len() - i].to_vec(),
        };
        (u, c)
    }

    /// Cyclic reduction rotated to its lexicographically least form. Two
    /// words are conjugate iff these agree.
    pub fn conjugacy_normal_form(&self) -> Vec<i32> {
        let (_, c) = self.cyclic_decomposition();
        let n = c.letters.len();
        (0..n.max(1))
            .map(|s| {
                let mut r = c.letters[s.min(n)..].to_vec();
                r.extend_from_slice(&c.letters[..s.min(n)]);
                r
            })
            .min()
            .unwrap_or_default()
    }

    /// Re-reads the word in a free group of larger rank.
    pub fn widen(&self, rank: usize) -> Result<Self, FreeGroupError> {
        Self::reduce(rank, &self.letters)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &l in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if l > 0 {
                write!(f, "g{l}")?;
            } else {
                write!(f, "g{}^-1", -l)?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for FreeWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses the textual word syntax: generators `g1..gN`, inverses `g1^-1`,
/// integer powers `g2^3`, whitespace concatenation, commutators `[u,v]`,
/// and `1` for the identity.
pub fn parse_word(rank: usize, text: &str) -> Result<FreeWord, FreeGroupError> {
    let mut p = Parser {
        rank,
        chars: text.chars().collect(),
        pos: 0,
    };
    let w = p.word()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(w)
}

struct Parser {
    rank: usize,
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: &str) -> FreeGroupError {
        FreeGroupError::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<FreeWord, FreeGroupError> {
        let mut acc = FreeWord::identity(self.rank);
        loop {
            self.skip_ws();
            match self.peek() {
                Some('g') | Some('[') | Some('1') => {
                    let f = self.factor()?;
                    acc = acc.mul_unchecked(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn number(&mut self) -> Result<i64, FreeGroupError> {
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("expected an integer"))
    }

    fn factor(&mut self) -> Result<FreeWord, FreeGroupError> {
        let base = match self.peek() {
            Some('g') => {
                self.pos += 1;
                let i = self.number()?;
                if i <= 0 {
                    return Err(self.error("generator index must be positive"));
                }
                FreeWord::reduce(self.rank, &[i as i32])?
            }
            Some('1') => {
                self.pos += 1;
                FreeWord::identity(self.rank)
            }
            Some('[') => {
                self.pos += 1;
                let a = self.word()?;
                self.skip_ws();
                if self.peek() != Some(',') {
                    return Err(self.error("expected `,` in commutator"));
                }
                self.pos += 1;
                let b = self.word()?;
                self.skip_ws();
                if self.peek() != Some(']') {
                    return Err(self.error("expected `]`"));
                }
                self.pos += 1;
                FreeWord::commutator(&a, &b)
            }
            _ => return Err(self.error("expected a factor")),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.number()?;
            let e = i32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }
}
