//! Finite presentations: parsing, rendering, and realization as a
//! [`GroupTable`] by coset enumeration over the trivial subgroup.
//!
//! Grammar (ASCII):
//!
//! ```text
//! presentation := "<" genlist "|" relation ("," relation)* ">"
//! genlist      := name ("," name)*
//! relation     := word ("=" word)*
//! word         := term ("*"? term)* | "1"
//! term         := name ("^" signed-int)? | name "^" name
//! name         := letter digit*
//! ```
//!
//! `x^y` is `y^-1 x y`; `u = v` becomes the relator `u v^-1`, and a chain
//! `u = v = w` sets every word equal to the last one.

use std::fmt;

use thiserror::Error;

use crate::group::{GroupError, GroupTable};

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("undeclared generator `{name}` at byte {pos}")]
    UndeclaredGenerator { name: String, pos: usize },
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("zero exponent at byte {0}")]
    ZeroExponent(usize),
    #[error("presentation has no generators")]
    NoGenerators,
    #[error("coset enumeration exceeded {0} cosets; the group may be infinite or too large")]
    CosetLimit(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A word as `(generator index, nonzero exponent)` syllables.
pub type Word = Vec<(usize, i64)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

pub fn invert_word(w: &[(usize, i64)]) -> Word {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// Concatenates and merges adjacent syllables over the same generator.
fn push_syllable(w: &mut Word, g: usize, e: i64) {
    if e == 0 {
        return;
    }
    if let Some(last) = w.last_mut() {
        if last.0 == g {
            last.1 += e;
            if last.1 == 0 {
                w.pop();
            }
            return;
        }
    }
    w.push((g, e));
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    generators: Vec<String>,
}

impl<'a> Parser<'a> {
    fn syntax(&self, message: impl Into<String>) -> PresentationError {
        PresentationError::Syntax {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), PresentationError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{}`", c as char)))
        }
    }

    fn name(&mut self) -> Result<(String, usize), PresentationError> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return Err(self.syntax("expected a generator name")),
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ASCII slice");
        Ok((text.to_string(), start))
    }

    fn generator(&mut self) -> Result<usize, PresentationError> {
        let (name, pos) = self.name()?;
        self.generators
            .iter()
            .position(|g| *g == name)
            .ok_or(PresentationError::UndeclaredGenerator { name, pos })
    }

    fn signed_int(&mut self) -> Result<i64, PresentationError> {
        self.skip_ws();
        let start = self.pos;
        let mut negative = false;
        if self.src.get(self.pos) == Some(&b'-') {
            negative = true;
            self.pos += 1;
        } else if self.src.get(self.pos) == Some(&b'+') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits == self.pos {
            self.pos = start;
            return Err(self.syntax("expected an integer exponent"));
        }
        let text = std::str::from_utf8(&self.src[digits..self.pos]).expect("ASCII slice");
        let value: i64 = text.parse().map_err(|_| PresentationError::Syntax {
            pos: digits,
            message: "exponent out of range".into(),
        })?;
        if value == 0 {
            return Err(PresentationError::ZeroExponent(start));
        }
        Ok(if negative { -value } else { value })
    }

    fn word(&mut self) -> Result<Word, PresentationError> {
        let mut w = Word::new();
        if self.peek() == Some(b'1') {
            self.pos += 1;
            return Ok(w);
        }
        let mut first = true;
        loop {
            match self.peek() {
                Some(b'*') if !first => {
                    self.pos += 1;
                }
                Some(c) if c.is_ascii_alphabetic() => {}
                _ if first => return Err(self.syntax("expected a word")),
                _ => break,
            }
            first = false;
            let g = self.generator()?;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                match self.peek() {
                    Some(c) if c.is_ascii_alphabetic() => {
                        let h = self.generator()?;
                        push_syllable(&mut w, h, -1);
                        push_syllable(&mut w, g, 1);
                        push_syllable(&mut w, h, 1);
                    }
                    _ => {
                        let e = self.signed_int()?;
                        push_syllable(&mut w, g, e);
                    }
                }
            } else {
                push_syllable(&mut w, g, 1);
            }
        }
        Ok(w)
    }

    fn relation(&mut self, out: &mut Vec<Word>) -> Result<(), PresentationError> {
        let mut words = vec![self.word()?];
        while self.peek() == Some(b'=') {
            self.pos += 1;
            words.push(self.word()?);
        }
        let last = words.pop().expect("at least one word");
        if words.is_empty() {
            out.push(last);
            return Ok(());
        }
        let last_inv = invert_word(&last);
        for w in words {
            let mut r = w;
            for &(g, e) in &last_inv {
                push_syllable(&mut r, g, e);
            }
            out.push(r);
        }
        Ok(())
    }

    fn presentation(&mut self) -> Result<Presentation, PresentationError> {
        self.expect(b'<')?;
        loop {
            let (name, _) = self.name()?;
            if self.generators.contains(&name) {
                return Err(PresentationError::DuplicateGenerator(name));
            }
            self.generators.push(name);
            if self.peek() == Some(b',') {
                self.pos += 1;
            } else {
                break;
            }
        }
        let mut relators = Vec::new();
        if self.peek() == Some(b'|') {
            self.pos += 1;
            if self.peek() != Some(b'>') {
                loop {
                    self.relation(&mut relators)?;
                    if self.peek() == Some(b',') {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
            }
        }
        self.expect(b'>')?;
        if self.peek().is_some() {
            return Err(self.syntax("trailing input after `>`"));
        }
        Ok(Presentation {
            generators: std::mem::take(&mut self.generators),
            relators,
        })
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    Parser {
        src: text.as_bytes(),
        pos: 0,
        generators: Vec::new(),
    }
    .presentation()
}

impl std::str::FromStr for Presentation {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_presentation(s)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} |", self.generators.join(","))?;
        for (i, r) in self.relators.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            if r.is_empty() {
                f.write_str("1")?;
            }
            for (j, &(g, e)) in r.iter().enumerate() {
                if j > 0 {
                    f.write_str("*")?;
                }
                f.write_str(&self.generators[g])?;
                if e != 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        f.write_str(">")
    }
}

const UNDEFINED: u32 = u32::MAX;

/// A coset table over the trivial subgroup. Columns come in pairs: `2i` is
/// generator `i`, `2i + 1` its inverse.
#[derive(Debug, Clone)]
pub struct CosetTable {
    columns: usize,
    rows: Vec<u32>,
    /// Union-find parent; a coset is live iff it is its own parent.
    parent: Vec<u32>,
    live: usize,
    max_cosets: usize,
}

impl CosetTable {
    fn new(generators: usize, max_cosets: usize) -> Self {
        let columns = 2 * generators;
        CosetTable {
            columns,
            rows: vec![UNDEFINED; columns],
            parent: vec![0],
            live: 1,
            max_cosets,
        }
    }

    #[inline]
    fn get(&self, c: u32, col: usize) -> u32 {
        self.rows[c as usize * self.columns + col]
    }

    #[inline]
    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.rows[c as usize * self.columns + col] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    pub fn live_cosets(&self) -> usize {
        self.live
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    fn define(&mut self, c: u32, col: usize) -> Result<(), PresentationError> {
        if self.parent.len() >= self.max_cosets {
            return Err(PresentationError::CosetLimit(self.max_cosets));
        }
        let d = self.parent.len() as u32;
        self.parent.push(d);
        self.rows.extend(std::iter::repeat_n(UNDEFINED, self.columns));
        self.live += 1;
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = c;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra == rb {
            return;
        }
        let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[drop as usize] = keep;
        self.live -= 1;
        queue.push(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for col in 0..self.columns {
                let f = self.get(e, col);
                if f == UNDEFINED {
                    continue;
                }
                self.set(f, col ^ 1, UNDEFINED);
                let (e1, f1) = (self.rep(e), self.rep(f));
                let e1x = self.get(e1, col);
                let f1x = self.get(f1, col ^ 1);
                if e1x != UNDEFINED {
                    self.merge(f1, e1x, &mut queue);
                } else if f1x != UNDEFINED {
                    self.merge(e1, f1x, &mut queue);
                } else {
                    self.set(e1, col, f1);
                    self.set(f1, col ^ 1, e1);
                }
            }
        }
    }

    /// Scans relator `w` (as columns) from coset `alpha`, defining new
    /// cosets to close gaps and recording deductions and coincidences.
    fn scan_and_fill(&mut self, alpha: u32, w: &[usize]) -> Result<(), PresentationError> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = alpha;
        let mut b = alpha;
        let mut i: isize = 0;
        let mut j: isize = w.len() as isize - 1;
        loop {
            // forward
            while i <= j && self.get(f, w[i as usize]) != UNDEFINED {
                f = self.get(f, w[i as usize]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            // backward
            while j >= i && self.get(b, w[j as usize] ^ 1) != UNDEFINED {
                b = self.get(b, w[j as usize] ^ 1);
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            } else if i == j {
                let col = w[i as usize];
                self.set(f, col, b);
                self.set(b, col ^ 1, f);
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }
}

fn relator_columns(r: &[(usize, i64)]) -> Vec<usize> {
    let mut out = Vec::new();
    for &(g, e) in r {
        let col = if e > 0 { 2 * g } else { 2 * g + 1 };
        out.extend(std::iter::repeat_n(col, e.unsigned_abs() as usize));
    }
    out
}

/// Runs HLT-style coset enumeration over the trivial subgroup.
pub fn enumerate_cosets(p: &Presentation, max_cosets: usize) -> Result<CosetTable, PresentationError> {
    if p.generators.is_empty() {
        return Err(PresentationError::NoGenerators);
    }
    let relators: Vec<Vec<usize>> = p.relators.iter().map(|r| relator_columns(r)).collect();
    let mut table = CosetTable::new(p.generators.len(), max_cosets.max(1));
    let mut alpha = 0u32;
    while (alpha as usize) < table.parent.len() {
        for r in &relators {
            if !table.is_live(alpha) {
                break;
            }
            table.scan_and_fill(alpha, r)?;
        }
        if table.is_live(alpha) {
            for col in 0..table.columns {
                if table.get(alpha, col) == UNDEFINED {
                    table.define(alpha, col)?;
                }
            }
        }
        alpha += 1;
    }
    Ok(compact(table))
}

/// Renumbers live cosets in order of definition and drops dead rows.
fn compact(table: CosetTable) -> CosetTable {
    let mut new_index = vec![UNDEFINED; table.parent.len()];
    let mut next = 0u32;
    for c in 0..table.parent.len() as u32 {
        if table.is_live(c) {
            new_index[c as usize] = next;
            next += 1;
        }
    }
    let mut rows = Vec::with_capacity(next as usize * table.columns);
    for c in 0..table.parent.len() as u32 {
        if table.is_live(c) {
            for col in 0..table.columns {
                let v = table.get(c, col);
                debug_assert!(v != UNDEFINED && table.is_live(v));
                rows.push(new_index[v as usize]);
            }
        }
    }
    CosetTable {
        columns: table.columns,
        rows,
        parent: (0..next).collect(),
        live: next as usize,
        max_cosets: table.max_cosets,
    }
}

impl CosetTable {
    /// Image of coset `c` under column `col` in a completed table.
    pub fn action(&self, c: usize, col: usize) -> usize {
        self.get(c as u32, col) as usize
    }

    /// The regular representation as a multiplication table: element `c` is
    /// the group element carrying coset 0 to coset `c`.
    pub fn to_group(&self, label: impl Into<String>) -> Result<GroupTable, PresentationError> {
        let n = self.live;
        // spanning tree from coset 0: each coset reached by (parent, column)
        let mut reached: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut order = vec![0usize];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            for col in 0..self.columns {
                let d = self.action(c, col);
                if !seen[d] {
                    seen[d] = true;
                    reached[d] = Some((c, col));
                    order.push(d);
                }
            }
        }
        // column c of the table is the right action of element c
        let mut by_column = vec![0u32; n * n];
        for (a, slot) in by_column.iter_mut().take(n).enumerate() {
            *slot = a as u32;
        }
        for &c in &order[1..] {
            let (pc, col) = reached[c].expect("reached in BFS");
            for a in 0..n {
                let via = by_column[pc * n + a] as usize;
                by_column[c * n + a] = self.action(via, col) as u32;
            }
        }
        let mut mul = vec![0u32; n * n];
        for b in 0..n {
            for a in 0..n {
                mul[a * n + b] = by_column[b * n + a];
            }
        }
        Ok(GroupTable::from_mul_table(label, n, mul)?)
    }
}

/// Realizes a presentation as a multiplication table.
pub fn realize(p: &Presentation, max_cosets: usize) -> Result<GroupTable, PresentationError> {
    enumerate_cosets(p, max_cosets)?.to_group(format!("P\"{p}\""))
}

/// One entry of a presentation catalog file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub text: String,
    pub presentation: Presentation,
}

/// Parses the catalog format: one presentation per line, `#` starts a
/// comment, and a trailing comment names the entry.
pub fn parse_catalog(source: &str) -> Result<Vec<CatalogEntry>, (usize, PresentationError)> {
    let mut out = Vec::new();
    for (lineno, line) in source.lines().enumerate() {
        let (body, comment) = match line.find('#') {
            Some(i) => (&line[..i], Some(line[i + 1..].trim())),
            None => (line, None),
        };
        let body = body.trim();
        if body.is_empty() {
            continue;
        }
        let presentation = parse_presentation(body).map_err(|e| (lineno + 1, e))?;
        out.push(CatalogEntry {
            name: comment.unwrap_or(body).to_string(),
            text: body.to_string(),
            presentation,
        });
    }
    Ok(out)
}
