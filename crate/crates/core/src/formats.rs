//! Plain-text file formats.
//!
//! All formats are whitespace separated, start with a header line and allow
//! `#` comments. Writers produce a canonical layout that the readers accept
//! and that re-serializes byte for byte.
//!
//! ```text
//! circuit <w>          braid <n> | rcirc <n>     nf <n> <m> <p>
//! toffoli <c1> <c2> <t>  <signed letters...>     <n images> (p lines)
//!
//! state <n>            group <d>                 gate <d>
//! <5 images> | <index>   <d indices> (d rows)      <d images> (d rows)
//! ```

use std::fmt::{self, Display, Write as _};

use crate::braid::{BraidWord, NormalForm, Perm};
use crate::compiler::{ToffoliCircuit, ToffoliGate};
use crate::error::{Error, Result};
use crate::qdouble::{DitState, GroupTable, PairGate};

/// Letters per line when writing braid words.
const LETTERS_PER_LINE: usize = 32;

struct Line<'a> {
    number: usize,
    tokens: Vec<&'a str>,
}

impl Line<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::format(self.number, msg)
    }

    fn int<T: std::str::FromStr>(&self, i: usize, what: &str) -> Result<T> {
        let tok = self.tokens.get(i).ok_or_else(|| self.err(format!("missing {what}")))?;
        tok.parse().map_err(|_| self.err(format!("{what} `{tok}` is not a valid integer")))
    }

    fn ints<T: std::str::FromStr>(&self, what: &str) -> Result<Vec<T>> {
        (0..self.tokens.len()).map(|i| self.int(i, what)).collect()
    }

    fn expect_len(&self, n: usize, what: &str) -> Result<()> {
        if self.tokens.len() != n {
            return Err(self.err(format!("{what}: expected {n} fields, found {}", self.tokens.len())));
        }
        Ok(())
    }
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some(Line { number: i + 1, tokens })
    })
}

/// Splits off the header line and checks its keyword.
fn header<'a>(text: &'a str, keywords: &[&str]) -> Result<(Line<'a>, Vec<Line<'a>>)> {
    let mut it = lines(text);
    let head = it.next().ok_or_else(|| Error::format(1, format!("empty input, expected `{}`", keywords[0])))?;
    if !keywords.contains(&head.tokens[0]) {
        return Err(head.err(format!("expected header `{}`, found `{}`", keywords.join("` or `"), head.tokens[0])));
    }
    Ok((head, it.collect()))
}

fn wrap<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Format { .. } => e,
        other => Error::format(line, other.to_string()),
    })
}

pub fn parse_circuit(text: &str) -> Result<ToffoliCircuit> {
    let (head, body) = header(text, &["circuit"])?;
    head.expect_len(2, "circuit header")?;
    let w: usize = head.int(1, "wire count")?;
    let mut gates = Vec::with_capacity(body.len());
    for line in &body {
        if line.tokens[0] != "toffoli" {
            return Err(line.err(format!("expected `toffoli`, found `{}`", line.tokens[0])));
        }
        line.expect_len(4, "toffoli line")?;
        let (c1, c2, t) = (line.int(1, "control")?, line.int(2, "control")?, line.int(3, "target")?);
        let gate = wrap(line.number, ToffoliGate::new(c1, c2, t))?;
        if c1.max(c2).max(t) > w {
            return Err(line.err(format!("gate ({c1}, {c2}, {t}) exceeds {w} wires")));
        }
        gates.push(gate);
    }
    wrap(head.number, ToffoliCircuit::new(w, gates))
}

pub fn write_circuit(c: &ToffoliCircuit) -> String {
    let mut s = format!("circuit {}\n", c.wires());
    for g in c.gates() {
        writeln!(s, "toffoli {} {} {}", g.c1, g.c2, g.target).unwrap();
    }
    s
}

/// Header keyword of a braid file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraidKind {
    Braid,
    RCircuit,
}

impl BraidKind {
    fn keyword(self) -> &'static str {
        match self {
            BraidKind::Braid => "braid",
            BraidKind::RCircuit => "rcirc",
        }
    }
}

pub fn parse_braid(text: &str) -> Result<(BraidWord, BraidKind)> {
    let (head, body) = header(text, &["braid", "rcirc"])?;
    head.expect_len(2, "braid header")?;
    let kind = if head.tokens[0] == "braid" {
        BraidKind::Braid
    } else {
        BraidKind::RCircuit
    };
    let n: usize = head.int(1, "strand count")?;
    let mut letters = Vec::new();
    for line in &body {
        let row: Vec<i32> = line.ints("letter")?;
        for &l in &row {
            if l == 0 || l.unsigned_abs() as usize >= n {
                return Err(line.err(format!("letter {l} out of range for {n} strands")));
            }
        }
        letters.extend(row);
    }
    Ok((wrap(head.number, BraidWord::new(n, letters))?, kind))
}

pub fn write_braid(w: &BraidWord, kind: BraidKind) -> String {
    let mut s = format!("{} {}\n", kind.keyword(), w.n());
    for chunk in w.letters().chunks(LETTERS_PER_LINE) {
        s.push_str(&join(chunk));
        s.push('\n');
    }
    s
}

fn join<T: Display>(items: &[T]) -> String {
    let mut s = String::new();
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        write!(s, "{x}").unwrap();
    }
    s
}

pub fn parse_nf(text: &str) -> Result<NormalForm> {
    let (head, body) = header(text, &["nf"])?;
    head.expect_len(4, "nf header")?;
    let n: usize = head.int(1, "strand count")?;
    let m: i64 = head.int(2, "infimum")?;
    let p: usize = head.int(3, "factor count")?;
    if body.len() != p {
        return Err(head.err(format!("header announces {p} factors, found {}", body.len())));
    }
    let mut factors = Vec::with_capacity(p);
    for line in &body {
        line.expect_len(n, "factor")?;
        let images: Vec<usize> = line.ints("image")?;
        factors.push(wrap(line.number, Perm::from_images(&images))?);
    }
    wrap(head.number, NormalForm::from_parts(n, m, factors))
}

pub fn write_nf(nf: &NormalForm) -> String {
    let mut s = format!("nf {} {} {}\n", nf.n(), nf.infimum(), nf.factors().len());
    for f in nf.factors() {
        let images: Vec<usize> = f.images();
        s.push_str(&join(&images));
        s.push('\n');
    }
    s
}

/// Dit states use images of `1..5` for permutation groups and element
/// indices otherwise.
pub fn parse_state(text: &str, group: &GroupTable) -> Result<DitState> {
    let (head, body) = header(text, &["state"])?;
    head.expect_len(2, "state header")?;
    let n: usize = head.int(1, "dit count")?;
    if body.len() != n {
        return Err(head.err(format!("header announces {n} dits, found {}", body.len())));
    }
    let mut dits = Vec::with_capacity(n);
    for line in &body {
        let g = if group.is_permutation_group() {
            line.expect_len(5, "dit")?;
            let v: Vec<u8> = line.ints("image")?;
            let images: [u8; 5] = v.try_into().expect("length checked");
            wrap(line.number, group.from_images(&images))?
        } else {
            line.expect_len(1, "dit")?;
            wrap(line.number, group.element(line.int(0, "element index")?))?
        };
        dits.push(g);
    }
    DitState::new(group, dits)
}

pub fn write_state(state: &DitState, group: &GroupTable) -> String {
    let mut s = format!("state {}\n", state.len());
    for &g in &state.dits {
        match group.images(g) {
            Some(images) => s.push_str(&join(&images)),
            None => write!(s, "{}", g.index()).unwrap(),
        }
        s.push('\n');
    }
    s
}

/// A multiplication table: `d` rows of `d` element indices, row `a` column
/// `b` holding `a·b`, element 0 the identity.
pub fn parse_group(text: &str, name: &str) -> Result<GroupTable> {
    let (head, body) = header(text, &["group"])?;
    head.expect_len(2, "group header")?;
    let d: usize = head.int(1, "group order")?;
    let rows = square(&head, &body, d, "row")?;
    wrap(head.number, GroupTable::from_table(name, rows))
}

pub fn write_group(group: &GroupTable) -> String {
    let d = group.order();
    let mut s = format!("group {d}\n");
    let elems: Vec<_> = group.elements().collect();
    for &a in &elems {
        let row: Vec<usize> = elems.iter().map(|&b| group.mul(a, b).index()).collect();
        s.push_str(&join(&row));
        s.push('\n');
    }
    s
}

fn square(head: &Line, body: &[Line], d: usize, what: &str) -> Result<Vec<Vec<usize>>> {
    if body.len() != d {
        return Err(head.err(format!("header announces {d} rows, found {}", body.len())));
    }
    body.iter()
        .map(|line| {
            line.expect_len(d, what)?;
            line.ints("entry")
        })
        .collect()
}

/// A pair gate on `d`-state dits: row `a`, column `b` holds the index
/// `a'·d + b'` of the image pair.
pub fn parse_gate(text: &str) -> Result<PairGate> {
    let (head, body) = header(text, &["gate"])?;
    head.expect_len(2, "gate header")?;
    let d: usize = head.int(1, "dit dimension")?;
    let rows = square(&head, &body, d, "row")?;
    let map = rows.into_iter().flatten().map(|x| x as u32).collect();
    wrap(head.number, PairGate::new(d, map))
}

pub fn write_gate(g: &PairGate) -> String {
    let mut s = format!("gate {}\n", g.d());
    for row in g.map().chunks(g.d()) {
        s.push_str(&join(row));
        s.push('\n');
    }
    s
}

/// Ordered `key=value` lines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, key: &str, value: impl Display) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn parse(text: &str) -> Result<Report> {
        let mut r = Report::new();
        for line in lines(text) {
            let joined = line.tokens.join(" ");
            let (k, v) = joined
                .split_once('=')
                .ok_or_else(|| line.err("expected key=value"))?;
            if k.is_empty() || k.contains(char::is_whitespace) {
                return Err(line.err(format!("invalid key `{k}`")));
            }
            r.push(k, v);
        }
        Ok(r)
    }
}

impl Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}
