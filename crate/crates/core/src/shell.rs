//! Text formats, the presentation language, and the subcommands behind the
//! `svec2` binary.

use std::fmt;
use std::sync::Arc;

use crate::dalgebra::{Algebra, AlgebraKind, AxiomReport};
use crate::dim7::normalize7;
use crate::error::{Error, Result};
use crate::ground::linalg::is_zero_vec;
use crate::ground::{Fe, Field, Matrix, Subspace};
use crate::lie2::LieAlgebra2;
use crate::pbw::{confluence_test, verify_pbw, StraightenCtx};
use crate::polyd::{present, quotient_to_dalgebra, PElem, PolyRing, Presentation};
use crate::structure::{check_correspondence, decompose, is_local, maximal_ideals};

// ---------------------------------------------------------------------------
// Presentation language: `P(r,s) / [rel, ...] @ deg N`

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        if c.is_ascii_alphabetic() {
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            col += i - start;
            out.push(Spanned {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                col: c0,
            });
        } else if c.is_ascii_digit() {
            if c == '0' && i + 1 < chars.len() && (chars[i + 1] == 'x' || chars[i + 1] == 'X') {
                i += 2;
                while i < chars.len() && chars[i].is_ascii_hexdigit() {
                    i += 1;
                }
                if i == start + 2 {
                    return Err(syntax(l0, c0, "hex literal without digits"));
                }
            } else {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            col += i - start;
            out.push(Spanned {
                tok: Tok::Num(chars[start..i].iter().collect()),
                line: l0,
                col: c0,
            });
        } else if "()[],/@^*+-".contains(c) {
            i += 1;
            col += 1;
            out.push(Spanned {
                tok: Tok::Sym(c),
                line: l0,
                col: c0,
            });
        } else {
            return Err(syntax(l0, c0, format!("unexpected character {c:?}")));
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    ring: Option<PolyRing>,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, msg: impl Into<String>) -> Error {
        let t = self.peek();
        syntax(t.line, t.col, msg)
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.peek().tok == Tok::Sym(c) {
            self.next();
            Ok(())
        } else {
            Err(self.err_here(format!("expected '{c}'")))
        }
    }

    fn expect_ident(&mut self, name: &str) -> Result<()> {
        if self.peek().tok == Tok::Ident(name.to_string()) {
            self.next();
            Ok(())
        } else {
            Err(self.err_here(format!("expected '{name}'")))
        }
    }

    fn decimal(&mut self) -> Result<usize> {
        let t = self.next();
        match &t.tok {
            Tok::Num(s) if !s.starts_with("0x") && !s.starts_with("0X") => s
                .parse()
                .map_err(|_| syntax(t.line, t.col, "number too large")),
            _ => Err(syntax(t.line, t.col, "expected a decimal number")),
        }
    }

    fn ring(&self) -> &PolyRing {
        self.ring.as_ref().expect("ring parsed first")
    }

    fn coefficient(&self, s: &str, line: usize, col: usize) -> Result<Fe> {
        let f = self.ring().field;
        let digits = s
            .strip_prefix("0x")
            .or_else(|| s.strip_prefix("0X"))
            .unwrap_or(s);
        let bits =
            u32::from_str_radix(digits, 16).map_err(|_| syntax(line, col, "bad coefficient"))?;
        if bits as usize >= f.size() {
            return Err(syntax(
                line,
                col,
                format!("coefficient {s} is not in GF(2^{})", f.degree()),
            ));
        }
        Ok(Fe(bits as u16))
    }

    /// Splits an identifier such as `xi1x2` into generators.
    fn generators(&self, name: &str, line: usize, col: usize) -> Result<PElem> {
        let ring = self.ring();
        let bytes = name.as_bytes();
        let mut i = 0;
        let mut acc = ring.one();
        while i < bytes.len() {
            let (kind, skip) = if name[i..].starts_with("xi") {
                ("xi", 2)
            } else if bytes[i] == b'x' {
                ("x", 1)
            } else if bytes[i] == b'y' {
                ("y", 1)
            } else {
                return Err(syntax(
                    line,
                    col + i,
                    format!("unknown generator in {name:?}"),
                ));
            };
            let start = i + skip;
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            if end == start {
                return Err(syntax(
                    line,
                    col + i,
                    format!("generator {kind} needs an index"),
                ));
            }
            let idx: usize = name[start..end]
                .parse()
                .map_err(|_| syntax(line, col + start, "index too large"))?;
            let limit = if kind == "y" { ring.s } else { ring.r };
            if idx == 0 || idx > limit {
                return Err(Error::IndexOutOfRange { index: idx, limit });
            }
            let g = match kind {
                "x" => ring.x(idx - 1),
                "xi" => ring.xi(idx - 1),
                _ => ring.y(idx - 1),
            };
            acc = ring.mul(&acc, &g);
            i = end;
        }
        Ok(acc)
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek().tok, Tok::Ident(_) | Tok::Num(_) | Tok::Sym('('))
    }

    fn atom(&mut self) -> Result<PElem> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(name) => self.generators(name, t.line, t.col),
            Tok::Num(s) => {
                let c = self.coefficient(s, t.line, t.col)?;
                Ok(self.ring().constant(c))
            }
            Tok::Sym('(') => {
                let p = self.poly()?;
                self.expect_sym(')')?;
                Ok(p)
            }
            _ => Err(syntax(t.line, t.col, "expected a term")),
        }
    }

    fn factor(&mut self) -> Result<PElem> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Sym('^') {
            return Ok(base);
        }
        self.next();
        let e = self.decimal()?;
        let ring = self.ring();
        let mut acc = ring.one();
        for _ in 0..e {
            acc = ring.mul(&acc, &base);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<PElem> {
        let mut acc = self.factor()?;
        loop {
            if self.peek().tok == Tok::Sym('*') {
                self.next();
            } else if !self.starts_factor() {
                return Ok(acc);
            }
            let rhs = self.factor()?;
            acc = self.ring().mul(&acc, &rhs);
        }
    }

    fn poly(&mut self) -> Result<PElem> {
        if self.peek().tok == Tok::Sym('+') {
            self.next();
        }
        let mut acc = self.product()?;
        while matches!(self.peek().tok, Tok::Sym('+') | Tok::Sym('-')) {
            self.next();
            let rhs = self.product()?;
            acc = acc.add(&self.ring().field, &rhs);
        }
        Ok(acc)
    }
}

/// Parses `P(r,s) / [rel, ...] @ deg N` over `field`. Products are written
/// with `*` or by juxtaposition, scalars in hex (`0x1b` or `1b`).
pub fn parse_presentation(src: &str, field: Field) -> Result<Presentation> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        ring: None,
    };
    p.expect_ident("P")?;
    p.expect_sym('(')?;
    let r = p.decimal()?;
    p.expect_sym(',')?;
    let s = p.decimal()?;
    p.expect_sym(')')?;
    if r > 16 || s > 16 {
        return Err(Error::IndexOutOfRange {
            index: r.max(s),
            limit: 16,
        });
    }
    p.ring = Some(PolyRing::new(field, r, s)?);
    p.expect_sym('/')?;
    p.expect_sym('[')?;
    let mut rels = Vec::new();
    while p.peek().tok != Tok::Sym(']') {
        let (line, col) = (p.peek().line, p.peek().col);
        let rel = p.poly()?;
        if rel.is_zero() {
            return Err(syntax(line, col, "relation reduces to zero"));
        }
        rels.push(rel);
        if p.peek().tok == Tok::Sym(',') {
            p.next();
        } else if p.peek().tok != Tok::Sym(']') {
            return Err(p.err_here("expected ',' or ']'"));
        }
    }
    p.expect_sym(']')?;
    p.expect_sym('@')?;
    p.expect_ident("deg")?;
    let bound = p.decimal()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.err_here("trailing input"));
    }
    let ring = p.ring.take().expect("ring parsed");
    Presentation::new(ring, rels, bound)
}

pub fn print_presentation(p: &Presentation) -> String {
    let rels: Vec<String> = p.relations.iter().map(|r| r.to_string()).collect();
    format!(
        "P({},{}) / [{}] @ deg {}",
        p.ring.r,
        p.ring.s,
        rels.join(", "),
        p.degree_bound
    )
}

// ---------------------------------------------------------------------------
// Structure-constant files

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Assoc2,
    DAlgebra,
    Lie2,
}

impl FileKind {
    fn name(self) -> &'static str {
        match self {
            FileKind::Assoc2 => "assoc2",
            FileKind::DAlgebra => "dalgebra",
            FileKind::Lie2 => "lie2",
        }
    }

    fn algebra_kind(self) -> Option<AlgebraKind> {
        match self {
            FileKind::Assoc2 => Some(AlgebraKind::Assoc),
            FileKind::DAlgebra => Some(AlgebraKind::DAlgebra),
            FileKind::Lie2 => None,
        }
    }
}

/// Dense structure constants as stored on disk. `tensor` holds the product
/// (or bracket) of basis pair `(i,j)` in row `i·n + j`; `dmat` is row-major
/// with column `j` equal to `d(e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub field: Field,
    pub kind: FileKind,
    pub n: usize,
    pub unit_idx: usize,
    pub labels: Vec<String>,
    pub tensor: Vec<Fe>,
    pub dmat: Vec<Fe>,
}

impl AlgebraFile {
    pub fn from_algebra(a: &Algebra, kind: AlgebraKind) -> AlgebraFile {
        AlgebraFile {
            field: a.field(),
            kind: match kind {
                AlgebraKind::Assoc => FileKind::Assoc2,
                AlgebraKind::DAlgebra => FileKind::DAlgebra,
            },
            n: a.dim(),
            unit_idx: 0,
            labels: a.labels().to_vec(),
            tensor: a.structure_tensor().to_vec(),
            dmat: a.dmat().data().to_vec(),
        }
    }

    pub fn from_lie(l: &LieAlgebra2) -> AlgebraFile {
        AlgebraFile {
            field: l.field(),
            kind: FileKind::Lie2,
            n: l.dim(),
            unit_idx: 0,
            labels: l.labels().to_vec(),
            tensor: l.bracket_tensor().to_vec(),
            dmat: l.dmat().data().to_vec(),
        }
    }

    pub fn parse(src: &str) -> Result<AlgebraFile> {
        let mut lines = src
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .peekable();
        let mut header = |key: &str, optional: bool| -> Result<Option<(usize, String)>> {
            match lines.peek() {
                Some(&(ln, l)) if l.split_whitespace().next() == Some(key) => {
                    lines.next();
                    Ok(Some((ln, l[key.len()..].trim().to_string())))
                }
                Some(&(ln, _)) if !optional => Err(syntax(ln, 1, format!("expected '{key}'"))),
                None if !optional => Err(syntax(0, 0, format!("missing '{key}'"))),
                _ => Ok(None),
            }
        };
        let (fl, fv) = header("field", false)?.expect("required");
        let field =
            Field::from_name(&fv).map_err(|_| syntax(fl, 7, format!("bad field {fv:?}")))?;
        let (kl, kv) = header("kind", false)?.expect("required");
        let kind = match kv.as_str() {
            "assoc2" => FileKind::Assoc2,
            "dalgebra" => FileKind::DAlgebra,
            "lie2" => FileKind::Lie2,
            _ => return Err(syntax(kl, 6, format!("unknown kind {kv:?}"))),
        };
        let (nl, nv) = header("dim", false)?.expect("required");
        let n: usize = nv.parse().map_err(|_| syntax(nl, 5, "bad dimension"))?;
        if n == 0 {
            return Err(syntax(nl, 5, "dimension must be positive"));
        }
        let unit_idx = match header("unit", true)? {
            Some((ul, uv)) => {
                let u: usize = uv.parse().map_err(|_| syntax(ul, 6, "bad unit index"))?;
                if u >= n {
                    return Err(Error::IndexOutOfRange { index: u, limit: n });
                }
                u
            }
            None => 0,
        };
        let labels = match header("labels", true)? {
            Some((ll, lv)) => {
                let ls: Vec<String> = lv.split_whitespace().map(str::to_string).collect();
                if ls.len() != n {
                    return Err(syntax(
                        ll,
                        8,
                        format!("expected {n} labels, found {}", ls.len()),
                    ));
                }
                ls
            }
            None => default_labels(kind, n),
        };
        let section = if kind == FileKind::Lie2 {
            "bracket"
        } else {
            "product"
        };
        header(section, false)?;
        let mut read_rows = |rows: usize| -> Result<Vec<Fe>> {
            let mut out = Vec::with_capacity(rows * n);
            for _ in 0..rows {
                let (ln, l) = lines
                    .next()
                    .ok_or_else(|| syntax(0, 0, "unexpected end of file"))?;
                let cells: Vec<&str> = l.split_whitespace().collect();
                if cells.len() != n {
                    return Err(syntax(
                        ln,
                        1,
                        format!("expected {n} entries, found {}", cells.len()),
                    ));
                }
                let mut col = 1;
                for cell in cells {
                    let fe = field
                        .parse_hex(cell)
                        .map_err(|_| syntax(ln, col, format!("bad scalar {cell:?}")))?;
                    out.push(fe);
                    col += cell.len() + 1;
                }
            }
            Ok(out)
        };
        let tensor = read_rows(n * n)?;
        match lines.next() {
            Some((_, "d")) => {}
            Some((ln, _)) => return Err(syntax(ln, 1, "expected 'd'")),
            None => return Err(syntax(0, 0, "missing 'd'")),
        }
        let mut rest = Vec::new();
        for _ in 0..n {
            match lines.next() {
                Some(x) => rest.push(x),
                None => return Err(syntax(0, 0, "unexpected end of file")),
            }
        }
        let mut dmat = Vec::with_capacity(n * n);
        for (ln, l) in rest {
            let cells: Vec<&str> = l.split_whitespace().collect();
            if cells.len() != n {
                return Err(syntax(
                    ln,
                    1,
                    format!("expected {n} entries, found {}", cells.len()),
                ));
            }
            for cell in cells {
                dmat.push(
                    field
                        .parse_hex(cell)
                        .map_err(|_| syntax(ln, 1, format!("bad scalar {cell:?}")))?,
                );
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(syntax(ln, 1, "trailing input"));
        }
        Ok(AlgebraFile {
            field,
            kind,
            n,
            unit_idx,
            labels,
            tensor,
            dmat,
        })
    }

    /// The algebra without running its axiom suite; the unit is moved to index 0.
    pub fn build_algebra(&self) -> Result<(AlgebraKind, Algebra)> {
        let kind = self
            .kind
            .algebra_kind()
            .ok_or_else(|| Error::NotApplicable("file describes a Lie algebra".into()))?;
        let dmat = Matrix::from_data(self.field, self.n, self.n, self.dmat.clone())?;
        if self.unit_idx == 0 {
            let a = Algebra::new(
                self.field,
                self.n,
                self.tensor.clone(),
                dmat,
                Some(self.labels.clone()),
            )?;
            return Ok((kind, a));
        }
        // Swap the unit into position 0.
        let n = self.n;
        let u = self.unit_idx;
        let perm = |i: usize| {
            if i == 0 {
                u
            } else if i == u {
                0
            } else {
                i
            }
        };
        let mut tensor = vec![Fe::ZERO; n * n * n];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    tensor[(i * n + j) * n + l] =
                        self.tensor[(perm(i) * n + perm(j)) * n + perm(l)];
                }
            }
        }
        let mut dm = Matrix::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                dm.set(r, c, dmat.get(perm(r), perm(c)));
            }
        }
        let labels = (0..n).map(|i| self.labels[perm(i)].clone()).collect();
        Ok((kind, Algebra::new(self.field, n, tensor, dm, Some(labels))?))
    }

    /// The algebra, rejected with its axiom report if any axiom fails.
    pub fn to_algebra(&self) -> Result<(AlgebraKind, Algebra)> {
        let (kind, a) = self.build_algebra()?;
        a.verify_axioms(kind).into_result()?;
        Ok((kind, a))
    }

    pub fn build_lie(&self) -> Result<LieAlgebra2> {
        if self.kind != FileKind::Lie2 {
            return Err(Error::NotApplicable(
                "file does not describe a Lie algebra".into(),
            ));
        }
        let dmat = Matrix::from_data(self.field, self.n, self.n, self.dmat.clone())?;
        LieAlgebra2::new(
            self.field,
            self.n,
            self.tensor.clone(),
            dmat,
            Some(self.labels.clone()),
        )
    }

    pub fn to_lie(&self) -> Result<LieAlgebra2> {
        let l = self.build_lie()?;
        l.verify_lie().into_result()?;
        Ok(l)
    }
}

fn default_labels(kind: FileKind, n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match (kind, i) {
            (FileKind::Lie2, _) => format!("v{}", i + 1),
            (_, 0) => "1".to_string(),
            _ => format!("e{i}"),
        })
        .collect()
}

impl fmt::Display for AlgebraFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        writeln!(f, "field {}", self.field.name())?;
        writeln!(f, "kind {}", self.kind.name())?;
        writeln!(f, "dim {n}")?;
        if self.kind != FileKind::Lie2 {
            writeln!(f, "unit {}", self.unit_idx)?;
        }
        writeln!(f, "labels {}", self.labels.join(" "))?;
        writeln!(
            f,
            "{}",
            if self.kind == FileKind::Lie2 {
                "bracket"
            } else {
                "product"
            }
        )?;
        let row = |v: &[Fe]| {
            v.iter()
                .map(|c| format!("{:x}", c.0))
                .collect::<Vec<_>>()
                .join(" ")
        };
        for chunk in self.tensor.chunks(n) {
            writeln!(f, "{}", row(chunk))?;
        }
        writeln!(f, "d")?;
        for chunk in self.dmat.chunks(n) {
            writeln!(f, "{}", row(chunk))?;
        }
        Ok(())
    }
}

pub fn print_algebra(a: &Algebra, kind: AlgebraKind) -> String {
    AlgebraFile::from_algebra(a, kind).to_string()
}

pub fn print_lie(l: &LieAlgebra2) -> String {
    AlgebraFile::from_lie(l).to_string()
}

// ---------------------------------------------------------------------------
// Subcommands

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Invariants,
    Decompose,
    Classify7,
    Present,
    PbwVerify,
    Confluence,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Invariants => "invariants",
            Command::Decompose => "decompose",
            Command::Classify7 => "classify7",
            Command::Present => "present",
            Command::PbwVerify => "pbw-verify",
            Command::Confluence => "confluence",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    Kv,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Field degree for presentations; files carry their own field.
    pub field: Option<u8>,
    pub bound: Option<usize>,
    pub trials: Option<usize>,
    pub seed: u64,
    pub format: Format,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_AXIOM: i32 = 3;
pub const EXIT_THEOREM: i32 = 4;
pub const EXIT_NEEDS_EXTENSION: i32 = 5;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } | Error::IndexOutOfRange { .. } => EXIT_PARSE,
        Error::AxiomFailure(_) | Error::BadDifferential => EXIT_AXIOM,
        Error::TheoremViolation(_) => EXIT_THEOREM,
        Error::NeedsExtension { .. } | Error::NonSplit { .. } => EXIT_NEEDS_EXTENSION,
        _ => EXIT_OTHER,
    }
}

/// Ordered key-value report with an exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub entries: Vec<(String, String)>,
    pub code: i32,
}

impl Report {
    fn new(cmd: Command) -> Report {
        Report {
            command: cmd.name().to_string(),
            entries: Vec::new(),
            code: EXIT_OK,
        }
    }

    fn put(&mut self, key: &str, value: impl fmt::Display) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    /// Records a failure; the first failure class decides the exit code.
    fn fail(&mut self, code: i32) {
        if self.code == EXIT_OK {
            self.code = code;
        }
    }

    fn axioms(&mut self, key: &str, rep: &AxiomReport, code: i32) {
        self.put(key, if rep.passed() { "passed" } else { "failed" });
        for fl in rep.failures.iter().take(8) {
            self.put(
                &format!("{key}.failure"),
                format!("{} at {:?}", fl.axiom, fl.witness),
            );
        }
        for n in &rep.notes {
            self.put(&format!("{key}.note"), n);
        }
        if !rep.passed() {
            self.fail(code);
        }
    }

    fn error(&mut self, e: &Error) {
        self.put("error", e);
        if let Error::NeedsExtension { k } | Error::NonSplit { k } = e {
            self.put("suggested_field", format!("gf2_{}", 2 * *k as u32));
        }
        self.fail(exit_code(e));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn render(&self, format: Format) -> String {
        let status = if self.code == EXIT_OK { "pass" } else { "fail" };
        let mut s = String::new();
        match format {
            Format::Kv => {
                s.push_str(&format!("command={}\n", self.command));
                for (k, v) in &self.entries {
                    s.push_str(&format!("{k}={v}\n"));
                }
                s.push_str(&format!("status={status}\nexit_code={}\n", self.code));
            }
            Format::Human => {
                s.push_str(&format!(
                    "svec2 {}: {}\n",
                    self.command,
                    status.to_uppercase()
                ));
                let width = self.entries.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.entries {
                    s.push_str(&format!("  {k:<width$}  {v}\n"));
                }
                if self.code != EXIT_OK {
                    s.push_str(&format!("exit code {}\n", self.code));
                }
            }
        }
        s
    }
}

fn is_presentation(src: &str) -> bool {
    src.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with('P'))
}

/// Reads an algebra from a structure-constant file or a presentation,
/// without checking axioms.
fn load_algebra(
    src: &str,
    opts: &Options,
    rep: &mut Report,
) -> Result<(AlgebraKind, Arc<Algebra>)> {
    if is_presentation(src) {
        let field = Field::new(opts.field.unwrap_or(8))?;
        let p = parse_presentation(src, field)?;
        rep.put("source", "presentation");
        rep.put("field", field.name());
        let q = quotient_to_dalgebra(&p)?;
        return Ok((AlgebraKind::DAlgebra, q.algebra));
    }
    let file = AlgebraFile::parse(src)?;
    let (kind, mut a) = file.build_algebra()?;
    if let Some(k) = opts.field {
        if k == 2 * a.field().degree() {
            a = a.embed(&a.field().extend()?)?;
        } else if k != a.field().degree() {
            return Err(Error::FieldMismatch {
                left: a.field().degree(),
                right: k,
            });
        }
    }
    rep.put("source", "file");
    rep.put("field", a.field().name());
    Ok((kind, Arc::new(a)))
}

fn load_lie(src: &str) -> Result<LieAlgebra2> {
    AlgebraFile::parse(src)?.build_lie()
}

fn format_vec(v: &[Fe]) -> String {
    let parts: Vec<String> = v.iter().map(|c| format!("{:x}", c.0)).collect();
    format!("[{}]", parts.join(" "))
}

fn run_check(src: &str, opts: &Options, rep: &mut Report) -> Result<()> {
    let (kind, a) = load_algebra(src, opts, rep)?;
    rep.put("dim", a.dim());
    let axioms = a.verify_axioms(kind);
    rep.axioms("axioms", &axioms, EXIT_AXIOM);
    if !axioms.passed() || kind != AlgebraKind::DAlgebra {
        return Ok(());
    }
    rep.axioms("lemmas", &a.lemma_suite(), EXIT_THEOREM);
    rep.axioms(
        "small_dimension",
        &a.small_dim_commutativity_check(),
        EXIT_THEOREM,
    );
    let corr = check_correspondence(&a)?;
    rep.axioms("characters", &corr, EXIT_THEOREM);
    Ok(())
}

fn run_invariants(src: &str, opts: &Options, rep: &mut Report) -> Result<()> {
    let (kind, a) = load_algebra(src, opts, rep)?;
    let axioms = a.verify_axioms(kind);
    rep.axioms("axioms", &axioms, EXIT_AXIOM);
    if !axioms.passed() {
        return Ok(());
    }
    rep.put("dim", a.dim());
    rep.put("dim_ker", a.ker_d().dim());
    rep.put("dim_im", a.im_d().dim());
    rep.put("dim_center", a.center().dim());
    rep.put("defect", a.defect());
    match a.is_commutative() {
        None => rep.put("commutative", "yes"),
        Some((i, j)) => rep.put(
            "commutative",
            format!("no ({}, {})", a.label(i), a.label(j)),
        ),
    }
    if kind == AlgebraKind::DAlgebra {
        let local = is_local(&a)?;
        rep.put("local", if local { "yes" } else { "no" });
        let dims: Vec<String> = maximal_ideals(&a)?
            .iter()
            .map(|m| m.dim().to_string())
            .collect();
        rep.put("maximal_ideal_dims", dims.join(","));
    }
    Ok(())
}

fn run_decompose(src: &str, opts: &Options, rep: &mut Report) -> Result<()> {
    let (kind, a) = load_algebra(src, opts, rep)?;
    let axioms = a.verify_axioms(kind);
    rep.axioms("axioms", &axioms, EXIT_AXIOM);
    if !axioms.passed() {
        return Ok(());
    }
    if kind != AlgebraKind::DAlgebra {
        return Err(Error::NotApplicable("decompose needs a d-algebra".into()));
    }
    let dec = decompose(&a)?;
    rep.put("factors", dec.factors.len());
    rep.put("defect", a.defect());
    for (i, (e, fac)) in dec.idempotents.iter().zip(&dec.factors).enumerate() {
        rep.put(&format!("factor.{i}.idempotent"), format_vec(e));
        rep.put(&format!("factor.{i}.dim"), fac.algebra.dim());
        rep.put(&format!("factor.{i}.defect"), fac.algebra.defect());
    }
    let v = dec.verify(&a)?;
    rep.axioms("decomposition", &v, EXIT_THEOREM);
    Ok(())
}

fn run_classify7(src: &str, opts: &Options, rep: &mut Report) -> Result<()> {
    let (kind, a) = load_algebra(src, opts, rep)?;
    let axioms = a.verify_axioms(kind);
    rep.axioms("axioms", &axioms, EXIT_AXIOM);
    if !axioms.passed() {
        return Ok(());
    }
    let norm = normalize7(&a)?;
    let form = &norm.form;
    let (i, j) = form.witness;
    rep.put("witness", format!("({}, {})", a.label(i), a.label(j)));
    rep.put("h", form.h);
    rep.put("k", form.k);
    rep.put("p", form.p);
    rep.put("q", norm.q);
    rep.put("doublings", norm.doublings());
    rep.put("working_field", norm.morphism.source.field().name());
    for r in 0..norm.morphism.mat.rows() {
        rep.put("isomorphism.row", format_vec(norm.morphism.mat.row(r)));
    }
    rep.axioms("isomorphism", &norm.morphism.verify(), EXIT_THEOREM);
    Ok(())
}

/// Generators chosen greedily from the basis, vectors with nonzero
/// differential first, skipping any already in the generated subalgebra.
pub fn greedy_generators(a: &Algebra) -> Vec<Vec<Fe>> {
    let f = a.field();
    let n = a.dim();
    let mut order: Vec<usize> = (1..n)
        .filter(|&i| !is_zero_vec(&a.apply_d(&a.basis(i))))
        .collect();
    order.extend((1..n).filter(|&i| is_zero_vec(&a.apply_d(&a.basis(i)))));
    let mut gens: Vec<Vec<Fe>> = Vec::new();
    let mut span = Subspace::span(f, n, &[a.one()]);
    for i in order {
        let b = a.basis(i);
        if span.contains(&b) {
            continue;
        }
        gens.push(b);
        let mut letters: Vec<Vec<Fe>> = gens.clone();
        letters.extend(gens.iter().map(|g| a.apply_d(g)));
        loop {
            let mut grown = span.basis();
            for v in span.basis() {
                for g in &letters {
                    grown.push(a.mul(&v, g));
                }
            }
            let next = Subspace::span(f, n, &grown);
            if next.dim() == span.dim() {
                break;
            }
            span = next;
        }
        if span.dim() == n {
            break;
        }
    }
    gens
}

fn run_present(src: &str, opts: &Options, rep: &mut Report) -> Result<()> {
    let (kind, a) = load_algebra(src, opts, rep)?;
    let axioms = a.verify_axioms(kind);
    rep.axioms("axioms", &axioms, EXIT_AXIOM);
    if !axioms.passed() {
        return Ok(());
    }
    if kind != AlgebraKind::DAlgebra {
        return Err(Error::NotApplicable("present needs a d-algebra".into()));
    }
    let gens = greedy_generators(&a);
    let bounds: Vec<usize> = match opts.bound {
        Some(b) => vec![b],
        None => (1..=a.dim() + 1).collect(),
    };
    let mut last = Error::NotGenerating("no degree bound tried".into());
    for bound in bounds {
        match present(&a, &gens, bound) {
            Ok((p, order)) => {
                let q = quotient_to_dalgebra(&p);
                if let Ok(q) = &q {
                    if q.algebra.dim() == a.dim() {
                        for (i, g) in order.iter().enumerate() {
                            rep.put(&format!("generator.{i}"), a.format_vec(g));
                        }
                        rep.put("relations", p.relations.len());
                        rep.put("presentation", print_presentation(&p));
                        rep.put("reparsed_dim", q.algebra.dim());
                        return Ok(());
                    }
                }
                last = q.err().unwrap_or(Error::NotClosedAtBound(bound));
            }
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn run_pbw_verify(src: &str, opts: &Options, rep: &mut Report) -> Result<()> {
    let l = load_lie(src)?;
    rep.put("field", l.field().name());
    rep.put("dim", l.dim());
    rep.axioms("lie_axioms", &l.verify_lie(), EXIT_AXIOM);
    rep.axioms(
        "seven_term_jacobi",
        &l.jacobi_seven_term_check(),
        EXIT_AXIOM,
    );
    let ctx = StraightenCtx::new(&l)?;
    let bound = opts.bound.unwrap_or(4);
    rep.put("im_prefix", ctx.kk());
    rep.put("bound", bound);
    rep.axioms("pbw", &verify_pbw(&ctx, bound), EXIT_THEOREM);
    let trials = opts.trials.unwrap_or(200);
    let conf = confluence_test(&ctx, trials, bound.max(2), opts.seed)?;
    rep.put("confluence.trials", conf.trials);
    rep.put("confluence.discrepancies", conf.discrepancies.len());
    if !conf.passed() {
        rep.fail(EXIT_THEOREM);
    }
    Ok(())
}

fn run_confluence(src: &str, opts: &Options, rep: &mut Report) -> Result<()> {
    let l = load_lie(src)?;
    let ctx = StraightenCtx::new(&l)?;
    let conf = confluence_test(
        &ctx,
        opts.trials.unwrap_or(1000),
        opts.bound.unwrap_or(6),
        opts.seed,
    )?;
    for line in conf.to_kv().lines() {
        if let Some((k, v)) = line.split_once('=') {
            rep.put(k, v);
        }
    }
    if !conf.passed() {
        rep.fail(EXIT_THEOREM);
    }
    Ok(())
}

/// Runs one subcommand on the text of its input.
pub fn run(cmd: Command, opts: &Options, input: &str) -> Report {
    let mut rep = Report::new(cmd);
    let result = match cmd {
        Command::Check => run_check(input, opts, &mut rep),
        Command::Invariants => run_invariants(input, opts, &mut rep),
        Command::Decompose => run_decompose(input, opts, &mut rep),
        Command::Classify7 => run_classify7(input, opts, &mut rep),
        Command::Present => run_present(input, opts, &mut rep),
        Command::PbwVerify => run_pbw_verify(input, opts, &mut rep),
        Command::Confluence => run_confluence(input, opts, &mut rep),
    };
    if let Err(e) = result {
        rep.error(&e);
    }
    rep
}
