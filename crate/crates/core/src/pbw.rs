//! Tensor words over a Lie algebra in sVec₂, straightening to standard
//! monomials, and bounded-degree checks of the PBW basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dalgebra::AxiomReport;
use crate::error::{Error, Result};
use crate::ground::linalg::{is_zero_vec, unit_vec, vec_add};
use crate::ground::{Fe, Field, Matrix, Subspace};
use crate::lie2::LieAlgebra2;
pub use crate::polyd::Strategy;

/// A tensor monomial `v_{i1} ⊗ ⋯ ⊗ v_{ir}` as a list of basis indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letter(i: usize) -> Word {
        Word(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Replaces positions `j, j+1` by `mid`.
    fn splice(&self, j: usize, mid: &[usize]) -> Word {
        let mut v = Vec::with_capacity(self.len() + mid.len());
        v.extend_from_slice(&self.0[..j]);
        v.extend_from_slice(mid);
        v.extend_from_slice(&self.0[j + 2..]);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("v{}", i + 1)).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A linear combination of words with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TElem {
    terms: BTreeMap<Word, Fe>,
}

impl TElem {
    pub fn zero() -> TElem {
        TElem::default()
    }

    pub fn one() -> TElem {
        TElem::word(Word::empty())
    }

    pub fn word(w: Word) -> TElem {
        let mut terms = BTreeMap::new();
        terms.insert(w, Fe::ONE);
        TElem { terms }
    }

    /// `Σ c_i v_i` as an element of degree 1.
    pub fn from_vector(v: &[Fe]) -> TElem {
        let terms = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (Word::letter(i), c))
            .collect();
        TElem { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Word, Fe> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn coeff(&self, w: &Word) -> Fe {
        self.terms.get(w).copied().unwrap_or(Fe::ZERO)
    }

    pub fn add_term(&mut self, f: &Field, w: Word, c: Fe) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = f.add(*e.get(), c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, f: &Field, other: &TElem, c: Fe) {
        if c.is_zero() {
            return;
        }
        for (w, &a) in &other.terms {
            self.add_term(f, w.clone(), f.mul(a, c));
        }
    }

    pub fn add(&self, f: &Field, other: &TElem) -> TElem {
        let mut out = self.clone();
        out.add_scaled(f, other, Fe::ONE);
        out
    }

    /// Concatenation product in `T(L)`.
    pub fn tensor(&self, f: &Field, other: &TElem) -> TElem {
        let mut out = TElem::zero();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                out.add_term(f, a.concat(b), f.mul(ca, cb));
            }
        }
        out
    }
}

impl fmt::Display for TElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                if *c == Fe::ONE {
                    w.to_string()
                } else {
                    format!("0x{:x}*{}", c.0, w)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Number of pairs `j < j'` with `i_j > i_j'`.
pub fn word_defect(w: &Word) -> usize {
    let l = w.letters();
    let mut n = 0;
    for a in 0..l.len() {
        for b in a + 1..l.len() {
            if l[a] > l[b] {
                n += 1;
            }
        }
    }
    n
}

/// Straightening data: the Lie algebra in a basis whose first `kk` vectors
/// span `Im(d)`, preimages `w_i` with `d(w_i) = v_i`, and a memo table.
pub struct StraightenCtx {
    lie: LieAlgebra2,
    kk: usize,
    /// Columns are the adapted basis in the coordinates of the input algebra.
    basis_change: Matrix,
    to_adapted: Matrix,
    preimages: Vec<Vec<Fe>>,
    dcols: Vec<Vec<Fe>>,
    memo: Mutex<HashMap<(Strategy, Word), TElem>>,
}

impl fmt::Debug for StraightenCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StraightenCtx")
            .field("dim", &self.lie.dim())
            .field("kk", &self.kk)
            .field("preimages", &self.preimages)
            .finish()
    }
}

impl Clone for StraightenCtx {
    fn clone(&self) -> StraightenCtx {
        let memo = self.memo.lock().expect("memo lock").clone();
        StraightenCtx {
            lie: self.lie.clone(),
            kk: self.kk,
            basis_change: self.basis_change.clone(),
            to_adapted: self.to_adapted.clone(),
            preimages: self.preimages.clone(),
            dcols: self.dcols.clone(),
            memo: Mutex::new(memo),
        }
    }
}

impl StraightenCtx {
    /// Reorders `lie` so that an echelon basis of `Im(d)` comes first, then
    /// picks each preimage as the solution of `d(w) = v_i` with free
    /// coordinates set to zero.
    pub fn new(lie: &LieAlgebra2) -> Result<StraightenCtx> {
        let f = lie.field();
        let n = lie.dim();
        let im = lie.im_d();
        let mut cols = im.basis();
        cols.extend(im.extend_basis(&Subspace::full(f, n)));
        let p = Matrix::from_columns(f, n, &cols);
        let labels = cols
            .iter()
            .enumerate()
            .map(|(i, _)| format!("v{}", i + 1))
            .collect();
        let adapted = lie.change_basis(&p, Some(labels))?;
        let kk = im.dim();
        let mut preimages = Vec::with_capacity(kk);
        for i in 0..kk {
            preimages.push(adapted.dmat().solve(&unit_vec(n, i))?);
        }
        StraightenCtx::assemble(adapted, kk, p, preimages)
    }

    fn assemble(
        lie: LieAlgebra2,
        kk: usize,
        basis_change: Matrix,
        preimages: Vec<Vec<Fe>>,
    ) -> Result<StraightenCtx> {
        let n = lie.dim();
        let to_adapted = basis_change.inverse()?;
        for (i, w) in preimages.iter().enumerate() {
            if w.len() != n || lie.apply_d(w) != unit_vec(n, i) {
                return Err(Error::Degenerate(
                    "preimage does not map to its basis vector",
                ));
            }
        }
        let dcols = (0..n).map(|j| lie.dmat().column(j)).collect();
        Ok(StraightenCtx {
            lie,
            kk,
            basis_change,
            to_adapted,
            preimages,
            dcols,
            memo: Mutex::new(HashMap::new()),
        })
    }

    /// The same context with different preimages (adapted coordinates).
    pub fn with_preimages(&self, preimages: Vec<Vec<Fe>>) -> Result<StraightenCtx> {
        if preimages.len() != self.kk {
            return Err(Error::DimensionMismatch {
                expected: self.kk,
                got: preimages.len(),
            });
        }
        StraightenCtx::assemble(
            self.lie.clone(),
            self.kk,
            self.basis_change.clone(),
            preimages,
        )
    }

    /// Preimages shifted by seeded random nonzero elements of `Ker(d)`.
    pub fn with_shifted_preimages(&self, seed: u64) -> Result<StraightenCtx> {
        let f = self.lie.field();
        let ker = self.lie.ker_d().basis();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(self.kk);
        for w in &self.preimages {
            let shift = loop {
                let mut s = vec![Fe::ZERO; self.lie.dim()];
                for k in &ker {
                    let c = Fe(rng.gen_range(0..f.size()) as u16);
                    s = vec_add(&f, &s, &crate::ground::linalg::vec_scale(&f, c, k));
                }
                if !is_zero_vec(&s) || ker.is_empty() {
                    break s;
                }
            };
            out.push(vec_add(&f, w, &shift));
        }
        self.with_preimages(out)
    }

    /// The Lie algebra in the adapted basis.
    pub fn lie(&self) -> &LieAlgebra2 {
        &self.lie
    }

    pub fn kk(&self) -> usize {
        self.kk
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn field(&self) -> Field {
        self.lie.field()
    }

    pub fn preimages(&self) -> &[Vec<Fe>] {
        &self.preimages
    }

    /// Adapted basis as columns in the input coordinates.
    pub fn basis_change(&self) -> &Matrix {
        &self.basis_change
    }

    /// Input coordinates to adapted coordinates.
    pub fn to_adapted(&self, v: &[Fe]) -> Vec<Fe> {
        self.to_adapted.mul_vec(v).expect("vector length mismatch")
    }

    pub fn memo_len(&self) -> usize {
        self.memo.lock().expect("memo lock").len()
    }

    fn has_d(&self, i: usize) -> bool {
        !is_zero_vec(&self.dcols[i])
    }

    /// Number of letters whose basis vector has nonzero differential.
    pub fn k_degree(&self, w: &Word) -> usize {
        w.letters().iter().filter(|&&i| self.has_d(i)).count()
    }

    /// Nondecreasing, with no repeated letter from the `Im(d)` prefix.
    pub fn is_standard(&self, w: &Word) -> bool {
        w.letters()
            .windows(2)
            .all(|p| p[0] < p[1] || (p[0] == p[1] && p[0] >= self.kk))
    }

    pub fn straighten(&self, w: &Word) -> TElem {
        self.straighten_with(w, Strategy::Leftmost)
    }

    pub fn straighten_elem(&self, t: &TElem) -> TElem {
        self.straighten_elem_with(t, Strategy::Leftmost)
    }

    pub fn straighten_elem_with(&self, t: &TElem, strategy: Strategy) -> TElem {
        let f = self.field();
        let mut out = TElem::zero();
        for (w, &c) in t.terms() {
            out.add_scaled(&f, &self.straighten_with(w, strategy), c);
        }
        out
    }

    fn pick(&self, w: &Word, positions: &[usize], strategy: Strategy) -> usize {
        match strategy {
            Strategy::Leftmost => positions[0],
            Strategy::Rightmost => positions[positions.len() - 1],
            Strategy::Random(seed) => {
                // Seeded by the word too, so the choice is a function of the input.
                let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
                for &l in w.letters() {
                    h = (h ^ l as u64).wrapping_mul(0x0100_0000_01b3);
                }
                let mut rng = ChaCha8Rng::seed_from_u64(h);
                positions[rng.gen_range(0..positions.len())]
            }
        }
    }

    pub fn straighten_with(&self, w: &Word, strategy: Strategy) -> TElem {
        if w.len() <= 1 {
            return TElem::word(w.clone());
        }
        let key = (strategy, w.clone());
        if let Some(t) = self.memo.lock().expect("memo lock").get(&key) {
            return t.clone();
        }
        let out = self.rewrite(w, strategy);
        self.memo
            .lock()
            .expect("memo lock")
            .insert(key, out.clone());
        out
    }

    fn rewrite(&self, w: &Word, strategy: Strategy) -> TElem {
        let f = self.field();
        let l = w.letters();
        let descents: Vec<usize> = (0..l.len() - 1).filter(|&j| l[j] > l[j + 1]).collect();
        let mut out = TElem::zero();
        if !descents.is_empty() {
            let j = self.pick(w, &descents, strategy);
            let (x, y) = (l[j], l[j + 1]);
            // x y ≡ y x + dy dx + [x, y]
            out.add_scaled(
                &f,
                &self.straighten_with(&w.splice(j, &[y, x]), strategy),
                Fe::ONE,
            );
            let (dx, dy) = (&self.dcols[x], &self.dcols[y]);
            for (a, &ca) in dy.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (b, &cb) in dx.iter().enumerate() {
                    if !cb.is_zero() {
                        out.add_scaled(
                            &f,
                            &self.straighten_with(&w.splice(j, &[a, b]), strategy),
                            f.mul(ca, cb),
                        );
                    }
                }
            }
            for (m, &c) in self.lie.basis_bracket(x, y).iter().enumerate() {
                if !c.is_zero() {
                    out.add_scaled(&f, &self.straighten_with(&w.splice(j, &[m]), strategy), c);
                }
            }
            return out;
        }
        let squares: Vec<usize> = (0..l.len() - 1)
            .filter(|&j| l[j] == l[j + 1] && l[j] < self.kk)
            .collect();
        if squares.is_empty() {
            return TElem::word(w.clone());
        }
        let j = self.pick(w, &squares, strategy);
        let wi = &self.preimages[l[j]];
        let q = self.lie.bracket(wi, wi);
        for (m, &c) in q.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(&f, &self.straighten_with(&w.splice(j, &[m]), strategy), c);
            }
        }
        out
    }

    /// Product in `U(L)` of two straightened elements.
    pub fn u_mul(&self, a: &TElem, b: &TElem, bound: usize) -> Result<TElem> {
        let got = a.degree() + b.degree();
        if got > bound {
            return Err(Error::DegreeOverflow { got, bound });
        }
        Ok(self.straighten_elem(&a.tensor(&self.field(), b)))
    }

    /// `x⊗y + y⊗x + dy⊗dx + [x,y]` for basis letters `x, y`.
    pub fn j_generator(&self, x: usize, y: usize) -> TElem {
        let f = self.field();
        let mut g = TElem::zero();
        g.add_term(&f, Word(vec![x, y]), Fe::ONE);
        g.add_term(&f, Word(vec![y, x]), Fe::ONE);
        for (a, &ca) in self.dcols[y].iter().enumerate() {
            for (b, &cb) in self.dcols[x].iter().enumerate() {
                g.add_term(&f, Word(vec![a, b]), f.mul(ca, cb));
            }
        }
        for (m, &c) in self.lie.basis_bracket(x, y).iter().enumerate() {
            g.add_term(&f, Word::letter(m), c);
        }
        g
    }
}

/// All words of length exactly `len` over `m` letters, in lexicographic order.
pub fn words_of_length(m: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * m);
        for w in &out {
            for i in 0..m {
                let mut v = w.0.clone();
                v.push(i);
                next.push(Word(v));
            }
        }
        out = next;
    }
    out
}

/// Standard words of degree at most `deg`: nondecreasing, and letters
/// below `kk` used at most once.
pub fn standard_words(m: usize, kk: usize, deg: usize) -> Vec<Word> {
    fn go(
        m: usize,
        kk: usize,
        deg: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Word>,
    ) {
        out.push(Word(cur.clone()));
        if cur.len() == deg {
            return;
        }
        for i in start..m {
            cur.push(i);
            let next = if i < kk { i + 1 } else { i };
            go(m, kk, deg, next, cur, out);
            cur.pop();
        }
    }
    assert!(kk <= m, "prefix larger than the basis");
    let mut out = Vec::new();
    go(m, kk, deg, 0, &mut Vec::new(), &mut out);
    out
}

pub fn standard_count(m: usize, kk: usize, deg: usize) -> usize {
    standard_words(m, kk, deg).len()
}

/// `dim U_{≤d}` for `d = 0..=bound`, by linear algebra in `T_{≤bound}`:
/// the span of all products `u·g(x,y)·w` of total degree at most `bound`,
/// intersected with each `T_{≤d}`.
pub fn u_dimensions(ctx: &StraightenCtx, bound: usize) -> Vec<usize> {
    let f = ctx.field();
    let m = ctx.dim();
    let mut words: Vec<Word> = Vec::new();
    for len in (0..=bound).rev() {
        words.extend(words_of_length(m, len));
    }
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut rows = Vec::new();
    for outer in 0..=bound.saturating_sub(2) {
        for ul in 0..=outer {
            let us = words_of_length(m, ul);
            let ws = words_of_length(m, outer - ul);
            for x in 0..m {
                for y in 0..m {
                    let g = ctx.j_generator(x, y);
                    for u in &us {
                        for w in &ws {
                            let mut row = vec![Fe::ZERO; words.len()];
                            for (gw, &c) in g.terms() {
                                let full = u.concat(gw).concat(w);
                                let col = index[&full];
                                row[col] = f.add(row[col], c);
                            }
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    let mut mat = Matrix::from_rows(f, words.len(), &rows);
    let pivots = mat.rref_in_place();
    (0..=bound)
        .map(|d| {
            let t_dim: usize = (0..=d).map(|l| m.pow(l as u32)).sum();
            // Columns are ordered by decreasing length, so a pivot in a
            // column of length ≤ d marks a row lying in T_{≤d}.
            let in_low = pivots.iter().filter(|&&c| words[c].len() <= d).count();
            t_dim - in_low
        })
        .collect()
}

/// Checks at degree `bound` that straightening kills every `u·g(x,y)·w`,
/// that its output is standard, that standard-word counts match the
/// linear-algebra dimension of `U_{≤d}`, and that `L → U(L)` is injective.
pub fn verify_pbw(ctx: &StraightenCtx, bound: usize) -> AxiomReport {
    let f = ctx.field();
    let m = ctx.dim();
    let mut rep = AxiomReport::new();
    let mut checked = 0usize;
    for outer in 0..=bound.saturating_sub(2) {
        for ul in 0..=outer {
            let us = words_of_length(m, ul);
            let ws = words_of_length(m, outer - ul);
            for x in 0..m {
                for y in 0..m {
                    let g = ctx.j_generator(x, y);
                    for u in &us {
                        for w in &ws {
                            let e = TElem::word(u.clone())
                                .tensor(&f, &g)
                                .tensor(&f, &TElem::word(w.clone()));
                            let p = ctx.straighten_elem(&e);
                            checked += 1;
                            if !p.is_zero() {
                                let mut wit = u.0.clone();
                                wit.extend([x, y]);
                                wit.extend(&w.0);
                                rep.fail("P kills J", wit, vec![], vec![]);
                            }
                        }
                    }
                }
            }
        }
    }
    rep.note(format!("J-spanning elements tested: {checked}"));
    for len in 0..=bound {
        for w in words_of_length(m, len) {
            let p = ctx.straighten(&w);
            if p.terms().keys().any(|s| !ctx.is_standard(s)) {
                rep.fail("straighten output is standard", w.0.clone(), vec![], vec![]);
            }
            if ctx.is_standard(&w) && p != TElem::word(w.clone()) {
                rep.fail("standard words are fixed", w.0.clone(), vec![], vec![]);
            }
        }
    }
    let dims = u_dimensions(ctx, bound);
    for (d, &u) in dims.iter().enumerate() {
        let s = standard_count(m, ctx.kk(), d);
        if s != u {
            rep.fail(
                "standard count equals dim U",
                vec![d, s, u],
                vec![Fe(s as u16)],
                vec![Fe(u as u16)],
            );
        }
        rep.note(format!("degree <= {d}: standard words {s}, dim U {u}"));
    }
    let images: Vec<Vec<Fe>> = (0..m)
        .map(|i| {
            let t = ctx.straighten_elem(&TElem::from_vector(&ctx.to_adapted(&unit_vec(m, i))));
            (0..m).map(|j| t.coeff(&Word::letter(j))).collect()
        })
        .collect();
    if Matrix::from_rows(f, m, &images).rank() != m {
        rep.fail("L injects into U(L)", vec![], vec![], vec![]);
    }
    rep
}

/// Outcome of a straightening confluence run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub trials: usize,
    pub max_len: usize,
    pub seed: u64,
    pub discrepancies: Vec<Word>,
    pub total_terms: usize,
    pub checksum: u64,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("trials={}\n", self.trials));
        s.push_str(&format!("max_len={}\n", self.max_len));
        s.push_str(&format!("seed={}\n", self.seed));
        s.push_str("strategies=leftmost,rightmost,random\n");
        s.push_str("preimage_choices=2\n");
        s.push_str(&format!("total_terms={}\n", self.total_terms));
        s.push_str(&format!("checksum={:016x}\n", self.checksum));
        s.push_str(&format!("discrepancies={}\n", self.discrepancies.len()));
        for w in &self.discrepancies {
            s.push_str(&format!("discrepancy={w}\n"));
        }
        s.push_str(&format!(
            "result={}\n",
            if self.passed() { "pass" } else { "fail" }
        ));
        s
    }
}

impl fmt::Display for ConfluenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "confluence: {} words (length <= {}, seed {}), {} discrepancies, checksum {:016x}",
            self.trials,
            self.max_len,
            self.seed,
            self.discrepancies.len(),
            self.checksum
        )
    }
}

/// Straightens random words under three descent strategies and two
/// preimage choices and compares the normal forms.
pub fn confluence_test(
    ctx: &StraightenCtx,
    trials: usize,
    max_len: usize,
    seed: u64,
) -> Result<ConfluenceReport> {
    let m = ctx.dim();
    let alt = ctx.with_shifted_preimages(seed.wrapping_add(1))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut discrepancies = Vec::new();
    let mut total_terms = 0;
    let mut checksum: u64 = 0xcbf2_9ce4_8422_2325;
    for _ in 0..trials {
        let len = rng.gen_range(0..=max_len);
        let w = Word((0..len).map(|_| rng.gen_range(0..m)).collect());
        let base = ctx.straighten_with(&w, Strategy::Leftmost);
        let others = [
            ctx.straighten_with(&w, Strategy::Rightmost),
            ctx.straighten_with(&w, Strategy::Random(seed)),
            alt.straighten_with(&w, Strategy::Leftmost),
            alt.straighten_with(&w, Strategy::Random(seed ^ 1)),
        ];
        if others.iter().any(|o| *o != base) {
            discrepancies.push(w.clone());
        }
        total_terms += base.terms().len();
        for (word, c) in base.terms() {
            for &l in word.letters() {
                checksum = (checksum ^ l as u64).wrapping_mul(0x0100_0000_01b3);
            }
            checksum = (checksum ^ (0x1_0000 | c.0 as u64)).wrapping_mul(0x0100_0000_01b3);
        }
        checksum = (checksum ^ 0xffff_ffff).wrapping_mul(0x0100_0000_01b3);
    }
    Ok(ConfluenceReport {
        trials,
        max_len,
        seed,
        discrepancies,
        total_terms,
        checksum,
    })
}

/// Two-dimensional bracket with `d = 0` and `[a,a] = b`: axioms 1 to 3
/// hold but `[x,x] = 0` fails on `Ker(d)`.
pub fn axiom_four_violation(f: Field) -> LieAlgebra2 {
    let mut bracket = vec![Fe::ZERO; 8];
    bracket[1] = Fe::ONE;
    LieAlgebra2::new(
        f,
        2,
        bracket,
        Matrix::zeros(f, 2, 2),
        Some(vec!["a".into(), "b".into()]),
    )
    .expect("valid shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie2::{commutator_lie, gl_object, jordan_block};

    fn abelian_rank_one() -> LieAlgebra2 {
        let f = Field::gf(1);
        let mut d = Matrix::zeros(f, 4, 4);
        d.set(1, 3, Fe::ONE);
        LieAlgebra2::abelian(f, d).unwrap()
    }

    fn gl2() -> LieAlgebra2 {
        let f = Field::gf(1);
        commutator_lie(&gl_object(f, 2, &jordan_block(f, 2)).unwrap())
    }

    #[test]
    fn word_statistics() {
        assert_eq!(word_defect(&Word::empty()), 0);
        assert_eq!(word_defect(&Word(vec![1, 0])), 1);
        assert_eq!(word_defect(&Word(vec![2, 1, 0])), 3);
        let ctx = StraightenCtx::new(&abelian_rank_one()).unwrap();
        assert_eq!(ctx.kk(), 1);
        assert!(ctx.is_standard(&Word::empty()));
        assert!(!ctx.is_standard(&Word(vec![0, 0])));
        assert!(ctx.is_standard(&Word(vec![1, 1])));
        assert_eq!(ctx.k_degree(&Word(vec![0, 1, 2, 3])), 1);
    }

    #[test]
    fn standard_counts() {
        assert_eq!(standard_count(3, 1, 0), 1);
        assert_eq!(standard_count(2, 2, 2), 4);
        assert_eq!(standard_count(2, 0, 2), 6);
    }

    #[test]
    fn classical_sorting_and_squares() {
        let f = Field::gf(1);
        let l = LieAlgebra2::abelian(f, Matrix::zeros(f, 3, 3)).unwrap();
        let ctx = StraightenCtx::new(&l).unwrap();
        assert_eq!(
            ctx.straighten(&Word(vec![1, 0])),
            TElem::word(Word(vec![0, 1]))
        );
        let ctx = StraightenCtx::new(&abelian_rank_one()).unwrap();
        assert!(ctx.straighten(&Word(vec![0, 0])).is_zero());
    }

    #[test]
    fn pbw_holds_for_small_examples() {
        for l in [abelian_rank_one(), gl2()] {
            let ctx = StraightenCtx::new(&l).unwrap();
            let rep = verify_pbw(&ctx, 3);
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn pbw_fails_without_axiom_four() {
        let ctx = StraightenCtx::new(&axiom_four_violation(Field::gf(1))).unwrap();
        assert!(!verify_pbw(&ctx, 2).passed());
    }

    #[test]
    fn u_mul_respects_bound_and_relation() {
        let ctx = StraightenCtx::new(&gl2()).unwrap();
        let f = ctx.field();
        let x = TElem::word(Word::letter(3));
        let y = TElem::word(Word::letter(2));
        assert!(matches!(
            ctx.u_mul(&x, &x.tensor(&f, &x), 2),
            Err(Error::DegreeOverflow { got: 3, bound: 2 })
        ));
        let lhs = ctx
            .u_mul(&x, &y, 2)
            .unwrap()
            .add(&f, &ctx.u_mul(&y, &x, 2).unwrap());
        let dy = TElem::from_vector(&ctx.lie().dmat().column(2));
        let dx = TElem::from_vector(&ctx.lie().dmat().column(3));
        let lhs = lhs.add(&f, &ctx.u_mul(&dy, &dx, 2).unwrap());
        let br = TElem::from_vector(ctx.lie().basis_bracket(3, 2));
        assert_eq!(lhs, ctx.straighten_elem(&br));
        assert_eq!(ctx.u_mul(&TElem::one(), &x, 2).unwrap(), x);
    }

    #[test]
    fn confluence_is_deterministic() {
        let ctx = StraightenCtx::new(&gl2()).unwrap();
        let a = confluence_test(&ctx, 100, 5, 3).unwrap();
        let b = confluence_test(&StraightenCtx::new(&gl2()).unwrap(), 100, 5, 3).unwrap();
        assert!(a.passed());
        assert_eq!(a.to_kv(), b.to_kv());
    }
}
