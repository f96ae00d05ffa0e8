//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use svec2::ground::{Fe, Field, Matrix};
use svec2::pbw::{StraightenCtx, TElem, Word};
use svec2::polyd::{PElem, PMono};

/// Schoolbook carry-less product reduced by the field modulus, bit by bit.
pub fn slow_mul(f: Field, a: Fe, b: Fe) -> Fe {
    let k = f.degree() as u32;
    let mut prod: u64 = 0;
    for i in 0..k {
        if (b.0 >> i) & 1 == 1 {
            prod ^= (a.0 as u64) << i;
        }
    }
    let m = f.modulus() as u64;
    for bit in (k..2 * k).rev() {
        if (prod >> bit) & 1 == 1 {
            prod ^= m << (bit - k);
        }
    }
    Fe(prod as u16)
}

/// Letters of the free algebra behind `P(r,s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum L {
    X(usize),
    Xi(usize),
    Y(usize),
}

impl L {
    fn weight(self) -> usize {
        match self {
            L::X(i) | L::Xi(i) => i,
            L::Y(j) => 100 + j,
        }
    }
}

/// Normal form of products in `P(r,s)` computed from scratch: the free
/// algebra on `x_i, ξ_i, y_j` modulo the span of `u·g·w` where `g` runs over
/// `ab + ba + d(b)d(a)` for letters `a, b` (which also yields `ξ_i² = 0`).
/// Work is split by the weight in which `x_i` and `ξ_i` both count as `i`,
/// since every generator is homogeneous for it.
pub struct FreeWordOracle {
    pub r: usize,
    pub s: usize,
    field: Field,
    cache: HashMap<(Vec<usize>, usize), Component>,
}

struct Component {
    words: Vec<Vec<L>>,
    index: HashMap<Vec<L>, usize>,
    rows: Matrix,
    pivots: Vec<usize>,
}

impl FreeWordOracle {
    pub fn new(field: Field, r: usize, s: usize) -> FreeWordOracle {
        FreeWordOracle {
            r,
            s,
            field,
            cache: HashMap::new(),
        }
    }

    fn letters(&self) -> Vec<L> {
        let mut v: Vec<L> = (0..self.r).map(L::X).collect();
        v.extend((0..self.r).map(L::Xi));
        v.extend((0..self.s).map(L::Y));
        v
    }

    fn d(l: L) -> Option<L> {
        match l {
            L::X(i) => Some(L::Xi(i)),
            _ => None,
        }
    }

    /// The monomial's letters in canonical order: y's, then ξ's, then x's.
    pub fn mono_word(m: &PMono) -> Vec<L> {
        let mut w = Vec::new();
        for (j, &e) in m.y.iter().enumerate() {
            w.extend(std::iter::repeat_n(L::Y(j), e as usize));
        }
        for i in 0..m.x.len() {
            if m.xi >> i & 1 == 1 {
                w.push(L::Xi(i));
            }
        }
        for (i, &e) in m.x.iter().enumerate() {
            w.extend(std::iter::repeat_n(L::X(i), e as usize));
        }
        w
    }

    fn is_canonical(&self, w: &[L]) -> bool {
        let rank = |l: &L| match l {
            L::Y(j) => (0, *j),
            L::Xi(i) => (1, *i),
            L::X(i) => (2, *i),
        };
        w.windows(2).all(|p| {
            let (a, b) = (rank(&p[0]), rank(&p[1]));
            a < b || (a == b && a.0 != 1)
        })
    }

    fn word_to_mono(&self, w: &[L]) -> PMono {
        let mut m = PMono::one(self.r, self.s);
        for &l in w {
            match l {
                L::X(i) => m.x[i] += 1,
                L::Xi(i) => m.xi |= 1 << i,
                L::Y(j) => m.y[j] += 1,
            }
        }
        m
    }

    fn component(&mut self, weight: Vec<usize>, len: usize) -> &Component {
        let key = (weight.clone(), len);
        if !self.cache.contains_key(&key) {
            let c = self.build(&weight, len);
            self.cache.insert(key.clone(), c);
        }
        &self.cache[&key]
    }

    fn build(&self, weight: &[usize], len: usize) -> Component {
        let f = self.field;
        let letters = self.letters();
        // All words with the given sorted weight multiset.
        let mut words: Vec<Vec<L>> = vec![vec![]];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &words {
                for &l in &letters {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            words = next;
        }
        words.retain(|w| {
            let mut ws: Vec<usize> = w.iter().map(|l| l.weight()).collect();
            ws.sort();
            ws == weight
        });
        // Non-canonical words first so elimination expresses them through canonical ones.
        words.sort_by_key(|w| self.is_canonical(w));
        let index: HashMap<Vec<L>, usize> = words
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let mut rows = Vec::new();
        for w in &words {
            for j in 0..len.saturating_sub(1) {
                let (a, b) = (w[j], w[j + 1]);
                let mut row = vec![Fe::ZERO; words.len()];
                let mut bump = |v: Vec<L>| {
                    if let Some(&c) = index.get(&v) {
                        row[c] = f.add(row[c], Fe::ONE);
                    }
                };
                bump(w.clone());
                let mut sw = w.clone();
                sw.swap(j, j + 1);
                bump(sw);
                if let (Some(db), Some(da)) = (Self::d(b), Self::d(a)) {
                    let mut dd = w.clone();
                    dd[j] = db;
                    dd[j + 1] = da;
                    bump(dd);
                }
                rows.push(row);
            }
        }
        let mut m = Matrix::from_rows(f, words.len(), &rows);
        let pivots = m.rref_in_place();
        Component {
            words,
            index,
            rows: m,
            pivots,
        }
    }

    /// Number of canonical words minus the quotient dimension of this
    /// component; zero when the canonical words form a basis.
    pub fn basis_defect(&mut self, weight: Vec<usize>, len: usize) -> isize {
        let oracle_canon = {
            let words: Vec<Vec<L>> = self.component(weight.clone(), len).words.clone();
            words.iter().filter(|w| self.is_canonical(w)).count()
        };
        let c = self.component(weight, len);
        let quotient = c.words.len() - c.pivots.len();
        oracle_canon as isize - quotient as isize
    }

    /// Reduces a free word to a combination of canonical words.
    pub fn reduce_word(&mut self, w: &[L]) -> PElem {
        let f = self.field;
        let (r, s) = (self.r, self.s);
        let mut weight: Vec<usize> = w.iter().map(|l| l.weight()).collect();
        weight.sort();

        let words: Vec<Vec<L>>;
        let mut v;
        {
            let c = self.component(weight, w.len());
            words = c.words.clone();
            v = vec![Fe::ZERO; c.words.len()];
            v[c.index[w]] = Fe::ONE;
            for (i, &p) in c.pivots.iter().enumerate() {
                let coef = v[p];
                if !coef.is_zero() {
                    for (k, x) in v.iter_mut().enumerate() {
                        *x = f.add(*x, f.mul(coef, c.rows.get(i, k)));
                    }
                }
            }
        }
        let canon: Vec<bool> = words.iter().map(|x| self.is_canonical(x)).collect();
        let mut out = PElem::zero(r, s);
        for (k, c) in v.into_iter().enumerate() {
            if !c.is_zero() {
                assert!(canon[k], "oracle left a non-canonical word");
                out.add_term(&f, c, self.word_to_mono(&words[k]));
            }
        }
        out
    }

    pub fn mono_product(&mut self, a: &PMono, b: &PMono) -> PElem {
        let mut w = Self::mono_word(a);
        w.extend(Self::mono_word(b));
        self.reduce_word(&w)
    }
}

/// The span of `u·g(x,y)·w` (total degree at most `bound`) in the tensor
/// algebra, built directly from the bracket and differential.
pub struct JSpan {
    pub words: Vec<Word>,
    index: HashMap<Word, usize>,
    rows: Matrix,
    pivots: Vec<usize>,
    field: Field,
}

impl JSpan {
    pub fn new(ctx: &StraightenCtx, bound: usize) -> JSpan {
        let l = ctx.lie();
        let f = l.field();
        let m = l.dim();
        let mut words: Vec<Word> = vec![Word(vec![])];
        let mut layer: Vec<Word> = vec![Word(vec![])];
        for _ in 0..bound {
            let mut next = Vec::new();
            for w in &layer {
                for i in 0..m {
                    let mut v = w.0.clone();
                    v.push(i);
                    next.push(Word(v));
                }
            }
            words.extend(next.iter().cloned());
            layer = next;
        }
        // Longest words first, so pivots land on top-degree columns when possible.
        words.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        let index: HashMap<Word, usize> = words
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let mut rows = Vec::new();
        for u in words.iter().filter(|w| w.len() + 2 <= bound) {
            for w in words.iter().filter(|w| u.len() + w.len() + 2 <= bound) {
                for x in 0..m {
                    for y in 0..m {
                        let mut row = vec![Fe::ZERO; words.len()];
                        let mut put = |mid: &[usize], c: Fe| {
                            let mut v = u.0.clone();
                            v.extend_from_slice(mid);
                            v.extend_from_slice(&w.0);
                            let k = index[&Word(v)];
                            row[k] = f.add(row[k], c);
                        };
                        put(&[x, y], Fe::ONE);
                        put(&[y, x], Fe::ONE);
                        let (dx, dy) = (l.dmat().column(x), l.dmat().column(y));
                        for (a, &ca) in dy.iter().enumerate() {
                            for (b, &cb) in dx.iter().enumerate() {
                                let c = f.mul(ca, cb);
                                if !c.is_zero() {
                                    put(&[a, b], c);
                                }
                            }
                        }
                        for (t, &c) in l.basis_bracket(x, y).iter().enumerate() {
                            if !c.is_zero() {
                                put(&[t], c);
                            }
                        }
                        rows.push(row);
                    }
                }
            }
        }
        let mut mat = Matrix::from_rows(f, words.len(), &rows);
        let pivots = mat.rref_in_place();
        JSpan {
            words,
            index,
            rows: mat,
            pivots,
            field: f,
        }
    }

    pub fn vector(&self, t: &TElem) -> Vec<Fe> {
        let mut v = vec![Fe::ZERO; self.words.len()];
        for (w, &c) in t.terms() {
            v[self.index[w]] = c;
        }
        v
    }

    pub fn contains(&self, t: &TElem) -> bool {
        let f = self.field;
        let mut v = self.vector(t);
        for (i, &p) in self.pivots.iter().enumerate() {
            let coef = v[p];
            if !coef.is_zero() {
                for (k, x) in v.iter_mut().enumerate() {
                    *x = f.add(*x, f.mul(coef, self.rows.get(i, k)));
                }
            }
        }
        v.iter().all(|c| c.is_zero())
    }

    /// `dim T_{≤d} / (span ∩ T_{≤d})`.
    pub fn u_dim(&self, m: usize, d: usize) -> usize {
        let t: usize = (0..=d).map(|l| m.pow(l as u32)).sum();
        t - self
            .pivots
            .iter()
            .filter(|&&p| self.words[p].len() <= d)
            .count()
    }
}
