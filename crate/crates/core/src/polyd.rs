//! The polynomial d-algebra `P(r,s)` on odd-capable generators `x_1..x_r`
//! (with `ξ_i = d(x_i)`) and central cycles `y_1..y_s`, its normal form, and
//! finite-dimensional quotients cut out at a degree bound.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dalgebra::{Algebra, AlgebraKind, Morphism};
use crate::error::{Error, Result};
use crate::ground::linalg::{is_zero_vec, vec_axpy};
use crate::ground::{Fe, Field, Matrix, Subspace};

/// Normal-form monomial `y^b ξ^S x^a`: `y`-block, then `ξ`-block (a bitmask,
/// exponents 0 or 1), then the `x` exponents in ascending index order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PMono {
    pub y: Vec<u32>,
    pub xi: u32,
    pub x: Vec<u32>,
}

impl PMono {
    pub fn one(r: usize, s: usize) -> PMono {
        PMono {
            y: vec![0; s],
            xi: 0,
            x: vec![0; r],
        }
    }

    pub fn x(r: usize, s: usize, i: usize) -> PMono {
        let mut m = PMono::one(r, s);
        m.x[i] = 1;
        m
    }

    pub fn xi(r: usize, s: usize, i: usize) -> PMono {
        let mut m = PMono::one(r, s);
        m.xi = 1 << i;
        m
    }

    pub fn y(r: usize, s: usize, j: usize) -> PMono {
        let mut m = PMono::one(r, s);
        m.y[j] = 1;
        m
    }

    pub fn r(&self) -> usize {
        self.x.len()
    }

    pub fn s(&self) -> usize {
        self.y.len()
    }

    pub fn x_degree(&self) -> usize {
        self.x.iter().map(|&e| e as usize).sum()
    }

    pub fn xi_degree(&self) -> usize {
        self.xi.count_ones() as usize
    }

    pub fn y_degree(&self) -> usize {
        self.y.iter().map(|&e| e as usize).sum()
    }

    pub fn degree(&self) -> usize {
        self.x_degree() + self.xi_degree() + self.y_degree()
    }

    pub fn is_one(&self) -> bool {
        self.degree() == 0
    }

    /// Elimination order: larger keys are eliminated first when reducing
    /// modulo relations. Exponent vectors compare from the highest index down,
    /// so `x1 < x2`.
    pub fn key(&self) -> (usize, usize, u32, Vec<u32>, Vec<u32>) {
        let rev = |v: &[u32]| v.iter().rev().copied().collect::<Vec<u32>>();
        (
            self.degree(),
            self.x_degree(),
            self.xi,
            rev(&self.y),
            rev(&self.x),
        )
    }

    /// Letters in normal order; their product in that order is exactly `self`.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.degree());
        for (j, &e) in self.y.iter().enumerate() {
            out.extend(std::iter::repeat_n(Letter::Y(j), e as usize));
        }
        for i in 0..self.r() {
            if self.xi >> i & 1 == 1 {
                out.push(Letter::Xi(i));
            }
        }
        for (i, &e) in self.x.iter().enumerate() {
            out.extend(std::iter::repeat_n(Letter::X(i), e as usize));
        }
        out
    }
}

impl fmt::Display for PMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, &e) in self.y.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("y{}", j + 1)),
                _ => parts.push(format!("y{}^{e}", j + 1)),
            }
        }
        for i in 0..self.r() {
            if self.xi >> i & 1 == 1 {
                parts.push(format!("xi{}", i + 1));
            }
        }
        for (i, &e) in self.x.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{}", i + 1)),
                _ => parts.push(format!("x{}^{e}", i + 1)),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Linear combination of normal monomials with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PElem {
    r: usize,
    s: usize,
    terms: BTreeMap<PMono, Fe>,
}

impl PElem {
    pub fn zero(r: usize, s: usize) -> PElem {
        PElem {
            r,
            s,
            terms: BTreeMap::new(),
        }
    }

    pub fn mono(m: PMono) -> PElem {
        PElem::term(Fe::ONE, m)
    }

    pub fn term(c: Fe, m: PMono) -> PElem {
        let mut p = PElem::zero(m.r(), m.s());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.r, self.s)
    }

    pub fn terms(&self) -> &BTreeMap<PMono, Fe> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &PMono) -> Fe {
        self.terms.get(m).copied().unwrap_or(Fe::ZERO)
    }

    /// Largest term degree; 0 for the zero element.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(PMono::degree).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(PMono::degree);
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    pub fn add_term(&mut self, f: &Field, c: Fe, m: PMono) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = f.add(*o.get(), c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, f: &Field, other: &PElem) -> PElem {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(f, c, m.clone());
        }
        out
    }

    pub fn scale(&self, f: &Field, s: Fe) -> PElem {
        let mut out = PElem::zero(self.r, self.s);
        if !s.is_zero() {
            for (m, &c) in &self.terms {
                out.terms.insert(m.clone(), f.mul(s, c));
            }
        }
        out
    }
}

impl fmt::Display for PElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Higher elimination keys first, so the leading term prints first.
        let mut items: Vec<(&PMono, &Fe)> = self.terms.iter().collect();
        items.sort_by(|a, b| b.0.key().cmp(&a.0.key()));
        let parts: Vec<String> = items
            .into_iter()
            .map(|(m, &c)| {
                if c == Fe::ONE {
                    m.to_string()
                } else if m.is_one() {
                    format!("{c}")
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A generator of the free algebra on `x_i`, `ξ_i`, `y_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Y(usize),
    Xi(usize),
    X(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    /// Uniformly random applicable position, from the given seed.
    Random(u64),
}

/// `P(r,s)` over a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub field: Field,
    pub r: usize,
    pub s: usize,
}

type Partial = BTreeMap<(u32, Vec<u32>), bool>;

impl PolyRing {
    pub fn new(field: Field, r: usize, s: usize) -> Result<PolyRing> {
        if r > 16 {
            return Err(Error::IndexOutOfRange {
                index: r,
                limit: 16,
            });
        }
        Ok(PolyRing { field, r, s })
    }

    pub fn one(&self) -> PElem {
        PElem::mono(PMono::one(self.r, self.s))
    }

    pub fn zero(&self) -> PElem {
        PElem::zero(self.r, self.s)
    }

    pub fn x(&self, i: usize) -> PElem {
        PElem::mono(PMono::x(self.r, self.s, i))
    }

    pub fn xi(&self, i: usize) -> PElem {
        PElem::mono(PMono::xi(self.r, self.s, i))
    }

    pub fn y(&self, j: usize) -> PElem {
        PElem::mono(PMono::y(self.r, self.s, j))
    }

    pub fn constant(&self, c: Fe) -> PElem {
        PElem::term(c, PMono::one(self.r, self.s))
    }

    pub fn letter(&self, l: Letter) -> PElem {
        match l {
            Letter::X(i) => self.x(i),
            Letter::Xi(i) => self.xi(i),
            Letter::Y(j) => self.y(j),
        }
    }

    fn check(&self, a: &PElem) -> Result<()> {
        if a.shape() != (self.r, self.s) {
            return Err(Error::ShapeMismatch(self.r, self.s, a.r, a.s));
        }
        Ok(())
    }

    /// Right multiplication of `ξ^U x^a` terms by `x_i`:
    /// `x^a x_i = x^(a+e_i) + Σ_{j>i, a_j odd} ξ_i ξ_j x^(a-e_j)`.
    fn times_x(partial: &Partial, i: usize) -> Partial {
        let mut out: Partial = BTreeMap::new();
        let mut toggle = |k: (u32, Vec<u32>)| {
            let e = out.entry(k).or_insert(false);
            *e = !*e;
        };
        for ((u, a), &on) in partial {
            if !on {
                continue;
            }
            let mut up = a.clone();
            up[i] += 1;
            toggle((*u, up));
            for j in i + 1..a.len() {
                let both = (1u32 << i) | (1u32 << j);
                if a[j] % 2 == 1 && u & both == 0 {
                    let mut down = a.clone();
                    down[j] -= 1;
                    toggle((u | both, down));
                }
            }
        }
        out.retain(|_, v| *v);
        out
    }

    /// Product of two normal monomials; every coefficient is 1 so the result
    /// is a set of monomials.
    pub fn mono_mul(&self, m1: &PMono, m2: &PMono) -> Vec<PMono> {
        if m1.xi & m2.xi != 0 {
            return Vec::new();
        }
        let mut partial: Partial = BTreeMap::new();
        partial.insert((m1.xi | m2.xi, m1.x.clone()), true);
        for (i, &e) in m2.x.iter().enumerate() {
            for _ in 0..e {
                partial = PolyRing::times_x(&partial, i);
            }
        }
        let y: Vec<u32> = m1.y.iter().zip(&m2.y).map(|(a, b)| a + b).collect();
        partial
            .into_keys()
            .map(|(xi, x)| PMono {
                y: y.clone(),
                xi,
                x,
            })
            .collect()
    }

    pub fn normal_mul(&self, a: &PElem, b: &PElem) -> Result<PElem> {
        self.check(a)?;
        self.check(b)?;
        let f = self.field;
        let mut acc: HashMap<PMono, Fe> = HashMap::new();
        for (m1, &c1) in &a.terms {
            for (m2, &c2) in &b.terms {
                let c = f.mul(c1, c2);
                for m in self.mono_mul(m1, m2) {
                    let e = acc.entry(m).or_insert(Fe::ZERO);
                    *e = f.add(*e, c);
                }
            }
        }
        Ok(PElem {
            r: self.r,
            s: self.s,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn mul(&self, a: &PElem, b: &PElem) -> PElem {
        self.normal_mul(a, b).expect("shape mismatch")
    }

    pub fn d_mono(&self, m: &PMono) -> Vec<PMono> {
        let mut out = Vec::new();
        for i in 0..self.r {
            if m.x[i] % 2 == 1 && m.xi >> i & 1 == 0 {
                let mut t = m.clone();
                t.x[i] -= 1;
                t.xi |= 1 << i;
                out.push(t);
            }
        }
        out
    }

    /// The derivation with `d(x_i) = ξ_i`, `d(ξ_i) = d(y_j) = 0`.
    pub fn p_d(&self, a: &PElem) -> PElem {
        let f = self.field;
        let mut out = self.zero();
        for (m, &c) in &a.terms {
            for t in self.d_mono(m) {
                out.add_term(&f, c, t);
            }
        }
        out
    }

    /// All normal monomials of degree at most `bound`, in ascending elimination key.
    pub fn monomials_up_to(&self, bound: usize) -> Vec<PMono> {
        let mut out = Vec::new();
        let mut y = vec![0u32; self.s];
        compositions(&mut y, 0, bound, &mut |y| {
            let used: usize = y.iter().map(|&e| e as usize).sum();
            for mask in 0u32..(1 << self.r) {
                let xd = mask.count_ones() as usize;
                if used + xd > bound {
                    continue;
                }
                let mut x = vec![0u32; self.r];
                compositions(&mut x, 0, bound - used - xd, &mut |x| {
                    out.push(PMono {
                        y: y.to_vec(),
                        xi: mask,
                        x: x.to_vec(),
                    });
                });
            }
        });
        out.sort_by_key(PMono::key);
        out
    }

    /// Reduces a free word to normal form by local rewriting, choosing the
    /// rewrite position with `strategy`.
    pub fn reduce_word(&self, word: &[Letter], strategy: Strategy) -> PElem {
        let f = self.field;
        let mut rng = match strategy {
            Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut pending: BTreeMap<Vec<Letter>, Fe> = BTreeMap::new();
        pending.insert(word.to_vec(), Fe::ONE);
        let mut done = self.zero();
        while let Some((w, c)) = pending.pop_first() {
            let positions: Vec<usize> = (0..w.len().saturating_sub(1))
                .filter(|&p| w[p] >= w[p + 1])
                .filter(|&p| w[p] > w[p + 1] || matches!(w[p], Letter::Xi(_)))
                .collect();
            if positions.is_empty() {
                done.add_term(&f, c, self.word_to_mono(&w));
                continue;
            }
            let p = match strategy {
                Strategy::Leftmost => positions[0],
                Strategy::Rightmost => positions[positions.len() - 1],
                Strategy::Random(_) => {
                    positions[rng.as_mut().unwrap().gen_range(0..positions.len())]
                }
            };
            let mut push = |nw: Vec<Letter>| {
                let e = pending.entry(nw).or_insert(Fe::ZERO);
                *e = f.add(*e, c);
            };
            match (w[p], w[p + 1]) {
                (Letter::Xi(i), Letter::Xi(j)) if i == j => {}
                (Letter::X(j), Letter::X(i)) => {
                    let mut swapped = w.clone();
                    swapped.swap(p, p + 1);
                    push(swapped);
                    let mut corr = w.clone();
                    corr[p] = Letter::Xi(i);
                    corr[p + 1] = Letter::Xi(j);
                    push(corr);
                }
                _ => {
                    let mut swapped = w.clone();
                    swapped.swap(p, p + 1);
                    push(swapped);
                }
            }
            pending.retain(|_, v| !v.is_zero());
        }
        done
    }

    fn word_to_mono(&self, w: &[Letter]) -> PMono {
        let mut m = PMono::one(self.r, self.s);
        for &l in w {
            match l {
                Letter::X(i) => m.x[i] += 1,
                Letter::Xi(i) => m.xi |= 1 << i,
                Letter::Y(j) => m.y[j] += 1,
            }
        }
        m
    }
}

fn compositions(buf: &mut [u32], pos: usize, budget: usize, emit: &mut dyn FnMut(&[u32])) {
    if pos == buf.len() {
        emit(buf);
        return;
    }
    for e in 0..=budget {
        buf[pos] = e as u32;
        compositions(buf, pos + 1, budget - e, emit);
    }
    buf[pos] = 0;
}

/// Relations in `P(r,s)` together with the degree bound used to cut out a
/// finite-dimensional quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub ring: PolyRing,
    pub relations: Vec<PElem>,
    pub degree_bound: usize,
}

impl Presentation {
    pub fn new(ring: PolyRing, relations: Vec<PElem>, degree_bound: usize) -> Result<Presentation> {
        for rel in &relations {
            if rel.shape() != (ring.r, ring.s) {
                return Err(Error::ShapeMismatch(ring.r, ring.s, rel.r, rel.s));
            }
            if rel.is_zero() {
                return Err(Error::Degenerate("zero relation"));
            }
        }
        Ok(Presentation {
            ring,
            relations,
            degree_bound,
        })
    }
}

/// Row-reduced span of the relation multiples at a degree bound.
#[derive(Clone, Debug)]
struct IdealSlice {
    cols: Vec<PMono>,
    index: HashMap<PMono, usize>,
    rows: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
}

impl IdealSlice {
    fn new(ring: &PolyRing, relations: &[PElem], bound: usize) -> IdealSlice {
        let f = ring.field;
        let mut cols = ring.monomials_up_to(bound);
        cols.reverse();
        let index: HashMap<PMono, usize> = cols
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let all = ring.monomials_up_to(bound);
        let pure_x: Vec<&PMono> = all
            .iter()
            .filter(|m| m.xi == 0 && m.y_degree() == 0)
            .collect();
        let mut rows: Vec<Vec<Fe>> = Vec::new();
        for rel in relations {
            let rd = rel.degree();
            for m1 in all.iter().filter(|m| m.degree() + rd <= bound) {
                let left = ring.mul(&PElem::mono(m1.clone()), rel);
                for m2 in pure_x
                    .iter()
                    .filter(|m| m1.degree() + rd + m.degree() <= bound)
                {
                    let prod = ring.mul(&left, &PElem::mono((*m2).clone()));
                    if prod.is_zero() {
                        continue;
                    }
                    let mut v = vec![Fe::ZERO; cols.len()];
                    for (m, &c) in prod.terms() {
                        v[index[m]] = c;
                    }
                    rows.push(v);
                }
            }
        }
        let mut mat = Matrix::from_rows(f, cols.len(), &rows);
        let pivots = mat.rref_in_place();
        let rows = (0..pivots.len()).map(|r| mat.row(r).to_vec()).collect();
        IdealSlice {
            cols,
            index,
            rows,
            pivots,
        }
    }

    fn vector(&self, p: &PElem) -> Vec<Fe> {
        let mut v = vec![Fe::ZERO; self.cols.len()];
        for (m, &c) in p.terms() {
            v[self.index[m]] = c;
        }
        v
    }

    /// Eliminates pivot columns in place.
    fn reduce_vec(&self, f: &Field, v: &mut [Fe]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if !c.is_zero() {
                vec_axpy(f, v, c, row);
            }
        }
    }

    fn contains(&self, f: &Field, p: &PElem) -> bool {
        let mut v = self.vector(p);
        self.reduce_vec(f, &mut v);
        is_zero_vec(&v)
    }

    /// Standard monomials (non-pivot columns), ascending key.
    fn standard(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols.len()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut s: Vec<usize> = (0..self.cols.len()).filter(|&c| !is_pivot[c]).collect();
        s.reverse();
        s
    }
}

/// A finite-dimensional quotient of `P(r,s)` with its monomial basis.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub algebra: Arc<Algebra>,
    pub basis: Vec<PMono>,
    pub presentation: Presentation,
    slice: IdealSlice,
    basis_pos: HashMap<usize, usize>,
    /// `letter_table[k][l]`: coordinates of `basis[k] · letter l`.
    letter_table: Vec<Vec<Vec<Fe>>>,
}

impl QuotientAlgebra {
    fn letter_index(&self, l: Letter) -> usize {
        let r = self.presentation.ring.r;
        match l {
            Letter::X(i) => i,
            Letter::Xi(i) => r + i,
            Letter::Y(j) => 2 * r + j,
        }
    }

    fn reduce_low(&self, p: &PElem) -> Vec<Fe> {
        let f = self.presentation.ring.field;
        let mut v = self.slice.vector(p);
        self.slice.reduce_vec(&f, &mut v);
        let mut out = vec![Fe::ZERO; self.basis.len()];
        for (c, &x) in v.iter().enumerate() {
            if !x.is_zero() {
                out[self.basis_pos[&c]] = x;
            }
        }
        out
    }

    /// Coordinates of any element of `P(r,s)` in the quotient basis.
    pub fn reduce(&self, p: &PElem) -> Vec<Fe> {
        let ring = &self.presentation.ring;
        let f = ring.field;
        let bound = self.presentation.degree_bound;
        let mut out = vec![Fe::ZERO; self.basis.len()];
        let mut low = ring.zero();
        for (m, &c) in p.terms() {
            if m.degree() <= bound {
                low.add_term(&f, c, m.clone());
                continue;
            }
            let letters = m.letters();
            let prefix = ring.word_to_mono(&letters[..bound]);
            let mut coords = self.reduce_low(&PElem::mono(prefix));
            for &l in &letters[bound..] {
                let li = self.letter_index(l);
                let mut next = vec![Fe::ZERO; self.basis.len()];
                for (k, &ck) in coords.iter().enumerate() {
                    vec_axpy(&f, &mut next, ck, &self.letter_table[k][li]);
                }
                coords = next;
            }
            vec_axpy(&f, &mut out, c, &coords);
        }
        let lo = self.reduce_low(&low);
        vec_axpy(&f, &mut out, Fe::ONE, &lo);
        out
    }

    pub fn lift(&self, coords: &[Fe]) -> PElem {
        let ring = &self.presentation.ring;
        let mut out = ring.zero();
        for (k, &c) in coords.iter().enumerate() {
            out.add_term(&ring.field, c, self.basis[k].clone());
        }
        out
    }

    /// Whether `p` lies in the ideal slice at the bound.
    pub fn in_ideal(&self, p: &PElem) -> bool {
        p.degree() <= self.presentation.degree_bound
            && self.slice.contains(&self.presentation.ring.field, p)
    }

    /// Evaluates a normal monomial in `target` with `x_i ↦ x_images[i]`,
    /// `ξ_i ↦ d(x_images[i])`, `y_j ↦ y_images[j]`.
    pub fn evaluate(
        target: &Algebra,
        m: &PMono,
        x_images: &[Vec<Fe>],
        y_images: &[Vec<Fe>],
    ) -> Vec<Fe> {
        let mut acc = target.one();
        for l in m.letters() {
            let g = match l {
                Letter::X(i) => x_images[i].clone(),
                Letter::Xi(i) => target.apply_d(&x_images[i]),
                Letter::Y(j) => y_images[j].clone(),
            };
            acc = target.mul(&acc, &g);
        }
        acc
    }

    /// The linear map sending each basis monomial to its evaluation; a
    /// d-algebra homomorphism whenever the relations hold in `target`.
    pub fn hom_to(
        &self,
        target: Arc<Algebra>,
        x_images: &[Vec<Fe>],
        y_images: &[Vec<Fe>],
    ) -> Result<Morphism> {
        let ring = &self.presentation.ring;
        if x_images.len() != ring.r || y_images.len() != ring.s {
            return Err(Error::DimensionMismatch {
                expected: ring.r + ring.s,
                got: x_images.len() + y_images.len(),
            });
        }
        let cols: Vec<Vec<Fe>> = self
            .basis
            .iter()
            .map(|m| QuotientAlgebra::evaluate(&target, m, x_images, y_images))
            .collect();
        let mat = Matrix::from_columns(target.field(), target.dim(), &cols);
        Morphism::new(self.algebra.clone(), target, mat)
    }
}

fn build_quotient(p: &Presentation) -> Result<QuotientAlgebra> {
    let ring = p.ring;
    let f = ring.field;
    let bound = p.degree_bound;
    if let Some(rel) = p.relations.iter().find(|r| r.degree() > bound) {
        return Err(Error::DegreeOverflow {
            got: rel.degree(),
            bound,
        });
    }
    let slice = IdealSlice::new(&ring, &p.relations, bound);
    for rel in &p.relations {
        if !slice.contains(&f, &ring.p_d(rel)) {
            return Err(Error::RelationsNotDClosed);
        }
    }
    let standard = slice.standard();
    if standard.is_empty() || !slice.cols[standard[0]].is_one() {
        return Err(Error::Degenerate("the relations generate the whole ring"));
    }
    if standard.iter().any(|&c| slice.cols[c].degree() >= bound) {
        return Err(Error::NotClosedAtBound(bound));
    }
    let basis: Vec<PMono> = standard.iter().map(|&c| slice.cols[c].clone()).collect();
    let basis_pos: HashMap<usize, usize> =
        standard.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let n = basis.len();
    let mut q = QuotientAlgebra {
        algebra: Arc::new(Algebra::ground(f)),
        basis,
        presentation: p.clone(),
        slice,
        basis_pos,
        letter_table: Vec::new(),
    };
    let mut letters: Vec<Letter> = (0..ring.r).map(Letter::X).collect();
    letters.extend((0..ring.r).map(Letter::Xi));
    letters.extend((0..ring.s).map(Letter::Y));
    q.letter_table = q
        .basis
        .iter()
        .map(|b| {
            letters
                .iter()
                .map(|&l| q.reduce_low(&ring.mul(&PElem::mono(b.clone()), &ring.letter(l))))
                .collect()
        })
        .collect();
    let elems: Vec<PElem> = q.basis.iter().map(|b| PElem::mono(b.clone())).collect();
    let mut mul = Vec::with_capacity(n * n * n);
    for bi in &elems {
        for bj in &elems {
            mul.extend(q.reduce(&ring.mul(bi, bj)));
        }
    }
    let dcols: Vec<Vec<Fe>> = elems.iter().map(|b| q.reduce(&ring.p_d(b))).collect();
    let labels = q.basis.iter().map(|m| m.to_string()).collect();
    let alg = Algebra::new(f, n, mul, Matrix::from_columns(f, n, &dcols), Some(labels))?;
    q.algebra = Arc::new(alg);
    Ok(q)
}

/// The finite-dimensional d-algebra `P(r,s)/(relations)`, provided the
/// quotient visibly closes below the degree bound. Inhomogeneous relations are
/// additionally checked for a stable dimension at the next bound and for the
/// full axiom set.
pub fn quotient_to_dalgebra(p: &Presentation) -> Result<QuotientAlgebra> {
    let q = build_quotient(p)?;
    if p.relations.iter().any(|r| !r.is_homogeneous()) {
        let mut next = p.clone();
        next.degree_bound += 1;
        let q2 = build_quotient(&next)?;
        if q2.basis != q.basis {
            return Err(Error::NotClosedAtBound(p.degree_bound));
        }
        if !q.algebra.verify_axioms(AlgebraKind::DAlgebra).passed() {
            return Err(Error::NotClosedAtBound(p.degree_bound));
        }
    }
    Ok(q)
}

/// Relations satisfied by `generators` in `a`: the kernel of the evaluation
/// map on normal monomials up to `bound`. Generators with nonzero
/// differential become the `x_i` (in the given order); the rest become `y_j`.
pub fn present(
    a: &Algebra,
    generators: &[Vec<Fe>],
    bound: usize,
) -> Result<(Presentation, Vec<Vec<Fe>>)> {
    let f = a.field();
    let n = a.dim();
    let (odd, even): (Vec<Vec<Fe>>, Vec<Vec<Fe>>) = generators
        .iter()
        .cloned()
        .partition(|g| !is_zero_vec(&a.apply_d(g)));
    let ring = PolyRing::new(f, odd.len(), even.len())?;
    let mut gens: Vec<Vec<Fe>> = odd.clone();
    gens.extend(odd.iter().map(|g| a.apply_d(g)));
    gens.extend(even.iter().cloned());
    let mut span = Subspace::span(f, n, &[a.one()]);
    loop {
        let mut grown = span.basis();
        for v in span.basis() {
            for g in &gens {
                grown.push(a.mul(&v, g));
            }
        }
        let next = Subspace::span(f, n, &grown);
        if next.dim() == span.dim() {
            break;
        }
        span = next;
    }
    if span.dim() < n {
        return Err(Error::NotGenerating(format!(
            "generated subalgebra has dimension {} of {n}",
            span.dim()
        )));
    }
    let monos = ring.monomials_up_to(bound);
    let images: Vec<Vec<Fe>> = monos
        .iter()
        .map(|m| QuotientAlgebra::evaluate(a, m, &odd, &even))
        .collect();
    let eval = Matrix::from_columns(f, n, &images);
    if eval.rank() < n {
        return Err(Error::NotGenerating(format!(
            "monomials of degree <= {bound} do not span"
        )));
    }
    let relations: Vec<PElem> = eval
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut p = ring.zero();
            for (m, c) in monos.iter().zip(v) {
                p.add_term(&f, c, m.clone());
            }
            p
        })
        .collect();
    let mut order = odd;
    order.extend(even);
    Ok((Presentation::new(ring, relations, bound)?, order))
}

/// Random element of `P(r,s)` with up to `terms` monomials of degree at most `deg`.
pub fn random_elem(ring: &PolyRing, rng: &mut impl Rng, deg: usize, terms: usize) -> PElem {
    let monos = ring.monomials_up_to(deg);
    let mut p = ring.zero();
    for _ in 0..terms {
        let m = monos[rng.gen_range(0..monos.len())].clone();
        let c = Fe(rng.gen_range(1..ring.field.size()) as u16);
        p.add_term(&ring.field, c, m);
    }
    p
}
