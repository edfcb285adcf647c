//! The tensor algebra on x_1, x_2 with the skew derivations ∂_1, ∂_2, and
//! brute-force facts about B(V) read off from the derivation pairing.
//!
//! ∂_i(uv) = ∂_i(u)v + (g_i⁻¹ ⊳ u)∂_i(v) and ∂_i(x_j) = δ_ij, so on a word the
//! letter removed at position k picks up χ(−e_i, degree of the prefix).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::Bound::{Excluded, Unbounded};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::braiding::{DiagonalBraiding, GroupDegree, MultiDegree};
use crate::cyclo::{CyclotomicNumber, RootOfUnity};
use crate::linalg;
use crate::scalar::{ModP, PrimeField, Scalar};

/// Default bound on the total degree of a Hilbert series computation.
pub const DEFAULT_HILBERT_CUTOFF: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("operands carry different braidings")]
    BraidingMismatch,
    #[error("element is not homogeneous (degrees {0:?})")]
    NotHomogeneous(Vec<MultiDegree>),
    #[error("requested total degree {requested} exceeds the cutoff {cutoff}")]
    CutoffExceeded { requested: u32, cutoff: u32 },
    #[error("letter {0} is not 1 or 2")]
    BadLetter(u8),
}

/// A word in the letters 1 and 2, ordered lexicographically with 1 < 2.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: impl Into<Vec<u8>>) -> Result<Word, TensorError> {
        let letters = letters.into();
        match letters.iter().find(|l| !matches!(l, 1 | 2)) {
            Some(&bad) => Err(TensorError::BadLetter(bad)),
            None => Ok(Word(letters)),
        }
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letter(i: u8) -> Word {
        Word::new(vec![i]).expect("letter 1 or 2")
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> MultiDegree {
        let a = self.0.iter().filter(|&&l| l == 1).count() as u32;
        MultiDegree::new(a, self.0.len() as u32 - a)
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }

    fn without(&self, k: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() - 1);
        v.extend_from_slice(&self.0[..k]);
        v.extend_from_slice(&self.0[k + 1..]);
        Word(v)
    }

    /// All words of multidegree `d`, in increasing order.
    pub fn all_of_degree(d: MultiDegree) -> Vec<Word> {
        fn go(a: u32, b: u32, prefix: &mut Vec<u8>, out: &mut Vec<Word>) {
            if a == 0 && b == 0 {
                out.push(Word(prefix.clone()));
                return;
            }
            for (l, ok) in [(1u8, a > 0), (2u8, b > 0)] {
                if ok {
                    prefix.push(l);
                    if l == 1 {
                        go(a - 1, b, prefix, out);
                    } else {
                        go(a, b - 1, prefix, out);
                    }
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(d.a, d.b, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "x{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite linear combination of words with nonzero coefficients.
#[derive(Clone)]
pub struct TensorElement {
    terms: BTreeMap<Word, CyclotomicNumber>,
    braiding: Arc<DiagonalBraiding>,
}

impl TensorElement {
    pub fn zero(br: &Arc<DiagonalBraiding>) -> Self {
        TensorElement {
            terms: BTreeMap::new(),
            braiding: br.clone(),
        }
    }

    pub fn one(br: &Arc<DiagonalBraiding>) -> Self {
        Self::monomial(br, Word::empty(), CyclotomicNumber::one())
    }

    /// x_i.
    pub fn generator(br: &Arc<DiagonalBraiding>, i: u8) -> Self {
        Self::monomial(br, Word::letter(i), CyclotomicNumber::one())
    }

    pub fn monomial(br: &Arc<DiagonalBraiding>, w: Word, c: CyclotomicNumber) -> Self {
        let mut e = Self::zero(br);
        if !c.is_zero() {
            e.terms.insert(w, c);
        }
        e
    }

    pub fn from_terms(
        br: &Arc<DiagonalBraiding>,
        terms: impl IntoIterator<Item = (Word, CyclotomicNumber)>,
    ) -> Self {
        let mut e = Self::zero(br);
        for (w, c) in terms {
            e.add_term(w, &c);
        }
        e
    }

    pub fn braiding(&self) -> &Arc<DiagonalBraiding> {
        &self.braiding
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &CyclotomicNumber)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> CyclotomicNumber {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Zero in the tensor algebra (no terms). See [`is_zero_in_nichols`] for B(V).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The scalar part when the element has degree 0 only.
    pub fn as_scalar(&self) -> Option<CyclotomicNumber> {
        match self.terms.len() {
            0 => Some(CyclotomicNumber::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, w: Word, c: &CyclotomicNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn same_braiding(&self, o: &TensorElement) -> bool {
        Arc::ptr_eq(&self.braiding, &o.braiding) || *self.braiding == *o.braiding
    }

    pub fn try_add(&self, o: &TensorElement) -> Result<TensorElement, TensorError> {
        if !self.same_braiding(o) {
            return Err(TensorError::BraidingMismatch);
        }
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> TensorElement {
        if c.is_zero() {
            return Self::zero(&self.braiding);
        }
        TensorElement {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
            braiding: self.braiding.clone(),
        }
    }

    /// Concatenation product.
    pub fn multiply(&self, o: &TensorElement) -> Result<TensorElement, TensorError> {
        if !self.same_braiding(o) {
            return Err(TensorError::BraidingMismatch);
        }
        let mut out = Self::zero(&self.braiding);
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        Ok(out)
    }

    pub fn multidegrees(&self) -> BTreeSet<MultiDegree> {
        self.terms.keys().map(Word::degree).collect()
    }

    /// The common multidegree of all terms; `Ok(None)` for the zero element.
    pub fn homogeneous_degree(&self) -> Result<Option<MultiDegree>, TensorError> {
        let ds = self.multidegrees();
        match ds.len() {
            0 => Ok(None),
            1 => Ok(ds.into_iter().next()),
            _ => Err(TensorError::NotHomogeneous(ds.into_iter().collect())),
        }
    }

    pub fn component(&self, d: MultiDegree) -> TensorElement {
        TensorElement {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
            braiding: self.braiding.clone(),
        }
    }
}

impl PartialEq for TensorElement {
    fn eq(&self, o: &Self) -> bool {
        self.same_braiding(o) && self.terms == o.terms
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){w}")?;
        }
        Ok(())
    }
}

macro_rules! element_op {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr<&TensorElement> for &TensorElement {
            type Output = TensorElement;
            fn $m(self, o: &TensorElement) -> TensorElement {
                let f: fn(&TensorElement, &TensorElement) -> Result<TensorElement, TensorError> =
                    $body;
                f(self, o).expect("operands share a braiding")
            }
        }
    };
}

element_op!(Add, add, |a, b| a.try_add(b));
element_op!(Sub, sub, |a, b| a.try_add(&-b));
element_op!(Mul, mul, |a, b| a.multiply(b));

impl std::ops::Neg for &TensorElement {
    type Output = TensorElement;
    fn neg(self) -> TensorElement {
        TensorElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
            braiding: self.braiding.clone(),
        }
    }
}

pub fn multiply(e1: &TensorElement, e2: &TensorElement) -> Result<TensorElement, TensorError> {
    e1.multiply(e2)
}

/// g(α) ⊳ e: each word of degree β is scaled by χ(α, β).
pub fn group_act(alpha: GroupDegree, e: &TensorElement) -> TensorElement {
    let br = e.braiding.clone();
    let mut cache: HashMap<MultiDegree, CyclotomicNumber> = HashMap::new();
    let terms = e
        .terms
        .iter()
        .map(|(w, c)| {
            let d = w.degree();
            let f = cache
                .entry(d)
                .or_insert_with(|| br.chi_signed(alpha, d.signed()));
            (w.clone(), c * &*f)
        })
        .collect();
    TensorElement { terms, braiding: br }
}

/// χ(−e_i, β) in the most convenient form.
#[derive(Clone)]
enum ChiFactor {
    Root(RootOfUnity),
    General(CyclotomicNumber),
}

fn chi_factor(br: &DiagonalBraiding, i: u8, beta: MultiDegree) -> ChiFactor {
    let alpha = if i == 1 {
        GroupDegree(-1, 0)
    } else {
        GroupDegree(0, -1)
    };
    match br.chi_root_signed(alpha, beta.signed()) {
        Some(r) => ChiFactor::Root(r),
        None => ChiFactor::General(br.chi_signed(alpha, beta.signed())),
    }
}

/// ∂_i over an arbitrary coefficient ring; `scale(c, β)` returns c·χ(−e_i, β).
fn derive_terms<S: Scalar>(
    i: u8,
    terms: &BTreeMap<Word, S>,
    mut scale: impl FnMut(&S, MultiDegree) -> S,
) -> BTreeMap<Word, S> {
    let mut out: BTreeMap<Word, S> = BTreeMap::new();
    for (w, c) in terms {
        let mut prefix = MultiDegree::default();
        for (k, &l) in w.letters().iter().enumerate() {
            if l == i {
                let v = scale(c, prefix);
                let key = w.without(k);
                match out.get_mut(&key) {
                    Some(x) => *x = x.add(&v),
                    None => {
                        out.insert(key, v);
                    }
                }
            }
            prefix = prefix + if l == 1 { MultiDegree::E1 } else { MultiDegree::E2 };
        }
    }
    out.retain(|_, x| !x.vanishes());
    out
}

fn exact_scaler(br: &DiagonalBraiding, i: u8) -> impl FnMut(&CyclotomicNumber, MultiDegree) -> CyclotomicNumber + '_ {
    let mut cache: HashMap<MultiDegree, ChiFactor> = HashMap::new();
    move |c, beta| match cache.entry(beta).or_insert_with(|| chi_factor(br, i, beta)) {
        ChiFactor::Root(r) => c.mul_root(*r),
        ChiFactor::General(g) => c * &*g,
    }
}

/// The skew derivation ∂_i = ⟨y_i, ·⟩.
pub fn derive(i: u8, e: &TensorElement) -> TensorElement {
    assert!(matches!(i, 1 | 2), "derivation index must be 1 or 2");
    let terms = derive_terms(i, &e.terms, exact_scaler(&e.braiding, i));
    TensorElement {
        terms,
        braiding: e.braiding.clone(),
    }
}

/// ⟨ι(x_{u_1}⋯x_{u_m}), e⟩ = ∂_{u_1}(∂_{u_2}(⋯∂_{u_m}(e))).
pub fn pair(u: &Word, e: &TensorElement) -> TensorElement {
    u.letters()
        .iter()
        .rev()
        .fold(e.clone(), |acc, &l| derive(l, &acc))
}

/// ⟨ι(u), e⟩ extended linearly in u. Only the coefficients of `u` are read.
pub fn pair_element(u: &TensorElement, e: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(&e.braiding);
    for (w, c) in u.terms() {
        let p = pair(w, e);
        for (v, x) in &p.terms {
            out.add_term(v.clone(), &(x * c));
        }
    }
    out
}

/// Basis of a span of sparse vectors; each stored vector has its least key
/// as pivot, with coefficient one there.
struct SparseBasis<S> {
    pivots: BTreeMap<Word, BTreeMap<Word, S>>,
}

impl<S: Scalar> SparseBasis<S> {
    fn new() -> Self {
        SparseBasis {
            pivots: BTreeMap::new(),
        }
    }

    fn insert(&mut self, mut v: BTreeMap<Word, S>) {
        let mut cursor: Option<Word> = None;
        loop {
            let next = match &cursor {
                None => v.keys().next().cloned(),
                Some(c) => v.range((Excluded(c.clone()), Unbounded)).next().map(|(k, _)| k.clone()),
            };
            let Some(k) = next else { break };
            if let Some(b) = self.pivots.get(&k) {
                let coef = v[&k].clone();
                for (w, x) in b {
                    let t = coef.mul(x);
                    let nv = match v.get(w) {
                        Some(y) => y.sub(&t),
                        None => t.neg(),
                    };
                    if nv.vanishes() {
                        v.remove(w);
                    } else {
                        v.insert(w.clone(), nv);
                    }
                }
            }
            cursor = Some(k);
        }
        if let Some((k, lead)) = v.iter().next().map(|(k, x)| (k.clone(), x.clone())) {
            let inv = lead.inv();
            let v = v.into_iter().map(|(w, x)| (w, x.mul(&inv))).collect();
            self.pivots.insert(k, v);
        }
    }

    fn into_vectors(self) -> Vec<BTreeMap<Word, S>> {
        self.pivots.into_values().collect()
    }
}

/// Decides whether every full derivation of `start` vanishes by following the
/// span of the iterated derivatives level by level.
fn derivations_vanish<S: Scalar>(
    start: BTreeMap<Word, S>,
    mut scale: impl FnMut(u8, &S, MultiDegree) -> S,
) -> bool {
    let mut level = vec![start];
    level.retain(|v| !v.is_empty());
    loop {
        if level.is_empty() {
            return true;
        }
        if level.iter().any(|v| v.contains_key(&Word::empty())) {
            return false;
        }
        let mut basis = SparseBasis::new();
        for v in &level {
            for i in [1u8, 2] {
                let d = derive_terms(i, v, |c, b| scale(i, c, b));
                if !d.is_empty() {
                    basis.insert(d);
                }
            }
        }
        level = basis.into_vectors();
    }
}

/// Whether the image of a homogeneous element in B(V) is zero, i.e. every
/// full derivation of it vanishes.
pub fn is_zero_in_nichols(e: &TensorElement) -> Result<bool, TensorError> {
    if e.homogeneous_degree()?.is_none() {
        return Ok(true);
    }
    let br = &e.braiding;
    // A nonzero residue of some full derivation proves the element nonzero.
    if let Some(field) = br
        .root_order()
        .and_then(|n| PrimeField::try_for_order(num_integer::lcm(n, 2)))
    {
        let image: Option<BTreeMap<Word, ModP>> = e
            .terms
            .iter()
            .map(|(w, c)| {
                (c.conductor() <= field.order() && field.order() % c.conductor() == 0)
                    .then(|| field.image(c))
                    .filter(|x| x.value().is_some())
                    .map(|x| (w.clone(), x))
            })
            .collect();
        if let Some(mut image) = image {
            image.retain(|_, x| !x.vanishes());
            let mut cache: HashMap<(u8, MultiDegree), ModP> = HashMap::new();
            let vanish = derivations_vanish(image, |i, c: &ModP, beta| {
                let f = *cache.entry((i, beta)).or_insert_with(|| {
                    match chi_factor(br, i, beta) {
                        ChiFactor::Root(r) => field.root(r),
                        ChiFactor::General(_) => unreachable!("braiding entries are roots"),
                    }
                });
                c.mul(&f)
            });
            if !vanish {
                return Ok(false);
            }
        }
    }
    let mut s1 = exact_scaler(br, 1);
    let mut s2 = exact_scaler(br, 2);
    Ok(derivations_vanish(e.terms.clone(), |i, c, b| {
        if i == 1 {
            s1(c, b)
        } else {
            s2(c, b)
        }
    }))
}

/// Coordinates of B(V) in one multidegree: a monomial basis and, for every
/// word, its image under an injective linear map B(V)_d → K^dim.
struct Level<S> {
    basis: Vec<Word>,
    index: HashMap<Word, usize>,
    coords: Vec<Vec<S>>,
}

impl<S> Level<S> {
    fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Field in which graded dimensions are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    /// Exact arithmetic in Q(ζ_N).
    Exact,
    /// The same computation for the reduced braiding over F_p, p ≡ 1 mod N.
    /// Every graded dimension is a lower bound for the true one and agrees
    /// with it unless p divides all maximal minors of the pairing matrix.
    Modular,
}

type ChiMul<S> = Box<dyn Fn(&S, u8, MultiDegree) -> S + Send + Sync>;
type RankFn<S> = Box<dyn Fn(&[Vec<S>]) -> linalg::Echelon + Send + Sync>;

/// Graded pieces of B(V) computed degree by degree from the derivation pairing.
///
/// B(V)_d is spanned by the words u·x_j with u in the basis of B(V)_{d−e_j},
/// and a word is zero in B(V) exactly when both derivatives are zero in lower
/// degree. The matrix of the two derivatives on those candidates has the rank
/// of the full pairing matrix of degree d.
pub struct NicholsTables<S> {
    zero: S,
    chi_mul: ChiMul<S>,
    rank: RankFn<S>,
    levels: HashMap<MultiDegree, Level<S>>,
}

impl NicholsTables<CyclotomicNumber> {
    pub fn exact(br: &Arc<DiagonalBraiding>) -> Self {
        let field = br
            .root_order()
            .and_then(|n| PrimeField::try_for_order(num_integer::lcm(n, 2)));
        let b = br.clone();
        NicholsTables::with_parts(
            CyclotomicNumber::zero(),
            CyclotomicNumber::one(),
            Box::new(move |x, i, beta| match chi_factor(&b, i, beta) {
                ChiFactor::Root(r) => x.mul_root(r),
                ChiFactor::General(g) => x * &g,
            }),
            Box::new(move |rows| match field {
                Some(f) => linalg::echelon(rows, f),
                None => linalg::fraction_free_echelon(rows),
            }),
        )
    }
}

impl NicholsTables<ModP> {
    /// `None` unless all entries are roots of unity of supported order.
    pub fn modular(br: &Arc<DiagonalBraiding>) -> Option<Self> {
        let roots = br.roots()?;
        let field = PrimeField::try_for_order(num_integer::lcm(br.root_order()?, 2))?;
        let root = |k: usize| field.root(roots[k]);
        let inv = |k: usize| root(k).inv();
        // χ(−e_i, e_j) for i, j ∈ {1, 2}
        let table = [[inv(0), inv(1)], [inv(2), inv(3)]];
        Some(NicholsTables::with_parts(
            field.elem(0),
            field.elem(1),
            Box::new(move |x, i, beta| {
                let t = &table[i as usize - 1];
                x.mul(&t[0].pow(beta.a as i64)).mul(&t[1].pow(beta.b as i64))
            }),
            Box::new(|rows| linalg::modular_echelon(rows)),
        ))
    }
}

impl<S: Scalar> NicholsTables<S> {
    fn with_parts(zero: S, one: S, chi_mul: ChiMul<S>, rank: RankFn<S>) -> Self {
        let unit = Level {
            basis: vec![Word::empty()],
            index: HashMap::from([(Word::empty(), 0)]),
            coords: vec![vec![one]],
        };
        NicholsTables {
            zero,
            chi_mul,
            rank,
            levels: HashMap::from([(MultiDegree::default(), unit)]),
        }
    }

    /// dim B(V)_d, computing every lower multidegree on the way.
    pub fn dim(&mut self, d: MultiDegree) -> usize {
        let mut by_total: BTreeMap<u32, Vec<MultiDegree>> = BTreeMap::new();
        for a in 0..=d.a {
            for b in 0..=d.b {
                by_total.entry(a + b).or_default().push(MultiDegree::new(a, b));
            }
        }
        for ds in by_total.into_values() {
            self.fill(&ds);
        }
        self.levels[&d].dim()
    }

    /// All multidegrees of total degree at most `max_total`.
    pub fn fill_total(&mut self, max_total: u32) {
        for n in 1..=max_total {
            let ds: Vec<_> = (0..=n).map(|a| MultiDegree::new(a, n - a)).collect();
            self.fill(&ds);
        }
    }

    pub fn known_dim(&self, d: MultiDegree) -> Option<usize> {
        self.levels.get(&d).map(Level::dim)
    }

    /// The monomial basis chosen for B(V)_d, once computed.
    pub fn basis(&self, d: MultiDegree) -> Option<&[Word]> {
        self.levels.get(&d).map(|l| l.basis.as_slice())
    }

    fn fill(&mut self, ds: &[MultiDegree]) {
        let todo: Vec<MultiDegree> = ds
            .iter()
            .copied()
            .filter(|d| !self.levels.contains_key(d))
            .collect();
        let built: Vec<(MultiDegree, Level<S>)> =
            todo.par_iter().map(|&d| (d, self.build(d))).collect();
        self.levels.extend(built);
    }

    /// Derivative coordinates of a word of degree d: the block for ∂_1
    /// followed by the block for ∂_2.
    fn full_coords(&self, w: &Word, d: MultiDegree, widths: [usize; 2]) -> Vec<S> {
        let mut out = vec![self.zero.clone(); widths[0] + widths[1]];
        for (i, offset) in [(1u8, 0usize), (2u8, widths[0])] {
            let e = if i == 1 { MultiDegree::E1 } else { MultiDegree::E2 };
            let Some(lower) = d.checked_sub(e) else {
                continue;
            };
            let level = &self.levels[&lower];
            let mut prefix = MultiDegree::default();
            for (k, &l) in w.letters().iter().enumerate() {
                if l == i {
                    let row = &level.coords[level.index[&w.without(k)]];
                    for (slot, x) in out[offset..].iter_mut().zip(row) {
                        if !x.vanishes() {
                            *slot = slot.add(&(self.chi_mul)(x, i, prefix));
                        }
                    }
                }
                prefix = prefix + if l == 1 { MultiDegree::E1 } else { MultiDegree::E2 };
            }
        }
        out
    }

    fn build(&self, d: MultiDegree) -> Level<S> {
        let width = |e: MultiDegree| d.checked_sub(e).map_or(0, |lower| self.levels[&lower].dim());
        let widths = [width(MultiDegree::E1), width(MultiDegree::E2)];
        let mut candidates: Vec<Word> = Vec::new();
        for (j, e) in [(1u8, MultiDegree::E1), (2u8, MultiDegree::E2)] {
            if let Some(lower) = d.checked_sub(e) {
                candidates.extend(
                    self.levels[&lower]
                        .basis
                        .iter()
                        .map(|u| u.concat(&Word::letter(j))),
                );
            }
        }
        candidates.sort();
        let rows: Vec<Vec<S>> = candidates
            .iter()
            .map(|w| self.full_coords(w, d, widths))
            .collect();
        let ech = (self.rank)(&rows);
        let mut pivot_rows = ech.pivot_rows.clone();
        pivot_rows.sort_unstable();
        let basis: Vec<Word> = pivot_rows.iter().map(|&r| candidates[r].clone()).collect();
        let mut cols = ech.pivot_cols.clone();
        cols.sort_unstable();
        let words = Word::all_of_degree(d);
        let coords: Vec<Vec<S>> = if basis.is_empty() {
            vec![Vec::new(); words.len()]
        } else {
            words
                .par_iter()
                .map(|w| {
                    let full = self.full_coords(w, d, widths);
                    cols.iter().map(|&c| full[c].clone()).collect()
                })
                .collect()
        };
        let index = words.into_iter().enumerate().map(|(k, w)| (w, k)).collect();
        Level {
            basis,
            index,
            coords,
        }
    }
}

/// dim B(V)_d: the rank of the pairing matrix on words of multidegree d.
pub fn nichols_dim(br: &Arc<DiagonalBraiding>, d: MultiDegree) -> usize {
    NicholsTables::exact(br).dim(d)
}

/// Graded dimensions of B(V) up to a total degree.
#[derive(Clone, Debug, Serialize)]
pub struct HilbertReport {
    pub braiding: DiagonalBraiding,
    pub max_total: u32,
    pub by_multidegree: Vec<[u64; 3]>,
    pub by_total: Vec<u64>,
    /// True when the top computed degree is still nonzero, so higher degrees
    /// may be nonzero as well.
    pub truncated: bool,
    pub precision: Precision,
}

impl HilbertReport {
    pub fn total_dimension(&self) -> u64 {
        self.by_total.iter().sum()
    }

    /// Largest total degree with a nonzero component.
    pub fn top_degree(&self) -> Option<u32> {
        self.by_total.iter().rposition(|&x| x > 0).map(|k| k as u32)
    }
}

pub fn hilbert_series(br: &Arc<DiagonalBraiding>, max_total: u32) -> Result<Vec<u64>, TensorError> {
    hilbert_report(br, max_total, DEFAULT_HILBERT_CUTOFF, Precision::Exact).map(|r| r.by_total)
}

fn collect_dims<S: Scalar>(mut tables: NicholsTables<S>, max_total: u32) -> impl Fn(MultiDegree) -> u64 {
    tables.fill_total(max_total);
    move |d| tables.known_dim(d).expect("filled") as u64
}

/// Graded dimensions up to `max_total`. Modular precision falls back to
/// exact arithmetic when the entries are not roots of unity.
pub fn hilbert_report(
    br: &Arc<DiagonalBraiding>,
    max_total: u32,
    cutoff: u32,
    precision: Precision,
) -> Result<HilbertReport, TensorError> {
    if max_total > cutoff {
        return Err(TensorError::CutoffExceeded {
            requested: max_total,
            cutoff,
        });
    }
    let (dim, precision): (Box<dyn Fn(MultiDegree) -> u64>, Precision) =
        match (precision, NicholsTables::modular(br)) {
            (Precision::Modular, Some(t)) => (Box::new(collect_dims(t, max_total)), Precision::Modular),
            _ => (
                Box::new(collect_dims(NicholsTables::exact(br), max_total)),
                Precision::Exact,
            ),
        };
    let mut by_multidegree = Vec::new();
    let mut by_total = Vec::new();
    for n in 0..=max_total {
        let mut sum = 0u64;
        for a in (0..=n).rev() {
            let d = MultiDegree::new(a, n - a);
            let k = dim(d);
            by_multidegree.push([d.a as u64, d.b as u64, k]);
            sum += k;
        }
        by_total.push(sum);
    }
    let truncated = by_total.last().is_some_and(|&x| x > 0);
    Ok(HilbertReport {
        braiding: (**br).clone(),
        max_total,
        by_multidegree,
        by_total,
        truncated,
        precision,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: i64, n: u32) -> CyclotomicNumber {
        CyclotomicNumber::root(k, n)
    }

    fn br(q11: CyclotomicNumber, q12: CyclotomicNumber, q21: CyclotomicNumber, q22: CyclotomicNumber) -> Arc<DiagonalBraiding> {
        Arc::new(DiagonalBraiding::new(q11, q12, q21, q22).unwrap())
    }

    #[test]
    fn words_in_lex_order() {
        let ws = Word::all_of_degree(MultiDegree::new(2, 1));
        let shown: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, ["x1x1x2", "x1x2x1", "x2x1x1"]);
        assert_eq!(Word::new(vec![1, 3]), Err(TensorError::BadLetter(3)));
    }

    #[test]
    fn derivation_of_x21() {
        let b = br(z(1, 5), z(2, 7), z(1, 3), z(1, 4));
        let x1 = TensorElement::generator(&b, 1);
        let x2 = TensorElement::generator(&b, 2);
        let x21 = &(&x1 * &x2) - &(&x2 * &x1).scale(b.q12());
        let d2 = derive(2, &x21);
        let expected = x1.scale(&(&b.q21().inverse().unwrap() - b.q12()));
        assert_eq!(d2, expected);
        assert!(derive(1, &x21).is_zero());
        assert!(derive(1, &x2).is_zero());
    }

    #[test]
    fn derivation_of_powers() {
        let b = br(z(1, 7), z(2, 7), z(1, 3), z(1, 4));
        let x1 = TensorElement::generator(&b, 1);
        let mut p = TensorElement::one(&b);
        for _ in 0..4 {
            p = &p * &x1;
        }
        let d = derive(1, &p);
        let qinv = b.q11().inverse().unwrap();
        let s = crate::qcomb::q_int(4, &qinv);
        let mut p3 = TensorElement::one(&b);
        for _ in 0..3 {
            p3 = &p3 * &x1;
        }
        assert_eq!(d, p3.scale(&s));
    }

    #[test]
    fn group_action() {
        let b = br(z(1, 5), z(2, 7), z(1, 3), z(1, 4));
        let x1 = TensorElement::generator(&b, 1);
        let x2 = TensorElement::generator(&b, 2);
        assert_eq!(group_act(GroupDegree(1, 0), &x2), x2.scale(b.q12()));
        assert_eq!(
            group_act(GroupDegree(0, -1), &x1),
            x1.scale(&b.q21().inverse().unwrap())
        );
        assert_eq!(
            group_act(GroupDegree(1, 0), &(&x1 * &x2)),
            (&x1 * &x2).scale(&(b.q11() * b.q12()))
        );
    }

    #[test]
    fn braiding_mismatch() {
        let b1 = br(z(1, 5), z(2, 7), z(1, 3), z(1, 4));
        let b2 = br(z(2, 5), z(2, 7), z(1, 3), z(1, 4));
        let x = TensorElement::generator(&b1, 1);
        let y = TensorElement::generator(&b2, 1);
        assert_eq!(x.multiply(&y), Err(TensorError::BraidingMismatch));
    }

    #[test]
    fn nichols_zero_tests() {
        // q12 q21 = 1 kills x21
        let b = br(z(1, 5), z(2, 7), z(-2, 7), z(1, 4));
        let x1 = TensorElement::generator(&b, 1);
        let x2 = TensorElement::generator(&b, 2);
        let x21 = &(&x1 * &x2) - &(&x2 * &x1).scale(b.q12());
        assert_eq!(is_zero_in_nichols(&x21), Ok(true));
        let g = br(z(1, 7), z(2, 7), z(3, 7), z(5, 7));
        let x1 = TensorElement::generator(&g, 1);
        let x2 = TensorElement::generator(&g, 2);
        assert_eq!(is_zero_in_nichols(&(&x1 * &x2)), Ok(false));
        assert!(matches!(
            is_zero_in_nichols(&(&x1 + &(&x1 * &x2))),
            Err(TensorError::NotHomogeneous(_))
        ));
    }

    #[test]
    fn small_dimensions() {
        let b = br(z(1, 3), z(2, 7), z(1, 3), z(1, 4));
        assert_eq!(nichols_dim(&b, MultiDegree::new(1, 0)), 1);
        assert_eq!(nichols_dim(&b, MultiDegree::new(3, 0)), 0);
        let b = br(z(1, 3), z(2, 7), z(-2, 7), z(1, 4));
        assert_eq!(nichols_dim(&b, MultiDegree::new(1, 1)), 1);
    }

    #[test]
    fn exterior_algebra_series() {
        let b = br(z(1, 2), z(0, 1), z(0, 1), z(1, 2));
        assert_eq!(hilbert_series(&b, 4).unwrap(), vec![1, 2, 1, 0, 0]);
        assert_eq!(
            hilbert_series(&b, 13),
            Err(TensorError::CutoffExceeded {
                requested: 13,
                cutoff: 12
            })
        );
    }
}
