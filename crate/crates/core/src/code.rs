//! Linear codes over `G_π`.
//!
//! A [`LinearCode`] keeps its generator rows exactly as supplied (after dropping dependent
//! rows), so encoding matches the user's matrix, plus a reduced row-echelon basis used for
//! membership tests and null spaces. Internally every vector is a list of field labels
//! (see [`crate::field`]); the public surface speaks [`GaussInt`].
//!
//! Minimum distances come from exhaustive enumeration of the message space, split into
//! index ranges across a rayon pool. When `p^k` exceeds the enumeration cap,
//! [`LinearCode::distance`] falls back to a low-weight search that enumerates vectors in
//! increasing weight and tests them against the parity-check matrix; that yields the exact
//! distance if a codeword turns up within budget and a certified lower bound otherwise.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::Polynomial;
use crate::GaussInt;

/// Default enumeration cap for distance searches.
pub const DEFAULT_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Mannheim,
    Hamming,
}

impl Metric {
    fn slot(self) -> usize {
        match self {
            Metric::Mannheim => 0,
            Metric::Hamming => 1,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Mannheim => "mannheim",
            Metric::Hamming => "hamming",
        })
    }
}

/// Quotient modulus `x^n - 1` or `x^n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Modulus {
    #[serde(rename = "-1")]
    MinusOne,
    #[serde(rename = "+1")]
    PlusOne,
}

impl Modulus {
    pub fn constant(self) -> GaussInt {
        match self {
            Modulus::MinusOne => -GaussInt::one(),
            Modulus::PlusOne => GaussInt::one(),
        }
    }

    pub fn polynomial(self, field: &Arc<PrimeField>, n: usize) -> Polynomial {
        Polynomial::x_pow_plus(field, n, self.constant())
    }

    pub fn describe(self, n: usize) -> String {
        match self {
            Modulus::MinusOne => format!("x^{n}-1"),
            Modulus::PlusOne => format!("x^{n}+1"),
        }
    }
}

/// A minimum distance that is either known exactly or only bounded from below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distance {
    Exact(u32),
    AtLeast(u32),
}

impl Distance {
    pub fn value(self) -> u32 {
        match self {
            Distance::Exact(d) | Distance::AtLeast(d) => d,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Distance::Exact(_))
    }

    /// Minimum of two distances; the result is exact only if the smaller side is exact
    /// and no lower bound could undercut it.
    pub fn min(self, other: Distance) -> Distance {
        use Distance::*;
        match (self, other) {
            (Exact(a), Exact(b)) => Exact(a.min(b)),
            (Exact(a), AtLeast(b)) | (AtLeast(b), Exact(a)) if a <= b => Exact(a),
            (a, b) => AtLeast(a.value().min(b.value())),
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(d) => write!(f, "{d}"),
            Distance::AtLeast(d) => write!(f, ">={d}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of vectors any single search may visit.
    pub cap: u64,
    /// Worker threads; `1` runs serially on the calling thread.
    pub workers: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl SearchOptions {
    pub fn serial(cap: u64) -> Self {
        Self { cap, workers: 1 }
    }

    pub fn with_workers(cap: u64, workers: usize) -> Self {
        Self { cap, workers: workers.max(1) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodeResult {
    pub codeword: Vec<GaussInt>,
    pub error: Vec<GaussInt>,
    pub metric: Metric,
    pub weight: u32,
}

/// Polynomial provenance of a code: rows are `x^i·g(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyOrigin {
    pub generator: Polynomial,
    pub modulus: Modulus,
}

/// Row-reduced basis over `F_p` labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Echelon {
    pub rows: Vec<Vec<u32>>,
    pub pivots: Vec<usize>,
    /// Indices of the input rows that were linearly independent of their predecessors.
    pub kept: Vec<usize>,
}

impl Echelon {
    pub fn new(field: &PrimeField, rows: &[Vec<u32>], n: usize) -> Self {
        let mut basis: Vec<(usize, Vec<u32>)> = Vec::new();
        let mut kept = Vec::new();
        for (idx, row) in rows.iter().enumerate() {
            let mut r = row.clone();
            for (pc, b) in &basis {
                let c = r[*pc];
                if c != 0 {
                    axpy(field, &mut r, field.fp_neg(c), b);
                }
            }
            let Some(pc) = r.iter().position(|&x| x != 0) else {
                continue;
            };
            let inv = field.fp_inv(r[pc]).expect("nonzero pivot");
            r.iter_mut().for_each(|x| *x = field.fp_mul(*x, inv));
            for (_, b) in basis.iter_mut() {
                let c = b[pc];
                if c != 0 {
                    axpy(field, b, field.fp_neg(c), &r);
                }
            }
            basis.push((pc, r));
            kept.push(idx);
        }
        basis.sort_by_key(|(pc, _)| *pc);
        debug_assert!(basis.iter().all(|(_, r)| r.len() == n));
        Self {
            pivots: basis.iter().map(|(pc, _)| *pc).collect(),
            rows: basis.into_iter().map(|(_, r)| r).collect(),
            kept,
        }
    }

    /// Reduces `v` against the basis; zero iff `v` lies in the row space.
    pub fn residual(&self, field: &PrimeField, v: &[u32]) -> Vec<u32> {
        let mut r = v.to_vec();
        for (pc, row) in self.pivots.iter().zip(&self.rows) {
            let c = r[*pc];
            if c != 0 {
                axpy(field, &mut r, field.fp_neg(c), row);
            }
        }
        r
    }

    pub fn contains(&self, field: &PrimeField, v: &[u32]) -> bool {
        self.residual(field, v).iter().all(|&x| x == 0)
    }

    /// Basis of `{v : Σ row_i·v_i = 0 for every row}`.
    pub fn null_space(&self, field: &PrimeField, n: usize) -> Vec<Vec<u32>> {
        let mut is_pivot = vec![false; n];
        self.pivots.iter().for_each(|&c| is_pivot[c] = true);
        (0..n)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; n];
                v[free] = 1;
                for (pc, row) in self.pivots.iter().zip(&self.rows) {
                    v[*pc] = field.fp_neg(row[free]);
                }
                v
            })
            .collect()
    }
}

/// `y += a·x`
pub(crate) fn axpy(field: &PrimeField, y: &mut [u32], a: u32, x: &[u32]) {
    if a == 0 {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = field.fp_add(*yi, field.fp_mul(a, xi));
    }
}

pub(crate) fn dot(field: &PrimeField, a: &[u32], b: &[u32]) -> u32 {
    let p = field.p() as u64;
    (a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64 % p).sum::<u64>() % p) as u32
}

pub(crate) fn weight_of(field: &PrimeField, v: &[u32], metric: Metric) -> u32 {
    match metric {
        Metric::Mannheim => v.iter().map(|&x| field.label_weight(x)).sum(),
        Metric::Hamming => v.iter().filter(|&&x| x != 0).count() as u32,
    }
}

/// `p^k`, or `None` if it overflows `u128`.
pub(crate) fn span_size(p: u32, k: usize) -> Option<u128> {
    (p as u128).checked_pow(k as u32)
}

/// Walks the span of `rows` in message-index order, `index = Σ digit_j·p^j`, updating the
/// current word with one row addition per digit that changes.
pub(crate) struct SpanWalker<'a> {
    field: &'a PrimeField,
    rows: &'a [Vec<u32>],
    digits: Vec<u32>,
    word: Vec<u32>,
}

impl<'a> SpanWalker<'a> {
    pub fn new(field: &'a PrimeField, rows: &'a [Vec<u32>], n: usize, start: u128) -> Self {
        let p = field.p() as u128;
        let mut rest = start;
        let mut digits = vec![0u32; rows.len()];
        let mut word = vec![0u32; n];
        for (d, row) in digits.iter_mut().zip(rows) {
            *d = (rest % p) as u32;
            rest /= p;
            axpy(field, &mut word, *d, row);
        }
        Self { field, rows, digits, word }
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn advance(&mut self) {
        let p = self.field.p();
        for j in 0..self.digits.len() {
            // A digit wrapping from p-1 to 0 changes the word by -(p-1)·row = +row, and an
            // increment changes it by +row as well.
            axpy(self.field, &mut self.word, 1, &self.rows[j]);
            self.digits[j] += 1;
            if self.digits[j] < p {
                return;
            }
            self.digits[j] = 0;
        }
    }
}

/// Unique minimal pattern with its weight, or the tied patterns (empty if none) with theirs.
pub(crate) type LabelDecode = std::result::Result<(Vec<u32>, u32), (Vec<Vec<u32>>, u32)>;

/// Runs `visit` over every message index in `range`, split across `workers`, and folds the
/// per-chunk results with `combine`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn par_span_fold<T, V, C>(
    field: &PrimeField,
    rows: &[Vec<u32>],
    n: usize,
    range: std::ops::Range<u128>,
    workers: usize,
    identity: T,
    visit: V,
    combine: C,
) -> Result<T>
where
    T: Send + Sync + Clone,
    V: Fn(&mut T, &[u32]) + Send + Sync,
    C: Fn(T, T) -> T + Send + Sync,
{
    let run = |lo: u128, hi: u128| {
        let mut acc = identity.clone();
        if lo >= hi {
            return acc;
        }
        let mut walker = SpanWalker::new(field, rows, n, lo);
        let mut idx = lo;
        loop {
            visit(&mut acc, walker.word());
            idx += 1;
            if idx >= hi {
                break;
            }
            walker.advance();
        }
        acc
    };
    let total = range.end.saturating_sub(range.start);
    if workers <= 1 || total < 4096 {
        return Ok(run(range.start, range.end));
    }
    let chunks = (workers as u128 * 16).min(total);
    let step = total.div_ceil(chunks);
    let bounds: Vec<(u128, u128)> = (0..chunks)
        .map(|c| (range.start + c * step, (range.start + (c + 1) * step).min(range.end)))
        .filter(|(lo, hi)| lo < hi)
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InternalInvariant(format!("thread pool: {e}")))?;
    Ok(pool.install(|| {
        bounds
            .par_iter()
            .map(|&(lo, hi)| run(lo, hi))
            .reduce(|| identity.clone(), &combine)
    }))
}

/// Per-coordinate values grouped by Mannheim weight: `classes[w]` lists the labels of weight `w`.
pub(crate) fn weight_classes(field: &PrimeField, metric: Metric) -> Vec<Vec<u32>> {
    match metric {
        Metric::Hamming => vec![vec![0], (1..field.p()).collect()],
        Metric::Mannheim => {
            let max = field.weights().iter().copied().max().unwrap_or(0) as usize;
            let mut classes = vec![Vec::new(); max + 1];
            for label in 0..field.p() {
                classes[field.label_weight(label) as usize].push(label);
            }
            classes
        }
    }
}

/// Enumerates all length-`n` vectors of metric weight exactly `w`, tracking `H·v` for the
/// given parity rows. `visit` receives the vector and its syndrome.
pub(crate) fn walk_weight<F>(
    field: &PrimeField,
    classes: &[Vec<u32>],
    parity: &[Vec<u32>],
    n: usize,
    w: u32,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[u32], &[u32]) -> ControlFlow<()>,
{
    struct Ctx<'a, F> {
        field: &'a PrimeField,
        classes: &'a [Vec<u32>],
        parity: &'a [Vec<u32>],
        n: usize,
        max_w: u32,
        vec: Vec<u32>,
        syn: Vec<u32>,
        visit: &'a mut F,
    }
    fn rec<F>(ctx: &mut Ctx<'_, F>, pos: usize, remaining: u32) -> ControlFlow<()>
    where
        F: FnMut(&[u32], &[u32]) -> ControlFlow<()>,
    {
        if remaining == 0 {
            return (ctx.visit)(&ctx.vec, &ctx.syn);
        }
        if pos == ctx.n || remaining > ctx.max_w * (ctx.n - pos) as u32 {
            return ControlFlow::Continue(());
        }
        for cw in (1..=remaining.min(ctx.max_w)).rev() {
            for li in 0..ctx.classes[cw as usize].len() {
                let label = ctx.classes[cw as usize][li];
                ctx.vec[pos] = label;
                for (s, row) in ctx.syn.iter_mut().zip(ctx.parity) {
                    *s = ctx.field.fp_add(*s, ctx.field.fp_mul(label, row[pos]));
                }
                let flow = rec(ctx, pos + 1, remaining - cw);
                for (s, row) in ctx.syn.iter_mut().zip(ctx.parity) {
                    *s = ctx.field.fp_sub(*s, ctx.field.fp_mul(label, row[pos]));
                }
                ctx.vec[pos] = 0;
                flow?;
            }
        }
        rec(ctx, pos + 1, remaining)
    }
    let mut ctx = Ctx {
        field,
        classes,
        parity,
        n,
        max_w: (classes.len() - 1) as u32,
        vec: vec![0; n],
        syn: vec![0; parity.len()],
        visit,
    };
    rec(&mut ctx, 0, w)
}

/// Number of vectors of metric weight exactly `w` with `n` coordinates (saturating).
pub(crate) fn count_weight(classes: &[Vec<u32>], n: usize, w: u32) -> u128 {
    let w = w as usize;
    let mut ways = vec![0u128; w + 1];
    ways[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u128; w + 1];
        for (acc, &count) in ways.iter().enumerate() {
            if count == 0 {
                continue;
            }
            for (cw, class) in classes.iter().enumerate() {
                if acc + cw <= w {
                    next[acc + cw] = next[acc + cw].saturating_add(count.saturating_mul(class.len() as u128));
                }
            }
        }
        ways = next;
    }
    ways[w]
}

#[derive(Clone)]
pub struct LinearCode {
    field: Arc<PrimeField>,
    n: usize,
    gen: Vec<Vec<u32>>,
    echelon: Echelon,
    origin: Option<PolyOrigin>,
    parity: OnceLock<Vec<Vec<u32>>>,
    distances: [OnceLock<u32>; 2],
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode[n={}, k={}, π={}]", self.n, self.k(), self.field.pi())
    }
}

impl LinearCode {
    fn from_label_rows(field: &Arc<PrimeField>, n: usize, rows: Vec<Vec<u32>>, origin: Option<PolyOrigin>) -> Self {
        let echelon = Echelon::new(field, &rows, n);
        let gen = echelon.kept.iter().map(|&i| rows[i].clone()).collect();
        Self {
            field: field.clone(),
            n,
            gen,
            echelon,
            origin,
            parity: OnceLock::new(),
            distances: [OnceLock::new(), OnceLock::new()],
        }
    }

    pub(crate) fn from_labels(field: &Arc<PrimeField>, n: usize, rows: Vec<Vec<u32>>) -> Self {
        Self::from_label_rows(field, n, rows, None)
    }

    /// Code generated by the rows `x^i·g(x)`, `i = 0..n-deg g`. `g` is normalised to monic
    /// and must divide the selected modulus.
    pub fn from_generator_poly(g: &Polynomial, n: usize, modulus: Modulus) -> Result<Self> {
        let field = g.field();
        let deg = g.degree().ok_or(Error::ZeroCode)?;
        if deg >= n {
            return Err(Error::LengthMismatch { expected: n, got: deg + 1 });
        }
        let g = g.monic()?;
        if !g.divides(&modulus.polynomial(field, n))? {
            return Err(Error::NotADivisor { modulus: modulus.describe(n) });
        }
        let coeffs: Vec<u32> = g.coeffs().iter().map(|&c| field.label(c)).collect();
        let rows = (0..n - deg)
            .map(|shift| {
                let mut row = vec![0u32; n];
                row[shift..shift + coeffs.len()].copy_from_slice(&coeffs);
                row
            })
            .collect();
        Ok(Self::from_label_rows(field, n, rows, Some(PolyOrigin { generator: g, modulus })))
    }

    /// Row space of `rows`; dependent rows are dropped, the remaining ones kept verbatim.
    pub fn from_generator_matrix(field: &Arc<PrimeField>, rows: &[Vec<GaussInt>]) -> Result<Self> {
        let n = rows.first().map(Vec::len).ok_or(Error::ZeroCode)?;
        let mut labels = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != n {
                return Err(Error::LengthMismatch { expected: n, got: row.len() });
            }
            labels.push(row.iter().map(|&c| field.label(c)).collect());
        }
        let code = Self::from_label_rows(field, n, labels, None);
        if code.k() == 0 {
            return Err(Error::ZeroCode);
        }
        Ok(code)
    }

    pub fn zero(field: &Arc<PrimeField>, n: usize) -> Self {
        Self::from_label_rows(field, n, Vec::new(), None)
    }

    pub fn full(field: &Arc<PrimeField>, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect();
        Self::from_label_rows(field, n, rows, None)
    }

    pub fn field(&self) -> &Arc<PrimeField> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.gen.len()
    }

    pub fn origin(&self) -> Option<&PolyOrigin> {
        self.origin.as_ref()
    }

    pub fn generator_matrix(&self) -> Vec<Vec<GaussInt>> {
        self.to_gauss_rows(&self.gen)
    }

    /// Generator matrix of the dual code; `G·Hᵀ = 0`.
    pub fn parity_check_matrix(&self) -> Vec<Vec<GaussInt>> {
        self.to_gauss_rows(self.parity_labels())
    }

    fn to_gauss_rows(&self, rows: &[Vec<u32>]) -> Vec<Vec<GaussInt>> {
        rows.iter().map(|r| self.to_gauss(r)).collect()
    }

    pub(crate) fn to_gauss(&self, v: &[u32]) -> Vec<GaussInt> {
        v.iter().map(|&l| self.field.residue(l)).collect()
    }

    pub(crate) fn to_labels(&self, v: &[GaussInt]) -> Result<Vec<u32>> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: v.len() });
        }
        Ok(v.iter().map(|&c| self.field.label(c)).collect())
    }

    pub(crate) fn gen_labels(&self) -> &[Vec<u32>] {
        &self.gen
    }

    pub(crate) fn parity_labels(&self) -> &[Vec<u32>] {
        self.parity.get_or_init(|| self.echelon.null_space(&self.field, self.n))
    }

    /// `{v : Σ u_i·v_i = 0 for all u ∈ C}` (plain bilinear form, no conjugation).
    pub fn dual(&self) -> LinearCode {
        Self::from_label_rows(&self.field, self.n, self.parity_labels().to_vec(), None)
    }

    pub(crate) fn contains_labels(&self, v: &[u32]) -> bool {
        self.echelon.contains(&self.field, v)
    }

    pub fn contains(&self, v: &[GaussInt]) -> Result<bool> {
        Ok(self.contains_labels(&self.to_labels(v)?))
    }

    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.field.same_field(&other.field) && self.n == other.n && self.echelon.rows == other.echelon.rows
    }

    /// True iff every generator row of `self` lies in `c1`.
    pub fn is_subcode_of(&self, c1: &LinearCode) -> Result<bool> {
        if !self.field.same_field(&c1.field) {
            return Err(Error::FieldMismatch);
        }
        if self.n != c1.n {
            return Err(Error::LengthMismatch { expected: c1.n, got: self.n });
        }
        Ok(self.gen.iter().all(|row| c1.contains_labels(row)))
    }

    /// `msg · G` over `G_π`.
    pub fn encode(&self, msg: &[GaussInt]) -> Result<Vec<GaussInt>> {
        if msg.len() != self.k() {
            return Err(Error::LengthMismatch { expected: self.k(), got: msg.len() });
        }
        Ok(self.to_gauss(&self.encode_labels(msg.iter().map(|&m| self.field.label(m)))))
    }

    pub(crate) fn encode_labels(&self, msg: impl IntoIterator<Item = u32>) -> Vec<u32> {
        let mut word = vec![0; self.n];
        for (m, row) in msg.into_iter().zip(&self.gen) {
            axpy(&self.field, &mut word, m, row);
        }
        word
    }

    /// `H·v` with `H` the parity-check matrix.
    pub fn syndrome(&self, v: &[GaussInt]) -> Result<Vec<GaussInt>> {
        let v = self.to_labels(v)?;
        Ok(self.syndrome_labels(&v).into_iter().map(|l| self.field.residue(l)).collect())
    }

    pub(crate) fn syndrome_labels(&self, v: &[u32]) -> Vec<u32> {
        self.parity_labels().iter().map(|h| dot(&self.field, h, v)).collect()
    }

    /// Number of codewords `p^k`, `None` if it overflows.
    pub fn size(&self) -> Option<u128> {
        span_size(self.field.p(), self.k())
    }

    /// All codewords in message-index order. Fails if there are more than `cap`.
    pub fn codewords(&self, cap: u64) -> Result<Vec<Vec<GaussInt>>> {
        let size = self.checked_size(cap)?;
        let mut out = Vec::with_capacity(size as usize);
        let mut walker = SpanWalker::new(&self.field, &self.gen, self.n, 0);
        for idx in 0..size {
            if idx > 0 {
                walker.advance();
            }
            out.push(self.to_gauss(walker.word()));
        }
        Ok(out)
    }

    fn checked_size(&self, cap: u64) -> Result<u128> {
        match self.size() {
            Some(s) if s <= cap as u128 => Ok(s),
            other => Err(Error::EnumerationTooLarge { size: other.unwrap_or(u128::MAX), cap }),
        }
    }

    pub fn weight(&self, v: &[GaussInt], metric: Metric) -> Result<u32> {
        Ok(weight_of(&self.field, &self.to_labels(v)?, metric))
    }

    /// Exact minimum weight over the `p^k - 1` nonzero codewords by exhaustive enumeration.
    pub fn min_distance(&self, metric: Metric, opts: &SearchOptions) -> Result<u32> {
        if let Some(&d) = self.distances[metric.slot()].get() {
            return Ok(d);
        }
        let (dm, dh) = self.min_distances(opts)?;
        Ok(match metric {
            Metric::Mannheim => dm,
            Metric::Hamming => dh,
        })
    }

    /// Both minimum distances `(d_M, d_H)` from a single enumeration pass.
    pub fn min_distances(&self, opts: &SearchOptions) -> Result<(u32, u32)> {
        if let (Some(&dm), Some(&dh)) = (self.distances[0].get(), self.distances[1].get()) {
            return Ok((dm, dh));
        }
        if self.k() == 0 {
            return Err(Error::ZeroCode);
        }
        let size = self.checked_size(opts.cap)?;
        let field = &*self.field;
        let (dm, dh) = par_span_fold(
            field,
            &self.gen,
            self.n,
            1..size,
            opts.workers,
            (u32::MAX, u32::MAX),
            |acc, word| {
                let mut wm = 0;
                let mut wh = 0;
                for &x in word {
                    wm += field.label_weight(x);
                    wh += (x != 0) as u32;
                }
                acc.0 = acc.0.min(wm);
                acc.1 = acc.1.min(wh);
            },
            |a, b| (a.0.min(b.0), a.1.min(b.1)),
        )?;
        let _ = self.distances[0].set(dm);
        let _ = self.distances[1].set(dh);
        Ok((dm, dh))
    }

    /// Exhaustive distance when `p^k ≤ cap`, otherwise a low-weight search with a budget of
    /// `cap` candidate vectors.
    pub fn distance(&self, metric: Metric, opts: &SearchOptions) -> Result<Distance> {
        if self.k() == 0 {
            return Err(Error::ZeroCode);
        }
        match self.min_distance(metric, opts) {
            Ok(d) => Ok(Distance::Exact(d)),
            Err(Error::EnumerationTooLarge { .. }) => Ok(self.low_weight_search(metric, opts.cap)),
            Err(e) => Err(e),
        }
    }

    /// Smallest weight `w` carrying a nonzero codeword, found by enumerating all vectors of
    /// weight `1, 2, …` until one has zero syndrome or the budget runs out.
    pub fn low_weight_search(&self, metric: Metric, budget: u64) -> Distance {
        let classes = weight_classes(&self.field, metric);
        let parity = self.parity_labels();
        let max_total = (classes.len() as u32 - 1) * self.n as u32;
        let mut spent: u128 = 0;
        for w in 1..=max_total {
            spent = spent.saturating_add(count_weight(&classes, self.n, w));
            if spent > budget as u128 {
                return Distance::AtLeast(w);
            }
            let flow = walk_weight(&self.field, &classes, parity, self.n, w, &mut |_, syn| {
                if syn.iter().all(|&s| s == 0) {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            if flow.is_break() {
                return Distance::Exact(w);
            }
        }
        // A nonzero code always has a codeword of weight ≤ max_total.
        Distance::AtLeast(max_total + 1)
    }

    /// Error patterns of minimal weight `≤ t` with syndrome `s`. Fails with `NoDecode` if
    /// none exists and `Ambiguous` (listing the tied patterns) if several tie.
    pub(crate) fn decode_syndrome_labels(&self, s: &[u32], metric: Metric, t: u32) -> LabelDecode {
        let classes = weight_classes(&self.field, metric);
        let parity = self.parity_labels();
        for w in 0..=t {
            let mut found: Vec<Vec<u32>> = Vec::new();
            let _ = walk_weight(&self.field, &classes, parity, self.n, w, &mut |v, syn| {
                if syn == s {
                    found.push(v.to_vec());
                }
                ControlFlow::Continue(())
            });
            match found.len() {
                0 => continue,
                1 => return Ok((found.pop().unwrap(), w)),
                _ => return Err((found, w)),
            }
        }
        Err((Vec::new(), t))
    }

    /// Minimal-weight error with the given syndrome, within weight `t`.
    pub fn decode_syndrome(&self, syndrome: &[GaussInt], metric: Metric, t: u32) -> Result<Vec<GaussInt>> {
        let expected = self.n - self.k();
        if syndrome.len() != expected {
            return Err(Error::LengthMismatch { expected, got: syndrome.len() });
        }
        let s: Vec<u32> = syndrome.iter().map(|&c| self.field.label(c)).collect();
        match self.decode_syndrome_labels(&s, metric, t) {
            Ok((e, _)) => Ok(self.to_gauss(&e)),
            Err((tied, _)) if tied.is_empty() => Err(Error::NoDecode { t }),
            Err((tied, weight)) => Err(Error::Ambiguous { weight, tied: self.to_gauss_rows(&tied) }),
        }
    }

    /// Bounded-distance decoding: the unique codeword at minimal metric distance `≤ t` from
    /// `received`. Ties are reported as `Ambiguous` with the tied codewords.
    pub fn decode_bounded(&self, received: &[GaussInt], metric: Metric, t: u32) -> Result<DecodeResult> {
        let r = self.to_labels(received)?;
        let s = self.syndrome_labels(&r);
        let codeword_of = |e: &[u32]| -> Vec<u32> { r.iter().zip(e).map(|(&a, &b)| self.field.fp_sub(a, b)).collect() };
        match self.decode_syndrome_labels(&s, metric, t) {
            Ok((e, weight)) => Ok(DecodeResult {
                codeword: self.to_gauss(&codeword_of(&e)),
                error: self.to_gauss(&e),
                metric,
                weight,
            }),
            Err((tied, _)) if tied.is_empty() => Err(Error::NoDecode { t }),
            Err((tied, weight)) => Err(Error::Ambiguous {
                weight,
                tied: tied.iter().map(|e| self.to_gauss(&codeword_of(e))).collect(),
            }),
        }
    }
}

/// `C2 ⊆ C1`.
pub fn is_subcode(c2: &LinearCode, c1: &LinearCode) -> Result<bool> {
    c2.is_subcode_of(c1)
}
