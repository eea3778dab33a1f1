//! CSS quantum codes from nested classical pairs `C2 ⊆ C1`, the symplectic formulation
//! over `G_π^{2n}`, error counting and the Singleton check.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::code::{par_span_fold, span_size, Distance, LinearCode, Metric, SearchOptions};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::GaussInt;

/// Enumeration cap for the symplectic distance search.
pub const SYMPLECTIC_CAP: u64 = 10_000_000;

/// Random draws used when the symplectic dual is too large to enumerate.
pub const SYMPLECTIC_SAMPLES: u64 = 20_000;

#[derive(Debug, Clone)]
pub struct CssCode {
    c1: LinearCode,
    c2: LinearCode,
    c2_dual: LinearCode,
    /// `d(C1)` and `d(C2⊥)` per metric; `None` when the code is `{0}`.
    components: [[Option<Distance>; 2]; 2],
}

fn component_distance(code: &LinearCode, metric: Metric, opts: &SearchOptions) -> Result<Option<Distance>> {
    if code.k() == 0 {
        return Ok(None);
    }
    code.distance(metric, opts).map(Some)
}

fn min_opt(a: Option<Distance>, b: Option<Distance>) -> Option<Distance> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

impl CssCode {
    /// Builds the CSS code of a nested pair. Distances above the cap fall back to the
    /// low-weight search and may come back as lower bounds.
    pub fn new(c1: LinearCode, c2: LinearCode, opts: &SearchOptions) -> Result<Self> {
        if !c2.is_subcode_of(&c1)? {
            return Err(Error::NotNested);
        }
        let c2_dual = c2.dual();
        let mut components = [[None; 2]; 2];
        for (slot, metric) in [Metric::Mannheim, Metric::Hamming].into_iter().enumerate() {
            components[0][slot] = component_distance(&c1, metric, opts)?;
            components[1][slot] = component_distance(&c2_dual, metric, opts)?;
        }
        Ok(Self { c1, c2, c2_dual, components })
    }

    pub fn c1(&self) -> &LinearCode {
        &self.c1
    }

    pub fn c2(&self) -> &LinearCode {
        &self.c2
    }

    pub fn c2_dual(&self) -> &LinearCode {
        &self.c2_dual
    }

    pub fn field(&self) -> &Arc<PrimeField> {
        self.c1.field()
    }

    pub fn n(&self) -> usize {
        self.c1.n()
    }

    /// Logical dimension exponent `k1 - k2`; the code space has dimension `p^K`.
    pub fn k(&self) -> usize {
        self.c1.k() - self.c2.k()
    }

    fn slot(metric: Metric) -> usize {
        match metric {
            Metric::Mannheim => 0,
            Metric::Hamming => 1,
        }
    }

    pub fn d_c1(&self, metric: Metric) -> Option<Distance> {
        self.components[0][Self::slot(metric)]
    }

    pub fn d_c2_dual(&self, metric: Metric) -> Option<Distance> {
        self.components[1][Self::slot(metric)]
    }

    /// `min{d(C1), d(C2⊥)}`.
    pub fn distance(&self, metric: Metric) -> Distance {
        min_opt(self.d_c1(metric), self.d_c2_dual(metric)).expect("a nonzero length code has C1 or C2⊥ nonzero")
    }

    /// Correctable radius for X errors (via `C1`) and Z errors (via `C2⊥`).
    pub fn radii(&self, metric: Metric) -> (u32, u32) {
        let t = |d: Option<Distance>| d.map_or(0, |d| d.value().saturating_sub(1) / 2);
        (t(self.d_c1(metric)), t(self.d_c2_dual(metric)))
    }

    pub fn error_count(&self, metric: Metric) -> ErrorCountReport {
        correctable_count(self.n(), self.distance(metric).value(), metric, self.field().p())
    }

    pub fn singleton(&self) -> SingletonCheck {
        check_singleton(self.n(), self.k(), self.distance(Metric::Hamming).value())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorCountReport {
    pub n: usize,
    pub d: u32,
    pub t: u32,
    pub metric: Metric,
    pub count: u128,
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, j| acc.saturating_mul(n - j) / (j + 1))
}

/// `Σ_{j=1..t} m^j·C(n, j)` with `t = ⌊(d-1)/2⌋`, `m = 4` (Mannheim) or `p - 1` (Hamming).
pub fn correctable_count(n: usize, d: u32, metric: Metric, p: u32) -> ErrorCountReport {
    let t = d.saturating_sub(1) / 2;
    let m: u128 = match metric {
        Metric::Mannheim => 4,
        Metric::Hamming => p as u128 - 1,
    };
    let count = (1..=(t as u128).min(n as u128))
        .map(|j| m.saturating_pow(j as u32).saturating_mul(binomial(n as u128, j)))
        .fold(0u128, u128::saturating_add);
    ErrorCountReport { n, d, t, metric, count }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingletonCheck {
    pub attains: bool,
    /// `(n - 2d + 2) - K`
    pub slack: i64,
}

/// Quantum Singleton bound `K ≤ n - 2d + 2` for a Hamming distance `d`.
pub fn check_singleton(n: usize, k: usize, d_hamming: u32) -> SingletonCheck {
    let slack = n as i64 - 2 * d_hamming as i64 + 2 - k as i64;
    SingletonCheck { attains: slack == 0, slack }
}

fn split_pair(w: &[GaussInt]) -> Result<(&[GaussInt], &[GaussInt])> {
    if !w.len().is_multiple_of(2) {
        return Err(Error::LengthMismatch { expected: w.len() + 1, got: w.len() });
    }
    Ok(w.split_at(w.len() / 2))
}

/// `⌈Σ (|Re| + |Im|) / 2⌉` over all `2n` coordinates of `(u|v)`.
pub fn pair_weight(field: &PrimeField, w: &[GaussInt]) -> u32 {
    let total: u32 = w.iter().map(|&c| field.label_weight(field.label(c))).sum();
    total.div_ceil(2)
}

/// `(u|v) * (u'|v') = Σ (v_i·u'_i - v'_i·u_i)` in `G_π`.
pub fn star_product(field: &PrimeField, a: &[GaussInt], b: &[GaussInt]) -> Result<GaussInt> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { expected: a.len(), got: b.len() });
    }
    let (u, v) = split_pair(a)?;
    let (u2, v2) = split_pair(b)?;
    let mut acc = GaussInt::zero();
    for i in 0..u.len() {
        let term = field.sub(field.mul(v[i], u2[i]), field.mul(v2[i], u[i]));
        acc = field.add(acc, term);
    }
    Ok(acc)
}

/// A subspace of `G_π^{2n}` with vectors written `(u|v)`.
#[derive(Debug, Clone)]
pub struct SymplecticCode {
    code: LinearCode,
}

impl SymplecticCode {
    pub fn from_rows(field: &Arc<PrimeField>, n: usize, rows: &[Vec<GaussInt>]) -> Result<Self> {
        let mut labels = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != 2 * n {
                return Err(Error::LengthMismatch { expected: 2 * n, got: row.len() });
            }
            labels.push(row.iter().map(|&c| field.label(c)).collect());
        }
        Ok(Self { code: LinearCode::from_labels(field, 2 * n, labels) })
    }

    pub fn n(&self) -> usize {
        self.code.n() / 2
    }

    pub fn dim(&self) -> usize {
        self.code.k()
    }

    pub fn basis(&self) -> Vec<Vec<GaussInt>> {
        self.code.generator_matrix()
    }

    pub fn as_linear(&self) -> &LinearCode {
        &self.code
    }

    pub fn contains(&self, w: &[GaussInt]) -> Result<bool> {
        self.code.contains(w)
    }

    /// `{w : w * s = 0 for all s}`. A row `(u|v)` pairs with `(u'|v')` as
    /// `(v|-u)·(u'|v')`, so the dual is an ordinary null space.
    pub fn symplectic_dual(&self) -> SymplecticCode {
        let field = self.code.field();
        let n = self.n();
        let twisted: Vec<Vec<u32>> = self
            .code
            .gen_labels()
            .iter()
            .map(|r| r[n..].iter().copied().chain(r[..n].iter().map(|&x| field.fp_neg(x))).collect())
            .collect();
        let twisted = LinearCode::from_labels(field, 2 * n, twisted);
        Self { code: twisted.dual() }
    }

    /// `S ⊆ S^{⊥*}`.
    pub fn is_self_orthogonal(&self) -> bool {
        let dual = self.symplectic_dual();
        self.code.is_subcode_of(&dual.code).unwrap_or(false)
    }

    pub fn same_space(&self, other: &SymplecticCode) -> bool {
        self.code.same_code(&other.code)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SymplecticDistance {
    /// Minimum pair weight over `C^{⊥*} ∖ C`, by full enumeration.
    Exact { value: u32 },
    /// `C^{⊥*} = C`: there is nothing to minimise over.
    NoLogicalOperators,
    /// Enumeration over cap; minimum over random members of `C^{⊥*} ∖ C`. This bounds the
    /// true distance from above. `value` is `None` if no draw landed outside `C`.
    SampledUpperBound { value: Option<u32>, samples: u64 },
}

#[derive(Debug, Clone)]
pub struct SymplecticReport {
    pub code: SymplecticCode,
    pub dual: SymplecticCode,
    pub self_orthogonal: bool,
    /// `dim C^{⊥*} - dim C`, which is `2(k1 - k2)` for a CSS pair.
    pub k_symplectic: usize,
    /// `k1 - k2`.
    pub k_css: usize,
    pub distance: SymplecticDistance,
    /// `min{d_M(C1), d_M(C2⊥)}` for comparison.
    pub css_distance: Option<Distance>,
}

/// `C = (C2 | C1⊥)` with its symplectic dual and pair-weight distance.
pub fn build_symplectic(c1: &LinearCode, c2: &LinearCode, opts: &SearchOptions) -> Result<SymplecticReport> {
    if !c2.is_subcode_of(c1)? {
        return Err(Error::NotNested);
    }
    let field = c1.field();
    let n = c1.n();
    let c1_dual = c1.dual();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for r in c2.gen_labels() {
        rows.push(r.iter().copied().chain(std::iter::repeat_n(0, n)).collect());
    }
    for h in c1_dual.gen_labels() {
        rows.push(std::iter::repeat_n(0, n).chain(h.iter().copied()).collect());
    }
    let code = SymplecticCode { code: LinearCode::from_labels(field, 2 * n, rows) };
    let dual = code.symplectic_dual();
    let self_orthogonal = code.code.is_subcode_of(&dual.code)?;
    let distance = symplectic_distance(&code, &dual, opts)?;
    let css_distance = min_opt(
        component_distance(c1, Metric::Mannheim, opts)?,
        component_distance(&c2.dual(), Metric::Mannheim, opts)?,
    );
    Ok(SymplecticReport {
        k_symplectic: dual.dim() - code.dim(),
        k_css: c1.k() - c2.k(),
        code,
        dual,
        self_orthogonal,
        distance,
        css_distance,
    })
}

fn symplectic_distance(code: &SymplecticCode, dual: &SymplecticCode, opts: &SearchOptions) -> Result<SymplecticDistance> {
    if dual.dim() == code.dim() {
        return Ok(SymplecticDistance::NoLogicalOperators);
    }
    let field = dual.code.field();
    let rows = dual.code.gen_labels();
    let cap = opts.cap.min(SYMPLECTIC_CAP);
    let label_pair_weight = |w: &[u32]| w.iter().map(|&x| field.label_weight(x)).sum::<u32>().div_ceil(2);
    match span_size(field.p(), rows.len()) {
        Some(size) if size <= cap as u128 => {
            let best = par_span_fold(
                field,
                rows,
                2 * code.n(),
                1..size,
                opts.workers,
                u32::MAX,
                |best, word| {
                    let w = label_pair_weight(word);
                    if w < *best && !code.code.contains_labels(word) {
                        *best = w;
                    }
                },
                |a, b| a.min(b),
            )?;
            Ok(SymplecticDistance::Exact { value: best })
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            let p = field.p();
            let mut best: Option<u32> = None;
            for _ in 0..SYMPLECTIC_SAMPLES {
                let word = dual.code.encode_labels((0..rows.len()).map(|_| rng.gen_range(0..p)));
                if !code.code.contains_labels(&word) {
                    let w = label_pair_weight(&word);
                    best = Some(best.map_or(w, |b| b.min(w)));
                }
            }
            Ok(SymplecticDistance::SampledUpperBound { value: best, samples: SYMPLECTIC_SAMPLES })
        }
    }
}
