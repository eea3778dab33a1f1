//! `p`-level qudit state vectors over `G_π`.
//!
//! Basis states are indexed by label vectors, little-endian: `index = Σ label_j·p^j`. The
//! generalized Pauli operators act as `X(a)|u⟩ = |u + a⟩` and
//! `Z(b)|u⟩ = ξ^{label(b·u)}|u⟩` with `ξ = exp(2πi/p)`; the Hadamard gate has entries
//! `ξ^{st}/√p` on labels `s, t`.
//!
//! Syndrome extraction is simulated classically: the state is split by the syndrome of
//! each basis label, the most probable outcome is kept, and the state is renormalised.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex;
use num_traits::{Float, FloatConst};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{weight_of, LinearCode, Metric, SearchOptions};
use crate::css::CssCode;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::GaussInt;

/// Largest admissible number of amplitudes, `p^n`.
pub const STATE_CAP: u64 = 10_000_000;

/// Blocks smaller than this are transformed serially.
const PAR_THRESHOLD: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gate {
    /// Label shift by a residue: `|u⟩ → |u + a⟩`.
    X(GaussInt),
    /// Phase `ξ^{label(b·u)}`.
    Z(GaussInt),
    /// Shift on `F_p` labels directly: `|s⟩ → |s + g mod p⟩`.
    XPrime(u32),
    /// Phase `ξ^{h·s}` on `F_p` labels.
    ZPrime(u32),
    H,
    HInv,
}

fn root_powers<T: Float + FloatConst>(p: u32) -> Vec<Complex<T>> {
    let two_pi = T::PI() + T::PI();
    let pf = T::from(p).expect("p fits in float");
    (0..p)
        .map(|k| Complex::from_polar(T::one(), two_pi * T::from(k).expect("k fits in float") / pf))
        .collect()
}

/// `p×p` matrix with entries `ξ^{st}/√p`, rows and columns in label order.
pub fn hadamard_matrix<T: Float + FloatConst>(field: &PrimeField) -> Vec<Vec<Complex<T>>> {
    let p = field.p();
    let xi = root_powers::<T>(p);
    let scale = T::one() / T::from(p).expect("p fits in float").sqrt();
    (0..p)
        .map(|s| (0..p).map(|t| xi[(s as u64 * t as u64 % p as u64) as usize] * scale).collect())
        .collect()
}

#[derive(Debug, Clone)]
pub struct QuditState<T> {
    field: Arc<PrimeField>,
    n: usize,
    amps: Vec<Complex<T>>,
}

impl<T> QuditState<T>
where
    T: Float + FloatConst + Send + Sync,
{
    fn dimension(field: &PrimeField, n: usize) -> Result<usize> {
        let size = crate::code::span_size(field.p(), n).unwrap_or(u128::MAX);
        if size > STATE_CAP as u128 {
            return Err(Error::StateTooLarge { size, cap: STATE_CAP });
        }
        Ok(size as usize)
    }

    /// Basis state `|u⟩`.
    pub fn basis(field: &Arc<PrimeField>, u: &[GaussInt]) -> Result<Self> {
        let dim = Self::dimension(field, u.len())?;
        let mut amps = vec![Complex::new(T::zero(), T::zero()); dim];
        let labels: Vec<u32> = u.iter().map(|&c| field.label(c)).collect();
        amps[index_of(field.p(), &labels)] = Complex::new(T::one(), T::zero());
        Ok(Self { field: field.clone(), n: u.len(), amps })
    }

    pub fn from_amplitudes(field: &Arc<PrimeField>, n: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        if amps.len() != Self::dimension(field, n)? {
            return Err(Error::ShapeMismatch);
        }
        Ok(Self { field: field.clone(), n, amps })
    }

    pub fn field(&self) -> &Arc<PrimeField> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn amplitude(&self, u: &[GaussInt]) -> Result<Complex<T>> {
        if u.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: u.len() });
        }
        let labels: Vec<u32> = u.iter().map(|&c| self.field.label(c)).collect();
        Ok(self.amps[index_of(self.field.p(), &labels)])
    }

    pub fn norm(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr()).sqrt()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if !self.field.same_field(&other.field) || self.n != other.n {
            return Err(Error::ShapeMismatch);
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b))
    }

    /// `|⟨self|other⟩|²`
    pub fn fidelity(&self, other: &Self) -> Result<T> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Basis labels (as residues) with `|amplitude| > tol`, in index order.
    pub fn support(&self, tol: T) -> Vec<Vec<GaussInt>> {
        let p = self.field.p();
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > tol)
            .map(|(idx, _)| labels_of(p, self.n, idx).into_iter().map(|l| self.field.residue(l)).collect())
            .collect()
    }

    pub fn apply(&mut self, pos: usize, gate: Gate) -> Result<()> {
        if pos >= self.n {
            return Err(Error::IndexOutOfRange { index: pos, n: self.n });
        }
        let f = &*self.field;
        match gate {
            Gate::X(a) => self.shift(pos, f.label(a)),
            Gate::XPrime(g) => self.shift(pos, g % f.p()),
            Gate::Z(b) => self.phase(pos, f.label(b)),
            Gate::ZPrime(h) => self.phase(pos, h % f.p()),
            Gate::H => self.transform(pos, &hadamard_matrix(f)),
            Gate::HInv => {
                let h: Vec<Vec<Complex<T>>> = hadamard_matrix(f);
                let dagger = (0..h.len()).map(|s| (0..h.len()).map(|t| h[t][s].conj()).collect()).collect::<Vec<_>>();
                self.transform(pos, &dagger)
            }
        }
        Ok(())
    }

    pub fn apply_all(&mut self, gate: Gate) -> Result<()> {
        (0..self.n).try_for_each(|pos| self.apply(pos, gate))
    }

    /// Applies `gates[j]` to qudit `j`.
    pub fn apply_each(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        gates.into_iter().enumerate().try_for_each(|(pos, g)| self.apply(pos, g))
    }

    fn stride(&self, pos: usize) -> usize {
        (self.field.p() as usize).pow(pos as u32)
    }

    fn for_each_block<F>(&mut self, pos: usize, f: F)
    where
        F: Fn(&mut [Complex<T>], usize) + Send + Sync,
    {
        let stride = self.stride(pos);
        let block = stride * self.field.p() as usize;
        if self.amps.len() >= PAR_THRESHOLD {
            self.amps.par_chunks_mut(block).for_each(|chunk| f(chunk, stride));
        } else {
            self.amps.chunks_mut(block).for_each(|chunk| f(chunk, stride));
        }
    }

    fn shift(&mut self, pos: usize, by: u32) {
        if by == 0 {
            return;
        }
        let p = self.field.p() as usize;
        self.for_each_block(pos, |chunk, stride| {
            // Label s moves to s + by: rotating each fibre right by `by·stride`.
            for off in 0..stride {
                let mut fibre: Vec<Complex<T>> = (0..p).map(|s| chunk[off + s * stride]).collect();
                fibre.rotate_right(by as usize);
                for (s, a) in fibre.into_iter().enumerate() {
                    chunk[off + s * stride] = a;
                }
            }
        });
    }

    fn phase(&mut self, pos: usize, coeff: u32) {
        if coeff == 0 {
            return;
        }
        let p = self.field.p();
        let xi = root_powers::<T>(p);
        self.for_each_block(pos, |chunk, stride| {
            for (i, a) in chunk.iter_mut().enumerate() {
                let s = (i / stride) as u64;
                *a = *a * xi[(s * coeff as u64 % p as u64) as usize];
            }
        });
    }

    fn transform(&mut self, pos: usize, m: &[Vec<Complex<T>>]) {
        let p = self.field.p() as usize;
        self.for_each_block(pos, |chunk, stride| {
            let mut fibre = vec![Complex::new(T::zero(), T::zero()); p];
            for off in 0..stride {
                for (t, slot) in fibre.iter_mut().enumerate() {
                    *slot = chunk[off + t * stride];
                }
                for (s, row) in m.iter().enumerate() {
                    chunk[off + s * stride] =
                        row.iter().zip(&fibre).fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a * b);
                }
            }
        });
    }

    /// Splits the state by `syndrome(label vector)`, keeps the most probable outcome
    /// (smallest syndrome on ties) and renormalises. Returns the outcome and its probability.
    fn measure_by<F>(&mut self, syndrome: F) -> (Vec<u32>, T)
    where
        F: Fn(&[u32]) -> Vec<u32>,
    {
        let p = self.field.p();
        let mut probs: BTreeMap<Vec<u32>, T> = BTreeMap::new();
        let keys: Vec<Option<Vec<u32>>> = self
            .amps
            .iter()
            .enumerate()
            .map(|(idx, a)| {
                let w = a.norm_sqr();
                (w > T::zero()).then(|| {
                    let s = syndrome(&labels_of(p, self.n, idx));
                    let slot = probs.entry(s.clone()).or_insert_with(T::zero);
                    *slot = *slot + w;
                    s
                })
            })
            .collect();
        let (outcome, prob) = probs
            .into_iter()
            .fold(None::<(Vec<u32>, T)>, |best, (s, w)| match best {
                Some((bs, bw)) if bw >= w => Some((bs, bw)),
                _ => Some((s, w)),
            })
            .unwrap_or((Vec::new(), T::zero()));
        let scale = T::one() / prob.sqrt();
        for (a, key) in self.amps.iter_mut().zip(keys) {
            *a = match key {
                Some(k) if k == outcome => *a * scale,
                _ => Complex::new(T::zero(), T::zero()),
            };
        }
        (outcome, prob)
    }
}

pub(crate) fn index_of(p: u32, labels: &[u32]) -> usize {
    labels.iter().rev().fold(0usize, |acc, &l| acc * p as usize + l as usize)
}

pub(crate) fn labels_of(p: u32, n: usize, mut idx: usize) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let l = (idx % p as usize) as u32;
            idx /= p as usize;
            l
        })
        .collect()
}

fn check_nested(c1: &LinearCode, c2: &LinearCode) -> Result<()> {
    if !c2.is_subcode_of(c1)? {
        return Err(Error::NotNested);
    }
    Ok(())
}

/// `|x + C2⟩ = |C2|^{-1/2} Σ_{y ∈ C2} |x + y⟩` for a codeword `x` of `C1`.
pub fn prepare_coset_state<T>(c1: &LinearCode, c2: &LinearCode, x: &[GaussInt]) -> Result<QuditState<T>>
where
    T: Float + FloatConst + Send + Sync,
{
    check_nested(c1, c2)?;
    if !c1.contains(x)? {
        return Err(Error::NotACodeword);
    }
    let field = c1.field();
    let dim = QuditState::<T>::dimension(field, c1.n())?;
    let xl = c1.to_labels(x)?;
    let members = c2.codewords(STATE_CAP)?;
    let amp = T::one() / T::from(members.len()).expect("count fits in float").sqrt();
    let mut amps = vec![Complex::new(T::zero(), T::zero()); dim];
    for y in members {
        let word: Vec<u32> = xl.iter().zip(&y).map(|(&a, &b)| field.fp_add(a, field.label(b))).collect();
        amps[index_of(field.p(), &word)] = Complex::new(amp, T::zero());
    }
    QuditState::from_amplitudes(field, c1.n(), amps)
}

/// `Σ_{y ∈ C2} ξ^{label(y·z)}`: equals `|C2|` for `z ∈ C2⊥` and vanishes otherwise.
pub fn character_sum(c2: &LinearCode, z: &[GaussInt]) -> Result<Complex<f64>> {
    let field = c2.field();
    let zl = c2.to_labels(z)?;
    let xi = root_powers::<f64>(field.p());
    Ok(c2
        .codewords(STATE_CAP)?
        .iter()
        .map(|y| xi[crate::code::dot(field, &c2.to_labels(y).expect("codeword length"), &zl) as usize])
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProtocolMode {
    Full,
    SyndromeOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolTranscript {
    pub mode: ProtocolMode,
    /// `H1·e1`, read off the corrupted state.
    pub bit_syndrome: Vec<GaussInt>,
    /// `H2·(-e2)` after the Hadamard layer, with `H2` a parity check of `C2⊥`.
    pub phase_syndrome: Vec<GaussInt>,
    pub recovered_e1: Option<Vec<GaussInt>>,
    pub recovered_e2: Option<Vec<GaussInt>>,
    /// Mannheim radii of `C1` and `C2⊥`.
    pub t1: u32,
    pub t2: u32,
    /// Both injected errors are within the radii.
    pub within_capacity: bool,
    /// Full mode: fidelity within tolerance and both residual errors are stabilizers.
    pub corrected: bool,
    /// `|⟨reference|final⟩|²` (full mode only).
    pub fidelity: Option<f64>,
    pub notes: Vec<String>,
}

/// Tolerance on the final fidelity for a run to count as corrected.
pub const FIDELITY_TOL: f64 = 1e-9;

fn decode_step(code: &LinearCode, syndrome: &[u32], t: u32, what: &str, notes: &mut Vec<String>) -> Option<Vec<u32>> {
    match code.decode_syndrome_labels(syndrome, Metric::Mannheim, t) {
        Ok((e, _)) => Some(e),
        Err((tied, w)) if !tied.is_empty() => {
            notes.push(format!("{what}: {} patterns tie at Mannheim weight {w}", tied.len()));
            None
        }
        Err(_) => {
            notes.push(format!("{what}: no pattern of Mannheim weight <= {t} matches the syndrome"));
            None
        }
    }
}

/// Injects `Z(e2)` then `X(e1)` into `|x + C2⟩` and runs the CSS correction: bit syndrome
/// against `C1`, Hadamard layer, phase syndrome against `C2⊥`, inverse Hadamard layer.
///
/// `x` is a codeword of `C1`. In syndrome-only mode no state is built; the syndromes are
/// computed from the errors directly and success means the residual errors are harmless
/// (`e1 - ê1 ∈ C2`, `e2 - ê2 ∈ C1⊥`).
pub fn run_css_protocol(
    css: &CssCode,
    x: &[GaussInt],
    e1: &[GaussInt],
    e2: &[GaussInt],
    mode: ProtocolMode,
) -> Result<(Option<QuditState<f64>>, ProtocolTranscript)> {
    let c1 = css.c1();
    let c2 = css.c2();
    let c2d = css.c2_dual();
    let field = c1.field().clone();
    let n = c1.n();
    if !c1.contains(x)? {
        return Err(Error::NotACodeword);
    }
    let e1l = c1.to_labels(e1)?;
    let e2l = c1.to_labels(e2)?;
    let neg_e2: Vec<u32> = e2l.iter().map(|&l| field.fp_neg(l)).collect();
    let (t1, t2) = css.radii(Metric::Mannheim);
    let within_capacity =
        weight_of(&field, &e1l, Metric::Mannheim) <= t1 && weight_of(&field, &e2l, Metric::Mannheim) <= t2;
    let mut notes = Vec::new();
    let to_gauss = |v: &[u32]| v.iter().map(|&l| field.residue(l)).collect::<Vec<_>>();

    let (bit_syn, phase_syn, hat_e1, hat_e2, state, fidelity) = match mode {
        ProtocolMode::SyndromeOnly => {
            let s1 = c1.syndrome_labels(&e1l);
            let s2 = c2d.syndrome_labels(&neg_e2);
            let hat1 = decode_step(c1, &s1, t1, "bit syndrome", &mut notes);
            let hat_neg = decode_step(c2d, &s2, t2, "phase syndrome", &mut notes);
            let hat2 = hat_neg.map(|e| e.iter().map(|&l| field.fp_neg(l)).collect());
            (s1, s2, hat1, hat2, None, None)
        }
        ProtocolMode::Full => {
            let reference = prepare_coset_state::<f64>(c1, c2, x)?;
            let mut state = reference.clone();
            state.apply_each(e2.iter().map(|&b| Gate::Z(b)))?;
            state.apply_each(e1.iter().map(|&a| Gate::X(a)))?;

            let (s1, _) = state.measure_by(|u| c1.syndrome_labels(u));
            let hat1 = decode_step(c1, &s1, t1, "bit syndrome", &mut notes);
            if let Some(e) = &hat1 {
                state.apply_each(e.iter().map(|&l| Gate::XPrime(field.fp_neg(l))))?;
            }

            state.apply_all(Gate::H)?;
            // The support is now {z' - e2 : z' ∈ C2⊥}.
            let (s2, _) = state.measure_by(|z| c2d.syndrome_labels(z));
            let hat_neg = decode_step(c2d, &s2, t2, "phase syndrome", &mut notes);
            if let Some(e) = &hat_neg {
                state.apply_each(e.iter().map(|&l| Gate::XPrime(field.fp_neg(l))))?;
            }
            state.apply_all(Gate::HInv)?;

            let fid = reference.fidelity(&state)?;
            let hat2 = hat_neg.map(|e| e.iter().map(|&l| field.fp_neg(l)).collect());
            (s1, s2, hat1, hat2, Some(state), Some(fid))
        }
    };

    let residual_ok = |hat: &Option<Vec<u32>>, e: &[u32], code: &LinearCode| {
        hat.as_ref().is_some_and(|h| {
            let diff: Vec<u32> = e.iter().zip(h).map(|(&a, &b)| field.fp_sub(a, b)).collect();
            code.contains_labels(&diff)
        })
    };
    // A single coset state cannot see a leftover logical phase (residual in C2⊥ but not
    // C1⊥), so full mode also checks the residuals.
    let residuals = residual_ok(&hat_e1, &e1l, c2) && residual_ok(&hat_e2, &e2l, &c1.dual());
    let corrected = match fidelity {
        Some(f) => {
            let restored = f >= 1.0 - FIDELITY_TOL;
            if restored && !residuals {
                notes.push("state restored up to a logical operator; the residual error is not a stabilizer".into());
            }
            restored && residuals
        }
        None => residuals,
    };
    if !within_capacity {
        notes.push(format!("injected errors exceed the Mannheim radii t1={t1}, t2={t2}"));
    }
    debug_assert_eq!(bit_syn.len(), n - c1.k());
    let transcript = ProtocolTranscript {
        mode,
        bit_syndrome: to_gauss(&bit_syn),
        phase_syndrome: to_gauss(&phase_syn),
        recovered_e1: hat_e1.as_deref().map(to_gauss),
        recovered_e2: hat_e2.as_deref().map(to_gauss),
        t1,
        t2,
        within_capacity,
        corrected,
        fidelity,
        notes,
    };
    Ok((state, transcript))
}

/// Convenience wrapper building the CSS code first.
pub fn run_protocol_on_pair(
    c1: LinearCode,
    c2: LinearCode,
    x: &[GaussInt],
    e1: &[GaussInt],
    e2: &[GaussInt],
    mode: ProtocolMode,
    opts: &SearchOptions,
) -> Result<(Option<QuditState<f64>>, ProtocolTranscript)> {
    let css = CssCode::new(c1, c2, opts)?;
    run_css_protocol(&css, x, e1, e2, mode)
}
