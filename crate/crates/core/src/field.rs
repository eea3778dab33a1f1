//! The residue field `G_π` of Gaussian integers modulo a Gaussian prime `π` with
//! `N(π) = p ≡ 1 (mod 4)`.
//!
//! Every element has two equivalent representations:
//!
//! * the canonical residue, a small [`GaussInt`] produced by the rounding reduction
//!   `z - [z·π̄ / p]·π` (each component of the quotient rounded to the nearest integer);
//! * its *label* in `0..p`, the image under the ring isomorphism `G_π → F_p` that sends
//!   `i` to the square root of `-1` determined by `π`.
//!
//! Field operations on [`GaussInt`] values go through exact Gaussian arithmetic followed by
//! [`PrimeField::reduce`]. The `fp_*` methods work on labels and are what the code and
//! simulator layers use in their inner loops; the two routes agree because labelling is a
//! ring isomorphism.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::GaussInt;

/// Largest admissible norm `p = N(π)`.
pub const MAX_NORM: i64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
}

/// Mannheim weight `|Re a| + |Im a|` of a canonical residue.
pub fn mannheim_weight(a: GaussInt) -> u32 {
    (a.re.unsigned_abs() + a.im.unsigned_abs()) as u32
}

#[derive(Debug, Clone)]
pub struct PrimeField {
    pi: GaussInt,
    p: u32,
    /// Label of `i`, a square root of `-1` in `F_p`.
    i_label: u32,
    residues: Vec<GaussInt>,
    weights: Vec<u32>,
    alpha1: GaussInt,
    alpha2: GaussInt,
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.pi == other.pi
    }
}

impl Eq for PrimeField {}

fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn round_div(num: i128, den: i128) -> i128 {
    // den is odd and positive, so an exact half never occurs.
    debug_assert!(den > 0 && den % 2 == 1);
    (2 * num + den).div_euclid(2 * den)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl PrimeField {
    /// Builds `G_π` for the modulus exactly as given (no conjugate normalisation).
    pub fn new(pi: GaussInt) -> Result<Arc<Self>> {
        let invalid = |reason: &str| Error::InvalidModulus { pi, reason: reason.to_string() };
        let norm = pi.checked_norm().ok_or_else(|| invalid("norm overflows"))?;
        if norm > MAX_NORM {
            return Err(invalid(&format!("norm {norm} exceeds {MAX_NORM}")));
        }
        if !is_prime(norm) {
            return Err(invalid(&format!("norm {norm} is not prime")));
        }
        if norm % 4 != 1 {
            return Err(invalid(&format!("norm {norm} is not 1 mod 4")));
        }
        let p = norm as u32;

        // π = a + bi ≡ 0 gives i ≡ -a/b (mod p); b ≠ 0 because p is an odd prime.
        let pm = p as i64;
        let b_inv = pow_mod(pi.im.rem_euclid(pm) as u64, (pm - 2) as u64, pm as u64) as i64;
        let i_label = ((-pi.re).rem_euclid(pm) * b_inv % pm) as u32;

        let mut field = PrimeField {
            pi,
            p,
            i_label,
            residues: Vec::new(),
            weights: Vec::new(),
            alpha1: GaussInt::zero(),
            alpha2: GaussInt::zero(),
        };
        field.residues = (0..p).map(|g| field.reduce(GaussInt::from_int(g as i64))).collect();
        field.weights = field.residues.iter().map(|&r| mannheim_weight(r)).collect();
        for (g, &r) in field.residues.iter().enumerate() {
            if field.label(r) != g as u32 || field.reduce(r) != r {
                return Err(Error::InternalInvariant(format!("residue {r} does not label back to {g}")));
            }
        }
        let (alpha1, alpha2) = field.find_alpha_pair()?;
        field.alpha1 = alpha1;
        field.alpha2 = alpha2;
        Ok(Arc::new(field))
    }

    pub fn pi(&self) -> GaussInt {
        self.pi
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Canonical residues ordered by label, so `residues()[g] == lift(g)`.
    pub fn residues(&self) -> &[GaussInt] {
        &self.residues
    }

    pub fn alpha1(&self) -> GaussInt {
        self.alpha1
    }

    pub fn alpha2(&self) -> GaussInt {
        self.alpha2
    }

    /// The rounding reduction `z - [z·π̄ / (π·π̄)]·π`.
    pub fn reduce(&self, z: GaussInt) -> GaussInt {
        let (x, y) = (z.re as i128, z.im as i128);
        let (a, b) = (self.pi.re as i128, self.pi.im as i128);
        let p = self.p as i128;
        // z·π̄ = (xa + yb) + (ya - xb)i
        let qr = round_div(x * a + y * b, p);
        let qi = round_div(y * a - x * b, p);
        let re = x - (qr * a - qi * b);
        let im = y - (qr * b + qi * a);
        GaussInt::new(re as i64, im as i64)
    }

    pub fn is_canonical(&self, a: GaussInt) -> bool {
        self.reduce(a) == a
    }

    pub fn add(&self, a: GaussInt, b: GaussInt) -> GaussInt {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: GaussInt, b: GaussInt) -> GaussInt {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: GaussInt, b: GaussInt) -> GaussInt {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: GaussInt) -> GaussInt {
        self.reduce(-a)
    }

    pub fn field_arith(&self, a: GaussInt, b: GaussInt, op: FieldOp) -> GaussInt {
        match op {
            FieldOp::Add => self.add(a, b),
            FieldOp::Sub => self.sub(a, b),
            FieldOp::Mul => self.mul(a, b),
        }
    }

    /// Square-and-multiply in `G_π`, reducing after every product.
    pub fn pow(&self, a: GaussInt, mut e: u64) -> GaussInt {
        let mut base = self.reduce(a);
        let mut acc = GaussInt::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        self.reduce(acc)
    }

    /// Inverse by Fermat: `a^(p-2)` computed in `G_π`.
    pub fn invert(&self, a: GaussInt) -> Result<GaussInt> {
        if self.reduce(a).is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.p as u64 - 2))
    }

    /// `μ: F_p → G_π`, `g ↦ g - [g·π̄ / p]·π`.
    pub fn lift(&self, g: i64) -> Result<GaussInt> {
        if !(0..self.p as i64).contains(&g) {
            return Err(Error::OutOfRange { value: g, p: self.p });
        }
        Ok(self.residues[g as usize])
    }

    /// Inverse of [`lift`](Self::lift) on canonical residues.
    pub fn project(&self, a: GaussInt) -> Result<u32> {
        if !self.is_canonical(a) {
            return Err(Error::NotCanonical(a));
        }
        Ok(self.label(a))
    }

    /// Label of the residue class of any Gaussian integer (canonical or not).
    pub fn label(&self, z: GaussInt) -> u32 {
        let p = self.p as i128;
        let v = (z.re as i128).rem_euclid(p) + (z.im as i128).rem_euclid(p) * self.i_label as i128;
        (v % p) as u32
    }

    pub fn residue(&self, label: u32) -> GaussInt {
        self.residues[label as usize]
    }

    pub fn label_weight(&self, label: u32) -> u32 {
        self.weights[label as usize]
    }

    /// Mannheim weight of every label, indexed by label.
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: GaussInt) -> Option<u64> {
        let a = self.reduce(a);
        if a.is_zero() {
            return None;
        }
        let n = self.p as u64 - 1;
        let mut order = n;
        for q in prime_factors(n) {
            while order.is_multiple_of(q) && self.pow(a, order / q) == GaussInt::one() {
                order /= q;
            }
        }
        Some(order)
    }

    /// First pair `(α1, α2)` in label order with `ord = p-1`, `α1^((p-1)/4) = i` and
    /// `α2^((p-1)/4) = -i`.
    pub fn find_alpha_pair(&self) -> Result<(GaussInt, GaussInt)> {
        let quarter = (self.p as u64 - 1) / 4;
        let i = self.reduce(GaussInt::i());
        let minus_i = self.neg(i);
        let mut alpha1 = None;
        let mut alpha2 = None;
        for &a in &self.residues[1..] {
            if alpha1.is_some() && alpha2.is_some() {
                break;
            }
            if self.order(a) != Some(self.p as u64 - 1) {
                continue;
            }
            let q = self.pow(a, quarter);
            if q == i && alpha1.is_none() {
                alpha1 = Some(a);
            } else if q == minus_i && alpha2.is_none() {
                alpha2 = Some(a);
            }
        }
        match (alpha1, alpha2) {
            (Some(a1), Some(a2)) => Ok((a1, a2)),
            _ => Err(Error::InternalInvariant(format!("no primitive pair found for π = {}", self.pi))),
        }
    }

    pub fn fp_add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn fp_sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn fp_neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn fp_mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn fp_inv(&self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::ZeroInverse);
        }
        Ok(pow_mod(a as u64, self.p as u64 - 2, self.p as u64) as u32)
    }

    pub fn same_field(&self, other: &PrimeField) -> bool {
        self.pi == other.pi
    }
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}
