//! Univariate polynomials over `G_π` with canonical-residue coefficients in ascending
//! degree order, plus the root-of-unity factorizations of `x^((p-1)/4) ∓ i`,
//! `x^((p-1)/2) + 1` and `x^(p-1) - 1`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::GaussInt;

#[derive(Clone)]
pub struct Polynomial {
    field: Arc<PrimeField>,
    coeffs: Vec<GaussInt>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({self})", self.field.pi())
    }
}

/// Ascending coefficient list in the literal grammar, `0` for the zero polynomial.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (idx, c) in self.coeffs.iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Polynomial {
    /// Coefficients are reduced to canonical residues and trailing zeros dropped.
    pub fn new(field: &Arc<PrimeField>, coeffs: impl IntoIterator<Item = GaussInt>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| field.reduce(c)).collect();
        let mut poly = Self { field: field.clone(), coeffs };
        poly.trim();
        poly
    }

    pub fn zero(field: &Arc<PrimeField>) -> Self {
        Self { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(field: &Arc<PrimeField>, c: GaussInt) -> Self {
        Self::new(field, [c])
    }

    /// `c·x^degree`.
    pub fn monomial(field: &Arc<PrimeField>, c: GaussInt, degree: usize) -> Self {
        let mut coeffs = vec![GaussInt::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(field, coeffs)
    }

    /// `x^n + c`.
    pub fn x_pow_plus(field: &Arc<PrimeField>, n: usize, c: GaussInt) -> Self {
        let mut coeffs = vec![GaussInt::zero(); n + 1];
        coeffs[n] = GaussInt::one();
        coeffs[0] = field.reduce(coeffs[0] + c);
        Self::new(field, coeffs)
    }

    /// `(x - r1)(x - r2)⋯`.
    pub fn from_roots(field: &Arc<PrimeField>, roots: &[GaussInt]) -> Self {
        roots.iter().fold(Self::constant(field, GaussInt::one()), |acc, &r| {
            let linear = Self::new(field, [field.neg(r), GaussInt::one()]);
            acc.mul_unchecked(&linear)
        })
    }

    /// Parses `"1+2i, -1+1i, -1i, 1"` (ascending coefficients).
    pub fn parse(field: &Arc<PrimeField>, text: &str) -> Result<Self> {
        let coeffs = text
            .split(',')
            .map(|t| t.trim().parse::<GaussInt>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(field, coeffs))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Arc<PrimeField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[GaussInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<GaussInt> {
        self.coeffs.last().copied()
    }

    pub fn coeff(&self, idx: usize) -> GaussInt {
        self.coeffs.get(idx).copied().unwrap_or_else(GaussInt::zero)
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field.same_field(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let f = &self.field;
        Ok(Self::new(f, (0..len).map(|i| f.add(self.coeff(i), other.coeff(i)))))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let f = &self.field;
        Ok(Self::new(f, (0..len).map(|i| f.sub(self.coeff(i), other.coeff(i)))))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![GaussInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::new(f, out)
    }

    pub fn scale(&self, c: GaussInt) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|&a| self.field.mul(a, c)))
    }

    /// Long division: `(q, r)` with `self = q·divisor + r` and `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_field(divisor)?;
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::DivisionByZeroPoly)?;
        let lead_inv = f.invert(divisor.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return Ok((Self::zero(f), self.clone()));
        };
        let mut quot = vec![GaussInt::zero(); nd - dd + 1];
        for shift in (0..=nd - dd).rev() {
            let c = f.mul(rem[shift + dd], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[shift] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = f.sub(rem[shift + j], f.mul(c, d));
            }
        }
        Ok((Self::new(f, quot), Self::new(f, rem)))
    }

    /// True iff `self` divides `f`.
    pub fn divides(&self, f: &Self) -> Result<bool> {
        Ok(f.divmod(self)?.1.is_zero())
    }

    /// Horner evaluation in `G_π`.
    pub fn eval(&self, a: GaussInt) -> GaussInt {
        let f = &self.field;
        self.coeffs.iter().rev().fold(GaussInt::zero(), |acc, &c| f.add(f.mul(acc, a), c))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        let lead = self.leading().ok_or(Error::DivisionByZeroPoly)?;
        Ok(self.scale(self.field.invert(lead)?))
    }

    /// `x^k·p(1/x)` with `k = deg p`.
    pub fn reciprocal(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(&self.field, coeffs)
    }

    /// Human-readable form such as `x^3 - ix^2 + (-1+i)x + 1+2i`.
    pub fn to_algebraic(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match deg {
                0 => String::new(),
                1 => "x".into(),
                d => format!("x^{d}"),
            };
            let coef = if deg == 0 {
                c.to_string()
            } else if *c == GaussInt::one() {
                String::new()
            } else if *c == -GaussInt::one() {
                "-".into()
            } else if c.re == 0 || c.im == 0 {
                c.to_string()
            } else {
                format!("({c})")
            };
            terms.push(format!("{coef}{mono}"));
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            match t.strip_prefix('-') {
                Some(rest) => out.push_str(&format!(" - {rest}")),
                None => out.push_str(&format!(" + {t}")),
            }
        }
        out
    }
}

/// Which quartic binomial to split: `x^((p-1)/4) - i` or `x^((p-1)/4) + i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuarticSign {
    MinusI,
    PlusI,
}

/// Roots `α, α^5, …, α^(p-4)` of `x^((p-1)/4) ∓ i`, using `α1` for `- i` and `α2` for `+ i`.
pub fn quartic_root_factor(field: &PrimeField, sign: QuarticSign) -> Vec<GaussInt> {
    let alpha = match sign {
        QuarticSign::MinusI => field.alpha1(),
        QuarticSign::PlusI => field.alpha2(),
    };
    (1..=field.p() as u64 - 4).step_by(4).map(|e| field.pow(alpha, e)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub p: u32,
    /// `Π (x - α1^(4j+1)) = x^((p-1)/4) - i`
    pub quartic_minus_i: bool,
    /// `Π (x - α2^(4j+1)) = x^((p-1)/4) + i`
    pub quartic_plus_i: bool,
    /// Product of all `(p-1)/2` linear factors equals `x^((p-1)/2) + 1`.
    pub half_plus_one: bool,
    /// `(x^((p-1)/2) + 1)(x^((p-1)/2) - 1) = x^(p-1) - 1`.
    pub full_minus_one: bool,
    /// Listed roots that are not roots of their binomial.
    pub offending: Vec<String>,
}

impl FactorizationReport {
    pub fn passed(&self) -> bool {
        self.quartic_minus_i && self.quartic_plus_i && self.half_plus_one && self.full_minus_one
    }
}

pub fn verify_global_factorizations(field: &Arc<PrimeField>) -> FactorizationReport {
    let p = field.p() as usize;
    let i = GaussInt::i();
    let minus_roots = quartic_root_factor(field, QuarticSign::MinusI);
    let plus_roots = quartic_root_factor(field, QuarticSign::PlusI);

    let quartic_minus = Polynomial::x_pow_plus(field, (p - 1) / 4, -i);
    let quartic_plus = Polynomial::x_pow_plus(field, (p - 1) / 4, i);
    let mut offending = Vec::new();
    for (roots, target, label) in [(&minus_roots, &quartic_minus, "- i"), (&plus_roots, &quartic_plus, "+ i")] {
        for &r in roots.iter() {
            if !target.eval(r).is_zero() {
                offending.push(format!("{r} is not a root of x^{} {label}", (p - 1) / 4));
            }
        }
    }

    let all: Vec<GaussInt> = minus_roots.iter().chain(&plus_roots).copied().collect();
    let half_plus = Polynomial::x_pow_plus(field, (p - 1) / 2, GaussInt::one());
    let half_minus = Polynomial::x_pow_plus(field, (p - 1) / 2, -GaussInt::one());
    let full_minus = Polynomial::x_pow_plus(field, p - 1, -GaussInt::one());

    FactorizationReport {
        p: field.p(),
        quartic_minus_i: Polynomial::from_roots(field, &minus_roots) == quartic_minus,
        quartic_plus_i: Polynomial::from_roots(field, &plus_roots) == quartic_plus,
        half_plus_one: Polynomial::from_roots(field, &all) == half_plus,
        full_minus_one: half_plus.mul_unchecked(&half_minus) == full_minus,
        offending,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    fn f17() -> Arc<PrimeField> {
        PrimeField::new(g(4, 1)).unwrap()
    }

    fn g1(f: &Arc<PrimeField>) -> Polynomial {
        Polynomial::parse(f, "1+2i, -1+1i, -1i, 1").unwrap()
    }

    fn g2(f: &Arc<PrimeField>) -> Polynomial {
        Polynomial::parse(f, "1-i, 2-i, -1+i, -i, -i, 1").unwrap()
    }

    #[test]
    fn basic_arith() {
        let f = f17();
        let xm1 = Polynomial::new(&f, [g(-1, 0), g(1, 0)]);
        let xp1 = Polynomial::new(&f, [g(1, 0), g(1, 0)]);
        assert_eq!(xm1.mul(&xp1).unwrap(), Polynomial::x_pow_plus(&f, 2, g(-1, 0)));
        let (q, r) = xm1.divmod(&xm1).unwrap();
        assert_eq!(q, Polynomial::constant(&f, g(1, 0)));
        assert!(r.is_zero());
        assert!(xm1.divides(&xm1).unwrap());
        assert!(!Polynomial::monomial(&f, g(1, 0), 2).divides(&xp1).unwrap());
    }

    #[test]
    fn errors() {
        let f = f17();
        let other = PrimeField::new(g(2, 1)).unwrap();
        let a = Polynomial::constant(&f, g(1, 0));
        let b = Polynomial::constant(&other, g(1, 0));
        assert_eq!(a.add(&b), Err(Error::FieldMismatch));
        assert_eq!(a.divmod(&Polynomial::zero(&f)), Err(Error::DivisionByZeroPoly));
        assert!(Polynomial::parse(&f, "1, x").is_err());
    }

    #[test]
    fn example_generators_divide() {
        let f = f17();
        let x8p1 = Polynomial::x_pow_plus(&f, 8, g(1, 0));
        assert!(x8p1.divmod(&g1(&f)).unwrap().1.is_zero());
        assert!(g1(&f).divides(&x8p1).unwrap());
        assert!(g2(&f).divides(&x8p1).unwrap());
        assert!(g1(&f).divides(&g2(&f)).unwrap());
    }

    #[test]
    fn eval_examples() {
        let f = f17();
        let quartic = Polynomial::x_pow_plus(&f, 4, g(0, -1));
        assert_eq!(quartic.eval(g(1, 1)), g(0, 0));
        let c = Polynomial::constant(&f, g(2, -1));
        for &a in f.residues() {
            assert_eq!(c.eval(a), g(2, -1));
            let lin = Polynomial::new(&f, [f.neg(a), g(1, 0)]);
            assert_eq!(lin.eval(a), g(0, 0));
        }
    }

    #[test]
    fn quartic_roots() {
        let f = f17();
        let roots = quartic_root_factor(&f, QuarticSign::MinusI);
        let a1 = f.alpha1();
        assert_eq!(roots, vec![a1, f.pow(a1, 5), f.pow(a1, 9), f.pow(a1, 13)]);
        assert_eq!(Polynomial::from_roots(&f, &roots), Polynomial::x_pow_plus(&f, 4, g(0, -1)));

        let f5 = PrimeField::new(g(2, 1)).unwrap();
        assert_eq!(quartic_root_factor(&f5, QuarticSign::MinusI), vec![g(0, 1)]);
        assert_eq!(quartic_root_factor(&f5, QuarticSign::PlusI), vec![g(0, -1)]);

        for pi in [g(3, 2), g(4, 1), g(5, 2)] {
            let f = PrimeField::new(pi).unwrap();
            let mut a = quartic_root_factor(&f, QuarticSign::MinusI);
            let b = quartic_root_factor(&f, QuarticSign::PlusI);
            assert!(a.iter().all(|r| !b.contains(r)));
            a.extend(b);
            a.sort();
            a.dedup();
            assert_eq!(a.len(), (f.p() as usize - 1) / 2);
        }
    }

    #[test]
    fn global_factorizations() {
        for pi in [g(2, 1), g(3, 2), g(4, 1), g(5, 2)] {
            let report = verify_global_factorizations(&PrimeField::new(pi).unwrap());
            assert!(report.passed(), "{report:?}");
            assert!(report.offending.is_empty());
        }
    }

    #[test]
    fn algebraic_printing() {
        let f = f17();
        assert_eq!(g1(&f).to_algebraic(), "x^3 - ix^2 + (-1+i)x + 1+2i");
        assert_eq!(g1(&f).to_string(), "1+2i, -1+i, -i, 1");
        assert_eq!(Polynomial::zero(&f).to_string(), "0");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly_strategy(p: u32) -> impl Strategy<Value = Vec<u32>> {
            proptest::collection::vec(0..p, 0..=7)
        }

        fn from_labels(f: &Arc<PrimeField>, labels: &[u32]) -> Polynomial {
            Polynomial::new(f, labels.iter().map(|&l| f.residue(l)))
        }

        fn field_for(p: u32) -> Arc<PrimeField> {
            match p {
                5 => PrimeField::new(g(2, 1)).unwrap(),
                13 => PrimeField::new(g(3, 2)).unwrap(),
                _ => PrimeField::new(g(4, 1)).unwrap(),
            }
        }

        proptest! {
            #[test]
            fn ring_laws(
                p in prop::sample::select(vec![5u32, 13, 17]),
                a in poly_strategy(17),
                b in poly_strategy(17),
                c in poly_strategy(17),
            ) {
                let f = field_for(p);
                let wrap = |v: &[u32]| from_labels(&f, &v.iter().map(|&l| l % p).collect::<Vec<_>>());
                let (pa, pb, pc) = (wrap(&a), wrap(&b), wrap(&c));
                let lhs = pa.add(&pb).unwrap().mul(&pc).unwrap();
                let rhs = pa.mul(&pc).unwrap().add(&pb.mul(&pc).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
                if !pb.is_zero() {
                    let (q, r) = pa.divmod(&pb).unwrap();
                    prop_assert_eq!(q.mul(&pb).unwrap().add(&r).unwrap(), pa.clone());
                    prop_assert!(r.degree().is_none_or(|d| d < pb.degree().unwrap()));
                }
            }

            #[test]
            fn root_factor_duality(labels in proptest::collection::vec(0u32..13, 1..=5)) {
                let f = field_for(13);
                let poly = from_labels(&f, &labels);
                prop_assume!(!poly.is_zero());
                for &a in f.residues() {
                    let lin = Polynomial::new(&f, [f.neg(a), g(1, 0)]);
                    prop_assert_eq!(poly.eval(a).is_zero(), lin.divides(&poly).unwrap());
                }
            }
        }
    }
}
