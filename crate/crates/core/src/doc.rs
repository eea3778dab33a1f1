//! Structured input documents and the reports built from them.
//!
//! Gaussian values in input documents may be written either as `[re, im]` pairs or as
//! literal strings (`"-1+i"`). Reports always emit pairs.

use std::fmt;
use std::sync::Arc;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::code::{Distance, LinearCode, Metric, Modulus, SearchOptions};
use crate::css::{CssCode, ErrorCountReport, SingletonCheck};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::{verify_global_factorizations, FactorizationReport, Polynomial};
use crate::qudit::ProtocolMode;
use crate::GaussInt;

/// A Gaussian integer accepted as `[re, im]` or as a literal string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DocGauss(pub GaussInt);

impl Serialize for DocGauss {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DocGauss {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = DocGauss;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a [re, im] pair or a Gaussian integer literal")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<DocGauss, E> {
                v.parse().map(DocGauss).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<DocGauss, E> {
                Ok(DocGauss(GaussInt::from_int(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<DocGauss, E> {
                i64::try_from(v).map(|v| DocGauss(GaussInt::from_int(v))).map_err(E::custom)
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<DocGauss, A::Error> {
                let re = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let im = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<i64>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Ok(DocGauss(GaussInt::new(re, im)))
            }
        }
        d.deserialize_any(V)
    }
}

fn unwrap_vec(v: &[DocGauss]) -> Vec<GaussInt> {
    v.iter().map(|g| g.0).collect()
}

/// `{ "p"?, "pi" }`. Other keys are ignored, so a code-spec also works.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    pub pi: DocGauss,
}

fn build_field(p: Option<u32>, pi: GaussInt) -> Result<Arc<PrimeField>> {
    let field = PrimeField::new(pi)?;
    match p {
        Some(p) if p != field.p() => Err(Error::InvalidModulus {
            pi,
            reason: format!("declared p = {p} but N(π) = {}", field.p()),
        }),
        _ => Ok(field),
    }
}

impl FieldSpec {
    pub fn build(&self) -> Result<Arc<PrimeField>> {
        build_field(self.p, self.pi.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpec {
    pub p: u32,
    pub pi: DocGauss,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Modulus>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_poly: Option<Vec<DocGauss>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_matrix: Option<Vec<Vec<DocGauss>>>,
}

impl CodeSpec {
    pub fn build(&self) -> Result<LinearCode> {
        let field = build_field(Some(self.p), self.pi.0)?;
        match (&self.generator_poly, &self.generator_matrix) {
            (Some(coeffs), None) => {
                let modulus = self
                    .modulus
                    .ok_or_else(|| Error::Parse("generator_poly requires \"modulus\": \"+1\" or \"-1\"".into()))?;
                let g = Polynomial::new(&field, unwrap_vec(coeffs));
                LinearCode::from_generator_poly(&g, self.n, modulus)
            }
            (None, Some(rows)) => {
                let rows: Vec<Vec<GaussInt>> = rows.iter().map(|r| unwrap_vec(r)).collect();
                if let Some(bad) = rows.iter().find(|r| r.len() != self.n) {
                    return Err(Error::LengthMismatch { expected: self.n, got: bad.len() });
                }
                LinearCode::from_generator_matrix(&field, &rows)
            }
            _ => Err(Error::Parse("exactly one of generator_poly and generator_matrix must be given".into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CssSpec {
    pub c1: CodeSpec,
    pub c2: CodeSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance_cap: Option<u64>,
}

impl CssSpec {
    /// Search options with this document's cap taking precedence over `base.cap`.
    pub fn options(&self, base: &SearchOptions) -> SearchOptions {
        SearchOptions { cap: self.distance_cap.unwrap_or(base.cap), workers: base.workers }
    }

    pub fn build(&self, base: &SearchOptions) -> Result<CssCode> {
        let c1 = self.c1.build()?;
        let c2 = self.c2.build()?;
        if !c1.field().same_field(c2.field()) {
            return Err(Error::FieldMismatch);
        }
        CssCode::new(c1, c2, &self.options(base))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    pub css: CssSpec,
    /// A message of length `k1` or a codeword of length `n`.
    pub x: Vec<DocGauss>,
    pub e1: Vec<DocGauss>,
    pub e2: Vec<DocGauss>,
    pub mode: ProtocolMode,
}

impl RunSpec {
    /// `x` as a codeword of `C1`: length `n` is taken as a codeword, length `k1` as a message.
    pub fn codeword(&self, css: &CssCode) -> Result<Vec<GaussInt>> {
        let x = unwrap_vec(&self.x);
        if x.len() == css.n() {
            Ok(x)
        } else if x.len() == css.c1().k() {
            css.c1().encode(&x)
        } else {
            Err(Error::LengthMismatch { expected: css.n(), got: x.len() })
        }
    }

    pub fn errors(&self) -> (Vec<GaussInt>, Vec<GaussInt>) {
        (unwrap_vec(&self.e1), unwrap_vec(&self.e2))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldReport {
    pub p: u32,
    pub pi: GaussInt,
    /// Canonical residues in label order.
    pub residues: Vec<GaussInt>,
    pub weights: Vec<u32>,
    pub alpha1: GaussInt,
    pub alpha2: GaussInt,
    pub factorization: FactorizationReport,
}

impl FieldReport {
    pub fn new(field: &Arc<PrimeField>) -> Self {
        Self {
            p: field.p(),
            pi: field.pi(),
            residues: field.residues().to_vec(),
            weights: field.weights().to_vec(),
            alpha1: field.alpha1(),
            alpha2: field.alpha2(),
            factorization: verify_global_factorizations(field),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualSummary {
    pub k: usize,
    pub d_m: Option<Distance>,
    pub d_h: Option<Distance>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub p: u32,
    pub pi: GaussInt,
    pub n: usize,
    pub k: usize,
    pub d_m: Option<Distance>,
    pub d_h: Option<Distance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_poly: Option<Vec<GaussInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Modulus>,
    pub generator_matrix: Vec<Vec<GaussInt>>,
    pub parity_check_matrix: Vec<Vec<GaussInt>>,
    pub dual: DualSummary,
}

fn distances(code: &LinearCode, opts: &SearchOptions) -> Result<(Option<Distance>, Option<Distance>)> {
    if code.k() == 0 {
        return Ok((None, None));
    }
    Ok((Some(code.distance(Metric::Mannheim, opts)?), Some(code.distance(Metric::Hamming, opts)?)))
}

impl CodeReport {
    pub fn new(code: &LinearCode, opts: &SearchOptions) -> Result<Self> {
        let (d_m, d_h) = distances(code, opts)?;
        let dual = code.dual();
        let (dual_m, dual_h) = distances(&dual, opts)?;
        Ok(Self {
            p: code.field().p(),
            pi: code.field().pi(),
            n: code.n(),
            k: code.k(),
            d_m,
            d_h,
            generator_poly: code.origin().map(|o| o.generator.coeffs().to_vec()),
            modulus: code.origin().map(|o| o.modulus),
            generator_matrix: code.generator_matrix(),
            parity_check_matrix: code.parity_check_matrix(),
            dual: DualSummary { k: dual.k(), d_m: dual_m, d_h: dual_h },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorCounts {
    pub mannheim: ErrorCountReport,
    pub hamming: ErrorCountReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDistances {
    pub c1_m: Option<Distance>,
    pub c1_h: Option<Distance>,
    pub c2_dual_m: Option<Distance>,
    pub c2_dual_h: Option<Distance>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CssReport {
    pub p: u32,
    pub pi: GaussInt,
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub k1: usize,
    pub k2: usize,
    #[serde(rename = "d_M")]
    pub d_m: Distance,
    #[serde(rename = "d_H")]
    pub d_h: Distance,
    pub components: ComponentDistances,
    pub counts: ErrorCounts,
    pub singleton: SingletonCheck,
    pub interpretation_notes: Vec<String>,
}

impl CssReport {
    pub fn new(css: &CssCode) -> Self {
        let d_m = css.distance(Metric::Mannheim);
        let d_h = css.distance(Metric::Hamming);
        let mut notes = vec![
            "K = k1 - k2 counts logical qudits; the symplectic form dim C^{⊥*} - dim C gives 2K".to_string(),
            "d_M = min{d_M(C1), d_M(C2⊥)}; the Singleton check uses d_H only".to_string(),
        ];
        if !d_m.is_exact() || !d_h.is_exact() {
            notes.push("distances marked at_least are lower bounds: enumeration exceeded the cap".to_string());
        }
        if css.k() == 0 {
            notes.push("C1 = C2: the code space is one-dimensional".to_string());
        }
        Self {
            p: css.field().p(),
            pi: css.field().pi(),
            n: css.n(),
            k: css.k(),
            k1: css.c1().k(),
            k2: css.c2().k(),
            d_m,
            d_h,
            components: ComponentDistances {
                c1_m: css.d_c1(Metric::Mannheim),
                c1_h: css.d_c1(Metric::Hamming),
                c2_dual_m: css.d_c2_dual(Metric::Mannheim),
                c2_dual_h: css.d_c2_dual(Metric::Hamming),
            },
            counts: ErrorCounts {
                mannheim: css.error_count(Metric::Mannheim),
                hamming: css.error_count(Metric::Hamming),
            },
            singleton: css.singleton(),
            interpretation_notes: notes,
        }
    }
}
