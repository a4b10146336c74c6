//! JSON wire formats. Complex numbers are `[re, im]` arrays.

use pentablock::construct::ConstructionData;
use pentablock::penta_inner::APart;
use pentablock::schwarz::SchwarzProblem;
use pentablock::{BlaschkeProduct, Complex, ComplexPoly, GammaInnerRep, GammaPoint, PentaInnerRep, PentaPoint, TrigPoly};
use serde::{Deserialize, Serialize};

pub type C = [f64; 2];

pub fn to_c(z: Complex) -> C {
    [z.re, z.im]
}

pub fn from_c(c: C) -> Complex {
    Complex::new(c[0], c[1])
}

pub fn to_cs(zs: &[Complex]) -> Vec<C> {
    zs.iter().copied().map(to_c).collect()
}

pub fn from_cs(cs: &[C]) -> Vec<Complex> {
    cs.iter().copied().map(from_c).collect()
}

/// A Γ point when `a` is absent, a pentablock point otherwise.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<C>,
    pub s: C,
    pub p: C,
}

pub enum Point {
    Gamma(GammaPoint),
    Penta(PentaPoint),
}

impl From<&PointWire> for Point {
    fn from(w: &PointWire) -> Self {
        let (s, p) = (from_c(w.s), from_c(w.p));
        match w.a {
            Some(a) => Point::Penta(PentaPoint::new(from_c(a), s, p)),
            None => Point::Gamma(GammaPoint::new(s, p)),
        }
    }
}

impl From<PentaPoint> for PointWire {
    fn from(x: PentaPoint) -> Self {
        Self { a: Some(to_c(x.a)), s: to_c(x.s), p: to_c(x.p) }
    }
}

/// `{"coeffs": [[k, re, im], ...]}` for `Σ c_k λ^k`, `k` in `[-n, n]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrigPolyWire {
    pub coeffs: Vec<(i64, f64, f64)>,
}

impl From<&TrigPolyWire> for TrigPoly {
    fn from(w: &TrigPolyWire) -> Self {
        let pairs: Vec<(i64, Complex)> = w.coeffs.iter().map(|&(k, re, im)| (k, Complex::new(re, im))).collect();
        TrigPoly::from_pairs(&pairs)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlaschkeWire {
    pub c: C,
    #[serde(default)]
    pub zeros: Vec<C>,
}

impl BlaschkeWire {
    pub fn from_blaschke(b: &BlaschkeProduct) -> Self {
        Self { c: to_c(b.c()), zeros: to_cs(b.zeros()) }
    }

    pub fn to_blaschke(&self) -> Result<BlaschkeProduct, String> {
        BlaschkeProduct::new(from_c(self.c), from_cs(&self.zeros)).map_err(|e| e.to_string())
    }
}

/// `{"E": [...], "D": [...], "n": int}`
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaWire {
    #[serde(rename = "E")]
    pub e: Vec<C>,
    #[serde(rename = "D")]
    pub d: Vec<C>,
    pub n: usize,
}

impl GammaWire {
    pub fn from_rep(h: &GammaInnerRep) -> Self {
        Self { e: to_cs(h.e().coeffs()), d: to_cs(h.d().coeffs()), n: h.n() }
    }

    pub fn to_rep(&self) -> Result<GammaInnerRep, String> {
        let poly = |v: &[C]| ComplexPoly::try_new(from_cs(v)).map_err(|e| e.to_string());
        GammaInnerRep::new(poly(&self.e)?, poly(&self.d)?, self.n).map_err(|e| e.to_string())
    }
}

/// `{"a_in": {...}, "A": [...], "E": [...], "D": [...], "n": int}`; an empty
/// `A` encodes `a ≡ 0`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PentaWire {
    pub a_in: BlaschkeWire,
    #[serde(rename = "A")]
    pub a: Vec<C>,
    #[serde(rename = "E")]
    pub e: Vec<C>,
    #[serde(rename = "D")]
    pub d: Vec<C>,
    pub n: usize,
}

impl PentaWire {
    pub fn from_rep(x: &PentaInnerRep) -> Self {
        let g = GammaWire::from_rep(x.gamma());
        let (a_in, a) = match x.a_part() {
            APart::Outer { a_in, a } => (BlaschkeWire::from_blaschke(a_in), to_cs(a.coeffs())),
            APart::Zero => (BlaschkeWire::from_blaschke(&BlaschkeProduct::identity()), Vec::new()),
        };
        Self { a_in, a, e: g.e, d: g.d, n: g.n }
    }

    pub fn to_rep(&self) -> Result<PentaInnerRep, String> {
        let h = GammaWire { e: self.e.clone(), d: self.d.clone(), n: self.n }.to_rep()?;
        let a = ComplexPoly::try_new(from_cs(&self.a)).map_err(|e| e.to_string())?;
        let part = if a.is_zero() {
            APart::Zero
        } else {
            APart::Outer { a_in: self.a_in.to_blaschke()?, a }
        };
        Ok(PentaInnerRep::from_parts(part, h))
    }
}

/// A function file: a P̄-inner representation when `A` is present, a Γ-inner
/// one otherwise.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum FunctionWire {
    Penta(PentaWire),
    Gamma(GammaWire),
}

fn default_t_plus() -> f64 {
    4.0
}

fn default_t() -> f64 {
    1.0
}

fn default_c() -> C {
    [1.0, 0.0]
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructionDataWire {
    #[serde(default)]
    pub alphas: Vec<C>,
    #[serde(default)]
    pub etas: Vec<C>,
    #[serde(default)]
    pub betas: Vec<C>,
    #[serde(default)]
    pub sigmas: Vec<C>,
    #[serde(default = "default_t_plus")]
    pub t_plus: f64,
    #[serde(default = "default_t")]
    pub t: f64,
    #[serde(default = "default_c")]
    pub c: C,
}

impl From<&ConstructionDataWire> for ConstructionData {
    fn from(w: &ConstructionDataWire) -> Self {
        let mut d = ConstructionData::new(from_cs(&w.alphas), from_cs(&w.etas), from_cs(&w.betas), from_cs(&w.sigmas));
        d.t_plus = w.t_plus;
        d.t = w.t;
        d.c = from_c(w.c);
        d
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchwarzProblemWire {
    pub lambda0: C,
    pub a0: C,
    pub s0: C,
    pub p0: C,
}

impl SchwarzProblemWire {
    pub fn to_problem(&self) -> Result<SchwarzProblem, String> {
        let target = PentaPoint::new(from_c(self.a0), from_c(self.s0), from_c(self.p0));
        SchwarzProblem::new(from_c(self.lambda0), target).map_err(|e| e.to_string())
    }
}
