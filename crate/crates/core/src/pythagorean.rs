//! Primitive Pythagorean triples as operator trigonometry.
//!
//! Coprime `m > n ≥ 1` of opposite parity give the primitive triple
//! `a = 2mn, b = m² − n², c = m² + n²` (and every primitive triple arises this
//! way). The matrix `A = diag(n², m²)` has `cos φ(A) = a/c` and
//! `sin φ(A) = b/c` exactly, and the stereographic image of `(m/n, 0)` on the
//! unit circle is `(cos φ, sin φ)`.
//!
//! Integer work uses checked `u64` arithmetic and reports [`TripleError::Overflow`]
//! instead of wrapping; rationals are [`Rational`] (`i128` numerator and
//! denominator, always reduced).

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::par;
use crate::trig::{SpdMatrix, TrigError};

pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TripleError {
    #[error("parameters must be positive, got m = {m}, n = {n}")]
    NonPositive { m: i64, n: i64 },
    #[error("need m > n, got m = {m}, n = {n}")]
    OrderViolation { m: i64, n: i64 },
    #[error("m = {m} and n = {n} share the factor {gcd}")]
    NotCoprime { m: i64, n: i64, gcd: i64 },
    #[error("m = {m} and n = {n} have the same parity")]
    SameParity { m: i64, n: i64 },
    #[error("integer overflow")]
    Overflow,
    #[error("({a}, {b}, {c}) is not primitive (gcd {gcd})")]
    NotPrimitive { a: u64, b: u64, c: u64, gcd: u64 },
    #[error("({a}, {b}, {c}) is not a primitive triple with even first leg")]
    NotRepresentable { a: u64, b: u64, c: u64 },
    #[error("stereographic projection needs t > 0")]
    NonPositiveInput,
    #[error(transparent)]
    Trig(#[from] TrigError),
}

/// Admissible Euclid parameters: `m > n ≥ 1`, coprime, opposite parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TripleParams {
    m: u64,
    n: u64,
}

impl TripleParams {
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PythTriple {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl PythTriple {
    /// `a² + b² = c²`, exactly.
    pub fn is_pythagorean(&self) -> bool {
        let (a, b, c) = (self.a as u128, self.b as u128, self.c as u128);
        a * a + b * b == c * c
    }
}

pub fn validate_params(m: i64, n: i64) -> Result<TripleParams, TripleError> {
    if m < 1 || n < 1 {
        return Err(TripleError::NonPositive { m, n });
    }
    if m <= n {
        return Err(TripleError::OrderViolation { m, n });
    }
    let gcd = m.gcd(&n);
    if gcd != 1 {
        return Err(TripleError::NotCoprime { m, n, gcd });
    }
    if (m - n) % 2 == 0 {
        return Err(TripleError::SameParity { m, n });
    }
    Ok(TripleParams {
        m: m as u64,
        n: n as u64,
    })
}

struct Squares {
    m2: u64,
    n2: u64,
    two_mn: u64,
}

fn squares(p: &TripleParams) -> Result<Squares, TripleError> {
    let m2 = p.m.checked_mul(p.m).ok_or(TripleError::Overflow)?;
    let n2 = p.n.checked_mul(p.n).ok_or(TripleError::Overflow)?;
    let two_mn = p
        .m
        .checked_mul(p.n)
        .and_then(|x| x.checked_mul(2))
        .ok_or(TripleError::Overflow)?;
    Ok(Squares { m2, n2, two_mn })
}

/// `(2mn, m² − n², m² + n²)`.
pub fn euclid_triple(p: &TripleParams) -> Result<PythTriple, TripleError> {
    let s = squares(p)?;
    Ok(PythTriple {
        a: s.two_mn,
        b: s.m2 - s.n2,
        c: s.m2.checked_add(s.n2).ok_or(TripleError::Overflow)?,
    })
}

/// Inverse of [`euclid_triple`]: `m = √((c+b)/2)`, `n = √((c−b)/2)`.
pub fn params_from_triple(t: &PythTriple) -> Result<TripleParams, TripleError> {
    let not_rep = TripleError::NotRepresentable {
        a: t.a,
        b: t.b,
        c: t.c,
    };
    if t.a == 0 || t.b == 0 || !t.is_pythagorean() {
        return Err(not_rep);
    }
    let gcd = t.a.gcd(&t.b);
    if gcd != 1 {
        return Err(TripleError::NotPrimitive {
            a: t.a,
            b: t.b,
            c: t.c,
            gcd,
        });
    }
    if !t.a.is_multiple_of(2) {
        return Err(not_rep);
    }
    // c ± b are both even for a primitive triple with odd b
    let (c, b) = (t.c as u128, t.b as u128);
    let m2 = (c + b) / 2;
    let n2 = (c - b) / 2;
    let m = m2.isqrt();
    let n = n2.isqrt();
    if m * m != m2 || n * n != n2 {
        return Err(not_rep);
    }
    let (m, n) = (
        i64::try_from(m).map_err(|_| TripleError::Overflow)?,
        i64::try_from(n).map_err(|_| TripleError::Overflow)?,
    );
    let p = validate_params(m, n).map_err(|_| not_rep.clone())?;
    if euclid_triple(&p)? != *t {
        return Err(not_rep);
    }
    Ok(p)
}

/// The Pythagorean triple matrix `diag(n², m²)`.
pub fn pyth_matrix(p: &TripleParams) -> Result<SpdMatrix, TripleError> {
    let s = squares(p)?;
    Ok(SpdMatrix::diagonal(&[s.n2 as f64, s.m2 as f64])?)
}

/// Exact `(cos φ, sin φ) = (2mn/(m²+n²), (m²−n²)/(m²+n²))` of [`pyth_matrix`].
pub fn pyth_trig(p: &TripleParams) -> Result<(Rational, Rational), TripleError> {
    let t = euclid_triple(p)?;
    let c = t.c as i128;
    Ok((Ratio::new(t.a as i128, c), Ratio::new(t.b as i128, c)))
}

/// `x± = (m, ±n)/√(m²+n²)`.
pub fn pyth_antieigenvectors(p: &TripleParams) -> [[f64; 2]; 2] {
    let (m, n) = (p.m as f64, p.n as f64);
    let r = m.hypot(n);
    [[m / r, n / r], [m / r, -n / r]]
}

/// Stereographic image `(2t/(t²+1), (t²−1)/(t²+1))` of the axis point `(t, 0)`.
pub fn stereographic_point(t: f64) -> Result<(f64, f64), TripleError> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(TripleError::NonPositiveInput);
    }
    // divide through by t so large t does not overflow
    let inv = 1.0 / t;
    let d = t + inv;
    Ok((2.0 / d, (t - inv) / d))
}

/// Exact rational version of [`stereographic_point`].
pub fn stereographic_point_exact(t: Rational) -> Result<(Rational, Rational), TripleError> {
    if *t.numer() <= 0 {
        return Err(TripleError::NonPositiveInput);
    }
    let one = Rational::one();
    let t2 = t.checked_mul(&t).ok_or(TripleError::Overflow)?;
    let denom = t2.checked_add(&one).ok_or(TripleError::Overflow)?;
    let two_t = t.checked_add(&t).ok_or(TripleError::Overflow)?;
    let px = two_t.checked_div(&denom).ok_or(TripleError::Overflow)?;
    let py = t2
        .checked_sub(&one)
        .and_then(|num| num.checked_div(&denom))
        .ok_or(TripleError::Overflow)?;
    Ok((px, py))
}

/// `x² + y² = 1` in exact arithmetic; `None` on overflow.
pub fn on_unit_circle(x: &Rational, y: &Rational) -> Option<bool> {
    let s = x.checked_mul(x)?.checked_add(&y.checked_mul(y)?)?;
    Some(s == Rational::one())
}

/// An exact fraction with its float value, as emitted in reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: i128,
    pub den: i128,
    pub value: f64,
}

impl From<Rational> for Fraction {
    fn from(r: Rational) -> Self {
        Fraction {
            num: *r.numer(),
            den: *r.denom(),
            value: *r.numer() as f64 / *r.denom() as f64,
        }
    }
}

impl Fraction {
    pub fn to_rational(&self) -> Rational {
        Ratio::new(self.num, self.den)
    }
}

/// Antieigenvectors with exact components `(m, ±n)` over `√radicand`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactAntieigenvectors {
    pub plus_numerators: [i128; 2],
    pub minus_numerators: [i128; 2],
    pub radicand: u64,
    pub plus: [f64; 2],
    pub minus: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PythReport {
    pub params: TripleParams,
    pub triple: PythTriple,
    /// Eigenvalues `(n², m²)` of the triple matrix.
    pub matrix_diagonal: [u64; 2],
    pub cos_phi: Fraction,
    pub sin_phi: Fraction,
    pub phi_radians: f64,
    pub phi_degrees: f64,
    pub antieigenvectors: ExactAntieigenvectors,
    pub stereo_point: [Fraction; 2],
    pub x_axis_point: Fraction,
}

pub fn pyth_report(p: &TripleParams) -> Result<PythReport, TripleError> {
    let triple = euclid_triple(p)?;
    let s = squares(p)?;
    let (cos, sin) = pyth_trig(p)?;
    let t = Ratio::new(p.m as i128, p.n as i128);
    let (px, py) = stereographic_point_exact(t)?;
    let [plus, minus] = pyth_antieigenvectors(p);
    let phi = (triple.b as f64).atan2(triple.a as f64);
    Ok(PythReport {
        params: *p,
        triple,
        matrix_diagonal: [s.n2, s.m2],
        cos_phi: cos.into(),
        sin_phi: sin.into(),
        phi_radians: phi,
        phi_degrees: phi.to_degrees(),
        antieigenvectors: ExactAntieigenvectors {
            plus_numerators: [p.m as i128, p.n as i128],
            minus_numerators: [p.m as i128, -(p.n as i128)],
            radicand: triple.c,
            plus,
            minus,
        },
        stereo_point: [px.into(), py.into()],
        x_axis_point: t.into(),
    })
}

/// Every primitive triple with `c ≤ c_max`, once each, sorted by `(c, b)`.
pub fn enumerate_primitive_triples(c_max: u64) -> Vec<(TripleParams, PythTriple)> {
    // m² + 1 ≤ c_max
    let m_max = c_max.saturating_sub(1).isqrt();
    if m_max < 2 {
        return Vec::new();
    }
    let per_m = par::map_range((m_max - 1) as usize, |k| {
        let m = k as u64 + 2;
        let mut out = Vec::new();
        let m2 = m * m;
        // opposite parity: n starts at 1 for even m, 2 for odd m
        let mut n = 1 + (m % 2);
        while n < m && m2 + n * n <= c_max {
            if m.gcd(&n) == 1 {
                let p = TripleParams { m, n };
                let t = PythTriple {
                    a: 2 * m * n,
                    b: m2 - n * n,
                    c: m2 + n * n,
                };
                out.push((p, t));
            }
            n += 2;
        }
        out
    });
    let mut all: Vec<_> = per_m.into_iter().flatten().collect();
    all.sort_by_key(|(_, t)| (t.c, t.b));
    all
}
