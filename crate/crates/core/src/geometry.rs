//! Closed-form curvature data and gauge transformations.
//!
//! A holomorphic `w` with `w' != 0` carries the positive density
//! `nu = 4|w'|^2/(|w|^2+1)^2`. Two generators give the fields
//! `p = nu(w1)`, `q = nu(w2)` and from them the Gauss and normal curvatures
//!
//! ```text
//! K     = -1/2 sqrt(pq) (p + q)
//! kappa =  1/2 sqrt(pq) (p - q)
//! ```
//!
//! equivalently written through `alpha, beta > 0` with
//! `K = -2(alpha^2+beta^2)`, `kappa = 2(alpha^2-beta^2)` and
//! `p^2 = 4 alpha^3/beta`, `q^2 = 4 beta^3/alpha`. All generator pairs of one
//! and the same curvature solution are related by the Moebius maps
//! `w -> (-conj(b) + conj(a) w)/(a + b w)` with `|a|^2 + |b|^2 = 1`, which on
//! Weierstrass data `(F, G) = (1, w)/sqrt(-2w')` act as the special unitary
//! transformation `(F, G) -> (aF + bG, -conj(b)F + conj(a)G)`.

use crate::expr::{BinOp, ExprAst, HoloFn, Jet, SingularKind, Singularity, EPS_POLE};
use num_complex::Complex64;
use std::fmt;

/// Tolerance on `| |a|^2 + |b|^2 - 1 |` for gauge parameters.
pub const UNIT_TOL: f64 = 1e-12;

/// Which generator an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Only,
    First,
    Second,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::Only => "w",
            Generator::First => "w1",
            Generator::Second => "w2",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeomError {
    /// A generator hit a singular point (pole, branch point, vanishing
    /// derivative, overflow).
    SingularPoint {
        generator: Generator,
        singularity: Singularity,
    },
    /// `(K, kappa)` outside the admissible range `K < 0`, `K^2 - kappa^2 > 0`.
    CurvatureDomain { k: f64, kappa: f64 },
    /// Gauge parameters with `|a|^2 + |b|^2` away from 1.
    NotUnit { norm_sq: f64 },
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::SingularPoint { generator, singularity } => {
                write!(f, "singular point of {generator}: {singularity}")
            }
            GeomError::CurvatureDomain { k, kappa } => write!(
                f,
                "curvature pair (K, kappa) = ({k}, {kappa}) violates K < 0, K^2 - kappa^2 > 0"
            ),
            GeomError::NotUnit { norm_sq } => write!(
                f,
                "gauge parameters not unit-normalized: |a|^2 + |b|^2 = {norm_sq} (tolerance {UNIT_TOL:e})"
            ),
        }
    }
}

impl std::error::Error for GeomError {}

/// Gauss curvature `K` and normal curvature `kappa`, units 1/length^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvaturePair {
    pub k: f64,
    pub kappa: f64,
}

/// The positive pair substituting `K = -2(alpha^2+beta^2)`,
/// `kappa = 2(alpha^2-beta^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaBeta {
    pub alpha: f64,
    pub beta: f64,
}

/// The positive pair with `p^2 = 4 alpha^3/beta`, `q^2 = 4 beta^3/alpha`;
/// each of `p`, `q` separately solves the Liouville-type equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PQ {
    pub p: f64,
    pub q: f64,
}

/// Unit-normalized gauge parameters `(a, b)`, `|a|^2 + |b|^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusParams {
    a: Complex64,
    b: Complex64,
}

impl MoebiusParams {
    /// Validates the unit-norm invariant to [`UNIT_TOL`].
    pub fn new(a: Complex64, b: Complex64) -> Result<MoebiusParams, GeomError> {
        let norm_sq = a.norm_sqr() + b.norm_sqr();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > UNIT_TOL {
            return Err(GeomError::NotUnit { norm_sq });
        }
        Ok(MoebiusParams { a, b })
    }

    /// Scales `(a, b)` onto the unit sphere; fails only for a vanishing or
    /// non-finite pair.
    pub fn renormalized(a: Complex64, b: Complex64) -> Result<MoebiusParams, GeomError> {
        let norm_sq = a.norm_sqr() + b.norm_sqr();
        if !norm_sq.is_finite() || norm_sq <= 0.0 {
            return Err(GeomError::NotUnit { norm_sq });
        }
        let r = norm_sq.sqrt();
        Ok(MoebiusParams { a: a / r, b: b / r })
    }

    pub fn identity() -> MoebiusParams {
        MoebiusParams {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
        }
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }
}

/// Pointwise Weierstrass data `F = 1/sqrt(-2w')`, `G = w/sqrt(-2w')`.
///
/// `F` and `G` individually depend on the branch of the square root (a common
/// sign); the products `F^2`, `G^2`, `FG` and the ratio `G/F` do not, and
/// `2FG = -w/w'` always.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeierstrassPair {
    pub f: Complex64,
    pub g: Complex64,
}

/// Evaluate one generator, requiring a finite jet with nonzero derivative.
fn generator_jet(w: &HoloFn, z: Complex64, which: Generator) -> Result<Jet, GeomError> {
    let jet = w
        .eval_jet(z)
        .map_err(|singularity| GeomError::SingularPoint {
            generator: which,
            singularity,
        })?;
    if jet.deriv.norm() < EPS_POLE {
        return Err(GeomError::SingularPoint {
            generator: which,
            singularity: Singularity {
                at: z,
                kind: SingularKind::DerivativeZero,
            },
        });
    }
    Ok(jet)
}

/// `nu = 4|w'|^2/(|w|^2+1)^2` from a jet, computed ratio-first so that huge
/// `|w|, |w'|` (e.g. near a pole of a Moebius-composed generator) do not
/// overflow before cancelling.
fn density_of(jet: &Jet) -> f64 {
    let r = 2.0 * jet.deriv.norm() / (1.0 + jet.value.norm_sqr());
    r * r
}

fn checked_density(w: &HoloFn, z: Complex64, which: Generator) -> Result<f64, GeomError> {
    let jet = generator_jet(w, z, which)?;
    let nu = density_of(&jet);
    if nu > 0.0 && nu.is_finite() {
        Ok(nu)
    } else {
        let kind = if nu.is_finite() {
            SingularKind::DerivativeZero
        } else {
            SingularKind::NonFinite
        };
        Err(GeomError::SingularPoint {
            generator: which,
            singularity: Singularity { at: z, kind },
        })
    }
}

/// The Liouville density `nu = 4|w'|^2/(|w|^2+1)^2 > 0` of a single
/// generator; every such density solves `lap ln(nu) + 2 nu = 0`.
pub fn liouville_density(w: &HoloFn, z: Complex64) -> Result<f64, GeomError> {
    checked_density(w, z, Generator::Only)
}

/// The pair `p = nu(w1)`, `q = nu(w2)` at one point. Errors identify which
/// generator failed.
pub fn pq_from_w(w1: &HoloFn, w2: &HoloFn, z: Complex64) -> Result<PQ, GeomError> {
    let p = checked_density(w1, z, Generator::First)?;
    let q = checked_density(w2, z, Generator::Second)?;
    Ok(PQ { p, q })
}

/// `K = -1/2 sqrt(pq)(p+q)`, `kappa = 1/2 sqrt(pq)(p-q)`; requires
/// `p, q > 0`. The identity `K^2 - kappa^2 = (pq)^2` follows by expansion.
pub fn curvatures_from_pq(pq: PQ) -> CurvaturePair {
    let root = (pq.p * pq.q).sqrt();
    CurvaturePair {
        k: -0.5 * root * (pq.p + pq.q),
        kappa: 0.5 * root * (pq.p - pq.q),
    }
}

/// The curvature pair straight from the generators:
///
/// ```text
/// K     = -8|w1' w2'| / ((|w1|^2+1)(|w2|^2+1)) * (t1 + t2)
/// kappa =  8|w1' w2'| / ((|w1|^2+1)(|w2|^2+1)) * (t1 - t2)
/// ```
///
/// with `t_k = |w_k'|^2/(|w_k|^2+1)^2`. Agrees with
/// `curvatures_from_pq(pq_from_w(..))` to rounding; the redundancy of the two
/// routes is deliberate and tested.
pub fn curvature_pair(w1: &HoloFn, w2: &HoloFn, z: Complex64) -> Result<CurvaturePair, GeomError> {
    let j1 = generator_jet(w1, z, Generator::First)?;
    let j2 = generator_jet(w2, z, Generator::Second)?;
    let r1 = j1.deriv.norm() / (1.0 + j1.value.norm_sqr());
    let r2 = j2.deriv.norm() / (1.0 + j2.value.norm_sqr());
    let m = 8.0 * r1 * r2;
    let t1 = r1 * r1;
    let t2 = r2 * r2;
    let pair = CurvaturePair {
        k: -m * (t1 + t2),
        kappa: m * (t1 - t2),
    };
    if pair.k.is_finite() && pair.kappa.is_finite() && pair.k < 0.0 {
        Ok(pair)
    } else {
        let which = if r1 <= r2 {
            Generator::First
        } else {
            Generator::Second
        };
        let kind = if pair.k.is_finite() {
            SingularKind::DerivativeZero
        } else {
            SingularKind::NonFinite
        };
        Err(GeomError::SingularPoint {
            generator: which,
            singularity: Singularity { at: z, kind },
        })
    }
}

/// Invert `K = -2(alpha^2+beta^2)`, `kappa = 2(alpha^2-beta^2)`:
/// `alpha = sqrt((kappa-K)/4)`, `beta = sqrt(-(K+kappa)/4)`.
pub fn alpha_beta_from_curvatures(c: CurvaturePair) -> Result<AlphaBeta, GeomError> {
    let alpha_sq = (c.kappa - c.k) / 4.0;
    let beta_sq = -(c.k + c.kappa) / 4.0;
    // the comparisons also reject NaN inputs
    let admissible = c.k < 0.0 && alpha_sq > 0.0 && beta_sq > 0.0;
    if !admissible {
        return Err(GeomError::CurvatureDomain {
            k: c.k,
            kappa: c.kappa,
        });
    }
    Ok(AlphaBeta {
        alpha: alpha_sq.sqrt(),
        beta: beta_sq.sqrt(),
    })
}

/// `p = 2 sqrt(alpha^3/beta)`, `q = 2 sqrt(beta^3/alpha)`; requires
/// `alpha, beta > 0`.
pub fn pq_from_alpha_beta(ab: AlphaBeta) -> PQ {
    let AlphaBeta { alpha, beta } = ab;
    PQ {
        p: 2.0 * (alpha * alpha * alpha / beta).sqrt(),
        q: 2.0 * (beta * beta * beta / alpha).sqrt(),
    }
}

/// The gauge transform `(-conj(b) + conj(a) w)/(a + b w)` as a new
/// first-class function, composed at the tree level so the result feeds every
/// other operation. With `b != 0` the composition has a pole where
/// `w(z) = -a/b`; evaluation reports it like any other pole.
pub fn moebius(w: &HoloFn, m: &MoebiusParams) -> HoloFn {
    let wa = w.ast().clone();
    let numerator = ExprAst::bin(
        BinOp::Add,
        ExprAst::complex(-m.b.conj()),
        ExprAst::bin(BinOp::Mul, ExprAst::complex(m.a.conj()), wa.clone()),
    );
    let denominator = ExprAst::bin(
        BinOp::Add,
        ExprAst::complex(m.a),
        ExprAst::bin(BinOp::Mul, ExprAst::complex(m.b), wa),
    );
    HoloFn::from_ast(ExprAst::bin(BinOp::Div, numerator, denominator))
}

/// Pointwise Weierstrass data `F = 1/sqrt(-2w')`, `G = wF` on the principal
/// branch; requires `w'(z) != 0`.
pub fn weierstrass_fg(w: &HoloFn, z: Complex64) -> Result<WeierstrassPair, GeomError> {
    let jet = generator_jet(w, z, Generator::Only)?;
    let arg = jet.deriv * -2.0;
    // adding +0.0 turns a -0.0 imaginary part into +0.0, keeping arguments on
    // the negative real axis at arg = +pi where the principal branch lives
    let root = Complex64::new(arg.re, arg.im + 0.0).sqrt();
    let f = root.inv();
    let pair = WeierstrassPair {
        f,
        g: jet.value * f,
    };
    if pair.f.is_finite() && pair.g.is_finite() {
        Ok(pair)
    } else {
        Err(GeomError::SingularPoint {
            generator: Generator::Only,
            singularity: Singularity {
                at: z,
                kind: SingularKind::NonFinite,
            },
        })
    }
}

/// The special unitary action `F -> aF + bG`, `G -> -conj(b)F + conj(a)G` on
/// Weierstrass data. Preserves `|F|^2 + |G|^2`, and `G/F` transforms exactly
/// as [`moebius`] transforms `w`.
pub fn su2_transform(pair: WeierstrassPair, m: &MoebiusParams) -> WeierstrassPair {
    WeierstrassPair {
        f: m.a * pair.f + m.b * pair.g,
        g: -m.b.conj() * pair.f + m.a.conj() * pair.g,
    }
}

/// Derivatives of the canonical coordinate functions:
///
/// ```text
/// z1' = (w^2 - 1)/(2w'),  z2' = -i(w^2 + 1)/(2w'),  z3' = -w/w'
/// ```
///
/// These equal `F^2 - G^2`, `i(F^2 + G^2)`, `2FG` for the data of
/// [`weierstrass_fg`], and satisfy `(z1')^2 + (z2')^2 + (z3')^2 = 0`.
pub fn canonical_derivatives(w: &HoloFn, z: Complex64) -> Result<[Complex64; 3], GeomError> {
    let jet = generator_jet(w, z, Generator::Only)?;
    let w2 = jet.value * jet.value;
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let half = 0.5 / jet.deriv;
    let d = [
        (w2 - one) * half,
        -i * (w2 + one) * half,
        -jet.value / jet.deriv,
    ];
    if d.iter().all(|c| c.is_finite()) {
        Ok(d)
    } else {
        Err(GeomError::SingularPoint {
            generator: Generator::Only,
            singularity: Singularity {
                at: z,
                kind: SingularKind::NonFinite,
            },
        })
    }
}
