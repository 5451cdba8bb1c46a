//! Right eigenpairs of 3x3 octonionic Hermitian matrices.
//!
//! Closed-form non-real eigenvalues are not available for 3x3 matrices, so
//! this module provides the generalized characteristic equation as a
//! residual, the Rayleigh quotient with its real and imaginary formulas, and
//! a certified multi-start numerical search.

use std::str::FromStr;

use serde::Serialize;

use crate::eigen2::EigenPair2;
use crate::error::{Error, Result};
use crate::linalg::{inner, Hermitian2, Hermitian3, OctMatrix, OctVector};
use crate::octonion::{associator, Octonion};
use crate::search::{self, LmOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Block {
    #[serde(rename = "12")]
    B12,
    #[serde(rename = "23")]
    B23,
    #[serde(rename = "13")]
    B13,
}

impl Block {
    pub const ALL: [Block; 3] = [Block::B12, Block::B23, Block::B13];

    /// Positions of the 2x2 block and the remaining diagonal slot.
    fn slots(self) -> (usize, usize, usize) {
        match self {
            Block::B12 => (0, 1, 2),
            Block::B23 => (1, 2, 0),
            Block::B13 => (0, 2, 1),
        }
    }
}

impl FromStr for Block {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "12" => Ok(Block::B12),
            "23" => Ok(Block::B23),
            "13" => Ok(Block::B13),
            _ => Err(Error::Usage(format!("unknown block {s:?}, expected 12, 23 or 13"))),
        }
    }
}

/// Places `h` in the chosen principal block with `n` on the remaining
/// diagonal entry.
pub fn embed2(h: &Hermitian2, n: f64, block: Block) -> Hermitian3 {
    let z = Octonion::ZERO;
    match block {
        Block::B12 => Hermitian3::new(h.p, h.m, n, h.a, z, z),
        Block::B23 => Hermitian3::new(n, h.p, h.m, z, z, h.a),
        Block::B13 => Hermitian3::new(h.p, n, h.m, z, h.a.conj(), z),
    }
}

/// Zero-padded lift of a 2-vector into the given block.
pub fn lift(v: &OctVector, block: Block) -> OctVector {
    let (i, j, _) = block.slots();
    let mut out = OctVector::zeros(3);
    out[i] = v[0];
    out[j] = v[1];
    out
}

/// Lifts a 2x2 eigenpair; the eigenvalue and residual carry over.
pub fn lift_pair(pair: &EigenPair2, block: Block) -> (OctVector, Octonion) {
    (lift(&pair.v, block), pair.lambda)
}

/// Right-hand side of the generalized characteristic equation split into
/// its associator-free part and the six associator terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Char3Terms {
    /// `z (l^3 - tr l^2 + sigma l - det)`
    pub lhs: Octonion,
    /// `b(a(cz)) + conj(c)(conj(a)(conj(b) z)) - (b(ac) + (conj(c) conj(a)) conj(b)) z`
    pub product_terms: Octonion,
    /// `b[a,y,l]`, `[b,ay,l]`, `[b,x,l](l-m)`, `conj(c)[conj(a),x,l]`,
    /// `[conj(c),conj(a)x,l]`, `[conj(c),y,l](l-p)`
    pub associator_terms: [Octonion; 6],
}

impl Char3Terms {
    pub fn residual(&self) -> Octonion {
        self.lhs - self.product_terms - self.associator_terms.iter().copied().sum::<Octonion>()
    }
}

pub fn char3_terms(h: &Hermitian3, v: &OctVector, lambda: Octonion) -> Result<Char3Terms> {
    if v.len() != 3 {
        return Err(Error::ShapeMismatch(format!("expected a 3-vector, got length {}", v.len())));
    }
    let (x, y, z) = (v[0], v[1], v[2]);
    if z.norm_sqr() == 0.0 {
        return Err(Error::ZeroComponent { index: 2 });
    }
    let inv = h.invariants();
    let (a, b, c) = (h.a, h.b, h.c);
    let (ab, bb, cb) = (a.conj(), b.conj(), c.conj());
    let l = lambda;
    let l2 = l * l;
    let poly = l2 * l - l2 * inv.trace + l * inv.sigma - Octonion::real(inv.det);
    let product_terms = b * (a * (c * z)) + cb * (ab * (bb * z)) - (b * (a * c) + (cb * ab) * bb) * z;
    let associator_terms = [
        b * associator(a, y, l),
        associator(b, a * y, l),
        associator(b, x, l) * (l - Octonion::real(h.m)),
        cb * associator(ab, x, l),
        associator(cb, ab * x, l),
        associator(cb, y, l) * (l - Octonion::real(h.p)),
    ];
    Ok(Char3Terms {
        lhs: z * poly,
        product_terms,
        associator_terms,
    })
}

/// Residual of the generalized characteristic equation with `z` as pivot.
pub fn char3_residual(h: &Hermitian3, v: &OctVector, lambda: Octonion) -> Result<Octonion> {
    Ok(char3_terms(h, v, lambda)?.residual())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PivotedChar3 {
    pub residual: Octonion,
    /// Index of the component used as `z`.
    pub pivot: usize,
    /// Whether a cyclic relabeling was applied.
    pub relabeled: bool,
}

/// Cyclic relabeling moving component `pivot` to the last slot.
pub fn relabel(h: &Hermitian3, v: &OctVector, pivot: usize) -> (Hermitian3, OctVector) {
    let order = match pivot {
        0 => [1, 2, 0],
        1 => [2, 0, 1],
        _ => [0, 1, 2],
    };
    let m = h.to_matrix();
    let e = |i: usize, j: usize| m[(order[i], order[j])];
    let h2 = Hermitian3::new(e(0, 0).re(), e(1, 1).re(), e(2, 2).re(), e(0, 1), e(2, 0), e(1, 2));
    let v2 = OctVector::new(order.iter().map(|&k| v[k]).collect());
    (h2, v2)
}

/// [`char3_residual`] after relabeling so that the largest component of `v`
/// is the pivot.
pub fn char3_residual_pivoted(h: &Hermitian3, v: &OctVector, lambda: Octonion) -> Result<PivotedChar3> {
    if v.len() != 3 {
        return Err(Error::ShapeMismatch(format!("expected a 3-vector, got length {}", v.len())));
    }
    let pivot = v.pivot();
    let (h2, v2) = relabel(h, v, pivot);
    Ok(PivotedChar3 {
        residual: char3_residual(&h2, &v2, lambda)?,
        pivot,
        relabeled: pivot != 2,
    })
}

/// `v'(A v)`; equals `lambda` on a normalized right eigenpair.
pub fn rayleigh3(h: &Hermitian3, v: &OctVector, eps: f64) -> Result<Octonion> {
    let norm_sqr = v.norm_sqr();
    if (norm_sqr - 1.0).abs() > eps {
        return Err(Error::NotNormalized { norm_sqr });
    }
    inner(v, &h.to_matrix().matvec(v)?)
}

/// `Re(lambda)` from each row of the eigenvalue equation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReLambda {
    /// `(x.(a y) + z.(b x) + p |x|^2) / |x|^2`
    pub value: f64,
    /// Row 1, 2 and 3 formulas; `None` where the component vanishes.
    pub variants: [Option<f64>; 3],
    pub max_deviation: f64,
}

pub fn re_lambda(h: &Hermitian3, v: &OctVector, eps: f64) -> Result<ReLambda> {
    let (x, y, z) = (v[0], v[1], v[2]);
    if x.norm() <= eps {
        return Err(Error::ZeroComponent { index: 0 });
    }
    let xay = x.dot(&(h.a * y));
    let zbx = z.dot(&(h.b * x));
    let ycz = y.dot(&(h.c * z));
    let row = |num: f64, d: f64, w: Octonion| (w.norm() > eps).then(|| (num + d * w.norm_sqr()) / w.norm_sqr());
    let variants = [row(xay + zbx, h.p, x), row(ycz + xay, h.m, y), row(zbx + ycz, h.n, z)];
    let present: Vec<f64> = variants.iter().flatten().copied().collect();
    let max_deviation = present
        .iter()
        .flat_map(|a| present.iter().map(move |b| (a - b).abs()))
        .fold(0.0, f64::max);
    Ok(ReLambda {
        value: variants[0].expect("x is non-zero"),
        variants,
        max_deviation,
    })
}

/// `[x, a, y] + [z, b, x] + [y, c, z]`.
pub fn im_lambda(h: &Hermitian3, v: &OctVector) -> Octonion {
    let (x, y, z) = (v[0], v[1], v[2]);
    associator(x, h.a, y) + associator(z, h.b, x) + associator(y, h.c, z)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchConfig {
    pub restarts: usize,
    pub max_iterations: usize,
    pub tol: f64,
    pub seed: u64,
    pub constrain_imaginary: bool,
    /// Lower bound on `|Im lambda|` when `constrain_imaginary` is set.
    pub min_imaginary: f64,
    /// Restrict the search to real eigenvalues.
    pub real_only: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            restarts: 16,
            max_iterations: 200,
            tol: 1e-9,
            seed: 42,
            constrain_imaginary: false,
            min_imaginary: 0.3,
            real_only: false,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Usage("restarts must be at least 1".into()));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::InvalidTolerance(format!("search tolerance {} must be positive", self.tol)));
        }
        if self.constrain_imaginary && self.real_only {
            return Err(Error::Usage("real_only and constrain_imaginary are exclusive".into()));
        }
        if self.constrain_imaginary && !(self.min_imaginary.is_finite() && self.min_imaginary > 0.0) {
            return Err(Error::InvalidTolerance(format!(
                "imaginary floor {} must be positive",
                self.min_imaginary
            )));
        }
        Ok(())
    }

    pub fn lm_options(&self) -> LmOptions {
        LmOptions {
            max_iterations: self.max_iterations,
            min_imaginary: self.constrain_imaginary.then_some(self.min_imaginary),
            real_only: self.real_only,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Certificates3 {
    /// Characteristic residual norm under the pivot relabeling
    pub char3: f64,
    pub pivot: usize,
    pub relabeled: bool,
    /// `|v'(Av) - lambda|`
    pub rayleigh: f64,
    /// `|im_lambda - Im(lambda)|`
    pub im_formula: f64,
    /// `|re_lambda - Re(lambda)|` combined with the spread of the row variants
    pub re_formula: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenPair3 {
    pub v: OctVector,
    pub lambda: Octonion,
    /// `|A v - v lambda|`
    pub residual: f64,
    pub certificates: Certificates3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchDiagnostics {
    pub restarts: usize,
    /// Restarts whose residual reached the tolerance.
    pub converged: usize,
    /// Converged restarts failing a certificate.
    pub uncertified: usize,
    pub distinct: usize,
    /// Distinct eigenvalues, ignoring eigenvectors.
    pub distinct_eigenvalues: usize,
    pub real: usize,
    pub nonreal: usize,
    pub best_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub pairs: Vec<EigenPair3>,
    pub diagnostics: SearchDiagnostics,
}

pub fn certify(h: &Hermitian3, v: &OctVector, lambda: Octonion) -> Result<Certificates3> {
    let pc = char3_residual_pivoted(h, v, lambda)?;
    let rayleigh = (rayleigh3(h, v, 1e-9)? - lambda).norm();
    let im_formula = (im_lambda(h, v) - lambda.im()).norm();
    let pivot = v.pivot();
    let (hp, vp) = if pivot == 0 { (*h, v.clone()) } else { relabel(h, v, (pivot + 2) % 3) };
    // the relabeling puts the largest component first so the primary row
    // formula is well conditioned
    let re = re_lambda(&hp, &vp, 1e-12)?;
    let re_formula = (re.value - lambda.re()).abs().max(re.max_deviation);
    Ok(Certificates3 {
        char3: pc.residual.norm(),
        pivot: pc.pivot,
        relabeled: pc.relabeled,
        rayleigh,
        im_formula,
        re_formula,
    })
}

const DEDUP_RADIUS: f64 = 1e-6;

fn same_pair(p: &EigenPair3, q: &EigenPair3) -> bool {
    (p.lambda - q.lambda).norm() <= DEDUP_RADIUS
        && inner(&p.v, &q.v).map_or(false, |s| (s.norm() - 1.0).abs() <= DEDUP_RADIUS)
}

/// Multi-start search for right eigenpairs. Every returned pair has residual
/// at most `cfg.tol` and passes the characteristic-equation and Rayleigh
/// certificates at `10 cfg.tol`. An empty list with diagnostics signals
/// non-convergence.
pub fn eigensearch(h: &Hermitian3, cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    let a = h.to_matrix();
    let runs = search::multi_start(&a, cfg.restarts, cfg.seed, &cfg.lm_options())?;
    let best_residual = runs.iter().map(|r| r.residual).fold(f64::INFINITY, f64::min);
    let mut converged = 0;
    let mut uncertified = 0;
    let mut pairs: Vec<EigenPair3> = Vec::new();
    for run in runs {
        if run.residual > cfg.tol {
            continue;
        }
        converged += 1;
        let certificates = certify(h, &run.v, run.lambda)?;
        if certificates.char3 > 10.0 * cfg.tol || certificates.rayleigh > 10.0 * cfg.tol {
            uncertified += 1;
            continue;
        }
        let pair = EigenPair3 {
            v: run.v,
            lambda: run.lambda,
            residual: run.residual,
            certificates,
        };
        if !pairs.iter().any(|q| same_pair(q, &pair)) {
            pairs.push(pair);
        }
    }
    pairs.sort_by(|p, q| {
        p.lambda
            .re()
            .total_cmp(&q.lambda.re())
            .then(p.lambda.im().norm().total_cmp(&q.lambda.im().norm()))
    });
    let nonreal = pairs.iter().filter(|p| p.lambda.im().norm() > 1e-6).count();
    let mut eigenvalues: Vec<Octonion> = Vec::new();
    for p in &pairs {
        if !eigenvalues.iter().any(|l| (*l - p.lambda).norm() <= DEDUP_RADIUS) {
            eigenvalues.push(p.lambda);
        }
    }
    Ok(SearchOutcome {
        diagnostics: SearchDiagnostics {
            restarts: cfg.restarts,
            converged,
            uncertified,
            distinct: pairs.len(),
            distinct_eigenvalues: eigenvalues.len(),
            real: pairs.len() - nonreal,
            nonreal,
            best_residual,
        },
        pairs,
    })
}

/// `|(v'v) lambda - v'(v lambda)|`.
pub fn app_identity_residual(v: &OctVector, lambda: Octonion) -> f64 {
    let lhs = inner(v, v).expect("same length") * lambda;
    let rhs = inner(v, &v.scale_right(lambda)).expect("same length");
    (lhs - rhs).norm()
}

/// `|A v - v lambda|` for a 3x3 Hermitian matrix.
pub fn pair_residual3(h: &Hermitian3, v: &OctVector, lambda: Octonion) -> Result<f64> {
    let a: OctMatrix = h.to_matrix();
    Ok((&a.matvec(v)? - &v.scale_right(lambda)).norm())
}
