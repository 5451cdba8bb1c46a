//! Non-real eigenvalues of 2x2 octonionic Hermitian matrices.
//!
//! Matrices admitting non-real eigenvalues (on either side) are exactly the
//! family `p I + q J(r)` with `J(r) = [[0, -r], [r, 0]]`, `q != 0` and `r` a
//! pure imaginary unit. Their left eigenvectors are the pairs `(x, y)` with
//! `|x| = |y|` and `x . y = 0` in R^8. This module classifies matrices,
//! constructs left and right eigenpairs, evaluates the generalized
//! characteristic equation and checks the spectral decompositions.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{outer, Hermitian2, OctMatrix, OctVector};
use crate::octonion::{associator, Octonion};
use crate::sampling;
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `A v = lambda v`
    Left,
    /// `A v = v lambda`
    Right,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenPair2 {
    pub v: OctVector,
    pub lambda: Octonion,
    pub side: Side,
    pub residual: f64,
}

/// `|A v - v lambda|` (right) or `|A v - lambda v|` (left).
pub fn pair_residual(a: &OctMatrix, v: &OctVector, lambda: Octonion, side: Side) -> Result<f64> {
    let av = a.matvec(v)?;
    let scaled = match side {
        Side::Right => v.scale_right(lambda),
        Side::Left => v.scale_left(lambda),
    };
    Ok((&av - &scaled).norm())
}

/// Solves `v_p lambda = (Av)_p` on the largest component of `v`.
pub fn right_eigenvalue_of(a: &OctMatrix, v: &OctVector) -> Result<Octonion> {
    let av = a.matvec(v)?;
    let p = v.pivot();
    Ok(v[p].inverse(0.0)? * av[p])
}

/// Solves `lambda v_p = (Av)_p` on the largest component of `v`.
pub fn left_eigenvalue_of(a: &OctMatrix, v: &OctVector) -> Result<Octonion> {
    let av = a.matvec(v)?;
    let p = v.pivot();
    Ok(av[p] * v[p].inverse(0.0)?)
}

/// Result of testing `A = p I + q J(r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AMembership {
    pub in_a: bool,
    pub p: f64,
    pub q: f64,
    pub r_hat: Octonion,
    /// `max(|p - m|, |Re(a)|)`
    pub defect: f64,
}

impl AMembership {
    /// `p I + q J(r_hat)`.
    pub fn matrix(&self) -> OctMatrix {
        Hermitian2::new(self.p, self.p, -(self.r_hat * self.q)).to_matrix()
    }

    /// `Ok(self)` for members, otherwise the `NotInA` diagnostic.
    pub fn require(self, h: &Hermitian2) -> Result<Self> {
        if self.in_a {
            Ok(self)
        } else {
            Err(Error::NotInA {
                p_minus_m: (h.p - h.m).abs(),
                re_a: h.a.re().abs(),
                norm_a: h.a.norm(),
            })
        }
    }
}

/// Classifies `h` against the non-real family. `q` is always non-negative;
/// the off-diagonal is `-r_hat q`.
pub fn classify_in_a(h: &Hermitian2, tol: f64) -> AMembership {
    let im_a = h.a.im();
    let q = im_a.norm();
    let defect = (h.p - h.m).abs().max(h.a.re().abs());
    let in_a = defect <= tol && h.a.norm() > tol;
    let r_hat = if q > 0.0 { -im_a / q } else { Octonion::ZERO };
    AMembership {
        in_a,
        p: h.p,
        q,
        r_hat,
        defect,
    }
}

/// Checks `|x|^2 = |y|^2` and `x . y = 0`, relative to `|v|^2`.
pub fn check_in_v(v: &OctVector, tol: f64) -> Result<()> {
    if v.len() != 2 {
        return Err(Error::ShapeMismatch(format!("expected a 2-vector, got length {}", v.len())));
    }
    let scale = v.norm_sqr().max(f64::MIN_POSITIVE);
    let norm_defect = (v[0].norm_sqr() - v[1].norm_sqr()).abs() / scale;
    let dot_defect = v[0].dot(&v[1]).abs() / scale;
    if v.norm_sqr() == 0.0 || norm_defect > tol || dot_defect > tol {
        return Err(Error::NotInV {
            norm_defect,
            dot_defect,
        });
    }
    Ok(())
}

/// Draws `(x, y)` with `|x| = |y| = 1`, `x . y = 0` by Gram-Schmidt on two
/// uniform R^8 vectors.
pub fn sample_v_with<R: Rng + ?Sized>(rng: &mut R) -> Result<OctVector> {
    const ATTEMPTS: usize = 100;
    for _ in 0..ATTEMPTS {
        let u = sampling::octonion(rng);
        let w = sampling::octonion(rng);
        let Some(x) = u.normalized(1e-8) else { continue };
        let Some(y) = (w - x * w.dot(&x)).normalized(1e-8) else { continue };
        return Ok(OctVector::new(vec![x, y]));
    }
    Err(Error::DegenerateSample { attempts: ATTEMPTS })
}

pub fn sample_v(seed: u64) -> Result<OctVector> {
    sample_v_with(&mut sampling::rng(seed, sampling::stream_id("sample_v")))
}

/// Random member of the non-real family: `p` uniform on `[-1, 1]`, `q`
/// uniform on `[0.1, 2]` and a uniformly oriented unit `r`.
pub fn sample_in_a<R: Rng + ?Sized>(rng: &mut R) -> Hermitian2 {
    let p = sampling::real(rng);
    let q = rng.gen_range(0.1..=2.0);
    let r = sampling::unit_imaginary(rng);
    Hermitian2::new(p, p, -(r * q))
}

/// Random admissible right eigenvalue `p + q (cos t + u sin t)` with `u` a
/// unit orthogonal to `r` and `t` kept away from `0` and `pi`.
pub fn sample_admissible_lambda<R: Rng + ?Sized>(rng: &mut R, m: &AMembership) -> Octonion {
    let u = sampling::unit_imaginary_orthogonal_to(rng, &[m.r_hat]);
    let t: f64 = rng.gen_range(0.1..(std::f64::consts::PI - 0.1));
    Octonion::real(m.p) + (Octonion::real(t.cos()) + u * t.sin()) * m.q
}

/// `p + q (-(r y) conj(x)) / |x|^2`: the left eigenvalue belonging to `v`.
fn left_lambda(m: &AMembership, x: Octonion, y: Octonion) -> Octonion {
    Octonion::real(m.p) + (-(m.r_hat * y) * x.conj()) * (m.q / x.norm_sqr())
}

/// Left eigenpair `A v = lambda v` for `A` in the family and `v` a shared
/// left eigenvector.
pub fn left_pair_from_v(h: &Hermitian2, v: &OctVector, tol: &Tolerance) -> Result<EigenPair2> {
    let m = classify_in_a(h, tol.eps_solve).require(h)?;
    check_in_v(v, tol.eps_solve)?;
    let (x, y) = (v[0], v[1]);
    let lambda = left_lambda(&m, x, y);
    // second equation of the pair: (lambda - p)/q = (r x) conj(y) / |y|^2
    let lambda_alt = Octonion::real(m.p) + ((m.r_hat * x) * y.conj()) * (m.q / y.norm_sqr());
    let scale = 1.0 + lambda.norm();
    if (lambda - lambda_alt).norm() > tol.eps_solve * scale {
        return Err(Error::InvalidPair(format!(
            "the two left-eigenvalue equations disagree: {lambda} vs {lambda_alt}"
        )));
    }
    finish_pair(h, v.clone(), lambda, Side::Left, tol)
}

fn finish_pair(
    h: &Hermitian2,
    v: OctVector,
    lambda: Octonion,
    side: Side,
    tol: &Tolerance,
) -> Result<EigenPair2> {
    let residual = pair_residual(&h.to_matrix(), &v, lambda, side)?;
    if residual > tol.eps_solve * (1.0 + v.norm()) {
        return Err(Error::InvalidPair(format!(
            "constructed pair has residual {residual:e}"
        )));
    }
    Ok(EigenPair2 {
        v,
        lambda,
        side,
        residual,
    })
}

/// First pure imaginary direction, scanning the basis in order, that is
/// orthogonal to the given orthonormal set.
fn lowest_orthogonal_unit(span: &[Octonion]) -> Octonion {
    for q in 1..8 {
        let mut u = Octonion::unit(q);
        for s in span {
            u -= *s * u.dot(s);
        }
        // the complement has dimension >= 4, so some basis unit keeps
        // squared norm >= 4/7
        if let Some(u) = u.normalized(0.5) {
            return u;
        }
    }
    unreachable!("orthogonal complement of a quaternionic span is non-trivial")
}

/// Right eigenpair `A v = v lambda` for an admissible non-real `lambda`:
/// `|lambda - p| = q`, `Im(lambda) . a = 0`, `Im(lambda) != 0`.
///
/// `x` is the lowest-index unit orthogonal to the quaternionic span of
/// `{1, a, lambda, a lambda}`, `y = conj(a) (x (lambda - p)) / q^2`, and the
/// result is normalized to `v'v = 1`.
pub fn right_pair_for_lambda(h: &Hermitian2, lambda: Octonion, tol: &Tolerance) -> Result<EigenPair2> {
    let m = classify_in_a(h, tol.eps_solve).require(h)?;
    let mu = lambda - Octonion::real(m.p);
    let im = lambda.im();
    let im_norm = im.norm();
    if im_norm <= tol.eps_solve {
        return Err(Error::InadmissibleLambda {
            constraint: "Im(lambda) != 0",
            defect: im_norm,
        });
    }
    let norm_defect = (mu.norm() - m.q).abs();
    if norm_defect > tol.eps_solve {
        return Err(Error::InadmissibleLambda {
            constraint: "|lambda - p| = |a|",
            defect: norm_defect,
        });
    }
    let a_hat = -m.r_hat;
    let dot_defect = im.dot(&a_hat).abs();
    if dot_defect > tol.eps_solve {
        return Err(Error::InadmissibleLambda {
            constraint: "lambda . a = 0",
            defect: dot_defect,
        });
    }
    let lambda_hat = (im - a_hat * im.dot(&a_hat)) / im_norm;
    let lambda_hat = lambda_hat / lambda_hat.norm();
    let span = [Octonion::ONE, a_hat, lambda_hat, a_hat * lambda_hat];
    let x = lowest_orthogonal_unit(&span);
    let y = h.a.conj() * (x * mu) / (m.q * m.q);
    let v = OctVector::new(vec![x, y]).normalized();
    finish_pair(h, v, lambda, Side::Right, tol)
}

/// Recomputes the defining residual of `pair` against `h`.
pub fn verify_pair(h: &Hermitian2, pair: &EigenPair2) -> Result<f64> {
    pair_residual(&h.to_matrix(), &pair.v, pair.lambda, pair.side)
}

/// Residuals of the generalized characteristic equation
/// `lambda^2 - lambda tr A + det A = [conj(a), x, y] (lambda - p) / |y|^2`
/// and of its mirrored form `[a, y, x] (lambda - m) / |x|^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Char2Residual {
    pub residual: Octonion,
    pub symmetric: Option<Octonion>,
    /// `|rhs - rhs_symmetric|`
    pub deviation: Option<f64>,
}

impl Char2Residual {
    pub fn max_norm(&self) -> f64 {
        self.residual
            .norm()
            .max(self.symmetric.map_or(0.0, |s| s.norm()))
    }
}

pub fn char2_residual(h: &Hermitian2, v: &OctVector, lambda: Octonion) -> Result<Char2Residual> {
    let (x, y) = (v[0], v[1]);
    if y.norm_sqr() == 0.0 {
        return Err(Error::ZeroComponent { index: 1 });
    }
    let lhs = lambda * lambda - lambda * h.trace() + Octonion::real(h.det());
    let rhs = associator(h.a.conj(), x, y) * (lambda - Octonion::real(h.p)) / y.norm_sqr();
    let rhs_sym = (x.norm_sqr() > 0.0)
        .then(|| associator(h.a, y, x) * (lambda - Octonion::real(h.m)) / x.norm_sqr());
    Ok(Char2Residual {
        residual: lhs - rhs,
        symmetric: rhs_sym.map(|r| lhs - r),
        deviation: rhs_sym.map(|r| (rhs - r).norm()),
    })
}

/// Per-constraint residuals for a candidate right eigenpair. The
/// imaginary-part checks are `None` for real `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Char2Constraints {
    /// `(Re l)^2 - Re l tr A + det A + |Im l|^2`
    pub char_real: f64,
    /// `[conj(a), x, y] / (|x||y|) - 2 Im(l)`
    pub associator: Option<f64>,
    /// `l . a`
    pub lambda_dot_a: Option<f64>,
    /// `max(|l.x|, |a.x|, |l.y|, |a.y|)`
    pub orthogonality: Option<f64>,
    /// `max(0, |Im l| - |a|)`
    pub im_bound: f64,
}

impl Char2Constraints {
    pub fn max_residual(&self) -> f64 {
        [
            Some(self.char_real),
            self.associator,
            self.lambda_dot_a,
            self.orthogonality,
            Some(self.im_bound),
        ]
        .into_iter()
        .flatten()
        .fold(0.0, f64::max)
    }
}

pub fn char2_constraints(h: &Hermitian2, v: &OctVector, lambda: Octonion, tol: f64) -> Char2Constraints {
    let (x, y) = (v[0], v[1]);
    let re = lambda.re();
    let im = lambda.im();
    let char_real = (re * re - re * h.trace() + h.det() + im.norm_sqr()).abs();
    let im_bound = (im.norm() - h.a.norm()).max(0.0);
    if im.norm() <= tol {
        return Char2Constraints {
            char_real,
            associator: None,
            lambda_dot_a: None,
            orthogonality: None,
            im_bound,
        };
    }
    let alt = associator(h.a.conj(), x, y) / (x.norm() * y.norm()) - im * 2.0;
    let orth = [lambda.dot(&x), h.a.dot(&x), lambda.dot(&y), h.a.dot(&y)]
        .into_iter()
        .fold(0.0, |m: f64, d| m.max(d.abs()));
    Char2Constraints {
        char_real,
        associator: Some(alt.norm()),
        lambda_dot_a: Some(lambda.dot(&h.a).abs()),
        orthogonality: Some(orth),
        im_bound,
    }
}

/// `|det(Q Q')|` for `Q = A - lambda I`, with the determinant of the
/// Hermitian square taken as `p'm' - |a'|^2`.
pub fn dieudonne_residual(h: &Hermitian2, lambda: Octonion, tol: &Tolerance) -> Result<f64> {
    let m = classify_in_a(h, tol.eps_solve);
    if !m.in_a {
        return Err(Error::PreconditionViolated(format!(
            "matrix not in the non-real family (defect {:e})",
            m.defect
        )));
    }
    let laz = lambda.dot(&h.a).abs();
    if laz > tol.eps_solve {
        return Err(Error::PreconditionViolated(format!("lambda . a = {laz:e}")));
    }
    let a = h.to_matrix();
    let q = &a - &OctMatrix::identity(2).scale_left(lambda);
    let qq = q.matmul(&q.dagger())?;
    let square = Hermitian2::new(qq[(0, 0)].re(), qq[(1, 1)].re(), qq[(0, 1)]);
    Ok(square.det().abs())
}

/// `(x, y) -> (y, x)`.
pub fn flip(v: &OctVector) -> OctVector {
    OctVector::new(vec![v[1], v[0]])
}

/// Residuals of both spectral decompositions for a right eigenpair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RightDecomposition {
    pub v: OctVector,
    pub lambda_v: Octonion,
    pub w: OctVector,
    pub lambda_w: Octonion,
    /// `|A w - w lambda_w|`
    pub flipped_residual: f64,
    /// `|A - lambda_v (v v') - lambda_w (w w')|`
    pub scalar_left: f64,
    /// `|A - (v lambda_v) v' - (w lambda_w) w'|`
    pub vector_right: f64,
    /// `|((v lambda_v) v') w|`
    pub new_ortho: f64,
    /// `|(lambda_v (v v')) w|`, non-zero in general
    pub nonassociative_witness: f64,
}

impl RightDecomposition {
    pub fn max_residual(&self) -> f64 {
        self.flipped_residual
            .max(self.scalar_left)
            .max(self.vector_right)
            .max(self.new_ortho)
    }
}

pub fn decompose_right(h: &Hermitian2, pair: &EigenPair2, tol: &Tolerance) -> Result<RightDecomposition> {
    if pair.side != Side::Right {
        return Err(Error::InvalidPair("expected a right eigenpair".into()));
    }
    classify_in_a(h, tol.eps_solve).require(h)?;
    let a = h.to_matrix();
    if pair.v.len() != 2 || pair.v.norm() == 0.0 {
        return Err(Error::InvalidPair("eigenvector must be a non-zero 2-vector".into()));
    }
    let v = pair.v.normalized();
    let residual = pair_residual(&a, &v, pair.lambda, Side::Right)?;
    if residual > tol.eps_solve {
        return Err(Error::InvalidPair(format!("residual {residual:e}")));
    }
    let w = flip(&v);
    let lambda_w = right_eigenvalue_of(&a, &w)?;
    let flipped_residual = pair_residual(&a, &w, lambda_w, Side::Right)?;
    if flipped_residual > tol.eps_solve {
        return Err(Error::InvalidPair(format!(
            "flipped vector is not a right eigenvector (residual {flipped_residual:e})"
        )));
    }
    let lambda_v = pair.lambda;
    let vv = outer(&v, &v);
    let ww = outer(&w, &w);
    let scalar_left = (&(&a - &vv.scale_left(lambda_v)) - &ww.scale_left(lambda_w)).frobenius_norm();
    let vlv = outer(&v.scale_right(lambda_v), &v);
    let wlw = outer(&w.scale_right(lambda_w), &w);
    let vector_right = (&(&a - &vlv) - &wlw).frobenius_norm();
    let new_ortho = vlv.matvec(&w)?.norm();
    let nonassociative_witness = vv.scale_left(lambda_v).matvec(&w)?.norm();
    Ok(RightDecomposition {
        v,
        lambda_v,
        w,
        lambda_w,
        flipped_residual,
        scalar_left,
        vector_right,
        new_ortho,
        nonassociative_witness,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeftDecomposition {
    pub v: OctVector,
    pub lambda_v: Octonion,
    pub w: OctVector,
    pub lambda_w: Octonion,
    /// `|A w - lambda_w w|`
    pub flipped_residual: f64,
    /// `|[r, x, y]|`
    pub obstruction: f64,
    /// `|A - lambda_v v v' - lambda_w w w'|`
    pub reconstruction: f64,
}

/// `A = lambda_v v v' + lambda_w w w'` for a left pair whose problem is
/// quaternionic (`[r, x, y] = 0`). Diagonal matrices decompose along the
/// basis vectors.
pub fn decompose_left_quaternionic(
    h: &Hermitian2,
    pair: &EigenPair2,
    tol: &Tolerance,
) -> Result<LeftDecomposition> {
    if pair.side != Side::Left {
        return Err(Error::InvalidPair("expected a left eigenpair".into()));
    }
    let a = h.to_matrix();
    if pair.v.len() != 2 || pair.v.norm() == 0.0 {
        return Err(Error::InvalidPair("eigenvector must be a non-zero 2-vector".into()));
    }
    let v = pair.v.normalized();
    let residual = pair_residual(&a, &v, pair.lambda, Side::Left)?;
    if residual > tol.eps_solve {
        return Err(Error::InvalidPair(format!("residual {residual:e}")));
    }
    let w = flip(&v);
    let membership = classify_in_a(h, tol.eps_solve);
    let (lambda_w, obstruction) = if membership.in_a {
        let obstruction = associator(membership.r_hat, v[0], v[1]).norm();
        if obstruction > tol.eps_solve {
            return Err(Error::NotQuaternionic { obstruction });
        }
        (left_lambda(&membership, w[0], w[1]), obstruction)
    } else if h.a.norm() <= tol.eps_solve {
        (left_eigenvalue_of(&a, &w)?, 0.0)
    } else {
        membership.require(h)?;
        unreachable!()
    };
    let flipped_residual = pair_residual(&a, &w, lambda_w, Side::Left)?;
    let reconstruction = (&(&a - &outer(&v, &v).scale_left(pair.lambda))
        - &outer(&w, &w).scale_left(lambda_w))
        .frobenius_norm();
    Ok(LeftDecomposition {
        v,
        lambda_v: pair.lambda,
        w,
        lambda_w,
        flipped_residual,
        obstruction,
        reconstruction,
    })
}

/// The two real eigenpairs, ascending in `lambda`. Eigenvectors lie in the
/// complex subalgebra spanned by `1` and `a`.
pub fn real_eigen2(h: &Hermitian2, tol: &Tolerance) -> Result<[EigenPair2; 2]> {
    let a = h.to_matrix();
    let mut pairs: Vec<(f64, OctVector)> = if h.a.norm() <= tol.eps_solve {
        vec![
            (h.p, OctVector::new(vec![Octonion::ONE, Octonion::ZERO])),
            (h.m, OctVector::new(vec![Octonion::ZERO, Octonion::ONE])),
        ]
    } else {
        let t = h.trace();
        let disc = ((h.p - h.m).powi(2) + 4.0 * h.a.norm_sqr()).sqrt();
        [(t - disc) / 2.0, (t + disc) / 2.0]
            .into_iter()
            .map(|l| {
                let c1 = OctVector::new(vec![h.a, Octonion::real(l - h.p)]);
                let c2 = OctVector::new(vec![Octonion::real(l - h.m), h.a.conj()]);
                let v = if c1.norm() >= c2.norm() { c1 } else { c2 };
                (l, v.normalized())
            })
            .collect()
    };
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut out = pairs.into_iter().map(|(l, v)| {
        let lambda = Octonion::real(l);
        let residual = pair_residual(&a, &v, lambda, Side::Right).expect("2x2 shapes");
        EigenPair2 {
            v,
            lambda,
            side: Side::Right,
            residual,
        }
    });
    Ok([out.next().unwrap(), out.next().unwrap()])
}

/// Residuals of `A = l_v v v' + l_w w w'` and `(v v') w = 0` for real pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RealDecomposition {
    pub decomp: f64,
    pub ortho: f64,
}

pub fn real_decomposition(h: &Hermitian2, pairs: &[EigenPair2; 2]) -> Result<RealDecomposition> {
    let a = h.to_matrix();
    let [pv, pw] = pairs;
    let vv = outer(&pv.v, &pv.v);
    let ww = outer(&pw.v, &pw.v);
    let decomp = (&(&a - &vv.scale_left(pv.lambda)) - &ww.scale_left(pw.lambda)).frobenius_norm();
    let ortho = vv.matvec(&pw.v)?.norm();
    Ok(RealDecomposition { decomp, ortho })
}

/// Residuals of the matrix forms `U U' = I`, `A U = U D`, `A = (U D) U'`
/// and `(A U) U' = A (U U')` for `U = [v w]`, `D = diag(l_v, l_w)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatrixForm {
    pub unitary: f64,
    pub eigen_equation: f64,
    pub reconstruction: f64,
    pub associativity: f64,
}

impl MatrixForm {
    pub fn max_residual(&self) -> f64 {
        self.unitary
            .max(self.eigen_equation)
            .max(self.reconstruction)
            .max(self.associativity)
    }
}

pub fn matrix_form_check(h: &Hermitian2, pairs: &[EigenPair2; 2]) -> Result<MatrixForm> {
    if pairs.iter().any(|p| p.side != Side::Right) {
        return Err(Error::InvalidPair("matrix forms need right eigenpairs".into()));
    }
    if pairs.iter().any(|p| p.v.len() != 2) {
        return Err(Error::ShapeMismatch("eigenvectors must have length 2".into()));
    }
    let a = h.to_matrix();
    let u = OctMatrix::from_columns(&[pairs[0].v.clone(), pairs[1].v.clone()])?;
    let d = OctMatrix::diagonal(&[pairs[0].lambda, pairs[1].lambda]);
    let ud = u.matmul(&d)?;
    let uu = u.matmul(&u.dagger())?;
    let au = a.matmul(&u)?;
    Ok(MatrixForm {
        unitary: (&uu - &OctMatrix::identity(2)).frobenius_norm(),
        eigen_equation: (&au - &ud).frobenius_norm(),
        reconstruction: (&a - &ud.matmul(&u.dagger())?).frobenius_norm(),
        associativity: (&au.matmul(&u.dagger())? - &a.matmul(&uu)?).frobenius_norm(),
    })
}

/// The typical right eigenpairs of `[[p, -i q], [i q, p]]` for
/// `s = cos(theta) + kl sin(theta)`:
/// `v = (j, k conj(s)) / sqrt 2` with `lambda_v = p + q s`, and the flipped
/// `w = (k conj(s), j) / sqrt 2` with `lambda_w = p - q s`.
pub fn typical_right_pairs(p: f64, q: f64, theta: f64) -> (Hermitian2, EigenPair2, EigenPair2) {
    let h = Hermitian2::new(p, p, -Octonion::I * q);
    let s = Octonion::real(theta.cos()) + Octonion::KL * theta.sin();
    let ks = Octonion::K * s.conj();
    let v = OctVector::new(vec![Octonion::J, ks]).normalized();
    let w = flip(&v);
    let a = h.to_matrix();
    let make = |v: OctVector, lambda: Octonion| {
        let residual = pair_residual(&a, &v, lambda, Side::Right).expect("2x2 shapes");
        EigenPair2 {
            v,
            lambda,
            side: Side::Right,
            residual,
        }
    };
    let pv = make(v, Octonion::real(p) + s * q);
    let pw = make(w, Octonion::real(p) - s * q);
    (h, pv, pw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::inner;
    use crate::sampling;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn o(s: &str) -> Octonion {
        s.parse().unwrap()
    }

    fn v2(x: &str, y: &str) -> OctVector {
        OctVector::new(vec![o(x), o(y)])
    }

    fn example_matrix() -> Hermitian2 {
        Hermitian2::new(1.0, 1.0, o("-i"))
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn classification_examples() {
        let m = classify_in_a(&example_matrix(), 1e-9);
        assert!(m.in_a);
        assert_eq!((m.p, m.q, m.r_hat), (1.0, 1.0, Octonion::I));
        assert!((&m.matrix() - &example_matrix().to_matrix()).frobenius_norm() < 1e-15);
        assert!(!classify_in_a(&Hermitian2::new(1.0, 2.0, o("-i")), 1e-9).in_a);
        assert!(!classify_in_a(&Hermitian2::new(1.0, 1.0, Octonion::ZERO), 1e-9).in_a);
        assert!(!classify_in_a(&Hermitian2::new(1.0, 1.0, o("0.5-i")), 1e-9).in_a);
    }

    #[test]
    fn sampled_v_is_in_v() {
        for seed in 0..50 {
            let v = sample_v(seed).unwrap();
            assert!((v[0].norm_sqr() - v[1].norm_sqr()).abs() < 1e-12);
            assert!(v[0].dot(&v[1]).abs() < 1e-12);
        }
        check_in_v(&v2("1", "k").normalized(), 1e-12).unwrap();
        check_in_v(&v2("j", "l").normalized(), 1e-12).unwrap();
        assert!(check_in_v(&v2("1", "1"), 1e-9).is_err());
        assert!(check_in_v(&v2("1", "2k"), 1e-9).is_err());
    }

    #[test]
    fn left_pair_examples() {
        let p = left_pair_from_v(&example_matrix(), &v2("1", "k").normalized(), &tol()).unwrap();
        assert!((p.lambda - o("1+j")).norm() < 1e-15);
        assert!(p.residual < 1e-15);
        let p = left_pair_from_v(&example_matrix(), &v2("k", "1").normalized(), &tol()).unwrap();
        assert!((p.lambda - o("1-j")).norm() < 1e-15);
        assert!(matches!(
            left_pair_from_v(&Hermitian2::new(1.0, 2.0, o("-i")), &v2("1", "k"), &tol()),
            Err(Error::NotInA { .. })
        ));
        assert!(matches!(
            left_pair_from_v(&example_matrix(), &v2("1", "1"), &tol()),
            Err(Error::NotInV { .. })
        ));
    }

    #[test]
    fn left_multiplication_preserves_left_eigenvectors() {
        let mut rng = sampling::rng(11, 0);
        for _ in 0..200 {
            let r = sampling::unit_imaginary(&mut rng);
            let h = Hermitian2::new(0.3, 0.3, -r * 1.7);
            let v = sample_v_with(&mut rng).unwrap();
            let c = sampling::octonion(&mut rng);
            let moved = v.scale_left(c).scale(1.0 / c.norm());
            check_in_v(&moved, 1e-12).unwrap();
            let pair = left_pair_from_v(&h, &moved, &tol()).unwrap();
            assert!((pair.lambda - Octonion::real(0.3)).norm() - 1.7 < 1e-12);
            assert!(pair.lambda.dot(&r).abs() < 1e-12);
        }
    }

    #[test]
    fn left_multiplication_breaks_real_eigenvectors_outside_family() {
        // Other than real matrices, only the non-real family keeps left
        // eigenvectors under left multiplication.
        let mut rng = sampling::rng(12, 0);
        let t = tol();
        for _ in 0..100 {
            let h = sampling::hermitian2(&mut rng);
            let a = h.to_matrix();
            let [pair, _] = real_eigen2(&h, &t).unwrap();
            let c = sampling::unit_octonion(&mut rng);
            let moved = pair.v.scale_left(c);
            let lambda = left_eigenvalue_of(&a, &moved).unwrap();
            let r = pair_residual(&a, &moved, lambda, Side::Left).unwrap();
            assert!(r > 1e-6, "unexpected left eigenvector, residual {r:e}");
        }
    }

    #[test]
    fn right_pair_spec_example() {
        let p = right_pair_for_lambda(&example_matrix(), o("1+kl"), &tol()).unwrap();
        let want = v2("j", "l").normalized();
        assert!((&p.v - &want).norm() < 1e-15, "{:?}", p.v);
        assert!(p.residual <= 1e-12);
        assert!(verify_pair(&example_matrix(), &p).unwrap() <= 1e-12);
    }

    #[test]
    fn right_pair_rejections() {
        let t = tol();
        assert!(matches!(
            right_pair_for_lambda(&example_matrix(), o("2"), &t),
            Err(Error::InadmissibleLambda { constraint: "Im(lambda) != 0", .. })
        ));
        assert!(matches!(
            right_pair_for_lambda(&example_matrix(), o("1+2kl"), &t),
            Err(Error::InadmissibleLambda { constraint: "|lambda - p| = |a|", .. })
        ));
        assert!(matches!(
            right_pair_for_lambda(&example_matrix(), o("1+i"), &t),
            Err(Error::InadmissibleLambda { constraint: "lambda . a = 0", .. })
        ));
        assert!(matches!(
            right_pair_for_lambda(&Hermitian2::new(1.0, 2.0, o("-i")), o("1+kl"), &t),
            Err(Error::NotInA { .. })
        ));
    }

    #[test]
    fn typical_family_has_unconjugated_eigenvalue() {
        for k in 0..64 {
            let theta = k as f64 * std::f64::consts::TAU / 64.0;
            let (h, pv, pw) = typical_right_pairs(0.4, 1.3, theta);
            assert!(verify_pair(&h, &pv).unwrap() < 1e-14);
            assert!(verify_pair(&h, &pw).unwrap() < 1e-14);
            let constructed = right_pair_for_lambda(&h, pv.lambda, &tol());
            if theta.sin().abs() > 1e-9 {
                assert!(constructed.unwrap().residual < 1e-12);
            }
        }
        // the conjugated eigenvalue does not satisfy the equation off the real axis
        let (h, pv, _) = typical_right_pairs(1.0, 1.0, 0.9);
        let s = Octonion::real(0.9f64.cos()) + Octonion::KL * 0.9f64.sin();
        let r = pair_residual(&h.to_matrix(), &pv.v, Octonion::ONE + s.conj(), Side::Right).unwrap();
        assert!(r > 0.5);
        // theta = pi/2 gives the (j, l) example
        let (_, pv, _) = typical_right_pairs(1.0, 1.0, std::f64::consts::FRAC_PI_2);
        assert!((pv.lambda - o("1+kl")).norm() < 1e-15);
        assert!((&pv.v - &v2("j", "l").normalized()).norm() < 1e-15);
    }

    #[test]
    fn perturbed_lambda_has_large_residual() {
        let mut p = right_pair_for_lambda(&example_matrix(), o("1+kl"), &tol()).unwrap();
        p.lambda += Octonion::real(0.1);
        assert!(verify_pair(&example_matrix(), &p).unwrap() >= 0.05);
    }

    #[test]
    fn char2_on_examples() {
        let r = char2_residual(&example_matrix(), &v2("j", "l"), o("1+kl")).unwrap();
        assert!(r.max_norm() < 1e-15);
        assert!(r.deviation.unwrap() < 1e-15);
        // [conj(a), x, y] (lambda - p) = [i, j, l] kl = 2kl kl = -2
        assert_eq!(associator(o("i"), o("j"), o("l")) * o("kl"), o("-2"));
        let [p0, p1] = real_eigen2(&Hermitian2::new(0.5, -0.25, o("0.3+0.2i-0.7j+k")), &tol()).unwrap();
        for p in [p0, p1] {
            let h = Hermitian2::new(0.5, -0.25, o("0.3+0.2i-0.7j+k"));
            assert!(associator(h.a.conj(), p.v[0], p.v[1]).norm() < 1e-15);
            assert!(char2_residual(&h, &p.v, p.lambda).unwrap().max_norm() < 1e-12);
        }
        let r = char2_residual(&example_matrix(), &v2("0.3+i", "l-k"), o("0.2+j")).unwrap();
        assert!(r.residual.norm() > 1e-3);
        assert!(matches!(
            char2_residual(&example_matrix(), &v2("1", "0"), o("1")),
            Err(Error::ZeroComponent { index: 1 })
        ));
    }

    #[test]
    fn char2_constraints_on_examples() {
        let c = char2_constraints(&example_matrix(), &v2("j", "l"), o("1+kl"), 1e-9);
        assert!(c.max_residual() < 1e-15, "{c:?}");
        assert!(c.associator.is_some());
        let (h, pv, pw) = typical_right_pairs(-0.3, 2.0, 0.77);
        for p in [pv, pw] {
            let c = char2_constraints(&h, &p.v, p.lambda, 1e-9);
            assert!(c.max_residual() < 1e-12, "{c:?}");
        }
        let [p0, _] = real_eigen2(&example_matrix(), &tol()).unwrap();
        let c = char2_constraints(&example_matrix(), &p0.v, p0.lambda, 1e-9);
        assert!(c.associator.is_none() && c.lambda_dot_a.is_none() && c.orthogonality.is_none());
        assert!(c.char_real < 1e-15);
    }

    #[test]
    fn dieudonne_examples() {
        let t = tol();
        assert!(dieudonne_residual(&example_matrix(), o("1+kl"), &t).unwrap() < 1e-15);
        assert!(dieudonne_residual(&example_matrix(), o("1+2kl"), &t).unwrap() > 1.0);
        assert!(dieudonne_residual(&example_matrix(), o("2"), &t).unwrap() < 1e-15);
        assert!(dieudonne_residual(&example_matrix(), o("0"), &t).unwrap() < 1e-15);
        assert!(dieudonne_residual(&example_matrix(), o("1+i"), &t).is_err());
        assert!(dieudonne_residual(&Hermitian2::new(1.0, 2.0, o("i")), o("1"), &t).is_err());
    }

    #[test]
    fn flip_examples() {
        assert_eq!(flip(&v2("j", "l")), v2("l", "j"));
        let v = sample_v(3).unwrap();
        assert_eq!(flip(&flip(&v)), v);
        assert!(inner(&v, &flip(&v)).unwrap().norm() < 1e-15);
    }

    #[test]
    fn right_decomposition_of_example() {
        let p = right_pair_for_lambda(&example_matrix(), o("1+kl"), &tol()).unwrap();
        let d = decompose_right(&example_matrix(), &p, &tol()).unwrap();
        assert!((d.lambda_w - o("1-kl")).norm() < 1e-15);
        assert!(d.max_residual() < 1e-12, "{d:?}");
        assert!((d.nonassociative_witness - 1.0).abs() < 1e-12);
    }

    #[test]
    fn right_decomposition_rejects_left_pairs() {
        let p = left_pair_from_v(&example_matrix(), &v2("1", "k").normalized(), &tol()).unwrap();
        assert!(matches!(
            decompose_right(&example_matrix(), &p, &tol()),
            Err(Error::InvalidPair(_))
        ));
    }

    #[test]
    fn left_decomposition_of_example() {
        let p = left_pair_from_v(&example_matrix(), &v2("1", "k").normalized(), &tol()).unwrap();
        let d = decompose_left_quaternionic(&example_matrix(), &p, &tol()).unwrap();
        assert!((d.lambda_w - o("1-j")).norm() < 1e-15);
        assert!(d.reconstruction < 1e-15);
        assert!(d.flipped_residual < 1e-15);
        let bad = left_pair_from_v(&example_matrix(), &v2("j", "l").normalized(), &tol()).unwrap();
        assert!(matches!(
            decompose_left_quaternionic(&example_matrix(), &bad, &tol()),
            Err(Error::NotQuaternionic { .. })
        ));
        let diag = Hermitian2::new(2.0, 3.0, Octonion::ZERO);
        let e1 = EigenPair2 {
            v: v2("1", "0"),
            lambda: o("2"),
            side: Side::Left,
            residual: 0.0,
        };
        let d = decompose_left_quaternionic(&diag, &e1, &tol()).unwrap();
        assert_eq!(d.lambda_w, o("3"));
        assert_eq!(d.reconstruction, 0.0);
    }

    #[test]
    fn real_eigen_examples() {
        let t = tol();
        let [a, b] = real_eigen2(&example_matrix(), &t).unwrap();
        assert!((a.lambda.re() - 0.0).abs() < 1e-15 && (b.lambda.re() - 2.0).abs() < 1e-15);
        assert!(a.residual < 1e-15 && b.residual < 1e-15);
        let [a, b] = real_eigen2(&Hermitian2::new(2.0, 3.0, Octonion::ZERO), &t).unwrap();
        assert_eq!((a.lambda, b.lambda), (o("2"), o("3")));
        assert_eq!(a.v, v2("1", "0"));
        assert_eq!(b.v, v2("0", "1"));
        let [a, b] = real_eigen2(&Hermitian2::new(1.0, 1.0, Octonion::ZERO), &t).unwrap();
        assert_eq!((a.lambda, b.lambda), (o("1"), o("1")));
        let h = Hermitian2::new(0.5, -0.2, o("0.1-0.4i+0.3jl"));
        let pairs = real_eigen2(&h, &t).unwrap();
        let d = real_decomposition(&h, &pairs).unwrap();
        assert!(d.decomp < 1e-14 && d.ortho < 1e-14, "{d:?}");
    }

    #[test]
    fn matrix_forms() {
        let (h, pv, pw) = typical_right_pairs(1.0, 1.0, std::f64::consts::FRAC_PI_2);
        let f = matrix_form_check(&h, &[pv, pw]).unwrap();
        assert!(f.max_residual() < 1e-12, "{f:?}");
        let h = Hermitian2::new(0.5, -0.2, o("0.1-0.4i+0.3jl"));
        let f = matrix_form_check(&h, &real_eigen2(&h, &tol()).unwrap()).unwrap();
        assert!(f.max_residual() < 1e-12, "{f:?}");
        // non-orthogonal columns
        let bad = EigenPair2 {
            v: OctVector::new(vec![o("1"), o("1")]).scale(FRAC_1_SQRT_2),
            lambda: o("1"),
            side: Side::Right,
            residual: 0.0,
        };
        let f = matrix_form_check(&h, &[bad.clone(), bad]).unwrap();
        assert!(f.unitary > 0.5);
    }
}
