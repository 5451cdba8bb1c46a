//! Levenberg-Marquardt search for right eigenpairs `A v = v lambda` of a
//! square octonionic matrix.
//!
//! The unknowns are the `8n` real coordinates of `v` followed by the 8 of
//! `lambda`. The residual stacks `A v - v lambda` with the normalization
//! defect `|v|^2 - 1`; it is bilinear, so the Jacobian is assembled exactly
//! from basis products.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{OctMatrix, OctVector};
use crate::octonion::Octonion;
use crate::sampling;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LmOptions {
    pub max_iterations: usize,
    /// Keep `|Im lambda|` at or above this value after every step.
    pub min_imaginary: Option<f64>,
    /// Project `lambda` onto the reals after every step.
    pub real_only: bool,
}

impl Default for LmOptions {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            min_imaginary: None,
            real_only: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LmResult {
    pub v: OctVector,
    pub lambda: Octonion,
    /// `|A v - v lambda|` with `v` normalized
    pub residual: f64,
    pub iterations: usize,
}

fn check_shape(a: &OctMatrix, v: &OctVector) -> Result<()> {
    if !a.is_square() || a.rows() != v.len() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} matrix with vector of length {}",
            a.rows(),
            a.cols(),
            v.len()
        )));
    }
    Ok(())
}

/// `A v - v lambda` flattened, followed by `|v|^2 - 1`.
pub fn residual_vector(a: &OctMatrix, v: &OctVector, lambda: Octonion) -> Result<DVector<f64>> {
    check_shape(a, v)?;
    let n = v.len();
    let av = a.matvec(v)?;
    let mut r = DVector::zeros(8 * n + 1);
    for i in 0..n {
        let d = av[i] - v[i] * lambda;
        r.rows_mut(8 * i, 8).copy_from_slice(d.coeffs());
    }
    r[8 * n] = v.norm_sqr() - 1.0;
    Ok(r)
}

/// Exact Jacobian of [`residual_vector`], `(8n + 1) x (8n + 8)`.
pub fn jacobian(a: &OctMatrix, v: &OctVector, lambda: Octonion) -> Result<DMatrix<f64>> {
    check_shape(a, v)?;
    let n = v.len();
    let mut jac = DMatrix::zeros(8 * n + 1, 8 * n + 8);
    for j in 0..n {
        for alpha in 0..8 {
            let e = Octonion::unit(alpha);
            let col = 8 * j + alpha;
            for i in 0..n {
                let mut d = a[(i, j)] * e;
                if i == j {
                    d -= e * lambda;
                }
                jac.view_mut((8 * i, col), (8, 1)).copy_from_slice(d.coeffs());
            }
            jac[(8 * n, col)] = 2.0 * v[j].coeffs()[alpha];
        }
    }
    for beta in 0..8 {
        let e = Octonion::unit(beta);
        let col = 8 * n + beta;
        for i in 0..n {
            let d = -(v[i] * e);
            jac.view_mut((8 * i, col), (8, 1)).copy_from_slice(d.coeffs());
        }
    }
    Ok(jac)
}

/// `|r|^2 / 2`.
pub fn objective(a: &OctMatrix, v: &OctVector, lambda: Octonion) -> Result<f64> {
    Ok(0.5 * residual_vector(a, v, lambda)?.norm_squared())
}

/// Gradient of [`objective`], `J^T r`.
pub fn gradient(a: &OctMatrix, v: &OctVector, lambda: Octonion) -> Result<DVector<f64>> {
    Ok(jacobian(a, v, lambda)?.tr_mul(&residual_vector(a, v, lambda)?))
}

fn pack(v: &OctVector, lambda: Octonion) -> DVector<f64> {
    DVector::from_iterator(
        8 * v.len() + 8,
        v.iter().chain(std::iter::once(&lambda)).flat_map(|o| o.coeffs().iter().copied()),
    )
}

fn unpack(z: &DVector<f64>, n: usize) -> (OctVector, Octonion) {
    let oct = |k: usize| {
        let mut c = [0.0; 8];
        c.copy_from_slice(z.rows(8 * k, 8).as_slice());
        Octonion::from_coeffs(c)
    };
    (OctVector::new((0..n).map(oct).collect()), oct(n))
}

/// Central-difference gradient of [`objective`].
pub fn finite_difference_gradient(
    a: &OctMatrix,
    v: &OctVector,
    lambda: Octonion,
    step: f64,
) -> Result<DVector<f64>> {
    check_shape(a, v)?;
    let n = v.len();
    let z = pack(v, lambda);
    let mut g = DVector::zeros(z.len());
    for k in 0..z.len() {
        let mut plus = z.clone();
        plus[k] += step;
        let mut minus = z.clone();
        minus[k] -= step;
        let (vp, lp) = unpack(&plus, n);
        let (vm, lm) = unpack(&minus, n);
        g[k] = (objective(a, &vp, lp)? - objective(a, &vm, lm)?) / (2.0 * step);
    }
    Ok(g)
}

/// `|g_fd - g| / |g|` at the given point.
pub fn gradient_check(a: &OctMatrix, v: &OctVector, lambda: Octonion, step: f64) -> Result<f64> {
    let g = gradient(a, v, lambda)?;
    let fd = finite_difference_gradient(a, v, lambda, step)?;
    Ok((&fd - &g).norm() / g.norm().max(f64::MIN_POSITIVE))
}

fn project(v: &OctVector, lambda: Octonion, opts: &LmOptions, dir: &mut Octonion) -> (OctVector, Octonion) {
    let v = v.normalized();
    if opts.real_only {
        return (v, Octonion::real(lambda.re()));
    }
    let Some(floor) = opts.min_imaginary else {
        return (v, lambda);
    };
    let im = lambda.im();
    if let Some(u) = im.normalized(1e-300) {
        *dir = u;
    }
    if im.norm() >= floor {
        return (v, lambda);
    }
    (v, Octonion::real(lambda.re()) + *dir * floor)
}

/// Damped Gauss-Newton from `(v0, lambda0)`. `v` is renormalized after each
/// accepted step.
pub fn refine(a: &OctMatrix, v0: &OctVector, lambda0: Octonion, opts: &LmOptions) -> Result<LmResult> {
    check_shape(a, v0)?;
    let n = v0.len();
    let mut dir = lambda0.im().normalized(1e-300).unwrap_or(Octonion::I);
    let (mut v, mut lambda) = project(v0, lambda0, opts, &mut dir);
    let mut r = residual_vector(a, &v, lambda)?;
    let mut cost = 0.5 * r.norm_squared();
    let mut mu: Option<f64> = None;
    let mut iterations = 0;
    while iterations < opts.max_iterations && cost > 1e-32 {
        iterations += 1;
        let jac = jacobian(a, &v, lambda)?;
        let hess = jac.tr_mul(&jac);
        let g = jac.tr_mul(&r);
        let damping = *mu.get_or_insert_with(|| 1e-3 * hess.diagonal().max().max(1e-12));
        let mut accepted = false;
        let mut damping = damping;
        for _ in 0..30 {
            let mut sys = hess.clone();
            for k in 0..sys.nrows() {
                sys[(k, k)] += damping;
            }
            let Some(chol) = sys.cholesky() else {
                damping *= 10.0;
                continue;
            };
            let step = chol.solve(&-&g);
            let z = pack(&v, lambda) + &step;
            let (cand_v, cand_l) = unpack(&z, n);
            let mut cand_dir = dir;
            let (cand_v, cand_l) = project(&cand_v, cand_l, opts, &mut cand_dir);
            let cand_r = residual_vector(a, &cand_v, cand_l)?;
            let cand_cost = 0.5 * cand_r.norm_squared();
            if cand_cost < cost {
                let stalled = cost - cand_cost <= 1e-10 * cost;
                v = cand_v;
                lambda = cand_l;
                dir = cand_dir;
                r = cand_r;
                cost = cand_cost;
                damping = (damping / 3.0).max(1e-300);
                accepted = !stalled;
                break;
            }
            damping *= 4.0;
        }
        mu = Some(damping);
        if !accepted {
            break;
        }
    }
    let residual = (&a.matvec(&v)? - &v.scale_right(lambda)).norm();
    Ok(LmResult {
        v,
        lambda,
        residual,
        iterations,
    })
}

/// Random start: unit `v` and a real part for `lambda` drawn uniformly from
/// `[-|A|, |A|]`, plus a random imaginary offset when the imaginary part is
/// constrained.
pub fn random_start<R: Rng + ?Sized>(
    rng: &mut R,
    a: &OctMatrix,
    min_imaginary: Option<f64>,
) -> Result<(OctVector, Octonion)> {
    let v = sampling::vector(rng, a.rows()).normalized();
    let bound = a.frobenius_norm().max(1.0);
    let mut lambda = Octonion::real(rng.gen_range(-bound..=bound));
    if let Some(floor) = min_imaginary {
        lambda += sampling::imaginary(rng) * floor.max(bound / (a.rows() as f64).sqrt());
    }
    Ok((v, lambda))
}

/// One [`refine`] per restart, seeded by `(seed, restart)`, run in parallel
/// and returned in restart order.
pub fn multi_start(a: &OctMatrix, restarts: usize, seed: u64, opts: &LmOptions) -> Result<Vec<LmResult>> {
    (0..restarts)
        .into_par_iter()
        .map(|k| {
            let mut rng = sampling::rng(seed, k as u64);
            let floor = if opts.real_only { None } else { opts.min_imaginary };
            let (v0, l0) = random_start(&mut rng, a, floor)?;
            refine(a, &v0, l0, opts)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Hermitian2;

    #[test]
    fn analytic_gradient_matches_differences() {
        let mut rng = sampling::rng(21, 0);
        for n in [2, 3] {
            for _ in 0..20 {
                let a = if n == 2 {
                    sampling::hermitian2(&mut rng).to_matrix()
                } else {
                    sampling::hermitian3(&mut rng).to_matrix()
                };
                let v = sampling::vector(&mut rng, n);
                let l = sampling::octonion(&mut rng);
                assert!(gradient_check(&a, &v, l, 1e-6).unwrap() < 1e-6);
            }
        }
    }

    #[test]
    fn converges_on_a_known_pair() {
        let h = Hermitian2::new(1.0, 1.0, -Octonion::I).to_matrix();
        let v0 = OctVector::new(vec![Octonion::J, Octonion::L + Octonion::I * 0.1]);
        let r = refine(&h, &v0, Octonion::ONE + Octonion::KL * 0.9, &LmOptions::default()).unwrap();
        assert!(r.residual < 1e-12, "{r:?}");
    }

    #[test]
    fn constrained_search_respects_the_floor() {
        let h = Hermitian2::new(1.0, 3.0, Octonion::I).to_matrix();
        let opts = LmOptions {
            min_imaginary: Some(0.3),
            ..LmOptions::default()
        };
        for r in multi_start(&h, 8, 3, &opts).unwrap() {
            assert!(r.lambda.im().norm() >= 0.3 - 1e-12);
            assert!(r.residual > 1e-3);
        }
    }

    #[test]
    fn shape_mismatch() {
        let h = Hermitian2::new(1.0, 1.0, Octonion::I).to_matrix();
        assert!(residual_vector(&h, &OctVector::zeros(3), Octonion::ONE).is_err());
    }
}
