//! Seeded randomized verification suites.
//!
//! Every check draws from its own stream derived from the seed and the
//! check name, so suites can run in any order or in parallel and still
//! produce identical reports. A check passes when its residual is at most
//! its tolerance; lower bounds are reported as the shortfall below the
//! bound with tolerance zero.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::eigen2;
use crate::eigen3::{self, Block, SearchConfig};
use crate::error::{Error, Result};
use crate::identities as id;
use crate::linalg::{Hermitian2, Hermitian3, OctVector};
use crate::octonion::{associator, Octonion};
use crate::sampling::{self, SeededRng};
use crate::search::{self, LmOptions};
use crate::spin::{self, SpinAxis, SpinState};
use crate::table;
use crate::tolerance::Tolerance;

/// Tolerance for constructed eigenpairs and derived equations.
pub const SOLVE_CHECK: f64 = 1e-10;
/// Tolerance for search certificates.
pub const SEARCH_CHECK: f64 = 1e-9;
/// Lowest residual a non-real search may reach outside the family.
pub const FALSIFICATION_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Core,
    Eigen2,
    Spin,
    Eigen3,
    Appendix,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Core, Suite::Eigen2, Suite::Spin, Suite::Eigen3, Suite::Appendix];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Eigen2 => "eigen2",
            Suite::Spin => "spin",
            Suite::Eigen3 => "eigen3",
            Suite::Appendix => "appendix",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub samples: usize,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// A reported quantity that is not pass/fail.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Observation {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: Tolerance,
    pub max_residual: f64,
    pub checks: Vec<Check>,
    pub observations: Vec<Observation>,
    pub pass: bool,
}

struct Runner {
    suite: Suite,
    seed: u64,
    samples: usize,
    checks: Vec<Check>,
    observations: Vec<Observation>,
}

impl Runner {
    fn rng(&self, name: &str) -> SeededRng {
        sampling::rng(self.seed, sampling::stream_id(&format!("{}/{name}", self.suite)))
    }

    fn record(&mut self, name: &str, samples: usize, tolerance: f64, residual: Result<f64>) {
        let residual = residual.unwrap_or(f64::INFINITY);
        self.checks.push(Check {
            name: name.to_string(),
            samples,
            residual,
            tolerance,
            pass: residual <= tolerance,
        });
    }

    /// Largest residual of `f` over `n` draws.
    fn sampled(&mut self, name: &str, n: usize, tolerance: f64, mut f: impl FnMut(&mut SeededRng) -> Result<f64>) {
        let mut rng = self.rng(name);
        let residual = (0..n).try_fold(0.0f64, |acc, _| f(&mut rng).map(|r| acc.max(r)));
        self.record(name, n, tolerance, residual);
    }

    fn fixed(&mut self, name: &str, tolerance: f64, f: impl FnOnce() -> Result<f64>) {
        self.record(name, 1, tolerance, f());
    }

    fn observe(&mut self, name: &str, value: f64) {
        self.observations.push(Observation {
            name: name.to_string(),
            value,
        });
    }

    fn finish(self, tol: &Tolerance) -> VerificationReport {
        let max_residual = self.checks.iter().map(|c| c.residual).fold(0.0, f64::max);
        let pass = self.checks.iter().all(|c| c.pass);
        VerificationReport {
            suite: self.suite.name().to_string(),
            samples: self.samples,
            seed: self.seed,
            tolerance: *tol,
            max_residual,
            checks: self.checks,
            observations: self.observations,
            pass,
        }
    }
}

fn o(s: &str) -> Octonion {
    s.parse().expect("literal octonion")
}

fn pair_of(x: &str, y: &str) -> OctVector {
    OctVector::new(vec![o(x), o(y)])
}

/// Runs one suite, or every suite in order for [`Suite::All`].
pub fn run_suite(suite: Suite, samples: usize, seed: u64, tol: &Tolerance) -> Result<Vec<VerificationReport>> {
    if samples == 0 {
        return Err(Error::Usage("samples must be at least 1".into()));
    }
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    Ok(suites
        .into_par_iter()
        .map(|s| {
            let mut r = Runner {
                suite: s,
                seed,
                samples,
                checks: Vec::new(),
                observations: Vec::new(),
            };
            match s {
                Suite::Core => core_suite(&mut r, tol),
                Suite::Eigen2 => eigen2_suite(&mut r, tol),
                Suite::Spin => spin_suite(&mut r, tol),
                Suite::Eigen3 => eigen3_suite(&mut r, tol),
                Suite::Appendix => appendix_suite(&mut r, tol),
                Suite::All => unreachable!(),
            }
            r.finish(tol)
        })
        .collect())
}

fn core_suite(r: &mut Runner, tol: &Tolerance) {
    let n = r.samples;
    let eps = tol.eps_identity;
    r.fixed("table_invariants", 0.0, || table::build_table().map(|_| 0.0));
    r.fixed("worked_products", 0.0, || {
        let cases = [
            (o("1+j") * o("k"), o("k+i")),
            (o("i") * o("j"), o("k")),
            (o("j") * o("kl"), o("-il")),
            (o("l") * o("kl"), o("k")),
            (associator(o("i"), o("j"), o("l")), o("2kl")),
        ];
        Ok(cases.iter().map(|(x, y)| (*x - *y).norm()).fold(0.0, f64::max))
    });
    let four = |rng: &mut SeededRng| -> [Octonion; 4] { std::array::from_fn(|_| sampling::octonion(rng)) };
    r.sampled("antiautomorphism", n, eps, |g| {
        let [a, b, ..] = four(g);
        Ok(id::antiautomorphism(a, b))
    });
    r.sampled("norm_composition", n, eps, |g| {
        let [a, b, ..] = four(g);
        Ok(id::norm_composition(a, b))
    });
    r.sampled("dot_transfer", n, eps, |g| {
        let [a, b, x, _] = four(g);
        Ok(id::dot_transfer(a, b, x))
    });
    r.sampled("dot_scaling", n, eps, |g| {
        let [a, b, x, _] = four(g);
        Ok(id::dot_scaling(a, b, x))
    });
    r.sampled("alternativity", n, eps, |g| {
        let [a, b, ..] = four(g);
        Ok(id::alternativity(a, b))
    });
    r.sampled("associator_expansion", n, eps, |g| {
        let [a, b, c, d] = four(g);
        Ok(id::associator_expansion(a, b, c, d))
    });
    r.sampled("associator_antisymmetry", n, eps, |g| {
        let [a, b, c, _] = four(g);
        Ok(id::associator_antisymmetry(a, b, c))
    });
    r.sampled("associator_real_part", n, eps, |g| {
        let [a, b, c, _] = four(g);
        Ok(id::associator_real_part(a, b, c))
    });
    r.sampled("associator_conjugate_flip", n, eps, |g| {
        let [a, b, c, _] = four(g);
        Ok(id::associator_conjugate_flip(a, b, c))
    });
    r.sampled("inverse", n, eps, |g| {
        let a = sampling::unit_octonion(g) * g.gen_range(0.5..2.0);
        Ok((a * a.inverse(tol.eps_identity)? - Octonion::ONE).norm())
    });
    r.sampled("two_generator_associativity", n.min(200), SOLVE_CHECK, |g| {
        let [a, b, ..] = four(g);
        Ok(id::two_generator_associativity(a, b, 4))
    });
}

fn eigen2_suite(r: &mut Runner, tol: &Tolerance) {
    let n = r.samples;
    let example = Hermitian2::new(1.0, 1.0, o("-i"));
    r.fixed("left_example", SOLVE_CHECK, || {
        let pair = eigen2::left_pair_from_v(&example, &pair_of("1", "k"), tol)?;
        let d = eigen2::decompose_left_quaternionic(&example, &pair, tol)?;
        Ok((pair.lambda - o("1+j"))
            .norm()
            .max(pair.residual)
            .max((d.lambda_w - o("1-j")).norm())
            .max(d.reconstruction))
    });
    r.fixed("right_example", SOLVE_CHECK, || {
        let pair = eigen2::right_pair_for_lambda(&example, o("1+kl"), tol)?;
        let d = eigen2::decompose_right(&example, &pair, tol)?;
        Ok((&pair.v - &pair_of("j", "l").normalized())
            .norm()
            .max(pair.residual)
            .max((d.lambda_w - o("1-kl")).norm())
            .max(d.max_residual()))
    });
    r.fixed("nonassociative_witness_shortfall", 0.0, || {
        let pair = eigen2::right_pair_for_lambda(&example, o("1+kl"), tol)?;
        let d = eigen2::decompose_right(&example, &pair, tol)?;
        Ok((0.5 - d.nonassociative_witness).max(0.0))
    });
    r.sampled("left_pairs", n, SOLVE_CHECK, |g| {
        let h = eigen2::sample_in_a(g);
        let m = eigen2::classify_in_a(&h, tol.eps_solve);
        let v = eigen2::sample_v_with(g)?;
        let pair = eigen2::left_pair_from_v(&h, &v, tol)?;
        let mu = pair.lambda - Octonion::real(m.p);
        Ok(pair.residual.max((mu.norm() - m.q).abs()).max(pair.lambda.dot(&m.r_hat).abs()))
    });
    r.sampled("left_scaling_closure", n, SOLVE_CHECK, |g| {
        let h = eigen2::sample_in_a(g);
        let v = eigen2::sample_v_with(g)?.scale_left(sampling::unit_octonion(g));
        eigen2::check_in_v(&v, tol.eps_solve)?;
        Ok(eigen2::left_pair_from_v(&h, &v, tol)?.residual)
    });
    r.sampled("right_pairs", n, SOLVE_CHECK, |g| {
        let h = eigen2::sample_in_a(g);
        let m = eigen2::classify_in_a(&h, tol.eps_solve);
        let lambda = eigen2::sample_admissible_lambda(g, &m);
        let pair = eigen2::right_pair_for_lambda(&h, lambda, tol)?;
        let constraints = eigen2::char2_constraints(&h, &pair.v, lambda, tol.eps_solve);
        let char2 = eigen2::char2_residual(&h, &pair.v, lambda)?;
        Ok(pair.residual.max(constraints.max_residual()).max(char2.max_norm()))
    });
    r.sampled("right_decomposition", n, SOLVE_CHECK, |g| {
        let h = eigen2::sample_in_a(g);
        let m = eigen2::classify_in_a(&h, tol.eps_solve);
        let pair = eigen2::right_pair_for_lambda(&h, eigen2::sample_admissible_lambda(g, &m), tol)?;
        Ok(eigen2::decompose_right(&h, &pair, tol)?.max_residual())
    });
    r.sampled("dieudonne", n, SOLVE_CHECK, |g| {
        let h = eigen2::sample_in_a(g);
        let m = eigen2::classify_in_a(&h, tol.eps_solve);
        eigen2::dieudonne_residual(&h, eigen2::sample_admissible_lambda(g, &m), tol)
    });
    r.sampled("real_pairs", n, SOLVE_CHECK, |g| {
        let h = sampling::hermitian2(g);
        let pairs = eigen2::real_eigen2(&h, tol)?;
        let d = eigen2::real_decomposition(&h, &pairs)?;
        let mut worst = d.decomp.max(d.ortho);
        for p in &pairs {
            worst = worst.max(p.residual).max(eigen2::char2_residual(&h, &p.v, p.lambda)?.max_norm());
        }
        Ok(worst)
    });
    r.sampled("matrix_forms", n, SOLVE_CHECK, |g| {
        let (p, q, theta) = (sampling::real(g), g.gen_range(0.1..2.0), g.gen_range(0.0..TAU));
        let (h, pv, pw) = eigen2::typical_right_pairs(p, q, theta);
        let typical = eigen2::matrix_form_check(&h, &[pv, pw])?.max_residual();
        let h = sampling::hermitian2(g);
        let real = eigen2::matrix_form_check(&h, &eigen2::real_eigen2(&h, tol)?)?.max_residual();
        Ok(typical.max(real))
    });
    r.fixed("typical_family_grid", SOLVE_CHECK, || {
        let mut worst: f64 = 0.0;
        for k in 0..64 {
            let (h, pv, pw) = eigen2::typical_right_pairs(1.0, 1.0, k as f64 * TAU / 64.0);
            worst = worst.max(eigen2::verify_pair(&h, &pv)?).max(eigen2::verify_pair(&h, &pw)?);
        }
        let (_, pv, _) = eigen2::typical_right_pairs(1.0, 1.0, FRAC_PI_2);
        Ok(worst.max((pv.lambda - o("1+kl")).norm()))
    });
    let matrices = (n / 10).clamp(1, 100);
    let mut best = f64::INFINITY;
    let mut rng = r.rng("nonreal_outside_family");
    let opts = LmOptions {
        min_imaginary: Some(0.3),
        ..LmOptions::default()
    };
    let mut failure = None;
    for k in 0..matrices {
        let h = sample_outside_family(&mut rng);
        match search::multi_start(&h.to_matrix(), 20, rng.gen(), &opts) {
            Ok(runs) => best = runs.iter().map(|x| x.residual).fold(best, f64::min),
            Err(e) => failure = Some((k, e)),
        }
    }
    let residual = match failure {
        Some((_, e)) => Err(e),
        None => Ok((FALSIFICATION_FLOOR - best).max(0.0)),
    };
    r.record("nonreal_outside_family_shortfall", matrices, 0.0, residual);
    r.observe("nonreal_outside_family_best_residual", best);
}

/// Random Hermitian 2x2 matrix with `|p - m| >= 0.5` or `|Re a| >= 0.5`.
pub fn sample_outside_family<R: Rng + ?Sized>(rng: &mut R) -> Hermitian2 {
    let mut h = sampling::hermitian2(rng);
    let gap = rng.gen_range(0.5..1.5) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
    if rng.gen::<bool>() {
        h.m = h.p + gap;
    } else {
        let mut c = *h.a.coeffs();
        c[0] = gap;
        h.a = Octonion::from_coeffs(c);
    }
    h
}

fn spin_suite(r: &mut Runner, tol: &Tolerance) {
    let n = r.samples;
    let eps = tol.eps_identity;
    let plus = SpinState::psi_plus();
    let minus = SpinState::psi_minus();
    let expected = [(SpinAxis::X, o("-0.5k")), (SpinAxis::Y, o("-0.5kl")), (SpinAxis::Z, o("0.5"))];
    for (axis, lambda) in expected {
        r.fixed(&format!("psi_plus_l{axis}"), eps, || {
            let got = spin::right_eigenvalue(axis, &plus, eps)?;
            Ok((got - lambda).norm().max(spin::apply_l(axis, &plus).distance(&plus.scale_right(lambda))))
        });
    }
    for axis in SpinAxis::ALL {
        r.fixed(&format!("psi_minus_l{axis}"), eps, || {
            let lambda = spin::right_eigenvalue(axis, &minus, eps)?;
            Ok(spin::apply_l(axis, &minus).distance(&minus.scale_right(lambda)))
        });
    }
    r.fixed("commutator", eps, || {
        let (xy, yx) = spin::commutator_terms(&plus);
        let pl = plus.scale_right(Octonion::L);
        let diff = SpinState { psi: &xy.psi - &yx.psi };
        Ok(xy
            .distance(&pl)
            .max(yx.distance(&pl.scale_right(o("-1"))))
            .max(diff.distance(&pl.scale_right(o("2")))))
    });
    r.fixed("phase_family", eps, || {
        let mut worst: f64 = 0.0;
        for k in 0..64 {
            let t = k as f64 * TAU / 64.0;
            let psi = spin::phase_state(t);
            let e2 = Octonion::unit_complex(Octonion::L, 2.0 * t, 0.0)?;
            for (axis, lambda) in [
                (SpinAxis::X, Octonion::K * e2 * -0.5),
                (SpinAxis::Y, Octonion::KL * e2 * -0.5),
                (SpinAxis::Z, o("0.5")),
            ] {
                worst = worst.max(spin::apply_l(axis, &psi).distance(&psi.scale_right(lambda)));
            }
        }
        Ok(worst)
    });
    r.fixed("inner_products", eps, || {
        Ok(spin::spin_inner(&plus, &minus)
            .norm()
            .max((spin::spin_inner(&plus, &plus) - o("2")).norm()))
    });
    r.sampled("self_adjoint", n, eps, |g| {
        let psi = SpinState { psi: sampling::vector(g, 2) };
        let chi = SpinState { psi: sampling::vector(g, 2) };
        Ok(SpinAxis::ALL
            .iter()
            .map(|a| {
                (spin::spin_inner(&spin::apply_l(*a, &psi), &chi) - spin::spin_inner(&psi, &spin::apply_l(*a, &chi)))
                    .norm()
            })
            .fold(0.0, f64::max))
    });
    r.sampled("projection", n, eps, |g| {
        let p = spin::pi_project(sampling::octonion(g));
        let q = spin::pi_project(sampling::octonion(g));
        Ok((spin::pi_project(p) - p).norm().max((spin::pi_project(p * q) - p * q).norm()))
    });
}

fn eigen3_suite(r: &mut Runner, tol: &Tolerance) {
    let n = r.samples;
    let eps = tol.eps_identity;
    r.sampled("app_identity", n, eps, |g| {
        Ok(eigen3::app_identity_residual(&sampling::vector(g, 3), sampling::octonion(g)))
    });
    r.sampled("im_formula", n, eps, |g| {
        let h = sampling::hermitian3(g);
        let v = sampling::vector(g, 3).normalized();
        Ok((eigen3::rayleigh3(&h, &v, tol.eps_solve)?.im() - eigen3::im_lambda(&h, &v)).norm())
    });
    let example = Hermitian2::new(1.0, 1.0, o("-i"));
    r.fixed("embedded_example", SOLVE_CHECK, || {
        let pair = eigen2::right_pair_for_lambda(&example, o("1+kl"), tol)?;
        let mut worst: f64 = 0.0;
        for block in Block::ALL {
            let h = eigen3::embed2(&example, 5.0, block);
            let (v, l) = eigen3::lift_pair(&pair, block);
            let c = eigen3::certify(&h, &v, l)?;
            worst = worst
                .max(eigen3::pair_residual3(&h, &v, l)?)
                .max(c.char3)
                .max(c.rayleigh)
                .max(c.im_formula)
                .max(c.re_formula);
        }
        Ok(worst)
    });
    let search_tol = SEARCH_CHECK / 10.0;
    let seed = r.seed;
    r.fixed("diagonal_search", SEARCH_CHECK, || {
        let h = Hermitian3::new(1.0, 2.0, 3.0, Octonion::ZERO, Octonion::ZERO, Octonion::ZERO);
        let cfg = SearchConfig {
            tol: search_tol,
            seed,
            ..SearchConfig::default()
        };
        let out = eigen3::eigensearch(&h, &cfg)?;
        if out.pairs.len() != 3 {
            return Ok(f64::INFINITY);
        }
        Ok(out
            .pairs
            .iter()
            .zip([1.0, 2.0, 3.0])
            .map(|(p, want)| (p.lambda - Octonion::real(want)).norm())
            .fold(0.0, f64::max))
    });
    let matrices = (n / 250).clamp(1, 4);
    let mut rng = r.rng("certified_search");
    let mut worst: f64 = 0.0;
    let mut found = 0usize;
    let mut real_counts = Vec::new();
    let mut failure = None;
    for _ in 0..matrices {
        let h = sampling::hermitian3(&mut rng);
        let restart_seed = rng.gen();
        for real_only in [false, true] {
            let cfg = SearchConfig {
                tol: search_tol,
                seed: restart_seed,
                real_only,
                restarts: if real_only { 32 } else { 8 },
                ..SearchConfig::default()
            };
            match eigen3::eigensearch(&h, &cfg) {
                Ok(out) => {
                    found += out.pairs.len();
                    if real_only {
                        real_counts.push(out.diagnostics.distinct_eigenvalues as f64);
                    }
                    for p in &out.pairs {
                        let c = &p.certificates;
                        worst = worst.max(c.char3).max(c.rayleigh).max(c.im_formula).max(c.re_formula);
                    }
                }
                Err(e) => failure = Some(e),
            }
        }
    }
    let residual = match failure {
        Some(e) => Err(e),
        None if found == 0 => Ok(f64::INFINITY),
        None => Ok(worst),
    };
    r.record("certified_search", found, SEARCH_CHECK, residual);
    r.observe(
        "real_eigenvalues_found_min",
        real_counts.iter().copied().fold(f64::INFINITY, f64::min),
    );
    r.observe("real_eigenvalues_found_max", real_counts.iter().copied().fold(0.0, f64::max));
    r.fixed("embedded_nonreal_search", SEARCH_CHECK, || {
        let h = eigen3::embed2(&example, 5.0, Block::B12);
        let cfg = SearchConfig {
            tol: search_tol,
            seed,
            constrain_imaginary: true,
            ..SearchConfig::default()
        };
        let out = eigen3::eigensearch(&h, &cfg)?;
        if out.pairs.is_empty() {
            return Ok(f64::INFINITY);
        }
        // every non-real eigenvalue of the embedded block is admissible
        Ok(out
            .pairs
            .iter()
            .map(|p| ((p.lambda - o("1")).norm() - 1.0).abs().max(p.lambda.dot(&o("i")).abs()))
            .fold(0.0, f64::max))
    });
}

fn appendix_suite(r: &mut Runner, tol: &Tolerance) {
    let n = r.samples;
    let eps = tol.eps_identity;
    for dim in [2usize, 3] {
        let three = move |g: &mut SeededRng| -> [OctVector; 3] { std::array::from_fn(|_| sampling::vector(g, dim)) };
        r.sampled(&format!("master_n{dim}"), n, eps, |g| {
            let [v, w, _] = three(g);
            Ok(id::vector_associator(&w, &v, &v)?.norm())
        });
        r.sampled(&format!("cube_n{dim}"), n, eps, |g| {
            let [v, ..] = three(g);
            Ok(id::vector_associator(&v, &v, &v)?.norm())
        });
        r.sampled(&format!("polarized_pair_n{dim}"), n, eps, |g| {
            let [u, v, w] = three(g);
            Ok(id::polarized_pair(&u, &v, &w)?.norm().max(id::polarized_pair(&v, &v, &w)?.norm()))
        });
        r.sampled(&format!("six_term_n{dim}"), n, eps, |g| {
            let [u, v, w] = three(g);
            Ok(id::six_term_sum(&u, &v, &w)?.norm())
        });
        r.sampled(&format!("scalar_associator_n{dim}"), n, eps, |g| {
            let [v, w, _] = three(g);
            let l = sampling::octonion(g);
            Ok(id::scalar_vector_associator(l, &v, &v)?
                .norm()
                .max(id::scalar_vector_associator(Octonion::ONE, &v, &w)?.norm()))
        });
        r.sampled(&format!("conjugate_relation_n{dim}"), n, eps, |g| {
            let [v, ..] = three(g);
            id::conjugate_relation(&v, sampling::octonion(g))
        });
        r.sampled(&format!("trace_identity_n{dim}"), n, eps, |g| {
            let [u, v, _] = three(g);
            Ok(id::trace_identity(&u, &v)?.max(id::trace_identity(&v, &v)?))
        });
    }
    let spinors = |g: &mut SeededRng| -> [OctVector; 3] { std::array::from_fn(|_| sampling::vector(g, 2)) };
    r.sampled("three_psis", n, eps, |g| {
        let [v, ..] = spinors(g);
        let direct = id::three_psis_residual(&v)?;
        let cube = id::vector_associator(&v, &v, &v)?;
        let traced = id::three_psis_via_trace(&v)?;
        Ok(direct.norm().max((&direct - &cube).norm()).max((&direct - &traced).norm()))
    });
    r.sampled("three_psis_polarized", n, eps, |g| {
        let [u, v, w] = spinors(g);
        let pol = id::three_psis_polarized_residual(&u, &v, &w)?;
        let six = id::six_term_sum(&u, &v, &w)?;
        let traced = id::three_psis_polarized_via_trace(&u, &v, &w)?;
        Ok(pol.norm().max((&pol - &six).norm()).max((&pol - &traced).norm()))
    });
}
