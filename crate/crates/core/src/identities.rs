//! Algebraic identities as residual functions.
//!
//! Scalar identities of the octonions and the vector-associator identities
//! for octonionic column vectors of any length, including the commuting
//! 3-Psi's rule for 2-component spinors.

use crate::error::{Error, Result};
use crate::linalg::{inner, outer, OctMatrix, OctVector};
use crate::octonion::{associator, Octonion};

/// `|conj(ab) - conj(b) conj(a)|`
pub fn antiautomorphism(a: Octonion, b: Octonion) -> f64 {
    ((a * b).conj() - b.conj() * a.conj()).norm()
}

/// `||ab| - |a||b|| / (|a||b|)`
pub fn norm_composition(a: Octonion, b: Octonion) -> f64 {
    let scale = a.norm() * b.norm();
    if scale == 0.0 {
        return (a * b).norm();
    }
    ((a * b).norm() - scale).abs() / scale
}

/// `|a.(xb) - b.(conj(x)a)|`
pub fn dot_transfer(a: Octonion, b: Octonion, x: Octonion) -> f64 {
    (a.dot(&(x * b)) - b.dot(&(x.conj() * a))).abs()
}

/// `|(ax).(bx) - |x|^2 a.b|`
pub fn dot_scaling(a: Octonion, b: Octonion, x: Octonion) -> f64 {
    ((a * x).dot(&(b * x)) - x.norm_sqr() * a.dot(&b)).abs()
}

/// `max(|[b,a,a]|, |[b,a,conj(a)]|)`
pub fn alternativity(a: Octonion, b: Octonion) -> f64 {
    associator(b, a, a).norm().max(associator(b, a, a.conj()).norm())
}

/// `|[a,b,c]d + a[b,c,d] - [ab,c,d] + [a,bc,d] - [a,b,cd]|`
pub fn associator_expansion(a: Octonion, b: Octonion, c: Octonion, d: Octonion) -> f64 {
    let lhs = associator(a, b, c) * d + a * associator(b, c, d);
    let rhs = associator(a * b, c, d) - associator(a, b * c, d) + associator(a, b, c * d);
    (lhs - rhs).norm()
}

/// Largest defect of total antisymmetry of the associator over the five
/// non-trivial permutations.
pub fn associator_antisymmetry(a: Octonion, b: Octonion, c: Octonion) -> f64 {
    let base = associator(a, b, c);
    [
        associator(b, a, c) + base,
        associator(a, c, b) + base,
        associator(c, b, a) + base,
        associator(b, c, a) - base,
        associator(c, a, b) - base,
    ]
    .iter()
    .map(Octonion::norm)
    .fold(0.0, f64::max)
}

/// `|Re [a,b,c]|`
pub fn associator_real_part(a: Octonion, b: Octonion, c: Octonion) -> f64 {
    associator(a, b, c).re().abs()
}

/// Largest `|[.,.,.] + [a,b,c]|` with one argument conjugated.
pub fn associator_conjugate_flip(a: Octonion, b: Octonion, c: Octonion) -> f64 {
    let base = associator(a, b, c);
    [
        associator(a.conj(), b, c),
        associator(a, b.conj(), c),
        associator(a, b, c.conj()),
    ]
    .iter()
    .map(|x| (*x + base).norm())
    .fold(0.0, f64::max)
}

/// Every parenthesization of a word, evaluated.
fn parenthesizations(word: &[Octonion]) -> Vec<Octonion> {
    if word.len() == 1 {
        return vec![word[0]];
    }
    let mut out = Vec::new();
    for split in 1..word.len() {
        for l in parenthesizations(&word[..split]) {
            for r in parenthesizations(&word[split..]) {
                out.push(l * r);
            }
        }
    }
    out
}

/// Largest spread between parenthesizations of all words of length at most
/// `max_len` in `a` and `b`. Zero because any two octonions generate an
/// associative subalgebra.
pub fn two_generator_associativity(a: Octonion, b: Octonion, max_len: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for len in 1..=max_len {
        for mask in 0..(1u32 << len) {
            let word: Vec<Octonion> = (0..len).map(|k| if mask >> k & 1 == 1 { b } else { a }).collect();
            let values = parenthesizations(&word);
            for v in &values[1..] {
                worst = worst.max((*v - values[0]).norm());
            }
        }
    }
    worst
}

fn same_length(vs: &[&OctVector]) -> Result<()> {
    let n = vs[0].len();
    if vs.iter().any(|v| v.len() != n) {
        let lens: Vec<usize> = vs.iter().map(|v| v.len()).collect();
        return Err(Error::ShapeMismatch(format!("vector lengths differ: {lens:?}")));
    }
    Ok(())
}

fn require_spinors(vs: &[&OctVector]) -> Result<()> {
    same_length(vs)?;
    if vs[0].len() != 2 {
        return Err(Error::ShapeMismatch(format!("expected 2-component spinors, got length {}", vs[0].len())));
    }
    Ok(())
}

/// `[U,V,W] = (U V') W - U (V' W)`.
pub fn vector_associator(u: &OctVector, v: &OctVector, w: &OctVector) -> Result<OctVector> {
    same_length(&[u, v, w])?;
    let lhs = outer(u, v).matvec(w)?;
    Ok(&lhs - &u.scale_right(inner(v, w)?))
}

/// `[l,V,W] = (l V') W - l (V' W)`.
pub fn scalar_vector_associator(lambda: Octonion, v: &OctVector, w: &OctVector) -> Result<Octonion> {
    same_length(&[v, w])?;
    let row: Octonion = v.iter().zip(w.iter()).map(|(vi, wi)| (lambda * vi.conj()) * *wi).sum();
    Ok(row - lambda * inner(v, w)?)
}

/// `|V'(V conj(l)) - (V'V) conj(l)|`
pub fn conjugate_relation(v: &OctVector, lambda: Octonion) -> Result<f64> {
    let lc = lambda.conj();
    Ok((inner(v, &v.scale_right(lc))? - inner(v, v)? * lc).norm())
}

/// `[U,V,W] + [U,W,V]`
pub fn polarized_pair(u: &OctVector, v: &OctVector, w: &OctVector) -> Result<OctVector> {
    Ok(&vector_associator(u, v, w)? + &vector_associator(u, w, v)?)
}

/// Sum of `[.,.,.]` over all six orderings of `U, V, W`.
pub fn six_term_sum(u: &OctVector, v: &OctVector, w: &OctVector) -> Result<OctVector> {
    let terms = [
        vector_associator(u, v, w)?,
        vector_associator(u, w, v)?,
        vector_associator(v, w, u)?,
        vector_associator(v, u, w)?,
        vector_associator(w, u, v)?,
        vector_associator(w, v, u)?,
    ];
    Ok(terms.iter().skip(1).fold(terms[0].clone(), |acc, t| &acc + t))
}

/// `max(|tr(U V' + V U') - (V'U + U'V)|, |Im(V'U + U'V)|)`; with `U = V`
/// this is `tr(V V') = V'V` and realness of `V'V`.
pub fn trace_identity(u: &OctVector, v: &OctVector) -> Result<f64> {
    same_length(&[u, v])?;
    let tr = (&outer(u, v) + &outer(v, u)).trace();
    let sym = inner(v, u)? + inner(u, v)?;
    Ok((tr - sym).norm().max(sym.im().norm()))
}

/// `tilde(V V') V` for a 2-component spinor.
pub fn three_psis_residual(v: &OctVector) -> Result<OctVector> {
    require_spinors(&[v])?;
    outer(v, v).tilde()?.matvec(v)
}

/// `(V V') V - V (V'V)`, the same quantity through the trace identity.
pub fn three_psis_via_trace(v: &OctVector) -> Result<OctVector> {
    require_spinors(&[v])?;
    Ok(&outer(v, v).matvec(v)? - &v.scale_right(inner(v, v)?))
}

fn tilde_sum(u: &OctVector, v: &OctVector) -> Result<OctMatrix> {
    Ok(&outer(u, v).tilde()? + &outer(v, u).tilde()?)
}

/// `(tilde(UV') + tilde(VU')) W + (tilde(VW') + tilde(WV')) U
///  + (tilde(WU') + tilde(UW')) V`.
pub fn three_psis_polarized_residual(u: &OctVector, v: &OctVector, w: &OctVector) -> Result<OctVector> {
    require_spinors(&[u, v, w])?;
    let a = tilde_sum(u, v)?.matvec(w)?;
    let b = tilde_sum(v, w)?.matvec(u)?;
    let c = tilde_sum(w, u)?.matvec(v)?;
    Ok(&(&a + &b) + &c)
}

/// The polarized rule rewritten through the trace identity:
/// `(UV' + VU') W - W (U'V + V'U)` summed cyclically.
pub fn three_psis_polarized_via_trace(u: &OctVector, v: &OctVector, w: &OctVector) -> Result<OctVector> {
    require_spinors(&[u, v, w])?;
    let term = |x: &OctVector, y: &OctVector, z: &OctVector| -> Result<OctVector> {
        let m = &outer(x, y) + &outer(y, x);
        Ok(&m.matvec(z)? - &z.scale_right(inner(x, y)? + inner(y, x)?))
    };
    Ok(&(&term(u, v, w)? + &term(v, w, u)?) + &term(w, u, v)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;

    fn o(s: &str) -> Octonion {
        s.parse().unwrap()
    }

    #[test]
    fn scalar_identities() {
        let mut rng = sampling::rng(41, 0);
        for _ in 0..2000 {
            let [a, b, c, d] = std::array::from_fn(|_| sampling::octonion(&mut rng));
            assert!(antiautomorphism(a, b) < 1e-13);
            assert!(norm_composition(a, b) < 1e-13);
            assert!(dot_transfer(a, b, c) < 1e-13);
            assert!(dot_scaling(a, b, c) < 1e-13);
            assert!(alternativity(a, b) < 1e-13);
            assert!(associator_expansion(a, b, c, d) < 1e-13);
            assert!(associator_antisymmetry(a, b, c) < 1e-13);
            assert!(associator_real_part(a, b, c) < 1e-13);
            assert!(associator_conjugate_flip(a, b, c) < 1e-13);
        }
    }

    #[test]
    fn two_generators_associate() {
        let mut rng = sampling::rng(42, 0);
        for _ in 0..20 {
            let a = sampling::octonion(&mut rng);
            let b = sampling::octonion(&mut rng);
            assert!(two_generator_associativity(a, b, 4) < 1e-12);
        }
        // three generators do not
        let w = [o("i"), o("j"), o("l")];
        let v = parenthesizations(&w);
        assert!((v[0] - v[1]).norm() > 1.0);
    }

    #[test]
    fn vector_identities() {
        let mut rng = sampling::rng(43, 0);
        for n in [2, 3, 5] {
            for _ in 0..300 {
                let [u, v, w] = std::array::from_fn(|_| sampling::vector(&mut rng, n));
                let l = sampling::octonion(&mut rng);
                assert!(vector_associator(&w, &v, &v).unwrap().norm() < 1e-13);
                assert!(vector_associator(&v, &v, &v).unwrap().norm() < 1e-13);
                assert!(polarized_pair(&u, &v, &w).unwrap().norm() < 1e-13);
                assert!(polarized_pair(&v, &v, &w).unwrap().norm() < 1e-13);
                assert!(six_term_sum(&u, &v, &w).unwrap().norm() < 1e-13);
                assert!(scalar_vector_associator(l, &v, &v).unwrap().norm() < 1e-13);
                assert!(scalar_vector_associator(o("1"), &v, &w).unwrap().norm() < 1e-13);
                assert!(conjugate_relation(&v, l).unwrap() < 1e-13);
                assert!(trace_identity(&u, &v).unwrap() < 1e-13);
            }
        }
    }

    #[test]
    fn generic_associator_is_nonzero() {
        let u = OctVector::new(vec![o("i"), o("j")]);
        let v = OctVector::new(vec![o("l"), o("1")]);
        let w = OctVector::new(vec![o("k"), o("jl")]);
        assert!(vector_associator(&u, &v, &w).unwrap().norm() > 0.5);
        assert!(scalar_vector_associator(o("i"), &v, &w).unwrap().norm() > 0.5);
    }

    #[test]
    fn three_psis_rule() {
        let mut rng = sampling::rng(44, 0);
        let psi = OctVector::new(vec![o("1"), o("k")]);
        assert!(three_psis_residual(&psi).unwrap().norm() < 1e-15);
        for _ in 0..500 {
            let [u, v, w] = std::array::from_fn(|_| sampling::vector(&mut rng, 2));
            let direct = three_psis_residual(&v).unwrap();
            assert!(direct.norm() < 1e-13);
            assert!((&direct - &three_psis_via_trace(&v).unwrap()).norm() < 1e-13);
            assert!((&direct - &vector_associator(&v, &v, &v).unwrap()).norm() < 1e-13);
            let pol = three_psis_polarized_residual(&u, &v, &w).unwrap();
            assert!(pol.norm() < 1e-12);
            assert!((&pol - &six_term_sum(&u, &v, &w).unwrap()).norm() < 1e-12);
            assert!((&pol - &three_psis_polarized_via_trace(&u, &v, &w).unwrap()).norm() < 1e-12);
            assert!(three_psis_polarized_residual(&v, &v, &v).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn shape_errors() {
        let a = OctVector::zeros(2);
        let b = OctVector::zeros(3);
        assert!(matches!(vector_associator(&a, &a, &b), Err(Error::ShapeMismatch(_))));
        assert!(matches!(three_psis_residual(&b), Err(Error::ShapeMismatch(_))));
        assert!(matches!(scalar_vector_associator(o("1"), &a, &b), Err(Error::ShapeMismatch(_))));
    }
}
