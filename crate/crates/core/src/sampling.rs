//! Seeded random inputs. Coefficients are i.i.d. uniform on [-1, 1].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Hermitian2, Hermitian3, OctVector};
use crate::octonion::Octonion;

pub type SeededRng = ChaCha8Rng;

/// Generator for `(seed, stream)`; distinct streams are independent.
pub fn rng(seed: u64, stream: u64) -> SeededRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Stable stream id for a named sample stream.
pub fn stream_id(name: &str) -> u64 {
    // FNV-1a
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

pub fn octonion<R: Rng + ?Sized>(rng: &mut R) -> Octonion {
    let mut c = [0.0; 8];
    for x in &mut c {
        *x = rng.gen_range(-1.0..=1.0);
    }
    Octonion::new(c).expect("uniform samples are finite")
}

pub fn imaginary<R: Rng + ?Sized>(rng: &mut R) -> Octonion {
    octonion(rng).im()
}

pub fn unit_octonion<R: Rng + ?Sized>(rng: &mut R) -> Octonion {
    loop {
        if let Some(u) = octonion(rng).normalized(1e-3) {
            return u;
        }
    }
}

pub fn unit_imaginary<R: Rng + ?Sized>(rng: &mut R) -> Octonion {
    loop {
        if let Some(u) = imaginary(rng).normalized(1e-3) {
            return u;
        }
    }
}

/// Unit imaginary orthogonal to every (unit, mutually orthogonal) entry of
/// `basis`.
pub fn unit_imaginary_orthogonal_to<R: Rng + ?Sized>(rng: &mut R, basis: &[Octonion]) -> Octonion {
    loop {
        let mut u = imaginary(rng);
        for b in basis {
            u -= *b * u.dot(b);
        }
        if let Some(u) = u.normalized(1e-3) {
            return u;
        }
    }
}

pub fn vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> OctVector {
    (0..n).map(|_| octonion(rng)).collect::<Vec<_>>().into()
}

pub fn real<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.gen_range(-1.0..=1.0)
}

pub fn hermitian2<R: Rng + ?Sized>(rng: &mut R) -> Hermitian2 {
    Hermitian2::new(real(rng), real(rng), octonion(rng))
}

pub fn hermitian3<R: Rng + ?Sized>(rng: &mut R) -> Hermitian3 {
    Hermitian3::new(
        real(rng),
        real(rng),
        real(rng),
        octonion(rng),
        octonion(rng),
        octonion(rng),
    )
}
