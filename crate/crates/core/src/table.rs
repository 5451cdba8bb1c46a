//! The signed basis-product table of the octonions.
//!
//! Basis order is `(1, i, j, k, kl, jl, il, l)`, i.e. `e1..e8`. The table is
//! generated from seven oriented quaternionic triples `(a, b, c)`, each
//! meaning `ab = c`, `bc = a`, `ca = b` (and the reversed products negate).

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Conventional names of the basis units, in coefficient order.
pub const BASIS_NAMES: [&str; 8] = ["1", "i", "j", "k", "kl", "jl", "il", "l"];

/// The seven oriented lines of the projective plane, as basis indices:
/// `(i,j,k) (i,l,il) (j,l,jl) (k,l,kl) (i,kl,jl) (j,il,kl) (k,jl,il)`.
pub const STANDARD_TRIPLES: [[usize; 3]; 7] = [
    [1, 2, 3],
    [1, 7, 6],
    [2, 7, 5],
    [3, 7, 4],
    [1, 4, 5],
    [2, 6, 4],
    [3, 5, 6],
];

#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicationTable {
    sign: [[f64; 8]; 8],
    index: [[usize; 8]; 8],
    triples: [[usize; 3]; 7],
}

/// Builds and validates the standard table.
pub fn build_table() -> Result<MultiplicationTable> {
    MultiplicationTable::from_triples(STANDARD_TRIPLES)
}

/// The process-wide table, built and validated on first use.
///
/// Panics if the standard triples ever fail validation.
pub fn table() -> &'static MultiplicationTable {
    static TABLE: OnceLock<MultiplicationTable> = OnceLock::new();
    TABLE.get_or_init(|| match build_table() {
        Ok(t) => t,
        Err(e) => panic!("{e}"),
    })
}

impl MultiplicationTable {
    /// Generates the table from oriented triples and runs the full
    /// validation suite on the result.
    pub fn from_triples(triples: [[usize; 3]; 7]) -> Result<Self> {
        let mut covered = [[false; 8]; 8];
        for t in &triples {
            for &q in t {
                if !(1..8).contains(&q) {
                    return Err(Error::TableInvalid(format!(
                        "triple {t:?} contains non-imaginary index {q}"
                    )));
                }
            }
            for (u, w) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                if u == w || covered[u][w] {
                    return Err(Error::TableInvalid(format!(
                        "pair ({}, {}) appears on more than one line",
                        BASIS_NAMES[u], BASIS_NAMES[w]
                    )));
                }
                covered[u][w] = true;
                covered[w][u] = true;
            }
        }

        let mut sign = [[0.0; 8]; 8];
        let mut index = [[0usize; 8]; 8];
        for q in 0..8 {
            sign[0][q] = 1.0;
            index[0][q] = q;
            sign[q][0] = 1.0;
            index[q][0] = q;
        }
        for q in 1..8 {
            sign[q][q] = -1.0;
            index[q][q] = 0;
        }
        for &[a, b, c] in &triples {
            for (u, w, r) in [(a, b, c), (b, c, a), (c, a, b)] {
                sign[u][w] = 1.0;
                index[u][w] = r;
                sign[w][u] = -1.0;
                index[w][u] = r;
            }
        }

        let table = MultiplicationTable {
            sign,
            index,
            triples,
        };
        table.validate()?;
        Ok(table)
    }

    pub fn triples(&self) -> &[[usize; 3]; 7] {
        &self.triples
    }

    /// Product of basis units `e_a e_b` as `(sign, index)`.
    pub fn product(&self, a: usize, b: usize) -> (i8, usize) {
        (self.sign[a][b] as i8, self.index[a][b])
    }

    /// Bilinear product of coefficient arrays.
    #[inline]
    pub fn mul_coeffs(&self, a: &[f64; 8], b: &[f64; 8]) -> [f64; 8] {
        let mut out = [0.0; 8];
        for p in 0..8 {
            let ap = a[p];
            if ap == 0.0 {
                continue;
            }
            let sign = &self.sign[p];
            let index = &self.index[p];
            for q in 0..8 {
                out[index[q]] += sign[q] * ap * b[q];
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        let unit = |q: usize| {
            let mut e = [0.0; 8];
            e[q] = 1.0;
            e
        };
        let fail = |msg: String| Err(Error::TableInvalid(msg));

        for q in 0..8 {
            if self.product(0, q) != (1, q) || self.product(q, 0) != (1, q) {
                return fail(format!("e1 is not a two-sided identity for {}", BASIS_NAMES[q]));
            }
        }
        for q in 1..8 {
            if self.product(q, q) != (-1, 0) {
                return fail(format!("{}^2 != -1", BASIS_NAMES[q]));
            }
        }
        for &[a, b, c] in &self.triples {
            for (u, w, r) in [(a, b, c), (b, c, a), (c, a, b)] {
                if self.product(u, w) != (1, r) {
                    return fail(format!(
                        "triple ({}, {}, {}) does not close",
                        BASIS_NAMES[a], BASIS_NAMES[b], BASIS_NAMES[c]
                    ));
                }
            }
        }
        for p in 0..8 {
            for q in 0..8 {
                let (s, _) = self.product(p, q);
                if s.abs() != 1 {
                    return fail(format!(
                        "|{} {}| != 1",
                        BASIS_NAMES[p], BASIS_NAMES[q]
                    ));
                }
            }
        }

        // Linearised alternativity on basis units: [x,y,z] + [y,x,z] = 0 and
        // [x,y,z] + [x,z,y] = 0. Only the octonionic orientations pass.
        let assoc = |a: usize, b: usize, c: usize| {
            let (ea, eb, ec) = (unit(a), unit(b), unit(c));
            let left = self.mul_coeffs(&self.mul_coeffs(&ea, &eb), &ec);
            let right = self.mul_coeffs(&ea, &self.mul_coeffs(&eb, &ec));
            let mut d = [0.0; 8];
            for q in 0..8 {
                d[q] = left[q] - right[q];
            }
            d
        };
        for a in 1..8 {
            for b in 1..8 {
                for c in 1..8 {
                    let abc = assoc(a, b, c);
                    let bac = assoc(b, a, c);
                    let acb = assoc(a, c, b);
                    for q in 0..8 {
                        if abc[q] + bac[q] != 0.0 || abc[q] + acb[q] != 0.0 {
                            return fail(format!(
                                "alternativity fails on ({}, {}, {})",
                                BASIS_NAMES[a], BASIS_NAMES[b], BASIS_NAMES[c]
                            ));
                        }
                    }
                }
            }
        }

        self.check_worked_examples()
    }

    /// The three worked examples the orientation must reproduce: the
    /// quaternionic left eigenpair, the octonionic right eigenpair, and the
    /// spin-operator eigenvalues of (1, k).
    fn check_worked_examples(&self) -> Result<()> {
        const ONE: usize = 0;
        const I: usize = 1;
        const J: usize = 2;
        const K: usize = 3;
        const KL: usize = 4;
        const JL: usize = 5;
        const IL: usize = 6;
        const L: usize = 7;
        let e = |terms: &[(f64, usize)]| {
            let mut out = [0.0; 8];
            for &(c, q) in terms {
                out[q] += c;
            }
            out
        };
        let add = |a: [f64; 8], b: [f64; 8]| {
            let mut out = a;
            for q in 0..8 {
                out[q] += b[q];
            }
            out
        };
        let mul = |a: &[f64; 8], b: &[f64; 8]| self.mul_coeffs(a, b);
        let check = |name: &str, got: [f64; 8], want: [f64; 8]| {
            if got == want {
                Ok(())
            } else {
                Err(Error::TableInvalid(format!(
                    "worked example {name}: got {got:?}, expected {want:?}"
                )))
            }
        };

        // [[1,-i],[i,1]] (1,k)^T = (1+j, k+i)^T = (1+j)(1,k)^T
        let one = e(&[(1.0, ONE)]);
        let minus_i = e(&[(-1.0, I)]);
        let i = e(&[(1.0, I)]);
        let k = e(&[(1.0, K)]);
        let lam = e(&[(1.0, ONE), (1.0, J)]);
        let row0 = add(mul(&one, &one), mul(&minus_i, &k));
        let row1 = add(mul(&i, &one), mul(&one, &k));
        check("left/row0", row0, e(&[(1.0, ONE), (1.0, J)]))?;
        check("left/row1", row1, e(&[(1.0, K), (1.0, I)]))?;
        check("left/lambda0", mul(&lam, &one), row0)?;
        check("left/lambda1", mul(&lam, &k), row1)?;

        // [[1,-i],[i,1]] (j,l)^T = (j-il, l+k)^T = (j,l)^T (1+kl)
        let j = e(&[(1.0, J)]);
        let l = e(&[(1.0, L)]);
        let lam = e(&[(1.0, ONE), (1.0, KL)]);
        let row0 = add(mul(&one, &j), mul(&minus_i, &l));
        let row1 = add(mul(&i, &j), mul(&one, &l));
        check("right/row0", row0, e(&[(1.0, J), (-1.0, IL)]))?;
        check("right/row1", row1, e(&[(1.0, L), (1.0, K)]))?;
        check("right/lambda0", mul(&j, &lam), row0)?;
        check("right/lambda1", mul(&l, &lam), row1)?;

        // L_x (1,k)^T = -((r_x (1,k)^T) l) = (1/2)(-k, 1)^T and
        // L_y (1,k)^T = (1/2)(-kl, l)^T; entries scaled by 2 to stay exact.
        let neg = |a: [f64; 8]| a.map(|c| -c);
        let lx0 = neg(mul(&mul(&l, &k), &l));
        let lx1 = neg(mul(&mul(&l, &one), &l));
        check("spin/x0", lx0, e(&[(-1.0, K)]))?;
        check("spin/x1", lx1, e(&[(1.0, ONE)]))?;
        let ly0 = neg(mul(&k, &l));
        let ly1 = neg(mul(&neg(one), &l));
        check("spin/y0", ly0, e(&[(-1.0, KL)]))?;
        check("spin/y1", ly1, e(&[(1.0, L)]))?;
        // (1,k)(-kl): 1*(-kl) = -kl, k*(-kl) = l
        check("spin/y-eigen", mul(&k, &neg(e(&[(1.0, KL)]))), ly1)?;
        let _ = JL;
        Ok(())
    }
}
