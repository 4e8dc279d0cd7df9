//! Generic matrices and coefficients of characteristic polynomials.

use crate::error::{Error, Result};
use crate::field::FieldTag;
use crate::word::{Letter, Word};

use super::poly::Poly;

/// Square matrix over the polynomial ring in the entries `x_{ij}(k)` of `d`
/// generic `n x n` matrices. Variable `x_{ij}(k)` has index
/// `(k-1) n^2 + (i-1) n + (j-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<Poly>,
}

pub fn var_index(n: usize, k: Letter, i: usize, j: usize) -> usize {
    (k as usize - 1) * n * n + (i - 1) * n + (j - 1)
}

impl PolyMatrix {
    pub fn identity(field: FieldTag, n: usize, nvars: usize) -> Self {
        let mut entries = vec![Poly::zero(field, nvars); n * n];
        for i in 0..n {
            entries[i * n + i] = Poly::one(field, nvars);
        }
        PolyMatrix { n, entries }
    }

    /// The generic matrix `X_k` among `d` of them.
    pub fn generic(field: FieldTag, n: usize, d: usize, k: Letter) -> Self {
        assert!(k >= 1 && k as usize <= d);
        let nvars = n * n * d;
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                entries.push(Poly::var(field, nvars, var_index(n, k, i, j)));
            }
        }
        PolyMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `(i, j)`, 0-based.
    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        let n = self.n;
        let field = self.entries[0].field();
        let nvars = self.entries[0].nvars();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Poly::zero(field, nvars);
                for l in 0..n {
                    acc.add_assign(&self.entry(i, l).mul(other.entry(l, j)));
                }
                entries.push(acc);
            }
        }
        PolyMatrix { n, entries }
    }

    pub fn trace(&self) -> Poly {
        let mut acc = Poly::zero(self.entries[0].field(), self.entries[0].nvars());
        for i in 0..self.n {
            acc.add_assign(self.entry(i, i));
        }
        acc
    }
}

/// Largest word length accepted by [`eval_word`].
pub const MAX_EVAL_DEGREE: usize = 16;

/// `X_a = X_{i_1} ... X_{i_r}` for `a = x_{i_1} ... x_{i_r}`.
pub fn eval_word(field: FieldTag, n: usize, d: usize, a: &Word) -> Result<PolyMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if a.max_letter() as usize > d {
        return Err(Error::InvalidArgument(format!(
            "word {a} has letters beyond x{d}"
        )));
    }
    if a.len() > MAX_EVAL_DEGREE {
        return Err(Error::TooLarge {
            what: "word degree",
            value: a.len() as u128,
            limit: MAX_EVAL_DEGREE as u128,
        });
    }
    let gens: Vec<PolyMatrix> = (1..=d as Letter)
        .map(|k| PolyMatrix::generic(field, n, d, k))
        .collect();
    let mut it = a.letters().iter();
    let mut m = gens[*it.next().expect("words are nonempty") as usize - 1].clone();
    for k in it {
        m = m.mul(&gens[*k as usize - 1]);
    }
    Ok(m)
}

// polynomials in an auxiliary variable, coefficients in the ambient ring
type LPoly = Vec<Poly>;

fn l_add(a: &LPoly, b: &LPoly) -> LPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut r = long.clone();
    for (i, c) in short.iter().enumerate() {
        r[i].add_assign(c);
    }
    r
}

fn l_mul(a: &LPoly, b: &LPoly) -> LPoly {
    let z = a[0].field();
    let nv = a[0].nvars();
    let mut r = vec![Poly::zero(z, nv); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if !x.is_zero() && !y.is_zero() {
                r[i + j].add_assign(&x.mul(y));
            }
        }
    }
    r
}

fn l_det(m: &[Vec<LPoly>]) -> LPoly {
    let k = m.len();
    if k == 1 {
        return m[0][0].clone();
    }
    let mut acc: Option<LPoly> = None;
    for j in 0..k {
        let minor: Vec<Vec<LPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let mut term = l_mul(&m[0][j], &l_det(&minor));
        if j % 2 == 1 {
            term = term.iter().map(Poly::neg).collect();
        }
        acc = Some(match acc {
            None => term,
            Some(a) => l_add(&a, &term),
        });
    }
    acc.expect("matrix is nonempty")
}

/// Coefficient of `lambda^{n-t}` in `det(M + lambda E)`, by cofactor
/// expansion.
pub fn sigma(t: usize, m: &PolyMatrix) -> Result<Poly> {
    let n = m.n;
    if t > n {
        return Err(Error::InvalidArgument(format!(
            "sigma_{t} of a {n} x {n} matrix"
        )));
    }
    let field = m.entries[0].field();
    let nv = m.entries[0].nvars();
    if t == 0 {
        return Ok(Poly::one(field, nv));
    }
    let rows: Vec<Vec<LPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut e = vec![m.entry(i, j).clone()];
                    if i == j {
                        e.push(Poly::one(field, nv));
                    }
                    e
                })
                .collect()
        })
        .collect();
    let det = l_det(&rows);
    Ok(det
        .get(n - t)
        .cloned()
        .unwrap_or_else(|| Poly::zero(field, nv)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Coeff;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn generic_and_products() {
        let f = FieldTag::Rational;
        let x1 = eval_word(f, 2, 2, &w("x1")).unwrap();
        assert_eq!(x1, PolyMatrix::generic(f, 2, 2, 1));
        let tr = eval_word(f, 2, 2, &w("x1.x2")).unwrap().trace();
        assert_eq!(tr.len(), 4);
        let m = eval_word(f, 2, 2, &w("x1.x2.x1")).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(m.entry(i, j).block_degree(4), Some(vec![2, 1]));
            }
        }
        assert!(eval_word(f, 2, 1, &w("x2")).is_err());
    }

    #[test]
    fn sigma_two_by_two() {
        let f = FieldTag::Rational;
        let x = PolyMatrix::generic(f, 2, 1, 1);
        let v = |i| Poly::var(f, 4, i);
        assert_eq!(sigma(0, &x).unwrap(), Poly::one(f, 4));
        assert_eq!(sigma(1, &x).unwrap(), v(0).add(&v(3)));
        assert_eq!(sigma(2, &x).unwrap(), v(0).mul(&v(3)).sub(&v(1).mul(&v(2))));
        assert!(sigma(3, &x).is_err());
    }

    #[test]
    fn determinant_is_multiplicative() {
        for field in [FieldTag::Rational, FieldTag::Prime(2)] {
            let a = PolyMatrix::generic(field, 3, 2, 1);
            let b = PolyMatrix::generic(field, 3, 2, 2);
            let lhs = sigma(3, &a.mul(&b)).unwrap();
            let rhs = sigma(3, &a).unwrap().mul(&sigma(3, &b).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn sigma_of_identity() {
        let f = FieldTag::Rational;
        let e = PolyMatrix::identity(f, 3, 1);
        let binom = [1, 3, 3, 1];
        for t in 0..=3 {
            let s = sigma(t, &e).unwrap();
            assert_eq!(s.coeff(&[0]), Coeff::from_integer(binom[t].into()));
        }
    }
}
