//! Small Galois fields GF(p) and GF(p²) with table arithmetic, and square
//! matrices over them.

use std::fmt;

use crate::error::{Error, Result};

/// Element of a [`GaloisField`], stored as `c0 + p·c1` for the polynomial
/// `c0 + c1·x` modulo the field's fixed irreducible quadratic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(pub u16);

#[derive(Clone)]
pub struct GaloisField {
    p: u16,
    k: u8,
    q: u16,
    /// `x² = -m0 - m1·x`, i.e. the modulus is `x² + m1·x + m0`.
    modulus: (u16, u16),
    add: Vec<u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    primitive: u16,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl GaloisField {
    /// GF(p^k) for prime `p` and `k ∈ {1, 2}`, with `p^k ≤ 1024`.
    ///
    /// GF(4) uses `x² + x + 1`, GF(9) uses `x² + 1`; other quadratic
    /// extensions use the first irreducible `x² + a·x + b` in `(b, a)` order.
    pub fn new(p: u16, k: u8) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::OutOfRange(format!("{p} is not prime")));
        }
        if !(1..=2).contains(&k) {
            return Err(Error::OutOfRange(format!("field degree {k} not in 1..=2")));
        }
        let q = (p as u32).pow(k as u32);
        if q > 1024 {
            return Err(Error::OutOfRange(format!("field order {q} too large")));
        }
        let q = q as u16;
        let modulus = if k == 1 {
            (0, 0)
        } else {
            match p {
                2 => (1, 1),
                3 => (1, 0),
                _ => {
                    let mut found = None;
                    'outer: for b in 1..p {
                        for a in 0..p {
                            let has_root = (0..p as u32).any(|x| (x * x + a as u32 * x + b as u32) % p as u32 == 0);
                            if !has_root {
                                found = Some((b, a));
                                break 'outer;
                            }
                        }
                    }
                    found.expect("an irreducible quadratic exists")
                }
            }
        };
        let mut f = GaloisField { p, k, q, modulus, add: vec![], mul: vec![], inv: vec![], primitive: 0 };
        let n = q as usize;
        f.add = vec![0; n * n];
        f.mul = vec![0; n * n];
        for a in 0..q {
            for b in 0..q {
                f.add[a as usize * n + b as usize] = f.slow_add(a, b);
                f.mul[a as usize * n + b as usize] = f.slow_mul(a, b);
            }
        }
        f.inv = vec![0; n];
        for a in 1..q {
            f.inv[a as usize] = (1..q).find(|&b| f.mul[a as usize * n + b as usize] == 1).expect("field inverse");
        }
        f.primitive = (1..q)
            .find(|&a| f.elem_order(FieldElem(a)) == (q - 1) as usize)
            .expect("cyclic multiplicative group");
        Ok(f)
    }

    /// GF(q) for a prime power `q = p` or `p²`.
    pub fn of_order(q: u16) -> Result<Self> {
        if is_prime(q as u64) {
            return GaloisField::new(q, 1);
        }
        let p = (2..q).find(|&p| p * p == q && is_prime(p as u64));
        match p {
            Some(p) => GaloisField::new(p, 2),
            None => Err(Error::OutOfRange(format!("GF({q}) is not supported"))),
        }
    }

    fn coeffs(&self, a: u16) -> (u16, u16) {
        (a % self.p, a / self.p)
    }

    fn slow_add(&self, a: u16, b: u16) -> u16 {
        let (a0, a1) = self.coeffs(a);
        let (b0, b1) = self.coeffs(b);
        (a0 + b0) % self.p + self.p * ((a1 + b1) % self.p)
    }

    fn slow_mul(&self, a: u16, b: u16) -> u16 {
        let p = self.p as u32;
        let (a0, a1) = self.coeffs(a);
        let (b0, b1) = self.coeffs(b);
        let (a0, a1, b0, b1) = (a0 as u32, a1 as u32, b0 as u32, b1 as u32);
        // (a0 + a1 x)(b0 + b1 x) = a0b0 + (a0b1 + a1b0) x + a1b1 x²
        let c0 = a0 * b0;
        let c1 = a0 * b1 + a1 * b0;
        let c2 = a1 * b1;
        let (m0, m1) = (self.modulus.0 as u32, self.modulus.1 as u32);
        // x² = -m0 - m1 x
        let r0 = (c0 + c2 * (p - m0 % p)) % p;
        let r1 = (c1 + c2 * (p - m1 % p)) % p;
        (r0 + p * r1) as u16
    }

    pub fn characteristic(&self) -> u16 {
        self.p
    }

    pub fn degree(&self) -> u8 {
        self.k
    }

    pub fn order(&self) -> u16 {
        self.q
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// Smallest-index generator of the multiplicative group.
    pub fn primitive(&self) -> FieldElem {
        FieldElem(self.primitive)
    }

    /// Reduces an integer into the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElem {
        FieldElem(v.rem_euclid(self.p as i64) as u16)
    }

    pub fn from_coeffs(&self, c0: i64, c1: i64) -> FieldElem {
        let p = self.p as i64;
        FieldElem((c0.rem_euclid(p) + p * c1.rem_euclid(p)) as u16)
    }

    pub fn contains(&self, a: FieldElem) -> bool {
        a.0 < self.q
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.add[a.0 as usize * self.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.mul[a.0 as usize * self.q as usize + b.0 as usize])
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let (a0, a1) = self.coeffs(a.0);
        FieldElem((self.p - a0) % self.p + self.p * ((self.p - a1) % self.p))
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        (a.0 != 0).then(|| FieldElem(self.inv[a.0 as usize]))
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element (0 for zero).
    pub fn elem_order(&self, a: FieldElem) -> usize {
        if a.0 == 0 {
            return 0;
        }
        let mut k = 1;
        let mut cur = a;
        while cur != self.one() {
            cur = self.mul(cur, a);
            k += 1;
        }
        k
    }

    pub fn format(&self, a: FieldElem) -> String {
        if self.k == 1 {
            return a.0.to_string();
        }
        let (c0, c1) = self.coeffs(a.0);
        match (c0, c1) {
            (c0, 0) => c0.to_string(),
            (0, 1) => "x".into(),
            (0, c1) => format!("{c1}x"),
            (c0, 1) => format!("{c0}+x"),
            (c0, c1) => format!("{c0}+{c1}x"),
        }
    }

    // ---- matrices ------------------------------------------------------

    pub fn mat_identity(&self, n: usize) -> Matrix {
        let mut m = Matrix::zero(n);
        for i in 0..n {
            m.set(i, i, self.one());
        }
        m
    }

    pub fn mat_scalar(&self, n: usize, s: FieldElem) -> Matrix {
        let mut m = Matrix::zero(n);
        for i in 0..n {
            m.set(i, i, s);
        }
        m
    }

    pub fn mat_mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let n = a.n();
        let mut c = Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.zero();
                for k in 0..n {
                    acc = self.add(acc, self.mul(a.get(i, k), b.get(k, j)));
                }
                c.set(i, j, acc);
            }
        }
        c
    }

    pub fn mat_neg(&self, a: &Matrix) -> Matrix {
        Matrix { n: a.n, entries: a.entries.iter().map(|&x| self.neg(FieldElem(x)).0).collect() }
    }

    pub fn mat_det(&self, a: &Matrix) -> FieldElem {
        let n = a.n();
        let mut m: Vec<Vec<FieldElem>> = (0..n).map(|i| (0..n).map(|j| a.get(i, j)).collect()).collect();
        let mut det = self.one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| m[r][col] != self.zero()) else {
                return self.zero();
            };
            if pivot != col {
                m.swap(pivot, col);
                det = self.neg(det);
            }
            det = self.mul(det, m[col][col]);
            let inv = self.inv(m[col][col]).expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = self.mul(m[r][col], inv);
                for c in col..n {
                    let sub = self.mul(factor, m[col][c]);
                    m[r][c] = self.sub(m[r][c], sub);
                }
            }
        }
        det
    }

    /// Gauss–Jordan inverse; `None` for singular matrices.
    pub fn mat_inv(&self, a: &Matrix) -> Option<Matrix> {
        let n = a.n();
        let mut m: Vec<Vec<FieldElem>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| if j < n { a.get(i, j) } else if j - n == i { self.one() } else { self.zero() })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| m[r][col] != self.zero())?;
            m.swap(pivot, col);
            let inv = self.inv(m[col][col])?;
            for c in 0..2 * n {
                m[col][c] = self.mul(m[col][c], inv);
            }
            for r in 0..n {
                if r != col && m[r][col] != self.zero() {
                    let factor = m[r][col];
                    for c in 0..2 * n {
                        let sub = self.mul(factor, m[col][c]);
                        m[r][c] = self.sub(m[r][c], sub);
                    }
                }
            }
        }
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, m[i][j + n]);
            }
        }
        Some(out)
    }

    /// `h⁻¹ x h`.
    pub fn mat_conj(&self, x: &Matrix, h: &Matrix) -> Matrix {
        let hi = self.mat_inv(h).expect("conjugating matrix is invertible");
        self.mat_mul(&self.mat_mul(&hi, x), h)
    }

    /// Builds a matrix from signed integer rows over the prime subfield.
    pub fn mat_from_ints(&self, rows: &[&[i64]]) -> Matrix {
        let n = rows.len();
        let mut m = Matrix::zero(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, self.from_int(v));
            }
        }
        m
    }

    pub fn mat_format(&self, a: &Matrix) -> String {
        let rows: Vec<String> = (0..a.n())
            .map(|i| {
                let cells: Vec<String> = (0..a.n()).map(|j| self.format(a.get(i, j))).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

/// Square matrix with entries from a [`GaloisField`], row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    n: u8,
    entries: Vec<u16>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix { n: n as u8, entries: vec![0; n * n] }
    }

    pub fn from_entries(n: usize, entries: Vec<FieldElem>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Input(format!("{} entries for a {n}x{n} matrix", entries.len())));
        }
        Ok(Matrix { n: n as u8, entries: entries.into_iter().map(|e| e.0).collect() })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        FieldElem(self.entries[i * self.n as usize + j])
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.entries[i * self.n as usize + j] = v.0;
    }

    /// Block matrix `[[a, b], [c, d]]` from four equally sized blocks.
    pub fn blocks(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        let k = a.n();
        let mut m = Matrix::zero(2 * k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, a.get(i, j));
                m.set(i, j + k, b.get(i, j));
                m.set(i + k, j, c.get(i, j));
                m.set(i + k, j + k, d.get(i, j));
            }
        }
        m
    }

    /// Affine embedding `[[self, v], [0, 1]]` acting on column vectors.
    pub fn affine(&self, translation: &[FieldElem]) -> Matrix {
        let k = self.n();
        let mut m = Matrix::zero(k + 1);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.get(i, j));
            }
            m.set(i, k, translation[i]);
        }
        m.set(k, k, FieldElem(1));
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &GaloisField) {
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            if a != f.zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn gf4_and_gf9_are_fields() {
        check_axioms(&GaloisField::new(2, 2).unwrap());
        check_axioms(&GaloisField::new(3, 2).unwrap());
        check_axioms(&GaloisField::new(5, 2).unwrap());
        check_axioms(&GaloisField::new(7, 1).unwrap());
    }

    #[test]
    fn gf9_modulus_is_x2_plus_1() {
        let f = GaloisField::new(3, 2).unwrap();
        let x = f.from_coeffs(0, 1);
        assert_eq!(f.mul(x, x), f.from_int(-1));
        let f4 = GaloisField::new(2, 2).unwrap();
        let w = f4.from_coeffs(0, 1);
        // w² = w + 1
        assert_eq!(f4.mul(w, w), f4.from_coeffs(1, 1));
    }

    #[test]
    fn primitive_element_generates() {
        for (p, k) in [(2, 2), (3, 2), (5, 1), (7, 1), (5, 2)] {
            let f = GaloisField::new(p, k).unwrap();
            assert_eq!(f.elem_order(f.primitive()), f.order() as usize - 1);
        }
    }

    #[test]
    fn matrix_inverse_and_det() {
        let f = GaloisField::new(3, 1).unwrap();
        let a = f.mat_from_ints(&[&[1, 1, -1, -1], &[0, 0, -1, 1], &[0, 0, -1, -1], &[-1, 1, 1, -1]]);
        let ai = f.mat_inv(&a).unwrap();
        assert_eq!(f.mat_mul(&a, &ai), f.mat_identity(4));
        assert_ne!(f.mat_det(&a), f.zero());
        let singular = f.mat_from_ints(&[&[1, 2], &[2, 4]]);
        assert!(f.mat_inv(&singular).is_none());
        assert_eq!(f.mat_det(&singular), f.zero());
    }

    #[test]
    fn rejects_unsupported_fields() {
        assert!(GaloisField::new(4, 1).is_err());
        assert!(GaloisField::new(2, 3).is_err());
        assert!(GaloisField::of_order(8).is_err());
        assert_eq!(GaloisField::of_order(9).unwrap().order(), 9);
    }
}
