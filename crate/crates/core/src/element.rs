//! Group elements: permutations and invertible matrices over a prime field.
//!
//! Products are read left to right, so `a.mul(&b)` applies `a` first. Points
//! are acted on from the right and row vectors are multiplied on the right,
//! which keeps permutation and matrix conventions aligned. Conjugation is
//! `x^g = g⁻¹ x g` and commutators are `[a, b] = a⁻¹ b⁻¹ a b`.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `0..degree`, stored as its image array.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Box<[u16]>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u16).collect())
    }

    /// Builds a permutation from 0-based images, rejecting non-bijections.
    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::invalid(format!(
                    "image array {:?} is not a permutation",
                    images.iter().map(|&x| x as usize + 1).collect::<Vec<_>>()
                )));
            }
            seen[i] = true;
        }
        Ok(Perm(images.into_boxed_slice()))
    }

    /// Builds a permutation from 1-based images, the external convention.
    pub fn from_one_based(images: &[u32]) -> Result<Self> {
        if images.len() > u16::MAX as usize {
            return Err(Error::invalid("permutation degree too large"));
        }
        let mut v = Vec::with_capacity(images.len());
        for &i in images {
            if i == 0 || i as usize > images.len() {
                return Err(Error::invalid(format!(
                    "permutation image {i} out of range 1..={}",
                    images.len()
                )));
            }
            v.push((i - 1) as u16);
        }
        Perm::from_images(v)
    }

    /// Builds a permutation of `degree` points from disjoint cycles on
    /// 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a == 0 || a as usize > degree || b == 0 || b as usize > degree {
                    return Err(Error::invalid(format!("cycle point out of range 1..={degree}")));
                }
                images[(a - 1) as usize] = (b - 1) as u16;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<u32> {
        self.0.iter().map(|&x| x as u32 + 1).collect()
    }

    pub fn image(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inv(&self) -> Perm {
        let mut out = vec![0u16; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u16;
        }
        Perm(out.into_boxed_slice())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Sign as +1 / -1.
    pub fn sign(&self) -> i32 {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for start in 0..n {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.0[i] as usize;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A square matrix over the prime field `F_p`, row-major.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Matrix {
    prime: u32,
    dim: u16,
    entries: Box<[u32]>,
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Matrix {
    pub fn identity(dim: usize, prime: u32) -> Self {
        let mut entries = vec![0u32; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        Matrix {
            prime,
            dim: dim as u16,
            entries: entries.into_boxed_slice(),
        }
    }

    /// Builds a matrix from rows, reducing entries mod `prime` and rejecting
    /// singular input.
    pub fn from_rows(rows: &[Vec<u32>], prime: u32) -> Result<Self> {
        if !is_prime(prime as u64) {
            return Err(Error::invalid(format!("matrix modulus {prime} is not prime")));
        }
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::invalid("matrix must be square and nonempty"));
        }
        let entries: Vec<u32> = rows.iter().flatten().map(|&x| x % prime).collect();
        let m = Matrix {
            prime,
            dim: dim as u16,
            entries: entries.into_boxed_slice(),
        };
        if m.determinant() == 0 {
            return Err(Error::invalid("matrix is singular mod p"));
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.dim() + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.dim()).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.dim();
        let p = self.prime as u64;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k] as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let cell = &mut out[i * n + j];
                    *cell = ((*cell as u64 + a * other.entries[k * n + j] as u64) % p) as u32;
                }
            }
        }
        Matrix {
            prime: self.prime,
            dim: self.dim,
            entries: out.into_boxed_slice(),
        }
    }

    pub fn determinant(&self) -> u32 {
        let n = self.dim();
        let p = self.prime as u64;
        let mut a: Vec<u64> = self.entries.iter().map(|&x| x as u64).collect();
        let mut det = 1u64;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = (p - det) % p;
            }
            let pv = a[col * n + col];
            det = det * pv % p;
            let pinv = inv_mod(pv as u32, self.prime) as u64;
            for r in col + 1..n {
                let f = a[r * n + col] * pinv % p;
                if f == 0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = (a[r * n + j] + p * p - f * a[col * n + j]) % p;
                }
            }
        }
        det as u32
    }

    pub fn inv(&self) -> Matrix {
        let n = self.dim();
        let p = self.prime as u64;
        let mut a: Vec<u64> = self.entries.iter().map(|&x| x as u64).collect();
        let mut b: Vec<u64> = Matrix::identity(n, self.prime)
            .entries
            .iter()
            .map(|&x| x as u64)
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a[r * n + col] != 0)
                .expect("matrix elements are invertible by construction");
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
                b.swap(pivot * n + j, col * n + j);
            }
            let pinv = inv_mod(a[col * n + col] as u32, self.prime) as u64;
            for j in 0..n {
                a[col * n + j] = a[col * n + j] * pinv % p;
                b[col * n + j] = b[col * n + j] * pinv % p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col];
                if f == 0 {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = (a[r * n + j] + p * p - f * a[col * n + j]) % p;
                    b[r * n + j] = (b[r * n + j] + p * p - f * b[col * n + j]) % p;
                }
            }
        }
        Matrix {
            prime: self.prime,
            dim: self.dim,
            entries: b.into_iter().map(|x| x as u32).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim();
        self.entries
            .iter()
            .enumerate()
            .all(|(k, &x)| x == u32::from(k / n == k % n))
    }
}

/// An element of a permutation group or of a matrix group over `F_p`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Perm(Perm),
    Matrix(Matrix),
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Perm(p) => write!(f, "{p:?}"),
            Element::Matrix(m) => write!(f, "{:?}", m.rows()),
        }
    }
}

impl From<Perm> for Element {
    fn from(p: Perm) -> Self {
        Element::Perm(p)
    }
}

impl From<Matrix> for Element {
    fn from(m: Matrix) -> Self {
        Element::Matrix(m)
    }
}

impl Element {
    pub fn mul(&self, other: &Element) -> Element {
        match (self, other) {
            (Element::Perm(a), Element::Perm(b)) => Element::Perm(a.mul(b)),
            (Element::Matrix(a), Element::Matrix(b)) => Element::Matrix(a.mul(b)),
            _ => panic!("cannot multiply a permutation by a matrix"),
        }
    }

    pub fn inv(&self) -> Element {
        match self {
            Element::Perm(a) => Element::Perm(a.inv()),
            Element::Matrix(a) => Element::Matrix(a.inv()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Element::Perm(a) => a.is_identity(),
            Element::Matrix(a) => a.is_identity(),
        }
    }

    /// The identity of the group this element lives in.
    pub fn identity_like(&self) -> Element {
        match self {
            Element::Perm(a) => Element::Perm(Perm::identity(a.degree())),
            Element::Matrix(a) => Element::Matrix(Matrix::identity(a.dim(), a.prime())),
        }
    }

    /// `g⁻¹ self g`.
    pub fn conj(&self, g: &Element) -> Element {
        g.inv().mul(self).mul(g)
    }

    /// `[self, other] = self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Element) -> Element {
        self.inv().mul(&other.inv()).mul(self).mul(other)
    }

    pub fn pow(&self, e: i64) -> Element {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.identity_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn order(&self) -> u64 {
        let mut k = 1;
        let mut x = self.clone();
        while !x.is_identity() {
            x = x.mul(self);
            k += 1;
        }
        k
    }

    pub fn as_perm(&self) -> Option<&Perm> {
        match self {
            Element::Perm(p) => Some(p),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[&[u32]]) -> Element {
        Perm::from_cycles(n, c).unwrap().into()
    }

    #[test]
    fn product_applies_left_factor_first() {
        let a = cyc(3, &[&[1, 2]]);
        let b = cyc(3, &[&[2, 3]]);
        // 1 -a-> 2 -b-> 3
        let ab = a.mul(&b);
        assert_eq!(ab.as_perm().unwrap().image(0), 2);
        assert_eq!(ab.order(), 3);
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_one_based(&[1, 1, 2]).is_err());
        assert!(Perm::from_one_based(&[0, 1]).is_err());
    }

    #[test]
    fn matrix_inverse_and_det() {
        let m = Matrix::from_rows(&[vec![1, 2], vec![3, 4]], 5).unwrap();
        assert_eq!(m.determinant(), (4 + 25 - 6) % 5);
        let e: Element = m.clone().into();
        assert!(e.mul(&e.inv()).is_identity());
        assert!(Matrix::from_rows(&[vec![1, 2], vec![2, 4]], 5).is_err());
        assert!(Matrix::from_rows(&[vec![1, 0], vec![0, 1]], 4).is_err());
    }

    #[test]
    fn pow_and_commutator() {
        let c = cyc(5, &[&[1, 2, 3, 4, 5]]);
        assert!(c.pow(5).is_identity());
        assert_eq!(c.pow(-1), c.inv());
        assert!(c.commutator(&c.pow(2)).is_identity());
        assert_eq!(format!("{:?}", c), "(1 2 3 4 5)");
    }

    #[test]
    fn sign_of_cycles() {
        assert_eq!(Perm::from_cycles(4, &[&[1, 2, 3]]).unwrap().sign(), 1);
        assert_eq!(Perm::from_cycles(4, &[&[1, 2, 3, 4]]).unwrap().sign(), -1);
    }
}
