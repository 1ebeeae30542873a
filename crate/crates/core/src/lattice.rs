//! Exact geometry of the ambient Euclidean space and the scaled-integer
//! lattices all orbits live on.
//!
//! Coordinates are stored as `SCALE` times their geometric value in the
//! orthonormal e-basis, so the half-integer points of the F4 root lattice and
//! the half-root frequencies of the sine products both stay integral.

use crate::q::{q_ratio, Q};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use thiserror::Error;

/// Global coordinate denominator. Stored coordinates are `SCALE * beta_i`.
pub const SCALE: i32 = 4;

type Coords = SmallVec<[i32; 8]>;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum LatticeError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("reflection along the zero vector is undefined")]
    ZeroRoot,
    #[error("reflection left the scaled-integer lattice")]
    NonIntegralReflection,
    #[error("ordering vector rejected: {0}")]
    BadOrderingVector(String),
}

/// A point of the root lattice (or of its half-lattice) in scaled-integer
/// coordinates: the geometric vector is `coords / SCALE` in the e-basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    coords: Coords,
}

impl LatticeVector {
    pub fn from_scaled(coords: impl IntoIterator<Item = i32>) -> Self {
        LatticeVector {
            coords: coords.into_iter().collect(),
        }
    }

    /// Vector with integer e-basis coefficients.
    pub fn from_units(units: &[i32]) -> Self {
        Self::from_scaled(units.iter().map(|u| u * SCALE))
    }

    /// Vector with half-integer e-basis coefficients: `halves[i] / 2`.
    pub fn from_halves(halves: &[i32]) -> Self {
        Self::from_scaled(halves.iter().map(|h| h * (SCALE / 2)))
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_scaled(std::iter::repeat(0).take(dim))
    }

    /// The basis vector `e_i` (zero-based index).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut c = Coords::from_iter(std::iter::repeat(0).take(dim));
        c[i] = SCALE;
        LatticeVector { coords: c }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn scaled(&self) -> &[i32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Membership in the F4 root lattice: all coordinates integral or all
    /// half-odd-integral (scaled: all `== 0 (mod 4)` or all `== 2 (mod 4)`).
    pub fn in_f4_lattice(&self) -> bool {
        self.coords.iter().all(|c| c.rem_euclid(SCALE) == 0)
            || self.coords.iter().all(|c| c.rem_euclid(SCALE) == SCALE / 2)
    }

    /// Raw scaled inner product `sum coords_i * other_i` (the geometric inner
    /// product times `SCALE^2`). Panics on dimension mismatch; the public
    /// [`Self::inner`] validates instead.
    pub fn dot_scaled(&self, other: &LatticeVector) -> i64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(other.coords.iter())
            .map(|(&a, &b)| a as i64 * b as i64)
            .sum()
    }

    /// Exact inner product in geometric units.
    pub fn inner(&self, other: &LatticeVector) -> Result<Q, LatticeError> {
        if self.dim() != other.dim() {
            return Err(LatticeError::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(q_ratio(self.dot_scaled(other), (SCALE as i64) * (SCALE as i64)))
    }

    pub fn norm_sq(&self) -> Q {
        q_ratio(self.dot_scaled(self), (SCALE as i64) * (SCALE as i64))
    }

    /// Geometric squared norm when it is an integer (always the case on the
    /// root lattice itself).
    pub fn norm_int(&self) -> Option<i64> {
        let raw = self.dot_scaled(self);
        let den = (SCALE as i64) * (SCALE as i64);
        (raw % den == 0).then(|| raw / den)
    }

    /// Reflection `s_root(self) = self - 2 (root,self)/(root,root) root`.
    pub fn reflect(&self, root: &LatticeVector) -> Result<LatticeVector, LatticeError> {
        if self.dim() != root.dim() {
            return Err(LatticeError::DimensionMismatch(self.dim(), root.dim()));
        }
        let den = root.dot_scaled(root);
        if den == 0 {
            return Err(LatticeError::ZeroRoot);
        }
        let num = 2 * root.dot_scaled(self);
        let mut out = Coords::with_capacity(self.dim());
        for (&v, &r) in self.coords.iter().zip(root.coords.iter()) {
            let shift = num * r as i64;
            if shift % den != 0 {
                return Err(LatticeError::NonIntegralReflection);
            }
            let c = v as i64 - shift / den;
            out.push(i32::try_from(c).map_err(|_| LatticeError::NonIntegralReflection)?);
        }
        Ok(LatticeVector { coords: out })
    }

    /// Height against an ordering vector: `sum coords_i * xi_i` in scaled
    /// units. Sign decides the semiorbit, order decides maximal vectors.
    pub fn height(&self, xi: &OrderingVector) -> i128 {
        debug_assert_eq!(self.dim(), xi.dim());
        self.coords
            .iter()
            .zip(xi.components().iter())
            .map(|(&c, &x)| c as i128 * x as i128)
            .sum()
    }

    /// Halves every coordinate; `None` if some scaled coordinate is odd.
    pub fn halve(&self) -> Option<LatticeVector> {
        if self.coords.iter().any(|c| c % 2 != 0) {
            return None;
        }
        Some(Self::from_scaled(self.coords.iter().map(|c| c / 2)))
    }

    pub fn scale_by(&self, k: i32) -> LatticeVector {
        Self::from_scaled(self.coords.iter().map(|c| c * k))
    }

    pub fn swap_coords(&self, i: usize, j: usize) -> LatticeVector {
        let mut c = self.coords.clone();
        c.swap(i, j);
        LatticeVector { coords: c }
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        LatticeVector::from_scaled(
            self.coords
                .iter()
                .zip(rhs.coords.iter())
                .map(|(&a, &b)| a + b),
        )
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        LatticeVector::from_scaled(
            self.coords
                .iter()
                .zip(rhs.coords.iter())
                .map(|(&a, &b)| a - b),
        )
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector::from_scaled(self.coords.iter().map(|&a| -a))
    }
}

impl fmt::Display for LatticeVector {
    /// Linear combination of the `e_i` with rational coefficients,
    /// e.g. `2e1 + 2e2 + e3` or `3/2e1 + 1/2e2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let a = c.abs();
            if a == SCALE {
                write!(f, "e{}", i + 1)?;
            } else if a % SCALE == 0 {
                write!(f, "{}e{}", a / SCALE, i + 1)?;
            } else if a % 2 == 0 {
                write!(f, "{}/2e{}", a / 2, i + 1)?;
            } else {
                write!(f, "{}/4e{}", a, i + 1)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Serialize, Deserialize)]
struct VectorRepr {
    coords: Vec<i32>,
    scale: i32,
}

impl Serialize for LatticeVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        VectorRepr {
            coords: self.coords.to_vec(),
            scale: SCALE,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = VectorRepr::deserialize(d)?;
        if r.scale != SCALE {
            return Err(D::Error::custom(format!(
                "unsupported coordinate scale {} (engine uses {})",
                r.scale, SCALE
            )));
        }
        Ok(LatticeVector::from_scaled(r.coords))
    }
}

/// Strictly decreasing positive integer vector defining heights, semiorbits
/// and maximal vectors. The default is generic enough that all lattice
/// vectors in range have pairwise distinct heights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingVector {
    xi: Vec<i64>,
}

impl OrderingVector {
    /// Validates the defining inequalities: strictly decreasing, positive,
    /// and first component dominating the sum of the rest.
    pub fn new(xi: Vec<i64>) -> Result<Self, LatticeError> {
        if xi.is_empty() {
            return Err(LatticeError::BadOrderingVector("empty".into()));
        }
        if xi.iter().any(|&x| x <= 0) {
            return Err(LatticeError::BadOrderingVector(
                "components must be positive".into(),
            ));
        }
        if xi.windows(2).any(|w| w[0] <= w[1]) {
            return Err(LatticeError::BadOrderingVector(
                "components must be strictly decreasing".into(),
            ));
        }
        let tail: i64 = xi[1..].iter().sum();
        if xi.len() > 1 && xi[0] <= tail {
            return Err(LatticeError::BadOrderingVector(
                "first component must exceed the sum of the others".into(),
            ));
        }
        Ok(OrderingVector { xi })
    }

    /// Default generic choice: powers of 1000, e.g. `(10^9, 10^6, 10^3, 1)`
    /// in dimension 4.
    pub fn default_for_dim(dim: usize) -> Self {
        let xi = (0..dim).map(|i| 1000i64.pow((dim - 1 - i) as u32)).collect();
        OrderingVector { xi }
    }

    pub fn dim(&self) -> usize {
        self.xi.len()
    }

    pub fn components(&self) -> &[i64] {
        &self.xi
    }

    /// Scaled-coordinate bound reached by vectors of squared norm up to
    /// `max_norm`: `ceil(SCALE * sqrt(max_norm))`.
    pub fn coord_bound_for(max_norm: i64) -> i64 {
        let target = (SCALE as i64) * (SCALE as i64) * max_norm;
        let mut b = 0i64;
        while b * b < target {
            b += 1;
        }
        b
    }

    /// Injectivity guard: sufficient condition under which two distinct
    /// vectors with all |coords| <= bound cannot share a height. Each
    /// component must dominate the largest value the tail can reach.
    pub fn guards_injectivity(&self, bound: i64) -> bool {
        for k in 0..self.xi.len().saturating_sub(1) {
            let tail: i128 = self.xi[k + 1..].iter().map(|&x| x as i128).sum();
            if (self.xi[k] as i128) <= 2 * (bound as i128) * tail {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q::q;

    fn e(i: usize) -> LatticeVector {
        LatticeVector::unit(4, i)
    }

    fn f1() -> LatticeVector {
        LatticeVector::from_halves(&[1, 1, 1, 1])
    }

    #[test]
    fn inner_orthonormal_basis() {
        assert_eq!(e(0).inner(&e(0)).unwrap(), q(1));
        assert_eq!(f1().inner(&f1()).unwrap(), q(1));
        let a = &e(0) + &e(1);
        let b = &e(0) - &e(1);
        assert_eq!(a.inner(&b).unwrap(), q(0));
    }

    #[test]
    fn inner_dimension_mismatch() {
        let v3 = LatticeVector::from_units(&[1, 0, 0]);
        assert_eq!(
            e(0).inner(&v3),
            Err(LatticeError::DimensionMismatch(4, 3))
        );
    }

    #[test]
    fn norms() {
        assert_eq!(e(0).norm_sq(), q(1));
        assert_eq!(f1().norm_sq(), q(1));
        let v = LatticeVector::from_units(&[3, 2, 1, 1]);
        assert_eq!(v.norm_sq(), q(15));
        assert_eq!(v.norm_int(), Some(15));
    }

    #[test]
    fn reflect_along_itself_and_orthogonal() {
        assert_eq!(e(0).reflect(&e(0)).unwrap(), -&e(0));
        assert_eq!(e(1).reflect(&e(0)).unwrap(), e(1));
    }

    #[test]
    fn reflect_along_f1() {
        let expect = LatticeVector::from_halves(&[1, -1, -1, -1]);
        assert_eq!(e(0).reflect(&f1()).unwrap(), expect);
    }

    #[test]
    fn reflect_is_involutive_and_isometric() {
        let roots = [e(0), f1(), &e(0) + &e(1), LatticeVector::from_halves(&[1, 1, -1, -1])];
        let v = LatticeVector::from_units(&[3, 2, 1, 1]);
        for r in &roots {
            let w = v.reflect(r).unwrap();
            assert_eq!(w.norm_sq(), v.norm_sq());
            assert_eq!(w.reflect(r).unwrap(), v);
        }
    }

    #[test]
    fn reflect_zero_root_rejected() {
        assert_eq!(
            e(0).reflect(&LatticeVector::zero(4)),
            Err(LatticeError::ZeroRoot)
        );
    }

    #[test]
    fn heights() {
        let xi = OrderingVector::default_for_dim(4);
        assert_eq!(LatticeVector::zero(4).height(&xi), 0);
        assert!(e(0).height(&xi) > e(1).height(&xi));
        let v = LatticeVector::from_halves(&[-1, 1, 1, 1]);
        assert!(v.height(&xi) < 0);
    }

    #[test]
    fn default_ordering_vector_is_admissible() {
        let xi = OrderingVector::default_for_dim(4);
        assert_eq!(xi.components(), &[1_000_000_000, 1_000_000, 1_000, 1]);
        assert!(OrderingVector::new(xi.components().to_vec()).is_ok());
        // Collision-free well past the coordinates reached at max_norm <= 64.
        assert!(xi.guards_injectivity(499));
        assert!(!xi.guards_injectivity(500));
        assert!(OrderingVector::coord_bound_for(64) <= 499);
    }

    #[test]
    fn ordering_vector_rejections() {
        assert!(OrderingVector::new(vec![]).is_err());
        assert!(OrderingVector::new(vec![5, 5, 1, 1]).is_err());
        assert!(OrderingVector::new(vec![4, 3, 2, 1]).is_err()); // 4 <= 3+2+1
        assert!(OrderingVector::new(vec![10, -1, -2, -3]).is_err());
        assert!(OrderingVector::new(vec![7, 3, 2, 1]).is_ok());
    }

    #[test]
    fn coord_bound() {
        assert_eq!(OrderingVector::coord_bound_for(1), 4);
        assert_eq!(OrderingVector::coord_bound_for(24), 20); // 16*24 = 384, 19^2 = 361 < 384 <= 400
        assert_eq!(OrderingVector::coord_bound_for(56), 30); // 16*56 = 896, 29^2 = 841 < 896 <= 900
    }

    #[test]
    fn f4_lattice_parity() {
        assert!(e(0).in_f4_lattice());
        assert!(f1().in_f4_lattice());
        assert!(LatticeVector::zero(4).in_f4_lattice());
        // Mixed integer / half-odd coordinates are not lattice points.
        assert!(!LatticeVector::from_scaled([4, 2, 0, 0]).in_f4_lattice());
        // Quarter coordinates are not lattice points.
        assert!(!LatticeVector::from_scaled([1, 1, 1, 1]).in_f4_lattice());
    }

    #[test]
    fn halving() {
        let v = LatticeVector::from_units(&[1, 1, 0, 0]);
        assert_eq!(v.halve().unwrap(), LatticeVector::from_halves(&[1, 1, 0, 0]));
        assert!(f1().halve().unwrap().halve().is_none()); // quarters are not halvable
    }

    #[test]
    fn display_forms() {
        assert_eq!(LatticeVector::from_units(&[2, 2, 1, 0]).to_string(), "2e1 + 2e2 + e3");
        assert_eq!(
            LatticeVector::from_halves(&[3, 1, -1, 1]).to_string(),
            "3/2e1 + 1/2e2 - 1/2e3 + 1/2e4"
        );
        assert_eq!(LatticeVector::zero(4).to_string(), "0");
    }
}
