//! The algebra of invariant exponential sums: orbit invariants, products,
//! decomposition back into orbit invariants, and fusion coefficients.

use crate::lattice::{LatticeVector, OrderingVector};
use crate::orbits::{Orbit, OrbitLabel, OrbitTable};
use crate::q::{q, q_display, q_is_nonneg_int, Q};
use ahash::{HashMap, HashMapExt};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum FusionError {
    #[error("sum is not Weyl-invariant (probe frequency {0} is not the maximal vector of its orbit)")]
    NotInvariant(String),
    #[error("orbit table cutoff too small: a frequency of squared norm {needed} appeared (table holds {available})")]
    OrbitOutOfTable { needed: i64, available: i64 },
    #[error("unknown orbit label {0}")]
    UnknownOrbit(String),
    #[error("fusion postcondition violated: {0}")]
    Internal(String),
}

/// A finite sum `sum_beta c_beta exp(i (beta, x))` stored as a map from
/// frequency to rational coefficient. No zero coefficients are kept.
#[derive(Clone, Debug, Default)]
pub struct ExpSum {
    dim: usize,
    terms: HashMap<LatticeVector, Q>,
}

impl ExpSum {
    pub fn new(dim: usize) -> Self {
        ExpSum { dim, terms: HashMap::new() }
    }

    /// The constant invariant 1 (the null-orbit sum).
    pub fn one(dim: usize) -> Self {
        let mut s = Self::new(dim);
        s.add_term(LatticeVector::zero(dim), q(1));
        s
    }

    pub fn term(v: LatticeVector, c: Q) -> Self {
        let mut s = Self::new(v.dim());
        s.add_term(v, c);
        s
    }

    /// The orbit invariant: coefficient 1 on each orbit element.
    pub fn from_orbit(orbit: &Orbit) -> Self {
        let dim = orbit.elements()[0].dim();
        let mut s = Self::new(dim);
        s.terms.reserve(orbit.cardinal());
        for v in orbit.elements() {
            s.terms.insert(v.clone(), q(1));
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, v: &LatticeVector) -> Option<&Q> {
        self.terms.get(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticeVector, &Q)> {
        self.terms.iter()
    }

    /// Terms sorted by height descending (canonical order for output).
    pub fn sorted_terms(&self, xi: &OrderingVector) -> Vec<(&LatticeVector, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(t, _)| std::cmp::Reverse(t.height(xi)));
        v
    }

    pub fn add_term(&mut self, v: LatticeVector, c: Q) {
        debug_assert_eq!(v.dim(), self.dim);
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        // `ahash::HashMap` is std's HashMap with a faster hasher, so the
        // standard entry API applies.
        match self.terms.entry(v) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &ExpSum) -> ExpSum {
        let mut out = self.clone();
        for (v, c) in &other.terms {
            out.add_term(v.clone(), c.clone());
        }
        out
    }

    pub fn add_scaled(&mut self, other: &ExpSum, factor: &Q) {
        if factor.is_zero() {
            return;
        }
        for (v, c) in &other.terms {
            self.add_term(v.clone(), c * factor);
        }
    }

    pub fn scale(&self, factor: &Q) -> ExpSum {
        let mut out = Self::new(self.dim);
        if factor.is_zero() {
            return out;
        }
        for (v, c) in &self.terms {
            out.terms.insert(v.clone(), c * factor);
        }
        out
    }

    /// Convolution product: the coefficient of `gamma` is
    /// `sum_{beta + beta' = gamma} c_beta c'_beta'`.
    pub fn mul(&self, other: &ExpSum) -> ExpSum {
        debug_assert_eq!(self.dim, other.dim);
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Self::new(self.dim);
        out.terms.reserve(large.len());
        for (v, c) in &small.terms {
            for (w, d) in &large.terms {
                out.add_term(v + w, c * d);
            }
        }
        out
    }

    /// Numeric evaluation `sum c_beta exp(i (beta, x))` in double precision.
    pub fn evaluate(&self, x: &[f64]) -> Complex64 {
        debug_assert_eq!(x.len(), self.dim);
        let mut acc = Complex64::new(0.0, 0.0);
        for (v, c) in &self.terms {
            let phase: f64 = v
                .scaled()
                .iter()
                .zip(x)
                .map(|(&s, &xi)| (s as f64) * xi)
                .sum::<f64>()
                / (crate::lattice::SCALE as f64);
            let cf = c.to_f64().unwrap_or(f64::NAN);
            acc += Complex64::new(0.0, phase).exp() * cf;
        }
        acc
    }

    /// True iff coefficients are constant on every Weyl orbit intersecting
    /// the support (frequencies must lie inside the table).
    pub fn is_invariant(&self, table: &OrbitTable) -> bool {
        let mut seen: HashMap<usize, Q> = HashMap::new();
        for (v, c) in &self.terms {
            let Some(idx) = table.orbit_index_of_member(v) else {
                return false;
            };
            match seen.get(&idx) {
                Some(prev) if prev != c => return false,
                Some(_) => {}
                None => {
                    seen.insert(idx, c.clone());
                }
            }
        }
        // Constant coefficients must also cover each orbit completely.
        seen.keys()
            .all(|&idx| {
                let orbit = table.orbit_at(idx);
                orbit.elements().iter().all(|v| self.terms.contains_key(v))
            })
    }

    /// Decomposes a Weyl-invariant sum into orbit invariants. Works down the
    /// height order: the maximal remaining frequency must be the maximal
    /// vector of its orbit, whose full invariant is then subtracted in one
    /// step.
    pub fn decompose(&self, table: &OrbitTable) -> Result<InvariantCombo, FusionError> {
        let xi = table.xi();
        // Working state keyed by height; heights are injective on the table
        // range, which the table construction has already enforced.
        let mut work: BTreeMap<i128, (LatticeVector, Q)> = BTreeMap::new();
        for (v, c) in &self.terms {
            let h = v.height(xi);
            if work.insert(h, (v.clone(), c.clone())).is_some() {
                return Err(FusionError::NotInvariant(format!(
                    "height collision at {}",
                    v
                )));
            }
        }
        let mut combo = InvariantCombo::new();
        while let Some((&h, _)) = work.iter().next_back() {
            let (v, c) = work.remove(&h).expect("just observed");
            let orbit_idx = table.orbit_index_of_member(&v).ok_or_else(|| {
                let needed = v.norm_int().unwrap_or(i64::MAX);
                FusionError::OrbitOutOfTable {
                    needed,
                    available: table.max_norm(),
                }
            })?;
            let orbit = table.orbit_at(orbit_idx);
            if orbit.dominant() != &v {
                return Err(FusionError::NotInvariant(v.to_string()));
            }
            for w in orbit.elements().iter().skip(1) {
                let hw = w.height(xi);
                match work.get_mut(&hw) {
                    Some((_, cw)) => {
                        *cw -= &c;
                        if cw.is_zero() {
                            work.remove(&hw);
                        }
                    }
                    None => {
                        work.insert(hw, (w.clone(), -&c));
                    }
                }
            }
            combo.add(orbit.label, c);
        }
        Ok(combo)
    }
}

impl PartialEq for ExpSum {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.terms == other.terms
    }
}

impl Eq for ExpSum {}

/// A finite linear combination of orbit invariants, `sum c_label T_label`.
/// Serializes as an array of `{label, num, den}` entries in label order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantCombo {
    coeffs: BTreeMap<OrbitLabel, Q>,
}

#[derive(Serialize, Deserialize)]
struct ComboEntry {
    label: OrbitLabel,
    #[serde(flatten, with = "crate::q::q_serde")]
    coeff: Q,
}

impl Serialize for InvariantCombo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|(label, coeff)| ComboEntry {
            label: *label,
            coeff: coeff.clone(),
        }))
    }
}

impl<'de> Deserialize<'de> for InvariantCombo {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let entries = Vec::<ComboEntry>::deserialize(d)?;
        let mut combo = InvariantCombo::new();
        for e in entries {
            combo.add(e.label, e.coeff);
        }
        Ok(combo)
    }
}

impl InvariantCombo {
    pub fn new() -> Self {
        InvariantCombo { coeffs: BTreeMap::new() }
    }

    pub fn add(&mut self, label: OrbitLabel, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(label).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&label);
        }
    }

    pub fn coeff(&self, label: &OrbitLabel) -> Option<&Q> {
        self.coeffs.get(label)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OrbitLabel, &Q)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, factor: &Q) -> InvariantCombo {
        let mut out = InvariantCombo::new();
        for (l, c) in &self.coeffs {
            out.add(*l, c * factor);
        }
        out
    }

    /// Expands back into an exponential sum over the table's orbits.
    pub fn expand(&self, table: &OrbitTable) -> Result<ExpSum, FusionError> {
        let mut out = ExpSum::new(table.xi().dim());
        for (label, c) in &self.coeffs {
            let orbit = table
                .orbit(label)
                .ok_or_else(|| FusionError::UnknownOrbit(label.to_string()))?;
            for v in orbit.elements() {
                out.add_term(v.clone(), c.clone());
            }
        }
        Ok(out)
    }

    pub fn all_nonneg_integers(&self) -> bool {
        self.coeffs.values().all(q_is_nonneg_int)
    }
}

impl fmt::Display for InvariantCombo {
    /// Descending label order, e.g. `T5 + 3 T3 + 6 T1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (label, c) in self.coeffs.iter().rev() {
            let neg = c < &Q::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let is_null = *label == OrbitLabel::NULL;
            if mag != q(1) || is_null {
                write!(f, "{}", q_display(&mag))?;
                if !is_null {
                    write!(f, " ")?;
                }
            }
            if !is_null {
                write!(f, "T{}", label)?;
            }
        }
        Ok(())
    }
}

/// Cached fusion rules: the decomposition of products of orbit invariants.
#[derive(Clone, Debug, Default)]
pub struct FusionTable {
    cache: HashMap<(OrbitLabel, OrbitLabel), InvariantCombo>,
}

impl FusionTable {
    pub fn new() -> Self {
        FusionTable { cache: HashMap::new() }
    }

    pub fn len(&self) -> usize {
        self.cache.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cache.is_empty()
    }

    /// The fusion `T_a T_b = sum C T_k`. Coefficients are checked to be
    /// nonnegative integers with the top orbit (through the sum of the two
    /// maximal vectors) appearing at coefficient exactly one.
    pub fn fusion(
        &mut self,
        table: &OrbitTable,
        a: &OrbitLabel,
        b: &OrbitLabel,
    ) -> Result<InvariantCombo, FusionError> {
        let key = if a <= b { (*a, *b) } else { (*b, *a) };
        if let Some(hit) = self.cache.get(&key) {
            return Ok(hit.clone());
        }
        let oa = table
            .orbit(&key.0)
            .ok_or_else(|| FusionError::UnknownOrbit(key.0.to_string()))?;
        let ob = table
            .orbit(&key.1)
            .ok_or_else(|| FusionError::UnknownOrbit(key.1.to_string()))?;
        let product = ExpSum::from_orbit(oa).mul(&ExpSum::from_orbit(ob));
        let combo = product.decompose(table)?;
        if !combo.all_nonneg_integers() {
            return Err(FusionError::Internal(format!(
                "fusion {} x {} has a coefficient outside the nonnegative integers",
                key.0, key.1
            )));
        }
        let top = oa.dominant() + ob.dominant();
        let top_label = table
            .orbit_of_member(&top)
            .ok_or_else(|| FusionError::OrbitOutOfTable {
                needed: top.norm_int().unwrap_or(i64::MAX),
                available: table.max_norm(),
            })?
            .label;
        if combo.coeff(&top_label) != Some(&q(1)) {
            return Err(FusionError::Internal(format!(
                "fusion {} x {}: top orbit {} does not appear at coefficient one",
                key.0, key.1, top_label
            )));
        }
        self.cache.insert(key, combo.clone());
        Ok(combo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::{OrbitTable, RootSystem};
    use crate::q::q_ratio;

    fn setup(max_norm: i64) -> OrbitTable {
        OrbitTable::build(
            &RootSystem::f4(),
            max_norm,
            OrderingVector::default_for_dim(4),
        )
        .unwrap()
    }

    fn label(norm: i64) -> OrbitLabel {
        OrbitLabel::plain(norm)
    }

    #[test]
    fn orbit_sums_evaluate_to_cardinals_at_zero() {
        let table = setup(3);
        let null = ExpSum::from_orbit(table.orbit(&OrbitLabel::NULL).unwrap());
        assert_eq!(null.len(), 1);
        assert_eq!(null.coeff(&LatticeVector::zero(4)), Some(&q(1)));

        let t1 = ExpSum::from_orbit(table.orbit(&label(1)).unwrap());
        let v = t1.evaluate(&[0.0; 4]);
        assert!((v.re - 24.0).abs() < 1e-12 && v.im.abs() < 1e-12);

        let t3 = ExpSum::from_orbit(table.orbit(&label(3)).unwrap());
        assert_eq!(t3.len(), 96);
        assert!(t3.iter().all(|(_, c)| *c == q(1)));
    }

    #[test]
    fn multiplication_basics() {
        let table = setup(2);
        let one = ExpSum::one(4);
        let t1 = ExpSum::from_orbit(table.orbit(&label(1)).unwrap());
        assert_eq!(one.mul(&t1), t1);

        let sq = t1.mul(&t1);
        let v = sq.evaluate(&[0.0; 4]);
        assert!((v.re - 576.0).abs() < 1e-9);

        let e1 = LatticeVector::from_units(&[1, 0, 0, 0]);
        let fwd = ExpSum::term(e1.clone(), q(1));
        let bwd = ExpSum::term(-&e1, q(1));
        assert_eq!(fwd.mul(&bwd), ExpSum::one(4));
    }

    #[test]
    fn decompose_basis_element() {
        let table = setup(5);
        let t5 = ExpSum::from_orbit(table.orbit(&label(5)).unwrap());
        let combo = t5.decompose(&table).unwrap();
        assert_eq!(combo.len(), 1);
        assert_eq!(combo.coeff(&label(5)), Some(&q(1)));
    }

    #[test]
    fn decompose_t1_t2_product() {
        let table = setup(5);
        let t1 = ExpSum::from_orbit(table.orbit(&label(1)).unwrap());
        let t2 = ExpSum::from_orbit(table.orbit(&label(2)).unwrap());
        let combo = t1.mul(&t2).decompose(&table).unwrap();
        let expected: Vec<(OrbitLabel, Q)> =
            vec![(label(1), q(6)), (label(3), q(3)), (label(5), q(1))];
        assert_eq!(combo.iter().map(|(l, c)| (*l, c.clone())).collect::<Vec<_>>(), expected);
    }

    #[test]
    fn decompose_rejects_non_invariant() {
        let table = setup(2);
        let s = ExpSum::term(LatticeVector::from_units(&[1, 0, 0, 0]), q(1));
        assert!(matches!(s.decompose(&table), Err(FusionError::NotInvariant(_))));
        assert!(!s.is_invariant(&table));
    }

    #[test]
    fn decompose_reports_needed_norm() {
        let table = setup(2);
        let s = ExpSum::term(LatticeVector::from_units(&[2, 1, 0, 0]), q(1));
        assert_eq!(
            s.decompose(&table),
            Err(FusionError::OrbitOutOfTable { needed: 5, available: 2 })
        );
    }

    #[test]
    fn fusion_t1_t1() {
        let table = setup(4);
        let mut fusion = FusionTable::new();
        let combo = fusion.fusion(&table, &label(1), &label(1)).unwrap();
        let expected: Vec<(OrbitLabel, i64)> = vec![
            (OrbitLabel::NULL, 24),
            (label(1), 8),
            (label(2), 6),
            (label(3), 2),
            (label(4), 1),
        ];
        let got: Vec<(OrbitLabel, Q)> = combo.iter().map(|(l, c)| (*l, c.clone())).collect();
        assert_eq!(got, expected.into_iter().map(|(l, c)| (l, q(c))).collect::<Vec<_>>());
    }

    #[test]
    fn fusion_with_null_orbit_is_identity() {
        let table = setup(6);
        let mut fusion = FusionTable::new();
        for norm in [1i64, 2, 3, 6] {
            let combo = fusion.fusion(&table, &OrbitLabel::NULL, &label(norm)).unwrap();
            assert_eq!(combo.len(), 1);
            assert_eq!(combo.coeff(&label(norm)), Some(&q(1)));
        }
    }

    #[test]
    fn round_trip_decompose_expand() {
        let table = setup(8);
        let t2 = ExpSum::from_orbit(table.orbit(&label(2)).unwrap());
        let mixed = t2.mul(&t2).add(&t2.scale(&q_ratio(3, 2)));
        let combo = mixed.decompose(&table).unwrap();
        assert_eq!(combo.expand(&table).unwrap(), mixed);
    }

    #[test]
    fn evaluate_plane_wave_and_invariant() {
        let e1 = LatticeVector::from_units(&[1, 0, 0, 0]);
        let s = ExpSum::term(e1, q(1));
        let v = s.evaluate(&[std::f64::consts::PI, 0.0, 0.0, 0.0]);
        assert!((v.re + 1.0).abs() < 1e-12 && v.im.abs() < 1e-12);

        // Every long root pairs an even multiple of pi with x = (pi,pi,pi,pi).
        let table = setup(2);
        let t2 = ExpSum::from_orbit(table.orbit(&label(2)).unwrap());
        let w = t2.evaluate(&[std::f64::consts::PI; 4]);
        assert!((w.re - 24.0).abs() < 1e-9 && w.im.abs() < 1e-9);
    }

    #[test]
    fn product_evaluation_consistency() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let table = setup(3);
        let a = ExpSum::from_orbit(table.orbit(&label(1)).unwrap());
        let b = ExpSum::from_orbit(table.orbit(&label(3)).unwrap());
        let ab = a.mul(&b);
        for _ in 0..20 {
            let x: Vec<f64> = (0..4)
                .map(|_| rng.gen::<f64>() * 2.0 * std::f64::consts::PI)
                .collect();
            let lhs = ab.evaluate(&x);
            let rhs = a.evaluate(&x) * b.evaluate(&x);
            let scale = rhs.norm().max(1.0);
            assert!((lhs - rhs).norm() < 1e-9 * scale);
        }
    }
}
