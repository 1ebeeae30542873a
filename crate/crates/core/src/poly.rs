//! Sparse multivariate polynomials with exact rational coefficients over the
//! basis invariants, with term orders, exact division and a text form
//! matching the published convention.

use crate::q::{q, q_display, q_parse, Q};
use ahash::{HashMap, HashMapExt};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum PolyError {
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("not divisible: residual leading term {0}")]
    NotDivisible(String),
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Exponent vector of one monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    exps: SmallVec<[u32; 8]>,
}

impl Monomial {
    pub fn constant(nvars: usize) -> Self {
        Monomial {
            exps: std::iter::repeat(0).take(nvars).collect(),
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::constant(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        Monomial {
            exps: exps.iter().copied().collect(),
        }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_constant(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Grading against a weight vector, e.g. `(1,2,3,4)` for the flag of
    /// invariant spaces.
    pub fn weight(&self, weights: &[u64]) -> u64 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    /// Componentwise quotient; `None` when some exponent would go negative.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (&a, &b) in self.exps.iter().zip(other.exps.iter()) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// Total multiplicative orders on monomials.
#[derive(Clone, Debug)]
pub enum TermOrder {
    /// Graded by a positive weight vector, ties by lexicographic comparison
    /// of the exponent vectors.
    WeightGradedLex { weights: Vec<u64> },
    /// Graded by per-variable heights (of the maximal vectors of the basis
    /// orbits), ties by lexicographic comparison. Captures growth along the
    /// imaginary ordering direction.
    Asymptotic { heights: Vec<i128> },
}

impl TermOrder {
    pub fn weight_graded_lex(weights: &[u64]) -> Self {
        TermOrder::WeightGradedLex {
            weights: weights.to_vec(),
        }
    }

    pub fn asymptotic(heights: &[i128]) -> Self {
        TermOrder::Asymptotic {
            heights: heights.to_vec(),
        }
    }

    pub fn grade(&self, m: &Monomial) -> i128 {
        match self {
            TermOrder::WeightGradedLex { weights } => m.weight(weights) as i128,
            TermOrder::Asymptotic { heights } => m
                .exps()
                .iter()
                .zip(heights)
                .map(|(&e, &h)| e as i128 * h)
                .sum(),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.grade(a)
            .cmp(&self.grade(b))
            .then_with(|| a.exps().cmp(b.exps()))
    }
}

/// A sparse polynomial: finite map from monomial to nonzero rational
/// coefficient.
#[derive(Clone, Debug, Default)]
pub struct Poly {
    nvars: usize,
    terms: HashMap<Monomial, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: HashMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::constant(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, q(1))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, i), q(1));
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
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

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, factor: &Q) -> Poly {
        let mut out = Self::zero(self.nvars);
        if factor.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * factor);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &Q) -> Poly {
        let mut out = Self::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (n, d) in &self.terms {
            out.terms.insert(m.mul(n), c * d);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Formal partial derivative in variable `i`.
    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut exps: SmallVec<[u32; 8]> = m.exps().iter().copied().collect();
            exps[i] = e - 1;
            out.add_term(Monomial { exps }, c * q(e as i64));
        }
        out
    }

    /// Exact evaluation at rational arguments.
    pub fn eval_q(&self, values: &[Q]) -> Q {
        debug_assert_eq!(values.len(), self.nvars);
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    term *= &values[i];
                }
            }
            acc += term;
        }
        acc
    }

    /// Double-precision evaluation with Neumaier-compensated summation (the
    /// terms of the determinant factors cancel heavily at generic points).
    pub fn eval_f64(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.nvars);
        let mut acc = 0.0f64;
        let mut comp = 0.0f64;
        for (m, c) in &self.terms {
            let mut term = c.to_f64().unwrap_or(f64::NAN);
            for (i, &e) in m.exps().iter().enumerate() {
                term *= values[i].powi(e as i32);
            }
            let fresh = acc + term;
            if acc.abs() >= term.abs() {
                comp += (acc - fresh) + term;
            } else {
                comp += (term - fresh) + acc;
            }
            acc = fresh;
        }
        acc + comp
    }

    /// The maximal term under the given order.
    pub fn leading(&self, order: &TermOrder) -> Result<(Monomial, Q), PolyError> {
        let mut best: Option<(&Monomial, &Q)> = None;
        for (m, c) in &self.terms {
            match best {
                Some((bm, _)) if order.cmp(m, bm) != Ordering::Greater => {}
                _ => best = Some((m, c)),
            }
        }
        best.map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// Exact quotient `self / den`, found by leading-term reduction under
    /// `order`. Fails with the residual's leading term if the division does
    /// not come out exactly.
    pub fn exact_divide(&self, den: &Poly, order: &TermOrder) -> Result<Poly, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.nvars != den.nvars {
            return Err(PolyError::VariableMismatch(self.nvars, den.nvars));
        }
        let (dm, dc) = den.leading(order)?;
        let mut quotient = Poly::zero(self.nvars);
        let mut rem = self.clone();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading(order)?;
            let Some(qm) = rm.try_div(&dm) else {
                return Err(PolyError::NotDivisible(format!("{:?} * {}", rm, q_display(&rc))));
            };
            let qc = &rc / &dc;
            rem = rem.sub(&den.mul_term(&qm, &qc));
            quotient.add_term(qm, qc);
        }
        Ok(quotient)
    }

    /// Largest weight over the support, `None` for the zero polynomial.
    pub fn max_weight(&self, weights: &[u64]) -> Option<u64> {
        self.terms.keys().map(|m| m.weight(weights)).max()
    }

    /// Terms sorted descending under the given order (canonical output
    /// order).
    pub fn sorted_terms(&self, order: &TermOrder) -> Vec<(&Monomial, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| order.cmp(b, a));
        v
    }

    /// Renders the polynomial in the published style, descending under
    /// `order`: `-T1^2*T3^2 + 4*T3^3 + ... + 48`.
    pub fn render(&self, names: &[&str], order: &TermOrder) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_constant() {
                factors.push(q_display(&mag));
            }
            for (v, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].to_string()),
                    _ => factors.push(format!("{}^{}", names[v], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Parses the rendered form: signed terms of `*`-joined factors, each a
    /// rational constant or `name[^exp]`. Repeated monomials are summed.
    pub fn parse(src: &str, names: &[&str]) -> Result<Poly, PolyError> {
        let nvars = names.len();
        let mut poly = Poly::zero(nvars);
        let src = src.trim();
        if src.is_empty() {
            return Err(PolyError::Parse("empty input".into()));
        }
        // Split into signed terms at top level.
        let mut terms: Vec<(i32, String)> = Vec::new();
        let mut sign = 1;
        let mut cur = String::new();
        let mut started = false;
        for ch in src.chars() {
            match ch {
                '+' | '-' if started && !cur.trim().is_empty() => {
                    terms.push((sign, std::mem::take(&mut cur)));
                    sign = if ch == '-' { -1 } else { 1 };
                }
                '+' => {
                    started = true;
                }
                '-' => {
                    sign = -sign;
                    started = true;
                }
                _ => {
                    cur.push(ch);
                    started = true;
                }
            }
        }
        if !cur.trim().is_empty() {
            terms.push((sign, cur));
        }
        for (sign, term) in terms {
            let mut coeff = q(sign as i64);
            let mut mono = Monomial::constant(nvars);
            for factor in term.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(PolyError::Parse(format!("empty factor in `{}`", term)));
                }
                if let Some(first) = factor.chars().next() {
                    if first.is_ascii_digit() {
                        let c = q_parse(factor)
                            .ok_or_else(|| PolyError::Parse(format!("bad constant `{}`", factor)))?;
                        coeff *= c;
                        continue;
                    }
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n.trim(),
                        e.trim()
                            .parse::<u32>()
                            .map_err(|_| PolyError::Parse(format!("bad exponent in `{}`", factor)))?,
                    ),
                    None => (factor, 1),
                };
                let v = names
                    .iter()
                    .position(|&x| x == name)
                    .ok_or_else(|| PolyError::Parse(format!("unknown variable `{}`", name)))?;
                let mut exps: SmallVec<[u32; 8]> = mono.exps().iter().copied().collect();
                exps[v] += exp;
                mono = Monomial { exps };
            }
            poly.add_term(mono, coeff);
        }
        Ok(poly)
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl Eq for Poly {}

#[derive(Serialize, Deserialize)]
struct PolyTermRepr {
    exp: Vec<u32>,
    num: String,
    den: String,
}

impl Serialize for Poly {
    /// Canonical JSON: terms descending under weight-graded-lex with unit
    /// weights (a fixed order independent of any basis data).
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let order = TermOrder::weight_graded_lex(&vec![1; self.nvars]);
        s.collect_seq(self.sorted_terms(&order).into_iter().map(|(m, c)| PolyTermRepr {
            exp: m.exps().to_vec(),
            num: c.numer().to_string(),
            den: c.denom().to_string(),
        }))
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let entries = Vec::<PolyTermRepr>::deserialize(d)?;
        let nvars = entries.first().map(|e| e.exp.len()).unwrap_or(0);
        let mut poly = Poly::zero(nvars);
        for e in entries {
            let num: num_bigint::BigInt = e.num.parse().map_err(D::Error::custom)?;
            let den: num_bigint::BigInt = e.den.parse().map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            poly.add_term(Monomial::from_exps(&e.exp), Q::new(num, den));
        }
        Ok(poly)
    }
}

/// Variable names of the F4 basis invariants.
pub const F4_VAR_NAMES: [&str; 4] = ["T1", "T2", "T3", "T6"];

/// Grading weights of the F4 basis variables used for term orders and
/// canonical serialization.
pub const F4_WEIGHTS: [u64; 4] = [1, 2, 3, 4];

/// Grading actually preserved by the solvable operator, used for the flag of
/// invariant spaces. It differs from [`F4_WEIGHTS`] in the first entry only
/// and matches the asymptotic growth heights of the basis invariants
/// (doubled): the operator raises the [`F4_WEIGHTS`] grading (the image of
/// `T1^2` contains `T3`), so that vector cannot grade the flag.
pub const FLAG_WEIGHTS: [u64; 4] = [2, 2, 3, 4];

/// The standard order used for rendering and exact division over the F4
/// basis.
pub fn f4_order() -> TermOrder {
    TermOrder::weight_graded_lex(&F4_WEIGHTS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q::q_ratio;

    fn p(src: &str) -> Poly {
        Poly::parse(src, &F4_VAR_NAMES).unwrap()
    }

    #[test]
    fn ring_basics() {
        let lhs = p("T1 + 1").mul(&p("T1 - 1"));
        assert_eq!(lhs, p("T1^2 - 1"));

        let zero = p("T1^2 + 3*T2").scale(&q(0));
        assert!(zero.is_zero());
        assert_eq!(zero.len(), 0);

        let sum = p("T1^2 - 2*T3 - 6*T2 - 8*T1 - 24").add(&p("2*T3 + 6*T2 + 8*T1 + 24"));
        assert_eq!(sum, p("T1^2"));
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(p("T1^2").partial(0), p("2*T1"));
        assert_eq!(p("-T1*T2 + 3*T3 + 12*T1").partial(1), p("-T1"));
        assert_eq!(p("42").partial(3), Poly::zero(4));
        // Leibniz on a small pair.
        let a = p("T1*T3 - 2*T2");
        let b = p("T2^2 + 5*T1");
        let lhs = a.mul(&b).partial(0);
        let rhs = a.partial(0).mul(&b).add(&a.mul(&b.partial(0)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_division() {
        let order = f4_order();
        assert_eq!(
            p("T1^2 - 1").exact_divide(&p("T1 - 1"), &order).unwrap(),
            p("T1 + 1")
        );
        let p1_like = p("T1^3 + 2*T1*T2 - 7");
        let q1 = p("-5*T1 - 24");
        let prod = p1_like.mul(&q1);
        assert_eq!(prod.exact_divide(&p1_like, &order).unwrap(), q1);
        assert!(matches!(
            p("T1").exact_divide(&p("T2"), &order),
            Err(PolyError::NotDivisible(_))
        ));
        assert!(matches!(
            p("T1").exact_divide(&Poly::zero(4), &order),
            Err(PolyError::ZeroPolynomial)
        ));
    }

    #[test]
    fn leading_terms() {
        let order = f4_order();
        // Weight of T2 is 2 > 1, so it leads T1.
        let (m, c) = p("T1 + T2").leading(&order).unwrap();
        assert_eq!(m, Monomial::from_exps(&[0, 1, 0, 0]));
        assert_eq!(c, q(1));
        assert!(matches!(Poly::zero(4).leading(&order), Err(PolyError::ZeroPolynomial)));

        // Asymptotic order weighs variables by maximal-vector heights.
        let heights = [1_000_000_000i128, 1_001_000_000, 1_500_500_500, 2_001_001_000];
        let asym = TermOrder::asymptotic(&heights);
        let (m, c) = p("-T1^2*T3^2 + 4*T3^3 + 16*T1^5").leading(&asym).unwrap();
        assert_eq!(m, Monomial::from_exps(&[2, 0, 2, 0]));
        assert_eq!(c, q(-1));
    }

    #[test]
    fn evaluation() {
        let t4 = p("T1^2 - 2*T3 - 6*T2 - 8*T1 - 24");
        let at = [q(24), q(24), q(96), q(96)];
        assert_eq!(t4.eval_q(&at), q(24));
        assert_eq!(Poly::zero(4).eval_q(&at), q(0));
        let f = t4.eval_f64(&[24.0, 24.0, 96.0, 96.0]);
        assert!((f - 24.0).abs() < 1e-9);
        // Ring homomorphism on a product.
        let a = p("T1*T2 - 3");
        let b = p("T3 + 1/2");
        let at2 = [q_ratio(1, 2), q(3), q(-2), q(7)];
        assert_eq!(a.mul(&b).eval_q(&at2), a.eval_q(&at2) * b.eval_q(&at2));
    }

    #[test]
    fn weights_and_grading() {
        let m = Monomial::from_exps(&[1, 1, 1, 1]);
        assert_eq!(m.weight(&F4_WEIGHTS), 10);
        assert_eq!(p("T1^2*T2 + T6").max_weight(&F4_WEIGHTS), Some(4));
        assert_eq!(Poly::zero(4).max_weight(&F4_WEIGHTS), None);
    }

    #[test]
    fn render_and_parse_round_trip() {
        let order = f4_order();
        let src = "-T1^2*T3^2 + 3/2*T6 - 18*T6*T1*T3 + 110592";
        let poly = p(src);
        let rendered = poly.render(&F4_VAR_NAMES, &order);
        assert_eq!(Poly::parse(&rendered, &F4_VAR_NAMES).unwrap(), poly);
        assert_eq!(Poly::zero(4).render(&F4_VAR_NAMES, &order), "0");
        // Duplicated monomials in the source are summed.
        assert_eq!(p("2*T1 + 3*T1"), p("5*T1"));
        assert!(Poly::parse("T9", &F4_VAR_NAMES).is_err());
        assert!(Poly::parse("", &F4_VAR_NAMES).is_err());
    }

    #[test]
    fn json_round_trip() {
        let poly = p("-T1^2 + 3/2*T6 + 48");
        let js = serde_json::to_string(&poly).unwrap();
        let back: Poly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, poly);
        assert!(js.contains("\"exp\""));
    }
}
