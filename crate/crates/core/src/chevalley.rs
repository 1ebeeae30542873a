//! Constructive algebraic basis of the invariant algebra: triangular
//! inversion of the fusion rules expresses every orbit invariant as a
//! polynomial in finitely many basis invariants.

use crate::expsum::{ExpSum, FusionError, FusionTable};
use crate::lattice::LatticeVector;
use crate::orbits::{OrbitLabel, OrbitTable};
use crate::poly::{Monomial, Poly};
use crate::q::{q, Q};
use ahash::{HashMap, HashMapExt};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ChevalleyError {
    #[error("orbit {0} is not in the table")]
    UnknownOrbit(String),
    #[error("height-order violation: {0}")]
    OrderingViolation(String),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error("basis swap rejected: {0}")]
    SwapRejected(String),
}

/// Result of the inversion: the basis orbit labels, one polynomial per orbit
/// expressing its invariant in the basis variables, and the fusion pair used
/// at each inversion step.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisResult {
    basis: Vec<OrbitLabel>,
    var_names: Vec<String>,
    expressions: BTreeMap<OrbitLabel, Poly>,
    provenance: BTreeMap<OrbitLabel, (OrbitLabel, OrbitLabel)>,
}

impl BasisResult {
    pub fn basis(&self) -> &[OrbitLabel] {
        &self.basis
    }

    pub fn nvars(&self) -> usize {
        self.basis.len()
    }

    pub fn var_names(&self) -> Vec<&str> {
        self.var_names.iter().map(|s| s.as_str()).collect()
    }

    /// The cached polynomial for an orbit invariant.
    pub fn express(&self, label: &OrbitLabel) -> Result<&Poly, ChevalleyError> {
        self.expressions
            .get(label)
            .ok_or_else(|| ChevalleyError::UnknownOrbit(label.to_string()))
    }

    pub fn expressions(&self) -> impl Iterator<Item = (&OrbitLabel, &Poly)> {
        self.expressions.iter()
    }

    pub fn provenance(&self, label: &OrbitLabel) -> Option<&(OrbitLabel, OrbitLabel)> {
        self.provenance.get(label)
    }

    /// Substitutes expressions for the orbit coefficients of a combination:
    /// `sum c_k T_k` becomes a polynomial in the basis.
    pub fn substitute(
        &self,
        combo: &crate::expsum::InvariantCombo,
    ) -> Result<Poly, ChevalleyError> {
        let mut out = Poly::zero(self.nvars());
        for (label, c) in combo.iter() {
            out = out.add(&self.express(label)?.scale(c));
        }
        Ok(out)
    }

    /// Replaces the basis variable at `outgoing` by the invariant of
    /// `incoming`, which must be expressed linearly in that variable with a
    /// constant coefficient. All expressions are rewritten in the new basis.
    pub fn rebase(&self, outgoing: usize, incoming: OrbitLabel) -> Result<BasisResult, ChevalleyError> {
        if outgoing >= self.nvars() {
            return Err(ChevalleyError::SwapRejected(format!(
                "no basis variable {}",
                outgoing
            )));
        }
        if self.basis.contains(&incoming) {
            return Err(ChevalleyError::SwapRejected(format!(
                "{} is already a basis orbit",
                incoming
            )));
        }
        let expr = self.express(&incoming)?.clone();
        // Split expr = a * T_out + b with a constant and b free of T_out.
        let mut a = Q::zero();
        let mut b = Poly::zero(self.nvars());
        for (m, c) in expr.iter() {
            match m.exps()[outgoing] {
                0 => b.add_term(m.clone(), c.clone()),
                1 if m.total_degree() == 1 => a = c.clone(),
                _ => {
                    return Err(ChevalleyError::SwapRejected(format!(
                        "{} is not linear in {} with a constant coefficient",
                        incoming, self.var_names[outgoing]
                    )))
                }
            }
        }
        if a.is_zero() {
            return Err(ChevalleyError::SwapRejected(format!(
                "{} does not involve {}",
                incoming, self.var_names[outgoing]
            )));
        }
        // T_out = (T_new - b) / a, with the outgoing slot reinterpreted as
        // the incoming variable.
        let replacement = Poly::var(self.nvars(), outgoing)
            .sub(&b)
            .scale(&(q(1) / &a));
        let mut basis = self.basis.clone();
        basis[outgoing] = incoming;
        let var_names: Vec<String> = basis.iter().map(|l| format!("T{}", l)).collect();
        let mut expressions = BTreeMap::new();
        for (label, poly) in &self.expressions {
            expressions.insert(*label, substitute_var(poly, outgoing, &replacement));
        }
        Ok(BasisResult {
            basis,
            var_names,
            expressions,
            provenance: self.provenance.clone(),
        })
    }
}

/// Replaces variable `i` by the polynomial `s`.
fn substitute_var(p: &Poly, i: usize, s: &Poly) -> Poly {
    let nvars = p.nvars();
    // Group by the exponent of variable i.
    let mut groups: BTreeMap<u32, Poly> = BTreeMap::new();
    for (m, c) in p.iter() {
        let e = m.exps()[i];
        let mut exps: Vec<u32> = m.exps().to_vec();
        exps[i] = 0;
        groups
            .entry(e)
            .or_insert_with(|| Poly::zero(nvars))
            .add_term(Monomial::from_exps(&exps), c.clone());
    }
    let mut out = Poly::zero(nvars);
    let mut power = Poly::one(nvars);
    let mut current = 0u32;
    for (e, coeff) in groups {
        while current < e {
            power = power.mul(s);
            current += 1;
        }
        out = out.add(&coeff.mul(&power));
    }
    out
}

/// Runs the triangular inversion over the whole table, in increasing height
/// of the orbit maximal vectors. An orbit whose maximal vector is the sum of
/// two already-processed maximal vectors is expressed through that fusion;
/// otherwise it becomes a new basis variable.
pub fn build_basis(
    table: &OrbitTable,
    fusion: &mut FusionTable,
) -> Result<BasisResult, ChevalleyError> {
    // First pass: fix the basis set and the inversion pairs, which depend
    // only on the maximal vectors.
    struct Plan {
        label: OrbitLabel,
        step: Step,
    }
    enum Step {
        Basis(usize),
        Pair(OrbitLabel, OrbitLabel),
    }

    let mut plans: Vec<Plan> = Vec::new();
    let mut basis: Vec<OrbitLabel> = Vec::new();
    // Processed orbits by dominant vector, with (label, norm).
    let mut processed: HashMap<LatticeVector, OrbitLabel> = HashMap::new();
    let mut order_rank: HashMap<OrbitLabel, usize> = HashMap::new();

    for (rank, orbit) in table.orbits().iter().enumerate() {
        order_rank.insert(orbit.label, rank);
        if orbit.label == OrbitLabel::NULL {
            continue;
        }
        let target = orbit.dominant();
        let mut candidates: Vec<(i64, OrbitLabel, OrbitLabel)> = Vec::new();
        for (mv, &m_label) in processed.iter() {
            if m_label == OrbitLabel::NULL {
                continue;
            }
            let rest = target - mv;
            if let Some(&n_label) = processed.get(&rest) {
                if n_label == OrbitLabel::NULL {
                    continue;
                }
                let (m, n) = if m_label <= n_label {
                    (m_label, n_label)
                } else {
                    (n_label, m_label)
                };
                let key = m.norm.max(n.norm);
                if !candidates.iter().any(|&(_, a, b)| (a, b) == (m, n)) {
                    candidates.push((key, m, n));
                }
            }
        }
        candidates.sort_by_key(|&(key, m, n)| (key, m, n));
        let step = match candidates.first() {
            Some(&(_, m, n)) => Step::Pair(m, n),
            None => {
                basis.push(orbit.label);
                Step::Basis(basis.len() - 1)
            }
        };
        plans.push(Plan {
            label: orbit.label,
            step,
        });
        processed.insert(target.clone(), orbit.label);
    }

    // Second pass: build the expressions with the basis size known.
    let nvars = basis.len();
    let mut expressions: BTreeMap<OrbitLabel, Poly> = BTreeMap::new();
    let mut provenance: BTreeMap<OrbitLabel, (OrbitLabel, OrbitLabel)> = BTreeMap::new();
    expressions.insert(OrbitLabel::NULL, Poly::one(nvars));
    for plan in &plans {
        let expr = match plan.step {
            Step::Basis(i) => Poly::var(nvars, i),
            Step::Pair(m, n) => {
                let combo = fusion.fusion(table, &m, &n)?;
                if combo.coeff(&plan.label) != Some(&q(1)) {
                    return Err(ChevalleyError::OrderingViolation(format!(
                        "fusion {} x {} does not reach {} at coefficient one",
                        m, n, plan.label
                    )));
                }
                let em = expressions.get(&m).ok_or_else(|| {
                    ChevalleyError::OrderingViolation(format!("{} used before processed", m))
                })?;
                let en = expressions.get(&n).ok_or_else(|| {
                    ChevalleyError::OrderingViolation(format!("{} used before processed", n))
                })?;
                let mut expr = em.mul(en);
                for (k, c) in combo.iter() {
                    if *k == plan.label {
                        continue;
                    }
                    if order_rank[k] >= order_rank[&plan.label] {
                        return Err(ChevalleyError::OrderingViolation(format!(
                            "fusion {} x {} references {} at or above target {}",
                            m, n, k, plan.label
                        )));
                    }
                    let ek = expressions.get(k).ok_or_else(|| {
                        ChevalleyError::OrderingViolation(format!(
                            "{} used before processed",
                            k
                        ))
                    })?;
                    expr = expr.sub(&ek.scale(c));
                }
                provenance.insert(plan.label, (m, n));
                expr
            }
        };
        expressions.insert(plan.label, expr);
    }

    let var_names: Vec<String> = basis.iter().map(|l| format!("T{}", l)).collect();
    Ok(BasisResult {
        basis,
        var_names,
        expressions,
        provenance,
    })
}

/// Memoized expansion of basis monomials into exponential sums, shared
/// across all verifications in a session.
pub struct SubstCache {
    basis_sums: Vec<ExpSum>,
    memo: HashMap<Monomial, ExpSum>,
    dim: usize,
}

impl SubstCache {
    pub fn new(table: &OrbitTable, basis: &BasisResult) -> Result<Self, ChevalleyError> {
        let dim = table.xi().dim();
        let mut basis_sums = Vec::with_capacity(basis.nvars());
        for label in basis.basis() {
            let orbit = table
                .orbit(label)
                .ok_or_else(|| ChevalleyError::UnknownOrbit(label.to_string()))?;
            basis_sums.push(ExpSum::from_orbit(orbit));
        }
        Ok(SubstCache {
            basis_sums,
            memo: HashMap::new(),
            dim,
        })
    }

    /// The exponential sum of one basis monomial `prod T_i^{e_i}`.
    pub fn monomial_sum(&mut self, m: &Monomial) -> ExpSum {
        if let Some(hit) = self.memo.get(m) {
            return hit.clone();
        }
        let result = match m.exps().iter().rposition(|&e| e > 0) {
            None => ExpSum::one(self.dim),
            Some(i) => {
                let mut exps: Vec<u32> = m.exps().to_vec();
                exps[i] -= 1;
                let prev = self.monomial_sum(&Monomial::from_exps(&exps));
                prev.mul(&self.basis_sums[i])
            }
        };
        self.memo.insert(m.clone(), result.clone());
        result
    }

    /// Expands a polynomial in the basis variables into an exponential sum.
    pub fn expand_poly(&mut self, p: &Poly) -> ExpSum {
        let mut out = ExpSum::new(self.dim);
        for (m, c) in p.iter() {
            let ms = self.monomial_sum(m);
            out.add_scaled(&ms, c);
        }
        out
    }
}

/// Independent oracle: substitutes the basis orbit sums into the cached
/// polynomial and compares against the orbit's own exponential sum, term by
/// term.
pub fn verify_expression(
    label: &OrbitLabel,
    basis: &BasisResult,
    table: &OrbitTable,
    cache: &mut SubstCache,
) -> Result<bool, ChevalleyError> {
    let orbit = table
        .orbit(label)
        .ok_or_else(|| ChevalleyError::UnknownOrbit(label.to_string()))?;
    let expr = basis.express(label)?;
    let expanded = cache.expand_poly(expr);
    Ok(expanded == ExpSum::from_orbit(orbit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::OrderingVector;
    use crate::orbits::RootSystem;
    use crate::poly::{f4_order, F4_VAR_NAMES};
    use crate::reference;

    fn setup(max_norm: i64) -> (OrbitTable, FusionTable) {
        let table = OrbitTable::build(
            &RootSystem::f4(),
            max_norm,
            OrderingVector::default_for_dim(4),
        )
        .unwrap();
        (table, FusionTable::new())
    }

    fn pp(src: &str) -> Poly {
        Poly::parse(src, &F4_VAR_NAMES).unwrap()
    }

    #[test]
    fn basis_is_1_2_3_6() {
        let (table, mut fusion) = setup(24);
        let result = build_basis(&table, &mut fusion).unwrap();
        let basis: Vec<String> = result.basis().iter().map(|l| l.to_string()).collect();
        assert_eq!(basis, ["1", "2", "3", "6"]);
        assert_eq!(result.var_names(), ["T1", "T2", "T3", "T6"]);
    }

    #[test]
    fn low_expressions_match_published_rows() {
        let (table, mut fusion) = setup(24);
        let result = build_basis(&table, &mut fusion).unwrap();
        assert_eq!(result.express(&OrbitLabel::NULL).unwrap(), &Poly::one(4));
        assert_eq!(result.express(&OrbitLabel::plain(1)).unwrap(), &Poly::var(4, 0));
        assert_eq!(
            result.express(&OrbitLabel::plain(4)).unwrap(),
            &pp("T1^2 - 2*T3 - 6*T2 - 8*T1 - 24")
        );
        assert_eq!(
            result.express(&OrbitLabel::plain(5)).unwrap(),
            &pp("T2*T1 - 3*T3 - 6*T1")
        );
        assert!(matches!(
            result.express(&OrbitLabel::plain(30)),
            Err(ChevalleyError::UnknownOrbit(_))
        ));
    }

    #[test]
    fn t24_row_matches_including_tail_monomials() {
        let (table, mut fusion) = setup(24);
        let result = build_basis(&table, &mut fusion).unwrap();
        let row = reference::EXPRESSION_ROWS.iter().find(|r| r.norm == 24).unwrap();
        let expected = pp(row.text);
        let computed = result.express(&OrbitLabel::plain(24)).unwrap();
        assert_eq!(computed, &expected);
        assert_eq!(computed.coeff(&Monomial::from_exps(&[4, 0, 0, 0])), q(12));
        assert_eq!(computed.coeff(&Monomial::from_exps(&[0, 0, 0, 2])), q(1));
    }

    #[test]
    fn expressions_evaluate_to_cardinals_at_origin() {
        // At x = 0 every invariant equals its orbit cardinal, so each
        // expression evaluated at (24, 24, 96, 96) must match.
        let (table, mut fusion) = setup(12);
        let result = build_basis(&table, &mut fusion).unwrap();
        let at = [q(24), q(24), q(96), q(96)];
        for orbit in table.orbits() {
            let v = result.express(&orbit.label).unwrap().eval_q(&at);
            assert_eq!(v, q(orbit.cardinal() as i64), "orbit {}", orbit.label);
        }
    }

    #[test]
    fn verify_expression_oracle() {
        let (table, mut fusion) = setup(12);
        let result = build_basis(&table, &mut fusion).unwrap();
        let mut cache = SubstCache::new(&table, &result).unwrap();
        for orbit in table.orbits() {
            assert!(
                verify_expression(&orbit.label, &result, &table, &mut cache).unwrap(),
                "orbit {}",
                orbit.label
            );
        }
    }

    #[test]
    fn perturbed_expression_fails_verification() {
        let (table, mut fusion) = setup(8);
        let mut result = build_basis(&table, &mut fusion).unwrap();
        let label = OrbitLabel::plain(4);
        let spoiled = result.express(&label).unwrap().add(&Poly::one(4));
        result.expressions.insert(label, spoiled);
        let mut cache = SubstCache::new(&table, &result).unwrap();
        assert!(!verify_expression(&label, &result, &table, &mut cache).unwrap());
    }

    #[test]
    fn determinism() {
        let (table, mut f1) = setup(10);
        let (_, mut f2) = setup(10);
        let a = build_basis(&table, &mut f1).unwrap();
        let b = build_basis(&table, &mut f2).unwrap();
        assert_eq!(a.basis(), b.basis());
        for (l, p) in a.expressions() {
            assert_eq!(Some(p), b.expressions.get(l));
        }
        assert_eq!(a.provenance, b.provenance);
    }

    #[test]
    fn rebase_to_t7() {
        let (table, mut fusion) = setup(12);
        let result = build_basis(&table, &mut fusion).unwrap();
        let swapped = result.rebase(3, OrbitLabel::plain(7)).unwrap();
        assert_eq!(
            swapped.basis().iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            ["1", "2", "3", "7"]
        );
        // The swapped result still expands correctly.
        let mut cache = SubstCache::new(&table, &swapped).unwrap();
        for norm in [4i64, 6, 7, 10] {
            assert!(
                verify_expression(&OrbitLabel::plain(norm), &swapped, &table, &mut cache).unwrap(),
                "norm {}",
                norm
            );
        }
        // The norm-12 invariant carries T6 only inside T6*T1, so it cannot
        // replace T6; basis orbits cannot be swapped in either.
        assert!(matches!(
            result.rebase(3, OrbitLabel::plain(12)),
            Err(ChevalleyError::SwapRejected(_))
        ));
        assert!(matches!(
            result.rebase(3, OrbitLabel::plain(1)),
            Err(ChevalleyError::SwapRejected(_))
        ));
    }

    #[test]
    fn provenance_records_pairs() {
        let (table, mut fusion) = setup(8);
        let result = build_basis(&table, &mut fusion).unwrap();
        assert_eq!(
            result.provenance(&OrbitLabel::plain(4)),
            Some(&(OrbitLabel::plain(1), OrbitLabel::plain(1)))
        );
        assert_eq!(
            result.provenance(&OrbitLabel::plain(5)),
            Some(&(OrbitLabel::plain(1), OrbitLabel::plain(2)))
        );
        assert!(result.provenance(&OrbitLabel::plain(1)).is_none());
    }

    #[test]
    fn render_matches_published_style() {
        let (table, mut fusion) = setup(8);
        let result = build_basis(&table, &mut fusion).unwrap();
        let rendered = result
            .express(&OrbitLabel::plain(5))
            .unwrap()
            .render(&F4_VAR_NAMES, &f4_order());
        assert_eq!(rendered, "T1*T2 - 3*T3 - 6*T1");
    }
}
