//! Inverse Riemannian of the basis invariants, its determinant and the
//! factorization into one sine-product polynomial per root orbit.

use crate::chevalley::{BasisResult, ChevalleyError};
use crate::expsum::{ExpSum, FusionError, FusionTable, InvariantCombo};
use crate::lattice::{LatticeVector, SCALE};
use crate::orbits::{semiorbit_split, OrbitError, OrbitLabel, OrbitTable, RootSystem};
use crate::poly::{Monomial, Poly, PolyError, TermOrder};
use crate::q::{q, q_ratio, Q};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum MetricError {
    #[error("the two constructions of entry ({0}, {1}) disagree")]
    CrossCheckMismatch(OrbitLabel, OrbitLabel),
    #[error("determinant does not equal the factored form")]
    FactorizationMismatch,
    #[error("two monomials share the leading asymptotic weight")]
    TieInLeadingWeight,
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

/// The inverse Riemannian over the basis invariants, kept in both the orbit
/// form (combination of orbit invariants) and the basis form (polynomial in
/// the basis variables).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InverseMetric {
    basis: Vec<OrbitLabel>,
    orbit_form: Vec<Vec<InvariantCombo>>,
    poly_form: Vec<Vec<Poly>>,
}

impl InverseMetric {
    /// Builds every entry twice and requires exact agreement:
    ///
    /// 1. fusion route: `-1/2 sum_k (k - m - n) C_k T_k` over the fusion of
    ///    the two basis invariants;
    /// 2. pairing route: `-sum (beta, beta') exp(i(beta+beta', x))` over both
    ///    orbits, decomposed into orbit invariants.
    pub fn compute(
        table: &OrbitTable,
        basis: &BasisResult,
        fusion: &mut FusionTable,
    ) -> Result<InverseMetric, MetricError> {
        let labels = basis.basis().to_vec();
        let k = labels.len();
        let mut orbit_form = vec![vec![InvariantCombo::new(); k]; k];
        let mut poly_form = vec![vec![Poly::zero(k); k]; k];
        for i in 0..k {
            for j in i..k {
                let (a, b) = (labels[i], labels[j]);
                let combo = metric_entry_fusion(table, fusion, &a, &b)?;
                let paired = metric_entry_pairing(table, &a, &b)?;
                if combo != paired {
                    return Err(MetricError::CrossCheckMismatch(a, b));
                }
                let poly = basis.substitute(&combo)?;
                orbit_form[i][j] = combo.clone();
                orbit_form[j][i] = combo;
                poly_form[i][j] = poly.clone();
                poly_form[j][i] = poly;
            }
        }
        Ok(InverseMetric {
            basis: labels,
            orbit_form,
            poly_form,
        })
    }

    pub fn basis(&self) -> &[OrbitLabel] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn orbit_entry(&self, i: usize, j: usize) -> &InvariantCombo {
        &self.orbit_form[i][j]
    }

    pub fn poly_entry(&self, i: usize, j: usize) -> &Poly {
        &self.poly_form[i][j]
    }

    /// Exact determinant of the basis-form matrix by cofactor expansion.
    pub fn det(&self) -> Poly {
        det_poly(&self.poly_form)
    }
}

fn metric_entry_fusion(
    table: &OrbitTable,
    fusion: &mut FusionTable,
    a: &OrbitLabel,
    b: &OrbitLabel,
) -> Result<InvariantCombo, MetricError> {
    let combo = fusion.fusion(table, a, b)?;
    let mut out = InvariantCombo::new();
    for (k, c) in combo.iter() {
        let factor = q_ratio(-(k.norm - a.norm - b.norm), 2);
        out.add(*k, c * &factor);
    }
    Ok(out)
}

fn metric_entry_pairing(
    table: &OrbitTable,
    a: &OrbitLabel,
    b: &OrbitLabel,
) -> Result<InvariantCombo, MetricError> {
    let oa = table
        .orbit(a)
        .ok_or_else(|| FusionError::UnknownOrbit(a.to_string()))?;
    let ob = table
        .orbit(b)
        .ok_or_else(|| FusionError::UnknownOrbit(b.to_string()))?;
    let scale_sq = (SCALE as i64) * (SCALE as i64);
    let mut sum = ExpSum::new(table.xi().dim());
    for beta in oa.elements() {
        for beta2 in ob.elements() {
            let c = q_ratio(-beta.dot_scaled(beta2), scale_sq);
            sum.add_term(beta + beta2, c);
        }
    }
    Ok(sum.decompose(table)?)
}

/// Determinant of a square polynomial matrix by Laplace expansion along the
/// first row (fine at the 4x4 size used here).
fn det_poly(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    let nvars = m[0][0].nvars();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(nvars);
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let cofactor = entry.mul(&det_poly(&minor));
        acc = if j % 2 == 0 {
            acc.add(&cofactor)
        } else {
            acc.sub(&cofactor)
        };
    }
    acc
}

/// The determinant factor attached to one root orbit, defined constructively:
/// expand `prod_{alpha in positive semiorbit} sin^2((alpha,x)/2)` as an exact
/// exponential sum, scale by `-2^24`, decompose into orbit invariants, and
/// substitute the basis expressions.
pub fn sin_product_poly(
    root_orbit: &OrbitLabel,
    table: &OrbitTable,
    basis: &BasisResult,
) -> Result<Poly, MetricError> {
    let orbit = table
        .orbit(root_orbit)
        .ok_or_else(|| FusionError::UnknownOrbit(root_orbit.to_string()))?;
    let (positive, _) = semiorbit_split(orbit, table.xi())?;
    let dim = table.xi().dim();
    let quarter = q_ratio(-1, 4);
    let mut product = ExpSum::one(dim);
    for alpha in &positive {
        let half = alpha
            .halve()
            .expect("roots have even scaled coordinates at SCALE = 4");
        let mut s = ExpSum::new(dim);
        s.add_term(half.clone(), q(1));
        s.add_term(-&half, q(-1));
        let factor = s.mul(&s).scale(&quarter);
        product = product.mul(&factor);
    }
    let scaled = product.scale(&q(-(1i64 << 24)));
    let combo = scaled.decompose(table)?;
    Ok(basis.substitute(&combo)?)
}

/// Determinant factorization: `det = constant * prod_a P_a` with one factor
/// per root orbit. The identity is checked exactly during construction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorizationResult {
    pub det: Poly,
    /// One factor per root orbit, in root-seed order (short roots first).
    pub factors: Vec<Poly>,
    #[serde(with = "crate::q::q_serde")]
    pub constant: Q,
}

/// Computes the determinant and the sine-product factors, and verifies
/// `det == 1/4 P_1 P_2` exactly.
pub fn factorize(
    im: &InverseMetric,
    rs: &RootSystem,
    table: &OrbitTable,
    basis: &BasisResult,
) -> Result<FactorizationResult, MetricError> {
    let det = im.det();
    let mut factors = Vec::new();
    for seed in rs.root_seeds() {
        let label = table
            .orbit_of_member(seed)
            .ok_or_else(|| FusionError::OrbitOutOfTable {
                needed: seed.norm_int().unwrap_or(i64::MAX),
                available: table.max_norm(),
            })?
            .label;
        factors.push(sin_product_poly(&label, table, basis)?);
    }
    let constant = q_ratio(1, 4);
    let mut product = Poly::one(im.dim()).scale(&constant);
    for f in &factors {
        product = product.mul(f);
    }
    if product != det {
        return Err(MetricError::FactorizationMismatch);
    }
    Ok(FactorizationResult {
        det,
        factors,
        constant,
    })
}

/// The asymptotically dominant monomial of a polynomial and the lattice
/// frequency it grows with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticReport {
    pub monomial: Monomial,
    pub coefficient: Q,
    pub frequency: LatticeVector,
}

/// Finds the monomial maximizing the height of `sum_i exps_i * alpha_max(i)`
/// and returns it with its growth frequency; errors when two monomials tie.
pub fn asymptotic_report(
    p: &Poly,
    table: &OrbitTable,
    basis: &BasisResult,
) -> Result<AsymptoticReport, MetricError> {
    if p.is_zero() {
        return Err(MetricError::Poly(PolyError::ZeroPolynomial));
    }
    let xi = table.xi();
    let max_vectors: Vec<LatticeVector> = basis
        .basis()
        .iter()
        .map(|l| table.orbit(l).expect("basis orbit in table").dominant().clone())
        .collect();
    let heights: Vec<i128> = max_vectors.iter().map(|v| v.height(xi)).collect();
    let order = TermOrder::asymptotic(&heights);
    let mut best: Option<(i128, &Monomial, &Q)> = None;
    let mut tie = false;
    for (m, c) in p.iter() {
        let g = order.grade(m);
        match &best {
            Some((bg, bm, _)) if *bg == g && bm != &m => tie = true,
            Some((bg, _, _)) if *bg > g => {}
            _ => {
                best = Some((g, m, c));
                tie = false;
            }
        }
    }
    let (_, monomial, coefficient) = best.expect("nonzero polynomial");
    if tie {
        return Err(MetricError::TieInLeadingWeight);
    }
    let mut frequency = LatticeVector::zero(xi.dim());
    for (i, &e) in monomial.exps().iter().enumerate() {
        frequency = &frequency + &max_vectors[i].scale_by(e as i32);
    }
    Ok(AsymptoticReport {
        monomial: monomial.clone(),
        coefficient: coefficient.clone(),
        frequency,
    })
}

/// Lists the roots whose pairing with `x` lies within `1e-9` of `2 pi Z`,
/// together with the integer multiple. The Jacobian vanishes exactly on
/// these walls.
pub fn wall_check(x: &[f64], rs: &RootSystem) -> Vec<(LatticeVector, i64)> {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut out = Vec::new();
    for root in rs.roots() {
        let pairing: f64 = root
            .scaled()
            .iter()
            .zip(x)
            .map(|(&s, &xi)| s as f64 * xi)
            .sum::<f64>()
            / SCALE as f64;
        let n = (pairing / two_pi).round();
        if (pairing - n * two_pi).abs() <= 1e-9 {
            out.push((root, n as i64));
        }
    }
    out.sort_by(|(a, _), (b, _)| a.scaled().cmp(b.scaled()));
    out
}

/// Numeric values of the basis invariants at a point, in basis order.
pub fn basis_values_at(x: &[f64], table: &OrbitTable, basis: &BasisResult) -> Vec<f64> {
    basis
        .basis()
        .iter()
        .map(|l| {
            ExpSum::from_orbit(table.orbit(l).expect("basis orbit"))
                .evaluate(x)
                .re
        })
        .collect()
}

/// The sine product `prod_{alpha in positive semiorbit} sin^2((alpha,x)/2)`
/// evaluated numerically.
pub fn sin_product_value(
    x: &[f64],
    root_orbit: &OrbitLabel,
    table: &OrbitTable,
) -> Result<f64, MetricError> {
    let orbit = table
        .orbit(root_orbit)
        .ok_or_else(|| FusionError::UnknownOrbit(root_orbit.to_string()))?;
    let (positive, _) = semiorbit_split(orbit, table.xi())?;
    let mut acc = 1.0;
    for alpha in &positive {
        let pairing: f64 = alpha
            .scaled()
            .iter()
            .zip(x)
            .map(|(&s, &xi)| s as f64 * xi)
            .sum::<f64>()
            / SCALE as f64;
        acc *= (0.5 * pairing).sin().powi(2);
    }
    Ok(acc)
}
