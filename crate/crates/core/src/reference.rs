//! Embedded copies of the published F4 reference data that the engine must
//! reproduce: the orbit table, the basis expressions of all listed orbit
//! invariants, the inverse-metric entries in both forms, the determinant
//! factors, the r-coefficient vectors and the potential constants.
//!
//! These are cross-check targets only; nothing in the computational pipeline
//! reads them. Diff reports compare computed values against them term by term.
//! A few rows of the source tables carry known misprints; those rows are
//! marked so the diff machinery can single them out instead of failing.

/// One row of the orbit table: squared norm, degeneracy tag, the listed
/// generating vectors, and the orbit cardinal.
pub struct OrbitRow {
    pub norm: i64,
    pub tag: Option<u8>,
    /// Generating vectors as integer e-basis coefficient quadruples.
    pub reps: &'static [[i32; 4]],
    pub cardinal: usize,
}

/// Orbits of the F4 root lattice up to squared norm 24 (30 nonzero orbits).
pub const ORBIT_ROWS: &[OrbitRow] = &[
    OrbitRow { norm: 1, tag: None, reps: &[[1, 0, 0, 0]], cardinal: 24 },
    OrbitRow { norm: 2, tag: None, reps: &[[1, 1, 0, 0]], cardinal: 24 },
    OrbitRow { norm: 3, tag: None, reps: &[[1, 1, 1, 0]], cardinal: 96 },
    OrbitRow { norm: 4, tag: None, reps: &[[2, 0, 0, 0], [1, 1, 1, 1]], cardinal: 24 },
    OrbitRow { norm: 5, tag: None, reps: &[[2, 1, 0, 0]], cardinal: 144 },
    OrbitRow { norm: 6, tag: None, reps: &[[2, 1, 1, 0]], cardinal: 96 },
    OrbitRow { norm: 7, tag: None, reps: &[[2, 1, 1, 1]], cardinal: 192 },
    OrbitRow { norm: 8, tag: None, reps: &[[2, 2, 0, 0]], cardinal: 24 },
    OrbitRow { norm: 9, tag: Some(1), reps: &[[2, 2, 1, 0]], cardinal: 288 },
    OrbitRow { norm: 9, tag: Some(2), reps: &[[3, 0, 0, 0]], cardinal: 24 },
    OrbitRow { norm: 10, tag: None, reps: &[[3, 1, 0, 0], [2, 2, 1, 1]], cardinal: 144 },
    OrbitRow { norm: 11, tag: None, reps: &[[3, 1, 1, 0]], cardinal: 288 },
    OrbitRow { norm: 12, tag: None, reps: &[[2, 2, 2, 0], [3, 1, 1, 1]], cardinal: 96 },
    OrbitRow { norm: 13, tag: Some(1), reps: &[[3, 2, 0, 0]], cardinal: 144 },
    OrbitRow { norm: 13, tag: Some(2), reps: &[[2, 2, 2, 1]], cardinal: 192 },
    OrbitRow { norm: 14, tag: None, reps: &[[3, 2, 1, 0]], cardinal: 192 },
    OrbitRow { norm: 15, tag: None, reps: &[[3, 2, 1, 1]], cardinal: 576 },
    OrbitRow { norm: 16, tag: None, reps: &[[2, 2, 2, 2], [4, 0, 0, 0]], cardinal: 24 },
    OrbitRow { norm: 17, tag: Some(1), reps: &[[3, 2, 2, 0]], cardinal: 288 },
    OrbitRow { norm: 17, tag: Some(2), reps: &[[4, 1, 0, 0]], cardinal: 144 },
    OrbitRow { norm: 18, tag: Some(1), reps: &[[3, 3, 0, 0]], cardinal: 24 },
    OrbitRow { norm: 18, tag: Some(2), reps: &[[4, 1, 1, 0], [3, 2, 2, 1]], cardinal: 288 },
    OrbitRow { norm: 19, tag: Some(1), reps: &[[3, 3, 1, 0]], cardinal: 288 },
    OrbitRow { norm: 19, tag: Some(2), reps: &[[4, 1, 1, 1]], cardinal: 192 },
    OrbitRow { norm: 20, tag: None, reps: &[[4, 2, 0, 0], [3, 3, 1, 1]], cardinal: 144 },
    OrbitRow { norm: 21, tag: Some(1), reps: &[[4, 2, 1, 0]], cardinal: 576 },
    OrbitRow { norm: 21, tag: Some(2), reps: &[[3, 2, 2, 2]], cardinal: 192 },
    OrbitRow { norm: 22, tag: None, reps: &[[3, 3, 2, 0], [4, 2, 1, 1]], cardinal: 288 },
    OrbitRow { norm: 23, tag: None, reps: &[[3, 3, 2, 1]], cardinal: 576 },
    OrbitRow { norm: 24, tag: None, reps: &[[4, 2, 2, 0]], cardinal: 96 },
];

/// Published basis expression of an orbit invariant in `T1, T2, T3, T6`.
pub struct ExpressionRow {
    pub norm: i64,
    pub tag: Option<u8>,
    pub text: &'static str,
    /// Exponent quadruples of monomials affected by known misprints in the
    /// source (a sign lost at a line break); the diff report flags them and
    /// the comparison exempts them.
    pub suspect_monomials: &'static [[u32; 4]],
}

/// Published expressions of the non-basis invariants up to squared norm 24
/// (23 rows; the source prints none for norms 21 and 23).
pub const EXPRESSION_ROWS: &[ExpressionRow] = &[
    ExpressionRow { norm: 4, tag: None, suspect_monomials: &[], text: "T1^2 - 2*T3 - 6*T2 - 8*T1 - 24" },
    ExpressionRow { norm: 5, tag: None, suspect_monomials: &[], text: "T2*T1 - 3*T3 - 6*T1" },
    ExpressionRow { norm: 7, tag: None, suspect_monomials: &[], text: "T3*T1 - 4*T2*T1 - 8*T1^2 - 3*T6 + 22*T3 + 36*T2 + 80*T1 + 192" },
    ExpressionRow { norm: 8, tag: None, suspect_monomials: &[], text: "T2^2 - 6*T1^2 - 2*T6 + 12*T3 + 28*T2 + 48*T1 + 120" },
    ExpressionRow { norm: 9, tag: Some(1), suspect_monomials: &[], text: "T3*T2 - 3*T3*T1 + 8*T2*T1 + 24*T1^2 + 9*T6 - 60*T3 - 108*T2 - 228*T1 - 576" },
    ExpressionRow { norm: 9, tag: Some(2), suspect_monomials: &[], text: "T1^3 - 3*T3*T1 - 3*T2*T1 + 3*T6 - 21*T3 - 36*T2 - 99*T1 - 192" },
    ExpressionRow { norm: 10, tag: None, suspect_monomials: &[], text: "T2*T1^2 - 2*T3*T2 - 8*T2*T1 - 6*T2^2 - 3*T6 - 30*T2" },
    ExpressionRow { norm: 11, tag: None, suspect_monomials: &[], text: "T6*T1 - 2*T3*T2 + 3*T3*T1 - 8*T2*T1 - 24*T1^2 - 9*T6 + 63*T3 + 108*T2 + 240*T1 + 576" },
    ExpressionRow { norm: 12, tag: None, suspect_monomials: &[], text: "-4*T2*T1^2 - 8*T1^3 - 2*T6*T1 + 8*T3*T2 + 12*T2^2 + 24*T3*T1 + 56*T2*T1 + T3^2 + 60*T1^2 + 40*T3 + 120*T2 + 288*T1 + 288" },
    ExpressionRow { norm: 13, tag: Some(1), suspect_monomials: &[], text: "T2^2*T1 - 6*T1^3 - 2*T6*T1 - T3*T2 + 15*T3*T1 + 19*T2*T1 + 24*T1^2 - 9*T6 + 63*T3 + 108*T2 + 354*T1 + 576" },
    ExpressionRow { norm: 13, tag: Some(2), suspect_monomials: &[], text: "T3*T1^2 - 2*T3^2 - T6*T1 - 6*T3*T2 - 6*T3*T1 - 8*T2*T1 - 16*T1^2 - 6*T6 + 20*T3 + 72*T2 + 152*T1 + 384" },
    ExpressionRow { norm: 14, tag: None, suspect_monomials: &[], text: "8*T2*T1^2 + 24*T1^3 + T6*T2 + 6*T6*T1 - 72*T3*T1 - 136*T2*T1 - 20*T2^2 - 16*T3*T2 - 3*T3^2 - 144*T1^2 + 22*T6 - 192*T3 - 400*T2 - 1152*T1 - 1536" },
    // The sign between 21*T3*T1 and 96*T2*T1 is lost at a line break in the
    // source; '+' is assumed here and the T2*T1 monomial is marked suspect.
    ExpressionRow { norm: 15, tag: None, suspect_monomials: &[[1, 1, 0, 0]], text: "T3*T2*T1 - 3*T3*T1^2 - 4*T2^2*T1 - 8*T2*T1^2 - 3*T6*T2 + T6*T1 + 40*T3*T2 + 21*T3*T1 + 96*T2*T1 + 6*T3^2 + 36*T2^2 + 24*T1^2 + 9*T6 - 6*T3 + 84*T2 - 240*T1 - 576" },
    ExpressionRow { norm: 16, tag: None, suspect_monomials: &[], text: "T1^4 - 4*T3*T1^2 - 4*T2*T1^2 + 4*T6*T1 + 2*T3^2 + 8*T3*T2 + 6*T2^2 - 16*T3*T1 - 16*T2*T1 - 76*T1^2 + 12*T6 - 40*T3 - 72*T2 - 416*T1 - 552" },
    ExpressionRow { norm: 17, tag: Some(1), suspect_monomials: &[], text: "-2*T3*T2*T1 + 3*T3*T1^2 + 4*T2^2*T1 + 16*T2*T1^2 + 12*T1^3 + T6*T3 + 6*T6*T2 + 5*T6*T1 - 6*T3^2 - 55*T3*T2 - 72*T2^2 - 51*T3*T1 - 200*T2*T1 - 72*T1^2 + 9*T6 - 120*T3 - 492*T2 - 468*T1 - 576" },
    ExpressionRow { norm: 17, tag: Some(2), suspect_monomials: &[], text: "-3*T3*T2*T1 + T2*T1^3 - 3*T2^2*T1 + 3*T6*T2 - T6*T1 - 36*T2^2 - 19*T3*T2 - 3*T3*T1 - 92*T2*T1 + 24*T1^2 + 9*T6 - 60*T3 - 300*T2 - 234*T1 - 576" },
    ExpressionRow { norm: 18, tag: Some(1), suspect_monomials: &[], text: "T2^3 - 24*T1^3 - 15*T2*T1^2 - 3*T6*T2 - 6*T6*T1 + 3*T3^2 + 30*T3*T2 + 72*T3*T1 + 54*T2^2 + 192*T2*T1 + 144*T1^2 - 21*T6 + 192*T3 + 549*T2 + 1152*T1 + 1536" },
    ExpressionRow { norm: 18, tag: Some(2), suspect_monomials: &[], text: "T6*T1^2 - 28*T2*T1^2 - 72*T1^3 - 2*T6*T3 - 9*T6*T2 - 26*T6*T1 + 56*T3*T2 + 216*T3*T1 + 84*T2^2 + 440*T2*T1 + 9*T3^2 + 432*T1^2 - 84*T6 + 576*T3 + 1308*T2 + 3456*T1 + 4608" },
    ExpressionRow { norm: 19, tag: Some(1), suspect_monomials: &[], text: "T3*T2^2 - T3*T2*T1 + 8*T2*T1^2 + 4*T2^2*T1 - 3*T3*T1^2 - 2*T6*T3 + 3*T6*T2 - 3*T6*T1 + 6*T3^2 - 8*T3*T2 - 36*T2^2 + 18*T3*T1 - 68*T2*T1 + 48*T1^2 + 18*T6 - 69*T3 - 408*T2 - 480*T1 - 1152" },
    ExpressionRow { norm: 19, tag: Some(2), suspect_monomials: &[], text: "-8*T1^4 - 4*T2*T1^3 + T3^2*T1 + 9*T3*T2*T1 + 23*T3*T1^2 + 12*T2^2*T1 - 2*T6*T1^2 + 48*T2*T1^2 + 48*T1^3 - T6*T3 - 3*T6*T2 - 7*T6*T1 + 2*T3^2 + 24*T3*T2 + 36*T2^2 + 72*T3*T1 + 244*T2*T1 + 384*T1^2 + 18*T3 + 192*T2 + 512*T1" },
    ExpressionRow { norm: 20, tag: None, suspect_monomials: &[], text: "-1716*T2 + 48*T6 - 2*T3*T2^2 - 8*T1*T2^2 - 2*T1^2*T6 - 2928*T1 - 636*T3 + 76*T1^2*T2 + T1^2*T2^2 - 228*T2^2 - 152*T2*T3 + 22*T1*T6 - 264*T1*T3 - 306*T1^2 - 680*T1*T2 + 12*T2*T6 - 27*T3^2 + 24*T1^2*T3 + 120*T1^3 + 4*T3*T6 - 6*T2^3 - 3600 - 6*T1^4" },
    ExpressionRow { norm: 22, tag: None, suspect_monomials: &[], text: "-4608 - 1008*T2 + 111*T6 - 576*T3 - 3456*T1 + 34*T1*T6 + 4*T3*T6 + 8*T3*T2^2 - 16*T2*T3 - 216*T1*T3 - 152*T1*T2 + 88*T1^2*T2 + 56*T1*T2^2 - 2*T1^2*T6 - 8*T1^3*T2 + 15*T2*T6 + T2*T3^2 - 4*T1^2*T2^2 - 2*T6*T1*T2 + 24*T1*T2*T3 - 432*T1^2 - 9*T3^2 + 36*T2^2 + 72*T1^3 + 12*T2^3" },
    ExpressionRow { norm: 24, tag: None, suspect_monomials: &[], text: "4320 + 1104*T2 - 152*T6 + 912*T3 + 3648*T1 - 64*T1*T6 - 16*T3*T6 - 8*T3*T2^2 + 96*T2*T3 + 384*T1*T3 + 128*T1*T2 - 208*T1^2*T2 - 80*T1*T2^2 + 8*T1^2*T6 + 16*T1^3*T2 - 24*T2*T6 - 2*T2*T3^2 + 4*T1^2*T2^2 - 48*T1^2*T3 + 4*T6*T1*T2 - 48*T1*T2*T3 + 312*T1^2 + 48*T3^2 + 12*T2^2 - 192*T1^3 - 8*T2^3 + 12*T1^4 + T6^2" },
];

/// Inverse-metric entry in orbit form: a list of `(norm, tag, num, den)`
/// coefficients of the orbit invariants (norm 0 = the constant invariant).
pub struct MetricOrbitRow {
    /// Basis pair `(m, n)` by squared root norm, `m <= n`.
    pub pair: (i64, i64),
    pub combo: &'static [(i64, Option<u8>, i64, i64)],
}

/// Inverse Riemannian in orbit form: the ten independent entries.
pub const METRIC_ORBIT_ROWS: &[MetricOrbitRow] = &[
    MetricOrbitRow { pair: (1, 1), combo: &[(4, None, -1, 1), (3, None, -1, 1), (1, None, 4, 1), (0, None, 24, 1)] },
    MetricOrbitRow { pair: (1, 2), combo: &[(5, None, -1, 1), (1, None, 6, 1)] },
    MetricOrbitRow { pair: (1, 3), combo: &[(7, None, -3, 2), (6, None, -3, 1), (5, None, -2, 1), (3, None, 3, 1), (2, None, 12, 1), (1, None, 12, 1)] },
    MetricOrbitRow { pair: (1, 6), combo: &[(11, None, -2, 1), (9, Some(1), -2, 1), (5, None, 4, 1), (3, None, 6, 1)] },
    MetricOrbitRow { pair: (2, 2), combo: &[(8, None, -2, 1), (6, None, -2, 1), (2, None, 8, 1), (0, None, 48, 1)] },
    MetricOrbitRow { pair: (2, 3), combo: &[(9, Some(1), -2, 1), (7, None, -3, 1), (3, None, 6, 1), (1, None, 24, 1)] },
    MetricOrbitRow { pair: (2, 6), combo: &[(14, None, -3, 1), (12, None, -6, 1), (10, None, -4, 1), (6, None, 6, 1), (4, None, 24, 1), (2, None, 24, 1)] },
    MetricOrbitRow { pair: (3, 3), combo: &[(12, None, -3, 1), (11, None, -5, 1), (10, None, -8, 1), (9, Some(2), -12, 1), (9, Some(1), -6, 1), (8, None, -12, 1), (7, None, -3, 1), (5, None, 4, 1), (4, None, 12, 1), (3, None, 21, 1), (2, None, 48, 1), (1, None, 60, 1), (0, None, 288, 1)] },
    MetricOrbitRow { pair: (3, 6), combo: &[(17, Some(1), -4, 1), (15, None, -6, 1), (13, Some(2), -6, 1), (13, Some(1), -8, 1), (11, None, -4, 1), (7, None, 6, 1), (5, None, 16, 1), (3, None, 36, 1), (1, None, 48, 1)] },
    MetricOrbitRow { pair: (6, 6), combo: &[(24, None, -6, 1), (22, None, -10, 1), (20, None, -16, 1), (18, Some(2), -12, 1), (18, Some(1), -24, 1), (16, None, -24, 1), (14, None, -6, 1), (10, None, 8, 1), (8, None, 24, 1), (6, None, 42, 1), (4, None, 96, 1), (2, None, 120, 1), (0, None, 576, 1)] },
];

/// Inverse Riemannian in basis form: the ten independent entries as
/// polynomials in `T1, T2, T3, T6`.
pub const METRIC_POLY_ROWS: &[((i64, i64), &str)] = &[
    ((1, 1), "-T1^2 + T3 + 6*T2 + 12*T1 + 48"),
    ((1, 2), "-T1*T2 + 3*T3 + 12*T1"),
    ((1, 3), "-3/2*T1*T3 + 4*T1*T2 + 12*T1^2 + 3/2*T6 - 24*T3 - 42*T2 - 96*T1 - 288"),
    ((1, 6), "-2*T1*T6 + 2*T2*T3 + 4*T1*T2 - 12*T3 - 48*T1"),
    ((2, 2), "-2*T2^2 + 12*T1^2 + 2*T6 - 24*T3 - 48*T2 - 96*T1 - 192"),
    ((2, 3), "-2*T2*T3 + 3*T1*T3 - 4*T1*T2 - 24*T1^2 - 9*T6 + 60*T3 + 108*T2 + 240*T1 + 576"),
    ((2, 6), "-4*T1^2*T2 - 24*T1^3 - 3*T2*T6 + 3*T3^2 + 8*T3*T2 - 6*T6*T1 + 72*T3*T1 + 104*T2*T1 + 12*T2^2 + 96*T1^2 - 48*T6 + 288*T3 + 480*T2 + 1536*T1 + 2304"),
    ((3, 3), "4*T2*T1^2 + 12*T1^3 - 4*T2*T3 - 3*T3^2 + T6*T1 - 36*T3*T1 - 60*T1*T2 - 96*T1^2 + 12*T6 - 48*T3 - 48*T2 - 384*T1"),
    ((3, 6), "2*T1*T2*T3 - 16*T1^2*T2 - 4*T3*T6 - 6*T2*T6 - 8*T1*T6 + 72*T2^2 + 32*T2*T3 - 12*T1*T3 + 144*T1*T2 + 96*T1^2 + 36*T6 - 240*T3 - 48*T2 - 960*T1 - 2304"),
    ((6, 6), "-16*T1^3*T2 - 4*T1*T2*T6 - 8*T1^2*T6 + 2*T2*T3^2 + 48*T1*T2*T3 - 96*T1^2*T2 + 48*T1*T2^2 - 192*T1^3 - 6*T6^2 + 16*T3*T6 - 24*T2*T6 + 16*T1*T6 + 24*T3^2 + 512*T2*T3 + 576*T1*T3 + 864*T2^2 + 2880*T1*T2 + 1344*T1^2 + 96*T6 + 1152*T3 + 6144*T2 + 7680*T1 + 9216"),
];

/// Published determinant factor for the short-root orbit (clean row).
pub const P1_TEXT: &str = "110592*T1 + 41472*T2 + 27648*T3 + 110592 - 3456*T6 - 1728*T1*T6 \
+ 192*T1*T3^2 - 432*T3*T6 - 112*T1^3*T3 - 384*T1^2*T3 \
+ 5184*T2*T3 + 20736*T1*T2 - 1728*T1^2*T2 + 144*T1^2*T6 \
- 48*T1^3*T2 - 648*T2*T6 + 14976*T1*T3 + 4*T6*T1^3 \
- T3^2*T1^2 + 216*T1*T2*T3 - 18*T6*T1*T3 - 4608*T1^3 \
+ 1728*T3^2 + 18432*T1^2 + 3888*T2^2 + 27*T6^2 + 16*T1^5 \
+ 4*T3^3";

/// Published determinant factor for the long-root orbit, transcribed
/// verbatim. The row repeats the monomials `T1*T2` and `T1*T6` with extra
/// coefficients (`88128`, `45888` and `108`), apparently misprints; the
/// parser sums repeated monomials and the diff report isolates the damage.
pub const P2_TEXT: &str = "10616832*T1 + 4423680*T2 + 1769472*T3 + 7077888 - 221184*T6 \
- 221184*T1*T6 + 103680*T1*T3^2 - 27648*T3*T6 \
+ 34560*T1^3*T3 + 663552*T1^2*T3 + 774144*T2*T3 \
+ 4866048*T1*T2 + 1465344*T1^2*T2 - 62208*T1^2*T6 \
- 6912*T1^3*T2 - 78336*T2*T6 + 1990656*T1*T3 \
- 1728*T6*T1^3 + 18144*T3^2*T1^2 - T2^2*T6^2 \
+ 566784*T1*T2*T3 - 17280*T6*T1*T3 - 8*T6*T1*T2^3 \
+ 79488*T1^2*T3*T2 - 48384*T6*T1*T2 - 2592*T6*T1*T2^2 \
+ 43200*T1*T2^2*T3 + 36*T6^2*T1*T2 - 2592*T3*T1^2*T6 \
- 8640*T3*T1^3*T2 - 4608*T2*T3*T6 - 5184*T2*T1^2*T6 \
+ 576*T6*T1^3*T2 - 18*T6*T2*T3^2 + 13392*T1*T2*T3^2 \
- 144*T2^2*T3*T6 - 1728*T2^2*T3*T1^2 + 96*T2^3*T3*T1 \
- 216*T3^2*T1^2*T2 - 108*T1*T6*T3^2 + 72*T1^2*T6*T2^2 \
+ 774144*T1^3 + 138240*T3^2 + 5308416*T1^2 + 1096704*T2^2 \
+ 1728*T6^2 - 20736*T1^5 + 3456*T3^3 - 103680*T1^4 + 129024*T2^3 \
+ 6384*T2^4 + 1728*T1^6 + 27*T3^4 + 64*T2^5 + 4*T6^3 \
+ 119808*T3*T2^2 + 787968*T1*T2^2 + 36288*T2*T3^2 \
+ 88128*T1*T2 + 108*T1*T6 + 45888*T1*T2 \
- 18432*T1^3*T2^2 - 9024*T2^2*T6 + 2520*T2^2*T3^2 \
+ 192*T2*T6^2 + 864*T1*T6^2 - 432*T6*T3^2 - 328*T2^3*T6 \
- 10368*T1^4*T3 - 32*T1^3*T2^3 + 6592*T2^3*T3 - 2976*T1^2*T2^3 \
+ 432*T1^4*T2^2 + 1728*T1^5*T2 - 432*T3^2*T1^3 + 1296*T3^3*T1 \
+ 864*T1^4*T6 + 432*T2*T3^3 - 34560*T1^4*T2 + 32*T2^4*T3 \
- 16*T1^2*T2^4 + 224*T1*T2^4 + 4*T2^3*T3^2 \
- 1296*T6*T1*T2*T3";

/// Monomials of the published long-root factor touched by the suspected
/// misprints (the duplicated `T1*T2` and `T1*T6` coefficients).
pub const P2_SUSPECT_MONOMIALS: &[[u32; 4]] = &[[1, 1, 0, 0], [1, 0, 0, 1]];

/// r-coefficient vector for the short-root orbit, components indexed by the
/// basis variables `(T1, T2, T3, T6)`.
pub const R1_TEXTS: [&str; 4] = [
    "-5*T1 - 24",
    "-6*T2 - 6*T1",
    "-9*T3 - 12*T2 - 24*T1",
    "-4*T1*T2 - 12*T6 - 24*T2 + 24*T1",
];

/// r-coefficient vector for the long-root orbit.
pub const R2_TEXTS: [&str; 4] = [
    "-6*T1",
    "-10*T2 - 48",
    "-12*T3 - 24*T1",
    "-24*T1^2 - 18*T6 + 48*T3 + 96*T2 + 192*T1 + 576",
];

/// Closed-form constants of `R_ab = rho_ab * S_a + C_ab` where `S_a` is the
/// inverse-sin-squared sum over the positive semiorbit: `(a, b, rho, C)`.
pub const POTENTIAL_CONSTANTS: &[(usize, usize, i64, i64)] = &[
    (1, 1, 1, -28),
    (2, 2, 2, -56),
    (1, 2, 0, -36),
    (2, 1, 0, -36),
];

/// Maximal vectors of the four basis orbits in half-integer e-basis
/// coefficients: `e1`, `e1+e2`, `(3e1+e2+e3+e4)/2`, `2e1+e2+e3`.
pub const BASIS_MAX_VECTORS_HALVES: [[i32; 4]; 4] =
    [[2, 0, 0, 0], [2, 2, 0, 0], [3, 1, 1, 1], [4, 2, 2, 0]];

/// Weyl-type vectors of the two root orbits: `5e1+e2+e3+e4` and `6e1+4e2+2e3`.
pub const ROOT_WEYL_VECTORS: [[i32; 4]; 2] = [[5, 1, 1, 1], [6, 4, 2, 0]];

use crate::poly::{Monomial, Poly};
use crate::q::{q_display, Q};
use num_traits::Zero;

/// One monomial where a computed polynomial and a published row disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyDiff {
    pub monomial: Monomial,
    pub computed: Q,
    pub published: Q,
}

/// Term-by-term comparison, sorted by exponent vector.
pub fn poly_diff(computed: &Poly, published: &Poly) -> Vec<PolyDiff> {
    let mut monomials: Vec<Monomial> = computed.iter().map(|(m, _)| m.clone()).collect();
    for (m, _) in published.iter() {
        if !monomials.contains(m) {
            monomials.push(m.clone());
        }
    }
    monomials.sort();
    monomials
        .into_iter()
        .filter_map(|m| {
            let a = computed.coeff(&m);
            let b = published.coeff(&m);
            (a != b).then_some(PolyDiff {
                monomial: m,
                computed: a,
                published: b,
            })
        })
        .collect()
}

/// True iff every diff touches only the listed suspect monomials.
pub fn diffs_only_in(diffs: &[PolyDiff], suspects: &[[u32; 4]]) -> bool {
    diffs
        .iter()
        .all(|d| suspects.iter().any(|s| d.monomial.exps() == s.as_slice()))
}

/// Human-readable diff lines: `T1^1*T2^1: computed -96, published 96`.
pub fn render_diffs(diffs: &[PolyDiff], names: &[&str]) -> Vec<String> {
    diffs
        .iter()
        .map(|d| {
            let mono = if d.monomial.is_constant() {
                "constant".to_string()
            } else {
                d.monomial
                    .exps()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            names[i].to_string()
                        } else {
                            format!("{}^{}", names[i], e)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("*")
            };
            let side = |v: &Q| {
                if v.is_zero() {
                    "absent".to_string()
                } else {
                    q_display(v)
                }
            };
            format!(
                "{}: computed {}, published {}",
                mono,
                side(&d.computed),
                side(&d.published)
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_rows_shape() {
        assert_eq!(ORBIT_ROWS.len(), 30);
        let total: usize = ORBIT_ROWS.iter().map(|r| r.cardinal).sum();
        assert_eq!(total, 5688);
        for w in ORBIT_ROWS.windows(2) {
            if w[0].norm == w[1].norm {
                assert!(w[0].tag.is_some() && w[1].tag.is_some());
            }
        }
    }

    #[test]
    fn expression_rows_shape() {
        assert_eq!(EXPRESSION_ROWS.len(), 23);
        let basis = [1, 2, 3, 6];
        for row in EXPRESSION_ROWS {
            assert!(!basis.contains(&row.norm));
        }
    }

    #[test]
    fn metric_rows_shape() {
        assert_eq!(METRIC_ORBIT_ROWS.len(), 10);
        assert_eq!(METRIC_POLY_ROWS.len(), 10);
        let pairs: Vec<_> = METRIC_ORBIT_ROWS.iter().map(|r| r.pair).collect();
        assert_eq!(pairs, METRIC_POLY_ROWS.iter().map(|r| r.0).collect::<Vec<_>>());
    }
}
