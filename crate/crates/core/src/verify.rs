//! The full self-check pipeline: every published table and identity the
//! engine is expected to reproduce, with pinned tolerances, reported one
//! criterion per line. Shared by the acceptance test suite and the `verify`
//! command.

use crate::chevalley::{build_basis, verify_expression, BasisResult, SubstCache};
use crate::expsum::{ExpSum, FusionTable, InvariantCombo};
use crate::lattice::{LatticeVector, OrderingVector};
use crate::metric::{
    asymptotic_report, basis_values_at, factorize, sin_product_poly, sin_product_value,
    FactorizationResult, InverseMetric,
};
use crate::orbits::{semiorbit_split, weyl_vector, OrbitLabel, OrbitTable, RootSystem};
use crate::poly::{f4_order, Monomial, Poly, F4_VAR_NAMES};
use crate::q::{q, q_display, q_ratio, Q};
use crate::reference;
use crate::sutherland::{
    flag_matrix, potential_data, potential_w, spectrum, EigenValue, OperatorSpec, RCoefficients,
};
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of one acceptance criterion.
pub struct CriterionReport {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {:2}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.index,
            self.name
        )
    }
}

pub struct AcceptanceOutcome {
    pub reports: Vec<CriterionReport>,
}

impl AcceptanceOutcome {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }
}

/// Everything the criteria need, built once. The norm-56 table covers the
/// long-root Weyl vector reached by the sine products.
pub struct Session {
    pub rs: RootSystem,
    pub table: OrbitTable,
    pub fusion: FusionTable,
    pub basis: BasisResult,
    pub im: InverseMetric,
    pub fact: FactorizationResult,
    pub rc: RCoefficients,
}

impl Session {
    pub fn build() -> Result<Session, String> {
        Self::build_to_norm(56)
    }

    pub fn build_to_norm(max_norm: i64) -> Result<Session, String> {
        let rs = RootSystem::f4();
        let xi = OrderingVector::default_for_dim(rs.dim());
        let table = OrbitTable::build(&rs, max_norm, xi).map_err(|e| e.to_string())?;
        let mut fusion = FusionTable::new();
        let basis = build_basis(&table, &mut fusion).map_err(|e| e.to_string())?;
        let im = InverseMetric::compute(&table, &basis, &mut fusion).map_err(|e| e.to_string())?;
        let fact = factorize(&im, &rs, &table, &basis).map_err(|e| e.to_string())?;
        let rc = RCoefficients::compute(&im, &fact).map_err(|e| e.to_string())?;
        Ok(Session {
            rs,
            table,
            fusion,
            basis,
            im,
            fact,
            rc,
        })
    }
}

/// Runs every criterion; `seed` feeds all randomized checks.
pub fn run_acceptance(seed: u64) -> AcceptanceOutcome {
    let mut reports = Vec::new();
    let mut session = match Session::build() {
        Ok(s) => s,
        Err(e) => {
            return AcceptanceOutcome {
                reports: vec![CriterionReport {
                    index: 0,
                    name: "session build (orbits, basis, metric, factors, r-coefficients)",
                    passed: false,
                    details: vec![e],
                }],
            }
        }
    };

    reports.push(criterion_1_orbit_table(&session));
    reports.push(criterion_2_basis(&session));
    reports.push(criterion_3_expressions(&session));
    reports.push(criterion_4_metric(&session));
    reports.push(criterion_5_factorization(&session));
    reports.push(criterion_6_numeric_products(&session, seed));
    reports.push(criterion_7_r_coefficients(&session));
    reports.push(criterion_8_flag_and_spectra(&session));
    reports.push(criterion_9_potential(&session, seed));
    reports.push(criterion_10_property_suites(&mut session, seed));
    AcceptanceOutcome { reports }
}

fn report(
    index: usize,
    name: &'static str,
    failures: Vec<String>,
    mut notes: Vec<String>,
) -> CriterionReport {
    let passed = failures.is_empty();
    let mut details = failures;
    details.append(&mut notes);
    CriterionReport {
        index,
        name,
        passed,
        details,
    }
}

fn criterion_1_orbit_table(session: &Session) -> CriterionReport {
    let mut failures = Vec::new();
    let table = match OrbitTable::build(
        &session.rs,
        24,
        OrderingVector::default_for_dim(session.rs.dim()),
    ) {
        Ok(t) => t,
        Err(e) => {
            return report(1, "orbit table to norm 24", vec![e.to_string()], vec![]);
        }
    };
    if table.nonzero_orbits().count() != 30 || table.orbits().len() != 31 {
        failures.push(format!(
            "expected 30 nonzero orbits (31 with the null orbit), found {}",
            table.nonzero_orbits().count()
        ));
    }
    for row in reference::ORBIT_ROWS {
        let label = OrbitLabel::new(row.norm, row.tag);
        match table.orbit(&label) {
            None => failures.push(format!("orbit {} missing", label)),
            Some(orbit) => {
                if orbit.cardinal() != row.cardinal {
                    failures.push(format!(
                        "orbit {}: cardinal {} != {}",
                        label,
                        orbit.cardinal(),
                        row.cardinal
                    ));
                }
                for rep in row.reps {
                    let v = LatticeVector::from_units(rep);
                    if !orbit.elements().contains(&v) {
                        failures.push(format!("orbit {}: listed vector {} missing", label, v));
                    }
                }
            }
        }
    }
    report(1, "orbit table to norm 24 (30 nonzero orbits, all cardinals and listed vectors)", failures, vec![])
}

fn criterion_2_basis(session: &Session) -> CriterionReport {
    let mut failures = Vec::new();
    let labels: Vec<String> = session.basis.basis().iter().map(|l| l.to_string()).collect();
    if labels != ["1", "2", "3", "6"] {
        failures.push(format!("basis came out as {{{}}}", labels.join(", ")));
    }
    report(2, "algebraic basis discovery: exactly {1, 2, 3, 6}", failures, vec![])
}

fn criterion_3_expressions(session: &Session) -> CriterionReport {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for row in reference::EXPRESSION_ROWS {
        let label = OrbitLabel::new(row.norm, row.tag);
        let published = match Poly::parse(row.text, &F4_VAR_NAMES) {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("row T{}: {}", label, e));
                continue;
            }
        };
        let computed = match session.basis.express(&label) {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("row T{}: {}", label, e));
                continue;
            }
        };
        let diffs = reference::poly_diff(computed, &published);
        if diffs.is_empty() {
            continue;
        }
        if reference::diffs_only_in(&diffs, row.suspect_monomials) {
            for line in reference::render_diffs(&diffs, &F4_VAR_NAMES) {
                notes.push(format!("T{} (known misprint) {}", label, line));
            }
        } else {
            for line in reference::render_diffs(&diffs, &F4_VAR_NAMES) {
                failures.push(format!("T{}: {}", label, line));
            }
        }
    }
    // Independent oracle over every orbit the table holds, basis included.
    let mut cache = match SubstCache::new(&session.table, &session.basis) {
        Ok(c) => c,
        Err(e) => {
            failures.push(e.to_string());
            return report(3, "published expressions and substitution oracle", failures, notes);
        }
    };
    let mut verified = 0usize;
    for orbit in session.table.orbits() {
        match verify_expression(&orbit.label, &session.basis, &session.table, &mut cache) {
            Ok(true) => verified += 1,
            Ok(false) => failures.push(format!("substitution oracle failed for orbit {}", orbit.label)),
            Err(e) => failures.push(format!("orbit {}: {}", orbit.label, e)),
        }
    }
    notes.push(format!(
        "substitution oracle verified {} orbit expressions up to norm {}",
        verified,
        session.table.max_norm()
    ));
    report(3, "published expressions (23 rows) and substitution oracle for all orbits", failures, notes)
}

fn criterion_4_metric(session: &Session) -> CriterionReport {
    let mut failures = Vec::new();
    for row in reference::METRIC_ORBIT_ROWS {
        let (m, n) = row.pair;
        let i = session.basis.basis().iter().position(|l| l.norm == m);
        let j = session.basis.basis().iter().position(|l| l.norm == n);
        let (Some(i), Some(j)) = (i, j) else {
            failures.push(format!("basis misses the ({}, {}) pair", m, n));
            continue;
        };
        let mut expected = InvariantCombo::new();
        for &(norm, tag, num, den) in row.combo {
            expected.add(OrbitLabel::new(norm, tag), q_ratio(num, den));
        }
        if session.im.orbit_entry(i, j) != &expected {
            failures.push(format!("orbit-form entry ({}, {}) differs", m, n));
        }
    }
    for ((m, n), text) in reference::METRIC_POLY_ROWS {
        let i = session.basis.basis().iter().position(|l| l.norm == *m);
        let j = session.basis.basis().iter().position(|l| l.norm == *n);
        let (Some(i), Some(j)) = (i, j) else { continue };
        match Poly::parse(text, &F4_VAR_NAMES) {
            Ok(published) => {
                let diffs = reference::poly_diff(session.im.poly_entry(i, j), &published);
                for line in reference::render_diffs(&diffs, &F4_VAR_NAMES) {
                    failures.push(format!("basis-form entry ({}, {}): {}", m, n, line));
                }
            }
            Err(e) => failures.push(format!("entry ({}, {}): {}", m, n, e)),
        }
    }
    report(
        4,
        "inverse metric: ten entries in both forms; fusion and pairing routes agree exactly",
        failures,
        vec!["the two internal constructions were compared entry by entry during assembly".into()],
    )
}

fn criterion_5_factorization(session: &Session) -> CriterionReport {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    // The determinant identity det == 1/4 P1 P2 was enforced exactly when
    // the session factorized; recheck it here so the criterion stands alone.
    let mut product = Poly::one(session.im.dim()).scale(&session.fact.constant);
    for f in &session.fact.factors {
        product = product.mul(f);
    }
    if product != session.fact.det {
        failures.push("det != 1/4 P1 P2".into());
    }
    match Poly::parse(reference::P1_TEXT, &F4_VAR_NAMES) {
        Ok(published) => {
            let diffs = reference::poly_diff(&session.fact.factors[0], &published);
            for line in reference::render_diffs(&diffs, &F4_VAR_NAMES) {
                failures.push(format!("P1: {}", line));
            }
        }
        Err(e) => failures.push(format!("P1 text: {}", e)),
    }
    match Poly::parse(reference::P2_TEXT, &F4_VAR_NAMES) {
        Ok(published) => {
            let diffs = reference::poly_diff(&session.fact.factors[1], &published);
            if reference::diffs_only_in(&diffs, reference::P2_SUSPECT_MONOMIALS) {
                for line in reference::render_diffs(&diffs, &F4_VAR_NAMES) {
                    notes.push(format!("P2 (known misprints) {}", line));
                }
            } else {
                for line in reference::render_diffs(&diffs, &F4_VAR_NAMES) {
                    failures.push(format!("P2: {}", line));
                }
            }
        }
        Err(e) => failures.push(format!("P2 text: {}", e)),
    }
    let expected_monomials = [
        Monomial::from_exps(&[2, 0, 2, 0]),
        Monomial::from_exps(&[0, 2, 0, 2]),
    ];
    for (a, factor) in session.fact.factors.iter().enumerate() {
        match asymptotic_report(factor, &session.table, &session.basis) {
            Ok(rep) => {
                if rep.monomial != expected_monomials[a] || rep.coefficient != q(-1) {
                    failures.push(format!(
                        "P{}: leading asymptotic monomial {:?} with coefficient {}",
                        a + 1,
                        rep.monomial,
                        q_display(&rep.coefficient)
                    ));
                }
                let expected_freq = LatticeVector::from_units(&reference::ROOT_WEYL_VECTORS[a]);
                if rep.frequency != expected_freq {
                    failures.push(format!("P{}: asymptotic frequency {}", a + 1, rep.frequency));
                }
                let seed = &session.rs.root_seeds()[a];
                let orbit = session.table.orbit_of_member(seed).expect("root orbit");
                match weyl_vector(orbit, session.table.xi()) {
                    Ok(rho) if rho == expected_freq => {}
                    Ok(rho) => failures.push(format!("orbit {} Weyl vector {}", orbit.label, rho)),
                    Err(e) => failures.push(e.to_string()),
                }
            }
            Err(e) => failures.push(format!("P{}: {}", a + 1, e)),
        }
    }
    report(
        5,
        "factorization: det == 1/4 P1 P2 exactly; P1 matches its published row; P2 diff confined to known misprints; asymptotics reach the Weyl vectors",
        failures,
        notes,
    )
}

fn criterion_6_numeric_products(session: &Session, seed: u64) -> CriterionReport {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x600d);
    let labels = [OrbitLabel::plain(1), OrbitLabel::plain(2)];
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let x: Vec<f64> = (0..4)
            .map(|_| rng.gen::<f64>() * 2.0 * std::f64::consts::PI)
            .collect();
        let tvals = basis_values_at(&x, &session.table, &session.basis);
        for (a, label) in labels.iter().enumerate() {
            let lhs = session.fact.factors[a].eval_f64(&tvals);
            let sin_prod = match sin_product_value(&x, label, &session.table) {
                Ok(v) => v,
                Err(e) => {
                    failures.push(e.to_string());
                    continue;
                }
            };
            let relative = (lhs + 2f64.powi(24) * sin_prod).abs() / lhs.abs().max(1.0);
            worst = worst.max(relative);
            if relative >= 1e-6 {
                failures.push(format!("P{} at {:?}: relative error {:.3e}", a + 1, x, relative));
            }
        }
    }
    report(
        6,
        "numeric product identity at 100 seeded points, relative error below 1e-6",
        failures,
        vec![format!("worst relative error {:.3e}", worst)],
    )
}

fn criterion_7_r_coefficients(session: &Session) -> CriterionReport {
    let mut failures = Vec::new();
    let rows = [&reference::R1_TEXTS, &reference::R2_TEXTS];
    for (a, texts) in rows.iter().enumerate() {
        for (m, text) in texts.iter().enumerate() {
            match Poly::parse(text, &F4_VAR_NAMES) {
                Ok(published) => {
                    if session.rc.component(a, m) != &published {
                        failures.push(format!(
                            "r^({}) component {} differs: computed {}",
                            a + 1,
                            F4_VAR_NAMES[m],
                            session.rc.component(a, m).render(&F4_VAR_NAMES, &f4_order())
                        ));
                    }
                }
                Err(e) => failures.push(format!("r^({}) component {}: {}", a + 1, m, e)),
            }
        }
    }
    report(
        7,
        "r-coefficients: exact division succeeded and both vectors match the published rows",
        failures,
        vec![],
    )
}

fn criterion_8_flag_and_spectra(session: &Session) -> CriterionReport {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let gammas: [(Q, Q); 5] = [
        (q(0), q(0)),
        (q_ratio(1, 3), q_ratio(1, 5)),
        (q(1), q(1)),
        (q(-2), q(7)),
        (q_ratio(1, 2), q_ratio(1, 2)),
    ];
    let max_n: u64 = 12;
    let mut eigenpairs_checked = 0usize;
    for (g1, g2) in &gammas {
        let label = format!("gamma = ({}, {})", q_display(g1), q_display(g2));
        let op = OperatorSpec::new(&session.im, &session.rc, &[g1.clone(), g2.clone()]);
        // Flag invariance and block triangularity at every level up to the cap.
        match flag_matrix(&op, max_n) {
            Ok((space, matrix)) => {
                for i in 0..space.dim() {
                    for j in 0..space.dim() {
                        if space.weight_of(j) > space.weight_of(i) && !matrix[i][j].is_zero() {
                            failures.push(format!(
                                "{}: matrix not block triangular at ({}, {})",
                                label, i, j
                            ));
                        }
                    }
                }
            }
            Err(e) => {
                failures.push(format!("{}: {}", label, e));
                continue;
            }
        }
        for n in 0..max_n {
            if let Err(e) = flag_matrix(&op, n) {
                failures.push(format!("{} at N = {}: {}", label, n, e));
            }
        }
        // Spectra nest across the flag and solve exactly.
        let mut previous: Vec<Q> = Vec::new();
        for n in 0..=max_n {
            let spec = match spectrum(&op, n) {
                Ok(s) => s,
                Err(e) => {
                    failures.push(format!("{} spectrum at N = {}: {}", label, n, e));
                    continue;
                }
            };
            let mut values = spec.rational_values();
            for v in &previous {
                match values.iter().position(|x| x == v) {
                    Some(pos) => {
                        values.remove(pos);
                    }
                    None => failures.push(format!(
                        "{}: eigenvalue {} of N = {} lost at N = {}",
                        label,
                        q_display(v),
                        n - 1,
                        n
                    )),
                }
            }
            previous = spec.rational_values();
            if n == max_n {
                for pair in &spec.pairs {
                    match (&pair.value, &pair.function) {
                        (EigenValue::Rational(v), Some(p)) => {
                            if op.apply(p) != p.scale(v) {
                                failures.push(format!(
                                    "{}: eigenpair at weight {} does not solve exactly",
                                    label, pair.weight
                                ));
                            }
                            eigenpairs_checked += 1;
                        }
                        (EigenValue::Rational(_), None) => {
                            notes.push(format!("{}: defective direction reported", label));
                        }
                        (EigenValue::Approx { .. }, _) => {
                            failures.push(format!(
                                "{}: non-rational eigenvalue in a block at weight {}",
                                label, pair.weight
                            ));
                        }
                    }
                }
                for note in &spec.notes {
                    notes.push(format!("{}: {}", label, note));
                }
            }
        }
    }
    notes.push(format!(
        "verified {} exact eigenpairs at the top flag level across 5 couplings",
        eigenpairs_checked
    ));
    report(
        8,
        "flag invariance for N <= 12 at five couplings; nested spectra; exact eigen-equations",
        failures,
        notes,
    )
}

fn criterion_9_potential(session: &Session, seed: u64) -> CriterionReport {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let pd = match potential_data(
        &session.im,
        &session.fact,
        &session.rc,
        &session.rs,
        &session.table,
        &session.basis,
        seed ^ 0x9e77,
    ) {
        Ok(pd) => pd,
        Err(e) => {
            return report(9, "potential constants and vanishing at half couplings", vec![e.to_string()], vec![]);
        }
    };
    for &(a, b, rho, c) in reference::POTENTIAL_CONSTANTS {
        if pd.rho[a - 1][b - 1] != q(rho) || pd.c[a - 1][b - 1] != q(c) {
            failures.push(format!(
                "(a, b) = ({}, {}): fitted (rho, C) = ({}, {})",
                a,
                b,
                q_display(&pd.rho[a - 1][b - 1]),
                q_display(&pd.c[a - 1][b - 1])
            ));
        }
    }
    if pd.residual >= 1e-8 {
        failures.push(format!("fit residual {:.3e}", pd.residual));
    } else {
        notes.push(format!("fit residual {:.3e}", pd.residual));
    }
    // W vanishes identically at gamma = (1/2, 1/2).
    let gamma = [q_ratio(1, 2), q_ratio(1, 2)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x77aa);
    let mut produced = 0;
    let mut attempts = 0;
    while produced < 10 && attempts < 2000 {
        attempts += 1;
        let x: Vec<f64> = (0..4)
            .map(|_| rng.gen::<f64>() * 2.0 * std::f64::consts::PI)
            .collect();
        match potential_w(&x, &gamma, &pd, &session.rs, &session.table, &session.basis) {
            Ok(w) => {
                produced += 1;
                if w.abs() >= 1e-8 {
                    failures.push(format!("W = {:.3e} at {:?} for half couplings", w, x));
                }
            }
            Err(crate::sutherland::SutherlandError::OnWall) => continue,
            Err(e) => {
                failures.push(e.to_string());
                break;
            }
        }
    }
    if produced < 10 {
        failures.push(format!("only {} sample points evaluated", produced));
    }
    report(
        9,
        "potential: fitted (rho, C) match the published constants; W vanishes at half couplings",
        failures,
        notes,
    )
}

fn criterion_10_property_suites(session: &mut Session, seed: u64) -> CriterionReport {
    let mut failures = Vec::new();
    let mut notes = Vec::new();

    // Fusion triangle bound and top coefficient over all pairs with norms
    // up to 12.
    let labels: Vec<OrbitLabel> = session
        .table
        .nonzero_orbits()
        .filter(|o| o.norm() <= 12)
        .map(|o| o.label)
        .collect();
    let mut fusions = 0usize;
    for (i, a) in labels.iter().enumerate() {
        for b in &labels[i..] {
            match session.fusion.fusion(&session.table, a, b) {
                Ok(combo) => {
                    fusions += 1;
                    let lo = (f64::sqrt(a.norm as f64) - f64::sqrt(b.norm as f64)).powi(2);
                    let hi = (f64::sqrt(a.norm as f64) + f64::sqrt(b.norm as f64)).powi(2);
                    for (k, _) in combo.iter() {
                        let kf = k.norm as f64;
                        if kf < lo - 1e-9 || kf > hi + 1e-9 {
                            failures.push(format!(
                                "triangle bound broken: {} in {} x {}",
                                k, a, b
                            ));
                        }
                    }
                    // The top-coefficient-one check runs inside fusion();
                    // reaching here means it held.
                }
                Err(e) => failures.push(format!("fusion {} x {}: {}", a, b, e)),
            }
        }
    }
    notes.push(format!(
        "{} fusions checked for the triangle bound and unit top coefficient",
        fusions
    ));

    // Symmetry of the weighted fusion coefficients by brute-force triple
    // counting on norms up to 6.
    let small: Vec<OrbitLabel> = session
        .table
        .nonzero_orbits()
        .filter(|o| o.norm() <= 6)
        .map(|o| o.label)
        .collect();
    for a in &small {
        for b in &small {
            for k in &small {
                let oa = session.table.orbit(a).unwrap();
                let ob = session.table.orbit(b).unwrap();
                let ok = session.table.orbit(k).unwrap();
                let mut count = 0usize;
                for beta in oa.elements() {
                    for beta2 in ob.elements() {
                        let gamma = -&(beta + beta2);
                        if ok.elements().contains(&gamma) {
                            count += 1;
                        }
                    }
                }
                let combo = match session.fusion.fusion(&session.table, a, b) {
                    Ok(c) => c,
                    Err(e) => {
                        failures.push(e.to_string());
                        continue;
                    }
                };
                let coeff = combo.coeff(k).cloned().unwrap_or_else(Q::zero);
                let weighted = q(ok.cardinal() as i64) * coeff;
                if weighted != q(count as i64) {
                    failures.push(format!(
                        "triple count for ({}, {}, {}): {} vs {}",
                        a,
                        b,
                        k,
                        count,
                        q_display(&weighted)
                    ));
                }
            }
        }
    }
    notes.push(format!(
        "weighted fusion coefficients match brute-force triple counts on {} orbit labels",
        small.len()
    ));

    // Randomized reflection and decomposition round trips.
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xf1ae);
    let roots = session.rs.roots();
    for _ in 0..1000 {
        let v = random_lattice_vector(&mut rng);
        let root = &roots[rng.gen_range(0..roots.len())];
        match v.reflect(root) {
            Ok(w) => {
                if w.norm_sq() != v.norm_sq() {
                    failures.push(format!("reflection changed the norm of {}", v));
                }
                if w.reflect(root) != Ok(v.clone()) {
                    failures.push(format!("reflection not involutive at {}", v));
                }
            }
            Err(e) => failures.push(format!("reflect {}: {}", v, e)),
        }
    }
    let all_labels: Vec<OrbitLabel> = session.table.orbits().iter().map(|o| o.label).collect();
    for _ in 0..1000 {
        let mut combo = InvariantCombo::new();
        for _ in 0..rng.gen_range(1..=4usize) {
            let label = all_labels[rng.gen_range(0..all_labels.len())];
            let num = rng.gen_range(-6i64..=6);
            let den = rng.gen_range(1i64..=4);
            combo.add(label, q_ratio(num, den));
        }
        let expanded = match combo.expand(&session.table) {
            Ok(e) => e,
            Err(e) => {
                failures.push(e.to_string());
                continue;
            }
        };
        match expanded.decompose(&session.table) {
            Ok(back) => {
                if back != combo {
                    failures.push(format!("decomposition round trip failed for {}", combo));
                }
            }
            Err(e) => failures.push(format!("decompose: {}", e)),
        }
    }
    notes.push("1000 reflection and 1000 decomposition round trips".into());
    report(
        10,
        "property suites: triangle bound, unit top coefficients, triple-count symmetry, randomized round trips",
        failures,
        notes,
    )
}

/// Random lattice point with unit or half-odd coordinates up to a few units.
fn random_lattice_vector(rng: &mut ChaCha8Rng) -> LatticeVector {
    if rng.gen::<bool>() {
        let units: Vec<i32> = (0..4).map(|_| rng.gen_range(-5i32..=5)).collect();
        LatticeVector::from_units(&units)
    } else {
        let halves: Vec<i32> = (0..4)
            .map(|_| 2 * rng.gen_range(-5i32..=4) + 1)
            .collect();
        LatticeVector::from_halves(&halves)
    }
}

/// Numeric sanity helper used by tests and the command line: the inverse
/// sine-squared sums behind the closed potential form.
pub fn potential_profile(
    session: &Session,
    x: &[f64],
) -> Result<(f64, f64), crate::sutherland::SutherlandError> {
    let s1 = crate::sutherland::inverse_sin_sq_sum(x, &OrbitLabel::plain(1), &session.table)?;
    let s2 = crate::sutherland::inverse_sin_sq_sum(x, &OrbitLabel::plain(2), &session.table)?;
    Ok((s1, s2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn session_below_norm_56_reports_the_needed_cutoff() {
        // The long-root sine product reaches its Weyl vector at norm 56, so
        // a norm-28 session fails at the factorization stage and says so.
        let err = match Session::build_to_norm(28) {
            Err(e) => e,
            Ok(_) => panic!("norm-28 session unexpectedly built"),
        };
        assert!(err.contains("56"), "unexpected message: {}", err);
    }

    #[test]
    fn metric_and_r_criteria_pass_on_a_full_session() {
        let session = Session::build().unwrap();
        assert!(criterion_2_basis(&session).passed);
        assert!(criterion_4_metric(&session).passed);
        assert!(criterion_7_r_coefficients(&session).passed);
    }
}
