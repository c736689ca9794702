//! Named verification suites. Each check has a stable id, runs
//! deterministically (seeded sampling) and records a JSON witness.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::blade::{check_dim, Blade};
use crate::deformation::{
    grouplike_coproduct, minus_coproduct, BilinearForm, Cliffordization,
};
use crate::element::{Element, TensorElement};
use crate::error::{Error, Result};
use crate::experiments::diagonal::{diagonal_metric_spectrum, multiset};
use crate::experiments::dim2::{
    bracket_tables, closed_form_eigenvalues, dim2_gram_closed_form, dim2_gram_entries, locus_rho,
    scan_grid, Dim2Params, Range,
};
use crate::exterior::{antipode, blade_coproduct, contract, counit, tensor_map, tensor_wedge, wedge_blades};
use crate::matrix::RectMatrix;
use crate::scalar::{format_rational, Rational, Scalar};
use crate::spectral::{
    coproduct_matching_residual, dot, norm, projector, spectral_reconstruct, svd_of_product,
    sym_eig, two_norm,
};
use crate::structure::{
    gram_a, gram_b, iterated_gram, poly_annihilates, spectrum_exact, StructureTables,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub witness: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl VerifyReport {
    fn new(suite: &str) -> Self {
        VerifyReport {
            suite: suite.to_string(),
            checks: Vec::new(),
            pass: true,
        }
    }

    fn push(&mut self, id: &str, outcome: Result<(bool, Value)>) {
        let (ok, witness) = match outcome {
            Ok(v) => v,
            Err(e) => (false, json!({ "error": e.to_string() })),
        };
        self.pass &= ok;
        self.checks.push(CheckResult {
            id: id.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness,
        });
    }

    pub fn get(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }
}

type CheckFn = fn(usize) -> Result<(bool, Value)>;

const GRASSMANN: &[(&str, CheckFn)] = &[
    ("grassmann.gram_spectrum", grassmann_gram_spectrum),
    ("grassmann.iterated_gram", grassmann_iterated_gram),
    ("grassmann.minimal_polynomial", grassmann_minimal_polynomial),
    ("grassmann.shared_spectrum", grassmann_shared_spectrum),
    ("grassmann.hopf_axioms", grassmann_hopf_axioms),
];

const CLIFFORD: &[(&str, CheckFn)] = &[
    ("clifford.dim1_example", clifford_dim1_example),
    ("clifford.algebra_relations", clifford_algebra_relations),
    ("clifford.diagonal_metric", clifford_diagonal_metric),
    ("clifford.shared_spectrum", clifford_shared_spectrum),
    ("clifford.auxiliary_coproducts", clifford_auxiliary_coproducts),
];

const DIM2: &[(&str, CheckFn)] = &[
    ("dim2.table", dim2_table),
    ("dim2.closed_form", dim2_closed_form),
    ("dim2.brackets", dim2_brackets),
    ("dim2.locus_degeneracy", dim2_locus_degeneracy),
    ("dim2.off_locus", dim2_off_locus),
    ("dim2.mirror_symmetry", dim2_mirror_symmetry),
    ("dim2.locus_asymptote", dim2_locus_asymptote),
    ("dim2.scan_crosscheck", dim2_scan_crosscheck),
];

const SVD: &[(&str, CheckFn)] = &[
    ("svd.coproduct_matching", svd_coproduct_matching),
    ("svd.reconstruction", svd_reconstruction),
    ("svd.frobenius_identity", svd_frobenius_identity),
    ("svd.kernel", svd_kernel),
    ("svd.grassmann_two_norm", svd_grassmann_two_norm),
];

pub const SUITES: [&str; 5] = ["grassmann", "clifford", "dim2", "svd", "all"];

/// Largest dimension accepted by the suites. Exact checks on `4^n × 4^n`
/// operators are additionally capped at `n = 3`.
pub const MAX_VERIFY_DIM: usize = 6;

fn suite_table(name: &str) -> Result<Vec<(&'static str, CheckFn)>> {
    Ok(match name {
        "grassmann" => GRASSMANN.to_vec(),
        "clifford" => CLIFFORD.to_vec(),
        "dim2" => DIM2.to_vec(),
        "svd" => SVD.to_vec(),
        "all" => [GRASSMANN, CLIFFORD, DIM2, SVD].concat(),
        other => return Err(Error::UnknownSuite(other.to_string())),
    })
}

/// Check ids run by a suite, in execution order.
pub fn suite_check_ids(name: &str) -> Result<Vec<&'static str>> {
    Ok(suite_table(name)?.into_iter().map(|(id, _)| id).collect())
}

/// Runs every check of a suite for dimensions up to `dim`. Checks run
/// sequentially so reports are reproducible.
pub fn run_verify_suite(name: &str, dim: usize) -> Result<VerifyReport> {
    let table = suite_table(name)?;
    check_dim(dim)?;
    if dim > MAX_VERIFY_DIM {
        return Err(Error::InvalidArgument(format!(
            "verification dimension must be at most {MAX_VERIFY_DIM}"
        )));
    }
    let mut report = VerifyReport::new(name);
    for (id, check) in table {
        report.push(id, check(dim));
    }
    Ok(report)
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failed: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < 10 {
                self.failures.push(what());
            }
        }
    }

    fn finish(self, extra: Value) -> Result<(bool, Value)> {
        Ok((
            self.failed == 0,
            json!({
                "cases": self.cases,
                "failed": self.failed,
                "failures": self.failures,
                "detail": extra,
            }),
        ))
    }
}

fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational `p/q` with `|p| ≤ 6`, `1 ≤ q ≤ 4`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=4).into())
}

pub fn random_form<R: Rng>(rng: &mut R, n: usize) -> BilinearForm<Rational> {
    BilinearForm::from_rows(
        (0..n)
            .map(|_| (0..n).map(|_| random_rational(rng)).collect())
            .collect(),
    )
    .expect("square rows")
}

fn pow2(k: usize) -> Rational {
    q(1i64 << k)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn grade_diagonal(n: usize, f: impl Fn(usize) -> Rational) -> RectMatrix<Rational> {
    let values: Vec<Rational> = (0..1usize << n)
        .map(|i| f((i as u32).count_ones() as usize))
        .collect();
    RectMatrix::diagonal(&values)
}

fn render_spectrum(s: &BTreeMap<Rational, usize>) -> Value {
    s.iter()
        .map(|(k, v)| (format_rational(k), json!(v)))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

fn grassmann_gram_spectrum(dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    let mut spectra = serde_json::Map::new();
    for n in 1..=dim {
        let a = gram_a(&StructureTables::<Rational>::grassmann(n)?);
        tally.check(a == grade_diagonal(n, pow2), || format!("n={n}: A is not 2^grade"));
        let roots: Vec<Rational> = (0..=n).map(pow2).collect();
        let spec = spectrum_exact(&a, &roots)?;
        for r in 0..=n {
            tally.check(spec.get(&pow2(r)) == Some(&binomial(n, r)), || {
                format!("n={n}: multiplicity of 2^{r}")
            });
        }
        spectra.insert(n.to_string(), render_spectrum(&spec));
    }
    tally.finish(spectra.into())
}

fn grassmann_iterated_gram(dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    for n in 1..=dim.min(3) {
        let t = StructureTables::<Rational>::grassmann(n)?;
        for r in 1..=4usize {
            let g = iterated_gram(&t, r)?;
            let expected = grade_diagonal(n, |k| q(r.pow(k as u32) as i64));
            tally.check(g == expected, || format!("n={n}, r={r}"));
        }
    }
    tally.finish(json!({ "max_order": 4 }))
}

fn grassmann_minimal_polynomial(dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    for n in 1..=dim.min(3) {
        let t = StructureTables::<Rational>::grassmann(n)?;
        let roots_a: Vec<Rational> = (0..=n).map(pow2).collect();
        let mut roots_b = roots_a.clone();
        roots_b.push(q(0));
        for (name, m, roots) in [("A", gram_a(&t), roots_a), ("B", gram_b(&t), roots_b)] {
            tally.check(poly_annihilates(&m, &roots)?, || format!("n={n}: {name} not annihilated"));
            for skip in 0..roots.len() {
                let fewer: Vec<Rational> = roots
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != skip)
                    .map(|(_, r)| r.clone())
                    .collect();
                tally.check(!poly_annihilates(&m, &fewer)?, || {
                    format!("n={n}: {name} annihilated without root {}", roots[skip])
                });
            }
        }
    }
    tally.finish(Value::Null)
}

fn grassmann_shared_spectrum(dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    let mut detail = serde_json::Map::new();
    for n in 1..=dim.min(3) {
        let t = StructureTables::<Rational>::grassmann(n)?;
        let mut roots: Vec<Rational> = (0..=n).map(pow2).collect();
        roots.push(q(0));
        let sa = spectrum_exact(&gram_a(&t), &roots)?;
        let mut sb = spectrum_exact(&gram_b(&t), &roots)?;
        let kernel_b = sb.remove(&q(0)).unwrap_or(0);
        let kernel_a = sa.get(&q(0)).copied().unwrap_or(0);
        let nonzero_a: BTreeMap<_, _> = sa.iter().filter(|(k, _)| !k.is_zero()).map(|(k, v)| (k.clone(), *v)).collect();
        tally.check(nonzero_a == sb, || format!("n={n}: nonzero spectra differ"));
        let expected_kernel = (1usize << (2 * n)) - (1usize << n) + kernel_a;
        tally.check(kernel_b == expected_kernel, || {
            format!("n={n}: dim ker B = {kernel_b}, expected {expected_kernel}")
        });
        detail.insert(n.to_string(), json!({ "kernel_b": kernel_b }));
    }
    tally.finish(detail.into())
}

type Triple = BTreeMap<(Blade, Blade, Blade), Rational>;

fn add_triple(out: &mut Triple, key: (Blade, Blade, Blade), c: Rational) {
    let entry = out.entry(key).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        out.remove(&key);
    }
}

/// `(Δ ⊗ Id)Δ(b)` and `(Id ⊗ Δ)Δ(b)`.
fn coassociativity_sides(b: Blade) -> (Triple, Triple) {
    let mut left = Triple::new();
    let mut right = Triple::new();
    for (x, y, c) in blade_coproduct::<Rational>(b).terms() {
        for (x1, x2, cx) in blade_coproduct::<Rational>(x).terms() {
            add_triple(&mut left, (x1, x2, y), c.clone() * cx.clone());
        }
        for (y1, y2, cy) in blade_coproduct::<Rational>(y).terms() {
            add_triple(&mut right, (x, y1, y2), c.clone() * cy.clone());
        }
    }
    (left, right)
}

fn grassmann_hopf_axioms(dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    for n in 1..=dim.min(3) {
        let basis: Vec<Blade> = Blade::basis(n)?.collect();
        let unit = Element::<Rational>::unit(n)?;
        for &x in &basis {
            let dx = blade_coproduct::<Rational>(x);
            let (l, r) = coassociativity_sides(x);
            tally.check(l == r, || format!("coassociativity at {x}"));

            let left = contract(&tensor_map(&dx, antipode, |e| e.clone())?, wedge_blades)?;
            let right = contract(&tensor_map(&dx, |e| e.clone(), antipode)?, wedge_blades)?;
            let eps = unit.scale(&counit(&Element::blade(x)));
            tally.check(left == eps && right == eps, || format!("antipode at {x}"));

            let mut counit_left = Element::zero(n)?;
            for (a, b, c) in dx.terms() {
                if a.grade() == 0 {
                    counit_left.add_term(b, c.clone());
                }
            }
            tally.check(counit_left == Element::blade(x), || format!("counit at {x}"));

            for &y in &basis {
                let xy = wedge_blades::<Rational>(x, y)?;
                let lhs = xy
                    .terms()
                    .map(|(b, c)| blade_coproduct::<Rational>(b).scale(c))
                    .try_fold(TensorElement::zero(n)?, |acc, t| acc.try_add(&t))?;
                let rhs = tensor_wedge(&dx, &blade_coproduct(y))?;
                tally.check(lhs == rhs, || format!("compatibility at {x}, {y}"));
                for &z in &basis {
                    let xy_z = contract_left(&xy, z)?;
                    let yz = wedge_blades::<Rational>(y, z)?;
                    let x_yz = contract_right(x, &yz)?;
                    tally.check(xy_z == x_yz, || format!("associativity at {x}, {y}, {z}"));
                }
            }
        }
    }
    tally.finish(Value::Null)
}

fn contract_left(xy: &Element<Rational>, z: Blade) -> Result<Element<Rational>> {
    let t = TensorElement::tensor(xy, &Element::blade(z))?;
    contract(&t, wedge_blades)
}

fn contract_right(x: Blade, yz: &Element<Rational>) -> Result<Element<Rational>> {
    let t = TensorElement::tensor(&Element::blade(x), yz)?;
    contract(&t, wedge_blades)
}

fn dim1_expected_product(a: &Rational) -> RectMatrix<Rational> {
    RectMatrix::from_rows(vec![
        vec![q(1), q(0), q(0), a.clone()],
        vec![q(0), q(1), q(1), q(0)],
    ])
    .expect("2×4")
}

fn clifford_dim1_example(_dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    let mut worst_sv = 0.0f64;
    let mut worst_kernel = 0.0f64;
    for a in [q(0), q(1), q(2), Rational::from_ratio(7, 3)] {
        let t = StructureTables::clifford(&BilinearForm::from_rows(vec![vec![a.clone()]])?)?;
        tally.check(*t.product_matrix() == dim1_expected_product(&a), || format!("a={a}: table"));
        let expected_a = RectMatrix::diagonal(&[q(1) + a.clone() * a.clone(), q(2)]);
        tally.check(gram_a(&t) == expected_a, || format!("a={a}: A"));
        let expected_b = RectMatrix::from_rows(vec![
            vec![q(1), q(0), q(0), a.clone()],
            vec![q(0), q(1), q(1), q(0)],
            vec![q(0), q(1), q(1), q(0)],
            vec![a.clone(), q(0), q(0), a.clone() * a.clone()],
        ])?;
        tally.check(gram_b(&t) == expected_b, || format!("a={a}: B"));

        let af = a.to_f64();
        let s = svd_of_product(&t.to_f64(), 1e-12)?;
        let mut expected_sv = [(1.0 + af * af).sqrt(), 2f64.sqrt()];
        expected_sv.sort_by(|x, y| y.total_cmp(x));
        let sv_err = if s.singular_values.len() == 2 {
            (s.singular_values[0] - expected_sv[0])
                .abs()
                .max((s.singular_values[1] - expected_sv[1]).abs())
        } else {
            f64::INFINITY
        };
        worst_sv = worst_sv.max(sv_err);
        tally.check(sv_err <= 1e-12, || format!("a={a}: singular values {:?}", s.singular_values));

        let h = 0.5f64.sqrt();
        let k = 1.0 / (1.0 + af * af).sqrt();
        let v3 = vec![0.0, h, -h, 0.0];
        let v4 = vec![af * k, 0.0, 0.0, -k];
        let kernel = s.kernel_basis();
        let diff = projector(&kernel, 4).max_abs_diff(&projector(&[v3, v4], 4));
        worst_kernel = worst_kernel.max(diff);
        tally.check(kernel.len() == 2 && diff <= 1e-10, || format!("a={a}: kernel off by {diff:e}"));
    }
    tally.finish(json!({ "max_singular_value_error": worst_sv, "max_kernel_projector_error": worst_kernel }))
}

fn clifford_algebra_relations(dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    let mut r = rng(0x5eed_0001);
    for n in 1..=dim.min(3) {
        for _ in 0..3 {
            let form = random_form(&mut r, n);
            let cl = Cliffordization::new(form.clone());
            let basis: Vec<Blade> = Blade::basis(n)?.collect();
            let id = Blade::unit(n)?;
            for i in 1..=n {
                for j in 1..=n {
                    let (gi, gj) = (Blade::generator(n, i)?, Blade::generator(n, j)?);
                    let sum = cl.blade_product(gi, gj)?.try_add(&cl.blade_product(gj, gi)?)?;
                    let expected = Element::scalar(n, form.entry(i, j).clone() + form.entry(j, i).clone())?;
                    tally.check(sum == expected, || format!("n={n}: e{i}∘e{j} + e{j}∘e{i}"));
                }
            }
            for &x in &basis {
                let ok = cl.blade_product(id, x)? == Element::blade(x) && cl.blade_product(x, id)? == Element::blade(x);
                tally.check(ok, || format!("n={n}: unit law at {x}"));
                for &y in &basis {
                    let xy = cl.blade_product(x, y)?;
                    for &z in &basis {
                        let left = cl.product(&xy, &Element::blade(z))?;
                        let right = cl.product(&Element::blade(x), &cl.blade_product(y, z)?)?;
                        tally.check(left == right, || format!("n={n}: associativity at {x}, {y}, {z}"));
                    }
                }
            }
        }
    }
    tally.finish(Value::Null)
}

fn diagonal_case(tally: &mut Tally, n: usize, l: &[Rational]) -> Result<()> {
    let spec = diagonal_metric_spectrum(n, l)?;
    let expected = multiset(&spec);
    let roots: Vec<Rational> = expected.keys().cloned().collect();
    let t = StructureTables::clifford(&BilinearForm::diagonal(l)?)?;
    let actual = spectrum_exact(&gram_a(&t), &roots);
    tally.check(actual.as_ref().ok() == Some(&expected), || {
        format!("n={n}, l={:?}", l.iter().map(format_rational).collect::<Vec<_>>())
    });
    Ok(())
}

fn clifford_diagonal_metric(dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    let mut r = rng(0x5eed_0002);
    for n in 1..=dim.min(3) {
        for _ in 0..20 {
            let l: Vec<Rational> = (0..n).map(|_| random_rational(&mut r)).collect();
            diagonal_case(&mut tally, n, &l)?;
        }
        for signs in 0..1u32 << n {
            let l: Vec<Rational> = (0..n).map(|i| if signs & (1 << i) != 0 { q(-1) } else { q(1) }).collect();
            let spec = diagonal_metric_spectrum(n, &l)?;
            tally.check(spec.values().all(|v| *v == pow2(n)), || format!("n={n}: ±1 metric not constant"));
            diagonal_case(&mut tally, n, &l)?;
        }
        let zero = vec![q(0); n];
        let spec = diagonal_metric_spectrum(n, &zero)?;
        tally.check(spec.iter().all(|(b, v)| *v == pow2(b.grade())), || format!("n={n}: l=0 is not 2^grade"));
        diagonal_case(&mut tally, n, &zero)?;
    }
    tally.finish(Value::Null)
}

fn trace_of_product(x: &RectMatrix<Rational>, y: &RectMatrix<Rational>) -> Rational {
    let mut s = Rational::zero();
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            let a = &x[(i, j)];
            if !a.is_zero() {
                s += a.clone() * y[(j, i)].clone();
            }
        }
    }
    s
}

/// `tr(M^k)` for `k = 1..=8`.
fn power_traces(m: &RectMatrix<Rational>) -> Result<Vec<Rational>> {
    let m2 = m.matmul(m)?;
    let m3 = m2.matmul(m)?;
    let m4 = m2.matmul(&m2)?;
    let powers = [m, &m2, &m3, &m4];
    let mut out: Vec<Rational> = powers.iter().map(|p| p.trace()).collect();
    for p in &powers {
        out.push(trace_of_product(&m4, p));
    }
    Ok(out)
}

/// Exact check that `A = m·mᵀ` and `B = mᵀ·m` share their nonzero spectrum:
/// equal ranks and equal power sums `tr(A^k) = tr(B^k)` for `k ≤ 2^n`.
pub fn shared_nonzero_spectrum(t: &StructureTables<Rational>) -> Result<bool> {
    let a = gram_a(t);
    let b = gram_b(t);
    let rank = t.product_matrix().rank_exact();
    if a.rank_exact() != rank || b.rank_exact() != rank {
        return Ok(false);
    }
    let k = (1usize << t.dim()).min(8);
    let ta = power_traces(&a)?;
    let tb = power_traces(&b)?;
    Ok(ta[..k] == tb[..k])
}

fn clifford_shared_spectrum(dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    let mut r = rng(0x5eed_0003);
    for n in 1..=dim.min(3) {
        for _ in 0..3 {
            let form = random_form(&mut r, n);
            let t = StructureTables::clifford(&form)?;
            tally.check(shared_nonzero_spectrum(&t)?, || format!("n={n}: {form:?}"));
        }
    }
    tally.finish(Value::Null)
}

fn clifford_auxiliary_coproducts(dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    for n in 1..=dim.min(4) {
        let size = 1usize << n;
        let boolean = StructureTables::<Rational>::boolean(n)?;
        let delta_columns: Vec<Vec<Rational>> = Blade::basis(n)?
            .map(|b| grouplike_coproduct(&Element::blade(b)).to_dense())
            .collect();
        let delta = RectMatrix::from_columns(size * size, &delta_columns)?;
        let left = boolean.product_matrix().matmul(&delta)?;
        tally.check(left == RectMatrix::identity(size), || format!("n={n}: m∘δ ≠ Id"));
        let right = delta.matmul(boolean.product_matrix())?;
        let ok = right.is_diagonal()
            && right.diag().iter().all(|x| x.is_zero() || x.is_one())
            && right.trace() == q(size as i64);
        tally.check(ok, || format!("n={n}: δ∘m is not a rank-{size} 0/1 diagonal"));
        for b in Blade::basis(n)? {
            let image = contract(&minus_coproduct(&Element::<Rational>::blade(b))?, wedge_blades)?;
            let expected = if b.grade() == 0 { Element::unit(n)? } else { Element::zero(n)? };
            tally.check(image == expected, || format!("n={n}: wedge∘Δ⁻ at {b}"));
        }
    }
    tally.finish(Value::Null)
}

/// The expected `m_B` for the two-dimensional deformation, column
/// `i + 4j` holding `e_i ∘ e_j`.
pub fn dim2_expected_product<S: Scalar>(p: &Dim2Params<S>) -> RectMatrix<S> {
    let (r, v) = (p.rho.clone(), p.nu.clone());
    let mut m = RectMatrix::zeros(4, 16);
    let one = S::one;
    for (row, col, value) in [
        (0, 0, one()),
        (0, 6, r.clone() - v.clone()),
        (0, 9, r.clone() + v.clone()),
        (0, 15, r.clone() * r.clone() - v.clone() * v.clone()),
        (1, 1, one()),
        (1, 4, one()),
        (1, 7, r.clone() - v.clone()),
        (1, 13, -r.clone() - v.clone()),
        (2, 2, one()),
        (2, 8, one()),
        (2, 11, -r.clone() - v.clone()),
        (2, 14, r.clone() - v.clone()),
        (3, 3, one()),
        (3, 6, -one()),
        (3, 9, one()),
        (3, 12, one()),
        (3, 15, -S::from_i64(2) * v.clone()),
    ] {
        m[(row, col)] = value;
    }
    m
}

type ElementTable<S> = Vec<Vec<Element<S>>>;

/// Expected anticommutator and commutator tables, indexed by blade index.
pub fn dim2_expected_brackets<S: Scalar>(p: &Dim2Params<S>) -> (ElementTable<S>, ElementTable<S>) {
    let (r, v) = (p.rho.clone(), p.nu.clone());
    let two = S::from_i64(2);
    let el = |terms: &[(usize, S)]| {
        Element::from_terms(2, terms.iter().map(|(i, c)| (Blade::new(2, *i as u32).expect("dim 2"), c.clone())))
            .expect("dim 2")
    };
    let z = || el(&[]);
    let plus = vec![
        vec![el(&[(0, two.clone())]), el(&[(1, two.clone())]), el(&[(2, two.clone())]), el(&[(3, two.clone())])],
        vec![el(&[(1, two.clone())]), z(), el(&[(0, two.clone() * r.clone())]), el(&[(1, -two.clone() * v.clone())])],
        vec![el(&[(2, two.clone())]), el(&[(0, two.clone() * r.clone())]), z(), el(&[(2, -two.clone() * v.clone())])],
        vec![
            el(&[(3, two.clone())]),
            el(&[(1, -two.clone() * v.clone())]),
            el(&[(2, -two.clone() * v.clone())]),
            el(&[
                (0, two.clone() * (r.clone() * r.clone() - v.clone() * v.clone())),
                (3, -S::from_i64(4) * v.clone()),
            ]),
        ],
    ];
    let minus = vec![
        vec![z(), z(), z(), z()],
        vec![z(), z(), el(&[(0, two.clone() * v.clone()), (3, two.clone())]), el(&[(1, -two.clone() * r.clone())])],
        vec![z(), el(&[(0, -two.clone() * v.clone()), (3, -two.clone())]), z(), el(&[(2, two.clone() * r.clone())])],
        vec![z(), el(&[(1, two.clone() * r.clone())]), el(&[(2, -two.clone() * r.clone())]), z()],
    ];
    (plus, minus)
}

fn random_dim2(r: &mut ChaCha8Rng) -> Dim2Params<Rational> {
    Dim2Params::new(random_rational(r), random_rational(r))
}

fn dim2_table(_dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    let mut r = rng(0x5eed_0004);
    for _ in 0..50 {
        let p = random_dim2(&mut r);
        tally.check(*p.tables().product_matrix() == dim2_expected_product(&p), || {
            format!("rho={}, nu={}", p.rho, p.nu)
        });
    }
    tally.finish(Value::Null)
}

fn dim2_closed_form(_dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    let mut r = rng(0x5eed_0005);
    for _ in 0..50 {
        let p = random_dim2(&mut r);
        tally.check(gram_a(&p.tables()) == dim2_gram_closed_form(&p), || {
            format!("rho={}, nu={}", p.rho, p.nu)
        });
    }
    tally.finish(Value::Null)
}

fn dim2_brackets(_dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    let mut r = rng(0x5eed_0006);
    for _ in 0..20 {
        let p = random_dim2(&mut r);
        let actual = bracket_tables(&p)?;
        let (plus, minus) = dim2_expected_brackets(&p);
        for i in 0..4 {
            for j in 0..4 {
                tally.check(actual.anticommutator[i][j] == plus[i][j], || format!("{{{i},{j}}} at {p:?}"));
                tally.check(actual.commutator[i][j] == minus[i][j], || format!("[{i},{j}] at {p:?}"));
            }
        }
    }
    tally.finish(Value::Null)
}

fn dim2_locus_degeneracy(_dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    let mut detail = Vec::new();
    for nu in [0.0, 0.5, 1.0, 2.0] {
        let p = Dim2Params::new(locus_rho(nu), nu);
        let a = gram_a(&p.tables());
        let eig = sym_eig(&a, 1e-12)?;
        let target = 4.0 + 4.0 * nu * nu;
        let dev = eig.eigenvalues.iter().map(|l| (l - target).abs()).fold(0.0, f64::max);
        let off_diag = a.max_abs_diff(&RectMatrix::diagonal(&a.diag()));
        tally.check(dev <= 1e-9, || format!("nu={nu}: eigenvalues {:?}", eig.eigenvalues));
        tally.check(off_diag <= 1e-9, || format!("nu={nu}: off-diagonal {off_diag:e}"));
        detail.push(json!({ "nu": nu, "eigenvalue": target, "max_deviation": dev }));
    }
    tally.finish(detail.into())
}

fn dim2_off_locus(_dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    let mut r = rng(0x5eed_0007);
    for _ in 0..50 {
        let p = random_dim2(&mut r);
        let on = p.rho.clone() * p.rho.clone() == q(1) + p.nu.clone() * p.nu.clone();
        if p.nu.is_zero() || on {
            continue;
        }
        let (a, b, c, d) = dim2_gram_entries(&p);
        tally.check(!b.is_zero(), || format!("b = 0 at {p:?}"));
        // A is c·Id on the middle block and [[a,b],[b,d]] outside it; with
        // b ≠ 0 the outer pair is split, and c coincides with one of its
        // eigenvalues exactly when (c−a)(c−d) = b².
        let coincide = (c.clone() - a) * (c - d) == b.clone() * b;
        if !coincide {
            let e = closed_form_eigenvalues(&p.map_f64());
            let distinct = count_distinct(&e, 1e-9 * e[0].abs().max(1.0));
            tally.check(distinct == 3, || format!("{distinct} distinct eigenvalues at {p:?}"));
        }
    }
    tally.finish(Value::Null)
}

fn count_distinct(sorted_desc: &[f64], tol: f64) -> usize {
    let mut count = 0;
    let mut last = f64::INFINITY;
    for &x in sorted_desc {
        if (last - x).abs() > tol {
            count += 1;
            last = x;
        }
    }
    count
}

fn dim2_mirror_symmetry(_dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    let mut r = rng(0x5eed_0008);
    for _ in 0..50 {
        let p = random_dim2(&mut r).map_f64();
        let base = closed_form_eigenvalues(&p);
        for mirrored in [Dim2Params::new(-p.rho, p.nu), Dim2Params::new(p.rho, -p.nu)] {
            let e = closed_form_eigenvalues(&mirrored);
            let dev = base.iter().zip(&e).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            tally.check(dev <= 1e-9 * base[0].max(1.0), || format!("{p:?} vs {mirrored:?}"));
        }
    }
    tally.finish(Value::Null)
}

fn dim2_locus_asymptote(_dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    tally.check(locus_rho(0.0) == 1.0, || "rho(0) != 1".into());
    let nus = [1.0, 10.0, 100.0, 1000.0];
    let gaps: Vec<f64> = nus.iter().map(|&v| locus_rho(v) - v).collect();
    tally.check(gaps.windows(2).all(|w| w[1] < w[0]), || format!("rho - nu not decreasing: {gaps:?}"));
    for (&v, &g) in nus.iter().zip(&gaps) {
        tally.check(g > 0.0 && g <= 0.5 / v + 1e-12, || format!("rho - nu = {g} at nu = {v}"));
    }
    tally.finish(json!({ "nu": nus, "rho_minus_nu": gaps }))
}

fn dim2_scan_crosscheck(_dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    let range = Range::new(0.0, 3.0)?;
    let rows = scan_grid(range, range, 61)?;
    let mut worst = 0.0f64;
    for row in rows.iter().step_by(rows.len() / 10).take(10) {
        let p = Dim2Params::new(row.rho, row.nu);
        let eig = sym_eig(&gram_a(&p.tables()), 1e-12)?;
        let dev = eig
            .eigenvalues
            .iter()
            .zip(&row.eigenvalues)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
            / row.eigenvalues[0].max(1.0);
        worst = worst.max(dev);
        tally.check(dev <= 1e-9, || format!("rho={}, nu={}: relative deviation {dev:e}", row.rho, row.nu));
    }
    tally.finish(json!({ "max_relative_deviation": worst }))
}

/// Grassmann tables and ten seeded random Clifford forms per dimension.
fn svd_cases(dim: usize) -> Result<Vec<(String, StructureTables<f64>)>> {
    let mut r = rng(0x5eed_0009);
    let mut out = Vec::new();
    for n in 1..=dim.min(3) {
        out.push((format!("grassmann n={n}"), StructureTables::<f64>::grassmann(n)?));
        for k in 0..10 {
            let form = random_form(&mut r, n);
            out.push((format!("clifford n={n} #{k}"), StructureTables::clifford(&form)?.to_f64()));
        }
    }
    Ok(out)
}

fn svd_coproduct_matching(dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    let mut worst = 0.0f64;
    for (name, t) in svd_cases(dim)? {
        let res = coproduct_matching_residual(&t, 1e-12)?;
        worst = worst.max(res);
        tally.check(res <= 1e-9, || format!("{name}: residual {res:e}"));
    }
    tally.finish(json!({ "max_residual": worst }))
}

fn svd_reconstruction(dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    let mut worst = 0.0f64;
    for (name, t) in svd_cases(dim)? {
        let s = svd_of_product(&t, 1e-12)?;
        let m = t.product_matrix();
        let err = spectral_reconstruct(&s).sub(m)?.frobenius_norm() / m.frobenius_norm();
        worst = worst.max(err);
        tally.check(err <= 1e-8, || format!("{name}: relative error {err:e}"));
    }
    tally.finish(json!({ "max_relative_error": worst }))
}

fn svd_frobenius_identity(dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    let mut worst = 0.0f64;
    for (name, t) in svd_cases(dim)? {
        let s = svd_of_product(&t, 1e-12)?;
        let sum: f64 = s.singular_values.iter().map(|x| x * x).sum();
        let err = (t.product_matrix().frobenius_sq() - sum).abs();
        worst = worst.max(err);
        tally.check(err <= 1e-9, || format!("{name}: |‖m‖² − Σd| = {err:e}"));
    }
    tally.finish(json!({ "max_error": worst }))
}

fn svd_kernel(dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    for (name, t) in svd_cases(dim)? {
        let s = svd_of_product(&t, 1e-12)?;
        let kernel = s.kernel_basis();
        let m = t.product_matrix();
        tally.check(kernel.len() + s.rank() == m.cols(), || format!("{name}: kernel size"));
        let scale = m.frobenius_norm();
        let worst = kernel
            .iter()
            .map(|k| Ok(norm(&m.mul_vec(k)?)))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        tally.check(worst <= 1e-10 * scale, || format!("{name}: ‖m k‖ = {worst:e}"));
        let cross = kernel
            .iter()
            .flat_map(|k| s.right_vectors.iter().map(move |v| dot(k, v).abs()))
            .fold(0.0, f64::max);
        tally.check(cross <= 1e-10, || format!("{name}: kernel not orthogonal to right vectors"));
    }
    tally.finish(Value::Null)
}

fn svd_grassmann_two_norm(_dim: usize) -> Result<(bool, Value)> {
    let mut tally = Tally::default();
    let mut norms = Vec::new();
    for n in 1..=MAX_VERIFY_DIM {
        let s = svd_of_product(&StructureTables::<f64>::grassmann(n)?, 1e-12)?;
        let value = two_norm(&s);
        let expected = 2f64.powf(n as f64 / 2.0);
        tally.check((value - expected).abs() <= 1e-9, || format!("n={n}: {value} vs {expected}"));
        norms.push(value);
    }
    tally.finish(json!({ "two_norms": norms }))
}
