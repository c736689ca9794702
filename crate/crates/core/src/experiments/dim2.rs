//! The two-dimensional deformation `B(ρ,ν) = [[0, ρ+ν], [ρ−ν, 0]]`.
//!
//! `A = m·mᵀ` is `[[a,0,0,b],[0,c,0,0],[0,0,c,0],[b,0,0,d]]` with
//! `a = (ν²+1+2ρν+ρ²)(ν²+1−2ρν+ρ²)`, `b = 2ν(1−ρ²+ν²)`,
//! `c = 2+2ρ²+2ν²` and `d = 4+4ν²`. All four eigenvalues meet at
//! `4+4ν²` on the curve `ρ² − ν² = 1`.

use rayon::prelude::*;
use serde::Serialize;

use crate::blade::Blade;
use crate::deformation::{BilinearForm, Cliffordization};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::matrix::RectMatrix;
use crate::scalar::Scalar;
use crate::structure::StructureTables;

#[derive(Clone, Debug, PartialEq)]
pub struct Dim2Params<S> {
    pub rho: S,
    pub nu: S,
}

impl<S: Scalar> Dim2Params<S> {
    pub fn new(rho: S, nu: S) -> Self {
        Dim2Params { rho, nu }
    }

    pub fn form(&self) -> BilinearForm<S> {
        BilinearForm::from_rows(vec![
            vec![S::zero(), self.rho.clone() + self.nu.clone()],
            vec![self.rho.clone() - self.nu.clone(), S::zero()],
        ])
        .expect("2×2 form")
    }

    pub fn tables(&self) -> StructureTables<S> {
        StructureTables::clifford(&self.form()).expect("dimension 2 is valid")
    }

    pub fn map_f64(&self) -> Dim2Params<f64> {
        Dim2Params::new(self.rho.to_f64(), self.nu.to_f64())
    }
}

/// `(a, b, c, d)` of the closed form.
pub fn dim2_gram_entries<S: Scalar>(p: &Dim2Params<S>) -> (S, S, S, S) {
    let one = S::one();
    let two = S::from_i64(2);
    let four = S::from_i64(4);
    let (r, v) = (p.rho.clone(), p.nu.clone());
    let r2 = r.clone() * r.clone();
    let v2 = v.clone() * v.clone();
    let rv2 = two.clone() * r * v.clone();
    let base = v2.clone() + one.clone() + r2.clone();
    let a = (base.clone() + rv2.clone()) * (base - rv2);
    let b = two.clone() * v * (one.clone() - r2.clone() + v2.clone());
    let c = two.clone() + two.clone() * r2 + two * v2.clone();
    let d = four.clone() + four * v2;
    (a, b, c, d)
}

pub fn dim2_gram_closed_form<S: Scalar>(p: &Dim2Params<S>) -> RectMatrix<S> {
    let (a, b, c, d) = dim2_gram_entries(p);
    let z = S::zero;
    RectMatrix::from_rows(vec![
        vec![a, z(), z(), b.clone()],
        vec![z(), c.clone(), z(), z()],
        vec![z(), z(), c, z()],
        vec![b, z(), z(), d],
    ])
    .expect("4×4 rows")
}

/// `ρ² − ν² − 1`.
pub fn locus_residual<S: Scalar>(p: &Dim2Params<S>) -> S {
    p.rho.clone() * p.rho.clone() - p.nu.clone() * p.nu.clone() - S::one()
}

/// Positive branch `ρ = √(1+ν²)` of the singular locus.
pub fn locus_rho(nu: f64) -> f64 {
    (1.0 + nu * nu).sqrt()
}

/// Eigenvalues of the closed form, descending: `c, c` and
/// `(a+d)/2 ± √(((a−d)/2)² + b²)`.
pub fn closed_form_eigenvalues(p: &Dim2Params<f64>) -> [f64; 4] {
    let (a, b, c, d) = dim2_gram_entries(p);
    let mean = 0.5 * (a + d);
    let radius = (0.5 * (a - d)).hypot(b);
    let mut out = [mean + radius, c, c, mean - radius];
    out.sort_by(|x, y| y.total_cmp(x));
    out
}

/// Smallest distance between the three eigenvalue surfaces
/// `c`, `(a+d)/2 + r` and `(a+d)/2 − r`.
pub fn eigengap(p: &Dim2Params<f64>) -> f64 {
    let (a, b, c, d) = dim2_gram_entries(p);
    let mean = 0.5 * (a + d);
    let radius = (0.5 * (a - d)).hypot(b);
    let (hi, lo) = (mean + radius, mean - radius);
    (hi - lo).abs().min((hi - c).abs()).min((c - lo).abs())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRecord {
    pub rho: f64,
    pub nu: f64,
    pub eigenvalues: [f64; 4],
    pub eigengap: f64,
    pub on_locus: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
}

impl Range {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(Error::InvalidArgument(format!("empty range {lo}:{hi}")));
        }
        Ok(Range { lo, hi })
    }

    fn point(self, k: usize, steps: usize) -> f64 {
        self.lo + (self.hi - self.lo) * k as f64 / (steps - 1) as f64
    }

    fn cell(self, steps: usize) -> f64 {
        (self.hi - self.lo) / (steps - 1) as f64
    }
}

/// Evaluates the closed-form spectrum on a `steps × steps` grid, rows
/// ordered ν-major then ρ.
///
/// A point is flagged on the locus when `|ρ²−ν²−1|` is within half the
/// cell diagonal times `|∇(ρ²−ν²)| = 2√(ρ²+ν²)`.
pub fn scan_grid(rho: Range, nu: Range, steps: usize) -> Result<Vec<ScanRecord>> {
    if steps < 2 {
        return Err(Error::InvalidArgument(format!("steps must be at least 2, got {steps}")));
    }
    let half_diag = 0.5 * rho.cell(steps).hypot(nu.cell(steps));
    let mut out: Vec<ScanRecord> = (0..steps * steps)
        .into_par_iter()
        .map(|k| {
            let p = Dim2Params::new(rho.point(k % steps, steps), nu.point(k / steps, steps));
            let tol = half_diag * 2.0 * p.rho.hypot(p.nu);
            ScanRecord {
                rho: p.rho,
                nu: p.nu,
                eigenvalues: closed_form_eigenvalues(&p),
                eigengap: eigengap(&p),
                on_locus: locus_residual(&p).abs() <= tol,
            }
        })
        .collect();
    out.sort_by(|x, y| x.nu.total_cmp(&y.nu).then(x.rho.total_cmp(&y.rho)));
    Ok(out)
}

/// Anticommutator and commutator tables over the blade basis, indexed by
/// blade index.
#[derive(Clone, Debug)]
pub struct BracketTables<S: Scalar> {
    pub anticommutator: Vec<Vec<Element<S>>>,
    pub commutator: Vec<Vec<Element<S>>>,
}

pub fn bracket_tables<S: Scalar>(p: &Dim2Params<S>) -> Result<BracketTables<S>> {
    let cl = Cliffordization::new(p.form());
    let basis: Vec<Blade> = Blade::basis(2)?.collect();
    let mut anticommutator = Vec::with_capacity(4);
    let mut commutator = Vec::with_capacity(4);
    for &x in &basis {
        let mut plus = Vec::with_capacity(4);
        let mut minus = Vec::with_capacity(4);
        for &y in &basis {
            let xy = cl.blade_product(x, y)?;
            let yx = cl.blade_product(y, x)?;
            plus.push(xy.try_add(&yx)?);
            minus.push(xy.try_sub(&yx)?);
        }
        anticommutator.push(plus);
        commutator.push(minus);
    }
    Ok(BracketTables {
        anticommutator,
        commutator,
    })
}
