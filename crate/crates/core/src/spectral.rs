//! Symmetric eigendecomposition and singular value decomposition of
//! structure matrices.
//!
//! Only the small Gram operator `A = m·mᵀ` is diagonalized. Right singular
//! vectors come from the coproduct: for `A u = d u` with `d > 0`,
//! `v = mᵀu / √d` is a unit eigenvector of `B = mᵀ·m` with the same
//! eigenvalue, so `m = Σ u √d vᵀ = Σ u Δ(u)ᵀ`.

use crate::error::{Error, Result};
use crate::matrix::RectMatrix;
use crate::structure::{gram_a, gram_b, StructureTables};

/// Convergence target for the off-diagonal Frobenius mass, relative to `‖M‖_F`.
pub const JACOBI_TOL: f64 = 1e-12;
/// Sweep cap; exceeding it is reported as [`Error::NoConvergence`].
pub const JACOBI_MAX_SWEEPS: usize = 50;
/// Singular values `σ ≤ KERNEL_REL_TOL · σ_max` count as zero.
pub const KERNEL_REL_TOL: f64 = 1e-9;
/// Relative threshold for numerical rank.
pub const RANK_REL_TOL: f64 = 1e-10;

/// Eigenvalues in descending order with orthonormal eigenvectors. The first
/// component of each vector above `1e-12` in magnitude is positive.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub dim: usize,
    pub eigenvalues: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

impl EigenDecomposition {
    /// `max_i ‖M v_i − λ_i v_i‖₂`.
    pub fn max_residual(&self, m: &RectMatrix<f64>) -> f64 {
        self.eigenvalues
            .iter()
            .zip(&self.vectors)
            .map(|(&l, v)| {
                let mv = m.mul_vec(v).expect("decomposition matches matrix size");
                norm(&mv.iter().zip(v).map(|(a, b)| a - l * b).collect::<Vec<_>>())
            })
            .fold(0.0, f64::max)
    }

    /// `max_{i≠j} |v_i·v_j|` and `max_i |‖v_i‖ − 1|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.vectors.iter().enumerate() {
            worst = worst.max((norm(a) - 1.0).abs());
            for b in &self.vectors[..i] {
                worst = worst.max(dot(a, b).abs());
            }
        }
        worst
    }
}

/// Cyclic Jacobi rotations on a symmetric matrix.
///
/// `tol` bounds the accepted asymmetry relative to `max(1, ‖M‖_F)`.
pub fn sym_eig(m: &RectMatrix<f64>, tol: f64) -> Result<EigenDecomposition> {
    m.require_square()?;
    let n = m.rows();
    let scale = m.frobenius_norm();
    let asym = m.max_asymmetry();
    if asym > tol * scale.max(1.0) {
        return Err(Error::NotSymmetric(asym));
    }
    // symmetrize so rounding noise in the input does not bias the rotations
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| 0.5 * (m[(i, j)] + m[(j, i)])).collect())
        .collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    let target = JACOBI_TOL * scale;
    let mut converged = false;
    for _ in 0..=JACOBI_MAX_SWEEPS {
        if off_diagonal(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
            off: off_diagonal(&a),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let eigenvalues = order.iter().map(|&i| a[i][i]).collect();
    let vectors = order
        .iter()
        .map(|&j| {
            let mut col: Vec<f64> = (0..n).map(|i| v[i][j]).collect();
            fix_sign(&mut col);
            col
        })
        .collect();
    Ok(EigenDecomposition {
        dim: n,
        eigenvalues,
        vectors,
    })
}

fn off_diagonal(a: &[Vec<f64>]) -> f64 {
    let mut s = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j {
                s += x * x;
            }
        }
    }
    s.sqrt()
}

fn fix_sign(v: &mut [f64]) {
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-12) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Eigenvalues grouped into clusters whose members lie within
/// `rel_tol · max(1, |λ_max|)` of the cluster's first value.
pub fn spectrum_clustered(m: &RectMatrix<f64>, rel_tol: f64) -> Result<Vec<(f64, usize)>> {
    let eig = sym_eig(m, 1e-9)?;
    let scale = eig.eigenvalues.first().map_or(1.0, |l| l.abs().max(1.0));
    let mut out: Vec<(f64, usize, f64)> = Vec::new();
    for &l in &eig.eigenvalues {
        match out.last_mut() {
            Some((head, count, sum)) if (*head - l).abs() <= rel_tol * scale => {
                *count += 1;
                *sum += l;
            }
            _ => out.push((l, 1, l)),
        }
    }
    Ok(out
        .into_iter()
        .map(|(_, count, sum)| (sum / count as f64, count))
        .collect())
}

/// Number of singular values above `RANK_REL_TOL · σ_max`.
pub fn rank_float(m: &RectMatrix<f64>) -> Result<usize> {
    let gram = if m.rows() <= m.cols() {
        m.matmul(&m.transpose())?
    } else {
        m.transpose().matmul(m)?
    };
    let eig = sym_eig(&gram, 1e-9)?;
    let sigma: Vec<f64> = eig.eigenvalues.iter().map(|l| l.max(0.0).sqrt()).collect();
    let top = sigma.first().copied().unwrap_or(0.0);
    Ok(sigma.iter().filter(|&&s| top > 0.0 && s > RANK_REL_TOL * top).count())
}

/// Singular triples of a structure matrix, matched through the coproduct.
#[derive(Clone, Debug)]
pub struct SvdTriple {
    /// Positive singular values `√d_i`, descending.
    pub singular_values: Vec<f64>,
    /// Unit eigenvectors `u_i` of `A` (length `2^n`).
    pub left_vectors: Vec<Vec<f64>>,
    /// `v_i = mᵀu_i / √d_i` (length `4^n`).
    pub right_vectors: Vec<Vec<f64>>,
    /// Eigenvectors of `A` with zero eigenvalue.
    pub cokernel: Vec<Vec<f64>>,
    right_dim: usize,
}

impl SvdTriple {
    pub fn rank(&self) -> usize {
        self.singular_values.len()
    }

    pub fn left_dim(&self) -> usize {
        self.left_vectors.len() + self.cokernel.len()
    }

    pub fn right_dim(&self) -> usize {
        self.right_dim
    }

    /// Orthonormal basis of `ker m`, the orthogonal complement of the right
    /// singular vectors. Built on demand since it has `4^n − rank` columns.
    pub fn kernel_basis(&self) -> Vec<Vec<f64>> {
        orthogonal_complement(&self.right_vectors, self.right_dim)
    }
}

pub fn svd_of_product(t: &StructureTables<f64>, tol: f64) -> Result<SvdTriple> {
    let a = gram_a(t);
    let eig = sym_eig(&a, tol)?;
    let top = eig.eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
    let sigma_top = top.sqrt();
    let mt = t.coproduct_matrix();
    let mut out = SvdTriple {
        singular_values: Vec::new(),
        left_vectors: Vec::new(),
        right_vectors: Vec::new(),
        cokernel: Vec::new(),
        right_dim: mt.rows(),
    };
    for (l, u) in eig.eigenvalues.into_iter().zip(eig.vectors) {
        if l < -tol * top.max(1.0) {
            return Err(Error::NegativeEigenvalue(l));
        }
        let sigma = l.max(0.0).sqrt();
        if sigma_top == 0.0 || sigma <= KERNEL_REL_TOL * sigma_top {
            out.cokernel.push(u);
            continue;
        }
        let v: Vec<f64> = mt.mul_vec(&u)?.into_iter().map(|x| x / sigma).collect();
        out.singular_values.push(sigma);
        out.left_vectors.push(u);
        out.right_vectors.push(v);
    }
    Ok(out)
}

/// `Σ u_i √d_i v_iᵀ`.
pub fn spectral_reconstruct(s: &SvdTriple) -> RectMatrix<f64> {
    let rows = s.left_dim();
    let mut m = RectMatrix::zeros(rows, s.right_dim);
    for ((sigma, u), v) in s.singular_values.iter().zip(&s.left_vectors).zip(&s.right_vectors) {
        for (i, ui) in u.iter().enumerate() {
            if *ui == 0.0 {
                continue;
            }
            let f = sigma * ui;
            for (j, vj) in v.iter().enumerate() {
                m[(i, j)] += f * vj;
            }
        }
    }
    m
}

pub fn kernel_basis(t: &StructureTables<f64>, tol: f64) -> Result<Vec<Vec<f64>>> {
    Ok(svd_of_product(t, tol)?.kernel_basis())
}

pub fn frobenius_norm(m: &RectMatrix<f64>) -> f64 {
    m.frobenius_norm()
}

/// Largest singular value; zero for the zero map.
pub fn two_norm(s: &SvdTriple) -> f64 {
    s.singular_values.first().copied().unwrap_or(0.0)
}

/// `m = scale · isometry` with `scale = U D^{1/2} Uᵀ` (kernel dropped) and
/// `isometry = U Vᵀ` over the matched singular pairs.
#[derive(Clone, Debug)]
pub struct PolarDecomposition {
    pub scale: RectMatrix<f64>,
    pub isometry: RectMatrix<f64>,
}

pub fn polar_decompose(t: &StructureTables<f64>, tol: f64) -> Result<PolarDecomposition> {
    let s = svd_of_product(t, tol)?;
    let rows = s.left_dim();
    let mut scale = RectMatrix::zeros(rows, rows);
    let mut isometry = RectMatrix::zeros(rows, s.right_dim);
    for ((sigma, u), v) in s.singular_values.iter().zip(&s.left_vectors).zip(&s.right_vectors) {
        for (i, ui) in u.iter().enumerate() {
            for (j, uj) in u.iter().enumerate() {
                scale[(i, j)] += sigma * ui * uj;
            }
            for (j, vj) in v.iter().enumerate() {
                isometry[(i, j)] += ui * vj;
            }
        }
    }
    Ok(PolarDecomposition { scale, isometry })
}

/// Largest relative residual `‖B w − λ w‖ / (λ‖w‖)` over `w = mᵀu` for the
/// eigenpairs `(λ, u)` of `A` with `λ > tol·λ_max`. `B` is formed
/// explicitly.
pub fn coproduct_matching_residual(t: &StructureTables<f64>, tol: f64) -> Result<f64> {
    let a = gram_a(t);
    let b = gram_b(t);
    let eig = sym_eig(&a, tol)?;
    let top = eig.eigenvalues.first().copied().unwrap_or(0.0);
    let mut worst = 0.0f64;
    for (l, u) in eig.eigenvalues.iter().zip(&eig.vectors) {
        if *l <= tol * top.max(1.0) {
            continue;
        }
        let w = t.coproduct_matrix().mul_vec(u)?;
        let bw = b.mul_vec(&w)?;
        let r: Vec<f64> = bw.iter().zip(&w).map(|(x, y)| x - l * y).collect();
        worst = worst.max(norm(&r) / (l * norm(&w)));
    }
    Ok(worst)
}

/// Orthonormal basis of the complement of orthonormal `basis` in `R^dim`,
/// via Householder reflections that triangularize the basis.
pub fn orthogonal_complement(basis: &[Vec<f64>], dim: usize) -> Vec<Vec<f64>> {
    let r = basis.len();
    let mut work: Vec<Vec<f64>> = basis.to_vec();
    let mut reflectors: Vec<Vec<f64>> = Vec::with_capacity(r);
    for k in 0..r {
        let x = &work[k];
        let tail_norm = norm(&x[k..]);
        let mut h = vec![0.0; dim];
        h[k..].copy_from_slice(&x[k..]);
        let alpha = if x[k] >= 0.0 { -tail_norm } else { tail_norm };
        h[k] -= alpha;
        let hn = norm(&h);
        if hn > 0.0 {
            h.iter_mut().for_each(|y| *y /= hn);
        }
        for col in work.iter_mut().skip(k) {
            reflect(&h, col);
        }
        reflectors.push(h);
    }
    (r..dim)
        .map(|k| {
            let mut q = vec![0.0; dim];
            q[k] = 1.0;
            for h in reflectors.iter().rev() {
                reflect(h, &mut q);
            }
            q
        })
        .collect()
}

fn reflect(h: &[f64], x: &mut [f64]) {
    let d = 2.0 * dot(h, x);
    if d != 0.0 {
        x.iter_mut().zip(h).for_each(|(xi, hi)| *xi -= d * hi);
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Projector `Σ w wᵀ` onto the span of orthonormal vectors.
pub fn projector(vectors: &[Vec<f64>], dim: usize) -> RectMatrix<f64> {
    let mut p = RectMatrix::zeros(dim, dim);
    for w in vectors {
        for i in 0..dim {
            for j in 0..dim {
                p[(i, j)] += w[i] * w[j];
            }
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::BilinearForm;

    fn fm(rows: &[&[f64]]) -> RectMatrix<f64> {
        RectMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn eig_of_diagonal() {
        let e = sym_eig(&fm(&[&[5.0, 0.0], &[0.0, 2.0]]), 1e-12).unwrap();
        assert_eq!(e.eigenvalues, vec![5.0, 2.0]);
        assert_eq!(e.vectors, vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        let id = sym_eig(&RectMatrix::identity(4), 1e-12).unwrap();
        assert_eq!(id.eigenvalues, vec![1.0; 4]);
    }

    #[test]
    fn eig_contract_on_dense_matrix() {
        let m = RectMatrix::from_fn(6, 6, |i, j| 1.0 / (1.0 + i as f64 + j as f64) + if i == j { 0.5 } else { 0.0 });
        let e = sym_eig(&m, 1e-12).unwrap();
        assert!(e.max_residual(&m) <= 1e-10 * m.frobenius_norm());
        assert!(e.orthonormality_defect() <= 1e-12);
        assert!(e.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        for v in &e.vectors {
            let first = v.iter().find(|x| x.abs() > 1e-12).unwrap();
            assert!(*first > 0.0);
        }
    }

    #[test]
    fn eig_rejects_asymmetric() {
        assert!(matches!(
            sym_eig(&fm(&[&[1.0, 2.0], &[0.0, 1.0]]), 1e-12),
            Err(Error::NotSymmetric(_))
        ));
        assert!(matches!(
            sym_eig(&fm(&[&[1.0, 2.0, 3.0]]), 1e-12),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn grassmann_dim2_singular_values() {
        let t = StructureTables::<f64>::grassmann(2).unwrap();
        let s = svd_of_product(&t, 1e-12).unwrap();
        let expected = [2.0, 2f64.sqrt(), 2f64.sqrt(), 1.0];
        for (a, b) in s.singular_values.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(s.kernel_basis().len(), 12);
    }

    #[test]
    fn dim1_grassmann_reconstruct_and_polar() {
        let t = StructureTables::<f64>::grassmann(1).unwrap();
        let s = svd_of_product(&t, 1e-12).unwrap();
        let r = spectral_reconstruct(&s);
        assert!(r.max_abs_diff(t.product_matrix()) < 1e-14);
        assert_eq!(s.kernel_basis().len(), 2);

        let p = polar_decompose(&t, 1e-12).unwrap();
        assert!(p.scale.max_abs_diff(&fm(&[&[1.0, 0.0], &[0.0, 2f64.sqrt()]])) < 1e-14);
        let back = p.scale.matmul(&p.isometry).unwrap();
        assert!(back.max_abs_diff(t.product_matrix()) < 1e-12);
    }

    #[test]
    fn zero_product() {
        let t = StructureTables::from_product_matrix(
            1,
            RectMatrix::<f64>::zeros(2, 4),
            crate::structure::ProductLabel::Custom { name: "zero".into() },
        )
        .unwrap();
        let s = svd_of_product(&t, 1e-12).unwrap();
        assert_eq!(s.rank(), 0);
        assert_eq!(two_norm(&s), 0.0);
        assert_eq!(frobenius_norm(t.product_matrix()), 0.0);
        assert!(spectral_reconstruct(&s).is_zero());
        assert_eq!(s.kernel_basis().len(), 4);
    }

    #[test]
    fn complement_is_orthonormal() {
        let s = 0.5f64.sqrt();
        let basis = vec![vec![s, s, 0.0, 0.0], vec![0.0, 0.0, 0.6, 0.8]];
        let comp = orthogonal_complement(&basis, 4);
        assert_eq!(comp.len(), 2);
        for c in &comp {
            assert!((norm(c) - 1.0).abs() < 1e-14);
            for b in &basis {
                assert!(dot(c, b).abs() < 1e-14);
            }
        }
        assert!(dot(&comp[0], &comp[1]).abs() < 1e-14);
    }

    #[test]
    fn clustered_spectrum() {
        let t = StructureTables::<f64>::grassmann(3).unwrap();
        let spec = spectrum_clustered(&gram_a(&t), 1e-8).unwrap();
        let rounded: Vec<(i64, usize)> = spec.iter().map(|(l, c)| (l.round() as i64, *c)).collect();
        assert_eq!(rounded, vec![(8, 1), (4, 3), (2, 3), (1, 1)]);
    }

    #[test]
    fn float_rank() {
        let t = StructureTables::<f64>::grassmann(2).unwrap();
        assert_eq!(rank_float(t.product_matrix()).unwrap(), 4);
        assert_eq!(rank_float(&fm(&[&[1.0, 2.0], &[2.0, 4.0]])).unwrap(), 1);
    }

    #[test]
    fn matching_residual_small_for_twisted() {
        let form = BilinearForm::from_rows(vec![vec![0.3, -1.2], vec![0.7, 2.0]]).unwrap();
        let t = StructureTables::clifford(&form).unwrap();
        assert!(coproduct_matching_residual(&t, 1e-12).unwrap() < 1e-10);
    }
}
