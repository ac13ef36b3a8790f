//! Krylov solvers for the covariant Poisson problems.

use crate::error::{CoreError, Result};

/// Options for the iterative solvers.
#[derive(Debug, Clone)]
pub struct IterOpts {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for IterOpts {
    fn default() -> Self {
        IterOpts {
            tol: 1e-11,
            max_iter: 20_000,
        }
    }
}

/// Outcome of an iterative solve.
#[derive(Debug, Clone)]
pub struct IterReport {
    pub iterations: usize,
    pub residual: f64,
}

/// Preconditioned conjugate gradient for a symmetric (semi-)definite
/// operator given as a closure. `diag` is the Jacobi preconditioner,
/// `null_weights`, when given, is the weight vector w of a known null space
/// {c * 1}; right-hand side and iterates are then kept w-orthogonal to it.
pub fn cg(
    apply: impl Fn(&[f64], &mut [f64]),
    diag: &[f64],
    b: &[f64],
    null_weights: Option<&[f64]>,
    opts: &IterOpts,
) -> Result<(Vec<f64>, IterReport)> {
    let n = b.len();
    let project = |v: &mut [f64]| {
        if let Some(w) = null_weights {
            let wsum: f64 = w.iter().sum();
            let mean: f64 = v.iter().zip(w).map(|(x, wi)| x * wi).sum::<f64>() / wsum;
            for x in v.iter_mut() {
                *x -= mean;
            }
        }
    };

    let mut rhs = b.to_vec();
    project(&mut rhs);
    let b_norm = rhs.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);

    let mut x = vec![0.0; n];
    let mut r = rhs;
    let mut z: Vec<f64> = r.iter().zip(diag).map(|(ri, d)| ri / d).collect();
    project(&mut z);
    let mut p = z.clone();
    let mut rz: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
    let mut ap = vec![0.0; n];

    for it in 0..opts.max_iter {
        let r_norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r_norm / b_norm <= opts.tol {
            project(&mut x);
            return Ok((
                x,
                IterReport {
                    iterations: it,
                    residual: r_norm / b_norm,
                },
            ));
        }
        apply(&p, &mut ap);
        let pap: f64 = p.iter().zip(&ap).map(|(a, b)| a * b).sum();
        if pap == 0.0 {
            break;
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        for i in 0..n {
            z[i] = r[i] / diag[i];
        }
        project(&mut z);
        let rz_new: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    let r_norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
    Err(CoreError::SolverDidNotConverge {
        solver: "cg",
        residual: r_norm / b_norm,
        iterations: opts.max_iter,
        tol: opts.tol,
    })
}

/// BiCGStab for general square systems given as a closure.
pub fn bicgstab(
    apply: impl Fn(&[f64], &mut [f64]),
    diag: &[f64],
    b: &[f64],
    opts: &IterOpts,
) -> Result<(Vec<f64>, IterReport)> {
    let n = b.len();
    let b_norm = b.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let r0 = r.clone();
    let mut rho = 1.0;
    let mut alpha = 1.0;
    let mut omega = 1.0;
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    let mut s = vec![0.0; n];
    let mut t = vec![0.0; n];
    let mut phat = vec![0.0; n];
    let mut shat = vec![0.0; n];

    for it in 0..opts.max_iter {
        let r_norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r_norm / b_norm <= opts.tol {
            return Ok((
                x,
                IterReport {
                    iterations: it,
                    residual: r_norm / b_norm,
                },
            ));
        }
        let rho_new: f64 = r0.iter().zip(&r).map(|(a, b)| a * b).sum();
        if rho_new == 0.0 {
            break;
        }
        if it == 0 {
            p.copy_from_slice(&r);
        } else {
            let beta = (rho_new / rho) * (alpha / omega);
            for i in 0..n {
                p[i] = r[i] + beta * (p[i] - omega * v[i]);
            }
        }
        rho = rho_new;
        for i in 0..n {
            phat[i] = p[i] / diag[i];
        }
        apply(&phat, &mut v);
        let r0v: f64 = r0.iter().zip(&v).map(|(a, b)| a * b).sum();
        if r0v == 0.0 {
            break;
        }
        alpha = rho / r0v;
        for i in 0..n {
            s[i] = r[i] - alpha * v[i];
        }
        for i in 0..n {
            shat[i] = s[i] / diag[i];
        }
        apply(&shat, &mut t);
        let tt: f64 = t.iter().map(|a| a * a).sum();
        omega = if tt == 0.0 {
            0.0
        } else {
            t.iter().zip(&s).map(|(a, b)| a * b).sum::<f64>() / tt
        };
        for i in 0..n {
            x[i] += alpha * phat[i] + omega * shat[i];
            r[i] = s[i] - omega * t[i];
        }
        if omega == 0.0 {
            break;
        }
    }
    let r_norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
    Err(CoreError::SolverDidNotConverge {
        solver: "bicgstab",
        residual: r_norm / b_norm,
        iterations: opts.max_iter,
        tol: opts.tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparse::Csr;

    #[test]
    fn cg_solves_spd_system() {
        // 1D Laplacian with Dirichlet ends
        let n = 40;
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, 2.0));
            if i > 0 {
                t.push((i, i - 1, -1.0));
            }
            if i + 1 < n {
                t.push((i, i + 1, -1.0));
            }
        }
        let a = Csr::from_triplets(n, n, t);
        let x_true: Vec<f64> = (0..n).map(|i| (i as f64 * 0.3).sin()).collect();
        let b = a.matvec(&x_true);
        let diag = a.diagonal();
        let (x, rep) = cg(
            |v, out| a.matvec_into(v, out),
            &diag,
            &b,
            None,
            &IterOpts::default(),
        )
        .unwrap();
        assert!(rep.residual < 1e-10);
        for i in 0..n {
            assert!((x[i] - x_true[i]).abs() < 1e-7);
        }
    }

    #[test]
    fn bicgstab_solves_unsymmetric() {
        let n = 25;
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, 3.0));
            if i > 0 {
                t.push((i, i - 1, -1.2));
            }
            if i + 1 < n {
                t.push((i, i + 1, -0.7));
            }
        }
        let a = Csr::from_triplets(n, n, t);
        let x_true: Vec<f64> = (0..n).map(|i| 1.0 / (1.0 + i as f64)).collect();
        let b = a.matvec(&x_true);
        let diag = a.diagonal();
        let (x, _) = bicgstab(|v, out| a.matvec_into(v, out), &diag, &b, &IterOpts::default()).unwrap();
        for i in 0..n {
            assert!((x[i] - x_true[i]).abs() < 1e-7);
        }
    }
}
