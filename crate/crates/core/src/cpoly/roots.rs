use std::cmp::Ordering;
use std::f64::consts::PI;

use super::{Complex, ComplexPoly, PolyError};
use crate::tol;

/// Group of numerically coincident roots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootCluster {
    pub center: Complex,
    pub multiplicity: usize,
}

pub fn order(a: &Complex, b: &Complex) -> Ordering {
    a.norm()
        .total_cmp(&b.norm())
        .then_with(|| a.arg().total_cmp(&b.arg()))
}

pub(crate) fn roots(p: &ComplexPoly) -> Result<Vec<Complex>, PolyError> {
    let deg = p.degree().ok_or(PolyError::UndefinedRoots)?;
    let c = p.coeffs();
    let zeros = c.iter().take_while(|z| **z == Complex::new(0.0, 0.0)).count();
    let mut out = vec![Complex::new(0.0, 0.0); zeros];
    let lead = c[deg];
    let monic: Vec<Complex> = c[zeros..].iter().map(|&x| x / lead).collect();
    match monic.len() - 1 {
        0 => {}
        1 => out.push(-monic[0]),
        _ => out.extend(refine_clusters(&monic, aberth(&monic))),
    }
    out.sort_by(order);
    Ok(out)
}

/// Replaces each multiple-root cluster by its centre, refined with Newton's
/// method on the `(m−1)`-th derivative where the root is simple.
fn refine_clusters(c: &[Complex], z: Vec<Complex>) -> Vec<Complex> {
    let mut out = Vec::with_capacity(z.len());
    for cl in cluster_roots(&z, tol::ROOT_CLUSTER) {
        if cl.multiplicity == 1 {
            out.push(cl.center);
            continue;
        }
        let mut deriv = ComplexPoly::new(c.to_vec());
        for _ in 1..cl.multiplicity {
            deriv = deriv.derivative();
        }
        let dd = deriv.derivative();
        let mut x = cl.center;
        for _ in 0..5 {
            let (f, df) = (deriv.eval(x), dd.eval(x));
            if df == Complex::new(0.0, 0.0) {
                break;
            }
            let next = x - f / df;
            if !super::is_finite(next) || (next - cl.center).norm() > tol::ROOT_CLUSTER {
                break;
            }
            if (next - x).norm() <= 1e-16 * (1.0 + x.norm()) {
                x = next;
                break;
            }
            x = next;
        }
        out.extend(std::iter::repeat_n(x, cl.multiplicity));
    }
    out
}

fn horner_with_derivative(c: &[Complex], z: Complex) -> (Complex, Complex) {
    let mut p = Complex::new(0.0, 0.0);
    let mut dp = Complex::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Aberth–Ehrlich iteration for a monic polynomial with nonzero constant term.
fn aberth(c: &[Complex]) -> Vec<Complex> {
    let d = c.len() - 1;
    // Cauchy's upper and lower root bounds; start on the circle of their
    // geometric mean.
    let upper = 1.0 + c[..d].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let c0 = c[0].norm();
    let lower = c0 / (c0 + c[1..].iter().map(|x| x.norm()).fold(0.0, f64::max));
    let radius = (upper * lower).sqrt();
    let mut z: Vec<Complex> = (0..d)
        .map(|k| Complex::from_polar(radius, 2.0 * PI * k as f64 / d as f64 + 0.4))
        .collect();

    let mut done = vec![false; d];
    for _ in 0..tol::ROOT_MAX_ITER {
        let mut max_step: f64 = 0.0;
        for i in 0..d {
            if done[i] {
                continue;
            }
            let (p, dp) = horner_with_derivative(c, z[i]);
            if p == Complex::new(0.0, 0.0) {
                done[i] = true;
                continue;
            }
            let newton = p / dp;
            let mut repel = Complex::new(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff != Complex::new(0.0, 0.0) {
                        repel += diff.inv();
                    }
                }
            }
            let step = newton / (Complex::new(1.0, 0.0) - newton * repel);
            if !super::is_finite(step) {
                continue;
            }
            z[i] -= step;
            let rel = step.norm() / z[i].norm().max(1.0);
            if rel <= tol::ROOT_STEP {
                done[i] = true;
            }
            max_step = max_step.max(rel);
        }
        if done.iter().all(|&x| x) || max_step <= tol::ROOT_STEP {
            break;
        }
    }
    polish(c, &mut z);
    z
}

/// A few Newton steps per root, accepted only while they shrink the residual
/// and stay local (so members of a multiple-root cluster are not merged).
fn polish(c: &[Complex], z: &mut [Complex]) {
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner_with_derivative(c, *zi);
            if p == Complex::new(0.0, 0.0) || dp == Complex::new(0.0, 0.0) {
                break;
            }
            let cand = *zi - p / dp;
            if (cand - *zi).norm() > 1e-6 * (1.0 + zi.norm()) {
                break;
            }
            let (pc, _) = horner_with_derivative(c, cand);
            if pc.norm() < p.norm() {
                *zi = cand;
            } else {
                break;
            }
        }
    }
}

/// Single-linkage clustering of `roots` at distance `tol`; each centre is the
/// cluster mean. Output is sorted by modulus then argument.
pub fn cluster_roots(roots: &[Complex], tol: f64) -> Vec<RootCluster> {
    let n = roots.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (roots[i] - roots[j]).norm() <= tol {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                if a != b {
                    label[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Complex, usize)> = Vec::new();
    for (i, &z) in roots.iter().enumerate() {
        let r = find(&mut label, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 += z;
                g.2 += 1;
            }
            None => groups.push((r, z, 1)),
        }
    }
    let mut out: Vec<RootCluster> = groups
        .into_iter()
        .map(|(_, sum, m)| RootCluster {
            center: sum / m as f64,
            multiplicity: m,
        })
        .collect();
    out.sort_by(|a, b| order(&a.center, &b.center));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex, b: Complex, eps: f64) -> bool {
        (a - b).norm() <= eps
    }

    #[test]
    fn spec_examples() {
        let r = ComplexPoly::from_real(&[1.0, 0.0, 1.0]).roots().unwrap();
        assert_eq!(r.len(), 2);
        assert!(close(r[0], Complex::new(0.0, -1.0), 1e-14));
        assert!(close(r[1], Complex::new(0.0, 1.0), 1e-14));

        let r = ComplexPoly::from_real(&[1.0, -6.0, 1.0]).roots().unwrap();
        let s = 2f64.sqrt();
        assert!(close(r[0], Complex::new(3.0 - 2.0 * s, 0.0), 1e-14));
        assert!(close(r[1], Complex::new(3.0 + 2.0 * s, 0.0), 1e-13));

        assert!(ComplexPoly::from_real(&[7.0]).roots().unwrap().is_empty());
        assert_eq!(ComplexPoly::zero().roots(), Err(PolyError::UndefinedRoots));
    }

    #[test]
    fn zero_roots_factored() {
        let r = ComplexPoly::from_real(&[0.0, 0.0, 2.0, 1.0]).roots().unwrap();
        assert_eq!(&r[..2], &[Complex::new(0.0, 0.0); 2]);
        assert!(close(r[2], Complex::new(-2.0, 0.0), 1e-14));
    }

    #[test]
    fn double_root_clusters() {
        // (λ − 1)²(λ − 2)
        let p = ComplexPoly::from_roots(&[
            Complex::new(1.0, 0.0),
            Complex::new(1.0, 0.0),
            Complex::new(2.0, 0.0),
        ]);
        let cl = p.root_clusters().unwrap();
        assert_eq!(cl.len(), 2);
        assert_eq!(cl[0].multiplicity, 2);
        assert!(close(cl[0].center, Complex::new(1.0, 0.0), 1e-12));
    }

    #[test]
    fn clustering_is_transitive() {
        let r = [
            Complex::new(0.0, 0.0),
            Complex::new(0.6e-7, 0.0),
            Complex::new(1.2e-7, 0.0),
            Complex::new(5.0, 0.0),
        ];
        let cl = cluster_roots(&r, 1e-7);
        assert_eq!(cl.len(), 2);
        assert_eq!(cl[0].multiplicity, 3);
    }
}
