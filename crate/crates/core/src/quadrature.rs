//! Gauss rules (Legendre and Jacobi) via Golub–Welsch, plus the composite
//! integrators used for wavefunction normalization.
//!
//! Nodes are eigenvalues of the recurrence's Jacobi matrix, polished by two
//! Newton steps on the scaled orthonormal polynomial; weights come from the
//! Christoffel identity 1/w_i = Σ_k p_k(x_i)². Working with polynomials scaled
//! so that q₀ = 1 removes the total measure μ₀ from every formula, which is
//! what lets Jacobi exponents of order 10² through without ever touching a
//! gamma function.

/// A quadrature rule on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// ∫ f over [a, b] using this rule mapped onto the interval.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

/// Monic-recurrence coefficients (α_k, β_k) for the Jacobi weight
/// (1−x)^a (1+x)^b on [−1, 1]; β₀ (the total measure) is not needed and not
/// produced.
fn jacobi_recurrence(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let mut alpha = Vec::with_capacity(n);
    let mut beta = Vec::with_capacity(n); // beta[k] is the k-th coefficient, k >= 1
    let apb = a + b;
    for k in 0..n {
        let kf = k as f64;
        let denom = (2.0 * kf + apb) * (2.0 * kf + apb + 2.0);
        let al = if k == 0 {
            (b - a) / (apb + 2.0)
        } else {
            (b * b - a * a) / denom
        };
        alpha.push(al);
    }
    for k in 1..n {
        let kf = k as f64;
        let be = if k == 1 {
            4.0 * (a + 1.0) * (b + 1.0) / ((apb + 2.0) * (apb + 2.0) * (apb + 3.0))
        } else {
            4.0 * kf * (kf + a) * (kf + b) * (kf + apb)
                / ((2.0 * kf + apb) * (2.0 * kf + apb) * (2.0 * kf + apb + 1.0)
                    * (2.0 * kf + apb - 1.0))
        };
        beta.push(be);
    }
    (alpha, beta)
}

/// Evaluates the scaled orthonormal polynomials q₀..q_n at x together with
/// q_n'. q_k = p_k √μ₀ where p_k are orthonormal, so q₀ = 1.
fn scaled_orthonormal(
    alpha: &[f64],
    sqrt_beta: &[f64],
    n: usize,
    x: f64,
    lower: &mut Vec<f64>,
) -> (f64, f64) {
    lower.clear();
    let mut q_prev = 0.0f64;
    let mut q = 1.0f64;
    let mut dq_prev = 0.0f64;
    let mut dq = 0.0f64;
    lower.push(q);
    for k in 0..n {
        let sb_next = sqrt_beta[k];
        let q_next = ((x - alpha[k]) * q - if k > 0 { sqrt_beta[k - 1] * q_prev } else { 0.0 })
            / sb_next;
        let dq_next = ((x - alpha[k]) * dq + q
            - if k > 0 { sqrt_beta[k - 1] * dq_prev } else { 0.0 })
            / sb_next;
        q_prev = q;
        q = q_next;
        dq_prev = dq;
        dq = dq_next;
        if k + 1 < n {
            lower.push(q);
        }
    }
    (q, dq)
}

/// Gauss–Jacobi rule for the weight (1−x)^a (1+x)^b with weights normalized
/// so they sum to one (the total measure is divided out). Valid for
/// a, b > −1; stable for exponents well beyond 10².
pub fn gauss_jacobi_unit(n: usize, a: f64, b: f64) -> GaussRule {
    assert!(n >= 1 && a > -1.0 && b > -1.0);
    let (alpha, beta) = jacobi_recurrence(n, a, b);
    let sqrt_beta: Vec<f64> = beta.iter().map(|x| x.sqrt()).collect();
    let jacobi_matrix = crate::linalg::SymTridiag::new(alpha.clone(), sqrt_beta.clone());
    let mut nodes = jacobi_matrix.lowest_eigenvalues(n);

    // Newton polish on q_n, then Christoffel weights.
    // scaled_orthonormal needs sqrt_beta[0..n]; extend with the n-th entry.
    let (alpha_ext, beta_ext) = jacobi_recurrence(n + 1, a, b);
    let sqrt_beta_ext: Vec<f64> = beta_ext.iter().map(|x| x.sqrt()).collect();
    let mut lower = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for x in &mut nodes {
        for _ in 0..2 {
            let (qn, dqn) = scaled_orthonormal(&alpha_ext, &sqrt_beta_ext, n, *x, &mut lower);
            if dqn != 0.0 {
                let step = qn / dqn;
                if step.abs() < 1e-3 {
                    *x -= step;
                }
            }
        }
        let (_, _) = scaled_orthonormal(&alpha_ext, &sqrt_beta_ext, n, *x, &mut lower);
        let sum_sq: f64 = lower.iter().map(|q| q * q).sum();
        weights.push(1.0 / sum_sq);
    }
    GaussRule { nodes, weights }
}

/// Gauss–Legendre rule on [−1, 1] with the true weights (summing to 2).
pub fn gauss_legendre(n: usize) -> GaussRule {
    let mut rule = gauss_jacobi_unit(n, 0.0, 0.0);
    for w in &mut rule.weights {
        *w *= 2.0;
    }
    rule
}

/// Composite Gauss–Legendre integral of `f` over consecutive panels.
pub fn integrate_panels<F: FnMut(f64) -> f64>(rule: &GaussRule, edges: &[f64], mut f: F) -> f64 {
    let mut acc = 0.0;
    for pair in edges.windows(2) {
        acc += rule.integrate(pair[0], pair[1], &mut f);
    }
    acc
}

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, a, b);
    recurse(f, a, b, fa, fm, fb, whole, tol, 48)
}
