use crate::error::{domain, Result};

/// Generalized Laguerre polynomial L_n^α(x) by the ascending three-term
/// recurrence.
pub fn laguerre(n: usize, alpha: f64, x: f64) -> Result<f64> {
    check_laguerre(alpha, x)?;
    Ok(laguerre_unchecked(n, alpha, x))
}

/// L_0^α(x), …, L_n^α(x) in one pass.
pub fn laguerre_sequence(n: usize, alpha: f64, x: f64) -> Result<Vec<f64>> {
    check_laguerre(alpha, x)?;
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n == 0 {
        return Ok(out);
    }
    out.push(1.0 + alpha - x);
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * out[k] - (kf + alpha) * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    Ok(out)
}

fn check_laguerre(alpha: f64, x: f64) -> Result<()> {
    if !(alpha > -1.0) {
        return Err(domain(format!("laguerre requires alpha > -1, got {alpha}")));
    }
    if !x.is_finite() {
        return Err(domain(format!("laguerre argument must be finite, got {x}")));
    }
    Ok(())
}

pub(crate) fn laguerre_unchecked(n: usize, alpha: f64, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => 1.0 + alpha - x,
        _ => {
            let mut prev = 1.0;
            let mut cur = 1.0 + alpha - x;
            for k in 1..n {
                let kf = k as f64;
                let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Jacobi polynomial P_n^{(a,b)}(x) on [-1, 1].
pub fn jacobi(n: usize, a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a > -1.0) || !(b > -1.0) {
        return Err(domain(format!(
            "jacobi requires a, b > -1, got a = {a}, b = {b}"
        )));
    }
    if !(x.abs() <= 1.0) {
        return Err(domain(format!("jacobi requires |x| <= 1, got {x}")));
    }
    Ok(jacobi_unchecked(n, a, b, x))
}

pub(crate) fn jacobi_unchecked(n: usize, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
    let ab = a + b;
    let a2b2 = a * a - b * b;
    for k in 1..n {
        // 2(k+1)(k+a+b+1)(2k+a+b) P_{k+1}
        //   = (2k+a+b+1)[(2k+a+b+2)(2k+a+b) x + a²-b²] P_k
        //   - 2(k+a)(k+b)(2k+a+b+2) P_{k-1}
        let kf = k as f64;
        let c = 2.0 * kf + ab;
        let lead = 2.0 * (kf + 1.0) * (kf + ab + 1.0) * c;
        let mid = (c + 1.0) * ((c + 2.0) * c * x + a2b2);
        let tail = 2.0 * (kf + a) * (kf + b) * (c + 2.0);
        let next = (mid * cur - tail * prev) / lead;
        prev = cur;
        cur = next;
    }
    cur
}
