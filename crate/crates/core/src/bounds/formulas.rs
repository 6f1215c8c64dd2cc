//! Closed-form and recursive bounds as plain integers.

use crate::arith::{choose2, nu_factorial, OddPrime};

/// `exp_p(S^dim) = (dim-1)/2`.
pub fn sphere_value(dim: u64) -> u64 {
    (dim - 1) / 2
}

/// Bounds for the two-cell bundle `B(bottom, bottom+q)`.
pub fn two_cell_values(p: OddPrime, bottom: u64) -> (u64, u64) {
    let n = (bottom - 1) / 2;
    let p = p.get();
    if n == 1 {
        (p + 1, p + 1)
    } else {
        (n + p - 1, n + p)
    }
}

/// The fibration lemma: a fibration `F → E → S^{2n+1}` whose top-cell
/// cokernel has order at most `p^r` gives `exp(E) ≤ r + max(exp(F), n)`.
pub fn fibration_upper(r: u64, n: u64, fiber_upper: u64) -> u64 {
    r + fiber_upper.max(n)
}

pub(crate) fn su_upper_small(p: OddPrime, n: u64) -> u64 {
    n.saturating_sub(1) + nu_factorial(p, n.saturating_sub(1))
}

pub(crate) fn su_upper_large(p: OddPrime, n: u64) -> u64 {
    let p = p.get();
    let k = (n.saturating_sub(2) / (p - 1)) as i64;
    n + p - 3 + choose2(k - p as i64 + 2)
}

/// Whether the small-rank closed form applies (`n < p² + p`).
pub(crate) fn small_branch(p: OddPrime, n: u64) -> bool {
    n < p.get() * p.get() + p.get()
}

/// Whether the large-rank closed form applies (`n ≥ p² + 1`).
pub(crate) fn large_branch(p: OddPrime, n: u64) -> bool {
    n > p.get() * p.get()
}

/// Closed-form upper bound for `exp_p(SU(n))`, taking the smaller branch
/// where both apply.
pub fn su_upper_closed(p: OddPrime, n: u64) -> u64 {
    match (small_branch(p, n), large_branch(p, n)) {
        (true, true) => su_upper_small(p, n).min(su_upper_large(p, n)),
        (true, false) => su_upper_small(p, n),
        _ => su_upper_large(p, n),
    }
}

/// Upper bounds `f(m)` for every `SU'(m)`, `m ≤ n`, following the fibration
/// `SU'(m-p+1) → SU'(m) → S^{2m-1}` with cokernel valuation `ν_p((m-1)!)`.
/// Index 0 and 1 are unused.
pub(crate) fn su_prime_tower(p: OddPrime, n: u64) -> Vec<u64> {
    let step = p.get() - 1;
    let mut f = vec![0u64; (n + 1).max(2) as usize];
    for m in 2..=n {
        f[m as usize] = if m < step + 2 {
            m - 1
        } else {
            let fiber = f[(m - step) as usize];
            fibration_upper(nu_factorial(p, m - 1), m - 1, fiber)
        };
    }
    f
}

/// Upper bound for `exp_p(SU(n))` by the recursion over every factor of the
/// residue splitting.
pub fn su_upper_recursive(p: OddPrime, n: u64) -> u64 {
    if n < 2 {
        return 0;
    }
    let f = su_prime_tower(p, n);
    let lowest_top = n.saturating_sub(p.get() - 2).max(2);
    (lowest_top..=n).map(|m| f[m as usize]).max().unwrap_or(0)
}

pub(crate) fn su_lower_factorial(p: OddPrime, n: u64) -> u64 {
    n.saturating_sub(1) + nu_factorial(p, n / p.get())
}

/// The `t` with `1 ≤ t < p` and `tp-t+2 ≤ n ≤ tp+1`, if any.
pub(crate) fn su_lower_band(p: OddPrime, n: u64) -> Option<u64> {
    let p = p.get();
    (1..p).find(|&t| t * p - t + 2 <= n && n <= t * p + 1)
}

/// Lower bound for `exp_p(SU(n))` from v₁-periodic homotopy.
pub fn su_lower(p: OddPrime, n: u64) -> u64 {
    let a = su_lower_factorial(p, n);
    match su_lower_band(p, n) {
        Some(_) => a.max(n),
        None => a,
    }
}
