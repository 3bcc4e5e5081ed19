//! Thin wrappers over `libm`.

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn ln1p(x: f64) -> f64 {
    libm::log1p(x)
}

#[inline]
pub fn log2(x: f64) -> f64 {
    libm::log2(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn expm1(x: f64) -> f64 {
    libm::expm1(x)
}

#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// `n` points log-spaced over `[lo, hi]`, endpoints included.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> alloc::vec::Vec<f64> {
    let mut out = alloc::vec::Vec::with_capacity(n);
    if n == 1 {
        out.push(lo);
        return out;
    }
    let (a, b) = (ln(lo), ln(hi));
    for i in 0..n {
        let t = i as f64 / (n - 1) as f64;
        out.push(exp(a + (b - a) * t));
    }
    out[0] = lo;
    out[n - 1] = hi;
    out
}

/// Relative closeness with an absolute floor of 1.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    abs(a - b) <= tol * max(1.0, max(abs(a), abs(b)))
}

#[inline]
pub fn max(a: f64, b: f64) -> f64 {
    if a >= b {
        a
    } else {
        b
    }
}

#[inline]
pub fn min(a: f64, b: f64) -> f64 {
    if a <= b {
        a
    } else {
        b
    }
}

const BERNOULLI_OVER_FACTORIAL: [f64; 6] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
];

/// `Σ_{i=m}^{n} i^{−q}` for `1 ≤ m`, `n ≥ m − 1` (empty sum gives 0).
/// `n = u64::MAX` stands for `∞` and needs `q > 1`. Long ranges use
/// Euler–Maclaurin after sixteen direct terms; the remainder is below
/// `1e−15` relative.
pub fn power_sum(q: f64, m: u64, n: u64) -> f64 {
    if n < m {
        return 0.0;
    }
    let infinite = n == u64::MAX;
    if !infinite && n - m < 64 {
        return (m..=n).map(|i| powf(i as f64, -q)).sum();
    }
    let head_end = m + 16;
    let head: f64 = (m..head_end).map(|i| powf(i as f64, -q)).sum();
    let a = head_end as f64;
    let f = |x: f64| powf(x, -q);
    // j-th derivative of x^{-q} at x
    let deriv = |j: u32, x: f64| {
        let mut c = 1.0;
        for t in 0..j {
            c *= -(q + t as f64);
        }
        c * powf(x, -q - j as f64)
    };
    let (integral, f_n) = if infinite {
        (powf(a, 1.0 - q) / (q - 1.0), 0.0)
    } else {
        let b = n as f64;
        let integral = if (q - 1.0).abs() < 1e-15 { ln(b / a) } else { (powf(b, 1.0 - q) - powf(a, 1.0 - q)) / (1.0 - q) };
        (integral, f(b))
    };
    let mut tail = integral + (f(a) + f_n) / 2.0;
    for (k, c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let j = 2 * k as u32 + 1;
        let at_n = if infinite { 0.0 } else { deriv(j, n as f64) };
        tail += c * (at_n - deriv(j, a));
    }
    head + tail
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_sum_matches_direct_summation() {
        for &(q, m, n) in &[(1.0, 1u64, 5000u64), (2.0, 3, 100_000), (0.5, 10, 2000), (1.5, 1, 70)] {
            let direct: f64 = (m..=n).map(|i| powf(i as f64, -q)).sum();
            let fast = power_sum(q, m, n);
            assert!((direct - fast).abs() < 1e-11 * direct, "{q} {m} {n}: {direct} vs {fast}");
        }
    }

    #[test]
    fn power_sum_infinite_tail() {
        let zeta2 = core::f64::consts::PI * core::f64::consts::PI / 6.0;
        assert!((power_sum(2.0, 1, u64::MAX) - zeta2).abs() < 1e-14);
        let partial: f64 = (1..10u64).map(|i| 1.0 / (i * i) as f64).sum();
        assert!((power_sum(2.0, 10, u64::MAX) - (zeta2 - partial)).abs() < 1e-15);
        assert_eq!(power_sum(2.0, 5, 4), 0.0);
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(1e-3, 1e3, 7);
        assert_eq!(g[0], 1e-3);
        assert_eq!(g[6], 1e3);
        assert!((g[3] - 1.0).abs() < 1e-12);
    }
}
