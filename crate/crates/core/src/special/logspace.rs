use std::sync::OnceLock;

const TABLE_LEN: usize = 1024;

fn table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(TABLE_LEN);
        let mut acc = 0.0_f64;
        t.push(0.0);
        for k in 1..TABLE_LEN {
            acc += (k as f64).ln();
            t.push(acc);
        }
        t
    })
}

/// `ln(n!)`, tabulated below 1024 and from the Stirling series above.
pub fn ln_factorial(n: u64) -> f64 {
    if (n as usize) < TABLE_LEN {
        return table()[n as usize];
    }
    let x = n as f64 + 1.0;
    // ln Γ(x), Stirling series with four correction terms
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series
}

/// `ln C(n, k)`; `-inf` when `k > n`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}
