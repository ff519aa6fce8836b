//! Reference detection-theory curves for Monte-Carlo cross-checks.
//!
//! CFS demodulation over a constant-modulus hopping symbol is exactly
//! noncoherent detection of M orthogonal signals (the M cyclic frequency
//! shifts are mutually orthogonal and the receiver picks the largest
//! envelope). Its symbol error rate therefore has a classical closed form,
//! which the binomial alternating series renders uncomputable in `f64` for
//! large M; this module evaluates the equivalent integral
//!
//! `P_err = Integral_0^inf exp(-(u+g)) * I0(2*sqrt(u*g)) * (1 - (1 - exp(-u))^(M-1)) du`
//!
//! with `g = Es/N0` per symbol, using a log-domain integrand so the huge
//! Bessel and binomial factors never materialize and no `1 - P_correct`
//! cancellation occurs at small error rates.

/// Symbol error rate of noncoherent M-ary orthogonal signaling at a given
/// per-symbol `Es/N0` (linear, not dB).
pub fn noncoherent_orthogonal_ser(m: usize, es_n0_linear: f64) -> f64 {
    assert!(m >= 2, "need at least two symbols");
    assert!(es_n0_linear >= 0.0, "Es/N0 must be nonnegative");
    let g = es_n0_linear;
    let m1 = (m - 1) as f64;

    // integrand peaks near u = g with width O(sqrt(g)); the low-u side is
    // further suppressed by the (1-e^-u)^(M-1) factor
    let upper = g + 20.0 * g.sqrt() + 60.0;
    let steps = 40_000usize;
    let h = upper / steps as f64;

    let ln_f = |u: f64| -> f64 {
        // P(any of the M-1 competing envelopes beats level u), without
        // cancellation at either end
        let beaten = if u <= 0.0 {
            1.0
        } else {
            let ln_one_minus = (-(-u).exp_m1()).ln();
            -(m1 * ln_one_minus).exp_m1()
        };
        if beaten <= 0.0 {
            return f64::NEG_INFINITY;
        }
        -(u + g) + ln_bessel_i0(2.0 * (u * g).sqrt()) + beaten.ln()
    };

    // Simpson's rule in the linear domain (values are at most O(1))
    let mut acc = 0.0;
    for i in 0..=steps {
        let u = i as f64 * h;
        let w = if i == 0 || i == steps {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let lf = ln_f(u);
        if lf > -745.0 {
            acc += w * lf.exp();
        }
    }
    (acc * h / 3.0).clamp(0.0, 1.0)
}

/// SER as a function of per-sample Es/N0 in dB for a symbol of `p` samples:
/// the per-symbol ratio is `p * 10^(esn0_db/10)`.
pub fn cfs_ser_theory(m: usize, p_samples: i64, esn0_db: f64) -> f64 {
    noncoherent_orthogonal_ser(m, p_samples as f64 * 10f64.powf(esn0_db / 10.0))
}

/// Per-sample Es/N0 (dB) at which the theoretical SER crosses `target`,
/// found by bisection to 0.001 dB.
pub fn esn0_db_at_target_ser(m: usize, p_samples: i64, target: f64) -> f64 {
    let mut lo = -30.0f64;
    let mut hi = 10.0f64;
    assert!(cfs_ser_theory(m, p_samples, lo) > target);
    assert!(cfs_ser_theory(m, p_samples, hi) < target);
    while hi - lo > 1e-3 {
        let mid = 0.5 * (lo + hi);
        if cfs_ser_theory(m, p_samples, mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `ln I0(x)` for the modified Bessel function of order zero, using the
/// Abramowitz & Stegun polynomial fits (9.8.1, 9.8.2), accurate to ~2e-7
/// relative, with the exponential factor kept in log form for large `x`.
fn ln_bessel_i0(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 3.75 {
        let t = (ax / 3.75).powi(2);
        let poly = 1.0
            + t * (3.5156229
                + t * (3.0899424
                    + t * (1.2067492 + t * (0.2659732 + t * (0.0360768 + t * 0.0045813)))));
        poly.ln()
    } else {
        let t = 3.75 / ax;
        let poly = 0.39894228
            + t * (0.01328592
                + t * (0.00225319
                    + t * (-0.00157565
                        + t * (0.00916281
                            + t * (-0.02057706
                                + t * (0.02635537 + t * (-0.01647633 + t * 0.00392377)))))));
        ax - 0.5 * ax.ln() + poly.ln()
    }
}
