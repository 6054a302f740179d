//! Extended-precision re-evaluation of individual DFT eigenvalues.
//!
//! For rows with large entries and a small eigenvalue (binomial rows near a
//! root of `(1 + z·x)^{n-1}`), the double-precision sum `Σ a_k ω^{km}` loses
//! everything to cancellation. Here the same sum is formed in binary fixed
//! point on `BigInt`s with a rigorous error bound, and the working precision
//! grows until that bound is below `REL_TARGET·|λ|` or `max_bits` is reached.

use num_bigint::BigInt;
use num_traits::{Float, Signed, ToPrimitive, Zero};

use super::ldexp;
use crate::ComplexF;

/// Relative accuracy demanded of an eigenvalue before it is rounded to f64.
pub(super) const REL_TARGET: f64 = 1.0 / (1u64 << 52) as f64;

const START_BITS: u32 = 128;

/// Complex number `(re + i·im) / 2^bits`.
#[derive(Clone, Debug)]
struct Fixed {
    re: BigInt,
    im: BigInt,
}

fn round_shift(x: BigInt, shift: u32) -> BigInt {
    if shift == 0 {
        return x;
    }
    let half = BigInt::from(1) << (shift - 1);
    if x.is_negative() {
        -((-x + half) >> shift)
    } else {
        (x + half) >> shift
    }
}

impl Fixed {
    fn mul(&self, other: &Fixed, bits: u32) -> Fixed {
        Fixed {
            re: round_shift(&self.re * &other.re - &self.im * &other.im, bits),
            im: round_shift(&self.re * &other.im + &self.im * &other.re, bits),
        }
    }

    fn to_complex(&self, bits: u32) -> ComplexF {
        let conv = |v: &BigInt| ldexp(big_to_f64(v), -(bits as i64));
        ComplexF::new(conv(&self.re), conv(&self.im))
    }
}

// Round-to-nearest conversion that stays finite for very wide values by
// splitting off low bits first.
fn big_to_f64(v: &BigInt) -> f64 {
    let len = v.bits();
    if len <= 1000 {
        return v.to_f64().unwrap_or(0.0);
    }
    let drop = len - 64;
    let top = round_shift(v.clone(), drop as u32);
    ldexp(top.to_f64().unwrap_or(0.0), drop as i64)
}

/// `x · 2^bits` rounded to an integer; `exact` is cleared if rounding happened.
fn to_fixed(x: f64, bits: u32, exact: &mut bool) -> BigInt {
    if x == 0.0 {
        return BigInt::zero();
    }
    let (mantissa, exp, sign) = x.integer_decode();
    let m = BigInt::from(mantissa);
    let shift = exp as i64 + bits as i64;
    let v = if shift >= 0 {
        m << shift as u32
    } else {
        let s = (-shift) as u32;
        let mask = (BigInt::from(1) << s) - 1;
        if (&m & &mask) != BigInt::zero() {
            *exact = false;
        }
        round_shift(m, s)
    };
    if sign < 0 {
        -v
    } else {
        v
    }
}

/// `π · 2^bits` by Machin's formula, accurate to a few units in the last place.
fn pi_fixed(bits: u32) -> BigInt {
    let guard = 16;
    let one = BigInt::from(1) << (bits + guard);
    let atan_inv = |x: u32| {
        let x = BigInt::from(x);
        let x2 = &x * &x;
        let mut power = &one / &x;
        let mut sum = BigInt::zero();
        let mut k = 0u32;
        while !power.is_zero() {
            let term = &power / BigInt::from(2 * k + 1);
            if k.is_multiple_of(2) {
                sum += term;
            } else {
                sum -= term;
            }
            power /= &x2;
            k += 1;
        }
        sum
    };
    let pi = atan_inv(5) * 16 - atan_inv(239) * 4;
    round_shift(pi, guard)
}

/// `e^{iθ}` by its Taylor series; `theta` is in fixed point at `bits`.
fn exp_i(theta: &BigInt, bits: u32) -> Fixed {
    let one = BigInt::from(1) << bits;
    let mut re = one.clone();
    let mut im = BigInt::zero();
    let mut term = one;
    let mut k = 1u32;
    loop {
        term = ((&term * theta) >> bits) / BigInt::from(k);
        if term.is_zero() {
            break;
        }
        match k % 4 {
            1 => im += &term,
            2 => re -= &term,
            3 => im -= &term,
            _ => re += &term,
        }
        k += 1;
    }
    Fixed { re, im }
}

/// All n-th roots of unity at `bits` of precision, each within `2^-bits`
/// of the true value; quarter turns are exact.
fn roots(n: usize, bits: u32) -> Vec<Fixed> {
    let guard = 2 * (usize::BITS - n.leading_zeros()) + 16;
    let work = bits + guard;
    let theta = (pi_fixed(work) * 2) / BigInt::from(n);
    let step = exp_i(&theta, work);
    let one = BigInt::from(1) << work;
    let mut out = Vec::with_capacity(n);
    let mut cur = Fixed {
        re: one.clone(),
        im: BigInt::zero(),
    };
    for j in 0..n {
        let value = if (4 * j) % n == 0 {
            let unit = one.clone();
            match 4 * j / n {
                0 => Fixed {
                    re: unit,
                    im: BigInt::zero(),
                },
                1 => Fixed {
                    re: BigInt::zero(),
                    im: unit,
                },
                2 => Fixed {
                    re: -unit,
                    im: BigInt::zero(),
                },
                _ => Fixed {
                    re: BigInt::zero(),
                    im: -unit,
                },
            }
        } else {
            cur.clone()
        };
        out.push(Fixed {
            re: round_shift(value.re, guard),
            im: round_shift(value.im, guard),
        });
        cur = cur.mul(&step, work);
    }
    out
}

fn log2_ceil(x: f64) -> i64 {
    if x <= 0.0 {
        0
    } else {
        x.log2().ceil() as i64
    }
}

/// Re-evaluates `λ_m` for each `m` in `targets`, returning refined values in
/// the same order. `l1` is `Σ (|re a_k| + |im a_k|)`, `estimates` the
/// double-precision values.
pub(super) fn refine(
    row: &[ComplexF],
    targets: &[usize],
    estimates: &[ComplexF],
    l1: f64,
    max_bits: u32,
) -> Vec<ComplexF> {
    let n = row.len();
    let mut out: Vec<Option<ComplexF>> = vec![None; targets.len()];
    let mut bits = START_BITS;
    // start high enough that the double estimate, if meaningful, is resolved
    if let Some(min) = estimates
        .iter()
        .map(|v| v.norm())
        .filter(|v| *v > 0.0)
        .min_by(|a, b| a.total_cmp(b))
    {
        let need = log2_ceil(l1.max(1.0) / min) + 64 + log2_ceil(n as f64) + 8;
        bits = bits.max(need.clamp(0, max_bits as i64) as u32);
    }
    loop {
        let mut exact_row = true;
        let fixed_row: Vec<Fixed> = row
            .iter()
            .map(|a| Fixed {
                re: to_fixed(a.re, bits, &mut exact_row),
                im: to_fixed(a.im, bits, &mut exact_row),
            })
            .collect();
        let table = roots(n, bits);
        // each product carries at most (|a_k| + 2)·2^-bits of error, per part
        let bound = 4.0 * (l1 + 2.0 * n as f64) * ldexp(1.0, -(bits as i64));
        let mut pending = false;
        for (slot, &m) in out.iter_mut().zip(targets) {
            if slot.is_some() {
                continue;
            }
            let mut acc = Fixed {
                re: BigInt::zero(),
                im: BigInt::zero(),
            };
            for (k, a) in fixed_row.iter().enumerate() {
                let t = a.mul(&table[(k * m) % n], bits);
                acc.re += t.re;
                acc.im += t.im;
            }
            let value = acc.to_complex(bits);
            // every root used is a quarter turn: the sum is exact
            let all_quarter = (4 * m) % n == 0;
            if (all_quarter && exact_row) || bound <= REL_TARGET * value.norm() || bits >= max_bits
            {
                *slot = Some(value);
            } else {
                pending = true;
            }
        }
        if !pending {
            break;
        }
        bits = (bits * 2).min(max_bits);
    }
    out.into_iter()
        .map(|v| v.expect("every target resolved"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let pi = pi_fixed(200);
        let back = big_to_f64(&pi) / 2f64.powi(200);
        assert_eq!(back, std::f64::consts::PI);
    }

    #[test]
    fn roots_match_double() {
        for n in [3usize, 5, 7, 12, 30] {
            let table = roots(n, 160);
            for (j, r) in table.iter().enumerate() {
                let c = r.to_complex(160);
                let (s, co) = (std::f64::consts::TAU * j as f64 / n as f64).sin_cos();
                assert!(
                    (c.re - co).abs() < 1e-15 && (c.im - s).abs() < 1e-15,
                    "n={n} j={j}"
                );
            }
        }
        let t = roots(8, 100);
        assert_eq!(t[2].re, BigInt::zero());
        assert_eq!(t[2].im, BigInt::from(1) << 100);
    }

    #[test]
    fn root_powers_close_up() {
        // ω^n = 1 to working precision
        let n = 97;
        let bits = 256;
        let table = roots(n, bits);
        let prod = table[96].mul(&table[1], bits);
        let one = BigInt::from(1) << bits;
        assert!((prod.re - one).abs() < BigInt::from(1 << 12));
        assert!(prod.im.abs() < BigInt::from(1 << 12));
    }

    #[test]
    fn fixed_conversion() {
        let mut exact = true;
        assert_eq!(to_fixed(1.5, 4, &mut exact), BigInt::from(24));
        assert!(exact);
        to_fixed(1e-30, 10, &mut exact);
        assert!(!exact);
        let mut exact = true;
        assert_eq!(to_fixed(-3.0, 0, &mut exact), BigInt::from(-3));
    }
}
