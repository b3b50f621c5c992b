//! Min-sum kernel over the 2x2 polarizing transform, in the LLR domain.
//!
//! Positive LLRs favour bit 0.

/// Check-node update: `sign(a)·sign(b)·min(|a|, |b|)`.
#[inline(always)]
pub fn f(a: f32, b: f32) -> f32 {
    let m = a.abs().min(b.abs());
    if (a < 0.0) != (b < 0.0) {
        -m
    } else {
        m
    }
}

/// Variable-node update: `a + (-1)^bit · b`.
#[inline(always)]
pub fn g(a: f32, b: f32, bit: u8) -> f32 {
    if bit == 0 {
        a + b
    } else {
        a - b
    }
}

/// 0 for `llr >= 0`, else 1.
#[inline(always)]
pub fn hard_decision(llr: f32) -> u8 {
    (llr < 0.0) as u8
}

/// Path-metric penalty of deciding `bit` at a position with LLR `llr`.
#[inline(always)]
pub fn penalty(llr: f32, bit: u8) -> f32 {
    if bit == hard_decision(llr) {
        0.0
    } else {
        llr.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn f_examples() {
        assert_eq!(f(2.5, -1.0), -1.0);
        assert_eq!(f(0.0, 7.0), 0.0);
        assert_eq!(f(0.0, -7.0), 0.0);
        assert_eq!(f(-3.0, -4.0), 3.0);
    }

    #[test]
    fn g_examples() {
        assert_eq!(g(2.0, 3.0, 0), 5.0);
        assert_eq!(g(2.0, 3.0, 1), -1.0);
        assert_eq!(g(1.25, 0.0, 0), 1.25);
        assert_eq!(g(1.25, 0.0, 1), 1.25);
    }

    #[test]
    fn hard_decision_examples() {
        assert_eq!(hard_decision(1.7), 0);
        assert_eq!(hard_decision(-0.1), 1);
        assert_eq!(hard_decision(0.0), 0);
        assert_eq!(hard_decision(-0.0), 0);
    }

    proptest! {
        #[test]
        fn f_is_symmetric_and_bounded(a in -100f32..100.0, b in -100f32..100.0) {
            prop_assert_eq!(f(a, b), f(b, a));
            prop_assert!(f(a, b).abs() <= a.abs().min(b.abs()));
        }

        #[test]
        fn g_branches_average_to_upper(a in -100f32..100.0, b in -100f32..100.0) {
            // Equal up to the rounding of the two sums.
            let s = g(a, b, 0) as f64 + g(a, b, 1) as f64;
            prop_assert!((s - 2.0 * a as f64).abs() <= 1e-4 * (1.0 + a.abs() as f64 + b.abs() as f64));
        }
    }
}
