//! BPSK over AWGN with LLR output.

use rand::Rng;
use rand_distr::StandardNormal;

/// Magnitude bound on generated LLRs; also the LLR magnitude in noiseless mode.
pub const LLR_CLAMP: f32 = 80.0;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum ChannelError {
    #[error("code rate {0} is outside (0, 1]")]
    Rate(f64),
}

/// Noise standard deviation for BPSK at `ebno_db` and code rate `rate`:
/// `sqrt(1 / (2 · rate · 10^(ebno_db / 10)))`.
pub fn ebno_to_sigma(ebno_db: f64, rate: f64) -> Result<f64, ChannelError> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(ChannelError::Rate(rate));
    }
    Ok((1.0 / (2.0 * rate * 10f64.powf(ebno_db / 10.0))).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub ebno_db: f64,
    pub rate: f64,
    pub sigma: f64,
    pub seed: u64,
}

impl ChannelParams {
    pub fn new(ebno_db: f64, rate: f64, seed: u64) -> Result<Self, ChannelError> {
        Ok(ChannelParams {
            ebno_db,
            rate,
            sigma: ebno_to_sigma(ebno_db, rate)?,
            seed,
        })
    }
}

/// Channel LLR for received sample `y`: `2y/σ²`, clamped.
#[inline]
pub fn llr(y: f64, sigma: f64) -> f32 {
    ((2.0 * y / (sigma * sigma)) as f32).clamp(-LLR_CLAMP, LLR_CLAMP)
}

/// Maps bit 0 to +1 and bit 1 to -1, adds Gaussian noise and writes LLRs.
/// Noise is drawn once per codeword position, in index order.
pub fn transmit<R: Rng + ?Sized>(codeword: &[u8], sigma: f64, rng: &mut R, llrs: &mut [f32]) {
    debug_assert_eq!(codeword.len(), llrs.len());
    for (l, &b) in llrs.iter_mut().zip(codeword) {
        let x = if b == 0 { 1.0 } else { -1.0 };
        let n: f64 = rng.sample(StandardNormal);
        *l = llr(x + sigma * n, sigma);
    }
}

/// The σ → 0 limit: signs follow the codeword, magnitudes sit at the clamp.
pub fn transmit_noiseless(codeword: &[u8], llrs: &mut [f32]) {
    for (l, &b) in llrs.iter_mut().zip(codeword) {
        *l = if b == 0 { LLR_CLAMP } else { -LLR_CLAMP };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sigma_examples() {
        assert_eq!(ebno_to_sigma(0.0, 0.5).unwrap(), 1.0);
        // 1 / (2 · 0.5 · 10^0.301) = 10^-0.301, so σ = 10^-0.1505 ≈ 0.70713.
        let oracle = 10f64.powf(-0.1505);
        assert!((ebno_to_sigma(3.01, 0.5).unwrap() - oracle).abs() < 1e-12);
        assert!((oracle - 0.70713).abs() < 1e-5);
        assert!((ebno_to_sigma(0.0, 1.0).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(ebno_to_sigma(1.0, 0.0), Err(ChannelError::Rate(0.0)));
        assert_eq!(ebno_to_sigma(1.0, 1.5), Err(ChannelError::Rate(1.5)));
    }

    #[test]
    fn llr_examples() {
        assert!((llr(0.8, 1.0) - 1.6).abs() < 1e-6);
        assert_eq!(llr(100.0, 0.1), LLR_CLAMP);
        assert_eq!(llr(-100.0, 0.1), -LLR_CLAMP);
    }

    #[test]
    fn noiseless_signs_follow_the_codeword() {
        let c = [0, 1, 1, 0];
        let mut l = [0.0; 4];
        transmit_noiseless(&c, &mut l);
        assert_eq!(l, [80.0, -80.0, -80.0, 80.0]);
    }

    #[test]
    fn llr_moments_for_the_zero_codeword() {
        // LLR = 2y/σ² with y ~ N(1, σ²): mean 2/σ², variance 4/σ².
        let sigma = 0.8;
        let n = 200_000;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut l = vec![0.0f32; n];
        transmit(&vec![0u8; n], sigma, &mut rng, &mut l);
        let mean = l.iter().map(|&x| x as f64).sum::<f64>() / n as f64;
        let var = l.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / n as f64;
        let m = 2.0 / (sigma * sigma);
        let v = 4.0 / (sigma * sigma);
        assert!((mean - m).abs() < 5.0 * (v / n as f64).sqrt(), "mean {mean} vs {m}");
        assert!((var - v).abs() < 0.02 * v, "variance {var} vs {v}");
    }
}
