//! Reference computations that share no code with the library.
#![allow(dead_code)]

/// Rows of `F^{⊗n}` built by repeated Kronecker products, bit-packed.
pub fn generator_rows(n: usize) -> Vec<Vec<u64>> {
    let mut g: Vec<Vec<u8>> = vec![vec![1]];
    while g.len() < n {
        let m = g.len();
        let mut next = vec![vec![0u8; 2 * m]; 2 * m];
        for i in 0..m {
            for j in 0..m {
                // F = [[1, 0], [1, 1]]
                next[i][j] = g[i][j];
                next[m + i][j] = g[i][j];
                next[m + i][m + j] = g[i][j];
            }
        }
        g = next;
    }
    g.iter()
        .map(|row| {
            let mut words = vec![0u64; n.div_ceil(64)];
            for (j, &b) in row.iter().enumerate() {
                words[j / 64] |= u64::from(b) << (j % 64);
            }
            words
        })
        .collect()
}

/// `u · G` over GF(2).
pub fn matrix_encode(rows: &[Vec<u64>], u: &[u8]) -> Vec<u8> {
    let n = u.len();
    let mut acc = vec![0u64; n.div_ceil(64)];
    for (row, _) in rows.iter().zip(u).filter(|(_, &b)| b == 1) {
        for (a, w) in acc.iter_mut().zip(row) {
            *a ^= w;
        }
    }
    (0..n).map(|j| ((acc[j / 64] >> (j % 64)) & 1) as u8).collect()
}

/// Remainder of `msg · x^len` divided by `x^len + poly`, MSB first.
pub fn crc_long_division(msg: &[u8], poly: u64, len: usize) -> Vec<u8> {
    let mut divisor = vec![1u8];
    divisor.extend((0..len).map(|i| ((poly >> (len - 1 - i)) & 1) as u8));
    let mut rem: Vec<u8> = msg.to_vec();
    rem.extend(std::iter::repeat_n(0, len));
    for i in 0..msg.len() {
        if rem[i] == 1 {
            for (r, d) in rem[i..].iter_mut().zip(&divisor) {
                *r ^= d;
            }
        }
    }
    rem[msg.len()..].to_vec()
}

fn min_sum(a: f32, b: f32) -> f32 {
    let s = if (a < 0.0) ^ (b < 0.0) { -1.0 } else { 1.0 };
    s * a.abs().min(b.abs())
}

fn butterfly(u: &[u8]) -> Vec<u8> {
    if u.len() == 1 {
        return u.to_vec();
    }
    let h = u.len() / 2;
    let a = butterfly(&u[..h]);
    let b = butterfly(&u[h..]);
    a.iter().zip(&b).map(|(x, y)| x ^ y).chain(b.iter().copied()).collect()
}

/// LLR seen by SC at every leaf `i` when `u[..i]` has been decided.
///
/// With `c = (x ⊕ y, y)` for the halves `x = enc(u_left)`, `y = enc(u_right)`,
/// the left half sees `f(l_top, l_bottom)` and the right half sees
/// `l_bottom ± l_top` with the sign set by the left half's partial sums.
pub fn leaf_llrs(channel: &[f32], u: &[u8]) -> Vec<f32> {
    let mut out = Vec::with_capacity(u.len());
    replay(channel, u, &mut out);
    out
}

fn replay(l: &[f32], u: &[u8], out: &mut Vec<f32>) {
    if l.len() == 1 {
        out.push(l[0]);
        return;
    }
    let h = l.len() / 2;
    let upper: Vec<f32> = (0..h).map(|i| min_sum(l[i], l[h + i])).collect();
    replay(&upper, &u[..h], out);
    let v = butterfly(&u[..h]);
    let lower: Vec<f32> = (0..h)
        .map(|i| if v[i] == 0 { l[h + i] + l[i] } else { l[h + i] - l[i] })
        .collect();
    replay(&lower, &u[h..], out);
}

/// Min-sum path metric of the full decision vector `u`, accumulated in leaf
/// order.
pub fn path_metric(channel: &[f32], u: &[u8]) -> f32 {
    leaf_llrs(channel, u)
        .iter()
        .zip(u)
        .fold(0.0f32, |pm, (&l, &b)| if (l < 0.0) as u8 != b { pm + l.abs() } else { pm })
}

/// BPSK/AWGN LLRs for `codeword` at noise level `sigma`.
pub fn awgn_llrs<R: rand::Rng>(codeword: &[u8], sigma: f64, rng: &mut R) -> Vec<f32> {
    use rand_distr::{Distribution, Normal};
    let noise = Normal::new(0.0, sigma).unwrap();
    codeword
        .iter()
        .map(|&b| {
            let y = if b == 0 { 1.0 } else { -1.0 } + noise.sample(rng);
            (2.0 * y / (sigma * sigma)) as f32
        })
        .collect()
}

pub fn sigma(ebno_db: f64, rate: f64) -> f64 {
    (1.0 / (2.0 * rate * 10f64.powf(ebno_db / 10.0))).sqrt()
}
