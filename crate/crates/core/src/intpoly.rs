//! Small exact integer-polynomial helpers (coefficient vectors indexed by
//! degree). These back the dimension oracles and the regular-sequence
//! certificate and never touch the GF(2) ring engine.

/// Truncated product, keeping degrees `0..=bound`.
pub fn mul_trunc(a: &[i64], b: &[i64], bound: usize) -> Vec<i64> {
    let mut out = vec![0i64; bound + 1];
    for (i, &ai) in a.iter().enumerate().take(bound + 1) {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if i + j > bound {
                break;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

/// In-place multiplication by `1 - t^g`.
pub fn mul_one_minus(a: &mut [i64], g: usize) {
    for i in (g..a.len()).rev() {
        a[i] -= a[i - g];
    }
}

/// In-place division by `1 - t^g` (running sums with stride `g`).
pub fn div_one_minus(a: &mut [i64], g: usize) {
    for i in g..a.len() {
        a[i] += a[i - g];
    }
}

/// Gaussian binomial coefficient `[n choose k]_q` as a polynomial in `q`,
/// by the Pascal-style recurrence `[n k] = [n-1 k-1] + q^k [n-1 k]`.
pub fn gaussian_binomial_q(n: usize, k: usize) -> Vec<i64> {
    if k > n {
        return vec![0];
    }
    // rows of the q-Pascal triangle, kept only up to column k
    let mut row: Vec<Vec<i64>> = vec![vec![1]];
    for m in 1..=n {
        let mut next: Vec<Vec<i64>> = Vec::with_capacity(k.min(m) + 1);
        next.push(vec![1]);
        for j in 1..=k.min(m) {
            let left = row.get(j - 1);
            let up = row.get(j);
            let mut entry = left.cloned().unwrap_or_else(|| vec![0]);
            if let Some(up) = up {
                // add q^j * up
                let need = up.len() + j;
                if entry.len() < need {
                    entry.resize(need, 0);
                }
                for (d, &c) in up.iter().enumerate() {
                    entry[d + j] += c;
                }
            }
            next.push(entry);
        }
        row = next;
    }
    row.into_iter().nth(k).unwrap_or_else(|| vec![0])
}

/// Substitute `q = t^2`: spreads coefficients onto even degrees.
pub fn stretch_double(p: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; 2 * p.len().saturating_sub(1) + 1];
    for (d, &c) in p.iter().enumerate() {
        out[2 * d] = c;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_small_values() {
        assert_eq!(gaussian_binomial_q(4, 2), vec![1, 1, 2, 1, 1]);
        assert_eq!(gaussian_binomial_q(3, 1), vec![1, 1, 1]);
        assert_eq!(gaussian_binomial_q(5, 0), vec![1]);
        assert_eq!(gaussian_binomial_q(5, 5), vec![1]);
        assert_eq!(gaussian_binomial_q(2, 3), vec![0]);
        // symmetry [n k] = [n n-k]
        assert_eq!(gaussian_binomial_q(5, 2), gaussian_binomial_q(5, 3));
    }

    #[test]
    fn series_ops_invert_each_other() {
        let mut a = vec![0i64; 12];
        a[0] = 1;
        div_one_minus(&mut a, 3);
        mul_one_minus(&mut a, 3);
        let mut expect = vec![0i64; 12];
        expect[0] = 1;
        assert_eq!(a, expect);
    }

    #[test]
    fn stretch() {
        assert_eq!(stretch_double(&[1, 2, 1]), vec![1, 0, 2, 0, 1]);
    }
}
