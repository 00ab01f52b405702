/// Pairwise (tree) summation.
///
/// The reduction tree depends only on the slice length, so the result is
/// reproducible for a given input order and the rounding error grows like
/// `O(log n)` instead of `O(n)`.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 8;
    if values.len() <= LEAF {
        return values.iter().fold(0.0, |acc, v| acc + v);
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn small_and_empty() {
        assert_eq!(pairwise_sum(&[]), 0.0);
        assert_eq!(pairwise_sum(&[1.0, 2.0, 3.0]), 6.0);
    }

    #[test]
    fn long_sum_is_accurate() {
        let v: Vec<f64> = (0..100_000).map(|_| 0.1).collect();
        assert!((pairwise_sum(&v) - 10_000.0).abs() < 1e-9);
    }
}
