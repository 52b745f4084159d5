use crate::instance::Instance;
use crate::solution::Solution;

/// Load-balance variance over all APs: `sum_a (|C_a| - n/m)^2 / m`.
///
/// APs that serve nobody count with `|C_a| = 0`.
pub fn utilization_variance(sol: &Solution, inst: &Instance) -> f64 {
    variance_of_counts(&sol.coverage_counts(inst.num_aps()), inst.num_tds())
}

/// The same quantity from raw per-AP coverage counts.
pub fn variance_of_counts(counts: &[usize], num_tds: usize) -> f64 {
    let m = counts.len() as f64;
    let mean = num_tds as f64 / m;
    counts
        .iter()
        .map(|&c| {
            let dev = c as f64 - mean;
            dev * dev
        })
        .sum::<f64>()
        / m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_load_has_zero_variance() {
        assert_eq!(variance_of_counts(&[25, 25, 25, 25], 100), 0.0);
    }

    #[test]
    fn two_idle_aps() {
        assert_eq!(variance_of_counts(&[50, 50, 0, 0], 100), 625.0);
    }

    #[test]
    fn uneven_five_aps() {
        // deviations 0, 0, 1, -2, 1 around a mean of 4
        let v = variance_of_counts(&[4, 4, 5, 2, 5], 20);
        assert!((v - 1.2).abs() <= 1e-12);
    }
}
