//! Closed-form quantum transition probabilities for the two smallest
//! networks. They are exactly periodic with period `2π/N`.

/// `π(k <- j, t)` on the generation-1 network (K4, N = 4).
pub fn closed_form_g1(j: usize, k: usize, t: f64) -> f64 {
    let c = (4.0 * t).cos();
    if k == j {
        (5.0 + 3.0 * c) / 8.0
    } else {
        (1.0 - c) / 8.0
    }
}

/// `π(k <- 4, t)` on the generation-2 network (N = 7), source at the center.
pub fn closed_form_g2(k: usize, t: f64) -> f64 {
    let c = (7.0 * t).cos();
    if k == 4 {
        (37.0 + 12.0 * c) / 49.0
    } else {
        (2.0 - 2.0 * c) / 49.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn g1_values() {
        assert_eq!(closed_form_g1(2, 2, 0.0), 1.0);
        assert!((closed_form_g1(1, 3, PI / 4.0) - 0.25).abs() < 1e-15);
        assert!((closed_form_g1(1, 1, PI / 2.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn g2_values() {
        assert_eq!(closed_form_g2(4, 0.0), 1.0);
        assert!((closed_form_g2(4, 2.0 * PI / 7.0) - 1.0).abs() < 1e-15);
        assert!((closed_form_g2(6, PI / 7.0) - 4.0 / 49.0).abs() < 1e-15);
    }

    #[test]
    fn rows_are_normalized() {
        for t in [0.0, 0.3, 1.1, 7.9] {
            let g1: f64 = (1..=4).map(|k| closed_form_g1(1, k, t)).sum();
            let g2: f64 = (1..=7).map(|k| closed_form_g2(k, t)).sum();
            assert!((g1 - 1.0).abs() < 1e-15);
            assert!((g2 - 1.0).abs() < 1e-15);
        }
    }
}
