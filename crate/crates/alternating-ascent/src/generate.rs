//! Seeded random QUBO instances.
//!
//! Uses ChaCha8 seeded through `seed_from_u64`, which is portable across
//! platforms. Diagonal terms are always drawn; each unordered pair is present
//! with probability `density`. Coefficients are uniform over
//! `[-range, range]` without zero.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::qubo::{QuboError, QuboInstance};

pub fn generate_instance(n: usize, density: f64, range: i64, seed: u64) -> Result<QuboInstance, QuboError> {
    assert!((0.0..=1.0).contains(&density), "density must lie in [0, 1]");
    assert!(range >= 1, "coefficient range must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let v = rng.gen_range(1..=2 * range);
        if v <= range {
            v - range - 1
        } else {
            v - range
        }
    };
    let mut terms = Vec::new();
    for i in 0..n {
        terms.push((i, i, draw(&mut rng)));
        for j in i + 1..n {
            if rng.gen_bool(density) {
                terms.push((i, j, draw(&mut rng)));
            }
        }
    }
    QuboInstance::new(n, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_extremes() {
        let q = generate_instance(5, 0.0, 10, 1).unwrap();
        assert!(q.entries().keys().all(|&(i, j)| i == j));
        let q = generate_instance(5, 1.0, 10, 1).unwrap();
        assert_eq!(q.entries().len(), 15);
        assert!(q.entries().values().all(|&v| v != 0 && v.abs() <= 10));
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            generate_instance(9, 0.4, 7, 3).unwrap(),
            generate_instance(9, 0.4, 7, 3).unwrap()
        );
        assert_ne!(
            generate_instance(9, 0.4, 7, 3).unwrap(),
            generate_instance(9, 0.4, 7, 4).unwrap()
        );
    }
}
