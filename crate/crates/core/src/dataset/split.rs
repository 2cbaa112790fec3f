use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Disjoint train/test row indices covering `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
    pub seed: u64,
}

/// `round(0.7 n)`, with halves rounded up.
pub fn train_len(n: usize) -> usize {
    (7 * n + 5) / 10
}

/// Seeded uniform shuffle of `0..n`, then the first 70 % go to training.
pub fn split_70_30(n: usize, seed: u64) -> Result<Split> {
    if n < 10 {
        return Err(Error::Dataset(format!("need at least 10 rows to split, got {n}")));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let test = idx.split_off(train_len(n));
    Ok(Split {
        train: idx,
        test,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn seventy_thirty_sizes() {
        let s = split_70_30(100, 1).unwrap();
        assert_eq!((s.train.len(), s.test.len()), (70, 30));
        assert_eq!(split_70_30(101, 1).unwrap().train.len(), 71);
        assert!(split_70_30(9, 1).is_err());
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(split_70_30(57, 9).unwrap(), split_70_30(57, 9).unwrap());
        assert_ne!(split_70_30(57, 9).unwrap().train, split_70_30(57, 10).unwrap().train);
    }

    proptest! {
        #[test]
        fn split_partitions_rows(n in 10usize..400, seed in any::<u64>()) {
            let s = split_70_30(n, seed).unwrap();
            let mut all: Vec<usize> = s.train.iter().chain(&s.test).copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
            prop_assert_eq!(s.train.len(), ((n as f64) * 7.0 / 10.0).round() as usize);
        }
    }
}
