//! Fixed-weight q-ary symmetric error injection.

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::agcode::GoppaCode;
use crate::galois::{Field, FieldElement};

/// Recorded in every report next to the seed.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng (rand_chacha 0.3)";

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Injects exactly `weight` errors: support uniform among the
/// `weight`-subsets, values uniform among the nonzero elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChannelModel {
    pub weight: usize,
}

impl ChannelModel {
    pub fn new(weight: usize) -> ChannelModel {
        ChannelModel { weight }
    }

    pub fn error<R: Rng>(&self, field: &Field, n: usize, rng: &mut R) -> Vec<FieldElement> {
        assert!(self.weight <= n, "weight exceeds length");
        let mut e = vec![field.zero(); n];
        let mut support = sample(rng, n, self.weight).into_vec();
        support.sort_unstable();
        for i in support {
            let v = rng.gen_range(1..field.order() as u64);
            e[i] = field.element(v).expect("below q");
        }
        e
    }

    /// Returns `(word + e, e)`.
    pub fn corrupt<R: Rng>(
        &self,
        field: &Field,
        word: &[FieldElement],
        rng: &mut R,
    ) -> (Vec<FieldElement>, Vec<FieldElement>) {
        let e = self.error(field, word.len(), rng);
        let y = word.iter().zip(&e).map(|(&a, &b)| field.add(a, b)).collect();
        (y, e)
    }
}

pub fn random_message<R: Rng>(code: &GoppaCode, rng: &mut R) -> Vec<FieldElement> {
    let q = code.field().order() as u64;
    (0..code.k()).map(|_| code.field().element(rng.gen_range(0..q)).expect("below q")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn injects_exact_weight() {
        let f = Field::prime(5).unwrap();
        let mut rng = seeded_rng(7);
        for w in 0..=6 {
            for _ in 0..50 {
                let e = ChannelModel::new(w).error(&f, 6, &mut rng);
                assert_eq!(e.iter().filter(|x| !x.is_zero()).count(), w);
            }
        }
    }

    #[test]
    fn same_seed_same_errors() {
        let f = Field::prime(11).unwrap();
        let a = ChannelModel::new(3).error(&f, 11, &mut seeded_rng(99));
        let b = ChannelModel::new(3).error(&f, 11, &mut seeded_rng(99));
        assert_eq!(a, b);
    }
}
