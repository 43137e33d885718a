//! Seeded single-coefficient mutations for negative controls.
//!
//! A mutation picks one equality row that touches the `x`-block and changes
//! either its right-hand side or one of its `x`-block coefficients. Rows of
//! that kind tie the original coordinates to the rest of the system, so the
//! change moves the projection.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactq::Rational;
use crate::polyhedra::{ExtForm, Provenance};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mutation {
    pub seed: u64,
    pub equality_row: usize,
    /// `None` for the right-hand side, otherwise the column.
    pub column: Option<usize>,
    pub old: String,
    pub new: String,
}

/// Apply the mutation selected by `seed`. Returns `None` when no equality
/// row touches the `x`-block.
pub fn mutate(f: &ExtForm, seed: u64) -> Option<(ExtForm, Mutation)> {
    let d = f.dim();
    let candidates: Vec<usize> = f
        .equalities()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.coeffs.iter().any(|(c, a)| *c < d && !a.is_zero()))
        .map(|(i, _)| i)
        .collect();
    if candidates.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = candidates[rng.gen_range(0..candidates.len())];
    let mut eqs = f.equalities().to_vec();
    let row = &mut eqs[k];
    let (column, old, new) = if rng.gen_bool(0.5) {
        let delta = [1, -1, 2][rng.gen_range(0..3)];
        let old = row.rhs.clone();
        row.rhs = &old + &Rational::from_int(delta);
        (None, old, row.rhs.clone())
    } else {
        let xs: Vec<usize> = (0..row.coeffs.len())
            .filter(|&i| row.coeffs[i].0 < d && !row.coeffs[i].1.is_zero())
            .collect();
        let i = xs[rng.gen_range(0..xs.len())];
        let old = row.coeffs[i].1.clone();
        row.coeffs[i].1 = &old * &Rational::from_int(2);
        (Some(row.coeffs[i].0), old, row.coeffs[i].1.clone())
    };
    let m = Mutation {
        seed,
        equality_row: k,
        column,
        old: old.to_pq_string(),
        new: new.to_pq_string(),
    };
    let p = Provenance::node("mutation", vec![f.provenance().clone()]).with("seed", seed);
    let out = ExtForm::new(
        f.labels().to_vec(),
        f.aux_count(),
        f.inequalities().to_vec(),
        eqs,
        p,
    )
    .expect("mutation keeps columns in range");
    Some((out, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulations::{martin_stp, subp_ef};
    use crate::verify::corpus;

    #[test]
    fn mutations_are_seeded_and_single() {
        let f = martin_stp(&corpus::complete(4)).unwrap();
        let (a, ma) = mutate(&f, 3).unwrap();
        let (b, mb) = mutate(&f, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(ma, mb);
        let changed = f
            .equalities()
            .iter()
            .zip(a.equalities())
            .filter(|(x, y)| x != y)
            .count();
        assert_eq!(changed, 1);
        assert_eq!(a.inequalities(), f.inequalities());
        assert!(mutate(&subp_ef(&corpus::path(2)), 0).is_none());
    }
}
