//! Finite coset sets inside (Z/B)^r x prod Z/t_i.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shape of the quotient A(Q)/B A(Q) for a basis of rank r with torsion
/// generators whose orders reduce to `torsion` (t_i = gcd(order_i, B)).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeShape {
    pub rank: usize,
    pub modulus: u64,
    pub torsion: Vec<u64>,
}

impl LatticeShape {
    pub fn new(rank: usize, modulus: u64, torsion: Vec<u64>) -> Result<Self> {
        if modulus == 0 || torsion.contains(&0) {
            return Err(Error::InvalidInput("coset moduli must be positive".into()));
        }
        Ok(LatticeShape { rank, modulus, torsion })
    }

    /// Per-coordinate moduli: B repeated r times, then the torsion moduli.
    pub fn radices(&self) -> Vec<u64> {
        std::iter::repeat_n(self.modulus, self.rank).chain(self.torsion.iter().copied()).collect()
    }

    pub fn cardinality(&self) -> u64 {
        self.radices().iter().product()
    }

    pub fn contains(&self, tuple: &[u64]) -> bool {
        let radices = self.radices();
        tuple.len() == radices.len() && tuple.iter().zip(&radices).all(|(c, m)| c < m)
    }

    /// All tuples in lexicographic order.
    pub fn tuples(&self) -> TupleIter {
        TupleIter { radices: self.radices(), next: Some(vec![0; self.rank + self.torsion.len()]) }
    }
}

/// Lexicographic mixed-radix counter.
pub struct TupleIter {
    radices: Vec<u64>,
    next: Option<Vec<u64>>,
}

impl Iterator for TupleIter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.next.take()?;
        if self.radices.contains(&0) {
            return None;
        }
        let mut succ = current.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                self.next = None;
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.radices[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}

/// A set of admissible cosets. Stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetLattice {
    pub shape: LatticeShape,
    pub admissible: BTreeSet<Vec<u64>>,
}

impl CosetLattice {
    pub fn new(shape: LatticeShape, admissible: impl IntoIterator<Item = Vec<u64>>) -> Result<Self> {
        let admissible: BTreeSet<Vec<u64>> = admissible.into_iter().collect();
        if admissible.iter().any(|t| !shape.contains(t)) {
            return Err(Error::OutOfRange);
        }
        Ok(CosetLattice { shape, admissible })
    }

    pub fn full(shape: LatticeShape) -> Self {
        let admissible = shape.tuples().collect();
        CosetLattice { shape, admissible }
    }

    pub fn empty(shape: LatticeShape) -> Self {
        CosetLattice { shape, admissible: BTreeSet::new() }
    }

    pub fn len(&self) -> usize {
        self.admissible.len()
    }

    pub fn is_empty(&self) -> bool {
        self.admissible.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.admissible.len() as u64 == self.shape.cardinality()
    }

    pub fn contains(&self, tuple: &[u64]) -> bool {
        self.admissible.contains(tuple)
    }

    pub fn intersect(&self, other: &CosetLattice) -> Result<CosetLattice> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch);
        }
        let admissible = self.admissible.intersection(&other.admissible).cloned().collect();
        Ok(CosetLattice { shape: self.shape.clone(), admissible })
    }
}

/// Intersection of a nonempty list of lattices with a common shape.
pub fn intersect_cosets(lattices: &[CosetLattice]) -> Result<CosetLattice> {
    let (first, rest) = lattices
        .split_first()
        .ok_or_else(|| Error::InvalidInput("intersection of an empty family".into()))?;
    rest.iter().try_fold(first.clone(), |acc, l| acc.intersect(l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn shape(b: u64) -> LatticeShape {
        LatticeShape::new(1, b, vec![]).unwrap()
    }

    fn lattice(b: u64, items: &[u64]) -> CosetLattice {
        CosetLattice::new(shape(b), items.iter().map(|&x| vec![x])).unwrap()
    }

    #[test]
    fn examples() {
        let w = lattice(4, &[1, 3]);
        assert_eq!(intersect_cosets(&[CosetLattice::full(shape(4)), w.clone()]).unwrap(), w);
        assert!(intersect_cosets(&[lattice(2, &[0]), lattice(2, &[1])]).unwrap().is_empty());
        assert_eq!(intersect_cosets(&[lattice(4, &[0, 2]), lattice(4, &[2, 3])]).unwrap(), lattice(4, &[2]));
    }

    #[test]
    fn shape_mismatch_and_range() {
        assert_eq!(intersect_cosets(&[lattice(2, &[0]), lattice(4, &[0])]), Err(Error::ShapeMismatch));
        assert_eq!(CosetLattice::new(shape(2), vec![vec![2]]), Err(Error::OutOfRange));
        assert_eq!(CosetLattice::new(shape(2), vec![vec![0, 0]]), Err(Error::OutOfRange));
    }

    #[test]
    fn tuple_enumeration() {
        let s = LatticeShape::new(2, 3, vec![2]).unwrap();
        let all: Vec<_> = s.tuples().collect();
        assert_eq!(all.len(), 18);
        assert_eq!(all[0], vec![0, 0, 0]);
        assert_eq!(all[1], vec![0, 0, 1]);
        assert_eq!(all[17], vec![2, 2, 1]);
        let rank0 = LatticeShape::new(0, 12, vec![]).unwrap();
        assert_eq!(rank0.tuples().collect::<Vec<_>>(), vec![Vec::<u64>::new()]);
    }

    proptest! {
        #[test]
        fn agrees_with_naive_intersection(sets in prop::collection::vec(prop::collection::vec(0u64..6, 0..20), 1..5)) {
            let s = LatticeShape::new(1, 6, vec![]).unwrap();
            let lattices: Vec<_> = sets.iter()
                .map(|v| CosetLattice::new(s.clone(), v.iter().map(|&x| vec![x])).unwrap())
                .collect();
            let got = intersect_cosets(&lattices).unwrap();
            let naive: Vec<Vec<u64>> = (0..6u64)
                .filter(|x| sets.iter().all(|v| v.contains(x)))
                .map(|x| vec![x])
                .collect();
            prop_assert_eq!(got.admissible.into_iter().collect::<Vec<_>>(), naive);
            // commutative and idempotent
            let mut rev = lattices.clone();
            rev.reverse();
            prop_assert_eq!(intersect_cosets(&rev).unwrap(), intersect_cosets(&lattices).unwrap());
            prop_assert_eq!(lattices[0].intersect(&lattices[0]).unwrap(), lattices[0].clone());
        }
    }
}
