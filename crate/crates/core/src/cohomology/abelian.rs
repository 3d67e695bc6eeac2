//! Finitely generated abelian groups `Z/d_1 + ... + Z/d_k + Z^r` and
//! homomorphisms between them, given on the standard generators.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use crate::arith::rational::serde_bigint_vec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    /// Invariant factors, each `> 1` and dividing the next.
    #[serde(with = "serde_bigint_vec")]
    pub torsion: Vec<BigInt>,
    pub rank: usize,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { torsion: Vec::new(), rank: 0 }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { torsion: Vec::new(), rank }
    }

    pub fn cyclic(n: u64) -> Self {
        if n == 1 {
            AbelianGroup::trivial()
        } else {
            AbelianGroup { torsion: vec![BigInt::from(n)], rank: 0 }
        }
    }

    pub fn generators(&self) -> usize {
        self.torsion.len() + self.rank
    }

    pub fn is_trivial(&self) -> bool {
        self.generators() == 0
    }

    /// `None` for an infinite group.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }

    /// The relation lattice: `diag(d_1, ..., d_k, 0, ..., 0)`.
    pub fn relations(&self) -> IntMatrix {
        let n = self.generators();
        let mut m = IntMatrix::zeros(n, n);
        for (i, d) in self.torsion.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        x.iter()
            .enumerate()
            .map(|(i, v)| match self.torsion.get(i) {
                Some(d) => v.mod_floor(d),
                None => v.clone(),
            })
            .collect()
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        self.reduce(x).iter().all(Zero::is_zero)
    }

    /// Order of the subgroup generated by the columns of `gens`; `None`
    /// if it is infinite.
    pub fn subgroup_order(&self, gens: &IntMatrix) -> Option<BigInt> {
        let n = self.generators();
        let full = self.order()?;
        let lattice = gens.hconcat(&self.relations());
        let s = lattice.snf();
        if s.rank < n {
            return None;
        }
        let index: BigInt = s.diagonal.iter().product();
        Some(full / index)
    }

    /// Order of one element.
    pub fn element_order(&self, x: &[BigInt]) -> Option<BigInt> {
        self.subgroup_order(&IntMatrix::column_vector(x))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// `span(columns of a) ⊆ span(columns of b)`.
pub fn lattice_contains(b: &IntMatrix, a: &IntMatrix) -> bool {
    let s = b.snf();
    (0..a.cols()).all(|j| s.solve(&a.column(j)).is_some())
}

/// Generators of `ker f` for `f: src -> tgt`, as columns in `src`
/// coordinates.
pub fn hom_kernel(f: &IntMatrix, tgt: &AbelianGroup) -> IntMatrix {
    let n1 = f.cols();
    let stacked = f.hconcat(&tgt.relations().scale(&-BigInt::one()));
    stacked.kernel().select_rows(0..n1)
}

pub fn is_injective(f: &IntMatrix, src: &AbelianGroup, tgt: &AbelianGroup) -> bool {
    lattice_contains(&src.relations(), &hom_kernel(f, tgt))
}

pub fn is_surjective(f: &IntMatrix, tgt: &AbelianGroup) -> bool {
    lattice_contains(&f.hconcat(&tgt.relations()), &IntMatrix::identity(tgt.generators()))
}

/// Exactness of `G1 -f-> G2 -g-> G3` at `G2`: `ker g = im f`.
pub fn is_exact_at(f: &IntMatrix, g: &IntMatrix, mid: &AbelianGroup, tgt: &AbelianGroup) -> bool {
    let image = f.hconcat(&mid.relations());
    let kernel = hom_kernel(g, tgt);
    lattice_contains(&kernel.hconcat(&mid.relations()), &image) && lattice_contains(&image, &kernel)
}

/// The presentation of `Z^n / span(columns of r)` in invariant-factor form,
/// with the coordinate change `x -> p x` into the new generators.
pub(crate) fn presentation(r: &IntMatrix, n: usize) -> (AbelianGroup, IntMatrix, IntMatrix) {
    let s = r.snf();
    let keep: Vec<usize> = (0..n).filter(|&i| i >= s.rank || !s.diagonal[i].is_one()).collect();
    let torsion = keep.iter().filter(|&&i| i < s.rank).map(|&i| s.diagonal[i].clone()).collect();
    let rank = keep.iter().filter(|&&i| i >= s.rank).count();
    let to_new = s.p.select_rows(keep.iter().copied());
    let from_new = s.p_inv.select_columns(keep.iter().copied());
    (AbelianGroup { torsion, rank }, to_new, from_new)
}
