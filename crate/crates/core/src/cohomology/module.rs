//! Lattices with a group action, and equivariant maps between them.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::group::FiniteGroup;
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// `Z^rank` with `action[g]` the matrix of `g`, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralGModule {
    rank: usize,
    action: Vec<IntMatrix>,
}

impl IntegralGModule {
    /// Checks shapes, `1 -> I` and `action[g h] = action[g] action[h]`;
    /// invertibility over Z follows.
    pub fn new(g: &FiniteGroup, rank: usize, action: Vec<IntMatrix>) -> Result<Self> {
        if action.len() != g.order() {
            return Err(Error::InvalidModule(format!("{} action matrices for a group of order {}", action.len(), g.order())));
        }
        if action.iter().any(|m| m.rows() != rank || m.cols() != rank) {
            return Err(Error::InvalidModule(format!("action matrices must be {rank} x {rank}")));
        }
        if action[g.identity()] != IntMatrix::identity(rank) {
            return Err(Error::InvalidModule("the identity does not act trivially".into()));
        }
        for a in g.elements() {
            for b in g.elements() {
                if action[a].mul(&action[b]) != action[g.mul(a, b)] {
                    return Err(Error::InvalidModule(format!("action is not a homomorphism at ({a}, {b})")));
                }
            }
        }
        Ok(IntegralGModule { rank, action })
    }

    pub fn trivial(g: &FiniteGroup, rank: usize) -> Self {
        IntegralGModule { rank, action: vec![IntMatrix::identity(rank); g.order()] }
    }

    /// `Z` with `g` acting by `+1` on `h` and `-1` off it; `h` must have
    /// index 2.
    pub fn sign(g: &FiniteGroup, h: &[usize]) -> Result<Self> {
        g.subgroup(h)?;
        if 2 * h.len() != g.order() {
            return Err(Error::InvalidModule("the sign module needs an index-2 subgroup".into()));
        }
        let action =
            g.elements().map(|x| IntMatrix::from_i64(&[&[if h.contains(&x) { 1 } else { -1 }]])).collect();
        IntegralGModule::new(g, 1, action)
    }

    /// `Ind_H^G Z`: the permutation lattice on the left cosets `x H`.
    pub fn induced(g: &FiniteGroup, h: &[usize]) -> Result<Self> {
        g.subgroup(h)?;
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for x in g.elements() {
            if cosets.iter().any(|c| c.contains(&x)) {
                continue;
            }
            let mut c: Vec<usize> = h.iter().map(|&y| g.mul(x, y)).collect();
            c.sort_unstable();
            cosets.push(c);
        }
        let coset_of = |x: usize| cosets.iter().position(|c| c.contains(&x)).expect("cosets partition G");
        let n = cosets.len();
        let action = g
            .elements()
            .map(|s| {
                let mut m = IntMatrix::zeros(n, n);
                for (j, c) in cosets.iter().enumerate() {
                    m[(coset_of(g.mul(s, c[0])), j)] = BigInt::one();
                }
                m
            })
            .collect();
        IntegralGModule::new(g, n, action)
    }

    /// `Z~^2` for `Z/2`: the two coordinates swapped by the generator.
    pub fn swap_lattice(g: &FiniteGroup) -> Result<Self> {
        if g.order() != 2 {
            return Err(Error::InvalidModule("the swap lattice is defined for a group of order 2".into()));
        }
        IntegralGModule::induced(g, &[g.identity()])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn direct_sum(&self, other: &IntegralGModule) -> IntegralGModule {
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.block_diag(b)).collect();
        IntegralGModule { rank: self.rank + other.rank, action }
    }

    /// The same module in the basis given by the columns of `u^{-1}`:
    /// `g` acts by `u action[g] u^{-1}`.
    pub fn transport(&self, u: &IntMatrix) -> Result<IntegralGModule> {
        let ui = u.inverse()?;
        if u.rows() != self.rank {
            return Err(Error::InvalidModule("change of basis has the wrong size".into()));
        }
        Ok(IntegralGModule { rank: self.rank, action: self.action.iter().map(|a| u.mul(a).mul(&ui)).collect() })
    }

    /// The restriction to the subgroup with the given elements.
    pub fn restrict(&self, h: &[usize]) -> IntegralGModule {
        IntegralGModule { rank: self.rank, action: h.iter().map(|&x| self.action[x].clone()).collect() }
    }

    /// Basis of the fixed sublattice `M^G`, as columns.
    pub fn fixed_lattice(&self) -> IntMatrix {
        let id = IntMatrix::identity(self.rank);
        self.action.iter().fold(IntMatrix::zeros(0, self.rank), |acc, a| acc.vconcat(&a.sub(&id))).kernel()
    }
}

/// A `G`-equivariant map `source -> target`, as a `target.rank x
/// source.rank` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleMap {
    pub source: IntegralGModule,
    pub target: IntegralGModule,
    pub matrix: IntMatrix,
}

impl ModuleMap {
    pub fn new(source: IntegralGModule, target: IntegralGModule, matrix: IntMatrix) -> Result<Self> {
        let m = ModuleMap { source, target, matrix };
        m.check_shape()?;
        Ok(m)
    }

    fn check_shape(&self) -> Result<()> {
        if self.matrix.rows() != self.target.rank || self.matrix.cols() != self.source.rank {
            return Err(Error::InvalidMap(format!(
                "matrix is {} x {}, expected {} x {}",
                self.matrix.rows(),
                self.matrix.cols(),
                self.target.rank,
                self.source.rank
            )));
        }
        Ok(())
    }

    /// The first group element at which `matrix g = g matrix` fails.
    pub fn equivariance_failure(&self) -> Option<usize> {
        (0..self.source.action.len())
            .find(|&g| self.matrix.mul(&self.source.action[g]) != self.target.action[g].mul(&self.matrix))
    }

    pub fn check_equivariant(&self) -> Result<()> {
        self.check_shape()?;
        match self.equivariance_failure() {
            None => Ok(()),
            Some(g) => Err(Error::InvalidMap(format!("not equivariant for group element {g}"))),
        }
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &ModuleMap) -> Result<ModuleMap> {
        if first.target != self.source {
            return Err(Error::InvalidMap("composition of maps with mismatched modules".into()));
        }
        ModuleMap::new(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix))
    }

    pub fn direct_sum(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            matrix: self.matrix.block_diag(&other.matrix),
        }
    }

    pub fn identity(m: &IntegralGModule) -> ModuleMap {
        ModuleMap { source: m.clone(), target: m.clone(), matrix: IntMatrix::identity(m.rank) }
    }

    pub fn restrict(&self, h: &[usize]) -> ModuleMap {
        ModuleMap { source: self.source.restrict(h), target: self.target.restrict(h), matrix: self.matrix.clone() }
    }
}
