//! Inhomogeneous cochains and their cohomology.
//!
//! `C^n(G, M)` is `M^(G^n)`; a cochain is a flat vector whose block for the
//! tuple `(g_1, ..., g_n)` (mixed radix, `g_1` most significant) holds the
//! value in `M`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::abelian::{presentation, AbelianGroup};
use super::group::FiniteGroup;
use super::matrix::{IntMatrix, Smith};
use super::module::{IntegralGModule, ModuleMap};
use crate::error::{Error, Result};

pub const DEFAULT_RANK_CAP: usize = 1_000_000;

fn tuple_count(g: &FiniteGroup, n: usize) -> usize {
    g.order().pow(n as u32)
}

fn decode(g: &FiniteGroup, n: usize, mut idx: usize) -> Vec<usize> {
    let k = g.order();
    let mut t = vec![0; n];
    for slot in t.iter_mut().rev() {
        *slot = idx % k;
        idx /= k;
    }
    t
}

fn encode(g: &FiniteGroup, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &x| acc * g.order() + x)
}

pub fn cochain_rank(g: &FiniteGroup, m: &IntegralGModule, n: usize) -> usize {
    tuple_count(g, n) * m.rank()
}

/// `d^n: C^n -> C^{n+1}`.
pub fn differential(g: &FiniteGroup, m: &IntegralGModule, n: usize) -> IntMatrix {
    let r = m.rank();
    let mut d = IntMatrix::zeros(tuple_count(g, n + 1) * r, tuple_count(g, n) * r);
    let sign = |k: usize| if k % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
    for out in 0..tuple_count(g, n + 1) {
        let t = decode(g, n + 1, out);
        // g_1 f(g_2, ..., g_{n+1})
        let src = encode(g, &t[1..]);
        let a = m.action(t[0]);
        for i in 0..r {
            for j in 0..r {
                d[(out * r + i, src * r + j)] += &a[(i, j)];
            }
        }
        for k in 1..=n {
            let mut merged = t[..k - 1].to_vec();
            merged.push(g.mul(t[k - 1], t[k]));
            merged.extend_from_slice(&t[k + 1..]);
            let src = encode(g, &merged);
            for i in 0..r {
                d[(out * r + i, src * r + i)] += sign(k);
            }
        }
        let src = encode(g, &t[..n]);
        for i in 0..r {
            d[(out * r + i, src * r + i)] += sign(n + 1);
        }
    }
    d
}

/// `H^i(G, M)` with the data needed to name classes of cocycles.
#[derive(Clone, Debug, Serialize)]
pub struct Cohomology {
    pub degree: usize,
    pub group: AbelianGroup,
    /// Cocycle representatives of the standard generators.
    #[serde(skip)]
    generators: Vec<Vec<BigInt>>,
    #[serde(skip)]
    d_smith: Smith,
    #[serde(skip)]
    to_new: IntMatrix,
}

pub fn cohomology(g: &FiniteGroup, m: &IntegralGModule, i: usize) -> Result<Cohomology> {
    cohomology_with_cap(g, m, i, DEFAULT_RANK_CAP)
}

pub fn cohomology_with_cap(g: &FiniteGroup, m: &IntegralGModule, i: usize, cap: usize) -> Result<Cohomology> {
    if i > 2 {
        return Err(Error::InvalidParameter(format!("cohomology is computed in degrees 0..=2, not {i}")));
    }
    let top = cochain_rank(g, m, i + 1);
    if top > cap {
        return Err(Error::RankOverflow { rank: top, cap });
    }
    let d = differential(g, m, i);
    let d_smith = Smith::compute_cols(&d);
    let n = d.cols();
    let kernel = d_smith.q.select_columns(d_smith.rank..n);
    let k = kernel.cols();
    // coordinates of the coboundaries in the kernel basis
    let x = if i == 0 {
        IntMatrix::zeros(k, 0)
    } else {
        let prev = differential(g, m, i - 1);
        d_smith.q_inv.select_rows(d_smith.rank..n).mul(&prev)
    };
    let (group, to_new, from_new) = presentation(&x, k);
    let gens = kernel.mul(&from_new);
    let generators = (0..gens.cols()).map(|j| gens.column(j)).collect();
    Ok(Cohomology { degree: i, group, generators, d_smith, to_new })
}

impl Cohomology {
    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// The class of a cocycle, reduced, on the standard generators.
    pub fn class_of(&self, cocycle: &[BigInt]) -> Result<Vec<BigInt>> {
        let n = self.d_smith.q_inv.rows();
        if cocycle.len() != n {
            return Err(Error::InvalidParameter(format!("cochain of length {} in a complex of rank {n}", cocycle.len())));
        }
        let c = self.d_smith.q_inv.apply(cocycle);
        if c[..self.d_smith.rank].iter().any(|v| !v.is_zero()) {
            return Err(Error::InvalidParameter("not a cocycle".into()));
        }
        Ok(self.group.reduce(&self.to_new.apply(&c[self.d_smith.rank..])))
    }

    /// A cocycle in the given class.
    pub fn representative(&self, class: &[BigInt]) -> Vec<BigInt> {
        let n = self.d_smith.q_inv.rows();
        let mut out = vec![BigInt::zero(); n];
        for (c, g) in class.iter().zip(&self.generators) {
            for (o, v) in out.iter_mut().zip(g) {
                *o += c * v;
            }
        }
        out
    }
}

/// Applies `f` to every value of a cochain.
pub fn push_cochain(f: &ModuleMap, cochain: &[BigInt]) -> Vec<BigInt> {
    let (r, s) = (f.source.rank(), f.target.rank());
    let blocks = if r == 0 { 0 } else { cochain.len() / r };
    let mut out = Vec::with_capacity(blocks * s);
    for b in 0..blocks {
        out.extend(f.matrix.apply(&cochain[b * r..(b + 1) * r]));
    }
    out
}

/// The matrix of `f_*: H^i(G, M) -> H^i(G, N)` on standard generators.
pub fn induced_map(f: &ModuleMap, source: &Cohomology, target: &Cohomology) -> Result<IntMatrix> {
    let cols = source
        .generators()
        .iter()
        .map(|z| target.class_of(&push_cochain(f, z)))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_columns(&cols, target.group.generators()))
}

/// `0 -> S -inc-> M -proj-> Q -> 0`.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub group: FiniteGroup,
    pub inc: ModuleMap,
    pub proj: ModuleMap,
    inc_smith: Smith,
    proj_smith: Smith,
}

impl ShortExactSequence {
    /// Checks equivariance and exactness at all three spots.
    pub fn new(group: FiniteGroup, inc: ModuleMap, proj: ModuleMap) -> Result<Self> {
        let not_exact = |m: &str| Err(Error::NotExact(m.into()));
        inc.check_equivariant()?;
        proj.check_equivariant()?;
        if inc.target != proj.source {
            return not_exact("the middle modules differ");
        }
        let inc_smith = inc.matrix.snf();
        let proj_smith = proj.matrix.snf();
        if inc_smith.rank != inc.source.rank() {
            return not_exact("the inclusion is not injective");
        }
        if proj_smith.rank != proj.target.rank() || proj_smith.diagonal.iter().any(|d| d != &BigInt::from(1)) {
            return not_exact("the projection is not surjective");
        }
        if !proj.matrix.mul(&inc.matrix).is_zero() {
            return not_exact("proj . inc != 0");
        }
        let kernel = proj.matrix.kernel();
        if !super::abelian::lattice_contains(&inc.matrix, &kernel) {
            return not_exact("ker proj is larger than im inc");
        }
        Ok(ShortExactSequence { group, inc, proj, inc_smith, proj_smith })
    }

    pub fn sub(&self) -> &IntegralGModule {
        &self.inc.source
    }

    pub fn mid(&self) -> &IntegralGModule {
        &self.inc.target
    }

    pub fn quotient(&self) -> &IntegralGModule {
        &self.proj.target
    }

    /// `delta(z)` for an `i`-cocycle `z` of the quotient, as an
    /// `(i+1)`-cocycle of the submodule.
    pub fn connecting_cocycle(&self, i: usize, z: &[BigInt]) -> Result<Vec<BigInt>> {
        let (rq, rm, rs) = (self.quotient().rank(), self.mid().rank(), self.sub().rank());
        let blocks = tuple_count(&self.group, i);
        if z.len() != blocks * rq {
            return Err(Error::InvalidParameter("cochain has the wrong length".into()));
        }
        let mut lift = Vec::with_capacity(blocks * rm);
        for b in 0..blocks {
            let x = self
                .proj_smith
                .solve(&z[b * rq..(b + 1) * rq])
                .ok_or_else(|| Error::NotExact("value has no preimage".into()))?;
            lift.extend(x);
        }
        let dl = differential(&self.group, self.mid(), i).apply(&lift);
        let mut out = Vec::with_capacity(dl.len() / rm.max(1) * rs);
        for b in 0..tuple_count(&self.group, i + 1) {
            let y = self
                .inc_smith
                .solve(&dl[b * rm..(b + 1) * rm])
                .ok_or_else(|| Error::NotExact("coboundary of the lift leaves the submodule".into()))?;
            out.extend(y);
        }
        Ok(out)
    }
}

/// `delta: H^i(G, Q) -> H^{i+1}(G, S)` on standard generators.
#[derive(Clone, Debug, Serialize)]
pub struct ConnectingMap {
    pub source: Cohomology,
    pub target: Cohomology,
    pub matrix: IntMatrix,
}

pub fn connecting_map(ses: &ShortExactSequence, i: usize) -> Result<ConnectingMap> {
    if i > 1 {
        return Err(Error::InvalidParameter(format!("connecting maps are computed from degree 0 or 1, not {i}")));
    }
    let source = cohomology(&ses.group, ses.quotient(), i)?;
    let target = cohomology(&ses.group, ses.sub(), i + 1)?;
    let cols = source
        .generators()
        .iter()
        .map(|z| ses.connecting_cocycle(i, z).and_then(|c| target.class_of(&c)))
        .collect::<Result<Vec<_>>>()?;
    let matrix = IntMatrix::from_columns(&cols, target.group.generators());
    Ok(ConnectingMap { source, target, matrix })
}
