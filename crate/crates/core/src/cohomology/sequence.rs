//! Four-term sequences `0 -> Z -> A -phi-> B -> Z -> 0`, their 2-extension
//! class `xi = delta_2(delta_1(1))` in `H^2(G, Z)`, and the two lemmas
//! about it.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::abelian::{is_injective, is_surjective, lattice_contains, AbelianGroup};
use super::cochain::{cohomology, connecting_map, induced_map, ShortExactSequence};
use super::group::FiniteGroup;
use super::matrix::{gcd_all, IntMatrix};
use super::module::{IntegralGModule, ModuleMap};
use crate::arith::rational::{serde_bigint, serde_bigint_vec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FourTermSequence {
    #[serde(skip)]
    pub group: FiniteGroup,
    pub f1: ModuleMap,
    pub phi: ModuleMap,
    pub f3: ModuleMap,
}

impl FourTermSequence {
    /// Checks equivariance of the three maps and exactness at all four
    /// spots; the outer terms are trivial copies of `Z`.
    pub fn new(group: FiniteGroup, a: IntegralGModule, b: IntegralGModule, f1: IntMatrix, phi: IntMatrix, f3: IntMatrix) -> Result<Self> {
        let z = IntegralGModule::trivial(&group, 1);
        let f1 = ModuleMap::new(z.clone(), a.clone(), f1)?;
        let phi = ModuleMap::new(a, b.clone(), phi)?;
        let f3 = ModuleMap::new(b, z, f3)?;
        let s = FourTermSequence { group, f1, phi, f3 };
        s.check()?;
        Ok(s)
    }

    pub fn a(&self) -> &IntegralGModule {
        &self.phi.source
    }

    pub fn b(&self) -> &IntegralGModule {
        &self.phi.target
    }

    fn check(&self) -> Result<()> {
        for (name, m) in [("Z -> A", &self.f1), ("A -> B", &self.phi), ("B -> Z", &self.f3)] {
            m.check_equivariant().map_err(|e| Error::InvalidMap(format!("{name}: {e}")))?;
        }
        let not_exact = |spot: &str, why: &str| Err(Error::NotExact(format!("at {spot}: {why}")));
        if self.f1.matrix.is_zero() {
            return not_exact("Z (left)", "Z -> A is not injective");
        }
        if !self.phi.matrix.mul(&self.f1.matrix).is_zero() {
            return not_exact("A", "phi . f1 != 0");
        }
        if !lattice_contains(&self.f1.matrix, &self.phi.matrix.kernel()) {
            return not_exact("A", "ker phi is larger than im f1");
        }
        if !self.f3.matrix.mul(&self.phi.matrix).is_zero() {
            return not_exact("B", "f3 . phi != 0");
        }
        if !lattice_contains(&self.phi.matrix, &self.f3.matrix.kernel()) {
            return not_exact("B", "ker f3 is larger than im phi");
        }
        if !gcd_all(self.f3.matrix.row(0)).is_one() {
            return not_exact("Z (right)", "B -> Z is not surjective");
        }
        Ok(())
    }

    /// `0 -> Z -> A -> C -> 0` and `0 -> C -> B -> Z -> 0` with `C = phi(A)`.
    pub fn split(&self) -> Result<(ShortExactSequence, ShortExactSequence)> {
        let s = self.phi.matrix.snf();
        let b = self.b();
        let mut basis = s.p_inv.select_columns(0..s.rank);
        for (j, d) in s.diagonal.iter().enumerate() {
            for i in 0..basis.rows() {
                basis[(i, j)] *= d;
            }
        }
        let bs = basis.snf();
        let coords = |v: &[BigInt]| bs.solve(v).ok_or_else(|| Error::NotExact("vector outside phi(A)".into()));
        let action = self
            .group
            .elements()
            .map(|g| {
                let moved = b.action(g).mul(&basis);
                let cols = (0..moved.cols()).map(|j| coords(&moved.column(j))).collect::<Result<Vec<_>>>()?;
                Ok(IntMatrix::from_columns(&cols, s.rank))
            })
            .collect::<Result<Vec<_>>>()?;
        let c = IntegralGModule::new(&self.group, s.rank, action)?;
        let onto: Vec<Vec<BigInt>> =
            (0..self.phi.matrix.cols()).map(|j| coords(&self.phi.matrix.column(j))).collect::<Result<_>>()?;
        let onto = ModuleMap::new(self.a().clone(), c.clone(), IntMatrix::from_columns(&onto, s.rank))?;
        let into = ModuleMap::new(c, b.clone(), basis)?;
        let first = ShortExactSequence::new(self.group.clone(), self.f1.clone(), onto)?;
        let second = ShortExactSequence::new(self.group.clone(), into, self.f3.clone())?;
        Ok((first, second))
    }

    /// The same sequence after the changes of basis `u_a` on `A` and `u_b`
    /// on `B`.
    pub fn transport(&self, u_a: &IntMatrix, u_b: &IntMatrix) -> Result<FourTermSequence> {
        let (ua_inv, ub_inv) = (u_a.inverse()?, u_b.inverse()?);
        FourTermSequence::new(
            self.group.clone(),
            self.a().transport(u_a)?,
            self.b().transport(u_b)?,
            u_a.mul(&self.f1.matrix),
            u_b.mul(&self.phi.matrix).mul(&ua_inv),
            self.f3.matrix.mul(&ub_inv),
        )
    }

    /// `Z -> A + M -> B + M -> Z`, with `M` mapped identically.
    pub fn with_summand(&self, m: &IntegralGModule) -> Result<FourTermSequence> {
        let r = m.rank();
        FourTermSequence::new(
            self.group.clone(),
            self.a().direct_sum(m),
            self.b().direct_sum(m),
            self.f1.matrix.vconcat(&IntMatrix::zeros(r, 1)),
            self.phi.matrix.block_diag(&IntMatrix::identity(r)),
            self.f3.matrix.hconcat(&IntMatrix::zeros(1, r)),
        )
    }

    /// `Z -> Z + C -> C + Z -> Z` with the obvious maps.
    pub fn split_sequence(group: &FiniteGroup, c: &IntegralGModule) -> Result<FourTermSequence> {
        let z = IntegralGModule::trivial(group, 1);
        let r = c.rank();
        let mut phi = IntMatrix::zeros(r + 1, r + 1);
        for i in 0..r {
            phi[(i, i + 1)] = BigInt::one();
        }
        let mut f1 = IntMatrix::zeros(r + 1, 1);
        f1[(0, 0)] = BigInt::one();
        let mut f3 = IntMatrix::zeros(1, r + 1);
        f3[(0, r)] = BigInt::one();
        FourTermSequence::new(group.clone(), z.direct_sum(c), c.direct_sum(&z), f1, phi, f3)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoExtensionClass {
    pub h1_c: AbelianGroup,
    /// `delta_1(1)` in `H^1(G, C)`.
    #[serde(with = "serde_bigint_vec")]
    pub delta1: Vec<BigInt>,
    pub h2_z: AbelianGroup,
    #[serde(with = "serde_bigint_vec")]
    pub xi: Vec<BigInt>,
    pub nonzero: bool,
}

pub fn two_extension_class(s: &FourTermSequence) -> Result<TwoExtensionClass> {
    let (first, second) = s.split()?;
    let one = [BigInt::one()];
    let c1 = second.connecting_cocycle(0, &one)?;
    let h1_c = cohomology(&s.group, second.sub(), 1)?;
    let delta1 = h1_c.class_of(&c1)?;
    let c2 = first.connecting_cocycle(1, &c1)?;
    let h2 = cohomology(&s.group, first.sub(), 2)?;
    let xi = h2.class_of(&c2)?;
    let nonzero = !h2.group.is_zero_element(&xi);
    Ok(TwoExtensionClass { h1_c: h1_c.group, delta1, h2_z: h2.group, xi, nonzero })
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaA1Report {
    /// Positive generator of the image of `H^0(G, B) -> Z`.
    #[serde(with = "serde_bigint")]
    pub h0_image_generator: BigInt,
    pub h0_map_not_surjective: bool,
    pub h1_a: AbelianGroup,
    pub h1_a_vanishes: bool,
    pub hypotheses_hold: bool,
    pub xi: TwoExtensionClass,
    /// The hypotheses hold and `xi != 0` was confirmed.
    pub conclusion_checked: bool,
}

pub fn verify_lemma_a1(s: &FourTermSequence) -> Result<LemmaA1Report> {
    let fixed = s.b().fixed_lattice();
    let image = s.f3.matrix.mul(&fixed);
    let h0_image_generator = gcd_all(image.row(0));
    let h0_map_not_surjective = !h0_image_generator.is_one();
    let h1_a = cohomology(&s.group, s.a(), 1)?.group;
    let h1_a_vanishes = h1_a.is_trivial();
    let hypotheses_hold = h0_map_not_surjective && h1_a_vanishes;
    let xi = two_extension_class(s)?;
    if hypotheses_hold && !xi.nonzero {
        return Err(Error::AssertionFailed("both hypotheses hold but xi = 0".into()));
    }
    Ok(LemmaA1Report {
        h0_image_generator,
        h0_map_not_surjective,
        h1_a,
        h1_a_vanishes,
        hypotheses_hold,
        conclusion_checked: hypotheses_hold,
        xi,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaA2Report {
    pub subgroup: Vec<usize>,
    /// An `H`-equivariant retraction `A -> Z` of `Z -> A`, as a row.
    #[serde(with = "serde_bigint_vec")]
    pub retraction: Vec<BigInt>,
    /// An `H`-equivariant section `Z -> B` of `B -> Z`, as a column.
    #[serde(with = "serde_bigint_vec")]
    pub section: Vec<BigInt>,
    pub xi: TwoExtensionClass,
    pub h1_a: AbelianGroup,
    pub h1_b: AbelianGroup,
    /// `phi_*: H^1(G, A) -> H^1(G, B)` on standard generators.
    pub map_matrix: IntMatrix,
    pub iso_checked: bool,
    /// `#J`, the order of `delta_1(1)` in `H^1(G, C)`.
    #[serde(with = "serde_bigint")]
    pub j_order: BigInt,
    /// `#I`, the order of the image of `delta_2` in `H^2(G, Z)`.
    #[serde(with = "serde_bigint")]
    pub i_order: BigInt,
    /// `#H^1(G, C) = #H^1(G, A) * #J`.
    pub h1_c_splits: bool,
    /// `#I = #J = 2`, the splitting of `H^1(G, C)`, and the isomorphism
    /// all agree.
    pub cross_check: bool,
}

fn invariant_solution(rows: Vec<IntMatrix>, last: IntMatrix) -> Option<Vec<BigInt>> {
    let n = last.cols();
    let mut m = IntMatrix::zeros(0, n);
    for r in rows {
        m = m.vconcat(&r);
    }
    let mut rhs = vec![BigInt::zero(); m.rows()];
    m = m.vconcat(&last);
    rhs.push(BigInt::one());
    m.solve(&rhs)
}

pub fn verify_lemma_a2(s: &FourTermSequence, h: &[usize]) -> Result<LemmaA2Report> {
    s.group.subgroup(h)?;
    if 2 * h.len() != s.group.order() {
        return Err(Error::HypothesisFails(format!("H has index {} / {}, not 2", s.group.order(), h.len())));
    }
    let xi = two_extension_class(s)?;
    if !xi.nonzero {
        return Err(Error::HypothesisFails("xi = 0".into()));
    }
    let (ra, rb) = (s.a().rank(), s.b().rank());
    let retraction = invariant_solution(
        h.iter().map(|&x| s.a().action(x).transpose().sub(&IntMatrix::identity(ra))).collect(),
        s.f1.matrix.transpose(),
    )
    .ok_or_else(|| Error::HypothesisFails("Z -> A does not split over H".into()))?;
    let section = invariant_solution(
        h.iter().map(|&x| s.b().action(x).sub(&IntMatrix::identity(rb))).collect(),
        s.f3.matrix.clone(),
    )
    .ok_or_else(|| Error::HypothesisFails("B -> Z does not split over H".into()))?;

    let h1a = cohomology(&s.group, s.a(), 1)?;
    let h1b = cohomology(&s.group, s.b(), 1)?;
    let map_matrix = induced_map(&s.phi, &h1a, &h1b)?;
    let iso_checked = is_injective(&map_matrix, &h1a.group, &h1b.group) && is_surjective(&map_matrix, &h1b.group);

    let (first, _) = s.split()?;
    let delta2 = connecting_map(&first, 1)?;
    let j_order = delta2.source.group.element_order(&xi.delta1).unwrap_or_else(BigInt::zero);
    let i_order = delta2.target.group.subgroup_order(&delta2.matrix).unwrap_or_else(BigInt::zero);
    let h1_c_splits = match (delta2.source.group.order(), h1a.group.order()) {
        (Some(c), Some(a)) => c == a * &j_order,
        _ => false,
    };
    let two = BigInt::from(2);
    let cross_check = i_order == two && j_order == two && h1_c_splits && iso_checked;
    Ok(LemmaA2Report {
        subgroup: h.to_vec(),
        retraction,
        section,
        xi,
        h1_a: h1a.group,
        h1_b: h1b.group,
        map_matrix,
        iso_checked,
        j_order,
        i_order,
        h1_c_splits,
        cross_check,
    })
}
