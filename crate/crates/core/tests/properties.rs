//! Property tests for the algebraic invariants of every module.

mod common;

use std::collections::BTreeSet;

use common::*;
use etale_brauer::arith::hensel::{hensel_roots_with_cap, verify_hensel_root};
use etale_brauer::arith::place::{Place, Prime};
use etale_brauer::arith::primes::{factor, prime_divisors};
use etale_brauer::arith::rational::{int, Rational};
use etale_brauer::arith::{hilbert_symbol, square_class, Poly};
use etale_brauer::brauer::{
    invariant_sum_at_rational_point, obstruction_verdict, verify_obstruction_verdict, Conclusion, Invariant,
    QuaternionClass,
};
use etale_brauer::chatelet::local::{is_locally_solvable_with, verify_local_verdict, LocalOptions};
use etale_brauer::chatelet::{search_rational_points, ChateletSurface};
use etale_brauer::cohomology::abelian::{is_exact_at, is_injective};
use etale_brauer::cohomology::cochain::induced_map;
use etale_brauer::cohomology::{
    cohomology, connecting_map, key_diagram, two_extension_class, AbelianGroup, FiniteGroup, FourTermSequence,
    IntMatrix, IntegralGModule, ModuleMap, ShortExactSequence,
};
use etale_brauer::report::{self, Config, Request};
use etale_brauer::threefold::smooth::audit_forms;
use etale_brauer::threefold::{branch_locus, build_construction, BidegreeForm, Fiber, ProjPoint};
use etale_brauer::Error;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
const NON_SQUARES: [i64; 10] = [-1, -2, -3, -5, -6, -7, 2, 3, 5, 6];

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed),
        ..ProptestConfig::default()
    }
}

fn nonzero_rational(num: i64, den: i64) -> impl Strategy<Value = Rational> {
    ((-num..=num).prop_filter("nonzero", |n| *n != 0), 1..=den).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn places_for(xs: &[&Rational]) -> Vec<Place> {
    let mut out: BTreeSet<Place> = PRIMES.iter().map(|&p| Place::prime(p).unwrap()).collect();
    out.insert(Place::Real);
    for x in xs {
        for n in [x.numer(), x.denom()] {
            for p in prime_divisors(n) {
                out.insert(Place::Finite(Prime::new(p).unwrap()));
            }
        }
    }
    out.into_iter().collect()
}

fn quartic(range: i64) -> impl Strategy<Value = Vec<i64>> {
    (prop::collection::vec(-range..=range, 4), (-range..=range).prop_filter("degree 4", |c| *c != 0))
        .prop_map(|(mut v, lead)| {
            v.push(lead);
            v
        })
}

fn surface() -> impl Strategy<Value = ChateletSurface> {
    (prop::sample::select(NON_SQUARES.to_vec()), quartic(10))
        .prop_filter_map("valid surface", |(a, cs)| ChateletSurface::new(int(a), poly(&cs)).ok())
}

fn local(s: &ChateletSurface, v: &Place, force_search: bool) -> bool {
    let opts = LocalOptions { force_search, ..LocalOptions::default() };
    is_locally_solvable_with(s, v, &opts).unwrap().solvable
}

// arith

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn hilbert_symmetry(a in nonzero_rational(10_000, 200), b in nonzero_rational(10_000, 200)) {
        for v in places_for(&[&a, &b]) {
            prop_assert_eq!(hilbert_symbol(&a, &b, &v).unwrap(), hilbert_symbol(&b, &a, &v).unwrap(), "at {}", v);
        }
    }

    #[test]
    fn hilbert_bimultiplicative(
        a in nonzero_rational(2_000, 50),
        a2 in nonzero_rational(2_000, 50),
        b in nonzero_rational(2_000, 50),
    ) {
        let prod = &a * &a2;
        for v in places_for(&[&a, &a2, &b]) {
            let lhs = hilbert_symbol(&prod, &b, &v).unwrap();
            let rhs = hilbert_symbol(&a, &b, &v).unwrap() * hilbert_symbol(&a2, &b, &v).unwrap();
            prop_assert_eq!(lhs, rhs, "({} * {}, {}) at {}", a, a2, b, v);
        }
    }

    #[test]
    fn hilbert_norm_relations(a in nonzero_rational(10_000, 200)) {
        let one_minus = Rational::one() - &a;
        for v in places_for(&[&a, &one_minus]) {
            prop_assert_eq!(hilbert_symbol(&a, &-a.clone(), &v).unwrap(), 1, "(a, -a) at {}", v);
            if !one_minus.is_zero() {
                prop_assert_eq!(hilbert_symbol(&a, &one_minus, &v).unwrap(), 1, "(a, 1 - a) at {}", v);
            }
        }
    }

    #[test]
    fn hilbert_depends_on_square_classes(
        a in nonzero_rational(5_000, 100),
        b in nonzero_rational(5_000, 100),
        t in nonzero_rational(300, 300),
    ) {
        let at2 = &a * &t * &t;
        for v in places_for(&[&a, &b, &t]) {
            prop_assert_eq!(square_class(&a, &v).unwrap(), square_class(&at2, &v).unwrap(), "at {}", v);
            prop_assert_eq!(hilbert_symbol(&at2, &b, &v).unwrap(), hilbert_symbol(&a, &b, &v).unwrap(), "at {}", v);
        }
    }

    #[test]
    fn hensel_roots_are_roots_mod_p_k(cs in quartic(20), pi in 0..PRIMES.len(), k in 1u32..=4) {
        let f = poly(&cs);
        prop_assume!(f.is_separable());
        let p = PRIMES[pi];
        let prime = Prime::new(p).unwrap();
        let naive = naive_roots(&int_coeffs(&f), p, k);
        let roots = hensel_roots_with_cap(&f, &prime, k, 40).unwrap();
        for h in &roots {
            prop_assert!(verify_hensel_root(&f, &prime, h));
            prop_assert!(naive.contains(&i128::try_from(h.residue.clone()).unwrap()));
        }
        let disc = f.discriminant();
        let lead = BigInt::from(cs[4]);
        let p_big = BigInt::from(p);
        if !disc.is_zero() && !(disc.numer() % &p_big).is_zero() && !(lead % &p_big).is_zero() {
            prop_assert_eq!(roots.len(), naive.len(), "{} at {}", f, p);
        }
    }
}

// chatelet

proptest! {
    #![proptest_config(cfg(24))]

    #[test]
    fn local_certificates_reverify(s in surface(), force in any::<bool>()) {
        let mut places: Vec<Place> = PRIMES.iter().map(|&p| Place::prime(p).unwrap()).collect();
        places.push(Place::Real);
        for v in places {
            let opts = LocalOptions { force_search: force, ..LocalOptions::default() };
            let verdict = is_locally_solvable_with(&s, &v, &opts).unwrap();
            prop_assert!(verify_local_verdict(&s, &verdict).is_ok(), "{} at {}", s, v);
        }
    }

    #[test]
    fn disc_search_confirms_good_reduction(s in surface()) {
        let bad = s.bad_places();
        let good: Vec<Place> = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31]
            .iter()
            .map(|&p| Place::prime(p).unwrap())
            .filter(|v| !bad.contains(v))
            .take(5)
            .collect();
        for v in good {
            prop_assert!(local(&s, &v, true), "{} at {}", s, v);
        }
    }

    #[test]
    fn local_solvability_is_invariant_under_coordinate_changes(
        s in surface(),
        shift in -3i64..=3,
        c in 1i64..=6,
        t in 1i64..=4,
    ) {
        let mut variants = vec![];
        variants.extend(ChateletSurface::new(s.a().clone(), s.poly().shift(&int(shift))).ok());
        variants.extend(ChateletSurface::new(s.a() * int(t * t), s.poly().scale(&int(c * c))).ok());
        variants.extend(ChateletSurface::new(s.a().clone(), s.poly().reversed(4)).ok());
        let mut places: Vec<Place> = PRIMES.iter().map(|&p| Place::prime(p).unwrap()).collect();
        places.push(Place::Real);
        for v in &places {
            let want = local(&s, v, false);
            for w in &variants {
                prop_assert_eq!(local(w, v, false), want, "{} vs {} at {}", s, w, v);
            }
        }
    }
}

// brauer

fn class() -> impl Strategy<Value = QuaternionClass> {
    let quad = (prop::collection::vec(-6i64..=6, 2), (-3i64..=3).prop_filter("quadratic", |c| *c != 0)).prop_map(
        |(mut v, lead)| {
            v.push(lead);
            poly(&v)
        },
    );
    (prop::sample::select(NON_SQUARES.to_vec()), quad.clone(), quad)
        .prop_filter_map("valid class", |(a, p1, p2)| QuaternionClass::from_factors(int(a), p1, p2).ok())
}

fn flipped(xs: &BTreeSet<Invariant>) -> BTreeSet<Invariant> {
    xs.iter().map(|x| x.add(Invariant::Half)).collect()
}

proptest! {
    #![proptest_config(cfg(16))]

    #[test]
    fn swapping_factors_keeps_the_conclusion(c in class()) {
        let (v, w) = (obstruction_verdict(&c), obstruction_verdict(&c.swapped()));
        match (v, w) {
            (Ok(v), Ok(w)) => {
                prop_assert!(verify_obstruction_verdict(&v).is_ok());
                prop_assert!(verify_obstruction_verdict(&w).is_ok());
                prop_assert_eq!(v.conclusion, w.conclusion);
                prop_assert_eq!(v.sets.len(), w.sets.len());
                for (x, y) in v.sets.iter().zip(&w.sets) {
                    prop_assert_eq!(&x.place, &y.place);
                    prop_assert!(!x.values.is_empty() && x.values.len() <= 2);
                    prop_assert!(x.values == y.values || flipped(&x.values) == y.values, "at {}", x.place);
                }
            }
            (Err(Error::NotEverywhereLocallySolvable(p)), Err(Error::NotEverywhereLocallySolvable(q))) => {
                prop_assert_eq!(p, q);
            }
            (v, w) => prop_assert!(false, "{:?} vs {:?}", v.map(|x| x.conclusion), w.map(|x| x.conclusion)),
        }
    }

    #[test]
    fn verdicts_agree_with_point_search(c in class()) {
        let Ok(verdict) = obstruction_verdict(&c) else { return Ok(()) };
        let points = search_rational_points(&c.surface(), 30);
        if verdict.conclusion == Conclusion::EmptyBrauerSet {
            prop_assert!(points.is_empty(), "{} has points", c.surface());
        }
        for p in &points {
            prop_assert_eq!(invariant_sum_at_rational_point(&c, &p.x).unwrap(), Invariant::Zero, "x = {}", p.x);
        }
    }
}

// threefold

fn construction() -> impl Strategy<Value = BidegreeForm> {
    (prop::sample::select(NON_SQUARES.to_vec()), quartic(5), quartic(5))
        .prop_filter_map("valid construction", |(a, p, q)| build_construction(int(a), poly(&p), poly(&q)).ok())
}

fn point() -> impl Strategy<Value = ProjPoint> {
    (-6i64..=6, -6i64..=6).prop_filter_map("nonzero", |(u, v)| ProjPoint::new(u, v).ok())
}

fn audit_kind(p_inf: &Poly, p_0: &Poly) -> String {
    match audit_forms(p_inf, p_0) {
        Ok(_) => "smooth".into(),
        Err(Error::SmoothnessFails { .. }) => "singular".into(),
        Err(e) => format!("error: {e}"),
    }
}

fn negate_x(p: &Poly) -> Poly {
    Poly::new(p.coeffs().iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() }).collect())
}

proptest! {
    #![proptest_config(cfg(24))]

    #[test]
    fn fiber_at_infinity_is_the_input_surface(b in construction()) {
        let want = ChateletSurface::new(b.a().clone(), b.p_inf().clone()).unwrap();
        prop_assert_eq!(b.fiber(&ProjPoint::infinity()), Fiber::Surface { surface: want });
    }

    #[test]
    fn branch_locus_matches_degenerate_fibers(b in construction(), pts in prop::collection::vec(point(), 25)) {
        let locus = branch_locus(&b);
        let roots = locus.rational_roots.iter().map(|r| r.point.clone());
        for t in pts.into_iter().chain(roots) {
            let degenerate = matches!(b.fiber(&t), Fiber::Degenerate { .. });
            prop_assert_eq!(locus.contains(&t), degenerate, "at {}", t);
        }
    }

    #[test]
    fn swapping_u_v_and_the_forms_relabels_everything(b in construction(), pts in prop::collection::vec(point(), 8)) {
        let s = b.swapped();
        let (lb, ls) = (branch_locus(&b), branch_locus(&s));
        prop_assert_eq!(lb.distinct_roots, ls.distinct_roots);
        prop_assert_eq!(lb.distinct_real_roots, ls.distinct_real_roots);
        for t in pts {
            let t2 = ProjPoint::new(t.v().clone(), t.u().clone()).unwrap();
            prop_assert_eq!(b.fiber(&t), s.fiber(&t2), "at {}", t);
            prop_assert_eq!(lb.contains(&t), ls.contains(&t2));
        }
        prop_assert_eq!(audit_kind(b.p_inf(), b.p_0()), audit_kind(s.p_inf(), s.p_0()));
    }

    #[test]
    fn audit_is_invariant_under_unimodular_substitutions(
        p_inf in quartic(4),
        p_0 in quartic(4),
        root in -2i64..=2,
        singular in any::<bool>(),
        shift in -3i64..=3,
        negate in any::<bool>(),
        reverse in any::<bool>(),
    ) {
        let p_inf = poly(&p_inf);
        let p_0 = if singular {
            // a double root at x = root
            &poly(&[-root, 1]).pow(2) * &poly(&p_0[..3])
        } else {
            poly(&p_0)
        };
        prop_assume!(p_0.degree() == Some(4));
        let subst = |p: &Poly| {
            let mut q = p.shift(&int(shift));
            if negate {
                q = negate_x(&q);
            }
            if reverse {
                q = q.reversed(4);
            }
            q
        };
        prop_assert_eq!(audit_kind(&p_inf, &p_0), audit_kind(&subst(&p_inf), &subst(&p_0)));
    }

    #[test]
    fn proj_points_normalize(u in -50i64..=50, v in -50i64..=50, k in (-9i64..=9).prop_filter("nonzero", |k| *k != 0)) {
        prop_assume!(u != 0 || v != 0);
        let p = ProjPoint::new(u, v).unwrap();
        prop_assert_eq!(&ProjPoint::new(k * u, k * v).unwrap(), &p);
        prop_assert_eq!(&p.to_string().parse::<ProjPoint>().unwrap(), &p);
        prop_assert!(num_integer::Integer::gcd(p.u(), p.v()).is_one());
        prop_assert!(p.u().is_positive() || (p.u().is_zero() && p.v().is_positive()));
    }
}

// cohomology

/// Products of elementary row operations on the identity.
fn unimodular(n: usize, ops: &[(usize, usize, i64, bool)]) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for &(i, j, c, neg) in ops {
        let (i, j) = (i % n, j % n);
        if i != j {
            for k in 0..n {
                let add = &m[(j, k)] * BigInt::from(c);
                m[(i, k)] += add;
            }
        } else if neg {
            for k in 0..n {
                m[(i, k)] = -m[(i, k)].clone();
            }
        }
    }
    m
}

fn ops() -> impl Strategy<Value = Vec<(usize, usize, i64, bool)>> {
    prop::collection::vec((0usize..8, 0usize..8, -2i64..=2, any::<bool>()), 0..6)
}

fn groups() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::cyclic(2).unwrap(),
        FiniteGroup::cyclic(3).unwrap(),
        FiniteGroup::cyclic(4).unwrap(),
        FiniteGroup::symmetric(3).unwrap(),
    ]
}

fn index_two(g: &FiniteGroup) -> Vec<usize> {
    // the squares generate the index-2 subgroup in Z/2, Z/4 and S3
    let mut h: BTreeSet<usize> = g.elements().map(|x| g.mul(x, x)).collect();
    loop {
        let next: BTreeSet<usize> = h.iter().flat_map(|&x| h.iter().map(move |&y| (x, y))).map(|(x, y)| g.mul(x, y)).collect();
        if next == h {
            break;
        }
        h = next;
    }
    h.into_iter().collect()
}

/// A small menu of modules over `g`.
fn module_menu(g: &FiniteGroup) -> Vec<IntegralGModule> {
    let mut out = vec![IntegralGModule::trivial(g, 1), IntegralGModule::induced(g, &[g.identity()]).unwrap()];
    if g.order() % 2 == 0 {
        let h = index_two(g);
        out.push(IntegralGModule::sign(g, &h).unwrap());
        out.push(IntegralGModule::induced(g, &h).unwrap());
    }
    out
}

/// Elementary divisors and free rank: an isomorphism invariant that turns
/// direct sums into unions.
fn elementary(a: &AbelianGroup) -> (usize, Vec<BigUint>) {
    let mut out = vec![];
    for t in &a.torsion {
        for (p, e) in factor(t.magnitude()) {
            out.push(p.pow(e));
        }
    }
    out.sort();
    (a.rank, out)
}

/// `0 -> I_G -> Z[G] -> Z -> 0`.
fn augmentation(g: &FiniteGroup) -> ShortExactSequence {
    let n = g.order();
    let zg = IntegralGModule::induced(g, &[g.identity()]).unwrap();
    let mut basis = IntMatrix::zeros(n, n - 1);
    for j in 0..n - 1 {
        basis[(0, j)] = BigInt::from(-1);
        basis[(j + 1, j)] = BigInt::one();
    }
    let action = g
        .elements()
        .map(|x| {
            let moved = zg.action(x).mul(&basis);
            let cols: Vec<Vec<BigInt>> = (0..n - 1).map(|j| basis.solve(&moved.column(j)).unwrap()).collect();
            IntMatrix::from_columns(&cols, n - 1)
        })
        .collect();
    let ig = IntegralGModule::new(g, n - 1, action).unwrap();
    let z = IntegralGModule::trivial(g, 1);
    let ones = IntMatrix::from_rows(vec![vec![BigInt::one(); n]], n).unwrap();
    ShortExactSequence::new(
        g.clone(),
        ModuleMap::new(ig, zg.clone(), basis).unwrap(),
        ModuleMap::new(zg, z, ones).unwrap(),
    )
    .unwrap()
}

/// `0 -> Z -diag-> Ind_H^G Z -> sign -> 0` for `H` of index 2.
fn diagonal_into_induced(g: &FiniteGroup) -> ShortExactSequence {
    let h = index_two(g);
    let ind = IntegralGModule::induced(g, &h).unwrap();
    let sign = IntegralGModule::sign(g, &h).unwrap();
    let z = IntegralGModule::trivial(g, 1);
    // the coset of the identity is listed first
    ShortExactSequence::new(
        g.clone(),
        ModuleMap::new(z, ind.clone(), IntMatrix::from_i64(&[&[1], &[1]])).unwrap(),
        ModuleMap::new(ind, sign, IntMatrix::from_i64(&[&[1, -1]])).unwrap(),
    )
    .unwrap()
}

fn sequences() -> Vec<ShortExactSequence> {
    let mut out = vec![];
    for g in groups() {
        out.push(augmentation(&g));
        if g.order() % 2 == 0 {
            out.push(diagonal_into_induced(&g));
        }
    }
    out
}

fn transport_middle(s: &ShortExactSequence, u: &IntMatrix) -> ShortExactSequence {
    let mid = s.mid().transport(u).unwrap();
    let inc = ModuleMap::new(s.sub().clone(), mid.clone(), u.mul(&s.inc.matrix)).unwrap();
    let proj = ModuleMap::new(mid, s.quotient().clone(), s.proj.matrix.mul(&u.inverse().unwrap())).unwrap();
    ShortExactSequence::new(s.group.clone(), inc, proj).unwrap()
}

proptest! {
    #![proptest_config(cfg(24))]

    #[test]
    fn cohomology_of_direct_sums(gi in 0usize..4, i in 0usize..4, j in 0usize..4, u in ops(), w in ops()) {
        let g = &groups()[gi];
        let menu = module_menu(g);
        let m = &menu[i % menu.len()];
        let n = &menu[j % menu.len()];
        let m = m.transport(&unimodular(m.rank(), &u)).unwrap();
        let n = n.transport(&unimodular(n.rank(), &w)).unwrap();
        let sum = m.direct_sum(&n);
        for d in 0..=2 {
            let (r1, mut e1) = elementary(&cohomology(g, &m, d).unwrap().group);
            let (r2, e2) = elementary(&cohomology(g, &n, d).unwrap().group);
            e1.extend(e2);
            e1.sort();
            prop_assert_eq!(elementary(&cohomology(g, &sum, d).unwrap().group), (r1 + r2, e1), "H^{}", d);
        }
    }

    #[test]
    fn cohomology_is_invariant_under_change_of_basis(gi in 0usize..4, i in 0usize..4, u in ops()) {
        let g = &groups()[gi];
        let menu = module_menu(g);
        let m = &menu[i % menu.len()];
        let t = m.transport(&unimodular(m.rank(), &u)).unwrap();
        for d in 0..=2 {
            prop_assert_eq!(cohomology(g, m, d).unwrap().group, cohomology(g, &t, d).unwrap().group, "H^{}", d);
        }
    }

    #[test]
    fn long_exact_sequences_are_exact_through_degree_two(k in 0usize..16, u in ops()) {
        let all = sequences();
        let s = &all[k % all.len()];
        let s = transport_middle(s, &unimodular(s.mid().rank(), &u));
        let g = &s.group;
        let h = |m: &IntegralGModule, d| cohomology(g, m, d).unwrap();
        let (hs, hm, hq): (Vec<_>, Vec<_>, Vec<_>) =
            ((0..=2).map(|d| h(s.sub(), d)).collect(), (0..=2).map(|d| h(s.mid(), d)).collect(), (0..=2).map(|d| h(s.quotient(), d)).collect());
        // (map, its target) around the sequence, left to right
        let mut maps: Vec<(IntMatrix, AbelianGroup)> = vec![];
        for d in 0..=2 {
            maps.push((induced_map(&s.inc, &hs[d], &hm[d]).unwrap(), hm[d].group.clone()));
            maps.push((induced_map(&s.proj, &hm[d], &hq[d]).unwrap(), hq[d].group.clone()));
            if d < 2 {
                maps.push((connecting_map(&s, d).unwrap().matrix, hs[d + 1].group.clone()));
            }
        }
        prop_assert!(is_injective(&maps[0].0, &hs[0].group, &hm[0].group));
        for w in maps.windows(2) {
            let ((f, mid), (g2, tgt)) = (&w[0], &w[1]);
            prop_assert!(is_exact_at(f, g2, mid, tgt), "exactness fails at {}", mid);
        }
    }

    #[test]
    fn two_extension_class_survives_change_of_basis(row in 0usize..4, ua in ops(), ub in ops()) {
        let kd = key_diagram();
        let seq = match row {
            0 => kd.top.sequence(&kd.group).unwrap(),
            1 => kd.bottom.sequence(&kd.group).unwrap(),
            2 => kd.top.sequence(&kd.group).unwrap().with_summand(&IntegralGModule::trivial(&kd.group, 1)).unwrap(),
            _ => FourTermSequence::split_sequence(&kd.group, &IntegralGModule::sign(&kd.group, &kd.subgroup).unwrap()).unwrap(),
        };
        let moved = seq.transport(&unimodular(seq.a().rank(), &ua), &unimodular(seq.b().rank(), &ub)).unwrap();
        let (x, y) = (two_extension_class(&seq).unwrap(), two_extension_class(&moved).unwrap());
        prop_assert_eq!(x.nonzero, y.nonzero);
        prop_assert_eq!(&x.h2_z, &y.h2_z);
        prop_assert_eq!(&x.xi, &y.xi);
        prop_assert_eq!(&x.h1_c, &y.h1_c);
    }
}

// report

proptest! {
    #![proptest_config(cfg(16))]

    #[test]
    fn hilbert_reports_replay(a in nonzero_rational(1_000, 20), b in nonzero_rational(1_000, 20), pi in 0usize..7) {
        let place = if pi == 6 { Place::Real } else { Place::prime(PRIMES[pi]).unwrap() };
        let req = Request::Hilbert { a, b, place };
        let r = report::run(&req, &Config::default_for(&req)).unwrap();
        let mut v = r.to_value();
        v["timing"]["total_ms"] = 987_654.into();
        let out = report::verify_report(&v).unwrap();
        prop_assert_eq!(out.digest, r.digest.clone());
        prop_assert!(report::verify_str(&r.to_json_pretty()).is_ok());
    }

    #[test]
    fn local_reports_replay(s in surface()) {
        let req = Request::Local { surface: s, places: None };
        let r = report::run(&req, &Config::default_for(&req)).unwrap();
        prop_assert!(report::verify_str(&r.to_json_pretty()).is_ok());
    }
}
