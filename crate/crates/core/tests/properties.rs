use std::sync::Arc;

use proptest::prelude::*;

use rank2::algebra::form::{self, Lin2};
use rank2::algebra::{monomial_basis, PoincareSeries, Prime, VarList};
use rank2::catalog::{GroupModel, GroupSpec};
use rank2::gl2::{dickson, GL2Element};
use rank2::quillen::{Element, QuillenRing};
use rank2::report::{cmd_split, RunConfig};
use rank2::transfer::{out_idempotents, TransferEngine};

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![3u32, 5, 7])
}

fn engine(spec: &str, p: u32, cutoff: u32) -> TransferEngine {
    let m = GroupModel::build(&GroupSpec::parse(spec).unwrap(), Prime::new(p).unwrap()).unwrap();
    TransferEngine::new(Arc::new(QuillenRing::new(Arc::new(m), cutoff)))
}

fn random_element(e: &TransferEngine, degree: u32, seed: &[u32]) -> Element {
    let s = e.ring.slice(degree).unwrap();
    let coords: Vec<u32> = (0..s.dim()).map(|k| seed[k % seed.len()] % e.p().get()).collect();
    s.combine(e.p(), &coords)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_inverse_and_fermat(p in prime(), a in 1u32..1000) {
        let pr = Prime::new(p).unwrap();
        let a = a % p;
        prop_assume!(a != 0);
        prop_assert_eq!(pr.mul(a, pr.inv(a)), 1);
        prop_assert_eq!(pr.pow(a, (p - 1) as u64), 1);
    }

    #[test]
    fn free_series_counts_monomials(d1 in 1u32..5, d2 in 1u32..5, shift in 0u32..6) {
        let (g1, g2) = (2 * d1, 2 * d2);
        let s = PoincareSeries::free(&[g1, g2], 2 * shift, 1);
        let vars = VarList::new(&[("a", g1), ("b", g2)]);
        let e = s.expand(60);
        for deg in (0..=60u32).step_by(2) {
            let want = if deg < 2 * shift { 0 } else { monomial_basis(&vars, deg - 2 * shift).len() as i64 };
            prop_assert_eq!(e[deg as usize], want, "degree {}", deg);
        }
    }

    #[test]
    fn series_add_sub_round_trip(a in 1u32..4, b in 1u32..4, s in 0u32..5, c in -3i64..4) {
        let x = PoincareSeries::free(&[2 * a, 2 * b], 2 * s, 1);
        let y = PoincareSeries::free(&[2 * b], 2 * a, c);
        prop_assert!(x.add(&y).sub(&y).equals(&x));
        let ex: Vec<i64> = x.expand(40).iter().zip(y.expand(40)).map(|(u, v)| u + v).collect();
        prop_assert_eq!(x.add(&y).expand(40), ex);
    }

    #[test]
    fn linear_substitution_is_multiplicative(
        p in prime(),
        m in prop::array::uniform4(0i64..7),
        f in prop::collection::vec(0u32..7, 1..5),
        g in prop::collection::vec(0u32..7, 1..5),
    ) {
        let pr = Prime::new(p).unwrap();
        let l = Lin2::new(pr, m[0], m[1], m[2], m[3]);
        let f: Vec<u32> = f.iter().map(|x| x % p).collect();
        let g: Vec<u32> = g.iter().map(|x| x % p).collect();
        let lhs = form::substitute(pr, &form::mul(pr, &f, &g), l);
        let rhs = form::mul(pr, &form::substitute(pr, &f, l), &form::substitute(pr, &g, l));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dickson_invariant_under_random_gl2(p in prop::sample::select(vec![3u32, 5]), m in prop::array::uniform4(0i64..5)) {
        let pr = Prime::new(p).unwrap();
        let g = GL2Element::new(pr, m[0], m[1], m[2], m[3]);
        prop_assume!(g.is_ok());
        let g = g.unwrap();
        let (d1, d2) = dickson(pr);
        prop_assert_eq!(g.act_polynomial(&d1).unwrap(), d1);
        prop_assert_eq!(g.act_polynomial(&d2).unwrap(), d2);
    }

    #[test]
    fn group_spec_display_parses_back(i in 0usize..6) {
        let s = ["A", "M:1,2,1", "M:2,3,2", "Mns:1,3,2,2", "C:4", "G:5,2"][i];
        let spec = GroupSpec::parse(s).unwrap();
        prop_assert_eq!(GroupSpec::parse(&spec.to_string()).unwrap(), spec);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn class_transfer_is_linear(
        class in 0usize..4,
        n in 1usize..7,
        f in prop::collection::vec(0u32..3, 7),
        g in prop::collection::vec(0u32..3, 7),
    ) {
        let e = engine("C:3", 3, 36);
        let p = e.p();
        let (f, g) = (&f[..=n], &g[..=n]);
        let sum: Vec<u32> = f.iter().zip(g).map(|(a, b)| p.add(*a, *b)).collect();
        let tf = e.transfer_from_class(class, f).unwrap();
        let tg = e.transfer_from_class(class, g).unwrap();
        prop_assert_eq!(e.transfer_from_class(class, &sum).unwrap(), tf.add(p, &tg).unwrap());
        prop_assert!(e.ring.contains(&tf).unwrap());
    }

    #[test]
    fn idempotents_are_idempotent_on_random_elements(
        spec in prop::sample::select(vec!["C:3", "M:1,2,1", "A"]),
        degree in (1u32..18).prop_map(|d| 2 * d),
        seed in prop::collection::vec(0u32..3, 1..8),
    ) {
        let e = engine(spec, 3, 36);
        let x = random_element(&e, degree, &seed);
        let fam = out_idempotents(e.model()).unwrap();
        let mut total = Element::zero(x.ncomp(), degree);
        for id in &fam {
            let y = e.apply(&id.op, &x).unwrap();
            prop_assert_eq!(e.apply(&id.op, &y).unwrap(), y.clone());
            total = total.add(e.p(), &y).unwrap();
        }
        prop_assert_eq!(total, x);
    }

    #[test]
    fn reports_are_deterministic(i in 0usize..4) {
        let (p, g) = [(3u32, "C:3"), (3, "M:2,3,2"), (5, "G:4,1"), (3, "A")][i];
        let c = RunConfig::new("split", p, g, None, 0, None).unwrap();
        prop_assert_eq!(cmd_split(&c).unwrap().to_json(), cmd_split(&c).unwrap().to_json());
    }

    #[test]
    fn config_rejects_bad_cutoffs(c in 1u32..20_000) {
        let r = RunConfig::new("split", 3, "C:3", Some(c), 0, None);
        prop_assert_eq!(r.is_ok(), c % 2 == 0 && c <= 10_000);
    }
}
