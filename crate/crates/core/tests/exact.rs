use std::collections::BTreeMap;

use jsbo::exact::*;
use proptest::prelude::*;

fn nu() -> Var {
    default_param()
}

fn x() -> Var {
    Var::new("x", 1, 1)
}

fn y() -> Var {
    Var::new("y", 1, 1)
}

fn px() -> MultiPoly {
    MultiPoly::var(x())
}

fn py() -> MultiPoly {
    MultiPoly::var(y())
}

fn lin(shift: Rational) -> ParamScalar {
    ParamScalar::linear(nu(), shift)
}

#[test]
fn rational_helpers() {
    assert_eq!(rat(6, -4), rat(-3, 2));
    assert_eq!(fmt_rat(&rat(-3, 2)), "-3/2");
    assert_eq!(fmt_rat(&int(5)), "5");
    assert_eq!(parse_rat("-3/2").unwrap(), rat(-3, 2));
    assert!(parse_rat("1/0").is_err() || parse_rat("x").is_err());
    assert_eq!(factorial(5), int(120));
    assert_eq!(binomial(5, 2), int(10));
    assert_eq!(binomial(3, 5), int(0));
    assert_eq!(rat_pow(&rat(2, 3), -2), rat(9, 4));
}

#[test]
fn pochhammer_examples() {
    // (nu)_1 = nu
    let p = pochhammer(&[int(0)], &Partition::new(vec![1]).unwrap(), &int(3));
    assert_eq!(p, lin(int(0)));
    // (nu)_{(2,1),1} = nu (nu+1) (nu-1/2)
    let p = pochhammer(&[int(0), int(0)], &Partition::new(vec![2, 1]).unwrap(), &int(1));
    assert_eq!(p, lin(int(0)).mul(&lin(int(1))).mul(&lin(rat(-1, 2))));
    // (nu)_{(1,1),2} = nu (nu-1)
    let p = pochhammer(&[int(0), int(0)], &Partition::new(vec![1, 1]).unwrap(), &int(2));
    assert_eq!(p, lin(int(0)).mul(&lin(int(-1))));
    assert_eq!(p.degree(), 2);
}

#[test]
fn pochhammer_at_one_is_factorial() {
    for n in 0..8u32 {
        let p = pochhammer(&[int(0)], &Partition::new(vec![n]).unwrap(), &int(0));
        assert_eq!(p.eval_at(&int(1)).unwrap(), factorial(n));
    }
}

#[test]
fn param_limit_examples() {
    let p = lin(int(0)).mul(&lin(int(1))).inv().unwrap();
    assert_eq!(param_limit(&p, &int(0), 1), Ok(int(1)));
    assert_eq!(param_limit(&p, &int(0), 0), Err(LimitSignal::Diverges(1)));
    assert_eq!(param_limit(&lin(int(-2)), &int(3), 0), Ok(int(1)));
    assert_eq!(param_limit(&lin(int(-2)), &int(2), 0), Err(LimitSignal::Vanishes));
    // the rank-one residue of 1/(nu)_m at nu = 0
    let m1 = pochhammer(&[int(0)], &Partition::new(vec![1]).unwrap(), &int(2)).inv().unwrap();
    assert_eq!(param_limit(&m1, &int(0), 1), Ok(int(1)));
}

#[test]
fn poly_diff_examples() {
    assert_eq!(poly_diff(&px().pow(2), &x(), 1), px().scale_rat(&int(2)));
    assert!(poly_diff(&px().pow(2).mul(&py()), &y(), 2).is_zero());
    assert_eq!(poly_diff(&px().pow(3), &x(), 3), MultiPoly::from_int(6));
}

#[test]
fn compose_linear_examples() {
    let swap: BTreeMap<Var, MultiPoly> = [(x(), py()), (y(), px())].into_iter().collect();
    assert_eq!(poly_compose_linear(&px().add(&py()), &swap).unwrap(), px().add(&py()));
    let dbl: BTreeMap<Var, MultiPoly> = [(x(), px().scale_rat(&int(2)))].into_iter().collect();
    assert_eq!(poly_compose_linear(&px().pow(2), &dbl).unwrap(), px().pow(2).scale_rat(&int(4)));
    let sh: BTreeMap<Var, MultiPoly> = [(x(), px().add(&py())), (y(), py())].into_iter().collect();
    assert_eq!(poly_compose_linear(&px().mul(&py()), &sh).unwrap(), px().mul(&py()).add(&py().pow(2)));
}

#[test]
fn var_and_mono_text() {
    let v = Var::parse("~g[2,3]").unwrap();
    assert!(v.conj);
    assert_eq!(v.holo(), Var::new("g", 2, 3));
    assert_eq!(v.to_string(), "~g[2,3]");
    let m = Mono::from_pairs([(Var::new("x", 1, 2), 2), (Var::new("x", 1, 1), 1)]).mul(&Mono::var(Var::new("x", 1, 1).bar(), 1));
    let s = m.to_string();
    assert_eq!(jsbo::sbo::parse_mono(&s).unwrap(), m);
}

#[test]
fn paramscalar_json_and_text() {
    let p = lin(rat(1, 2)).mul(&lin(int(-1)).inv().unwrap()).scale(&rat(-3, 4));
    let j = p.to_json();
    let s = serde_json::to_string(&j).unwrap();
    assert!(s.contains("\"c\":\"-3/4\""));
    assert_eq!(ParamScalar::from_json(&j).unwrap(), p);
    assert!(p.to_latex().contains("\\lambda"));
}

#[test]
fn partition_counts_match_recurrence() {
    // p(n, k): partitions of n into at most k parts
    fn count(n: u32, k: usize) -> usize {
        if n == 0 {
            return 1;
        }
        if k == 0 {
            return 0;
        }
        let mut c = count(n, k - 1);
        if n as usize >= k {
            c += count(n - k as u32, k);
        }
        c
    }
    for n in 0..10 {
        for r in 1..5 {
            let ps = partitions_of(n, r);
            assert_eq!(ps.len(), count(n, r), "n={n} r={r}");
            assert!(ps.iter().all(|m| m.size() == n && m.parts().windows(2).all(|w| w[0] >= w[1])));
        }
    }
    assert_eq!(partitions_up_to(3, 2).len(), 1 + 1 + 2 + 2);
}

#[test]
fn partition_complement() {
    let m = Partition::new(vec![3, 1, 0]).unwrap();
    assert_eq!(m.complement(3, 3).unwrap(), Partition::new(vec![3, 2, 0]).unwrap());
    assert!(Partition::new(vec![1, 2]).is_err());
}

// ---- strategies ----

fn small_rat() -> impl Strategy<Value = Rational> {
    (-9i64..10, 1i64..6).prop_map(|(n, d)| rat(n, d))
}

fn paramscalar() -> impl Strategy<Value = ParamScalar> {
    (
        (-5i64..6).prop_filter("nonzero", |c| *c != 0),
        proptest::collection::vec(((-4i64..5), 1i64..3, -2i32..3), 0..4),
    )
        .prop_map(|(c, fs)| ParamScalar::from_parts(int(c), fs.into_iter().map(|(n, d, e)| (default_param(), rat(n, d), e))))
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    let vars = [x(), y(), Var::new("x", 1, 2), Var::new("x", 1, 1).bar()];
    proptest::collection::vec((small_rat(), proptest::collection::vec(0u32..3, 4)), 0..5).prop_map(move |ts| {
        let mut f = MultiPoly::zero();
        for (c, e) in ts {
            f.add_term(Mono::from_pairs(vars.iter().copied().zip(e)), c);
        }
        f
    })
}

/// Evaluation point avoiding the poles of the generated scalars (shifts have denominators <= 5).
fn eval_point() -> impl Strategy<Value = Rational> {
    (-40i64..40).prop_map(|n| rat(n * 7 + 3, 97))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn paramscalar_mul_commutes_and_evaluates(a in paramscalar(), b in paramscalar(), c in paramscalar(), t in eval_point()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        let lhs = a.mul(&b).eval_at(&t).unwrap();
        prop_assert_eq!(lhs, a.eval_at(&t).unwrap() * b.eval_at(&t).unwrap());
    }

    #[test]
    fn paramscalar_inverse(a in paramscalar(), t in eval_point()) {
        let i = a.inv().unwrap();
        prop_assert_eq!(a.mul(&i), ParamScalar::one());
        prop_assert_eq!(i.eval_at(&t).unwrap(), a.eval_at(&t).unwrap().recip());
    }

    #[test]
    fn limit_is_multiplicative(a in paramscalar(), b in paramscalar(), n in -4i64..5) {
        let x0 = int(n);
        let (oa, ob) = (-a.order_at(&default_param(), &x0), -b.order_at(&default_param(), &x0));
        // the orders that make each limit finite and nonzero
        let la = param_limit(&a, &x0, oa);
        let lb = param_limit(&b, &x0, ob);
        let lab = param_limit(&a.mul(&b), &x0, oa + ob);
        if let (Ok(la), Ok(lb)) = (la, lb) {
            prop_assert_eq!(lab, Ok(la * lb));
        }
    }

    #[test]
    fn paramscalar_json_round_trip(a in paramscalar()) {
        prop_assert_eq!(ParamScalar::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert!(a.terms().all(|(_, c)| !rat_is_zero(c)));
    }

    #[test]
    fn derivative_is_a_derivation(a in poly(), b in poly()) {
        let d = |f: &MultiPoly| poly_diff(f, &x(), 1);
        prop_assert_eq!(d(&a.mul(&b)), d(&a).mul(&b).add(&a.mul(&d(&b))));
    }

    #[test]
    fn poly_json_round_trip(a in poly()) {
        let j = poly_to_json(&a);
        let s = serde_json::to_string(&j).unwrap();
        let back: PolyJson = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(poly_from_json(&back).unwrap(), a);
    }

    #[test]
    fn complement_is_involutive(parts in proptest::collection::vec(0u32..5, 1..4), k in 4u32..6) {
        let mut p = parts.clone();
        p.sort_unstable_by(|a, b| b.cmp(a));
        let r = p.len();
        let m = Partition::new(p).unwrap();
        let c = m.complement(k, r).unwrap();
        prop_assert_eq!(c.complement(k, r).unwrap(), m);
    }
}
