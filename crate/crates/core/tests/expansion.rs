use jsbo::exact::{default_param, factorial, int, rat, rone, Mono, MultiPoly, Partition, Rational, Var};
use jsbo::expansion::{build_hat_kernel, coefficient_oracle, expand_h_power, lift_params};
use jsbo::jordan::{blocks, generic_norm, h_of, q_fn, Domain, Kind, PMat};
use jsbo::sbo::{PairId, PairSpec};
use jsbo::spaces::{hks_project, repkernel_k};

fn conj(v: &Var) -> bool {
    v.conj
}

#[test]
fn h_expansion_desk_degree_six() {
    for kind in [Kind::Sym(2), Kind::Mat(2, 2), Kind::Skew(4), Kind::Quadric(3)] {
        let d = Domain::standard(kind, "x");
        let e = expand_h_power(&d, 6).unwrap();
        assert!(e.agree(), "{kind}: {:?}", e.checks);
        assert_eq!(e.checks.len(), 7);
    }
}

#[test]
fn h_expansion_rank_one() {
    let d = Domain::standard(Kind::Mat(1, 1), "x");
    let e = expand_h_power(&d, 5).unwrap();
    assert!(e.agree());
    let lam = rat(7, 2);
    let v = e.structured.eval(&lam).unwrap();
    let xy = MultiPoly::term(Mono::from_pairs([(Var::new("x", 1, 1), 1), (Var::new("x", 1, 1).bar(), 1)]), rone());
    let mut expect = MultiPoly::zero();
    let mut poch = rone();
    for m in 0..=5u32 {
        expect.add_assign(&xy.pow(m).scale_rat(&(&poch / factorial(m))));
        poch *= &lam + int(m as i64);
    }
    assert_eq!(v, expect);
}

#[test]
fn h_expansion_degree_zero_term_is_one() {
    for kind in [Kind::Sym(3), Kind::Mat(2, 3), Kind::Skew(5), Kind::Quadric(4)] {
        let d = Domain::standard(kind, "x");
        let e = expand_h_power(&d, 1).unwrap();
        let t0: Vec<_> = e.structured.terms.iter().filter(|t| t.m.size() == 0).collect();
        assert_eq!(t0.len(), 1);
        assert_eq!(t0[0].poly, MultiPoly::one());
        assert_eq!(t0[0].coeff.eval_at(&rat(5, 3)).unwrap(), rone());
    }
}

/// `(1-u)^{-lambda}` at a rational lambda, truncated at conjugate degree `n`.
fn binomial_power(h: &MultiPoly, lam: &Rational, n: u32) -> MultiPoly {
    let u = MultiPoly::one().sub(h);
    let mut acc = MultiPoly::one();
    let mut pw = MultiPoly::one();
    let mut c = rone();
    for j in 1..=n {
        pw = pw.mul_trunc(&u, &conj, n);
        c = c * (lam + int(j as i64 - 1)) / int(j as i64);
        acc.add_assign(&pw.scale_rat(&c));
    }
    acc
}

#[test]
fn sym2_component_one_one() {
    // the (1,1) component of h^{-lambda} at bidegree (2,2) is lambda(lambda-1/2) K_(1,1)
    let d = Domain::standard(Kind::Sym(2), "x");
    let h = generic_norm(&d).unwrap();
    let m = Partition::new(vec![1, 1]).unwrap();
    let k11 = repkernel_k(Kind::Sym(2), &m, "x", "x").unwrap();
    for lam in [int(3), rat(7, 2), rat(-2, 5)] {
        let series = binomial_power(&h, &lam, 2).homogeneous(conj, 2);
        let comp = hks_project(Kind::Sym(2), "x", &series, &m).unwrap();
        let c = &lam * (&lam - rat(1, 2));
        assert_eq!(comp, k11.scale_rat(&c), "lambda = {lam}");
    }
}

fn eval_lambda(f: &MultiPoly, lam: &Rational) -> MultiPoly {
    let p = default_param();
    f.eval_partial(&|v| (*v == p).then(|| lam.clone()))
}

#[test]
fn hat_kernel_degree_zero_is_the_kernel() {
    for spec in [
        PairSpec::new(PairId::UUU, &[1, 1, 1, 1], 1, 1).unwrap(),
        PairSpec::new(PairId::SpSpSp, &[1, 1], 2, 0).unwrap(),
        PairSpec::new(PairId::SpU, &[1, 2], 0, 1).unwrap(),
    ] {
        let g = spec.geometry().unwrap();
        let khat = build_hat_kernel(&g.holo(), &g.kernel, 3).unwrap();
        assert_eq!(khat.homogeneous(conj, 0), g.kernel, "{}", spec.label());
    }
}

#[test]
fn scalar_hat_kernel_inverts_the_norm_power() {
    // K = 1: h(x2,y1)^lambda * Khat = 1 through the truncation degree, at integer lambda
    for spec in [PairSpec::new(PairId::UUU, &[1, 1, 1, 1], 0, 0).unwrap(), PairSpec::new(PairId::SpSpSp, &[1, 2], 0, 0).unwrap()] {
        let g = spec.geometry().unwrap();
        let geo = g.holo();
        let n = 4;
        let khat = build_hat_kernel(&geo, &MultiPoly::one(), n).unwrap();
        let x2: PMat<Rational> = geo.big.sym_point_where(&|v| !geo.in_p1(v), false);
        let y1: PMat<Rational> = geo.big.sym_point_where(&|v| geo.in_p1(v), true);
        let h = h_of(&geo.big, &x2, &y1);
        for lam in [1i64, 2, 3] {
            let kl = eval_lambda(&khat, &int(lam));
            let prod = h.pow(lam as u32).mul_trunc(&kl, &conj, n);
            assert_eq!(prod, MultiPoly::one(), "{} lambda={lam}", spec.label());
        }
    }
}

fn scale_vars(f: &MultiPoly, s: &dyn Fn(&Var) -> Option<Rational>) -> MultiPoly {
    f.substitute(&|v| s(v).map(|c| MultiPoly::var(*v).scale_rat(&c)))
}

#[test]
fn hat_kernel_is_equivariant_under_diagonal_scalings() {
    let (a1, a2, d1, d2) = (rat(2, 3), rat(-5, 2), rat(3, 7), rat(4, 1));
    // U-UU on MAT(2,2): x -> a x d^{-1}, conj y -> a^{-1} conj y d
    for (k, l) in [(0, 0), (1, 0), (1, 1), (2, 1)] {
        let spec = PairSpec::new(PairId::UUU, &[1, 1, 1, 1], k, l).unwrap();
        let g = spec.geometry().unwrap();
        let khat = build_hat_kernel(&g.holo(), &g.kernel, 3).unwrap();
        let s = |v: &Var| -> Option<Rational> {
            let (row, col) = match v.g {
                "x11" => (&a1, &d1),
                "x12" => (&a1, &d2),
                "x21" => (&a2, &d1),
                "x22" => (&a2, &d2),
                _ => return None,
            };
            Some(if v.conj { col / row } else { row / col })
        };
        let lhs = scale_vars(&khat, &s);
        let factor = jsbo::exact::rat_pow(&(&a1 / &d2), k as i32) * jsbo::exact::rat_pow(&(&a2 / &d1), l as i32);
        assert_eq!(lhs, khat.scale_rat(&factor), "k={k} l={l}");
    }
    // Sp-SpSp on SYM(2): x -> a x a^t, conj y -> a^{-1} conj y a^{-1}
    for k in [0, 1, 2] {
        let spec = PairSpec::new(PairId::SpSpSp, &[1, 1], k, 0).unwrap();
        let g = spec.geometry().unwrap();
        let khat = build_hat_kernel(&g.holo(), &g.kernel, 3).unwrap();
        let s = |v: &Var| -> Option<Rational> {
            let w = match v.g {
                "x11" => &a1 * &a1,
                "x12" => &a1 * &a2,
                "x22" => &a2 * &a2,
                _ => return None,
            };
            Some(if v.conj { rone() / w } else { w })
        };
        let lhs = scale_vars(&khat, &s);
        let factor = jsbo::exact::rat_pow(&(&a1 * &a2), k as i32);
        assert_eq!(lhs, khat.scale_rat(&factor), "k={k}");
    }
}

#[test]
fn oracle_degree_zero_is_the_kernel() {
    for spec in [PairSpec::new(PairId::UUU, &[1, 1, 1, 1], 1, 1).unwrap(), PairSpec::new(PairId::SpSpSp, &[2, 2], 1, 0).unwrap()] {
        let g = spec.geometry().unwrap();
        let f = coefficient_oracle(&g.holo(), &g.kernel, 0).unwrap();
        assert_eq!(f, lift_params(&g.kernel, &|_| false), "{}", spec.label());
    }
}

#[test]
fn scalar_oracle_has_no_odd_terms() {
    for spec in [PairSpec::new(PairId::UUU, &[1, 1, 1, 1], 0, 0).unwrap(), PairSpec::new(PairId::SpU, &[1, 1], 0, 0).unwrap()] {
        let g = spec.geometry().unwrap();
        let f = coefficient_oracle(&g.holo(), &MultiPoly::one(), 3).unwrap();
        assert!(f.homogeneous(conj, 1).is_zero(), "{}", spec.label());
        assert!(f.homogeneous(conj, 3).is_zero(), "{}", spec.label());
        assert!(!f.homogeneous(conj, 2).is_zero(), "{}", spec.label());
    }
}

/// `h(Q(x12)(y11+y22), y11+y22) = h(Q(x12)y11, y22)^2` on a block splitting, and the
/// right side agrees with the determinant of the lower block.
fn norm_square_case(big: &Domain, lower: (usize, usize)) {
    let in_p1 = |v: &Var| v.g == "x11" || v.g == "x22";
    let x: PMat<Rational> = big.sym_point_where(&|v| !in_p1(v), false);
    let y: PMat<Rational> = big.sym_point_where(&in_p1, true);
    let y11: PMat<Rational> = big.sym_point_where(&|v| v.g == "x11", true);
    let y22: PMat<Rational> = big.sym_point_where(&|v| v.g == "x22", true);
    let k = big.kind;
    let lhs = h_of(big, &q_fn(k, &x, &y), &y);
    let a = q_fn(k, &x, &y11);
    let rhs = h_of(big, &a, &y22);
    assert_eq!(lhs, rhs.mul(&rhs), "{}", big.name);
    if let Kind::Sym(_) | Kind::Mat(..) = k {
        let (r0, c0) = lower;
        let rows: Vec<usize> = (r0..a.rows).collect();
        let cols: Vec<usize> = (c0..a.cols).collect();
        let a22 = a.sub_matrix(&rows, &cols);
        let b22 = y22.sub_matrix(&rows, &cols);
        let h22 = PMat::identity(rows.len()).sub(&a22.mul(&b22.transpose())).det();
        assert_eq!(rhs, h22, "{}", big.name);
    }
}

#[test]
fn generic_norm_square_on_block_splittings() {
    norm_square_case(&blocks::sym(1, 2), (1, 1));
    norm_square_case(&blocks::sym(2, 2), (2, 2));
    norm_square_case(&blocks::mat(1, 1, 1, 1), (1, 1));
    norm_square_case(&blocks::mat(1, 2, 2, 1), (1, 2));
    norm_square_case(&blocks::skew(2, 2), (2, 2));
}
