use jsbo::exact::{factorial, int, rat, rone, rzero, Mono, MultiPoly, Partition, Poly, Rational, Var};
use jsbo::jordan::{Domain, Kind, PMat};
use jsbo::spaces::jack::{bialternant, psym, to_t_poly};
use jsbo::spaces::*;

fn part(s: &str) -> Partition {
    Partition::parse(s).unwrap()
}

fn x(g: &str, i: usize, j: usize) -> MultiPoly {
    MultiPoly::var(Var::new(g, i, j))
}

#[test]
fn fischer_examples() {
    let d = Domain::standard(Kind::Mat(1, 1), "x");
    assert_eq!(fischer_inner(&d, &MultiPoly::one(), &MultiPoly::one()), rone());
    for m in 0..6 {
        let f = x("x", 1, 1).pow(m);
        assert_eq!(fischer_inner(&d, &f, &f), factorial(m));
    }
    let s = Domain::standard(Kind::Sym(1), "x");
    let f = x("x", 1, 1).pow(2);
    assert_eq!(fischer_inner(&s, &f, &f), int(2));
    // p = ~x applied to x^2 gives 2x
    let p = MultiPoly::var(Var::new("x", 1, 1).bar());
    assert_eq!(fischer_apply(&d, &p, &f), x("x", 1, 1).scale_rat(&int(2)));
    assert_eq!(fischer_apply(&d, &MultiPoly::one(), &f), f);
}

#[test]
fn fischer_apply_reproduces_exponential() {
    for kind in [Kind::Sym(2), Kind::Skew(4), Kind::Quadric(3)] {
        let d = Domain::standard(kind, "x");
        let e = exp_kernel(&d, 4);
        // p(conj d/dx) e^{(x|y)} = p(y): with y-variables conjugate, compare at x = 0
        let v = d.coords[0].var;
        let w = d.coords[d.dim() - 1].var;
        let p = MultiPoly::var(v.bar()).mul(&MultiPoly::var(w.bar()));
        let got = fischer_apply(&d, &p, &e).eval_partial(&|u| if !u.conj { Some(rzero()) } else { None });
        assert_eq!(got, p, "{kind}");
    }
}

#[test]
fn phi_tilde_small_cases() {
    let t = jack_phi_tilde(&int(2), 2, &part("1,0"));
    assert_eq!(t.poly(), &MultiPoly::var(psym(1)));
    let t = jack_phi_tilde(&int(2), 2, &part("1,1"));
    let expect = MultiPoly::var(psym(1)).pow(2).sub(&MultiPoly::var(psym(2))).scale_rat(&rat(1, 4));
    assert_eq!(t.poly(), &expect);
    assert_eq!(jack_phi_tilde(&int(1), 3, &part("0,0,0")).poly(), &MultiPoly::one());
}

fn hook_count(m: &Partition) -> Rational {
    // number of standard Young tableaux by the hook length formula
    let p: Vec<u32> = m.parts().iter().copied().filter(|&a| a > 0).collect();
    let n = p.iter().sum::<u32>();
    let mut hooks = rone();
    for (i, &row) in p.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = p[i + 1..].iter().filter(|&&r| r > j).count() as u32;
            hooks *= int((arm + leg + 1) as i64);
        }
    }
    factorial(n) / hooks
}

#[test]
fn schur_matches_bialternant() {
    for r in 1..=3usize {
        for n in 0..=5u32 {
            for m in partitions_up_to_len(n, r) {
                let phi = to_t_poly(&jack_phi_tilde(&int(2), r, &m), r);
                let (num, den) = bialternant(&m, r);
                let c = hook_count(&m) / factorial(n);
                assert_eq!(phi.mul(&den), num.scale_rat(&c), "m={m} r={r}");
            }
        }
    }
}

fn partitions_up_to_len(n: u32, r: usize) -> Vec<Partition> {
    jsbo::exact::partitions_of(n, r)
}

#[test]
fn stability_in_rank() {
    for d in [int(1), int(2), int(4)] {
        for r in 2..=3usize {
            for n in 0..=5u32 {
                for m in partitions_up_to_len(n, r) {
                    let big = to_t_poly(&jack_phi_tilde(&d, r, &m), r);
                    let cut = big.eval_partial(&|v| if v.i as usize == r { Some(rzero()) } else { None });
                    let small = to_t_poly(&jack_phi_tilde(&d, r - 1, &m), r - 1);
                    assert_eq!(cut, small, "d={d} r={r} m={m}");
                }
            }
        }
    }
}

#[test]
fn exponential_completeness_phi() {
    for d in [int(1), int(2), int(4)] {
        for r in 1..=3usize {
            for n in 0..=6u32 {
                let mut sum = MultiPoly::zero();
                for m in partitions_up_to_len(n, r) {
                    sum.add_assign(&to_t_poly(&jack_phi_tilde(&d, r, &m), r));
                }
                let p1 = jack::powersum_in_t(1, r);
                assert_eq!(sum, p1.pow(n).scale_rat(&(rone() / factorial(n))), "d={d} r={r} n={n}");
            }
        }
    }
}

use jsbo::spaces::jack;

/// Jack polynomials are eigenfunctions of the Laplace-Beltrami type operator
/// `(alpha/2) sum t_i^2 d_i^2 + sum_{i != j} t_i^2/(t_i - t_j) d_i`; checked at rational points.
#[test]
fn jack_laplace_beltrami_eigen() {
    let pts: Vec<Vec<Rational>> = vec![
        vec![rat(1, 2), rat(-2, 3), rat(5, 7)],
        vec![rat(3, 1), rat(1, 5), rat(-1, 4)],
        vec![rat(2, 9), rat(7, 3), rat(4, 1)],
    ];
    let r = 3usize;
    for d in [int(1), int(4)] {
        let alpha = int(2) / &d;
        for n in 1..=4u32 {
            for m in partitions_up_to_len(n, r) {
                let f = to_t_poly(&jack_phi_tilde(&d, r, &m), r);
                let t = |i: usize| Var::new("t", i + 1, 0);
                let ev = |p: &MultiPoly, pt: &[Rational]| -> Rational {
                    p.eval_partial(&|v| Some(pt[v.i as usize - 1].clone())).const_term()
                };
                let mut ratios = Vec::new();
                for pt in &pts {
                    let mut acc = rzero();
                    for i in 0..r {
                        let ti = &pt[i];
                        acc += &alpha / int(2) * ti * ti * ev(&f.diff(&t(i), 2), pt);
                        for j in 0..r {
                            if i != j {
                                acc += ti * ti / (ti - &pt[j]) * ev(&f.diff(&t(i), 1), pt);
                            }
                        }
                    }
                    ratios.push(acc / ev(&f, pt));
                }
                // eigenvalue alpha n(m') - n(m) + (N-1)|m| with n(m) = sum (i-1) m_i
                let nm: i64 = m.parts().iter().enumerate().map(|(i, &a)| i as i64 * a as i64).sum();
                let conj: Vec<u32> = (0..m.part(0)).map(|j| m.parts().iter().filter(|&&a| a > j).count() as u32).collect();
                let nmc: i64 = conj.iter().enumerate().map(|(i, &a)| i as i64 * a as i64).sum();
                let e = &alpha * int(nmc) - int(nm) + int((r as i64 - 1) * n as i64);
                for q in &ratios {
                    assert_eq!(q, &e, "d={d} m={m}");
                }
            }
        }
    }
}

#[test]
fn kernel_examples() {
    let k = repkernel_k(Kind::Mat(1, 1), &part("3"), "x", "y").unwrap();
    let xy = MultiPoly::term(Mono::from_pairs([(Var::new("x", 1, 1), 1), (Var::new("y", 1, 1).bar(), 1)]), rone());
    assert_eq!(k, xy.pow(3).scale_rat(&(rone() / factorial(3))));
    assert_eq!(repkernel_k(Kind::Sym(2), &part("0,0"), "x", "y").unwrap(), MultiPoly::one());
    // QUADRIC degree one: the inner product
    let k = repkernel_k(Kind::Quadric(3), &part("1,0"), "x", "x").unwrap();
    let mut ip = MultiPoly::zero();
    for j in 1..=3 {
        ip.add_term(Mono::from_pairs([(Var::new("x", 1, j), 1), (Var::new("x", 1, j).bar(), 1)]), int(2));
    }
    assert_eq!(k, ip);
}

#[test]
fn kernel_exponential_completeness() {
    for kind in [Kind::Sym(2), Kind::Mat(2, 2), Kind::Skew(4), Kind::Quadric(3), Kind::Mat(2, 3), Kind::Skew(5)] {
        let d = Domain::standard(kind, "x");
        let e = exp_kernel(&d, 5);
        let mut sum = MultiPoly::zero();
        for n in 0..=5 {
            for m in hks_labels(kind, n) {
                sum.add_assign(&repkernel_k(kind, &m, "x", "x").unwrap());
            }
        }
        assert_eq!(sum, e, "{kind}");
    }
}

#[test]
fn kernel_at_frame_is_phi() {
    for kind in [Kind::Sym(2), Kind::Sym(3), Kind::Mat(2, 2), Kind::Skew(4)] {
        let dom = Domain::standard(kind, "x");
        let frame = dom.frame().unwrap();
        let e = dom.unit_point().unwrap();
        let a = [rat(2, 3), rat(-1, 5), rat(3, 2)];
        let r = dom.rank();
        let mut pt = vec![rzero(); dom.dim()];
        for (j, f) in frame.iter().enumerate() {
            for (p, v) in pt.iter_mut().zip(f) {
                *p += &a[j] * v;
            }
        }
        for n in 0..=4 {
            for m in hks_labels(kind, n) {
                let k = repkernel_k(kind, &m, "x", "x").unwrap();
                let val = k
                    .eval_partial(&|v| {
                        let i = dom.index_of(v).unwrap();
                        Some(if v.conj { e[i].clone() } else { pt[i].clone() })
                    })
                    .const_term();
                let phi = jack_phi_tilde(&kind.d(), r, &m).eval_diag(&a[..r]);
                assert_eq!(val, phi, "{kind} m={m}");
            }
        }
    }
}

fn sample_poly(dom: &Domain, deg: u32, seed: i64) -> MultiPoly {
    // deterministic dense-ish polynomial of degree `deg`
    let mut f = MultiPoly::zero();
    let vars = dom.vars();
    let mut c = seed;
    let mut add = |m: Mono| {
        c = (c * 37 + 11) % 19 - 9;
        f.add_term(m, int(c));
    };
    fn rec(vars: &[Var], deg: u32, cur: Mono, out: &mut dyn FnMut(Mono)) {
        if deg == 0 {
            out(cur);
            return;
        }
        if vars.is_empty() {
            return;
        }
        for e in (0..=deg).rev() {
            rec(&vars[1..], deg - e, cur.mul(&Mono::var(vars[0], e)), out);
        }
    }
    rec(&vars, deg, Mono::one(), &mut add);
    f
}

#[test]
fn hks_projection_properties() {
    for kind in [Kind::Sym(2), Kind::Mat(2, 2), Kind::Quadric(3), Kind::Skew(4)] {
        let dom = Domain::standard(kind, "x");
        for n in 1..=3 {
            let f = sample_poly(&dom, n, 3);
            let g = sample_poly(&dom, n, 8);
            let labels = hks_labels(kind, n);
            let mut total = MultiPoly::zero();
            let comps: Vec<MultiPoly> = labels.iter().map(|m| hks_project(kind, "x", &f, m).unwrap()).collect();
            for (m, fm) in labels.iter().zip(&comps) {
                total.add_assign(fm);
                assert_eq!(&hks_project(kind, "x", fm, m).unwrap(), fm, "idempotent {kind} {m}");
                let gm = hks_project(kind, "x", &g, m).unwrap();
                assert_eq!(fischer_inner(&dom, fm, &g), fischer_inner(&dom, &f, &gm), "self-adjoint {kind} {m}");
            }
            for i in 0..comps.len() {
                for j in 0..comps.len() {
                    if i != j {
                        assert_eq!(fischer_inner(&dom, &comps[i], &comps[j]), rzero(), "orthogonal {kind}");
                    }
                }
            }
            assert_eq!(total, f, "{kind} n={n}");
        }
    }
}

#[test]
fn hks_examples() {
    let f = x("x", 1, 1).pow(3);
    assert_eq!(hks_project(Kind::Sym(1), "x", &f, &part("3")).unwrap(), f);
    assert!(hks_project(Kind::Sym(1), "x", &f, &part("2")).unwrap().is_zero());
    let dom = Domain::standard(Kind::Mat(2, 2), "x");
    let det = dom.sym_point::<Rational>().det();
    assert_eq!(hks_project(Kind::Mat(2, 2), "x", &det, &part("1,1")).unwrap(), det);
    assert!(hks_project(Kind::Mat(2, 2), "x", &det, &part("2,0")).unwrap().is_zero());
}

#[test]
fn weighted_inner_examples() {
    use jsbo::exact::{default_param, Coeff, ParamEnv, RatFn};
    let lam = default_param();
    let one = weighted_inner(Kind::Mat(1, 1), "x", &MultiPoly::one(), &MultiPoly::one(), lam).unwrap();
    assert_eq!(one, RatFn::one());
    let xx = weighted_inner(Kind::Mat(1, 1), "x", &x("x", 1, 1), &x("x", 1, 1), lam).unwrap();
    let mut env = ParamEnv::new();
    env.insert(lam, rat(7, 3));
    assert_eq!(xx.eval(&env).unwrap(), rat(3, 7));
    let f = x("x", 1, 1).pow(2);
    let w = weighted_inner(Kind::Sym(1), "x", &f, &f, lam).unwrap();
    let l = rat(7, 3);
    assert_eq!(w.eval(&env).unwrap(), int(2) / (&l * (&l + int(1))));
    // reduces to the Fischer product when every Pochhammer is replaced by one
    let _ = Poly::<Rational>::zero();
}

#[test]
fn schur_prime_examples() {
    // rank one: Tr(A^2)/2
    let a: PMat<Rational> = PMat::from_fn(2, 2, |i, j| x("a", i + 1, j + 1));
    let s = schur_prime(&part("1"), &a, 1);
    assert_eq!(s, a.mul(&a).trace().scale_rat(&rat(1, 2)));
    assert_eq!(schur_prime(&part("0"), &a, 1), MultiPoly::one());
    let s2 = schur_prime(&part("2,1"), &a, 2);
    assert_eq!(s2, schur_prime(&part("2,1"), &a.neg(), 2));
}
