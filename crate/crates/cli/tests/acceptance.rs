//! Acceptance criteria 1-9. Runs without the libtest harness so every criterion
//! prints one line; exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use jsbo::exact::{default_param, factorial, int, partitions_of, rat, rone, Mono, MultiPoly, ParamEnv, Partition, Rational, Var};
use jsbo::expansion::expand_h_power;
use jsbo::jordan::verify::jordan_suite;
use jsbo::jordan::{Domain, Kind};
use jsbo::lie::{monomial_basis, relations_hold, search};
use jsbo::residue::{pole_order, residue_property_check, ResidueFamily};
use jsbo::sbo::normal::{mult_embed_check, normal_sbo_check, NormalPair};
use jsbo::sbo::tensor::{mu_param, tensor_check, tensor_check_at, LEFT, RIGHT};
use jsbo::sbo::{compare_symbols, holographic_intertwine, oracle_agreement, rc_tensor, tensor_oracle, PairId, PairSpec, TensorSpec};
use jsbo::spaces::jack_phi_tilde;

const DESK: [Kind; 4] = [Kind::Sym(2), Kind::Mat(2, 2), Kind::Skew(4), Kind::Quadric(3)];

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    ensure(t.elapsed() < limit, || format!("took {:.1?}, limit {limit:?}", t.elapsed()))
}

// ---- 1 ----

fn c1_jordan() -> Check {
    let t = Instant::now();
    let points = 110;
    let mut total = 0;
    for k in DESK {
        let reps = jordan_suite(k, 42, points).map_err(|e| e.to_string())?;
        for fam in ["detB=h^p (polynomial in x)", "Bergman_left", "Bergman_right", "quasiinv_add", "quasiinv_twice", "projlemma", "projprop", "Bergman_decomp"] {
            ensure(reps.iter().any(|r| r.identity.starts_with(fam)), || format!("{k}: no {fam} report"))?;
        }
        for r in &reps {
            ensure(r.failed == 0, || format!("{k} {}: {} failures {:?}", r.identity, r.failed, r.failures))?;
            let symbolic = r.identity.contains("polynomial") || r.identity.starts_with("projprop(2)");
            let need = if symbolic { 1 } else { 100 };
            ensure(r.passed >= need, || format!("{k} {}: only {} points", r.identity, r.passed))?;
            total += r.passed;
        }
    }
    within(t, Duration::from_secs(60))?;
    Ok(format!("{total} checks on 4 domains, 0 failures, {:.1?}", t.elapsed()))
}

// ---- 2 ----

fn c2_expansion() -> Check {
    let t = Instant::now();
    for k in DESK {
        let e = expand_h_power(&Domain::standard(k, "x"), 6).map_err(|e| e.to_string())?;
        ensure(e.checks.len() == 7 && e.agree(), || format!("{k}: {:?}", e.checks))?;
    }
    within(t, Duration::from_secs(120))?;
    Ok(format!("degree 6 on 4 domains, {:.1?}", t.elapsed()))
}

// ---- 3 ----

fn det(m: &[Vec<Rational>]) -> Rational {
    // Laplace expansion; r <= 3 here
    if m.is_empty() {
        return rone();
    }
    let mut acc = int(0);
    for (j, a) in m[0].iter().enumerate() {
        let minor: Vec<Vec<Rational>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = a * det(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

fn rpow(x: &Rational, e: u32) -> Rational {
    (0..e).fold(rone(), |a, _| a * x)
}

/// The d = 2 closed form: prod_{i<j}(m_i - m_j - i + j) / prod_i (m_i + r - i)! times a Schur bialternant.
fn schur_closed_form(m: &[u32], t: &[Rational]) -> Rational {
    let r = m.len();
    let mut c = rone();
    for i in 0..r {
        for j in (i + 1)..r {
            c *= int(m[i] as i64 - m[j] as i64 - i as i64 + j as i64);
        }
        c /= factorial(m[i] + (r - 1 - i) as u32);
    }
    let num: Vec<Vec<Rational>> = (0..r).map(|i| (0..r).map(|j| rpow(&t[i], m[j] + (r - 1 - j) as u32)).collect()).collect();
    let den: Vec<Vec<Rational>> = (0..r).map(|i| (0..r).map(|j| rpow(&t[i], (r - 1 - j) as u32)).collect()).collect();
    c * det(&num) / det(&den)
}

fn c3_schur() -> Check {
    let pts = [vec![rat(1, 2), rat(-2, 3), rat(5, 7)], vec![rat(3, 1), rat(1, 5), rat(-1, 4)], vec![rat(2, 9), rat(7, 3), rat(4, 1)]];
    let mut n_checks = 0;
    for r in 1..=3usize {
        for n in 0..=5u32 {
            for m in partitions_of(n, r) {
                let phi = jack_phi_tilde(&int(2), r, &m);
                for p in &pts {
                    let t = &p[..r];
                    ensure(phi.eval_diag(t) == schur_closed_form(m.parts(), t), || format!("closed form r={r} m={m}"))?;
                    n_checks += 1;
                }
            }
        }
    }
    for d in [int(1), int(2), int(4)] {
        for r in 2..=3usize {
            for n in 0..=5u32 {
                for m in partitions_of(n, r) {
                    let big = jack_phi_tilde(&d, r, &m);
                    for p in &pts {
                        let mut t = p[..r - 1].to_vec();
                        let small = if m.parts()[r - 1] == 0 {
                            jack_phi_tilde(&d, r - 1, &Partition::new(m.parts()[..r - 1].to_vec()).unwrap()).eval_diag(&t)
                        } else {
                            int(0)
                        };
                        t.push(int(0));
                        ensure(big.eval_diag(&t) == small, || format!("stability d={d} r={r} m={m}"))?;
                        n_checks += 1;
                    }
                }
            }
        }
        for r in 1..=3usize {
            for n in 0..=6u32 {
                for p in &pts {
                    let t = &p[..r];
                    let sum: Rational = partitions_of(n, r).iter().map(|m| jack_phi_tilde(&d, r, m).eval_diag(t)).sum();
                    let s: Rational = t.iter().sum();
                    ensure(sum == rpow(&s, n) / factorial(n), || format!("exponential d={d} r={r} n={n}"))?;
                    n_checks += 1;
                }
            }
        }
    }
    Ok(format!("{n_checks} exact evaluations"))
}

// ---- 4 ----

fn c4_calibration() -> Check {
    for k in DESK {
        let d = Domain::standard(k, "x");
        let conv = search(&d, 3).map_err(|e| format!("{k}: {e}"))?;
        ensure(relations_hold(&d, &conv, &monomial_basis(&d.vars(), 3)), || format!("{k}: relations fail at degree 3"))?;
    }
    Ok("unique convention on 4 domains, relations hold to degree 3".into())
}

// ---- 5 ----

/// `(-k)_m / ((lambda)_{k-m} (mu)_m m!)`.
fn rc_coefficient(k: u32, m: u32, lam: &Rational, mu: &Rational) -> Rational {
    let poch = |a: &Rational, n: u32| (0..n).fold(rone(), |acc, i| acc * (a + int(i as i64)));
    poch(&int(-(k as i64)), m) / (poch(lam, k - m) * poch(mu, m) * factorial(m))
}

fn c5_rankin_cohen() -> Check {
    let t = Instant::now();
    let grid: Vec<Rational> = [(37, 5), (-5, 2), (11, 3), (7, 4), (-13, 6)].iter().map(|&(a, b)| rat(a, b)).collect();
    for k in 0..=4u32 {
        let spec = TensorSpec::new(Kind::Mat(1, 1), k).unwrap();
        let op = rc_tensor(&spec).map_err(|e| e.to_string())?;
        let diff = compare_symbols(&op.symbol().unwrap(), &tensor_oracle(&spec).unwrap());
        ensure(diff.is_empty(), || format!("k={k}: oracle {diff:?}"))?;
        for lam in &grid {
            for mu in &grid {
                let mut env = ParamEnv::new();
                env.insert(default_param(), lam.clone());
                env.insert(mu_param(), mu.clone());
                let sym: MultiPoly = op.symbol_in(&env).map_err(|e| e.to_string())?;
                let mut want = MultiPoly::zero();
                for m in 0..=k {
                    let mono = Mono::from_pairs([(Var::new(LEFT, 1, 1).bar(), k - m), (Var::new(RIGHT, 1, 1).bar(), m)]);
                    want.add_term(mono, rc_coefficient(k, m, lam, mu));
                }
                ensure(sym == want, || format!("k={k} at ({lam},{mu})"))?;
            }
        }
        let rep = tensor_check(&spec, 3).map_err(|e| e.to_string())?;
        ensure(rep.ok(), || format!("SL2 k={k} symbolic: {} failures", rep.failed))?;
    }
    for k in 0..=2u32 {
        let spec = TensorSpec::new(Kind::Sym(2), k).unwrap();
        for (l, m) in [(rat(37, 5), rat(11, 3)), (rat(53, 7), rat(29, 6)), (rat(71, 11), rat(43, 9))] {
            let rep = tensor_check_at(&spec, &l, &m, 3).map_err(|e| e.to_string())?;
            ensure(rep.ok(), || format!("Sp2 k={k} at ({l},{m}): {} failures", rep.failed))?;
        }
    }
    within(t, Duration::from_secs(300))?;
    Ok(format!("SL2 k<=4 symbolic, Sp2 k<=2 at 3 points, {:.1?}", t.elapsed()))
}

// ---- 6 ----

fn holographic_list() -> Vec<PairSpec> {
    let mut v = Vec::new();
    let p = |id, s: &[usize], k, l| PairSpec::new(id, s, k, l).unwrap();
    for k in 0..=2 {
        v.push(p(PairId::SpSpSp, &[1, 1], k, 0));
    }
    for k in 0..=2 {
        for l in 0..=2 {
            v.push(p(PairId::UUU, &[1, 1, 1, 1], k, l));
        }
    }
    for k in 0..=1 {
        v.push(p(PairId::SostSostSost, &[2, 2], k, 0));
    }
    v.push(p(PairId::SpU, &[1, 1], 0, 0));
    v.push(p(PairId::SostU, &[2, 2], 0, 0));
    v.push(p(PairId::SuSp, &[2], 0, 0));
    v.push(p(PairId::SuSost, &[2], 0, 0));
    v.push(p(PairId::SuSost, &[3], 0, 0));
    for k in 0..=1 {
        v.push(p(PairId::Su33Sost6, &[], k, 0));
    }
    for k in 0..=2 {
        v.push(p(PairId::SoSoSo, &[2, 2], k, 0));
    }
    v
}

fn c6_holographic() -> Check {
    let t = Instant::now();
    let lam = rat(37, 5);
    let pairs = holographic_list();
    for p in &pairs {
        let o = oracle_agreement(p, 4).map_err(|e| format!("{}: {e}", p.label()))?;
        ensure(o.ok(), || format!("{}: oracle {:?}", p.label(), o.mismatches))?;
        let rep = holographic_intertwine(p, &lam, 3).map_err(|e| format!("{}: {e}", p.label()))?;
        ensure(rep.ok(), || format!("{}: {} intertwining failures", p.label(), rep.failed))?;
    }
    within(t, Duration::from_secs(900))?;
    Ok(format!("{} pairs, oracle to degree 4, intertwining to degree 3 at lambda=37/5, {:.1?}", pairs.len(), t.elapsed()))
}

// ---- 7 ----

fn c7_normal() -> Check {
    let pair = NormalPair::new(1, 1, 1).unwrap();
    for lam in [rat(37, 5), rat(53, 7)] {
        for j in 0..=2 {
            let a = normal_sbo_check(&pair, j, &lam, 3).map_err(|e| e.to_string())?;
            ensure(a.ok(), || format!("normal m=({j}) at {lam}: {} failures", a.failed))?;
            let b = mult_embed_check(&pair, j, &lam, 3).map_err(|e| e.to_string())?;
            ensure(b.ok(), || format!("mult K=x2^{j} at {lam}: {} failures", b.failed))?;
        }
    }
    Ok("U(1,2) > U(1,1) x U(1), m <= (2), K in {1, x2, x2^2}".into())
}

// ---- 8 ----

fn c8_residues() -> Check {
    let uuu = PairSpec::new(PairId::UUU, &[1, 1, 1, 1], 0, 0).unwrap();
    let spu = PairSpec::new(PairId::SpU, &[1, 1], 0, 0).unwrap();
    // U-UU: q' - max(mu, 0) with q' = 1; Sp-U, s' = 1: floor(1/2) (mu integer) or ceil(1/2) (mu half-integer), minus max(0, ceil(mu))
    let cases = [(&uuu, int(0), 1u32), (&uuu, int(-1), 1), (&spu, int(0), 0), (&spu, rat(-1, 2), 1)];
    let mut n = 0;
    for (p, mu, expected) in cases {
        let lam0 = &mu - int((p.k + p.l) as i64);
        let got = pole_order(p, &lam0, 10).map_err(|e| e.to_string())?;
        ensure(got == expected, || format!("{} mu={mu}: pole order {got}, expected {expected}", p.label()))?;
        let fam = ResidueFamily::new(p, &mu).map_err(|e| e.to_string())?;
        for i in fam.i_min..=fam.i_max.max(fam.i_min) {
            let rep = residue_property_check(p, &mu, i, 3).map_err(|e| e.to_string())?;
            ensure(rep.vanishing_failed == 0, || format!("{} mu={mu} i={i}: nonzero on the smaller submodule", p.label()))?;
            ensure(rep.defined_failed == 0, || format!("{} mu={mu} i={i}: divergent on its domain", p.label()))?;
            ensure(rep.intertwine.failed == 0, || format!("{} mu={mu} i={i}: {} intertwining failures", p.label(), rep.intertwine.failed))?;
            n += 1;
        }
    }
    Ok(format!("4 families, {n} residues"))
}

// ---- 9 ----

fn run_cli(args: &[&str], threads: Option<&str>) -> (Vec<u8>, i32) {
    let mut c = Command::new(env!("CARGO_BIN_EXE_jsbo"));
    c.args(args);
    match threads {
        Some(t) => c.env("JSBO_THREADS", t),
        None => c.env_remove("JSBO_THREADS"),
    };
    let out = c.output().expect("run jsbo");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn c9_determinism() -> Check {
    let cmds: Vec<Vec<&str>> = vec![
        vec!["verify", "jordan", "--seed", "42"],
        vec!["verify", "jordan", "--domain", "sym:2", "--seed", "42", "--json"],
        vec!["verify", "expansion", "--degree", "4", "--json"],
        vec!["verify", "intertwine", "--pair", "sp-u", "--sizes", "1,1", "--max-degree", "3", "--seed", "42"],
        vec!["verify", "intertwine", "--pair", "tensor-sl2", "--k", "2", "--json"],
        vec!["verify", "intertwine", "--pair", "normal", "--sizes", "1,1,1", "--k", "1", "--lambda", "37/5"],
        vec!["residue", "--pair", "u-uu", "--sizes", "1,1,1,1", "--mu", "0", "--order", "1", "--json"],
        vec!["kernel-expand", "--domain", "sym:2", "--degree", "4", "--json"],
        vec!["operator", "emit", "--pair", "sp-u", "--sizes", "1,1", "--format", "json"],
        vec!["domains", "list"],
    ];
    for c in &cmds {
        let (a, ca) = run_cli(c, None);
        let (b, cb) = run_cli(c, Some("1"));
        let (d, cd) = run_cli(c, Some("3"));
        ensure(ca == 0 && cb == 0 && cd == 0, || format!("{c:?}: exit codes {ca} {cb} {cd}"))?;
        ensure(!a.is_empty() && a == b && b == d, || format!("{c:?}: output differs between runs"))?;
    }
    let (_, code) = run_cli(&["verify", "jordan", "--domain", "nope:1"], None);
    ensure(code == 2, || format!("bad domain exit code {code}"))?;
    Ok(format!("{} commands byte-identical across 3 runs and thread caps", cmds.len()))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Check)> = vec![
        ("Jordan identity suite", c1_jordan),
        ("kernel expansion", c2_expansion),
        ("Schur/Jack consistency", c3_schur),
        ("Lie calibration", c4_calibration),
        ("Rankin-Cohen", c5_rankin_cohen),
        ("holographic operators", c6_holographic),
        ("normal derivative and multiplication", c7_normal),
        ("residues", c8_residues),
        ("determinism", c9_determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let id = format!("{}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|s| *s == id || name.contains(s.as_str())) {
            continue;
        }
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        match r {
            Ok(d) => println!("criterion {id} PASS  {name}: {d}"),
            Err(d) => {
                failed += 1;
                println!("criterion {id} FAIL  {name}: {d}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
