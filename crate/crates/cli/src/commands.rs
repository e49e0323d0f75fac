use rayon::prelude::*;
use serde_json::{json, Value};

use jsbo::exact::{default_param, fmt_rat, parse_rat, poly_json, rat, ParamEnv, Partition, Rational};
use jsbo::expansion::expand_h_power;
use jsbo::jordan::verify::jordan_suite;
use jsbo::jordan::{Domain, Kind};
use jsbo::lie::IntertwineReport;
use jsbo::residue::{residue_operator, residue_property_check, ResidueFamily};
use jsbo::sbo::normal::{mult_embed_check, normal_sbo_check, NormalPair};
use jsbo::sbo::tensor::{mu_param, tensor_check, tensor_check_at};
use jsbo::sbo::{holographic_intertwine, PairId, PairSpec, PolyOperator, TensorSpec};
use jsbo::spaces::{jack_phi_tilde, repkernel_k};

use crate::output::{json as pretty, usage, Outcome, Usage};
use crate::{CmdResult, EmitArgs, ExpansionArgs, Format, FormatArgs, IntertwineArgs, JordanArgs, KernelArgs, KernelExpandArgs, PairArgs, ResidueArgs, SchurArgs};

/// Generic weights used when a check cannot run with a symbolic parameter.
pub const GENERIC_LAMBDAS: [(i64, i64); 3] = [(37, 5), (53, 7), (71, 11)];
/// Second weights paired with [`GENERIC_LAMBDAS`] for tensor products.
pub const GENERIC_MUS: [(i64, i64); 3] = [(11, 3), (29, 6), (43, 9)];

pub const DESK: [Kind; 4] = [Kind::Sym(2), Kind::Mat(2, 2), Kind::Skew(4), Kind::Quadric(3)];

fn pool() -> rayon::ThreadPool {
    let n = std::env::var("JSBO_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0).unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool")
}

/// Runs `f` over `items` on the capped pool; results keep the input order.
fn fan_out<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    pool().install(|| items.par_iter().map(&f).collect())
}

fn kind(s: &str) -> Result<Kind, Usage> {
    Ok(Kind::parse(s)?)
}

fn kinds(s: &str) -> Result<Vec<Kind>, Usage> {
    if s == "desk" {
        return Ok(DESK.to_vec());
    }
    s.split(';').map(kind).collect()
}

fn rational(s: &str) -> Result<Rational, Usage> {
    Ok(parse_rat(s)?)
}

/// `None` for `symbolic`.
fn weight(s: &str) -> Result<Option<Rational>, Usage> {
    if s == "symbolic" {
        Ok(None)
    } else {
        rational(s).map(Some)
    }
}

fn sizes(s: &str) -> Result<Vec<usize>, Usage> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().map_err(|_| usage("parse", format!("bad size list {s:?}"))))
        .collect()
}

fn partition(s: &str) -> Result<Partition, Usage> {
    Ok(Partition::parse(s)?)
}

// ---- domains ----

fn formula(k: &str) -> Value {
    match k {
        "sym" => json!({"kind": "sym:r", "group": "Sp(r,R)", "r": "r", "n": "r(r+1)/2", "d": "1", "b": "0", "p": "r+1", "eps": "1"}),
        "mat" => json!({"kind": "mat:qxs", "group": "U(q,s)", "r": "min(q,s)", "n": "qs", "d": "2", "b": "|s-q|", "p": "q+s", "eps": "1"}),
        "skew" => json!({"kind": "skew:s", "group": "SO*(2s)", "r": "floor(s/2)", "n": "s(s-1)/2", "d": "4", "b": "0 or 2", "p": "2(s-1)", "eps": "2"}),
        _ => json!({"kind": "quadric:n", "group": "SO0(2,n)", "r": "2", "n": "n", "d": "n-2", "b": "0", "p": "n", "eps": "1"}),
    }
}

pub fn domains_list(a: &FormatArgs) -> CmdResult {
    let mut rows = Vec::new();
    for (tag, sample) in [("sym", Kind::Sym(2)), ("mat", Kind::Mat(2, 3)), ("skew", Kind::Skew(5)), ("quadric", Kind::Quadric(3))] {
        let c = Domain::standard(sample, "x").constants();
        rows.push(json!({"formula": formula(tag), "example": {"domain": sample.to_string(), "constants": c}}));
    }
    let text = match a.get(Format::Text) {
        Format::Json => pretty(&json!({ "kinds": rows })),
        _ => {
            let mut s = format!("{:<12} {:<9} {:<10} {:<10} {:<5} {:<7} {:<7} {:<4}\n", "kind", "group", "r", "n", "d", "b", "p", "eps");
            for r in &rows {
                let f = &r["formula"];
                let g = |k: &str| f[k].as_str().unwrap_or("").to_string();
                s.push_str(&format!("{:<12} {:<9} {:<10} {:<10} {:<5} {:<7} {:<7} {:<4}\n", g("kind"), g("group"), g("r"), g("n"), g("d"), g("b"), g("p"), g("eps")));
            }
            s.push('\n');
            for r in &rows {
                let c = &r["example"]["constants"];
                s.push_str(&format!(
                    "{:<12} r={} n={} d={} b={} p={} eps={}\n",
                    r["example"]["domain"].as_str().unwrap_or(""),
                    c["r"],
                    c["n"],
                    c["d"].as_str().unwrap_or(""),
                    c["b"].as_str().unwrap_or(""),
                    c["p"].as_str().unwrap_or(""),
                    c["eps"].as_str().unwrap_or("")
                ));
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

// ---- spaces ----

pub fn kernel_expand(a: &KernelExpandArgs) -> CmdResult {
    let k = kind(&a.domain)?;
    let e = expand_h_power(&Domain::standard(k, "x"), a.degree)?;
    let lam = a.lambda.as_deref().map(rational).transpose()?;
    let checks = serde_json::to_value(&e.checks).expect("serializable");
    let text = match a.fmt.get(Format::Text) {
        Format::Json => {
            let series = match &lam {
                Some(l) => json!({"lambda": fmt_rat(l), "value": poly_json(&e.structured.eval(l)?)}),
                None => e.structured.to_json(),
            };
            pretty(&json!({"domain": k.to_string(), "degree": a.degree, "series": series, "checks": checks, "agree": e.agree()}))
        }
        f => {
            let mut s = format!("h^(-lambda) on {k} through bidegree ({0},{0})\n", a.degree);
            for t in &e.structured.terms {
                let c = match &lam {
                    Some(l) => fmt_rat(&t.coeff.eval_at(l)?),
                    None if f == Format::Latex => t.coeff.to_latex(),
                    None => t.coeff.to_string(),
                };
                s.push_str(&format!("m={} coeff={} kernel_terms={}\n", t.m, c, t.poly.len()));
            }
            s.push_str(&format!("direct vs structured: {}\n", if e.agree() { "agree" } else { "DISAGREE" }));
            s
        }
    };
    Ok(Outcome::verdict(text, e.agree()))
}

pub fn schur(a: &SchurArgs) -> CmdResult {
    let d = rational(&a.d)?;
    let m = partition(&a.m)?;
    let r = a.r.unwrap_or(m.parts().len());
    if m.trimmed().len() > r {
        return Err(usage("shape", format!("partition {m} has more than {r} parts")));
    }
    let m = Partition::new(m.parts().iter().copied().chain(std::iter::repeat(0)).take(r).collect())?;
    let phi = jack_phi_tilde(&d, r, &m);
    let text = match a.fmt.get(Format::Json) {
        Format::Json => pretty(&json!({"d": fmt_rat(&d), "r": r, "m": m.parts(), "powersum_terms": phi.terms_json()})),
        _ => phi.poly().to_text(),
    };
    Ok(Outcome::ok(text))
}

pub fn kernel(a: &KernelArgs) -> CmdResult {
    let k = kind(&a.domain)?;
    let m = partition(&a.m)?;
    let km = repkernel_k(k, &m, "x", "y")?;
    let text = match a.fmt.get(Format::Json) {
        Format::Json => pretty(&poly_json(&km)),
        _ => km.to_text(),
    };
    Ok(Outcome::ok(text))
}

// ---- operators ----

enum Target {
    Tensor(TensorSpec),
    Holo(PairSpec),
    Normal(NormalPair, bool),
}

fn target(p: &PairArgs) -> Result<Target, Usage> {
    let Some(pair) = &p.pair else {
        return Err(usage("missing", "--pair is required"));
    };
    let t = pair.to_ascii_lowercase();
    let tensor = |k: Kind| -> Result<Target, Usage> { Ok(Target::Tensor(TensorSpec::new(k, p.k)?)) };
    match t.as_str() {
        "tensor-sl2" => tensor(Kind::Mat(1, 1)),
        "tensor-sp2" => tensor(Kind::Sym(2)),
        "tensor" => match &p.domain {
            Some(d) => tensor(kind(d)?),
            None => Err(usage("missing", "tensor needs --domain")),
        },
        "normal" | "mult" => {
            let s = sizes(&p.sizes)?;
            let [q, s1, s2] = s[..] else {
                return Err(usage("shape", "normal pairs take --sizes q,s1,s2"));
            };
            Ok(Target::Normal(NormalPair::new(q, s1, s2)?, t == "mult"))
        }
        _ => Ok(Target::Holo(PairSpec::new(PairId::parse(&t)?, &sizes(&p.sizes)?, p.k, p.l)?)),
    }
}

fn env(lam: &Option<Rational>, mu: &Option<Rational>) -> ParamEnv {
    let mut e = ParamEnv::new();
    if let Some(l) = lam {
        e.insert(default_param(), l.clone());
    }
    if let Some(m) = mu {
        e.insert(mu_param(), m.clone());
    }
    e
}

fn render_operator(op: &PolyOperator, f: Format, header: Value) -> String {
    match f {
        Format::Json => {
            let mut j = op.to_json();
            if let (Value::Object(o), Value::Object(h)) = (&mut j, header) {
                for (k, v) in h {
                    o.insert(k, v);
                }
            }
            pretty(&j)
        }
        Format::Latex => op.to_latex(),
        Format::Text => {
            let mut s = String::new();
            for t in op.terms() {
                if !t.coeff.is_zero() {
                    s.push_str(&format!("{}  mult {}  diff {}\n", t.coeff, t.mult, t.diff));
                }
            }
            s
        }
    }
}

pub fn operator_emit(a: &EmitArgs) -> CmdResult {
    let lam = weight(&a.lambda)?;
    let mu = weight(&a.mu)?;
    let (op, label, needs_mu) = match target(&a.pair)? {
        Target::Tensor(t) => (jsbo::sbo::rc_tensor(&t)?, format!("tensor {} k={}", t.kind, t.k), true),
        Target::Holo(p) => (p.closed_form(a.budget)?, p.label(), false),
        Target::Normal(..) => return Err(usage("unsupported", "normal and mult operators are checked with `verify intertwine`")),
    };
    let op = match (&lam, &mu) {
        (None, None) => op,
        (Some(_), None) if needs_mu => return Err(usage("missing", "give both --lambda and --mu, or neither")),
        (None, Some(_)) => return Err(usage("missing", "--mu needs --lambda")),
        _ => op.specialize(&env(&lam, &mu))?,
    };
    let header = json!({"operator": label, "lambda": lam.as_ref().map(fmt_rat), "mu": if needs_mu { mu.as_ref().map(fmt_rat) } else { None }});
    Ok(Outcome::ok(render_operator(&op, a.fmt.get(Format::Json), header)))
}

// ---- verification ----

#[derive(Clone, Debug)]
pub struct Case {
    pub name: String,
    target: CaseTarget,
    pub lambda: Option<Rational>,
    pub mu: Option<Rational>,
    pub degree: u32,
}

#[derive(Clone, Debug)]
enum CaseTarget {
    Tensor(TensorSpec),
    Holo(PairSpec),
    Normal(NormalPair, u32, bool),
}

impl Case {
    fn run(&self) -> Result<IntertwineReport, jsbo::Error> {
        match (&self.target, &self.lambda, &self.mu) {
            (CaseTarget::Tensor(t), None, None) => tensor_check(t, self.degree),
            (CaseTarget::Tensor(t), Some(l), Some(m)) => tensor_check_at(t, l, m, self.degree),
            (CaseTarget::Holo(p), Some(l), _) => holographic_intertwine(p, l, self.degree),
            (CaseTarget::Normal(p, j, false), Some(l), _) => normal_sbo_check(p, *j, l, self.degree),
            (CaseTarget::Normal(p, j, true), Some(l), _) => mult_embed_check(p, *j, l, self.degree),
            _ => Err(jsbo::Error::Unbound("weight".into())),
        }
    }
}

fn generic(i: usize) -> (Rational, Rational) {
    let (a, b) = GENERIC_LAMBDAS[i];
    let (c, d) = GENERIC_MUS[i];
    (rat(a, b), rat(c, d))
}

/// Cases for one target: symbolic where supported, else the three generic weights.
fn cases_for(t: &Target, name: &str, lam: Option<Rational>, mu: Option<Rational>, n: u32, j: u32) -> Vec<Case> {
    let mk = |target: CaseTarget, lambda: Option<Rational>, mu: Option<Rational>| Case { name: name.to_string(), target, lambda, mu, degree: n };
    let ct = match t {
        Target::Tensor(s) => CaseTarget::Tensor(s.clone()),
        Target::Holo(p) => CaseTarget::Holo(p.clone()),
        Target::Normal(p, m) => CaseTarget::Normal(*p, j, *m),
    };
    match (t, lam, mu) {
        (Target::Tensor(s), None, None) if s.kind.rank() == 1 => vec![mk(ct, None, None)],
        (Target::Tensor(_), Some(l), Some(m)) => vec![mk(ct, Some(l), Some(m))],
        (Target::Tensor(_), ..) => (0..3).map(|i| generic(i)).map(|(l, m)| mk(ct.clone(), Some(l), Some(m))).collect(),
        (_, Some(l), _) => vec![mk(ct, Some(l), None)],
        (_, None, _) => (0..3).map(|i| mk(ct.clone(), Some(generic(i).0), None)).collect(),
    }
}

/// The intertwining catalogue: every listed pair, size and weight.
pub fn catalogue(n: u32) -> Vec<Case> {
    let mut out = Vec::new();
    let mut add = |t: Target, j: u32| {
        let name = match &t {
            Target::Tensor(s) => format!("tensor {} k={}", s.kind, s.k),
            Target::Holo(p) => p.label(),
            Target::Normal(p, m) => format!("{} U({},{}+{}) j={j}", if *m { "mult" } else { "normal" }, p.q, p.s1, p.s2),
        };
        out.extend(cases_for(&t, &name, None, None, n, j));
    };
    for k in 0..=3 {
        add(Target::Tensor(TensorSpec::new(Kind::Mat(1, 1), k).unwrap()), 0);
    }
    for k in 0..=2 {
        add(Target::Tensor(TensorSpec::new(Kind::Sym(2), k).unwrap()), 0);
    }
    let holo = |id, s: &[usize], k, l| Target::Holo(PairSpec::new(id, s, k, l).unwrap());
    for k in 0..=2 {
        add(holo(PairId::SpSpSp, &[1, 1], k, 0), 0);
    }
    for k in 0..=2 {
        for l in 0..=2 {
            add(holo(PairId::UUU, &[1, 1, 1, 1], k, l), 0);
        }
    }
    for k in 0..=1 {
        add(holo(PairId::SostSostSost, &[2, 2], k, 0), 0);
    }
    add(holo(PairId::SpU, &[1, 1], 0, 0), 0);
    add(holo(PairId::SostU, &[2, 2], 0, 0), 0);
    add(holo(PairId::SuSp, &[2], 0, 0), 0);
    add(holo(PairId::SuSost, &[2], 0, 0), 0);
    add(holo(PairId::SuSost, &[3], 0, 0), 0);
    for k in 0..=1 {
        add(holo(PairId::Su33Sost6, &[], k, 0), 0);
    }
    for k in 0..=2 {
        add(holo(PairId::SoSoSo, &[2, 2], k, 0), 0);
    }
    let np = NormalPair::new(1, 1, 1).unwrap();
    for j in 0..=2 {
        add(Target::Normal(np, false), j);
        add(Target::Normal(np, true), j);
    }
    out
}

fn report_json(c: &Case, r: &Result<IntertwineReport, jsbo::Error>) -> Value {
    let w = |x: &Option<Rational>| x.as_ref().map(fmt_rat).unwrap_or_else(|| "symbolic".into());
    let mut j = json!({"case": c.name, "lambda": w(&c.lambda), "max_degree": c.degree});
    if c.mu.is_some() || matches!(c.target, CaseTarget::Tensor(_)) {
        j["mu"] = json!(w(&c.mu));
    }
    match r {
        Ok(rep) => {
            j["checked"] = json!(rep.checked);
            j["failed"] = json!(rep.failed);
            j["passed"] = json!(rep.ok());
            j["failures"] = serde_json::to_value(&rep.failures).expect("serializable");
        }
        Err(e) => {
            j["passed"] = json!(false);
            j["error"] = json!(e.to_string());
        }
    }
    j
}

fn run_cases(cases: &[Case], seed: u64, f: Format) -> Outcome {
    let results = fan_out(cases, |c| c.run());
    let rows: Vec<Value> = cases.iter().zip(&results).map(|(c, r)| report_json(c, r)).collect();
    let passed = rows.iter().all(|r| r["passed"] == json!(true));
    let text = match f {
        Format::Json => pretty(&json!({"seed": seed, "passed": passed, "cases": rows})),
        _ => {
            let mut s = String::new();
            for r in &rows {
                let mut w = format!("lambda={}", r["lambda"].as_str().unwrap_or(""));
                if let Some(m) = r.get("mu") {
                    w.push_str(&format!(" mu={}", m.as_str().unwrap_or("")));
                }
                let status = if r["passed"] == json!(true) { "PASS" } else { "FAIL" };
                let detail = match r.get("error") {
                    Some(e) => format!("error: {}", e.as_str().unwrap_or("")),
                    None => format!("{}/{} failed", r["failed"], r["checked"]),
                };
                s.push_str(&format!("{status} {} {w} degree<={} {detail}\n", r["case"].as_str().unwrap_or(""), r["max_degree"]));
            }
            s.push_str(&format!("seed {seed}: {}\n", if passed { "all passed" } else { "failures" }));
            s
        }
    };
    Outcome::verdict(text, passed)
}

pub fn verify_intertwine(a: &IntertwineArgs) -> CmdResult {
    let f = a.fmt.get(Format::Text);
    if a.all {
        if a.pair.pair.is_some() {
            return Err(usage("conflict", "--all runs the catalogue; drop --pair"));
        }
        return Ok(run_cases(&catalogue(a.max_degree), a.seed, f));
    }
    let lam = weight(&a.lambda)?;
    let mu = weight(&a.mu)?;
    let t = target(&a.pair)?;
    if let Target::Tensor(s) = &t {
        if lam.is_some() != mu.is_some() {
            return Err(usage("missing", "give both --lambda and --mu, or neither"));
        }
        if !s.kind.is_tube() {
            return Err(usage("unsupported", format!("intertwining check for {}", s.kind)));
        }
    }
    let name = match &t {
        Target::Tensor(s) => format!("tensor {} k={}", s.kind, s.k),
        Target::Holo(p) => p.label(),
        Target::Normal(p, m) => format!("{} U({},{}+{}) j={}", if *m { "mult" } else { "normal" }, p.q, p.s1, p.s2, a.pair.k),
    };
    let cases = cases_for(&t, &name, lam, mu, a.max_degree, a.pair.k);
    Ok(run_cases(&cases, a.seed, f))
}

pub fn verify_jordan(a: &JordanArgs) -> CmdResult {
    let ks = kinds(&a.domain)?;
    let results = fan_out(&ks, |k| jordan_suite(*k, a.seed, a.points));
    let mut reports = Vec::new();
    for r in results {
        reports.extend(r?);
    }
    let passed = reports.iter().all(|r| r.ok());
    let text = match a.fmt.get(Format::Text) {
        Format::Json => pretty(&json!({"seed": a.seed, "points": a.points, "passed": passed, "reports": reports})),
        _ => {
            let mut s = String::new();
            for r in &reports {
                let status = if r.ok() { "PASS" } else { "FAIL" };
                s.push_str(&format!("{status} {:<10} {:<28} passed={} failed={} skipped={}\n", r.domain, r.identity, r.passed, r.failed, r.skipped));
                for f in &r.failures {
                    s.push_str(&format!("    {f}\n"));
                }
            }
            s.push_str(&format!("seed {}: {}\n", a.seed, if passed { "all passed" } else { "failures" }));
            s
        }
    };
    Ok(Outcome::verdict(text, passed))
}

pub fn verify_expansion(a: &ExpansionArgs) -> CmdResult {
    let ks = kinds(&a.domain)?;
    let results = fan_out(&ks, |k| expand_h_power(&Domain::standard(*k, "x"), a.degree));
    let mut rows = Vec::new();
    for (k, r) in ks.iter().zip(results) {
        let e = r?;
        rows.push(json!({"domain": k.to_string(), "degree": a.degree, "agree": e.agree(), "checks": e.checks}));
    }
    let passed = rows.iter().all(|r| r["agree"] == json!(true));
    let text = match a.fmt.get(Format::Text) {
        Format::Json => pretty(&json!({"passed": passed, "domains": rows})),
        _ => {
            let mut s = String::new();
            for r in &rows {
                let status = if r["agree"] == json!(true) { "PASS" } else { "FAIL" };
                let comps: u64 = r["checks"].as_array().map(|c| c.iter().filter_map(|x| x["components"].as_u64()).sum()).unwrap_or(0);
                s.push_str(&format!("{status} {} degree<={} components={comps}\n", r["domain"].as_str().unwrap_or(""), a.degree));
            }
            s
        }
    };
    Ok(Outcome::verdict(text, passed))
}

// ---- residues ----

pub fn residue(a: &ResidueArgs) -> CmdResult {
    let pair = PairSpec::new(PairId::parse(&a.pair)?, &sizes(&a.sizes)?, a.k, a.l)?;
    let mu = rational(&a.mu)?;
    let fam = ResidueFamily::new(&pair, &mu)?;
    let indices: Vec<i64> = match a.order {
        Some(j) => vec![fam.shift + j],
        None => (fam.i_min..=fam.i_max.max(fam.i_min)).collect(),
    };
    let mut rows = Vec::new();
    let mut passed = true;
    for i in indices {
        let rep = residue_property_check(&pair, &mu, i, a.max_degree)?;
        let res = residue_operator(&pair, &fam.lambda0, rep.order, a.max_degree + 1)?;
        passed &= rep.ok();
        rows.push(json!({
            "index": i,
            "order": rep.order,
            "passed": rep.ok(),
            "pole_order": rep.pole_order,
            "defined": {"checked": rep.defined_checked, "failed": rep.defined_failed},
            "vanishing": {"checked": rep.vanishing_checked, "failed": rep.vanishing_failed},
            "intertwine": rep.intertwine,
            "operator": res.op.to_json(),
            "divergent_terms": res.divergent.blocks.len(),
        }));
    }
    let family = serde_json::to_value(&fam).expect("serializable");
    let text = match a.fmt.get(Format::Text) {
        Format::Json => pretty(&json!({"family": family, "max_degree": a.max_degree, "passed": passed, "residues": rows})),
        _ => {
            let mut s = format!(
                "{} mu={} lambda0={} expected pole order {}\n",
                fam.pair,
                fmt_rat(&fam.mu),
                fmt_rat(&fam.lambda0),
                fam.expected_pole_order
            );
            for r in &rows {
                let status = if r["passed"] == json!(true) { "PASS" } else { "FAIL" };
                s.push_str(&format!(
                    "{status} i={} order={} pole_order={} vanishing {}/{} failed, intertwine {}/{} failed\n",
                    r["index"], r["order"], r["pole_order"], r["vanishing"]["failed"], r["vanishing"]["checked"], r["intertwine"]["failed"], r["intertwine"]["checked"]
                ));
            }
            s
        }
    };
    Ok(Outcome::verdict(text, passed))
}
