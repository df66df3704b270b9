use std::cmp::Ordering;
use std::io::Read;

use serde_json::{json, Value};
use thiserror::Error;

use babel::apartment::{
    circumcenter, dist, dist2, enclosure_contains, locate, retract_tau, sector_contains, ApartmentError, Point, Sector,
};
use babel::hlf::{ls2_from_json, ls2_to_json, FieldError, Val2, ValBound, ValuedField, LS1, LS2};
use babel::lexring::{rational_to_json, sqrt_sum_cmp, LexError, LexPoly, LinLex, SqrtExpr};
use babel::render::{render_apartment, render_enclosure};
use babel::rootsystem::{root_datum, Phi, RootError};
use babel::sl2::{
    building_dist, bruhat_decompose, cartan_decompose, cell_family, cell_of, fixer_product_check, kapranov_decompose,
    label_point, paper_instance, residue_bruhat_compatible, residue_sl2, retract_rho, verify_cell_product_w2w2,
    KapranovPair, Mat2, MatrixSampler, Sl2Error, SL2,
};
use babel::suite::{criteria, figure4_omega, run_criterion, suite_ids, SuiteConfig};
use babel::weyl::{presentation_report_a1_level2, WeylError, WeylGroup};
use babel::Q;

use crate::{ApartmentOp, Cli, Cmd, FieldOp, Global, LexOp, RenderOp, Sl2Op, SuiteOp, WeylOp};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("precision exhausted: {0}")]
    Precision(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Precision(_) => 3,
        }
    }
}

macro_rules! input_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        }
    )*};
}
input_error!(LexError, ApartmentError, RootError, WeylError, std::io::Error);

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::PrecisionExhausted => CliError::Precision(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<Sl2Error> for CliError {
    fn from(e: Sl2Error) -> Self {
        if e.is_precision() {
            CliError::Precision(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

/// A report and whether it found no counterexample.
pub struct Outcome {
    pub value: Value,
    pub ok: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, ok: true }
    }

    fn check(value: Value, ok: bool) -> Self {
        Outcome { value, ok }
    }
}

type Res = Result<Outcome, CliError>;

/// JSON text, `@path`, or `-` for standard input.
fn read_json(arg: &str) -> Result<Value, CliError> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path)?
    } else {
        arg.to_string()
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("malformed JSON: {e}")))
}

/// `P1,P2` to the internal `(P2, P1)`.
pub fn parse_prec(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Input(format!("--prec expects P1,P2 with positive integers, got `{s}`"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let p1: i64 = a.trim().parse().map_err(|_| bad())?;
    let p2: i64 = b.trim().parse().map_err(|_| bad())?;
    if p1 <= 0 || p2 <= 0 {
        return Err(bad());
    }
    Ok((p2, p1))
}

fn phi(g: &Global) -> Result<Phi, CliError> {
    g.phi.parse::<Phi>().map_err(|e| CliError::Input(format!("--phi: {e}")))
}

fn group(g: &Global) -> Result<WeylGroup, CliError> {
    if g.n < 1 {
        return Err(CliError::Input("--n must be at least 1".into()));
    }
    Ok(WeylGroup::new(phi(g)?, g.n))
}

fn point(arg: &str, g: &WeylGroup) -> Result<Point<Q>, CliError> {
    let p = Point::from_json(&read_json(arg)?)?;
    if p.rank() != g.rank() || p.n() != g.n {
        return Err(CliError::Input(format!(
            "point has rank {} and level {}, expected rank {} and level {}",
            p.rank(),
            p.n(),
            g.rank(),
            g.n
        )));
    }
    Ok(p)
}

fn points(arg: &str, g: &WeylGroup) -> Result<Vec<Point<Q>>, CliError> {
    let v = read_json(arg)?;
    let arr = v.as_array().ok_or_else(|| CliError::Input("expected an array of points".into()))?;
    arr.iter()
        .map(|p| {
            let p = Point::from_json(p)?;
            if p.rank() != g.rank() || p.n() != g.n {
                return Err(CliError::Input("point does not match --phi/--n".into()));
            }
            Ok(p)
        })
        .collect()
}

fn matrix(arg: &str, g: &Global) -> Result<SL2, CliError> {
    let m = SL2::from_json(&read_json(arg)?, g.q, parse_prec(&g.prec)?)?;
    if !m.det_is_one() {
        return Err(CliError::Input("matrix does not have determinant 1".into()));
    }
    Ok(m)
}

fn series(arg: &str, g: &Global) -> Result<LS2, CliError> {
    Ok(ls2_from_json(&read_json(arg)?, g.q, parse_prec(&g.prec)?)?)
}

fn sampler(g: &Global) -> Result<MatrixSampler, CliError> {
    let (p2, p1) = parse_prec(&g.prec)?;
    babel::hlf::check_q(g.q)?;
    Ok(MatrixSampler::new(g.q, p2, p1))
}

fn ord(o: Ordering) -> Value {
    json!(match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    })
}

fn val2(v: Val2) -> Value {
    json!({"j": v.j, "i": v.i})
}

fn ls1_json(x: &LS1) -> Value {
    ls2_to_json(&LS2::embed(x))
}

fn mat_f1(m: &Mat2<LS1>) -> Value {
    json!([ls1_json(&m.a), ls1_json(&m.b), ls1_json(&m.c), ls1_json(&m.d)])
}

/// LinLex or LexPoly, as a polynomial, with the level it was given at.
fn lex_value(arg: &str) -> Result<(LexPoly<Q>, usize), CliError> {
    let v = read_json(arg)?;
    let is_poly = v.as_array().is_some_and(|a| a.first().is_some_and(Value::is_object) || a.is_empty());
    if is_poly {
        let p = LexPoly::from_json(&v)?;
        let n = p.level().max(1);
        Ok((p, n))
    } else {
        let l = LinLex::from_json(&v)?;
        Ok((l.to_poly(), l.n()))
    }
}

pub fn run(cli: &Cli) -> Res {
    let g = &cli.global;
    parse_prec(&g.prec)?;
    match &cli.cmd {
        Cmd::Lex { op } => lex(op),
        Cmd::Weyl { op } => weyl(op, g),
        Cmd::Apartment { op } => apartment(op, g),
        Cmd::Field { op } => field(op, g),
        Cmd::Sl2 { op } => sl2(op, g),
        Cmd::Render { op } => render(op, g),
        Cmd::Suite { op } => suite(op, g),
    }
}

fn lex(op: &LexOp) -> Res {
    match op {
        LexOp::Cmp { a, b } => {
            let ((a, _), (b, _)) = (lex_value(a)?, lex_value(b)?);
            Ok(Outcome::ok(json!({"order": ord(babel::lexring::lex_cmp(&a, &b))})))
        }
        LexOp::Add { a, b } => {
            let ((a, n), (b, m)) = (lex_value(a)?, lex_value(b)?);
            Ok(Outcome::ok(json!({"sum": (&a + &b).to_json(n.max(m))})))
        }
        LexOp::Mul { a, b } => {
            let ((a, n), (b, m)) = (lex_value(a)?, lex_value(b)?);
            Ok(Outcome::ok(json!({"product": (&a * &b).to_json(n.max(m))})))
        }
        LexOp::Sqrtcmp { a, b, c } => {
            let r = |s: &str| -> Result<SqrtExpr<Q>, CliError> { Ok(SqrtExpr::new(lex_value(s)?.0)?) };
            let o = sqrt_sum_cmp(&r(a)?, &r(b)?, &r(c)?)?;
            Ok(Outcome::ok(json!({"sqrt_a_plus_sqrt_b_vs_sqrt_c": ord(o)})))
        }
    }
}

fn weyl(op: &WeylOp, g: &Global) -> Res {
    match op {
        WeylOp::Nf { word } => Ok(Outcome::ok(group(g)?.eval_word(word)?.to_json())),
        WeylOp::Relations => {
            if phi(g)? != Phi::A1 || g.n != 2 {
                return Err(CliError::Input("relations are listed for --phi A1 --n 2".into()));
            }
            let r = presentation_report_a1_level2();
            let ok = r.all_hold();
            let rel: Vec<Value> = r.relations.iter().map(|(s, h)| json!({"relation": s, "holds": h})).collect();
            Ok(Outcome::check(json!({"relations": rel, "pass": ok}), ok))
        }
        WeylOp::Act { word, point: p } => {
            let w = group(g)?;
            let e = w.eval_word(word)?;
            let p = point(p, &w)?;
            Ok(Outcome::ok(json!({"element": e.to_json(), "image": w.act(&e, &p).to_json()})))
        }
    }
}

fn apartment(op: &ApartmentOp, g: &Global) -> Res {
    let w = group(g)?;
    let rd = &w.rd;
    match op {
        ApartmentOp::Locate { point: p } => {
            let p = point(p, &w)?;
            match locate(&w, &p) {
                Ok(l) => Ok(Outcome::ok(json!({
                    "result": "located",
                    "element": l.w.to_json(),
                    "representative": l.rep.iter().map(rational_to_json).collect::<Vec<_>>(),
                }))),
                Err(ApartmentError::NotInApartment) => Ok(Outcome::ok(json!({"result": "not-in-apartment"}))),
                Err(e) => Err(e.into()),
            }
        }
        ApartmentOp::Dist { p, q } => {
            let (p, q) = (point(p, &w)?, point(q, &w)?);
            let d2 = dist2(rd, &p, &q);
            let exact = dist(rd, &p, &q).as_linlex(g.n).map(|l| l.to_json());
            Ok(Outcome::ok(json!({"dist2": d2.to_json(g.n), "dist": exact})))
        }
        ApartmentOp::Retract { chamber, point: p } => {
            let c = w.eval_word(chamber)?;
            let p = point(p, &w)?;
            Ok(Outcome::ok(json!({"image": retract_tau(&w, &c, &p)?.to_json()})))
        }
        ApartmentOp::Enclosure { omega, z } => {
            let om = points(omega, &w)?;
            let z = point(z, &w)?;
            Ok(Outcome::ok(json!({"contains": enclosure_contains(rd, &om, &z)?})))
        }
        ApartmentOp::Sector { level, apex, z } => {
            let apex = point(apex, &w)?;
            if *level > g.n {
                return Err(CliError::Input(format!("--level {level} exceeds --n {}", g.n)));
            }
            let z = point(z, &w)?;
            Ok(Outcome::ok(json!({"contains": sector_contains(rd, &Sector::new(apex, *level), &z)})))
        }
        ApartmentOp::Circumcenter { points: ps } => {
            let ps = points(ps, &w)?;
            let c = circumcenter(rd, &ps)?;
            Ok(Outcome::ok(json!({"center": c.center.to_json(), "radius2": c.radius2.to_json(g.n)})))
        }
    }
}

fn field(op: &FieldOp, g: &Global) -> Res {
    match op {
        FieldOp::Val { x } => {
            let v = match series(x, g)?.val_bound() {
                ValBound::Exact(v) => json!({"exact": val2(v)}),
                ValBound::AtLeast(v) if v.i < -(1 << 40) => {
                    return Err(CliError::Precision(format!("valuation only known to lie at t2-level {} or above", v.j)))
                }
                ValBound::AtLeast(v) => return Err(CliError::Precision(format!("valuation only known to be at least {v}"))),
                ValBound::Infinite => json!("infinite"),
            };
            Ok(Outcome::ok(json!({"val": v})))
        }
        FieldOp::Inv { x } => Ok(Outcome::ok(json!({"inverse": ls2_to_json(&series(x, g)?.inv()?)}))),
        FieldOp::Residue { x } => Ok(Outcome::ok(json!({"residue": ls1_json(&series(x, g)?.residue_to_f1()?)}))),
        FieldOp::Member { x } => {
            let x = series(x, g)?;
            Ok(Outcome::ok(json!({"in_rank2_ring": x.in_of()?, "in_dvr": x.in_scr_of()?})))
        }
    }
}

fn sl2(op: &Sl2Op, g: &Global) -> Res {
    match op {
        Sl2Op::Bruhat { g: m } => {
            let m = matrix(m, g)?;
            let d = bruhat_decompose(&m)?;
            let ok = d.product().eq_to_precision(&m);
            Ok(Outcome::check(
                json!({
                    "b": d.b.to_json(), "n": d.n.to_json(), "b2": d.b2.to_json(),
                    "label": d.label.to_json(), "round_trip": ok,
                }),
                ok,
            ))
        }
        Sl2Op::Cartan { g: m } => {
            let m = matrix(m, g)?;
            let c = cartan_decompose(&m)?;
            let ok = c.product().eq_to_precision(&m);
            Ok(Outcome::check(
                json!({"k": c.k.to_json(), "m": val2(c.m), "k2": c.k2.to_json(), "round_trip": ok}),
                ok,
            ))
        }
        Sl2Op::Kapranov { pair, g: m } => {
            let pair: KapranovPair = pair.parse()?;
            let m = matrix(m, g)?;
            let k = kapranov_decompose(&m, pair)?;
            let ok = k.product().eq_to_precision(&m);
            Ok(Outcome::check(
                json!({
                    "pair": format!("{pair:?}"), "left": k.left.to_json(), "n": k.n.to_json(),
                    "right": k.right.to_json(), "round_trip": ok,
                }),
                ok,
            ))
        }
        Sl2Op::Cell { g: m } => {
            let l = cell_of(&matrix(m, g)?)?;
            let fam = cell_family(&l).map(|f| f.to_string());
            Ok(Outcome::ok(json!({"label": l.to_json(), "point": label_point(&l).to_json(), "family": fam})))
        }
        Sl2Op::Cellprod => {
            let r = verify_cell_product_w2w2(&sampler(g)?, g.samples.unwrap_or(500), g.seed)?;
            let ok = r.samples_pass() && r.witnesses_pass() && r.precision_failures == 0;
            Ok(Outcome::check(json!({"report": r, "pass": ok}), ok))
        }
        Sl2Op::Dist { g: a, h } => {
            let d = building_dist(&matrix(a, g)?, &matrix(h, g)?)?;
            Ok(Outcome::ok(json!({"dist": d.to_json()})))
        }
        Sl2Op::Rho { g: a, h } => {
            let a = matrix(a, g)?;
            match h {
                None => Ok(Outcome::ok(json!({"rho": retract_rho(&a)?.to_json()}))),
                Some(h) => {
                    let r = babel::suite::rho_report(&a, &matrix(h, g)?)?;
                    let ok = r["decreasing"] == true;
                    Ok(Outcome::check(r, ok))
                }
            }
        }
        Sl2Op::Residue { g: m } => {
            let m = matrix(m, g)?;
            let r = residue_sl2(&m)?;
            let c = residue_bruhat_compatible(&m)?;
            let ok = r.det_is_one() && c.pass();
            Ok(Outcome::check(json!({"residue": mat_f1(&r), "compatibility": c, "pass": ok}), ok))
        }
        Sl2Op::Fixer { points: ps } => {
            let pts = match ps {
                None => paper_instance(),
                Some(s) => {
                    let v = read_json(s)?;
                    let parsed: Vec<(i64, i64)> = serde_json::from_value(v)
                        .map_err(|e| CliError::Input(format!("expected [[j,i],...]: {e}")))?;
                    let v: Vec<Val2> = parsed.into_iter().map(|(j, i)| Val2::new(j, i)).collect();
                    v.try_into().map_err(|_| CliError::Input("expected four valuations".into()))?
                }
            };
            let r = fixer_product_check(&sampler(g)?, pts, g.samples.unwrap_or(200), g.seed)?;
            let ok = r.pass();
            Ok(Outcome::check(json!({"report": r, "pass": ok}), ok))
        }
    }
}

fn render(op: &RenderOp, g: &Global) -> Res {
    let (svg, out) = match op {
        RenderOp::Apartment { out } => (render_apartment(phi(g)?), out),
        RenderOp::Enclosure { out, omega } => {
            let w = WeylGroup::new(Phi::A2, 2);
            let om = match omega {
                Some(s) => points(s, &w)?,
                None => figure4_omega(),
            };
            (render_enclosure(&root_datum(Phi::A2), &om)?, out)
        }
    };
    std::fs::write(out, &svg)?;
    Ok(Outcome::ok(json!({"written": out.display().to_string(), "bytes": svg.len()})))
}

fn suite(op: &SuiteOp, g: &Global) -> Res {
    match op {
        SuiteOp::List => {
            let names = [
                "acceptance", "weyl", "metric", "apartment", "decomp", "bruhat", "cartan", "kapranov", "cellprod",
                "retraction", "residue", "enclosure", "circumcenter", "fixer",
            ];
            let list: Vec<Value> = names.iter().map(|n| json!({"name": n, "criteria": suite_ids(n)})).collect();
            Ok(Outcome::ok(json!(list)))
        }
        SuiteOp::Run { name, timings } => {
            let ids = suite_ids(name).ok_or_else(|| CliError::Input(format!("unknown suite `{name}`")))?;
            babel::hlf::check_q(g.q)?;
            let cfg = SuiteConfig { seed: g.seed, samples: g.samples, q: g.q, prec: parse_prec(&g.prec)? };
            let mut all = true;
            let mut out = Vec::new();
            for c in criteria().iter().filter(|c| ids.contains(&c.id)) {
                let r = run_criterion(c, &cfg);
                eprintln!("{}", r.line());
                // Without timings the verdict ignores the clock, so reports are reproducible.
                let pass = if *timings { r.pass } else { r.holds };
                all &= pass;
                let mut v = json!({"id": r.id, "name": r.name, "pass": pass, "detail": r.detail});
                if *timings {
                    v["elapsed_ms"] = json!(r.elapsed_ms);
                    v["limit_ms"] = json!(r.limit_ms);
                }
                out.push(v);
            }
            let (p2, p1) = cfg.prec;
            Ok(Outcome::check(
                json!({
                    "suite": name,
                    "config": {"seed": cfg.seed, "samples": cfg.samples, "q": cfg.q, "prec": [p1, p2]},
                    "criteria": out,
                    "pass": all,
                }),
                all,
            ))
        }
    }
}
