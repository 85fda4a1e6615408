//! Subcommands other than `verify`. Each returns text, JSON and (where a
//! table makes sense) CSV, plus a status for the exit code.

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use skdv_algebra::{parse_poly, Q};
use skdv_core::dynamics::{apply_phi, eval_invariants, phi_vars, AffinePoint4};
use skdv_core::{CoreError, Result};
use skdv_degree::{phi_degree_sequence, psi_degree_sequence, quadratic_fit};
use skdv_invariants::{find_invariants, i1_class, i2_class, Ansatz, ClassConstraint, FinderConfig, InvariantReport};
use skdv_picard::growth::{matches_published_reading, PUBLISHED_JORDAN, PUBLISHED_READING};
use skdv_picard::{build_action_matrix, growth_class, predicted_degrees, ActionMatrix};
use skdv_tower::valuation::GermField;
use skdv_tower::{sampled, symbolic, DivisorClass, Hypersurface, Valuator};
use skdv_tracker::{preset, preset_names, track, verify as verify_trace};

use crate::config::{parse_q, show_q, Settings};
use crate::report::Status;
use crate::verify::valuator;

pub struct Output {
    pub text: String,
    pub json: Value,
    pub csv: Option<String>,
    pub status: Status,
}

impl Output {
    fn new(text: String, json: Value, csv: Option<String>, status: Status) -> Self {
        Output { text, json, csv, status }
    }
}

/// Wraps a payload with the run metadata every report carries.
pub fn envelope(command: &str, claim: &str, s: &Settings, start: Instant, body: impl Serialize) -> Value {
    json!({
        "command": command,
        "claim": claim,
        "seed": s.seed,
        "version": env!("CARGO_PKG_VERSION"),
        "elapsed_ms": start.elapsed().as_millis() as u64,
        "result": body,
    })
}

fn status_of(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// Parses `a,b,c,d` into a point.
pub fn parse_point(s: &str) -> Result<[Q; 4]> {
    let v: Vec<Q> = s.split(',').map(parse_q).collect::<Result<_>>()?;
    v.try_into().map_err(|_| CoreError::Invalid(format!("expected four coordinates, got {s}")))
}

#[derive(Serialize)]
struct OrbitRow {
    step: usize,
    x: [String; 4],
    i1: String,
    i2: String,
    drift: bool,
}

pub fn iterate(point: [Q; 4], h: Q, n: usize, s: &Settings) -> Output {
    let start = Instant::now();
    let mut p = AffinePoint4::new(point, h.clone());
    let i0 = eval_invariants(&p);
    let mut rows = Vec::new();
    let mut stop = None;
    for step in 0..=n {
        let (a, b) = eval_invariants(&p);
        let drift = (a.clone(), b.clone()) != i0;
        rows.push(OrbitRow { step, x: p.x.clone().map(|c| show_q(&c)), i1: show_q(&a), i2: show_q(&b), drift });
        if step == n {
            break;
        }
        match apply_phi(&p) {
            Ok(q) => p = q,
            Err(e) => {
                stop = Some(format!("step {}: {e}", step + 1));
                break;
            }
        }
    }
    let mut text = format!("orbit of phi, h = {}\n", show_q(&h));
    let mut csv = String::from("step,x0,x1,x2,x3,I1,I2,drift\n");
    for r in &rows {
        text.push_str(&format!("{:>3}  ({})  I1 = {}  I2 = {}{}\n", r.step, r.x.join(", "), r.i1, r.i2, if r.drift { "  DRIFT" } else { "" }));
        csv.push_str(&format!("{},{},{},{},{}\n", r.step, r.x.join(","), r.i1, r.i2, r.drift));
    }
    if let Some(e) = &stop {
        text.push_str(&format!("orbit truncated: {e}\n"));
    }
    let ok = rows.iter().all(|r| !r.drift);
    let json = envelope(
        "iterate",
        "I1 and I2 are constant along the orbit",
        s,
        start,
        json!({ "h": show_q(&h), "rows": rows, "truncated": stop }),
    );
    Output::new(text, json, Some(csv), status_of(ok))
}

#[derive(Serialize)]
struct DegreeRow {
    n: usize,
    d_a: usize,
    d_b: usize,
    predicted_a: i64,
    predicted_b: i64,
    ha: (usize, usize),
    hb: (usize, usize),
    predicted_ha: (i64, i64),
    predicted_hb: (i64, i64),
    lines_agree: bool,
    r#match: bool,
}

pub fn degrees(s: &Settings) -> Result<Output> {
    let start = Instant::now();
    let cfg = crate::verify::degree_config(s);
    let measured = phi_degree_sequence(s.n_max, &cfg)?;
    let predicted = predicted_degrees(&ActionMatrix::from_published(), s.n_max);
    let rows: Vec<DegreeRow> = measured
        .iter()
        .zip(&predicted)
        .map(|(d, p)| {
            let (da, db) = d.bidegree();
            let pa = p.0 .0.max(p.1 .0);
            let pb = p.0 .1.max(p.1 .1);
            let m = d.ha == (p.0 .0 as usize, p.0 .1 as usize) && d.hb == (p.1 .0 as usize, p.1 .1 as usize);
            DegreeRow {
                n: d.n,
                d_a: da,
                d_b: db,
                predicted_a: pa,
                predicted_b: pb,
                ha: d.ha,
                hb: d.hb,
                predicted_ha: p.0,
                predicted_hb: p.1,
                lines_agree: d.agree,
                r#match: m,
            }
        })
        .collect();
    let mut text = format!("bidegrees of phi^n on P2xP2 ({} lines, h = {})\n", s.trials, show_q(&cfg.h_value()));
    text.push_str("  n   (phi^n)*Ha   predicted   (phi^n)*Hb   predicted   match\n");
    let mut csv = String::from("n,d_a,d_b,predicted_a,predicted_b,match\n");
    for r in &rows {
        text.push_str(&format!(
            "{:>3}   {:>10}   {:>9}   {:>10}   {:>9}   {}\n",
            r.n,
            format!("{:?}", r.ha),
            format!("{:?}", r.predicted_ha),
            format!("{:?}", r.hb),
            format!("{:?}", r.predicted_hb),
            r.r#match && r.lines_agree
        ));
        csv.push_str(&format!("{},{},{},{},{},{}\n", r.n, r.d_a, r.d_b, r.predicted_a, r.predicted_b, r.r#match));
    }
    let b: Vec<i64> = rows.iter().map(|r| r.d_b as i64).collect();
    let fit = quadratic_fit(&b).ok();
    if let Some(f) = &fit {
        text.push_str(&format!(
            "eventually quadratic: {} (stride {}, leading {})\n",
            f.eventually_quadratic,
            f.period,
            f.leading.clone().unwrap_or_else(|| "-".into())
        ));
    }
    let ok = rows.iter().all(|r| r.r#match && r.lines_agree);
    let json = envelope(
        "degrees",
        "measured bidegrees equal the H-coefficients of the matrix powers",
        s,
        start,
        json!({ "config": cfg, "rows": rows, "fit": fit }),
    );
    Ok(Output::new(text, json, Some(csv), status_of(ok)))
}

pub fn psi_degrees(i2: Option<Q>, s: &Settings) -> Result<Output> {
    let start = Instant::now();
    let cfg = crate::verify::degree_config(s);
    let c = i2.unwrap_or_else(|| s.generic_rational(0x32));
    let d = psi_degree_sequence(&c, s.psi_n_max, &cfg)?;
    let seq: Vec<i64> = d.iter().map(|&x| x as i64).collect();
    let fit = quadratic_fit(&seq)?;
    let mut text = format!("degrees of psi^n, I2 = {}, h = {}\n", show_q(&c), show_q(&cfg.h_value()));
    let mut csv = String::from("n,degree\n");
    for (n, x) in seq.iter().enumerate() {
        text.push_str(&format!("{n:>3}  {x}\n"));
        csv.push_str(&format!("{n},{x}\n"));
    }
    text.push_str(&format!(
        "eventually quadratic: {} (stride {}, leading {})\n",
        fit.eventually_quadratic,
        fit.period,
        fit.leading.clone().unwrap_or_else(|| "-".into())
    ));
    let json = envelope(
        "psi-degrees",
        "degrees of the three-dimensional reduction grow quadratically",
        s,
        start,
        json!({ "i2": show_q(&c), "h": show_q(&cfg.h_value()), "degrees": seq, "fit": fit }),
    );
    Ok(Output::new(text, json, Some(csv), status_of(fit.eventually_quadratic)))
}

fn action_matrix(s: &Settings, computed: bool) -> Result<ActionMatrix> {
    if computed && s.generic_h {
        build_action_matrix(&symbolic(s.seeds.clone(), s.exec))
    } else if computed {
        build_action_matrix(&valuator(s))
    } else {
        Ok(ActionMatrix::from_published())
    }
}

pub fn picard_matrix(s: &Settings, computed: bool) -> Result<Output> {
    let start = Instant::now();
    let m = action_matrix(s, computed)?;
    let names = skdv_tower::class::basis_names();
    let mut text = m.describe();
    let mut csv = format!("row,{}\n", names.join(","));
    for (i, row) in m.rows().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        csv.push_str(&format!("{},{}\n", names[i], cells.join(",")));
    }
    text.push_str(&format!("{} of {} rows computed on the blow-up tower\n", m.computed_rows(), names.len()));
    let json = envelope(
        "picard-matrix",
        "pull-back of each basis class of the resolved space",
        s,
        start,
        json!({ "basis": names, "columns": m.columns.iter().map(|c| c.grouped()).collect::<Vec<_>>(), "provenance": m.provenance, "matrix": m.rows() }),
    );
    Ok(Output::new(text, json, Some(csv), Status::Pass))
}

pub fn growth(s: &Settings, computed: bool) -> Result<Output> {
    let start = Instant::now();
    let m = action_matrix(s, computed)?;
    let g = growth_class(&m);
    let reading = matches_published_reading(&g);
    let mut text = format!("characteristic polynomial: {}\n", g.factored());
    text.push_str(&format!("spectral radius 1: {}\n", g.spectral_radius_one));
    for f in &g.factors {
        text.push_str(&format!("  factor {} (eigenvalues {}), multiplicity {}, blocks {:?}\n", f.poly_text(), f.eigenvalues(), f.multiplicity, f.block_sizes));
    }
    text.push_str(&format!("Jordan form: {} (sizes sum to {})\n", g.jordan_text(), g.block_size_sum()));
    text.push_str(&format!("largest unit-circle block: {}\ngrowth: {}\n", g.max_unit_block, g.growth));
    text.push_str(&format!("published list \"{PUBLISHED_JORDAN}\", read as {PUBLISHED_READING}: {}\n", if reading { "matches" } else { "differs" }));
    let json = envelope(
        "growth",
        "degree growth class from the exact Jordan structure of the pull-back matrix",
        s,
        start,
        json!({ "report": g, "published_list": PUBLISHED_JORDAN, "reading": PUBLISHED_READING, "matches_reading": reading }),
    );
    Ok(Output::new(text, json, None, Status::Pass))
}

pub fn track_singularity(name: &str, s: &Settings, steps: Option<usize>) -> Result<Output> {
    let start = Instant::now();
    let spec = preset(name)
        .ok_or_else(|| CoreError::Invalid(format!("unknown germ {name}; known: {}", preset_names().join(", "))))?;
    let t = track(&spec, s.seed, steps.unwrap_or(spec.steps))?;
    let v = verify_trace(&spec, &t)?;
    let mut text = t.table();
    if spec.expected_class.is_some() {
        text.push_str(&format!(
            "expected data: orders {}, leading mismatches {}, class {}, corrected entries {}\n",
            if v.orders_match { "match" } else { "differ" },
            v.leading_mismatches.len(),
            if v.class_match { "matches" } else { "differs" },
            v.errata
        ));
    }
    for e in &spec.errata {
        text.push_str(&format!("  corrected step {} slot {}: {}\n", e.step, e.slot, e.note));
    }
    let mut csv = String::from("step,ord_x0,ord_x1,ord_x2,ord_x3,lead_x0,lead_x1,lead_x2,lead_x3,dim,divisor\n");
    for (k, r) in t.steps.iter().enumerate() {
        let o: Vec<String> = r.orders.iter().map(|o| o.map_or("inf".into(), |v| v.to_string())).collect();
        let l: Vec<String> = r.leading.iter().map(|x| format!("\"{x}\"")).collect();
        csv.push_str(&format!("{k},{},{},{},{}\n", o.join(","), l.join(","), r.dim, r.divisor.clone().unwrap_or_default()));
    }
    let json = envelope(
        "track-singularity",
        "Laurent orders and leading terms of a singular germ along the orbit",
        s,
        start,
        json!({ "trace": t, "verdict": v, "corrections": spec.errata }),
    );
    Ok(Output::new(text, json, Some(csv), status_of(v.ok())))
}

#[derive(Serialize)]
struct MultRow {
    name: String,
    orders: Vec<i64>,
    total: String,
    proper: String,
}

fn mult_rows<K: GermField>(v: &Valuator<K>, hs: &[Hypersurface]) -> Result<Vec<MultRow>> {
    hs.iter()
        .map(|h| {
            let orders = v.mult_table(h)?;
            let (total, proper) = v.class_of_hypersurface(h)?;
            Ok(MultRow { name: h.name.clone(), orders, total: total.grouped(), proper: proper.grouped() })
        })
        .collect()
}

/// Orders along `E1..E17` and classes of the given hypersurfaces, or of the
/// standard five when `poly` is `None`.
pub fn multiplicities(poly: Option<(&str, (u32, u32))>, s: &Settings) -> Result<Output> {
    let start = Instant::now();
    let hs = match poly {
        Some((p, bd)) => vec![Hypersurface::new(p, parse_poly(p, &phi_vars())?, bd)?],
        None => vec![Hypersurface::z1(), Hypersurface::x2_minus_1(), Hypersurface::z3(), Hypersurface::i1(), Hypersurface::i2()],
    };
    let rows = if s.generic_h { mult_rows(&symbolic(s.seeds.clone(), s.exec), &hs)? } else { mult_rows(&valuator(s), &hs)? };
    let mut text = String::new();
    let mut csv = String::from("name,");
    csv.push_str(&(1..=17).map(|i| format!("E{i}")).collect::<Vec<_>>().join(","));
    csv.push_str(",proper_class\n");
    for r in &rows {
        let o: Vec<String> = r.orders.iter().map(|x| x.to_string()).collect();
        text.push_str(&format!("{}\n  orders E1..E17: ({})\n  total class:  {}\n  proper class: {}\n", r.name, o.join(","), r.total, r.proper));
        csv.push_str(&format!("\"{}\",{},\"{}\"\n", r.name, o.join(","), r.proper));
    }
    let json = envelope(
        "multiplicities",
        "orders of vanishing along the exceptional divisors and the resulting classes",
        s,
        start,
        json!({ "h": if s.generic_h { "generic".to_string() } else { s.h.as_ref().map(show_q).unwrap_or_else(|| "sampled per seed".into()) }, "seeds": s.seeds, "rows": rows }),
    );
    Ok(Output::new(text, json, Some(csv), Status::Pass))
}

/// Which class `find-invariants` imposes.
/// Custom classes are compared with `{1, I1, I2}`.
pub fn target_class(name: &str) -> Result<(DivisorClass, bool)> {
    match name {
        "i1" | "I1" => Ok((i1_class(), false)),
        "i2" | "I2" => Ok((i2_class(), true)),
        other => other
            .parse::<DivisorClass>()
            .map(|c| (c, true))
            .map_err(|e| CoreError::Invalid(format!("class {other}: {e}"))),
    }
}

fn finder_text(r: &InvariantReport) -> String {
    let mut t = format!(
        "class {}\n  orders ({})\n  ansatz {:?}: {} unknowns, {} rows, rank {} (without last germ {}), h = {}\n  kernel dimension {}\n",
        r.class,
        r.mults.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(","),
        r.ansatz,
        r.unknowns,
        r.rows,
        r.rank,
        r.rank_without_last_sample,
        r.h,
        r.matched.kernel_dim
    );
    for (j, k) in r.kernel.iter().enumerate() {
        t.push_str(&format!("  K{j} = {k}\n"));
    }
    t.push_str(&format!(
        "  kernel re-checked on fresh germs: {}\n  span equals span{{{}}}: {}\n",
        r.kernel_checked,
        r.matched.targets.join(", "),
        r.matched.spans_equal
    ));
    for (name, c) in r.matched.targets.iter().zip(&r.matched.targets_in_kernel) {
        let terms: Vec<String> = c.iter().enumerate().map(|(j, x)| format!("({x})*K{j}")).collect();
        t.push_str(&format!("  {name} = {}\n", terms.join(" + ")));
    }
    t
}

fn run_finder<K: GermField>(v: &Valuator<K>, ansatz: &Ansatz, c: &ClassConstraint, with_i2: bool, cfg: &FinderConfig) -> Result<InvariantReport> {
    find_invariants(v, ansatz, c, with_i2, cfg)
}

/// Solves for the polynomials of bidegree `(2, 2)` in the class; with
/// `audit`, also runs the total-degree-2 ansatz and the raised orders.
pub fn find_invariants_cmd(class_name: &str, audit: bool, s: &Settings) -> Result<Output> {
    let start = Instant::now();
    let (class, with_i2) = target_class(class_name)?;
    let fcl = valuator(s).proper_exceptional_classes()?;
    let con = ClassConstraint::from_class(&class, &fcl)?;
    let cfg = FinderConfig { samples: s.samples, seed: s.seed, exec: s.exec, ..Default::default() };
    let mut runs = vec![(Ansatz::bidegree(), con.clone())];
    if audit {
        runs.push((Ansatz::total_degree(), con.clone()));
        runs.push((Ansatz::bidegree(), con.raised(1)));
    }
    let mut reports = Vec::new();
    for (a, c) in &runs {
        reports.push(if s.generic_h {
            run_finder(&symbolic(vec![s.seed], s.exec), a, c, with_i2, &cfg)?
        } else {
            run_finder(&sampled(Some(s.h_value()), vec![s.seed], s.exec), a, c, with_i2, &cfg)?
        });
    }
    let text = reports.iter().map(finder_text).collect::<Vec<_>>().join("\n");
    let main = &reports[0];
    let ok = match class_name {
        "i1" | "I1" | "i2" | "I2" => main.matched.spans_equal && main.kernel_checked,
        _ => main.kernel_checked,
    };
    let json = envelope(
        "find-invariants",
        "polynomials of bidegree (2, 2) vanishing to the orders the class prescribes",
        s,
        start,
        json!({ "reports": reports }),
    );
    Ok(Output::new(text, json, None, status_of(ok)))
}
