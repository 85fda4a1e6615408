//! The verification targets behind `skdv verify`.

use std::fmt::Display;

use clap::ValueEnum;
use serde::Serialize;

use skdv_algebra::{parse_poly, Q};
use skdv_core::dynamics::{check_invariant_identity, i1_poly, i2_poly, phi_vars, RationalMapDef};
use skdv_core::{Exec, Result};
use skdv_degree::{phi_degree_sequence, psi_degree_sequence, quadratic_fit, DegreeConfig};
use skdv_invariants::{find_invariants, i1_class, i2_class, Ansatz, ClassConstraint, FinderConfig, InvariantReport};
use skdv_picard::growth::{matches_published_reading, PUBLISHED_JORDAN, PUBLISHED_READING};
use skdv_picard::{build_action_matrix, growth_class, predicted_degrees, ActionMatrix, GrowthClass};
use skdv_tower::valuation::GermField;
use skdv_tower::{sampled, symbolic, DivisorClass, Hypersurface, Valuator};
use skdv_tracker::{preset, seeds_agree, track_seeds, verify as verify_trace, Classification};

use crate::config::{show_q, Settings};
use crate::report::{CheckReport, Recorder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    Invariants,
    Reversibility,
    Singularities,
    Multiplicities,
    Classes,
    Matrix,
    Growth,
    StabilityCertificate,
    PsiGrowth,
    InvariantFinder,
}

impl Target {
    pub const ALL: [Target; 10] = [
        Target::Invariants,
        Target::Reversibility,
        Target::Singularities,
        Target::Multiplicities,
        Target::Classes,
        Target::Matrix,
        Target::Growth,
        Target::StabilityCertificate,
        Target::PsiGrowth,
        Target::InvariantFinder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Invariants => "invariants",
            Target::Reversibility => "reversibility",
            Target::Singularities => "singularities",
            Target::Multiplicities => "multiplicities",
            Target::Classes => "classes",
            Target::Matrix => "matrix",
            Target::Growth => "growth",
            Target::StabilityCertificate => "stability-certificate",
            Target::PsiGrowth => "psi-growth",
            Target::InvariantFinder => "invariant-finder",
        }
    }

    pub fn claim(self) -> &'static str {
        match self {
            Target::Invariants => "I1 and I2 are exact invariants of the map",
            Target::Reversibility => "the inverse map composed with the map is the identity",
            Target::Singularities => {
                "singular germs show the confined, cyclic and anti-confined order patterns, the P1^4 cyclic and \
                 anti-confined germs do not arise on P2xP2, and all seeds agree"
            }
            Target::Multiplicities => "orders of vanishing of z1, x2 - 1 and the I1 pencil along E1..E17",
            Target::Classes => "proper-transform classes of z1, x2 - 1, z3, I1 and I2",
            Target::Matrix => "every row of the pull-back matrix computed on the blow-up tower equals the published row",
            Target::Growth => "spectral radius 1 and a largest unit-circle Jordan block of size 3: quadratic degree growth",
            Target::StabilityCertificate => "measured bidegrees of the iterates equal the H-coefficients of the matrix powers",
            Target::PsiGrowth => "degrees of the three-dimensional reduction grow quadratically",
            Target::InvariantFinder => {
                "the linear systems of the I1 and I2 classes have kernels span{1, I1} and span{1, I1, I2}"
            }
        }
    }
}

pub const Z1: [i64; 17] = [0, 0, 0, 0, 0, 1, 2, 2, 2, 2, 1, 1, 1, 2, 2, 2, 2];
pub const X2M1: [i64; 17] = [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 1, 1, 1, 1];
pub const I1_MEMBER: [i64; 17] = [2, 3, 3, 4, 4, 2, 3, 3, 4, 4, 4, 1, 2, 7, 7, 8, 8];

pub const PROPER_CLASSES: [(&str, &str); 5] = [
    ("z1", "Ha - E6 - E7 - E11 - E12"),
    ("x2 - 1", "Hb - E1 - E6 - E11"),
    ("z3", "Hb - E1 - E2 - E11 - E12"),
    ("I1", "2Ha + 2Hb - 2E1 - 2E6 - 4E11 - E{2,4,7,9,12,13,14,16}"),
    ("I2", "2Ha + 2Hb - 3E11 - E{1,2,4,5,6,7,9,10,12,13,14,16,17}"),
];

pub const PHI_HB: &str = "Ha + 3Hb - 2E1 - 3E11 - E{6,7,9,10,12,13,14}";
pub const PHI_E1: &str = "Hb - E1 - E10 - E11";

/// Sampled valuator for the settings, `h` shared by all seeds when fixed.
pub fn valuator(s: &Settings) -> Valuator<Q> {
    sampled(s.h.clone(), s.seeds.clone(), s.exec)
}

fn list<T: Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn class(s: &str) -> DivisorClass {
    s.parse().expect("static class")
}

/// Runs one target. Errors become inconclusive or failed reports.
pub fn run(t: Target, s: &Settings) -> CheckReport {
    let mut r = Recorder::new(t.name(), t.claim(), s.seed);
    let out = match t {
        Target::Invariants => invariants(&mut r),
        Target::Reversibility => reversibility(&mut r),
        Target::Singularities => singularities(&mut r, s),
        Target::Multiplicities if s.generic_h => multiplicities(&mut r, &symbolic(s.seeds.clone(), s.exec), s),
        Target::Multiplicities => multiplicities(&mut r, &valuator(s), s),
        Target::Classes if s.generic_h => classes(&mut r, &symbolic(s.seeds.clone(), s.exec)),
        Target::Classes => classes(&mut r, &valuator(s)),
        Target::Matrix if s.generic_h => matrix(&mut r, &symbolic(s.seeds.clone(), s.exec)),
        Target::Matrix => matrix(&mut r, &valuator(s)),
        Target::Growth if s.generic_h => growth(&mut r, &symbolic(s.seeds.clone(), s.exec)),
        Target::Growth => growth(&mut r, &valuator(s)),
        Target::StabilityCertificate => stability(&mut r, s),
        Target::PsiGrowth => psi_growth(&mut r, s),
        Target::InvariantFinder => invariant_finder(&mut r, s),
    };
    match out {
        Ok(()) => r.finish(),
        Err(e) => r.error(&e),
    }
}

/// Runs several targets through the execution switch.
pub fn run_all(targets: &[Target], s: &Settings) -> Vec<CheckReport> {
    let inner = Settings { exec: Exec::Sequential, ..s.clone() };
    s.exec.map(targets.to_vec(), |t| run(t, &inner))
}

fn invariants(r: &mut Recorder) -> Result<()> {
    let phi = RationalMapDef::phi();
    for (name, p) in [("I1", i1_poly()), ("I2", i2_poly())] {
        let ok = check_invariant_identity(&phi, p)?;
        r.compare(format!("{name}(phi(x)) - {name}(x)"), "0", if ok { "0" } else { "nonzero" });
    }
    let x0 = parse_poly("x0", &phi_vars())?;
    let moves = !check_invariant_identity(&phi, &x0)?;
    r.compare("x0 is not invariant (control)", true, moves);
    Ok(())
}

fn reversibility(r: &mut Recorder) -> Result<()> {
    let phi = RationalMapDef::phi();
    let inv = RationalMapDef::phi_inverse();
    let a = inv.compose(&phi)?;
    r.compare("phi^-1 . phi", "identity", if a.is_identity()? { "identity" } else { "not identity" });
    let b = phi.compose(&inv)?;
    r.compare("phi . phi^-1", "identity", if b.is_identity()? { "identity" } else { "not identity" });
    Ok(())
}

fn singularities(r: &mut Recorder, s: &Settings) -> Result<()> {
    r.judge("seeds", ">= 3", s.seeds.len(), s.seeds.len() >= 3);
    for name in ["confined", "cyclic", "anti-confined", "cyclic-p2p2"] {
        let spec = preset(name).expect("preset");
        let traces = track_seeds(&spec, &s.seeds, spec.steps, s.exec)?;
        r.compare(format!("{name}: seeds agree"), true, seeds_agree(&traces));
        let want = spec.expected_class.clone().expect("preset class");
        for t in &traces {
            let v = verify_trace(&spec, t)?;
            let pattern = |o: &[[Option<i64>; 4]]| {
                o.iter()
                    .map(|row| list(&row.map(|x| x.map_or("inf".to_string(), |v| v.to_string()))))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let want_orders: Vec<[Option<i64>; 4]> = spec.expected_orders.iter().map(|o| o.map(Some)).collect();
            r.compare(format!("{name} seed {}: orders", t.seed), pattern(&want_orders), pattern(&t.orders()));
            let bad: Vec<String> =
                v.leading_mismatches.iter().map(|(k, i, e, g)| format!("step {k} slot {i}: {e} vs {g}")).collect();
            r.compare(
                format!("{name} seed {}: leading terms", t.seed),
                format!("{} entries match", spec.expected_leading.len()),
                if bad.is_empty() { format!("{} entries match", spec.expected_leading.len()) } else { bad.join("; ") },
            );
            r.compare(format!("{name} seed {}: classification", t.seed), &want, &t.classification);
            r.compare(format!("{name} seed {}: corrected entries reproduce the printed value", t.seed), 0, v.spurious_errata);
        }
        if !spec.errata.is_empty() {
            r.note(format!("{name}: printed entries replaced by the computed ones: {}", spec.errata.len()));
        }
    }
    for name in ["cyclic-start-p2p2", "anti-confined-start-p2p2"] {
        let spec = preset(name).expect("preset");
        let traces = track_seeds(&spec, &s.seeds, spec.steps, s.exec)?;
        for t in &traces {
            let max_dim = t.dims().into_iter().max().unwrap_or(0);
            r.judge(format!("{name} seed {}: never a hypersurface", t.seed), "dim < 3", max_dim, max_dim < 3);
            r.compare(format!("{name} seed {}: classification", t.seed), Classification::Unresolved, &t.classification);
        }
    }
    Ok(())
}

/// Multiplicity checks, generic over sampled or transcendental `h`.
pub fn multiplicities<K: GermField>(r: &mut Recorder, v: &Valuator<K>, s: &Settings) -> Result<()> {
    r.note(if K::GENERIC_H { "h kept transcendental".to_string() } else { format!("h sampled per seed, seeds {:?}", v.seeds) });
    let c = s.generic_rational(0x49);
    let member = Hypersurface::new(
        &format!("I1 - ({})", show_q(&c)),
        i1_poly().sub(&parse_poly(&show_q(&c), &phi_vars())?)?,
        (2, 2),
    )?;
    let cases: [(Hypersurface, &[i64]); 4] = [
        (Hypersurface::z1(), &Z1),
        (Hypersurface::x2_minus_1(), &X2M1),
        (member, &I1_MEMBER),
        (Hypersurface::i1(), &I1_MEMBER),
    ];
    for (h, want) in cases {
        let got = v.mult_table(&h)?;
        r.compare(format!("{}: orders along E1..E17", h.name), list(want), list(&got));
    }
    Ok(())
}

fn classes<K: GermField>(r: &mut Recorder, v: &Valuator<K>) -> Result<()> {
    let surfaces = [Hypersurface::z1(), Hypersurface::x2_minus_1(), Hypersurface::z3(), Hypersurface::i1(), Hypersurface::i2()];
    for (h, (name, want)) in surfaces.iter().zip(PROPER_CLASSES) {
        let (_, proper) = v.class_of_hypersurface(h)?;
        r.compare(format!("proper class of {name}"), class(want).grouped(), proper.grouped());
    }
    Ok(())
}

fn matrix<K: GermField>(r: &mut Recorder, v: &Valuator<K>) -> Result<()> {
    let m = build_action_matrix(v)?;
    let published = ActionMatrix::from_published();
    let names = skdv_tower::class::basis_names();
    for ((name, want), got) in names.iter().zip(&published.columns).zip(&m.columns) {
        r.compare(format!("phi*({name})"), want.grouped(), got.grouped());
    }
    r.compare("rows computed on the tower", m.columns.len(), m.computed_rows());
    r.compare("phi*(Hb)", class(PHI_HB).grouped(), m.columns[1].grouped());
    r.compare("phi*(E1)", class(PHI_E1).grouped(), m.columns[2].grouped());
    Ok(())
}

fn growth<K: GermField>(r: &mut Recorder, v: &Valuator<K>) -> Result<()> {
    let m = build_action_matrix(v)?;
    let g = growth_class(&m);
    r.compare("characteristic polynomial", "(t)^5 (t - 1)^7 (t + 1) (t^2 + t + 1)^3", g.factored());
    r.compare("spectral radius is 1 (exact)", true, g.spectral_radius_one);
    r.compare("largest unit-circle Jordan block", 3, g.max_unit_block);
    r.compare("growth class", GrowthClass::Polynomial { degree: 2 }, &g.growth);
    r.compare("Jordan block sizes sum", 19, g.block_size_sum());
    r.judge(
        "Jordan multiset against the published list",
        PUBLISHED_READING,
        g.jordan_text(),
        matches_published_reading(&g),
    );
    r.note(format!("published list as printed: {PUBLISHED_JORDAN}"));
    Ok(())
}

pub fn degree_config(s: &Settings) -> DegreeConfig {
    DegreeConfig { trials: s.trials, height: s.height, seed: s.seed, h: s.h.clone(), exec: s.exec, ..Default::default() }
}

fn stability(r: &mut Recorder, s: &Settings) -> Result<()> {
    r.judge("random lines per factor", ">= 3", s.trials, s.trials >= 3);
    let cfg = degree_config(s);
    r.note(format!("h = {}", show_q(&cfg.h_value())));
    let measured = phi_degree_sequence(s.n_max, &cfg)?;
    let predicted = predicted_degrees(&ActionMatrix::from_published(), s.n_max);
    for (d, p) in measured.iter().zip(&predicted) {
        let got = |x: (usize, usize)| format!("({},{})", x.0, x.1);
        let want = |x: (i64, i64)| format!("({},{})", x.0, x.1);
        r.compare(format!("n = {}: (phi^n)*Ha", d.n), want(p.0), got(d.ha));
        r.compare(format!("n = {}: (phi^n)*Hb", d.n), want(p.1), got(d.hb));
        r.compare(format!("n = {}: lines agree", d.n), true, d.agree);
    }
    Ok(())
}

fn psi_growth(r: &mut Recorder, s: &Settings) -> Result<()> {
    let cfg = degree_config(s);
    let c = s.generic_rational(0x32);
    r.note(format!("I2 = {}, h = {}", show_q(&c), show_q(&cfg.h_value())));
    let d = psi_degree_sequence(&c, s.psi_n_max, &cfg)?;
    let seq: Vec<i64> = d.iter().map(|&x| x as i64).collect();
    r.note(format!("degrees {}", list(&seq)));
    let f = quadratic_fit(&seq)?;
    r.compare("eventually quadratic", true, f.eventually_quadratic);
    r.compare("constant second differences without a stride", 1, f.period);
    let second: Vec<i64> = seq.windows(3).map(|w| w[2] - 2 * w[1] + w[0]).collect();
    let tail = f.onset.map(|o| &second[o.min(second.len())..]).unwrap_or(&[]);
    r.judge("second differences from onset", "positive constant", list(tail), !tail.is_empty() && tail.iter().all(|&x| x > 0 && x == tail[0]));
    Ok(())
}

/// Runs the finder on the I1 and I2 classes.
pub fn finder_reports(s: &Settings) -> Result<Vec<InvariantReport>> {
    let v = valuator(s);
    let fcl = v.proper_exceptional_classes()?;
    let cfg = FinderConfig { samples: s.samples, seed: s.seed, exec: s.exec, ..Default::default() };
    let ansatz = Ansatz::bidegree();
    let mut out = Vec::new();
    for (c, with_i2) in [(i1_class(), false), (i2_class(), true)] {
        let con = ClassConstraint::from_class(&c, &fcl)?;
        out.push(if s.generic_h {
            find_invariants(&symbolic(vec![s.seed], s.exec), &ansatz, &con, with_i2, &cfg)?
        } else {
            find_invariants(&sampled(Some(s.h_value()), vec![s.seed], s.exec), &ansatz, &con, with_i2, &cfg)?
        });
    }
    Ok(out)
}

fn invariant_finder(r: &mut Recorder, s: &Settings) -> Result<()> {
    let reports = finder_reports(s)?;
    for (rep, name, dim) in [(&reports[0], "I1 class", 2), (&reports[1], "I2 class", 3)] {
        r.compare(format!("{name}: kernel dimension"), dim, rep.matched.kernel_dim);
        r.compare(format!("{name}: kernel span"), format!("span{{{}}}", rep.matched.targets.join(", ")), if rep.matched.spans_equal {
            format!("span{{{}}}", rep.matched.targets.join(", "))
        } else {
            format!("other ({})", rep.kernel.join("; "))
        });
        r.compare(format!("{name}: rows saturated"), true, rep.saturated());
        r.compare(format!("{name}: kernel re-checked on fresh germs"), true, rep.kernel_checked);
        for (t, coords) in rep.matched.targets.iter().zip(&rep.matched.targets_in_kernel) {
            r.note(format!("{name}: {t} = {} in the kernel basis", list(coords)));
        }
        r.note(format!("{name}: h = {}, rank {} of {} unknowns", rep.h, rep.rank, rep.unknowns));
    }
    Ok(())
}
