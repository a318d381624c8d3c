use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;

use pearlhom::homology::{
    check_pairing_on_basis, cohomology_window, dual_complex, principal_coker, render_group,
    Cokernel, HomologyResult, Kernel, Method, PeriodSource,
};
use pearlhom::pearl::is_cycle;
use pearlhom::specialize::novikov_specialize;
use pearlhom::spectral::{maslov_filtration, compute_pages, convergence_check, SpectralSequence};
use pearlhom::{
    homology_window, CoefficientRing, Coefficients, Error, Fp, GradedComplex, Integer, Rational,
    Result, Ring, Zmod,
};
use pearlhom::algebra::Field;
use serde_json::{json, Value};

use crate::pipeline::{prepare, Options, Prepared};
use crate::report::{Report, Status};
use crate::Command;

macro_rules! with_ring {
    ($coefficients:expr, $f:ident ( $($arg:expr),* )) => {
        match $coefficients {
            Coefficients::Z => $f::<Integer>($($arg),*),
            Coefficients::Q => $f::<Rational>($($arg),*),
            Coefficients::Fp(_) => $f::<Fp>($($arg),*),
            Coefficients::Zmod(_) => $f::<Zmod>($($arg),*),
        }
    };
}

pub fn execute(command: Command, opts: &Options) -> Result<Report> {
    match command {
        Command::Check => {
            let k = opts.coefficients.unwrap_or(Coefficients::Z);
            with_ring!(k, check(opts, k))
        }
        Command::Homology => {
            let k = opts.coefficients.unwrap_or(Coefficients::Z);
            with_ring!(k, homology(opts, k))
        }
        Command::Dual => {
            let k = opts.coefficients.unwrap_or(Coefficients::Z);
            with_ring!(k, dual(opts, k))
        }
        Command::Spectral => {
            let k = opts.coefficients.unwrap_or(Coefficients::Q);
            match k {
                Coefficients::Q => spectral::<Rational>(opts, k),
                Coefficients::Fp(_) => spectral::<Fp>(opts, k),
                _ => Err(Error::UnsupportedRing(format!(
                    "the spectral sequence is computed over fields only, not {k}"
                ))),
            }
        }
    }
}

fn group_json<R: Ring>(c: &GradedComplex<R>) -> Value {
    let g = c.group();
    json!({
        "names": g.names(),
        "moduli": g.moduli(),
        "maslov": g.maslov(),
        "period": g.period(),
    })
}

fn check<R: CoefficientRing>(opts: &Options, k: Coefficients) -> Result<Report> {
    let Prepared { complex: c, steps } = prepare::<R>(opts, k, opts.novikov, None)?;
    let mut report = Report::new("check", opts, steps);
    let table = c.boundary_table();
    let boundary: Vec<Value> = table
        .iter()
        .map(|l| {
            json!({
                "source": l.source,
                "terms": l.terms.iter().map(|(t, x)| json!({"target": t, "coefficient": x})).collect::<Vec<_>>(),
            })
        })
        .collect();
    for l in &table {
        report.text.push(l.to_string());
    }

    let grading = c.check_grading();
    let grading_json = match &grading {
        None => json!({"ok": true, "witness": null}),
        Some(v) => json!({"ok": false, "witness": {
            "source": v.source, "target": v.target, "class": v.class.0,
            "expected": v.expected, "found": v.found,
        }}),
    };
    report.text.push(match &grading {
        None => "grading: ok".into(),
        Some(v) => format!(
            "grading: FAILED at ∂{} → {} class {:?}: degree {} expected {}",
            v.source, v.target, v.class.0, v.found, v.expected
        ),
    });

    let dsq = c.check_d_squared();
    let dsq_json = match &dsq {
        None => json!({"ok": true, "witness": null}),
        Some(w) => json!({"ok": false, "witness": {
            "source": w.source, "target": w.target, "element": w.rendered,
        }}),
    };
    report.text.push(match &dsq {
        None => "∂² = 0: ok".into(),
        Some(w) => format!(
            "∂² = 0: FAILED, coefficient of {} in ∂²{} is {}",
            w.target, w.source, w.rendered
        ),
    });

    let unit = c.unit()?;
    let unit_ok = is_cycle(&c, &unit)?;
    let unit_boundary = c.render_chain(&c.boundary(&unit)?);
    report.text.push(format!(
        "unit {} is a cycle: {}",
        c.render_chain(&unit),
        if unit_ok { "ok".to_string() } else { format!("FAILED, ∂ = {unit_boundary}") }
    ));

    report.status = Status::from_ok(grading.is_none() && dsq.is_none() && unit_ok);
    report.results = json!({
        "coefficients": k.to_string(),
        "class_group": group_json(&c),
        "boundary": boundary,
        "checks": {
            "grading": grading_json,
            "d_squared": dsq_json,
            "unit": {"ok": unit_ok, "chain": c.render_chain(&unit), "boundary": unit_boundary},
        },
    });
    Ok(report)
}

fn default_window<R: Ring>(c: &GradedComplex<R>) -> RangeInclusive<i64> {
    let idx = c.generators().iter().map(|g| g.index);
    let lo = idx.clone().min().unwrap_or(0);
    let hi = idx.max().unwrap_or(0);
    lo - 2..=hi + 2
}

/// Describes a pattern repeating with `period` when every residue class is
/// seen at least twice and is constant.
pub fn pattern(entries: &[(i64, String)], period: i64) -> Option<String> {
    if period <= 0 {
        return None;
    }
    let mut by_residue: BTreeMap<i64, BTreeSet<&str>> = BTreeMap::new();
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for (d, g) in entries {
        let r = d.rem_euclid(period);
        by_residue.entry(r).or_default().insert(g);
        *counts.entry(r).or_default() += 1;
    }
    if (0..period).any(|r| counts.get(&r).copied().unwrap_or(0) < 2)
        || by_residue.values().any(|s| s.len() != 1)
    {
        return None;
    }
    let value = |r: i64| *by_residue[&r].iter().next().unwrap();
    if by_residue.values().collect::<BTreeSet<_>>().len() == 1 {
        return Some(format!("{} in every degree", value(0)));
    }
    if period == 2 {
        return Some(format!(
            "{} in every odd degree, {} in every even degree",
            value(1),
            value(0)
        ));
    }
    Some(
        (0..period)
            .map(|r| format!("{} in degrees ≡ {r} mod {period}", value(r)))
            .collect::<Vec<_>>()
            .join("; "),
    )
}

fn result_period<R: Ring>(c: &GradedComplex<R>, h: &HomologyResult) -> Option<i64> {
    h.period
        .as_ref()
        .map(|p| p.period)
        .or_else(|| c.group().is_free().then(|| c.group().min_maslov()).flatten())
}

fn degrees_json(h: &HomologyResult, k: &Coefficients) -> (Vec<Value>, Vec<(i64, String)>) {
    let mut rows = Vec::new();
    let mut rendered = Vec::new();
    for e in &h.entries {
        let g = render_group(&e.group, k);
        rows.push(json!({
            "degree": e.degree,
            "group": g,
            "free_rank": e.group.free_rank,
            "torsion": e.group.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        }));
        rendered.push((e.degree, g));
    }
    (rows, rendered)
}

fn period_json(h: &HomologyResult) -> Value {
    match &h.period {
        None => Value::Null,
        Some(p) => json!({
            "period": p.period,
            "fundamental": p.fundamental,
            "source": match p.source {
                PeriodSource::Annotation => "annotation",
                PeriodSource::ClassGroup => "class group",
            },
        }),
    }
}

fn principal_json<R: Ring>(c: &GradedComplex<R>, window: &RangeInclusive<i64>) -> Vec<Value> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for d in window.clone() {
        let Ok(p) = principal_coker(c, d) else { continue };
        if !seen.insert((p.source.clone(), p.target.clone())) {
            continue;
        }
        let kernel = match p.kernel {
            Kernel::Zero => "0".to_string(),
            Kernel::FreeRankOne => "R[H]".to_string(),
        };
        let cokernel = match &p.cokernel {
            Cokernel::Zero => "0".to_string(),
            Cokernel::FreeRankOne => "R[H]".to_string(),
            Cokernel::Recognized { g, per_degree } => format!(
                "R[H]/(e^{{{}}} - 1){}",
                c.group().class_name(g),
                if *per_degree { ", one copy of R per degree" } else { "" }
            ),
            Cokernel::Presentation(_) => format!("R[H]/({})", p.rendered),
        };
        out.push(json!({
            "source": p.source,
            "target": p.target,
            "map": p.rendered,
            "kernel": kernel,
            "cokernel": cokernel,
        }));
    }
    out
}

fn homology<R: CoefficientRing>(opts: &Options, k: Coefficients) -> Result<Report> {
    let Prepared { complex: c, steps } = prepare::<R>(opts, k, opts.novikov, None)?;
    let mut report = Report::new("homology", opts, steps);
    let window = opts.degrees.clone().unwrap_or_else(|| default_window(&c));
    let h = homology_window(&c, window.clone())?;
    let (rows, rendered) = degrees_json(&h, &k);
    for (d, g) in &rendered {
        report.text.push(format!("H_{d} = {g}"));
    }
    let summary = result_period(&c, &h).and_then(|p| pattern(&rendered, p));
    if let Some(s) = &summary {
        report.text.push(format!("pattern: {s}"));
    }
    let principal = if h.method == Method::Principal {
        principal_json(&c, &window)
    } else {
        Vec::new()
    };
    for p in &principal {
        report.text.push(format!(
            "principal {} → {}: map {}, kernel {}, cokernel {}",
            p["source"].as_str().unwrap_or(""),
            p["target"].as_str().unwrap_or(""),
            p["map"].as_str().unwrap_or(""),
            p["kernel"].as_str().unwrap_or(""),
            p["cokernel"].as_str().unwrap_or(""),
        ));
    }
    report.results = json!({
        "coefficients": k.to_string(),
        "class_group": group_json(&c),
        "method": match h.method { Method::Expanded => "expanded", Method::Principal => "principal" },
        "degrees": rows,
        "period": period_json(&h),
        "summary": summary,
        "principal": principal,
    });
    Ok(report)
}

fn dual<R: CoefficientRing>(opts: &Options, k: Coefficients) -> Result<Report> {
    let auto = opts.is_torus() && opts.quotient.is_none() && !opts.novikov;
    let Prepared { complex: c, steps } = prepare::<R>(
        opts,
        k,
        opts.novikov || auto,
        auto.then_some("automatic for torus data"),
    )?;
    let mut report = Report::new("dual", opts, steps);
    let d = dual_complex(&c)?;
    let dsq = d.check_d_squared();
    let pairing = check_pairing_on_basis(&c, &d)?;
    report.text.push(format!("δ² = 0: {}", if dsq { "ok" } else { "FAILED" }));
    report.text.push(format!(
        "⟨δa, b⟩ = (−1)^(k−1)⟨a, ∂b⟩ on {} basis pairs: {}",
        pairing.checked,
        if pairing.holds() { "ok".to_string() } else { format!("FAILED at {}", pairing.failures.join("; ")) }
    ));
    let window = opts.degrees.clone().unwrap_or_else(|| default_window(&c));
    let h = cohomology_window(&d, window)?;
    let (rows, rendered) = degrees_json(&h, &k);
    for (deg, g) in &rendered {
        report.text.push(format!("H^{deg} = {g}"));
    }
    let summary = result_period(&c, &h).and_then(|p| pattern(&rendered, p));
    if let Some(s) = &summary {
        report.text.push(format!("pattern: {s}"));
    }
    report.status = Status::from_ok(dsq && pairing.holds());
    report.results = json!({
        "coefficients": k.to_string(),
        "convention": "δ into degree k is (−1)^(k−1) ∂^∨",
        "d_squared": {"ok": dsq},
        "pairing": {"checked": pairing.checked, "ok": pairing.holds(), "failures": pairing.failures},
        "cohomology": rows,
        "period": period_json(&h),
        "summary": summary,
    });
    Ok(report)
}

fn pages_json<F: Field>(ss: &SpectralSequence<F>) -> Vec<Value> {
    ss.pages.iter().map(|p| p.to_json()).collect()
}

fn spectral<F: Field + CoefficientRing>(opts: &Options, k: Coefficients) -> Result<Report> {
    let Prepared {
        complex: mut c,
        mut steps,
    } = prepare::<F>(opts, k, opts.novikov, None)?;
    if !c.group().is_novikov() {
        c = novikov_specialize(&c)?;
        steps.push(format!(
            "Novikov specialization, N_L = {} (required by the Maslov filtration)",
            c.group().maslov()[0]
        ));
    }
    let mut report = Report::new("spectral", opts, steps);
    let f = maslov_filtration(&c)?;
    let r_max = opts.pages.unwrap_or_else(|| f.stable_page());
    let ss = compute_pages(&f, r_max)?;
    let lo = *ss.safe_degrees.first().unwrap_or(&0);
    let hi = *ss.safe_degrees.last().unwrap_or(&0);
    let h = homology_window(&c, lo..=hi)?;
    let conv = convergence_check(&ss, &h)?;

    for page in ss.pages.iter().chain(std::iter::once(&ss.infinity)) {
        let label = if std::ptr::eq(page, &ss.infinity) {
            format!("E^∞ (= E^{})", page.r)
        } else {
            format!("E^{}", page.r)
        };
        let cols: Vec<String> = (ss.columns.0..=ss.columns.1)
            .map(|p| {
                let dims: Vec<String> = page.column(p).iter().map(|d| d.to_string()).collect();
                format!("p={p}: ({})", dims.join(","))
            })
            .collect();
        report.text.push(format!("{label}  {}", cols.join("  ")));
    }
    for row in &conv.rows {
        report.text.push(format!(
            "degree {}: Σ dim E^∞ = {}, dim H = {}{}",
            row.degree,
            row.e_infinity,
            row.homology,
            if row.e_infinity == row.homology { "" } else { "  MISMATCH" }
        ));
    }
    let differentials: Vec<Value> = ss
        .pages
        .iter()
        .flat_map(|p| {
            p.differentials.iter().map(move |d| {
                json!({"r": p.r, "source": [d.source.0, d.source.1], "target": [d.target.0, d.target.1], "rank": d.matrix.rank()})
            })
        })
        .collect();
    report.status = Status::from_ok(conv.matches());
    report.results = json!({
        "coefficients": k.to_string(),
        "min_maslov": ss.min_maslov,
        "filtration": "t^m q lies in F_p with p = -m",
        "columns": [ss.columns.0, ss.columns.1],
        "margin": ss.margin,
        "pages": pages_json(&ss),
        "infinity": ss.infinity.to_json(),
        "differentials": differentials,
        "e1_column": ss.page(1).map(|p| p.column(0)),
        "convergence": {"ok": conv.matches(), "rows": conv.rows},
    });
    Ok(report)
}
