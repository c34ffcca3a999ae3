//! Plain-text table rendering for the report commands.

use std::collections::BTreeMap;

use tropcor_core::json::{
    FixedConeReportSpec, IterationReportSpec, LambdaSpec, OrbifoldSpec, ScanReportSpec,
};

fn lambda_text(lambda: &LambdaSpec) -> String {
    match lambda {
        LambdaSpec::Rational { value } => value.clone(),
        LambdaSpec::Algebraic { low, high, .. } => format!("[{low}, {high}]"),
    }
}

pub fn orbifold_table(spec: &OrbifoldSpec) -> String {
    let mut out = String::from("point  nu\n");
    for (label, nu) in &spec.signature {
        out.push_str(&format!("{label:<6} {nu}\n"));
    }
    out.push_str(&format!(
        "orbifold: {}\n",
        if spec.hyperbolic {
            "hyperbolic"
        } else {
            "parabolic (warning)"
        }
    ));
    out.trim_end().to_string()
}

pub fn counts_table(counts: &BTreeMap<usize, usize>) -> String {
    let mut out = String::from("edges  trees\n");
    for (k, v) in counts {
        out.push_str(&format!("{k:<6} {v}\n"));
    }
    out.push_str(&format!("total  {}\n", counts.values().sum::<usize>()));
    out.trim_end().to_string()
}

fn split_text(split: &[String]) -> String {
    split.join(",")
}

pub fn fixed_report_table(spec: &FixedConeReportSpec) -> String {
    let mut out = String::new();
    let blocks = spec
        .multicurve
        .as_ref()
        .map(|m| {
            m.blocks
                .iter()
                .map(|b| format!("{{{}}}", split_text(b)))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .unwrap_or_default();
    out.push_str(&format!("multicurve   {blocks}\n"));
    out.push_str(&format!("weakly fixed {}\n", spec.weakly_fixed));
    if let Some(cert) = &spec.certificate {
        out.push_str(&format!(
            "lambda       {} (vs 1: {})\n",
            lambda_text(&cert.lambda),
            cert.versus_one
        ));
    }
    out.push_str(&format!("obstruction  {}\n", spec.obstruction));
    for ray in &spec.rays {
        let coords: Vec<String> = ray
            .direction
            .coords
            .iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect();
        out.push_str(&format!("ray          {}\n", coords.join(" ")));
    }
    out.trim_end().to_string()
}

pub fn scan_table(spec: &ScanReportSpec) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "orbifold {} | scanned {} cones | {} weakly fixed | {} obstructions\n",
        if spec.orbifold.hyperbolic {
            "hyperbolic"
        } else {
            "parabolic"
        },
        spec.scanned,
        spec.entries.len(),
        spec.entries.iter().filter(|e| e.obstruction).count(),
    ));
    for warning in &spec.warnings {
        out.push_str(&format!("warning: {warning}\n"));
    }
    out.push_str("braid  multicurve            lambda        obstruction\n");
    for entry in &spec.entries {
        let braid = if entry.braid.is_empty() {
            "-".to_string()
        } else {
            entry
                .braid
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let blocks = entry
            .multicurve
            .as_ref()
            .map(|m| {
                if m.blocks.is_empty() {
                    "(cone point)".to_string()
                } else {
                    m.blocks
                        .iter()
                        .map(|b| format!("{{{}}}", split_text(b)))
                        .collect::<Vec<_>>()
                        .join(" ")
                }
            })
            .unwrap_or_default();
        let lambda = entry
            .certificate
            .as_ref()
            .map(|c| lambda_text(&c.lambda))
            .unwrap_or_else(|| "-".to_string());
        out.push_str(&format!(
            "{braid:<6} {blocks:<21} {lambda:<13} {}\n",
            entry.obstruction
        ));
    }
    out.trim_end().to_string()
}

pub fn iterate_table(spec: &IterationReportSpec) -> String {
    let mut out = String::from("step  multicurve (weights)\n");
    for (i, step) in spec.steps.iter().enumerate() {
        let blocks: Vec<String> = step
            .blocks
            .iter()
            .zip(step.weights.iter().flatten())
            .map(|(b, w)| format!("{{{}}}:{w}", split_text(b)))
            .collect();
        let text = if blocks.is_empty() {
            "(cone point)".to_string()
        } else {
            blocks.join(" ")
        };
        out.push_str(&format!("{i:<5} {text}\n"));
    }
    out.push_str(&format!("outcome: {}\n", spec.outcome));
    for split in &spec.halted_on {
        out.push_str(&format!("halted on class {{{}}}\n", split_text(split)));
    }
    out.trim_end().to_string()
}
