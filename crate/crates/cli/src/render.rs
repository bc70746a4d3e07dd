//! Plain-text report rendering.

use std::fmt::Write as _;

use anyhow::Result;
use serde::Serialize;
use serde_json::Value;

use semidual_core::algebra::LocalAlgebra;
use semidual_core::lattice::{BaseChangeBound, CrossValidationReport, Lattice};
use semidual_core::modcat::{is_isomorphic_with, IsoVerdict, RModule};
use semidual_core::semidual::{
    certify_semidualizing, BassSeries, FlatExtension, HomBassReport, SdCatalog, SdCertificate, SdOptions,
    SdStatus,
};

pub fn config_line(config: &Value) -> String {
    match config {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

pub fn ring_info(a: &LocalAlgebra, socle: usize, series: &BassSeries) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "field: F_{}", a.field().p());
    let _ = writeln!(s, "variables: {}", a.var_names().join(", "));
    let _ = writeln!(s, "dim: {}", a.dim());
    let _ = writeln!(s, "basis: {}", a.basis_labels().join(", "));
    let _ = writeln!(s, "loewy_dims: {:?}", a.loewy_dims());
    let _ = writeln!(s, "socle_dim: {socle}");
    let _ = writeln!(s, "gorenstein: {}", socle == 1);
    let _ = writeln!(s, "bass_series: {series}");
    if !series.complete {
        let _ = writeln!(s, "bass_series_note: computed to degree {} only", series.coeffs.len().saturating_sub(1));
    }
    s
}

pub fn certificate(cert: &SdCertificate, dualizing: Option<bool>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "module_dim: {}", cert.dim);
    let _ = writeln!(s, "homothety_bijective: {}", cert.homothety_iso);
    let _ = writeln!(s, "ext_bound: {}", cert.bound);
    let _ = writeln!(s, "ext_checked_to: {}", cert.ext_checked_to);
    if let Some(p) = &cert.proof {
        let _ = writeln!(s, "proof: {p:?}");
    }
    if let Some(r) = &cert.periodicity {
        let _ = writeln!(
            s,
            "periodicity: syzygy {} repeats after {} steps with multiplicity {}",
            r.start, r.period, r.multiplicity
        );
    }
    if let Some(d) = dualizing {
        let _ = writeln!(s, "dualizing: {d}");
    }
    match &cert.status {
        SdStatus::Refuted { reason } => {
            let _ = writeln!(s, "status: refuted ({reason})");
        }
        other => {
            let _ = writeln!(s, "status: {}", other.name());
        }
    }
    s
}

pub fn catalog(c: &SdCatalog) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "algebra_dim: {}", c.algebra_dim);
    let _ = writeln!(s, "ext_bound: {}", c.ext_bound);
    let _ = writeln!(
        s,
        "candidates: {} examined, {} passed filters, {} refuted classes",
        c.candidates_examined, c.passed_filters, c.refuted_classes
    );
    if c.truncated {
        let _ = writeln!(s, "warning: candidate cap reached, search incomplete");
    }
    if c.undecided_isomorphism > 0 {
        let _ = writeln!(s, "warning: {} isomorphism tests undecided", c.undecided_isomorphism);
    }
    let _ = writeln!(s, "classes: {}", c.count);
    for (i, r) in c.classes.iter().enumerate() {
        let mut tags = Vec::new();
        if r.free {
            tags.push("free");
        }
        if r.dualizing {
            tags.push("dualizing");
        }
        let _ = writeln!(
            s,
            "  [{i}] {} dim={} gens={} socle={} betti={:?} status={}{}",
            r.label,
            r.representative.dim(),
            r.generators,
            r.socle_dim,
            r.betti_prefix,
            r.certificate.status.name(),
            if tags.is_empty() { String::new() } else { format!(" ({})", tags.join(", ")) }
        );
    }
    if c.count > 0 {
        let _ = writeln!(s, "order (row <= column):");
        for (i, row) in c.order.iter().enumerate() {
            let cells: Vec<&str> = row
                .iter()
                .map(|v| match v.short() {
                    "yes" => "Y",
                    "yes_to_bound" => "y",
                    _ => ".",
                })
                .collect();
            let _ = writeln!(s, "  [{i}] {}", cells.join(" "));
        }
    }
    let _ = writeln!(s, "antisymmetric: {}", c.antisymmetric);
    let _ = writeln!(s, "transitive: {}", c.transitive);
    match c.power_of_two {
        Some(k) => {
            let _ = writeln!(s, "power_of_two: 2^{k}");
        }
        None => {
            let _ = writeln!(s, "power_of_two: no");
        }
    }
    s
}

pub fn lattice(l: &Lattice, hasse: bool, dagger: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "nodes: {}", l.node_count());
    let _ = writeln!(s, "relations: {}", l.relation_count());
    for node in &l.nodes {
        match (&node.dagger, dagger) {
            (Some(w), true) => {
                let _ = writeln!(s, "  {} = {}", node.name, w);
            }
            _ => {
                let _ = writeln!(s, "  {}", node.name);
            }
        }
    }
    let edges = if hasse { l.hasse_edges() } else { l.strict_edges() };
    let _ = writeln!(s, "{} ({}):", if hasse { "covers" } else { "strict relations" }, edges.len());
    for (a, b) in edges {
        let _ = writeln!(s, "  {a} < {b}");
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct TotalClass {
    pub from_base: String,
    pub from_fibre: String,
    pub dim: usize,
    pub status: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BaseChangeClasses {
    pub classes: Vec<TotalClass>,
    pub refuted_products: usize,
    pub undecided_isomorphism: usize,
}

/// Certifies `C ⊗ D` for classes `C` over the base and `D` over the fibre
/// and keeps one representative per isomorphism class.
pub fn base_change_classes(
    ext: &FlatExtension,
    base: &SdCatalog,
    fibre: &SdCatalog,
    opts: &SdOptions,
) -> Result<BaseChangeClasses> {
    let mut kept: Vec<(TotalClass, RModule)> = Vec::new();
    let mut refuted_products = 0;
    let mut undecided_isomorphism = 0;
    for c in &base.classes {
        for d in &fibre.classes {
            let m = ext.tensor(&c.representative, &d.representative)?;
            let cert = certify_semidualizing(&m, opts)?;
            if cert.is_refuted() {
                refuted_products += 1;
                continue;
            }
            let mut duplicate = false;
            for (_, other) in &kept {
                match is_isomorphic_with(&m, other, &opts.iso) {
                    IsoVerdict::Isomorphic(_) => {
                        duplicate = true;
                        break;
                    }
                    IsoVerdict::Unknown => undecided_isomorphism += 1,
                    IsoVerdict::NotIsomorphic(_) => {}
                }
            }
            if !duplicate {
                let class = TotalClass {
                    from_base: c.label.clone(),
                    from_fibre: d.label.clone(),
                    dim: m.dim(),
                    status: cert.status.name().to_string(),
                };
                kept.push((class, m));
            }
        }
    }
    Ok(BaseChangeClasses {
        classes: kept.into_iter().map(|(c, _)| c).collect(),
        refuted_products,
        undecided_isomorphism,
    })
}

pub fn base_change(
    ext: &FlatExtension,
    base: &SdCatalog,
    report: &BaseChangeClasses,
    bound: &BaseChangeBound,
    bass: &HomBassReport,
) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "base_dim: {}", ext.base.dim());
    let _ = writeln!(s, "fibre_dim: {}", ext.fibre.dim());
    let _ = writeln!(s, "total_dim: {}", ext.total.dim());
    let _ = writeln!(s, "gorenstein_map: {}", ext.is_gorenstein());
    let _ = writeln!(s, "classes_over_base: {}", base.count);
    let _ = writeln!(s, "classes_over_total: {}", report.classes.len());
    for c in &report.classes {
        let _ = writeln!(
            s,
            "  {} (x) {} dim={} status={}",
            c.from_base, c.from_fibre, c.dim, c.status
        );
    }
    if report.undecided_isomorphism > 0 {
        let _ = writeln!(s, "warning: {} isomorphism tests undecided", report.undecided_isomorphism);
    }
    let _ = writeln!(s, "symbolic_bound: {}", bound.bound);
    for line in &bound.trace {
        let _ = writeln!(s, "  {line}");
    }
    let _ = writeln!(s, "bound_met: {}", report.classes.len() >= bound.bound);
    let _ = writeln!(s, "bass_base: {}", bass.base);
    let _ = writeln!(s, "bass_fibre: {}", bass.relative);
    let _ = writeln!(s, "bass_total: {}", bass.total);
    let _ = writeln!(s, "bass_product: {}", bass.product);
    let _ = writeln!(
        s,
        "bass_identity: {} (checked to degree {})",
        bass.identity_holds, bass.identity_checked_to
    );
    s
}

pub fn cross_validation(r: &CrossValidationReport, names: &[String]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "chain: {}", names.join(" > "));
    let _ = writeln!(s, "chain_certified: {}", r.chain_certified);
    let _ = writeln!(s, "chain_ordered: {}", r.chain_ordered);
    let _ = writeln!(s, "chain_strict: {}", r.chain_strict);
    let _ = writeln!(s, "nesting_verified: {}", r.nesting_verified);
    for c in &r.classes {
        let _ = writeln!(s, "  {} dim={} status={}", c.class, c.dim, c.status.name());
    }
    for (name, checks) in [
        ("order", &r.order_checks),
        ("auslander", &r.auslander_checks),
        ("tensor", &r.tensor_checks),
    ] {
        let agree = checks.iter().filter(|c| c.agrees).count();
        let _ = writeln!(s, "{name}_checks: {agree}/{} agree", checks.len());
    }
    for m in &r.mismatches {
        let _ = writeln!(s, "mismatch: {m}");
    }
    let _ = writeln!(s, "all_agree: {}", r.all_agree());
    s
}
