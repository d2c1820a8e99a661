//! Human-readable reports and DOT export.

use std::fmt::Write;

use crate::blocks::{AssemblyGraph, Certificate, VerificationReport};
use crate::synthesis::{CapPlan, EulerBound, GENERAL_BOUND_REMARK};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn holds(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "FAILS"
    }
}

pub fn render_certificates(certs: &[Certificate]) -> String {
    let mut out = String::new();
    for c in certs {
        let _ = writeln!(out, "  {:<26} {}", c.name, holds(c.holds));
    }
    out
}

pub fn render_report(r: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "instances: {}, gluings: {}", r.instances, r.gluings);
    let _ = writeln!(out, "legal: {}", yes_no(r.legal));
    let _ = writeln!(out, "closed: {}", yes_no(r.closed));
    if !r.open_slots.is_empty() {
        let slots: Vec<String> = r.open_slots.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "  open slots: {}", slots.join(", "));
    }
    let _ = writeln!(out, "connected: {}", yes_no(r.connected));
    let _ = writeln!(out, "chi = {}", r.chi_total);
    match r.sigma_total {
        Some(s) => {
            let _ = writeln!(out, "sigma = {s} (claimed, not independently verified)");
        }
        None => {
            let _ = writeln!(out, "sigma: not available");
        }
    }
    let _ = writeln!(out, "certificates:");
    out.push_str(&render_certificates(&r.certificates));
    let _ = writeln!(out, "conjecture checks:");
    for c in &r.conjecture_checks {
        let status = match c.holds {
            Some(true) => "holds",
            Some(false) => "violated",
            None => "not applicable",
        };
        let _ = writeln!(out, "  {:<16} {status}", c.statement);
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    let _ = writeln!(out, "result: {}", if r.passed() { "PASS" } else { "FAIL" });
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One node per instance labelled "kind (ε) χ=…", one edge per gluing
/// labelled with the class seen from its first slot.
pub fn to_dot(g: &AssemblyGraph) -> String {
    let mut out = String::from("graph assembly {\n  node [shape=box];\n");
    for (i, inst) in g.instances().iter().enumerate() {
        let label = format!(
            "{} ({}) χ={}",
            inst.block.kind.name(),
            inst.orientation,
            inst.block.chi
        );
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(&label));
    }
    for gl in g.gluings() {
        let label = g
            .slot_label(gl.a)
            .map(|l| l.effective().to_string())
            .unwrap_or_else(|_| "?".to_string());
        let _ = writeln!(
            out,
            "  n{} -- n{} [label=\"{}\", taillabel=\"{}\", headlabel=\"{}\"];",
            gl.a.instance,
            gl.b.instance,
            escape(&label),
            gl.a.slot,
            gl.b.slot
        );
    }
    out.push_str("}\n");
    out
}

pub fn render_cap_plan(plan: &CapPlan) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<5} {:<28} {:<10} {:<42} {:>4} {:>5} {:>4}",
        "piece", "alpha", "beta", "gamma", "chi", "trick", "chi'"
    );
    for p in &plan.pieces {
        let [a, b, c] = &p.monodromies;
        let _ = writeln!(
            out,
            "{:<5} {:<28} {:<10} {:<42} {:>4} {:>5} {:>4}",
            p.name,
            a.render("phi"),
            b.render("phi"),
            c.render("phi"),
            p.chi_before,
            yes_no(p.trick_applied),
            p.chi_after
        );
        for check in &p.checks {
            let prefix: Vec<String> = check.prefix.iter().map(ToString::to_string).collect();
            let _ = write!(
                out,
                "      support of C{} fixed by [{}]: {}",
                check.target,
                prefix.join(","),
                yes_no(check.fixes_support)
            );
            for o in &check.obstructions {
                let _ = write!(
                    out,
                    "; C{}/C{} geometric {} algebraic {}",
                    o.curves.0, o.curves.1, o.geometric, o.algebraic
                );
            }
            out.push('\n');
        }
    }
    let _ = writeln!(out, "ledger:");
    for e in &plan.ledger {
        let _ = writeln!(out, "  {:<84} {:>+4} -> {:>3}", e.step, e.delta, e.running);
    }
    let _ = writeln!(
        out,
        "chi before tricks = {}, tricks = {}, final chi = {}",
        plan.chi_before_tricks(),
        plan.tricks_applied(),
        plan.final_chi()
    );
    let _ = writeln!(
        out,
        "closing word is T7^-1 on H1: {}",
        yes_no(plan.closing_word_h1)
    );
    let _ = writeln!(
        out,
        "note: whether a Cap with chi = 0 exists is open and not attempted"
    );
    out
}

pub fn render_euler_bound(b: &EulerBound) -> String {
    let mut out = String::new();
    match (b.bound, b.route) {
        (Some(bound), Some(route)) => {
            let _ = writeln!(out, "E ≤ {bound} with witness {route}");
        }
        _ => {
            let _ = writeln!(out, "no bound: central monodromy has no witness here");
        }
    }
    let _ = writeln!(out, "label: {}", b.label);
    for (route, chi) in &b.candidates {
        let _ = writeln!(out, "  route {route}: {chi}");
    }
    let _ = writeln!(out, "note: {GENERAL_BOUND_REMARK}");
    out
}
