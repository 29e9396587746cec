//! Model validation: a deterministic report of named checks covering the
//! graph, the action, the cut sets and their divisions, the wall system,
//! and the class structure. Failures mark the model unusable; warnings
//! flag instances the theorem-level stages will skip.

use crate::division::{
    canonical_divisions, close_under_action, fullness_index, mutually_non_separating,
    validate_division,
};
use crate::error::{ModelError, Result};
use crate::group::is_automorphism;
use crate::input::Model;
use crate::pipeline::Caps;
use crate::tree::{equivalence_classes, thin_classes};
use crate::wallspace::Wallspace;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Severity {
    Pass,
    Info,
    Warn,
    Fail,
}

impl Severity {
    fn tag(self) -> &'static str {
        match self {
            Severity::Pass => "PASS",
            Severity::Info => "INFO",
            Severity::Warn => "WARN",
            Severity::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckLine {
    pub severity: Severity,
    pub name: String,
    pub detail: String,
}

#[derive(Debug, Default)]
pub struct ValidationReport {
    pub lines: Vec<CheckLine>,
}

impl ValidationReport {
    fn add(&mut self, severity: Severity, name: impl Into<String>, detail: impl Into<String>) {
        self.lines.push(CheckLine {
            severity,
            name: name.into(),
            detail: detail.into(),
        });
    }

    pub fn ok(&self) -> bool {
        self.lines.iter().all(|l| l.severity != Severity::Fail)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            out.push_str(&format!("[{}] {}", line.severity.tag(), line.name));
            if !line.detail.is_empty() {
                out.push_str(": ");
                out.push_str(&line.detail);
            }
            out.push('\n');
        }
        out
    }
}

pub fn validate_model(model: &Model, caps: &Caps) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    let graph = &model.graph;
    let names = graph.names();

    let n = graph.vertex_count();
    report.add(
        if n >= 4 {
            Severity::Pass
        } else {
            Severity::Fail
        },
        "vertex-count",
        format!("{n} vertices (minimum 4)"),
    );
    report.add(
        if graph.is_connected() {
            Severity::Pass
        } else {
            Severity::Fail
        },
        "connected",
        String::new(),
    );

    let lowlink = graph.cut_vertices();
    let scan = graph.cut_vertices_scan();
    if lowlink != scan {
        return Err(ModelError::OracleMismatch(format!(
            "articulation search disagrees: lowlink finds {}, removal scan finds {}",
            lowlink.display(names),
            scan.display(names)
        )));
    }
    if lowlink.is_empty() {
        report.add(Severity::Pass, "two-connected", String::new());
    } else {
        report.add(
            Severity::Fail,
            "two-connected",
            format!("articulation vertices {}", lowlink.display(names)),
        );
    }

    for (i, g) in model.generators.iter().enumerate() {
        if is_automorphism(graph, g) {
            report.add(
                Severity::Pass,
                format!("generator-{i}"),
                g.cycles_string(names),
            );
        } else {
            report.add(
                Severity::Fail,
                format!("generator-{i}"),
                format!("{} is not a graph automorphism", g.cycles_string(names)),
            );
        }
    }
    let group = model.group(caps.group)?;
    report.add(Severity::Info, "group-order", group.order().to_string());

    let mut seeds = Vec::new();
    let mut seeds_ok = true;
    for c in &model.cut_sets {
        let label = c.display(names);
        let check = graph.is_cut_set(c)?;
        if !check.disconnects {
            report.add(
                Severity::Fail,
                format!("cut-set {label}"),
                "does not disconnect the graph".to_string(),
            );
            seeds_ok = false;
            continue;
        }
        if !check.nowhere_dense() {
            report.add(
                Severity::Fail,
                format!("cut-set {label}"),
                "has a vertex with every neighbor inside the set".to_string(),
            );
            seeds_ok = false;
            continue;
        }
        let divisions = canonical_divisions(graph, c)?;
        for d in &divisions {
            let check = validate_division(graph, d);
            if !check.is_valid() {
                report.add(
                    Severity::Fail,
                    format!("division {}", d.display(names)),
                    format!("fails {}", check.failed_clauses.join(", ")),
                );
                seeds_ok = false;
            }
        }
        report.add(
            Severity::Pass,
            format!("cut-set {label}"),
            format!(
                "valence {}, {} division{}, connected subgraph: {}",
                check.valence,
                divisions.len(),
                if divisions.len() == 1 { "" } else { "s" },
                graph.is_connected_subset(c)
            ),
        );
        seeds.extend(divisions);
    }

    if !seeds_ok {
        return Ok(report);
    }

    let family = close_under_action(&seeds, &group, caps.family)?;
    report.add(
        Severity::Info,
        "family",
        format!(
            "{} divisions in {} orbit{}",
            family.len(),
            family.orbits.len(),
            if family.orbits.len() == 1 { "" } else { "s" }
        ),
    );
    for (oi, orbit) in family.orbits.iter().enumerate() {
        let d = &family.divisions[orbit[0]];
        let check = validate_division(graph, d);
        if !check.is_valid() {
            report.add(
                Severity::Fail,
                format!("orbit-{oi}"),
                format!(
                    "closure produced invalid division {} (fails {})",
                    d.display(names),
                    check.failed_clauses.join(", ")
                ),
            );
        } else {
            report.add(
                Severity::Info,
                format!("orbit-{oi}"),
                format!(
                    "representative {}, size {}, fullness index {}",
                    d.display(names),
                    orbit.len(),
                    fullness_index(&group, d)
                ),
            );
        }
    }
    if !report.ok() {
        return Ok(report);
    }

    let ws = match Wallspace::build(graph, &family) {
        Ok(ws) => ws,
        Err(ModelError::OffTheWallTooSmall { count }) => {
            report.add(
                Severity::Fail,
                "off-the-wall",
                format!("{count} points; at least 3 are required"),
            );
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.add(
        Severity::Pass,
        "off-the-wall",
        format!("{} points", ws.off_the_wall.len()),
    );
    report.add(
        Severity::Info,
        "walls",
        format!("{} active", ws.wall_count()),
    );
    if ws.excluded.is_empty() {
        report.add(
            Severity::Pass,
            "wall-halfspaces",
            "at least 2 off-the-wall points on every side".to_string(),
        );
    } else {
        let list: Vec<String> = ws
            .excluded
            .iter()
            .map(|w| w.cut_set.display(names))
            .collect();
        report.add(
            Severity::Warn,
            "wall-halfspaces",
            format!(
                "{} wall{} excluded for a side with fewer than 2 off-the-wall points: {}",
                ws.excluded.len(),
                if ws.excluded.len() == 1 { "" } else { "s" },
                list.join(" ")
            ),
        );
    }
    let coincident = ws.coincident_walls();
    if coincident.is_empty() {
        report.add(
            Severity::Pass,
            "wall-coincidence",
            "no two divisions share a wall".to_string(),
        );
    } else {
        report.add(
            Severity::Warn,
            "wall-coincidence",
            format!(
                "{} wall{} induced by several divisions",
                coincident.len(),
                if coincident.len() == 1 { "" } else { "s" }
            ),
        );
    }

    let classes = equivalence_classes(&family, &ws.off_the_wall);
    let thin = thin_classes(&classes);
    if thin.is_empty() {
        report.add(
            Severity::Pass,
            "classes",
            format!("{} classes, none thin", classes.len()),
        );
    } else {
        let list: Vec<String> = thin.iter().map(|&i| classes[i].display(names)).collect();
        report.add(
            Severity::Warn,
            "classes",
            format!(
                "{} classes, {} thin: {}",
                classes.len(),
                thin.len(),
                list.join(" ")
            ),
        );
    }

    let cuts = family.cut_sets();
    let mut mns_ok = true;
    'pairs: for i in 0..cuts.len() {
        for j in i + 1..cuts.len() {
            let mns = mutually_non_separating(graph, &cuts[i], &cuts[j]);
            if !mns.holds {
                report.add(
                    Severity::Warn,
                    "mutually-non-separating",
                    format!(
                        "{} and {} separate each other; the tree stage will refuse this model",
                        cuts[i].display(names),
                        cuts[j].display(names)
                    ),
                );
                mns_ok = false;
                break 'pairs;
            }
        }
    }
    if mns_ok {
        report.add(Severity::Pass, "mutually-non-separating", String::new());
    }

    Ok(report)
}
