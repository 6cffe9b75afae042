use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use maghom::ai_complex::{build_pair, relative_homology, verify_ai_correspondence, SimplicialPair};
use maghom::graph::{
    ahk_edge_cycle_check, detect_format, diameter, is_pawful, parse_graph, parse_graph6_line,
    EdgeCycleCheck, Graph, GraphFormat,
};
use maghom::mag_homology::{mh_table, mh_table_ab, HomologyOptions, DEFAULT_MAX_BASIS};
use maghom::magnitude::{euler_check, magnitude_rational, magnitude_series};
use maghom::matching::{
    build_matching, build_pawful_s, check_star_property, default_selectors, parse_s,
    search_s_structure, serialize_s, verify_s_structure, MatchingBuild, Precedence, SStructure,
    SearchOutcome, StarProperty,
};
use maghom::morse::{critical_cells, find_cycle, morse_rank_check, verify_matching};
use maghom::Error;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{self, bigints, group, groups, one_based, simplex};
use crate::{Cli, Command, Endpoints, InputFormat};

#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Budget(String),
    Inconsistent(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Budget(_) => 2,
            Failure::Inconsistent(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Budget(m) | Failure::Inconsistent(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let m = e.to_string();
        match e {
            Error::BasisCap { .. } | Error::SearchBudget(_) => Failure::Budget(m),
            Error::Inconsistent(_) => Failure::Inconsistent(m),
            _ => Failure::Validation(m),
        }
    }
}

impl From<maghom::GraphError> for Failure {
    fn from(e: maghom::GraphError) -> Self {
        Failure::Validation(e.to_string())
    }
}

type Out = Result<String, Failure>;

fn read_text(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Validation(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path, format: InputFormat) -> Result<Graph, Failure> {
    let text = read_text(path)?;
    let format = match format {
        InputFormat::Auto => detect_format(&text),
        InputFormat::EdgeList => GraphFormat::EdgeList,
        InputFormat::Graph6 => GraphFormat::Graph6,
    };
    parse_graph(&text, format).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn vertex(g: &Graph, v: usize) -> Result<usize, Failure> {
    if v == 0 || v > g.vertex_count() {
        return Err(Failure::Validation(format!(
            "vertex {v} is not in 1..={}",
            g.vertex_count()
        )));
    }
    Ok(v - 1)
}

fn endpoints(g: &Graph, at: &Endpoints) -> Result<(usize, usize, usize), Failure> {
    Ok((vertex(g, at.a)?, vertex(g, at.b)?, at.ell as usize))
}

pub fn run(cli: &Cli) -> Out {
    let opts = HomologyOptions {
        max_basis: cli.max_basis.map_or(DEFAULT_MAX_BASIS, |v| {
            usize::try_from(v).unwrap_or(usize::MAX)
        }),
    };
    let load = |p: &Path| load_graph(p, cli.format);
    match &cli.command {
        Command::Magnitude {
            graph,
            series,
            euler,
            json,
        } => magnitude(&load(graph)?, *series, *euler, &opts, *json),
        Command::MhTable {
            graph,
            lmax,
            ab,
            csv,
            json,
        } => {
            let g = load(graph)?;
            let table = match ab.as_deref() {
                Some(&[a, b]) => mh_table_ab(&g, vertex(&g, a)?, vertex(&g, b)?, *lmax, &opts)?,
                Some(_) => return Err(Failure::Validation("--ab takes two vertices: A,B".into())),
                None => mh_table(&g, *lmax, &opts)?,
            };
            if *csv {
                return Ok(table.to_csv());
            }
            if *json {
                let entries: Vec<Value> = (0..=*lmax)
                    .flat_map(|ell| (0..=ell).map(move |k| (k, ell)))
                    .filter_map(|(k, ell)| {
                        let h = table.get(k, ell);
                        (!h.is_zero()).then(|| json!({ "k": k, "ell": ell, "group": group(&h) }))
                    })
                    .collect();
                return Ok(report::to_string(&json!({
                    "lmax": lmax,
                    "diagonal": table.diagonal(),
                    "is_diagonal": table.is_diagonal(),
                    "entries": entries,
                })));
            }
            let mut out = String::new();
            for ell in 0..=*lmax {
                let row: Vec<String> = (0..=ell).map(|k| table.get(k, ell).to_string()).collect();
                writeln!(out, "ℓ={ell}: {}", row.join("  ")).unwrap();
            }
            writeln!(
                out,
                "diagonal: {}",
                if table.is_diagonal() { "yes" } else { "no" }
            )
            .unwrap();
            Ok(out)
        }
        Command::AiComplex {
            graph,
            at,
            list_faces,
            homology,
            json,
        } => {
            let g = load(graph)?;
            let (a, b, ell) = endpoints(&g, at)?;
            ai_complex(&g, a, b, ell, *list_faces, *homology, &opts, *json)
        }
        Command::Morse {
            graph,
            at,
            matching: _,
            s_file,
            report,
            quad_first,
            json,
        } => {
            let g = load(graph)?;
            let (a, b, ell) = endpoints(&g, at)?;
            let s = certificate(&g, s_file.as_deref())?;
            morse(&g, a, b, ell, &s, precedence(*quad_first), *report, *json)
        }
        Command::Match {
            graph,
            at,
            s,
            pawful: _,
            quad_first,
            json,
        } => {
            let g = load(graph)?;
            let (a, b, ell) = endpoints(&g, at)?;
            let s = certificate(&g, s.as_deref())?;
            let built = build_matching(&g, a, b, ell, &s, precedence(*quad_first))?;
            Ok(list_matching(&built, *json))
        }
        Command::Pawful { graph, json } => pawful(&load(graph)?, *json),
        Command::SStructure {
            graph,
            verify,
            search,
            output,
            budget,
            json,
        } => {
            let g = load(graph)?;
            match (verify, search) {
                (Some(path), _) => verify_file(&g, path, *json),
                (None, true) => search_certificate(&g, *budget, output.as_deref(), *json),
                (None, false) => Err(Failure::Validation(
                    "choose one of --verify FILE or --search".into(),
                )),
            }
        }
        Command::Classify {
            input,
            lmax,
            budget,
        } => classify(&read_text(input)?, *lmax, *budget, &opts),
        Command::AhkCheck { graph, json } => {
            let g = load(graph)?;
            let (holds, edge) = match ahk_edge_cycle_check(&g)? {
                EdgeCycleCheck::Holds => (true, None),
                EdgeCycleCheck::Fails { u, v } => (false, Some([u, v])),
            };
            if *json {
                return Ok(report::to_string(&json!({
                    "holds": holds,
                    "edge": edge.map(|e| one_based(&e)),
                })));
            }
            Ok(match edge {
                None => "holds: every edge lies on a 3- or 4-cycle\n".into(),
                Some([u, v]) => {
                    format!("fails: edge {}-{} lies on no 3- or 4-cycle\n", u + 1, v + 1)
                }
            })
        }
    }
}

fn precedence(quad_first: bool) -> Precedence {
    if quad_first {
        Precedence::QuadFirst
    } else {
        Precedence::TripleFirst
    }
}

/// The S-structure from a file (verified first), or the pawful one.
fn certificate(g: &Graph, file: Option<&Path>) -> Result<SStructure, Failure> {
    match file {
        Some(path) => {
            let s = parse_s(&read_text(path)?, g)?;
            verify_s_structure(g, &s).map_err(|v| {
                Failure::Validation(format!("{}: not an S-structure: {v}", path.display()))
            })?;
            Ok(s)
        }
        None => Ok(build_pawful_s(g, &default_selectors(g)?)),
    }
}

fn magnitude(
    g: &Graph,
    series: Option<usize>,
    euler: Option<usize>,
    opts: &HomologyOptions,
    as_json: bool,
) -> Out {
    let f = magnitude_rational(g)?;
    let coeffs = series.map(|n| magnitude_series(g, n).coeffs);
    let rows = euler.map(|l| euler_check(g, l, opts)).transpose()?;
    let failed: Vec<String> = rows
        .iter()
        .flatten()
        .filter(|r| !r.holds())
        .map(|r| {
            format!(
                "ℓ={}: series {} vs homology {}",
                r.ell, r.series, r.homology
            )
        })
        .collect();
    let out = if as_json {
        report::to_string(&json!({
            "num": bigints(f.num().coeffs()),
            "den": bigints(f.den().coeffs()),
            "text": f.to_string(),
            "series": bigints(coeffs.as_deref().unwrap_or_default()),
            "euler": rows.as_ref().map(|rs| rs.iter().map(|r| json!({
                "ell": r.ell,
                "series": r.series.to_string(),
                "homology": r.homology.to_string(),
                "holds": r.holds(),
            })).collect::<Vec<_>>()),
        }))
    } else {
        let mut out = format!("#G = {f}\n");
        if let Some(c) = &coeffs {
            let c: Vec<String> = c.iter().map(ToString::to_string).collect();
            writeln!(out, "series: {}", c.join(" ")).unwrap();
        }
        for r in rows.iter().flatten() {
            writeln!(
                out,
                "ℓ={}: c_ℓ = {}, Σ(-1)^k rank MH_k^ℓ = {} {}",
                r.ell,
                r.series,
                r.homology,
                if r.holds() { "ok" } else { "MISMATCH" }
            )
            .unwrap();
        }
        out
    };
    if !failed.is_empty() {
        print!("{out}");
        return Err(Failure::Inconsistent(format!(
            "Euler check failed: {}",
            failed.join("; ")
        )));
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn ai_complex(
    g: &Graph,
    a: usize,
    b: usize,
    ell: usize,
    list_faces: bool,
    homology: bool,
    opts: &HomologyOptions,
    as_json: bool,
) -> Out {
    let pair = build_pair(g, a, b, ell);
    let fk = SimplicialPair::f_vector(&pair.k);
    let fkp = SimplicialPair::f_vector(&pair.kprime);
    let (rel, corr) = if homology {
        let r = verify_ai_correspondence(g, a, b, ell, opts)?;
        (Some(relative_homology(&pair)), Some(r))
    } else {
        (None, None)
    };
    let mismatch = corr.as_ref().is_some_and(|c| !c.holds());
    let out = if as_json {
        let faces = list_faces.then(|| {
            json!({
                "maximal": pair.maximal_faces().into_iter().map(simplex).collect::<Vec<_>>(),
                "kprime": pair.kprime.iter().map(simplex).collect::<Vec<_>>(),
            })
        });
        report::to_string(&json!({
            "a": a + 1,
            "b": b + 1,
            "ell": ell,
            "f_vector_k": fk,
            "f_vector_kprime": fkp,
            "faces": faces,
            "relative_homology": rel.as_deref().map(groups),
            "correspondence": corr.as_ref().map(|c| c.rows.iter().map(|r| json!({
                "k": r.k,
                "magnitude": group(&r.magnitude),
                "complex": group(&r.complex),
                "holds": r.holds(),
            })).collect::<Vec<_>>()),
        }))
    } else {
        let mut out = String::new();
        let fv = |f: &[usize]| {
            f.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(out, "K:  f-vector ({})", fv(&fk)).unwrap();
        writeln!(out, "K': f-vector ({})", fv(&fkp)).unwrap();
        if list_faces {
            writeln!(out, "maximal faces of K:").unwrap();
            for s in pair.maximal_faces() {
                writeln!(out, "  {s}").unwrap();
            }
            writeln!(out, "simplices of K':").unwrap();
            for s in &pair.kprime {
                writeln!(out, "  {s}").unwrap();
            }
        }
        if let Some(rel) = &rel {
            for (d, h) in rel.iter().enumerate() {
                writeln!(out, "H_{d}(K, K') = {h}").unwrap();
            }
        }
        if let Some(c) = &corr {
            for r in &c.rows {
                writeln!(
                    out,
                    "MH_{}^{ell}(a,b) = {}  complex side = {}  {}",
                    r.k,
                    r.magnitude,
                    r.complex,
                    if r.holds() { "ok" } else { "MISMATCH" }
                )
                .unwrap();
            }
        }
        out
    };
    if mismatch {
        print!("{out}");
        return Err(Failure::Inconsistent(
            "magnitude homology and the pair disagree".into(),
        ));
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn morse(
    g: &Graph,
    a: usize,
    b: usize,
    ell: usize,
    s: &SStructure,
    precedence: Precedence,
    full: bool,
    as_json: bool,
) -> Out {
    let built = build_matching(g, a, b, ell, s, precedence)?;
    let valid = verify_matching(&built.poset, &built.matching);
    let cycle = valid
        .is_ok()
        .then(|| find_cycle(&built.poset, &built.matching))
        .flatten();
    let crit = critical_cells(&built.poset, &built.matching);
    let check = morse_rank_check(g, a, b, ell, &built.matching);
    let ok = valid.is_ok() && cycle.is_none() && check.holds(ell);
    let out = if as_json {
        report::to_string(&json!({
            "a": a + 1,
            "b": b + 1,
            "ell": ell,
            "cells": built.poset.len(),
            "pairs": built.matching.pairs.len(),
            "valid": valid.is_ok(),
            "acyclic": cycle.is_none(),
            "critical_counts": check.critical_counts,
            "relative_homology": groups(&check.relative_homology),
            "holds": check.holds(ell),
            "critical": crit.iter().map(|(c, _)| simplex(c)).collect::<Vec<_>>(),
            "cycle": cycle.as_ref().map(|c| c.iter().map(simplex).collect::<Vec<_>>()),
        }))
    } else {
        let mut out = String::new();
        writeln!(
            out,
            "cells: {}  pairs: {}  critical: {}",
            built.poset.len(),
            built.matching.pairs.len(),
            crit.len()
        )
        .unwrap();
        match &valid {
            Ok(()) => writeln!(out, "matching: valid").unwrap(),
            Err(v) => writeln!(out, "matching: INVALID ({v})").unwrap(),
        }
        writeln!(
            out,
            "acyclic: {}",
            if cycle.is_none() { "yes" } else { "NO" }
        )
        .unwrap();
        let counts: Vec<String> = check
            .critical_counts
            .iter()
            .enumerate()
            .filter(|(_, c)| **c > 0)
            .map(|(d, c)| format!("{c} in dimension {d}"))
            .collect();
        if !counts.is_empty() {
            writeln!(out, "critical cells: {}", counts.join(", ")).unwrap();
        }
        for (d, h) in check.relative_homology.iter().enumerate() {
            writeln!(out, "H_{d}(K, K') = {h}").unwrap();
        }
        writeln!(
            out,
            "morse check: {}",
            if check.holds(ell) { "holds" } else { "FAILS" }
        )
        .unwrap();
        if full {
            for (c, d) in &crit {
                writeln!(out, "critical {d}-cell {c}").unwrap();
            }
            if let Some(cycle) = &cycle {
                let cells: Vec<String> = cycle.iter().map(ToString::to_string).collect();
                writeln!(out, "cycle: {}", cells.join(" , ")).unwrap();
            }
        }
        out
    };
    if !ok {
        print!("{out}");
        return Err(Failure::Inconsistent(
            "matching built from a verified S is not a valid acyclic matching with the predicted homology"
                .into(),
        ));
    }
    Ok(out)
}

fn list_matching(built: &MatchingBuild, as_json: bool) -> String {
    if as_json {
        return report::to_string(&json!({
            "pairs": built.matching.pairs.iter().map(|(x, y)| json!([simplex(x), simplex(y)])).collect::<Vec<_>>(),
            "critical": built.critical.iter().map(simplex).collect::<Vec<_>>(),
        }));
    }
    let mut out = String::new();
    for (x, y) in &built.matching.pairs {
        writeln!(out, "{x} -> {y}").unwrap();
    }
    for c in &built.critical {
        writeln!(out, "critical {c}").unwrap();
    }
    out
}

fn pawful(g: &Graph, as_json: bool) -> Out {
    let w = is_pawful(g);
    let star = (diameter(g) <= 2)
        .then(|| check_star_property(g))
        .transpose()?;
    let star_witness = match star {
        Some(StarProperty::Fails { alpha, beta, delta }) => Some([alpha, beta, delta]),
        _ => None,
    };
    if as_json {
        return Ok(report::to_string(&json!({
            "pawful": w.verdict,
            "violation": w.violation.map(|v| v.to_string()),
            "star_property": star.map(|s| s == StarProperty::Holds),
            "star_witness": star_witness.map(|t| one_based(&t)),
        })));
    }
    let mut out = match &w.violation {
        None => "pawful: yes\n".to_string(),
        Some(v) => format!("pawful: no ({v})\n"),
    };
    match (star, star_witness) {
        (None, _) => out.push_str("star property: n/a (diameter exceeds 2)\n"),
        (Some(_), None) => out.push_str("star property: holds\n"),
        (Some(_), Some([x, y, z])) => writeln!(
            out,
            "star property: fails at (α, β, δ) = ({}, {}, {})",
            x + 1,
            y + 1,
            z + 1
        )
        .unwrap(),
    }
    Ok(out)
}

fn verify_file(g: &Graph, path: &Path, as_json: bool) -> Out {
    let s = parse_s(&read_text(path)?, g)?;
    let verdict = verify_s_structure(g, &s);
    let far = s.far_quads(g);
    if as_json {
        let out = report::to_string(&json!({
            "valid": verdict.is_ok(),
            "condition": verdict.as_ref().err().map(|v| v.condition()),
            "violation": verdict.as_ref().err().map(|v| v.to_string()),
            "triples": s.triples.len(),
            "quads": s.quads.len(),
            "far_quads": far.iter().map(|q| one_based(q)).collect::<Vec<_>>(),
        }));
        return match verdict {
            Ok(()) => Ok(out),
            Err(v) => {
                print!("{out}");
                Err(Failure::Validation(v.to_string()))
            }
        };
    }
    verdict.map_err(|v| Failure::Validation(format!("invalid S-structure: {v}")))?;
    let far: Vec<String> = far
        .iter()
        .map(|q| format!("({},{},{},{})", q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1))
        .collect();
    Ok(format!(
        "valid: {} triples, {} quadruples\nd(α,γ) = 2: {}\n",
        s.triples.len(),
        s.quads.len(),
        if far.is_empty() {
            "none".into()
        } else {
            far.join(" ")
        }
    ))
}

fn search_certificate(g: &Graph, budget: u64, output: Option<&Path>, as_json: bool) -> Out {
    let outcome = search_s_structure(g, budget)?;
    let text = match &outcome {
        SearchOutcome::Found(s) => Some(serialize_s(s)),
        SearchOutcome::Exhausted => None,
    };
    if let (Some(path), Some(text)) = (output, &text) {
        std::fs::write(path, text)
            .map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
    }
    if as_json {
        return Ok(report::to_string(&json!({
            "found": text.is_some(),
            "certificate": text,
        })));
    }
    Ok(match text {
        Some(_) if output.is_some() => "found\n".into(),
        Some(t) => format!("found\n{t}"),
        None => "exhausted: none\n".into(),
    })
}

fn classify(text: &str, lmax: usize, budget: u64, opts: &HomologyOptions) -> Out {
    let graphs: Vec<(usize, String, Graph)> = text
        .lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                return None;
            }
            match parse_graph6_line(line) {
                Ok(g) => Some((i + 1, line.to_string(), g)),
                Err(e) => {
                    log::warn!("line {}: skipped: {e}", i + 1);
                    None
                }
            }
        })
        .collect();
    let records: Vec<Value> = graphs
        .par_iter()
        .map(|(line, code, g)| {
            let small = diameter(g) <= 2;
            let star = small
                .then(|| check_star_property(g).ok())
                .flatten()
                .map(|s| s == StarProperty::Holds);
            let s = small.then(|| match search_s_structure(g, budget) {
                Ok(SearchOutcome::Found(_)) => "found",
                Ok(SearchOutcome::Exhausted) => "none",
                Err(_) => "budget",
            });
            let diagonal = maghom::mag_homology::is_diagonal_up_to(g, lmax, opts).ok();
            let ahk = match ahk_edge_cycle_check(g) {
                Ok(EdgeCycleCheck::Holds) => Some(true),
                Ok(EdgeCycleCheck::Fails { .. }) => Some(false),
                Err(_) => None,
            };
            json!({
                "line": line,
                "graph6": code,
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "pawful": is_pawful(g).verdict,
                "star_property": star,
                "s_structure": s,
                "diagonal": diagonal,
                "lmax": lmax,
                "ahk": ahk,
            })
        })
        .collect();
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(&r).expect("serializable"));
        out.push('\n');
    }
    Ok(out)
}
