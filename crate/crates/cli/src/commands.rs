use modulilog::{
    build_a, check_avoidance, contract_face, faces, facets, iterated_integral, mzv, period, polylog_series,
    random_convergent_avector, vertex_graph_dot, vertex_image, vertices, AVector, AvoidanceReport, Error, Face, Mark,
    PathSpec, PeriodMatrix, PolylogIndex, QuadOptions, StablePartition, ViolationSource,
};
use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::{Command, RunConfig, VertexSelect};
use crate::output::{complex_json, complex_text, Report, Table};
use crate::CliError;

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("core types serialize to JSON")
}

fn members_text(f: &Face) -> String {
    f.members().iter().map(StablePartition::to_string).collect::<Vec<_>>().join(" ; ")
}

fn face_list(list: &[Face]) -> Report {
    let mut table = Table::new(["index", "members"]);
    for (i, f) in list.iter().enumerate() {
        table.push(vec![i.to_string(), members_text(f)]);
    }
    Report::new(to_json(&list), table)
}

fn select_vertex(n: usize, select: &VertexSelect) -> Result<Face, CliError> {
    let face = match (&select.vertex_index, &select.face) {
        (Some(i), _) => {
            let all = vertices(n)?;
            let len = all.len();
            all.into_iter().nth(*i).ok_or_else(|| {
                Error::Precondition(format!("vertex index {i} out of range (B_{n} has {len} vertices)"))
            })?
        }
        (None, Some(s)) => serde_json::from_str::<Face>(s).map_err(|e| Error::Parse(format!("--face: {e}")))?,
        (None, None) => return Err(CliError::Usage("give --vertex-index or --face".into())),
    };
    if face.host().n() != n {
        return Err(Error::HostMismatch { left: face.host().n(), right: n }.into());
    }
    if !face.is_vertex() {
        return Err(Error::NotAVertex { codim: face.codim(), n }.into());
    }
    Ok(face)
}

fn path_from(points: Option<&[Complex64]>) -> Result<PathSpec, CliError> {
    let Some(points) = points else {
        return Ok(PathSpec::straight());
    };
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut w = points.to_vec();
    if w.first() != Some(&zero) {
        w.insert(0, zero);
    }
    if w.last() != Some(&one) {
        w.push(one);
    }
    Ok(PathSpec::new(w, modulilog::itint::DEFAULT_CLEARANCE)?)
}

fn numeric(value: Complex64, est_error: f64, count: usize) -> Report {
    let mut table = Table::new(["re", "im", "est_error", "terms_or_panels"]);
    table.push(vec![value.re.to_string(), value.im.to_string(), format!("{est_error:e}"), count.to_string()]);
    let json = json!({ "value": complex_json(value), "est_error": est_error, "terms_or_panels": count });
    Report::new(json, table)
}

fn avoidance_json(r: &AvoidanceReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            let source = match &v.source {
                ViolationSource::Boundary { partition, alpha } => {
                    json!({ "kind": "boundary", "partition": to_json(partition), "alpha": to_json(alpha) })
                }
                ViolationSource::Fiber { index, value } => {
                    json!({ "kind": "fiber", "index": index, "value": complex_json(*value) })
                }
            };
            json!({ "face": to_json(&v.face), "source": source })
        })
        .collect();
    json!({
        "n": r.n,
        "a": r.a.iter().copied().map(complex_json).collect::<Vec<_>>(),
        "convergent": r.convergent,
        "boundary_components": r.boundary_components.iter().map(|b| json!({
            "partition": to_json(&b.partition),
            "alpha": to_json(&b.alpha),
        })).collect::<Vec<_>>(),
        "nonboundary": r.nonboundary.iter().map(|f| json!({
            "index": f.index,
            "value": complex_json(f.value),
        })).collect::<Vec<_>>(),
        "faces_checked": r.faces_checked,
        "violations": violations,
    })
}

fn avoidance_rows(table: &mut Table, sample: usize, r: &AvoidanceReport) {
    if r.violations.is_empty() {
        table.push(vec![sample.to_string(), r.faces_checked.to_string(), String::new(), "none".into()]);
    }
    for v in &r.violations {
        let source = match &v.source {
            ViolationSource::Boundary { partition, alpha } => format!("boundary {partition} type {}", to_json(alpha)),
            ViolationSource::Fiber { index, value } => format!("fiber s{index} = {}", complex_text(*value)),
        };
        table.push(vec![sample.to_string(), r.faces_checked.to_string(), members_text(&v.face), source]);
    }
}

fn matrix_json(m: &PeriodMatrix) -> Value {
    json!({
        "z": complex_json(m.z),
        "row_labels": m.row_labels,
        "col_labels": m.col_labels,
        "entries": m.entries.iter().map(|r| r.iter().copied().map(complex_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "est_errors": m.est_errors,
        "determinant": complex_json(m.determinant()),
    })
}

fn matrix_rows(table: &mut Table, m: &PeriodMatrix) {
    for (r, label) in m.row_labels.iter().enumerate() {
        for (c, col) in m.col_labels.iter().enumerate() {
            table.push(vec![
                complex_text(m.z),
                label.clone(),
                col.clone(),
                complex_text(m.entries[r][c]),
                format!("{:e}", m.est_errors[r][c]),
            ]);
        }
    }
}

pub fn run(command: &Command, cfg: &RunConfig) -> Result<Report, CliError> {
    let quad = QuadOptions { max_weight: cfg.max_n as usize, ..QuadOptions::with_tol(cfg.tol) };
    let report = match command {
        Command::Facets { n } => {
            let list = facets(*n)?;
            let mut table = Table::new(["index", "partition"]);
            for (i, p) in list.iter().enumerate() {
                table.push(vec![i.to_string(), p.to_string()]);
            }
            Report::new(to_json(&list), table)
        }
        Command::Faces { n, k } => face_list(&faces(*n, *k)?),
        Command::Vertices { n } => {
            let mut report = face_list(&vertices(*n)?);
            report.dot = Some(vertex_graph_dot(*n)?);
            report
        }
        Command::VertexImage { n, select, i } => {
            let v = select_vertex(*n, select)?;
            let image = vertex_image(&v, *i)?.value();
            let mut table = Table::new(["vertex", "i", "image"]);
            table.push(vec![members_text(&v), i.to_string(), image.to_string()]);
            Report::new(json!({ "vertex": to_json(&v), "i": i, "image": image }), table)
        }
        Command::Contract { n, select, mark } => {
            let v = select_vertex(*n, select)?;
            let mark: Mark = mark.parse()?;
            let c = contract_face(&v, mark)?;
            let mut table = Table::new(["members", "collapsed", "merged"]);
            table.push(vec![members_text(&c.face), c.collapsed.to_string(), c.merged.to_string()]);
            Report::new(to_json(&c), table)
        }
        Command::DivisorA { a } => {
            let locus = build_a(&AVector::new(a.0.clone())?)?;
            let mut table = Table::new(["component", "type", "partition_or_value"]);
            for b in &locus.boundary {
                table.push(vec![
                    "boundary".into(),
                    to_json(&b.alpha).as_str().unwrap_or("").into(),
                    b.partition.to_string(),
                ]);
            }
            for f in &locus.nonboundary {
                table.push(vec!["fiber".into(), format!("s{}", f.index), complex_text(f.value)]);
            }
            let json = json!({
                "n": locus.n,
                "boundary": locus.boundary.iter().map(|b| json!({
                    "partition": to_json(&b.partition),
                    "alpha": to_json(&b.alpha),
                })).collect::<Vec<_>>(),
                "nonboundary": locus.nonboundary.iter().map(|f| json!({
                    "index": f.index,
                    "value": complex_json(f.value),
                })).collect::<Vec<_>>(),
            });
            Report::new(json, table)
        }
        Command::CheckAvoidance { n, a, random } => {
            let mut table = Table::new(["sample", "faces_checked", "face", "violation"]);
            match (a, random) {
                (Some(a), None) => {
                    if let Some(n) = n {
                        if *n != a.0.len() {
                            return Err(Error::LengthMismatch { expected: *n, got: a.0.len() }.into());
                        }
                    }
                    let r = check_avoidance(&AVector::new(a.0.clone())?)?;
                    avoidance_rows(&mut table, 0, &r);
                    Report::new(avoidance_json(&r), table)
                }
                (None, Some(k)) => {
                    let n = n.expect("clap enforces --n with --random");
                    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                    let mut reports = Vec::with_capacity(*k);
                    for s in 0..*k {
                        let r = check_avoidance(&random_convergent_avector(n, &mut rng)?)?;
                        avoidance_rows(&mut table, s, &r);
                        reports.push(r);
                    }
                    let clean = reports.iter().filter(|r| r.violations.is_empty()).count();
                    let json = json!({
                        "n": n,
                        "seed": cfg.seed,
                        "samples": k,
                        "clean": clean,
                        "reports": reports.iter().map(avoidance_json).collect::<Vec<_>>(),
                    });
                    Report::new(json, table)
                }
                _ => return Err(CliError::Usage("check-avoidance needs --a or --random".into())),
            }
        }
        Command::Polylog { index, x, max_terms } => {
            let idx = PolylogIndex::with_override(index.0.clone())?;
            let v = polylog_series(&idx, &x.0, cfg.tol, *max_terms)?;
            numeric(v.value, v.error_bound, v.terms)
        }
        Command::Mzv { index } => {
            let v = mzv(&PolylogIndex::new(index.0.clone())?, cfg.tol)?;
            numeric(v.value, v.error_bound, v.terms)
        }
        Command::Itint { a, path } => {
            let path = path_from(path.as_ref().map(|p| p.0.as_slice()))?;
            let v = iterated_integral(&AVector::new(a.0.clone())?, &path, &quad)?;
            numeric(v.value, v.est_error, v.panels)
        }
        Command::PeriodMatrix { z, path } => {
            let path = path.as_ref().map(|p| path_from(Some(&p.0))).transpose()?;
            let m = period::period_matrix(*z, path.as_ref(), cfg.tol)?;
            let mut table = Table::new(["z", "row", "col", "value", "est_error"]);
            matrix_rows(&mut table, &m);
            Report::new(matrix_json(&m), table)
        }
        Command::DimensionJump { z } => {
            let zs: Vec<Complex64> = match z {
                Some(list) => list.0.clone(),
                None => (1..=6).map(|k| Complex64::new(1.0 - 10f64.powi(-k), 0.0)).collect(),
            };
            let r = period::dimension_jump_report(&zs, cfg.tol)?;
            let mut table = Table::new(["z", "row", "col", "value", "est_error"]);
            for m in r.steps.iter().chain([&r.limit]) {
                matrix_rows(&mut table, m);
            }
            let json = json!({
                "steps": r.steps.iter().map(matrix_json).collect::<Vec<_>>(),
                "limit": matrix_json(&r.limit),
            });
            Report::new(json, table)
        }
    };
    Ok(report)
}
