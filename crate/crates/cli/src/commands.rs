//! Command execution and output rendering.

use std::fmt::Write;

use quivrel_core::continuous::{
    check_wedge_admissibility, hom_dim, min_nilpotency_index, oracle_grid_plane, region_sample, Branch,
    ContinuousModel, PointCoord, RelationConfig, Window, DEFAULT_ORACLE_CAP,
};
use quivrel_core::length::{check_length_function, check_weakly_archimedean, length_relation};
use quivrel_core::{
    double_quotient_dim, stack_ideals, Coeff, Error, IdealPresentation, LinComb, Quotient, Verdict, VertexId,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ast::SpecDocument;
use crate::error::CliError;
use crate::resolve::{parse_signed, resolve, resolve_fragment, FiniteSpec, ModelSpec, Resolved};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Csv,
    Kv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub degree_bound: usize,
    pub cycle_cap: usize,
    pub format: Format,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            degree_bound: 12,
            cycle_cap: quivrel_core::ideal::DEFAULT_CYCLE_CAP,
            format: Format::Human,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    CheckAdmissible,
    HomDim {
        x: String,
        y: String,
    },
    Basis {
        i: String,
        j: String,
    },
    RadicalDim {
        i: String,
        j: String,
    },
    Connected,
    /// The second document holds the relations of `J`.
    Stack {
        second: Box<SpecDocument>,
    },
    MonoidCheck {
        seed: u64,
        samples: usize,
    },
    Region {
        window: String,
        step: String,
    },
    Nilpotency {
        n: usize,
    },
    OraclePlane {
        m: usize,
        n: usize,
    },
    /// Canonical form of the document.
    Print,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckAdmissible => "check-admissible",
            Command::HomDim { .. } => "homdim",
            Command::Basis { .. } => "basis",
            Command::RadicalDim { .. } => "radical-dim",
            Command::Connected => "connected",
            Command::Stack { .. } => "stack",
            Command::MonoidCheck { .. } => "monoid-check",
            Command::Region { .. } => "region",
            Command::Nilpotency { .. } => "nilpotency",
            Command::OraclePlane { .. } => "oracle-plane",
            Command::Print => "print",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

type Line = Vec<(String, String)>;

enum Body {
    Records(Vec<Line>),
    Table {
        header: Vec<&'static str>,
        rows: Vec<Vec<String>>,
        summary: Line,
    },
    Text(String),
}

struct Output {
    body: Body,
    code: i32,
    warnings: Vec<String>,
}

fn kv(pairs: &[(&str, String)]) -> Line {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Splits core `k=v k=v` lines into pairs.
fn split_kv(line: &str) -> Line {
    line.split(' ')
        .filter_map(|part| part.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

fn render(body: &Body, format: Format) -> String {
    let mut out = String::new();
    match (body, format) {
        (Body::Text(t), _) => out.push_str(t),
        (Body::Records(lines), Format::Kv) => {
            for l in lines {
                let parts: Vec<String> = l.iter().map(|(k, v)| format!("{k}={v}")).collect();
                writeln!(out, "{}", parts.join(" ")).unwrap();
            }
        }
        (Body::Records(lines), Format::Csv) => {
            out.push_str("key,value\n");
            for (k, v) in lines.iter().flatten() {
                writeln!(out, "{k},{}", csv_cell(v)).unwrap();
            }
        }
        (Body::Records(lines), Format::Human) => {
            for l in lines {
                let parts: Vec<String> = l.iter().map(|(k, v)| format!("{k}: {v}")).collect();
                writeln!(out, "{}", parts.join(", ")).unwrap();
            }
        }
        (Body::Table { header, rows, .. }, Format::Csv) => {
            writeln!(out, "{}", header.join(",")).unwrap();
            for r in rows {
                let cells: Vec<String> = r.iter().map(|c| csv_cell(c)).collect();
                writeln!(out, "{}", cells.join(",")).unwrap();
            }
        }
        (Body::Table { header, rows, summary }, Format::Kv) => {
            for r in rows {
                let parts: Vec<String> = header.iter().zip(r).map(|(h, v)| format!("{h}={v}")).collect();
                writeln!(out, "{}", parts.join(" ")).unwrap();
            }
            if !summary.is_empty() {
                let parts: Vec<String> = summary.iter().map(|(k, v)| format!("{k}={v}")).collect();
                writeln!(out, "{}", parts.join(" ")).unwrap();
            }
        }
        (Body::Table { header, rows, summary }, Format::Human) => {
            let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for r in rows {
                for (w, v) in width.iter_mut().zip(r) {
                    *w = (*w).max(v.len());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:>w$}")).collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", line(header.clone())).unwrap();
            for r in rows {
                writeln!(out, "{}", line(r.iter().map(String::as_str).collect())).unwrap();
            }
            if !summary.is_empty() {
                let parts: Vec<String> = summary.iter().map(|(k, v)| format!("{k}: {v}")).collect();
                writeln!(out, "{}", parts.join(", ")).unwrap();
            }
        }
    }
    out
}

/// Runs one command; `doc` may be absent only for `oracle-plane`.
pub fn run_command(cmd: &Command, doc: Option<&SpecDocument>, opts: &Options) -> Outcome {
    match execute(cmd, doc, opts) {
        Ok(out) => {
            let mut stderr = String::new();
            for w in &out.warnings {
                writeln!(stderr, "warning: {w}").unwrap();
            }
            Outcome {
                code: out.code,
                stdout: render(&out.body, opts.format),
                stderr,
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn execute(cmd: &Command, doc: Option<&SpecDocument>, opts: &Options) -> Result<Output, CliError> {
    if let Command::OraclePlane { m, n } = cmd {
        return oracle_plane(*m, *n);
    }
    let doc = doc.ok_or_else(|| usage(format!("`{}` needs a spec document", cmd.name())))?;
    if let Command::Print = cmd {
        return Ok(Output {
            body: Body::Text(crate::printer::print_spec(doc)),
            code: 0,
            warnings: vec![],
        });
    }
    match resolve(doc)? {
        Resolved::Finite(spec) => finite(cmd, &spec, opts),
        Resolved::Model(spec) => model(cmd, &spec),
    }
}

struct FiniteIdeal {
    ideal: IdealPresentation,
    warnings: Vec<String>,
    length_generators: Option<usize>,
}

/// Relations, point relations and length relations together.
fn finite_ideal(spec: &FiniteSpec, opts: &Options) -> Result<FiniteIdeal, CliError> {
    let mut gens: Vec<LinComb> = spec.relations.clone();
    for p in &spec.points {
        gens.extend(p.generators());
    }
    let mut warnings = Vec::new();
    let mut length_generators = None;
    if let Some(l) = &spec.length {
        if let (Some(la), Some(cut)) = (&l.assignment, &l.cut) {
            let rel = length_relation(la, cut, opts.degree_bound)?;
            warnings.extend(rel.warning.clone());
            length_generators = Some(rel.generators.len());
            gens.extend(rel.generators.iter().cloned().map(LinComb::from_path));
        }
    }
    let bound = gens
        .iter()
        .filter_map(LinComb::degree)
        .max()
        .unwrap_or(0)
        .max(opts.degree_bound);
    let ideal = IdealPresentation::new(spec.quiver.clone(), gens, bound)?;
    Ok(FiniteIdeal {
        ideal,
        warnings,
        length_generators,
    })
}

fn vertex(spec: &FiniteSpec, name: &str) -> Result<VertexId, CliError> {
    spec.quiver
        .vertex(name)
        .ok_or_else(|| CliError::Core(Error::UnknownVertex(name.to_string())))
}

fn finite(cmd: &Command, spec: &FiniteSpec, opts: &Options) -> Result<Output, CliError> {
    let q = &spec.quiver;
    let records = |lines: Vec<Line>, code: i32, warnings: Vec<String>| Output {
        body: Body::Records(lines),
        code,
        warnings,
    };
    match cmd {
        Command::CheckAdmissible => {
            let fi = finite_ideal(spec, opts)?;
            let report = Quotient::new(fi.ideal)?.admissibility(opts.cycle_cap)?;
            let mut lines: Vec<Line> = report.to_kv(q).iter().map(|l| split_kv(l)).collect();
            let mut sources = kv(&[
                ("relations", spec.relations.len().to_string()),
                ("point_relations", spec.points.len().to_string()),
            ]);
            if let Some(n) = fi.length_generators {
                sources.push(("length_generators".into(), n.to_string()));
            }
            lines.push(sources);
            let code = if report.verdict == Verdict::Admissible { 0 } else { 1 };
            Ok(records(lines, code, fi.warnings))
        }
        Command::HomDim { x, y } => {
            let (i, j) = (vertex(spec, x)?, vertex(spec, y)?);
            let fi = finite_ideal(spec, opts)?;
            let basis = Quotient::new(fi.ideal)?.hom_basis(i, j);
            Ok(records(vec![split_kv(&basis.to_string())], 0, fi.warnings))
        }
        Command::Basis { i, j } => {
            let (i, j) = (vertex(spec, i)?, vertex(spec, j)?);
            let fi = finite_ideal(spec, opts)?;
            let basis = Quotient::new(fi.ideal)?.hom_basis(i, j);
            let mut lines = vec![split_kv(&basis.to_string())];
            lines.extend(basis.paths.iter().map(|p| kv(&[("path", q.path_name(p))])));
            Ok(records(lines, 0, fi.warnings))
        }
        Command::RadicalDim { i, j } => {
            let (i, j) = (vertex(spec, i)?, vertex(spec, j)?);
            let fi = finite_ideal(spec, opts)?;
            let d = Quotient::new(fi.ideal)?.radical_dim(i, j)?;
            Ok(records(vec![kv(&[("radical_dim", d.to_string())])], 0, fi.warnings))
        }
        Command::Connected => {
            let fi = finite_ideal(spec, opts)?;
            let c = Quotient::new(fi.ideal)?.is_connected();
            Ok(records(
                vec![kv(&[("connected", c.to_string())])],
                if c { 0 } else { 1 },
                fi.warnings,
            ))
        }
        Command::Stack { second } => {
            let fi = finite_ideal(spec, opts)?;
            let gens_j = resolve_fragment(q, second)?;
            let stacked = Quotient::new(stack_ideals(&fi.ideal, &gens_j)?)?;
            let mut rows = Vec::new();
            let mut agree = true;
            for i in q.vertex_ids() {
                for j in q.vertex_ids() {
                    let double = double_quotient_dim(&fi.ideal, &gens_j, i, j)?;
                    let single = stacked.hom_dim(i, j);
                    agree &= double == single;
                    rows.push(vec![
                        q.vertex_name(i).to_string(),
                        q.vertex_name(j).to_string(),
                        double.to_string(),
                        single.to_string(),
                        (double == single).to_string(),
                    ]);
                }
            }
            let summary = kv(&[("pairs", rows.len().to_string()), ("agree", agree.to_string())]);
            Ok(Output {
                body: Body::Table {
                    header: vec!["i", "j", "double_quotient", "stacked", "agree"],
                    rows,
                    summary,
                },
                code: if agree { 0 } else { 1 },
                warnings: fi.warnings,
            })
        }
        Command::MonoidCheck { seed, samples } => {
            let l = spec
                .length
                .as_ref()
                .ok_or_else(|| usage("`monoid-check` needs a `length` section"))?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let triples = l.monoid.sample_triples(*samples, &mut rng);
            let report = check_weakly_archimedean(&l.monoid, &triples, 1 << 40);
            let mut lines = vec![kv(&[
                ("monoid", l.monoid.to_string()),
                ("samples", triples.len().to_string()),
                ("all_pass", report.all_pass().to_string()),
            ])];
            for (name, r) in report.axioms() {
                let mut line = kv(&[
                    ("axiom", name.to_string()),
                    ("status", if r.passed { "pass" } else { "fail" }.into()),
                ]);
                if let Some(w) = &r.witness {
                    let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                    line.push(("witness".into(), format!("({})", w.join(","))));
                }
                lines.push(line);
            }
            let mut ok = report.all_pass();
            if let Some(la) = &l.assignment {
                let lf = check_length_function(la, opts.degree_bound);
                ok &= lf.ok();
                let mut line = kv(&[("length_function", if lf.ok() { "pass" } else { "fail" }.into())]);
                if let Some(p) = &lf.witness {
                    line.push(("witness".into(), q.path_name(p)));
                }
                lines.push(line);
            }
            Ok(records(lines, if ok { 0 } else { 1 }, vec![]))
        }
        Command::Region { .. } | Command::Nilpotency { .. } => {
            Err(usage(format!("`{}` needs a `model` section", cmd.name())))
        }
        Command::OraclePlane { .. } | Command::Print => unreachable!("handled before resolution"),
    }
}

fn coord_error(model: &ContinuousModel, text: &str) -> CliError {
    let hint = match model {
        ContinuousModel::CrossingLines => "`R:x` or `R':x`",
        ContinuousModel::GluedCircleChain { .. } => "`x` on the line or `C<n>:x` on circle n",
        ContinuousModel::PlaneGrid => "`x,y`",
        _ => "a rational such as `-3/2`",
    };
    usage(format!(
        "cannot read point `{text}` of {}; expected {hint}",
        model.name()
    ))
}

/// Point syntax per model.
pub fn parse_coord(model: &ContinuousModel, text: &str) -> Result<PointCoord, CliError> {
    let t = text.trim();
    let err = || coord_error(model, text);
    let num = |s: &str| parse_signed(s.trim()).ok_or_else(err);
    match model {
        ContinuousModel::RealLine | ContinuousModel::SemiContinuousInterval(_) => Ok(PointCoord::Real(num(t)?)),
        ContinuousModel::CyclicCircle { .. } => Ok(PointCoord::Arc(num(t)?)),
        ContinuousModel::CrossingLines => {
            let (b, x) = t.split_once(':').ok_or_else(err)?;
            let branch = match b.trim() {
                "R" => Branch::R,
                "R'" => Branch::RPrime,
                _ => return Err(err()),
            };
            Ok(PointCoord::Crossing(branch, num(x)?))
        }
        ContinuousModel::GluedCircleChain { .. } => match t.split_once(':') {
            None => Ok(PointCoord::ChainLine(num(t)?)),
            Some((c, x)) => {
                let n = c
                    .trim()
                    .strip_prefix('C')
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(err)?;
                Ok(PointCoord::ChainArc(n, num(x)?))
            }
        },
        ContinuousModel::PlaneGrid => {
            let inner = t.trim_start_matches('(').trim_end_matches(')');
            let (x, y) = inner.split_once(',').ok_or_else(err)?;
            Ok(PointCoord::Plane(num(x)?, num(y)?))
        }
        ContinuousModel::BigWedge { .. } => Err(usage("points of a wedge model are not addressable")),
    }
}

fn parse_window(text: &str) -> Result<Window, CliError> {
    let parts: Vec<Coeff> = text
        .split(',')
        .map(|s| parse_signed(s.trim()))
        .collect::<Option<_>>()
        .ok_or_else(|| usage(format!("cannot read window `{text}`; expected `x0,x1,y0,y1`")))?;
    let [x0, x1, y0, y1]: [Coeff; 4] = parts
        .try_into()
        .map_err(|_| usage(format!("window `{text}` needs four bounds")))?;
    Ok(Window { x0, x1, y0, y1 })
}

fn model(cmd: &Command, spec: &ModelSpec) -> Result<Output, CliError> {
    let (m, cfg) = (&spec.model, &spec.config);
    match cmd {
        Command::CheckAdmissible => {
            if !matches!(m, ContinuousModel::BigWedge { .. }) {
                return Err(usage(format!(
                    "`check-admissible` on a continuous model supports wedges, not {}",
                    m.name()
                )));
            }
            let r = check_wedge_admissibility(m, cfg)?;
            let mut lines = vec![kv(&[("verdict", r.verdict.to_string())])];
            let uncovered = match &r.uncovered {
                None => "infinite".to_string(),
                Some(s) => format!("{{{}}}", s.iter().map(usize::to_string).collect::<Vec<_>>().join(";")),
            };
            lines.push(kv(&[
                ("uncovered", uncovered),
                ("cut", cfg.length_cut.is_some().to_string()),
            ]));
            if let Some(o) = &r.obstruction {
                lines.push(kv(&[("obstruction", format!("\"{o}\""))]));
            }
            let code = if r.verdict == Verdict::Admissible { 0 } else { 1 };
            Ok(Output {
                body: Body::Records(lines),
                code,
                warnings: vec![],
            })
        }
        Command::HomDim { x, y } => {
            let d = hom_dim(m, cfg, &parse_coord(m, x)?, &parse_coord(m, y)?)?;
            Ok(Output {
                body: Body::Records(vec![kv(&[("dim", d.to_string())])]),
                code: 0,
                warnings: vec![],
            })
        }
        Command::Region { window, step } => {
            let window = parse_window(window)?;
            let step = parse_signed(step).ok_or_else(|| usage(format!("cannot read step `{step}`")))?;
            let samples = region_sample(m, cfg, &window, &step)?;
            let nonzero = samples.iter().filter(|s| !s.dim.is_zero()).count();
            let summary = kv(&[("samples", samples.len().to_string()), ("nonzero", nonzero.to_string())]);
            let rows = samples
                .into_iter()
                .map(|s| vec![s.x.to_string(), s.y.to_string(), s.dim.to_string()])
                .collect();
            Ok(Output {
                body: Body::Table {
                    header: vec!["x", "y", "dim"],
                    rows,
                    summary,
                },
                code: 0,
                warnings: vec![],
            })
        }
        Command::Nilpotency { n } => {
            let ContinuousModel::GluedCircleChain { c0, q } = m else {
                return Err(usage(format!("`nilpotency` needs a chain model, not {}", m.name())));
            };
            let cut = cfg
                .length_cut
                .as_ref()
                .ok_or_else(|| usage("`nilpotency` needs a model `cut`"))?;
            let mut rows = Vec::new();
            let mut c = c0.clone();
            for k in 0..=*n {
                rows.push(vec![
                    k.to_string(),
                    c.to_string(),
                    min_nilpotency_index(c0, q, cut, k).to_string(),
                ]);
                c *= q;
            }
            Ok(Output {
                body: Body::Table {
                    header: vec!["n", "circumference", "min_index"],
                    rows,
                    summary: vec![],
                },
                code: 0,
                warnings: vec![],
            })
        }
        _ => Err(usage(format!("`{}` needs a `quiver` section", cmd.name()))),
    }
}

fn oracle_plane(m: usize, n: usize) -> Result<Output, CliError> {
    if m == 0 || n == 0 {
        return Err(usage("grid sides must be positive"));
    }
    let cap = DEFAULT_ORACLE_CAP.max(m).max(n);
    let entries = oracle_grid_plane(m, n, cap)?;
    let mut rows = Vec::new();
    let mut agree = true;
    let at = |(a, b): (usize, usize)| PointCoord::Plane(Coeff::from_integer(a.into()), Coeff::from_integer(b.into()));
    for e in &entries {
        let closed = hom_dim(
            &ContinuousModel::PlaneGrid,
            &RelationConfig::empty(),
            &at(e.from),
            &at(e.to),
        )?;
        let ok = closed.to_string() == e.dim.to_string();
        agree &= ok;
        rows.push(vec![
            format!("({},{})", e.from.0, e.from.1),
            format!("({},{})", e.to.0, e.to.1),
            e.dim.to_string(),
            closed.to_string(),
            ok.to_string(),
        ]);
    }
    let summary = kv(&[("pairs", rows.len().to_string()), ("agree", agree.to_string())]);
    Ok(Output {
        body: Body::Table {
            header: vec!["from", "to", "oracle", "closed_form", "agree"],
            rows,
            summary,
        },
        code: if agree { 0 } else { 1 },
        warnings: vec![],
    })
}
