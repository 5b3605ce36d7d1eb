use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;

use bookem::bounds::{arboricity_partition, bound_reports, refined_local_bound, ForestPartition, Side};
use bookem::construct::{
    compact_star_forests, kn_zigzag, ktree_color_partition, local_embedding_from_stars, orientation_stars,
    star_forests_from_forests, template_search_with, union_embedding_from_star_forests, ConstructError, Orientation,
    TemplateQuery,
};
use bookem::embedding::{parse_embedding, parse_spine, serialize_embedding, verify_with_cap, DEFAULT_VIOLATION_CAP};
use bookem::graph::{
    generate, parse_graph, recognize_k_tree, serialize_graph, GraphFamily, KTree, DEFAULT_STACKED_LEVEL_CAP,
};
use bookem::solver::{solve, Budget, Parameter, SolveRequest};
use bookem::{Graph, LinearEmbedding, VerificationReport};

use crate::render::{render_svg, RenderSpec};
use crate::{
    BoundArgs, Cli, Command, ConstructArgs, Expect, Family, GenerateArgs, Method, OrientationArg, RenderArgs,
    SolveArgs, Status, TemplateParams, VerifyArgs, MAX_VERTICES_ENV,
};

/// Vertex cap of `generate` unless the environment overrides it. Large
/// enough for the level-9 stacked triangulation.
const DEFAULT_MAX_VERTICES: usize = 20_000;

pub(crate) fn dispatch(cli: &Cli) -> Result<Status> {
    match &cli.command {
        Command::Generate(a) => cmd_generate(cli, a),
        Command::Verify(a) => cmd_verify(cli, a),
        Command::Bound(a) => cmd_bound(cli, a),
        Command::Construct(a) => cmd_construct(cli, a),
        Command::Solve(a) => cmd_solve(cli, a),
        Command::Template(a) => cmd_template(cli, &a.params),
        Command::Render(a) => cmd_render(cli, a),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn read_embedding(path: &Path, graph: &Graph) -> Result<LinearEmbedding> {
    parse_embedding(&read(path)?, graph).with_context(|| format!("{}", path.display()))
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            // A closed pipe (`bookem ... | head`) is not a failure.
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            r => r.context("cannot write to standard output"),
        },
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn need<T: Copy>(value: Option<T>, flag: &str, what: &str) -> Result<T> {
    value.ok_or_else(|| anyhow!("{what} needs --{flag}"))
}

fn max_vertices() -> Result<Option<usize>> {
    match std::env::var(MAX_VERTICES_ENV) {
        Ok(s) => Ok(Some(s.trim().parse().with_context(|| format!("{MAX_VERTICES_ENV}={s:?} is not a vertex count"))?)),
        Err(_) => Ok(None),
    }
}

fn stacked_vertices(level: u32) -> usize {
    3usize.saturating_pow(level).saturating_add(2)
}

#[derive(Serialize)]
struct GraphJson {
    n: usize,
    m: usize,
    edges: Vec<[usize; 2]>,
}

fn cmd_generate(cli: &Cli, a: &GenerateArgs) -> Result<Status> {
    let what = "this family";
    let family = match a.family {
        Family::Kn => GraphFamily::Complete { n: need(a.n, "n", what)? },
        Family::Knm => GraphFamily::CompleteBipartite { a: need(a.a, "a", what)?, b: need(a.b, "b", what)? },
        Family::Stacked => GraphFamily::StackedTriangulation { level: need(a.level, "level", what)? },
        Family::Ktree => GraphFamily::KTree { k: need(a.k, "k", what)?, n: need(a.n, "n", what)?, seed: a.seed },
        Family::Path => GraphFamily::Path { n: need(a.n, "n", what)? },
        Family::Cycle => GraphFamily::Cycle { n: need(a.n, "n", what)? },
    };
    let vertices = match family {
        GraphFamily::Complete { n }
        | GraphFamily::KTree { n, .. }
        | GraphFamily::Path { n }
        | GraphFamily::Cycle { n } => n,
        GraphFamily::CompleteBipartite { a, b } => a.saturating_add(b),
        GraphFamily::StackedTriangulation { level } => stacked_vertices(level),
        GraphFamily::Custom => unreachable!("not offered on the command line"),
    };
    let override_cap = max_vertices()?;
    let cap = override_cap.unwrap_or(DEFAULT_MAX_VERTICES);
    if vertices > cap {
        bail!("{vertices} vertices exceed the cap of {cap}; raise it with {MAX_VERTICES_ENV}");
    }
    // The vertex cap already bounds the level; only keep the default level
    // cap when nothing was overridden.
    let level_cap = match override_cap {
        Some(_) => u32::MAX,
        None => DEFAULT_STACKED_LEVEL_CAP,
    };
    let g = generate(&family, level_cap)?;
    let text = if cli.json {
        to_json(&GraphJson { n: g.n(), m: g.m(), edges: g.edges().iter().map(|e| [e.u, e.v]).collect() })?
    } else {
        serialize_graph(&g)
    };
    emit(cli, &text)?;
    Ok(Status::Success)
}

fn report_text(r: &VerificationReport) -> String {
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut s = String::new();
    writeln!(s, "book embedding:  {}", yes(r.is_book)).unwrap();
    writeln!(s, "union embedding: {}", yes(r.is_union)).unwrap();
    writeln!(s, "pages:           {}", r.page_count).unwrap();
    writeln!(s, "locality:        {}", r.locality).unwrap();
    if r.violations.is_empty() {
        writeln!(s, "violations:      none").unwrap();
    } else {
        writeln!(s, "violations:").unwrap();
        for v in &r.violations {
            let kind = serde_json::to_value(v.kind).ok().and_then(|k| k.as_str().map(String::from)).unwrap_or_default();
            writeln!(s, "  page {}: {}-{} crosses {}-{} ({kind})", v.page, v.edge1.u, v.edge1.v, v.edge2.u, v.edge2.v)
                .unwrap();
        }
        if r.truncated {
            writeln!(s, "  ... more omitted (use --all-violations)").unwrap();
        }
    }
    s
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs) -> Result<Status> {
    let g = read_graph(&a.graph)?;
    let emb = read_embedding(&a.embedding, &g)?;
    let cap = if a.all_violations { None } else { Some(DEFAULT_VIOLATION_CAP) };
    let report = verify_with_cap(&emb, cap);
    emit(cli, &if cli.json { to_json(&report)? } else { report_text(&report) })?;

    let mut ok = match a.expect {
        Some(Expect::Book) => report.is_book,
        Some(Expect::Union) => report.is_union,
        None => true,
    };
    if let Some(l) = a.max_locality {
        ok &= report.locality <= l;
    }
    if !ok {
        eprintln!("verification failed");
        return Ok(Status::Negative);
    }
    Ok(Status::Success)
}

#[derive(Serialize)]
struct BoundJson<'a> {
    pn_lower: Option<usize>,
    refined_local_lower_bound: usize,
    reports: &'a [bookem::bounds::BoundReport],
}

fn cmd_bound(cli: &Cli, a: &BoundArgs) -> Result<Status> {
    let g = read_graph(&a.graph)?;
    let refined = refined_local_bound(&g, a.pn_lower.unwrap_or(0));
    let reports = bound_reports(&g, a.pn_lower)?;
    let text = if cli.json {
        to_json(&BoundJson { pn_lower: a.pn_lower, refined_local_lower_bound: refined, reports: &reports })?
    } else {
        let mut s = String::new();
        writeln!(s, "refined local lower bound: {refined}").unwrap();
        writeln!(s).unwrap();
        writeln!(s, "{:<12} {:>6} {:>6}", "target", "lower", "upper").unwrap();
        for r in &reports {
            let upper = r.upper.map_or("-".to_string(), |u| u.to_string());
            writeln!(s, "{:<12} {:>6} {:>6}", r.target.name(), r.lower, upper).unwrap();
        }
        for r in &reports {
            writeln!(s, "\n{}:", r.target.name()).unwrap();
            for p in &r.provenance {
                let side = match p.side {
                    Side::Lower => ">=",
                    Side::Upper => "<=",
                };
                writeln!(s, "  {side} {:<4} {:<20} {}", p.value, p.rule, p.witness).unwrap();
            }
        }
        s
    };
    emit(cli, &text)?;
    Ok(Status::Success)
}

/// An embedding plus the facts worth reporting about how it was built.
struct Built {
    method: &'static str,
    embedding: LinearEmbedding,
    notes: Vec<String>,
    /// Whether the construction promises a book embedding rather than a
    /// union embedding.
    book: bool,
}

#[derive(Serialize)]
struct BuiltJson<'a> {
    method: &'a str,
    n: usize,
    m: usize,
    page_count: usize,
    locality: usize,
    is_book: bool,
    is_union: bool,
    notes: &'a [String],
    embedding: String,
}

fn emit_built(cli: &Cli, b: &Built) -> Result<Status> {
    let report = verify_with_cap(&b.embedding, Some(DEFAULT_VIOLATION_CAP));
    if !(report.is_union && (report.is_book || !b.book)) {
        bail!("{} produced an embedding that does not verify", b.method);
    }
    let body = serialize_embedding(&b.embedding);
    let text = if cli.json {
        to_json(&BuiltJson {
            method: b.method,
            n: b.embedding.graph().n(),
            m: b.embedding.graph().m(),
            page_count: report.page_count,
            locality: report.locality,
            is_book: report.is_book,
            is_union: report.is_union,
            notes: &b.notes,
            embedding: body,
        })?
    } else {
        let kind = if report.is_book { "book" } else { "union" };
        let mut s =
            format!("# {}: {kind} embedding, {} pages, locality {}\n", b.method, report.page_count, report.locality);
        for note in &b.notes {
            writeln!(s, "# {note}").unwrap();
        }
        s + &body
    };
    emit(cli, &text)?;
    Ok(Status::Success)
}

fn star_union(g: &Graph, forests: &ForestPartition, method: &'static str, mut notes: Vec<String>) -> Result<Built> {
    let sfp = compact_star_forests(&star_forests_from_forests(forests, g), g);
    if !sfp.validate(g) {
        bail!("star forest split is not a partition into star forests");
    }
    notes.push(format!("{} star forests", sfp.star_forests.len()));
    let embedding = union_embedding_from_star_forests(&sfp, g)?;
    Ok(Built { method, embedding, notes, book: false })
}

fn infer_k(g: &Graph) -> Option<usize> {
    (1..g.n()).find(|&k| KTree::expected_edge_count(k, g.n()) == g.m())
}

fn cmd_construct(cli: &Cli, a: &ConstructArgs) -> Result<Status> {
    let graph = || -> Result<Graph> {
        let path = a.graph.as_deref().ok_or_else(|| anyhow!("this method needs a graph file"))?;
        read_graph(path)
    };
    let built = match a.method {
        Method::StarUnion => {
            let g = graph()?;
            let fp = arboricity_partition(&g);
            star_union(&g, &fp, "star-union", vec![format!("arboricity {}", fp.arboricity())])?
        }
        Method::StarLocal => {
            let g = graph()?;
            let how = match a.orientation {
                OrientationArg::Degeneracy => Orientation::Degeneracy,
                OrientationArg::OutDegree => Orientation::OutDegreePositive,
            };
            let stars = orientation_stars(&g, how)?;
            let note = format!("{} stars", stars.len());
            let embedding = local_embedding_from_stars(&g, &stars)?;
            Built { method: "star-local", embedding, notes: vec![note], book: true }
        }
        Method::KnZigzag => {
            let n = need(a.template.n, "n", "kn-zigzag")?;
            Built { method: "kn-zigzag", embedding: kn_zigzag(n)?, notes: Vec::new(), book: true }
        }
        Method::KtreeColors => {
            let g = graph()?;
            let k = match a.k {
                Some(k) => k,
                None => infer_k(&g).ok_or_else(|| anyhow!("edge count fits no k-tree on {} vertices", g.n()))?,
            };
            let kt = recognize_k_tree(&g, k).ok_or_else(|| anyhow!("input is not a {k}-tree"))?;
            let coloring = ktree_color_partition(&kt)?;
            let fp = ForestPartition { forests: coloring.pair_trees.iter().map(|t| t.edges.clone()).collect() };
            let note = format!("k = {k}, {} color-pair trees", fp.forests.len());
            star_union(&g, &fp, "ktree-colors", vec![note])?
        }
        Method::Template => return cmd_template(cli, &a.template),
    };
    emit_built(cli, &built)
}

fn cmd_template(cli: &Cli, p: &TemplateParams) -> Result<Status> {
    let what = "template search";
    let mut q = TemplateQuery::new(
        need(p.n, "n", what)?,
        need(p.locality, "locality", what)?,
        p.templates,
        need(p.shifts, "shifts", what)?,
    );
    q.time_limit = Some(seconds(p.timeout)?);
    q.node_limit = p.node_limit;
    let found = match template_search_with(&q) {
        Ok(f) => f,
        Err(ConstructError::TemplateNotFound) => {
            eprintln!("no template exists: search exhausted");
            return Ok(Status::Negative);
        }
        Err(ConstructError::TemplateTimeout(nodes)) => {
            eprintln!("template search out of budget after {nodes} nodes");
            return Ok(Status::OutOfBudget);
        }
        Err(e) => return Err(e.into()),
    };
    let mut notes = vec![format!("{} search nodes", found.nodes)];
    for (i, t) in found.template.templates.iter().enumerate() {
        let chords: Vec<String> = t.iter().map(|e| format!("{}-{}", e.u, e.v)).collect();
        notes.push(format!("template {i} ({} shifts): {}", found.template.shifts, chords.join(" ")));
    }
    emit_built(cli, &Built { method: "template", embedding: found.embedding, notes, book: true })
}

fn seconds(s: f64) -> Result<Duration> {
    Duration::try_from_secs_f64(s).map_err(|_| anyhow!("invalid number of seconds: {s}"))
}

fn cmd_solve(cli: &Cli, a: &SolveArgs) -> Result<Status> {
    let parameter: Parameter = a.param.parse().map_err(|e: String| anyhow!(e))?;
    let g = read_graph(&a.graph)?;
    let mut req = SolveRequest::new(g, parameter);
    if let Some(path) = &a.spine {
        req.spine = Some(parse_spine(&read(path)?, req.graph.n()).with_context(|| format!("{}", path.display()))?);
    }
    req.budget = Budget { time_limit: a.timeout.map(seconds).transpose()?, node_limit: a.node_limit };
    req.jobs = a.jobs;
    let result = solve(&req)?;

    if let Some(path) = &a.cert {
        match &result.certificate {
            Some(c) => {
                fs::write(path, serialize_embedding(c)).with_context(|| format!("cannot write {}", path.display()))?
            }
            None => eprintln!("no certificate to write"),
        }
    }
    let name = parameter.name();
    let text = if cli.json {
        to_json(&result)?
    } else if result.exact {
        format!("{name} = {}\n", result.upper)
    } else {
        format!("{name} in [{}, {}]\n", result.lower, result.upper)
    };
    emit(cli, &text)?;
    eprintln!("{} spines, {} nodes, {} ms", result.stats.spines_examined, result.stats.nodes, result.stats.elapsed_ms);
    if result.exact {
        Ok(Status::Success)
    } else {
        eprintln!("budget exhausted before the search completed");
        Ok(Status::OutOfBudget)
    }
}

fn cmd_render(cli: &Cli, a: &RenderArgs) -> Result<Status> {
    let g = read_graph(&a.graph)?;
    let emb = read_embedding(&a.embedding, &g)?;
    let spec = RenderSpec { width: a.width, height: a.height, ..RenderSpec::default() };
    emit(cli, &render_svg(&emb, &spec))?;
    Ok(Status::Success)
}
