//! Executes a parsed scenario. Declarations are built once up front;
//! tasks then run concurrently against the shared cache and the report is
//! assembled in task order, so output does not depend on scheduling.

use crate::report::{Report, TaskReport, TaskStatus};
use crate::scenario::{
    ActionDecl, ComplexDecl, GroupDecl, Pi1Decl, Scenario, SymbolicDecl, TagDecl, Task,
};
use orbispace_core::algebra::Coefficients;
use orbispace_core::borel::equivariant_cohomology;
use orbispace_core::orbispace::{
    action_groupoid, classify_vertical_maps, compare_orbispaces, les_solve, make_global_quotient,
    ComparisonSide, GroupTag, LesEntry, SymbolicOrbispace, Verdict,
};
use orbispace_core::pi1::cover::COVER_ORDER_CAP;
use orbispace_core::pi1::{analyze_pi1, Pi1Order};
use orbispace_core::simplicial::{homology_of, Cell};
use orbispace_core::{FGAbelianGroup, FiniteGroup, Orbispace, OrderedComplex};
use std::collections::BTreeMap;
use std::thread;
use std::time::Instant;

pub struct RunOptions {
    pub truncation: Option<usize>,
    pub max_cosets: usize,
    pub coeffs: Coefficients,
    pub refine: usize,
    pub timings: bool,
}

struct Context {
    truncation: usize,
    max_cosets: usize,
    default_coeffs: Coefficients,
    groups: BTreeMap<String, Result<FiniteGroup, String>>,
    complexes: BTreeMap<String, Result<OrderedComplex, String>>,
    actions: BTreeMap<String, Result<Orbispace, String>>,
    symbolics: BTreeMap<String, Result<SymbolicOrbispace, String>>,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn parse_coefficients(s: &str) -> Result<Coefficients, String> {
    if s == "integers" {
        return Ok(Coefficients::Integers);
    }
    if let Some(p) = s.strip_prefix("mod") {
        let p: u64 = p
            .parse()
            .map_err(|_| format!("bad modulus in `{s}`; write `mod2`, `mod3`, ..."))?;
        if !is_prime(p) {
            return Err(format!("the modulus must be prime, got {p}"));
        }
        return Ok(Coefficients::ModP(p));
    }
    Err(format!(
        "coefficients are `integers` or `mod<p>`, got `{s}`"
    ))
}

fn group_structure(g: &FiniteGroup) -> String {
    if g.order() == 1 {
        "trivial".into()
    } else if g.is_cyclic() {
        format!("ℤ/{}", g.order())
    } else if g.is_abelian() {
        format!("abelian of order {}", g.order())
    } else {
        format!("nonabelian of order {}", g.order())
    }
}

fn build_group(name: &str, decl: &GroupDecl) -> Result<FiniteGroup, String> {
    let g = match decl {
        GroupDecl::Cyclic(n) => FiniteGroup::cyclic(*n),
        GroupDecl::Symmetric(n) => FiniteGroup::symmetric(*n).map_err(|e| e.to_string())?,
        GroupDecl::Table(rows) => FiniteGroup::from_table(rows).map_err(|e| e.to_string())?,
    };
    Ok(g.with_label(name))
}

fn build_complex(decl: &ComplexDecl, refine: usize) -> Result<OrderedComplex, String> {
    let mut c = match decl {
        ComplexDecl::Point => OrderedComplex::point(),
        ComplexDecl::Path(k) => {
            if *k == 0 {
                return Err("a path needs at least one edge".into());
            }
            OrderedComplex::interval_path(*k)
        }
        ComplexDecl::SimplexBoundary(n) => {
            if *n < 1 {
                return Err("simplex_boundary needs dimension at least 1".into());
            }
            OrderedComplex::simplex_boundary(*n)
        }
        ComplexDecl::Octahedron => OrderedComplex::octahedron(),
        ComplexDecl::Polygon(k) => {
            if *k < 3 {
                return Err("a polygon needs at least 3 edges".into());
            }
            OrderedComplex::polygon(*k)
        }
        ComplexDecl::Facets(facets) => {
            let n = facets.iter().flatten().max().map_or(0, |m| m + 1);
            OrderedComplex::from_facets(n, facets).map_err(|e| e.to_string())?
        }
    };
    for _ in 0..refine {
        c = c.barycentric_subdivision();
    }
    Ok(c)
}

/// Extends generator images to the whole group by multiplying along a
/// breadth-first traversal, checking consistency at every step.
fn element_perms(
    group: &FiniteGroup,
    n_vertices: usize,
    gens: &[(usize, Vec<usize>)],
) -> Result<Vec<Vec<usize>>, String> {
    for (e, p) in gens {
        if *e >= group.order() {
            return Err(format!(
                "generator element {e} is out of range for a group of order {}",
                group.order()
            ));
        }
        let mut seen = vec![false; n_vertices];
        if p.len() != n_vertices || p.iter().any(|&v| v >= n_vertices) {
            return Err(format!(
                "a generator permutation must list the images of all {n_vertices} vertices"
            ));
        }
        for &v in p {
            seen[v] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err("a generator image is not a permutation".into());
        }
    }
    let mut perms: Vec<Option<Vec<usize>>> = vec![None; group.order()];
    perms[0] = Some((0..n_vertices).collect());
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (g, p) in gens {
            let y = group.mul(x, *g);
            let px = perms[x].as_ref().expect("queued elements are assigned");
            let py: Vec<usize> = (0..n_vertices).map(|v| px[p[v]]).collect();
            match &perms[y] {
                Some(existing) if *existing != py => {
                    return Err(format!(
                        "the generator images are inconsistent at element {y}"
                    ));
                }
                Some(_) => {}
                None => {
                    perms[y] = Some(py);
                    queue.push(y);
                }
            }
        }
    }
    perms
        .into_iter()
        .enumerate()
        .map(|(e, p)| p.ok_or(e))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| format!("the listed generators do not reach element {e} of the group"))
}

fn build_action(
    decl: &ActionDecl,
    groups: &BTreeMap<String, Result<FiniteGroup, String>>,
    scenario: &Scenario,
    refine: usize,
    truncation: usize,
) -> Result<Orbispace, String> {
    let group = groups[&decl.group].clone()?;
    // generator permutations are given on the unrefined complex and carried
    // through each subdivision level
    let mut complex = build_complex(&scenario.complexes[&decl.complex], 0)?;
    let mut gens: Vec<(usize, Vec<usize>)> = decl
        .gens
        .iter()
        .map(|g| {
            let perm = g
                .perm
                .clone()
                .unwrap_or_else(|| (0..complex.n_vertices()).collect());
            (g.element, perm)
        })
        .collect();
    for _ in 0..refine {
        for (_, p) in &mut gens {
            if p.len() != complex.n_vertices() {
                return Err(format!(
                    "a generator permutation must list the images of all {} vertices",
                    complex.n_vertices()
                ));
            }
            *p = complex.subdivide_permutation(p);
        }
        complex = complex.barycentric_subdivision();
    }
    let perms = element_perms(&group, complex.n_vertices(), &gens)?;
    make_global_quotient(&complex, &group, &perms, truncation).map_err(|e| e.to_string())
}

fn build_symbolic(
    name: &str,
    decl: &SymbolicDecl,
    complexes: &BTreeMap<String, Result<OrderedComplex, String>>,
    truncation: usize,
) -> Result<SymbolicOrbispace, String> {
    let complex = complexes[&decl.complex].clone()?;
    let stabilizer = match &decl.stabilizer {
        TagDecl::Trivial => GroupTag::Trivial,
        TagDecl::Cyclic(n) => GroupTag::Cyclic(*n),
        TagDecl::Named(label, order) => GroupTag::Named {
            name: label.clone(),
            order: *order,
        },
    };
    let total_pi1 = match &decl.pi1 {
        Pi1Decl::Trivial => LesEntry::Zero,
        Pi1Decl::Cyclic(n) => LesEntry::Abelian(FGAbelianGroup::cyclic(*n)),
        Pi1Decl::Unknown => LesEntry::unknown(name),
    };
    Ok(SymbolicOrbispace {
        name: name.to_string(),
        underlying: complex.to_simplicial_set(truncation),
        stabilizer,
        total_pi1,
        total_homology: None,
    })
}

impl Context {
    fn build(scenario: &Scenario, opts: &RunOptions) -> Context {
        let truncation = opts.truncation.unwrap_or(scenario.truncation);
        let groups: BTreeMap<_, _> = scenario
            .groups
            .iter()
            .map(|(name, decl)| (name.clone(), build_group(name, decl)))
            .collect();
        let complexes: BTreeMap<_, _> = scenario
            .complexes
            .iter()
            .map(|(name, decl)| (name.clone(), build_complex(decl, opts.refine)))
            .collect();
        let actions: BTreeMap<_, _> = scenario
            .actions
            .iter()
            .map(|(name, decl)| {
                (
                    name.clone(),
                    build_action(decl, &groups, scenario, opts.refine, truncation),
                )
            })
            .collect();
        let symbolics: BTreeMap<_, _> = scenario
            .symbolics
            .iter()
            .map(|(name, decl)| {
                (
                    name.clone(),
                    build_symbolic(name, decl, &complexes, truncation),
                )
            })
            .collect();
        Context {
            truncation,
            max_cosets: opts.max_cosets,
            default_coeffs: opts.coeffs.clone(),
            groups,
            complexes,
            actions,
            symbolics,
        }
    }

    fn group(&self, name: &str) -> Result<&FiniteGroup, String> {
        self.groups[name].as_ref().map_err(Clone::clone)
    }

    fn complex(&self, name: &str) -> Result<&OrderedComplex, String> {
        self.complexes[name].as_ref().map_err(Clone::clone)
    }

    fn action(&self, name: &str) -> Result<&Orbispace, String> {
        self.actions[name].as_ref().map_err(Clone::clone)
    }

    fn side(&self, name: &str) -> Result<ComparisonSide, String> {
        if let Some(built) = self.actions.get(name) {
            return built
                .as_ref()
                .map(|m| ComparisonSide::Concrete(m.clone()))
                .map_err(Clone::clone);
        }
        self.symbolics[name]
            .as_ref()
            .map(|s| ComparisonSide::Symbolic(s.clone()))
            .map_err(Clone::clone)
    }

    fn coefficients(&self, task: &Task) -> Result<Coefficients, String> {
        match task.arg("coeffs") {
            Some(s) => parse_coefficients(s),
            None => Ok(self.default_coeffs.clone()),
        }
    }
}

fn arg_usize(task: &Task, key: &str) -> Result<Option<usize>, String> {
    match task.arg(key) {
        None => Ok(None),
        Some(s) => s
            .parse::<usize>()
            .map(Some)
            .map_err(|_| format!("`{key}` must be a nonnegative integer, got `{s}`")),
    }
}

fn required<'a>(task: &'a Task, key: &str) -> Result<&'a str, String> {
    task.arg(key)
        .ok_or_else(|| format!("`{}` requires the argument `{key}`", task.op))
}

fn degree_within(task: &Task, top: usize) -> Result<usize, String> {
    let deg = arg_usize(task, "degree")?.unwrap_or(top);
    if deg > top {
        return Err(format!("degree {deg} exceeds the valid range 0..={top}"));
    }
    Ok(deg)
}

fn parse_les_terms(spec: &str) -> Result<Vec<LesEntry>, String> {
    spec.split(',')
        .enumerate()
        .map(|(i, tok)| match tok {
            "0" => Ok(LesEntry::Zero),
            "unknown" => Ok(LesEntry::unknown(format!("position {i}"))),
            _ => {
                if let Some(n) = tok.strip_prefix('z') {
                    let n: u64 = n
                        .parse()
                        .map_err(|_| format!("bad cyclic order in term `{tok}`"))?;
                    if n == 0 {
                        return Err("cyclic order must be positive".into());
                    }
                    Ok(LesEntry::Abelian(FGAbelianGroup::cyclic(n)))
                } else {
                    Err(format!(
                        "les terms are `0`, `z<n>`, or `unknown`, got `{tok}`"
                    ))
                }
            }
        })
        .collect()
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Agrees => "agrees",
        Verdict::Differs => "differs",
        Verdict::Incomparable => "undecided",
    }
}

fn execute(task: &Task, ctx: &Context) -> Result<(Vec<String>, Option<usize>), String> {
    match task.op.as_str() {
        "borel_pi1" => {
            let m = ctx.action(required(task, "action")?)?;
            let deg = degree_within(task, m.valid_degree())?;
            let coeffs = ctx.coefficients(task)?;
            let pi1 = analyze_pi1(m.total(), Cell::new(0, 0), ctx.max_cosets, COVER_ORDER_CAP)
                .map_err(|e| e.to_string())?;
            let mut lines = Vec::new();
            match &pi1.order {
                Pi1Order::Finite(n) => {
                    let shape = pi1
                        .identified
                        .as_ref()
                        .map(|id| group_structure(&id.group))
                        .unwrap_or_else(|| "structure not identified".into());
                    lines.push(format!("π₁ of the Borel space: order {n} — {shape}"));
                }
                Pi1Order::InfiniteCertified => {
                    lines.push("π₁ of the Borel space: infinite".into())
                }
                Pi1Order::ExceededBound { max_cosets } => lines.push(format!(
                    "π₁ of the Borel space: undecided within {max_cosets} cosets"
                )),
            }
            lines.push(format!("abelianized π₁: {}", pi1.abelianization));
            let h = homology_of(m.total(), &coeffs);
            for (k, group) in h.iter().enumerate().take(deg + 1) {
                lines.push(format!("H_{k} of the Borel space: {group}"));
            }
            Ok((lines, Some(m.valid_degree())))
        }
        "homology" => {
            let complex = ctx.complex(required(task, "space")?)?;
            let deg = degree_within(task, ctx.truncation - 1)?;
            let coeffs = ctx.coefficients(task)?;
            let h = homology_of(&complex.to_simplicial_set(ctx.truncation), &coeffs);
            let lines = h
                .iter()
                .enumerate()
                .take(deg + 1)
                .map(|(k, group)| format!("H_{k}: {group}"))
                .collect();
            Ok((lines, Some(ctx.truncation - 1)))
        }
        "equivariant_cohomology" => {
            let m = ctx.action(required(task, "action")?)?;
            let coeffs = ctx.coefficients(task)?;
            let gq = m.global().map_err(|e| e.to_string())?;
            let graded = equivariant_cohomology(
                &gq.borel.space,
                &gq.borel.group,
                &gq.borel.action,
                ctx.truncation,
                &coeffs,
            )
            .map_err(|e| e.to_string())?;
            let lines = (0..=graded.valid_degree)
                .map(|k| format!("H^{k}_G: {}", graded.degree(k)))
                .collect();
            Ok((lines, Some(graded.valid_degree)))
        }
        "classify_sections" => {
            let complex = ctx.complex(required(task, "space")?)?;
            let group = ctx.group(required(task, "group")?)?;
            let classes = classify_vertical_maps(&complex.to_simplicial_set(ctx.truncation), group)
                .map_err(|e| e.to_string())?;
            Ok((
                vec![format!("vertical homotopy classes: {}", classes.count())],
                None,
            ))
        }
        "les" => {
            let terms = parse_les_terms(required(task, "terms")?)?;
            let solution = les_solve(&terms).map_err(|e| e.to_string())?;
            let rendered: Vec<String> =
                solution.entries.iter().map(LesEntry::describe).collect();
            let mut lines = vec![format!("sequence: {}", rendered.join(" → "))];
            lines.extend(solution.notes);
            Ok((lines, None))
        }
        "compare" => {
            let left = ctx.side(required(task, "left")?)?;
            let right = ctx.side(required(task, "right")?)?;
            let mut top = usize::MAX;
            for side in [&left, &right] {
                top = top.min(match side {
                    ComparisonSide::Concrete(m) => m.valid_degree(),
                    ComparisonSide::Symbolic(s) => s.underlying.truncation() - 1,
                });
            }
            let deg = degree_within(task, top)?;
            let report = compare_orbispaces(&left, &right, deg).map_err(|e| e.to_string())?;
            let mut lines: Vec<String> = report
                .lines
                .iter()
                .map(|l| {
                    format!(
                        "{}: {} vs {} — {}",
                        l.invariant,
                        l.left,
                        l.right,
                        verdict_word(l.verdict)
                    )
                })
                .collect();
            lines.extend(report.notes.iter().cloned());
            lines.push(format!("verdict: {}", report.summary()));
            Ok((lines, Some(deg)))
        }
        "stabilizers" => {
            let m = ctx.action(required(task, "action")?)?;
            let groupoid = action_groupoid(m).map_err(|e| e.to_string())?;
            let mut lines: Vec<String> = groupoid
                .orbit_reps
                .iter()
                .zip(&groupoid.isotropy)
                .map(|(rep, g)| format!("orbit of vertex {rep}: stabilizer {}", group_structure(g)))
                .collect();
            lines.push(format!(
                "{} objects, {} morphisms",
                groupoid.n_objects(),
                groupoid.n_morphisms()
            ));
            Ok((lines, None))
        }
        other => Err(format!("unknown operation `{other}`")),
    }
}

fn run_task(index: usize, task: &Task, ctx: &Context, timings: bool) -> TaskReport {
    let start = Instant::now();
    let outcome = execute(task, ctx);
    let timing_ms = timings.then(|| start.elapsed().as_millis() as u64);
    let (lines, status, error, valid_degree) = match outcome {
        Ok((lines, valid_degree)) => (lines, TaskStatus::Ok, None, valid_degree),
        Err(e) => (Vec::new(), TaskStatus::Failed, Some(e), None),
    };
    TaskReport {
        index: index + 1,
        operation: task.op.clone(),
        inputs: task.args.clone(),
        lines,
        status,
        error,
        valid_degree,
        timing_ms,
    }
}

pub fn run(scenario: &Scenario, opts: &RunOptions) -> Report {
    let ctx = Context::build(scenario, opts);
    let mut tasks = Vec::with_capacity(scenario.tasks.len());
    thread::scope(|s| {
        let handles: Vec<_> = scenario
            .tasks
            .iter()
            .enumerate()
            .map(|(i, task)| {
                let ctx = &ctx;
                s.spawn(move || run_task(i, task, ctx, opts.timings))
            })
            .collect();
        for (i, handle) in handles.into_iter().enumerate() {
            tasks.push(handle.join().unwrap_or_else(|_| TaskReport {
                index: i + 1,
                operation: scenario.tasks[i].op.clone(),
                inputs: scenario.tasks[i].args.clone(),
                lines: Vec::new(),
                status: TaskStatus::Failed,
                error: Some("the task panicked".into()),
                valid_degree: None,
                timing_ms: None,
            }));
        }
    });
    Report {
        version: env!("CARGO_PKG_VERSION").into(),
        truncation: ctx.truncation,
        tasks,
    }
}
