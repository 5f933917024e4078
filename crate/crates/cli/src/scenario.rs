//! Scenario files: a line-oriented declaration format.
//!
//! Top-level directives start in column 0; indented lines attach to the
//! declaration above them. `#` starts a comment, blank lines are ignored.
//!
//! ```text
//! truncation 3
//!
//! group z2 cyclic 2
//! group s3 symmetric 3
//! group k4 table 4
//!   row 0 1 2 3
//!   ...
//!
//! complex sphere simplex_boundary 3
//! complex seg path 4
//! complex pt point
//! complex oct octahedron
//! complex ring polygon 6
//! complex disk facets
//!   facet 0 1 2
//!
//! action flip z2 on seg
//!   gen 1 perm 4 3 2 1 0
//!
//! symbolic free_circle on sphere
//!   stabilizer cyclic 2
//!   pi1 trivial
//!
//! task borel_pi1 action=flip degree=1
//! ```

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Located {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Located {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Clone)]
pub enum GroupDecl {
    Cyclic(usize),
    Symmetric(usize),
    Table(Vec<Vec<usize>>),
}

#[derive(Debug, Clone)]
pub enum ComplexDecl {
    Point,
    Path(usize),
    SimplexBoundary(usize),
    Octahedron,
    Polygon(usize),
    Facets(Vec<Vec<usize>>),
}

/// A generator of the acting group together with the vertex permutation it
/// performs; `None` is the identity permutation.
#[derive(Debug, Clone)]
pub struct GenImage {
    pub element: usize,
    pub perm: Option<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct ActionDecl {
    pub group: String,
    pub complex: String,
    pub gens: Vec<GenImage>,
}

#[derive(Debug, Clone)]
pub enum TagDecl {
    Trivial,
    Cyclic(u64),
    Named(String, Option<u64>),
}

#[derive(Debug, Clone)]
pub enum Pi1Decl {
    Trivial,
    Cyclic(u64),
    Unknown,
}

#[derive(Debug, Clone)]
pub struct SymbolicDecl {
    pub complex: String,
    pub stabilizer: TagDecl,
    pub pi1: Pi1Decl,
}

#[derive(Debug, Clone)]
pub struct Task {
    pub line: usize,
    pub op: String,
    pub args: BTreeMap<String, String>,
}

impl Task {
    pub fn arg(&self, key: &str) -> Option<&str> {
        self.args.get(key).map(String::as_str)
    }
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub truncation: usize,
    pub groups: BTreeMap<String, GroupDecl>,
    pub complexes: BTreeMap<String, ComplexDecl>,
    pub actions: BTreeMap<String, ActionDecl>,
    pub symbolics: BTreeMap<String, SymbolicDecl>,
    pub tasks: Vec<Task>,
}

/// Declaration under construction, waiting for its continuation lines.
enum Pending {
    Group {
        line: usize,
        name: String,
        order: usize,
        rows: Vec<Vec<usize>>,
    },
    Complex {
        line: usize,
        name: String,
        facets: Vec<Vec<usize>>,
    },
    Action {
        line: usize,
        name: String,
        decl: ActionDecl,
    },
    Symbolic {
        line: usize,
        name: String,
        complex: String,
        stabilizer: Option<TagDecl>,
        pi1: Option<Pi1Decl>,
    },
}

struct Parser {
    scenario: Scenario,
    truncation_line: Option<usize>,
    pending: Option<Pending>,
    errors: Vec<Located>,
}

fn parse_usize(tok: &str, line: usize, what: &str, errors: &mut Vec<Located>) -> Option<usize> {
    match tok.parse::<usize>() {
        Ok(v) => Some(v),
        Err(_) => {
            errors.push(Located {
                line,
                message: format!("{what} must be a nonnegative integer, got `{tok}`"),
            });
            None
        }
    }
}

fn parse_usize_list(
    toks: &[&str],
    line: usize,
    what: &str,
    errors: &mut Vec<Located>,
) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(toks.len());
    for t in toks {
        out.push(parse_usize(t, line, what, errors)?);
    }
    Some(out)
}

impl Parser {
    fn new() -> Self {
        Parser {
            scenario: Scenario {
                truncation: 0,
                groups: BTreeMap::new(),
                complexes: BTreeMap::new(),
                actions: BTreeMap::new(),
                symbolics: BTreeMap::new(),
                tasks: Vec::new(),
            },
            truncation_line: None,
            pending: None,
            errors: Vec::new(),
        }
    }

    fn err(&mut self, line: usize, message: impl Into<String>) {
        self.errors.push(Located {
            line,
            message: message.into(),
        });
    }

    fn check_fresh_name(&mut self, line: usize, name: &str) -> bool {
        let taken = self.scenario.groups.contains_key(name)
            || self.scenario.complexes.contains_key(name)
            || self.scenario.actions.contains_key(name)
            || self.scenario.symbolics.contains_key(name);
        if taken {
            self.err(line, format!("the name `{name}` is already declared"));
        }
        !taken
    }

    fn flush_pending(&mut self) {
        let Some(pending) = self.pending.take() else {
            return;
        };
        match pending {
            Pending::Group {
                line,
                name,
                order,
                rows,
            } => {
                if rows.len() != order {
                    self.err(
                        line,
                        format!(
                            "group `{name}` declares order {order} but has {} rows",
                            rows.len()
                        ),
                    );
                } else {
                    self.scenario.groups.insert(name, GroupDecl::Table(rows));
                }
            }
            Pending::Complex { line, name, facets } => {
                if facets.is_empty() {
                    self.err(line, format!("complex `{name}` lists no facets"));
                } else {
                    self.scenario
                        .complexes
                        .insert(name, ComplexDecl::Facets(facets));
                }
            }
            Pending::Action { line, name, decl } => {
                if decl.gens.is_empty() {
                    self.err(line, format!("action `{name}` lists no generators"));
                } else {
                    self.scenario.actions.insert(name, decl);
                }
            }
            Pending::Symbolic {
                line,
                name,
                complex,
                stabilizer,
                pi1,
            } => match (stabilizer, pi1) {
                (Some(stabilizer), Some(pi1)) => {
                    self.scenario.symbolics.insert(
                        name,
                        SymbolicDecl {
                            complex,
                            stabilizer,
                            pi1,
                        },
                    );
                }
                (st, _) => {
                    let missing = if st.is_none() { "stabilizer" } else { "pi1" };
                    self.err(line, format!("symbolic `{name}` is missing `{missing}`"));
                }
            },
        }
    }

    fn top_level(&mut self, line: usize, toks: &[&str]) {
        self.flush_pending();
        match toks[0] {
            "truncation" => {
                if self.truncation_line.is_some() {
                    self.err(line, "truncation is declared twice");
                    return;
                }
                let [_, n] = toks else {
                    self.err(line, "expected `truncation <N>`");
                    return;
                };
                if let Some(n) = parse_usize(n, line, "truncation", &mut self.errors) {
                    if n < 2 {
                        self.err(line, format!("truncation must be at least 2, got {n}"));
                    } else {
                        self.scenario.truncation = n;
                        self.truncation_line = Some(line);
                    }
                }
            }
            "group" => self.group_line(line, toks),
            "complex" => self.complex_line(line, toks),
            "action" => self.action_line(line, toks),
            "symbolic" => self.symbolic_line(line, toks),
            "task" => self.task_line(line, toks),
            other => self.err(line, format!("unknown directive `{other}`")),
        }
    }

    fn group_line(&mut self, line: usize, toks: &[&str]) {
        let [_, name, rest @ ..] = toks else {
            self.err(line, "expected `group <name> <kind> ...`");
            return;
        };
        if !self.check_fresh_name(line, name) {
            return;
        }
        match rest {
            ["cyclic", n] => {
                if let Some(n) = parse_usize(n, line, "cyclic order", &mut self.errors) {
                    if n == 0 {
                        self.err(line, "cyclic order must be positive");
                    } else {
                        self.scenario
                            .groups
                            .insert(name.to_string(), GroupDecl::Cyclic(n));
                    }
                }
            }
            ["symmetric", n] => {
                if let Some(n) = parse_usize(n, line, "symmetric degree", &mut self.errors) {
                    self.scenario
                        .groups
                        .insert(name.to_string(), GroupDecl::Symmetric(n));
                }
            }
            ["table", n] => {
                if let Some(n) = parse_usize(n, line, "table order", &mut self.errors) {
                    self.pending = Some(Pending::Group {
                        line,
                        name: name.to_string(),
                        order: n,
                        rows: Vec::new(),
                    });
                }
            }
            _ => self.err(
                line,
                "expected `cyclic <n>`, `symmetric <n>`, or `table <n>`",
            ),
        }
    }

    fn complex_line(&mut self, line: usize, toks: &[&str]) {
        let [_, name, rest @ ..] = toks else {
            self.err(line, "expected `complex <name> <kind> ...`");
            return;
        };
        if !self.check_fresh_name(line, name) {
            return;
        }
        let decl = match rest {
            ["point"] => Some(ComplexDecl::Point),
            ["path", k] => {
                parse_usize(k, line, "path length", &mut self.errors).map(ComplexDecl::Path)
            }
            ["simplex_boundary", n] => parse_usize(n, line, "simplex dimension", &mut self.errors)
                .map(ComplexDecl::SimplexBoundary),
            ["octahedron"] => Some(ComplexDecl::Octahedron),
            ["polygon", k] => {
                parse_usize(k, line, "polygon size", &mut self.errors).map(ComplexDecl::Polygon)
            }
            ["facets"] => {
                self.pending = Some(Pending::Complex {
                    line,
                    name: name.to_string(),
                    facets: Vec::new(),
                });
                None
            }
            _ => {
                self.err(
                    line,
                    "expected `point`, `path <k>`, `simplex_boundary <n>`, \
                     `octahedron`, `polygon <k>`, or `facets`",
                );
                None
            }
        };
        if let Some(decl) = decl {
            self.scenario.complexes.insert(name.to_string(), decl);
        }
    }

    fn action_line(&mut self, line: usize, toks: &[&str]) {
        let [_, name, group, "on", complex] = toks else {
            self.err(line, "expected `action <name> <group> on <complex>`");
            return;
        };
        if !self.check_fresh_name(line, name) {
            return;
        }
        self.pending = Some(Pending::Action {
            line,
            name: name.to_string(),
            decl: ActionDecl {
                group: group.to_string(),
                complex: complex.to_string(),
                gens: Vec::new(),
            },
        });
    }

    fn symbolic_line(&mut self, line: usize, toks: &[&str]) {
        let [_, name, "on", complex] = toks else {
            self.err(line, "expected `symbolic <name> on <complex>`");
            return;
        };
        if !self.check_fresh_name(line, name) {
            return;
        }
        self.pending = Some(Pending::Symbolic {
            line,
            name: name.to_string(),
            complex: complex.to_string(),
            stabilizer: None,
            pi1: None,
        });
    }

    fn task_line(&mut self, line: usize, toks: &[&str]) {
        let [_, op, rest @ ..] = toks else {
            self.err(line, "expected `task <operation> key=value ...`");
            return;
        };
        let mut args = BTreeMap::new();
        for tok in rest {
            let Some((k, v)) = tok.split_once('=') else {
                self.err(line, format!("task arguments are key=value pairs, got `{tok}`"));
                continue;
            };
            if args.insert(k.to_string(), v.to_string()).is_some() {
                self.err(line, format!("duplicate argument `{k}`"));
            }
        }
        self.scenario.tasks.push(Task {
            line,
            op: op.to_string(),
            args,
        });
    }

    fn continuation(&mut self, line: usize, toks: &[&str]) {
        match &mut self.pending {
            None => self.err(line, "indented line outside any declaration"),
            Some(Pending::Group { rows, .. }) => {
                let ["row", rest @ ..] = toks else {
                    self.err(line, "expected `row <e0> <e1> ...` inside a group table");
                    return;
                };
                if let Some(row) = parse_usize_list(rest, line, "table entry", &mut self.errors) {
                    rows.push(row);
                }
            }
            Some(Pending::Complex { facets, .. }) => {
                let ["facet", rest @ ..] = toks else {
                    self.err(line, "expected `facet <v0> <v1> ...` inside a complex");
                    return;
                };
                if rest.is_empty() {
                    self.err(line, "a facet needs at least one vertex");
                } else if let Some(f) = parse_usize_list(rest, line, "vertex", &mut self.errors) {
                    facets.push(f);
                }
            }
            Some(Pending::Action { decl, .. }) => match toks {
                ["gen", e, "identity"] => {
                    if let Some(e) = parse_usize(e, line, "group element", &mut self.errors) {
                        decl.gens.push(GenImage {
                            element: e,
                            perm: None,
                        });
                    }
                }
                ["gen", e, "perm", rest @ ..] => {
                    let e = parse_usize(e, line, "group element", &mut self.errors);
                    let perm = parse_usize_list(rest, line, "vertex", &mut self.errors);
                    if let (Some(e), Some(perm)) = (e, perm) {
                        decl.gens.push(GenImage {
                            element: e,
                            perm: Some(perm),
                        });
                    }
                }
                _ => self.err(
                    line,
                    "expected `gen <element> identity` or `gen <element> perm <v0> ...`",
                ),
            },
            Some(Pending::Symbolic {
                stabilizer, pi1, ..
            }) => match toks {
                ["stabilizer", "trivial"] => *stabilizer = Some(TagDecl::Trivial),
                ["stabilizer", "cyclic", n] => {
                    if let Some(n) = parse_usize(n, line, "cyclic order", &mut self.errors) {
                        *stabilizer = Some(TagDecl::Cyclic(n as u64));
                    }
                }
                ["stabilizer", "named", name] => {
                    *stabilizer = Some(TagDecl::Named(name.to_string(), None));
                }
                ["stabilizer", "named", name, n] => {
                    if let Some(n) = parse_usize(n, line, "group order", &mut self.errors) {
                        *stabilizer = Some(TagDecl::Named(name.to_string(), Some(n as u64)));
                    }
                }
                ["pi1", "trivial"] => *pi1 = Some(Pi1Decl::Trivial),
                ["pi1", "cyclic", n] => {
                    if let Some(n) = parse_usize(n, line, "cyclic order", &mut self.errors) {
                        *pi1 = Some(Pi1Decl::Cyclic(n as u64));
                    }
                }
                ["pi1", "unknown"] => *pi1 = Some(Pi1Decl::Unknown),
                _ => self.err(
                    line,
                    "expected `stabilizer trivial|cyclic <n>|named <label> [order]` \
                     or `pi1 trivial|cyclic <n>|unknown`",
                ),
            },
        }
    }
}

const KNOWN_OPS: &[&str] = &[
    "borel_pi1",
    "homology",
    "equivariant_cohomology",
    "classify_sections",
    "les",
    "compare",
    "stabilizers",
];

/// Per-operation reference arguments: (key, which table must contain the value).
fn reference_args(op: &str) -> &'static [(&'static str, Table)] {
    match op {
        "borel_pi1" | "equivariant_cohomology" | "stabilizers" => &[("action", Table::Actions)],
        "homology" => &[("space", Table::Complexes)],
        "classify_sections" => &[("space", Table::Complexes), ("group", Table::Groups)],
        "compare" => &[("left", Table::Sides), ("right", Table::Sides)],
        _ => &[],
    }
}

#[derive(Clone, Copy)]
enum Table {
    Groups,
    Complexes,
    Actions,
    Sides,
}

fn validate(scenario: &Scenario, truncation_line: Option<usize>, errors: &mut Vec<Located>) {
    if truncation_line.is_none() {
        errors.push(Located {
            line: 0,
            message: "the scenario must declare `truncation <N>` with N ≥ 2".into(),
        });
    }
    for (name, decl) in &scenario.actions {
        if !scenario.groups.contains_key(&decl.group) {
            errors.push(Located {
                line: 0,
                message: format!("action `{name}` references undeclared group `{}`", decl.group),
            });
        }
        if !scenario.complexes.contains_key(&decl.complex) {
            errors.push(Located {
                line: 0,
                message: format!(
                    "action `{name}` references undeclared complex `{}`",
                    decl.complex
                ),
            });
        }
    }
    for (name, decl) in &scenario.symbolics {
        if !scenario.complexes.contains_key(&decl.complex) {
            errors.push(Located {
                line: 0,
                message: format!(
                    "symbolic `{name}` references undeclared complex `{}`",
                    decl.complex
                ),
            });
        }
    }
    for task in &scenario.tasks {
        if !KNOWN_OPS.contains(&task.op.as_str()) {
            errors.push(Located {
                line: task.line,
                message: format!(
                    "unknown operation `{}`; known operations: {}",
                    task.op,
                    KNOWN_OPS.join(", ")
                ),
            });
            continue;
        }
        for &(key, table) in reference_args(&task.op) {
            let Some(value) = task.arg(key) else {
                errors.push(Located {
                    line: task.line,
                    message: format!("`{}` requires the argument `{key}`", task.op),
                });
                continue;
            };
            let found = match table {
                Table::Groups => scenario.groups.contains_key(value),
                Table::Complexes => scenario.complexes.contains_key(value),
                Table::Actions => scenario.actions.contains_key(value),
                Table::Sides => {
                    scenario.actions.contains_key(value)
                        || scenario.symbolics.contains_key(value)
                }
            };
            if !found {
                errors.push(Located {
                    line: task.line,
                    message: format!("`{key}` references undeclared name `{value}`"),
                });
            }
        }
        if task.op == "les" && task.arg("terms").is_none() {
            errors.push(Located {
                line: task.line,
                message: "`les` requires the argument `terms`".into(),
            });
        }
    }
}

pub fn parse_scenario(text: &str) -> Result<Scenario, Vec<Located>> {
    let mut p = Parser::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let indented = content.starts_with(|c: char| c.is_whitespace());
        if indented {
            p.continuation(line, &toks);
        } else {
            p.top_level(line, &toks);
        }
    }
    p.flush_pending();
    let Parser {
        scenario,
        truncation_line,
        pending: _,
        mut errors,
    } = p;
    validate(&scenario, truncation_line, &mut errors);
    if errors.is_empty() {
        Ok(scenario)
    } else {
        Err(errors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_minimal_scenario_parses() {
        let s = parse_scenario(
            "truncation 2\n\
             group z2 cyclic 2\n\
             complex pt point\n\
             action triv z2 on pt\n\
             \x20 gen 1 identity\n\
             task borel_pi1 action=triv\n",
        )
        .unwrap();
        assert_eq!(s.truncation, 2);
        assert_eq!(s.tasks.len(), 1);
        assert_eq!(s.tasks[0].op, "borel_pi1");
        assert_eq!(s.tasks[0].arg("action"), Some("triv"));
    }

    #[test]
    fn undeclared_references_are_located() {
        let errs = parse_scenario(
            "truncation 2\n\
             complex pt point\n\
             task borel_pi1 action=ghost\n",
        )
        .unwrap_err();
        assert!(errs
            .iter()
            .any(|e| e.line == 3 && e.message.contains("ghost")));
    }

    #[test]
    fn tables_and_facets_attach_to_their_declaration() {
        let s = parse_scenario(
            "truncation 2\n\
             group k table 2\n\
             \x20 row 0 1\n\
             \x20 row 1 0\n\
             complex tri facets\n\
             \x20 facet 0 1 2\n",
        )
        .unwrap();
        assert!(matches!(&s.groups["k"], GroupDecl::Table(rows) if rows.len() == 2));
        assert!(matches!(&s.complexes["tri"], ComplexDecl::Facets(f) if f[0] == vec![0, 1, 2]));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let errs = parse_scenario(
            "truncation 1\n\
             group z2 cyclic two\n\
             bogus directive\n",
        )
        .unwrap_err();
        assert!(errs.iter().any(|e| e.line == 1));
        assert!(errs.iter().any(|e| e.line == 2));
        assert!(errs.iter().any(|e| e.line == 3));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let s = parse_scenario(
            "# a scenario\n\
             truncation 2   # with a trailing comment\n\
             \n\
             complex pt point\n\
             task homology space=pt\n",
        )
        .unwrap();
        assert_eq!(s.complexes.len(), 1);
    }
}
