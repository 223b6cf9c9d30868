//! Line-oriented problem files.
//!
//! ```text
//! [group]
//! order = 2
//! table = 0 1; 1 0
//! identity = 0
//!
//! [endo]
//! map = 0 1
//!
//! [subsemigroup]
//! mode = reference
//! generators = (0,1,0) (0,0,1)
//!
//! [run]
//! window = 12
//! targets = 6
//! ```
//!
//! Abstract subsemigroups list `elements = u:(0,0) v:(0,0)` and any number of
//! `products = u*v=v u*u=OVERFLOW` lines instead of `generators`. `#` starts a
//! comment. `[endo]` defaults to the identity map and `targets` to `window / 2`.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::group::{validate_endomorphism, validate_group, Endomorphism, GroupError, RawGroup};
use crate::omega::{Index, Reilly, ReillyElement};
use crate::verifier::VerifierError;
use crate::window::{
    close_generators, load_abstract, AbstractProduct, AbstractSpec, IndexProfile, SWindow, Window,
    WindowError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; 0 for errors about the file as a whole.
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Any problem with an input file, syntactic or semantic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("{0}")]
    Parse(ParseError),
    #[error("invalid group: {0}")]
    Group(GroupError),
    #[error("invalid subsemigroup: {0}")]
    Window(WindowError),
    #[error("{0}")]
    Verifier(VerifierError),
    #[error("{0}")]
    Invalid(String),
}

macro_rules! input_error_from {
    ($($t:ty => $v:ident),*) => {$(
        impl From<$t> for InputError {
            fn from(e: $t) -> Self {
                InputError::$v(e)
            }
        }
    )*};
}

input_error_from!(ParseError => Parse, GroupError => Group, WindowError => Window, VerifierError => Verifier);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubsemigroupSpec {
    Reference { generators: Vec<ReillyElement> },
    Abstract(AbstractSpec),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemConfig {
    pub group: RawGroup,
    /// `None` is the identity map.
    pub endo: Option<Vec<usize>>,
    pub subsemigroup: SubsemigroupSpec,
    pub window: Index,
    pub targets: Index,
}

/// A validated problem, ready to check.
#[derive(Debug, Clone)]
pub struct Problem {
    pub config: ProblemConfig,
    pub ambient: Reilly,
    pub window: SWindow,
}

impl Problem {
    pub fn targets(&self) -> Window {
        Window::new(self.config.targets)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Group,
    Endo,
    Subsemigroup,
    Run,
}

#[derive(Default)]
struct Fields {
    order: Option<(usize, usize)>,
    table: Option<(usize, Vec<Vec<usize>>)>,
    identity: Option<usize>,
    inverse: Option<Vec<usize>>,
    map: Option<Vec<usize>>,
    mode: Option<(usize, String)>,
    generators: Option<(usize, Vec<(usize, String)>)>,
    elements: Option<(usize, Vec<(String, IndexProfile)>)>,
    products: Vec<AbstractProduct>,
    window: Option<Index>,
    targets: Option<Index>,
}

fn number<T: std::str::FromStr>(line: usize, key: &str, s: &str) -> Result<T, ParseError> {
    s.trim().parse().map_err(|_| {
        ParseError::new(
            line,
            format!("`{key}` expects a non-negative integer, got `{s}`"),
        )
    })
}

fn numbers(line: usize, key: &str, s: &str) -> Result<Vec<usize>, ParseError> {
    s.split_whitespace().map(|t| number(line, key, t)).collect()
}

/// `(a,b,...)` into its comma-separated numbers.
fn tuple(line: usize, s: &str) -> Result<Vec<Index>, ParseError> {
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| {
            ParseError::new(line, format!("expected a parenthesised tuple, got `{s}`"))
        })?;
    inner.split(',').map(|t| number(line, "tuple", t)).collect()
}

fn set_once<T>(slot: &mut Option<T>, value: T, line: usize, key: &str) -> Result<(), ParseError> {
    if slot.is_some() {
        return Err(ParseError::new(line, format!("duplicate key `{key}`")));
    }
    *slot = Some(value);
    Ok(())
}

/// Parses the text of a problem file. Group and subsemigroup semantics are
/// checked later by [`ProblemConfig::build`].
pub fn parse_config(text: &str) -> Result<ProblemConfig, ParseError> {
    let mut section = None;
    let mut seen = Vec::new();
    let mut f = Fields::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let s = match name.trim() {
                "group" => Section::Group,
                "endo" => Section::Endo,
                "subsemigroup" => Section::Subsemigroup,
                "run" => Section::Run,
                other => return Err(ParseError::new(line, format!("unknown section [{other}]"))),
            };
            if seen.contains(&s) {
                return Err(ParseError::new(
                    line,
                    format!("duplicate section [{}]", name.trim()),
                ));
            }
            seen.push(s);
            section = Some(s);
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| {
                ParseError::new(line, format!("expected `key = value`, got `{content}`"))
            })?;
        let Some(s) = section else {
            return Err(ParseError::new(line, "key outside of any section"));
        };
        match (s, key) {
            (Section::Group, "order") => {
                set_once(&mut f.order, (line, number(line, key, value)?), line, key)?
            }
            (Section::Group, "table") => {
                let rows = value
                    .split(';')
                    .map(|row| numbers(line, key, row))
                    .collect::<Result<Vec<_>, _>>()?;
                set_once(&mut f.table, (line, rows), line, key)?
            }
            (Section::Group, "identity") => {
                set_once(&mut f.identity, number(line, key, value)?, line, key)?
            }
            (Section::Group, "inverse") => {
                set_once(&mut f.inverse, numbers(line, key, value)?, line, key)?
            }
            (Section::Endo, "map") => set_once(&mut f.map, numbers(line, key, value)?, line, key)?,
            (Section::Subsemigroup, "mode") => {
                set_once(&mut f.mode, (line, value.to_string()), line, key)?
            }
            (Section::Subsemigroup, "generators") => {
                let gens = value
                    .split_whitespace()
                    .map(|t| (line, t.to_string()))
                    .collect();
                set_once(&mut f.generators, (line, gens), line, key)?
            }
            (Section::Subsemigroup, "elements") => {
                let mut elements = Vec::new();
                for item in value.split_whitespace() {
                    let (label, profile) = item.split_once(':').ok_or_else(|| {
                        ParseError::new(line, format!("expected `label:(r,l)`, got `{item}`"))
                    })?;
                    let p = tuple(line, profile)?;
                    if p.len() != 2 || label.is_empty() {
                        return Err(ParseError::new(
                            line,
                            format!("expected `label:(r,l)`, got `{item}`"),
                        ));
                    }
                    elements.push((label.to_string(), IndexProfile::new(p[0], p[1])));
                }
                set_once(&mut f.elements, (line, elements), line, key)?
            }
            (Section::Subsemigroup, "products") => {
                for item in value.split_whitespace() {
                    let bad = || ParseError::new(line, format!("expected `u*v=w`, got `{item}`"));
                    let (lhs, result) = item.split_once('=').ok_or_else(bad)?;
                    let (left, right) = lhs.split_once('*').ok_or_else(bad)?;
                    if left.is_empty() || right.is_empty() || result.is_empty() {
                        return Err(bad());
                    }
                    f.products.push(AbstractProduct {
                        left: left.to_string(),
                        right: right.to_string(),
                        result: (result != "OVERFLOW").then(|| result.to_string()),
                    });
                }
            }
            (Section::Run, "window") => {
                set_once(&mut f.window, number(line, key, value)?, line, key)?
            }
            (Section::Run, "targets") => {
                set_once(&mut f.targets, number(line, key, value)?, line, key)?
            }
            _ => {
                return Err(ParseError::new(
                    line,
                    format!("unknown key `{key}` in this section"),
                ))
            }
        }
    }

    if !seen.contains(&Section::Group) {
        return Err(ParseError::new(0, "missing [group] section"));
    }
    if !seen.contains(&Section::Subsemigroup) {
        return Err(ParseError::new(0, "missing [subsemigroup] section"));
    }
    let (table_line, table) = f
        .table
        .ok_or_else(|| ParseError::new(0, "missing `table` in [group]"))?;
    if let Some((line, order)) = f.order {
        if order != table.len() {
            return Err(ParseError::new(
                line,
                format!(
                    "order {order} does not match the {} table rows",
                    table.len()
                ),
            ));
        }
    }
    let order = table.len();
    let group = RawGroup {
        table,
        identity: f
            .identity
            .ok_or_else(|| ParseError::new(table_line, "missing `identity` in [group]"))?,
        inverse: f.inverse,
    };

    let (mode_line, mode) = f.mode.unwrap_or((
        0,
        if f.elements.is_some() {
            "abstract"
        } else {
            "reference"
        }
        .to_string(),
    ));
    let subsemigroup = match mode.as_str() {
        "reference" => {
            if let Some((line, _)) = f.elements {
                return Err(ParseError::new(line, "`elements` needs mode = abstract"));
            }
            let (_, items) = f.generators.ok_or_else(|| {
                ParseError::new(mode_line, "missing `generators` in [subsemigroup]")
            })?;
            let mut generators = Vec::new();
            for (line, item) in items {
                let t = tuple(line, &item)?;
                generators.push(match t.len() {
                    3 => ReillyElement::new(t[0], t[1] as usize, t[2]),
                    2 if order == 1 => ReillyElement::new(t[0], 0, t[1]),
                    2 => {
                        return Err(ParseError::new(
                            line,
                            format!("pair generator `{item}` needs a trivial group"),
                        ))
                    }
                    _ => return Err(ParseError::new(line, format!("bad generator `{item}`"))),
                });
            }
            SubsemigroupSpec::Reference { generators }
        }
        "abstract" => {
            if let Some((line, _)) = f.generators {
                return Err(ParseError::new(line, "`generators` needs mode = reference"));
            }
            let (_, elements) = f.elements.ok_or_else(|| {
                ParseError::new(mode_line, "missing `elements` in [subsemigroup]")
            })?;
            SubsemigroupSpec::Abstract(AbstractSpec {
                elements,
                products: f.products,
            })
        }
        other => {
            return Err(ParseError::new(
                mode_line,
                format!("mode must be `reference` or `abstract`, got `{other}`"),
            ))
        }
    };

    let window = f
        .window
        .ok_or_else(|| ParseError::new(0, "missing `window` in [run]"))?;
    Ok(ProblemConfig {
        group,
        endo: f.map,
        subsemigroup,
        window,
        targets: f.targets.unwrap_or(window / 2),
    })
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for ProblemConfig {
    /// The canonical file text; `parse_config` reads it back unchanged.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        let order = self.group.table.len();
        writeln!(s, "[group]")?;
        writeln!(s, "order = {order}")?;
        let rows: Vec<String> = self.group.table.iter().map(|r| join(r)).collect();
        writeln!(s, "table = {}", rows.join("; "))?;
        writeln!(s, "identity = {}", self.group.identity)?;
        if let Some(inv) = &self.group.inverse {
            writeln!(s, "inverse = {}", join(inv))?;
        }
        if let Some(map) = &self.endo {
            writeln!(s, "\n[endo]\nmap = {}", join(map))?;
        }
        writeln!(s, "\n[subsemigroup]")?;
        match &self.subsemigroup {
            SubsemigroupSpec::Reference { generators } => {
                writeln!(s, "mode = reference")?;
                let gens: Vec<String> = generators
                    .iter()
                    .map(|g| {
                        if order == 1 {
                            format!("({},{})", g.m, g.n)
                        } else {
                            format!("({},{},{})", g.m, g.g, g.n)
                        }
                    })
                    .collect();
                writeln!(s, "generators = {}", gens.join(" "))?;
            }
            SubsemigroupSpec::Abstract(spec) => {
                writeln!(s, "mode = abstract")?;
                let els: Vec<String> = spec
                    .elements
                    .iter()
                    .map(|(label, p)| format!("{label}:({},{})", p.r, p.l))
                    .collect();
                writeln!(s, "elements = {}", els.join(" "))?;
                for p in &spec.products {
                    let result = p.result.as_deref().unwrap_or("OVERFLOW");
                    writeln!(s, "products = {}*{}={result}", p.left, p.right)?;
                }
            }
        }
        writeln!(
            s,
            "\n[run]\nwindow = {}\ntargets = {}",
            self.window, self.targets
        )?;
        out.write_str(&s)
    }
}

impl ProblemConfig {
    /// Validates the group and endomorphism and materialises the window.
    pub fn build(&self) -> Result<Problem, InputError> {
        if self.targets > self.window {
            return Err(VerifierError::TargetsExceedWindow {
                targets: self.targets,
                window: self.window,
            }
            .into());
        }
        let group = validate_group(&self.group)?;
        let endo = match &self.endo {
            Some(map) => validate_endomorphism(&group, map.clone())?,
            None => Endomorphism::identity(&group),
        };
        let ambient = Reilly::new(group, endo);
        let bound = Window::new(self.window);
        let window = match &self.subsemigroup {
            SubsemigroupSpec::Reference { generators } => {
                close_generators(generators, &ambient, bound)?
            }
            SubsemigroupSpec::Abstract(spec) => {
                if !ambient.group().is_trivial() {
                    return Err(InputError::Invalid(
                        "abstract subsemigroups only use the trivial group".into(),
                    ));
                }
                load_abstract(spec, bound)?
            }
        };
        Ok(Problem {
            config: self.clone(),
            ambient,
            window,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z2: &str = "\
# R0 in S(Z2, id)
[group]
order = 2
table = 0 1; 1 0
identity = 0

[endo]
map = 0 1

[subsemigroup]
mode = reference
generators = (0,1,0) (0,0,1)

[run]
window = 12
targets = 6
";

    #[test]
    fn parses_reference_problem() {
        let c = parse_config(Z2).unwrap();
        assert_eq!(c.group.table, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(c.endo, Some(vec![0, 1]));
        assert_eq!(
            c.subsemigroup,
            SubsemigroupSpec::Reference {
                generators: vec![ReillyElement::new(0, 1, 0), ReillyElement::new(0, 0, 1)]
            }
        );
        assert_eq!((c.window, c.targets), (12, 6));
        assert_eq!(parse_config(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn empty_file_is_missing_group() {
        let e = parse_config("").unwrap_err();
        assert_eq!(e.message, "missing [group] section");
        assert_eq!(e.line, 0);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = Z2.replace("identity = 0", "identity = zero");
        assert_eq!(parse_config(&text).unwrap_err().line, 5);
        let text = Z2.replace("(0,0,1)", "(0,0,1");
        assert_eq!(parse_config(&text).unwrap_err().line, 12);
        let text = Z2.replace("[run]", "[runs]");
        assert_eq!(parse_config(&text).unwrap_err().line, 14);
    }

    #[test]
    fn pair_generators_need_trivial_group() {
        let text = Z2.replace("(0,1,0) (0,0,1)", "(0,1)");
        let e = parse_config(&text).unwrap_err();
        assert_eq!(e.line, 12);
        let trivial = "[group]\ntable = 0\nidentity = 0\n[subsemigroup]\ngenerators = (0,1)\n[run]\nwindow = 4\n";
        let c = parse_config(trivial).unwrap();
        assert_eq!(c.targets, 2);
        assert_eq!(c.endo, None);
        assert_eq!(parse_config(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn abstract_problem_round_trips() {
        let text = "\
[group]
table = 0
identity = 0
[subsemigroup]
mode = abstract
elements = u:(0,0) v:(0,0)
products = u*u=u u*v=v
products = v*u=u v*v=OVERFLOW
[run]
window = 0
";
        let c = parse_config(text).unwrap();
        let SubsemigroupSpec::Abstract(spec) = &c.subsemigroup else {
            panic!("expected abstract mode")
        };
        assert_eq!(spec.products.len(), 4);
        assert_eq!(spec.products[3].result, None);
        assert_eq!(parse_config(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn semantic_errors_surface_from_build() {
        let text = Z2.replace("table = 0 1; 1 0", "table = 0 1; 1 1");
        assert!(matches!(
            parse_config(&text).unwrap().build(),
            Err(InputError::Group(GroupError::Inverse { x: 1 }))
        ));
        let text = Z2.replace("targets = 6", "targets = 13");
        assert!(matches!(
            parse_config(&text).unwrap().build(),
            Err(InputError::Verifier(
                VerifierError::TargetsExceedWindow { .. }
            ))
        ));
        let text = Z2.replace("map = 0 1", "map = 1 1");
        assert!(matches!(
            parse_config(&text).unwrap().build(),
            Err(InputError::Group(_))
        ));
    }
}
