use std::io::Read;
use std::path::{Path, PathBuf};

use detachable::families::{gen_graph, gen_matroid, gen_matroid_or_fixture, FamilySpec, Param};
use detachable::io::{decode_graph6, parse_graph, parse_matroid_capped};
use detachable::{Graph, Matroid};

use crate::args::{ParamArgs, SourceArgs};
use crate::{CliError, CliResult};

pub enum Object {
    Graph(Graph),
    Matroid(Matroid),
}

/// One input object and the name it is reported under.
pub struct Item {
    pub label: String,
    pub object: Object,
}

impl Item {
    pub fn matroid(&self, cap: usize) -> CliResult<Matroid> {
        match &self.object {
            Object::Graph(g) => Ok(Matroid::from_graph_capped(g, cap)?),
            Object::Matroid(m) => Ok(m.clone()),
        }
    }
}

pub fn family_spec(family: &str, p: &ParamArgs) -> CliResult<FamilySpec> {
    let mut spec: FamilySpec = family.parse()?;
    let ints = [("n", p.n), ("r", p.r), ("m", p.m), ("j", p.j), ("k", p.k), ("t", p.t)];
    for (key, v) in ints {
        if let Some(v) = v {
            spec = spec.int(key, v);
        }
    }
    for (key, v) in [("s", &p.s), ("legs", &p.legs), ("kind", &p.kind)] {
        if let Some(v) = v {
            spec = spec.with(key, v.parse::<Param>()?);
        }
    }
    for (key, on) in [("tip_cotip", p.tip_cotip), ("tipped", p.tipped), ("dual", p.dual)] {
        if on {
            spec = spec.flag(key, true);
        }
    }
    for kv in &p.extra {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected key=value, got {kv:?}")))?;
        spec = spec.with(k.trim(), v.trim().parse::<Param>()?);
    }
    Ok(spec)
}

pub fn generate(spec: &FamilySpec, fixtures: Option<&Path>) -> CliResult<Object> {
    if spec.family.is_graph_family() && !spec.dualized()? {
        return Ok(Object::Graph(gen_graph(spec)?));
    }
    Ok(Object::Matroid(match fixtures {
        Some(dir) => gen_matroid_or_fixture(spec, dir)?,
        None => gen_matroid(spec)?,
    }))
}

fn read_source(path: &Path) -> CliResult<String> {
    let mut text = String::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

/// Parses file contents: a graph or matroid file, or graph6 lines.
pub fn parse_items(text: &str, name: &str, cap: usize) -> CliResult<Vec<Item>> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| CliError::Usage(format!("{name}: empty input")))?;
    match first.split_whitespace().next() {
        Some("graph") => {
            let g = parse_graph(text)?;
            if g.edge_count() > cap {
                return Err(detachable::Error::CapExceeded { size: g.edge_count(), cap }.into());
            }
            Ok(vec![Item { label: name.to_string(), object: Object::Graph(g) }])
        }
        Some("gfp" | "bases") => Ok(vec![Item {
            label: name.to_string(),
            object: Object::Matroid(parse_matroid_capped(text, cap)?),
        }]),
        _ => {
            let lines: Vec<(usize, &str)> = text
                .lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty())
                .collect();
            let single = lines.len() == 1;
            lines
                .into_iter()
                .map(|(ln, l)| {
                    let label = if single { name.to_string() } else { format!("{name}:{ln}") };
                    let g = decode_graph6(l).map_err(|e| CliError::Core(e).context(&label))?;
                    Ok(Item { label, object: Object::Graph(g) })
                })
                .collect()
        }
    }
}

pub fn load(src: &SourceArgs, cap: usize) -> CliResult<Vec<Item>> {
    if let Some(family) = &src.family {
        let spec = family_spec(family, &src.params)?;
        let object = generate(&spec, src.fixtures.as_deref())?;
        if let Object::Matroid(m) = &object {
            if m.size() > cap {
                return Err(detachable::Error::CapExceeded { size: m.size(), cap }.into());
            }
        }
        return Ok(vec![Item { label: spec.to_string(), object }]);
    }
    let path: &PathBuf = src.input.as_ref().expect("clap requires --in or --family");
    let text = read_source(path)?;
    parse_items(&text, &path.display().to_string(), cap)
}

/// The single item the transforming subcommands work on.
pub fn load_one(src: &SourceArgs, cap: usize) -> CliResult<Item> {
    let mut items = load(src, cap)?;
    if items.len() != 1 {
        return Err(CliError::Usage(format!("expected one object, found {}", items.len())));
    }
    Ok(items.remove(0))
}
