//! GXL graph files as distributed with the IAM graph database.

use std::collections::HashMap;
use std::fmt::Write as _;

use roxmltree::{Document, Node, ParsingOptions};

use super::Graph;
use crate::error::DatasetError;
use crate::graph::{AttributedGraph, Label};
use crate::plane::{GeometricGraph, Point};

/// How node and edge attributes become labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Profile {
    /// `x`/`y` floats are required; they become both coordinates and labels.
    Letter,
    /// The first attribute found among `symbol_attrs` is the node label.
    /// Coordinates are kept when every node has them.
    Molecule { symbol_attrs: Vec<String> },
    /// String attributes become symbols, numeric ones (other than `x`/`y`)
    /// become vectors in document order.
    Generic,
}

impl Profile {
    pub fn molecule() -> Self {
        Profile::Molecule {
            symbol_attrs: vec!["symbol".into(), "chem".into()],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Value {
    Number(f64),
    Text(String),
}

impl Value {
    fn as_text(&self) -> String {
        match self {
            Value::Number(x) => x.to_string(),
            Value::Text(s) => s.clone(),
        }
    }
}

fn parse_number(s: &str) -> Result<f64, DatasetError> {
    let t = s.trim();
    t.parse::<f64>()
        .map_err(|_| DatasetError::InvalidNumber(t.to_string()))
}

/// Attributes of one `<node>` or `<edge>` in document order.
fn attributes(node: Node) -> Result<Vec<(String, Value)>, DatasetError> {
    let mut out = Vec::new();
    for attr in node.children().filter(|c| c.has_tag_name("attr")) {
        let name = attr.attribute("name").unwrap_or_default().to_string();
        let Some(typed) = attr.children().find(|c| c.is_element()) else {
            continue;
        };
        let text = typed.text().unwrap_or_default();
        let value = match typed.tag_name().name() {
            "float" | "double" | "int" => Value::Number(parse_number(text)?),
            _ => Value::Text(text.trim().to_string()),
        };
        out.push((name, value));
    }
    Ok(out)
}

fn lookup<'a>(attrs: &'a [(String, Value)], name: &str) -> Option<&'a Value> {
    attrs.iter().find(|(n, _)| n == name).map(|(_, v)| v)
}

fn coordinate(attrs: &[(String, Value)], axis: &str) -> Result<Option<f64>, DatasetError> {
    match lookup(attrs, axis) {
        None => Ok(None),
        Some(Value::Number(x)) => Ok(Some(*x)),
        Some(Value::Text(s)) => parse_number(s).map(Some),
    }
}

fn generic_label(attrs: &[(String, Value)]) -> Label {
    if let Some(s) = attrs.iter().find_map(|(_, v)| match v {
        Value::Text(s) => Some(s),
        _ => None,
    }) {
        return Label::Symbol(s.clone());
    }
    let values: Vec<f64> = attrs
        .iter()
        .filter(|(n, _)| n != "x" && n != "y")
        .filter_map(|(_, v)| match v {
            Value::Number(x) => Some(*x),
            _ => None,
        })
        .collect();
    if values.is_empty() {
        Label::Empty
    } else {
        Label::Vector(values)
    }
}

/// Parses a GXL document holding one graph.
pub fn parse_gxl(content: &str, profile: &Profile) -> Result<Graph, DatasetError> {
    let options = ParsingOptions {
        allow_dtd: true,
        ..ParsingOptions::default()
    };
    let doc = Document::parse_with_options(content, options)
        .map_err(|e| DatasetError::Xml(e.to_string()))?;
    let graph = doc
        .descendants()
        .find(|n| n.has_tag_name("graph"))
        .ok_or(DatasetError::MissingGraph)?;

    let mut g = AttributedGraph::new();
    let mut coords: Vec<Option<Point>> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for node in graph.children().filter(|c| c.has_tag_name("node")) {
        let id = node
            .attribute("id")
            .ok_or(DatasetError::Xml("node without id".into()))?;
        let attrs = attributes(node)?;
        let (x, y) = (coordinate(&attrs, "x")?, coordinate(&attrs, "y")?);
        let point = x.zip(y).map(|(x, y)| Point::new(x, y));
        let label = match profile {
            Profile::Letter => {
                let p = point.ok_or_else(|| DatasetError::MissingAttribute {
                    node: id.to_string(),
                    attr: if x.is_none() { "x" } else { "y" }.into(),
                })?;
                Label::point(p.x, p.y)
            }
            Profile::Molecule { symbol_attrs } => {
                let symbol = symbol_attrs
                    .iter()
                    .find_map(|a| lookup(&attrs, a))
                    .ok_or_else(|| DatasetError::MissingAttribute {
                        node: id.to_string(),
                        attr: symbol_attrs.join("|"),
                    })?;
                Label::Symbol(symbol.as_text())
            }
            Profile::Generic => generic_label(&attrs),
        };
        if index.insert(id.to_string(), g.vertex_count()).is_some() {
            return Err(DatasetError::DuplicateNode(id.to_string()));
        }
        g.add_named_vertex(id, label)?;
        coords.push(point);
    }

    for edge in graph.children().filter(|c| c.has_tag_name("edge")) {
        let end = |key: &'static str| -> Result<usize, DatasetError> {
            let id = edge
                .attribute(key)
                .ok_or(DatasetError::Xml(format!("edge without `{key}`")))?;
            index
                .get(id)
                .copied()
                .ok_or_else(|| DatasetError::DanglingEdge(id.to_string()))
        };
        let (u, v) = (end("from")?, end("to")?);
        let label = match profile {
            Profile::Letter => Label::Empty,
            Profile::Molecule { .. } => attributes(edge)?
                .first()
                .map_or(Label::Empty, |(_, v)| Label::Symbol(v.as_text())),
            Profile::Generic => generic_label(&attributes(edge)?),
        };
        // Some files list an undirected edge once per direction.
        if !g.has_edge(u, v) {
            g.add_edge(u, v, label)?;
        }
    }

    let all_coords: Option<Vec<Point>> = coords.into_iter().collect();
    match all_coords {
        Some(points) if g.vertex_count() > 0 => {
            Ok(Graph::Geometric(GeometricGraph::new(g, points)?))
        }
        _ if *profile == Profile::Letter => {
            Ok(Graph::Geometric(GeometricGraph::new(g, Vec::new())?))
        }
        _ => Ok(Graph::Attributed(g)),
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn write_label(out: &mut String, label: &Label) {
    match label {
        Label::Empty => {}
        Label::Symbol(s) => {
            let _ = write!(
                out,
                "<attr name=\"label\"><string>{}</string></attr>",
                escape(s)
            );
        }
        Label::Vector(values) => {
            for (i, x) in values.iter().enumerate() {
                let _ = write!(out, "<attr name=\"v{i}\"><float>{x:?}</float></attr>");
            }
        }
    }
}

/// Writes `graph` so that [`parse_gxl`] with [`Profile::Generic`] reads it back unchanged.
pub fn write_gxl(graph: &Graph, id: &str) -> String {
    let g = graph.attributed();
    let coords = graph.geometric().map(GeometricGraph::coords);
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<gxl>\n");
    let _ = writeln!(
        out,
        "<graph id=\"{}\" edgeids=\"false\" edgemode=\"undirected\">",
        escape(id)
    );
    for v in g.vertices() {
        let _ = write!(out, "<node id=\"{}\">", escape(g.vertex_name(v)));
        write_label(&mut out, g.vertex_label(v));
        if let Some(p) = coords.map(|c| c[v]) {
            let _ = write!(
                out,
                "<attr name=\"x\"><float>{:?}</float></attr><attr name=\"y\"><float>{:?}</float></attr>",
                p.x, p.y
            );
        }
        out.push_str("</node>\n");
    }
    for (e, label) in g.edges() {
        let (u, v) = e.endpoints();
        let _ = write!(
            out,
            "<edge from=\"{}\" to=\"{}\">",
            escape(g.vertex_name(u)),
            escape(g.vertex_name(v))
        );
        write_label(&mut out, label);
        out.push_str("</edge>\n");
    }
    out.push_str("</graph>\n</gxl>\n");
    out
}
