//! Versioned JSON drawing files.
//!
//! Serialization is canonical: keys sorted, vertices in declaration order,
//! rationals in lowest terms, so that equal drawings give equal bytes.

use serde::{Deserialize, Serialize};

use crate::combinatorial::{CombinatorialDrawing, Crossing, Edge, EdgeEnd, End, FaceAnchor, IsolatedVertex, Side, Sign};
use crate::error::FormatError;
use crate::geometric::GeometricDrawing;
use crate::geometry::{format_rational, parse_rational, Point};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub enum Drawing {
    Geometric(GeometricDrawing),
    Topological(CombinatorialDrawing),
}

impl From<GeometricDrawing> for Drawing {
    fn from(d: GeometricDrawing) -> Self {
        Drawing::Geometric(d)
    }
}

impl From<CombinatorialDrawing> for Drawing {
    fn from(d: CombinatorialDrawing) -> Self {
        Drawing::Topological(d)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum FileRepr {
    Geometric(GeoRepr),
    Topological(TopoRepr),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeoRepr {
    version: u32,
    points: Vec<[String; 2]>,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TopoRepr {
    version: u32,
    vertices: Vec<String>,
    edges: Vec<EdgeRepr>,
    rotations: Vec<Vec<EndRepr>>,
    #[serde(default)]
    isolated: Vec<IsolatedRepr>,
    #[serde(default)]
    outer_face: Option<AnchorRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRepr {
    name: String,
    tail: usize,
    head: usize,
    crossings: Vec<CrossingRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CrossingRepr {
    edge: usize,
    sign: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EndRepr {
    edge: usize,
    end: EndName,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum EndName {
    Tail,
    Head,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum SideName {
    Left,
    Right,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AnchorRepr {
    edge: usize,
    segment: usize,
    side: SideName,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IsolatedRepr {
    name: String,
    anchor: AnchorRepr,
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Schema { path: path.into(), message: message.into() }
}

fn anchor_out(a: &FaceAnchor) -> AnchorRepr {
    AnchorRepr {
        edge: a.edge,
        segment: a.segment,
        side: match a.side {
            Side::Left => SideName::Left,
            Side::Right => SideName::Right,
        },
    }
}

fn anchor_in(a: &AnchorRepr) -> FaceAnchor {
    FaceAnchor {
        edge: a.edge,
        segment: a.segment,
        side: match a.side {
            SideName::Left => Side::Left,
            SideName::Right => Side::Right,
        },
    }
}

fn parse_sign(s: &str, path: &str) -> Result<Sign, FormatError> {
    match s {
        "+" => Ok(Sign::Plus),
        "-" | "\u{2212}" => Ok(Sign::Minus),
        _ => Err(schema(path, format!("crossing sign must be \"+\" or \"-\", got {s:?}"))),
    }
}

fn to_repr(d: &Drawing) -> FileRepr {
    match d {
        Drawing::Geometric(g) => FileRepr::Geometric(GeoRepr {
            version: FORMAT_VERSION,
            points: g.points.iter().map(|p| [format_rational(&p.x), format_rational(&p.y)]).collect(),
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
            labels: g.labels.clone(),
        }),
        Drawing::Topological(t) => FileRepr::Topological(TopoRepr {
            version: FORMAT_VERSION,
            vertices: t.vertices.clone(),
            edges: t
                .edges
                .iter()
                .map(|e| EdgeRepr {
                    name: e.name.clone(),
                    tail: e.tail,
                    head: e.head,
                    crossings: e
                        .crossings
                        .iter()
                        .map(|c| CrossingRepr { edge: c.edge, sign: c.sign.symbol().to_string() })
                        .collect(),
                })
                .collect(),
            rotations: t
                .rotations
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|ee| EndRepr {
                            edge: ee.edge,
                            end: match ee.end {
                                End::Tail => EndName::Tail,
                                End::Head => EndName::Head,
                            },
                        })
                        .collect()
                })
                .collect(),
            isolated: t.isolated.iter().map(|i| IsolatedRepr { name: i.name.clone(), anchor: anchor_out(&i.anchor) }).collect(),
            outer_face: t.outer_face.as_ref().map(anchor_out),
        }),
    }
}

/// Canonical text of a drawing, ending in a newline.
pub fn serialize(d: &Drawing) -> String {
    // `serde_json::Value` keeps object keys sorted.
    let value = serde_json::to_value(to_repr(d)).expect("drawings always serialize");
    let mut s = serde_json::to_string_pretty(&value).expect("values always print");
    s.push('\n');
    s
}

fn geometric_from(r: GeoRepr) -> Result<GeometricDrawing, FormatError> {
    let mut points = Vec::with_capacity(r.points.len());
    for (i, [x, y]) in r.points.iter().enumerate() {
        let px = parse_rational(x).map_err(|e| schema(format!("points[{i}][0]"), e.to_string()))?;
        let py = parse_rational(y).map_err(|e| schema(format!("points[{i}][1]"), e.to_string()))?;
        points.push(Point::new(px, py));
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Err(FormatError::Invariant(format!("points pairwise distinct (points {i} and {j} coincide)")));
            }
        }
    }
    for (i, &[u, v]) in r.edges.iter().enumerate() {
        if u >= points.len() || v >= points.len() {
            return Err(FormatError::Invariant(format!("edge endpoints are point indices (edge {i})")));
        }
        if u == v {
            return Err(FormatError::Invariant(format!("edges join distinct points (edge {i})")));
        }
    }
    if let Some(l) = &r.labels {
        if l.len() != points.len() {
            return Err(FormatError::Invariant("one label per point".into()));
        }
    }
    let mut g = GeometricDrawing::new(points, r.edges.iter().map(|&[u, v]| (u, v)).collect());
    g.labels = r.labels;
    Ok(g)
}

fn topological_from(r: TopoRepr) -> Result<CombinatorialDrawing, FormatError> {
    let mut edges = Vec::with_capacity(r.edges.len());
    for (i, e) in r.edges.into_iter().enumerate() {
        let mut crossings = Vec::with_capacity(e.crossings.len());
        for (k, c) in e.crossings.iter().enumerate() {
            crossings.push(Crossing { edge: c.edge, sign: parse_sign(&c.sign, &format!("edges[{i}].crossings[{k}].sign"))? });
        }
        edges.push(Edge { name: e.name, tail: e.tail, head: e.head, crossings });
    }
    let rotations = r
        .rotations
        .iter()
        .map(|rot| {
            rot.iter()
                .map(|ee| EdgeEnd {
                    edge: ee.edge,
                    end: match ee.end {
                        EndName::Tail => End::Tail,
                        EndName::Head => End::Head,
                    },
                })
                .collect()
        })
        .collect();
    let d = CombinatorialDrawing {
        vertices: r.vertices,
        edges,
        rotations,
        isolated: r.isolated.iter().map(|i| IsolatedVertex { name: i.name.clone(), anchor: anchor_in(&i.anchor) }).collect(),
        outer_face: r.outer_face.as_ref().map(anchor_in),
    };
    d.check_structure().map_err(|e| FormatError::Invariant(e.to_string()))?;
    Ok(d)
}

/// Parse and validate a drawing file.
pub fn parse(text: &str) -> Result<Drawing, FormatError> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| FormatError::Syntax { line: e.line(), column: e.column(), message: e.to_string() })?;
    let version = value.get("version").and_then(|v| v.as_u64());
    match version {
        Some(v) if v == u64::from(FORMAT_VERSION) => {}
        Some(v) => return Err(schema("version", format!("unsupported version {v}"))),
        None => return Err(schema("version", "missing integer field")),
    }
    let repr: FileRepr = serde_json::from_value(value).map_err(|e| schema("<root>", e.to_string()))?;
    Ok(match repr {
        FileRepr::Geometric(g) => Drawing::Geometric(geometric_from(g)?),
        FileRepr::Topological(t) => Drawing::Topological(topological_from(t)?),
    })
}
