//! JSON file formats: trees, points, configurations, paths and plan results.

use serde::{Deserialize, Serialize};
use treegeo_core::star::{Candidate, Descriptor, Orientation, PlanResult, Refinement, StarClass};
use treegeo_core::unordered::{Color, HullDiagram, UnorderedPlan};
use treegeo_core::{BiPath, Breakpoint, Edge, Error, Metric, OrderedConfig, Point, Tree};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    pub len: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeJson {
    pub vertices: usize,
    pub edges: Vec<EdgeJson>,
    pub leaf_order: Vec<usize>,
}

impl TreeJson {
    pub fn from_tree(tree: &Tree) -> Self {
        TreeJson {
            vertices: tree.vertex_count(),
            edges: tree.edges().iter().map(|e| EdgeJson { id: e.id, u: e.u, v: e.v, len: e.len }).collect(),
            leaf_order: tree.leaves().to_vec(),
        }
    }

    pub fn build(&self) -> Result<Tree, Error> {
        let edges = self.edges.iter().map(|e| Edge { id: e.id, u: e.u, v: e.v, len: e.len }).collect();
        Tree::new(self.vertices, edges, self.leaf_order.clone())
    }
}

/// `{"vertex": id}` or `{"edge": id, "offset": x}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointJson {
    Vertex { vertex: usize },
    Edge { edge: usize, offset: f64 },
}

impl PointJson {
    pub fn from_point(p: &Point) -> Self {
        match *p {
            Point::Vertex(vertex) => PointJson::Vertex { vertex },
            Point::Edge { edge, offset } => PointJson::Edge { edge, offset },
        }
    }

    /// Validates against `tree`; offsets at an edge end become the vertex.
    pub fn to_point(&self, tree: &Tree) -> Result<Point, Error> {
        match *self {
            PointJson::Vertex { vertex } => {
                let p = Point::Vertex(vertex);
                tree.validate_point(&p)?;
                Ok(p)
            }
            PointJson::Edge { edge, offset } => {
                if edge >= tree.edges().len() {
                    return Err(Error::Structure("edge id out of range"));
                }
                let len = tree.edge(edge).len;
                if !(0.0..=len).contains(&offset) {
                    return Err(Error::Argument("offset outside [0, edge length]"));
                }
                Ok(tree.point_on_edge(edge, offset))
            }
        }
    }
}

pub fn config_json(c: &OrderedConfig) -> [PointJson; 2] {
    [PointJson::from_point(&c.p1), PointJson::from_point(&c.p2)]
}

pub fn config_from_json(tree: &Tree, c: &[PointJson; 2]) -> Result<OrderedConfig, Error> {
    Ok(OrderedConfig::new(c[0].to_point(tree)?, c[1].to_point(tree)?))
}

/// A start/target pair: `{"a": [p, p], "b": [p, p]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryJson {
    pub a: [PointJson; 2],
    pub b: [PointJson; 2],
}

impl QueryJson {
    pub fn new(a: &OrderedConfig, b: &OrderedConfig) -> Self {
        QueryJson { a: config_json(a), b: config_json(b) }
    }

    pub fn resolve(&self, tree: &Tree) -> Result<(OrderedConfig, OrderedConfig), Error> {
        Ok((config_from_json(tree, &self.a)?, config_from_json(tree, &self.b)?))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BreakpointJson {
    pub t: f64,
    pub p1: PointJson,
    pub p2: PointJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiPathJson {
    pub eps: f64,
    pub ordered: bool,
    pub breakpoints: Vec<BreakpointJson>,
}

impl BiPathJson {
    pub fn from_path(path: &BiPath) -> Self {
        BiPathJson {
            eps: path.eps,
            ordered: path.ordered,
            breakpoints: path
                .breakpoints
                .iter()
                .map(|b| BreakpointJson {
                    t: b.t,
                    p1: PointJson::from_point(&b.c.p1),
                    p2: PointJson::from_point(&b.c.p2),
                })
                .collect(),
        }
    }

    /// Rebuilds and validates the path.
    pub fn to_path(&self, tree: &Tree) -> Result<BiPath, Error> {
        let breakpoints = self
            .breakpoints
            .iter()
            .map(|b| Ok(Breakpoint { t: b.t, c: OrderedConfig::new(b.p1.to_point(tree)?, b.p2.to_point(tree)?) }))
            .collect::<Result<Vec<_>, Error>>()?;
        let path = BiPath { eps: self.eps, ordered: self.ordered, breakpoints };
        path.validate(tree)?;
        Ok(path)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DescriptorJson {
    Direct,
    Type { particle: u8 },
    Switch { passing: u8, arm: usize },
    Wrap { arm2: usize, arm1: usize },
}

impl From<Descriptor> for DescriptorJson {
    fn from(d: Descriptor) -> Self {
        match d {
            Descriptor::Direct => DescriptorJson::Direct,
            Descriptor::Type(particle) => DescriptorJson::Type { particle },
            Descriptor::Switch { passing, arm } => DescriptorJson::Switch { passing, arm },
            Descriptor::Wrap { arm2, arm1 } => DescriptorJson::Wrap { arm2, arm1 },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateJson {
    pub descriptor: DescriptorJson,
    pub length_l1: f64,
    pub length_l2: f64,
    pub crossing: Option<u8>,
    pub path: BiPathJson,
}

impl CandidateJson {
    pub fn new(c: &Candidate) -> Self {
        CandidateJson {
            descriptor: c.descriptor.into(),
            length_l1: c.length_l1,
            length_l2: c.length_l2,
            crossing: c.crossing,
            path: BiPathJson::from_path(&c.path),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StarClassJson {
    pub class: String,
    pub subtype: String,
    pub arms_occupied: usize,
    pub orientation: String,
    pub refinement: Option<String>,
}

impl StarClassJson {
    pub fn new(c: &StarClass, m: Metric) -> Self {
        StarClassJson {
            class: c.label(m),
            subtype: c.subtype.name().into(),
            arms_occupied: c.arms_occupied,
            orientation: match c.orientation {
                Orientation::Agree => "agree",
                Orientation::Disagree => "disagree",
                Orientation::NotApplicable => "n/a",
            }
            .into(),
            refinement: c.refinement.map(|r| if r == Refinement::Eq { "eq" } else { "n" }.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StarPlanJson {
    pub metric: String,
    #[serde(flatten)]
    pub class: StarClassJson,
    pub rule_id: u8,
    pub in_cut_locus: bool,
    pub near_tie: bool,
    pub length: f64,
    pub chosen: CandidateJson,
    pub candidates: Vec<CandidateJson>,
}

impl StarPlanJson {
    pub fn new(r: &PlanResult) -> Self {
        StarPlanJson {
            metric: r.metric.name().into(),
            class: StarClassJson::new(&r.class, r.metric),
            rule_id: r.rule_id,
            in_cut_locus: r.in_cut_locus,
            near_tie: r.near_tie,
            length: r.chosen.length(r.metric),
            chosen: CandidateJson::new(&r.chosen),
            candidates: r.all_candidates.iter().map(CandidateJson::new).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DotJson {
    pub color: String,
    pub point: PointJson,
    /// Arm number at the dot's home branch vertex.
    pub arm: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HullJson {
    #[serde(rename = "type")]
    pub kind: String,
    pub dots: Vec<DotJson>,
    pub branch: Vec<usize>,
    pub end_arms: Option<[usize; 2]>,
}

impl HullJson {
    pub fn new(d: &HullDiagram) -> Self {
        HullJson {
            kind: d.kind.name().into(),
            dots: d
                .dots
                .iter()
                .zip(d.arms)
                .map(|(dot, arm)| DotJson {
                    color: if dot.color == Color::Black { "black" } else { "white" }.into(),
                    point: PointJson::from_point(&dot.pos),
                    arm,
                })
                .collect(),
            branch: d.branch.clone(),
            end_arms: d.end_arms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnorderedPlanJson {
    pub metric: String,
    pub diagram: HullJson,
    pub eset: String,
    pub rule_id: u8,
    pub t0: Option<f64>,
    pub length: f64,
    pub path: BiPathJson,
}

impl UnorderedPlanJson {
    pub fn new(p: &UnorderedPlan) -> Self {
        UnorderedPlanJson {
            metric: Metric::L1.name().into(),
            diagram: HullJson::new(&p.diagram),
            eset: p.eset.name().into(),
            rule_id: p.rule_id,
            t0: p.motion.t0,
            length: p.length,
            path: BiPathJson::from_path(&p.path),
        }
    }
}
