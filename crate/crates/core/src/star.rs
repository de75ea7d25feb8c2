//! Ordered two-robot planning on a star graph in the ε-configuration space.
//!
//! [`classify`] sorts a pair of configurations into strata by the number of
//! arms occupied and by whether the particles' order along those arms must be
//! reversed. [`candidates`] builds, for each stratum, the finitely many
//! locally shortest paths (one per crossing type, per switch arm, or per pair
//! of wrap arms), and [`plan`] applies the tie-breaking rules that make the
//! choice continuous on each rule set.

use alloc::vec::Vec;

use crate::config::{BiPath, Metric, OrderedConfig};
use crate::repr::{chart_of, planar_geodesic, Chart, Crossing};
use crate::tree::{Star, StarCoord};
use crate::Result;

/// Relative tolerance for deciding that two candidate lengths are equal.
pub const EQ_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Agree,
    Disagree,
    NotApplicable,
}

/// Stratum of a pair of star configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subtype {
    X1Plus,
    X1Minus,
    X2Plus,
    /// `a1` shares an open arm with `b2`, and `a2` with `b1`.
    X2MinusOpp,
    /// One closed arm holds exactly three of the four points.
    X2MinusThreeOnArm,
    /// Both start points on one open arm, both end points on the other.
    X2MinusSplit,
    X3,
    X4,
}

impl Subtype {
    pub fn name(self) -> &'static str {
        match self {
            Subtype::X1Plus => "X1_plus",
            Subtype::X1Minus => "X1_minus",
            Subtype::X2Plus => "X2_plus",
            Subtype::X2MinusOpp => "X2_minus_opp",
            Subtype::X2MinusThreeOnArm => "X2_minus_three_on_arm",
            Subtype::X2MinusSplit => "X2_minus_split",
            Subtype::X3 => "X3",
            Subtype::X4 => "X4",
        }
    }

    pub fn is_x2_minus(self) -> bool {
        matches!(self, Subtype::X2MinusOpp | Subtype::X2MinusThreeOnArm | Subtype::X2MinusSplit)
    }
}

/// Whether the best paths of the two crossing types tie.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Refinement {
    Eq,
    N,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StarClass {
    pub arms_occupied: usize,
    pub orientation: Orientation,
    pub subtype: Subtype,
    /// Set by [`plan`] for X2 opp and X4, per metric.
    pub refinement: Option<Refinement>,
}

impl StarClass {
    /// Label such as `X4_eq_l1` or `X2_n_l2`; strata without refinement use the subtype name.
    pub fn label(&self, m: Metric) -> alloc::string::String {
        use alloc::format;
        match self.refinement {
            Some(r) => {
                let base = if self.subtype == Subtype::X4 { "X4" } else { "X2" };
                let r = if r == Refinement::Eq { "eq" } else { "n" };
                format!("{base}_{r}_{}", m.name())
            }
            None => self.subtype.name().into(),
        }
    }
}

/// How a candidate gets from `a` to `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Descriptor {
    /// A single chart holds the whole path.
    Direct,
    /// Particle `i` crosses the center first (four occupied arms).
    Type(u8),
    /// Particle `passing` parks on the empty `arm` while the other crosses.
    Switch { passing: u8, arm: usize },
    /// Same-arm order reversal: particle 2 steps aside into `arm2`, particle 1 into `arm1`.
    Wrap { arm2: usize, arm1: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub descriptor: Descriptor,
    pub path: BiPath,
    pub length_l1: f64,
    pub length_l2: f64,
    /// Which particle reaches the center first, if either does.
    pub crossing: Option<u8>,
}

impl Candidate {
    pub fn length(&self, m: Metric) -> f64 {
        match m {
            Metric::L1 => self.length_l1,
            Metric::L2 => self.length_l2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlanResult {
    pub metric: Metric,
    pub class: StarClass,
    pub chosen: Candidate,
    pub rule_id: u8,
    pub in_cut_locus: bool,
    /// The type comparison fell within ten times the equality tolerance.
    pub near_tie: bool,
    pub all_candidates: Vec<Candidate>,
}

fn coords(star: &Star<'_>, a: &OrderedConfig, b: &OrderedConfig) -> [StarCoord; 4] {
    [a.p1, a.p2, b.p1, b.p2].map(|p| star.coord(&p))
}

fn check(star: &Star<'_>, eps: f64, a: &OrderedConfig, b: &OrderedConfig) -> Result<()> {
    a.check_feasible(star.tree(), eps)?;
    b.check_feasible(star.tree(), eps)
}

/// Distinct open arms holding at least one of the four points, in increasing order.
fn open_arms(cs: &[StarCoord; 4]) -> Vec<usize> {
    let mut arms: Vec<usize> = cs.iter().filter_map(|c| c.arm()).collect();
    arms.sort_unstable();
    arms.dedup();
    arms
}

/// Classifies `(a, b)`; both must be at least `eps` apart.
pub fn classify(star: &Star<'_>, eps: f64, a: &OrderedConfig, b: &OrderedConfig) -> Result<StarClass> {
    check(star, eps, a, b)?;
    let cs = coords(star, a, b);
    let arms = open_arms(&cs);
    let n = arms.len();
    if n >= 3 {
        let subtype = if n == 3 { Subtype::X3 } else { Subtype::X4 };
        return Ok(StarClass { arms_occupied: n, orientation: Orientation::NotApplicable, subtype, refinement: None });
    }
    // Signed position on the line through the one or two occupied arms.
    let first = arms[0];
    let pos = |c: &StarCoord| match *c {
        StarCoord::Center => 0.0,
        StarCoord::Arm { arm, depth } if arm == first => -depth,
        StarCoord::Arm { depth, .. } => depth,
    };
    let agree = (pos(&cs[0]) - pos(&cs[1])).signum() == (pos(&cs[2]) - pos(&cs[3])).signum();
    let orientation = if agree { Orientation::Agree } else { Orientation::Disagree };
    let subtype = match (n, agree) {
        (1, true) => Subtype::X1Plus,
        (1, false) => Subtype::X1Minus,
        (_, true) => Subtype::X2Plus,
        (_, false) => {
            let arm = |i: usize| cs[i].arm();
            let closed_count = |x: usize| cs.iter().filter(|c| c.arm().map_or(true, |a| a == x)).count();
            if arm(0).is_some() && arm(1).is_some() && arm(0) == arm(3) && arm(1) == arm(2) {
                Subtype::X2MinusOpp
            } else if arms.iter().any(|&x| closed_count(x) == 3) {
                Subtype::X2MinusThreeOnArm
            } else {
                Subtype::X2MinusSplit
            }
        }
    };
    Ok(StarClass { arms_occupied: n, orientation, subtype, refinement: None })
}

/// Shortest path inside one chart, as the configurations at its bends.
fn chart_path(
    star: &Star<'_>,
    chart: &Chart,
    a: &OrderedConfig,
    b: &OrderedConfig,
    constraint: Option<Crossing>,
) -> Result<Option<Vec<OrderedConfig>>> {
    let (pa, pb) = (chart.embed(star, a)?, chart.embed(star, b)?);
    let Some(poly) = planar_geodesic(chart, pa, pb, Metric::L2, constraint)? else {
        return Ok(None);
    };
    poly.points.iter().map(|p| chart.unembed(star, p)).collect::<Result<Vec<_>>>().map(Some)
}

fn leg(star: &Star<'_>, eps: f64, a: &OrderedConfig, b: &OrderedConfig) -> Result<Option<Vec<OrderedConfig>>> {
    let chart = chart_of(star, a, b, eps)?;
    chart_path(star, &chart, a, b, None)
}

/// Configuration with particle `passing` at depth ε on `arm` and the other particle at the center.
pub fn switch_waypoint(star: &Star<'_>, eps: f64, passing: u8, arm: usize) -> OrderedConfig {
    let parked = star.at(arm, eps);
    let center = star.point(StarCoord::Center).unwrap();
    if passing == 1 {
        OrderedConfig::new(parked, center)
    } else {
        OrderedConfig::new(center, parked)
    }
}

fn first_to_center(star: &Star<'_>, path: &BiPath) -> Option<u8> {
    let center = star.point(StarCoord::Center).unwrap();
    path.breakpoints.iter().find_map(|bp| {
        if bp.c.p1 == center {
            Some(1)
        } else if bp.c.p2 == center {
            Some(2)
        } else {
            None
        }
    })
}

fn candidate(star: &Star<'_>, eps: f64, descriptor: Descriptor, waypoints: &[OrderedConfig]) -> Candidate {
    let tree = star.tree();
    let path = BiPath::through(tree, eps, true, waypoints, Metric::L2);
    Candidate {
        descriptor,
        length_l1: path.length(tree, Metric::L1),
        length_l2: path.length(tree, Metric::L2),
        crossing: first_to_center(star, &path),
        path,
    }
}

/// All locally shortest candidate paths for `(a, b)`, each taut in ℓ2 within its class.
pub fn candidates(star: &Star<'_>, eps: f64, a: &OrderedConfig, b: &OrderedConfig) -> Result<Vec<Candidate>> {
    let class = classify(star, eps, a, b)?;
    let cs = coords(star, a, b);
    let occupied = open_arms(&cs);
    let empty: Vec<usize> = (1..=star.k()).filter(|x| !occupied.contains(x)).collect();
    let mut out = Vec::new();
    match class.subtype {
        Subtype::X1Plus | Subtype::X2Plus | Subtype::X3 => {
            if let Some(w) = leg(star, eps, a, b)? {
                out.push(candidate(star, eps, Descriptor::Direct, &w));
            }
        }
        Subtype::X4 => {
            let chart = chart_of(star, a, b, eps)?;
            for i in [1u8, 2] {
                if let Some(w) = chart_path(star, &chart, a, b, Some(Crossing::First(i)))? {
                    out.push(candidate(star, eps, Descriptor::Type(i), &w));
                }
            }
        }
        Subtype::X1Minus => {
            let i = occupied[0];
            for &arm2 in &empty {
                for &arm1 in &empty {
                    if arm1 == arm2 {
                        continue;
                    }
                    let chart = Chart::new(star, Some(i), Some(arm1), Some(i), Some(arm2), eps)?;
                    if let Some(w) = chart_path(star, &chart, a, b, None)? {
                        out.push(candidate(star, eps, Descriptor::Wrap { arm2, arm1 }, &w));
                    }
                }
            }
        }
        Subtype::X2MinusOpp | Subtype::X2MinusThreeOnArm | Subtype::X2MinusSplit => {
            for passing in [1u8, 2] {
                for &arm in &empty {
                    let w = switch_waypoint(star, eps, passing, arm);
                    let (Some(first), Some(second)) = (leg(star, eps, a, &w)?, leg(star, eps, &w, b)?) else {
                        continue;
                    };
                    let mut pts = first;
                    pts.extend_from_slice(&second[1..]);
                    out.push(candidate(star, eps, Descriptor::Switch { passing, arm }, &pts));
                }
            }
        }
    }
    Ok(out)
}

fn tie_tol(x: f64, y: f64) -> f64 {
    EQ_TOL * x.abs().max(y.abs()).max(1.0)
}

/// Plans a geodesic from `a` to `b` in metric `m`.
pub fn plan(star: &Star<'_>, eps: f64, a: &OrderedConfig, b: &OrderedConfig, m: Metric) -> Result<PlanResult> {
    let mut class = classify(star, eps, a, b)?;
    let cands = candidates(star, eps, a, b)?;
    let k = star.k();
    let mut near_tie = false;
    let len = |c: &Candidate| c.length(m);
    let best_of = |pred: &dyn Fn(&Candidate) -> bool| -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, c) in cands.iter().enumerate() {
            if pred(c) && best.map_or(true, |b| len(c) < len(&cands[b]) - tie_tol(len(c), len(&cands[b]))) {
                best = Some(i);
            }
        }
        best
    };
    let find = |d: Descriptor| cands.iter().position(|c| c.descriptor == d);

    let chosen = match class.subtype {
        Subtype::X1Plus | Subtype::X2Plus | Subtype::X3 => best_of(&|_| true),
        Subtype::X1Minus => {
            let i = open_arms(&coords(star, a, b))[0];
            let arm2 = star.next_arm(i);
            let arm1 = star.next_arm(arm2);
            find(Descriptor::Wrap { arm2, arm1 }).or_else(|| best_of(&|_| true))
        }
        Subtype::X4 => {
            let t1 = find(Descriptor::Type(1));
            let t2 = find(Descriptor::Type(2));
            match (t1, t2) {
                (Some(x), Some(y)) => {
                    let (l1, l2) = (len(&cands[x]), len(&cands[y]));
                    let diff = (l1 - l2).abs();
                    let tol = tie_tol(l1, l2);
                    near_tie = diff > tol && diff <= 10.0 * tol;
                    if diff <= tol {
                        class.refinement = Some(Refinement::Eq);
                        Some(x)
                    } else {
                        class.refinement = Some(Refinement::N);
                        Some(if l1 < l2 { x } else { y })
                    }
                }
                (x, y) => {
                    class.refinement = Some(Refinement::N);
                    x.or(y)
                }
            }
        }
        Subtype::X2MinusOpp | Subtype::X2MinusThreeOnArm | Subtype::X2MinusSplit => {
            let of_type = |i: u8| best_of(&move |c: &Candidate| matches!(c.descriptor, Descriptor::Switch { passing, .. } if passing == i));
            let (b1, b2) = (of_type(1), of_type(2));
            let tie = match (b1, b2) {
                (Some(x), Some(y)) => {
                    let (l1, l2) = (len(&cands[x]), len(&cands[y]));
                    let diff = (l1 - l2).abs();
                    let tol = tie_tol(l1, l2);
                    near_tie = diff > tol && diff <= 10.0 * tol;
                    diff <= tol
                }
                _ => false,
            };
            let opp = class.subtype == Subtype::X2MinusOpp;
            if tie && opp {
                class.refinement = Some(Refinement::Eq);
                // Switch arm: the smallest empty arm whose successor is occupied;
                // the passing particle is the one starting on that successor.
                let occupied = open_arms(&coords(star, a, b));
                let sw = (1..=k).find(|&x| !occupied.contains(&x) && occupied.contains(&star.next_arm(x)));
                let pick = sw.and_then(|arm| {
                    let succ = star.next_arm(arm);
                    let passing = if star.coord(&a.p1).arm() == Some(succ) { 1 } else { 2 };
                    find(Descriptor::Switch { passing, arm })
                });
                pick.or_else(|| best_of(&|_| true))
            } else {
                if opp {
                    class.refinement = Some(Refinement::N);
                } else {
                    near_tie = false;
                }
                // The shorter (or only feasible) type, on its lowest-index empty arm.
                let best = best_of(&|_| true);
                best.map(|bi| {
                    let target = len(&cands[bi]);
                    let Descriptor::Switch { passing: p, .. } = cands[bi].descriptor else { unreachable!() };
                    cands
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| {
                            matches!(c.descriptor, Descriptor::Switch { passing, .. } if passing == p)
                                && (len(c) - target).abs() <= tie_tol(len(c), target)
                        })
                        .min_by_key(|(_, c)| match c.descriptor {
                            Descriptor::Switch { arm, .. } => arm,
                            _ => usize::MAX,
                        })
                        .map(|(i, _)| i)
                        .unwrap()
                })
            }
        }
    };
    let chosen = chosen.expect("every stratum admits a candidate path");

    let eq = class.refinement == Some(Refinement::Eq);
    let sub = class.subtype;
    let (rule_id, in_cut_locus) = if k == 3 {
        let cut = sub == Subtype::X1Minus || (sub.is_x2_minus() && eq);
        (u8::from(cut), cut)
    } else {
        let rule = match sub {
            Subtype::X1Minus => 1,
            Subtype::X4 if eq => 1,
            s if s.is_x2_minus() && !eq => 2,
            _ => 0,
        };
        let cut = sub == Subtype::X1Minus || (sub == Subtype::X4 && eq) || sub.is_x2_minus();
        (rule, cut)
    };

    Ok(PlanResult {
        metric: m,
        class,
        chosen: cands[chosen].clone(),
        rule_id,
        in_cut_locus,
        near_tie,
        all_candidates: cands,
    })
}

/// Whether `(a, b)` is joined by more than one geodesic in metric `m`.
pub fn is_in_cut_locus(star: &Star<'_>, eps: f64, a: &OrderedConfig, b: &OrderedConfig, m: Metric) -> Result<bool> {
    Ok(plan(star, eps, a, b, m)?.in_cut_locus)
}

/// The worked four-arm instance: ε = 2, `a = (arm1@1, arm2@2)`, `b = (arm3@2, arm4@5)`.
pub fn worked_instance(star: &Star<'_>) -> (f64, OrderedConfig, OrderedConfig) {
    (
        2.0,
        OrderedConfig::new(star.at(1, 1.0), star.at(2, 2.0)),
        OrderedConfig::new(star.at(3, 2.0), star.at(4, 5.0)),
    )
}
