//! Exact and t-tolerant geometric graph isomorphism.

use super::align::{align, AlignVariant};
use super::distance::{edge_assignment, vertex_assignment, EdgeCost};
use super::features::{pad_to_equal, GeometricShape, PaddedGraph};
use crate::error::GeometryError;
use crate::plane::GeometricGraph;

/// Absolute threshold below which a graph distance counts as zero.
pub const ZERO_DISTANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IsoVerdict {
    Isomorphic,
    TolerantIsomorphic,
    /// Neither; carries `GD = VD + ED` after alignment.
    Distance(f64),
}

/// Details behind a verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct IsoReport {
    pub verdict: IsoVerdict,
    pub gd: f64,
    /// `vertex_map[i]` is the vertex of aligned `g2` assigned to vertex `i` of `g1`.
    pub vertex_map: Vec<usize>,
    /// `vertex_map` sends every edge of `g1` onto an edge of `g2`.
    pub edges_consistent: bool,
    /// Largest per-axis coordinate difference over the vertex assignment.
    pub max_axis_gap: f64,
}

/// True when `phi` sends every edge of `g1` to an edge of `g2`.
fn adjacency_preserved(g1: &GeometricGraph, g2: &GeometricGraph, phi: &[usize]) -> bool {
    let n2 = g2.vertex_count();
    g1.edges().all(|e| {
        let (u, v) = e.endpoints();
        let (a, b) = (phi[u], phi[v]);
        a < n2 && b < n2 && g2.base().has_edge(a, b)
    })
}

/// `g1` compared against one placement of `g2`.
struct Frame {
    phi: Vec<usize>,
    gd: f64,
    consistent: bool,
    gap: f64,
}

impl Frame {
    fn new(
        g1: &GeometricGraph,
        g2: &GeometricGraph,
        a: &PaddedGraph,
        b: &PaddedGraph,
    ) -> Result<Frame, GeometryError> {
        let (phi, vd) = vertex_assignment(a, b)?;
        let (_, ed) = edge_assignment(&a.edge_features(), &b.edge_features(), EdgeCost::Ed)?;
        let consistent = adjacency_preserved(g1, g2, &phi);
        let (p, q) = (a.points(), b.points());
        let gap = phi
            .iter()
            .enumerate()
            .map(|(i, &j)| (p[i].x - q[j].x).abs().max((p[i].y - q[j].y).abs()))
            .fold(0.0, f64::max);
        Ok(Frame {
            phi,
            gd: vd + ed,
            consistent,
            gap,
        })
    }

    fn report(self, verdict: IsoVerdict, gd: f64) -> IsoReport {
        IsoReport {
            verdict,
            gd,
            vertex_map: self.phi,
            edges_consistent: self.consistent,
            max_axis_gap: self.gap,
        }
    }
}

/// Aligns `g2` onto `g1`, then classifies the pair. Tolerance is also checked
/// in the unaligned frame: fitting a short reference edge exactly can swing
/// distant vertices further than the jitter it removes.
pub fn isomorphism_report(
    g1: &GeometricGraph,
    g2: &GeometricGraph,
    t: f64,
) -> Result<IsoReport, GeometryError> {
    let same_size = g1.vertex_count() == g2.vertex_count() && g1.edge_count() == g2.edge_count();
    let (a, b) = pad_to_equal(g1, g2);
    let aligned = match align(&a, &b, AlignVariant::Ed) {
        Ok(al) => Some(al.graph),
        Err(GeometryError::NoEdges | GeometryError::DegenerateReference) => None,
        Err(e) => return Err(e),
    };
    let frame = Frame::new(g1, g2, &a, aligned.as_ref().unwrap_or(&b))?;
    let gd = frame.gd;
    if !same_size {
        return Ok(frame.report(IsoVerdict::Distance(gd), gd));
    }
    if gd <= ZERO_DISTANCE && frame.consistent {
        return Ok(frame.report(IsoVerdict::Isomorphic, gd));
    }
    if frame.gap < t && frame.consistent {
        return Ok(frame.report(IsoVerdict::TolerantIsomorphic, gd));
    }
    if aligned.is_some() {
        let plain = Frame::new(g1, g2, &a, &b)?;
        if plain.gap < t && plain.consistent {
            return Ok(plain.report(IsoVerdict::TolerantIsomorphic, gd));
        }
    }
    Ok(frame.report(IsoVerdict::Distance(gd), gd))
}

/// Aligns `g2` onto `g1` and classifies the pair. Graphs of different sizes
/// always get a distance verdict (computed after padding).
pub fn geometric_graph_isomorphism(
    g1: &GeometricGraph,
    g2: &GeometricGraph,
    t: f64,
) -> Result<IsoVerdict, GeometryError> {
    Ok(isomorphism_report(g1, g2, t)?.verdict)
}
