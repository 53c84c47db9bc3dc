//! Textual matcher specifications and the distance each one computes.

use std::fmt;
use std::str::FromStr;

use graphmatch::centrality::{r_centrality_ged, t_centrality_ged, Measure};
use graphmatch::contraction::{hged, k_star_ged};
use graphmatch::dataset::Graph;
use graphmatch::geometric::{geometric_graph_distance, DistanceWeights};
use graphmatch::{ged, ged_bipartite, DatasetError, EditCostParams, EditError, GeometryError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MatchError {
    #[error(transparent)]
    Edit(#[from] EditError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Method {
    Ged,
    GedBeam(usize),
    Bipartite,
    Hged,
    KStarGed(usize),
    RGed(f64, Measure),
    TGed(usize, Measure),
    Geometric {
        weights: DistanceWeights,
        align: bool,
    },
}

/// A distance together with its edit cost constants.
///
/// The string form is the method alone, e.g. `ged`, `ged-beam(10)`,
/// `kstar-ged(2)`, `r-ged(0.3,pagerank)`, `t-ged(2,degree)`, `geometric`,
/// `geometric(0.35,0.23,0.11,0.31)` or `geometric(1,1,1,1,noalign)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatcherSpec {
    pub method: Method,
    pub cost_params: EditCostParams,
}

impl MatcherSpec {
    pub fn new(method: Method) -> Self {
        MatcherSpec {
            method,
            cost_params: EditCostParams::default(),
        }
    }

    pub fn with_costs(mut self, cost_params: EditCostParams) -> Self {
        self.cost_params = cost_params;
        self
    }

    pub fn distance(&self, g1: &Graph, g2: &Graph) -> Result<f64, MatchError> {
        let p = &self.cost_params;
        let (a, b) = (g1.attributed(), g2.attributed());
        let path = match &self.method {
            Method::Ged => ged(a, b, p, None)?,
            Method::GedBeam(w) => ged(a, b, p, Some(*w))?,
            Method::Bipartite => ged_bipartite(a, b, p)?,
            Method::Hged => hged(a, b, p, None)?,
            Method::KStarGed(k) => k_star_ged(a, b, *k, p, None)?,
            Method::RGed(r, m) => r_centrality_ged(a, b, *r, *m, p, None)?,
            Method::TGed(t, m) => t_centrality_ged(a, b, *t, *m, p, None)?,
            Method::Geometric { weights, align } => {
                let (x, y) = (g1.require_geometric()?, g2.require_geometric()?);
                return Ok(geometric_graph_distance(x, y, weights, *align)?);
            }
        };
        Ok(path.total_cost)
    }
}

impl fmt::Display for MatcherSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.method {
            Method::Ged => write!(f, "ged"),
            Method::GedBeam(w) => write!(f, "ged-beam({w})"),
            Method::Bipartite => write!(f, "bipartite"),
            Method::Hged => write!(f, "hged"),
            Method::KStarGed(k) => write!(f, "kstar-ged({k})"),
            Method::RGed(r, m) => write!(f, "r-ged({r},{m})"),
            Method::TGed(t, m) => write!(f, "t-ged({t},{m})"),
            Method::Geometric { weights: w, align } => {
                write!(f, "geometric({},{},{},{}", w.w1, w.w2, w.w3, w.w4)?;
                if !align {
                    write!(f, ",noalign")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn parse_num<T: FromStr>(s: &str, what: &str) -> Result<T, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("invalid {what} `{}`", s.trim()))
}

impl FromStr for MatcherSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (name, args) = match s.find('(') {
            Some(i) if s.ends_with(')') => (
                &s[..i],
                s[i + 1..s.len() - 1].split(',').collect::<Vec<_>>(),
            ),
            Some(_) => return Err(format!("unbalanced parentheses in `{s}`")),
            None => (s, Vec::new()),
        };
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(format!(
                    "`{name}` takes {n} argument(s), got {}",
                    args.len()
                ))
            }
        };
        let method = match name.to_ascii_lowercase().as_str() {
            "ged" => arity(0).map(|_| Method::Ged)?,
            "ged-beam" | "beam" => {
                arity(1)?;
                let w: usize = parse_num(args[0], "beam width")?;
                if w == 0 {
                    return Err("beam width must be at least 1".into());
                }
                Method::GedBeam(w)
            }
            "bipartite" => arity(0).map(|_| Method::Bipartite)?,
            "hged" => arity(0).map(|_| Method::Hged)?,
            "kstar-ged" => {
                arity(1)?;
                Method::KStarGed(parse_num(args[0], "degree")?)
            }
            "r-ged" => {
                arity(2)?;
                let r: f64 = parse_num(args[0], "fraction")?;
                if !(0.0..=1.0).contains(&r) {
                    return Err(format!("fraction {r} is outside [0, 1]"));
                }
                Method::RGed(r, args[1].trim().parse()?)
            }
            "t-ged" => {
                arity(2)?;
                Method::TGed(parse_num(args[0], "count")?, args[1].trim().parse()?)
            }
            "geometric" => {
                let (weights, align) = match args.as_slice() {
                    [] => (DistanceWeights::LETTER, true),
                    w if w.len() == 4 || w.len() == 5 => {
                        let align = match w.get(4).map(|a| a.trim()) {
                            None | Some("align") => true,
                            Some("noalign") => false,
                            Some(other) => {
                                return Err(format!("expected `align` or `noalign`, got `{other}`"))
                            }
                        };
                        let v: Vec<f64> = w[..4]
                            .iter()
                            .map(|x| parse_num(x, "weight"))
                            .collect::<Result<_, _>>()?;
                        let weights = DistanceWeights::new(v[0], v[1], v[2], v[3])
                            .map_err(|e| e.to_string())?;
                        (weights, align)
                    }
                    _ => {
                        return Err(
                            "`geometric` takes no arguments, 4 weights, or 4 weights and `noalign`"
                                .into(),
                        )
                    }
                };
                Method::Geometric { weights, align }
            }
            other => return Err(format!("unknown method `{other}`")),
        };
        Ok(MatcherSpec::new(method))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use graphmatch::{AttributedGraph, GeometricGraph, Point};

    #[test]
    fn grammar_round_trips() {
        for s in [
            "ged",
            "ged-beam(10)",
            "bipartite",
            "hged",
            "kstar-ged(2)",
            "r-ged(0.3,pagerank)",
            "t-ged(2,degree)",
            "geometric(0.35,0.23,0.11,0.31)",
            "geometric(1,1,1,1,noalign)",
        ] {
            let spec: MatcherSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!(
            "geometric".parse::<MatcherSpec>().unwrap().to_string(),
            "geometric(0.35,0.23,0.11,0.31)"
        );
    }

    #[test]
    fn rejects_out_of_range_parameters() {
        for bad in [
            "ged-beam(0)",
            "r-ged(1.5,degree)",
            "r-ged(0.5,closeness)",
            "kstar-ged(-1)",
            "ged(1)",
            "nope",
            "ged-beam(3",
        ] {
            assert!(bad.parse::<MatcherSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn geometric_needs_coordinates() {
        let plain = Graph::Attributed(AttributedGraph::from_edges(2, &[(0, 1)]).unwrap());
        let geo = Graph::Geometric(GeometricGraph::from_points(&[Point::ORIGIN], &[]).unwrap());
        let m: MatcherSpec = "geometric".parse().unwrap();
        assert!(matches!(
            m.distance(&plain, &geo),
            Err(MatchError::Dataset(DatasetError::NotGeometric))
        ));
        assert_eq!(
            MatcherSpec::new(Method::Ged)
                .distance(&plain, &plain)
                .unwrap(),
            0.0
        );
    }
}
