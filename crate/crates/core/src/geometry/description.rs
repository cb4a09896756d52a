//! JSON domain descriptions. Complex numbers are `[re, im]` pairs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{BoundaryComponent, Domain, Segment};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SegmentDescription {
    Line {
        from: Complex64,
        to: Complex64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        data: Option<String>,
    },
    /// Counterclockwise for positive `radius`, clockwise for negative.
    /// Without endpoints the arc is a full circle.
    #[serde(alias = "circular-arc")]
    Arc {
        center: Complex64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        from: Option<Complex64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        to: Option<Complex64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radius: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        data: Option<String>,
    },
    #[serde(alias = "periodic-spline")]
    Spline {
        nodes: Vec<Complex64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        data: Option<String>,
    },
}

impl SegmentDescription {
    pub fn data(&self) -> Option<&str> {
        match self {
            SegmentDescription::Line { data, .. }
            | SegmentDescription::Arc { data, .. }
            | SegmentDescription::Spline { data, .. } => data.as_deref(),
        }
    }

    fn build(&self) -> Result<Segment> {
        match self {
            SegmentDescription::Line { from, to, .. } => Segment::line(*from, *to),
            SegmentDescription::Arc {
                center,
                from,
                to,
                radius,
                ..
            } => {
                let ccw = radius.map_or(true, |r| r > 0.0);
                match (from, to) {
                    (Some(a), Some(b)) => {
                        if let Some(r) = radius {
                            let ra = (a - center).norm();
                            if (ra - r.abs()).abs() > 1e-9 * ra.max(1.0) {
                                return Err(Error::InvalidInput(format!(
                                    "arc radius {r} disagrees with endpoint distance {ra}"
                                )));
                            }
                        }
                        Segment::arc(*center, *a, *b, ccw)
                    }
                    (None, None) => match radius {
                        Some(r) => Segment::circle(*center, r.abs(), ccw),
                        None => Err(Error::InvalidInput("full-circle arc needs a radius".into())),
                    },
                    _ => Err(Error::InvalidInput("arc needs both endpoints or neither".into())),
                }
            }
            SegmentDescription::Spline { nodes, .. } => Segment::spline(nodes.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CornerList {
    /// The keyword `"all"`: every segment junction is a corner.
    Keyword(String),
    Points(Vec<Complex64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDescription {
    pub segments: Vec<SegmentDescription>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corners: Option<CornerList>,
    /// Boundary data id applying to every segment without its own.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainDescription {
    pub components: Vec<ComponentDescription>,
    /// Corners on any component, matched to the junction they sit on.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub corners: Vec<Complex64>,
    #[serde(default = "default_bounded")]
    pub bounded: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hole_centers: Vec<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exterior_center: Option<Complex64>,
}

fn default_bounded() -> bool {
    true
}

impl DomainDescription {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("domain descriptions always serialize")
    }

    pub fn build(&self) -> Result<Domain> {
        let mut comps = Vec::with_capacity(self.components.len());
        let mut pending: Vec<Complex64> = self.corners.clone();
        for (ci, cd) in self.components.iter().enumerate() {
            let segments = cd
                .segments
                .iter()
                .enumerate()
                .map(|(si, s)| {
                    s.build().map_err(|e| Error::InvalidInput(format!("component {ci}, segment {si}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let scale = segments.iter().map(Segment::length).fold(1.0, f64::max);
            let mut corners = match &cd.corners {
                None => Vec::new(),
                Some(CornerList::Points(p)) => p.clone(),
                Some(CornerList::Keyword(k)) if k == "all" => {
                    if segments.len() == 1 && segments[0].is_closed() {
                        Vec::new()
                    } else {
                        segments.iter().map(Segment::start).collect()
                    }
                }
                Some(CornerList::Keyword(k)) => {
                    return Err(Error::Parse(format!("component {ci}: unknown corner keyword {k:?}")))
                }
            };
            pending.retain(|c| {
                let hit = segments.iter().find(|s| (s.start() - c).norm() <= 1e-12 * scale);
                match hit {
                    Some(s) => {
                        // snap to the exact junction point
                        corners.push(s.start());
                        false
                    }
                    None => true,
                }
            });
            comps.push(
                BoundaryComponent::new(segments, corners)
                    .map_err(|e| Error::InvalidInput(format!("component {ci}: {e}")))?,
            );
        }
        if let Some(c) = pending.first() {
            return Err(Error::InvalidInput(format!("corner {c} is not on any segment junction")));
        }
        if self.bounded {
            Domain::bounded(comps, self.hole_centers.clone())
        } else {
            Domain::unbounded(comps, self.hole_centers.clone(), self.exterior_center)
        }
    }

    /// Data id per component and segment, segment entries overriding
    /// their component's.
    pub fn data_labels(&self) -> Vec<Vec<Option<String>>> {
        self.components
            .iter()
            .map(|c| {
                c.segments
                    .iter()
                    .map(|s| s.data().map(str::to_owned).or_else(|| c.data.clone()))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_polygon_with_keyword_corners() {
        let text = r#"{
            "components": [{
                "segments": [
                    {"kind": "line", "from": [0, 0], "to": [1, 0]},
                    {"kind": "line", "from": [1, 0], "to": [1, 1]},
                    {"kind": "line", "from": [1, 1], "to": [0, 1]},
                    {"kind": "line", "from": [0, 1], "to": [0, 0]}
                ],
                "corners": "all",
                "data": "re2"
            }]
        }"#;
        let desc = DomainDescription::from_json(text).unwrap();
        let d = desc.build().unwrap();
        assert_eq!(d.corners().len(), 4);
        assert!(d.contains(Complex64::new(0.5, 0.5)));
        assert_eq!(desc.data_labels()[0][2].as_deref(), Some("re2"));
    }

    #[test]
    fn arc_radius_sign_sets_orientation() {
        let text = r#"{"components": [{"segments": [
            {"kind": "arc", "center": [0, 0], "from": [1, 0], "to": [-1, 0], "radius": 1},
            {"kind": "line", "from": [-1, 0], "to": [1, 0]}
        ], "corners": "all"}]}"#;
        let d = DomainDescription::from_json(text).unwrap().build().unwrap();
        assert!(d.contains(Complex64::new(0.0, 0.5)));
        assert!(!d.contains(Complex64::new(0.0, -0.5)));
    }

    #[test]
    fn top_level_corners_attach_to_components() {
        let text = r#"{"bounded": false, "hole_centers": [[0.6, 0.6]],
            "corners": [[1, 0]],
            "components": [{"segments": [
                {"kind": "circular-arc", "center": [0, 0], "from": [1, 0], "to": [0, 1]},
                {"kind": "line", "from": [0, 1], "to": [1, 0]}
            ]}]}"#;
        let d = DomainDescription::from_json(text).unwrap().build().unwrap();
        assert_eq!(d.corners(), vec![(0, Complex64::new(1.0, 0.0))]);
        assert!(d.contains(Complex64::new(3.0, 3.0)));
    }

    #[test]
    fn malformed_input_reports_position() {
        let err = DomainDescription::from_json("{\n  \"components\": [1,\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }
}
