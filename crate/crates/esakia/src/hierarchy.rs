//! Placing a frame, its dual and its points in the hierarchy of classes.

use crate::chainfrm::{chain_classify, ChainShape, ChainSpace};
use crate::dlattice::{FinDLat, FrameProps};
use crate::error::Result;
use crate::priestley::{dual_space, PriestleySpace, SpaceProps};
use crate::spaces::{classify_localic, TopProps};
use serde::Serialize;

/// One tier, named on the frame side, the Priestley side and the space side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Class {
    pub frame: &'static str,
    pub priestley: &'static str,
    pub space: &'static str,
}

/// From the weakest tier to the strongest; each tier lies inside the one before.
pub const TIERS: [Class; 6] = [
    Class { frame: "Frm", priestley: "LPries", space: "Top" },
    Class { frame: "SFrm", priestley: "SLPries", space: "Sob" },
    Class { frame: "ConFrm", priestley: "ConLPries", space: "LKSob" },
    Class { frame: "StCFrm", priestley: "StCLPries", space: "StLKSp" },
    Class { frame: "StKFrm", priestley: "StKLPries", space: "StKSp" },
    Class { frame: "KRFrm", priestley: "KRLPries", space: "KHaus" },
];

fn frame_tiers(f: &FrameProps) -> [bool; 6] {
    [true, f.spatial, f.continuous, f.stably_continuous, f.stably_compact, f.compact && f.regular]
}

fn space_tiers(s: &SpaceProps) -> [bool; 6] {
    [true, s.is_SL, s.is_CL, s.is_StCL, s.is_StKL, s.is_KRL]
}

/// Frame flags at the top level, then the dual and localic records.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    #[serde(flatten)]
    pub frame: FrameProps,
    pub priestley: SpaceProps,
    pub localic: TopProps,
    pub classes: Vec<Class>,
    /// The strongest tier reached.
    pub position: String,
    /// Frame-side and Priestley-side memberships coincide tier by tier.
    pub sides_agree: bool,
}

impl Classification {
    pub fn new(frame: FrameProps, priestley: SpaceProps, localic: TopProps) -> Classification {
        let (f, s) = (frame_tiers(&frame), space_tiers(&priestley));
        let classes: Vec<Class> = TIERS.iter().zip(f).filter(|&(_, inside)| inside).map(|(c, _)| *c).collect();
        // tiers are nested, so the last one reached is the strongest
        let top = classes.last().copied().unwrap_or(TIERS[0]);
        let position = format!("{} / {} / {}", top.frame, top.priestley, top.space);
        Classification { frame, priestley, localic, classes, position, sides_agree: f == s }
    }

    pub fn text(&self) -> String {
        let f = &self.frame;
        let mut out = format!("position: {}\n", self.position);
        for (name, v) in [
            ("spatial", f.spatial),
            ("compact", f.compact),
            ("continuous", f.continuous),
            ("stably_continuous", f.stably_continuous),
            ("stably_compact", f.stably_compact),
            ("regular", f.regular),
            ("boolean_algebra", f.boolean_algebra),
        ] {
            out.push_str(&format!("{name}: {v}\n"));
        }
        let names: Vec<String> = self.classes.iter().map(|c| format!("{}/{}", c.frame, c.priestley)).collect();
        out.push_str(&format!("classes: {}\n", names.join(", ")));
        out
    }
}

pub fn classify_lattice(lat: &FinDLat) -> Classification {
    let space = dual_space(lat);
    Classification::new(lat.classify_frame(), space.props(), classify_localic(&space))
}

pub fn classify_chain(shape: &ChainShape) -> Result<Classification> {
    let space = ChainSpace::new(shape.clone())?;
    Ok(Classification::new(chain_classify(shape), space.props(), classify_localic(&space)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_chain_sits_in_stably_compact_frames() {
        let c = classify_lattice(&FinDLat::chain(3));
        assert!(!c.frame.regular && c.frame.stably_compact);
        assert_eq!(c.position, "StKFrm / StKLPries / StKSp");
        assert!(c.sides_agree);
        let b = classify_lattice(&FinDLat::boolean(2));
        assert_eq!(b.classes.len(), 6);
    }

    #[test]
    fn omega_is_continuous_but_not_compact() {
        let c = classify_chain(&"W".parse().unwrap()).unwrap();
        assert!(c.frame.continuous && c.frame.spatial && !c.frame.compact);
        assert_eq!(c.position, "StCFrm / StCLPries / StLKSp");
        let c = classify_chain(&"W,F1".parse().unwrap()).unwrap();
        assert_eq!(c.position, "StKFrm / StKLPries / StKSp");
    }
}
