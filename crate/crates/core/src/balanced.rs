//! Splitting the slab path into balanced parts.
//!
//! A run of slabs is balanced when the lowest top side is not below the
//! highest bottom side, so a horizontal band (the corridor) crosses every
//! slab of the run. The scan keeps the running minimum top and maximum
//! bottom and closes a part as soon as the next slab would collapse the
//! band. The last slab of a closed part is the cut slab; it moves to the
//! next part when the slab before it is a local minimum in height.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decompose::{Slab, VerticalDecomposition};
use crate::geom::{AxisRect, Coord, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Path order runs with increasing x.
    Increasing,
    Decreasing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancedPart {
    /// First slab index (path order), inclusive.
    pub first: usize,
    /// Last slab index (path order), inclusive.
    pub last: usize,
    pub corridor: AxisRect,
    pub orientation: Orientation,
}

impl BalancedPart {
    pub fn len(&self) -> usize {
        self.last - self.first + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn slab_indices(&self) -> std::ops::RangeInclusive<usize> {
        self.first..=self.last
    }

    /// The part's slabs sorted by increasing x.
    pub fn slabs_left_to_right(&self, slabs: &[Slab]) -> Vec<Slab> {
        let mut out = slabs[self.first..=self.last].to_vec();
        if self.orientation == Orientation::Decreasing {
            out.reverse();
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Assignment {
    /// The cut slab closes the current part.
    Current,
    /// The cut slab opens the next part.
    Next,
}

impl Assignment {
    pub fn flipped(self) -> Assignment {
        match self {
            Assignment::Current => Assignment::Next,
            Assignment::Next => Assignment::Current,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutReport {
    /// Slab index of the cut slab.
    pub cut: usize,
    /// First slab index of the part being closed.
    pub part_start: usize,
    /// Slab that collapsed the band.
    pub violating: usize,
    /// Whether the slab before the cut is a local minimum.
    pub prev_local_min: bool,
    /// Whether the slab after the cut is a local minimum.
    pub next_local_min: bool,
    pub assignment: Assignment,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("EmptyCorridor: minimum top {min_upper} lies below maximum bottom {max_lower}")]
pub struct EmptyCorridor {
    pub min_upper: Coord,
    pub max_lower: Coord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedSplit {
    pub parts: Vec<BalancedPart>,
    pub cuts: Vec<CutReport>,
}

/// Whether slab `i` (0-based, path order) is strictly lower than both of
/// its neighbours. End slabs never are.
pub fn is_local_min(slabs: &[Slab], i: usize) -> bool {
    i > 0
        && i + 1 < slabs.len()
        && slabs[i].height() < slabs[i - 1].height()
        && slabs[i].height() < slabs[i + 1].height()
}

/// Corridor of a balanced run: spans the run's full x-extent within the
/// band `[max bottom, min top]`.
pub fn corridor(slabs: &[Slab]) -> Result<AxisRect, EmptyCorridor> {
    let mut min_upper = Coord::MAX;
    let mut max_lower = Coord::MIN;
    let mut x0 = Coord::MAX;
    let mut x1 = Coord::MIN;
    for s in slabs {
        min_upper = min_upper.min(s.upper_y());
        max_lower = max_lower.max(s.lower_y());
        x0 = x0.min(s.rect.lo.x);
        x1 = x1.max(s.rect.hi.x);
    }
    if min_upper < max_lower {
        return Err(EmptyCorridor {
            min_upper,
            max_lower,
        });
    }
    Ok(AxisRect::new(
        Point::new(x0, max_lower),
        Point::new(x1, min_upper),
    ))
}

/// Decision rule for a cut slab. The default follows the local-minimum
/// rule; tests substitute other rules to compare outcomes.
pub trait CutPolicy {
    fn assign(&mut self, ordinal: usize, report: &CutReport) -> Assignment;
}

/// Cut goes to the next part iff the slab before it is a local minimum and
/// is not the first slab of the current part.
#[derive(Clone, Copy, Debug, Default)]
pub struct LocalMinRule;

impl CutPolicy for LocalMinRule {
    fn assign(&mut self, _ordinal: usize, report: &CutReport) -> Assignment {
        report.assignment
    }
}

/// The local-minimum rule with the decision at one cut ordinal inverted.
#[derive(Clone, Copy, Debug)]
pub struct FlipAt(pub usize);

impl CutPolicy for FlipAt {
    fn assign(&mut self, ordinal: usize, report: &CutReport) -> Assignment {
        if ordinal == self.0 {
            report.assignment.flipped()
        } else {
            report.assignment
        }
    }
}

pub fn split_balanced(vd: &VerticalDecomposition) -> BalancedSplit {
    split_balanced_with(vd, &mut LocalMinRule)
}

pub fn split_balanced_with(
    vd: &VerticalDecomposition,
    policy: &mut dyn CutPolicy,
) -> BalancedSplit {
    let slabs = vd.slabs();
    let m = slabs.len();
    let mut parts = Vec::new();
    let mut cuts = Vec::new();
    let mut start = 0;
    while start < m {
        let mut min_upper = slabs[start].upper_y();
        let mut max_lower = slabs[start].lower_y();
        let mut i = start + 1;
        while i < m {
            let s = &slabs[i];
            if s.upper_y() < max_lower || s.lower_y() > min_upper {
                break;
            }
            min_upper = min_upper.min(s.upper_y());
            max_lower = max_lower.max(s.lower_y());
            i += 1;
        }
        if i == m {
            parts.push(make_part(slabs, start, m - 1));
            break;
        }
        // Two adjacent slabs always overlap in y, so the run has at least
        // two slabs and the cut has a predecessor inside it.
        let cut = i - 1;
        debug_assert!(cut > start);
        let prev_local_min = is_local_min(slabs, cut - 1);
        let rule = if cut - 1 == start || !prev_local_min {
            Assignment::Current
        } else {
            Assignment::Next
        };
        let mut report = CutReport {
            cut,
            part_start: start,
            violating: i,
            prev_local_min,
            next_local_min: is_local_min(slabs, cut + 1),
            assignment: rule,
        };
        report.assignment = policy.assign(cuts.len(), &report);
        match report.assignment {
            Assignment::Current => {
                parts.push(make_part(slabs, start, cut));
                start = cut + 1;
            }
            Assignment::Next => {
                parts.push(make_part(slabs, start, cut - 1));
                start = cut;
            }
        }
        cuts.push(report);
    }
    BalancedSplit { parts, cuts }
}

fn make_part(slabs: &[Slab], first: usize, last: usize) -> BalancedPart {
    let run = &slabs[first..=last];
    let corridor = corridor(run).expect("scan only closes balanced runs");
    let orientation = if run.len() > 1 && run[1].rect.lo.x < run[0].rect.lo.x {
        Orientation::Decreasing
    } else {
        Orientation::Increasing
    };
    BalancedPart {
        first,
        last,
        corridor,
        orientation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::vertical_decompose;
    use crate::fixtures;

    fn slabs_with_heights(heights: &[Coord]) -> Vec<Slab> {
        heights
            .iter()
            .enumerate()
            .map(|(i, &h)| Slab {
                rect: AxisRect::from_coords(i as Coord, 0, i as Coord + 1, h),
                upper_edge: 0,
                lower_edge: 0,
            })
            .collect()
    }

    #[test]
    fn local_minimum_cases() {
        let s = slabs_with_heights(&[4, 2, 4]);
        assert!(is_local_min(&s, 1));
        assert!(!is_local_min(&s, 0));
        let t = slabs_with_heights(&[4, 4, 2]);
        assert!(!is_local_min(&t, 2));
        assert!(!is_local_min(&slabs_with_heights(&[4, 4, 4]), 1));
    }

    #[test]
    fn rectangle_is_one_part() {
        let vd = vertical_decompose(&fixtures::rectangle()).unwrap();
        let split = split_balanced(&vd);
        assert_eq!(split.parts.len(), 1);
        assert!(split.cuts.is_empty());
        assert_eq!(split.parts[0].corridor, AxisRect::from_coords(0, 0, 4, 2));
    }

    #[test]
    fn comb_is_balanced() {
        let vd = vertical_decompose(&fixtures::comb()).unwrap();
        let split = split_balanced(&vd);
        assert_eq!(split.parts.len(), 1);
        assert_eq!(split.parts[0].corridor, AxisRect::from_coords(0, 0, 10, 2));
    }

    #[test]
    fn zigzag_splits_after_second_slab() {
        let vd = vertical_decompose(&fixtures::zigzag()).unwrap();
        let split = split_balanced(&vd);
        let ranges: Vec<(usize, usize)> = split.parts.iter().map(|p| (p.first, p.last)).collect();
        assert_eq!(ranges, vec![(0, 1), (2, 2)]);
        assert_eq!(split.parts[0].corridor, AxisRect::from_coords(0, 4, 4, 6));
        assert_eq!(split.cuts.len(), 1);
        let cut = split.cuts[0];
        assert_eq!(cut.cut, 1);
        assert!(!cut.prev_local_min);
        assert_eq!(cut.assignment, Assignment::Current);
    }

    #[test]
    fn winding_part_is_reoriented() {
        let vd = vertical_decompose(&fixtures::staggered_c()).unwrap();
        let split = split_balanced(&vd);
        assert_eq!(split.parts.len(), 2);
        assert_eq!(split.parts[0].orientation, Orientation::Decreasing);
        let xs: Vec<Coord> = split.parts[0]
            .slabs_left_to_right(vd.slabs())
            .iter()
            .map(|s| s.rect.lo.x)
            .collect();
        assert_eq!(xs, vec![0, 2]);
    }

    #[test]
    fn local_minimum_moves_the_cut() {
        // Heights 6, 2, 6 then a slab below the band: the slab before the
        // cut is a local minimum, so the cut starts the next part.
        let poly = fixtures::columns(
            &[0, 2, 4, 6, 8, 10],
            &[(4, 10), (4, 6), (0, 6), (0, 2), (0, 8)],
        );
        let vd = vertical_decompose(&poly).unwrap();
        let split = split_balanced(&vd);
        assert_eq!(split.cuts.len(), 1);
        let cut = split.cuts[0];
        assert_eq!(cut.cut, 2);
        assert!(cut.prev_local_min);
        assert_eq!(cut.assignment, Assignment::Next);
        let ranges: Vec<(usize, usize)> = split.parts.iter().map(|p| (p.first, p.last)).collect();
        assert_eq!(ranges, vec![(0, 1), (2, 4)]);

        let flipped = split_balanced_with(&vd, &mut FlipAt(0));
        let ranges: Vec<(usize, usize)> = flipped.parts.iter().map(|p| (p.first, p.last)).collect();
        assert_eq!(ranges, vec![(0, 2), (3, 4)]);
    }

    #[test]
    fn corridor_rejects_collapsed_band() {
        let vd = vertical_decompose(&fixtures::zigzag()).unwrap();
        assert!(corridor(vd.slabs()).is_err());
        assert_eq!(
            corridor(&vd.slabs()[2..]).unwrap(),
            AxisRect::from_coords(4, 0, 6, 2)
        );
    }
}
