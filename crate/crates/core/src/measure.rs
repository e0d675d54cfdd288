//! Exact evolution of the uniform measure on the central cell.
//!
//! The occupied set of every cell is kept as a sorted union of half-open
//! intervals whose endpoints carry symbolic tags (cut of cell `j`, midpoint,
//! interval ends). Splitting and merging happens on tags plus cached values,
//! so equal-valued endpoints such as the midpoint and the central cut never
//! drift apart, and the per-cell areas serve as a ground-truth oracle for the
//! closed-form distribution.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::io::{self, Write};

use crate::kahan::KahanSum;
use crate::map::SlicerFamily;

/// Symbolic identity of an interval endpoint.
///
/// `Cut(j)` is the cut point `ℓ_j` of cell `j`, `MirrorCut(j)` its image
/// `1 − ℓ_j` under the involution. The derived ordering is only used to
/// break ties between distinct tags with equal numeric value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EndpointTag {
    Zero,
    Cut(i64),
    Half,
    MirrorCut(i64),
    One,
}

/// Endpoint: a tag plus its numeric value under the active family.
#[derive(Debug, Clone, Copy)]
pub struct Endpoint {
    tag: EndpointTag,
    value: f64,
}

impl Endpoint {
    pub fn new(tag: EndpointTag, family: &SlicerFamily) -> Self {
        let value = match tag {
            EndpointTag::Zero => 0.0,
            EndpointTag::Half => 0.5,
            EndpointTag::One => 1.0,
            EndpointTag::Cut(j) => family.slicer_position(j),
            EndpointTag::MirrorCut(j) => 1.0 - family.slicer_position(j),
        };
        Self { tag, value }
    }

    pub fn tag(&self) -> EndpointTag {
        self.tag
    }

    pub fn value(&self) -> f64 {
        self.value
    }
}

impl PartialEq for Endpoint {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.tag == other.tag
    }
}

impl Eq for Endpoint {}

impl PartialOrd for Endpoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Endpoint {
    fn cmp(&self, other: &Self) -> Ordering {
        // values are always finite
        self.value
            .partial_cmp(&other.value)
            .unwrap()
            .then_with(|| self.tag.cmp(&other.tag))
    }
}

/// Half-open interval `[lo, hi)`.
#[derive(Debug, Clone, Copy)]
pub struct Interval {
    pub lo: Endpoint,
    pub hi: Endpoint,
}

impl Interval {
    pub fn width(&self) -> f64 {
        self.hi.value - self.lo.value
    }
}

/// Sorted union of disjoint, non-empty half-open intervals.
#[derive(Debug, Clone, Default)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn total_length(&self) -> f64 {
        let mut acc = KahanSum::new();
        for iv in &self.intervals {
            acc += iv.width();
        }
        acc.value()
    }
}

/// Occupied intervals per cell at a fixed time; absent cells are empty.
#[derive(Debug, Clone)]
pub struct CellOccupancy {
    time: u64,
    cells: BTreeMap<i64, IntervalSet>,
}

impl CellOccupancy {
    /// The initial condition: all mass uniform on cell 0, i.e. `[0, 1)`.
    pub fn uniform_initial() -> Self {
        let zero = Endpoint {
            tag: EndpointTag::Zero,
            value: 0.0,
        };
        let one = Endpoint {
            tag: EndpointTag::One,
            value: 1.0,
        };
        let mut cells = BTreeMap::new();
        cells.insert(
            0,
            IntervalSet {
                intervals: vec![Interval { lo: zero, hi: one }],
            },
        );
        Self { time: 0, cells }
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn cells(&self) -> &BTreeMap<i64, IntervalSet> {
        &self.cells
    }

    /// One step of the map applied to sets: every occupied interval of every
    /// cell is split at the cell's cut, the midpoint and the mirror cut, and
    /// the pieces are routed to the neighbouring cells. The boundary
    /// convention matches the pointwise map up to the measure-zero cut points
    /// themselves. Pieces arriving adjacent (shared endpoint values equal)
    /// are merged, which keeps the interval count linear in time.
    pub fn evolve(&self, family: &SlicerFamily) -> CellOccupancy {
        let mut arrivals: BTreeMap<i64, Vec<Interval>> = BTreeMap::new();

        for (&cell, set) in &self.cells {
            let zero = Endpoint::new(EndpointTag::Zero, family);
            let cut = Endpoint::new(EndpointTag::Cut(cell), family);
            let half = Endpoint::new(EndpointTag::Half, family);
            let mirror = Endpoint::new(EndpointTag::MirrorCut(cell), family);
            let one = Endpoint::new(EndpointTag::One, family);
            // the four routed pieces of a cell, in coordinate order
            let regions = [
                (zero, cut, -1i64),
                (cut, half, 1),
                (half, mirror, -1),
                (mirror, one, 1),
            ];
            for iv in &set.intervals {
                for &(rlo, rhi, shift) in &regions {
                    let lo = if iv.lo.value >= rlo.value { iv.lo } else { rlo };
                    let hi = if iv.hi.value <= rhi.value { iv.hi } else { rhi };
                    if hi.value > lo.value {
                        arrivals.entry(cell + shift).or_default().push(Interval { lo, hi });
                    }
                }
            }
        }

        let cells = arrivals
            .into_iter()
            .map(|(cell, mut pieces)| {
                pieces.sort_by(|a, b| a.lo.cmp(&b.lo));
                let mut merged: Vec<Interval> = Vec::with_capacity(pieces.len());
                for piece in pieces {
                    match merged.last_mut() {
                        Some(last) if last.hi.value == piece.lo.value => last.hi = piece.hi,
                        _ => merged.push(piece),
                    }
                }
                (cell, IntervalSet { intervals: merged })
            })
            .collect();

        CellOccupancy {
            time: self.time + 1,
            cells,
        }
    }

    /// Evolves the uniform initial condition `steps` times.
    pub fn evolved(family: &SlicerFamily, steps: u64) -> CellOccupancy {
        let mut occ = CellOccupancy::uniform_initial();
        for _ in 0..steps {
            occ = occ.evolve(family);
        }
        occ
    }

    /// Per-cell occupied length; the coarse-grained mass of each cell.
    pub fn areas(&self) -> BTreeMap<i64, f64> {
        self.cells
            .iter()
            .map(|(&cell, set)| (cell, set.total_length()))
            .collect()
    }

    pub fn total_mass(&self) -> f64 {
        let mut acc = KahanSum::new();
        for set in self.cells.values() {
            for iv in &set.intervals {
                acc += iv.width();
            }
        }
        acc.value()
    }

    pub fn interval_count(&self) -> usize {
        self.cells.values().map(|s| s.intervals.len()).sum()
    }

    /// Checks that the occupied intervals, pooled over all cells, tile
    /// `[0, 1)` exactly: sorted endpoints must chain with equal values from
    /// 0 to 1. This is the symbolic form of measure conservation.
    pub fn tiles_unit_interval(&self) -> bool {
        let mut all: Vec<Interval> = self
            .cells
            .values()
            .flat_map(|s| s.intervals.iter().copied())
            .collect();
        all.sort_by(|a, b| a.lo.cmp(&b.lo));
        if all.is_empty() {
            return false;
        }
        if all[0].lo.value != 0.0 || all[all.len() - 1].hi.value != 1.0 {
            return false;
        }
        all.windows(2).all(|w| w[0].hi.value == w[1].lo.value)
    }

    /// CSV snapshot: `cell,area` rows, optionally one
    /// `cell,left_endpoint,right_endpoint` row per interval instead.
    pub fn write_csv(&self, out: &mut dyn Write, with_endpoints: bool) -> io::Result<()> {
        if with_endpoints {
            writeln!(out, "cell,left_endpoint,right_endpoint")?;
            for (cell, set) in &self.cells {
                for iv in &set.intervals {
                    writeln!(out, "{},{:.16e},{:.16e}", cell, iv.lo.value, iv.hi.value)?;
                }
            }
        } else {
            writeln!(out, "cell,area")?;
            for (cell, area) in self.areas() {
                writeln!(out, "{},{:.16e}", cell, area)?;
            }
        }
        Ok(())
    }
}
