//! The slicer map: pointwise dynamics on the chain of unit intervals.
//!
//! Phase space is `[0, 1] × ℤ`. Each cell `m` is cut at `ℓ_m`, `1/2` and
//! `1 − ℓ_m`; the four resulting pieces are routed to the neighbouring cells,
//! while the interval coordinate `x` is never altered. All transport
//! properties of the system derive from this one routing rule.

use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
#[error("alpha must be a positive finite number, got {0}")]
pub struct InvalidAlpha(pub f64);

/// One-parameter family of cut points `ℓ_j = (|j| + 2^(1/α))^(−α)`.
///
/// `ℓ_0 = 1/2` exactly, the positions are symmetric in `j ↔ −j` and strictly
/// decrease towards zero as `|j|` grows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlicerFamily {
    alpha: f64,
    shift: f64,
}

impl SlicerFamily {
    pub fn new(alpha: f64) -> Result<Self, InvalidAlpha> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(InvalidAlpha(alpha));
        }
        Ok(Self {
            alpha,
            shift: 2f64.powf(1.0 / alpha),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// The index shift `2^(1/α)` appearing in every cut position.
    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// Cut point of cell `j`.
    ///
    /// The central value is returned as `1/2` exactly rather than through
    /// `powf`, since `(2^(1/α))^(−α) = 1/2` identically; this keeps the
    /// degenerate central cut in exact agreement with the midpoint cut.
    pub fn slicer_position(&self, j: i64) -> f64 {
        if j == 0 {
            return 0.5;
        }
        (j.unsigned_abs() as f64 + self.shift).powf(-self.alpha)
    }
}

/// A point of the chain: interval coordinate and cell index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticePoint {
    pub x: f64,
    pub cell: i64,
}

impl LatticePoint {
    pub fn new(x: f64, cell: i64) -> Self {
        debug_assert!((0.0..=1.0).contains(&x), "coordinate out of range: {x}");
        Self { x, cell }
    }
}

/// Direction in which coordinate `x` leaves a cell with cut point `cut`.
///
/// Boundary convention: the cut points themselves move right, so the
/// left-moving pieces are `[0, cut) ∪ (1/2, 1−cut)` and the right-moving
/// pieces are `[cut, 1/2] ∪ [1−cut, 1]`. Only this measure-zero choice is
/// conventional; every distribution and moment is independent of it.
#[inline]
pub(crate) fn exit_direction(x: f64, cut: f64) -> i64 {
    if x < cut || (x > 0.5 && x < 1.0 - cut) {
        -1
    } else {
        1
    }
}

/// One step of the slicer map: `x` is conserved, the cell moves to a
/// neighbour according to the routing rule of its current cell.
pub fn step(family: &SlicerFamily, p: LatticePoint) -> LatticePoint {
    let cut = family.slicer_position(p.cell);
    LatticePoint {
        x: p.x,
        cell: p.cell + exit_direction(p.x, cut),
    }
}

/// The reversed routing rule: same partition of the current cell, opposite
/// shifts. Together with [`involution`] it realizes time reversal,
/// `involution ∘ step = step_inverse ∘ involution` away from the cut points.
pub fn step_inverse(family: &SlicerFamily, p: LatticePoint) -> LatticePoint {
    let cut = family.slicer_position(p.cell);
    LatticePoint {
        x: p.x,
        cell: p.cell - exit_direction(p.x, cut),
    }
}

/// The time-reversal involution `(x, m) ↦ (1−x, m)`.
pub fn involution(p: LatticePoint) -> LatticePoint {
    LatticePoint {
        x: 1.0 - p.x,
        cell: p.cell,
    }
}

/// Cell indices visited over `steps` iterations, starting cell included.
/// Consecutive entries always differ by exactly one.
pub fn coarse_trajectory(family: &SlicerFamily, start: LatticePoint, steps: u64) -> Vec<i64> {
    let mut cells = Vec::with_capacity(steps as usize + 1);
    let mut p = start;
    cells.push(p.cell);
    for _ in 0..steps {
        p = step(family, p);
        cells.push(p.cell);
    }
    cells
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::CounterStream;

    fn family(alpha: f64) -> SlicerFamily {
        SlicerFamily::new(alpha).unwrap()
    }

    #[test]
    fn rejects_non_positive_alpha() {
        assert!(SlicerFamily::new(0.0).is_err());
        assert!(SlicerFamily::new(-1.5).is_err());
        assert!(SlicerFamily::new(f64::NAN).is_err());
    }

    #[test]
    fn cut_positions_match_hand_values() {
        // ℓ_j(1/2) = (|j|+4)^(-1/2)
        assert_eq!(family(0.5).slicer_position(0), 0.5);
        assert!((family(0.5).slicer_position(5) - 1.0 / 3.0).abs() < 1e-15);
        // ℓ_1(1) = 1/3
        assert!((family(1.0).slicer_position(1) - 1.0 / 3.0).abs() < 1e-15);
        // ℓ_19(1/3) = 27^(-1/3) = 1/3
        assert!((family(1.0 / 3.0).slicer_position(19) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn central_cut_is_exactly_half_for_any_alpha() {
        let s = CounterStream::new(11, &[]);
        for i in 0..1000 {
            let alpha = 4.0 * s.unit_at(i) + 1e-3;
            assert_eq!(family(alpha).slicer_position(0), 0.5);
        }
    }

    #[test]
    fn cut_positions_are_symmetric_and_strictly_decreasing() {
        let fam = family(0.7);
        for j in 1..200i64 {
            assert_eq!(fam.slicer_position(j), fam.slicer_position(-j));
            assert!(fam.slicer_position(j) < fam.slicer_position(j - 1));
            assert!(fam.slicer_position(j) > 0.0);
            assert!(fam.slicer_position(j) < 0.5);
        }
    }

    #[test]
    fn step_routes_the_four_pieces_of_a_cell() {
        let fam = family(1.0); // ℓ_1 = 1/3
        let cases = [
            (0.3, 1, 0),  // below the cut: left
            (0.4, 1, 2),  // between cut and midpoint: right
            (0.6, 1, 0),  // above the midpoint, below the mirror cut: left
            (0.7, 1, 2),  // at or above the mirror cut: right
        ];
        for (x, cell, expect) in cases {
            assert_eq!(step(&fam, LatticePoint::new(x, cell)).cell, expect, "x={x}");
            assert_eq!(step(&fam, LatticePoint::new(x, cell)).x, x);
        }
    }

    #[test]
    fn step_boundary_points_move_right() {
        let fam = family(1.0);
        let cut = fam.slicer_position(1);
        assert_eq!(step(&fam, LatticePoint::new(cut, 1)).cell, 2);
        assert_eq!(step(&fam, LatticePoint::new(1.0 - cut, 1)).cell, 2);
        assert_eq!(step(&fam, LatticePoint::new(0.5, 1)).cell, 2);
        assert_eq!(step(&fam, LatticePoint::new(1.0, 1)).cell, 2);
    }

    #[test]
    fn step_inverse_matches_hand_values() {
        let fam = family(1.0);
        assert_eq!(step_inverse(&fam, LatticePoint::new(0.3, 0)).cell, 1);
        assert_eq!(step_inverse(&fam, LatticePoint::new(0.4, 2)).cell, 1);
    }

    #[test]
    fn involution_is_its_own_inverse_and_fixes_the_midpoint() {
        assert_eq!(involution(LatticePoint::new(0.3, 2)), LatticePoint::new(0.7, 2));
        assert_eq!(involution(LatticePoint::new(0.5, -4)), LatticePoint::new(0.5, -4));
        let s = CounterStream::new(1, &[]);
        for i in 0..100 {
            let p = LatticePoint::new(s.unit_at(i), i as i64 % 7 - 3);
            assert_eq!(involution(involution(p)), p);
        }
    }

    /// Whether the reversed routing rule undoes a forward step at this point.
    /// The forward image lands in a neighbouring cell whose own partition
    /// differs from the source cell's, so the identity holds only where the
    /// point falls on the same side of both cells' cuts; the mismatch strips
    /// have width `|ℓ_m − ℓ_m'|` and shrink rapidly with `|m|`.
    fn round_trip_holds(fam: &SlicerFamily, p: LatticePoint) -> bool {
        let here = fam.slicer_position(p.cell);
        let dir = exit_direction(p.x, here);
        let there = fam.slicer_position(p.cell + dir);
        exit_direction(p.x, there) == dir
    }

    #[test]
    fn step_inverse_undoes_step_where_adjacent_partitions_agree() {
        let fam = family(0.8);
        let s = CounterStream::new(5, &[]);
        let mut checked = 0;
        for i in 0..20_000 {
            let p = LatticePoint::new(s.unit_at(2 * i), (s.u64_at(2 * i + 1) % 21) as i64 - 10);
            if round_trip_holds(&fam, p) {
                assert_eq!(step_inverse(&fam, step(&fam, p)), p);
                checked += 1;
            }
        }
        assert!(checked > 15_000, "safe region unexpectedly small: {checked}");
    }

    #[test]
    fn time_reversal_conjugates_step_and_step_inverse() {
        // involution ∘ step = step_inverse ∘ involution on 10^4 random
        // points; cut points are excluded (they carry no measure and the
        // convention breaks the symmetry exactly there).
        for &alpha in &[1.0 / 3.0, 0.5, 1.0, 1.5, 2.0] {
            let fam = family(alpha);
            let s = CounterStream::new(1234, &[alpha.to_bits()]);
            for i in 0..10_000u64 {
                let x = s.unit_at(2 * i);
                let cell = (s.u64_at(2 * i + 1) % 41) as i64 - 20;
                let cut = fam.slicer_position(cell);
                if x == cut || x == 0.5 || x == 1.0 - cut {
                    continue;
                }
                let p = LatticePoint::new(x, cell);
                assert_eq!(
                    involution(step(&fam, p)),
                    step_inverse(&fam, involution(p)),
                    "alpha={alpha} x={x} cell={cell}"
                );
            }
        }
    }

    #[test]
    fn trajectories_conserve_x_and_alternate_parity() {
        let fam = family(0.5);
        let s = CounterStream::new(77, &[]);
        for i in 0..200 {
            let x = s.unit_at(i);
            let cells = coarse_trajectory(&fam, LatticePoint::new(x, 0), 64);
            assert_eq!(cells.len(), 65);
            assert_eq!(cells[0], 0);
            for (k, w) in cells.windows(2).enumerate() {
                assert_eq!((w[1] - w[0]).abs(), 1);
                let _ = k;
            }
            for (k, &c) in cells.iter().enumerate() {
                assert_eq!(c.rem_euclid(2), (k as i64).rem_euclid(2), "parity at step {k}");
            }
            // x never changes
            let mut p = LatticePoint::new(x, 0);
            for _ in 0..64 {
                p = step(&fam, p);
                assert_eq!(p.x, x);
            }
        }
    }

    #[test]
    fn hand_evaluated_trajectories() {
        let fam = family(1.0);
        assert_eq!(coarse_trajectory(&fam, LatticePoint::new(0.3, 0), 2), vec![0, -1, -2]);
        assert_eq!(
            coarse_trajectory(&fam, LatticePoint::new(0.9, 0), 3),
            vec![0, 1, 2, 3]
        );
    }
}
