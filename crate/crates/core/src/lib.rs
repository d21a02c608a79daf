//! Minimum-area enclosing rectangles of arbitrary orientation that may leave
//! out up to `t` points.
//!
//! The exact solver enumerates base sides from *valid pairs* (point pairs
//! whose line cuts off at most `t` points), then scans each base for the
//! three remaining supports. A brute-force strip oracle and a sampling
//! approximation sit alongside it.
//!
//! ```
//! use mer_core::{solve_exact, PointSet};
//!
//! let ps = PointSet::from_xy(&[(0., 0.), (4., 0.), (4., 3.), (0., 3.), (2., 1.), (10., 10.)]).unwrap();
//! let report = solve_exact(&ps, 1, false).unwrap();
//! assert_eq!(report.area().value(), 12.0);
//! assert_eq!(report.outlier_indices, vec![5]);
//! ```

pub mod enclose;
pub mod error;
pub mod geom;
pub mod io;
pub mod layers;
pub mod pairs;
pub mod solver;

pub use enclose::{enclose, extreme_candidates, Candidates, CandidateTriple};
pub use error::{Error, Result};
pub use geom::{
    clockwise_less, compare_areas, count_enclosed, orientation, project, rect_from_supports, Area, Frame,
    OrientedRectangle, Point, PointSet,
};
pub use layers::{convex_hull, convex_layers, k_first_layers, LayerDecomposition};
pub use pairs::{enclosed_side_points, sweep_pivot, valid_pairs, Side, SweepStep, ValidPair};
pub use solver::{
    kappa_oracle, solve_exact, solve_oracle, solve_sampled, verify, PhaseTimings, SampleParams, SolveMode,
    SolveReport, SolveStats, VerifyReport,
};
