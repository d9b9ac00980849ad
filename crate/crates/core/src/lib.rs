//! Evolutionary diversity optimization driven by multi-objective quality
//! indicators.
//!
//! The library evolves fixed-size sets of solutions — TSP instances or plain
//! vectors — whose normalized feature vectors spread as evenly as possible
//! over the unit square or cube, while every member keeps satisfying a
//! quality gate. Set diversity is scored by one of five measures:
//! hypervolume over two dominance-avoiding transforms ([`indicators`]),
//! inverted generational distance and an additive-epsilon sequence against
//! regular reference grids ([`refsets`]), or exact star discrepancy. A
//! (μ+λ) evolutionary algorithm ([`ea`]) removes the individual whose
//! absence costs the least diversity.

pub mod ea;
pub mod error;
pub mod feature_space;
pub mod indicators;
pub mod refsets;
pub mod tsp;
pub mod vector;

pub use error::{Error, Result};
pub use feature_space::{
    derive_reference_point, dimension_double, FeatureBounds, FeatureVector, ObjectiveVector,
    PlaneEmbedding, Transform, DEFAULT_REFERENCE_MARGIN,
};
pub use indicators::{
    eps_compare, eps_sequence, hypervolume, igd, star_discrepancy, EpsSequence, IndicatorKind,
    IndicatorSpec, IndicatorValue, Orientation,
};
pub use refsets::{RefSpace, ReferenceSet, GRID_RESOLUTION_2D, GRID_RESOLUTION_3D};
