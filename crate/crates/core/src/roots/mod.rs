//! Real-root isolation and counting (exact) and complex root clouds
//! (floating point with certified radii).

pub mod complex;
pub mod squarefree;
pub mod sturm;

pub use complex::{complex_roots, ComplexRootApprox, DEFAULT_TOL};
pub use squarefree::{squarefree_decomposition, squarefree_part};
pub use sturm::{
    count_roots_in, count_roots_in_with_multiplicity, isolate_real_roots, rational_between,
    real_root_count, Bounds, IsolatedRealRoot, RealRootIsolator,
};
