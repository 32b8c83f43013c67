//! Exact angle multisection for integer vectors.
//!
//! Given integer vectors `a` and `b`, this crate decides whether the angle
//! between them can be cut into `m` equal parts by a chain of integer
//! vectors, and builds every such chain. All arithmetic is exact.
//!
//! ```
//! use multisect::{ivec, msect, MsectOptions, SectorStatus};
//!
//! let d = msect(&ivec![1, 1], &ivec![-2, 11], 3, &MsectOptions::default()).unwrap();
//! assert_eq!(d.status, SectorStatus::Sectable);
//! assert_eq!(d.sequences[0].vectors[1], ivec![1, 2]);
//! ```

pub mod error;
pub mod exact;
pub mod literal;
pub mod number_theory;
pub mod plot;
pub mod poly;
pub mod sectioning;

pub use error::{Error, Result};
pub use exact::{
    angles_equal, gram_invariants, inner, plane_coords, primitive_reduce, tangent_class,
    GramInvariants, IntVector, PlaneCoords, Rational, TangentClass,
};
pub use literal::{parse_sequence, parse_vector};
pub use number_theory::{
    divisors, factorize, rational_sqrt, squarefree_part, Budget, Factorization, SearchConfig,
};
pub use plot::{render_svg, PlotSpec};
pub use sectioning::{
    bisector_vector, extend_sequence, first_sector_vector, generate_sequence, msect, pow2_sectable,
    rational_roots, reflect_raw, reflect_step, sect_polynomial, verify_sequence, CosineChain,
    EquisectorSequence, FailureKind, MsectOptions, Route, SectPolynomial, SectorDecision,
    SectorStatus, VerificationFailure, VerificationReport,
};
