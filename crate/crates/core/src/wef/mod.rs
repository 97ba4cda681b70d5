//! Weight enumerating functions: exact ensemble averages of i-polar codes,
//! concatenated-code assembly, outer-code enumerators and brute-force
//! enumeration.

pub mod codes;
pub mod coeff;
pub mod concat;
pub mod csv;
pub mod ensemble;
pub mod enumerate;
pub mod poly;

pub use codes::{hamming_wef, punctured_accumulator_counts, rra_wef};
pub use coeff::{Arithmetic, Coeff};
pub use concat::{power_iowef, power_wef, serial_concat_wef};
pub use ensemble::{combine_iowef, combine_wef, ensemble_iowef, ensemble_wef, overlap_range, EnsembleOptions};
pub use enumerate::{enumerate_wef_exhaustive, weight_counts};
pub use poly::{ExactWef, FloatWef, IOWeightPoly, WeightPoly};
