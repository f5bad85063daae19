//! Filtered chain complexes, self-mapping cones, double maps and tensor products.

mod complex;
mod cone;
mod graded;
mod iso;
mod random;
mod tensor;
mod wire;

pub use complex::{verify_complex, FilteredChainComplex, Violation, ViolationKind};
pub use cone::{build_cone, cone_homotopy_iso, double_map, ConeComplex, ConeIso, LEFT_TAG, RIGHT_TAG};
pub use graded::{check_filtered_chain_map, GradedMap};
pub use iso::{cone_tensor_iso_check, same_up_to_labels};
pub use random::{random_complex, random_lowering_homotopy, random_nonzero_cyclo, PlantedBar, RandomComplex, RandomComplexConfig};
pub use tensor::{tensor_map, tensor_product, TensorLayout, TENSOR_SEP};
pub use wire::{ComplexWire, ConeWire, DegreeWire, GradedMapWire, COMPLEX_SCHEMA, CONE_SCHEMA};
