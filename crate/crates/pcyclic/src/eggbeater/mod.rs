//! The egg-beater model: sign sequences, the Koszul-type complex with its
//! free rotation, the self-mapping cone report and product multiplicities.

mod cone;
mod model;
mod product;
mod signs;

pub use cone::{
    cone_report, egg_cone, egg_cone_report, egg_map, egg_source, egg_stability_probe, perturbation_step, DegreeReport, DegreeReportWire, EggConeReport,
    EggReportWire, Perturbation, TotalsWire, EGG_REPORT_SCHEMA,
};
pub use model::{build_model, q_kernel_vector, q_matrix, EggBeaterModel, Generator};
pub use product::{
    babbage_holds, betti_complex, binomial_big, product_cone_crosscheck, product_multiplicity, quantum_betti, Crosscheck,
    ProductMultiplicity,
};
pub use signs::{cz_index, SignSequence};
