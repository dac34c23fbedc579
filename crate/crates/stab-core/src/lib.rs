//! Exact-arithmetic engine for slope stability of numerical models of
//! 1-dimensional sheaves: twisted central charges, Harder-Narasimhan and
//! Jordan-Holder filtrations, h^0 bounds, and the wall-and-chamber
//! decomposition of the stability-parameter space. All computation is over
//! arbitrary-precision rationals; there are no floats anywhere.

pub mod charge;
pub mod error;
pub mod lattice;
pub mod model;
pub mod rat;
pub mod wall;

pub use charge::{
    central_charge, enumerate_classes_with_charge, hilbert_polynomial,
    hilbert_polynomials_for_charge, in_lower_half, p_slope, slope_comparison_bounds, z_slope,
    ChargeValue, HilbertPolynomial, Slope, SlopeBounds, StabilityParameter,
};
pub use error::{Error, Result, Violation};
pub use lattice::{
    enumerate_interval, validate_ambient, AmbientData, EffectiveClass, Functional, NumClass,
    ValidatedAmbient,
};
pub use model::{
    catalog_verdicts, h0_bound_p, h0_bound_z, hn_filtration, hom_vanishing_criterion, is_semistable,
    is_stable, jh_filtration, max_destabilizing_subobject, mu_max, mu_min, s_equivalent,
    semistability, stability_test_battery, validate_model, GradedClass, HnResult, NodeDoc,
    ObjectModel, SlopeRule, ValidatedModel, Verdict, ZBoundReport,
};
pub use rat::Rat;
pub use wall::{
    actual_walls, catalog_walls, crossing_report, enumerate_walls_in_box, quintic_ambient,
    quintic_ambient_data, quintic_degenerate_pairs, quintic_determinant_form, quintic_point,
    same_chamber, segment_crossings, slope_equality_on_wall, wall_sign, wall_value, CrossingReport,
    NodeSituation, ObjectCrossing, ParameterBox, ParameterPoint, SegmentCrossings, WallSpec,
};
