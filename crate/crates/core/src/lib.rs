//! Exact character theory for finite permutation groups.
//!
//! Groups are built from generators with Schreier-Sims, classes are found
//! by enumeration, and irreducible character tables are computed exactly
//! with the Dixon-Schneider method over cyclotomic fields.

pub mod arith;
pub mod chartable;
pub mod classes;
pub mod classfun;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod modp;
pub mod perm;
pub mod quotient;
pub mod subgroups;
pub mod vanishing;

pub use chartable::{
    class_matrix, irreducible_characters, CharacterTable, SplitPrime, TableJson, Violation,
};
pub use classes::{conjugacy_classes, ClassData, ConjugacyClass};
pub use classfun::{
    constituents, fusion_map, induce, inflate, inner_product, inner_product_cyclotomic, kernel,
    restrict, ClassFunction,
};
pub use cyclotomic::{Coefficient, CyclotomicOver};
pub use error::{Error, Result};
pub use group::{
    build_group, centralizer, intersection, is_normal, normal_closure, normalizer, Limits,
    PermGroup,
};
pub use perm::Permutation;
pub use quotient::{quotient, Quotient};
pub use subgroups::{
    center, class_commutator, derived_subgroup, fitting, hall, is_nilpotent, is_pi_group,
    is_pi_separable, is_solvable, pi_core, relative_pi_core, sylow, upper_pi_series, HallResult,
    PiSeries, PiSet,
};
pub use vanishing::{
    nonvanishing_p_elements, prime_power_order_classes, vanishing_in_subgroup, vanishing_profile,
    VanishingClass, VanishingProfile,
};

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;
/// Exact elements of cyclotomic fields over the rationals.
pub type Cyclotomic = CyclotomicOver<Rational>;
