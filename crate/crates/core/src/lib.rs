//! Invariants of quadratic forms and étale algebras with alternating-group
//! structure: Stiefel-Whitney classes in the graded algebra
//! `F_2[e, x_1, …, x_g]/(x_i² = e x_i)`, Witt and Grothendieck-Witt rings of
//! concrete fields, λ-operations, trace forms, and the relations between
//! them.

pub mod dyadic;
pub mod fields;
pub mod milnor;
pub mod witt;
pub mod groups;
pub mod etale;
pub mod fixed_modules;
pub mod lambda_relations;
pub mod verify;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    pub struct Readme;
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/milnor.md")]
    pub struct Milnor;
    #[doc = include_str!("../../../book/src/forms.md")]
    pub struct Forms;
    #[doc = include_str!("../../../book/src/trace-forms.md")]
    pub struct TraceForms;
    #[doc = include_str!("../../../book/src/groups.md")]
    pub struct Groups;
    #[doc = include_str!("../../../book/src/fixed-modules.md")]
    pub struct FixedModules;
    #[doc = include_str!("../../../book/src/relations.md")]
    pub struct Relations;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
