pub mod builders;
pub mod doubles;
pub mod hopfcore;
pub mod hopffrobenius;
pub mod integrals;
pub mod par;
pub mod scalars;
pub mod tensorlin;
