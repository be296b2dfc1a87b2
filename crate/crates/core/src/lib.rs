pub mod diagram;
pub mod fixtures;
pub mod forms;
pub mod intlinalg;
pub mod numtheory;
pub mod pipeline;
pub mod polynomials;
pub mod signatures;
pub mod skeinpoly;
