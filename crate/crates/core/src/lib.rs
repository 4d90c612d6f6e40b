pub mod base;
pub mod cpm;
pub mod enrich;
pub mod monads;
pub mod pregroup;
pub mod relate;
pub mod report;
pub mod sample;
pub mod suite;
pub mod weight;
