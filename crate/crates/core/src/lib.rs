pub mod cli;
pub mod corpus;
pub mod correspondence;
pub mod enriched;
pub mod error;
pub mod fixture;
pub mod freeunder;
pub mod gr;
pub mod igr;
pub mod opfib;
pub mod pseudo;
pub mod report;
pub mod vbase;
