pub mod combinat;
pub mod poly;
pub mod rational;
pub mod series;
pub mod stirling;
pub mod special;
pub mod polycauchy;
pub mod suite;
pub mod dsl;
pub mod cli;
