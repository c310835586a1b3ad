pub mod catalog;
pub mod classification;
pub mod graph;
pub mod group;
pub mod power;
pub mod topology;
