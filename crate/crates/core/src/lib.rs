pub mod bayesnet;
pub mod circuit;
pub mod cli;
pub mod exec;
pub mod generator;
pub mod nitcodes;
pub mod num;
pub mod oracle;
pub mod random;
pub mod text;
