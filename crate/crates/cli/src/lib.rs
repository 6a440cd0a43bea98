pub mod doc;
pub mod dot;
