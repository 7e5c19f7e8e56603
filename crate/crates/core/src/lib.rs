pub mod cli;
pub mod germ;
pub mod poly1;
pub mod rational;
pub mod singular;
pub mod surface;
pub mod table;
pub mod weights;
