pub mod category;
pub mod cli;
pub mod gposet;
pub mod group;
pub mod homotopy;
pub mod lie;
pub mod schema;
