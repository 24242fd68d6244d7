pub mod action;
pub mod closed;
pub mod element;
pub mod engine;
pub mod generators;
pub mod matrix;
pub mod token;
