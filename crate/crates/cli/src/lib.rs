pub mod commands;
pub mod parse;
pub mod verify;
