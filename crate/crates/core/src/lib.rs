pub mod cli;
pub mod construction;
pub mod engine;
pub mod formula;
mod lexer;
pub mod machine;
pub mod oracle;
pub mod proofterm;
