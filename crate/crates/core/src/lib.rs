pub mod cli;
pub mod exactnum;
pub mod matel;
pub mod oracle;
pub mod radial;
pub mod recoupling;
pub mod verify;
pub mod wigner;
