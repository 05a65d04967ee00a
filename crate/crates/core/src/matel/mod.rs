//! Reduced matrix elements of the electron–atom potential in coupled channels.

mod channel;
mod elements;
mod forms;
mod provider;
mod result;
mod spin;
mod two;

pub use channel::{Channel, ChannelError, RadialFn, TargetOrbital};
pub use elements::{assemble_v, he_element, li_element, nuclear_exch, one_body_nuclear};
pub use provider::{RadialError, RadialProvider, UnitRadial};
pub use result::{MatElError, MatElResult, MultipoleTerm, Term, TermValue};
pub use spin::{spin_block_3e, spin_block_4e};
pub use two::{direct_two_electron, direct_two_electron_cowan, multipole_kernel, two_electron_element};
