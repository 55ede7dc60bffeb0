pub mod algebra;
pub mod error;
pub mod rational;

pub use error::Error;
pub use rational::Rational;
pub mod forests;
pub mod format;
pub mod holant;
pub mod planar;
pub mod random;
pub mod signature;
