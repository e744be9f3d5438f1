//! Tensor modules over `W_n`, the maps between them, Whittaker vectors, and
//! the universal Whittaker module.

pub mod complex;
pub mod phi;
pub mod q1;
pub mod tensor;
pub mod whittaker;

pub use complex::pi_map;
pub use phi::{phi, PhiImage};
pub use q1::{q1_action, q1_whittaker_dimensions, theta_of, Q1Vec};
pub use tensor::{TenVec, TensorModule};
pub use whittaker::{whittaker_space, WhSource};
