pub mod density;
pub mod entropy;
pub mod qes;
pub mod solve;
pub mod verify;
