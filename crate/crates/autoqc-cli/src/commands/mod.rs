pub mod board;
pub mod bounds;
pub mod gates;
pub mod layouts;
pub mod summary;
pub mod walks;
