pub mod entanglement;
pub mod error;
pub mod fixedpoint;
pub mod homotopy;
pub mod norm;
pub mod oracle;
pub mod qubit;
pub mod report;
pub mod tensor;
pub mod unipoly;
