pub mod form;
pub mod fp;
pub mod linalg;
pub mod poly;
pub mod series;

pub use fp::Prime;
pub use linalg::{DegreeSlice, Echelon};
pub use poly::{monomial_basis, Polynomial, Var, VarList};
pub use series::PoincareSeries;
