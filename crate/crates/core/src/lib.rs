//! Gröbner bases over Tate algebras: multiplication matrices, change of
//! convergence log-radii and monomial ordering, and basis reconstruction,
//! over `Q_p` and `F_p((T))` with zealous precision tracking.

pub mod classical;
pub mod error;
pub mod fglm;
pub mod field;
pub mod linalg;
pub mod matrix;
pub mod monomial;
pub mod mulmat;
pub mod newton;
pub mod oracle;
pub mod scalar;
pub mod staircase;
pub mod tate_poly;

pub use error::{Error, Result};
pub use field::{Field, FieldKind};
pub use scalar::{Prec, Scalar};
