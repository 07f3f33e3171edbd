//! Classical matrix Lie algebras at finite rank and their subalgebras.

pub mod ambient;
pub mod borel;
pub mod parabolic;
pub mod radical;
pub mod space;
pub mod subalgebra;

pub use ambient::{AmbientAlgebra, Family};
pub use borel::{certify_borel, BorelCertificate};
pub use parabolic::{is_parabolic, ParabolicVerdict};
pub use space::MatrixSpace;
pub use subalgebra::MatrixLieSubalgebra;
