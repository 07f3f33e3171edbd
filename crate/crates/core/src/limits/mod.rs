//! Direct systems `gl_n → gl_{n+1}` and the subspaces, closures, stabilizers
//! and trace families that live on their limit.

mod coherent;
mod perp;
mod system;
mod tail;


pub use coherent::{
    coherent_stabilizer, infinite_trace_conditions, trace_pairing, trace_report, BlockReport,
    CoherentStabilizer, CoherentTraceFamily, InfiniteTraceReport,
};
pub use perp::{closure, contains, equal, is_closed, is_level_closed, limit_perp, TailFlag};
pub use system::{DirectSystem, DEFAULT_HORIZON};
pub use tail::{Pattern, TailSubspace, Term};
