//! Desk-scale verification laboratory for semidefinite relaxations of
//! Vertex Cover and the metric geometry around them.
//!
//! The crate reconstructs and stress-tests a family of related objects:
//!
//! * Gram-form gap solutions on Hamming graphs under progressively
//!   stronger constraint tiers (edge, triangle, signed-triangle,
//!   pentagonal), together with their explicit `l1` embeddings.
//! * Exhaustive hypercube censuses: a generalized isoperimetric
//!   inequality with an antipodal correction term, and a Poincare
//!   inequality for symmetric vertex sets.
//! * Finite metric analysis: negative-type tests, cut decompositions,
//!   exact minimum `l1` distortion via cut-cone linear programming, and
//!   the tensor metric whose distortion lower bound tends to 8/7.
//!
//! Numeric work is generic over [`Scalar`], so every verdict that
//! matters can be replayed in exact rational arithmetic ([`Rat`])
//! instead of `f64`. The default float tolerances live in [`tol`].

pub mod charikar;
pub mod cube;
pub mod graph;
pub mod isoperimetry;
pub mod lp;
pub mod metric;
pub mod pentagon;
pub mod relaxations;
pub mod scalar;
pub mod sdp_io;
pub mod tol;

pub use scalar::Scalar;

/// Exact arbitrary-precision rational scalar (the "rational mode" type).
pub type Rat = num_rational::BigRational;

/// Default floating scalar (the "float mode" type).
pub type Float = f64;

/// Shard selector for partitionable censuses and enumeration streams.
///
/// Item `i` of a stream belongs to shard `s` iff `i % count == index`.
/// Results merged over all shards are independent of `count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shard {
    pub index: u64,
    pub count: u64,
}

impl Shard {
    /// The whole stream as a single shard.
    pub fn whole() -> Self {
        Shard { index: 0, count: 1 }
    }

    pub fn new(index: u64, count: u64) -> Self {
        assert!(count > 0 && index < count, "shard index out of range");
        Shard { index, count }
    }

    #[inline]
    pub fn owns(&self, item: u64) -> bool {
        item % self.count == self.index
    }
}

impl Default for Shard {
    fn default() -> Self {
        Shard::whole()
    }
}

/// Run one worker per shard on scoped threads and collect their
/// results in shard order, so any merge of the outputs is
/// deterministic regardless of scheduling.
pub fn run_sharded<T, F>(threads: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(Shard) -> T + Sync,
{
    let threads = threads.max(1);
    if threads == 1 {
        return vec![work(Shard::whole())];
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|i| {
                let work = &work;
                scope.spawn(move || work(Shard::new(i as u64, threads as u64)))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect()
    })
}

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("instance too large: {0}")]
    SizeCap(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("gram matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPsd(f64),
    #[error("linear program solver stalled (anti-cycling guard tripped)")]
    LpStalled,
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
