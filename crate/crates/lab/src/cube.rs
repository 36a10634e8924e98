//! Hypercube primitives: points of `{-1,1}^n` as bit patterns, vertex
//! subsets for exhaustive censuses, and sign-profile canonicalization
//! of point tuples.
//!
//! A point stores one bit per coordinate, set bit = +1. All `{-1,1}`
//! arithmetic reduces to popcounts, which keeps censuses at the
//! 2^16..2^20 scale cheap.

use crate::{Error, Result, Shard};

// ---------------------------------------------------------------------------
// CubePoint
// ---------------------------------------------------------------------------

/// A vertex of the hypercube `{-1,1}^n`, `1 <= n <= 32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CubePoint {
    bits: u32,
    dim: u32,
}

impl CubePoint {
    pub fn new(bits: u32, dim: u32) -> Result<Self> {
        if dim == 0 || dim > 32 {
            return Err(Error::Precondition(format!("dimension {dim} not in 1..=32")));
        }
        if dim < 32 && bits >= 1u32 << dim {
            return Err(Error::Precondition(format!(
                "bit pattern {bits:#x} out of range for dimension {dim}"
            )));
        }
        Ok(CubePoint { bits, dim })
    }

    pub fn all_ones(dim: u32) -> Self {
        CubePoint::new(mask_of(dim), dim).expect("valid dimension")
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Coordinate `l` as `+1` or `-1`.
    pub fn coord(&self, l: u32) -> i32 {
        debug_assert!(l < self.dim);
        if self.bits >> l & 1 == 1 {
            1
        } else {
            -1
        }
    }

    pub fn antipode(&self) -> Self {
        CubePoint {
            bits: self.bits ^ mask_of(self.dim),
            dim: self.dim,
        }
    }

    pub fn hamming(&self, other: &Self) -> u32 {
        debug_assert_eq!(self.dim, other.dim);
        (self.bits ^ other.bits).count_ones()
    }
}

#[inline]
fn mask_of(dim: u32) -> u32 {
    if dim == 32 {
        u32::MAX
    } else {
        (1u32 << dim) - 1
    }
}

/// Inner product `u . v = n - 2 * HammingDistance(u, v)`.
pub fn dot(u: &CubePoint, v: &CubePoint) -> Result<i64> {
    if u.dim != v.dim {
        return Err(Error::DimensionMismatch(format!(
            "cube points of dimension {} and {}",
            u.dim, v.dim
        )));
    }
    Ok(i64::from(u.dim) - 2 * i64::from(u.hamming(v)))
}

// ---------------------------------------------------------------------------
// VertexSet
// ---------------------------------------------------------------------------

/// Maximum dimension for which a [`VertexSet`] can be built (2^6 = 64
/// vertices fit one machine word; exhaustive censuses stop earlier).
pub const MAX_SET_DIM: u32 = 6;

/// A subset of the hypercube's vertex set, dimension at most
/// [`MAX_SET_DIM`]. Bit `v` of `mask` is set iff the vertex with bit
/// pattern `v` belongs to the set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexSet {
    dim: u32,
    mask: u64,
}

impl VertexSet {
    pub fn new(dim: u32, mask: u64) -> Result<Self> {
        if dim == 0 || dim > MAX_SET_DIM {
            return Err(Error::Precondition(format!(
                "vertex set dimension {dim} not in 1..={MAX_SET_DIM}"
            )));
        }
        let full = full_mask(dim);
        if mask & !full != 0 {
            return Err(Error::Precondition(format!(
                "membership mask {mask:#x} has bits beyond 2^{dim} vertices"
            )));
        }
        Ok(VertexSet { dim, mask })
    }

    pub fn empty(dim: u32) -> Result<Self> {
        VertexSet::new(dim, 0)
    }

    pub fn full(dim: u32) -> Result<Self> {
        VertexSet::new(dim, full_mask(dim))
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> u64 {
        u64::from(self.mask.count_ones())
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    #[inline]
    pub fn contains(&self, vertex_bits: u32) -> bool {
        debug_assert!(vertex_bits < 1 << self.dim);
        self.mask >> vertex_bits & 1 == 1
    }

    pub fn complement(&self) -> Self {
        VertexSet {
            dim: self.dim,
            mask: self.mask ^ full_mask(self.dim),
        }
    }

    /// Member vertices as cube points.
    pub fn points(&self) -> impl Iterator<Item = CubePoint> + '_ {
        let dim = self.dim;
        (0..1u32 << dim)
            .filter(move |v| self.mask >> v & 1 == 1)
            .map(move |v| CubePoint { bits: v, dim })
    }

    /// Number of cube edges with exactly one endpoint in the set.
    pub fn edge_boundary(&self) -> u64 {
        let mut boundary = 0;
        for v in 0..1u32 << self.dim {
            if self.mask >> v & 1 == 0 {
                continue;
            }
            for l in 0..self.dim {
                if self.mask >> (v ^ (1 << l)) & 1 == 0 {
                    boundary += 1;
                }
            }
        }
        boundary
    }

    /// Number of member vertices whose antipode is also a member.
    /// Always even; equals `len` exactly when the set is symmetric.
    pub fn antipodal_count(&self) -> u64 {
        let full = mask_of(self.dim);
        let mut count = 0;
        for v in 0..1u32 << self.dim {
            if self.mask >> v & 1 == 1 && self.mask >> (v ^ full) & 1 == 1 {
                count += 1;
            }
        }
        count
    }

    /// Closed under the antipodal map.
    pub fn is_symmetric(&self) -> bool {
        self.antipodal_count() == self.len()
    }

    /// Restrictions to the two facets along the last coordinate, as
    /// subsets of the `(n-1)`-cube: vertices whose last coordinate is
    /// `+1` resp. `-1`, with that coordinate dropped.
    pub fn split_last(&self) -> Result<(VertexSet, VertexSet)> {
        if self.dim < 2 {
            return Err(Error::Precondition(
                "splitting requires dimension at least 2".into(),
            ));
        }
        let sub = self.dim - 1;
        let half = 1u32 << sub;
        let mut top = 0u64; // last coordinate +1
        let mut bottom = 0u64; // last coordinate -1
        for v in 0..half {
            if self.mask >> (v | half) & 1 == 1 {
                top |= 1 << v;
            }
            if self.mask >> v & 1 == 1 {
                bottom |= 1 << v;
            }
        }
        Ok((VertexSet::new(sub, top)?, VertexSet::new(sub, bottom)?))
    }
}

#[inline]
fn full_mask(dim: u32) -> u64 {
    let vertices = 1u32 << dim;
    if vertices == 64 {
        u64::MAX
    } else {
        (1u64 << vertices) - 1
    }
}

/// Induction identity behind the boundary bound: splitting along the
/// last coordinate,
/// `|E(S,S^c)| = |E(S_+,.)| + |E(S_-,.)| + |S_+ symdiff S_-|`.
pub fn split_identity_check(s: &VertexSet) -> Result<bool> {
    let (top, bottom) = s.split_last()?;
    let cross = (top.mask ^ bottom.mask).count_ones() as u64;
    Ok(s.edge_boundary() == top.edge_boundary() + bottom.edge_boundary() + cross)
}

// ---------------------------------------------------------------------------
// SignProfile
// ---------------------------------------------------------------------------

/// Equivalence class of a `k`-tuple of cube points under coordinate
/// permutation and global per-coordinate sign flips.
///
/// Coordinates are flipped so point 0 reads `+1` everywhere; what
/// remains of a coordinate is the sign pattern of points `1..k` there.
/// `counts[p]` is the number of coordinates whose pattern is `p`
/// (bit `j-1` of `p` set iff point `j` agrees with point 0). Every
/// pairwise inner product is a linear function of the counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignProfile {
    k: u32,
    n: u32,
    counts: Vec<u32>,
}

impl SignProfile {
    pub fn new(k: u32, n: u32, counts: Vec<u32>) -> Result<Self> {
        if !(2..=4).contains(&k) {
            return Err(Error::Precondition(format!("tuple arity {k} not in 2..=4")));
        }
        if counts.len() != 1 << (k - 1) {
            return Err(Error::Precondition(format!(
                "expected {} pattern counts, got {}",
                1 << (k - 1),
                counts.len()
            )));
        }
        let total: u64 = counts.iter().map(|&c| u64::from(c)).sum();
        if total != u64::from(n) {
            return Err(Error::Precondition(format!(
                "pattern counts sum to {total}, dimension is {n}"
            )));
        }
        Ok(SignProfile { k, n, counts })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Inner product of tuple members `a` and `b` reconstructed from
    /// the pattern counts.
    pub fn dot(&self, a: u32, b: u32) -> i64 {
        debug_assert!(a < self.k && b < self.k);
        if a == b {
            return i64::from(self.n);
        }
        let mut acc = 0i64;
        for (p, &c) in self.counts.iter().enumerate() {
            let agree = if a == 0 || b == 0 {
                let j = a.max(b);
                p >> (j - 1) & 1 == 1
            } else {
                (p >> (a - 1) & 1) == (p >> (b - 1) & 1)
            };
            acc += if agree { i64::from(c) } else { -i64::from(c) };
        }
        acc
    }
}

/// Canonical profile of a point tuple; the first point is normalized to
/// the all-ones vertex by per-coordinate sign flips.
pub fn canonical_profile(points: &[CubePoint], k: u32) -> Result<SignProfile> {
    if points.len() != k as usize {
        return Err(Error::Precondition(format!(
            "expected {k} points, got {}",
            points.len()
        )));
    }
    if !(2..=4).contains(&k) {
        return Err(Error::Precondition(format!("tuple arity {k} not in 2..=4")));
    }
    let dim = points[0].dim;
    if points.iter().any(|p| p.dim != dim) {
        return Err(Error::DimensionMismatch("mixed cube dimensions in tuple".into()));
    }
    let mut counts = vec![0u32; 1 << (k - 1)];
    for l in 0..dim {
        let base = points[0].bits >> l & 1;
        let mut pattern = 0usize;
        for (j, p) in points.iter().enumerate().skip(1) {
            if p.bits >> l & 1 == base {
                pattern |= 1 << (j - 1);
            }
        }
        counts[pattern] += 1;
    }
    SignProfile::new(k, dim, counts)
}

/// All sign profiles of arity `k` in dimension `n`: the weak
/// compositions of `n` into `2^(k-1)` parts, emitted exactly once, in a
/// fixed order. Total count is `C(n + 2^(k-1) - 1, 2^(k-1) - 1)`.
pub fn enumerate_profiles(n: u32, k: u32, shard: Shard) -> Result<ProfileIter> {
    if !(3..=4).contains(&k) {
        return Err(Error::Precondition(format!(
            "profile enumeration supports k in 3..=4, got {k}"
        )));
    }
    Ok(ProfileIter {
        k,
        n,
        next: Some(first_composition(n, 1 << (k - 1))),
        seq: 0,
        shard,
    })
}

pub struct ProfileIter {
    k: u32,
    n: u32,
    next: Option<Vec<u32>>,
    seq: u64,
    shard: Shard,
}

impl Iterator for ProfileIter {
    type Item = SignProfile;

    fn next(&mut self) -> Option<SignProfile> {
        loop {
            let current = self.next.take()?;
            self.next = next_composition(&current);
            let owned = self.shard.owns(self.seq);
            self.seq += 1;
            if owned {
                return Some(SignProfile {
                    k: self.k,
                    n: self.n,
                    counts: current,
                });
            }
        }
    }
}

fn first_composition(n: u32, parts: usize) -> Vec<u32> {
    let mut c = vec![0u32; parts];
    c[0] = n;
    c
}

/// Successor in a fixed total order over weak compositions; `None`
/// after the last one (everything in the final part).
fn next_composition(c: &[u32]) -> Option<Vec<u32>> {
    let parts = c.len();
    if c[parts - 1] == c.iter().sum::<u32>() {
        return None;
    }
    let mut out = c.to_vec();
    let i = out.iter().position(|&v| v > 0).expect("nonzero part exists");
    let v = out[i];
    out[i] = 0;
    out[0] = v - 1;
    out[i + 1] += 1;
    Some(out)
}

/// Number of weak compositions of `n` into `parts` parts.
pub fn composition_count(n: u32, parts: u32) -> u64 {
    binomial(u64::from(n + parts - 1), u64::from(parts - 1))
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

// ---------------------------------------------------------------------------
// Subset enumeration
// ---------------------------------------------------------------------------

/// Largest dimension for the exhaustive census over all subsets
/// (2^16 sets); the symmetric census reaches one dimension further
/// with the same set count.
pub const MAX_CENSUS_DIM: u32 = 4;
pub const MAX_SYMMETRIC_CENSUS_DIM: u32 = 5;

/// Every subset of the `n`-cube's vertices (or every antipodally closed
/// one), each exactly once.
pub fn enumerate_subsets(
    n: u32,
    symmetric_only: bool,
    shard: Shard,
) -> Result<Box<dyn Iterator<Item = VertexSet>>> {
    if symmetric_only {
        if n == 0 || n > MAX_SYMMETRIC_CENSUS_DIM {
            return Err(Error::SizeCap(format!(
                "symmetric subset census supports n <= {MAX_SYMMETRIC_CENSUS_DIM}, got {n}"
            )));
        }
        // One free bit per antipodal pair; pair class of v is keyed by
        // its representative in the lower half (last coordinate -1).
        let classes = 1u32 << (n - 1);
        let full = mask_of(n);
        let iter = (0u64..1 << classes)
            .filter(move |sel| shard.owns(*sel))
            .map(move |sel| {
                let mut mask = 0u64;
                for c in 0..classes {
                    if sel >> c & 1 == 1 {
                        mask |= 1 << c;
                        mask |= 1 << (c ^ full);
                    }
                }
                VertexSet { dim: n, mask }
            });
        Ok(Box::new(iter))
    } else {
        if n == 0 || n > MAX_CENSUS_DIM {
            return Err(Error::SizeCap(format!(
                "full subset census supports n <= {MAX_CENSUS_DIM}, got {n}"
            )));
        }
        let vertices = 1u32 << n;
        let iter = (0u64..1 << vertices)
            .filter(move |m| shard.owns(*m))
            .map(move |mask| VertexSet { dim: n, mask });
        Ok(Box::new(iter))
    }
}
