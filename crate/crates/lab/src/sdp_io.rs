//! Sparse-text export of the relaxation tiers as explicit SDP
//! instances, plus ingestion and validation of externally produced
//! solutions.
//!
//! The instance format is four header values followed by coefficient
//! rows:
//!
//! ```text
//! * comment lines
//! <number of rows>
//! <number of blocks>        (always 1 here: the Gram matrix)
//! <block sizes>
//! <rhs values, one per row>
//! <row> <block> <i> <j> <value>
//! ```
//!
//! Indices are 1-based with `i <= j`, and each stored upper-triangle
//! entry counts once, so a row states `sum of value * X[i][j] >= rhs`.
//! Row 0 holds the linear part of the minimization objective; its
//! constant offset (the +1/2 per vertex) rides in a comment because
//! the format carries only linear parts. Equality constraints are
//! emitted as +/- row pairs, the one convention every consumer reads.
//!
//! Solutions come back as whitespace-separated matrices, `gram N` or
//! `coords N D` first lines, and are validated by the relaxation
//! audit.

use std::collections::BTreeMap;

use crate::graph::Graph;
use crate::relaxations::{self, FeasibilityReport, Tier, VectorSolution};
use crate::{Error, Result};

/// Largest point count (graph order + 1) the exporter accepts; the
/// pentagonal row census explodes combinatorially past this.
pub const MAX_EXPORT_POINTS: usize = 40;

// ------------------------------------------------------------ instances ----

/// One linear constraint on the Gram matrix: each `(i, j, value)`
/// entry (0-based, `i <= j`) contributes `value * X[i][j]` once, and
/// the sum is `>= rhs`, or `= rhs` when `equality` is set.
#[derive(Clone, Debug, PartialEq)]
pub struct SdpConstraint {
    pub entries: Vec<(usize, usize, f64)>,
    pub rhs: f64,
    pub equality: bool,
}

/// A relaxation tier on a graph rendered as explicit constraint data:
/// unit-norm equalities first, then the tier census in the audit's
/// deterministic order (edges, triangles, signed triangles or
/// pentagons), each family lexicographic by index tuple.
#[derive(Clone, Debug, PartialEq)]
pub struct SdpInstance {
    pub tier: Tier,
    /// Gram side length, graph order + 1 (apex first).
    pub points: usize,
    pub edges: usize,
    /// Linear objective entries; minimize their sum plus the constant.
    pub objective: Vec<(usize, usize, f64)>,
    /// `|V| / 2`, the affine part of Σ (1 + v_0·v_i)/2.
    pub objective_constant: f64,
    pub constraints: Vec<SdpConstraint>,
}

fn nonzero(acc: BTreeMap<(usize, usize), f64>) -> Vec<(usize, usize, f64)> {
    acc.into_iter()
        .filter(|&(_, v)| v != 0.0)
        .map(|((i, j), v)| (i, j, v))
        .collect()
}

fn push_triangles(cons: &mut Vec<SdpConstraint>, points: usize) {
    for a in 0..points {
        for b in a + 1..points {
            for c in b + 1..points {
                for (y, x, z) in [(a, b, c), (b, a, c), (c, a, b)] {
                    // (v_x − v_y)·(v_z − v_y) ≥ 0
                    let mut acc = BTreeMap::new();
                    *acc.entry((x.min(z), x.max(z))).or_insert(0.0) += 1.0;
                    *acc.entry((x.min(y), x.max(y))).or_insert(0.0) += -1.0;
                    *acc.entry((y.min(z), y.max(z))).or_insert(0.0) += -1.0;
                    *acc.entry((y, y)).or_insert(0.0) += 1.0;
                    cons.push(SdpConstraint {
                        entries: nonzero(acc),
                        rhs: 0.0,
                        equality: false,
                    });
                }
            }
        }
    }
}

// Signed coefficient of v_p · v_q where points n..2n are the
// reflections −v_0.. −v_{n−1}.
fn add_signed(acc: &mut BTreeMap<(usize, usize), f64>, p: usize, q: usize, w: f64, n: usize) {
    let s = if (p < n) == (q < n) { w } else { -w };
    let (i, j) = (p % n, q % n);
    *acc.entry((i.min(j), i.max(j))).or_insert(0.0) += s;
}

fn push_signed_triangles(cons: &mut Vec<SdpConstraint>, points: usize) {
    let m = 2 * points;
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let mut img = [(a + points) % m, (b + points) % m, (c + points) % m];
                img.sort_unstable();
                if img < [a, b, c] {
                    continue; // reflected copy of a triple already visited
                }
                for (y, x, z) in [(a, b, c), (b, a, c), (c, a, b)] {
                    let mut acc = BTreeMap::new();
                    add_signed(&mut acc, x, z, 1.0, points);
                    add_signed(&mut acc, x, y, -1.0, points);
                    add_signed(&mut acc, y, z, -1.0, points);
                    *acc.entry((y % points, y % points)).or_insert(0.0) += 1.0;
                    cons.push(SdpConstraint {
                        entries: nonzero(acc),
                        rhs: 0.0,
                        equality: false,
                    });
                }
            }
        }
    }
}

// w · ‖v_p − v_q‖² as Gram entries.
fn add_sq_distance(acc: &mut BTreeMap<(usize, usize), f64>, p: usize, q: usize, w: f64) {
    *acc.entry((p, p)).or_insert(0.0) += w;
    *acc.entry((q, q)).or_insert(0.0) += w;
    *acc.entry((p.min(q), p.max(q))).or_insert(0.0) += -2.0 * w;
}

fn push_pentagons(cons: &mut Vec<SdpConstraint>, points: usize) {
    let n = points;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for e in d + 1..n {
                        let quint = [a, b, c, d, e];
                        for &(i, j) in relaxations::SPLITS.iter() {
                            let s = [quint[i], quint[j]];
                            let mut t = [0usize; 3];
                            let mut w = 0;
                            for (pos, &p) in quint.iter().enumerate() {
                                if pos != i && pos != j {
                                    t[w] = p;
                                    w += 1;
                                }
                            }
                            let mut acc = BTreeMap::new();
                            for &sp in &s {
                                for &tp in &t {
                                    add_sq_distance(&mut acc, sp, tp, 1.0);
                                }
                            }
                            add_sq_distance(&mut acc, s[0], s[1], -1.0);
                            add_sq_distance(&mut acc, t[0], t[1], -1.0);
                            add_sq_distance(&mut acc, t[0], t[2], -1.0);
                            add_sq_distance(&mut acc, t[1], t[2], -1.0);
                            cons.push(SdpConstraint {
                                entries: nonzero(acc),
                                rhs: 0.0,
                                equality: false,
                            });
                        }
                    }
                }
            }
        }
    }
}

impl SdpInstance {
    pub fn build(g: &Graph, tier: Tier) -> Result<Self> {
        let points = g.order() + 1;
        if points > MAX_EXPORT_POINTS {
            return Err(Error::SizeCap(format!(
                "export supports graph order + 1 <= {MAX_EXPORT_POINTS}, got {points}"
            )));
        }
        let mut constraints = Vec::new();
        for i in 0..points {
            constraints.push(SdpConstraint {
                entries: vec![(i, i, 1.0)],
                rhs: 1.0,
                equality: true,
            });
        }
        for &(u, v) in g.edges() {
            // (v_i − v_0)·(v_j − v_0) = 0 for the edge's points
            let (i, j) = (u + 1, v + 1);
            constraints.push(SdpConstraint {
                entries: vec![(0, 0, 1.0), (0, i, -1.0), (0, j, -1.0), (i, j, 1.0)],
                rhs: 0.0,
                equality: true,
            });
        }
        match tier {
            Tier::Standard => {}
            Tier::Triangle => push_triangles(&mut constraints, points),
            Tier::Karakostas => push_signed_triangles(&mut constraints, points),
            Tier::Pentagonal => {
                push_triangles(&mut constraints, points);
                push_pentagons(&mut constraints, points);
            }
        }
        let objective = (1..points).map(|i| (0usize, i, 0.5)).collect();
        Ok(SdpInstance {
            tier,
            points,
            edges: g.size(),
            objective,
            objective_constant: g.order() as f64 / 2.0,
            constraints,
        })
    }

    /// Census constraints only — everything past the unit diagonals.
    /// Always equals [`relaxations::census_size`] for the tier.
    pub fn census_constraints(&self) -> u64 {
        (self.constraints.len() - self.points) as u64
    }

    /// Total rows after expanding equalities into +/- pairs.
    pub fn emitted_rows(&self) -> u64 {
        self.constraints
            .iter()
            .map(|c| if c.equality { 2u64 } else { 1 })
            .sum()
    }

    pub fn render(&self) -> String {
        let mut lines: Vec<String> = vec![
            "* vertex cover relaxation in sparse block form".to_string(),
            format!(
                "* tier = {}; points = {} (apex first); graph edges = {}",
                self.tier.name(),
                self.points,
                self.edges
            ),
            format!(
                "* objective: minimize the row-0 sum plus the constant {}",
                fmt_value(self.objective_constant)
            ),
            "* rows are \"row block i j value\", 1-based, i <= j, each entry once;".to_string(),
            "* constraint rows read sum >= rhs, equalities are +/- row pairs".to_string(),
        ];
        lines.push(self.emitted_rows().to_string());
        lines.push("1".to_string());
        lines.push(self.points.to_string());
        let mut rhs = Vec::new();
        for c in &self.constraints {
            rhs.push(fmt_value(c.rhs));
            if c.equality {
                rhs.push(fmt_value(-c.rhs));
            }
        }
        lines.push(rhs.join(" "));
        for &(i, j, v) in &self.objective {
            lines.push(format!("0 1 {} {} {}", i + 1, j + 1, fmt_value(v)));
        }
        let mut row = 0u64;
        for c in &self.constraints {
            row += 1;
            for &(i, j, v) in &c.entries {
                lines.push(format!("{row} 1 {} {} {}", i + 1, j + 1, fmt_value(v)));
            }
            if c.equality {
                row += 1;
                for &(i, j, v) in &c.entries {
                    lines.push(format!("{row} 1 {} {} {}", i + 1, j + 1, fmt_value(-v)));
                }
            }
        }
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }
}

fn fmt_value(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v }; // normalize -0
    format!("{v}")
}

/// Renders the `tier` relaxation of `g` in the sparse instance format.
pub fn export_sdpa(g: &Graph, tier: Tier) -> Result<String> {
    Ok(SdpInstance::build(g, tier)?.render())
}

// -------------------------------------------------------------- parsing ----

/// One data row of a sparse instance file; row 0 is the objective.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SdpEntry {
    pub row: u64,
    pub block: usize,
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

/// A parsed sparse instance file.
#[derive(Clone, Debug, PartialEq)]
pub struct SdpFile {
    pub rows: u64,
    pub blocks: usize,
    pub block_sizes: Vec<usize>,
    pub rhs: Vec<f64>,
    pub entries: Vec<SdpEntry>,
}

fn parse_token<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("cannot read {what} from {tok:?}"),
    })
}

/// Parses the sparse instance format, skipping `*` comments; errors
/// carry 1-based line numbers.
pub fn parse_sdpa(text: &str) -> Result<SdpFile> {
    let mut rows: Option<u64> = None;
    let mut blocks: Option<usize> = None;
    let mut block_sizes: Option<Vec<usize>> = None;
    let mut rhs: Option<Vec<f64>> = None;
    let mut entries = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let data = raw.trim();
        if data.is_empty() || data.starts_with('*') || data.starts_with('"') {
            continue;
        }
        let toks: Vec<&str> = data.split_whitespace().collect();
        if rows.is_none() {
            rows = Some(parse_token(toks[0], line, "the row count")?);
        } else if blocks.is_none() {
            blocks = Some(parse_token(toks[0], line, "the block count")?);
        } else if block_sizes.is_none() {
            let sizes = toks
                .iter()
                .map(|t| parse_token(t, line, "a block size"))
                .collect::<Result<Vec<usize>>>()?;
            if sizes.len() != blocks.unwrap() {
                return Err(Error::Parse {
                    line,
                    msg: format!("{} block sizes for {} blocks", sizes.len(), blocks.unwrap()),
                });
            }
            block_sizes = Some(sizes);
        } else if rhs.is_none() {
            let vals = toks
                .iter()
                .map(|t| parse_token(t, line, "a right-hand side"))
                .collect::<Result<Vec<f64>>>()?;
            if vals.len() as u64 != rows.unwrap() {
                return Err(Error::Parse {
                    line,
                    msg: format!(
                        "{} right-hand sides for {} rows",
                        vals.len(),
                        rows.unwrap()
                    ),
                });
            }
            rhs = Some(vals);
        } else {
            if toks.len() != 5 {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected \"row block i j value\", got {} fields", toks.len()),
                });
            }
            let entry = SdpEntry {
                row: parse_token(toks[0], line, "a row index")?,
                block: parse_token(toks[1], line, "a block index")?,
                i: parse_token(toks[2], line, "a matrix index")?,
                j: parse_token(toks[3], line, "a matrix index")?,
                value: parse_token(toks[4], line, "a coefficient")?,
            };
            if entry.row > rows.unwrap() {
                return Err(Error::Parse {
                    line,
                    msg: format!("row {} out of range 0..={}", entry.row, rows.unwrap()),
                });
            }
            let sizes = block_sizes.as_ref().unwrap();
            if entry.block == 0 || entry.block > sizes.len() {
                return Err(Error::Parse {
                    line,
                    msg: format!("block {} out of range 1..={}", entry.block, sizes.len()),
                });
            }
            let side = sizes[entry.block - 1];
            if entry.i == 0 || entry.j > side || entry.i > entry.j {
                return Err(Error::Parse {
                    line,
                    msg: format!(
                        "indices ({}, {}) not within 1 <= i <= j <= {side}",
                        entry.i, entry.j
                    ),
                });
            }
            if !entry.value.is_finite() {
                return Err(Error::Parse {
                    line,
                    msg: "non-finite coefficient".into(),
                });
            }
            entries.push(entry);
        }
    }
    match (rows, blocks, block_sizes, rhs) {
        (Some(rows), Some(blocks), Some(block_sizes), Some(rhs)) => Ok(SdpFile {
            rows,
            blocks,
            block_sizes,
            rhs,
            entries,
        }),
        _ => Err(Error::Parse {
            line: last_line + 1,
            msg: "file ended inside the header".into(),
        }),
    }
}

// ------------------------------------------------------------- solutions ----

/// Renders a solution in the matrix exchange format (`gram N` form).
pub fn format_solution(sol: &VectorSolution) -> String {
    let n = sol.points();
    let mut lines = vec![format!("gram {n}")];
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| fmt_value(sol.dot(i, j))).collect();
        lines.push(row.join(" "));
    }
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

/// Parses `gram N` / `coords N D` matrix text into a solution; errors
/// carry 1-based line numbers.
pub fn parse_solution(text: &str) -> Result<VectorSolution> {
    let mut header: Option<(bool, usize, usize)> = None; // (is_gram, rows, cols)
    let mut matrix: Vec<Vec<f64>> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let data = raw.trim();
        if data.is_empty() || data.starts_with('*') {
            continue;
        }
        let toks: Vec<&str> = data.split_whitespace().collect();
        match header {
            None => {
                let (is_gram, want) = match toks[0] {
                    "gram" => (true, 2),
                    "coords" => (false, 3),
                    other => {
                        return Err(Error::Parse {
                            line,
                            msg: format!("expected \"gram\" or \"coords\", got {other:?}"),
                        })
                    }
                };
                if toks.len() != want {
                    return Err(Error::Parse {
                        line,
                        msg: format!("expected {want} header fields, got {}", toks.len()),
                    });
                }
                let rows: usize = parse_token(toks[1], line, "the point count")?;
                let cols = if is_gram {
                    rows
                } else {
                    parse_token(toks[2], line, "the coordinate dimension")?
                };
                if rows == 0 || cols == 0 {
                    return Err(Error::Parse {
                        line,
                        msg: "matrix dimensions must be positive".into(),
                    });
                }
                header = Some((is_gram, rows, cols));
            }
            Some((_, rows, cols)) => {
                if matrix.len() == rows {
                    return Err(Error::Parse {
                        line,
                        msg: "data after the final matrix row".into(),
                    });
                }
                if toks.len() != cols {
                    return Err(Error::Parse {
                        line,
                        msg: format!("expected {cols} values, got {}", toks.len()),
                    });
                }
                let row = toks
                    .iter()
                    .map(|t| parse_token(t, line, "a matrix value"))
                    .collect::<Result<Vec<f64>>>()?;
                matrix.push(row);
            }
        }
    }
    match header {
        Some((is_gram, rows, _)) if matrix.len() == rows => {
            if is_gram {
                VectorSolution::from_gram(matrix)
            } else {
                VectorSolution::from_coords(matrix)
            }
        }
        _ => Err(Error::Parse {
            line: last_line + 1,
            msg: "file ended before the matrix was complete".into(),
        }),
    }
}

/// Parses a solution and audits it against `tier` on `g`; the
/// feasibility report comes back verbatim from the audit.
pub fn import_solution(
    text: &str,
    g: &Graph,
    tier: Tier,
    tol: f64,
) -> Result<(VectorSolution, FeasibilityReport)> {
    let sol = parse_solution(text)?;
    let report = relaxations::check_tier(&sol, g, tier, tol)?;
    Ok((sol, report))
}

// ----------------------------------------------------------------- tests ----
