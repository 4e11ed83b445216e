//! Exact lower bounds on A_q(n, d, k), the maximum size of a constant
//! dimension code, with replayable certificates.
//!
//! Three bound families are evaluated on top of a registry of known values:
//!
//! - improved linkage, over a split parameter `m`:
//!   `A(m) * |Q_q(n-m, k, d/2)| + A(n-m+k-d/2)`;
//! - parallel linkage, over a split `(n1, n2 = n - n1)` and shift `t`:
//!   `|Q_q(n2, k, d/2)| * A(n1) + A(n2 - t) * (1 + sum_{r=d/2}^{k-d/2} A_r(Q_q(n1+t, k, d/2)))`,
//!   where the trailing factor counts the rank-restricted subcode of an MRD
//!   code (Delsarte closed form); requires `k >= d`;
//! - the rank-restricted variant of the same formula for `d > k`, where the
//!   trailing factor is only a lower bound on the maximum rank-restricted
//!   code size and the certificate says so.
//!
//! [`best_bound`] maximizes over every rule and every legal parameter
//! choice, with a fixed deterministic tie-break, and returns a certificate
//! tree whose leaves are registry values and closed-form counts. Replaying a
//! certificate recomputes its value exactly.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::prime_power_decompose;
use crate::rankmetric::{gaussian_binomial, MrdCodeSpec, RankDistribution};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Known values of A_q(n, d, k), plus built-in rules for degenerate cases.
///
/// Lookup returns the best of the explicit entries (under the
/// `k <-> n-k` duality) and the applicable rules: 1 for the whole space or
/// when `d` exceeds the diameter `2*min(k, n-k)`, the lifted-MRD size when
/// one exists, and the single-subspace floor of 1.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    entries: HashMap<(u64, usize, usize, usize), (BigUint, String)>,
}

static BUILTIN_REGISTRY: &str = include_str!("../data/registry.txt");

impl Registry {
    pub fn empty() -> Self {
        Registry::default()
    }

    /// The registry shipped with the crate.
    pub fn builtin() -> Self {
        Registry::parse(BUILTIN_REGISTRY).expect("embedded registry parses")
    }

    /// Parse the registry file format: lines `q n d k value source-tag`,
    /// `#` comments and blank lines ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut reg = Registry::empty();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let mut next_num = |name: &str| -> Result<u64> {
                tokens
                    .next()
                    .ok_or_else(|| Error::parse(lineno, format!("missing {name}")))?
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("invalid {name}")))
            };
            let q = next_num("q")?;
            let n = next_num("n")? as usize;
            let d = next_num("d")? as usize;
            let k = next_num("k")? as usize;
            let value = tokens
                .next()
                .ok_or_else(|| Error::parse(lineno, "missing value"))?;
            let value = BigUint::from_str(value)
                .map_err(|_| Error::parse(lineno, format!("invalid value {value:?}")))?;
            let source: String = tokens.collect::<Vec<_>>().join(" ");
            reg.insert(q, n, d, k, value, source);
        }
        Ok(reg)
    }

    pub fn insert(
        &mut self,
        q: u64,
        n: usize,
        d: usize,
        k: usize,
        value: BigUint,
        source: impl Into<String>,
    ) {
        self.entries.insert((q, n, d, k), (value, source.into()));
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Best known lower bound for A_q(n, d, k); never absent for legal
    /// parameters (the rules bottom out at 1).
    pub fn lookup(&self, q: u64, n: usize, d: usize, k: usize) -> Result<Certificate> {
        check_common(q, n, d, k)?;
        let mut candidates: Vec<Certificate> = Vec::new();
        let mut push_entry = |key: (u64, usize, usize, usize), note: Option<&str>| {
            if let Some((value, source)) = self.entries.get(&key) {
                let source = match note {
                    Some(note) => format!("{source} {note}"),
                    None => source.clone(),
                };
                candidates.push(Certificate::Registry {
                    q,
                    n,
                    d,
                    k,
                    value: value.clone(),
                    source,
                });
            }
        };
        push_entry((q, n, d, k), None);
        if n - k != k {
            push_entry((q, n, d, n - k), Some("(via orthogonal-complement duality)"));
        }
        let kc = k.min(n - k);
        if kc == 0 {
            candidates.push(Certificate::rule(q, n, d, k, 1u32, "rule:whole-space"));
        }
        if kc > 0 && d > 2 * kc {
            candidates.push(Certificate::rule(
                q,
                n,
                d,
                k,
                1u32,
                "rule:distance-exceeds-diameter",
            ));
        }
        if kc >= d / 2 && kc > 0 {
            candidates.push(Certificate::LiftedMrd {
                q,
                n,
                d,
                k,
                value: lifted_mrd_size(q, n, d, k),
            });
        }
        candidates.push(Certificate::rule(q, n, d, k, 1u32, "rule:single-subspace"));
        Ok(candidates
            .into_iter()
            .max_by(|a, b| {
                a.value()
                    .cmp(b.value())
                    // stable preference on ties: earlier candidate wins
                    .then(std::cmp::Ordering::Greater)
            })
            .expect("floor rule always applies"))
    }
}

/// q^(max(n-k, k) * (min(n-k, k) - d/2 + 1)), the lifted-MRD code size.
fn lifted_mrd_size(q: u64, n: usize, d: usize, k: usize) -> BigUint {
    let (hi, lo) = ((n - k).max(k), (n - k).min(k));
    BigUint::from(q).pow((hi * (lo - d / 2 + 1)) as u32)
}

fn check_common(q: u64, n: usize, d: usize, k: usize) -> Result<()> {
    prime_power_decompose(q)?;
    if k > n {
        return Err(Error::invalid(format!("k={k} exceeds n={n}")));
    }
    if d < 2 || !d.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "subspace distance must be a positive even integer, got {d}"
        )));
    }
    Ok(())
}

/// Which role the `n1` segment plays in the first half of a parallel split:
/// `Cdc` means `n1` hosts the base constant dimension code (and `n - n1` the
/// MRD code); `Mrd` swaps the two.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Cdc,
    Mrd,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::Cdc => write!(f, "cdc"),
            Orientation::Mrd => write!(f, "mrd"),
        }
    }
}

impl FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cdc" => Ok(Orientation::Cdc),
            "mrd" => Ok(Orientation::Mrd),
            other => Err(Error::invalid(format!(
                "orientation must be cdc or mrd, got {other:?}"
            ))),
        }
    }
}

/// A replayable record of how a bound value was computed. Composite nodes
/// carry the registry values and closed-form counts they consumed as
/// children; recomputing the expression from the children reproduces the
/// value exactly (see [`Certificate::replay`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A registry entry or built-in rule; the leaf axiom of a certificate.
    Registry {
        q: u64,
        n: usize,
        d: usize,
        k: usize,
        value: BigUint,
        source: String,
    },
    /// The lifted-MRD fallback size.
    LiftedMrd {
        q: u64,
        n: usize,
        d: usize,
        k: usize,
        value: BigUint,
    },
    /// |Q_q(rows x cols, d)|, the MRD code size.
    MrdSize {
        q: u64,
        rows: usize,
        cols: usize,
        d: usize,
        value: BigUint,
    },
    /// Number of MRD codewords of rank at most `max_rank` (zero word
    /// included), from the Delsarte distribution.
    RestrictedRankCount {
        q: u64,
        rows: usize,
        cols: usize,
        d: usize,
        max_rank: usize,
        value: BigUint,
    },
    /// children: [A(m), MrdSize(k x (n-m)), A(n-m+k-d/2)];
    /// value = c0 * c1 + c2.
    ImprovedLinkage {
        q: u64,
        n: usize,
        d: usize,
        k: usize,
        m: usize,
        value: BigUint,
        children: Vec<Certificate>,
    },
    /// children: [MrdSize, A(cdc segment), A(shrunken segment),
    /// RestrictedRankCount]; value = c0 * c1 + c2 * c3.
    ParallelLinkage {
        q: u64,
        n: usize,
        d: usize,
        k: usize,
        n1: usize,
        n2: usize,
        t: usize,
        orientation: Orientation,
        value: BigUint,
        children: Vec<Certificate>,
    },
    /// Same shape as `ParallelLinkage`; the trailing factor is only a lower
    /// bound on the maximum rank-restricted code size.
    RrmcVariant {
        q: u64,
        n: usize,
        d: usize,
        k: usize,
        n1: usize,
        n2: usize,
        t: usize,
        value: BigUint,
        children: Vec<Certificate>,
    },
}

impl Certificate {
    fn rule(q: u64, n: usize, d: usize, k: usize, value: u32, source: &str) -> Self {
        Certificate::Registry {
            q,
            n,
            d,
            k,
            value: BigUint::from(value),
            source: source.to_string(),
        }
    }

    pub fn value(&self) -> &BigUint {
        match self {
            Certificate::Registry { value, .. }
            | Certificate::LiftedMrd { value, .. }
            | Certificate::MrdSize { value, .. }
            | Certificate::RestrictedRankCount { value, .. }
            | Certificate::ImprovedLinkage { value, .. }
            | Certificate::ParallelLinkage { value, .. }
            | Certificate::RrmcVariant { value, .. } => value,
        }
    }

    pub fn rule_name(&self) -> &'static str {
        match self {
            Certificate::Registry { .. } => "Registry",
            Certificate::LiftedMrd { .. } => "LiftedMRD",
            Certificate::MrdSize { .. } => "MrdSize",
            Certificate::RestrictedRankCount { .. } => "RestrictedRankCount",
            Certificate::ImprovedLinkage { .. } => "ImprovedLinkage",
            Certificate::ParallelLinkage { .. } => "ParallelLinkage",
            Certificate::RrmcVariant { .. } => "RrmcVariant",
        }
    }

    pub fn children(&self) -> &[Certificate] {
        match self {
            Certificate::ImprovedLinkage { children, .. }
            | Certificate::ParallelLinkage { children, .. }
            | Certificate::RrmcVariant { children, .. } => children,
            _ => &[],
        }
    }

    /// Recompute the value from the leaves: registry leaves are taken as
    /// recorded, every closed form and every composite expression is
    /// re-evaluated.
    pub fn replay(&self) -> BigUint {
        match self {
            Certificate::Registry { value, .. } => value.clone(),
            Certificate::LiftedMrd { q, n, d, k, .. } => lifted_mrd_size(*q, *n, *d, *k),
            Certificate::MrdSize {
                q, rows, cols, d, ..
            } => MrdCodeSpec::new(*q, *rows, *cols, *d)
                .expect("certificate parameters are valid")
                .size(),
            Certificate::RestrictedRankCount {
                q,
                rows,
                cols,
                d,
                max_rank,
                ..
            } => RankDistribution::delsarte(
                MrdCodeSpec::new(*q, *rows, *cols, *d).expect("certificate parameters are valid"),
            )
            .restricted_total(*max_rank),
            Certificate::ImprovedLinkage { children, .. } => {
                children[0].replay() * children[1].replay() + children[2].replay()
            }
            Certificate::ParallelLinkage { children, .. }
            | Certificate::RrmcVariant { children, .. } => {
                children[0].replay() * children[1].replay()
                    + children[2].replay() * children[3].replay()
            }
        }
    }

    fn params_text(&self) -> String {
        match self {
            Certificate::Registry { q, n, d, k, .. }
            | Certificate::LiftedMrd { q, n, d, k, .. } => format!("q={q}, n={n}, d={d}, k={k}"),
            Certificate::MrdSize { q, rows, cols, d, .. } => {
                format!("q={q}, rows={rows}, cols={cols}, d={d}")
            }
            Certificate::RestrictedRankCount {
                q,
                rows,
                cols,
                d,
                max_rank,
                ..
            } => format!("q={q}, rows={rows}, cols={cols}, d={d}, max_rank={max_rank}"),
            Certificate::ImprovedLinkage { q, n, d, k, m, .. } => {
                format!("q={q}, n={n}, d={d}, k={k}, m={m}")
            }
            Certificate::ParallelLinkage {
                q,
                n,
                d,
                k,
                n1,
                n2,
                t,
                orientation,
                ..
            } => format!("q={q}, n={n}, d={d}, k={k}, n1={n1}, n2={n2}, t={t}, orientation={orientation}"),
            Certificate::RrmcVariant {
                q, n, d, k, n1, n2, t, ..
            } => format!(
                "q={q}, n={n}, d={d}, k={k}, n1={n1}, n2={n2}, t={t}, lambda=restricted-subcode-lower-bound"
            ),
        }
    }

    fn params_json(&self) -> serde_json::Value {
        use serde_json::json;
        match self {
            Certificate::Registry { q, n, d, k, source, .. } => {
                json!({"q": q, "n": n, "d": d, "k": k, "source": source})
            }
            Certificate::LiftedMrd { q, n, d, k, .. } => json!({"q": q, "n": n, "d": d, "k": k}),
            Certificate::MrdSize { q, rows, cols, d, .. } => {
                json!({"q": q, "rows": rows, "cols": cols, "d": d})
            }
            Certificate::RestrictedRankCount {
                q,
                rows,
                cols,
                d,
                max_rank,
                ..
            } => json!({"q": q, "rows": rows, "cols": cols, "d": d, "max_rank": max_rank}),
            Certificate::ImprovedLinkage { q, n, d, k, m, .. } => {
                json!({"q": q, "n": n, "d": d, "k": k, "m": m})
            }
            Certificate::ParallelLinkage {
                q,
                n,
                d,
                k,
                n1,
                n2,
                t,
                orientation,
                ..
            } => json!({
                "q": q, "n": n, "d": d, "k": k,
                "n1": n1, "n2": n2, "t": t, "orientation": orientation.to_string()
            }),
            Certificate::RrmcVariant {
                q, n, d, k, n1, n2, t, ..
            } => json!({
                "q": q, "n": n, "d": d, "k": k, "n1": n1, "n2": n2, "t": t,
                "lambda": "restricted-subcode-lower-bound"
            }),
        }
    }

    /// Structured rendering with the stable key set
    /// `rule`, `params`, `value`, `children`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rule": self.rule_name(),
            "params": self.params_json(),
            "value": self.value().to_string(),
            "children": self.children().iter().map(Certificate::to_json).collect::<Vec<_>>(),
        })
    }

    fn fmt_tree(&self, f: &mut fmt::Formatter<'_>, indent: usize) -> fmt::Result {
        write!(f, "{:indent$}", "", indent = indent)?;
        write!(f, "{}({}) = {}", self.rule_name(), self.params_text(), self.value())?;
        if let Certificate::Registry { source, .. } = self {
            if !source.is_empty() {
                write!(f, "  [{source}]")?;
            }
        }
        writeln!(f)?;
        for child in self.children() {
            child.fmt_tree(f, indent + 2)?;
        }
        Ok(())
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_tree(f, 0)
    }
}

/// The lifted-MRD code size as a standalone bound; fails when no lifted MRD
/// code exists for the parameters.
pub fn bound_lifted_mrd(q: u64, n: usize, d: usize, k: usize) -> Result<Certificate> {
    check_common(q, n, d, k)?;
    let kc = k.min(n - k);
    if kc == 0 || kc < d / 2 {
        return Err(Error::invalid(format!(
            "no lifted MRD code for n={n} d={d} k={k}"
        )));
    }
    Ok(Certificate::LiftedMrd {
        q,
        n,
        d,
        k,
        value: lifted_mrd_size(q, n, d, k),
    })
}

/// `A(m) * |Q_q(n-m, k, d/2)| + A(n-m+k-d/2)` with registry lookups,
/// for `k <= m < n` and `n - m >= d/2`.
pub fn bound_improved_linkage(
    q: u64,
    n: usize,
    d: usize,
    k: usize,
    m: usize,
    reg: &Registry,
) -> Result<Certificate> {
    check_common(q, n, d, k)?;
    if m < k || m >= n {
        return Err(Error::invalid(format!("m={m} must satisfy k <= m < n")));
    }
    if n - m < d / 2 || k < d / 2 {
        return Err(Error::invalid(format!(
            "no MRD code on the trailing {} columns with rank distance {}",
            n - m,
            d / 2
        )));
    }
    let first = reg.lookup(q, m, d, k)?;
    let mrd_spec = MrdCodeSpec::new(q, k, n - m, d / 2)?;
    let mrd = Certificate::MrdSize {
        q,
        rows: k,
        cols: n - m,
        d: d / 2,
        value: mrd_spec.size(),
    };
    let second = reg.lookup(q, n - m + k - d / 2, d, k)?;
    let value = first.value() * mrd.value() + second.value();
    Ok(Certificate::ImprovedLinkage {
        q,
        n,
        d,
        k,
        m,
        value,
        children: vec![first, mrd, second],
    })
}

/// Shared body of the parallel-linkage and rank-restricted bounds.
/// `cdc_len` is the segment hosting the base code of the first half.
fn parallel_body(
    q: u64,
    n: usize,
    d: usize,
    k: usize,
    cdc_len: usize,
    t: usize,
) -> Result<(usize, MrdCodeSpec, MrdCodeSpec)> {
    if n < 2 * k {
        return Err(Error::invalid(format!(
            "n={n} cannot host two length->=k segments for k={k}"
        )));
    }
    if cdc_len < k || n - cdc_len < k {
        return Err(Error::invalid(format!(
            "split {cdc_len}/{} leaves a segment shorter than k={k}",
            n - cdc_len
        )));
    }
    let short = n - cdc_len;
    if t > short - k {
        return Err(Error::invalid(format!(
            "shift t={t} exceeds {short} - k = {}",
            short - k
        )));
    }
    let mrd = MrdCodeSpec::new(q, k, short, d / 2)?;
    let restricted = MrdCodeSpec::new(q, k, cdc_len + t, d / 2)?;
    Ok((short, mrd, restricted))
}

/// The parallel-linkage bound over the split `(n1, n2 = n - n1)` with shift
/// `t`; `orientation` says which segment hosts the base constant dimension
/// code of the first half. Requires `k >= d`.
#[allow(clippy::too_many_arguments)]
pub fn bound_parallel(
    q: u64,
    n: usize,
    d: usize,
    k: usize,
    n1: usize,
    t: usize,
    orientation: Orientation,
    reg: &Registry,
) -> Result<Certificate> {
    check_common(q, n, d, k)?;
    if k < d {
        return Err(Error::invalid(format!(
            "the parallel-linkage bound needs k >= d, got k={k} d={d}"
        )));
    }
    if n1 > n {
        return Err(Error::invalid(format!("n1={n1} exceeds n={n}")));
    }
    let cdc_len = match orientation {
        Orientation::Cdc => n1,
        Orientation::Mrd => n - n1,
    };
    let (short, mrd_spec, restricted_spec) = parallel_body(q, n, d, k, cdc_len, t)?;
    let children = parallel_children(q, d, k, cdc_len, short, t, mrd_spec, restricted_spec, reg)?;
    let value = children[0].value() * children[1].value()
        + children[2].value() * children[3].value();
    Ok(Certificate::ParallelLinkage {
        q,
        n,
        d,
        k,
        n1,
        n2: n - n1,
        t,
        orientation,
        value,
        children,
    })
}

/// The rank-restricted variant, covering `d > k` (legal for every even
/// `d <= 2k`). `n1` hosts the base code of the first half. The trailing
/// factor is the rank-restricted subcode count, a lower bound on the true
/// maximum rank-restricted code size.
pub fn bound_rrmc(
    q: u64,
    n: usize,
    d: usize,
    k: usize,
    n1: usize,
    t: usize,
    reg: &Registry,
) -> Result<Certificate> {
    check_common(q, n, d, k)?;
    if d > 2 * k {
        return Err(Error::invalid(format!(
            "no rank-metric code with rank distance {} in {k} rows",
            d / 2
        )));
    }
    if n1 > n {
        return Err(Error::invalid(format!("n1={n1} exceeds n={n}")));
    }
    let (short, mrd_spec, restricted_spec) = parallel_body(q, n, d, k, n1, t)?;
    let children = parallel_children(q, d, k, n1, short, t, mrd_spec, restricted_spec, reg)?;
    let value = children[0].value() * children[1].value()
        + children[2].value() * children[3].value();
    Ok(Certificate::RrmcVariant {
        q,
        n,
        d,
        k,
        n1,
        n2: n - n1,
        t,
        value,
        children,
    })
}

#[allow(clippy::too_many_arguments)]
fn parallel_children(
    q: u64,
    d: usize,
    k: usize,
    cdc_len: usize,
    short: usize,
    t: usize,
    mrd_spec: MrdCodeSpec,
    restricted_spec: MrdCodeSpec,
    reg: &Registry,
) -> Result<Vec<Certificate>> {
    let mrd = Certificate::MrdSize {
        q,
        rows: k,
        cols: short,
        d: d / 2,
        value: mrd_spec.size(),
    };
    let first = reg.lookup(q, cdc_len, d, k)?;
    let second = reg.lookup(q, short - t, d, k)?;
    // ranks above k - d/2 never appear below rank d/2 in the distribution,
    // so the same restricted total also covers the empty-sum case d > k
    let max_rank = k - d / 2;
    let restricted = Certificate::RestrictedRankCount {
        q,
        rows: k,
        cols: cdc_len + t,
        d: d / 2,
        max_rank,
        value: RankDistribution::delsarte(restricted_spec).restricted_total(max_rank),
    };
    Ok(vec![mrd, first, second, restricted])
}

/// Candidate identity for deterministic tie-breaking: rule order as listed,
/// then smaller `t`, then smaller `n1`/`m`.
fn candidate_rank(cert: &Certificate) -> (u8, usize, usize) {
    match cert {
        Certificate::Registry { .. } => (0, 0, 0),
        Certificate::LiftedMrd { .. } => (1, 0, 0),
        Certificate::ImprovedLinkage { m, .. } => (2, 0, *m),
        Certificate::ParallelLinkage { n1, t, .. } => (3, *t, *n1),
        Certificate::RrmcVariant { n1, t, .. } => (4, *t, *n1),
        _ => (5, 0, 0),
    }
}

fn pick_better(a: Certificate, b: Certificate) -> Certificate {
    match a.value().cmp(b.value()) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => {
            if candidate_rank(&a) <= candidate_rank(&b) {
                a
            } else {
                b
            }
        }
    }
}

/// Maximum over the registry, the lifted-MRD fallback, improved linkage over
/// all `m`, parallel linkage over all `(n1, t)`, and the rank-restricted
/// variant over all `(n1, t)`. Every split is tried in both orientations
/// because `n1` ranges over the full interval `[k, n-k]`.
pub fn best_bound(q: u64, n: usize, d: usize, k: usize, reg: &Registry) -> Result<Certificate> {
    check_common(q, n, d, k)?;
    #[derive(Clone, Copy)]
    enum Candidate {
        Lookup,
        Improved { m: usize },
        Parallel { n1: usize, t: usize },
        Rrmc { n1: usize, t: usize },
    }
    let mut candidates = vec![Candidate::Lookup];
    if k >= 1 && k <= n {
        for m in k..n {
            if n - m >= d / 2 && k >= d / 2 {
                candidates.push(Candidate::Improved { m });
            }
        }
    }
    if n >= 2 * k && k >= 1 {
        for n1 in k..=n - k {
            for t in 0..=(n - n1 - k) {
                if k >= d {
                    candidates.push(Candidate::Parallel { n1, t });
                }
                if d <= 2 * k {
                    candidates.push(Candidate::Rrmc { n1, t });
                }
            }
        }
    }
    let eval = |c: &Candidate| -> Result<Certificate> {
        match *c {
            Candidate::Lookup => reg.lookup(q, n, d, k),
            Candidate::Improved { m } => bound_improved_linkage(q, n, d, k, m, reg),
            Candidate::Parallel { n1, t } => {
                bound_parallel(q, n, d, k, n1, t, Orientation::Cdc, reg)
            }
            Candidate::Rrmc { n1, t } => bound_rrmc(q, n, d, k, n1, t, reg),
        }
    };
    #[cfg(feature = "parallel")]
    let best = candidates
        .par_iter()
        .filter_map(|c| eval(c).ok())
        .reduce_with(pick_better);
    #[cfg(not(feature = "parallel"))]
    let best = candidates
        .iter()
        .filter_map(|c| eval(c).ok())
        .reduce(pick_better);
    best.ok_or_else(|| Error::invalid("no bound rule applies"))
}

/// Convenience: the plain Gaussian-binomial count of all k-subspaces,
/// exposed for table output sanity checks.
pub fn grassmannian_size(q: u64, n: usize, k: usize) -> BigUint {
    gaussian_binomial(n, k, q)
}
