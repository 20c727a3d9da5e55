//! Spectrum of the (1,1,2) anisotropic oscillator `H = n1 + n2 + 2 n3`, its
//! level decomposition into compact irreducibles and three independent
//! degeneracy counts.

use serde::Serialize;

use crate::error::Result;
use crate::fock3::{self, FockSpace};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelPart {
    #[serde(serialize_with = "rational::serialize")]
    pub k: Rational,
    pub dim: u64,
    /// 1 for `k = 1/2`, 2 otherwise (`n1 - n2` of either sign).
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegeneracyReport {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(serialize_with = "rational::serialize")]
    pub l: Rational,
    pub parts: Vec<LevelPart>,
    pub degeneracy_reptheory: u64,
    pub degeneracy_formula: u64,
    pub degeneracy_bruteforce: u64,
    pub partitions_reptheory: u64,
    pub partitions_formula: u64,
    pub partitions_bruteforce: u64,
}

impl DegeneracyReport {
    pub fn consistent(&self) -> bool {
        self.degeneracy_reptheory == self.degeneracy_formula
            && self.degeneracy_formula == self.degeneracy_bruteforce
            && self.partitions_reptheory == self.partitions_formula
            && self.partitions_formula == self.partitions_bruteforce
    }

    /// `k:dim:mult` joined by `;`
    pub fn parts_string(&self) -> String {
        self.parts
            .iter()
            .map(|p| format!("{}:{}:{}", rational::display(&p.k), p.dim, p.multiplicity))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Level `N` carries `l = (N+1)/4`; every `k >= 1/2` with `2l - k` a
/// non-negative integer contributes one irreducible of dimension `2l-k+1`.
pub fn decompose_level(n: u64) -> Vec<LevelPart> {
    // work with 2k; 2l - k = (N + 1 - 2k)/2
    let top = n + 1;
    (1..=top)
        .filter(|tk| (top - tk).is_multiple_of(2))
        .map(|tk| LevelPart {
            k: rational::frac(tk as i64, 2),
            dim: (top - tk) / 2 + 1,
            multiplicity: if tk == 1 { 1 } else { 2 },
        })
        .collect()
}

pub fn degeneracy_formula(n: u64) -> u64 {
    let m = n / 4;
    match n % 4 {
        0 => (2 * m + 1) * (2 * m + 1),
        1 => (2 * m + 1) * (2 * m + 2),
        2 => 4 * (m + 1) * (m + 1),
        _ => 2 * (m + 1) * (2 * m + 3),
    }
}

pub fn partition_formula(n: u64) -> u64 {
    let m = n / 4;
    match n % 4 {
        0 | 1 => (m + 1) * (2 * m + 1),
        _ => (m + 1) * (2 * m + 3),
    }
}

/// Lattice points of `n1 + n2 + 2 n3 = N`; unordered identifies `n1 <-> n2`.
pub fn brute_force_count(n: u64, ordered: bool) -> u64 {
    let mut count = 0;
    for n3 in 0..=n / 2 {
        let rest = n - 2 * n3;
        for n1 in 0..=rest {
            let n2 = rest - n1;
            if ordered || n1 <= n2 {
                count += 1;
            }
        }
    }
    count
}

pub fn degeneracy_report(n: u64) -> DegeneracyReport {
    let parts = decompose_level(n);
    DegeneracyReport {
        n,
        l: rational::frac(n as i64 + 1, 4),
        degeneracy_reptheory: parts.iter().map(|p| p.dim * p.multiplicity).sum(),
        partitions_reptheory: parts.iter().map(|p| p.dim).sum(),
        parts,
        degeneracy_formula: degeneracy_formula(n),
        degeneracy_bruteforce: brute_force_count(n, true),
        partitions_formula: partition_formula(n),
        partitions_bruteforce: brute_force_count(n, false),
    }
}

pub fn spectrum_table(from: u64, to: u64) -> Vec<DegeneracyReport> {
    (from..=to).map(degeneracy_report).collect()
}

pub fn spectrum_csv(rows: &[DegeneracyReport]) -> String {
    let mut out = String::from("N,degeneracy,partitions,parts\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.n,
            r.degeneracy_bruteforce,
            r.partitions_bruteforce,
            r.parts_string()
        ));
    }
    out
}

/// Largest deviation of `H = 4L - 1` from `n1 + n2 + 2 n3` on a Fock space
/// with the given cutoffs, off-diagonal entries included.
pub fn hamiltonian_deviation(cutoffs: [usize; 3]) -> Result<f64> {
    let space = FockSpace::three_mode(cutoffs)?;
    let ops = fock3::realize_compact(&space)?;
    let l = ops.l.as_ref().expect("compact realization carries L");
    let mut worst = 0.0_f64;
    for (j, occ) in space.basis().iter().enumerate() {
        for i in 0..space.dim() {
            let h = 4.0 * l[(i, j)] - if i == j { 1.0 } else { 0.0 };
            let want = if i == j { (occ[0] + occ[1] + 2 * occ[2]) as f64 } else { 0.0 };
            worst = worst.max((h - want).abs());
        }
    }
    Ok(worst)
}
