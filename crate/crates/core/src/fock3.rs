//! Truncated multi-mode Fock spaces, boson ladder matrices, and the bosonic
//! realizations of su(2), su(1,1) and the compact/noncompact quadratic
//! algebras.
//!
//! Over-cutoff images are dropped. Results are only trusted on the interior
//! mask: states from which any quadratic monomial in the ladder operators stays
//! inside the cutoff, i.e. `n_i + 2 <= cutoff_i` for every mode.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{ColumnSparse, Matrix};
use crate::reps::{AlgebraKind, AlgebraLabel, Sector};

/// Occupation-number basis `0 <= n_i <= cutoff_i`, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockSpace {
    cutoffs: Vec<usize>,
    basis: Vec<Vec<usize>>,
}

pub type FockSpace3 = FockSpace;

impl FockSpace {
    pub fn new(cutoffs: &[usize]) -> Result<Self> {
        if cutoffs.is_empty() || cutoffs.iter().any(|&c| c < 1) {
            return Err(Error::InvalidParameter(format!("every mode cutoff must be at least 1, got {cutoffs:?}")));
        }
        let mut basis = vec![Vec::new()];
        for &c in cutoffs {
            basis = basis
                .into_iter()
                .flat_map(|prefix| {
                    (0..=c).map(move |n| {
                        let mut v = prefix.clone();
                        v.push(n);
                        v
                    })
                })
                .collect();
        }
        Ok(FockSpace { cutoffs: cutoffs.to_vec(), basis })
    }

    pub fn three_mode(cutoffs: [usize; 3]) -> Result<Self> {
        Self::new(&cutoffs)
    }

    pub fn two_mode(cutoffs: [usize; 2]) -> Result<Self> {
        Self::new(&cutoffs)
    }

    pub fn modes(&self) -> usize {
        self.cutoffs.len()
    }

    pub fn cutoffs(&self) -> &[usize] {
        &self.cutoffs
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<usize>] {
        &self.basis
    }

    pub fn state(&self, index: usize) -> &[usize] {
        &self.basis[index]
    }

    /// Mixed-radix position of an occupation vector, `None` outside the space.
    pub fn index_of(&self, occ: &[usize]) -> Option<usize> {
        if occ.len() != self.cutoffs.len() {
            return None;
        }
        let mut idx = 0;
        for (&n, &c) in occ.iter().zip(&self.cutoffs) {
            if n > c {
                return None;
            }
            idx = idx * (c + 1) + n;
        }
        Some(idx)
    }

    pub fn interior_mask(&self) -> Vec<bool> {
        self.basis.iter().map(|occ| occ.iter().zip(&self.cutoffs).all(|(&n, &c)| n + 2 <= c)).collect()
    }

    fn shift_sparse(&self, mode: usize, raise: bool) -> ColumnSparse {
        let entries = self.basis.iter().enumerate().filter_map(|(j, occ)| {
            let n = occ[mode];
            let mut target = occ.clone();
            let amp = if raise {
                target[mode] = n + 1;
                ((n + 1) as f64).sqrt()
            } else {
                if n == 0 {
                    return None;
                }
                target[mode] = n - 1;
                (n as f64).sqrt()
            };
            self.index_of(&target).map(|i| (i, j, amp))
        });
        ColumnSparse::from_triplets(self.dim(), entries)
    }

    fn number_diag(&self, weights: &[f64], constant: f64) -> Vec<f64> {
        self.basis
            .iter()
            .map(|occ| constant + occ.iter().zip(weights).map(|(&n, w)| n as f64 * w).sum::<f64>())
            .collect()
    }
}

/// Creation and annihilation matrices for one mode.
#[derive(Clone, Debug)]
pub struct Ladder {
    pub a: Matrix,
    pub adag: Matrix,
}

pub fn ladder_matrices(space: &FockSpace) -> Vec<Ladder> {
    (0..space.modes())
        .map(|m| Ladder { a: space.shift_sparse(m, false).to_dense(), adag: space.shift_sparse(m, true).to_dense() })
        .collect()
}

/// Realized generators on a Fock space.
///
/// For the quadratic algebras `k` and `l` are the commuting elements `K` and
/// `L`. For the two-mode algebras `k` holds the Casimir (`J^2` or `K^2`) and
/// `l` is `None`.
#[derive(Clone, Debug)]
pub struct RealizedOperators {
    pub kind: AlgebraKind,
    pub space: FockSpace,
    pub q0: Matrix,
    pub qp: Matrix,
    pub qm: Matrix,
    pub k: Matrix,
    pub l: Option<Matrix>,
    pub interior_mask: Vec<bool>,
    sparse: SparseOps,
}

#[derive(Clone, Debug)]
struct SparseOps {
    q0: ColumnSparse,
    qp: ColumnSparse,
    qm: ColumnSparse,
    k: ColumnSparse,
    l: Option<ColumnSparse>,
}

impl RealizedOperators {
    fn from_sparse(kind: AlgebraKind, space: &FockSpace, sparse: SparseOps) -> Self {
        RealizedOperators {
            kind,
            space: space.clone(),
            q0: sparse.q0.to_dense(),
            qp: sparse.qp.to_dense(),
            qm: sparse.qm.to_dense(),
            k: sparse.k.to_dense(),
            l: sparse.l.as_ref().map(ColumnSparse::to_dense),
            interior_mask: space.interior_mask(),
            sparse,
        }
    }

    /// Submatrices of `(Q0, Q+, Q-)` on the listed basis states, in order.
    pub fn restrict(&self, states: &[Vec<usize>]) -> Result<(Matrix, Matrix, Matrix)> {
        let idx: Vec<usize> = states
            .iter()
            .map(|s| {
                self.space
                    .index_of(s)
                    .ok_or_else(|| Error::InvalidParameter(format!("state {s:?} is outside the Fock space")))
            })
            .collect::<Result<_>>()?;
        let sub = |m: &Matrix| Matrix::from_fn(idx.len(), idx.len(), |i, j| m[(idx[i], idx[j])]);
        Ok((sub(&self.q0), sub(&self.qp), sub(&self.qm)))
    }
}

fn require_modes(space: &FockSpace, modes: usize) -> Result<()> {
    if space.modes() != modes {
        return Err(Error::InvalidParameter(format!("expected a {modes}-mode space, got {} modes", space.modes())));
    }
    Ok(())
}

/// `K = (1 - (n1 - n2)^2) / 4`
fn su11_casimir_diag(space: &FockSpace) -> Vec<f64> {
    space
        .basis()
        .iter()
        .map(|occ| {
            let d = occ[0] as f64 - occ[1] as f64;
            (1.0 - d * d) / 4.0
        })
        .collect()
}

/// Compact realization:
/// `Q0 = (n1 + n2 - 2 n3 + 1)/4`, `Q+ = a1+ a2+ a3`, `Q- = a1 a2 a3+`,
/// `L = (n1 + n2 + 2 n3 + 1)/4`.
pub fn realize_compact(space: &FockSpace) -> Result<RealizedOperators> {
    require_modes(space, 3)?;
    let (a1, a2, a3) = (space.shift_sparse(0, false), space.shift_sparse(1, false), space.shift_sparse(2, false));
    let (c1, c2, c3) = (space.shift_sparse(0, true), space.shift_sparse(1, true), space.shift_sparse(2, true));
    let sparse = SparseOps {
        q0: ColumnSparse::diagonal(&space.number_diag(&[0.25, 0.25, -0.5], 0.25)),
        qp: c1.mul(&c2).mul(&a3),
        qm: a1.mul(&a2).mul(&c3),
        k: ColumnSparse::diagonal(&su11_casimir_diag(space)),
        l: Some(ColumnSparse::diagonal(&space.number_diag(&[0.25, 0.25, 0.5], 0.25))),
    };
    Ok(RealizedOperators::from_sparse(AlgebraKind::Compact, space, sparse))
}

/// Noncompact realization: roles of `Q0` and `L` swap relative to the
/// compact one, `Q+ = a1+ a2+ a3+`, `Q- = a1 a2 a3`.
pub fn realize_noncompact(space: &FockSpace) -> Result<RealizedOperators> {
    require_modes(space, 3)?;
    let (a1, a2, a3) = (space.shift_sparse(0, false), space.shift_sparse(1, false), space.shift_sparse(2, false));
    let (c1, c2, c3) = (space.shift_sparse(0, true), space.shift_sparse(1, true), space.shift_sparse(2, true));
    let sparse = SparseOps {
        q0: ColumnSparse::diagonal(&space.number_diag(&[0.25, 0.25, 0.5], 0.25)),
        qp: c1.mul(&c2).mul(&c3),
        qm: a1.mul(&a2).mul(&a3),
        k: ColumnSparse::diagonal(&su11_casimir_diag(space)),
        l: Some(ColumnSparse::diagonal(&space.number_diag(&[0.25, 0.25, -0.5], 0.25))),
    };
    Ok(RealizedOperators::from_sparse(AlgebraKind::Noncompact, space, sparse))
}

/// Jordan-Schwinger su(2) or two-mode su(1,1).
pub fn realize_two_mode(kind: AlgebraKind, space: &FockSpace) -> Result<RealizedOperators> {
    require_modes(space, 2)?;
    let (a1, a2) = (space.shift_sparse(0, false), space.shift_sparse(1, false));
    let (c1, c2) = (space.shift_sparse(0, true), space.shift_sparse(1, true));
    let sparse = match kind {
        AlgebraKind::Su2 => {
            let casimir: Vec<f64> = space
                .basis()
                .iter()
                .map(|occ| {
                    let t = (occ[0] + occ[1]) as f64;
                    t * (t + 2.0) / 4.0
                })
                .collect();
            SparseOps {
                q0: ColumnSparse::diagonal(&space.number_diag(&[0.5, -0.5], 0.0)),
                qp: c1.mul(&a2),
                qm: a1.mul(&c2),
                k: ColumnSparse::diagonal(&casimir),
                l: None,
            }
        }
        AlgebraKind::Su11 => SparseOps {
            q0: ColumnSparse::diagonal(&space.number_diag(&[0.5, 0.5], 0.5)),
            qp: c1.mul(&c2),
            qm: a1.mul(&a2),
            k: ColumnSparse::diagonal(&su11_casimir_diag(space)),
            l: None,
        },
        other => return Err(Error::InvalidParameter(format!("{other} is not a two-mode algebra"))),
    };
    Ok(RealizedOperators::from_sparse(kind, space, sparse))
}

/// Max-norm residuals on interior columns.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub kind: AlgebraKind,
    /// `[Q0, Q+] - Q+`
    pub q0_qp: f64,
    /// `[Q0, Q-] + Q-`
    pub q0_qm: f64,
    /// `[Q+, Q-] - f(Q0; K, L)`
    pub qp_qm: f64,
    /// `[K, L]`
    pub k_l: f64,
    /// `max [K, Q0|Q+|Q-]`
    pub k_q: f64,
    /// `max [L, Q0|Q+|Q-]`
    pub l_q: f64,
    /// `Q- - (Q+)^T`
    pub adjoint: f64,
    pub interior_states: usize,
    pub boundary_states: usize,
}

impl ResidualReport {
    pub fn max(&self) -> f64 {
        [self.q0_qp, self.q0_qm, self.qp_qm, self.k_l, self.k_q, self.l_q, self.adjoint].into_iter().fold(0.0, f64::max)
    }

    pub fn has_interior(&self) -> bool {
        self.interior_states > 0
    }
}

/// Structure polynomial with operator-valued `K`, `L`, evaluated on the
/// (diagonal) realized `Q0`.
fn structure_of(ops: &RealizedOperators) -> ColumnSparse {
    let s = &ops.sparse;
    let n = s.q0.dim();
    let id = ColumnSparse::identity(n);
    let q0sq = s.q0.mul(&s.q0);
    match ops.kind {
        AlgebraKind::Su2 => s.q0.scale(2.0),
        AlgebraKind::Su11 => s.q0.scale(-2.0),
        AlgebraKind::Compact => {
            // 3 Q0^2 + (2L - 1) Q0 + K - L(L + 1)
            let l = s.l.as_ref().expect("quadratic realizations carry L");
            q0sq.scale(3.0).add(&l.scale(2.0).sub(&id).mul(&s.q0)).add(&s.k).sub(&l.mul(&l.add(&id)))
        }
        AlgebraKind::Noncompact => {
            // -3 Q0^2 - (2L + 1) Q0 - (K - L(L - 1))
            let l = s.l.as_ref().expect("quadratic realizations carry L");
            q0sq.scale(-3.0).sub(&l.scale(2.0).add(&id).mul(&s.q0)).sub(&s.k.sub(&l.mul(&l.sub(&id))))
        }
    }
}

pub fn verify_realization(ops: &RealizedOperators) -> ResidualReport {
    let s = &ops.sparse;
    let mask = &ops.interior_mask;
    let interior = mask.iter().filter(|b| **b).count();
    let r = |m: ColumnSparse| m.max_abs_cols(mask);
    let gens = [&s.q0, &s.qp, &s.qm];
    let k_q = gens.iter().map(|g| r(s.k.commutator(g))).fold(0.0, f64::max);
    let (k_l, l_q) = match &s.l {
        Some(l) => (r(s.k.commutator(l)), gens.iter().map(|g| r(l.commutator(g))).fold(0.0, f64::max)),
        None => (0.0, 0.0),
    };
    ResidualReport {
        kind: ops.kind,
        q0_qp: r(s.q0.commutator(&s.qp).sub(&s.qp)),
        q0_qm: r(s.q0.commutator(&s.qm).add(&s.qm)),
        qp_qm: r(s.qp.commutator(&s.qm).sub(&structure_of(ops))),
        k_l,
        k_q,
        l_q,
        adjoint: r(s.qm.sub(&s.qp.transpose())),
        interior_states: interior,
        boundary_states: mask.len() - interior,
    }
}

/// Largest Jacobi residual `[A,[B,C]] + [B,[C,A]] + [C,[A,B]]` over all
/// triples of the realized generators (including `K`, `L`), interior columns.
pub fn jacobi_residual(ops: &RealizedOperators) -> f64 {
    let s = &ops.sparse;
    let mut gens = vec![&s.q0, &s.qp, &s.qm, &s.k];
    if let Some(l) = &s.l {
        gens.push(l);
    }
    let mut worst = 0.0_f64;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            for k in j + 1..gens.len() {
                let (a, b, c) = (gens[i], gens[j], gens[k]);
                let jac = a
                    .commutator(&b.commutator(c))
                    .add(&b.commutator(&c.commutator(a)))
                    .add(&c.commutator(&a.commutator(b)));
                worst = worst.max(jac.max_abs_cols(&ops.interior_mask));
            }
        }
    }
    worst
}

/// Fock states `|n, n+2k-1, 2l-k-n>` carrying the compact `(k, l)`
/// representation; `swap` exchanges modes 1 and 2 (equivalent for `k > 1/2`).
pub fn compact_eigenbasis(label: &AlgebraLabel, swap: bool) -> Result<Vec<Vec<usize>>> {
    if label.sector() != Sector::Compact {
        return Err(Error::InvalidLabel(format!("{label} is not compact")));
    }
    let m = label.span();
    let s = label.two_k_minus_one();
    Ok((0..=m).map(|n| if swap { vec![n + s, n, m - n] } else { vec![n, n + s, m - n] }).collect())
}

/// First `count` Fock states `|n, n+2k-1, n+k-2l>` of the noncompact `(k, l)`
/// representation.
pub fn noncompact_eigenbasis(label: &AlgebraLabel, count: usize, swap: bool) -> Result<Vec<Vec<usize>>> {
    if label.sector() != Sector::Noncompact {
        return Err(Error::InvalidLabel(format!("{label} is not noncompact")));
    }
    let m = label.span();
    let s = label.two_k_minus_one();
    Ok((0..count).map(|n| if swap { vec![n + s, n, n + m] } else { vec![n, n + s, n + m] }).collect())
}

/// Smallest cutoffs holding the given states.
pub fn cutoffs_for(states: &[Vec<usize>]) -> Vec<usize> {
    let modes = states.first().map(Vec::len).unwrap_or(0);
    (0..modes).map(|m| states.iter().map(|s| s[m]).max().unwrap_or(0).max(1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;

    fn space(c: [usize; 3]) -> FockSpace {
        FockSpace::three_mode(c).unwrap()
    }

    #[test]
    fn basis_is_lexicographic_bijection() {
        let s = space([2, 1, 3]);
        assert_eq!(s.dim(), 3 * 2 * 4);
        assert_eq!(s.state(0), &[0, 0, 0]);
        assert_eq!(s.state(1), &[0, 0, 1]);
        for (i, occ) in s.basis().iter().enumerate() {
            assert_eq!(s.index_of(occ), Some(i));
        }
        assert!(s.basis().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(s.index_of(&[3, 0, 0]), None);
        assert!(FockSpace::three_mode([0, 1, 1]).is_err());
    }

    #[test]
    fn ladder_basics() {
        let s = space([3, 3, 3]);
        let lad = ladder_matrices(&s);
        for j in 0..s.dim() {
            let occ = s.state(j);
            if occ[0] == 0 {
                assert!(lad[0].a.column(j).iter().all(|v| *v == 0.0));
            }
            for m in 0..3 {
                let num = &lad[m].adag * &lad[m].a;
                assert!((num[(j, j)] - occ[m] as f64).abs() < 1e-14);
            }
        }
        let mask = s.interior_mask();
        for l in &lad {
            let c = linalg::commutator(&l.a, &l.adag) - Matrix::identity(s.dim(), s.dim());
            assert!(linalg::max_abs_cols(&c, &mask) < 1e-14);
        }
    }

    #[test]
    fn compact_examples() {
        let s = space([3, 3, 3]);
        let ops = realize_compact(&s).unwrap();
        let l = ops.l.as_ref().unwrap();
        let i101 = s.index_of(&[1, 0, 1]).unwrap();
        assert!((l[(i101, i101)] - 1.0).abs() < 1e-15);
        let from = s.index_of(&[0, 1, 1]).unwrap();
        let to = s.index_of(&[1, 2, 0]).unwrap();
        assert!((ops.qp[(to, from)] - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(ops.q0[(0, 0)], 0.25);
    }

    #[test]
    fn noncompact_examples() {
        let s = space([3, 3, 3]);
        let ops = realize_noncompact(&s).unwrap();
        let to = s.index_of(&[1, 1, 1]).unwrap();
        assert_eq!(ops.qp[(to, 0)], 1.0);
        for (j, occ) in s.basis().iter().enumerate() {
            let expect = (occ[0] + occ[1] + 2 * occ[2] + 1) as f64 / 4.0;
            assert!((ops.q0[(j, j)] - expect).abs() < 1e-15);
            if occ[0] == occ[1] {
                assert_eq!(ops.k[(j, j)], 0.25);
            }
        }
    }

    #[test]
    fn two_mode_examples() {
        let s = FockSpace::two_mode([3, 3]).unwrap();
        let su2 = realize_two_mode(AlgebraKind::Su2, &s).unwrap();
        let (i01, i10) = (s.index_of(&[0, 1]).unwrap(), s.index_of(&[1, 0]).unwrap());
        assert_eq!(su2.qp[(i10, i01)], 1.0);
        let su11 = realize_two_mode(AlgebraKind::Su11, &s).unwrap();
        let i11 = s.index_of(&[1, 1]).unwrap();
        assert_eq!(su11.qp[(i11, 0)], 1.0);
        for (j, occ) in s.basis().iter().enumerate() {
            let d = occ[0] as f64 - occ[1] as f64;
            assert_eq!(su11.k[(j, j)], (1.0 - d * d) / 4.0);
        }
        assert!(verify_realization(&su2).max() < 1e-12);
        assert!(verify_realization(&su11).max() < 1e-12);
        assert!(realize_two_mode(AlgebraKind::Compact, &s).is_err());
        assert!(realize_compact(&s).is_err());
    }

    #[test]
    fn residuals_vanish_on_interior() {
        let s = space([8, 8, 8]);
        for ops in [realize_compact(&s).unwrap(), realize_noncompact(&s).unwrap()] {
            let rep = verify_realization(&ops);
            assert!(rep.max() <= 1e-12, "{rep:?}");
            assert_eq!(rep.interior_states, 7 * 7 * 7);
        }
    }

    #[test]
    fn boundary_rows_do_fail() {
        // Without the mask, the truncated commutator is wrong on the edge.
        let s = space([4, 4, 4]);
        let ops = realize_noncompact(&s).unwrap();
        let all = vec![true; s.dim()];
        let c = ops.sparse.qp.commutator(&ops.sparse.qm).sub(&structure_of(&ops));
        assert!(c.max_abs_cols(&all) > 1.0);
    }

    #[test]
    fn empty_interior_is_flagged() {
        let s = space([1, 1, 1]);
        let rep = verify_realization(&realize_compact(&s).unwrap());
        assert_eq!(rep.interior_states, 0);
        assert!(!rep.has_interior());
        assert_eq!(rep.boundary_states, 8);
    }

    #[test]
    fn jacobi_holds() {
        let s = space([5, 5, 5]);
        assert!(jacobi_residual(&realize_compact(&s).unwrap()) <= 1e-12);
        assert!(jacobi_residual(&realize_noncompact(&s).unwrap()) <= 1e-12);
    }
}
