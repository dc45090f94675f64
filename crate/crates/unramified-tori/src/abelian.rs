//! Finitely generated abelian groups presented by integer matrices.
//!
//! Groups arise here in two ways: as cokernels Z^r / A Z^c, and as
//! subquotients top/bottom of a pair of nested sublattices of Z^r. Both
//! come with exact projection data, so any ambient lattice vector can be
//! mapped to its class and membership questions stay decidable.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, IntMatrix, SmithDecomposition};

/// An element in generator coordinates: torsion residues then free integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    pub torsion: Vec<BigInt>,
    pub free: Vec<BigInt>,
}

impl GroupElement {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().all(Zero::is_zero) && self.free.iter().all(Zero::is_zero)
    }
}

/// A saturated-rank sublattice of Z^ambient given by a column basis,
/// with exact membership / coordinate solving.
#[derive(Clone, Debug)]
struct LatticeBasis {
    basis: IntMatrix, // ambient x r, full column rank
    snf: SmithDecomposition,
}

impl LatticeBasis {
    fn new(basis: IntMatrix) -> Self {
        let snf = smith_normal_form(&basis);
        LatticeBasis { basis, snf }
    }

    fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates x with basis * x = v, or None when v is outside the lattice.
    fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.basis.rows() {
            return None;
        }
        let z = self.snf.u().apply(v).ok()?;
        let diag = self.snf.diagonal();
        let r = self.rank();
        let mut y = Vec::with_capacity(r);
        for i in 0..z.len() {
            if i < r {
                let d = &diag[i];
                if d.is_zero() {
                    if !z[i].is_zero() {
                        return None;
                    }
                    y.push(BigInt::zero());
                } else {
                    let (q, rem) = z[i].div_mod_floor(d);
                    if !rem.is_zero() {
                        return None;
                    }
                    y.push(q);
                }
            } else if !z[i].is_zero() {
                return None;
            }
        }
        self.snf.v().apply(&y).ok()
    }
}

/// A finitely generated abelian group with a divisibility-chain presentation
/// and projection data from an ambient lattice.
#[derive(Clone, Debug)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<BigInt>, // each >= 2, d_i | d_{i+1}
    free_rank: usize,
    ambient_rank: usize,
    /// For subquotients, the top lattice; None means the full ambient lattice.
    top: Option<LatticeBasis>,
    /// (torsion + free) x inner_rank coordinate functionals.
    proj: IntMatrix,
    /// inner_rank x (torsion + free) generator lifts, in top coordinates.
    lifts: IntMatrix,
}

impl FiniteAbelianGroup {
    /// Z^rows / A Z^cols presented by invariant factors plus free rank.
    pub fn cokernel(a: &IntMatrix) -> Self {
        let snf = smith_normal_form(a);
        Self::from_inner_cokernel(snf, a.rows(), a.rows(), None)
    }

    /// top/bottom for sublattices of Z^ambient given by spanning vectors.
    ///
    /// Errors with `Containment` when some bottom generator is not an
    /// integral combination of the top generators.
    pub fn subquotient(
        top: &[Vec<BigInt>],
        bottom: &[Vec<BigInt>],
        ambient_rank: usize,
    ) -> Result<Self> {
        for (i, g) in top.iter().chain(bottom.iter()).enumerate() {
            if g.len() != ambient_rank {
                return Err(Error::DimensionMismatch(format!(
                    "generator {} has length {}, ambient rank is {}",
                    i,
                    g.len(),
                    ambient_rank
                )));
            }
        }
        // A lattice basis for the span of the top generators: with
        // U T V = S, the span is generated by d_i * (U^{-1} e_i).
        let t_mat = columns_to_matrix(top, ambient_rank);
        let snf_t = smith_normal_form(&t_mat);
        let r = snf_t.rank();
        let diag = snf_t.diagonal();
        let basis = IntMatrix::from_fn(ambient_rank, r, |row, i| {
            snf_t.u_inv().get(row, i) * &diag[i]
        });
        let lattice = LatticeBasis::new(basis);

        let mut coords = Vec::with_capacity(bottom.len());
        for (index, b) in bottom.iter().enumerate() {
            match lattice.solve(b) {
                Some(x) => coords.push(x),
                None => return Err(Error::Containment { index }),
            }
        }
        let c_mat = columns_to_matrix(&coords, r);
        let snf_c = smith_normal_form(&c_mat);
        Ok(Self::from_inner_cokernel(
            snf_c,
            r,
            ambient_rank,
            Some(lattice),
        ))
    }

    fn from_inner_cokernel(
        snf: SmithDecomposition,
        inner_rank: usize,
        ambient_rank: usize,
        top: Option<LatticeBasis>,
    ) -> Self {
        let diag = snf.diagonal();
        let mut torsion_idx = Vec::new();
        let mut free_idx = Vec::new();
        for i in 0..inner_rank {
            match diag.get(i) {
                Some(d) if d.is_one() => {}
                Some(d) if !d.is_zero() => torsion_idx.push(i),
                _ => free_idx.push(i),
            }
        }
        let invariant_factors: Vec<BigInt> =
            torsion_idx.iter().map(|&i| diag[i].clone()).collect();
        let free_rank = free_idx.len();
        let kept: Vec<usize> = torsion_idx.iter().chain(free_idx.iter()).copied().collect();
        let proj = IntMatrix::from_fn(kept.len(), inner_rank, |g, c| {
            snf.u().get(kept[g], c).clone()
        });
        let lifts = IntMatrix::from_fn(inner_rank, kept.len(), |r, g| {
            snf.u_inv().get(r, kept[g]).clone()
        });
        FiniteAbelianGroup {
            invariant_factors,
            free_rank,
            ambient_rank,
            top,
            proj,
            lifts,
        }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn num_torsion_generators(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    /// Group order; None when the free rank is positive.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().product())
    }

    /// Same abstract group: equal invariant factors and free rank.
    pub fn same_structure(&self, other: &Self) -> bool {
        self.invariant_factors == other.invariant_factors && self.free_rank == other.free_rank
    }

    /// Class of an ambient lattice vector in generator coordinates.
    ///
    /// Errors with `NotInLattice` when the group is a subquotient and the
    /// vector is outside the top lattice.
    pub fn project(&self, v: &[BigInt]) -> Result<GroupElement> {
        if v.len() != self.ambient_rank {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} vs ambient rank {}",
                v.len(),
                self.ambient_rank
            )));
        }
        let inner: Vec<BigInt> = match &self.top {
            None => v.to_vec(),
            Some(lattice) => lattice.solve(v).ok_or(Error::NotInLattice)?,
        };
        let y = self.proj.apply(&inner)?;
        let t = self.invariant_factors.len();
        let torsion = (0..t)
            .map(|j| y[j].mod_floor(&self.invariant_factors[j]))
            .collect();
        let free = y[t..].to_vec();
        Ok(GroupElement { torsion, free })
    }

    /// Ambient lattice vectors lifting each generator, torsion first.
    pub fn generator_lifts(&self) -> Vec<Vec<BigInt>> {
        let n = self.invariant_factors.len() + self.free_rank;
        (0..n)
            .map(|g| {
                let inner = self.lifts.column(g);
                match &self.top {
                    None => inner,
                    Some(lattice) => lattice.basis.apply(&inner).expect("lift dims"),
                }
            })
            .collect()
    }

    /// Human form: "trivial", "Z/2 x Z/4", "Z/2 x Z", "Z^2".
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{}", d))
            .collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        if parts.is_empty() {
            "trivial".to_string()
        } else {
            parts.join(" x ")
        }
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn columns_to_matrix(cols: &[Vec<BigInt>], rows: usize) -> IntMatrix {
    IntMatrix::from_fn(rows, cols.len(), |r, c| cols[c][r].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bigvec(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&e| BigInt::from(e)).collect()
    }

    #[test]
    fn cokernel_of_four() {
        let g = FiniteAbelianGroup::cokernel(&IntMatrix::from_rows(&[vec![4]]).unwrap());
        assert_eq!(g.invariant_factors(), &[BigInt::from(4)]);
        assert_eq!(g.free_rank(), 0);
        assert_eq!(g.order(), Some(BigInt::from(4)));
    }

    #[test]
    fn cokernel_of_minus_four() {
        // The SL2/Q3 point count: F - 1 = -3 - 1 gives four depth zero classes.
        let g = FiniteAbelianGroup::cokernel(&IntMatrix::from_rows(&[vec![-4]]).unwrap());
        assert_eq!(g.describe(), "Z/4");
    }

    #[test]
    fn cokernel_of_six_i2() {
        let a = IntMatrix::from_rows(&[vec![6, 0], vec![0, 6]]).unwrap();
        let g = FiniteAbelianGroup::cokernel(&a);
        assert_eq!(g.describe(), "Z/6 x Z/6");
        assert_eq!(g.order(), Some(BigInt::from(36)));
    }

    #[test]
    fn cokernel_projection_consistency() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 8]]).unwrap();
        let g = FiniteAbelianGroup::cokernel(&a);
        // Generator lifts project to the standard generators.
        for (i, lift) in g.generator_lifts().iter().enumerate() {
            let e = g.project(lift).unwrap();
            for (j, t) in e.torsion.iter().enumerate() {
                assert_eq!(t.is_one(), i == j, "lift {} projects to {:?}", i, e);
            }
        }
        // Columns of A project to zero.
        for col in a.columns() {
            assert!(g.project(&col).unwrap().is_zero());
        }
    }

    #[test]
    fn cokernel_with_free_part() {
        let a = IntMatrix::from_rows(&[vec![2], vec![0]]).unwrap();
        let g = FiniteAbelianGroup::cokernel(&a);
        assert_eq!(g.invariant_factors(), &[BigInt::from(2)]);
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.order(), None);
    }

    #[test]
    fn subquotient_trivial_when_equal() {
        let std2 = vec![bigvec(&[1, 0]), bigvec(&[0, 1])];
        let g = FiniteAbelianGroup::subquotient(&std2, &std2, 2).unwrap();
        assert!(g.is_trivial());
    }

    #[test]
    fn subquotient_index_two() {
        let g =
            FiniteAbelianGroup::subquotient(&[bigvec(&[1])], &[bigvec(&[-2])], 1).unwrap();
        assert_eq!(g.describe(), "Z/2");
        let e = g.project(&bigvec(&[1])).unwrap();
        assert_eq!(e.torsion, bigvec(&[1]));
        assert!(g.project(&bigvec(&[2])).unwrap().is_zero());
    }

    #[test]
    fn subquotient_containment_violation() {
        let err = FiniteAbelianGroup::subquotient(&[bigvec(&[2])], &[bigvec(&[3])], 1)
            .unwrap_err();
        assert_eq!(err, Error::Containment { index: 0 });
    }

    #[test]
    fn subquotient_empty_top() {
        let g = FiniteAbelianGroup::subquotient(&[], &[bigvec(&[0, 0])], 2).unwrap();
        assert!(g.is_trivial());
        assert!(FiniteAbelianGroup::subquotient(&[], &[bigvec(&[1, 0])], 2).is_err());
    }

    #[test]
    fn subquotient_project_detects_outside_vectors() {
        let g = FiniteAbelianGroup::subquotient(
            &[bigvec(&[2, 0]), bigvec(&[0, 1])],
            &[bigvec(&[4, 0])],
            2,
        )
        .unwrap();
        assert_eq!(g.describe(), "Z/2 x Z");
        assert_eq!(g.project(&bigvec(&[1, 0])), Err(Error::NotInLattice));
        assert_eq!(
            g.project(&bigvec(&[2, 0])).unwrap().torsion,
            bigvec(&[1])
        );
    }
}
