//! Centrality and descent, point by point.

use alloc::vec::Vec;

use super::algebra::coinvariant_algebra;
use super::linalg::Matrix;
use super::module::{LocalData, MellinModule};
use super::support::SupportPoint;
use crate::error::MellinError;
use crate::rootdata::TorusCharacter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CentralityMode {
    /// Stabilizer `W_χ'` (reflection part).
    Central,
    /// Full stabilizer `W'_χ'`.
    StronglyCentral,
}

impl CentralityMode {
    pub fn name(&self) -> &'static str {
        match self {
            CentralityMode::Central => "central",
            CentralityMode::StronglyCentral => "strongly-central",
        }
    }

    pub fn stabilizer<'a>(&self, point: &'a SupportPoint) -> &'a [usize] {
        match self {
            CentralityMode::Central => &point.reflection,
            CentralityMode::StronglyCentral => &point.full,
        }
    }
}

/// A Weyl element acting nontrivially on `H_degree` at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub point: TorusCharacter,
    pub degree: usize,
    pub element: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCentrality {
    pub point: TorusCharacter,
    pub stabilizer_order: usize,
    /// Dimensions of `H_0, …, H_n`.
    pub homology_dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralityReport {
    pub mode: CentralityMode,
    pub points: Vec<PointCentrality>,
    pub violations: Vec<Violation>,
}

impl CentralityReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// At every support point the stabilizer must act trivially on `H_0` and
/// `H_1` of the Koszul fiber. The module is read in the sign-twisted
/// convention, so no sign appears here.
pub fn check_centrality(m: &MellinModule, mode: CentralityMode) -> Result<CentralityReport, MellinError> {
    let rd = m.root_datum();
    let mut points = Vec::new();
    let mut violations = Vec::new();
    for (chi, _) in m.support()? {
        let point = SupportPoint::new(rd, &chi)?;
        let group = mode.stabilizer(&point);
        let fibers = m.koszul_fibers(&chi, group)?;
        for (degree, element) in fibers.nontrivial_actions(&[0, 1]) {
            violations.push(Violation {
                point: chi.clone(),
                degree,
                element,
            });
        }
        points.push(PointCentrality {
            point: chi,
            stabilizer_order: group.len(),
            homology_dims: fibers.dims(),
        });
    }
    Ok(CentralityReport {
        mode,
        points,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointDescent {
    pub point: TorusCharacter,
    /// `|W_χ'|`.
    pub stabilizer_order: usize,
    pub local_dim: usize,
    pub invariant_dim: usize,
    /// Dimension of the span of `N^α v` for invariant `v`.
    pub generated_dim: usize,
    /// Positive-degree stabilizer invariants, evaluated at the logarithms,
    /// kill the local summand.
    pub invariants_annihilate: bool,
    /// Dimension of the algebra generated by the logarithms.
    pub operator_algebra_dim: usize,
    /// Dimension of the coinvariant algebra of the stabilizer.
    pub coinvariant_dim: usize,
}

impl PointDescent {
    /// Invariants generate, and freely: `dim = |Γ|·dim M^Γ`.
    pub fn passes(&self) -> bool {
        self.generated_dim == self.local_dim && self.local_dim == self.stabilizer_order * self.invariant_dim
    }

    /// The annihilator is exactly the ideal of translated invariants.
    pub fn annihilator_matches(&self) -> bool {
        self.invariants_annihilate && self.operator_algebra_dim == self.coinvariant_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentReport {
    pub points: Vec<PointDescent>,
}

impl DescentReport {
    pub fn passes(&self) -> bool {
        self.points.iter().all(PointDescent::passes)
    }
}

/// Descent of each local summand along `ť → ť // W_{a,λ}`.
pub fn check_descent(m: &MellinModule) -> Result<DescentReport, MellinError> {
    let rd = m.root_datum();
    let c = m.conductor();
    let mut points = Vec::new();
    for (chi, _) in m.support()? {
        let point = SupportPoint::new(rd, &chi)?;
        let local = m.local_data(&chi)?;
        let k = local.dim();
        let actions: Vec<Matrix> = point
            .reflection
            .iter()
            .map(|&w| m.local_weyl_action(&local, w))
            .collect();
        let invariants = common_fixed_space(&actions, k, c);
        let generated = closure(&local.nilpotents, &invariants);
        let coinvariants = coinvariant_algebra(rd.weyl(), &point.reflection)?;
        let invariants_annihilate = coinvariants
            .generators()
            .iter()
            .all(|p| p.evaluate(&local.nilpotents).is_zero());
        points.push(PointDescent {
            point: chi,
            stabilizer_order: point.reflection.len(),
            local_dim: k,
            invariant_dim: invariants.cols(),
            generated_dim: generated.cols(),
            invariants_annihilate,
            operator_algebra_dim: operator_algebra_dim(&local),
            coinvariant_dim: coinvariants.dim(),
        });
    }
    Ok(DescentReport { points })
}

/// Vectors fixed by every matrix in `ops`, as columns.
pub fn common_fixed_space(ops: &[Matrix], k: usize, conductor: u32) -> Matrix {
    if ops.is_empty() {
        return Matrix::identity(k, conductor);
    }
    let id = Matrix::identity(k, conductor);
    let blocks: Vec<Matrix> = ops.iter().map(|op| op.sub(&id)).collect();
    let refs: Vec<&Matrix> = blocks.iter().collect();
    Matrix::vstack(&refs, k, conductor).kernel()
}

/// Smallest subspace containing the columns of `start` and stable under
/// every operator, as a column basis.
pub fn closure(ops: &[Matrix], start: &Matrix) -> Matrix {
    let mut span = start.column_basis();
    loop {
        let mut parts = alloc::vec![span.clone()];
        parts.extend(ops.iter().map(|op| op.mul(&span)));
        let refs: Vec<&Matrix> = parts.iter().collect();
        let next = Matrix::hstack(&refs, start.rows(), start.conductor()).column_basis();
        if next.cols() == span.cols() {
            return span;
        }
        span = next;
    }
}

/// Dimension of the unital algebra generated by the logarithms.
fn operator_algebra_dim(local: &LocalData) -> usize {
    let k = local.dim();
    if k == 0 {
        return 0;
    }
    let c = local.basis.conductor();
    // the algebra is the orbit closure of the identity under left
    // multiplication, viewed on k² coordinates
    let flatten = |m: &Matrix| Matrix::from_fn(k * k, 1, c, |i, _| m.get(i / k, i % k).clone());
    let lifts: Vec<Matrix> = local
        .nilpotents
        .iter()
        .map(|n| n.kron(&Matrix::identity(k, c)))
        .collect();
    closure(&lifts, &flatten(&Matrix::identity(k, c))).cols()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{Preset, RootDatum};

    fn sl2(order: u32, x: &[i64], s: &[i64], k: usize) -> MellinModule {
        MellinModule::new(
            RootDatum::new(Preset::Sl2),
            order,
            alloc::vec![Matrix::from_ints(k, k, order, x)],
            alloc::vec![Matrix::from_ints(k, k, order, s)],
            false,
        )
        .unwrap()
    }

    #[test]
    fn trivial_line_fails_central_for_sl2() {
        let m = sl2(4, &[1], &[1], 1);
        let r = check_centrality(&m, CentralityMode::Central).unwrap();
        assert!(!r.passes());
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].degree, 1);
        assert!(!check_descent(&m).unwrap().passes());
    }

    #[test]
    fn quadratic_line_is_central_not_strongly() {
        let m = sl2(4, &[-1], &[1], 1);
        assert!(check_centrality(&m, CentralityMode::Central).unwrap().passes());
        let strong = check_centrality(&m, CentralityMode::StronglyCentral).unwrap();
        assert!(!strong.passes());
        assert!(check_descent(&m).unwrap().passes());
    }

    #[test]
    fn jordan_block_twists_agree() {
        // natural action on Q[y]/(y²) with X = exp(−y)
        let good = sl2(4, &[1, 0, -1, 1], &[1, 0, 0, -1], 2);
        assert!(check_centrality(&good, CentralityMode::Central).unwrap().passes());
        let d = check_descent(&good).unwrap();
        assert!(d.passes() && d.points[0].annihilator_matches());
        let bad = good.twist();
        assert!(!check_centrality(&bad, CentralityMode::Central).unwrap().passes());
        assert!(!check_descent(&bad).unwrap().passes());
    }

    #[test]
    fn regular_skyscrapers_descend() {
        let rd = RootDatum::new(Preset::Gl2);
        // points (1, 3) and (3, 1) of order 4, swapped by s
        let i = crate::cyclotomic::Cyclotomic::root(4, 1);
        let mi = crate::cyclotomic::Cyclotomic::root(4, 3);
        let d = |a: &crate::cyclotomic::Cyclotomic, b: &crate::cyclotomic::Cyclotomic| {
            Matrix::block_diagonal(&[Matrix::scalar(1, a), Matrix::scalar(1, b)], 4)
        };
        let swap = Matrix::from_ints(2, 2, 4, &[0, 1, 1, 0]);
        let m = MellinModule::new(rd, 4, alloc::vec![d(&i, &mi), d(&mi, &i)], alloc::vec![swap], false).unwrap();
        assert!(check_descent(&m).unwrap().passes());
        assert!(check_centrality(&m, CentralityMode::StronglyCentral).unwrap().passes());
    }
}
