//! Association solutions: decoding continuous solver positions into a
//! feasible binary association matrix Ψ and resource-fraction matrix C,
//! evaluating the served-rate objective, verifying constraints, and a
//! brute-force oracle.
//!
//! The optimization problem is
//!
//! ```text
//! max Σ_ij r_ij·c_ij
//! C1: Σ_j c_ij ≤ 1 per BS i          (resource budget)
//! C2: Σ_i ψ_ij ≤ 1 per UE j          (relaxed: unservable UEs stay empty)
//! C3: 0 ≤ c_ij ≤ ψ_ij, ψ_ij ∈ {0,1}
//! C4: ψ_ij = 0 when r_ij < R_j,min
//! ```
//!
//! The encoding is one continuous dimension per UE in [0, N_b]; the floor
//! of a dimension names the candidate BS (the boundary value N_b clamps to
//! N_b − 1). Decoding admits UEs in ascending index order: a UE joins its
//! candidate BS iff the link rate covers its demand and the BS's remaining
//! fraction budget covers `c = R_min/r`, the minimal fraction meeting the
//! demand. Every decoded solution is feasible by construction.

use alloc::vec;
use alloc::vec::Vec;

use crate::channel::{self, ChannelError, LinkBudgetParams};
use crate::math;
use crate::scenario::Topology;

/// `check_constraints` allows accumulated rounding of this order in the
/// C1 fraction sums and C3 bounds.
pub const FRACTION_TOLERANCE: f64 = 1e-9;

/// Largest number of candidate assignments `exhaustive_search` will visit.
pub const EXHAUSTIVE_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum AssociationError {
    /// Position length does not match the number of UEs.
    LengthMismatch { expected: usize, got: usize },
    /// Solution dimensions do not match the topology.
    ShapeMismatch,
    /// `n_bs^n_ue` exceeds [`EXHAUSTIVE_LIMIT`].
    InstanceTooLarge { n_bs: usize, n_ue: usize },
    Channel(ChannelError),
}

impl From<ChannelError> for AssociationError {
    fn from(err: ChannelError) -> Self {
        Self::Channel(err)
    }
}

impl core::fmt::Display for AssociationError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::LengthMismatch { expected, got } => {
                write!(f, "position has {got} dimensions, topology has {expected} users")
            }
            Self::ShapeMismatch => write!(f, "solution shape does not match the topology"),
            Self::InstanceTooLarge { n_bs, n_ue } => write!(
                f,
                "exhaustive search over {n_bs}^{n_ue} assignments exceeds the {EXHAUSTIVE_LIMIT} limit"
            ),
            Self::Channel(err) => write!(f, "{err}"),
        }
    }
}

impl core::error::Error for AssociationError {}

/// A candidate solution in the continuous search space: one value per UE,
/// clamped to [0, N_b].
#[derive(Debug, Clone, PartialEq)]
pub struct PositionVector {
    values: Vec<f64>,
}

impl PositionVector {
    /// Clamps every value into [0, n_bs].
    pub fn new(mut values: Vec<f64>, n_bs: usize) -> Self {
        let upper = n_bs as f64;
        for v in &mut values {
            *v = v.clamp(0.0, upper);
        }
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A position together with its utility.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredPosition {
    pub position: PositionVector,
    pub fitness: f64,
}

/// Cached achievable rates r_ij for every BS–UE pair of one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct RateMatrix {
    n_bs: usize,
    n_ue: usize,
    rates: Vec<f64>,
}

impl RateMatrix {
    pub fn compute(topology: &Topology, params: &LinkBudgetParams) -> Result<Self, ChannelError> {
        params.validate()?;
        let (n_bs, n_ue) = (topology.n_bs(), topology.n_ue());
        let mut rates = Vec::with_capacity(n_bs * n_ue);
        for bs in 0..n_bs {
            for ue in 0..n_ue {
                rates.push(channel::achievable_rate_unchecked(
                    params,
                    topology.distance(bs, ue),
                ));
            }
        }
        Ok(Self { n_bs, n_ue, rates })
    }

    /// Builds a matrix from explicit per-BS rows; handy for hand-crafted
    /// instances in tests.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        let n_bs = rows.len();
        let n_ue = rows.first().map_or(0, Vec::len);
        let mut rates = Vec::with_capacity(n_bs * n_ue);
        for row in rows {
            assert_eq!(row.len(), n_ue, "ragged rate rows");
            rates.extend(row);
        }
        Self { n_bs, n_ue, rates }
    }

    pub fn rate(&self, bs: usize, ue: usize) -> f64 {
        self.rates[bs * self.n_ue + ue]
    }

    pub fn n_bs(&self) -> usize {
        self.n_bs
    }

    pub fn n_ue(&self) -> usize {
        self.n_ue
    }
}

/// One instance of the association problem: rates plus demands. Immutable
/// once built, so a whole population can be evaluated concurrently.
#[derive(Debug, Clone, PartialEq)]
pub struct AssociationProblem {
    rates: RateMatrix,
    demands: Vec<f64>,
}

impl AssociationProblem {
    pub fn new(topology: &Topology, params: &LinkBudgetParams) -> Result<Self, ChannelError> {
        let rates = RateMatrix::compute(topology, params)?;
        let demands = topology.users().iter().map(|ue| ue.min_rate_bps).collect();
        Ok(Self { rates, demands })
    }

    /// Assembles an instance from already-computed parts.
    pub fn from_parts(rates: RateMatrix, demands: Vec<f64>) -> Result<Self, AssociationError> {
        if rates.n_ue() != demands.len() {
            return Err(AssociationError::ShapeMismatch);
        }
        Ok(Self { rates, demands })
    }

    pub fn n_bs(&self) -> usize {
        self.rates.n_bs
    }

    pub fn n_ue(&self) -> usize {
        self.rates.n_ue
    }

    pub fn rates(&self) -> &RateMatrix {
        &self.rates
    }

    pub fn demands(&self) -> &[f64] {
        &self.demands
    }

    /// Candidate BS index for one position value: floor, with the boundary
    /// value N_b clamping to N_b − 1.
    pub fn candidate_bs(&self, value: f64) -> usize {
        let idx = math::floor(value.clamp(0.0, self.n_bs() as f64)) as usize;
        idx.min(self.n_bs() - 1)
    }

    fn assignment_of(&self, position: &PositionVector) -> Result<Vec<usize>, AssociationError> {
        if position.len() != self.n_ue() {
            return Err(AssociationError::LengthMismatch {
                expected: self.n_ue(),
                got: position.len(),
            });
        }
        Ok(position.values().iter().map(|&v| self.candidate_bs(v)).collect())
    }

    /// Runs the admission rule over a candidate assignment, calling
    /// `admit(bs, ue, fraction, rate)` for every admitted UE. UEs are
    /// scanned in ascending index order; each BS hands out the minimal
    /// fraction `demand/rate` while its unit budget lasts.
    fn admission_scan(&self, assignment: &[usize], mut admit: impl FnMut(usize, usize, f64, f64)) {
        let mut remaining = vec![1.0f64; self.n_bs()];
        for (ue, &bs) in assignment.iter().enumerate() {
            let rate = self.rates.rate(bs, ue);
            let demand = self.demands[ue];
            if rate >= demand {
                let fraction = demand / rate;
                if fraction <= remaining[bs] {
                    remaining[bs] -= fraction;
                    admit(bs, ue, fraction, rate);
                }
            }
        }
    }

    /// Utility of a candidate assignment without materialising matrices.
    pub fn utility_of_assignment(&self, assignment: &[usize]) -> f64 {
        let mut utility = 0.0;
        self.admission_scan(assignment, |_, _, fraction, rate| {
            utility += rate * fraction;
        });
        utility
    }

    /// Utility of a position; bit-identical to `decode(position).utility()`.
    pub fn utility(&self, position: &PositionVector) -> Result<f64, AssociationError> {
        Ok(self.utility_of_assignment(&self.assignment_of(position)?))
    }

    /// Full decode of a candidate assignment into (Ψ, C) matrices.
    pub fn decode_assignment(&self, assignment: &[usize]) -> AssociationSolution {
        let (n_bs, n_ue) = (self.n_bs(), self.n_ue());
        let mut psi = vec![false; n_bs * n_ue];
        let mut fractions = vec![0.0f64; n_bs * n_ue];
        let mut utility = 0.0;
        self.admission_scan(assignment, |bs, ue, fraction, rate| {
            psi[bs * n_ue + ue] = true;
            fractions[bs * n_ue + ue] = fraction;
            utility += rate * fraction;
        });
        AssociationSolution {
            n_bs,
            n_ue,
            psi,
            fractions,
            rates: self.rates.rates.clone(),
            utility,
        }
    }

    pub fn decode(&self, position: &PositionVector) -> Result<AssociationSolution, AssociationError> {
        Ok(self.decode_assignment(&self.assignment_of(position)?))
    }
}

/// A decoded association: Ψ, C, the cached rate matrix, and the utility.
#[derive(Debug, Clone, PartialEq)]
pub struct AssociationSolution {
    n_bs: usize,
    n_ue: usize,
    psi: Vec<bool>,
    fractions: Vec<f64>,
    rates: Vec<f64>,
    utility: f64,
}

impl AssociationSolution {
    /// Assembles a solution from raw matrices without verifying the
    /// constraints; pair with [`check_constraints`] to audit it.
    pub fn from_parts(
        n_bs: usize,
        n_ue: usize,
        psi: Vec<bool>,
        fractions: Vec<f64>,
        rates: Vec<f64>,
        utility: f64,
    ) -> Result<Self, AssociationError> {
        let cells = n_bs * n_ue;
        if psi.len() != cells || fractions.len() != cells || rates.len() != cells {
            return Err(AssociationError::ShapeMismatch);
        }
        Ok(Self {
            n_bs,
            n_ue,
            psi,
            fractions,
            rates,
            utility,
        })
    }

    pub fn n_bs(&self) -> usize {
        self.n_bs
    }

    pub fn n_ue(&self) -> usize {
        self.n_ue
    }

    pub fn is_associated(&self, bs: usize, ue: usize) -> bool {
        self.psi[bs * self.n_ue + ue]
    }

    pub fn fraction(&self, bs: usize, ue: usize) -> f64 {
        self.fractions[bs * self.n_ue + ue]
    }

    pub fn rate(&self, bs: usize, ue: usize) -> f64 {
        self.rates[bs * self.n_ue + ue]
    }

    /// Cached objective value Σ r_ij·c_ij, bit/s.
    pub fn utility(&self) -> f64 {
        self.utility
    }

    /// The BS serving a UE, if any.
    pub fn serving_bs(&self, ue: usize) -> Option<usize> {
        (0..self.n_bs).find(|&bs| self.is_associated(bs, ue))
    }

    pub fn served_count(&self) -> usize {
        (0..self.n_ue).filter(|&ue| self.serving_bs(ue).is_some()).count()
    }

    pub fn served_fraction(&self) -> f64 {
        self.served_count() as f64 / self.n_ue as f64
    }
}

/// Recomputes the objective Σ r_ij·c_ij from the matrices.
pub fn evaluate_objective(solution: &AssociationSolution) -> f64 {
    solution
        .rates
        .iter()
        .zip(&solution.fractions)
        .map(|(r, c)| r * c)
        .sum()
}

/// One violated constraint with the indices involved.
#[derive(Debug, Clone, PartialEq)]
pub enum ConstraintViolation {
    /// C1: a BS's fraction column sums beyond its unit budget.
    ResourceBudgetExceeded { bs: usize, total_fraction: f64 },
    /// C2 (relaxed): a UE is associated with more than one BS.
    MultipleAssociations { ue: usize, count: usize },
    /// C3: a fraction outside [0, ψ_ij].
    FractionOutOfBounds { bs: usize, ue: usize, fraction: f64 },
    /// C4: an association whose rate does not cover the UE's demand.
    DemandUnmet {
        bs: usize,
        ue: usize,
        rate_bps: f64,
        min_rate_bps: f64,
    },
}

impl ConstraintViolation {
    pub fn constraint(&self) -> &'static str {
        match self {
            Self::ResourceBudgetExceeded { .. } => "C1",
            Self::MultipleAssociations { .. } => "C2",
            Self::FractionOutOfBounds { .. } => "C3",
            Self::DemandUnmet { .. } => "C4",
        }
    }
}

impl core::fmt::Display for ConstraintViolation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::ResourceBudgetExceeded { bs, total_fraction } => {
                write!(f, "C1: BS {bs} allocates {total_fraction} > 1")
            }
            Self::MultipleAssociations { ue, count } => {
                write!(f, "C2: UE {ue} associated with {count} BSs")
            }
            Self::FractionOutOfBounds { bs, ue, fraction } => {
                write!(f, "C3: fraction {fraction} out of bounds at ({bs}, {ue})")
            }
            Self::DemandUnmet {
                bs,
                ue,
                rate_bps,
                min_rate_bps,
            } => write!(
                f,
                "C4: UE {ue} on BS {bs} has rate {rate_bps} < demand {min_rate_bps}"
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConstraintReport {
    pub violations: Vec<ConstraintViolation>,
}

impl ConstraintReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl core::fmt::Display for ConstraintReport {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.is_empty() {
            return write!(f, "feasible");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Audits a solution against C1–C4, listing every violation. An empty
/// report means the solution is feasible.
pub fn check_constraints(
    solution: &AssociationSolution,
    topology: &Topology,
) -> Result<ConstraintReport, AssociationError> {
    if solution.n_bs != topology.n_bs() || solution.n_ue != topology.n_ue() {
        return Err(AssociationError::ShapeMismatch);
    }
    let mut report = ConstraintReport::default();

    for bs in 0..solution.n_bs {
        let total: f64 = (0..solution.n_ue).map(|ue| solution.fraction(bs, ue)).sum();
        if total > 1.0 + FRACTION_TOLERANCE {
            report.violations.push(ConstraintViolation::ResourceBudgetExceeded {
                bs,
                total_fraction: total,
            });
        }
    }

    for ue in 0..solution.n_ue {
        let count = (0..solution.n_bs).filter(|&bs| solution.is_associated(bs, ue)).count();
        if count > 1 {
            report
                .violations
                .push(ConstraintViolation::MultipleAssociations { ue, count });
        }
    }

    for bs in 0..solution.n_bs {
        for ue in 0..solution.n_ue {
            let fraction = solution.fraction(bs, ue);
            let upper = if solution.is_associated(bs, ue) { 1.0 } else { 0.0 };
            if fraction < -FRACTION_TOLERANCE || fraction > upper + FRACTION_TOLERANCE {
                report
                    .violations
                    .push(ConstraintViolation::FractionOutOfBounds { bs, ue, fraction });
            }
        }
    }

    for ue in 0..solution.n_ue {
        let demand = topology.users()[ue].min_rate_bps;
        for bs in 0..solution.n_bs {
            if solution.is_associated(bs, ue) && solution.rate(bs, ue) < demand {
                report.violations.push(ConstraintViolation::DemandUnmet {
                    bs,
                    ue,
                    rate_bps: solution.rate(bs, ue),
                    min_rate_bps: demand,
                });
            }
        }
    }

    Ok(report)
}

/// Decodes one position against a topology; builds the rate matrix on the
/// fly. Batch callers should construct an [`AssociationProblem`] once.
pub fn decode(
    position: &PositionVector,
    topology: &Topology,
    params: &LinkBudgetParams,
) -> Result<AssociationSolution, AssociationError> {
    AssociationProblem::new(topology, params)?.decode(position)
}

/// Brute-force oracle: enumerates all `n_bs^n_ue` candidate assignments
/// through the same admission rule and returns the best. Ties resolve to
/// the lexicographically smallest assignment.
pub fn exhaustive_search(
    topology: &Topology,
    params: &LinkBudgetParams,
) -> Result<AssociationSolution, AssociationError> {
    let problem = AssociationProblem::new(topology, params)?;
    exhaustive_search_problem(&problem)
}

/// Oracle over an already-built instance.
pub fn exhaustive_search_problem(
    problem: &AssociationProblem,
) -> Result<AssociationSolution, AssociationError> {
    let (n_bs, n_ue) = (problem.n_bs(), problem.n_ue());
    let mut total: u64 = 1;
    for _ in 0..n_ue {
        total = total.saturating_mul(n_bs as u64);
        if total > EXHAUSTIVE_LIMIT {
            return Err(AssociationError::InstanceTooLarge { n_bs, n_ue });
        }
    }

    let mut assignment = vec![0usize; n_ue];
    let mut best_assignment = assignment.clone();
    let mut best_utility = problem.utility_of_assignment(&assignment);
    while increment(&mut assignment, n_bs) {
        let utility = problem.utility_of_assignment(&assignment);
        if utility > best_utility {
            best_utility = utility;
            best_assignment.copy_from_slice(&assignment);
        }
    }
    Ok(problem.decode_assignment(&best_assignment))
}

/// Base-`n_bs` odometer step; false once the space is exhausted.
fn increment(assignment: &mut [usize], n_bs: usize) -> bool {
    for digit in assignment.iter_mut() {
        *digit += 1;
        if *digit < n_bs {
            return true;
        }
        *digit = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_link_problem(rate: f64, demand: f64) -> AssociationProblem {
        AssociationProblem::from_parts(RateMatrix::from_rows(vec![vec![rate]]), vec![demand])
            .unwrap()
    }

    #[test]
    fn floor_decoding_selects_candidates() {
        let problem = AssociationProblem::from_parts(
            RateMatrix::from_rows(vec![vec![10.0, 10.0], vec![10.0, 10.0]]),
            vec![1.0, 1.0],
        )
        .unwrap();
        let position = PositionVector::new(vec![0.4, 1.7], 2);
        let solution = problem.decode(&position).unwrap();
        assert_eq!(solution.serving_bs(0), Some(0));
        assert_eq!(solution.serving_bs(1), Some(1));
    }

    #[test]
    fn boundary_value_clamps_to_last_bs() {
        let problem = AssociationProblem::from_parts(
            RateMatrix::from_rows(vec![vec![10.0], vec![10.0]]),
            vec![1.0],
        )
        .unwrap();
        assert_eq!(problem.candidate_bs(2.0), 1);
        assert_eq!(problem.candidate_bs(1.999), 1);
        assert_eq!(problem.candidate_bs(0.0), 0);
    }

    #[test]
    fn admission_allocates_minimal_fraction() {
        // r = 10 Gbps against a 4 Gbps demand: ψ = 1, c = 0.4, utility 4 Gbps.
        let problem = single_link_problem(10.0e9, 4.0e9);
        let solution = problem.decode(&PositionVector::new(vec![0.3], 1)).unwrap();
        assert!(solution.is_associated(0, 0));
        assert!((solution.fraction(0, 0) - 0.4).abs() < 1e-12);
        assert!((solution.utility() - 4.0e9).abs() < 1e-3);
    }

    #[test]
    fn demand_above_rate_zeroes_association() {
        let problem = single_link_problem(3.0e9, 4.0e9);
        let solution = problem.decode(&PositionVector::new(vec![0.0], 1)).unwrap();
        assert!(!solution.is_associated(0, 0));
        assert_eq!(solution.utility(), 0.0);
        assert_eq!(solution.served_count(), 0);
    }

    #[test]
    fn budget_admits_first_rejects_second() {
        // Both UEs need c = 0.6 of the single BS; only the first fits.
        let problem = AssociationProblem::from_parts(
            RateMatrix::from_rows(vec![vec![5.0e9, 5.0e9]]),
            vec![3.0e9, 3.0e9],
        )
        .unwrap();
        let solution = problem.decode(&PositionVector::new(vec![0.0, 0.0], 1)).unwrap();
        assert!(solution.is_associated(0, 0));
        assert!(!solution.is_associated(0, 1));
        assert!((solution.utility() - 3.0e9).abs() < 1e-3);
    }

    #[test]
    fn objective_sums_admitted_demands() {
        let problem = AssociationProblem::from_parts(
            RateMatrix::from_rows(vec![vec![8.0e9, 9.0e9]]),
            vec![2.0e9, 3.0e9],
        )
        .unwrap();
        let solution = problem.decode(&PositionVector::new(vec![0.0, 0.5], 1)).unwrap();
        assert!((solution.utility() - 5.0e9).abs() < 1e-3);
        let recomputed = evaluate_objective(&solution);
        assert!((recomputed - solution.utility()).abs() <= 1e-9 * solution.utility());
    }

    #[test]
    fn empty_association_has_zero_objective() {
        let problem = single_link_problem(1.0e9, 2.0e9);
        let solution = problem.decode(&PositionVector::new(vec![0.0], 1)).unwrap();
        assert_eq!(evaluate_objective(&solution), 0.0);
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let problem = single_link_problem(1.0e9, 0.5e9);
        let err = problem.decode(&PositionVector::new(vec![0.0, 0.0], 1)).unwrap_err();
        assert!(matches!(err, AssociationError::LengthMismatch { expected: 1, got: 2 }));
    }

    #[test]
    fn constructed_violations_are_reported() {
        use crate::scenario::{generate_topology, TopologyConfig};
        let config = TopologyConfig {
            n_bs: 2,
            n_ue: 2,
            radius_m: 10.0,
            ..TopologyConfig::default()
        };
        let topology = generate_topology(&config, 3).unwrap();

        // c_ij = 0.5 with ψ_ij = 0 violates C3.
        let solution = AssociationSolution::from_parts(
            2,
            2,
            vec![false; 4],
            vec![0.5, 0.0, 0.0, 0.0],
            vec![1.0e9; 4],
            0.0,
        )
        .unwrap();
        let report = check_constraints(&solution, &topology).unwrap();
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].constraint(), "C3");

        // Σ_j c_ij = 1.2 at BS 0 violates C1 (and C3 is satisfied because
        // both cells are associated).
        let solution = AssociationSolution::from_parts(
            2,
            2,
            vec![true, true, false, false],
            vec![0.6, 0.6, 0.0, 0.0],
            vec![100.0e9; 4],
            0.0,
        )
        .unwrap();
        let report = check_constraints(&solution, &topology).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, ConstraintViolation::ResourceBudgetExceeded { bs: 0, .. })));

        // Double association violates relaxed C2.
        let solution = AssociationSolution::from_parts(
            2,
            2,
            vec![true, false, true, false],
            vec![0.1, 0.0, 0.1, 0.0],
            vec![100.0e9; 4],
            0.0,
        )
        .unwrap();
        let report = check_constraints(&solution, &topology).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, ConstraintViolation::MultipleAssociations { ue: 0, count: 2 })));

        // An association below demand violates C4.
        let demand = topology.users()[0].min_rate_bps;
        let solution = AssociationSolution::from_parts(
            2,
            2,
            vec![true, false, false, false],
            vec![1.0, 0.0, 0.0, 0.0],
            vec![demand / 2.0; 4],
            0.0,
        )
        .unwrap();
        let report = check_constraints(&solution, &topology).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, ConstraintViolation::DemandUnmet { bs: 0, ue: 0, .. })));
    }

    #[test]
    fn decoded_solutions_are_feasible() {
        use crate::scenario::{generate_topology, TopologyConfig};
        use rand::{Rng, SeedableRng};
        let config = TopologyConfig {
            n_bs: 3,
            n_ue: 25,
            radius_m: 40.0,
            ..TopologyConfig::default()
        };
        let topology = generate_topology(&config, 21).unwrap();
        let params = LinkBudgetParams::default();
        let problem = AssociationProblem::new(&topology, &params).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..200 {
            let values: Vec<f64> = (0..25).map(|_| rng.random::<f64>() * 3.0).collect();
            let solution = problem.decode(&PositionVector::new(values, 3)).unwrap();
            let report = check_constraints(&solution, &topology).unwrap();
            assert!(report.is_empty(), "{report}");
        }
    }

    #[test]
    fn exhaustive_single_feasible_link() {
        use crate::scenario::{BaseStation, Point, UserEquipment};
        let topology = Topology::new(
            vec![BaseStation {
                id: 0,
                position: Point { x: 0.0, y: 0.0 },
                boresight_rad: 0.0,
            }],
            vec![UserEquipment {
                id: 0,
                position: Point { x: 1.0, y: 0.0 },
                boresight_rad: 0.0,
                min_rate_bps: 1.0e9,
            }],
            2.0,
        )
        .unwrap();
        let best = exhaustive_search(&topology, &LinkBudgetParams::default()).unwrap();
        assert!(best.is_associated(0, 0));
        assert!((best.utility() - 1.0e9).abs() < 1e-3);
    }

    #[test]
    fn exhaustive_forced_choice() {
        // Only BS 0 offers enough rate; the oracle must pick it.
        let problem = AssociationProblem::from_parts(
            RateMatrix::from_rows(vec![vec![10.0e9], vec![0.5e9]]),
            vec![2.0e9],
        )
        .unwrap();
        let best = exhaustive_search_problem(&problem).unwrap();
        assert!(best.is_associated(0, 0));
        assert!(!best.is_associated(1, 0));
    }

    #[test]
    fn exhaustive_guards_instance_size() {
        use crate::scenario::{generate_topology, TopologyConfig};
        let config = TopologyConfig {
            n_bs: 10,
            n_ue: 8,
            radius_m: 10.0,
            ..TopologyConfig::default()
        };
        let topology = generate_topology(&config, 0).unwrap();
        let err = exhaustive_search(&topology, &LinkBudgetParams::default()).unwrap_err();
        assert!(matches!(err, AssociationError::InstanceTooLarge { .. }));
    }

    #[test]
    fn decode_determinism() {
        use crate::scenario::{generate_topology, TopologyConfig};
        let config = TopologyConfig {
            n_bs: 4,
            n_ue: 12,
            ..TopologyConfig::default()
        };
        let topology = generate_topology(&config, 17).unwrap();
        let params = LinkBudgetParams::default();
        let position = PositionVector::new(
            (0..12).map(|i| (i as f64 * 0.37) % 4.0).collect(),
            4,
        );
        let a = decode(&position, &topology, &params).unwrap();
        let b = decode(&position, &topology, &params).unwrap();
        assert_eq!(a, b);
    }
}
