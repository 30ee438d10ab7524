//! Dense two-phase simplex over exact rationals.
//!
//! Pivoting follows Bland's rule (lowest-index entering column, lowest-index
//! leaving basic variable on ratio ties), so the method terminates without
//! cycling.

use num_traits::{One, Signed, Zero};

use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// `coeffs · x (relation) rhs`.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint { coeffs, relation, rhs }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarDomain {
    Free,
    NonNegative,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { point: Vec<Rational>, value: Rational },
}

#[derive(Debug, Clone)]
pub struct LinearProgram {
    domains: Vec<VarDomain>,
    constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColumnKind {
    Structural,
    Slack,
    Artificial,
}

struct Tableau {
    /// Constraint rows, each `width + 1` long; the last entry is the rhs.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    kinds: Vec<ColumnKind>,
}

struct Unbounded;

impl Tableau {
    fn width(&self) -> usize {
        self.kinds.len()
    }

    fn pivot(&mut self, objective: &mut [Rational], row: usize, col: usize) {
        let width = self.width();
        let inv = Rational::one() / &self.rows[row][col];
        for v in self.rows[row].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = self.rows[row].clone();
        let eliminate = |target: &mut [Rational]| {
            let factor = target[col].clone();
            if factor.is_zero() {
                return;
            }
            for j in 0..=width {
                if !pivot_row[j].is_zero() {
                    target[j] -= &factor * &pivot_row[j];
                }
            }
        };
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i != row {
                eliminate(r);
            }
        }
        eliminate(objective);
        self.basis[row] = col;
    }

    /// Reduced-cost row for minimizing `costs · x` under the current basis.
    /// The final entry holds minus the current objective value.
    fn reduced_costs(&self, costs: &[Rational]) -> Vec<Rational> {
        let width = self.width();
        let mut obj: Vec<Rational> = costs.to_vec();
        obj.push(Rational::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=width {
                if !self.rows[i][j].is_zero() {
                    obj[j] -= cb * &self.rows[i][j];
                }
            }
        }
        obj
    }

    /// Minimizes the objective whose reduced costs are in `objective`,
    /// entering only columns accepted by `allowed`.
    fn optimize(
        &mut self,
        objective: &mut [Rational],
        allowed: impl Fn(ColumnKind) -> bool,
    ) -> Result<(), Unbounded> {
        loop {
            let entering = (0..self.width())
                .find(|&j| allowed(self.kinds[j]) && objective[j].is_negative());
            let Some(col) = entering else {
                return Ok(());
            };
            let rhs = self.width();
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((row, _)) => self.pivot(objective, row, col),
                None => return Err(Unbounded),
            }
        }
    }
}

impl LinearProgram {
    pub fn new(domains: Vec<VarDomain>) -> Self {
        LinearProgram {
            domains,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.domains.len()
    }

    pub fn add(&mut self, constraint: Constraint) {
        assert_eq!(
            constraint.coeffs.len(),
            self.num_vars(),
            "constraint arity does not match the number of variables"
        );
        self.constraints.push(constraint);
    }

    /// Standard-form column indices `(positive, negative part)` of each variable.
    fn column_map(&self) -> Vec<(usize, Option<usize>)> {
        let mut next = 0;
        self.domains
            .iter()
            .map(|d| {
                let pos = next;
                next += 1;
                let neg = match d {
                    VarDomain::Free => {
                        next += 1;
                        Some(next - 1)
                    }
                    VarDomain::NonNegative => None,
                };
                (pos, neg)
            })
            .collect()
    }

    /// Runs phase one; on success the tableau holds a feasible basis free of
    /// artificial variables.
    fn phase_one(&self) -> Option<(Tableau, Vec<(usize, Option<usize>)>)> {
        let map = self.column_map();
        let structural = map.last().map_or(0, |&(p, n)| n.unwrap_or(p) + 1);

        // Normalize every row to a non-negative rhs.
        let normalized: Vec<(Vec<Rational>, Relation, Rational)> = self
            .constraints
            .iter()
            .map(|c| {
                let mut coeffs = vec![Rational::zero(); structural];
                for (v, a) in c.coeffs.iter().enumerate() {
                    let (pos, neg) = map[v];
                    coeffs[pos] = a.clone();
                    if let Some(neg) = neg {
                        coeffs[neg] = -a;
                    }
                }
                // A zero rhs allows either orientation; `<=` needs no artificial.
                if c.rhs.is_negative() || (c.rhs.is_zero() && c.relation == Relation::Ge) {
                    let flipped = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (coeffs.into_iter().map(|a| -a).collect(), flipped, -&c.rhs)
                } else {
                    (coeffs, c.relation, c.rhs.clone())
                }
            })
            .collect();

        let mut kinds = vec![ColumnKind::Structural; structural];
        let mut extra: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); normalized.len()];
        let mut basis = vec![0; normalized.len()];
        for (i, (_, rel, _)) in normalized.iter().enumerate() {
            match rel {
                Relation::Le => {
                    kinds.push(ColumnKind::Slack);
                    extra[i].push((kinds.len() - 1, Rational::one()));
                    basis[i] = kinds.len() - 1;
                }
                Relation::Ge => {
                    kinds.push(ColumnKind::Slack);
                    extra[i].push((kinds.len() - 1, -Rational::one()));
                    kinds.push(ColumnKind::Artificial);
                    extra[i].push((kinds.len() - 1, Rational::one()));
                    basis[i] = kinds.len() - 1;
                }
                Relation::Eq => {
                    kinds.push(ColumnKind::Artificial);
                    extra[i].push((kinds.len() - 1, Rational::one()));
                    basis[i] = kinds.len() - 1;
                }
            }
        }
        let width = kinds.len();
        let rows = normalized
            .into_iter()
            .zip(extra)
            .map(|((coeffs, _, rhs), extra)| {
                let mut row = coeffs;
                row.resize(width + 1, Rational::zero());
                for (j, v) in extra {
                    row[j] = v;
                }
                row[width] = rhs;
                row
            })
            .collect();
        let mut tableau = Tableau { rows, basis, kinds };

        let costs: Vec<Rational> = tableau
            .kinds
            .iter()
            .map(|k| match k {
                ColumnKind::Artificial => Rational::one(),
                _ => Rational::zero(),
            })
            .collect();
        let mut objective = tableau.reduced_costs(&costs);
        // The artificial sum is bounded below by zero, so phase one never
        // reports unboundedness.
        if tableau.optimize(&mut objective, |_| true).is_err() {
            unreachable!("phase one objective is bounded below");
        }
        if !objective[width].is_zero() {
            return None;
        }

        // Drive zero-valued artificials out of the basis; rows where that is
        // impossible are linearly dependent on the others.
        let mut i = 0;
        while i < tableau.rows.len() {
            if tableau.kinds[tableau.basis[i]] != ColumnKind::Artificial {
                i += 1;
                continue;
            }
            let replacement = (0..width).find(|&j| {
                tableau.kinds[j] != ColumnKind::Artificial && !tableau.rows[i][j].is_zero()
            });
            match replacement {
                Some(col) => {
                    tableau.pivot(&mut objective, i, col);
                    i += 1;
                }
                None => {
                    tableau.rows.remove(i);
                    tableau.basis.remove(i);
                }
            }
        }
        Some((tableau, map))
    }

    fn extract(tableau: &Tableau, map: &[(usize, Option<usize>)]) -> Vec<Rational> {
        let width = tableau.width();
        let mut values = vec![Rational::zero(); width];
        for (i, &b) in tableau.basis.iter().enumerate() {
            values[b] = tableau.rows[i][width].clone();
        }
        map.iter()
            .map(|&(pos, neg)| match neg {
                Some(neg) => &values[pos] - &values[neg],
                None => values[pos].clone(),
            })
            .collect()
    }

    /// A point satisfying every constraint, or `None` when the system is infeasible.
    pub fn feasible_point(&self) -> Option<Vec<Rational>> {
        self.phase_one()
            .map(|(tableau, map)| Self::extract(&tableau, &map))
    }

    /// Maximizes `objective · x` subject to the constraints.
    pub fn maximize(&self, objective: &[Rational]) -> LpOutcome {
        assert_eq!(objective.len(), self.num_vars());
        let Some((mut tableau, map)) = self.phase_one() else {
            return LpOutcome::Infeasible;
        };
        let mut costs = vec![Rational::zero(); tableau.width()];
        for (v, c) in objective.iter().enumerate() {
            let (pos, neg) = map[v];
            costs[pos] = -c;
            if let Some(neg) = neg {
                costs[neg] = c.clone();
            }
        }
        let mut reduced = tableau.reduced_costs(&costs);
        if tableau
            .optimize(&mut reduced, |k| k != ColumnKind::Artificial)
            .is_err()
        {
            return LpOutcome::Unbounded;
        }
        let point = Self::extract(&tableau, &map);
        let value = point
            .iter()
            .zip(objective)
            .fold(Rational::zero(), |acc, (x, c)| acc + x * c);
        LpOutcome::Optimal { point, value }
    }
}
