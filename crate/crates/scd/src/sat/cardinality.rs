//! Sequential-counter at-most-k constraint over a literal list.
//!
//! Repeated literals are deliberately supported: each occurrence steps
//! the counter, so a literal listed twice counts twice when true (this
//! happens on self-complementary edges of coupled decompositions).

/// Emit clauses forcing at most `k` of `literals` true, allocating
/// auxiliary variables from `next_var`. Returns the new variable count.
pub fn at_most_k(
    literals: &[i32],
    k: usize,
    mut next_var: i32,
    clauses: &mut Vec<Vec<i32>>,
) -> i32 {
    let m = literals.len();
    if m <= k {
        return next_var;
    }
    if k == 0 {
        for &l in literals {
            clauses.push(vec![-l]);
        }
        return next_var;
    }
    // registers s[i][p]: among the first i+1 literals, at least p+1 true
    let mut regs: Vec<Vec<i32>> = Vec::with_capacity(m - 1);
    for _ in 0..m - 1 {
        let mut row = Vec::with_capacity(k);
        for _ in 0..k {
            next_var += 1;
            row.push(next_var);
        }
        regs.push(row);
    }
    clauses.push(vec![-literals[0], regs[0][0]]);
    for reg in &regs[0][1..] {
        clauses.push(vec![-reg]);
    }
    for i in 1..m - 1 {
        clauses.push(vec![-literals[i], regs[i][0]]);
        clauses.push(vec![-regs[i - 1][0], regs[i][0]]);
        for p in 1..k {
            clauses.push(vec![-literals[i], -regs[i - 1][p - 1], regs[i][p]]);
            clauses.push(vec![-regs[i - 1][p], regs[i][p]]);
        }
        clauses.push(vec![-literals[i], -regs[i - 1][k - 1]]);
    }
    clauses.push(vec![-literals[m - 1], -regs[m - 2][k - 1]]);
    next_var
}

#[cfg(test)]
mod tests {
    use super::*;
    use varisat::{ExtendFormula, Lit, Solver};

    /// Exhaustively check that the at-most-k formula admits exactly the
    /// assignments of the base literals with at most k occurrences true.
    fn exhaustive(m: usize, k: usize) {
        for assignment in 0u32..1 << m {
            let mut clauses: Vec<Vec<i32>> = Vec::new();
            let literals: Vec<i32> = (1..=m as i32).collect();
            let vars = at_most_k(&literals, k, m as i32, &mut clauses);
            let mut solver = Solver::new();
            for c in &clauses {
                let lits: Vec<Lit> = c.iter().map(|&l| Lit::from_dimacs(l as isize)).collect();
                solver.add_clause(&lits);
            }
            for i in 0..m {
                let lit = Lit::from_dimacs(if assignment >> i & 1 == 1 {
                    (i + 1) as isize
                } else {
                    -((i + 1) as isize)
                });
                solver.add_clause(&[lit]);
            }
            let _ = vars;
            let satisfiable = solver.solve().unwrap();
            let count = assignment.count_ones() as usize;
            assert_eq!(
                satisfiable,
                count <= k,
                "m={m} k={k} assignment={assignment:b}"
            );
        }
    }

    #[test]
    fn exhaustive_small_bounds() {
        for m in 1..=6 {
            for k in 0..=3.min(m) {
                exhaustive(m, k);
            }
        }
    }

    #[test]
    fn repeated_literal_counts_twice() {
        // the same literal listed twice exceeds an at-most-1 bound
        let mut clauses = Vec::new();
        at_most_k(&[1, 1], 1, 1, &mut clauses);
        let mut solver = Solver::new();
        for c in &clauses {
            let lits: Vec<Lit> = c.iter().map(|&l| Lit::from_dimacs(l as isize)).collect();
            solver.add_clause(&lits);
        }
        solver.add_clause(&[Lit::from_dimacs(1)]);
        assert!(!solver.solve().unwrap());
    }
}
