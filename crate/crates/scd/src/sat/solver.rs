//! Solver backends: the in-process default and a DIMACS subprocess
//! bridge following SAT-competition conventions (exit status 10 with
//! `v` model lines, or exit status 20 for unsatisfiable).

use super::encode::CnfInstance;
use crate::error::{Error, Result};
use std::io::Write;
use std::process::Command;
use varisat::{ExtendFormula, Lit, Solver};

/// Where to run the formula.
#[derive(Debug, Clone, Default)]
pub enum SolverBackend {
    /// In-process CDCL solver; solves incrementally across the
    /// augmentation loop.
    #[default]
    Internal,
    /// External command receiving the path of a DIMACS file as its last
    /// argument. The command is split on whitespace.
    Command(String),
}

/// Outcome of one solver run. The model is indexed by variable id
/// (entry 0 unused).
#[derive(Debug, Clone)]
pub enum SolveOutcome {
    Model(Vec<bool>),
    Unsat,
}

/// One-shot solve of the instance with the given backend.
pub fn solve(inst: &CnfInstance, backend: &SolverBackend) -> Result<SolveOutcome> {
    match backend {
        SolverBackend::Internal => {
            let mut driver = InternalDriver::new();
            driver.solve(inst)
        }
        SolverBackend::Command(cmd) => solve_external(inst, cmd),
    }
}

/// Persistent in-process solver: clauses already fed are retained
/// between calls, so the augmentation loop solves incrementally.
pub(super) struct InternalDriver {
    solver: Solver<'static>,
    fed: usize,
}

impl InternalDriver {
    pub fn new() -> Self {
        InternalDriver {
            solver: Solver::new(),
            fed: 0,
        }
    }

    pub fn solve(&mut self, inst: &CnfInstance) -> Result<SolveOutcome> {
        for clause in &inst.clauses[self.fed..] {
            let lits: Vec<Lit> = clause
                .iter()
                .map(|&l| Lit::from_dimacs(l as isize))
                .collect();
            self.solver.add_clause(&lits);
        }
        self.fed = inst.clauses.len();
        let satisfiable = self
            .solver
            .solve()
            .map_err(|e| Error::SolverProcess(format!("internal solver: {e}")))?;
        if !satisfiable {
            return Ok(SolveOutcome::Unsat);
        }
        let mut model = vec![false; inst.var_count as usize + 1];
        for lit in self.solver.model().unwrap_or_default() {
            let d = lit.to_dimacs();
            let var = d.unsigned_abs();
            if var < model.len() {
                model[var] = d > 0;
            }
        }
        Ok(SolveOutcome::Model(model))
    }
}

fn solve_external(inst: &CnfInstance, cmd: &str) -> Result<SolveOutcome> {
    let mut parts = cmd.split_whitespace();
    let program = parts
        .next()
        .ok_or_else(|| Error::SolverProcess("empty solver command".into()))?;
    let dir = tempfile::tempdir()?;
    let cnf_path = dir.path().join("instance.cnf");
    {
        let mut file = std::fs::File::create(&cnf_path)?;
        inst.write_dimacs(&mut file)?;
        file.flush()?;
    }
    let output = Command::new(program)
        .args(parts)
        .arg(&cnf_path)
        .output()
        .map_err(|e| Error::SolverProcess(format!("failed to spawn {program:?}: {e}")))?;
    match output.status.code() {
        Some(10) => {
            let stdout = String::from_utf8_lossy(&output.stdout);
            let mut model = vec![false; inst.var_count as usize + 1];
            let mut saw_values = false;
            for line in stdout.lines() {
                let Some(rest) = line.strip_prefix("v") else {
                    continue;
                };
                for token in rest.split_whitespace() {
                    let value: i64 = token.parse().map_err(|_| {
                        Error::SolverProcess(format!("bad literal {token:?} in model"))
                    })?;
                    if value == 0 {
                        continue;
                    }
                    saw_values = true;
                    let var = value.unsigned_abs() as usize;
                    if var < model.len() {
                        model[var] = value > 0;
                    }
                }
            }
            if !saw_values && inst.var_count > 0 {
                return Err(Error::SolverProcess(
                    "solver reported SAT without model lines".into(),
                ));
            }
            Ok(SolveOutcome::Model(model))
        }
        Some(20) => Ok(SolveOutcome::Unsat),
        status => Err(Error::SolverProcess(format!(
            "solver exited with {:?}: {}",
            status,
            String::from_utf8_lossy(&output.stderr)
        ))),
    }
}
