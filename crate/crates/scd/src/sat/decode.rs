//! Model decoding: from a satisfying assignment back to necklace SCDs.

use super::encode::CnfInstance;
use super::registry::{ScdRole, VarRef};
use super::solver::SolveOutcome;
use crate::constructions::NecklaceScd;
use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::unroll::default_representatives;
use crate::verify::check_unimodal;
use std::collections::HashMap;

fn truth(model: &[bool], r: VarRef) -> bool {
    match r {
        VarRef::Const(b) => b,
        VarRef::Lit(l) => model[l as usize],
    }
}

/// Decode a model into one necklace SCD per decomposition index. The
/// model is re-checked against every clause first; any structural
/// inconsistency afterwards is reported as an encoding bug.
pub fn decode_model(inst: &CnfInstance, outcome: &SolveOutcome) -> Result<Vec<NecklaceScd>> {
    let model = match outcome {
        SolveOutcome::Model(m) => m,
        SolveOutcome::Unsat => {
            return Err(Error::Precondition(
                "cannot decode an unsatisfiable outcome".into(),
            ))
        }
    };
    if model.len() != inst.var_count as usize + 1 {
        return Err(Error::ModelInconsistent(format!(
            "model covers {} variables, formula has {}",
            model.len().saturating_sub(1),
            inst.var_count
        )));
    }
    for (ci, clause) in inst.clauses.iter().enumerate() {
        let satisfied = clause
            .iter()
            .any(|&l| model[l.unsigned_abs() as usize] == (l > 0));
        if !satisfied {
            return Err(Error::ModelInconsistent(format!("clause {ci} falsified")));
        }
    }

    let n = inst.n;
    let chain_count = inst.chain_count();
    let mut decoded: Vec<Option<NecklaceScd>> = vec![None; inst.s];

    // pinned and free first, followers from their leaders afterwards
    #[allow(clippy::needless_range_loop)]
    for i in 0..inst.s {
        match &inst.roles[i] {
            ScdRole::Pinned(p) => decoded[i] = Some(inst.fixed[*p].clone()),
            ScdRole::Free => {
                let mut chains = Vec::with_capacity(chain_count);
                for j in 0..chain_count {
                    let (lo, hi) = (inst.spans[j], n - inst.spans[j]);
                    let mut necklaces = Vec::new();
                    for level in lo..=hi {
                        let on_chain: Vec<usize> = inst.graph.poset.levels[level as usize]
                            .iter()
                            .copied()
                            .filter(|&u| truth(model, inst.y_ref(i, j, u).expect("feasible node")))
                            .collect();
                        if on_chain.len() != 1 {
                            return Err(Error::ModelInconsistent(format!(
                                "chain {j} of decomposition {i} holds {} nodes on level {level}",
                                on_chain.len()
                            )));
                        }
                        necklaces.push(inst.graph.poset.nodes[on_chain[0]]);
                    }
                    // the selected edges must be exactly the consecutive
                    // node pairs
                    let mut used_edges = Vec::new();
                    for (ei, _) in inst.graph.retained_edges() {
                        if inst.x_ref(i, j, ei).is_some_and(|r| truth(model, r)) {
                            used_edges.push(ei);
                        }
                    }
                    let mut expected = Vec::new();
                    for w in necklaces.windows(2) {
                        let lo_idx = inst.graph.poset.node_of(&w[0].canonical);
                        let hi_idx = inst.graph.poset.node_of(&w[1].canonical);
                        let e = inst.graph.edge_between(lo_idx, hi_idx).ok_or_else(|| {
                            Error::ModelInconsistent("chain step is not a retained edge".into())
                        })?;
                        expected.push(e);
                    }
                    used_edges.sort_unstable();
                    expected.sort_unstable();
                    if used_edges != expected {
                        return Err(Error::ModelInconsistent(format!(
                            "edge variables of chain {j} in decomposition {i} do not trace the chain"
                        )));
                    }
                    chains.push(default_representatives(n, &necklaces)?.reps);
                }
                decoded[i] = Some(NecklaceScd { n, chains });
            }
            ScdRole::Follower { .. } => {}
        }
    }
    for i in 0..inst.s {
        if let ScdRole::Follower { leader } = inst.roles[i] {
            let leader_scd = decoded[leader]
                .as_ref()
                .ok_or_else(|| Error::Internal("follower decoded before leader".into()))?;
            // complement chainwise, keeping slot order
            let chains: Vec<Vec<Subset>> = leader_scd
                .chains
                .iter()
                .map(|c| {
                    let mut rev: Vec<Subset> = c.iter().map(|x| x.complement()).collect();
                    rev.reverse();
                    rev
                })
                .collect();
            decoded[i] = Some(NecklaceScd { n, chains });
        }
    }

    let scds: Vec<NecklaceScd> = decoded.into_iter().map(|d| d.unwrap()).collect();

    // the decoded family must be a family of unimodal SCDs within the
    // edge capacities
    let mut usage: HashMap<(u32, u32), u32> = HashMap::new();
    for scd in &scds {
        let unimodal = check_unimodal(scd);
        if !unimodal.pass {
            return Err(Error::ModelInconsistent(format!("decoded SCD: {unimodal}")));
        }
        scd.validate_partition()
            .map_err(|e| Error::ModelInconsistent(format!("decoded SCD: {e}")))?;
        for chain in &scd.chains {
            for w in chain.windows(2) {
                let key = (
                    w[0].canonical_rotation().word(),
                    w[1].canonical_rotation().word(),
                );
                *usage.entry(key).or_insert(0) += 1;
            }
        }
    }
    for ((lo, hi), used) in usage {
        let lo_idx = inst.graph.poset.node_of(&Subset::from_word(n, lo));
        let hi_idx = inst.graph.poset.node_of(&Subset::from_word(n, hi));
        let e = inst
            .graph
            .edge_between(lo_idx, hi_idx)
            .ok_or_else(|| Error::ModelInconsistent("decoded edge not in graph".into()))?;
        if used > inst.graph.edge(e).capacity {
            return Err(Error::ModelInconsistent(format!(
                "decoded family uses edge {}-{} {used} times",
                Subset::from_word(n, lo),
                Subset::from_word(n, hi)
            )));
        }
    }
    Ok(scds)
}
