use scd::sat::{add_diamond_clauses, decode_model, encode_phi, solve, SearchConfig, SearchMode, SolveOutcome, SolverBackend};
use scd::{try_unroll_family, UnrollMode};
use std::time::Instant;

fn main() {
    let cfg = SearchConfig::recommended(11, 4, SearchMode::AlmostOrthogonalGood).unwrap();
    let t = Instant::now();
    let mut inst = encode_phi(&cfg).unwrap();
    println!("encode: {:?}", t.elapsed());
    let t = Instant::now();
    add_diamond_clauses(&mut inst).unwrap();
    println!("diamonds: {:?} ({} clauses total)", t.elapsed(), inst.clauses.len());
    let t = Instant::now();
    let outcome = solve(&inst, &SolverBackend::Internal).unwrap();
    println!("first solve: {:?}", t.elapsed());
    let SolveOutcome::Model(m) = outcome else { println!("unsat?!"); return };
    let t = Instant::now();
    let scds = decode_model(&inst, &SolveOutcome::Model(m)).unwrap();
    println!("decode: {:?}", t.elapsed());
    let t = Instant::now();
    let r = try_unroll_family(&scds, UnrollMode::AlmostOrthogonal);
    println!("unroll attempt: {:?} -> {:?}", t.elapsed(), r.map(|x| match x {
        scd::FamilyUnroll::Unrolled(_) => "unrolled".to_string(),
        scd::FamilyUnroll::Conflict(c) => format!("{c:?}"),
    }));
}
