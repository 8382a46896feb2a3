//! The twelve acceptance criteria, one line each. Exits nonzero if any fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use gerst::suites::{self, Outcome};
use gerst_core::algebra::FiniteAlgebra;
use gerst_core::cosimplicial::FiniteMonoid;

type Criterion = fn() -> gerst::Result<Outcome>;

fn algebra(name: &str) -> Arc<FiniteAlgebra> {
    Arc::new(FiniteAlgebra::builtin(name).expect("builtin algebra"))
}

fn all_of(name: &str, parts: Vec<Outcome>) -> Outcome {
    let passed = parts.iter().all(|o| o.passed);
    let detail = parts.iter().map(|o| format!("[{}] {}", o.name, o.detail)).collect::<Vec<_>>().join("; ");
    Outcome { name: name.into(), passed, detail }
}

fn differential() -> gerst::Result<Outcome> {
    let algs: Vec<_> = ["dual(2)", "trunc(2,3)", "mat2(3)", "groupZ2(3)"].iter().map(|n| algebra(n)).collect();
    suites::differential_squares_to_zero(&algs, 6)
}

fn relations() -> gerst::Result<Outcome> {
    let parts = vec![suites::relation_suite(&algebra("dual(2)"), 200, 7)?, suites::relation_suite(&algebra("mat2(3)"), 200, 8)?];
    Ok(all_of("relation suite", parts))
}

fn cellular() -> gerst::Result<Outcome> {
    suites::cellular_squares_to_zero(5)
}

fn circle() -> gerst::Result<Outcome> {
    suites::circle()
}

fn oracle() -> gerst::Result<Outcome> {
    suites::cells_match_nerve(&[2, 3, 4])
}

fn contractible() -> gerst::Result<Outcome> {
    suites::iprime_contractible(4)
}

fn condensation() -> gerst::Result<Outcome> {
    suites::condensation(5, 3)
}

fn evaluation() -> gerst::Result<Outcome> {
    let fs = suites::evaluation_formulas();
    let parts = vec![
        suites::evaluation_chain_map(&[algebra("dual(2)")], &fs, 100, 9)?,
        suites::evaluation_chain_map(&[algebra("trunc(0,3)")], &fs, 100, 10)?,
    ];
    Ok(all_of("evaluation is a chain map over Z/2 and Z", parts))
}

fn subdivision() -> gerst::Result<Outcome> {
    suites::subdivision(1000, 5, 11)
}

fn cosimplicial() -> gerst::Result<Outcome> {
    let parts = vec![
        suites::cosimplicial_cobar(&FiniteMonoid::cyclic(2)?, 4)?,
        suites::cosimplicial_cobar(&FiniteMonoid::cyclic(3)?, 4)?,
        suites::cosimplicial_endomorphism(&algebra("dual(2)"), 4, 200, 12)?,
    ];
    Ok(all_of("cosimplicial identities and pairing clauses", parts))
}

fn braid() -> gerst::Result<Outcome> {
    Ok(suites::braid())
}

fn cohomology() -> gerst::Result<Outcome> {
    suites::cohomology_sanity(3)
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 12] = [
        ("hochschild differential squares to zero", differential),
        ("brace and cup relations", relations),
        ("cellular boundary squares to zero", cellular),
        ("type-2 cells form a circle", circle),
        ("cellular and nerve homology agree", oracle),
        ("subcomplexes below order pairs are acyclic", contractible),
        ("cell composition is a chain map", condensation),
        ("evaluation is a chain map", evaluation),
        ("subdivision round trips and associativity", subdivision),
        ("cosimplicial identities and pairing clauses", cosimplicial),
        ("braid hexagon bounds", braid),
        ("hochschild cohomology sanity", cohomology),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (passed, detail) = match run() {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let verdict = if passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} {name} ({:.1}s): {detail}", i + 1, start.elapsed().as_secs_f64());
        failed += usize::from(!passed);
    }
    println!("acceptance: {} of 12 criteria pass", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
