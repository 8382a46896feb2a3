//! Verification suites shared by the command line and the acceptance tests.
//!
//! Each suite returns an [`Outcome`]; a failing outcome carries a reproducer.

use std::fmt;
use std::sync::Arc;

use gerst_core::algebra::FiniteAlgebra;
use gerst_core::chains::{
    brace_cup_left, brace_cup_right, braid_check, cellular_complex_unchecked, chain_map_defect, evaluation_defect,
    format_homology, same_homology, subcomplex_iprime, HomologyGroup,
};
use gerst_core::cosimplicial::{verify_cobar, verify_endomorphism, FiniteMonoid, Verification};
use gerst_core::formula::{enumerate, parse, Formula};
use gerst_core::hochschild::relations::{check_relation, Relation};
use gerst_core::hochschild::{cohomology, BraceConvention, Cochain, Complex};
use gerst_core::posets::{nerve_homology, order_pairs};
use gerst_core::subdivision::{
    fiberwise_sigma, fiberwise_sigma_inverse, random_cell_point, random_simplex_point, sigma_u, sigma_u_inverse,
    AssociativityCase, PrismPoint, Scalar,
};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::io::cochain_to_json;

/// Result of one suite: a name, a verdict, and either a count or a reproducer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn pass(name: &str, detail: impl Into<String>) -> Outcome {
        Outcome { name: name.into(), passed: true, detail: detail.into() }
    }

    fn fail(name: &str, detail: impl Into<String>) -> Outcome {
        Outcome { name: name.into(), passed: false, detail: detail.into() }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {}", self.name, self.detail)
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn algebra(name: &str) -> Result<Arc<FiniteAlgebra>> {
    Ok(Arc::new(FiniteAlgebra::builtin(name)?))
}

/// `∂∂ = 0` on every basis cochain whose image `∂∂x` has arity at most
/// `max_arity`.
pub fn differential_squares_to_zero(algs: &[Arc<FiniteAlgebra>], max_arity: usize) -> Result<Outcome> {
    const NAME: &str = "hochschild differential squares to zero";
    let mut checked = 0usize;
    for alg in algs {
        let d = alg.dim();
        for p in 0..=max_arity.saturating_sub(2) {
            let len = Cochain::zero(alg, p)?.values().len();
            for k in 0..len {
                let mut values = vec![0; len];
                values[k] = 1;
                let x = Cochain::from_values(alg, p, values)?;
                let dd = x.differential()?.differential()?;
                if !dd.is_zero() {
                    let tuple: Vec<usize> = (0..p).map(|i| (k / d) / d.pow((p - 1 - i) as u32) % d).collect();
                    return Ok(Outcome::fail(
                        NAME,
                        format!("over {}: basis cochain at tuple {tuple:?}, coordinate {}", alg.name(), k % d),
                    ));
                }
                checked += dd.values().len();
            }
        }
    }
    Ok(Outcome::pass(NAME, format!("{checked} output coefficients over {} algebras", algs.len())))
}

/// The relation suite under the default brace convention.
pub fn relation_suite(alg: &Arc<FiniteAlgebra>, trials: usize, seed: u64) -> Result<Outcome> {
    relation_suite_with(alg, trials, seed, BraceConvention::default())
}

pub fn relation_suite_with(
    alg: &Arc<FiniteAlgebra>,
    trials: usize,
    seed: u64,
    conv: BraceConvention,
) -> Result<Outcome> {
    let name = format!("relations over {}", alg.name());
    let mut r = rng(seed);
    for rel in Relation::ALL {
        if let Some(cx) = check_relation(rel, alg, &mut r, trials, conv)? {
            let inputs: Vec<String> = cx.instance.inputs.iter().map(cochain_to_json).collect();
            return Ok(Outcome::fail(&name, format!("{cx}\ninputs:\n{}", inputs.join("\n"))));
        }
    }
    Ok(Outcome::pass(&name, format!("{} relations x {trials} trials", Relation::ALL.len())))
}

/// Cellular `∂∂ = 0` for types `1..=max_n`.
pub fn cellular_squares_to_zero(max_n: usize) -> Result<Outcome> {
    const NAME: &str = "cellular boundary squares to zero";
    let mut cells = 0;
    for n in 1..=max_n {
        let c = cellular_complex_unchecked(n)?;
        if let Some(d) = c.square_defect() {
            return Ok(Outcome::fail(NAME, format!("type {n}, degree {d}")));
        }
        cells += c.ranks().iter().sum::<usize>();
    }
    Ok(Outcome::pass(NAME, format!("types 1..={max_n}, {cells} cells")))
}

/// Homology of the cellular complex of type `n`.
pub fn cellular_homology(n: usize) -> Result<Vec<HomologyGroup>> {
    Ok(cellular_complex_unchecked(n)?.homology()?)
}

/// The type-2 complex is a circle.
pub fn circle() -> Result<Outcome> {
    const NAME: &str = "type-2 cells form a circle";
    let h = cellular_homology(2)?;
    let want = [HomologyGroup::free(1), HomologyGroup::free(1)];
    let text = format_homology(&h);
    Ok(if h == want { Outcome::pass(NAME, text) } else { Outcome::fail(NAME, text) })
}

/// Cellular homology equals nerve homology, torsion included.
pub fn cells_match_nerve(ns: &[usize]) -> Result<Outcome> {
    const NAME: &str = "cellular homology matches nerve homology";
    let mut lines = Vec::new();
    for &n in ns {
        let (cells, nerve) = (cellular_homology(n)?, nerve_homology(n)?);
        if !same_homology(&cells, &nerve) {
            return Ok(Outcome::fail(
                NAME,
                format!("n = {n}: cells {} vs nerve {}", format_homology(&cells), format_homology(&nerve)),
            ));
        }
        lines.push(format!("n={n} [{}]", format_homology(&cells)));
    }
    Ok(Outcome::pass(NAME, lines.join("; ")))
}

/// Every subcomplex below an order pair has zero reduced homology.
pub fn iprime_contractible(max_n: usize) -> Result<Outcome> {
    const NAME: &str = "subcomplexes below order pairs are acyclic";
    let mut checked = 0;
    for n in 1..=max_n {
        for op in order_pairs(n)? {
            let h = subcomplex_iprime(n, &op)?.reduced_homology()?;
            if !h.iter().all(HomologyGroup::is_zero) {
                return Ok(Outcome::fail(NAME, format!("{op}: reduced {}", format_homology(&h))));
            }
            checked += 1;
        }
    }
    Ok(Outcome::pass(NAME, format!("{checked} order pairs, n <= {max_n}")))
}

/// Cell composition is a chain map for type sums up to `max_sum`, and the
/// brace-cup relation holds for `n ≤ max_brace`.
pub fn condensation(max_sum: usize, max_brace: usize) -> Result<Outcome> {
    const NAME: &str = "cell composition is a chain map";
    let mut checked = 0;
    for n in 1..max_sum {
        let fs = enumerate(n, None)?;
        for j in 1..=max_sum - n {
            let gs = enumerate(j, None)?;
            for f in &fs {
                for g in &gs {
                    for k in 1..=n {
                        let defect = chain_map_defect(f, k, g)?;
                        if !defect.is_zero() {
                            return Ok(Outcome::fail(NAME, format!("{f} o_{k} {g}: defect {defect}")));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    for n in 0..=max_brace {
        let (left, right) = (brace_cup_left(n)?, brace_cup_right(n)?);
        if left != right {
            return Ok(Outcome::fail(NAME, format!("brace-cup relation, n = {n}: {left} != {right}")));
        }
    }
    Ok(Outcome::pass(NAME, format!("{checked} compositions, brace-cup relation for n <= {max_brace}")))
}

/// Random normalized inputs of arity `max(vᵢ, 1)` plus a random bit.
pub fn evaluation_inputs<R: Rng + ?Sized>(alg: &Arc<FiniteAlgebra>, f: &Formula, rng: &mut R) -> Result<Vec<Cochain>> {
    f.valences()
        .iter()
        .map(|&v| Ok(Cochain::random_normalized(alg, v.max(1) + rng.gen_range(0..2), rng)?))
        .collect()
}

/// The evaluation of cells on cochains intertwines the cellular boundary
/// with the Hochschild differential.
pub fn evaluation_chain_map(
    algs: &[Arc<FiniteAlgebra>],
    formulas: &[Formula],
    tuples: usize,
    seed: u64,
) -> Result<Outcome> {
    let names: Vec<&str> = algs.iter().map(|a| a.name()).collect();
    let name = format!("evaluation over {}", names.join(", "));
    let mut r = rng(seed);
    for alg in algs {
        for f in formulas {
            for _ in 0..tuples {
                let xs = evaluation_inputs(alg, f, &mut r)?;
                if !evaluation_defect(f, &xs)?.is_zero() {
                    let inputs: Vec<String> = xs.iter().map(cochain_to_json).collect();
                    return Ok(Outcome::fail(&name, format!("{f} over {}\ninputs:\n{}", alg.name(), inputs.join("\n"))));
                }
            }
        }
    }
    Ok(Outcome::pass(&name, format!("{} formulas x {tuples} tuples each", formulas.len())))
}

/// The formulas `1(2)`, `1(2,3)`, `1(2(3))`, `1(2,3,4)`.
pub fn evaluation_formulas() -> Vec<Formula> {
    ["1(2)", "1(2,3)", "1(2(3))", "1(2,3,4)"].iter().map(|t| parse(t).expect("valid formula")).collect()
}

fn random_prism<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> PrismPoint<S> {
    let split = rng.gen_range(0..=n);
    PrismPoint::new(
        random_simplex_point(rng, split, &S::one(), true),
        random_simplex_point(rng, n - split, &S::one(), true),
    )
}

fn random_weights<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<S> {
    random_simplex_point::<S, _>(rng, n - 1, &S::one(), false).coords
}

/// Pairs `(f, f′)` with `type f + type f′ ≤ max_sum` and `type f′ ≤ 2`.
fn composable(max_sum: usize) -> Result<Vec<(Formula, Formula)>> {
    let mut out = Vec::new();
    for n in 1..max_sum {
        for j in 1..=(max_sum - n).min(2) {
            for f in enumerate(n, None)? {
                for g in enumerate(j, None)? {
                    out.push((f.clone(), g));
                }
            }
        }
    }
    Ok(out)
}

/// One sample of each subdivision check; `Ok(Some(reason))` on failure.
fn subdivision_sample<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    pairs: &[(Formula, Formula)],
) -> Result<Option<String>> {
    let n = rng.gen_range(0..=4);
    let u = S::from_ratio(rng.gen_range(1..20), 20);
    let x = random_prism::<S, _>(rng, n);
    if !sigma_u_inverse(n, &u, &sigma_u(n, &u, &x)?)?.same_point(&x) {
        return Ok(Some(format!("prism round trip, n = {n}, u = {u:?}, point {x:?}")));
    }
    let z = random_simplex_point::<S, _>(rng, n, &S::one(), true);
    if !sigma_u(n, &u, &sigma_u_inverse(n, &u, &z)?)?.near(&z) {
        return Ok(Some(format!("simplex round trip, n = {n}, u = {u:?}, point {z:?}")));
    }

    let (f, fp) = &pairs[rng.gen_range(0..pairs.len())];
    let sizes: Vec<S> = (0..f.type_n()).map(|_| S::from_ratio(rng.gen_range(1..6), 4)).collect();
    let gs = f.thickenings(rng.gen_range(0..=1));
    let g = &gs[rng.gen_range(0..gs.len())];
    let x = random_cell_point(rng, g, &sizes, true);
    let (a, y) = fiberwise_sigma(&sizes, &x)?;
    if !fiberwise_sigma_inverse(&a, &y)?.same_point(&x) {
        return Ok(Some(format!("fiberwise round trip on {g}, point {x:?}")));
    }

    let k = rng.gen_range(1..=f.type_n());
    let vk = g.valence(k).expect("symbol of f");
    let hs = fp.thickenings(vk);
    let h = hs[rng.gen_range(0..hs.len())].clone();
    let case = AssociativityCase::<S>::new(
        g.clone(),
        k,
        h,
        random_weights(rng, f.type_n()),
        random_weights(rng, fp.type_n()),
    )?;
    let top = case.top()?;
    let ones = vec![S::one(); top.type_n()];
    let x = random_cell_point(rng, &top, &ones, true);
    if !case.check(&x)? {
        return Ok(Some(format!("associativity square, case {case:?}, point {x:?}")));
    }
    Ok(None)
}

/// Round trips of the prismatic and fiberwise subdivisions and the
/// associativity square, `points` samples each, exact and in floating point.
pub fn subdivision(points: usize, max_sum: usize, seed: u64) -> Result<Outcome> {
    const NAME: &str = "subdivision round trips and associativity";
    let pairs = composable(max_sum)?;
    let mut r = rng(seed);
    for _ in 0..points {
        if let Some(why) = subdivision_sample::<BigRational, _>(&mut r, &pairs)? {
            return Ok(Outcome::fail(NAME, format!("rational: {why}")));
        }
    }
    for _ in 0..points {
        if let Some(why) = subdivision_sample::<f64, _>(&mut r, &pairs)? {
            return Ok(Outcome::fail(NAME, format!("floating: {why}")));
        }
    }
    Ok(Outcome::pass(NAME, format!("{points} rational and {points} floating samples, type sums <= {max_sum}")))
}

fn verification(name: &str, v: Verification) -> Outcome {
    match v.failure {
        None => Outcome::pass(name, format!("{} identities", v.checked)),
        Some(why) => Outcome::fail(name, why),
    }
}

/// Cosimplicial identities and pairing clauses for a cobar operad, exhaustively.
pub fn cosimplicial_cobar(monoid: &FiniteMonoid, max_level: usize) -> Result<Outcome> {
    let name = format!("cosimplicial cobar({} elements)", monoid.size());
    Ok(verification(&name, verify_cobar(monoid, max_level)?))
}

/// The same checks on random cochains of an endomorphism operad.
pub fn cosimplicial_endomorphism(
    alg: &Arc<FiniteAlgebra>,
    max_level: usize,
    samples: usize,
    seed: u64,
) -> Result<Outcome> {
    let name = format!("cosimplicial hochschild({})", alg.name());
    Ok(verification(&name, verify_endomorphism(alg, max_level, samples, &mut rng(seed))?))
}

pub fn braid() -> Outcome {
    const NAME: &str = "braid hexagon bounds";
    if braid_check() {
        Outcome::pass(NAME, "both paths differ by the boundary of the three 2-cells")
    } else {
        Outcome::fail(NAME, "no filling found")
    }
}

/// `H⁰(mat2(3))` has rank 1, higher groups vanish, and both complexes agree.
pub fn cohomology_sanity(max_degree: usize) -> Result<Outcome> {
    const NAME: &str = "hochschild cohomology sanity";
    let mat = algebra("mat2(3)")?;
    for p in 0..=max_degree {
        let h = cohomology(&mat, p, Complex::Normalized)?;
        let want = usize::from(p == 0);
        if h.rank != want || !h.torsion.is_empty() {
            return Ok(Outcome::fail(NAME, format!("H^{p}(mat2(3)) has rank {}", h.rank)));
        }
    }
    for alg in [algebra("dual(2)")?, mat] {
        for p in 0..=max_degree {
            let norm = cohomology(&alg, p, Complex::Normalized)?;
            let full = cohomology(&alg, p, Complex::Unnormalized)?;
            if norm != full {
                return Ok(Outcome::fail(NAME, format!("H^{p}({}): {norm:?} vs {full:?}", alg.name())));
            }
        }
    }
    Ok(Outcome::pass(NAME, format!("degrees <= {max_degree}")))
}
