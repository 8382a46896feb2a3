//! Operads with multiplication, their associated cosimplicial objects and
//! cup-pairings.
//!
//! Cofaces and codegeneracies are derived from the operad structure:
//! `d⁰x = μ∘₂x`, `dⁱx = x∘ᵢμ` for `0 < i < p+1`, `d^{p+1}x = μ∘₁x`, and
//! `sᵢx = x∘ᵢ₊₁e`. The pairing is `φ(x, y) = (μ∘₁x)∘_{p+1}y`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use rand::Rng;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::hochschild::Cochain;

/// A non-symmetric operad with elements `e` of arity 0 and `μ` of arity 2.
pub trait OperadWithMultiplication {
    type Element: Clone + Debug;

    fn arity(&self, x: &Self::Element) -> usize;
    /// `x ∘ᵢ y`, `1 ≤ i ≤ arity(x)`.
    fn compose(&self, x: &Self::Element, i: usize, y: &Self::Element) -> Result<Self::Element>;
    fn unit(&self) -> Self::Element;
    fn multiplication(&self) -> Self::Element;
    fn identity(&self) -> Self::Element;
    fn equal(&self, x: &Self::Element, y: &Self::Element) -> bool;
}

/// Checks `μ∘₁μ = μ∘₂μ`.
pub fn multiplication_is_associative<O: OperadWithMultiplication>(op: &O) -> Result<bool> {
    let mu = op.multiplication();
    Ok(op.equal(&op.compose(&mu, 1, &mu)?, &op.compose(&mu, 2, &mu)?))
}

/// Checks `μ∘₁e = μ∘₂e = id`.
pub fn multiplication_is_unital<O: OperadWithMultiplication>(op: &O) -> Result<bool> {
    let (mu, e, id) = (op.multiplication(), op.unit(), op.identity());
    Ok(op.equal(&op.compose(&mu, 1, &e)?, &id) && op.equal(&op.compose(&mu, 2, &e)?, &id))
}

/// The cosimplicial object of an operad with multiplication.
pub struct Cosimplicial<'a, O: OperadWithMultiplication> {
    op: &'a O,
}

impl<'a, O: OperadWithMultiplication> Cosimplicial<'a, O> {
    /// Refuses operads whose `μ` is not associative and unital.
    pub fn new(op: &'a O) -> Result<Cosimplicial<'a, O>> {
        if !multiplication_is_associative(op)? {
            return Err(Error::Invalid("multiplication is not associative".into()));
        }
        if !multiplication_is_unital(op)? {
            return Err(Error::Invalid("unit is not a two-sided unit for the multiplication".into()));
        }
        Ok(Cosimplicial { op })
    }

    pub fn operad(&self) -> &O {
        self.op
    }

    pub fn coface(&self, x: &O::Element, i: usize) -> Result<O::Element> {
        let p = self.op.arity(x);
        let mu = self.op.multiplication();
        match i {
            0 => self.op.compose(&mu, 2, x),
            _ if i <= p => self.op.compose(x, i, &mu),
            _ if i == p + 1 => self.op.compose(&mu, 1, x),
            _ => Err(Error::OutOfRange { what: "coface", index: i, bound: p + 1 }),
        }
    }

    pub fn codegeneracy(&self, x: &O::Element, i: usize) -> Result<O::Element> {
        let p = self.op.arity(x);
        if i >= p {
            return Err(Error::OutOfRange { what: "codegeneracy", index: i, bound: p });
        }
        self.op.compose(x, i + 1, &self.op.unit())
    }

    /// `φ_{p,q}(x, y) = (μ∘₁x)∘_{p+1}y`.
    pub fn pair(&self, x: &O::Element, y: &O::Element) -> Result<O::Element> {
        let p = self.op.arity(x);
        let left = self.op.compose(&self.op.multiplication(), 1, x)?;
        self.op.compose(&left, p + 1, y)
    }

    fn expect(&self, a: &O::Element, b: &O::Element, what: impl FnOnce() -> String) -> core::result::Result<(), String> {
        if self.op.equal(a, b) {
            Ok(())
        } else {
            Err(format!("{}: {a:?} != {b:?}", what()))
        }
    }

    /// The five families of cosimplicial identities at `x`. Returns the
    /// number of identities checked, or a description of the first failure.
    pub fn check_identities(&self, x: &O::Element) -> Result<core::result::Result<usize, String>> {
        let p = self.op.arity(x);
        let mut n = 0;
        let d = |y: &O::Element, i| self.coface(y, i);
        let s = |y: &O::Element, i| self.codegeneracy(y, i);
        // dʲdⁱ = dⁱdʲ⁻¹, i < j
        for j in 1..=p + 2 {
            for i in 0..j {
                if let Err(e) = self.expect(&d(&d(x, i)?, j)?, &d(&d(x, j - 1)?, i)?, || format!("d^{j}d^{i} at {x:?}")) {
                    return Ok(Err(e));
                }
                n += 1;
            }
        }
        if p >= 2 {
            // sʲsⁱ = sⁱsʲ⁺¹, i ≤ j
            for j in 0..p - 1 {
                for i in 0..=j {
                    let lhs = s(&s(x, i)?, j)?;
                    let rhs = s(&s(x, j + 1)?, i)?;
                    if let Err(e) = self.expect(&lhs, &rhs, || format!("s^{j}s^{i} at {x:?}")) {
                        return Ok(Err(e));
                    }
                    n += 1;
                }
            }
        }
        // mixed identities on dⁱx, which has arity p + 1
        for i in 0..=p + 1 {
            let dx = d(x, i)?;
            for j in 0..p {
                let lhs = s(&dx, j)?;
                let rhs = if i < j {
                    d(&s(x, j - 1)?, i)?
                } else if i == j || i == j + 1 {
                    x.clone()
                } else {
                    d(&s(x, j)?, i - 1)?
                };
                if let Err(e) = self.expect(&lhs, &rhs, || format!("s^{j}d^{i} at {x:?}")) {
                    return Ok(Err(e));
                }
                n += 1;
            }
        }
        Ok(Ok(n))
    }

    /// Clauses (a), (b), (c) of a cup-pairing at `(x, y)`.
    pub fn check_pairing(&self, x: &O::Element, y: &O::Element) -> Result<core::result::Result<usize, String>> {
        let (p, q) = (self.op.arity(x), self.op.arity(y));
        let xy = self.pair(x, y)?;
        let mut n = 0;
        for i in 0..=p + q + 1 {
            let lhs = self.coface(&xy, i)?;
            let rhs = if i <= p {
                self.pair(&self.coface(x, i)?, y)?
            } else {
                self.pair(x, &self.coface(y, i - p)?)?
            };
            if let Err(e) = self.expect(&lhs, &rhs, || format!("(a) i={i} at {x:?}, {y:?}")) {
                return Ok(Err(e));
            }
            n += 1;
        }
        let lhs = self.pair(&self.coface(x, p + 1)?, y)?;
        let rhs = self.pair(x, &self.coface(y, 0)?)?;
        if let Err(e) = self.expect(&lhs, &rhs, || format!("(b) at {x:?}, {y:?}")) {
            return Ok(Err(e));
        }
        n += 1;
        for i in 0..p + q {
            let lhs = self.codegeneracy(&xy, i)?;
            let rhs = if i < p {
                self.pair(&self.codegeneracy(x, i)?, y)?
            } else {
                self.pair(x, &self.codegeneracy(y, i - p)?)?
            };
            if let Err(e) = self.expect(&lhs, &rhs, || format!("(c) i={i} at {x:?}, {y:?}")) {
                return Ok(Err(e));
            }
            n += 1;
        }
        Ok(Ok(n))
    }

    /// `φ(e, x) = φ(x, e) = x`.
    pub fn check_unit(&self, x: &O::Element) -> Result<bool> {
        let e = self.op.unit();
        Ok(self.op.equal(&self.pair(&e, x)?, x) && self.op.equal(&self.pair(x, &e)?, x))
    }
}

/// Cochains of a finite algebra with `∘ₖ`, the unit and the multiplication.
pub struct EndomorphismOperad {
    alg: Arc<FiniteAlgebra>,
}

impl EndomorphismOperad {
    pub fn new(alg: Arc<FiniteAlgebra>) -> EndomorphismOperad {
        EndomorphismOperad { alg }
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.alg
    }
}

impl OperadWithMultiplication for EndomorphismOperad {
    type Element = Cochain;

    fn arity(&self, x: &Cochain) -> usize {
        x.arity()
    }

    fn compose(&self, x: &Cochain, i: usize, y: &Cochain) -> Result<Cochain> {
        x.circ(i, y)
    }

    fn unit(&self) -> Cochain {
        Cochain::unit(&self.alg)
    }

    fn multiplication(&self) -> Cochain {
        Cochain::multiplication(&self.alg).expect("μ fits any cap")
    }

    fn identity(&self) -> Cochain {
        Cochain::identity(&self.alg)
    }

    fn equal(&self, x: &Cochain, y: &Cochain) -> bool {
        x == y
    }
}

/// A finite monoid on `0..size` given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    unit: usize,
}

impl FiniteMonoid {
    /// Validates closure, associativity and the unit laws exhaustively.
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>, unit: usize) -> Result<FiniteMonoid> {
        let k = table.len();
        if k == 0 {
            return Err(Error::Invalid("a monoid needs at least one element".into()));
        }
        if labels.len() != k {
            return Err(Error::Invalid(format!("{} labels for {k} elements", labels.len())));
        }
        if table.iter().any(|row| row.len() != k || row.iter().any(|&c| c >= k)) {
            return Err(Error::Invalid("multiplication table is not closed".into()));
        }
        if unit >= k {
            return Err(Error::Invalid(format!("unit {unit} out of range")));
        }
        for a in 0..k {
            if table[unit][a] != a || table[a][unit] != a {
                return Err(Error::Invalid(format!("{} is not a two-sided unit", labels[unit])));
            }
            for b in 0..k {
                for c in 0..k {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FiniteMonoid { labels, table, unit })
    }

    /// `Z/k` under addition.
    pub fn cyclic(k: usize) -> Result<FiniteMonoid> {
        if k == 0 {
            return Err(Error::Invalid("cyclic group of order 0".into()));
        }
        let labels = (0..k).map(|i| if i == 0 { "1".into() } else { format!("g{i}") }).collect();
        let table = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
        FiniteMonoid::new(labels, table, 0)
    }

    /// `{0, .., k-1}` under `max`, a non-cancellative monoid with unit `0`.
    pub fn max_monoid(k: usize) -> Result<FiniteMonoid> {
        let labels = (0..k).map(|i| format!("m{i}")).collect();
        let table = (0..k).map(|a| (0..k).map(|b| a.max(b)).collect()).collect();
        FiniteMonoid::new(labels, table, 0)
    }

    /// `Z/k` or `max(k)`.
    pub fn builtin(name: &str) -> Result<FiniteMonoid> {
        let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        let unknown = || Error::UnknownName(name.into());
        if let Some(k) = compact.strip_prefix("Z/") {
            return FiniteMonoid::cyclic(k.parse().map_err(|_| unknown())?);
        }
        if let Some(k) = compact.strip_prefix("max(").and_then(|s| s.strip_suffix(')')) {
            return FiniteMonoid::max_monoid(k.parse().map_err(|_| unknown())?);
        }
        Err(unknown())
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// All `p`-tuples of elements.
    pub fn tuples(&self, p: usize) -> Vec<Vec<usize>> {
        let k = self.size();
        let mut out = vec![Vec::new()];
        for _ in 0..p {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..k).map(move |a| {
                        let mut t = t.clone();
                        t.push(a);
                        t
                    })
                })
                .collect();
        }
        out
    }
}

/// The cobar operad: arity `n` is `Mⁿ`, and
/// `(a₁..aₙ)∘ᵢ(b₁..bⱼ) = (a₁..aᵢ₋₁, aᵢb₁..aᵢbⱼ, aᵢ₊₁..aₙ)`.
pub struct CobarOperad {
    monoid: FiniteMonoid,
}

impl CobarOperad {
    pub fn new(monoid: FiniteMonoid) -> CobarOperad {
        CobarOperad { monoid }
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }
}

impl OperadWithMultiplication for CobarOperad {
    type Element = Vec<usize>;

    fn arity(&self, x: &Vec<usize>) -> usize {
        x.len()
    }

    fn compose(&self, x: &Vec<usize>, i: usize, y: &Vec<usize>) -> Result<Vec<usize>> {
        if i == 0 || i > x.len() {
            return Err(Error::OutOfRange { what: "composition slot", index: i, bound: x.len() });
        }
        let a = x[i - 1];
        let mut out = x[..i - 1].to_vec();
        out.extend(y.iter().map(|&b| self.monoid.mul(a, b)));
        out.extend_from_slice(&x[i..]);
        Ok(out)
    }

    fn unit(&self) -> Vec<usize> {
        Vec::new()
    }

    fn multiplication(&self) -> Vec<usize> {
        vec![self.monoid.unit; 2]
    }

    fn identity(&self) -> Vec<usize> {
        vec![self.monoid.unit]
    }

    fn equal(&self, x: &Vec<usize>, y: &Vec<usize>) -> bool {
        x == y
    }
}

/// Outcome of a verification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub checked: usize,
    pub failure: Option<String>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn run<O: OperadWithMultiplication>(
    cos: &Cosimplicial<'_, O>,
    singles: &[O::Element],
    pairs: &[(O::Element, O::Element)],
) -> Result<Verification> {
    let mut checked = 0;
    for x in singles {
        match cos.check_identities(x)? {
            Ok(n) => checked += n,
            Err(e) => return Ok(Verification { checked, failure: Some(e) }),
        }
        if !cos.check_unit(x)? {
            return Ok(Verification { checked, failure: Some(format!("unit fails at {x:?}")) });
        }
        checked += 1;
    }
    for (x, y) in pairs {
        match cos.check_pairing(x, y)? {
            Ok(n) => checked += n,
            Err(e) => return Ok(Verification { checked, failure: Some(e) }),
        }
    }
    Ok(Verification { checked, failure: None })
}

/// Exhaustive check for the cobar operad: identities on every element of
/// level `≤ max_level`, pairing clauses on every pair with `p + q ≤ max_level`.
pub fn verify_cobar(monoid: &FiniteMonoid, max_level: usize) -> Result<Verification> {
    let op = CobarOperad::new(monoid.clone());
    let cos = Cosimplicial::new(&op)?;
    let levels: Vec<Vec<Vec<usize>>> = (0..=max_level).map(|p| monoid.tuples(p)).collect();
    let singles: Vec<Vec<usize>> = levels.concat();
    let mut pairs = Vec::new();
    for p in 0..=max_level {
        for q in 0..=max_level - p {
            for x in &levels[p] {
                for y in &levels[q] {
                    pairs.push((x.clone(), y.clone()));
                }
            }
        }
    }
    run(&cos, &singles, &pairs)
}

/// Sampled check for the endomorphism operad: `samples` random cochains
/// per level `≤ max_level`, and as many random pairs with `p + q ≤ max_level`.
pub fn verify_endomorphism<R: Rng + ?Sized>(
    alg: &Arc<FiniteAlgebra>,
    max_level: usize,
    samples: usize,
    rng: &mut R,
) -> Result<Verification> {
    let op = EndomorphismOperad::new(alg.clone());
    let cos = Cosimplicial::new(&op)?;
    let mut singles = Vec::new();
    for p in 0..=max_level {
        for _ in 0..samples {
            singles.push(Cochain::random(alg, p, rng)?);
        }
    }
    let mut pairs = Vec::new();
    for _ in 0..samples {
        let p = rng.gen_range(0..=max_level);
        let q = rng.gen_range(0..=max_level - p);
        pairs.push((Cochain::random(alg, p, rng)?, Cochain::random(alg, q, rng)?));
    }
    run(&cos, &singles, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn algebra(name: &str) -> Arc<FiniteAlgebra> {
        Arc::new(FiniteAlgebra::builtin(name).unwrap())
    }

    #[test]
    fn endomorphism_multiplication_laws() {
        for name in ["dual(2)", "mat2(3)"] {
            let op = EndomorphismOperad::new(algebra(name));
            assert!(multiplication_is_associative(&op).unwrap());
            assert!(multiplication_is_unital(&op).unwrap());
        }
    }

    #[test]
    fn endomorphism_cofaces_match_hochschild() {
        let alg = algebra("mat2(3)");
        let op = EndomorphismOperad::new(alg.clone());
        let cos = Cosimplicial::new(&op).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for t in 0..100 {
            let x = Cochain::random(&alg, t % 4, &mut rng).unwrap();
            for i in 0..=x.arity() + 1 {
                assert_eq!(cos.coface(&x, i).unwrap(), x.coface(i).unwrap());
            }
            for i in 0..x.arity() {
                assert_eq!(cos.codegeneracy(&x, i).unwrap(), x.codegeneracy(i).unwrap());
            }
            assert!(cos.coface(&x, x.arity() + 2).is_err());
        }
    }

    #[test]
    fn endomorphism_pairing_is_cup() {
        let alg = algebra("dual(2)");
        let op = EndomorphismOperad::new(alg.clone());
        let cos = Cosimplicial::new(&op).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let p = rng.gen_range(0..=3);
            let q = rng.gen_range(0..=3);
            let x = Cochain::random(&alg, p, &mut rng).unwrap();
            let y = Cochain::random(&alg, q, &mut rng).unwrap();
            assert_eq!(cos.pair(&x, &y).unwrap(), x.cup(&y).unwrap());
        }
    }

    #[test]
    fn cobar_examples() {
        let op = CobarOperad::new(FiniteMonoid::cyclic(2).unwrap());
        let g = vec![1];
        assert_eq!(op.compose(&g, 1, &vec![1, 1]).unwrap(), vec![0, 0]);
        let cos = Cosimplicial::new(&op).unwrap();
        assert_eq!(cos.coface(&g, 0).unwrap(), vec![0, 1]);
        assert_eq!(cos.coface(&g, 1).unwrap(), vec![1, 1]);
        assert_eq!(cos.coface(&g, 2).unwrap(), vec![1, 0]);
        let x = vec![1, 0, 1];
        for i in 0..3 {
            let mut dropped = x.clone();
            dropped.remove(i);
            assert_eq!(cos.codegeneracy(&x, i).unwrap(), dropped);
        }
        assert_eq!(cos.pair(&vec![1], &vec![0, 1]).unwrap(), vec![1, 0, 1]);
        assert!(cos.check_unit(&x).unwrap());
    }

    #[test]
    fn cobar_clause_b_exhaustive() {
        let op = CobarOperad::new(FiniteMonoid::cyclic(2).unwrap());
        let cos = Cosimplicial::new(&op).unwrap();
        let m = op.monoid().clone();
        for p in 0..=3 {
            for q in 0..=3 - p {
                for x in m.tuples(p) {
                    for y in m.tuples(q) {
                        let lhs = cos.pair(&cos.coface(&x, p + 1).unwrap(), &y).unwrap();
                        let rhs = cos.pair(&x, &cos.coface(&y, 0).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn cobar_verification_is_exhaustive() {
        for name in ["Z/1", "Z/2", "Z/3", "max(2)", "max(3)"] {
            let m = FiniteMonoid::builtin(name).unwrap();
            let v = verify_cobar(&m, 4).unwrap();
            assert!(v.passed(), "{name}: {:?}", v.failure);
            assert!(v.checked > 100);
        }
    }

    #[test]
    fn endomorphism_verification() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v = verify_endomorphism(&algebra("dual(2)"), 4, 20, &mut rng).unwrap();
        assert!(v.passed(), "{:?}", v.failure);
    }

    #[test]
    fn monoid_validation() {
        assert!(FiniteMonoid::new(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1, 1]], 0).is_ok());
        // no unit
        assert!(FiniteMonoid::new(vec!["a".into(), "b".into()], vec![vec![0, 0], vec![0, 0]], 0).is_err());
        // not closed
        assert!(FiniteMonoid::new(vec!["a".into()], vec![vec![1]], 0).is_err());
        // (aa)b = a but a(ab) = b
        let bad = vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 1, 1]];
        assert!(FiniteMonoid::new(vec!["1".into(), "a".into(), "b".into()], bad, 0).is_err());
        assert!(FiniteMonoid::builtin("free(2)").is_err());
    }

    /// A unit that fails `μ∘₁e = id` is refused.
    struct Broken;

    impl OperadWithMultiplication for Broken {
        type Element = Vec<usize>;
        fn arity(&self, x: &Vec<usize>) -> usize {
            x.len()
        }
        fn compose(&self, x: &Vec<usize>, i: usize, y: &Vec<usize>) -> Result<Vec<usize>> {
            let mut out = x[..i - 1].to_vec();
            out.extend_from_slice(y);
            out.extend_from_slice(&x[i..]);
            Ok(out)
        }
        fn unit(&self) -> Vec<usize> {
            Vec::new()
        }
        fn multiplication(&self) -> Vec<usize> {
            vec![0, 0]
        }
        fn identity(&self) -> Vec<usize> {
            vec![1]
        }
        fn equal(&self, x: &Vec<usize>, y: &Vec<usize>) -> bool {
            x == y
        }
    }

    #[test]
    fn refuses_non_unital_multiplication() {
        assert!(Cosimplicial::new(&Broken).is_err());
    }

    proptest! {
        #[test]
        fn cobar_pairing_is_concatenation(x in prop::collection::vec(0usize..3, 0..5), y in prop::collection::vec(0usize..3, 0..5)) {
            let op = CobarOperad::new(FiniteMonoid::cyclic(3).unwrap());
            let cos = Cosimplicial::new(&op).unwrap();
            let mut xy = x.clone();
            xy.extend_from_slice(&y);
            prop_assert_eq!(cos.pair(&x, &y).unwrap(), xy);
        }
    }
}
