//! Noncommutative polynomials over a fixed generator alphabet, normal
//! ordered against a bracket table (PBW straightening).
//!
//! A monomial is an exponent vector over the alphabet: the word with all
//! letters sorted by rank. Rewriting a descent `X·Y -> Y·X + [X,Y]` strictly
//! decreases (Lorentz degree, inversion count) because every bracket's
//! right-hand side has total Lorentz degree at most one less than the swapped
//! pair, so straightening terminates; a fuel counter turns any violation of
//! that contract into an error instead of a hang.

use std::cell::{Cell, RefCell};
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;
use std::sync::Arc;

use crate::scalars::{rint, Rational, ZSeries};
use num_traits::Zero;

/// Hard upper bound on alphabet size (all presentations here use 10).
pub const MAX_GENS: usize = 10;

/// Default rewrite budget per product.
pub const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Debug, thiserror::Error)]
pub enum AlgebraError {
    #[error("rewrite fuel exhausted ({0} steps); bracket table violates the termination contract")]
    FuelExhausted(u64),
    #[error("exponential argument has a term of zero z-valuation; the series would not truncate")]
    NonTruncatingExponential,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("tensor arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("invalid tensor leg selector")]
    BadLeg,
    #[error("element is not invertible at order zero")]
    NonInvertible,
    #[error("division requires z-valuation >= {0}")]
    DivisionValuation(usize),
    #[error("operand lies outside the {0} subalgebra")]
    SubalgebraViolation(&'static str),
    #[error("antipode solve failed for `{0}`: coproduct is not triangular over solved generators")]
    AntipodeSolve(String),
    #[error("product requires reordering `{0}·{1}`; structure-table expressions must be written in PBW normal order")]
    StrictReorder(String, String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

/// One generator of a presentation's alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// 0 for translations, 1 for Lorentz generators.
    pub lorentz_degree: u8,
}

/// Ordered generator list plus the display symbol of the deformation
/// parameter. The position in `gens` is the generator's rank; normal order
/// sorts words by ascending rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    pub gens: Vec<Generator>,
    pub param: String,
}

impl Alphabet {
    pub fn new(gens: Vec<Generator>, param: &str) -> Self {
        assert!(gens.len() <= MAX_GENS);
        Alphabet { gens, param: param.to_string() }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn rank_of(&self, name: &str) -> Option<u8> {
        self.gens.iter().position(|g| g.name == name).map(|r| r as u8)
    }

    pub fn name_of(&self, rank: u8) -> &str {
        &self.gens[rank as usize].name
    }

    pub fn lorentz_degree(&self, rank: u8) -> u8 {
        self.gens[rank as usize].lorentz_degree
    }
}

/// Normal-ordered monomial: exponent vector indexed by generator rank.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    exps: [u8; MAX_GENS],
}

impl Mono {
    pub fn unit() -> Self {
        Mono { exps: [0; MAX_GENS] }
    }

    pub fn of_gen(rank: u8) -> Self {
        let mut m = Self::unit();
        m.exps[rank as usize] = 1;
        m
    }

    pub fn of_word(word: &[u8]) -> Self {
        let mut m = Self::unit();
        for &r in word {
            m.exps[r as usize] += 1;
        }
        m
    }

    pub fn pow_of(rank: u8, n: u8) -> Self {
        let mut m = Self::unit();
        m.exps[rank as usize] = n;
        m
    }

    pub fn exp(&self, rank: u8) -> u8 {
        self.exps[rank as usize]
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn lorentz_degree(&self, alphabet: &Alphabet) -> u32 {
        self.exps
            .iter()
            .enumerate()
            .map(|(r, &e)| {
                if r < alphabet.len() {
                    alphabet.lorentz_degree(r as u8) as u32 * e as u32
                } else {
                    0
                }
            })
            .sum()
    }

    /// Highest rank with a nonzero exponent.
    pub fn highest_rank(&self) -> Option<u8> {
        (0..MAX_GENS).rev().find(|&r| self.exps[r] > 0).map(|r| r as u8)
    }

    /// Copy with one occurrence of `rank` removed.
    pub fn without_one(&self, rank: u8) -> Self {
        debug_assert!(self.exps[rank as usize] > 0);
        let mut m = *self;
        m.exps[rank as usize] -= 1;
        m
    }

    /// Copy with one occurrence of `rank` added.
    pub fn with_one(&self, rank: u8) -> Self {
        let mut m = *self;
        m.exps[rank as usize] += 1;
        m
    }

    /// Product of two sorted words all of whose letters commute pairwise
    /// (exponent-vector sum). Only valid when the caller knows commutativity.
    pub fn commuting_product(&self, other: &Mono) -> Self {
        let mut m = *self;
        for r in 0..MAX_GENS {
            m.exps[r] += other.exps[r];
        }
        m
    }

    /// Letters in ascending rank, with multiplicity.
    pub fn letters(&self) -> impl Iterator<Item = u8> + '_ {
        (0..MAX_GENS as u8).flat_map(move |r| std::iter::repeat(r).take(self.exps[r as usize] as usize))
    }

    pub fn supported_within(&self, ranks: impl Fn(u8) -> bool) -> bool {
        (0..MAX_GENS as u8).all(|r| self.exps[r as usize] == 0 || ranks(r))
    }
}

impl Ord for Mono {
    /// Degree, then lexicographic on the sorted word: for equal degree the
    /// word with more copies of the lowest differing rank comes first.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for r in 0..MAX_GENS {
            match self.exps[r].cmp(&other.exps[r]) {
                Ordering::Equal => continue,
                Ordering::Greater => return Ordering::Less,
                Ordering::Less => return Ordering::Greater,
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Normal-ordered noncommutative polynomial: finite map from monomials to
/// nonzero coefficient series. Canonical form is unique, so `==` decides
/// algebraic equality.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Mono, ZSeries>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn of_mono(m: Mono, order: usize) -> Self {
        Self::of_mono_coeff(m, ZSeries::one(order))
    }

    pub fn of_mono_coeff(m: Mono, c: ZSeries) -> Self {
        let mut e = Element::zero();
        e.accumulate(m, c);
        e
    }

    pub fn unit(order: usize) -> Self {
        Self::of_mono(Mono::unit(), order)
    }

    pub fn of_gen(rank: u8, order: usize) -> Self {
        Self::of_mono(Mono::of_gen(rank), order)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &ZSeries)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Option<&ZSeries> {
        self.terms.get(m)
    }

    /// Coefficient of the unit monomial (the "scalar part").
    pub fn constant_coeff(&self, order: usize) -> ZSeries {
        self.terms.get(&Mono::unit()).cloned().unwrap_or_else(|| ZSeries::zero(order))
    }

    pub fn accumulate(&mut self, m: Mono, c: ZSeries) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Element { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn scale(&self, c: &ZSeries) -> Self {
        let mut out = Element::zero();
        for (m, a) in &self.terms {
            out.accumulate(*m, a.mul(c));
        }
        out
    }

    pub fn scale_rat(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(m, a)| (*m, a.scale(c))).collect() }
    }

    /// Keep only the `z^0` part of every coefficient.
    pub fn classical_part(&self) -> Self {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.accumulate(*m, c.classical_part());
        }
        out
    }

    /// Re-truncate every coefficient to `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.accumulate(*m, c.truncate(order));
        }
        out
    }

    /// Minimum z-valuation across all coefficients; `None` when zero.
    pub fn min_valuation(&self) -> Option<usize> {
        self.terms.values().filter_map(|c| c.valuation()).min()
    }

    /// Divide every coefficient by `z^k`; see `ZSeries::shift_down` for the
    /// headroom caveat.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.accumulate(*m, c.shift_down(k)?);
        }
        Ok(out)
    }

    /// Substitute the deformation parameter `z -> r z'` in every coefficient.
    pub fn rescale_param(&self, r: &Rational) -> Self {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.accumulate(*m, c.rescale_param(r));
        }
        out
    }

    pub fn max_lorentz_degree(&self, alphabet: &Alphabet) -> u32 {
        self.terms.keys().map(|m| m.lorentz_degree(alphabet)).max().unwrap_or(0)
    }
}

/// Bracket table: `[X, Y]` for ranks `rank(X) > rank(Y)`, zero entries
/// omitted. The opposite orientation is implied by antisymmetry.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BracketTable {
    entries: HashMap<(u8, u8), Element>,
}

impl BracketTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, hi: u8, lo: u8, value: Element) {
        assert!(hi > lo, "bracket table keys are (high rank, low rank)");
        if value.is_zero() {
            self.entries.remove(&(hi, lo));
        } else {
            self.entries.insert((hi, lo), value);
        }
    }

    pub fn get(&self, hi: u8, lo: u8) -> Option<&Element> {
        self.entries.get(&(hi, lo))
    }

    /// `[a, b]` for single generators of any relative rank.
    pub fn bracket_of(&self, a: u8, b: u8, order: usize) -> Element {
        use std::cmp::Ordering;
        match a.cmp(&b) {
            Ordering::Equal => Element::zero(),
            Ordering::Greater => self.get(a, b).cloned().unwrap_or_else(Element::zero),
            Ordering::Less => self
                .get(b, a)
                .map(|e| e.neg())
                .unwrap_or_else(Element::zero),
        }
        .truncate(order)
    }

    /// Nonzero entries sorted by key, for deterministic iteration.
    pub fn sorted_entries(&self) -> Vec<((u8, u8), &Element)> {
        let mut v: Vec<_> = self.entries.iter().map(|(k, e)| (*k, e)).collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }
}

/// Multiplicative structure: alphabet plus bracket table.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub alphabet: Arc<Alphabet>,
    pub brackets: BracketTable,
}

/// Evaluation context: the algebra, the truncation order, the rewrite fuel
/// and the straightening memo. Values are immutable; the context is cheap to
/// create, so concurrent verification tasks each own one.
pub struct Context {
    pub algebra: Arc<Algebra>,
    pub order: usize,
    fuel_limit: u64,
    fuel: Cell<u64>,
    memo: RefCell<HashMap<(Mono, u8), Rc<Element>>>,
    strict_order: bool,
}

impl Context {
    pub fn new(algebra: Arc<Algebra>, order: usize) -> Self {
        Self::with_fuel(algebra, order, DEFAULT_FUEL)
    }

    pub fn with_fuel(algebra: Arc<Algebra>, order: usize, fuel_limit: u64) -> Self {
        Context {
            algebra,
            order,
            fuel_limit,
            fuel: Cell::new(fuel_limit),
            memo: RefCell::new(HashMap::new()),
            strict_order: false,
        }
    }

    /// A context that refuses to reorder: any descent is an error. Structure
    /// sections of algebra documents are evaluated in this mode, so a table
    /// entry can never silently assume commutativity of the algebra it is in
    /// the middle of defining.
    pub fn strict_ordered(algebra: Arc<Algebra>, order: usize, fuel_limit: u64) -> Self {
        let mut ctx = Self::with_fuel(algebra, order, fuel_limit);
        ctx.strict_order = true;
        ctx
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.algebra.alphabet
    }

    pub fn one(&self) -> Element {
        Element::unit(self.order)
    }

    pub fn zero(&self) -> Element {
        Element::zero()
    }

    pub fn gen_elem(&self, rank: u8) -> Element {
        Element::of_gen(rank, self.order)
    }

    fn begin_op(&self) {
        self.fuel.set(self.fuel_limit);
    }

    fn step(&self) -> Result<()> {
        let f = self.fuel.get();
        if f == 0 {
            return Err(AlgebraError::FuelExhausted(self.fuel_limit));
        }
        self.fuel.set(f - 1);
        Ok(())
    }

    /// Normal-ordered product of a monomial and a single generator.
    fn mul_mono_gen(&self, m: Mono, g: u8) -> Result<Rc<Element>> {
        if let Some(hit) = self.memo.borrow().get(&(m, g)) {
            return Ok(hit.clone());
        }
        self.step()?;
        let result = match m.highest_rank() {
            None => Element::of_gen(g, self.order),
            Some(x) if x <= g => Element::of_mono(m.with_one(g), self.order),
            Some(x) if self.strict_order => {
                let alpha = &self.algebra.alphabet;
                return Err(AlgebraError::StrictReorder(
                    alpha.name_of(x).to_string(),
                    alpha.name_of(g).to_string(),
                ));
            }
            Some(x) => {
                // m = u·x with rank(x) > rank(g):  m·g = (u·g)·x + u·[x,g]
                let u = m.without_one(x);
                let ug = self.mul_mono_gen(u, g)?;
                let mut acc = self.mul_elem_gen(&ug, x)?;
                let bracket = self.algebra.brackets.bracket_of(x, g, self.order);
                if !bracket.is_zero() {
                    let u_elem = Element::of_mono(u, self.order);
                    acc = acc.add(&self.mul_elem_elem(&u_elem, &bracket)?);
                }
                acc
            }
        };
        let rc = Rc::new(result);
        self.memo.borrow_mut().insert((m, g), rc.clone());
        Ok(rc)
    }

    fn mul_elem_gen(&self, a: &Element, g: u8) -> Result<Element> {
        let mut out = Element::zero();
        for (m, c) in a.iter() {
            let prod = self.mul_mono_gen(*m, g)?;
            for (pm, pc) in prod.iter() {
                out.accumulate(*pm, pc.mul(c));
            }
        }
        Ok(out)
    }

    fn mul_elem_mono(&self, a: &Element, m: &Mono) -> Result<Element> {
        let mut acc = a.clone();
        for g in m.letters() {
            acc = self.mul_elem_gen(&acc, g)?;
        }
        Ok(acc)
    }

    fn mul_elem_elem(&self, a: &Element, b: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (m, c) in b.iter() {
            let partial = self.mul_elem_mono(a, m)?;
            for (pm, pc) in partial.iter() {
                out.accumulate(*pm, pc.mul(c));
            }
        }
        Ok(out)
    }

    /// Canonical normal-ordered product.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.begin_op();
        self.mul_elem_elem(a, b)
    }

    /// `[a, b] = ab - ba`, canonicalized.
    pub fn commutator(&self, a: &Element, b: &Element) -> Result<Element> {
        self.begin_op();
        let ab = self.mul_elem_elem(a, b)?;
        let ba = self.mul_elem_elem(b, a)?;
        Ok(ab.sub(&ba))
    }

    /// Normal order an arbitrary word given as a rank sequence.
    pub fn normal_order_word(&self, word: &[u8]) -> Result<Element> {
        self.begin_op();
        let mut acc = self.one();
        for &g in word {
            acc = self.mul_elem_gen(&acc, g)?;
        }
        Ok(acc)
    }

    pub fn power(&self, a: &Element, n: usize) -> Result<Element> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.multiply(&acc, a)?;
        }
        Ok(acc)
    }

    /// `exp(a)` for `a` with every coefficient of z-valuation >= 1, so the
    /// series terminates at the truncation order.
    pub fn exp_element(&self, a: &Element) -> Result<Element> {
        if let Some(v) = a.min_valuation() {
            if v == 0 {
                return Err(AlgebraError::NonTruncatingExponential);
            }
        }
        let mut acc = self.one();
        let mut term = self.one();
        for n in 1..=self.order {
            term = self.multiply(&term, a)?;
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term.scale_rat(&(rint(1) / crate::scalars::factorial(n))));
        }
        Ok(acc)
    }

    /// Inverse of `u = c·1 + n` with invertible constant `c` and `n` of
    /// z-valuation >= 1 (geometric series, exact under truncation).
    pub fn invert_unit(&self, a: &Element) -> Result<Element> {
        let c0 = a.constant_coeff(self.order);
        let c = c0.coeff(0);
        if c.is_zero() {
            return Err(AlgebraError::NonInvertible);
        }
        let n = a.sub(&Element::of_mono_coeff(Mono::unit(), ZSeries::monomial(self.order, 0, c.clone())));
        if let Some(v) = n.min_valuation() {
            if v == 0 {
                return Err(AlgebraError::NonInvertible);
            }
        }
        let cinv = c.recip();
        let mut acc = self.one().scale_rat(&cinv);
        let mut pow = self.one();
        for k in 1..=self.order {
            pow = self.multiply(&pow, &n)?;
            if pow.is_zero() {
                break;
            }
            let mut scale = cinv.clone();
            for _ in 0..k {
                scale = scale * &cinv * rint(-1);
            }
            acc = acc.add(&pow.scale_rat(&scale));
        }
        Ok(acc)
    }
}

/// Generator-image map extended multiplicatively and linearly; coefficients
/// pick up the parameter relation (source parameter = `param_scale` × target
/// parameter).
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    pub name: String,
    pub source: Arc<Alphabet>,
    pub target: Arc<Algebra>,
    pub images: Vec<Element>,
    pub param_scale: Rational,
}

impl AlgebraMorphism {
    pub fn image_of(&self, rank: u8) -> &Element {
        &self.images[rank as usize]
    }

    /// Apply to an element over the source alphabet; `ctx` must be a context
    /// over the target algebra.
    pub fn apply(&self, ctx: &Context, a: &Element) -> Result<Element> {
        debug_assert!(Arc::ptr_eq(&ctx.algebra.alphabet, &self.target.alphabet));
        let mut out = Element::zero();
        for (m, c) in a.iter() {
            let mut acc = ctx.one();
            for g in m.letters() {
                let img = self
                    .images
                    .get(g as usize)
                    .ok_or_else(|| AlgebraError::UnknownGenerator(format!("rank {g}")))?;
                acc = ctx.multiply(&acc, img)?;
            }
            let rescaled = c.rescale_param(&self.param_scale);
            for (pm, pc) in acc.iter() {
                out.accumulate(*pm, pc.mul(&rescaled));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    /// Tiny two-generator test algebra: [B, A] = C·z with C a third letter,
    /// checking the straightening mechanics in isolation.
    fn toy_algebra() -> Arc<Algebra> {
        let alphabet = Arc::new(Alphabet::new(
            vec![
                Generator { name: "A".into(), lorentz_degree: 0 },
                Generator { name: "C".into(), lorentz_degree: 0 },
                Generator { name: "B".into(), lorentz_degree: 1 },
            ],
            "z",
        ));
        let mut brackets = BracketTable::new();
        brackets.set(2, 0, Element::of_mono_coeff(Mono::of_gen(1), ZSeries::monomial(4, 1, rint(1))));
        Arc::new(Algebra { alphabet, brackets })
    }

    #[test]
    fn unit_laws_and_ordered_products() {
        let ctx = Context::new(toy_algebra(), 4);
        let a = ctx.gen_elem(0);
        let b = ctx.gen_elem(2);
        assert_eq!(ctx.multiply(&ctx.one(), &b).unwrap(), b);
        assert_eq!(ctx.multiply(&a, &ctx.one()).unwrap(), a);
        // A·B is already normal ordered.
        let ab = ctx.multiply(&a, &b).unwrap();
        assert_eq!(ab, Element::of_mono(Mono::of_word(&[0, 2]), 4));
    }

    #[test]
    fn descent_rewrites_with_bracket() {
        let ctx = Context::new(toy_algebra(), 4);
        let a = ctx.gen_elem(0);
        let b = ctx.gen_elem(2);
        // B·A = A·B + z·C
        let ba = ctx.multiply(&b, &a).unwrap();
        let mut expect = Element::of_mono(Mono::of_word(&[0, 2]), 4);
        expect.accumulate(Mono::of_gen(1), ZSeries::monomial(4, 1, rint(1)));
        assert_eq!(ba, expect);
        // the commutator matches the table with both orientations
        assert_eq!(
            ctx.commutator(&b, &a).unwrap(),
            Element::of_mono_coeff(Mono::of_gen(1), ZSeries::monomial(4, 1, rint(1)))
        );
        assert_eq!(
            ctx.commutator(&a, &b).unwrap(),
            Element::of_mono_coeff(Mono::of_gen(1), ZSeries::monomial(4, 1, rint(-1)))
        );
    }

    #[test]
    fn normal_order_is_idempotent() {
        let ctx = Context::new(toy_algebra(), 4);
        let e = ctx.normal_order_word(&[2, 0, 2, 0]).unwrap();
        let mut again = Element::zero();
        for (m, c) in e.iter() {
            let w: Vec<u8> = m.letters().collect();
            let n = ctx.normal_order_word(&w).unwrap();
            for (pm, pc) in n.iter() {
                again.accumulate(*pm, pc.mul(c));
            }
        }
        assert_eq!(e, again);
    }

    #[test]
    fn exp_element_requires_valuation() {
        let ctx = Context::new(toy_algebra(), 4);
        let a = ctx.gen_elem(0);
        assert!(matches!(
            ctx.exp_element(&a),
            Err(AlgebraError::NonTruncatingExponential)
        ));
        let za = a.scale(&ZSeries::monomial(4, 1, rint(1)));
        let e = ctx.exp_element(&za).unwrap();
        let em = ctx.exp_element(&za.neg()).unwrap();
        assert_eq!(ctx.multiply(&e, &em).unwrap(), ctx.one());
        assert_eq!(ctx.exp_element(&ctx.zero()).unwrap(), ctx.one());
    }

    #[test]
    fn invert_unit_round_trip() {
        let ctx = Context::new(toy_algebra(), 4);
        let za = ctx.gen_elem(0).scale(&ZSeries::monomial(4, 1, rat(1, 3)));
        let u = ctx.one().scale_rat(&rint(2)).add(&za);
        let inv = ctx.invert_unit(&u).unwrap();
        assert_eq!(ctx.multiply(&u, &inv).unwrap(), ctx.one());
    }

    #[test]
    fn mono_ordering_degree_then_lex() {
        // P+P+ < P+P1 < P1P1 in word order.
        let pp = Mono::of_word(&[0, 0]);
        let pp1 = Mono::of_word(&[0, 1]);
        let p11 = Mono::of_word(&[1, 1]);
        assert!(pp < pp1 && pp1 < p11);
        assert!(Mono::unit() < Mono::of_gen(9));
        assert!(Mono::of_gen(9) < pp);
    }

    #[test]
    fn fuel_exhaustion_is_an_error() {
        let ctx = Context::with_fuel(toy_algebra(), 4, 3);
        let b = ctx.gen_elem(2);
        let b4 = Element::of_mono(Mono::pow_of(2, 4), 4);
        let a4 = Element::of_mono(Mono::pow_of(0, 4), 4);
        assert!(matches!(
            ctx.multiply(&b4, &a4),
            Err(AlgebraError::FuelExhausted(3))
        ));
        let _ = b;
    }
}
