//! Second and third tensor powers of the algebra: leg-wise products, the
//! flip map, leg embeddings and leg-wise application of algebra maps.
//!
//! Legs never interact: `tensor_mul` multiplies leg-wise and each leg is
//! independently normal ordered.

use std::collections::BTreeMap;

use crate::ncpoly::{AlgebraError, Context, Element, Mono, Result};
use crate::scalars::{rint, Rational, ZSeries};

/// Key of one tensor term: one monomial per leg, unused legs pinned to the
/// unit monomial.
pub type TensorMono = [Mono; 3];

fn unit_key() -> TensorMono {
    [Mono::unit(), Mono::unit(), Mono::unit()]
}

/// Element of the 2nd or 3rd tensor power of the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeMap<TensorMono, ZSeries>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        assert!(arity == 2 || arity == 3);
        TensorElement { arity, terms: BTreeMap::new() }
    }

    pub fn unit(arity: usize, order: usize) -> Self {
        let mut t = Self::zero(arity);
        t.accumulate(unit_key(), ZSeries::one(order));
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
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

    pub fn iter(&self) -> impl Iterator<Item = (&TensorMono, &ZSeries)> {
        self.terms.iter()
    }

    pub fn accumulate(&mut self, key: TensorMono, c: ZSeries) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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
        debug_assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TensorElement {
            arity: self.arity,
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &ZSeries) -> Self {
        let mut out = Self::zero(self.arity);
        for (k, a) in &self.terms {
            out.accumulate(*k, a.mul(c));
        }
        out
    }

    pub fn scale_rat(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.arity);
        for (k, a) in &self.terms {
            out.accumulate(*k, a.scale(c));
        }
        out
    }

    pub fn classical_part(&self) -> Self {
        let mut out = Self::zero(self.arity);
        for (k, c) in &self.terms {
            out.accumulate(*k, c.classical_part());
        }
        out
    }

    pub fn min_valuation(&self) -> Option<usize> {
        self.terms.values().filter_map(|c| c.valuation()).min()
    }

    /// Substitute the deformation parameter in every coefficient.
    pub fn rescale_param(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.arity);
        for (k, c) in &self.terms {
            out.accumulate(*k, c.rescale_param(r));
        }
        out
    }

    /// Pure tensor of elements (outer product), one per leg.
    pub fn of_elements(legs: &[&Element], order: usize) -> Self {
        assert!(legs.len() == 2 || legs.len() == 3);
        let mut out = Self::zero(legs.len());
        let mut stack: Vec<(TensorMono, ZSeries)> = vec![(unit_key(), ZSeries::one(order))];
        for (i, leg) in legs.iter().enumerate() {
            let mut next = Vec::new();
            for (key, c) in &stack {
                for (m, mc) in leg.iter() {
                    let mut k = *key;
                    k[i] = *m;
                    next.push((k, c.mul(mc)));
                }
            }
            stack = next;
        }
        for (k, c) in stack {
            out.accumulate(k, c);
        }
        out
    }

    pub fn tensor2(a: &Element, b: &Element, order: usize) -> Self {
        Self::of_elements(&[a, b], order)
    }

    /// Extract the leg monomial tuple as owned monomials (for arity 2).
    pub fn legs2(key: &TensorMono) -> (Mono, Mono) {
        (key[0], key[1])
    }
}

/// Leg-wise normal-ordered product `(x⊗y)(u⊗v) = xu ⊗ yv`.
pub fn tensor_mul(ctx: &Context, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
    if a.arity() != b.arity() {
        return Err(AlgebraError::ArityMismatch(a.arity(), b.arity()));
    }
    let arity = a.arity();
    let mut out = TensorElement::zero(arity);
    for (ka, ca) in a.iter() {
        for (kb, cb) in b.iter() {
            let coeff = ca.mul(cb);
            if coeff.is_zero() {
                continue;
            }
            let mut legs: Vec<Element> = Vec::with_capacity(arity);
            for l in 0..arity {
                let e = ctx.multiply(
                    &Element::of_mono(ka[l], ctx.order),
                    &Element::of_mono(kb[l], ctx.order),
                )?;
                legs.push(e);
            }
            distribute(&mut out, &legs, &coeff);
        }
    }
    Ok(out)
}

fn distribute(out: &mut TensorElement, legs: &[Element], coeff: &ZSeries) {
    let arity = legs.len();
    let mut stack: Vec<(TensorMono, ZSeries)> = vec![(unit_key(), coeff.clone())];
    for (i, leg) in legs.iter().enumerate() {
        let mut next = Vec::with_capacity(stack.len() * leg.len().max(1));
        for (key, c) in &stack {
            for (m, mc) in leg.iter() {
                let prod = c.mul(mc);
                if prod.is_zero() {
                    continue;
                }
                let mut k = *key;
                k[i] = *m;
                next.push((k, prod));
            }
        }
        stack = next;
    }
    let _ = arity;
    for (k, c) in stack {
        out.accumulate(k, c);
    }
}

/// Exchange the two legs of an arity-2 tensor.
pub fn flip(a: &TensorElement) -> Result<TensorElement> {
    if a.arity() != 2 {
        return Err(AlgebraError::ArityMismatch(a.arity(), 2));
    }
    let mut out = TensorElement::zero(2);
    for (k, c) in a.iter() {
        out.accumulate([k[1], k[0], Mono::unit()], c.clone());
    }
    Ok(out)
}

/// Which pair of legs an arity-2 tensor occupies inside an arity-3 space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LegPair {
    L12,
    L13,
    L23,
}

impl LegPair {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "12" => Ok(LegPair::L12),
            "13" => Ok(LegPair::L13),
            "23" => Ok(LegPair::L23),
            _ => Err(AlgebraError::BadLeg),
        }
    }
}

/// Insert the unit in the omitted leg: `embed(x⊗y, 13) = x⊗1⊗y`.
pub fn embed(a: &TensorElement, legs: LegPair) -> Result<TensorElement> {
    if a.arity() != 2 {
        return Err(AlgebraError::ArityMismatch(a.arity(), 2));
    }
    let mut out = TensorElement::zero(3);
    for (k, c) in a.iter() {
        let key = match legs {
            LegPair::L12 => [k[0], k[1], Mono::unit()],
            LegPair::L13 => [k[0], Mono::unit(), k[1]],
            LegPair::L23 => [Mono::unit(), k[0], k[1]],
        };
        out.accumulate(key, c.clone());
    }
    Ok(out)
}

/// Apply an algebra-valued map to one leg (arity preserved).
pub fn apply_alg_on_leg(
    a: &TensorElement,
    leg: usize,
    mut f: impl FnMut(&Mono) -> Result<Element>,
) -> Result<TensorElement> {
    if leg >= a.arity() {
        return Err(AlgebraError::BadLeg);
    }
    let mut out = TensorElement::zero(a.arity());
    for (k, c) in a.iter() {
        let image = f(&k[leg])?;
        for (m, mc) in image.iter() {
            let mut key = *k;
            key[leg] = *m;
            out.accumulate(key, c.mul(mc));
        }
    }
    Ok(out)
}

/// Apply a coproduct-valued map to one leg of an arity-2 tensor, producing
/// arity 3.
pub fn apply_cop_on_leg(
    a: &TensorElement,
    leg: usize,
    mut f: impl FnMut(&Mono) -> Result<TensorElement>,
) -> Result<TensorElement> {
    if a.arity() != 2 || leg >= 2 {
        return Err(AlgebraError::BadLeg);
    }
    let mut out = TensorElement::zero(3);
    for (k, c) in a.iter() {
        let image = f(&k[leg])?;
        debug_assert_eq!(image.arity(), 2);
        for (ik, ic) in image.iter() {
            let key = if leg == 0 {
                [ik[0], ik[1], k[1]]
            } else {
                [k[0], ik[0], ik[1]]
            };
            out.accumulate(key, c.mul(ic));
        }
    }
    Ok(out)
}

/// Contract one leg with a scalar-valued map (a counit), reducing an arity-2
/// tensor to an element.
pub fn apply_counit_on_leg(
    a: &TensorElement,
    leg: usize,
    mut f: impl FnMut(&Mono) -> Result<ZSeries>,
) -> Result<Element> {
    if a.arity() != 2 || leg >= 2 {
        return Err(AlgebraError::BadLeg);
    }
    let other = 1 - leg;
    let mut out = Element::zero();
    for (k, c) in a.iter() {
        let s = f(&k[leg])?;
        if s.is_zero() {
            continue;
        }
        out.accumulate(k[other], c.mul(&s));
    }
    Ok(out)
}

/// Multiply all legs together (the multiplication map `m` or `m(m⊗id)`).
pub fn contract_legs(ctx: &Context, a: &TensorElement) -> Result<Element> {
    let mut out = Element::zero();
    for (k, c) in a.iter() {
        let mut acc = Element::of_mono(k[0], ctx.order);
        for l in 1..a.arity() {
            acc = ctx.multiply(&acc, &Element::of_mono(k[l], ctx.order))?;
        }
        for (m, mc) in acc.iter() {
            out.accumulate(*m, mc.mul(c));
        }
    }
    Ok(out)
}

/// Apply an algebra morphism to every leg; the term coefficient picks up the
/// parameter relation once, the leg images are already target-side.
pub fn apply_morphism_legwise(
    m: &crate::ncpoly::AlgebraMorphism,
    ctx: &Context,
    t: &TensorElement,
) -> Result<TensorElement> {
    let mut out = TensorElement::zero(t.arity());
    for (k, c) in t.iter() {
        let mut legs = Vec::with_capacity(t.arity());
        for l in 0..t.arity() {
            legs.push(m.apply(ctx, &Element::of_mono(k[l], ctx.order))?);
        }
        distribute(&mut out, &legs, &c.rescale_param(&m.param_scale));
    }
    Ok(out)
}

/// `exp(t)` for a tensor whose coefficients all have z-valuation >= 1.
pub fn exp_tensor(ctx: &Context, t: &TensorElement) -> Result<TensorElement> {
    if let Some(v) = t.min_valuation() {
        if v == 0 {
            return Err(AlgebraError::NonTruncatingExponential);
        }
    }
    let mut acc = TensorElement::unit(t.arity(), ctx.order);
    let mut term = TensorElement::unit(t.arity(), ctx.order);
    for n in 1..=ctx.order {
        term = tensor_mul(ctx, &term, t)?;
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term.scale_rat(&(rint(1) / crate::scalars::factorial(n))));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::{Algebra, Alphabet, BracketTable, Generator};
    use std::sync::Arc;

    fn abelian_ctx() -> Context {
        let alphabet = Arc::new(Alphabet::new(
            vec![
                Generator { name: "X".into(), lorentz_degree: 0 },
                Generator { name: "Y".into(), lorentz_degree: 0 },
            ],
            "z",
        ));
        Context::new(Arc::new(Algebra { alphabet, brackets: BracketTable::new() }), 3)
    }

    #[test]
    fn unit_and_legwise_products() {
        let ctx = abelian_ctx();
        let x = ctx.gen_elem(0);
        let y = ctx.gen_elem(1);
        let t = TensorElement::tensor2(&x, &y, ctx.order);
        let unit = TensorElement::unit(2, ctx.order);
        assert_eq!(tensor_mul(&ctx, &unit, &t).unwrap(), t);
        let t2 = tensor_mul(&ctx, &t, &t).unwrap();
        let xx = ctx.multiply(&x, &x).unwrap();
        let yy = ctx.multiply(&y, &y).unwrap();
        assert_eq!(t2, TensorElement::tensor2(&xx, &yy, ctx.order));
    }

    #[test]
    fn flip_is_an_involution() {
        let ctx = abelian_ctx();
        let x = ctx.gen_elem(0);
        let one = ctx.one();
        let t = TensorElement::tensor2(&x, &one, ctx.order);
        let f = flip(&t).unwrap();
        assert_eq!(f, TensorElement::tensor2(&one, &x, ctx.order));
        assert_eq!(flip(&f).unwrap(), t);
    }

    #[test]
    fn embed_slots() {
        let ctx = abelian_ctx();
        let x = ctx.gen_elem(0);
        let y = ctx.gen_elem(1);
        let t = TensorElement::tensor2(&x, &y, ctx.order);
        let ko = Mono::of_gen(0);
        let ky = Mono::of_gen(1);
        let u = Mono::unit();
        let e12 = embed(&t, LegPair::L12).unwrap();
        assert_eq!(e12.iter().next().unwrap().0, &[ko, ky, u]);
        let e13 = embed(&t, LegPair::L13).unwrap();
        assert_eq!(e13.iter().next().unwrap().0, &[ko, u, ky]);
        let e23 = embed(&t, LegPair::L23).unwrap();
        assert_eq!(e23.iter().next().unwrap().0, &[u, ko, ky]);
        // embedding respects products
        let prod = tensor_mul(&ctx, &t, &t).unwrap();
        assert_eq!(
            embed(&prod, LegPair::L13).unwrap(),
            tensor_mul(&ctx, &e13, &e13).unwrap()
        );
    }
}
