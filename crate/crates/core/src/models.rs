//! Concrete constructors for every presentation, morphism, Casimir and the
//! universal R-matrix, plus the checks that tie them together.
//!
//! Table entries are transcribed literally in the operator order they are
//! written in, then canonicalized by the rewriting engine. Mixed
//! (Lorentz, translation) brackets only involve translation polynomials on
//! the right-hand side and are constructed first; the Lorentz–Lorentz
//! entries, whose right-hand sides contain genuine reorderings, are then
//! built with the partial table in force.

use std::sync::Arc;

use crate::hopfdef::{
    check_antipode, check_coassociativity, check_coproduct_homomorphism, check_counit,
    check_jacobi, enumerate_mutants, CheckReport, HopfContext, HopfPresentation, ReportBuilder,
};
use crate::ncpoly::{
    Algebra, AlgebraMorphism, Alphabet, Context, Element, Generator, Mono, Result,
};
use crate::scalars::{factorial, rat, rint, Rational, ZSeries};
use crate::tensorspace::{
    apply_morphism_legwise, embed, exp_tensor, flip, tensor_mul, LegPair, TensorElement,
};
use num_traits::Zero;

// Null-plane generator ranks. Translations first, so every bracket
// right-hand side strictly lowers the Lorentz degree of a swapped pair.
pub const PP: u8 = 0;
pub const P1: u8 = 1;
pub const P2: u8 = 2;
pub const PM: u8 = 3;
pub const E1: u8 = 4;
pub const E2: u8 = 5;
pub const J3: u8 = 6;
pub const K3: u8 = 7;
pub const F1: u8 = 8;
pub const F2: u8 = 9;

pub const TRANSLATIONS: [u8; 4] = [PP, P1, P2, PM];
pub const LORENTZ: [u8; 6] = [E1, E2, J3, K3, F1, F2];

fn nullplane_alphabet(names: [&str; 10], param: &str) -> Arc<Alphabet> {
    let gens = names
        .iter()
        .enumerate()
        .map(|(i, n)| Generator {
            name: n.to_string(),
            lorentz_degree: if i < 4 { 0 } else { 1 },
        })
        .collect();
    Arc::new(Alphabet::new(gens, param))
}

fn plain_names() -> [&'static str; 10] {
    ["P+", "P1", "P2", "P-", "E1", "E2", "J3", "K3", "F1", "F2"]
}

fn tilde_names() -> [&'static str; 10] {
    ["P+~", "P1~", "P2~", "P-~", "E1~", "E2~", "J3~", "K3~", "F1~", "F2~"]
}

fn kinematical_names() -> [&'static str; 10] {
    ["H", "P1", "P2", "P3", "K1", "K2", "K3", "J1", "J2", "J3"]
}

// ---------------------------------------------------------------------------
// element builders

fn zmono(order: usize, k: usize, c: Rational) -> ZSeries {
    ZSeries::monomial(order, k, c)
}

/// Σ_n coeff(n) · z^{n+shift} · g^n, exact at every order up to the
/// truncation. `shift = -1` realizes the symbolic quotients by z whose
/// constant term cancels.
fn gen_series(
    order: usize,
    g: u8,
    shift: i64,
    coeff: impl Fn(usize) -> Rational,
) -> Element {
    let mut e = Element::zero();
    let mut n = 0usize;
    loop {
        let p = n as i64 + shift;
        if p > order as i64 {
            break;
        }
        if p >= 0 {
            let c = coeff(n);
            if !c.is_zero() {
                e.accumulate(Mono::pow_of(g, n as u8), zmono(order, p as usize, c));
            }
        }
        n += 1;
    }
    e
}

fn pow_rat(c: &Rational, n: usize) -> Rational {
    let mut acc = rint(1);
    for _ in 0..n {
        acc *= c;
    }
    acc
}

/// `exp(c z g)` expanded.
pub fn exp_zgen(order: usize, c: Rational, g: u8) -> Element {
    gen_series(order, g, 0, |n| pow_rat(&c, n) / factorial(n))
}

/// `exp(c z g) - 1`.
pub fn expm1_zgen(order: usize, c: Rational, g: u8) -> Element {
    gen_series(order, g, 0, |n| {
        if n == 0 {
            Rational::zero()
        } else {
            pow_rat(&c, n) / factorial(n)
        }
    })
}

/// `(exp(c z g) - 1)/z`, exact to the truncation order.
pub fn expm1_over_z(order: usize, c: Rational, g: u8) -> Element {
    gen_series(order, g, -1, |n| {
        if n == 0 {
            Rational::zero()
        } else {
            pow_rat(&c, n) / factorial(n)
        }
    })
}

/// `cosh(c z g)`.
pub fn cosh_zgen(order: usize, c: Rational, g: u8) -> Element {
    gen_series(order, g, 0, |n| {
        if n % 2 == 0 {
            pow_rat(&c, n) / factorial(n)
        } else {
            Rational::zero()
        }
    })
}

/// `sinh(c z g)`.
pub fn sinh_zgen(order: usize, c: Rational, g: u8) -> Element {
    gen_series(order, g, 0, |n| {
        if n % 2 == 1 {
            pow_rat(&c, n) / factorial(n)
        } else {
            Rational::zero()
        }
    })
}

/// `sinh(c z g)/z`, exact to the truncation order.
pub fn sinh_over_z(order: usize, c: Rational, g: u8) -> Element {
    gen_series(order, g, -1, |n| {
        if n % 2 == 1 {
            pow_rat(&c, n) / factorial(n)
        } else {
            Rational::zero()
        }
    })
}

fn gen(ctx: &Context, r: u8) -> Element {
    ctx.gen_elem(r)
}

fn mul2(ctx: &Context, a: &Element, b: &Element) -> Result<Element> {
    ctx.multiply(a, b)
}

fn mul3(ctx: &Context, a: &Element, b: &Element, c: &Element) -> Result<Element> {
    ctx.multiply(&ctx.multiply(a, b)?, c)
}

fn scale_z(e: &Element, order: usize, k: usize, c: Rational) -> Element {
    e.scale(&zmono(order, k, c))
}

// ---------------------------------------------------------------------------
// bracket tables

/// Classical Lorentz sector brackets, shared by the classical and
/// bicrossproduct presentations.
fn lorentz_classical_entries(order: usize) -> Vec<((u8, u8), Element)> {
    let g = |r: u8| Element::of_gen(r, order);
    vec![
        ((K3, E1), g(E1)),
        ((K3, E2), g(E2)),
        ((F1, K3), g(F1)),
        ((F2, K3), g(F2)),
        ((J3, E1), g(E2).neg()),
        ((J3, E2), g(E1)),
        ((F1, J3), g(F2)),
        ((F2, J3), g(F1).neg()),
        ((F1, E1), g(K3).neg()),
        ((F2, E2), g(K3).neg()),
        ((F2, E1), g(J3).neg()),
        ((F1, E2), g(J3)),
    ]
}

/// Classical null-plane presentation: primitive coproducts, zero counit,
/// antipode X -> -X.
pub fn build_classical(order: usize) -> Result<HopfPresentation> {
    let alphabet = nullplane_alphabet(plain_names(), "z");
    let g = |r: u8| Element::of_gen(r, order);
    let mut table = crate::ncpoly::BracketTable::new();
    for ((hi, lo), e) in lorentz_classical_entries(order) {
        table.set(hi, lo, e);
    }
    let mixed: Vec<((u8, u8), Element)> = vec![
        ((K3, PP), g(PP)),
        ((K3, PM), g(PM).neg()),
        ((J3, P1), g(P2).neg()),
        ((J3, P2), g(P1)),
        ((E1, P1), g(PP)),
        ((E2, P2), g(PP)),
        ((E1, PM), g(P1)),
        ((E2, PM), g(P2)),
        ((F1, P1), g(PM)),
        ((F2, P2), g(PM)),
        ((F1, PP), g(P1)),
        ((F2, PP), g(P2)),
    ];
    for ((hi, lo), e) in mixed {
        table.set(hi, lo, e);
    }
    let algebra = Arc::new(Algebra { alphabet, brackets: table });
    let mut coproduct = Vec::new();
    let mut counit = Vec::new();
    let mut antipode = Vec::new();
    for r in 0..10u8 {
        coproduct.push(primitive(order, r));
        counit.push(ZSeries::zero(order));
        antipode.push(Element::of_gen(r, order).neg());
    }
    Ok(HopfPresentation {
        name: "classical".into(),
        algebra,
        order,
        coproduct,
        counit,
        antipode,
    })
}

fn primitive(order: usize, r: u8) -> TensorElement {
    let g = Element::of_gen(r, order);
    let one = Element::unit(order);
    TensorElement::tensor2(&g, &one, order).add(&TensorElement::tensor2(&one, &g, order))
}

/// Deformed null-plane presentation in the original (tilde) basis.
pub fn build_tilde(order: usize) -> Result<HopfPresentation> {
    let alphabet = nullplane_alphabet(tilde_names(), "zt");
    let g = |r: u8| Element::of_gen(r, order);
    let cosh = cosh_zgen(order, rint(1), PP);
    let sinh = sinh_zgen(order, rint(1), PP);
    let sinh_z = sinh_over_z(order, rint(1), PP);

    // mixed sector: right-hand sides are translation polynomials
    let mut table = crate::ncpoly::BracketTable::new();
    let times_pm = |e: &Element| {
        // translations mutually commute, a direct monomial merge is exact
        let mut out = Element::zero();
        for (m, c) in e.iter() {
            out.accumulate(m.commuting_product(&Mono::of_gen(PM)), c.clone());
        }
        out
    };
    table.set(K3, PP, sinh_z.clone());
    table.set(K3, PM, times_pm(&cosh).neg());
    table.set(J3, P1, g(P2).neg());
    table.set(J3, P2, g(P1));
    table.set(E1, P1, sinh_z.clone());
    table.set(E2, P2, sinh_z.clone());
    table.set(E1, PM, g(P1));
    table.set(E2, PM, g(P2));
    table.set(F1, P1, times_pm(&cosh));
    table.set(F2, P2, times_pm(&cosh));
    table.set(F1, PP, g(P1));
    table.set(F2, PP, g(P2));

    // Lorentz sector: straighten the literal products against the partial
    // table (only mixed brackets are consulted).
    let partial = Arc::new(Algebra { alphabet: alphabet.clone(), brackets: table });
    let ctx = Context::new(partial.clone(), order);
    let wtilde = wtilde_plus_with(&ctx)?;
    let mut table = partial.brackets.clone();
    table.set(K3, E1, mul2(&ctx, &g(E1), &cosh)?);
    table.set(K3, E2, mul2(&ctx, &g(E2), &cosh)?);
    // [K3~,F1~] = -F1~ cosh + zt E1~ P-~ sinh - zt^2 P2~ W+~
    let k3f1 = mul2(&ctx, &g(F1), &cosh)?
        .neg()
        .add(&scale_z(&mul3(&ctx, &g(E1), &g(PM), &sinh)?, order, 1, rint(1)))
        .add(&scale_z(&mul2(&ctx, &g(P2), &wtilde)?, order, 2, rint(-1)));
    table.set(F1, K3, k3f1.neg());
    let k3f2 = mul2(&ctx, &g(F2), &cosh)?
        .neg()
        .add(&scale_z(&mul3(&ctx, &g(E2), &g(PM), &sinh)?, order, 1, rint(1)))
        .add(&scale_z(&mul2(&ctx, &g(P1), &wtilde)?, order, 2, rint(1)));
    table.set(F2, K3, k3f2.neg());
    table.set(J3, E1, g(E2).neg());
    table.set(J3, E2, g(E1));
    table.set(F1, J3, g(F2));
    table.set(F2, J3, g(F1).neg());
    let j3cosh = mul2(&ctx, &g(J3), &cosh)?;
    table.set(F1, E1, g(K3).neg());
    table.set(F2, E2, g(K3).neg());
    table.set(F2, E1, j3cosh.neg());
    table.set(F1, E2, j3cosh.clone());
    // [F1~,F2~] = zt^2 P-~ W+~ + zt P-~ J3~ sinh
    let f1f2 = scale_z(&mul2(&ctx, &g(PM), &wtilde)?, order, 2, rint(1))
        .add(&scale_z(&mul3(&ctx, &g(PM), &g(J3), &sinh)?, order, 1, rint(1)));
    table.set(F2, F1, f1f2.neg());

    let algebra = Arc::new(Algebra { alphabet, brackets: table });
    let ctx = Context::new(algebra.clone(), order);

    let em = exp_zgen(order, rint(-1), PP);
    let ep = exp_zgen(order, rint(1), PP);
    let mut coproduct: Vec<TensorElement> = Vec::new();
    let push_two_sided = |coproduct: &mut Vec<TensorElement>, r: u8| {
        coproduct.push(
            TensorElement::tensor2(&em, &g(r), order)
                .add(&TensorElement::tensor2(&g(r), &ep, order)),
        );
    };
    // P+~
    coproduct.push(primitive(order, PP));
    // P1~, P2~, P-~ sit at ranks 1,2,3
    push_two_sided(&mut coproduct, P1);
    push_two_sided(&mut coproduct, P2);
    push_two_sided(&mut coproduct, PM);
    coproduct.push(primitive(order, E1));
    coproduct.push(primitive(order, E2));
    coproduct.push(primitive(order, J3));
    // deformed tails: zt e^{-zt P+~} A ⊗ B  -  zt B ⊗ A e^{zt P+~}
    let tail = |a: u8, b: u8, sign: Rational| -> Result<TensorElement> {
        let left = mul2(&ctx, &em, &g(a))?;
        let right = mul2(&ctx, &g(a), &ep)?;
        Ok(TensorElement::tensor2(&left, &g(b), order)
            .scale(&zmono(order, 1, sign.clone()))
            .add(
                &TensorElement::tensor2(&g(b), &right, order)
                    .scale(&zmono(order, 1, -sign)),
            ))
    };
    let base = |r: u8| -> TensorElement {
        TensorElement::tensor2(&em, &g(r), order)
            .add(&TensorElement::tensor2(&g(r), &ep, order))
    };
    // ranks: J3=6, K3=7, F1=8, F2=9
    coproduct.push(base(K3).add(&tail(E1, P1, rint(1))?).add(&tail(E2, P2, rint(1))?));
    coproduct.push(base(F1).add(&tail(E1, PM, rint(1))?).add(&tail(J3, P2, rint(1))?));
    coproduct.push(base(F2).add(&tail(E2, PM, rint(1))?).add(&tail(J3, P1, rint(-1))?));

    let counit = vec![ZSeries::zero(order); 10];
    // antipode as written: conjugation by exp(3 zt P+~)
    let antipode = tilde_antipode_conjugation(&ctx, 3)?;

    Ok(HopfPresentation {
        name: "tilde".into(),
        algebra,
        order,
        coproduct,
        counit,
        antipode,
    })
}

/// γ(X) = -exp(c zt P+~) X exp(-c zt P+~), the tilde antipode with a
/// configurable conjugation exponent (the table is printed with c = 3).
pub fn tilde_antipode_conjugation(ctx: &Context, c: i64) -> Result<Vec<Element>> {
    let e_plus = exp_zgen(ctx.order, rint(c), PP);
    let e_minus = exp_zgen(ctx.order, rint(-c), PP);
    let mut out = Vec::new();
    for r in 0..10u8 {
        let conj = mul3(ctx, &e_plus, &gen(ctx, r), &e_minus)?;
        out.push(conj.neg());
    }
    Ok(out)
}

/// Bicrossproduct-basis presentation.
pub fn build_bicross(order: usize) -> Result<HopfPresentation> {
    let alphabet = nullplane_alphabet(plain_names(), "z");
    let g = |r: u8| Element::of_gen(r, order);
    let em = exp_zgen(order, rint(-1), PP);
    let ep = exp_zgen(order, rint(1), PP);

    let mut table = crate::ncpoly::BracketTable::new();
    for ((hi, lo), e) in lorentz_classical_entries(order) {
        table.set(hi, lo, e);
    }
    let times = |e: &Element, r: u8| {
        // translation-only product, exact as a monomial merge
        let mut out = Element::zero();
        for (m, c) in e.iter() {
            out.accumulate(m.commuting_product(&Mono::of_gen(r)), c.clone());
        }
        out
    };
    // (z/2)(P1^2 + P2^2)
    let half_z_psq = {
        let mut e = Element::zero();
        e.accumulate(Mono::of_word(&[P1, P1]), zmono(order, 1, rat(1, 2)));
        e.accumulate(Mono::of_word(&[P2, P2]), zmono(order, 1, rat(1, 2)));
        e
    };
    table.set(K3, PP, expm1_over_z(order, rint(-1), PP).neg());
    table.set(K3, PM, g(PM).neg().sub(&half_z_psq));
    table.set(K3, P1, times(&expm1_zgen(order, rint(-1), PP), P1));
    table.set(K3, P2, times(&expm1_zgen(order, rint(-1), PP), P2));
    table.set(J3, P1, g(P2).neg());
    table.set(J3, P2, g(P1));
    table.set(E1, P1, expm1_over_z(order, rint(-1), PP).neg());
    table.set(E2, P2, expm1_over_z(order, rint(-1), PP).neg());
    table.set(E1, PM, g(P1));
    table.set(E2, PM, g(P2));
    table.set(F1, PP, g(P1));
    table.set(F2, PP, g(P2));
    let zp1pm = {
        let mut e = Element::zero();
        e.accumulate(Mono::of_word(&[P1, PM]), zmono(order, 1, rint(1)));
        e
    };
    let zp2pm = {
        let mut e = Element::zero();
        e.accumulate(Mono::of_word(&[P2, PM]), zmono(order, 1, rint(1)));
        e
    };
    table.set(F1, PM, zp1pm.neg());
    table.set(F2, PM, zp2pm.neg());
    // [Fi,Pj] = -z Pi Pj + δij (e^{-zP+} P- + (z/2)(P1^2+P2^2))
    let delta_part = times(&em, PM).add(&half_z_psq);
    let zpp = |a: u8, b: u8| {
        let mut e = Element::zero();
        e.accumulate(Mono::of_word(&[a, b]), zmono(order, 1, rint(1)));
        e
    };
    table.set(F1, P1, zpp(P1, P1).neg().add(&delta_part));
    table.set(F2, P2, zpp(P2, P2).neg().add(&delta_part));
    table.set(F1, P2, zpp(P1, P2).neg());
    table.set(F2, P1, zpp(P2, P1).neg());

    let algebra = Arc::new(Algebra { alphabet, brackets: table });
    let ctx = Context::new(algebra.clone(), order);

    let one = Element::unit(order);
    let mut coproduct: Vec<TensorElement> = Vec::new();
    coproduct.push(primitive(order, PP));
    let left_exp = |r: u8| {
        TensorElement::tensor2(&em, &g(r), order)
            .add(&TensorElement::tensor2(&g(r), &one, order))
    };
    coproduct.push(left_exp(P1));
    coproduct.push(left_exp(P2));
    coproduct.push(left_exp(PM));
    coproduct.push(primitive(order, E1));
    coproduct.push(primitive(order, E2));
    coproduct.push(primitive(order, J3));
    let pair = |a: u8, b: u8, sign: Rational| {
        TensorElement::tensor2(&g(a), &g(b), order).scale(&zmono(order, 1, sign))
    };
    coproduct.push(
        left_exp(K3)
            .add(&pair(P1, E1, rint(-1)))
            .add(&pair(P2, E2, rint(-1))),
    );
    coproduct.push(
        left_exp(F1)
            .add(&pair(PM, E1, rint(-1)))
            .add(&pair(P2, J3, rint(-1))),
    );
    coproduct.push(
        left_exp(F2)
            .add(&pair(PM, E2, rint(-1)))
            .add(&pair(P1, J3, rint(1))),
    );

    let counit = vec![ZSeries::zero(order); 10];

    let mut antipode: Vec<Element> = Vec::new();
    antipode.push(g(PP).neg());
    antipode.push(mul2(&ctx, &ep, &g(P1))?.neg());
    antipode.push(mul2(&ctx, &ep, &g(P2))?.neg());
    antipode.push(mul2(&ctx, &ep, &g(PM))?.neg());
    antipode.push(g(E1).neg());
    antipode.push(g(E2).neg());
    antipode.push(g(J3).neg());
    let inner = |a: u8, b: u8, sign: Rational| -> Result<Element> {
        Ok(scale_z(&mul2(&ctx, &g(a), &g(b))?, order, 1, sign))
    };
    let k3_inner = g(K3)
        .add(&inner(P1, E1, rint(1))?)
        .add(&inner(P2, E2, rint(1))?);
    let f1_inner = g(F1)
        .add(&inner(PM, E1, rint(1))?)
        .add(&inner(P2, J3, rint(1))?);
    let f2_inner = g(F2)
        .add(&inner(PM, E2, rint(1))?)
        .add(&inner(P1, J3, rint(-1))?);
    let gamma_k3 = mul2(&ctx, &ep, &k3_inner)?.neg();
    let gamma_f1 = mul2(&ctx, &ep, &f1_inner)?.neg();
    let gamma_f2 = mul2(&ctx, &ep, &f2_inner)?.neg();
    antipode.push(gamma_k3);
    antipode.push(gamma_f1);
    antipode.push(gamma_f2);

    Ok(HopfPresentation {
        name: "bicross".into(),
        algebra,
        order,
        coproduct,
        counit,
        antipode,
    })
}

/// Kinematical presentation: the classical Poincaré algebra in the
/// energy–momentum/boost/rotation basis, obtained by transporting the
/// null-plane table through the linear change of basis.
pub fn build_kinematical(order: usize) -> Result<HopfPresentation> {
    let classical = build_classical(order)?;
    let (to_kin, from_kin) = build_kinematical_maps(order)?;
    let cctx = Context::new(classical.algebra.clone(), order);

    let kin_alpha = to_kin.target.alphabet.clone();
    let mut table = crate::ncpoly::BracketTable::new();
    let kin_ctx_dummy = Context::new(to_kin.target.clone(), order);
    for hi in 0..10u8 {
        for lo in 0..hi {
            let a = from_kin.image_of(hi);
            let b = from_kin.image_of(lo);
            let br = cctx.commutator(a, b)?;
            let transported = to_kin.apply(&kin_ctx_dummy, &br)?;
            if !transported.is_zero() {
                table.set(hi, lo, transported);
            }
        }
    }
    let algebra = Arc::new(Algebra { alphabet: kin_alpha, brackets: table });
    let mut coproduct = Vec::new();
    let mut counit = Vec::new();
    let mut antipode = Vec::new();
    for r in 0..10u8 {
        coproduct.push(primitive(order, r));
        counit.push(ZSeries::zero(order));
        antipode.push(Element::of_gen(r, order).neg());
    }
    Ok(HopfPresentation {
        name: "kinematical".into(),
        algebra,
        order,
        coproduct,
        counit,
        antipode,
    })
}

// ---------------------------------------------------------------------------
// morphisms

/// The linear change between the null-plane basis and the kinematical basis:
/// returns (null-plane -> kinematical, kinematical -> null-plane).
pub fn build_kinematical_maps(order: usize) -> Result<(AlgebraMorphism, AlgebraMorphism)> {
    let np_alpha = nullplane_alphabet(plain_names(), "z");
    let kin_alpha = nullplane_alphabet(kinematical_names(), "z");
    // transport target with an empty table: all images are degree one, so no
    // straightening is ever needed to apply these maps
    let kin_algebra = Arc::new(Algebra {
        alphabet: kin_alpha.clone(),
        brackets: crate::ncpoly::BracketTable::new(),
    });
    let np_algebra = Arc::new(Algebra {
        alphabet: np_alpha.clone(),
        brackets: crate::ncpoly::BracketTable::new(),
    });
    let g = |r: u8| Element::of_gen(r, order);
    let half = rat(1, 2);

    const H: u8 = 0;
    const KP1: u8 = 1;
    const KP2: u8 = 2;
    const P3: u8 = 3;
    const K1: u8 = 4;
    const K2: u8 = 5;
    const KK3: u8 = 6;
    const J1: u8 = 7;
    const J2: u8 = 8;
    const KJ3: u8 = 9;

    // null-plane generators in terms of the kinematical ones
    let to_kin_images = vec![
        g(H).add(&g(P3)).scale_rat(&half),      // P+ = (H+P3)/2
        g(KP1),                                  // P1
        g(KP2),                                  // P2
        g(H).sub(&g(P3)),                        // P- = H - P3
        g(K1).add(&g(J2)).scale_rat(&half),      // E1 = (K1+J2)/2
        g(K2).sub(&g(J1)).scale_rat(&half),      // E2 = (K2-J1)/2
        g(KJ3),                                  // J3
        g(KK3),                                  // K3
        g(K1).sub(&g(J2)),                       // F1 = K1 - J2
        g(K2).add(&g(J1)),                       // F2 = K2 + J1
    ];
    let to_kin = AlgebraMorphism {
        name: "nullplane-to-kinematical".into(),
        source: np_alpha.clone(),
        target: kin_algebra,
        images: to_kin_images,
        param_scale: rint(1),
    };

    let from_kin_images = vec![
        g(PP).add(&g(PM).scale_rat(&half)),      // H  = P+ + P-/2
        g(P1),                                   // P1
        g(P2),                                   // P2
        g(PP).sub(&g(PM).scale_rat(&half)),      // P3 = P+ - P-/2
        g(E1).add(&g(F1).scale_rat(&half)),      // K1 = E1 + F1/2
        g(E2).add(&g(F2).scale_rat(&half)),      // K2 = E2 + F2/2
        g(K3),                                   // K3
        g(F2).scale_rat(&half).sub(&g(E2)),      // J1 = F2/2 - E2
        g(E1).sub(&g(F1).scale_rat(&half)),      // J2 = E1 - F1/2
        g(J3),                                   // J3
    ];
    let from_kin = AlgebraMorphism {
        name: "kinematical-to-nullplane".into(),
        source: kin_alpha,
        target: np_algebra,
        images: from_kin_images,
        param_scale: rint(1),
    };
    Ok((to_kin, from_kin))
}

/// Nonlinear basis change: bicross generators expressed in the tilde
/// presentation (parameter relation z = 2 zt).
pub fn build_basis_change(tilde: &HopfPresentation) -> Result<AlgebraMorphism> {
    let order = tilde.order;
    let ctx = Context::new(tilde.algebra.clone(), order);
    let g = |r: u8| Element::of_gen(r, order);
    let em = exp_zgen(order, rint(-1), PP);
    let zt = |e: &Element, sign: i64| scale_z(e, order, 1, rint(sign));
    let f1_inner = g(F1)
        .add(&zt(&mul2(&ctx, &g(E1), &g(PM))?, -1))
        .add(&zt(&mul2(&ctx, &g(J3), &g(P2))?, -1));
    let f2_inner = g(F2)
        .add(&zt(&mul2(&ctx, &g(E2), &g(PM))?, -1))
        .add(&zt(&mul2(&ctx, &g(J3), &g(P1))?, 1));
    let k3_inner = g(K3)
        .add(&zt(&mul2(&ctx, &g(E1), &g(P1))?, -1))
        .add(&zt(&mul2(&ctx, &g(E2), &g(P2))?, -1));
    let images = vec![
        g(PP),
        mul2(&ctx, &em, &g(P1))?,
        mul2(&ctx, &em, &g(P2))?,
        mul2(&ctx, &em, &g(PM))?,
        g(E1),
        g(E2),
        g(J3),
        mul2(&ctx, &em, &k3_inner)?,
        mul2(&ctx, &em, &f1_inner)?,
        mul2(&ctx, &em, &f2_inner)?,
    ];
    Ok(AlgebraMorphism {
        name: "basis-change".into(),
        source: nullplane_alphabet(plain_names(), "z"),
        target: tilde.algebra.clone(),
        images,
        param_scale: rint(2),
    })
}

/// Inverse basis change: tilde generators expressed in the bicross
/// presentation (parameter relation zt = z/2).
pub fn build_inverse_basis_change(bicross: &HopfPresentation) -> Result<AlgebraMorphism> {
    let order = bicross.order;
    let ctx = Context::new(bicross.algebra.clone(), order);
    let g = |r: u8| Element::of_gen(r, order);
    let eh = exp_zgen(order, rat(1, 2), PP);
    let zh = |e: &Element, sign: i64| scale_z(e, order, 1, rat(sign, 2));
    let f1_inner = g(F1)
        .add(&zh(&mul2(&ctx, &g(E1), &g(PM))?, 1))
        .add(&zh(&mul2(&ctx, &g(J3), &g(P2))?, 1));
    let f2_inner = g(F2)
        .add(&zh(&mul2(&ctx, &g(E2), &g(PM))?, 1))
        .add(&zh(&mul2(&ctx, &g(J3), &g(P1))?, -1));
    let k3_inner = g(K3)
        .add(&zh(&mul2(&ctx, &g(E1), &g(P1))?, 1))
        .add(&zh(&mul2(&ctx, &g(E2), &g(P2))?, 1));
    let images = vec![
        g(PP),
        mul2(&ctx, &eh, &g(P1))?,
        mul2(&ctx, &eh, &g(P2))?,
        mul2(&ctx, &eh, &g(PM))?,
        g(E1),
        g(E2),
        g(J3),
        mul2(&ctx, &eh, &k3_inner)?,
        mul2(&ctx, &eh, &f1_inner)?,
        mul2(&ctx, &eh, &f2_inner)?,
    ];
    Ok(AlgebraMorphism {
        name: "inverse-basis-change".into(),
        source: nullplane_alphabet(tilde_names(), "zt"),
        target: bicross.algebra.clone(),
        images,
        param_scale: rat(1, 2),
    })
}

// ---------------------------------------------------------------------------
// distinguished elements

/// Deformed Pauli–Lubanski plus-component in the tilde basis:
/// W+~ = E1~ P2~ - E2~ P1~ + J3~ sinh(zt P+~)/zt.
pub fn wtilde_plus_with(ctx: &Context) -> Result<Element> {
    let order = ctx.order;
    let g = |r: u8| Element::of_gen(r, order);
    Ok(mul2(ctx, &g(E1), &g(P2))?
        .sub(&mul2(ctx, &g(E2), &g(P1))?)
        .add(&mul2(ctx, &g(J3), &sinh_over_z(order, rint(1), PP))?))
}

/// Deformed mass-square Casimir in the bicross basis.
pub fn build_mass_casimir(ctx: &Context) -> Result<Element> {
    let order = ctx.order;
    let g = |r: u8| Element::of_gen(r, order);
    let lhs = mul2(ctx, &g(PM), &expm1_over_z(order, rint(1), PP))?.scale_rat(&rint(2));
    let psq = mul2(ctx, &g(P1), &g(P1))?.add(&mul2(ctx, &g(P2), &g(P2))?);
    let rhs = mul2(ctx, &psq, &exp_zgen(order, rint(1), PP))?;
    Ok(lhs.sub(&rhs))
}

/// The four deformed Pauli–Lubanski components (W13, W23, W-, W+) in the
/// bicross basis, in the operator order they are printed in.
pub fn build_pl_components(ctx: &Context) -> Result<[Element; 4]> {
    let order = ctx.order;
    let g = |r: u8| Element::of_gen(r, order);
    let ep = exp_zgen(order, rint(1), PP);
    let em1_z = expm1_over_z(order, rint(1), PP);
    let em1_half = expm1_zgen(order, rint(1), PP).scale_rat(&rat(1, 2));
    let eep = mul2(ctx, &g(E1), &g(P1))?.add(&mul2(ctx, &g(E2), &g(P2))?);

    let w_i3 = |i: u8| -> Result<Element> {
        let (pi, pother, sign) = if i == 1 {
            (P1, P2, rint(-1))
        } else {
            (P2, P1, rint(1))
        };
        let fi = if i == 1 { F1 } else { F2 };
        let ei = if i == 1 { E1 } else { E2 };
        let t1 = mul3(ctx, &g(K3), &g(pi), &ep)?;
        let t2 = mul2(ctx, &g(ei), &g(PM))?;
        let t3 = mul2(ctx, &g(fi), &em1_z)?;
        let t4 = scale_z(&mul3(ctx, &eep, &g(pi), &ep)?, order, 1, rat(1, 2));
        let t5 = mul3(ctx, &g(J3), &g(pother), &em1_half)?.scale_rat(&sign);
        Ok(t1.add(&t2).sub(&t3).add(&t4).add(&t5))
    };
    let w13 = w_i3(1)?;
    let w23 = w_i3(2)?;

    // W- = (F1 P2 - F2 P1) e^{zP+} + J3 P- (e^{zP+}+1)/2
    //      + (z/2)(E1 P2 - E2 P1) P- e^{zP+} + (z/2) J3 (P1^2+P2^2) e^{zP+}
    let ep1_half = Element::unit(order).add(&expm1_zgen(order, rint(1), PP).scale_rat(&rat(1, 2)));
    // (e^{zP+}+1)/2 = 1 + (e^{zP+}-1)/2
    let ep1_half = {
        let _ = ep1_half;
        Element::unit(order)
            .scale_rat(&rat(1, 2))
            .add(&exp_zgen(order, rint(1), PP).scale_rat(&rat(1, 2)))
    };
    let fp = mul2(ctx, &g(F1), &g(P2))?.sub(&mul2(ctx, &g(F2), &g(P1))?);
    let ep_cross = mul2(ctx, &g(E1), &g(P2))?.sub(&mul2(ctx, &g(E2), &g(P1))?);
    let psq = mul2(ctx, &g(P1), &g(P1))?.add(&mul2(ctx, &g(P2), &g(P2))?);
    let wm = mul2(ctx, &fp, &ep)?
        .add(&mul3(ctx, &g(J3), &g(PM), &ep1_half)?)
        .add(&scale_z(&mul3(ctx, &ep_cross, &g(PM), &ep)?, order, 1, rat(1, 2)))
        .add(&scale_z(&mul3(ctx, &g(J3), &psq, &ep)?, order, 1, rat(1, 2)));

    // W+ = (E1 P2 - E2 P1) e^{zP+/2} + J3 sinh(zP+/2)/(z/2)
    let eh = exp_zgen(order, rat(1, 2), PP);
    let sinh_half = sinh_over_z(order, rat(1, 2), PP).scale_rat(&rint(2));
    let wp = mul2(ctx, &ep_cross, &eh)?.add(&mul2(ctx, &g(J3), &sinh_half)?);

    Ok([w13, w23, wm, wp])
}

/// Deformed Pauli–Lubanski square in the bicross basis.
pub fn build_pl_square(ctx: &Context) -> Result<Element> {
    let order = ctx.order;
    let [w13, w23, wm, wp] = build_pl_components(ctx)?;
    let m2 = build_mass_casimir(ctx)?;
    let cosh_half = cosh_zgen(order, rat(1, 2), PP);
    let sq13 = mul2(ctx, &w13, &w13)?;
    let sq23 = mul2(ctx, &w23, &w23)?;
    let anticomm = mul2(ctx, &wp, &wm)?.add(&mul2(ctx, &wm, &wp)?);
    let middle = mul2(ctx, &cosh_half, &anticomm)?;
    let wp2 = mul2(ctx, &wp, &wp)?;
    let last = scale_z(&mul2(ctx, &m2, &wp2)?, order, 2, rat(1, 4));
    Ok(sq13.add(&sq23).add(&middle).sub(&last))
}

/// The six exponential factors of the universal R-matrix, in printed order.
fn rmatrix_factors(ctx: &Context) -> Result<Vec<TensorElement>> {
    let order = ctx.order;
    let g = |r: u8| Element::of_gen(r, order);
    let ep = exp_zgen(order, rint(1), PP);
    let z1 = |t: TensorElement, sign: i64| t.scale(&zmono(order, 1, rint(sign)));
    let ep_p1 = mul2(ctx, &ep, &g(P1))?;
    let ep_p2 = mul2(ctx, &ep, &g(P2))?;
    let ep_k3 = mul2(ctx, &ep, &g(K3))?;
    Ok(vec![
        z1(TensorElement::tensor2(&g(E2), &ep_p2, order), 1),
        z1(TensorElement::tensor2(&g(E1), &ep_p1, order), 1),
        z1(TensorElement::tensor2(&g(PP), &ep_k3, order), -1),
        z1(TensorElement::tensor2(&ep_k3, &g(PP), order), 1),
        z1(TensorElement::tensor2(&ep_p1, &g(E1), order), -1),
        z1(TensorElement::tensor2(&ep_p2, &g(E2), order), -1),
    ])
}

/// Universal R-matrix: the ordered product of the six exponential factors.
pub fn build_rmatrix(ctx: &Context) -> Result<TensorElement> {
    let mut acc = TensorElement::unit(2, ctx.order);
    for f in rmatrix_factors(ctx)? {
        acc = tensor_mul(ctx, &acc, &exp_tensor(ctx, &f)?)?;
    }
    Ok(acc)
}

/// R⁻¹: reversed product of the inverted factors.
pub fn build_rmatrix_inverse(ctx: &Context) -> Result<TensorElement> {
    let mut acc = TensorElement::unit(2, ctx.order);
    for f in rmatrix_factors(ctx)?.iter().rev() {
        acc = tensor_mul(ctx, &acc, &exp_tensor(ctx, &f.neg())?)?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// registry

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresentationKind {
    Classical,
    Tilde,
    Bicross,
    Kinematical,
}

impl PresentationKind {
    pub fn name(&self) -> &'static str {
        match self {
            PresentationKind::Classical => "classical",
            PresentationKind::Tilde => "tilde",
            PresentationKind::Bicross => "bicross",
            PresentationKind::Kinematical => "kinematical",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "classical" => Some(PresentationKind::Classical),
            "tilde" => Some(PresentationKind::Tilde),
            "bicross" => Some(PresentationKind::Bicross),
            "kinematical" => Some(PresentationKind::Kinematical),
            _ => None,
        }
    }

    pub fn build(&self, order: usize) -> Result<HopfPresentation> {
        match self {
            PresentationKind::Classical => build_classical(order),
            PresentationKind::Tilde => build_tilde(order),
            PresentationKind::Bicross => build_bicross(order),
            PresentationKind::Kinematical => build_kinematical(order),
        }
    }
}

/// All presentations, morphisms and distinguished elements at one truncation
/// order. Immutable after construction.
pub struct ModelRegistry {
    pub order: usize,
    pub classical: Arc<HopfPresentation>,
    pub tilde: Arc<HopfPresentation>,
    pub bicross: Arc<HopfPresentation>,
    pub kinematical: Arc<HopfPresentation>,
    pub to_kinematical: AlgebraMorphism,
    pub from_kinematical: AlgebraMorphism,
    pub basis_change: AlgebraMorphism,
    pub inverse_basis_change: AlgebraMorphism,
}

impl ModelRegistry {
    pub fn build(order: usize) -> Result<Self> {
        let classical = Arc::new(build_classical(order)?);
        let tilde = Arc::new(build_tilde(order)?);
        let bicross = Arc::new(build_bicross(order)?);
        let kinematical = Arc::new(build_kinematical(order)?);
        let (to_kinematical, from_kinematical) = build_kinematical_maps(order)?;
        let basis_change = build_basis_change(&tilde)?;
        let inverse_basis_change = build_inverse_basis_change(&bicross)?;
        Ok(ModelRegistry {
            order,
            classical,
            tilde,
            bicross,
            kinematical,
            to_kinematical,
            from_kinematical,
            basis_change,
            inverse_basis_change,
        })
    }
}

// ---------------------------------------------------------------------------
// checks

/// Round trips of the linear kinematical change of basis.
pub fn check_kinematical_roundtrip(reg: &ModelRegistry) -> Result<CheckReport> {
    let order = reg.order;
    let mut rb = ReportBuilder::new("kinematical-roundtrip", "classical", order);
    let kin_ctx = Context::new(reg.to_kinematical.target.clone(), order);
    let np_ctx = Context::new(reg.from_kinematical.target.clone(), order);
    let kin_alpha = reg.to_kinematical.target.alphabet.clone();
    let np_alpha = reg.from_kinematical.target.alphabet.clone();
    for r in 0..10u8 {
        let img = reg.from_kinematical.apply(&np_ctx, &Element::of_gen(r, order))?;
        let back = reg.to_kinematical.apply(&kin_ctx, &img)?;
        rb.case_elem(
            format!("{} via null-plane", kin_alpha.name_of(r)),
            &back.sub(&Element::of_gen(r, order)),
            &kin_alpha,
        );
    }
    for r in 0..10u8 {
        let img = reg.to_kinematical.apply(&kin_ctx, &Element::of_gen(r, order))?;
        let back = reg.from_kinematical.apply(&np_ctx, &img)?;
        rb.case_elem(
            format!("{} via kinematical", np_alpha.name_of(r)),
            &back.sub(&Element::of_gen(r, order)),
            &np_alpha,
        );
    }
    Ok(rb.finish())
}

/// (ma)∘(ba) and (ba)∘(ma) are the identity on generators.
pub fn check_basis_roundtrip(reg: &ModelRegistry) -> Result<CheckReport> {
    let order = reg.order;
    let mut rb = ReportBuilder::new("basis-roundtrip", "bicross/tilde", order);
    let tilde_ctx = Context::new(reg.tilde.algebra.clone(), order);
    let bic_ctx = Context::new(reg.bicross.algebra.clone(), order);
    for r in 0..10u8 {
        let img = reg.basis_change.apply(&tilde_ctx, &Element::of_gen(r, order))?;
        let back = reg.inverse_basis_change.apply(&bic_ctx, &img)?;
        rb.case_elem(
            format!("{} (bicross round trip)", reg.bicross.alphabet().name_of(r)),
            &back.sub(&Element::of_gen(r, order)),
            reg.bicross.alphabet(),
        );
    }
    for r in 0..10u8 {
        let img = reg.inverse_basis_change.apply(&bic_ctx, &Element::of_gen(r, order))?;
        let back = reg.basis_change.apply(&tilde_ctx, &img)?;
        rb.case_elem(
            format!("{} (tilde round trip)", reg.tilde.alphabet().name_of(r)),
            &back.sub(&Element::of_gen(r, order)),
            reg.tilde.alphabet(),
        );
    }
    Ok(rb.finish())
}

/// The nonlinear basis change is a Hopf-algebra isomorphism: commutators,
/// coproducts and antipodes transported through it reproduce the bicross
/// tables term for term. Returns (brackets, coproducts, antipodes) reports.
pub fn check_hopf_isomorphism(reg: &ModelRegistry) -> Result<[CheckReport; 3]> {
    let order = reg.order;
    let tilde_h = HopfContext::new(reg.tilde.clone());
    let bic_h = HopfContext::new(reg.bicross.clone());
    let alpha = reg.bicross.alphabet();
    let ba = &reg.basis_change;
    let ma = &reg.inverse_basis_change;

    let images: Vec<Element> = (0..10u8)
        .map(|r| ba.apply(&tilde_h.ctx, &Element::of_gen(r, order)))
        .collect::<Result<_>>()?;

    let mut rb_br = ReportBuilder::new("iso-brackets", "bicross", order);
    for x in 0..10u8 {
        for y in (x + 1)..10u8 {
            let lhs = tilde_h.ctx.commutator(&images[x as usize], &images[y as usize])?;
            let pulled = ma.apply(&bic_h.ctx, &lhs)?;
            let rhs = bic_h
                .ctx
                .commutator(&Element::of_gen(x, order), &Element::of_gen(y, order))?;
            rb_br.case_elem(
                format!("[{},{}]", alpha.name_of(x), alpha.name_of(y)),
                &pulled.sub(&rhs),
                alpha,
            );
        }
    }

    let mut rb_cop = ReportBuilder::new("iso-coproducts", "bicross", order);
    for r in 0..10u8 {
        let dt = tilde_h.coproduct_of(&images[r as usize])?;
        let pulled = apply_morphism_legwise(ma, &bic_h.ctx, &dt)?;
        let residual = pulled.sub(&reg.bicross.coproduct[r as usize]);
        rb_cop.case_tensor(format!("Δ({})", alpha.name_of(r)), &residual, alpha);
    }

    let mut rb_anti = ReportBuilder::new("iso-antipodes", "bicross", order);
    for r in 0..10u8 {
        let gt = tilde_h.antipode_of(&images[r as usize])?;
        let pulled = ma.apply(&bic_h.ctx, &gt)?;
        let residual = pulled.sub(&reg.bicross.antipode[r as usize]);
        rb_anti.case_elem(format!("γ({})", alpha.name_of(r)), &residual, alpha);
    }

    Ok([rb_br.finish(), rb_cop.finish(), rb_anti.finish()])
}

/// [c, X] = 0 for every generator.
pub fn check_centrality(
    h: &HopfContext,
    label: &str,
    casimir: &Element,
) -> Result<CheckReport> {
    let alpha = h.alphabet();
    let mut rb = ReportBuilder::new(
        &format!("casimir-{label}"),
        &h.pres.name,
        h.order(),
    );
    for r in 0..alpha.len() as u8 {
        let c = h.ctx.commutator(casimir, &h.ctx.gen_elem(r))?;
        rb.case_elem(format!("[{label},{}]", alpha.name_of(r)), &c, alpha);
    }
    Ok(rb.finish())
}

/// Order-zero parts of all deformed brackets equal the classical table.
pub fn check_classical_limit_brackets(
    deformed: &HopfPresentation,
    classical: &HopfPresentation,
) -> Result<CheckReport> {
    let alpha = deformed.alphabet();
    let order = deformed.order;
    let mut rb = ReportBuilder::new(
        "classical-limit-brackets",
        &deformed.name,
        order,
    );
    for hi in 0..10u8 {
        for lo in 0..hi {
            let d = deformed
                .algebra
                .brackets
                .get(hi, lo)
                .cloned()
                .unwrap_or_else(Element::zero)
                .classical_part();
            let c = classical
                .algebra
                .brackets
                .get(hi, lo)
                .cloned()
                .unwrap_or_else(Element::zero);
            rb.case_elem(
                format!("[{},{}]", alpha.name_of(hi), alpha.name_of(lo)),
                &d.sub(&c),
                alpha,
            );
        }
    }
    Ok(rb.finish())
}

/// Classical limits of the Casimirs, Pauli–Lubanski components and the
/// R-matrix.
pub fn check_classical_limits_elements(reg: &ModelRegistry, rmatrix_order: usize) -> Result<CheckReport> {
    let order = reg.order;
    let ctx = Context::new(reg.bicross.algebra.clone(), order);
    let cctx = Context::new(reg.classical.algebra.clone(), order);
    let alpha = reg.bicross.alphabet();
    let mut rb = ReportBuilder::new("classical-limit-elements", "bicross", order);
    let g = |r: u8| Element::of_gen(r, order);

    let m2 = build_mass_casimir(&ctx)?.classical_part();
    let m2_classical = cctx
        .multiply(&g(PM), &g(PP))?
        .scale_rat(&rint(2))
        .sub(&cctx.multiply(&g(P1), &g(P1))?)
        .sub(&cctx.multiply(&g(P2), &g(P2))?);
    rb.case_elem("mass casimir limit".into(), &m2.sub(&m2_classical), alpha);

    // undeformed Pauli–Lubanski components, normal ordered classically
    let [w13, w23, wm, wp] = build_pl_components(&ctx)?;
    let w13_c = cctx
        .multiply(&g(K3), &g(P1))?
        .add(&cctx.multiply(&g(E1), &g(PM))?)
        .sub(&cctx.multiply(&g(F1), &g(PP))?);
    let w23_c = cctx
        .multiply(&g(K3), &g(P2))?
        .add(&cctx.multiply(&g(E2), &g(PM))?)
        .sub(&cctx.multiply(&g(F2), &g(PP))?);
    let wm_c = cctx
        .multiply(&g(F1), &g(P2))?
        .sub(&cctx.multiply(&g(F2), &g(P1))?)
        .add(&cctx.multiply(&g(J3), &g(PM))?);
    let wp_c = cctx
        .multiply(&g(E1), &g(P2))?
        .sub(&cctx.multiply(&g(E2), &g(P1))?)
        .add(&cctx.multiply(&g(J3), &g(PP))?);
    rb.case_elem("W13 limit".into(), &w13.classical_part().sub(&w13_c), alpha);
    rb.case_elem("W23 limit".into(), &w23.classical_part().sub(&w23_c), alpha);
    rb.case_elem("W- limit".into(), &wm.classical_part().sub(&wm_c), alpha);
    rb.case_elem("W+ limit".into(), &wp.classical_part().sub(&wp_c), alpha);

    let rctx = Context::new(reg.bicross.algebra.clone(), rmatrix_order);
    let r = build_rmatrix(&rctx)?;
    rb.case_tensor(
        "R-matrix limit".into(),
        &r.classical_part().sub(&TensorElement::unit(2, rmatrix_order)),
        alpha,
    );
    Ok(rb.finish())
}

/// R·R⁻¹ = 1⊗1.
pub fn check_rmatrix_inverse(h: &HopfContext) -> Result<CheckReport> {
    let mut rb = ReportBuilder::new("rmatrix-inverse", &h.pres.name, h.order());
    let r = build_rmatrix(&h.ctx)?;
    let rinv = build_rmatrix_inverse(&h.ctx)?;
    let unit = TensorElement::unit(2, h.order());
    rb.case_tensor(
        "R·R⁻¹".into(),
        &tensor_mul(&h.ctx, &r, &rinv)?.sub(&unit),
        h.alphabet(),
    );
    rb.case_tensor(
        "R⁻¹·R".into(),
        &tensor_mul(&h.ctx, &rinv, &r)?.sub(&unit),
        h.alphabet(),
    );
    Ok(rb.finish())
}

/// R Δ(X) = σΔ(X) R for every generator.
pub fn check_intertwining(h: &HopfContext) -> Result<CheckReport> {
    let alpha = h.alphabet();
    let mut rb = ReportBuilder::new("rmatrix-intertwining", &h.pres.name, h.order());
    let r = build_rmatrix(&h.ctx)?;
    for g in 0..alpha.len() as u8 {
        let d = &h.pres.coproduct[g as usize];
        let lhs = tensor_mul(&h.ctx, &r, d)?;
        let rhs = tensor_mul(&h.ctx, &flip(d)?, &r)?;
        rb.case_tensor(format!("X = {}", alpha.name_of(g)), &lhs.sub(&rhs), alpha);
    }
    Ok(rb.finish())
}

/// σ(R) = R⁻¹.
pub fn check_triangularity(h: &HopfContext) -> Result<CheckReport> {
    let mut rb = ReportBuilder::new("rmatrix-triangularity", &h.pres.name, h.order());
    let r = build_rmatrix(&h.ctx)?;
    let rinv = build_rmatrix_inverse(&h.ctx)?;
    rb.case_tensor("σ(R) - R⁻¹".into(), &flip(&r)?.sub(&rinv), h.alphabet());
    Ok(rb.finish())
}

/// Quantum Yang–Baxter equation R12 R13 R23 = R23 R13 R12.
pub fn check_qybe(h: &HopfContext) -> Result<CheckReport> {
    let mut rb = ReportBuilder::new("qybe", &h.pres.name, h.order());
    let r = build_rmatrix(&h.ctx)?;
    let r12 = embed(&r, LegPair::L12)?;
    let r13 = embed(&r, LegPair::L13)?;
    let r23 = embed(&r, LegPair::L23)?;
    let lhs = tensor_mul(&h.ctx, &tensor_mul(&h.ctx, &r12, &r13)?, &r23)?;
    let rhs = tensor_mul(&h.ctx, &tensor_mul(&h.ctx, &r23, &r13)?, &r12)?;
    rb.case_tensor("R12 R13 R23 - R23 R13 R12".into(), &lhs.sub(&rhs), h.alphabet());
    Ok(rb.finish())
}

// ---------------------------------------------------------------------------
// mutation sweep

/// Which verification suite first catches a mutated presentation, or `None`
/// if every detector stays green (a silent acceptance).
fn detect_mutation(kind: PresentationKind, mutant: &Arc<HopfPresentation>, order: usize) -> Result<Option<String>> {
    let h = HopfContext::new(mutant.clone());
    if !check_counit(&h, &[])?.passed {
        return Ok(Some("counit".into()));
    }
    if !check_coassociativity(&h, &[])?.passed {
        return Ok(Some("coassociativity".into()));
    }
    if !check_antipode(&h, &[], None)?.passed {
        return Ok(Some("antipode".into()));
    }
    if !check_coproduct_homomorphism(&h)?.passed {
        return Ok(Some("delta-homomorphism".into()));
    }
    if !check_jacobi(&h)?.passed {
        return Ok(Some("jacobi".into()));
    }
    if matches!(kind, PresentationKind::Tilde | PresentationKind::Bicross) {
        let classical = build_classical(order)?;
        if !check_classical_limit_brackets(mutant, &classical)?.passed {
            return Ok(Some("classical-limit".into()));
        }
    }
    if kind == PresentationKind::Bicross {
        let data = crate::bicross::BicrossData::for_presentation(mutant.clone(), order)?;
        if !data.check_sign_coherence()?.passed {
            return Ok(Some("sign-coherence".into()));
        }
        if !data.check_reconstruction()?.passed {
            return Ok(Some("reconstruction".into()));
        }
    }
    Ok(None)
}

/// Flip one sign or double one coefficient at a time in each structure table
/// and require at least one suite failure for every mutant.
pub fn mutation_sweep(kind: PresentationKind, order: usize) -> Result<CheckReport> {
    let base = Arc::new(kind.build(order)?);
    let mutants = enumerate_mutants(&base);
    let mut rb = ReportBuilder::new("mutation-sweep", kind.name(), order);
    for m in &mutants {
        let caught = detect_mutation(kind, &m.pres, order)?;
        rb.case_bool(
            m.label.clone(),
            caught.is_some(),
            "no suite failed for this mutant".into(),
        );
    }
    rb.note(format!("{} mutants examined", mutants.len()));
    Ok(rb.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algfile::print_element;

    #[test]
    fn classical_table_spot_checks() {
        let p = build_classical(2).unwrap();
        let ctx = Context::new(p.algebra.clone(), 2);
        let g = |r: u8| Element::of_gen(r, 2);
        // [E1,F1] = K3, [K3,J3] = 0
        assert_eq!(ctx.commutator(&g(E1), &g(F1)).unwrap(), g(K3));
        assert!(ctx.commutator(&g(K3), &g(J3)).unwrap().is_zero());
        // [J3,E1] = -E2, [E2,F1] = -J3
        assert_eq!(ctx.commutator(&g(J3), &g(E1)).unwrap(), g(E2).neg());
        assert_eq!(ctx.commutator(&g(E2), &g(F1)).unwrap(), g(J3).neg());
    }

    #[test]
    fn normal_order_word_matches_bracket() {
        // F1·E1 = E1F1 - K3 in the classical basis
        let p = build_classical(2).unwrap();
        let ctx = Context::new(p.algebra.clone(), 2);
        let e = ctx.normal_order_word(&[F1, E1]).unwrap();
        let mut expect = Element::of_mono(Mono::of_word(&[E1, F1]), 2);
        expect = expect.sub(&Element::of_gen(K3, 2));
        assert_eq!(e, expect);
    }

    #[test]
    fn bicross_bracket_expansions() {
        let order = 5;
        let p = build_bicross(order).unwrap();
        let ctx = Context::new(p.algebra.clone(), order);
        let g = |r: u8| Element::of_gen(r, order);
        // [K3,P+] = P+ - (z/2)P+^2 + (z^2/6)P+^3 - ... (expansion oracle)
        let got = ctx.commutator(&g(K3), &g(PP)).unwrap();
        let mut expect = Element::zero();
        for n in 1..=order + 1 {
            let sign = if n % 2 == 1 { rint(1) } else { rint(-1) };
            if n - 1 <= order {
                expect.accumulate(
                    Mono::pow_of(PP, n as u8),
                    zmono(order, n - 1, sign / factorial(n)),
                );
            }
        }
        assert_eq!(got, expect, "{}", print_element(p.alphabet(), &got));
        // [P+,P-] = 0, [E1,E2] = 0
        assert!(ctx.commutator(&g(PP), &g(PM)).unwrap().is_zero());
        assert!(ctx.commutator(&g(E1), &g(E2)).unwrap().is_zero());
        // F1·P1 = P1F1 + [F1,P1], with the bracket from the table
        let fp = ctx.multiply(&g(F1), &g(P1)).unwrap();
        let mut expect = Element::of_mono(Mono::of_word(&[P1, F1]), order);
        let bracket = p.algebra.brackets.get(F1, P1).unwrap().clone();
        // oracle for the bracket: -zP1^2 + e^{-zP+}P- + (z/2)(P1^2+P2^2)
        let mut oracle = Element::zero();
        oracle.accumulate(Mono::of_word(&[P1, P1]), zmono(order, 1, rat(-1, 2)));
        oracle.accumulate(Mono::of_word(&[P2, P2]), zmono(order, 1, rat(1, 2)));
        for n in 0..=order {
            let sign = if n % 2 == 0 { rint(1) } else { rint(-1) };
            let mut w = Mono::pow_of(PP, n as u8);
            w = w.commuting_product(&Mono::of_gen(PM));
            oracle.accumulate(w, zmono(order, n, sign / factorial(n)));
        }
        assert_eq!(bracket, oracle);
        expect = expect.add(&bracket);
        assert_eq!(fp, expect);
    }

    #[test]
    fn tilde_bracket_expansions() {
        let order = 5;
        let p = build_tilde(order).unwrap();
        let ctx = Context::new(p.algebra.clone(), order);
        let g = |r: u8| Element::of_gen(r, order);
        // [K3~,P+~] = sinh(zt P+~)/zt = P+~ + zt^2 P+~^3/6 + ...
        let got = ctx.commutator(&g(K3), &g(PP)).unwrap();
        let mut expect = Element::zero();
        for n in (1..=order + 1).step_by(2) {
            if n - 1 <= order {
                expect.accumulate(
                    Mono::pow_of(PP, n as u8),
                    zmono(order, n - 1, rint(1) / factorial(n)),
                );
            }
        }
        assert_eq!(got, expect);
        // classical limit of the whole table
        let classical = build_classical(order).unwrap();
        assert!(check_classical_limit_brackets(&p, &classical).unwrap().passed);
    }

    #[test]
    fn basis_change_images_match_printed_forms() {
        let order = 4;
        let tilde = build_tilde(order).unwrap();
        let ba = build_basis_change(&tilde).unwrap();
        let ctx = Context::new(tilde.algebra.clone(), order);
        let g = |r: u8| Element::of_gen(r, order);
        // K3 image: e^{-zt P+~} (K3~ - zt E1~P1~ - zt E2~P2~)
        let em = exp_zgen(order, rint(-1), PP);
        let inner = g(K3)
            .sub(&scale_z(&ctx.multiply(&g(E1), &g(P1)).unwrap(), order, 1, rint(1)))
            .sub(&scale_z(&ctx.multiply(&g(E2), &g(P2)).unwrap(), order, 1, rint(1)));
        let expect = ctx.multiply(&em, &inner).unwrap();
        assert_eq!(ba.image_of(K3), &expect);
        assert_eq!(ba.image_of(PP), &g(PP));
    }

    #[test]
    fn roundtrips_and_registry() {
        let reg = ModelRegistry::build(3).unwrap();
        assert!(check_kinematical_roundtrip(&reg).unwrap().passed);
        assert!(check_basis_roundtrip(&reg).unwrap().passed);
    }

    #[test]
    fn kinematical_table_reproduces_textbook_brackets() {
        let order = 2;
        let kin = build_kinematical(order).unwrap();
        let ctx = Context::new(kin.algebra.clone(), order);
        let alpha = kin.alphabet();
        let r = |n: &str| alpha.rank_of(n).unwrap();
        let g = |n: &str| Element::of_gen(r(n), order);
        // [K3,H] = P3, [K1,P1] = H, [J1,J2] = J3
        assert_eq!(ctx.commutator(&g("K3"), &g("H")).unwrap(), g("P3"));
        assert_eq!(ctx.commutator(&g("K1"), &g("P1")).unwrap(), g("H"));
        assert_eq!(ctx.commutator(&g("J1"), &g("J2")).unwrap(), g("J3"));
        assert!(ctx.commutator(&g("P1"), &g("H")).unwrap().is_zero());
    }

    #[test]
    fn mass_casimir_matches_printed_form() {
        let order = 4;
        let p = build_bicross(order).unwrap();
        let ctx = Context::new(p.algebra.clone(), order);
        let m2 = build_mass_casimir(&ctx).unwrap();
        // classical part: 2P-P+ - P1^2 - P2^2
        let mut expect = Element::zero();
        expect.accumulate(Mono::of_word(&[PP, PM]), zmono(order, 0, rint(2)));
        expect.accumulate(Mono::of_word(&[P1, P1]), zmono(order, 0, rint(-1)));
        expect.accumulate(Mono::of_word(&[P2, P2]), zmono(order, 0, rint(-1)));
        assert_eq!(m2.classical_part(), expect);
    }

    #[test]
    fn rmatrix_first_order_term() {
        let order = 3;
        let p = build_bicross(order).unwrap();
        let ctx = Context::new(p.algebra.clone(), order);
        let r = build_rmatrix(&ctx).unwrap();
        // z-linear part: z(E2⊗P2 + E1⊗P1 - P+⊗K3 + K3⊗P+ - P1⊗E1 - P2⊗E2)
        let mut first = TensorElement::zero(2);
        for (k, c) in r.iter() {
            let c1 = c.coeff(1);
            if !c1.is_zero() {
                first.accumulate(*k, zmono(order, 1, c1));
            }
        }
        let order_z = |a: u8, b: u8, s: i64| {
            TensorElement::tensor2(&Element::of_gen(a, order), &Element::of_gen(b, order), order)
                .scale(&zmono(order, 1, rint(s)))
        };
        let expect = order_z(E2, P2, 1)
            .add(&order_z(E1, P1, 1))
            .add(&order_z(PP, K3, -1))
            .add(&order_z(K3, PP, 1))
            .add(&order_z(P1, E1, -1))
            .add(&order_z(P2, E2, -1));
        assert_eq!(first, expect);
    }
}
