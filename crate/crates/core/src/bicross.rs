//! The right action of the Lorentz sector on the deformed translation
//! algebra, the left coaction going the other way, their compatibility
//! checks, and the constructive crossed-product reconstruction.
//!
//! Elements of the crossed product K⊗A are arity-2 tensors with the Lorentz
//! leg first; the product is the smash product
//! `(h⊗a)(g⊗b) = Σ h g₍₁₎ ⊗ (a ◁ g₍₂₎) b`, and the coproduct twists the
//! Lorentz legs by the coaction. Sweedler sums are concrete term lists.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::hopfdef::{
    check_antipode, check_coassociativity, check_coproduct_homomorphism, check_counit,
    check_jacobi, solve_antipode, CheckReport, HopfContext, HopfPresentation, ReportBuilder,
};
use crate::models::{
    self, build_classical, exp_zgen, expm1_over_z, expm1_zgen, E1, E2, F1, F2, J3, K3, LORENTZ,
    P1, P2, PM, PP, TRANSLATIONS,
};
use crate::ncpoly::{Algebra, AlgebraError, Context, Element, Mono, Result};
use crate::scalars::{rat, rint, ZSeries};
use crate::tensorspace::{apply_counit_on_leg, TensorElement};

fn is_translation(r: u8) -> bool {
    TRANSLATIONS.contains(&r)
}

fn is_lorentz(r: u8) -> bool {
    LORENTZ.contains(&r)
}

/// Action and coaction tables over a bicross presentation, plus the
/// classical presentation that supplies the undeformed Lorentz coproduct.
pub struct BicrossData {
    pub bicross: Arc<HopfPresentation>,
    pub classical: Arc<HopfPresentation>,
    /// α(X ⊗ Y) = X ◁ Y for translation X, Lorentz Y; zero entries omitted.
    action: HashMap<(u8, u8), Element>,
    /// β on Lorentz generators (leg 1 translation, leg 2 Lorentz), indexed by
    /// rank.
    coaction: HashMap<u8, TensorElement>,
}

impl BicrossData {
    pub fn new(order: usize) -> Result<Self> {
        Self::for_presentation(Arc::new(models::build_bicross(order)?), order)
    }

    /// Build the tables against a given bicross presentation (used by the
    /// mutation sweep, where the presentation may be perturbed while the
    /// action table stays the independent transcription).
    pub fn for_presentation(bicross: Arc<HopfPresentation>, order: usize) -> Result<Self> {
        let classical = Arc::new(build_classical(order)?);
        let mut action = HashMap::new();
        let g = |r: u8| Element::of_gen(r, order);
        let zmono = |k: usize, c| ZSeries::monomial(order, k, c);
        let times = |e: &Element, r: u8| {
            let mut out = Element::zero();
            for (m, c) in e.iter() {
                out.accumulate(m.commuting_product(&Mono::of_gen(r)), c.clone());
            }
            out
        };
        let half_z_psq = {
            let mut e = Element::zero();
            e.accumulate(Mono::of_word(&[P1, P1]), zmono(1, rat(1, 2)));
            e.accumulate(Mono::of_word(&[P2, P2]), zmono(1, rat(1, 2)));
            e
        };

        // boosts along the null direction
        action.insert((PP, K3), expm1_over_z(order, rint(-1), PP));
        action.insert((PM, K3), g(PM).add(&half_z_psq));
        action.insert((P1, K3), times(&expm1_zgen(order, rint(-1), PP), P1).neg());
        action.insert((P2, K3), times(&expm1_zgen(order, rint(-1), PP), P2).neg());
        // rotations about the null axis
        action.insert((P1, J3), g(P2));
        action.insert((P2, J3), g(P1).neg());
        // null rotations E
        action.insert((PM, E1), g(P1).neg());
        action.insert((PM, E2), g(P2).neg());
        action.insert((P1, E1), expm1_over_z(order, rint(-1), PP));
        action.insert((P2, E2), expm1_over_z(order, rint(-1), PP));
        // null rotations F
        action.insert((PP, F1), g(P1).neg());
        action.insert((PP, F2), g(P2).neg());
        let zpm = |p: u8| {
            let mut e = Element::zero();
            e.accumulate(Mono::of_word(&[p, PM]), zmono(1, rint(1)));
            e
        };
        action.insert((PM, F1), zpm(P1));
        action.insert((PM, F2), zpm(P2));
        let zpp = |a: u8, b: u8| {
            let mut e = Element::zero();
            e.accumulate(Mono::of_word(&[a, b]), zmono(1, rint(1)));
            e
        };
        let delta_part = times(&exp_zgen(order, rint(-1), PP), PM).add(&half_z_psq);
        action.insert((P1, F1), zpp(P1, P1).sub(&delta_part));
        action.insert((P2, F2), zpp(P2, P2).sub(&delta_part));
        action.insert((P1, F2), zpp(P1, P2));
        action.insert((P2, F1), zpp(P2, P1));

        let em = exp_zgen(order, rint(-1), PP);
        let one = Element::unit(order);
        let t2 = |a: &Element, b: &Element| TensorElement::tensor2(a, b, order);
        let zt2 = |a: u8, b: u8, sign: i64| {
            TensorElement::tensor2(&g(a), &g(b), order).scale(&zmono(1, rint(sign)))
        };
        let mut coaction = HashMap::new();
        coaction.insert(J3, t2(&one, &g(J3)));
        coaction.insert(E1, t2(&one, &g(E1)));
        coaction.insert(E2, t2(&one, &g(E2)));
        coaction.insert(
            F1,
            t2(&em, &g(F1)).add(&zt2(PM, E1, -1)).add(&zt2(P2, J3, -1)),
        );
        coaction.insert(
            F2,
            t2(&em, &g(F2)).add(&zt2(PM, E2, -1)).add(&zt2(P1, J3, 1)),
        );
        coaction.insert(
            K3,
            t2(&em, &g(K3)).add(&zt2(P1, E1, -1)).add(&zt2(P2, E2, -1)),
        );

        Ok(BicrossData { bicross, classical, action, coaction })
    }

    pub fn order(&self) -> usize {
        self.bicross.order
    }

    fn bctx(&self) -> HopfContext {
        HopfContext::new(self.bicross.clone())
    }

    fn kctx(&self) -> HopfContext {
        HopfContext::new(self.classical.clone())
    }

    pub fn action_entry(&self, translation: u8, lorentz: u8) -> Element {
        self.action
            .get(&(translation, lorentz))
            .cloned()
            .unwrap_or_else(Element::zero)
    }

    pub fn coaction_entry(&self, lorentz: u8) -> TensorElement {
        self.coaction[&lorentz].clone()
    }

    /// One Lorentz generator acting on a translation monomial: the Leibniz
    /// expansion for the primitive Lorentz coproduct.
    fn act_mono_gen(&self, ctx: &Context, m: &Mono, y: u8) -> Result<Element> {
        let order = self.order();
        let mut out = Element::zero();
        let letters: Vec<u8> = m.letters().collect();
        for (i, &t) in letters.iter().enumerate() {
            let hit = self.action_entry(t, y);
            if hit.is_zero() {
                continue;
            }
            let mut rest = Mono::unit();
            for (j, &s) in letters.iter().enumerate() {
                if j != i {
                    rest = rest.commuting_product(&Mono::of_gen(s));
                }
            }
            // the translation algebra is commutative, so the placement of the
            // acted factor is immaterial
            out = out.add(&ctx.multiply(&hit, &Element::of_mono(rest, order))?);
        }
        Ok(out)
    }

    /// Right module-algebra action `a ◁ h` for `a` in the translation
    /// subalgebra and `h` in the Lorentz enveloping algebra.
    pub fn action(&self, ctx: &Context, a: &Element, h: &Element) -> Result<Element> {
        for (m, _) in a.iter() {
            if !m.supported_within(is_translation) {
                return Err(AlgebraError::SubalgebraViolation("translation"));
            }
        }
        let mut out = Element::zero();
        for (hm, hc) in h.iter() {
            if !hm.supported_within(is_lorentz) {
                return Err(AlgebraError::SubalgebraViolation("Lorentz"));
            }
            // a ◁ (g1 g2 ... gk) = ((a ◁ g1) ◁ g2) ... ◁ gk
            let mut acc = a.clone();
            for y in hm.letters() {
                let mut next = Element::zero();
                for (m, c) in acc.iter() {
                    let acted = self.act_mono_gen(ctx, m, y)?;
                    next = next.add(&acted.scale(c));
                }
                acc = next;
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc.scale(hc));
        }
        Ok(out)
    }

    /// Left coaction β extended multiplicatively to Lorentz monomials.
    pub fn coaction(&self, ctx: &Context, h: &Element) -> Result<TensorElement> {
        let order = self.order();
        let mut out = TensorElement::zero(2);
        for (hm, hc) in h.iter() {
            if !hm.supported_within(is_lorentz) {
                return Err(AlgebraError::SubalgebraViolation("Lorentz"));
            }
            let mut acc = TensorElement::unit(2, order);
            for y in hm.letters() {
                acc = crate::tensorspace::tensor_mul(ctx, &acc, &self.coaction[&y])?;
            }
            out = out.add(&acc.scale(hc));
        }
        Ok(out)
    }

    /// Action closure: every table image and sampled extension lies in the
    /// translation subalgebra.
    pub fn check_action_closure(&self) -> Result<CheckReport> {
        let h = self.bctx();
        let alpha = self.bicross.alphabet();
        let mut rb = ReportBuilder::new("action-closure", "bicross", self.order());
        for &t in &TRANSLATIONS {
            for &y in &LORENTZ {
                let img = self.action_entry(t, y);
                let ok = img.iter().all(|(m, _)| m.supported_within(is_translation));
                rb.case_bool(
                    format!("α({}⊗{})", alpha.name_of(t), alpha.name_of(y)),
                    ok,
                    crate::algfile::print_element(alpha, &img),
                );
            }
        }
        // degree-2 sampled extensions
        for &t1 in &TRANSLATIONS {
            for &y in &[K3, F1] {
                let a = h.ctx.multiply(&h.ctx.gen_elem(t1), &h.ctx.gen_elem(P1))?;
                let acted = self.action(&h.ctx, &a, &h.ctx.gen_elem(y))?;
                let ok = acted.iter().all(|(m, _)| m.supported_within(is_translation));
                rb.case_bool(
                    format!("α({}P1⊗{})", alpha.name_of(t1), alpha.name_of(y)),
                    ok,
                    crate::algfile::print_element(alpha, &acted),
                );
            }
        }
        Ok(rb.finish())
    }

    /// The action table equals the commutator table: α(X⊗Y) = [X,Y].
    pub fn check_sign_coherence(&self) -> Result<CheckReport> {
        let h = self.bctx();
        let alpha = self.bicross.alphabet();
        let mut rb = ReportBuilder::new("sign-coherence", "bicross", self.order());
        for &t in &TRANSLATIONS {
            for &y in &LORENTZ {
                let from_brackets = h.ctx.commutator(&h.ctx.gen_elem(t), &h.ctx.gen_elem(y))?;
                let residual = self.action_entry(t, y).sub(&from_brackets);
                rb.case_elem(
                    format!("α({}⊗{}) vs [{},{}]", alpha.name_of(t), alpha.name_of(y), alpha.name_of(t), alpha.name_of(y)),
                    &residual,
                    alpha,
                );
            }
        }
        Ok(rb.finish())
    }

    /// Right module-algebra axioms: unit law, Leibniz against the primitive
    /// Lorentz coproduct, and compatibility with Lorentz products.
    pub fn check_module_algebra(&self) -> Result<CheckReport> {
        let h = self.bctx();
        let k = self.kctx();
        let alpha = self.bicross.alphabet();
        let order = self.order();
        let mut rb = ReportBuilder::new("module-algebra", "bicross", order);

        // 1 ◁ h = ε(h) 1
        for &y in &LORENTZ {
            let acted = self.action(&h.ctx, &h.ctx.one(), &h.ctx.gen_elem(y))?;
            rb.case_elem(format!("1◁{}", alpha.name_of(y)), &acted, alpha);
        }

        // (ab) ◁ h = (a ◁ h₍₁₎)(b ◁ h₍₂₎) on translation generator pairs
        for &a in &TRANSLATIONS {
            for &b in &TRANSLATIONS {
                for &y in &LORENTZ {
                    let ea = h.ctx.gen_elem(a);
                    let eb = h.ctx.gen_elem(b);
                    let ab = h.ctx.multiply(&ea, &eb)?;
                    let lhs = self.action(&h.ctx, &ab, &h.ctx.gen_elem(y))?;
                    let mut rhs = Element::zero();
                    for (key, c) in k.pres.coproduct[y as usize].iter() {
                        let first = self.action(&h.ctx, &ea, &Element::of_mono(key[0], order))?;
                        let second = self.action(&h.ctx, &eb, &Element::of_mono(key[1], order))?;
                        rhs = rhs.add(&h.ctx.multiply(&first, &second)?.scale(c));
                    }
                    rb.case_elem(
                        format!(
                            "({}{})◁{}",
                            alpha.name_of(a),
                            alpha.name_of(b),
                            alpha.name_of(y)
                        ),
                        &lhs.sub(&rhs),
                        alpha,
                    );
                }
            }
        }

        // (a ◁ g) ◁ h = a ◁ (gh) with gh normal ordered in the Lorentz algebra
        for &a in &TRANSLATIONS {
            for &g1 in &LORENTZ {
                for &g2 in &LORENTZ {
                    let ea = h.ctx.gen_elem(a);
                    let step = self.action(&h.ctx, &ea, &h.ctx.gen_elem(g1))?;
                    let lhs = self.action(&h.ctx, &step, &h.ctx.gen_elem(g2))?;
                    let gh = k.ctx.multiply(&k.ctx.gen_elem(g1), &k.ctx.gen_elem(g2))?;
                    let rhs = self.action(&h.ctx, &ea, &gh)?;
                    rb.case_elem(
                        format!(
                            "({}◁{})◁{}",
                            alpha.name_of(a),
                            alpha.name_of(g1),
                            alpha.name_of(g2)
                        ),
                        &lhs.sub(&rhs),
                        alpha,
                    );
                }
            }
        }
        Ok(rb.finish())
    }

    /// Left comodule-coalgebra axioms for β.
    pub fn check_comodule_coalgebra(&self) -> Result<CheckReport> {
        let h = self.bctx();
        let k = self.kctx();
        let alpha = self.bicross.alphabet();
        let order = self.order();
        let mut rb = ReportBuilder::new("comodule-coalgebra", "bicross", order);

        for &y in &LORENTZ {
            let beta = self.coaction_entry(y);

            // coaction axiom: (Δ_A ⊗ id) β = (id ⊗ β) β in A⊗A⊗K
            let lhs = crate::tensorspace::apply_cop_on_leg(&beta, 0, |m| {
                h.coproduct_mono(m).map(|rc| (*rc).clone())
            })?;
            let rhs = crate::tensorspace::apply_cop_on_leg(&beta, 1, |m| {
                self.coaction(&h.ctx, &Element::of_mono(*m, order))
            })?;
            rb.case_tensor(
                format!("(Δ_A⊗id)β({0}) = (id⊗β)β({0})", alpha.name_of(y)),
                &lhs.sub(&rhs),
                alpha,
            );

            // counit axiom: (ε_A ⊗ id) β = id
            let eps = apply_counit_on_leg(&beta, 0, |m| Ok(h.counit_mono(m)))?;
            rb.case_elem(
                format!("(ε_A⊗id)β({})", alpha.name_of(y)),
                &eps.sub(&Element::of_gen(y, order)),
                alpha,
            );

            // coalgebra compatibility:
            // (id ⊗ Δ_K) β(h) = Σ h₍₁₎⁽⁻¹⁾ h₍₂₎⁽⁻¹⁾ ⊗ h₍₁₎⁽⁰⁾ ⊗ h₍₂₎⁽⁰⁾
            let lhs = crate::tensorspace::apply_cop_on_leg(&beta, 1, |m| {
                k.coproduct_mono(m).map(|rc| (*rc).clone())
            })?;
            let mut rhs = TensorElement::zero(3);
            for (key, c) in k.pres.coproduct[y as usize].iter() {
                let b1 = self.coaction(&h.ctx, &Element::of_mono(key[0], order))?;
                let b2 = self.coaction(&h.ctx, &Element::of_mono(key[1], order))?;
                for (k1, c1) in b1.iter() {
                    for (k2, c2) in b2.iter() {
                        // A is commutative: multiply the two A-legs directly
                        let a_leg = k1[0].commuting_product(&k2[0]);
                        rhs.accumulate([a_leg, k1[1], k2[1]], c.mul(c1).mul(c2));
                    }
                }
            }
            rb.case_tensor(
                format!("(id⊗Δ_K)β({})", alpha.name_of(y)),
                &lhs.sub(&rhs),
                alpha,
            );

            // counit compatibility: (id ⊗ ε_K) β(h) = ε_K(h) 1
            let eps_k = apply_counit_on_leg(&beta, 1, |m| Ok(k.counit_mono(m)))?;
            rb.case_elem(
                format!("(id⊗ε_K)β({})", alpha.name_of(y)),
                &eps_k,
                alpha,
            );
        }
        Ok(rb.finish())
    }

    /// Compatibility of the action with the coproducts:
    /// ε_A(a◁h) = ε_A(a) ε_K(h) and
    /// Δ_A(a◁h) = Σ (a₍₁₎ ◁ h₍₁₎) h₍₂₎⁽⁻¹⁾ ⊗ (a₍₂₎ ◁ h₍₂₎⁽⁰⁾).
    pub fn check_action_coproduct_compat(&self) -> Result<CheckReport> {
        let h = self.bctx();
        let k = self.kctx();
        let alpha = self.bicross.alphabet();
        let order = self.order();
        let mut rb = ReportBuilder::new("action-coproduct-compat", "bicross", order);
        for &a in &TRANSLATIONS {
            for &y in &LORENTZ {
                let ea = h.ctx.gen_elem(a);
                let ey = h.ctx.gen_elem(y);
                let acted = self.action(&h.ctx, &ea, &ey)?;

                let eps_res = h.counit_of(&acted);
                rb.case_bool(
                    format!("ε_A({}◁{})", alpha.name_of(a), alpha.name_of(y)),
                    eps_res.is_zero(),
                    format!("{:?}", eps_res),
                );

                let lhs = h.coproduct_of(&acted)?;
                let da = &h.pres.coproduct[a as usize];
                let dk = &k.pres.coproduct[y as usize];
                let mut rhs = TensorElement::zero(2);
                for (ka, ca) in da.iter() {
                    for (kh, ch) in dk.iter() {
                        let a1 = Element::of_mono(ka[0], order);
                        let a2 = Element::of_mono(ka[1], order);
                        let h1 = Element::of_mono(kh[0], order);
                        let beta_h2 = self.coaction(&h.ctx, &Element::of_mono(kh[1], order))?;
                        let first_base = self.action(&h.ctx, &a1, &h1)?;
                        for (bk, bc) in beta_h2.iter() {
                            let first =
                                h.ctx.multiply(&first_base, &Element::of_mono(bk[0], order))?;
                            let second =
                                self.action(&h.ctx, &a2, &Element::of_mono(bk[1], order))?;
                            let coeff = ca.mul(ch).mul(bc);
                            for (fm, fc) in first.iter() {
                                for (sm, sc) in second.iter() {
                                    rhs.accumulate(
                                        [*fm, *sm, Mono::unit()],
                                        coeff.mul(fc).mul(sc),
                                    );
                                }
                            }
                        }
                    }
                }
                rb.case_tensor(
                    format!("Δ_A({}◁{})", alpha.name_of(a), alpha.name_of(y)),
                    &lhs.sub(&rhs),
                    alpha,
                );
            }
        }
        Ok(rb.finish())
    }

    /// Constructive form of the structure theorem: build the crossed product
    /// from (action, coaction) alone and compare it entry-for-entry with the
    /// deformed presentation, then run the full axiom suite on the result.
    pub fn check_reconstruction(&self) -> Result<CheckReport> {
        let h = self.bctx();
        let k = self.kctx();
        let alpha = self.bicross.alphabet();
        let order = self.order();
        let mut rb = ReportBuilder::new("reconstruction", "bicross", order);

        let iota = |r: u8| -> TensorElement {
            let mut t = TensorElement::zero(2);
            if is_lorentz(r) {
                t.accumulate([Mono::of_gen(r), Mono::unit(), Mono::unit()], ZSeries::one(order));
            } else {
                t.accumulate([Mono::unit(), Mono::of_gen(r), Mono::unit()], ZSeries::one(order));
            }
            t
        };

        // smash product on K⊗A term lists
        let cp_mul = |x: &TensorElement, y: &TensorElement| -> Result<TensorElement> {
            let mut out = TensorElement::zero(2);
            for (kx, cx) in x.iter() {
                let (hm, am) = (kx[0], kx[1]);
                for (ky, cy) in y.iter() {
                    let (gm, bm) = (ky[0], ky[1]);
                    let dg = k.coproduct_mono(&gm)?;
                    for (dk_key, dc) in dg.iter() {
                        let hg1 = k.ctx.multiply(
                            &Element::of_mono(hm, order),
                            &Element::of_mono(dk_key[0], order),
                        )?;
                        let acted = self.action(
                            &h.ctx,
                            &Element::of_mono(am, order),
                            &Element::of_mono(dk_key[1], order),
                        )?;
                        let a_side = h.ctx.multiply(&acted, &Element::of_mono(bm, order))?;
                        let coeff = cx.mul(cy).mul(dc);
                        for (m1, c1) in hg1.iter() {
                            for (m2, c2) in a_side.iter() {
                                out.accumulate(
                                    [*m1, *m2, Mono::unit()],
                                    coeff.mul(c1).mul(c2),
                                );
                            }
                        }
                    }
                }
            }
            Ok(out)
        };

        // collapse h⊗a back to the enveloping algebra
        let collapse = |x: &TensorElement| -> Result<Element> {
            let mut out = Element::zero();
            for (key, c) in x.iter() {
                let prod = h.ctx.multiply(
                    &Element::of_mono(key[0], order),
                    &Element::of_mono(key[1], order),
                )?;
                out = out.add(&prod.scale(c));
            }
            Ok(out)
        };

        // (i) commutators reproduce the bracket table
        let mut cp_brackets = crate::ncpoly::BracketTable::new();
        for hi in 0..10u8 {
            for lo in 0..hi {
                let x = iota(hi);
                let y = iota(lo);
                let cp = cp_mul(&x, &y)?.sub(&cp_mul(&y, &x)?);
                let collapsed = collapse(&cp)?;
                if !collapsed.is_zero() {
                    cp_brackets.set(hi, lo, collapsed.clone());
                }
                let table = h
                    .ctx
                    .commutator(&h.ctx.gen_elem(hi), &h.ctx.gen_elem(lo))?;
                rb.case_elem(
                    format!("[{},{}]", alpha.name_of(hi), alpha.name_of(lo)),
                    &collapsed.sub(&table),
                    alpha,
                );
            }
        }

        // (ii) coproducts: Δ(h⊗a) = Σ (h₍₁₎ ⊗ h₍₂₎⁽⁻¹⁾ a₍₁₎) ⊗ (h₍₂₎⁽⁰⁾ ⊗ a₍₂₎)
        let mut cp_coproducts: Vec<TensorElement> = Vec::new();
        for r in 0..10u8 {
            let mut four: BTreeMap<[Mono; 4], ZSeries> = BTreeMap::new();
            if is_lorentz(r) {
                for (dk_key, dc) in k.pres.coproduct[r as usize].iter() {
                    let beta2 = self.coaction(&h.ctx, &Element::of_mono(dk_key[1], order))?;
                    for (bk, bc) in beta2.iter() {
                        let key = [dk_key[0], bk[0], bk[1], Mono::unit()];
                        let c = dc.mul(bc);
                        if c.is_zero() {
                            continue;
                        }
                        let entry = four.entry(key).or_insert_with(|| ZSeries::zero(order));
                        *entry = entry.add(&c);
                    }
                }
            } else {
                for (da_key, dc) in h.pres.coproduct[r as usize].iter() {
                    let key = [Mono::unit(), da_key[0], Mono::unit(), da_key[1]];
                    let entry = four.entry(key).or_insert_with(|| ZSeries::zero(order));
                    *entry = entry.add(dc);
                }
            }
            // map (k1, a1, k2, a2) back into U⊗U
            let mut back = TensorElement::zero(2);
            for (key, c) in &four {
                if c.is_zero() {
                    continue;
                }
                let left = h.ctx.multiply(
                    &Element::of_mono(key[0], order),
                    &Element::of_mono(key[1], order),
                )?;
                let right = h.ctx.multiply(
                    &Element::of_mono(key[2], order),
                    &Element::of_mono(key[3], order),
                )?;
                for (lm, lc) in left.iter() {
                    for (rm, rc) in right.iter() {
                        back.accumulate([*lm, *rm, Mono::unit()], c.mul(lc).mul(rc));
                    }
                }
            }
            rb.case_tensor(
                format!("Δ({})", alpha.name_of(r)),
                &back.sub(&h.pres.coproduct[r as usize]),
                alpha,
            );
            cp_coproducts.push(back);
        }

        // (iii) counit: ε(h⊗a) = ε_K(h) ε_A(a), zero on all ten generators
        for r in 0..10u8 {
            rb.case_bool(
                format!("ε({})", alpha.name_of(r)),
                h.pres.counit[r as usize].is_zero(),
                "nonzero counit".into(),
            );
        }

        // (iv) the reconstructed presentation carries the full Hopf suite;
        // its antipode is solved from the reconstructed coproduct alone
        let algebra = Arc::new(Algebra {
            alphabet: self.bicross.algebra.alphabet.clone(),
            brackets: cp_brackets,
        });
        let recon_ctx = Context::new(algebra.clone(), order);
        match solve_antipode(&recon_ctx, &cp_coproducts) {
            Ok(antipode) => {
                for r in 0..10u8 {
                    rb.case_elem(
                        format!("γ({})", alpha.name_of(r)),
                        &antipode[r as usize].sub(&self.bicross.antipode[r as usize]),
                        alpha,
                    );
                }
                let recon = Arc::new(HopfPresentation {
                    name: "bicross-reconstructed".into(),
                    algebra,
                    order,
                    coproduct: cp_coproducts,
                    counit: vec![ZSeries::zero(order); 10],
                    antipode,
                });
                let rh = HopfContext::new(recon);
                for rep in [
                    check_jacobi(&rh)?,
                    check_coproduct_homomorphism(&rh)?,
                    check_coassociativity(&rh, &[])?,
                    check_counit(&rh, &[])?,
                    check_antipode(&rh, &[], None)?,
                ] {
                    rb.case_bool(
                        format!("reconstructed suite: {}", rep.id),
                        rep.passed,
                        format!("{} of {} cases failed", rep.cases_failed, rep.cases_total),
                    );
                }
            }
            Err(e) => {
                rb.case_bool("antipode solve".into(), false, e.to_string());
            }
        }

        rb.note(
            "coaction multiplicativity is exercised constructively by the reconstruction; \
             the abstract compatibility condition for the coaction of a product is not \
             separately transcribed",
        );
        Ok(rb.finish())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn action_table_spot_values() {
        let data = BicrossData::new(4).unwrap();
        let h = HopfContext::new(data.bicross.clone());
        // α(P+⊗J3) = 0, α(P-⊗E1) = -P1
        assert!(data.action_entry(PP, J3).is_zero());
        assert_eq!(data.action_entry(PM, E1), Element::of_gen(P1, 4).neg());
        // α extends as a derivation over translation products
        let a = h.ctx.multiply(&h.ctx.gen_elem(P1), &h.ctx.gen_elem(P2)).unwrap();
        let acted = data.action(&h.ctx, &a, &h.ctx.gen_elem(K3)).unwrap();
        let lhs = h
            .ctx
            .multiply(&data.action_entry(P1, K3), &h.ctx.gen_elem(P2))
            .unwrap();
        let rhs = h
            .ctx
            .multiply(&h.ctx.gen_elem(P1), &data.action_entry(P2, K3))
            .unwrap();
        assert_eq!(acted, lhs.add(&rhs));
    }

    #[test]
    fn coaction_counit_recovers_generator() {
        let data = BicrossData::new(3).unwrap();
        let h = HopfContext::new(data.bicross.clone());
        let beta = data.coaction_entry(K3);
        let back = apply_counit_on_leg(&beta, 0, |m| Ok(h.counit_mono(m))).unwrap();
        assert_eq!(back, Element::of_gen(K3, 3));
    }

    #[test]
    fn action_rejects_wrong_subalgebra() {
        let data = BicrossData::new(2).unwrap();
        let h = HopfContext::new(data.bicross.clone());
        let err = data.action(&h.ctx, &h.ctx.gen_elem(K3), &h.ctx.gen_elem(K3));
        assert!(matches!(err, Err(AlgebraError::SubalgebraViolation(_))));
        let err = data.action(&h.ctx, &h.ctx.gen_elem(P1), &h.ctx.gen_elem(P1));
        assert!(matches!(err, Err(AlgebraError::SubalgebraViolation(_))));
    }

    #[test]
    fn compat_suite_passes_at_low_order() {
        let data = BicrossData::new(2).unwrap();
        assert!(data.check_action_closure().unwrap().passed);
        assert!(data.check_sign_coherence().unwrap().passed);
        assert!(data.check_module_algebra().unwrap().passed);
        assert!(data.check_comodule_coalgebra().unwrap().passed);
        assert!(data.check_action_coproduct_compat().unwrap().passed);
        assert!(data.check_reconstruction().unwrap().passed);
    }
}
