//! Hopf-presentation container and the generic axiom-verification engine.
//!
//! A presentation fixes the alphabet, the bracket table and the structure
//! maps on generators; Δ and ε extend multiplicatively, γ anti-
//! multiplicatively. Checks return exact pass/fail with residual witnesses —
//! there are no tolerances anywhere.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ncpoly::{
    Algebra, AlgebraError, Alphabet, Context, Element, Mono, Result, DEFAULT_FUEL,
};
use crate::scalars::ZSeries;
use crate::tensorspace::{
    apply_alg_on_leg, apply_cop_on_leg, apply_counit_on_leg, contract_legs, exp_tensor,
    tensor_mul, TensorElement,
};

/// Generator set, bracket table and structure maps of one presentation.
#[derive(Clone, Debug)]
pub struct HopfPresentation {
    pub name: String,
    pub algebra: Arc<Algebra>,
    /// Truncation order the tables were built at.
    pub order: usize,
    /// Coproduct of each generator, indexed by rank.
    pub coproduct: Vec<TensorElement>,
    /// Counit of each generator, indexed by rank.
    pub counit: Vec<ZSeries>,
    /// Antipode of each generator, indexed by rank.
    pub antipode: Vec<Element>,
}

impl HopfPresentation {
    pub fn alphabet(&self) -> &Alphabet {
        &self.algebra.alphabet
    }

    /// Same presentation with one structure table replaced.
    pub fn with_antipode(&self, antipode: Vec<Element>, name: &str) -> Self {
        let mut p = self.clone();
        p.antipode = antipode;
        p.name = name.to_string();
        p
    }
}

/// Evaluation context bound to a presentation: carries the rewrite context
/// plus memo tables for the extended structure maps.
pub struct HopfContext {
    pub pres: Arc<HopfPresentation>,
    pub ctx: Context,
    memo_cop: RefCell<HashMap<Mono, Rc<TensorElement>>>,
    memo_anti: RefCell<HashMap<Mono, Rc<Element>>>,
}

impl HopfContext {
    pub fn new(pres: Arc<HopfPresentation>) -> Self {
        Self::with_fuel(pres, DEFAULT_FUEL)
    }

    pub fn with_fuel(pres: Arc<HopfPresentation>, fuel: u64) -> Self {
        let ctx = Context::with_fuel(pres.algebra.clone(), pres.order, fuel);
        HopfContext {
            pres,
            ctx,
            memo_cop: RefCell::new(HashMap::new()),
            memo_anti: RefCell::new(HashMap::new()),
        }
    }

    pub fn order(&self) -> usize {
        self.pres.order
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.pres.alphabet()
    }

    /// Δ of a monomial: product of generator coproducts (homomorphism
    /// extension).
    pub fn coproduct_mono(&self, m: &Mono) -> Result<Rc<TensorElement>> {
        if let Some(hit) = self.memo_cop.borrow().get(m) {
            return Ok(hit.clone());
        }
        let mut acc = TensorElement::unit(2, self.order());
        for g in m.letters() {
            acc = tensor_mul(&self.ctx, &acc, &self.pres.coproduct[g as usize])?;
        }
        let rc = Rc::new(acc);
        self.memo_cop.borrow_mut().insert(*m, rc.clone());
        Ok(rc)
    }

    pub fn coproduct_of(&self, a: &Element) -> Result<TensorElement> {
        let mut out = TensorElement::zero(2);
        for (m, c) in a.iter() {
            let d = self.coproduct_mono(m)?;
            out = out.add(&d.scale(c));
        }
        Ok(out)
    }

    /// γ of a monomial: anti-multiplicative extension (letters reversed).
    pub fn antipode_mono(&self, m: &Mono) -> Result<Rc<Element>> {
        if let Some(hit) = self.memo_anti.borrow().get(m) {
            return Ok(hit.clone());
        }
        let letters: Vec<u8> = m.letters().collect();
        let mut acc = self.ctx.one();
        for &g in letters.iter().rev() {
            acc = self.ctx.multiply(&acc, &self.pres.antipode[g as usize])?;
        }
        let rc = Rc::new(acc);
        self.memo_anti.borrow_mut().insert(*m, rc.clone());
        Ok(rc)
    }

    pub fn antipode_of(&self, a: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (m, c) in a.iter() {
            let g = self.antipode_mono(m)?;
            out = out.add(&g.scale(c));
        }
        Ok(out)
    }

    /// ε of a monomial: product of generator counits.
    pub fn counit_mono(&self, m: &Mono) -> ZSeries {
        let mut acc = ZSeries::one(self.order());
        for g in m.letters() {
            acc = acc.mul(&self.pres.counit[g as usize]);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn counit_of(&self, a: &Element) -> ZSeries {
        let mut acc = ZSeries::zero(self.order());
        for (m, c) in a.iter() {
            acc = acc.add(&self.counit_mono(m).mul(c));
        }
        acc
    }
}

const MAX_WITNESSES: usize = 3;

/// One failed case: the case label and the algfile-printed residual.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub case: String,
    pub residual: String,
}

/// Structured outcome of one check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub presentation: String,
    pub order: usize,
    pub passed: bool,
    pub cases_total: usize,
    pub cases_failed: usize,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

/// Accumulates case outcomes for one check.
pub struct ReportBuilder {
    id: String,
    presentation: String,
    order: usize,
    total: usize,
    failed: usize,
    witnesses: Vec<Witness>,
    notes: Vec<String>,
}

impl ReportBuilder {
    pub fn new(id: &str, presentation: &str, order: usize) -> Self {
        ReportBuilder {
            id: id.to_string(),
            presentation: presentation.to_string(),
            order,
            total: 0,
            failed: 0,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn case_elem(&mut self, label: String, residual: &Element, alphabet: &Alphabet) {
        self.total += 1;
        if !residual.is_zero() {
            self.failed += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(Witness {
                    case: label,
                    residual: crate::algfile::print_element(alphabet, residual),
                });
            }
        }
    }

    pub fn case_tensor(&mut self, label: String, residual: &TensorElement, alphabet: &Alphabet) {
        self.total += 1;
        if !residual.is_zero() {
            self.failed += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(Witness {
                    case: label,
                    residual: crate::algfile::print_tensor(alphabet, residual),
                });
            }
        }
    }

    pub fn case_bool(&mut self, label: String, ok: bool, detail: String) {
        self.total += 1;
        if !ok {
            self.failed += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(Witness { case: label, residual: detail });
            }
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn failed_so_far(&self) -> bool {
        self.failed > 0
    }

    pub fn finish(self) -> CheckReport {
        CheckReport {
            id: self.id,
            presentation: self.presentation,
            order: self.order,
            passed: self.failed == 0,
            cases_total: self.total,
            cases_failed: self.failed,
            witnesses: self.witnesses,
            notes: self.notes,
        }
    }
}

fn gen_name(alpha: &Alphabet, r: u8) -> String {
    alpha.name_of(r).to_string()
}

/// Deterministically sampled degree-2 products, used to exercise the
/// homomorphic extension code on top of the generator-level axioms.
pub fn sample_degree2_products(
    h: &HopfContext,
    seed: u64,
    count: usize,
) -> Result<Vec<(String, Element)>> {
    let n = h.alphabet().len() as u8;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let x = rng.gen_range(0..n);
        let y = rng.gen_range(0..n);
        let e = h.ctx.multiply(&h.ctx.gen_elem(x), &h.ctx.gen_elem(y))?;
        let label = format!(
            "{}·{}",
            gen_name(h.alphabet(), x),
            gen_name(h.alphabet(), y)
        );
        out.push((label, e));
    }
    Ok(out)
}

/// Jacobi identity on all generator triples, computed in the enveloping
/// algebra; a nonzero residual means the bracket table is inconsistent.
pub fn check_jacobi(h: &HopfContext) -> Result<CheckReport> {
    let alpha = h.alphabet();
    let n = alpha.len() as u8;
    let mut rb = ReportBuilder::new("jacobi", &h.pres.name, h.order());
    for x in 0..n {
        for y in (x + 1)..n {
            for z in (y + 1)..n {
                let ex = h.ctx.gen_elem(x);
                let ey = h.ctx.gen_elem(y);
                let ez = h.ctx.gen_elem(z);
                let xy = h.ctx.commutator(&ex, &ey)?;
                let yz = h.ctx.commutator(&ey, &ez)?;
                let zx = h.ctx.commutator(&ez, &ex)?;
                let j = h
                    .ctx
                    .commutator(&xy, &ez)?
                    .add(&h.ctx.commutator(&yz, &ex)?)
                    .add(&h.ctx.commutator(&zx, &ey)?);
                let label = format!(
                    "({},{},{})",
                    gen_name(alpha, x),
                    gen_name(alpha, y),
                    gen_name(alpha, z)
                );
                rb.case_elem(label, &j, alpha);
            }
        }
    }
    Ok(rb.finish())
}

/// Antisymmetry of the commutator on every generator pair.
pub fn check_antisymmetry(h: &HopfContext) -> Result<CheckReport> {
    let alpha = h.alphabet();
    let n = alpha.len() as u8;
    let mut rb = ReportBuilder::new("antisymmetry", &h.pres.name, h.order());
    for x in 0..n {
        for y in (x + 1)..n {
            let ex = h.ctx.gen_elem(x);
            let ey = h.ctx.gen_elem(y);
            let r = h.ctx.commutator(&ex, &ey)?.add(&h.ctx.commutator(&ey, &ex)?);
            rb.case_elem(
                format!("({},{})", gen_name(alpha, x), gen_name(alpha, y)),
                &r,
                alpha,
            );
        }
    }
    Ok(rb.finish())
}

/// Δ is an algebra map: Δ([X,Y]) = [Δ(X), Δ(Y)] on all generator pairs.
pub fn check_coproduct_homomorphism(h: &HopfContext) -> Result<CheckReport> {
    let alpha = h.alphabet();
    let n = alpha.len() as u8;
    let mut rb = ReportBuilder::new("delta-homomorphism", &h.pres.name, h.order());
    for x in 0..n {
        for y in (x + 1)..n {
            let bracket = h.ctx.commutator(&h.ctx.gen_elem(x), &h.ctx.gen_elem(y))?;
            let lhs = h.coproduct_of(&bracket)?;
            let dx = &h.pres.coproduct[x as usize];
            let dy = &h.pres.coproduct[y as usize];
            let rhs = tensor_mul(&h.ctx, dx, dy)?.sub(&tensor_mul(&h.ctx, dy, dx)?);
            let residual = lhs.sub(&rhs);
            rb.case_tensor(
                format!("({},{})", gen_name(alpha, x), gen_name(alpha, y)),
                &residual,
                alpha,
            );
        }
    }
    Ok(rb.finish())
}

/// (Δ⊗id)Δ = (id⊗Δ)Δ on generators plus sampled degree-2 products.
pub fn check_coassociativity(h: &HopfContext, samples: &[(String, Element)]) -> Result<CheckReport> {
    let alpha = h.alphabet();
    let mut rb = ReportBuilder::new("coassociativity", &h.pres.name, h.order());
    let run = |label: String, e: &Element, rb: &mut ReportBuilder| -> Result<()> {
        let t = h.coproduct_of(e)?;
        let left = apply_cop_on_leg(&t, 0, |m| h.coproduct_mono(m).map(|rc| (*rc).clone()))?;
        let right = apply_cop_on_leg(&t, 1, |m| h.coproduct_mono(m).map(|rc| (*rc).clone()))?;
        rb.case_tensor(label, &left.sub(&right), alpha);
        Ok(())
    };
    for r in 0..alpha.len() as u8 {
        run(gen_name(alpha, r), &h.ctx.gen_elem(r), &mut rb)?;
    }
    for (label, e) in samples {
        run(format!("sample {label}"), e, &mut rb)?;
    }
    Ok(rb.finish())
}

/// (ε⊗id)Δ = id = (id⊗ε)Δ on generators plus sampled products.
pub fn check_counit(h: &HopfContext, samples: &[(String, Element)]) -> Result<CheckReport> {
    let alpha = h.alphabet();
    let mut rb = ReportBuilder::new("counit", &h.pres.name, h.order());
    let run = |label: String, e: &Element, rb: &mut ReportBuilder| -> Result<()> {
        let t = h.coproduct_of(e)?;
        let left = apply_counit_on_leg(&t, 0, |m| Ok(h.counit_mono(m)))?;
        let right = apply_counit_on_leg(&t, 1, |m| Ok(h.counit_mono(m)))?;
        rb.case_elem(format!("{label} (left)"), &left.sub(e), alpha);
        rb.case_elem(format!("{label} (right)"), &right.sub(e), alpha);
        Ok(())
    };
    for r in 0..alpha.len() as u8 {
        run(gen_name(alpha, r), &h.ctx.gen_elem(r), &mut rb)?;
    }
    for (label, e) in samples {
        run(format!("sample {label}"), e, &mut rb)?;
    }
    Ok(rb.finish())
}

fn antipode_axiom_residuals(h: &HopfContext, e: &Element) -> Result<(Element, Element)> {
    let t = h.coproduct_of(e)?;
    let eps = h.counit_of(e);
    let target = Element::of_mono_coeff(Mono::unit(), eps);
    let left = contract_legs(
        &h.ctx,
        &apply_alg_on_leg(&t, 0, |m| h.antipode_mono(m).map(|rc| (*rc).clone()))?,
    )?;
    let right = contract_legs(
        &h.ctx,
        &apply_alg_on_leg(&t, 1, |m| h.antipode_mono(m).map(|rc| (*rc).clone()))?,
    )?;
    Ok((left.sub(&target), right.sub(&target)))
}

/// m(γ⊗id)Δ = ηε = m(id⊗γ)Δ on generators plus sampled products.
///
/// When `alternate` is given and the check as written fails, the same axiom
/// is re-run against the alternate antipode table and the comparison verdict
/// is appended to the report notes (neither table is silently substituted).
pub fn check_antipode(
    h: &HopfContext,
    samples: &[(String, Element)],
    alternate: Option<(&str, &HopfContext)>,
) -> Result<CheckReport> {
    let alpha = h.alphabet();
    let mut rb = ReportBuilder::new("antipode", &h.pres.name, h.order());
    let run = |label: String, e: &Element, rb: &mut ReportBuilder| -> Result<()> {
        let (l, r) = antipode_axiom_residuals(h, e)?;
        rb.case_elem(format!("{label} (left)"), &l, alpha);
        rb.case_elem(format!("{label} (right)"), &r, alpha);
        Ok(())
    };
    for r in 0..alpha.len() as u8 {
        run(gen_name(alpha, r), &h.ctx.gen_elem(r), &mut rb)?;
    }
    for (label, e) in samples {
        run(format!("sample {label}"), e, &mut rb)?;
    }
    if rb.failed_so_far() {
        if let Some((alt_label, alt)) = alternate {
            let mut alt_failed = 0usize;
            let mut alt_total = 0usize;
            for r in 0..alpha.len() as u8 {
                let (l, rr) = antipode_axiom_residuals(alt, &alt.ctx.gen_elem(r))?;
                alt_total += 2;
                if !l.is_zero() {
                    alt_failed += 1;
                }
                if !rr.is_zero() {
                    alt_failed += 1;
                }
            }
            rb.note(format!(
                "antipode as written fails; alternate table `{alt_label}`: {} of {} cases fail",
                alt_failed, alt_total
            ));
        }
    }
    Ok(rb.finish())
}

/// Group-likeness as a theorem: exp(Δ(a)) = exp(a) ⊗ exp(a), and Δ applied
/// to the expanded exp(a) agrees, for `a` of z-valuation >= 1.
pub fn check_grouplike(h: &HopfContext, label: &str, a: &Element) -> Result<CheckReport> {
    let alpha = h.alphabet();
    let mut rb = ReportBuilder::new("grouplike", &h.pres.name, h.order());
    let ea = h.ctx.exp_element(a)?;
    let expected = TensorElement::tensor2(&ea, &ea, h.order());
    let via_exp_tensor = exp_tensor(&h.ctx, &h.coproduct_of(a)?)?;
    let via_hom = h.coproduct_of(&ea)?;
    rb.case_tensor(
        format!("exp(Δ({label})) = exp({label})⊗exp({label})"),
        &via_exp_tensor.sub(&expected),
        alpha,
    );
    rb.case_tensor(
        format!("Δ(exp({label})) = exp({label})⊗exp({label})"),
        &via_hom.sub(&expected),
        alpha,
    );
    Ok(rb.finish())
}

/// Solve the antipode on generators from the coproduct alone by convolution
/// inversion.
///
/// For each generator X, Δ(X) = X ⊗ v0 + Σ u_i ⊗ v_i with every u_i over
/// already-solved generators; then γ(X) = -(Σ γ(u_i) v_i) · v0⁻¹. Returns
/// an error if no solve order exists.
pub fn solve_antipode(ctx: &Context, coproduct: &[TensorElement]) -> Result<Vec<Element>> {
    let n = coproduct.len();
    let mut solved: Vec<Option<Element>> = vec![None; n];

    let anti_mono = |solved: &Vec<Option<Element>>, m: &Mono| -> Result<Option<Element>> {
        let letters: Vec<u8> = m.letters().collect();
        let mut acc = ctx.one();
        for &g in letters.iter().rev() {
            match &solved[g as usize] {
                Some(img) => acc = ctx.multiply(&acc, img)?,
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    };

    loop {
        let mut progress = false;
        for g in 0..n as u8 {
            if solved[g as usize].is_some() {
                continue;
            }
            let gm = Mono::of_gen(g);
            // split Δ(g) into the g⊗v0 part and the rest
            let mut v0 = Element::zero();
            let mut rest: Vec<(Mono, Mono, ZSeries)> = Vec::new();
            let mut blocked = false;
            for (key, c) in coproduct[g as usize].iter() {
                if key[0] == gm {
                    v0.accumulate(key[1], c.clone());
                } else {
                    if key[0].exp(g) > 0 {
                        blocked = true;
                        break;
                    }
                    rest.push((key[0], key[1], c.clone()));
                }
            }
            if blocked {
                continue;
            }
            // γ of every rest leg-1 monomial must already be available
            let mut sum = Element::zero();
            let mut ready = true;
            for (u, v, c) in &rest {
                match anti_mono(&solved, u)? {
                    Some(gu) => {
                        let prod = ctx.multiply(&gu, &Element::of_mono(*v, ctx.order))?;
                        sum = sum.add(&prod.scale(c));
                    }
                    None => {
                        ready = false;
                        break;
                    }
                }
            }
            if !ready {
                continue;
            }
            let v0_inv = ctx.invert_unit(&v0)?;
            let image = ctx.multiply(&sum.neg(), &v0_inv)?;
            solved[g as usize] = Some(image);
            progress = true;
        }
        if solved.iter().all(Option::is_some) {
            return Ok(solved.into_iter().map(Option::unwrap).collect());
        }
        if !progress {
            let stuck = (0..n)
                .find(|&i| solved[i].is_none())
                .map(|i| i.to_string())
                .unwrap_or_default();
            return Err(AlgebraError::AntipodeSolve(stuck));
        }
    }
}

/// A single-site perturbation of a presentation's structure tables.
pub struct Mutant {
    pub label: String,
    pub pres: Arc<HopfPresentation>,
}

fn mutate_series(c: &ZSeries, flip: bool) -> ZSeries {
    if flip {
        c.neg()
    } else {
        c.scale(&crate::scalars::rint(2))
    }
}

fn mutate_element(e: &Element, site: &Mono, flip: bool) -> Element {
    let mut out = Element::zero();
    for (m, c) in e.iter() {
        let c2 = if m == site { mutate_series(c, flip) } else { c.clone() };
        out.accumulate(*m, c2);
    }
    out
}

fn mutate_tensor(t: &TensorElement, site: &[Mono; 3], flip: bool) -> TensorElement {
    let mut out = TensorElement::zero(t.arity());
    for (k, c) in t.iter() {
        let c2 = if k == site { mutate_series(c, flip) } else { c.clone() };
        out.accumulate(*k, c2);
    }
    out
}

/// Every single-term sign flip and coefficient doubling across the bracket,
/// coproduct, and antipode tables. The counit table is identically zero here,
/// so it has no sign to flip.
pub fn enumerate_mutants(pres: &HopfPresentation) -> Vec<Mutant> {
    let alpha = pres.alphabet();
    let mut out = Vec::new();
    for ((hi, lo), entry) in pres.algebra.brackets.sorted_entries() {
        for (m, _) in entry.iter() {
            for flip in [true, false] {
                let mut table = pres.algebra.brackets.clone();
                table.set(hi, lo, mutate_element(entry, m, flip));
                let algebra = Arc::new(Algebra {
                    alphabet: pres.algebra.alphabet.clone(),
                    brackets: table,
                });
                let mut p = pres.clone();
                p.algebra = algebra;
                out.push(Mutant {
                    label: format!(
                        "bracket[{},{}] term {} {}",
                        alpha.name_of(hi),
                        alpha.name_of(lo),
                        crate::algfile::print_mono(alpha, m),
                        if flip { "sign-flip" } else { "coeff-double" }
                    ),
                    pres: Arc::new(p),
                });
            }
        }
    }
    for r in 0..alpha.len() as u8 {
        let keys: Vec<[Mono; 3]> = pres.coproduct[r as usize].iter().map(|(k, _)| *k).collect();
        for k in keys {
            for flip in [true, false] {
                let mut p = pres.clone();
                p.coproduct[r as usize] = mutate_tensor(&pres.coproduct[r as usize], &k, flip);
                out.push(Mutant {
                    label: format!(
                        "coproduct[{}] term {} {}",
                        alpha.name_of(r),
                        crate::algfile::print_tensor_mono(alpha, &k, 2),
                        if flip { "sign-flip" } else { "coeff-double" }
                    ),
                    pres: Arc::new(p),
                });
            }
        }
        let sites: Vec<Mono> = pres.antipode[r as usize].iter().map(|(m, _)| *m).collect();
        for m in sites {
            for flip in [true, false] {
                let mut p = pres.clone();
                p.antipode[r as usize] = mutate_element(&pres.antipode[r as usize], &m, flip);
                out.push(Mutant {
                    label: format!(
                        "antipode[{}] term {} {}",
                        alpha.name_of(r),
                        crate::algfile::print_mono(alpha, &m),
                        if flip { "sign-flip" } else { "coeff-double" }
                    ),
                    pres: Arc::new(p),
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    #[test]
    fn classical_axioms_pass_at_low_order() {
        let pres = Arc::new(models::build_classical(3).unwrap());
        let h = HopfContext::new(pres);
        let samples = sample_degree2_products(&h, 7, 4).unwrap();
        assert!(check_jacobi(&h).unwrap().passed);
        assert!(check_antisymmetry(&h).unwrap().passed);
        assert!(check_coproduct_homomorphism(&h).unwrap().passed);
        assert!(check_coassociativity(&h, &samples).unwrap().passed);
        assert!(check_counit(&h, &samples).unwrap().passed);
        assert!(check_antipode(&h, &samples, None).unwrap().passed);
    }

    #[test]
    fn corrupted_bracket_fails_jacobi_with_witness() {
        let base = models::build_bicross(3).unwrap();
        // flip the sign of the boost–lightcone bracket wholesale
        let (hi, lo) = (models::K3, models::PP);
        let entry = base.algebra.brackets.get(hi, lo).unwrap().neg();
        let mut table = base.algebra.brackets.clone();
        table.set(hi, lo, entry);
        let mut broken = base.clone();
        broken.algebra = Arc::new(Algebra {
            alphabet: base.algebra.alphabet.clone(),
            brackets: table,
        });
        broken.name = "bicross-broken".into();
        let h = HopfContext::new(Arc::new(broken));
        let report = check_jacobi(&h).unwrap();
        assert!(!report.passed);
        assert!(!report.witnesses.is_empty());
        // the flipped [K3,P+] is detected through triples that route the
        // bracket past F-type generators
        let failing: Vec<&str> = report.witnesses.iter().map(|w| w.case.as_str()).collect();
        assert!(failing.iter().any(|c| c.contains("P+") && c.contains("F1")), "{failing:?}");
    }

    #[test]
    fn antipode_solver_recovers_the_table() {
        let pres = Arc::new(models::build_bicross(4).unwrap());
        let h = HopfContext::new(pres.clone());
        let solved = solve_antipode(&h.ctx, &pres.coproduct).unwrap();
        assert_eq!(solved, pres.antipode);
    }
}
