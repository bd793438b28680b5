//! Type-A1 decomposition engines: Clebsch-Gordan sets, the Doty-Henke
//! Krull-Schmidt decomposition of L(a) ⊗ L(b), regular parts, generic direct
//! summands for simple and dual Weyl modules, and truncated injectives.
//!
//! Weights are integers in units of the fundamental weight ϖ; `t_a` denotes
//! translation by aϖ. Every `x ∈ W_ext^+` satisfies `x∙0 = t_a ω∙0` for a
//! unique `a ≥ 0` and `ω ∈ Ω` (unique for ℓ > 2; at ℓ = 2 we normalize to
//! ω = e).

use std::collections::BTreeMap;

use crate::alcove::{Case, EllContext, ExtAffine};
use crate::error::{Error, Result};
use crate::label::{Decomposition, ModuleLabel};
use crate::roots::{Kind, Weight};

fn require_a1(ctx: &EllContext) -> Result<()> {
    if ctx.kind() != Kind::A1 {
        return Err(Error::EngineScope(format!("{:?}", ctx.root_system())));
    }
    Ok(())
}

/// Classical Clebsch-Gordan set `{|a−b| + 2i | i = 0..min(a,b)}`.
pub fn cg_set(a: i64, b: i64) -> Result<Vec<i64>> {
    if a < 0 || b < 0 {
        return Err(Error::Range(format!("CG arguments must be non-negative, got ({a},{b})")));
    }
    Ok((0..=a.min(b)).map(|i| (a - b).abs() + 2 * i).collect())
}

/// `CG_ℓ(a,b) = CG(a,b) \ {2ℓ−2−c | c ∈ CG(a,b), c ≥ ℓ}` for restricted a, b.
pub fn cg_ell_set(a: i64, b: i64, ctx: &EllContext) -> Result<Vec<i64>> {
    require_a1(ctx)?;
    let ell = ctx.ell();
    if !(0..ell).contains(&a) || !(0..ell).contains(&b) {
        return Err(Error::Range(format!("CG_ell arguments must be ℓ-restricted, got ({a},{b})")));
    }
    let cg = cg_set(a, b)?;
    let removed: Vec<i64> = cg.iter().filter(|&&c| c >= ell).map(|&c| 2 * ell - 2 - c).collect();
    Ok(cg.into_iter().filter(|c| !removed.contains(c)).collect())
}

/// Normalization `x∙0 = t_a ω∙0` of a dominant-orbit element.
#[derive(Clone, Debug)]
pub struct A1Params {
    pub a: i64,
    pub omega: ExtAffine,
}

pub fn a1_params(x: &ExtAffine, ctx: &EllContext) -> Result<A1Params> {
    require_a1(ctx)?;
    let x0 = ctx.ell_dot(x, &Weight::zero(1));
    if !x0.is_dominant() {
        return Err(Error::NotDominant(format!("x∙0 = {x0}")));
    }
    let (digit, lambda) = ctx.split_restricted(&x0)?;
    let omega = ctx
        .omega_group()
        .iter()
        .find(|o| ctx.ell_dot(o, &Weight::zero(1)) == digit)
        .cloned()
        .ok_or_else(|| Error::Block(format!("x∙0 = {x0} is not in the extended principal block")))?;
    Ok(A1Params { a: lambda.coord(0), omega })
}

/// Base-ℓ digits, little-endian, at least one digit.
fn digits(mut n: i64, ell: i64) -> Vec<i64> {
    let mut out = Vec::new();
    loop {
        out.push(n % ell);
        n /= ell;
        if n == 0 {
            break;
        }
    }
    out
}

fn product_of_simples(a: i64, b: i64, ctx: &EllContext) -> Result<crate::character::Character> {
    let ca = ctx.simple_character(&Weight::new(vec![a]))?;
    let cb = ctx.simple_character(&Weight::new(vec![b]))?;
    ca.product(&cb)
}

/// `L(a) ⊗ L(b) ≅ ⊕_{c ∈ CG_ℓ(a,b)} T(c)` for restricted a, b (both cases).
pub fn restricted_tensor(a: i64, b: i64, ctx: &EllContext) -> Result<Decomposition> {
    let cs = cg_ell_set(a, b, ctx)?;
    let expected = product_of_simples(a, b, ctx)?;
    let mut dec = Decomposition::new(ctx, expected, true);
    for c in cs {
        dec.add(ModuleLabel::Tilting(Weight::new(vec![c])), 1);
    }
    Ok(dec)
}

/// Doty-Henke: the full Krull-Schmidt decomposition
/// `L(a) ⊗ L(b) ≅ ⊕_u J(u)` with `u_i ∈ CG_ℓ(a_i, b_i)` digitwise.
pub fn doty_henke(a: i64, b: i64, ctx: &EllContext) -> Result<Decomposition> {
    require_a1(ctx)?;
    if ctx.case() != Case::Modular {
        return Err(Error::Case("Doty-Henke applies in the modular case; use regular_part for the quantum analogue".into()));
    }
    if a < 0 || b < 0 {
        return Err(Error::Range(format!("({a},{b})")));
    }
    let ell = ctx.ell();
    let da = digits(a, ell);
    let db = digits(b, ell);
    let len = da.len().max(db.len());
    let mut choices: Vec<Vec<i64>> = Vec::with_capacity(len);
    for i in 0..len {
        let ai = da.get(i).copied().unwrap_or(0);
        let bi = db.get(i).copied().unwrap_or(0);
        choices.push(cg_ell_set(ai, bi, ctx)?);
    }
    let expected = product_of_simples(a, b, ctx)?;
    let mut dec = Decomposition::new(ctx, expected, true);
    let mut stack: Vec<Vec<i64>> = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == len {
            dec.add(ModuleLabel::Jmod(prefix), 1);
            continue;
        }
        for &c in &choices[prefix.len()] {
            let mut p = prefix.clone();
            p.push(c);
            stack.push(p);
        }
    }
    Ok(dec)
}

/// Full quantum Krull-Schmidt decomposition of `L(a) ⊗ L(b)`: restricted
/// digits give tiltings, the classical digits tensor in as twisted classical
/// simples, and each `T(c) ⊗ L_C(c')^{[1]}` is indecomposable (the
/// restriction of T(c) to the small quantum group has simple socle).
pub fn quantum_full_tensor(a: i64, b: i64, ctx: &EllContext) -> Result<Decomposition> {
    require_a1(ctx)?;
    if ctx.case() != Case::Quantum {
        return Err(Error::Case("use doty_henke in the modular case".into()));
    }
    if a < 0 || b < 0 {
        return Err(Error::Range(format!("({a},{b})")));
    }
    let ell = ctx.ell();
    let (a0, a1) = (a % ell, a / ell);
    let (b0, b1) = (b % ell, b / ell);
    let expected = product_of_simples(a, b, ctx)?;
    let mut dec = Decomposition::new(ctx, expected, true);
    for c in cg_ell_set(a0, b0, ctx)? {
        for cc in cg_set(a1, b1)? {
            let label = ModuleLabel::tensor(
                1,
                vec![
                    ModuleLabel::Tilting(Weight::new(vec![c])),
                    ModuleLabel::FrobTwist {
                        inner: Box::new(ModuleLabel::ClassicalSimple(Weight::new(vec![cc]))),
                        power: 1,
                    },
                ],
            );
            dec.add(label, 1);
        }
    }
    Ok(dec)
}

/// Regular part of `L(x∙0) ⊗ L(y∙0)`.
///
/// Quantum: `⊕_{c ∈ CG(a,b)} T^{ωω′} L(ℓc)`. Modular:
/// `⊕_u T^{ωω′} J(u)^{[1]}` over digit choices `u_i ∈ CG_ℓ(a_i, b_i)`; these
/// twisted labels are spelled as J-digit strings with the Ω-twist folded into
/// the restricted digit.
pub fn regular_part(x: &ExtAffine, y: &ExtAffine, ctx: &EllContext) -> Result<Decomposition> {
    let px = a1_params(x, ctx)?;
    let py = a1_params(y, ctx)?;
    let oo = px.omega.compose(&py.omega);
    let twist_digit = ctx.ell_dot(&oo, &Weight::zero(1)).coord(0);
    let (a, b) = (px.a, py.a);
    match ctx.case() {
        Case::Quantum => {
            let mut labels = Vec::new();
            let mut expected = crate::character::Character::zero(ctx.root_system().clone());
            for c in cg_set(a, b)? {
                let weight = ctx.ell_dot(
                    &ExtAffine::translation(Weight::new(vec![c])).compose(&oo),
                    &Weight::zero(1),
                );
                expected.add_scaled(&ctx.simple_character(&weight)?, 1);
                labels.push(ModuleLabel::Simple(weight));
            }
            let mut dec = Decomposition::new(ctx, expected, true);
            for l in labels {
                dec.add(l, 1);
            }
            Ok(dec)
        }
        Case::Modular => {
            let ell = ctx.ell();
            let da = digits(a, ell);
            let db = digits(b, ell);
            let len = da.len().max(db.len());
            let mut choices: Vec<Vec<i64>> = Vec::with_capacity(len);
            for i in 0..len {
                let ai = da.get(i).copied().unwrap_or(0);
                let bi = db.get(i).copied().unwrap_or(0);
                choices.push(cg_ell_set(ai, bi, ctx)?);
            }
            let mut labels = Vec::new();
            let mut stack: Vec<Vec<i64>> = vec![Vec::new()];
            while let Some(prefix) = stack.pop() {
                if prefix.len() == len {
                    let mut digits = vec![twist_digit];
                    digits.extend(prefix);
                    labels.push(ModuleLabel::Jmod(digits).normalize());
                    continue;
                }
                for &c in &choices[prefix.len()] {
                    let mut p = prefix.clone();
                    p.push(c);
                    stack.push(p);
                }
            }
            let mut expected = crate::character::Character::zero(ctx.root_system().clone());
            for l in &labels {
                expected.add_scaled(
                    &crate::label::character_of(l, ctx)?.expect("A1 characters are known"),
                    1,
                );
            }
            let mut dec = Decomposition::new(ctx, expected, true);
            for l in labels {
                dec.add(l, 1);
            }
            Ok(dec)
        }
    }
}

/// The generic direct summand `G(x,y)` of `L(x∙0) ⊗ L(y∙0)`:
/// `T^{ωω′} L(ℓ(a+b))` in the quantum case, `T^{ωω′} J(a+b digitwise)^{[1]}`
/// in the modular case.
pub fn generic_summand(x: &ExtAffine, y: &ExtAffine, ctx: &EllContext) -> Result<ModuleLabel> {
    let px = a1_params(x, ctx)?;
    let py = a1_params(y, ctx)?;
    let oo = px.omega.compose(&py.omega);
    let (a, b) = (px.a, py.a);
    match ctx.case() {
        Case::Quantum => {
            let weight = ctx.ell_dot(
                &ExtAffine::translation(Weight::new(vec![a + b])).compose(&oo),
                &Weight::zero(1),
            );
            Ok(ModuleLabel::Simple(weight))
        }
        Case::Modular => {
            let ell = ctx.ell();
            let da = digits(a, ell);
            let db = digits(b, ell);
            let len = da.len().max(db.len());
            let mut u = vec![ctx.ell_dot(&oo, &Weight::zero(1)).coord(0)];
            for i in 0..len {
                u.push(da.get(i).copied().unwrap_or(0) + db.get(i).copied().unwrap_or(0));
            }
            Ok(ModuleLabel::Jmod(u).normalize())
        }
    }
}

/// `c(a,b) = Σ c_i ℓ^i` with `c_i = min{a_i+b_i, 2ℓ−2−a_i−b_i}` digitwise.
pub fn dual_weyl_c(a: i64, b: i64, ctx: &EllContext) -> Result<i64> {
    require_a1(ctx)?;
    if a < 0 || b < 0 {
        return Err(Error::Range(format!("({a},{b})")));
    }
    let ell = ctx.ell();
    let da = digits(a, ell);
    let db = digits(b, ell);
    let len = da.len().max(db.len());
    let mut c = 0i64;
    let mut pow = 1i64;
    for i in 0..len {
        let s = da.get(i).copied().unwrap_or(0) + db.get(i).copied().unwrap_or(0);
        c += s.min(2 * ell - 2 - s) * pow;
        pow *= ell;
    }
    Ok(c)
}

/// The generic direct summand `G_∇(x,y)` of `∇(x∙0) ⊗ ∇(y∙0)`:
/// `T^{ωω′} I_{ℓa+ℓb}(ℓ·c(a,b))` in the modular case and
/// `T^{ωω′} ∇(ℓ(a+b))` in the quantum case.
pub fn generic_summand_nabla(x: &ExtAffine, y: &ExtAffine, ctx: &EllContext) -> Result<ModuleLabel> {
    let px = a1_params(x, ctx)?;
    let py = a1_params(y, ctx)?;
    let oo = px.omega.compose(&py.omega);
    let (a, b) = (px.a, py.a);
    match ctx.case() {
        Case::Quantum => {
            let weight = ctx.ell_dot(
                &ExtAffine::translation(Weight::new(vec![a + b])).compose(&oo),
                &Weight::zero(1),
            );
            Ok(ModuleLabel::DualWeyl(weight).normalize())
        }
        Case::Modular => {
            let c = dual_weyl_c(a, b, ctx)?;
            let base = ModuleLabel::TruncInjective {
                degree: ctx.ell() * (a + b),
                socle: ctx.ell() * c,
            }
            .normalize();
            crate::label::translate_label(&oo, &base, ctx)
        }
    }
}

/// Good filtration multiplicities `[I_d(c) : ∇(b)]_∇ = [∇(b) : L(c)]` over
/// `b ∈ π_d = {d, d−2, …} ∩ Z_{≥0}`.
pub fn trunc_injective_filtration(
    degree: i64,
    socle: i64,
    ctx: &EllContext,
) -> Result<BTreeMap<i64, i64>> {
    require_a1(ctx)?;
    if ctx.case() != Case::Modular {
        return Err(Error::Case("truncated injectives are used in the modular case".into()));
    }
    if socle < 0 || socle > degree || (degree - socle) % 2 != 0 {
        return Err(Error::Parity(format!("socle {socle} is not in π_{degree}")));
    }
    let target = Weight::new(vec![socle]);
    let mut out = BTreeMap::new();
    let mut b = socle;
    while b <= degree {
        let m = ctx.weyl_into_simples(&Weight::new(vec![b]))?.get(&target).copied().unwrap_or(0);
        if m > 0 {
            out.insert(b, m);
        }
        b += 2;
    }
    Ok(out)
}
