//! The character ring: Weyl characters via Freudenthal's recursion, products,
//! decomposition into the χ-basis, simple characters at ℓ via the
//! Steinberg/Lusztig factorization, SL2 tilting characters, Frobenius
//! stretches, and a Jantzen-sum-formula oracle used to validate the restricted
//! character tables before the decomposition engines run.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::alcove::{Case, EllContext};
use crate::error::{Error, Result};
use crate::roots::{Kind, RootSystem, Weight};

/// A finite integer-valued weight-multiplicity map. Genuine module characters
/// are W_fin-invariant with non-negative multiplicities; signed combinations
/// are permitted internally.
#[derive(Clone)]
pub struct Character {
    sys: Arc<RootSystem>,
    mults: HashMap<Weight, i64>,
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.sys == other.sys && self.mults == other.mults
    }
}
impl Eq for Character {}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut entries: Vec<_> = self.mults.iter().collect();
        entries.sort();
        write!(f, "Character{{")?;
        for (i, (w, m)) in entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}: {m}")?;
        }
        write!(f, "}}")
    }
}

impl Character {
    pub fn zero(sys: Arc<RootSystem>) -> Self {
        Character { sys, mults: HashMap::new() }
    }

    pub fn unit(sys: Arc<RootSystem>) -> Self {
        let rank = sys.rank();
        let mut mults = HashMap::new();
        mults.insert(Weight::zero(rank), 1);
        Character { sys, mults }
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.sys
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn dimension(&self) -> i64 {
        self.mults.values().sum()
    }

    pub fn mult(&self, w: &Weight) -> i64 {
        self.mults.get(w).copied().unwrap_or(0)
    }

    pub fn support_len(&self) -> usize {
        self.mults.len()
    }

    /// Entries in sorted weight order.
    pub fn sorted_entries(&self) -> Vec<(Weight, i64)> {
        let mut v: Vec<_> = self.mults.iter().map(|(w, m)| (w.clone(), *m)).collect();
        v.sort();
        v
    }

    pub fn add_scaled(&mut self, other: &Character, k: i64) {
        if k == 0 {
            return;
        }
        for (w, m) in &other.mults {
            let e = self.mults.entry(w.clone()).or_insert(0);
            *e += m * k;
        }
        self.mults.retain(|_, v| *v != 0);
    }

    pub fn plus(&self, other: &Character) -> Character {
        let mut out = self.clone();
        out.add_scaled(other, 1);
        out
    }

    pub fn minus(&self, other: &Character) -> Character {
        let mut out = self.clone();
        out.add_scaled(other, -1);
        out
    }

    pub fn scaled(&self, k: i64) -> Character {
        if k == 0 {
            return Character::zero(self.sys.clone());
        }
        let mut out = self.clone();
        for v in out.mults.values_mut() {
            *v *= k;
        }
        out
    }

    /// Weight-multiset convolution; commutative and associative with unit χ(0).
    pub fn product(&self, other: &Character) -> Result<Character> {
        if self.sys != other.sys {
            return Err(Error::MixedRootSystems(format!("{:?} vs {:?}", self.sys, other.sys)));
        }
        let (small, large) =
            if self.mults.len() <= other.mults.len() { (self, other) } else { (other, self) };
        let mut mults: HashMap<Weight, i64> =
            HashMap::with_capacity(small.mults.len() * large.mults.len() / 2 + 1);
        for (w1, m1) in &small.mults {
            for (w2, m2) in &large.mults {
                *mults.entry(w1.plus(w2)).or_insert(0) += m1 * m2;
            }
        }
        mults.retain(|_, v| *v != 0);
        Ok(Character { sys: self.sys.clone(), mults })
    }

    /// Scale the support by `ell^power` (character of an iterated Frobenius
    /// twist). Dimension-preserving and multiplicative.
    pub fn stretch(&self, ell: i64, power: u32) -> Character {
        let factor = ell.pow(power);
        let mults = self.mults.iter().map(|(w, m)| (w.scaled(factor), *m)).collect();
        Character { sys: self.sys.clone(), mults }
    }

    /// Invariance under the linear action of the finite Weyl group (generators
    /// suffice).
    pub fn is_w_invariant(&self) -> bool {
        (0..self.sys.rank()).all(|i| {
            let s = self.sys.reflection(i);
            self.mults.iter().all(|(w, m)| self.mult(&s.apply(w)) == *m)
        })
    }

    /// Dominance-maximal support weights. Maximal elements of a W-invariant
    /// support are dominant, so only the dominant part needs scanning; a
    /// nonempty support with no dominant weight signals a non-invariant input.
    fn maximal_support(&self) -> Vec<Weight> {
        let weights: Vec<&Weight> = self.mults.keys().filter(|w| w.is_dominant()).collect();
        let mut out = Vec::new();
        'outer: for w in &weights {
            for v in &weights {
                if v != w && self.sys.dominance_leq(w, v) {
                    continue 'outer;
                }
            }
            out.push((*w).clone());
        }
        out
    }
}

/// Weyl dimension formula `Π (λ+ρ, β∨) / (ρ, β∨)`, exact.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Result<i64> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let shifted = lambda.plus(rs.rho());
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for b in 0..rs.positive_root_count() {
        num *= rs.pairing_unchecked(&shifted, b) as i128;
        den *= rs.pairing_unchecked(rs.rho(), b) as i128;
    }
    debug_assert_eq!(num % den, 0);
    Ok((num / den) as i64)
}

/// Character of the Weyl module Δ(λ) (= of ∇(λ)), by Freudenthal's recursion.
pub fn weyl_character(rs: &Arc<RootSystem>, lambda: &Weight) -> Result<Character> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let n = rs.rank();
    // Dominant weights ≤ λ: enumerate root-lattice offsets c in the box
    // 0 ≤ c ≤ ⌊A⁻¹λ⌋ (the inverse Cartan matrix is entrywise non-negative,
    // so any dominant μ ≤ λ has offset inside the box).
    let bound = rs.inverse_cartan_floor(lambda);
    let mut dominants: Vec<(Weight, i64)> = Vec::new(); // (μ, ht(λ−μ))
    let mut stack: Vec<(usize, Vec<i64>)> = vec![(0, Vec::new())];
    while let Some((idx, prefix)) = stack.pop() {
        if idx == n {
            let mut mu = lambda.clone();
            for (j, &c) in prefix.iter().enumerate() {
                mu = mu.minus(&rs.simple_root(j).scaled(c));
            }
            if mu.is_dominant() {
                dominants.push((mu, prefix.iter().sum()));
            }
            continue;
        }
        for c in 0..=bound[idx] {
            let mut p = prefix.clone();
            p.push(c);
            stack.push((idx + 1, p));
        }
    }
    dominants.sort_by_key(|(w, ht)| (*ht, w.clone()));

    let norm_top = {
        let s = lambda.plus(rs.rho());
        rs.form(&s, &s)
    };
    let norm_lambda = rs.form(lambda, lambda);
    let mut table: HashMap<Weight, i64> = HashMap::new();
    table.insert(lambda.clone(), 1);
    for (mu, ht) in dominants.iter() {
        if *ht == 0 {
            continue;
        }
        let mut num: i64 = 0;
        for b in 0..rs.positive_root_count() {
            let beta = rs.positive_roots()[b].clone();
            let mut k = 1i64;
            loop {
                let nu = mu.plus(&beta.scaled(k));
                if rs.form(&nu, &nu) > norm_lambda {
                    break;
                }
                let rep = rs.dominant_representative(&nu);
                if let Some(m) = table.get(&rep) {
                    num += m * rs.form(&nu, &beta);
                }
                k += 1;
            }
        }
        if num == 0 {
            continue;
        }
        let s = mu.plus(rs.rho());
        let denom = norm_top - rs.form(&s, &s);
        debug_assert!(denom > 0);
        debug_assert_eq!((2 * num) % denom, 0);
        let m = 2 * num / denom;
        if m != 0 {
            table.insert(mu.clone(), m);
        }
    }

    // Expand over Weyl orbits (multiplicities are W-invariant).
    let mut mults: HashMap<Weight, i64> = HashMap::new();
    for (mu, m) in table {
        let mut orbit: HashSet<Weight> = HashSet::new();
        for w in rs.finite_weyl_elements() {
            orbit.insert(w.transform.apply(&mu));
        }
        for w in orbit {
            mults.insert(w, m);
        }
    }
    Ok(Character { sys: rs.clone(), mults })
}

/// Decompose a W-invariant character exactly as `Σ coeff_λ · χ(λ)` by
/// triangular elimination at dominance-maximal weights (lexicographically
/// largest first).
pub fn into_weyl_basis(c: &Character, ctx: &EllContext) -> Result<BTreeMap<Weight, i64>> {
    if !c.is_w_invariant() {
        return Err(Error::Invariance("input to the χ-basis decomposition".into()));
    }
    let mut rest = c.clone();
    let mut out = BTreeMap::new();
    while !rest.is_zero() {
        let mut maximal = rest.maximal_support();
        maximal.sort();
        let top = maximal
            .pop()
            .ok_or_else(|| Error::Invariance("support has no dominant maximum".into()))?;
        let coeff = rest.mult(&top);
        rest.add_scaled(&ctx.weyl_character(&top)?, -coeff);
        out.insert(top, coeff);
    }
    Ok(out)
}

impl EllContext {
    /// Cached Weyl character.
    pub fn weyl_character(&self, lambda: &Weight) -> Result<Character> {
        if let Some(c) = self.caches.weyl_chars.lock().unwrap().get(lambda) {
            return Ok(c.clone());
        }
        let c = weyl_character(self.root_system(), lambda)?;
        self.caches.weyl_chars.lock().unwrap().insert(lambda.clone(), c.clone());
        Ok(c)
    }

    /// Signed Weyl character `χ̂(ν)`: zero when `ν + ρ` is singular, otherwise
    /// `det(w)·χ(w·ν)` for the dominating `w`.
    pub fn signed_weyl_character(&self, nu: &Weight) -> Result<Character> {
        let d = self.root_system().dominate(nu);
        match d.parity {
            None => Ok(Character::zero(self.root_system().clone())),
            Some(sign) => Ok(self.weyl_character(&d.weight)?.scaled(sign)),
        }
    }

    /// Character of the Frobenius twist: support scaled by ℓ.
    pub fn frobenius_stretch(&self, c: &Character) -> Character {
        c.stretch(self.ell(), 1)
    }

    /// Jantzen-sum-formula oracle: the signed character `Σ_{i>0} ch Δ^i(λ)`.
    /// Empty output certifies that Δ(λ) is simple.
    ///
    /// Only reflections in hyperplanes `(λ+ρ, β∨) = m` with `ℓ | m`
    /// contribute: with coefficient `ν_ℓ(m)` in the modular case and 1 in the
    /// quantum case.
    pub fn jsf_oracle(&self, lambda: &Weight) -> Result<Character> {
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        let rs = self.root_system().clone();
        let shifted = lambda.plus(rs.rho());
        let mut out = Character::zero(rs.clone());
        for b in 0..rs.positive_root_count() {
            let p = rs.pairing_unchecked(&shifted, b);
            let beta = rs.positive_roots()[b].clone();
            let mut m = self.ell();
            while m < p {
                let coeff = match self.case() {
                    Case::Quantum => 1,
                    Case::Modular => {
                        let mut v = 0i64;
                        let mut q = m;
                        while q % self.ell() == 0 {
                            v += 1;
                            q /= self.ell();
                        }
                        v
                    }
                };
                let nu = lambda.minus(&beta.scaled(p - m));
                out.add_scaled(&self.signed_weyl_character(&nu)?, coeff);
                m += self.ell();
            }
        }
        Ok(out)
    }

    /// Character of the simple module L(λ) for types A1 and A2.
    ///
    /// Modular: `λ = Σ ℓ^i λ_i` with ℓ-restricted digits and
    /// `ch L(λ) = Π stretch^i(ch L(λ_i))`. Quantum: `λ = λ_0 + ℓλ_1` and
    /// `ch L(λ) = ch L(λ_0) · stretch(χ(λ_1))`.
    pub fn simple_character(&self, lambda: &Weight) -> Result<Character> {
        self.require_a1_a2()?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        if let Some(c) = self.caches.simple_chars.lock().unwrap().get(lambda) {
            return Ok(c.clone());
        }
        let c = match self.case() {
            Case::Modular => {
                let digits = self.digits(lambda)?;
                let mut acc = Character::unit(self.root_system().clone());
                for (i, d) in digits.iter().enumerate() {
                    let restricted = self.restricted_simple_character(d)?;
                    acc = acc.product(&restricted.stretch(self.ell(), i as u32))?;
                }
                acc
            }
            Case::Quantum => {
                let (d0, d1) = self.split_restricted(lambda)?;
                let head = self.restricted_simple_character(&d0)?;
                if d1.is_zero() {
                    head
                } else {
                    head.product(&self.weyl_character(&d1)?.stretch(self.ell(), 1))?
                }
            }
        };
        self.caches.simple_chars.lock().unwrap().insert(lambda.clone(), c.clone());
        Ok(c)
    }

    /// Character of a restricted simple module, from the validated table.
    pub fn restricted_simple_character(&self, lambda: &Weight) -> Result<Character> {
        let table = self
            .caches
            .restricted_simples
            .get_or_init(|| self.build_restricted_table())
            .as_ref()
            .map_err(Clone::clone)?;
        table
            .get(lambda)
            .cloned()
            .ok_or_else(|| Error::Range(format!("{lambda} is not ℓ-restricted")))
    }

    /// Restricted simple characters for A1/A2, cross-validated against the
    /// Jantzen sum formula entry by entry. A mismatch would poison every
    /// decomposition oracle downstream, so it aborts with a data-integrity
    /// error.
    ///
    /// A1: `ch L(a) = χ(a)` for `0 ≤ a ≤ ℓ−1`. A2: the only alcoves containing
    /// restricted weights are `C_fund` and `u·C_fund`; for λ in the closure of
    /// the latter but off `C̄_fund`, `ch L(λ) = χ(λ) − χ̂(s_{α_h,1}·λ)`.
    fn build_restricted_table(&self) -> Result<HashMap<Weight, Character>> {
        let rs = self.root_system().clone();
        let ell = self.ell();
        let mut weights: Vec<Weight> = Vec::new();
        match self.kind() {
            Kind::A1 => {
                for a in 0..ell {
                    weights.push(Weight::new(vec![a]));
                }
            }
            Kind::A2 => {
                for a in 0..ell {
                    for b in 0..ell {
                        weights.push(Weight::new(vec![a, b]));
                    }
                }
            }
            Kind::Generic => return Err(Error::EngineScope(format!("{rs:?}"))),
        }
        // Dependencies of the validation step always have strictly smaller
        // (·, 2ρ∨); sorting by it makes the construction well-founded.
        weights.sort_by_key(|w| (rs.two_rho_coroot_pairing(w), w.clone()));

        let mut table: HashMap<Weight, Character> = HashMap::new();
        for lam in &weights {
            let chi = self.weyl_character(lam)?;
            let claimed = match self.kind() {
                Kind::A1 => chi.clone(),
                Kind::A2 => {
                    let hi = rs.highest_short_root_index();
                    let p = rs.pairing_unchecked(&lam.plus(rs.rho()), hi);
                    if p <= ell {
                        chi.clone()
                    } else {
                        // reflect into the fundamental alcove through the α_h wall
                        let nu = lam.minus(&rs.highest_short_root().scaled(p - ell));
                        chi.minus(&self.signed_weyl_character(&nu)?)
                    }
                }
                Kind::Generic => unreachable!(),
            };
            self.validate_against_jsf(lam, &claimed, &table)?;
            table.insert(lam.clone(), claimed);
        }
        Ok(table)
    }

    /// Check one claimed restricted simple character against the Jantzen sum
    /// formula: the L-support of `Σ ch Δ^i(λ)` must match the L-support of
    /// `χ(λ) − ch L(λ)`, and both must expand non-negatively.
    fn validate_against_jsf(
        &self,
        lambda: &Weight,
        claimed: &Character,
        table: &HashMap<Weight, Character>,
    ) -> Result<()> {
        let jsf = self.jsf_oracle(lambda)?;
        let radical = self.weyl_character(lambda)?.minus(claimed);
        let jsf_support = self.simple_support_with(&jsf, table, lambda)?;
        let rad_support = self.simple_support_with(&radical, table, lambda)?;
        if jsf.is_zero() != radical.is_zero() {
            return Err(Error::DataIntegrity(format!(
                "Δ({lambda}): sum formula says simple = {}, table says simple = {}",
                jsf.is_zero(),
                radical.is_zero()
            )));
        }
        let jsf_keys: Vec<&Weight> = jsf_support.keys().collect();
        let rad_keys: Vec<&Weight> = rad_support.keys().collect();
        if jsf_keys != rad_keys {
            return Err(Error::DataIntegrity(format!(
                "Δ({lambda}): radical support {rad_keys:?} does not match sum formula support {jsf_keys:?}"
            )));
        }
        for (mu, m) in &rad_support {
            if *m < 0 || jsf_support[mu] < *m {
                return Err(Error::DataIntegrity(format!(
                    "Δ({lambda}): composition multiplicity of L({mu}) inconsistent with the sum formula"
                )));
            }
        }
        Ok(())
    }

    /// Expand a character in the basis of simple characters, using the
    /// partially-built restricted table plus Steinberg products for
    /// non-restricted weights (all of which have strictly smaller digits).
    fn simple_support_with(
        &self,
        c: &Character,
        table: &HashMap<Weight, Character>,
        boundary: &Weight,
    ) -> Result<BTreeMap<Weight, i64>> {
        let mut rest = c.clone();
        let mut out = BTreeMap::new();
        while !rest.is_zero() {
            let mut maximal = rest.maximal_support();
            maximal.sort();
            let top = maximal
                .pop()
                .ok_or_else(|| Error::Invariance("support has no dominant maximum".into()))?;
            let coeff = rest.mult(&top);
            let simple = self.simple_character_with(&top, table, boundary)?;
            rest.add_scaled(&simple, -coeff);
            if coeff != 0 {
                out.insert(top, coeff);
            }
        }
        Ok(out)
    }

    fn simple_character_with(
        &self,
        lambda: &Weight,
        table: &HashMap<Weight, Character>,
        boundary: &Weight,
    ) -> Result<Character> {
        let digits = self.digits(lambda)?;
        let mut acc = Character::unit(self.root_system().clone());
        match self.case() {
            Case::Modular => {
                for (i, d) in digits.iter().enumerate() {
                    let restricted = table.get(d).cloned().ok_or_else(|| {
                        Error::DataIntegrity(format!(
                            "validation of {boundary} needs not-yet-built entry {d}"
                        ))
                    })?;
                    acc = acc.product(&restricted.stretch(self.ell(), i as u32))?;
                }
            }
            Case::Quantum => {
                let (d0, d1) = self.split_restricted(lambda)?;
                let head = table.get(&d0).cloned().ok_or_else(|| {
                    Error::DataIntegrity(format!(
                        "validation of {boundary} needs not-yet-built entry {d0}"
                    ))
                })?;
                acc = head;
                if !d1.is_zero() {
                    acc = acc.product(&self.weyl_character(&d1)?.stretch(self.ell(), 1))?;
                }
            }
        }
        Ok(acc)
    }

    /// Indecomposable SL2 tilting character for `0 ≤ c ≤ 2ℓ−2`:
    /// `χ(c)` below the wall, `χ(c) + χ(2ℓ−2−c)` from ℓ on.
    pub fn tilting_character_a1(&self, c: i64) -> Result<Character> {
        if self.kind() != Kind::A1 {
            return Err(Error::EngineScope(format!("{:?}", self.root_system())));
        }
        if !(0..=2 * self.ell() - 2).contains(&c) {
            return Err(Error::Range(format!(
                "tilting character table covers 0..={}, got {c}",
                2 * self.ell() - 2
            )));
        }
        let table = self
            .caches
            .tilting_a1
            .get_or_init(|| self.build_tilting_table_a1())
            .as_ref()
            .map_err(Clone::clone)?;
        Ok(table[c as usize].clone())
    }

    fn build_tilting_table_a1(&self) -> Result<Vec<Character>> {
        let ell = self.ell();
        let mut out = Vec::new();
        for c in 0..=2 * ell - 2 {
            let chi = self.weyl_character(&Weight::new(vec![c]))?;
            let ch = if c <= ell - 1 {
                chi
            } else {
                chi.plus(&self.weyl_character(&Weight::new(vec![2 * ell - 2 - c]))?)
            };
            // Consistency with the simple-character table: T(c) must contain
            // L(c) exactly once and decompose non-negatively into simples.
            let expansion = self.into_simple_basis(&ch)?;
            if expansion.get(&Weight::new(vec![c])) != Some(&1)
                || expansion.values().any(|&m| m < 0)
            {
                return Err(Error::DataIntegrity(format!("tilting character T({c})")));
            }
            out.push(ch);
        }
        Ok(out)
    }

    /// Composition multiplicities `[χ(λ) : L(μ)]` by triangular elimination
    /// with simple characters; all coefficients non-negative with
    /// `[χ(λ) : L(λ)] = 1`.
    pub fn weyl_into_simples(&self, lambda: &Weight) -> Result<BTreeMap<Weight, i64>> {
        let out = self.into_simple_basis(&self.weyl_character(lambda)?)?;
        debug_assert_eq!(out.get(lambda), Some(&1));
        debug_assert!(out.values().all(|&m| m >= 0));
        Ok(out)
    }

    /// Expand a (possibly signed) W-invariant character in the simple-character
    /// basis.
    pub fn into_simple_basis(&self, c: &Character) -> Result<BTreeMap<Weight, i64>> {
        if !c.is_w_invariant() {
            return Err(Error::Invariance("input to the L-basis decomposition".into()));
        }
        let mut rest = c.clone();
        let mut out = BTreeMap::new();
        while !rest.is_zero() {
            let mut maximal = rest.maximal_support();
            maximal.sort();
            let top = maximal
                .pop()
                .ok_or_else(|| Error::Invariance("support has no dominant maximum".into()))?;
            let coeff = rest.mult(&top);
            rest.add_scaled(&self.simple_character(&top)?, -coeff);
            out.insert(top, coeff);
        }
        Ok(out)
    }
}
