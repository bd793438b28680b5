//! The extended affine Weyl group `W_ext = X ⋊ W_fin` with the ℓ-dilated dot
//! action, the hyperplane-counting length function, the fundamental group Ω,
//! alcove localization and Steinberg digit factorization.
//!
//! An element `t_γ·w` acts by `t_γ w ∙ x = w(x+ρ) − ρ + ℓγ`. The reflection
//! hyperplanes are `H_{β,r} = {x : (x+ρ, β∨) = ℓr}` for positive roots β, and
//! the fundamental alcove is `C_fund = {x : 0 < (x+ρ, β∨) < ℓ for all β > 0}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::character::Character;
use crate::error::{Error, Result};
use crate::roots::{FiniteWeyl, Kind, RootSystem, Weight};

/// Element `t_γ · w` of the extended affine Weyl group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtAffine {
    gamma: Weight,
    w: FiniteWeyl,
}

impl ExtAffine {
    pub fn identity(rank: usize) -> Self {
        ExtAffine { gamma: Weight::zero(rank), w: FiniteWeyl::identity(rank) }
    }

    pub fn translation(gamma: Weight) -> Self {
        let n = gamma.rank();
        ExtAffine { gamma, w: FiniteWeyl::identity(n) }
    }

    pub fn from_finite(w: FiniteWeyl) -> Self {
        ExtAffine { gamma: Weight::zero(w.rank()), w }
    }

    pub fn new(gamma: Weight, w: FiniteWeyl) -> Self {
        debug_assert_eq!(gamma.rank(), w.rank());
        ExtAffine { gamma, w }
    }

    pub fn translation_part(&self) -> &Weight {
        &self.gamma
    }

    pub fn finite_part(&self) -> &FiniteWeyl {
        &self.w
    }

    pub fn rank(&self) -> usize {
        self.gamma.rank()
    }

    pub fn is_identity(&self) -> bool {
        self.gamma.is_zero() && self.w.is_identity()
    }

    /// Group law `(t_γ w)(t_δ v) = t_{γ + w(δ)} wv`.
    pub fn compose(&self, other: &ExtAffine) -> ExtAffine {
        ExtAffine {
            gamma: self.gamma.plus(&self.w.apply(&other.gamma)),
            w: self.w.compose(&other.w),
        }
    }

    pub fn inverse(&self) -> ExtAffine {
        let winv = self.w.inverse();
        ExtAffine { gamma: winv.apply(&self.gamma).neg(), w: winv }
    }
}

impl fmt::Debug for ExtAffine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t_{:?}·w{:?}", self.gamma, self.w)
    }
}

/// Modular case (algebraic group in characteristic ℓ) or quantum case
/// (quantum group at a primitive ℓ-th root of unity).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Case {
    Modular,
    Quantum,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case::Modular => write!(f, "modular"),
            Case::Quantum => write!(f, "quantum"),
        }
    }
}

pub(crate) struct ContextCaches {
    pub(crate) omega: OnceLock<Vec<ExtAffine>>,
    pub(crate) weyl_chars: Mutex<HashMap<Weight, Character>>,
    pub(crate) simple_chars: Mutex<HashMap<Weight, Character>>,
    pub(crate) restricted_simples: OnceLock<Result<HashMap<Weight, Character>>>,
    pub(crate) tilting_a1: OnceLock<Result<Vec<Character>>>,
    pub(crate) fusion: Mutex<HashMap<(Weight, Weight), std::collections::BTreeMap<Weight, i64>>>,
}

impl ContextCaches {
    fn new() -> Self {
        ContextCaches {
            omega: OnceLock::new(),
            weyl_chars: Mutex::new(HashMap::new()),
            simple_chars: Mutex::new(HashMap::new()),
            restricted_simples: OnceLock::new(),
            tilting_a1: OnceLock::new(),
            fusion: Mutex::new(HashMap::new()),
        }
    }
}

/// A root system together with ℓ and the case (modular/quantum). All tables
/// computed by the character and fusion machinery are memoized here; caching
/// never changes results.
pub struct EllContext {
    rs: Arc<RootSystem>,
    ell: i64,
    case: Case,
    warnings: Vec<String>,
    pub(crate) caches: ContextCaches,
}

impl fmt::Debug for EllContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EllContext({:?}, ell={}, {})", self.rs, self.ell, self.case)
    }
}

impl EllContext {
    pub fn new(rs: Arc<RootSystem>, ell: i64, case: Case) -> Result<Self> {
        let h = rs.coxeter_number();
        if ell < h {
            return Err(Error::UnsupportedEll { ell, h });
        }
        let mut warnings = Vec::new();
        match case {
            Case::Modular => {
                if !is_prime(ell) {
                    return Err(Error::EllNotPrime(ell));
                }
            }
            Case::Quantum => {
                if ell % 2 == 0 {
                    warnings.push(format!(
                        "quantum case with even ell = {ell}: odd ell recommended"
                    ));
                }
            }
        }
        Ok(EllContext { rs, ell, case, warnings, caches: ContextCaches::new() })
    }

    pub fn a1(ell: i64, case: Case) -> Result<Self> {
        EllContext::new(Arc::new(RootSystem::a1()), ell, case)
    }

    pub fn a2(ell: i64, case: Case) -> Result<Self> {
        EllContext::new(Arc::new(RootSystem::a2()), ell, case)
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn ell(&self) -> i64 {
        self.ell
    }

    pub fn case(&self) -> Case {
        self.case
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn kind(&self) -> Kind {
        self.rs.kind()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub(crate) fn require_a1_a2(&self) -> Result<()> {
        match self.kind() {
            Kind::A1 | Kind::A2 => Ok(()),
            Kind::Generic => Err(Error::EngineScope(format!("{:?}", self.rs))),
        }
    }

    /// ℓ-dilated dot action `t_γ w ∙ μ = w(μ+ρ) − ρ + ℓγ`.
    pub fn ell_dot(&self, x: &ExtAffine, mu: &Weight) -> Weight {
        x.w.apply(&mu.plus(self.rs.rho())).minus(self.rs.rho()).plus(&x.gamma.scaled(self.ell))
    }

    /// Number of reflection hyperplanes separating `C_fund` and `x ∙ C_fund`,
    /// counted against the interior probe point 0 (valid because ℓ ≥ h).
    pub fn length(&self, x: &ExtAffine) -> u64 {
        let rs = &self.rs;
        let x0 = self.ell_dot(x, &Weight::zero(self.rank()));
        let shifted = x0.plus(rs.rho());
        let mut total = 0u64;
        for b in 0..rs.positive_root_count() {
            let u = rs.pairing_unchecked(rs.rho(), b);
            let v = rs.pairing_unchecked(&shifted, b);
            let (lo, hi) = if u <= v { (u, v) } else { (v, u) };
            // integers r with lo < ℓr < hi
            let count = (hi - 1).div_euclid(self.ell) - lo.div_euclid(self.ell);
            total += count.max(0) as u64;
        }
        total
    }

    /// `x ∈ W_ext^+` iff `x ∙ 0` is dominant (for ℓ ≥ h).
    pub fn in_w_ext_plus(&self, x: &ExtAffine) -> bool {
        self.ell_dot(x, &Weight::zero(self.rank())).is_dominant()
    }

    /// `x ∈ W_aff` iff its translation part lies in the root lattice.
    pub fn in_w_aff(&self, x: &ExtAffine) -> bool {
        self.rs.in_root_lattice(&x.gamma)
    }

    /// The simple affine reflection `s_{α_h,1} = t_{α_h} s_{α_h}` in the wall
    /// `(x+ρ, α_h∨) = ℓ` of the fundamental alcove.
    pub fn affine_reflection(&self) -> ExtAffine {
        let b = self.rs.highest_short_root_index();
        ExtAffine::new(self.rs.highest_short_root().clone(), self.rs.reflection(b))
    }

    pub fn simple_reflection(&self, i: usize) -> ExtAffine {
        ExtAffine::from_finite(self.rs.reflection(i))
    }

    /// Is `μ` inside the open fundamental alcove?
    pub fn in_c_fund(&self, mu: &Weight) -> bool {
        let shifted = mu.plus(self.rs.rho());
        (0..self.rs.positive_root_count()).all(|b| {
            let p = self.rs.pairing_unchecked(&shifted, b);
            0 < p && p < self.ell
        })
    }

    /// Is `μ` in the closed fundamental alcove?
    pub fn in_c_fund_closure(&self, mu: &Weight) -> bool {
        let shifted = mu.plus(self.rs.rho());
        (0..self.rs.positive_root_count()).all(|b| {
            let p = self.rs.pairing_unchecked(&shifted, b);
            0 <= p && p <= self.ell
        })
    }

    /// Is `μ` ℓ-regular, i.e. off every reflection hyperplane?
    pub fn is_regular(&self, mu: &Weight) -> bool {
        let shifted = mu.plus(self.rs.rho());
        (0..self.rs.positive_root_count())
            .all(|b| self.rs.pairing_unchecked(&shifted, b).rem_euclid(self.ell) != 0)
    }

    /// Is `μ` ℓ-restricted (all simple pairings `< ℓ`, and dominant)?
    pub fn is_restricted(&self, mu: &Weight) -> bool {
        mu.is_dominant() && mu.coords().iter().all(|&c| c < self.ell)
    }

    /// ℓ-adic digit expansion `μ = Σ ℓ^i μ_i` with every `μ_i` ℓ-restricted.
    pub fn digits(&self, mu: &Weight) -> Result<Vec<Weight>> {
        if !mu.is_dominant() {
            return Err(Error::NotDominant(mu.to_string()));
        }
        let mut rest: Vec<i64> = mu.coords().to_vec();
        let mut out = Vec::new();
        while rest.iter().any(|&c| c != 0) {
            let digit: Vec<i64> = rest.iter().map(|&c| c % self.ell).collect();
            rest = rest.iter().map(|&c| c / self.ell).collect();
            out.push(Weight::new(digit));
            if out.len() > 40 {
                return Err(Error::Resource("weight too large for digit expansion".into()));
            }
        }
        if out.is_empty() {
            out.push(Weight::zero(self.rank()));
        }
        Ok(out)
    }

    /// Split `μ = μ_0 + ℓ·μ_1` with `μ_0` the restricted digit.
    pub fn split_restricted(&self, mu: &Weight) -> Result<(Weight, Weight)> {
        if !mu.is_dominant() {
            return Err(Error::NotDominant(mu.to_string()));
        }
        let d0: Vec<i64> = mu.coords().iter().map(|&c| c % self.ell).collect();
        let d1: Vec<i64> = mu.coords().iter().map(|&c| c / self.ell).collect();
        Ok((Weight::new(d0), Weight::new(d1)))
    }

    /// The fundamental group Ω = {w ∈ W_ext : ℓ(w) = 0}, enumerated
    /// algorithmically: for one representative of each nontrivial coset of
    /// X/ZΦ, test all `t_ϖ·w` for length zero.
    pub fn omega_group(&self) -> &[ExtAffine] {
        self.caches.omega.get_or_init(|| {
            let rs = &self.rs;
            let n = rs.rank();
            let order = rs.fundamental_group_order() as usize;
            let mut out = vec![ExtAffine::identity(n)];
            if order == 1 {
                return out;
            }
            // Candidate translation parts per nontrivial coset: the fundamental
            // weights falling in that coset (every nontrivial coset of a finite
            // type fundamental group contains a cominuscule one).
            let mut classes: Vec<Weight> = Vec::new(); // representatives found so far
            classes.push(Weight::zero(n));
            for k in 0..n {
                let mut cand = Weight::zero(n).coords().to_vec();
                cand[k] = 1;
                let cand = Weight::new(cand);
                if classes.iter().any(|c| rs.in_root_lattice(&cand.minus(c))) {
                    continue;
                }
                classes.push(cand);
            }
            // Also close the class list under addition in case some coset has
            // no single fundamental-weight representative yet.
            let mut changed = true;
            while changed && classes.len() < order {
                changed = false;
                let snapshot = classes.clone();
                for a in &snapshot {
                    for b in &snapshot {
                        let s = a.plus(b);
                        if !classes.iter().any(|c| rs.in_root_lattice(&s.minus(c))) {
                            classes.push(s);
                            changed = true;
                        }
                    }
                }
            }
            assert_eq!(classes.len(), order, "coset enumeration of X/ZΦ");
            for rep in classes.iter().skip(1) {
                // Within the coset, try every fundamental weight representative.
                let mut candidates: Vec<Weight> = Vec::new();
                for k in 0..n {
                    let mut c = vec![0i64; n];
                    c[k] = 1;
                    let c = Weight::new(c);
                    if rs.in_root_lattice(&c.minus(rep)) {
                        candidates.push(c);
                    }
                }
                candidates.push(rep.clone());
                let mut found = None;
                'search: for cand in &candidates {
                    for w in rs.finite_weyl_elements() {
                        let x = ExtAffine::new(cand.clone(), w.transform.clone());
                        if self.length(&x) == 0 {
                            found = Some(x);
                            break 'search;
                        }
                    }
                }
                out.push(found.expect("every coset of X/ZΦ has a length-zero representative"));
            }
            // Ω is a group: closure check (stabilizers of C_fund compose to
            // stabilizers, and structural equality is equality in W_ext).
            for a in &out {
                for b in &out {
                    let c = a.compose(b);
                    assert!(out.iter().any(|o| *o == c), "Ω not closed under composition");
                }
            }
            out
        })
    }

    /// Image of `x` under the canonical homomorphism `W_ext → Ω` with kernel
    /// `W_aff`: the unique `ω ∈ Ω` with `x·ω⁻¹ ∈ W_aff`.
    pub fn omega_of(&self, x: &ExtAffine) -> ExtAffine {
        let omegas = self.omega_group().to_vec();
        for om in &omegas {
            if self.in_w_aff(&x.compose(&om.inverse())) {
                return om.clone();
            }
        }
        unreachable!("Ω covers all cosets of W_aff in W_ext")
    }

    /// Locate `μ` in the alcove picture: returns `x` and `λ ∈ C̄_fund ∩ X`
    /// with `μ = x ∙ λ`, plus a regularity flag. For regular μ, `x` is the
    /// unique element of W_aff with this property; for singular μ it is the
    /// minimal-length one (walk order: simple walls in root order, then the
    /// affine wall).
    pub fn locate(&self, mu: &Weight) -> Location {
        let rs = &self.rs;
        let n = self.rank();
        let hi = rs.highest_short_root_index();
        let mut current = mu.clone();
        let mut x = ExtAffine::identity(n);
        let mut steps = 0u64;
        loop {
            let shifted = current.plus(rs.rho());
            let mut reflected = false;
            for i in 0..n {
                if shifted.coord(i) < 0 {
                    let s = self.simple_reflection(i);
                    current = self.ell_dot(&s, &current);
                    x = x.compose(&s);
                    reflected = true;
                    break;
                }
            }
            if reflected {
                steps += 1;
                continue;
            }
            if rs.pairing_unchecked(&shifted, hi) > self.ell {
                let u = self.affine_reflection();
                current = self.ell_dot(&u, &current);
                x = x.compose(&u);
                steps += 1;
                continue;
            }
            break;
        }
        let regular = self.in_c_fund(&current);
        debug_assert!(self.in_c_fund_closure(&current));
        debug_assert_eq!(&self.ell_dot(&x, &current), mu);
        Location { element: x, fundamental: current, regular, steps }
    }

    /// Steinberg digit factorization of `x ∈ W_ext^+`:
    /// `x ∙ 0 = x_0 ∙ 0 + ℓλ` with `x_0 ∙ 0` ℓ-restricted and λ dominant,
    /// `x_0 = t_{−λ} x`. For A1/A2 the restricted part is classified as
    /// `x_0 = u^ε·ω` with `u` the affine simple reflection and `ω ∈ Ω`.
    pub fn steinberg_factor(&self, x: &ExtAffine) -> Result<Steinberg> {
        let x0dot = self.ell_dot(x, &Weight::zero(self.rank()));
        if !x0dot.is_dominant() {
            return Err(Error::NotDominant(x0dot.to_string()));
        }
        let (restricted, lambda) = self.split_restricted(&x0dot)?;
        let x0 = ExtAffine::translation(lambda.neg()).compose(x);
        debug_assert_eq!(self.ell_dot(&x0, &Weight::zero(self.rank())), restricted);
        let class = match self.kind() {
            Kind::A1 | Kind::A2 => {
                let loc = self.locate(&restricted);
                if !loc.regular {
                    None
                } else if self.in_c_fund(&restricted) {
                    // x_0 stabilizes C_fund, so x_0 ∈ Ω.
                    Some(RestrictedClass { epsilon: 0, omega: self.omega_of(&x0) })
                } else {
                    // restricted regular weights live in C_fund ∪ u·C_fund
                    Some(RestrictedClass { epsilon: 1, omega: self.omega_of(&x0) })
                }
            }
            Kind::Generic => None,
        };
        Ok(Steinberg { x0, lambda, class })
    }
}

/// Result of [`EllContext::locate`].
#[derive(Clone, Debug)]
pub struct Location {
    pub element: ExtAffine,
    pub fundamental: Weight,
    pub regular: bool,
    /// Number of wall reflections in the walk (= ℓ(element) for regular input).
    pub steps: u64,
}

/// Restricted-digit classification for A1/A2: `x_0 = u^ε · ω`.
#[derive(Clone, Debug)]
pub struct RestrictedClass {
    pub epsilon: u8,
    pub omega: ExtAffine,
}

/// Result of [`EllContext::steinberg_factor`].
#[derive(Clone, Debug)]
pub struct Steinberg {
    pub x0: ExtAffine,
    pub lambda: Weight,
    /// `Some` for A1/A2 with ℓ-regular restricted digit.
    pub class: Option<RestrictedClass>,
}

fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1(ell: i64) -> EllContext {
        EllContext::a1(ell, Case::Modular).unwrap()
    }

    fn a2(ell: i64) -> EllContext {
        EllContext::a2(ell, Case::Modular).unwrap()
    }

    #[test]
    fn context_validation() {
        assert!(matches!(
            EllContext::a1(1, Case::Modular),
            Err(Error::UnsupportedEll { .. })
        ));
        assert!(matches!(EllContext::a1(4, Case::Modular), Err(Error::EllNotPrime(4))));
        let q = EllContext::a1(4, Case::Quantum).unwrap();
        assert_eq!(q.warnings().len(), 1);
        assert!(matches!(EllContext::a2(2, Case::Modular), Err(Error::UnsupportedEll { .. })));
    }

    #[test]
    fn ell_dot_examples() {
        let ctx = a1(5);
        let t3 = ExtAffine::translation(Weight::new(vec![3]));
        assert_eq!(ctx.ell_dot(&t3, &Weight::zero(1)), Weight::new(vec![15]));
        let e = ExtAffine::identity(1);
        assert_eq!(ctx.ell_dot(&e, &Weight::new(vec![7])), Weight::new(vec![7]));

        let ctx = a2(5);
        let u = ctx.affine_reflection();
        assert_eq!(ctx.ell_dot(&u, &Weight::zero(2)), Weight::new(vec![3, 3]));
    }

    #[test]
    fn ell_dot_is_group_action() {
        let ctx = a2(5);
        let u = ctx.affine_reflection();
        let s = ctx.simple_reflection(0);
        let t1 = ExtAffine::translation(Weight::new(vec![1, -1]));
        let mu = Weight::new(vec![2, -3]);
        for x in [&u, &s, &t1] {
            for y in [&u, &s, &t1] {
                let xy = x.compose(y);
                assert_eq!(ctx.ell_dot(&xy, &mu), ctx.ell_dot(x, &ctx.ell_dot(y, &mu)));
            }
        }
        let u_inv = u.inverse();
        assert!(u.compose(&u_inv).is_identity());
    }

    #[test]
    fn length_examples() {
        let ctx = a1(5);
        let t3 = ExtAffine::translation(Weight::new(vec![3]));
        assert_eq!(ctx.length(&t3), 3);

        let ctx2 = a2(5);
        let u = ctx2.affine_reflection();
        assert_eq!(ctx2.length(&u), 1);
        for om in ctx2.omega_group() {
            assert_eq!(ctx2.length(om), 0);
        }
    }

    #[test]
    fn omega_group_a1() {
        let ctx = a1(5);
        let omega = ctx.omega_group();
        assert_eq!(omega.len(), 2);
        // The nontrivial element acts by w ∙ z = ℓ − 2 − z.
        let w = omega.iter().find(|o| !o.is_identity()).unwrap();
        for z in -3..6 {
            assert_eq!(
                ctx.ell_dot(w, &Weight::new(vec![z])),
                Weight::new(vec![5 - 2 - z])
            );
        }
    }

    #[test]
    fn omega_group_a2_is_cyclic_of_order_three() {
        let ctx = a2(5);
        let omega = ctx.omega_group().to_vec();
        assert_eq!(omega.len(), 3);
        let gens: Vec<&ExtAffine> = omega.iter().filter(|o| !o.is_identity()).collect();
        assert_eq!(gens.len(), 2);
        // each nontrivial element has order 3 and they are mutual inverses
        let g = gens[0];
        let g2 = g.compose(g);
        let g3 = g2.compose(g);
        assert!(g3.is_identity());
        assert!(!g2.is_identity());
        assert_eq!(&g2, gens[1]);
        // Ω ∙ 0 at ℓ=5 is {(0,0), (2,0), (0,2)}
        let mut orbit: Vec<Weight> =
            omega.iter().map(|o| ctx.ell_dot(o, &Weight::zero(2))).collect();
        orbit.sort();
        assert_eq!(
            orbit,
            vec![Weight::new(vec![0, 0]), Weight::new(vec![0, 2]), Weight::new(vec![2, 0])]
        );
    }

    #[test]
    fn omega_of_examples() {
        let ctx = a1(5);
        // t_1·s has length 0 and is the Ω generator
        let rs = ctx.root_system().clone();
        let x = ExtAffine::new(Weight::new(vec![1]), rs.reflection(0));
        assert_eq!(ctx.length(&x), 0);
        let om = ctx.omega_of(&x);
        assert!(!om.is_identity());
        // kernel: affine elements map to the identity
        let t1 = ExtAffine::translation(Weight::new(vec![1])); // t_ϖ ∉ W_aff
        assert!(!ctx.in_w_aff(&t1));
        let t2 = ExtAffine::translation(Weight::new(vec![2]));
        assert!(ctx.in_w_aff(&t2));
        assert!(ctx.omega_of(&t2).is_identity());
        // t_2·ω ↦ ω
        let t2w = t2.compose(&om);
        assert_eq!(ctx.omega_of(&t2w), om);
        // multiplicativity
        assert!(ctx.omega_of(&x.compose(&x)).is_identity());
    }

    #[test]
    fn locate_examples() {
        let ctx = a1(5);
        // 13 = t_2 ω ∙ 0, regular: locate returns the W_aff element with 13 = x ∙ 3
        let loc = ctx.locate(&Weight::new(vec![13]));
        assert!(loc.regular);
        assert_eq!(loc.fundamental, Weight::new(vec![3]));
        assert!(ctx.in_w_aff(&loc.element));
        assert_eq!(ctx.length(&loc.element), loc.steps);
        assert_eq!(ctx.ell_dot(&loc.element, &Weight::new(vec![3])), Weight::new(vec![13]));

        // interior weights locate to themselves
        let loc = ctx.locate(&Weight::new(vec![2]));
        assert!(loc.regular);
        assert!(loc.element.is_identity());

        // 4 + 1 = ℓ: wall weight
        let loc = ctx.locate(&Weight::new(vec![4]));
        assert!(!loc.regular);
        assert_eq!(loc.fundamental, Weight::new(vec![4]));
        assert!(loc.element.is_identity());
    }

    #[test]
    fn locate_round_trip_a2() {
        let ctx = a2(5);
        for a in 0..3 {
            for b in 0..3 {
                let lam = Weight::new(vec![a, b]);
                if !ctx.in_c_fund(&lam) {
                    continue;
                }
                for g in [
                    ctx.affine_reflection(),
                    ctx.simple_reflection(0).compose(&ctx.affine_reflection()),
                    // t_{α_h} is the smallest dominant W_aff translation
                    ExtAffine::translation(Weight::new(vec![1, 1])),
                ] {
                    let mu = ctx.ell_dot(&g, &lam);
                    let loc = ctx.locate(&mu);
                    assert!(loc.regular);
                    assert_eq!(loc.fundamental, lam);
                }
            }
        }
    }

    #[test]
    fn steinberg_factor_examples() {
        let ctx = a1(5);
        // x ∙ 0 = 13 = 3 + 5·2: restricted digit 3 = ω ∙ 0, λ = 2
        let omega = ctx.omega_group()[1].clone();
        let x = ExtAffine::translation(Weight::new(vec![2])).compose(&omega);
        assert_eq!(ctx.ell_dot(&x, &Weight::zero(1)), Weight::new(vec![13]));
        let st = ctx.steinberg_factor(&x).unwrap();
        assert_eq!(st.lambda, Weight::new(vec![2]));
        assert_eq!(ctx.ell_dot(&st.x0, &Weight::zero(1)), Weight::new(vec![3]));
        let class = st.class.unwrap();
        assert_eq!(class.epsilon, 0);
        assert!(!class.omega.is_identity());

        // restricted x is its own factorization
        let om = ctx.omega_group()[1].clone();
        let st = ctx.steinberg_factor(&om).unwrap();
        assert!(st.lambda.is_zero());
        assert_eq!(st.x0, om);

        // A2: x ∙ 0 = (3,3) = u ∙ 0 is restricted, ε = 1
        let ctx2 = a2(5);
        let u = ctx2.affine_reflection();
        let st = ctx2.steinberg_factor(&u).unwrap();
        assert!(st.lambda.is_zero());
        let class = st.class.unwrap();
        assert_eq!(class.epsilon, 1);
        assert!(class.omega.is_identity());

        // dominance is required
        let s = ctx2.simple_reflection(0);
        assert!(ctx2.steinberg_factor(&s).is_err());
    }

    #[test]
    fn length_additivity_on_dominant_translations() {
        let ctx = a2(5);
        let u = ctx.affine_reflection();
        for a in 0..4 {
            for b in 0..4 {
                let lam = Weight::new(vec![a, b]);
                let t = ExtAffine::translation(lam.clone());
                assert_eq!(ctx.length(&t), ctx.root_system().two_rho_coroot_pairing(&lam) as u64);
                for x in [ExtAffine::identity(2), u.clone()] {
                    if !ctx.in_w_ext_plus(&x) {
                        continue;
                    }
                    assert_eq!(ctx.length(&t.compose(&x)), ctx.length(&t) + ctx.length(&x));
                }
            }
        }
    }

    #[test]
    fn w_ext_plus_iff_dominant() {
        let ctx = a1(5);
        let rs = ctx.root_system().clone();
        for g in -3..4 {
            for s in [false, true] {
                let w = if s { rs.reflection(0) } else { FiniteWeyl::identity(1) };
                let x = ExtAffine::new(Weight::new(vec![g]), w);
                assert_eq!(ctx.in_w_ext_plus(&x), ctx.ell_dot(&x, &Weight::zero(1)).is_dominant());
            }
        }
    }
}
