//! Exact arithmetic for simple root systems, weights and the finite Weyl group.
//!
//! Weights are integer vectors in the basis of fundamental dominant weights, so
//! the pairing with a simple coroot is just a coordinate. Positive roots are
//! stored together with their coroots written as non-negative combinations of
//! simple coroots; every pairing `(λ, β∨)` is then an exact integer sum. No
//! floating point is used anywhere.
//!
//! Conventions: `cartan[i][j] = (α_j, α_i∨)`, so the fundamental-weight
//! coordinates of the simple root `α_j` form the `j`-th column of the Cartan
//! matrix.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

type Coords = SmallVec<[i64; 4]>;

/// Integer weight in fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coords: Coords,
}

impl Weight {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Weight { coords: SmallVec::from_vec(coords.into()) }
    }

    pub fn from_slice(coords: &[i64]) -> Self {
        Weight { coords: SmallVec::from_slice(coords) }
    }

    pub fn zero(rank: usize) -> Self {
        Weight { coords: smallvec![0; rank] }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> i64 {
        self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Dominance test: all fundamental coordinates non-negative.
    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn plus(&self, other: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), other.rank());
        Weight { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn minus(&self, other: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), other.rank());
        Weight { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Weight {
        Weight { coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight { coords: self.coords.iter().map(|a| a * k).collect() }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            write!(f, "{}", self.coords[0])
        } else {
            write!(f, "(")?;
            for (i, c) in self.coords.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element of the finite Weyl group, stored as its action matrix on
/// fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteWeyl {
    n: usize,
    mat: SmallVec<[i64; 16]>, // row-major n×n
}

impl FiniteWeyl {
    pub fn identity(n: usize) -> Self {
        let mut mat: SmallVec<[i64; 16]> = smallvec![0; n * n];
        for i in 0..n {
            mat[i * n + i] = 1;
        }
        FiniteWeyl { n, mat }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_identity(&self) -> bool {
        *self == FiniteWeyl::identity(self.n)
    }

    /// Linear action on a weight (no ρ-shift).
    pub fn apply(&self, w: &Weight) -> Weight {
        let n = self.n;
        debug_assert_eq!(w.rank(), n);
        let mut out: Coords = smallvec![0; n];
        for i in 0..n {
            let mut acc = 0i64;
            for j in 0..n {
                acc += self.mat[i * n + j] * w.coord(j);
            }
            out[i] = acc;
        }
        Weight { coords: out }
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &FiniteWeyl) -> FiniteWeyl {
        let n = self.n;
        debug_assert_eq!(other.n, n);
        let mut mat: SmallVec<[i64; 16]> = smallvec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0i64;
                for k in 0..n {
                    acc += self.mat[i * n + k] * other.mat[k * n + j];
                }
                mat[i * n + j] = acc;
            }
        }
        FiniteWeyl { n, mat }
    }

    pub fn det(&self) -> i64 {
        det_i64(&self.mat, self.n)
    }

    /// Exact inverse; Weyl matrices have determinant ±1.
    pub fn inverse(&self) -> FiniteWeyl {
        let n = self.n;
        let d = self.det();
        debug_assert!(d == 1 || d == -1);
        let adj = adjugate_i64(&self.mat, n);
        let mat: SmallVec<[i64; 16]> = adj.iter().map(|&a| a * d).collect();
        FiniteWeyl { n, mat }
    }
}

impl fmt::Debug for FiniteWeyl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteWeyl{:?}", self.mat.as_slice())
    }
}

/// Finite Weyl group element together with its Coxeter length and determinant.
#[derive(Clone, Debug)]
pub struct WeylElement {
    pub transform: FiniteWeyl,
    pub length: u32,
    pub det: i64,
}

/// Result of normalizing a weight into the dominant chamber for the ρ-shifted
/// (dot) action of the finite Weyl group.
#[derive(Clone, Debug)]
pub struct Dominated {
    /// The weight `μ = w·λ` with `μ + ρ` dominant.
    pub weight: Weight,
    /// A Weyl element with `w·λ = μ` (dot action).
    pub witness: FiniteWeyl,
    /// `det(w)`, or `None` when `λ + ρ` lies on a reflection hyperplane
    /// ("singular under the ρ-shift").
    pub parity: Option<i64>,
}

impl Dominated {
    pub fn is_singular(&self) -> bool {
        self.parity.is_none()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Kind {
    A1,
    A2,
    Generic,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::A1 => write!(f, "A1"),
            Kind::A2 => write!(f, "A2"),
            Kind::Generic => write!(f, "generic"),
        }
    }
}

/// A simple root system with exact Cartan-matrix arithmetic.
pub struct RootSystem {
    kind: Kind,
    n: usize,
    cartan: Vec<i64>, // row-major, cartan[i*n+j] = (α_j, α_i∨)
    pos_roots: Vec<Weight>,
    pos_coroots: Vec<Coords>, // coroots in simple-coroot coordinates
    rho: Weight,
    highest_short: usize,
    coxeter: i64,
    det: i64,
    adj: Vec<i64>,  // adjugate of the Cartan matrix
    gram: Vec<i64>, // scaled invariant form on fundamental weights
    weyl: OnceLock<Vec<WeylElement>>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.cartan == other.cartan
    }
}
impl Eq for RootSystem {}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootSystem({}, rank {})", self.kind, self.n)
    }
}

impl RootSystem {
    pub fn a1() -> RootSystem {
        RootSystem::from_cartan(vec![vec![2]]).expect("A1 Cartan data is valid")
    }

    pub fn a2() -> RootSystem {
        RootSystem::from_cartan(vec![vec![2, -1], vec![-1, 2]]).expect("A2 Cartan data is valid")
    }

    /// Build a root system from a Cartan matrix of finite type.
    ///
    /// Convention: `cartan[i][j] = (α_j, α_i∨)`.
    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<RootSystem> {
        let n = cartan.len();
        if n == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &cartan {
            if row.len() != n {
                return Err(Error::InvalidCartan("matrix is not square".into()));
            }
            flat.extend_from_slice(row);
        }
        for i in 0..n {
            if flat[i * n + i] != 2 {
                return Err(Error::InvalidCartan("diagonal entries must be 2".into()));
            }
            for j in 0..n {
                if i != j {
                    if flat[i * n + j] > 0 {
                        return Err(Error::InvalidCartan("off-diagonal entries must be <= 0".into()));
                    }
                    if (flat[i * n + j] == 0) != (flat[j * n + i] == 0) {
                        return Err(Error::InvalidCartan("zero pattern must be symmetric".into()));
                    }
                }
            }
        }
        // Finite type: all leading principal minors positive.
        for k in 1..=n {
            let mut sub = Vec::with_capacity(k * k);
            for i in 0..k {
                for j in 0..k {
                    sub.push(flat[i * n + j]);
                }
            }
            if det_i64(&sub, k) <= 0 {
                return Err(Error::InvalidCartan("matrix is not of finite type".into()));
            }
        }
        if !is_connected(&flat, n) {
            return Err(Error::InvalidCartan("Dynkin diagram is not connected (system must be simple)".into()));
        }

        let det = det_i64(&flat, n);
        let adj = adjugate_i64(&flat, n);

        // Generate all roots together with their coroots. A root is kept as a
        // pair (root coords over simple roots, coroot coords over simple
        // coroots); simple reflections act on roots via the Cartan matrix and
        // on coroots via its transpose.
        let mut seen: HashSet<(Coords, Coords)> = HashSet::new();
        let mut queue: VecDeque<(Coords, Coords)> = VecDeque::new();
        for j in 0..n {
            let mut r: Coords = smallvec![0; n];
            r[j] = 1;
            let pair = (r.clone(), r);
            seen.insert(pair.clone());
            queue.push_back(pair);
        }
        while let Some((r, c)) = queue.pop_front() {
            for i in 0..n {
                // (β, α_i∨) = Σ_j cartan[i][j]·r_j
                let pr: i64 = (0..n).map(|j| flat[i * n + j] * r[j]).sum();
                // (α_i, β∨)-style pairing for the coroot side uses the transpose
                let pc: i64 = (0..n).map(|j| flat[j * n + i] * c[j]).sum();
                let mut r2 = r.clone();
                r2[i] -= pr;
                let mut c2 = c.clone();
                c2[i] -= pc;
                let pair = (r2, c2);
                if seen.insert(pair.clone()) {
                    queue.push_back(pair);
                }
            }
        }

        let mut pos: Vec<(Coords, Coords)> = seen
            .into_iter()
            .filter(|(r, _)| r.iter().all(|&x| x >= 0))
            .collect();
        // By height, then lexicographically; then pin the simple roots to
        // index order so that reflection(i) is s_{α_i} for i < n.
        pos.sort_by_key(|(r, _)| (r.iter().sum::<i64>(), r.clone()));
        for j in 0..n {
            let at = (j..pos.len())
                .find(|&k| {
                    pos[k].0.iter().enumerate().all(|(i, &c)| c == i64::from(i == j))
                })
                .expect("simple root present");
            pos.swap(j, at);
        }

        // Fundamental coordinates of a root: coords_i = Σ_j cartan[i][j]·r_j.
        let pos_roots: Vec<Weight> = pos
            .iter()
            .map(|(r, _)| {
                let coords: Coords =
                    (0..n).map(|i| (0..n).map(|j| flat[i * n + j] * r[j]).sum()).collect();
                Weight { coords }
            })
            .collect();
        let pos_coroots: Vec<Coords> = pos.iter().map(|(_, c)| c.clone()).collect();

        // The coroot of the highest short root is the highest coroot.
        let highest_short = (0..pos.len())
            .max_by_key(|&k| (pos_coroots[k].iter().sum::<i64>(), pos_coroots[k].clone()))
            .expect("nonempty");
        let coxeter = pos_coroots[highest_short].iter().sum::<i64>() + 1;

        let rho = Weight { coords: smallvec![1; n] };

        // Root lengths d_i = (α_i, α_i)/2, normalized to min 1, via symmetrizing
        // the Cartan matrix along the Dynkin graph.
        let d = symmetrizer(&flat, n)?;
        // Scaled invariant form on fundamental weights: G_ij = d_i · adj(A)_ij.
        let mut gram = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                gram[i * n + j] = d[i] * adj[i * n + j];
            }
        }
        for i in 0..n {
            for j in 0..n {
                if gram[i * n + j] != gram[j * n + i] {
                    return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
                }
            }
        }

        let kind = if n == 1 {
            Kind::A1
        } else if n == 2 && flat == [2, -1, -1, 2] {
            Kind::A2
        } else {
            Kind::Generic
        };

        Ok(RootSystem {
            kind,
            n,
            cartan: flat,
            pos_roots,
            pos_coroots,
            rho,
            highest_short,
            coxeter,
            det,
            adj,
            gram,
            weyl: OnceLock::new(),
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i * self.n + j]
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.pos_roots
    }

    pub fn positive_root_count(&self) -> usize {
        self.pos_roots.len()
    }

    /// Simple roots are the first `rank()` positive roots.
    pub fn simple_root(&self, i: usize) -> &Weight {
        &self.pos_roots[i]
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter
    }

    /// Order of the fundamental group X/ZΦ (= det of the Cartan matrix).
    pub fn fundamental_group_order(&self) -> i64 {
        self.det
    }

    pub fn highest_short_root_index(&self) -> usize {
        self.highest_short
    }

    pub fn highest_short_root(&self) -> &Weight {
        &self.pos_roots[self.highest_short]
    }

    /// Pairing `(λ, β∨)` with the coroot of the positive root numbered `beta`.
    pub fn pairing(&self, lambda: &Weight, beta: usize) -> Result<i64> {
        if beta >= self.pos_roots.len() {
            return Err(Error::InvalidRootIndex { index: beta, count: self.pos_roots.len() });
        }
        Ok(self.pairing_unchecked(lambda, beta))
    }

    pub(crate) fn pairing_unchecked(&self, lambda: &Weight, beta: usize) -> i64 {
        self.pos_coroots[beta].iter().zip(lambda.coords()).map(|(n, c)| n * c).sum()
    }

    /// `Σ_{β>0} (λ, β∨) = 2(λ, ρ∨)`.
    pub fn two_rho_coroot_pairing(&self, lambda: &Weight) -> i64 {
        (0..self.pos_roots.len()).map(|b| self.pairing_unchecked(lambda, b)).sum()
    }

    /// Reflection in the positive root numbered `beta` (linear action).
    pub fn reflection(&self, beta: usize) -> FiniteWeyl {
        let n = self.n;
        let root = &self.pos_roots[beta];
        let coroot = &self.pos_coroots[beta];
        let mut mat: SmallVec<[i64; 16]> = smallvec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let id = i64::from(i == j);
                mat[i * n + j] = id - root.coord(i) * coroot[j];
            }
        }
        FiniteWeyl { n, mat }
    }

    /// Normalize `λ` so that `λ + ρ` becomes dominant, tracking the Weyl
    /// element and its sign. If `λ + ρ` meets a reflection hyperplane the
    /// result is flagged singular instead of carrying a parity.
    pub fn dominate(&self, lambda: &Weight) -> Dominated {
        let mut v = lambda.plus(&self.rho);
        let mut w = FiniteWeyl::identity(self.n);
        let mut sign = 1i64;
        loop {
            match (0..self.n).find(|&i| v.coord(i) < 0) {
                Some(i) => {
                    let s = self.reflection(i);
                    v = s.apply(&v);
                    w = s.compose(&w);
                    sign = -sign;
                }
                None => break,
            }
        }
        let singular = (0..self.n).any(|i| v.coord(i) == 0);
        Dominated {
            weight: v.minus(&self.rho),
            witness: w,
            parity: if singular { None } else { Some(sign) },
        }
    }

    /// Dominant representative of `λ` under the linear Weyl action.
    pub fn dominant_representative(&self, lambda: &Weight) -> Weight {
        let mut v = lambda.clone();
        loop {
            match (0..self.n).find(|&i| v.coord(i) < 0) {
                Some(i) => v = self.reflection(i).apply(&v),
                None => return v,
            }
        }
    }

    /// Full enumeration of the finite Weyl group with lengths and determinants.
    pub fn finite_weyl_elements(&self) -> &[WeylElement] {
        self.weyl.get_or_init(|| {
            let gens: Vec<FiniteWeyl> = (0..self.n).map(|i| self.reflection(i)).collect();
            let mut seen: HashMap<FiniteWeyl, ()> = HashMap::new();
            let mut out = Vec::new();
            let e = FiniteWeyl::identity(self.n);
            seen.insert(e.clone(), ());
            out.push(WeylElement { transform: e, length: 0, det: 1 });
            let mut frontier = vec![0usize];
            let mut depth = 0u32;
            while !frontier.is_empty() {
                depth += 1;
                let mut next = Vec::new();
                for &idx in &frontier {
                    let base = out[idx].transform.clone();
                    for g in &gens {
                        let cand = g.compose(&base);
                        if !seen.contains_key(&cand) {
                            seen.insert(cand.clone(), ());
                            out.push(WeylElement {
                                transform: cand,
                                length: depth,
                                det: if depth % 2 == 0 { 1 } else { -1 },
                            });
                            next.push(out.len() - 1);
                        }
                    }
                }
                frontier = next;
            }
            out
        })
    }

    /// The longest element `w_0`.
    pub fn longest_element(&self) -> &WeylElement {
        self.finite_weyl_elements().iter().max_by_key(|w| w.length).expect("nonempty group")
    }

    /// Is `λ` in the root lattice ZΦ?
    pub fn in_root_lattice(&self, lambda: &Weight) -> bool {
        // λ ∈ ZΦ iff A⁻¹λ is integral; A⁻¹ = adj(A)/det(A).
        (0..self.n).all(|i| {
            let v: i64 = (0..self.n).map(|j| self.adj[i * self.n + j] * lambda.coord(j)).sum();
            v % self.det == 0
        })
    }

    /// Dominance order: is `λ - μ` a non-negative integer combination of
    /// positive roots?
    pub fn dominance_leq(&self, mu: &Weight, lambda: &Weight) -> bool {
        let d = lambda.minus(mu);
        (0..self.n).all(|i| {
            let v: i64 = (0..self.n).map(|j| self.adj[i * self.n + j] * d.coord(j)).sum();
            v >= 0 && v % self.det == 0
        })
    }

    /// Entrywise floor of `A⁻¹ λ`; the inverse Cartan matrix of a finite type
    /// system is entrywise non-negative, so for dominant λ this bounds the
    /// root-lattice cone below λ.
    pub fn inverse_cartan_floor(&self, lambda: &Weight) -> Vec<i64> {
        (0..self.n)
            .map(|i| {
                let v: i64 =
                    (0..self.n).map(|j| self.adj[i * self.n + j] * lambda.coord(j)).sum();
                v.div_euclid(self.det)
            })
            .collect()
    }

    /// Root-lattice coordinates of `λ` (if `λ ∈ ZΦ` fails, returns None).
    pub fn root_coordinates(&self, lambda: &Weight) -> Option<Coords> {
        let mut out: Coords = smallvec![0; self.n];
        for i in 0..self.n {
            let v: i64 = (0..self.n).map(|j| self.adj[i * self.n + j] * lambda.coord(j)).sum();
            if v % self.det != 0 {
                return None;
            }
            out[i] = v / self.det;
        }
        Some(out)
    }

    /// Scaled W-invariant bilinear form (a positive integer multiple of the
    /// standard one; both Freudenthal sides scale the same way).
    pub fn form(&self, a: &Weight, b: &Weight) -> i64 {
        let n = self.n;
        let mut acc = 0i64;
        for i in 0..n {
            if a.coord(i) == 0 {
                continue;
            }
            for j in 0..n {
                acc += a.coord(i) * self.gram[i * n + j] * b.coord(j);
            }
        }
        acc
    }
}

fn is_connected(cartan: &[i64], n: usize) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if i != j && cartan[i * n + j] != 0 && !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Minimal positive integers d with D·A symmetric.
fn symmetrizer(cartan: &[i64], n: usize) -> Result<Vec<i64>> {
    // Propagate ratios along the Dynkin graph with exact rationals d_j/d_i =
    // a_ij / a_ji, then clear denominators.
    let mut num = vec![0i64; n];
    let mut den = vec![0i64; n];
    num[0] = 1;
    den[0] = 1;
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if i == j || cartan[i * n + j] == 0 {
                continue;
            }
            // d_i a_ij = d_j a_ji  =>  d_j = d_i a_ij / a_ji
            let nn = num[i] * cartan[i * n + j];
            let dd = den[i] * cartan[j * n + i];
            let g = gcd(nn.abs(), dd.abs());
            let (nn, dd) = (nn / g, dd / g);
            let (nn, dd) = if dd < 0 { (-nn, -dd) } else { (nn, dd) };
            if den[j] == 0 {
                num[j] = nn;
                den[j] = dd;
                stack.push(j);
            } else if num[j] * dd != nn * den[j] {
                return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
            }
        }
    }
    let lcm_den = den.iter().fold(1i64, |acc, &d| acc / gcd(acc, d) * d);
    let mut d: Vec<i64> = (0..n).map(|i| num[i] * (lcm_den / den[i])).collect();
    let g = d.iter().fold(0i64, |acc, &x| gcd(acc, x.abs()));
    for x in &mut d {
        *x /= g;
    }
    if d.iter().any(|&x| x <= 0) {
        return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
    }
    Ok(d)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// Exact determinant by cofactor expansion (matrices here have rank ≤ 8).
fn det_i64(mat: &[i64], n: usize) -> i64 {
    match n {
        0 => 1,
        1 => mat[0],
        2 => mat[0] * mat[3] - mat[1] * mat[2],
        _ => {
            let mut acc = 0i64;
            for j in 0..n {
                if mat[j] == 0 {
                    continue;
                }
                let minor = minor_matrix(mat, n, 0, j);
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc += sign * mat[j] * det_i64(&minor, n - 1);
            }
            acc
        }
    }
}

fn minor_matrix(mat: &[i64], n: usize, row: usize, col: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity((n - 1) * (n - 1));
    for i in 0..n {
        if i == row {
            continue;
        }
        for j in 0..n {
            if j == col {
                continue;
            }
            out.push(mat[i * n + j]);
        }
    }
    out
}

/// Adjugate matrix: adj(A)·A = det(A)·I.
fn adjugate_i64(mat: &[i64], n: usize) -> Vec<i64> {
    if n == 1 {
        return vec![1];
    }
    let mut adj = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            let minor = minor_matrix(mat, n, j, i); // transpose of cofactors
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i * n + j] = sign * det_i64(&minor, n - 1);
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_basic_data() {
        let rs = RootSystem::a1();
        assert_eq!(rs.kind(), Kind::A1);
        assert_eq!(rs.positive_root_count(), 1);
        assert_eq!(rs.coxeter_number(), 2);
        assert_eq!(rs.fundamental_group_order(), 2);
        assert_eq!(rs.rho(), &Weight::new(vec![1]));
        // α = 2ϖ
        assert_eq!(rs.simple_root(0), &Weight::new(vec![2]));
        // pairing(3ϖ, α) = 3
        assert_eq!(rs.pairing(&Weight::new(vec![3]), 0).unwrap(), 3);
    }

    #[test]
    fn a2_basic_data() {
        let rs = RootSystem::a2();
        assert_eq!(rs.kind(), Kind::A2);
        assert_eq!(rs.positive_root_count(), 3);
        assert_eq!(rs.coxeter_number(), 3);
        assert_eq!(rs.fundamental_group_order(), 3);
        // ρ = (1,1), α_h = α_1 + α_2 = (1,1); (ρ, α_h∨) = 2
        let h = rs.highest_short_root_index();
        assert_eq!(rs.highest_short_root(), &Weight::new(vec![1, 1]));
        assert_eq!(rs.pairing(&Weight::new(vec![1, 1]), h).unwrap(), 2);
        // zero weight pairs to zero against everything
        for b in 0..3 {
            assert_eq!(rs.pairing(&Weight::zero(2), b).unwrap(), 0);
        }
        assert!(rs.pairing(&Weight::zero(2), 3).is_err());
    }

    #[test]
    fn weyl_group_orders() {
        assert_eq!(RootSystem::a1().finite_weyl_elements().len(), 2);
        assert_eq!(RootSystem::a2().finite_weyl_elements().len(), 6);
    }

    #[test]
    fn a2_longest_element_flips_coordinates() {
        let rs = RootSystem::a2();
        let w0 = rs.longest_element();
        assert_eq!(w0.length, 3);
        // −w_0(a,b) = (b,a)
        let img = w0.transform.apply(&Weight::new(vec![2, 5]));
        assert_eq!(img.neg(), Weight::new(vec![5, 2]));
    }

    #[test]
    fn dominate_examples() {
        let a1 = RootSystem::a1();
        // s·(−4) = −(−4+1)−1 = 2
        let d = a1.dominate(&Weight::new(vec![-4]));
        assert_eq!(d.weight, Weight::new(vec![2]));
        assert_eq!(d.parity, Some(-1));
        assert_eq!(d.witness.apply(&Weight::new(vec![-3])), Weight::new(vec![3]));

        let a2 = RootSystem::a2();
        let d = a2.dominate(&Weight::new(vec![1, 1]));
        assert_eq!(d.weight, Weight::new(vec![1, 1]));
        assert_eq!(d.parity, Some(1));
        assert!(d.witness.is_identity());

        // λ + ρ = 0 is fixed by s: singular under the ρ-shift
        let d = a1.dominate(&Weight::new(vec![-1]));
        assert!(d.is_singular());
    }

    #[test]
    fn dominate_is_idempotent() {
        let rs = RootSystem::a2();
        for a in -4..4 {
            for b in -4..4 {
                let d = rs.dominate(&Weight::new(vec![a, b]));
                let d2 = rs.dominate(&d.weight);
                assert_eq!(d2.weight, d.weight);
                assert!(d2.witness.is_identity());
            }
        }
    }

    #[test]
    fn pairings_invariant_under_weyl_action() {
        // (w(λ), w(β)∨) = (λ, β∨): check by permuting the positive-root list.
        let rs = RootSystem::a2();
        let lambda = Weight::new(vec![3, -2]);
        for w in rs.finite_weyl_elements() {
            for b in 0..rs.positive_root_count() {
                let img = w.transform.apply(&rs.pos_roots[b]);
                let (sign, img_idx) = match rs.pos_roots.iter().position(|r| *r == img) {
                    Some(i) => (1, i),
                    None => {
                        let neg = img.neg();
                        (-1, rs.pos_roots.iter().position(|r| *r == neg).expect("roots permuted"))
                    }
                };
                let lhs = rs.pairing(&w.transform.apply(&lambda), img_idx).unwrap() * sign;
                assert_eq!(lhs, rs.pairing(&lambda, b).unwrap());
            }
        }
    }

    #[test]
    fn two_rho_pairing_matches_sum() {
        let rs = RootSystem::a2();
        let lambda = Weight::new(vec![4, 7]);
        let total: i64 =
            (0..rs.positive_root_count()).map(|b| rs.pairing(&lambda, b).unwrap()).sum();
        assert_eq!(rs.two_rho_coroot_pairing(&lambda), total);
        assert_eq!(total, 2 * 4 + 2 * 7); // 2(λ, ρ∨) for A2
    }

    #[test]
    fn generic_constructor_accepts_b2_and_rejects_affine() {
        // B2: non-simply-laced, h = 4, fundamental group Z/2.
        let b2 = RootSystem::from_cartan(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        assert_eq!(b2.kind(), Kind::Generic);
        assert_eq!(b2.positive_root_count(), 4);
        assert_eq!(b2.coxeter_number(), 4);
        assert_eq!(b2.fundamental_group_order(), 2);
        assert_eq!(b2.finite_weyl_elements().len(), 8);

        // Affine A1 matrix is not of finite type.
        assert!(RootSystem::from_cartan(vec![vec![2, -2], vec![-2, 2]]).is_err());
    }

    #[test]
    fn root_lattice_membership() {
        let a1 = RootSystem::a1();
        assert!(a1.in_root_lattice(&Weight::new(vec![2])));
        assert!(!a1.in_root_lattice(&Weight::new(vec![3])));
        let a2 = RootSystem::a2();
        assert!(a2.in_root_lattice(&Weight::new(vec![1, 1])));
        assert!(!a2.in_root_lattice(&Weight::new(vec![1, 0])));
        assert!(a2.in_root_lattice(&Weight::new(vec![1, -2])));
    }
}
