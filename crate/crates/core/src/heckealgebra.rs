//! The Hecke algebra acting on `W5`: matrices of `X = T_7` and `Y = T_13` on
//! the filtration `S_m`, kernels, the adapted basis `m_{a,b}`, operators as
//! power series in `X` and `Y`, `λ` with `T_5² = λ²`, and the square-zero
//! element `ε = T_5 + λ(X, Y)`.
//!
//! Series are read off the adapted basis. If `T = u(X, Y)` on `W5` then
//! `T m_{a,b} = Σ u_{ij} m_{a-i,b-j}`, so expanding `T m_{a,b}` for every
//! `(a, b)` on the anti-diagonal `a + b = deg - 1` exposes each coefficient of
//! `u` modulo `(X, Y)^deg`, most of them several times; the repeats are
//! checked against each other.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::action::HeckeAction;
use crate::error::{Error, Result};
use crate::expalgebra::{decode, encode, s_basis, s_dim, ExponentSet, Level, MonomialPair};
use crate::gaussclasses::{default_generator, dihedral_basis, dihedral_bound};
use crate::gf2series::{parse_fields, parse_usize_list};
use crate::linalg::{rank_of, BitVector, Gf2Matrix, PivotOrder};
use crate::require_odd_prime;

/// A truncated power series in `X` and `Y` over GF(2): the monomials
/// `X^i Y^j`, `i + j < deg`, with coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XYSeries {
    deg: usize,
    terms: BTreeSet<(usize, usize)>,
}

impl XYSeries {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(deg: usize, terms: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (i, j) in terms {
            if i + j >= deg {
                return Err(Error::InvalidArgument(format!(
                    "monomial X^{i}Y^{j} is not below total degree {deg}"
                )));
            }
            if !set.insert((i, j)) {
                set.remove(&(i, j));
            }
        }
        Ok(XYSeries { deg, terms: set })
    }

    pub fn zero(deg: usize) -> Self {
        XYSeries {
            deg,
            terms: BTreeSet::new(),
        }
    }

    /// `X` modulo `(X, Y)^deg`.
    pub fn x(deg: usize) -> Self {
        Self::new(deg, (deg > 1).then_some((1, 0))).expect("in range")
    }

    pub fn y(deg: usize) -> Self {
        Self::new(deg, (deg > 1).then_some((0, 1))).expect("in range")
    }

    pub fn deg(&self) -> usize {
        self.deg
    }

    pub fn terms(&self) -> &BTreeSet<(usize, usize)> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> bool {
        self.terms.contains(&(i, j))
    }

    pub fn constant_term(&self) -> bool {
        self.coeff(0, 0)
    }

    pub fn truncated(&self, deg: usize) -> Result<Self> {
        if deg > self.deg {
            return Err(Error::Precision {
                requested: deg,
                available: self.deg,
            });
        }
        Ok(XYSeries {
            deg,
            terms: self.terms.iter().copied().filter(|&(i, j)| i + j < deg).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let deg = self.deg.min(other.deg);
        let terms = self
            .terms
            .symmetric_difference(&other.terms)
            .copied()
            .filter(|&(i, j)| i + j < deg)
            .collect();
        XYSeries { deg, terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let deg = self.deg.min(other.deg);
        let mut terms = BTreeSet::new();
        for &(i, j) in &self.terms {
            for &(k, l) in &other.terms {
                if i + j + k + l < deg && !terms.insert((i + k, j + l)) {
                    terms.remove(&(i + k, j + l));
                }
            }
        }
        XYSeries { deg, terms }
    }

    /// The Frobenius square, known modulo `(X, Y)^(2 deg)`.
    pub fn square(&self) -> Self {
        XYSeries {
            deg: 2 * self.deg,
            terms: self.terms.iter().map(|&(i, j)| (2 * i, 2 * j)).collect(),
        }
    }

    /// The series `v` with `v² = self`, if every monomial has even exponents.
    pub fn sqrt(&self) -> Option<Self> {
        if self.terms.iter().any(|&(i, j)| i % 2 == 1 || j % 2 == 1) {
            return None;
        }
        Some(XYSeries {
            deg: self.deg.div_ceil(2),
            terms: self.terms.iter().map(|&(i, j)| (i / 2, j / 2)).collect(),
        })
    }
}

impl fmt::Display for XYSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "deg={}; terms=", self.deg)?;
        for (n, (i, j)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{i},{j}")?;
        }
        Ok(())
    }
}

impl FromStr for XYSeries {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields = parse_fields(s, &["deg", "terms"])?;
        let deg = fields[0]
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("deg `{}`: {e}", fields[0])))?;
        let mut terms = Vec::new();
        for pair in fields[1].split_whitespace() {
            match parse_usize_list(pair)?.as_slice() {
                &[i, j] => terms.push((i, j)),
                _ => return Err(Error::Parse(format!("expected `i,j`, got `{pair}`"))),
            }
        }
        let series = XYSeries::new(deg, terms.iter().copied())?;
        if series.terms.len() != terms.len() || terms.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse(format!("terms must be sorted and distinct in `{s}`")));
        }
        Ok(series)
    }
}

impl Serialize for XYSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            deg: usize,
            terms: Vec<[usize; 2]>,
        }
        Repr {
            deg: self.deg,
            terms: self.terms.iter().map(|&(i, j)| [i, j]).collect(),
        }
        .serialize(s)
    }
}

/// `X = T_7`, `Y = T_13` or another `T_p` with `p ≡ 1 (mod 6)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    X,
    Y,
    T(u64),
}

impl Operator {
    pub fn prime(self) -> u64 {
        match self {
            Operator::X => 7,
            Operator::Y => 13,
            Operator::T(p) => p,
        }
    }
}

fn require_w5_operator(p: u64) -> Result<()> {
    require_odd_prime(p)?;
    if p % 6 != 1 {
        return Err(Error::InvalidArgument(format!("T_{p} does not preserve W5 (need p ≡ 1 mod 6)")));
    }
    Ok(())
}

fn require_cross_operator(p: u64) -> Result<()> {
    require_odd_prime(p)?;
    if p % 6 != 5 {
        return Err(Error::InvalidArgument(format!("T_{p} does not map W5 to W1 (need p ≡ 5 mod 6)")));
    }
    Ok(())
}

/// Coordinates of a `W5` element in `s_basis(m)`.
fn coords(w: &ExponentSet, m: u32) -> Result<Option<BitVector>> {
    let dim = s_dim(m);
    let mut v = BitVector::zeros(dim);
    for &n in w.exps() {
        let pair = decode(n, Level::Three)?;
        if pair.degree() >= m {
            return Ok(None);
        }
        v.flip(pair.index());
    }
    Ok(Some(v))
}

fn from_coords(v: &BitVector) -> ExponentSet {
    ExponentSet::new(
        Level::Three,
        v.ones().map(|i| encode(MonomialPair::from_index(i), Level::Three)),
    )
    .expect("monomial exponents are admissible")
}


/// The basis `m_{a,b}` (`a + b <= r`) of `S_(r+1)` on which `X` and `Y` act
/// as the two index shifts.
#[derive(Clone, Debug)]
pub struct AdaptedBasis {
    r: u32,
    order: PivotOrder,
    /// `m_{a,b}` in `s_basis(r+1)` coordinates, indexed by `[a,b].index()`.
    vectors: Vec<BitVector>,
    change: Gf2Matrix,
    inverse: Gf2Matrix,
}

impl AdaptedBasis {
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn pivot_order(&self) -> PivotOrder {
        self.order
    }

    pub fn vector(&self, a: u32, b: u32) -> Option<ExponentSet> {
        (a + b <= self.r).then(|| from_coords(&self.vectors[MonomialPair::new(a, b).index()]))
    }

    /// All `m_{a,b}` in monomial order of `(a, b)`.
    pub fn vectors(&self) -> BTreeMap<MonomialPair, ExponentSet> {
        s_basis(self.r + 1)
            .into_iter()
            .map(|p| (p, from_coords(&self.vectors[p.index()])))
            .collect()
    }

    /// Columns are the `m_{a,b}` in `s_basis(r+1)` coordinates.
    pub fn change(&self) -> &Gf2Matrix {
        &self.change
    }

    pub fn inverse(&self) -> &Gf2Matrix {
        &self.inverse
    }

    /// The same basis cut down to `a + b <= r`.
    pub fn restricted(&self, r: u32) -> Self {
        assert!(r <= self.r);
        let dim = s_dim(r + 1);
        AdaptedBasis {
            r,
            order: self.order,
            vectors: self.vectors[..dim].iter().map(|v| v.prefix(dim)).collect(),
            change: self.change.submatrix(dim, dim),
            inverse: self.inverse.submatrix(dim, dim),
        }
    }

    /// Coordinates of `w` in the `m_{a,b}`, or `None` if `w ∉ S_(r+1)`.
    pub fn expand(&self, w: &ExponentSet) -> Result<Option<BitVector>> {
        Ok(coords(w, self.r + 1)?.map(|v| self.inverse.mul_vec(&v)))
    }
}

impl Serialize for AdaptedBasis {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            a: u32,
            b: u32,
            exps: Vec<usize>,
        }
        #[derive(Serialize)]
        struct Repr {
            r: u32,
            vectors: Vec<Entry>,
        }
        Repr {
            r: self.r,
            vectors: self
                .vectors()
                .into_iter()
                .map(|(p, v)| Entry {
                    a: p.a,
                    b: p.b,
                    exps: v.exps().to_vec(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// Cached state for the structural computations. Hecke images, the adapted
/// basis and `λ` are reused across calls.
pub struct HeckeAlgebra {
    action: HeckeAction,
    order: PivotOrder,
    basis: Option<AdaptedBasis>,
    lambdas: HashMap<usize, XYSeries>,
}

impl Default for HeckeAlgebra {
    fn default() -> Self {
        Self::new()
    }
}

impl HeckeAlgebra {
    pub fn new() -> Self {
        Self::with_pivot_order(PivotOrder::Canonical)
    }

    /// Uses `order` when choosing the particular solutions that define the `m_{a,b}`.
    pub fn with_pivot_order(order: PivotOrder) -> Self {
        HeckeAlgebra {
            action: HeckeAction::new(),
            order,
            basis: None,
            lambdas: HashMap::new(),
        }
    }

    pub fn action(&mut self) -> &mut HeckeAction {
        &mut self.action
    }

    /// The matrix of the operator from `s_basis(m+1)` to `s_basis(m)`.
    pub fn op_matrix(&mut self, op: Operator, m: u32) -> Result<Gf2Matrix> {
        let p = op.prime();
        require_w5_operator(p)?;
        let pairs = s_basis(m + 1);
        let ns: Vec<usize> = pairs.iter().map(|&q| encode(q, Level::Three)).collect();
        self.action.prefetch(p, Level::Three, &ns)?;
        let mut columns = Vec::with_capacity(ns.len());
        for (&n, pair) in ns.iter().zip(&pairs) {
            let img = self.action.monomial_image(p, Level::Three, n)?;
            let col = coords(&img, m)?.ok_or_else(|| {
                Error::consistency(
                    "Hecke operators lower the filtration",
                    format!("T_{p} maps {pair} = D^{n} to {img}, outside S_{m}"),
                )
            })?;
            columns.push(col);
        }
        Ok(Gf2Matrix::from_columns(s_dim(m), &columns))
    }

    /// A basis of the kernel of `X` on `W5(q)`, checked to span `DI(q)`.
    pub fn kernel_x(&mut self, q: u64) -> Result<Vec<ExponentSet>> {
        if !q.is_power_of_two() || q > 16 {
            return Err(Error::InvalidArgument(format!("q = {q} must be a power of 2 at most 16")));
        }
        let bound = dihedral_bound(q, Level::Three);
        let ns: Vec<usize> = (5..bound).step_by(6).collect();
        let kernel = self.kernel_of(&[7], &ns)?;
        let dihedral = dihedral_basis(q, default_generator(Level::Three), Level::Three, 2 * bound)?;
        let as_rows = |vs: &[ExponentSet]| -> Vec<BitVector> {
            vs.iter()
                .map(|v| BitVector::from_indices(bound, v.exps().iter().copied()))
                .collect()
        };
        let (k_rows, d_rows) = (as_rows(&kernel), as_rows(&dihedral.vectors));
        let joint = rank_of(&[k_rows.clone(), d_rows].concat());
        if kernel.len() != q as usize || joint != q as usize {
            return Err(Error::consistency(
                "the kernel of X on W5(q) is DI(q)",
                format!(
                    "q = {q}: kernel dimension {}, joint rank with DI(q) {joint}",
                    kernel.len()
                ),
            ));
        }
        Ok(kernel)
    }

    /// A basis of the common kernel of `X` and `Y` on the `D^n`, `n ≡ 5 mod 6`, `n <= max_n`.
    pub fn xy_kernel(&mut self, max_n: usize) -> Result<Vec<ExponentSet>> {
        let ns: Vec<usize> = (5..=max_n).step_by(6).collect();
        self.kernel_of(&[7, 13], &ns)
    }

    fn kernel_of(&mut self, primes: &[u64], ns: &[usize]) -> Result<Vec<ExponentSet>> {
        let index: HashMap<usize, usize> = ns.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let mut blocks: Option<Gf2Matrix> = None;
        for &p in primes {
            self.action.prefetch(p, Level::Three, ns)?;
            let mut columns = Vec::with_capacity(ns.len());
            for &n in ns {
                let img = self.action.monomial_image(p, Level::Three, n)?;
                let mut col = BitVector::zeros(ns.len());
                for k in img.exps() {
                    let &i = index.get(k).ok_or_else(|| {
                        Error::consistency(
                            "Hecke images are triangular",
                            format!("T_{p}(D^{n}) contains D^{k}"),
                        )
                    })?;
                    col.flip(i);
                }
                columns.push(col);
            }
            let block = Gf2Matrix::from_columns(ns.len(), &columns);
            blocks = Some(match blocks {
                None => block,
                Some(acc) => acc.vstack(&block),
            });
        }
        let matrix = blocks.expect("at least one operator");
        Ok(matrix
            .kernel()
            .iter()
            .map(|v| ExponentSet::from_sorted(Level::Three, v.ones().map(|i| ns[i]).collect()))
            .collect())
    }

    fn ensure_basis(&mut self, r: u32) -> Result<&AdaptedBasis> {
        if self.basis.as_ref().is_none_or(|b| b.r < r) {
            let basis = self.build_basis(r)?;
            self.basis = Some(basis);
        }
        Ok(self.basis.as_ref().expect("just built"))
    }

    /// The adapted basis up to `a + b <= r`, with its defining relations checked.
    pub fn adapted_basis(&mut self, r: u32) -> Result<AdaptedBasis> {
        Ok(self.ensure_basis(r)?.restricted(r))
    }

    fn build_basis(&mut self, r: u32) -> Result<AdaptedBasis> {
        let x = self.op_matrix(Operator::X, r)?;
        let y = self.op_matrix(Operator::Y, r)?;
        let dim = s_dim(r + 1);
        let mut vectors = vec![BitVector::zeros(dim); dim];
        vectors[0].flip(0);
        for k in 1..=r {
            let (rows, cols) = (s_dim(k), s_dim(k + 1));
            let system = x.submatrix(rows, cols).vstack(&y.submatrix(rows, cols));
            for pair in s_basis(k + 1).into_iter().filter(|p| p.degree() == k) {
                let target = |shifted: Option<MonomialPair>| match shifted {
                    Some(s) => vectors[s.index()].prefix(rows),
                    None => BitVector::zeros(rows),
                };
                let fx = target(pair.a.checked_sub(1).map(|a| MonomialPair::new(a, pair.b)));
                let fy = target(pair.b.checked_sub(1).map(|b| MonomialPair::new(pair.a, b)));
                let e = system.solve(&fx.concat(&fy), self.order).ok_or_else(|| {
                    Error::consistency(
                        "X and Y can be inverted jointly on the filtration",
                        format!("no e in S_{} with X e = m_(a-1,b), Y e = m_(a,b-1) for {pair}", k + 1),
                    )
                })?;
                vectors[pair.index()] = e.extended(dim);
            }
        }
        let change = Gf2Matrix::from_columns(dim, &vectors);
        let basis = AdaptedBasis {
            r,
            order: self.order,
            inverse: change.inverse().ok_or_else(|| {
                Error::consistency("the m_{a,b} form a basis", format!("change matrix singular at r = {r}"))
            })?,
            change,
            vectors,
        };
        check_relations(&basis, &x, &y)?;
        Ok(basis)
    }

    /// `u(X, Y) w`, applying `X` and `Y` as Hecke operators.
    pub fn apply_xy(&mut self, u: &XYSeries, w: &ExponentSet) -> Result<ExponentSet> {
        let mut by_i: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(i, j) in u.terms() {
            by_i.entry(i).or_default().push(j);
        }
        let mut acc = ExponentSet::zero(w.level());
        let mut xi = w.clone();
        let mut at = 0;
        for (i, js) in by_i {
            xi = self.action.apply_power(7, &xi, (i - at) as u32)?;
            at = i;
            let mut yj = xi.clone();
            let mut at_j = 0;
            for j in js {
                yj = self.action.apply_power(13, &yj, (j - at_j) as u32)?;
                at_j = j;
                acc.add_assign(&yj);
            }
        }
        Ok(acc)
    }

    /// Reads `u` modulo `(X, Y)^deg` from `image(m_{a,b}) = u · m_{a,b}` for
    /// `a + b = deg - 1`.
    fn extract<F>(&mut self, deg: usize, what: &str, mut image: F) -> Result<XYSeries>
    where
        F: FnMut(&mut Self, &ExponentSet) -> Result<ExponentSet>,
    {
        if deg == 0 {
            return Err(Error::InvalidArgument("deg must be at least 1".into()));
        }
        let k = (deg - 1) as u32;
        let basis = self.ensure_basis(k)?.clone();
        let mut seen: BTreeMap<(usize, usize), bool> = BTreeMap::new();
        for a in 0..=k {
            let b = k - a;
            let m = basis.vector(a, b).expect("within r");
            let img = image(self, &m)?;
            let expansion = basis.expand(&img)?.ok_or_else(|| {
                Error::consistency(
                    "Hecke operators preserve the filtration",
                    format!("{what} of m_({a},{b}) leaves S_{}", k + 1),
                )
            })?;
            let mut present = BTreeSet::new();
            for idx in expansion.ones() {
                let c = MonomialPair::from_index(idx);
                if c.a > a || c.b > b {
                    return Err(Error::consistency(
                        "operators act as power series in X and Y",
                        format!("{what} of m_({a},{b}) involves m_({},{})", c.a, c.b),
                    ));
                }
                present.insert(((a - c.a) as usize, (b - c.b) as usize));
            }
            for i in 0..=a as usize {
                for j in 0..=b as usize {
                    let here = present.contains(&(i, j));
                    if let Some(&before) = seen.get(&(i, j)) {
                        if before != here {
                            return Err(Error::consistency(
                                "operators act as power series in X and Y",
                                format!("{what}: coefficient of X^{i}Y^{j} differs between m_(a,b) on the anti-diagonal"),
                            ));
                        }
                    }
                    seen.insert((i, j), here);
                }
            }
        }
        XYSeries::new(deg, seen.into_iter().filter(|&(_, c)| c).map(|(ij, _)| ij))
    }

    /// `u` with `T_p = u(X, Y)` on `W5`, modulo `(X, Y)^deg`.
    pub fn tp_xy_series(&mut self, p: u64, deg: usize) -> Result<XYSeries> {
        require_w5_operator(p)?;
        let u = self.extract(deg, &format!("T_{p}"), |alg, m| alg.action.apply(p, m))?;
        if u.constant_term() {
            return Err(Error::consistency(
                "T_p is topologically nilpotent on W5",
                format!("T_{p} has constant term 1"),
            ));
        }
        Ok(u)
    }

    /// `λ` modulo `(X, Y)^deg`, where `T_5² = λ²` on `W5`.
    pub fn lambda_series(&mut self, deg: usize) -> Result<XYSeries> {
        if deg == 0 {
            return Err(Error::InvalidArgument("deg must be at least 1".into()));
        }
        if let Some(l) = self.lambdas.get(&deg) {
            return Ok(l.clone());
        }
        let squared = self.extract(2 * deg - 1, "T_5^2", |alg, m| {
            let once = alg.action.apply(5, m)?;
            alg.action.apply(5, &once)
        })?;
        let lambda = squared.sqrt().ok_or_else(|| {
            Error::consistency(
                "T_5^2 is a square in Z/2[[X,Y]]",
                format!("T_5^2 = {squared} has a monomial with an odd exponent"),
            )
        })?;
        debug_assert_eq!(lambda.deg(), deg);
        self.lambdas.insert(deg, lambda.clone());
        Ok(lambda)
    }

    /// The `W5` element `v` with `T_5 v = w`, for `w ∈ W1`.
    pub fn t5_inverse(&mut self, w: &ExponentSet) -> Result<ExponentSet> {
        if w.level() != Level::Three || w.exps().iter().any(|k| k % 6 != 1) {
            return Err(Error::InvalidArgument(format!("{w} is not in W1")));
        }
        let mut rest = w.clone();
        let mut pre = ExponentSet::zero(Level::Three);
        while let Some(top) = rest.max() {
            let n = top + 4;
            let img = self.action.monomial_image(5, Level::Three, n)?;
            if img.max() != Some(top) {
                return Err(Error::consistency(
                    "T_5 maps D^(6m+5) to D^(6m+1) plus lower terms",
                    format!("T_5(D^{n}) = {img}"),
                ));
            }
            rest.add_assign(&img);
            pre.add_assign(&ExponentSet::from_sorted(Level::Three, vec![n]));
        }
        Ok(pre)
    }

    /// `t` with `T_p = t(X, Y) T_5` from `W5` to `W1`, modulo `(X, Y)^deg`.
    pub fn tp_t5_cofactor(&mut self, p: u64, deg: usize) -> Result<XYSeries> {
        require_cross_operator(p)?;
        self.extract(deg, &format!("T_5^-1 T_{p}"), |alg, m| {
            let img = alg.action.apply(p, m)?;
            alg.t5_inverse(&img)
        })
    }

    /// Smallest `d` with `(X, Y)^d w = 0`, from the filtration: `S_m` is
    /// killed by `(X, Y)^m`, and so is its image `T_5 S_m ⊂ W1`.
    pub fn annihilating_degree(&mut self, w: &ExponentSet) -> Result<usize> {
        if w.level() != Level::Three {
            return Err(Error::InvalidArgument(format!("{w} is not a level-3 element")));
        }
        let pre = self.t5_inverse(&w.residue_part(1))?;
        let mut bound = 0;
        for &n in w.residue_part(5).exps().iter().chain(pre.exps()) {
            bound = bound.max(decode(n, Level::Three)?.degree() as usize + 1);
        }
        Ok(bound)
    }

    /// `ε w = T_5 w + λ(X, Y) w` with `λ` truncated at `deg`.
    pub fn epsilon_apply(&mut self, w: &ExponentSet, deg: usize) -> Result<ExponentSet> {
        let need = self.annihilating_degree(w)?;
        if deg < need {
            return Err(Error::Precision {
                requested: need,
                available: deg,
            });
        }
        if w.is_zero() {
            return Ok(w.clone());
        }
        let lambda = self.lambda_series(deg)?;
        let t5 = self.action.apply(5, w)?;
        Ok(t5.add(&self.apply_xy(&lambda, w)?))
    }
}

fn check_relations(basis: &AdaptedBasis, x: &Gf2Matrix, y: &Gf2Matrix) -> Result<()> {
    let r = basis.r;
    let rows = s_dim(r);
    let fail = |detail: String| Err(Error::consistency("X m_(a,b) = m_(a-1,b) and Y m_(a,b) = m_(a,b-1)", detail));
    if from_coords(&basis.vectors[0]).exps() != [5] {
        return fail("m_(0,0) is not D^5".into());
    }
    for pair in s_basis(r + 1) {
        let v = &basis.vectors[pair.index()];
        if v.ones().any(|i| i >= s_dim(pair.degree() + 1)) {
            return fail(format!("m_{pair} is not in S_{}", pair.degree() + 1));
        }
        let expect = |shifted: Option<MonomialPair>| match shifted {
            Some(s) => basis.vectors[s.index()].prefix(rows),
            None => BitVector::zeros(rows),
        };
        if x.mul_vec(v) != expect(pair.a.checked_sub(1).map(|a| MonomialPair::new(a, pair.b))) {
            return fail(format!("X m_{pair}"));
        }
        if y.mul_vec(v) != expect(pair.b.checked_sub(1).map(|b| MonomialPair::new(pair.a, b))) {
            return fail(format!("Y m_{pair}"));
        }
    }
    for k in 0..=r {
        let dim = s_dim(k + 1);
        let prefix: Vec<BitVector> = basis.vectors[..dim].to_vec();
        if rank_of(&prefix) != dim {
            return Err(Error::consistency(
                "the m_(a,b) with a+b <= k form a basis of S_(k+1)",
                format!("rank {} < {dim} at k = {k}", rank_of(&prefix)),
            ));
        }
    }
    Ok(())
}

pub fn op_matrix(op: Operator, m: u32) -> Result<Gf2Matrix> {
    HeckeAlgebra::new().op_matrix(op, m)
}

pub fn kernel_x(q: u64) -> Result<Vec<ExponentSet>> {
    HeckeAlgebra::new().kernel_x(q)
}

pub fn adapted_basis(r: u32) -> Result<AdaptedBasis> {
    HeckeAlgebra::new().adapted_basis(r)
}

pub fn tp_xy_series(p: u64, deg: usize) -> Result<XYSeries> {
    HeckeAlgebra::new().tp_xy_series(p, deg)
}

pub fn lambda_series(deg: usize) -> Result<XYSeries> {
    HeckeAlgebra::new().lambda_series(deg)
}

pub fn tp_t5_cofactor(p: u64, deg: usize) -> Result<XYSeries> {
    HeckeAlgebra::new().tp_t5_cofactor(p, deg)
}

pub fn epsilon_apply(w: &ExponentSet, deg: usize) -> Result<ExponentSet> {
    HeckeAlgebra::new().epsilon_apply(w, deg)
}
