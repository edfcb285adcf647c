//! The root vectors z_i, u_i, w_i, z_{i,1}, z_{i,2}, s_i, t_i and their
//! scalar companions.
//!
//! Elements live in the tensor algebra; statements "in B(V)" are decided with
//! [`is_zero_in_nichols`]. The scalars are written once over [`Scalar`] so they
//! can be screened in a prime field before exact evaluation.
//!
//! Notation: r = q12 q21, P_i = ⟨ẑ_i, z_i⟩ = q21^{-i} b_i (i)!_{q11⁻¹},
//! χ(z_i, z_j) = χ(deg z_i, deg z_j).

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::braiding::{DiagonalBraiding, MultiDegree};
use crate::cyclo::{CyclotomicNumber, RootOfUnity};
use crate::qcomb::{q_fact, q_int};
use crate::scalar::{ModP, PrimeField, Scalar};
use crate::tensor::{is_zero_in_nichols, TensorElement, TensorError};

pub const DEFAULT_I_MAX: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootVectorError {
    #[error("degenerate denominator in {element}_{index}: {reason} vanishes")]
    DegenerateDenominator {
        element: &'static str,
        index: usize,
        reason: &'static str,
    },
    #[error("index {index} exceeds the cap {cap}")]
    IndexCap { index: usize, cap: usize },
    #[error("{element}_0 is undefined")]
    IndexZero { element: &'static str },
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// A division by an exact zero; carries the name of the vanishing quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Degenerate(pub &'static str);

pub fn deg_z(i: usize) -> MultiDegree {
    MultiDegree::new(i as u32, 1)
}

pub fn deg_u(i: usize) -> MultiDegree {
    MultiDegree::new(1, i as u32)
}

pub fn deg_w(i: usize) -> MultiDegree {
    MultiDegree::new(2 * i as u32, 2)
}

pub fn deg_z1(i: usize) -> MultiDegree {
    MultiDegree::new(2 * i as u32 + 1, 2)
}

pub fn deg_z2(i: usize) -> MultiDegree {
    MultiDegree::new(3 * i as u32 + 2, 3)
}

pub fn deg_s(i: usize) -> MultiDegree {
    MultiDegree::new(3 * i as u32, 3)
}

pub fn deg_t(i: usize) -> MultiDegree {
    MultiDegree::new(4 * i as u32 + 2, 4)
}

/// Exponents of q11, q12, q21, q22 in χ(x, y).
fn chi_exponents(x: MultiDegree, y: MultiDegree) -> [i64; 4] {
    [
        x.a as i64 * y.a as i64,
        x.a as i64 * y.b as i64,
        x.b as i64 * y.a as i64,
        x.b as i64 * y.b as i64,
    ]
}

/// The braiding constants in some coefficient field.
#[derive(Clone, Debug)]
pub struct Coefficients<S> {
    q: [S; 4],
    roots: Option<[RootOfUnity; 4]>,
}

fn quot<S: Scalar>(a: &S, b: &S, what: &'static str) -> Result<S, Degenerate> {
    if b.zero_status() == Some(true) {
        return Err(Degenerate(what));
    }
    Ok(a.div(b))
}

impl Coefficients<CyclotomicNumber> {
    pub fn exact(br: &DiagonalBraiding) -> Self {
        Coefficients {
            q: [br.q11(), br.q12(), br.q21(), br.q22()].map(Clone::clone),
            roots: br.roots(),
        }
    }
}

impl Coefficients<ModP> {
    /// Images in the prime field attached to the braiding's root order.
    pub fn modular(br: &DiagonalBraiding) -> Option<Self> {
        let roots = br.roots()?;
        let field = PrimeField::try_for_order(num_integer::lcm(br.root_order()?, 2))?;
        Some(Coefficients {
            q: roots.map(|r| field.root(r)),
            roots: Some(roots),
        })
    }
}

impl<S: Scalar> Coefficients<S> {
    pub fn q11(&self) -> &S {
        &self.q[0]
    }
    pub fn q12(&self) -> &S {
        &self.q[1]
    }
    pub fn q21(&self) -> &S {
        &self.q[2]
    }
    pub fn q22(&self) -> &S {
        &self.q[3]
    }

    pub fn r(&self) -> S {
        self.q12().mul(self.q21())
    }

    fn int(&self, n: i64) -> S {
        self.q11().int(n)
    }

    pub fn chi(&self, x: MultiDegree, y: MultiDegree) -> S {
        let e = chi_exponents(x, y);
        match self.roots {
            Some(r) => {
                let root = r
                    .iter()
                    .zip(e)
                    .fold(RootOfUnity::one(), |acc, (q, k)| acc.mul(q.pow(k)));
                self.q11().root(root)
            }
            None => self
                .q
                .iter()
                .zip(e)
                .fold(self.int(1), |acc, (q, k)| acc.mul(&q.pow(k))),
        }
    }

    pub fn chi_inv(&self, x: MultiDegree, y: MultiDegree) -> S {
        match self.roots {
            Some(r) => {
                let root = r
                    .iter()
                    .zip(chi_exponents(x, y))
                    .fold(RootOfUnity::one(), |acc, (q, k)| acc.mul(q.pow(-k)));
                self.q11().root(root)
            }
            None => self.chi(x, y).inv(),
        }
    }

    /// b_i = ∏_{j<i} (1 − q11^j r).
    pub fn b(&self, i: usize) -> S {
        let r = self.r();
        (0..i).fold(self.int(1), |acc, j| {
            acc.mul(&self.int(1).sub(&self.q11().pow(j as i64).mul(&r)))
        })
    }

    /// c_i = ∏_{j<i} (1 − r q22^j).
    pub fn c(&self, i: usize) -> S {
        let r = self.r();
        (0..i).fold(self.int(1), |acc, j| {
            acc.mul(&self.int(1).sub(&r.mul(&self.q22().pow(j as i64))))
        })
    }

    /// b_i (i)!_{q11}; zero exactly when z_i = 0 in B(V).
    pub fn z_vanishing(&self, i: usize) -> S {
        self.b(i).mul(&q_fact(i, self.q11()))
    }

    /// c_i (i)!_{q22}; zero exactly when u_i = 0 in B(V).
    pub fn u_vanishing(&self, i: usize) -> S {
        self.c(i).mul(&q_fact(i, self.q22()))
    }

    /// χ(z_i, z_i) = q11^{i²} r^i q22.
    pub fn chi_zz(&self, i: usize) -> S {
        self.chi(deg_z(i), deg_z(i))
    }

    /// p_i = χ(z_i, z_i)⁻¹.
    pub fn p(&self, i: usize) -> S {
        self.chi_zz(i).inv()
    }

    /// P_i = ⟨ẑ_i, z_i⟩ = q21^{-i} b_i (i)!_{q11⁻¹}.
    pub fn pair_zz(&self, i: usize) -> S {
        self.q21()
            .pow(-(i as i64))
            .mul(&self.b(i))
            .mul(&q_fact(i, &self.q11().inv()))
    }

    fn d_head(&self, i: usize) -> S {
        let t = self.int(1).sub(&self.q11().pow(i as i64).mul(&self.r()));
        self.q21()
            .inv()
            .mul(&t)
            .mul(&q_int(i + 1, &self.q11().inv()))
    }

    /// d_{i,0} = q21⁻¹(1 − q11^i r)(i+1)_{q11⁻¹} + χ(z_i,z_{i+1})⁻¹ − χ(z_{i+1},z_i).
    pub fn d0(&self, i: usize) -> S {
        self.d_head(i)
            .add(&self.chi_inv(deg_z(i), deg_z(i + 1)))
            .sub(&self.chi(deg_z(i + 1), deg_z(i)))
    }

    /// d_{i,1} = q21⁻¹(1 − q11^i r)(i+1)_{q11⁻¹}
    ///   + (2)_{p_{i+1}}(χ(z_i,z_{i+1})⁻¹ − χ(z_{i+1},z_i)χ(z_{i+1},z_{i+1})).
    pub fn d1(&self, i: usize) -> S {
        let inner = self
            .chi_inv(deg_z(i), deg_z(i + 1))
            .sub(&self.chi(deg_z(i + 1), deg_z(i)).mul(&self.chi_zz(i + 1)));
        self.d_head(i)
            .add(&q_int(2, &self.p(i + 1)).mul(&inner))
    }

    /// Coefficient of z_i² in w_i: P_{i+1} / ((2)_{p_i} P_i).
    pub fn w_correction(&self, i: usize) -> Result<S, Degenerate> {
        let den = q_int(2, &self.p(i)).mul(&self.pair_zz(i));
        quot(&self.pair_zz(i + 1), &den, "(2)_{p_i} P_i")
    }

    /// λ with ⟨ẑ_{i−1}, w_i⟩ = λ z_{i+1}, for i ≥ 1 and z_{i+1} ≠ 0.
    pub fn w_lambda(&self, i: usize) -> Result<S, Degenerate> {
        let p = self.p(i);
        let q11 = self.q11();
        let q11inv = q11.inv();
        let lead = q11.mul(&p).sub(&self.int(1));
        let den = q_int(2, &q11inv).mul(&q_int(2, &p));
        let first = quot(&q11inv.mul(&self.pair_zz(i + 1)), &den, "(2)_{q11⁻¹}(2)_{p_i}")?;
        let second = self
            .q12()
            .mul(&self.q21().inv())
            .mul(&self.pair_zz(i - 1))
            .mul(&self.int(1).add(&q11inv.mul(&p.inv())));
        Ok(lead.mul(&first.add(&second)))
    }

    /// ⟨ẑ_{i+1} ẑ_{i−1}, w_i⟩ = λ P_{i+1}.
    pub fn w_pairing(&self, i: usize) -> Result<S, Degenerate> {
        Ok(self.w_lambda(i)?.mul(&self.pair_zz(i + 1)))
    }

    /// μ with ⟨y_2, w_1⟩ = μ z_2:
    /// q21⁻²(1 − r q22)(1 + q22⁻¹)(1 + q11 r² q22) / (1 + q11 r q22).
    pub fn y2_w1(&self) -> Result<S, Degenerate> {
        let one = self.int(1);
        let r = self.r();
        let (q11, q22) = (self.q11(), self.q22());
        let num = self
            .q21()
            .pow(-2)
            .mul(&one.sub(&r.mul(q22)))
            .mul(&one.add(&q22.inv()))
            .mul(&one.add(&q11.mul(&r).mul(&r).mul(q22)));
        quot(&num, &one.add(&q11.mul(&r).mul(q22)), "1 + q11 r q22")
    }

    /// d_{i,0} P_i, the coefficient of z_{i+1} in ⟨ẑ_i, z_{i,1}⟩.
    pub fn z1_pairing(&self, i: usize) -> S {
        self.d0(i).mul(&self.pair_zz(i))
    }

    /// d_{i,0} d_{i,1} P_i P_{i+1}, the coefficient of z_{i+1} in ⟨ẑ_{i+1}ẑ_i, z_{i,2}⟩.
    pub fn z2_norm(&self, i: usize) -> S {
        self.d0(i)
            .mul(&self.d1(i))
            .mul(&self.pair_zz(i))
            .mul(&self.pair_zz(i + 1))
    }

    /// Coefficient of z_i³ in s_i: d_{i,0} P_{i+1} / ((3)!_{p_i} P_i).
    pub fn s_correction(&self, i: usize) -> Result<S, Degenerate> {
        let den = q_fact(3, &self.p(i)).mul(&self.pair_zz(i));
        quot(&self.d0(i).mul(&self.pair_zz(i + 1)), &den, "(3)!_{p_i} P_i")
    }

    /// Coefficient of x_1² in ⟨ẑ_{i−1,1}, z_{i,1}⟩:
    /// d_{i−1,0} d_{i,0} P_i P_{i+1} / ((2)_{p_i} (2)_{q11⁻¹}).
    pub fn s_cross(&self, i: usize) -> Result<S, Degenerate> {
        let num = self
            .d0(i - 1)
            .mul(&self.d0(i))
            .mul(&self.pair_zz(i))
            .mul(&self.pair_zz(i + 1));
        let den = q_int(2, &self.p(i)).mul(&q_int(2, &self.q11().inv()));
        quot(&num, &den, "(2)_{p_i}(2)_{q11⁻¹}")
    }

    /// ⟨ẑ_{i,1} ẑ_{i−1}, s_i⟩ = d_{i−1,0} d_{i,0} P_i P_{i+1}² (1/((2)_{p_i}(2)_{q11⁻¹})
    ///   + χ(z_{i−1},z_{i+1})⁻¹ P_{i−1}/P_{i+1} − 1/(3)!_{p_i}).
    pub fn s_pairing(&self, i: usize) -> Result<S, Degenerate> {
        let one = self.int(1);
        let p = self.p(i);
        let pp = self.pair_zz(i + 1);
        let a = quot(
            &one,
            &q_int(2, &p).mul(&q_int(2, &self.q11().inv())),
            "(2)_{p_i}(2)_{q11⁻¹}",
        )?;
        let b = quot(
            &self
                .chi_inv(deg_z(i - 1), deg_z(i + 1))
                .mul(&self.pair_zz(i - 1)),
            &pp,
            "P_{i+1}",
        )?;
        let c = quot(&one, &q_fact(3, &p), "(3)!_{p_i}")?;
        Ok(self
            .d0(i - 1)
            .mul(&self.d0(i))
            .mul(&self.pair_zz(i))
            .mul(&pp)
            .mul(&pp)
            .mul(&a.add(&b).sub(&c)))
    }

    /// χ(z_{i,1}, z_{i,1}).
    pub fn chi_z1z1(&self, i: usize) -> S {
        self.chi(deg_z1(i), deg_z1(i))
    }

    /// Coefficient of z_{i,1}² in t_i: d_{i,1} / (1 + χ(z_{i,1},z_{i,1})⁻¹).
    pub fn t_correction(&self, i: usize) -> Result<S, Degenerate> {
        let den = self.int(1).add(&self.chi_z1z1(i).inv());
        quot(&self.d1(i), &den, "1 + χ(z_{i,1},z_{i,1})⁻¹")
    }

    /// τ with ⟨ẑ_i, t_i⟩ = τ z_{i,2}:
    /// P_i (d0 d1/(2)_{p_{i+1}} − d0 d1/(1 + χ(z_{i,1},z_{i,1})⁻¹) + χ(z_i,z_{i,2})⁻¹ − χ(z_{i,2},z_i)).
    pub fn t_pairing(&self, i: usize) -> Result<S, Degenerate> {
        let dd = self.d0(i).mul(&self.d1(i));
        let a = quot(&dd, &q_int(2, &self.p(i + 1)), "(2)_{p_{i+1}}")?;
        let b = quot(
            &dd,
            &self.int(1).add(&self.chi_z1z1(i).inv()),
            "1 + χ(z_{i,1},z_{i,1})⁻¹",
        )?;
        let c = self
            .chi_inv(deg_z(i), deg_z2(i))
            .sub(&self.chi(deg_z2(i), deg_z(i)));
        Ok(self.pair_zz(i).mul(&a.sub(&b).add(&c)))
    }
}

/// Zero tests for scalar formulas: a nonzero prime-field image settles the
/// question, anything else is evaluated exactly.
pub struct ScalarOracle {
    exact: Coefficients<CyclotomicNumber>,
    modular: Option<Coefficients<ModP>>,
}

impl ScalarOracle {
    pub fn new(br: &DiagonalBraiding) -> Self {
        ScalarOracle {
            exact: Coefficients::exact(br),
            modular: Coefficients::modular(br),
        }
    }

    pub fn exact(&self) -> &Coefficients<CyclotomicNumber> {
        &self.exact
    }

    pub fn modular(&self) -> Option<&Coefficients<ModP>> {
        self.modular.as_ref()
    }

    /// Whether a formula vanishes. `fast` and `slow` must be the same formula.
    pub fn is_zero(
        &self,
        fast: impl Fn(&Coefficients<ModP>) -> Result<ModP, Degenerate>,
        slow: impl Fn(&Coefficients<CyclotomicNumber>) -> Result<CyclotomicNumber, Degenerate>,
    ) -> Result<bool, Degenerate> {
        if let Some(m) = &self.modular {
            if let Ok(v) = fast(m) {
                if v.zero_status() == Some(false) {
                    return Ok(false);
                }
            }
        }
        slow(&self.exact).map(|v| v.is_zero())
    }
}

/// Zero test of a scalar formula written once for both coefficient fields.
#[macro_export]
macro_rules! scalar_is_zero {
    ($oracle:expr, |$c:ident| $body:expr) => {
        $oracle.is_zero(|$c| $body, |$c| $body)
    };
}

/// Exact values of the basic scalars at one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarRecord {
    pub b: CyclotomicNumber,
    pub c: CyclotomicNumber,
    pub p: CyclotomicNumber,
    pub d0: CyclotomicNumber,
    pub d1: CyclotomicNumber,
    pub pair_zz: CyclotomicNumber,
}

/// Root vectors of one braiding with their caches.
pub struct RootVectorContext {
    braiding: Arc<DiagonalBraiding>,
    i_max: usize,
    oracle: ScalarOracle,
    z_cache: Vec<TensorElement>,
    u_cache: Vec<TensorElement>,
    scalar_cache: HashMap<usize, ScalarRecord>,
}

impl RootVectorContext {
    pub fn new(br: &Arc<DiagonalBraiding>) -> Self {
        Self::with_cap(br, DEFAULT_I_MAX)
    }

    pub fn with_cap(br: &Arc<DiagonalBraiding>, i_max: usize) -> Self {
        RootVectorContext {
            braiding: br.clone(),
            i_max,
            oracle: ScalarOracle::new(br),
            z_cache: vec![TensorElement::generator(br, 2)],
            u_cache: vec![TensorElement::generator(br, 1)],
            scalar_cache: HashMap::new(),
        }
    }

    pub fn braiding(&self) -> &Arc<DiagonalBraiding> {
        &self.braiding
    }

    pub fn i_max(&self) -> usize {
        self.i_max
    }

    pub fn oracle(&self) -> &ScalarOracle {
        &self.oracle
    }

    pub fn coefficients(&self) -> &Coefficients<CyclotomicNumber> {
        &self.oracle.exact
    }

    fn check(&self, i: usize) -> Result<(), RootVectorError> {
        if i > self.i_max {
            return Err(RootVectorError::IndexCap {
                index: i,
                cap: self.i_max,
            });
        }
        Ok(())
    }

    /// z_0 = x_2, z_{i+1} = x_1 z_i − q11^i q12 z_i x_1.
    pub fn z(&mut self, i: usize) -> Result<TensorElement, RootVectorError> {
        self.check(i)?;
        let br = self.braiding.clone();
        let x1 = TensorElement::generator(&br, 1);
        while self.z_cache.len() <= i {
            let k = self.z_cache.len() - 1;
            let zk = &self.z_cache[k];
            let c = &br.q11().pow(k as i64) * br.q12();
            let next = &(&x1 * zk) - &(zk * &x1).scale(&c);
            self.z_cache.push(next);
        }
        Ok(self.z_cache[i].clone())
    }

    /// u_0 = x_1, u_{i+1} = u_i x_2 − q12 q22^i x_2 u_i.
    pub fn u(&mut self, i: usize) -> Result<TensorElement, RootVectorError> {
        self.check(i)?;
        let br = self.braiding.clone();
        let x2 = TensorElement::generator(&br, 2);
        while self.u_cache.len() <= i {
            let k = self.u_cache.len() - 1;
            let uk = &self.u_cache[k];
            let c = br.q12() * &br.q22().pow(k as i64);
            let next = &(uk * &x2) - &(&x2 * uk).scale(&c);
            self.u_cache.push(next);
        }
        Ok(self.u_cache[i].clone())
    }

    pub fn scalars(&mut self, i: usize) -> ScalarRecord {
        let c = &self.oracle.exact;
        self.scalar_cache
            .entry(i)
            .or_insert_with(|| ScalarRecord {
                b: c.b(i),
                c: c.c(i),
                p: c.p(i),
                d0: c.d0(i),
                d1: c.d1(i),
                pair_zz: c.pair_zz(i),
            })
            .clone()
    }

    /// z_i = 0 in B(V), read off from b_i (i)!_{q11}.
    pub fn z_is_zero(&self, i: usize) -> bool {
        self.oracle.exact.z_vanishing(i).is_zero()
    }

    /// u_i = 0 in B(V), read off from c_i (i)!_{q22}.
    pub fn u_is_zero(&self, i: usize) -> bool {
        self.oracle.exact.u_vanishing(i).is_zero()
    }

    fn chi(&self, x: MultiDegree, y: MultiDegree) -> CyclotomicNumber {
        self.braiding.chi(x, y)
    }

    fn commutator(&self, a: &TensorElement, da: MultiDegree, b: &TensorElement, db: MultiDegree) -> TensorElement {
        &(a * b) - &(b * a).scale(&self.chi(da, db))
    }

    fn degenerate(element: &'static str, index: usize, d: Degenerate) -> RootVectorError {
        RootVectorError::DegenerateDenominator {
            element,
            index,
            reason: d.0,
        }
    }

    /// w_i = z_{i+1}z_{i−1} − χ(z_{i+1},z_{i−1}) z_{i−1}z_{i+1} − P_{i+1}/((2)_{p_i}P_i) z_i²,
    /// and w_i = 0 when z_{i+1} = 0.
    pub fn w(&mut self, i: usize) -> Result<TensorElement, RootVectorError> {
        if i == 0 {
            return Err(RootVectorError::IndexZero { element: "w" });
        }
        self.check(i + 1)?;
        if self.z_is_zero(i + 1) {
            return Ok(TensorElement::zero(&self.braiding));
        }
        let corr = self
            .oracle
            .exact
            .w_correction(i)
            .map_err(|d| Self::degenerate("w", i, d))?;
        let (zp, zm, zi) = (self.z(i + 1)?, self.z(i - 1)?, self.z(i)?);
        let head = self.commutator(&zp, deg_z(i + 1), &zm, deg_z(i - 1));
        Ok(&head - &(&zi * &zi).scale(&corr))
    }

    /// z_{i,1} = z_{i+1} z_i − χ(z_{i+1}, z_i) z_i z_{i+1}.
    pub fn z1(&mut self, i: usize) -> Result<TensorElement, RootVectorError> {
        self.check(i + 1)?;
        let (zp, zi) = (self.z(i + 1)?, self.z(i)?);
        Ok(self.commutator(&zp, deg_z(i + 1), &zi, deg_z(i)))
    }

    /// z_{i,2} = z_{i+1} z_{i,1} − χ(z_{i+1}, z_{i,1}) z_{i,1} z_{i+1}.
    pub fn z2(&mut self, i: usize) -> Result<TensorElement, RootVectorError> {
        let (zp, z1) = (self.z(i + 1)?, self.z1(i)?);
        Ok(self.commutator(&zp, deg_z(i + 1), &z1, deg_z1(i)))
    }

    /// s_i = z_{i,1}z_{i−1} − χ(z_{i,1},z_{i−1}) z_{i−1}z_{i,1} − d_{i,0}P_{i+1}/((3)!_{p_i}P_i) z_i³,
    /// and s_i = 0 when z_{i,1} = 0.
    pub fn s(&mut self, i: usize) -> Result<TensorElement, RootVectorError> {
        if i == 0 {
            return Err(RootVectorError::IndexZero { element: "s" });
        }
        let z1 = self.z1(i)?;
        if is_zero_in_nichols(&z1)? {
            return Ok(TensorElement::zero(&self.braiding));
        }
        let corr = self
            .oracle
            .exact
            .s_correction(i)
            .map_err(|d| Self::degenerate("s", i, d))?;
        let (zm, zi) = (self.z(i - 1)?, self.z(i)?);
        let head = self.commutator(&z1, deg_z1(i), &zm, deg_z(i - 1));
        Ok(&head - &(&(&zi * &zi) * &zi).scale(&corr))
    }

    /// t_i = z_{i,2}z_i − χ(z_{i,2},z_i) z_iz_{i,2} − d_{i,1}/(1 + χ(z_{i,1},z_{i,1})⁻¹) z_{i,1}²,
    /// and t_i = 0 when z_{i,2} = 0.
    pub fn t(&mut self, i: usize) -> Result<TensorElement, RootVectorError> {
        let z2 = self.z2(i)?;
        if is_zero_in_nichols(&z2)? {
            return Ok(TensorElement::zero(&self.braiding));
        }
        let corr = self
            .oracle
            .exact
            .t_correction(i)
            .map_err(|d| Self::degenerate("t", i, d))?;
        let (zi, z1) = (self.z(i)?, self.z1(i)?);
        let head = self.commutator(&z2, deg_z2(i), &zi, deg_z(i));
        Ok(&head - &(&z1 * &z1).scale(&corr))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{pair, pair_element, Word};

    fn br(q11: (i64, u32), q12: (i64, u32), q21: (i64, u32), q22: (i64, u32)) -> Arc<DiagonalBraiding> {
        let r = |(k, n): (i64, u32)| RootOfUnity::new(k, n);
        Arc::new(DiagonalBraiding::from_roots(r(q11), r(q12), r(q21), r(q22)))
    }

    #[test]
    fn first_vectors() {
        let b = br((1, 5), (2, 7), (1, 3), (1, 4));
        let mut ctx = RootVectorContext::new(&b);
        let x1 = TensorElement::generator(&b, 1);
        let x2 = TensorElement::generator(&b, 2);
        let x21 = &(&x1 * &x2) - &(&x2 * &x1).scale(b.q12());
        assert_eq!(ctx.z(0).unwrap(), x2);
        assert_eq!(ctx.z(1).unwrap(), x21);
        assert_eq!(ctx.u(1).unwrap(), x21);
        assert_eq!(
            ctx.z(17),
            Err(RootVectorError::IndexCap { index: 17, cap: 16 })
        );
    }

    #[test]
    fn pairing_with_z_hat() {
        let b = br((1, 7), (2, 5), (1, 3), (3, 8));
        let mut ctx = RootVectorContext::new(&b);
        let c = Coefficients::exact(&b);
        for i in 0..=4usize {
            let zi = ctx.z(i).unwrap();
            let p = pair_element(&zi, &zi);
            assert_eq!(p.as_scalar().unwrap(), c.pair_zz(i), "i = {i}");
            let mut w = vec![1u8; i];
            w.push(2);
            let q = pair(&Word::new(w).unwrap(), &zi);
            assert_eq!(q.as_scalar().unwrap(), c.pair_zz(i));
        }
    }

    #[test]
    fn modular_matches_exact() {
        let b = br((1, 9), (2, 5), (1, 3), (3, 8));
        let e = Coefficients::exact(&b);
        let m = Coefficients::modular(&b).unwrap();
        let field = PrimeField::for_order(num_integer::lcm(b.root_order().unwrap(), 2));
        for i in 1..=4 {
            assert_eq!(field.image(&e.d0(i)).value(), m.d0(i).value());
            assert_eq!(field.image(&e.d1(i)).value(), m.d1(i).value());
            assert_eq!(
                field.image(&e.w_lambda(i).unwrap()).value(),
                m.w_lambda(i).unwrap().value()
            );
        }
    }
}
