//! Chains of trivialized bundles with connections and the connection they
//! induce on `E_0 × Δ^n`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::forms::{Form, GeneratorSet, MatrixForm};
use crate::scalar::{RationalFunction, Q};
use crate::simplex::{simplex_coord, Subcell};

/// `E_0 --f_1--> E_1 --f_2--> … --f_n--> E_n`, with connection matrices `A_j`.
#[derive(Clone, Debug)]
pub struct NerveElement {
    gens: Arc<GeneratorSet>,
    rank: usize,
    connections: Vec<MatrixForm>,
    maps: Vec<MatrixForm>,
}

impl NerveElement {
    pub fn new(connections: Vec<MatrixForm>, maps: Vec<MatrixForm>) -> Result<Self> {
        let first = connections
            .first()
            .ok_or_else(|| Error::InvalidArgument("nerve element needs a connection".into()))?;
        let gens = first.generators().clone();
        let rank = first.rank();
        if maps.len() + 1 != connections.len() {
            return Err(Error::InvalidArgument(format!(
                "{} connections but {} maps",
                connections.len(),
                maps.len()
            )));
        }
        for a in connections.iter() {
            if a.rank() != rank {
                return Err(Error::Rank(rank, a.rank()));
            }
            if **a.generators() != *gens {
                return Err(Error::GeneratorMismatch);
            }
            a.clone().expect_degree(1)?;
        }
        for f in maps.iter() {
            if f.rank() != rank {
                return Err(Error::Rank(rank, f.rank()));
            }
            if **f.generators() != *gens {
                return Err(Error::GeneratorMismatch);
            }
            if f.determinant()?.is_zero() {
                return Err(Error::Singular);
            }
        }
        Ok(NerveElement { gens, rank, connections, maps })
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn connection(&self, j: usize) -> &MatrixForm {
        &self.connections[j]
    }

    /// `f_j` for `1 ≤ j ≤ n`.
    pub fn map(&self, j: usize) -> &MatrixForm {
        &self.maps[j - 1]
    }

    /// `f_j ⋯ f_1`.
    pub fn composite(&self, j: usize) -> MatrixForm {
        let mut f = MatrixForm::identity(self.rank, &self.gens);
        for k in 1..=j {
            f = self.map(k).mul(&f);
        }
        f
    }

    /// The sub-chain through the vertices of `c`, with composed maps.
    pub fn restrict(&self, c: &Subcell) -> NerveElement {
        let v = c.vertices();
        let connections = v.iter().map(|&i| self.connections[i].clone()).collect();
        let maps = v
            .windows(2)
            .map(|w| {
                let mut f = MatrixForm::identity(self.rank, &self.gens);
                for k in w[0] + 1..=w[1] {
                    f = self.map(k).mul(&f);
                }
                f
            })
            .collect();
        NerveElement { gens: self.gens.clone(), rank: self.rank, connections, maps }
    }
}

/// `∇(f) = f∘∇_src - ∇_dst∘f = f A_src - A_dst f - df`.
pub fn covariant_derivative(f: &MatrixForm, a_src: &MatrixForm, a_dst: &MatrixForm) -> MatrixForm {
    f.mul(a_src).sub(&a_dst.mul(f)).sub(&f.d())
}

/// `A_{Δ,j} = F⁻¹ A_j F + F⁻¹ dF` with `F = f_j ⋯ f_1`.
pub fn transferred_connection(e: &NerveElement, j: usize) -> Result<MatrixForm> {
    if j > e.len() {
        return Err(Error::Index(format!("vertex {} of a length-{} chain", j, e.len())));
    }
    if j == 0 {
        return Ok(e.connection(0).clone());
    }
    let f = e.composite(j);
    let finv = f.inverse()?;
    Ok(finv.mul(&e.connection(j).mul(&f)).add(&finv.mul(&f.d())))
}

/// `θ_j = P⁻¹ f_j⁻¹ ∇(f_j) P` with `P = f_{j-1} ⋯ f_1`.
pub fn maurer_cartan(e: &NerveElement, j: usize) -> Result<MatrixForm> {
    if j == 0 || j > e.len() {
        return Err(Error::Index(format!("Maurer–Cartan form {} of a length-{} chain", j, e.len())));
    }
    let p = e.composite(j - 1);
    let f = e.map(j);
    let nabla = covariant_derivative(f, e.connection(j - 1), e.connection(j));
    let inner = f.inverse()?.mul(&nabla);
    Ok(p.inverse()?.mul(&inner.mul(&p)))
}

/// Transferred connections, Maurer–Cartan forms and vertex curvatures.
#[derive(Clone, Debug)]
pub struct SimplexConnectionData {
    pub transferred: Vec<MatrixForm>,
    pub thetas: Vec<MatrixForm>,
    pub curvatures: Vec<MatrixForm>,
}

impl SimplexConnectionData {
    pub fn new(e: &NerveElement) -> Result<Self> {
        let transferred = (0..=e.len())
            .map(|j| transferred_connection(e, j))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_transferred(transferred))
    }

    pub fn from_transferred(transferred: Vec<MatrixForm>) -> Self {
        let thetas = transferred.windows(2).map(|w| w[0].sub(&w[1])).collect();
        let curvatures = transferred.iter().map(curvature_direct).collect();
        SimplexConnectionData { transferred, thetas, curvatures }
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.transferred[0].rank()
    }

    pub fn generators(&self) -> &Arc<GeneratorSet> {
        self.transferred[0].generators()
    }

    /// `θ_j`, 1-based.
    pub fn theta(&self, j: usize) -> &MatrixForm {
        &self.thetas[j - 1]
    }
}

/// `A_Δ = A_{Δ,n} + Σ_j t_j θ_j` over `base × Δ^n`.
pub fn simplex_connection(e: &NerveElement) -> Result<MatrixForm> {
    let data = SimplexConnectionData::new(e)?;
    simplex_connection_from(&data)
}

pub fn simplex_connection_from(data: &SimplexConnectionData) -> Result<MatrixForm> {
    let n = data.len();
    let ext = data.generators().with_simplex(n);
    let mut a = data.transferred[n].with_generators(&ext)?;
    for j in 1..=n {
        let tj = RationalFunction::var(simplex_coord(j));
        a = a.add(&data.theta(j).with_generators(&ext)?.mul_function(&tj));
    }
    Ok(a)
}

/// `R = dA + A·A`.
pub fn curvature_direct(a: &MatrixForm) -> MatrixForm {
    a.d().add(&a.mul(a))
}

/// Closed formula for the curvature of `A_Δ` in terms of the `θ_j` and `R_{Δ,j}`.
pub fn curvature_formula(data: &SimplexConnectionData) -> Result<MatrixForm> {
    let n = data.len();
    let ext = data.generators().with_simplex(n);
    let r = data.rank();
    let t = |k: usize| -> RationalFunction {
        if k == 0 {
            RationalFunction::zero()
        } else if k == n + 1 {
            RationalFunction::one()
        } else {
            RationalFunction::var(simplex_coord(k))
        }
    };
    let thetas = data
        .thetas
        .iter()
        .map(|m| m.with_generators(&ext))
        .collect::<Result<Vec<_>>>()?;
    let base = data.generators().len();
    let mut out = MatrixForm::zero(r, &ext);
    for j in 1..=n {
        let dt = Form::generator(&ext, base + j - 1);
        out = out.add(&thetas[j - 1].left_wedge(&dt));
    }
    for i in 1..=n {
        for j in 1..=n {
            let c = t(i).mul(&t(j)).sub(&t(i.min(j)));
            if c.is_zero() {
                continue;
            }
            out = out.add(&thetas[i - 1].mul(&thetas[j - 1]).mul_function(&c));
        }
    }
    for j in 0..=n {
        let c = t(j + 1).sub(&t(j));
        let rj = data.curvatures[j].with_generators(&ext)?;
        out = out.add(&rj.mul_function(&c));
    }
    Ok(out)
}

/// Data of the sub-chain through the vertices of `c`, in the subcell's own coordinates.
pub fn restrict_to_subcell(data: &SimplexConnectionData, c: &Subcell) -> SimplexConnectionData {
    let v = c.vertices();
    let transferred = v.iter().map(|&i| data.transferred[i].clone()).collect();
    let curvatures = v.iter().map(|&i| data.curvatures[i].clone()).collect();
    let thetas = v
        .windows(2)
        .map(|w| {
            let mut acc = data.theta(w[0] + 1).clone();
            for k in w[0] + 2..=w[1] {
                acc = acc.add(data.theta(k));
            }
            acc
        })
        .collect();
    SimplexConnectionData { transferred, thetas, curvatures }
}

/// Conjugates every matrix by a constant invertible `h`: `h⁻¹ M h`.
pub fn conjugate(m: &MatrixForm, h: &MatrixForm, hinv: &MatrixForm) -> MatrixForm {
    hinv.mul(&m.mul(h))
}

/// Scalar form `Σ c_k x_k` convenience for tests.
pub fn constant_matrix(rank: usize, gens: &Arc<GeneratorSet>, entries: &[i64]) -> Result<MatrixForm> {
    MatrixForm::from_functions(
        rank,
        gens,
        entries.iter().map(|&v| RationalFunction::constant(Q::from_integer(v))).collect(),
    )
}
