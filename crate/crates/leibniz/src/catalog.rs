//! Built-in test algebras and modules: `sl2` with Chevalley-style integer
//! structure constants, its irreducibles `V(m)` in the weight basis, and the
//! hemisemidirect product `g (+) V` with bracket `[(x,u),(y,w)] = ([x,y], x.w)`,
//! the standard source of simple non-Lie Leibniz algebras.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::algebra::{LeibnizAlgebra, LieAlgebra};
use crate::bimodule::LieModule;
use crate::error::Error;
use crate::exactlin::{sc, Mat, Scalar};

/// Guard limits for catalog constructions.
pub const MAX_WEIGHT: usize = 10;
pub const MAX_TOTAL_DIM: usize = 20;

/// `sl2` in the basis `(e, h, f)`: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2() -> LieAlgebra {
    let mut c = vec![vec![vec![Scalar::zero(); 3]; 3]; 3];
    let (e, h, f) = (0usize, 1usize, 2usize);
    c[h][e][e] = sc(2);
    c[e][h][e] = sc(-2);
    c[h][f][f] = sc(-2);
    c[f][h][f] = sc(2);
    c[e][f][h] = sc(1);
    c[f][e][h] = sc(-1);
    let alg = LeibnizAlgebra::new(vec!["e".into(), "h".into(), "f".into()], c)
        .expect("sl2 satisfies the Leibniz identity");
    LieAlgebra::new(alg).expect("sl2 bracket is antisymmetric")
}

/// The irreducible `sl2`-module `V(m)` of dimension `m + 1` in the weight
/// basis `v_0, ..., v_m`: `h.v_j = (m - 2j) v_j`, `e.v_j = (m - j + 1) v_{j-1}`,
/// `f.v_j = (j + 1) v_{j+1}`. All entries are integers.
pub fn sl2_irrep(m: usize) -> Result<LieModule, Error> {
    if m > MAX_WEIGHT {
        return Err(Error::Guard(format!(
            "irreducible weight {m} exceeds the catalog limit {MAX_WEIGHT}"
        )));
    }
    let dim = m + 1;
    let mi = m as i64;
    let mut rho_e = Mat::zeros(dim, dim);
    let mut rho_h = Mat::zeros(dim, dim);
    let mut rho_f = Mat::zeros(dim, dim);
    for j in 0..dim {
        let ji = j as i64;
        rho_h.set(j, j, sc(mi - 2 * ji));
        if j >= 1 {
            rho_e.set(j - 1, j, sc(mi - ji + 1));
        }
        if j + 1 < dim {
            rho_f.set(j + 1, j, sc(ji + 1));
        }
    }
    LieModule::new(sl2(), vec![rho_e, rho_h, rho_f])
}

/// The hemisemidirect product of a Lie algebra `g` with a left `g`-module
/// `v`: the space `g (+) V` with bracket `[(x,u),(y,w)] = ([x,y], x.w)`.
/// For nontrivial simple `v` the Leibniz kernel is exactly the `V` summand.
pub fn hemisemidirect(g: &LieAlgebra, v: &LieModule) -> Result<LeibnizAlgebra, Error> {
    if !v.algebra().same_structure(g) {
        return Err(Error::InvalidModule(
            "hemisemidirect: module is not over the given Lie algebra".into(),
        ));
    }
    let gd = g.dim();
    let vd = v.dim();
    let n = gd + vd;
    if n > MAX_TOTAL_DIM {
        return Err(Error::Guard(format!(
            "hemisemidirect dimension {n} exceeds the catalog limit {MAX_TOTAL_DIM}"
        )));
    }
    let mut c = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for i in 0..gd {
        for j in 0..gd {
            for k in 0..gd {
                c[i][j][k] = g.structure_constant(i, j, k).clone();
            }
        }
        for (a, b, val) in v.rho()[i].iter() {
            c[i][gd + b][gd + a] = val.clone();
        }
    }
    let mut labels: Vec<String> = g.labels().to_vec();
    labels.extend((0..vd).map(|b| format!("m{b}")));
    LeibnizAlgebra::new(labels, c)
}

/// `hemisemidirect(sl2, V(m))`.
pub fn hemi_sl2(m: usize) -> Result<LeibnizAlgebra, Error> {
    hemisemidirect(&sl2(), &sl2_irrep(m)?)
}

/// Parseable names for catalog objects: `sl2`, `V:3`, `hemi:sl2:V1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogSpec {
    Sl2,
    Irrep(usize),
    HemiSl2(usize),
}

impl FromStr for CatalogSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "sl2" {
            return Ok(CatalogSpec::Sl2);
        }
        if let Some(rest) = s.strip_prefix("V:") {
            let m: usize = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad irreducible weight in '{s}'")))?;
            return Ok(CatalogSpec::Irrep(m));
        }
        if let Some(rest) = s.strip_prefix("hemi:sl2:V") {
            let m: usize = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad hemisemidirect weight in '{s}'")))?;
            return Ok(CatalogSpec::HemiSl2(m));
        }
        Err(Error::Parse(format!("unknown catalog name '{s}'")))
    }
}

impl fmt::Display for CatalogSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogSpec::Sl2 => write!(f, "sl2"),
            CatalogSpec::Irrep(m) => write!(f, "V:{m}"),
            CatalogSpec::HemiSl2(m) => write!(f, "hemi:sl2:V{m}"),
        }
    }
}

impl CatalogSpec {
    /// Builds the algebra named by this spec; `V:m` is not an algebra.
    pub fn build_algebra(&self) -> Result<LeibnizAlgebra, Error> {
        match self {
            CatalogSpec::Sl2 => Ok((*sl2()).clone()),
            CatalogSpec::HemiSl2(m) => hemi_sl2(*m),
            CatalogSpec::Irrep(_) => Err(Error::Parse(
                "a module name was given where an algebra is expected".into(),
            )),
        }
    }
}
