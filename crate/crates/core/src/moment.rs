//! Combinatorial moment matrices indexed by class representatives.

use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::basis::RepresentativeBasis;
use crate::error::{Error, Result};
use crate::gf2::Subset;
use crate::matroid::BinaryMatroid;

/// Symbolic matrix `M(y)` with `M(y)[i][j] = y[var(i, j)]`.
#[derive(Clone, Debug)]
pub struct MomentTemplate {
    basis: RepresentativeBasis,
    side: usize,
    var_of: Vec<usize>,
    degree1: Vec<Option<usize>>,
}

/// `M(y) = Σ_v y_v E_v`; `positions[v]` lists the upper-triangle entries of `E_v`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityData {
    pub side: usize,
    pub nvars: usize,
    pub positions: Vec<Vec<(usize, usize)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateExport {
    pub k: usize,
    pub m: usize,
    pub nvars: usize,
    pub index_set: Vec<Vec<usize>>,
    pub triplets: Vec<(usize, usize, usize)>,
}

impl MomentTemplate {
    /// Fails on coloops and coparallel pairs; see [`Reduction`].
    pub fn build(matroid: &BinaryMatroid, k: usize) -> Result<MomentTemplate> {
        let classes = matroid.classify_elements();
        if let Some(&e) = classes.coloops.first() {
            return Err(Error::Coloop(e));
        }
        if let Some(&(e, f)) = classes.coparallel.first() {
            return Err(Error::Coparallel(e, f));
        }
        let basis = RepresentativeBasis::build(matroid, k)?;
        let table = basis.multiplication_table();
        let side = table.len();
        let var_of = table.into_iter().flatten().collect();
        let degree1 = (0..matroid.m())
            .map(|e| basis.class_of(Subset::singleton(e)).ok())
            .collect();
        Ok(MomentTemplate {
            basis,
            side,
            var_of,
            degree1,
        })
    }

    pub fn basis(&self) -> &RepresentativeBasis {
        &self.basis
    }

    pub fn matroid(&self) -> &BinaryMatroid {
        self.basis.matroid()
    }

    pub fn k(&self) -> usize {
        self.basis.k()
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn nvars(&self) -> usize {
        self.basis.reps_2k().len()
    }

    pub fn var(&self, i: usize, j: usize) -> usize {
        self.var_of[i * self.side + j]
    }

    /// Row-major `side × side` variable indices.
    pub fn var_matrix(&self) -> &[usize] {
        &self.var_of
    }

    /// Variable of the class of `{e}`; absent only at level 0.
    pub fn degree1_var(&self, e: usize) -> Option<usize> {
        self.degree1.get(e).copied().flatten()
    }

    pub fn evaluate(&self, y: &[f64]) -> Result<Mat<f64>> {
        if y.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                got: y.len(),
            });
        }
        Ok(Mat::from_fn(self.side, self.side, |i, j| y[self.var(i, j)]))
    }

    /// `y[i] = (-1)^{|C ∩ F_i|}` over `F_2k`.
    pub fn lift_cycle_vector(&self, cycle: Subset) -> Result<Vec<f64>> {
        if !self.matroid().is_cycle(cycle) {
            return Err(Error::NotACycle(cycle.bits()));
        }
        Ok(self
            .basis
            .reps_2k()
            .iter()
            .map(|r| if cycle.dot(*r) { -1.0 } else { 1.0 })
            .collect())
    }

    pub fn feasibility_data(&self) -> FeasibilityData {
        let mut positions = vec![Vec::new(); self.nvars()];
        for i in 0..self.side {
            for j in i..self.side {
                positions[self.var(i, j)].push((i, j));
            }
        }
        FeasibilityData {
            side: self.side,
            nvars: self.nvars(),
            positions,
        }
    }

    pub fn export(&self) -> TemplateExport {
        let mut triplets = Vec::with_capacity(self.side * (self.side + 1) / 2);
        for i in 0..self.side {
            for j in i..self.side {
                triplets.push((i, j, self.var(i, j)));
            }
        }
        TemplateExport {
            k: self.k(),
            m: self.matroid().m(),
            nvars: self.nvars(),
            index_set: self.basis.reps_k().iter().map(|r| r.to_vec()).collect(),
            triplets,
        }
    }
}

/// Where an original element went after reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum Image {
    /// Coloop: `x_e = 1` on every cycle.
    One,
    /// `x_e` equals coordinate `i` of the reduced matroid.
    Element(usize),
}

/// Removes coloops (fixed at `x_e = 1`) and contracts one element of each
/// coparallel pair (`x_f = x_e`), keeping the map back to the original.
#[derive(Clone, Debug)]
pub struct Reduction {
    original: BinaryMatroid,
    reduced: BinaryMatroid,
    images: Vec<Image>,
}

impl Reduction {
    pub fn new(matroid: &BinaryMatroid) -> Reduction {
        let mut current = matroid.clone();
        let mut images: Vec<Image> = (0..matroid.m()).map(Image::Element).collect();
        loop {
            let classes = current.classify_elements();
            let (removed, target) = if let Some(&e) = classes.coloops.first() {
                (e, None)
            } else if let Some(&(e, f)) = classes.coparallel.first() {
                (f, Some(e))
            } else {
                break;
            };
            current = match target {
                None => current.delete(removed),
                Some(_) => current.contract(removed),
            }
            .expect("element in range");
            for img in images.iter_mut() {
                if let Image::Element(i) = *img {
                    *img = if i == removed {
                        match target {
                            None => Image::One,
                            Some(e) => Image::Element(e),
                        }
                    } else if i > removed {
                        Image::Element(i - 1)
                    } else {
                        Image::Element(i)
                    };
                }
            }
        }
        Reduction {
            original: matroid.clone(),
            reduced: current,
            images,
        }
    }

    pub fn original(&self) -> &BinaryMatroid {
        &self.original
    }

    pub fn reduced(&self) -> &BinaryMatroid {
        &self.reduced
    }

    pub fn images(&self) -> &[Image] {
        &self.images
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().enumerate().all(|(e, img)| *img == Image::Element(e))
    }

    /// Rewrites `c_0 + Σ c_e x_e` over the reduced ground set.
    pub fn reduce_objective(&self, coefficients: &[f64], constant: f64) -> Result<(Vec<f64>, f64)> {
        if coefficients.len() != self.images.len() {
            return Err(Error::DimensionMismatch {
                expected: self.images.len(),
                got: coefficients.len(),
            });
        }
        let mut out = vec![0.0; self.reduced.m()];
        let mut c0 = constant;
        for (c, img) in coefficients.iter().zip(&self.images) {
            match *img {
                Image::One => c0 += c,
                Image::Element(i) => out[i] += c,
            }
        }
        Ok((out, c0))
    }

    /// Original coordinates from reduced ones.
    pub fn lift_point(&self, x: &[f64]) -> Vec<f64> {
        self.images
            .iter()
            .map(|img| match *img {
                Image::One => 1.0,
                Image::Element(i) => x[i],
            })
            .collect()
    }

    /// The original cycle restricting to the reduced cycle `c`.
    pub fn lift_cycle(&self, c: Subset) -> Subset {
        Subset::from_elements(self.images.iter().enumerate().filter_map(|(e, img)| match *img {
            Image::Element(i) if c.contains(i) => Some(e),
            _ => None,
        }))
    }
}
