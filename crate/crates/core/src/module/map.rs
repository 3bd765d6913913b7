use crate::error::{Error, Result};
use crate::gf2::SparseMatrix;
use crate::grading::GradedSubspace;

use super::GradedModule;

/// An `H`-linear map raising degree by `shift`.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: GradedModule,
    target: GradedModule,
    matrix: SparseMatrix,
    shift: i32,
}

impl ModuleMap {
    /// Checks shape, degree and equivariance on generators.
    pub fn new(
        source: GradedModule,
        target: GradedModule,
        matrix: SparseMatrix,
        shift: i32,
    ) -> Result<Self> {
        source.same_algebra(&target)?;
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::InvalidMap("matrix of the wrong shape".into()));
        }
        if let Some((r, c)) = matrix
            .entries()
            .find(|&(r, c)| target.degree(r as usize) != source.degree(c as usize) + shift)
        {
            return Err(Error::InvalidMap(format!(
                "{} does not land in degree {}",
                source.names()[c as usize],
                target.degree(r as usize) - shift
            )));
        }
        for (gs, gt) in source.generator_actions().iter().zip(target.generator_actions()) {
            if matrix.compose(gs) != gt.compose(&matrix) {
                return Err(Error::InvalidMap("map does not commute with the action".into()));
            }
        }
        Ok(ModuleMap {
            source,
            target,
            matrix,
            shift,
        })
    }

    pub fn identity(m: &GradedModule) -> Self {
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            matrix: SparseMatrix::identity(m.dim()),
            shift: 0,
        }
    }

    pub fn source(&self) -> &GradedModule {
        &self.source
    }

    pub fn target(&self) -> &GradedModule {
        &self.target
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn compose(&self, after: &ModuleMap) -> Result<ModuleMap> {
        if after.source.dim() != self.target.dim() {
            return Err(Error::InvalidMap("maps are not composable".into()));
        }
        Ok(ModuleMap {
            source: self.source.clone(),
            target: after.target.clone(),
            matrix: after.matrix.compose(&self.matrix),
            shift: self.shift + after.shift,
        })
    }

    pub fn kernel(&self) -> GradedSubspace {
        let mut kernel = GradedSubspace::new(self.source.grading());
        // Per source degree: eliminate images, tracking preimages.
        for b in self.source.grading().blocks() {
            let mut rows: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
            for j in b.range.clone() {
                let mut img = self.matrix.column(j).to_vec();
                let mut pre = vec![j as u32];
                while let Some((i, p)) = img.last().and_then(|top| rows.iter().find(|(i, _)| i.last() == Some(top))) {
                    img = crate::gf2::sparse_add(&img, i);
                    pre = crate::gf2::sparse_add(&pre, p);
                }
                if img.is_empty() {
                    kernel.insert(&pre);
                } else {
                    rows.push((img, pre));
                }
            }
        }
        kernel
    }

    pub fn image(&self) -> GradedSubspace {
        let mut image = GradedSubspace::new(self.target.grading());
        for j in 0..self.source.dim() {
            image.insert(self.matrix.column(j));
        }
        image
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile;
    use crate::registry::algebra;

    #[test]
    fn multiplication_by_sq1_on_free_module() {
        let h = algebra(&profile::e(0)).unwrap();
        let f = GradedModule::free(&h, &[0]);
        let m = SparseMatrix::from_columns(2, &[vec![1u32], vec![]]);
        let map = ModuleMap::new(f.clone(), f.clone(), m, 1).unwrap();
        assert_eq!(map.kernel().dim(), 1);
        assert_eq!(map.image().dim(), 1);
        let id = ModuleMap::identity(&f);
        assert_eq!(id.kernel().dim(), 0);
        assert_eq!(map.compose(&ModuleMap::identity(map.target())).unwrap().image().dim(), 1);
        let bad = SparseMatrix::from_columns(2, &[vec![0u32], vec![]]);
        assert!(ModuleMap::new(f.clone(), f, bad, 0).is_err());
    }
}
