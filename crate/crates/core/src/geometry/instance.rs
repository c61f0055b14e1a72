use super::{Coordinate, HyperRect, SigmaObject};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Objects {
    Boxes(Vec<HyperRect>),
    Sigma(Vec<SigmaObject>),
}

/// An input set in canonical (pre-shuffle) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    dim: usize,
    objects: Objects,
    declared_k: Option<Coordinate>,
    /// Size of a certified optimum planted by a generator, if known.
    planted_opt: Option<usize>,
}

impl Instance {
    pub fn from_boxes(dim: usize, boxes: Vec<HyperRect>, declared_k: Option<Coordinate>) -> Result<Self> {
        Self::new(dim, Objects::Boxes(boxes), declared_k)
    }

    pub fn from_sigma(dim: usize, objs: Vec<SigmaObject>, declared_k: Option<Coordinate>) -> Result<Self> {
        Self::new(dim, Objects::Sigma(objs), declared_k)
    }

    pub fn new(dim: usize, objects: Objects, declared_k: Option<Coordinate>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let inst = Instance {
            dim,
            objects,
            declared_k,
            planted_opt: None,
        };
        for b in inst.out_boxes_iter() {
            b.check_dim(dim)?;
        }
        if let Some(k) = &inst.declared_k {
            if k.is_negative() {
                return Err(Error::InvalidParameter(format!("negative bounding box side {k}")));
            }
            let zero = Coordinate::zero();
            for (i, b) in inst.out_boxes_iter().enumerate() {
                if (0..dim).any(|j| b.lo(j) < &zero || b.hi(j) > k) {
                    return Err(Error::InvalidParameter(format!(
                        "object {} = {b:?} leaves [0, {k}]^{dim}",
                        i + 1
                    )));
                }
            }
        }
        Ok(inst)
    }

    pub fn with_planted_opt(mut self, t: usize) -> Self {
        self.planted_opt = Some(t);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        match &self.objects {
            Objects::Boxes(v) => v.len(),
            Objects::Sigma(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn objects(&self) -> &Objects {
        &self.objects
    }

    pub fn declared_k(&self) -> Option<&Coordinate> {
        self.declared_k.as_ref()
    }

    pub fn planted_opt(&self) -> Option<usize> {
        self.planted_opt
    }

    pub fn is_sigma(&self) -> bool {
        matches!(self.objects, Objects::Sigma(_))
    }

    /// The boxes an algorithm sees: the objects themselves, or their out-boxes.
    pub fn out_boxes(&self) -> Vec<HyperRect> {
        self.out_boxes_iter().cloned().collect()
    }

    fn out_boxes_iter(&self) -> Box<dyn Iterator<Item = &HyperRect> + '_> {
        match &self.objects {
            Objects::Boxes(v) => Box::new(v.iter()),
            Objects::Sigma(v) => Box::new(v.iter().map(|f| f.out_box())),
        }
    }

    pub fn sigma_objects(&self) -> Option<&[SigmaObject]> {
        match &self.objects {
            Objects::Sigma(v) => Some(v),
            Objects::Boxes(_) => None,
        }
    }
}
