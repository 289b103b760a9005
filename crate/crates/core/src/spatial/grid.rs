use crate::error::{Error, Result};

/// Default cap on points per axis.
pub const GRID_POINT_CAP: usize = 4001;

/// Cubic grid with identical axes, points `−L, −L+h, …, L`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid3 {
    extent: f64,
    step: f64,
    npts: usize,
}

impl Grid3 {
    pub fn new(extent: f64, step: f64) -> Result<Self> {
        Self::with_cap(extent, step, GRID_POINT_CAP)
    }

    pub fn with_cap(extent: f64, step: f64, cap: usize) -> Result<Self> {
        if !(extent > 0.0 && step > 0.0 && extent.is_finite() && step.is_finite()) {
            return Err(Error::Config(format!("grid needs L > 0 and h > 0, got L={extent} h={step}")));
        }
        let ratio = 2.0 * extent / step;
        let r = ratio.round();
        if (ratio - r).abs() > 1e-9 * ratio.max(1.0) {
            return Err(Error::Config(format!("2L/h = {ratio} is not an integer")));
        }
        let npts = r as usize + 1;
        if npts > cap {
            return Err(Error::Config(format!("{npts} points per axis exceeds the cap {cap}")));
        }
        Ok(Grid3 { extent, step, npts })
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }
    pub fn step(&self) -> f64 {
        self.step
    }
    /// Points per axis.
    pub fn npts(&self) -> usize {
        self.npts
    }
    pub fn point(&self, i: usize) -> f64 {
        -self.extent + i as f64 * self.step
    }
    pub fn axis(&self) -> Vec<f64> {
        (0..self.npts).map(|i| self.point(i)).collect()
    }
    /// Trapezoid weights along one axis.
    pub fn weights(&self) -> Vec<f64> {
        let mut w = vec![self.step; self.npts];
        if self.npts > 1 {
            w[0] *= 0.5;
            w[self.npts - 1] *= 0.5;
        }
        w
    }
    pub fn same_as(&self, other: &Grid3) -> bool {
        self.npts == other.npts && self.extent == other.extent && self.step == other.step
    }
}
