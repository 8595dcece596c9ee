//! Browser bindings for the three demo operations on `www/index.html`:
//! the chain experiment with adjustable parameters, two-region image
//! segmentation, and a stochastic block model run.
//!
//! The `*_demo` wrappers are thin; the work happens in plain functions that
//! are also tested natively.

use nlasso::experiments::{chain_experiment, sbm_experiment, segment, ChainParams, SbmParams};
use nlasso::generators::GreyImage;
use nlasso::NodeSet;
use wasm_bindgen::prelude::*;

#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct ChainDemo {
    signal: Vec<f64>,
    fiedler: Vec<f64>,
    cluster: Vec<u32>,
    /// `None` when the cluster misses the seed.
    prop1: Option<(bool, bool)>,
    u_bound: bool,
}

#[wasm_bindgen]
impl ChainDemo {
    /// nLasso signal over all 100 nodes.
    #[wasm_bindgen(getter)]
    pub fn signal(&self) -> Vec<f64> {
        self.signal.clone()
    }

    /// Scaled Fiedler vector of the normalized Laplacian.
    #[wasm_bindgen(getter)]
    pub fn fiedler(&self) -> Vec<f64> {
        self.fiedler.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn cluster(&self) -> Vec<u32> {
        self.cluster.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn contains_seed(&self) -> bool {
        self.prop1.is_some()
    }

    #[wasm_bindgen(getter)]
    pub fn holds_injecting(&self) -> bool {
        self.prop1.is_some_and(|p| p.0)
    }

    #[wasm_bindgen(getter)]
    pub fn holds_absorbing(&self) -> bool {
        self.prop1.is_some_and(|p| p.1)
    }

    #[wasm_bindgen(getter)]
    pub fn u_bound(&self) -> bool {
        self.u_bound
    }
}

pub fn chain(lambda: f64, alpha: f64, iters: usize) -> Result<ChainDemo, String> {
    let params = ChainParams {
        lambda,
        alpha,
        iters,
        ..ChainParams::default()
    };
    let rep = chain_experiment(&params).map_err(|e| e.to_string())?;
    Ok(ChainDemo {
        cluster: rep.cluster.cluster.ids().iter().map(|&i| i as u32).collect(),
        prop1: rep.prop1.map(|p| (p.holds_20, p.holds_21)),
        u_bound: rep.u_bound_holds,
        signal: rep.signal.0,
        fiedler: rep.fiedler.0,
    })
}

#[wasm_bindgen]
pub fn chain_demo(lambda: f64, alpha: f64, iters: usize) -> Result<ChainDemo, JsError> {
    chain(lambda, alpha, iters).map_err(|e| JsError::new(&e))
}

/// Mask (255 inside the cluster, 0 outside) for a row-major greyscale image.
/// Seeds are pixel ids `row·width + col + 1`.
pub fn segmentation(
    width: usize,
    height: usize,
    pixels: &[u8],
    seeds: &[u32],
    alpha: f64,
    lambda: f64,
    iters: usize,
) -> Result<Vec<u8>, String> {
    let img = GreyImage::new(width, height, pixels.to_vec()).map_err(|e| e.to_string())?;
    let seeds = NodeSet::new(seeds.iter().map(|&s| s as usize), width * height).map_err(|e| e.to_string())?;
    let rep = segment(&img, &seeds, alpha, lambda, iters, 0.5).map_err(|e| e.to_string())?;
    Ok(rep.mask.pixels)
}

#[wasm_bindgen]
pub fn segment_demo(
    width: usize,
    height: usize,
    pixels: &[u8],
    seeds: &[u32],
    alpha: f64,
    lambda: f64,
    iters: usize,
) -> Result<Vec<u8>, JsError> {
    segmentation(width, height, pixels, seeds, alpha, lambda, iters).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct SbmDemo {
    accuracy: f64,
    signal: Vec<f64>,
    seeds: Vec<u32>,
}

#[wasm_bindgen]
impl SbmDemo {
    #[wasm_bindgen(getter)]
    pub fn accuracy(&self) -> f64 {
        self.accuracy
    }

    /// Signal over all 200 nodes; nodes 1–100 form the seeded block.
    #[wasm_bindgen(getter)]
    pub fn signal(&self) -> Vec<f64> {
        self.signal.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn seeds(&self) -> Vec<u32> {
        self.seeds.clone()
    }
}

pub fn sbm(rng_seed: u64, iters: usize) -> Result<SbmDemo, String> {
    let params = SbmParams {
        iters,
        ..SbmParams::default()
    };
    let rep = sbm_experiment(&params, rng_seed).map_err(|e| e.to_string())?;
    Ok(SbmDemo {
        accuracy: rep.accuracy,
        seeds: rep.seeds.ids().iter().map(|&i| i as u32).collect(),
        signal: rep.signal.0,
    })
}

#[wasm_bindgen]
pub fn sbm_demo(rng_seed: u64, iters: usize) -> Result<SbmDemo, JsError> {
    sbm(rng_seed, iters).map_err(|e| JsError::new(&e))
}
