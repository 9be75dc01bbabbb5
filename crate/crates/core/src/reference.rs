//! Reference eigenvalues and published error tables for the benchmark problems.
//!
//! Error columns are ordered as [`ERROR_COLUMNS`].

use crate::propagator::Method;

/// Column order of every per-method error row.
pub const ERROR_COLUMNS: [Method; 5] =
    [Method::Pruess2, Method::Neumann4, Method::Magnus4, Method::Neumann8, Method::Magnus8];

/// `(k, λ_k, errors)`; the λ text keeps every printed digit.
#[derive(Clone, Copy, Debug)]
pub struct Row {
    pub k: usize,
    pub lambda: &'static str,
    pub errors: [f64; 5],
}

impl Row {
    pub fn value(&self) -> f64 {
        self.lambda.parse().expect("reference literal")
    }
}

const fn row(k: usize, lambda: &'static str, errors: [f64; 5]) -> Row {
    Row { k, lambda, errors }
}

/// Woods–Saxon on `[0, 15]`, uniform `n = 64`.
pub const WS64: [Row; 14] = [
    row(0, "-49.45778872808258", [1.7e-3, 5.5e-6, 5.5e-6, 2.8e-10, 4.9e-9]),
    row(1, "-48.14843042000639", [5.1e-3, 4.0e-5, 4.0e-5, 2.3e-9, 4.0e-8]),
    row(2, "-46.29075395446623", [9.1e-3, 1.3e-4, 1.4e-4, 9.5e-9, 1.6e-7]),
    row(3, "-43.96831843181467", [1.3e-2, 3.2e-4, 3.2e-4, 2.7e-8, 4.7e-7]),
    row(4, "-41.23260777218090", [1.8e-2, 6.0e-4, 6.0e-4, 6.1e-8, 1.1e-6]),
    row(5, "-38.12278509672854", [2.1e-2, 1.0e-3, 1.0e-3, 1.1e-7, 2.0e-6]),
    row(6, "-34.67231320569997", [2.5e-2, 1.5e-3, 1.5e-3, 1.8e-7, 3.2e-6]),
    row(7, "-30.91224748790910", [2.7e-2, 2.1e-3, 2.1e-3, 2.6e-7, 4.4e-6]),
    row(8, "-26.87344891605993", [2.7e-2, 2.8e-3, 2.8e-3, 3.1e-7, 5.5e-6]),
    row(9, "-22.58860225769320", [2.6e-2, 3.4e-3, 3.4e-3, 3.2e-7, 5.9e-6]),
    row(10, "-18.09468828212811", [2.3e-2, 4.0e-3, 4.0e-3, 2.6e-7, 5.1e-6]),
    row(11, "-13.43686904026007", [1.7e-2, 4.4e-3, 4.4e-3, 1.1e-7, 3.1e-6]),
    row(12, "-8.67608167074520", [7.3e-3, 4.6e-3, 4.6e-3, 1.1e-7, 1.1e-7]),
    row(13, "-3.90823248120989", [5.9e-3, 4.3e-3, 4.3e-3, 3.2e-7, 3.5e-6]),
];

/// Coffey–Evans with `β = 30`, uniform `n = 128`.
pub const CE128: [Row; 14] = [
    row(0, "0.0000000000000000", [1.7e-1, 1.3e-3, 1.3e-3, 6.4e-9, 1.0e-7]),
    row(1, "117.9463076620687587", [1.5e-1, 3.5e-3, 3.5e-3, 1.5e-8, 2.5e-7]),
    row(2, "231.6649292371271088", [1.3e-1, 3.1e-3, 3.1e-3, 1.6e-9, 7.9e-8]),
    row(3, "231.6649293129610125", [1.3e-1, 3.1e-3, 3.1e-3, 3.4e-8, 1.6e-7]),
    row(4, "231.6649293887949167", [1.3e-1, 3.1e-3, 3.1e-3, 2.3e-9, 2.3e-7]),
    row(5, "340.8882998096130157", [1.0e-1, 6.3e-3, 6.3e-3, 1.5e-8, 2.5e-7]),
    row(6, "445.2830895824354620", [7.7e-2, 5.6e-3, 5.6e-3, 1.0e-8, 1.8e-7]),
    row(8, "445.2832550313310036", [7.7e-2, 5.4e-3, 5.4e-3, 1.0e-8, 1.8e-7]),
    row(10, "637.6822498740469991", [3.1e-2, 6.7e-3, 6.7e-3, 5.0e-10, 5.7e-9]),
    row(15, "802.4787986926240517", [2.2e-2, 5.1e-3, 5.1e-3, 6.3e-9, 9.1e-8]),
    row(20, "951.8788067965913828", [4.6e-2, 4.2e-3, 4.2e-3, 5.6e-9, 8.1e-8]),
    row(30, "1438.2952446408023577", [2.3e-2, 3.7e-3, 3.7e-3, 2.5e-9, 2.8e-8]),
    row(40, "2146.4053605398535082", [1.3e-2, 3.0e-3, 3.0e-3, 1.1e-9, 1.5e-8]),
    row(50, "3060.9234915114205911", [8.9e-3, 2.2e-3, 2.2e-3, 4.5e-10, 8.8e-9]),
];

/// Coffey–Evans `β = 30` at roughly 1e-8 accuracy; meshes in [`CE_ACCURACY_NINT`].
pub const CE_ACCURACY: [Row; 6] = [
    row(0, "0.0000000000000000", [6.7e-7, 1.9e-8, 1.9e-8, 6.3e-8, 1.0e-7]),
    row(10, "637.6822498740469991", [1.3e-7, 1.1e-7, 1.1e-7, 8.1e-9, 5.6e-9]),
    row(20, "951.878806796591382", [1.7e-7, 7.3e-8, 7.3e-8, 5.7e-8, 8.1e-8]),
    row(30, "1438.2952446408023577", [8.4e-8, 7.4e-8, 7.4e-8, 2.3e-8, 2.8e-8]),
    row(40, "2146.4053605398535082", [4.7e-8, 7.4e-8, 7.4e-8, 1.4e-8, 1.5e-8]),
    row(50, "3060.9234915114205911", [4.5e-8, 5.6e-8, 5.6e-8, 8.4e-9, 8.5e-9]),
];
pub const CE_ACCURACY_NINT: [usize; 5] = [65536, 2048, 2048, 96, 128];

/// Woods–Saxon at roughly 1e-8 accuracy; meshes in [`WS_ACCURACY_NINT`].
pub const WS_ACCURACY: [Row; 7] = [
    row(0, "-49.45778872808258", [3.3e-9, 8.5e-11, 8.5e-11, 1.1e-11, 1.8e-10]),
    row(2, "-46.29075395446623", [1.7e-8, 2.1e-9, 2.1e-9, 3.8e-10, 6.2e-9]),
    row(4, "-41.23260777218090", [3.4e-8, 9.6e-9, 9.6e-9, 2.4e-9, 4.0e-8]),
    row(6, "-34.67231320569997", [4.7e-8, 2.5e-8, 2.5e-8, 7.4e-9, 1.2e-7]),
    row(8, "-26.87344891605993", [5.3e-8, 4.7e-8, 4.7e-8, 1.3e-8, 2.2e-7]),
    row(10, "-18.09468828212811", [4.5e-8, 7.3e-8, 7.3e-8, 1.2e-8, 2.0e-7]),
    row(12, "-8.67608167074520", [1.6e-8, 9.0e-8, 9.0e-8, 2.3e-9, 7.4e-9]),
];
pub const WS_ACCURACY_NINT: [usize; 5] = [32768, 1024, 1024, 96, 96];

/// Woods–Saxon, order-8 Neumann on the adaptive mesh for `tol = 1e-6` (46 intervals).
pub const WS_ADAPTIVE: [(usize, &str, f64); 7] = [
    (0, "-49.45778872808258", 1.5e-10),
    (2, "-46.29075395446623", 4.6e-9),
    (4, "-41.23260777218090", 5.3e-8),
    (6, "-34.67231320569997", 2.4e-7),
    (8, "-26.87344891605993", 2.0e-7),
    (10, "-18.09468828212811", 1.5e-7),
    (12, "-8.67608167074520", 1.4e-7),
];
pub const WS_ADAPTIVE_NINT: usize = 46;

/// Singular Woods–Saxon `l = 2` on `[0, 20]`, order-8 Neumann with `tol = 1e-7`:
/// `(k, λ_k, error at ε = 0.01, error at ε = 0.1)`.
pub const WS_SINGULAR: [(usize, &str, f64, f64); 7] = [
    (0, "-48.349481052120", 6.7e-11, 8.8e-9),
    (2, "-44.121537377319", 6.4e-10, 1.5e-8),
    (4, "-38.253426539679", 2.1e-9, 1.2e-8),
    (6, "-31.026820921773", 1.5e-9, 2.2e-9),
    (8, "-22.689041510178", 1.1e-8, 2.4e-8),
    (10, "-13.52230335295", 5.6e-11, 5.8e-8),
    (12, "-3.972491432846", 2.3e-8, 1.5e-9),
];
/// `(ε, nint, nbisec)` for the two singular runs.
pub const WS_SINGULAR_RUNS: [(f64, usize, usize); 2] = [(0.01, 144, 1), (0.1, 111, 5)];

/// `λ_k` for `k = 0..13` of the Woods–Saxon problem.
pub fn woods_saxon_lambda() -> [f64; 14] {
    std::array::from_fn(|i| WS64[i].value())
}
