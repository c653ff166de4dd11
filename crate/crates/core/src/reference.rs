//! Published reference values used as regression targets.
//!
//! Rows are keyed by `2j`.

/// Maximal pure-state Wehrl entropy and the matching complexity.
pub const MAX_WEHRL: [(u32, f64, f64); 8] = [
    (2, 0.973519, 1.3591),
    (3, 1.23871, 1.6302),
    (4, 1.49166, 1.9970),
    (5, 1.65531, 2.2750),
    (6, 1.83594, 2.6613),
    (7, 1.95286, 2.9384),
    (8, 2.07789, 3.2838),
    (9, 2.18494, 3.6145),
];

/// Wehrl entropy and complexity of NOON states.
pub const NOON: [(u32, f64, f64); 9] = [
    (1, 0.5, 1.0),
    (2, 0.973519, 1.3591),
    (3, 1.23871, 1.6302),
    (4, 1.38723, 1.7990),
    (5, 1.4722, 1.8943),
    (6, 1.52266, 1.9455),
    (7, 1.55414, 1.9722),
    (8, 1.57495, 1.9859),
    (9, 1.58957, 1.9929),
];

/// Complexity generating power of unitary gates, per row
/// `(2j, [X, Z, F, P, max S1, max S2])`.
pub const GATE_POWER: [(u32, [f64; 6]); 4] = [
    (2, [0.3591, 0.0, 0.3214, 0.2741, 0.3591, 0.3591]),
    (3, [0.5854, 0.0, 0.6082, 0.4438, 0.6302, 0.6302]),
    (4, [0.7467, 0.0, 0.7931, 0.5533, 0.8869, 0.9380]),
    (5, [0.8520, 0.0, 0.8945, 0.6214, 1.1389, 0.9748]),
];

/// Column names of [`GATE_POWER`].
pub const GATE_COLUMNS: [&str; 6] = ["X", "Z", "F", "P", "S1max", "S2max"];

fn lookup<T: Copy>(rows: &[(u32, T)], twice_j: u32) -> Option<T> {
    rows.iter().find(|r| r.0 == twice_j).map(|r| r.1)
}

/// `(S_W, C)` of the max-Wehrl row for `2j`.
pub fn max_wehrl(twice_j: u32) -> Option<(f64, f64)> {
    MAX_WEHRL.iter().find(|r| r.0 == twice_j).map(|r| (r.1, r.2))
}

/// `(S_W, C)` of the NOON row for `2j`.
pub fn noon(twice_j: u32) -> Option<(f64, f64)> {
    NOON.iter().find(|r| r.0 == twice_j).map(|r| (r.1, r.2))
}

pub fn gate_power(twice_j: u32) -> Option<[f64; 6]> {
    lookup(&GATE_POWER, twice_j)
}
