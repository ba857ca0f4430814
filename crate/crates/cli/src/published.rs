//! Published comparison tables, for side-by-side output.

/// Sample sizes of the constants tables.
pub const SIZES: [u64; 6] = [10, 100, 1_000, 10_000, 100_000, 1_000_000];

/// Simple law `1 - e x e^{-x}`: exact, standard and improved `b_n`.
pub const SIMPLE_B: [[f64; 6]; 3] = [
    [4.8897, 7.6384, 10.2334, 12.7564, 15.2366, 17.6884],
    [4.1366, 7.1323, 9.8404, 12.4307, 14.9564, 17.4413],
    [4.8590, 7.6364, 10.2371, 12.7613, 15.2416, 17.6931],
];

/// `χ²(10)`: exact, standard and improved `b_n`.
pub const CHI2_B: [[f64; 6]; 3] = [
    [15.9872, 23.2093, 29.5883, 35.5640, 41.2962, 46.8630],
    [4.9213, 15.0717, 22.9606, 29.8272, 36.2175, 42.2812],
    [13.3518, 22.0874, 29.0421, 35.2855, 41.1581, 46.8045],
];

/// `χ²(10)`: exact, standard and improved `a_n`.
pub const CHI2_A: [[f64; 6]; 3] = [
    [4.0032, 3.0520, 2.7411, 2.5805, 2.4805, 2.4117],
    [2.0, 2.0, 2.0, 2.0, 2.0, 2.0],
    [4.9896, 3.1358, 2.7604, 2.5864, 2.4825, 2.4123],
];

/// Right-hand sides `x = 10^{-1}, ..., 10^{-6}` of `t^β e^{-t} = x`.
pub const ROOT_X: [f64; 6] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6];

/// Values of `β` in the root table.
pub const ROOT_BETA: [f64; 2] = [0.5, 4.0];

/// Root table per `β`: numeric `t`, Lambert `t_W`, Comtet `t_C`.
pub const ROOT_T: [[[f64; 6]; 3]; 2] = [
    [
        [2.8212, 5.4533, 7.9440, 10.3803, 12.7871, 15.1753],
        [2.8124, 5.4554, 7.9464, 10.3824, 12.7889, 15.1768],
        [2.8102, 5.4517, 7.9440, 10.3808, 12.7877, 15.1759],
    ],
    [
        [12.3607, 15.5923, 18.6005, 21.4786, 24.2699, 26.9987],
        [11.9175, 15.3431, 18.4547, 21.3922, 24.2198, 26.9717],
        [11.4342, 16.0199, 19.1148, 21.9488, 24.6826, 27.3597],
    ],
];

/// Exact `(b, a)` of the simple law at `n = 100`.
pub const SIMPLE_ANCHOR: (f64, f64) = (7.6384, 1.1506);

/// Printed precision of every published value.
pub const PRINTED_TOLERANCE: f64 = 1e-4;
