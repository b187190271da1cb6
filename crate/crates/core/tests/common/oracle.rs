// Generated by tests/oracles/oracle.py; do not edit by hand.
#![allow(dead_code, clippy::excessive_precision)]

pub const QPOCH_INF_HALF_HALF: [f64; 2] = [2.88788095086602421278899721929e-1, 0.0];
pub const THETA_03_Q04: [f64; 2] = [-2.71114885860426515126425919298e-2, 0.0];
pub const PSI11_SUM: [f64; 2] = [-2.4, 0.0];
pub const PSI11_PRODUCT: [f64; 2] = [-2.4, 0.0];
pub const PSI11_B_EQ_Q: [f64; 2] = [1.52622026711354577854927874446, 0.0];
pub const PSI11_A1_SUM: [f64; 2] = [-8.83410278699788636694033091989e-2, 0.0];
pub const PSI11_A1_PRODUCT: [f64; 2] = [-8.83410278699788636694033091989e-2, 0.0];
pub const PSI22_SUM: [f64; 2] = [1.74496179937322877925964686251e+2, 0.0];
pub const VWP6_LHS: [f64; 2] = [-1.28908391838607589134814424513e+3, 0.0];
pub const VWP6_RHS: [f64; 2] = [-1.28908391838607589134814424513e+3, 0.0];
pub const VWP6_E_A_OVER_D_LHS: [f64; 2] = [-2.98300924131048713754680468449e+2, 0.0];
pub const VWP6_E_A_OVER_D_RHS: [f64; 2] = [-2.98300924131048713754680468449e+2, 0.0];
pub const ASKEY_SUM: [f64; 2] = [-3.17104066970496236677674404207, 0.0];
pub const ASKEY_PRODUCT: [f64; 2] = [-3.17104066970496236677674404207, 0.0];
pub const ASKEY_COMPLEX_XI_SUM: [f64; 2] = [-8.61444303342519318335100500883e-1, 1.1688408695186881131800722613];
pub const ASKEY_COMPLEX_XI_PRODUCT: [f64; 2] = [-8.61444303342519318335100500883e-1, 1.1688408695186881131800722613];
pub const Q_BETA_07_13: [f64; 2] = [1.13122584568380878315903336857, 0.0];
pub const ASKEY_XI1_07_13: [f64; 2] = [1.13122584568380878315903336857, 0.0];
pub const BC1_SUM: [f64; 2] = [-8.93761466065335134368227364192e+1, 0.0];
pub const BC1_AT_A1_SUM: [f64; 2] = [4.04792068376272240399352000681e+3, 0.0];
pub const J6PHI5: [f64; 2] = [4.04792068376272240399352000681e+3, 0.0];
pub const ATYPE_SUMMAND_N2: [f64; 2] = [9.865470827470744890315285484e-2, 0.0];
pub const AOMOTO_N2_BOX: [f64; 2] = [1.58817352135533969886456593813e-2, 0.0];
pub const AOMOTO_N2_PRODUCT: [f64; 2] = [1.58817352135514129061868191065e-2, 0.0];
pub const MG_N2_BOX: [f64; 2] = [3.06486926843925914472924346724e+1, 0.0];
pub const MG_N2_PRODUCT: [f64; 2] = [-3.67496648197253275857809764346e+2, 0.0];
pub const MG_N2_SWAPPED_BOX: [f64; 2] = [-3.06486926843925914472924346724e+1, 0.0];
pub const BCTYPE_N2_BOX: [f64; 2] = [-4.78108464339132909787153910187e+4, 0.0];
pub const ALTERNATING_N2_BOX: [f64; 2] = [1.51384556289750407353177990706e+6, 0.0];
