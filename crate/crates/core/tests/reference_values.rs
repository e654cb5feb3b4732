//! Values computed independently at 150 digits and frozen here.

#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use abshield::london::{quantized_flux, solve_london_exact, Geometry, LondonParams, SourceConfig};
use abshield::specfun::Order;
use abshield::spectrum::{annulus_eigenvalues, Annulus};

const EIGEN: [(f64, [f64; 5]); 5] = [
    (
        0.0,
        [
            9.7533221247507149107,
            39.355995657592581457,
            88.702633308924489804,
            157.78935244585416095,
            246.61554981530917362,
        ],
    ),
    (
        0.25,
        [
            9.7823979811916204217,
            39.386599998045620448,
            88.733583958149947226,
            157.82043131655909759,
            246.64668943723754629,
        ],
    ),
    (
        1.0,
        [
            10.218113344665941065,
            39.845756341109574728,
            89.197917728664871939,
            158.28666414897151466,
            247.11381825210838841,
        ],
    ),
    (
        2.25,
        [
            12.097134542716068475,
            41.83734193183758847,
            91.211627668832800352,
            160.30808431225459212,
            249.13879056050467825,
        ],
    ),
    (
        7.5,
        [
            34.638095441122889877,
            67.081066020571714684,
            116.79273477904339682,
            185.92685737502443747,
            274.7578311009660461,
        ],
    ),
];

#[test]
fn unit_annulus_levels() {
    let ann = Annulus::new(1.0, 2.0).unwrap();
    for (nu, want) in EIGEN {
        let got = annulus_eigenvalues(ann, Order::new(nu).unwrap(), 5).unwrap();
        for (m, w) in got.iter().zip(want) {
            assert!((m.energy - w).abs() <= 1e-11 * w, "nu {nu} n {}: {} vs {w}", m.n, m.energy);
        }
    }
}

// (r, a(r), B_z(r)) for a=1 b=2 c=2.4 r_e=3.5, beta=50, phi_a=0.6, b_e=0.01
const PROFILE: [(f64, f64, f64); 8] = [
    (0.5, 0.023873241463784300365, 0.19098593171027440292),
    (1.5, 0.089034592176716480822, -0.010333397885473153024),
    (2.0, 0.079992869026927471926, -0.010333397885473153024),
    (2.01, 0.079830047282076330479, -0.0062519508190059025829),
    (2.2, 0.079577512089921293017, 2.6878564399684403512e-8),
    (2.39, 0.079866782211433160745, 0.0060780089722332694836),
    (3.0, 0.096255467345965552753, 0.01),
    (3.7, 0.11250546734596555275, 0.0),
];

#[test]
fn shielded_profile() {
    let g = Geometry::new(1.0, 2.0, 2.4, 3.0, 4.0, 3.5).unwrap();
    let lp = LondonParams::new(50.0, &g).unwrap();
    let src = SourceConfig::new(0.6, 0.01, true).unwrap();
    let fs = quantized_flux(0.6).unwrap();
    assert_eq!(fs.phi_q(), 0.5);
    let p = solve_london_exact(&g, &lp, &src, &fs).unwrap();
    for (r, a, b) in PROFILE {
        let s = p.eval(r).unwrap();
        assert!((s.a - a).abs() <= 1e-12, "a({r}) = {} vs {a}", s.a);
        assert!((s.b_z - b).abs() <= 1e-12, "B({r}) = {} vs {b}", s.b_z);
    }
    let mid = 2.0 * PI * p.a(2.2).unwrap();
    assert!((mid - 0.50000025474529937611).abs() < 1e-12);
}
