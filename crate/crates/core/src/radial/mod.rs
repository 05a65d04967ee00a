//! Radial quadrature: grids, bound orbitals, partial waves and Slater integrals.

mod functions;
mod grid;
mod integrals;
mod provider;

pub use functions::{hydrogenic_value, make_free_wave, make_hydrogenic, read_table, riccati_bessel, FreeWave, Orbital, Sampled};
pub use grid::{GridSpec, RadialGrid};
pub use integrals::{inverse_r, multipole_potential, overlap, slater_integral};
pub use provider::GridRadial;

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    fn grid() -> Arc<RadialGrid> {
        Arc::new(RadialGrid::new(GridSpec::default()).unwrap())
    }

    #[test]
    fn normalization_and_orthogonality() {
        let g = grid();
        let s1 = make_hydrogenic(1, 0, 1.0, &g).unwrap();
        let s2 = make_hydrogenic(2, 0, 1.0, &g).unwrap();
        let p3 = make_hydrogenic(3, 1, 2.0, &g).unwrap();
        assert!((overlap(&s1.f, &s1.f).unwrap() - 1.0).abs() < 1e-10);
        assert!(overlap(&s1.f, &s2.f).unwrap().abs() < 1e-8);
        assert!((overlap(&p3.f, &p3.f).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn f0_of_1s() {
        let g = grid();
        for z in [1.0, 2.0, 3.0] {
            let s = make_hydrogenic(1, 0, z, &g).unwrap().f;
            let v = slater_integral(0, &s, &s, &s, &s).unwrap();
            assert!((v - 0.625 * z).abs() < 1e-8, "Z={z}: {v}");
        }
    }

    #[test]
    fn inverse_r_of_1s_is_z() {
        let g = grid();
        let s = make_hydrogenic(1, 0, 2.0, &g).unwrap().f;
        assert!((inverse_r(&s, &s).unwrap() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn orbital_shapes() {
        let r = 0.37;
        assert!((hydrogenic_value(1, 0, 2.0, r) - 2.0 * 2f64.powf(1.5) * r * (-2.0 * r).exp()).abs() < 1e-14);
        let p2 = (1.0 / 24f64).sqrt() * r * r * (-r / 2.0).exp();
        assert!((hydrogenic_value(2, 1, 1.0, r) - p2).abs() < 1e-14);
        for x in [0.01, 0.5, 1.0, 3.0, 17.0] {
            assert!((riccati_bessel(0, x) - x.sin()).abs() < 1e-14);
            assert!((riccati_bessel(1, x) - (x.sin() / x - x.cos())).abs() < 1e-12);
        }
        let x: f64 = 2.5;
        let j2 = (3.0 / (x * x) - 1.0) * x.sin() - 3.0 * x.cos() / x;
        assert!((riccati_bessel(2, x) - j2).abs() < 1e-13);
        let x: f64 = 1.5;
        let j3 = (15.0 / x.powi(3) - 6.0 / x) * x.sin() - (15.0 / (x * x) - 1.0) * x.cos();
        assert!((riccati_bessel(3, x) - j3).abs() < 1e-13);
    }

    #[test]
    fn grid_mismatch_is_an_error() {
        let a = make_hydrogenic(1, 0, 1.0, &grid()).unwrap().f;
        let other = Arc::new(RadialGrid::new(GridSpec { intervals: 1000, ..GridSpec::default() }).unwrap());
        let b = make_hydrogenic(1, 0, 1.0, &other).unwrap().f;
        assert!(overlap(&a, &b).is_err());
        assert!(slater_integral(0, &a, &a, &a, &b).is_err());
    }

    #[test]
    fn table_round_trip() {
        let g = grid();
        let text: String = (1..4000).map(|i| {
            let r = i as f64 * 0.01;
            format!("{r} {}\n", hydrogenic_value(1, 0, 1.0, r))
        }).collect();
        let s = read_table(&format!("# r P\n{text}"), &g).unwrap();
        assert!((overlap(&s, &s).unwrap() - 1.0).abs() < 1e-3);
        assert!(read_table("1 2 3\n", &g).is_err());
    }
}
