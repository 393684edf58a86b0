//! Algebraic identities and gauge invariance of the curvature formulas.

mod common;

use common::Rng;
use minsurf_core::expr::HoloFn;
use minsurf_core::geometry::{
    alpha_beta_from_curvatures, canonical_derivatives, curvature_pair, curvatures_from_pq,
    liouville_density, moebius, pq_from_alpha_beta, pq_from_w, su2_transform, weierstrass_fg, PQ,
};

const POOL: &[&str] = &[
    "z",
    "z^2",
    "exp(z)",
    "(2*z - 1)/(z + 2)",
    "sin(z)",
    "z^3 - i*z",
    "sinh(z/2)",
    "1/(z - 3)",
];

fn pool() -> Vec<HoloFn> {
    POOL.iter().map(|t| HoloFn::parse(t).unwrap()).collect()
}

/// `K^2 - kappa^2 = (pq)^2` for 1000 random positive pairs.
#[test]
fn discriminant_identity() {
    let mut rng = Rng::new(1);
    for _ in 0..1000 {
        let pq = PQ {
            p: rng.range(1e-3, 10.0),
            q: rng.range(1e-3, 10.0),
        };
        let c = curvatures_from_pq(pq);
        let lhs = c.k * c.k - c.kappa * c.kappa;
        let rhs = (pq.p * pq.q) * (pq.p * pq.q);
        assert!(
            (lhs - rhs).abs() <= 1e-12 * rhs,
            "pq = {pq:?}: {lhs} vs {rhs}"
        );
        assert!(lhs > 0.0);
        assert!(c.k < 0.0);
    }
}

/// (K,kappa) -> (alpha,beta) -> (p,q) -> (K,kappa) closes to 1e-12 relative
/// for 1000 random (p, q) in (0, 10]^2.
#[test]
fn curvature_substitution_roundtrip() {
    let mut rng = Rng::new(2);
    for _ in 0..1000 {
        let pq = PQ {
            p: rng.range(1e-3, 10.0),
            q: rng.range(1e-3, 10.0),
        };
        let c = curvatures_from_pq(pq);
        let ab = alpha_beta_from_curvatures(c).unwrap();
        let back_pq = pq_from_alpha_beta(ab);
        let back = curvatures_from_pq(back_pq);
        let scale = c.k.abs();
        assert!((back.k - c.k).abs() <= 1e-12 * scale, "{pq:?}");
        assert!((back.kappa - c.kappa).abs() <= 1e-12 * scale, "{pq:?}");
        assert!((back_pq.p - pq.p).abs() <= 1e-12 * pq.p.max(pq.q));
        assert!((back_pq.q - pq.q).abs() <= 1e-12 * pq.p.max(pq.q));
    }
}

/// `2FG = -w/w'` and the isotropy of the canonical derivatives across the
/// function pool at random nonsingular points.
#[test]
fn weierstrass_identities_across_pool() {
    let mut rng = Rng::new(3);
    for w in pool() {
        let mut accepted = 0;
        while accepted < 40 {
            let z = rng.complex_in(-2.0, 2.0);
            let Ok(jet) = w.eval_jet(z) else { continue };
            if jet.deriv.norm() < 1e-6 || jet.value.norm() > 1e3 {
                continue;
            }
            let Ok(pair) = weierstrass_fg(&w, z) else {
                continue;
            };
            accepted += 1;
            let lhs = pair.f * pair.g * 2.0;
            let rhs = -jet.value / jet.deriv;
            assert!(
                (lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0),
                "{} at {z}",
                w.source()
            );
            let d = canonical_derivatives(&w, z).unwrap();
            let iso = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
            let scale: f64 = d.iter().map(|c| c.norm_sqr()).sum();
            assert!(iso.norm() <= 1e-12 * scale, "{} at {z}", w.source());
            // immersion regularity: the metric never degenerates
            assert!(scale > 0.0);
        }
    }
}

/// The density is invariant under the gauge group: 100 random params, 100
/// random points, relative agreement 1e-9.
#[test]
fn density_gauge_invariance() {
    let mut rng = Rng::new(4);
    let w = HoloFn::parse("z").unwrap();
    for _ in 0..100 {
        let m = rng.moebius();
        let hat = moebius(&w, &m);
        let mut accepted = 0;
        while accepted < 100 {
            let z = rng.complex_in(-2.0, 2.0);
            let Ok(jet) = w.eval_jet(z) else { continue };
            if jet.value.norm() > 5.0 {
                continue;
            }
            // keep clear of the composed pole so conditioning stays sane
            if (m.a() + m.b() * jet.value).norm() < 0.1 {
                continue;
            }
            accepted += 1;
            let nu = liouville_density(&w, z).unwrap();
            let nu_hat = liouville_density(&hat, z).unwrap();
            assert!(
                (nu - nu_hat).abs() <= 1e-9 * nu,
                "a = {}, b = {}, z = {z}: {nu} vs {nu_hat}",
                m.a(),
                m.b()
            );
        }
    }
}

/// Independent gauge transforms of both generators leave (K, kappa)
/// unchanged to 1e-9 relative.
#[test]
fn curvature_gauge_invariance() {
    let mut rng = Rng::new(5);
    let w1 = HoloFn::parse("z").unwrap();
    let w2 = HoloFn::parse("z^2").unwrap();
    for _ in 0..50 {
        let m1 = rng.moebius();
        let m2 = rng.moebius();
        let h1 = moebius(&w1, &m1);
        let h2 = moebius(&w2, &m2);
        let mut accepted = 0;
        while accepted < 20 {
            let z = rng.complex_in(-2.0, 2.0);
            let (Ok(j1), Ok(j2)) = (w1.eval_jet(z), w2.eval_jet(z)) else {
                continue;
            };
            if j1.value.norm() > 5.0 || j2.value.norm() > 5.0 || j2.deriv.norm() < 1e-3 {
                continue;
            }
            if (m1.a() + m1.b() * j1.value).norm() < 0.1
                || (m2.a() + m2.b() * j2.value).norm() < 0.1
            {
                continue;
            }
            accepted += 1;
            let c = curvature_pair(&w1, &w2, z).unwrap();
            let c_hat = curvature_pair(&h1, &h2, z).unwrap();
            let scale = c.k.abs();
            assert!((c.k - c_hat.k).abs() <= 1e-9 * scale, "z = {z}");
            assert!((c.kappa - c_hat.kappa).abs() <= 1e-9 * scale, "z = {z}");
        }
    }
}

/// `G_hat/F_hat` from the unitary action equals the Moebius transform of
/// `w` pointwise to 1e-10 (ratios are branch-independent).
#[test]
fn su2_matches_moebius_on_ratios() {
    let mut rng = Rng::new(6);
    let w = HoloFn::parse("z^2 + z").unwrap();
    for _ in 0..100 {
        let m = rng.moebius();
        let hat = moebius(&w, &m);
        let mut accepted = 0;
        while accepted < 10 {
            let z = rng.complex_in(-2.0, 2.0);
            let Ok(jet) = w.eval_jet(z) else { continue };
            if jet.deriv.norm() < 1e-3 || jet.value.norm() > 5.0 {
                continue;
            }
            if (m.a() + m.b() * jet.value).norm() < 0.1 {
                continue;
            }
            let Ok(pair) = weierstrass_fg(&w, z) else {
                continue;
            };
            accepted += 1;
            let t = su2_transform(pair, &m);
            let ratio = t.g / t.f;
            let expect = hat.eval_jet(z).unwrap().value;
            assert!(
                (ratio - expect).norm() <= 1e-10 * expect.norm().max(1.0),
                "z = {z}: {ratio} vs {expect}"
            );
        }
    }
}

/// Unitarity: `|F|^2 + |G|^2` is preserved for random data and params.
#[test]
fn su2_preserves_norms() {
    let mut rng = Rng::new(7);
    for _ in 0..200 {
        let pair = minsurf_core::geometry::WeierstrassPair {
            f: rng.complex_in(-3.0, 3.0),
            g: rng.complex_in(-3.0, 3.0),
        };
        let m = rng.moebius();
        let t = su2_transform(pair, &m);
        let before = pair.f.norm_sqr() + pair.g.norm_sqr();
        let after = t.f.norm_sqr() + t.g.norm_sqr();
        assert!((before - after).abs() <= 1e-12 * before.max(1.0));
    }
}

/// Swapping the generators fixes K and negates kappa, exactly.
#[test]
fn generator_swap_antisymmetry() {
    let mut rng = Rng::new(8);
    let w1 = HoloFn::parse("exp(z)").unwrap();
    let w2 = HoloFn::parse("(2*z - 1)/(z + 2)").unwrap();
    let mut accepted = 0;
    while accepted < 100 {
        let z = rng.complex_in(-1.5, 1.5);
        let (Ok(c12), Ok(c21)) = (curvature_pair(&w1, &w2, z), curvature_pair(&w2, &w1, z)) else {
            continue;
        };
        accepted += 1;
        assert_eq!(c12.k, c21.k);
        assert_eq!(c12.kappa, -c21.kappa);
        let pq12 = pq_from_w(&w1, &w2, z).unwrap();
        let pq21 = pq_from_w(&w2, &w1, z).unwrap();
        assert_eq!(pq12.p, pq21.q);
        assert_eq!(pq12.q, pq21.p);
    }
}

/// The two curvature routes (direct formula vs the p,q substitution) agree
/// to 1e-12 relative at random points; the redundancy is the point.
#[test]
fn curvature_routes_agree_at_random_points() {
    let mut rng = Rng::new(9);
    let fns = pool();
    for w1 in &fns {
        for w2 in &fns {
            let mut accepted = 0;
            let mut tries = 0;
            while accepted < 5 && tries < 1000 {
                tries += 1;
                let z = rng.complex_in(-1.5, 1.5);
                let (Ok(direct), Ok(pq)) = (curvature_pair(w1, w2, z), pq_from_w(w1, w2, z)) else {
                    continue;
                };
                accepted += 1;
                // the structure of the formula forces K < 0 wherever both
                // derivatives are nonzero
                assert!(direct.k < 0.0);
                let via = curvatures_from_pq(pq);
                let scale = direct.k.abs();
                assert!((direct.k - via.k).abs() <= 1e-12 * scale);
                assert!((direct.kappa - via.kappa).abs() <= 1e-12 * scale);
            }
        }
    }
}
