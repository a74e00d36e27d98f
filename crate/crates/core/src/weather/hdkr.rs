//! Anisotropic transposition of horizontal irradiance onto a tilted surface
//! (Hay-Davies-Klucher-Reindl).
//!
//! The sky diffuse is split into a circumsolar part, weighted by the
//! anisotropy index and transposed with the beam, and an isotropic part with
//! Klucher's horizon-brightening correction. Ground reflection uses the
//! isotropic view factor.

use super::solar::SolarPosition;

/// Beam geometric factor cap; beyond this the low-sun transposition is
/// numerically meaningless.
pub const MAX_BEAM_FACTOR: f64 = 10.0;

/// Zenith angle above which the beam and circumsolar terms are zeroed.
pub const BEAM_CUTOFF_ZENITH_DEG: f64 = 89.0;

/// Irradiance on a tilted surface, in W/m².
///
/// * `beam_horiz_wm2` / `diffuse_horiz_wm2`: horizontal beam and diffuse components
/// * `albedo`: ground reflectance in [0, 1]
/// * `tilt_deg`: surface tilt from horizontal in [0, 90]
/// * `surface_azimuth_deg`: surface normal azimuth from north, clockwise
pub fn hdkr_tilted_irradiance(
    beam_horiz_wm2: f64,
    diffuse_horiz_wm2: f64,
    albedo: f64,
    tilt_deg: f64,
    surface_azimuth_deg: f64,
    pos: &SolarPosition,
) -> f64 {
    debug_assert!(beam_horiz_wm2 >= 0.0 && diffuse_horiz_wm2 >= 0.0);
    debug_assert!((0.0..=90.0).contains(&tilt_deg));
    debug_assert!((0.0..=1.0).contains(&albedo));

    let beta = tilt_deg.to_radians();
    let ghi = beam_horiz_wm2 + diffuse_horiz_wm2;

    let zenith = pos.zenith_deg.to_radians();
    let cos_zenith = zenith.cos();
    // Incidence cosine; for tilt 0 this reduces to cos(zenith) exactly.
    let cos_incidence = beta.cos() * cos_zenith
        + beta.sin() * zenith.sin() * (pos.azimuth_deg - surface_azimuth_deg).to_radians().cos();

    let (beam_factor, anisotropy) = if pos.zenith_deg > BEAM_CUTOFF_ZENITH_DEG {
        (0.0, 0.0)
    } else {
        let rb = (cos_incidence.max(0.0) / cos_zenith).min(MAX_BEAM_FACTOR);
        let e0_horiz = pos.e0_normal_wm2 * cos_zenith;
        let ai = if e0_horiz > 0.0 {
            (beam_horiz_wm2 / e0_horiz).clamp(0.0, 1.0)
        } else {
            0.0
        };
        (rb, ai)
    };

    let horizon_brightening = if ghi > 0.0 {
        1.0 + (beam_horiz_wm2 / ghi).sqrt() * (beta / 2.0).sin().powi(3)
    } else {
        1.0
    };

    let beam_and_circumsolar = (beam_horiz_wm2 + diffuse_horiz_wm2 * anisotropy) * beam_factor;
    let isotropic_sky = diffuse_horiz_wm2
        * (1.0 - anisotropy)
        * ((1.0 + beta.cos()) / 2.0)
        * horizon_brightening;
    let ground_reflected = ghi * albedo * ((1.0 - beta.cos()) / 2.0);

    (beam_and_circumsolar + isotropic_sky + ground_reflected).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sun(zenith_deg: f64, azimuth_deg: f64, e0: f64) -> SolarPosition {
        SolarPosition { zenith_deg, azimuth_deg, e0_normal_wm2: e0 }
    }

    #[test]
    fn dark_sky_gives_zero() {
        let pos = sun(40.0, 180.0, 1380.0);
        assert_eq!(hdkr_tilted_irradiance(0.0, 0.0, 0.2, 45.0, 180.0, &pos), 0.0);
    }

    #[test]
    fn horizontal_surface_recovers_ghi_exactly() {
        let pos = sun(40.0, 195.0, 1380.0);
        let out = hdkr_tilted_irradiance(420.0, 160.0, 0.25, 0.0, 180.0, &pos);
        let ghi = 420.0 + 160.0;
        assert!((out - ghi).abs() <= 1e-9 * ghi, "got {out}");
    }

    #[test]
    fn matches_hand_computed_tilted_case() {
        // Fixed sample worked out term by term by hand:
        //   zenith 40°, sun azimuth 200°, E0n 1380 W/m²
        //   surface: tilt 45°, azimuth 180° (south), beam_h 420, diff_h 160, albedo 0.25
        //   cosθi = cos45·cos40 + sin45·sin40·cos20  = 0.96878381959
        //   Rb    = cosθi / cos40                    = 1.26465745988
        //   Ai    = 420 / (1380·cos40)               = 0.39729787067
        //   f·sin³(β/2) = sqrt(420/580)·sin³(22.5°)  = 0.04769025341
        //   beam+circ = (420 + 160·Ai)·Rb            = 611.54744770
        //   iso   = 160·(1-Ai)·(1+cos45)/2·(1+f·sin³(β/2)) = 86.23554334
        //   ground= 580·0.25·(1-cos45)/2             = 21.23475836
        //   total                                    = 719.01774940
        let pos = sun(40.0, 200.0, 1380.0);
        let out = hdkr_tilted_irradiance(420.0, 160.0, 0.25, 45.0, 180.0, &pos);
        let expected = 719.0177494024;
        assert!(
            ((out - expected) / expected).abs() < 1e-6,
            "got {out}, want {expected}"
        );
    }

    #[test]
    fn below_horizon_with_no_diffuse_leaves_only_ground_term() {
        let pos = sun(95.0, 0.0, 1380.0);
        let out = hdkr_tilted_irradiance(50.0, 0.0, 0.2, 60.0, 180.0, &pos);
        let ground = 50.0 * 0.2 * (1.0 - 60f64.to_radians().cos()) / 2.0;
        assert!((out - ground).abs() < 1e-12, "got {out}, want {ground}");
    }

    #[test]
    fn low_sun_beam_factor_is_clamped() {
        // zenith 88.9°: raw Rb would be huge for a surface facing the sun.
        let pos = sun(88.9, 180.0, 1380.0);
        let out = hdkr_tilted_irradiance(30.0, 0.0, 0.0, 90.0, 180.0, &pos);
        assert!(out <= 30.0 * MAX_BEAM_FACTOR + 1e-9);
    }

    #[test]
    fn continuous_in_tilt() {
        let pos = sun(55.0, 210.0, 1390.0);
        let mut prev = hdkr_tilted_irradiance(300.0, 120.0, 0.2, 0.0, 180.0, &pos);
        for i in 1..=900 {
            let beta = i as f64 * 0.1;
            let cur = hdkr_tilted_irradiance(300.0, 120.0, 0.2, beta, 180.0, &pos);
            assert!((cur - prev).abs() < 1.5, "jump at tilt {beta}: {prev} -> {cur}");
            prev = cur;
        }
    }
}
