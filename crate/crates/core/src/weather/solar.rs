//! Solar geometry: position, extraterrestrial irradiance and sunset times.
//!
//! Follows the NOAA solar-calculator equations (Julian-century polynomial
//! ephemeris). Position accuracy is a few hundredths of a degree over the
//! relevant epoch, comfortably inside the 0.5 degree target; sunset times
//! land within a minute or two of almanac values.

use chrono::{DateTime, Datelike, NaiveDate, TimeZone, Timelike, Utc};

use super::WeatherError;

/// Mean solar constant in W/m².
pub const SOLAR_CONSTANT_WM2: f64 = 1367.0;

/// Sun position and extraterrestrial normal irradiance at an instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolarPosition {
    /// Zenith angle in degrees, 0 = overhead, > 90 = below horizon.
    pub zenith_deg: f64,
    /// Azimuth in degrees from north, clockwise, in [0, 360).
    pub azimuth_deg: f64,
    /// Extraterrestrial normal irradiance in W/m² (eccentricity-corrected).
    pub e0_normal_wm2: f64,
}

impl SolarPosition {
    pub fn is_up(&self) -> bool {
        self.zenith_deg < 90.0
    }
}

fn julian_century(t: DateTime<Utc>) -> f64 {
    let jd = t.timestamp() as f64 / 86_400.0 + 2_440_587.5;
    (jd - 2_451_545.0) / 36_525.0
}

/// Sun declination (deg), equation of time (minutes).
fn declination_and_eqtime(jc: f64) -> (f64, f64) {
    let geom_mean_long = (280.46646 + jc * (36000.76983 + jc * 0.0003032)).rem_euclid(360.0);
    let geom_mean_anom = 357.52911 + jc * (35999.05029 - 0.0001537 * jc);
    let eccentricity = 0.016708634 - jc * (0.000042037 + 0.0000001267 * jc);

    let m_rad = geom_mean_anom.to_radians();
    let eq_of_center = m_rad.sin() * (1.914602 - jc * (0.004817 + 0.000014 * jc))
        + (2.0 * m_rad).sin() * (0.019993 - 0.000101 * jc)
        + (3.0 * m_rad).sin() * 0.000289;
    let true_long = geom_mean_long + eq_of_center;
    let omega = (125.04 - 1934.136 * jc).to_radians();
    let apparent_long = true_long - 0.00569 - 0.00478 * omega.sin();

    let mean_obliq = 23.0
        + (26.0 + (21.448 - jc * (46.815 + jc * (0.00059 - jc * 0.001813))) / 60.0) / 60.0;
    let obliq = mean_obliq + 0.00256 * omega.cos();

    let decl = (obliq.to_radians().sin() * apparent_long.to_radians().sin())
        .asin()
        .to_degrees();

    let var_y = (obliq / 2.0).to_radians().tan().powi(2);
    let l0_rad = geom_mean_long.to_radians();
    let eqtime_min = 4.0
        * (var_y * (2.0 * l0_rad).sin() - 2.0 * eccentricity * m_rad.sin()
            + 4.0 * eccentricity * var_y * m_rad.sin() * (2.0 * l0_rad).cos()
            - 0.5 * var_y * var_y * (4.0 * l0_rad).sin()
            - 1.25 * eccentricity * eccentricity * (2.0 * m_rad).sin())
        .to_degrees();
    (decl, eqtime_min)
}

/// Eccentricity-corrected extraterrestrial normal irradiance (Spencer series).
pub fn extraterrestrial_normal(t: DateTime<Utc>) -> f64 {
    let doy = t.ordinal() as f64;
    let gamma = 2.0 * std::f64::consts::PI * (doy - 1.0 + (t.hour() as f64 - 12.0) / 24.0) / 365.0;
    SOLAR_CONSTANT_WM2
        * (1.000110
            + 0.034221 * gamma.cos()
            + 0.001280 * gamma.sin()
            + 0.000719 * (2.0 * gamma).cos()
            + 0.000077 * (2.0 * gamma).sin())
}

/// Solar position at `t` for a site at (lat, lon) in degrees, east positive.
pub fn solar_position(latitude_deg: f64, longitude_deg: f64, t: DateTime<Utc>) -> SolarPosition {
    debug_assert!(latitude_deg.abs() <= 90.0);
    let jc = julian_century(t);
    let (decl_deg, eqtime_min) = declination_and_eqtime(jc);

    let minutes_utc = t.num_seconds_from_midnight() as f64 / 60.0;
    let true_solar_min = (minutes_utc + eqtime_min + 4.0 * longitude_deg).rem_euclid(1440.0);
    let hour_angle_deg = true_solar_min / 4.0 - 180.0;

    let phi = latitude_deg.to_radians();
    let delta = decl_deg.to_radians();
    let h = hour_angle_deg.to_radians();

    let cos_zenith = (phi.sin() * delta.sin() + phi.cos() * delta.cos() * h.cos()).clamp(-1.0, 1.0);
    let zenith_deg = cos_zenith.acos().to_degrees();

    let azimuth_deg = (h.sin())
        .atan2(h.cos() * phi.sin() - delta.tan() * phi.cos())
        .to_degrees()
        + 180.0;

    SolarPosition {
        zenith_deg,
        azimuth_deg: azimuth_deg.rem_euclid(360.0),
        e0_normal_wm2: extraterrestrial_normal(t),
    }
}

/// UTC sunset instant for the given date and site.
///
/// Uses the standard refraction-corrected horizon (zenith 90.833 deg) and one
/// refinement pass of the declination at the sunset estimate.
pub fn sunset_time(
    latitude_deg: f64,
    longitude_deg: f64,
    date: NaiveDate,
) -> Result<DateTime<Utc>, WeatherError> {
    let midnight = Utc
        .with_ymd_and_hms(date.year(), date.month(), date.day(), 0, 0, 0)
        .single()
        .expect("valid date");

    let mut estimate_min = 720.0 - 4.0 * longitude_deg;
    for _ in 0..2 {
        let at = midnight + chrono::Duration::seconds((estimate_min * 60.0) as i64);
        let (decl_deg, eqtime_min) = declination_and_eqtime(julian_century(at));
        let phi = latitude_deg.to_radians();
        let delta = decl_deg.to_radians();
        let cos_ha = (90.833f64.to_radians().cos() - phi.sin() * delta.sin())
            / (phi.cos() * delta.cos());
        if cos_ha.abs() > 1.0 {
            return Err(WeatherError::PolarDayNight { latitude_deg, date });
        }
        let ha_deg = cos_ha.acos().to_degrees();
        let solar_noon_min = 720.0 - 4.0 * longitude_deg - eqtime_min;
        estimate_min = solar_noon_min + 4.0 * ha_deg;
    }
    Ok(midnight + chrono::Duration::seconds((estimate_min * 60.0).round() as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn utc(y: i32, mo: u32, d: u32, h: u32, mi: u32) -> DateTime<Utc> {
        Utc.with_ymd_and_hms(y, mo, d, h, mi, 0).unwrap()
    }

    #[test]
    fn equator_equinox_noon_is_overhead() {
        // Solar noon at lon 0 near the March equinox; eqtime ~ -7 min.
        let pos = solar_position(0.0, 0.0, utc(2019, 3, 20, 12, 7));
        assert!(pos.zenith_deg < 1.0, "zenith {}", pos.zenith_deg);
    }

    #[test]
    fn paris_summer_solstice_noon_altitude() {
        // Zenith ~ lat - obliquity = 48.85 - 23.44 = 25.41 deg at solar noon.
        let pos = solar_position(48.85, 2.35, utc(2019, 6, 21, 11, 50));
        assert!(
            (pos.zenith_deg - (48.85 - 23.44)).abs() < 0.5,
            "zenith {}",
            pos.zenith_deg
        );
    }

    #[test]
    fn midnight_sun_below_horizon_in_winter_midlatitude() {
        let pos = solar_position(48.85, 2.35, utc(2019, 1, 10, 0, 0));
        assert!(pos.zenith_deg > 90.0);
        assert!(!pos.is_up());
    }

    #[test]
    fn equator_equinox_sunset_near_six_pm_local_solar() {
        let t = sunset_time(0.0, 0.0, NaiveDate::from_ymd_opt(2019, 3, 20).unwrap()).unwrap();
        let minutes = t.num_seconds_from_midnight() as i64 / 60;
        // 18:00 local solar time, +/- 10 min (equation of time + refraction)
        assert!((minutes - 18 * 60).abs() <= 10, "sunset at {t}");
    }

    #[test]
    fn sunset_is_deterministic() {
        let d = NaiveDate::from_ymd_opt(2018, 12, 21).unwrap();
        assert_eq!(
            sunset_time(48.85, 2.35, d).unwrap(),
            sunset_time(48.85, 2.35, d).unwrap()
        );
    }

    #[test]
    fn polar_night_is_reported() {
        let d = NaiveDate::from_ymd_opt(2018, 12, 21).unwrap();
        assert!(matches!(
            sunset_time(80.0, 0.0, d),
            Err(WeatherError::PolarDayNight { .. })
        ));
    }

    #[test]
    fn extraterrestrial_peaks_in_january() {
        // Perihelion in early January: E0 above the solar constant.
        let jan = extraterrestrial_normal(utc(2019, 1, 3, 12, 0));
        let jul = extraterrestrial_normal(utc(2019, 7, 4, 12, 0));
        assert!(jan > 1400.0 && jan < 1420.0, "jan {jan}");
        assert!(jul < 1330.0, "jul {jul}");
    }
}
