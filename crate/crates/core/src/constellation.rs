//! Walker Delta shell geometry and circular-orbit propagation.
//!
//! A shell is `N` orbital planes of `M` satellites each, sharing altitude and
//! inclination, with plane right-ascensions spaced `360°/N` apart. Satellites
//! are addressed by grid coordinates `(slot, plane)`; the four-neighbor +Grid
//! link topology makes the shell a 2D torus.
//!
//! Two link lengths matter for routing costs: the within-plane neighbor
//! distance, which is constant, and the cross-plane neighbor distance, which
//! shrinks as planes converge toward the poles and stretches back out at the
//! equator. Both are chord lengths on a sphere of radius `r_E + h`.

use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Mean Earth radius (km), also the sphere used for geodetic conversion.
pub const EARTH_RADIUS_KM: f64 = 6371.0;

/// Earth's gravitational parameter (m^3/s^2).
pub const EARTH_MU_M3_S2: f64 = 3.986e14;

/// Earth sidereal rotation rate (rad/s).
pub const SIDEREAL_RATE_RAD_S: f64 = 7.292_115_9e-5;

/// Orbital period (s) of a circular orbit at altitude `h` km:
/// `T = 2π sqrt((r_E + h)^3 / μ)`.
///
/// `h = 0` is accepted (surface-grazing orbit, T ≈ 84.3 min); negative
/// altitudes are a domain error.
pub fn orbital_period_s(altitude_km: f64) -> Result<f64> {
    if !altitude_km.is_finite() || altitude_km < 0.0 {
        return Err(Error::Domain(format!(
            "orbital period undefined for altitude {altitude_km} km"
        )));
    }
    let r_m = (EARTH_RADIUS_KM + altitude_km) * 1000.0;
    Ok(TAU * (r_m.powi(3) / EARTH_MU_M3_S2).sqrt())
}

/// Walker Delta shell parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstellationConfig {
    /// Number of orbital planes `N`.
    pub num_planes: u32,
    /// Satellites per plane `M`.
    pub sats_per_plane: u32,
    /// Shell altitude `h` (km), LEO band 300..=2000.
    pub altitude_km: f64,
    /// Orbital inclination `i` (degrees), in (0, 90].
    pub inclination_deg: f64,
    /// Walker phasing parameter `F` in [0, N): satellites in plane `o` are
    /// advanced by `F·o/(M·N)` of a revolution relative to plane 0.
    pub phase_offset: u32,
    /// Simulation time origin (s); positions at `sim_time` use the elapsed
    /// time `sim_time - epoch_s`.
    pub epoch_s: f64,
}

impl Default for ConstellationConfig {
    fn default() -> Self {
        // 50 planes x 20 satellites at the reference altitude/inclination.
        Self {
            num_planes: 50,
            sats_per_plane: 20,
            altitude_km: 530.0,
            inclination_deg: 87.0,
            phase_offset: 0,
            epoch_s: 0.0,
        }
    }
}

impl ConstellationConfig {
    /// Check every shell invariant, naming the violated one on failure.
    pub fn validate(&self) -> Result<()> {
        if self.num_planes < 1 {
            return Err(Error::InvalidConfig("num_planes must be >= 1".into()));
        }
        if self.sats_per_plane < 1 {
            return Err(Error::InvalidConfig("sats_per_plane must be >= 1".into()));
        }
        if !(300.0..=2000.0).contains(&self.altitude_km) {
            return Err(Error::InvalidConfig(format!(
                "altitude_km {} outside LEO band [300, 2000]",
                self.altitude_km
            )));
        }
        if !(self.inclination_deg > 0.0 && self.inclination_deg <= 90.0) {
            return Err(Error::InvalidConfig(format!(
                "inclination_deg {} outside (0, 90]",
                self.inclination_deg
            )));
        }
        if self.phase_offset >= self.num_planes {
            return Err(Error::InvalidConfig(format!(
                "phase_offset {} must be < num_planes {}",
                self.phase_offset, self.num_planes
            )));
        }
        Ok(())
    }

    /// Total satellite count `N·M`.
    pub fn total_sats(&self) -> u64 {
        u64::from(self.num_planes) * u64::from(self.sats_per_plane)
    }

    /// Inclination in radians.
    pub fn inclination_rad(&self) -> f64 {
        self.inclination_deg.to_radians()
    }

    /// Orbital period `T` (s) for this shell's altitude.
    pub fn period_s(&self) -> f64 {
        // Altitude range is enforced by validate(); unwrap is safe there,
        // and a panic here flags an unvalidated config during development.
        orbital_period_s(self.altitude_km).expect("validated altitude")
    }

    /// Orbital radius `r_E + h` (km).
    pub fn orbit_radius_km(&self) -> f64 {
        EARTH_RADIUS_KM + self.altitude_km
    }

    /// Constant distance (km) between within-plane neighbors:
    /// `D_m = (r_E + h) sqrt(2 [1 - cos(2π/M)])`.
    pub fn intra_plane_distance_km(&self) -> f64 {
        let m = f64::from(self.sats_per_plane);
        self.orbit_radius_km() * (2.0 * (1.0 - (TAU / m).cos())).sqrt()
    }

    /// Equatorial maximum of the cross-plane neighbor distance (km):
    /// `D_base = (r_E + h) sqrt(2 [1 - cos(2π/N)])`.
    pub fn inter_plane_base_km(&self) -> f64 {
        let n = f64::from(self.num_planes);
        self.orbit_radius_km() * (2.0 * (1.0 - (TAU / n).cos())).sqrt()
    }

    /// Cross-plane neighbor distance (km) at phase time `t` seconds after the
    /// source satellite's ascending equator crossing:
    /// `D_n(t) = D_base sqrt(cos²(2πt/T) + cos²(i) sin²(2πt/T))`.
    ///
    /// `t` outside [0, T) is reduced mod T; this is documented behavior, not
    /// an error, since phase time is periodic by construction.
    pub fn inter_plane_distance_km(&self, phase_time_s: f64) -> f64 {
        let theta = TAU * phase_time_s / self.period_s();
        let (sin_t, cos_t) = theta.sin_cos();
        let cos_i = self.inclination_rad().cos();
        self.inter_plane_base_km() * (cos_t * cos_t + cos_i * cos_i * sin_t * sin_t).sqrt()
    }
}

/// Grid address of a satellite: slot `s` within the plane, plane `o`.
///
/// Addresses wrap on both axes: `(s, o)` and `(s mod M, o mod N)` name the
/// same satellite. Ordering is lexicographic by `(plane, slot)`, which is the
/// canonical tie-break order used throughout the scheduler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SatelliteId {
    /// Position within the plane, in [0, M).
    pub slot: u32,
    /// Orbital plane index, in [0, N).
    pub plane: u32,
}

impl SatelliteId {
    pub fn new(slot: u32, plane: u32) -> Self {
        Self { slot, plane }
    }

    /// Reduce the address into [0, M) x [0, N) for the given shell.
    pub fn canonical(self, config: &ConstellationConfig) -> Self {
        Self {
            slot: self.slot % config.sats_per_plane,
            plane: self.plane % config.num_planes,
        }
    }
}

impl PartialOrd for SatelliteId {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SatelliteId {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.plane, self.slot).cmp(&(other.plane, other.slot))
    }
}

impl std::fmt::Display for SatelliteId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.slot, self.plane)
    }
}

/// Geodetic subpoint on the spherical Earth model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geodetic {
    pub lat_deg: f64,
    pub lon_deg: f64,
    pub alt_km: f64,
}

/// Propagated satellite state at one simulation instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SatelliteState {
    pub id: SatelliteId,
    /// Seconds since this satellite's ascending equator crossing, in [0, T).
    pub phase_time_s: f64,
    /// Earth-centered, Earth-fixed position (km).
    pub ecef_km: [f64; 3],
    pub geodetic: Geodetic,
    /// True iff geodetic latitude is currently increasing.
    pub ascending: bool,
}

/// Argument of latitude (rad, in [0, 2π)) of satellite `id` at `sim_time`:
/// initial phase `2π s/M + 2π F o/(M N)` advanced by `2π (sim_time-epoch)/T`.
pub fn argument_of_latitude(
    config: &ConstellationConfig,
    id: SatelliteId,
    sim_time_s: f64,
) -> f64 {
    let id = id.canonical(config);
    let m = f64::from(config.sats_per_plane);
    let n = f64::from(config.num_planes);
    let tau = sim_time_s - config.epoch_s;
    let u = TAU * f64::from(id.slot) / m
        + TAU * f64::from(config.phase_offset) * f64::from(id.plane) / (m * n)
        + TAU * tau / config.period_s();
    u.rem_euclid(TAU)
}

/// Phase time (s, in [0, T)) of satellite `id`: time since its most recent
/// ascending equator crossing. This is the `t` of the cross-plane distance
/// law, evaluated per satellite.
pub fn phase_time_s(config: &ConstellationConfig, id: SatelliteId, sim_time_s: f64) -> f64 {
    argument_of_latitude(config, id, sim_time_s) / TAU * config.period_s()
}

/// Propagate satellite `id` to `sim_time` on its circular orbit.
///
/// The plane's ascending node sits at right ascension `o·360°/N`; the
/// inertial frame and ECEF coincide at the epoch, and uniform sidereal
/// rotation is subtracted afterwards. Out-of-range ids wrap.
pub fn satellite_state(
    config: &ConstellationConfig,
    id: SatelliteId,
    sim_time_s: f64,
) -> SatelliteState {
    let id = id.canonical(config);
    let u = argument_of_latitude(config, id, sim_time_s);
    let (sin_u, cos_u) = u.sin_cos();
    let inc = config.inclination_rad();
    let (sin_i, cos_i) = inc.sin_cos();
    let r = config.orbit_radius_km();

    // Orbit-plane position rotated by inclination about the node line.
    let xp = r * cos_u;
    let yp = r * sin_u * cos_i;
    let zp = r * sin_u * sin_i;

    // Rotate by the node right ascension, then subtract Earth rotation.
    let raan = TAU * f64::from(id.plane) / f64::from(config.num_planes);
    let theta = raan - SIDEREAL_RATE_RAD_S * (sim_time_s - config.epoch_s);
    let (sin_th, cos_th) = theta.sin_cos();
    let x = xp * cos_th - yp * sin_th;
    let y = xp * sin_th + yp * cos_th;
    let z = zp;

    let lat_deg = (z / r).asin().to_degrees();
    let lon_deg = normalize_lon_deg(y.atan2(x).to_degrees());

    SatelliteState {
        id,
        phase_time_s: u / TAU * config.period_s(),
        ecef_km: [x, y, z],
        geodetic: Geodetic {
            lat_deg,
            lon_deg,
            alt_km: config.altitude_km,
        },
        // d(lat)/dt has the sign of cos(u) on a prograde circular orbit.
        ascending: cos_u > 0.0,
    }
}

/// Wrap a longitude into [-180, 180).
pub fn normalize_lon_deg(lon_deg: f64) -> f64 {
    let x = (lon_deg + 180.0).rem_euclid(360.0) - 180.0;
    // rem_euclid can return the upper bound after rounding.
    if x >= 180.0 {
        x - 360.0
    } else {
        x
    }
}
