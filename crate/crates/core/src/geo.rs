//! Area-of-interest membership and node selection.
//!
//! A job targets a geographic bounding box (the AOI). A satellite is "within"
//! the AOI iff its geodetic subpoint falls inside the box, and every job works
//! with either ascending or descending satellites, never a mix: opposing
//! trajectories pass at relative velocities that rule out stable laser links.

use std::io::Read;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constellation::{
    normalize_lon_deg, satellite_state, ConstellationConfig, SatelliteId, SatelliteState,
    EARTH_RADIUS_KM,
};
use crate::error::{Error, Result};

/// Trajectory direction a job is pinned to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Ascending,
    Descending,
}

/// Geographic bounding box given by its upper-left and lower-right corners.
///
/// When `ul_lon > lr_lon` the longitude interval wraps across the dateline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeoBoundingBox {
    pub ul_lat_deg: f64,
    pub ul_lon_deg: f64,
    pub lr_lat_deg: f64,
    pub lr_lon_deg: f64,
}

impl GeoBoundingBox {
    pub fn new(ul_lat_deg: f64, ul_lon_deg: f64, lr_lat_deg: f64, lr_lon_deg: f64) -> Self {
        Self {
            ul_lat_deg,
            ul_lon_deg,
            lr_lat_deg,
            lr_lon_deg,
        }
    }

    /// Continental United States, 24°-49° N by 125°-66° W.
    pub fn continental_us() -> Self {
        Self::new(49.0, -125.0, 24.0, -66.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.ul_lat_deg > self.lr_lat_deg) {
            return Err(Error::InvalidConfig(format!(
                "bounding box upper-left latitude {} must exceed lower-right latitude {}",
                self.ul_lat_deg, self.lr_lat_deg
            )));
        }
        Ok(())
    }

    /// Point-in-box test with dateline wraparound on the longitude axis.
    pub fn contains(&self, lat_deg: f64, lon_deg: f64) -> bool {
        if lat_deg > self.ul_lat_deg || lat_deg < self.lr_lat_deg {
            return false;
        }
        let lon = normalize_lon_deg(lon_deg);
        let west = normalize_lon_deg(self.ul_lon_deg);
        let east = normalize_lon_deg(self.lr_lon_deg);
        if west <= east {
            (west..=east).contains(&lon)
        } else {
            lon >= west || lon <= east
        }
    }
}

/// Classification of a satellite relative to an AOI at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AoiState {
    WithinAscending,
    WithinDescending,
    Outside,
}

/// A ground station; the bundled dataset lists world cities with population
/// above one million, the eligibility bar for randomized LOS selection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundStation {
    pub name: String,
    pub lat_deg: f64,
    pub lon_deg: f64,
    pub population: u64,
}

/// Parse ground stations from CSV with header `name,lat_deg,lon_deg,population`.
pub fn ground_stations_from_csv<R: Read>(reader: R) -> Result<Vec<GroundStation>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let mut out = Vec::new();
    for record in rdr.deserialize() {
        let station: GroundStation = record?;
        out.push(station);
    }
    Ok(out)
}

/// The bundled station list (20 cities, population > 1M each).
pub fn default_ground_stations() -> Vec<GroundStation> {
    ground_stations_from_csv(include_str!("../data/ground_stations.csv").as_bytes())
        .expect("bundled station csv parses")
}

/// Great-circle distance (km) between two points on the spherical Earth.
pub fn great_circle_km(lat1_deg: f64, lon1_deg: f64, lat2_deg: f64, lon2_deg: f64) -> f64 {
    let (p1, l1) = (lat1_deg.to_radians(), lon1_deg.to_radians());
    let (p2, l2) = (lat2_deg.to_radians(), lon2_deg.to_radians());
    let sin_dp = ((p2 - p1) / 2.0).sin();
    let sin_dl = ((l2 - l1) / 2.0).sin();
    let h = sin_dp * sin_dp + p1.cos() * p2.cos() * sin_dl * sin_dl;
    2.0 * EARTH_RADIUS_KM * h.sqrt().min(1.0).asin()
}

/// Classify a satellite state against an AOI.
pub fn classify_aoi_state(state: &SatelliteState, aoi: &GeoBoundingBox) -> AoiState {
    if aoi.contains(state.geodetic.lat_deg, state.geodetic.lon_deg) {
        if state.ascending {
            AoiState::WithinAscending
        } else {
            AoiState::WithinDescending
        }
    } else {
        AoiState::Outside
    }
}

/// All satellites whose subpoint is inside `aoi` at `sim_time` and whose
/// trajectory matches `direction`, in canonical (plane, slot) order.
///
/// An empty result is a valid answer meaning no coverage right now.
pub fn select_aoi_nodes(
    config: &ConstellationConfig,
    aoi: &GeoBoundingBox,
    sim_time_s: f64,
    direction: Direction,
) -> Vec<SatelliteId> {
    let want = match direction {
        Direction::Ascending => AoiState::WithinAscending,
        Direction::Descending => AoiState::WithinDescending,
    };
    let mut out = Vec::new();
    for plane in 0..config.num_planes {
        for slot in 0..config.sats_per_plane {
            let id = SatelliteId::new(slot, plane);
            let state = satellite_state(config, id, sim_time_s);
            if classify_aoi_state(&state, aoi) == want {
                out.push(id);
            }
        }
    }
    out
}

/// The satellite whose subpoint is nearest the station by great-circle
/// distance; ties break to the smallest (plane, slot).
pub fn select_los_node(
    config: &ConstellationConfig,
    station: &GroundStation,
    sim_time_s: f64,
) -> SatelliteId {
    let mut best: Option<(f64, SatelliteId)> = None;
    for plane in 0..config.num_planes {
        for slot in 0..config.sats_per_plane {
            let id = SatelliteId::new(slot, plane);
            let state = satellite_state(config, id, sim_time_s);
            let d = great_circle_km(
                state.geodetic.lat_deg,
                state.geodetic.lon_deg,
                station.lat_deg,
                station.lon_deg,
            );
            let better = match best {
                None => true,
                Some((bd, bid)) => d < bd || (d == bd && id < bid),
            };
            if better {
                best = Some((d, id));
            }
        }
    }
    best.expect("constellation is non-empty").1
}

/// Draw two disjoint subsets of `aoi_nodes`, each of size
/// `k = floor(fraction·|aoi_nodes|)`, by a seeded shuffle-then-split.
///
/// Returns `(collectors, mappers)`. Fails when the pool cannot host two
/// disjoint groups of the requested size, or when `k` comes out zero.
pub fn select_collectors_and_mappers(
    aoi_nodes: &[SatelliteId],
    fraction: f64,
    rng_seed: u64,
) -> Result<(Vec<SatelliteId>, Vec<SatelliteId>)> {
    if !(0.0..=1.0).contains(&fraction) {
        return Err(Error::InvalidInput(format!(
            "selection fraction {fraction} outside [0, 1]"
        )));
    }
    let n = aoi_nodes.len();
    let k = (fraction * n as f64).floor() as usize;
    let needed = 2 * (fraction * n as f64).ceil() as usize;
    if k == 0 || n < needed {
        return Err(Error::JobInfeasible(format!(
            "{n} AOI nodes cannot host two disjoint groups at fraction {fraction}"
        )));
    }
    let mut pool: Vec<SatelliteId> = aoi_nodes.to_vec();
    pool.sort();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    pool.shuffle(&mut rng);
    let collectors = pool[..k].to_vec();
    let mappers = pool[k..2 * k].to_vec();
    Ok((collectors, mappers))
}
