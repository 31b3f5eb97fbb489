//! +Grid torus routing.
//!
//! Hop counts on the +Grid are Manhattan distances with wraparound on both
//! axes. Two hop-minimal routers are provided:
//!
//! - [`baseline_route`]: dimension-order routing, all cross-plane hops first,
//!   then within-plane hops. This is the canonical hop-minimal baseline; it
//!   ignores physical link lengths.
//! - [`optimized_route`]: same hop count, but reorders the interleaving of
//!   cross- and within-plane hops so cross-plane links are taken where the
//!   planes run close together. Within-plane hops shift the node's orbital
//!   phase, so walking along the plane before crossing can shrink every
//!   remaining crossing.
//!
//! The optimizer is greedy on local information. At each node with both hop
//! budgets open it compares the cross-plane distance here against one slot
//! forward and one slot backward along the travel direction:
//!
//! 1. both neighbors more distant than here (a crossing-distance minimum):
//!    cross now;
//! 2. forward strictly closer: step within-plane, deferring the crossing;
//! 3. otherwise: cross now.
//!
//! Equal forward/current distances (within 1e-9 km) defer, which keeps later
//! options open and makes routes deterministic. When one budget runs out the
//! other direction is forced, so the hop count always equals the Manhattan
//! distance. Greedy deferral is not guaranteed to find the cheapest
//! interleaving; its gap to the exhaustive optimum is measured, not assumed.
//!
//! All link lengths are evaluated on a topology snapshot at the job's
//! `sim_time`: a packet crosses the mesh in milliseconds while the geometry
//! drifts over minutes. Cross-plane hops use the source node's phase.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::constellation::{phase_time_s, satellite_state, ConstellationConfig, SatelliteId};

/// Distances within this many km of each other are treated as equal when
/// deciding whether to defer a crossing.
const TIE_EPS_KM: f64 = 1e-9;

/// Which router produced a route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RouteMode {
    Baseline,
    Optimized,
}

/// Optional routing behavior tweaks.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RouteOptions {
    /// When set, cross-plane hops are avoided while the current node's
    /// |latitude| exceeds this threshold (the polar seam), unless the
    /// within-plane budget is already exhausted. Off by default so routes
    /// follow the analytic distance law exactly.
    pub polar_mask_deg: Option<f64>,
}

/// A hop-by-hop route between two satellites on the torus snapshot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Route {
    /// Visited satellites, source first. A route from a node to itself has a
    /// single entry and no links.
    pub path: Vec<SatelliteId>,
    /// Length of each traversed link (km); `link_distances_km.len()` is the
    /// hop count.
    pub link_distances_km: Vec<f64>,
}

impl Route {
    pub fn hops(&self) -> usize {
        self.link_distances_km.len()
    }

    pub fn total_distance_km(&self) -> f64 {
        self.link_distances_km.iter().sum()
    }
}

/// Signed shortest step count from `a` to `b` on a ring of size `n`;
/// positive direction wins exact-half ties.
fn signed_wrap(a: u32, b: u32, n: u32) -> i64 {
    let n = i64::from(n);
    let d = (i64::from(b) - i64::from(a)).rem_euclid(n);
    if 2 * d > n {
        d - n
    } else {
        d
    }
}

/// Minimum hop count between two satellites: wraparound Manhattan distance.
pub fn manhattan_hops(config: &ConstellationConfig, a: SatelliteId, b: SatelliteId) -> u32 {
    let a = a.canonical(config);
    let b = b.canonical(config);
    let ds = signed_wrap(a.slot, b.slot, config.sats_per_plane).unsigned_abs();
    let do_ = signed_wrap(a.plane, b.plane, config.num_planes).unsigned_abs();
    (ds + do_) as u32
}

/// Walk state shared by both routers.
struct Cursor<'a> {
    config: &'a ConstellationConfig,
    sim_time_s: f64,
    here: SatelliteId,
    /// Remaining within-plane steps and their direction (+1/-1).
    vert_left: u64,
    vert_step: i64,
    /// Remaining cross-plane steps and their direction (+1/-1).
    horiz_left: u64,
    horiz_step: i64,
    intra_km: f64,
    path: Vec<SatelliteId>,
    links: Vec<f64>,
}

impl<'a> Cursor<'a> {
    fn new(
        config: &'a ConstellationConfig,
        a: SatelliteId,
        b: SatelliteId,
        sim_time_s: f64,
    ) -> Self {
        let a = a.canonical(config);
        let b = b.canonical(config);
        let ds = signed_wrap(a.slot, b.slot, config.sats_per_plane);
        let do_ = signed_wrap(a.plane, b.plane, config.num_planes);
        Self {
            config,
            sim_time_s,
            here: a,
            vert_left: ds.unsigned_abs(),
            vert_step: ds.signum(),
            horiz_left: do_.unsigned_abs(),
            horiz_step: do_.signum(),
            intra_km: config.intra_plane_distance_km(),
            path: vec![a],
            links: Vec::new(),
        }
    }

    /// Cross-plane link length leaving the node `slot_offset` slots from the
    /// current position, evaluated at that node's phase.
    fn cross_distance_km(&self, slot_offset: i64) -> f64 {
        let m = i64::from(self.config.sats_per_plane);
        let slot = (i64::from(self.here.slot) + slot_offset).rem_euclid(m) as u32;
        let t = phase_time_s(
            self.config,
            SatelliteId::new(slot, self.here.plane),
            self.sim_time_s,
        );
        self.config.inter_plane_distance_km(t)
    }

    fn step_vertical(&mut self) {
        let m = i64::from(self.config.sats_per_plane);
        let slot = (i64::from(self.here.slot) + self.vert_step).rem_euclid(m) as u32;
        self.links.push(self.intra_km);
        self.here = SatelliteId::new(slot, self.here.plane);
        self.vert_left -= 1;
        self.path.push(self.here);
    }

    fn step_horizontal(&mut self) {
        let n = i64::from(self.config.num_planes);
        self.links.push(self.cross_distance_km(0));
        let plane = (i64::from(self.here.plane) + self.horiz_step).rem_euclid(n) as u32;
        self.here = SatelliteId::new(self.here.slot, plane);
        self.horiz_left -= 1;
        self.path.push(self.here);
    }

    /// True when the polar mask forbids crossing at the current node.
    fn masked(&self, options: &RouteOptions) -> bool {
        match options.polar_mask_deg {
            None => false,
            Some(limit) => {
                let lat = satellite_state(self.config, self.here, self.sim_time_s)
                    .geodetic
                    .lat_deg;
                lat.abs() > limit
            }
        }
    }

    fn finish(self) -> Route {
        Route {
            path: self.path,
            link_distances_km: self.links,
        }
    }
}

/// Hop-minimal dimension-order route: every cross-plane hop first, then the
/// within-plane hops. Link lengths come from the snapshot at `sim_time`.
pub fn baseline_route(
    config: &ConstellationConfig,
    a: SatelliteId,
    b: SatelliteId,
    sim_time_s: f64,
) -> Route {
    baseline_route_with_options(config, a, b, sim_time_s, &RouteOptions::default())
}

pub fn baseline_route_with_options(
    config: &ConstellationConfig,
    a: SatelliteId,
    b: SatelliteId,
    sim_time_s: f64,
    options: &RouteOptions,
) -> Route {
    let mut cur = Cursor::new(config, a, b, sim_time_s);
    while cur.horiz_left > 0 || cur.vert_left > 0 {
        if cur.horiz_left > 0 && (cur.vert_left == 0 || !cur.masked(options)) {
            cur.step_horizontal();
        } else {
            cur.step_vertical();
        }
    }
    cur.finish()
}

/// Distance-minimizing hop-preserving route. See the module docs for the
/// decision rules; hop count always equals [`manhattan_hops`].
pub fn optimized_route(
    config: &ConstellationConfig,
    a: SatelliteId,
    b: SatelliteId,
    sim_time_s: f64,
) -> Route {
    optimized_route_with_options(config, a, b, sim_time_s, &RouteOptions::default())
}

pub fn optimized_route_with_options(
    config: &ConstellationConfig,
    a: SatelliteId,
    b: SatelliteId,
    sim_time_s: f64,
    options: &RouteOptions,
) -> Route {
    let mut cur = Cursor::new(config, a, b, sim_time_s);
    while cur.horiz_left > 0 || cur.vert_left > 0 {
        let cross = if cur.horiz_left == 0 {
            false
        } else if cur.vert_left == 0 {
            true
        } else if cur.masked(options) {
            false
        } else {
            let d_cur = cur.cross_distance_km(0);
            let d_fwd = cur.cross_distance_km(cur.vert_step);
            let d_bwd = cur.cross_distance_km(-cur.vert_step);
            if d_fwd > d_cur + TIE_EPS_KM && d_bwd > d_cur + TIE_EPS_KM {
                // Crossing-distance minimum: cross here.
                true
            } else if d_fwd < d_cur - TIE_EPS_KM {
                // Shrinks ahead: defer the crossing.
                false
            } else if (d_fwd - d_cur).abs() <= TIE_EPS_KM {
                // Tie: defer.
                false
            } else {
                // Grows ahead without being at a minimum: cross now.
                true
            }
        };
        if cross {
            cur.step_horizontal();
        } else {
            cur.step_vertical();
        }
    }
    cur.finish()
}

/// Route by the requested mode.
pub fn route(
    config: &ConstellationConfig,
    a: SatelliteId,
    b: SatelliteId,
    sim_time_s: f64,
    mode: RouteMode,
) -> Route {
    match mode {
        RouteMode::Baseline => baseline_route(config, a, b, sim_time_s),
        RouteMode::Optimized => optimized_route(config, a, b, sim_time_s),
    }
}

/// Node visit counts across a set of routes: every satellite on a route's
/// path (endpoints included) is counted once per route containing it.
pub fn contention_counts(routes: &[Route]) -> BTreeMap<SatelliteId, u32> {
    let mut counts = BTreeMap::new();
    for route in routes {
        let unique: BTreeSet<SatelliteId> = route.path.iter().copied().collect();
        for id in unique {
            *counts.entry(id).or_insert(0) += 1;
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::VecDeque;

    fn cfg(n: u32, m: u32) -> ConstellationConfig {
        ConstellationConfig {
            num_planes: n,
            sats_per_plane: m,
            ..Default::default()
        }
    }

    /// Breadth-first hop-count oracle on the torus graph.
    fn bfs_hops(config: &ConstellationConfig, a: SatelliteId, b: SatelliteId) -> u32 {
        let (n, m) = (config.num_planes, config.sats_per_plane);
        let idx = |id: SatelliteId| (id.plane * m + id.slot) as usize;
        let mut dist = vec![u32::MAX; (n * m) as usize];
        let mut q = VecDeque::new();
        dist[idx(a)] = 0;
        q.push_back(a);
        while let Some(cur) = q.pop_front() {
            if cur == b {
                return dist[idx(cur)];
            }
            let d = dist[idx(cur)];
            let neighbors = [
                SatelliteId::new((cur.slot + 1) % m, cur.plane),
                SatelliteId::new((cur.slot + m - 1) % m, cur.plane),
                SatelliteId::new(cur.slot, (cur.plane + 1) % n),
                SatelliteId::new(cur.slot, (cur.plane + n - 1) % n),
            ];
            for nb in neighbors {
                if dist[idx(nb)] == u32::MAX {
                    dist[idx(nb)] = d + 1;
                    q.push_back(nb);
                }
            }
        }
        unreachable!("torus is connected")
    }

    fn assert_route_valid(config: &ConstellationConfig, r: &Route) {
        assert_eq!(r.path.len(), r.hops() + 1);
        for w in r.path.windows(2) {
            let ds = signed_wrap(w[0].slot, w[1].slot, config.sats_per_plane).unsigned_abs();
            let do_ = signed_wrap(w[0].plane, w[1].plane, config.num_planes).unsigned_abs();
            assert_eq!(ds + do_, 1, "non-unit grid step {:?} -> {:?}", w[0], w[1]);
        }
        let sum: f64 = r.link_distances_km.iter().sum();
        assert!((sum - r.total_distance_km()).abs() < 1e-9);
    }

    #[test]
    fn manhattan_examples() {
        let c = cfg(10, 10);
        assert_eq!(
            manhattan_hops(&c, SatelliteId::new(0, 0), SatelliteId::new(3, 0)),
            3
        );
        // Wraparound on the plane axis: 0 -> 7 is 3 hops the short way.
        assert_eq!(
            manhattan_hops(&c, SatelliteId::new(0, 0), SatelliteId::new(0, 7)),
            3
        );
        // (2,3) -> (9,8): min(7, 3) + min(5, 5) = 3 + 5 = 8.
        assert_eq!(
            manhattan_hops(&c, SatelliteId::new(2, 3), SatelliteId::new(9, 8)),
            8
        );
        assert_eq!(
            bfs_hops(&c, SatelliteId::new(2, 3), SatelliteId::new(9, 8)),
            8
        );
    }

    #[test]
    fn manhattan_matches_bfs_oracle() {
        let c = cfg(7, 9);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..300 {
            let a = SatelliteId::new(rng.gen_range(0..9), rng.gen_range(0..7));
            let b = SatelliteId::new(rng.gen_range(0..9), rng.gen_range(0..7));
            assert_eq!(manhattan_hops(&c, a, b), bfs_hops(&c, a, b), "{a} -> {b}");
        }
    }

    #[test]
    fn identical_endpoints_give_empty_route() {
        let c = cfg(10, 10);
        let a = SatelliteId::new(4, 2);
        for r in [
            baseline_route(&c, a, a, 100.0),
            optimized_route(&c, a, a, 100.0),
        ] {
            assert_eq!(r.hops(), 0);
            assert_eq!(r.total_distance_km(), 0.0);
            assert_eq!(r.path, vec![a]);
        }
    }

    #[test]
    fn pure_within_plane_route_uses_constant_links() {
        let c = cfg(10, 10);
        let r = baseline_route(&c, SatelliteId::new(0, 4), SatelliteId::new(3, 4), 55.0);
        assert_eq!(r.hops(), 3);
        let dm = c.intra_plane_distance_km();
        assert!((r.total_distance_km() - 3.0 * dm).abs() < 1e-9);
        // No cross-plane decisions to optimize: identical to baseline.
        let o = optimized_route(&c, SatelliteId::new(0, 4), SatelliteId::new(3, 4), 55.0);
        assert_eq!(r, o);
    }

    #[test]
    fn baseline_is_dimension_order() {
        let c = cfg(10, 10);
        let r = baseline_route(&c, SatelliteId::new(1, 1), SatelliteId::new(3, 4), 0.0);
        // Plane changes first, slot after.
        let planes: Vec<u32> = r.path.iter().map(|id| id.plane).collect();
        assert_eq!(planes, vec![1, 2, 3, 4, 4, 4]);
        assert_route_valid(&c, &r);
    }

    #[test]
    fn hop_preservation_and_distance_dominance() {
        let c = cfg(50, 20);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..500 {
            let a = SatelliteId::new(rng.gen_range(0..20), rng.gen_range(0..50));
            let b = SatelliteId::new(rng.gen_range(0..20), rng.gen_range(0..50));
            let t = rng.gen_range(0.0..c.period_s());
            let base = baseline_route(&c, a, b, t);
            let opt = optimized_route(&c, a, b, t);
            let hops = manhattan_hops(&c, a, b) as usize;
            assert_eq!(base.hops(), hops);
            assert_eq!(opt.hops(), hops);
            assert!(
                opt.total_distance_km() <= base.total_distance_km() + 1e-9,
                "{a} -> {b} at t={t}: {} > {}",
                opt.total_distance_km(),
                base.total_distance_km()
            );
            assert_route_valid(&c, &base);
            assert_route_valid(&c, &opt);
            assert_eq!(base.path.last(), Some(&b.canonical(&c)));
            assert_eq!(opt.path.last(), Some(&b.canonical(&c)));
        }
    }

    #[test]
    fn optimized_prefers_cheap_crossings() {
        // Start at the equator (max cross-plane distance) heading toward the
        // pole: every crossing should happen at a shorter link than the
        // baseline pays at the start.
        let c = cfg(10, 20);
        let a = SatelliteId::new(0, 0);
        let b = SatelliteId::new(5, 3);
        let base = baseline_route(&c, a, b, 0.0);
        let opt = optimized_route(&c, a, b, 0.0);
        assert!(opt.total_distance_km() < base.total_distance_km());
    }

    #[test]
    fn polar_mask_defers_crossings() {
        let c = cfg(10, 20);
        let options = RouteOptions {
            polar_mask_deg: Some(85.0),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let a = SatelliteId::new(rng.gen_range(0..20), rng.gen_range(0..10));
            let b = SatelliteId::new(rng.gen_range(0..20), rng.gen_range(0..10));
            let t = rng.gen_range(0.0..c.period_s());
            let r = optimized_route_with_options(&c, a, b, t, &options);
            assert_eq!(r.hops(), manhattan_hops(&c, a, b) as usize);
            // Crossings above the mask only happen when forced (no
            // within-plane budget left at that point).
            let mut vert_remaining: i64 = signed_wrap(a.slot, b.slot, 20).abs();
            for w in r.path.windows(2) {
                let lat = satellite_state(&c, w[0], t).geodetic.lat_deg;
                if w[0].plane != w[1].plane && lat.abs() > 85.0 {
                    assert_eq!(vert_remaining, 0, "unforced masked crossing at {}", w[0]);
                }
                if w[0].slot != w[1].slot {
                    vert_remaining -= 1;
                }
            }
        }
    }

    #[test]
    fn contention_counting() {
        let c = cfg(10, 10);
        assert!(contention_counts(&[]).is_empty());
        let r = baseline_route(&c, SatelliteId::new(0, 0), SatelliteId::new(3, 0), 0.0);
        let counts = contention_counts(&[r.clone()]);
        assert_eq!(counts.len(), 4);
        assert!(counts.values().all(|&v| v == 1));
        // Two routes sharing nodes: shared nodes count once per route.
        let r2 = baseline_route(&c, SatelliteId::new(1, 0), SatelliteId::new(3, 0), 0.0);
        let counts = contention_counts(&[r.clone(), r2.clone()]);
        for id in &r2.path {
            let in_r1 = r.path.contains(id);
            assert_eq!(counts[id], if in_r1 { 2 } else { 1 });
        }
    }

    #[test]
    fn signed_wrap_prefers_positive_on_ties() {
        assert_eq!(signed_wrap(0, 5, 10), 5);
        assert_eq!(signed_wrap(0, 6, 10), -4);
        assert_eq!(signed_wrap(0, 4, 10), 4);
        assert_eq!(signed_wrap(7, 2, 10), 5);
    }
}
