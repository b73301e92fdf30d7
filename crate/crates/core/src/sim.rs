//! Synchronous broadcast simulator on a finite window.
//!
//! Each round every permitted sensor with pending traffic broadcasts to its
//! affected set. A reception at `c` from transmitter `a` fails when another
//! simultaneous transmitter also has `c` in its affected set; a transmitter
//! is in its own affected set, so a sensor that transmits cannot receive.
//! Only sensors whose whole affected set lies inside the window transmit;
//! the others listen.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{same_dim, CosetSpace, Window};
use crate::oracle::tiling_deployment;
use crate::schedule::{build_schedule, slot_at_time};
use crate::tiling::PeriodicTiling;

/// Medium access rule deciding who may transmit in a round.
#[derive(Clone, Debug, PartialEq)]
pub enum Mac {
    /// The tiling schedule.
    TilingTdma,
    /// One slot per transmitting sensor, in lexicographic order.
    NaiveTdmaRoundRobin,
    /// Each sensor draws a fixed slot uniformly from `1..=m`.
    RandomSlot { m: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Traffic {
    AlwaysBacklogged,
    /// One new message per sensor and round with probability `p`.
    Bernoulli {
        p: f64,
    },
}

/// `seed` drives every random choice; the MAC and the traffic model draw
/// from separate ChaCha8 streams of it.
#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub window: Window,
    pub rounds: u64,
    pub mac: Mac,
    pub traffic: Traffic,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimReport {
    pub rounds: u64,
    pub attempted: u64,
    pub delivered: u64,
    /// Receptions lost to interference.
    pub collisions: u64,
    /// Transmissions with at least one lost reception.
    pub retransmissions: u64,
    pub collision_free: bool,
    /// Slot period of the MAC.
    pub period: u64,
    /// Transmissions per slot of the MAC period.
    pub slot_histogram: BTreeMap<u64, u64>,
}

impl SimReport {
    /// `metric,value` rows; histogram entries appear as `slot_<k>`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("metric,value\n");
        let rows: [(&str, String); 7] = [
            ("rounds", self.rounds.to_string()),
            ("attempted", self.attempted.to_string()),
            ("delivered", self.delivered.to_string()),
            ("collisions", self.collisions.to_string()),
            ("retransmissions", self.retransmissions.to_string()),
            ("collision_free", self.collision_free.to_string()),
            ("period", self.period.to_string()),
        ];
        for (k, v) in rows {
            out.push_str(&format!("{k},{v}\n"));
        }
        for (slot, n) in &self.slot_histogram {
            out.push_str(&format!("slot_{slot},{n}\n"));
        }
        out
    }
}

/// Mixes a stream tag into a seed so MAC and traffic draw independent
/// sequences from one configured seed.
fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn run_sim(tiling: &PeriodicTiling, cfg: &SimConfig) -> Result<SimReport> {
    if cfg.rounds == 0 {
        return Err(Error::BadConfig("rounds must be at least 1".into()));
    }
    same_dim(tiling.dim(), cfg.window.dim())?;
    if let Traffic::Bernoulli { p, .. } = cfg.traffic {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::BadConfig(format!(
                "arrival probability {p} outside [0, 1]"
            )));
        }
    }
    if let Mac::RandomSlot { m: 0 } = cfg.mac {
        return Err(Error::BadConfig(
            "random slot count must be positive".into(),
        ));
    }

    let schedule = build_schedule(tiling)?;
    let space = CosetSpace::new(&tiling.basis)?;
    let deployment = tiling_deployment(tiling)?;
    let window = &cfg.window;
    let points = window.points();

    // Transmitting sensors and their receivers (window indices, self excluded).
    struct Sender {
        slot: u32,
        receivers: Vec<usize>,
        me: usize,
    }
    let mut senders = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let c = space.coset_of(p)?;
        let tile = &tiling.prototiles[deployment[c.0]];
        let mut receivers = Vec::with_capacity(tile.len());
        let mut inside = true;
        for cell in tile.cells() {
            match window.linear_index(&p.checked_add(cell)?) {
                Some(j) if j != i => receivers.push(j),
                Some(_) => {}
                None => {
                    inside = false;
                    break;
                }
            }
        }
        if inside {
            senders.push(Sender {
                slot: schedule.slot_of_coset()[c.0],
                receivers,
                me: i,
            });
        }
    }

    let (period, slots): (u64, Vec<u32>) = match &cfg.mac {
        Mac::TilingTdma => (
            schedule.m() as u64,
            senders.iter().map(|s| s.slot).collect(),
        ),
        Mac::NaiveTdmaRoundRobin => (
            senders.len().max(1) as u64,
            (1..=senders.len() as u32).collect(),
        ),
        Mac::RandomSlot { m } => {
            let mut rng = rng_for(cfg.seed, 1);
            (
                *m as u64,
                senders.iter().map(|_| rng.gen_range(1..=*m)).collect(),
            )
        }
    };

    let mut traffic_rng = match cfg.traffic {
        Traffic::Bernoulli { .. } => Some(rng_for(cfg.seed, 2)),
        Traffic::AlwaysBacklogged => None,
    };
    let mut queue = vec![0u64; senders.len()];
    let mut heard = vec![0u32; points.len()];
    let mut active: Vec<usize> = Vec::with_capacity(senders.len());
    let mut report = SimReport {
        rounds: cfg.rounds,
        attempted: 0,
        delivered: 0,
        collisions: 0,
        retransmissions: 0,
        collision_free: true,
        period,
        slot_histogram: BTreeMap::new(),
    };

    for time in 1..=cfg.rounds as i64 {
        let slot = slot_at_time(time, period as u32);
        if let (Traffic::Bernoulli { p }, Some(rng)) = (&cfg.traffic, traffic_rng.as_mut()) {
            for q in queue.iter_mut() {
                if rng.gen_bool(*p) {
                    *q += 1;
                }
            }
        }
        active.clear();
        for k in 0..senders.len() {
            let pending = matches!(cfg.traffic, Traffic::AlwaysBacklogged) || queue[k] > 0;
            if pending && slots[k] == slot {
                active.push(k);
            }
        }
        if active.is_empty() {
            continue;
        }
        for &k in &active {
            let s = &senders[k];
            heard[s.me] += 1;
            for &r in &s.receivers {
                heard[r] += 1;
            }
        }
        for &k in &active {
            let s = &senders[k];
            let lost = s.receivers.iter().filter(|&&r| heard[r] > 1).count() as u64;
            report.attempted += 1;
            report.collisions += lost;
            report.delivered += s.receivers.len() as u64 - lost;
            if lost > 0 {
                report.retransmissions += 1;
            } else if queue[k] > 0 {
                queue[k] -= 1;
            }
        }
        for &k in &active {
            let s = &senders[k];
            heard[s.me] = 0;
            for &r in &s.receivers {
                heard[r] = 0;
            }
        }
        *report.slot_histogram.entry(slot as u64).or_default() += active.len() as u64;
    }
    report.collision_free = report.collisions == 0;
    Ok(report)
}
