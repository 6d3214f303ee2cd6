use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion_space::Pair;
use crate::scalar::Real;

/// Interpolation profile within one step, as a function of `s ∈ [0, 1]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ramp {
    /// `½(1 − cos πs)`: zero slope at both ends.
    #[default]
    Cosine,
    Linear,
}

impl Ramp {
    pub fn value<T: Real>(self, s: T) -> T {
        let s = if s < T::zero() {
            T::zero()
        } else if s > T::one() {
            T::one()
        } else {
            s
        };
        match self {
            Ramp::Cosine => (T::one() - (T::pi() * s).cos()) / T::lit(2.0),
            Ramp::Linear => s,
        }
    }
}

/// What happens during one step of a schedule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Segment {
    /// Ramp channel `off` from `ε_max` down to the floor while channel `on`
    /// ramps from the floor up to `ε_max`.
    Transfer { off: usize, on: usize },
    /// Keep every coupling constant.
    Hold,
}

/// Piecewise coupling protocol over `channels` independent couplings.
///
/// Every channel is either "on" (`ε_max`) or "off" (`floor`) at segment
/// boundaries. Each segment lasts `step_time`.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingSchedule<T: Real> {
    initial_on: Vec<bool>,
    segments: Vec<Segment>,
    step_time: T,
    eps_max: T,
    floor: T,
    ramp: Ramp,
}

impl<T: Real> CouplingSchedule<T> {
    /// Builds and validates a schedule: every transfer must switch off a
    /// channel that is on and switch on one that is off.
    pub fn new(initial_on: Vec<bool>, segments: Vec<Segment>, step_time: T, eps_max: T, floor: T, ramp: Ramp) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidSchedule(m));
        if segments.is_empty() {
            return bad("schedule has no segments".into());
        }
        if !(step_time.is_finite() && step_time > T::zero()) {
            return bad(format!("step time must be positive, got {}", step_time.as_f64()));
        }
        if !(eps_max.is_finite() && eps_max > T::zero()) {
            return bad(format!("eps_max must be positive, got {}", eps_max.as_f64()));
        }
        if !(floor.is_finite() && floor >= T::zero()) {
            return bad(format!("floor must be non-negative, got {}", floor.as_f64()));
        }
        if floor >= eps_max {
            return bad(format!(
                "floor {} must be below eps_max {}",
                floor.as_f64(),
                eps_max.as_f64()
            ));
        }
        let mut on = initial_on.clone();
        for (k, seg) in segments.iter().enumerate() {
            if let Segment::Transfer { off, on: up } = *seg {
                if off >= on.len() || up >= on.len() || off == up {
                    return bad(format!("segment {k} references invalid channels ({off}, {up})"));
                }
                if !on[off] || on[up] {
                    return bad(format!("segment {k} must hand over from an on channel to an off channel"));
                }
                on[off] = false;
                on[up] = true;
            }
        }
        Ok(Self {
            initial_on,
            segments,
            step_time,
            eps_max,
            floor,
            ramp,
        })
    }

    /// The three-step T-junction cycle over channels `[L, R, B]`: starting
    /// with only `B` on, hand over `B → L`, then `L → R`, then `R → B`.
    pub fn default_braid(eps_max: T, step_time: T, floor: T, ramp: Ramp) -> Result<Self> {
        let (l, r, b) = (Pair::L.index(), Pair::R.index(), Pair::B.index());
        Self::new(
            vec![false, false, true],
            vec![
                Segment::Transfer { off: b, on: l },
                Segment::Transfer { off: l, on: r },
                Segment::Transfer { off: r, on: b },
            ],
            step_time,
            eps_max,
            floor,
            ramp,
        )
    }

    /// A schedule that keeps the initial couplings fixed for `steps` steps.
    pub fn stationary(initial_on: Vec<bool>, steps: usize, step_time: T, eps_max: T, floor: T) -> Result<Self> {
        Self::new(initial_on, vec![Segment::Hold; steps], step_time, eps_max, floor, Ramp::Cosine)
    }

    /// The same path traversed backwards in time.
    pub fn reversed(&self) -> Self {
        let segments = self
            .segments
            .iter()
            .rev()
            .map(|s| match *s {
                Segment::Transfer { off, on } => Segment::Transfer { off: on, on: off },
                Segment::Hold => Segment::Hold,
            })
            .collect();
        Self {
            initial_on: self.on_after(self.segments.len()),
            segments,
            ..self.clone()
        }
    }

    pub fn channels(&self) -> usize {
        self.initial_on.len()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn step_time(&self) -> T {
        self.step_time
    }

    pub fn total_time(&self) -> T {
        self.step_time * T::lit(self.segments.len() as f64)
    }

    pub fn eps_max(&self) -> T {
        self.eps_max
    }

    pub fn floor(&self) -> T {
        self.floor
    }

    pub fn ramp(&self) -> Ramp {
        self.ramp
    }

    pub fn initial_on(&self) -> &[bool] {
        &self.initial_on
    }

    /// Whether the channel configuration at the end equals the start.
    pub fn is_closed(&self) -> bool {
        self.on_after(self.segments.len()) == self.initial_on
    }

    /// On/off pattern after the first `k` segments.
    pub fn on_after(&self, k: usize) -> Vec<bool> {
        let mut on = self.initial_on.clone();
        for seg in &self.segments[..k.min(self.segments.len())] {
            if let Segment::Transfer { off, on: up } = *seg {
                on[off] = false;
                on[up] = true;
            }
        }
        on
    }

    /// Start time of segment `k`.
    pub fn boundary(&self, k: usize) -> T {
        self.step_time * T::lit(k as f64)
    }

    /// Couplings of every channel at time `t`, clamped to `[0, total_time]`.
    pub fn couplings(&self, t: T) -> Vec<T> {
        let tau = t / self.step_time;
        let nseg = self.segments.len();
        let tau = if tau < T::zero() {
            T::zero()
        } else if tau > T::lit(nseg as f64) {
            T::lit(nseg as f64)
        } else {
            tau
        };
        let k = tau.floor().to_usize().unwrap_or(0).min(nseg - 1);
        let s = self.ramp.value(tau - T::lit(k as f64));
        let span = self.eps_max - self.floor;
        let on = self.on_after(k);
        let mut eps: Vec<T> = on.iter().map(|&b| if b { self.eps_max } else { self.floor }).collect();
        if let Segment::Transfer { off, on: up } = self.segments[k] {
            eps[off] = self.floor + span * (T::one() - s);
            eps[up] = self.floor + span * s;
        }
        eps
    }
}
