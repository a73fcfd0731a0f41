//! Quadruples with a prescribed growth ratio `log max|a_i| / log |n|`.
//!
//! Evaluating a family at `y^l1` and scaling by `y^l2` moves the ratio to
//! `(D l1 + l2) / (N l1 + 2 l2)` as `y` grows, where `D` and `N` are the
//! degrees of the largest element and of `n`. `sec2_main` (`D = 6, N = 2`)
//! covers `[1/2, 3]`, `two_fifths` (`D = 4, N = 10`) covers `[2/5, 1/2]`.

use num_traits::{One, Signed, ToPrimitive};

use super::ConstructionError;
use crate::arith::{is_perfect_square, ln_abs, Int, Rat};
use crate::families::{lookup, Family};
use crate::tuples::Tuple;

/// `y_base` never exceeds `2^Y_BASE_CAP_BITS`.
pub const Y_BASE_CAP_BITS: u64 = 128;
/// Initial bound on `l1 + l2`; doubled up to [`SCHEDULE_CAP_MAX`] when no
/// schedule is close enough.
pub const SCHEDULE_CAP: u32 = 64;
pub const SCHEDULE_CAP_MAX: u32 = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessPlan {
    pub family_id: String,
    pub l1: u32,
    pub l2: u32,
    pub y_base: Int,
    pub target_delta: Rat,
    pub epsilon: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub plan: WitnessPlan,
    /// The `y` actually used (at least `plan.y_base`).
    pub y: Int,
    pub tuple: Tuple,
    pub achieved_ratio: f64,
}

fn degrees(f: &Family) -> (u32, u32) {
    let d = f
        .elements
        .iter()
        .filter_map(|e| e.degree())
        .max()
        .unwrap_or(0);
    (d as u32, f.n.degree().unwrap_or(0) as u32)
}

fn schedule_ratio(f: &Family, l1: u32, l2: u32) -> Rat {
    let (d, n) = degrees(f);
    Rat::new((d * l1 + l2).into(), (n * l1 + 2 * l2).into())
}

impl WitnessPlan {
    pub fn family(&self) -> &'static Family {
        lookup(&self.family_id).expect("plans only name registered families")
    }

    /// The limit of the ratio as `y` grows.
    pub fn schedule_ratio(&self) -> Rat {
        schedule_ratio(self.family(), self.l1, self.l2)
    }

    /// Leading-order prediction of the ratio at `y`.
    fn predicted_ratio(&self, y: &Int) -> f64 {
        let f = self.family();
        let (d, n) = degrees(f);
        let (cd, cn) = if self.l1 == 0 {
            let t = f.eval(&Int::one()).expect("parameter 1 is admissible");
            (ln_abs(&t.max_abs()), ln_abs(t.n()))
        } else {
            let lead_d = f
                .elements
                .iter()
                .filter(|e| e.degree() == Some(d as usize))
                .map(|e| e.leading().expect("nonzero").abs())
                .max()
                .expect("some element has top degree");
            let lead_n = f.n.leading().expect("nonzero").abs();
            (
                lead_d.to_f64().expect("finite").ln(),
                lead_n.to_f64().expect("finite").ln(),
            )
        };
        let l = ln_abs(y);
        let ed = (d * self.l1 + self.l2) as f64;
        let en = (n * self.l1 + 2 * self.l2) as f64;
        (cd + ed * l) / (cn + en * l)
    }

    /// The quadruple for a given `y`: the family at `y^l1`, scaled by `y^l2`.
    pub fn instance(&self, y: &Int) -> Result<Tuple, ConstructionError> {
        let base = self.family().eval(&y.pow(self.l1))?;
        Ok(base.scale(&y.pow(self.l2))?)
    }
}

/// Chooses a family, a schedule `(l1, l2)` within `epsilon/2` of `delta`
/// (closest first, then lexicographically smallest) and the smallest power
/// of two `y_base` whose leading-order ratio is within `epsilon` of `delta`.
pub fn plan_witness(delta: &Rat, epsilon: f64) -> Result<WitnessPlan, ConstructionError> {
    let lo = Rat::new(2.into(), 5.into());
    let half = Rat::new(1.into(), 2.into());
    let hi = Rat::from_integer(3.into());
    if *delta < lo || *delta > hi {
        return Err(ConstructionError::DeltaOutOfRange(delta.clone()));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(ConstructionError::BadEpsilon(epsilon));
    }
    // v = 1 is degenerate for two_fifths, so it needs l1 >= 1.
    let (family_id, min_l1) = if *delta >= half {
        ("sec2_main", 0)
    } else {
        ("two_fifths", 1)
    };
    let family = lookup(family_id)?;
    let target = delta.to_f64().expect("finite");

    let mut cap = SCHEDULE_CAP;
    let (l1, l2) = loop {
        let mut best: Option<(Rat, u32, u32)> = None;
        for l1 in min_l1..=cap {
            for l2 in 0..=(cap - l1) {
                if l1 == 0 && l2 == 0 {
                    continue;
                }
                let err = (schedule_ratio(family, l1, l2) - delta).abs();
                if best.as_ref().is_none_or(|(e, _, _)| err < *e) {
                    best = Some((err, l1, l2));
                }
            }
        }
        let (err, l1, l2) = best.expect("nonempty schedule grid");
        let err = err.to_f64().expect("finite");
        if err < epsilon / 2.0 {
            break (l1, l2);
        }
        if cap >= SCHEDULE_CAP_MAX {
            return Err(ConstructionError::ScheduleUnreachable {
                delta: delta.clone(),
                best: err,
            });
        }
        cap *= 2;
    };

    let mut plan = WitnessPlan {
        family_id: family_id.to_string(),
        l1,
        l2,
        y_base: Int::from(2),
        target_delta: delta.clone(),
        epsilon,
    };
    while (plan.predicted_ratio(&plan.y_base) - target).abs() >= epsilon {
        plan.y_base *= 2;
        if plan.y_base.bits() > Y_BASE_CAP_BITS {
            return Err(ConstructionError::CapReached);
        }
    }
    Ok(plan)
}

/// Builds the witness: starts at `y_base`, steps `y` by one past square or
/// degenerate `n`, and doubles `y` while the ratio is not within `epsilon`.
pub fn execute_witness(plan: &WitnessPlan) -> Result<Witness, ConstructionError> {
    let delta = plan.target_delta.to_f64().expect("finite");
    let mut y = plan.y_base.clone();
    loop {
        if y.bits() > Y_BASE_CAP_BITS + 1 {
            return Err(ConstructionError::CapReached);
        }
        let tuple = match plan.instance(&y) {
            Ok(t) => t,
            Err(ConstructionError::Family(_)) => {
                y += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        if is_perfect_square(tuple.n()) {
            y += 1;
            continue;
        }
        tuple.verify()?;
        let ratio = tuple
            .metrics()
            .log_ratio
            .ok_or_else(|| ConstructionError::Internal("|n| = 1 in a witness".into()))?;
        if (ratio - delta).abs() < plan.epsilon {
            return Ok(Witness {
                plan: plan.clone(),
                y,
                tuple,
                achieved_ratio: ratio,
            });
        }
        y *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_from_ints;

    fn plan(num: i64, den: i64, eps: f64) -> WitnessPlan {
        plan_witness(&rat_from_ints(num, den), eps).unwrap()
    }

    #[test]
    fn schedules() {
        let p = plan(3, 1, 0.2);
        assert_eq!((p.family_id.as_str(), p.l1, p.l2), ("sec2_main", 1, 0));
        let p = plan(2, 5, 0.2);
        assert_eq!((p.family_id.as_str(), p.l1, p.l2), ("two_fifths", 1, 0));
        let p = plan(1, 2, 0.1);
        assert_eq!((p.family_id.as_str(), p.l1, p.l2), ("sec2_main", 0, 1));
        let p = plan(9, 20, 0.05);
        assert_eq!((p.family_id.as_str(), p.l1, p.l2), ("two_fifths", 1, 5));
        let p = plan(1, 1, 0.05);
        assert_eq!((p.l1, p.l2), (1, 4));
        let p = plan(2, 1, 0.05);
        assert_eq!((p.l1, p.l2), (3, 2));
        let p = plan(29, 10, 0.05);
        assert_eq!((p.l1, p.l2), (24, 1));
    }

    #[test]
    fn range_and_epsilon_checks() {
        assert!(matches!(
            plan_witness(&rat_from_ints(3, 10), 0.1),
            Err(ConstructionError::DeltaOutOfRange(_))
        ));
        assert!(matches!(
            plan_witness(&rat_from_ints(31, 10), 0.1),
            Err(ConstructionError::DeltaOutOfRange(_))
        ));
        assert!(matches!(
            plan_witness(&rat_from_ints(1, 1), 0.0),
            Err(ConstructionError::BadEpsilon(_))
        ));
    }

    #[test]
    fn fine_epsilon_extends_schedule_grid() {
        // 1.2345 is not hit within 5e-4 by l1 + l2 <= 64
        let p = plan(12345, 10000, 1e-3);
        assert!(p.l1 + p.l2 > SCHEDULE_CAP);
        let err = (p.schedule_ratio() - rat_from_ints(12345, 10000)).abs();
        assert!(err.to_f64().unwrap() < 5e-4);
        let w = execute_witness(&p).unwrap();
        assert!((w.achieved_ratio - 1.2345).abs() < 1e-3);
    }

    #[test]
    fn top_endpoint_witness() {
        let w = execute_witness(&plan(3, 1, 0.1)).unwrap();
        assert!(w.achieved_ratio > 2.9 && w.achieved_ratio < 3.0);
        assert!(w.tuple.n().is_negative());
        // the parameter k = y is on the order of 10^8
        assert!(w.y > Int::from(10u64.pow(7)) && w.y < Int::from(10u64.pow(9)));
    }

    #[test]
    fn half_witness_is_scaled_fixed_instance() {
        let w = execute_witness(&plan(1, 2, 0.05)).unwrap();
        assert!(w.achieved_ratio > 0.45 && w.achieved_ratio < 0.55);
        assert!(!is_perfect_square(w.tuple.n()));
        let base = lookup("sec2_main").unwrap().eval(&Int::one()).unwrap();
        assert_eq!(w.tuple, base.scale(&w.y).unwrap());
    }

    #[test]
    fn doubling_improves_ratio() {
        for p in [
            plan(3, 1, 0.1),
            plan(2, 5, 0.05),
            plan(1, 1, 0.05),
            plan(1, 2, 0.05),
        ] {
            let delta = p.target_delta.to_f64().unwrap();
            let mut y = Int::from(16);
            let mut last = f64::INFINITY;
            for _ in 0..6 {
                let t = p.instance(&y).unwrap();
                let err = (t.metrics().log_ratio.unwrap() - delta).abs();
                assert!(err < last, "{} l1={} l2={} y={y}", p.family_id, p.l1, p.l2);
                last = err;
                y *= 2;
            }
        }
    }
}
