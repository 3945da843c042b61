//! Exhaustive checker for the conditional local-lemma bound: with independent
//! trials, events of probability at most p, and pairwise-intersecting event
//! supports captured by a dependency graph Γ with 4pΔ(Γ) ≤ 1, conditioning on
//! avoiding every event inflates P(E) by at most exp(6pN), where N counts the
//! events whose support meets supp(E).

use crate::error::{Error, Result};
use crate::rational::{rat_to_f64, Rat};
use num_traits::Zero;

/// An independent finite random variable: outcome `i` has probability
/// `probs[i]`; the probabilities must sum to 1.
#[derive(Clone, Debug)]
pub struct DiscreteVar {
    pub probs: Vec<Rat>,
}

impl DiscreteVar {
    pub fn uniform(outcomes: usize) -> Self {
        DiscreteVar {
            probs: vec![Rat::new(1, outcomes as i128); outcomes],
        }
    }

    pub fn fair_coin() -> Self {
        Self::uniform(2)
    }
}

/// Predicate over a full outcome vector.
pub type EventPredicate = Box<dyn Fn(&[usize]) -> bool + Sync>;

/// An event over the product space. `support` lists the variable indices the
/// predicate genuinely depends on (a contract the caller must honor).
pub struct EventSpec {
    pub support: Vec<usize>,
    pub pred: EventPredicate,
}

impl EventSpec {
    pub fn new(support: Vec<usize>, pred: impl Fn(&[usize]) -> bool + Sync + 'static) -> Self {
        EventSpec { support, pred: Box::new(pred) }
    }

    /// Event: every variable in `support` takes the given outcome.
    pub fn all_equal(support: Vec<usize>, outcome: usize) -> Self {
        let vars = support.clone();
        EventSpec::new(support, move |x| vars.iter().all(|&v| x[v] == outcome))
    }
}

#[derive(Clone, Debug)]
pub struct LllReport {
    /// P(E | ∩ ¬E_j); None when the conditioning event has probability 0
    pub conditional: Option<Rat>,
    pub p_target: Rat,
    /// max_j P(E_j), 0 with no events
    pub p_max: Rat,
    /// number of events whose support meets supp(E)
    pub n_overlap: usize,
    pub gamma_max_degree: usize,
    /// 4 p Δ(Γ) ≤ 1
    pub hypothesis_ok: bool,
    /// P(E) · exp(6 p N)
    pub bound: f64,
    pub conditional_f64: f64,
    /// conditional ≤ bound; None when the hypothesis fails (bound not
    /// asserted) or the conditional is undefined
    pub bound_holds: Option<bool>,
    pub outcomes: u128,
}

/// Exhaustively computes P(E | ∩ ¬E_j) and the exp(6pN) inflation bound over
/// the full product space (≤ `cap` outcomes).
pub fn conditional_lll_check(
    vars: &[DiscreteVar],
    events: &[EventSpec],
    target: &EventSpec,
    cap: u128,
) -> Result<LllReport> {
    let mut space: u128 = 1;
    for v in vars {
        if v.probs.is_empty() {
            return Err(Error::InvalidParameter("variable with no outcomes".into()));
        }
        let total: Rat = v.probs.iter().sum();
        if total != Rat::new(1, 1) {
            return Err(Error::InvalidParameter(format!(
                "variable probabilities sum to {total}, expected 1"
            )));
        }
        space = space.saturating_mul(v.probs.len() as u128);
        if space > cap {
            return Err(Error::Resource(format!(
                "outcome space exceeds cap {cap}"
            )));
        }
    }
    for e in events.iter().chain(std::iter::once(target)) {
        if e.support.iter().any(|&i| i >= vars.len()) {
            return Err(Error::InvalidParameter("event support out of range".into()));
        }
    }

    let k = vars.len();
    let mut outcome = vec![0usize; k];
    let mut p_events = vec![Rat::zero(); events.len()];
    let mut p_target = Rat::zero();
    let mut p_none = Rat::zero();
    let mut p_target_and_none = Rat::zero();
    loop {
        let mut weight = Rat::new(1, 1);
        for (i, &o) in outcome.iter().enumerate() {
            weight *= vars[i].probs[o];
        }
        let mut any = false;
        for (j, e) in events.iter().enumerate() {
            if (e.pred)(&outcome) {
                p_events[j] += weight;
                any = true;
            }
        }
        let hit = (target.pred)(&outcome);
        if hit {
            p_target += weight;
        }
        if !any {
            p_none += weight;
            if hit {
                p_target_and_none += weight;
            }
        }
        // mixed-radix increment
        let mut i = 0;
        loop {
            if i == k {
                break;
            }
            outcome[i] += 1;
            if outcome[i] < vars[i].probs.len() {
                break;
            }
            outcome[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }

    let p_max = p_events.iter().cloned().max().unwrap_or_else(Rat::zero);
    let n_overlap = events
        .iter()
        .filter(|e| e.support.iter().any(|v| target.support.contains(v)))
        .count();
    let gamma_max_degree = (0..events.len())
        .map(|j| {
            (0..events.len())
                .filter(|&j2| {
                    j2 != j
                        && events[j]
                            .support
                            .iter()
                            .any(|v| events[j2].support.contains(v))
                })
                .count()
        })
        .max()
        .unwrap_or(0);
    let hypothesis_ok =
        Rat::new(4, 1) * p_max * Rat::new(gamma_max_degree as i128, 1) <= Rat::new(1, 1);
    let conditional = if p_none.is_zero() {
        None
    } else {
        Some(p_target_and_none / p_none)
    };
    let bound =
        rat_to_f64(&p_target) * (6.0 * rat_to_f64(&p_max) * n_overlap as f64).exp();
    let conditional_f64 = conditional.as_ref().map(rat_to_f64).unwrap_or(f64::NAN);
    let bound_holds = match (&conditional, hypothesis_ok) {
        (Some(c), true) => Some(rat_to_f64(c) <= bound + 1e-12),
        _ => None,
    };
    Ok(LllReport {
        conditional,
        p_target,
        p_max,
        n_overlap,
        gamma_max_degree,
        hypothesis_ok,
        bound,
        conditional_f64,
        bound_holds,
        outcomes: space,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    /// 4 fair coins; E1 = coins 0,1 both heads; E2 = coins 2,3 both heads;
    /// E = coin 0 heads (heads = outcome 1).
    fn four_coin_fixture() -> (Vec<DiscreteVar>, Vec<EventSpec>, EventSpec) {
        let vars = vec![DiscreteVar::fair_coin(); 4];
        let events = vec![
            EventSpec::all_equal(vec![0, 1], 1),
            EventSpec::all_equal(vec![2, 3], 1),
        ];
        let target = EventSpec::all_equal(vec![0], 1);
        (vars, events, target)
    }

    #[test]
    fn four_coins_exact() {
        let (vars, events, target) = four_coin_fixture();
        let report = conditional_lll_check(&vars, &events, &target, 1 << 20).unwrap();
        assert_eq!(report.conditional, Some(rat(1, 3)));
        assert_eq!(report.p_max, rat(1, 4));
        assert_eq!(report.n_overlap, 1);
        assert_eq!(report.gamma_max_degree, 0);
        assert!(report.hypothesis_ok);
        // bound = 0.5 * e^{1.5}
        let want = 0.5 * (1.5f64).exp();
        assert!((report.bound - want).abs() < 1e-12);
        assert_eq!(report.bound_holds, Some(true));
        assert_eq!(report.outcomes, 16);
    }

    #[test]
    fn no_events_means_no_inflation() {
        let vars = vec![DiscreteVar::fair_coin(); 2];
        let target = EventSpec::all_equal(vec![0], 1);
        let report = conditional_lll_check(&vars, &[], &target, 1 << 10).unwrap();
        assert_eq!(report.conditional, Some(rat(1, 2)));
        assert_eq!(report.n_overlap, 0);
        assert!((report.bound - 0.5).abs() < 1e-15);
        assert_eq!(report.bound_holds, Some(true));
    }

    #[test]
    fn empty_target_event() {
        let vars = vec![DiscreteVar::fair_coin(); 2];
        let events = vec![EventSpec::all_equal(vec![0], 1)];
        let target = EventSpec::new(vec![1], |_| false);
        let report = conditional_lll_check(&vars, &events, &target, 1 << 10).unwrap();
        assert_eq!(report.conditional, Some(rat(0, 1)));
        assert_eq!(report.bound, 0.0);
        assert_eq!(report.bound_holds, Some(true));
    }

    #[test]
    fn hypothesis_violation_is_flagged() {
        // two always-true events sharing support: p = 1, Δ(Γ) = 1, 4pΔ = 4 > 1
        let vars = vec![DiscreteVar::fair_coin()];
        let events = vec![
            EventSpec::new(vec![0], |_| true),
            EventSpec::new(vec![0], |_| true),
        ];
        let target = EventSpec::all_equal(vec![0], 1);
        let report = conditional_lll_check(&vars, &events, &target, 1 << 10).unwrap();
        assert!(!report.hypothesis_ok);
        assert_eq!(report.bound_holds, None);
        // conditioning event is empty here
        assert_eq!(report.conditional, None);
    }

    #[test]
    fn space_cap_enforced() {
        let vars = vec![DiscreteVar::uniform(10); 9];
        let target = EventSpec::all_equal(vec![0], 1);
        assert!(matches!(
            conditional_lll_check(&vars, &[], &target, 1_000_000),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn bound_holds_on_seeded_random_fixtures() {
        use rand::{Rng, SeedableRng};
        use rand_chacha::ChaCha8Rng;
        let mut checked = 0;
        for seed in 0..40u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let nvars = rng.gen_range(3..=6);
            let vars = vec![DiscreteVar::fair_coin(); nvars];
            let nevents = rng.gen_range(1..=3);
            let events: Vec<EventSpec> = (0..nevents)
                .map(|_| {
                    let a = rng.gen_range(0..nvars);
                    let b = rng.gen_range(0..nvars);
                    let support: Vec<usize> = if a == b { vec![a] } else { vec![a.min(b), a.max(b)] };
                    // require some fixed pattern over 2-3 coins
                    let extra = rng.gen_range(0..nvars);
                    let mut s = support;
                    if !s.contains(&extra) && rng.gen_bool(0.5) {
                        s.push(extra);
                    }
                    EventSpec::all_equal(s, 1)
                })
                .collect();
            let tv = rng.gen_range(0..nvars);
            let target = EventSpec::all_equal(vec![tv], 1);
            let report = conditional_lll_check(&vars, &events, &target, 1 << 20).unwrap();
            if report.hypothesis_ok {
                if let Some(holds) = report.bound_holds {
                    assert!(holds, "seed {seed}: bound failed: {report:?}");
                    checked += 1;
                }
            }
        }
        assert!(checked >= 10, "only {checked} fixtures satisfied the hypothesis");
    }
}
