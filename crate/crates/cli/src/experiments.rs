//! Registered end-to-end experiments. Each one recomputes a claim from
//! scratch and compares the observed outcome, as a string, with the
//! expected one.

use std::fmt;
use std::time::Instant;

use multithreshold::constructions::{pk2_c_t, pk2_two_threshold, two_k3_c_t};
use multithreshold::solver::{
    decide_fixed_with, decide_k_with, theta_number_with, threshold_set_with, Outcome, SearchConfig,
    ThetaResult,
};
use multithreshold::theorems::{cozzens_tdim, rainbow_check, tdim_bruteforce, TdimOutcome};
use multithreshold::{build_family, Graph, Rational, Representation, ThresholdVector};
use serde::Serialize;

use crate::{EXIT_NEGATIVE, EXIT_OK, EXIT_TIMEOUT};

const TIMEOUT: &str = "timeout";

pub struct Experiment {
    pub id: &'static str,
    pub statement: &'static str,
    pub inputs: &'static str,
    pub expected: &'static str,
    observe: fn(&SearchConfig) -> String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentReport {
    pub claim: String,
    pub statement: String,
    pub inputs: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
    pub runtime_ms: u64,
}

impl ExperimentReport {
    pub fn exit_code(&self) -> u8 {
        if self.pass {
            EXIT_OK
        } else if self.observed == TIMEOUT {
            EXIT_TIMEOUT
        } else {
            EXIT_NEGATIVE
        }
    }
}

impl fmt::Display for ExperimentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: expected {}, observed {} ({} ms)",
            if self.pass { "PASS" } else { "FAIL" },
            self.claim,
            self.expected,
            self.observed,
            self.runtime_ms
        )
    }
}

impl Experiment {
    pub fn run(&self, cfg: &SearchConfig) -> ExperimentReport {
        let start = Instant::now();
        let observed = (self.observe)(cfg);
        ExperimentReport {
            claim: self.id.into(),
            statement: self.statement.into(),
            inputs: self.inputs.into(),
            expected: self.expected.into(),
            pass: observed == self.expected,
            observed,
            runtime_ms: start.elapsed().as_millis() as u64,
        }
    }
}

fn fam(s: &str) -> Graph {
    build_family(&s.parse().expect("registry families parse")).expect("registry families build")
}

fn th3(t: Rational) -> ThresholdVector {
    ThresholdVector::new(vec![Rational::from(-1), Rational::one(), t]).expect("t > 1")
}

fn tset(family: &str, cfg: &SearchConfig) -> String {
    match threshold_set_with(&fam(family), cfg).outcome {
        Outcome::Complete(s) => s.to_string(),
        Outcome::TimedOut => TIMEOUT.into(),
    }
}

fn decision(outcome: Outcome<Option<Representation>>) -> String {
    match outcome {
        Outcome::Complete(Some(_)) => "feasible".into(),
        Outcome::Complete(None) => "infeasible".into(),
        Outcome::TimedOut => TIMEOUT.into(),
    }
}

fn constructions(_: &SearchConfig) -> String {
    let mut reps = Vec::new();
    for p in 1..=6 {
        reps.push(pk2_two_threshold(p));
    }
    for p in 2..=5i64 {
        for t in [
            Rational::from(2 * p - 3) + Rational::frac(1, 7),
            Rational::from(2 * p + 10),
        ] {
            reps.push(pk2_c_t(p as usize, &t));
        }
    }
    for t in [
        Rational::frac(3, 2),
        Rational::from(2),
        Rational::from(5),
        Rational::from(100),
    ] {
        reps.push(two_k3_c_t(&t));
    }
    let total = reps.len();
    let valid = reps
        .iter()
        .filter(|r| matches!(r, Ok(rep) if rep.verify().is_ok()))
        .count();
    format!("{valid}/{total} verified")
}

fn separation(cfg: &SearchConfig) -> String {
    let g = fam("pk2:3");
    let at2 = decision(decide_fixed_with(&g, &th3(Rational::from(2)), cfg).outcome);
    let at4 = decision(decide_fixed_with(&g, &th3(Rational::from(4)), cfg).outcome);
    format!("t=2 {at2}, t=4 {at4}")
}

fn rainbow(cfg: &SearchConfig) -> String {
    let g = fam("pk3:2");
    let mut reps = Vec::new();
    for t in [
        Rational::frac(3, 2),
        Rational::from(2),
        Rational::from(5),
        Rational::from(100),
    ] {
        reps.push(two_k3_c_t(&t).expect("t > 1"));
        match decide_fixed_with(&g, &th3(t), cfg).outcome {
            Outcome::Complete(Some(rep)) => reps.push(rep),
            Outcome::Complete(None) => return "2K3 solver found no witness".into(),
            Outcome::TimedOut => return TIMEOUT.into(),
        }
    }
    let bad = reps
        .iter()
        .filter(|r| !rainbow_check(r).unwrap_or(false))
        .count();
    if bad == 0 {
        "all distinct".into()
    } else {
        format!("{bad} of {} with repeated multisets", reps.len())
    }
}

fn tdim_text(o: TdimOutcome) -> String {
    match o {
        TdimOutcome::Exact(d) => d.to_string(),
        TdimOutcome::ExceedsLimit(l) => format!("more than {l}"),
    }
}

pub fn registry() -> Vec<Experiment> {
    vec![
        Experiment {
            id: "constructions",
            statement: "the explicit pK2 and 2K3 rank constructions verify",
            inputs: "pK2 on (-1,1) for p=1..6; pK2 on (-1,1,t) for p=2..5, t=2p-3+1/7 and 2p+10; 2K3 on (-1,1,t) for t=3/2,2,5,100",
            expected: "18/18 verified",
            observe: constructions,
        },
        Experiment {
            id: "tset-2k2",
            statement: "2K2 is (-1,1,t)-threshold exactly for t > 1",
            inputs: "family pk2:2",
            expected: "(1, inf)",
            observe: |cfg| tset("pk2:2", cfg),
        },
        Experiment {
            id: "gp-sharpness-p3",
            statement: "3K2 is (-1,1,t)-threshold exactly for t > 3 = 2p-3",
            inputs: "family pk2:3",
            expected: "(3, inf)",
            observe: |cfg| tset("pk2:3", cfg),
        },
        Experiment {
            id: "gp-lower-p4",
            statement: "4K2 is not (-1,1,t)-threshold for t <= 2p-5 = 3",
            inputs: "family pk2:4, thresholds (-1, 1, 3)",
            expected: "infeasible",
            observe: |cfg| decision(decide_fixed_with(&fam("pk2:4"), &th3(Rational::from(3)), cfg).outcome),
        },
        Experiment {
            id: "class-separation",
            statement: "3K2 separates the (-1,1,2) and (-1,1,4) classes",
            inputs: "family pk2:3, thresholds (-1, 1, 2) and (-1, 1, 4)",
            expected: "t=2 infeasible, t=4 feasible",
            observe: separation,
        },
        Experiment {
            id: "2k3-not-2threshold",
            statement: "2K3 has no representation with two thresholds",
            inputs: "family pk3:2, k = 2",
            expected: "infeasible",
            observe: |cfg| decision(decide_k_with(&fam("pk3:2"), 2, cfg).outcome),
        },
        Experiment {
            id: "theta-2k3",
            statement: "the least threshold count for 2K3 is 3",
            inputs: "family pk3:2, k up to 4",
            expected: "3",
            observe: |cfg| match theta_number_with(&fam("pk3:2"), 4, cfg).outcome {
                Outcome::Complete(ThetaResult::Exact { theta, .. }) => theta.to_string(),
                Outcome::Complete(ThetaResult::ExceedsCap { cap }) => format!("more than {cap}"),
                Outcome::TimedOut => TIMEOUT.into(),
            },
        },
        Experiment {
            id: "rainbow",
            statement: "no two triangles of a pK3 representation share a color multiset",
            inputs: "2K3 constructions and solver witnesses on (-1,1,t) for t=3/2,2,5,100",
            expected: "all distinct",
            observe: rainbow,
        },
        Experiment {
            id: "cozzens-k33",
            statement: "the threshold dimension of K_{3,3} is its second largest part",
            inputs: "family kpartite:3,3",
            expected: "3 = 3",
            observe: |_| {
                let bf = tdim_bruteforce(&fam("kpartite:3,3"), 7).map(tdim_text);
                let formula = cozzens_tdim(&[3, 3]).map(|d| d.to_string());
                match (bf, formula) {
                    (Ok(a), Ok(b)) => format!("{a} = {b}"),
                    (Err(e), _) | (_, Err(e)) => e.to_string(),
                }
            },
        },
        Experiment {
            id: "tdim-2k2",
            statement: "2K2 is the union of two threshold graphs and not of one",
            inputs: "family pk2:2",
            expected: "2",
            observe: |_| tdim_bruteforce(&fam("pk2:2"), 7).map(tdim_text).unwrap_or_else(|e| e.to_string()),
        },
    ]
}

/// The experiments named by `claim`, or all of them for `all`.
pub fn select(claim: &str) -> Result<Vec<Experiment>, String> {
    let all = registry();
    if claim == "all" {
        return Ok(all);
    }
    let ids: Vec<&str> = all.iter().map(|e| e.id).collect();
    let known = ids.join(", ");
    all.into_iter()
        .find(|e| e.id == claim)
        .map(|e| vec![e])
        .ok_or_else(|| format!("unknown claim `{claim}`; known claims: all, {known}"))
}
