//! Runs the checks and constructions in dependency order and records what
//! happened at each stage.

use std::fmt;

use hopfrob::doubles::{
    check_quasitriangular, classic_quasitriangular, iso_report, red_quasitriangular, yang_baxter_check,
    QuasiTriangularData,
};
use hopfrob::hopfcore::{antipode_order, check_bialgebra, check_hopf, solve_antipode, HopfData, HopfError, Report as Laws};
use hopfrob::hopffrobenius::{build_hf_with_pair, HopfFrobeniusData};
use hopfrob::integrals::{cointegral_space, frobenius_condition, integral_space, IntegralPair};
use hopfrob::tensorlin::LinMap;
use serde::Serialize;

use crate::spec::AlgebraSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Bialgebra,
    Hopf,
    Integrals,
    Frobenius,
    Hf,
    Doubles,
    Qt,
    Iso,
}

impl Stage {
    pub const ALL: [Stage; 8] = [
        Stage::Bialgebra,
        Stage::Hopf,
        Stage::Integrals,
        Stage::Frobenius,
        Stage::Hf,
        Stage::Doubles,
        Stage::Qt,
        Stage::Iso,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Bialgebra => "bialgebra",
            Stage::Hopf => "hopf",
            Stage::Integrals => "integrals",
            Stage::Frobenius => "frobenius",
            Stage::Hf => "hf",
            Stage::Doubles => "doubles",
            Stage::Qt => "qt",
            Stage::Iso => "iso",
        }
    }

    pub fn depends_on(self) -> Option<Stage> {
        match self {
            Stage::Bialgebra => None,
            Stage::Hopf => Some(Stage::Bialgebra),
            Stage::Integrals => Some(Stage::Hopf),
            Stage::Frobenius => Some(Stage::Integrals),
            Stage::Hf => Some(Stage::Frobenius),
            Stage::Doubles => Some(Stage::Hf),
            Stage::Qt | Stage::Iso => Some(Stage::Doubles),
        }
    }

    /// This stage and everything before it on its dependency path.
    pub fn with_dependencies(self) -> Vec<Stage> {
        let mut out = vec![self];
        let mut s = self;
        while let Some(p) = s.depends_on() {
            out.push(p);
            s = p;
        }
        out.reverse();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageReport {
    pub stage: Stage,
    pub status: Status,
    pub detail: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub source: String,
    pub dim: usize,
    pub field: String,
    pub basis: Vec<String>,
    pub stages: Vec<StageReport>,
    pub antipode: Option<Vec<Vec<String>>>,
    pub antipode_order: Option<usize>,
    pub cointegral: Option<Vec<String>>,
    pub integral: Option<Vec<String>>,
    pub double_dim: Option<usize>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.stages.iter().all(|s| s.status == Status::Pass)
    }

    pub fn status(&self, stage: Stage) -> Option<Status> {
        self.stages.iter().find(|s| s.stage == stage).map(|s| s.status)
    }
}

fn entries(m: &LinMap) -> Vec<String> {
    m.entries().iter().map(|x| x.to_string()).collect()
}

fn named(v: &[String], names: &[String]) -> String {
    let terms: Vec<String> = v
        .iter()
        .zip(names)
        .filter(|(c, _)| c.as_str() != "0")
        .map(|(c, n)| if c == "1" { n.clone() } else { format!("({c})·{n}") })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: dimension {} over {}", self.source, self.dim, self.field)?;
        for s in &self.stages {
            let tag = match s.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIPPED",
            };
            writeln!(f, "  {:<10} {tag}", s.stage.name())?;
            for d in &s.detail {
                writeln!(f, "      {d}")?;
            }
        }
        if let Some(k) = self.antipode_order {
            writeln!(f, "  antipode order {k}")?;
        }
        if let Some(c) = &self.cointegral {
            writeln!(f, "  cointegral Λ = {}", named(c, &self.basis))?;
        }
        if let Some(i) = &self.integral {
            let duals: Vec<String> = self.basis.iter().map(|n| format!("δ_{n}")).collect();
            writeln!(f, "  integral λ = {}", named(i, &duals))?;
        }
        Ok(())
    }
}

/// What the stages built, for commands that export it.
#[derive(Debug, Clone, Default)]
pub struct Artifacts {
    pub hopf: Option<HopfData>,
    pub pair: Option<IntegralPair>,
    pub hf: Option<HopfFrobeniusData>,
    pub classic: Option<QuasiTriangularData>,
    pub red: Option<QuasiTriangularData>,
}

fn laws(r: &Laws) -> Vec<String> {
    r.violations
        .iter()
        .map(|v| format!("{}: input {}, output {}: {} != {}", v.law, v.witness.col, v.witness.row, v.witness.lhs, v.witness.rhs))
        .collect()
}

type Outcome = Result<Vec<String>, Vec<String>>;

fn from_laws(r: Laws) -> Outcome {
    if r.is_empty() {
        Ok(Vec::new())
    } else {
        Err(laws(&r))
    }
}

fn run_stage(stage: Stage, spec: &AlgebraSpec, art: &mut Artifacts) -> Outcome {
    match stage {
        Stage::Bialgebra => from_laws(check_bialgebra(&spec.bialgebra)),
        Stage::Hopf => {
            let h = match &spec.antipode {
                Some(s) => {
                    let h = HopfData { bialgebra: spec.bialgebra.clone(), antipode: s.clone() };
                    from_laws(check_hopf(&h))?;
                    h
                }
                None => solve_antipode(&spec.bialgebra).map_err(|e| match e {
                    HopfError::NotABialgebra(r) => laws(&r),
                    other => vec![other.to_string()],
                })?,
            };
            let note = if spec.antipode.is_none() { vec!["antipode solved".to_string()] } else { Vec::new() };
            art.hopf = Some(h);
            Ok(note)
        }
        Stage::Integrals => {
            let h = art.hopf.as_ref().unwrap();
            let (c, i) = (cointegral_space(h).len(), integral_space(h).len());
            let msg = format!("cointegral space dimension {c}, integral space dimension {i}");
            if c == 1 && i == 1 {
                Ok(vec![msg])
            } else {
                Err(vec![msg])
            }
        }
        Stage::Frobenius => {
            let pair = frobenius_condition(art.hopf.as_ref().unwrap()).map_err(|e| vec![e.to_string()])?;
            art.pair = Some(pair);
            Ok(Vec::new())
        }
        Stage::Hf => {
            let hf = build_hf_with_pair(art.hopf.as_ref().unwrap(), art.pair.as_ref().unwrap()).map_err(|e| match e {
                hopfrob::hopffrobenius::HfError::InternalInconsistency(r) => laws(&r),
                other => vec![other.to_string()],
            })?;
            art.hf = Some(hf);
            Ok(Vec::new())
        }
        Stage::Doubles => {
            let hf = art.hf.as_ref().unwrap();
            let classic = classic_quasitriangular(&hf.green_hopf).map_err(|e| vec![e.to_string()])?;
            let red = red_quasitriangular(hf);
            let mut bad = Vec::new();
            bad.extend(laws(&check_hopf(&classic.hopf)).into_iter().map(|l| format!("classic {l}")));
            bad.extend(laws(&check_hopf(&red.hopf)).into_iter().map(|l| format!("red {l}")));
            art.classic = Some(classic);
            art.red = Some(red);
            if bad.is_empty() {
                Ok(Vec::new())
            } else {
                Err(bad)
            }
        }
        Stage::Qt => {
            let mut bad = Vec::new();
            for (tag, q) in [("classic", art.classic.as_ref().unwrap()), ("red", art.red.as_ref().unwrap())] {
                bad.extend(laws(&check_quasitriangular(&q.hopf, &q.r_matrix)).into_iter().map(|l| format!("{tag} {l}")));
                if !yang_baxter_check(&q.hopf, &q.r_matrix) {
                    bad.push(format!("{tag} yang-baxter"));
                }
            }
            if bad.is_empty() {
                Ok(Vec::new())
            } else {
                Err(bad)
            }
        }
        Stage::Iso => match iso_report(art.hf.as_ref().unwrap()) {
            Ok(r) => from_laws(r),
            Err(e) => Err(vec![e.to_string()]),
        },
    }
}

/// Runs the requested stages together with their dependencies, in order.
/// A failed stage marks everything that depends on it skipped.
pub fn execute(spec: &AlgebraSpec, source: &str, stages: &[Stage]) -> (Report, Artifacts) {
    let mut wanted: Vec<Stage> = stages.iter().flat_map(|s| s.with_dependencies()).collect();
    wanted.sort();
    wanted.dedup();
    let mut art = Artifacts::default();
    let mut results: Vec<StageReport> = Vec::new();
    for stage in wanted {
        let blocked = stage
            .depends_on()
            .and_then(|p| results.iter().find(|r| r.stage == p))
            .is_some_and(|r| r.status != Status::Pass);
        let (status, detail) = if blocked {
            (Status::Skipped, Vec::new())
        } else {
            match run_stage(stage, spec, &mut art) {
                Ok(d) => (Status::Pass, d),
                Err(d) => (Status::Fail, d),
            }
        };
        results.push(StageReport { stage, status, detail });
    }
    let b = &spec.bialgebra;
    let report = Report {
        source: source.to_string(),
        dim: b.dim,
        field: b.field.to_string(),
        basis: b.basis_names.clone(),
        stages: results,
        antipode: art.hopf.as_ref().map(|h| {
            (0..h.dim).map(|c| (0..h.dim).map(|r| h.antipode.get(r, c).to_string()).collect()).collect()
        }),
        antipode_order: art.hopf.as_ref().and_then(|h| antipode_order(h, 4 * h.dim + 4)),
        cointegral: art.pair.as_ref().map(|p| entries(&p.cointegral)),
        integral: art.pair.as_ref().map(|p| entries(&p.integral)),
        double_dim: art.classic.as_ref().map(|q| q.hopf.dim),
    };
    (report, art)
}

pub fn run_pipeline(spec: &AlgebraSpec, source: &str, stages: &[Stage]) -> Report {
    execute(spec, source, stages).0
}
