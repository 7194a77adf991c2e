//! Task dispatch.

use fano_toric_core::analysis::{check_hypotheses, ExpectedDimensionInput, HypothesisReport, Mode};
use fano_toric_core::cayley::maximal_among;
use fano_toric_core::chow::full_count;
use fano_toric_core::divisors::{class_is_basepoint_free, restriction_degree, DivisorClass};
use fano_toric_core::{
    component_dimension, enumerate_cayley_structures, Budget, CayleyStructure, Configuration,
    Error, PointConfiguration,
};

use crate::problem::{ProblemFile, Task, ValidationErrors};
use crate::report::{
    ClassSummary, ComponentRecord, ConfigurationSummary, FaceRecord, FacetRecord, Report,
    StructureRecord,
};

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub task: Option<Task>,
    pub k: Option<usize>,
    pub budget: Budget,
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Validation(ValidationErrors),
    #[error("{0}")]
    Budget(Error),
    #[error("{0}")]
    Failed(Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Validation(_) => 2,
            RunError::Budget(_) => 4,
            RunError::Failed(_) => 1,
        }
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => RunError::Budget(e),
            Error::EmptyConfiguration
            | Error::DuplicatePoint(_)
            | Error::DimensionMismatch { .. }
            | Error::InvalidDivisor(_)
            | Error::NotEffective(_) => RunError::Validation(ValidationErrors(vec![e.to_string()])),
            other => RunError::Failed(other),
        }
    }
}

/// A finished run. `exit_code` is 3 when a count was demanded but some
/// component could not be counted.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

fn points_of(cfg: &Configuration, members: &[usize]) -> Vec<Vec<i64>> {
    members
        .iter()
        .map(|&i| cfg.original_point(i).to_vec())
        .collect()
}

fn fibers_of(cfg: &Configuration, p: &CayleyStructure) -> Vec<Vec<Vec<i64>>> {
    p.fibers.iter().map(|f| points_of(cfg, f)).collect()
}

fn summary(cfg: &Configuration) -> ConfigurationSummary {
    let mut f_vector = vec![0; cfg.dim() + 1];
    for f in cfg.faces() {
        f_vector[f.dim] += 1;
    }
    ConfigurationSummary {
        points: cfg.len(),
        ambient_dim: cfg.original_point(0).len(),
        dim: cfg.dim(),
        normalized: cfg.map().is_identity(),
        smooth: cfg.is_smooth(),
        vertices: cfg.vertices().len(),
        f_vector,
        facets: (0..cfg.num_facets())
            .map(|j| FacetRecord {
                normal: cfg.facet_normal(j).to_vec(),
                offset: cfg.facet_offset(j),
                points: points_of(cfg, &cfg.facet(j).members),
            })
            .collect(),
    }
}

fn component_record(
    cfg: &Configuration,
    p: &CayleyStructure,
    k: usize,
) -> Result<ComponentRecord, Error> {
    Ok(ComponentRecord {
        length: p.length(),
        tau_dim: p.face.dim,
        component_dimension: component_dimension(p, k)?,
        fibers: fibers_of(cfg, p),
        deltas: None,
        phi: None,
        theorem: None,
        corollary: None,
        conclusion: None,
        count: None,
        note: None,
    })
}

fn conclusion_of(theorem: &HypothesisReport, corollary: &HypothesisReport) -> String {
    if corollary.all_hold() && !theorem.all_hold() {
        corollary.conclusion.statement()
    } else {
        theorem.conclusion.statement()
    }
}

pub fn run(problem: &ProblemFile, opts: &RunOptions) -> Result<Outcome, RunError> {
    let task = opts
        .task
        .or(problem.task)
        .ok_or_else(|| RunError::Validation(ValidationErrors(vec!["no task given".into()])))?;
    let k = opts.k.or(problem.k).unwrap_or(1);
    let budget = opts.budget;
    let points = PointConfiguration::from_columns(&problem.points)?;
    let cfg = Configuration::with_budget(&points, &budget)?;
    let classes: Vec<DivisorClass> = problem
        .resolve_classes(&cfg)
        .map_err(RunError::Validation)?;
    if task.needs_classes() && classes.is_empty() {
        return Err(RunError::Validation(ValidationErrors(vec![format!(
            "task '{task}' needs at least one class"
        )])));
    }
    let smooth = cfg.is_smooth();
    let mut report = Report {
        task,
        k,
        configuration: summary(&cfg),
        classes: Vec::new(),
        faces: Vec::new(),
        structures: Vec::new(),
        components: Vec::new(),
        total: None,
        warnings: Vec::new(),
    };
    for (name, c) in problem.class_names.iter().zip(&classes) {
        report.classes.push(ClassSummary {
            name: name.clone(),
            coefficients: c.representative().coeffs().to_vec(),
            basepoint_free: if smooth {
                Some(class_is_basepoint_free(&cfg, c)?)
            } else {
                None
            },
        });
    }
    if !smooth {
        report
            .warnings
            .push("Y_A is singular; degrees, hypotheses and counts need a smooth Y_A".into());
    }
    let mut exit_code = 0;

    match task {
        Task::Smooth => {}
        Task::Faces => {
            report.faces = cfg
                .faces()
                .iter()
                .map(|f| FaceRecord {
                    dim: f.dim,
                    points: points_of(&cfg, &f.members),
                })
                .collect();
        }
        Task::Cayley => {
            let all = enumerate_cayley_structures(&cfg, k, &budget)?;
            let maximal = maximal_among(&all);
            report.structures = all
                .iter()
                .map(|p| StructureRecord {
                    length: p.length(),
                    tau_dim: p.face.dim,
                    maximal: maximal.contains(p),
                    fibers: fibers_of(&cfg, p),
                })
                .collect();
        }
        Task::Degrees | Task::ExpectedDim | Task::Check => {
            let all = enumerate_cayley_structures(&cfg, k, &budget)?;
            let maximal = maximal_among(&all);
            for p in maximal.iter().filter(|p| p.length() >= k) {
                let mut rec = component_record(&cfg, p, k)?;
                if smooth {
                    let deltas = classes
                        .iter()
                        .map(|c| restriction_degree(&cfg, c, p))
                        .collect::<Result<Vec<_>, _>>()?;
                    if task != Task::Degrees {
                        rec.phi = Some(fano_toric_core::analysis::expected_dimension(
                            p, k, &deltas,
                        )?);
                    }
                    rec.deltas = Some(deltas);
                }
                if task == Task::Check {
                    let input = ExpectedDimensionInput::new(&cfg, p, &classes, k)?;
                    let th = check_hypotheses(&input, Mode::Theorem, &all)?;
                    let co = check_hypotheses(&input, Mode::Corollary, &all)?;
                    rec.conclusion = Some(conclusion_of(&th, &co));
                    rec.theorem = Some(th);
                    rec.corollary = Some(co);
                }
                report.components.push(rec);
            }
        }
        Task::Count | Task::Analyze => {
            let full = full_count(&cfg, &classes, k, &budget)?;
            for comp in full.components {
                let mut rec = component_record(&cfg, &comp.structure, k)?;
                rec.deltas = comp.theorem.deltas.clone();
                rec.phi = comp.theorem.phi;
                rec.conclusion = Some(conclusion_of(&comp.theorem, &comp.corollary));
                rec.count = comp.count;
                rec.note = comp.note;
                if task == Task::Analyze {
                    rec.theorem = Some(comp.theorem);
                    rec.corollary = Some(comp.corollary);
                }
                report.components.push(rec);
            }
            report.total = full.total;
            if full.total.is_none() {
                report
                    .warnings
                    .push("some component could not be counted; no total".into());
                if task == Task::Count {
                    exit_code = 3;
                }
            }
        }
    }
    if report.components.is_empty() && task.needs_classes() {
        report.warnings.push(format!(
            "no maximal Cayley structure of length >= {}",
            k.max(1)
        ));
    }
    Ok(Outcome { report, exit_code })
}
