//! The end-to-end classification of a finitely generated group with at most
//! two fixed points, evaluated on a finite ball.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::collapse::{collapse_map, induced_map, union_of_intervals, CollapseData};
use super::minimal::{classify_minimal, MinimalKind, MinimalOptions, MinimalReport};
use super::monotone::{first_equivariance_failure, MonotonePL};
use crate::group::{
    abelian_global_fixed_check, check_max_fixed, common_fixed_points, default_names,
    is_abelian_on_ball, positive_generators, GroupBall, GroupFile, Violation, Word,
    DEFAULT_ELEMENT_CAP,
};
use crate::pl::{FixedSet, PLMap};
use crate::rat::Rat;
use crate::witness::{
    construct_witness, wandering_check, Mover, WitnessReport, DEFAULT_EXPONENT_CAP,
};

pub const DISCLAIMER: &str = "computed on a finite ball: a violation is a certificate, every other verdict is evidence at this radius only";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremAConfig {
    pub radius: usize,
    pub element_cap: usize,
    pub exponent_cap: u64,
    pub window: (Rat, Rat),
    pub resolution: Rat,
    pub certificate: Option<PLMap>,
    /// Claimed affine images of the generators under the certificate.
    pub images: Option<Vec<PLMap>>,
}

impl Default for TheoremAConfig {
    fn default() -> TheoremAConfig {
        TheoremAConfig {
            radius: 4,
            element_cap: DEFAULT_ELEMENT_CAP,
            exponent_cap: DEFAULT_EXPONENT_CAP,
            window: (Rat::int(-10), Rat::int(10)),
            resolution: Rat::new(1, 100),
            certificate: None,
            images: None,
        }
    }
}

impl TheoremAConfig {
    /// Takes radius, certificate and images from a group file when present.
    pub fn with_file(mut self, file: &GroupFile) -> TheoremAConfig {
        if let Some(r) = file.radius {
            self.radius = r;
        }
        if file.certificate.is_some() {
            self.certificate = file.certificate.clone();
        }
        if let Some(images) = file.ordered_images() {
            if !images.is_empty() {
                self.images = Some(images);
            }
        }
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    GlobalFixedAbelian,
    AffineSemiconjugate,
    TranslationSemiconjugate,
    Violation,
    Inconclusive,
}

impl Classification {
    pub fn label(self) -> &'static str {
        match self {
            Classification::GlobalFixedAbelian => "global_fixed_abelian",
            Classification::AffineSemiconjugate => "affine_semiconjugate",
            Classification::TranslationSemiconjugate => "translation_semiconjugate",
            Classification::Violation => "violation",
            Classification::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// A ball element with more than two fixed points.
    BallViolation {
        violation: Violation,
        word: String,
    },
    /// A constructed element with at least three fixed points.
    Witness {
        g_word: String,
        mover: Mover,
        mover_word: String,
        report: Box<WitnessReport>,
    },
    GlobalFixed {
        fixed_set: FixedSet,
        positive_generators: Vec<PLMap>,
    },
    Translation {
        collapse: CollapseData,
        minimal: MinimalReport,
    },
    Affine {
        collapse: CollapseData,
        /// The user certificate (or the identity) composed with the collapse.
        semiconjugacy: MonotonePL,
        supplied: bool,
        images: Vec<PLMap>,
        minimal: MinimalReport,
    },
    Exhausted {
        stage: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub verdict: Classification,
    pub config: TheoremAConfig,
    pub evidence: Evidence,
    pub diagnostics: Vec<String>,
    pub disclaimer: String,
}

impl ClassificationReport {
    fn new(
        verdict: Classification,
        config: &TheoremAConfig,
        evidence: Evidence,
        diagnostics: Vec<String>,
    ) -> Self {
        ClassificationReport {
            verdict,
            config: config.clone(),
            evidence,
            diagnostics,
            disclaimer: DISCLAIMER.to_string(),
        }
    }
}

fn inconclusive(
    config: &TheoremAConfig,
    stage: &str,
    mut diagnostics: Vec<String>,
    why: String,
) -> ClassificationReport {
    diagnostics.push(why);
    ClassificationReport::new(
        Classification::Inconclusive,
        config,
        Evidence::Exhausted {
            stage: stage.to_string(),
        },
        diagnostics,
    )
}

/// Context names that cannot clash with the witness inputs `g` and `f`.
fn context_names(names: &[String]) -> Vec<String> {
    names
        .iter()
        .map(|n| {
            let mut n = n.clone();
            while n == "g" || n == "f" || names.iter().filter(|m| **m == n).count() > 1 {
                n.push('_');
            }
            n
        })
        .collect()
}

pub fn theorem_a_report(
    generators: &[PLMap],
    names: Option<Vec<String>>,
    config: &TheoremAConfig,
) -> ClassificationReport {
    let names = names.unwrap_or_else(|| default_names(generators.len()));
    let mut diagnostics = Vec::new();
    let ball = match GroupBall::build(
        generators.to_vec(),
        names,
        config.radius,
        config.element_cap,
    ) {
        Ok(b) => b,
        Err(e) => return inconclusive(config, "ball", diagnostics, e.to_string()),
    };

    let verdict = check_max_fixed(&ball, 2);
    if let Some(violation) = verdict.witness {
        let word = ball.render(&violation.word);
        return ClassificationReport::new(
            Classification::Violation,
            config,
            Evidence::BallViolation { violation, word },
            diagnostics,
        );
    }

    let positive = positive_generators(generators);
    let common = common_fixed_points(&positive);
    if !common.is_empty() {
        let pball = match GroupBall::build(
            positive.clone(),
            default_names(positive.len()),
            config.radius,
            config.element_cap,
        ) {
            Ok(b) => b,
            Err(e) => return inconclusive(config, "positive ball", diagnostics, e.to_string()),
        };
        if let Some(nc) = is_abelian_on_ball(&pball).witness {
            return inconclusive(
                config,
                "abelian check",
                diagnostics,
                format!("the orientation-preserving subgroup fixes {common} but {} does not commute with {}", nc.first, nc.second),
            );
        }
        match abelian_global_fixed_check(&pball) {
            Ok(v) if v.is_holds() => {
                return ClassificationReport::new(
                    Classification::GlobalFixedAbelian,
                    config,
                    Evidence::GlobalFixed {
                        fixed_set: common,
                        positive_generators: positive,
                    },
                    diagnostics,
                )
            }
            Ok(v) => {
                let stray = v.witness.expect("violated verdicts carry a witness");
                return inconclusive(
                    config,
                    "abelian check",
                    diagnostics,
                    format!(
                        "{} fixes {} outside the global fixed set",
                        pball.render(&stray.word),
                        stray.component
                    ),
                );
            }
            Err(e) => return inconclusive(config, "abelian check", diagnostics, e.to_string()),
        }
    }

    let mut pairs: BTreeSet<(Rat, Rat)> = BTreeSet::new();
    let mut two_point: Vec<(PLMap, Word)> = Vec::new();
    for e in ball.non_trivial() {
        if e.map.is_orientation_preserving() && e.map.fixed_set().cardinality() == Some(2) {
            let p = e.map.fixed_set().points();
            if pairs.insert((p[0].clone(), p[1].clone())) {
                two_point.push((e.map.clone(), e.word.clone()));
            }
        }
    }
    let context = ball
        .renamed(context_names(ball.names()))
        .expect("same generator count");
    let mut mover_found = false;
    for (g, g_word) in &two_point {
        let check = match wandering_check(g, &ball) {
            Ok(v) => v,
            Err(e) => {
                diagnostics.push(e.to_string());
                continue;
            }
        };
        let Some(mover) = check.witness else { continue };
        mover_found = true;
        match construct_witness(g, &mover.element, Some(&context), config.exponent_cap) {
            Ok(report) => {
                return ClassificationReport::new(
                    Classification::Violation,
                    config,
                    Evidence::Witness {
                        g_word: ball.render(g_word),
                        mover_word: ball.render(&mover.word),
                        mover,
                        report: Box::new(report),
                    },
                    diagnostics,
                )
            }
            Err(e) => diagnostics.push(format!("witness for {}: {e}", ball.render(g_word))),
        }
    }
    if mover_found {
        return inconclusive(
            config,
            "witness",
            diagnostics,
            "a mover exists but no witness could be built".into(),
        );
    }

    let intervals: Vec<(Rat, Rat)> = pairs
        .iter()
        .flat_map(|(x, y)| {
            ball.iter().map(move |e| {
                let (a, b) = (e.map.eval(x), e.map.eval(y));
                if a < b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
        })
        .collect();
    let intervals = union_of_intervals(&intervals);
    let c = match collapse_map(&intervals) {
        Ok(c) => c,
        Err(e) => return inconclusive(config, "collapse", diagnostics, e.to_string()),
    };
    let mut induced = Vec::with_capacity(generators.len());
    for g in generators {
        match induced_map(&c, g) {
            Ok(h) => induced.push(h),
            Err(e) => {
                return inconclusive(
                    config,
                    "collapse",
                    diagnostics,
                    format!(
                        "collapsing the radius-{} orbit intervals: {e}",
                        config.radius
                    ),
                )
            }
        }
    }
    let collapse = CollapseData {
        intervals,
        map: c.clone(),
        induced: induced.clone(),
    };
    let hat_ball = match GroupBall::build(
        induced.clone(),
        ball.names().to_vec(),
        config.radius,
        config.element_cap,
    ) {
        Ok(b) => b,
        Err(e) => return inconclusive(config, "collapsed ball", diagnostics, e.to_string()),
    };
    if let Some(v) = check_max_fixed(&hat_ball, 1).witness {
        return inconclusive(
            config,
            "collapsed check",
            diagnostics,
            format!(
                "collapsed element {} has fixed set {}",
                hat_ball.render(&v.word),
                v.fixed_set
            ),
        );
    }

    let minimal = classify_minimal(
        &hat_ball,
        &MinimalOptions::for_ball(&hat_ball, config.window.clone(), config.resolution.clone()),
    );
    if minimal.kind == MinimalKind::DiscreteSuspected {
        return ClassificationReport::new(
            Classification::TranslationSemiconjugate,
            config,
            Evidence::Translation { collapse, minimal },
            diagnostics,
        );
    }

    let supplied = config.certificate.is_some();
    let cert = config.certificate.clone().unwrap_or_else(PLMap::identity);
    let cert_m = match MonotonePL::from_map(&cert) {
        Ok(m) => m,
        Err(e) => return inconclusive(config, "certificate", diagnostics, e.to_string()),
    };
    let images: Vec<PLMap> = match &config.images {
        Some(images) if images.len() == generators.len() => images.clone(),
        Some(images) => {
            return inconclusive(
                config,
                "certificate",
                diagnostics,
                format!(
                    "{} images for {} generators",
                    images.len(),
                    generators.len()
                ),
            )
        }
        None => induced.iter().map(|h| h.conjugate_by(&cert)).collect(),
    };
    if let Some(i) = images.iter().position(|a| a.as_affine().is_none()) {
        return inconclusive(
            config,
            "certificate",
            diagnostics,
            format!(
                "the image of {} is not affine: {}",
                ball.names()[i],
                images[i]
            ),
        );
    }
    let semiconjugacy = cert_m.after(&c);
    let pairs: Vec<(PLMap, PLMap)> = generators
        .iter()
        .cloned()
        .zip(images.iter().cloned())
        .collect();
    if let Some(i) = first_equivariance_failure(&semiconjugacy, &pairs) {
        return inconclusive(
            config,
            "certificate",
            diagnostics,
            format!("equivariance fails for {}", ball.names()[i]),
        );
    }
    ClassificationReport::new(
        Classification::AffineSemiconjugate,
        config,
        Evidence::Affine {
            collapse,
            semiconjugacy,
            supplied,
            images,
            minimal,
        },
        diagnostics,
    )
}

pub fn theorem_a_for_file(file: &GroupFile, config: &TheoremAConfig) -> ClassificationReport {
    let config = config.clone().with_file(file);
    theorem_a_report(&file.maps(), Some(file.names()), &config)
}

impl std::fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c = &self.config;
        writeln!(f, "verdict: {}", self.verdict.label())?;
        writeln!(
            f,
            "radius {} | element cap {} | exponent cap {} | window ({}, {}) | resolution {}",
            c.radius, c.element_cap, c.exponent_cap, c.window.0, c.window.1, c.resolution
        )?;
        match &self.evidence {
            Evidence::BallViolation { violation, word } => {
                writeln!(f, "element {word} has fixed set {}", violation.fixed_set)?;
                writeln!(f, "  {}", violation.element)?;
            }
            Evidence::Witness {
                g_word,
                mover_word,
                mover,
                report,
            } => {
                writeln!(f, "{g_word} has two fixed points and {mover_word} moves the first into the gap (to {})", mover.image)?;
                write!(f, "{report}")?;
            }
            Evidence::GlobalFixed {
                fixed_set,
                positive_generators,
            } => {
                writeln!(
                    f,
                    "global fixed set of the orientation-preserving subgroup: {fixed_set}"
                )?;
                writeln!(
                    f,
                    "orientation-preserving subgroup generated by {} elements, abelian on the ball",
                    positive_generators.len()
                )?;
            }
            Evidence::Translation { collapse, minimal } => {
                writeln!(f, "collapsed intervals: {}", collapse.intervals.len())?;
                writeln!(f, "minimal set: {:?}, free element found", minimal.kind)?;
            }
            Evidence::Affine {
                collapse,
                semiconjugacy,
                supplied,
                images,
                minimal,
            } => {
                writeln!(f, "collapsed intervals: {}", collapse.intervals.len())?;
                writeln!(f, "minimal set (heuristic): {:?}", minimal.kind)?;
                let source = if *supplied { "supplied" } else { "identity" };
                writeln!(f, "semiconjugacy ({source} certificate): {semiconjugacy}")?;
                for image in images {
                    let (a, b) = image.as_affine().expect("images are affine");
                    writeln!(f, "  image: x -> {a}x + {b}")?;
                }
                writeln!(f, "equivariance verified exactly")?;
            }
            Evidence::Exhausted { stage } => writeln!(f, "stopped at stage: {stage}")?,
        }
        for d in &self.diagnostics {
            writeln!(f, "note: {d}")?;
        }
        writeln!(f, "{}", self.disclaimer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::semiconj::verify_equivariance;

    fn aff(a: i64, b: i64) -> PLMap {
        PLMap::affine(rat(a, 1), rat(b, 1)).unwrap()
    }

    fn phi() -> PLMap {
        "pl left_slope=1 anchors=(0,0);(1,2) right_slope=1/2"
            .parse()
            .unwrap()
    }

    fn config(radius: usize) -> TheoremAConfig {
        TheoremAConfig {
            radius,
            ..TheoremAConfig::default()
        }
    }

    #[test]
    fn affine_group() {
        let r = theorem_a_report(&[aff(2, 0), aff(1, 1)], None, &config(4));
        assert_eq!(r.verdict, Classification::AffineSemiconjugate, "{r}");
        let Evidence::Affine {
            semiconjugacy,
            supplied,
            ..
        } = &r.evidence
        else {
            panic!()
        };
        assert!(!supplied);
        assert_eq!(semiconjugacy, &MonotonePL::identity());
    }

    #[test]
    fn conjugated_affine_group_with_certificate() {
        let p = phi();
        let gens: Vec<PLMap> = [aff(2, 0), aff(1, 1)]
            .iter()
            .map(|a| p.inverse().compose(a).compose(&p))
            .collect();
        let cfg = TheoremAConfig {
            certificate: Some(p.clone()),
            ..config(3)
        };
        let r = theorem_a_report(&gens, None, &cfg);
        assert_eq!(r.verdict, Classification::AffineSemiconjugate, "{r}");
        let Evidence::Affine {
            semiconjugacy,
            images,
            ..
        } = &r.evidence
        else {
            panic!()
        };
        assert_eq!(images, &vec![aff(2, 0), aff(1, 1)]);
        let pairs: Vec<(PLMap, PLMap)> = gens.into_iter().zip(images.iter().cloned()).collect();
        assert!(verify_equivariance(semiconjugacy, &pairs));
        // without the certificate the identity does not conjugate to affine maps
        let r = theorem_a_report(
            &pairs.iter().map(|p| p.0.clone()).collect::<Vec<_>>(),
            None,
            &config(3),
        );
        assert_eq!(r.verdict, Classification::Inconclusive);
    }

    #[test]
    fn cyclic_with_two_fixed_points() {
        let g1: PLMap = "pl left_slope=1/2 anchors=(0,0);(1/2,3/4);(1,1) right_slope=2"
            .parse()
            .unwrap();
        let r = theorem_a_report(&[g1], None, &config(6));
        assert_eq!(r.verdict, Classification::GlobalFixedAbelian);
        let Evidence::GlobalFixed { fixed_set, .. } = &r.evidence else {
            panic!()
        };
        assert_eq!(fixed_set, &FixedSet::from_points([rat(0, 1), rat(1, 1)]));
    }

    #[test]
    fn thompson_generators_violate() {
        let a: PLMap = "pl left_slope=1 anchors=(0,0);(1/2,1/4);(3/4,1/2);(1,1) right_slope=1"
            .parse()
            .unwrap();
        let b: PLMap = "pl left_slope=1 anchors=(1/2,1/2);(3/4,5/8);(7/8,3/4);(1,1) right_slope=1"
            .parse()
            .unwrap();
        let r = theorem_a_report(&[a, b], None, &config(4));
        assert_eq!(r.verdict, Classification::Violation);
        let Evidence::BallViolation { violation, .. } = &r.evidence else {
            panic!()
        };
        assert!(violation.element.fixed_set().exceeds(2));
    }

    #[test]
    fn mover_gives_constructed_witness() {
        let g1: PLMap = "pl left_slope=1/2 anchors=(0,0);(1/2,3/4);(1,1) right_slope=2"
            .parse()
            .unwrap();
        let r = theorem_a_report(&[g1, PLMap::translation(rat(1, 2))], None, &config(1));
        assert_eq!(r.verdict, Classification::Violation, "{r}");
        let Evidence::Witness {
            report, mover_word, ..
        } = &r.evidence
        else {
            panic!("{r}")
        };
        assert_eq!(mover_word, "s1");
        report.verify().unwrap();
    }

    #[test]
    fn translations_are_translation_semiconjugate() {
        let r = theorem_a_report(&[aff(1, 1)], None, &config(4));
        assert_eq!(r.verdict, Classification::TranslationSemiconjugate, "{r}");
    }

    #[test]
    fn report_json_round_trip() {
        let r = theorem_a_report(
            &[aff(2, 0), aff(1, 1)],
            Some(vec!["a".into(), "b".into()]),
            &config(2),
        );
        let json = serde_json::to_string(&r).unwrap();
        let back: ClassificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}
