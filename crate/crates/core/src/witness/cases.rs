//! The case analysis for an element `g` with exactly two fixed points `x < y`
//! and an element `f` moving `x` into `(x, y)`.
//!
//! Every case ends in an explicit element with at least three fixed points.
//! All comparisons the construction relies on are recorded in the trace and
//! the final element is recomputed from the inputs before it is returned.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::expr::{Check, Env, Evaluator, Expr, Relation, Term};
use super::report::{CaseTag, Definition, Exponent, PointDef, SeparatingInterval, WitnessReport};
use crate::group::{GroupBall, Verdict, Word};
use crate::pl::{PLMap, Sign, TypeSignature};
use crate::rat::Rat;

pub const DEFAULT_EXPONENT_CAP: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("missing auxiliary element: {0}")]
    MissingAuxiliary(String),
    #[error("reduction {from} -> {to} failed: {check}")]
    ReductionFailed {
        from: CaseTag,
        to: CaseTag,
        check: String,
    },
    #[error("case {case}: required inequality failed: {check}")]
    CheckFailed { case: CaseTag, check: String },
    #[error("no exponent {name} up to the cap {cap}")]
    ExponentCap { name: String, cap: u64 },
    #[error("evaluation failed: {0}")]
    Eval(String),
}

/// An element of a ball that moves `x` into `(x, y)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mover {
    pub word: Word,
    pub element: PLMap,
    pub image: Rat,
}

fn two_point_signature(g: &PLMap) -> Result<TypeSignature, WitnessError> {
    let sig = g
        .type_signature()
        .map_err(|e| WitnessError::Precondition(format!("g has no type: {e}")))?;
    if sig.fixed_points() != 2 {
        return Err(WitnessError::Precondition(format!(
            "g must have exactly 2 fixed points, it has Fix = {}",
            g.fixed_set()
        )));
    }
    Ok(sig)
}

/// The leading digit of the case tag for a normalized type, if it is one.
fn base_type(sig: &TypeSignature) -> Option<u8> {
    use Sign::{Minus as M, Plus as P};
    match sig.signs() {
        [P, P, P] => Some(1),
        [M, P, P] => Some(2),
        [P, P, M] => Some(3),
        [P, M, P] => Some(4),
        _ => None,
    }
}

fn fixed_pair(g: &PLMap) -> (Rat, Rat) {
    let p = g.fixed_set().points();
    (p[0].clone(), p[1].clone())
}

/// Replaces `g` by `g⁻¹` when needed so that its type is one of
/// `(+,+,+)`, `(-,+,+)`, `(+,+,-)`, `(+,-,+)`.
pub fn normalize_direction(g: &PLMap) -> Result<(PLMap, bool), WitnessError> {
    let sig = two_point_signature(g)?;
    if base_type(&sig).is_some() {
        Ok((g.clone(), false))
    } else {
        Ok((g.inverse(), true))
    }
}

/// An orientation-preserving element of `<g, f>` sending `x` into `(x, y)`.
pub fn orient_mover(g: &PLMap, f: &PLMap) -> Result<PLMap, WitnessError> {
    two_point_signature(g)?;
    let mut m = Machine::new(inputs(g, f), None, DEFAULT_EXPONENT_CAP);
    let (x, y) = m.fixed_points(g)?;
    let (_, fm) = m.orient(&Expr::input("g"), &x, &y)?;
    Ok(fm)
}

pub fn classify_case(g: &PLMap, f: &PLMap) -> Result<CaseTag, WitnessError> {
    let sig = two_point_signature(g)?;
    let base = base_type(&sig).ok_or_else(|| {
        WitnessError::Precondition(format!("g has type {sig}, which is not normalized"))
    })?;
    if !f.is_orientation_preserving() {
        return Err(WitnessError::Precondition(
            "f must be orientation-preserving".into(),
        ));
    }
    let (x, y) = fixed_pair(g);
    let fx = f.eval(&x);
    if !(x < fx && fx < y) {
        return Err(WitnessError::Precondition(format!(
            "f(x) = {fx} is not in ({x}, {y})"
        )));
    }
    let fy = f.eval(&y);
    if fy == y {
        return Err(WitnessError::Precondition(format!("f fixes y = {y}")));
    }
    let below = fy < y;
    Ok(match (base, below) {
        (1, true) => CaseTag::C1a,
        (1, false) => CaseTag::C1b,
        (2, true) => CaseTag::C2a,
        (2, false) => CaseTag::C2b,
        (3, true) => CaseTag::C3a,
        (3, false) => CaseTag::C3b,
        (4, true) => CaseTag::C4a,
        _ => CaseTag::C4b,
    })
}

/// Looks for an element of the ball moving `x` into `(x, y)`, where
/// `Fix(g) = {x, y}`.
pub fn wandering_check(g: &PLMap, ball: &GroupBall) -> Result<Verdict<Mover>, WitnessError> {
    two_point_signature(g)?;
    let (x, y) = fixed_pair(g);
    let mover = ball.iter().find_map(|e| {
        let image = e.map.eval(&x);
        (x < image && image < y).then(|| Mover {
            word: e.word.clone(),
            element: e.map.clone(),
            image,
        })
    });
    Ok(Verdict::from_option(ball.radius(), mover))
}

fn inputs(g: &PLMap, f: &PLMap) -> Env {
    let mut env = Env::new();
    env.insert("g".into(), g.clone());
    env.insert("f".into(), f.clone());
    env
}

/// Runs the case analysis on `(g, f)` and returns a verified witness.
///
/// `context` supplies the elements `u`, `v` needed in case 4a; its generator
/// names become additional inputs of the report.
pub fn construct_witness(
    g: &PLMap,
    f: &PLMap,
    context: Option<&GroupBall>,
    exponent_cap: u64,
) -> Result<WitnessReport, WitnessError> {
    let mut env = inputs(g, f);
    if let Some(ball) = context {
        for (name, map) in ball.names().iter().zip(ball.generators()) {
            match env.get(name) {
                Some(existing) if existing != map => {
                    return Err(WitnessError::Precondition(format!(
                        "context generator `{name}` differs from the input of the same name"
                    )))
                }
                _ => {
                    env.insert(name.clone(), map.clone());
                }
            }
        }
    }
    let mut m = Machine::new(env, context, exponent_cap);
    let (gm, inverted) = normalize_direction(g)?;
    let g_expr = if inverted {
        Expr::input("g").inv()
    } else {
        Expr::input("g")
    };
    let (x, y) = m.fixed_points(&gm)?;
    let (f_expr, fm) = m.orient(&g_expr, &x, &y)?;
    let yv = m.value(&y)?;
    let fy = fm.eval(&yv);
    if fy == yv {
        return Err(WitnessError::Degenerate(format!(
            "the mover fixes y = {yv}; then <g, f> fixes y, so x would be globally fixed as well"
        )));
    }
    let state = State {
        g: g_expr,
        gm,
        f: f_expr,
        fm,
        x,
        y,
    };
    m.run(state, inverted)
}

#[derive(Clone)]
struct State {
    g: Expr,
    gm: PLMap,
    f: Expr,
    fm: PLMap,
    x: Term,
    y: Term,
}

struct Outcome {
    witness: Expr,
    intervals: Vec<(Term, Term)>,
}

struct Machine<'a> {
    ev: Evaluator,
    used: HashSet<String>,
    definitions: Vec<Definition>,
    points: Vec<PointDef>,
    exponents: Vec<Exponent>,
    trace: Vec<Check>,
    cap: u64,
    context: Option<&'a GroupBall>,
}

fn one() -> Rat {
    Rat::one()
}

impl<'a> Machine<'a> {
    fn new(env: Env, context: Option<&'a GroupBall>, cap: u64) -> Machine<'a> {
        let used = env.keys().cloned().collect();
        Machine {
            ev: Evaluator::new(&env),
            used,
            definitions: Vec::new(),
            points: Vec::new(),
            exponents: Vec::new(),
            trace: Vec::new(),
            cap,
            context,
        }
    }

    fn fresh(&mut self, base: &str) -> String {
        let mut name = base.to_string();
        while self.used.contains(&name) {
            name.push('\'');
        }
        self.used.insert(name.clone());
        name
    }

    fn define(&mut self, base: &str, def: Expr) -> Result<(Expr, PLMap), WitnessError> {
        let name = self.fresh(base);
        self.definitions.push(Definition {
            name: name.clone(),
            expr: def.clone(),
        });
        let e = Expr::Named {
            name,
            def: Box::new(def),
        };
        let map = self.eval(&e)?;
        Ok((e, map))
    }

    fn point(&mut self, base: &str, def: Term) -> Result<Term, WitnessError> {
        let name = self.fresh(base);
        let value = self.value(&def)?;
        self.points.push(PointDef {
            name: name.clone(),
            term: def.clone(),
            value,
        });
        Ok(Term::named(&name, def))
    }

    fn eval(&mut self, e: &Expr) -> Result<PLMap, WitnessError> {
        self.ev.eval(e).map_err(WitnessError::Eval)
    }

    fn value(&mut self, t: &Term) -> Result<Rat, WitnessError> {
        self.ev.eval_term(t).map_err(WitnessError::Eval)
    }

    fn fixed_points(&mut self, g: &PLMap) -> Result<(Term, Term), WitnessError> {
        let (x, y) = fixed_pair(g);
        Ok((
            self.point("x", Term::Value(x))?,
            self.point("y", Term::Value(y))?,
        ))
    }

    /// Evaluates a comparison; records it when it holds, otherwise returns
    /// its description.
    fn compare(
        &mut self,
        stage: &str,
        lhs: &Term,
        relation: Relation,
        rhs: &Term,
    ) -> Result<Option<String>, WitnessError> {
        let lhs_value = self.value(lhs)?;
        let rhs_value = self.value(rhs)?;
        let check = Check {
            stage: stage.to_string(),
            lhs: lhs.clone(),
            relation,
            rhs: rhs.clone(),
            lhs_value,
            rhs_value,
        };
        if check.holds() {
            self.trace.push(check);
            Ok(None)
        } else {
            Ok(Some(format!(
                "{} {} {} is false ({} vs {})",
                check.lhs, relation, check.rhs, check.lhs_value, check.rhs_value
            )))
        }
    }

    fn require(
        &mut self,
        case: CaseTag,
        stage: &str,
        lhs: &Term,
        relation: Relation,
        rhs: &Term,
    ) -> Result<(), WitnessError> {
        match self.compare(stage, lhs, relation, rhs)? {
            None => Ok(()),
            Some(check) => Err(WitnessError::CheckFailed { case, check }),
        }
    }

    fn require_reduction(
        &mut self,
        from: CaseTag,
        lhs: &Term,
        relation: Relation,
        rhs: &Term,
    ) -> Result<(), WitnessError> {
        match self.compare("reduction", lhs, relation, rhs)? {
            None => Ok(()),
            Some(check) => Err(WitnessError::ReductionFailed {
                from,
                to: from.reduces_to().unwrap_or(from),
                check,
            }),
        }
    }

    /// Least `n` such that `test` holds after advancing `state` `n` times.
    fn min_exponent<T>(
        &mut self,
        name: &str,
        mut state: T,
        test: impl Fn(&T) -> bool,
        advance: impl Fn(&T) -> T,
    ) -> Result<i64, WitnessError> {
        for n in 0..=self.cap {
            if test(&state) {
                self.exponents.push(Exponent {
                    name: name.to_string(),
                    value: n as i64,
                });
                return Ok(n as i64);
            }
            state = advance(&state);
        }
        Err(WitnessError::ExponentCap {
            name: name.to_string(),
            cap: self.cap,
        })
    }

    fn orient(&mut self, g: &Expr, x: &Term, y: &Term) -> Result<(Expr, PLMap), WitnessError> {
        let f = Expr::input("f");
        let (xv, yv) = (self.value(x)?, self.value(y)?);
        let inside = |m: &PLMap| {
            let v = m.eval(&xv);
            xv < v && v < yv
        };
        let fm = self.eval(&f)?;
        let (mover, mm) = if inside(&fm) {
            (f, fm)
        } else if inside(&fm.inverse()) {
            (f.inv(), fm.inverse())
        } else {
            return Err(WitnessError::Precondition(format!(
                "neither f nor f^-1 sends x = {xv} into ({xv}, {yv})"
            )));
        };
        let fx = x.under(&mover);
        self.compare("mover", x, Relation::Lt, &fx)?;
        self.compare("mover", &fx, Relation::Lt, y)?;
        if mm.is_orientation_preserving() {
            return Ok((mover, mm));
        }
        let (phi, phim) = self.define("phi", mover.conjugating(g))?;
        let px = phim.eval(&xv);
        if px == xv {
            return Err(WitnessError::Degenerate(format!(
                "f g f^-1 fixes x = {xv}, which forces f^-1(x) = y"
            )));
        }
        let chosen = if inside(&phim) { phi } else { phi.inv() };
        let cm = self.eval(&chosen)?;
        let cx = x.under(&chosen);
        self.compare("mover", x, Relation::Lt, &cx)?;
        self.compare("mover", &cx, Relation::Lt, y)?;
        Ok((chosen, cm))
    }

    fn classify(&mut self, st: &State) -> Result<CaseTag, WitnessError> {
        let tag = classify_case(&st.gm, &st.fm)?;
        let fy = st.y.under(&st.f);
        let relation = if st.fm.eval(&self.value(&st.y)?) < self.value(&st.y)? {
            Relation::Lt
        } else {
            Relation::Gt
        };
        self.compare("case", &fy, relation, &st.y)?;
        Ok(tag)
    }

    fn run(mut self, st: State, inverted: bool) -> Result<WitnessReport, WitnessError> {
        let mut tag = self.classify(&st)?;
        let mut path = vec![tag];
        let mut st = st;
        if let Some(target) = tag.reduces_to() {
            st = self.reduce(tag, st)?;
            let next = self.classify(&st)?;
            if next != target {
                return Err(WitnessError::ReductionFailed {
                    from: tag,
                    to: target,
                    check: format!("the reduced configuration is case {next}"),
                });
            }
            path.push(next);
            tag = next;
        }
        let outcome = match tag {
            CaseTag::C1b => self.case_1b(&st)?,
            CaseTag::C2a => self.case_2a(&st)?,
            CaseTag::C3a => self.case_3a(&st)?,
            CaseTag::C4a => self.case_4a(&st)?,
            _ => unreachable!("reduction cases are rewritten above"),
        };
        self.finish(tag, path, inverted, outcome)
    }

    fn h_of(&mut self, st: &State) -> Result<(Expr, PLMap), WitnessError> {
        self.define("h", st.f.conjugating(&st.g))
    }

    fn reduce(&mut self, tag: CaseTag, st: State) -> Result<State, WitnessError> {
        let (h, hm) = self.h_of(&st)?;
        let (x, y) = (&st.x, &st.y);
        match tag {
            CaseTag::C1a | CaseTag::C4b => {
                let hx = x.under(&h);
                self.require_reduction(tag, x, Relation::Lt, &hx)?;
                self.require_reduction(tag, &hx, Relation::Lt, y)?;
                let rel = if tag == CaseTag::C1a {
                    Relation::Gt
                } else {
                    Relation::Lt
                };
                self.require_reduction(tag, &y.under(&h), rel, y)?;
                Ok(State { f: h, fm: hm, ..st })
            }
            CaseTag::C2b => {
                let hi = h.inv();
                let hx = x.under(&hi);
                self.require_reduction(tag, x, Relation::Lt, &hx)?;
                self.require_reduction(tag, &hx, Relation::Lt, y)?;
                self.require_reduction(tag, &y.under(&hi), Relation::Lt, y)?;
                Ok(State {
                    f: hi,
                    fm: hm.inverse(),
                    ..st
                })
            }
            CaseTag::C3b => {
                let (fx, fy) = (x.under(&st.f), y.under(&st.f));
                let gfx = fx.under(&st.g);
                self.require_reduction(tag, &fx, Relation::Lt, &gfx)?;
                self.require_reduction(tag, &gfx, Relation::Lt, &fy)?;
                self.require_reduction(tag, &fy.under(&st.g), Relation::Lt, &fy)?;
                let x2 = self.point("x", fx)?;
                let y2 = self.point("y", fy)?;
                Ok(State {
                    g: h,
                    gm: hm,
                    f: st.g,
                    fm: st.gm,
                    x: x2,
                    y: y2,
                })
            }
            _ => unreachable!("not a reduction case"),
        }
    }

    fn case_1b(&mut self, st: &State) -> Result<Outcome, WitnessError> {
        let c = CaseTag::C1b;
        let (h, _) = self.h_of(st)?;
        let (x, y) = (&st.x, &st.y);
        let (fx, fy) = (x.under(&st.f), y.under(&st.f));
        self.require(c, "hypothesis", x, Relation::Lt, &fx)?;
        self.require(c, "hypothesis", &fx, Relation::Lt, y)?;
        self.require(c, "hypothesis", y, Relation::Lt, &fy)?;
        let (w, _) = self.define("w", Expr::Compose(vec![h, st.g.inv()]))?;
        self.require(c, "conclusion", &x.under(&w), Relation::Gt, x)?;
        self.require(c, "conclusion", &fx.under(&w), Relation::Lt, &fx)?;
        self.require(c, "conclusion", &y.under(&w), Relation::Gt, y)?;
        self.require(c, "conclusion", &fy.under(&w), Relation::Lt, &fy)?;
        Ok(Outcome {
            witness: w,
            intervals: vec![(x.clone(), fx.clone()), (fx, y.clone()), (y.clone(), fy)],
        })
    }

    /// Cases 2a and 3a share their shape: with `k = h` and `step = g` (2a) or
    /// `k = h⁻¹` and `step = g⁻¹` (3a), find the least `n` with
    /// `stepⁿ(x-1) < k(x-1)` and `stepⁿ(y+1) > k(y+1)`; the witness is
    /// `k step⁻ⁿ`.
    fn case_outer(
        &mut self,
        c: CaseTag,
        st: &State,
        k: Expr,
        step: Expr,
    ) -> Result<Outcome, WitnessError> {
        let (x, y) = (&st.x, &st.y);
        let fx = x.under(&st.f);
        let fy = y.under(&st.f);
        self.require(c, "hypothesis", x, Relation::Lt, &fx)?;
        self.require(c, "hypothesis", &fy, Relation::Lt, y)?;
        let (xm, yp) = (x.shift(-one()), y.shift(one()));
        let (kxm, kyp) = (xm.under(&k), yp.under(&k));
        let km = self.eval(&k)?;
        let sm = self.eval(&step)?;
        let (xmv, ypv) = (self.value(&xm)?, self.value(&yp)?);
        let (ta, tb) = (km.eval(&xmv), km.eval(&ypv));
        let n = self.min_exponent(
            "n",
            (xmv, ypv),
            |(a, b)| a < &ta && b > &tb,
            |(a, b)| (sm.eval(a), sm.eval(b)),
        )?;
        let stepn = step.pow(n);
        self.require(c, "exponent", &xm.under(&stepn), Relation::Lt, &kxm)?;
        self.require(c, "exponent", &yp.under(&stepn), Relation::Gt, &kyp)?;
        let (w, _) = self.define("w", Expr::Compose(vec![k, step.pow(-n)]))?;
        self.require(c, "conclusion", &kxm.under(&w), Relation::Gt, &kxm)?;
        self.require(c, "conclusion", &x.under(&w), Relation::Lt, x)?;
        self.require(c, "conclusion", &y.under(&w), Relation::Gt, y)?;
        self.require(c, "conclusion", &kyp.under(&w), Relation::Lt, &kyp)?;
        Ok(Outcome {
            witness: w,
            intervals: vec![(kxm, x.clone()), (x.clone(), y.clone()), (y.clone(), kyp)],
        })
    }

    fn case_2a(&mut self, st: &State) -> Result<Outcome, WitnessError> {
        let (h, _) = self.h_of(st)?;
        self.case_outer(CaseTag::C2a, st, h, st.g.clone())
    }

    fn case_3a(&mut self, st: &State) -> Result<Outcome, WitnessError> {
        let (h, _) = self.h_of(st)?;
        self.case_outer(CaseTag::C3a, st, h.inv(), st.g.inv())
    }

    fn auxiliary(&mut self, name: &str, x: &Rat, y: &Rat) -> Result<Expr, WitnessError> {
        let ball = self.context.ok_or_else(|| {
            WitnessError::MissingAuxiliary(format!("case 4a needs a context group to find {name}"))
        })?;
        let found = ball.iter().find(|e| {
            e.map.is_orientation_preserving()
                && if name == "u" {
                    &e.map.eval(y) < x
                } else {
                    &e.map.eval(x) > y
                }
        });
        let want = if name == "u" { "u(y) < x" } else { "v(x) > y" };
        let e = found.ok_or_else(|| {
            WitnessError::MissingAuxiliary(format!(
                "no orientation-preserving {name} with {want} in the context ball of radius {}",
                ball.radius()
            ))
        })?;
        let letters: Vec<Expr> = e
            .word
            .letters()
            .iter()
            .map(|l| {
                let g = Expr::input(&ball.names()[l.generator]);
                if l.inverse {
                    g.inv()
                } else {
                    g
                }
            })
            .collect();
        let expr = if letters.len() == 1 {
            letters[0].clone()
        } else {
            Expr::Compose(letters)
        };
        if matches!(expr, Expr::Input(_)) {
            Ok(expr)
        } else {
            Ok(self.define(name, expr)?.0)
        }
    }

    fn case_4a(&mut self, st: &State) -> Result<Outcome, WitnessError> {
        let c = CaseTag::C4a;
        let (x, y) = (&st.x, &st.y);
        let (xv, yv) = (self.value(x)?, self.value(y)?);
        let u = self.auxiliary("u", &xv, &yv)?;
        let v = self.auxiliary("v", &xv, &yv)?;
        let (h, hm) = self.h_of(st)?;
        let (fu, fum) = self.define("f_u", u.conjugating(&st.g))?;
        let (fv, fvm) = self.define("f_v", v.conjugating(&st.g))?;
        let xt = self.point("x~", x.under(&st.f))?;
        let yt = self.point("y~", y.under(&st.f))?;
        let chain = [
            x.under(&u),
            y.under(&u),
            x.clone(),
            xt.clone(),
            yt.clone(),
            y.clone(),
            x.under(&v),
            y.under(&v),
        ];
        for pair in chain.windows(2) {
            self.require(c, "order", &pair[0], Relation::Lt, &pair[1])?;
        }

        let ytv = self.value(&yt)?;
        let hinv = hm.inverse();
        let ginv = st.gm.inverse();
        let y1 = &yv + one();
        let y2 = &y1 + one();

        let target = fvm.inverse().eval(&xv);
        let n1 = self.min_exponent("n1", xv.clone(), |p| p < &target, |p| hinv.eval(p))?;
        let n2 = self.min_exponent("n2", fvm.eval(&ytv), |p| p > &y2, |p| hm.eval(p))?;
        let m1 = self.min_exponent("m1", fum.eval(&xv), |p| p > &ytv, |p| ginv.eval(p))?;
        let m2 = self.min_exponent("m2", fum.eval(&yv), |p| p < &y1, |p| ginv.eval(p))?;
        let n = n1.max(n2);
        let m = m1.max(m2);
        self.exponents.push(Exponent {
            name: "n".into(),
            value: n,
        });
        self.exponents.push(Exponent {
            name: "m".into(),
            value: m,
        });

        let (yp1, yp2) = (y.shift(one()), y.shift(one() + one()));
        self.require(
            c,
            "exponent",
            &x.under(&h.pow(-n)),
            Relation::Lt,
            &x.under(&fv.inv()),
        )?;
        self.require(
            c,
            "exponent",
            &yt.under(&fv).under(&h.pow(n)),
            Relation::Gt,
            &yp2,
        )?;
        self.require(
            c,
            "exponent",
            &x.under(&fu).under(&st.g.pow(-m)),
            Relation::Gt,
            &yt,
        )?;
        self.require(
            c,
            "exponent",
            &y.under(&fu).under(&st.g.pow(-m)),
            Relation::Lt,
            &yp1,
        )?;

        let (s, _) = self.define("s", Expr::Compose(vec![h.pow(n), fv, h.pow(-n)]))?;
        let (t, _) = self.define("t", Expr::Compose(vec![st.g.pow(-m), fu, st.g.pow(m)]))?;
        self.require(c, "construction", &x.under(&s), Relation::Lt, &xt)?;
        self.require(c, "construction", &y.under(&s), Relation::Gt, &yp2)?;
        self.require(c, "construction", &x.under(&t), Relation::Gt, &yt)?;
        self.require(c, "construction", &y.under(&t), Relation::Lt, &yp1)?;

        let z1 = self.point("z1", x.under(&u).under(&st.g.pow(-m)))?;
        let z2 = self.point("z2", y.under(&v).under(&h.pow(n)))?;
        self.require(c, "comparison", &z1.under(&t), Relation::Eq, &z1)?;
        self.require(c, "comparison", &z1, Relation::Lt, &z1.under(&s))?;
        self.require(c, "comparison", &x.under(&t), Relation::Gt, &x.under(&s))?;
        self.require(c, "comparison", &y.under(&t), Relation::Lt, &y.under(&s))?;
        self.require(c, "comparison", &z2.under(&t), Relation::Gt, &z2)?;
        self.require(c, "comparison", &z2.under(&s), Relation::Eq, &z2)?;

        // w = t s^-1 is conjugate to s^-1 t, whose sign changes sit at z1, x, y, z2;
        // for w they move to s(z1), s(x), s(y), s(z2) = z2.
        let (w, _) = self.define("w", Expr::Compose(vec![t, s.inv()]))?;
        let (sz1, sx, sy) = (z1.under(&s), x.under(&s), y.under(&s));
        self.require(c, "conclusion", &sz1.under(&w), Relation::Lt, &sz1)?;
        self.require(c, "conclusion", &sx.under(&w), Relation::Gt, &sx)?;
        self.require(c, "conclusion", &sy.under(&w), Relation::Lt, &sy)?;
        self.require(c, "conclusion", &z2.under(&w), Relation::Gt, &z2)?;
        Ok(Outcome {
            witness: w,
            intervals: vec![(sz1, sx.clone()), (sx, sy.clone()), (sy, z2)],
        })
    }

    fn finish(
        mut self,
        case: CaseTag,
        path: Vec<CaseTag>,
        inverted: bool,
        outcome: Outcome,
    ) -> Result<WitnessReport, WitnessError> {
        let witness = self.eval(&outcome.witness)?;
        let fixed_points = witness.fixed_set();
        let mut separating_intervals = Vec::new();
        for (lo, hi) in outcome.intervals {
            let lo_value = self.value(&lo)?;
            let hi_value = self.value(&hi)?;
            separating_intervals.push(SeparatingInterval {
                lo,
                hi,
                lo_value,
                hi_value,
            });
        }
        let report = WitnessReport {
            case,
            path,
            inverted,
            inputs: self.ev.env().clone(),
            definitions: self.definitions,
            points: self.points,
            exponents: self.exponents,
            witness_expr: outcome.witness,
            witness,
            fixed_points,
            separating_intervals,
            trace: self.trace,
        };
        report
            .verify()
            .map_err(|check| WitnessError::CheckFailed { case, check })?;
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_ball, GroupBall};
    use crate::rat::rat;

    fn map(s: &str) -> PLMap {
        s.parse().unwrap()
    }

    fn g(left: &str, mid: &str, right: &str) -> PLMap {
        map(&format!(
            "pl left_slope={left} anchors=(0,0);{mid};(1,1) right_slope={right}"
        ))
    }

    fn g1() -> PLMap {
        g("1/2", "(1/2,3/4)", "2")
    }
    fn g2() -> PLMap {
        g("2", "(1/2,3/4)", "2")
    }
    fn g3() -> PLMap {
        g("1/2", "(1/2,3/4)", "1/2")
    }
    fn g4() -> PLMap {
        g("1/2", "(1/2,1/4)", "2")
    }
    fn shift() -> PLMap {
        PLMap::translation(rat(1, 2))
    }
    fn squeeze() -> PLMap {
        map("pl left_slope=1 anchors=(0,1/2);(1,3/4) right_slope=1")
    }
    fn context(g: &PLMap, f: &PLMap) -> GroupBall {
        let names = ["g", "f", "u", "v"].map(String::from).to_vec();
        let gens = vec![
            g.clone(),
            f.clone(),
            PLMap::translation(rat(-2, 1)),
            PLMap::translation(rat(2, 1)),
        ];
        GroupBall::build(gens, names, 1, 1000).unwrap()
    }

    fn run(g: &PLMap, f: &PLMap) -> Result<WitnessReport, WitnessError> {
        construct_witness(g, f, Some(&context(g, f)), DEFAULT_EXPONENT_CAP)
    }

    #[test]
    fn types_of_fixtures() {
        for (m, t) in [
            (g1(), "(+,+,+)"),
            (g2(), "(-,+,+)"),
            (g3(), "(+,+,-)"),
            (g4(), "(+,-,+)"),
        ] {
            assert_eq!(m.type_signature().unwrap().to_string(), t);
            assert_eq!(m.fixed_set().points(), vec![rat(0, 1), rat(1, 1)]);
        }
    }

    #[test]
    fn normalization() {
        let (n, inv) = normalize_direction(&g1().inverse()).unwrap();
        assert!(inv);
        assert_eq!(n.type_signature().unwrap().to_string(), "(+,+,+)");
        assert_eq!(normalize_direction(&g1()).unwrap(), (g1(), false));
        let (n, inv) = normalize_direction(&g4().inverse()).unwrap();
        assert!(inv);
        assert_eq!(n.type_signature().unwrap().to_string(), "(+,-,+)");
        assert_eq!(normalize_direction(&n).unwrap(), (n, false));
        assert!(matches!(
            normalize_direction(&shift()),
            Err(WitnessError::Precondition(_))
        ));
    }

    #[test]
    fn classification() {
        assert_eq!(classify_case(&g1(), &shift()).unwrap(), CaseTag::C1b);
        assert_eq!(classify_case(&g4(), &squeeze()).unwrap(), CaseTag::C4a);
        let f = map("pl left_slope=1 anchors=(0,1/2);(1,3/2) right_slope=1");
        assert_eq!(classify_case(&g2(), &f).unwrap(), CaseTag::C2b);
        assert!(classify_case(&g1().inverse(), &shift()).is_err());
    }

    #[test]
    fn mover_orientation() {
        assert_eq!(orient_mover(&g1(), &shift()).unwrap(), shift());
        let r = PLMap::affine(rat(-1, 1), rat(1, 1))
            .unwrap()
            .compose(&shift());
        let m = orient_mover(&g1(), &r).unwrap();
        assert!(m.is_orientation_preserving());
        let v = m.eval(&rat(0, 1));
        assert!(rat(0, 1) < v && v < rat(1, 1));
        let fixes_y = map("pl left_slope=1 anchors=(0,1/2);(1,1) right_slope=1");
        let err = construct_witness(&g1(), &fixes_y, None, 100).unwrap_err();
        assert!(matches!(err, WitnessError::Degenerate(_)));
    }

    #[test]
    fn every_case_produces_a_verified_witness() {
        let cases = [
            (g1(), squeeze(), vec![CaseTag::C1a, CaseTag::C1b]),
            (g1(), shift(), vec![CaseTag::C1b]),
            (g2(), squeeze(), vec![CaseTag::C2a]),
            (g2(), shift(), vec![CaseTag::C2b, CaseTag::C2a]),
            (g3(), squeeze(), vec![CaseTag::C3a]),
            (g3(), shift(), vec![CaseTag::C3b, CaseTag::C3a]),
            (g4(), squeeze(), vec![CaseTag::C4a]),
            (g4(), shift(), vec![CaseTag::C4b, CaseTag::C4a]),
        ];
        for (g, f, path) in cases {
            let report = run(&g, &f).unwrap_or_else(|e| panic!("{path:?}: {e}"));
            assert_eq!(report.path, path);
            report.verify().unwrap();
            assert!(report.witness.fixed_set().exceeds(2));
            assert_eq!(report.separating_intervals.len(), 3);
        }
    }

    #[test]
    fn case_1b_intervals() {
        let r = run(&g1(), &shift()).unwrap();
        let ends: Vec<(Rat, Rat)> = r
            .separating_intervals
            .iter()
            .map(|i| (i.lo_value.clone(), i.hi_value.clone()))
            .collect();
        assert_eq!(
            ends,
            vec![
                (rat(0, 1), rat(1, 2)),
                (rat(1, 2), rat(1, 1)),
                (rat(1, 1), rat(3, 2))
            ]
        );
        assert_eq!(r.witness_expr.expanded().to_string(), "(f g f^-1) g^-1");
    }

    #[test]
    fn exponents_are_minimal() {
        for (g, f) in [(g2(), squeeze()), (g3(), squeeze())] {
            let r = run(&g, &f).unwrap();
            let n = r.exponent("n").unwrap();
            assert!(n >= 1);
            let h = f.compose(&g).compose(&f.inverse());
            let (k, step) = if r.case == CaseTag::C2a {
                (h, g.clone())
            } else {
                (h.inverse(), g.inverse())
            };
            let ok = |n: i64| {
                let p = step.pow(n);
                p.eval(&rat(-1, 1)) < k.eval(&rat(-1, 1)) && p.eval(&rat(2, 1)) > k.eval(&rat(2, 1))
            };
            assert!(ok(n) && !ok(n - 1));
        }
        let r = run(&g4(), &squeeze()).unwrap();
        for (e, parts) in [("n", ["n1", "n2"]), ("m", ["m1", "m2"])] {
            let v = r.exponent(e).unwrap();
            assert_eq!(
                v,
                parts.iter().map(|p| r.exponent(p).unwrap()).max().unwrap()
            );
        }
        assert!(r.point("z1").unwrap() < &rat(0, 1));
        assert!(r.point("z2").unwrap() > &rat(1, 1));
    }

    #[test]
    fn case_4a_needs_context() {
        let err = construct_witness(&g4(), &squeeze(), None, 100).unwrap_err();
        assert!(matches!(err, WitnessError::MissingAuxiliary(_)));
        let ball = build_ball(&[g4(), squeeze()], 2).unwrap();
        let err = construct_witness(&g4(), &squeeze(), Some(&ball), 100).unwrap_err();
        assert!(matches!(err, WitnessError::MissingAuxiliary(_)));
    }

    #[test]
    fn wandering() {
        let ball = build_ball(&[g1()], 6).unwrap();
        assert!(wandering_check(&g1(), &ball).unwrap().is_holds());
        let ball = build_ball(&[g1(), shift()], 1).unwrap();
        let v = wandering_check(&g1(), &ball).unwrap();
        assert_eq!(v.witness.unwrap().element, shift());
        let ball = context(&g4(), &PLMap::identity());
        let v = wandering_check(&g4(), &ball).unwrap();
        let exhaustive = ball.iter().any(|e| {
            let p = e.map.eval(&rat(0, 1));
            rat(0, 1) < p && p < rat(1, 1)
        });
        assert_eq!(v.is_violated(), exhaustive);
    }

    #[test]
    fn report_json_round_trip() {
        let r = run(&g4(), &shift()).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: WitnessReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        back.verify().unwrap();
        assert!(r.to_string().contains("w = t s^-1"));
    }
}
