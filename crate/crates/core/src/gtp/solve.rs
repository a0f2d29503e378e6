//! Nested search over effort, candidate points, grasps and orientations.

use std::f64::consts::PI;
use std::time::Instant;

use crate::geo::{
    collision_free, fraction_from, path_feasible, path_feasible_steps, placement_candidates, prisms_free,
    reach_feasible, sample_points, seen_at_all, visibility_at, yaw, AgentModel, ObjectModel, Pose, Prism, Region,
    Scene, Support, Vec2, Vec3, ORIENTATIONS, PATH_STEPS,
};

use super::apply::apply_step;
use super::{
    AtomicState, Checkpoint, Cursor, EffortOf, Event, FailureMemo, Goal, GtpConfig, GtpError, GtpSolution, GtpStats,
    GtpTask, MemoKey, SolveOutcome, Step, TaskKind,
};

/// Height of the pre-place pose above the target.
pub const PLACE_LIFT: f64 = 0.05;
/// Distance of the pre-grasp pose from the grasp along the approach.
pub const APPROACH: f64 = 0.10;
/// Visibility threshold for the keep-visible constraint when the task sets none.
const KEEP_VISIBLE: f64 = 0.5;

struct Slot {
    region: Option<usize>,
    base: Vec3,
}

struct Ctx<'a> {
    task: &'a GtpTask,
    scene: &'a Scene,
    obj: &'a ObjectModel,
    robot: &'a AgentModel,
    target: Option<&'a AgentModel>,
    cfg: &'a GtpConfig,
    regions: Vec<Region>,
    slots: Vec<Slot>,
    gripped: bool,
    grasps: Vec<usize>,
    yaws: Vec<f64>,
    exclude: Vec<&'a str>,
    keep: Vec<&'a ObjectModel>,
    /// Object pose the carry starts from.
    source: Pose,
}

enum Verdict {
    Ok,
    /// Fails regardless of effort.
    Hard,
    /// May pass at a higher effort.
    Soft,
}

struct Timeout;

struct Run<'r> {
    stats: &'r mut GtpStats,
    events: &'r mut Vec<Event>,
    deadline: Instant,
    instrument: bool,
    retest: bool,
}

impl Run<'_> {
    fn log(&mut self, e: Event) {
        if self.instrument {
            self.events.push(e);
        }
    }

    fn check_time(&self) -> Result<(), Timeout> {
        if Instant::now() >= self.deadline {
            Err(Timeout)
        } else {
            Ok(())
        }
    }
}

fn needs_target(kind: TaskKind) -> bool {
    matches!(
        kind,
        TaskKind::MakeAcc | TaskKind::Show | TaskKind::Give | TaskKind::PutAway
    )
}

impl<'a> Ctx<'a> {
    fn new(task: &'a GtpTask, scene: &'a Scene, cfg: &'a GtpConfig) -> Result<Ctx<'a>, GtpError> {
        if task.kind == TaskKind::Compound {
            return Err(GtpError::Contract("compound task inside a chain".into()));
        }
        let obj = scene.object(&task.object)?;
        let robot = scene.robot()?;
        let target = match (&task.target, needs_target(task.kind)) {
            (Some(t), true) => Some(scene.agent(t)?),
            (None, true) => return Err(GtpError::Contract(format!("{} needs a target agent", task.kind))),
            _ => None,
        };
        let gripped = matches!(&obj.support, Support::Gripper(a) if *a == robot.name);
        let held_elsewhere = matches!(&obj.support, Support::Gripper(a) if *a != robot.name);
        let mut exclude = vec![obj.name.as_str()];
        exclude.extend(scene.contents(&obj.name));
        let keep = match &task.profile.keep_visible_class {
            Some(c) => scene
                .objects
                .iter()
                .filter(|o| &o.class == c && o.name != obj.name)
                .collect(),
            None => vec![],
        };
        let grasps = if gripped {
            vec![obj.held_grasp.unwrap_or(0)]
        } else {
            (0..obj.grasps.len()).collect()
        };
        let source = if gripped {
            obj.pose
        } else {
            Pose {
                z: obj.pose.z + PLACE_LIFT,
                ..obj.pose
            }
        };
        let mut ctx = Ctx {
            task,
            scene,
            obj,
            robot,
            target,
            cfg,
            regions: vec![],
            slots: vec![],
            gripped,
            grasps,
            yaws: (0..ORIENTATIONS).map(yaw).collect(),
            exclude,
            keep,
            source,
        };
        let blocked = held_elsewhere || (obj.heavy && !gripped);
        match &task.goal {
            Goal::Hold => {
                ctx.yaws = vec![obj.pose.yaw];
                if !blocked && !gripped {
                    ctx.slots.push(Slot {
                        region: None,
                        base: Vec3::new(obj.pose.x, obj.pose.y, obj.pose.z),
                    });
                }
            }
            Goal::Place { surfaces } => {
                let names: Vec<String> = if !surfaces.is_empty() {
                    surfaces.clone()
                } else if let Some(r) = scene.regions.get(task.kind.region_key()) {
                    r.clone()
                } else {
                    scene
                        .surfaces
                        .iter()
                        .filter(|s| s.placeable)
                        .map(|s| s.name.clone())
                        .collect()
                };
                for n in &names {
                    ctx.regions.push(Region::of_surface(scene.surface(n)?));
                }
                if !blocked {
                    let preferred = ctx.preferred();
                    let viewer = if task.kind == TaskKind::MakeAcc { target } else { None };
                    let mut ranked = placement_candidates(scene, obj, &ctx.regions, preferred, viewer);
                    if let Some(p) = cfg.first_try.get(&obj.name) {
                        let nearest = ranked
                            .iter()
                            .enumerate()
                            .min_by(|a, b| a.1.position.xy().dist(*p).total_cmp(&b.1.position.xy().dist(*p)))
                            .map(|(i, _)| i);
                        if let Some(i) = nearest {
                            let c = ranked.remove(i);
                            ranked.insert(0, c);
                        }
                    }
                    for c in ranked {
                        let region = ctx.regions.iter().position(|r| r.name == c.region);
                        ctx.slots.push(Slot {
                            region,
                            base: c.position,
                        });
                    }
                }
            }
            Goal::Present { zone, .. } => {
                let z = scene.zone(zone)?;
                if !blocked {
                    ctx.slots.push(Slot {
                        region: None,
                        base: Vec3::new(z.point.x, z.point.y, z.point.z - obj.height / 2.0),
                    });
                }
            }
        }
        Ok(ctx)
    }

    fn preferred(&self) -> Vec2 {
        match self.task.kind {
            TaskKind::MakeAcc => self
                .scene
                .exchange_point
                .unwrap_or_else(|| self.target.map_or(self.robot.base, |t| t.base)),
            TaskKind::PutOn => self.regions.first().map_or(self.robot.base, |r| r.polygon.centroid()),
            _ => self.robot.base,
        }
    }

    fn cap(&self) -> u8 {
        self.task.profile.effort_cap.clamp(1, 4)
    }

    fn center_of(&self, slot: &Slot) -> Vec3 {
        if self.task.goal == Goal::Hold {
            return self.obj.center();
        }
        Vec3::new(slot.base.x, slot.base.y, slot.base.z + self.obj.height / 2.0)
    }

    fn pose_at(&self, slot: &Slot, yaw: f64) -> Pose {
        match self.task.goal {
            Goal::Hold => Pose {
                x: self.robot.hand.x,
                y: self.robot.hand.y,
                z: self.robot.hand.z - self.obj.height / 2.0,
                yaw,
            },
            _ => Pose {
                x: slot.base.x,
                y: slot.base.y,
                z: slot.base.z,
                yaw,
            },
        }
    }

    /// Effort-independent checks on the destination point.
    fn point_hard(&self, slot: &Slot) -> bool {
        let c = self.center_of(slot);
        let p = &self.task.profile;
        if p.effort_of == EffortOf::Target && p.robot_reach && !reach_feasible(c, self.robot, 4) {
            return false;
        }
        if p.hide_from_target {
            if let Some(t) = self.target {
                if reach_feasible(c, t, self.cap()) {
                    return false;
                }
            }
        }
        true
    }

    fn point_soft(&self, slot: &Slot, e: u8) -> bool {
        let c = self.center_of(slot);
        let p = &self.task.profile;
        if p.effort_of == EffortOf::Robot && p.robot_reach && !reach_feasible(c, self.robot, e) {
            return false;
        }
        if p.target_reach {
            match self.target {
                Some(t) if reach_feasible(c, t, e) => {}
                _ => return false,
            }
        }
        true
    }

    /// Approach along the grasp direction and lift-off, for an object not yet
    /// in the gripper.
    fn pick_ok(&self, g: usize) -> bool {
        let o = self.obj;
        if !prisms_free(self.scene, &[o.gripper_at(g, &o.pose)], &self.exclude) {
            return false;
        }
        let a = o.grasps[g].approach;
        let a = a.scale(APPROACH / a.norm()).rotate(o.pose.yaw);
        let pre = Pose {
            x: o.pose.x + a.x,
            y: o.pose.y + a.y,
            ..o.pose
        };
        path_feasible_steps(self.scene, o, g, false, &pre, &o.pose, PATH_STEPS)
            && collision_free(self.scene, o, &self.source, &[])
    }

    fn facing_ok(&self, pose: &Pose) -> bool {
        if !(self.task.profile.facing_front && self.obj.has_front) {
            return true;
        }
        let Some(t) = self.target else { return true };
        let dir = t.base.sub(pose.xy());
        let front = self.obj.front_at(pose);
        let ang = front.cross(dir).atan2(front.dot(dir));
        let half = PI / 8.0;
        ang >= -half - 1e-12 && ang < half - 1e-12
    }

    fn cheap(&self, slot: &Slot, g: usize, pose: &Pose) -> bool {
        if let Some(r) = slot.region {
            if !self.regions[r]
                .polygon
                .contains_polygon(&self.obj.footprint_at(pose), crate::geo::scene::TOL)
            {
                return false;
            }
        }
        collision_free(self.scene, self.obj, pose, &[])
            && self.facing_ok(pose)
            && prisms_free(self.scene, &[self.obj.gripper_at(g, pose)], &self.exclude)
    }

    fn keep_visible_ok(&self, pose: &Pose) -> bool {
        let th = self.task.profile.target_visible.unwrap_or(KEEP_VISIBLE);
        let Some(t) = self.target else { return true };
        self.keep.iter().all(|o| {
            let mut ex = self.exclude.clone();
            ex.push(o.name.as_str());
            let mut occ: Vec<Prism> = self.scene.solids(&ex).into_iter().map(|s| s.prism).collect();
            occ.extend(self.obj.solids_at(pose));
            let samples = sample_points(o, &o.pose, self.cfg.samples);
            fraction_from(&samples, t.eyes[0], &occ) >= th - 1e-12
        })
    }

    fn visibility(&self, pose: &Pose, e: u8) -> f64 {
        let Some(t) = self.target else { return 0.0 };
        visibility_at(self.scene, self.obj, pose, t, e, self.cfg.samples, &self.exclude[1..])
    }

    fn approach_pose(&self, pose: &Pose) -> Pose {
        match self.task.goal {
            Goal::Place { .. } => Pose {
                z: pose.z + PLACE_LIFT,
                ..*pose
            },
            _ => *pose,
        }
    }

    /// All checks on one destination pose for grasp `g` at effort `e`,
    /// cheapest first. Counts a planner call when the path is tried.
    fn evaluate(&self, slot: &Slot, g: usize, pose: &Pose, e: u8, key: MemoKey, run: &mut Run) -> Verdict {
        if !self.cheap(slot, g, pose) {
            return Verdict::Hard;
        }
        let p = &self.task.profile;
        if p.hide_from_target {
            run.log(Event::Visibility {
                key,
                cheap_passed: true,
            });
            if let Some(t) = self.target {
                if seen_at_all(
                    self.scene,
                    self.obj,
                    pose,
                    t,
                    self.cap(),
                    self.cfg.samples,
                    &self.exclude[1..],
                ) {
                    return Verdict::Hard;
                }
            }
        }
        if !self.keep.is_empty() {
            run.log(Event::Visibility {
                key,
                cheap_passed: true,
            });
            if !self.keep_visible_ok(pose) {
                return Verdict::Hard;
            }
        }
        if let Some(th) = p.target_visible {
            run.log(Event::Visibility {
                key,
                cheap_passed: true,
            });
            if self.visibility(pose, e) < th - 1e-12 {
                return Verdict::Soft;
            }
        }
        run.stats.calls += 1;
        if !path_feasible(self.scene, self.obj, g, true, &self.source, &self.approach_pose(pose)) {
            return Verdict::Hard;
        }
        Verdict::Ok
    }

    fn make_step(&self, pi: usize, g: usize, ox: usize, pose: Pose, e: u8) -> Step {
        let slot = &self.slots[pi];
        self.step_for(slot, pi, g, ox, pose, e)
    }

    fn step_for(&self, slot: &Slot, pi: usize, g: usize, ox: usize, target: Pose, e: u8) -> Step {
        let (pose, support, held) = match &self.task.goal {
            Goal::Hold => (target, Support::Gripper(self.robot.name.clone()), Some(g)),
            Goal::Place { .. } => {
                let name = slot.region.map_or_else(String::new, |r| self.regions[r].name.clone());
                (target, Support::Surface(name), None)
            }
            Goal::Present { release: false, .. } => (target, Support::Gripper(self.robot.name.clone()), Some(g)),
            Goal::Present { release: true, .. } => {
                let t = self.target.expect("handover has a target");
                let pose = Pose {
                    x: t.hand.x,
                    y: t.hand.y,
                    z: t.hand.z - self.obj.height / 2.0,
                    yaw: target.yaw,
                };
                (pose, Support::Gripper(t.name.clone()), None)
            }
        };
        Step {
            kind: self.task.kind,
            object: self.obj.name.clone(),
            effort: e,
            grasp: g,
            grasp_id: self.obj.grasps[g].id.clone(),
            candidate: pi,
            orientation: ox,
            target,
            pose,
            support,
            path: (self.source, self.approach_pose(&target)),
            held_grasp: held,
        }
    }
}

enum Visit {
    Found(Box<Step>),
    Failed { hard: bool },
}

/// Visits point `pi` at effort `e`, starting at grasp slot `g0` and
/// orientation `o0`. A `dry` visit evaluates without recording anything on
/// success; it is used to retest memoized points.
#[allow(clippy::too_many_arguments)]
fn visit_point(
    ctx: &Ctx,
    st: &mut AtomicState,
    pi: usize,
    e: u8,
    g0: usize,
    o0: usize,
    dry: bool,
    run: &mut Run,
) -> Result<Visit, Timeout> {
    run.stats.pts += 1;
    run.log(Event::Tested {
        key: MemoKey::Point(pi),
        effort: e,
    });
    let slot = &ctx.slots[pi];
    if !ctx.point_hard(slot) {
        return Ok(Visit::Failed { hard: true });
    }
    if !ctx.point_soft(slot, e) {
        return Ok(Visit::Failed { hard: false });
    }
    let mut hard = g0 == 0 && o0 == 0;
    let mut o_start = o0;
    for gx in g0..ctx.grasps.len() {
        let g = ctx.grasps[gx];
        if !ctx.gripped {
            let gk = MemoKey::Grasp(g);
            if st.memo.get(gk).is_some() {
                if run.retest {
                    let still_fails = !ctx.pick_ok(g);
                    run.log(Event::Retested {
                        key: gk,
                        effort: e,
                        still_fails,
                    });
                } else {
                    run.log(Event::Skipped { key: gk, effort: e });
                }
                o_start = 0;
                continue;
            }
            run.stats.grasps += 1;
            let ok = match st.pick.get(&g) {
                Some(&ok) => ok,
                None => {
                    run.log(Event::Tested { key: gk, effort: e });
                    run.stats.calls += 1;
                    let ok = ctx.pick_ok(g);
                    st.pick.insert(g, ok);
                    ok
                }
            };
            if !ok {
                st.memo.insert(gk, e);
                run.log(Event::Memoized { key: gk, effort: e });
                o_start = 0;
                continue;
            }
        }
        for ox in o_start..ctx.yaws.len() {
            run.check_time()?;
            if st.returned.contains(&(pi, g, ox)) {
                hard = false;
                continue;
            }
            let key = MemoKey::Orient(pi, g, ox);
            let pose = ctx.pose_at(slot, ctx.yaws[ox]);
            if st.memo.get(key).is_some() {
                if run.retest {
                    let v = ctx.evaluate(slot, g, &pose, e, key, run);
                    run.log(Event::Retested {
                        key,
                        effort: e,
                        still_fails: !matches!(v, Verdict::Ok),
                    });
                } else {
                    run.log(Event::Skipped { key, effort: e });
                }
                continue;
            }
            run.stats.orts += 1;
            run.log(Event::Tested { key, effort: e });
            match ctx.evaluate(slot, g, &pose, e, key, run) {
                Verdict::Hard => {
                    st.memo.insert(key, e);
                    run.log(Event::Memoized { key, effort: e });
                }
                Verdict::Soft => hard = false,
                Verdict::Ok => {
                    let step = ctx.make_step(pi, g, ox, pose, e);
                    if !dry {
                        st.cursor = Cursor {
                            effort: e,
                            point: pi,
                            grasp: gx,
                            orient: ox + 1,
                        };
                        st.returned.insert((pi, g, ox));
                    }
                    return Ok(Visit::Found(Box::new(step)));
                }
            }
        }
        o_start = 0;
    }
    Ok(Visit::Failed { hard })
}

fn next_atomic(ctx: &Ctx, st: &mut AtomicState, run: &mut Run) -> Result<Option<Step>, Timeout> {
    let cap = ctx.cap();
    if st.cursor.effort == 0 {
        st.cursor.effort = 1;
    }
    while st.cursor.effort <= cap {
        let e = st.cursor.effort;
        while st.cursor.point < ctx.slots.len() {
            run.check_time()?;
            let pi = st.cursor.point;
            let pk = MemoKey::Point(pi);
            if st.memo.get(pk).is_some() {
                if run.retest {
                    let before = st.cursor;
                    let v = visit_point(ctx, st, pi, e, 0, 0, true, run)?;
                    st.cursor = before;
                    run.log(Event::Retested {
                        key: pk,
                        effort: e,
                        still_fails: !matches!(v, Visit::Found(_)),
                    });
                } else {
                    run.log(Event::Skipped { key: pk, effort: e });
                }
            } else {
                let (g0, o0) = (st.cursor.grasp, st.cursor.orient);
                match visit_point(ctx, st, pi, e, g0, o0, false, run)? {
                    Visit::Found(step) => return Ok(Some(*step)),
                    Visit::Failed { hard: true } => {
                        st.memo.insert(pk, e);
                        run.log(Event::Memoized { key: pk, effort: e });
                    }
                    Visit::Failed { hard: false } => {}
                }
            }
            st.cursor = Cursor {
                effort: e,
                point: pi + 1,
                grasp: 0,
                orient: 0,
            };
        }
        st.cursor = Cursor {
            effort: e + 1,
            point: 0,
            grasp: 0,
            orient: 0,
        };
    }
    Ok(None)
}

fn fresh(scene: &Scene) -> AtomicState {
    AtomicState {
        memo: FailureMemo::for_version(scene.version),
        ..Default::default()
    }
}

/// First solution of `task` on `scene`.
pub fn solve(task: &GtpTask, scene: &Scene, cfg: &GtpConfig) -> Result<SolveOutcome, GtpError> {
    resume(task, scene, Checkpoint::default(), cfg)
}

/// Next solution after the one `checkpoint` stopped at. `scene` must be the
/// scene the checkpoint was produced on. Compound tasks advance their last
/// component first and fall back to earlier ones when it runs dry.
pub fn resume(task: &GtpTask, scene: &Scene, mut chk: Checkpoint, cfg: &GtpConfig) -> Result<SolveOutcome, GtpError> {
    let start = Instant::now();
    let chain = task.chain();
    if chain.is_empty() {
        return Err(GtpError::Contract(format!("{task} has no components")));
    }
    let mut stats = GtpStats {
        kind: Some(task.stats_kind()),
        ..Default::default()
    };
    let mut events = Vec::new();
    let finish = |chk: Checkpoint, solution: Option<GtpSolution>, mut stats: GtpStats, events: Vec<Event>| {
        stats.success = solution.is_some();
        stats.time = start.elapsed().as_secs_f64();
        SolveOutcome {
            solution,
            checkpoint: chk,
            stats,
            events,
        }
    };
    if chk.exhausted {
        return Ok(finish(chk, None, stats, events));
    }
    let n = chain.len();
    let mut scenes = vec![scene.clone()];
    let mut level;
    if chk.levels.is_empty() {
        chk.levels.push(fresh(scene));
        chk.steps.clear();
        level = 0;
    } else {
        level = chk.levels.len() - 1;
        chk.steps.truncate(level);
        for s in &chk.steps {
            let mut next = scenes.last().expect("non-empty").clone();
            apply_step(&mut next, s)?;
            scenes.push(next);
        }
    }
    let mut run = Run {
        stats: &mut stats,
        events: &mut events,
        deadline: start + cfg.timeout,
        instrument: cfg.instrument,
        retest: cfg.retest_memo,
    };
    loop {
        let ctx = Ctx::new(chain[level], &scenes[level], cfg)?;
        match next_atomic(&ctx, &mut chk.levels[level], &mut run) {
            Err(Timeout) => {
                run.stats.timed_out = true;
                drop(ctx);
                return Ok(finish(chk, None, stats, events));
            }
            Ok(Some(step)) => {
                let mut next = scenes[level].clone();
                apply_step(&mut next, &step)?;
                chk.steps.push(step);
                if level + 1 == n {
                    let solution = GtpSolution {
                        task: task.to_string(),
                        steps: chk.steps.clone(),
                        base_version: scene.version,
                        base_fingerprint: scene.fingerprint(),
                        scene_version: scene.version + 1,
                    };
                    drop(ctx);
                    return Ok(finish(chk, Some(solution), stats, events));
                }
                drop(ctx);
                chk.levels.push(fresh(&next));
                scenes.push(next);
                level += 1;
            }
            Ok(None) => {
                drop(ctx);
                if level == 0 {
                    chk.exhausted = true;
                    return Ok(finish(chk, None, stats, events));
                }
                chk.levels.pop();
                scenes.pop();
                chk.steps.pop();
                level -= 1;
            }
        }
    }
}

/// Checks a step from scratch against its task at the step's effort.
pub(crate) fn verify_step(task: &GtpTask, scene: &Scene, step: &Step, cfg: &GtpConfig) -> Result<(), String> {
    let quiet = GtpConfig {
        instrument: false,
        retest_memo: false,
        ..cfg.clone()
    };
    let ctx = Ctx::new(task, scene, &quiet).map_err(|e| e.to_string())?;
    if step.object != task.object || step.kind != task.kind {
        return Err(format!("step {:?} does not belong to {task}", step.kind));
    }
    let region = match &task.goal {
        Goal::Place { .. } => {
            let Support::Surface(name) = &step.support else {
                return Err("placement without a supporting surface".into());
            };
            Some(
                ctx.regions
                    .iter()
                    .position(|r| &r.name == name)
                    .ok_or_else(|| format!("{name} is not an allowed surface"))?,
            )
        }
        _ => None,
    };
    let slot = match &task.goal {
        Goal::Hold => Slot {
            region: None,
            base: Vec3::new(ctx.obj.pose.x, ctx.obj.pose.y, ctx.obj.pose.z),
        },
        _ => Slot {
            region,
            base: Vec3::new(step.target.x, step.target.y, step.target.z),
        },
    };
    if task.goal != Goal::Hold {
        let expect = ctx.pose_at(&slot, step.target.yaw);
        if (expect.z - step.target.z).abs() > 1e-9 {
            return Err("target height does not match the surface or zone".into());
        }
    }
    let e = step.effort;
    if !(1..=ctx.cap()).contains(&e) {
        return Err(format!("effort {e} outside 1..={}", ctx.cap()));
    }
    if !ctx.point_hard(&slot) || !ctx.point_soft(&slot, e) {
        return Err(format!("reach constraint violated at effort {e}"));
    }
    if step.grasp >= ctx.obj.grasps.len() {
        return Err(format!("grasp {} does not exist", step.grasp));
    }
    if ctx.gripped {
        if Some(step.grasp) != ctx.obj.held_grasp.or(Some(0)) {
            return Err("held object regrasped".into());
        }
    } else if !ctx.pick_ok(step.grasp) {
        return Err(format!("grasp {} is not reachable", step.grasp_id));
    }
    let mut sink = GtpStats::default();
    let mut events = vec![];
    let mut run = Run {
        stats: &mut sink,
        events: &mut events,
        deadline: Instant::now() + quiet.timeout,
        instrument: false,
        retest: false,
    };
    match ctx.evaluate(&slot, step.grasp, &step.target, e, MemoKey::Point(0), &mut run) {
        Verdict::Ok => Ok(()),
        Verdict::Hard => Err("destination fails an effort-independent check".into()),
        Verdict::Soft => Err(format!("visibility below threshold at effort {e}")),
    }
}
