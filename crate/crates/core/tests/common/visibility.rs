//! Visibility fractions and the thresholds built on them, checked against an
//! independent ray/box oracle on the same 4096 sample points.
use super::geo::{block, boxes, oracle_fraction, person, scene, slab};
use htngtp::geo::{derive_facts, sample_points, visibility_fraction, AgentKind, Scene, Thresholds, Vec3, EFFORTS};
use htngtp::gtp::{apply_solution, solve, GtpConfig, GtpTask};
use htngtp::symbolic::Fact;

const K: usize = 4096;
const TOL: f64 = 2.0 / K as f64;

fn dense() -> Thresholds {
    Thresholds {
        samples: K,
        ..Default::default()
    }
}

/// A 0.2 m block at the origin, a viewer 2 m away, and a thin wall between
/// them offset sideways by `offset`.
fn wall_scene(offset: f64, width: f64, eyes: [Vec3; 4]) -> Scene {
    let mut viewer = person("h", AgentKind::Human, (2.0, 0.0), eyes[0], [0.3, 0.4, 0.5, 0.6]);
    viewer.eyes = eyes;
    scene(
        vec![slab("floor", (-3.0, -3.0), (3.0, 3.0), (-0.1, 0.0), true)],
        vec![
            block("o", (0.2, 0.2, 0.3), (0.0, 0.0, 0.0), "floor"),
            block("w", (0.02, width, 0.6), (1.0, offset, 0.0), "floor"),
        ],
        vec![viewer],
    )
}

fn oracle_at(s: &Scene, object: &str, eye: Vec3) -> f64 {
    let o = s.object(object).unwrap();
    oracle_fraction(&sample_points(o, &o.pose, K), eye, &boxes(s, object))
}

fn visible_fact(s: &Scene, e: u8) -> Fact {
    let _ = s;
    Fact::new("visible", &["o", "h", &e.to_string()])
}

pub fn fractions_agree_with_the_ray_oracle() {
    let eye = Vec3::new(2.0, 0.0, 0.4);
    let mut spread = vec![];
    for width in [0.1, 0.2, 0.3] {
        for i in 0..=24 {
            let offset = -0.3 + 0.025 * i as f64;
            let s = wall_scene(offset, width, [eye; 4]);
            let lib = visibility_fraction(&s, "o", "h", 1, K).unwrap();
            let want = oracle_at(&s, "o", eye);
            assert!(
                (lib - want).abs() <= TOL,
                "width {width} offset {offset}: {lib} vs {want}"
            );
            spread.push(want);
        }
    }
    assert!(spread.iter().any(|&f| f < 0.2) && spread.iter().any(|&f| f > 0.9));
}

pub fn visible_needs_half_the_samples() {
    let eye = Vec3::new(2.0, 0.0, 0.4);
    let (mut below, mut above) = (0, 0);
    for width in [0.12, 0.16, 0.2, 0.24] {
        for i in 0..=40 {
            let offset = -0.25 + 0.0125 * i as f64;
            let s = wall_scene(offset, width, [eye; 4]);
            let f = oracle_at(&s, "o", eye);
            if (f - 0.5).abs() <= TOL {
                continue;
            }
            let facts = derive_facts(&s, &dense());
            assert_eq!(
                facts.contains(&visible_fact(&s, 1)),
                f >= 0.5,
                "width {width} offset {offset}: {f}"
            );
            if (0.4..0.5).contains(&f) {
                below += 1;
            }
            if (0.5..0.6).contains(&f) {
                above += 1;
            }
        }
    }
    assert!(
        below > 0 && above > 0,
        "sweep misses the threshold: {below} below, {above} above"
    );
}

pub fn effort_is_the_first_eye_that_sees_half() {
    // Low eyes are blocked by the wall; only the raised eye sees over it.
    let eyes = [
        Vec3::new(2.0, 0.0, 0.4),
        Vec3::new(2.0, 0.05, 0.45),
        Vec3::new(1.9, 0.0, 1.6),
        Vec3::new(1.8, 0.0, 1.9),
    ];
    let s = wall_scene(0.0, 0.5, eyes);
    let fr: Vec<f64> = eyes.iter().map(|e| oracle_at(&s, "o", *e)).collect();
    for e in EFFORTS {
        let best = fr[..e as usize].iter().cloned().fold(0.0, f64::max);
        let lib = visibility_fraction(&s, "o", "h", e, K).unwrap();
        assert!((lib - best).abs() <= TOL, "effort {e}: {lib} vs {best}");
    }
    let first = EFFORTS
        .into_iter()
        .find(|&e| fr[..e as usize].iter().any(|&f| f >= 0.5))
        .expect("the raised eye sees the block");
    let facts = derive_facts(&s, &dense());
    let got: Vec<u8> = EFFORTS
        .into_iter()
        .filter(|&e| facts.contains(&visible_fact(&s, e)))
        .collect();
    assert_eq!(got, vec![first]);
}

pub fn samples_spread_over_faces_by_area_and_skip_the_bottom() {
    let s = wall_scene(0.0, 0.1, [Vec3::new(2.0, 0.0, 0.4); 4]);
    let o = s.object("o").unwrap();
    let (w, d, h) = (0.2, 0.2, 0.3);
    let pts = sample_points(o, &o.pose, K);
    let total = w * d + 2.0 * h * (w + d);
    let near = |a: f64, b: f64| (a - b).abs() < 1e-9;
    let count = |f: &dyn Fn(&Vec3) -> bool| pts.iter().filter(|p| f(p)).count() as f64 / K as f64;
    let top = count(&|p| near(p.z, h));
    assert!((top - w * d / total).abs() <= TOL, "top share {top}");
    for (sign, along_x) in [(1.0, true), (-1.0, true), (1.0, false), (-1.0, false)] {
        let share = count(&|p| {
            let c = if along_x { p.x } else { p.y };
            near(c, sign * w / 2.0) && !near(p.z, h)
        });
        assert!((share - h * d / total).abs() <= TOL, "side share {share}");
    }
    let base_interior = count(&|p| near(p.z, 0.0) && p.x.abs() < w / 2.0 - 1e-6 && p.y.abs() < d / 2.0 - 1e-6);
    assert_eq!(base_interior, 0.0);
}

pub fn lone_object_is_fully_visible() {
    let mut s = wall_scene(0.0, 0.1, [Vec3::new(2.0, 0.0, 0.4); 4]);
    s.objects.retain(|o| o.name == "o");
    assert_eq!(visibility_fraction(&s, "o", "h", 1, K).unwrap(), 1.0);
}

/// Robot at the origin, member 2 m away along +x. A desk in front of the
/// robot and, beside it, a hideout behind a tall screen, optionally with a
/// slit at `y = -0.6`.
fn hideout_scene(slit: Option<f64>) -> Scene {
    let robot = person(
        "r",
        AgentKind::Robot,
        (0.0, 0.0),
        Vec3::new(0.0, 0.0, 1.2),
        [0.6, 0.8, 1.0, 1.2],
    );
    let mut member = person(
        "h",
        AgentKind::Human,
        (2.0, 0.0),
        Vec3::new(2.0, 0.0, 1.1),
        [0.3, 0.4, 0.5, 0.6],
    );
    member.eyes = [
        Vec3::new(2.0, 0.0, 1.1),
        Vec3::new(1.95, 0.15, 1.15),
        Vec3::new(1.8, 0.1, 1.3),
        Vec3::new(1.7, 0.0, 1.6),
    ];
    let mut surfaces = vec![
        slab("desk", (-0.3, -0.3), (0.3, 0.3), (0.0, 0.7), true),
        slab("hideout", (-0.12, -0.75), (0.12, -0.45), (0.0, 0.7), true),
    ];
    match slit {
        None => surfaces.push(slab("screen", (0.14, -0.9), (0.16, -0.32), (0.0, 2.0), false)),
        Some(gap) => {
            surfaces.push(slab(
                "screen-a",
                (0.14, -0.9),
                (0.16, -0.6 - gap / 2.0),
                (0.0, 2.0),
                false,
            ));
            surfaces.push(slab(
                "screen-b",
                (0.14, -0.6 + gap / 2.0),
                (0.16, -0.32),
                (0.0, 2.0),
                false,
            ));
        }
    }
    let mut s = scene(
        surfaces,
        vec![block("o", (0.1, 0.1, 0.15), (0.0, 0.0, 0.7), "desk")],
        vec![robot, member],
    );
    s.regions
        .insert("putAway".into(), vec!["desk".into(), "hideout".into()]);
    s
}

fn reachable_by(s: &Scene, agent: &str, p: Vec3) -> bool {
    let a = s.agent(agent).unwrap();
    (0..4).any(|e| {
        let d = ((p.x - a.base.x).powi(2) + (p.y - a.base.y).powi(2)).sqrt();
        d <= a.reach[e] && p.z >= a.reach_band[e][0] && p.z <= a.reach_band[e][1]
    })
}

pub fn put_away_ends_unseen_and_out_of_reach() {
    let cfg = GtpConfig {
        samples: K,
        ..Default::default()
    };
    for slit in [None, Some(0.03)] {
        let s = hideout_scene(slit);
        assert!(oracle_at(&s, "o", s.agent("h").unwrap().eyes[0]) > 0.5);
        let out = solve(&GtpTask::put_away("o", "h"), &s, &cfg).unwrap();
        let sol = out.solution.unwrap_or_else(|| panic!("no put-away with slit {slit:?}"));
        let mut end = s.clone();
        apply_solution(&mut end, &sol).unwrap();
        let o = end.object("o").unwrap();
        for eye in end.agent("h").unwrap().eyes {
            assert_eq!(oracle_at(&end, "o", eye), 0.0, "slit {slit:?}: seen from {eye:?}");
        }
        assert!(!reachable_by(&end, "h", o.center()));
        let facts = derive_facts(&end, &dense());
        assert!(!facts
            .iter()
            .any(|f| f.args[0].as_str() == "o" && f.args.get(1).is_some_and(|a| a.as_str() == "h")));
    }
}

pub fn put_away_rejects_a_barely_visible_spot() {
    // A hideout too narrow to dodge the slit: every spot leaks a few rays.
    // Without the slit the same hideout works.
    let narrow = |s: &mut Scene| s.surfaces[1] = slab("hideout", (-0.12, -0.66), (0.12, -0.54), (0.0, 0.7), true);
    let cfg = GtpConfig {
        samples: K,
        ..Default::default()
    };
    let mut closed = hideout_scene(None);
    narrow(&mut closed);
    assert!(solve(&GtpTask::put_away("o", "h"), &closed, &cfg)
        .unwrap()
        .solution
        .is_some());
    let mut s = hideout_scene(Some(0.05));
    narrow(&mut s);
    let out = solve(&GtpTask::put_away("o", "h"), &s, &cfg).unwrap();
    if let Some(sol) = out.solution {
        let mut end = s.clone();
        apply_solution(&mut end, &sol).unwrap();
        let leaks: Vec<f64> = end
            .agent("h")
            .unwrap()
            .eyes
            .iter()
            .map(|e| oracle_at(&end, "o", *e))
            .collect();
        panic!("accepted a spot seen with fractions {leaks:?}");
    }
}
