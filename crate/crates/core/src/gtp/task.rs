use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TaskKind {
    Pick,
    MakeAcc,
    Show,
    Give,
    PutAway,
    PutOn,
    Compound,
}

impl TaskKind {
    pub fn label(self) -> &'static str {
        match self {
            TaskKind::Pick => "PICK",
            TaskKind::MakeAcc => "MAKEACC",
            TaskKind::Show => "SHOW",
            TaskKind::Give => "GIVE",
            TaskKind::PutAway => "PUTAWAY",
            TaskKind::PutOn => "PUTON",
            TaskKind::Compound => "COMPOUND",
        }
    }

    pub fn from_label(s: &str) -> Option<TaskKind> {
        [
            TaskKind::Pick,
            TaskKind::MakeAcc,
            TaskKind::Show,
            TaskKind::Give,
            TaskKind::PutAway,
            TaskKind::PutOn,
            TaskKind::Compound,
        ]
        .into_iter()
        .find(|k| k.label().eq_ignore_ascii_case(s))
    }

    /// Key into the scene's task region table.
    pub fn region_key(self) -> &'static str {
        match self {
            TaskKind::Pick => "pick",
            TaskKind::MakeAcc => "makeAcc",
            TaskKind::Show => "show",
            TaskKind::Give => "give",
            TaskKind::PutAway => "putAway",
            TaskKind::PutOn => "putOn",
            TaskKind::Compound => "compound",
        }
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Whose effort the outer search loop raises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EffortOf {
    Robot,
    Target,
}

/// Where the object ends up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Goal {
    /// In the robot's gripper at its hand point.
    Hold,
    /// Resting on one of the named surfaces; empty means every placeable
    /// surface the scene allows for this kind.
    Place { surfaces: Vec<String> },
    /// Held out at a scene zone; `release` hands it to the target agent.
    Present { zone: String, release: bool },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub effort_of: EffortOf,
    pub effort_cap: u8,
    /// Minimum visibility fraction to the target at the current effort.
    pub target_visible: Option<f64>,
    /// Target must reach the object at the current effort.
    pub target_reach: bool,
    /// Fraction exactly zero and no reach for the target at any effort up to
    /// the cap.
    pub hide_from_target: bool,
    /// The robot must reach the object's destination at some effort.
    pub robot_reach: bool,
    /// Object front must point at the target (objects with a front only).
    pub facing_front: bool,
    /// Objects of this class must stay visible to the target at effort 1.
    pub keep_visible_class: Option<String>,
}

impl Profile {
    fn base(effort_of: EffortOf) -> Self {
        Profile {
            effort_of,
            effort_cap: 4,
            target_visible: None,
            target_reach: false,
            hide_from_target: false,
            robot_reach: true,
            facing_front: false,
            keep_visible_class: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GtpTask {
    pub kind: TaskKind,
    pub object: String,
    /// Agent for human-directed tasks, surface for PUTON.
    pub target: Option<String>,
    pub goal: Goal,
    pub profile: Profile,
    /// Components of a compound task, planned jointly in order.
    #[serde(default)]
    pub components: Vec<GtpTask>,
}

impl GtpTask {
    pub fn pick(object: &str) -> Self {
        GtpTask {
            kind: TaskKind::Pick,
            object: object.into(),
            target: None,
            goal: Goal::Hold,
            profile: Profile::base(EffortOf::Robot),
            components: vec![],
        }
    }

    /// Place where the human can see (≥ `visible`) and reach it.
    pub fn make_acc(object: &str, human: &str, visible: f64) -> Self {
        GtpTask {
            kind: TaskKind::MakeAcc,
            object: object.into(),
            target: Some(human.into()),
            goal: Goal::Place { surfaces: vec![] },
            profile: Profile {
                target_visible: Some(visible),
                target_reach: true,
                facing_front: true,
                ..Profile::base(EffortOf::Target)
            },
            components: vec![],
        }
    }

    pub fn show(object: &str, human: &str, visible: f64) -> Self {
        GtpTask {
            kind: TaskKind::Show,
            object: object.into(),
            target: Some(human.into()),
            goal: Goal::Present {
                zone: "show".into(),
                release: false,
            },
            profile: Profile {
                target_visible: Some(visible),
                facing_front: true,
                ..Profile::base(EffortOf::Target)
            },
            components: vec![],
        }
    }

    pub fn give(object: &str, human: &str, visible: f64) -> Self {
        GtpTask {
            kind: TaskKind::Give,
            object: object.into(),
            target: Some(human.into()),
            goal: Goal::Present {
                zone: "give".into(),
                release: true,
            },
            profile: Profile {
                target_visible: Some(visible),
                target_reach: true,
                ..Profile::base(EffortOf::Target)
            },
            components: vec![],
        }
    }

    /// Place out of the human's sight and reach.
    pub fn put_away(object: &str, human: &str) -> Self {
        GtpTask {
            kind: TaskKind::PutAway,
            object: object.into(),
            target: Some(human.into()),
            goal: Goal::Place { surfaces: vec![] },
            profile: Profile {
                hide_from_target: true,
                ..Profile::base(EffortOf::Robot)
            },
            components: vec![],
        }
    }

    pub fn put_on(object: &str, surface: &str) -> Self {
        GtpTask {
            kind: TaskKind::PutOn,
            object: object.into(),
            target: Some(surface.into()),
            goal: Goal::Place {
                surfaces: vec![surface.into()],
            },
            profile: Profile::base(EffortOf::Robot),
            components: vec![],
        }
    }

    pub fn compound(components: Vec<GtpTask>) -> Self {
        let object = components.first().map(|c| c.object.clone()).unwrap_or_default();
        let target = components.last().and_then(|c| c.target.clone());
        GtpTask {
            kind: TaskKind::Compound,
            object,
            target,
            goal: Goal::Hold,
            profile: Profile::base(EffortOf::Robot),
            components,
        }
    }

    pub fn with_keep_visible(mut self, class: &str) -> Self {
        self.profile.keep_visible_class = Some(class.into());
        self
    }

    /// Atomic tasks in planning order.
    pub fn chain(&self) -> Vec<&GtpTask> {
        if self.kind == TaskKind::Compound {
            self.components.iter().flat_map(|c| c.chain()).collect()
        } else {
            vec![self]
        }
    }

    /// Kind under which statistics are reported: a compound reports as its
    /// last component.
    pub fn stats_kind(&self) -> TaskKind {
        self.chain().last().map_or(self.kind, |t| t.kind)
    }
}

impl fmt::Display for GtpTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kind == TaskKind::Compound {
            let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
            return write!(f, "[{}]", parts.join(" + "));
        }
        match &self.target {
            Some(t) => write!(f, "{}({}, {})", self.kind, self.object, t),
            None => write!(f, "{}({})", self.kind, self.object),
        }
    }
}
