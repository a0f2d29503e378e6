use std::fmt;
use std::sync::Arc;

use crate::symbolic::TaskInst;

#[derive(Debug)]
struct Node {
    task: TaskInst,
    depth: usize,
    next: TaskList,
}

/// Persistent singly linked task sequence. Cloning is O(1) and shares the
/// tail, so snapshots of the remaining tasks cost nothing.
#[derive(Clone, Debug, Default)]
pub struct TaskList(Option<Arc<Node>>);

impl TaskList {
    pub fn new() -> Self {
        TaskList(None)
    }

    /// Root tasks start at depth zero.
    pub fn from_tasks(tasks: &[TaskInst]) -> Self {
        TaskList::new().prepend(tasks, 0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    pub fn head(&self) -> Option<(&TaskInst, usize)> {
        self.0.as_ref().map(|n| (&n.task, n.depth))
    }

    pub fn tail(&self) -> TaskList {
        match &self.0 {
            Some(n) => n.next.clone(),
            None => TaskList::new(),
        }
    }

    /// `tasks · self`, each new entry tagged with `depth`.
    pub fn prepend(&self, tasks: &[TaskInst], depth: usize) -> TaskList {
        let mut list = self.clone();
        for t in tasks.iter().rev() {
            list = TaskList(Some(Arc::new(Node {
                task: t.clone(),
                depth,
                next: list,
            })));
        }
        list
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TaskInst, usize)> {
        let mut cur = self.0.as_deref();
        std::iter::from_fn(move || {
            let n = cur?;
            cur = n.next.0.as_deref();
            Some((&n.task, n.depth))
        })
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn to_vec(&self) -> Vec<TaskInst> {
        self.iter().map(|(t, _)| t.clone()).collect()
    }
}

impl PartialEq for TaskList {
    fn eq(&self, other: &Self) -> bool {
        self.iter().eq(other.iter())
    }
}

impl Eq for TaskList {}

impl fmt::Display for TaskList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, (t, _)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " · ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "⟩")
    }
}
