use crate::geo::Scene;

use super::solve::resume;
use super::{Checkpoint, GtpConfig, GtpError, GtpSolution, GtpStats, GtpTask, SolveOutcome};

/// A committed geometric task with what is needed to ask for another
/// solution later.
#[derive(Clone, Debug)]
pub struct LogEntry {
    pub task: GtpTask,
    /// Scene the task was solved on.
    pub before: Scene,
    pub solution: GtpSolution,
    pub checkpoint: Checkpoint,
    /// Stats of every solve call made for this entry, first one included.
    pub stats: Vec<GtpStats>,
}

/// Ordered record of committed geometric tasks.
#[derive(Clone, Debug, Default)]
pub struct TaskSequenceLog {
    pub entries: Vec<LogEntry>,
}

impl TaskSequenceLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Records a successful solve. Outcomes without a solution are ignored.
    pub fn push(&mut self, task: GtpTask, before: Scene, outcome: SolveOutcome) {
        if let Some(solution) = outcome.solution {
            self.entries.push(LogEntry {
                task,
                before,
                solution,
                checkpoint: outcome.checkpoint,
                stats: vec![outcome.stats],
            });
        }
    }

    pub fn truncate(&mut self, len: usize) {
        self.entries.truncate(len);
    }

    /// Next solution for entry `index`, resumed from its stored cursor. On
    /// success the entry takes the new solution and every later entry is
    /// dropped; on failure the log is left as it was apart from the cursor.
    pub fn alternative(&mut self, index: usize, cfg: &GtpConfig) -> Result<SolveOutcome, GtpError> {
        let entry = self.entries.get_mut(index).ok_or(GtpError::NoEntry(index))?;
        let out = resume(&entry.task, &entry.before, entry.checkpoint.clone(), cfg)?;
        entry.checkpoint = out.checkpoint.clone();
        entry.stats.push(out.stats.clone());
        if let Some(sol) = &out.solution {
            entry.solution = sol.clone();
            self.entries.truncate(index + 1);
        }
        Ok(out)
    }
}
