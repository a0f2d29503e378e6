use std::sync::Arc;

use crate::symbolic::{parse_domain, parse_problem, HtnDomain, HtnProblem};

use super::scenes::{BOOK_1, BOOK_2, GREY, MEMBER, POS, ROBOT, STAND, WHITE};
use super::LibrarianError;

/// The receptionist domain as a `.htn` file.
pub const DOMAIN_TEXT: &str = include_str!("../../data/librarian.htn");
/// Variant with compound pick tasks used for repeated trials.
pub const EXPERIMENT_TEXT: &str = include_str!("../../data/librarian-experiment.htn");

/// Price of one lent book.
pub const COST: i64 = 5;

pub fn build_domain() -> Result<HtnDomain, LibrarianError> {
    Ok(parse_domain(DOMAIN_TEXT)?)
}

pub fn build_experiment_domain() -> Result<HtnDomain, LibrarianError> {
    Ok(parse_domain(EXPERIMENT_TEXT)?)
}

/// Facts of one lending situation.
#[derive(Clone, Debug)]
pub struct Desk {
    /// Books present, with their titles.
    pub books: Vec<(String, String)>,
    /// Books reserved by the member.
    pub reserved: Vec<String>,
    pub heavy: Vec<String>,
    pub credit: i64,
    pub tasks: String,
}

impl Desk {
    fn new(books: &[&str], reserved: &[&str], credit: i64, tasks: &str) -> Self {
        Desk {
            books: books.iter().map(|b| (b.to_string(), format!("title-{b}"))).collect(),
            reserved: reserved.iter().map(|b| b.to_string()).collect(),
            heavy: vec![],
            credit,
            tasks: tasks.into(),
        }
    }

    /// Grey and white reserved; no credit, so the member pays at the POS
    /// machine.
    pub fn two_books() -> Self {
        Desk::new(&[GREY, WHITE], &[GREY, WHITE], 0, "(MANAGEORDER m)")
    }

    /// Grey and white reserved, then the POS machine handed over; no
    /// payment method choice involved.
    pub fn two_books_then_pos() -> Self {
        Desk::new(&[GREY, WHITE], &[GREY, WHITE], 0, "(LEND m) (PLACEPOSM m)")
    }

    /// One light book, paid from the account.
    pub fn one_book() -> Self {
        Desk::new(&[GREY, WHITE], &[GREY], 100, "(MANAGEORDER m)")
    }

    /// Both oversized books reserved, lending only.
    pub fn oversized() -> Self {
        Desk::new(&[BOOK_1, BOOK_2], &[BOOK_1, BOOK_2], 100, "(LEND m)")
    }

    /// Nothing reserved.
    pub fn nothing() -> Self {
        Desk::new(&[GREY, WHITE], &[], 0, "(LEND m)")
    }

    pub fn problem_text(&self) -> String {
        let mut objects = vec![
            format!("({MEMBER} member)"),
            format!("({ROBOT} robot)"),
            format!("({POS} pos)"),
            format!("({STAND} furniture)"),
        ];
        let mut init = vec![
            format!("(numLent {MEMBER} 0)"),
            format!("(cred {MEMBER} {})", self.credit),
            format!("(cost {COST})"),
        ];
        for (b, t) in &self.books {
            objects.push(format!("({b} book)"));
            init.push(format!("(title {b} {t})"));
        }
        for b in &self.reserved {
            init.push(format!("(held {b} {MEMBER})"));
        }
        for b in &self.heavy {
            init.push(format!("(hvy {b})"));
        }
        format!(
            "(problem\n  :name reception\n  :objects ({})\n  :init ({})\n  :tasks ({}))\n",
            objects.join(" "),
            init.join(" "),
            self.tasks
        )
    }

    pub fn problem(&self, domain: &HtnDomain) -> Result<HtnProblem, LibrarianError> {
        Ok(parse_problem(&self.problem_text(), Arc::new(domain.clone()))?)
    }
}
