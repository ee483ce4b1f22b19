use std::collections::HashSet;

use crate::channel::{AccessMode, Activity};

use super::DecodeOutcome;

/// Error events of one trial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ErrorCounts {
    /// Wrong message delivered.
    pub e1: usize,
    /// No message delivered for an active user.
    pub e2: usize,
    /// User shared its signature with another user (unsourced only).
    pub e3: usize,
    /// Users in the error-probability denominator.
    pub users: usize,
}

impl ErrorCounts {
    pub fn errors(&self) -> usize {
        self.e1 + self.e2 + self.e3
    }

    pub fn pe(&self) -> f64 {
        if self.users == 0 {
            0.0
        } else {
            self.errors() as f64 / self.users as f64
        }
    }

    pub fn add(&mut self, o: &ErrorCounts) {
        self.e1 += o.e1;
        self.e2 += o.e2;
        self.e3 += o.e3;
        self.users += o.users;
    }
}

/// Compares the decoder output with the transmitted messages.
///
/// Sourced modes attribute decisions by column. In unsourced mode a user is
/// correct when its message appears in the decoded list, and every user in a
/// collision counts as an E3 error.
pub fn account_errors(
    outcome: &DecodeOutcome,
    activity: &Activity,
    messages: &[Vec<u8>],
    mode: AccessMode,
) -> ErrorCounts {
    let mut c = ErrorCounts {
        users: activity.len(),
        ..Default::default()
    };
    match mode {
        AccessMode::Scheduled | AccessMode::GrantFree => {
            for (u, msg) in activity.users.iter().zip(messages) {
                match outcome.message_for(u.column) {
                    None => c.e2 += 1,
                    Some(m) if m != msg.as_slice() => c.e1 += 1,
                    Some(_) => {}
                }
            }
        }
        AccessMode::Unsourced => {
            let colliding: HashSet<usize> = activity.colliding_users().into_iter().collect();
            let list: HashSet<&[u8]> = outcome
                .decisions
                .iter()
                .filter_map(|d| d.message.as_deref())
                .collect();
            for (u, msg) in activity.users.iter().zip(messages) {
                if colliding.contains(&u.id) {
                    c.e3 += 1;
                } else if !list.contains(msg.as_slice()) {
                    match outcome.message_for(u.column) {
                        None => c.e2 += 1,
                        Some(_) => c.e1 += 1,
                    }
                }
            }
        }
    }
    c
}
