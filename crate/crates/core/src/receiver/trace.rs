//! Line-oriented per-trial trace for debugging.

use std::fmt::Write as _;

use super::DecodeOutcome;

pub fn format_trace(o: &DecodeOutcome) -> String {
    let mut s = String::new();
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let _ = writeln!(s, "active {}", o.decisions.len());
    let _ = writeln!(s, "degrees_before {}", join(&o.histogram_before));
    for (i, it) in o.peeled_per_iteration.iter().enumerate() {
        let _ = writeln!(s, "peel {} {}", i + 1, join(it));
    }
    let _ = writeln!(s, "peel_iterations {}", o.peeled_per_iteration.len());
    let _ = writeln!(s, "degrees_after {}", join(&o.histogram_after));
    let _ = writeln!(s, "residual {}", o.residual.len());
    for (i, ok) in o.turbo_parity_ok.iter().enumerate() {
        let _ = writeln!(s, "turbo {} parity_ok {}", i + 1, ok);
    }
    let decoded = o.decisions.iter().filter(|d| d.message.is_some()).count();
    let _ = writeln!(s, "decoded {decoded}/{}", o.decisions.len());
    s
}
