//! Library side of the `hopfknot` command, so the dispatcher can be tested in-process.

mod app;
pub mod expr;

pub use app::{exit_code, run, Outcome, EXIT_CONSTRAINT, EXIT_INTERNAL, EXIT_OK, EXIT_PARSE, EXIT_VERIFY};
pub use expr::{parse_knot_expr, ExprKind, KnotExpr};
