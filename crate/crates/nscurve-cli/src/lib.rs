//! Library half of the command-line tool: the curve-file schema and the
//! report structures, shared with the integration tests.

pub mod curvefile;
pub mod report;
