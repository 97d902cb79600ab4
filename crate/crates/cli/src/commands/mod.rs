//! Subcommand dispatch. Auxiliary files are read and parsed once, before
//! any input is processed.

mod bt;
mod export;
mod gog;
mod harm;
mod selftest;
mod skeleton;
mod wild;

use std::path::Path;

use serde::Serialize;
use skeletonkit::semigraph::{RawSemiGraph, SemiGraph};
use skeletonkit::skeleton::CurveSkeleton;

use crate::args::{Cli, Command, Format, Q};
use crate::{CliError, Report};

pub type InputHandler = Box<dyn Fn(&str) -> Result<Report, CliError> + Send + Sync>;

pub enum Handler {
    /// Commands driven by flags alone.
    Standalone(Result<Report, CliError>),
    PerInput(InputHandler),
}

#[derive(Clone, Copy)]
pub struct Ctx {
    pub format: Format,
    pub pretty: bool,
}

impl Ctx {
    pub fn json<T: Serialize + ?Sized>(&self, value: &T) -> Result<Report, CliError> {
        let text = if self.pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
        text.map(Report).map_err(|e| CliError::domain("serialization", e))
    }

    /// Rejects formats the command cannot render.
    pub fn allow(&self, formats: &[Format]) -> Result<(), CliError> {
        if formats.contains(&self.format) {
            Ok(())
        } else {
            Err(CliError::malformed("unsupported_format", format!("format {:?} is not available here", self.format).to_lowercase()))
        }
    }
}

pub fn prepare(cli: &Cli) -> Result<Handler, CliError> {
    let ctx = Ctx { format: cli.format, pretty: cli.pretty };
    match &cli.command {
        Command::Skeleton(op) => skeleton::prepare(ctx, op),
        Command::Harm(op) => harm::prepare(ctx, op),
        Command::Wild(op) => Ok(Handler::Standalone(wild::run(ctx, op))),
        Command::Bt(op) => bt::prepare(ctx, op),
        Command::Gog(op) => gog::prepare(ctx, op),
        Command::Export(op) => export::prepare(ctx, op),
        Command::Selftest(args) => Ok(Handler::Standalone(selftest::run(ctx, args))),
    }
}

pub fn read_aux(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::malformed("io", format!("cannot read {}: {e}", path.display())))
}

pub fn parse_skeleton(text: &str) -> Result<CurveSkeleton<Q>, CliError> {
    Ok(CurveSkeleton::from_json(text)?)
}

pub fn parse_graph(text: &str) -> Result<SemiGraph, CliError> {
    let raw: RawSemiGraph = serde_json::from_str(text).map_err(CliError::json)?;
    Ok(SemiGraph::try_from(raw)?)
}

pub fn parse_value(text: &str) -> Result<serde_json::Value, CliError> {
    serde_json::from_str(text).map_err(CliError::json)
}

/// Ids in sorted order.
pub fn sorted<'a>(ids: impl IntoIterator<Item = &'a str>) -> Vec<String> {
    let mut out: Vec<String> = ids.into_iter().map(String::from).collect();
    out.sort();
    out
}
