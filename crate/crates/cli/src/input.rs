//! Loading group, action and element specs from flags. A flag value that
//! starts with `{`, `[` or `"` is inline JSON; an existing path is read as
//! a file; anything else is a shorthand.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use wreathkit::groups::{Domain, GroupAction, GroupDescriptor, GroupElement, Point};
use wreathkit::word::{evaluate_word, Assignment, Word};
use wreathkit::Error;

use crate::cli::GroupArgs;
use crate::CliError;

/// Inline JSON or the contents of a file, `None` for a bare word.
fn json_text(arg: &str) -> Result<Option<String>, CliError> {
    let t = arg.trim_start();
    if t.starts_with(['{', '[', '"']) {
        return Ok(Some(arg.to_string()));
    }
    if Path::new(arg).is_file() {
        return std::fs::read_to_string(arg)
            .map(Some)
            .map_err(|e| CliError::Usage(format!("cannot read {arg}: {e}")));
    }
    Ok(None)
}

/// Deserializes with the failing path in the error.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, Error> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| Error::Parse {
        path: e.path().to_string(),
        reason: e.inner().to_string(),
    })
}

/// JSON for `arg`, which must not be a bare word.
pub fn load_json<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T, CliError> {
    match json_text(arg)? {
        Some(text) => Ok(parse_json(&text)?),
        None => Err(CliError::Usage(format!("{what} `{arg}` is neither JSON nor a readable file"))),
    }
}

/// The raw text behind `arg`, for types with their own JSON loader.
pub fn load_text(arg: &str, what: &str) -> Result<String, CliError> {
    json_text(arg)?
        .ok_or_else(|| CliError::Usage(format!("{what} `{arg}` is neither JSON nor a readable file")))
}

pub fn load_group(arg: &str) -> Result<GroupDescriptor, CliError> {
    let g = match json_text(arg)? {
        Some(text) => parse_json::<GroupDescriptor>(&text)?,
        None => GroupDescriptor::from_shorthand(arg)?,
    };
    g.validate()?;
    Ok(g)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionFile {
    group: Option<GroupDescriptor>,
    #[serde(default)]
    domain: Domain,
    base_points: Option<Vec<Point>>,
}

/// The action named by `--group`, `--action` and `--base`.
pub fn load_action(args: &GroupArgs) -> Result<GroupAction, CliError> {
    let named = |domain: Domain| -> Result<GroupAction, CliError> {
        let g = args
            .group
            .as_deref()
            .ok_or_else(|| CliError::Usage("--group is required".into()))?;
        Ok(GroupAction::new(load_group(g)?, domain)?)
    };
    let mut action = match args.action.as_deref() {
        None | Some("natural") => named(Domain::Natural)?,
        Some("regular") => named(Domain::Regular)?,
        Some(other) => {
            let file: ActionFile = load_json(other, "action")?;
            let group = match (file.group, &args.group) {
                (Some(g), _) => {
                    g.validate()?;
                    g
                }
                (None, Some(g)) => load_group(g)?,
                (None, None) => return Err(CliError::Usage("the action names no group".into())),
            };
            let action = GroupAction::new(group, file.domain)?;
            match file.base_points {
                Some(p) => action.with_base_points(p)?,
                None => action,
            }
        }
    };
    if let Some(base) = &args.base {
        let points = parse_points(base, &action)?;
        if points.is_empty() {
            return Err(CliError::Usage("--base lists no points".into()));
        }
        action = action.with_base_points(points)?;
    }
    Ok(action)
}

/// A JSON list of points, or comma-separated integers read in the
/// action's domain.
pub fn parse_points(arg: &str, action: &GroupAction) -> Result<Vec<Point>, CliError> {
    if arg.trim().is_empty() {
        return Ok(vec![]);
    }
    if let Some(text) = json_text(arg)? {
        let points: Vec<Point> = parse_json(&text)?;
        for p in &points {
            action.check_point(p)?;
        }
        return Ok(points);
    }
    arg.split(',')
        .map(|s| {
            let k: i64 = s.trim().parse().map_err(|_| {
                CliError::Usage(format!("`{s}` is not an integer; give points as JSON"))
            })?;
            let p = match (&action.group, action.domain) {
                (GroupDescriptor::Int, Domain::Regular) => Point::Element(GroupElement::Int(k)),
                (GroupDescriptor::Int | GroupDescriptor::DihedralInf, Domain::Natural) => Point::Int(k),
                _ if action.finite_degree().is_some() && k >= 0 => Point::Finite(k as usize),
                _ => {
                    return Err(CliError::Usage(format!(
                        "integer point {k} has no meaning for {}; give points as JSON",
                        action.group.name()
                    )))
                }
            };
            action.check_point(&p)?;
            Ok(p)
        })
        .collect()
}

/// Evaluates a word in the group's standard generators.
pub fn parse_group_word(arg: &str, group: &GroupDescriptor) -> Result<GroupElement, CliError> {
    let mut a = Assignment::new(group.identity());
    for (name, g) in group.generators()? {
        a.insert(name, g);
    }
    Ok(evaluate_word(&Word::parse(arg)?, &a)?)
}
