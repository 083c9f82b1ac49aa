//! `--config FILE` support: a JSON object whose fields are spliced into the
//! argument list as flags at the position of `--config`.

use serde_json::Value;

pub struct ConfigError(pub String);

/// Replaces every `--config FILE` (or `--config=FILE`) with the flags the
/// file describes. Flags appearing later on the command line win.
pub fn expand(args: Vec<String>) -> Result<Vec<String>, ConfigError> {
    let mut out = Vec::with_capacity(args.len());
    let mut iter = args.into_iter();
    while let Some(arg) = iter.next() {
        let path = if arg == "--config" {
            Some(iter.next().ok_or_else(|| ConfigError("--config requires a file path".into()))?)
        } else {
            arg.strip_prefix("--config=").map(str::to_string)
        };
        match path {
            Some(p) => {
                let command = out.get(1).cloned();
                out.extend(flags_from_file(&p, command.as_deref())?);
            }
            None => out.push(arg),
        }
    }
    Ok(out)
}

fn flags_from_file(path: &str, command: Option<&str>) -> Result<Vec<String>, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("cannot read config {path}: {e}")))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| ConfigError(format!("cannot parse config {path}: {e}")))?;
    flags_from_value(&value, command).map_err(|e| ConfigError(format!("config {path}: {e}")))
}

pub fn flags_from_value(value: &Value, command: Option<&str>) -> Result<Vec<String>, String> {
    let Value::Object(map) = value else {
        return Err("top level must be a JSON object".into());
    };
    let mut flags = Vec::new();
    for (key, v) in map {
        if key == "command" {
            let named = v.as_str().ok_or("command must be a string")?;
            if Some(named) != command {
                return Err(format!("config is for {named:?} but the command line runs {:?}", command.unwrap_or("")));
            }
            continue;
        }
        let flag = format!("--{}", key.replace('_', "-"));
        match v {
            Value::Null | Value::Bool(false) => {}
            Value::Bool(true) => flags.push(flag),
            _ => flags.push(format!("{flag}={}", scalar_or_list(v).map_err(|e| format!("field {key}: {e}"))?)),
        }
    }
    Ok(flags)
}

fn scalar(v: &Value) -> Result<String, String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Bool(b) => Ok(b.to_string()),
        _ => Err("expected a string or number".into()),
    }
}

fn scalar_or_list(v: &Value) -> Result<String, String> {
    match v {
        Value::Array(items) if items.iter().any(Value::is_array) => items
            .iter()
            .map(|row| match row {
                Value::Array(inner) => inner.iter().map(scalar).collect::<Result<Vec<_>, _>>().map(|r| r.join(",")),
                _ => Err("mixed nesting in list".into()),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(|rows| rows.join(";")),
        Value::Array(items) => items.iter().map(scalar).collect::<Result<Vec<_>, _>>().map(|r| r.join(",")),
        Value::Object(_) => Err("nested objects are not supported".into()),
        _ => scalar(v),
    }
}
