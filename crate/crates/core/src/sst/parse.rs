use std::collections::HashMap;
use std::fs::File;
use std::io::Read;
use std::path::Path;

use csv::{ReaderBuilder, StringRecord, Trim};

use super::{TrialRecord, TrialType};
use crate::error::{Error, Result};

pub const TRIAL_HEADER: [&str; 5] = ["participant_id", "trial_index", "trial_type", "rt_ms", "ssd_ms"];

/// One participant's trials, sorted by `trial_index`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParticipantTrials {
    pub participant_id: String,
    pub trials: Vec<TrialRecord>,
}

fn parse_error(line: u64, field: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        field: field.to_string(),
        message: message.into(),
    }
}

fn optional_ms(raw: &str, line: u64, field: &str, allow_zero: bool) -> Result<Option<f64>> {
    if raw.is_empty() || raw.eq_ignore_ascii_case("na") {
        return Ok(None);
    }
    let v: f64 = raw
        .parse()
        .map_err(|_| parse_error(line, field, format!("`{raw}` is not a number")))?;
    let ok = v.is_finite() && (v > 0.0 || (allow_zero && v == 0.0));
    if !ok {
        let need = if allow_zero { "non-negative" } else { "positive" };
        return Err(parse_error(line, field, format!("{v} must be finite and {need}")));
    }
    Ok(Some(v))
}

fn parse_row(rec: &StringRecord, line: u64) -> Result<TrialRecord> {
    if rec.len() != TRIAL_HEADER.len() {
        return Err(parse_error(
            line,
            "*",
            format!("expected {} fields, found {}", TRIAL_HEADER.len(), rec.len()),
        ));
    }
    let participant_id = rec[0].to_string();
    if participant_id.is_empty() {
        return Err(parse_error(line, "participant_id", "missing"));
    }
    let trial_index: u32 = rec[1]
        .parse()
        .map_err(|_| parse_error(line, "trial_index", format!("`{}` is not a positive integer", &rec[1])))?;
    if trial_index == 0 {
        return Err(parse_error(line, "trial_index", "indices are 1-based"));
    }
    let trial_type = match rec[2].to_ascii_lowercase().as_str() {
        "go" => TrialType::Go,
        "stop" => TrialType::Stop,
        other => {
            return Err(parse_error(
                line,
                "trial_type",
                format!("`{other}` is neither go nor stop"),
            ))
        }
    };
    Ok(TrialRecord {
        participant_id,
        trial_index,
        trial_type,
        rt_ms: optional_ms(&rec[3], line, "rt_ms", false)?,
        ssd_ms: optional_ms(&rec[4], line, "ssd_ms", true)?,
    })
}

/// Parses a trial CSV, grouping rows by participant in order of first
/// appearance and sorting each group by `trial_index`.
pub fn read_trials<R: Read>(source: R) -> Result<Vec<ParticipantTrials>> {
    let mut reader = ReaderBuilder::new().trim(Trim::All).flexible(true).from_reader(source);
    let header = reader.headers()?.clone();
    let names: Vec<&str> = header.iter().collect();
    if names != TRIAL_HEADER {
        return Err(parse_error(
            1,
            "header",
            format!("expected `{}`, found `{}`", TRIAL_HEADER.join(","), names.join(",")),
        ));
    }

    let mut groups: Vec<ParticipantTrials> = Vec::new();
    let mut slot: HashMap<String, usize> = HashMap::new();
    for row in reader.records() {
        let rec = row?;
        let line = rec.position().map_or(0, |p| p.line());
        let trial = parse_row(&rec, line)?;
        let i = *slot.entry(trial.participant_id.clone()).or_insert_with(|| {
            groups.push(ParticipantTrials {
                participant_id: trial.participant_id.clone(),
                trials: Vec::new(),
            });
            groups.len() - 1
        });
        groups[i].trials.push(trial);
    }
    if groups.is_empty() {
        return Err(Error::Empty("trial table has no rows"));
    }
    for g in &mut groups {
        g.trials.sort_by_key(|t| t.trial_index);
        if let Some(w) = g.trials.windows(2).find(|w| w[0].trial_index == w[1].trial_index) {
            return Err(Error::DuplicateTrial {
                participant: g.participant_id.clone(),
                index: w[0].trial_index,
            });
        }
    }
    Ok(groups)
}

/// [`read_trials`] from a file path.
pub fn parse_trials(path: &Path) -> Result<Vec<ParticipantTrials>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_trials(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "participant_id,trial_index,trial_type,rt_ms,ssd_ms\n";

    fn parse(body: &str) -> Result<Vec<ParticipantTrials>> {
        read_trials(format!("{HEADER}{body}").as_bytes())
    }

    #[test]
    fn parses_and_sorts() {
        let g = parse("p1,2,stop,,250\np1,1,go,512.5,\np1,3,go,,\n").unwrap();
        assert_eq!(g.len(), 1);
        let t = &g[0].trials;
        assert_eq!(t.iter().map(|r| r.trial_index).collect::<Vec<_>>(), [1, 2, 3]);
        assert_eq!(t[0].rt_ms, Some(512.5));
        assert_eq!(t[1].trial_type, TrialType::Stop);
        assert_eq!(t[1].ssd_ms, Some(250.0));
        assert_eq!(t[2].rt_ms, None);
    }

    #[test]
    fn bad_rt_names_line_and_field() {
        let err = parse("p1,1,go,400,\np1,2,go,abc,\n").unwrap_err();
        match err {
            Error::Parse { line, field, .. } => {
                assert_eq!(line, 3);
                assert_eq!(field, "rt_ms");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_schema_problems() {
        assert!(matches!(parse("p1,1,maybe,400,\n"), Err(Error::Parse { field, .. }) if field == "trial_type"));
        assert!(matches!(parse("p1,0,go,400,\n"), Err(Error::Parse { field, .. }) if field == "trial_index"));
        assert!(matches!(parse("p1,1,go,-4,\n"), Err(Error::Parse { field, .. }) if field == "rt_ms"));
        assert!(matches!(parse("p1,1,go\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse(""), Err(Error::Empty(_))));
        assert!(matches!(
            read_trials("id,idx,type,rt,ssd\n".as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn duplicate_index_is_an_error() {
        assert!(matches!(
            parse("p1,1,go,400,\np1,1,go,410,\n"),
            Err(Error::DuplicateTrial { index: 1, .. })
        ));
    }

    #[test]
    fn missing_file_reports_path() {
        let err = parse_trials(Path::new("/nonexistent/trials.csv")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/trials.csv"));
    }
}
