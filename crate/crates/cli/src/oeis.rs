//! Sequence lookup, either online or against a fixture file.

use std::path::Path;
use std::time::Duration;

use serde::Deserialize;

use crate::error::CliError;

pub const BUNDLED_FIXTURE: &str = include_str!("../fixtures/oeis.json");
const ENDPOINT: &str = "https://oeis.org/search";

#[derive(Deserialize, Debug)]
struct Fixture {
    sequences: Vec<FixtureEntry>,
}

#[derive(Deserialize, Debug)]
struct FixtureEntry {
    id: String,
    data: Vec<i128>,
}

pub fn parse_terms(text: &str) -> Result<Vec<i128>, CliError> {
    let terms: Vec<i128> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| CliError::Usage(format!("`{s}` is not an integer term"))))
        .collect::<Result<_, _>>()?;
    if terms.is_empty() {
        return Err(CliError::Usage("--terms needs at least one integer".into()));
    }
    Ok(terms)
}

fn contains_run(data: &[i128], terms: &[i128]) -> bool {
    data.windows(terms.len()).any(|w| w == terms)
}

/// Ids in `fixture` whose data holds `terms` contiguously, in fixture order.
pub fn lookup_fixture(fixture: &str, terms: &[i128]) -> Result<Vec<String>, CliError> {
    let fixture: Fixture =
        serde_json::from_str(fixture).map_err(|e| CliError::Compute(format!("unreadable fixture: {e}")))?;
    Ok(fixture
        .sequences
        .into_iter()
        .filter(|s| contains_run(&s.data, terms))
        .map(|s| s.id)
        .collect())
}

pub fn lookup_offline(path: Option<&Path>, terms: &[i128]) -> Result<Vec<String>, CliError> {
    match path {
        None => lookup_fixture(BUNDLED_FIXTURE, terms),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Usage(format!("cannot read fixture {}: {e}", p.display())))?;
            lookup_fixture(&text, terms)
        }
    }
}

/// Parses a search response; the endpoint has returned both a bare list and
/// an object with a `results` field.
pub fn parse_response(body: &str, terms: &[i128]) -> Result<Vec<String>, CliError> {
    let value: serde_json::Value =
        serde_json::from_str(body).map_err(|e| CliError::Compute(format!("unexpected OEIS response: {e}")))?;
    let results = match &value {
        serde_json::Value::Array(items) => items.as_slice(),
        serde_json::Value::Object(map) => map.get("results").and_then(|r| r.as_array()).map_or(&[][..], Vec::as_slice),
        _ => &[],
    };
    let mut ids = Vec::new();
    for r in results {
        let Some(number) = r.get("number").and_then(|n| n.as_u64()) else { continue };
        let data: Vec<i128> = r
            .get("data")
            .and_then(|d| d.as_str())
            .unwrap_or("")
            .split(',')
            .filter_map(|s| s.trim().parse().ok())
            .collect();
        if contains_run(&data, terms) {
            ids.push(format!("A{number:06}"));
        }
    }
    Ok(ids)
}

pub fn lookup_online(terms: &[i128]) -> Result<Vec<String>, CliError> {
    let query: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
    let agent = ureq::AgentBuilder::new().timeout(Duration::from_secs(10)).build();
    let body = agent
        .get(ENDPOINT)
        .query("q", &query.join(","))
        .query("fmt", "json")
        .call()
        .map_err(|e| CliError::Compute(format!("OEIS request failed ({e}); retry later or pass --offline")))?
        .into_string()
        .map_err(|e| CliError::Compute(format!("OEIS response unreadable ({e}); retry later or pass --offline")))?;
    parse_response(&body, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_fixture_lookups() {
        let fishburn = parse_terms("1,1,2,5,15,53,217,1014,5335").unwrap();
        assert!(lookup_offline(None, &fishburn).unwrap().contains(&"A022493".to_string()));
        assert!(lookup_offline(None, &[7, 7, 7, 7, 7, 7]).unwrap().is_empty());
        assert!(matches!(parse_terms(" , "), Err(CliError::Usage(_))));
        assert!(matches!(parse_terms("1,x"), Err(CliError::Usage(m)) if m.contains("`x`")));
    }

    #[test]
    fn both_response_shapes() {
        let list = r#"[{"number": 22493, "data": "1,1,2,5,15,53"}, {"number": 1, "data": "1,2,3"}]"#;
        let object = r#"{"results": [{"number": 22493, "data": "1,1,2,5,15,53"}]}"#;
        let none = r#"{"results": null}"#;
        let t = [2, 5, 15];
        assert_eq!(parse_response(list, &t).unwrap(), vec!["A022493"]);
        assert_eq!(parse_response(object, &t).unwrap(), vec!["A022493"]);
        assert!(parse_response(none, &t).unwrap().is_empty());
        assert!(parse_response("<html>", &t).is_err());
    }
}
