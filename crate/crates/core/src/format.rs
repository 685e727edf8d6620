//! Scenario file format: a JSON document with four preparations in
//! lexicographic (a0, a1) order and two measurements in y order.

use crate::error::{Error, Result};
use crate::qubit::{BlochVector, PovmEffect, QubitState, Scenario};
use serde::Deserialize;

#[derive(Deserialize)]
struct RawScenario {
    preparations: Vec<RawPreparation>,
    measurements: Vec<RawMeasurement>,
}

#[derive(Deserialize)]
struct RawPreparation {
    a0: u8,
    a1: u8,
    s: [f64; 3],
}

#[derive(Deserialize)]
struct RawMeasurement {
    y: u8,
    c: f64,
    t: [f64; 3],
}

/// Parses and validates a scenario document, naming the offending field on
/// failure.
pub fn parse_scenario(json: &str) -> Result<Scenario> {
    let raw: RawScenario =
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;

    if raw.preparations.len() != 4 {
        return Err(Error::Validation {
            field: "preparations".into(),
            reason: format!("expected 4 entries, found {}", raw.preparations.len()),
        });
    }
    if raw.measurements.len() != 2 {
        return Err(Error::Validation {
            field: "measurements".into(),
            reason: format!("expected 2 entries, found {}", raw.measurements.len()),
        });
    }

    let mut states = Vec::with_capacity(4);
    for (i, prep) in raw.preparations.iter().enumerate() {
        let expected = ((i / 2) as u8, (i % 2) as u8);
        if (prep.a0, prep.a1) != expected {
            return Err(Error::Validation {
                field: format!("preparations[{i}]"),
                reason: format!(
                    "expected (a0,a1) = ({},{}) in lexicographic order, found ({},{})",
                    expected.0, expected.1, prep.a0, prep.a1
                ),
            });
        }
        let s = BlochVector::new(prep.s[0], prep.s[1], prep.s[2]);
        let state = QubitState::new(s).map_err(|e| Error::Validation {
            field: format!("preparation (a0={},a1={})", prep.a0, prep.a1),
            reason: e.to_string(),
        })?;
        states.push(state);
    }

    let mut effects = Vec::with_capacity(2);
    for (y, meas) in raw.measurements.iter().enumerate() {
        if meas.y as usize != y {
            return Err(Error::Validation {
                field: format!("measurements[{y}]"),
                reason: format!("expected y = {y} in order, found {}", meas.y),
            });
        }
        let t = BlochVector::new(meas.t[0], meas.t[1], meas.t[2]);
        let effect = PovmEffect::new(meas.c, t).map_err(|e| Error::Validation {
            field: format!("measurement (y={y})"),
            reason: e.to_string(),
        })?;
        effects.push(effect);
    }

    Ok(Scenario::new(
        [states[0], states[1], states[2], states[3]],
        [effects[0], effects[1]],
    ))
}

/// Serializes a scenario in the documented format, with 17 significant
/// digits so values survive a round trip exactly.
pub fn scenario_to_json(scenario: &Scenario) -> String {
    let num = |v: f64| format!("{v:.17e}");
    let vec3 = |v: BlochVector| format!("[{}, {}, {}]", num(v.x), num(v.y), num(v.z));
    let mut out = String::from("{\n  \"preparations\": [\n");
    for a0 in 0..2usize {
        for a1 in 0..2usize {
            out.push_str(&format!(
                "    {{\"a0\": {a0}, \"a1\": {a1}, \"s\": {}}}{}\n",
                vec3(scenario.preparation(a0, a1).bloch()),
                if (a0, a1) == (1, 1) { "" } else { "," }
            ));
        }
    }
    out.push_str("  ],\n  \"measurements\": [\n");
    for y in 0..2usize {
        let effect = scenario.effect(y);
        out.push_str(&format!(
            "    {{\"y\": {y}, \"c\": {}, \"t\": {}}}{}\n",
            num(effect.c()),
            vec3(effect.t()),
            if y == 1 { "" } else { "," }
        ));
    }
    out.push_str("  ]\n}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::ProbabilityTable;

    #[test]
    fn serialization_round_trips_exactly() {
        for seed in 0..100 {
            let sc = crate::qubit::random_scenario(seed);
            let back = parse_scenario(&scenario_to_json(&sc)).unwrap();
            assert_eq!(sc, back);
        }
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(parse_scenario("{nope"), Err(Error::Parse(_))));
        assert!(matches!(parse_scenario("42"), Err(Error::Parse(_))));
    }

    #[test]
    fn wrong_preparation_count_is_rejected() {
        let json = r#"{"preparations": [], "measurements": []}"#;
        let err = parse_scenario(json).unwrap_err();
        assert!(matches!(err, Error::Validation { field, .. } if field == "preparations"));
    }

    #[test]
    fn misordered_preparations_are_rejected() {
        let sc = crate::qubit::random_scenario(1);
        let json = scenario_to_json(&sc).replace("\"a0\": 0, \"a1\": 1", "\"a0\": 1, \"a1\": 0");
        assert!(parse_scenario(&json).is_err());
    }

    #[test]
    fn invalid_state_names_the_preparation() {
        let json = r#"{
          "preparations": [
            {"a0": 0, "a1": 0, "s": [0.0, 0.0, 1.0]},
            {"a0": 0, "a1": 1, "s": [0.0, 0.0, 1.0]},
            {"a0": 1, "a1": 0, "s": [1.2, 0.0, 0.0]},
            {"a0": 1, "a1": 1, "s": [0.0, 0.0, 1.0]}
          ],
          "measurements": [
            {"y": 0, "c": 0.5, "t": [0.5, 0.0, 0.0]},
            {"y": 1, "c": 0.5, "t": [0.0, 0.0, 0.5]}
          ]
        }"#;
        let err = parse_scenario(json).unwrap_err();
        match err {
            Error::Validation { field, .. } => assert_eq!(field, "preparation (a0=1,a1=0)"),
            other => panic!("wrong error: {other}"),
        }
    }

    #[test]
    fn invalid_effect_names_the_measurement() {
        let json = r#"{
          "preparations": [
            {"a0": 0, "a1": 0, "s": [0.0, 0.0, 1.0]},
            {"a0": 0, "a1": 1, "s": [0.0, 0.0, 1.0]},
            {"a0": 1, "a1": 0, "s": [0.0, 0.0, -1.0]},
            {"a0": 1, "a1": 1, "s": [0.0, 0.0, 1.0]}
          ],
          "measurements": [
            {"y": 0, "c": 0.5, "t": [0.6, 0.0, 0.0]},
            {"y": 1, "c": 0.5, "t": [0.0, 0.0, 0.5]}
          ]
        }"#;
        let err = parse_scenario(json).unwrap_err();
        match err {
            Error::Validation { field, .. } => assert_eq!(field, "measurement (y=0)"),
            other => panic!("wrong error: {other}"),
        }
    }

    #[test]
    fn parsed_scenario_reproduces_its_table() {
        let json = r#"{
          "preparations": [
            {"a0": 0, "a1": 0, "s": [0.70710678118654752, 0.0, 0.70710678118654752]},
            {"a0": 0, "a1": 1, "s": [0.70710678118654752, 0.0, -0.70710678118654752]},
            {"a0": 1, "a1": 0, "s": [-0.70710678118654752, 0.0, 0.70710678118654752]},
            {"a0": 1, "a1": 1, "s": [-0.70710678118654752, 0.0, -0.70710678118654752]}
          ],
          "measurements": [
            {"y": 0, "c": 0.5, "t": [0.5, 0.0, 0.0]},
            {"y": 1, "c": 0.5, "t": [0.0, 0.0, 0.5]}
          ]
        }"#;
        let sc = parse_scenario(json).unwrap();
        let t = ProbabilityTable::from_scenario(&sc).witness();
        assert!((t - crate::witness::QUANTUM_BOUND).abs() < 1e-12);
    }
}
