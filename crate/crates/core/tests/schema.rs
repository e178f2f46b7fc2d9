//! The published schema and the parser agree on document structure.

mod common;

use common::{random_dataset, CARS};
use perfprof::{emit_schema, parse_dataset};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};

fn validator() -> jsonschema::Validator {
    let schema: Value = serde_json::from_str(emit_schema()).unwrap();
    jsonschema::draft7::new(&schema).unwrap()
}

fn cars_value() -> Value {
    serde_json::from_slice(CARS).unwrap()
}

fn mutated(f: impl FnOnce(&mut Value)) -> Value {
    let mut v = cars_value();
    f(&mut v);
    v
}

#[test]
fn schema_accepts_car_fixture() {
    assert!(validator().is_valid(&cars_value()));
    assert!(parse_dataset(CARS).is_ok());
}

#[test]
fn schema_and_parser_agree_on_structural_cases() {
    let v = validator();
    let cases: Vec<(&str, Value)> = vec![
        (
            "missing metric",
            mutated(|d| {
                d.as_object_mut().unwrap().remove("metric");
            }),
        ),
        ("data is a number", mutated(|d| d["data"] = json!(3))),
        ("metric is a number", mutated(|d| d["metric"] = json!(1))),
        ("label not a string", mutated(|d| d["labels"][0] = json!(7))),
        (
            "duplicate label",
            mutated(|d| d["labels"] = json!(["Road", "Road"])),
        ),
        (
            "instance not an array",
            mutated(|d| d["instances"][0] = json!(0)),
        ),
        (
            "negative index",
            mutated(|d| d["instances"][0] = json!([-1])),
        ),
        (
            "fractional index",
            mutated(|d| d["instances"][0] = json!([0.5])),
        ),
        (
            "integral float index",
            mutated(|d| d["instances"][0] = json!([1.0])),
        ),
        (
            "repeated index",
            mutated(|d| d["instances"][2] = json!([1, 1])),
        ),
        (
            "no instances",
            json!({"metric": "t", "labels": [], "instances": [], "data": {"s": {"c": []}}}),
        ),
        (
            "negative value",
            mutated(|d| d["data"]["Car B"]["wheels"][0] = json!(-1)),
        ),
        (
            "string value",
            mutated(|d| d["data"]["Car B"]["wheels"][0] = json!("10")),
        ),
        (
            "zero value",
            mutated(|d| d["data"]["Car B"]["wheels"][0] = json!(0)),
        ),
        ("empty data", mutated(|d| d["data"] = json!({}))),
        ("empty solver", mutated(|d| d["data"]["Car B"] = json!({}))),
        (
            "solver not an object",
            mutated(|d| d["data"]["Car B"] = json!([1])),
        ),
        (
            "component not an array",
            mutated(|d| d["data"]["Car B"]["wheels"] = json!(5)),
        ),
        ("top-level array", json!([1, 2])),
        (
            "extra top-level key",
            mutated(|d| d["comment"] = json!("hi")),
        ),
    ];
    for (name, doc) in cases {
        let text = serde_json::to_vec(&doc).unwrap();
        assert_eq!(
            v.is_valid(&doc),
            parse_dataset(&text).is_ok(),
            "schema and parser disagree on {name}"
        );
    }
}

/// Rules the schema cannot express: the parser is strictly tighter here.
#[test]
fn cross_field_rules_are_parser_only() {
    let v = validator();
    let short = mutated(|d| d["data"]["Car A"]["motor"] = json!([20, 3, 4, 5, 1]));
    let out_of_range = mutated(|d| d["instances"][2] = json!([0, 2]));
    for doc in [short, out_of_range] {
        assert!(v.is_valid(&doc));
        assert!(parse_dataset(&serde_json::to_vec(&doc).unwrap()).is_err());
    }
}

#[test]
fn every_valid_dataset_validates() {
    let v = validator();
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..200 {
        let doc = random_dataset(&mut rng, 6, 30).to_document();
        assert!(v.is_valid(&doc));
    }
}
