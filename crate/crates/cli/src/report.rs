use std::collections::BTreeMap;

use gbent::classify::{class_of_spectrum, dual_of_spectrum, is_gbent_spectrum, plateau_of_spectrum};
use gbent::theorems::all_verdicts;
use gbent::transform::{gwht, wht};
use gbent::{BoolClass, CycInt, DualResult, GbfTable, Result};
use serde_json::{json, Value};

fn coeffs(c: &CycInt) -> Value {
    serde_json::to_value(c).expect("serializable")["coeffs"].take()
}

pub fn class_name(c: BoolClass, n: u32) -> String {
    match c {
        BoolClass::Bent => "bent".into(),
        _ if c.is_semibent(n) => "semibent".into(),
        BoolClass::Plateaued { s } => format!("plateaued({s})"),
        BoolClass::NotPlateaued { .. } => "not_plateaued".into(),
    }
}

/// Gray-image summary, or `null` at level 1.
pub fn gray_section(f: &GbfTable) -> Value {
    let Ok(image) = f.gray_map() else {
        return Value::Null;
    };
    let w = wht(&image);
    let class = class_of_spectrum(&w);
    let mut hist: BTreeMap<i64, u64> = BTreeMap::new();
    for &v in w.values() {
        *hist.entry(v).or_default() += 1;
    }
    let spectrum: serde_json::Map<String, Value> =
        hist.into_iter().map(|(v, c)| (v.to_string(), json!(c))).collect();
    json!({
        "n": image.n(),
        "class": class_name(class, image.n()),
        "plateau": class.plateau(),
        "spectrum": spectrum,
    })
}

pub fn input_section(f: &GbfTable) -> Value {
    json!({ "n": f.n(), "k": f.k().get(), "values": f.values() })
}

pub fn analyze(f: &GbfTable, approx: bool) -> Result<Value> {
    let s = gwht(f);
    let gbent = is_gbent_spectrum(&s);
    let (regular, dual, dual_status) = if gbent {
        match dual_of_spectrum(&s)? {
            DualResult::Regular { dual } => (json!(true), json!(dual.values()), "regular"),
            DualResult::NotRegular { .. } => (json!(false), Value::Null, "not_regular"),
            DualResult::NotRepresentable => (Value::Null, Value::Null, "not_representable"),
        }
    } else {
        (Value::Null, Value::Null, "not_gbent")
    };
    let spectrum: Vec<Value> = s
        .values()
        .iter()
        .zip(s.moduli_sq())
        .enumerate()
        .map(|(u, (v, m))| {
            let mut e = json!({ "u": u, "value": coeffs(v), "modulus_sq": coeffs(m) });
            if approx {
                let (re, im) = v.to_complex();
                e["approx"] = json!([re, im]);
            }
            e
        })
        .collect();
    let theorems: serde_json::Map<String, Value> = all_verdicts(f)?
        .into_iter()
        .map(|(k, v)| (k.to_string(), serde_json::to_value(v).expect("serializable")))
        .collect();
    Ok(json!({
        "input": input_section(f),
        "classification": {
            "gbent": gbent,
            "plateau": plateau_of_spectrum(&s).level(),
            "regular": regular,
            "dual": dual,
            "dual_status": dual_status,
        },
        "gray": gray_section(f),
        "theorems": theorems,
        "spectrum": spectrum,
    }))
}
