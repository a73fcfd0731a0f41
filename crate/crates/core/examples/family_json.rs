//! Round-trips a family through JSON and uses the imported copy.

use dquad::arith::Int;
use dquad::families::{lookup, Family, FamilyJson};

fn main() {
    let original = lookup("nine_twenty").unwrap();
    let text = serde_json::to_string_pretty(&original.to_json()).unwrap();
    println!("{text}");

    let parsed: FamilyJson = serde_json::from_str(&text).unwrap();
    let imported = Family::from_json(&parsed).unwrap();
    assert_eq!(&imported, original);
    imported.prove().expect("imported family certifies");

    for v in 2..=4 {
        let t = imported.eval(&Int::from(v)).unwrap();
        println!("v = {v}: n = {}, max|a| = {}", t.n(), t.max_abs());
    }
}
