//! The two rational constructions and the integer quadruples they give.

use dquad::arith::{rat_from_ints, rat_int, Int};
use dquad::constructions::{chain_32, chain_920, clear_denominators, specialize_32};

fn show(label: &str, rt: &dquad::constructions::RationalTuple) {
    let e: Vec<String> = rt.elements.iter().map(|x| x.to_string()).collect();
    println!("{label}: n = {}, {{{}}}", rt.n, e.join(", "));
    for (i, j, r) in rt.verify().expect("rational squares") {
        println!("    a{i} a{j} + n = ({r})^2");
    }
    let (t, l) = clear_denominators(rt).unwrap();
    println!(
        "    x{l}: D({}) {:?}",
        t.n(),
        t.elements().iter().map(Int::to_string).collect::<Vec<_>>()
    );
}

fn main() {
    for v in [rat_int(1), rat_int(2), rat_from_ints(3, 2)] {
        match chain_920(&v) {
            Ok(rt) => show(&format!("quartic chain v = {v}"), &rt),
            Err(e) => println!("quartic chain v = {v}: {e}"),
        }
    }
    if let Err(e) = chain_920(&rat_from_ints(1, 2)) {
        println!("quartic chain v = 1/2: {e}");
    }

    let (rt, state) = chain_32(&rat_int(5), &rat_int(2)).unwrap();
    println!(
        "(b, s) chain: t = {}, r = {}, x = {}, y = {}",
        state.t, state.r, state.x, state.y
    );
    show("(b, s) chain b = 5, s = 2", &rt);

    for v in 2..=6 {
        let t = specialize_32(&Int::from(v)).unwrap();
        println!(
            "specialized v = {v}: D({}) {:?}",
            t.n(),
            t.elements().iter().map(Int::to_string).collect::<Vec<_>>()
        );
    }
}
