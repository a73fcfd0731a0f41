//! Searches that should come back empty, plus the z-form parity check.

use dquad::families::family_parity_audit;
use dquad::search::{audit_lower_bound, audit_mod4};

fn main() {
    let r = audit_mod4(-50, 50, 60).expect("no quadruple for n = 2 mod 4");
    println!(
        "n = 2 (mod 4), |n| <= 50, bound 60: {} values of n, {} hits",
        r.counts.len(),
        r.hits()
    );

    let r = audit_lower_bound(10_000).expect("no quadruple below n^(1/4)");
    println!(
        "17 <= n <= {}: {} values of n, bound up to {}, {} hits",
        r.n_max, r.checked, r.max_bound, r.hits
    );

    let p = family_parity_audit();
    println!(
        "{}: n {:?}, b {:?}, c+d {:?}, d-c {:?}, matches: {}, rederived: {}",
        p.zform.id,
        p.zform.n,
        p.zform.b,
        p.zform.c_plus_d,
        p.zform.d_minus_c,
        p.zform.matches_expected(),
        p.zform_rederived
    );
}
