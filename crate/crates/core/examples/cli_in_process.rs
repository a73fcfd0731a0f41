//! Drives the command line in-process and captures its JSON.

fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = dquad::cli::run(
        [
            "dquad",
            "search",
            "--n",
            "7",
            "--bound",
            "100",
            "--workers",
            "2",
        ],
        &mut out,
        &mut err,
    );
    println!("exit {code}");
    for line in String::from_utf8(out).unwrap().lines() {
        let rec: dquad::cli::records::TupleRecord = serde_json::from_str(line).unwrap();
        println!("{}", rec.elements.join(" "));
    }
}
