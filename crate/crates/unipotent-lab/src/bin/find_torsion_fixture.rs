//! Brute-force search for small relator sets whose graded relation
//! coinvariants carry torsion — used to produce the adversarial fixture
//! shipped under `fixtures/`. Deterministic: the candidate pool and the
//! enumeration order are fixed, so the first hit is stable.
//!
//! Usage: find-torsion-fixture [cutoff] (default 4)

use unipotent_lab::analysis::{qr_graded_scan, TorsionVerdict};
use unipotent_lab::words::{parse_word, Presentation};

fn main() {
    let cutoff: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);
    let generators: Vec<String> = vec!["x".into(), "y".into()];
    let pool = [
        "x^2", "y^2", "x^2 y^2", "[x,y]", "[x,y]^2", "x^2 [x,y]", "y^2 [x,y]",
        "[x,[x,y]]", "[x,y]^2 [x,[x,y]]", "x^4", "[x,y] y^4",
    ];
    let words: Vec<_> = pool
        .iter()
        .map(|t| (t.to_string(), parse_word(t, &generators).unwrap()))
        .collect();

    let mut found = 0;
    for p in [2u64, 3] {
        for i in 0..words.len() {
            for j in i..words.len() {
                let relators = if i == j {
                    vec![words[i].1.clone()]
                } else {
                    vec![words[i].1.clone(), words[j].1.clone()]
                };
                let labels: Vec<&str> = if i == j {
                    vec![&pool[i]]
                } else {
                    vec![&pool[i], &pool[j]]
                };
                let pres = Presentation {
                    prime: p,
                    generators: generators.clone(),
                    relators,
                };
                match qr_graded_scan(&pres, cutoff) {
                    Ok(report) => {
                        if let TorsionVerdict::TorsionAt(d) = report.verdict {
                            let factors: Vec<String> = report.per_degree
                                [d as usize - 1]
                                .torsion()
                                .iter()
                                .map(|f| f.to_string())
                                .collect();
                            println!(
                                "p={p} relators={{{}}} -> torsion at degree {d}, factors {:?}",
                                labels.join(", "),
                                factors
                            );
                            found += 1;
                        }
                    }
                    Err(e) => eprintln!("p={p} relators={{{}}}: {e}", labels.join(", ")),
                }
            }
        }
    }
    println!("{found} torsion hits at cutoff {cutoff}");
}
