//! Acceptance criteria 1-10, one line each. Runs without the libtest
//! harness so the lines are always printed; exits non-zero if any fail.

use std::process::{Command, Output};

use lobachevsky::kinematics::{denominator_identity, sum_square, FourMomentum, LobachevskyDelta};
use lobachevsky::verify::{run_verify, VerifyOptions, VerifyReport};
use lobachevsky::Vec3;

const BIN: &str = env!("CARGO_BIN_EXE_lobachevsky");

fn cli(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn identities(report: &VerifyReport, names: &[&str]) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for name in names {
        let r = report.identity(name).unwrap_or_else(|| panic!("no suite {name}"));
        pass &= r.pass;
        parts.push(format!("{name} {:.2e}/{:.0e} (n={})", r.max_residual, r.tolerance, r.trials));
    }
    Outcome {
        pass,
        detail: parts.join(", "),
    }
}

fn and(mut a: Outcome, pass: bool, detail: String) -> Outcome {
    a.pass &= pass;
    a.detail = format!("{}; {detail}", a.detail);
    a
}

fn worked_denominators() -> (bool, String) {
    // m = 1, Δ0 = 1.5 so Δ² = 1.25.
    let d = LobachevskyDelta {
        delta3: Vec3::new(0.0, 0.0, 1.25f64.sqrt()),
        delta0: 1.5,
        mass: 1.0,
    };
    let (lhs, rhs) = denominator_identity(&d).unwrap();
    let p = FourMomentum::at_rest(1.0).unwrap();
    let k = FourMomentum::on_shell(1.0, d.delta3).unwrap();
    let s = sum_square(&p, &k).unwrap();
    let pass = (lhs - 0.8).abs() < 1e-12 && (rhs - 0.8).abs() < 1e-12 && (s - 5.0).abs() < 1e-12;
    (pass, format!("worked value {lhs:.12} = {rhs:.12}, (p+k)² = {s:.12}"))
}

fn conventions(report: &VerifyReport) -> (bool, String) {
    let pass = report.conventions.len() == 2
        && report
            .conventions
            .iter()
            .all(|c| c.selected == Some(c.frozen) && c.passing_variants == 1);
    let detail = report
        .conventions
        .iter()
        .map(|c| {
            format!(
                "j={} frozen {:?}/{:?}/{:?}, {} of {} pass",
                c.spin.value(),
                c.frozen.chirality,
                c.frozen.brackets,
                c.frozen.time,
                c.passing_variants,
                c.variants_probed
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    (pass, detail)
}

fn criterion_ten() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for args in [
        &["verify", "--trials", "50"][..],
        &["amplitude", "--system", "bb", "--pmag", "0.7", "--costheta", "0.2"],
        &["scan", "--pmag-grid", "0.3:1.5:4", "--costheta-grid", "-1:1:5"],
        &["compare", "--pmag-grid", "0.5:1.5:3", "--grid", "-0.5:0.5:3"],
    ] {
        let a = cli(args);
        let b = cli(args);
        let same = a.stdout == b.stdout && a.status.code() == Some(0) && b.status.code() == Some(0);
        pass &= same;
        notes.push(format!("{} {}", args[0], if same { "identical" } else { "DIFFERS" }));
    }

    let pole = cli(&["amplitude", "--system", "bb", "--pmag", "0.8", "--costheta", "1"]);
    let pole_ok = pole.status.code() == Some(2)
        && String::from_utf8_lossy(&pole.stderr).contains("forward singularity");
    pass &= pole_ok;
    notes.push(format!("bb forward amplitude exit {:?}", pole.status.code()));

    let scan = cli(&["scan", "--system", "bb", "--pmag-grid", "0.8:0.8:1", "--costheta-grid", "0:1:2"]);
    let text = String::from_utf8_lossy(&scan.stdout);
    let nan_rows = text.lines().filter(|l| l.starts_with("8.0") && l.contains(",nan,nan,nan")).count();
    let scan_ok = scan.status.code() == Some(0) && nan_rows == 4 && text.lines().count() == 9;
    pass &= scan_ok;
    notes.push(format!("scan through pole: {nan_rows} nan rows, exit {:?}", scan.status.code()));

    Outcome {
        pass,
        detail: notes.join(", "),
    }
}

fn main() {
    let report = run_verify(&VerifyOptions::default());

    let (worked_ok, worked) = worked_denominators();
    let (conv_ok, conv) = conventions(&report);
    let ratio = report.substitution_tensor_ratio.unwrap_or([f64::NAN; 2]);

    let criteria: Vec<(&str, Outcome)> = vec![
        (
            "Lobachevsky consistency",
            identities(&report, &["lobachevsky_energy", "half_transfer_norm"]),
        ),
        (
            "denominator identities",
            and(identities(&report, &["denominator_split", "sum_square"]), worked_ok, worked),
        ),
        (
            "Wigner rotation equivalence",
            identities(&report, &["wigner_closed_form", "wigner_unitarity", "wigner_collinear"]),
        ),
        (
            "Pauli-Lubanski properties",
            identities(&report, &["pauli_lubanski_transversality", "pauli_lubanski_square"]),
        ),
        ("intertwining", identities(&report, &["intertwining"])),
        ("sandwich identities", and(identities(&report, &["sandwich"]), conv_ok, conv)),
        (
            "spinor normalization",
            identities(&report, &["spinor_normalization", "spinor_orthogonality"]),
        ),
        (
            "amplitude structure completeness",
            identities(&report, &["decomposition_completeness", "rotational_covariance"]),
        ),
        (
            "substitution rule",
            and(
                identities(&report, &["substitution_ratio_constancy", "substitution_ratio_magnitude"]),
                ratio[0].is_finite(),
                format!("recorded tensor ratio {:.12} (sign {})", ratio[0], if ratio[0] < 0.0 { "-" } else { "+" }),
            ),
        ),
        ("CLI determinism and exit codes", criterion_ten()),
    ];

    let mut failed = 0;
    for (i, (name, outcome)) in criteria.iter().enumerate() {
        println!(
            "criterion {:>2} {}: {} [{}]",
            i + 1,
            if outcome.pass { "PASS" } else { "FAIL" },
            name,
            outcome.detail
        );
        if !outcome.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
