use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Value};
use spinsurgery::exactlin::BitVector;
use spinsurgery::invariants::{
    alexander_from_seifert, casson, check_sigma_rank_consistency, half_second_derivative_at_1, least_passing_order,
    order_profile, rohlin_mod2, Constant, ExtensionPolicy, InvariantValue, RohlinMod2, SeifertMatrix, SpinInvariant,
    SurgeryScheme,
};
use spinsurgery::kirby::{apply_sequence, for_each_step, random_sequence};
use spinsurgery::presentation::{characteristic_vectors, spin_count, SpinStructures};
use spinsurgery::{MoveSequence, SpinPresentation};

use crate::error::CliError;
use crate::files::{big_json, parse_knot_table, parse_seifert, read, PresentationFile, SchemeFile, KNOT_TABLE};
use crate::{CassonArgs, Cli, Command, InvariantChoice, PolicyChoice};

/// A command result in both renderings.
pub struct Report {
    pub text: String,
    pub json: Value,
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Spins { file } => spins(file),
        Command::Invariant { file } => invariant(file),
        Command::Validate { file } => validate(file),
        Command::Move { file, ops, output } => apply_moves(file, ops, output.as_deref()),
        Command::Fuzz { file, steps, seed } => fuzz(file, *steps, *seed),
        Command::Vassiliev {
            schemes,
            max_order,
            invariant,
            policy,
        } => vassiliev(schemes, *max_order, *invariant, *policy),
        Command::Casson(args) => casson_cmd(args),
    }
}

fn bits_json(c: &BitVector) -> Value {
    Value::from(c.to_u8s())
}

fn spins(file: &Path) -> Result<Report, CliError> {
    let f = PresentationFile::load(file)?;
    let structures = characteristic_vectors(&f.b);
    let count = structures.count();
    let mut text = format!("count = {count}\n");
    let json = match &structures {
        SpinStructures::Enumerated(list) => {
            for c in list {
                let _ = writeln!(text, "{c}");
            }
            json!({ "count": big_json(&count.into()), "vectors": list.iter().map(bits_json).collect::<Vec<_>>() })
        }
        SpinStructures::Affine(set) => {
            let particular = set.particular().expect("characteristic vectors always exist");
            let _ = writeln!(text, "particular = {particular}");
            for k in set.kernel_basis() {
                let _ = writeln!(text, "kernel {k}");
            }
            json!({
                "count": big_json(&count.into()),
                "particular": bits_json(particular),
                "kernel_basis": set.kernel_basis().iter().map(bits_json).collect::<Vec<_>>(),
            })
        }
    };
    Ok(Report { text, json })
}

fn invariant(file: &Path) -> Result<Report, CliError> {
    let p = PresentationFile::load(file)?.presentation()?;
    let i = rohlin_mod2(&p);
    let c_b_c = p.matrix().quadratic_form(p.characteristic());
    let det = p.matrix().det();
    Ok(Report {
        text: format!("I = {i}\nn = {}\ncBc = {c_b_c}\ndet = {det}\n", p.len()),
        json: json!({ "I": i.as_i128() as i64, "n": p.len(), "cBc": big_json(&c_b_c), "det": big_json(&det) }),
    })
}

fn validate(file: &Path) -> Result<Report, CliError> {
    let f = PresentationFile::load(file)?;
    let p = f.presentation()?;
    let count = spin_count(p.matrix());
    let i = rohlin_mod2(&p);
    let mut text = format!("ok\nn = {}\nspin structures = {count}\nI = {i}\n", p.len());
    let mut json = json!({
        "valid": true,
        "n": p.len(),
        "c": bits_json(p.characteristic()),
        "spin_count": big_json(&count.into()),
        "I": i.as_i128() as i64,
    });
    match check_sigma_rank_consistency(&p) {
        Ok(r) => {
            let _ = writeln!(
                text,
                "det = {}\nsignature = {}\nrank = {}\nparity consistent = {}",
                r.det,
                r.signature,
                r.rank,
                r.consistent()
            );
            json["det"] = big_json(&r.det);
            json["signature"] = json!(r.signature);
            json["rank"] = json!(r.rank);
            json["parity_consistent"] = json!(r.consistent());
        }
        Err(e) => {
            let _ = writeln!(text, "det = 0\nparity check skipped: {e}");
            json["det"] = json!(0);
            json["parity_consistent"] = Value::Null;
        }
    }
    Ok(Report { text, json })
}

fn apply_moves(file: &Path, ops: &str, output: Option<&Path>) -> Result<Report, CliError> {
    let f = PresentationFile::load(file)?;
    let p = f.presentation()?;
    let seq: MoveSequence = ops.parse()?;
    let q = apply_sequence(&p, &seq)?;
    let out = PresentationFile::from_presentation(f.name.clone(), &q);
    let mut json = json!({ "moves": seq.to_string(), "I": rohlin_mod2(&q).as_i128() as i64 });
    let text = match output {
        Some(path) => {
            std::fs::write(path, out.print()).map_err(|source| CliError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            json["output"] = json!(path.display().to_string());
            format!(
                "applied {} moves; n = {}; wrote {}\n",
                seq.len(),
                q.len(),
                path.display()
            )
        }
        None => out.print(),
    };
    json["result"] = out.to_json();
    Ok(Report { text, json })
}

fn fuzz(file: &Path, steps: usize, seed: u64) -> Result<Report, CliError> {
    let p = PresentationFile::load(file)?.presentation()?;
    let seq = random_sequence(&p, steps, seed);
    let count = spin_count(p.matrix());
    let i = rohlin_mod2(&p);
    let mut violation: Option<CliError> = None;
    let mut last = p.clone();
    for_each_step(&p, &seq, |step, q| {
        if violation.is_some() {
            return;
        }
        let (b, c) = q.clone().into_parts();
        let message = if let Err(e) = SpinPresentation::validate(b, c) {
            Some(format!("invalid presentation: {e}"))
        } else if spin_count(q.matrix()) != count {
            Some(format!("spin count changed to {}", spin_count(q.matrix())))
        } else if rohlin_mod2(q) != i {
            Some("invariant I changed".to_owned())
        } else {
            None
        };
        violation = message.map(|message| CliError::FuzzViolation { step, message });
        last = q.clone();
    })?;
    if let Some(e) = violation {
        return Err(e);
    }
    let moves = seq.to_string();
    Ok(Report {
        text: format!(
            "steps = {steps}\nseed = {seed}\nfinal n = {}\nI = {i}\nspin structures = {count}\nmoves = {moves}\n",
            last.len()
        ),
        json: json!({
            "steps": steps,
            "seed": seed,
            "final_n": last.len(),
            "I": i.as_i128() as i64,
            "spin_count": big_json(&count.into()),
            "moves": moves,
        }),
    })
}

fn vassiliev(
    files: &[std::path::PathBuf],
    max_order: usize,
    choice: InvariantChoice,
    policy: Option<PolicyChoice>,
) -> Result<Report, CliError> {
    let loaded = files
        .iter()
        .map(|f| SchemeFile::load(f))
        .collect::<Result<Vec<_>, _>>()?;
    let schemes: Vec<SurgeryScheme> = loaded.into_iter().map(|s| s.scheme).collect();
    let policy = match policy {
        Some(PolicyChoice::Unique) => ExtensionPolicy::Unique,
        Some(PolicyChoice::Average) => ExtensionPolicy::AverageMod2,
        Some(PolicyChoice::Declared) => ExtensionPolicy::Declared,
        None if schemes.iter().all(|s| s.declared().is_some()) => ExtensionPolicy::Declared,
        None => ExtensionPolicy::Unique,
    };
    let constant = Constant(InvariantValue::Integer(1));
    let (name, v): (&str, &dyn SpinInvariant) = match choice {
        InvariantChoice::Rohlin => ("rohlin", &RohlinMod2),
        InvariantChoice::Const => ("const", &constant),
    };
    let reports = order_profile(v, max_order, &schemes, policy)?;
    let least = least_passing_order(&reports);

    let mut text = format!("invariant = {name}\npolicy = {policy:?}\n");
    let mut rows = Vec::new();
    for r in &reports {
        let sums: Vec<String> = r.terms.iter().map(|t| t.sum.to_string()).collect();
        let _ = writeln!(text, "size {}: [{}]", r.order + 1, sums.join(", "));
        rows.push(json!({
            "size": r.order + 1,
            "terms": r.terms.iter().map(|t| json!({
                "scheme": files[t.scheme].display().to_string(),
                "extras": t.extras,
                "sum": t.sum.as_i128() as i64,
            })).collect::<Vec<_>>(),
            "all_zero": r.passed(),
        }));
    }
    let tested = reports.len().checked_sub(1);
    let verdict = match (least, tested) {
        (Some(k), _) => format!(
            "order <= {k}{}",
            if k > 0 {
                format!(" and not <= {}", k - 1)
            } else {
                String::new()
            }
        ),
        (None, Some(t)) => format!("order > {t}"),
        (None, None) => "no order tested".to_owned(),
    };
    let _ = writeln!(text, "verdict: {verdict}");
    Ok(Report {
        text,
        json: json!({
            "invariant": name,
            "policy": format!("{policy:?}"),
            "table": rows,
            "least_passing_order": least,
            "verdict": verdict,
        }),
    })
}

fn knot_seifert(args: &CassonArgs) -> Result<(String, SeifertMatrix), CliError> {
    if let Some(path) = &args.source.seifert {
        let (name, v) = parse_seifert(&read(path)?)?;
        return Ok((name.unwrap_or_else(|| path.display().to_string()), v));
    }
    let wanted = args.source.knot.as_deref().expect("clap requires one source");
    let table = parse_knot_table(KNOT_TABLE)?;
    let names: Vec<&str> = table.iter().map(|(n, _)| n.as_str()).collect();
    let known = names.join(", ");
    table
        .iter()
        .find(|(n, _)| n == wanted)
        .map(|(n, v)| (n.clone(), v.clone()))
        .ok_or_else(|| CliError::UnknownKnot(wanted.to_owned(), known))
}

fn casson_cmd(args: &CassonArgs) -> Result<Report, CliError> {
    let (name, v) = knot_seifert(args)?;
    let delta = alexander_from_seifert(&v);
    let half: BigInt = half_second_derivative_at_1(&delta)?;
    let lambda = casson(&delta, args.n)?;
    Ok(Report {
        text: format!(
            "knot = {name}\nDelta = {delta}\nhalf_d2 = {half}\nn = {}\nlambda = {lambda}\n",
            args.n
        ),
        json: json!({
            "knot": name,
            "delta": delta.to_string(),
            "half_d2": big_json(&half),
            "n": args.n,
            "lambda": big_json(&lambda),
        }),
    })
}
