//! foxcalc: exact Fox calculus on free groups and Z^n from the command line.
//!
//! Verbs: eval, check, solve, transpose, derive, higher, kappa, quasi, rho.
//! Exit status: 0 on success or a passing check, 1 on a failing check,
//! 2 on usage or parse errors. Results go to stdout, diagnostics to stderr.
//! Every run with identical flags and seed produces byte-identical output.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;

use foxcalc::cohomology::{
    coboundary, compose_mu, conjugation_ctx, cross_product_1_1, derivation_cochain,
    kappa_from_pairing, quasi_derivation_extend, rho_map, zero_cochain_deg1,
};
use foxcalc::higher::{check_higher_cocycle, higher_eta_zn, HigherPairing};
use foxcalc::pairing::BoundaryMode;
use foxcalc::sampling::Rng;
use foxcalc::solver::DEFAULT_L_MAX;
use foxcalc::words::parse_word;
use foxcalc::{
    check_aug_intersection, check_axioms, check_boundary_condition, check_skew_identity,
    deserialize_pairing, parse_elem, serialize_pairing, solve_fundamental, surface_preset,
    Alphabet, CoeffRing, Derivation, FoxPairing, RingElem, Side,
};

const USAGE: &str = "usage: foxcalc <verb> [flags]

verbs:
  solve      --genus N --coeff Q|F2 [--l-start N] [--l-max N] [--out FILE]
  eval       --pairing FILE --left WORD --right WORD
  check      --pairing FILE [--samples N] [--seed N] [--max-len N] and one of:
               --axioms
               --skew
               --boundary WORD  with --normalized | --a-s ELEM | --containment
               --aug-intersection GENUS
  transpose  --pairing FILE [--out FILE]
  derive     --names \"a b\" --coeff Q|Z|F2 --side left|right --gen NAME --word WORD
  higher     --n N --coeff Q|Z|F2 --left \"m1 ; ... ; mn\" --right \"m1 ; ... ; mn\"
             or --n N --coeff TAG --check-cocycle [--samples N] [--seed N]
  kappa      --pairing FILE --g WORD --h WORD | --pairing FILE --check [--samples N] [--seed N]
  quasi      --pairing FILE --values \"e1 ; ... ; er\" [--samples N] [--seed N] [--word WORD]
  rho        --names \"a b\" --coeff Q|Z|F2 --dl \"e1 ; ... ; er\" --dr \"e1 ; ... ; er\"
             [--samples N] [--seed N] [--out FILE]

defaults: --samples 100, --seed 1.";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("foxcalc: {msg}");
            ExitCode::from(2)
        }
    }
}

struct Flags {
    values: BTreeMap<String, String>,
    switches: Vec<String>,
}

impl Flags {
    fn parse(args: &[String]) -> Result<Flags, String> {
        const SWITCHES: &[&str] = &[
            "--axioms",
            "--skew",
            "--normalized",
            "--containment",
            "--check",
            "--check-cocycle",
        ];
        let mut values = BTreeMap::new();
        let mut switches = Vec::new();
        let mut i = 0;
        while i < args.len() {
            let flag = &args[i];
            if !flag.starts_with("--") {
                return Err(format!("unexpected argument `{flag}`"));
            }
            if SWITCHES.contains(&flag.as_str()) {
                switches.push(flag.clone());
                i += 1;
                continue;
            }
            let value = args
                .get(i + 1)
                .ok_or_else(|| format!("flag `{flag}` needs a value"))?;
            values.insert(flag.clone(), value.clone());
            i += 2;
        }
        Ok(Flags { values, switches })
    }

    fn get(&self, name: &str) -> Option<&str> {
        self.values.get(name).map(|s| s.as_str())
    }

    fn require(&self, name: &str) -> Result<&str, String> {
        self.get(name)
            .ok_or_else(|| format!("missing required flag `{name}`"))
    }

    fn has(&self, name: &str) -> bool {
        self.switches.iter().any(|s| s == name)
    }

    fn usize_or(&self, name: &str, default: usize) -> Result<usize, String> {
        match self.get(name) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| format!("bad value for `{name}`: {v}")),
        }
    }

    fn u64_or(&self, name: &str, default: u64) -> Result<u64, String> {
        match self.get(name) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| format!("bad value for `{name}`: {v}")),
        }
    }
}

fn run(args: &[String]) -> Result<ExitCode, String> {
    let Some(verb) = args.first() else {
        return Err(format!("missing verb\n{USAGE}"));
    };
    let flags = Flags::parse(&args[1..])?;
    match verb.as_str() {
        "solve" => cmd_solve(&flags),
        "eval" => cmd_eval(&flags),
        "check" => cmd_check(&flags),
        "transpose" => cmd_transpose(&flags),
        "derive" => cmd_derive(&flags),
        "higher" => cmd_higher(&flags),
        "kappa" => cmd_kappa(&flags),
        "quasi" => cmd_quasi(&flags),
        "rho" => cmd_rho(&flags),
        other => Err(format!("unknown verb `{other}`\n{USAGE}")),
    }
}

fn parse_coeff(tag: &str) -> Result<CoeffRing, String> {
    CoeffRing::from_tag(tag).ok_or_else(|| format!("unknown coefficient ring `{tag}` (Q, Z, F2)"))
}

fn load_pairing(flags: &Flags) -> Result<FoxPairing, String> {
    let path = flags.require("--pairing")?;
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read `{path}`: {e}"))?;
    deserialize_pairing(&text).map_err(|e| format!("{path}: {e}"))
}

fn alphabet_from_flags(flags: &Flags) -> Result<Arc<Alphabet>, String> {
    if let Some(names) = flags.get("--names") {
        let parts: Vec<&str> = names.split_whitespace().collect();
        if parts.is_empty() {
            return Err("`--names` needs at least one generator".into());
        }
        Ok(Alphabet::free(&parts))
    } else if let Some(rank) = flags.get("--rank") {
        let rank: usize = rank
            .parse()
            .map_err(|_| "bad value for `--rank`".to_string())?;
        if rank == 0 {
            return Err("`--rank` must be at least 1".into());
        }
        Ok(Alphabet::free_default(rank))
    } else {
        Err("need `--names` or `--rank`".into())
    }
}

fn parse_elem_list(
    text: &str,
    alphabet: &Arc<Alphabet>,
    ring: CoeffRing,
) -> Result<Vec<RingElem>, String> {
    text.split(';')
        .map(|part| parse_elem(part.trim(), alphabet, ring).map_err(|e| e.to_string()))
        .collect()
}

fn write_or_print(flags: &Flags, text: &str) -> Result<(), String> {
    match flags.get("--out") {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write `{path}`: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report_exit(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_solve(flags: &Flags) -> Result<ExitCode, String> {
    let genus: usize = flags
        .require("--genus")?
        .parse()
        .map_err(|_| "bad value for `--genus`".to_string())?;
    let ring = parse_coeff(flags.require("--coeff")?)?;
    let (sp, l_default) = surface_preset(genus).map_err(|e| e.to_string())?;
    let l_start = flags.usize_or("--l-start", l_default)?;
    let l_max = flags.usize_or("--l-max", DEFAULT_L_MAX)?;
    let (pairing, info) =
        solve_fundamental(&sp, ring, l_start, l_max).map_err(|e| e.to_string())?;
    for cert in &info.certificates {
        eprintln!("note: {cert}");
    }
    let text = serialize_pairing(&pairing);
    match flags.get("--out") {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| format!("cannot write `{path}`: {e}"))?
        }
        None => print!("{text}"),
    }
    println!(
        "solved genus={} coeff={} L={} kernel_dim={} lambda={}",
        info.genus,
        info.ring.tag(),
        info.support,
        info.kernel_dim,
        info.lambda
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_eval(flags: &Flags) -> Result<ExitCode, String> {
    let p = load_pairing(flags)?;
    let left = parse_word(flags.require("--left")?, p.alphabet()).map_err(|e| e.to_string())?;
    let right = parse_word(flags.require("--right")?, p.alphabet()).map_err(|e| e.to_string())?;
    println!("{}", p.eval_words(&left, &right));
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(flags: &Flags) -> Result<ExitCode, String> {
    let p = load_pairing(flags)?;
    let samples = flags.usize_or("--samples", 100)?;
    let seed = flags.u64_or("--seed", 1)?;
    let max_len = flags.usize_or("--max-len", 6)?;

    let report = if flags.has("--axioms") {
        check_axioms(&p, samples, seed, max_len)
    } else if flags.has("--skew") {
        check_skew_identity(&p, samples, seed)
    } else if let Some(boundary) = flags.get("--boundary") {
        let s = parse_word(boundary, p.alphabet()).map_err(|e| e.to_string())?;
        let mode = if flags.has("--normalized") {
            BoundaryMode::Normalized
        } else if flags.has("--containment") {
            BoundaryMode::Containment
        } else if let Some(a_s) = flags.get("--a-s") {
            let a = parse_elem(a_s, p.alphabet(), p.ring()).map_err(|e| e.to_string())?;
            BoundaryMode::GivenFactor(a)
        } else {
            return Err("boundary check needs --normalized, --containment, or --a-s".into());
        };
        check_boundary_condition(&p, &s, &mode, samples, seed)
    } else if let Some(genus) = flags.get("--aug-intersection") {
        let genus: usize = genus
            .parse()
            .map_err(|_| "bad value for `--aug-intersection`".to_string())?;
        check_aug_intersection(&p, genus, samples, seed)
    } else {
        return Err("check needs one of --axioms, --skew, --boundary, --aug-intersection".into());
    };
    println!("{report}");
    Ok(report_exit(report.passed))
}

fn cmd_transpose(flags: &Flags) -> Result<ExitCode, String> {
    let p = load_pairing(flags)?;
    let mut t = p.transpose();
    t.metadata = if p.metadata.is_empty() {
        "transpose".to_string()
    } else {
        format!("transpose of: {}", p.metadata)
    };
    write_or_print(flags, &serialize_pairing(&t))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_derive(flags: &Flags) -> Result<ExitCode, String> {
    let alphabet = alphabet_from_flags(flags)?;
    let ring = parse_coeff(flags.require("--coeff")?)?;
    let side = match flags.require("--side")? {
        "left" => Side::Left,
        "right" => Side::Right,
        other => return Err(format!("bad side `{other}` (left or right)")),
    };
    let gen_name = flags.require("--gen")?;
    let gen = alphabet
        .index_of(gen_name)
        .ok_or_else(|| format!("unknown generator `{gen_name}`"))?;
    let word = parse_word(flags.require("--word")?, &alphabet).map_err(|e| e.to_string())?;
    let value = match side {
        Side::Left => foxcalc::left_fox_derivative(&word, gen, ring),
        Side::Right => foxcalc::right_fox_derivative(&word, gen, ring),
    }
    .map_err(|e| e.to_string())?;
    println!("{value}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_higher(flags: &Flags) -> Result<ExitCode, String> {
    let n = flags
        .require("--n")?
        .parse::<usize>()
        .map_err(|_| "bad value for `--n`".to_string())?;
    if n == 0 {
        return Err("`--n` must be at least 1".into());
    }
    let ring = parse_coeff(flags.require("--coeff")?)?;
    if flags.has("--check-cocycle") {
        let samples = flags.usize_or("--samples", 50)?;
        let seed = flags.u64_or("--seed", 1)?;
        let hp = HigherPairing::zn(n, ring);
        let report = check_higher_cocycle(&hp, samples, seed);
        println!("{report}");
        return Ok(report_exit(report.passed));
    }
    let alphabet = Alphabet::abelian(n);
    let left = parse_elem_list(flags.require("--left")?, &alphabet, ring)?;
    let right = parse_elem_list(flags.require("--right")?, &alphabet, ring)?;
    let value = higher_eta_zn(n, &left, &right, ring).map_err(|e| e.to_string())?;
    println!("{value}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_kappa(flags: &Flags) -> Result<ExitCode, String> {
    let p = load_pairing(flags)?;
    let kappa = kappa_from_pairing(&p);
    if flags.has("--check") {
        let samples = flags.usize_or("--samples", 100)?;
        let seed = flags.u64_or("--seed", 1)?;
        let ctx = conjugation_ctx(p.alphabet(), p.ring());
        let dk = coboundary(&ctx, &kappa).map_err(|e| e.to_string())?;
        let mut rng = Rng::new(seed);
        for k in 0..samples {
            let g = rng.word(p.alphabet(), 5);
            let h = rng.word(p.alphabet(), 5);
            let w = rng.word(p.alphabet(), 5);
            let v = dk.at(&[g.clone(), h.clone(), w.clone()]);
            if !v.is_zero() {
                println!(
                    "FAIL kappa-cocycle samples={samples} seed={seed} counterexample=sample {k}: g={g} h={h} k={w}"
                );
                return Ok(ExitCode::from(1));
            }
        }
        println!("PASS kappa-cocycle samples={samples} seed={seed}");
        return Ok(ExitCode::SUCCESS);
    }
    let g = parse_word(flags.require("--g")?, p.alphabet()).map_err(|e| e.to_string())?;
    let h = parse_word(flags.require("--h")?, p.alphabet()).map_err(|e| e.to_string())?;
    println!("{}", kappa.at(&[g, h]));
    Ok(ExitCode::SUCCESS)
}

fn cmd_quasi(flags: &Flags) -> Result<ExitCode, String> {
    let p = load_pairing(flags)?;
    let samples = flags.usize_or("--samples", 100)?;
    let seed = flags.u64_or("--seed", 1)?;
    let values = parse_elem_list(flags.require("--values")?, p.alphabet(), p.ring())?;
    let (q, report) =
        quasi_derivation_extend(&p, values, samples, seed).map_err(|e| e.to_string())?;
    if let Some(word) = flags.get("--word") {
        let w = parse_word(word, p.alphabet()).map_err(|e| e.to_string())?;
        println!("q({w}) = {}", q.eval_word(&w));
    }
    println!("{report}");
    Ok(report_exit(report.passed))
}

fn cmd_rho(flags: &Flags) -> Result<ExitCode, String> {
    let alphabet = alphabet_from_flags(flags)?;
    let ring = parse_coeff(flags.require("--coeff")?)?;
    let samples = flags.usize_or("--samples", 50)?;
    let seed = flags.u64_or("--seed", 1)?;
    let dl_values = parse_elem_list(flags.require("--dl")?, &alphabet, ring)?;
    let dr_values = parse_elem_list(flags.require("--dr")?, &alphabet, ring)?;
    let dl = Derivation::new(Side::Left, &alphabet, ring, dl_values).map_err(|e| e.to_string())?;
    let dr = Derivation::new(Side::Right, &alphabet, ring, dr_values).map_err(|e| e.to_string())?;

    let f0 = cross_product_1_1(
        &derivation_cochain(&dl),
        &derivation_cochain(&dr),
        &alphabet,
        ring,
        samples,
        seed,
    )
    .map_err(|e| e.to_string())?;
    let f = compose_mu(&f0);
    let rho = rho_map(
        &f,
        &zero_cochain_deg1(&alphabet, ring),
        &alphabet,
        ring,
        samples,
        seed,
    )
    .map_err(|e| e.to_string())?;
    let materialized = rho.materialize();

    // Cross-check against the derivation-product pairing.
    let expect = FoxPairing::from_derivations(&dl, &dr).map_err(|e| e.to_string())?;
    let mut rng = Rng::new(seed);
    let mut passed = true;
    let mut counterexample = String::new();
    for k in 0..samples {
        let a = rng.word(&alphabet, 5);
        let b = rng.word(&alphabet, 5);
        if rho.eval_words(&a, &b) != expect.eval_words(&a, &b) {
            passed = false;
            counterexample = format!(" counterexample=sample {k}: a={a} b={b}");
            break;
        }
    }
    let verdict = if passed { "PASS" } else { "FAIL" };
    println!("{verdict} rho-vs-derivation-pairing samples={samples} seed={seed}{counterexample}");
    write_or_print(flags, &serialize_pairing(&materialized))?;
    Ok(report_exit(passed))
}
