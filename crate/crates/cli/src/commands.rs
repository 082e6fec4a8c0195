use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;

use rfsemigroup::rf::{self, RfError};
use rfsemigroup::sweep::{self, NRange, ParamBox};
use rfsemigroup::toric;
use rfsemigroup::{AaError, AaPresentation, NumericalSemigroup, SemigroupError};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::{PresentationArgs, RfMode, VerifyArgs};

pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<SemigroupError> for CliError {
    fn from(e: SemigroupError) -> Self {
        CliError::Validation(format!("{e:?}: {e}"))
    }
}

impl From<AaError> for CliError {
    fn from(e: AaError) -> Self {
        match e {
            AaError::Semigroup(e) => e.into(),
            AaError::InvariantViolation(_) | AaError::ClassificationMismatch { .. } => {
                CliError::Internal(e.to_string())
            }
            e => CliError::Validation(format!("{e:?}: {e}")),
        }
    }
}

impl From<RfError> for CliError {
    fn from(e: RfError) -> Self {
        match e {
            RfError::Presentation(e) => e.into(),
            RfError::NotPseudoFrobenius(_) => CliError::Validation(format!("{e:?}: {e}")),
            e => CliError::Internal(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Internal(format!("i/o: {e}"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Error { code: u8, message: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommandResult {
    pub command: String,
    pub input: Value,
    pub output: Value,
    pub status: Status,
}

impl CommandResult {
    pub fn new(command: &str, input: Value, outcome: Result<Value, CliError>) -> (Self, u8) {
        let (output, status, code) = match outcome {
            Ok(v) => (v, Status::Ok, 0),
            Err(e) => (
                Value::Null,
                Status::Error {
                    code: e.code(),
                    message: e.message().to_string(),
                },
                e.code(),
            ),
        };
        let result = Self {
            command: command.to_string(),
            input,
            output,
            status,
        };
        (result, code)
    }
}

fn presentation(args: &PresentationArgs) -> Result<AaPresentation, CliError> {
    Ok(AaPresentation::new(args.m0, args.d, args.p, args.n)?)
}

fn to_value(v: impl Serialize) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Internal(e.to_string()))
}

pub fn apery(gens: &[i64], modulus: Option<i64>) -> Result<Value, CliError> {
    let h = NumericalSemigroup::new(gens)?;
    let ap = h.apery_set(modulus.unwrap_or_else(|| h.multiplicity()))?;
    to_value(ap)
}

pub fn pf(gens: &[i64]) -> Result<Value, CliError> {
    let h = NumericalSemigroup::new(gens)?;
    Ok(json!({
        "generators": h.generators(),
        "frobenius": h.frobenius_number().ok(),
        "pseudo_frobenius": h.pseudo_frobenius(),
        "type": h.type_of(),
        "symmetric": h.is_symmetric(),
    }))
}

pub fn structure(args: &PresentationArgs) -> Result<Value, CliError> {
    let pres = presentation(args)?;
    let sc = pres.structure_constants()?;
    let case = pres.classify_symmetric(&sc)?;
    Ok(json!({
        "generators": pres.generators(),
        "constants": to_value(&sc)?,
        "w_empty": sc.w_is_empty(),
        "candidates": to_value(pres.pf_candidates(&sc)?)?,
        "pseudo_frobenius": pres.semigroup().pseudo_frobenius(),
        "symmetric_case": to_value(case)?,
    }))
}

fn matrix_value(m: &rf::RfMatrix) -> Result<Value, CliError> {
    Ok(json!({ "rows": m.rows, "source": to_value(m.source)? }))
}

pub fn rf(args: &PresentationArgs, f: i64, mode: RfMode, limit: Option<usize>) -> Result<Value, CliError> {
    let pres = presentation(args)?;
    let h = pres.semigroup();
    match mode {
        RfMode::Closed => {
            let sc = pres.structure_constants()?;
            let matrices = rf::rf_closed_form(&pres, &sc, f)?
                .iter()
                .map(matrix_value)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(json!({ "f": f, "matrices": matrices }))
        }
        RfMode::Enumerate => {
            let matrices = rf::rf_enumerate(h, f, limit)?
                .map(|m| matrix_value(&m))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(json!({ "f": f, "emitted": matrices.len(), "matrices": matrices }))
        }
        RfMode::Count => {
            let count = rf::rf_count(h, f)?;
            // past u64 the count is reported as a decimal string
            let count = u64::try_from(count).map_or_else(|_| json!(count.to_string()), |c| json!(c));
            Ok(json!({ "f": f, "count": count }))
        }
    }
}

pub fn relations(args: &PresentationArgs, f: i64) -> Result<Value, CliError> {
    let pres = presentation(args)?;
    let set = rf::all_rf_relations(pres.semigroup(), f)?;
    let relations: Vec<Value> = set
        .relations
        .iter()
        .map(|(b, prov)| {
            json!({
                "plus": b.plus,
                "minus": b.minus,
                "degree": b.degree,
                "rows": [prov.rows.0, prov.rows.1],
            })
        })
        .collect();
    Ok(json!({ "f": f, "count": relations.len(), "relations": relations }))
}

pub fn ideal(gens: &[i64]) -> Result<Value, CliError> {
    let h = NumericalSemigroup::new(gens)?;
    let mp = toric::minimal_generating_set(&h);
    Ok(json!({
        "generators_of_semigroup": h.generators(),
        "count": mp.count,
        "betti_degrees": mp.betti_degrees,
        "generators": to_value(&mp.generators)?,
    }))
}

fn parse_range(name: &str, text: &str) -> Result<RangeInclusive<i64>, CliError> {
    let bad = || CliError::Validation(format!("--{name}: expected an integer or a range a..b, got {text:?}"));
    let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| bad());
    match text.split_once("..") {
        Some((a, b)) => Ok(parse(a)?..=parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(text)?;
            Ok(v..=v)
        }
    }
}

fn parse_box(args: &VerifyArgs) -> Result<ParamBox, CliError> {
    let p = parse_range("p", &args.p)?;
    if *p.start() < 0 {
        return Err(CliError::Validation("--p must be nonnegative".into()));
    }
    let n = if args.n == "auto" {
        NRange::Auto
    } else {
        NRange::Fixed(parse_range("n", &args.n)?)
    };
    Ok(ParamBox {
        m0: parse_range("m0", &args.m0)?,
        d: parse_range("d", &args.d)?,
        p: *p.start() as usize..=*p.end() as usize,
        n,
    })
}

fn single(range: &RangeInclusive<i64>, name: &str) -> Result<i64, CliError> {
    if range.start() == range.end() {
        Ok(*range.start())
    } else {
        Err(CliError::Validation(format!("--{name} takes a range only with --sweep")))
    }
}

pub fn verify(args: &VerifyArgs) -> Result<Value, CliError> {
    let param_box = parse_box(args)?;
    if args.sweep {
        return verify_sweep(args, &param_box);
    }
    let NRange::Fixed(n) = &param_box.n else {
        return Err(CliError::Validation("--n is required without --sweep".into()));
    };
    let p = single(&(*param_box.p.start() as i64..=*param_box.p.end() as i64), "p")?;
    let pres = AaPresentation::new(
        single(&param_box.m0, "m0")?,
        single(&param_box.d, "d")?,
        p as usize,
        single(n, "n")?,
    )?;
    let sc = pres.structure_constants()?;
    let case = pres.classify_symmetric(&sc)?;
    let h = pres.semigroup();
    let verdict = toric::is_minimally_generated_by_rf_relations(h);
    Ok(json!({
        "generators": pres.generators(),
        "type": h.type_of(),
        "symmetric_case": to_value(case)?,
        "ideal_generators": toric::minimal_generating_set(h).count,
        "holds": verdict.holds,
        "deficiency": verdict.deficiency,
        "witness": to_value(&verdict.witness)?,
    }))
}

fn verify_sweep(args: &VerifyArgs, param_box: &ParamBox) -> Result<Value, CliError> {
    let mut sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut write_error = None;
    let mut seen = 0usize;
    let report = sweep::verify_symmetric_sweep_with(param_box, args.jobs, |record| {
        seen += 1;
        eprintln!(
            "[{seen}] {:?} holds={} counterexample={}",
            record.generators, record.holds, record.counterexample
        );
        let line = serde_json::to_string(record).expect("serializable record");
        if let Err(e) = writeln!(sink, "{line}") {
            write_error.get_or_insert(e);
        }
    });
    if let Some(e) = write_error {
        return Err(e.into());
    }
    sink.flush()?;
    let counterexamples: Vec<&sweep::SweepRecord> = report.counterexamples().collect();
    Ok(json!({
        "examined": report.examined,
        "valid": report.valid,
        "symmetric": report.records.len(),
        "counterexamples": to_value(counterexamples)?,
        "out": args.out,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn result_round_trips() {
        let (ok, code) = CommandResult::new("pf", json!({"gens": [2, 3]}), pf(&[2, 3]));
        assert_eq!(code, 0);
        let back: CommandResult = serde_json::from_str(&serde_json::to_string(&ok).unwrap()).unwrap();
        assert_eq!(back, ok);

        let (err, code) = CommandResult::new("pf", json!({"gens": [2, 4]}), pf(&[2, 4]));
        assert_eq!(code, EXIT_VALIDATION);
        let back: CommandResult = serde_json::from_str(&serde_json::to_string(&err).unwrap()).unwrap();
        assert_eq!(back, err);
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("m0", "5..40").unwrap(), 5..=40);
        assert_eq!(parse_range("m0", "5..=40").unwrap(), 5..=40);
        assert_eq!(parse_range("m0", "7").unwrap(), 7..=7);
        assert!(parse_range("m0", "x").is_err());
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::from(RfError::NotPseudoFrobenius(3)).code(), EXIT_VALIDATION);
        assert_eq!(CliError::from(RfError::NoApplicableCase(3)).code(), EXIT_INTERNAL);
        assert_eq!(
            CliError::from(AaError::InvariantViolation("x".into())).code(),
            EXIT_INTERNAL
        );
        assert_eq!(CliError::from(SemigroupError::GcdNotOne(2)).code(), EXIT_VALIDATION);
    }
}
