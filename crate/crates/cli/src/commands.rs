use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use ternary_core::mdpipeline::{read_identity, run_multidegree, verify_expansion_zero, write_identity, ExpansionStore, DELTA};
use ternary_core::mlpipeline::{
    emit_group_algebra_identity, extract_new_identity, partitions_up_to_dim, render_group_algebra_identity, rep_of_emitted,
    stacked_rank, PartitionReport, Pipeline,
};
use ternary_core::modlinalg::{is_prime, Fp};
use ternary_core::permgroup::{Partition, RepCache};
use ternary_core::ternary::{MonomialBasis, TypeSet};

use crate::error::CliError;
use crate::{Config, Format};

const SCHEMA: u32 = 1;

fn field(cfg: &Config) -> Result<Fp, CliError> {
    if !matches!(cfg.degree, 5 | 7 | 9 | 11) {
        return Err(CliError::Usage(format!("degree must be 5, 7, 9 or 11, not {}", cfg.degree)));
    }
    Fp::try_new(cfg.prime)
        .filter(|f| f.p() as usize > cfg.degree)
        .ok_or_else(|| CliError::Usage(format!("{} is not an odd prime above the degree", cfg.prime)))
}

fn pipeline(cfg: &Config, field: Fp) -> Result<Pipeline, CliError> {
    let pipe = Pipeline::new(cfg.degree, field)?;
    Ok(match &cfg.cache_dir {
        Some(dir) => pipe.with_cache(RepCache::new(dir)?),
        None => pipe,
    })
}

fn output(cfg: &Config) -> Result<Box<dyn Write>, CliError> {
    Ok(match &cfg.out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn write_json(cfg: &Config, value: &serde_json::Value) -> Result<(), CliError> {
    let mut out = output(cfg)?;
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn write_csv<T: Serialize>(cfg: &Config, rows: &[T]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(output(cfg)?);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn selected_partitions(cfg: &Config) -> Result<Vec<Partition>, CliError> {
    if cfg.partitions.is_empty() {
        return Ok(partitions_up_to_dim(cfg.degree, cfg.max_dim));
    }
    cfg.partitions
        .iter()
        .map(|s| {
            let p = Partition::parse(s)?;
            if p.n() != cfg.degree {
                return Err(CliError::Usage(format!("partition {s} is not a partition of {}", cfg.degree)));
            }
            Ok(p)
        })
        .collect()
}

/// The largest prime below `p` that still exceeds the degree.
fn second_prime(p: u32, degree: usize) -> Option<Fp> {
    (degree as u32 + 1..p).rev().find(|&q| q > 2 && is_prime(q)).map(Fp::new)
}

#[derive(Serialize)]
struct TableRow<'a> {
    partition: &'a str,
    dim: usize,
    sym: usize,
    symlif: usize,
    all: usize,
    new: usize,
}

pub fn table(cfg: &Config) -> Result<(), CliError> {
    let field = field(cfg)?;
    let pipe = pipeline(cfg, field)?;
    let second = if cfg.check_prime {
        let q = second_prime(field.p(), cfg.degree).ok_or_else(|| CliError::Usage("no second prime available".into()))?;
        Some(pipeline(cfg, q)?)
    } else {
        None
    };
    let mut reports: Vec<PartitionReport> = Vec::new();
    for shape in selected_partitions(cfg)? {
        log::info!("partition {} (dimension {})", shape.exponent_notation(), shape.dimension());
        let r = pipe.partition_report(&shape)?;
        log::info!("sym={} symlif={} all={} new={}", r.sym, r.symlif, r.all, r.new);
        if let Some(other) = &second {
            let s = other.partition_report(&shape)?;
            if (s.sym, s.symlif, s.all, s.new) != (r.sym, r.symlif, r.all, r.new) {
                return Err(CliError::Mismatch(format!(
                    "partition {}: ranks differ modulo {} and {}",
                    r.partition,
                    field.p(),
                    other.field().p()
                )));
            }
        }
        reports.push(r);
    }
    match cfg.format {
        Format::Json => write_json(
            cfg,
            &json!({
                "schema": SCHEMA,
                "command": "table",
                "degree": cfg.degree,
                "prime": field.p(),
                "second_prime": second.as_ref().map(|s| s.field().p()),
                "rows": reports,
            }),
        ),
        Format::Csv => {
            let rows: Vec<TableRow> = reports
                .iter()
                .map(|r| TableRow { partition: &r.partition, dim: r.dim, sym: r.sym, symlif: r.symlif, all: r.all, new: r.new })
                .collect();
            write_csv(cfg, &rows)
        }
    }
}

#[derive(Serialize)]
struct EntryRow {
    column: usize,
    type_index: usize,
    tableau_index: usize,
    tableau: String,
    coefficient: i64,
}

pub fn extract(cfg: &Config, partition: &str) -> Result<(), CliError> {
    let field = field(cfg)?;
    let shape = Partition::parse(partition)?;
    if shape.n() != cfg.degree {
        return Err(CliError::Usage(format!("partition {partition} is not a partition of {}", cfg.degree)));
    }
    let pipe = pipeline(cfg, field)?;
    log::info!("partition {} (dimension {})", shape.exponent_notation(), shape.dimension());
    let run = pipe.run(&shape)?;
    let rep = pipe.natural_rep(&shape)?;
    let report = extract_new_identity(&run, &rep)?;
    log::info!("leading column {} in row {}", report.leading_column, report.row);
    let terms = emit_group_algebra_identity(&report, &rep);
    let emitted = rep_of_emitted(&terms, &rep, pipe.types().len(), field)?;
    let in_all = stacked_rank(&run.allmat, &emitted) == run.report.all;
    let outside_lifted = stacked_rank(&run.oldmat, &emitted) > run.report.symlif;
    if !in_all || !outside_lifted {
        return Err(CliError::Mismatch(format!(
            "emitted identity: in all identities {in_all}, outside lifted identities {outside_lifted}"
        )));
    }
    match cfg.format {
        Format::Json => write_json(
            cfg,
            &json!({
                "schema": SCHEMA,
                "command": "extract",
                "prime": field.p(),
                "ranks": run.report,
                "coefficients": report.distinct_coefficients(),
                "identity": report,
                "group_algebra": terms,
                "rendered": render_group_algebra_identity(&terms),
                "emitted_in_all": in_all,
                "emitted_outside_lifted": outside_lifted,
            }),
        ),
        Format::Csv => {
            let rows: Vec<EntryRow> = report
                .entries
                .iter()
                .map(|e| EntryRow {
                    column: e.column,
                    type_index: e.type_index,
                    tableau_index: e.tableau_index,
                    tableau: e.tableau.iter().map(u8::to_string).collect::<Vec<_>>().join(" "),
                    coefficient: e.coefficient,
                })
                .collect();
            write_csv(cfg, &rows)
        }
    }
}

pub fn multidegree(cfg: &Config, identity: &Path) -> Result<(), CliError> {
    if cfg.degree != 11 {
        return Err(CliError::Usage("the multidegree search runs in degree 11".into()));
    }
    let field = field(cfg)?;
    let pipe = pipeline(cfg, field)?;
    let outcome = run_multidegree(&pipe)?;
    let file = File::create(identity)?;
    write_identity(BufWriter::new(file), &outcome.basis, &outcome.identity, field.p())?;
    log::info!("identity written to {}", identity.display());
    match cfg.format {
        Format::Json => write_json(cfg, &serde_json::to_value(&outcome.report)?),
        Format::Csv => Err(CliError::Usage("the multidegree report is only available as json".into())),
    }
}

pub fn verify(cfg: &Config, file: &Path) -> Result<(), CliError> {
    let basis = MonomialBasis::new(TypeSet::new(11)?, &DELTA);
    let v = read_identity(BufReader::new(File::open(file)?), &basis)?;
    let terms = v.iter().filter(|&&c| c != 0).count();
    log::info!("{terms} terms read; expanding");
    let store = ExpansionStore::build(&basis);
    let zero = verify_expansion_zero(&store, &v);
    write_json(cfg, &json!({ "schema": SCHEMA, "command": "verify", "terms": terms, "expansion_zero": zero }))?;
    if zero {
        Ok(())
    } else {
        Err(CliError::Mismatch("identity does not expand to zero".into()))
    }
}
