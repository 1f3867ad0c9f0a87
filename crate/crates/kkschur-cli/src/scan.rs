//! Resumable conjecture scanning: a deterministic instance sequence, one
//! JSON report line per instance, and a checkpoint file updated after every
//! batch so long runs can be interrupted and resumed.

use kkschur::theorems::{instances, run_instance, Bounds, StatementId};
use kkschur::{Error, LevelContext, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::io::Write;
use std::path::{Path, PathBuf};

const BATCH: usize = 64;

pub struct ScanOutcome {
    pub completed: u64,
    pub failures: u64,
}

#[derive(Serialize, Deserialize)]
struct State {
    config: String,
    completed: u64,
    failures: u64,
}

#[derive(Serialize)]
struct ReportLine<'a> {
    statement: &'a str,
    k: u32,
    index: u64,
    instance: &'a Value,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

/// FNV-1a, used only to derive a stable default state-file name.
fn fingerprint_hash(s: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn cache_dir() -> PathBuf {
    std::env::var_os("KKSCHUR_CACHE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("."))
}

fn config_string(ctx: &LevelContext, ids: &[StatementId], bounds: &Bounds) -> String {
    let names: Vec<&str> = ids.iter().map(|id| id.name()).collect();
    format!(
        "k={};statements={};max_size={};max_rect_total={};max_rect_mult={}",
        ctx.k(),
        names.join(","),
        bounds.max_lambda_size,
        bounds.max_rect_total,
        bounds.max_rect_mult
    )
}

fn load_state(path: &Path, config: &str) -> Result<State> {
    if !path.exists() {
        return Ok(State {
            config: config.to_string(),
            completed: 0,
            failures: 0,
        });
    }
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Error::PreconditionViolated(format!("cannot read {path:?}: {e}")))?;
    let state: State = serde_json::from_str(&raw)
        .map_err(|e| Error::PreconditionViolated(format!("bad state file {path:?}: {e}")))?;
    if state.config != config {
        return Err(Error::PreconditionViolated(format!(
            "state file {path:?} belongs to a different scan configuration"
        )));
    }
    Ok(state)
}

fn save_state(path: &Path, state: &State) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, serde_json::to_string(state).expect("serializable"))
        .and_then(|_| std::fs::rename(&tmp, path))
        .map_err(|e| Error::PreconditionViolated(format!("cannot write {path:?}: {e}")))
}

pub fn run(
    ctx: &LevelContext,
    ids: &[StatementId],
    bounds: &Bounds,
    report: Option<PathBuf>,
    state_path: Option<PathBuf>,
    limit: Option<u64>,
) -> Result<ScanOutcome> {
    let config = config_string(ctx, ids, bounds);
    let state_path = state_path.unwrap_or_else(|| {
        cache_dir().join(format!(
            "kkschur-scan-{:016x}.state.json",
            fingerprint_hash(&config)
        ))
    });
    let mut state = load_state(&state_path, &config)?;

    // the deterministic instance sequence this configuration denotes
    let mut sequence: Vec<(StatementId, Value)> = Vec::new();
    for id in ids {
        for inst in instances(ctx, *id, bounds) {
            sequence.push((*id, inst));
        }
    }

    let mut sink: Box<dyn Write> = match &report {
        Some(path) => Box::new(
            std::fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| Error::PreconditionViolated(format!("cannot open {path:?}: {e}")))?,
        ),
        None => Box::new(std::io::stdout().lock()),
    };

    let mut remaining = limit.unwrap_or(u64::MAX);
    while (state.completed as usize) < sequence.len() && remaining > 0 {
        let start = state.completed as usize;
        let len = BATCH
            .min(sequence.len() - start)
            .min(remaining.min(usize::MAX as u64) as usize);
        let batch = &sequence[start..start + len];
        let results: Vec<Result<Option<kkschur::theorems::Counterexample>>> = batch
            .par_iter()
            .map(|(id, inst)| run_instance(ctx, *id, inst))
            .collect();
        for (offset, ((id, inst), result)) in batch.iter().zip(results).enumerate() {
            let ce = result?;
            let ok = ce.is_none();
            if !ok {
                state.failures += 1;
            }
            let line = ReportLine {
                statement: id.name(),
                k: ctx.k(),
                index: (start + offset) as u64,
                instance: inst,
                ok,
                detail: ce.map(|c| format!("expected {}; got {}", c.expected, c.got)),
            };
            writeln!(
                sink,
                "{}",
                serde_json::to_string(&line).expect("serializable")
            )
            .map_err(|e| Error::PreconditionViolated(format!("cannot write report: {e}")))?;
        }
        state.completed += len as u64;
        remaining -= len as u64;
        save_state(&state_path, &state)?;
    }
    sink.flush().ok();
    Ok(ScanOutcome {
        completed: state.completed,
        failures: state.failures,
    })
}
