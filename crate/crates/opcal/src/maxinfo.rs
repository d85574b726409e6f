//! Parallel unique-minimizer sweep over `OP_k` with a resumable checkpoint.
//!
//! The checkpoint holds one tab-separated line per completed partition
//! index: `index, partition, p, margin`, or `index, partition, none` when
//! no witness exists. Loaded witnesses are re-certified before use.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use opcal_core::algebra::parse_rational;
use opcal_core::witness::{WitnessRecord, WitnessSearch, SWEEP_EXPERIMENTAL_K, SWEEP_MAX_K};
use opcal_core::{OrderedPartition, ProbVector};
use rayon::prelude::*;

use crate::format::{witness_header, witness_row, Style};

/// Largest `k` swept without `--deep`.
pub const QUICK_MAX_K: usize = 5;

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub k: usize,
    pub deep: bool,
    pub experimental: bool,
    pub jobs: usize,
    pub out_dir: PathBuf,
    /// Defaults to `witnesses_k{k}.ckpt` in `out_dir` when `deep` is set.
    pub checkpoint: Option<PathBuf>,
    pub progress: bool,
}

impl SweepOptions {
    pub fn new(k: usize) -> Self {
        SweepOptions {
            k,
            deep: false,
            experimental: false,
            jobs: 1,
            out_dir: PathBuf::from("."),
            checkpoint: None,
            progress: false,
        }
    }

    pub fn csv_path(&self) -> PathBuf {
        self.out_dir.join(format!("witnesses_k{}.csv", self.k))
    }

    pub fn checkpoint_path(&self) -> Option<PathBuf> {
        match &self.checkpoint {
            Some(p) => Some(p.clone()),
            None if self.deep => Some(self.out_dir.join(format!("witnesses_k{}.ckpt", self.k))),
            None => None,
        }
    }

    /// Usage problems, reported before any work starts.
    pub fn check(&self) -> Result<(), String> {
        if self.k < 3 {
            return Err(format!("--k {} is below 3", self.k));
        }
        if self.k > QUICK_MAX_K && !self.deep {
            return Err(format!("--k {} needs --deep (hours-scale sweep)", self.k));
        }
        if self.k > SWEEP_MAX_K && !self.experimental {
            return Err(format!("--k {} needs --experimental", self.k));
        }
        if self.k > SWEEP_EXPERIMENTAL_K {
            return Err(format!("--k {} exceeds {}", self.k, SWEEP_EXPERIMENTAL_K));
        }
        if self.jobs == 0 {
            return Err("--jobs must be positive".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SweepSummary {
    pub k: usize,
    pub total: usize,
    pub records: Vec<WitnessRecord>,
    /// Partitions without a witness, in enumeration order.
    pub missing: Vec<OrderedPartition>,
    pub resumed: usize,
    pub elapsed: Duration,
    pub csv_path: PathBuf,
}

impl SweepSummary {
    pub fn count(&self) -> usize {
        self.records.len()
    }

    pub fn complete(&self) -> bool {
        self.missing.is_empty() && self.count() == self.total
    }
}

type Entry = Option<WitnessRecord>;

fn parse_line(search: &WitnessSearch, line: &str) -> anyhow::Result<(usize, Entry)> {
    let fields: Vec<&str> = line.split('\t').collect();
    let index: usize = fields.first().context("empty line")?.parse()?;
    let partition = OrderedPartition::parse(fields.get(1).context("missing partition")?)?;
    if search.table().partitions().get(index) != Some(&partition) {
        bail!("index {index} does not hold {partition}");
    }
    match fields.get(2..) {
        Some(["none"]) => Ok((index, None)),
        Some([p, margin]) => Ok((
            index,
            Some(WitnessRecord {
                partition,
                witness: ProbVector::parse(p)?,
                margin: parse_rational(margin)?,
                rounds: 0,
            }),
        )),
        _ => bail!("malformed checkpoint line"),
    }
}

fn format_line(index: usize, partition: &OrderedPartition, entry: &Entry) -> String {
    match entry {
        Some(r) => {
            let [_, p, margin] = witness_row(r);
            format!("{index}\t{partition}\t{p}\t{margin}")
        }
        None => format!("{index}\t{partition}\tnone"),
    }
}

/// Entries already in the checkpoint. Lines that fail to parse or whose
/// witness no longer certifies are dropped and recomputed.
fn load_checkpoint(search: &WitnessSearch, path: &Path, log: &mut dyn Write) -> anyhow::Result<BTreeMap<usize, Entry>> {
    let mut done = BTreeMap::new();
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(done),
        Err(e) => return Err(e).with_context(|| format!("reading {}", path.display())),
    };
    let mut dropped = 0usize;
    for line in BufReader::new(file).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match parse_line(search, &line) {
            Ok((i, Some(r))) if search.certify(&r)? => {
                done.insert(i, Some(r));
            }
            Ok((i, None)) => {
                done.insert(i, None);
            }
            _ => dropped += 1,
        }
    }
    if dropped > 0 {
        writeln!(log, "checkpoint: dropped {dropped} unusable lines")?;
    }
    Ok(done)
}

pub fn sweep(opts: &SweepOptions, log: &mut (dyn Write + Send)) -> anyhow::Result<SweepSummary> {
    if let Err(msg) = opts.check() {
        bail!(msg);
    }
    let start = Instant::now();
    let search = WitnessSearch::with_limit(opts.k, if opts.experimental { SWEEP_EXPERIMENTAL_K } else { SWEEP_MAX_K })?;
    let total = search.len();
    let ckpt_path = opts.checkpoint_path();
    let mut done = match &ckpt_path {
        Some(p) => load_checkpoint(&search, p, log)?,
        None => BTreeMap::new(),
    };
    let resumed = done.len();
    if resumed > 0 {
        writeln!(log, "resuming k={} with {resumed}/{total} done", opts.k)?;
    }
    let pending: Vec<usize> = (0..total).filter(|i| !done.contains_key(i)).collect();

    let writer = match &ckpt_path {
        Some(p) => Some(Mutex::new(
            OpenOptions::new()
                .create(true)
                .append(true)
                .open(p)
                .with_context(|| format!("opening {}", p.display()))?,
        )),
        None => None,
    };
    let finished = AtomicUsize::new(resumed);
    let step = (total / 100).max(1);
    let log = Mutex::new(log);

    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build()?;
    let fresh: Vec<(usize, Entry)> = pool.install(|| {
        pending
            .par_iter()
            .map(|&i| -> anyhow::Result<(usize, Entry)> {
                let entry = search.find(i)?;
                if let Some(w) = &writer {
                    let line = format_line(i, &search.table().partitions()[i], &entry);
                    let mut f = w.lock().expect("checkpoint writer");
                    writeln!(f, "{line}")?;
                    f.flush()?;
                }
                let n = finished.fetch_add(1, Ordering::Relaxed) + 1;
                if opts.progress && (n % step == 0 || n == total) {
                    let mut l = log.lock().expect("log");
                    writeln!(l, "k={} {n}/{total} {:.1}s", opts.k, start.elapsed().as_secs_f64())?;
                }
                Ok((i, entry))
            })
            .collect::<anyhow::Result<Vec<_>>>()
    })?;
    done.extend(fresh);

    let mut records = Vec::with_capacity(total);
    let mut missing = Vec::new();
    for (i, entry) in done {
        match entry {
            Some(r) => records.push(r),
            None => missing.push(search.table().partitions()[i].clone()),
        }
    }

    std::fs::create_dir_all(&opts.out_dir)?;
    let csv_path = opts.csv_path();
    let mut w = csv::Writer::from_path(&csv_path).with_context(|| format!("writing {}", csv_path.display()))?;
    w.write_record(witness_header())?;
    for r in &records {
        w.write_record(witness_row(r))?;
    }
    w.flush()?;

    Ok(SweepSummary {
        k: opts.k,
        total,
        records,
        missing,
        resumed,
        elapsed: start.elapsed(),
        csv_path,
    })
}

/// One-line human summary.
pub fn summary_line(s: &SweepSummary) -> String {
    let min_margin = s
        .records
        .iter()
        .map(|r| &r.margin)
        .min()
        .map(|m| Style::exact().num(m))
        .unwrap_or_else(|| "-".into());
    format!(
        "k={} count={}/{} min_margin={} wall={:.2}s csv={}",
        s.k,
        s.count(),
        s.total,
        min_margin,
        s.elapsed.as_secs_f64(),
        s.csv_path.display()
    )
}
