//! Command-line front end: decide / value / verify / batch.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use serde::Serialize;

use adm3::checks;
use adm3::driver::{self, Answer, Decision, RunStats};
use adm3::graph::{degeneracy, load_edge_list_path, Graph, Vertex};
use adm3::oracle::Oracle;
use adm3::reference::verify_ordering;

#[derive(Parser)]
#[command(name = "adm3", version, about = "3-admissibility of sparse graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether the 3-admissibility of a graph is at most p.
    /// Prints YES or NO; exit code 0 on YES, 1 on NO, 2 on error.
    Decide {
        /// Edge-list file (plain or gzip)
        path: PathBuf,
        /// Admissibility bound to test
        #[arg(long)]
        p: usize,
        /// Write the witness ordering here, one original label per line
        #[arg(long)]
        ordering: Option<PathBuf>,
        /// Re-check any YES answer against the slow exact oracle
        #[arg(long)]
        verify: bool,
        /// Run per-query invariant checks and emit a trace on stderr
        #[arg(long)]
        instrument: bool,
    },
    /// Compute the exact 3-admissibility of a graph.
    Value {
        path: PathBuf,
        /// Emit one JSON object instead of the plain line
        #[arg(long)]
        json: bool,
        /// Append a result row to this CSV file
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        instrument: bool,
    },
    /// Evaluate an ordering: the maximum packing number over its prefixes.
    Verify {
        path: PathBuf,
        /// Ordering file, one original label per line
        #[arg(long)]
        ordering: PathBuf,
        /// Exit 0 iff the ordering value is at most p
        #[arg(long)]
        p: Option<usize>,
        /// Admissibility radius
        #[arg(long, default_value_t = 3)]
        r: u32,
    },
    /// Process every file in a directory and append result rows to a CSV.
    Batch {
        dir: PathBuf,
        /// Output CSV path
        #[arg(long)]
        csv: PathBuf,
        /// Give up on a network after this many seconds
        #[arg(long)]
        timeout: Option<u64>,
        /// Worker threads (one graph per worker)
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Truncate the CSV instead of appending
        #[arg(long)]
        overwrite: bool,
        #[arg(long)]
        instrument: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

type AnyError = Box<dyn std::error::Error>;

fn run(cmd: Cmd) -> Result<i32, AnyError> {
    match cmd {
        Cmd::Decide {
            path,
            p,
            ordering,
            verify,
            instrument,
        } => cmd_decide(&path, p, ordering.as_deref(), verify, instrument),
        Cmd::Value {
            path,
            json,
            csv,
            instrument,
        } => cmd_value(&path, json, csv.as_deref(), instrument),
        Cmd::Verify {
            path,
            ordering,
            p,
            r,
        } => cmd_verify(&path, &ordering, p, r),
        Cmd::Batch {
            dir,
            csv,
            timeout,
            threads,
            overwrite,
            instrument,
        } => cmd_batch(&dir, &csv, timeout, threads.max(1), overwrite, instrument),
    }
}

/// decide() with optional per-query tracing and invariant checking.
fn run_decide(g: &Graph, p: usize, instrument: bool) -> Result<Decision, AnyError> {
    if !instrument {
        return Ok(driver::decide(g, p));
    }
    let start = Instant::now();
    if (g.m() as u128) > (p as u128) * (g.n() as u128) {
        let stats = RunStats {
            elapsed: start.elapsed(),
            ..RunStats::default()
        };
        return Ok(Decision {
            answer: Answer::No,
            stats,
        });
    }
    let mut oracle = Oracle::new(g, p);
    let mut emissions: Vec<Vertex> = Vec::with_capacity(g.n());
    let mut answer = Answer::No;
    loop {
        if oracle.remaining() == 0 {
            emissions.reverse();
            answer = Answer::Yes(emissions);
            break;
        }
        match oracle.query() {
            Some(v) => {
                let rec = oracle.stats().last_record();
                eprintln!(
                    "trace: v={v} cand={} simple={} stage1={} stage2={} aug={}",
                    rec.cand_size,
                    rec.simple_updates,
                    rec.stage1_calls,
                    rec.stage2_calls,
                    rec.augmentations
                );
                let violations = checks::check_structural(&oracle);
                if !violations.is_empty() {
                    for viol in &violations {
                        eprintln!("invariant violation: {viol}");
                    }
                    return Err(format!(
                        "{} invariant violations after emitting {v}",
                        violations.len()
                    )
                    .into());
                }
                emissions.push(v);
            }
            None => break,
        }
    }
    let os = oracle.stats();
    let stats = RunStats {
        queries: os.queries,
        simple_updates: os.simple_updates,
        stage1_calls: os.stage1_calls,
        stage2_calls: os.stage2_calls,
        augmentations: os.augmentations,
        max_escalations_per_vertex: os.max_escalations_per_vertex(),
        max_subnet_vertices: os.max_subnet_vertices,
        elapsed: start.elapsed(),
        peak_mem_bytes: driver::peak_rss_bytes(),
    };
    Ok(Decision { answer, stats })
}

fn cmd_decide(
    path: &Path,
    p: usize,
    ordering_out: Option<&Path>,
    verify: bool,
    instrument: bool,
) -> Result<i32, AnyError> {
    let loaded = load_edge_list_path(path)?;
    let decision = run_decide(&loaded.graph, p, instrument)?;
    match &decision.answer {
        Answer::Yes(ordering) => {
            println!("YES");
            if let Some(out) = ordering_out {
                let mut f = std::fs::File::create(out)?;
                for &v in ordering {
                    writeln!(f, "{}", loaded.labels[v as usize])?;
                }
            }
            if verify {
                let value = verify_ordering(&loaded.graph, ordering, 3)?;
                if value > p {
                    return Err(format!("witness ordering has value {value} > {p}").into());
                }
                eprintln!("verified: ordering value {value} <= {p}");
            }
            Ok(0)
        }
        Answer::No => {
            println!("NO");
            Ok(1)
        }
    }
}

#[derive(Serialize)]
struct RunRecord {
    network: String,
    n: usize,
    m: usize,
    degeneracy: usize,
    adm3: usize,
    time_ms: u64,
    peak_mem_bytes: u64,
    status: String,
}

const CSV_HEADER: &str = "network,n,m,degeneracy,adm3,time_ms,peak_mem_bytes,status";

impl RunRecord {
    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            csv_field(&self.network),
            self.n,
            self.m,
            self.degeneracy,
            self.adm3,
            self.time_ms,
            self.peak_mem_bytes,
            csv_field(&self.status)
        )
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn network_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn measure(path: &Path, instrument: bool) -> Result<RunRecord, AnyError> {
    let loaded = load_edge_list_path(path)?;
    let g = &loaded.graph;
    let started = Instant::now();
    let (degen, _) = degeneracy(g);
    let value = if instrument {
        // Mirror compute_value's upward scan with checks enabled.
        let mut p = degen.max(g.m().div_ceil(g.n().max(1)));
        loop {
            if run_decide(g, p, true)?.is_yes() {
                break p;
            }
            p += 1;
        }
    } else {
        driver::compute_value(g).0
    };
    Ok(RunRecord {
        network: network_name(path),
        n: g.n(),
        m: g.m(),
        degeneracy: degen,
        adm3: value,
        time_ms: started.elapsed().as_millis() as u64,
        peak_mem_bytes: driver::peak_rss_bytes(),
        status: "ok".to_string(),
    })
}

/// Opens the CSV for appending, writing the full header first when the file
/// is new or empty.
fn open_csv(path: &Path, overwrite: bool) -> Result<std::fs::File, AnyError> {
    let fresh = overwrite
        || std::fs::metadata(path)
            .map(|m| m.len() == 0)
            .unwrap_or(true);
    let mut opts = std::fs::OpenOptions::new();
    opts.create(true).write(true);
    if fresh {
        opts.truncate(true);
    } else {
        opts.append(true);
    }
    let mut file = opts.open(path)?;
    if fresh {
        writeln!(file, "{CSV_HEADER}")?;
        file.flush()?;
    }
    Ok(file)
}

fn cmd_value(
    path: &Path,
    json: bool,
    csv: Option<&Path>,
    instrument: bool,
) -> Result<i32, AnyError> {
    let record = measure(path, instrument)?;
    if json {
        println!("{}", serde_json::to_string(&record)?);
    } else {
        println!(
            "adm3={} degeneracy={} n={} m={} time_ms={}",
            record.adm3, record.degeneracy, record.n, record.m, record.time_ms
        );
    }
    if let Some(csv_path) = csv {
        let mut file = open_csv(csv_path, false)?;
        writeln!(file, "{}", record.csv_row())?;
    }
    Ok(0)
}

fn cmd_verify(
    path: &Path,
    ordering_path: &Path,
    p: Option<usize>,
    r: u32,
) -> Result<i32, AnyError> {
    let loaded = load_edge_list_path(path)?;
    let by_label: std::collections::HashMap<&str, Vertex> = loaded
        .labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i as Vertex))
        .collect();
    let text = std::fs::read_to_string(ordering_path)?;
    let mut ordering: Vec<Vertex> = Vec::new();
    for token in text.split_whitespace() {
        match by_label.get(token) {
            Some(&v) => ordering.push(v),
            None => return Err(adm3::Error::UnknownLabel(token.to_string()).into()),
        }
    }
    let value = verify_ordering(&loaded.graph, &ordering, r)?;
    println!("value={value} r={r}");
    match p {
        Some(p) if value > p => Ok(1),
        _ => Ok(0),
    }
}

enum Outcome {
    Done(Box<RunRecord>),
    Failed(String),
    TimedOut,
}

fn process_with_timeout(path: PathBuf, timeout: Option<Duration>, instrument: bool) -> Outcome {
    match timeout {
        None => match measure(&path, instrument) {
            Ok(rec) => Outcome::Done(Box::new(rec)),
            Err(e) => Outcome::Failed(e.to_string()),
        },
        Some(limit) if limit.is_zero() => Outcome::TimedOut,
        Some(limit) => {
            let (tx, rx) = std::sync::mpsc::channel();
            // The computation keeps running past the deadline; it is
            // abandoned and its eventual result discarded.
            std::thread::spawn(move || {
                let outcome = match measure(&path, instrument) {
                    Ok(rec) => Outcome::Done(Box::new(rec)),
                    Err(e) => Outcome::Failed(e.to_string()),
                };
                let _ = tx.send(outcome);
            });
            match rx.recv_timeout(limit) {
                Ok(outcome) => outcome,
                Err(_) => Outcome::TimedOut,
            }
        }
    }
}

fn cmd_batch(
    dir: &Path,
    csv: &Path,
    timeout_secs: Option<u64>,
    threads: usize,
    overwrite: bool,
    instrument: bool,
) -> Result<i32, AnyError> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    // Don't feed the output CSV back into the run when it lives in `dir`.
    if let Ok(csv_abs) = csv.canonicalize() {
        files.retain(|p| p.canonicalize().map(|q| q != csv_abs).unwrap_or(true));
    }

    let file = open_csv(csv, overwrite)?;
    let timeout = timeout_secs.map(Duration::from_secs);

    struct Sink {
        file: std::fs::File,
        next: usize,
        pending: BTreeMap<usize, String>,
    }
    impl Sink {
        /// Rows are flushed in input order regardless of completion order.
        fn submit(&mut self, idx: usize, row: String) -> std::io::Result<()> {
            self.pending.insert(idx, row);
            while let Some(row) = self.pending.remove(&self.next) {
                writeln!(self.file, "{row}")?;
                self.file.flush()?;
                self.next += 1;
            }
            Ok(())
        }
    }

    let sink = Mutex::new(Sink {
        file,
        next: 0,
        pending: BTreeMap::new(),
    });
    let cursor = AtomicUsize::new(0);
    let io_error: Mutex<Option<std::io::Error>> = Mutex::new(None);

    std::thread::scope(|scope| {
        for _ in 0..threads.min(files.len().max(1)) {
            scope.spawn(|| loop {
                let idx = cursor.fetch_add(1, Ordering::SeqCst);
                if idx >= files.len() {
                    break;
                }
                let path = files[idx].clone();
                let name = network_name(&path);
                let row = match process_with_timeout(path, timeout, instrument) {
                    Outcome::Done(rec) => rec.csv_row(),
                    Outcome::Failed(e) => {
                        format!(
                            "{},,,,,,,{}",
                            csv_field(&name),
                            csv_field(&format!("error: {e}"))
                        )
                    }
                    Outcome::TimedOut => format!("{},,,,,,,timeout", csv_field(&name)),
                };
                let mut sink = sink.lock().unwrap();
                if let Err(e) = sink.submit(idx, row) {
                    io_error.lock().unwrap().get_or_insert(e);
                    break;
                }
            });
        }
    });

    if let Some(e) = io_error.into_inner().unwrap() {
        return Err(e.into());
    }
    eprintln!("processed {} files -> {}", files.len(), csv.display());
    Ok(0)
}
