//! Worker pool over input lines with a reorder buffer, so output records
//! appear in input order under any thread count.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::process::ExitCode;

use crossbeam_channel::{bounded, Sender};

/// Runs `job` on every non-empty input line. `job` returns the record to
/// print and whether it is an error record. Exit code 0 when every line was
/// clean, 2 when any line-level error occurred.
pub fn run(files: &[String], threads: usize, job: impl Fn(&str) -> (String, bool) + Sync) -> ExitCode {
    let threads = threads.max(1);
    let mut any_error = false;

    std::thread::scope(|scope| {
        let (line_tx, line_rx) = bounded::<(usize, String)>(4 * threads);
        let (out_tx, out_rx) = bounded::<(usize, String, bool)>(4 * threads);

        for _ in 0..threads {
            let rx = line_rx.clone();
            let tx = out_tx.clone();
            let job = &job;
            scope.spawn(move || {
                for (idx, line) in rx.iter() {
                    let (record, is_err) = job(&line);
                    if tx.send((idx, record, is_err)).is_err() {
                        return;
                    }
                }
            });
        }
        drop(line_rx);
        drop(out_tx);

        let emitter = scope.spawn(move || {
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            let mut pending: BTreeMap<usize, (String, bool)> = BTreeMap::new();
            let mut next = 0usize;
            let mut saw_error = false;
            for (idx, record, is_err) in out_rx.iter() {
                pending.insert(idx, (record, is_err));
                while let Some((record, is_err)) = pending.remove(&next) {
                    saw_error |= is_err;
                    let _ = writeln!(out, "{record}");
                    next += 1;
                }
            }
            for (_, (record, is_err)) in pending {
                saw_error |= is_err;
                let _ = writeln!(out, "{record}");
            }
            saw_error
        });

        feed_lines(files, &line_tx);
        drop(line_tx);
        any_error = emitter.join().expect("emitter thread");
    });

    if any_error {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn feed_lines(files: &[String], tx: &Sender<(usize, String)>) {
    let mut idx = 0usize;
    let mut send_reader = |reader: &mut dyn BufRead| {
        for line in reader.lines() {
            let Ok(line) = line else { break };
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if tx.send((idx, trimmed.to_string())).is_err() {
                return;
            }
            idx += 1;
        }
    };
    if files.is_empty() {
        let stdin = std::io::stdin();
        send_reader(&mut stdin.lock());
    } else {
        for path in files {
            match std::fs::File::open(path) {
                Ok(f) => send_reader(&mut std::io::BufReader::new(f)),
                Err(e) => {
                    eprintln!("error: cannot open {path}: {e}");
                    std::process::exit(1);
                }
            }
        }
    }
}
