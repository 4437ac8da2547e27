use std::io::{BufRead, BufReader, Write};
use std::process::{Command, Stdio};

use crate::dataset::{Clustering, Dataset};
use crate::error::{Error, Result};

/// Run `command` through `sh -c`, stream the dataset to its standard input
/// as header-less CSV and read one integer label per line back. Negative
/// labels mean noise.
pub fn run_external(command: &str, x: &Dataset) -> Result<Clustering> {
    let mut child = Command::new("sh")
        .arg("-c")
        .arg(command)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| Error::External(format!("cannot start '{command}': {e}")))?;

    let mut stdin = child.stdin.take().expect("stdin is piped");
    let payload = to_csv(x);
    // write from another thread so a child that answers early cannot deadlock us
    let writer = std::thread::spawn(move || {
        // a child that exits without reading gives a broken pipe; its exit
        // status and output are what get reported
        let _ = stdin.write_all(payload.as_bytes());
    });
    let stdout = child.stdout.take().expect("stdout is piped");
    let mut raw = Vec::with_capacity(x.len());
    let mut parse_error = None;
    for (lineno, line) in BufReader::new(stdout).lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() && parse_error.is_none() {
            continue;
        }
        match t.parse::<i64>() {
            Ok(v) => raw.push(v),
            Err(_) => {
                if parse_error.is_none() {
                    parse_error = Some(format!("line {}: '{t}' is not an integer label", lineno + 1));
                }
            }
        }
    }
    let output = child.wait_with_output()?;
    let _ = writer.join();
    if !output.status.success() {
        let stderr = String::from_utf8_lossy(&output.stderr);
        let detail = stderr.lines().next().unwrap_or("").trim();
        return Err(Error::External(format!(
            "'{command}' exited with {}{}",
            output.status,
            if detail.is_empty() {
                String::new()
            } else {
                format!(": {detail}")
            }
        )));
    }
    if let Some(msg) = parse_error {
        return Err(Error::External(msg));
    }
    if raw.len() != x.len() {
        return Err(Error::External(format!(
            "expected {} labels, got {}",
            x.len(),
            raw.len()
        )));
    }
    Ok(Clustering::from_raw_labels(&raw))
}

fn to_csv(x: &Dataset) -> String {
    let mut s = String::with_capacity(x.len() * x.dim() * 12);
    for row in x.points() {
        for (j, v) in row.iter().enumerate() {
            if j > 0 {
                s.push(',');
            }
            // shortest representation that parses back exactly
            s.push_str(&format!("{v:?}"));
        }
        s.push('\n');
    }
    s
}

#[cfg(all(test, unix))]
mod tests {
    use super::*;

    fn five() -> Dataset {
        Dataset::from_flat(vec![0.0, 1.0, 2.0, 3.0, 4.0], 1).unwrap()
    }

    #[test]
    fn zeros_make_one_cluster() {
        let c = run_external("while read l; do echo 0; done", &five()).unwrap();
        assert_eq!(c.n_clusters(), 1);
        assert_eq!(c.len(), 5);
    }

    #[test]
    fn short_output_is_reported() {
        let err = run_external("head -n 4 | sed 's/.*/1/'", &five()).unwrap_err();
        assert!(err.to_string().contains("expected 5 labels"), "{err}");
    }

    #[test]
    fn all_noise_and_bad_lines() {
        let c = run_external("while read l; do echo -1; done", &five()).unwrap();
        assert!(c.is_all_noise());
        let err = run_external("cat", &Dataset::from_flat(vec![0.5; 3], 1).unwrap()).unwrap_err();
        assert!(err.to_string().contains("not an integer"), "{err}");
        let err = run_external("exit 3", &five()).unwrap_err();
        assert!(err.to_string().contains("exited"), "{err}");
    }

    #[test]
    fn child_sees_exact_values() {
        let x = Dataset::from_flat(vec![0.1, 1e-300, -2.5, 7.0], 2).unwrap();
        let c = run_external(
            "awk -F, '{ print ($1 == 0.1 && NR == 1) || ($1 == -2.5 && $2 == 7) ? 1 : 0 }'",
            &x,
        )
        .unwrap();
        assert_eq!(c.labels(), &[0, 0]);
    }
}
