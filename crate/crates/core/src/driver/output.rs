//! CSV and text writers.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use super::converge::{ConvergenceRow, WeightStudyLevel};
use super::run::RunReport;
use super::stats::{LimitEvent, LimiterStats};

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |r| format!("{r:.6}"))
}

pub fn write_error_table<W: Write>(rows: &[ConvergenceRow], mut w: W) -> io::Result<()> {
    writeln!(w, "N,l1,rate_l1,linf,rate_linf")?;
    for r in rows {
        writeln!(w, "{},{:.6e},{},{:.6e},{}", r.cells, r.l1, opt(r.rate_l1), r.linf, opt(r.rate_linf))?;
    }
    Ok(())
}

pub fn write_weight_study<W: Write>(rows: &[WeightStudyLevel], mut w: W) -> io::Result<()> {
    writeln!(w, "N,err,rate,err_hat,rate_hat")?;
    for r in rows {
        writeln!(w, "{},{:.6e},{},{:.6e},{}", r.cells, r.err, opt(r.rate), r.err_hat, opt(r.rate_hat))?;
    }
    Ok(())
}

pub fn write_events<W: Write>(events: &[LimitEvent], mut w: W) -> io::Result<()> {
    writeln!(w, "step,time,interface_index,loop")?;
    for e in events {
        writeln!(w, "{},{:.16e},{},{}", e.step, e.time, e.interface, e.pass)?;
    }
    Ok(())
}

pub fn write_stats<W: Write>(rows: &[(usize, LimiterStats)], mut w: W) -> io::Result<()> {
    writeln!(w, "N,max_limited_fluxes,pct_limited_steps")?;
    for (n, s) in rows {
        writeln!(w, "{},{},{:.4}", n, s.max_limited_fluxes, s.pct_limited_steps)?;
    }
    Ok(())
}

/// `key = value` summary of a run.
pub fn write_run_summary<W: Write>(rep: &RunReport, mut w: W) -> io::Result<()> {
    let stats = rep.stats();
    writeln!(w, "problem = {}", rep.spec.id)?;
    writeln!(w, "scheme = {}", rep.options.scheme)?;
    writeln!(w, "cells = {}", rep.grid.cells())?;
    writeln!(w, "dt_over_h = {}", rep.spec.dt_over_h)?;
    writeln!(w, "final_time = {}", rep.spec.final_time)?;
    writeln!(w, "time_reached = {:.16e}", rep.time)?;
    writeln!(w, "steps = {}", rep.steps.len())?;
    writeln!(w, "newton_iterations = {}", rep.newton_iterations())?;
    writeln!(w, "max_limited_fluxes = {}", stats.max_limited_fluxes)?;
    writeln!(w, "pct_limited_steps = {:.4}", stats.pct_limited_steps)?;
    writeln!(w, "loop_cap_hits = {}", rep.steps.iter().filter(|s| s.hit_max_loops).count())?;
    writeln!(w, "wall_time_s = {:.3}", rep.wall_time.as_secs_f64())?;
    match &rep.blowup {
        Some(b) => {
            writeln!(w, "blowup = true")?;
            writeln!(w, "blowup_time = {:.16e}", b.time)?;
            writeln!(w, "blowup_reason = {}", b.reason)?;
        }
        None => writeln!(w, "blowup = false")?,
    }
    Ok(())
}

/// Creates `path` and hands a buffered writer to `f`.
pub fn to_file<F>(path: &Path, f: F) -> io::Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> io::Result<()>,
{
    let mut w = BufWriter::new(File::create(path)?);
    f(&mut w)?;
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_headers() {
        let rows = [
            ConvergenceRow {
                cells: 40,
                l1: 1e-3,
                rate_l1: None,
                linf: 2e-3,
                rate_linf: None,
            },
            ConvergenceRow {
                cells: 80,
                l1: 1.25e-4,
                rate_l1: Some(3.0),
                linf: 2.5e-4,
                rate_linf: Some(3.0),
            },
        ];
        let mut buf = Vec::new();
        write_error_table(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "N,l1,rate_l1,linf,rate_linf");
        assert_eq!(lines[1], "40,1.000000e-3,,2.000000e-3,");
        assert_eq!(lines[2], "80,1.250000e-4,3.000000,2.500000e-4,3.000000");

        let mut buf = Vec::new();
        write_events(&[LimitEvent { step: 2, time: 0.5, interface: 7, pass: 1 }], &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("step,time,interface_index,loop\n2,"));
    }
}
