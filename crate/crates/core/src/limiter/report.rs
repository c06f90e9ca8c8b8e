//! Per-step diagnostics of the entropy-based limiter.

use std::io::{self, Write};

use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EntropyReport<T> {
    pub s1: Vec<T>,
    /// Production of the unlimited update.
    pub s3: Vec<T>,
    /// Production of the returned update.
    pub s3_final: Vec<T>,
    pub marked: Vec<bool>,
    /// Loop (1-based) in which each cell was first marked.
    pub mark_loop: Vec<Option<usize>>,
    pub loop_count: usize,
    /// `(interface, loop)` pairs in order of limiting.
    pub limited_interfaces: Vec<(usize, usize)>,
    pub hit_max_loops: bool,
}

impl<T: Real> EntropyReport<T> {
    pub fn marked_count(&self) -> usize {
        self.marked.iter().filter(|&&m| m).count()
    }

    /// Columns `cell,s1,s3,marked,first_limited_loop`; never-marked cells print 0.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "cell,s1,s3,marked,first_limited_loop")?;
        for j in 0..self.s1.len() {
            writeln!(
                w,
                "{},{:.16e},{:.16e},{},{}",
                j,
                self.s1[j].to_f64_lossy(),
                self.s3[j].to_f64_lossy(),
                u8::from(self.marked[j]),
                self.mark_loop[j].unwrap_or(0)
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let r = EntropyReport {
            s1: vec![0.5, -1.0],
            s3: vec![0.25, 2.0],
            s3_final: vec![0.25, 0.0],
            marked: vec![false, true],
            mark_loop: vec![None, Some(1)],
            loop_count: 1,
            limited_interfaces: vec![(1, 1), (2, 1)],
            hit_max_loops: false,
        };
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "cell,s1,s3,marked,first_limited_loop");
        assert_eq!(lines[1], "0,5.0000000000000000e-1,2.5000000000000000e-1,0,0");
        assert!(lines[2].ends_with(",1,1"));
        assert_eq!(r.marked_count(), 1);
    }
}
