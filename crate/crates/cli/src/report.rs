//! Tabular output in csv, tsv or aligned text.

use crate::config::Format;

pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Csv | Format::Tsv => {
                let sep = if format == Format::Csv { "," } else { "\t" };
                for row in std::iter::once(&self.header).chain(&self.rows) {
                    out.push_str(&row.join(sep));
                    out.push('\n');
                }
            }
            Format::Pretty => {
                let widths: Vec<usize> = (0..self.header.len())
                    .map(|c| {
                        std::iter::once(&self.header).chain(&self.rows).map(|r| r[c].chars().count()).max().unwrap_or(0)
                    })
                    .collect();
                for row in std::iter::once(&self.header).chain(&self.rows) {
                    let cells: Vec<String> = row.iter().zip(&widths).map(|(v, w)| format!("{v:>w$}")).collect();
                    out.push_str(cells.join("  ").trim_end());
                    out.push('\n');
                }
            }
        }
        out
    }
}

/// `v` with 17 significant digits, positional when that stays short.
pub fn sig17(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    if v == 0.0 {
        return "0.0000000000000000".into();
    }
    let exp = v.abs().log10().floor() as i32;
    if (-4..16).contains(&exp) {
        let decimals = (16 - exp) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.16e}")
    }
}

/// Short scientific form for errors and tolerances.
pub fn sci(v: f64) -> String {
    format!("{v:.2e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(sig17(-49.45778872808258), "-49.457788728082583");
        assert_eq!(sig17(1.0), "1.0000000000000000");
        assert_eq!(sig17(3060.9234915114206), "3060.9234915114207");
        assert_eq!(sig17(0.0), "0.0000000000000000");
        assert_eq!(sig17(1e-7), "9.9999999999999995e-8");
        for v in [-49.45778872808258, 117.94630766206876, 1e20, 1.234e-3] {
            assert_eq!(sig17(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn formats() {
        let mut t = Table::new(&["k", "lambda"]);
        t.push(vec!["0".into(), "1.5".into()]);
        t.push(vec!["10".into(), "-2".into()]);
        assert_eq!(t.render(Format::Csv), "k,lambda\n0,1.5\n10,-2\n");
        assert_eq!(t.render(Format::Tsv), "k\tlambda\n0\t1.5\n10\t-2\n");
        assert_eq!(t.render(Format::Pretty), " k  lambda\n 0     1.5\n10      -2\n");
    }
}
