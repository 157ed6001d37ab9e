//! Distance matrices as CSV (`inf` for infinity) or JSON
//! (`{"kappa": k, "D": [[...]]}`), and sampled signals as CSV rows.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::ext_real::ExtReal;
use crate::spaces::GeneralizedBMetricSpace;

fn reader<R: Read>(r: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(r)
}

/// One row per point.
pub fn read_distance_csv<R: Read>(r: R) -> Result<Vec<Vec<ExtReal>>> {
    let mut rows = Vec::new();
    for (line, record) in reader(r).records().enumerate() {
        let record = record?;
        let row = record
            .iter()
            .enumerate()
            .map(|(col, field)| {
                field
                    .parse::<ExtReal>()
                    .map_err(|e| invalid(format!("row {}, column {}: {e}", line + 1, col + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn write_distance_csv<W: Write>(w: W, matrix: &[Vec<ExtReal>]) -> Result<()> {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    for row in matrix {
        out.write_record(row.iter().map(ToString::to_string))?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceJson {
    pub kappa: f64,
    #[serde(rename = "D")]
    pub d: Vec<Vec<ExtReal>>,
}

impl DistanceJson {
    pub fn into_space(self) -> Result<GeneralizedBMetricSpace> {
        GeneralizedBMetricSpace::new(self.d, self.kappa)
    }
}

pub fn read_distance_json<R: Read>(r: R) -> Result<DistanceJson> {
    Ok(serde_json::from_reader(r)?)
}

pub fn write_distance_json<W: Write>(w: W, kappa: f64, matrix: &[Vec<ExtReal>]) -> Result<()> {
    let doc = DistanceJson { kappa, d: matrix.to_vec() };
    serde_json::to_writer(w, &doc)?;
    Ok(())
}

/// One element per row, one sample per column.
pub fn read_signals_csv<R: Read>(r: R) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::new();
    for (line, record) in reader(r).records().enumerate() {
        let record = record?;
        let row = record
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| invalid(format!("row {}: bad sample {f:?}", line + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn write_signals_csv<W: Write>(w: W, signals: &[Vec<f64>]) -> Result<()> {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    for row in signals {
        out.write_record(row.iter().map(|v| format!("{v:?}")))?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn csv_with_inf_tokens() {
        let text = "0, 1, inf\n1, 0, inf\ninf, inf, 0\n";
        let d = read_distance_csv(text.as_bytes()).unwrap();
        assert_eq!(d[0][2], ExtReal::INFINITY);
        assert_eq!(d[1][0].value(), 1.0);
        let mut buf = Vec::new();
        write_distance_csv(&mut buf, &d).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "0.0,1.0,inf\n1.0,0.0,inf\ninf,inf,0.0\n");
    }

    #[test]
    fn csv_errors_name_the_cell() {
        let err = read_distance_csv("0,1\n1,-2\n".as_bytes()).unwrap_err();
        assert!(err.to_string().contains("row 2, column 2"), "{err}");
        assert!(read_distance_csv("0,x\n".as_bytes()).is_err());
    }

    #[test]
    fn json_format() {
        let doc = read_distance_json(r#"{"kappa": 8, "D": [[0, 1, "inf"], [1, 0, "inf"], ["inf", "inf", 0]]}"#.as_bytes())
            .unwrap();
        assert_eq!(doc.kappa, 8.0);
        let space = doc.into_space().unwrap();
        assert!(space.get(0, 2).is_infinite());
    }

    proptest! {
        #[test]
        fn distance_csv_round_trips(rows in proptest::collection::vec(
            proptest::collection::vec(prop_oneof![9 => (0.0f64..1e9).prop_map(ExtReal::finite), 1 => Just(ExtReal::INFINITY)], 4), 1..6)) {
            let mut buf = Vec::new();
            write_distance_csv(&mut buf, &rows).unwrap();
            prop_assert_eq!(read_distance_csv(buf.as_slice()).unwrap(), rows);
        }

        #[test]
        fn signal_csv_round_trips(rows in proptest::collection::vec(proptest::collection::vec(-1e6f64..1e6, 8), 1..5)) {
            let mut buf = Vec::new();
            write_signals_csv(&mut buf, &rows).unwrap();
            prop_assert_eq!(read_signals_csv(buf.as_slice()).unwrap(), rows);
        }
    }
}
