use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bohr::{BohrParams, CoefficientClass, FunctionalId};
use crate::error::{Error, Result};
use crate::extremals::{self, ExtremalSpec, Family};
use crate::series::QSeries;

/// What a sweep evaluates.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepSource {
    /// A fixed series; with a class, tails are bounded for that class.
    Series(QSeries, Option<CoefficientClass>),
    /// A truncated extremal member, tails bounded by its paired class.
    Extremal(ExtremalSpec),
    /// The supremum of the functional over a coefficient class.
    Class(CoefficientClass),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub r: f64,
    pub value: f64,
    pub tail: f64,
    /// `1 − value`.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub functional: FunctionalId,
    pub rows: Vec<SweepRow>,
}

fn paired_class(family: Family) -> CoefficientClass {
    match family {
        Family::StarlikeKoebe => CoefficientClass::Starlike,
        Family::GeomCayley => CoefficientClass::DerivStarlike,
        Family::MobiusLike => CoefficientClass::Bounded,
        Family::HalfSpaceMap => CoefficientClass::HalfSpace,
    }
}

/// Tabulates `functional` over `r_grid`, which must be strictly increasing
/// inside `[0, 1)`.
pub fn sweep(
    source: &SweepSource,
    functional: FunctionalId,
    params: &BohrParams,
    r_grid: &[f64],
) -> Result<SweepTable> {
    for (i, &r) in r_grid.iter().enumerate() {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::InvalidGrid(format!("r = {r} outside [0, 1)")));
        }
        if i > 0 && !(r > r_grid[i - 1]) {
            return Err(Error::InvalidGrid(format!(
                "grid not strictly increasing at index {i}"
            )));
        }
    }
    let (series, class) = match source {
        SweepSource::Series(f, class) => (Some(f.clone()), *class),
        SweepSource::Extremal(spec) => (
            Some(extremals::build(spec)?),
            Some(paired_class(spec.family)),
        ),
        SweepSource::Class(_) => (None, None),
    };
    let rows: Result<Vec<SweepRow>> = r_grid
        .par_iter()
        .map(|&r| {
            let (value, tail) = match (source, &series, class) {
                (SweepSource::Class(c), _, _) => (functional.class_supremum(*c, r, params)?.0, 0.0),
                (_, Some(f), Some(c)) => {
                    let (v, t) = functional.evaluate_with_tail(f, r, params, c)?;
                    (v, t.value)
                }
                (_, Some(f), None) => (functional.evaluate(f, r, params)?, 0.0),
                (_, None, _) => unreachable!("series built above"),
            };
            Ok(SweepRow {
                r,
                value,
                tail,
                margin: 1.0 - value,
            })
        })
        .collect();
    Ok(SweepTable {
        functional,
        rows: rows?,
    })
}

impl SweepTable {
    /// CSV with header `r,value,tail,margin`, 17 significant digits.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["r", "value", "tail", "margin"])?;
        for row in &self.rows {
            w.write_record([row.r, row.value, row.tail, row.margin].map(|x| format!("{x:.16e}")))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}
