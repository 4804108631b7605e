//! Machine-readable forms of test reports.

use super::{Model, OrderTestReport};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::orders::OrderKind;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::io::Write;

fn p0_parts(p0: &Rational) -> Result<(u64, u64)> {
    match (p0.numer().to_u64(), p0.denom().to_u64()) {
        (Some(num), Some(den)) => Ok((num, den)),
        _ => Err(Error::Serialize(format!("p0 = {p0} does not fit in 64-bit integers"))),
    }
}

/// Flat record of an [`OrderTestReport`], the JSON and CSV schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderTestRecord {
    pub order: OrderKind,
    pub n: usize,
    pub pairs: u64,
    pub successes: u64,
    pub p0_num: u64,
    pub p0_den: u64,
    pub p_value: f64,
}

impl OrderTestReport {
    pub fn record(&self) -> Result<OrderTestRecord> {
        let (p0_num, p0_den) = p0_parts(&self.p0)?;
        Ok(OrderTestRecord {
            order: self.order,
            n: self.group_size,
            pairs: self.pairs,
            successes: self.successes,
            p0_num,
            p0_den,
            p_value: self.p_value,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(&self.record()?).map_err(|e| Error::Serialize(e.to_string()))
    }
}

/// Writes reports as CSV with a header row.
pub fn write_order_csv<W: Write>(reports: &[OrderTestReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(r.record()?).map_err(|e| Error::Serialize(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// One (model, order) cell of the experiment summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub model: Model,
    pub order: OrderKind,
    pub mean_p_value: f64,
    pub std_p_value: f64,
    pub reps: usize,
    pub p0_num: u64,
    pub p0_den: u64,
}

impl Table1Row {
    pub(crate) fn new(model: Model, order: OrderKind, mean: f64, std: f64, reps: usize, p0: &Rational) -> Result<Self> {
        let (p0_num, p0_den) = p0_parts(p0)?;
        Ok(Table1Row { model, order, mean_p_value: mean, std_p_value: std, reps, p0_num, p0_den })
    }
}

pub fn write_table1_csv<W: Write>(rows: &[Table1Row], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Serialize(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
