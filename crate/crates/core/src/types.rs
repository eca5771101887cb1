/// Matrix entry payload. Always finite once ingested.
pub type Value = f64;

/// A nonzero addressed in the local coordinates of its destination block.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Triple {
    pub lrow: usize,
    pub lcol: usize,
    pub val: Value,
}

impl Triple {
    pub fn new(lrow: usize, lcol: usize, val: Value) -> Self {
        Triple { lrow, lcol, val }
    }

    /// Column-major sort key.
    #[inline]
    pub fn key(&self) -> (usize, usize) {
        (self.lcol, self.lrow)
    }
}

/// Combination rule used when an assigned value lands on an existing nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AddOp {
    /// `existing + incoming`
    Sum,
    /// `incoming` (overwrite)
    SelectSecond,
    /// Any stored entry counts as true; the result is always `1.0`.
    LogicalOr,
}

impl std::str::FromStr for AddOp {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sum" => Ok(AddOp::Sum),
            "second" => Ok(AddOp::SelectSecond),
            "or" => Ok(AddOp::LogicalOr),
            other => Err(format!("unknown add operator `{other}` (expected sum, second or or)")),
        }
    }
}

#[inline]
pub fn apply_addop(op: AddOp, existing: Value, incoming: Value) -> Value {
    match op {
        AddOp::Sum => existing + incoming,
        AddOp::SelectSecond => incoming,
        AddOp::LogicalOr => 1.0,
    }
}
