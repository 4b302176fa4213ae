use std::fmt;

use chrono::{Datelike, NaiveDate};
use serde::{Deserialize, Serialize};

use super::KgError;

/// Granularity a date was stated at in its source.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Precision {
    Year,
    Month,
    Day,
}

/// Which end of an interval a coarse date is being resolved for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Start,
    End,
}

/// A day-precision calendar date plus the precision it was stated at.
///
/// Coarse dates resolve to the first day of their unit when used as a start
/// bound and to the last day when used as an end bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TimePoint {
    pub date: NaiveDate,
    pub precision: Precision,
}

impl TimePoint {
    pub fn day(date: NaiveDate) -> Self {
        TimePoint { date, precision: Precision::Day }
    }

    pub fn ymd(year: i32, month: u32, day: u32) -> Result<Self, KgError> {
        NaiveDate::from_ymd_opt(year, month, day)
            .map(Self::day)
            .ok_or_else(|| KgError::InvalidDate(format!("{year:04}-{month:02}-{day:02}")))
    }

    pub fn year(year: i32, bound: Bound) -> Result<Self, KgError> {
        let (m, d) = match bound {
            Bound::Start => (1, 1),
            Bound::End => (12, 31),
        };
        let date = NaiveDate::from_ymd_opt(year, m, d)
            .ok_or_else(|| KgError::InvalidDate(format!("{year:04}")))?;
        Ok(TimePoint { date, precision: Precision::Year })
    }

    pub fn month(year: i32, month: u32, bound: Bound) -> Result<Self, KgError> {
        let bad = || KgError::InvalidDate(format!("{year:04}-{month:02}"));
        let first = NaiveDate::from_ymd_opt(year, month, 1).ok_or_else(bad)?;
        let date = match bound {
            Bound::Start => first,
            Bound::End => last_day_of_month(first),
        };
        Ok(TimePoint { date, precision: Precision::Month })
    }

    /// Parses `YYYY`, `YYYY-MM` or `YYYY-MM-DD` (optionally with a leading `-`).
    pub fn parse(text: &str, bound: Bound) -> Result<Self, KgError> {
        let bad = || KgError::InvalidDate(text.to_string());
        let (negative, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let parts: Vec<&str> = body.split('-').collect();
        if parts.is_empty() || parts.len() > 3 || parts[0].len() < 4 {
            return Err(bad());
        }
        if parts.iter().any(|p| p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit())) {
            return Err(bad());
        }
        let mut year: i32 = parts[0].parse().map_err(|_| bad())?;
        if negative {
            year = -year;
        }
        let num = |s: &str, len: usize| -> Result<u32, KgError> {
            if s.len() != len {
                return Err(bad());
            }
            s.parse().map_err(|_| bad())
        };
        match parts.len() {
            1 => Self::year(year, bound),
            2 => Self::month(year, num(parts[1], 2)?, bound),
            _ => Self::ymd(year, num(parts[1], 2)?, num(parts[2], 2)?).map_err(|_| bad()),
        }
    }

    /// True when the date sits on the first or last day of a month or year,
    /// or was only stated at month or year precision.
    pub fn is_unit_boundary(&self) -> bool {
        self.precision != Precision::Day
            || self.date.day() == 1
            || self.date == last_day_of_month(self.date)
    }
}

pub(crate) fn last_day_of_month(date: NaiveDate) -> NaiveDate {
    let (y, m) = if date.month() == 12 {
        (date.year() + 1, 1)
    } else {
        (date.year(), date.month() + 1)
    };
    NaiveDate::from_ymd_opt(y, m, 1)
        .and_then(|d| d.pred_opt())
        .expect("month arithmetic stays in range")
}

impl fmt::Display for TimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let y = self.date.year();
        let sign = if y < 0 { "-" } else { "" };
        let y = y.abs();
        match self.precision {
            Precision::Year => write!(f, "{sign}{y:04}"),
            Precision::Month => write!(f, "{sign}{y:04}-{:02}", self.date.month()),
            Precision::Day => write!(f, "{sign}{y:04}-{:02}-{:02}", self.date.month(), self.date.day()),
        }
    }
}

/// An interval with optional bounds; ordered when both are present.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TimeInterval {
    pub start: Option<TimePoint>,
    pub end: Option<TimePoint>,
}

impl TimeInterval {
    /// Builds an interval, rejecting reversed bounds.
    pub fn new(start: Option<TimePoint>, end: Option<TimePoint>) -> Result<Self, KgError> {
        if let (Some(s), Some(e)) = (start, end) {
            if s.date > e.date {
                return Err(KgError::OrderViolation { start: s, end: e });
            }
        }
        Ok(TimeInterval { start, end })
    }

    /// Like [`TimeInterval::new`], but a reversed end bound is dropped.
    pub fn lenient(start: Option<TimePoint>, end: Option<TimePoint>) -> Self {
        Self::new(start, end).unwrap_or(TimeInterval { start, end: None })
    }

    pub fn point(p: TimePoint) -> Self {
        TimeInterval { start: Some(p), end: Some(p) }
    }

    pub fn is_empty(&self) -> bool {
        self.start.is_none() && self.end.is_none()
    }

    pub fn start_date(&self) -> Option<NaiveDate> {
        self.start.map(|p| p.date)
    }

    pub fn end_date(&self) -> Option<NaiveDate> {
        self.end.map(|p| p.date)
    }

    /// Closed-interval overlap where a missing bound is unbounded. Empty
    /// intervals overlap nothing.
    pub fn overlaps(&self, other: &TimeInterval) -> bool {
        if self.is_empty() || other.is_empty() {
            return false;
        }
        let starts_before_other_ends = match (self.start_date(), other.end_date()) {
            (Some(s), Some(e)) => s <= e,
            _ => true,
        };
        let other_starts_before_self_ends = match (other.start_date(), self.end_date()) {
            (Some(s), Some(e)) => s <= e,
            _ => true,
        };
        starts_before_other_ends && other_starts_before_self_ends
    }
}

impl fmt::Display for TimeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Option<TimePoint>| p.map(|p| p.to_string()).unwrap_or_else(|| "∅".into());
        write!(f, "[{},{}]", show(&self.start), show(&self.end))
    }
}

/// Builds an interval from optional day-precision dates.
pub fn make_interval(start: Option<NaiveDate>, end: Option<NaiveDate>) -> Result<TimeInterval, KgError> {
    TimeInterval::new(start.map(TimePoint::day), end.map(TimePoint::day))
}
