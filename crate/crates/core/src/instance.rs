//! Problem instances: the classical TTP data, per-city time windows and
//! the text formats both are stored in.
//!
//! Cities and items are zero-based inside the crate (city `0` is the depot).
//! Every file format is one-based, matching the CEC-2014 benchmark files.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::Scalar;

/// Instances above this size compute distances on demand instead of caching
/// the full matrix.
const DISTANCE_CACHE_LIMIT: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InstanceError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing header `{0}`")]
    MissingKey(&'static str),
    #[error("invalid instance: {0}")]
    Validation(String),
    #[error("window count {got} does not match city count {expected}")]
    WindowLength { expected: usize, got: usize },
    #[error("inverted window at city {city}: lower {lower} > upper {upper}")]
    InvertedWindow { city: usize, lower: f64, upper: f64 },
}

fn parse_err(line: usize, message: impl Into<String>) -> InstanceError {
    InstanceError::Parse { line, message: message.into() }
}

/// Rounding rule applied to Euclidean distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EdgeWeightKind {
    /// Ceiling of the Euclidean distance (the benchmark suite's convention).
    Ceil2d,
    /// Unrounded Euclidean distance.
    Euc2d,
}

impl EdgeWeightKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeWeightKind::Ceil2d => "CEIL_2D",
            EdgeWeightKind::Euc2d => "EUC_2D",
        }
    }
}

impl FromStr for EdgeWeightKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "CEIL_2D" => Ok(EdgeWeightKind::Ceil2d),
            "EUC_2D" => Ok(EdgeWeightKind::Euc2d),
            other => Err(format!("unsupported EDGE_WEIGHT_TYPE `{other}`")),
        }
    }
}

/// A stealable item. `city` is a zero-based city index and is never the depot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Item<S> {
    pub profit: S,
    pub weight: S,
    pub city: usize,
}

/// Classical traveling thief instance without time windows.
#[derive(Debug, Clone, PartialEq)]
pub struct TtpInstance<S> {
    name: String,
    knapsack_type: String,
    coords: Vec<(S, S)>,
    capacity: S,
    v_min: S,
    v_max: S,
    rent: S,
    items: Vec<Item<S>>,
    edge_weight_kind: EdgeWeightKind,
    items_by_city: Vec<Vec<usize>>,
    distances: Option<Vec<S>>,
}

/// Raw fields of a [`TtpInstance`], validated by [`TtpInstance::new`].
#[derive(Debug, Clone)]
pub struct TtpData<S> {
    pub name: String,
    pub knapsack_type: String,
    pub coords: Vec<(S, S)>,
    pub capacity: S,
    pub v_min: S,
    pub v_max: S,
    pub rent: S,
    pub items: Vec<Item<S>>,
    pub edge_weight_kind: EdgeWeightKind,
}

impl<S: Scalar> TtpInstance<S> {
    pub fn new(data: TtpData<S>) -> Result<Self, InstanceError> {
        let TtpData { name, knapsack_type, coords, capacity, v_min, v_max, rent, items, edge_weight_kind } =
            data;
        let n = coords.len();
        let invalid = |m: String| Err(InstanceError::Validation(m));
        if n < 2 {
            return invalid(format!("need at least 2 cities, got {n}"));
        }
        if items.is_empty() {
            return invalid("need at least 1 item".into());
        }
        if !(v_min > S::zero() && v_min < v_max) {
            return invalid(format!("speeds must satisfy 0 < v_min < v_max (got {v_min}, {v_max})"));
        }
        if !(capacity > S::zero()) || !capacity.is_finite() {
            return invalid(format!("capacity must be positive (got {capacity})"));
        }
        if !(rent >= S::zero()) || !rent.is_finite() {
            return invalid(format!("renting ratio must be non-negative (got {rent})"));
        }
        if coords.iter().any(|&(x, y)| !x.is_finite() || !y.is_finite()) {
            return invalid("coordinates must be finite".into());
        }
        let mut items_by_city = vec![Vec::new(); n];
        for (j, item) in items.iter().enumerate() {
            if item.city == 0 || item.city >= n {
                return invalid(format!("item {} is assigned to city {}, expected 2..={n}", j + 1, item.city + 1));
            }
            if !(item.weight > S::zero()) || !item.weight.is_finite() {
                return invalid(format!("item {} has non-positive weight {}", j + 1, item.weight));
            }
            if !(item.profit >= S::zero()) || !item.profit.is_finite() {
                return invalid(format!("item {} has negative profit {}", j + 1, item.profit));
            }
            items_by_city[item.city].push(j);
        }
        let mut inst = TtpInstance {
            name,
            knapsack_type,
            coords,
            capacity,
            v_min,
            v_max,
            rent,
            items,
            edge_weight_kind,
            items_by_city,
            distances: None,
        };
        if n <= DISTANCE_CACHE_LIMIT {
            let mut matrix = vec![S::zero(); n * n];
            for i in 0..n {
                for j in (i + 1)..n {
                    let d = inst.raw_distance(i, j);
                    matrix[i * n + j] = d;
                    matrix[j * n + i] = d;
                }
            }
            inst.distances = Some(matrix);
        }
        Ok(inst)
    }

    fn raw_distance(&self, i: usize, j: usize) -> S {
        let (xi, yi) = self.coords[i];
        let (xj, yj) = self.coords[j];
        let (dx, dy) = (xi - xj, yi - yj);
        let d = (dx * dx + dy * dy).sqrt();
        match self.edge_weight_kind {
            EdgeWeightKind::Ceil2d => d.ceil(),
            EdgeWeightKind::Euc2d => d,
        }
    }

    /// Distance between two zero-based cities.
    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> S {
        match &self.distances {
            Some(m) => m[i * self.coords.len() + j],
            None => self.raw_distance(i, j),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn knapsack_type(&self) -> &str {
        &self.knapsack_type
    }
    pub fn num_cities(&self) -> usize {
        self.coords.len()
    }
    pub fn num_items(&self) -> usize {
        self.items.len()
    }
    pub fn coords(&self) -> &[(S, S)] {
        &self.coords
    }
    pub fn capacity(&self) -> S {
        self.capacity
    }
    pub fn v_min(&self) -> S {
        self.v_min
    }
    pub fn v_max(&self) -> S {
        self.v_max
    }
    pub fn rent(&self) -> S {
        self.rent
    }
    pub fn items(&self) -> &[Item<S>] {
        &self.items
    }
    pub fn item(&self, j: usize) -> &Item<S> {
        &self.items[j]
    }
    pub fn edge_weight_kind(&self) -> EdgeWeightKind {
        self.edge_weight_kind
    }
    /// Indices of the items stored at `city`.
    pub fn items_at(&self, city: usize) -> &[usize] {
        &self.items_by_city[city]
    }

    /// Speed loss per unit of carried weight, `(v_max - v_min) / W`.
    #[inline]
    pub fn speed_slope(&self) -> S {
        (self.v_max - self.v_min) / self.capacity
    }

    pub fn to_data(&self) -> TtpData<S> {
        TtpData {
            name: self.name.clone(),
            knapsack_type: self.knapsack_type.clone(),
            coords: self.coords.clone(),
            capacity: self.capacity,
            v_min: self.v_min,
            v_max: self.v_max,
            rent: self.rent,
            items: self.items.clone(),
            edge_weight_kind: self.edge_weight_kind,
        }
    }

    /// Parses a document in the CEC-2014 TTP layout.
    pub fn parse(text: &str) -> Result<Self, InstanceError> {
        parse_ttp(text)
    }

    /// Serializes in the CEC-2014 TTP layout.
    pub fn to_ttp_string(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        writeln!(w, "PROBLEM NAME: \t{}", self.name).unwrap();
        writeln!(w, "KNAPSACK DATA TYPE: \t{}", self.knapsack_type).unwrap();
        writeln!(w, "DIMENSION:\t{}", self.num_cities()).unwrap();
        writeln!(w, "NUMBER OF ITEMS: \t{}", self.num_items()).unwrap();
        writeln!(w, "CAPACITY OF KNAPSACK: \t{}", self.capacity).unwrap();
        writeln!(w, "MIN SPEED: \t{}", self.v_min).unwrap();
        writeln!(w, "MAX SPEED: \t{}", self.v_max).unwrap();
        writeln!(w, "RENTING RATIO: \t{}", self.rent).unwrap();
        writeln!(w, "EDGE_WEIGHT_TYPE:\t{}", self.edge_weight_kind.as_str()).unwrap();
        writeln!(w, "NODE_COORD_SECTION\t(INDEX, X, Y): ").unwrap();
        for (i, (x, y)) in self.coords.iter().enumerate() {
            writeln!(w, "{}\t{}\t{}", i + 1, x, y).unwrap();
        }
        writeln!(w, "ITEMS SECTION\t(INDEX, PROFIT, WEIGHT, ASSIGNED NODE NUMBER): ").unwrap();
        for (j, item) in self.items.iter().enumerate() {
            writeln!(w, "{}\t{}\t{}\t{}", j + 1, item.profit, item.weight, item.city + 1).unwrap();
        }
        out
    }
}

fn parse_num<S: Scalar>(line: usize, field: &str, raw: &str) -> Result<S, InstanceError> {
    raw.trim()
        .parse::<f64>()
        .map(S::lit)
        .map_err(|_| parse_err(line, format!("{field}: `{}` is not a number", raw.trim())))
}

fn parse_count(line: usize, field: &str, raw: &str) -> Result<usize, InstanceError> {
    raw.trim()
        .parse::<usize>()
        .map_err(|_| parse_err(line, format!("{field}: `{}` is not a count", raw.trim())))
}

#[derive(PartialEq)]
enum Section {
    Header,
    Coords,
    Items,
}

fn parse_ttp<S: Scalar>(text: &str) -> Result<TtpInstance<S>, InstanceError> {
    let mut name = None;
    let mut knapsack_type = None;
    let mut dimension = None;
    let mut num_items = None;
    let mut capacity = None;
    let mut v_min = None;
    let mut v_max = None;
    let mut rent = None;
    let mut kind = None;
    let mut coords: Vec<Option<(S, S)>> = Vec::new();
    let mut items: Vec<Option<Item<S>>> = Vec::new();
    let mut section = Section::Header;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line == "EOF" {
            continue;
        }
        if line.starts_with("NODE_COORD_SECTION") {
            let n = dimension.ok_or_else(|| parse_err(line_no, "NODE_COORD_SECTION before DIMENSION"))?;
            coords = vec![None; n];
            section = Section::Coords;
            continue;
        }
        if line.starts_with("ITEMS SECTION") {
            let m = num_items.ok_or_else(|| parse_err(line_no, "ITEMS SECTION before NUMBER OF ITEMS"))?;
            items = vec![None; m];
            section = Section::Items;
            continue;
        }
        match section {
            Section::Header => {
                let (key, value) = line
                    .split_once(':')
                    .ok_or_else(|| parse_err(line_no, format!("malformed header line `{line}`")))?;
                let value = value.trim();
                match key.trim() {
                    "PROBLEM NAME" => name = Some(value.to_string()),
                    "KNAPSACK DATA TYPE" => knapsack_type = Some(value.to_string()),
                    "DIMENSION" => dimension = Some(parse_count(line_no, "DIMENSION", value)?),
                    "NUMBER OF ITEMS" => num_items = Some(parse_count(line_no, "NUMBER OF ITEMS", value)?),
                    "CAPACITY OF KNAPSACK" => capacity = Some(parse_num(line_no, "CAPACITY OF KNAPSACK", value)?),
                    "MIN SPEED" => v_min = Some(parse_num(line_no, "MIN SPEED", value)?),
                    "MAX SPEED" => v_max = Some(parse_num(line_no, "MAX SPEED", value)?),
                    "RENTING RATIO" => rent = Some(parse_num(line_no, "RENTING RATIO", value)?),
                    "EDGE_WEIGHT_TYPE" => {
                        kind = Some(value.parse::<EdgeWeightKind>().map_err(|m| parse_err(line_no, m))?)
                    }
                    other => return Err(parse_err(line_no, format!("unknown header `{other}`"))),
                }
            }
            Section::Coords => {
                let fields: Vec<&str> = line.split_whitespace().collect();
                if fields.len() != 3 {
                    return Err(parse_err(line_no, "coordinate row must be `index x y`"));
                }
                let i = parse_count(line_no, "city index", fields[0])?;
                if i == 0 || i > coords.len() {
                    return Err(parse_err(line_no, format!("city index {i} out of range")));
                }
                if coords[i - 1].is_some() {
                    return Err(parse_err(line_no, format!("duplicate city {i}")));
                }
                coords[i - 1] = Some((parse_num(line_no, "x", fields[1])?, parse_num(line_no, "y", fields[2])?));
            }
            Section::Items => {
                let fields: Vec<&str> = line.split_whitespace().collect();
                if fields.len() != 4 {
                    return Err(parse_err(line_no, "item row must be `index profit weight city`"));
                }
                let j = parse_count(line_no, "item index", fields[0])?;
                if j == 0 || j > items.len() {
                    return Err(parse_err(line_no, format!("item index {j} out of range")));
                }
                if items[j - 1].is_some() {
                    return Err(parse_err(line_no, format!("duplicate item {j}")));
                }
                let city = parse_count(line_no, "assigned node", fields[3])?;
                if city == 0 {
                    return Err(parse_err(line_no, "assigned node must be one-based"));
                }
                items[j - 1] = Some(Item {
                    profit: parse_num(line_no, "profit", fields[1])?,
                    weight: parse_num(line_no, "weight", fields[2])?,
                    city: city - 1,
                });
            }
        }
    }

    let dimension = dimension.ok_or(InstanceError::MissingKey("DIMENSION"))?;
    let num_items = num_items.ok_or(InstanceError::MissingKey("NUMBER OF ITEMS"))?;
    let capacity = capacity.ok_or(InstanceError::MissingKey("CAPACITY OF KNAPSACK"))?;
    let v_min = v_min.ok_or(InstanceError::MissingKey("MIN SPEED"))?;
    let v_max = v_max.ok_or(InstanceError::MissingKey("MAX SPEED"))?;
    let rent = rent.ok_or(InstanceError::MissingKey("RENTING RATIO"))?;
    let kind = kind.ok_or(InstanceError::MissingKey("EDGE_WEIGHT_TYPE"))?;
    if coords.len() != dimension {
        return Err(InstanceError::MissingKey("NODE_COORD_SECTION"));
    }
    if items.len() != num_items {
        return Err(InstanceError::MissingKey("ITEMS SECTION"));
    }
    let coords = coords
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| InstanceError::Validation(format!("missing coordinates for city {}", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    let items = items
        .into_iter()
        .enumerate()
        .map(|(j, it)| it.ok_or_else(|| InstanceError::Validation(format!("missing item {}", j + 1))))
        .collect::<Result<Vec<_>, _>>()?;

    TtpInstance::new(TtpData {
        name: name.unwrap_or_default(),
        knapsack_type: knapsack_type.unwrap_or_default(),
        coords,
        capacity,
        v_min,
        v_max,
        rent,
        items,
        edge_weight_kind: kind,
    })
}

/// One city's admissible arrival interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Window<S> {
    pub lower: S,
    pub upper: S,
}

impl<S: Scalar> Window<S> {
    pub fn open() -> Self {
        Window { lower: S::zero(), upper: S::infinity() }
    }

    pub fn new(lower: S, upper: S) -> Self {
        Window { lower, upper }
    }

    pub fn contains(&self, t: S) -> bool {
        self.lower <= t && t <= self.upper
    }

    /// `true` when `inner` lies within `self`.
    pub fn contains_window(&self, inner: &Window<S>) -> bool {
        self.lower <= inner.lower && inner.upper <= self.upper
    }
}

/// Time windows for every city, tagged with the tightness they were
/// generated for. The depot's window is always `(0, inf)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeWindows<S> {
    pub bounds: Vec<Window<S>>,
    pub tightness: i64,
}

impl<S: Scalar> TimeWindows<S> {
    /// Windows `(0, inf)` everywhere, which reduces the problem to plain TTP.
    pub fn open(n: usize) -> Self {
        TimeWindows { bounds: vec![Window::open(); n], tightness: 0 }
    }

    pub fn len(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        for (i, w) in self.bounds.iter().enumerate() {
            if w.lower.is_nan() || w.upper.is_nan() || w.lower < S::zero() {
                return Err(InstanceError::Validation(format!("city {}: window bounds must be non-negative", i + 1)));
            }
            if w.lower > w.upper {
                return Err(InstanceError::InvertedWindow {
                    city: i + 1,
                    lower: w.lower.as_f64(),
                    upper: w.upper.as_f64(),
                });
            }
        }
        if let Some(depot) = self.bounds.first() {
            if *depot != Window::open() {
                return Err(InstanceError::Validation("depot window must be (0, inf)".into()));
            }
        }
        Ok(())
    }
}

/// How the reference tour of a window family was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum WindowType {
    /// Windows built around a supplied (TSP-optimal) tour.
    A,
    /// Windows built around a uniformly random tour.
    B,
}

impl fmt::Display for WindowType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WindowType::A => "A",
            WindowType::B => "B",
        })
    }
}

impl FromStr for WindowType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "A" | "a" => Ok(WindowType::A),
            "B" | "b" => Ok(WindowType::B),
            other => Err(format!("unknown window type `{other}`")),
        }
    }
}

/// Metadata line block of a window file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowHeader {
    pub base: String,
    pub tightness: i64,
    pub kind: WindowType,
    pub seed: u64,
}

const WINDOW_MAGIC: &str = "TTPTW-WINDOWS";

fn fmt_bound<S: Scalar>(x: S) -> String {
    if x.is_infinite() {
        "inf".to_string()
    } else {
        x.to_string()
    }
}

/// Writes the window file format: magic line, `BASE`, `L`, `TYPE`, `SEED`,
/// then one `city L U` row per city.
pub fn write_window_file<S: Scalar>(header: &WindowHeader, windows: &TimeWindows<S>) -> String {
    let mut out = String::new();
    writeln!(out, "{WINDOW_MAGIC}").unwrap();
    writeln!(out, "BASE: {}", header.base).unwrap();
    writeln!(out, "L: {}", header.tightness).unwrap();
    writeln!(out, "TYPE: {}", header.kind).unwrap();
    writeln!(out, "SEED: {}", header.seed).unwrap();
    for (i, w) in windows.bounds.iter().enumerate() {
        writeln!(out, "{} {} {}", i + 1, fmt_bound(w.lower), fmt_bound(w.upper)).unwrap();
    }
    out
}

pub fn parse_window_file<S: Scalar>(text: &str) -> Result<(WindowHeader, TimeWindows<S>), InstanceError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, l)) if l.trim() == WINDOW_MAGIC => {}
        Some((i, _)) => return Err(parse_err(i + 1, format!("expected `{WINDOW_MAGIC}`"))),
        None => return Err(parse_err(1, "empty window file")),
    }
    let mut base = None;
    let mut tightness = None;
    let mut kind = None;
    let mut seed = None;
    let mut rows: Vec<Window<S>> = Vec::new();
    for (idx, raw) in lines {
        let line_no = idx + 1;
        let line = raw.trim();
        if let Some((key, value)) = line.split_once(':') {
            let value = value.trim();
            match key.trim() {
                "BASE" => base = Some(value.to_string()),
                "L" => {
                    tightness =
                        Some(value.parse::<i64>().map_err(|_| parse_err(line_no, format!("bad tightness `{value}`")))?)
                }
                "TYPE" => kind = Some(value.parse::<WindowType>().map_err(|m| parse_err(line_no, m))?),
                "SEED" => seed = Some(value.parse::<u64>().map_err(|_| parse_err(line_no, format!("bad seed `{value}`")))?),
                other => return Err(parse_err(line_no, format!("unknown header `{other}`"))),
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(line_no, "window row must be `city L U`"));
        }
        let city = parse_count(line_no, "city", fields[0])?;
        if city != rows.len() + 1 {
            return Err(parse_err(line_no, format!("expected city {}, found {city}", rows.len() + 1)));
        }
        rows.push(Window::new(parse_num(line_no, "L", fields[1])?, parse_num(line_no, "U", fields[2])?));
    }
    let header = WindowHeader {
        base: base.ok_or(InstanceError::MissingKey("BASE"))?,
        tightness: tightness.ok_or(InstanceError::MissingKey("L"))?,
        kind: kind.ok_or(InstanceError::MissingKey("TYPE"))?,
        seed: seed.ok_or(InstanceError::MissingKey("SEED"))?,
    };
    let windows = TimeWindows { bounds: rows, tightness: header.tightness };
    windows.validate()?;
    Ok((header, windows))
}

/// A TTP instance together with the time windows it is solved under.
#[derive(Debug, Clone, PartialEq)]
pub struct TtptwInstance<S> {
    pub ttp: TtpInstance<S>,
    pub windows: TimeWindows<S>,
    pub alias: String,
}

impl<S: Scalar> TtptwInstance<S> {
    /// Same instance with every window open.
    pub fn open(ttp: TtpInstance<S>) -> Self {
        let n = ttp.num_cities();
        let alias = ttp.name().to_string();
        TtptwInstance { ttp, windows: TimeWindows::open(n), alias }
    }

    pub fn window(&self, city: usize) -> &Window<S> {
        &self.windows.bounds[city]
    }

    pub fn num_cities(&self) -> usize {
        self.ttp.num_cities()
    }

    pub fn num_items(&self) -> usize {
        self.ttp.num_items()
    }

    pub fn with_alias(mut self, alias: impl Into<String>) -> Self {
        self.alias = alias.into();
        self
    }
}

/// Combines a TTP instance with windows, re-checking the window invariants.
pub fn attach_windows<S: Scalar>(ttp: TtpInstance<S>, tw: TimeWindows<S>) -> Result<TtptwInstance<S>, InstanceError> {
    if tw.len() != ttp.num_cities() {
        return Err(InstanceError::WindowLength { expected: ttp.num_cities(), got: tw.len() });
    }
    tw.validate()?;
    let alias = ttp.name().to_string();
    Ok(TtptwInstance { ttp, windows: tw, alias })
}

/// Short alias for a CEC-2014 file name, e.g.
/// `eil51_n50_bounded-strongly-corr_01.ttp` with type A becomes `51-A`.
pub fn instance_alias(file_name: &str, kind: WindowType) -> String {
    let stem = file_name.rsplit('/').next().unwrap_or(file_name);
    let stem = stem.strip_suffix(".ttp").unwrap_or(stem);
    let mut parts = stem.splitn(3, '_');
    let (Some(tsp), Some(_items), Some(rest)) = (parts.next(), parts.next(), parts.next()) else {
        return format!("{stem}-{kind}");
    };
    let cities: String = tsp.chars().skip_while(|c| !c.is_ascii_digit()).collect();
    let suffix = match rest {
        "bounded-strongly-corr_01" => kind.to_string(),
        "bounded-strongly-corr_02" => "2".to_string(),
        "uncorr_01" => "u".to_string(),
        "uncorr-similar-weights_01" => "usw".to_string(),
        _ => return format!("{stem}-{kind}"),
    };
    if cities.is_empty() {
        format!("{stem}-{kind}")
    } else {
        format!("{cities}-{suffix}")
    }
}
