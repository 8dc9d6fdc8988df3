use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use super::oracle::Oracle;
use crate::error::{Error, Result};
use crate::ring::Metric;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Ge => ">=",
        }
    }

    pub fn holds(self, lhs: Ratio<i64>, rhs: Ratio<i64>) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

impl Serialize for Relation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Confirmed,
    Refuted,
    Untested,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Asserted,
    Monitored,
}

/// The quantity a claim is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    Length,
    Cardinality,
    MinWeight(Metric),
    Radius(Metric),
    DualRadius(Metric),
    /// binary covering radius of the Gray image
    GrayRadius,
    /// 1 when the code is self-orthogonal, 0 otherwise
    SelfOrthogonal,
    SelfDual,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Length => f.write_str("n"),
            Quantity::Cardinality => f.write_str("M"),
            Quantity::MinWeight(m) => write!(f, "d_{}", m.short()),
            Quantity::Radius(m) => write!(f, "r_{}", m.short()),
            Quantity::DualRadius(m) => write!(f, "r_{}(dual)", m.short()),
            Quantity::GrayRadius => f.write_str("r_H(gray image)"),
            Quantity::SelfOrthogonal => f.write_str("self_orthogonal"),
            Quantity::SelfDual => f.write_str("self_dual"),
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn ratio_text(r: &Ratio<i64>) -> String {
    r.to_string()
}

struct RatioValue<'a>(&'a Ratio<i64>);

impl Serialize for RatioValue<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            s.serialize_i64(self.0.to_integer())
        } else {
            s.serialize_str(&ratio_text(self.0))
        }
    }
}

/// A claimed value that depends on a quantity of another code, resolved
/// once that quantity is known: claimed = offset + referenced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimReference {
    pub subject: String,
    pub quantity: Quantity,
    #[serde(serialize_with = "ser_ratio")]
    pub offset: Ratio<i64>,
}

fn ser_ratio<S: Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    RatioValue(r).serialize(s)
}

fn ser_opt_ratio<S: Serializer>(r: &Option<Ratio<i64>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => RatioValue(r).serialize(s),
        None => s.serialize_none(),
    }
}

/// One published statement instantiated at concrete parameters, with the
/// value measured by an oracle and the resulting verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimRecord {
    pub claim_id: String,
    /// descriptor of the code the claim is instantiated at
    pub subject: String,
    pub quantity: Quantity,
    pub claimed_relation: Relation,
    #[serde(serialize_with = "ser_opt_ratio")]
    pub claimed_value: Option<Ratio<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<ClaimReference>,
    pub oracle_value: Option<i64>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ClaimRecord {
    pub fn new(
        claim_id: impl Into<String>,
        subject: impl Into<String>,
        quantity: Quantity,
        relation: Relation,
        value: Ratio<i64>,
    ) -> Self {
        ClaimRecord {
            claim_id: claim_id.into(),
            subject: subject.into(),
            quantity,
            claimed_relation: relation,
            claimed_value: Some(value),
            reference: None,
            oracle_value: None,
            verdict: Verdict::Untested,
            note: None,
        }
    }

    pub fn conditional(
        claim_id: impl Into<String>,
        subject: impl Into<String>,
        quantity: Quantity,
        relation: Relation,
        reference: ClaimReference,
    ) -> Self {
        ClaimRecord {
            claimed_value: None,
            reference: Some(reference),
            ..ClaimRecord::new(claim_id, subject, quantity, relation, Ratio::from_integer(0))
        }
    }

    /// Supplies the referenced quantity of a conditional claim.
    pub fn resolve(&mut self, referenced: i64) {
        if let Some(r) = &self.reference {
            self.claimed_value = Some(r.offset + Ratio::from_integer(referenced));
        }
    }

    /// Records the measured value and sets the verdict; an absent value or an
    /// unresolved reference leaves the claim untested.
    pub fn adjudicate(&mut self, oracle_value: Option<i64>) {
        self.oracle_value = oracle_value;
        self.verdict = match (oracle_value, self.claimed_value) {
            (Some(v), Some(c)) => {
                if self.claimed_relation.holds(Ratio::from_integer(v), c) {
                    Verdict::Confirmed
                } else {
                    Verdict::Refuted
                }
            }
            _ => Verdict::Untested,
        };
    }

    pub fn mark_untested(&mut self, note: impl Into<String>) {
        self.oracle_value = None;
        self.verdict = Verdict::Untested;
        self.note = Some(note.into());
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: u32,
    pub source: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MetricLedger {
    pub exact: Option<u32>,
    pub oracle: Option<Oracle>,
    pub sound_lower: Vec<Bound>,
    pub sound_upper: Vec<Bound>,
    pub monitored: Vec<ClaimRecord>,
}

impl MetricLedger {
    /// Tightest lower bound with its source, counting the exact value.
    pub fn best_lower(&self) -> Option<(u32, String)> {
        let exact = self.exact.map(|v| (v, self.exact_source()));
        self.sound_lower
            .iter()
            .map(|b| (b.value, b.source.clone()))
            .chain(exact)
            .max_by_key(|(v, _)| *v)
    }

    pub fn best_upper(&self) -> Option<(u32, String)> {
        let exact = self.exact.map(|v| (v, self.exact_source()));
        self.sound_upper
            .iter()
            .map(|b| (b.value, b.source.clone()))
            .chain(exact)
            .min_by_key(|(v, _)| *v)
    }

    fn exact_source(&self) -> String {
        match self.oracle {
            Some(o) => format!("exact, {o} oracle"),
            None => "exact".to_string(),
        }
    }
}

/// Everything known about the covering radius of one code, per metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundLedger {
    pub code: String,
    pub metrics: BTreeMap<Metric, MetricLedger>,
}

// r_a ≤ (num/den) · r_b, each holding symbol by symbol
const INTERMETRIC: [(Metric, u32, u32, Metric); 4] = [
    (Metric::Homogeneous, 2, 1, Metric::Euclidean),
    (Metric::Euclidean, 5, 1, Metric::Homogeneous),
    (Metric::Lee, 1, 1, Metric::Euclidean),
    (Metric::Homogeneous, 2, 1, Metric::Lee),
];

impl BoundLedger {
    pub fn new(code: impl Into<String>) -> Self {
        BoundLedger {
            code: code.into(),
            metrics: BTreeMap::new(),
        }
    }

    pub fn metric(&self, m: Metric) -> Option<&MetricLedger> {
        self.metrics.get(&m)
    }

    fn entry(&mut self, m: Metric) -> &mut MetricLedger {
        self.metrics.entry(m).or_default()
    }

    pub fn exact(&self, m: Metric) -> Option<u32> {
        self.metrics.get(&m).and_then(|l| l.exact)
    }

    pub fn set_exact(&mut self, m: Metric, value: u32, oracle: Oracle) {
        let e = self.entry(m);
        e.exact = Some(value);
        e.oracle = Some(oracle);
    }

    pub fn add_lower(&mut self, m: Metric, value: u32, source: impl Into<String>) {
        let b = Bound {
            value,
            source: source.into(),
        };
        let e = self.entry(m);
        if !e.sound_lower.contains(&b) {
            e.sound_lower.push(b);
        }
    }

    pub fn add_upper(&mut self, m: Metric, value: u32, source: impl Into<String>) {
        let b = Bound {
            value,
            source: source.into(),
        };
        let e = self.entry(m);
        if !e.sound_upper.contains(&b) {
            e.sound_upper.push(b);
        }
    }

    pub fn add_claim(&mut self, m: Metric, claim: ClaimRecord) {
        self.entry(m).monitored.push(claim);
    }

    pub fn claims(&self) -> impl Iterator<Item = &ClaimRecord> {
        self.metrics.values().flat_map(|l| l.monitored.iter())
    }

    pub fn claims_mut(&mut self) -> impl Iterator<Item = &mut ClaimRecord> {
        self.metrics.values_mut().flat_map(|l| l.monitored.iter_mut())
    }

    /// Adds 0 ≤ r ≤ n · (largest symbol weight) for every metric.
    pub fn add_trivial_bounds(&mut self, n: usize) {
        for m in Metric::ALL {
            self.add_upper(m, n as u32 * m.max_symbol_weight(), "largest symbol weight times length");
        }
    }

    /// Propagates bounds across metrics through r_HW ≤ 2 r_E, r_E ≤ 5 r_HW,
    /// r_L ≤ r_E and r_HW ≤ 2 r_L until nothing improves.
    pub fn intermetric_close(&mut self) {
        loop {
            let mut changed = false;
            for (a, num, den, b) in INTERMETRIC {
                let ratio = if den == 1 {
                    format!("{num}")
                } else {
                    format!("{num}/{den}")
                };
                if let Some((ub, src)) = self.metrics.get(&b).and_then(|l| l.best_upper()) {
                    let v = ub * num / den;
                    if self.metrics.get(&a).and_then(|l| l.best_upper()).is_none_or(|(cur, _)| v < cur) {
                        let source = format!("inter-metric r_{} <= {ratio} r_{} from {src}", a.short(), b.short());
                        self.add_upper(a, v, source);
                        changed = true;
                    }
                }
                if let Some((lb, src)) = self.metrics.get(&a).and_then(|l| l.best_lower()) {
                    let v = (lb * den).div_ceil(num);
                    if v > 0
                        && self.metrics.get(&b).and_then(|l| l.best_lower()).is_none_or(|(cur, _)| v > cur)
                    {
                        let source = format!("inter-metric r_{} <= {ratio} r_{} from {src}", a.short(), b.short());
                        self.add_lower(b, v, source);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    /// Every sound bound must bracket the exact value, and sound lower bounds
    /// may never exceed sound upper bounds.
    pub fn check_consistency(&self) -> Result<()> {
        for (m, l) in &self.metrics {
            let lo = l.sound_lower.iter().max_by_key(|b| b.value);
            let hi = l.sound_upper.iter().min_by_key(|b| b.value);
            let fail = |what: String| {
                Err(Error::Consistency(format!(
                    "{} under {m}: {what}",
                    self.code
                )))
            };
            if let Some(x) = l.exact {
                if let Some(b) = lo.filter(|b| b.value > x) {
                    return fail(format!("lower bound {} ({}) exceeds exact {x}", b.value, b.source));
                }
                if let Some(b) = hi.filter(|b| b.value < x) {
                    return fail(format!("upper bound {} ({}) below exact {x}", b.value, b.source));
                }
            }
            if let (Some(a), Some(b)) = (lo, hi) {
                if a.value > b.value {
                    return fail(format!(
                        "lower bound {} ({}) exceeds upper bound {} ({})",
                        a.value, a.source, b.value, b.source
                    ));
                }
            }
        }
        Ok(())
    }
}

struct BoundEntry<'a> {
    value: RatioOrInt<'a>,
    relation: Relation,
    source: &'a str,
    status: Status,
    verdict: Option<Verdict>,
    oracle_value: Option<i64>,
}

enum RatioOrInt<'a> {
    Int(u32),
    Ratio(Option<&'a Ratio<i64>>),
}

impl Serialize for BoundEntry<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        match &self.value {
            RatioOrInt::Int(v) => map.serialize_entry("value", v)?,
            RatioOrInt::Ratio(Some(r)) => map.serialize_entry("value", &RatioValue(r))?,
            RatioOrInt::Ratio(None) => map.serialize_entry("value", &Option::<u32>::None)?,
        }
        map.serialize_entry("relation", &self.relation)?;
        map.serialize_entry("source", self.source)?;
        map.serialize_entry("status", &self.status)?;
        if let Some(v) = &self.verdict {
            map.serialize_entry("verdict", v)?;
            map.serialize_entry("oracle_value", &self.oracle_value)?;
        }
        map.end()
    }
}

struct MetricEntry<'a> {
    code: &'a str,
    metric: Metric,
    ledger: &'a MetricLedger,
}

impl Serialize for MetricEntry<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let l = self.ledger;
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("code", self.code)?;
        map.serialize_entry("metric", &self.metric)?;
        if let Some(x) = l.exact {
            map.serialize_entry("exact", &x)?;
            map.serialize_entry("oracle", &l.oracle)?;
        }
        fn asserted(bounds: &[Bound], relation: Relation) -> impl Iterator<Item = BoundEntry<'_>> {
            bounds.iter().map(move |b| BoundEntry {
                value: RatioOrInt::Int(b.value),
                relation,
                source: &b.source,
                status: Status::Asserted,
                verdict: None,
                oracle_value: None,
            })
        }
        let monitored = l.monitored.iter().map(|c| BoundEntry {
            value: RatioOrInt::Ratio(c.claimed_value.as_ref()),
            relation: c.claimed_relation,
            source: &c.claim_id,
            status: Status::Monitored,
            verdict: Some(c.verdict),
            oracle_value: c.oracle_value,
        });
        let bounds: Vec<BoundEntry> = asserted(&l.sound_lower, Relation::Ge)
            .chain(asserted(&l.sound_upper, Relation::Le))
            .chain(monitored)
            .collect();
        map.serialize_entry("bounds", &bounds)?;
        map.end()
    }
}

impl Serialize for BoundLedger {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.metrics.len()))?;
        for (m, l) in &self.metrics {
            seq.serialize_element(&MetricEntry {
                code: &self.code,
                metric: *m,
                ledger: l,
            })?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    #[test]
    fn propagation_from_exact_homogeneous() {
        let mut l = BoundLedger::new("x");
        l.set_exact(Metric::Homogeneous, 4, Oracle::Scan);
        l.intermetric_close();
        let e = l.metric(Metric::Euclidean).unwrap();
        assert_eq!(e.best_lower().unwrap().0, 2);
        assert_eq!(e.best_upper().unwrap().0, 20);
        assert!(l.check_consistency().is_ok());
    }

    #[test]
    fn zero_euclidean_forces_zero() {
        let mut l = BoundLedger::new("x");
        l.set_exact(Metric::Euclidean, 0, Oracle::Coset);
        l.intermetric_close();
        assert_eq!(l.metric(Metric::Lee).unwrap().best_upper().unwrap().0, 0);
        assert_eq!(l.metric(Metric::Homogeneous).unwrap().best_upper().unwrap().0, 0);
    }

    #[test]
    fn lee_bounds_homogeneous() {
        let mut l = BoundLedger::new("x");
        l.set_exact(Metric::Lee, 3, Oracle::Scan);
        l.intermetric_close();
        let hw = l.metric(Metric::Homogeneous).unwrap();
        assert!(hw.sound_upper.iter().any(|b| b.value == 6));
    }

    #[test]
    fn inconsistency_detected() {
        let mut l = BoundLedger::new("x");
        l.set_exact(Metric::Lee, 3, Oracle::Scan);
        l.add_lower(Metric::Lee, 4, "bogus");
        assert_eq!(l.check_consistency().unwrap_err().kind(), "consistency");
    }

    #[test]
    fn claim_verdicts_with_rationals() {
        let mut c = ClaimRecord::new("t", "s", Quantity::Radius(Metric::Euclidean), Relation::Eq, r(11, 2));
        c.adjudicate(Some(5));
        assert_eq!(c.verdict, Verdict::Refuted);
        c.claimed_relation = Relation::Ge;
        c.adjudicate(Some(6));
        assert_eq!(c.verdict, Verdict::Confirmed);
        c.adjudicate(None);
        assert_eq!(c.verdict, Verdict::Untested);
    }

    #[test]
    fn conditional_claims_wait_for_reference() {
        let reference = ClaimReference {
            subject: "y".into(),
            quantity: Quantity::Radius(Metric::Euclidean),
            offset: r(-3, 2),
        };
        let mut c = ClaimRecord::conditional("t", "s", Quantity::Radius(Metric::Euclidean), Relation::Le, reference);
        c.adjudicate(Some(1));
        assert_eq!(c.verdict, Verdict::Untested);
        c.resolve(4);
        assert_eq!(c.claimed_value, Some(r(5, 2)));
        c.adjudicate(Some(2));
        assert_eq!(c.verdict, Verdict::Confirmed);
    }

    #[test]
    fn ledger_json_shape() {
        let mut l = BoundLedger::new("octacode");
        l.set_exact(Metric::Homogeneous, 6, Oracle::Coset);
        l.add_lower(Metric::Homogeneous, 3, "sphere-covering sound form");
        let mut c = ClaimRecord::new("r_HW >= 6", "octacode", Quantity::Radius(Metric::Homogeneous), Relation::Ge, r(6, 1));
        c.adjudicate(Some(6));
        l.add_claim(Metric::Homogeneous, c);
        let v = serde_json::to_value(&l).unwrap();
        assert_eq!(v[0]["metric"], "homogeneous");
        assert_eq!(v[0]["exact"], 6);
        assert_eq!(v[0]["bounds"][0]["status"], "asserted");
        assert_eq!(v[0]["bounds"][1]["verdict"], "confirmed");
        assert_eq!(v[0]["bounds"][1]["relation"], ">=");
    }
}
