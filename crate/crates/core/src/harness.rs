//! Builds analysis reports for single codes and runs the fixed suite of
//! family claims, filling in every measurable quantity within budget.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_rational::Ratio;
use serde::Serialize;

use crate::code::LinearCode;
use crate::config::Budgets;
use crate::covering::{
    covering_radius, delsarte_upper, gray_image_covering_radius, sphere_covering_lower, torsion_lower_bound,
    BoundLedger, ClaimRecord, ClaimReference, CoveringRadius, Quantity, Relation, SphereForm, TorsionLowerBound,
    Verdict,
};
use crate::error::{Error, Result};
use crate::families::{self, FamilySpec};
use crate::ring::Metric;
use crate::torsion::{structure_report, torsion_distances, StructureReport, TorsionDistances};

pub const TOOL_NAME: &str = "z8codes";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub weights: Vec<Metric>,
    pub torsion: bool,
    pub covrad: Vec<Metric>,
    pub verify: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeDescriptor {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    pub length: usize,
    pub ring: String,
    pub ktype: Vec<usize>,
    pub cardinality_log2: u64,
    pub generator: Vec<String>,
    pub standard_form: Vec<String>,
    pub permutation: Vec<usize>,
}

fn digits(row: &[u8]) -> String {
    row.iter().map(|x| char::from(b'0' + x)).collect()
}

impl CodeDescriptor {
    pub fn of(name: &str, family: Option<&FamilySpec>, code: &LinearCode) -> Self {
        let sf = code.standard_form();
        CodeDescriptor {
            name: name.to_string(),
            family: family.map(|f| f.family().to_string()),
            length: code.len(),
            ring: code.modulus().to_string(),
            ktype: code.ktype().to_vec(),
            cardinality_log2: code.cardinality_log2(),
            generator: code.generators().iter().map(|r| digits(r)).collect(),
            standard_form: sf.rows().iter().map(|r| digits(r)).collect(),
            permutation: sf.permutation().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeReport {
    pub code: CodeDescriptor,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub weight_distributions: BTreeMap<Metric, BTreeMap<u32, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion_distances: Option<TorsionDistances>,
    pub ledger: BoundLedger,
    pub claims: Vec<ClaimRecord>,
    pub notes: Vec<String>,
}

impl CodeReport {
    /// Every claim, whether filed under the ledger or with the parameters.
    pub fn all_claims(&self) -> impl Iterator<Item = &ClaimRecord> {
        self.ledger.claims().chain(self.claims.iter())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub confirmed: usize,
    pub refuted: usize,
    pub untested: usize,
}

impl Summary {
    fn count<'a>(claims: impl Iterator<Item = &'a ClaimRecord>) -> Self {
        let mut s = Summary::default();
        for c in claims {
            match c.verdict {
                Verdict::Confirmed => s.confirmed += 1,
                Verdict::Refuted => s.refuted += 1,
                Verdict::Untested => s.untested += 1,
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub entries: Vec<CodeReport>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: impl Into<String>, entries: Vec<CodeReport>) -> Self {
        let summary = Summary::count(entries.iter().flat_map(|e| e.all_claims()));
        Report {
            tool: TOOL_NAME.to_string(),
            version: TOOL_VERSION.to_string(),
            command: command.into(),
            entries,
            summary,
        }
    }

    pub fn claims(&self) -> impl Iterator<Item = &ClaimRecord> {
        self.entries.iter().flat_map(|e| e.all_claims())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable table of every claim.
    pub fn to_table(&self) -> String {
        let mut rows: Vec<[String; 6]> = vec![[
            "code".into(),
            "claim".into(),
            "claimed".into(),
            "measured".into(),
            "verdict".into(),
            "note".into(),
        ]];
        for e in &self.entries {
            for c in e.all_claims() {
                rows.push([
                    c.subject.clone(),
                    c.claim_id.clone(),
                    match c.claimed_value {
                        Some(v) => format!("{} {} {}", c.quantity, c.claimed_relation.symbol(), v),
                        None => format!("{} {} ?", c.quantity, c.claimed_relation.symbol()),
                    },
                    c.oracle_value.map_or("-".into(), |v| v.to_string()),
                    format!("{:?}", c.verdict).to_lowercase(),
                    c.note.clone().unwrap_or_default(),
                ]);
            }
        }
        let mut out = String::new();
        for e in &self.entries {
            let radii: Vec<String> = Metric::ALL
                .iter()
                .filter_map(|&m| e.ledger.exact(m).map(|r| format!("r_{}={r}", m.short())))
                .collect();
            out.push_str(&format!(
                "# {}  n={} type={:?} |C|=2^{}{}{}\n",
                e.code.name,
                e.code.length,
                e.code.ktype,
                e.code.cardinality_log2,
                if radii.is_empty() { "" } else { "  " },
                radii.join(" ")
            ));
        }
        if rows.len() > 1 {
            let widths: Vec<usize> = (0..6)
                .map(|i| rows.iter().map(|r| r[i].chars().count()).max().unwrap_or(0))
                .collect();
            for r in &rows {
                let line: Vec<String> = r
                    .iter()
                    .zip(&widths)
                    .map(|(cell, &w)| format!("{cell:<w$}"))
                    .collect();
                out.push_str(line.join("  ").trim_end());
                out.push('\n');
            }
        }
        out.push_str(&format!(
            "confirmed {}  refuted {}  untested {}\n",
            self.summary.confirmed, self.summary.refuted, self.summary.untested
        ));
        out
    }
}

/// A measured quantity, or the reason it was not measured.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Measured {
    Value(i64),
    Refused(String),
}

/// Computes quantities of named codes, caching every result so that
/// conditional claims and repeated references cost nothing extra.
pub struct Evaluator<'a> {
    budgets: &'a Budgets,
    codes: HashMap<String, LinearCode>,
    radii: HashMap<(String, Metric, bool), std::result::Result<CoveringRadius, String>>,
    values: HashMap<(String, Quantity), Measured>,
}

fn refusal<T>(r: Result<T>) -> Result<std::result::Result<T, String>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e @ Error::Budget { .. }) => Ok(Err(e.to_string())),
        Err(e) => Err(e),
    }
}

impl<'a> Evaluator<'a> {
    pub fn new(budgets: &'a Budgets) -> Self {
        Evaluator {
            budgets,
            codes: HashMap::new(),
            radii: HashMap::new(),
            values: HashMap::new(),
        }
    }

    pub fn budgets(&self) -> &Budgets {
        self.budgets
    }

    fn register(&mut self, subject: &str, code: &LinearCode) {
        self.codes
            .entry(subject.to_string())
            .or_insert_with(|| code.clone());
    }

    fn code_for(&mut self, subject: &str) -> Result<LinearCode> {
        if let Some(c) = self.codes.get(subject) {
            return Ok(c.clone());
        }
        let spec: FamilySpec = subject.parse()?;
        let code = families::build(&spec)?;
        self.codes.insert(subject.to_string(), code.clone());
        Ok(code)
    }

    /// Exact covering radius of the code (or of its dual), cached.
    pub fn radius(
        &mut self,
        subject: &str,
        metric: Metric,
        dual: bool,
    ) -> Result<std::result::Result<CoveringRadius, String>> {
        let key = (subject.to_string(), metric, dual);
        if let Some(r) = self.radii.get(&key) {
            return Ok(r.clone());
        }
        let code = self.code_for(subject)?;
        let target = if dual { code.dual()? } else { code };
        let r = refusal(covering_radius(&target, metric, self.budgets))?;
        self.radii.insert(key, r.clone());
        Ok(r)
    }

    pub fn measure(&mut self, subject: &str, q: Quantity) -> Result<Measured> {
        let key = (subject.to_string(), q);
        if let Some(m) = self.values.get(&key) {
            return Ok(m.clone());
        }
        let code = self.code_for(subject)?;
        let budgets = self.budgets.clone();
        let measured = match q {
            Quantity::Length => Measured::Value(code.len() as i64),
            Quantity::Cardinality => match code.cardinality().and_then(|c| i64::try_from(c).ok()) {
                Some(c) => Measured::Value(c),
                None => Measured::Refused(format!("|C| = 2^{} exceeds 63 bits", code.cardinality_log2())),
            },
            Quantity::MinWeight(m) => {
                let r = refusal(
                    code.check_enumerable(budgets.enumeration, "minimum weight enumeration")
                        .and_then(|_| code.min_weight(m)),
                )?;
                match r {
                    Ok(Some(w)) => Measured::Value(i64::from(w)),
                    Ok(None) => Measured::Refused("the zero code has no minimum weight".into()),
                    Err(note) => Measured::Refused(note),
                }
            }
            Quantity::Radius(m) | Quantity::DualRadius(m) => {
                match self.radius(subject, m, matches!(q, Quantity::DualRadius(_)))? {
                    Ok(r) => Measured::Value(i64::from(r.value)),
                    Err(note) => Measured::Refused(note),
                }
            }
            Quantity::GrayRadius => match refusal(gray_image_covering_radius(&code, &budgets))? {
                Ok(r) => Measured::Value(i64::from(r)),
                Err(note) => Measured::Refused(note),
            },
            Quantity::SelfOrthogonal => Measured::Value(i64::from(code.is_self_orthogonal())),
            Quantity::SelfDual => Measured::Value(i64::from(code.is_self_dual())),
        };
        self.values.insert(key, measured.clone());
        Ok(measured)
    }

    /// Resolves a conditional claim's reference and sets its verdict.
    pub fn adjudicate(&mut self, claim: &mut ClaimRecord) -> Result<()> {
        if let Some(ClaimReference { subject, quantity, .. }) = claim.reference.clone() {
            match self.measure(&subject, quantity)? {
                Measured::Value(v) => claim.resolve(v),
                Measured::Refused(note) => {
                    claim.mark_untested(format!("referenced {quantity} of {subject} unavailable: {note}"));
                    return Ok(());
                }
            }
        }
        if claim.claimed_value.is_none() {
            if claim.note.is_none() {
                claim.mark_untested("no claimed value");
            }
            return Ok(());
        }
        match self.measure(&claim.subject.clone(), claim.quantity)? {
            Measured::Value(v) => claim.adjudicate(Some(v)),
            Measured::Refused(note) => claim.mark_untested(note),
        }
        Ok(())
    }
}

fn untested_claim(id: &str, subject: &str, q: Quantity, rel: Relation, note: String) -> ClaimRecord {
    let mut c = ClaimRecord::new(id, subject, q, rel, Ratio::from_integer(0));
    c.claimed_value = None;
    c.mark_untested(note);
    c
}

/// Statements checked on every code regardless of family.
fn generic_claims(subject: &str, code: &LinearCode, ev: &mut Evaluator, notes: &mut Vec<String>) -> Result<Vec<ClaimRecord>> {
    use Quantity::Radius;
    let hw = Metric::Homogeneous;
    let e = Metric::Euclidean;
    let mut out = Vec::new();
    let int = Ratio::from_integer;

    match refusal(delsarte_upper(code, ev.budgets().enumeration))? {
        Ok((s, s5)) => {
            out.push(ClaimRecord::new("Delsarte: r_HW <= s(dual)", subject, Radius(hw), Relation::Le, int(i64::from(s))));
            out.push(ClaimRecord::new("Delsarte: r_E <= 5 s(dual)", subject, Radius(e), Relation::Le, int(i64::from(s5))));
        }
        Err(note) => {
            out.push(untested_claim("Delsarte: r_HW <= s(dual)", subject, Radius(hw), Relation::Le, note.clone()));
            out.push(untested_claim("Delsarte: r_E <= 5 s(dual)", subject, Radius(e), Relation::Le, note));
        }
    }

    let size = BigUint::from(1u32) << code.cardinality_log2();
    for m in [hw, e] {
        let id = format!("sphere covering, ambient 2^(4n): r_{} >= bound", m.short());
        match sphere_covering_lower(code.len(), &size, m, SphereForm::Paper)? {
            Some(r) => out.push(ClaimRecord::new(id, subject, Radius(m), Relation::Ge, int(i64::from(r)))),
            None => notes.push(format!("{id}: no radius satisfies the inequality")),
        }
    }

    out.push(ClaimRecord::conditional(
        "Gray image: r_H(phi(C)) = r_HW(C)",
        subject,
        Quantity::GrayRadius,
        Relation::Eq,
        ClaimReference {
            subject: subject.to_string(),
            quantity: Radius(hw),
            offset: int(0),
        },
    ));

    match refusal(torsion_distances(code, ev.budgets().enumeration))? {
        Ok(d) => match torsion_lower_bound(&d) {
            TorsionLowerBound::Claimed { euclidean, homogeneous, .. } => {
                out.push(ClaimRecord::new("torsion distances: r_E >= 9t", subject, Radius(e), Relation::Ge, int(i64::from(euclidean))));
                out.push(ClaimRecord::new("torsion distances: r_HW >= 2t", subject, Radius(hw), Relation::Ge, int(i64::from(homogeneous))));
            }
            TorsionLowerBound::Absent { failed_hypothesis } => {
                notes.push(format!("torsion-distance lower bound not applicable: {failed_hypothesis} fails"));
            }
        },
        Err(note) => notes.push(format!("torsion-distance lower bound skipped: {note}")),
    }
    Ok(out)
}

/// Sound lower bound for a block repetition code: it is a subcode of the
/// direct sum of the repetition codes on its blocks, whose radius is the sum
/// of theirs.
fn block_repetition_bounds(m: &[usize; 7], ledger: &mut BoundLedger, ev: &mut Evaluator) -> Result<()> {
    for metric in Metric::ALL {
        let mut total = 0u32;
        for (a, &count) in (1..=7u8).zip(m) {
            if count == 0 {
                continue;
            }
            let part = FamilySpec::Repetition { a, n: count }.to_string();
            match ev.radius(&part, metric, false)? {
                Ok(r) => total += r.value,
                Err(_) => return Ok(()),
            }
        }
        ledger.add_lower(metric, total, "subcode of the direct sum of block repetition codes (Mattson)");
    }
    Ok(())
}

/// Analyzes one code: parameters, optional weights and torsion structure,
/// covering radii with their sound bounds, and optionally every claim.
pub fn analyze_code(
    name: &str,
    family: Option<&FamilySpec>,
    code: &LinearCode,
    opts: &AnalyzeOptions,
    ev: &mut Evaluator,
) -> Result<CodeReport> {
    ev.register(name, code);
    let mut notes = Vec::new();
    let budgets = ev.budgets().clone();

    let mut weight_distributions = BTreeMap::new();
    for &m in &opts.weights {
        let r = refusal(
            code.check_enumerable(budgets.enumeration, "weight distribution")
                .and_then(|_| code.weight_distribution(m)),
        )?;
        match r {
            Ok(h) => {
                weight_distributions.insert(m, h);
            }
            Err(note) => notes.push(format!("{m} weight distribution skipped: {note}")),
        }
    }

    let (structure, distances) = if opts.torsion {
        let s = structure_report(code)?;
        let d = match refusal(torsion_distances(code, budgets.enumeration))? {
            Ok(d) => Some(d),
            Err(note) => {
                notes.push(format!("torsion distances skipped: {note}"));
                None
            }
        };
        (Some(s), d)
    } else {
        (None, None)
    };

    let mut ledger = BoundLedger::new(name);
    let mut metrics: Vec<Metric> = opts.covrad.clone();
    if opts.verify {
        metrics = Metric::ALL.to_vec();
    }
    metrics.sort();
    metrics.dedup();
    let size = BigUint::from(1u32) << code.cardinality_log2();
    if !metrics.is_empty() {
        ledger.add_trivial_bounds(code.len());
        for m in [Metric::Homogeneous, Metric::Euclidean] {
            if let Some(r) = sphere_covering_lower(code.len(), &size, m, SphereForm::Sound)? {
                ledger.add_lower(m, r, "sphere-covering sound form");
            }
        }
        if let Some(FamilySpec::BlockRepetition { m }) = family {
            block_repetition_bounds(m, &mut ledger, ev)?;
        }
    }
    for &m in &metrics {
        match ev.radius(name, m, false)? {
            Ok(r) => ledger.set_exact(m, r.value, r.oracle),
            Err(note) => notes.push(format!("r_{} not computed: {note}", m.short())),
        }
    }

    let mut claims = Vec::new();
    if opts.verify {
        let mut all = family.map(families::claims_for).unwrap_or_default();
        all.extend(generic_claims(name, code, ev, &mut notes)?);
        for mut c in all {
            ev.adjudicate(&mut c)?;
            match c.quantity {
                Quantity::Radius(m) => ledger.add_claim(m, c),
                _ => claims.push(c),
            }
        }
    }

    if !metrics.is_empty() {
        ledger.intermetric_close();
        ledger.check_consistency()?;
    }

    Ok(CodeReport {
        code: CodeDescriptor::of(name, family, code),
        weight_distributions,
        structure,
        torsion_distances: distances,
        ledger,
        claims,
        notes,
    })
}

/// Suite filter: `all` or one of [`families::FAMILY_WORDS`].
pub fn parse_scope(scope: &str) -> Result<Option<&'static str>> {
    let s = scope.trim().to_ascii_lowercase();
    if s == "all" {
        return Ok(None);
    }
    families::FAMILY_WORDS
        .iter()
        .find(|w| **w == s)
        .map(|w| Some(*w))
        .ok_or_else(|| {
            Error::Parse(format!(
                "unknown scope '{scope}'; expected all or one of {}",
                families::FAMILY_WORDS.join(", ")
            ))
        })
}

/// Runs every family claim of the desk-scale suite within `scope`.
pub fn verify_paper(scope: &str, budgets: &Budgets) -> Result<Report> {
    let filter = parse_scope(scope)?;
    let mut ev = Evaluator::new(budgets);
    let opts = AnalyzeOptions {
        verify: true,
        ..AnalyzeOptions::default()
    };
    let mut entries = Vec::new();
    for spec in families::desk_suite() {
        if filter.is_some_and(|f| f != spec.family()) {
            continue;
        }
        let code = families::build(&spec)?;
        entries.push(analyze_code(&spec.to_string(), Some(&spec), &code, &opts, &mut ev)?);
    }
    let scope_name = filter.unwrap_or("all");
    Ok(Report::new(format!("verify-paper {scope_name}"), entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn claim<'r>(r: &'r CodeReport, id: &str) -> &'r ClaimRecord {
        r.all_claims()
            .find(|c| c.claim_id.starts_with(id))
            .unwrap_or_else(|| panic!("no claim {id}"))
    }

    fn verify(spec: &str) -> CodeReport {
        let budgets = Budgets::default();
        let mut ev = Evaluator::new(&budgets);
        let s: FamilySpec = spec.parse().unwrap();
        let code = families::build(&s).unwrap();
        let opts = AnalyzeOptions {
            verify: true,
            ..AnalyzeOptions::default()
        };
        analyze_code(spec, Some(&s), &code, &opts, &mut ev).unwrap()
    }

    #[test]
    fn delsarte_refuted_on_two_coordinates() {
        let r = verify("repetition:a=1,n=2");
        let d = claim(&r, "Delsarte: r_HW");
        assert_eq!(d.claimed_value, Some(Ratio::from_integer(2)));
        assert_eq!(d.oracle_value, Some(4));
        assert_eq!(d.verdict, Verdict::Refuted);
    }

    #[test]
    fn gray_image_refuted_on_full_space() {
        let r = verify("repetition:a=1,n=1");
        let g = claim(&r, "Gray image");
        assert_eq!(g.oracle_value, Some(1));
        assert_eq!(g.claimed_value, Some(Ratio::from_integer(0)));
        assert_eq!(g.verdict, Verdict::Refuted);
    }

    #[test]
    fn repetition_four_at_one() {
        let r = verify("repetition:a=4,n=1");
        let c = claim(&r, "repetition: r_E = 8n");
        assert_eq!(c.oracle_value, Some(4));
        assert_eq!(c.verdict, Verdict::Refuted);
        assert_eq!(r.ledger.exact(Metric::Euclidean), Some(4));
    }

    #[test]
    fn conditional_reference_to_other_code() {
        let r = verify("macdonald-alpha:k=2,u=1");
        let c = claim(&r, "MacDonald alpha: r_E");
        assert_eq!(c.verdict, Verdict::Untested);
        assert!(c.note.is_some());
        assert_eq!(claim(&r, "MacDonald alpha: n").verdict, Verdict::Confirmed);
    }

    #[test]
    fn scope_words() {
        assert_eq!(parse_scope("all").unwrap(), None);
        assert_eq!(parse_scope("octacode").unwrap(), Some("octacode"));
        assert_eq!(parse_scope("section8").unwrap_err().kind(), "parse");
    }

    #[test]
    fn report_counts_and_table() {
        let budgets = Budgets::default();
        let report = verify_paper("reed-muller", &budgets).unwrap();
        assert_eq!(report.entries.len(), 1);
        let s = report.summary;
        assert_eq!(s.confirmed + s.refuted + s.untested, report.claims().count());
        let table = report.to_table();
        assert!(table.contains("Reed-Muller: r_HW"));
        assert!(table.lines().last().unwrap().starts_with("confirmed"));
    }
}
