//! Report records and their line format.
//!
//! Each record is `statement<TAB>pair<TAB>outcome<TAB>witness<TAB>millis`;
//! a `#`-prefixed summary block follows. Timing only ever appears in the
//! last column of record lines, so [`strip_timing`] makes reports
//! comparable byte for byte.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Vacuous,
    Verified,
    Violated,
    Timeout,
    Error,
}

impl Outcome {
    pub const ALL: [Outcome; 5] = [
        Outcome::Vacuous,
        Outcome::Verified,
        Outcome::Violated,
        Outcome::Timeout,
        Outcome::Error,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Vacuous => "vacuous",
            Outcome::Verified => "verified",
            Outcome::Violated => "violated",
            Outcome::Timeout => "timeout",
            Outcome::Error => "error",
        }
    }

    pub fn parse(s: &str) -> Option<Outcome> {
        Outcome::ALL.into_iter().find(|o| o.as_str() == s)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one statement on one pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub statement: String,
    pub pair: String,
    pub outcome: Outcome,
    pub witness: String,
    pub millis: u128,
}

fn clean(s: &str) -> String {
    s.chars()
        .map(|c| if c == '\t' || c == '\n' || c == '\r' { ' ' } else { c })
        .collect()
}

impl TheoremReport {
    pub fn line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}",
            clean(&self.statement),
            clean(&self.pair),
            self.outcome,
            clean(&self.witness),
            self.millis
        )
    }
}

/// All records of a harness run, in manifest order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HarnessReport {
    pub records: Vec<TheoremReport>,
    /// Statements whose hypothesis is extremal; the summary states how
    /// often they triggered.
    pub watched: Vec<String>,
}

impl HarnessReport {
    /// Counts per statement and outcome, statements in first-seen order.
    pub fn counts(&self) -> Vec<(String, BTreeMap<Outcome, usize>)> {
        let mut out: Vec<(String, BTreeMap<Outcome, usize>)> = Vec::new();
        for r in &self.records {
            let i = match out.iter().position(|(s, _)| *s == r.statement) {
                Some(i) => i,
                None => {
                    out.push((r.statement.clone(), BTreeMap::new()));
                    out.len() - 1
                }
            };
            *out[i].1.entry(r.outcome).or_default() += 1;
        }
        out
    }

    pub fn count(&self, outcome: Outcome) -> usize {
        self.records.iter().filter(|r| r.outcome == outcome).count()
    }

    pub fn summary(&self) -> String {
        let mut s = String::from("# summary\n");
        for (stmt, counts) in self.counts() {
            s.push_str(&format!("# {stmt}"));
            for o in Outcome::ALL {
                s.push_str(&format!("\t{o}={}", counts.get(&o).copied().unwrap_or(0)));
            }
            s.push('\n');
        }
        for w in &self.watched {
            let rel: Vec<&TheoremReport> = self.records.iter().filter(|r| r.statement == *w).collect();
            if rel.is_empty() {
                continue;
            }
            let triggered = rel
                .iter()
                .filter(|r| matches!(r.outcome, Outcome::Verified | Outcome::Violated))
                .count();
            if triggered == 0 {
                s.push_str(&format!(
                    "# {w}: hypothesis never triggered on this corpus ({} pairs, all vacuous or unfinished)\n",
                    rel.len()
                ));
            } else {
                s.push_str(&format!("# {w}: hypothesis triggered on {triggered} of {} pairs\n", rel.len()));
            }
        }
        s.push_str(&format!(
            "# total\tvacuous={}\tverified={}\tviolated={}\ttimeout={}\terror={}\n",
            self.count(Outcome::Vacuous),
            self.count(Outcome::Verified),
            self.count(Outcome::Violated),
            self.count(Outcome::Timeout),
            self.count(Outcome::Error)
        ));
        s
    }

    pub fn render(&self) -> String {
        let mut s = String::from("# statement\tpair\toutcome\twitness\tmillis\n");
        for r in &self.records {
            s.push_str(&r.line());
            s.push('\n');
        }
        s.push_str(&self.summary());
        s
    }
}

/// Drops the trailing timing column from record lines.
pub fn strip_timing(report: &str) -> String {
    report
        .lines()
        .map(|l| {
            if l.starts_with('#') {
                l
            } else {
                l.rsplit_once('\t').map_or(l, |(head, _)| head)
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(s: &str, o: Outcome, ms: u128) -> TheoremReport {
        TheoremReport {
            statement: s.into(),
            pair: "m/n".into(),
            outcome: o,
            witness: "w\twith tab".into(),
            millis: ms,
        }
    }

    #[test]
    fn timing_is_stripped() {
        let a = HarnessReport {
            records: vec![rec("T1", Outcome::Verified, 5)],
            watched: vec![],
        };
        let b = HarnessReport {
            records: vec![rec("T1", Outcome::Verified, 999)],
            watched: vec![],
        };
        assert_ne!(a.render(), b.render());
        assert_eq!(strip_timing(&a.render()), strip_timing(&b.render()));
        assert_eq!(a.records[0].line().matches('\t').count(), 4);
    }

    #[test]
    fn summary_mentions_untriggered_watch() {
        let r = HarnessReport {
            records: vec![rec("T2", Outcome::Vacuous, 1)],
            watched: vec!["T2".into()],
        };
        assert!(r.summary().contains("T2: hypothesis never triggered"));
        assert!(r.summary().contains("# T2\tvacuous=1\tverified=0"));
    }
}
