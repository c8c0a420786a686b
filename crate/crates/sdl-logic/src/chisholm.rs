//! The four scope readings of the library lending rules.
//!
//! Over atoms `r` (the item is returned by the due date) and `p`
//! (disciplinary action is taken), every encoding contains the primary
//! obligation `O(r)` and the violating fact `~r`. The conditional rules vary
//! in scope: the no-action-on-compliance rule is `O(r -> ~p)` (wide) or
//! `r -> O(~p)` (narrow), the action-on-violation rule `O(~r -> p)` (wide)
//! or `~r -> O(p)` (narrow).

use std::fmt;

use crate::formula::SdlFormula;
use crate::tableau::{consistent, entails, TableauConfig, TableauError, TableauResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Wide,
    Narrow,
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::Wide => "wide",
            Scope::Narrow => "narrow",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChisholmEncoding {
    pub rule2_scope: Scope,
    pub rule3_scope: Scope,
    /// Primary obligation, conditional rule, contrary-to-duty rule, violation.
    pub formulas: [SdlFormula; 4],
}

impl ChisholmEncoding {
    pub fn label(&self) -> String {
        format!("({}, {})", self.rule2_scope, self.rule3_scope)
    }
}

fn encoding(rule2_scope: Scope, rule3_scope: Scope) -> ChisholmEncoding {
    let r = || SdlFormula::atom("r");
    let p = || SdlFormula::atom("p");
    let rule2 = match rule2_scope {
        Scope::Wide => SdlFormula::oblig(SdlFormula::implies(r(), SdlFormula::not(p()))),
        Scope::Narrow => SdlFormula::implies(r(), SdlFormula::oblig(SdlFormula::not(p()))),
    };
    let rule3 = match rule3_scope {
        Scope::Wide => SdlFormula::oblig(SdlFormula::implies(SdlFormula::not(r()), p())),
        Scope::Narrow => SdlFormula::implies(SdlFormula::not(r()), SdlFormula::oblig(p())),
    };
    ChisholmEncoding {
        rule2_scope,
        rule3_scope,
        formulas: [SdlFormula::oblig(r()), rule2, rule3, SdlFormula::not(r())],
    }
}

/// All four scope combinations, wide-first.
pub fn chisholm_encodings() -> Vec<ChisholmEncoding> {
    vec![
        encoding(Scope::Wide, Scope::Wide),
        encoding(Scope::Wide, Scope::Narrow),
        encoding(Scope::Narrow, Scope::Wide),
        encoding(Scope::Narrow, Scope::Narrow),
    ]
}

/// One row of the scope-sensitivity report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChisholmReportRow {
    pub encoding: ChisholmEncoding,
    pub result: TableauResult,
    /// The conditional rule is entailed by the other three formulas: it adds
    /// nothing to the encoding (a dependence defect).
    pub rule2_entailed: bool,
    /// Likewise for the contrary-to-duty rule.
    pub rule3_entailed: bool,
}

/// Runs the prover over every encoding and checks each conditional rule for
/// dependence on the rest of its set.
pub fn chisholm_report(config: &TableauConfig) -> Result<Vec<ChisholmReportRow>, TableauError> {
    chisholm_encodings()
        .into_iter()
        .map(|encoding| {
            let result = consistent(&encoding.formulas, config)?;
            let others = |skip: usize| -> Vec<SdlFormula> {
                encoding
                    .formulas
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, f)| f.clone())
                    .collect()
            };
            let rule2_entailed = entails(&others(1), &encoding.formulas[1], config)?;
            let rule3_entailed = entails(&others(2), &encoding.formulas[2], config)?;
            Ok(ChisholmReportRow { encoding, result, rule2_entailed, rule3_entailed })
        })
        .collect()
}
