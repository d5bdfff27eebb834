//! Admissibility verdicts with exact per-condition margins.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::recip::{parse_rational, Rational};
use num_traits::Zero;

/// How a condition's margin is to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionKind {
    /// Satisfied iff margin > 0.
    Strict,
    /// Satisfied iff margin ≥ 0; margin 0 is a boundary case.
    NonStrict,
    /// Satisfied iff margin = 0; the margin is the signed deviation.
    Equality,
}

/// One admissibility condition with its exact margin (LHS − RHS after
/// normalising so that positive means strictly inside).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub id: String,
    pub kind: ConditionKind,
    #[serde(
        serialize_with = "serialize_rational",
        deserialize_with = "deserialize_rational"
    )]
    pub margin: Rational,
    pub satisfied: bool,
}

/// Outcome of a checker: admissible iff every condition is satisfied.
///
/// `boundary` lists the non-strict conditions met with margin exactly zero,
/// i.e. the tuple sits on the sharp edge of the admissible region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub admissible: bool,
    pub conditions: Vec<Condition>,
    pub boundary: Vec<String>,
}

impl Verdict {
    /// Look up a condition by its stable id.
    pub fn condition(&self, id: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.id == id)
    }

    /// Margin of a condition, panicking on unknown ids (test convenience).
    pub fn margin(&self, id: &str) -> &Rational {
        &self
            .condition(id)
            .unwrap_or_else(|| panic!("no condition {id}"))
            .margin
    }

    /// Ids of the failed conditions in declaration order.
    pub fn failed(&self) -> Vec<&str> {
        self.conditions
            .iter()
            .filter(|c| !c.satisfied)
            .map(|c| c.id.as_str())
            .collect()
    }
}

fn serialize_rational<S: Serializer>(value: &Rational, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&value.to_string())
}

fn deserialize_rational<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
    let text = String::deserialize(de)?;
    parse_rational(&text).map_err(D::Error::custom)
}

/// Accumulates conditions and derives the final verdict.
#[derive(Debug, Default)]
pub(crate) struct VerdictBuilder {
    conditions: Vec<Condition>,
}

impl VerdictBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn strict(&mut self, id: &str, margin: Rational) -> &mut Self {
        let satisfied = margin > Rational::zero();
        self.push(id, ConditionKind::Strict, margin, satisfied)
    }

    pub fn non_strict(&mut self, id: &str, margin: Rational) -> &mut Self {
        let satisfied = margin >= Rational::zero();
        self.push(id, ConditionKind::NonStrict, margin, satisfied)
    }

    /// Non-strict by default, strict when `strict` is set. Used for the
    /// conditions whose strictness depends on the checker mode.
    pub fn ineq(&mut self, id: &str, margin: Rational, strict: bool) -> &mut Self {
        if strict {
            self.strict(id, margin)
        } else {
            self.non_strict(id, margin)
        }
    }

    pub fn equality(&mut self, id: &str, deviation: Rational) -> &mut Self {
        let satisfied = deviation.is_zero();
        self.push(id, ConditionKind::Equality, deviation, satisfied)
    }

    /// A conjunction of inequalities reported as one condition; the margin is
    /// the minimum over the atoms and the kind follows the binding atom.
    pub fn all_of(&mut self, id: &str, atoms: &[(Rational, ConditionKind)]) -> &mut Self {
        assert!(!atoms.is_empty());
        let mut satisfied = true;
        let mut binding: Option<(Rational, ConditionKind)> = None;
        for (margin, kind) in atoms {
            let ok = match kind {
                ConditionKind::Strict => *margin > Rational::zero(),
                ConditionKind::NonStrict => *margin >= Rational::zero(),
                ConditionKind::Equality => margin.is_zero(),
            };
            satisfied &= ok;
            let replace = match &binding {
                None => true,
                Some((m, _)) => margin < m,
            };
            if replace {
                binding = Some((margin.clone(), *kind));
            }
        }
        let (margin, kind) = binding.unwrap();
        self.push(id, kind, margin, satisfied)
    }

    /// A condition that does not apply to the given tuple; recorded as
    /// satisfied with an informational margin.
    pub fn vacuous(&mut self, id: &str, margin: Rational) -> &mut Self {
        self.push(id, ConditionKind::Strict, margin, true)
    }

    fn push(&mut self, id: &str, kind: ConditionKind, margin: Rational, satisfied: bool) -> &mut Self {
        self.conditions.push(Condition {
            id: id.to_string(),
            kind,
            margin,
            satisfied,
        });
        self
    }

    pub fn finish(self) -> Verdict {
        let admissible = self.conditions.iter().all(|c| c.satisfied);
        let boundary = self
            .conditions
            .iter()
            .filter(|c| c.satisfied && c.kind == ConditionKind::NonStrict && c.margin.is_zero())
            .map(|c| c.id.clone())
            .collect();
        Verdict {
            admissible,
            conditions: self.conditions,
            boundary,
        }
    }
}
