//! The example networks shipped with the crate and the values they are
//! known to produce.

use crate::netspec::{self, Value};
use crate::rational::{self, Prob};

/// A netspec source file bundled into the binary.
#[derive(Debug, Clone, Copy)]
pub struct CorpusFile {
    pub name: &'static str,
    pub source: &'static str,
}

pub const FILES: &[CorpusFile] = &[
    CorpusFile {
        name: "disease.netspec",
        source: include_str!("../corpus/disease.netspec"),
    },
    CorpusFile {
        name: "disease_certainty.netspec",
        source: include_str!("../corpus/disease_certainty.netspec"),
    },
    CorpusFile {
        name: "halpern.netspec",
        source: include_str!("../corpus/halpern.netspec"),
    },
    CorpusFile {
        name: "barber.netspec",
        source: include_str!("../corpus/barber.netspec"),
    },
    CorpusFile {
        name: "dietrich.netspec",
        source: include_str!("../corpus/dietrich.netspec"),
    },
];

/// A file that must be rejected: its prior does not sum to 1.
pub const MALFORMED: CorpusFile = CorpusFile {
    name: "malformed_weights.netspec",
    source: include_str!("../corpus/malformed_weights.netspec"),
};

pub fn file(name: &str) -> Option<&'static CorpusFile> {
    FILES.iter().find(|f| f.name == name || f.name.strip_suffix(".netspec") == Some(name))
}

#[derive(Debug, Clone, Copy)]
pub enum Expected {
    /// Exact weights per element; unlisted elements are zero.
    State(&'static [(&'static str, &'static str)]),
    Scalar(&'static str),
    /// The weight of one element, rounded to `digits` decimal places.
    Rounded {
        element: &'static str,
        digits: usize,
        value: &'static str,
    },
}

#[derive(Debug, Clone, Copy)]
pub struct Example {
    pub label: &'static str,
    pub file: &'static str,
    pub query: &'static str,
    pub expected: Expected,
}

const fn ex(label: &'static str, file: &'static str, query: &'static str, expected: Expected) -> Example {
    Example {
        label,
        file,
        query,
        expected,
    }
}

use Expected::{Rounded, Scalar, State as St};

pub const EXAMPLES: &[Example] = &[
    ex("disease prior echo", "disease", "identity", St(&[("d", "1/100"), ("~d", "99/100")])),
    ex("positive test chance", "disease", "predicted", St(&[("t", "117/2000"), ("~t", "1883/2000")])),
    ex("disease given positive", "disease", "given_t", St(&[("d", "18/117"), ("~d", "99/117")])),
    ex("disease given negative", "disease", "given_not_t", St(&[("d", "2/1883"), ("~d", "1881/1883")])),
    ex("disease pearl", "disease", "pearl_posterior", St(&[("d", "148/4702"), ("~d", "4554/4702")])),
    ex(
        "disease jeffrey",
        "disease",
        "jeffrey_posterior",
        St(&[("d", "27162/220311"), ("~d", "193149/220311")]),
    ),
    ex(
        "certainty predicted",
        "disease_certainty",
        "predicted_certainty",
        St(&[("c", "4702/20000"), ("~c", "15298/20000")]),
    ),
    ex(
        "certainty validity",
        "disease_certainty",
        "certainty_validity",
        Scalar("4702/20000"),
    ),
    ex(
        "certainty node conditioning",
        "disease_certainty",
        "certain_posterior",
        St(&[("d", "148/4702"), ("~d", "4554/4702")]),
    ),
    ex(
        "halpern jeffrey",
        "halpern",
        "jeffrey_posterior",
        St(&[("r", "1/10"), ("b", "7/20"), ("g", "7/20"), ("y", "1/5")]),
    ),
    ex(
        "halpern pearl",
        "halpern",
        "pearl_posterior",
        St(&[("r", "3/23"), ("b", "7/23"), ("g", "7/23"), ("y", "6/23")]),
    ),
    ex(
        "halpern all things considered",
        "halpern",
        "all_things",
        St(&[("r", "1/10"), ("b", "7/20"), ("g", "7/20"), ("y", "1/5")]),
    ),
    ex(
        "halpern nothing else considered",
        "halpern",
        "nothing_else",
        St(&[("r", "3/23"), ("b", "7/23"), ("g", "7/23"), ("y", "6/23")]),
    ),
    ex(
        "barber jeffrey",
        "barber",
        "jeffrey_burglar",
        Rounded {
            element: "b",
            digits: 3,
            value: "0.693",
        },
    ),
    ex(
        "barber pearl",
        "barber",
        "pearl_burglar",
        Rounded {
            element: "b",
            digits: 4,
            value: "0.0229",
        },
    ),
    ex("dietrich base rate", "dietrich", "base_rate", St(&[("c", "1/2"), ("~c", "1/2")])),
    ex(
        "dietrich experience only",
        "dietrich",
        "experience_only",
        St(&[("c", "4/5"), ("~c", "1/5")]),
    ),
    ex(
        "dietrich adjusted joint",
        "dietrich",
        "omega_prime",
        St(&[("c,e", "1/10"), ("c,~e", "1/40"), ("~c,e", "7/40"), ("~c,~e", "7/10")]),
    ),
    ex("dietrich final", "dietrich", "final", St(&[("c", "4/11"), ("~c", "7/11")])),
];

/// What running one example produced.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub example: Example,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

fn literal(text: &str) -> Prob {
    rational::parse_literal(text).expect("expected values are valid literals")
}

impl Expected {
    pub fn describe(&self) -> String {
        match self {
            Expected::State(pairs) => pairs
                .iter()
                .map(|(e, w)| format!("{w}|{e}>"))
                .collect::<Vec<_>>()
                .join(" + "),
            Expected::Scalar(v) => v.to_string(),
            Expected::Rounded { element, value, .. } => format!("{value}|{element}> (rounded)"),
        }
    }

    /// Compares exactly, or after rounding for [`Expected::Rounded`].
    pub fn matches(&self, value: &Value) -> bool {
        match (self, value) {
            (Expected::State(pairs), Value::State(s)) => s.space().elements().iter().zip(s.weights()).all(|(e, w)| {
                let want = pairs
                    .iter()
                    .find(|(k, _)| k == e)
                    .map_or_else(rational::zero, |(_, v)| literal(v));
                *w == want
            }) && pairs.iter().all(|(k, _)| s.space().contains(k)),
            (Expected::Scalar(v), Value::Scalar(x)) => *x == literal(v),
            (Expected::Rounded { element, digits, value }, Value::State(s)) => s
                .weight(element)
                .map(|w| rational::round_to(w, *digits) == literal(value))
                .unwrap_or(false),
            _ => false,
        }
    }
}

impl Example {
    pub fn run(&self) -> Outcome {
        let expected = self.expected.describe();
        let actual = file(self.file)
            .ok_or_else(|| format!("no corpus file `{}`", self.file))
            .and_then(|f| {
                let env = netspec::load(f.source).map_err(|d| d[0].to_string())?;
                env.evaluate(self.query).map_err(|e| e.to_string())
            });
        match actual {
            Ok(value) => {
                let passed = self.expected.matches(&value);
                let actual = match self.expected {
                    Expected::Rounded { digits, .. } => value.render_decimal(digits + 2, false),
                    _ => value.render(false),
                };
                Outcome {
                    example: *self,
                    expected,
                    actual,
                    passed,
                }
            }
            Err(message) => Outcome {
                example: *self,
                expected,
                actual: format!("error: {message}"),
                passed: false,
            },
        }
    }
}

pub fn run_all() -> Vec<Outcome> {
    EXAMPLES.iter().map(Example::run).collect()
}
