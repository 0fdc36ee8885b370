use serde_json::{json, Value};

use crate::bits::BitString;
use crate::error::{Error, Result};

/// Schema tag carried by every serialized transcript record.
pub const TRANSCRIPT_SCHEMA: &str = "meqsim.transcript.v1";

/// A modified equality query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeqQuery {
    /// `x_i ⊕ y = x_j ⊕ z ?`
    Pair { i: usize, j: usize, y: BitString, z: BitString },
    /// `x_i ⊕ y = z ?`
    Single { i: usize, y: BitString, z: BitString },
}

impl MeqQuery {
    pub fn pair(i: usize, j: usize, y: BitString, z: BitString) -> Self {
        MeqQuery::Pair { i, j, y, z }
    }

    pub fn single(i: usize, y: BitString, z: BitString) -> Self {
        MeqQuery::Single { i, y, z }
    }

    /// Plain equality `x_i = x_j`.
    pub fn eq(i: usize, j: usize, n: usize) -> Self {
        MeqQuery::Pair { i, j, y: BitString::zeros(n), z: BitString::zeros(n) }
    }

    pub fn validate(&self, k: usize, n: usize) -> Result<()> {
        let (players, y, z): (&[usize], _, _) = match self {
            MeqQuery::Pair { i, j, y, z } => {
                if i == j {
                    return Err(Error::InvalidQuery(format!("pair query compares player {i} with itself")));
                }
                (&[*i, *j], y, z)
            }
            MeqQuery::Single { i, y, z } => (std::slice::from_ref(i), y, z),
        };
        if let Some(p) = players.iter().find(|&&p| p >= k) {
            return Err(Error::InvalidQuery(format!("player {p} out of range for k = {k}")));
        }
        for s in [y, z] {
            if s.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: s.len() });
            }
        }
        Ok(())
    }

    fn to_json(self) -> Value {
        match self {
            MeqQuery::Pair { i, j, y, z } => json!({
                "form": "pair", "i": i, "j": j, "y": y.to_hex(), "z": z.to_hex(),
            }),
            MeqQuery::Single { i, y, z } => json!({
                "form": "single", "i": i, "y": y.to_hex(), "z": z.to_hex(),
            }),
        }
    }

    fn from_json(v: &Value, n: usize) -> Result<Self> {
        let field = |name: &str| v.get(name).ok_or_else(|| Error::Parse(format!("missing field {name:?}")));
        let index = |name: &str| -> Result<usize> {
            field(name)?.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse(format!("{name:?} is not an index")))
        };
        let bits = |name: &str| -> Result<BitString> {
            let s = field(name)?.as_str().ok_or_else(|| Error::Parse(format!("{name:?} is not a string")))?;
            BitString::from_hex(n, s)
        };
        match field("form")?.as_str() {
            Some("pair") => Ok(MeqQuery::pair(index("i")?, index("j")?, bits("y")?, bits("z")?)),
            Some("single") => Ok(MeqQuery::single(index("i")?, bits("y")?, bits("z")?)),
            other => Err(Error::Parse(format!("unknown query form {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TranscriptEntry {
    pub query: MeqQuery,
    /// `true` means the referee concluded "equal".
    pub outcome: bool,
    /// Probability of `outcome` given all earlier outcomes.
    pub conditional_probability: f64,
    /// Probability of `outcome` had this measurement been applied to the
    /// initial register, when computed.
    pub initial_state_probability: Option<f64>,
}

/// Ordered record of the queries executed in one run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Transcript {
    pub entries: Vec<TranscriptEntry>,
}

impl Transcript {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, query: MeqQuery, outcome: bool, conditional_probability: f64) {
        self.entries.push(TranscriptEntry { query, outcome, conditional_probability, initial_state_probability: None });
    }

    /// Probability of the whole outcome sequence: the product of the
    /// conditional probabilities.
    pub fn probability(&self) -> f64 {
        self.entries.iter().map(|e| e.conditional_probability).product()
    }

    pub fn outcomes(&self) -> Vec<bool> {
        self.entries.iter().map(|e| e.outcome).collect()
    }

    /// One JSON record per query.
    pub fn to_records(&self, n: usize) -> Vec<Value> {
        self.entries
            .iter()
            .enumerate()
            .map(|(step, e)| {
                let mut v = e.query.to_json();
                let obj = v.as_object_mut().unwrap();
                obj.insert("schema".into(), json!(TRANSCRIPT_SCHEMA));
                obj.insert("step".into(), json!(step));
                obj.insert("n".into(), json!(n));
                obj.insert("outcome".into(), json!(e.outcome as u8));
                obj.insert("conditional_probability".into(), json!(e.conditional_probability));
                obj.insert("initial_state_probability".into(), json!(e.initial_state_probability));
                v
            })
            .collect()
    }

    pub fn to_jsonl(&self, n: usize) -> String {
        self.to_records(n).iter().map(|r| format!("{r}\n")).collect()
    }

    pub fn from_jsonl(text: &str) -> Result<Self> {
        let mut t = Transcript::default();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let v: Value = serde_json::from_str(line).map_err(|e| Error::Parse(e.to_string()))?;
            if v.get("schema").and_then(Value::as_str) != Some(TRANSCRIPT_SCHEMA) {
                return Err(Error::Parse("record without the transcript schema tag".into()));
            }
            let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| Error::Parse("missing \"n\"".into()))? as usize;
            let outcome = match v.get("outcome").and_then(Value::as_u64) {
                Some(0) => false,
                Some(1) => true,
                _ => return Err(Error::Parse("outcome must be 0 or 1".into())),
            };
            let p = v
                .get("conditional_probability")
                .and_then(Value::as_f64)
                .ok_or_else(|| Error::Parse("missing conditional_probability".into()))?;
            t.entries.push(TranscriptEntry {
                query: MeqQuery::from_json(&v, n)?,
                outcome,
                conditional_probability: p,
                initial_state_probability: v.get("initial_state_probability").and_then(Value::as_f64),
            });
        }
        Ok(t)
    }
}
