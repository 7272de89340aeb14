//! Instance tallies and counterexample shrinking.

use serde_json::{json, Value};

use crate::error::Result;

/// Upper bound on accepted shrink steps, a guard against cycles.
const MAX_SHRINK_STEPS: usize = 200;

/// Something a law can be evaluated on.
pub trait Instance: Clone {
    /// Strictly simpler candidates, most aggressive first.
    fn shrink(&self) -> Vec<Self>;
    fn to_json(&self) -> Value;
}

/// A fixed fixture with nothing to shrink.
#[derive(Clone, Debug)]
pub struct Fixture(pub Value);

impl Instance for Fixture {
    fn shrink(&self) -> Vec<Self> {
        Vec::new()
    }

    fn to_json(&self) -> Value {
        self.0.clone()
    }
}

/// `Ok(None)` is a pass; `Ok(Some(detail))` a failure with a description.
pub type Verdict = Result<Option<Value>>;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Tally {
    pub generated: u64,
    pub passed: u64,
    pub counterexample: Option<Value>,
}

impl Tally {
    /// Evaluates one instance. The first failure is shrunk and kept.
    pub fn check<I: Instance>(&mut self, inst: I, law: impl Fn(&I) -> Verdict) -> Result<()> {
        self.generated += 1;
        let Some(detail) = law(&inst)? else {
            self.passed += 1;
            return Ok(());
        };
        if self.counterexample.is_none() {
            let (small, detail) = shrink(inst, detail, &law);
            self.counterexample = Some(json!({ "instance": small.to_json(), "detail": detail }));
        }
        Ok(())
    }
}

/// Greedy descent: move to the first failing candidate until none fails.
/// Candidates that raise errors count as passing.
pub fn shrink<I: Instance>(mut inst: I, mut detail: Value, law: &impl Fn(&I) -> Verdict) -> (I, Value) {
    for _ in 0..MAX_SHRINK_STEPS {
        let next = inst.shrink().into_iter().find_map(|c| match law(&c) {
            Ok(Some(d)) => Some((c, d)),
            _ => None,
        });
        match next {
            Some((c, d)) => {
                inst = c;
                detail = d;
            }
            None => break,
        }
    }
    (inst, detail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Clone, Debug, PartialEq)]
    struct Num(u32);

    impl Instance for Num {
        fn shrink(&self) -> Vec<Self> {
            if self.0 == 0 {
                vec![]
            } else {
                vec![Num(self.0 / 2), Num(self.0 - 1)]
            }
        }

        fn to_json(&self) -> Value {
            json!(self.0)
        }
    }

    #[test]
    fn shrinks_to_the_boundary() {
        let law = |n: &Num| -> Verdict { Ok((n.0 >= 13).then(|| json!("big"))) };
        let mut t = Tally::default();
        for n in [3, 100, 7, 50] {
            t.check(Num(n), law).unwrap();
        }
        assert_eq!((t.generated, t.passed), (4, 2));
        assert_eq!(t.counterexample.unwrap()["instance"], json!(13));
    }

    #[test]
    fn passing_tally_has_no_counterexample() {
        let mut t = Tally::default();
        t.check(Fixture(json!("x")), |_| Ok(None)).unwrap();
        assert_eq!(t, Tally { generated: 1, passed: 1, counterexample: None });
    }
}
