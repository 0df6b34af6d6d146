use super::{Constraint, Edbm, Rel, ZoneSet};
use crate::clock::Clock;
use crate::error::{Error, Result};
use crate::guard::{AtomicConstraint, CmpOp, Guard};
use std::sync::Arc;

type Conj = Vec<Constraint>;

/// The zones whose union is exactly the set of valuations satisfying `g`.
///
/// Works on the negation normal form: a negated atom `!(x ~ c)` also holds
/// when `x` is ⊥, so it splits into the complementary comparisons plus the
/// `x = bot` case.
pub fn guard_to_zones(g: &Guard, clocks: &Arc<[Clock]>) -> Result<ZoneSet> {
    for x in g.clocks() {
        if !clocks.contains(&x) {
            return Err(Error::UnknownClock(x));
        }
    }
    let mut out = ZoneSet::new(clocks.clone());
    for conj in dnf(g, true) {
        out.push(Edbm::from_constraints(clocks.clone(), &conj)?);
    }
    Ok(out)
}

fn dnf(g: &Guard, positive: bool) -> Vec<Conj> {
    match (g, positive) {
        (Guard::True, true) => vec![vec![]],
        (Guard::True, false) => vec![],
        (Guard::Atom(a), true) => vec![vec![atom(a)]],
        (Guard::Atom(a), false) => negated_atom(a),
        (Guard::Not(inner), p) => dnf(inner, !p),
        (Guard::And(a, b), true) | (Guard::Or(a, b), false) => {
            product(dnf(a, positive), dnf(b, positive))
        }
        (Guard::Or(a, b), true) | (Guard::And(a, b), false) => {
            let mut out = dnf(a, positive);
            out.extend(dnf(b, positive));
            out
        }
    }
}

fn product(left: Vec<Conj>, right: Vec<Conj>) -> Vec<Conj> {
    let mut out = Vec::with_capacity(left.len() * right.len());
    for l in &left {
        for r in &right {
            let mut c = l.clone();
            c.extend(r.iter().cloned());
            out.push(c);
        }
    }
    out
}

fn atom(a: &AtomicConstraint) -> Constraint {
    let rel = match a.op {
        CmpOp::Lt => Rel::Lt,
        CmpOp::Eq => Rel::Eq,
        CmpOp::Gt => Rel::Gt,
    };
    Constraint::clock(a.clock.clone(), rel, a.bound as i64)
}

fn negated_atom(a: &AtomicConstraint) -> Vec<Conj> {
    let c = a.bound as i64;
    let x = a.clock.clone();
    let mut out = match a.op {
        CmpOp::Lt => vec![vec![Constraint::clock(x.clone(), Rel::Ge, c)]],
        CmpOp::Gt => vec![vec![Constraint::clock(x.clone(), Rel::Le, c)]],
        CmpOp::Eq => vec![
            vec![Constraint::clock(x.clone(), Rel::Lt, c)],
            vec![Constraint::clock(x.clone(), Rel::Gt, c)],
        ],
    };
    out.push(vec![Constraint::Bot(x)]);
    out
}
