use super::sat::{cnf_of, literal_index};
use crate::catalog::{Instance, Knapsack, KnapsackItem, Partition, Payload, Scheduling, SubsetSum};
use crate::element::{ElementId, Lit};
use crate::error::{Error, Result};

type Built = (Payload, Vec<(ElementId, ElementId)>);

/// Base-10 numbers with one digit per variable, then one per clause; at most
/// 18 digits so every number fits in an `i64`.
const MAX_DIGITS: usize = 18;

pub(super) fn three_sat_to_subset_sum(x: &Instance) -> Result<Built> {
    let cnf = cnf_of(x);
    let n = cnf.num_vars as usize;
    let m = cnf.clauses.len();
    let digits = n + m;
    if digits > MAX_DIGITS {
        return Err(Error::ConstructionOverflow(format!(
            "{digits} digits exceed the {MAX_DIGITS} that fit in 64 bits"
        )));
    }
    let place = |column: usize| 10i64.pow((digits - 1 - column) as u32);
    let mut values = vec![0i64; 2 * n + 2 * m];
    for v in 1..=cnf.num_vars {
        for l in [Lit::pos(v), Lit::neg(v)] {
            values[literal_index(l) as usize] += place(v as usize - 1);
        }
    }
    for (j, clause) in cnf.clauses.iter().enumerate() {
        for &l in clause {
            values[literal_index(l) as usize] += place(n + j);
        }
        values[2 * n + 2 * j] = place(n + j);
        values[2 * n + 2 * j + 1] = 2 * place(n + j);
    }
    let target = (0..n).map(place).sum::<i64>() + (n..digits).map(|c| 4 * place(c)).sum::<i64>();
    let pairs = (1..=cnf.num_vars)
        .flat_map(|v| [Lit::pos(v), Lit::neg(v)])
        .map(|l| (ElementId::Literal(l), ElementId::Number(literal_index(l))))
        .collect();
    Ok((Payload::SubsetSum(SubsetSum { values, target }), pairs))
}

fn subset_sum_of(x: &Instance) -> &SubsetSum {
    match x.payload() {
        Payload::SubsetSum(s) => s,
        other => unreachable!("kind checked before construction, got {}", other.kind()),
    }
}

fn numbers(len: usize, target: fn(u32) -> ElementId) -> Vec<(ElementId, ElementId)> {
    (0..len as u32).map(|i| (ElementId::Number(i), target(i))).collect()
}

pub(super) fn subset_sum_to_knapsack(x: &Instance) -> Result<Built> {
    let s = subset_sum_of(x);
    let target = Knapsack {
        items: s.values.iter().map(|&a| KnapsackItem { profit: a, weight: a }).collect(),
        capacity: s.target,
        min_profit: s.target,
    };
    Ok((Payload::Knapsack(target), numbers(s.values.len(), ElementId::Object)))
}

/// Appends `M+1` and `Σ+1-M`; the last number marks the chosen side. A target
/// above `Σ` is first lowered to `Σ+1`, which keeps the instance unsolvable.
pub(super) fn subset_sum_to_partition(x: &Instance) -> Result<Built> {
    let s = subset_sum_of(x);
    let overflow = || Error::ConstructionOverflow("partition numbers exceed 64 bits".into());
    let total = s.values.iter().try_fold(0i64, |acc, &v| acc.checked_add(v)).ok_or_else(overflow)?;
    let bound = total.checked_add(1).ok_or_else(overflow)?;
    let goal = s.target.min(bound);
    let mut values = s.values.clone();
    values.push(goal.checked_add(1).ok_or_else(overflow)?);
    values.push(bound - goal);
    values
        .iter()
        .try_fold(0i64, |acc, &v| acc.checked_add(v))
        .ok_or_else(overflow)?;
    Ok((Payload::Partition(Partition { values }), numbers(s.values.len(), ElementId::Number)))
}

pub(super) fn partition_to_scheduling(x: &Instance) -> Result<Built> {
    let Payload::Partition(p) = x.payload() else {
        unreachable!("kind checked before construction")
    };
    let total = p
        .values
        .iter()
        .try_fold(0i64, |acc, &v| acc.checked_add(v))
        .ok_or_else(|| Error::ConstructionOverflow("sum of processing times".into()))?;
    let target = Scheduling {
        times: p.values.clone(),
        deadline: total / 2,
    };
    Ok((Payload::TwoMachineScheduling(target), numbers(p.values.len(), ElementId::Job)))
}
