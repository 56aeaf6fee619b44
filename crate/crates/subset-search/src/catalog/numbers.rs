use super::{check_nonnegative, selected_sum, Knapsack, LopModel, Model, Partition, Scheduling, SubsetSum};
use crate::element::{ElementId, Universe};
use crate::search::{include_exclude, Search, Step};

/// `suffix[i]` = sum of `values[i..]`.
fn suffix_sums(values: &[i64]) -> Vec<i128> {
    let mut s = vec![0i128; values.len() + 1];
    for i in (0..values.len()).rev() {
        s[i] = s[i + 1] + values[i] as i128;
    }
    s
}

/// Sum of the decided prefix that is taken / left out.
fn prefix_split(values: &[i64], taken: &[bool], depth: usize) -> (i128, i128) {
    let mut inside = 0i128;
    let mut outside = 0i128;
    for i in 0..depth {
        if taken[i] {
            inside += values[i] as i128;
        } else {
            outside += values[i] as i128;
        }
    }
    (inside, outside)
}

pub(super) struct SubsetSumModel<'a>(pub &'a SubsetSum);

impl Model for SubsetSumModel<'_> {
    fn validate(&self, out: &mut Vec<String>) {
        check_nonnegative("numbers", &self.0.values, out);
        check_nonnegative("target", &[self.0.target], out);
    }

    fn elements(&self) -> Vec<ElementId> {
        (0..self.0.values.len() as u32).map(ElementId::Number).collect()
    }

    fn accepts(&self, _u: &Universe, mask: &[bool]) -> bool {
        selected_sum(&self.0.values, mask) == self.0.target as i128
    }

    fn enumerate(&self, search: &mut Search<'_>) -> Step {
        let values = &self.0.values;
        let target = self.0.target as i128;
        let suffix = suffix_sums(values);
        include_exclude(
            search,
            values.len(),
            &mut |taken, depth| {
                let (inside, _) = prefix_split(values, taken, depth);
                inside > target || inside + suffix[depth] < target
            },
            &mut |m| selected_sum(values, m) == target,
        )
    }
}

pub(super) struct KnapsackModel<'a>(pub &'a Knapsack);

impl KnapsackModel<'_> {
    fn profits(&self) -> Vec<i64> {
        self.0.items.iter().map(|it| it.profit).collect()
    }

    fn weights(&self) -> Vec<i64> {
        self.0.items.iter().map(|it| it.weight).collect()
    }

    fn run(&self, search: &mut Search<'_>, need_profit: bool) -> Step {
        let (profits, weights) = (self.profits(), self.weights());
        let capacity = self.0.capacity as i128;
        let min_profit = self.0.min_profit as i128;
        let profit_suffix = suffix_sums(&profits);
        include_exclude(
            search,
            weights.len(),
            &mut |taken, depth| {
                let (w, _) = prefix_split(&weights, taken, depth);
                let (p, _) = prefix_split(&profits, taken, depth);
                w > capacity || (need_profit && p + profit_suffix[depth] < min_profit)
            },
            &mut |m| {
                selected_sum(&weights, m) <= capacity
                    && (!need_profit || selected_sum(&profits, m) >= min_profit)
            },
        )
    }
}

impl Model for KnapsackModel<'_> {
    fn validate(&self, out: &mut Vec<String>) {
        check_nonnegative("profits", &self.profits(), out);
        check_nonnegative("weights", &self.weights(), out);
        check_nonnegative("capacity", &[self.0.capacity], out);
        check_nonnegative("profit bound", &[self.0.min_profit], out);
    }

    fn elements(&self) -> Vec<ElementId> {
        (0..self.0.items.len() as u32).map(ElementId::Object).collect()
    }

    fn accepts(&self, _u: &Universe, mask: &[bool]) -> bool {
        selected_sum(&self.weights(), mask) <= self.0.capacity as i128
            && selected_sum(&self.profits(), mask) >= self.0.min_profit as i128
    }

    fn enumerate(&self, search: &mut Search<'_>) -> Step {
        self.run(search, true)
    }

    fn lop(&self) -> Option<&dyn LopModel> {
        Some(self)
    }
}

impl LopModel for KnapsackModel<'_> {
    fn feasible(&self, _u: &Universe, mask: &[bool]) -> bool {
        selected_sum(&self.weights(), mask) <= self.0.capacity as i128
    }

    /// Profits enter as negative costs so that the bound reads `d(S) <= t`.
    fn cost(&self, e: ElementId) -> i64 {
        match e {
            ElementId::Object(i) => -self.0.items[i as usize].profit,
            _ => unreachable!("knapsack universe holds objects"),
        }
    }

    fn threshold(&self) -> i64 {
        -self.0.min_profit
    }

    fn enumerate_feasible(&self, search: &mut Search<'_>) -> Step {
        self.run(search, false)
    }
}

/// Partition with the last number forced into the chosen half.
pub(super) struct PartitionModel<'a>(pub &'a Partition);

impl Model for PartitionModel<'_> {
    fn validate(&self, out: &mut Vec<String>) {
        check_nonnegative("numbers", &self.0.values, out);
        if self.0.values.is_empty() {
            out.push("partition needs at least one number".into());
        }
    }

    fn elements(&self) -> Vec<ElementId> {
        (0..self.0.values.len() as u32).map(ElementId::Number).collect()
    }

    fn accepts(&self, _u: &Universe, mask: &[bool]) -> bool {
        let total: i128 = self.0.values.iter().map(|&v| v as i128).sum();
        mask[mask.len() - 1] && 2 * selected_sum(&self.0.values, mask) == total
    }

    fn enumerate(&self, search: &mut Search<'_>) -> Step {
        let values = &self.0.values;
        let total: i128 = values.iter().map(|&v| v as i128).sum();
        let suffix = suffix_sums(values);
        include_exclude(
            search,
            values.len(),
            &mut |taken, depth| {
                let (inside, _) = prefix_split(values, taken, depth);
                2 * inside > total || 2 * (inside + suffix[depth]) < total
            },
            &mut |m| m[m.len() - 1] && 2 * selected_sum(values, m) == total,
        )
    }
}

/// Two identical machines, deadline `T`; the last job runs on the first machine.
pub(super) struct SchedulingModel<'a>(pub &'a Scheduling);

impl Model for SchedulingModel<'_> {
    fn validate(&self, out: &mut Vec<String>) {
        check_nonnegative("processing times", &self.0.times, out);
        check_nonnegative("deadline", &[self.0.deadline], out);
        if self.0.times.is_empty() {
            out.push("scheduling needs at least one job".into());
        }
    }

    fn elements(&self) -> Vec<ElementId> {
        (0..self.0.times.len() as u32).map(ElementId::Job).collect()
    }

    fn accepts(&self, _u: &Universe, mask: &[bool]) -> bool {
        let total: i128 = self.0.times.iter().map(|&v| v as i128).sum();
        let first = selected_sum(&self.0.times, mask);
        let deadline = self.0.deadline as i128;
        mask[mask.len() - 1] && first <= deadline && total - first <= deadline
    }

    fn enumerate(&self, search: &mut Search<'_>) -> Step {
        let times = &self.0.times;
        let deadline = self.0.deadline as i128;
        let u = search.universe().clone();
        include_exclude(
            search,
            times.len(),
            &mut |taken, depth| {
                let (first, second) = prefix_split(times, taken, depth);
                first > deadline || second > deadline
            },
            &mut |m| self.accepts(&u, m),
        )
    }
}
