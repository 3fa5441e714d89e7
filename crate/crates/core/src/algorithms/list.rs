use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::error::{Result, SlcError};
use crate::model::Schedule;

/// Job order fed to the list-scheduling rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ListOrder {
    /// Jobs in index order.
    #[default]
    Input,
    /// Longest processing time first, ties by index.
    Lpt,
}

impl ListOrder {
    pub(crate) fn order(self, times: &[f64]) -> Vec<usize> {
        let mut order: Vec<usize> = (0..times.len()).collect();
        if self == ListOrder::Lpt {
            order.sort_by(|&a, &b| times[b].total_cmp(&times[a]).then(a.cmp(&b)));
        }
        order
    }
}

#[derive(PartialEq)]
struct Slot(f64, usize);

impl Eq for Slot {}

impl PartialOrd for Slot {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slot {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

/// Greedy rule: each job in `order` goes to a least-loaded machine, lowest index
/// on ties. `loads` is updated in place.
pub(crate) fn assign_in_order(
    times: &[f64],
    loads: &mut [f64],
    order: impl IntoIterator<Item = usize>,
    assignment: &mut [usize],
) {
    let mut heap: BinaryHeap<Reverse<Slot>> = loads
        .iter()
        .enumerate()
        .map(|(j, &l)| Reverse(Slot(l, j)))
        .collect();
    for job in order {
        let Reverse(Slot(load, machine)) = heap.pop().expect("at least one machine");
        let load = load + times[job];
        loads[machine] = load;
        assignment[job] = machine;
        heap.push(Reverse(Slot(load, machine)));
    }
}

/// List-schedules every job of `times` in the given `order`.
///
/// With a `preload`, machines start at those loads and the returned loads and
/// makespan include them.
pub fn list_schedule(
    times: &[f64],
    machines: usize,
    preload: Option<&[f64]>,
    order: &[usize],
) -> Result<Schedule> {
    if machines == 0 {
        return Err(SlcError::InvalidArgument(
            "machine count must be positive".into(),
        ));
    }
    let n = times.len();
    let mut seen = vec![false; n];
    for &j in order {
        if j >= n || std::mem::replace(&mut seen[j], true) {
            return Err(SlcError::InvalidArgument(
                "order must be a permutation of the jobs".into(),
            ));
        }
    }
    if order.len() != n {
        return Err(SlcError::InvalidArgument(
            "order must be a permutation of the jobs".into(),
        ));
    }
    let mut loads = match preload {
        Some(p) if p.len() != machines => {
            return Err(SlcError::InvalidArgument(format!(
                "preload has {} entries for {machines} machines",
                p.len()
            )))
        }
        Some(p) => p.to_vec(),
        None => vec![0.0; machines],
    };
    let mut assignment = vec![0; n];
    assign_in_order(times, &mut loads, order.iter().copied(), &mut assignment);
    let makespan = loads.iter().copied().fold(0.0, f64::max);
    Ok(Schedule::from_parts(assignment, loads, makespan))
}
