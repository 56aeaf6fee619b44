use super::{chosen, FacilityLocation, FacilitySelection, Model};
use crate::element::{ElementId, Universe};
use crate::search::{include_exclude, Search, Step};

fn validate_matrix(clients: u32, facilities: u32, service: &[Vec<i64>], out: &mut Vec<String>) {
    if service.len() != clients as usize {
        out.push(format!("service matrix has {} rows for {clients} clients", service.len()));
    }
    for (i, row) in service.iter().enumerate() {
        if row.len() != facilities as usize {
            out.push(format!("service row {i} has {} entries for {facilities} facilities", row.len()));
        }
    }
}

/// Cheapest service cost of each client from the open facilities; `None`
/// when there are clients but nothing is open.
fn best_service(service: &[Vec<i64>], open: &[bool]) -> Option<Vec<i128>> {
    service
        .iter()
        .map(|row| chosen(open).map(|j| row[j] as i128).min())
        .collect()
}

pub(super) struct FacilityLocationModel<'a>(pub &'a FacilityLocation);

impl Model for FacilityLocationModel<'_> {
    fn validate(&self, out: &mut Vec<String>) {
        let f = self.0;
        validate_matrix(f.clients, f.facilities, &f.service, out);
        if f.opening.len() != f.facilities as usize {
            out.push(format!("{} opening costs for {} facilities", f.opening.len(), f.facilities));
        }
    }

    fn elements(&self) -> Vec<ElementId> {
        (0..self.0.facilities).map(ElementId::Facility).collect()
    }

    fn accepts(&self, _u: &Universe, mask: &[bool]) -> bool {
        let Some(service) = best_service(&self.0.service, mask) else {
            return false;
        };
        let opening: i128 = chosen(mask).map(|j| self.0.opening[j] as i128).sum();
        opening + service.iter().sum::<i128>() <= self.0.k as i128
    }

    fn enumerate(&self, search: &mut Search<'_>) -> Step {
        let u = search.universe().clone();
        include_exclude(search, self.0.facilities as usize, &mut |_, _| false, &mut |m| {
            self.accepts(&u, m)
        })
    }
}

/// p-center (`center = true`, bottleneck objective) and p-median (sum objective).
pub(super) struct SelectionModel<'a> {
    pub inst: &'a FacilitySelection,
    pub center: bool,
}

impl Model for SelectionModel<'_> {
    fn validate(&self, out: &mut Vec<String>) {
        let f = self.inst;
        validate_matrix(f.clients, f.facilities, &f.service, out);
        if f.p < 0 {
            out.push(format!("p must be nonnegative, found {}", f.p));
        }
    }

    fn elements(&self) -> Vec<ElementId> {
        (0..self.inst.facilities).map(ElementId::Facility).collect()
    }

    fn accepts(&self, _u: &Universe, mask: &[bool]) -> bool {
        if chosen(mask).count() as i64 > self.inst.p {
            return false;
        }
        let Some(service) = best_service(&self.inst.service, mask) else {
            return false;
        };
        let objective = if self.center {
            service.iter().copied().max().unwrap_or(0)
        } else {
            service.iter().sum()
        };
        objective <= self.inst.k as i128
    }

    fn enumerate(&self, search: &mut Search<'_>) -> Step {
        let u = search.universe().clone();
        let p = self.inst.p;
        include_exclude(
            search,
            self.inst.facilities as usize,
            &mut |taken, _| chosen(taken).count() as i64 > p,
            &mut |m| self.accepts(&u, m),
        )
    }
}
