use std::cell::{OnceCell, RefCell};
use std::collections::BTreeMap;

use super::Setup;
use crate::grp::{
    e_hat_gens, e_sigma, full_group, g_sigma, s_sigma, s_sigma_by_factors, torus_times_e, w_bar_sigma,
    GroupError, LocalFactors, Subgroup,
};

type Cached = OnceCell<Result<Subgroup, GroupError>>;

/// A resolved scenario plus lazily materialized subgroups.
pub struct Context {
    pub setup: Setup,
    factors: OnceCell<LocalFactors>,
    full: Cached,
    e: Cached,
    e_hat: Cached,
    s: Cached,
    g: Cached,
    te: Cached,
    w: Cached,
    extra_sizes: RefCell<BTreeMap<String, usize>>,
}

fn get(
    cell: &Cached,
    f: impl FnOnce() -> Result<Subgroup, GroupError>,
) -> Result<&Subgroup, GroupError> {
    cell.get_or_init(f).as_ref().map_err(Clone::clone)
}

impl Context {
    pub fn new(setup: Setup) -> Context {
        Context {
            setup,
            factors: OnceCell::new(),
            full: OnceCell::new(),
            e: OnceCell::new(),
            e_hat: OnceCell::new(),
            s: OnceCell::new(),
            g: OnceCell::new(),
            te: OnceCell::new(),
            w: OnceCell::new(),
            extra_sizes: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn factors(&self) -> &LocalFactors {
        self.factors.get_or_init(|| LocalFactors::new(&self.setup.group))
    }

    pub fn full(&self) -> Result<&Subgroup, GroupError> {
        get(&self.full, || full_group(&self.setup.group, self.setup.budget))
    }

    pub fn e(&self) -> Result<&Subgroup, GroupError> {
        get(&self.e, || e_sigma(&self.setup.group, &self.setup.net, self.setup.budget))
    }

    pub fn e_hat(&self) -> Result<&Subgroup, GroupError> {
        get(&self.e_hat, || {
            Subgroup::generate(&self.setup.group, &e_hat_gens(&self.setup.group, &self.setup.net), self.setup.budget)
        })
    }

    /// `S(σ)`: a filter on the full group for local rings, assembled from
    /// the local factors otherwise.
    pub fn s(&self) -> Result<&Subgroup, GroupError> {
        get(&self.s, || {
            let setup = &self.setup;
            if self.factors().len() == 1 {
                Ok(s_sigma(&setup.group, &setup.net, self.full()?))
            } else {
                s_sigma_by_factors(&setup.group, &setup.net, self.factors(), setup.budget)
            }
        })
    }

    pub fn g_sigma(&self) -> Result<&Subgroup, GroupError> {
        get(&self.g, || g_sigma(&self.setup.group, &self.setup.net, self.factors(), self.setup.budget))
    }

    /// `T(R) E(σ)` as a product set.
    pub fn te(&self) -> Result<&Subgroup, GroupError> {
        if self.factors().len() == 1 {
            return self.g_sigma();
        }
        get(&self.te, || torus_times_e(&self.setup.group, &self.setup.net, self.setup.budget))
    }

    pub fn w_bar_sigma(&self) -> Result<&Subgroup, GroupError> {
        get(&self.w, || w_bar_sigma(&self.setup.group, &self.setup.net, self.setup.budget))
    }

    pub fn record_size(&self, name: &str, size: usize) {
        self.extra_sizes.borrow_mut().insert(name.to_string(), size);
    }

    /// Orders of everything materialized so far.
    pub fn sizes(&self) -> BTreeMap<String, usize> {
        let mut out = self.extra_sizes.borrow().clone();
        let named: [(&str, &Cached); 7] = [
            ("G", &self.full),
            ("E(σ)", &self.e),
            ("Ê(σ)", &self.e_hat),
            ("S(σ)", &self.s),
            ("G(σ)", &self.g),
            ("T·E(σ)", &self.te),
            ("W̄(Φ,σ)", &self.w),
        ];
        for (name, cell) in named {
            if let Some(Ok(sub)) = cell.get() {
                out.insert(name.to_string(), sub.len());
            }
        }
        out
    }
}
