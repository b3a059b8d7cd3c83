use std::collections::HashMap;
use std::sync::Arc;

use crate::ringkit::{Ideal, RingHom};

use super::{Chevalley, GroupElement, GroupError, Subgroup};

/// A subgroup `H ≤ G(R)` stored as its image `H̄ ≤ G(R/J)`, one lift per
/// image element, and the kernel `H ∩ G(R, J)`.
///
/// Used when `H` is too large to enumerate but both fibres are not.
#[derive(Clone, Debug)]
pub struct FiberedSubgroup {
    gens: Vec<GroupElement>,
    residue: Arc<Chevalley>,
    reduction: RingHom,
    image: Subgroup,
    /// Image element -> (lift, lift⁻¹).
    lifts: HashMap<GroupElement, (GroupElement, GroupElement)>,
    kernel: Subgroup,
}

impl FiberedSubgroup {
    /// `residue` must be the group over `R/J` and `reduction` the quotient map.
    pub fn generate(
        g: &Chevalley,
        residue: &Arc<Chevalley>,
        reduction: &RingHom,
        level: &Ideal,
        gens: &[GroupElement],
        budget: usize,
    ) -> Result<FiberedSubgroup, GroupError> {
        let bar: Vec<GroupElement> = gens.iter().map(|x| g.map(x, reduction, residue)).collect();
        let gens_inv: Vec<GroupElement> = gens.iter().map(|s| g.inverse(s)).collect();
        let id = g.identity();
        let mut lifts = HashMap::from([(residue.identity(), (id.clone(), id))]);
        let mut queue = vec![residue.identity()];
        let mut kernel = Subgroup::trivial(g);
        let mut head = 0;
        while head < queue.len() {
            let y = queue[head].clone();
            head += 1;
            let (t, t_inv) = lifts[&y].clone();
            for ((s, s_inv), sb) in gens.iter().zip(&gens_inv).zip(&bar) {
                let ys = residue.mul(sb, &y);
                let lift = g.mul(s, &t);
                match lifts.get(&ys) {
                    Some((_, existing_inv)) => {
                        // Schreier generator t(ys)⁻¹ · s · t(y)
                        let k = g.mul(existing_inv, &lift);
                        debug_assert!(g.is_congruent(&k, level));
                        kernel.extend_with(g, &k, budget)?;
                    }
                    None => {
                        if lifts.len() >= budget {
                            return Err(GroupError::BudgetExceeded { partial: lifts.len(), budget });
                        }
                        lifts.insert(ys.clone(), (lift, g.mul(&t_inv, s_inv)));
                        queue.push(ys);
                    }
                }
            }
        }
        let image = Subgroup::from_parts(queue, bar);
        Ok(FiberedSubgroup {
            gens: gens.to_vec(),
            residue: residue.clone(),
            reduction: reduction.clone(),
            image,
            lifts,
            kernel,
        })
    }

    pub fn len(&self) -> usize {
        self.image.len() * self.kernel.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn gens(&self) -> &[GroupElement] {
        &self.gens
    }

    pub fn image(&self) -> &Subgroup {
        &self.image
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn contains(&self, g: &Chevalley, x: &GroupElement) -> bool {
        let xb = g.map(x, &self.reduction, &self.residue);
        match self.lifts.get(&xb) {
            Some((_, t_inv)) => self.kernel.contains(&g.mul(t_inv, x)),
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::tests::ctx;
    use crate::grp::{e_sigma, e_sigma_gens};
    use crate::nets::Net;
    use crate::ringkit::RingSpec;

    #[test]
    fn fibres_multiply_to_the_enumerated_order() {
        let g = ctx("A2", RingSpec::Zmod { n: 4 });
        let rs = g.rs().clone();
        let ring = g.ring().clone();
        let delta = rs.parse_subsystem(&["a1", "-a1"]).unwrap();
        let mut sigma = vec![Ideal::parse(&ring, &["2"]).unwrap(); rs.num_roots()];
        for &a in delta.members() {
            sigma[a] = Ideal::whole(&ring);
        }
        let net = Net::strict(&delta, &ring, sigma).unwrap();
        let j = ring.jacobson_radical();
        let reduction = ring.quotient(&j).unwrap();
        let residue = Chevalley::new(g.sc(), &reduction.target);
        let gens = e_sigma_gens(&g, &net);
        let fib = FiberedSubgroup::generate(&g, &residue, &reduction, &j, &gens, 100_000).unwrap();
        let full = e_sigma(&g, &net, 100_000).unwrap();
        assert_eq!(fib.len(), full.len());
        assert!(full.elements().iter().all(|x| fib.contains(&g, x)));
        let outside = g.x(rs.parse_root("a2").unwrap(), ring.one());
        assert!(!fib.contains(&g, &outside));
    }
}
