//! Multiplicative subgroups of F_q^× and their cosets.
//!
//! For every divisor d of q-1 there is a unique subgroup of order d: the set
//! of e-th powers, where e = (q-1)/d is the index. Cosets are labeled by the
//! residue of the discrete log mod e, pinned to the context's generator so
//! that labeling is deterministic.

use serde::Serialize;

use crate::bitset::Bitset;
use crate::ffield::FieldCtx;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("{d} does not divide the group order {group}")]
    NotADivisor { d: u64, group: u64 },
    #[error("the zero element lies in no coset")]
    ZeroElement,
}

/// The unique subgroup of order d, materialized as both an element list (in
/// generator-exponent order) and a membership bitset over encodings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupHandle {
    ctx_id: u32,
    q: u32,
    d: u32,
    e: u32,
    elements: Vec<u32>,
    membership: Bitset,
}

impl SubgroupHandle {
    pub fn d(&self) -> u32 {
        self.d
    }

    /// The index e = (q-1)/d, which is also the number of cosets.
    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn ctx_id(&self) -> u32 {
        self.ctx_id
    }

    /// Members as encodings, ordered g^0, g^e, g^2e, ...
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    /// Members as sorted encodings, the canonical serialization order.
    pub fn sorted_elements(&self) -> Vec<u32> {
        let mut v = self.elements.clone();
        v.sort_unstable();
        v
    }

    #[inline]
    pub fn contains_enc(&self, enc: u32) -> bool {
        self.membership.get(enc as usize)
    }

    fn check_ctx(&self, ctx: &FieldCtx) {
        assert_eq!(
            self.ctx_id,
            ctx.ctx_id(),
            "subgroup belongs to a different field context"
        );
    }
}

/// The subgroup of order d in F_q^×; errors unless d divides q-1.
pub fn subgroup_of_order(ctx: &FieldCtx, d: u32) -> Result<SubgroupHandle, GroupError> {
    let group = (ctx.q() - 1) as u64;
    if d == 0 || !group.is_multiple_of(d as u64) {
        return Err(GroupError::NotADivisor { d: d as u64, group });
    }
    let e = (group / d as u64) as u32;
    let elements: Vec<u32> = (0..d)
        .map(|k| ctx.antilog_enc(k as u64 * e as u64))
        .collect();
    let membership = Bitset::from_indices(ctx.q() as usize, &elements);
    debug_assert_eq!(membership.count_ones(), d as usize);
    Ok(SubgroupHandle {
        ctx_id: ctx.ctx_id(),
        q: ctx.q(),
        d,
        e,
        elements,
        membership,
    })
}

/// All e cosets of a subgroup; coset j is { g^(j + k*e) : 0 <= k < d }.
#[derive(Clone, Serialize)]
pub struct CosetFamily {
    pub d: u32,
    pub e: u32,
    /// `cosets[j]` lists encodings in generator-exponent order.
    pub cosets: Vec<Vec<u32>>,
}

impl CosetFamily {
    /// Coset j as sorted encodings, the canonical serialization order.
    pub fn sorted_coset(&self, j: u32) -> Vec<u32> {
        let mut v = self.cosets[j as usize].clone();
        v.sort_unstable();
        v
    }
}

pub fn coset_family(ctx: &FieldCtx, subgroup: &SubgroupHandle) -> CosetFamily {
    subgroup.check_ctx(ctx);
    let (d, e) = (subgroup.d(), subgroup.e());
    let cosets = (0..e)
        .map(|j| {
            (0..d)
                .map(|k| ctx.antilog_enc(j as u64 + k as u64 * e as u64))
                .collect()
        })
        .collect();
    CosetFamily { d, e, cosets }
}

/// The coset label of a nonzero element: log(x) mod e.
pub fn coset_of(ctx: &FieldCtx, enc: u32, subgroup: &SubgroupHandle) -> Result<u32, GroupError> {
    subgroup.check_ctx(ctx);
    let k = ctx.log_enc(enc).ok_or(GroupError::ZeroElement)?;
    Ok(k % subgroup.e())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::Bitset;
    use crate::ffield::default_field;

    #[test]
    fn subgroup_is_the_set_of_eth_powers() {
        let ctx = default_field(3, 4).unwrap();
        let g20 = subgroup_of_order(&ctx, 20).unwrap();
        assert_eq!(g20.elements().len(), 20);
        assert_eq!(g20.e(), 4);
        // exactly the image of the fourth-power map
        let mut powers: Vec<u32> = (1..ctx.q()).map(|enc| ctx.pow_enc(enc, 4)).collect();
        powers.sort_unstable();
        powers.dedup();
        assert_eq!(powers, g20.sorted_elements());
        // and exactly the solutions of a^20 = 1
        for enc in 1..ctx.q() {
            assert_eq!(g20.contains_enc(enc), ctx.pow_enc(enc, 20) == 1);
        }
    }

    #[test]
    fn trivial_and_seventh_power_subgroups() {
        let ctx = default_field(3, 4).unwrap();
        let g1 = subgroup_of_order(&ctx, 1).unwrap();
        assert_eq!(g1.elements(), &[1]);

        let ctx64 = default_field(2, 6).unwrap();
        let g9 = subgroup_of_order(&ctx64, 9).unwrap();
        assert_eq!(g9.d(), 9);
        assert_eq!(g9.e(), 7);
        let mut powers: Vec<u32> = (1..ctx64.q()).map(|enc| ctx64.pow_enc(enc, 7)).collect();
        powers.sort_unstable();
        powers.dedup();
        assert_eq!(powers, g9.sorted_elements());
    }

    #[test]
    fn non_divisor_rejected() {
        let ctx = default_field(3, 4).unwrap();
        assert_eq!(
            subgroup_of_order(&ctx, 7),
            Err(GroupError::NotADivisor { d: 7, group: 80 })
        );
        assert!(subgroup_of_order(&ctx, 0).is_err());
    }

    #[test]
    fn closure_under_mul_and_inv() {
        let ctx = default_field(2, 6).unwrap();
        for d in [1u32, 3, 7, 9, 21, 63] {
            let g = subgroup_of_order(&ctx, d).unwrap();
            assert!(g.contains_enc(1));
            for &a in g.elements() {
                assert!(g.contains_enc(ctx.inv_enc(a).unwrap()));
                assert_eq!(ctx.pow_enc(a, d as u64), 1);
                for &b in g.elements() {
                    assert!(g.contains_enc(ctx.mul_enc(a, b)));
                }
            }
        }
    }

    #[test]
    fn coset_family_partitions_the_group() {
        let ctx = default_field(3, 4).unwrap();
        let g20 = subgroup_of_order(&ctx, 20).unwrap();
        let fam = coset_family(&ctx, &g20);
        assert_eq!(fam.cosets.len(), 4);
        let mut seen = Bitset::new(ctx.q() as usize);
        for coset in &fam.cosets {
            assert_eq!(coset.len(), 20);
            let this = Bitset::from_indices(ctx.q() as usize, coset);
            assert!(seen.is_disjoint(&this));
            seen.union_with(&this);
        }
        assert_eq!(seen.count_ones(), 80);
        assert!(!seen.get(0));
    }

    #[test]
    fn whole_group_is_one_coset() {
        let ctx = default_field(3, 4).unwrap();
        let g = subgroup_of_order(&ctx, 80).unwrap();
        let fam = coset_family(&ctx, &g);
        assert_eq!(fam.cosets.len(), 1);
        assert_eq!(fam.cosets[0].len(), 80);
    }

    #[test]
    fn f729_has_26_cosets_of_28() {
        let ctx = default_field(3, 6).unwrap();
        let g = subgroup_of_order(&ctx, 28).unwrap();
        let fam = coset_family(&ctx, &g);
        assert_eq!(fam.cosets.len(), 26);
        assert!(fam.cosets.iter().all(|c| c.len() == 28));
    }

    #[test]
    fn coset_labels() {
        let ctx = default_field(3, 4).unwrap();
        let g20 = subgroup_of_order(&ctx, 20).unwrap();
        assert_eq!(coset_of(&ctx, 1, &g20).unwrap(), 0);
        let g = ctx.generator().encoding();
        assert_eq!(coset_of(&ctx, g, &g20).unwrap(), 1);
        assert_eq!(coset_of(&ctx, 0, &g20), Err(GroupError::ZeroElement));

        let ctx243 = default_field(3, 5).unwrap();
        let g22 = subgroup_of_order(&ctx243, 22).unwrap();
        let e154 = ctx243.antilog(154).encoding();
        assert_eq!(coset_of(&ctx243, e154, &g22).unwrap(), 0);
    }

    #[test]
    fn coset_members_share_a_label() {
        let ctx = default_field(3, 5).unwrap();
        let g22 = subgroup_of_order(&ctx, 22).unwrap();
        let fam = coset_family(&ctx, &g22);
        for (j, coset) in fam.cosets.iter().enumerate() {
            for &enc in coset {
                assert_eq!(coset_of(&ctx, enc, &g22).unwrap(), j as u32);
            }
        }
    }
}
