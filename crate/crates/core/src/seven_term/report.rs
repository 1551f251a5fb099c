//! The seven groups, the six maps between them, and exactness verdicts.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{unit, SevenTermContext, TrRoute};
use crate::abelian::{is_well_defined, reduce_vec, Subgroup};
use crate::cohomology::CohomologyClass;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Name and invariant factors of one group of the sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSummary {
    pub name: &'static str,
    pub invariants: Vec<BigInt>,
}

/// A map between consecutive groups in canonical coordinates (column `j` is the image of generator `j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapMatrix {
    pub name: &'static str,
    pub source: &'static str,
    pub target: &'static str,
    pub matrix: IntMatrix,
    pub well_defined: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointVerdict {
    /// The group at which exactness is tested.
    pub at: &'static str,
    pub image_equals_kernel: bool,
    pub composite_zero: bool,
}

impl JointVerdict {
    pub fn exact(&self) -> bool {
        self.image_equals_kernel && self.composite_zero
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SevenTermReport {
    /// `H¹(Q,M^N), H¹(G,M), H¹(N,M)^Q, H²(Q,M^N), H²(G,M)₁, H¹(Q,H¹(N,M)), H³(Q,M^N)`
    pub groups: Vec<GroupSummary>,
    /// `H²(G,M)` itself.
    pub h2_full: GroupSummary,
    /// Inclusion `H²(G,M)₁ → H²(G,M)`.
    pub h2_restricted_inclusion: IntMatrix,
    /// `inf¹, res, tr, inf², ρ, λ`
    pub maps: Vec<MapMatrix>,
    pub inflation_injective: bool,
    /// Exactness at the five inner groups.
    pub joints: Vec<JointVerdict>,
    /// Whether every inflated class lies in `ker(res)`.
    pub inflation_in_restricted_kernel: bool,
}

impl SevenTermReport {
    pub fn is_exact(&self) -> bool {
        self.inflation_injective
            && self.inflation_in_restricted_kernel
            && self.maps.iter().all(|m| m.well_defined)
            && self.joints.iter().all(JointVerdict::exact)
    }
}

pub const GROUP_NAMES: [&str; 7] =
    ["H1(Q,M^N)", "H1(G,M)", "H1(N,M)^Q", "H2(Q,M^N)", "H2(G,M)_1", "H1(Q,H1(N,M))", "H3(Q,M^N)"];
const MAP_NAMES: [&str; 6] = ["inf1", "res", "tr", "inf2", "rho", "lambda"];

fn columns(rows: usize, cols: Vec<Vec<BigInt>>) -> Result<IntMatrix> {
    if cols.is_empty() {
        return Ok(IntMatrix::zeros(rows, 0));
    }
    IntMatrix::from_cols(rows, &cols)
}

fn image_of(moduli: &[BigInt], m: &IntMatrix) -> Result<Subgroup> {
    if m.cols() == 0 {
        return Subgroup::generated(moduli, Vec::new());
    }
    Subgroup::image(moduli, m)
}

fn composite_is_zero(first: &IntMatrix, second: &IntMatrix, moduli: &[BigInt]) -> Result<bool> {
    if first.cols() == 0 || second.rows() == 0 {
        return Ok(true);
    }
    if second.cols() == 0 {
        return Ok(true);
    }
    let prod = second.mul(first)?;
    Ok(prod.col_vecs().iter().all(|c| reduce_vec(c, moduli).iter().all(Zero::is_zero)))
}

/// Computes all groups and maps of the sequence and checks exactness exactly.
pub fn seven_term_report(ctx: &SevenTermContext) -> Result<SevenTermReport> {
    let h1q = ctx.h1_quotient()?;
    let h1g = ctx.h1_group()?;
    let inv = ctx.h1_normal_invariant();
    let h2q = ctx.h2_quotient()?;
    let h2g = ctx.h2_group()?;
    let h2g1 = ctx.h2_group_restricted()?;
    let h1qh = ctx.h1_quotient_h1()?;
    let h3q = ctx.h3_quotient()?;

    let moduli: Vec<Vec<BigInt>> = vec![
        h1q.invariants().to_vec(),
        h1g.invariants().to_vec(),
        inv.invariants().to_vec(),
        h2q.invariants().to_vec(),
        h2g1.invariants().to_vec(),
        h1qh.invariants().to_vec(),
        h3q.invariants().to_vec(),
    ];

    let inf1: Vec<Vec<BigInt>> = h1q
        .generator_cocycles()
        .iter()
        .map(|z| h1g.class_of(&ctx.inflate_cocycle(z)).map(|c| c.coords))
        .collect::<Result<_>>()?;

    let h1n = ctx.h1_normal();
    let res: Vec<Vec<BigInt>> = h1g
        .generator_cocycles()
        .iter()
        .map(|z| {
            let c = h1n.class_of(&ctx.restrict_cocycle(z)?)?;
            inv.coords_of(&c.coords).ok_or_else(|| Error::Consistency("restriction leaves H1(N,M)^Q".into()))
        })
        .collect::<Result<_>>()?;

    let tr: Vec<Vec<BigInt>> = (0..moduli[2].len())
        .map(|j| ctx.transgression_of_invariant(&unit(moduli[2].len(), j), TrRoute::Eta).map(|c| c.coords))
        .collect::<Result<_>>()?;

    let mut inflation_in_restricted_kernel = true;
    let mut inf2 = Vec::with_capacity(h2q.rank());
    for z in h2q.generator_cocycles() {
        let c = h2g.class_of(&ctx.inflate_cocycle(z))?;
        match h2g1.coords_of(&c.coords) {
            Some(y) => inf2.push(y),
            None => {
                inflation_in_restricted_kernel = false;
                inf2.push(vec![BigInt::zero(); moduli[4].len()]);
            }
        }
    }

    let rho: Vec<Vec<BigInt>> = (0..moduli[4].len())
        .map(|j| {
            let class = CohomologyClass { coords: h2g1.include(&unit(moduli[4].len(), j)) };
            ctx.rho(&class).map(|c| c.coords)
        })
        .collect::<Result<_>>()?;

    let lambda: Vec<Vec<BigInt>> =
        h1qh.generator_cocycles().iter().map(|d| ctx.lambda(d).map(|c| c.coords)).collect::<Result<_>>()?;

    let raw = [inf1, res, tr, inf2, rho, lambda];
    let mut maps = Vec::with_capacity(6);
    for (i, cols) in raw.into_iter().enumerate() {
        let matrix = columns(moduli[i + 1].len(), cols)?;
        let well_defined = matrix.cols() == 0 || is_well_defined(&moduli[i], &matrix, &moduli[i + 1]);
        maps.push(MapMatrix {
            name: MAP_NAMES[i],
            source: GROUP_NAMES[i],
            target: GROUP_NAMES[i + 1],
            matrix,
            well_defined,
        });
    }

    let kernel_of = |i: usize| -> Result<Subgroup> {
        let m = &maps[i].matrix;
        if m.cols() == 0 {
            return Subgroup::generated(&moduli[i], Vec::new());
        }
        if m.rows() == 0 {
            return Ok(Subgroup::whole(&moduli[i]));
        }
        Subgroup::kernel(&moduli[i], m, &moduli[i + 1])
    };

    let inflation_injective = kernel_of(0)?.is_trivial();
    let mut joints = Vec::with_capacity(5);
    for i in 0..5 {
        let image = image_of(&moduli[i + 1], &maps[i].matrix)?;
        let kernel = kernel_of(i + 1)?;
        joints.push(JointVerdict {
            at: GROUP_NAMES[i + 1],
            image_equals_kernel: image.same_as(&kernel),
            composite_zero: composite_is_zero(&maps[i].matrix, &maps[i + 1].matrix, &moduli[i + 2])?,
        });
    }

    let groups =
        GROUP_NAMES.iter().zip(&moduli).map(|(name, m)| GroupSummary { name, invariants: m.clone() }).collect();
    let h2_restricted_inclusion =
        if h2g1.presentation().rank() == 0 { IntMatrix::zeros(h2g.rank(), 0) } else { h2g1.inclusion_matrix() };
    Ok(SevenTermReport {
        groups,
        h2_full: GroupSummary { name: "H2(G,M)", invariants: h2g.invariants().to_vec() },
        h2_restricted_inclusion,
        maps,
        inflation_injective,
        joints,
        inflation_in_restricted_kernel,
    })
}
