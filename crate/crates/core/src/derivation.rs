//! Derivations, inner derivations, and the conjugation action of `G/N` on `H¹(N, M)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::Arc;

use crate::abelian::Subgroup;
use crate::ambient::AmbientExtension;
use crate::cochain::{coboundary_columns, tuple_count, Cochain};
use crate::cohomology::{cohomology_group, CohomologyClass, CohomologyGroup};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::module::GModule;
use crate::solve::{modulus_relations, solve_modular_linear};

/// A crossed homomorphism `d(gh) = d(g) + g·d(h)`, stored as its full value table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    cochain: Cochain,
}

impl Derivation {
    pub fn new(cochain: Cochain) -> Result<Self> {
        if cochain.degree() != 1 {
            return Err(Error::NotADerivation(format!("degree {} cochain", cochain.degree())));
        }
        if !cochain.is_cocycle()? {
            return Err(Error::NotADerivation("derivation law fails".into()));
        }
        Ok(Derivation { cochain })
    }

    pub fn zero(module: Arc<GModule>) -> Self {
        Derivation { cochain: Cochain::zero(module, 1) }
    }

    /// `g ↦ g·m − m`
    pub fn inner(module: Arc<GModule>, m: &[BigInt]) -> Self {
        let mut c = Cochain::zero(module.clone(), 0);
        c.set(&[], m);
        Derivation { cochain: c.coboundary().expect("degree 0") }
    }

    pub fn cochain(&self) -> &Cochain {
        &self.cochain
    }

    pub fn into_cochain(self) -> Cochain {
        self.cochain
    }

    pub fn module(&self) -> &Arc<GModule> {
        self.cochain.module()
    }

    pub fn eval(&self, g: u32) -> Vec<BigInt> {
        self.cochain.get(&[g])
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        Derivation { cochain: self.cochain.add(&other.cochain) }
    }

    pub fn sub(&self, other: &Derivation) -> Derivation {
        Derivation { cochain: self.cochain.sub(&other.cochain) }
    }

    pub fn neg(&self) -> Derivation {
        Derivation { cochain: self.cochain.neg() }
    }

    pub fn scale(&self, c: &BigInt) -> Derivation {
        Derivation { cochain: self.cochain.scale(c) }
    }

    pub fn is_zero(&self) -> bool {
        self.cochain.is_zero()
    }
}

/// `Der(G, M)` and `Inn(G, M)` as subgroups of the 1-cochain coordinates, with `H¹`.
#[derive(Debug)]
pub struct DerivationGroups {
    pub der: Subgroup,
    pub inn: Subgroup,
    pub h1: CohomologyGroup,
}

/// Coordinate moduli of `k`-cochains.
pub fn cochain_moduli(module: &GModule, k: usize) -> Vec<BigInt> {
    let n = module.group().order();
    (0..tuple_count(n, k)).flat_map(|_| module.torsion().iter().cloned()).collect()
}

/// Dense matrix of `δᵏ` in cochain coordinates.
pub fn coboundary_matrix(module: &GModule, k: usize) -> Result<IntMatrix> {
    let cols = coboundary_columns::<BigInt>(module, k).expect("BigInt arithmetic cannot overflow");
    let rows = tuple_count(module.group().order(), k + 1) * module.rank();
    IntMatrix::from_cols(rows, &cols)
}

pub fn derivation_groups(module: &Arc<GModule>) -> Result<DerivationGroups> {
    let c1 = cochain_moduli(module, 1);
    let c2 = cochain_moduli(module, 2);
    let der = Subgroup::kernel(&c1, &coboundary_matrix(module, 1)?, &c2)?;
    let inn = Subgroup::image(&c1, &coboundary_matrix(module, 0)?)?;
    let h1 = cohomology_group(module, 1)?;
    Ok(DerivationGroups { der, inn, h1 })
}

/// Solves `g·m − m = target[i]` simultaneously for `g = elements[i]`.
pub fn solve_twisted_difference(
    module: &GModule,
    elements: &[u32],
    target: &[Vec<BigInt>],
) -> Result<Option<Vec<BigInt>>> {
    let r = module.rank();
    if r == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(elements.len() * r);
    let mut b: Vec<BigInt> = Vec::with_capacity(elements.len() * r);
    let mut moduli: Vec<BigInt> = Vec::with_capacity(elements.len() * r);
    for (&g, t) in elements.iter().zip(target) {
        let c = module.canonical_action(g);
        for i in 0..r {
            let mut row = c.row(i).to_vec();
            row[i] -= BigInt::one();
            rows.push(row);
            b.push(t[i].clone());
            moduli.push(module.torsion()[i].clone());
        }
    }
    if rows.is_empty() {
        return Ok(Some(module.zero()));
    }
    let a = IntMatrix::from_rows(r, &rows)?;
    let sol = solve_modular_linear(&a, &modulus_relations(&moduli), &b)?;
    Ok(sol.map(|s| module.reduce(&s.particular)))
}

/// `(ᵍd)(n) = g·d(g⁻¹ n g)` for a derivation on `N`, `g ∈ G`.
///
/// `module` is the `G`-module; `d` lives over `ambient.normal_group()`.
pub fn twist(ambient: &AmbientExtension, module: &GModule, d: &Cochain, g: u32) -> Cochain {
    Cochain::from_fn(d.module().clone(), 1, |t| module.act(g, &d.get(&[ambient.conjugate_back(g, t[0])])))
}

/// `H¹(N, M)` with its `Q`-module structure `q·[d] = [ᵅ⁽q⁾d]`.
#[derive(Debug)]
pub struct InducedQModule {
    module: Arc<GModule>,
}

impl InducedQModule {
    /// The module over `Q` in canonical coordinates of `h1`.
    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn act(&self, q: u32, class: &CohomologyClass) -> CohomologyClass {
        CohomologyClass { coords: self.module.act(q, &class.coords) }
    }
}

/// Builds the `Q`-action on `H¹(N, M)` from the conjugation action on derivations.
///
/// `h1` must be `H¹(N, M)` for the restriction of `module` to `N`.
pub fn conjugation_action_on_h1(
    ambient: &AmbientExtension,
    module: &GModule,
    h1: &CohomologyGroup,
) -> Result<InducedQModule> {
    let q = ambient.quotient();
    let base = h1.presentation().canonical_group();
    let mut action = Vec::with_capacity(q.order());
    for x in q.elements() {
        let g = ambient.alpha(x);
        let cols: Vec<Vec<BigInt>> = h1
            .generator_cocycles()
            .iter()
            .map(|z| h1.class_of(&twist(ambient, module, z, g)).map(|c| c.coords))
            .collect::<Result<_>>()?;
        action.push(IntMatrix::from_cols(h1.rank(), &cols)?);
    }
    Ok(InducedQModule { module: Arc::new(GModule::new(q.clone(), base, action)?) })
}

/// Checks that every `n ∈ N` acts trivially on `H¹(N, M)` through conjugation.
pub fn normal_subgroup_acts_trivially(
    ambient: &AmbientExtension,
    module: &GModule,
    h1: &CohomologyGroup,
) -> Result<bool> {
    for &n in ambient.normal().elements() {
        for (i, z) in h1.generator_cocycles().iter().enumerate() {
            if h1.class_of(&twist(ambient, module, z, n))? != h1.basis_class(i) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `H¹(N, M)^Q` as a subgroup of the canonical coordinates of `H¹(N, M)`.
pub fn invariant_classes(qmod: &InducedQModule) -> Result<Subgroup> {
    let all: Vec<u32> = qmod.module.group().elements().collect();
    qmod.module.invariants_under(&all)
}

/// Representative derivations for the generators of an invariant subgroup.
pub fn invariant_representatives(h1: &CohomologyGroup, invariant: &Subgroup) -> Vec<Cochain> {
    let k = invariant.presentation().rank();
    (0..k)
        .map(|i| {
            let mut e = vec![BigInt::zero(); k];
            e[i] = BigInt::one();
            h1.representative(&CohomologyClass { coords: invariant.include(&e) })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FgAbelianGroup;
    use crate::group::FiniteGroup;
    use crate::matrix::bigs;

    #[test]
    fn der_of_z3_in_z3() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let m = Arc::new(GModule::trivial(g, FgAbelianGroup::cyclic(3)));
        let d = derivation_groups(&m).unwrap();
        assert_eq!(d.der.invariants(), &bigs(&[3])[..]);
        assert!(d.inn.is_trivial());
        assert_eq!(d.h1.invariants(), &bigs(&[3])[..]);
    }

    #[test]
    fn inner_derivation_law() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let m = Arc::new(
            GModule::from_generators(g, FgAbelianGroup::free(1), &[(1, IntMatrix::from_i64_rows(&[vec![-1]]))])
                .unwrap(),
        );
        let d = Derivation::inner(m.clone(), &bigs(&[3]));
        assert_eq!(d.eval(1), bigs(&[-6]));
        assert!(Derivation::new(d.cochain().clone()).is_ok());
    }

    #[test]
    fn twisted_difference_solve() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let m = GModule::from_generators(g, FgAbelianGroup::cyclic(4), &[(1, IntMatrix::from_i64_rows(&[vec![-1]]))])
            .unwrap();
        // g·m − m = −2m
        let x = solve_twisted_difference(&m, &[1], &[bigs(&[2])]).unwrap().unwrap();
        assert_eq!(m.sub(&m.act(1, &x), &x), bigs(&[2]));
        assert_eq!(solve_twisted_difference(&m, &[1], &[bigs(&[1])]).unwrap(), None);
    }

    #[test]
    fn symmetric3_acts_by_negation() {
        let g = Arc::new(FiniteGroup::symmetric3());
        let amb = AmbientExtension::from_generators(&g, &[1]).unwrap();
        let m = GModule::trivial(g.clone(), FgAbelianGroup::cyclic(3));
        let (_, mn) = m.restrict(amb.normal()).unwrap();
        let h1 = cohomology_group(&Arc::new(mn), 1).unwrap();
        let qm = conjugation_action_on_h1(&amb, &m, &h1).unwrap();
        assert_eq!(qm.act(1, &h1.basis_class(0)).coords, bigs(&[2]));
        assert!(invariant_classes(&qm).unwrap().is_trivial());
        assert!(normal_subgroup_acts_trivially(&amb, &m, &h1).unwrap());
    }
}
