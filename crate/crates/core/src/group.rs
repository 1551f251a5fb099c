//! Finite groups given by dense multiplication tables.
//!
//! Elements are indices `0..order`; the identity is always index 0.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Groups up to this order get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 512;
const SAMPLED_TRIPLES: usize = 200_000;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order)
    }
}

impl FiniteGroup {
    /// Validates a multiplication table given row by row (`table[a][b] = a·b`).
    pub fn from_table(table: Vec<Vec<u32>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(format!("row {i} has length {}", row.len())));
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(order, flat)
    }

    pub(crate) fn from_flat(order: usize, table: Vec<u32>) -> Result<Self> {
        if table.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidGroup("entry out of range".into()));
        }
        for x in 0..order {
            if table[x] as usize != x || table[x * order] as usize != x {
                return Err(Error::InvalidGroup("index 0 is not the identity".into()));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    if inv[a] != u32::MAX {
                        return Err(Error::InvalidGroup(format!("element {a} has two inverses")));
                    }
                    inv[a] = b as u32;
                }
            }
            if inv[a] == u32::MAX {
                return Err(Error::InvalidGroup(format!("element {a} has no inverse")));
            }
        }
        for a in 0..order {
            if table[inv[a] as usize * order + a] != 0 {
                return Err(Error::InvalidGroup(format!("inverse of {a} is one-sided")));
            }
        }
        let g = FiniteGroup { order, table, inv, labels: None };
        g.check_associativity()?;
        Ok(g)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order as u32;
        let check = |a: u32, b: u32, c: u32| -> Result<()> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::InvalidGroup(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
            }
            Ok(())
        };
        if self.order <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 1..n {
                for b in 1..n {
                    let ab = self.mul(a, b);
                    for c in 1..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return check(a, b, c);
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(self.order as u64);
            for _ in 0..SAMPLED_TRIPLES {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::InvalidGroup("label count differs from order".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `a·b·a⁻¹`
    pub fn conj(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(a, b), self.inv(a))
    }

    /// `a·b·a⁻¹·b⁻¹`
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    pub fn table_rows(&self) -> Vec<Vec<u32>> {
        self.table.chunks(self.order).map(<[u32]>::to_vec).collect()
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn whole(self: &Arc<Self>) -> SubgroupHandle {
        SubgroupHandle { parent: self.clone(), elements: self.elements().collect() }
    }

    pub fn trivial_subgroup(self: &Arc<Self>) -> SubgroupHandle {
        SubgroupHandle { parent: self.clone(), elements: vec![0] }
    }

    // -- constructors --

    pub fn trivial() -> Self {
        Self::from_flat(1, vec![0]).expect("valid")
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let t = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        Self::from_flat(n, t).expect("valid")
    }

    /// `A × B` with `(a, b)` at index `a + |A|·b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut t = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = ((x % na) as u32, (x / na) as u32);
                let (ya, yb) = ((y % na) as u32, (y / na) as u32);
                t[x * n + y] = a.mul(xa, ya) + (na as u32) * b.mul(xb, yb);
            }
        }
        Self::from_flat(n, t).expect("valid")
    }

    /// Dihedral group of order `2n`: `rⁱsʲ` at index `i + n·j`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0);
        let size = 2 * n;
        let mut t = vec![0u32; size * size];
        for x in 0..size {
            for y in 0..size {
                let (i, j) = (x % n, x / n);
                let (k, l) = (y % n, y / n);
                let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
                t[x * size + y] = (rot + n * ((j + l) % 2)) as u32;
            }
        }
        Self::from_flat(size, t).expect("valid")
    }

    /// Quaternion group with indices `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion8() -> Self {
        // unit products among 1, i, j, k as (sign, unit)
        let unit = |a: usize, b: usize| -> (bool, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 3) => (false, 1),
                (3, 1) => (false, 2),
                (2, 1) => (true, 3),
                (3, 2) => (true, 1),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let mut t = vec![0u32; 64];
        for x in 0..8 {
            for y in 0..8 {
                let (neg, u) = unit(x / 2, y / 2);
                let sign = (x % 2) ^ (y % 2) ^ usize::from(neg);
                t[x * 8 + y] = (2 * u + sign) as u32;
            }
        }
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
        Self::from_flat(8, t).expect("valid").with_labels(labels).expect("eight labels")
    }

    /// Symmetric group on three points.
    ///
    /// Index `i + 3j` is `cⁱ tʲ` with `c = (0 1 2)` and `t = (1 2)`, so
    /// `{0, 1, 2}` is the alternating subgroup and `{0, 3}` a transposition subgroup.
    pub fn symmetric3() -> Self {
        Self::dihedral(3)
    }

    /// Heisenberg group over `Z/p`: `(a, b, c)` at index `a + p·b + p²·c` with
    /// `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+a·b')`.
    pub fn heisenberg(p: usize) -> Self {
        assert!(p > 1);
        let n = p * p * p;
        let split = |x: usize| (x % p, (x / p) % p, x / (p * p));
        let mut t = vec![0u32; n * n];
        for x in 0..n {
            let (a, b, c) = split(x);
            for y in 0..n {
                let (a2, b2, c2) = split(y);
                let z = ((a + a2) % p) + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p);
                t[x * n + y] = z as u32;
            }
        }
        Self::from_flat(n, t).expect("valid")
    }

    /// Group generated by permutations of `0..degree` (elements sorted, identity first).
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        let id: Vec<usize> = (0..degree).collect();
        for g in gens {
            let mut s = g.clone();
            s.sort_unstable();
            if g.len() != degree || s != id {
                return Err(Error::InvalidGroup("generator is not a permutation".into()));
            }
        }
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { (0..degree).map(|i| a[b[i]]).collect() };
        let mut elems: BTreeSet<Vec<usize>> = BTreeSet::from([id.clone()]);
        let mut frontier = vec![id.clone()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = compose(&x, g);
                if elems.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let elems: Vec<Vec<usize>> = elems.into_iter().collect();
        let index: HashMap<&Vec<usize>, u32> = elems.iter().enumerate().map(|(i, e)| (e, i as u32)).collect();
        let n = elems.len();
        let mut t = vec![0u32; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                t[i * n + j] = index[&compose(a, b)];
            }
        }
        Self::from_flat(n, t)
    }

    /// Group on `elements` (any labelling) with multiplication `op`, identity `e`.
    ///
    /// The identity is moved to index 0; the remaining elements keep their order.
    pub fn from_closure<T: Clone + Eq + std::hash::Hash>(
        elements: &[T],
        identity: &T,
        op: impl Fn(&T, &T) -> T,
    ) -> Result<(Self, Vec<T>)> {
        let mut elems: Vec<T> = Vec::with_capacity(elements.len());
        elems.push(identity.clone());
        elems.extend(elements.iter().filter(|x| *x != identity).cloned());
        let index: HashMap<T, u32> = elems.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        if index.len() != elems.len() {
            return Err(Error::InvalidGroup("duplicate elements".into()));
        }
        let n = elems.len();
        let mut t = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let p = op(&elems[i], &elems[j]);
                t[i * n + j] = *index
                    .get(&p)
                    .ok_or_else(|| Error::InvalidGroup("set is not closed under the operation".into()))?;
            }
        }
        Ok((Self::from_flat(n, t)?, elems))
    }
}

/// Homomorphism between finite groups given by its image table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupMorphism {
    pub src: Arc<FiniteGroup>,
    pub dst: Arc<FiniteGroup>,
    pub image: Vec<u32>,
}

impl GroupMorphism {
    pub fn new(src: Arc<FiniteGroup>, dst: Arc<FiniteGroup>, image: Vec<u32>) -> Result<Self> {
        if image.len() != src.order() || image.iter().any(|&x| x as usize >= dst.order()) {
            return Err(Error::InvalidMorphism("image table has the wrong shape".into()));
        }
        if image[0] != 0 {
            return Err(Error::InvalidMorphism("identity is not preserved".into()));
        }
        for a in src.elements() {
            for b in src.elements() {
                if image[src.mul(a, b) as usize] != dst.mul(image[a as usize], image[b as usize]) {
                    return Err(Error::InvalidMorphism(format!("not multiplicative at ({a}, {b})")));
                }
            }
        }
        Ok(GroupMorphism { src, dst, image })
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> Self {
        GroupMorphism { src: g.clone(), dst: g.clone(), image: g.elements().collect() }
    }

    pub fn trivial(src: &Arc<FiniteGroup>, dst: &Arc<FiniteGroup>) -> Self {
        GroupMorphism { src: src.clone(), dst: dst.clone(), image: vec![0; src.order()] }
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.image[x as usize]
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupMorphism) -> Result<GroupMorphism> {
        if !Arc::ptr_eq(&self.dst, &other.src) && *self.dst != *other.src {
            return Err(Error::InvalidMorphism("composition of non-matching morphisms".into()));
        }
        Ok(GroupMorphism {
            src: self.src.clone(),
            dst: other.dst.clone(),
            image: self.image.iter().map(|&x| other.apply(x)).collect(),
        })
    }
}

/// Subgroup of a finite group, stored as a sorted element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupHandle {
    parent: Arc<FiniteGroup>,
    elements: Vec<u32>,
}

impl SubgroupHandle {
    /// Validates that `elements` form a subgroup.
    pub fn new(parent: Arc<FiniteGroup>, mut elements: Vec<u32>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(Error::InvalidGroup("subgroup must contain the identity".into()));
        }
        let set: BTreeSet<u32> = elements.iter().copied().collect();
        for &a in &elements {
            if !set.contains(&parent.inv(a)) {
                return Err(Error::InvalidGroup("subgroup is not closed under inverses".into()));
            }
            for &b in &elements {
                if !set.contains(&parent.mul(a, b)) {
                    return Err(Error::InvalidGroup("subgroup is not closed under products".into()));
                }
            }
        }
        Ok(SubgroupHandle { parent, elements })
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Position of `x` in the sorted element list, i.e. its index in [`Self::to_group`].
    pub fn position(&self, x: u32) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn is_normal(&self) -> bool {
        self.parent.elements().all(|g| self.elements.iter().all(|&h| self.contains(self.parent.conj(g, h))))
    }

    /// The subgroup as a group in its own right, with the inclusion morphism.
    pub fn to_group(&self) -> (Arc<FiniteGroup>, GroupMorphism) {
        let n = self.elements.len();
        let mut t = vec![0u32; n * n];
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                t[i * n + j] = self.position(self.parent.mul(a, b)).expect("closed") as u32;
            }
        }
        let g = Arc::new(FiniteGroup::from_flat(n, t).expect("subgroup of a group"));
        let incl = GroupMorphism { src: g.clone(), dst: self.parent.clone(), image: self.elements.clone() };
        (g, incl)
    }
}

pub fn subgroup_closure(g: &FiniteGroup, gens: &[u32]) -> SubgroupClosure {
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut elems = vec![0u32];
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i];
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y as usize] {
                seen[y as usize] = true;
                elems.push(y);
            }
        }
        i += 1;
    }
    elems.sort_unstable();
    SubgroupClosure(elems)
}

/// Sorted element list produced by [`subgroup_closure`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupClosure(Vec<u32>);

impl SubgroupClosure {
    pub fn elements(&self) -> &[u32] {
        &self.0
    }
}

/// Smallest subgroup of `g` containing `gens`.
pub fn closure(g: &Arc<FiniteGroup>, gens: &[u32]) -> SubgroupHandle {
    SubgroupHandle { parent: g.clone(), elements: subgroup_closure(g, gens).0 }
}

/// `{x : x H x⁻¹ = H}`
pub fn normalizer(h: &SubgroupHandle) -> SubgroupHandle {
    let g = h.parent();
    let elements = g.elements().filter(|&x| h.elements().iter().all(|&y| h.contains(g.conj(x, y)))).collect();
    SubgroupHandle { parent: g.clone(), elements }
}

pub fn center(g: &Arc<FiniteGroup>) -> SubgroupHandle {
    let elements = g.elements().filter(|&x| g.elements().all(|y| g.mul(x, y) == g.mul(y, x))).collect();
    SubgroupHandle { parent: g.clone(), elements }
}

/// Subgroup generated by commutators of elements of `h`.
pub fn derived_subgroup(h: &SubgroupHandle) -> SubgroupHandle {
    let g = h.parent();
    let comms: BTreeSet<u32> =
        h.elements().iter().flat_map(|&a| h.elements().iter().map(move |&b| g.commutator(a, b))).collect();
    closure(g, &comms.into_iter().collect::<Vec<_>>())
}

/// Center and commutator subgroup.
pub fn structural_subgroups(g: &Arc<FiniteGroup>) -> (SubgroupHandle, SubgroupHandle) {
    (center(g), derived_subgroup(&g.whole()))
}

/// Quotient by a normal subgroup with the minimal-index transversal.
///
/// Cosets are numbered in increasing order of their minimal element, so the
/// coset of the identity is 0 and `α(0) = 0`.
pub fn quotient_with_transversal(n: &SubgroupHandle) -> Result<(Arc<FiniteGroup>, GroupMorphism, Vec<u32>)> {
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let g = n.parent();
    let mut coset = vec![u32::MAX; g.order()];
    let mut alpha = Vec::new();
    for x in g.elements() {
        if coset[x as usize] == u32::MAX {
            let q = alpha.len() as u32;
            alpha.push(x);
            for &h in n.elements() {
                coset[g.mul(x, h) as usize] = q;
            }
        }
    }
    let k = alpha.len();
    let mut t = vec![0u32; k * k];
    for a in 0..k {
        for b in 0..k {
            t[a * k + b] = coset[g.mul(alpha[a], alpha[b]) as usize];
        }
    }
    let q = Arc::new(FiniteGroup::from_flat(k, t)?);
    let pi = GroupMorphism { src: g.clone(), dst: q.clone(), image: coset };
    Ok((q, pi, alpha))
}

pub fn morphism_kernel_image(f: &GroupMorphism) -> (SubgroupHandle, SubgroupHandle) {
    let kernel = f.src.elements().filter(|&x| f.apply(x) == 0).collect();
    let image: BTreeSet<u32> = f.image.iter().copied().collect();
    (
        SubgroupHandle { parent: f.src.clone(), elements: kernel },
        SubgroupHandle { parent: f.dst.clone(), elements: image.into_iter().collect() },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_are_groups() {
        for g in [
            FiniteGroup::cyclic(6),
            FiniteGroup::dihedral(4),
            FiniteGroup::quaternion8(),
            FiniteGroup::symmetric3(),
            FiniteGroup::heisenberg(3),
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(3)),
        ] {
            assert!(FiniteGroup::from_table(g.table_rows()).is_ok());
        }
        assert!(!FiniteGroup::quaternion8().is_abelian());
        assert_eq!(FiniteGroup::quaternion8().element_order(2), 4);
        assert_eq!(FiniteGroup::quaternion8().element_order(1), 2);
    }

    #[test]
    fn rejects_non_groups() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).is_err());
        // Latin square that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table(t).is_err());
    }

    #[test]
    fn closure_examples() {
        let z6 = Arc::new(FiniteGroup::cyclic(6));
        assert_eq!(closure(&z6, &[2]).elements(), &[0, 2, 4]);
        assert_eq!(closure(&z6, &[]).elements(), &[0]);
        let s3 = Arc::new(FiniteGroup::symmetric3());
        assert_eq!(closure(&s3, &[3]).order(), 2);
    }

    #[test]
    fn quotient_examples() {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let n = closure(&z4, &[2]);
        let (q, pi, alpha) = quotient_with_transversal(&n).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(alpha, vec![0, 1]);
        assert_eq!(pi.image, vec![0, 1, 0, 1]);
        let (q, _, _) = quotient_with_transversal(&z4.whole()).unwrap();
        assert_eq!(q.order(), 1);
        let s3 = Arc::new(FiniteGroup::symmetric3());
        assert_eq!(quotient_with_transversal(&closure(&s3, &[3])).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn normalizer_and_center() {
        let s3 = Arc::new(FiniteGroup::symmetric3());
        let t = closure(&s3, &[3]);
        assert_eq!(normalizer(&t), t);
        let (z, d) = structural_subgroups(&s3);
        assert_eq!(z.order(), 1);
        assert_eq!(d.elements(), &[0, 1, 2]);
        let h = Arc::new(FiniteGroup::heisenberg(3));
        let (z, d) = structural_subgroups(&h);
        assert_eq!(z.elements(), &[0, 9, 18]);
        assert_eq!(d, z);
    }

    #[test]
    fn kernel_and_image() {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let pi = GroupMorphism::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let (k, i) = morphism_kernel_image(&pi);
        assert_eq!(k.elements(), &[0, 2]);
        assert_eq!(i.order(), 2);
        assert!(GroupMorphism::new(z2, z4, vec![0, 1]).is_err());
    }

    #[test]
    fn permutations() {
        let s3 = FiniteGroup::from_permutations(3, &[vec![1, 2, 0], vec![0, 2, 1]]).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
    }
}
