use super::{class_sum_algebra, primitive_idempotents, CentralAlgebra, GroupAlgebraElement};
use crate::error::{invariant, Result};
use crate::field::{Fe, Field};
use crate::perm::{ClassPartition, PermGroup, Permutation};

/// A block of kH: a primitive idempotent of Z(kH).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub index: usize,
    /// Coordinates on the class-sum basis of the owning group.
    pub coords: Vec<Fe>,
    /// The same idempotent on group elements.
    pub idempotent: GroupAlgebraElement,
    pub principal: bool,
}

/// The class-sum algebra of a group together with its blocks.
///
/// Blocks are listed principal first, then by coordinates.
#[derive(Clone, Debug)]
pub struct GroupBlocks {
    group: PermGroup,
    field: Field,
    classes: ClassPartition,
    algebra: CentralAlgebra,
    blocks: Vec<Block>,
}

impl GroupBlocks {
    pub fn compute(group: &PermGroup, field: &Field) -> Result<GroupBlocks> {
        let classes = group.conjugacy_classes();
        let algebra = class_sum_algebra(group, &classes, field);
        let idempotents = primitive_idempotents(field, &algebra)?;
        GroupBlocks::assemble(group.clone(), field.clone(), classes, algebra, idempotents)
    }

    /// Rebuilds from previously computed constants and idempotents (e.g. a cache).
    pub(crate) fn assemble(
        group: PermGroup,
        field: Field,
        classes: ClassPartition,
        algebra: CentralAlgebra,
        idempotents: Vec<Vec<Fe>>,
    ) -> Result<GroupBlocks> {
        let mut gb = GroupBlocks {
            group,
            field,
            classes,
            algebra,
            blocks: Vec::new(),
        };
        let mut blocks: Vec<Block> = idempotents
            .into_iter()
            .map(|coords| {
                let principal = gb.augmentation(&coords) == Fe::ONE;
                Block {
                    index: 0,
                    idempotent: gb.expand(&coords),
                    coords,
                    principal,
                }
            })
            .collect();
        blocks.sort_by(|a, b| (!a.principal, &a.coords).cmp(&(!b.principal, &b.coords)));
        for (i, b) in blocks.iter_mut().enumerate() {
            b.index = i;
        }
        let principals = blocks.iter().filter(|b| b.principal).count();
        if principals != 1 {
            return Err(invariant(
                "unique principal block",
                format!("{principals} blocks of augmentation 1 for {}", gb.group),
            ));
        }
        gb.blocks = blocks;
        Ok(gb)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn classes(&self) -> &ClassPartition {
        &self.classes
    }

    pub fn algebra(&self) -> &CentralAlgebra {
        &self.algebra
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &Block {
        &self.blocks[i]
    }

    pub fn principal(&self) -> &Block {
        &self.blocks[0]
    }

    pub fn class_of(&self, x: &Permutation) -> Option<usize> {
        self.group.index_of(x).map(|i| self.classes.class_of[i] as usize)
    }

    /// Coefficient of the class function `coords` at `x` (zero off the group).
    pub fn value_at(&self, coords: &[Fe], x: &Permutation) -> Fe {
        self.class_of(x).map_or(Fe::ZERO, |c| coords[c])
    }

    /// Class-sum coordinates of a class function given by its values.
    pub fn coords_of(&self, value: impl Fn(&Permutation) -> Fe) -> Vec<Fe> {
        self.classes
            .classes
            .iter()
            .map(|c| value(&c.representative))
            .collect()
    }

    pub fn mul(&self, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        self.algebra.mul(&self.field, a, b)
    }

    /// Sum of coefficients of `Σ coords_i K_i`.
    pub fn augmentation(&self, coords: &[Fe]) -> Fe {
        let f = &self.field;
        coords
            .iter()
            .zip(&self.classes.classes)
            .fold(Fe::ZERO, |acc, (&c, cl)| {
                f.add(acc, f.mul(c, f.from_int(cl.members.len() as i64)))
            })
    }

    pub fn expand(&self, coords: &[Fe]) -> GroupAlgebraElement {
        GroupAlgebraElement::from_terms(
            self.group.degree(),
            self.classes
                .classes
                .iter()
                .zip(coords)
                .filter(|(_, c)| !c.is_zero())
                .flat_map(|(cl, &c)| cl.members.iter().map(move |x| (x.clone(), c))),
        )
    }

    /// Blocks `e` with `e · a = e`, for an idempotent `a` of Z(kH).
    pub fn blocks_under(&self, a: &[Fe]) -> Vec<usize> {
        self.blocks
            .iter()
            .filter(|b| self.mul(&b.coords, a) == b.coords)
            .map(|b| b.index)
            .collect()
    }
}

/// All blocks of kG.
pub fn blocks(group: &PermGroup, field: &Field) -> Result<Vec<Block>> {
    Ok(GroupBlocks::compute(group, field)?.blocks)
}
