use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Index of an object inside a [`FinCategory`].
pub type ObjId = usize;
/// Index of an arrow inside a [`FinCategory`].
pub type ArrowId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowData {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
}

/// Structural errors raised while assembling a category from named parts.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("duplicate object id `{0}`")]
    DuplicateObject(String),
    #[error("duplicate arrow id `{0}`")]
    DuplicateArrow(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("object `{0}` has no identity")]
    MissingIdentity(String),
    #[error("composite of `{0}` and `{1}` given twice")]
    DuplicateComposite(String, String),
}

/// A finite category with an explicit, diagrammatic composition table:
/// `comp(f, g)` is "f then g" and is defined when `tgt(f) == src(g)`.
#[derive(Debug, Clone)]
pub struct FinCategory {
    objects: Vec<String>,
    arrows: Vec<ArrowData>,
    identities: Vec<ArrowId>,
    comp: HashMap<(ArrowId, ArrowId), ArrowId>,
    object_index: HashMap<String, ObjId>,
    arrow_index: HashMap<String, ArrowId>,
}

/// One violated axiom instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CategoryViolation {
    IdentityNotEndo { object: String, arrow: String },
    LeftUnit { arrow: String },
    RightUnit { arrow: String },
    MissingComposite { f: String, g: String },
    CompositeOnNonComposable { f: String, g: String },
    CompositeEndpoints { f: String, g: String, composite: String },
    Associativity { f: String, g: String, h: String },
}

impl fmt::Display for CategoryViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::IdentityNotEndo { object, arrow } => {
                write!(out, "identity `{arrow}` of `{object}` is not an endo-arrow")
            }
            Self::LeftUnit { arrow } => write!(out, "left unit law fails for `{arrow}`"),
            Self::RightUnit { arrow } => write!(out, "right unit law fails for `{arrow}`"),
            Self::MissingComposite { f, g } => write!(out, "no composite for `{f}` then `{g}`"),
            Self::CompositeOnNonComposable { f, g } => {
                write!(out, "composite given for non-composable `{f}`, `{g}`")
            }
            Self::CompositeEndpoints { f, g, composite } => {
                write!(out, "composite `{composite}` of `{f}` then `{g}` has wrong endpoints")
            }
            Self::Associativity { f, g, h } => {
                write!(out, "associativity fails on (`{f}`, `{g}`, `{h}`)")
            }
        }
    }
}

#[derive(Debug, Default, Clone)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    arrows: Vec<(String, String, String)>,
    identities: Vec<(String, String)>,
    comp: Vec<(String, String, String)>,
}

impl CategoryBuilder {
    pub fn object(mut self, name: impl Into<String>) -> Self {
        self.objects.push(name.into());
        self
    }

    pub fn arrow(mut self, name: impl Into<String>, src: impl Into<String>, tgt: impl Into<String>) -> Self {
        self.arrows.push((name.into(), src.into(), tgt.into()));
        self
    }

    pub fn identity(mut self, object: impl Into<String>, arrow: impl Into<String>) -> Self {
        self.identities.push((object.into(), arrow.into()));
        self
    }

    /// Record `f ; g = h`.
    pub fn compose(mut self, f: impl Into<String>, g: impl Into<String>, h: impl Into<String>) -> Self {
        self.comp.push((f.into(), g.into(), h.into()));
        self
    }

    pub fn build(self) -> Result<FinCategory, BuildError> {
        let mut object_index = HashMap::new();
        for (i, o) in self.objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(BuildError::DuplicateObject(o.clone()));
            }
        }
        let obj = |n: &str| object_index.get(n).copied().ok_or_else(|| BuildError::UnknownObject(n.to_string()));
        let mut arrows = Vec::new();
        let mut arrow_index = HashMap::new();
        for (name, s, t) in &self.arrows {
            if arrow_index.insert(name.clone(), arrows.len()).is_some() {
                return Err(BuildError::DuplicateArrow(name.clone()));
            }
            arrows.push(ArrowData { name: name.clone(), src: obj(s)?, tgt: obj(t)? });
        }
        let arr = |n: &str| arrow_index.get(n).copied().ok_or_else(|| BuildError::UnknownArrow(n.to_string()));
        let mut identities = vec![None; self.objects.len()];
        for (o, a) in &self.identities {
            identities[obj(o)?] = Some(arr(a)?);
        }
        let identities = identities
            .into_iter()
            .enumerate()
            .map(|(i, a)| a.ok_or_else(|| BuildError::MissingIdentity(self.objects[i].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let mut comp = HashMap::new();
        for (f, g, h) in &self.comp {
            if comp.insert((arr(f)?, arr(g)?), arr(h)?).is_some() {
                return Err(BuildError::DuplicateComposite(f.clone(), g.clone()));
            }
        }
        Ok(FinCategory { objects: self.objects, arrows, identities, comp, object_index, arrow_index })
    }
}

impl FinCategory {
    pub fn builder() -> CategoryBuilder {
        CategoryBuilder::default()
    }

    /// Assemble from index data. Names must be unique; the caller guarantees
    /// index ranges.
    pub fn from_parts(
        objects: Vec<String>,
        arrows: Vec<ArrowData>,
        identities: Vec<ArrowId>,
        comp: HashMap<(ArrowId, ArrowId), ArrowId>,
    ) -> Self {
        let object_index = objects.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
        let arrow_index = arrows.iter().enumerate().map(|(i, a)| (a.name.clone(), i)).collect();
        debug_assert_eq!(identities.len(), objects.len());
        FinCategory { objects, arrows, identities, comp, object_index, arrow_index }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o]
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[ArrowData] {
        &self.arrows
    }

    pub fn arrow(&self, a: ArrowId) -> &ArrowData {
        &self.arrows[a]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a].name
    }

    pub fn src(&self, a: ArrowId) -> ObjId {
        self.arrows[a].src
    }

    pub fn tgt(&self, a: ArrowId) -> ObjId {
        self.arrows[a].tgt
    }

    pub fn identity(&self, o: ObjId) -> ArrowId {
        self.identities[o]
    }

    pub fn identities(&self) -> &[ArrowId] {
        &self.identities
    }

    pub fn is_identity(&self, a: ArrowId) -> bool {
        self.identities[self.arrows[a].src] == a
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.object_index.get(name).copied()
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrow_index.get(name).copied()
    }

    /// `f ; g`, if recorded.
    pub fn compose(&self, f: ArrowId, g: ArrowId) -> Option<ArrowId> {
        self.comp.get(&(f, g)).copied()
    }

    pub fn composition_table(&self) -> &HashMap<(ArrowId, ArrowId), ArrowId> {
        &self.comp
    }

    /// Composition table as a sorted list, for deterministic output.
    pub fn sorted_composites(&self) -> Vec<(ArrowId, ArrowId, ArrowId)> {
        let mut v: Vec<_> = self.comp.iter().map(|(&(f, g), &h)| (f, g, h)).collect();
        v.sort_unstable();
        v
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> Vec<ArrowId> {
        (0..self.arrows.len()).filter(|&f| self.arrows[f].src == a && self.arrows[f].tgt == b).collect()
    }

    pub fn arrows_from(&self, a: ObjId) -> Vec<ArrowId> {
        (0..self.arrows.len()).filter(|&f| self.arrows[f].src == a).collect()
    }

    pub fn arrows_into(&self, b: ObjId) -> Vec<ArrowId> {
        (0..self.arrows.len()).filter(|&f| self.arrows[f].tgt == b).collect()
    }

    /// Every violated axiom instance; empty iff `self` is a category.
    pub fn validate(&self) -> Vec<CategoryViolation> {
        let mut out = Vec::new();
        let name = |a: ArrowId| self.arrows[a].name.clone();
        for (o, &id) in self.identities.iter().enumerate() {
            if self.src(id) != o || self.tgt(id) != o {
                out.push(CategoryViolation::IdentityNotEndo { object: self.objects[o].clone(), arrow: name(id) });
            }
        }
        let mut comp_ok = true;
        for f in 0..self.arrows.len() {
            for g in 0..self.arrows.len() {
                let composable = self.tgt(f) == self.src(g);
                match (composable, self.compose(f, g)) {
                    (true, None) => {
                        comp_ok = false;
                        out.push(CategoryViolation::MissingComposite { f: name(f), g: name(g) });
                    }
                    (false, Some(_)) => out.push(CategoryViolation::CompositeOnNonComposable { f: name(f), g: name(g) }),
                    (true, Some(h)) => {
                        if self.src(h) != self.src(f) || self.tgt(h) != self.tgt(g) {
                            comp_ok = false;
                            out.push(CategoryViolation::CompositeEndpoints { f: name(f), g: name(g), composite: name(h) });
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for f in 0..self.arrows.len() {
            let (s, t) = (self.src(f), self.tgt(f));
            if self.compose(self.identities[s], f) != Some(f) {
                out.push(CategoryViolation::LeftUnit { arrow: name(f) });
            }
            if self.compose(f, self.identities[t]) != Some(f) {
                out.push(CategoryViolation::RightUnit { arrow: name(f) });
            }
        }
        if comp_ok {
            for f in 0..self.arrows.len() {
                for g in self.arrows_from(self.tgt(f)) {
                    let fg = self.comp[&(f, g)];
                    for h in self.arrows_from(self.tgt(g)) {
                        let gh = self.comp[&(g, h)];
                        if self.comp[&(fg, h)] != self.comp[&(f, gh)] {
                            out.push(CategoryViolation::Associativity { f: name(f), g: name(g), h: name(h) });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Same objects and arrow names, sources and targets swapped,
    /// composition order reversed.
    pub fn opposite(&self) -> FinCategory {
        let arrows = self.arrows.iter().map(|a| ArrowData { name: a.name.clone(), src: a.tgt, tgt: a.src }).collect();
        let comp = self.comp.iter().map(|(&(f, g), &h)| ((g, f), h)).collect();
        FinCategory::from_parts(self.objects.clone(), arrows, self.identities.clone(), comp)
    }

    /// Structural equality on names, endpoints, identities and composites.
    pub fn same_presentation(&self, other: &FinCategory) -> bool {
        self.objects == other.objects
            && self.arrows == other.arrows
            && self.identities == other.identities
            && self.comp == other.comp
    }
}

/// Standard small categories used across the crate and its tests.
pub mod examples {
    use super::*;

    /// The poset `0 < 1 < … < n-1` as a category, arrows named `i<j`.
    pub fn linear_order(n: usize) -> FinCategory {
        from_preorder(n, |i, j| i <= j)
    }

    /// Thin category on `n` objects from a reflexive transitive relation.
    pub fn from_preorder(n: usize, le: impl Fn(usize, usize) -> bool) -> FinCategory {
        let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if le(i, j) {
                    index.insert((i, j), arrows.len());
                    arrows.push(ArrowData { name: format!("{i}<{j}"), src: i, tgt: j });
                }
            }
        }
        let identities = (0..n).map(|i| index[&(i, i)]).collect();
        let mut comp = HashMap::new();
        for (&(i, j), &f) in &index {
            for k in 0..n {
                if let Some(&g) = index.get(&(j, k)) {
                    if let Some(&h) = index.get(&(i, k)) {
                        comp.insert((f, g), h);
                    }
                }
            }
        }
        FinCategory::from_parts(objects, arrows, identities, comp)
    }

    pub fn discrete(n: usize) -> FinCategory {
        from_preorder(n, |i, j| i == j)
    }

    /// `0 → 1`.
    pub fn arrow_category() -> FinCategory {
        linear_order(2)
    }

    pub fn terminal() -> FinCategory {
        linear_order(1)
    }

    /// One-object category from a monoid multiplication table
    /// (`table[a][b] = a·b`, read as "a then b"), unit `unit`.
    pub fn monoid(names: &[&str], table: &[Vec<usize>], unit: usize) -> FinCategory {
        let arrows = names.iter().map(|n| ArrowData { name: n.to_string(), src: 0, tgt: 0 }).collect();
        let mut comp = HashMap::new();
        for (a, row) in table.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                comp.insert((a, b), c);
            }
        }
        FinCategory::from_parts(vec!["*".into()], arrows, vec![unit], comp)
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn linear_poset_is_valid() {
        assert!(linear_order(3).is_valid());
        assert_eq!(linear_order(3).num_arrows(), 6);
    }

    #[test]
    fn idempotent_monoid_is_valid() {
        let c = monoid(&["id", "f"], &[vec![0, 1], vec![1, 1]], 0);
        assert!(c.is_valid());
    }

    #[test]
    fn builder_rejects_unknown_ids() {
        let err = FinCategory::builder().object("A").arrow("f", "A", "B").build().unwrap_err();
        assert_eq!(err, BuildError::UnknownObject("B".into()));
    }

    #[test]
    fn opposite_is_an_involution() {
        let c = linear_order(3);
        assert!(c.opposite().opposite().same_presentation(&c));
        let op = arrow_category().opposite();
        let f = op.arrow_id("0<1").unwrap();
        assert_eq!((op.src(f), op.tgt(f)), (1, 0));
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(c.hom(a, b).len(), c.opposite().hom(b, a).len());
            }
        }
    }

    /// Brute-force search over all 2-element magmas on a single object with a
    /// unit: the first non-associative one must be reported by name.
    #[test]
    fn non_associative_magma_is_reported() {
        // arrows: 0 = id, 1 = f, 2 = g; id is a unit, the f/g block is free.
        let mut found = None;
        'search: for code in 0..16usize {
            let block = [[code & 1, (code >> 1) & 1], [(code >> 2) & 1, (code >> 3) & 1]];
            let mut table = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 0]];
            for i in 0..2 {
                for j in 0..2 {
                    table[i + 1][j + 1] = block[i][j] + 1;
                }
            }
            for x in 1..3 {
                for y in 1..3 {
                    for z in 1..3 {
                        if table[table[x][y]][z] != table[x][table[y][z]] {
                            found = Some((table, x, y, z));
                            break 'search;
                        }
                    }
                }
            }
        }
        let (table, x, y, z) = found.expect("some 2-element magma is not associative");
        let names = ["id", "f", "g"];
        let c = monoid(&names, &table, 0);
        let report = c.validate();
        assert!(report.contains(&CategoryViolation::Associativity {
            f: names[x].into(),
            g: names[y].into(),
            h: names[z].into()
        }));
    }
}
